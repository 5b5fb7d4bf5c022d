//! Parametrized graph families rebuilt from their quotient matrices, the
//! registry of tabulated characteristic polynomials, and the bound and
//! monotonicity checks run on top of them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::canon::CanonicalForm;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hjoin::{HJoinSpec, Part, QuotientMatrix, MAX_DIRECT_ORDER};
use crate::matrix::{signless_char_poly, RationalMatrix};
use crate::poly::IntPolynomial;
use crate::roots::{compare_roots, isolate_real_roots, Enclosure, Precision, Spectrum, Verdict};
use crate::template::{eval_int, eval_poly};

const BUILTIN: &str = include_str!("../data/registry.json");

/// Registry key of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    /// The star with one extra edge.
    StarPlus,
    /// Triangles on a common edge with pendants at both ends.
    G1,
    /// [`FamilyId::G1`] with pendants at one end only.
    G1a,
    G(u8),
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::StarPlus => f.write_str("StarPlus"),
            FamilyId::G1 => f.write_str("G1"),
            FamilyId::G1a => f.write_str("G1a"),
            FamilyId::G(k) => write!(f, "G{k}"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilyId> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        match lower.as_str() {
            "starplus" | "star-plus" | "k+" => return Ok(FamilyId::StarPlus),
            "g1" => return Ok(FamilyId::G1),
            "g1a" => return Ok(FamilyId::G1a),
            _ => {}
        }
        lower
            .strip_prefix('g')
            .and_then(|k| k.parse::<u8>().ok())
            .filter(|&k| k >= 2)
            .map(FamilyId::G)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family `{t}`")))
    }
}

impl Serialize for FamilyId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Named integer parameters such as `t` or `t1, t2, t3`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, i64>);

impl Params {
    pub fn with(mut self, name: &str, value: i64) -> Params {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn t(t: i64) -> Params {
        Params::default().with("t", t)
    }

    pub fn n(n: i64) -> Params {
        Params::default().with("n", n)
    }

    pub fn t2(t1: i64, t2: i64) -> Params {
        Params::default().with("t1", t1).with("t2", t2)
    }

    pub fn t3(t1: i64, t2: i64, t3: i64) -> Params {
        Params::t2(t1, t2).with("t3", t3)
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.get(name).copied()
    }

    pub fn as_map(&self) -> &BTreeMap<String, i64> {
        &self.0
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Params {
    type Err = Error;

    /// Parses `t=7` or `t1=1,t2=3,t3=2`.
    fn from_str(s: &str) -> Result<Params> {
        let mut out = Params::default();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidSpec(format!("expected name=value, got `{item}`")))?;
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("`{v}` is not an integer")))?;
            out = out.with(k.trim(), v);
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Lemma,
    Table1,
    Table2,
    Figure,
}

/// A printed formula that is read differently from how it is typeset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub printed: String,
    pub reading: String,
}

/// One registry row: the quotient template and the factored polynomial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub id: String,
    pub source: Source,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub lower_bounds: BTreeMap<String, i64>,
    #[serde(default)]
    pub quotient: Vec<Vec<String>>,
    /// `(polynomial, multiplicity)` pairs; `P(Q)` names the characteristic
    /// polynomial of the quotient template itself.
    #[serde(default)]
    pub charpoly: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erratum: Option<Erratum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unreconstructible: Option<String>,
}

impl FamilyEntry {
    pub fn family_id(&self) -> Result<FamilyId> {
        self.id.parse()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Registry {
    pub version: u32,
    pub families: Vec<FamilyEntry>,
}

impl Registry {
    /// The registry compiled into the library.
    pub fn builtin() -> &'static Registry {
        static REGISTRY: OnceLock<Registry> = OnceLock::new();
        REGISTRY.get_or_init(|| Registry::from_json(BUILTIN).expect("builtin registry is valid"))
    }

    pub fn from_json(text: &str) -> Result<Registry> {
        let reg: Registry = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        let mut seen = std::collections::HashSet::new();
        for f in &reg.families {
            let id = f.family_id()?;
            if !seen.insert(id) {
                return Err(Error::InvalidSpec(format!("family {id} listed twice")));
            }
            if f.unreconstructible.is_some() {
                continue;
            }
            let k = f.quotient.len();
            if k == 0 || f.quotient.iter().any(|r| r.len() != k) {
                return Err(Error::InvalidSpec(format!("{id}: quotient template is not square")));
            }
            if f.charpoly.is_empty() {
                return Err(Error::InvalidSpec(format!("{id}: no characteristic polynomial")));
            }
        }
        Ok(reg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn entry(&self, id: FamilyId) -> Result<&FamilyEntry> {
        self.families
            .iter()
            .find(|f| f.family_id().ok() == Some(id))
            .ok_or_else(|| Error::InvalidSpec(format!("family {id} is not in the registry")))
    }

    pub fn entry_mut(&mut self, id: FamilyId) -> Result<&mut FamilyEntry> {
        self.families
            .iter_mut()
            .find(|f| f.family_id().ok() == Some(id))
            .ok_or_else(|| Error::InvalidSpec(format!("family {id} is not in the registry")))
    }

    pub fn ids(&self) -> Vec<FamilyId> {
        self.families.iter().filter_map(|f| f.family_id().ok()).collect()
    }
}

/// A family member with its H-join structure and tabulated polynomial.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub id: FamilyId,
    pub params: Params,
    pub graph: Graph,
    /// The template evaluated at the parameters, including parts of size 0.
    pub template: RationalMatrix,
    /// Template indices of the nonempty parts, in part order.
    pub kept: Vec<usize>,
    pub quotient: QuotientMatrix,
    pub expected_charpoly: IntPolynomial,
    pub hjoin_spec: HJoinSpec,
}

impl FamilyInstance {
    pub fn order(&self) -> usize {
        self.graph.n()
    }
}

/// Instantiates a family after checking its parameter bounds.
pub fn build(registry: &Registry, id: FamilyId, params: &Params) -> Result<FamilyInstance> {
    let entry = registry.entry(id)?;
    if let Some(reason) = &entry.unreconstructible {
        return Err(Error::UnreconstructibleFamily(format!("{id}: {reason}")));
    }
    for name in params.0.keys() {
        if !entry.params.contains(name) {
            return Err(Error::ParamOutOfRange(format!("{id} has no parameter `{name}`")));
        }
    }
    for name in &entry.params {
        let v = params
            .get(name)
            .ok_or_else(|| Error::ParamOutOfRange(format!("{id} needs parameter `{name}`")))?;
        if let Some(&lo) = entry.lower_bounds.get(name) {
            if v < lo {
                return Err(Error::ParamOutOfRange(format!("{id}: {name} = {v} is below {lo}")));
            }
        }
    }
    instantiate(entry, id, params)
}

/// The H-join shape read off a quotient template, before any graph is
/// materialized; valid for any order.
#[derive(Clone, Debug)]
pub struct Structure {
    /// The template evaluated at the parameters, including parts of size 0.
    pub template: RationalMatrix,
    /// Template indices of the nonempty parts, in part order.
    pub kept: Vec<usize>,
    pub sizes: Vec<usize>,
    pub regularities: Vec<usize>,
    pub host_edges: Vec<(usize, usize)>,
    /// Total size of the neighboring parts, per kept part.
    pub neighborhood: Vec<usize>,
}

impl Structure {
    /// The quotient restricted to the nonempty parts.
    pub fn quotient(&self) -> RationalMatrix {
        self.template.submatrix(&self.kept, &self.kept)
    }

    pub fn order(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// The joined polynomial divided by the quotient polynomial, as one
    /// factor per part with its multiplicity. Edgeless parts use the closed
    /// form `(x - N)^(m-1)` so that large ones never need a graph.
    pub fn residual_factors(&self) -> Result<Vec<(IntPolynomial, u32)>> {
        let mut out = Vec::new();
        for (a, &i) in self.kept.iter().enumerate() {
            let (m, r, nb) = (self.sizes[i], self.regularities[a], self.neighborhood[a]);
            let shift = BigInt::from(nb);
            if r == 0 {
                out.push((IntPolynomial::x_minus(&shift), m as u32 - 1));
            } else {
                let part = Part::regular(m, r)?;
                let f = signless_char_poly(part.graph())
                    .shift(&shift)
                    .div_exact(&IntPolynomial::x_minus(&BigInt::from(2 * r + nb)))?;
                out.push((f, 1));
            }
        }
        Ok(out)
    }

    pub fn residual_poly(&self) -> Result<IntPolynomial> {
        Ok(self
            .residual_factors()?
            .iter()
            .fold(IntPolynomial::one(), |acc, (f, m)| &acc * &f.pow(*m)))
    }

    pub fn hjoin_spec(&self) -> Result<HJoinSpec> {
        let host = Graph::new(self.kept.len(), &self.host_edges)?;
        let parts = self
            .kept
            .iter()
            .zip(&self.regularities)
            .map(|(&i, &r)| Part::regular(self.sizes[i], r))
            .collect::<Result<Vec<_>>>()?;
        HJoinSpec::new(host, parts)
    }
}

/// Reads part sizes, regularities and host edges off the template.
pub fn structure(entry: &FamilyEntry, id: FamilyId, params: &Params) -> Result<Structure> {
    if let Some(reason) = &entry.unreconstructible {
        return Err(Error::UnreconstructibleFamily(format!("{id}: {reason}")));
    }
    let vals = params.as_map();
    let rows = entry
        .quotient
        .iter()
        .map(|r| r.iter().map(|e| eval_int(e, vals)).collect::<Result<Vec<i64>>>())
        .collect::<Result<Vec<_>>>()?;
    let k = rows.len();
    if rows.iter().flatten().any(|&v| v < 0) {
        return Err(Error::ParamOutOfRange(format!("{id} at {params}: negative quotient entry")));
    }

    // Off-diagonal entries of column j all equal the size of part j.
    let mut sizes = vec![0usize; k];
    for j in 0..k {
        let mut col = (0..k).filter(|&i| i != j).map(|i| rows[i][j]).filter(|&v| v != 0);
        if let Some(first) = col.next() {
            if col.any(|v| v != first) {
                return Err(Error::InvalidSpec(format!(
                    "{id} at {params}: column {j} does not describe one part size"
                )));
            }
            sizes[j] = first as usize;
        }
    }
    let kept: Vec<usize> = (0..k).filter(|&j| sizes[j] > 0).collect();
    if kept.is_empty() {
        return Err(Error::ParamOutOfRange(format!("{id} at {params}: every part is empty")));
    }

    let mut host_edges = Vec::new();
    for (a, &i) in kept.iter().enumerate() {
        for (b, &j) in kept.iter().enumerate().skip(a + 1) {
            match (rows[i][j] != 0, rows[j][i] != 0) {
                (true, true) => host_edges.push((a, b)),
                (false, false) => {}
                _ => {
                    return Err(Error::InvalidSpec(format!(
                        "{id} at {params}: entries ({i},{j}) and ({j},{i}) disagree on adjacency"
                    )))
                }
            }
        }
    }
    let mut regularities = Vec::with_capacity(kept.len());
    let mut neighborhood = Vec::with_capacity(kept.len());
    for &i in &kept {
        let nbr: i64 = kept.iter().filter(|&&j| j != i).map(|&j| rows[i][j]).sum();
        let twice_r = rows[i][i] - nbr;
        if twice_r < 0 || twice_r % 2 != 0 {
            return Err(Error::InvalidSpec(format!(
                "{id} at {params}: diagonal entry {i} gives no regularity"
            )));
        }
        regularities.push((twice_r / 2) as usize);
        neighborhood.push(nbr as usize);
    }
    Ok(Structure {
        template: RationalMatrix::from_i64_rows(&rows)?,
        kept,
        sizes,
        regularities,
        host_edges,
        neighborhood,
    })
}

/// Instantiates a family without the bound check, for structural
/// comparisons outside the range the tables cover.
pub fn instantiate(entry: &FamilyEntry, id: FamilyId, params: &Params) -> Result<FamilyInstance> {
    let st = structure(entry, id, params)?;
    let hjoin_spec = st.hjoin_spec()?;
    let expected_charpoly = expected_poly(entry, params.as_map(), &st.template)?;
    Ok(FamilyInstance {
        id,
        params: params.clone(),
        graph: hjoin_spec.materialize()?,
        template: st.template,
        kept: st.kept,
        quotient: hjoin_spec.quotient_matrix(),
        expected_charpoly,
        hjoin_spec,
    })
}

/// The factored table formula, with negative multiplicities divided out.
fn expected_poly(
    entry: &FamilyEntry,
    vals: &BTreeMap<String, i64>,
    template: &RationalMatrix,
) -> Result<IntPolynomial> {
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for (p, m) in &entry.charpoly {
        let base = if p.trim() == "P(Q)" {
            template.char_poly()
        } else {
            eval_poly(p, vals)?
        };
        let m = eval_int(m, vals)?;
        let power = base.pow(m.unsigned_abs() as u32);
        if m >= 0 {
            num = &num * &power;
        } else {
            den = &den * &power;
        }
    }
    num.div_exact(&den)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub check: &'static str,
    /// Index of the first differing coefficient, constant term first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub id: FamilyId,
    pub params: Params,
    pub order: usize,
    /// `None` when the graph is too large for the direct computation.
    pub direct: Option<bool>,
    pub hjoin: bool,
    pub template: bool,
    pub mismatches: Vec<Mismatch>,
}

impl InstanceReport {
    pub fn ok(&self) -> bool {
        self.direct != Some(false) && self.hjoin && self.template
    }
}

fn first_difference(a: &IntPolynomial, b: &IntPolynomial) -> Option<usize> {
    let len = a.coeffs().len().max(b.coeffs().len());
    (0..len).find(|&i| a.coeff(i) != b.coeff(i))
}

/// Checks the tabulated polynomial against the materialized graph and the
/// H-join assembly, and the template against the rebuilt quotient.
pub fn verify_instance(inst: &FamilyInstance) -> InstanceReport {
    let mut mismatches = Vec::new();
    let mut poly_check = |check: &'static str, actual: &IntPolynomial| {
        let diff = first_difference(actual, &inst.expected_charpoly);
        if let Some(i) = diff {
            mismatches.push(Mismatch {
                check,
                coefficient: Some(i),
                detail: format!(
                    "coefficient of x^{i}: computed {}, table {}",
                    actual.coeff(i),
                    inst.expected_charpoly.coeff(i)
                ),
            });
        }
        diff.is_none()
    };
    let direct = (inst.order() <= MAX_DIRECT_ORDER)
        .then(|| poly_check("direct", &signless_char_poly(&inst.graph)));
    let hjoin = match inst.hjoin_spec.char_poly() {
        Ok(p) => poly_check("hjoin", &p),
        Err(e) => {
            mismatches.push(Mismatch {
                check: "hjoin",
                coefficient: None,
                detail: e.to_string(),
            });
            false
        }
    };
    let reduced = inst.template.submatrix(&inst.kept, &inst.kept);
    let template = reduced == inst.quotient.matrix;
    if !template {
        mismatches.push(Mismatch {
            check: "template",
            coefficient: None,
            detail: "quotient of the rebuilt graph differs from the template".into(),
        });
    }
    InstanceReport {
        id: inst.id,
        params: inst.params.clone(),
        order: inst.order(),
        direct,
        hjoin,
        template,
        mismatches,
    }
}

/// Three parameter points per family with total order at most 24.
pub fn default_grid(registry: &Registry, id: FamilyId) -> Result<Vec<Params>> {
    let entry = registry.entry(id)?;
    let lb = |name: &str| entry.lower_bounds.get(name).copied().unwrap_or(0);
    let grid: Vec<Params> = match entry.params.iter().map(String::as_str).collect::<Vec<_>>()[..] {
        ["t"] => (0..3).map(|i| Params::t(lb("t") + i)).collect(),
        ["n"] => (0..3).map(|i| Params::n(lb("n") + 4 * i)).collect(),
        ["t1", "t2"] => vec![Params::t2(1, 0), Params::t2(2, 3), Params::t2(4, 5)],
        ["t1", "t2", "t3"] => {
            let a = lb("t1");
            vec![Params::t3(a, 0, 0), Params::t3(a + 1, 2, 1), Params::t3(a + 2, 3, 4)]
        }
        _ => return Err(Error::InvalidSpec(format!("{id}: no default grid"))),
    };
    Ok(grid)
}

/// Whether the two largest eigenvalues of the joined graph are both
/// eigenvalues of the quotient: the second quotient root must be at least
/// every root of the residual factor.
pub fn captures_top_two(spec: &HJoinSpec) -> Result<Verdict> {
    quotient_captures(&spec.quotient_matrix().matrix, &[(spec.residual_poly()?, 1)])
}

/// [`captures_top_two`] from a quotient and a factored residual.
pub fn quotient_captures(quotient: &RationalMatrix, residual: &[(IntPolynomial, u32)]) -> Result<Verdict> {
    let qpoly = quotient.char_poly();
    if qpoly.degree().unwrap_or(0) < 2 {
        return Ok(Verdict::False);
    }
    let mut qs = isolate_real_roots(&qpoly, Precision::default())?;
    let mut verdict = Verdict::True;
    for (f, m) in residual {
        if *m == 0 || f.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut rs = isolate_real_roots(f, Precision::default())?;
        let v = match compare_roots(&mut qs, 1, &mut rs, 0)? {
            Some(Ordering::Less) => Verdict::False,
            Some(_) => Verdict::True,
            None => Verdict::Undecided,
        };
        verdict = verdict.and(v);
    }
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FRoute {
    /// Largest root of the additive compound of the quotient.
    Compound,
    /// Top two roots of the full signless Laplacian polynomial.
    Direct,
}

/// `f` of a family member as an exactly represented algebraic quantity.
#[derive(Clone, Debug)]
pub struct FamilyF {
    pub route: FRoute,
    edges: usize,
    /// Compound route: roots of `P(Δ₂(Qᵖ), x + e + 3)`, whose largest root is
    /// `-f`. Direct route: the spectrum of `Q(G)`.
    spectrum: Spectrum,
}

impl FamilyF {
    pub fn enclosure(&self) -> Enclosure {
        match self.route {
            FRoute::Compound => -self.spectrum.nth_largest(0).expect("nonempty spectrum"),
            FRoute::Direct => {
                let base = Enclosure::from_integer(self.edges as i64 + 3);
                &base - &self.spectrum.top_sum(2).expect("at least two vertices")
            }
        }
    }

    pub fn refine(&mut self, precision: Precision) {
        self.spectrum.refine(precision);
    }
}

/// `e(G) + 3 - S_2(G)`, through the quotient when it captures the top two
/// eigenvalues and from the full graph otherwise.
pub fn family_f(inst: &FamilyInstance) -> Result<FamilyF> {
    if inst.order() < 2 {
        return Err(Error::TooSmall(format!("{} has one vertex", inst.id)));
    }
    let edges = inst.graph.edge_count();
    if captures_top_two(&inst.hjoin_spec)?.is_true() {
        let d2 = inst.quotient.matrix.additive_compound(2)?;
        let shifted = d2.char_poly().shift(&BigInt::from(-(edges as i64 + 3)));
        return Ok(FamilyF {
            route: FRoute::Compound,
            edges,
            spectrum: isolate_real_roots(&shifted, Precision::default())?,
        });
    }
    Ok(FamilyF {
        route: FRoute::Direct,
        edges,
        spectrum: isolate_real_roots(&signless_char_poly(&inst.graph), Precision::default())?,
    })
}

/// Certified ordering of `f(a)` against `f(b)`.
pub fn compare_f(a: &mut FamilyF, b: &mut FamilyF) -> Result<Option<Ordering>> {
    if a.route == FRoute::Compound && b.route == FRoute::Compound {
        return Ok(compare_roots(&mut a.spectrum, 0, &mut b.spectrum, 0)?.map(Ordering::reverse));
    }
    let start = a.spectrum.precision().min(b.spectrum.precision());
    for p in start.schedule() {
        a.refine(p);
        b.refine(p);
        if let Some(o) = a.enclosure().certified_cmp(&b.enclosure()) {
            return Ok(Some(o));
        }
    }
    Ok(None)
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `x^3 - (6+2n)x^2 + (n^2+9n+9)x - 3n^2 - 9n + 4`.
pub fn star_plus_cubic(n: i64) -> IntPolynomial {
    IntPolynomial::from_i64(&[-3 * n * n - 9 * n + 4, n * n + 9 * n + 9, -(6 + 2 * n), 1])
}

#[derive(Clone, Debug, Serialize)]
pub struct SignCheck {
    pub at: String,
    pub expected: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StarPlusBounds {
    pub n: i64,
    pub cubic: IntPolynomial,
    pub cubic_matches: bool,
    pub capture: Verdict,
    pub f: Enclosure,
    pub lower: Verdict,
    pub upper: Verdict,
    pub signs: Vec<SignCheck>,
}

impl StarPlusBounds {
    pub fn ok(&self) -> bool {
        self.cubic_matches
            && self.capture.is_true()
            && self.lower.is_true()
            && self.upper.is_true()
            && self.signs.iter().all(|s| s.holds)
    }
}

/// Certifies `1.3/n < f(K⁺₁,ₙ₋₁) < 1.5/n` through the additive compound of
/// the three-part quotient.
pub fn sn_plus_bounds(n: i64) -> Result<StarPlusBounds> {
    if n < 11 {
        return Err(Error::ParamOutOfRange(format!("the bracket needs n >= 11, got {n}")));
    }
    let st = structure(Registry::builtin().entry(FamilyId::StarPlus)?, FamilyId::StarPlus, &Params::n(n))?;
    let quotient = st.quotient();
    let cubic = quotient.additive_compound(2)?.char_poly();
    let displayed = star_plus_cubic(n);
    let capture = quotient_captures(&quotient, &st.residual_factors()?)?;
    let mut spectrum = isolate_real_roots(&cubic, Precision::default())?;

    let base = Enclosure::from_integer(n + 3);
    let low = Enclosure::point(rat(13, 10 * n));
    let high = Enclosure::point(rat(3, 2 * n));
    let mut lower = Verdict::Undecided;
    let mut upper = Verdict::Undecided;
    let mut f = &base - spectrum.nth_largest(0).expect("cubic has real roots");
    for p in Precision::default().schedule() {
        spectrum.refine(p);
        f = &base - spectrum.nth_largest(0).expect("cubic has real roots");
        lower = f.gt(&low);
        upper = f.lt(&high);
        if lower.is_decided() && upper.is_decided() {
            break;
        }
    }

    let n3 = BigRational::from_integer((n + 3).into());
    let points = [
        (format!("n+3-1.3/n = {}", &n3 - rat(13, 10 * n)), &n3 - rat(13, 10 * n), Ordering::Greater),
        (format!("n+3-1.5/n = {}", &n3 - rat(3, 2 * n)), &n3 - rat(3, 2 * n), Ordering::Less),
        ("3".to_string(), rat(3, 1), Ordering::Greater),
        ("0".to_string(), rat(0, 1), Ordering::Less),
    ];
    let signs = points
        .into_iter()
        .map(|(at, x, want)| SignCheck {
            at,
            expected: if want == Ordering::Greater { "> 0" } else { "< 0" },
            holds: displayed.sign_at_rational(&x) == want,
        })
        .collect();
    Ok(StarPlusBounds {
        n,
        cubic_matches: cubic == displayed,
        cubic,
        capture,
        f,
        lower,
        upper,
        signs,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Identity {
    pub name: &'static str,
    pub claimed: String,
    pub actual: String,
    pub exact: bool,
    pub sign_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct G2SignReport {
    pub t: i64,
    pub identities: Vec<Identity>,
}

impl G2SignReport {
    pub fn all_exact(&self) -> bool {
        self.identities.iter().all(|i| i.exact)
    }

    pub fn all_signs(&self) -> bool {
        self.identities.iter().all(|i| i.sign_holds)
    }
}

/// The decimal-coefficient sextic times quadratic as printed, read exactly.
fn printed_g(t: &BigRational) -> BigRational {
    let lin = |c: i64| t + rat(c, 10);
    (t * t + rat(53, 10) * t + rat(89, 10))
        * lin(52)
        * lin(46)
        * lin(43)
        * lin(13)
        * (t - rat(69, 10))
}

/// Exact evaluations of the four-part quotient polynomial at the points
/// used to bound its two largest roots.
pub fn g2_sign_evaluations(t: i64) -> Result<G2SignReport> {
    if t < 7 {
        return Err(Error::ParamOutOfRange(format!("t must be at least 7, got {t}")));
    }
    let inst = build(Registry::builtin(), FamilyId::G(2), &Params::t(t))?;
    let p = inst.template.char_poly();
    let tq = BigRational::from_integer(t.into());
    let four = rat(4, 1);
    let x_star = &tq + rat(13, 4) - rat(3, 2) / (&tq + &four);
    let t4 = (&tq + &four) * (&tq + &four) * (&tq + &four) * (&tq + &four);
    let cases: [(&'static str, BigRational, BigRational, Ordering); 5] = [
        ("P(2) = 4t", rat(4 * t, 1), p.eval_rational(&rat(2, 1)), Ordering::Greater),
        ("P(1) = -t", rat(-t, 1), p.eval_rational(&rat(1, 1)), Ordering::Less),
        ("P(0) = 8", rat(8, 1), p.eval_rational(&rat(0, 1)), Ordering::Greater),
        (
            "P(19/4) = -(3/10)t - 999/50",
            rat(-3 * t, 10) - rat(999, 50),
            p.eval_rational(&rat(19, 4)),
            Ordering::Less,
        ),
        (
            "4(t+4)^4 P(t + 13/4 - 3/(2(t+4))) = g(t)",
            printed_g(&tq),
            p.eval_rational(&x_star) * t4 * &four,
            Ordering::Greater,
        ),
    ];
    let identities = cases
        .into_iter()
        .map(|(name, claimed, actual, want)| Identity {
            name,
            exact: claimed == actual,
            sign_holds: sign_of(&actual) == want,
            claimed: claimed.to_string(),
            actual: actual.to_string(),
        })
        .collect();
    Ok(G2SignReport { t, identities })
}

fn sign_of(x: &BigRational) -> Ordering {
    if x.is_positive() {
        Ordering::Greater
    } else if x.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chain {
    #[serde(rename = "G1_shift_t2t3")]
    G1ShiftT2T3,
    #[serde(rename = "G1a_shift_t1t2")]
    G1aShiftT1T2,
    #[serde(rename = "G11_chain")]
    G11Chain,
    #[serde(rename = "G14_chain")]
    G14Chain,
}

impl Chain {
    pub const ALL: [Chain; 4] = [Chain::G1ShiftT2T3, Chain::G1aShiftT1T2, Chain::G11Chain, Chain::G14Chain];

    pub fn name(self) -> &'static str {
        match self {
            Chain::G1ShiftT2T3 => "G1_shift_t2t3",
            Chain::G1aShiftT1T2 => "G1a_shift_t1t2",
            Chain::G11Chain => "G11_chain",
            Chain::G14Chain => "G14_chain",
        }
    }

    fn family(self) -> FamilyId {
        match self {
            Chain::G1ShiftT2T3 => FamilyId::G1,
            Chain::G1aShiftT1T2 => FamilyId::G1a,
            Chain::G11Chain => FamilyId::G(11),
            Chain::G14Chain => FamilyId::G(14),
        }
    }

    /// Consecutive chain members on the grid with every parameter at most
    /// `max`, in a fixed order.
    pub fn steps(self, max: i64) -> Vec<(Params, Params)> {
        let mut out = Vec::new();
        let shift = |out: &mut Vec<_>, t1_min: i64| {
            for t1 in t1_min..=max {
                for t3 in 1..=max {
                    for t2 in t3..=max {
                        out.push((Params::t3(t1, t2, t3), Params::t3(t1, t2 + 1, t3 - 1)));
                    }
                }
            }
        };
        match self {
            Chain::G1ShiftT2T3 => shift(&mut out, 1),
            Chain::G1aShiftT1T2 => {
                for t1 in 2..=max {
                    for t2 in 0..=max {
                        out.push((Params::t2(t1, t2), Params::t2(t1 - 1, t2 + 1)));
                    }
                }
            }
            Chain::G11Chain | Chain::G14Chain => {
                shift(&mut out, 0);
                for t1 in 1..=max {
                    for t2 in 0..=max {
                        out.push((Params::t3(t1, t2, 0), Params::t3(t1 - 1, t2 + 1, 0)));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Chain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Chain> {
        let lower = s.trim().to_ascii_lowercase();
        Chain::ALL
            .into_iter()
            .find(|c| c.name().to_ascii_lowercase() == lower)
            .or(match lower.as_str() {
                "g1" => Some(Chain::G1ShiftT2T3),
                "g1a" => Some(Chain::G1aShiftT1T2),
                "g11" => Some(Chain::G11Chain),
                "g14" => Some(Chain::G14Chain),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidSpec(format!("unknown chain `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub from: Params,
    pub to: Params,
    pub f_from: f64,
    pub f_to: f64,
    pub routes: (FRoute, FRoute),
    /// True when `f(from) > f(to)` is certified.
    pub decreasing: Verdict,
}

/// Two family members that should be the same graph.
#[derive(Clone, Debug, Serialize)]
pub struct Identification {
    pub left: String,
    pub right: String,
    pub isomorphic: bool,
}

/// Comparison of a chain member with the star plus an edge on as many
/// vertices: `f` strictly larger, or equal exactly when isomorphic.
#[derive(Clone, Debug, Serialize)]
pub struct EndpointCheck {
    pub params: Params,
    pub n: usize,
    pub isomorphic: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub chain: Chain,
    pub max: i64,
    pub steps: Vec<ChainStep>,
    pub identifications: Vec<Identification>,
    pub endpoints: Vec<EndpointCheck>,
}

impl ScanReport {
    pub fn non_strict(&self) -> impl Iterator<Item = &ChainStep> {
        self.steps.iter().filter(|s| !s.decreasing.is_true())
    }

    pub fn ok(&self) -> bool {
        self.non_strict().next().is_none() && self.identifications.iter().all(|i| i.isomorphic)
    }

    pub fn endpoints_ok(&self) -> bool {
        self.endpoints.iter().all(|e| e.verdict.is_true())
    }
}

fn member(id: FamilyId, params: &Params) -> Result<FamilyInstance> {
    instantiate(Registry::builtin().entry(id)?, id, params)
}

fn chain_step(id: FamilyId, from: &Params, to: &Params) -> Result<ChainStep> {
    let mut a = family_f(&build(Registry::builtin(), id, from)?)?;
    let mut b = family_f(&build(Registry::builtin(), id, to)?)?;
    let decreasing = match compare_f(&mut a, &mut b)? {
        Some(Ordering::Greater) => Verdict::True,
        Some(_) => Verdict::False,
        None => Verdict::Undecided,
    };
    Ok(ChainStep {
        from: from.clone(),
        to: to.clone(),
        f_from: a.enclosure().to_f64(),
        f_to: b.enclosure().to_f64(),
        routes: (a.route, b.route),
        decreasing,
    })
}

fn identify(a: (FamilyId, Params), b: (FamilyId, Params)) -> Result<Identification> {
    let ga = member(a.0, &a.1)?.graph;
    let gb = member(b.0, &b.1)?.graph;
    Ok(Identification {
        left: format!("{}({})", a.0, a.1),
        right: format!("{}({})", b.0, b.1),
        isomorphic: CanonicalForm::of(&ga) == CanonicalForm::of(&gb),
    })
}

fn endpoint(id: FamilyId, params: &Params) -> Result<EndpointCheck> {
    let inst = build(Registry::builtin(), id, params)?;
    let n = inst.order();
    let star = build(Registry::builtin(), FamilyId::StarPlus, &Params::n(n as i64))?;
    let isomorphic = CanonicalForm::of(&inst.graph) == CanonicalForm::of(&star.graph);
    let ord = compare_f(&mut family_f(&inst)?, &mut family_f(&star)?)?;
    let verdict = match (ord, isomorphic) {
        (None, _) => Verdict::Undecided,
        (Some(Ordering::Greater), false) | (Some(Ordering::Equal), true) => Verdict::True,
        _ => Verdict::False,
    };
    Ok(EndpointCheck {
        params: params.clone(),
        n,
        isomorphic,
        verdict,
    })
}

/// Certified comparison of `f` between consecutive chain members over the
/// grid, with the structural identifications that close each chain.
pub fn monotonicity_scan(chain: Chain, max: i64) -> Result<ScanReport> {
    let id = chain.family();
    let pairs = chain.steps(max);
    let steps = pairs
        .par_iter()
        .map(|(a, b)| chain_step(id, a, b))
        .collect::<Result<Vec<_>>>()?;

    let mut pairs_to_identify = Vec::new();
    match chain {
        Chain::G1ShiftT2T3 => {
            for t1 in 1..=max {
                for t2 in 0..=max {
                    pairs_to_identify
                        .push(((FamilyId::G1, Params::t3(t1, t2, 0)), (FamilyId::G1a, Params::t2(t1, t2))));
                }
            }
        }
        Chain::G1aShiftT1T2 => {
            for t2 in 0..=max + 1 {
                pairs_to_identify.push((
                    (FamilyId::G1a, Params::t2(1, t2)),
                    (FamilyId::StarPlus, Params::n(t2 + 3)),
                ));
            }
        }
        Chain::G11Chain | Chain::G14Chain => {
            let end = if chain == Chain::G11Chain { FamilyId::G(2) } else { FamilyId::G(4) };
            for t in 1..=max {
                pairs_to_identify.push(((id, Params::t3(0, t, 0)), (end, Params::t(t))));
            }
        }
    }
    let identifications = pairs_to_identify
        .into_par_iter()
        .map(|(a, b)| identify(a, b))
        .collect::<Result<Vec<_>>>()?;

    let endpoints = match chain {
        Chain::G1ShiftT2T3 | Chain::G1aShiftT1T2 => {
            let mut points: Vec<Params> = pairs.iter().map(|(a, _)| a.clone()).collect();
            points.sort();
            points.dedup();
            points
                .par_iter()
                .map(|p| endpoint(id, p))
                .collect::<Result<Vec<_>>>()?
        }
        _ => Vec::new(),
    };
    Ok(ScanReport {
        chain,
        max,
        steps,
        identifications,
        endpoints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> &'static Registry {
        Registry::builtin()
    }

    #[test]
    fn registry_covers_every_family() {
        let ids = reg().ids();
        assert_eq!(ids.len(), 46);
        for k in [6, 7, 8, 9, 10, 12, 13, 17, 24, 25] {
            let err = build(reg(), FamilyId::G(k), &Params::t(3)).unwrap_err();
            assert!(matches!(err, Error::UnreconstructibleFamily(_)), "G{k}");
        }
    }

    #[test]
    fn star_plus_example() {
        let inst = build(reg(), FamilyId::StarPlus, &Params::n(11)).unwrap();
        let want = RationalMatrix::from_i64_rows(&[vec![3, 1, 0], vec![2, 10, 8], vec![0, 1, 1]]).unwrap();
        assert_eq!(inst.quotient.matrix, want);
        let ones = IntPolynomial::from_i64(&[-1, 1]).pow(8);
        assert_eq!(inst.expected_charpoly, &want.char_poly() * &ones);
        assert!(verify_instance(&inst).ok());
    }

    #[test]
    fn g3_example() {
        let inst = build(reg(), FamilyId::G(3), &Params::t(7)).unwrap();
        let quartic = IntPolynomial::from_i64(&[4, -65, 61, -15, 1]);
        let ones = IntPolynomial::from_i64(&[-1, 1]).pow(7);
        assert_eq!(inst.expected_charpoly, &quartic * &ones);
        assert_eq!(inst.order(), 11);
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(
            build(reg(), FamilyId::G(2), &Params::t(6)),
            Err(Error::ParamOutOfRange(_))
        ));
        assert!(matches!(
            build(reg(), FamilyId::G1, &Params::t2(1, 1)),
            Err(Error::ParamOutOfRange(_))
        ));
        assert!(build(reg(), FamilyId::G(2), &Params::t(7)).is_ok());
    }

    #[test]
    fn every_family_verifies_on_its_default_grid() {
        for id in reg().ids() {
            if reg().entry(id).unwrap().unreconstructible.is_some() {
                continue;
            }
            for p in default_grid(reg(), id).unwrap() {
                let inst = build(reg(), id, &p).unwrap();
                assert!(inst.order() <= MAX_DIRECT_ORDER, "{id} {p}");
                let r = verify_instance(&inst);
                assert!(r.ok(), "{id} {p}: {:?}", r.mismatches);
                assert_eq!(r.direct, Some(true));
            }
        }
    }

    #[test]
    fn corrupted_coefficient_is_located() {
        let mut r = reg().clone();
        let e = r.entry_mut(FamilyId::G(3)).unwrap();
        e.charpoly[0].0 = "x^4-(t+8)x^3+(6t+19)x^2-(7t+16)x+5".into();
        let inst = build(&r, FamilyId::G(3), &Params::t(7)).unwrap();
        let rep = verify_instance(&inst);
        assert!(!rep.ok());
        assert_eq!(rep.mismatches[0].coefficient, Some(0));
    }

    #[test]
    fn g2_integer_identities() {
        let r = g2_sign_evaluations(7).unwrap();
        assert_eq!(r.identities[0].actual, "28");
        assert_eq!(r.identities[2].actual, "8");
        assert!(r.identities[..3].iter().all(|i| i.exact));
        assert!(r.all_signs());
    }

    #[test]
    fn star_plus_bracket_small() {
        for n in [11, 12, 40] {
            let b = sn_plus_bounds(n).unwrap();
            assert!(b.ok(), "{b:?}");
        }
    }

    #[test]
    fn capture_holds_on_small_chain_members() {
        for (t1, t2, t3) in [(1, 0, 1), (1, 0, 0), (2, 3, 1), (1, 5, 0)] {
            let inst = build(reg(), FamilyId::G1, &Params::t3(t1, t2, t3)).unwrap();
            assert_eq!(family_f(&inst).unwrap().route, FRoute::Compound);
        }
    }

    #[test]
    fn capture_fails_when_a_part_dominates() {
        // K5 joined to three independent vertices: the K5 part contributes
        // the residual root 6, above the second quotient root 8 - sqrt(24).
        let host = Graph::new(2, &[(0, 1)]).unwrap();
        let parts = vec![Part::regular(5, 4).unwrap(), Part::regular(3, 0).unwrap()];
        let spec = HJoinSpec::new(host, parts).unwrap();
        assert_eq!(captures_top_two(&spec).unwrap(), Verdict::False);
    }

    #[test]
    fn chain_endpoints_are_identified() {
        let a = identify((FamilyId::G(11), Params::t3(0, 7, 0)), (FamilyId::G(2), Params::t(7))).unwrap();
        assert!(a.isomorphic);
        let b = identify((FamilyId::G(14), Params::t3(0, 5, 0)), (FamilyId::G(4), Params::t(5))).unwrap();
        assert!(b.isomorphic);
    }
}
