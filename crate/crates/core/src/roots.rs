//! Certified real-root isolation with Sturm sequences and rational
//! enclosures.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Requested interval width `2^-bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const DEFAULT_BITS: u32 = 40;
    pub const MAX_BITS: u32 = 200;
    pub const ENV_VAR: &'static str = "SPECTRAL_SUM_PRECISION";

    pub fn from_bits(bits: u32) -> Precision {
        Precision { bits: bits.clamp(1, Self::MAX_BITS) }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn width(self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << self.bits)
    }

    /// Doubles the bit count, capped at the maximum; `None` once capped.
    pub fn next(self) -> Option<Precision> {
        (self.bits < Self::MAX_BITS).then(|| Precision::from_bits(self.bits.saturating_mul(2)))
    }

    /// This precision followed by every doubling up to the cap.
    pub fn schedule(self) -> impl Iterator<Item = Precision> {
        std::iter::successors(Some(self), |p| p.next())
    }

    /// Parses `2^-N`, a bit count `N`, a fraction `p/q` or a decimal such
    /// as `1e-12`. Widths are rounded down to a power of two.
    pub fn parse(s: &str) -> Result<Precision> {
        let s = s.trim();
        let bad = || Error::ParamOutOfRange(format!("unrecognized precision {s:?}"));
        if let Some(exp) = s.strip_prefix("2^-").or_else(|| s.strip_prefix("2**-")) {
            return exp.trim().parse::<u32>().map(Precision::from_bits).map_err(|_| bad());
        }
        if let Ok(bits) = s.parse::<u32>() {
            return Ok(Precision::from_bits(bits));
        }
        let width = if let Some((p, q)) = s.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            p / q
        } else {
            s.parse::<f64>().map_err(|_| bad())?
        };
        if !(width > 0.0 && width < 1.0) {
            return Err(bad());
        }
        Ok(Precision::from_bits((-width.log2()).ceil() as u32))
    }

    /// The precision named by the environment, else the default.
    pub fn from_env() -> Result<Precision> {
        match std::env::var(Self::ENV_VAR) {
            Ok(v) => Precision::parse(&v),
            Err(_) => Ok(Precision::default()),
        }
    }
}

impl Default for Precision {
    fn default() -> Precision {
        Precision { bits: Self::DEFAULT_BITS }
    }
}

/// A real number known to lie in a rational enclosure: the single point
/// `lo` when `lo == hi`, otherwise strictly inside the open interval.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Enclosure {
    lo: BigRational,
    hi: BigRational,
}

impl Enclosure {
    pub fn point(v: BigRational) -> Enclosure {
        Enclosure { lo: v.clone(), hi: v }
    }

    pub fn from_integer(v: i64) -> Enclosure {
        Enclosure::point(BigRational::from_integer(v.into()))
    }

    /// The open interval `(lo, hi)`; a point when the endpoints agree.
    pub fn open(lo: BigRational, hi: BigRational) -> Enclosure {
        debug_assert!(lo <= hi);
        Enclosure { lo, hi }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        if self.is_exact() {
            x == &self.lo
        } else {
            &self.lo < x && x < &self.hi
        }
    }

    /// Certified ordering of the enclosed values, `None` when the
    /// enclosures cannot decide it.
    pub fn certified_cmp(&self, other: &Enclosure) -> Option<Ordering> {
        if self.is_exact() && other.is_exact() {
            return Some(self.lo.cmp(&other.lo));
        }
        if self.hi <= other.lo {
            return Some(Ordering::Less);
        }
        if other.hi <= self.lo {
            return Some(Ordering::Greater);
        }
        None
    }

    pub fn lt(&self, other: &Enclosure) -> Verdict {
        match self.certified_cmp(other) {
            Some(Ordering::Less) => Verdict::True,
            Some(_) => Verdict::False,
            None => Verdict::Undecided,
        }
    }

    pub fn le(&self, other: &Enclosure) -> Verdict {
        match self.certified_cmp(other) {
            Some(Ordering::Greater) => Verdict::False,
            Some(_) => Verdict::True,
            None => Verdict::Undecided,
        }
    }

    pub fn gt(&self, other: &Enclosure) -> Verdict {
        other.lt(self)
    }

    pub fn ge(&self, other: &Enclosure) -> Verdict {
        other.le(self)
    }

    pub fn scale(&self, c: &BigRational) -> Enclosure {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Enclosure { lo: b, hi: a }
        } else {
            Enclosure { lo: a, hi: b }
        }
    }
}

impl Add for &Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Neg for &Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "({}, {})", self.lo, self.hi)
        }
    }
}

/// Serialized as exact rational endpoints plus a decimal approximation.
impl Serialize for Enclosure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Enclosure", 4)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("exact", &self.is_exact())?;
        st.serialize_field("approx", &decimal(&self.midpoint(), 15))?;
        st.end()
    }
}

/// Outcome of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    True,
    False,
    Undecided,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    pub fn is_decided(self) -> bool {
        self != Verdict::Undecided
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            _ => Verdict::Undecided,
        }
    }

    pub fn not(self) -> Verdict {
        match self {
            Verdict::True => Verdict::False,
            Verdict::False => Verdict::True,
            Verdict::Undecided => Verdict::Undecided,
        }
    }
}

/// Runs `check` at `start` and each doubled precision until it decides.
pub fn certify<F>(start: Precision, mut check: F) -> Result<Verdict>
where
    F: FnMut(Precision) -> Result<Verdict>,
{
    for p in start.schedule() {
        let v = check(p)?;
        if v.is_decided() {
            return Ok(v);
        }
    }
    Ok(Verdict::Undecided)
}

/// One distinct real root with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralRoot {
    pub value: Enclosure,
    pub multiplicity: usize,
}

/// Distinct real roots of a polynomial, sorted descending, with the
/// square-free radical kept so that enclosures can be refined later.
#[derive(Clone, Debug)]
pub struct Spectrum {
    roots: Vec<SpectralRoot>,
    degree: usize,
    radical: IntPolynomial,
    radical_deriv: IntPolynomial,
    precision: Precision,
}

impl Spectrum {
    pub fn roots(&self) -> &[SpectralRoot] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// True when every complex root is real.
    pub fn is_all_real(&self) -> bool {
        self.total_multiplicity() == self.degree
    }

    /// Roots repeated by multiplicity, largest first.
    pub fn expanded(&self) -> impl Iterator<Item = &Enclosure> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat(&r.value).take(r.multiplicity))
    }

    /// The i-th largest root counted with multiplicity (0-based).
    pub fn nth_largest(&self, i: usize) -> Option<&Enclosure> {
        self.expanded().nth(i)
    }

    /// Enclosure of the sum of the `k` largest roots.
    pub fn top_sum(&self, k: usize) -> Result<Enclosure> {
        if k == 0 || k > self.total_multiplicity() {
            return Err(Error::KOutOfRange {
                k,
                n: self.total_multiplicity(),
            });
        }
        Ok(self
            .expanded()
            .take(k)
            .fold(Enclosure::from_integer(0), |acc, e| &acc + e))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.expanded().map(Enclosure::to_f64).collect()
    }

    /// Narrows every inexact enclosure to width at most `2^-bits`.
    pub fn refine(&mut self, precision: Precision) {
        if precision <= self.precision {
            return;
        }
        let width = precision.width();
        for r in &mut self.roots {
            if !r.value.is_exact() {
                r.value = bisect_simple_root(
                    &self.radical,
                    &self.radical_deriv,
                    r.value.lo.clone(),
                    r.value.hi.clone(),
                    &width,
                );
            }
        }
        self.precision = precision;
    }
}

/// Isolates every distinct real root of `p` to width at most the given
/// precision; multiplicities come from the square-free decomposition.
pub fn isolate_real_roots(p: &IntPolynomial, precision: Precision) -> Result<Spectrum> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    let factors = p.square_free_decomposition();
    let radical = factors
        .iter()
        .fold(IntPolynomial::one(), |acc, (f, _)| &acc * f)
        .primitive();
    let radical_deriv = radical.derivative();
    let width = precision.width();

    let mut roots = Vec::new();
    if radical.degree().unwrap_or(0) > 0 {
        for (lo, hi) in isolate_square_free(&radical, &radical_deriv) {
            let value = if lo == hi {
                Enclosure::point(lo)
            } else {
                bisect_simple_root(&radical, &radical_deriv, lo, hi, &width)
            };
            let multiplicity = multiplicity_of(&factors, &value);
            roots.push(SpectralRoot { value, multiplicity });
        }
    }
    roots.sort_by(|a, b| b.value.midpoint().cmp(&a.value.midpoint()));
    Ok(Spectrum {
        roots,
        degree,
        radical,
        radical_deriv,
        precision,
    })
}

fn sturm_chain(f: &IntPolynomial, df: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = vec![f.clone(), df.primitive()];
    loop {
        let n = chain.len();
        if chain[n - 1].degree().unwrap_or(0) == 0 {
            break;
        }
        let r = -chain[n - 2].positive_pseudo_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.primitive());
    }
    chain
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(chain: &[IntPolynomial], x: &BigRational) -> usize {
    variations(chain.iter().map(|p| p.sign_at_rational(x)))
}

fn bound_exponent(p: &IntPolynomial) -> u64 {
    let lead_bits = p.leading().map(|c| c.bits()).unwrap_or(1);
    let max_bits = p.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
    (max_bits + 2).saturating_sub(lead_bits).max(1)
}

/// Isolating intervals `(lo, hi)` holding one root each, or points.
fn isolate_square_free(f: &IntPolynomial, df: &IntPolynomial) -> Vec<(BigRational, BigRational)> {
    struct Pending {
        lo: BigRational,
        hi: BigRational,
        v_lo: usize,
        v_hi: usize,
        hi_is_root: bool,
    }

    let chain = sturm_chain(f, df);
    let bound = BigRational::from_integer(BigInt::one() << bound_exponent(f));
    let lo = -bound.clone();
    let v_lo = variations_at(&chain, &lo);
    let v_hi = variations_at(&chain, &bound);
    let two = BigRational::from_integer(2.into());

    let mut out = Vec::new();
    let mut stack = vec![Pending {
        lo,
        hi: bound,
        v_lo,
        v_hi,
        hi_is_root: false,
    }];
    while let Some(iv) = stack.pop() {
        let count = iv.v_lo - iv.v_hi - usize::from(iv.hi_is_root);
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push((iv.lo, iv.hi));
            continue;
        }
        let mid = (&iv.lo + &iv.hi) / &two;
        let mid_is_root = f.sign_at_rational(&mid) == Ordering::Equal;
        let v_mid = variations_at(&chain, &mid);
        if mid_is_root {
            out.push((mid.clone(), mid.clone()));
        }
        stack.push(Pending {
            lo: iv.lo,
            hi: mid.clone(),
            v_lo: iv.v_lo,
            v_hi: v_mid,
            hi_is_root: mid_is_root,
        });
        stack.push(Pending {
            lo: mid,
            hi: iv.hi,
            v_lo: v_mid,
            v_hi: iv.v_hi,
            hi_is_root: iv.hi_is_root,
        });
    }
    out
}

/// Sign of `f` just to the right of `x` for square-free `f`.
fn sign_right_of(f: &IntPolynomial, df: &IntPolynomial, x: &BigRational) -> Ordering {
    match f.sign_at_rational(x) {
        Ordering::Equal => df.sign_at_rational(x),
        s => s,
    }
}

/// Sign of `f` just to the left of `x` for square-free `f`.
fn sign_left_of(f: &IntPolynomial, df: &IntPolynomial, x: &BigRational) -> Ordering {
    match f.sign_at_rational(x) {
        Ordering::Equal => df.sign_at_rational(x).reverse(),
        s => s,
    }
}

/// Bisects the open interval `(lo, hi)`, which holds exactly one root of
/// the square-free `f`, until its width is at most `width`.
fn bisect_simple_root(
    f: &IntPolynomial,
    df: &IntPolynomial,
    mut lo: BigRational,
    mut hi: BigRational,
    width: &BigRational,
) -> Enclosure {
    let two = BigRational::from_integer(2.into());
    let s_lo = sign_right_of(f, df, &lo);
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        match f.sign_at_rational(&mid) {
            Ordering::Equal => return Enclosure::point(mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Enclosure::open(lo, hi)
}

fn multiplicity_of(factors: &[(IntPolynomial, usize)], root: &Enclosure) -> usize {
    if root.is_exact() {
        for (f, m) in factors {
            if f.sign_at_rational(root.lo()) == Ordering::Equal {
                return *m;
            }
        }
    } else {
        for (f, m) in factors {
            if f.degree().unwrap_or(0) == 0 {
                continue;
            }
            let df = f.derivative();
            if sign_right_of(f, &df, root.lo()) != sign_left_of(f, &df, root.hi()) {
                return *m;
            }
        }
    }
    unreachable!("every root of the radical is a root of exactly one factor")
}

/// Certified ordering of two real algebraic numbers, each the `index`-th
/// largest root of its polynomial, refining until decided or the cap.
pub fn compare_roots(
    a: &mut Spectrum,
    ia: usize,
    b: &mut Spectrum,
    ib: usize,
) -> Result<Option<Ordering>> {
    let start = a.precision().min(b.precision());
    for p in start.schedule() {
        a.refine(p);
        b.refine(p);
        let (Some(x), Some(y)) = (a.nth_largest(ia), b.nth_largest(ib)) else {
            return Err(Error::KOutOfRange {
                k: ia.max(ib) + 1,
                n: a.total_multiplicity().min(b.total_multiplicity()),
            });
        };
        if let Some(o) = x.certified_cmp(y) {
            return Ok(Some(o));
        }
        // Equal irrational values never separate, so detect them through
        // the common factor of the two radicals.
        if let Some(o) = equal_algebraic(a, x, b, y) {
            return Ok(Some(o));
        }
    }
    Ok(None)
}

/// Detects exact equality of two inexact roots through a common factor.
fn equal_algebraic(a: &Spectrum, x: &Enclosure, b: &Spectrum, y: &Enclosure) -> Option<Ordering> {
    let g = a.radical.gcd(&b.radical);
    if g.degree().unwrap_or(0) == 0 {
        return None;
    }
    // Both lie in the overlap; if g has exactly one root there and both
    // are roots of g, they coincide.
    let lo = x.lo().max(y.lo()).clone();
    let hi = x.hi().min(y.hi()).clone();
    if lo > hi {
        return None;
    }
    let dg = g.derivative();
    let in_g = |e: &Enclosure| {
        if e.is_exact() {
            g.sign_at_rational(e.lo()) == Ordering::Equal
        } else {
            sign_right_of(&g, &dg, e.lo()) != sign_left_of(&g, &dg, e.hi())
                && roots_in_open(&g, e.lo(), e.hi()) == 1
        }
    };
    if in_g(x) && in_g(y) && roots_in_closed(&g, &lo, &hi) == 1 {
        Some(Ordering::Equal)
    } else {
        None
    }
}

fn roots_in_open(f: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> usize {
    let chain = sturm_chain(f, &f.derivative());
    let at_hi = usize::from(f.sign_at_rational(hi) == Ordering::Equal);
    (variations_at(&chain, lo) - variations_at(&chain, hi)).saturating_sub(at_hi)
}

fn roots_in_closed(f: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> usize {
    let chain = sturm_chain(f, &f.derivative());
    let at_lo = usize::from(f.sign_at_rational(lo) == Ordering::Equal);
    variations_at(&chain, lo) - variations_at(&chain, hi) + at_lo
}

/// Real interval decimal rendering used in reports.
pub fn decimal(x: &BigRational, digits: usize) -> String {
    let neg = x.is_negative();
    let a = x.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (&a * BigRational::from_integer(scale.clone())).round().to_integer();
    let int = &scaled / &scale;
    let frac = &scaled % &scale;
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_two() {
        let s = isolate_real_roots(&poly(&[-2, 0, 1]), Precision::default()).unwrap();
        assert_eq!(s.roots().len(), 2);
        let v = s.to_f64();
        assert!((v[0] - 2f64.sqrt()).abs() < 1e-11);
        assert!((v[1] + 2f64.sqrt()).abs() < 1e-11);
        for r in s.roots() {
            assert!(r.value.width() <= Precision::default().width());
        }
    }

    #[test]
    fn complete_graph_spectrum() {
        let s = isolate_real_roots(&poly(&[-4, 9, -6, 1]), Precision::default()).unwrap();
        assert_eq!(s.roots().len(), 2);
        assert_eq!(s.roots()[0].value, Enclosure::from_integer(4));
        assert_eq!(s.roots()[0].multiplicity, 1);
        assert_eq!(s.roots()[1].value, Enclosure::from_integer(1));
        assert_eq!(s.roots()[1].multiplicity, 2);
    }

    #[test]
    fn triple_root() {
        let s = isolate_real_roots(&poly(&[-1, 3, -3, 1]), Precision::default()).unwrap();
        assert_eq!(s.roots().len(), 1);
        assert_eq!(s.roots()[0].multiplicity, 3);
        assert!(s.roots()[0].value.contains(&q(1, 1)));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(matches!(
            isolate_real_roots(&IntPolynomial::zero(), Precision::default()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn complex_roots_are_skipped() {
        let s = isolate_real_roots(&poly(&[1, 0, 1]), Precision::default()).unwrap();
        assert!(s.roots().is_empty());
        assert!(!s.is_all_real());
    }

    #[test]
    fn refinement_narrows() {
        let mut s = isolate_real_roots(&poly(&[-2, 0, 1]), Precision::from_bits(10)).unwrap();
        s.refine(Precision::from_bits(120));
        let w = s.roots()[0].value.width();
        assert!(w <= Precision::from_bits(120).width());
        let x = s.roots()[0].value.lo().clone();
        assert!(&x * &x < q(2, 1));
    }

    #[test]
    fn mixed_multiplicities() {
        // (x-3)^2 (x^2-5) x
        let p = &(&poly(&[-3, 1]).pow(2) * &poly(&[-5, 0, 1])) * &poly(&[0, 1]);
        let s = isolate_real_roots(&p, Precision::default()).unwrap();
        let mults: Vec<usize> = s.roots().iter().map(|r| r.multiplicity).collect();
        assert_eq!(mults, vec![2, 1, 1, 1]);
        assert!(s.is_all_real());
        let top = s.top_sum(3).unwrap();
        assert!((top.to_f64() - (5f64.sqrt() + 6.0)).abs() < 1e-10);
    }

    #[test]
    fn certified_comparisons() {
        let a = Enclosure::open(q(1, 1), q(2, 1));
        let b = Enclosure::point(q(2, 1));
        assert_eq!(a.lt(&b), Verdict::True);
        assert_eq!(b.le(&b), Verdict::True);
        assert_eq!(b.lt(&b), Verdict::False);
        let c = Enclosure::open(q(3, 2), q(5, 2));
        assert_eq!(a.lt(&c), Verdict::Undecided);
        assert_eq!((&a + &c).lo(), &q(5, 2));
        assert_eq!((&b - &a).hi(), &q(1, 1));
    }

    #[test]
    fn equal_roots_of_different_polynomials() {
        // sqrt 2 as a root of x^2-2 and of (x^2-2)(x-7)
        let mut a = isolate_real_roots(&poly(&[-2, 0, 1]), Precision::from_bits(8)).unwrap();
        let p = &poly(&[-2, 0, 1]) * &poly(&[-7, 1]);
        let mut b = isolate_real_roots(&p, Precision::from_bits(8)).unwrap();
        assert_eq!(compare_roots(&mut a, 0, &mut b, 1).unwrap(), Some(Ordering::Equal));
        assert_eq!(compare_roots(&mut a, 0, &mut b, 0).unwrap(), Some(Ordering::Less));
    }

    #[test]
    fn precision_parsing() {
        assert_eq!(Precision::parse("2^-60").unwrap().bits(), 60);
        assert_eq!(Precision::parse("64").unwrap().bits(), 64);
        assert_eq!(Precision::parse("1/1024").unwrap().bits(), 10);
        assert_eq!(Precision::parse("1e-12").unwrap().bits(), 40);
        assert!(Precision::parse("fast").is_err());
        let bits: Vec<u32> = Precision::default().schedule().map(Precision::bits).collect();
        assert_eq!(bits, vec![40, 80, 160, 200]);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&q(1, 3), 4), "0.3333");
        assert_eq!(decimal(&q(-5, 4), 2), "-1.25");
        assert_eq!(decimal(&q(7, 1), 0), "7");
    }
}
