//! Randomized and exhaustive property suites behind `properties`.

use std::fmt;

use num_rational::BigRational;
use qspectra_core::enumerate::{connected_graphs, pattern_census, trees};
use qspectra_core::graph::PatternId;
use qspectra_core::hjoin::verify_factorization;
use qspectra_core::jacobi::{sym_eigenvalues, DEFAULT_TOL};
use qspectra_core::matrix::{laplacian, lex_subsets, signless_char_poly, signless_laplacian};
use qspectra_core::roots::certify;
use qspectra_core::sums::{
    edge_insertion_bound_checks, fan_check, interlacing_check, l_spectrum, q_spectrum, s_k, subgraph_slack_check,
    trace_identity_check, tree_f_bound, tree_laplacian_sum_bound,
};
use qspectra_core::{Enclosure, Graph, HJoinSpec, Mode, Part, RationalMatrix, Result, Spectrum, Verdict};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{Row, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Fan,
    Interlace,
    EdgeInsert,
    Trace,
    SubgraphSlack,
    Hjoin,
    Tree,
    Bipartite,
    Patterns,
    Compound,
    All,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::Fan,
        Suite::Interlace,
        Suite::EdgeInsert,
        Suite::Trace,
        Suite::SubgraphSlack,
        Suite::Hjoin,
        Suite::Tree,
        Suite::Bipartite,
        Suite::Patterns,
        Suite::Compound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fan => "fan",
            Suite::Interlace => "interlace",
            Suite::EdgeInsert => "edge-insert",
            Suite::Trace => "trace",
            Suite::SubgraphSlack => "subgraph-slack",
            Suite::Hjoin => "hjoin",
            Suite::Tree => "tree",
            Suite::Bipartite => "bipartite",
            Suite::Patterns => "patterns",
            Suite::Compound => "compound",
            Suite::All => "all",
        }
    }

    /// Random cases drawn when `--count` is not given; `None` for the
    /// exhaustive suites.
    pub fn default_count(self) -> Option<usize> {
        match self {
            Suite::Fan => Some(1000),
            Suite::SubgraphSlack => Some(200),
            Suite::Hjoin => Some(100),
            Suite::Compound => Some(50),
            _ => None,
        }
    }

    /// Largest order swept when `--max-n` is not given.
    pub fn default_max_n(self) -> Option<usize> {
        match self {
            Suite::Interlace | Suite::EdgeInsert | Suite::Patterns => Some(7),
            Suite::Trace | Suite::Bipartite => Some(8),
            Suite::Tree => Some(9),
            _ => None,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub count: Option<usize>,
    pub max_n: Option<usize>,
    /// Flips every expected outcome, so a correct implementation fails.
    pub negate: bool,
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Row>> {
    if suite == Suite::All {
        let mut rows = Vec::new();
        for s in Suite::EACH {
            rows.extend(run(s, cfg)?);
        }
        return Ok(rows);
    }
    let count = cfg.count.or(suite.default_count()).unwrap_or(0);
    let max_n = cfg.max_n.or(suite.default_max_n()).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(Suite::EACH.iter().position(|&s| s == suite).unwrap_or(0) as u64);
    let mut rows = match suite {
        Suite::Fan => fan(&mut rng, count, cfg.negate)?,
        Suite::Interlace => interlace(max_n, cfg.negate)?,
        Suite::EdgeInsert => edge_insert(max_n, cfg.negate)?,
        Suite::Trace => trace(max_n, cfg.negate)?,
        Suite::SubgraphSlack => subgraph_slack(&mut rng, count, cfg.negate)?,
        Suite::Hjoin => hjoin(&mut rng, count, cfg.negate)?,
        Suite::Tree => tree(max_n, cfg.negate)?,
        Suite::Bipartite => bipartite(max_n, cfg.negate)?,
        Suite::Patterns => patterns(max_n, cfg.negate)?,
        Suite::Compound => compound(&mut rng, count, cfg.negate)?,
        Suite::All => unreachable!(),
    };
    for r in &mut rows {
        r.fields.insert("suite".into(), suite.name().into());
    }
    Ok(rows)
}

/// Outcomes of many cases folded into one report row.
#[derive(Clone, Debug, Default, Serialize)]
struct Tally {
    cases: usize,
    failed: usize,
    undecided: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure: Option<String>,
}

impl Tally {
    fn record(&mut self, status: Status, describe: impl FnOnce() -> String) {
        self.cases += 1;
        match status {
            Status::Fail => {
                self.failed += 1;
                if self.first_failure.is_none() {
                    self.first_failure = Some(describe());
                }
            }
            Status::Undecided => self.undecided += 1,
            _ => {}
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.failed += other.failed;
        self.undecided += other.undecided;
        self.first_failure = self.first_failure.or(other.first_failure);
        self
    }

    fn status(&self) -> Status {
        if self.failed > 0 {
            Status::Fail
        } else if self.undecided > 0 {
            Status::Undecided
        } else {
            Status::Pass
        }
    }
}

#[derive(Serialize)]
struct TallyRow<'a, E: Serialize> {
    check: &'a str,
    #[serde(flatten)]
    tally: &'a Tally,
    #[serde(flatten)]
    extra: E,
}

fn tally_row<E: Serialize>(check: &str, tally: &Tally, extra: E) -> Row {
    Row::new(tally.status(), TallyRow { check, tally, extra })
}

#[derive(Serialize)]
struct AtOrder {
    n: usize,
}

fn status(v: impl Into<Status>, negate: bool) -> Status {
    let s = v.into();
    if negate {
        s.negate()
    } else {
        s
    }
}

/// Folds a per-graph check over every connected graph of each order.
fn per_order<F>(orders: std::ops::RangeInclusive<usize>, check: &str, graphs: fn(usize) -> Result<Vec<Graph>>, visit: F) -> Result<Vec<Row>>
where
    F: Fn(&Graph) -> Result<Tally> + Sync,
{
    let mut rows = Vec::new();
    for n in orders {
        let level = graphs(n)?;
        let tally = level
            .par_iter()
            .map(&visit)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(Tally::default(), Tally::merge);
        rows.push(tally_row(check, &tally, AtOrder { n }));
    }
    Ok(rows)
}

fn non_edges(g: &Graph) -> impl Iterator<Item = (usize, usize)> + '_ {
    let n = g.n();
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v))
}

fn random_symmetric(rng: &mut ChaCha8Rng, order: usize, bound: i64) -> RationalMatrix {
    let mut m = RationalMatrix::zero(order);
    for i in 0..order {
        for j in i..order {
            let v = BigRational::from_integer(rng.gen_range(-bound..=bound).into());
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

fn random_matrix(rng: &mut ChaCha8Rng, order: usize, bound: i64, max_den: i64) -> RationalMatrix {
    let mut m = RationalMatrix::zero(order);
    for i in 0..order {
        for j in 0..order {
            let num = rng.gen_range(-bound..=bound);
            let den = rng.gen_range(1..=max_den);
            m.set(i, j, BigRational::new(num.into(), den.into()));
        }
    }
    m
}

fn fan(rng: &mut ChaCha8Rng, count: usize, negate: bool) -> Result<Vec<Row>> {
    let cases: Vec<(RationalMatrix, RationalMatrix, usize)> = (0..count)
        .map(|_| {
            let order = rng.gen_range(3..=8);
            let a = random_symmetric(rng, order, 9);
            let b = random_symmetric(rng, order, 9);
            (a, b, rng.gen_range(1..=order))
        })
        .collect();
    let verdicts = cases
        .par_iter()
        .map(|(a, b, k)| fan_check(a, b, *k))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for order in 3..=8 {
        let mut tally = Tally::default();
        for (i, ((a, _, k), v)) in cases.iter().zip(&verdicts).enumerate() {
            if a.order() == order {
                tally.record(status(*v, negate), || format!("case {i}, k = {k}"));
            }
        }
        rows.push(tally_row("fan", &tally, serde_json::json!({ "order": order })));
    }
    Ok(rows)
}

fn interlace(max_n: usize, negate: bool) -> Result<Vec<Row>> {
    per_order(2..=max_n, "interlacing", connected_graphs, |g| {
        let mut t = Tally::default();
        for (u, v) in non_edges(g) {
            let s = status(interlacing_check(g, u, v)?, negate);
            t.record(s, || format!("{} + ({u}, {v})", crate::commands::compact(g)));
        }
        Ok(t)
    })
}

fn edge_insert(max_n: usize, negate: bool) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for n in 2..=max_n {
        let level = connected_graphs(n)?;
        let per_graph = level
            .par_iter()
            .map(|g| {
                let mut t = Tally::default();
                let mut premises = 0usize;
                for (u, v) in non_edges(g) {
                    for (k, imp) in edge_insertion_bound_checks(g, u, v)?.into_iter().enumerate() {
                        premises += usize::from(imp.premise == Verdict::True);
                        t.record(status(imp.holds(), negate), || {
                            format!("{} + ({u}, {v}), k = {}", crate::commands::compact(g), k + 1)
                        });
                    }
                }
                Ok((t, premises))
            })
            .collect::<Result<Vec<_>>>()?;
        let premise_true: usize = per_graph.iter().map(|p| p.1).sum();
        let tally = per_graph.into_iter().map(|p| p.0).fold(Tally::default(), Tally::merge);
        rows.push(tally_row(
            "edge-insertion",
            &tally,
            serde_json::json!({ "n": n, "premise_true": premise_true }),
        ));
    }
    Ok(rows)
}

fn trace(max_n: usize, negate: bool) -> Result<Vec<Row>> {
    per_order(1..=max_n, "trace-identity", connected_graphs, |g| {
        let mut t = Tally::default();
        t.record(status(trace_identity_check(g), negate), || crate::commands::compact(g));
        Ok(t)
    })
}

/// Places `pattern` on random vertices of an order-`n` graph and adds each
/// other pair with a random density.
fn random_supergraph(rng: &mut ChaCha8Rng, pattern: &Graph, n: usize) -> Result<(Graph, Vec<(usize, usize)>)> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let placed: Vec<(usize, usize)> = pattern.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    let density = rng.gen_range(0.0..0.4);
    let mut edges = placed.clone();
    for u in 0..n {
        for v in u + 1..n {
            let in_pattern = placed.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v));
            if !in_pattern && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Ok((Graph::new(n, &edges)?, placed))
}

fn subgraph_slack(rng: &mut ChaCha8Rng, count: usize, negate: bool) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for pattern in [PatternId::FourK2, PatternId::ThreeK12] {
        let base = pattern.graph();
        let cases: Vec<(Graph, Vec<(usize, usize)>)> = (0..count / 2)
            .map(|_| {
                let n = rng.gen_range(base.n()..=10);
                random_supergraph(rng, &base, n)
            })
            .collect::<Result<_>>()?;
        let results = cases
            .par_iter()
            .map(|(g, h)| subgraph_slack_check(g, h, 2))
            .collect::<Result<Vec<_>>>()?;
        let mut tally = Tally::default();
        let mut premise_true = 0;
        for ((g, _), imp) in cases.iter().zip(&results) {
            premise_true += usize::from(imp.premise == Verdict::True);
            tally.record(status(imp.holds(), negate), || crate::commands::compact(g));
        }
        rows.push(tally_row(
            "subgraph-slack",
            &tally,
            serde_json::json!({ "pattern": pattern, "k": 2, "premise_true": premise_true }),
        ));
    }
    Ok(rows)
}

fn random_part(rng: &mut ChaCha8Rng) -> Result<Part> {
    let n = rng.gen_range(1..=5usize);
    let mut options = vec![0, n - 1];
    if n % 2 == 0 {
        options.extend([1, n - 2]);
    }
    if n >= 3 {
        options.push(2);
    }
    Part::regular(n, *options.choose(rng).expect("nonempty"))
}

fn hjoin(rng: &mut ChaCha8Rng, count: usize, negate: bool) -> Result<Vec<Row>> {
    let specs: Vec<HJoinSpec> = (0..count)
        .map(|_| {
            let h = rng.gen_range(2..=4);
            let mut host_edges = Vec::new();
            for u in 0..h {
                for v in u + 1..h {
                    if rng.gen_bool(0.6) {
                        host_edges.push((u, v));
                    }
                }
            }
            let parts = (0..h).map(|_| random_part(rng)).collect::<Result<Vec<_>>>()?;
            HJoinSpec::new(Graph::new(h, &host_edges)?, parts)
        })
        .collect::<Result<_>>()?;
    let outcomes = specs
        .par_iter()
        .map(|s| {
            let q = s.quotient_matrix();
            let symmetrizable = q.matrix.symmetrize_quotient(&q.part_sizes).is_ok();
            Ok(verify_factorization(s)?.ok && symmetrizable)
        })
        .collect::<Result<Vec<bool>>>()?;
    let mut tally = Tally::default();
    for (s, ok) in specs.iter().zip(outcomes) {
        tally.record(status(ok, negate), || s.to_json());
    }
    Ok(vec![tally_row("hjoin-factorization", &tally, serde_json::json!({}))])
}

/// Certifies `S_k <= bound` on an exact spectrum, refining as needed.
fn top_sum_le(spec: &mut Spectrum, k: usize, bound: &BigRational) -> Result<Verdict> {
    let bound = Enclosure::point(bound.clone());
    certify(spec.precision(), |p| {
        spec.refine(p);
        Ok(spec.top_sum(k)?.le(&bound))
    })
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Largest gap between the Laplacian and signless Laplacian spectra.
fn float_gap(g: &Graph) -> Result<f64> {
    let l = sorted_desc(sym_eigenvalues(&laplacian(g), DEFAULT_TOL)?);
    let q = sorted_desc(sym_eigenvalues(&signless_laplacian(g), DEFAULT_TOL)?);
    Ok(l.iter().zip(&q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

const SPECTRAL_TOLERANCE: f64 = 1e-9;

fn tree(max_n: usize, negate: bool) -> Result<Vec<Row>> {
    per_order(2..=max_n, "tree-bounds", trees, |g| {
        let n = g.n();
        let p = qspectra_core::Precision::default();
        let mut q = q_spectrum(g, p)?;
        let mut l = l_spectrum(g, p)?;
        // f >= 2/n  <=>  S_2 <= e + 3 - 2/n
        let f_bound = BigRational::from_integer((g.edge_count() as i64 + 3).into()) - tree_f_bound(n);
        let mut v = top_sum_le(&mut q, 2, &f_bound)?;
        for k in 1..=n {
            v = v.and(top_sum_le(&mut l, k, &tree_laplacian_sum_bound(n, k))?);
        }
        let same_poly = laplacian(g).char_poly() == signless_char_poly(g);
        let close = float_gap(g)? <= SPECTRAL_TOLERANCE;
        let mut t = Tally::default();
        t.record(status(v.and(Verdict::from_bool(same_poly && close)), negate), || {
            crate::commands::compact(g)
        });
        Ok(t)
    })
}

fn bipartite(max_n: usize, negate: bool) -> Result<Vec<Row>> {
    per_order(2..=max_n, "bipartite-l-q", connected_graphs, |g| {
        let mut t = Tally::default();
        if g.is_bipartite() {
            let ok = laplacian(g).char_poly() == signless_char_poly(g) && float_gap(g)? <= SPECTRAL_TOLERANCE;
            t.record(status(ok, negate), || crate::commands::compact(g));
        }
        Ok(t)
    })
}

fn patterns(max_n: usize, negate: bool) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (pattern, expected) in [(PatternId::FourK2, 4), (PatternId::ThreeK12, 6)] {
        let g = pattern.graph();
        let s2 = s_k(&g, 2, Mode::Exact)?.value;
        let exact = s2.is_exact() && *s2.lo() == BigRational::from_integer(expected.into());
        let edges_match = g.edge_count() as i64 == expected;
        rows.push(Row::new(
            status(exact && edges_match, negate),
            serde_json::json!({ "check": "s2-equals-edges", "pattern": pattern, "s2": s2, "e": g.edge_count() }),
        ));
    }
    for n in 2..=max_n.min(9) {
        let census = pattern_census(n)?;
        let total: u64 = census.iter().map(|r| r.count).sum();
        let expected = connected_graphs(n)?.len() as u64;
        let large_matching_has_4k2 = census.iter().all(|r| r.matching < 4 || r.has_4k2);
        let neither_small = census.iter().all(|r| r.has_4k2 || r.has_3k12 || r.matching <= 3);
        rows.push(Row::new(
            status(total == expected && large_matching_has_4k2 && neither_small, negate),
            serde_json::json!({
                "check": "census",
                "n": n,
                "classes": total,
                "large_matching_has_4k2": large_matching_has_4k2,
                "pattern_free_matching_at_most_3": neither_small,
                "rows": census,
            }),
        ));
    }
    Ok(rows)
}

/// All `k`-subset sums of `values`, largest first.
fn subset_sums(values: &[f64], k: usize) -> Vec<f64> {
    sorted_desc(lex_subsets(values.len(), k).iter().map(|s| s.iter().map(|&i| values[i]).sum()).collect())
}

const COMPOUND_TOLERANCE: f64 = 1e-8;

fn compound(rng: &mut ChaCha8Rng, count: usize, negate: bool) -> Result<Vec<Row>> {
    let mut rows = Vec::new();

    let sym: Vec<(RationalMatrix, usize)> = (0..count)
        .map(|_| {
            let order = rng.gen_range(3..=7);
            (random_symmetric(rng, order, 5), rng.gen_range(2..=3))
        })
        .collect();
    let mut tally = Tally::default();
    for (i, (m, k)) in sym.iter().enumerate() {
        let base = sym_eigenvalues(m, DEFAULT_TOL)?;
        let got = sorted_desc(sym_eigenvalues(&m.additive_compound(*k)?, DEFAULT_TOL)?);
        let want = subset_sums(&base, *k);
        let ok = got.len() == want.len()
            && got.iter().zip(&want).all(|(a, b)| (a - b).abs() <= COMPOUND_TOLERANCE);
        tally.record(status(ok, negate), || format!("case {i}, order {}, k = {k}", m.order()));
    }
    rows.push(tally_row("additive-compound-spectrum", &tally, serde_json::json!({ "tolerance": COMPOUND_TOLERANCE })));

    let mut tally = Tally::default();
    for i in 0..count {
        let a = random_matrix(rng, 4, 9, 1);
        let b = random_matrix(rng, 4, 9, 1);
        let lhs = a.mul(&b)?.compound(2)?;
        let rhs = a.compound(2)?.mul(&b.compound(2)?)?;
        tally.record(status(lhs == rhs, negate), || format!("case {i}"));
    }
    rows.push(tally_row("compound-multiplicative", &tally, serde_json::json!({ "k": 2 })));

    let mut tally = Tally::default();
    for i in 0..count {
        let m = random_matrix(rng, 5, 9, 5);
        let k = rng.gen_range(2..=3);
        let ok = m.additive_compound(k)? == m.additive_compound_by_derivative(k)?;
        tally.record(status(ok, negate), || format!("case {i}, k = {k}"));
    }
    rows.push(tally_row("additive-compound-definition", &tally, serde_json::json!({ "order": 5 })));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(count: usize, max_n: usize) -> SuiteConfig {
        SuiteConfig {
            seed: 3,
            count: Some(count),
            max_n: Some(max_n),
            negate: false,
        }
    }

    #[test]
    fn small_sweeps_pass() {
        for s in [Suite::Fan, Suite::Interlace, Suite::EdgeInsert, Suite::Trace, Suite::Hjoin, Suite::Tree, Suite::Bipartite, Suite::Compound] {
            for row in run(s, &cfg(6, 5)).unwrap() {
                assert_eq!(row.status, Status::Pass, "{s}: {:?}", row.fields);
            }
        }
    }

    #[test]
    fn negation_fails_every_case() {
        let c = SuiteConfig { negate: true, ..cfg(4, 4) };
        let rows = run(Suite::Trace, &c).unwrap();
        assert!(rows.iter().all(|r| r.status == Status::Fail));
    }

    #[test]
    fn seeds_reproduce() {
        let a = run(Suite::Fan, &cfg(20, 0)).unwrap();
        let b = run(Suite::Fan, &cfg(20, 0)).unwrap();
        assert_eq!(a, b);
    }
}
