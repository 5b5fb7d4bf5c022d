//! Sums of the largest signless Laplacian eigenvalues and checkers for the
//! inequalities built on them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::jacobi::{jacobi, DEFAULT_TOL};
use crate::matrix::{binomial, laplacian, signless_char_poly, signless_laplacian, RationalMatrix};
use crate::roots::{certify, compare_roots, isolate_real_roots, Enclosure, Precision, Spectrum, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Floating,
}

/// A certified enclosure of a spectral quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumResult {
    pub value: Enclosure,
    pub k: usize,
    pub method: Mode,
}

/// Exact roots of `char_poly(Q(g))`.
pub fn q_spectrum(g: &Graph, precision: Precision) -> Result<Spectrum> {
    isolate_real_roots(&signless_char_poly(g), precision)
}

/// Exact roots of `char_poly(L(g))`.
pub fn l_spectrum(g: &Graph, precision: Precision) -> Result<Spectrum> {
    isolate_real_roots(&laplacian(g).char_poly(), precision)
}

/// Floating eigenvalues with a rounding-safe error radius per eigenvalue.
pub fn float_spectrum(m: &RationalMatrix) -> (Vec<f64>, f64) {
    let n = m.order();
    let a = m.to_f64();
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let r = jacobi(a, n, DEFAULT_TOL);
    let radius = r.off_norm + 64.0 * (n.max(1) as f64) * f64::EPSILON * (1.0 + frob);
    (r.values, radius)
}

fn float_enclosure(value: f64, radius: f64) -> Enclosure {
    let lo = BigRational::from_f64(value - radius).expect("finite");
    let hi = BigRational::from_f64(value + radius).expect("finite");
    Enclosure::open(lo, hi)
}

fn check_k(g: &Graph, k: usize) -> Result<()> {
    if k == 0 || k > g.n() {
        Err(Error::KOutOfRange { k, n: g.n() })
    } else {
        Ok(())
    }
}

/// Sum of the `k` largest eigenvalues of `Q(g)`.
pub fn s_k(g: &Graph, k: usize, mode: Mode) -> Result<SumResult> {
    s_k_at(g, k, mode, Precision::default())
}

pub fn s_k_at(g: &Graph, k: usize, mode: Mode, precision: Precision) -> Result<SumResult> {
    check_k(g, k)?;
    let value = match mode {
        Mode::Exact => q_spectrum(g, precision)?.top_sum(k)?,
        Mode::Floating => {
            let (vals, radius) = float_spectrum(&signless_laplacian(g));
            let sum: f64 = vals[..k].iter().sum();
            float_enclosure(sum, radius * k as f64)
        }
    };
    Ok(SumResult { value, k, method: mode })
}

/// `e(g) + 3 - S_2(g)`.
pub fn f_value(g: &Graph, mode: Mode) -> Result<SumResult> {
    f_value_at(g, mode, Precision::default())
}

pub fn f_value_at(g: &Graph, mode: Mode, precision: Precision) -> Result<SumResult> {
    if g.n() < 2 {
        return Err(Error::TooSmall(format!("f needs at least 2 vertices, got {}", g.n())));
    }
    let s2 = s_k_at(g, 2, mode, precision)?;
    let base = Enclosure::from_integer(g.edge_count() as i64 + 3);
    Ok(SumResult {
        value: &base - &s2.value,
        k: 2,
        method: mode,
    })
}

/// Fast floating `f`, returning the estimate and an error radius.
pub fn f_float(g: &Graph) -> (f64, f64) {
    let (vals, radius) = float_spectrum(&signless_laplacian(g));
    let s2 = vals[0] + vals.get(1).copied().unwrap_or(0.0);
    (g.edge_count() as f64 + 3.0 - s2, 2.0 * radius)
}

fn rational(v: i64) -> Enclosure {
    Enclosure::from_integer(v)
}

fn sum_bound_check(spec: &mut Spectrum, k: usize, bound: &Enclosure) -> Result<Verdict> {
    certify(spec.precision(), |p| {
        spec.refine(p);
        Ok(spec.top_sum(k)?.le(bound))
    })
}

/// `S_k(Q(g)) <= e(g) + C(k+1, 2)`.
pub fn check_ashraf(g: &Graph, k: usize) -> Result<Verdict> {
    check_k(g, k)?;
    let bound = rational(g.edge_count() as i64 + binomial(k as u64 + 1, 2) as i64);
    sum_bound_check(&mut q_spectrum(g, Precision::default())?, k, &bound)
}

/// The Laplacian form of [`check_ashraf`].
pub fn check_brouwer(g: &Graph, k: usize) -> Result<Verdict> {
    check_k(g, k)?;
    let bound = rational(g.edge_count() as i64 + binomial(k as u64 + 1, 2) as i64);
    sum_bound_check(&mut l_spectrum(g, Precision::default())?, k, &bound)
}

/// Additive slack accepted by [`fan_check`].
pub fn fan_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000_000))
}

/// `sum_k lambda(A + B) <= sum_k lambda(A) + sum_k lambda(B) + tol`.
pub fn fan_check(a: &RationalMatrix, b: &RationalMatrix, k: usize) -> Result<Verdict> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    if !a.is_symmetric() || !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if k == 0 || k > a.order() {
        return Err(Error::KOutOfRange { k, n: a.order() });
    }
    let p = Precision::default();
    let mut sa = isolate_real_roots(&a.char_poly(), p)?;
    let mut sb = isolate_real_roots(&b.char_poly(), p)?;
    let mut sab = isolate_real_roots(&a.add(b)?.char_poly(), p)?;
    let tol = Enclosure::point(fan_tolerance());
    certify(p, |p| {
        sa.refine(p);
        sb.refine(p);
        sab.refine(p);
        let rhs = &(&sa.top_sum(k)? + &sb.top_sum(k)?) + &tol;
        Ok(sab.top_sum(k)?.le(&rhs))
    })
}

fn ordering_ge(o: Option<Ordering>) -> Verdict {
    match o {
        Some(Ordering::Less) => Verdict::False,
        Some(_) => Verdict::True,
        None => Verdict::Undecided,
    }
}

/// Adding the non-edge `uv` interlaces the spectra:
/// `q_1(g') >= q_1(g) >= q_2(g') >= ... >= q_n(g') >= q_n(g)`.
pub fn interlacing_check(g: &Graph, u: usize, v: usize) -> Result<Verdict> {
    if g.has_edge(u, v) {
        return Err(Error::AlreadyEdge(u, v));
    }
    let h = g.add_edge(u, v)?;
    let p = Precision::default();
    let mut sg = q_spectrum(g, p)?;
    let mut sh = q_spectrum(&h, p)?;
    let n = g.n();
    let mut verdict = Verdict::True;
    for i in 0..n {
        verdict = verdict.and(ordering_ge(compare_roots(&mut sh, i, &mut sg, i)?));
        if i + 1 < n {
            verdict = verdict.and(ordering_ge(compare_roots(&mut sg, i, &mut sh, i + 1)?));
        }
        if verdict == Verdict::False {
            break;
        }
    }
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub premise: Verdict,
    pub conclusion: Verdict,
}

impl Implication {
    /// False only when the premise certifies and the conclusion refutes.
    pub fn holds(self) -> Verdict {
        match (self.premise, self.conclusion) {
            (Verdict::True, c) => c,
            (Verdict::False, _) => Verdict::True,
            (Verdict::Undecided, Verdict::True) => Verdict::True,
            (Verdict::Undecided, _) => Verdict::Undecided,
        }
    }
}

/// Premise `q_k(g) >= d(u) + d(v) + 2`; conclusion
/// `S_k(g + uv) < S_k(g) + 1`.
pub fn edge_insertion_bound_check(g: &Graph, u: usize, v: usize, k: usize) -> Result<Implication> {
    check_k(g, k)?;
    let mut sp = InsertionSpectra::new(g, u, v)?;
    sp.check(k)
}

/// [`edge_insertion_bound_check`] for every `k` from 1 to `n`, sharing the
/// two spectra.
pub fn edge_insertion_bound_checks(g: &Graph, u: usize, v: usize) -> Result<Vec<Implication>> {
    let mut sp = InsertionSpectra::new(g, u, v)?;
    (1..=g.n()).map(|k| sp.check(k)).collect()
}

struct InsertionSpectra {
    before: Spectrum,
    after: Spectrum,
    threshold: Enclosure,
}

impl InsertionSpectra {
    fn new(g: &Graph, u: usize, v: usize) -> Result<InsertionSpectra> {
        if g.has_edge(u, v) {
            return Err(Error::AlreadyEdge(u, v));
        }
        let h = g.add_edge(u, v)?;
        let p = Precision::default();
        Ok(InsertionSpectra {
            before: q_spectrum(g, p)?,
            after: q_spectrum(&h, p)?,
            threshold: rational((g.degree(u) + g.degree(v) + 2) as i64),
        })
    }

    fn check(&mut self, k: usize) -> Result<Implication> {
        let p = self.before.precision().min(self.after.precision());
        let (before, after, threshold) = (&mut self.before, &mut self.after, &self.threshold);
        let premise = certify(p, |p| {
            before.refine(p);
            Ok(before.nth_largest(k - 1).expect("k checked").ge(threshold))
        })?;
        let one = rational(1);
        let mut conclusion_at = |p: Precision| -> Result<Verdict> {
            before.refine(p);
            after.refine(p);
            Ok(after.top_sum(k)?.lt(&(&before.top_sum(k)? + &one)))
        };
        let conclusion = if premise == Verdict::True {
            certify(p, conclusion_at)?
        } else {
            conclusion_at(p)?
        };
        Ok(Implication { premise, conclusion })
    }
}

/// `sum q_i^2 = sum d(v)^2 + 2 e(g)`, read off the two leading
/// coefficients of the characteristic polynomial.
pub fn trace_identity_check(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let p = signless_char_poly(g);
    let e1 = -p.coeff(n - 1);
    let e2 = if n >= 2 { p.coeff(n - 2) } else { BigInt::zero() };
    let power_sum = &e1 * &e1 - BigInt::from(2) * e2;
    let rhs: usize = g.degrees().iter().map(|d| d * d).sum::<usize>() + 2 * g.edge_count();
    power_sum == BigInt::from(rhs)
}

/// With `H` the spanning subgraph on `h_edges`: premise
/// `S_k(H) <= e(H)`; conclusion `S_k(g) < e(g)`.
pub fn subgraph_slack_check(g: &Graph, h_edges: &[(usize, usize)], k: usize) -> Result<Implication> {
    if h_edges.is_empty() || h_edges.iter().any(|&(u, v)| !g.has_edge(u, v)) {
        return Err(Error::NotASubgraph);
    }
    check_k(g, k)?;
    let h = Graph::new(g.n(), h_edges)?;
    let p = Precision::default();
    let premise = {
        let bound = rational(h.edge_count() as i64);
        sum_bound_check(&mut q_spectrum(&h, p)?, k, &bound)?
    };
    let mut sg = q_spectrum(g, p)?;
    let bound = rational(g.edge_count() as i64);
    let conclusion = certify(p, |p| {
        sg.refine(p);
        Ok(sg.top_sum(k)?.lt(&bound))
    })?;
    Ok(Implication { premise, conclusion })
}

/// Upper bound on the sum of the `k` largest Laplacian eigenvalues of a
/// tree on `n` vertices: `(n - 1) + 2k - 1 - (2k - 2) / n`.
pub fn tree_laplacian_sum_bound(n: usize, k: usize) -> BigRational {
    let n = n as i64;
    let k = k as i64;
    BigRational::from_integer((n - 1 + 2 * k - 1).into()) - BigRational::new((2 * k - 2).into(), n.into())
}

/// Lower bound `2 / n` on `f` for trees.
pub fn tree_f_bound(n: usize) -> BigRational {
    BigRational::new(2.into(), (n as i64).into())
}
