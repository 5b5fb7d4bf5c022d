//! Dense square matrices with exact rational entries, their characteristic
//! polynomials, and compound and additive compound matrices.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::IntPolynomial;

/// Largest compound dimension `C(order, k)` accepted.
pub const MAX_COMPOUND_DIM: u64 = 1_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    order: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(order: usize, entries: Vec<BigRational>) -> Result<RationalMatrix> {
        if entries.len() != order * order {
            return Err(Error::InvalidSpec(format!(
                "{} entries do not form a {order}x{order} matrix",
                entries.len()
            )));
        }
        Ok(RationalMatrix { order, entries })
    }

    pub fn zero(order: usize) -> RationalMatrix {
        RationalMatrix {
            order,
            entries: vec![BigRational::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zero(order);
        for i in 0..order {
            m.entries[i * order + i] = BigRational::one();
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<RationalMatrix> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::InvalidSpec("matrix rows must have equal length".into()));
            }
            entries.extend(row.iter().map(|&v| BigRational::from_integer(BigInt::from(v))));
        }
        Ok(RationalMatrix { order, entries })
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>]) -> Result<RationalMatrix> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::InvalidSpec("matrix rows must have equal length".into()));
            }
            entries.extend(row.iter().map(|v| BigRational::from_integer(v.clone())));
        }
        Ok(RationalMatrix { order, entries })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.order + j] = v;
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    pub fn trace(&self) -> BigRational {
        (0..self.order).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        self.check_same_order(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(RationalMatrix { order: self.order, entries })
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        self.check_same_order(other)?;
        let n = self.order;
        let mut out = RationalMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> RationalMatrix {
        RationalMatrix {
            order: self.order,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    fn check_same_order(&self, other: &RationalMatrix) -> Result<()> {
        if self.order != other.order {
            Err(Error::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        RationalMatrix {
            order: rows.len(),
            entries,
        }
    }

    /// Deletes the rows and columns listed in `drop`.
    pub fn without(&self, drop: &[usize]) -> RationalMatrix {
        let keep: Vec<usize> = (0..self.order).filter(|i| !drop.contains(i)).collect();
        self.submatrix(&keep, &keep)
    }

    /// Determinant by Gaussian elimination over the rationals.
    pub fn det(&self) -> BigRational {
        let n = self.order;
        let mut a = self.entries.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return BigRational::zero();
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = &a[r * n + col] / &p;
                for j in col..n {
                    let delta = &f * &a[col * n + j];
                    a[r * n + j] -= delta;
                }
            }
        }
        det
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.entries.iter().fold(BigInt::one(), |l, e| l.lcm(e.denom()))
    }

    /// `det(xI - M)` with denominators cleared: for an integer matrix this
    /// is the monic characteristic polynomial; otherwise it is that
    /// polynomial times `d^order` where `d` is the denominator lcm.
    ///
    /// Computed with the Faddeev-LeVerrier recurrence. Every division in the
    /// recurrence is exact for integer input.
    pub fn char_poly(&self) -> IntPolynomial {
        let d = self.denominator_lcm();
        let ints: Vec<BigInt> = self
            .entries
            .iter()
            .map(|e| (e * BigRational::from_integer(d.clone())).to_integer())
            .collect();
        let monic = faddeev_leverrier(self.order, &ints);
        if d.is_one() {
            return monic;
        }
        // det(xI - A) = d^-n det(dxI - dA), so scale by d^n: coefficient i
        // of det(yI - dA) becomes coefficient i of the result times d^i.
        let mut pow = BigInt::one();
        let mut coeffs = Vec::with_capacity(self.order + 1);
        for c in monic.coeffs() {
            coeffs.push(c * &pow);
            pow *= &d;
        }
        IntPolynomial::new(coeffs)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// The k-th compound matrix: entry `(i, j)` is the minor on the i-th and
    /// j-th k-subsets in lexicographic order.
    pub fn compound(&self, k: usize) -> Result<RationalMatrix> {
        let sets = self.k_subsets(k)?;
        let dim = sets.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for s in &sets {
            for t in &sets {
                entries.push(self.submatrix(s, t).det());
            }
        }
        Ok(RationalMatrix { order: dim, entries })
    }

    /// The k-th additive compound, the derivative at `t = 0` of
    /// `C_k(I + tM)`. Closed form: entry `(S, S)` is the sum of the diagonal
    /// over `S`; if `S = R + s` and `T = R + t` differ in one element the
    /// entry is `(-1)^(pos_S(s) + pos_T(t)) M[s][t]`; otherwise zero.
    pub fn additive_compound(&self, k: usize) -> Result<RationalMatrix> {
        let sets = self.k_subsets(k)?;
        let dim = sets.len();
        let index: HashMap<u64, usize> =
            sets.iter().enumerate().map(|(i, s)| (mask_of(s), i)).collect();
        let mut out = RationalMatrix::zero(dim);
        for (si, s) in sets.iter().enumerate() {
            let smask = mask_of(s);
            out.entries[si * dim + si] = s.iter().map(|&v| self.get(v, v).clone()).sum();
            for (ps, &a) in s.iter().enumerate() {
                for b in 0..self.order {
                    if smask & (1 << b) != 0 {
                        continue;
                    }
                    let m = self.get(a, b);
                    if m.is_zero() {
                        continue;
                    }
                    let tmask = (smask & !(1 << a)) | (1 << b);
                    let pt = (tmask & ((1u64 << b) - 1)).count_ones() as usize;
                    let ti = index[&tmask];
                    let v = if (ps + pt) % 2 == 0 { m.clone() } else { -m.clone() };
                    out.entries[si * dim + ti] = v;
                }
            }
        }
        Ok(out)
    }

    /// The additive compound from its definition. `C_k(I + tM)` is a
    /// polynomial of degree at most `k` in `t`, so the derivative at 0 is
    /// recovered exactly by interpolating at `t = 0, 1, ..., k`.
    pub fn additive_compound_by_derivative(&self, k: usize) -> Result<RationalMatrix> {
        let nodes: Vec<BigRational> = (0..=k as i64).map(|t| BigRational::from_integer(t.into())).collect();
        let mut acc = RationalMatrix::zero(self.k_subsets(k)?.len());
        for (j, t) in nodes.iter().enumerate() {
            let w = lagrange_slope_at_zero(&nodes, j);
            let shifted = RationalMatrix::identity(self.order).add(&self.scale(t))?;
            acc = acc.add(&shifted.compound(k)?.scale(&w))?;
        }
        Ok(acc)
    }

    fn k_subsets(&self, k: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.order;
        if k == 0 || k > n {
            return Err(Error::KOutOfRange { k, n });
        }
        if n > 64 || binomial(n as u64, k as u64) > MAX_COMPOUND_DIM {
            return Err(Error::TooLarge(n));
        }
        Ok(lex_subsets(n, k))
    }

    /// `D^(1/2) Q D^(-1/2)` with `D = diag(part_sizes)`, in floating point.
    /// Requires `q[i][j] * n_i == q[j][i] * n_j` for all `i != j`.
    pub fn symmetrize_quotient(&self, part_sizes: &[u64]) -> Result<Vec<f64>> {
        let n = self.order;
        if part_sizes.len() != n {
            return Err(Error::OrderMismatch(n, part_sizes.len()));
        }
        if part_sizes.iter().any(|&s| s == 0) {
            return Err(Error::NotSymmetrizable);
        }
        for i in 0..n {
            for j in 0..i {
                let lhs = self.get(i, j) * BigRational::from_integer(part_sizes[i].into());
                let rhs = self.get(j, i) * BigRational::from_integer(part_sizes[j].into());
                if lhs != rhs {
                    return Err(Error::NotSymmetrizable);
                }
            }
        }
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let q = self.get(i, j).to_f64().unwrap_or(f64::NAN);
                out[i * n + j] = if i == j {
                    q
                } else {
                    q * (part_sizes[i] as f64 / part_sizes[j] as f64).sqrt()
                };
            }
        }
        // Symmetrize rounding noise away.
        for i in 0..n {
            for j in 0..i {
                let avg = 0.5 * (out[i * n + j] + out[j * n + i]);
                out[i * n + j] = avg;
                out[j * n + i] = avg;
            }
        }
        Ok(out)
    }
}

fn mask_of(s: &[usize]) -> u64 {
    s.iter().fold(0u64, |m, &v| m | (1 << v))
}

/// Derivative at 0 of the j-th Lagrange basis polynomial on `nodes`.
fn lagrange_slope_at_zero(nodes: &[BigRational], j: usize) -> BigRational {
    let mut total = BigRational::zero();
    for l in (0..nodes.len()).filter(|&l| l != j) {
        let mut term = BigRational::one() / (&nodes[j] - &nodes[l]);
        for m in (0..nodes.len()).filter(|&m| m != j && m != l) {
            term *= -&nodes[m] / (&nodes[j] - &nodes[m]);
        }
        total += term;
    }
    total
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    r as u64
}

/// All k-subsets of `0..n`, each sorted, in lexicographic order.
pub fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Faddeev-LeVerrier on an integer matrix, with an `i128` fast path that
/// falls back to big integers on overflow.
fn faddeev_leverrier(n: usize, a: &[BigInt]) -> IntPolynomial {
    if let Some(small) = a.iter().map(|v| v.to_i128()).collect::<Option<Vec<i128>>>() {
        if let Some(coeffs) = faddeev_i128(n, &small) {
            return IntPolynomial::new(coeffs.into_iter().map(BigInt::from).collect());
        }
    }
    faddeev_big(n, a)
}

fn faddeev_i128(n: usize, a: &[i128]) -> Option<Vec<i128>> {
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = vec![0i128; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    let mut am = vec![0i128; n * n];
    for k in 1..=n {
        for i in 0..n {
            for j in 0..n {
                let mut s: i128 = 0;
                for l in 0..n {
                    let x = a[i * n + l];
                    if x != 0 {
                        s = s.checked_add(x.checked_mul(m[l * n + j])?)?;
                    }
                }
                am[i * n + j] = s;
            }
        }
        let mut tr: i128 = 0;
        for i in 0..n {
            tr = tr.checked_add(am[i * n + i])?;
        }
        debug_assert_eq!(tr % k as i128, 0);
        let c = -(tr / k as i128);
        coeffs[n - k] = c;
        std::mem::swap(&mut m, &mut am);
        for i in 0..n {
            m[i * n + i] = m[i * n + i].checked_add(c)?;
        }
    }
    Some(coeffs)
}

fn faddeev_big(n: usize, a: &[BigInt]) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![BigInt::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = BigInt::one();
    }
    for k in 1..=n {
        let mut am = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let x = &a[i * n + l];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    am[i * n + j] += x * &m[l * n + j];
                }
            }
        }
        let tr: BigInt = (0..n).map(|i| am[i * n + i].clone()).sum();
        let (q, r) = tr.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        let c = -q;
        for i in 0..n {
            am[i * n + i] += &c;
        }
        coeffs[n - k] = c;
        m = am;
    }
    IntPolynomial::new(coeffs)
}

/// `Q(G) = D(G) + A(G)` in vertex order.
pub fn signless_laplacian(g: &Graph) -> RationalMatrix {
    graph_matrix(g, 1)
}

/// `L(G) = D(G) - A(G)` in vertex order.
pub fn laplacian(g: &Graph) -> RationalMatrix {
    graph_matrix(g, -1)
}

pub fn adjacency(g: &Graph) -> RationalMatrix {
    let n = g.n();
    let mut m = RationalMatrix::zero(n);
    for (u, v) in g.edges() {
        m.entries[u * n + v] = BigRational::one();
        m.entries[v * n + u] = BigRational::one();
    }
    m
}

fn graph_matrix(g: &Graph, off_diag: i64) -> RationalMatrix {
    let n = g.n();
    let mut m = RationalMatrix::zero(n);
    let off = BigRational::from_integer(off_diag.into());
    for v in 0..n {
        m.entries[v * n + v] = BigRational::from_integer(g.degree(v).into());
    }
    for (u, v) in g.edges() {
        m.entries[u * n + v] = off.clone();
        m.entries[v * n + u] = off.clone();
    }
    m
}

/// Characteristic polynomial of `Q(G)`, using the integer fast path.
pub fn signless_char_poly(g: &Graph) -> IntPolynomial {
    if g.edge_count() == 0 {
        return IntPolynomial::monomial(BigInt::one(), g.n());
    }
    signless_laplacian(g).char_poly()
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix({}x{})", self.order, self.order)?;
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn graph_matrices() {
        let k2 = Graph::named(NamedGraph::Complete, 2).unwrap();
        assert_eq!(signless_laplacian(&k2), m(&[&[1, 1], &[1, 1]]));
        assert_eq!(laplacian(&k2), m(&[&[1, -1], &[-1, 1]]));
        let k3 = Graph::named(NamedGraph::Complete, 3).unwrap();
        assert_eq!(signless_laplacian(&k3), m(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]));
        let s = Graph::named(NamedGraph::Star, 4).unwrap();
        let q = signless_laplacian(&s);
        let row0: Vec<_> = (0..4).map(|j| q.get(0, j).clone()).collect();
        assert_eq!(row0, [3, 1, 1, 1].map(|v| BigRational::from_integer(v.into())));
        let l = laplacian(&Graph::named(NamedGraph::Cycle, 5).unwrap());
        for i in 0..5 {
            let sum: BigRational = (0..5).map(|j| l.get(i, j).clone()).sum();
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn char_poly_examples() {
        let k3 = Graph::named(NamedGraph::Complete, 3).unwrap();
        assert_eq!(signless_laplacian(&k3).char_poly(), poly(&[-4, 9, -6, 1]));
        // x (x-5) (x-1)^3
        let s = Graph::named(NamedGraph::Star, 5).unwrap();
        let expected = &(&poly(&[0, 1]) * &poly(&[-5, 1])) * &poly(&[-1, 1]).pow(3);
        assert_eq!(signless_laplacian(&s).char_poly(), expected);
        assert_eq!(RationalMatrix::zero(3).char_poly(), poly(&[0, 0, 0, 1]));
    }

    #[test]
    fn char_poly_rational_clears_denominators() {
        // diag(1/2, 1/3): (x - 1/2)(x - 1/3) scaled by 6^2 = (6x - 3)(6x - 2)
        let mut a = RationalMatrix::zero(2);
        a.set(0, 0, BigRational::new(1.into(), 2.into()));
        a.set(1, 1, BigRational::new(1.into(), 3.into()));
        assert_eq!(a.char_poly(), poly(&[6, -30, 36]));
    }

    #[test]
    fn big_path_matches_fast_path() {
        let g = Graph::named(NamedGraph::Complete, 7).unwrap();
        let q = signless_laplacian(&g);
        let ints: Vec<BigInt> = q.entries().iter().map(|e| e.to_integer()).collect();
        assert_eq!(faddeev_big(7, &ints), q.char_poly());
    }

    #[test]
    fn large_order_falls_back_to_big_integers() {
        let g = Graph::named(NamedGraph::Complete, 40).unwrap();
        // (x - 78)(x - 38)^39
        let expected = &poly(&[-78, 1]) * &poly(&[-38, 1]).pow(39);
        assert_eq!(signless_laplacian(&g).char_poly(), expected);
    }

    #[test]
    fn det_small() {
        assert_eq!(m(&[&[2, 1], &[7, 4]]).det(), BigRational::one());
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), -BigRational::one());
        assert!(m(&[&[1, 2], &[2, 4]]).det().is_zero());
    }

    #[test]
    fn compound_examples() {
        let a = m(&[&[2, 3], &[5, 7]]);
        assert_eq!(a.compound(2).unwrap(), m(&[&[-1]]));
        assert_eq!(a.compound(1).unwrap(), a);
        assert_eq!(a.compound(3), Err(Error::KOutOfRange { k: 3, n: 2 }));
    }

    #[test]
    fn additive_compound_examples() {
        let d = m(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(d.additive_compound(2).unwrap(), m(&[&[3, 0, 0], &[0, 4, 0], &[0, 0, 5]]));
        for n in [4i64, 11, 20] {
            let q = m(&[&[3, 1, 0], &[2, n - 1, n - 3], &[0, 1, 1]]);
            let expected = m(&[&[n + 2, n - 3, 0], &[1, 4, 1], &[0, 2, n]]);
            assert_eq!(q.additive_compound(2).unwrap(), expected);
        }
    }

    #[test]
    fn lex_order() {
        assert_eq!(lex_subsets(4, 2), vec![
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3]
        ]);
        assert_eq!(binomial(10, 3), 120);
    }

    #[test]
    fn symmetrize() {
        let q = m(&[&[3, 1, 0], &[2, 10, 8], &[0, 1, 1]]);
        let s = q.symmetrize_quotient(&[2, 1, 8]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((s[i * 3 + j] - s[j * 3 + i]).abs() < 1e-15);
            }
        }
        let sym = m(&[&[1, 2], &[2, 5]]);
        assert_eq!(sym.symmetrize_quotient(&[1, 1]).unwrap(), vec![1.0, 2.0, 2.0, 5.0]);
        let bad = m(&[&[0, 1], &[0, 0]]);
        assert_eq!(bad.symmetrize_quotient(&[1, 1]), Err(Error::NotSymmetrizable));
    }
}
