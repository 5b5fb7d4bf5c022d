//! H-joins of regular graphs, their quotient matrices and the factorized
//! signless Laplacian characteristic polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};
use crate::matrix::{signless_char_poly, RationalMatrix};
use crate::poly::IntPolynomial;

/// Largest joined order accepted by [`verify_factorization`].
pub const MAX_DIRECT_ORDER: usize = 24;

/// One vertex of the host, replaced by an `r`-regular graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    graph: Graph,
    regularity: usize,
}

impl Part {
    pub fn new(graph: Graph, regularity: usize) -> Result<Part> {
        if graph.n() == 0 {
            return Err(Error::InvalidSpec("parts must be nonempty".into()));
        }
        if !graph.is_regular(regularity) {
            return Err(Error::InvalidSpec(format!(
                "part on {} vertices is not {regularity}-regular",
                graph.n()
            )));
        }
        Ok(Part { graph, regularity })
    }

    /// A canonical `r`-regular graph on `n` vertices when one of the simple
    /// constructions applies: empty, complete, perfect matching, cycle, or
    /// the complement of a perfect matching.
    pub fn regular(n: usize, r: usize) -> Result<Part> {
        let none = || Error::InvalidSpec(format!("no standard {r}-regular graph on {n} vertices"));
        if n == 0 {
            return Err(Error::InvalidSpec("parts must be nonempty".into()));
        }
        let graph = if r == 0 {
            Graph::empty(n)?
        } else if r + 1 == n {
            complete(n)?
        } else if r == 1 && n % 2 == 0 {
            matching(n)?
        } else if r == 2 && n >= 3 {
            cycle(n)?
        } else if r + 2 == n && n % 2 == 0 {
            matching(n)?.complement()
        } else {
            return Err(none());
        };
        Part::new(graph, r)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn regularity(&self) -> usize {
        self.regularity
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }
}

fn complete(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(n, &edges)
}

fn matching(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
    Graph::new(n, &edges)
}

fn cycle(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

/// A validated H-join description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HJoinSpec {
    host: Graph,
    parts: Vec<Part>,
}

/// The quotient matrix of the partition into parts, with the part sizes
/// that symmetrize it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub matrix: RationalMatrix,
    pub part_sizes: Vec<u64>,
}

impl HJoinSpec {
    pub fn new(host: Graph, parts: Vec<Part>) -> Result<HJoinSpec> {
        if host.n() != parts.len() {
            return Err(Error::InvalidSpec(format!(
                "host has {} vertices but {} parts were given",
                host.n(),
                parts.len()
            )));
        }
        if parts.is_empty() {
            return Err(Error::InvalidSpec("at least one part is required".into()));
        }
        let total: usize = parts.iter().map(Part::order).sum();
        if total > MAX_ORDER {
            return Err(Error::TooLarge(total));
        }
        Ok(HJoinSpec { host, parts })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn order(&self) -> usize {
        self.parts.iter().map(Part::order).sum()
    }

    /// Part sizes summed over the host neighborhood of each part.
    pub fn neighborhood_sizes(&self) -> Vec<usize> {
        (0..self.parts.len())
            .map(|i| self.host.neighbors(i).map(|j| self.parts[j].order()).sum())
            .collect()
    }

    fn offsets(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, p| {
                let start = *acc;
                *acc += p.order();
                Some(start)
            })
            .collect()
    }

    /// The joined graph, with each part occupying a consecutive block of
    /// vertices in part order.
    pub fn materialize(&self) -> Result<Graph> {
        let offsets = self.offsets();
        let mut edges = Vec::new();
        for (p, &off) in self.parts.iter().zip(&offsets) {
            edges.extend(p.graph.edges().into_iter().map(|(u, v)| (u + off, v + off)));
        }
        for (i, j) in self.host.edges() {
            for u in 0..self.parts[i].order() {
                for v in 0..self.parts[j].order() {
                    edges.push((offsets[i] + u, offsets[j] + v));
                }
            }
        }
        Graph::new(self.order(), &edges)
    }

    pub fn quotient_matrix(&self) -> QuotientMatrix {
        let k = self.parts.len();
        let nbr = self.neighborhood_sizes();
        let mut m = RationalMatrix::zero(k);
        for i in 0..k {
            let d = 2 * self.parts[i].regularity + nbr[i];
            m.set(i, i, int(d as i64));
            for j in self.host.neighbors(i) {
                m.set(i, j, int(self.parts[j].order() as i64));
            }
        }
        QuotientMatrix {
            matrix: m,
            part_sizes: self.parts.iter().map(|p| p.order() as u64).collect(),
        }
    }

    /// The product of the shifted part polynomials with each linear factor
    /// `x - 2r_i - N_i` divided out exactly: the joined polynomial divided
    /// by the quotient polynomial.
    pub fn residual_poly(&self) -> Result<IntPolynomial> {
        let nbr = self.neighborhood_sizes();
        let mut acc = IntPolynomial::one();
        for (p, &ni) in self.parts.iter().zip(&nbr) {
            let shifted = signless_char_poly(&p.graph).shift(&BigInt::from(ni));
            acc = &acc * &shifted;
        }
        for (p, &ni) in self.parts.iter().zip(&nbr) {
            let root = BigInt::from(2 * p.regularity + ni);
            acc = acc.div_exact(&IntPolynomial::x_minus(&root))?;
        }
        Ok(acc)
    }

    /// The characteristic polynomial of the joined graph assembled from the
    /// parts: the residual times the quotient polynomial.
    pub fn char_poly(&self) -> Result<IntPolynomial> {
        let q = self.quotient_matrix().matrix.char_poly();
        let out = &self.residual_poly()? * &q;
        assert!(out.is_monic(), "assembled polynomial must be monic");
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&HJoinSpecJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<HJoinSpec> {
        let raw: HJoinSpecJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        raw.try_into()
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Outcome of comparing the assembled and directly computed polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub ok: bool,
    pub lhs: IntPolynomial,
    pub rhs: IntPolynomial,
}

/// Compares the assembled polynomial with the characteristic polynomial
/// of the materialized graph.
pub fn verify_factorization(spec: &HJoinSpec) -> Result<FactorizationReport> {
    if spec.order() > MAX_DIRECT_ORDER {
        return Err(Error::TooLarge(spec.order()));
    }
    let lhs = signless_char_poly(&spec.materialize()?);
    let rhs = spec.char_poly()?;
    Ok(FactorizationReport {
        ok: lhs == rhs,
        lhs,
        rhs,
    })
}

#[derive(Serialize, Deserialize)]
struct PartJson {
    n: usize,
    r: usize,
    /// Omitted: the standard `r`-regular graph from [`Part::regular`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<(usize, usize)>>,
}

#[derive(Serialize, Deserialize)]
struct HJoinSpecJson {
    host: Vec<(usize, usize)>,
    parts: Vec<PartJson>,
}

impl From<&HJoinSpec> for HJoinSpecJson {
    fn from(s: &HJoinSpec) -> Self {
        HJoinSpecJson {
            host: s.host.edges(),
            parts: s
                .parts
                .iter()
                .map(|p| PartJson {
                    n: p.order(),
                    r: p.regularity,
                    edges: Some(p.graph.edges()),
                })
                .collect(),
        }
    }
}

impl TryFrom<HJoinSpecJson> for HJoinSpec {
    type Error = Error;
    fn try_from(raw: HJoinSpecJson) -> Result<HJoinSpec> {
        let host = Graph::new(raw.parts.len(), &raw.host)?;
        let parts = raw
            .parts
            .into_iter()
            .map(|p| match p.edges {
                Some(edges) => Part::new(Graph::new(p.n, &edges)?, p.r),
                None => Part::regular(p.n, p.r),
            })
            .collect::<Result<Vec<_>>>()?;
        HJoinSpec::new(host, parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    fn star_plus_spec(n: usize) -> HJoinSpec {
        let host = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let parts = vec![
            Part::regular(2, 1).unwrap(),
            Part::regular(1, 0).unwrap(),
            Part::regular(n - 3, 0).unwrap(),
        ];
        HJoinSpec::new(host, parts).unwrap()
    }

    #[test]
    fn materialize_examples() {
        let k2 = HJoinSpec::new(
            Graph::new(2, &[(0, 1)]).unwrap(),
            vec![Part::regular(1, 0).unwrap(), Part::regular(1, 0).unwrap()],
        )
        .unwrap();
        assert_eq!(k2.materialize().unwrap(), Graph::named(NamedGraph::Complete, 2).unwrap());

        let g = star_plus_spec(7).materialize().unwrap();
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.degrees(), vec![2, 2, 6, 1, 1, 1, 1]);

        let kab = HJoinSpec::new(
            Graph::new(2, &[(0, 1)]).unwrap(),
            vec![Part::regular(3, 0).unwrap(), Part::regular(4, 0).unwrap()],
        )
        .unwrap();
        let g = kab.materialize().unwrap();
        assert_eq!(g.edge_count(), 12);
        assert!(g.is_bipartite());
    }

    #[test]
    fn quotient_examples() {
        let n = 11i64;
        let q = star_plus_spec(n as usize).quotient_matrix();
        let expected = RationalMatrix::from_i64_rows(&[
            vec![3, 1, 0],
            vec![2, n - 1, n - 3],
            vec![0, 1, 1],
        ])
        .unwrap();
        assert_eq!(q.matrix, expected);
        assert_eq!(q.part_sizes, vec![2, 1, 8]);

        let kn = HJoinSpec::new(Graph::empty(1).unwrap(), vec![Part::regular(5, 4).unwrap()]).unwrap();
        assert_eq!(kn.quotient_matrix().matrix, RationalMatrix::from_i64_rows(&[vec![8]]).unwrap());
    }

    #[test]
    fn star_plus_factorization() {
        let spec = star_plus_spec(11);
        let p = spec.char_poly().unwrap();
        let quot = spec.quotient_matrix().matrix.char_poly();
        let expected = &quot * &IntPolynomial::from_i64(&[-1, 1]).pow(8);
        assert_eq!(p, expected);
        assert!(verify_factorization(&spec).unwrap().ok);
    }

    #[test]
    fn complete_bipartite_factorizations() {
        for a in 1..=5 {
            for b in 1..=5 {
                let spec = HJoinSpec::new(
                    Graph::new(2, &[(0, 1)]).unwrap(),
                    vec![Part::regular(a, 0).unwrap(), Part::regular(b, 0).unwrap()],
                )
                .unwrap();
                assert!(verify_factorization(&spec).unwrap().ok, "K_{a},{b}");
            }
        }
    }

    #[test]
    fn validation() {
        let path = Graph::named(NamedGraph::Path, 3).unwrap();
        assert!(matches!(Part::new(path, 1), Err(Error::InvalidSpec(_))));
        assert!(Part::regular(5, 1).is_err());
        assert_eq!(Part::regular(6, 4).unwrap().graph().edge_count(), 12);
        let host = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(HJoinSpec::new(host.clone(), vec![Part::regular(1, 0).unwrap()]).is_err());
        let big = vec![Part::regular(40, 0).unwrap(), Part::regular(30, 0).unwrap()];
        assert_eq!(HJoinSpec::new(host, big), Err(Error::TooLarge(70)));
    }

    #[test]
    fn json_round_trip() {
        let spec = star_plus_spec(6);
        let text = spec.to_json();
        assert_eq!(HJoinSpec::from_json(&text).unwrap(), spec);
        let bad = r#"{"host": [[0,1]], "parts": [{"n": 3, "r": 1, "edges": [[0,1]]}, {"n": 1, "r": 0}]}"#;
        assert!(matches!(HJoinSpec::from_json(bad), Err(Error::InvalidSpec(_))));
        assert!(matches!(HJoinSpec::from_json("{"), Err(Error::Parse { .. })));
    }
}
