//! Canonical labeling by individualization and equitable refinement.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// The relabeled graph with the lexicographically smallest upper triangle
/// among the leaves of the refinement search. Row `i` holds the columns
/// `j > i`, with column `i + 1` in the most significant position, so that
/// comparing rows as integers compares the bitstring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    n: usize,
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn of(g: &Graph) -> CanonicalForm {
        canonical_labeling(g, None).form
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The upper triangle read row by row as a `0`/`1` string.
    pub fn bitstring(&self) -> String {
        let mut s = String::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for (i, &row) in self.rows.iter().enumerate() {
            for j in i + 1..self.n {
                s.push(if row >> (self.n - 1 - j) & 1 == 1 { '1' } else { '0' });
            }
        }
        s
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for (i, &row) in self.rows.iter().enumerate() {
            for j in i + 1..self.n {
                if row >> (self.n - 1 - j) & 1 == 1 {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(self.n, &edges).expect("canonical rows describe a valid graph")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({}: {})", self.n, self.bitstring())
    }
}

/// A canonical form together with the position each vertex takes in it.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub form: CanonicalForm,
    pub position: Vec<usize>,
}

/// Canonical labeling respecting an optional vertex coloring; vertices
/// with smaller colors come first.
pub fn canonical_labeling(g: &Graph, colors: Option<&[usize]>) -> Labeling {
    let n = g.n();
    let cells = initial_cells(n, colors);
    let mut search = Search {
        g,
        best: None,
        orbits: (0..n).collect(),
    };
    search.run(cells, true);
    let (rows, order) = search.best.unwrap_or_default();
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    Labeling {
        form: CanonicalForm { n, rows },
        position,
    }
}

/// Canonical form with vertex `v` distinguished from all others.
pub fn canonical_with_vertex(g: &Graph, v: usize) -> CanonicalForm {
    let colors: Vec<usize> = (0..g.n()).map(|u| usize::from(u != v)).collect();
    canonical_labeling(g, Some(&colors)).form
}

/// True when some automorphism of `g` maps `v` to `w`.
pub fn same_orbit(g: &Graph, v: usize, w: usize) -> bool {
    if v == w {
        return true;
    }
    if g.degree(v) != g.degree(w) {
        return false;
    }
    let mut cells = initial_cells(g.n(), None);
    refine(g, &mut cells);
    let cell_of = |x: usize| cells.iter().position(|c| c.contains(&x));
    if cell_of(v) != cell_of(w) {
        return false;
    }
    canonical_with_vertex(g, v) == canonical_with_vertex(g, w)
}

fn initial_cells(n: usize, colors: Option<&[usize]>) -> Vec<Vec<usize>> {
    match colors {
        None if n == 0 => Vec::new(),
        None => vec![(0..n).collect()],
        Some(c) => {
            let mut keyed: Vec<(usize, usize)> = (0..n).map(|v| (c[v], v)).collect();
            keyed.sort_unstable();
            let mut cells: Vec<Vec<usize>> = Vec::new();
            let mut last = None;
            for (col, v) in keyed {
                if last != Some(col) {
                    cells.push(Vec::new());
                    last = Some(col);
                }
                cells.last_mut().expect("pushed").push(v);
            }
            cells
        }
    }
}

fn mask_of(cell: &[usize]) -> u64 {
    cell.iter().fold(0, |m, &v| m | (1u64 << v))
}

/// Splits cells by neighbor counts into each cell until the partition is
/// equitable. New cells are ordered by ascending count.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    let mut s = 0;
    while s < cells.len() {
        let splitter = mask_of(&cells[s]);
        let mut next = Vec::with_capacity(cells.len());
        let mut split = false;
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(u32, usize)> = cell
                .iter()
                .map(|&v| ((g.row(v) & splitter).count_ones(), v))
                .collect();
            keyed.sort_unstable();
            let start = next.len();
            let mut last = None;
            for (k, v) in keyed {
                if last != Some(k) {
                    next.push(Vec::new());
                    last = Some(k);
                }
                next.last_mut().expect("pushed").push(v);
            }
            split |= next.len() - start > 1;
        }
        *cells = next;
        // A split can make earlier cells unequitable again.
        s = if split { 0 } else { s + 1 };
    }
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let strip = !((1u64 << u) | (1u64 << v));
    g.row(u) & strip == g.row(v) & strip
}

type Leaf = (Vec<u64>, Vec<usize>);

struct Search<'a> {
    g: &'a Graph,
    best: Option<Leaf>,
    orbits: Vec<usize>,
}

impl Search<'_> {
    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.orbits[r] != r {
            r = self.orbits[r];
        }
        self.orbits[v] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.orbits[ra.max(rb)] = ra.min(rb);
        }
    }

    fn run(&mut self, mut cells: Vec<Vec<usize>>, root: bool) {
        refine(self.g, &mut cells);
        let Some(target) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
        else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            self.leaf(order);
            return;
        };
        let cell = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| twins(self.g, u, v)) {
                continue;
            }
            if root && tried.iter().any(|&u| self.find(u) == self.find(v)) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cell.iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            self.run(child, false);
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let n = order.len();
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let rows: Vec<u64> = order
            .iter()
            .enumerate()
            .map(|(i, &u)| {
                self.g
                    .neighbors(u)
                    .map(|w| position[w])
                    .filter(|&j| j > i)
                    .fold(0u64, |r, j| r | (1u64 << (n - 1 - j)))
            })
            .collect();
        let ord = match &self.best {
            None => Ordering::Less,
            Some((best_rows, _)) => rows.cmp(best_rows),
        };
        match ord {
            Ordering::Less => self.best = Some((rows, order)),
            Ordering::Equal => {
                // Two leaves with one form: best[i] -> order[i] is an automorphism.
                let best_order = self.best.as_ref().expect("set").1.clone();
                for (a, b) in best_order.into_iter().zip(order) {
                    self.union(a, b);
                }
            }
            Ordering::Greater => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    #[test]
    fn relabelings_agree() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let h = g.relabel(&[5, 3, 1, 0, 2, 4]);
        assert_eq!(CanonicalForm::of(&g), CanonicalForm::of(&h));
        let c = CanonicalForm::of(&g).to_graph();
        assert_eq!(CanonicalForm::of(&c), CanonicalForm::of(&g));
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let p4 = Graph::named(NamedGraph::Path, 4).unwrap();
        let s4 = Graph::named(NamedGraph::Star, 4).unwrap();
        assert_ne!(CanonicalForm::of(&p4), CanonicalForm::of(&s4));
    }

    #[test]
    fn symmetric_graphs() {
        for n in 1..12 {
            let k = Graph::named(NamedGraph::Complete, n).unwrap();
            assert_eq!(CanonicalForm::of(&k).bitstring(), "1".repeat(n * (n - 1) / 2));
            if n >= 3 {
                let c = Graph::named(NamedGraph::Cycle, n).unwrap();
                let shuffled = c.relabel(&(0..n).map(|i| (i * 5 + 1) % n).collect::<Vec<_>>());
                if (0..n).map(|i| (i * 5 + 1) % n).collect::<std::collections::HashSet<_>>().len() == n {
                    assert_eq!(CanonicalForm::of(&c), CanonicalForm::of(&shuffled));
                }
            }
        }
    }

    #[test]
    fn orbits() {
        let p5 = Graph::named(NamedGraph::Path, 5).unwrap();
        assert!(same_orbit(&p5, 0, 4));
        assert!(same_orbit(&p5, 1, 3));
        assert!(!same_orbit(&p5, 0, 1));
        assert!(!same_orbit(&p5, 1, 2));
        let c6 = Graph::named(NamedGraph::Cycle, 6).unwrap();
        assert!(same_orbit(&c6, 0, 3));
    }

    #[test]
    fn positions_relabel_to_form() {
        let g = Graph::new(5, &[(0, 1), (0, 2), (2, 3), (3, 4), (1, 4), (0, 4)]).unwrap();
        let l = canonical_labeling(&g, None);
        assert_eq!(g.relabel(&l.position), l.form.to_graph());
    }
}
