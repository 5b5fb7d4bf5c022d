//! Isomorph-free generation of small connected graphs and trees, and the
//! exhaustive search for the minimizer of `f`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_labeling, same_orbit, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Graph, NamedGraph, PatternId};
use crate::roots::{Enclosure, Precision};
use crate::sums::{f_float, f_value_at, Mode};

/// Largest order accepted by the generators.
pub const MAX_ENUM_ORDER: usize = 10;

/// Graphs whose floating `f` lies within this distance of the minimum are
/// recertified exactly.
pub const RECHECK_WINDOW: f64 = 1e-6;

/// Parents per checkpointed chunk.
const CHUNK: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Connected,
    Trees,
}

/// The children of `parent` accepted by canonical augmentation, in
/// canonical labeling. Each isomorphism class on `n` vertices is produced
/// by exactly one parent class on `n - 1` vertices.
pub fn children_of(parent: &Graph, class: GraphClass) -> Vec<Graph> {
    let m = parent.n();
    let v = m;
    let neighborhoods: Box<dyn Iterator<Item = u64>> = match class {
        GraphClass::Connected => Box::new(1..(1u64 << m)),
        GraphClass::Trees => Box::new((0..m).map(|i| 1u64 << i)),
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for nbrs in neighborhoods {
        let child = parent.with_new_vertex(nbrs).expect("order stays below the limit");
        let lab = canonical_labeling(&child, None);
        let w = crate::graph::Bits(child.non_cut_vertices())
            .max_by_key(|&u| lab.position[u])
            .expect("connected graphs have a non-cut vertex");
        if w != v && !same_orbit(&child, v, w) {
            continue;
        }
        if seen.insert(lab.form.clone()) {
            out.push(lab.form.to_graph());
        }
    }
    out
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ENUM_ORDER {
        return Err(Error::TooLarge(n));
    }
    if n == 0 {
        return Err(Error::TooSmall("graphs need at least one vertex".into()));
    }
    Ok(())
}

fn next_level(parents: &[Graph], class: GraphClass) -> Vec<Graph> {
    parents
        .par_iter()
        .map(|p| children_of(p, class))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn level(n: usize, class: GraphClass) -> Result<Vec<Graph>> {
    check_order(n)?;
    let mut graphs = vec![Graph::empty(1)?];
    for _ in 1..n {
        graphs = next_level(&graphs, class);
    }
    Ok(graphs)
}

/// One canonical representative of every connected graph on `n` vertices.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    level(n, GraphClass::Connected)
}

/// One canonical representative of every tree on `n` vertices.
pub fn trees(n: usize) -> Result<Vec<Graph>> {
    level(n, GraphClass::Trees)
}

/// Calls `visit` on every connected graph on `n` vertices without holding
/// the whole level in memory; parents are processed in parallel and the
/// chunk results are returned in parent order.
pub fn map_connected_chunks<T, F>(n: usize, skip: &HashSet<usize>, visit: F) -> Result<Vec<(usize, T)>>
where
    T: Send,
    F: Fn(usize, &mut dyn Iterator<Item = Graph>) -> T + Sync,
{
    check_order(n)?;
    if n == 1 {
        return Ok(vec![(0, visit(0, &mut std::iter::once(Graph::empty(1)?)))]);
    }
    let parents = level(n - 1, GraphClass::Connected)?;
    let chunks: Vec<(usize, &[Graph])> = parents
        .chunks(CHUNK)
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .collect();
    Ok(chunks
        .into_par_iter()
        .map(|(i, chunk)| {
            let mut it = chunk.iter().flat_map(|p| children_of(p, GraphClass::Connected));
            (i, visit(i, &mut it))
        })
        .collect())
}

/// Outcome of the exhaustive minimization of `f` over connected graphs.
#[derive(Clone, Debug)]
pub struct MinSearch {
    pub n: usize,
    pub classes: u64,
    pub min_f: Enclosure,
    pub argmin: CanonicalForm,
    pub unique: bool,
    pub ties: Vec<CanonicalForm>,
    pub recertified: usize,
}

impl MinSearch {
    /// True when the unique minimizer is the star with one extra edge.
    pub fn is_star_plus(&self) -> bool {
        let sp = Graph::named(NamedGraph::StarPlusEdge, self.n).ok();
        self.unique && sp.map(|g| CanonicalForm::of(&g) == self.argmin).unwrap_or(false)
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
struct ChunkResult {
    classes: u64,
    candidates: Vec<(f64, String)>,
}

impl ChunkResult {
    fn merge(&mut self, other: ChunkResult) {
        self.classes += other.classes;
        self.candidates.extend(other.candidates);
        self.prune();
    }

    fn prune(&mut self) {
        let min = self.candidates.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
        self.candidates.retain(|c| c.0 <= min + RECHECK_WINDOW);
    }
}

#[derive(Serialize, Deserialize)]
struct CheckpointLine {
    n: usize,
    chunk: usize,
    result: ChunkResult,
}

/// Options for [`search_min_f_with`].
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    pub precision: Precision,
}

pub fn search_min_f(n: usize, mode: Mode) -> Result<MinSearch> {
    search_min_f_with(n, mode, &SearchOptions::default())
}

/// Streams every connected graph on `n` vertices, screens `f` in floating
/// point (or exactly in exact mode) and recertifies every graph near the
/// minimum exactly.
pub fn search_min_f_with(n: usize, mode: Mode, opts: &SearchOptions) -> Result<MinSearch> {
    if n < 2 {
        return Err(Error::TooSmall(format!("f needs at least 2 vertices, got {n}")));
    }
    check_order(n)?;
    let mut done: BTreeMap<usize, ChunkResult> = BTreeMap::new();
    if let (Some(path), true) = (&opts.checkpoint, opts.resume) {
        if path.exists() {
            let file = File::open(path).map_err(|e| io_error(path, e))?;
            for (idx, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| io_error(path, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                // A torn final line from an interrupted run is ignored.
                let Ok(rec) = serde_json::from_str::<CheckpointLine>(&line) else {
                    if idx > 0 {
                        continue;
                    }
                    return Err(Error::Parse {
                        line: idx + 1,
                        msg: "not a checkpoint line".into(),
                    });
                };
                if rec.n == n {
                    done.insert(rec.chunk, rec.result);
                }
            }
        }
    }
    let writer = match &opts.checkpoint {
        Some(path) => Some(std::sync::Mutex::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| io_error(path, e))?,
        )),
        None => None,
    };
    let skip: HashSet<usize> = done.keys().copied().collect();
    let precision = opts.precision;
    let fresh = map_connected_chunks(n, &skip, |chunk, graphs| {
        let mut res = ChunkResult::default();
        for g in graphs {
            res.classes += 1;
            let f = match mode {
                Mode::Floating => f_float(&g).0,
                Mode::Exact => f_value_at(&g, Mode::Exact, precision)
                    .expect("n >= 2")
                    .value
                    .to_f64(),
            };
            res.candidates.push((f, CanonicalForm::of(&g).bitstring()));
            if res.candidates.len() > 64 {
                res.prune();
            }
        }
        res.prune();
        if let Some(w) = &writer {
            let line = serde_json::to_string(&CheckpointLine { n, chunk, result: res.clone() })
                .expect("serializable");
            let mut w = w.lock().expect("checkpoint writer");
            let _ = writeln!(w, "{line}");
            let _ = w.flush();
        }
        res
    })?;
    for (i, r) in fresh {
        done.insert(i, r);
    }
    let mut total = ChunkResult::default();
    for (_, r) in done {
        total.merge(r);
    }
    certify_minimum(n, total, precision)
}

fn io_error(path: &std::path::Path, e: std::io::Error) -> Error {
    Error::InvalidSpec(format!("{}: {e}", path.display()))
}

fn graph_from_bits(n: usize, bits: &str) -> Graph {
    let mut edges = Vec::new();
    let mut it = bits.chars();
    for i in 0..n {
        for j in i + 1..n {
            if it.next() == Some('1') {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, &edges).expect("checkpointed bitstring")
}

fn certify_minimum(n: usize, total: ChunkResult, precision: Precision) -> Result<MinSearch> {
    let mut cands: Vec<(CanonicalForm, Enclosure)> = total
        .candidates
        .iter()
        .map(|(_, bits)| {
            let g = graph_from_bits(n, bits);
            let f = f_value_at(&g, Mode::Exact, precision)?.value;
            Ok((CanonicalForm::of(&g), f))
        })
        .collect::<Result<_>>()?;
    cands.sort_by(|a, b| a.1.midpoint().cmp(&b.1.midpoint()).then_with(|| a.0.cmp(&b.0)));
    cands.dedup_by(|a, b| a.0 == b.0);
    let (argmin, min_f) = cands.first().cloned().ok_or(Error::TooSmall("no graphs".into()))?;
    let mut ties = Vec::new();
    for (form, f) in &cands[1..] {
        let strict = certify_less(&min_f, f, n, form, precision)?;
        if !strict {
            ties.push(form.clone());
        }
    }
    Ok(MinSearch {
        n,
        classes: total.classes,
        min_f,
        argmin,
        unique: ties.is_empty(),
        ties,
        recertified: cands.len(),
    })
}

fn certify_less(
    a: &Enclosure,
    b: &Enclosure,
    n: usize,
    b_form: &CanonicalForm,
    start: Precision,
) -> Result<bool> {
    if a.certified_cmp(b) == Some(Ordering::Less) {
        return Ok(true);
    }
    let g = b_form.to_graph();
    let _ = n;
    for p in start.schedule().skip(1) {
        let fb = f_value_at(&g, Mode::Exact, p)?.value;
        if a.certified_cmp(&fb) == Some(Ordering::Less) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Largest order for which [`labeled_classes`] walks every edge mask.
pub const MAX_LABELED_ORDER: usize = 6;

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut rows = vec![0u64; n];
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    Graph::from_rows(rows).expect("symmetric rows")
}

/// Independent oracle: canonical forms of every connected labeled graph on
/// `n` vertices, found by walking all `2^C(n,2)` edge masks.
pub fn labeled_classes(n: usize, class: GraphClass) -> Result<HashSet<CanonicalForm>> {
    if n == 0 {
        return Err(Error::TooSmall("graphs need at least one vertex".into()));
    }
    if n > MAX_LABELED_ORDER {
        return Err(Error::TooLarge(n));
    }
    let pairs = n * (n - 1) / 2;
    Ok((0..1u64 << pairs)
        .map(|mask| graph_from_mask(n, mask))
        .filter(|g| match class {
            GraphClass::Connected => g.is_connected(),
            GraphClass::Trees => g.is_tree(),
        })
        .map(|g| CanonicalForm::of(&g))
        .collect())
}

/// Result of drawing random labeled graphs and looking up their classes.
#[derive(Clone, Debug, Serialize)]
pub struct SampleCheck {
    pub n: usize,
    pub drawn: usize,
    pub connected: usize,
    pub distinct: usize,
    pub missing: usize,
}

impl SampleCheck {
    pub fn ok(&self) -> bool {
        self.missing == 0
    }
}

/// Draws `samples` uniform edge masks on `n` vertices from a seeded stream;
/// every connected one must canonicalize into `generated`.
pub fn sample_membership(n: usize, generated: &HashSet<CanonicalForm>, samples: usize, seed: u64) -> SampleCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = n * (n - 1) / 2;
    let mut seen = HashSet::new();
    let (mut connected, mut missing) = (0, 0);
    for _ in 0..samples {
        let mask = if pairs == 0 { 0 } else { rng.gen::<u64>() >> (64 - pairs) };
        let g = graph_from_mask(n, mask);
        if !g.is_connected() {
            continue;
        }
        connected += 1;
        let form = CanonicalForm::of(&g);
        if !generated.contains(&form) {
            missing += 1;
        }
        seen.insert(form);
    }
    SampleCheck {
        n,
        drawn: samples,
        connected,
        distinct: seen.len(),
        missing,
    }
}

/// Counts of connected graphs by matching number and pattern containment.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CensusRow {
    pub matching: usize,
    pub has_4k2: bool,
    pub has_3k12: bool,
    pub count: u64,
}

pub fn pattern_census(n: usize) -> Result<Vec<CensusRow>> {
    if n > 9 {
        return Err(Error::TooLarge(n));
    }
    let partial = map_connected_chunks(n, &HashSet::new(), |_, graphs| {
        let mut m: BTreeMap<(usize, bool, bool), u64> = BTreeMap::new();
        for g in graphs {
            let key = (
                g.max_matching(),
                g.contains_pattern(PatternId::FourK2),
                g.contains_pattern(PatternId::ThreeK12),
            );
            *m.entry(key).or_default() += 1;
        }
        m
    })?;
    let mut total: BTreeMap<(usize, bool, bool), u64> = BTreeMap::new();
    for (_, m) in partial {
        for (k, c) in m {
            *total.entry(k).or_default() += c;
        }
    }
    Ok(total
        .into_iter()
        .map(|((matching, has_4k2, has_3k12), count)| CensusRow {
            matching,
            has_4k2,
            has_3k12,
            count,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=9).map(|n| trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47]);
    }

    #[test]
    fn order_limits() {
        assert_eq!(connected_graphs(11).unwrap_err(), Error::TooLarge(11));
        assert!(search_min_f(1, Mode::Floating).is_err());
    }

    #[test]
    fn small_minimizers() {
        for n in 4..=6 {
            let r = search_min_f(n, Mode::Floating).unwrap();
            assert!(r.is_star_plus(), "n = {n}: {r:?}");
        }
    }

    #[test]
    fn census_rows_sum_to_class_count() {
        let rows = pattern_census(6).unwrap();
        assert_eq!(rows.iter().map(|r| r.count).sum::<u64>(), 112);
        assert!(rows.iter().all(|r| r.matching <= 3));
    }

    #[test]
    fn labeled_oracle_agrees_with_generation() {
        for n in 1..=5 {
            let generated: HashSet<_> = connected_graphs(n).unwrap().iter().map(CanonicalForm::of).collect();
            assert_eq!(labeled_classes(n, GraphClass::Connected).unwrap(), generated);
        }
        let generated: HashSet<_> = connected_graphs(6).unwrap().iter().map(CanonicalForm::of).collect();
        let check = sample_membership(6, &generated, 2000, 7);
        assert!(check.ok() && check.connected > 0);
    }
}
