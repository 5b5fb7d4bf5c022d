//! The row producers behind each subcommand.

use std::collections::HashSet;
use std::path::PathBuf;

use qspectra_core::canon::CanonicalForm;
use qspectra_core::enumerate::{
    connected_graphs, labeled_classes, sample_membership, search_min_f_with, GraphClass, SearchOptions,
    MAX_LABELED_ORDER,
};
use qspectra_core::families::{
    build, default_grid, g2_sign_evaluations, monotonicity_scan, sn_plus_bounds, verify_instance, Chain, FamilyId,
    Params, Registry, Source,
};
use qspectra_core::hjoin::{verify_factorization, MAX_DIRECT_ORDER};
use qspectra_core::matrix::{laplacian, signless_laplacian, RationalMatrix};
use qspectra_core::sums::{f_value_at, float_spectrum, l_spectrum, q_spectrum};
use qspectra_core::{Enclosure, Error, Graph, HJoinSpec, Mode, Precision, Result};
use serde::Serialize;
use serde_json::json;

use crate::report::{Row, Status};

/// Connected class counts for orders 1 to 10.
pub const KNOWN_CONNECTED: [u64; 10] = [1, 1, 2, 6, 21, 112, 853, 11117, 261080, 11716571];

/// Labeled masks drawn per order when the exhaustive oracle is out of reach.
pub const SAMPLES: usize = 100_000;

/// Largest order for which sampling builds the full class set.
pub const MAX_SAMPLED_ORDER: usize = 9;

pub fn compact(g: &Graph) -> String {
    g.to_edge_list().trim_end().replace('\n', "; ")
}

fn rows_of(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.order())
        .map(|i| (0..m.order()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Matrix {
    Q,
    L,
}

/// Spectrum, `S_k`, `f`, `e` and `n` of one graph.
pub fn spectrum(g: &Graph, mode: Mode, matrix: Matrix, k: usize, precision: Precision) -> Result<Row> {
    if k == 0 || k > g.n() {
        return Err(Error::KOutOfRange { k, n: g.n() });
    }
    let (values, sum): (Vec<Enclosure>, Enclosure) = match mode {
        Mode::Exact => {
            let s = match matrix {
                Matrix::Q => q_spectrum(g, precision)?,
                Matrix::L => l_spectrum(g, precision)?,
            };
            (s.expanded().cloned().collect(), s.top_sum(k)?)
        }
        Mode::Floating => {
            let m = match matrix {
                Matrix::Q => signless_laplacian(g),
                Matrix::L => laplacian(g),
            };
            let (mut vals, radius) = float_spectrum(&m);
            vals.sort_by(|a, b| b.total_cmp(a));
            let around = |v: f64, r: f64| -> Enclosure {
                let lo = num_rational::BigRational::from_float(v - r).expect("finite");
                let hi = num_rational::BigRational::from_float(v + r).expect("finite");
                Enclosure::open(lo, hi)
            };
            let top: f64 = vals[..k].iter().sum();
            (vals.iter().map(|&v| around(v, radius)).collect(), around(top, radius * k as f64))
        }
    };
    let f = (g.n() >= 2).then(|| f_value_at(g, mode, precision)).transpose()?.map(|r| r.value);
    Ok(Row::new(
        Status::Pass,
        json!({
            "graph": compact(g),
            "n": g.n(),
            "e": g.edge_count(),
            "matrix": matrix,
            "mode": mode,
            "spectrum": values,
            "k": k,
            "S_k": sum,
            "f": f,
        }),
    ))
}

#[derive(Clone, Debug, Default)]
pub struct BaseCaseOptions {
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    pub precision: Precision,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Serialize)]
struct Oracle {
    kind: &'static str,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    connected_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distinct_classes_hit: Option<usize>,
}

fn oracle(n: usize, samples: usize, seed: u64) -> Result<Oracle> {
    if n <= MAX_LABELED_ORDER {
        let generated: HashSet<CanonicalForm> = connected_graphs(n)?.iter().map(CanonicalForm::of).collect();
        let labeled = labeled_classes(n, GraphClass::Connected)?;
        return Ok(Oracle {
            kind: "labeled-enumeration",
            ok: labeled == generated,
            connected_samples: None,
            distinct_classes_hit: None,
        });
    }
    if n <= MAX_SAMPLED_ORDER {
        let generated: HashSet<CanonicalForm> = connected_graphs(n)?.iter().map(CanonicalForm::of).collect();
        let check = sample_membership(n, &generated, samples, seed ^ n as u64);
        return Ok(Oracle {
            kind: "labeled-sampling",
            ok: check.ok(),
            connected_samples: Some(check.connected),
            distinct_classes_hit: Some(check.distinct),
        });
    }
    Ok(Oracle {
        kind: "none",
        ok: true,
        connected_samples: None,
        distinct_classes_hit: None,
    })
}

/// Exhaustive minimization of `f` for one order, checked against the known
/// class count, the independent oracle and the expected minimizer.
pub fn base_case_row(n: usize, opts: &BaseCaseOptions) -> Result<Row> {
    let search = search_min_f_with(
        n,
        Mode::Floating,
        &SearchOptions {
            checkpoint: opts.checkpoint.clone(),
            resume: opts.resume,
            precision: opts.precision,
        },
    )?;
    let expected = KNOWN_CONNECTED[n - 1];
    let oracle = oracle(n, opts.samples, opts.seed)?;
    let star_plus = search.is_star_plus();
    let ok = search.classes == expected && oracle.ok && star_plus;
    let status = if !search.unique && search.classes == expected && oracle.ok {
        // Ties the certification could not separate.
        Status::Undecided
    } else {
        Status::from(ok)
    };
    Ok(Row::new(
        status,
        json!({
            "n": n,
            "classes": search.classes,
            "expected_classes": expected,
            "oracle": oracle,
            "min_f": search.min_f,
            "argmin": search.argmin.bitstring(),
            "argmin_graph": compact(&search.argmin.to_graph()),
            "argmin_is_star_plus": star_plus,
            "unique": search.unique,
            "ties": search.ties.iter().map(CanonicalForm::bitstring).collect::<Vec<_>>(),
            "recertified": search.recertified,
        }),
    ))
}

/// Which registry families `appendix` covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySelection {
    All,
    Source(Source),
    List(Vec<FamilyId>),
}

impl std::str::FromStr for FamilySelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySelection> {
        match s.trim().to_ascii_lowercase().as_str() {
            "all" => Ok(FamilySelection::All),
            "table1" => Ok(FamilySelection::Source(Source::Table1)),
            "table2" => Ok(FamilySelection::Source(Source::Table2)),
            "lemma" => Ok(FamilySelection::Source(Source::Lemma)),
            _ => s.split(',').map(str::parse).collect::<Result<_>>().map(FamilySelection::List),
        }
    }
}

/// Parameter points for `appendix`: each family's default grid, or the
/// same explicit points for every family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamGrid {
    Default,
    Points(Vec<Params>),
}

impl std::str::FromStr for ParamGrid {
    type Err = Error;

    /// `default`, or points separated by `;` such as `t=1;t=2`.
    fn from_str(s: &str) -> Result<ParamGrid> {
        if matches!(s.trim(), "default" | "small") {
            return Ok(ParamGrid::Default);
        }
        s.split(';').map(str::parse).collect::<Result<_>>().map(ParamGrid::Points)
    }
}

pub fn appendix(registry: &Registry, selection: &FamilySelection, grid: &ParamGrid) -> Result<Vec<Row>> {
    let ids: Vec<FamilyId> = match selection {
        FamilySelection::All => registry.ids(),
        FamilySelection::Source(src) => registry
            .ids()
            .into_iter()
            .filter(|&id| registry.entry(id).map(|e| e.source == *src).unwrap_or(false))
            .collect(),
        FamilySelection::List(ids) => ids.clone(),
    };
    let mut rows = Vec::new();
    for id in ids {
        let entry = registry.entry(id)?;
        if let Some(reason) = &entry.unreconstructible {
            rows.push(Row::new(
                Status::Skipped,
                json!({ "family": id, "source": entry.source, "reason": reason }),
            ));
            continue;
        }
        let points = match grid {
            ParamGrid::Default => default_grid(registry, id)?,
            ParamGrid::Points(p) => p.clone(),
        };
        for params in points {
            let row = match build(registry, id, &params) {
                Ok(inst) => {
                    let report = verify_instance(&inst);
                    Row::new(report.ok(), json!({ "family": id, "source": entry.source, "report": report }))
                }
                Err(e @ (Error::ParamOutOfRange(_) | Error::InvalidSpec(_) | Error::TooLarge(_))) => Row::new(
                    Status::Skipped,
                    json!({ "family": id, "params": params, "reason": e.to_string() }),
                ),
                Err(e) => return Err(e),
            };
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn star_plus_bounds(from: i64, to: i64) -> Result<Vec<Row>> {
    (from..=to)
        .map(|n| {
            let b = sn_plus_bounds(n)?;
            Ok(Row::new(b.ok(), json!({ "check": "star-plus-bracket", "result": b })))
        })
        .collect()
}

/// One row per identity and `t`; exactness is the verdict.
pub fn g2_identities(from: i64, to: i64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for t in from..=to {
        for id in g2_sign_evaluations(t)?.identities {
            rows.push(Row::new(id.exact, json!({ "check": "g2-identity", "t": t, "identity": id })));
        }
    }
    Ok(rows)
}

pub fn monotonicity(chains: &[Chain], max: i64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for &chain in chains {
        let scan = monotonicity_scan(chain, max)?;
        for step in &scan.steps {
            rows.push(Row::new(step.decreasing, json!({ "check": "chain-step", "chain": chain, "step": step })));
        }
        for ident in &scan.identifications {
            rows.push(Row::new(
                ident.isomorphic,
                json!({ "check": "identification", "chain": chain, "identification": ident }),
            ));
        }
        for end in &scan.endpoints {
            rows.push(Row::new(end.verdict, json!({ "check": "endpoint", "chain": chain, "endpoint": end })));
        }
    }
    Ok(rows)
}

pub fn hjoin(spec: &HJoinSpec) -> Result<Row> {
    let q = spec.quotient_matrix();
    let assembled = spec.char_poly()?;
    let direct = if spec.order() <= MAX_DIRECT_ORDER {
        Some(verify_factorization(spec)?)
    } else {
        None
    };
    let status = match &direct {
        Some(r) => Status::from(r.ok),
        None => Status::Skipped,
    };
    Ok(Row::new(
        status,
        json!({
            "order": spec.order(),
            "part_sizes": q.part_sizes,
            "quotient": rows_of(&q.matrix),
            "quotient_poly": q.matrix.char_poly(),
            "residual_poly": spec.residual_poly()?,
            "char_poly": assembled,
            "direct_ok": direct.map(|r| r.ok),
        }),
    ))
}

#[derive(Serialize)]
pub struct Manifest {
    pub name: &'static str,
    pub version: &'static str,
    pub subcommands: [&'static str; 6],
    pub suites: Vec<&'static str>,
    pub chains: Vec<&'static str>,
    pub registry_version: u32,
    pub families: Vec<serde_json::Value>,
    pub default_precision_bits: u32,
    pub known_connected_counts: [u64; 10],
}

pub fn manifest(registry: &Registry) -> Manifest {
    Manifest {
        name: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        subcommands: ["spectrum", "base-case", "appendix", "bounds", "properties", "hjoin"],
        suites: crate::suites::Suite::EACH.iter().map(|s| s.name()).collect(),
        chains: Chain::ALL.iter().map(|c| c.name()).collect(),
        registry_version: registry.version,
        families: registry
            .families
            .iter()
            .map(|e| {
                json!({
                    "id": e.id,
                    "source": e.source,
                    "params": e.params,
                    "reconstructible": e.unreconstructible.is_none(),
                })
            })
            .collect(),
        default_precision_bits: Precision::default().bits(),
        known_connected_counts: KNOWN_CONNECTED,
    }
}
