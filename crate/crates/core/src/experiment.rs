//! Config-driven experiment runner.
//!
//! A config expands into an ordered list of rows (grid dimensions, then
//! seeds). Rows run in parallel and are collected in row order, so the report
//! does not depend on the worker count. A failing row records its error in
//! the `error` column instead of aborting the run.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{derive_seed, gnp, p4_sparse_construct, perturb_edges, random_bipartite, random_cograph, random_tournament, P4SparseConfig};
use crate::containers::{graph_soundness_sweep, CheckMode};
use crate::error::{Error, Result};
use crate::exact::{binomial, parse_rational, rat_int, rational, rational_pow, rational_to_f64, uint_to_rational, Rational};
use crate::graph::{named, Graph};
use crate::homogeneous::{
    check_tk_property, count_homogeneous_k, find_eps_homogeneous, hom_exact, homogeneous_lower_bound, EpsMode, FamilyOracle, HomKind,
    Strategy, TkReport, Verdict,
};
use crate::params::{compute_params, verify_inequality_chain, GrowthFunction, ParamOptions, Variant};
use crate::report::{Assertion, Cell, Cmp, Report};
use crate::tournament::scan_tournament;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Homogeneous k-set counts against `(1/2)(n/2t)^k` for graphs with few induced copies of a pattern.
    CountLowerBound,
    /// The same bound for perturbed members of a hereditary family.
    CloseFamily,
    /// Exhaustive container soundness over all graphs on `n <= 7` vertices.
    ContainerSweep,
    /// Induced `P4` audit of the sparse multipartite construction.
    P4Sparse,
    /// Largest ε-homogeneous sets found against `ε ln⁻²(1/ε) n`. Report only.
    Tradeoff,
    /// Triangle density against distance to transitivity in random tournaments. Report only.
    TriangleScan,
    /// Parameter tuples and their inequality chains.
    Params,
    /// `hom(G(n, p))` against `2⌈log₂ n⌉ + 2`.
    Hom,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::CountLowerBound => "count-lower-bound",
            ExperimentKind::CloseFamily => "close-family",
            ExperimentKind::ContainerSweep => "container-sweep",
            ExperimentKind::P4Sparse => "p4-sparse",
            ExperimentKind::Tradeoff => "tradeoff",
            ExperimentKind::TriangleScan => "triangle-scan",
            ExperimentKind::Params => "params",
            ExperimentKind::Hom => "hom",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorSpec {
    /// `gnp`, `cograph` or `bipartite`; kind-specific default when absent.
    pub kind: Option<String>,
    /// Edge probability as a rational string (default `1/2`).
    pub p: Option<String>,
    /// Forbidden pattern by name (default `P4`).
    pub pattern: Option<String>,
    /// Family by name (default `p4-free`).
    pub family: Option<String>,
    /// Tournaments per (m, seed) in triangle scans (default 1).
    pub samples: Option<usize>,
    /// Leading constant of the `P4` bound `C ε⁶ n⁴` (default 1000).
    pub constant: Option<String>,
    /// Parameter variant (default `graph`).
    pub variant: Option<Variant>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grid {
    pub eps: Vec<String>,
    pub n: Vec<usize>,
    pub t: Vec<usize>,
    pub k: Vec<usize>,
    pub u: Vec<usize>,
    pub h: Vec<usize>,
    pub m: Vec<usize>,
    pub f: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest `n` for exhaustive searches.
    pub max_n_exact: usize,
    /// Largest number of pattern-sized subsets scanned per row.
    pub max_subsets: u64,
    /// Rows that would start after this many seconds are skipped with a
    /// capability error.
    pub wall_seconds: Option<f64>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_n_exact: 20, max_subsets: 100_000_000, wall_seconds: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    #[serde(default)]
    pub generator: GeneratorSpec,
    #[serde(default)]
    pub grid: Grid,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default)]
    pub out: Option<String>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::input(format!("experiment config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        for e in &self.grid.eps {
            parse_rational(e)?;
        }
        for f in &self.grid.f {
            GrowthFunction::parse(f)?;
        }
        if let Some(p) = &self.generator.p {
            parse_rational(p)?;
        }
        if let Some(c) = &self.generator.constant {
            parse_rational(c)?;
        }
        if let Some(k) = &self.generator.kind {
            if !["gnp", "cograph", "bipartite"].contains(&k.as_str()) {
                return Err(Error::input(format!("unknown generator kind `{k}`")));
            }
        }
        if let Some(name) = &self.generator.pattern {
            named::by_name(name).ok_or_else(|| Error::input(format!("unknown pattern `{name}`")))?;
        }
        if let Some(name) = &self.generator.family {
            FamilyOracle::by_name(name).ok_or_else(|| Error::input(format!("unknown family `{name}`")))?;
        }
        Ok(())
    }
}

/// One row of the expanded grid.
#[derive(Clone, Debug, Default)]
struct RowSpec {
    n: usize,
    eps: Option<Rational>,
    t: usize,
    k: usize,
    h: usize,
    f: String,
    seed: u64,
}

struct Shared {
    p: Rational,
    generator: String,
    pattern: Graph,
    family: FamilyOracle,
    constant: Rational,
    variant: Variant,
    /// `(t, k)` property reports, computed once before the rows run.
    tk: BTreeMap<(usize, usize), Result<TkReport>>,
    caps: Caps,
}

fn kind_columns(kind: ExperimentKind) -> (Vec<&'static str>, Vec<Assertion>) {
    let a = |lhs: &str, cmp: Cmp, rhs: &str, verdict: &str| Assertion { lhs: lhs.into(), cmp, rhs: rhs.into(), verdict: verdict.into() };
    match kind {
        ExperimentKind::CountLowerBound => (
            vec!["n", "t", "k", "seed", "embeddings", "threshold", "copies_premise", "tk_premise", "homogeneous", "lower_bound", "bound_holds"],
            vec![a("embeddings", Cmp::Le, "threshold", "copies_premise"), a("homogeneous", Cmp::Ge, "lower_bound", "bound_holds")],
        ),
        ExperimentKind::CloseFamily => (
            vec!["n", "t", "k", "eps", "seed", "flips", "allowed_flips", "close_premise", "tk_premise", "homogeneous", "lower_bound", "bound_holds"],
            vec![a("flips", Cmp::Le, "allowed_flips", "close_premise"), a("homogeneous", Cmp::Ge, "lower_bound", "bound_holds")],
        ),
        ExperimentKind::ContainerSweep => (
            vec!["n", "eps", "u", "ell", "k", "graphs", "qualifying", "max_count", "bound", "improved_bound", "violations", "improved_violations", "sound"],
            vec![a("max_count", Cmp::Le, "bound", "sound")],
        ),
        ExperimentKind::P4Sparse => (
            vec!["n", "eps", "seed", "parts", "attempts", "audit_passed", "embeddings", "bound", "within_parts", "bound_holds"],
            vec![a("embeddings", Cmp::Le, "bound", "bound_holds")],
        ),
        ExperimentKind::Tradeoff => (vec!["n", "eps", "seed", "generator", "exact_size", "greedy_size", "reference", "greedy_ratio"], vec![]),
        ExperimentKind::TriangleScan => (vec!["m", "seed", "sample", "triangles", "dist", "triangle_density", "dist_fraction", "ratio"], vec![]),
        ExperimentKind::Params => (vec!["eps", "f", "h", "k", "t", "ell", "inv_delta_lo", "inv_delta_hi", "i", "ii", "iii", "iv", "aux"], vec![]),
        ExperimentKind::Hom => (vec!["n", "seed", "hom", "hom_kind", "bound", "within_bound"], vec![a("hom", Cmp::Le, "bound", "within_bound")]),
    }
}

fn parse_eps(grid: &Grid) -> Result<Vec<Rational>> {
    grid.eps.iter().map(|e| parse_rational(e)).collect()
}

fn expand(config: &ExperimentConfig) -> Result<Vec<RowSpec>> {
    let g = &config.grid;
    let eps = parse_eps(g)?;
    let mut rows = Vec::new();
    match config.kind {
        ExperimentKind::CountLowerBound => {
            for &n in &g.n {
                for &t in &g.t {
                    for &k in &g.k {
                        for &seed in &config.seeds {
                            rows.push(RowSpec { n, t, k, seed, ..RowSpec::default() });
                        }
                    }
                }
            }
        }
        ExperimentKind::CloseFamily => {
            for &n in &g.n {
                for &t in &g.t {
                    for &k in &g.k {
                        for e in &eps {
                            for &seed in &config.seeds {
                                rows.push(RowSpec { n, t, k, eps: Some(e.clone()), seed, ..RowSpec::default() });
                            }
                        }
                    }
                }
            }
        }
        // sweeps are expanded per n inside the runner
        ExperimentKind::ContainerSweep => {}
        ExperimentKind::P4Sparse | ExperimentKind::Tradeoff => {
            for &n in &g.n {
                for e in &eps {
                    for &seed in &config.seeds {
                        rows.push(RowSpec { n, eps: Some(e.clone()), seed, ..RowSpec::default() });
                    }
                }
            }
        }
        ExperimentKind::TriangleScan => {
            let samples = config.generator.samples.unwrap_or(1);
            for &m in &g.m {
                for &seed in &config.seeds {
                    for i in 0..samples {
                        rows.push(RowSpec { n: m, seed, k: i, ..RowSpec::default() });
                    }
                }
            }
        }
        ExperimentKind::Params => {
            for e in &eps {
                for f in &g.f {
                    for &h in &g.h {
                        rows.push(RowSpec { eps: Some(e.clone()), f: f.clone(), h, ..RowSpec::default() });
                    }
                }
            }
        }
        ExperimentKind::Hom => {
            for &n in &g.n {
                for &seed in &config.seeds {
                    rows.push(RowSpec { n, seed, ..RowSpec::default() });
                }
            }
        }
    }
    Ok(rows)
}

fn make_graph(shared: &Shared, n: usize, seed: u64) -> Result<Graph> {
    match shared.generator.as_str() {
        "cograph" => random_cograph(n, seed),
        "bipartite" => random_bipartite(n, &shared.p, seed),
        _ => gnp(n, &shared.p, seed),
    }
}

fn big(v: &BigUint) -> Cell {
    Cell::Integer(BigInt::from(v.clone()))
}

fn check_subset_cap(shared: &Shared, n: usize, size: usize) -> Result<()> {
    let subsets = binomial(n as u64, size as u64);
    if subsets > BigUint::from(shared.caps.max_subsets) {
        return Err(Error::capability(format!("C({n},{size}) = {subsets} subsets exceeds max_subsets")));
    }
    Ok(())
}

fn tk_for(shared: &Shared, t: usize, k: usize) -> Result<&TkReport> {
    match shared.tk.get(&(t, k)).expect("precomputed") {
        Ok(r) => Ok(r),
        Err(e) => Err(Error::capability(format!("(t,k) check unavailable: {e}"))),
    }
}

/// Measured cells and verdict text for one row.
fn run_row(kind: ExperimentKind, spec: &RowSpec, shared: &Shared) -> Result<(Vec<Cell>, String)> {
    let verdict = |ok: bool| if ok { "pass" } else { "fail" }.to_string();
    match kind {
        ExperimentKind::CountLowerBound => {
            let tk = tk_for(shared, spec.t, spec.k)?;
            check_subset_cap(shared, spec.n, shared.pattern.n())?;
            let g = make_graph(shared, spec.n, spec.seed)?;
            let rep = crate::homogeneous::verify_count_lower_bound(&g, &shared.pattern, spec.t, spec.k, tk)?;
            let v = match rep.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::PremiseViolated => "premise-violated",
            };
            let cells = vec![
                big(&rep.embeddings),
                rep.threshold.as_ref().map_or(Cell::Missing, big),
                Cell::Bool(rep.copies_premise && rep.threshold.is_some()),
                Cell::Bool(rep.tk_premise),
                big(&rep.homogeneous),
                Cell::Rational(rep.lower_bound.clone()),
                Cell::Bool(rep.bound_holds),
            ];
            Ok((cells, v.to_string()))
        }
        ExperimentKind::CloseFamily => {
            let tk = tk_for(shared, spec.t, spec.k)?;
            let alpha = spec.eps.clone().expect("eps row");
            let n = spec.n;
            if spec.t == 0 || n < 2 * spec.t {
                return Err(Error::param(format!("need n >= 2t, got n = {n}, t = {}", spec.t)));
            }
            let base = make_graph(shared, n, spec.seed)?;
            if !shared.family.contains(&base) {
                return Err(Error::param(format!("generator output is not in family {}", shared.family.description)));
            }
            let half_n2 = rat_int((n * n) as i64) / rat_int(2);
            let flips = (&alpha * &half_n2).floor().to_integer();
            let flips: usize = flips.try_into().map_err(|_| Error::param("flip budget out of range"))?;
            let allowed = (&half_n2 / rat_int(spec.t as i64)).floor().to_integer();
            let (g, _) = perturb_edges(&base, flips, derive_seed(spec.seed, 1))?;
            let homogeneous = count_homogeneous_k(&g, spec.k)?;
            let lower = homogeneous_lower_bound(n, spec.t, spec.k);
            let close = BigInt::from(flips) <= allowed;
            let holds = uint_to_rational(&homogeneous) >= lower;
            let premises = close && tk.holds && tk.exhaustive;
            let v = if !premises { "premise-violated".to_string() } else { verdict(holds) };
            let cells = vec![
                Cell::int(flips as u64),
                Cell::Integer(allowed),
                Cell::Bool(close),
                Cell::Bool(tk.holds && tk.exhaustive),
                big(&homogeneous),
                Cell::Rational(lower),
                Cell::Bool(holds),
            ];
            Ok((cells, v))
        }
        ExperimentKind::P4Sparse => {
            let eps = spec.eps.clone().expect("eps row");
            check_subset_cap(shared, spec.n, 4)?;
            let art = p4_sparse_construct(spec.n, &eps, spec.seed, &P4SparseConfig::default())?;
            let audit = art.audit_p4();
            let bound = &shared.constant * rational_pow(&eps, 6) * rational_pow(&rat_int(spec.n as i64), 4);
            let holds = rat_int(audit.embeddings as i64) <= bound;
            let cells = vec![
                Cell::int(art.s as u64),
                Cell::int(art.attempts as u64),
                Cell::Bool(art.audit.passed),
                Cell::int(audit.embeddings),
                Cell::Rational(bound),
                Cell::Bool(audit.within_parts),
                Cell::Bool(holds),
            ];
            Ok((cells, verdict(holds && audit.within_parts)))
        }
        ExperimentKind::Tradeoff => {
            let eps = spec.eps.clone().expect("eps row");
            let g = make_graph(shared, spec.n, spec.seed)?;
            let exact = if spec.n <= shared.caps.max_n_exact.min(crate::homogeneous::EXACT_SEARCH_MAX_N) {
                Cell::int(find_eps_homogeneous(&g, &eps, EpsMode::Degree, Strategy::Exact)?.set.len() as u64)
            } else {
                Cell::Missing
            };
            let greedy = find_eps_homogeneous(&g, &eps, EpsMode::Degree, Strategy::GreedyPeel)?.set.len();
            let e = rational_to_f64(&eps);
            let reference = e * (1.0 / e).ln().powi(-2) * spec.n as f64;
            let cells = vec![Cell::text(shared.generator.clone()), exact, Cell::int(greedy as u64), Cell::float(reference), Cell::float(greedy as f64 / reference)];
            Ok((cells, "report-only".into()))
        }
        ExperimentKind::TriangleScan => {
            let s = derive_seed(spec.seed, spec.k as u64);
            let row = scan_tournament(&random_tournament(spec.n, s))?;
            let cells = vec![
                Cell::int(row.triangles),
                Cell::int(row.dist as u64),
                Cell::Rational(row.triangle_density),
                Cell::Rational(row.dist_fraction),
                row.ratio.map_or(Cell::Missing, Cell::Rational),
            ];
            Ok((cells, "report-only".into()))
        }
        ExperimentKind::Params => {
            let f = GrowthFunction::parse(&spec.f)?;
            let eps = spec.eps.clone().expect("eps row");
            let p = compute_params(shared.variant, &eps, &f, &ParamOptions::default())?;
            let chain = verify_inequality_chain(&p, spec.h)?;
            let mut cells = vec![
                big(&p.k),
                big(&p.t),
                big(&p.ell),
                Cell::Rational(p.inv_delta.lo.clone()),
                Cell::Rational(p.inv_delta.hi.clone()),
            ];
            cells.extend(chain.checks.iter().map(|c| Cell::Bool(c.pass)));
            cells.push(Cell::Bool(chain.auxiliary.pass));
            Ok((cells, verdict(chain.all_pass())))
        }
        ExperimentKind::Hom => {
            if spec.n > 256 {
                return Err(Error::capability("hom rows are limited to 256 vertices"));
            }
            let g = make_graph(shared, spec.n, spec.seed)?;
            let (h, w) = hom_exact(&g)?;
            let log2 = if spec.n <= 1 { 0 } else { (usize::BITS - (spec.n - 1).leading_zeros()) as i64 };
            let bound = 2 * log2 + 2;
            let kind = match w.kind {
                HomKind::Clique => "clique",
                HomKind::Independent => "independent",
            };
            let ok = (h as i64) <= bound;
            Ok((vec![Cell::int(h as u64), Cell::text(kind), Cell::int(bound), Cell::Bool(ok)], verdict(ok)))
        }
        ExperimentKind::ContainerSweep => unreachable!("sweeps bypass run_row"),
    }
}

fn param_cells(kind: ExperimentKind, spec: &RowSpec) -> Vec<Cell> {
    let eps = || spec.eps.clone().map_or(Cell::Missing, Cell::Rational);
    match kind {
        ExperimentKind::CountLowerBound => vec![Cell::int(spec.n as u64), Cell::int(spec.t as u64), Cell::int(spec.k as u64), Cell::int(spec.seed)],
        ExperimentKind::CloseFamily => {
            vec![Cell::int(spec.n as u64), Cell::int(spec.t as u64), Cell::int(spec.k as u64), eps(), Cell::int(spec.seed)]
        }
        ExperimentKind::P4Sparse | ExperimentKind::Tradeoff => vec![Cell::int(spec.n as u64), eps(), Cell::int(spec.seed)],
        ExperimentKind::TriangleScan => vec![Cell::int(spec.n as u64), Cell::int(spec.seed), Cell::int(spec.k as u64)],
        ExperimentKind::Params => vec![eps(), Cell::text(spec.f.clone()), Cell::int(spec.h as u64)],
        ExperimentKind::Hom => vec![Cell::int(spec.n as u64), Cell::int(spec.seed)],
        ExperimentKind::ContainerSweep => unreachable!(),
    }
}

fn shared_state(config: &ExperimentConfig) -> Result<Shared> {
    let gen = &config.generator;
    let default_gen = match config.kind {
        ExperimentKind::CloseFamily | ExperimentKind::Tradeoff => "cograph",
        _ => "gnp",
    };
    let family = match &gen.family {
        Some(name) => FamilyOracle::by_name(name).ok_or_else(|| Error::input(format!("unknown family `{name}`")))?,
        None => FamilyOracle::p4_free(),
    };
    let pattern_name = gen.pattern.clone().unwrap_or_else(|| "P4".into());
    let pattern = named::by_name(&pattern_name).ok_or_else(|| Error::input(format!("unknown pattern `{pattern_name}`")))?;
    let mut tk = BTreeMap::new();
    if matches!(config.kind, ExperimentKind::CountLowerBound | ExperimentKind::CloseFamily) && !config.seeds.is_empty() && !config.grid.n.is_empty() {
        // the family whose (t,k) property is needed: H-free graphs, or the named family
        let tk_family = match config.kind {
            ExperimentKind::CountLowerBound if pattern_name.eq_ignore_ascii_case("p4") => FamilyOracle::p4_free(),
            ExperimentKind::CountLowerBound => FamilyOracle::h_free(pattern.clone()),
            _ => family.clone(),
        };
        let needs_eps = config.kind == ExperimentKind::CloseFamily;
        if !needs_eps || !config.grid.eps.is_empty() {
            for &t in &config.grid.t {
                for &k in &config.grid.k {
                    tk.insert((t, k), check_tk_property(&tk_family, t, k, CheckMode::Exhaustive));
                }
            }
        }
    }
    Ok(Shared {
        p: gen.p.as_deref().map(parse_rational).transpose()?.unwrap_or_else(|| rational(1, 2)),
        generator: gen.kind.clone().unwrap_or_else(|| default_gen.into()),
        pattern,
        family,
        constant: gen.constant.as_deref().map(parse_rational).transpose()?.unwrap_or_else(|| rat_int(1000)),
        variant: gen.variant.unwrap_or(Variant::Graph),
        tk,
        caps: config.caps.clone(),
    })
}

fn error_text(e: &Error) -> String {
    let class = match e {
        Error::Capability(_) => "capability",
        Error::Parameter(_) | Error::Input(_) | Error::Degenerate(_) => "input",
        _ => "failure",
    };
    format!("{class}: {e}")
}

fn run_sweep(config: &ExperimentConfig, report: &mut Report) -> Result<()> {
    let eps = parse_eps(&config.grid)?;
        let width = report.columns.len();
    let mut instance = 0u64;
    for &n in &config.grid.n {
        let prefix = |instance: u64| vec![Cell::text(config.kind.name()), Cell::int(instance)];
        match graph_soundness_sweep(n, &eps, &config.grid.u, &config.grid.k) {
            Ok(rows) => {
                for r in rows {
                    let mut cells = prefix(instance);
                    cells.extend([
                        Cell::int(r.n as u64),
                        Cell::Rational(r.epsilon.clone()),
                        Cell::int(r.u as u64),
                        Cell::int(r.ell as u64),
                        Cell::int(r.k as u64),
                        Cell::int(r.graphs),
                        Cell::int(r.qualifying),
                        Cell::int(r.max_count),
                        big(&r.bound),
                        big(&r.improved_bound),
                        Cell::int(r.violations),
                        Cell::int(r.improved_violations),
                        Cell::Bool(uint_to_rational(&BigUint::from(r.max_count)) <= uint_to_rational(&r.bound)),
                    ]);
                    let ok = r.violations == 0;
                    cells.push(Cell::text(if ok { "pass" } else { "fail" }));
                    cells.push(Cell::Missing);
                    report.push(cells);
                    instance += 1;
                }
            }
            Err(e) => {
                let mut cells = prefix(instance);
                cells.push(Cell::int(n as u64));
                cells.resize(width - 2, Cell::Missing);
                cells.push(Cell::text("error"));
                cells.push(Cell::text(error_text(&e)));
                report.push(cells);
                instance += 1;
            }
        }
    }
    Ok(())
}

/// Runs every row of `config` and returns the report (not yet written).
pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let kind = config.kind;
    let (measured, assertions) = kind_columns(kind);
    let mut columns = vec!["experiment", "instance"];
    columns.extend(measured.iter().copied());
    columns.extend(["verdict", "error"]);
    let mut report = Report::new(kind.name(), &columns);
    report.assertions = assertions;
    if kind == ExperimentKind::ContainerSweep {
        run_sweep(config, &mut report)?;
        return Ok(report);
    }
    let shared = shared_state(config)?;
    let specs = expand(config)?;
    let start = Instant::now();
    let deadline = config.caps.wall_seconds.map(Duration::from_secs_f64);
    let width = columns.len();
    let rows: Vec<Vec<Cell>> = specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            let mut cells = vec![Cell::text(kind.name()), Cell::int(i as u64)];
            let params = param_cells(kind, spec);
            let n_params = params.len();
            cells.extend(params);
            let outcome = match deadline {
                Some(d) if start.elapsed() > d => Err(Error::capability("wall-clock budget exhausted before this row started")),
                _ => run_row(kind, spec, &shared),
            };
            match outcome {
                Ok((measured, verdict)) => {
                    debug_assert_eq!(2 + n_params + measured.len() + 2, width);
                    cells.extend(measured);
                    cells.push(Cell::Text(verdict));
                    cells.push(Cell::Missing);
                }
                Err(e) => {
                    cells.resize(width - 2, Cell::Missing);
                    cells.push(Cell::text("error"));
                    cells.push(Cell::text(error_text(&e)));
                }
            }
            cells
        })
        .collect();
    for row in rows {
        report.push(row);
    }
    Ok(report)
}
