use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ehlab::construct::{
    gnp, p4_sparse_construct, random_bipartite, random_cograph, random_tournament, random_uniform_hypergraph,
    P4SparseConfig,
};
use ehlab::containers::{
    count_independent_sets_exact, graph_soundness_sweep, hypergraph_bound, kw_bound, kw_fingerprint,
    reconstruct_kw_segments, reconstruct_scythe_segments, scythe_fingerprint, verify_degree_precondition, CheckMode,
    ContainerParams, DegreeVariant, FingerprintTrace,
};
use ehlab::exact::{parse_rational, Rational};
use ehlab::experiment::{run_experiment, ExperimentConfig};
use ehlab::format::{parse_graph, parse_hypergraph, parse_tournament, read_file, write_file, write_graph, write_hypergraph, write_tournament};
use ehlab::homogeneous::{
    count_cliques, find_eps_homogeneous, hom_exact, turan_clique, turan_guarantee, EpsMode, HomKind, Strategy,
};
use ehlab::params::{compute_params, verify_inequality_chain, GrowthFunction, KFormula, ParamOptions, Variant};
use ehlab::report::{Assertion, Cell, Cmp, Report, ReportFormat};
use ehlab::tournament::{cyclic_triangle_count, dist_to_transitive_exact, is_eps_transitive};
use ehlab::{Error, Result, VertexSet};
use num_bigint::BigUint;

#[derive(Parser)]
#[command(name = "ehlab", version, about = "Exact experiments on homogeneous sets, containers and tournaments")]
struct Cli {
    /// Seed for random generators.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output path (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph, hypergraph or tournament in the text format.
    Construct(ConstructArgs),
    /// Largest homogeneous set, homogeneous k-set counts, ε-homogeneous search.
    Hom(HomArgs),
    /// Container bounds and fingerprints.
    Containers {
        #[command(subcommand)]
        command: ContainersCommand,
    },
    /// Tournament tools.
    Tournament {
        #[command(subcommand)]
        command: TournamentCommand,
    },
    /// Parameters k, δ, t, ℓ and the inequality chain.
    Params(ParamsArgs),
    /// Experiment runner.
    Experiment {
        #[command(subcommand)]
        command: ExperimentCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Gnp,
    Cograph,
    Bipartite,
    Tournament,
    Hypergraph,
    P4Sparse,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    /// ε for the P4-sparse construction.
    #[arg(long)]
    eps: Option<String>,
    /// Edge probability (gnp, bipartite, hypergraph).
    #[arg(long, default_value = "1/2")]
    p: String,
    /// Uniformity of a random hypergraph.
    #[arg(long, default_value_t = 3)]
    r: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Density,
    Degree,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Exact,
    GreedyPeel,
}

#[derive(Args)]
struct HomArgs {
    /// Graph file ("-" or absent: stdin).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Count homogeneous k-sets instead.
    #[arg(long)]
    count: Option<usize>,
    /// Search for a largest ε-homogeneous set instead.
    #[arg(long)]
    eps: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Density)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = StrategyArg::Exact)]
    strategy: StrategyArg,
    /// Greedy clique with its Turán-type guarantee instead.
    #[arg(long)]
    turan: bool,
}

#[derive(Subcommand)]
enum ContainersCommand {
    /// Check exact independent-set counts against the container bound, or
    /// round-trip the fingerprint of one independent set.
    Verify(ContainersArgs),
}

#[derive(Args)]
struct ContainersArgs {
    /// Graph (or hypergraph with --hypergraph) file.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    hypergraph: bool,
    /// ε values; a single one unless --sweep is given.
    #[arg(long, value_delimiter = ',', default_value = "1/2")]
    eps: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    u: Vec<usize>,
    /// Segment budget (default: the least ℓ with (1-ε)^ℓ n <= u).
    #[arg(long)]
    ell: Option<usize>,
    /// Set sizes to check (default: all).
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    /// Comma-separated independent set whose fingerprint is round-tripped.
    #[arg(long, value_delimiter = ',')]
    set: Option<Vec<usize>>,
    /// Sweep every labeled graph on this many vertices instead of one input.
    #[arg(long)]
    sweep: Option<usize>,
}

#[derive(Subcommand)]
enum TournamentCommand {
    /// Exact distance to transitivity.
    Dist {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Also decide ε-transitivity.
        #[arg(long)]
        eps: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Graph,
    Hypergraph,
    Tournament,
}

#[derive(Clone, Copy, ValueEnum)]
enum KFormulaArg {
    Log4,
    Log2Refined,
}

#[derive(Args)]
struct ParamsArgs {
    #[arg(long, value_enum, default_value_t = VariantArg::Graph)]
    variant: VariantArg,
    #[arg(long, value_delimiter = ',')]
    eps: Vec<String>,
    /// Growth function: const:V, log:COEF or table:K=V,...
    #[arg(long, default_value = "const:2")]
    f: String,
    /// Pattern sizes for the inequality chain.
    #[arg(long, value_delimiter = ',', default_value = "5")]
    h: Vec<usize>,
    #[arg(long, value_enum, default_value_t = KFormulaArg::Log4)]
    k_formula: KFormulaArg,
    /// Constant C (hypergraph and tournament variants).
    #[arg(long)]
    c: Option<String>,
    /// Constant C' (hypergraph and tournament variants).
    #[arg(long)]
    c_prime: Option<String>,
    /// Accept ε outside (0, 1/100).
    #[arg(long)]
    allow_any_eps: bool,
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Run a JSON experiment config.
    Run {
        config: PathBuf,
    },
}

/// A finished command: text to emit, and whether every verdict passed.
struct Output {
    text: String,
    ok: bool,
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => read_file(p),
        _ => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text).map_err(|e| Error::input(format!("stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn render(report: &Report, format: Format) -> Result<String> {
    report.render(match format {
        Format::Csv => ReportFormat::Csv,
        Format::Json => ReportFormat::Json,
    })
}

fn vertices(set: &VertexSet) -> Cell {
    Cell::text(set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
}

fn big(v: &BigUint) -> Cell {
    Cell::int(num_bigint::BigInt::from(v.clone()))
}

fn construct(args: &ConstructArgs, seed: u64) -> Result<Output> {
    let p = parse_rational(&args.p)?;
    let text = match args.kind {
        Kind::Gnp => write_graph(&gnp(args.n, &p, seed)?),
        Kind::Cograph => write_graph(&random_cograph(args.n, seed)?),
        Kind::Bipartite => write_graph(&random_bipartite(args.n, &p, seed)?),
        Kind::Tournament => write_tournament(&random_tournament(args.n, seed)),
        Kind::Hypergraph => write_hypergraph(&random_uniform_hypergraph(args.n, args.r, &p, seed)?),
        Kind::P4Sparse => {
            let eps = args.eps.as_deref().ok_or_else(|| Error::input("--eps is required for p4-sparse"))?;
            let art = p4_sparse_construct(args.n, &parse_rational(eps)?, seed, &P4SparseConfig::default())?;
            let sizes: Vec<String> = art.parts.iter().map(|p| p.len().to_string()).collect();
            format!("# parts {}\n# attempts {}\n{}", sizes.join(" "), art.attempts, write_graph(&art.graph))
        }
    };
    Ok(Output { text, ok: true })
}

fn hom(args: &HomArgs, format: Format) -> Result<Output> {
    let g = parse_graph(&read_input(args.input.as_deref())?)?;
    let n = Cell::int(g.n() as u64);
    let report = if let Some(k) = args.count {
        if k < 2 {
            return Err(Error::param("homogeneous k-set counts need k >= 2"));
        }
        let cliques = count_cliques(&g, k);
        let independent = count_cliques(&g.complement(), k);
        let total = &cliques + &independent;
        let mut r = Report::new("hom-count", &["n", "k", "cliques", "independent", "total"]);
        r.push(vec![n, Cell::int(k as u64), big(&cliques), big(&independent), big(&total)]);
        r
    } else if let Some(eps) = &args.eps {
        let eps = parse_rational(eps)?;
        let mode = match args.mode {
            ModeArg::Density => EpsMode::Density,
            ModeArg::Degree => EpsMode::Degree,
        };
        let strategy = match args.strategy {
            StrategyArg::Exact => Strategy::Exact,
            StrategyArg::GreedyPeel => Strategy::GreedyPeel,
        };
        let w = find_eps_homogeneous(&g, &eps, mode, strategy)?;
        let side = serde_json::to_value(w.side).expect("enum serializes");
        let mut r = Report::new("eps-hom", &["n", "eps", "mode", "strategy", "size", "side", "vertices", "validated"]);
        r.push(vec![
            n,
            Cell::Rational(eps),
            Cell::text(args.mode.to_possible_value().expect("value").get_name()),
            Cell::text(args.strategy.to_possible_value().expect("value").get_name()),
            Cell::int(w.set.len() as u64),
            Cell::text(side.as_str().unwrap_or_default()),
            vertices(&w.set),
            Cell::Bool(w.validate(&g)),
        ]);
        r
    } else if args.turan {
        let clique = turan_clique(&g);
        let guarantee = turan_guarantee(&g);
        let mut r = Report::new("turan", &["n", "size", "guarantee", "meets_guarantee", "vertices"]);
        r.assertions.push(Assertion { lhs: "size".into(), cmp: Cmp::Ge, rhs: "guarantee".into(), verdict: "meets_guarantee".into() });
        let ok = Rational::from_integer((clique.len() as i64).into()) >= guarantee;
        r.push(vec![n, Cell::int(clique.len() as u64), Cell::Rational(guarantee), Cell::Bool(ok), vertices(&clique)]);
        r
    } else {
        let (size, w) = hom_exact(&g)?;
        let kind = match w.kind {
            HomKind::Clique => "clique",
            HomKind::Independent => "independent",
        };
        let mut r = Report::new("hom", &["n", "hom", "kind", "vertices", "validated"]);
        r.push(vec![n, Cell::int(size as u64), Cell::text(kind), vertices(&w.set), Cell::Bool(w.validate(&g))]);
        r
    };
    let ok = report.rows.iter().all(|row| !row.contains(&Cell::Bool(false)));
    Ok(Output { text: render(&report, format)?, ok })
}

fn single_eps(eps: &[String]) -> Result<Rational> {
    match eps {
        [one] => parse_rational(one),
        _ => Err(Error::input("give exactly one --eps value outside --sweep")),
    }
}

fn single_u(u: &[usize]) -> Result<usize> {
    match u {
        [one] => Ok(*one),
        _ => Err(Error::input("give exactly one --u value outside --sweep")),
    }
}

fn containers_verify(args: &ContainersArgs, format: Format) -> Result<Output> {
    if let Some(n) = args.sweep {
        let eps = args.eps.iter().map(|e| parse_rational(e)).collect::<Result<Vec<_>>>()?;
        let k: Vec<usize> = if args.k.is_empty() { (0..=n).collect() } else { args.k.clone() };
        let rows = graph_soundness_sweep(n, &eps, &args.u, &k)?;
        let mut r = Report::new(
            "container-sweep",
            &["n", "eps", "u", "ell", "k", "graphs", "qualifying", "max_count", "bound", "improved_bound", "violations", "improved_violations"],
        );
        let ok = rows.iter().all(|row| row.violations == 0);
        for row in rows {
            r.push(vec![
                Cell::int(row.n as u64),
                Cell::Rational(row.epsilon),
                Cell::int(row.u as u64),
                Cell::int(row.ell as u64),
                Cell::int(row.k as u64),
                Cell::int(row.graphs),
                Cell::int(row.qualifying),
                Cell::int(row.max_count),
                big(&row.bound),
                big(&row.improved_bound),
                Cell::int(row.violations),
                Cell::int(row.improved_violations),
            ]);
        }
        return Ok(Output { text: render(&r, format)?, ok });
    }
    let text = read_input(args.input.as_deref())?;
    let eps = single_eps(&args.eps)?;
    let u = single_u(&args.u)?;
    let (graph, hyper) = if args.hypergraph {
        let h = parse_hypergraph(&text)?;
        (None, Some(h))
    } else {
        (Some(parse_graph(&text)?), None)
    };
    let n = graph.as_ref().map_or_else(|| hyper.as_ref().expect("one system").n(), |g| g.n());
    let r = hyper.as_ref().map_or(2, |h| h.r());
    let ell = match args.ell {
        Some(l) => l,
        None => ehlab::containers::minimal_ell(n, &eps, u)?,
    };

    if let Some(set) = &args.set {
        let i = VertexSet::from_vertices(n, set.iter().copied())?;
        let params = ContainerParams::new(eps, u, ell, i.len())?;
        let (trace, rebuilt): (FingerprintTrace, Vec<Vec<usize>>) = match (&graph, &hyper) {
            (Some(g), _) => {
                let t = kw_fingerprint(g, &i, &params)?;
                let back = reconstruct_kw_segments(g, &t.segment_union(), &params)?;
                (t, back)
            }
            (_, Some(h)) => {
                let t = scythe_fingerprint(h, &i, &params)?;
                let back = reconstruct_scythe_segments(h, &t.segment_union(), &params)?;
                (t, back)
            }
            _ => unreachable!(),
        };
        trace.check_invariants(&i, ell)?;
        let round_trip = rebuilt == trace.segments;
        let segments: Vec<String> =
            trace.segments.iter().map(|s| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("+")).collect();
        let mut rep = Report::new("fingerprint", &["n", "r", "eps", "u", "ell", "set", "segments", "container", "container_size", "round_trip"]);
        rep.push(vec![
            Cell::int(n as u64),
            Cell::int(r as u64),
            Cell::Rational(params.epsilon.clone()),
            Cell::int(u as u64),
            Cell::int(ell as u64),
            vertices(&i),
            Cell::text(segments.join(" ")),
            vertices(&trace.container),
            Cell::int(trace.container.len() as u64),
            Cell::Bool(round_trip),
        ]);
        return Ok(Output { text: render(&rep, format)?, ok: round_trip });
    }

    let variant = if r == 2 { DegreeVariant::Graph } else { DegreeVariant::Hypergraph };
    let pre = match (&graph, &hyper) {
        (Some(g), _) => verify_degree_precondition(g, &eps, u, variant, CheckMode::Exhaustive)?,
        (_, Some(h)) => verify_degree_precondition(h, &eps, u, variant, CheckMode::Exhaustive)?,
        _ => unreachable!(),
    };
    let ks: Vec<usize> = if args.k.is_empty() { ((r - 1) * ell..=n).collect() } else { args.k.clone() };
    let mut rep = Report::new("container-bound", &["n", "r", "eps", "u", "ell", "k", "precondition", "count", "bound", "within_bound"]);
    rep.assertions.push(Assertion { lhs: "count".into(), cmp: Cmp::Le, rhs: "bound".into(), verdict: "within_bound".into() });
    let mut ok = true;
    for k in ks {
        let params = ContainerParams::new(eps.clone(), u, ell, k)?;
        let (count, bound) = match (&graph, &hyper) {
            (Some(g), _) => (count_independent_sets_exact(g, k), kw_bound(n, &params)?),
            (_, Some(h)) => (count_independent_sets_exact(h, k), hypergraph_bound(n, r, &params)?),
            _ => unreachable!(),
        };
        let within = count <= bound;
        // the bound is only promised under the degree hypothesis
        ok &= within || !pre.holds;
        rep.push(vec![
            Cell::int(n as u64),
            Cell::int(r as u64),
            Cell::Rational(eps.clone()),
            Cell::int(u as u64),
            Cell::int(ell as u64),
            Cell::int(k as u64),
            Cell::Bool(pre.holds),
            big(&count),
            big(&bound),
            Cell::Bool(within),
        ]);
    }
    Ok(Output { text: render(&rep, format)?, ok })
}

fn tournament_dist(input: Option<&Path>, eps: Option<&str>, format: Format) -> Result<Output> {
    let t = parse_tournament(&read_input(input)?)?;
    let w = dist_to_transitive_exact(&t)?;
    let triangles = cyclic_triangle_count(&t)?;
    let (eps_cell, verdict) = match eps {
        Some(e) => {
            let e = parse_rational(e)?;
            let v = is_eps_transitive(&t, &e)?;
            (Cell::Rational(e), Cell::Bool(v))
        }
        None => (Cell::Missing, Cell::Missing),
    };
    let order = w.ordering.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    let mut r = Report::new("tournament-dist", &["n", "triangles", "dist", "ordering", "eps", "eps_transitive"]);
    r.push(vec![Cell::int(t.n() as u64), big(&triangles), Cell::int(w.reversals as u64), Cell::text(order), eps_cell, verdict]);
    Ok(Output { text: render(&r, format)?, ok: true })
}

fn params(args: &ParamsArgs, format: Format) -> Result<Output> {
    if args.eps.is_empty() {
        return Err(Error::input("--eps is required"));
    }
    let variant = match args.variant {
        VariantArg::Graph => Variant::Graph,
        VariantArg::Hypergraph => Variant::Hypergraph,
        VariantArg::Tournament => Variant::Tournament,
    };
    let f = GrowthFunction::parse(&args.f)?;
    let (default_c, default_c_prime) = variant.default_constants();
    let constants = if args.c.is_some() || args.c_prime.is_some() {
        let c = match &args.c {
            Some(c) => c.parse::<BigUint>().map_err(|e| Error::input(format!("--c: {e}")))?,
            None => default_c,
        };
        let c_prime = match &args.c_prime {
            Some(c) => parse_rational(c)?,
            None => default_c_prime,
        };
        Some((c, c_prime))
    } else {
        None
    };
    let k_formula = match args.k_formula {
        KFormulaArg::Log4 => KFormula::Log4,
        KFormulaArg::Log2Refined => KFormula::Log2Refined,
    };
    let options = ParamOptions { constants, k_formula, allow_any_eps: args.allow_any_eps };
    let mut r = Report::new(
        "params",
        &["variant", "eps", "f", "h", "k", "t", "ell", "inv_delta_lo", "inv_delta_hi", "exploratory", "i", "ii", "iii", "iv", "aux", "verdict"],
    );
    let mut ok = true;
    for eps in &args.eps {
        let eps = parse_rational(eps)?;
        let p = compute_params(variant, &eps, &f, &options)?;
        if p.exploratory {
            eprintln!("warning: ε = {eps} lies outside (0, 1/100); parameters are exploratory");
        }
        for &h in &args.h {
            let chain = verify_inequality_chain(&p, h)?;
            ok &= chain.all_pass();
            let mut row = vec![
                Cell::text(args.variant.to_possible_value().expect("value").get_name()),
                Cell::Rational(eps.clone()),
                Cell::text(f.describe()),
                Cell::int(h as u64),
                big(&p.k),
                big(&p.t),
                big(&p.ell),
                Cell::Rational(p.inv_delta.lo.clone()),
                Cell::Rational(p.inv_delta.hi.clone()),
                Cell::Bool(p.exploratory),
            ];
            row.extend(chain.checks.iter().map(|c| Cell::Bool(c.pass)));
            row.push(Cell::Bool(chain.auxiliary.pass));
            row.push(Cell::text(if chain.all_pass() { "pass" } else { "fail" }));
            r.push(row);
        }
    }
    Ok(Output { text: render(&r, format)?, ok })
}

fn experiment(config: &Path, cli: &Cli) -> Result<Output> {
    let mut config = ExperimentConfig::from_json(&read_file(config)?)?;
    if config.seeds.is_empty() {
        config.seeds = vec![cli.seed];
    }
    config.validate()?;
    let report = run_experiment(&config)?;
    let ok = report.column("verdict").is_none_or(|v| report.rows.iter().all(|row| row[v] != Cell::text("fail")));
    let text = render(&report, cli.format)?;
    // the config's own output path applies when --out is absent
    if cli.out.is_none() {
        if let Some(path) = &config.out {
            write_file(Path::new(path), &text)?;
            return Ok(Output { text: String::new(), ok });
        }
    }
    Ok(Output { text, ok })
}

fn run(cli: &Cli) -> Result<Output> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::input(format!("--threads: {e}")))?;
    }
    match &cli.command {
        Command::Construct(args) => construct(args, cli.seed),
        Command::Hom(args) => hom(args, cli.format),
        Command::Containers { command: ContainersCommand::Verify(args) } => containers_verify(args, cli.format),
        Command::Tournament { command: TournamentCommand::Dist { input, eps } } => tournament_dist(input.as_deref(), eps.as_deref(), cli.format),
        Command::Params(args) => params(args, cli.format),
        Command::Experiment { command: ExperimentCommand::Run { config } } => experiment(config, cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        match &cli.out {
            Some(path) => write_file(path, &out.text)?,
            None => print!("{}", out.text),
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
