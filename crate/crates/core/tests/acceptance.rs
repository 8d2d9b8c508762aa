//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::Instant;

use ehlab::construct::{
    derive_seed, gnp, p4_sparse_construct, perturb_edges, random_cograph, random_tournament, random_uniform_hypergraph, P4SparseConfig,
};
use ehlab::containers::{
    graph_soundness_sweep, hypergraph_bound, independent_set_profile, kw_fingerprint, minimal_ell,
    precondition_epsilon, reconstruct_kw_segments, reconstruct_scythe_segments, scythe_fingerprint, verify_degree_precondition,
    CheckMode, ContainerParams, DegreeVariant,
};
use ehlab::exact::{binomial, rat_int, rational, rational_pow, uint_to_rational, Rational};
use ehlab::experiment::{run_experiment, ExperimentConfig};
use ehlab::graph::named::path;
use ehlab::homogeneous::{check_tk_property, count_homogeneous_k, hom_exact, homogeneous_lower_bound, nikiforov_premise_threshold, FamilyOracle};
use ehlab::induced::count_induced_copies;
use ehlab::params::{compute_params, verify_inequality_chain, GrowthFunction, ParamOptions, Variant};
use ehlab::report::ReportFormat;
use ehlab::tournament::{count_transitive_subtournaments, cyclic_triangle_count, dist_to_transitive_exact, Tournament};
use ehlab::VertexSet;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

/// Random independent set: a seeded greedy pass over a shuffled vertex order,
/// then a random subset of it.
fn random_independent(n: usize, independent: impl Fn(&VertexSet) -> bool, rng: &mut ChaCha8Rng) -> VertexSet {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut set = VertexSet::empty(n);
    for v in order {
        set.insert(v);
        if !independent(&set) {
            set.remove(v);
        }
    }
    if rng.gen_range(0..2) == 0 {
        let keep: Vec<usize> = set.iter().filter(|_| rng.gen_range(0..3) > 0).collect();
        set = VertexSet::from_vertices(n, keep).expect("in range");
    }
    set
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let eps = [rational(1, 4), rational(1, 2), rat_int(1)];
    let u: Vec<usize> = (1..=7).collect();
    let k: Vec<usize> = (0..=7).collect();
    let rows = match graph_soundness_sweep(7, &eps, &u, &k) {
        Ok(rows) => rows,
        Err(e) => return outcome(false, format!("sweep failed: {e}")),
    };
    let violations: u64 = rows.iter().map(|r| r.violations).sum();
    let qualifying: u64 = rows.iter().map(|r| r.qualifying).sum();
    let secs = start.elapsed().as_secs_f64();
    outcome(
        violations == 0 && rows.iter().all(|r| r.graphs == 1 << 21) && secs < 600.0,
        format!("{} parameter rows over 2^21 graphs, {qualifying} qualifying (graph, row) pairs, {violations} violations, {secs:.1}s", rows.len()),
    )
}

fn ac2() -> Outcome {
    let mut instances = 0u64;
    let mut checks = 0u64;
    let mut traces = 0u64;
    let mut failures = Vec::new();
    let mut seed_index = 0u64;
    let densities = [rational(1, 2), rational(2, 3), rational(3, 4), rational(9, 10)];
    while instances < 1000 && seed_index < 20_000 {
        let n = 8 + (seed_index % 5) as usize;
        let p = &densities[(seed_index / 5 % 4) as usize];
        let seed = derive_seed(2024, seed_index);
        seed_index += 1;
        let h = random_uniform_hypergraph(n, 3, p, seed).expect("valid parameters");
        let profile = independent_set_profile(&h);
        let alpha = profile.iter().rposition(|c| *c > BigUint::from(0u32)).unwrap_or(0);
        let mut instance_used = false;
        for u in alpha.max(1)..n {
            let Some(eps) = precondition_epsilon(&h, u, DegreeVariant::Hypergraph).expect("small host") else { continue };
            let pre = verify_degree_precondition(&h, &eps, u, DegreeVariant::Hypergraph, CheckMode::Exhaustive).expect("small host");
            if !pre.holds {
                failures.push(format!("n={n} seed={seed}: precondition_epsilon {eps} not confirmed"));
                continue;
            }
            let ell = minimal_ell(n, &eps, u).expect("valid");
            if 2 * ell > n {
                continue;
            }
            for k in (2 * ell)..=n {
                let params = ContainerParams::new(eps.clone(), u, ell, k).expect("valid");
                let bound = hypergraph_bound(n, 3, &params).expect("preconditions hold");
                checks += 1;
                instance_used = true;
                if profile[k] > bound {
                    failures.push(format!("n={n} seed={seed} u={u} k={k}: count {} > bound {bound}", profile[k]));
                }
            }
            let params = ContainerParams::new(eps.clone(), u, ell, 2 * ell).expect("valid");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..3 {
                let i = random_independent(n, |s| h.is_independent(s), &mut rng);
                let trace = scythe_fingerprint(&h, &i, &params).expect("independent input");
                traces += 1;
                if !trace.shrinkage_holds(&eps) {
                    failures.push(format!("n={n} seed={seed} u={u}: shrinkage fails on {:?}", trace.rounds));
                }
            }
        }
        if instance_used {
            instances += 1;
        }
    }
    outcome(
        instances >= 1000 && failures.is_empty(),
        format!(
            "{instances} instances, {checks} (instance, u, k) bound checks, {traces} scythe traces, {} failures{}",
            failures.len(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

fn ac3() -> Outcome {
    let mut ok = 0u64;
    let mut bad = Vec::new();
    let total = 10_000u64;
    for idx in 0..total {
        let seed = derive_seed(77, idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(6..=16);
        let eps = [rational(1, 4), rational(1, 2), rational(2, 3)][rng.gen_range(0..3)].clone();
        let u = rng.gen_range(1..n);
        let ell = minimal_ell(n, &eps, u).expect("valid");
        let p = rational(rng.gen_range(1..=4), 5);
        let result = if idx % 2 == 0 {
            let g = gnp(n, &p, seed).expect("valid");
            let i = random_independent(n, |s| g.is_independent(s), &mut rng);
            let params = ContainerParams::new(eps, u, ell, i.len()).expect("valid");
            let trace = kw_fingerprint(&g, &i, &params).expect("independent input");
            trace.check_invariants(&i, ell).and_then(|_| {
                let got = reconstruct_kw_segments(&g, &trace.segment_union(), &params)?;
                Ok(got == trace.segments)
            })
        } else {
            let h = random_uniform_hypergraph(n, 3, &p, seed).expect("valid");
            let i = random_independent(n, |s| h.is_independent(s), &mut rng);
            let params = ContainerParams::new(eps, u, ell, i.len()).expect("valid");
            let trace = scythe_fingerprint(&h, &i, &params).expect("independent input");
            trace.check_invariants(&i, ell).and_then(|_| {
                let got = reconstruct_scythe_segments(&h, &trace.segment_union(), &params)?;
                Ok(got == trace.segments)
            })
        };
        match result {
            Ok(true) => ok += 1,
            Ok(false) => bad.push(format!("pair {idx}: segment order differs")),
            Err(e) => bad.push(format!("pair {idx}: {e}")),
        }
    }
    outcome(ok == total, format!("{ok}/{total} round trips (graphs and 3-uniform alternating){}", bad.first().map(|b| format!("; first failure: {b}")).unwrap_or_default()))
}

fn ac4() -> Outcome {
    let start = Instant::now();
    let tk = check_tk_property(&FamilyOracle::p4_free(), 5, 3, CheckMode::Exhaustive).expect("t = 5 is exhaustive");
    let threshold = nikiforov_premise_threshold(40, 4, 5).expect("n >= 2t");
    let p4 = path(4);
    let lower = homogeneous_lower_bound(40, 5, 3);
    let (mut tested, mut drawn, mut min_count, mut fails) = (0, 0u64, None::<BigUint>, 0);
    while tested < 100 && drawn < 10_000 {
        let g = gnp(40, &rational(1, 20), derive_seed(40, drawn)).expect("valid");
        drawn += 1;
        if count_induced_copies(&g, &p4).embeddings > threshold {
            continue;
        }
        tested += 1;
        let c = count_homogeneous_k(&g, 3).expect("k >= 2");
        if uint_to_rational(&c) < lower {
            fails += 1;
        }
        min_count = Some(min_count.map_or(c.clone(), |m| m.min(c)));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        tk.holds && tk.exhaustive && threshold == BigUint::from(640u32) && tested == 100 && fails == 0 && secs < 120.0,
        format!(
            "(P4-free,5,3) holds over {} graphs; {tested} qualifying G(40,1/20) of {drawn} drawn; min homogeneous 3-sets {} vs bound {lower}; {fails} failures; {secs:.1}s",
            tk.graphs_checked,
            min_count.map(|m| m.to_string()).unwrap_or_default()
        ),
    )
}

fn ac5() -> Outcome {
    let n = 40;
    let t = 5;
    let flips = n * n / (2 * t) / 5;
    let p4free = FamilyOracle::p4_free();
    let lower = homogeneous_lower_bound(n, t, 3);
    let mut fails = Vec::new();
    let mut min_count = None::<BigUint>;
    for i in 0..50u64 {
        let seed = derive_seed(5, i);
        let base = random_cograph(n, seed).expect("valid");
        if !p4free.contains(&base) {
            fails.push(format!("seed {seed}: base is not a cograph"));
            continue;
        }
        let (g, flipped) = perturb_edges(&base, flips, derive_seed(seed, 1)).expect("enough pairs");
        // closeness certificate: |flips| <= n²/(2t)
        if flipped.len() * 2 * t > n * n {
            fails.push(format!("seed {seed}: too many flips"));
        }
        let c = count_homogeneous_k(&g, 3).expect("k >= 2");
        if uint_to_rational(&c) < lower {
            fails.push(format!("seed {seed}: {c} homogeneous 3-sets"));
        }
        min_count = Some(min_count.map_or(c.clone(), |m| m.min(c)));
    }
    outcome(
        fails.is_empty(),
        format!("50 cographs on 40 vertices with {flips} flips; min homogeneous 3-sets {} vs bound {lower}; {} failures", min_count.unwrap_or_default(), fails.len()),
    )
}

/// Leading constant in the induced-P4 bound `C ε⁶ n⁴`, pinned from calibration.
const P4_CONSTANT: i64 = 1000;

fn ac6() -> Outcome {
    let n = 150;
    let mut fails = Vec::new();
    let mut worst = Rational::from_integer(0.into());
    let mut runs = 0;
    for eps in [rational(1, 20), rational(1, 10)] {
        let scale = rational_pow(&eps, 6) * rational_pow(&rat_int(n as i64), 4);
        for seed in 1..=5u64 {
            let art = match p4_sparse_construct(n, &eps, seed, &P4SparseConfig::default()) {
                Ok(a) => a,
                Err(e) => {
                    fails.push(format!("eps={eps} seed={seed}: {e}"));
                    continue;
                }
            };
            runs += 1;
            let audit = art.audit_p4();
            let ratio = rat_int(audit.embeddings as i64) / &scale;
            if ratio > worst {
                worst = ratio.clone();
            }
            if !audit.within_parts {
                fails.push(format!("eps={eps} seed={seed}: induced P4 across parts"));
            }
            if ratio > rat_int(P4_CONSTANT) {
                fails.push(format!("eps={eps} seed={seed}: {} embeddings exceed {P4_CONSTANT}·ε⁶n⁴", audit.embeddings));
            }
        }
    }
    outcome(
        fails.is_empty() && runs == 10,
        format!(
            "{runs} constructions; every induced P4 inside a part: {}; max embeddings/(ε⁶n⁴) = {:.1} vs pinned constant {P4_CONSTANT}{}",
            fails.iter().all(|f| !f.contains("across")),
            ehlab::exact::rational_to_f64(&worst),
            fails.first().map(|f| format!("; first failure: {f}")).unwrap_or_default()
        ),
    )
}

fn brute_force_distance(t: &Tournament) -> usize {
    fn walk(t: &Tournament, placed: &mut Vec<usize>, used: u32, cost: usize, best: &mut usize) {
        if cost >= *best {
            return;
        }
        if placed.len() == t.n() {
            *best = cost;
            return;
        }
        for v in 0..t.n() {
            if used >> v & 1 == 1 {
                continue;
            }
            let extra = placed.iter().filter(|&&u| t.beats(v, u)).count();
            placed.push(v);
            walk(t, placed, used | 1 << v, cost + extra, best);
            placed.pop();
        }
    }
    let mut best = usize::MAX;
    walk(t, &mut Vec::new(), 0, 0, &mut best);
    best
}

fn enumerate_triangles(t: &Tournament) -> u64 {
    let n = t.n();
    let mut c = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            for d in (b + 1)..n {
                let ab = t.beats(a, b);
                if ab == t.beats(b, d) && ab == t.beats(d, a) {
                    c += 1;
                }
            }
        }
    }
    c
}

fn ac7() -> Outcome {
    let mut dp_agree = 0;
    let mut tri_agree = 0;
    let mut trans_agree = 0;
    for i in 0..1000u64 {
        let n = 1 + (i % 8) as usize;
        let t = random_tournament(n, derive_seed(7, i));
        if dist_to_transitive_exact(&t).ok().map(|w| w.reversals) == Some(brute_force_distance(&t)) {
            dp_agree += 1;
        }
        let m = 3 + (i % 28) as usize;
        let t = random_tournament(m, derive_seed(8, i));
        let tri = cyclic_triangle_count(&t);
        let scores: u64 = (0..m).map(|v| {
            let s = t.out_degree(v) as u64;
            s * s.saturating_sub(1) / 2
        }).sum();
        let identity = binomial(m as u64, 3) - BigUint::from(scores);
        if tri.as_ref().ok() == Some(&BigUint::from(enumerate_triangles(&t))) && tri.as_ref().ok() == Some(&identity) {
            tri_agree += 1;
        }
        if count_transitive_subtournaments(&t, 3) == binomial(m as u64, 3) - identity {
            trans_agree += 1;
        }
    }
    outcome(
        dp_agree == 1000 && tri_agree == 1000 && trans_agree == 1000,
        format!("DP = brute force {dp_agree}/1000; triangle enumeration = score identity {tri_agree}/1000; transitive triples = C(n,3) - triangles {trans_agree}/1000"),
    )
}

fn ac8() -> Outcome {
    let start = Instant::now();
    let mut values = Vec::new();
    for seed in 1..=5u64 {
        let g = gnp(128, &rational(1, 2), seed).expect("valid");
        match hom_exact(&g) {
            Ok((h, w)) if w.validate(&g) => values.push(h),
            Ok(_) => return outcome(false, format!("seed {seed}: witness failed validation")),
            Err(e) => return outcome(false, format!("seed {seed}: {e}")),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(values.iter().all(|&h| h <= 16) && secs < 300.0, format!("hom(G(128,1/2)) for seeds 1..5 = {values:?} (bound 16), {secs:.1}s"))
}

fn ac9() -> Outcome {
    let f = GrowthFunction::Constant(rat_int(2));
    let epsilons = [rational(1, 128), rational(1, 256), rational(1, 512)];
    let compute = |e: &Rational| compute_params(Variant::Graph, e, &f, &ParamOptions::default()).expect("valid parameters");
    let reference: Vec<_> = epsilons.iter().map(compute).collect();
    let mut identical = true;
    for _ in 0..3 {
        identical &= epsilons.iter().map(compute).collect::<Vec<_>>() == reference;
    }
    for threads in [1, 2, 4] {
        let got: Vec<_> = pool(threads).install(|| epsilons.par_iter().map(compute).collect());
        identical &= got == reference;
    }
    let mut all_pass = true;
    let mut summary = Vec::new();
    for p in &reference {
        for h in 3..=6 {
            let report = verify_inequality_chain(p, h).expect("chain evaluates");
            all_pass &= report.all_pass();
        }
        summary.push(format!("ε={}: k={} ℓ={}", p.epsilon, p.k, p.ell));
    }
    outcome(all_pass && identical, format!("all four checks pass for h = 3..6: {all_pass}; bit-identical across reruns and 1/2/4 threads: {identical}; {}", summary.join(", ")))
}

fn ac10() -> Outcome {
    let configs = [
        r#"{"kind": "count-lower-bound", "generator": {"kind": "gnp", "p": "1/20"}, "grid": {"n": [24], "t": [5], "k": [3]}, "seeds": [1, 2, 3, 4, 5, 6]}"#,
        r#"{"kind": "triangle-scan", "generator": {"samples": 4}, "grid": {"m": [6, 9]}, "seeds": [11, 12]}"#,
        r#"{"kind": "close-family", "grid": {"n": [16], "t": [4], "k": [3], "eps": ["1/25", "1/10"]}, "seeds": [3, 4]}"#,
    ];
    let dir = std::env::temp_dir().join(format!("ehlab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let mut identical = true;
    let mut rows = 0;
    for (ci, text) in configs.iter().enumerate() {
        let config = ExperimentConfig::from_json(text).expect("valid config");
        let mut outputs = Vec::new();
        for (run, threads) in [1, 1, 2, 4].into_iter().enumerate() {
            let report = pool(threads).install(|| run_experiment(&config)).expect("runs");
            rows += report.rows.len();
            let path = dir.join(format!("c{ci}-r{run}.csv"));
            ehlab::report::emit_report(&report, ReportFormat::Csv, &path).expect("writes");
            outputs.push(std::fs::read(&path).expect("reads"));
        }
        identical &= outputs.windows(2).all(|w| w[0] == w[1]);
    }
    let _ = std::fs::remove_dir_all(&dir);
    outcome(identical, format!("{} configs x 4 runs (1,1,2,4 threads), {rows} rows total; byte-identical CSV: {identical}", configs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("AC1 container soundness, graphs", ac1),
        ("AC2 container soundness, 3-uniform", ac2),
        ("AC3 fingerprint round trip", ac3),
        ("AC4 count lower bound pipeline", ac4),
        ("AC5 close-family pipeline", ac5),
        ("AC6 P4-sparse construction", ac6),
        ("AC7 tournament exactness", ac7),
        ("AC8 hom(G(128,1/2)) spot check", ac8),
        ("AC9 parameter chain", ac9),
        ("AC10 reproducibility", ac10),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        println!("{} {name} [{:.1}s]: {}", if o.pass { "PASS" } else { "FAIL" }, start.elapsed().as_secs_f64(), o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
