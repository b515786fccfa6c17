//! Acceptance suite: the exit gate for the whole crate. One test per
//! criterion; each prints a `[acceptance]` pass line with its timing
//! (visible under `--nocapture`) and enforces its time limit.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use lpbn::analyzer::{analyze, solve, AnalyzeOptions, SolveMethod, TheoremTag, VerdictStatus};
use lpbn::bn::{encode, fixed_points, influence_graph, IgMode, Term};
use lpbn::fixpoint::{least_fixpoint, quasi_to_program, stable_via_lfp};
use lpbn::gen::{random_program, random_signed_digraph, GenConfig, Rng};
use lpbn::oracle::{
    enumerate_signed_cycles, enumerate_stable_bruteforce, enumerate_supported_bruteforce,
};
use lpbn::parse::parse_program;
use lpbn::program::{AtomId, Interpretation, Program, ProgramBuilder};
use lpbn::sgraph::{
    dependence_graph, has_negative_cycle, has_positive_cycle, is_acyclic, is_locally_stratified,
    positive_dependence_graph, Sign, SignedDigraph, Tri,
};

const EXAMPLE_1: &str = "a :- b. a :- not b. b :- c. c :- b.";
const EXAMPLE_2_P1: &str = "a :- not b. b :- not c. c :- a.";
const EXAMPLE_2_P2: &str = "a :- b. b :- not c. c :- a.";
const EXAMPLE_3: &str = "a :- not b. b :- not a. b :- not c. c :- not b.";

fn finish(number: usize, name: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    eprintln!(
        "[acceptance] criterion {number} ({name}): PASS in {:.2}s (limit {:.0}s)",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    assert!(
        elapsed <= limit,
        "criterion {number} exceeded its time limit: {elapsed:?} > {limit:?}"
    );
}

fn model_sets(program: &Program, models: &[Interpretation]) -> BTreeSet<String> {
    models
        .iter()
        .map(|m| m.display_set(program.atoms()))
        .collect()
}

fn opts() -> AnalyzeOptions {
    AnalyzeOptions {
        solve: false,
        ..AnalyzeOptions::default()
    }
}

#[test]
fn criterion_1_example_1_golden() {
    let started = Instant::now();
    let p = parse_program(EXAMPLE_1).unwrap();
    let (a, b, c) = (AtomId(0), AtomId(1), AtomId(2));
    let f = encode(&p);

    // f_a = b | not b (verbatim), f_b = c, f_c = b
    assert_eq!(
        f.function(a).terms,
        vec![Term::new([b], []), Term::new([], [b])]
    );
    assert_eq!(f.function(b).terms, vec![Term::new([c], [])]);
    assert_eq!(f.function(c).terms, vec![Term::new([b], [])]);

    // fixed points exactly 100 and 111
    let fps = fixed_points(&f, 1_000_000).unwrap();
    let bits: Vec<String> = fps.iter().map(|s| s.to_bitstring(3)).collect();
    assert_eq!(bits, ["100", "111"]);

    // stable models exactly {a}
    let models = solve(&p, SolveMethod::FixedpointFilter, &opts()).unwrap();
    assert_eq!(model_sets(&p, &models), BTreeSet::from(["{a}".to_string()]));

    // semantic influence graph: exactly the two arcs between b and c,
    // a strict subgraph of the dependence graph
    let ig = influence_graph(&f, IgMode::Semantic, 24).unwrap();
    let ig_arcs: Vec<_> = ig.arcs().collect();
    assert_eq!(ig_arcs, vec![(1, 2, Sign::Plus), (2, 1, Sign::Plus)]);
    let dg = dependence_graph(&p);
    for (u, v, s) in ig.arcs() {
        assert!(dg.has_arc(u, v, s));
    }
    assert!(dg.arc_count() > ig.arc_count(), "containment is strict");

    finish(1, "example-1 golden", started, Duration::from_secs(1));
}

#[test]
fn criterion_2_example_2_golden() {
    let started = Instant::now();

    let p1 = parse_program(EXAMPLE_2_P1).unwrap();
    let models = solve(&p1, SolveMethod::FixedpointFilter, &opts()).unwrap();
    assert_eq!(
        model_sets(&p1, &models),
        BTreeSet::from(["{a,c}".to_string(), "{b}".to_string()])
    );
    let (first, second) = (&models[0], &models[1]);
    assert!(first.iter().all(|x| !second.contains(x)), "disjoint");
    assert_eq!(first.len() + second.len(), p1.atom_count(), "cover atom(P)");

    let r1 = analyze(&p1, &AnalyzeOptions::default()).unwrap();
    let v = r1.verdict(TheoremTag::SinglePosCycle);
    assert_eq!(v.status, VerdictStatus::Fired);
    assert_eq!(v.interval.unwrap(), lpbn::CountInterval::exact(2));
    assert_eq!(r1.combined, lpbn::CountInterval::exact(2));

    let p2 = parse_program(EXAMPLE_2_P2).unwrap();
    assert!(solve(&p2, SolveMethod::FixedpointFilter, &opts())
        .unwrap()
        .is_empty());
    let r2 = analyze(&p2, &AnalyzeOptions::default()).unwrap();
    let v = r2.verdict(TheoremTag::SingleNegCycle);
    assert_eq!(v.status, VerdictStatus::Fired);
    assert_eq!(v.interval.unwrap(), lpbn::CountInterval::exact(0));
    assert_eq!(r2.combined, lpbn::CountInterval::exact(0));

    finish(2, "example-2 golden", started, Duration::from_secs(1));
}

#[test]
fn criterion_3_example_3_golden() {
    let started = Instant::now();
    let p = parse_program(EXAMPLE_3).unwrap();

    let models = solve(&p, SolveMethod::FixedpointFilter, &opts()).unwrap();
    assert_eq!(
        model_sets(&p, &models),
        BTreeSet::from(["{b}".to_string(), "{a,c}".to_string()])
    );

    // constructed without enumeration, compared as an unordered pair
    let (x, y) = lpbn::construct_complementary_pair(&p).unwrap();
    let constructed = model_sets(&p, &[x, y]);
    assert_eq!(constructed, model_sets(&p, &models));

    // tight, so fixed points are exactly the stable models
    let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
    assert!(r.tight);
    assert_eq!(r.verdict(TheoremTag::Fages).status, VerdictStatus::Fired);
    let fps = fixed_points(&encode(&p), 1_000_000).unwrap();
    assert_eq!(fps, models);

    finish(3, "example-3 golden", started, Duration::from_secs(1));
}

#[test]
fn criterion_4_oracle_equivalence_suite() {
    let started = Instant::now();
    let cfg = GenConfig::default();
    let options = opts();
    for seed in 0..500u64 {
        let p = random_program(&cfg, seed);

        // (a) supported models by definition = fixed points of the encoding
        let supported = enumerate_supported_bruteforce(&p).unwrap();
        let fps = fixed_points(&encode(&p), 10_000_000).unwrap();
        assert_eq!(supported, fps, "seed {seed}: supp(P) != fix(f)");

        // (b) stable is a subset of supported
        let stable = enumerate_stable_bruteforce(&p).unwrap();
        for m in &stable {
            assert!(supported.contains(m), "seed {seed}: stable not supported");
        }

        // (c) the three solving routes agree
        let m1 = solve(&p, SolveMethod::FixedpointFilter, &options).unwrap();
        let m2 = solve(&p, SolveMethod::Lfp, &options).unwrap();
        let m3 = solve(&p, SolveMethod::BruteForce, &options).unwrap();
        assert_eq!(m1, m2, "seed {seed}: fixedpoint-filter vs lfp");
        assert_eq!(m1, m3, "seed {seed}: fixedpoint-filter vs bruteforce");
        assert_eq!(m1, stable, "seed {seed}: solver vs oracle");

        // (d) the combined interval contains the true count
        let report = analyze(&p, &options).unwrap();
        assert!(
            report.combined.contains(stable.len() as u128),
            "seed {seed}: count {} outside {}",
            stable.len(),
            report.combined
        );
    }
    finish(
        4,
        "oracle equivalence suite",
        started,
        Duration::from_secs(60),
    );
}

/// Programs where every atom heads a rule and no rule is a fact; the
/// syntactic side of the no-stable-model criterion holds by construction.
fn headed_no_fact_program(seed: u64) -> Program {
    let mut rng = Rng::new(seed);
    let n = 2 + rng.below(7);
    let mut b = ProgramBuilder::new();
    let atoms: Vec<_> = (0..n).map(|i| b.atom(&format!("a{i}"))).collect();
    for &head in &atoms {
        for _ in 0..1 + rng.below(2) {
            let len = 1 + rng.below(2);
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for _ in 0..len {
                let x = atoms[rng.below(n)];
                if rng.chance(1, 4) {
                    pos.push(x);
                } else {
                    neg.push(x);
                }
            }
            b.rule(head, pos, neg);
        }
    }
    b.build()
}

/// Collects at least `want` programs satisfying `keep` from a seed stream.
fn collect_class(
    want: usize,
    max_attempts: u64,
    make: impl Fn(u64) -> Program,
    keep: impl Fn(&Program) -> bool,
) -> Vec<Program> {
    let mut found = Vec::new();
    for seed in 0..max_attempts {
        let p = make(seed);
        if keep(&p) {
            found.push(p);
            if found.len() == want {
                return found;
            }
        }
    }
    panic!(
        "only {} of {want} class members found in {max_attempts} attempts",
        found.len()
    );
}

#[test]
fn criterion_5_theorem_class_suites() {
    let started = Instant::now();
    let cfg = GenConfig::default();
    let gen = |seed: u64| random_program(&cfg, seed);
    let count_of = |p: &Program| enumerate_stable_bruteforce(p).unwrap().len();

    // no negative cycle: at least one stable model
    let class = collect_class(100, 5_000, gen, |p| {
        has_negative_cycle(&dependence_graph(p)).is_no()
    });
    for p in &class {
        assert!(count_of(p) >= 1, "no-negative-cycle violated:\n{p}");
    }

    // no positive cycle: at most one stable model
    let class = collect_class(100, 5_000, gen, |p| {
        has_positive_cycle(&dependence_graph(p), 1_000_000).is_no()
    });
    for p in &class {
        assert!(count_of(p) <= 1, "no-positive-cycle violated:\n{p}");
    }

    // ... and with no facts plus all atoms headed: no stable model
    let class = collect_class(100, 5_000, headed_no_fact_program, |p| {
        p.fact_count() == 0
            && p.all_atoms_headed()
            && has_positive_cycle(&dependence_graph(p), 1_000_000).is_no()
    });
    for p in &class {
        assert_eq!(count_of(p), 0, "fact-free no-positive-cycle violated:\n{p}");
    }

    // locally stratified: exactly one stable model, and the least
    // fixpoint's dependence graph is acyclic
    let class = collect_class(100, 5_000, gen, is_locally_stratified);
    for p in &class {
        let models = stable_via_lfp(p, 1_000_000, 10_000_000).unwrap();
        assert_eq!(models.len(), 1, "locally-stratified count violated:\n{p}");
        let lfp = least_fixpoint(p, 1_000_000).unwrap();
        let lfp_dg = dependence_graph(&quasi_to_program(p, &lfp));
        assert!(is_acyclic(&lfp_dg), "lfp graph not acyclic:\n{p}");
    }

    // the PFVS bound, for the PFVS the analyzer actually reports
    for seed in 0..100u64 {
        let p = gen(seed);
        let report = analyze(&p, &opts()).unwrap();
        let verdict = report.verdict(TheoremTag::PfvsBound);
        assert_eq!(verdict.status, VerdictStatus::Fired);
        let pfvs = verdict.pfvs.as_ref().unwrap();
        assert!(
            (count_of(&p) as u128) <= (1u128 << pfvs.len()),
            "PFVS bound violated (|U|={}):\n{p}",
            pfvs.len()
        );
    }

    finish(5, "theorem-class suites", started, Duration::from_secs(120));
}

#[test]
fn criterion_6_graph_algorithm_oracle() {
    let started = Instant::now();

    // two negative triangles sharing a vertex: the one graph where a
    // positive closed walk exists without any positive simple cycle
    let bowtie = SignedDigraph::from_arcs(
        5,
        [
            (0, 1, Sign::Plus),
            (1, 2, Sign::Plus),
            (2, 0, Sign::Minus),
            (0, 3, Sign::Plus),
            (3, 4, Sign::Plus),
            (4, 0, Sign::Minus),
        ],
    );
    let mut corpus: Vec<SignedDigraph> = vec![bowtie];
    for seed in 0..110u64 {
        for density in [150, 250, 400] {
            corpus.push(random_signed_digraph(8, density, seed));
        }
    }

    let mut checked = 0usize;
    for (i, g) in corpus.iter().enumerate() {
        let cycles = enumerate_signed_cycles(g, 500_000)
            .unwrap_or_else(|_| panic!("graph {i} exceeded the listing cap"));
        for w in &cycles {
            assert!(w.verify(g), "graph {i}: invalid witness");
        }
        let expect_negative = cycles.iter().any(|w| w.sign() == Sign::Minus);
        let expect_positive = cycles.iter().any(|w| w.sign() == Sign::Plus);

        match has_negative_cycle(g) {
            Tri::Yes(w) => {
                assert!(expect_negative, "graph {i}: spurious negative cycle");
                assert!(w.verify(g) && w.sign() == Sign::Minus, "graph {i}");
            }
            Tri::No => assert!(!expect_negative, "graph {i}: missed negative cycle"),
            Tri::Unknown => panic!("graph {i}: negative detection cannot be unknown"),
        }
        match has_positive_cycle(g, 1_000_000) {
            Tri::Yes(w) => {
                assert!(expect_positive, "graph {i}: spurious positive cycle");
                assert!(w.verify(g) && w.sign() == Sign::Plus, "graph {i}");
            }
            Tri::No => assert!(!expect_positive, "graph {i}: missed positive cycle"),
            Tri::Unknown => continue, // non-unknown answers only
        }
        checked += 1;
    }
    assert!(checked >= 300, "only {checked} graphs fully checked");

    finish(
        6,
        "graph-algorithm oracle",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_7_lfp_suite() {
    let started = Instant::now();
    let cfg = GenConfig::default();
    let mut lemma_checked = 0usize;
    for seed in 0..500u64 {
        let p = random_program(&cfg, seed);
        let via_lfp = stable_via_lfp(&p, 1_000_000, 10_000_000).unwrap();
        let brute = enumerate_stable_bruteforce(&p).unwrap();
        assert_eq!(via_lfp, brute, "seed {seed}: lfp route disagrees");

        // negative-cycle-freeness is preserved into the lfp's graph
        if has_negative_cycle(&dependence_graph(&p)).is_no() {
            let lfp = least_fixpoint(&p, 1_000_000).unwrap();
            let lfp_dg = dependence_graph(&quasi_to_program(&p, &lfp));
            assert!(
                has_negative_cycle(&lfp_dg).is_no(),
                "seed {seed}: negative cycle appeared in lfp"
            );
            lemma_checked += 1;
        }
    }
    assert!(lemma_checked >= 100, "only {lemma_checked} lemma checks");
    eprintln!("[acceptance] criterion 7: lemma subset size {lemma_checked}");

    finish(7, "lfp suite", started, Duration::from_secs(120));
}

/// The tightness flag is exactly the positive-dependence-graph test the
/// solving pipeline keys on; checked here once against the examples.
#[test]
fn tightness_flag_matches_pdg() {
    for (src, expected) in [
        (EXAMPLE_1, false),
        (EXAMPLE_2_P1, true),
        (EXAMPLE_2_P2, true),
        (EXAMPLE_3, true),
    ] {
        let p = parse_program(src).unwrap();
        assert_eq!(is_acyclic(&positive_dependence_graph(&p)), expected);
        let r = analyze(&p, &opts()).unwrap();
        assert_eq!(r.tight, expected);
    }
}
