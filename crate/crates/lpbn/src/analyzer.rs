//! The verdict engine: fires every cycle-structure criterion on a parsed
//! program, combines the resulting sound bounds on the stable-model count
//! by interval intersection, constructs model witnesses where a
//! polynomial construction exists, and optionally cross-checks against
//! exact solving.

use std::collections::BTreeSet;
use std::fmt;

use crate::bn::{encode, fixed_points, FixedPointBudget};
use crate::fixpoint::{stable_via_lfp, LfpBudget, LfpSolveError};
use crate::oracle::{enumerate_stable_bruteforce, SizeCapExceeded};
use crate::program::{AtomId, Interpretation, Program};
use crate::sgraph::{
    balance_bipartition, dependence_graph, has_negative_cycle, has_positive_cycle, is_acyclic,
    is_locally_stratified, is_single_cycle, positive_dependence_graph,
    positive_feedback_vertex_set, strongly_connected_components, CycleWitness, Sign, SignedDigraph,
    Tri,
};

/// An interval [lo, hi] of possible stable-model counts; `hi = None`
/// means unbounded above. Every fired verdict contributes one, and the
/// intersection of sound intervals stays sound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountInterval {
    pub lo: u128,
    pub hi: Option<u128>,
}

impl CountInterval {
    pub fn new(lo: u128, hi: Option<u128>) -> Self {
        debug_assert!(hi.is_none_or(|h| lo <= h));
        Self { lo, hi }
    }

    pub fn exact(k: u128) -> Self {
        Self::new(k, Some(k))
    }

    pub fn at_least(lo: u128) -> Self {
        Self::new(lo, None)
    }

    pub fn at_most(hi: u128) -> Self {
        Self::new(0, Some(hi))
    }

    /// The trivial bound [0, 2^n]; unbounded when 2^n overflows.
    pub fn full(n_atoms: usize) -> Self {
        Self::new(0, 1u128.checked_shl(n_atoms as u32))
    }

    /// None when the intersection is empty.
    pub fn intersect(self, other: Self) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = match (self.hi, other.hi) {
            (None, h) | (h, None) => h,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        match hi {
            Some(h) if h < lo => None,
            _ => Some(Self { lo, hi }),
        }
    }

    pub fn contains(self, count: u128) -> bool {
        count >= self.lo && self.hi.is_none_or(|h| count <= h)
    }

    /// English rendering used in reports: "exactly 1", "at least 2", ...
    pub fn phrase(self) -> String {
        match (self.lo, self.hi) {
            (lo, Some(hi)) if lo == hi => format!("exactly {lo}"),
            (0, Some(hi)) => format!("at most {hi}"),
            (lo, Some(hi)) => format!("between {lo} and {hi}"),
            (lo, None) => format!("at least {lo}"),
        }
    }
}

impl fmt::Display for CountInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(hi) => write!(f, "[{}, {}]", self.lo, hi),
            None => write!(f, "[{}, inf)", self.lo),
        }
    }
}

/// The criterion behind a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremTag {
    /// pdg acyclic: stable models coincide with supported models.
    Fages,
    /// dg acyclic: exactly one stable model.
    Acyclic,
    /// dg is one positive cycle: two models (one, the empty set, if all
    /// arcs are positive).
    SinglePosCycle,
    /// dg is one negative cycle: no stable model.
    SingleNegCycle,
    /// no positive cycle: at most one stable model.
    NoPosCycle,
    /// no positive cycle, no fact, every atom headed: no stable model.
    NoPosCycleNoFact,
    /// any PFVS U bounds the count by 2^|U|.
    PfvsBound,
    /// no negative cycle: at least one stable model.
    NoNegCycle,
    /// no cycle carries a negative arc: exactly one stable model.
    LocallyStratified,
    /// strongly connected, no negative cycle, pdg acyclic: a
    /// complementary pair of stable models exists and is constructed.
    ComplementaryPair,
}

impl TheoremTag {
    pub fn name(self) -> &'static str {
        match self {
            TheoremTag::Fages => "Fages",
            TheoremTag::Acyclic => "Acyclic",
            TheoremTag::SinglePosCycle => "SinglePosCycle",
            TheoremTag::SingleNegCycle => "SingleNegCycle",
            TheoremTag::NoPosCycle => "NoPosCycle",
            TheoremTag::NoPosCycleNoFact => "NoPosCycleNoFact",
            TheoremTag::PfvsBound => "PfvsBound",
            TheoremTag::NoNegCycle => "NoNegCycle",
            TheoremTag::LocallyStratified => "LocallyStratified",
            TheoremTag::ComplementaryPair => "ComplementaryPair",
        }
    }

    pub const ALL: [TheoremTag; 10] = [
        TheoremTag::Fages,
        TheoremTag::Acyclic,
        TheoremTag::SinglePosCycle,
        TheoremTag::SingleNegCycle,
        TheoremTag::NoPosCycle,
        TheoremTag::NoPosCycleNoFact,
        TheoremTag::PfvsBound,
        TheoremTag::NoNegCycle,
        TheoremTag::LocallyStratified,
        TheoremTag::ComplementaryPair,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    Fired,
    NotApplicable,
    /// A search budget ran out before the precondition could be decided.
    Unknown,
}

impl VerdictStatus {
    pub fn name(self) -> &'static str {
        match self {
            VerdictStatus::Fired => "fired",
            VerdictStatus::NotApplicable => "not-applicable",
            VerdictStatus::Unknown => "unknown",
        }
    }
}

/// One criterion's outcome, with whatever evidence it used: a cycle
/// witness, the PFVS, the balance bipartition, or constructed models.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub tag: TheoremTag,
    pub status: VerdictStatus,
    pub interval: Option<CountInterval>,
    pub witness_models: Vec<Interpretation>,
    pub cycle: Option<CycleWitness>,
    pub pfvs: Option<BTreeSet<usize>>,
    pub bipartition: Option<(BTreeSet<usize>, BTreeSet<usize>)>,
}

impl Verdict {
    fn not_applicable(tag: TheoremTag) -> Self {
        Self {
            tag,
            status: VerdictStatus::NotApplicable,
            interval: None,
            witness_models: Vec::new(),
            cycle: None,
            pfvs: None,
            bipartition: None,
        }
    }

    fn unknown(tag: TheoremTag) -> Self {
        Self {
            status: VerdictStatus::Unknown,
            ..Self::not_applicable(tag)
        }
    }

    fn fired(tag: TheoremTag, interval: Option<CountInterval>) -> Self {
        Self {
            status: VerdictStatus::Fired,
            interval,
            ..Self::not_applicable(tag)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ProgramStats {
    pub atoms: usize,
    pub rules: usize,
    pub facts: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct GraphStats {
    pub vertices: usize,
    pub positive_arcs: usize,
    pub negative_arcs: usize,
    pub scc_count: usize,
    pub min_in_degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    FixedpointFilter,
    Lfp,
    BruteForce,
}

impl SolveMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::FixedpointFilter => "fixedpoint-filter",
            SolveMethod::Lfp => "lfp",
            SolveMethod::BruteForce => "bruteforce",
        }
    }
}

/// Exact models attached to a report, tagged with how they were computed.
#[derive(Clone, Debug)]
pub struct ModelSet {
    pub method: SolveMethod,
    pub models: Vec<Interpretation>,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Simple-cycle enumeration budget for positive-cycle detection.
    pub cycle_budget: usize,
    /// Node budget for fixed-point search.
    pub search_budget: usize,
    /// Quasi-rule budget for the least fixpoint.
    pub lfp_budget: usize,
    /// Attach exact models when the program is small enough.
    pub solve: bool,
    /// Atom-count cap for exact solving.
    pub solve_cap: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            cycle_budget: 1_000_000,
            search_budget: 1_000_000,
            lfp_budget: 1_000_000,
            solve: true,
            solve_cap: 20,
        }
    }
}

/// Full analysis output. `combined` is the intersection of every fired
/// interval with the trivial [0, 2^n] bound. `exhausted` marks reports
/// degraded by an exhausted budget (unknown verdicts or skipped solving).
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub program: ProgramStats,
    pub graph: GraphStats,
    pub tight: bool,
    pub verdicts: Vec<Verdict>,
    pub combined: CountInterval,
    pub models: Option<ModelSet>,
    pub exhausted: bool,
}

impl AnalysisReport {
    pub fn verdict(&self, tag: TheoremTag) -> &Verdict {
        self.verdicts
            .iter()
            .find(|v| v.tag == tag)
            .expect("every tag is reported")
    }
}

/// An impossible combination was derived: empty combined interval, or an
/// exact model count outside it. Always an implementation bug, never a
/// property of the input program.
#[derive(Clone, Debug)]
pub struct SoundnessError {
    pub detail: String,
}

impl fmt::Display for SoundnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "internal soundness failure: {}", self.detail)
    }
}

impl std::error::Error for SoundnessError {}

/// Why `construct_complementary_pair` returned nothing.
#[derive(Clone, Debug)]
pub enum PairError {
    /// Preconditions do not hold for this program's graph.
    Inapplicable(&'static str),
    Soundness(SoundnessError),
}

impl fmt::Display for PairError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairError::Inapplicable(why) => write!(f, "not applicable: {why}"),
            PairError::Soundness(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for PairError {}

fn pair_preconditions(program: &Program, dg: &SignedDigraph) -> Result<(), &'static str> {
    if program.atom_count() == 0 || dg.arc_count() == 0 {
        return Err("graph has no arc");
    }
    // a fact adds a constant-1 disjunct without adding an arc, so the
    // update functions are no longer pinned by the graph structure and
    // the constructed classes need not be stable ({a :- not b. b :- not
    // a. a.} meets every graph precondition but only one class is stable)
    if program.fact_count() > 0 {
        return Err("program has a fact");
    }
    if strongly_connected_components(dg).len() != 1 {
        return Err("graph is not strongly connected");
    }
    if !has_negative_cycle(dg).is_no() {
        return Err("graph has a negative cycle");
    }
    if !is_acyclic(&positive_dependence_graph(program)) {
        return Err("positive dependence graph has a cycle");
    }
    Ok(())
}

/// When dg(P) is strongly connected with at least one arc, free of
/// negative cycles, and pdg(P) is acyclic, the balance bipartition gives
/// two disjoint stable models covering atom(P). Both are verified before
/// being returned; no enumeration is involved.
pub fn construct_complementary_pair(
    program: &Program,
) -> Result<(Interpretation, Interpretation), PairError> {
    let dg = dependence_graph(program);
    pair_preconditions(program, &dg).map_err(PairError::Inapplicable)?;
    let (plus, minus) = balance_bipartition(&dg).map_err(|e| {
        PairError::Soundness(SoundnessError {
            detail: format!("bipartition refused after preconditions held: {e}"),
        })
    })?;
    let a: Interpretation = plus.iter().map(|&v| AtomId(v as u32)).collect();
    let b: Interpretation = minus.iter().map(|&v| AtomId(v as u32)).collect();
    for (name, m) in [("first", &a), ("second", &b)] {
        if !crate::program::is_stable_model(program, m) {
            return Err(PairError::Soundness(SoundnessError {
                detail: format!(
                    "{name} class of the bipartition is not a stable model: {}",
                    m.display_set(program.atoms())
                ),
            }));
        }
    }
    Ok((a, b))
}

/// Solving failed under a budget or cap.
#[derive(Clone, Debug)]
pub enum SolveError {
    Search(FixedPointBudget),
    Lfp(LfpBudget),
    OracleCap(SizeCapExceeded),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Search(e) => e.fmt(f),
            SolveError::Lfp(e) => e.fmt(f),
            SolveError::OracleCap(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for SolveError {}

/// Computes the stable models by the chosen route. All routes agree;
/// the fixed-point route skips the stability filter on tight programs,
/// where fixed points already are the stable models.
pub fn solve(
    program: &Program,
    method: SolveMethod,
    options: &AnalyzeOptions,
) -> Result<Vec<Interpretation>, SolveError> {
    match method {
        SolveMethod::FixedpointFilter => {
            let fps = fixed_points(&encode(program), options.search_budget)
                .map_err(SolveError::Search)?;
            let tight = is_acyclic(&positive_dependence_graph(program));
            if tight {
                Ok(fps)
            } else {
                Ok(fps
                    .into_iter()
                    .filter(|s| crate::program::is_stable_model(program, s))
                    .collect())
            }
        }
        SolveMethod::Lfp => stable_via_lfp(program, options.lfp_budget, options.search_budget)
            .map_err(|e| match e {
                LfpSolveError::Lfp(b) => SolveError::Lfp(b),
                LfpSolveError::Search(b) => SolveError::Search(b),
            }),
        SolveMethod::BruteForce => {
            enumerate_stable_bruteforce(program).map_err(SolveError::OracleCap)
        }
    }
}

/// Walks the unique cycle of a single-cycle graph, for evidence.
fn walk_single_cycle(g: &SignedDigraph) -> CycleWitness {
    let mut vertices = vec![0usize];
    let mut signs = Vec::new();
    let mut v = 0usize;
    loop {
        let (next, s) = g.arcs_from(v).next().expect("single cycle has out-arcs");
        vertices.push(next);
        signs.push(s);
        v = next;
        if v == 0 {
            return CycleWitness::new(vertices, signs);
        }
    }
}

/// Runs every criterion in order and combines the fired intervals.
pub fn analyze(
    program: &Program,
    options: &AnalyzeOptions,
) -> Result<AnalysisReport, SoundnessError> {
    let n = program.atom_count();
    let dg = dependence_graph(program);
    let pdg = positive_dependence_graph(program);
    let sccs = strongly_connected_components(&dg);
    let tight = is_acyclic(&pdg);
    let mut exhausted = false;

    let program_stats = ProgramStats {
        atoms: n,
        rules: program.rules().len(),
        facts: program.fact_count(),
    };
    let graph_stats = GraphStats {
        vertices: dg.vertex_count(),
        positive_arcs: dg.count_by_sign(Sign::Plus),
        negative_arcs: dg.count_by_sign(Sign::Minus),
        scc_count: sccs.len(),
        min_in_degree: dg.min_in_degree(),
    };

    let mut verdicts: Vec<Verdict> = Vec::new();

    // Fages: tightness carries no count by itself
    verdicts.push(if tight {
        Verdict::fired(TheoremTag::Fages, None)
    } else {
        Verdict::not_applicable(TheoremTag::Fages)
    });

    // acyclic dependence graph: exactly one stable model
    verdicts.push(if is_acyclic(&dg) {
        Verdict::fired(TheoremTag::Acyclic, Some(CountInterval::exact(1)))
    } else {
        Verdict::not_applicable(TheoremTag::Acyclic)
    });

    // The whole graph is one simple cycle. A fact would give its head a
    // constant-1 disjunct without contributing an arc, so the functions
    // would no longer be single literals and neither count holds
    // ({a :- not a. a.} has a negative-cycle graph and one stable model);
    // both verdicts therefore require a fact-free program.
    match is_single_cycle(&dg).filter(|_| program.fact_count() == 0) {
        Some(Sign::Plus) => {
            let cycle = walk_single_cycle(&dg);
            if dg.count_by_sign(Sign::Minus) > 0 {
                let mut v =
                    Verdict::fired(TheoremTag::SinglePosCycle, Some(CountInterval::exact(2)));
                v.cycle = Some(cycle);
                verdicts.push(v);
            } else {
                // a purely positive program: its unique stable model is empty
                let mut v =
                    Verdict::fired(TheoremTag::SinglePosCycle, Some(CountInterval::exact(1)));
                v.witness_models = vec![Interpretation::empty()];
                v.cycle = Some(cycle);
                verdicts.push(v);
            }
            verdicts.push(Verdict::not_applicable(TheoremTag::SingleNegCycle));
        }
        Some(Sign::Minus) => {
            verdicts.push(Verdict::not_applicable(TheoremTag::SinglePosCycle));
            let mut v = Verdict::fired(TheoremTag::SingleNegCycle, Some(CountInterval::exact(0)));
            v.cycle = Some(walk_single_cycle(&dg));
            verdicts.push(v);
        }
        None => {
            verdicts.push(Verdict::not_applicable(TheoremTag::SinglePosCycle));
            verdicts.push(Verdict::not_applicable(TheoremTag::SingleNegCycle));
        }
    }

    // positive-cycle absence, with the fact-free side condition
    match has_positive_cycle(&dg, options.cycle_budget) {
        Tri::No => {
            verdicts.push(Verdict::fired(
                TheoremTag::NoPosCycle,
                Some(CountInterval::at_most(1)),
            ));
            // the side condition needs a nonempty program: the empty
            // program has the stable model {} despite passing the
            // syntactic checks vacuously
            let side = n >= 1 && program.fact_count() == 0 && program.all_atoms_headed();
            verdicts.push(if side {
                Verdict::fired(TheoremTag::NoPosCycleNoFact, Some(CountInterval::exact(0)))
            } else {
                Verdict::not_applicable(TheoremTag::NoPosCycleNoFact)
            });
        }
        Tri::Yes(w) => {
            let mut v = Verdict::not_applicable(TheoremTag::NoPosCycle);
            v.cycle = Some(w);
            verdicts.push(v);
            verdicts.push(Verdict::not_applicable(TheoremTag::NoPosCycleNoFact));
        }
        Tri::Unknown => {
            exhausted = true;
            verdicts.push(Verdict::unknown(TheoremTag::NoPosCycle));
            verdicts.push(Verdict::unknown(TheoremTag::NoPosCycleNoFact));
        }
    }

    // PFVS bound: always sound, the fallback keeps it fired
    {
        let pfvs = positive_feedback_vertex_set(&dg, options.cycle_budget);
        let hi = 1u128.checked_shl(pfvs.len() as u32);
        let mut v = Verdict::fired(TheoremTag::PfvsBound, Some(CountInterval::new(0, hi)));
        v.pfvs = Some(pfvs);
        verdicts.push(v);
    }

    // negative-cycle absence: existence of a stable model
    let neg = has_negative_cycle(&dg);
    match &neg {
        Tri::No => verdicts.push(Verdict::fired(
            TheoremTag::NoNegCycle,
            Some(CountInterval::at_least(1)),
        )),
        Tri::Yes(w) => {
            let mut v = Verdict::not_applicable(TheoremTag::NoNegCycle);
            v.cycle = Some(w.clone());
            verdicts.push(v);
        }
        Tri::Unknown => unreachable!("negative-cycle detection is exact"),
    }

    verdicts.push(if is_locally_stratified(program) {
        Verdict::fired(TheoremTag::LocallyStratified, Some(CountInterval::exact(1)))
    } else {
        Verdict::not_applicable(TheoremTag::LocallyStratified)
    });

    // complementary pair: a constructive lower bound of two
    match pair_preconditions(program, &dg) {
        Ok(()) => {
            let (a, b) = construct_complementary_pair(program).map_err(|e| match e {
                PairError::Soundness(s) => s,
                PairError::Inapplicable(w) => SoundnessError {
                    detail: format!("pair construction refused after preconditions held: {w}"),
                },
            })?;
            let mut v = Verdict::fired(
                TheoremTag::ComplementaryPair,
                Some(CountInterval::at_least(2)),
            );
            let mut models = vec![a, b];
            crate::program::sort_models(&mut models, n);
            v.witness_models = models;
            v.bipartition = balance_bipartition(&dg).ok();
            verdicts.push(v);
        }
        Err(_) => verdicts.push(Verdict::not_applicable(TheoremTag::ComplementaryPair)),
    }

    // combine: intersection of all fired intervals with the trivial bound
    let mut combined = CountInterval::full(n);
    for v in &verdicts {
        if let (VerdictStatus::Fired, Some(iv)) = (v.status, v.interval) {
            combined = combined.intersect(iv).ok_or_else(|| SoundnessError {
                detail: format!(
                    "empty combined interval after {}: {} vs {}",
                    v.tag.name(),
                    combined,
                    iv
                ),
            })?;
        }
    }

    // exact solving, cross-checked against the interval
    let mut models = None;
    if options.solve && n <= options.solve_cap {
        match solve(program, SolveMethod::FixedpointFilter, options) {
            Ok(found) => {
                if !combined.contains(found.len() as u128) {
                    return Err(SoundnessError {
                        detail: format!(
                            "exact count {} outside combined interval {}",
                            found.len(),
                            combined
                        ),
                    });
                }
                models = Some(ModelSet {
                    method: SolveMethod::FixedpointFilter,
                    models: found,
                });
            }
            Err(_) => exhausted = true,
        }
    }

    Ok(AnalysisReport {
        program: program_stats,
        graph: graph_stats,
        tight,
        verdicts,
        combined,
        models,
        exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    const EXAMPLE_1: &str = "a :- b. a :- not b. b :- c. c :- b.";
    const P1: &str = "a :- not b. b :- not c. c :- a.";
    const P2: &str = "a :- b. b :- not c. c :- a.";
    const EXAMPLE_3: &str = "a :- not b. b :- not a. b :- not c. c :- not b.";

    fn sets(p: &Program, models: &[Interpretation]) -> Vec<String> {
        models.iter().map(|m| m.display_set(p.atoms())).collect()
    }

    #[test]
    fn interval_algebra() {
        let a = CountInterval::new(1, None);
        let b = CountInterval::at_most(2);
        assert_eq!(a.intersect(b), Some(CountInterval::new(1, Some(2))));
        assert_eq!(
            CountInterval::exact(0).intersect(CountInterval::exact(1)),
            None
        );
        assert!(CountInterval::full(3).contains(8));
        assert!(!CountInterval::full(3).contains(9));
        assert_eq!(CountInterval::exact(0).phrase(), "exactly 0");
        assert_eq!(CountInterval::at_least(1).phrase(), "at least 1");
    }

    #[test]
    fn analyze_p1_single_positive_cycle() {
        let p = parse_program(P1).unwrap();
        let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
        let v = r.verdict(TheoremTag::SinglePosCycle);
        assert_eq!(v.status, VerdictStatus::Fired);
        assert_eq!(v.interval, Some(CountInterval::exact(2)));
        assert_eq!(r.combined, CountInterval::exact(2));
        let models = &r.models.as_ref().unwrap().models;
        assert_eq!(sets(&p, models), ["{b}", "{a,c}"]);
    }

    #[test]
    fn analyze_p2_single_negative_cycle() {
        let p = parse_program(P2).unwrap();
        let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
        let v = r.verdict(TheoremTag::SingleNegCycle);
        assert_eq!(v.status, VerdictStatus::Fired);
        assert_eq!(v.interval, Some(CountInterval::exact(0)));
        assert_eq!(r.combined, CountInterval::exact(0));
        assert!(r.models.as_ref().unwrap().models.is_empty());
        // the fact-free side condition also pins zero
        assert_eq!(
            r.verdict(TheoremTag::NoPosCycleNoFact).status,
            VerdictStatus::Fired
        );
    }

    #[test]
    fn analyze_example_1() {
        let p = parse_program(EXAMPLE_1).unwrap();
        let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
        assert!(!r.tight, "pdg has the cycle b <-> c");
        assert_eq!(
            r.verdict(TheoremTag::Fages).status,
            VerdictStatus::NotApplicable
        );
        assert_eq!(
            r.verdict(TheoremTag::NoNegCycle).status,
            VerdictStatus::Fired
        );
        assert_eq!(
            r.verdict(TheoremTag::LocallyStratified).status,
            VerdictStatus::Fired
        );
        assert_eq!(r.combined, CountInterval::exact(1));
        assert_eq!(sets(&p, &r.models.as_ref().unwrap().models), ["{a}"]);
    }

    #[test]
    fn analyze_empty_program() {
        let p = parse_program("").unwrap();
        let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.combined, CountInterval::exact(1));
        // the side condition must not fire vacuously on the empty program
        assert_eq!(
            r.verdict(TheoremTag::NoPosCycleNoFact).status,
            VerdictStatus::NotApplicable
        );
        let models = &r.models.as_ref().unwrap().models;
        assert_eq!(models.len(), 1);
        assert!(models[0].is_empty());
    }

    #[test]
    fn analyze_all_positive_single_cycle() {
        let p = parse_program("a :- b. b :- a.").unwrap();
        let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
        let v = r.verdict(TheoremTag::SinglePosCycle);
        assert_eq!(v.interval, Some(CountInterval::exact(1)));
        assert_eq!(v.witness_models, vec![Interpretation::empty()]);
        assert_eq!(sets(&p, &r.models.as_ref().unwrap().models), ["{}"]);
    }

    #[test]
    fn complementary_pair_on_worked_examples() {
        let p3 = parse_program(EXAMPLE_3).unwrap();
        let (a, b) = construct_complementary_pair(&p3).unwrap();
        let pair: BTreeSet<String> = [&a, &b].iter().map(|m| m.display_set(p3.atoms())).collect();
        assert_eq!(
            pair,
            BTreeSet::from(["{b}".to_string(), "{a,c}".to_string()])
        );

        let p1 = parse_program(P1).unwrap();
        let (a, b) = construct_complementary_pair(&p1).unwrap();
        let union: usize = a.len() + b.len();
        assert_eq!(union, p1.atom_count());
        assert!(a.iter().all(|atom| !b.contains(atom)));

        let e1 = parse_program(EXAMPLE_1).unwrap();
        assert!(matches!(
            construct_complementary_pair(&e1),
            Err(PairError::Inapplicable(_))
        ));
    }

    /// Complementary-pair preconditions guarantee at least two stable
    /// models, not exactly two: this program satisfies all of them and
    /// has three.
    #[test]
    fn complementary_pair_is_a_lower_bound_only() {
        let p = parse_program("a :- not b. a :- not d. b :- not a. c :- not d, not b. d :- not c.")
            .unwrap();
        let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
        let v = r.verdict(TheoremTag::ComplementaryPair);
        assert_eq!(v.status, VerdictStatus::Fired);
        assert_eq!(v.witness_models.len(), 2);
        let models = &r.models.as_ref().unwrap().models;
        assert_eq!(models.len(), 3, "three stable models exist");
        assert_eq!(sets(&p, models), ["{b,d}", "{a,c}", "{a,d}"]);
        assert!(r.combined.contains(3));
        // the constructed pair is among them
        for w in &v.witness_models {
            assert!(models.contains(w));
        }
    }

    /// Facts void the single-cycle counting arguments: the head gets a
    /// constant-true disjunct that no arc reflects.
    #[test]
    fn single_cycle_verdicts_require_fact_free_programs() {
        // graph is a negative self-loop cycle, yet {a} is stable
        let p = parse_program("a :- not a. a.").unwrap();
        let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
        assert_eq!(
            r.verdict(TheoremTag::SingleNegCycle).status,
            VerdictStatus::NotApplicable
        );
        assert_eq!(sets(&p, &r.models.as_ref().unwrap().models), ["{a}"]);
        assert!(r.combined.contains(1));
    }

    /// Same gap for the pair construction: all graph preconditions hold
    /// but the minus class is not stable once a fact forces its atom.
    #[test]
    fn complementary_pair_requires_fact_free_programs() {
        let p = parse_program("a :- not b. b :- not a. a.").unwrap();
        assert!(matches!(
            construct_complementary_pair(&p),
            Err(PairError::Inapplicable(_))
        ));
        let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
        assert_eq!(
            r.verdict(TheoremTag::ComplementaryPair).status,
            VerdictStatus::NotApplicable
        );
        // the graph alone is a single positive cycle, but only one model exists
        assert_eq!(
            r.verdict(TheoremTag::SinglePosCycle).status,
            VerdictStatus::NotApplicable
        );
        assert_eq!(sets(&p, &r.models.as_ref().unwrap().models), ["{a}"]);
        assert!(r.combined.contains(1));
    }

    #[test]
    fn solve_methods_agree_on_examples() {
        for src in [EXAMPLE_1, P1, P2, EXAMPLE_3, "", "a. b :- not a."] {
            let p = parse_program(src).unwrap();
            let opts = AnalyzeOptions::default();
            let fp = solve(&p, SolveMethod::FixedpointFilter, &opts).unwrap();
            let lfp = solve(&p, SolveMethod::Lfp, &opts).unwrap();
            let bf = solve(&p, SolveMethod::BruteForce, &opts).unwrap();
            assert_eq!(fp, lfp, "{src}");
            assert_eq!(fp, bf, "{src}");
        }
    }

    #[test]
    fn solve_fixedpoint_filter_drops_unstable_fixed_points() {
        let p = parse_program(EXAMPLE_1).unwrap();
        let models = solve(
            &p,
            SolveMethod::FixedpointFilter,
            &AnalyzeOptions::default(),
        )
        .unwrap();
        assert_eq!(sets(&p, &models), ["{a}"]);
    }

    #[test]
    fn solve_empty_program() {
        let p = parse_program("").unwrap();
        for m in [
            SolveMethod::FixedpointFilter,
            SolveMethod::Lfp,
            SolveMethod::BruteForce,
        ] {
            let models = solve(&p, m, &AnalyzeOptions::default()).unwrap();
            assert_eq!(models, vec![Interpretation::empty()]);
        }
    }

    #[test]
    fn unknown_detection_degrades_gracefully() {
        // two negative triangles sharing an atom; budget 1 cannot finish
        let src = "x :- v. y :- x. v :- not y. z :- v. w :- z. v :- not w.";
        let p = parse_program(src).unwrap();
        let opts = AnalyzeOptions {
            cycle_budget: 1,
            ..AnalyzeOptions::default()
        };
        let r = analyze(&p, &opts).unwrap();
        assert_eq!(
            r.verdict(TheoremTag::NoPosCycle).status,
            VerdictStatus::Unknown
        );
        assert!(r.exhausted);
        // PFVS falls back to a full feedback vertex set and stays sound
        assert_eq!(
            r.verdict(TheoremTag::PfvsBound).status,
            VerdictStatus::Fired
        );
        let exact = r.models.as_ref().unwrap().models.len() as u128;
        assert!(r.combined.contains(exact));
    }
}
