//! Least-fixpoint semantics over quasi-interpretations: purely negative
//! rules obtained by resolving away positive bodies. Stable models of P
//! are exactly the supported models of its least fixpoint, which is how
//! the lfp solving method works.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::bn::{encode, fixed_points, FixedPointBudget};
use crate::program::{AtomId, Interpretation, Program, Rule};

/// A rule with no positive body: `head :- not n1, ..., not nk`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuasiRule {
    pub head: AtomId,
    pub nbody: BTreeSet<AtomId>,
}

impl QuasiRule {
    pub fn new(head: AtomId, nbody: impl IntoIterator<Item = AtomId>) -> Self {
        Self {
            head,
            nbody: nbody.into_iter().collect(),
        }
    }
}

/// Set of quasi-rules; set semantics make the fixpoint iteration terminate.
pub type QuasiProgram = BTreeSet<QuasiRule>;

/// One application of the transformation: every rule of `program` is
/// resolved against every choice of quasi-rules covering its positive
/// body; the resolvent keeps the rule's negative body plus all the chosen
/// quasi-rules' negative bodies. Rules with an empty positive body
/// resolve with the empty choice.
pub fn tp_transform(program: &Program, quasi: &QuasiProgram) -> QuasiProgram {
    tp_transform_bounded(program, quasi, usize::MAX).expect("unbounded transform cannot exhaust")
}

fn tp_transform_bounded(
    program: &Program,
    quasi: &QuasiProgram,
    budget: usize,
) -> Result<QuasiProgram, LfpBudget> {
    let mut by_head: BTreeMap<AtomId, Vec<&QuasiRule>> = BTreeMap::new();
    for q in quasi {
        by_head.entry(q.head).or_default().push(q);
    }
    let mut out = QuasiProgram::new();
    for rule in program.rules() {
        let buckets: Option<Vec<&Vec<&QuasiRule>>> =
            rule.pbody.iter().map(|a| by_head.get(a)).collect();
        let buckets = match buckets {
            Some(b) => b,
            None => continue, // some positive body atom has no quasi-rule yet
        };
        // Accumulate the possible negative-body unions one bucket at a
        // time, deduplicating each step: distinct choices collapse to far
        // fewer distinct unions, which keeps the product tractable.
        let mut unions: BTreeSet<BTreeSet<AtomId>> = BTreeSet::from([rule.nbody.clone()]);
        for bucket in buckets {
            let mut next = BTreeSet::new();
            for base in &unions {
                for q in bucket {
                    let mut merged = base.clone();
                    merged.extend(q.nbody.iter().copied());
                    next.insert(merged);
                    if next.len() > budget {
                        return Err(LfpBudget {
                            budget,
                            partial: out,
                        });
                    }
                }
            }
            unions = next;
        }
        for nbody in unions {
            out.insert(QuasiRule {
                head: rule.head,
                nbody,
            });
            if out.len() > budget {
                return Err(LfpBudget {
                    budget,
                    partial: out,
                });
            }
        }
    }
    Ok(out)
}

/// The quasi-program outgrew its budget; `partial` is what had been
/// accumulated (a subset of the true least fixpoint).
#[derive(Clone, Debug)]
pub struct LfpBudget {
    pub budget: usize,
    pub partial: QuasiProgram,
}

impl fmt::Display for LfpBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "least fixpoint exceeded its quasi-rule budget of {}",
            self.budget
        )
    }
}

impl std::error::Error for LfpBudget {}

/// Iterates the transformation from the empty quasi-interpretation until
/// it stabilizes. The iterates form an increasing chain, which is checked
/// on every step, so the final set is also their union.
pub fn least_fixpoint(program: &Program, budget: usize) -> Result<QuasiProgram, LfpBudget> {
    let mut current = QuasiProgram::new();
    loop {
        let next = tp_transform_bounded(program, &current, budget)?;
        assert!(
            current.iter().all(|q| next.contains(q)),
            "fixpoint iterates must form an increasing chain"
        );
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// Views a quasi-program as an ordinary program over the atom table of
/// `origin` (quasi-rules are rules with empty positive bodies), so it can
/// be printed, graphed, and encoded like any other program.
pub fn quasi_to_program(origin: &Program, quasi: &QuasiProgram) -> Program {
    let rules = quasi
        .iter()
        .map(|q| Rule::new(q.head, [], q.nbody.iter().copied()));
    Program::new(origin.atoms().clone(), rules)
}

/// Failure modes of the lfp solving route.
#[derive(Clone, Debug)]
pub enum LfpSolveError {
    Lfp(LfpBudget),
    Search(FixedPointBudget),
}

impl fmt::Display for LfpSolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LfpSolveError::Lfp(e) => e.fmt(f),
            LfpSolveError::Search(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for LfpSolveError {}

/// Stable models via the fixpoint route: sm(P) equals the supported
/// models of lfp(P), computed as the fixed points of its encoding.
pub fn stable_via_lfp(
    program: &Program,
    lfp_budget: usize,
    search_budget: usize,
) -> Result<Vec<Interpretation>, LfpSolveError> {
    let lfp = least_fixpoint(program, lfp_budget).map_err(LfpSolveError::Lfp)?;
    let as_program = quasi_to_program(program, &lfp);
    fixed_points(&encode(&as_program), search_budget).map_err(LfpSolveError::Search)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;
    use crate::program::sort_models;
    use crate::sgraph::{dependence_graph, has_negative_cycle};

    fn atom(p: &Program, name: &str) -> AtomId {
        p.atoms().lookup(name).unwrap()
    }

    fn quasi(p: &Program, head: &str, nbody: &[&str]) -> QuasiRule {
        QuasiRule::new(atom(p, head), nbody.iter().map(|n| atom(p, n)))
    }

    const P1: &str = "a :- not b. b :- not c. c :- a.";
    const P2: &str = "a :- b. b :- not c. c :- a.";
    const EXAMPLE_1: &str = "a :- b. a :- not b. b :- c. c :- b.";

    #[test]
    fn transform_from_empty() {
        let p = parse_program(P1).unwrap();
        let q = tp_transform(&p, &QuasiProgram::new());
        let expected: QuasiProgram = [quasi(&p, "a", &["b"]), quasi(&p, "b", &["c"])]
            .into_iter()
            .collect();
        assert_eq!(q, expected);
    }

    #[test]
    fn transform_resolves_positive_bodies() {
        let p = parse_program(P1).unwrap();
        let base: QuasiProgram = [quasi(&p, "a", &["b"]), quasi(&p, "b", &["c"])]
            .into_iter()
            .collect();
        let q = tp_transform(&p, &base);
        assert!(q.contains(&quasi(&p, "c", &["b"])));
    }

    #[test]
    fn facts_always_resolve() {
        let p = parse_program("a.").unwrap();
        let q = tp_transform(&p, &QuasiProgram::new());
        assert_eq!(q, [quasi(&p, "a", &[])].into_iter().collect());
    }

    #[test]
    fn least_fixpoint_of_p1() {
        let p = parse_program(P1).unwrap();
        let lfp = least_fixpoint(&p, 10_000).unwrap();
        let expected: QuasiProgram = [
            quasi(&p, "a", &["b"]),
            quasi(&p, "b", &["c"]),
            quasi(&p, "c", &["b"]),
        ]
        .into_iter()
        .collect();
        assert_eq!(lfp, expected);
    }

    #[test]
    fn least_fixpoint_of_acyclic_positive_program() {
        let p = parse_program("a :- b. b.").unwrap();
        let lfp = least_fixpoint(&p, 10_000).unwrap();
        let expected: QuasiProgram = [quasi(&p, "a", &[]), quasi(&p, "b", &[])]
            .into_iter()
            .collect();
        assert_eq!(lfp, expected);
    }

    #[test]
    fn least_fixpoint_of_p2() {
        let p = parse_program(P2).unwrap();
        let lfp = least_fixpoint(&p, 10_000).unwrap();
        let expected: QuasiProgram = [
            quasi(&p, "b", &["c"]),
            quasi(&p, "a", &["c"]),
            quasi(&p, "c", &["c"]),
        ]
        .into_iter()
        .collect();
        assert_eq!(lfp, expected);
    }

    #[test]
    fn budget_exhaustion_on_blowup() {
        // each q_i has two quasi-rules, so the single rule for p resolves
        // into 2^8 distinct quasi-rules
        let mut src = String::new();
        for i in 0..8 {
            src.push_str(&format!("q{i} :- not x{i}. q{i} :- not y{i}. "));
        }
        src.push_str(&format!(
            "p :- {}.",
            (0..8)
                .map(|i| format!("q{i}"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        let p = parse_program(&src).unwrap();
        assert!(least_fixpoint(&p, 40).is_err());
        let lfp = least_fixpoint(&p, 10_000).unwrap();
        assert_eq!(lfp.len(), 16 + 256);
    }

    #[test]
    fn stable_via_lfp_on_worked_examples() {
        let p1 = parse_program(P1).unwrap();
        let mut models = stable_via_lfp(&p1, 10_000, 10_000).unwrap();
        sort_models(&mut models, p1.atom_count());
        let sets: Vec<String> = models.iter().map(|m| m.display_set(p1.atoms())).collect();
        assert_eq!(sets, ["{b}", "{a,c}"]);

        let p2 = parse_program(P2).unwrap();
        assert!(stable_via_lfp(&p2, 10_000, 10_000).unwrap().is_empty());

        let e1 = parse_program(EXAMPLE_1).unwrap();
        let models = stable_via_lfp(&e1, 10_000, 10_000).unwrap();
        let sets: Vec<String> = models.iter().map(|m| m.display_set(e1.atoms())).collect();
        assert_eq!(sets, ["{a}"]);
    }

    #[test]
    fn lfp_prints_as_a_program() {
        let p = parse_program(P2).unwrap();
        let lfp = least_fixpoint(&p, 10_000).unwrap();
        let printed = quasi_to_program(&p, &lfp).to_string();
        let reparsed = parse_program(&printed).unwrap();
        assert_eq!(reparsed.rules().len(), 3);
        assert!(reparsed.rules().iter().all(|r| r.pbody.is_empty()));
    }

    #[test]
    fn negative_cycle_freeness_carries_into_lfp() {
        let sources = [EXAMPLE_1, "a :- b. b :- c. c :- a.", "p :- not q. q :- r."];
        for src in sources {
            let p = parse_program(src).unwrap();
            if !has_negative_cycle(&dependence_graph(&p)).is_no() {
                continue;
            }
            let lfp = least_fixpoint(&p, 10_000).unwrap();
            let p2 = quasi_to_program(&p, &lfp);
            assert!(has_negative_cycle(&dependence_graph(&p2)).is_no(), "{src}");
        }
    }
}
