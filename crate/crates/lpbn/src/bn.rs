//! Boolean-network encoding of a program: one DNF update function per atom,
//! synchronous step, complete fixed-point enumeration with unit propagation,
//! influence-graph construction, and the Clark completion.

use std::collections::BTreeSet;
use std::fmt;

use crate::program::{AtomId, AtomTable, Interpretation, Program};
use crate::sgraph::{Sign, SignedDigraph};

/// A state assigns a Boolean to each variable; identified with the set of
/// true variables, so it shares the interpretation type.
pub type State = Interpretation;

/// One conjunction of a DNF: positive and negated atoms. A term containing
/// an atom in both polarities is kept but can never evaluate to true.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Term {
    pub pos: BTreeSet<AtomId>,
    pub neg: BTreeSet<AtomId>,
}

impl Term {
    pub fn new(
        pos: impl IntoIterator<Item = AtomId>,
        neg: impl IntoIterator<Item = AtomId>,
    ) -> Self {
        Self {
            pos: pos.into_iter().collect(),
            neg: neg.into_iter().collect(),
        }
    }

    pub fn evaluate(&self, state: &State) -> bool {
        self.pos.iter().all(|&a| state.contains(a)) && self.neg.iter().all(|&a| !state.contains(a))
    }

    /// Three-valued evaluation under a partial assignment.
    fn evaluate_partial(&self, assign: &[Option<bool>]) -> Option<bool> {
        let mut undecided = false;
        for &a in &self.pos {
            match assign[a.index()] {
                Some(false) => return Some(false),
                Some(true) => {}
                None => undecided = true,
            }
        }
        for &a in &self.neg {
            match assign[a.index()] {
                Some(true) => return Some(false),
                Some(false) => {}
                None => undecided = true,
            }
        }
        if undecided {
            None
        } else {
            Some(true)
        }
    }

    fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.pos.iter().chain(self.neg.iter()).copied()
    }
}

/// A Boolean function in disjunctive normal form, kept syntactically as
/// written: no term set means constant 0, a literal-free term means
/// constant 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DnfFunction {
    pub terms: Vec<Term>,
}

impl DnfFunction {
    pub fn constant_zero() -> Self {
        Self::default()
    }

    pub fn push_term(&mut self, term: Term) {
        if !self.terms.contains(&term) {
            self.terms.push(term);
        }
    }

    pub fn evaluate(&self, state: &State) -> bool {
        self.terms.iter().any(|t| t.evaluate(state))
    }

    /// Three-valued evaluation: Some(true) once a term is decided true,
    /// Some(false) when every term is decided false.
    pub fn evaluate_partial(&self, assign: &[Option<bool>]) -> Option<bool> {
        let mut all_false = true;
        for term in &self.terms {
            match term.evaluate_partial(assign) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => all_false = false,
            }
        }
        if all_false {
            Some(false)
        } else {
            None
        }
    }

    /// Atoms occurring in the function, in ascending id order.
    pub fn support(&self) -> Vec<AtomId> {
        let set: BTreeSet<AtomId> = self.terms.iter().flat_map(|t| t.atoms()).collect();
        set.into_iter().collect()
    }

    pub fn display_with(&self, atoms: &AtomTable) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|t| {
                if t.pos.is_empty() && t.neg.is_empty() {
                    return "1".to_string();
                }
                t.pos
                    .iter()
                    .map(|&a| atoms.name(a).to_string())
                    .chain(t.neg.iter().map(|&a| format!("not {}", atoms.name(a))))
                    .collect::<Vec<_>>()
                    .join(" & ")
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// The network: var(f) = atom(P), one DNF function per variable.
/// Headless atoms get the constant-0 function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanNetwork {
    atoms: AtomTable,
    functions: Vec<DnfFunction>,
}

impl BooleanNetwork {
    pub fn atoms(&self) -> &AtomTable {
        &self.atoms
    }

    pub fn var_count(&self) -> usize {
        self.functions.len()
    }

    pub fn function(&self, v: AtomId) -> &DnfFunction {
        &self.functions[v.index()]
    }

    pub fn functions(&self) -> &[DnfFunction] {
        &self.functions
    }

    pub fn evaluate(&self, v: AtomId, state: &State) -> bool {
        self.function(v).evaluate(state)
    }

    /// Synchronous step: every variable updated simultaneously.
    pub fn step(&self, state: &State) -> State {
        (0..self.var_count() as u32)
            .map(AtomId)
            .filter(|&v| self.evaluate(v, state))
            .collect()
    }

    pub fn is_fixed_point(&self, state: &State) -> bool {
        (0..self.var_count() as u32)
            .map(AtomId)
            .all(|v| self.evaluate(v, state) == state.contains(v))
    }
}

/// Encodes the program: f_v is the disjunction of the body formulas of the
/// rules with head v, verbatim. No simplification happens here; semantic
/// constancy (a tautological f_v) is only visible to the influence graph.
pub fn encode(program: &Program) -> BooleanNetwork {
    let mut functions = vec![DnfFunction::constant_zero(); program.atom_count()];
    for rule in program.rules() {
        functions[rule.head.index()].push_term(Term::new(
            rule.pbody.iter().copied(),
            rule.nbody.iter().copied(),
        ));
    }
    BooleanNetwork {
        atoms: program.atoms().clone(),
        functions,
    }
}

/// Fixed-point search ran out of budget; `partial` holds the fixed points
/// confirmed before exhaustion (an under-approximation).
#[derive(Clone, Debug)]
pub struct FixedPointBudget {
    pub budget: usize,
    pub partial: Vec<State>,
}

impl fmt::Display for FixedPointBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fixed-point search exceeded its budget of {} nodes ({} fixed points confirmed)",
            self.budget,
            self.partial.len()
        )
    }
}

impl std::error::Error for FixedPointBudget {}

/// Complete fixed-point enumeration by backtracking over variable
/// assignments with unit propagation on the equivalences v <-> f_v:
/// whenever a function's value becomes decided, its variable is forced.
/// Variables are decided in ascending id, 0 before 1; the result comes
/// out sorted by bit-string. `budget` bounds explored search nodes.
pub fn fixed_points(f: &BooleanNetwork, budget: usize) -> Result<Vec<State>, FixedPointBudget> {
    let n = f.var_count();
    let mut assign: Vec<Option<bool>> = vec![None; n];
    let mut found: Vec<State> = Vec::new();
    let mut explored = 0usize;

    fn undo(assign: &mut [Option<bool>], trail: &[usize]) {
        for &v in trail {
            assign[v] = None;
        }
    }

    fn search(
        f: &BooleanNetwork,
        assign: &mut Vec<Option<bool>>,
        found: &mut Vec<State>,
        explored: &mut usize,
        budget: usize,
    ) -> Result<(), ()> {
        *explored += 1;
        if *explored > budget {
            return Err(());
        }
        let n = f.var_count();
        let mut trail: Vec<usize> = Vec::new();
        loop {
            let mut changed = false;
            for v in 0..n {
                if let Some(val) = f.functions[v].evaluate_partial(assign) {
                    match assign[v] {
                        None => {
                            assign[v] = Some(val);
                            trail.push(v);
                            changed = true;
                        }
                        Some(current) if current != val => {
                            undo(assign, &trail);
                            return Ok(()); // conflict: no fixed point below
                        }
                        Some(_) => {}
                    }
                }
            }
            if !changed {
                break;
            }
        }
        match (0..n).find(|&v| assign[v].is_none()) {
            None => {
                found.push(
                    (0..n as u32)
                        .map(AtomId)
                        .filter(|a| assign[a.index()] == Some(true))
                        .collect(),
                );
            }
            Some(v) => {
                for val in [false, true] {
                    assign[v] = Some(val);
                    let r = search(f, assign, found, explored, budget);
                    assign[v] = None;
                    if r.is_err() {
                        undo(assign, &trail);
                        return Err(());
                    }
                }
            }
        }
        undo(assign, &trail);
        Ok(())
    }

    match search(f, &mut assign, &mut found, &mut explored, budget) {
        Ok(()) => {
            found.sort_by(|x, y| x.cmp_bits(y, n));
            found.dedup();
            Ok(found)
        }
        Err(()) => {
            found.sort_by(|x, y| x.cmp_bits(y, n));
            found.dedup();
            Err(FixedPointBudget {
                budget,
                partial: found,
            })
        }
    }
}

/// How to read influences off the functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IgMode {
    /// Exact per the definition, brute-forcing each function's support.
    Semantic,
    /// Literal occurrence; an overapproximation of the semantic graph.
    Syntactic,
}

/// Semantic influence computation hit a function whose support exceeds the
/// configured cap; the caller may fall back to the syntactic mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportCapExceeded {
    pub atom: AtomId,
    pub support: usize,
    pub cap: usize,
}

impl fmt::Display for SupportCapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "function support of atom #{} is {} which exceeds the semantic cap {}",
            self.atom.0, self.support, self.cap
        )
    }
}

impl std::error::Error for SupportCapExceeded {}

/// Influence graph of the network. Semantic mode is exact: an arc
/// (u, v, +) exists iff flipping u from 0 to 1 raises f_v in some state
/// (dually for -); tautologically constant functions thus contribute no
/// arcs. Syntactic mode records literal occurrences instead.
pub fn influence_graph(
    f: &BooleanNetwork,
    mode: IgMode,
    cap: usize,
) -> Result<SignedDigraph, SupportCapExceeded> {
    match mode {
        IgMode::Syntactic => Ok(influence_graph_syntactic(f)),
        IgMode::Semantic => influence_graph_semantic(f, cap),
    }
}

fn influence_graph_syntactic(f: &BooleanNetwork) -> SignedDigraph {
    let mut g = SignedDigraph::new(f.var_count());
    for (v, fun) in f.functions.iter().enumerate() {
        for term in &fun.terms {
            for &u in &term.pos {
                g.add_arc(u.index(), v, Sign::Plus);
            }
            for &u in &term.neg {
                g.add_arc(u.index(), v, Sign::Minus);
            }
        }
    }
    g
}

fn influence_graph_semantic(
    f: &BooleanNetwork,
    cap: usize,
) -> Result<SignedDigraph, SupportCapExceeded> {
    // refuse up-front so no arcs of an oversized instance leak out
    for (v, fun) in f.functions.iter().enumerate() {
        let support = fun.support().len();
        if support > cap {
            return Err(SupportCapExceeded {
                atom: AtomId(v as u32),
                support,
                cap,
            });
        }
    }
    let mut g = SignedDigraph::new(f.var_count());
    for (v, fun) in f.functions.iter().enumerate() {
        let support = fun.support();
        let k = support.len();
        if k == 0 {
            continue;
        }
        let bit_of = |a: AtomId| support.binary_search(&a).expect("atom in support") as u32;
        // per-term masks over the support bits
        let masks: Vec<(u64, u64)> = fun
            .terms
            .iter()
            .map(|t| {
                let p = t.pos.iter().fold(0u64, |m, &a| m | (1 << bit_of(a)));
                let n = t.neg.iter().fold(0u64, |m, &a| m | (1 << bit_of(a)));
                (p, n)
            })
            .collect();
        let value = |m: u64| masks.iter().any(|&(p, n)| m & p == p && m & n == 0);
        for (i, &u) in support.iter().enumerate() {
            let bit = 1u64 << i;
            let mut plus = false;
            let mut minus = false;
            let mut m = 0u64;
            loop {
                if m & bit == 0 {
                    let low = value(m);
                    let high = value(m | bit);
                    plus |= !low && high;
                    minus |= low && !high;
                    if plus && minus {
                        break;
                    }
                }
                m += 1;
                if m == (1u64 << k) {
                    break;
                }
            }
            if plus {
                g.add_arc(u.index(), v, Sign::Plus);
            }
            if minus {
                g.add_arc(u.index(), v, Sign::Minus);
            }
        }
    }
    Ok(g)
}

/// Clark completion cf(P): one equivalence p <-> f_p per atom, with the
/// same right-hand sides as the BN encoding (p <-> 0 for headless atoms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionFormula {
    atoms: AtomTable,
    rhs: Vec<DnfFunction>,
}

impl CompletionFormula {
    pub fn len(&self) -> usize {
        self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhs.is_empty()
    }

    pub fn rhs(&self, p: AtomId) -> &DnfFunction {
        &self.rhs[p.index()]
    }

    /// True iff every equivalence holds in the interpretation.
    pub fn satisfied_by(&self, interp: &Interpretation) -> bool {
        (0..self.rhs.len() as u32)
            .map(AtomId)
            .all(|p| interp.contains(p) == self.rhs[p.index()].evaluate(interp))
    }
}

impl fmt::Display for CompletionFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, fun) in self.rhs.iter().enumerate() {
            writeln!(
                f,
                "{} <-> {}",
                self.atoms.name(AtomId(p as u32)),
                fun.display_with(&self.atoms)
            )?;
        }
        Ok(())
    }
}

pub fn clark_completion(program: &Program) -> CompletionFormula {
    let network = encode(program);
    CompletionFormula {
        atoms: network.atoms,
        rhs: network.functions,
    }
}
