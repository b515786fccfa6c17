//! Ground normal logic programs and their model-theoretic semantics:
//! reduct, least Herbrand model, stable / supported / Herbrand model checks.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// Dense atom identifier. Ids are assigned in order of first textual
/// occurrence, which also fixes bit positions in state strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Interning table mapping atom names to dense ids and back.
#[derive(Clone, Debug, Default)]
pub struct AtomTable {
    names: Vec<String>,
    index: HashMap<String, AtomId>,
}

impl AtomTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id for `name`, interning it if unseen.
    pub fn intern(&mut self, name: &str) -> AtomId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = AtomId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn lookup(&self, name: &str) -> Option<AtomId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: AtomId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = AtomId> {
        (0..self.names.len() as u32).map(AtomId)
    }
}

impl PartialEq for AtomTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for AtomTable {}

/// One rule `head :- pbody, not nbody`. Bodies are sets: duplicate
/// literals are merged at construction. A rule with both bodies empty
/// is a fact.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: AtomId,
    pub pbody: BTreeSet<AtomId>,
    pub nbody: BTreeSet<AtomId>,
}

impl Rule {
    pub fn new(
        head: AtomId,
        pbody: impl IntoIterator<Item = AtomId>,
        nbody: impl IntoIterator<Item = AtomId>,
    ) -> Self {
        Self {
            head,
            pbody: pbody.into_iter().collect(),
            nbody: nbody.into_iter().collect(),
        }
    }

    pub fn fact(head: AtomId) -> Self {
        Self::new(head, [], [])
    }

    /// A fact has an empty body (both parts).
    pub fn is_fact(&self) -> bool {
        self.pbody.is_empty() && self.nbody.is_empty()
    }
}

/// A ground normal logic program: an interned atom table plus a
/// duplicate-free rule list in first-occurrence order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Program {
    atoms: AtomTable,
    rules: Vec<Rule>,
}

impl Program {
    /// Builds a program, collapsing duplicate rules (first occurrence wins).
    /// Every atom referenced by a rule must already be in `atoms`.
    pub fn new(atoms: AtomTable, rules: impl IntoIterator<Item = Rule>) -> Self {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for rule in rules {
            debug_assert!(rule.head.index() < atoms.len());
            debug_assert!(rule.pbody.iter().all(|a| a.index() < atoms.len()));
            debug_assert!(rule.nbody.iter().all(|a| a.index() < atoms.len()));
            if seen.insert(rule.clone()) {
                kept.push(rule);
            }
        }
        Self { atoms, rules: kept }
    }

    pub fn atoms(&self) -> &AtomTable {
        &self.atoms
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Number of atoms in atom(P).
    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn fact_count(&self) -> usize {
        self.rules.iter().filter(|r| r.is_fact()).count()
    }

    /// True iff every atom appears in the head of some rule.
    pub fn all_atoms_headed(&self) -> bool {
        let mut headed = vec![false; self.atom_count()];
        for r in &self.rules {
            headed[r.head.index()] = true;
        }
        headed.into_iter().all(|h| h)
    }

    /// True iff nbody(r) is empty for every rule.
    pub fn is_positive(&self) -> bool {
        self.rules.iter().all(|r| r.nbody.is_empty())
    }
}

impl fmt::Display for Program {
    /// One rule per line. Body literals print in ascending atom-id order
    /// (positive before negative for the same atom), which makes
    /// parse -> print -> parse the identity on programs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            write!(f, "{}", self.atoms.name(rule.head))?;
            let mut lits: Vec<(AtomId, bool)> = rule
                .pbody
                .iter()
                .map(|&a| (a, false))
                .chain(rule.nbody.iter().map(|&a| (a, true)))
                .collect();
            lits.sort();
            for (i, (atom, neg)) in lits.iter().enumerate() {
                write!(f, "{}", if i == 0 { " :- " } else { ", " })?;
                if *neg {
                    write!(f, "not ")?;
                }
                write!(f, "{}", self.atoms.name(*atom))?;
            }
            writeln!(f, ".")?;
        }
        Ok(())
    }
}

/// A set of atoms, identified with the truth assignment that makes
/// exactly its members true.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Interpretation {
    members: BTreeSet<AtomId>,
}

impl Interpretation {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, atom: AtomId) -> bool {
        self.members.contains(&atom)
    }

    pub fn insert(&mut self, atom: AtomId) {
        self.members.insert(atom);
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.members.iter().copied()
    }

    /// Decodes the low `n` bits of `mask` (bit i = atom i).
    pub fn from_bitmask(mask: u64, n: usize) -> Self {
        assert!(n <= 64);
        (0..n as u32)
            .filter(|&i| mask & (1 << i) != 0)
            .map(AtomId)
            .collect()
    }

    /// Encodes atoms 0..n as bits (atom i = bit i); requires n <= 64.
    pub fn to_bitmask(&self, n: usize) -> u64 {
        assert!(n <= 64);
        self.members.iter().fold(0u64, |m, a| {
            debug_assert!(a.index() < n);
            m | (1 << a.0)
        })
    }

    /// Bit-string over atoms 0..n, atom 0 first: Example-style "100".
    pub fn to_bitstring(&self, n: usize) -> String {
        (0..n as u32)
            .map(|i| if self.contains(AtomId(i)) { '1' } else { '0' })
            .collect()
    }

    /// Set notation with atom names: "{a,c}" ("{}" when empty).
    pub fn display_set(&self, atoms: &AtomTable) -> String {
        let names: Vec<&str> = self.members.iter().map(|&a| atoms.name(a)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Bit-string order: compare membership of atom 0, then 1, ...
    /// (the order fixed-point and model listings are sorted in).
    pub fn cmp_bits(&self, other: &Self, n: usize) -> std::cmp::Ordering {
        for i in 0..n as u32 {
            let (x, y) = (self.contains(AtomId(i)), other.contains(AtomId(i)));
            if x != y {
                return if x {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Less
                };
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl FromIterator<AtomId> for Interpretation {
    fn from_iter<T: IntoIterator<Item = AtomId>>(iter: T) -> Self {
        Self {
            members: iter.into_iter().collect(),
        }
    }
}

/// Sorts interpretations in bit-string order, in place.
pub fn sort_models(models: &mut [Interpretation], n: usize) {
    models.sort_by(|x, y| x.cmp_bits(y, n));
}

/// A rule of a positive program: no negative body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRule {
    pub head: AtomId,
    pub body: Vec<AtomId>,
}

/// A negation-free program, as produced by the reduct. It remembers the
/// atom universe of the program it came from so derivations can be
/// indexed densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveProgram {
    n_atoms: usize,
    rules: Vec<PositiveRule>,
}

impl PositiveProgram {
    pub fn new(n_atoms: usize, rules: Vec<PositiveRule>) -> Self {
        debug_assert!(rules
            .iter()
            .all(|r| r.head.index() < n_atoms && r.body.iter().all(|a| a.index() < n_atoms)));
        Self { n_atoms, rules }
    }

    pub fn rules(&self) -> &[PositiveRule] {
        &self.rules
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }
}

/// The reduct P^I: drop every rule whose negative body meets I, strip
/// the negative bodies from the rest.
pub fn reduct(program: &Program, interp: &Interpretation) -> PositiveProgram {
    let rules = program
        .rules()
        .iter()
        .filter(|r| r.nbody.iter().all(|&a| !interp.contains(a)))
        .map(|r| PositiveRule {
            head: r.head,
            body: r.pbody.iter().copied().collect(),
        })
        .collect();
    PositiveProgram::new(program.atom_count(), rules)
}

/// Least Herbrand model of a positive program, by counter-based forward
/// chaining: each rule fires once all its body atoms are derived.
/// Linear in the total program size.
pub fn least_model(program: &PositiveProgram) -> Interpretation {
    let n = program.n_atoms();
    let mut derived = vec![false; n];
    // rules watching each atom, and per-rule count of underived body atoms
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut pending: Vec<usize> = Vec::with_capacity(program.rules().len());
    let mut queue: Vec<AtomId> = Vec::new();

    for (ri, rule) in program.rules().iter().enumerate() {
        pending.push(rule.body.len());
        for &a in &rule.body {
            watchers[a.index()].push(ri);
        }
        if rule.body.is_empty() && !derived[rule.head.index()] {
            derived[rule.head.index()] = true;
            queue.push(rule.head);
        }
    }
    while let Some(atom) = queue.pop() {
        for &ri in &watchers[atom.index()] {
            pending[ri] -= 1;
            if pending[ri] == 0 {
                let head = program.rules()[ri].head;
                if !derived[head.index()] {
                    derived[head.index()] = true;
                    queue.push(head);
                }
            }
        }
    }
    (0..n as u32)
        .map(AtomId)
        .filter(|a| derived[a.index()])
        .collect()
}

/// I is stable iff it is the least Herbrand model of its own reduct.
pub fn is_stable_model(program: &Program, interp: &Interpretation) -> bool {
    least_model(&reduct(program, interp)) == *interp
}

/// I is a Herbrand model iff every rule with satisfied body has its
/// head in I.
pub fn is_herbrand_model(program: &Program, interp: &Interpretation) -> bool {
    program.rules().iter().all(|r| {
        let body_holds = r.pbody.iter().all(|&a| interp.contains(a))
            && r.nbody.iter().all(|&a| !interp.contains(a));
        !body_holds || interp.contains(r.head)
    })
}

/// I is supported iff it is a Herbrand model and every atom in I heads
/// a rule whose body I satisfies.
pub fn is_supported_model(program: &Program, interp: &Interpretation) -> bool {
    if !is_herbrand_model(program, interp) {
        return false;
    }
    interp.iter().all(|p| {
        program.rules().iter().any(|r| {
            r.head == p
                && r.pbody.iter().all(|&a| interp.contains(a))
                && r.nbody.iter().all(|&a| !interp.contains(a))
        })
    })
}

/// Mutable builder used by generators and tests to assemble programs
/// without going through the concrete syntax.
#[derive(Default)]
pub struct ProgramBuilder {
    atoms: AtomTable,
    rules: Vec<Rule>,
}

impl ProgramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn atom(&mut self, name: &str) -> AtomId {
        self.atoms.intern(name)
    }

    pub fn rule(
        &mut self,
        head: AtomId,
        pbody: impl IntoIterator<Item = AtomId>,
        nbody: impl IntoIterator<Item = AtomId>,
    ) -> &mut Self {
        self.rules.push(Rule::new(head, pbody, nbody));
        self
    }

    pub fn build(self) -> Program {
        Program::new(self.atoms, self.rules)
    }
}
