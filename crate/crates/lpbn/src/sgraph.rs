//! Signed directed graphs: dependence-graph construction and the cycle-sign
//! structure the analysis consumes (SCCs, exact negative-cycle detection via
//! the parity-doubled graph, bounded positive-cycle search, sign-definiteness,
//! local stratification, positive feedback vertex sets, balance bipartition).

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use crate::program::Program;

/// Arc sign. `Plus` sorts before `Minus`, which fixes enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Sign product: the parity of the minus count.
    pub fn combine(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A signed digraph on dense vertices 0..n. Parallel arcs of opposite
/// sign between the same pair may coexist; duplicates are merged.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SignedDigraph {
    n: usize,
    out: Vec<Vec<(usize, Sign)>>, // sorted by (target, sign), no duplicates
}

impl SignedDigraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            out: vec![Vec::new(); n],
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize, Sign)>) -> Self {
        let mut g = Self::new(n);
        for (u, v, s) in arcs {
            g.add_arc(u, v, s);
        }
        g
    }

    pub fn add_arc(&mut self, from: usize, to: usize, sign: Sign) {
        assert!(from < self.n && to < self.n);
        let row = &mut self.out[from];
        if let Err(pos) = row.binary_search(&(to, sign)) {
            row.insert(pos, (to, sign));
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// All arcs as (from, to, sign), sorted.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, Sign)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |&(v, s)| (u, v, s)))
    }

    pub fn has_arc(&self, from: usize, to: usize, sign: Sign) -> bool {
        self.out[from].binary_search(&(to, sign)).is_ok()
    }

    pub fn count_by_sign(&self, sign: Sign) -> usize {
        self.arcs().filter(|&(_, _, s)| s == sign).count()
    }

    /// Which signs are present on arcs from `u` to `v`.
    pub fn signs_between(&self, u: usize, v: usize) -> (bool, bool) {
        (
            self.has_arc(u, v, Sign::Plus),
            self.has_arc(u, v, Sign::Minus),
        )
    }

    /// Signed out-arcs of `u`, sorted by (target, sign).
    pub fn arcs_from(&self, u: usize) -> impl Iterator<Item = (usize, Sign)> + '_ {
        self.out[u].iter().copied()
    }

    /// Out-neighbours ignoring signs, deduplicated, ascending.
    fn successors(&self, u: usize) -> Vec<usize> {
        let mut ts: Vec<usize> = self.out[u].iter().map(|&(v, _)| v).collect();
        ts.dedup();
        ts
    }

    fn underlying_adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|u| self.successors(u)).collect()
    }

    /// In-degree as the number of distinct source vertices (parallel arcs merge).
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut sources: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.n];
        for (u, v, _) in self.arcs() {
            sources[v].insert(u);
        }
        sources.into_iter().map(|s| s.len()).collect()
    }

    pub fn min_in_degree(&self) -> usize {
        self.in_degrees().into_iter().min().unwrap_or(0)
    }

    /// Arc-counting degrees (in + out, parallel arcs counted), used for
    /// greedy tie-breaking.
    fn total_arc_degrees(&self) -> Vec<usize> {
        let mut degree: Vec<usize> = self.out.iter().map(Vec::len).collect();
        for (_, v, _) in self.arcs() {
            degree[v] += 1;
        }
        degree
    }

    /// Copy with all arcs touching `gone` removed (vertices stay, isolated).
    pub fn without_vertices(&self, gone: &BTreeSet<usize>) -> SignedDigraph {
        let mut g = SignedDigraph::new(self.n);
        for (u, v, s) in self.arcs() {
            if !gone.contains(&u) && !gone.contains(&v) {
                g.add_arc(u, v, s);
            }
        }
        g
    }

    /// DOT rendering: vertices in id order, positive arcs solid, negative
    /// arcs dashed with label "-".
    pub fn to_dot(&self, graph_name: &str, label: impl Fn(usize) -> String) -> String {
        let mut s = String::new();
        writeln!(s, "digraph {graph_name} {{").unwrap();
        for v in 0..self.n {
            writeln!(s, "  \"{}\";", label(v)).unwrap();
        }
        for (u, v, sign) in self.arcs() {
            match sign {
                Sign::Plus => writeln!(s, "  \"{}\" -> \"{}\";", label(u), label(v)).unwrap(),
                Sign::Minus => writeln!(
                    s,
                    "  \"{}\" -> \"{}\" [style=dashed, label=\"-\"];",
                    label(u),
                    label(v)
                )
                .unwrap(),
            }
        }
        s.push_str("}\n");
        s
    }
}

/// A simple cycle with its arc signs. `vertices` closes on itself
/// (first == last), `signs[i]` is the sign of the arc
/// `vertices[i] -> vertices[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
    pub signs: Vec<Sign>,
}

impl CycleWitness {
    pub fn new(vertices: Vec<usize>, signs: Vec<Sign>) -> Self {
        debug_assert_eq!(vertices.len(), signs.len() + 1);
        debug_assert_eq!(vertices.first(), vertices.last());
        Self { vertices, signs }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Cycle sign: plus iff the minus count is even.
    pub fn sign(&self) -> Sign {
        if self.signs.iter().filter(|s| s.is_minus()).count() % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Checks the witness against a graph: closed, vertex-simple, every
    /// step an existing arc of the recorded sign.
    pub fn verify(&self, g: &SignedDigraph) -> bool {
        if self.vertices.len() != self.signs.len() + 1 || self.signs.is_empty() {
            return false;
        }
        if self.vertices.first() != self.vertices.last() {
            return false;
        }
        let interior = &self.vertices[..self.vertices.len() - 1];
        let distinct: BTreeSet<usize> = interior.iter().copied().collect();
        if distinct.len() != interior.len() {
            return false;
        }
        self.signs
            .iter()
            .enumerate()
            .all(|(i, &s)| g.has_arc(self.vertices[i], self.vertices[i + 1], s))
    }
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " -{}-> ", self.signs[i - 1])?;
            }
            write!(f, "v{v}")?;
        }
        Ok(())
    }
}

/// Three-valued detection result. `Unknown` only arises from exhausted
/// search budgets; `Yes`/`No` answers are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes(CycleWitness),
    No,
    Unknown,
}

impl Tri {
    pub fn is_yes(&self) -> bool {
        matches!(self, Tri::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Tri::No)
    }
}

/// dg(P): arc u -> head(r) with sign + for u in pbody(r), - for u in nbody(r).
pub fn dependence_graph(program: &Program) -> SignedDigraph {
    let mut g = SignedDigraph::new(program.atom_count());
    for r in program.rules() {
        for &u in &r.pbody {
            g.add_arc(u.index(), r.head.index(), Sign::Plus);
        }
        for &u in &r.nbody {
            g.add_arc(u.index(), r.head.index(), Sign::Minus);
        }
    }
    g
}

/// pdg(P): same vertices, positive arcs only.
pub fn positive_dependence_graph(program: &Program) -> SignedDigraph {
    let dg = dependence_graph(program);
    let mut g = SignedDigraph::new(dg.vertex_count());
    for (u, v, s) in dg.arcs() {
        if s == Sign::Plus {
            g.add_arc(u, v, s);
        }
    }
    g
}

/// Iterative Tarjan. Returns component ids and the components in emission
/// order, which is reverse topological: every arc leaves a later component
/// or stays inside one.
fn tarjan(adj: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = adj.len();
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut lowlink = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut comp_of = vec![UNSET; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0usize;

    // explicit DFS frames: (vertex, next child index)
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        frames.push((root, 0));
        index[root] = counter;
        lowlink[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut ci)) = frames.last_mut() {
            if *ci < adj[v].len() {
                let w = adj[v][*ci];
                *ci += 1;
                if index[w] == UNSET {
                    index[w] = counter;
                    lowlink[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp_of[w] = components.len();
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
    }
    (comp_of, components)
}

/// SCC partition of the underlying digraph (signs ignored), in reverse
/// topological order of the condensation; each component sorted.
pub fn strongly_connected_components(g: &SignedDigraph) -> Vec<Vec<usize>> {
    tarjan(&g.underlying_adjacency()).1
}

/// Exact negative-cycle detection via the parity-doubled graph: vertex v
/// splits into v+ (even parity so far) and v-, positive arcs stay within a
/// layer, negative arcs cross. A closed walk of odd minus-parity exists iff
/// some v+ and v- share an SCC, and any such walk contains a simple
/// negative cycle, which is extracted as the witness.
pub fn has_negative_cycle(g: &SignedDigraph) -> Tri {
    let n = g.vertex_count();
    let mut doubled: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    for (u, v, s) in g.arcs() {
        match s {
            Sign::Plus => {
                doubled[2 * u].push(2 * v);
                doubled[2 * u + 1].push(2 * v + 1);
            }
            Sign::Minus => {
                doubled[2 * u].push(2 * v + 1);
                doubled[2 * u + 1].push(2 * v);
            }
        }
    }
    for row in &mut doubled {
        row.sort_unstable();
        row.dedup();
    }
    let (comp_of, _) = tarjan(&doubled);
    let witness_base = (0..n).find(|&v| comp_of[2 * v] == comp_of[2 * v + 1]);
    let base = match witness_base {
        None => return Tri::No,
        Some(v) => v,
    };

    // BFS in the doubled graph from base+ to base-; the path projects to a
    // closed walk at base with odd minus-parity.
    let start = 2 * base;
    let goal = 2 * base + 1;
    let mut parent: Vec<Option<usize>> = vec![None; 2 * n];
    let mut seen = vec![false; 2 * n];
    let mut queue = std::collections::VecDeque::new();
    seen[start] = true;
    queue.push_back(start);
    while let Some(d) = queue.pop_front() {
        if d == goal {
            break;
        }
        for &e in &doubled[d] {
            if !seen[e] {
                seen[e] = true;
                parent[e] = Some(d);
                queue.push_back(e);
            }
        }
    }
    debug_assert!(seen[goal], "same SCC implies reachability");
    let mut rev = vec![goal];
    while let Some(p) = parent[*rev.last().unwrap()] {
        rev.push(p);
        if p == start {
            break;
        }
    }
    rev.reverse();
    // project: walk of (vertex, entering sign)
    let walk: Vec<(usize, Sign)> = rev
        .windows(2)
        .map(|w| {
            let sign = if w[0] % 2 == w[1] % 2 {
                Sign::Plus
            } else {
                Sign::Minus
            };
            (w[1] / 2, sign)
        })
        .collect();
    Tri::Yes(reduce_odd_walk_to_negative_cycle(base, &walk))
}

/// Reduces a closed walk of odd minus-parity to a simple negative cycle:
/// walk the sequence keeping a stack of distinct vertices; each revisit
/// closes a simple cycle, which is returned if negative and excised
/// otherwise. Excised cycles are even, so an odd one must appear.
fn reduce_odd_walk_to_negative_cycle(base: usize, walk: &[(usize, Sign)]) -> CycleWitness {
    debug_assert!(
        walk.iter().filter(|(_, s)| s.is_minus()).count() % 2 == 1,
        "walk must have odd minus-parity"
    );
    let mut stack: Vec<(usize, Sign)> = vec![(base, Sign::Plus)]; // sign slot of [0] unused
    for &(vertex, sign) in walk {
        if let Some(at) = stack.iter().position(|&(v, _)| v == vertex) {
            let minus = stack[at + 1..].iter().filter(|(_, s)| s.is_minus()).count()
                + usize::from(sign.is_minus());
            if minus % 2 == 1 {
                let mut vertices: Vec<usize> = stack[at..].iter().map(|&(v, _)| v).collect();
                let mut signs: Vec<Sign> = stack[at + 1..].iter().map(|&(_, s)| s).collect();
                vertices.push(vertex);
                signs.push(sign);
                return CycleWitness::new(vertices, signs);
            }
            stack.truncate(at + 1);
        } else {
            stack.push((vertex, sign));
        }
    }
    unreachable!("odd closed walk must contain a negative simple cycle")
}

/// Attempts the balance 2-coloring of one SCC: same color across positive
/// arcs, flipped across negative ones. Returns vertex colors when every
/// internal arc is consistent.
fn try_balance_coloring(
    g: &SignedDigraph,
    members: &[usize],
) -> Option<std::collections::HashMap<usize, Sign>> {
    let inside: BTreeSet<usize> = members.iter().copied().collect();
    let mut color = std::collections::HashMap::new();
    let root = *members.first()?;
    color.insert(root, Sign::Plus);
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let cu = color[&u];
        for &(v, s) in &g.out[u] {
            if !inside.contains(&v) {
                continue;
            }
            let cv = cu.combine(s);
            match color.get(&v) {
                None => {
                    color.insert(v, cv);
                    queue.push_back(v);
                }
                Some(&old) if old != cv => return None,
                Some(_) => {}
            }
        }
    }
    // directed reachability inside an SCC covers it, but double-check arcs
    for &u in members {
        for &(v, s) in &g.out[u] {
            if inside.contains(&v) && color[&u].combine(s) != color[&v] {
                return None;
            }
        }
    }
    Some(color)
}

/// Shortest arc path from `from` to `to` restricted to `inside`,
/// returned as (vertex, sign) steps; deterministic (ascending arc order).
fn path_within(
    g: &SignedDigraph,
    inside: &BTreeSet<usize>,
    from: usize,
    to: usize,
) -> Vec<(usize, Sign)> {
    let mut parent: std::collections::HashMap<usize, (usize, Sign)> =
        std::collections::HashMap::new();
    let mut queue = std::collections::VecDeque::from([from]);
    let mut seen = BTreeSet::from([from]);
    'bfs: while let Some(u) = queue.pop_front() {
        for &(v, s) in &g.out[u] {
            if inside.contains(&v) && seen.insert(v) {
                parent.insert(v, (u, s));
                if v == to {
                    break 'bfs;
                }
                queue.push_back(v);
            }
        }
    }
    let mut steps = Vec::new();
    let mut v = to;
    while v != from {
        let (u, s) = parent[&v];
        steps.push((v, s));
        v = u;
    }
    steps.reverse();
    steps
}

/// Bounded exact positive-cycle detection, layered:
/// 1. per-SCC positive self-loops answer immediately;
/// 2. a balanced SCC with at least one internal arc makes every cycle in it
///    positive;
/// 3. remaining SCCs are searched by simple-cycle enumeration with
///    minus-parity tracking, early-exiting on the first achievable even
///    parity. The budget counts enumerated vertex cycles; exceeding it
///    yields `Unknown`. All `Yes`/`No` answers are exact.
pub fn has_positive_cycle(g: &SignedDigraph, budget: usize) -> Tri {
    assert!(budget > 0, "budget must be positive");
    let (_, components) = tarjan(&g.underlying_adjacency());
    let mut to_enumerate: Vec<&Vec<usize>> = Vec::new();
    for comp in &components {
        let inside: BTreeSet<usize> = comp.iter().copied().collect();
        let mut has_internal_arc = false;
        for &u in comp {
            for &(v, s) in &g.out[u] {
                if !inside.contains(&v) {
                    continue;
                }
                has_internal_arc = true;
                if u == v && s == Sign::Plus {
                    return Tri::Yes(CycleWitness::new(vec![u, u], vec![Sign::Plus]));
                }
            }
        }
        if !has_internal_arc {
            continue;
        }
        if try_balance_coloring(g, comp).is_some() {
            // every cycle in a balanced SCC is positive; exhibit one
            let (u, v, s) = comp
                .iter()
                .flat_map(|&u| g.out[u].iter().map(move |&(v, s)| (u, v, s)))
                .find(|&(_, v, _)| inside.contains(&v))
                .expect("internal arc exists");
            let mut vertices = vec![u, v];
            let mut signs = vec![s];
            for (w, ws) in path_within(g, &inside, v, u) {
                vertices.push(w);
                signs.push(ws);
            }
            let witness = CycleWitness::new(vertices, signs);
            debug_assert_eq!(witness.sign(), Sign::Plus);
            debug_assert!(witness.verify(g));
            return Tri::Yes(witness);
        }
        to_enumerate.push(comp);
    }
    let mut enumerated = 0usize;
    for comp in to_enumerate {
        match enumerate_for_positive(g, comp, budget, &mut enumerated) {
            Tri::Yes(w) => return Tri::Yes(w),
            Tri::Unknown => return Tri::Unknown,
            Tri::No => {}
        }
    }
    Tri::No
}

/// Johnson-style simple-cycle enumeration inside one SCC, looking for any
/// vertex cycle whose available arc signs admit an even minus-parity.
fn enumerate_for_positive(
    g: &SignedDigraph,
    comp: &[usize],
    budget: usize,
    enumerated: &mut usize,
) -> Tri {
    let mut outcome = Tri::No;
    let exhausted = visit_vertex_cycles(g, comp, &mut |cycle| {
        *enumerated += 1;
        if *enumerated > budget {
            return VisitFlow::Stop;
        }
        if let Some(signs) = positive_sign_choice(g, cycle) {
            outcome = Tri::Yes(CycleWitness::new(cycle.to_vec(), signs));
            return VisitFlow::Stop;
        }
        VisitFlow::Continue
    });
    if outcome.is_yes() {
        outcome
    } else if exhausted {
        Tri::Unknown
    } else {
        Tri::No
    }
}

/// For a closed vertex sequence, picks arc signs achieving even
/// minus-parity if possible. Steps with both parallel signs are free
/// choices; the rest are forced.
fn positive_sign_choice(g: &SignedDigraph, cycle: &[usize]) -> Option<Vec<Sign>> {
    let mut forced_minus = 0usize;
    let mut free_steps = Vec::new();
    let mut signs = Vec::with_capacity(cycle.len() - 1);
    for w in cycle.windows(2) {
        let (plus, minus) = g.signs_between(w[0], w[1]);
        match (plus, minus) {
            (true, true) => {
                free_steps.push(signs.len());
                signs.push(Sign::Plus);
            }
            (true, false) => signs.push(Sign::Plus),
            (false, true) => {
                forced_minus += 1;
                signs.push(Sign::Minus);
            }
            (false, false) => unreachable!("cycle step without arc"),
        }
    }
    if forced_minus.is_multiple_of(2) {
        return Some(signs);
    }
    if let Some(&i) = free_steps.first() {
        signs[i] = Sign::Minus;
        return Some(signs);
    }
    None
}

enum VisitFlow {
    Continue,
    Stop,
}

/// Enumerates simple vertex cycles (self-loops excluded) within `comp`,
/// anchored at their minimal member. Returns true when stopped early.
fn visit_vertex_cycles(
    g: &SignedDigraph,
    comp: &[usize],
    visit: &mut dyn FnMut(&[usize]) -> VisitFlow,
) -> bool {
    let local_of: std::collections::HashMap<usize, usize> =
        comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = comp.len();
    let adj: Vec<Vec<usize>> = comp
        .iter()
        .map(|&u| {
            g.successors(u)
                .into_iter()
                .filter_map(|v| local_of.get(&v).copied())
                .filter(|&lv| comp[lv] != u) // self-loops handled elsewhere
                .collect()
        })
        .collect();

    struct Enumerator<'a> {
        adj: &'a [Vec<usize>],
        comp: &'a [usize],
        blocked: Vec<bool>,
        block_list: Vec<BTreeSet<usize>>,
        stack: Vec<usize>,
        start: usize,
        stopped: bool,
    }

    impl Enumerator<'_> {
        fn circuit(&mut self, v: usize, visit: &mut dyn FnMut(&[usize]) -> VisitFlow) -> bool {
            let mut found = false;
            self.stack.push(v);
            self.blocked[v] = true;
            for i in 0..self.adj[v].len() {
                if self.stopped {
                    break;
                }
                let w = self.adj[v][i];
                if w == self.start {
                    let mut cycle: Vec<usize> = self.stack.iter().map(|&l| self.comp[l]).collect();
                    cycle.push(self.comp[self.start]);
                    if matches!(visit(&cycle), VisitFlow::Stop) {
                        self.stopped = true;
                    }
                    found = true;
                } else if !self.blocked[w] && self.circuit(w, visit) {
                    found = true;
                }
            }
            if found {
                self.unblock(v);
            } else {
                for i in 0..self.adj[v].len() {
                    let w = self.adj[v][i];
                    self.block_list[w].insert(v);
                }
            }
            self.stack.pop();
            found
        }

        fn unblock(&mut self, v: usize) {
            self.blocked[v] = false;
            let deps = std::mem::take(&mut self.block_list[v]);
            for w in deps {
                if self.blocked[w] {
                    self.unblock(w);
                }
            }
        }
    }

    let mut e = Enumerator {
        adj: &adj,
        comp,
        blocked: vec![false; k],
        block_list: vec![BTreeSet::new(); k],
        stack: Vec::new(),
        start: 0,
        stopped: false,
    };
    for s in 0..k {
        e.start = s;
        for b in &mut e.blocked[s..] {
            *b = false;
        }
        for bl in &mut e.block_list[s..] {
            bl.clear();
        }
        e.circuit(s, visit);
        if e.stopped {
            return true;
        }
        // cycles through s are done; keep it blocked for later starts
        e.blocked[s] = true;
    }
    false
}

/// No pair (u, v) carries arcs of both signs.
pub fn is_sign_definite(g: &SignedDigraph) -> bool {
    g.arcs()
        .all(|(u, v, s)| s.is_minus() || !g.has_arc(u, v, Sign::Minus))
}

/// Every cycle of dg(P) is free of negative arcs; equivalently no negative
/// arc has both endpoints in one SCC (an arc lies on a cycle iff its target
/// reaches its source).
pub fn is_locally_stratified(program: &Program) -> bool {
    let g = dependence_graph(program);
    let (comp_of, _) = tarjan(&g.underlying_adjacency());
    let ok = g
        .arcs()
        .all(|(u, v, s)| s == Sign::Plus || comp_of[u] != comp_of[v]);
    ok
}

/// Finds some cycle of the underlying digraph (signs ignored), as a vertex
/// list without the closing repeat; None when acyclic.
fn find_any_cycle(g: &SignedDigraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let adj = g.underlying_adjacency();
    // 0 = white, 1 = on path, 2 = done
    let mut color = vec![0u8; n];
    let mut path: Vec<usize> = Vec::new();
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if color[root] != 0 {
            continue;
        }
        frames.push((root, 0));
        color[root] = 1;
        path.push(root);
        while let Some(&mut (v, ref mut ci)) = frames.last_mut() {
            if *ci < adj[v].len() {
                let w = adj[v][*ci];
                *ci += 1;
                match color[w] {
                    0 => {
                        color[w] = 1;
                        path.push(w);
                        frames.push((w, 0));
                    }
                    1 => {
                        let at = path.iter().position(|&x| x == w).unwrap();
                        return Some(path[at..].to_vec());
                    }
                    _ => {}
                }
            } else {
                frames.pop();
                path.pop();
                color[v] = 2;
            }
        }
    }
    None
}

/// True iff the underlying digraph has no cycle (signs ignored).
pub fn is_acyclic(g: &SignedDigraph) -> bool {
    find_any_cycle(g).is_none()
}

/// Greedy positive feedback vertex set: repeatedly remove the
/// highest-degree vertex (ties: smallest id) of a found positive cycle.
/// If detection becomes inconclusive, falls back to breaking every cycle,
/// which is a fortiori a PFVS. The result is re-verified before returning:
/// soundness, not minimality, is the contract.
pub fn positive_feedback_vertex_set(g: &SignedDigraph, budget: usize) -> BTreeSet<usize> {
    let mut removed: BTreeSet<usize> = BTreeSet::new();
    let mut current = g.clone();
    loop {
        match has_positive_cycle(&current, budget) {
            Tri::No => break,
            Tri::Yes(w) => {
                let v = pick_removal_vertex(&current, &w.vertices);
                removed.insert(v);
                current = current.without_vertices(&BTreeSet::from([v]));
            }
            Tri::Unknown => {
                while let Some(cycle) = find_any_cycle(&current) {
                    let mut closed = cycle.clone();
                    closed.push(cycle[0]);
                    let v = pick_removal_vertex(&current, &closed);
                    removed.insert(v);
                    current = current.without_vertices(&BTreeSet::from([v]));
                }
                break;
            }
        }
    }
    assert!(
        has_positive_cycle(&current, budget).is_no(),
        "positive feedback vertex set failed verification"
    );
    removed
}

fn pick_removal_vertex(g: &SignedDigraph, closed_cycle: &[usize]) -> usize {
    let degree = g.total_arc_degrees();
    let mut candidates: Vec<usize> = closed_cycle[..closed_cycle.len() - 1].to_vec();
    candidates.sort_unstable();
    candidates.dedup();
    candidates
        .into_iter()
        .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)))
        .expect("cycle is nonempty")
}

/// Why a balance bipartition cannot be produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BipartitionError {
    NotStronglyConnected,
    HasNegativeCycle,
    NoArcs,
}

impl fmt::Display for BipartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BipartitionError::NotStronglyConnected => "graph is not strongly connected",
            BipartitionError::HasNegativeCycle => "graph has a negative cycle",
            BipartitionError::NoArcs => "graph has no arc",
        })
    }
}

impl std::error::Error for BipartitionError {}

/// Balance bipartition of a strongly connected, negative-cycle-free graph
/// with at least one arc: positive arcs stay within a class, negative arcs
/// cross. The class containing vertex 0 is returned first.
pub fn balance_bipartition(
    g: &SignedDigraph,
) -> Result<(BTreeSet<usize>, BTreeSet<usize>), BipartitionError> {
    if g.arc_count() == 0 {
        return Err(BipartitionError::NoArcs);
    }
    let components = strongly_connected_components(g);
    if components.len() != 1 {
        return Err(BipartitionError::NotStronglyConnected);
    }
    if !has_negative_cycle(g).is_no() {
        return Err(BipartitionError::HasNegativeCycle);
    }
    let color = try_balance_coloring(g, &components[0])
        .expect("negative-cycle-free strongly connected graph is balanced");
    let mut plus = BTreeSet::new();
    let mut minus = BTreeSet::new();
    for v in 0..g.vertex_count() {
        match color[&v] {
            Sign::Plus => plus.insert(v),
            Sign::Minus => minus.insert(v),
        };
    }
    Ok((plus, minus))
}

/// When the graph is exactly one simple cycle covering every vertex
/// (each vertex has one in-arc and one out-arc), returns its sign.
pub fn is_single_cycle(g: &SignedDigraph) -> Option<Sign> {
    let n = g.vertex_count();
    if n == 0 {
        return None;
    }
    let mut in_arcs = vec![0usize; n];
    for (_, v, _) in g.arcs() {
        in_arcs[v] += 1;
    }
    if (0..n).any(|v| g.out[v].len() != 1 || in_arcs[v] != 1) {
        return None;
    }
    let mut sign = Sign::Plus;
    let mut v = 0usize;
    for _ in 0..n {
        let (next, s) = g.out[v][0];
        sign = sign.combine(s);
        v = next;
    }
    if v == 0 && strongly_connected_components(g).len() == 1 {
        Some(sign)
    } else {
        None
    }
}
