//! Brute-force ground truth for every semantic notion. Bitmask scans over
//! all interpretations; correctness anchors, not performance.

use std::fmt;

use crate::bn::BooleanNetwork;
use crate::program::{Interpretation, Program};
use crate::sgraph::{CycleWitness, Sign, SignedDigraph};

/// Exhaustive scans refuse instances above this many atoms/variables.
pub const ATOM_CAP: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeCapExceeded {
    pub size: usize,
    pub cap: usize,
}

impl fmt::Display for SizeCapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "instance has {} atoms, above the brute-force cap of {}",
            self.size, self.cap
        )
    }
}

impl std::error::Error for SizeCapExceeded {}

fn check_cap(size: usize) -> Result<(), SizeCapExceeded> {
    if size > ATOM_CAP {
        Err(SizeCapExceeded {
            size,
            cap: ATOM_CAP,
        })
    } else {
        Ok(())
    }
}

struct MaskRule {
    head: u64,
    pbody: u64,
    nbody: u64,
}

fn mask_rules(program: &Program) -> Vec<MaskRule> {
    program
        .rules()
        .iter()
        .map(|r| MaskRule {
            head: 1 << r.head.0,
            pbody: r.pbody.iter().fold(0, |m, a| m | (1 << a.0)),
            nbody: r.nbody.iter().fold(0, |m, a| m | (1 << a.0)),
        })
        .collect()
}

fn is_stable_mask(rules: &[MaskRule], interp: u64) -> bool {
    let mut derived = 0u64;
    loop {
        let mut next = derived;
        for r in rules {
            if r.nbody & interp == 0 && r.pbody & derived == r.pbody {
                next |= r.head;
            }
        }
        if next == derived {
            return derived == interp;
        }
        derived = next;
    }
}

fn is_supported_mask(rules: &[MaskRule], interp: u64) -> bool {
    let mut supported_heads = 0u64;
    for r in rules {
        if r.pbody & interp == r.pbody && r.nbody & interp == 0 {
            if r.head & interp == 0 {
                return false; // not a Herbrand model
            }
            supported_heads |= r.head;
        }
    }
    interp & !supported_heads == 0
}

fn scan(n: usize, keep: impl Fn(u64) -> bool) -> Vec<Interpretation> {
    let mut out: Vec<Interpretation> = (0..(1u64 << n))
        .filter(|&m| keep(m))
        .map(|m| Interpretation::from_bitmask(m, n))
        .collect();
    out.sort_by(|x, y| x.cmp_bits(y, n));
    out
}

/// All stable models, by checking every interpretation against the
/// least model of its reduct.
pub fn enumerate_stable_bruteforce(
    program: &Program,
) -> Result<Vec<Interpretation>, SizeCapExceeded> {
    let n = program.atom_count();
    check_cap(n)?;
    let rules = mask_rules(program);
    Ok(scan(n, |m| is_stable_mask(&rules, m)))
}

/// All supported models, straight from the definition.
pub fn enumerate_supported_bruteforce(
    program: &Program,
) -> Result<Vec<Interpretation>, SizeCapExceeded> {
    let n = program.atom_count();
    check_cap(n)?;
    let rules = mask_rules(program);
    Ok(scan(n, |m| is_supported_mask(&rules, m)))
}

/// All fixed points, by scanning every state.
pub fn enumerate_fixed_points_bruteforce(
    network: &BooleanNetwork,
) -> Result<Vec<Interpretation>, SizeCapExceeded> {
    let n = network.var_count();
    check_cap(n)?;
    // per-variable term masks
    let funcs: Vec<Vec<(u64, u64)>> = network
        .functions()
        .iter()
        .map(|f| {
            f.terms
                .iter()
                .map(|t| {
                    (
                        t.pos.iter().fold(0u64, |m, a| m | (1 << a.0)),
                        t.neg.iter().fold(0u64, |m, a| m | (1 << a.0)),
                    )
                })
                .collect()
        })
        .collect();
    Ok(scan(n, |m| {
        funcs.iter().enumerate().all(|(v, terms)| {
            let value = terms.iter().any(|&(p, ng)| m & p == p && m & ng == 0);
            value == ((m >> v) & 1 == 1)
        })
    }))
}

/// The listing stopped at `cap` cycles; `partial` holds the prefix.
#[derive(Clone, Debug)]
pub struct CycleCapExceeded {
    pub cap: usize,
    pub partial: Vec<CycleWitness>,
}

impl fmt::Display for CycleCapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cycle listing exceeded the cap of {}", self.cap)
    }
}

impl std::error::Error for CycleCapExceeded {}

/// All simple signed cycles: vertex sequences in lexicographic order
/// (each anchored at its minimum vertex), and for parallel arcs one
/// witness per sign choice, plus before minus.
pub fn enumerate_signed_cycles(
    g: &SignedDigraph,
    cap: usize,
) -> Result<Vec<CycleWitness>, CycleCapExceeded> {
    let n = g.vertex_count();
    let mut out: Vec<CycleWitness> = Vec::new();
    let mut path: Vec<usize> = Vec::new();
    let mut on_path = vec![false; n];

    fn expand_signs(
        g: &SignedDigraph,
        cycle: &[usize],
        step: usize,
        signs: &mut Vec<Sign>,
        out: &mut Vec<CycleWitness>,
        cap: usize,
    ) -> Result<(), ()> {
        if step == cycle.len() - 1 {
            if out.len() == cap {
                return Err(());
            }
            out.push(CycleWitness::new(cycle.to_vec(), signs.clone()));
            return Ok(());
        }
        let (plus, minus) = g.signs_between(cycle[step], cycle[step + 1]);
        for (present, sign) in [(plus, Sign::Plus), (minus, Sign::Minus)] {
            if present {
                signs.push(sign);
                expand_signs(g, cycle, step + 1, signs, out, cap)?;
                signs.pop();
            }
        }
        Ok(())
    }

    fn dfs(
        g: &SignedDigraph,
        start: usize,
        v: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        out: &mut Vec<CycleWitness>,
        cap: usize,
    ) -> Result<(), ()> {
        let succ: Vec<usize> = g
            .arcs_from(v)
            .map(|(w, _)| w)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        for w in succ {
            if w == start {
                let mut cycle = path.clone();
                cycle.push(start);
                let mut signs = Vec::new();
                expand_signs(g, &cycle, 0, &mut signs, out, cap)?;
            } else if w > start && !on_path[w] {
                path.push(w);
                on_path[w] = true;
                let r = dfs(g, start, w, path, on_path, out, cap);
                path.pop();
                on_path[w] = false;
                r?;
            }
        }
        Ok(())
    }

    for start in 0..n {
        path.push(start);
        on_path[start] = true;
        let r = dfs(g, start, start, &mut path, &mut on_path, &mut out, cap);
        path.pop();
        on_path[start] = false;
        if r.is_err() {
            return Err(CycleCapExceeded { cap, partial: out });
        }
    }
    Ok(out)
}
