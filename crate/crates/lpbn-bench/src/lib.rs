//! Shared fixtures for the pipeline benchmarks.

use lpbn::program::{Program, ProgramBuilder};

/// A stratified chain `x0. x1 :- not x0. x2 :- not x1. ...` with one
/// stable model; its dependence graph is a path of negative arcs.
pub fn negation_chain(n: usize) -> Program {
    let mut b = ProgramBuilder::new();
    let atoms: Vec<_> = (0..n).map(|i| b.atom(&format!("x{i}"))).collect();
    b.rule(atoms[0], [], []);
    for i in 1..n {
        b.rule(atoms[i], [], [atoms[i - 1]]);
    }
    b.build()
}

/// Independent choice pairs `a_i :- not b_i. b_i :- not a_i.`:
/// 2^k stable models for k pairs.
pub fn choice_pairs(pairs: usize) -> Program {
    let mut b = ProgramBuilder::new();
    let a: Vec<_> = (0..pairs).map(|i| b.atom(&format!("a{i}"))).collect();
    let n: Vec<_> = (0..pairs).map(|i| b.atom(&format!("b{i}"))).collect();
    for i in 0..pairs {
        b.rule(a[i], [], [n[i]]);
        b.rule(n[i], [], [a[i]]);
    }
    b.build()
}
