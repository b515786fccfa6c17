//! Seeded random instances for property sweeps and benchmarks.
//! Deterministic across platforms: a SplitMix64 stream, no external RNG.

use crate::program::{Program, ProgramBuilder};
use crate::sgraph::{Sign, SignedDigraph};

/// SplitMix64; good enough statistics for test-corpus generation and
/// fully reproducible from the seed.
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in 0..n (n > 0).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// True with probability num/den.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }
}

/// Shape of generated programs.
#[derive(Clone, Debug)]
pub struct GenConfig {
    pub max_atoms: usize,
    pub max_rules: usize,
    pub max_pbody: usize,
    pub max_nbody: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            max_atoms: 9,
            max_rules: 14,
            max_pbody: 3,
            max_nbody: 3,
        }
    }
}

/// A random program with 1..=max_atoms atoms (named a0, a1, ...) and up
/// to max_rules rules of mixed signs. Duplicate rules collapse as usual.
pub fn random_program(cfg: &GenConfig, seed: u64) -> Program {
    let mut rng = Rng::new(seed);
    let n = 1 + rng.below(cfg.max_atoms);
    let mut b = ProgramBuilder::new();
    let atoms: Vec<_> = (0..n).map(|i| b.atom(&format!("a{i}"))).collect();
    let n_rules = rng.below(cfg.max_rules + 1);
    for _ in 0..n_rules {
        let head = atoms[rng.below(n)];
        let np = rng.below(cfg.max_pbody + 1);
        let nn = rng.below(cfg.max_nbody + 1);
        let pbody: Vec<_> = (0..np).map(|_| atoms[rng.below(n)]).collect();
        let nbody: Vec<_> = (0..nn).map(|_| atoms[rng.below(n)]).collect();
        b.rule(head, pbody, nbody);
    }
    b.build()
}

/// A random signed digraph with 1..=max_n vertices; each ordered pair
/// (self-loops included) independently gets a +, a -, both, or nothing.
pub fn random_signed_digraph(max_n: usize, arc_chance_per_mille: u64, seed: u64) -> SignedDigraph {
    let mut rng = Rng::new(seed);
    let n = 1 + rng.below(max_n);
    let mut g = SignedDigraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if rng.chance(arc_chance_per_mille, 1000) {
                g.add_arc(u, v, Sign::Plus);
            }
            if rng.chance(arc_chance_per_mille, 1000) {
                g.add_arc(u, v, Sign::Minus);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let cfg = GenConfig::default();
        assert_eq!(random_program(&cfg, 7), random_program(&cfg, 7));
        assert_eq!(
            random_signed_digraph(8, 200, 7),
            random_signed_digraph(8, 200, 7)
        );
    }

    #[test]
    fn generated_programs_stay_in_bounds() {
        let cfg = GenConfig::default();
        for seed in 0..50 {
            let p = random_program(&cfg, seed);
            assert!(p.atom_count() >= 1 && p.atom_count() <= cfg.max_atoms);
            assert!(p.rules().len() <= cfg.max_rules);
        }
    }
}
