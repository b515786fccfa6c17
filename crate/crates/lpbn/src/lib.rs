//! Static analysis of ground normal logic programs through their
//! Boolean-network encoding.
//!
//! A program is parsed into an interned rule set, encoded as one DNF
//! update function per atom, and analyzed through the signed structure of
//! its dependence graph: cycle signs bound the number of stable models,
//! and fixed points of the encoding (the supported models) are enumerated
//! and filtered to compute them exactly.
//!
//! Modules:
//! - [`program`]: rules, interpretations, reduct and model checks;
//! - [`parse`]: the `head :- lit, ..., lit.` concrete syntax;
//! - [`sgraph`]: signed digraphs and all cycle-sign machinery;
//! - [`bn`]: the encoding, fixed points, influence graphs, completion;
//! - [`fixpoint`]: quasi-interpretation least-fixpoint solving;
//! - [`analyzer`]: verdicts, count intervals, and the solving pipeline;
//! - [`oracle`]: brute-force ground truth for everything above;
//! - [`report`]: JSON and text rendering of analysis reports;
//! - [`gen`]: seeded random instances for sweeps and benches.

pub mod analyzer;
pub mod bn;
pub mod fixpoint;
pub mod gen;
pub mod oracle;
pub mod parse;
pub mod program;
pub mod report;
pub mod sgraph;

pub use analyzer::{
    analyze, construct_complementary_pair, solve, AnalysisReport, AnalyzeOptions, CountInterval,
    SolveMethod, TheoremTag, Verdict, VerdictStatus,
};
pub use bn::{
    clark_completion, encode, fixed_points, influence_graph, BooleanNetwork, IgMode, State,
};
pub use fixpoint::{
    least_fixpoint, quasi_to_program, stable_via_lfp, tp_transform, QuasiProgram, QuasiRule,
};
pub use parse::{parse_program, ParseError};
pub use program::{
    is_herbrand_model, is_stable_model, is_supported_model, least_model, reduct, AtomId, AtomTable,
    Interpretation, PositiveProgram, Program, Rule,
};
pub use report::{report_to_json, report_to_text};
pub use sgraph::{
    balance_bipartition, dependence_graph, has_negative_cycle, has_positive_cycle, is_acyclic,
    is_locally_stratified, is_sign_definite, is_single_cycle, positive_dependence_graph,
    positive_feedback_vertex_set, strongly_connected_components, CycleWitness, Sign, SignedDigraph,
    Tri,
};
