//! # ocnkit
//!
//! A toolkit for one-counter nets (OCNs): finite automata with a single
//! nonnegative counter and no zero tests.
//!
//! The crate provides:
//!
//! - exact nondeterministic semantics, a text format, and bounded
//!   language-equivalence testing ([`ocn`], [`format`], [`equiv`]);
//! - minimal-counter analysis for unary nets, with a Pareto-frontier
//!   computation, a brute-force oracle, and ultimate-periodicity detection
//!   ([`unary`]);
//! - semilinear sets over pairs of naturals and the normalizations that turn
//!   an increasing set into an ultimately periodic description
//!   ([`semilinear`]);
//! - the uniform determinizability decision for unary nets, deterministic
//!   net synthesis, and regularization at a fixed counter ([`determinize`]);
//! - lossy counter machines and generators for the reductions tying them to
//!   nets, plus fixed example gadgets and wrapper constructions
//!   ([`lcm`], [`reductions`]);
//! - Graphviz DOT export ([`dot`]).

pub mod determinize;
pub mod dot;
pub mod equiv;
pub mod format;
pub mod lcm;
pub mod ocn;
pub mod reductions;
pub mod semilinear;
pub mod unary;

pub use determinize::{
    complete_f, decide_uniform_det, synthesize_docn, unary_language_dfa, FTable, SynthesisError,
    UnaryLanguage, Verdict,
};
pub use dot::export_dot;
pub use equiv::{bounded_equiv, EquivError, EquivMode, EquivReport};
pub use format::{parse_ocn, serialize_ocn, ParseError};
pub use lcm::{
    encode_run, lcm_reach, lcm_step, parse_lcm, serialize_lcm, Lcm, LcmConfig, LcmError,
    LcmTransition, OpKind, ReachResult, RunEncoding, StepResult,
};
pub use ocn::{
    min_initial_counter, path_stats, Configuration, Counter, Effect, Ocn, OcnError, PathStats,
    Transition, Word,
};
pub use reductions::{
    finite_reach_dfa, flow_violation_ocn, gadget, initial_config_gadget, lcm_to_ocn, wrap_forall,
    wrap_uniform_lb, zero_fr_reduction, GadgetName, ReductionError, ViolationScenario,
};
pub use semilinear::{
    gamma_split, lin_member, normalize_common_period, to_ultimately_periodic,
    unary_semilinear_to_regex, LinearSet2, NormalizeOutcome, SemilinearError, SemilinearSet2,
    UnarySemilinear, UpLaw,
};
pub use unary::{
    accept_profile, detect_periodicity, is_increasing, least_witness, mcr, mcr_brute,
    mcr_frontiers, mcr_prefix, IncreasingVerdict, Mcr, ParetoEntry, PeriodicTail, UnaryError,
    WitnessPair,
};
