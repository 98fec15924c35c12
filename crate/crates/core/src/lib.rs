//! Qualitative optimization problems: a generator theory whose classical or
//! equilibrium models are the outcomes, and a selector of ranked preference
//! rules that picks the optimal ones.
//!
//! Besides computing outcomes and optimal outcomes, the crate decides strong
//! equivalence of two problems with respect to added selectors (`sel`), added
//! generators (`gen`) or both (`combined`), and builds contexts that witness
//! non-equivalence.

mod compiled;
pub mod equivalence;
pub mod gadgets;
pub mod logic;
pub mod models;
pub mod oracle;
pub mod preference;
pub mod problem;
pub mod random;
pub mod separation;
pub mod text;

pub use equivalence::{
    combined_equivalent, decide, gen_equivalent, sel_equivalent, separates, verify_verdict,
    Characterization, Condition, EquivalenceMode, Verdict, VerifyError, Witness,
};
pub use gadgets::{
    encode_min_models, pin_ht, pin_pair, pin_single, promote, protect_pair, GadgetError,
    MinModelEncoding,
};
pub use logic::{
    atoms_of, eval_classical, eval_ht, Alphabet, Atom, EnumLimits, Formula, HtInterpretation,
    Interpretation,
};
pub use models::{
    answer_sets, classical_models, ht_models, theories_strongly_equivalent, EnumError,
    SemanticsMode, Theory,
};
pub use oracle::{oracle_check, ContextTag, Disagreement, GadgetFamily, OracleError, OracleReport};
pub use preference::{
    diff, pref_approx, pref_geq, pref_gt, rank_slice, satisfaction_degree, Bound, Degree,
    PreferenceRule, RankInterval, Selector,
};
pub use problem::{default_alphabet, optimal, outcomes, restrict, union, OutcomeSet, Problem};
pub use separation::{context_for_verdict, decide_with_context, separating_context};
pub use text::{
    parse_formula, parse_problem, render_formula, render_problem, render_rule, render_rule_body,
    ParseError, SourceSpan,
};
