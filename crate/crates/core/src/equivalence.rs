//! Deciders for strong sel-, gen- and combined equivalence.
//!
//! Each decider checks the conditions of the corresponding characterization in
//! the order they are numbered and reports the first one that fails, together
//! with the canonically least witness. Under answer-set semantics the
//! selector-only decider works on answer sets, while the generator and
//! combined deciders compare preference relations over the classical models of
//! the generators, as the characterizations require.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::compiled::Scored;
use crate::logic::{Alphabet, HtInterpretation, Interpretation};
use crate::models::{ht_model_masks, model_masks, EnumError, SemanticsMode};
use crate::preference::{Bound, RankInterval};
use crate::problem::{optimal, optimal_masks, union, Compiled, Problem};

/// Which contexts may be added.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquivalenceMode {
    /// Selector problems `(∅, S)` with ranks in the interval.
    Sel(RankInterval),
    /// Generator problems `(T, ∅)`.
    Gen,
    /// Arbitrary problems whose rules have ranks in the interval.
    Combined(RankInterval),
}

impl EquivalenceMode {
    pub fn interval(&self) -> Option<RankInterval> {
        match self {
            EquivalenceMode::Sel(iv) | EquivalenceMode::Combined(iv) => Some(*iv),
            EquivalenceMode::Gen => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EquivalenceMode::Sel(_) => "sel",
            EquivalenceMode::Gen => "gen",
            EquivalenceMode::Combined(_) => "combined",
        }
    }
}

/// The characterization a condition belongs to. Displayed by its theorem
/// number: selector contexts `Thm2`, generator contexts `Thm3`, combined
/// contexts `Thm4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Characterization {
    Selector,
    Generator,
    Combined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Condition {
    pub characterization: Characterization,
    pub index: u8,
}

impl Condition {
    pub const fn new(characterization: Characterization, index: u8) -> Self {
        Condition {
            characterization,
            index,
        }
    }
}

/// e.g. `Thm3(1)`.
impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self.characterization {
            Characterization::Selector => 2,
            Characterization::Generator => 3,
            Characterization::Combined => 4,
        };
        write!(f, "Thm{}({})", n, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Single(Interpretation),
    Pair(Interpretation, Interpretation),
    /// An HT model of exactly one of the two generators.
    Ht(HtInterpretation),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Single(i) => write!(f, "{i}"),
            Witness::Pair(i, j) => write!(f, "{i} ; {j}"),
            Witness::Ht(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub equivalent: bool,
    pub failed_condition: Option<Condition>,
    pub witness: Option<Witness>,
    pub separating_context: Option<Problem>,
}

impl Verdict {
    pub fn equivalent() -> Verdict {
        Verdict {
            equivalent: true,
            failed_condition: None,
            witness: None,
            separating_context: None,
        }
    }

    pub fn failed(condition: Condition, witness: Witness) -> Verdict {
        Verdict {
            equivalent: false,
            failed_condition: Some(condition),
            witness: Some(witness),
            separating_context: None,
        }
    }

    pub fn with_context(mut self, ctx: Option<Problem>) -> Verdict {
        if !self.equivalent {
            self.separating_context = ctx;
        }
        self
    }
}

/// Sorts masks into canonical interpretation order.
pub(crate) fn canonical(a: &Alphabet, mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_by_cached_key(|&m| a.decode(m));
    masks
}

/// The canonically least member of the symmetric difference, if any.
fn least_difference(a: &Alphabet, x: &[u64], y: &[u64]) -> Option<Interpretation> {
    let xs: BTreeSet<u64> = x.iter().copied().collect();
    let ys: BTreeSet<u64> = y.iter().copied().collect();
    xs.symmetric_difference(&ys).map(|&m| a.decode(m)).min()
}

/// The diff condition shared by the selector and combined characterizations:
/// whenever `low < p` or `low < q`, either `p = q` or both exceed `high`.
pub(crate) fn diff_condition_holds(iv: RankInterval, p: Bound, q: Bound) -> bool {
    let low = Bound::Finite(iv.low());
    if !(low < p || low < q) {
        return true;
    }
    p == q || (p > iv.high() && q > iv.high())
}

/// First ordered pair `(I, J)`, `I ≠ J`, on which `rel` differs between the
/// two scored sets.
fn first_relation_mismatch(
    a: &Alphabet,
    set: &[u64],
    sp: &Scored,
    sq: &Scored,
    rel: impl Fn(&Scored, usize, usize) -> bool,
) -> Option<Witness> {
    let n = set.len();
    for x in 0..n {
        for y in 0..n {
            if x != y && rel(sp, x, y) != rel(sq, x, y) {
                return Some(Witness::Pair(a.decode(set[x]), a.decode(set[y])));
            }
        }
    }
    None
}

fn first_diff_violation(
    a: &Alphabet,
    set: &[u64],
    sp: &Scored,
    sq: &Scored,
    iv: RankInterval,
) -> Option<Witness> {
    let n = set.len();
    for x in 0..n {
        for y in x + 1..n {
            let p = Bound::from_option(sp.diff(x, y));
            let q = Bound::from_option(sq.diff(x, y));
            if !diff_condition_holds(iv, p, q) {
                return Some(Witness::Pair(a.decode(set[x]), a.decode(set[y])));
            }
        }
    }
    None
}

/// Strong equivalence relative to selector contexts with ranks in `iv`.
pub fn sel_equivalent(
    p: &Problem,
    q: &Problem,
    iv: RankInterval,
    m: SemanticsMode,
    a: &Alphabet,
) -> Result<Verdict, EnumError> {
    const C: Characterization = Characterization::Selector;
    let cp = Compiled::new(p, a, m)?;
    let cq = Compiled::new(q, a, m)?;
    let below = Some(iv.low());
    let pi_p = optimal_masks(&cp.selector, &cp.outcomes(a, m), below);
    let pi_q = optimal_masks(&cq.selector, &cq.outcomes(a, m), below);

    if let Some(i) = least_difference(a, &pi_p, &pi_q) {
        return Ok(Verdict::failed(Condition::new(C, 1), Witness::Single(i)));
    }
    let set = canonical(a, pi_p);
    let sp = Scored::new(&cp.selector, &set);
    let sq = Scored::new(&cq.selector, &set);
    if let Some(w) = first_relation_mismatch(a, &set, &sp, &sq, |s, x, y| s.gt(x, y)) {
        return Ok(Verdict::failed(Condition::new(C, 2), w));
    }
    if let Some(w) = first_diff_violation(a, &set, &sp, &sq, iv) {
        return Ok(Verdict::failed(Condition::new(C, 3), w));
    }
    Ok(Verdict::equivalent())
}

/// Condition (1) shared by the generator and combined characterizations:
/// strong equivalence of the generators under `m`.
fn generator_condition(
    cp: &Compiled,
    cq: &Compiled,
    m: SemanticsMode,
    a: &Alphabet,
) -> Option<Witness> {
    match m {
        SemanticsMode::Classical => least_difference(
            a,
            &model_masks(&cp.generator, a),
            &model_masks(&cq.generator, a),
        )
        .map(Witness::Single),
        SemanticsMode::AnswerSet => {
            let hp: BTreeSet<(u64, u64)> = ht_model_masks(&cp.generator, a).into_iter().collect();
            let hq: BTreeSet<(u64, u64)> = ht_model_masks(&cq.generator, a).into_iter().collect();
            hp.symmetric_difference(&hq)
                .map(|&(h, t)| HtInterpretation::new(a.decode(h), a.decode(t)).expect("nested"))
                .min()
                .map(Witness::Ht)
        }
    }
}

/// Strong equivalence relative to generator contexts.
pub fn gen_equivalent(
    p: &Problem,
    q: &Problem,
    m: SemanticsMode,
    a: &Alphabet,
) -> Result<Verdict, EnumError> {
    const C: Characterization = Characterization::Generator;
    let cp = Compiled::new(p, a, m)?;
    let cq = Compiled::new(q, a, m)?;
    if let Some(w) = generator_condition(&cp, &cq, m, a) {
        return Ok(Verdict::failed(Condition::new(C, 1), w));
    }
    let set = canonical(a, model_masks(&cp.generator, a));
    let sp = Scored::new(&cp.selector, &set);
    let sq = Scored::new(&cq.selector, &set);
    if let Some(w) = first_relation_mismatch(a, &set, &sp, &sq, |s, x, y| s.gt(x, y)) {
        return Ok(Verdict::failed(Condition::new(C, 2), w));
    }
    Ok(Verdict::equivalent())
}

/// Strong equivalence relative to arbitrary contexts whose rules have ranks
/// in `iv`.
pub fn combined_equivalent(
    p: &Problem,
    q: &Problem,
    iv: RankInterval,
    m: SemanticsMode,
    a: &Alphabet,
) -> Result<Verdict, EnumError> {
    const C: Characterization = Characterization::Combined;
    let cp = Compiled::new(p, a, m)?;
    let cq = Compiled::new(q, a, m)?;
    if let Some(w) = generator_condition(&cp, &cq, m, a) {
        return Ok(Verdict::failed(Condition::new(C, 1), w));
    }
    let set = canonical(a, model_masks(&cp.generator, a));
    let sp = Scored::new(&cp.selector, &set);
    let sq = Scored::new(&cq.selector, &set);
    if let Some(w) = first_relation_mismatch(a, &set, &sp, &sq, |s, x, y| s.gt(x, y)) {
        return Ok(Verdict::failed(Condition::new(C, 2), w));
    }
    if let Some(w) = first_diff_violation(a, &set, &sp, &sq, iv) {
        return Ok(Verdict::failed(Condition::new(C, 3), w));
    }
    let below = Some(iv.low());
    if let Some(w) = first_relation_mismatch(a, &set, &sp, &sq, |s, x, y| s.gt_below(x, y, below)) {
        return Ok(Verdict::failed(Condition::new(C, 4), w));
    }
    Ok(Verdict::equivalent())
}

/// Dispatches on the mode.
pub fn decide(
    p: &Problem,
    q: &Problem,
    mode: EquivalenceMode,
    m: SemanticsMode,
    a: &Alphabet,
) -> Result<Verdict, EnumError> {
    match mode {
        EquivalenceMode::Sel(iv) => sel_equivalent(p, q, iv, m, a),
        EquivalenceMode::Gen => gen_equivalent(p, q, m, a),
        EquivalenceMode::Combined(iv) => combined_equivalent(p, q, iv, m, a),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("verdict carries no separating context")]
    MissingContext,
    #[error(transparent)]
    Enum(#[from] EnumError),
}

/// Whether `ctx` makes the optimal outcomes of the two problems differ.
pub fn separates(
    p: &Problem,
    q: &Problem,
    ctx: &Problem,
    m: SemanticsMode,
    a: &Alphabet,
) -> Result<bool, EnumError> {
    let a = a.extended(p.atoms().into_iter().chain(q.atoms()).chain(ctx.atoms()));
    let left = optimal(&union(p, ctx), m, &a)?;
    let right = optimal(&union(q, ctx), m, &a)?;
    Ok(left.members != right.members)
}

/// Checks the verdict's separating context against the definition of strong
/// equivalence: `π(p ∪ ctx) ≠ π(q ∪ ctx)`.
pub fn verify_verdict(
    p: &Problem,
    q: &Problem,
    v: &Verdict,
    m: SemanticsMode,
    a: &Alphabet,
) -> Result<bool, VerifyError> {
    let ctx = v
        .separating_context
        .as_ref()
        .ok_or(VerifyError::MissingContext)?;
    Ok(separates(p, q, ctx, m, a)?)
}
