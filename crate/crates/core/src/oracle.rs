//! A brute-force strong-equivalence oracle: compares optimal outcomes of the
//! two problems directly under every context of a finite family built from
//! the gadgets, plus seeded random contexts.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::equivalence::EquivalenceMode;
use crate::gadgets::{pin_ht, pin_pair, pin_single, promote, protect_pair};
use crate::logic::{Alphabet, Interpretation};
use crate::models::{EnumError, SemanticsMode, Theory};
use crate::preference::{Bound, RankInterval, Selector};
use crate::problem::{optimal, outcomes, union, OutcomeSet, Problem};
use crate::random::{random_formula, random_rule};

/// Where a context in the family comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContextTag {
    PinSingle,
    PinPair,
    /// Generator separating by one HT model (answer-set semantics only).
    PinHt,
    Promote,
    ProtectPair,
    /// A pinned pair together with a promoted member (combined contexts).
    PinPairPromote,
    Random,
}

impl fmt::Display for ContextTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContextTag::PinSingle => "pin-single",
            ContextTag::PinPair => "pin-pair",
            ContextTag::PinHt => "pin-ht",
            ContextTag::Promote => "promote",
            ContextTag::ProtectPair => "protect-pair",
            ContextTag::PinPairPromote => "pin-pair+promote",
            ContextTag::Random => "random",
        })
    }
}

/// An ordered list of contexts with their provenance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GadgetFamily {
    contexts: Vec<(ContextTag, Problem)>,
}

impl GadgetFamily {
    pub fn push(&mut self, tag: ContextTag, ctx: Problem) {
        self.contexts.push((tag, ctx));
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ContextTag, &Problem)> {
        self.contexts.iter().map(|(t, p)| (*t, p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub tag: ContextTag,
    pub context: Problem,
    pub left: OutcomeSet,
    pub right: OutcomeSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub agreed: bool,
    pub checked: usize,
    pub first_disagreement: Option<Disagreement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("nothing to check: the gadget family is empty and the random budget is 0")]
    EmptyFamily,
    #[error(transparent)]
    Enum(#[from] EnumError),
}

/// The ranks the deterministic selector gadgets use: the lower end of the
/// interval and the next rank if the interval contains it.
fn gadget_ranks(iv: RankInterval) -> Vec<u32> {
    let low = iv.low();
    let next = match iv.high() {
        Bound::Finite(h) => h.min(low + 1),
        Bound::Infinity => low + 1,
    };
    if next == low {
        vec![low]
    } else {
        vec![low, next]
    }
}

/// The deterministic part of the oracle's context family.
pub fn gadget_family(
    p: &Problem,
    q: &Problem,
    mode: EquivalenceMode,
    m: SemanticsMode,
    a: &Alphabet,
) -> Result<GadgetFamily, EnumError> {
    let mut fam = GadgetFamily::default();
    let all = a.interpretations();
    let pairs = || {
        all.iter()
            .enumerate()
            .flat_map(|(k, x)| all[k + 1..].iter().map(move |y| (x, y)))
    };
    if matches!(mode, EquivalenceMode::Gen | EquivalenceMode::Combined(_)) {
        for x in &all {
            fam.push(
                ContextTag::PinSingle,
                Problem::generator_only(pin_single(x, a)),
            );
        }
        for (x, y) in pairs() {
            let t = pin_pair(x, y, a).expect("distinct pair");
            fam.push(ContextTag::PinPair, Problem::generator_only(t));
        }
        if m == SemanticsMode::AnswerSet {
            for t in &all {
                for h in &all {
                    if h.is_subset(t) {
                        let g = pin_ht(h, t, a).expect("nested pair");
                        fam.push(ContextTag::PinHt, Problem::generator_only(g));
                    }
                }
            }
        }
    }
    if let Some(iv) = mode.interval() {
        let ranks = gadget_ranks(iv);
        let mut outs: BTreeSet<Interpretation> = outcomes(p, m, a)?.members;
        outs.extend(outcomes(q, m, a)?.members);
        let outs: Vec<Interpretation> = outs.into_iter().collect();
        for &r in &ranks {
            for x in &outs {
                fam.push(
                    ContextTag::Promote,
                    Problem::selector_only(promote(x, r, a)),
                );
            }
            for (k, x) in outs.iter().enumerate() {
                for y in &outs[k + 1..] {
                    let s = protect_pair(x, y, r, a);
                    fam.push(ContextTag::ProtectPair, Problem::selector_only(s));
                }
            }
        }
        if matches!(mode, EquivalenceMode::Combined(_)) {
            for (x, y) in pairs() {
                let t = pin_pair(x, y, a).expect("distinct pair");
                for &r in &ranks {
                    for z in [x, y] {
                        fam.push(
                            ContextTag::PinPairPromote,
                            Problem::new(t.clone(), promote(z, r, a)),
                        );
                    }
                }
            }
        }
    }
    Ok(fam)
}

/// A small random context allowed by `mode`: at most two generator formulas
/// of depth at most 3 and at most two rules with at most two heads, ranks
/// drawn from the interval with ∞ capped at two past the highest rank used.
pub fn random_context<R: Rng + ?Sized>(
    rng: &mut R,
    mode: EquivalenceMode,
    a: &Alphabet,
    rank_cap: u32,
) -> Problem {
    let atoms = a.atoms();
    let generator: Theory = if !matches!(mode, EquivalenceMode::Sel(_)) {
        let n = rng.gen_range(0..=2);
        (0..n).map(|_| random_formula(rng, atoms, 3)).collect()
    } else {
        Theory::empty()
    };
    let selector: Selector = match mode.interval() {
        Some(iv) => {
            let high = match iv.high() {
                Bound::Finite(h) => h,
                Bound::Infinity => rank_cap.max(iv.low()),
            };
            let n = rng.gen_range(0..=2);
            (0..n)
                .map(|_| random_rule(rng, atoms, 2, (iv.low(), high)))
                .collect()
        }
        None => Selector::empty(),
    };
    Problem::new(generator, selector)
}

/// Compares `π(p ∪ R)` with `π(q ∪ R)` for every context `R` of the gadget
/// family followed by `budget` random contexts drawn from `seed`, stopping
/// at the first disagreement.
pub fn oracle_check(
    p: &Problem,
    q: &Problem,
    mode: EquivalenceMode,
    m: SemanticsMode,
    a: &Alphabet,
    budget: usize,
    seed: u64,
) -> Result<OracleReport, OracleError> {
    let fam = gadget_family(p, q, mode, m, a)?;
    if fam.is_empty() && budget == 0 {
        return Err(OracleError::EmptyFamily);
    }
    let rank_cap = p
        .selector
        .max_rank()
        .into_iter()
        .chain(q.selector.max_rank())
        .max()
        .unwrap_or(0)
        + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let randoms = (0..budget).map(|_| {
        (
            ContextTag::Random,
            random_context(&mut rng, mode, a, rank_cap),
        )
    });
    let mut checked = 0;
    for (tag, ctx) in fam.contexts.into_iter().chain(randoms) {
        checked += 1;
        let left = optimal(&union(p, &ctx), m, a)?;
        let right = optimal(&union(q, &ctx), m, a)?;
        if left.members != right.members {
            return Ok(OracleReport {
                agreed: false,
                checked,
                first_disagreement: Some(Disagreement {
                    tag,
                    context: ctx,
                    left,
                    right,
                }),
            });
        }
    }
    Ok(OracleReport {
        agreed: true,
        checked,
        first_disagreement: None,
    })
}
