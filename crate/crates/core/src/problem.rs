//! Optimization problems `(generator, selector)` and their outcome and
//! optimal-outcome sets.

use std::collections::BTreeSet;

use crate::compiled::{CompiledSelector, CompiledTheory, Scored};
use crate::logic::{Alphabet, Atom, Interpretation};
use crate::models::{check_covers, check_size, outcome_masks, EnumError, SemanticsMode, Theory};
use crate::preference::{rank_slice, PreferenceRule, RankInterval, Selector};

/// A qualitative optimization problem.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Problem {
    pub generator: Theory,
    pub selector: Selector,
}

impl Problem {
    pub fn new(generator: Theory, selector: Selector) -> Problem {
        Problem {
            generator,
            selector,
        }
    }

    pub fn empty() -> Problem {
        Problem::default()
    }

    /// `(T, ∅)`.
    pub fn generator_only(generator: Theory) -> Problem {
        Problem::new(generator, Selector::empty())
    }

    /// `(∅, S)`.
    pub fn selector_only(selector: Selector) -> Problem {
        Problem::new(Theory::empty(), selector)
    }

    pub fn is_empty(&self) -> bool {
        self.generator.is_empty() && self.selector.is_empty()
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = self.generator.atoms();
        out.extend(self.selector.atoms());
        out
    }

    pub fn rules(&self) -> impl Iterator<Item = &PreferenceRule> + '_ {
        self.selector.rules()
    }
}

/// Componentwise union.
pub fn union(p: &Problem, q: &Problem) -> Problem {
    Problem::new(
        p.generator.union(&q.generator),
        p.selector.union(&q.selector),
    )
}

/// `P_[low, high]`: the generator with the rank-sliced selector.
pub fn restrict(p: &Problem, iv: RankInterval) -> Problem {
    Problem::new(p.generator.clone(), rank_slice(&p.selector, iv))
}

/// The alphabet of all atoms occurring in the given problems.
pub fn default_alphabet<'a>(problems: impl IntoIterator<Item = &'a Problem>) -> Alphabet {
    Alphabet::new(problems.into_iter().flat_map(|p| p.atoms()))
}

/// An outcome set tagged with how it was computed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OutcomeSet {
    pub members: BTreeSet<Interpretation>,
    pub semantics: SemanticsMode,
    pub alphabet: Alphabet,
}

impl OutcomeSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: &Interpretation) -> bool {
        self.members.contains(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Interpretation> {
        self.members.iter()
    }
}

/// A problem lowered to masks over one alphabet.
pub(crate) struct Compiled {
    pub(crate) generator: CompiledTheory,
    pub(crate) selector: CompiledSelector,
}

impl Compiled {
    pub(crate) fn new(p: &Problem, a: &Alphabet, m: SemanticsMode) -> Result<Compiled, EnumError> {
        check_covers(a, &p.atoms())?;
        check_size(a, m)?;
        Ok(Compiled {
            generator: CompiledTheory::new(p.generator.formulas(), a),
            selector: CompiledSelector::new(&p.selector, a),
        })
    }

    pub(crate) fn outcomes(&self, a: &Alphabet, m: SemanticsMode) -> Vec<u64> {
        outcome_masks(&self.generator, a, m)
    }
}

/// Members of `outcomes` not strictly dominated within `outcomes` under the
/// selector slice with ranks `< limit` (`None` = whole selector).
pub(crate) fn optimal_masks(
    sel: &CompiledSelector,
    outcomes: &[u64],
    limit: Option<u32>,
) -> Vec<u64> {
    let scored = Scored::new(sel, outcomes);
    scored
        .undominated(limit)
        .into_iter()
        .map(|k| outcomes[k])
        .collect()
}

fn outcome_set(a: &Alphabet, m: SemanticsMode, masks: &[u64]) -> OutcomeSet {
    OutcomeSet {
        members: masks.iter().map(|&x| a.decode(x)).collect(),
        semantics: m,
        alphabet: a.clone(),
    }
}

/// `μ(P)`: classical models or answer sets of the generator.
pub fn outcomes(p: &Problem, m: SemanticsMode, a: &Alphabet) -> Result<OutcomeSet, EnumError> {
    let c = Compiled::new(p, a, m)?;
    Ok(outcome_set(a, m, &c.outcomes(a, m)))
}

/// `π(P)`: outcomes not strictly dominated by another outcome.
pub fn optimal(p: &Problem, m: SemanticsMode, a: &Alphabet) -> Result<OutcomeSet, EnumError> {
    let c = Compiled::new(p, a, m)?;
    let mu = c.outcomes(a, m);
    Ok(outcome_set(a, m, &optimal_masks(&c.selector, &mu, None)))
}
