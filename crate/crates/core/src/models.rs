//! Exhaustive enumeration of classical models, HT models and equilibrium
//! models (answer sets) of finite theories.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::compiled::CompiledTheory;
use crate::logic::{Alphabet, Atom, Formula, HtInterpretation, Interpretation, MAX_ALPHABET};

/// A finite set of formulas, read conjunctively.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Theory(BTreeSet<Formula>);

impl Theory {
    pub fn new(formulas: impl IntoIterator<Item = Formula>) -> Theory {
        Theory(formulas.into_iter().collect())
    }

    pub fn empty() -> Theory {
        Theory::default()
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, f: Formula) -> bool {
        self.0.insert(f)
    }

    pub fn union(&self, other: &Theory) -> Theory {
        Theory(self.0.union(&other.0).cloned().collect())
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for f in &self.0 {
            f.collect_atoms(&mut out);
        }
        out
    }
}

impl FromIterator<Formula> for Theory {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        Theory::new(iter)
    }
}

/// How outcomes are read off a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemanticsMode {
    /// Classical models.
    Classical,
    /// Equilibrium models.
    AnswerSet,
}

impl SemanticsMode {
    pub const ALL: [SemanticsMode; 2] = [SemanticsMode::Classical, SemanticsMode::AnswerSet];
}

impl fmt::Display for SemanticsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemanticsMode::Classical => "classical",
            SemanticsMode::AnswerSet => "answer-set",
        })
    }
}

impl std::str::FromStr for SemanticsMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" => Ok(SemanticsMode::Classical),
            "answer-set" => Ok(SemanticsMode::AnswerSet),
            other => Err(format!("unknown semantics {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("alphabet has {atoms} atoms, above the {semantics} enumeration cap of {cap}")]
    AlphabetTooLarge {
        atoms: usize,
        cap: usize,
        semantics: SemanticsMode,
    },
    #[error("atom {0} is not in the alphabet")]
    AtomOutsideAlphabet(Atom),
}

pub(crate) fn check_size(a: &Alphabet, m: SemanticsMode) -> Result<(), EnumError> {
    let cap = match m {
        SemanticsMode::Classical => a.limits().classical,
        SemanticsMode::AnswerSet => a.limits().answer_set,
    }
    .min(MAX_ALPHABET);
    if a.len() > cap {
        return Err(EnumError::AlphabetTooLarge {
            atoms: a.len(),
            cap,
            semantics: m,
        });
    }
    Ok(())
}

pub(crate) fn check_covers(a: &Alphabet, atoms: &BTreeSet<Atom>) -> Result<(), EnumError> {
    match atoms.iter().find(|x| !a.contains(x)) {
        Some(x) => Err(EnumError::AtomOutsideAlphabet(x.clone())),
        None => Ok(()),
    }
}

/// Classical models as masks, ascending numerically.
pub(crate) fn model_masks(t: &CompiledTheory, a: &Alphabet) -> Vec<u64> {
    (0..=a.full_mask()).filter(|&m| t.sat(m)).collect()
}

/// Answer sets as masks: models `T` such that no proper subset `H` has
/// `⟨H,T⟩` satisfying the theory.
pub(crate) fn answer_set_masks(t: &CompiledTheory, a: &Alphabet) -> Vec<u64> {
    model_masks(t, a)
        .into_iter()
        .filter(|&there| !proper_submasks(there).any(|here| t.ht_sat(here, there)))
        .collect()
}

pub(crate) fn outcome_masks(t: &CompiledTheory, a: &Alphabet, m: SemanticsMode) -> Vec<u64> {
    match m {
        SemanticsMode::Classical => model_masks(t, a),
        SemanticsMode::AnswerSet => answer_set_masks(t, a),
    }
}

/// All `(here, there)` HT models, grouped by there-world.
pub(crate) fn ht_model_masks(t: &CompiledTheory, a: &Alphabet) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for there in model_masks(t, a) {
        out.extend(
            proper_submasks(there)
                .filter(|&here| t.ht_sat(here, there))
                .map(|here| (here, there)),
        );
        out.push((there, there));
    }
    out
}

/// Proper submasks of `m`, descending, ending with 0 (when `m != 0`).
pub(crate) fn proper_submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut next = if m == 0 { None } else { Some((m - 1) & m) };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}

fn prepare(t: &Theory, a: &Alphabet, m: SemanticsMode) -> Result<CompiledTheory, EnumError> {
    check_covers(a, &t.atoms())?;
    check_size(a, m)?;
    Ok(CompiledTheory::new(t.formulas(), a))
}

fn decode_all(a: &Alphabet, masks: &[u64]) -> BTreeSet<Interpretation> {
    masks.iter().map(|&m| a.decode(m)).collect()
}

pub fn classical_models(t: &Theory, a: &Alphabet) -> Result<BTreeSet<Interpretation>, EnumError> {
    let c = prepare(t, a, SemanticsMode::Classical)?;
    Ok(decode_all(a, &model_masks(&c, a)))
}

pub fn ht_models(t: &Theory, a: &Alphabet) -> Result<BTreeSet<HtInterpretation>, EnumError> {
    let c = prepare(t, a, SemanticsMode::AnswerSet)?;
    Ok(ht_model_masks(&c, a)
        .into_iter()
        .map(|(h, th)| HtInterpretation::new(a.decode(h), a.decode(th)).expect("nested"))
        .collect())
}

pub fn answer_sets(t: &Theory, a: &Alphabet) -> Result<BTreeSet<Interpretation>, EnumError> {
    let c = prepare(t, a, SemanticsMode::AnswerSet)?;
    Ok(decode_all(a, &answer_set_masks(&c, a)))
}

/// Strong equivalence of generator theories: equal classical models, or equal
/// HT models under answer-set semantics.
pub fn theories_strongly_equivalent(
    t1: &Theory,
    t2: &Theory,
    m: SemanticsMode,
    a: &Alphabet,
) -> Result<bool, EnumError> {
    let c1 = prepare(t1, a, m)?;
    let c2 = prepare(t2, a, m)?;
    Ok(match m {
        SemanticsMode::Classical => model_masks(&c1, a) == model_masks(&c2, a),
        SemanticsMode::AnswerSet => ht_model_masks(&c1, a) == ht_model_masks(&c2, a),
    })
}
