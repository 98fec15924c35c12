//! Propositional formulas over the primitive connectives `⊥, ∧, ∨, →`, with
//! classical and here-and-there (HT) satisfaction.
//!
//! `¬φ`, `⊤` and `φ ↔ ψ` are not separate nodes: the constructors rewrite them
//! to `φ → ⊥`, `⊥ → ⊥` and `(φ → ψ) ∧ (ψ → φ)`. HT does not validate `¬¬a ≡ a`,
//! so keeping one evaluation path over the primitive nodes avoids accidental
//! simplifications.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A propositional atom. Names match `[a-z][A-Za-z0-9_]*` and are not one of
/// the reserved words `bot`, `top`, `not`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid atom name {0:?}")]
pub struct InvalidAtom(pub String);

pub(crate) const RESERVED: [&str; 3] = ["bot", "top", "not"];

pub(crate) fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !RESERVED.contains(&name)
}

impl Atom {
    pub fn new(name: &str) -> Result<Atom, InvalidAtom> {
        if is_atom_name(name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(InvalidAtom(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Atom {
    type Err = InvalidAtom;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Atom::new(s)
    }
}

/// A propositional formula. Equality is structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bottom,
    Atom(Atom),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn bottom() -> Formula {
        Formula::Bottom
    }

    /// `⊤`, i.e. `⊥ → ⊥`.
    pub fn top() -> Formula {
        Formula::implies(Formula::Bottom, Formula::Bottom)
    }

    pub fn atom(atom: Atom) -> Formula {
        Formula::Atom(atom)
    }

    /// Atom by name.
    ///
    /// Panics if `name` is not a valid atom name; use [`Atom::new`] for
    /// untrusted input.
    pub fn var(name: &str) -> Formula {
        Formula::Atom(Atom::new(name).expect("valid atom name"))
    }

    /// `¬φ`, i.e. `φ → ⊥`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::implies(f, Formula::Bottom)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// `φ ↔ ψ`, i.e. `(φ → ψ) ∧ (ψ → φ)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    /// Left-nested conjunction; `⊤` when empty.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }

    /// Left-nested disjunction; `⊥` when empty.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bottom)
    }

    /// The operand of `φ → ⊥`, if this is a negation.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, b) if **b == Formula::Bottom => Some(a),
            _ => None,
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Implies(a, b) if **a == Formula::Bottom && **b == Formula::Bottom)
    }

    /// The two sides of `(φ → ψ) ∧ (ψ → φ)`, if this is a biconditional.
    pub fn biconditional(&self) -> Option<(&Formula, &Formula)> {
        if let Formula::And(l, r) = self {
            if let (Formula::Implies(a, b), Formula::Implies(c, d)) = (&**l, &**r) {
                if a == d && b == c {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Bottom => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Height of the primitive tree; atoms and `⊥` have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Atom(_) => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exactly the atoms occurring in `f`.
pub fn atoms_of(f: &Formula) -> BTreeSet<Atom> {
    f.atoms()
}

/// A classical interpretation: the set of atoms that are true.
///
/// Ordered canonically by cardinality, then lexicographically by the sorted
/// atom list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Interpretation(BTreeSet<Atom>);

impl Interpretation {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Interpretation {
        Interpretation(atoms.into_iter().collect())
    }

    pub fn empty() -> Interpretation {
        Interpretation::default()
    }

    /// Panics on an invalid name.
    pub fn from_names(names: &[&str]) -> Interpretation {
        Interpretation(
            names
                .iter()
                .map(|n| Atom::new(n).expect("valid atom name"))
                .collect(),
        )
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.contains(atom)
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersection(&self, other: &Interpretation) -> Interpretation {
        Interpretation(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn union(&self, other: &Interpretation) -> Interpretation {
        Interpretation(self.0.union(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &Interpretation) -> Interpretation {
        Interpretation(self.0.difference(&other.0).cloned().collect())
    }

    /// Keeps only the atoms in `keep`.
    pub fn restrict(&self, keep: &BTreeSet<Atom>) -> Interpretation {
        Interpretation(self.0.intersection(keep).cloned().collect())
    }
}

impl Ord for Interpretation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for Interpretation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<T: IntoIterator<Item = Atom>>(iter: T) -> Self {
        Interpretation::new(iter)
    }
}

/// Comma-joined atoms, or `{}` for the empty interpretation.
impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("{}");
        }
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.0
                .iter()
                .map(|a| a.name())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("here-world {here:?} is not a subset of there-world {there:?}")]
pub struct NotNested {
    pub here: Interpretation,
    pub there: Interpretation,
}

/// An HT interpretation `⟨H, T⟩` with `H ⊆ T`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HtInterpretation {
    // field order gives the (there, here) ordering
    there: Interpretation,
    here: Interpretation,
}

impl HtInterpretation {
    pub fn new(here: Interpretation, there: Interpretation) -> Result<Self, NotNested> {
        if here.is_subset(&there) {
            Ok(HtInterpretation { there, here })
        } else {
            Err(NotNested { here, there })
        }
    }

    /// `⟨I, I⟩`.
    pub fn total(i: Interpretation) -> Self {
        HtInterpretation {
            there: i.clone(),
            here: i,
        }
    }

    pub fn here(&self) -> &Interpretation {
        &self.here
    }

    pub fn there(&self) -> &Interpretation {
        &self.there
    }
}

impl fmt::Display for HtInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}; {}>", self.here, self.there)
    }
}

pub fn eval_classical(i: &Interpretation, f: &Formula) -> bool {
    match f {
        Formula::Bottom => false,
        Formula::Atom(a) => i.contains(a),
        Formula::And(a, b) => eval_classical(i, a) && eval_classical(i, b),
        Formula::Or(a, b) => eval_classical(i, a) || eval_classical(i, b),
        Formula::Implies(a, b) => !eval_classical(i, a) || eval_classical(i, b),
    }
}

/// HT satisfaction. An implication holds at `⟨H,T⟩` iff it holds classically
/// in `T` and, at `H`, the antecedent fails or the consequent holds.
pub fn eval_ht(p: &HtInterpretation, f: &Formula) -> bool {
    match f {
        Formula::Bottom => false,
        Formula::Atom(a) => p.here.contains(a),
        Formula::And(a, b) => eval_ht(p, a) && eval_ht(p, b),
        Formula::Or(a, b) => eval_ht(p, a) || eval_ht(p, b),
        Formula::Implies(a, b) => eval_classical(&p.there, f) && (!eval_ht(p, a) || eval_ht(p, b)),
    }
}

/// Default enumeration caps: atoms for classical and answer-set enumeration.
pub const DEFAULT_CLASSICAL_CAP: usize = 22;
pub const DEFAULT_ANSWER_SET_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimits {
    pub classical: usize,
    pub answer_set: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            classical: DEFAULT_CLASSICAL_CAP,
            answer_set: DEFAULT_ANSWER_SET_CAP,
        }
    }
}

impl EnumLimits {
    /// The same cap for both semantics.
    pub fn uniform(cap: usize) -> Self {
        EnumLimits {
            classical: cap,
            answer_set: cap,
        }
    }
}

/// Hard ceiling imposed by the bitmask representation.
pub(crate) const MAX_ALPHABET: usize = 63;

/// A finite, sorted set of atoms that every enumeration ranges over, plus the
/// caps that guard enumeration size.
#[derive(Clone, Debug, Default)]
pub struct Alphabet {
    atoms: Vec<Atom>,
    limits: EnumLimits,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Alphabet {
        let set: BTreeSet<Atom> = atoms.into_iter().collect();
        Alphabet {
            atoms: set.into_iter().collect(),
            limits: EnumLimits::default(),
        }
    }

    /// Panics on an invalid name.
    pub fn from_names(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().map(|n| Atom::new(n).expect("valid atom name")))
    }

    pub fn with_limits(mut self, limits: EnumLimits) -> Alphabet {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> EnumLimits {
        self.limits
    }

    /// Union with more atoms; limits are kept.
    pub fn extended(&self, more: impl IntoIterator<Item = Atom>) -> Alphabet {
        let mut set: BTreeSet<Atom> = self.atoms.iter().cloned().collect();
        set.extend(more);
        Alphabet {
            atoms: set.into_iter().collect(),
            limits: self.limits,
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.index_of(atom).is_some()
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.atoms.binary_search(atom).ok()
    }

    pub fn covers(&self, atoms: &BTreeSet<Atom>) -> bool {
        atoms.iter().all(|a| self.contains(a))
    }

    /// Every interpretation over the alphabet, in canonical order.
    pub fn interpretations(&self) -> Vec<Interpretation> {
        assert!(self.len() <= MAX_ALPHABET);
        let mut all: Vec<_> = (0..1u64 << self.len()).map(|m| self.decode(m)).collect();
        all.sort();
        all
    }

    pub(crate) fn decode(&self, mask: u64) -> Interpretation {
        Interpretation(
            self.atoms
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect(),
        )
    }

    pub(crate) fn full_mask(&self) -> u64 {
        if self.len() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }
}
