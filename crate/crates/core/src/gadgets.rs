//! Context-building gadgets: theories that pin the outcomes down to one or
//! two interpretations, selectors that promote an interpretation or protect a
//! pair, and the minimal-model encoding of an NNF theory as a problem.
//!
//! Gadget formulas are kept verbatim (e.g. `¬a → ⊥` rather than `a`), because
//! the here-and-there semantics distinguishes classically equivalent forms.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::logic::{Alphabet, Atom, Formula, Interpretation};
use crate::models::Theory;
use crate::preference::{PreferenceRule, Selector};
use crate::problem::Problem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("a pair gadget needs two distinct interpretations, got {0} twice")]
    IdenticalPair(Interpretation),
    #[error("here-part {here} is not a subset of there-part {there}")]
    NotNested {
        here: Interpretation,
        there: Interpretation,
    },
    #[error("formula is not in negation normal form: {0}")]
    NotNnf(Formula),
}

/// The atoms of `a` together with those of the given interpretations.
fn universe<'a>(a: &Alphabet, parts: impl IntoIterator<Item = &'a Interpretation>) -> Vec<Atom> {
    let mut all: BTreeSet<Atom> = a.atoms().iter().cloned().collect();
    for p in parts {
        all.extend(p.iter().cloned());
    }
    all.into_iter().collect()
}

/// The literal on `x` that agrees with `i`.
fn agreeing_literal(x: &Atom, i: &Interpretation) -> Formula {
    if i.contains(x) {
        Formula::atom(x.clone())
    } else {
        Formula::not(Formula::atom(x.clone()))
    }
}

/// `Π[I] = {x → ⊥ : x ∉ I} ∪ {¬x → ⊥ : x ∈ I}`. Added to a theory that has `I`
/// as a model, it leaves exactly `I` as classical model; if `I` is an answer
/// set of the theory, it also leaves exactly `I` as answer set. (`¬x → ⊥` only
/// constrains, so it cannot make an unsupported `x` true.)
pub fn pin_single(i: &Interpretation, a: &Alphabet) -> Theory {
    universe(a, [i])
        .into_iter()
        .map(|x| {
            let f = Formula::atom(x.clone());
            if i.contains(&x) {
                Formula::implies(Formula::not(f), Formula::bottom())
            } else {
                Formula::implies(f, Formula::bottom())
            }
        })
        .collect()
}

/// `Π[I,J]`: for every pair of atoms `x, y`, the disjunction of the literal on
/// `x` agreeing with `I` and the literal on `y` agreeing with `J`. Its models
/// are exactly `I` and `J`.
pub fn pin_pair(
    i: &Interpretation,
    j: &Interpretation,
    a: &Alphabet,
) -> Result<Theory, GadgetError> {
    if i == j {
        return Err(GadgetError::IdenticalPair(i.clone()));
    }
    let atoms = universe(a, [i, j]);
    let mut t = Theory::empty();
    for x in &atoms {
        for y in &atoms {
            t.insert(Formula::or(agreeing_literal(x, i), agreeing_literal(y, j)));
        }
    }
    Ok(t)
}

/// A generator gadget separating by a single HT model `⟨H,T⟩`: the facts of
/// `H`, the implications `x → y` between distinct atoms of `T \ H`, and
/// `Π[T]`. Its only classical model is `T`, and its HT models with there-part
/// `T` are `⟨H,T⟩` and `⟨T,T⟩`. Added to a theory having `T` as a model, `T`
/// is therefore an answer set exactly when `⟨H,T⟩` is not an HT model of the
/// theory. With `H = T` it asserts `T` outright.
pub fn pin_ht(
    here: &Interpretation,
    there: &Interpretation,
    a: &Alphabet,
) -> Result<Theory, GadgetError> {
    if !here.is_subset(there) {
        return Err(GadgetError::NotNested {
            here: here.clone(),
            there: there.clone(),
        });
    }
    let mut t = pin_single(there, a);
    for x in here.iter() {
        t.insert(Formula::atom(x.clone()));
    }
    let gap = there.difference(here);
    for x in gap.iter() {
        for y in gap.iter() {
            if x != y {
                t.insert(Formula::implies(
                    Formula::atom(x.clone()),
                    Formula::atom(y.clone()),
                ));
            }
        }
    }
    Ok(t)
}

fn rule(head: Formula, rank: u32) -> PreferenceRule {
    PreferenceRule::fact(vec![head, Formula::top()], rank)
}

/// `R_j[I] = {x > ⊤ ←^j : x ∈ I} ∪ {¬x > ⊤ ←^j : x ∉ I}`: every rule grades `I`
/// with 1 and every other interpretation with 2 somewhere.
pub fn promote(i: &Interpretation, rank: u32, a: &Alphabet) -> Selector {
    universe(a, [i])
        .iter()
        .map(|x| rule(agreeing_literal(x, i), rank))
        .collect()
}

/// `R'_k[I,J]`, five rule families at rank `k` that grade both `I` and `J`
/// with 1 while every other interpretation gets a 2 on some rule: `a > ⊤` for
/// `a ∈ I ∩ J`, `¬a > ⊤` for `a ∉ I ∪ J`, `a ∨ b > ⊤` and `¬a ∨ ¬b > ⊤` for
/// `a ∈ I \ J, b ∈ J \ I`, and `(a ∧ b) ∨ (¬a ∧ ¬b) > ⊤` for distinct `a, b`
/// both in `I \ J` or both in `J \ I`.
pub fn protect_pair(i: &Interpretation, j: &Interpretation, rank: u32, a: &Alphabet) -> Selector {
    let atoms = universe(a, [i, j]);
    let v = |x: &Atom| Formula::atom(x.clone());
    let nv = |x: &Atom| Formula::not(Formula::atom(x.clone()));
    let mut s = Selector::empty();
    for x in &atoms {
        match (i.contains(x), j.contains(x)) {
            (true, true) => {
                s.insert(rule(v(x), rank));
            }
            (false, false) => {
                s.insert(rule(nv(x), rank));
            }
            _ => {}
        }
    }
    let only_i: Vec<&Atom> = atoms
        .iter()
        .filter(|x| i.contains(x) && !j.contains(x))
        .collect();
    let only_j: Vec<&Atom> = atoms
        .iter()
        .filter(|x| j.contains(x) && !i.contains(x))
        .collect();
    for x in &only_i {
        for y in &only_j {
            s.insert(rule(Formula::or(v(x), v(y)), rank));
            s.insert(rule(Formula::or(nv(x), nv(y)), rank));
        }
    }
    // Atoms on the same side of the symmetric difference must agree. Pairing
    // atoms across the sides would grade `I` and `J` themselves with 2.
    for side in [&only_i, &only_j] {
        for x in side.iter() {
            for y in side.iter() {
                if x == y {
                    continue;
                }
                s.insert(rule(
                    Formula::or(Formula::and(v(x), v(y)), Formula::and(nv(x), nv(y))),
                    rank,
                ));
            }
        }
    }
    s
}

/// The minimal-model encoding of an NNF theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinModelEncoding {
    pub problem: Problem,
    /// Each original atom mapped to its companion standing for its negation.
    pub companions: BTreeMap<Atom, Atom>,
}

impl MinModelEncoding {
    /// The original atoms true in an outcome of the encoded problem.
    pub fn project(&self, i: &Interpretation) -> Interpretation {
        Interpretation::new(self.companions.keys().filter(|u| i.contains(u)).cloned())
    }
}

fn replace_negations(f: &Formula, comp: &BTreeMap<Atom, Atom>) -> Option<Formula> {
    if f.is_top() {
        return Some(f.clone());
    }
    if let Some(inner) = f.negated() {
        return match inner {
            Formula::Atom(u) => Some(Formula::atom(comp[u].clone())),
            Formula::Bottom => Some(Formula::top()),
            _ => None,
        };
    }
    match f {
        Formula::Bottom | Formula::Atom(_) => Some(f.clone()),
        Formula::And(x, y) => Some(Formula::and(
            replace_negations(x, comp)?,
            replace_negations(y, comp)?,
        )),
        Formula::Or(x, y) => Some(Formula::or(
            replace_negations(x, comp)?,
            replace_negations(y, comp)?,
        )),
        Formula::Implies(..) => None,
    }
}

/// A fresh companion name for `u`: `u_c`, with extra underscores inserted
/// until it clashes with nothing in `taken`.
fn companion_name(u: &Atom, taken: &BTreeSet<Atom>) -> Atom {
    let mut sep = String::from("_");
    loop {
        let cand = Atom::new(&format!("{}{}c", u.name(), sep)).expect("valid companion name");
        if !taken.contains(&cand) {
            return cand;
        }
        sep.push('_');
    }
}

/// `P_T`: generator `T[¬u/u'] ∪ {u ↔ ¬u'}` and selector `{u' > u ←}` at rank
/// 1, over the atoms of `t` together with `universe`. The optimal outcomes
/// correspond one-to-one to the minimal models of `t`.
pub fn encode_min_models(
    t: &Theory,
    universe: Option<&BTreeSet<Atom>>,
) -> Result<MinModelEncoding, GadgetError> {
    let mut atoms = t.atoms();
    if let Some(u) = universe {
        atoms.extend(u.iter().cloned());
    }
    let mut taken = atoms.clone();
    let mut companions = BTreeMap::new();
    for u in &atoms {
        let c = companion_name(u, &taken);
        taken.insert(c.clone());
        companions.insert(u.clone(), c);
    }
    let mut generator = Theory::empty();
    for f in t.formulas() {
        let g = replace_negations(f, &companions).ok_or_else(|| GadgetError::NotNnf(f.clone()))?;
        generator.insert(g);
    }
    let mut selector = Selector::empty();
    for (u, c) in &companions {
        let (u, c) = (Formula::atom(u.clone()), Formula::atom(c.clone()));
        generator.insert(Formula::iff(u.clone(), Formula::not(c.clone())));
        selector.insert(PreferenceRule::fact(vec![c, u], 1));
    }
    Ok(MinModelEncoding {
        problem: Problem::new(generator, selector),
        companions,
    })
}
