//! Seeded random formulas, theories, selectors and problems for property
//! tests and the oracle's random contexts.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::logic::{Atom, Formula};
use crate::models::Theory;
use crate::preference::{PreferenceRule, Selector};
use crate::problem::Problem;

/// Shape limits for random problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProblemShape {
    pub max_formulas: usize,
    pub max_depth: usize,
    pub max_rules: usize,
    pub max_heads: usize,
    pub min_rank: u32,
    pub max_rank: u32,
}

impl Default for ProblemShape {
    fn default() -> Self {
        ProblemShape {
            max_formulas: 3,
            max_depth: 3,
            max_rules: 3,
            max_heads: 3,
            min_rank: 1,
            max_rank: 3,
        }
    }
}

/// `a`, `b`, `c`, … (up to 26 atoms).
pub fn standard_atoms(n: usize) -> Vec<Atom> {
    assert!(n <= 26, "at most 26 standard atoms");
    (0..n)
        .map(|k| Atom::new(&((b'a' + k as u8) as char).to_string()).expect("letter atom"))
        .collect()
}

/// `⊤` is `⊥ → ⊥`, of depth 1, so it is only drawn when depth allows.
fn leaf<R: Rng + ?Sized>(rng: &mut R, atoms: &[Atom], depth: usize) -> Formula {
    match (atoms.choose(rng), rng.gen_range(0..10)) {
        (Some(a), 0..=7) => Formula::atom(a.clone()),
        (_, 8) if depth > 0 => Formula::top(),
        _ => Formula::bottom(),
    }
}

/// A random formula over `atoms` whose primitive tree has depth at most
/// `depth`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, atoms: &[Atom], depth: usize) -> Formula {
    if depth == 0 || rng.gen_range(0..4) == 0 {
        return leaf(rng, atoms, depth);
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => Formula::and(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        1 => Formula::or(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        2 => Formula::implies(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        _ => Formula::not(random_formula(rng, atoms, d)),
    }
}

/// A random formula in negation normal form: negation only on atoms, no
/// implications besides those negations.
pub fn random_nnf_formula<R: Rng + ?Sized>(rng: &mut R, atoms: &[Atom], depth: usize) -> Formula {
    if depth == 0 || rng.gen_range(0..3) == 0 {
        let a = Formula::atom(atoms.choose(rng).expect("non-empty atoms").clone());
        return if rng.gen_bool(0.4) {
            Formula::not(a)
        } else {
            a
        };
    }
    let (x, y) = (
        random_nnf_formula(rng, atoms, depth - 1),
        random_nnf_formula(rng, atoms, depth - 1),
    );
    if rng.gen_bool(0.5) {
        Formula::and(x, y)
    } else {
        Formula::or(x, y)
    }
}

pub fn random_theory<R: Rng + ?Sized>(
    rng: &mut R,
    atoms: &[Atom],
    max_formulas: usize,
    max_depth: usize,
) -> Theory {
    let n = rng.gen_range(0..=max_formulas);
    (0..n)
        .map(|_| random_formula(rng, atoms, max_depth))
        .collect()
}

pub fn random_rule<R: Rng + ?Sized>(
    rng: &mut R,
    atoms: &[Atom],
    max_heads: usize,
    ranks: (u32, u32),
) -> PreferenceRule {
    let k = rng.gen_range(1..=max_heads.max(1));
    let heads = (0..k).map(|_| random_formula(rng, atoms, 2)).collect();
    let body = if rng.gen_bool(0.6) {
        Formula::top()
    } else {
        random_formula(rng, atoms, 1)
    };
    let rank = rng.gen_range(ranks.0..=ranks.1);
    PreferenceRule::new(heads, body, rank).expect("valid random rule")
}

pub fn random_selector<R: Rng + ?Sized>(
    rng: &mut R,
    atoms: &[Atom],
    max_rules: usize,
    max_heads: usize,
    ranks: (u32, u32),
) -> Selector {
    let n = rng.gen_range(0..=max_rules);
    (0..n)
        .map(|_| random_rule(rng, atoms, max_heads, ranks))
        .collect()
}

pub fn random_problem<R: Rng + ?Sized>(
    rng: &mut R,
    atoms: &[Atom],
    shape: &ProblemShape,
) -> Problem {
    Problem::new(
        random_theory(rng, atoms, shape.max_formulas, shape.max_depth),
        random_selector(
            rng,
            atoms,
            shape.max_rules,
            shape.max_heads,
            (shape.min_rank, shape.max_rank),
        ),
    )
}

/// A variant of `p` produced by small edits that often, but not always,
/// preserve some form of equivalence: adding single-head rules, tautologies
/// or doubly negated copies, re-ranking or dropping a rule, swapping heads.
pub fn mutate<R: Rng + ?Sized>(
    rng: &mut R,
    p: &Problem,
    atoms: &[Atom],
    shape: &ProblemShape,
) -> Problem {
    let mut generator = p.generator.clone();
    let mut rules: Vec<PreferenceRule> = p.selector.rules().cloned().collect();
    let depth = shape.max_depth;
    let edits = rng.gen_range(1..=2);
    for _ in 0..edits {
        let room_for_formula = generator.len() < shape.max_formulas;
        match rng.gen_range(0..7) {
            0 if rules.len() < shape.max_rules => {
                let h = random_formula(rng, atoms, 2);
                let rank = rng.gen_range(shape.min_rank..=shape.max_rank);
                rules.push(PreferenceRule::fact(vec![h], rank));
            }
            1 if room_for_formula && depth >= 1 => {
                let f = random_formula(rng, atoms, (depth - 1).min(1));
                generator.insert(Formula::implies(f.clone(), f));
            }
            2 if room_for_formula => {
                let f = generator
                    .formulas()
                    .find(|f| f.depth() + 2 <= depth)
                    .cloned();
                if let Some(f) = f {
                    generator.insert(Formula::not(Formula::not(f)));
                }
            }
            3 if !rules.is_empty() => {
                let k = rng.gen_range(0..rules.len());
                let r = &rules[k];
                let rank = rng.gen_range(shape.min_rank..=shape.max_rank);
                rules[k] = PreferenceRule::new(r.heads().to_vec(), r.body().clone(), rank)
                    .expect("valid rule");
            }
            4 if !rules.is_empty() => {
                let k = rng.gen_range(0..rules.len());
                rules.remove(k);
            }
            5 => {
                if let Some(k) = (0..rules.len()).find(|&k| rules[k].heads().len() >= 2) {
                    let r = &rules[k];
                    let mut heads = r.heads().to_vec();
                    heads.swap(0, 1);
                    rules[k] =
                        PreferenceRule::new(heads, r.body().clone(), r.rank()).expect("valid rule");
                }
            }
            6 if room_for_formula && depth >= 2 => {
                let f = random_formula(rng, atoms, depth - 2);
                generator.insert(Formula::or(f.clone(), Formula::not(f)));
            }
            _ => {}
        }
    }
    Problem::new(generator, Selector::new(rules))
}
