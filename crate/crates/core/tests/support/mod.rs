//! Property checks shared by the integration tests and the acceptance suite.
//!
//! Every check returns a [`Tally`] of how many instances were examined and
//! which of them violated the property. The reference computations here are
//! deliberately naive: models and answer sets come straight from the
//! satisfaction definitions, and optimality from the literal preference
//! relation, so they do not share code paths with the library's bitmask
//! evaluation.

#![allow(dead_code)]

use std::collections::BTreeSet;

use qopt_core::random::{
    mutate, random_formula, random_nnf_formula, random_problem, random_theory, standard_atoms,
    ProblemShape,
};
use qopt_core::{
    answer_sets, classical_models, combined_equivalent, decide_with_context, encode_min_models,
    eval_classical, eval_ht, gen_equivalent, optimal, oracle_check, pin_ht, pin_pair, pin_single,
    pref_approx, pref_geq, pref_gt, promote, protect_pair, rank_slice, restrict,
    satisfaction_degree, sel_equivalent, union, verify_verdict, Alphabet, Atom, EquivalenceMode,
    Formula, HtInterpretation, Interpretation, PreferenceRule, Problem, RankInterval, Selector,
    SemanticsMode, Theory,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CL: SemanticsMode = SemanticsMode::Classical;
pub const AS: SemanticsMode = SemanticsMode::AnswerSet;

#[derive(Debug, Default)]
pub struct Tally {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} checks, {} violations",
            self.checked,
            self.violations.len()
        );
        for v in self.violations.iter().take(3) {
            s.push_str("\n    ");
            s.push_str(&v.replace('\n', "\n    "));
        }
        s
    }
}

// ---------------------------------------------------------------------------
// Reference semantics

pub fn ref_models(t: &Theory, a: &Alphabet) -> BTreeSet<Interpretation> {
    a.interpretations()
        .into_iter()
        .filter(|i| t.formulas().all(|f| eval_classical(i, f)))
        .collect()
}

fn ht_sat(t: &Theory, h: &Interpretation, tt: &Interpretation) -> bool {
    let pair = HtInterpretation::new(h.clone(), tt.clone()).expect("nested");
    t.formulas().all(|f| eval_ht(&pair, f))
}

fn subsets(i: &Interpretation) -> Vec<Interpretation> {
    let atoms: Vec<&Atom> = i.iter().collect();
    (0..1u32 << atoms.len())
        .map(|m| {
            Interpretation::new(
                atoms
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| m >> k & 1 == 1)
                    .map(|(_, a)| (*a).clone()),
            )
        })
        .collect()
}

pub fn ref_ht_models(t: &Theory, a: &Alphabet) -> BTreeSet<(Interpretation, Interpretation)> {
    let mut out = BTreeSet::new();
    for tt in a.interpretations() {
        for h in subsets(&tt) {
            if ht_sat(t, &h, &tt) {
                out.insert((h, tt.clone()));
            }
        }
    }
    out
}

pub fn ref_answer_sets(t: &Theory, a: &Alphabet) -> BTreeSet<Interpretation> {
    a.interpretations()
        .into_iter()
        .filter(|i| ht_sat(t, i, i) && !subsets(i).iter().any(|h| h != i && ht_sat(t, h, i)))
        .collect()
}

pub fn ref_outcomes(p: &Problem, m: SemanticsMode, a: &Alphabet) -> BTreeSet<Interpretation> {
    match m {
        SemanticsMode::Classical => ref_models(&p.generator, a),
        SemanticsMode::AnswerSet => ref_answer_sets(&p.generator, a),
    }
}

/// Members of `set` not strictly dominated within `set` under `s`.
pub fn ref_undominated(set: &BTreeSet<Interpretation>, s: &Selector) -> BTreeSet<Interpretation> {
    set.iter()
        .filter(|i| !set.iter().any(|j| pref_gt(j, i, s)))
        .cloned()
        .collect()
}

pub fn ref_optimal(p: &Problem, m: SemanticsMode, a: &Alphabet) -> BTreeSet<Interpretation> {
    ref_undominated(&ref_outcomes(p, m, a), &p.selector)
}

fn pairs_where(
    set: &BTreeSet<Interpretation>,
    rel: impl Fn(&Interpretation, &Interpretation) -> bool,
) -> BTreeSet<(Interpretation, Interpretation)> {
    let mut out = BTreeSet::new();
    for i in set {
        for j in set {
            if rel(i, j) {
                out.insert((i.clone(), j.clone()));
            }
        }
    }
    out
}

fn lib_optimal(p: &Problem, m: SemanticsMode, a: &Alphabet) -> BTreeSet<Interpretation> {
    optimal(p, m, a).expect("alphabet within caps").members
}

// ---------------------------------------------------------------------------
// Random corpus

pub fn intervals() -> Vec<RankInterval> {
    vec![
        RankInterval::closed(1, 1),
        RankInterval::closed(2, 2),
        RankInterval::closed(2, 3),
        RankInterval::unbounded(),
        RankInterval::from(2),
    ]
}

pub fn modes() -> Vec<EquivalenceMode> {
    let mut out = vec![EquivalenceMode::Gen];
    for iv in intervals() {
        out.push(EquivalenceMode::Sel(iv));
        out.push(EquivalenceMode::Combined(iv));
    }
    out
}

pub struct Case {
    pub p: Problem,
    pub q: Problem,
    pub alphabet: Alphabet,
}

/// Seeded problem pairs over at most three atoms. Every other pair is a
/// mutation of its first problem, so that equivalent verdicts occur too.
pub fn corpus(seed: u64, n: usize) -> Vec<Case> {
    let shape = ProblemShape::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|k| {
            let atoms = standard_atoms(rng.gen_range(1..=3));
            let p = random_problem(&mut rng, &atoms, &shape);
            let q = if k % 2 == 0 {
                random_problem(&mut rng, &atoms, &shape)
            } else {
                mutate(&mut rng, &p, &atoms, &shape)
            };
            Case {
                p,
                q,
                alphabet: Alphabet::new(atoms),
            }
        })
        .collect()
}

fn show(c: &Case) -> String {
    format!("P:\n{}\nQ:\n{}", c.p, c.q)
}

// ---------------------------------------------------------------------------
// Decider against direct evaluation

/// Every inequivalent verdict carries a context that separates; every
/// equivalent verdict survives the oracle's full family plus `budget` random
/// contexts.
pub fn decider_oracle_agreement(cases: &[Case], budget: usize) -> Tally {
    let mut t = Tally::default();
    for (n, c) in cases.iter().enumerate() {
        for m in SemanticsMode::ALL {
            for mode in modes() {
                let v = decide_with_context(&c.p, &c.q, mode, m, &c.alphabet).unwrap();
                if v.equivalent {
                    let r =
                        oracle_check(&c.p, &c.q, mode, m, &c.alphabet, budget, n as u64).unwrap();
                    t.check(r.agreed, || {
                        let d = r.first_disagreement.as_ref().unwrap();
                        format!(
                            "{mode:?} {m}: equivalent verdict refuted by {} context\n{}\n{}",
                            d.tag,
                            d.context,
                            show(c)
                        )
                    });
                } else {
                    let ok = v.separating_context.is_some()
                        && verify_verdict(&c.p, &c.q, &v, m, &c.alphabet).unwrap();
                    t.check(ok, || {
                        format!(
                            "{mode:?} {m}: {:?} without a verified separating context\n{}",
                            v.failed_condition.map(|c| c.to_string()),
                            show(c)
                        )
                    });
                }
            }
        }
    }
    t
}

// ---------------------------------------------------------------------------
// Corollaries and lemmas on the corpus

fn max_rank(p: &Problem, q: &Problem) -> Option<u32> {
    p.selector
        .max_rank()
        .into_iter()
        .chain(q.selector.max_rank())
        .max()
}

fn sel(p: &Problem, q: &Problem, iv: RankInterval, m: SemanticsMode, a: &Alphabet) -> bool {
    sel_equivalent(p, q, iv, m, a).unwrap().equivalent
}

fn comb(p: &Problem, q: &Problem, iv: RankInterval, m: SemanticsMode, a: &Alphabet) -> bool {
    combined_equivalent(p, q, iv, m, a).unwrap().equivalent
}

fn with_all_ranks(p: &Problem, rank: u32) -> Problem {
    let rules = p
        .rules()
        .map(|r| PreferenceRule::new(r.heads().to_vec(), r.body().clone(), rank).unwrap());
    Problem::new(p.generator.clone(), Selector::new(rules))
}

/// Generator contexts built from the gadgets over `a`.
fn generator_gadgets(a: &Alphabet, m: SemanticsMode) -> Vec<Theory> {
    let all = a.interpretations();
    let mut out = vec![Theory::empty()];
    for (k, i) in all.iter().enumerate() {
        out.push(pin_single(i, a));
        for j in &all[k + 1..] {
            out.push(pin_pair(i, j, a).unwrap());
        }
    }
    if m == SemanticsMode::AnswerSet {
        for tt in &all {
            for h in &all {
                if h.is_subset(tt) {
                    out.push(pin_ht(h, tt, a).unwrap());
                }
            }
        }
    }
    out
}

/// Combined equivalence implies sel-equivalence after adding any generator;
/// combined inequivalence shows up as sel-inequivalence after adding some
/// gadget generator.
pub fn proposition_generator_contexts(cases: &[Case], seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for c in cases {
        let a = &c.alphabet;
        for m in SemanticsMode::ALL {
            let gadgets = generator_gadgets(a, m);
            for iv in intervals() {
                let add = |g: &Theory| {
                    let r = Problem::generator_only(g.clone());
                    (union(&c.p, &r), union(&c.q, &r))
                };
                if comb(&c.p, &c.q, iv, m, a) {
                    let mut sample: Vec<Theory> =
                        gadgets.choose_multiple(&mut rng, 6).cloned().collect();
                    for _ in 0..3 {
                        sample.push(random_theory(&mut rng, a.atoms(), 2, 3));
                    }
                    for g in &sample {
                        let (p2, q2) = add(g);
                        t.check(sel(&p2, &q2, iv, m, a), || {
                            format!("{m} {iv}: combined-equivalent but not sel-equivalent after {g:?}\n{}", show(c))
                        });
                    }
                } else {
                    let found = gadgets.iter().any(|g| {
                        let (p2, q2) = add(g);
                        !sel(&p2, &q2, iv, m, a)
                    });
                    t.check(found, || {
                        format!("{m} {iv}: combined-inequivalent but no gadget generator breaks sel-equivalence\n{}", show(c))
                    });
                }
            }
        }
    }
    t
}

/// For classical semantics and unrestricted ranks, combined and
/// selector-only contexts give the same equivalence.
pub fn combined_equals_sel_classical(cases: &[Case]) -> Tally {
    let mut t = Tally::default();
    let iv = RankInterval::unbounded();
    for c in cases {
        let a = &c.alphabet;
        t.check(
            comb(&c.p, &c.q, iv, CL, a) == sel(&c.p, &c.q, iv, CL, a),
            || show(c),
        );
    }
    t
}

/// Classical sel-equivalence with unrestricted ranks implies
/// gen-equivalence.
pub fn sel_implies_gen_classical(cases: &[Case]) -> Tally {
    let mut t = Tally::default();
    for c in cases {
        let a = &c.alphabet;
        if sel(&c.p, &c.q, RankInterval::unbounded(), CL, a) {
            t.check(
                gen_equivalent(&c.p, &c.q, CL, a).unwrap().equivalent,
                || show(c),
            );
        } else {
            t.check(true, String::new);
        }
    }
    t
}

/// Simple problems: sel at [1,∞] ⇔ sel at [1,1] ⇔ equal outcomes and equal
/// weak preference on them. For classical semantics combined equivalence
/// coincides with all of these too.
pub fn simple_problems(cases: &[Case]) -> Tally {
    let mut t = Tally::default();
    for c in cases {
        let (p, q, a) = (
            with_all_ranks(&c.p, 1),
            with_all_ranks(&c.q, 1),
            &c.alphabet,
        );
        for m in SemanticsMode::ALL {
            let full = sel(&p, &q, RankInterval::unbounded(), m, a);
            let one = sel(&p, &q, RankInterval::closed(1, 1), m, a);
            let mu_p = ref_outcomes(&p, m, a);
            let mu_q = ref_outcomes(&q, m, a);
            let direct = mu_p == mu_q
                && pairs_where(&mu_p, |i, j| pref_geq(i, j, &p.selector))
                    == pairs_where(&mu_q, |i, j| pref_geq(i, j, &q.selector));
            t.check(full == one && one == direct, || {
                format!("{m}: [1,inf]={full} [1,1]={one} direct={direct}\nP:\n{p}\nQ:\n{q}")
            });
            if m == CL {
                let cf = comb(&p, &q, RankInterval::unbounded(), m, a);
                let c1 = comb(&p, &q, RankInterval::closed(1, 1), m, a);
                t.check(cf == full && c1 == full, || {
                    format!("classical simple: combined {cf}/{c1} vs sel {full}\nP:\n{p}\nQ:\n{q}")
                });
            }
        }
    }
    t
}

/// Simple answer-set problems: combined equivalence at [1,∞] and [1,1] ⇔
/// equal HT models and equal weak preference on the classical models.
pub fn simple_answer_set_combined(cases: &[Case]) -> Tally {
    let mut t = Tally::default();
    for c in cases {
        let (p, q, a) = (
            with_all_ranks(&c.p, 1),
            with_all_ranks(&c.q, 1),
            &c.alphabet,
        );
        let full = comb(&p, &q, RankInterval::unbounded(), AS, a);
        let one = comb(&p, &q, RankInterval::closed(1, 1), AS, a);
        let mods = ref_models(&p.generator, a);
        let direct = ref_ht_models(&p.generator, a) == ref_ht_models(&q.generator, a)
            && pairs_where(&mods, |i, j| pref_geq(i, j, &p.selector))
                == pairs_where(&mods, |i, j| pref_geq(i, j, &q.selector));
        t.check(full == one && one == direct, || {
            format!("[1,inf]={full} [1,1]={one} direct={direct}\nP:\n{p}\nQ:\n{q}")
        });
    }
    t
}

/// With `k` the highest rank in use, sel at [k,∞] and [k,k] coincide; sel at
/// [k+1,∞] ⇔ equal optimal outcomes with equal ties among them.
pub fn high_rank_intervals(cases: &[Case]) -> Tally {
    let mut t = Tally::default();
    for c in cases {
        let a = &c.alphabet;
        // Without rules every rank is "the highest"; rank 1 is used.
        let k = max_rank(&c.p, &c.q).unwrap_or(1);
        for m in SemanticsMode::ALL {
            let open = sel(&c.p, &c.q, RankInterval::from(k), m, a);
            let closed = sel(&c.p, &c.q, RankInterval::closed(k, k), m, a);
            t.check(open == closed, || {
                format!("{m} k={k}: [k,inf]={open} [k,k]={closed}\n{}", show(c))
            });

            let above = sel(&c.p, &c.q, RankInterval::from(k + 1), m, a);
            let pi_p = ref_optimal(&c.p, m, a);
            let pi_q = ref_optimal(&c.q, m, a);
            let direct = pi_p == pi_q
                && pairs_where(&pi_p, |i, j| pref_approx(i, j, &c.p.selector))
                    == pairs_where(&pi_q, |i, j| pref_approx(i, j, &c.q.selector));
            t.check(above == direct, || {
                format!("{m} k={k}: [k+1,inf]={above} direct={direct}\n{}", show(c))
            });
        }
    }
    t
}

/// Dropping every rule with a single head keeps sel-equivalence.
pub fn single_head_rules_removable(cases: &[Case]) -> Tally {
    let mut t = Tally::default();
    for c in cases {
        let a = &c.alphabet;
        for p in [&c.p, &c.q] {
            let kept = p.rules().filter(|r| r.heads().len() > 1).cloned();
            let q = Problem::new(p.generator.clone(), Selector::new(kept));
            for m in SemanticsMode::ALL {
                for iv in intervals() {
                    t.check(sel(p, &q, iv, m, a), || {
                        format!("{m} {iv}\nP:\n{p}\nQ:\n{q}")
                    });
                }
            }
        }
    }
    t
}

/// When both generators have the same classical models and answer sets,
/// sel verdicts do not depend on the semantics.
pub fn co_aso_coincide(cases: &[Case]) -> Tally {
    let mut t = Tally::default();
    for c in cases {
        let a = &c.alphabet;
        let same = |p: &Problem| ref_models(&p.generator, a) == ref_answer_sets(&p.generator, a);
        if !(same(&c.p) && same(&c.q)) {
            continue;
        }
        for iv in intervals() {
            let x = sel(&c.p, &c.q, iv, CL, a);
            let y = sel(&c.p, &c.q, iv, AS, a);
            t.check(x == y, || {
                format!("{iv}: classical {x}, answer-set {y}\n{}", show(c))
            });
        }
    }
    t
}

/// Optimal outcomes only shrink as higher-ranked rules are added.
pub fn lower_rank_slices(cases: &[Case]) -> Tally {
    let mut t = Tally::default();
    for c in cases {
        let a = &c.alphabet;
        for p in [&c.p, &c.q] {
            for m in SemanticsMode::ALL {
                let full = lib_optimal(p, m, a);
                for i in 1..=4u32 {
                    let lower = if i == 1 {
                        Problem::generator_only(p.generator.clone())
                    } else {
                        restrict(p, RankInterval::closed(1, i - 1))
                    };
                    let sliced = lib_optimal(&lower, m, a);
                    t.check(full.is_subset(&sliced), || format!("{m} i={i}\nP:\n{p}"));
                }
            }
        }
    }
    t
}

/// The strict preference of a union of selectors, in terms of the parts'
/// first distinguishing ranks.
pub fn composition(cases: &[Case]) -> Tally {
    let mut t = Tally::default();
    for c in cases {
        let (s, r) = (&c.p.selector, &c.q.selector);
        let u = s.union(r);
        let all = c.alphabet.interpretations();
        for i in &all {
            for j in &all {
                let (dp, dq) = (qopt_core::diff(s, i, j), qopt_core::diff(r, i, j));
                let expected = (dp < dq && pref_gt(i, j, s))
                    || (dp > dq && pref_gt(i, j, r))
                    || (dp == dq && pref_gt(i, j, s) && pref_gt(i, j, r));
                t.check(pref_gt(i, j, &u) == expected, || {
                    format!("{i} vs {j}\n{}", show(c))
                });
            }
        }
    }
    t
}

/// Equal outcome sets with equal strict preference on them give equal
/// optimal outcomes.
pub fn equal_relations_equal_optima(cases: &[Case]) -> Tally {
    let mut t = Tally::default();
    for c in cases {
        let a = &c.alphabet;
        for m in SemanticsMode::ALL {
            let mu_p = ref_outcomes(&c.p, m, a);
            let mu_q = ref_outcomes(&c.q, m, a);
            let gt_p = pairs_where(&mu_p, |i, j| pref_gt(i, j, &c.p.selector));
            let gt_q = pairs_where(&mu_q, |i, j| pref_gt(i, j, &c.q.selector));
            if mu_p == mu_q && gt_p == gt_q {
                t.check(lib_optimal(&c.p, m, a) == lib_optimal(&c.q, m, a), || {
                    show(c)
                });
            }
        }
    }
    t
}

/// Library outcome and optimality computations against the reference ones.
pub fn library_matches_reference(cases: &[Case]) -> Tally {
    let mut t = Tally::default();
    for c in cases {
        let a = &c.alphabet;
        for p in [&c.p, &c.q] {
            for m in SemanticsMode::ALL {
                t.check(lib_optimal(p, m, a) == ref_optimal(p, m, a), || {
                    format!("{m}\nP:\n{p}")
                });
            }
        }
    }
    t
}

// ---------------------------------------------------------------------------
// Gadget lemmas

fn theory_with_models(
    rng: &mut ChaCha8Rng,
    atoms: &[Atom],
    a: &Alphabet,
    min: usize,
    m: SemanticsMode,
) -> (Theory, Vec<Interpretation>) {
    loop {
        let t = random_theory(rng, atoms, 3, 3);
        let outs: Vec<Interpretation> = match m {
            SemanticsMode::Classical => ref_models(&t, a),
            SemanticsMode::AnswerSet => ref_answer_sets(&t, a),
        }
        .into_iter()
        .collect();
        if outs.len() >= min {
            return (t, outs);
        }
    }
}

/// `Π[I]` added to a theory with outcome `I` leaves exactly `I`; `Π[I,J]`
/// added to a theory with classical models `I ≠ J` leaves exactly `I` and
/// `J`, under both semantics.
pub fn pin_lemmas(seed: u64, instances: usize) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..instances {
        let atoms = standard_atoms(1 + n % 3);
        let a = Alphabet::new(atoms.clone());

        let (th, mods) = theory_with_models(&mut rng, &atoms, &a, 1, CL);
        let i = mods.choose(&mut rng).unwrap().clone();
        let u = th.union(&pin_single(&i, &a));
        let want: BTreeSet<_> = [i.clone()].into();
        t.check(
            classical_models(&u, &a).unwrap() == want && ref_models(&u, &a) == want,
            || format!("classical pin {i} on {th:?}"),
        );

        let (th, ans) = theory_with_models(&mut rng, &atoms, &a, 1, AS);
        let i = ans.choose(&mut rng).unwrap().clone();
        let u = th.union(&pin_single(&i, &a));
        let want: BTreeSet<_> = [i.clone()].into();
        t.check(
            answer_sets(&u, &a).unwrap() == want
                && ref_answer_sets(&u, &a) == want
                && classical_models(&u, &a).unwrap() == want,
            || format!("answer-set pin {i} on {th:?}"),
        );

        let (th, mods) = theory_with_models(&mut rng, &atoms, &a, 2, CL);
        let pick: Vec<&Interpretation> = mods.choose_multiple(&mut rng, 2).collect();
        let (i, j) = (pick[0].clone(), pick[1].clone());
        let u = th.union(&pin_pair(&i, &j, &a).unwrap());
        let want: BTreeSet<_> = [i.clone(), j.clone()].into();
        t.check(
            classical_models(&u, &a).unwrap() == want
                && answer_sets(&u, &a).unwrap() == want
                && ref_answer_sets(&u, &a) == want,
            || format!("pair pin {i} / {j} on {th:?}"),
        );
    }
    t
}

fn random_problems(seed: u64, atoms: &[Atom], n: usize) -> Vec<Problem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = ProblemShape::default();
    (0..n)
        .map(|_| random_problem(&mut rng, atoms, &shape))
        .collect()
}

fn degree_of(i: &Interpretation, r: &PreferenceRule) -> u32 {
    satisfaction_degree(i, r).get()
}

/// The promotion and protection assertions, exhaustively over all
/// interpretations (and pairs) of alphabets with up to three atoms, for a
/// set of random problems and every rank up to 3.
pub fn promote_protect_lemmas(seed: u64, problems_per_alphabet: usize) -> Tally {
    let mut t = Tally::default();
    for n in 1..=3usize {
        let atoms = standard_atoms(n);
        let a = Alphabet::new(atoms.clone());
        let all = a.interpretations();
        for (k, p) in random_problems(seed + n as u64, &atoms, problems_per_alphabet)
            .iter()
            .enumerate()
        {
            let m = if k % 2 == 0 { CL } else { AS };
            for j in 1..=3u32 {
                let below = if j == 1 {
                    Selector::empty()
                } else {
                    rank_slice(&p.selector, RankInterval::closed(1, j - 1))
                };
                let upto = rank_slice(&p.selector, RankInterval::closed(1, j));
                let pi_below = ref_undominated(&ref_outcomes(p, m, &a), &below);
                // Promotion.
                for i in &all {
                    let r = promote(i, j, &a);
                    let pr = union(p, &Problem::selector_only(r.clone()));
                    if pi_below.contains(i) {
                        t.check(ref_optimal(&pr, m, &a).contains(i), || {
                            format!("promote (1): {i} rank {j} {m}\nP:\n{p}")
                        });
                    }
                    for other in &all {
                        if other != i && pref_geq(i, other, &upto) {
                            t.check(pref_gt(i, other, &pr.selector), || {
                                format!("promote (2): {i} over {other} rank {j}\nP:\n{p}")
                            });
                        }
                    }
                }
                // Protection.
                for x in &pi_below {
                    for y in &pi_below {
                        let r = protect_pair(x, y, j, &a);
                        t.check(
                            r.rules()
                                .all(|rule| degree_of(x, rule) == 1 && degree_of(y, rule) == 1),
                            || format!("protect (1): {x},{y} rank {j}"),
                        );
                        for z in &all {
                            if z != x && z != y {
                                t.check(r.rules().any(|rule| degree_of(z, rule) == 2), || {
                                    format!("protect (3): {x},{y} leaves {z} ungraded")
                                });
                            }
                        }
                        let pr = union(p, &Problem::selector_only(r));
                        let pi = ref_optimal(&pr, m, &a);
                        if pref_gt(x, y, &p.selector) {
                            t.check(!pi.contains(y), || {
                                format!("protect (2): {x} > {y} rank {j} {m}\nP:\n{p}")
                            });
                        } else {
                            t.check(pi.contains(y), || {
                                format!("protect (4): {x} !> {y} rank {j} {m}\nP:\n{p}")
                            });
                        }
                    }
                }
            }
        }
    }
    t
}

// ---------------------------------------------------------------------------
// Minimal-model encoding

fn ref_minimal_models(t: &Theory, a: &Alphabet) -> BTreeSet<Interpretation> {
    let mods = ref_models(t, a);
    mods.iter()
        .filter(|i| !mods.iter().any(|j| j != *i && j.is_subset(i)))
        .cloned()
        .collect()
}

/// Random NNF theories over at most four atoms; every other one is a
/// classically equivalent variant of its predecessor (commuted connectives,
/// an added weakening), so that equal minimal models occur.
pub fn nnf_theories(seed: u64, n: usize) -> Vec<Theory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Theory> = Vec::new();
    for k in 0..n {
        if k % 2 == 1 && rng.gen_bool(0.7) {
            let prev = out[k - 1].clone();
            let atoms: Vec<Atom> = prev.atoms().into_iter().collect();
            let mut next: Theory = prev.formulas().map(commute).collect();
            if let (Some(f), true) = (prev.formulas().next(), !atoms.is_empty()) {
                next.insert(Formula::or(
                    f.clone(),
                    random_nnf_formula(&mut rng, &atoms, 1),
                ));
            }
            out.push(next);
        } else {
            let atoms = standard_atoms(rng.gen_range(1..=4));
            let len = rng.gen_range(1..=3);
            out.push(
                (0..len)
                    .map(|_| random_nnf_formula(&mut rng, &atoms, 2))
                    .collect(),
            );
        }
    }
    out
}

fn commute(f: &Formula) -> Formula {
    match f {
        Formula::And(x, y) => Formula::and(commute(y), commute(x)),
        Formula::Or(x, y) => Formula::or(commute(y), commute(x)),
        other => other.clone(),
    }
}

/// Optimal outcomes of the encoding project onto the minimal models, and
/// two theories have the same minimal models exactly when their encodings
/// are sel-equivalent for contexts of rank 2 and above.
pub fn min_model_encoding(theories: &[Theory]) -> Tally {
    let mut t = Tally::default();
    for th in theories {
        let enc = encode_min_models(th, None).unwrap();
        let a = Alphabet::new(enc.problem.atoms());
        let projected: BTreeSet<Interpretation> = lib_optimal(&enc.problem, CL, &a)
            .iter()
            .map(|i| enc.project(i))
            .collect();
        let orig = Alphabet::new(th.atoms());
        t.check(projected == ref_minimal_models(th, &orig), || {
            format!("projection for {th:?}")
        });
    }
    for (k, s) in theories.iter().enumerate() {
        for th in &theories[k + 1..] {
            let u: BTreeSet<Atom> = s.atoms().into_iter().chain(th.atoms()).collect();
            let (es, et) = (
                encode_min_models(s, Some(&u)).unwrap(),
                encode_min_models(th, Some(&u)).unwrap(),
            );
            let a = Alphabet::new(es.problem.atoms().into_iter().chain(et.problem.atoms()));
            let ua = Alphabet::new(u.iter().cloned());
            let same = ref_minimal_models(s, &ua) == ref_minimal_models(th, &ua);
            let eq = sel(&es.problem, &et.problem, RankInterval::from(2), CL, &a);
            t.check(same == eq, || {
                format!("minimal models equal={same}, sel [2,inf]={eq}\n{s:?}\n{th:?}")
            });
        }
    }
    t
}

// ---------------------------------------------------------------------------
// Logic sanity

/// HT collapse at total pairs, persistence, answer sets among classical
/// models, library enumeration against the definitions, and answer sets
/// unchanged by a fresh atom.
pub fn logic_sanity(seed: u64, instances: usize) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..instances {
        let atoms = standard_atoms(1 + n % 4);
        let a = Alphabet::new(atoms.clone());
        let f = random_formula(&mut rng, &atoms, 3);
        let th = random_theory(&mut rng, &atoms, 3, 3);
        for tt in a.interpretations() {
            t.check(
                eval_ht(&HtInterpretation::total(tt.clone()), &f) == eval_classical(&tt, &f),
                || format!("collapse: {f} at {tt}"),
            );
            for h in subsets(&tt) {
                let pair = HtInterpretation::new(h.clone(), tt.clone()).unwrap();
                if eval_ht(&pair, &f) {
                    t.check(eval_classical(&tt, &f), || {
                        format!("persistence: {f} at {pair}")
                    });
                }
            }
        }
        let mods = classical_models(&th, &a).unwrap();
        let ans = answer_sets(&th, &a).unwrap();
        t.check(ans.is_subset(&mods), || {
            format!("AS not within Mod for {th:?}")
        });
        t.check(mods == ref_models(&th, &a), || format!("models of {th:?}"));
        t.check(ans == ref_answer_sets(&th, &a), || {
            format!("answer sets of {th:?}")
        });

        let fresh = Atom::new("fresh").unwrap();
        let wide = a.extended([fresh.clone()]);
        let wide_ans = answer_sets(&th, &wide).unwrap();
        t.check(wide_ans == ans, || {
            format!("fresh atom changes answer sets of {th:?}")
        });
        t.check(wide_ans.iter().all(|i| !i.contains(&fresh)), || {
            format!("fresh atom true for {th:?}")
        });
    }
    t
}

// ---------------------------------------------------------------------------
// Worked examples

const EXACTLY_ONE: &str = "gen: a | b | c.\ngen: -(a & b).\ngen: -(a & c).\ngen: -(b & c).\n";

pub fn problem(text: &str) -> Problem {
    qopt_core::parse_problem(text).expect("example parses")
}

fn sets(items: &[&[&str]]) -> BTreeSet<Interpretation> {
    items
        .iter()
        .map(|names| Interpretation::from_names(names))
        .collect()
}

fn verdict(p: &Problem, q: &Problem, mode: EquivalenceMode, a: &Alphabet) -> qopt_core::Verdict {
    decide_with_context(p, q, mode, CL, a).expect("alphabet within caps")
}

/// The small worked examples: outcome and optimal sets, the contexts that
/// separate them, and equivalence verdicts per mode and interval. All of them
/// use classical semantics.
pub fn paper_examples() -> Tally {
    let mut t = Tally::default();
    let ab = Alphabet::from_names(&["a", "b"]);
    let abc = Alphabet::from_names(&["a", "b", "c"]);
    let mu = |p: &Problem, a: &Alphabet| qopt_core::outcomes(p, CL, a).unwrap().members;
    let pi = |p: &Problem, a: &Alphabet| lib_optimal(p, CL, a);
    let not_a = problem("gen: -a.");

    // Example 1.
    let p1 = problem("gen: a <-> -b.\npref: a > b.");
    let p2 = problem("gen: a & -b.\npref: a > b.");
    t.check(mu(&p1, &ab) == sets(&[&["a"], &["b"]]), || {
        "ex1: mu(P1)".into()
    });
    t.check(pi(&p1, &ab) == sets(&[&["a"]]), || "ex1: pi(P1)".into());
    t.check(mu(&p2, &ab) == sets(&[&["a"]]), || "ex1: mu(P2)".into());
    t.check(pi(&p2, &ab) == sets(&[&["a"]]), || "ex1: pi(P2)".into());
    t.check(pi(&union(&p1, &not_a), &ab) == sets(&[&["b"]]), || {
        "ex1: pi(P1 + -a)".into()
    });
    t.check(pi(&union(&p2, &not_a), &ab).is_empty(), || {
        "ex1: pi(P2 + -a)".into()
    });
    let v = verdict(&p1, &p2, EquivalenceMode::Gen, &ab);
    t.check(
        !v.equivalent
            && v.failed_condition.map(|c| c.to_string()).as_deref() == Some("Thm3(1)")
            && v.witness.as_ref().map(|w| w.to_string()).as_deref() == Some("b")
            && v.separating_context.is_some(),
        || format!("ex1: gen verdict {v:?}"),
    );

    // Example 2.
    let p3 = problem(&format!("{EXACTLY_ONE}pref: a > b.\npref: a > c."));
    let p4 = problem(&format!("{EXACTLY_ONE}pref: a > b > c."));
    t.check(pi(&p3, &abc) == sets(&[&["a"]]), || "ex2: pi(P3)".into());
    t.check(pi(&p4, &abc) == sets(&[&["a"]]), || "ex2: pi(P4)".into());
    t.check(
        pi(&union(&p3, &not_a), &abc) == sets(&[&["b"], &["c"]]),
        || "ex2: pi(P3 + -a)".into(),
    );
    t.check(pi(&union(&p4, &not_a), &abc) == sets(&[&["b"]]), || {
        "ex2: pi(P4 + -a)".into()
    });
    let v = verdict(&p3, &p4, EquivalenceMode::Gen, &abc);
    t.check(!v.equivalent, || "ex2: P3, P4 gen-equivalent".into());

    // Example 3.
    let p5 = problem("gen: a.\ngen: -b.");
    let b_over_a = problem("pref: b > a.");
    t.check(pi(&p5, &ab) == pi(&p1, &ab), || {
        "ex3: pi(P5) = pi(P1)".into()
    });
    t.check(
        pi(&union(&p1, &b_over_a), &ab) == sets(&[&["a"], &["b"]])
            && pi(&union(&p5, &b_over_a), &ab) == sets(&[&["a"]]),
        || "ex3: b > a separates".into(),
    );
    let v = verdict(
        &p5,
        &p1,
        EquivalenceMode::Sel(RankInterval::unbounded()),
        &ab,
    );
    t.check(!v.equivalent && v.separating_context.is_some(), || {
        "ex3: sel verdict".into()
    });

    // Example 4.
    let p6 = problem("gen: a <-> -b.\npref: a > b.\npref: b > a.");
    let p7 = problem("gen: a <-> -b.");
    t.check(pi(&p6, &ab) == pi(&p7, &ab), || {
        "ex4: pi(P6) = pi(P7)".into()
    });
    let v = verdict(
        &p6,
        &p7,
        EquivalenceMode::Sel(RankInterval::unbounded()),
        &ab,
    );
    t.check(!v.equivalent && v.separating_context.is_some(), || {
        "ex4: sel verdict".into()
    });
    let v = verdict(&p6, &p7, EquivalenceMode::Gen, &ab);
    t.check(v.equivalent, || format!("ex4: gen verdict {v:?}"));

    // Example 5.
    let p = problem(&format!("{EXACTLY_ONE}pref: a > c.\npref: b > c."));
    let q = problem(&format!("{EXACTLY_ONE}pref: a | b > c."));
    let v = verdict(
        &p,
        &q,
        EquivalenceMode::Sel(RankInterval::unbounded()),
        &abc,
    );
    t.check(v.equivalent, || format!("ex5: sel verdict {v:?}"));

    // Example 6.
    let p = problem("gen: a <-> -b.\npref[2]: a > b.");
    let q = problem("gen: a <-> -b.\npref[3]: a > b.");
    let expected = [
        (RankInterval::from(4), true),
        (RankInterval::closed(1, 1), true),
        (RankInterval::closed(2, 2), false),
        (RankInterval::closed(3, 3), false),
        (RankInterval::closed(2, 3), false),
    ];
    for (iv, want) in expected {
        let v = verdict(&p, &q, EquivalenceMode::Sel(iv), &ab);
        t.check(
            v.equivalent == want && (want || v.separating_context.is_some()),
            || format!("ex6: sel {iv} verdict {v:?}"),
        );
    }
    t
}
