//! Separating contexts for inequivalent problems.
//!
//! The construction follows the failed condition: promoting the witness for a
//! mismatch of optimal sets, protecting a witness pair for a mismatch of
//! strict preferences, pinning the generator to the witness for generator
//! mismatches, and combinations of these for the rank-difference conditions.
//! Every candidate is checked against the definition before it is returned;
//! when the targeted candidates fail, a bounded search over combinations of
//! the same gadgets around the witness is used.

use crate::equivalence::{decide, separates, Characterization, EquivalenceMode, Verdict, Witness};
use crate::gadgets::{pin_ht, pin_pair, pin_single, promote, protect_pair};
use crate::logic::{Alphabet, Interpretation};
use crate::models::{EnumError, SemanticsMode, Theory};
use crate::preference::{diff, Bound, RankInterval, Selector};
use crate::problem::Problem;

/// Context ranks worth trying: the interval clipped to two past the highest
/// rank used by either problem.
fn candidate_ranks(iv: RankInterval, p: &Problem, q: &Problem) -> Vec<u32> {
    let top = p
        .selector
        .max_rank()
        .into_iter()
        .chain(q.selector.max_rank())
        .max()
        .unwrap_or(0)
        + 2;
    let high = match iv.high() {
        Bound::Finite(h) => h.min(top.max(iv.low())),
        Bound::Infinity => top.max(iv.low()),
    };
    (iv.low()..=high).collect()
}

fn selector_candidates(
    x: &Interpretation,
    y: &Interpretation,
    ranks: &[u32],
    a: &Alphabet,
) -> Vec<Selector> {
    let mut out = Vec::new();
    for &r in ranks {
        out.push(promote(x, r, a));
        out.push(promote(y, r, a));
        out.push(protect_pair(x, y, r, a));
    }
    for &r in ranks {
        for &s in ranks {
            out.push(promote(y, r, a).union(&protect_pair(x, y, s, a)));
            out.push(promote(x, r, a).union(&protect_pair(x, y, s, a)));
        }
    }
    out
}

fn generator_candidates(x: &Interpretation, y: &Interpretation, a: &Alphabet) -> Vec<Theory> {
    let mut out = Vec::new();
    if let Ok(t) = pin_pair(x, y, a) {
        out.push(t);
    }
    out.push(pin_single(x, a));
    if x != y {
        out.push(pin_single(y, a));
    }
    out
}

/// Targeted candidates for a rank-difference violation on the pair `(i, j)`.
fn diff_candidates(
    p: &Problem,
    q: &Problem,
    i: &Interpretation,
    j: &Interpretation,
    iv: RankInterval,
    a: &Alphabet,
) -> Vec<Selector> {
    let low = iv.low();
    let least = diff(&p.selector, i, j).min(diff(&q.selector, i, j));
    let mut out = Vec::new();
    for (x, y) in [(i, j), (j, i)] {
        match least {
            Bound::Finite(d) if d < low => {
                out.push(promote(y, low, a).union(&protect_pair(x, y, low, a)));
            }
            Bound::Finite(d) if iv.contains(d) => {
                out.push(protect_pair(x, y, low, a).union(&promote(y, d, a)));
            }
            _ => {
                out.push(protect_pair(x, y, low, a).union(&promote(y, low, a)));
            }
        }
    }
    out
}

/// Candidate contexts for a failed verdict, most specific first.
fn candidates(
    p: &Problem,
    q: &Problem,
    mode: EquivalenceMode,
    v: &Verdict,
    a: &Alphabet,
) -> Vec<Problem> {
    let (Some(cond), Some(witness)) = (v.failed_condition, v.witness.as_ref()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    match witness {
        Witness::Ht(w) => {
            // When the there-part is a model of only one generator, asserting
            // it as facts leaves it as the sole answer set on that side and
            // none on the other; otherwise the here-part must be excluded.
            let (h, t) = (w.here(), w.there());
            for here in [t, h] {
                if let Ok(g) = pin_ht(here, t, a) {
                    out.push(Problem::generator_only(g));
                }
            }
            out.push(Problem::generator_only(pin_single(t, a)));
        }
        Witness::Single(x) => match mode {
            EquivalenceMode::Sel(iv) => {
                out.push(Problem::selector_only(promote(x, iv.low(), a)));
                for r in candidate_ranks(iv, p, q) {
                    out.push(Problem::selector_only(promote(x, r, a)));
                }
            }
            _ => out.push(Problem::generator_only(pin_single(x, a))),
        },
        Witness::Pair(x, y) => {
            let pinned = || pin_pair(x, y, a).unwrap_or_else(|_| pin_single(x, a));
            match (mode, cond.characterization, cond.index) {
                (EquivalenceMode::Sel(iv), _, 2) => {
                    out.push(Problem::selector_only(protect_pair(x, y, iv.low(), a)));
                }
                (EquivalenceMode::Sel(iv), _, 3) => {
                    for s in diff_candidates(p, q, x, y, iv, a) {
                        out.push(Problem::selector_only(s));
                    }
                }
                (EquivalenceMode::Gen, _, _) => {
                    out.push(Problem::generator_only(pinned()));
                }
                (EquivalenceMode::Combined(_), Characterization::Combined, 2) => {
                    out.push(Problem::generator_only(pinned()));
                }
                (EquivalenceMode::Combined(iv), Characterization::Combined, 3) => {
                    for s in diff_candidates(p, q, x, y, iv, a) {
                        out.push(Problem::new(pinned(), s));
                    }
                }
                (EquivalenceMode::Combined(iv), Characterization::Combined, 4) => {
                    out.push(Problem::new(pinned(), promote(y, iv.low(), a)));
                    out.push(Problem::new(pinned(), promote(x, iv.low(), a)));
                }
                _ => {}
            }
            // Bounded search around the witness pair.
            match mode {
                EquivalenceMode::Sel(iv) => {
                    let ranks = candidate_ranks(iv, p, q);
                    for s in selector_candidates(x, y, &ranks, a) {
                        out.push(Problem::selector_only(s));
                    }
                }
                EquivalenceMode::Gen => {
                    for g in generator_candidates(x, y, a) {
                        out.push(Problem::generator_only(g));
                    }
                }
                EquivalenceMode::Combined(iv) => {
                    let ranks = candidate_ranks(iv, p, q);
                    let sels = selector_candidates(x, y, &ranks, a);
                    for g in generator_candidates(x, y, a) {
                        out.push(Problem::generator_only(g.clone()));
                        for s in &sels {
                            out.push(Problem::new(g.clone(), s.clone()));
                        }
                    }
                }
            }
        }
    }
    out
}

/// A verified separating context for a failed verdict, if one of the
/// candidates works. Returns `None` for equivalent verdicts.
pub fn context_for_verdict(
    p: &Problem,
    q: &Problem,
    mode: EquivalenceMode,
    v: &Verdict,
    m: SemanticsMode,
    a: &Alphabet,
) -> Result<Option<Problem>, EnumError> {
    if v.equivalent {
        return Ok(None);
    }
    for ctx in candidates(p, q, mode, v, a) {
        if separates(p, q, &ctx, m, a)? {
            return Ok(Some(ctx));
        }
    }
    Ok(None)
}

/// Decides equivalence and, when the problems are not equivalent, attaches a
/// verified separating context.
pub fn decide_with_context(
    p: &Problem,
    q: &Problem,
    mode: EquivalenceMode,
    m: SemanticsMode,
    a: &Alphabet,
) -> Result<Verdict, EnumError> {
    let v = decide(p, q, mode, m, a)?;
    let ctx = context_for_verdict(p, q, mode, &v, m, a)?;
    Ok(v.with_context(ctx))
}

/// A context separating `p` and `q` within `mode`, or `None` when they are
/// equivalent.
pub fn separating_context(
    p: &Problem,
    q: &Problem,
    mode: EquivalenceMode,
    m: SemanticsMode,
    a: &Alphabet,
) -> Result<Option<Problem>, EnumError> {
    Ok(decide_with_context(p, q, mode, m, a)?.separating_context)
}
