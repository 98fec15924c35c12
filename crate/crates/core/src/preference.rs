//! Ranked preference rules `φ1 > … > φk ←^j ψ`, satisfaction degrees and the
//! preference relations they induce on interpretations.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::logic::{eval_classical, Atom, Formula, Interpretation};

/// An upper rank bound: a positive integer or ∞. `Finite(_) < Infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(u32),
    Infinity,
}

impl Bound {
    pub fn is_infinite(self) -> bool {
        self == Bound::Infinity
    }

    pub(crate) fn from_option(v: Option<u32>) -> Bound {
        v.map_or(Bound::Infinity, Bound::Finite)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(k) => write!(f, "{k}"),
            Bound::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("a preference rule needs at least one head formula")]
    EmptyHead,
    #[error("rank must be a positive integer")]
    ZeroRank,
    #[error("invalid rank interval [{low}, {high}]")]
    BadInterval { low: u32, high: Bound },
}

/// The rank interval `[low, high]`, `1 ≤ low ≤ high ≤ ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankInterval {
    low: u32,
    high: Bound,
}

impl RankInterval {
    pub fn new(low: u32, high: Bound) -> Result<Self, RuleError> {
        if low == 0 || high < Bound::Finite(low) {
            return Err(RuleError::BadInterval { low, high });
        }
        Ok(RankInterval { low, high })
    }

    /// `[1, ∞]`.
    pub fn unbounded() -> Self {
        RankInterval {
            low: 1,
            high: Bound::Infinity,
        }
    }

    /// `[low, high]` with a finite upper end. Panics on an invalid interval.
    pub fn closed(low: u32, high: u32) -> Self {
        RankInterval::new(low, Bound::Finite(high)).expect("valid interval")
    }

    /// `[low, ∞]`. Panics if `low == 0`.
    pub fn from(low: u32) -> Self {
        RankInterval::new(low, Bound::Infinity).expect("valid interval")
    }

    pub fn low(&self) -> u32 {
        self.low
    }

    pub fn high(&self) -> Bound {
        self.high
    }

    pub fn contains(&self, rank: u32) -> bool {
        self.low <= rank && Bound::Finite(rank) <= self.high
    }
}

/// Written `low..high`, e.g. `1..inf`.
impl fmt::Display for RankInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.low, self.high)
    }
}

/// A satisfaction degree; lower is better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(u32);

impl Degree {
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A ranked preference rule. Fields are ordered so that rules sort by rank.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PreferenceRule {
    rank: u32,
    heads: Vec<Formula>,
    body: Formula,
}

impl PreferenceRule {
    pub fn new(heads: Vec<Formula>, body: Formula, rank: u32) -> Result<Self, RuleError> {
        if heads.is_empty() {
            return Err(RuleError::EmptyHead);
        }
        if rank == 0 {
            return Err(RuleError::ZeroRank);
        }
        Ok(PreferenceRule { rank, heads, body })
    }

    /// A rule with body `⊤`. Panics on empty heads or rank 0.
    pub fn fact(heads: Vec<Formula>, rank: u32) -> Self {
        PreferenceRule::new(heads, Formula::top(), rank).expect("valid rule")
    }

    pub fn heads(&self) -> &[Formula] {
        &self.heads
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        for h in &self.heads {
            h.collect_atoms(out);
        }
        self.body.collect_atoms(out);
    }
}

impl fmt::Debug for PreferenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite set of preference rules.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Selector(BTreeSet<PreferenceRule>);

impl Selector {
    pub fn new(rules: impl IntoIterator<Item = PreferenceRule>) -> Selector {
        Selector(rules.into_iter().collect())
    }

    pub fn empty() -> Selector {
        Selector::default()
    }

    pub fn rules(&self) -> impl Iterator<Item = &PreferenceRule> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, rule: PreferenceRule) -> bool {
        self.0.insert(rule)
    }

    pub fn union(&self, other: &Selector) -> Selector {
        Selector(self.0.union(&other.0).cloned().collect())
    }

    /// True when every rule has rank 1.
    pub fn is_simple(&self) -> bool {
        self.0.iter().all(|r| r.rank == 1)
    }

    pub fn max_rank(&self) -> Option<u32> {
        self.0.iter().map(|r| r.rank).max()
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for r in &self.0 {
            r.collect_atoms(&mut out);
        }
        out
    }
}

impl FromIterator<PreferenceRule> for Selector {
    fn from_iter<T: IntoIterator<Item = PreferenceRule>>(iter: T) -> Self {
        Selector::new(iter)
    }
}

/// Index of the first satisfied head, or 1 when the body fails or no head
/// holds (the rule is irrelevant).
pub fn satisfaction_degree(i: &Interpretation, r: &PreferenceRule) -> Degree {
    if !eval_classical(i, &r.body) {
        return Degree(1);
    }
    let first = r.heads.iter().position(|h| eval_classical(i, h));
    Degree(first.map_or(1, |k| k as u32 + 1))
}

/// `S_[low, high]`.
pub fn rank_slice(s: &Selector, iv: RankInterval) -> Selector {
    Selector(
        s.0.iter()
            .filter(|r| iv.contains(r.rank))
            .cloned()
            .collect(),
    )
}

/// All rules grade `i` and `j` equally.
pub fn pref_approx(i: &Interpretation, j: &Interpretation, s: &Selector) -> bool {
    s.rules()
        .all(|r| satisfaction_degree(i, r) == satisfaction_degree(j, r))
}

/// `i >^S j`: some rule `r'` grades `i` strictly better, every rule of the
/// same rank grades `i` no worse, and every lower-ranked rule grades them
/// equally.
pub fn pref_gt(i: &Interpretation, j: &Interpretation, s: &Selector) -> bool {
    let graded: Vec<(u32, Degree, Degree)> = s
        .rules()
        .map(|r| (r.rank, satisfaction_degree(i, r), satisfaction_degree(j, r)))
        .collect();
    graded.iter().any(|&(rank, di, dj)| {
        di < dj
            && graded
                .iter()
                .all(|&(q, ei, ej)| (q != rank || ei <= ej) && (q >= rank || ei == ej))
    })
}

/// `i ≥^S j`: `i ≈^S j` or `i >^S j`.
pub fn pref_geq(i: &Interpretation, j: &Interpretation, s: &Selector) -> bool {
    pref_approx(i, j, s) || pref_gt(i, j, s)
}

/// The minimum rank of a rule grading `i` and `j` differently; ∞ if none.
pub fn diff(s: &Selector, i: &Interpretation, j: &Interpretation) -> Bound {
    Bound::from_option(
        s.rules()
            .filter(|r| satisfaction_degree(i, r) != satisfaction_degree(j, r))
            .map(|r| r.rank)
            .min(),
    )
}
