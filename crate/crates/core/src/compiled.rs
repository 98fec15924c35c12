//! Formulas and selectors lowered to bitmask evaluation over a fixed alphabet.
//! Bit `k` of a mask is atom `k` of the alphabet.

use crate::logic::{Alphabet, Formula};
use crate::preference::{PreferenceRule, Selector};

#[derive(Debug, Clone)]
pub(crate) enum Node {
    Bottom,
    Var(u64),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
}

impl Node {
    /// Panics if `f` mentions an atom outside the alphabet; callers check
    /// coverage first.
    pub(crate) fn compile(f: &Formula, alphabet: &Alphabet) -> Node {
        match f {
            Formula::Bottom => Node::Bottom,
            Formula::Atom(a) => {
                let k = alphabet.index_of(a).expect("atom covered by alphabet");
                Node::Var(1 << k)
            }
            Formula::And(a, b) => Node::And(
                Box::new(Node::compile(a, alphabet)),
                Box::new(Node::compile(b, alphabet)),
            ),
            Formula::Or(a, b) => Node::Or(
                Box::new(Node::compile(a, alphabet)),
                Box::new(Node::compile(b, alphabet)),
            ),
            Formula::Implies(a, b) => Node::Implies(
                Box::new(Node::compile(a, alphabet)),
                Box::new(Node::compile(b, alphabet)),
            ),
        }
    }

    pub(crate) fn eval(&self, m: u64) -> bool {
        match self {
            Node::Bottom => false,
            Node::Var(bit) => m & bit != 0,
            Node::And(a, b) => a.eval(m) && b.eval(m),
            Node::Or(a, b) => a.eval(m) || b.eval(m),
            Node::Implies(a, b) => !a.eval(m) || b.eval(m),
        }
    }

    /// Returns `(HT value at ⟨here, there⟩, classical value at there)`.
    pub(crate) fn eval_ht(&self, here: u64, there: u64) -> (bool, bool) {
        match self {
            Node::Bottom => (false, false),
            Node::Var(bit) => (here & bit != 0, there & bit != 0),
            Node::And(a, b) => {
                let (ha, ta) = a.eval_ht(here, there);
                let (hb, tb) = b.eval_ht(here, there);
                (ha && hb, ta && tb)
            }
            Node::Or(a, b) => {
                let (ha, ta) = a.eval_ht(here, there);
                let (hb, tb) = b.eval_ht(here, there);
                (ha || hb, ta || tb)
            }
            Node::Implies(a, b) => {
                let (ha, ta) = a.eval_ht(here, there);
                let (hb, tb) = b.eval_ht(here, there);
                let t = !ta || tb;
                (t && (!ha || hb), t)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct CompiledTheory(Vec<Node>);

impl CompiledTheory {
    pub(crate) fn new<'a>(formulas: impl IntoIterator<Item = &'a Formula>, a: &Alphabet) -> Self {
        CompiledTheory(formulas.into_iter().map(|f| Node::compile(f, a)).collect())
    }

    pub(crate) fn sat(&self, m: u64) -> bool {
        self.0.iter().all(|n| n.eval(m))
    }

    pub(crate) fn ht_sat(&self, here: u64, there: u64) -> bool {
        self.0.iter().all(|n| n.eval_ht(here, there).0)
    }
}

#[derive(Debug, Clone)]
struct CompiledRule {
    heads: Vec<Node>,
    body: Node,
}

impl CompiledRule {
    fn degree(&self, m: u64) -> u32 {
        if !self.body.eval(m) {
            return 1;
        }
        self.heads
            .iter()
            .position(|h| h.eval(m))
            .map_or(1, |k| k as u32 + 1)
    }
}

/// A selector with rules sorted by rank, grouped into contiguous rank blocks.
#[derive(Debug, Clone)]
pub(crate) struct CompiledSelector {
    rules: Vec<CompiledRule>,
    ranks: Vec<u32>,
    /// `group_end[k]` is one past the last index with rank `ranks[k]`.
    group_end: Vec<usize>,
}

impl CompiledSelector {
    pub(crate) fn new(s: &Selector, a: &Alphabet) -> Self {
        let mut rules: Vec<&PreferenceRule> = s.rules().collect();
        rules.sort_by_key(|r| r.rank());
        let ranks: Vec<u32> = rules.iter().map(|r| r.rank()).collect();
        let group_end = (0..ranks.len())
            .map(|k| k + ranks[k..].iter().take_while(|&&r| r == ranks[k]).count())
            .collect();
        CompiledSelector {
            rules: rules
                .iter()
                .map(|r| CompiledRule {
                    heads: r.heads().iter().map(|h| Node::compile(h, a)).collect(),
                    body: Node::compile(r.body(), a),
                })
                .collect(),
            ranks,
            group_end,
        }
    }

    pub(crate) fn degrees(&self, m: u64) -> Vec<u32> {
        self.rules.iter().map(|r| r.degree(m)).collect()
    }

    /// Index of the first rule (in rank order) grading the two vectors
    /// differently.
    fn first_difference(&self, di: &[u32], dj: &[u32]) -> Option<usize> {
        di.iter().zip(dj).position(|(x, y)| x != y)
    }

    /// The rank of the first distinguishing rule; `None` stands for ∞.
    pub(crate) fn diff(&self, di: &[u32], dj: &[u32]) -> Option<u32> {
        self.first_difference(di, dj).map(|k| self.ranks[k])
    }

    /// Strict preference: at the first distinguishing rank every rule grades
    /// `i` no worse than `j`.
    pub(crate) fn gt(&self, di: &[u32], dj: &[u32]) -> bool {
        self.gt_below(di, dj, None)
    }

    /// Strict preference of the slice with ranks `< limit` (`None` = ∞).
    pub(crate) fn gt_below(&self, di: &[u32], dj: &[u32], limit: Option<u32>) -> bool {
        let Some(k) = self.first_difference(di, dj) else {
            return false;
        };
        if limit.is_some_and(|l| self.ranks[k] >= l) {
            return false;
        }
        (k..self.group_end[k]).all(|r| di[r] <= dj[r])
    }
}

/// Degree vectors of a fixed set of interpretations under one selector.
pub(crate) struct Scored<'a> {
    pub(crate) selector: &'a CompiledSelector,
    pub(crate) degrees: Vec<Vec<u32>>,
}

impl<'a> Scored<'a> {
    pub(crate) fn new(selector: &'a CompiledSelector, masks: &[u64]) -> Self {
        Scored {
            selector,
            degrees: masks.iter().map(|&m| selector.degrees(m)).collect(),
        }
    }

    pub(crate) fn gt(&self, i: usize, j: usize) -> bool {
        self.selector.gt(&self.degrees[i], &self.degrees[j])
    }

    pub(crate) fn gt_below(&self, i: usize, j: usize, limit: Option<u32>) -> bool {
        self.selector
            .gt_below(&self.degrees[i], &self.degrees[j], limit)
    }

    pub(crate) fn diff(&self, i: usize, j: usize) -> Option<u32> {
        self.selector.diff(&self.degrees[i], &self.degrees[j])
    }

    /// Indices not strictly dominated under the slice with ranks `< limit`.
    pub(crate) fn undominated(&self, limit: Option<u32>) -> Vec<usize> {
        let n = self.degrees.len();
        (0..n)
            .filter(|&i| !(0..n).any(|j| j != i && self.gt_below(j, i, limit)))
            .collect()
    }
}
