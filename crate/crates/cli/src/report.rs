//! The JSON form of a verdict. Field order is the output key order; the
//! schema lives in `schema/verdict.schema.json`.

use qopt_core::{render_problem, EquivalenceMode, Interpretation, SemanticsMode, Verdict, Witness};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct VerdictReport {
    pub mode: &'static str,
    /// `I..J` or `I..inf`; null for `gen`, which has no interval.
    pub interval: Option<String>,
    pub semantics: String,
    pub equivalent: bool,
    pub failed_condition: Option<String>,
    pub witness: Option<WitnessReport>,
    /// The context in the text format.
    pub separating_context: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    /// `single`, `pair` or `ht`.
    pub kind: &'static str,
    /// The interpretations as sorted atom lists; for `ht` the here-part
    /// followed by the there-part.
    pub interpretations: Vec<Vec<String>>,
}

fn atoms(i: &Interpretation) -> Vec<String> {
    i.iter().map(|a| a.name().to_owned()).collect()
}

impl WitnessReport {
    fn new(w: &Witness) -> Self {
        let (kind, interpretations) = match w {
            Witness::Single(i) => ("single", vec![atoms(i)]),
            Witness::Pair(i, j) => ("pair", vec![atoms(i), atoms(j)]),
            Witness::Ht(p) => ("ht", vec![atoms(p.here()), atoms(p.there())]),
        };
        WitnessReport {
            kind,
            interpretations,
        }
    }
}

impl VerdictReport {
    pub fn new(mode: EquivalenceMode, m: SemanticsMode, v: &Verdict) -> Self {
        VerdictReport {
            mode: mode.name(),
            interval: mode.interval().map(|iv| iv.to_string()),
            semantics: m.to_string(),
            equivalent: v.equivalent,
            failed_condition: v.failed_condition.map(|c| c.to_string()),
            witness: v.witness.as_ref().map(WitnessReport::new),
            separating_context: v.separating_context.as_ref().map(render_problem),
        }
    }
}
