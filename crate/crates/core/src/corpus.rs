//! Built-in corpus of interval-valued functions, shipped in the same
//! file format the parser accepts.

use crate::error::{Error, Result};
use crate::ivf::{parse_ivf, Ivf};

const ENTRIES: &[(&str, &str)] = &[
    ("example_2_1", include_str!("../corpus/example_2_1.ivf")),
    ("example_3_1", include_str!("../corpus/example_3_1.ivf")),
    ("figure_1", include_str!("../corpus/figure_1.ivf")),
    ("sum_rule_phi1", include_str!("../corpus/sum_rule_phi1.ivf")),
    ("sum_rule_phi2", include_str!("../corpus/sum_rule_phi2.ivf")),
    ("log_lipschitz", include_str!("../corpus/log_lipschitz.ivf")),
    ("note_4_1_phi1", include_str!("../corpus/note_4_1_phi1.ivf")),
    ("note_4_1_phi2", include_str!("../corpus/note_4_1_phi2.ivf")),
    ("note_4_2_phi1", include_str!("../corpus/note_4_2_phi1.ivf")),
    ("note_4_2_phi2", include_str!("../corpus/note_4_2_phi2.ivf")),
    ("remark_4_1_phi1", include_str!("../corpus/remark_4_1_phi1.ivf")),
    ("remark_4_1_phi2", include_str!("../corpus/remark_4_1_phi2.ivf")),
    ("theorem_4_3_demo", include_str!("../corpus/theorem_4_3_demo.ivf")),
];

/// Names of all built-in functions, in registry order.
pub fn corpus_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _)| *n).collect()
}

/// Loads a built-in function by name.
pub fn corpus_get(name: &str) -> Result<Ivf> {
    let (_, text) = ENTRIES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownCorpusEntry(name.to_string()))?;
    parse_ivf(text)
}
