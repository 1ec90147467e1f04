//! JSON-lines persistence of censuses.

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use super::{certify, Census, CensusClass, EnumerateError};
use crate::words::{canonicalize, parse_verbose};

/// One census line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub genus: usize,
    /// Canonical word in verbose syntax.
    pub word: String,
    pub aut_order: usize,
    pub pos: usize,
    pub neg: usize,
    /// Edges reversed by the involution, when there is one.
    pub r: Option<usize>,
    /// Positive vertices fixed by an order-3 automorphism, when there is one.
    pub s: Option<usize>,
    /// Negative vertices fixed by an order-3 automorphism, when there is one.
    pub t: Option<usize>,
}

impl From<&CensusClass> for ClassRecord {
    fn from(class: &CensusClass) -> Self {
        let p = &class.profile;
        ClassRecord {
            genus: class.form.genus(),
            word: class.word().to_verbose(),
            aut_order: p.aut_order,
            pos: class.signs.0,
            neg: class.signs.1,
            r: p.fixed_edges,
            s: p.fixed_vertices.map(|v| v.0),
            t: p.fixed_vertices.map(|v| v.1),
        }
    }
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("line {line}: {detail}")]
    Invalid { line: usize, detail: String },
    #[error(transparent)]
    Certificate(#[from] EnumerateError),
}

/// One JSON object per class, in census order, newline-terminated.
pub fn census_to_jsonl(census: &Census) -> String {
    let mut out = String::new();
    for class in &census.classes {
        let line = serde_json::to_string(&ClassRecord::from(class)).expect("record serializes");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Sidecar summary: class count, exact-order counts and masses.
pub fn census_metadata(census: &Census) -> serde_json::Value {
    let stats = census.stats();
    let exactly: serde_json::Map<String, serde_json::Value> =
        stats.exactly.iter().map(|(d, n)| (d.to_string(), json!(n))).collect();
    json!({
        "genus": census.genus,
        "classes": census.len(),
        "mass": census.mass.to_string(),
        "m2": stats.order2_total().to_string(),
        "m3": stats.order3_total().to_string(),
        "m6": stats.order6_total().to_string(),
        "exactly": exactly,
    })
}

/// Reads a census back, recomputing every profile and re-certifying it.
pub fn census_from_jsonl(genus: usize, text: &str) -> Result<Census, RecordError> {
    let mut words = Vec::new();
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let line_no = i + 1;
        let record: ClassRecord =
            serde_json::from_str(line).map_err(|source| RecordError::Json { line: line_no, source })?;
        let invalid = |detail: String| RecordError::Invalid { line: line_no, detail };
        if record.genus != genus {
            return Err(invalid(format!("genus {} in a genus-{genus} census", record.genus)));
        }
        let (word, _) = parse_verbose(&record.word).map_err(|e| invalid(e.to_string()))?;
        let canonical = canonicalize(&word);
        if CensusClass::from_canonical(canonical.clone(), genus).is_none() {
            return Err(invalid(format!("{} is not a maximal form of genus {genus}", record.word)));
        }
        words.push(canonical);
    }
    let census = Census::from_canonical_words(genus, words);
    certify(&census)?;
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::genus_one_word;

    #[test]
    fn genus_one_round_trip() {
        let c = Census::from_canonical_words(1, vec![genus_one_word()]);
        let text = census_to_jsonl(&c);
        assert_eq!(
            text,
            "{\"genus\":1,\"word\":\"a b c a' b' c'\",\"aut_order\":6,\"pos\":0,\"neg\":2,\"r\":3,\"s\":0,\"t\":2}\n"
        );
        let back = census_from_jsonl(1, &text).unwrap();
        assert_eq!(back.words().collect::<Vec<_>>(), c.words().collect::<Vec<_>>());
        let meta = census_metadata(&c);
        assert_eq!(meta["mass"], "1/6");
        assert_eq!(meta["exactly"]["6"], 1);
    }

    #[test]
    fn rejects_foreign_lines() {
        assert!(census_from_jsonl(1, "not json\n").is_err());
        let wrong = "{\"genus\":2,\"word\":\"a b c a' b' c'\",\"aut_order\":6,\"pos\":0,\"neg\":2,\"r\":3,\"s\":0,\"t\":2}\n";
        assert!(matches!(census_from_jsonl(1, wrong), Err(RecordError::Invalid { line: 1, .. })));
    }
}
