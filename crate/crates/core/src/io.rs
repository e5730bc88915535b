//! File formats: distribution files, codebook JSON and symbol text.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Codebook, Distribution};

#[derive(Debug, Deserialize)]
struct DistributionFile {
    probabilities: Vec<f64>,
}

/// Parses `{"probabilities": [...]}` or plain text with one decimal per line.
///
/// Blank lines and lines starting with `#` are ignored in the text form.
pub fn parse_probabilities(text: &str) -> Result<Vec<f64>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let file: DistributionFile =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(file.probabilities);
    }
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(|line| {
            line.parse::<f64>()
                .map_err(|_| Error::Parse(format!("not a number: {line:?}")))
        })
        .collect()
}

pub fn parse_distribution(text: &str) -> Result<Distribution<f64>> {
    Distribution::new(&parse_probabilities(text)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveJson {
    pub name: String,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<f64>,
}

/// On-disk codebook, in caller symbol order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodebookJson {
    pub lengths: Vec<u32>,
    pub codewords: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<ObjectiveJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probabilities: Option<Vec<f64>>,
}

impl CodebookJson {
    pub fn from_codebook(book: &Codebook, parameter: Option<f64>, probabilities: Option<Vec<f64>>) -> Self {
        Self {
            lengths: book.lengths().as_slice().to_vec(),
            codewords: book.codewords().to_vec(),
            objective: book.objective().map(|o| ObjectiveJson {
                name: o.name.clone(),
                value: o.value,
                parameter,
            }),
            probabilities,
        }
    }

    /// Validates the codewords and their declared lengths.
    pub fn to_codebook(&self) -> Result<Codebook> {
        if self.lengths.len() != self.codewords.len() {
            return Err(Error::InvalidCodebook(format!(
                "{} lengths for {} codewords",
                self.lengths.len(),
                self.codewords.len()
            )));
        }
        let mut book = Codebook::from_codewords(self.codewords.clone())?;
        if book.lengths().as_slice() != self.lengths.as_slice() {
            return Err(Error::InvalidCodebook("lengths disagree with codewords".into()));
        }
        if let Some(o) = &self.objective {
            book = book.with_objective(o.name.clone(), o.value);
        }
        Ok(book)
    }
}

pub fn codebook_to_json(json: &CodebookJson) -> String {
    serde_json::to_string_pretty(json).expect("codebook serializes")
}

pub fn codebook_from_json(text: &str) -> Result<Codebook> {
    let json: CodebookJson = serde_json::from_str(text).map_err(|e| Error::InvalidCodebook(e.to_string()))?;
    json.to_codebook()
}

/// Parses whitespace-separated 1-based symbol indices into 0-based ones.
pub fn parse_symbols(text: &str, alphabet: usize) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| match tok.parse::<usize>() {
            Ok(i) if i >= 1 && i <= alphabet => Ok(i - 1),
            _ => Err(Error::UnknownSymbol(tok.to_string())),
        })
        .collect()
}

/// Formats 0-based symbols as space-separated 1-based indices.
pub fn format_symbols(symbols: &[usize]) -> String {
    let mut out = symbols
        .iter()
        .map(|s| (s + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{canonical_assign, LengthVector};

    #[test]
    fn both_distribution_forms() {
        let a = parse_probabilities(r#"{"probabilities": [0.5, 0.3, 0.2]}"#).unwrap();
        let b = parse_probabilities("0.5\n0.3\n\n# tail\n0.2\n").unwrap();
        assert_eq!(a, b);
        assert!(parse_probabilities("0.5\nabc\n").is_err());
        assert!(parse_distribution("0.5\n0.6\n").is_err());
    }

    #[test]
    fn codebook_json_shape() {
        let book = canonical_assign(&LengthVector::new(vec![1, 2, 2]))
            .unwrap()
            .with_objective("minimax", 1.2f64.log2());
        let json = CodebookJson::from_codebook(&book, None, None);
        let v: serde_json::Value = serde_json::from_str(&codebook_to_json(&json)).unwrap();
        assert_eq!(v["lengths"], serde_json::json!([1, 2, 2]));
        assert_eq!(v["codewords"], serde_json::json!(["0", "10", "11"]));
        assert_eq!(v["objective"]["name"], "minimax");
        assert!((v["objective"]["value"].as_f64().unwrap() - 0.263034).abs() < 1e-6);
        let back = codebook_from_json(&codebook_to_json(&json)).unwrap();
        assert_eq!(back.codewords(), book.codewords());
    }

    #[test]
    fn codebook_validation() {
        let bad = r#"{"lengths":[1,1],"codewords":["0","01"]}"#;
        assert!(codebook_from_json(bad).is_err());
        let mismatched = r#"{"lengths":[1,2],"codewords":["0","1"]}"#;
        assert!(codebook_from_json(mismatched).is_err());
    }

    #[test]
    fn symbols() {
        assert_eq!(parse_symbols("1 2\n3 1", 3).unwrap(), vec![0, 1, 2, 0]);
        assert!(parse_symbols("1 4", 3).is_err());
        assert!(parse_symbols("0", 3).is_err());
        assert_eq!(format_symbols(&[0, 2]), "1 3\n");
    }
}
