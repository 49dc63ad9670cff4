//! Algebra files. The same document shape is accepted as JSON or TOML:
//!
//! ```toml
//! labels = ["1", "e"]
//! unit = { "1" = "1" }
//! idempotents = ["1"]          # optional, used by `relative`
//!
//! [[products]]
//! left = "e"
//! right = "e"
//! result = {}                  # e·e = 0
//! ```
//!
//! Coefficients are rational strings such as `"-3/2"` or plain integers.
//! Products that are not listed are zero.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use homalg::algebra::StructureAlgebra;
use homalg::linalg::{int, parse_scalar, Scalar, SparseVec};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    labels: Vec<String>,
    unit: BTreeMap<String, Coefficient>,
    #[serde(default)]
    products: Vec<Product>,
    #[serde(default)]
    idempotents: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Product {
    left: String,
    right: String,
    #[serde(default)]
    result: BTreeMap<String, Coefficient>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Coefficient {
    Int(i64),
    Text(String),
}

/// A parsed algebra file.
#[derive(Debug)]
pub struct AlgebraInput {
    pub algebra: StructureAlgebra,
    /// Basis indices listed under `idempotents`, if any.
    pub idempotents: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Syntax {
    Json,
    Toml,
}

fn syntax_of(path: &Path, text: &str) -> Syntax {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => Syntax::Json,
        Some("toml") => Syntax::Toml,
        _ if text.trim_start().starts_with('{') => Syntax::Json,
        _ => Syntax::Toml,
    }
}

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

pub fn read_algebra(path: &Path) -> Result<AlgebraInput, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_algebra(path, &text).map_err(|e| format!("{}:{e}", path.display()))
}

/// Errors start with `line:col:` for syntax problems and with the field
/// path for semantic ones.
pub fn parse_algebra(path: &Path, text: &str) -> Result<AlgebraInput, String> {
    let doc: AlgebraDoc = match syntax_of(path, text) {
        Syntax::Json => serde_json::from_str(text).map_err(|e| {
            let msg = e.to_string();
            let msg = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(m, _)| m).to_string();
            format!("{}:{}: {msg}", e.line(), e.column())
        })?,
        Syntax::Toml => toml::from_str(text).map_err(|e| {
            let (line, col) = e.span().map_or((0, 0), |s| line_col(text, s.start));
            format!("{line}:{col}: {}", e.message().trim())
        })?,
    };
    build(doc)
}

fn build(doc: AlgebraDoc) -> Result<AlgebraInput, String> {
    let index: HashMap<&str, usize> = doc.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let lookup = |label: &str, at: &str| -> Result<usize, String> {
        index.get(label).copied().ok_or_else(|| format!("{at}: unknown label {label:?}"))
    };
    let vector = |map: &BTreeMap<String, Coefficient>, at: &str| -> Result<SparseVec, String> {
        let mut pairs = Vec::new();
        for (label, c) in map {
            let i = lookup(label, at)?;
            pairs.push((i, coefficient(c).map_err(|e| format!("{at}.{label}: {e}"))?));
        }
        Ok(SparseVec::from_pairs(pairs))
    };
    let unit = vector(&doc.unit, "unit")?;
    let mut seen = HashMap::new();
    let mut products = Vec::new();
    for (n, p) in doc.products.iter().enumerate() {
        let at = format!("products[{n}]");
        let key = (lookup(&p.left, &format!("{at}.left"))?, lookup(&p.right, &format!("{at}.right"))?);
        if let Some(first) = seen.insert(key, n) {
            return Err(format!("{at}: product {}·{} already given in products[{first}]", p.left, p.right));
        }
        products.push((key, vector(&p.result, &format!("{at}.result"))?));
    }
    let idempotents = match &doc.idempotents {
        None => None,
        Some(ls) => Some(
            ls.iter()
                .enumerate()
                .map(|(n, l)| lookup(l, &format!("idempotents[{n}]")))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let algebra = StructureAlgebra::new(doc.labels, products, unit).map_err(|e| format!("products: {e}"))?;
    Ok(AlgebraInput { algebra, idempotents })
}

fn coefficient(c: &Coefficient) -> Result<Scalar, String> {
    match c {
        Coefficient::Int(n) => Ok(int(*n)),
        Coefficient::Text(s) => parse_scalar(s).map_err(|e| e.to_string()),
    }
}

/// Resolves a comma-separated label list against an algebra.
pub fn labels_to_indices(a: &StructureAlgebra, labels: &[String]) -> Result<Vec<usize>, String> {
    labels
        .iter()
        .map(|l| a.index_of(l).ok_or_else(|| format!("unknown label {l:?}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL_TOML: &str = r#"
labels = ["1", "eps"]
unit = { "1" = "1" }

[[products]]
left = "1"
right = "1"
result = { "1" = 1 }

[[products]]
left = "1"
right = "eps"
result = { "eps" = "1" }

[[products]]
left = "eps"
right = "1"
result = { "eps" = "1/1" }
"#;

    #[test]
    fn toml_dual_numbers() {
        let a = parse_algebra(Path::new("d.toml"), DUAL_TOML).unwrap();
        assert_eq!(a.algebra, StructureAlgebra::dual_numbers());
        assert!(a.idempotents.is_none());
    }

    #[test]
    fn json_is_detected_by_content() {
        let text = r#"{"labels": ["1"], "unit": {"1": "1"}, "products": [{"left": "1", "right": "1", "result": {"1": "1"}}], "idempotents": ["1"]}"#;
        let a = parse_algebra(Path::new("k.alg"), text).unwrap();
        assert_eq!(a.algebra.dim(), 1);
        assert_eq!(a.idempotents, Some(vec![0]));
    }

    #[test]
    fn syntax_errors_carry_a_location() {
        let err = parse_algebra(Path::new("k.json"), "{\"labels\": [\"1\"],\n  \"unit\": {\"1\": }\n}").unwrap_err();
        assert!(err.starts_with("2:"), "{err}");
        let err = parse_algebra(Path::new("k.toml"), "labels = [\"1\"]\nunit = {\n").unwrap_err();
        assert!(err.starts_with("2:") || err.starts_with("3:"), "{err}");
    }

    #[test]
    fn semantic_errors_name_the_field() {
        let text = r#"{"labels": ["1"], "unit": {"1": "1"}, "products": [{"left": "1", "right": "x", "result": {}}]}"#;
        let err = parse_algebra(Path::new("k.json"), text).unwrap_err();
        assert!(err.contains("products[0].right") && err.contains("\"x\""), "{err}");
        let text = r#"{"labels": ["1"], "unit": {"1": "1/0"}}"#;
        assert!(parse_algebra(Path::new("k.json"), text).unwrap_err().contains("unit.1"));
    }

    #[test]
    fn invalid_algebras_are_rejected() {
        // 1·1 = 0 breaks the unit law
        let text = r#"{"labels": ["1"], "unit": {"1": "1"}}"#;
        assert!(parse_algebra(Path::new("k.json"), text).is_err());
    }
}
