//! JSON law definitions.
//!
//! ```json
//! {"name": "drop", "variant": "finite_table",
//!  "alphabet": [{"letter": "y1", "weight": 1}, {"letter": "y2", "weight": 2}],
//!  "entries": [{"a": "y1", "b": "y1", "value": "q*y2"}]}
//! ```
//!
//! or `{"name": "half", "variant": "weight_additive", "builtin": "qstuffle", "q": "1/2"}`.

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::law::PhiLaw;
use crate::text::parse_poly_with;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterSpec {
    pub letter: String,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntrySpec {
    pub a: String,
    pub b: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    WeightAdditive,
    FiniteTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawDocument {
    pub name: String,
    pub variant: Variant,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alphabet: Vec<LetterSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<EntrySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    /// `q` as a rational, or absent / `"q"` for symbolic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
}

fn letter_index(name: &str) -> Result<u32> {
    name.trim()
        .strip_prefix('y')
        .and_then(|k| k.parse::<u32>().ok())
        .filter(|&k| k > 0)
        .ok_or_else(|| Error::LawFile(format!("bad letter name `{name}`")))
}

impl LawDocument {
    pub fn parse(json: &str) -> Result<LawDocument> {
        serde_json::from_str(json).map_err(|e| Error::LawFile(e.to_string()))
    }

    pub fn to_law(&self) -> Result<PhiLaw> {
        match self.variant {
            Variant::WeightAdditive => {
                let builtin = self
                    .builtin
                    .as_deref()
                    .ok_or_else(|| Error::LawFile("weight_additive law needs `builtin`".into()))?;
                let spec = match self.q.as_deref().map(str::trim) {
                    None | Some("q") => builtin.to_string(),
                    Some(q) => format!("{builtin}:{q}"),
                };
                PhiLaw::builtin(&spec)
            }
            Variant::FiniteTable => {
                let letters = self
                    .alphabet
                    .iter()
                    .map(|l| Letter::with_weight(letter_index(&l.letter)?, l.weight))
                    .collect::<Result<Vec<_>>>()?;
                let alphabet = Alphabet::new(letters)?;
                let q = self.q.as_deref().map(str::trim).filter(|q| *q != "q");
                let mut entries = Vec::new();
                for e in &self.entries {
                    let text = match q {
                        Some(q) => e.value.replace('q', &format!("({q})")),
                        None => e.value.clone(),
                    };
                    let value = parse_poly_with(&text, &|k| alphabet.resolve(k))?;
                    entries.push(((letter_index(&e.a)?, letter_index(&e.b)?), value));
                }
                PhiLaw::finite_table(self.name.clone(), alphabet, entries)
            }
        }
    }
}

/// Resolves a CLI law selector: a catalog name (`qstuffle`, `qstuffle:1`)
/// or a path to a JSON law document.
pub fn load_law(selector: &str) -> Result<PhiLaw> {
    match PhiLaw::builtin(selector) {
        Err(Error::UnknownLaw(_)) if std::path::Path::new(selector).is_file() => {
            let text = std::fs::read_to_string(selector)
                .map_err(|e| Error::LawFile(format!("{selector}: {e}")))?;
            LawDocument::parse(&text)?.to_law()
        }
        other => other,
    }
}
