use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// What a caption word says about the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum DescriptionKind {
    Rise,
    Fall,
    LocalMax,
    LocalMin,
}

impl DescriptionKind {
    pub fn is_trend(self) -> bool {
        matches!(self, DescriptionKind::Rise | DescriptionKind::Fall)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DescriptionKind::Rise => "rise",
            DescriptionKind::Fall => "fall",
            DescriptionKind::LocalMax => "localMax",
            DescriptionKind::LocalMin => "localMin",
        }
    }
}

impl fmt::Display for DescriptionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DescriptionKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "rise" => Ok(DescriptionKind::Rise),
            "fall" => Ok(DescriptionKind::Fall),
            "localmax" => Ok(DescriptionKind::LocalMax),
            "localmin" => Ok(DescriptionKind::LocalMin),
            other => Err(format!("unknown description kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub kind: DescriptionKind,
    pub lemma: String,
    pub synonyms: Vec<String>,
}

/// Keyword list for data descriptions, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
}

const DEFAULT_LEXICON: &str = include_str!("../../data/lexicon.tsv");

impl Default for Lexicon {
    fn default() -> Self {
        Lexicon::parse(DEFAULT_LEXICON).expect("bundled lexicon parses")
    }
}

impl Lexicon {
    /// Parses `kind<TAB>lemma[<TAB>synonym...]` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim_end();
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split('\t').map(str::trim).filter(|f| !f.is_empty());
            let kind = fields
                .next()
                .unwrap_or("")
                .parse()
                .map_err(|message| Error::Lexicon { line: n + 1, message })?;
            let lemma = fields.next().ok_or_else(|| Error::Lexicon {
                line: n + 1,
                message: "missing lemma".into(),
            })?;
            entries.push(LexiconEntry {
                kind,
                lemma: lemma.to_lowercase(),
                synonyms: fields.map(str::to_lowercase).collect(),
            });
        }
        if entries.is_empty() {
            return Err(Error::Lexicon {
                line: 0,
                message: "no entries".into(),
            });
        }
        Ok(Lexicon { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Lexicon::parse(&text)
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    /// Every lemma and synonym, for seeding the lemmatizer.
    pub fn vocabulary(&self) -> impl Iterator<Item = &str> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::once(e.lemma.as_str()).chain(e.synonyms.iter().map(String::as_str)))
    }
}
