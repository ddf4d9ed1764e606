//! Rule-based English lemmatizer: an irregular-form table plus suffix
//! stripping (-ing, -ed, -s, -es, -est) checked against a vocabulary of known
//! base forms.

use std::collections::{HashMap, HashSet};

const IRREGULAR: &[(&str, &str)] = &[
    ("rose", "rise"),
    ("risen", "rise"),
    ("fell", "fall"),
    ("fallen", "fall"),
    ("grew", "grow"),
    ("grown", "grow"),
    ("sank", "sink"),
    ("sunk", "sink"),
    ("shot", "shoot"),
    ("went", "go"),
    ("gone", "go"),
    ("hit", "hit"),
    ("saw", "see"),
    ("seen", "see"),
    ("was", "be"),
    ("were", "be"),
    ("is", "be"),
    ("are", "be"),
    ("been", "be"),
    ("has", "have"),
    ("had", "have"),
    ("slid", "slide"),
    ("sprang", "spring"),
    ("sprung", "spring"),
    ("took", "take"),
    ("taken", "take"),
    ("began", "begin"),
    ("begun", "begin"),
];

/// Base forms recognised besides the caller's vocabulary.
const BASE_WORDS: &[&str] = &[
    "need", "use", "make", "show", "reach", "remain", "stay", "start", "begin", "end", "continue", "level", "price",
    "rate", "value", "number", "chart", "increase", "decrease", "close", "move",
];

#[derive(Debug, Clone, Default)]
pub struct Lemmatizer {
    irregular: HashMap<String, String>,
    vocabulary: HashSet<String>,
}

fn is_vowel(c: u8) -> bool {
    matches!(c, b'a' | b'e' | b'i' | b'o' | b'u')
}

/// `dropp` → `drop`; `stall` and `pass` are left alone.
fn undouble(stem: &str) -> Option<String> {
    let b = stem.as_bytes();
    let n = b.len();
    (n >= 3 && b[n - 1] == b[n - 2] && !is_vowel(b[n - 1]) && !matches!(b[n - 1], b'l' | b's' | b'z'))
        .then(|| stem[..n - 1].to_string())
}

fn plausible_stem(stem: &str) -> bool {
    stem.len() >= 3 && stem.bytes().any(|c| is_vowel(c) || c == b'y')
}

impl Lemmatizer {
    pub fn new<I, S>(vocabulary: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let irregular = IRREGULAR.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect();
        let mut vocab: HashSet<String> = BASE_WORDS.iter().map(|w| w.to_string()).collect();
        vocab.extend(vocabulary.into_iter().map(|w| w.as_ref().to_lowercase()));
        Lemmatizer {
            irregular,
            vocabulary: vocab,
        }
    }

    /// Lowercase base form of `word`.
    pub fn lemma(&self, word: &str) -> String {
        let lower = word.to_lowercase();
        let w = lower
            .strip_suffix("'s")
            .or_else(|| lower.strip_suffix("’s"))
            .unwrap_or(&lower);
        if let Some(base) = self.irregular.get(w) {
            return base.clone();
        }
        if self.vocabulary.contains(w) || !w.is_ascii() {
            return w.to_string();
        }
        let candidates = suffix_candidates(w);
        if let Some(hit) = candidates.iter().find(|c| self.vocabulary.contains(c.as_str())) {
            return hit.clone();
        }
        default_rule(w).unwrap_or_else(|| w.to_string())
    }
}

fn suffix_candidates(w: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut verb_stem = |stem: &str| {
        out.push(stem.to_string());
        out.push(format!("{stem}e"));
        if let Some(u) = undouble(stem) {
            out.push(u);
        }
    };
    if let Some(stem) = w.strip_suffix("ing").filter(|s| s.len() >= 2) {
        verb_stem(stem);
    } else if let Some(stem) = w.strip_suffix("ied") {
        out.push(format!("{stem}y"));
    } else if let Some(stem) = w.strip_suffix("ed").filter(|s| s.len() >= 2) {
        verb_stem(stem);
    } else if let Some(stem) = w.strip_suffix("est").filter(|s| s.len() >= 2) {
        verb_stem(stem);
    } else if let Some(stem) = w.strip_suffix("ies") {
        out.push(format!("{stem}y"));
    } else if let Some(stem) = w.strip_suffix("es") {
        out.push(stem.to_string());
        out.push(format!("{stem}e"));
    } else if let Some(stem) = w.strip_suffix('s').filter(|_| !w.ends_with("ss")) {
        out.push(stem.to_string());
    }
    out
}

/// Fallback for words whose base form is not in the vocabulary.
fn default_rule(w: &str) -> Option<String> {
    let strip = |suffix: &str| w.strip_suffix(suffix).filter(|s| plausible_stem(s));
    if let Some(stem) = strip("ing").or_else(|| strip("ed")) {
        return Some(undouble(stem).unwrap_or_else(|| stem.to_string()));
    }
    if let Some(stem) = w.strip_suffix("ies").filter(|s| s.len() >= 2) {
        return Some(format!("{stem}y"));
    }
    if w.ends_with("ss") || w.ends_with("us") || w.ends_with("is") {
        return None;
    }
    strip("s").map(str::to_string)
}
