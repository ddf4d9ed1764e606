use std::collections::{HashMap, HashSet};
use std::path::Path;

use super::lexicon::Lexicon;
use crate::error::{Error, Result};

/// Word-to-word similarity in `[0, 1]`; symmetric with `similarity(w, w) = 1`.
pub trait SimilarityProvider: Send + Sync {
    fn similarity(&self, a: &str, b: &str) -> f64;
}

/// Curated synonyms: 1.0 for a listed pair (either order) or identical
/// words, otherwise 0.0.
#[derive(Debug, Clone, Default)]
pub struct SynonymSimilarity {
    pairs: HashSet<(String, String)>,
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl SynonymSimilarity {
    pub fn from_lexicon(lexicon: &Lexicon) -> Self {
        let pairs = lexicon
            .entries()
            .iter()
            .flat_map(|e| e.synonyms.iter().map(move |s| ordered(&e.lemma, s)))
            .collect();
        SynonymSimilarity { pairs }
    }
}

impl SimilarityProvider for SynonymSimilarity {
    fn similarity(&self, a: &str, b: &str) -> f64 {
        if a == b || self.pairs.contains(&ordered(a, b)) {
            1.0
        } else {
            0.0
        }
    }
}

/// Static word vectors, one `word v1 v2 ... vk` per line; similarity is the
/// cosine clamped at 0. Unknown words score 0 against everything but
/// themselves.
#[derive(Debug, Clone, Default)]
pub struct WordVectors {
    vectors: HashMap<String, Vec<f32>>,
}

impl WordVectors {
    pub fn parse(text: &str) -> Result<Self> {
        let mut vectors = HashMap::new();
        let mut dim = None;
        for (n, line) in text.lines().enumerate() {
            let mut fields = line.split_whitespace();
            let Some(word) = fields.next() else {
                continue;
            };
            let values: Vec<f32> = fields
                .map(|f| f.parse::<f32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Vectors {
                    line: n + 1,
                    message: e.to_string(),
                })?;
            // word2vec text files open with a "count dim" header
            if n == 0 && values.len() == 1 && word.parse::<usize>().is_ok() {
                continue;
            }
            if values.is_empty() {
                return Err(Error::Vectors {
                    line: n + 1,
                    message: "no components".into(),
                });
            }
            match dim {
                None => dim = Some(values.len()),
                Some(d) if d != values.len() => {
                    return Err(Error::Vectors {
                        line: n + 1,
                        message: format!("expected {d} components, found {}", values.len()),
                    })
                }
                _ => {}
            }
            vectors.insert(word.to_lowercase(), values);
        }
        Ok(WordVectors { vectors })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        WordVectors::parse(&text)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

impl SimilarityProvider for WordVectors {
    fn similarity(&self, a: &str, b: &str) -> f64 {
        if a == b {
            return 1.0;
        }
        let (Some(u), Some(v)) = (self.vectors.get(a), self.vectors.get(b)) else {
            return 0.0;
        };
        let dot: f64 = u.iter().zip(v).map(|(x, y)| f64::from(*x) * f64::from(*y)).sum();
        let nu = u.iter().map(|x| f64::from(*x).powi(2)).sum::<f64>().sqrt();
        let nv = v.iter().map(|x| f64::from(*x).powi(2)).sum::<f64>().sqrt();
        if nu == 0.0 || nv == 0.0 {
            return 0.0;
        }
        (dot / (nu * nv)).clamp(0.0, 1.0)
    }
}

/// Pointwise maximum of several providers.
pub struct MaxSimilarity(pub Vec<Box<dyn SimilarityProvider>>);

impl SimilarityProvider for MaxSimilarity {
    fn similarity(&self, a: &str, b: &str) -> f64 {
        self.0
            .iter()
            .map(|p| p.similarity(a, b))
            .fold(if a == b { 1.0 } else { 0.0 }, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synonyms_are_symmetric() {
        let lex = Lexicon::parse("fall\tfall\tslump\n").unwrap();
        let s = SynonymSimilarity::from_lexicon(&lex);
        assert_eq!(s.similarity("fall", "slump"), 1.0);
        assert_eq!(s.similarity("slump", "fall"), 1.0);
        assert_eq!(s.similarity("slump", "slump"), 1.0);
        assert_eq!(s.similarity("slump", "rise"), 0.0);
    }

    #[test]
    fn cosine() {
        let v = WordVectors::parse("3 2\nup 1 0\nclimb 0.8 0.6\ndown -1 0\n").unwrap();
        assert_eq!(v.len(), 3);
        assert!((v.similarity("up", "climb") - 0.8).abs() < 1e-6);
        assert!((v.similarity("climb", "up") - v.similarity("up", "climb")).abs() < 1e-12);
        assert_eq!(v.similarity("up", "down"), 0.0);
        assert_eq!(v.similarity("zzz", "zzz"), 1.0);
        assert_eq!(v.similarity("zzz", "up"), 0.0);
    }

    #[test]
    fn vector_errors() {
        assert!(matches!(
            WordVectors::parse("a 1 2\nb 1\n"),
            Err(Error::Vectors { line: 2, .. })
        ));
        assert!(matches!(
            WordVectors::parse("a 1 x\n"),
            Err(Error::Vectors { line: 1, .. })
        ));
    }
}
