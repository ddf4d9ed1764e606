//! Data-description keywords: words that say the data rose, fell, peaked
//! or bottomed.

use serde::Serialize;

use super::lexicon::{DescriptionKind, Lexicon};
use super::similarity::SimilarityProvider;
use super::token::Token;
use crate::span::Span;

/// Default minimum similarity for a non-lexicon word to count as a keyword.
pub const DEFAULT_SIM_THRESHOLD: f64 = 0.7;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DataDescription {
    pub span: Span,
    pub kind: DescriptionKind,
    /// Lexicon lemma the word matched.
    pub matched_keyword: String,
    pub similarity: f64,
    /// Sentence-local token indices, inclusive start and exclusive end.
    #[serde(skip)]
    pub tokens: std::ops::Range<usize>,
}

/// Best lexicon match for one lemma: exact lemma or listed synonym scores 1,
/// anything else goes through the similarity provider. Ties keep the
/// earlier entry.
pub fn best_match<'l>(
    lemma: &str,
    lexicon: &'l Lexicon,
    sim: &dyn SimilarityProvider,
    threshold: f64,
) -> Option<(&'l str, DescriptionKind, f64)> {
    let mut best: Option<(&str, DescriptionKind, f64)> = None;
    for entry in lexicon.entries() {
        let score = if entry.lemma == lemma || entry.synonyms.iter().any(|s| s == lemma) {
            1.0
        } else {
            sim.similarity(lemma, &entry.lemma)
        };
        if score >= threshold && best.is_none_or(|(_, _, b)| score > b) {
            best = Some((&entry.lemma, entry.kind, score));
        }
    }
    best
}

/// Finds descriptions among `tokens`, skipping tokens flagged in `masked`
/// (those inside time expressions). Adjacent keywords of the same kind, as
/// in "record high", form one description.
pub fn find_descriptions(
    tokens: &[Token],
    masked: &[bool],
    lexicon: &Lexicon,
    sim: &dyn SimilarityProvider,
    threshold: f64,
) -> Vec<DataDescription> {
    let mut out: Vec<DataDescription> = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        if !tok.is_word() || masked.get(i).copied().unwrap_or(false) {
            continue;
        }
        let Some((keyword, kind, score)) = best_match(&tok.lemma, lexicon, sim, threshold) else {
            continue;
        };
        if let Some(prev) = out.last_mut() {
            if prev.kind == kind && prev.tokens.end == i {
                prev.span = prev.span.cover(tok.span);
                prev.tokens.end = i + 1;
                if score > prev.similarity {
                    prev.similarity = score;
                    prev.matched_keyword = keyword.to_string();
                }
                continue;
            }
        }
        out.push(DataDescription {
            span: tok.span,
            kind,
            matched_keyword: keyword.to_string(),
            similarity: score,
            tokens: i..i + 1,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caption::lemma::Lemmatizer;
    use crate::caption::similarity::{SynonymSimilarity, WordVectors};
    use crate::caption::token::tokenize_and_lemmatize;

    fn run(text: &str, sim: &dyn SimilarityProvider) -> Vec<(String, DescriptionKind, String)> {
        let lex = Lexicon::default();
        let lem = Lemmatizer::new(lex.vocabulary());
        let toks = tokenize_and_lemmatize(text, Span::new(0, text.len()), 0, &lem);
        let masked = vec![false; toks.len()];
        find_descriptions(&toks, &masked, &lex, sim, DEFAULT_SIM_THRESHOLD)
            .into_iter()
            .map(|d| (d.span.slice(text).to_string(), d.kind, d.matched_keyword))
            .collect()
    }

    #[test]
    fn lexicon_words() {
        let syn = SynonymSimilarity::from_lexicon(&Lexicon::default());
        let got = run("Rates peaked in 1981 and then declined sharply.", &syn);
        assert_eq!(
            got,
            vec![
                ("peaked".into(), DescriptionKind::LocalMax, "peak".into()),
                ("declined".into(), DescriptionKind::Fall, "decline".into()),
            ]
        );
        let got = run("Prices skyrocketed, then plummeted to a record high.", &syn);
        assert_eq!(got[0].1, DescriptionKind::Rise);
        assert_eq!(got[1].1, DescriptionKind::Fall);
        assert_eq!(got[2].0, "record high");
    }

    #[test]
    fn synonyms_map_to_lemma() {
        let syn = SynonymSimilarity::from_lexicon(&Lexicon::default());
        let got = run("Ratings recovered.", &syn);
        assert_eq!(got, vec![("recovered".into(), DescriptionKind::Rise, "rise".into())]);
    }

    #[test]
    fn no_keywords() {
        let syn = SynonymSimilarity::from_lexicon(&Lexicon::default());
        assert!(run("A similar supply-side solution is what we need.", &syn).is_empty());
        assert!(run("The chart shows weekly approval ratings.", &syn).is_empty());
    }

    #[test]
    fn vectors_extend_the_lexicon() {
        let vecs = WordVectors::parse("balloon 1 0\nrise 0.9 0.1\nfall -1 0\n").unwrap();
        let lex = Lexicon::parse("rise\trise\nfall\tfall\n").unwrap();
        let lem = Lemmatizer::new(["balloon"]);
        let text = "Costs ballooned.";
        let toks = tokenize_and_lemmatize(text, Span::new(0, text.len()), 0, &lem);
        let d = find_descriptions(&toks, &[false; 3], &lex, &vecs, 0.7);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DescriptionKind::Rise);
        assert!(d[0].similarity > 0.9 && d[0].similarity < 1.0);
        assert!(find_descriptions(&toks, &[false; 3], &lex, &vecs, 0.999).is_empty());
    }

    #[test]
    fn masked_tokens_ignored() {
        let lex = Lexicon::default();
        let syn = SynonymSimilarity::from_lexicon(&lex);
        let lem = Lemmatizer::new(lex.vocabulary());
        let text = "in the fall of 2019";
        let toks = tokenize_and_lemmatize(text, Span::new(0, text.len()), 0, &lem);
        let mut masked = vec![true; toks.len()];
        masked[0] = false;
        assert!(find_descriptions(&toks, &masked, &lex, &syn, 0.7).is_empty());
    }
}
