//! Caption analysis: sentences, time mentions, data descriptions and the
//! references that pair them.

pub mod describe;
pub mod lemma;
pub mod lexicon;
pub mod pairing;
pub mod sentences;
pub mod similarity;
pub mod time;
pub mod token;

use serde::Serialize;

pub use describe::{find_descriptions, DataDescription, DEFAULT_SIM_THRESHOLD};
pub use lemma::Lemmatizer;
pub use lexicon::{DescriptionKind, Lexicon, LexiconEntry};
pub use pairing::{pair_references, ReferencePair};
pub use sentences::split_sentences;
pub use similarity::{MaxSimilarity, SimilarityProvider, SynonymSimilarity, WordVectors};
pub use time::{extract_time_refs, BoundaryRole, TimeContext, TimeExpr, TimeReference};
pub use token::{tokenize_and_lemmatize, Token, TokenKind};

use crate::span::Span;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SentenceAnalysis {
    pub index: usize,
    pub span: Span,
    #[serde(skip)]
    pub tokens: Vec<Token>,
    pub time_refs: Vec<TimeReference>,
    pub descriptions: Vec<DataDescription>,
    pub references: Vec<ReferencePair>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaptionAnalysis {
    pub sentences: Vec<SentenceAnalysis>,
}

impl CaptionAnalysis {
    /// All references in reading order.
    pub fn references(&self) -> impl Iterator<Item = (usize, &ReferencePair)> {
        self.sentences
            .iter()
            .flat_map(|s| s.references.iter().map(move |r| (s.index, r)))
    }
}

/// Reusable analyzer: lexicon, lemmatizer and similarity settings.
pub struct CaptionAnalyzer<'a> {
    pub lexicon: &'a Lexicon,
    pub lemmatizer: &'a Lemmatizer,
    pub similarity: &'a dyn SimilarityProvider,
    pub threshold: f64,
}

impl CaptionAnalyzer<'_> {
    pub fn analyze_sentence(&self, caption: &str, index: usize, span: Span, ctx: &TimeContext) -> SentenceAnalysis {
        let tokens = tokenize_and_lemmatize(caption, span, index, self.lemmatizer);
        let time_refs = extract_time_refs(&tokens, ctx);
        let mut masked = vec![false; tokens.len()];
        for r in &time_refs {
            masked[r.tokens.clone()].fill(true);
        }
        let descriptions = find_descriptions(&tokens, &masked, self.lexicon, self.similarity, self.threshold);
        let references = pair_references(&tokens, &descriptions, &time_refs);
        SentenceAnalysis {
            index,
            span,
            tokens,
            time_refs,
            descriptions,
            references,
        }
    }

    pub fn analyze(&self, caption: &str, ctx: &TimeContext) -> CaptionAnalysis {
        let sentences = split_sentences(caption)
            .into_iter()
            .enumerate()
            .map(|(i, span)| self.analyze_sentence(caption, i, span, ctx))
            .collect();
        CaptionAnalysis { sentences }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{ymd, DateRange, Granularity};

    fn analyze(caption: &str, g: Granularity, window: DateRange) -> CaptionAnalysis {
        let lexicon = Lexicon::default();
        let lemmatizer = Lemmatizer::new(lexicon.vocabulary());
        let sim = SynonymSimilarity::from_lexicon(&lexicon);
        let a = CaptionAnalyzer {
            lexicon: &lexicon,
            lemmatizer: &lemmatizer,
            similarity: &sim,
            threshold: DEFAULT_SIM_THRESHOLD,
        };
        a.analyze(caption, &TimeContext { granularity: g, window })
    }

    fn brief(caption: &str, a: &CaptionAnalysis) -> Vec<(String, DescriptionKind, Vec<String>)> {
        a.references()
            .map(|(_, r)| {
                (
                    r.description.span.slice(caption).to_string(),
                    r.description.kind,
                    r.times.iter().map(|t| t.span.slice(caption).to_string()).collect(),
                )
            })
            .collect()
    }

    #[test]
    fn mortgage_sentence() {
        let c = "The 30-year fixed mortgage rates peaked in 1981 and then declined sharply until 1987.";
        let a = analyze(c, Granularity::Month, DateRange::new(ymd(1971, 1, 1), ymd(2020, 12, 1)));
        assert_eq!(
            brief(c, &a),
            vec![
                ("peaked".into(), DescriptionKind::LocalMax, vec!["1981".into()]),
                ("declined".into(), DescriptionKind::Fall, vec!["1987".into()]),
            ]
        );
        let r: Vec<_> = a.references().collect();
        assert_eq!(r[1].1.combined_start(), None);
        assert_eq!(r[1].1.combined_end(), Some(ymd(1987, 12, 31)));
    }

    #[test]
    fn start_end_merge() {
        let c = "From 1950, North Korea's GDP increased quite rapidly until 1985.";
        let a = analyze(c, Granularity::Year, DateRange::new(ymd(1950, 1, 1), ymd(2010, 1, 1)));
        assert_eq!(
            brief(c, &a),
            vec![(
                "increased".into(),
                DescriptionKind::Rise,
                vec!["1950".into(), "1985".into()]
            )]
        );
        let (_, r) = a.references().next().unwrap();
        assert_eq!(r.combined_start(), Some(ymd(1950, 1, 1)));
        assert_eq!(r.combined_end(), Some(ymd(1985, 12, 31)));
    }

    #[test]
    fn two_descriptions_two_clauses() {
        let c = "Prices declined after 1980 and hit a minimum in 1983.";
        let a = analyze(c, Granularity::Year, DateRange::new(ymd(1960, 1, 1), ymd(2000, 1, 1)));
        assert_eq!(
            brief(c, &a),
            vec![
                ("declined".into(), DescriptionKind::Fall, vec!["1980".into()]),
                ("minimum".into(), DescriptionKind::LocalMin, vec!["1983".into()]),
            ]
        );
    }

    #[test]
    fn unpaired_are_dropped() {
        let c = "Rates soared. The chart covers 1971 to 2020. Tourism was a major industry.";
        let a = analyze(c, Granularity::Month, DateRange::new(ymd(1971, 1, 1), ymd(2020, 12, 1)));
        assert_eq!(a.sentences.len(), 3);
        assert_eq!(a.sentences[0].descriptions.len(), 1);
        assert_eq!(a.references().count(), 0);
    }

    #[test]
    fn season_word_is_not_a_fall() {
        let c = "Sales were slow in the fall of 2009.";
        let a = analyze(c, Granularity::Month, DateRange::new(ymd(2000, 1, 1), ymd(2015, 12, 1)));
        assert!(a.sentences[0].descriptions.is_empty());
        assert_eq!(a.sentences[0].time_refs.len(), 1);
    }
}
