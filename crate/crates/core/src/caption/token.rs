use serde::Serialize;

use super::lemma::Lemmatizer;
use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenKind {
    Word,
    Number,
    Punct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub text: String,
    pub lemma: String,
    /// Byte span into the whole caption.
    pub span: Span,
    pub sentence: usize,
    pub kind: TokenKind,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }

    /// Lowercased surface text.
    pub fn lower(&self) -> String {
        self.text.to_lowercase()
    }
}

/// Characters that join two word characters into one token: `3.5`, `1,000`,
/// `Korea's`, `30-year`, `1970–1980`, `1997/11`.
fn joins(c: char, prev: char, next: char) -> bool {
    match c {
        '.' | ',' | '/' => prev.is_ascii_digit() && next.is_ascii_digit(),
        '\'' | '’' | '-' | '–' => prev.is_alphanumeric() && next.is_alphanumeric(),
        _ => false,
    }
}

/// Splits `caption[sentence]` into word, number and punctuation tokens and
/// lemmatizes the words.
pub fn tokenize_and_lemmatize(
    caption: &str,
    sentence: Span,
    sentence_index: usize,
    lemmatizer: &Lemmatizer,
) -> Vec<Token> {
    let text = sentence.slice(caption);
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (start, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        if c.is_alphanumeric() {
            while j < chars.len() {
                let d = chars[j].1;
                if d.is_alphanumeric() {
                    j += 1;
                } else if j + 1 < chars.len() && joins(d, chars[j - 1].1, chars[j + 1].1) {
                    j += 2;
                } else {
                    break;
                }
            }
        }
        let end = chars.get(j).map_or(text.len(), |&(b, _)| b);
        let surface = &text[start..end];
        let kind = if !c.is_alphanumeric() {
            TokenKind::Punct
        } else if c.is_ascii_digit() {
            TokenKind::Number
        } else {
            TokenKind::Word
        };
        let lemma = match kind {
            TokenKind::Word => lemmatizer.lemma(surface),
            _ => surface.to_lowercase(),
        };
        tokens.push(Token {
            text: surface.to_string(),
            lemma,
            span: Span::new(sentence.start + start, sentence.start + end),
            sentence: sentence_index,
            kind,
        });
        i = j;
    }
    tokens
}
