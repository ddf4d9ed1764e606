use crate::span::Span;

/// Lowercased words (without the final period) that do not end a sentence.
const ABBREVIATIONS: &[&str] = &[
    "e.g", "i.e", "vs", "approx", "ca", "cf", "mr", "mrs", "ms", "dr", "st", "no", "u.s", "u.k", "fig",
];

/// Month abbreviations; protected only when a number follows (`Nov. 1997`).
const MONTH_ABBREVIATIONS: &[&str] = &[
    "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec",
];

fn word_before(text: &str, end: usize) -> &str {
    let start = text[..end]
        .rfind(|c: char| c.is_whitespace() || c == '(' || c == '"')
        .map_or(0, |i| i + 1);
    &text[start..end]
}

fn protected(text: &str, dot: usize) -> bool {
    let word = word_before(text, dot).to_lowercase();
    if ABBREVIATIONS.contains(&word.as_str()) {
        return true;
    }
    if MONTH_ABBREVIATIONS.contains(&word.as_str()) {
        return text[dot + 1..].trim_start().starts_with(|c: char| c.is_ascii_digit());
    }
    false
}

/// Splits a caption into trimmed sentence spans at `.`, `!` or `?` followed
/// by whitespace or the end of the text. Decimal points and common
/// abbreviations do not split.
pub fn split_sentences(caption: &str) -> Vec<Span> {
    let mut spans = Vec::new();
    let mut start = 0;
    let mut chars = caption.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if !matches!(c, '.' | '!' | '?') {
            continue;
        }
        let mut end = i + c.len_utf8();
        // absorb repeated terminators and closing quotes/brackets
        while let Some(&(j, d)) = chars.peek() {
            if matches!(d, '.' | '!' | '?' | '"' | '\'' | ')' | '”' | '’') {
                end = j + d.len_utf8();
                chars.next();
            } else {
                break;
            }
        }
        let at_break = caption[end..].chars().next().is_none_or(char::is_whitespace);
        if !at_break || (c == '.' && protected(caption, i)) {
            continue;
        }
        push_trimmed(caption, start, end, &mut spans);
        start = end;
    }
    push_trimmed(caption, start, caption.len(), &mut spans);
    spans
}

fn push_trimmed(text: &str, start: usize, end: usize, out: &mut Vec<Span>) {
    let slice = &text[start..end];
    let lead = slice.len() - slice.trim_start().len();
    let trimmed = slice.trim();
    if !trimmed.is_empty() {
        out.push(Span::new(start + lead, start + lead + trimmed.len()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(caption: &str) -> Vec<&str> {
        split_sentences(caption).iter().map(|s| s.slice(caption)).collect()
    }

    #[test]
    fn two_sentences() {
        assert_eq!(texts("A rose. B fell."), vec!["A rose.", "B fell."]);
    }

    #[test]
    fn decimal_protected() {
        assert_eq!(texts("It hit 3.5 in March."), vec!["It hit 3.5 in March."]);
    }

    #[test]
    fn empty() {
        assert!(split_sentences("").is_empty());
        assert!(split_sentences("   \n").is_empty());
    }

    #[test]
    fn abbreviations() {
        assert_eq!(
            texts("Prices rose, e.g. in 2001. They fell since Nov. 1997! Why?"),
            vec!["Prices rose, e.g. in 2001.", "They fell since Nov. 1997!", "Why?"]
        );
        assert_eq!(
            texts("It peaked in Nov. Then it fell."),
            vec!["It peaked in Nov.", "Then it fell."]
        );
    }

    #[test]
    fn unterminated_tail() {
        assert_eq!(texts("One.  Two without stop"), vec!["One.", "Two without stop"]);
        assert_eq!(texts("He said \"rose.\" Then"), vec!["He said \"rose.\"", "Then"]);
    }
}
