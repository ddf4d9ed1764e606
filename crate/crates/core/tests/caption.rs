use capcheck_core::caption::time::{DurationUnit, Season};
use capcheck_core::caption::{
    extract_time_refs, tokenize_and_lemmatize, BoundaryRole, CaptionAnalyzer, DescriptionKind, Lemmatizer, Lexicon,
    SynonymSimilarity, TimeContext, TimeExpr, DEFAULT_SIM_THRESHOLD,
};
use capcheck_core::chart::{DateRange, Granularity};
use capcheck_core::Span;
use chrono::NaiveDate;
use proptest::prelude::*;

fn ymd(y: i32, m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, d).unwrap()
}

fn ctx(granularity: Granularity) -> TimeContext {
    TimeContext {
        granularity,
        window: DateRange::new(ymd(1900, 1, 1), ymd(2030, 12, 31)),
    }
}

fn time_expr() -> impl Strategy<Value = TimeExpr> {
    let year = 1000i32..3000;
    prop_oneof![
        year.clone().prop_map(TimeExpr::Year),
        (100i32..299).prop_map(|d| TimeExpr::Decade(d * 10)),
        (year.clone(), 1u32..=12).prop_map(|(year, month)| TimeExpr::Month { year, month }),
        (year.clone(), 1u32..=12, 1u32..=28).prop_map(|(y, m, d)| TimeExpr::Day(ymd(y, m, d))),
        (
            year.clone(),
            prop_oneof![
                Just(Season::Spring),
                Just(Season::Summer),
                Just(Season::Fall),
                Just(Season::Winter)
            ]
        )
            .prop_map(|(year, season)| TimeExpr::Season { season, year }),
        (year, 1u32..=4).prop_map(|(year, quarter)| TimeExpr::Quarter { quarter, year }),
        (
            1u32..=12,
            prop_oneof![
                Just(DurationUnit::Day),
                Just(DurationUnit::Week),
                Just(DurationUnit::Month),
                Just(DurationUnit::Year),
                Just(DurationUnit::Decade)
            ]
        )
            .prop_map(|(count, unit)| TimeExpr::Last { count, unit }),
    ]
}

proptest! {
    #[test]
    fn canonical_text_round_trips(expr in time_expr()) {
        let text = format!("It rose in {expr}.");
        let toks = tokenize_and_lemmatize(&text, Span::new(0, text.len()), 0, &Lemmatizer::new(Vec::<String>::new()));
        let refs = extract_time_refs(&toks, &ctx(Granularity::Day));
        prop_assert_eq!(refs.len(), 1, "{}", text);
        prop_assert_eq!(refs[0].expr, expr);
        prop_assert_eq!(refs[0].span.slice(&text), expr.to_string());
        prop_assert_eq!(refs[0].role, BoundaryRole::Point);
    }

    #[test]
    fn widened_unit_contains_mention(expr in time_expr(), g in prop_oneof![
        Just(Granularity::Day), Just(Granularity::Week), Just(Granularity::Month), Just(Granularity::Year)
    ]) {
        let text = format!("in {expr}");
        let toks = tokenize_and_lemmatize(&text, Span::new(0, text.len()), 0, &Lemmatizer::new(Vec::<String>::new()));
        let fine = extract_time_refs(&toks, &ctx(Granularity::Day));
        let coarse = extract_time_refs(&toks, &ctx(g));
        prop_assert!(coarse[0].unit.first <= fine[0].unit.first);
        prop_assert!(coarse[0].unit.last >= fine[0].unit.last);
    }
}

struct Fixture {
    lexicon: Lexicon,
    lemmatizer: Lemmatizer,
    sim: SynonymSimilarity,
}

impl Fixture {
    fn new() -> Self {
        let lexicon = Lexicon::default();
        Fixture {
            lemmatizer: Lemmatizer::new(lexicon.vocabulary()),
            sim: SynonymSimilarity::from_lexicon(&lexicon),
            lexicon,
        }
    }

    /// (kind, start, end) per reference.
    fn refs(&self, text: &str, g: Granularity) -> Vec<(DescriptionKind, Option<NaiveDate>, Option<NaiveDate>)> {
        let a = CaptionAnalyzer {
            lexicon: &self.lexicon,
            lemmatizer: &self.lemmatizer,
            similarity: &self.sim,
            threshold: DEFAULT_SIM_THRESHOLD,
        };
        a.analyze(text, &ctx(g))
            .references()
            .map(|(_, r)| (r.description.kind, r.combined_start(), r.combined_end()))
            .collect()
    }
}

#[test]
fn merged_range() {
    let f = Fixture::new();
    assert_eq!(
        f.refs(
            "From 1950, North Korea's GDP increased quite rapidly until 1985.",
            Granularity::Year
        ),
        vec![(DescriptionKind::Rise, Some(ymd(1950, 1, 1)), Some(ymd(1985, 12, 31)))]
    );
}

#[test]
fn peak_then_open_start_fall() {
    let f = Fixture::new();
    assert_eq!(
        f.refs(
            "The 30-year fixed mortgage rates peaked in 1981 and then declined sharply until 1987.",
            Granularity::Month
        ),
        vec![
            (
                DescriptionKind::LocalMax,
                Some(ymd(1981, 1, 1)),
                Some(ymd(1981, 12, 31))
            ),
            (DescriptionKind::Fall, None, Some(ymd(1987, 12, 31))),
        ]
    );
}

#[test]
fn open_range_from_month() {
    let f = Fixture::new();
    assert_eq!(
        f.refs(
            "Tourist arrivals have grown steadily since Nov 1997.",
            Granularity::Month
        ),
        vec![(DescriptionKind::Rise, Some(ymd(1997, 11, 1)), None)]
    );
}

#[test]
fn feature_free_sentences() {
    let f = Fixture::new();
    for s in [
        "The chart shows home prices between 1890 and 2006.",
        "A similar supply-side solution is what we need.",
        "",
        "   ",
    ] {
        assert!(f.refs(s, Granularity::Year).is_empty(), "{s:?}");
    }
}

#[test]
fn references_in_reading_order_across_sentences() {
    let f = Fixture::new();
    let r = f.refs(
        "Prices hit a record high in 2006. Output bottomed out in 1998. Costs rose from 1990 to 1995.",
        Granularity::Year,
    );
    let kinds: Vec<_> = r.iter().map(|x| x.0).collect();
    assert_eq!(
        kinds,
        [
            DescriptionKind::LocalMax,
            DescriptionKind::LocalMin,
            DescriptionKind::Rise
        ]
    );
}
