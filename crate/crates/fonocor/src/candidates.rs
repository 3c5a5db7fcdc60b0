//! Candidate (segment, context-phrase) pair generation.
//!
//! Three generators produce the substitution candidate set R:
//!
//! * **LET / SYL** — incremental search: from every start token the segment
//!   grows one word at a time; a length filter in the chosen unit (letters
//!   including spaces, or syllables) prunes context phrases whose size is
//!   incompatible with the distance threshold, and growth stops once the
//!   segment is too long for even the longest context phrase.
//! * **WIN** — pivot windows: around every token p_j the sub-phrases
//!   {p_j, p_{j−1}p_j, p_j p_{j+1}, p_{j−1}p_j p_{j+1}} are compared against
//!   every context phrase.
//!
//! The length filter is sound because distances are max-normalized: when
//! `len(s)·(1−u) > len(c)` or `len(c)·(1−u) > len(s)`, the normalized
//! distance cannot be below u, so filtered pairs are never lost candidates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::distances::{normalized_distance, Metric, Threshold};
use crate::normalizer::{syllable_count, NormText};
use crate::phonetics::{encode_tokens, Representation};

/// The ordered, deduplicated domain phrase list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    phrases: Vec<NormText>,
}

impl Context {
    /// Build a context from normalized phrases, dropping empty entries and
    /// duplicates while preserving first-occurrence order.
    pub fn new(phrases: Vec<NormText>) -> Self {
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::new();
        for p in phrases {
            if !p.is_empty() && seen.insert(p.joined()) {
                kept.push(p);
            }
        }
        Context { phrases: kept }
    }

    /// The phrases in order.
    pub fn phrases(&self) -> &[NormText] {
        &self.phrases
    }

    /// Number of phrases.
    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    /// True when the context holds no phrases.
    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    /// Phrase at `index`.
    pub fn get(&self, index: usize) -> Option<&NormText> {
        self.phrases.get(index)
    }
}

/// One substitution candidate: a transcript segment, a context phrase, and
/// their normalized distance (always below the generating threshold).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidatePair {
    /// Inclusive token index range [start, end] in the transcript.
    pub span: (usize, usize),
    /// Index into the generating context.
    pub context_index: usize,
    /// Normalized distance between the encoded segment and phrase.
    pub distance: f64,
}

impl CandidatePair {
    /// Number of tokens the span covers.
    pub fn span_len(&self) -> usize {
        self.span.1 - self.span.0 + 1
    }
}

/// Candidate generation strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorKind {
    /// Pivot windows of one word around each token.
    Win,
    /// Incremental search measured in letters.
    Let,
    /// Incremental search measured in syllables.
    Syl,
}

impl GeneratorKind {
    /// All generators, in the experiment grid's axis order.
    pub const ALL: [GeneratorKind; 3] = [GeneratorKind::Win, GeneratorKind::Let, GeneratorKind::Syl];

    /// Lowercase axis label used in reports and CLI arguments.
    pub fn label(self) -> &'static str {
        match self {
            GeneratorKind::Win => "win",
            GeneratorKind::Let => "let",
            GeneratorKind::Syl => "syl",
        }
    }
}

/// Unit in which segment and phrase sizes are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentUnit {
    /// Characters of the normalized text, spaces included.
    Letters,
    /// Sum of per-token syllable counts.
    Syllables,
}

/// Size of a token sequence in the given unit. A token that cannot be
/// syllabified (no vowel — rare interjections, lone consonants) counts as
/// one syllable so the generator stays total.
fn unit_len(tokens: &[String], unit: SegmentUnit) -> usize {
    match unit {
        SegmentUnit::Letters => {
            let chars: usize = tokens.iter().map(|t| t.chars().count()).sum();
            chars + tokens.len().saturating_sub(1)
        }
        SegmentUnit::Syllables => tokens
            .iter()
            .map(|t| syllable_count(t).unwrap_or(1))
            .sum(),
    }
}

/// Counters describing one generator run (used by complexity assertions).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Number of (segment, phrase) distance comparisons performed.
    pub comparisons: usize,
}

/// Dispatch to the generator selected by `kind`.
pub fn generate(
    context: &Context,
    transcript: &NormText,
    u: Threshold,
    metric: Metric,
    rep: Representation,
    kind: GeneratorKind,
) -> Vec<CandidatePair> {
    match kind {
        GeneratorKind::Win => pivot_window(context, transcript, u, metric, rep),
        GeneratorKind::Let => {
            incremental_search(context, transcript, u, metric, rep, SegmentUnit::Letters)
        }
        GeneratorKind::Syl => {
            incremental_search(context, transcript, u, metric, rep, SegmentUnit::Syllables)
        }
    }
}

/// Incremental candidate search (LET/SYL).
pub fn incremental_search(
    context: &Context,
    transcript: &NormText,
    u: Threshold,
    metric: Metric,
    rep: Representation,
    unit: SegmentUnit,
) -> Vec<CandidatePair> {
    incremental_search_stats(context, transcript, u, metric, rep, unit).0
}

/// Incremental search returning comparison counters alongside the pairs.
pub fn incremental_search_stats(
    context: &Context,
    transcript: &NormText,
    u: Threshold,
    metric: Metric,
    rep: Representation,
    unit: SegmentUnit,
) -> (Vec<CandidatePair>, SearchStats) {
    let mut stats = SearchStats::default();
    let tokens = transcript.tokens();
    if context.is_empty() || tokens.is_empty() {
        return (Vec::new(), stats);
    }
    let u = u.value();

    // Encode and measure every context phrase once.
    let ctx: Vec<(usize, String)> = context
        .phrases()
        .iter()
        .map(|p| (unit_len(p.tokens(), unit), encode_tokens(p.tokens(), rep)))
        .collect();
    let l_m = ctx.iter().map(|(l, _)| *l).max().unwrap_or(0);

    let mut found = Vec::new();
    for start in 0..tokens.len() {
        for end in start..tokens.len() {
            let seg_tokens = &tokens[start..=end];
            let seg_len = unit_len(seg_tokens, unit);
            // Growth stop: once the segment outgrows the longest phrase
            // beyond what the threshold permits, no phrase can match it or
            // any further extension.
            if (seg_len as f64) * (1.0 - u) > l_m as f64 {
                break;
            }
            let seg_encoded = encode_tokens(seg_tokens, rep);
            for (ci, (c_len, c_encoded)) in ctx.iter().enumerate() {
                // Length filter: sizes compatible with a distance below u.
                if (seg_len as f64) * (1.0 - u) > *c_len as f64
                    || (*c_len as f64) * (1.0 - u) > seg_len as f64
                {
                    continue;
                }
                if seg_encoded.is_empty() && c_encoded.is_empty() {
                    continue;
                }
                stats.comparisons += 1;
                let d = normalized_distance(&seg_encoded, c_encoded, metric)
                    .expect("both-empty pairs are skipped above");
                if d < u {
                    found.push(CandidatePair {
                        span: (start, end),
                        context_index: ci,
                        distance: d,
                    });
                }
            }
        }
    }
    (dedup(found), stats)
}

/// Pivot-window candidate generation (WIN).
pub fn pivot_window(
    context: &Context,
    transcript: &NormText,
    u: Threshold,
    metric: Metric,
    rep: Representation,
) -> Vec<CandidatePair> {
    let tokens = transcript.tokens();
    if context.is_empty() || tokens.is_empty() {
        return Vec::new();
    }
    let u = u.value();
    let m = tokens.len();

    let ctx: Vec<String> = context
        .phrases()
        .iter()
        .map(|p| encode_tokens(p.tokens(), rep))
        .collect();

    let mut found = Vec::new();
    for pivot in 0..m {
        let mut spans: Vec<(usize, usize)> = vec![(pivot, pivot)];
        if pivot > 0 {
            spans.push((pivot - 1, pivot));
        }
        if pivot + 1 < m {
            spans.push((pivot, pivot + 1));
        }
        if pivot > 0 && pivot + 1 < m {
            spans.push((pivot - 1, pivot + 1));
        }
        for span in spans {
            let seg_encoded = encode_tokens(&tokens[span.0..=span.1], rep);
            for (ci, c_encoded) in ctx.iter().enumerate() {
                if seg_encoded.is_empty() && c_encoded.is_empty() {
                    continue;
                }
                let d = normalized_distance(&seg_encoded, c_encoded, metric)
                    .expect("both-empty pairs are skipped above");
                if d < u {
                    found.push(CandidatePair {
                        span,
                        context_index: ci,
                        distance: d,
                    });
                }
            }
        }
    }
    dedup(found)
}

/// Deduplicate on (span, context_index) keeping the smallest distance;
/// output is sorted by span then context index for determinism.
fn dedup(pairs: Vec<CandidatePair>) -> Vec<CandidatePair> {
    let mut best: BTreeMap<(usize, usize, usize), f64> = BTreeMap::new();
    for p in pairs {
        let key = (p.span.0, p.span.1, p.context_index);
        best.entry(key)
            .and_modify(|d| *d = d.min(p.distance))
            .or_insert(p.distance);
    }
    best.into_iter()
        .map(|((s0, s1, ci), d)| CandidatePair {
            span: (s0, s1),
            context_index: ci,
            distance: d,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalizer::normalize;

    fn ctx(phrases: &[&str]) -> Context {
        Context::new(phrases.iter().map(|p| normalize(p)).collect())
    }

    fn u(v: f64) -> Threshold {
        Threshold::new(v).unwrap()
    }

    #[test]
    fn pinned_incremental_example() {
        let pairs = incremental_search(
            &ctx(&["pizza"]),
            &normalize("quiero una pista"),
            u(0.45),
            Metric::Levenshtein,
            Representation::Plain,
            SegmentUnit::Letters,
        );
        assert!(pairs
            .iter()
            .any(|p| p.span == (2, 2) && p.context_index == 0 && (p.distance - 0.4).abs() < 1e-12));
        // Below the distance, nothing qualifies.
        let none = incremental_search(
            &ctx(&["pizza"]),
            &normalize("quiero una pista"),
            u(0.35),
            Metric::Levenshtein,
            Representation::Plain,
            SegmentUnit::Letters,
        );
        assert!(none.is_empty());
    }

    #[test]
    fn empty_transcript_yields_nothing() {
        let pairs = incremental_search(
            &ctx(&["a"]),
            &normalize(""),
            u(0.5),
            Metric::Levenshtein,
            Representation::Plain,
            SegmentUnit::Letters,
        );
        assert!(pairs.is_empty());
    }

    #[test]
    fn pinned_window_example() {
        let pairs = pivot_window(
            &ctx(&["una pizza"]),
            &normalize("una pista grande"),
            u(0.45),
            Metric::Levenshtein,
            Representation::Plain,
        );
        let hit = pairs
            .iter()
            .find(|p| p.span == (0, 1) && p.context_index == 0)
            .expect("window around 'pista' should reach 'una pizza'");
        assert!((hit.distance - 2.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn window_spans_at_boundaries() {
        // A single-token transcript has only the bare pivot window.
        let pairs = pivot_window(
            &ctx(&["solo"]),
            &normalize("solo"),
            u(0.5),
            Metric::Levenshtein,
            Representation::Plain,
        );
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].span, (0, 0));
        assert_eq!(pairs[0].distance, 0.0);
    }

    #[test]
    fn emitted_distances_are_below_threshold() {
        let t = normalize("kasa kasi kusa");
        let c = ctx(&["kasa", "kusa kasi"]);
        for unit in [SegmentUnit::Letters, SegmentUnit::Syllables] {
            for p in incremental_search(&c, &t, u(0.5), Metric::Osa, Representation::Plain, unit) {
                assert!(p.distance < 0.5);
            }
        }
        for p in pivot_window(&c, &t, u(0.5), Metric::Osa, Representation::Plain) {
            assert!(p.distance < 0.5);
        }
    }

    #[test]
    fn syllable_unit_measures_in_syllables() {
        // "quiero una pizza" = 2+2+2 syllables; phrase "quiero una pizza"
        // matches itself under SYL.
        let t = normalize("quiero una pizza");
        let pairs = incremental_search(
            &ctx(&["quiero una pizza"]),
            &t,
            u(0.3),
            Metric::Levenshtein,
            Representation::Plain,
            SegmentUnit::Syllables,
        );
        assert!(pairs.iter().any(|p| p.span == (0, 2) && p.distance == 0.0));
    }

    #[test]
    fn comparisons_bounded_by_n_m_squared() {
        let t = normalize("uno dos tres cuatro cinco seis");
        let c = ctx(&["uno", "dos tres", "cuatro", "cinco seis", "tres"]);
        let (_, stats) = incremental_search_stats(
            &c,
            &t,
            u(0.45),
            Metric::Levenshtein,
            Representation::Plain,
            SegmentUnit::Letters,
        );
        let m = t.len();
        let n = c.len();
        assert!(stats.comparisons <= n * m * m);
    }
}
