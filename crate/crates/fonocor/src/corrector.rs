//! Transcript correction and word-error-rate scoring.
//!
//! [`correct`] generates candidate pairs for a transcript, keeps a greedy
//! non-overlapping subset (best distance first), and splices the chosen
//! context phrases over their segments. [`wer`] aligns a hypothesis against
//! a reference at the word level and reports the substitution / deletion /
//! insertion breakdown; [`corpus_wer`] pools edit counts over a corpus.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::candidates::{generate, CandidatePair, Context, GeneratorKind};
use crate::distances::{Metric, Threshold};
use crate::normalizer::NormText;
use crate::phonetics::Representation;

/// Errors from scoring and configuration parsing.
#[derive(Debug, Error, PartialEq)]
pub enum CorrectorError {
    /// The reference side of a WER computation had no words.
    #[error("reference transcript is empty; word error rate is undefined")]
    EmptyReference,
    /// A corpus-level metric was requested over zero sentence pairs.
    #[error("corpus is empty; corpus word error rate is undefined")]
    EmptyCorpus,
    /// A correction config string did not have the expected shape.
    #[error("invalid correction config `{0}`: expected `<rep>,<generator>,<metric>,<threshold>`")]
    InvalidConfig(String),
}

/// One full correction configuration: which phonetic representation to
/// match in, how to carve segments, which distance to use, and the
/// normalized distance threshold below which a candidate qualifies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrectionConfig {
    pub representation: Representation,
    pub generator: GeneratorKind,
    pub metric: Metric,
    pub threshold: Threshold,
}

impl CorrectionConfig {
    pub fn new(
        representation: Representation,
        generator: GeneratorKind,
        metric: Metric,
        threshold: Threshold,
    ) -> Self {
        CorrectionConfig {
            representation,
            generator,
            metric,
            threshold,
        }
    }
}

impl fmt::Display for CorrectionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.representation.label(),
            self.generator.label(),
            self.metric.label(),
            self.threshold.value()
        )
    }
}

impl FromStr for CorrectionConfig {
    type Err = CorrectorError;

    /// Parse `"<rep>,<generator>,<metric>,<threshold>"`, e.g.
    /// `"ipa,let,levenshtein,0.4"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CorrectorError::InvalidConfig(s.to_string());
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(bad());
        }
        let representation = Representation::ALL
            .into_iter()
            .find(|r| r.label() == parts[0])
            .ok_or_else(bad)?;
        let generator = GeneratorKind::ALL
            .into_iter()
            .find(|g| g.label() == parts[1])
            .ok_or_else(bad)?;
        let metric = Metric::ALL
            .into_iter()
            .find(|m| m.label() == parts[2])
            .ok_or_else(bad)?;
        let raw: f64 = parts[3].parse().map_err(|_| bad())?;
        let threshold = Threshold::new(raw).map_err(|_| bad())?;
        Ok(CorrectionConfig::new(representation, generator, metric, threshold))
    }
}

/// Outcome of correcting one transcript.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionResult {
    /// The transcript as given.
    pub original: NormText,
    /// The transcript after substitutions.
    pub corrected: NormText,
    /// The candidate pairs that changed text, in ascending span order.
    pub applied: Vec<CandidatePair>,
}

/// Correct a transcript against a context.
///
/// Candidates are ranked by ascending distance (ties: longer segment first,
/// then lower start index, then context order) and accepted greedily when
/// their span does not overlap an already-accepted span. Accepted pairs
/// whose replacement equals the segment occupy their span (protecting an
/// exact match from being overwritten) but are not reported in `applied`.
pub fn correct(
    transcript: &NormText,
    context: &Context,
    config: &CorrectionConfig,
) -> CorrectionResult {
    let mut result = CorrectionResult {
        original: transcript.clone(),
        corrected: transcript.clone(),
        applied: Vec::new(),
    };
    if transcript.is_empty() || context.is_empty() {
        return result;
    }

    let mut pairs = generate(
        context,
        transcript,
        config.threshold,
        config.metric,
        config.representation,
        config.generator,
    );
    pairs.sort_by(|a, b| {
        a.distance
            .total_cmp(&b.distance)
            .then_with(|| b.span_len().cmp(&a.span_len()))
            .then_with(|| a.span.0.cmp(&b.span.0))
            .then_with(|| a.context_index.cmp(&b.context_index))
    });

    let mut occupied = vec![false; transcript.len()];
    let mut selected: Vec<CandidatePair> = Vec::new();
    for pair in pairs {
        if occupied[pair.span.0..=pair.span.1].iter().any(|&o| o) {
            continue;
        }
        for slot in &mut occupied[pair.span.0..=pair.span.1] {
            *slot = true;
        }
        selected.push(pair);
    }

    // Splice right-to-left so earlier spans keep their token indices.
    selected.sort_by_key(|pair| std::cmp::Reverse(pair.span.0));
    let mut tokens = transcript.tokens().to_vec();
    let mut applied = Vec::new();
    for pair in selected {
        let phrase = context
            .get(pair.context_index)
            .expect("candidate indices come from this context");
        let segment = &tokens[pair.span.0..=pair.span.1];
        if segment == phrase.tokens() {
            continue;
        }
        tokens.splice(pair.span.0..=pair.span.1, phrase.tokens().iter().cloned());
        applied.push(pair);
    }
    applied.sort_by_key(|p| p.span.0);

    result.corrected = NormText::from_tokens(tokens);
    result.applied = applied;
    result
}

/// Word-level error breakdown of one hypothesis against its reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WerBreakdown {
    /// Substituted words.
    pub substitutions: usize,
    /// Reference words missing from the hypothesis.
    pub deletions: usize,
    /// Hypothesis words absent from the reference.
    pub insertions: usize,
    /// Reference length in words.
    pub reference_words: usize,
    /// (S + D + I) / N; may exceed 1.0.
    pub wer: f64,
}

impl WerBreakdown {
    /// Total edit operations.
    pub fn edits(&self) -> usize {
        self.substitutions + self.deletions + self.insertions
    }
}

/// Word error rate of `hypothesis` against `reference`.
///
/// The alignment is a word-level edit distance with unit costs. The
/// traceback prefers, on cost ties, match/substitution over deletion over
/// insertion, so reported S/D/I counts are deterministic.
pub fn wer(reference: &NormText, hypothesis: &NormText) -> Result<WerBreakdown, CorrectorError> {
    if reference.is_empty() {
        return Err(CorrectorError::EmptyReference);
    }
    let r = reference.tokens();
    let h = hypothesis.tokens();
    let n = r.len();
    let m = h.len();

    let mut cost = vec![vec![0usize; m + 1]; n + 1];
    for (i, row) in cost.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in cost[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=n {
        for j in 1..=m {
            let sub = cost[i - 1][j - 1] + usize::from(r[i - 1] != h[j - 1]);
            let del = cost[i - 1][j] + 1;
            let ins = cost[i][j - 1] + 1;
            cost[i][j] = sub.min(del).min(ins);
        }
    }

    let (mut i, mut j) = (n, m);
    let (mut s, mut d, mut ins) = (0usize, 0usize, 0usize);
    while i > 0 || j > 0 {
        if i > 0 && j > 0 && cost[i][j] == cost[i - 1][j - 1] + usize::from(r[i - 1] != h[j - 1]) {
            if r[i - 1] != h[j - 1] {
                s += 1;
            }
            i -= 1;
            j -= 1;
        } else if i > 0 && cost[i][j] == cost[i - 1][j] + 1 {
            d += 1;
            i -= 1;
        } else {
            ins += 1;
            j -= 1;
        }
    }

    Ok(WerBreakdown {
        substitutions: s,
        deletions: d,
        insertions: ins,
        reference_words: n,
        wer: (s + d + ins) as f64 / n as f64,
    })
}

/// Corpus-level WER: total edits over total reference words, both summed
/// as integers before the single final division.
pub fn corpus_wer(pairs: &[(NormText, NormText)]) -> Result<f64, CorrectorError> {
    if pairs.is_empty() {
        return Err(CorrectorError::EmptyCorpus);
    }
    let mut edits = 0usize;
    let mut words = 0usize;
    for (reference, hypothesis) in pairs {
        let b = wer(reference, hypothesis)?;
        edits += b.edits();
        words += b.reference_words;
    }
    Ok(edits as f64 / words as f64)
}
