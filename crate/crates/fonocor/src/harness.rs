//! Experiment plumbing: corpus and context files, the configuration
//! sweep, synthetic corpus generation, and report serialization.
//!
//! Corpora are line-delimited JSON records with fields `id`, `reference`,
//! and `hypothesis` (append-friendly and diffable); contexts are plain
//! text, one phrase per line, with `#` comments. The sweep runs every
//! (representation × generator × metric × threshold) cell over a corpus
//! and reports per-cell WER before/after plus per-axis aggregate means.
//! ASR systems appear only as ingested hypothesis files; adapters for live
//! services are an extension point, not part of this crate.

use std::collections::HashSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::candidates::{Context, GeneratorKind};
use crate::corrector::{corpus_wer, correct, CorrectionConfig, CorrectorError};
use crate::distances::{DistanceError, Metric, Threshold};
use crate::normalizer::{normalize, NormText};
use crate::phonetics::Representation;

/// Errors from file ingestion, report generation, and synthesis.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed corpus record: {message}")]
    MalformedRecord {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}:{line}: duplicate record id `{id}`")]
    DuplicateId {
        path: PathBuf,
        line: usize,
        id: String,
    },
    #[error("{path}:{line}: record `{id}` has an empty reference after normalization")]
    EmptyReference {
        path: PathBuf,
        line: usize,
        id: String,
    },
    #[error("{path}: corpus file contains no records")]
    EmptyCorpus { path: PathBuf },
    #[error("{path}: context file has no usable phrases")]
    NoUsablePhrases { path: PathBuf },
    #[error("vocabulary contains no usable phrases")]
    EmptyVocabulary,
    #[error("error rate {0} outside [0, 1]")]
    InvalidErrorRate(f64),
    #[error("report serialization failed: {0}")]
    Report(String),
    #[error(transparent)]
    Corrector(#[from] CorrectorError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
}

/// One corpus sentence: the true reference and the ASR hypothesis, both
/// normalized on load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRecord {
    pub id: String,
    pub reference: NormText,
    pub hypothesis: NormText,
}

/// On-disk shape of one corpus line.
#[derive(Serialize, Deserialize)]
struct RawRecord {
    id: String,
    reference: String,
    hypothesis: String,
}

/// (reference, hypothesis) pairs for the scoring functions.
pub fn corpus_pairs(records: &[CorpusRecord]) -> Vec<(NormText, NormText)> {
    records
        .iter()
        .map(|r| (r.reference.clone(), r.hypothesis.clone()))
        .collect()
}

/// Load a line-delimited corpus file. Blank lines are skipped; anything
/// else must parse as a record with non-empty normalized reference and a
/// unique id.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<CorpusRecord>, HarnessError> {
    let path = path.as_ref();
    let io_err = |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    };
    let raw = std::fs::read_to_string(path).map_err(io_err)?;

    let mut seen = HashSet::new();
    let mut records = Vec::new();
    for (idx, line) in raw.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: RawRecord =
            serde_json::from_str(line).map_err(|e| HarnessError::MalformedRecord {
                path: path.to_path_buf(),
                line: line_no,
                message: e.to_string(),
            })?;
        let id = parsed.id.trim().to_string();
        if id.is_empty() {
            return Err(HarnessError::MalformedRecord {
                path: path.to_path_buf(),
                line: line_no,
                message: "record id is empty".to_string(),
            });
        }
        if !seen.insert(id.clone()) {
            return Err(HarnessError::DuplicateId {
                path: path.to_path_buf(),
                line: line_no,
                id,
            });
        }
        let reference = normalize(&parsed.reference);
        if reference.is_empty() {
            return Err(HarnessError::EmptyReference {
                path: path.to_path_buf(),
                line: line_no,
                id,
            });
        }
        records.push(CorpusRecord {
            id,
            reference,
            hypothesis: normalize(&parsed.hypothesis),
        });
    }
    if records.is_empty() {
        return Err(HarnessError::EmptyCorpus {
            path: path.to_path_buf(),
        });
    }
    Ok(records)
}

/// Serialize records as line-delimited JSON. Loading the result
/// reproduces the records exactly (texts are already normalized).
pub fn write_corpus(mut writer: impl Write, records: &[CorpusRecord]) -> Result<(), HarnessError> {
    for r in records {
        let raw = RawRecord {
            id: r.id.clone(),
            reference: r.reference.joined(),
            hypothesis: r.hypothesis.joined(),
        };
        let line = serde_json::to_string(&raw)
            .map_err(|e| HarnessError::Report(e.to_string()))?;
        writeln!(writer, "{line}").map_err(|e| HarnessError::Report(e.to_string()))?;
    }
    Ok(())
}

/// Write records to a corpus file; see [`write_corpus`].
pub fn save_corpus(path: impl AsRef<Path>, records: &[CorpusRecord]) -> Result<(), HarnessError> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_corpus(&mut buf, records)?;
    std::fs::write(path, buf).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Load a context file: one phrase per line, `#` comments and blank lines
/// ignored, duplicates collapsed in file order.
pub fn load_context(path: impl AsRef<Path>) -> Result<Context, HarnessError> {
    let path = path.as_ref();
    let raw = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let phrases: Vec<NormText> = raw
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(normalize)
        .collect();
    let context = Context::new(phrases);
    if context.is_empty() {
        return Err(HarnessError::NoUsablePhrases {
            path: path.to_path_buf(),
        });
    }
    Ok(context)
}

/// Serialize a context (one phrase per line) in the format
/// [`load_context`] reads back identically.
pub fn write_context(mut writer: impl Write, context: &Context) -> Result<(), HarnessError> {
    for p in context.phrases() {
        writeln!(writer, "{}", p.joined()).map_err(|e| HarnessError::Report(e.to_string()))?;
    }
    Ok(())
}

/// Write a context file; see [`write_context`].
pub fn save_context(path: impl AsRef<Path>, context: &Context) -> Result<(), HarnessError> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_context(&mut buf, context)?;
    std::fs::write(path, buf).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Relative WER reduction, the headline comparison quantity. A zero
/// baseline reduces by definition to 0.
pub fn relative_reduction(before: f64, after: f64) -> f64 {
    if before == 0.0 {
        0.0
    } else {
        (before - after) / before
    }
}

/// The default threshold grid: 0.05 increments up to 0.60.
pub fn default_thresholds() -> Vec<f64> {
    (1..=12).map(|k| k as f64 / 20.0).collect()
}

/// One sweep cell: a full configuration with its before/after corpus WER.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub representation: Representation,
    pub generator: GeneratorKind,
    pub metric: Metric,
    pub threshold: f64,
    pub wer_before: f64,
    pub wer_after: f64,
    pub relative_reduction: f64,
}

/// Full grid results plus the per-axis aggregate means.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// Mean post-correction WER per representation, in axis order.
    pub mean_after_by_representation: Vec<(Representation, f64)>,
    /// Mean post-correction WER per generator, in axis order.
    pub mean_after_by_generator: Vec<(GeneratorKind, f64)>,
}

impl SweepReport {
    /// Serialize the rows as a CSV table with a header.
    pub fn write_csv(&self, writer: impl Write) -> Result<(), HarnessError> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record([
            "representation",
            "generator",
            "metric",
            "threshold",
            "wer_before",
            "wer_after",
            "relative_reduction",
        ])
        .map_err(|e| HarnessError::Report(e.to_string()))?;
        for r in &self.rows {
            w.write_record([
                r.representation.label(),
                r.generator.label(),
                r.metric.label(),
                &r.threshold.to_string(),
                &r.wer_before.to_string(),
                &r.wer_after.to_string(),
                &r.relative_reduction.to_string(),
            ])
            .map_err(|e| HarnessError::Report(e.to_string()))?;
        }
        w.flush()
            .map_err(|e| HarnessError::Report(e.to_string()))
    }
}

/// Run the full configuration grid over a corpus. Cells execute in
/// parallel; row order follows the grid definition (representation, then
/// generator, then metric, then threshold).
pub fn sweep(
    corpus: &[CorpusRecord],
    context: &Context,
    thresholds: &[f64],
) -> Result<SweepReport, HarnessError> {
    let pairs = corpus_pairs(corpus);
    let before = corpus_wer(&pairs)?;
    let thresholds: Vec<Threshold> = thresholds
        .iter()
        .map(|&u| Threshold::new(u))
        .collect::<Result<_, _>>()?;

    let mut cells = Vec::new();
    for rep in Representation::ALL {
        for gen in GeneratorKind::ALL {
            for met in Metric::ALL {
                for &u in &thresholds {
                    cells.push(CorrectionConfig::new(rep, gen, met, u));
                }
            }
        }
    }

    let rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|config| {
            let corrected: Vec<(NormText, NormText)> = pairs
                .iter()
                .map(|(r, h)| (r.clone(), correct(h, context, config).corrected))
                .collect();
            let after = corpus_wer(&corrected)?;
            Ok(SweepRow {
                representation: config.representation,
                generator: config.generator,
                metric: config.metric,
                threshold: config.threshold.value(),
                wer_before: before,
                wer_after: after,
                relative_reduction: relative_reduction(before, after),
            })
        })
        .collect::<Result<_, HarnessError>>()?;

    let mean_for = |pred: &dyn Fn(&SweepRow) -> bool| {
        let (mut sum, mut count) = (0.0, 0usize);
        for r in rows.iter().filter(|r| pred(r)) {
            sum += r.wer_after;
            count += 1;
        }
        sum / count as f64
    };
    let mean_after_by_representation = Representation::ALL
        .into_iter()
        .map(|rep| (rep, mean_for(&|r: &SweepRow| r.representation == rep)))
        .collect();
    let mean_after_by_generator = GeneratorKind::ALL
        .into_iter()
        .map(|gen| (gen, mean_for(&|r: &SweepRow| r.generator == gen)))
        .collect();

    Ok(SweepReport {
        rows,
        mean_after_by_representation,
        mean_after_by_generator,
    })
}

/// How one word was corrupted during synthesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorruptionKind {
    /// s ↔ z (seseo confusion).
    SibilantSwap,
    /// b ↔ v (identical phoneme).
    VoicingSwap,
    /// ll ↔ y (yeísmo confusion).
    PalatalSwap,
    /// Silent h inserted or removed.
    SilentH,
    /// One vowel replaced by a near vowel.
    VowelShift,
    /// A short word dropped.
    WordDeleted,
    /// A word emitted twice.
    WordDuplicated,
}

/// One entry of the planted-error manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedError {
    /// Index of the affected record in the returned corpus.
    pub record_index: usize,
    /// Reference token index the corruption hit.
    pub token_index: usize,
    pub kind: CorruptionKind,
    /// The reference word before corruption.
    pub original: String,
}

/// A synthesized corpus together with its ground-truth error manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticCorpus {
    pub records: Vec<CorpusRecord>,
    pub planted: Vec<PlantedError>,
}

/// Build a corpus of `sentence_count` reference sentences sampled from the
/// vocabulary, with hypotheses derived by corrupting each word
/// independently at `error_rate`. Corruptions are phonetically plausible
/// single edits — seseo/voicing/yeísmo letter swaps, silent-h errors, and
/// vowel shifts — plus occasional word deletions (short words) and
/// duplications, so every corruption costs exactly one word-level edit.
pub fn synthesize_corpus(
    vocabulary: &[NormText],
    sentence_count: usize,
    error_rate: f64,
    rng_seed: u64,
) -> Result<SyntheticCorpus, HarnessError> {
    if !(0.0..=1.0).contains(&error_rate) {
        return Err(HarnessError::InvalidErrorRate(error_rate));
    }
    let phrases: Vec<&NormText> = vocabulary.iter().filter(|p| !p.is_empty()).collect();
    if phrases.is_empty() {
        return Err(HarnessError::EmptyVocabulary);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut records = Vec::with_capacity(sentence_count);
    let mut planted = Vec::new();
    for i in 0..sentence_count {
        let reference = phrases[rng.gen_range(0..phrases.len())].clone();
        let mut hyp_tokens = Vec::with_capacity(reference.len());
        for (token_index, word) in reference.tokens().iter().enumerate() {
            if rng.gen::<f64>() < error_rate {
                let (replacement, kind) = corrupt_word(word, &mut rng);
                planted.push(PlantedError {
                    record_index: i,
                    token_index,
                    kind,
                    original: word.clone(),
                });
                hyp_tokens.extend(replacement);
            } else {
                hyp_tokens.push(word.clone());
            }
        }
        records.push(CorpusRecord {
            id: format!("synth-{i:04}"),
            reference,
            hypothesis: NormText::from_tokens(hyp_tokens),
        });
    }
    Ok(SyntheticCorpus { records, planted })
}

/// Corrupt one word with a single plausible edit. Returns the replacement
/// token sequence (empty for a deletion, two tokens for a duplication).
fn corrupt_word(word: &str, rng: &mut impl Rng) -> (Vec<String>, CorruptionKind) {
    let chars: Vec<char> = word.chars().collect();
    let mut ops = Vec::new();
    if chars.iter().any(|&c| c == 's' || c == 'z') {
        ops.push(CorruptionKind::SibilantSwap);
    }
    if chars.iter().any(|&c| c == 'b' || c == 'v') {
        ops.push(CorruptionKind::VoicingSwap);
    }
    if word.contains("ll") || chars.contains(&'y') {
        ops.push(CorruptionKind::PalatalSwap);
    }
    if matches!(chars[0], 'h' | 'a' | 'e' | 'i' | 'o' | 'u') {
        ops.push(CorruptionKind::SilentH);
    }
    if chars.iter().any(|&c| "aeiou".contains(c)) {
        ops.push(CorruptionKind::VowelShift);
    }

    let structural = |word: &str| {
        if word.chars().count() <= 3 {
            (Vec::new(), CorruptionKind::WordDeleted)
        } else {
            (vec![word.to_string(); 2], CorruptionKind::WordDuplicated)
        }
    };
    if ops.is_empty() {
        return structural(word);
    }
    // One corruption in ten is structural so deletions and insertions
    // appear in the error mix alongside substitutions.
    if rng.gen::<f64>() < 0.1 {
        return structural(word);
    }

    let kind = ops[rng.gen_range(0..ops.len())];
    let corrupted = match kind {
        CorruptionKind::SibilantSwap => swap_first(word, &[('s', "z"), ('z', "s")]),
        CorruptionKind::VoicingSwap => swap_first(word, &[('b', "v"), ('v', "b")]),
        CorruptionKind::PalatalSwap => {
            if let Some(pos) = word.find("ll") {
                let mut s = word.to_string();
                s.replace_range(pos..pos + 2, "y");
                s
            } else {
                swap_first(word, &[('y', "ll")])
            }
        }
        CorruptionKind::SilentH => {
            if let Some(rest) = word.strip_prefix('h') {
                rest.to_string()
            } else {
                format!("h{word}")
            }
        }
        CorruptionKind::VowelShift => {
            let positions: Vec<usize> = chars
                .iter()
                .enumerate()
                .filter(|(_, c)| "aeiou".contains(**c))
                .map(|(i, _)| i)
                .collect();
            let pos = positions[rng.gen_range(0..positions.len())];
            let mut out = chars.clone();
            out[pos] = match out[pos] {
                'a' => 'e',
                'e' => 'i',
                'i' => 'e',
                'o' => 'u',
                _ => 'o',
            };
            out.into_iter().collect()
        }
        CorruptionKind::WordDeleted | CorruptionKind::WordDuplicated => unreachable!(),
    };
    (vec![corrupted], kind)
}

/// Replace the first character that has a mapping. The caller guarantees
/// at least one mapped character is present.
fn swap_first(word: &str, map: &[(char, &str)]) -> String {
    let mut out = String::with_capacity(word.len());
    let mut done = false;
    for c in word.chars() {
        match map.iter().find(|(from, _)| !done && *from == c) {
            Some((_, to)) => {
                out.push_str(to);
                done = true;
            }
            None => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn texts(strs: &[&str]) -> Vec<NormText> {
        strs.iter().map(|s| normalize(s)).collect()
    }

    #[test]
    fn corpus_round_trips_through_files() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        std::fs::write(
            &path,
            concat!(
                "{\"id\":\"r1\",\"reference\":\"Quiero una pizza.\",\"hypothesis\":\"quiero una pista\"}\n",
                "\n",
                "{\"id\":\"r2\",\"reference\":\"¿Dónde está?\",\"hypothesis\":\"donde esta\"}\n",
            ),
        )
        .unwrap();
        let records = load_corpus(&path).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].reference.joined(), "quiero una pizza");
        assert_eq!(records[1].id, "r2");

        let copy = dir.path().join("copy.jsonl");
        save_corpus(&copy, &records).unwrap();
        assert_eq!(load_corpus(&copy).unwrap(), records);
    }

    #[test]
    fn malformed_line_is_reported_with_its_number() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        std::fs::write(
            &path,
            "{\"id\":\"r1\",\"reference\":\"hola\",\"hypothesis\":\"hola\"}\n{\"id\":\"r2\",\"hypothesis\":\"sin referencia\"}\n",
        )
        .unwrap();
        match load_corpus(&path) {
            Err(HarnessError::MalformedRecord { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected malformed-record error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_ids_and_empty_references_are_rejected() {
        let dir = tempdir().unwrap();
        let dup = dir.path().join("dup.jsonl");
        std::fs::write(
            &dup,
            "{\"id\":\"x\",\"reference\":\"uno\",\"hypothesis\":\"uno\"}\n{\"id\":\"x\",\"reference\":\"dos\",\"hypothesis\":\"dos\"}\n",
        )
        .unwrap();
        assert!(matches!(
            load_corpus(&dup),
            Err(HarnessError::DuplicateId { line: 2, .. })
        ));

        let empty_ref = dir.path().join("empty_ref.jsonl");
        std::fs::write(
            &empty_ref,
            "{\"id\":\"x\",\"reference\":\"¡¿?!\",\"hypothesis\":\"algo\"}\n",
        )
        .unwrap();
        assert!(matches!(
            load_corpus(&empty_ref),
            Err(HarnessError::EmptyReference { line: 1, .. })
        ));
    }

    #[test]
    fn empty_corpus_file_is_an_error() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("empty.jsonl");
        std::fs::write(&path, "\n\n").unwrap();
        assert!(matches!(
            load_corpus(&path),
            Err(HarnessError::EmptyCorpus { .. })
        ));
    }

    #[test]
    fn context_files_skip_comments_and_dedup() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("ctx.txt");
        std::fs::write(&path, "pizza\nuna pizza\n# comment\n\nPIZZA\n").unwrap();
        let ctx = load_context(&path).unwrap();
        assert_eq!(ctx.len(), 2);

        let save = dir.path().join("ctx2.txt");
        save_context(&save, &ctx).unwrap();
        assert_eq!(load_context(&save).unwrap(), ctx);

        let comments = dir.path().join("only_comments.txt");
        std::fs::write(&comments, "# a\n# b\n").unwrap();
        assert!(matches!(
            load_context(&comments),
            Err(HarnessError::NoUsablePhrases { .. })
        ));
    }

    #[test]
    fn default_threshold_grid_has_twelve_steps() {
        let t = default_thresholds();
        assert_eq!(t.len(), 12);
        assert_eq!(t[0], 0.05);
        assert_eq!(t[11], 0.6);
    }

    #[test]
    fn pinned_relative_reduction_value() {
        let r = relative_reduction(0.320, 0.266);
        assert!((r - 0.169).abs() < 5e-4);
        assert_eq!(relative_reduction(0.0, 0.0), 0.0);
    }

    #[test]
    fn sweep_covers_the_grid_in_order() {
        let records = vec![CorpusRecord {
            id: "r1".into(),
            reference: normalize("una pizza"),
            hypothesis: normalize("una pista"),
        }];
        let context = Context::new(texts(&["pizza"]));
        let report = sweep(&records, &context, &[0.2, 0.45]).unwrap();
        assert_eq!(report.rows.len(), 4 * 3 * 3 * 2);
        // Grid order: threshold varies fastest.
        assert_eq!(report.rows[0].threshold, 0.2);
        assert_eq!(report.rows[1].threshold, 0.45);
        assert_eq!(report.rows[0].representation, Representation::Plain);
        assert_eq!(report.rows.last().unwrap().representation, Representation::Dmv);
        for row in &report.rows {
            let again = relative_reduction(row.wer_before, row.wer_after);
            assert!((row.relative_reduction - again).abs() < 1e-12);
        }
        assert_eq!(report.mean_after_by_representation.len(), 4);
        assert_eq!(report.mean_after_by_generator.len(), 3);
    }

    #[test]
    fn sweep_on_identity_corpus_is_all_zero() {
        let records = vec![CorpusRecord {
            id: "r1".into(),
            reference: normalize("una pizza"),
            hypothesis: normalize("una pizza"),
        }];
        let context = Context::new(texts(&["pizza"]));
        let report = sweep(&records, &context, &[0.4]).unwrap();
        for row in &report.rows {
            assert_eq!(row.wer_before, 0.0);
            assert_eq!(row.wer_after, 0.0);
            assert_eq!(row.relative_reduction, 0.0);
        }
    }

    #[test]
    fn sweep_csv_has_header_and_rows() {
        let records = vec![CorpusRecord {
            id: "r1".into(),
            reference: normalize("una pizza"),
            hypothesis: normalize("una pista"),
        }];
        let context = Context::new(texts(&["pizza"]));
        let report = sweep(&records, &context, &[0.4]).unwrap();
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "representation,generator,metric,threshold,wer_before,wer_after,relative_reduction"
        );
        assert_eq!(lines.count(), 36);
    }

    #[test]
    fn synthesis_with_zero_rate_is_identity() {
        let vocab = texts(&["una pizza grande", "cafe con leche"]);
        let synth = synthesize_corpus(&vocab, 20, 0.0, 7).unwrap();
        assert_eq!(synth.records.len(), 20);
        assert!(synth.planted.is_empty());
        for r in &synth.records {
            assert_eq!(r.reference, r.hypothesis);
        }
        let pairs = corpus_pairs(&synth.records);
        assert_eq!(corpus_wer(&pairs).unwrap(), 0.0);
    }

    #[test]
    fn synthesis_with_full_rate_corrupts_every_word() {
        let vocab = texts(&["pizza", "casa", "hola"]);
        let synth = synthesize_corpus(&vocab, 30, 1.0, 11).unwrap();
        for r in &synth.records {
            assert_ne!(r.reference, r.hypothesis, "record {} unchanged", r.id);
        }
        assert_eq!(synth.planted.len(), 30);
    }

    #[test]
    fn synthesis_is_deterministic_per_seed() {
        let vocab = texts(&["una pizza grande", "la casa blanca", "vaso de agua"]);
        let a = synthesize_corpus(&vocab, 25, 0.3, 99).unwrap();
        let b = synthesize_corpus(&vocab, 25, 0.3, 99).unwrap();
        assert_eq!(a, b);
        let c = synthesize_corpus(&vocab, 25, 0.3, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn planted_manifest_matches_realized_edits() {
        let vocab = texts(&["quiero una pizza grande", "la casa blanca esta cerca"]);
        let synth = synthesize_corpus(&vocab, 40, 0.25, 5).unwrap();
        let pairs = corpus_pairs(&synth.records);
        let mut edits = 0;
        for (r, h) in &pairs {
            edits += crate::corrector::wer(r, h).unwrap().edits();
        }
        // Every corruption is a single word edit; alignment may only ever
        // find a cheaper route, never a costlier one.
        assert!(edits <= synth.planted.len());
        assert!(edits as f64 >= 0.9 * synth.planted.len() as f64);
    }

    #[test]
    fn synthesis_rejects_bad_inputs() {
        assert!(matches!(
            synthesize_corpus(&[], 5, 0.2, 1),
            Err(HarnessError::EmptyVocabulary)
        ));
        let vocab = texts(&["hola"]);
        assert!(matches!(
            synthesize_corpus(&vocab, 5, 1.5, 1),
            Err(HarnessError::InvalidErrorRate(_))
        ));
    }
}
