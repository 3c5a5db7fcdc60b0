//! Phonetic post-correction of Spanish ASR transcripts.
//!
//! The pipeline takes a speech recognizer's hypothesis text, searches it for
//! segments that are phonetically close to phrases from a domain context, and
//! substitutes the best matches. Closeness is measured by normalized edit
//! distance over one of four representations of the text (plain letters, a
//! rule-based IPA transcription, Double Metaphone, or Double Metaphone with
//! vowels re-inserted). A genetic algorithm can evolve the context itself,
//! selecting the unigrams and bigrams of a reference corpus that minimize the
//! corpus word error rate after correction.
//!
//! Module layout mirrors the processing stages:
//!
//! * [`normalizer`] — text canonicalization and Spanish syllable counting
//! * [`phonetics`] — the four comparison representations
//! * [`distances`] — Levenshtein / OSA / Damerau-Levenshtein and the
//!   normalized distance used for thresholding
//! * [`candidates`] — candidate (segment, phrase) pair generation
//! * [`corrector`] — substitution application and WER scoring
//! * [`evolver`] — the genetic context optimizer
//! * [`harness`] — file formats, experiment sweep, synthetic corpora, CLI

pub mod candidates;
pub mod corrector;
pub mod distances;
pub mod evolver;
pub mod harness;
pub mod normalizer;
pub mod phonetics;

pub use candidates::{CandidatePair, Context, GeneratorKind};
pub use corrector::{CorrectionConfig, CorrectionResult, WerBreakdown};
pub use distances::{Metric, Threshold};
pub use evolver::{Chromosome, GaParams, GeneVocabulary, GenerationStats};
pub use harness::CorpusRecord;
pub use normalizer::NormText;
pub use phonetics::Representation;
