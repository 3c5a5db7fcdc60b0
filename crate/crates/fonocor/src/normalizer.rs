//! Text normalization and Spanish syllable counting.
//!
//! Every other module consumes [`NormText`], the canonical token stream:
//! lowercased, punctuation stripped, whitespace collapsed. Accented vowels
//! and `ñ` survive normalization because the phonetic transcriber needs
//! them; representations that want bare ASCII fold accents themselves.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Punctuation deleted in place during normalization. Normalization also
/// drops any other character outside the token alphabet, so this set is
/// descriptive of common Spanish orthography rather than exhaustive.
pub const PUNCTUATION: &[char] = &[
    '.', ',', ';', ':', '¿', '?', '¡', '!', '"', '\'', '(', ')', '-', '…',
];

/// Errors from syllable analysis.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    /// The word contains no vowel, so it has no syllable nucleus.
    #[error("cannot syllabify {0:?}: no vowel")]
    NoVowel(String),
}

/// A normalized utterance: lowercase tokens free of punctuation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormText {
    tokens: Vec<String>,
}

impl NormText {
    /// Assemble a text from tokens that are already normalized (they came
    /// out of other `NormText` values, so the invariant is preserved).
    pub(crate) fn from_tokens(tokens: Vec<String>) -> NormText {
        NormText { tokens }
    }

    /// The token sequence.
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Number of tokens.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    /// True when the text has no tokens.
    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// The tokens joined by single spaces.
    pub fn joined(&self) -> String {
        self.tokens.join(" ")
    }

    /// A sub-range of tokens as a new `NormText`. `span` is an inclusive
    /// token index pair.
    pub fn slice(&self, span: (usize, usize)) -> NormText {
        NormText {
            tokens: self.tokens[span.0..=span.1].to_vec(),
        }
    }
}

impl fmt::Display for NormText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.joined())
    }
}

/// Is `c` allowed inside a normalized token?
fn is_kept(c: char) -> bool {
    c.is_ascii_lowercase() || c.is_ascii_digit() || matches!(c, 'á' | 'é' | 'í' | 'ó' | 'ú' | 'ü' | 'ñ')
}

/// Canonicalize raw text: lowercase, strip punctuation, collapse whitespace.
///
/// Punctuation (and any character outside the Spanish orthographic set) is
/// deleted in place without introducing a word boundary; whitespace runs
/// become single token breaks. Digit runs are kept verbatim. The function is
/// total and idempotent: normalizing a normalized text's joined form is the
/// identity.
pub fn normalize(raw: &str) -> NormText {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in raw.chars().flat_map(|c| c.to_lowercase()) {
        if c.is_whitespace() {
            if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
        } else if is_kept(c) {
            current.push(c);
        }
        // Punctuation and any symbol outside the Spanish orthographic set
        // vanish without splitting the surrounding word.
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    NormText { tokens }
}

/// Vowel classes for syllabification. Strong vowels (and any accented vowel)
/// form their own nucleus; weak vowels attach to an adjacent nucleus.
fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'á' | 'é' | 'í' | 'ó' | 'ú' | 'ü')
}

fn is_strong(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'o' | 'á' | 'é' | 'ó' | 'í' | 'ú')
}

/// Count syllable nuclei of a single normalized token.
///
/// Rules: maximal vowel runs are scanned left to right; every strong vowel
/// (a, e, o) and every accented vowel opens a nucleus (accented weak vowels
/// break diphthongs — "caía" is ca-í-a); unaccented weak vowels (i, u, ü)
/// fuse with a neighboring nucleus; a run of only weak vowels is one nucleus.
/// The mute `u` of "qu" and "gu(e|i)" is not a nucleus. A digit-only token
/// counts one nucleus per digit.
pub fn syllable_count(word: &str) -> Result<usize, NormalizeError> {
    let chars: Vec<char> = word.chars().collect();
    if !chars.is_empty() && chars.iter().all(|c| c.is_ascii_digit()) {
        return Ok(chars.len());
    }

    let mut count = 0;
    let mut i = 0;
    while i < chars.len() {
        if !is_vowel(chars[i]) {
            i += 1;
            continue;
        }
        // Mute u after q, or after g when e/i follows ("quiero", "guerra").
        if chars[i] == 'u' && i > 0 && matches!(chars[i - 1], 'q' | 'g') {
            if chars[i - 1] == 'q' {
                i += 1;
                continue;
            }
            if matches!(chars.get(i + 1), Some('e' | 'i' | 'é' | 'í')) {
                i += 1;
                continue;
            }
        }
        // Scan the maximal vowel run and count its nuclei.
        let start = i;
        while i < chars.len() && is_vowel(chars[i]) {
            i += 1;
        }
        let strong = chars[start..i].iter().filter(|&&c| is_strong(c)).count();
        count += strong.max(1);
    }

    if count == 0 {
        return Err(NormalizeError::NoVowel(word.to_string()));
    }
    Ok(count)
}
