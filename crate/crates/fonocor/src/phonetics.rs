//! The four comparison representations: plain text, rule-based IPA,
//! Double Metaphone (DM), and Double Metaphone with vowels (DMV).
//!
//! All four operate on normalized text. The IPA transcription is a fixed
//! Latin-American Spanish rule table — seseo (z, ce, ci as /s/) and yeísmo
//! (ll as /ʝ/) — not a learned grapheme-to-phoneme model; Spanish orthography
//! is regular enough that a rule table covers it. Stress accents are dropped
//! from the output so that accent-only differences cost nothing.

mod dm;

use serde::{Deserialize, Serialize};

use crate::normalizer::NormText;

/// Which representation a correction run compares in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Representation {
    /// Normalized text with accents folded to bare vowels.
    Plain,
    /// Rule-based Latin-American Spanish IPA.
    Ipa,
    /// Double Metaphone primary code.
    Dm,
    /// Double Metaphone with skipped vowels re-inserted in lowercase.
    Dmv,
}

impl Representation {
    /// All representations, in the experiment grid's axis order.
    pub const ALL: [Representation; 4] = [
        Representation::Plain,
        Representation::Ipa,
        Representation::Dm,
        Representation::Dmv,
    ];

    /// Lowercase axis label used in reports and CLI arguments.
    pub fn label(self) -> &'static str {
        match self {
            Representation::Plain => "plain",
            Representation::Ipa => "ipa",
            Representation::Dm => "dm",
            Representation::Dmv => "dmv",
        }
    }
}

/// A text together with its encoding under one representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhoneticForm {
    /// The normalized source text.
    pub source: NormText,
    /// Per-token encodings joined by single spaces.
    pub encoded: String,
}

/// Fold an accented vowel (or ñ) to its bare ASCII letter.
fn fold_char(c: char) -> char {
    match c {
        'á' => 'a',
        'é' => 'e',
        'í' => 'i',
        'ó' => 'o',
        'ú' => 'u',
        'ü' => 'u',
        'ñ' => 'n',
        other => other,
    }
}

/// Accent-fold a word to bare vowels, keeping ñ.
fn fold_vowels(word: &str) -> String {
    word.chars()
        .map(|c| if c == 'ñ' { c } else { fold_char(c) })
        .collect()
}

/// Fold everything to ASCII (accents, ü, and ñ) for the DM algorithms.
fn fold_ascii(word: &str) -> String {
    word.chars().map(fold_char).collect()
}

/// Encode normalized text under a representation.
///
/// Tokens are encoded independently and joined with single spaces, so the
/// encoded form has exactly as many space-separated groups as the source has
/// tokens. The function is total over normalized input and deterministic.
pub fn encode(text: &NormText, rep: Representation) -> PhoneticForm {
    PhoneticForm {
        source: text.clone(),
        encoded: encode_tokens(text.tokens(), rep),
    }
}

/// Encode a token slice and join with single spaces (the hot path used by
/// candidate generation; avoids cloning the source text).
pub fn encode_tokens(tokens: &[String], rep: Representation) -> String {
    let parts: Vec<String> = tokens
        .iter()
        .map(|t| match rep {
            Representation::Plain => fold_vowels(t),
            Representation::Ipa => to_ipa(t),
            Representation::Dm => to_dm(t),
            Representation::Dmv => to_dmv(t),
        })
        .collect();
    parts.join(" ")
}

/// Vowel characters as they appear in normalized text.
fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'á' | 'é' | 'í' | 'ó' | 'ú' | 'ü')
}

/// Transcribe one normalized token to broad Latin-American Spanish IPA.
///
/// Rules: c → /k/ (before a,o,u) or /s/ (before e,i); z → /s/; qu → /k/;
/// gu → /g/ before e,i; g → /x/ before e,i, else /g/; j → /x/; ll, y → /ʝ/;
/// ñ → /ɲ/; ch → /tʃ/; rr and word-initial r → /r/, intervocalic single
/// r → /ɾ/; h is silent; v → /b/; x → /ks/; accented vowels lose their
/// stress mark; an unaccented i or u (or ü) directly before another vowel
/// becomes the glide /j/ or /w/; identical adjacent output symbols collapse
/// ("pizza" → "pisa"). Everything else maps to itself.
pub fn to_ipa(word: &str) -> String {
    let cs: Vec<char> = word.chars().collect();
    let mut out = String::with_capacity(cs.len());
    let mut i = 0;
    while i < cs.len() {
        let next = cs.get(i + 1).copied();
        let front_e_i = matches!(next, Some('e' | 'i' | 'é' | 'í'));
        match cs[i] {
            'c' if next == Some('h') => {
                out.push_str("tʃ");
                i += 2;
                continue;
            }
            'c' if front_e_i => out.push('s'),
            'c' => out.push('k'),
            'l' if next == Some('l') => {
                out.push('ʝ');
                i += 2;
                continue;
            }
            'q' if next == Some('u') => {
                // Mute u: "quiero" → /kjeɾo/.
                out.push('k');
                i += 2;
                continue;
            }
            'g' if next == Some('u') && matches!(cs.get(i + 2), Some('e' | 'i' | 'é' | 'í')) => {
                // Mute u: "guerra" → /gera/. A diaeresis u ("vergüenza")
                // stays audible and is handled by the glide rule instead.
                out.push('g');
                i += 2;
                continue;
            }
            'g' if front_e_i => out.push('x'),
            'z' => out.push('s'),
            'v' => out.push('b'),
            'h' => {}
            'j' => out.push('x'),
            'x' => out.push_str("ks"),
            'y' => out.push('ʝ'),
            'ñ' => out.push('ɲ'),
            'r' => {
                if next == Some('r') {
                    out.push('r');
                    i += 2;
                    continue;
                }
                let prev_vowel = i > 0 && is_vowel(cs[i - 1]);
                let next_vowel = next.map(is_vowel).unwrap_or(false);
                if i > 0 && prev_vowel && next_vowel {
                    out.push('ɾ');
                } else {
                    out.push('r');
                }
            }
            'i' if next.map(|n| is_vowel(n) && !matches!(n, 'i' | 'í')).unwrap_or(false) => {
                out.push('j');
            }
            'u' | 'ü'
                if next
                    .map(|n| is_vowel(n) && !matches!(n, 'u' | 'ú' | 'ü'))
                    .unwrap_or(false) =>
            {
                out.push('w');
            }
            'á' => out.push('a'),
            'é' => out.push('e'),
            'í' => out.push('i'),
            'ó' => out.push('o'),
            'ú' | 'ü' => out.push('u'),
            other => out.push(other),
        }
        i += 1;
    }

    // Collapse identical adjacent symbols ("pizza" → p,i,s,s,a → "pisa").
    let mut collapsed = String::with_capacity(out.len());
    for c in out.chars() {
        if !collapsed.ends_with(c) {
            collapsed.push(c);
        }
    }
    collapsed
}

/// Standard Double Metaphone primary code of one normalized token.
pub fn to_dm(word: &str) -> String {
    dm::encode(&fold_ascii(word)).0
}

/// Double Metaphone with vowels: the primary code with every source vowel
/// the standard algorithm skips re-inserted as a lowercase character.
/// Deleting the lowercase vowels from `to_dmv(w)` always yields `to_dm(w)`.
pub fn to_dmv(word: &str) -> String {
    dm::encode(&fold_ascii(word)).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalizer::normalize;

    #[test]
    fn plain_folds_accents() {
        assert_eq!(encode(&normalize("pizza"), Representation::Plain).encoded, "pizza");
        assert_eq!(encode(&normalize("café"), Representation::Plain).encoded, "cafe");
        assert_eq!(encode(&normalize("ñoño"), Representation::Plain).encoded, "ñoño");
    }

    #[test]
    fn ipa_pinned_phrase() {
        assert_eq!(
            encode(&normalize("quiero una pizza"), Representation::Ipa).encoded,
            "kjeɾo una pisa"
        );
    }

    #[test]
    fn ipa_rule_examples() {
        assert_eq!(to_ipa("caza"), "kasa");
        assert_eq!(to_ipa("guerra"), "gera");
        assert_eq!(to_ipa("hola"), "ola");
    }

    #[test]
    fn ipa_homophones_collapse() {
        assert_eq!(to_ipa("caza"), to_ipa("casa"));
        assert_eq!(to_ipa("vaca"), to_ipa("baca"));
        assert_eq!(to_ipa("halla"), to_ipa("haya"));
    }

    #[test]
    fn ipa_digraphs_and_glides() {
        assert_eq!(to_ipa("chile"), "tʃile");
        assert_eq!(to_ipa("pero"), "peɾo");
        assert_eq!(to_ipa("perro"), "pero");
        assert_eq!(to_ipa("rosa"), "rosa");
        assert_eq!(to_ipa("vergüenza"), "bergwensa");
        assert_eq!(to_ipa("ciudad"), "sjudad");
        assert_eq!(to_ipa("caía"), "kaia");
        assert_eq!(to_ipa("gente"), "xente");
        assert_eq!(to_ipa("examen"), "eksamen");
    }

    #[test]
    fn dm_pinned_examples() {
        assert_eq!(to_dm("ana"), "AN");
        assert_eq!(to_dm("pizza"), "PS");
        assert_eq!(to_dm(""), "");
    }

    #[test]
    fn dmv_pinned_examples() {
        assert_eq!(to_dmv("ana"), "ANa");
        assert_eq!(to_dmv("pi"), "Pi");
        assert_eq!(to_dmv(""), "");
    }

    #[test]
    fn dmv_folds_accents_before_coding() {
        assert_eq!(to_dmv("café"), to_dmv("cafe"));
        assert_eq!(to_dm("señor"), "SNR");
    }

    #[test]
    fn encoded_group_count_matches_token_count() {
        let text = normalize("quiero una pizza grande");
        for rep in Representation::ALL {
            let encoded = encode(&text, rep).encoded;
            assert_eq!(encoded.split(' ').count(), text.len(), "{rep:?}");
        }
    }

    #[test]
    fn ipa_length_bound() {
        for w in ["extraño", "chicharrón", "quiero", "ayuntamiento", "exquisito"] {
            assert!(to_ipa(w).chars().count() <= 2 * w.chars().count());
        }
    }
}
