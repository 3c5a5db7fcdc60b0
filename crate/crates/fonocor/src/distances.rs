//! Edit distances and the normalized distance compared against the
//! correction threshold.
//!
//! Three metrics are supported: Levenshtein (insert/delete/substitute),
//! optimal string alignment (OSA — adds adjacent transposition, but each
//! character participates in at most one transposition; famously not a true
//! metric), and unrestricted Damerau-Levenshtein (transposed characters may
//! be edited again). For any pair, LEV ≥ OSA ≥ DL.
//!
//! Distances count Unicode code points, so multi-symbol IPA output (tʃ)
//! costs per symbol; all that matters is consistency within one
//! representation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Edit-distance metric selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    Levenshtein,
    Osa,
    DamerauLevenshtein,
}

impl Metric {
    /// All metrics, in the experiment grid's axis order.
    pub const ALL: [Metric; 3] = [Metric::Levenshtein, Metric::Osa, Metric::DamerauLevenshtein];

    /// Lowercase axis label used in reports and CLI arguments.
    pub fn label(self) -> &'static str {
        match self {
            Metric::Levenshtein => "levenshtein",
            Metric::Osa => "osa",
            Metric::DamerauLevenshtein => "damerau",
        }
    }
}

/// Errors from distance computations and threshold construction.
#[derive(Debug, Error, PartialEq)]
pub enum DistanceError {
    /// normalized_distance("", "") has no defined scale.
    #[error("normalized distance is undefined for two empty strings")]
    BothEmpty,
    /// Thresholds must lie strictly between 0 and 1.
    #[error("threshold must satisfy 0 < u < 1, got {0}")]
    InvalidThreshold(f64),
}

/// A distance threshold u with 0 < u < 1 (u appears in 1−u denominators of
/// the candidate length filter, so the open interval is required).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold(f64);

impl Threshold {
    /// Validate and wrap a threshold value.
    pub fn new(u: f64) -> Result<Self, DistanceError> {
        if u > 0.0 && u < 1.0 {
            Ok(Threshold(u))
        } else {
            Err(DistanceError::InvalidThreshold(u))
        }
    }

    /// The raw threshold value.
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Edit distance between two strings under the chosen metric.
pub fn edit_distance(a: &str, b: &str, metric: Metric) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    match metric {
        Metric::Levenshtein => levenshtein(&a, &b),
        Metric::Osa => osa(&a, &b),
        Metric::DamerauLevenshtein => damerau_levenshtein(&a, &b),
    }
}

/// Distance scaled into [0, 1]: `edit_distance(a,b) / max(|a|,|b|)`.
///
/// Zero iff the strings are equal; 1 when one side is empty. Undefined (an
/// error) when both are empty. This normalization makes the candidate
/// length filter sound: whenever lengths differ by more than a factor of
/// 1/(1−u), the normalized distance is necessarily ≥ u.
pub fn normalized_distance(a: &str, b: &str, metric: Metric) -> Result<f64, DistanceError> {
    let la = a.chars().count();
    let lb = b.chars().count();
    if la == 0 && lb == 0 {
        return Err(DistanceError::BothEmpty);
    }
    Ok(edit_distance(a, b, metric) as f64 / la.max(lb) as f64)
}

fn levenshtein(a: &[char], b: &[char]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0usize; b.len() + 1];
    for i in 1..=a.len() {
        cur[0] = i;
        for j in 1..=b.len() {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            cur[j] = (prev[j] + 1).min(cur[j - 1] + 1).min(prev[j - 1] + cost);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

fn osa(a: &[char], b: &[char]) -> usize {
    let w = b.len() + 1;
    // Three rolling rows: i-2, i-1, i.
    let mut row2: Vec<usize> = vec![0; w];
    let mut row1: Vec<usize> = (0..w).collect();
    let mut row0: Vec<usize> = vec![0; w];
    for i in 1..=a.len() {
        row0[0] = i;
        for j in 1..=b.len() {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            let mut d = (row1[j] + 1).min(row0[j - 1] + 1).min(row1[j - 1] + cost);
            if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                d = d.min(row2[j - 2] + 1);
            }
            row0[j] = d;
        }
        std::mem::swap(&mut row2, &mut row1);
        std::mem::swap(&mut row1, &mut row0);
    }
    row1[b.len()]
}

/// Unrestricted Damerau-Levenshtein (transposed characters may be edited
/// again), computed with the last-occurrence table of Lowrance and Wagner.
fn damerau_levenshtein(a: &[char], b: &[char]) -> usize {
    use std::collections::HashMap;

    let (la, lb) = (a.len(), b.len());
    let inf = la + lb;
    // d is (la+2) x (lb+2) with a sentinel border at index 0.
    let w = lb + 2;
    let mut d = vec![0usize; (la + 2) * w];
    let idx = |i: usize, j: usize| i * w + j;
    d[idx(0, 0)] = inf;
    for i in 0..=la {
        d[idx(i + 1, 1)] = i;
        d[idx(i + 1, 0)] = inf;
    }
    for j in 0..=lb {
        d[idx(1, j + 1)] = j;
        d[idx(0, j + 1)] = inf;
    }

    let mut last_row: HashMap<char, usize> = HashMap::new();
    for i in 1..=la {
        let mut last_col = 0usize;
        for j in 1..=lb {
            let row_of_match = *last_row.get(&b[j - 1]).unwrap_or(&0);
            let col_of_match = last_col;
            let cost = if a[i - 1] == b[j - 1] {
                last_col = j;
                0
            } else {
                1
            };
            let substitute = d[idx(i, j)] + cost;
            let insert = d[idx(i + 1, j)] + 1;
            let delete = d[idx(i, j + 1)] + 1;
            let transpose = d[idx(row_of_match, col_of_match)]
                + (i - row_of_match - 1)
                + 1
                + (j - col_of_match - 1);
            d[idx(i + 1, j + 1)] = substitute.min(insert).min(delete).min(transpose);
        }
        last_row.insert(a[i - 1], i);
    }
    d[idx(la + 1, lb + 1)]
}
