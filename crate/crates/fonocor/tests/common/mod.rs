//! Reference oracles shared by the acceptance and property suites.
//!
//! Each oracle recomputes a result by a method unrelated to the library's
//! implementation: edit distances come from breadth-first search over the
//! graph of single-edit moves, OSA from exhaustive alignment enumeration,
//! WER from a plain full-matrix DP plus alignment enumeration, and the
//! candidate set from a direct segment × phrase double loop. Slow is fine;
//! independent is the point.
#![allow(dead_code)]

use std::collections::HashMap;
use std::collections::VecDeque;

use fonocor::candidates::{Context, SegmentUnit};
use fonocor::distances::{normalized_distance, Metric};
use fonocor::normalizer::{syllable_count, NormText};
use fonocor::phonetics::{encode_tokens, Representation};

/// All strings over `alphabet` with length ≤ `max_len`, shortest first.
pub fn enumerate_strings(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * alphabet.len());
        for s in &frontier {
            for &c in alphabet {
                let mut t = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The graph whose vertices are all strings of length ≤ `max_len` over an
/// alphabet and whose edges are single edit operations. Shortest paths in
/// this graph ARE the Levenshtein distance (substitution/insertion/
/// deletion edges) or the unrestricted Damerau-Levenshtein distance (same
/// plus adjacent-transposition edges) — the definitional, search-based
/// formulation the DP implementations must agree with.
pub struct EditGraph {
    pub nodes: Vec<String>,
    pub index: HashMap<String, u32>,
    adjacency: Vec<Vec<u32>>,
}

impl EditGraph {
    pub fn build(alphabet: &[char], max_len: usize, with_transpositions: bool) -> Self {
        let nodes = enumerate_strings(alphabet, max_len);
        let index: HashMap<String, u32> = nodes
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        let adjacency = nodes
            .iter()
            .map(|s| {
                let mut out = Vec::new();
                let chars: Vec<char> = s.chars().collect();
                // Deletions.
                for i in 0..chars.len() {
                    let mut t: Vec<char> = chars.clone();
                    t.remove(i);
                    out.push(index[&t.iter().collect::<String>()]);
                }
                // Substitutions.
                for i in 0..chars.len() {
                    for &c in alphabet {
                        if c != chars[i] {
                            let mut t = chars.clone();
                            t[i] = c;
                            out.push(index[&t.iter().collect::<String>()]);
                        }
                    }
                }
                // Insertions (staying inside the length cap).
                if chars.len() < max_len {
                    for i in 0..=chars.len() {
                        for &c in alphabet {
                            let mut t = chars.clone();
                            t.insert(i, c);
                            out.push(index[&t.iter().collect::<String>()]);
                        }
                    }
                }
                // Adjacent transpositions.
                if with_transpositions {
                    for i in 0..chars.len().saturating_sub(1) {
                        if chars[i] != chars[i + 1] {
                            let mut t = chars.clone();
                            t.swap(i, i + 1);
                            out.push(index[&t.iter().collect::<String>()]);
                        }
                    }
                }
                out
            })
            .collect();
        EditGraph {
            nodes,
            index,
            adjacency,
        }
    }

    /// BFS distances from `source` to every node (all edges cost 1).
    pub fn distances_from(&self, source: &str) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.nodes.len()];
        let start = self.index[source] as usize;
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v] + 1;
            for &w in &self.adjacency[v] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = d;
                    queue.push_back(w as usize);
                }
            }
        }
        dist
    }
}

/// Optimal string alignment distance by exhaustive enumeration of
/// restricted edit scripts (every character participates in at most one
/// operation; transposed pairs are consumed as a block). Branch-and-bound
/// pruning keeps it tractable without ever memoizing — no shared machinery
/// with the rolling-row DP.
pub fn osa_exhaustive(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    // Upper bound: the straight diagonal alignment.
    let overlap = a.len().min(b.len());
    let mut best = (0..overlap).filter(|&i| a[i] != b[i]).count() + a.len().abs_diff(b.len());
    explore(&a, &b, 0, 0, 0, &mut best);
    best
}

fn explore(a: &[char], b: &[char], i: usize, j: usize, cost: usize, best: &mut usize) {
    if i == a.len() && j == b.len() {
        *best = (*best).min(cost);
        return;
    }
    // Any completion still has to bridge the remaining length difference.
    let bound = (a.len() - i).abs_diff(b.len() - j);
    if cost + bound >= *best {
        return;
    }
    if i < a.len() && j < b.len() {
        explore(a, b, i + 1, j + 1, cost + usize::from(a[i] != b[j]), best);
    }
    if i + 1 < a.len() && j + 1 < b.len() && a[i] == b[j + 1] && a[i + 1] == b[j] {
        explore(a, b, i + 2, j + 2, cost + 1, best);
    }
    if i < a.len() {
        explore(a, b, i + 1, j, cost + 1, best);
    }
    if j < b.len() {
        explore(a, b, i, j + 1, cost + 1, best);
    }
}

/// Word-level edit distance by a plain full-matrix DP (no traceback, no
/// shared code with the library's implementation).
pub fn wer_cost_oracle(reference: &[String], hypothesis: &[String]) -> usize {
    let n = reference.len();
    let m = hypothesis.len();
    let mut d = vec![vec![0usize; m + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=m {
            d[i][j] = if i == 0 {
                j
            } else if j == 0 {
                i
            } else {
                let sub = d[i - 1][j - 1] + usize::from(reference[i - 1] != hypothesis[j - 1]);
                sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1)
            };
        }
    }
    d[n][m]
}

/// Every (substitutions, deletions, insertions) breakdown achievable by a
/// minimum-cost word alignment, by exhaustive alignment enumeration.
/// Intended for short sentences only.
pub fn wer_breakdown_set(
    reference: &[String],
    hypothesis: &[String],
) -> std::collections::HashSet<(usize, usize, usize)> {
    let min_cost = wer_cost_oracle(reference, hypothesis);
    let mut out = std::collections::HashSet::new();
    enumerate_alignments(
        reference,
        hypothesis,
        0,
        0,
        (0, 0, 0),
        min_cost,
        &mut out,
    );
    out
}

fn enumerate_alignments(
    r: &[String],
    h: &[String],
    i: usize,
    j: usize,
    counts: (usize, usize, usize),
    budget: usize,
    out: &mut std::collections::HashSet<(usize, usize, usize)>,
) {
    let (s, d, ins) = counts;
    if s + d + ins > budget {
        return;
    }
    if i == r.len() && j == h.len() {
        if s + d + ins == budget {
            out.insert(counts);
        }
        return;
    }
    if i < r.len() && j < h.len() {
        let sub = usize::from(r[i] != h[j]);
        enumerate_alignments(r, h, i + 1, j + 1, (s + sub, d, ins), budget, out);
    }
    if i < r.len() {
        enumerate_alignments(r, h, i + 1, j, (s, d + 1, ins), budget, out);
    }
    if j < h.len() {
        enumerate_alignments(r, h, i, j + 1, (s, d, ins + 1), budget, out);
    }
}

/// Segment length in the unit the incremental search measures, recomputed
/// from public primitives: letters count characters of the joined text
/// (spaces included); syllables sum per-token counts with vowelless tokens
/// counting one.
pub fn oracle_unit_len(text: &NormText, unit: SegmentUnit) -> usize {
    match unit {
        SegmentUnit::Letters => text.joined().chars().count(),
        SegmentUnit::Syllables => text
            .tokens()
            .iter()
            .map(|t| syllable_count(t).unwrap_or(1))
            .sum(),
    }
}

/// Brute-force candidate enumeration: every segment × every phrase, the
/// length filter applied in the identical floating-point form the library
/// uses, no growth stop, no caching. Returns (span, context index,
/// distance) sorted the way the library sorts.
pub fn candidates_bruteforce(
    context: &Context,
    transcript: &NormText,
    u: f64,
    metric: Metric,
    rep: Representation,
    unit: SegmentUnit,
) -> Vec<((usize, usize), usize, f64)> {
    let mut out = Vec::new();
    let m = transcript.len();
    for start in 0..m {
        for end in start..m {
            let segment = transcript.slice((start, end));
            let seg_len = oracle_unit_len(&segment, unit);
            let seg_encoded = encode_tokens(segment.tokens(), rep);
            for (ci, phrase) in context.phrases().iter().enumerate() {
                let c_len = oracle_unit_len(phrase, unit);
                if (seg_len as f64) * (1.0 - u) > c_len as f64
                    || (c_len as f64) * (1.0 - u) > seg_len as f64
                {
                    continue;
                }
                let c_encoded = encode_tokens(phrase.tokens(), rep);
                if seg_encoded.is_empty() && c_encoded.is_empty() {
                    continue;
                }
                let d = normalized_distance(&seg_encoded, &c_encoded, metric).unwrap();
                if d < u {
                    out.push(((start, end), ci, d));
                }
            }
        }
    }
    out.sort_by_key(|x| (x.0, x.1));
    out
}

/// A tiny deterministic generator (xorshift64*) for oracle-side test data,
/// so test inputs do not depend on the library's RNG choices.
pub struct TinyRng(u64);

impl TinyRng {
    pub fn new(seed: u64) -> Self {
        TinyRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform value in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// Uniform float in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Random string over `alphabet` with length in [0, max_len].
    pub fn string(&mut self, alphabet: &[char], max_len: usize) -> String {
        let len = self.below(max_len + 1);
        (0..len).map(|_| alphabet[self.below(alphabet.len())]).collect()
    }
}
