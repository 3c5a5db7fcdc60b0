//! Genetic optimization of the correction context.
//!
//! A chromosome is a bit vector over a vocabulary of corpus unigrams and
//! bigrams; set genes select the phrases that form a candidate context.
//! Fitness is the corpus WER after correcting every hypothesis with that
//! context, so evolution minimizes. Selection is tournament (with
//! replacement), recombination is single-point crossover applied pairwise,
//! and the per-gene mutation rate decays by 20% every ten generations.
//!
//! All randomness flows from one seeded generator with a fixed draw order:
//! per generation, N tournaments of T_s index draws, then per parent pair
//! one crossover coin (plus a cut point when it fires), then one coin per
//! gene of each child. Fitness evaluation consumes no randomness and runs
//! in parallel across the population.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::candidates::Context;
use crate::corrector::{corpus_wer, correct, CorrectionConfig, CorrectorError};
use crate::normalizer::NormText;

/// Mutation-rate decay factor applied every [`DECAY_EVERY`] generations.
pub const DECAY_FACTOR: f64 = 0.8;
/// Generations between mutation-rate decay steps.
pub const DECAY_EVERY: usize = 10;

/// Errors from vocabulary construction and the GA operators.
#[derive(Debug, Error, PartialEq)]
pub enum EvolveError {
    #[error("corpus has no reference sentences; cannot build a vocabulary")]
    EmptyCorpus,
    #[error("chromosome has {got} genes but the vocabulary has {expected} items")]
    LengthMismatch { expected: usize, got: usize },
    #[error("crossover point {c_i} out of range for chromosomes of length {len}")]
    CrossoverPoint { c_i: usize, len: usize },
    #[error("parents have different lengths ({0} vs {1})")]
    ParentLengthMismatch(usize, usize),
    #[error("invalid GA parameters: {0}")]
    InvalidParams(String),
    #[error("initial population has {got} individuals but N = {expected}")]
    PopulationSize { expected: usize, got: usize },
    #[error("previous population ({len}) is smaller than the elite half ({need})")]
    ElitePoolTooSmall { len: usize, need: usize },
    #[error("chromosome fitness not computed; evaluate the population first")]
    UnevaluatedFitness,
    #[error(transparent)]
    Corrector(#[from] CorrectorError),
}

/// The gene-indexed phrase list: all corpus unigrams in first-occurrence
/// order, then all bigrams likewise. Gene i selects `items()[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneVocabulary {
    items: Vec<NormText>,
}

impl GeneVocabulary {
    /// Build a vocabulary from an explicit phrase list (deduplicated,
    /// order preserved) — useful for hand-crafted gene pools.
    pub fn from_phrases(phrases: Vec<NormText>) -> Self {
        let mut seen = std::collections::HashSet::new();
        let mut items = Vec::new();
        for p in phrases {
            if !p.is_empty() && seen.insert(p.joined()) {
                items.push(p);
            }
        }
        GeneVocabulary { items }
    }

    /// The phrases in gene order.
    pub fn items(&self) -> &[NormText] {
        &self.items
    }

    /// Chromosome length this vocabulary dictates.
    pub fn len(&self) -> usize {
        self.items.len()
    }

    /// True when there are no items.
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Extract the gene vocabulary from corpus reference texts: unique
/// unigrams in first-occurrence order, then unique adjacent bigrams in
/// first-occurrence order.
pub fn build_vocabulary(references: &[NormText]) -> Result<GeneVocabulary, EvolveError> {
    if references.is_empty() {
        return Err(EvolveError::EmptyCorpus);
    }
    let mut seen = std::collections::HashSet::new();
    let mut items = Vec::new();
    for r in references {
        for t in r.tokens() {
            if seen.insert(t.clone()) {
                items.push(NormText::from_tokens(vec![t.clone()]));
            }
        }
    }
    for r in references {
        for w in r.tokens().windows(2) {
            let key = format!("{} {}", w[0], w[1]);
            if seen.insert(key) {
                items.push(NormText::from_tokens(w.to_vec()));
            }
        }
    }
    Ok(GeneVocabulary { items })
}

/// A candidate context encoded as one bit per vocabulary item, with the
/// last computed fitness (corpus WER) cached alongside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chromosome {
    genes: Vec<bool>,
    fitness: Option<f64>,
}

impl Chromosome {
    /// Wrap an explicit gene vector (fitness unset).
    pub fn new(genes: Vec<bool>) -> Self {
        Chromosome {
            genes,
            fitness: None,
        }
    }

    /// Draw each gene as 1 with probability 0.5.
    pub fn random(len: usize, rng: &mut impl Rng) -> Self {
        Chromosome::new((0..len).map(|_| rng.gen_bool(0.5)).collect())
    }

    /// The gene vector.
    pub fn genes(&self) -> &[bool] {
        &self.genes
    }

    /// Number of genes.
    pub fn len(&self) -> usize {
        self.genes.len()
    }

    /// True for the zero-length chromosome.
    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    /// Number of set genes (the decoded context size).
    pub fn count_ones(&self) -> usize {
        self.genes.iter().filter(|&&g| g).count()
    }

    /// Cached fitness, if this chromosome has been evaluated.
    pub fn fitness(&self) -> Option<f64> {
        self.fitness
    }
}

/// GA run parameters. Defaults follow the calibrated schedule: population
/// 50, 100 generations, crossover probability 0.95, mutation probability
/// 0.05 (decaying 20% every 10 generations), tournament size 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaParams {
    pub population_size: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    pub rng_seed: u64,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population_size: 50,
            generations: 100,
            tournament_size: 2,
            crossover_prob: 0.95,
            mutation_prob: 0.05,
            rng_seed: 0,
        }
    }
}

impl GaParams {
    /// Check parameter ranges; called by [`evolve`] before any evaluation.
    pub fn validate(&self) -> Result<(), EvolveError> {
        let err = |m: &str| Err(EvolveError::InvalidParams(m.to_string()));
        if self.population_size == 0 {
            return err("population_size must be positive");
        }
        if !self.population_size.is_multiple_of(2) {
            return err("population_size must be even (pairwise crossover)");
        }
        if self.tournament_size < 2 {
            return err("tournament_size must be at least 2");
        }
        if !(0.0..=1.0).contains(&self.crossover_prob) {
            return err("crossover_prob must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.mutation_prob) {
            return err("mutation_prob must lie in [0, 1]");
        }
        Ok(())
    }
}

/// Per-generation summary recorded by [`evolve`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub mean_fitness: f64,
    pub best_fitness: f64,
    pub best_chromosome: Chromosome,
}

/// Materialize the context a chromosome encodes: the vocabulary items
/// whose gene is set, in vocabulary order.
pub fn decode(chromosome: &Chromosome, vocab: &GeneVocabulary) -> Result<Context, EvolveError> {
    if chromosome.len() != vocab.len() {
        return Err(EvolveError::LengthMismatch {
            expected: vocab.len(),
            got: chromosome.len(),
        });
    }
    let phrases = chromosome
        .genes
        .iter()
        .zip(vocab.items())
        .filter(|(&g, _)| g)
        .map(|(_, item)| item.clone())
        .collect();
    Ok(Context::new(phrases))
}

/// Fitness of one chromosome: the corpus WER after correcting every
/// hypothesis with the decoded context. The all-zero chromosome scores the
/// uncorrected baseline. The result is cached; a second call returns the
/// cache without re-correcting.
pub fn evaluate(
    chromosome: &mut Chromosome,
    vocab: &GeneVocabulary,
    corpus: &[(NormText, NormText)],
    eval_config: &CorrectionConfig,
) -> Result<f64, EvolveError> {
    if let Some(f) = chromosome.fitness {
        return Ok(f);
    }
    let context = decode(chromosome, vocab)?;
    let scored: Vec<(NormText, NormText)> = if context.is_empty() {
        corpus.to_vec()
    } else {
        corpus
            .iter()
            .map(|(r, h)| (r.clone(), correct(h, &context, eval_config).corrected))
            .collect()
    };
    let fitness = corpus_wer(&scored)?;
    chromosome.fitness = Some(fitness);
    Ok(fitness)
}

/// Evaluate every chromosome in the population, in parallel. Consumes no
/// randomness, so it cannot perturb the run's draw order.
pub fn evaluate_population(
    population: &mut [Chromosome],
    vocab: &GeneVocabulary,
    corpus: &[(NormText, NormText)],
    eval_config: &CorrectionConfig,
) -> Result<(), EvolveError> {
    population
        .par_iter_mut()
        .try_for_each(|c| evaluate(c, vocab, corpus, eval_config).map(|_| ()))
}

/// Tournament selection: draw `t_s` individuals uniformly with
/// replacement and return the one with minimum fitness; ties go to the
/// earliest draw.
///
/// Requires a non-empty population with all fitnesses computed (panics on
/// an unevaluated draw, which indicates a caller bug).
pub fn tournament_select<'a>(
    population: &'a [Chromosome],
    t_s: usize,
    rng: &mut impl Rng,
) -> &'a Chromosome {
    assert!(!population.is_empty(), "tournament over empty population");
    let mut winner: Option<&Chromosome> = None;
    for _ in 0..t_s {
        let pick = &population[rng.gen_range(0..population.len())];
        let f = pick
            .fitness()
            .expect("tournament requires an evaluated population");
        let beat = winner
            .and_then(|w| w.fitness())
            .is_none_or(|best| f < best);
        if beat {
            winner = Some(pick);
        }
    }
    winner.expect("t_s tournaments draw at least once")
}

/// Single-point crossover: offspring take the first `c_i` genes from one
/// parent and the remainder from the other. `c_i` must satisfy
/// `1 ≤ c_i < len`, so both parents always contribute. Offspring carry no
/// cached fitness.
pub fn crossover(
    parent1: &Chromosome,
    parent2: &Chromosome,
    c_i: usize,
) -> Result<(Chromosome, Chromosome), EvolveError> {
    if parent1.len() != parent2.len() {
        return Err(EvolveError::ParentLengthMismatch(parent1.len(), parent2.len()));
    }
    let len = parent1.len();
    if c_i == 0 || c_i >= len {
        return Err(EvolveError::CrossoverPoint { c_i, len });
    }
    let mut h1 = parent1.genes[..c_i].to_vec();
    h1.extend_from_slice(&parent2.genes[c_i..]);
    let mut h2 = parent2.genes[..c_i].to_vec();
    h2.extend_from_slice(&parent1.genes[c_i..]);
    Ok((Chromosome::new(h1), Chromosome::new(h2)))
}

/// Flip each gene independently with probability `m_p_current`. One coin
/// is drawn per gene regardless of the rate, keeping the run's draw order
/// independent of the decay schedule. The fitness cache survives only when
/// nothing flipped.
pub fn mutate(chromosome: &Chromosome, m_p_current: f64, rng: &mut impl Rng) -> Chromosome {
    let mut genes = chromosome.genes.clone();
    let mut flipped = false;
    for g in genes.iter_mut() {
        if rng.gen::<f64>() < m_p_current {
            *g = !*g;
            flipped = true;
        }
    }
    Chromosome {
        genes,
        fitness: if flipped { None } else { chromosome.fitness },
    }
}

/// The decayed mutation rate at generation `g`: M_p · 0.8^⌊g/10⌋.
pub fn decay_mutation(m_p: f64, g: usize) -> f64 {
    m_p * DECAY_FACTOR.powi((g / DECAY_EVERY) as i32)
}

/// Run the GA for `params.generations` generations and return the final
/// population plus per-generation stats.
///
/// Each generation evaluates the population (in parallel), records stats,
/// tournament-selects N parents, pairs them consecutively, applies
/// crossover with probability C_p per pair, and mutates every offspring
/// gene-by-gene at the decayed rate. The final population is returned
/// unevaluated. With `generations == 0` the initial population comes back
/// untouched and the stats are empty.
pub fn evolve(
    params: &GaParams,
    vocab: &GeneVocabulary,
    corpus: &[(NormText, NormText)],
    eval_config: &CorrectionConfig,
    initial_population: Option<Vec<Chromosome>>,
) -> Result<(Vec<Chromosome>, Vec<GenerationStats>), EvolveError> {
    params.validate()?;
    let n = params.population_size;
    let c_size = vocab.len();
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);

    let mut population = match initial_population {
        Some(pop) => {
            if pop.len() != n {
                return Err(EvolveError::PopulationSize {
                    expected: n,
                    got: pop.len(),
                });
            }
            for c in &pop {
                if c.len() != c_size {
                    return Err(EvolveError::LengthMismatch {
                        expected: c_size,
                        got: c.len(),
                    });
                }
            }
            pop
        }
        None => (0..n).map(|_| Chromosome::random(c_size, &mut rng)).collect(),
    };

    let mut stats = Vec::with_capacity(params.generations);
    for g in 0..params.generations {
        evaluate_population(&mut population, vocab, corpus, eval_config)?;
        stats.push(generation_stats(g, &population));

        let m_rate = decay_mutation(params.mutation_prob, g);
        let parents: Vec<Chromosome> = (0..n)
            .map(|_| tournament_select(&population, params.tournament_size, &mut rng).clone())
            .collect();

        let mut next = Vec::with_capacity(n);
        for pair in parents.chunks_exact(2) {
            let cross = rng.gen::<f64>() < params.crossover_prob && c_size >= 2;
            let (a, b) = if cross {
                let c_i = rng.gen_range(1..c_size);
                crossover(&pair[0], &pair[1], c_i)?
            } else {
                (pair[0].clone(), pair[1].clone())
            };
            next.push(mutate(&a, m_rate, &mut rng));
            next.push(mutate(&b, m_rate, &mut rng));
        }
        population = next;
    }
    Ok((population, stats))
}

/// Summarize an evaluated population: sequential mean, minimum fitness,
/// and a clone of the best individual (ties to the lowest index).
fn generation_stats(generation: usize, population: &[Chromosome]) -> GenerationStats {
    let mut sum = 0.0;
    let mut best_idx = 0;
    let mut best = f64::INFINITY;
    for (i, c) in population.iter().enumerate() {
        let f = c.fitness().expect("population was just evaluated");
        sum += f;
        if f < best {
            best = f;
            best_idx = i;
        }
    }
    GenerationStats {
        generation,
        mean_fitness: sum / population.len() as f64,
        best_fitness: best,
        best_chromosome: population[best_idx].clone(),
    }
}

/// Seed the next optimization round: carry over the best `n/2` individuals
/// (ties broken by population index, fitness caches intact) and fill the
/// other half with fresh random chromosomes.
pub fn reseed(
    previous: &[Chromosome],
    n: usize,
    rng: &mut impl Rng,
) -> Result<Vec<Chromosome>, EvolveError> {
    if !n.is_multiple_of(2) {
        return Err(EvolveError::InvalidParams(
            "reseed population size must be even".to_string(),
        ));
    }
    let elite = n / 2;
    if previous.len() < elite {
        return Err(EvolveError::ElitePoolTooSmall {
            len: previous.len(),
            need: elite,
        });
    }
    let mut order: Vec<usize> = (0..previous.len()).collect();
    for &i in &order {
        if previous[i].fitness().is_none() {
            return Err(EvolveError::UnevaluatedFitness);
        }
    }
    order.sort_by(|&a, &b| {
        previous[a]
            .fitness()
            .unwrap()
            .total_cmp(&previous[b].fitness().unwrap())
            .then_with(|| a.cmp(&b))
    });

    let len = previous.first().map_or(0, Chromosome::len);
    let mut next: Vec<Chromosome> = order[..elite].iter().map(|&i| previous[i].clone()).collect();
    for _ in 0..n - elite {
        next.push(Chromosome::random(len, rng));
    }
    Ok(next)
}

/// Convenience seeded RNG for callers that drive [`tournament_select`],
/// [`mutate`], or [`reseed`] directly.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
