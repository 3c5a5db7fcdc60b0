//! Command-line front end: correct transcripts, evaluate and sweep
//! configurations, evolve contexts, and synthesize test corpora.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context as _};
use clap::{Args, Parser, Subcommand};

use fonocor::candidates::Context;
use fonocor::corrector::{corpus_wer, correct, CorrectionConfig};
use fonocor::evolver::{
    build_vocabulary, decode, evaluate_population, evolve, reseed, seeded_rng, Chromosome,
    GaParams,
};
use fonocor::harness::{
    corpus_pairs, default_thresholds, load_context, load_corpus, relative_reduction, save_context,
    save_corpus, sweep, synthesize_corpus, write_context, write_corpus, CorpusRecord,
};
use fonocor::normalizer::{normalize, NormText};

#[derive(Parser)]
#[command(
    name = "fonocor",
    version,
    about = "Phonetic post-correction of Spanish ASR transcripts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Correct a transcript (or every hypothesis of a corpus) against a context
    Correct(CorrectArgs),
    /// Report corpus WER before and after correction
    Evaluate(EvaluateArgs),
    /// Run the full configuration grid and emit the report table
    Sweep(SweepArgs),
    /// Evolve a context that minimizes corpus WER
    Optimize(OptimizeArgs),
    /// Generate a synthetic corpus with planted phonetic errors
    Synth(SynthArgs),
}

#[derive(Args)]
struct CorrectArgs {
    /// Context file: one phrase per line, # comments
    #[arg(long, env = "FONOCOR_CONTEXT")]
    context: PathBuf,
    /// Configuration as <rep>,<generator>,<metric>,<threshold>
    #[arg(long, env = "FONOCOR_CONFIG", default_value = "ipa,let,levenshtein,0.4",
          value_parser = CorrectionConfig::from_str)]
    config: CorrectionConfig,
    /// A single transcript to correct
    #[arg(long)]
    text: Option<String>,
    /// A corpus file whose hypotheses should be corrected
    #[arg(long, env = "FONOCOR_CORPUS")]
    corpus: Option<PathBuf>,
    /// Output file (stdout when omitted)
    #[arg(long, env = "FONOCOR_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long, env = "FONOCOR_CORPUS")]
    corpus: PathBuf,
    #[arg(long, env = "FONOCOR_CONTEXT")]
    context: PathBuf,
    #[arg(long, env = "FONOCOR_CONFIG", default_value = "ipa,let,levenshtein,0.4",
          value_parser = CorrectionConfig::from_str)]
    config: CorrectionConfig,
    /// Also write the report lines to this file
    #[arg(long, env = "FONOCOR_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, env = "FONOCOR_CORPUS")]
    corpus: PathBuf,
    #[arg(long, env = "FONOCOR_CONTEXT")]
    context: PathBuf,
    /// Comma-separated thresholds (default 0.05 steps up to 0.60)
    #[arg(long)]
    thresholds: Option<String>,
    /// Report CSV path (stdout when omitted)
    #[arg(long, env = "FONOCOR_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long, env = "FONOCOR_CORPUS")]
    corpus: PathBuf,
    /// Fitness configuration for the evolved contexts
    #[arg(long, env = "FONOCOR_CONFIG", default_value = "ipa,win,levenshtein,0.4",
          value_parser = CorrectionConfig::from_str)]
    config: CorrectionConfig,
    #[arg(long, env = "FONOCOR_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    population: usize,
    #[arg(long, default_value_t = 100)]
    generations: usize,
    #[arg(long, default_value_t = 2)]
    tournament_size: usize,
    #[arg(long, default_value_t = 0.95)]
    crossover_prob: f64,
    #[arg(long, default_value_t = 0.05)]
    mutation_prob: f64,
    /// Optimization rounds; later rounds reseed from the best half
    #[arg(long, default_value_t = 1)]
    rounds: usize,
    /// Best-context output file (stdout when omitted)
    #[arg(long, env = "FONOCOR_OUT")]
    out: Option<PathBuf>,
    /// Per-generation stats CSV (generation, mean_wer, best_wer)
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// Vocabulary file: one phrase per line, # comments
    #[arg(long)]
    vocab: PathBuf,
    #[arg(long, default_value_t = 300)]
    sentences: usize,
    #[arg(long, default_value_t = 0.15)]
    error_rate: f64,
    #[arg(long, env = "FONOCOR_SEED", default_value_t = 0)]
    seed: u64,
    /// Corpus output file (stdout when omitted)
    #[arg(long, env = "FONOCOR_OUT")]
    out: Option<PathBuf>,
}

fn main() -> std::process::ExitCode {
    match run(Cli::parse()) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Correct(args) => run_correct(args),
        Command::Evaluate(args) => run_evaluate(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Optimize(args) => run_optimize(args),
        Command::Synth(args) => run_synth(args),
    }
}

/// Write `body` to the file at `out`, or to stdout when no path is given.
fn emit(out: Option<&PathBuf>, body: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{body}");
            std::io::stdout().flush()?;
            Ok(())
        }
    }
}

fn trace_applied(label: &str, original: &NormText, context: &Context, result: &fonocor::corrector::CorrectionResult) {
    for pair in &result.applied {
        let segment = original.slice(pair.span).joined();
        let phrase = context
            .get(pair.context_index)
            .map(|p| p.joined())
            .unwrap_or_default();
        eprintln!(
            "{label}: [{}..{}] \"{segment}\" -> \"{phrase}\" (distance {:.4})",
            pair.span.0, pair.span.1, pair.distance
        );
    }
}

fn run_correct(args: CorrectArgs) -> anyhow::Result<()> {
    let context = load_context(&args.context)?;
    match (&args.text, &args.corpus) {
        (Some(text), None) => {
            let transcript = normalize(text);
            let result = correct(&transcript, &context, &args.config);
            trace_applied("input", &transcript, &context, &result);
            emit(args.out.as_ref(), &format!("{}\n", result.corrected.joined()))
        }
        (None, Some(path)) => {
            let records = load_corpus(path)?;
            let corrected: Vec<CorpusRecord> = records
                .iter()
                .map(|r| {
                    let result = correct(&r.hypothesis, &context, &args.config);
                    trace_applied(&r.id, &r.hypothesis, &context, &result);
                    CorpusRecord {
                        id: r.id.clone(),
                        reference: r.reference.clone(),
                        hypothesis: result.corrected,
                    }
                })
                .collect();
            match &args.out {
                Some(path) => save_corpus(path, &corrected)?,
                None => write_corpus(std::io::stdout().lock(), &corrected)?,
            }
            Ok(())
        }
        (Some(_), Some(_)) => bail!("--text and --corpus are mutually exclusive"),
        (None, None) => bail!("nothing to correct: pass --text or --corpus"),
    }
}

fn run_evaluate(args: EvaluateArgs) -> anyhow::Result<()> {
    let records = load_corpus(&args.corpus)?;
    let context = load_context(&args.context)?;
    let pairs = corpus_pairs(&records);
    let before = corpus_wer(&pairs)?;
    let corrected: Vec<(NormText, NormText)> = pairs
        .iter()
        .map(|(r, h)| (r.clone(), correct(h, &context, &args.config).corrected))
        .collect();
    let after = corpus_wer(&corrected)?;

    let report = format!(
        "sentences\t{}\nconfig\t{}\nbaseline_wer\t{:.6}\ncorrected_wer\t{:.6}\nrelative_reduction\t{:.6}\n",
        records.len(),
        args.config,
        before,
        after,
        relative_reduction(before, after),
    );
    print!("{report}");
    if let Some(path) = &args.out {
        std::fs::write(path, &report)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn run_sweep(args: SweepArgs) -> anyhow::Result<()> {
    let records = load_corpus(&args.corpus)?;
    let context = load_context(&args.context)?;
    let thresholds = match &args.thresholds {
        Some(spec) => spec
            .split(',')
            .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad threshold `{t}`")))
            .collect::<anyhow::Result<Vec<f64>>>()?,
        None => default_thresholds(),
    };

    let report = sweep(&records, &context, &thresholds)?;
    let mut csv = Vec::new();
    report.write_csv(&mut csv)?;
    emit(args.out.as_ref(), std::str::from_utf8(&csv)?)?;

    for (rep, mean) in &report.mean_after_by_representation {
        eprintln!("mean_wer_after representation={} {:.6}", rep.label(), mean);
    }
    for (gen, mean) in &report.mean_after_by_generator {
        eprintln!("mean_wer_after generator={} {:.6}", gen.label(), mean);
    }
    Ok(())
}

fn run_optimize(args: OptimizeArgs) -> anyhow::Result<()> {
    if args.rounds == 0 {
        bail!("--rounds must be at least 1");
    }
    let records = load_corpus(&args.corpus)?;
    let pairs = corpus_pairs(&records);
    let references: Vec<NormText> = records.iter().map(|r| r.reference.clone()).collect();
    let vocab = build_vocabulary(&references)?;
    let baseline = corpus_wer(&pairs)?;
    eprintln!(
        "vocabulary: {} items; baseline corpus WER {:.6}",
        vocab.len(),
        baseline
    );

    let mut stats_rows: Vec<(usize, f64, f64)> = Vec::new();
    let mut reseed_rng = seeded_rng(args.seed ^ 0x5eed_5eed);
    let mut initial: Option<Vec<Chromosome>> = None;
    let mut population = Vec::new();
    let mut offset = 0usize;
    for round in 0..args.rounds {
        let params = GaParams {
            population_size: args.population,
            generations: args.generations,
            tournament_size: args.tournament_size,
            crossover_prob: args.crossover_prob,
            mutation_prob: args.mutation_prob,
            rng_seed: args.seed.wrapping_add(round as u64),
        };
        let (pop, stats) = evolve(&params, &vocab, &pairs, &args.config, initial.take())?;
        for s in &stats {
            stats_rows.push((offset + s.generation, s.mean_fitness, s.best_fitness));
        }
        offset += args.generations;
        population = pop;
        if round + 1 < args.rounds {
            evaluate_population(&mut population, &vocab, &pairs, &args.config)?;
            initial = Some(reseed(&population, args.population, &mut reseed_rng)?);
        }
    }

    // Score the final population and append its stats row.
    evaluate_population(&mut population, &vocab, &pairs, &args.config)?;
    let mut best_idx = 0;
    let mut best = f64::INFINITY;
    let mut sum = 0.0;
    for (i, c) in population.iter().enumerate() {
        let f = c.fitness().expect("population was just evaluated");
        sum += f;
        if f < best {
            best = f;
            best_idx = i;
        }
    }
    stats_rows.push((offset, sum / population.len() as f64, best));

    if let Some(path) = &args.stats {
        let mut w = csv::Writer::from_path(path)
            .with_context(|| format!("cannot write {}", path.display()))?;
        w.write_record(["generation", "mean_wer", "best_wer"])?;
        for (g, mean, best) in &stats_rows {
            w.write_record([g.to_string(), mean.to_string(), best.to_string()])?;
        }
        w.flush()?;
    }

    let best_context = decode(&population[best_idx], &vocab)?;
    eprintln!(
        "best context: {} phrases; corpus WER {:.6} (baseline {:.6})",
        best_context.len(),
        best,
        baseline
    );
    match &args.out {
        Some(path) => save_context(path, &best_context)?,
        None => write_context(std::io::stdout().lock(), &best_context)?,
    }
    Ok(())
}

fn run_synth(args: SynthArgs) -> anyhow::Result<()> {
    let vocab = load_context(&args.vocab)?;
    let synth = synthesize_corpus(
        vocab.phrases(),
        args.sentences,
        args.error_rate,
        args.seed,
    )?;
    eprintln!(
        "synthesized {} sentences with {} planted errors",
        synth.records.len(),
        synth.planted.len()
    );
    match &args.out {
        Some(path) => save_corpus(path, &synth.records)?,
        None => write_corpus(std::io::stdout().lock(), &synth.records)?,
    }
    Ok(())
}
