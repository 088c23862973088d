//! The `augnet` command line: `gen-synth`, `pretrain-words`, `train` and
//! `eval`.
//!
//! Every subcommand accepts `--config FILE`, a plain-text file of
//! `key = value` lines (`#` starts a comment). Keys are flag names with
//! either `-` or `_`. Flags given on the command line override the file.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{ArgAction, CommandFactory, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::eval::{self, EvalConfig, DEFAULT_ITERS, DEFAULT_LAMBDA, DEFAULT_RATIOS, DEFAULT_TRIALS};
use crate::graph::{AugmentedNetwork, NodeIndex};
use crate::params::{
    export_embeddings, export_word_vectors, init_params, load_word_vectors, read_embeddings,
    EmbeddingPart, EncoderKind,
};
use crate::pretrain::{pretrain_words, PretrainConfig};
use crate::synth::{generate, SynthConfig};
use crate::trainer::{train, write_loss_csv, TrainConfig};

#[derive(Debug, Parser)]
#[command(name = "augnet", version, about = "Content-enhanced network embeddings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic network with edges, contents and labels.
    GenSynth(GenSynthArgs),
    /// Pretrain word vectors on the content file with skip-gram.
    PretrainWords(PretrainArgs),
    /// Train node embeddings on the augmented network.
    Train(TrainArgs),
    /// Node classification with logistic regression over train ratios.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, clap::Args)]
#[command(args_override_self = true)]
pub struct GenSynthArgs {
    /// Read defaults from a `key = value` file.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Directory that receives edges.tsv, contents.tsv and labels.tsv.
    #[arg(long, value_name = "DIR")]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 200)]
    pub nodes: usize,
    #[arg(long, default_value_t = 2)]
    pub communities: usize,
    /// Edge probability within a community.
    #[arg(long, default_value_t = 0.05)]
    pub p_in: f64,
    /// Edge probability across communities (must not exceed --p-in).
    #[arg(long, default_value_t = 0.005)]
    pub p_out: f64,
    #[arg(long, default_value_t = 3)]
    pub docs_per_node: usize,
    #[arg(long, default_value_t = 2)]
    pub sentences_per_doc: usize,
    #[arg(long, default_value_t = 4)]
    pub min_sentence_len: usize,
    #[arg(long, default_value_t = 10)]
    pub max_sentence_len: usize,
    #[arg(long, default_value_t = 50)]
    pub vocab_per_community: usize,
    #[arg(long, default_value_t = 200)]
    pub vocab_shared: usize,
    /// Probability that a word is drawn from the community vocabulary.
    #[arg(long, default_value_t = 0.5)]
    pub content_signal: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, clap::Args)]
#[command(args_override_self = true)]
pub struct PretrainArgs {
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Content file (`node_key<TAB>document`).
    #[arg(long, value_name = "FILE")]
    pub contents: PathBuf,
    /// Word-vector file to write.
    #[arg(long, value_name = "FILE")]
    pub output: PathBuf,
    #[arg(long, default_value_t = 200)]
    pub dim: usize,
    /// Context window on each side of the centre word.
    #[arg(long, default_value_t = 5)]
    pub window: usize,
    #[arg(long, default_value_t = 15)]
    pub neg: usize,
    #[arg(long, default_value_t = 5)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0.025)]
    pub eta0: f64,
    /// Words seen fewer times map to the unknown token.
    #[arg(long, default_value_t = 1)]
    pub min_count: u64,
    /// Frequent-word subsampling threshold (off by default).
    #[arg(long)]
    pub subsample: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, clap::Args)]
#[command(args_override_self = true)]
pub struct TrainArgs {
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Edge file (`src<TAB>dst`).
    #[arg(long, value_name = "FILE")]
    pub edges: PathBuf,
    /// Content file; required when --alpha < 1.
    #[arg(long, value_name = "FILE")]
    pub contents: Option<PathBuf>,
    /// Node embedding file to write.
    #[arg(long, value_name = "FILE")]
    pub output: PathBuf,
    /// Optional CSV of windowed training loss.
    #[arg(long, value_name = "FILE")]
    pub loss_csv: Option<PathBuf>,
    /// Which part of each node vector to export: full (out then in), in, out.
    #[arg(long, default_value = "full", value_parser = parse_part)]
    pub export: EmbeddingPart,
    /// Probability of a node-node step; the rest are node-content steps.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value = "wavg", value_parser = parse_encoder)]
    pub encoder: EncoderKind,
    /// Node vector size (even; split into in and out halves).
    #[arg(long, default_value_t = 200)]
    pub dim: usize,
    /// Steps = epochs x (node-node edges + node-content edges).
    #[arg(long, default_value_t = 100)]
    pub epochs: usize,
    /// Overrides the step count derived from --epochs.
    #[arg(long)]
    pub max_steps: Option<u64>,
    /// Initial learning rate [default: 0.025 for wavg, 0.01 for gru/bigru].
    #[arg(long)]
    pub eta0: Option<f64>,
    #[arg(long, default_value_t = 15)]
    pub neg_nn: usize,
    #[arg(long, default_value_t = 25)]
    pub neg_nc: usize,
    /// Pretrained word vectors; their size must equal --dim.
    #[arg(long, value_name = "FILE")]
    pub word_vectors: Option<PathBuf>,
    /// Keep word vectors fixed during training.
    #[arg(long)]
    pub freeze_words: bool,
    /// Whether edge lines are directed; undirected lines add both directions.
    #[arg(long, default_value_t = true, action = ArgAction::Set, value_name = "BOOL")]
    pub directed: bool,
    /// Score node pairs with the full vectors instead of the in/out split.
    #[arg(long)]
    pub symmetric_score: bool,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub min_count: u64,
    /// Max global norm for encoder gradients (off by default).
    #[arg(long)]
    pub grad_clip: Option<f64>,
    /// Draw negatives uniformly instead of by degree^0.75.
    #[arg(long)]
    pub uniform_negatives: bool,
    /// Steps per loss-trace window.
    #[arg(long, default_value_t = 1000)]
    pub trace_every: u64,
}

#[derive(Debug, Clone, clap::Args)]
#[command(args_override_self = true)]
pub struct EvalArgs {
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Node embedding file.
    #[arg(long, value_name = "FILE")]
    pub embeddings: PathBuf,
    /// Label file (`node_key<TAB>label`).
    #[arg(long, value_name = "FILE")]
    pub labels: PathBuf,
    /// Comma-separated training ratios [default: 0.1,0.2,...,0.9].
    #[arg(long, value_delimiter = ',')]
    pub ratios: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    /// L2 strength of the logistic regression.
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    pub lambda: f64,
    /// Gradient-descent iterations per fit.
    #[arg(long, default_value_t = DEFAULT_ITERS)]
    pub iters: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Report CSV to write; printed to stdout when absent.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

fn parse_encoder(s: &str) -> std::result::Result<EncoderKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_part(s: &str) -> std::result::Result<EmbeddingPart, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (program name first), applies any config file and runs the
/// chosen subcommand. Help and version text go to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = expand_config(args)?;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            write!(out, "{e}").map_err(|e| Error::io("<stdout>", e))?;
            return Ok(());
        }
        Err(e) => return Err(usage(&e)),
    };
    match cli.command {
        Command::GenSynth(a) => cmd_gen_synth(&a, out),
        Command::PretrainWords(a) => cmd_pretrain_words(&a, out),
        Command::Train(a) => cmd_train(&a, out),
        Command::Eval(a) => cmd_eval(&a, out),
    }
}

fn usage(e: &clap::Error) -> Error {
    let text = e.render().to_string();
    let first = text.lines().next().unwrap_or("invalid arguments");
    Error::Usage(first.trim_start_matches("error: ").to_owned())
}

/// Reads `key = value` lines. Blank lines and `#` comments are ignored.
pub fn parse_config_file(path: &Path) -> Result<Vec<(String, String)>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let source = path.display().to_string();
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(&source, i + 1, "expected `key = value`"))?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() {
            return Err(Error::parse(&source, i + 1, "empty key"));
        }
        entries.push((key, value.trim().to_owned()));
    }
    Ok(entries)
}

/// Splices config-file entries in front of the subcommand's own flags so
/// that command-line flags, parsed later, win.
fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(sub_pos) = args.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-')) else {
        return Ok(args);
    };
    let sub_pos = sub_pos + 1;
    let mut config_path = None;
    let rest = &args[sub_pos + 1..];
    for (i, a) in rest.iter().enumerate() {
        let a = a.to_string_lossy();
        if a == "--config" {
            config_path = rest.get(i + 1).map(PathBuf::from);
        } else if let Some(p) = a.strip_prefix("--config=") {
            config_path = Some(PathBuf::from(p));
        }
    }
    let Some(config_path) = config_path else {
        return Ok(args);
    };
    let command = Cli::command();
    let sub_name = args[sub_pos].to_string_lossy().into_owned();
    let Some(sub) = command.find_subcommand(&sub_name) else {
        return Ok(args);
    };

    let mut injected: Vec<OsString> = Vec::new();
    for (key, value) in parse_config_file(&config_path)? {
        let arg = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()) && key != "config")
            .ok_or_else(|| {
                Error::Usage(format!(
                    "{}: unknown key '{key}' for {sub_name}",
                    config_path.display()
                ))
            })?;
        if arg.get_action().takes_values() {
            injected.push(format!("--{key}").into());
            injected.push(value.into());
        } else {
            match value.as_str() {
                "true" => injected.push(format!("--{key}").into()),
                "false" => {}
                other => {
                    return Err(Error::Usage(format!(
                        "{}: key '{key}' expects true or false, got '{other}'",
                        config_path.display()
                    )))
                }
            }
        }
    }
    let mut expanded = args[..=sub_pos].to_vec();
    expanded.extend(injected);
    expanded.extend_from_slice(&args[sub_pos + 1..]);
    Ok(expanded)
}

fn require_file(path: &Path, what: &str) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::Usage(format!("{what} '{}' does not exist or is not a file", path.display())))
    }
}

fn require_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => Err(Error::Usage(format!(
            "output directory '{}' does not exist",
            dir.display()
        ))),
        _ => Ok(()),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e))
}

/// Writes the three files and prints `file,path,rows` CSV.
pub fn cmd_gen_synth(args: &GenSynthArgs, out: &mut dyn Write) -> Result<()> {
    let config = SynthConfig {
        nodes: args.nodes,
        communities: args.communities,
        p_in: args.p_in,
        p_out: args.p_out,
        docs_per_node: args.docs_per_node,
        sentences_per_doc: args.sentences_per_doc,
        sentence_len: (args.min_sentence_len, args.max_sentence_len),
        vocab_per_community: args.vocab_per_community,
        vocab_shared: args.vocab_shared,
        content_signal: args.content_signal,
        seed: args.seed,
    };
    config.validate()?;
    let net = generate(&config)?;
    let paths = net.write_to(&args.out_dir)?;
    emit(
        out,
        &format!(
            "file,path,rows\nedges,{},{}\ncontents,{},{}\nlabels,{},{}\n",
            paths.edges.display(),
            net.edge_count,
            paths.contents.display(),
            net.document_count,
            paths.labels.display(),
            args.nodes
        ),
    )
}

pub fn cmd_pretrain_words(args: &PretrainArgs, out: &mut dyn Write) -> Result<()> {
    require_file(&args.contents, "content file")?;
    require_parent(&args.output)?;
    let config = PretrainConfig {
        window: args.window,
        neg: args.neg,
        epochs: args.epochs,
        eta0: args.eta0,
        dim: args.dim,
        subsample: args.subsample,
    };
    let mut nodes = NodeIndex::new();
    let corpus = crate::graph::load_contents(&args.contents, args.min_count, &mut nodes)?;
    let sentences: Vec<_> = corpus.sentences.into_iter().map(|(_, s)| s).collect();
    let model = pretrain_words(&sentences, &corpus.vocab, &config, args.seed)?;
    export_word_vectors(&model.words, &corpus.vocab, &args.output)?;
    emit(
        out,
        &format!(
            "words,dim,final_loss\n{},{},{:.6}\n",
            corpus.vocab.len() - 2,
            args.dim,
            model.final_loss
        ),
    )
}

impl TrainArgs {
    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            alpha: self.alpha,
            dim: self.dim,
            encoder: self.encoder,
            neg_nn: self.neg_nn,
            neg_nc: self.neg_nc,
            eta0: self.eta0.unwrap_or(self.encoder.default_eta0()),
            epochs: self.epochs,
            max_steps: self.max_steps,
            directed_score: !self.symmetric_score,
            seed: self.seed,
            workers: self.workers,
            freeze_words: self.freeze_words,
            grad_clip: self.grad_clip,
            uniform_negatives: self.uniform_negatives,
            trace_every: self.trace_every,
        }
    }
}

/// Trains, exports node vectors and prints a one-row CSV summary.
pub fn cmd_train(args: &TrainArgs, out: &mut dyn Write) -> Result<()> {
    let config = args.train_config();
    config.validate()?;
    require_file(&args.edges, "edge file")?;
    match &args.contents {
        Some(p) => require_file(p, "content file")?,
        None if args.alpha < 1.0 => {
            return Err(Error::Usage(format!(
                "--alpha {} takes node-content steps, so --contents is required",
                args.alpha
            )))
        }
        None => {}
    }
    if let Some(p) = &args.word_vectors {
        require_file(p, "word-vector file")?;
    }
    require_parent(&args.output)?;
    if let Some(p) = &args.loss_csv {
        require_parent(p)?;
    }

    let net = AugmentedNetwork::load(&args.edges, args.contents.as_deref(), args.directed, args.min_count)?;
    let mut params = init_params(net.node_count(), net.vocab().len(), args.dim, args.encoder, args.seed)?;
    if let Some(p) = &args.word_vectors {
        let report = load_word_vectors(p, net.vocab(), &mut params.words).map_err(|e| match e {
            Error::DimensionMismatch { expected, found } => Error::Usage(format!(
                "word vectors in '{}' have dimension {found} but --dim is {expected}",
                p.display()
            )),
            other => other,
        })?;
        log::info!("loaded {} word vectors ({} not in vocabulary)", report.loaded, report.skipped);
    }
    let outcome = train(&net, &mut params, &config)?;
    export_embeddings(&params, net.nodes(), &args.output, args.export)?;
    if let Some(p) = &args.loss_csv {
        let file = File::create(p).map_err(|e| Error::io(p, e))?;
        write_loss_csv(BufWriter::new(file), &outcome.trace).map_err(|e| Error::io(p, e))?;
    }
    emit(
        out,
        &format!(
            "steps,nn_steps,nc_steps,first_decile_loss,last_decile_loss\n{},{},{},{:.6},{:.6}\n",
            outcome.steps,
            outcome.nn_steps,
            outcome.nc_steps,
            outcome.first_decile_loss,
            outcome.last_decile_loss
        ),
    )
}

/// Writes the `ratio,mean_micro_f1,std,trials` report to `--output` or `out`.
pub fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<()> {
    require_file(&args.embeddings, "embedding file")?;
    require_file(&args.labels, "label file")?;
    if let Some(p) = &args.output {
        require_parent(p)?;
    }
    let ratios = args.ratios.clone().unwrap_or_else(|| DEFAULT_RATIOS.to_vec());
    if let Some(r) = ratios.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
        return Err(Error::Usage(format!("ratios must lie in (0, 1), got {r}")));
    }
    let config = EvalConfig {
        ratios,
        trials: args.trials,
        seed: args.seed,
        lambda: args.lambda,
        iters: args.iters,
    };
    let embeddings = read_embeddings(&args.embeddings)?;
    let labels = eval::load_labels(&args.labels)?;
    let report = eval::evaluate(&embeddings, &labels, &config).map_err(|e| match e {
        Error::MissingEmbedding(key) => Error::Usage(format!(
            "label file references node '{key}', which has no vector in '{}'",
            args.embeddings.display()
        )),
        other => other,
    })?;
    match &args.output {
        Some(p) => {
            let file = File::create(p).map_err(|e| Error::io(p, e))?;
            let mut w = BufWriter::new(file);
            report.write_csv(&mut w).and_then(|_| w.flush()).map_err(|e| Error::io(p, e))
        }
        None => report.write_csv(out).map_err(|e| Error::io("<stdout>", e)),
    }
}
