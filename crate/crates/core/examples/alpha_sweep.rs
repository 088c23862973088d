//! Sweep the structure/content balance on a synthetic network and report
//! Micro-F1 at one training ratio for each alpha.
//!
//! ```text
//! cargo run --release --example alpha_sweep -- --p-in 0.05 --p-out 0.01 --content-signal 0.6
//! ```

use std::io::Cursor;
use std::time::Instant;

use augnet::eval::{evaluate, EvalConfig};
use augnet::graph::{build_augmented, read_contents, read_edges};
use augnet::params::EmbeddingFile;
use augnet::synth::{generate, SynthConfig};
use augnet::{init_params, train, EmbeddingPart, EncoderKind, NodeIndex, TrainConfig};
use clap::Parser;

#[derive(Parser)]
struct Args {
    #[arg(long, default_value_t = 400)]
    nodes: usize,
    #[arg(long, default_value_t = 0.05)]
    p_in: f64,
    #[arg(long, default_value_t = 0.01)]
    p_out: f64,
    #[arg(long, default_value_t = 0.6)]
    content_signal: f64,
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    alphas: Vec<f64>,
    #[arg(long, default_value = "wavg", value_parser = |s: &str| s.parse::<EncoderKind>().map_err(|e| e.to_string()))]
    encoder: EncoderKind,
    #[arg(long, default_value_t = 64)]
    dim: usize,
    #[arg(long, default_value_t = 20)]
    epochs: usize,
    #[arg(long, default_value_t = 0.5)]
    ratio: f64,
    #[arg(long, default_value_t = 40)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn main() -> augnet::Result<()> {
    let args = Args::parse();
    let synth = generate(&SynthConfig {
        nodes: args.nodes,
        p_in: args.p_in,
        p_out: args.p_out,
        content_signal: args.content_signal,
        seed: args.seed,
        ..SynthConfig::default()
    })?;
    let labels = augnet::eval::parse_labels(Cursor::new(&synth.labels), "labels")?;

    println!("alpha,mean_micro_f1,std,seconds");
    for &alpha in &args.alphas {
        let start = Instant::now();
        let mut nodes = NodeIndex::new();
        let edges = read_edges(Cursor::new(&synth.edges), "edges", true, &mut nodes)?;
        let corpus = read_contents(Cursor::new(&synth.contents), "contents", 1, &mut nodes)?;
        let net = build_augmented(nodes, edges, corpus)?;

        let mut params = init_params(net.node_count(), net.vocab().len(), args.dim, args.encoder, args.seed)?;
        let config = TrainConfig {
            alpha,
            dim: args.dim,
            epochs: args.epochs,
            seed: args.seed,
            ..TrainConfig::new(args.encoder)
        };
        train(&net, &mut params, &config)?;
        let embeddings = EmbeddingFile::from_nodes(&params, net.nodes(), EmbeddingPart::Full);
        let report = evaluate(
            &embeddings,
            &labels,
            &EvalConfig {
                ratios: vec![args.ratio],
                trials: args.trials,
                seed: args.seed,
                ..EvalConfig::default()
            },
        )?;
        let row = &report.rows[0];
        println!(
            "{alpha},{:.4},{:.4},{:.1}",
            row.mean_micro_f1,
            row.std,
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
