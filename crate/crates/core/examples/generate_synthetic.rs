//! Write a two-community synthetic network to a directory.
//!
//! ```text
//! cargo run --example generate_synthetic -- /tmp/sbm
//! ```

use augnet::synth::{generate, SynthConfig};

fn main() -> augnet::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "synthetic".into());
    let config = SynthConfig {
        nodes: 300,
        p_in: 0.06,
        p_out: 0.006,
        content_signal: 0.7,
        seed: 7,
        ..SynthConfig::default()
    };
    let net = generate(&config)?;
    let paths = net.write_to(&dir)?;
    println!("{} edges -> {}", net.edge_count, paths.edges.display());
    println!("{} documents -> {}", net.document_count, paths.contents.display());
    println!("{} labels -> {}", config.nodes, paths.labels.display());
    Ok(())
}
