//! Compare the analytic node-content gradient of a GRU encoder with central
//! finite differences, one tensor at a time.

use std::io::Cursor;

use augnet::graph::{build_augmented, read_contents, read_edges};
use augnet::params::GruWeights;
use augnet::trainer::{nc_loss, nc_loss_and_grad};
use augnet::{init_params, ContentId, EncoderKind, NodeIndex};

const EPS: f64 = 1e-5;

fn main() -> augnet::Result<()> {
    let mut nodes = NodeIndex::new();
    let edges = read_edges(Cursor::new("a\tb\n"), "edges", true, &mut nodes)?;
    let contents = "a\tthe quick brown fox jumps\nb\tover the lazy dog\nb\tquick dog\n";
    let corpus = read_contents(Cursor::new(contents), "contents", 1, &mut nodes)?;
    let net = build_augmented(nodes, edges, corpus)?;

    let a = net.nodes().get("a").expect("node a");
    let positive = net.contents_of(a)[0];
    let negatives: Vec<ContentId> = (0..net.content_count())
        .map(ContentId)
        .filter(|c| *c != positive)
        .collect();

    let mut params = init_params(net.node_count(), net.vocab().len(), 8, EncoderKind::Gru, 11)?;
    for x in params.nodes.table_mut().as_mut_slice() {
        *x *= 200.0;
    }
    let grad = nc_loss_and_grad(&params, &net, a, positive, &negatives)?;
    let analytic = &grad.encoder.weights[0];

    for (t, name) in GruWeights::TENSOR_NAMES.iter().enumerate() {
        let len = analytic.tensors()[t].len();
        let mut worst: f64 = 0.0;
        for i in 0..len {
            let probe = |delta: f64| -> augnet::Result<f64> {
                let mut p = params.clone();
                if let augnet::params::EncoderParams::Gru(w) = &mut p.encoder {
                    w.tensors_mut()[t][i] += delta;
                }
                nc_loss(&p, &net, a, positive, &negatives)
            };
            let numeric = (probe(EPS)? - probe(-EPS)?) / (2.0 * EPS);
            let exact = analytic.tensors()[t][i];
            worst = worst.max((numeric - exact).abs() / numeric.abs().max(exact.abs()).max(1e-12));
        }
        println!("{name:>3}: {len:>3} entries, worst elementwise relative error {worst:.2e}");
    }
    Ok(())
}
