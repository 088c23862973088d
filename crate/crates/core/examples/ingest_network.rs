//! Build the augmented network from edge and content text and inspect it.

use std::io::Cursor;

use augnet::graph::{build_augmented, read_contents, read_edges};
use augnet::NodeIndex;

const EDGES: &str = "\
# follower\tfollowee
alice\tbob
bob\tcarol
carol\talice
alice\tbob
dave\tdave
";

const CONTENTS: &str = "\
alice\tGraphs are fun. Embeddings too!
bob\tEmbeddings too! Sentences become nodes.
carol\t
erin\tI only write, never link.
";

fn main() -> augnet::Result<()> {
    let mut nodes = NodeIndex::new();
    // The duplicate edge and the self-loop are dropped.
    let edges = read_edges(Cursor::new(EDGES), "edges", true, &mut nodes)?;
    let corpus = read_contents(Cursor::new(CONTENTS), "contents", 1, &mut nodes)?;
    println!("skipped empty documents: {}", corpus.skipped_empty);
    let net = build_augmented(nodes, edges, corpus)?;

    println!("nodes: {}  sentences: {}", net.node_count(), net.content_count());
    println!("node-node edges: {}  node-content edges: {}", net.edges_nn().len(), net.edges_nc().len());
    for (i, key) in net.nodes().keys().iter().enumerate() {
        let u = augnet::NodeId(i);
        let sentences: Vec<String> = net
            .contents_of(u)
            .iter()
            .map(|&c| {
                let words: Vec<&str> = net.sentence(c).tokens().iter().map(|&w| net.vocab().word(w)).collect();
                words.join(" ")
            })
            .collect();
        let out: Vec<&str> = net.out_neighbors(u).iter().map(|v| net.nodes().key(*v)).collect();
        println!("{key:>6} -> {out:?}  sentences {sentences:?}");
    }
    Ok(())
}
