//! Pretrain skip-gram word vectors on a synthetic corpus and list the
//! nearest neighbours of a community word.

use std::io::Cursor;

use augnet::graph::read_contents;
use augnet::linalg::dot;
use augnet::pretrain::{pretrain_words, PretrainConfig};
use augnet::synth::{community_word, generate, SynthConfig};
use augnet::NodeIndex;

fn main() -> augnet::Result<()> {
    let synth = generate(&SynthConfig {
        nodes: 200,
        content_signal: 0.8,
        vocab_per_community: 20,
        vocab_shared: 40,
        ..SynthConfig::default()
    })?;
    let mut nodes = NodeIndex::new();
    let corpus = read_contents(Cursor::new(&synth.contents), "contents", 1, &mut nodes)?;
    let sentences: Vec<_> = corpus.sentences.iter().map(|(_, s)| s.clone()).collect();
    let config = PretrainConfig {
        dim: 32,
        epochs: 10,
        ..PretrainConfig::default()
    };
    let model = pretrain_words(&sentences, &corpus.vocab, &config, 1)?;
    println!("final mean pair loss {:.4}", model.final_loss);

    let query = corpus.vocab.lookup(&community_word(0, 0));
    let norm = |id: u32| dot(model.words.row(id as usize), model.words.row(id as usize)).sqrt();
    let mut scored: Vec<(f64, &str)> = corpus
        .vocab
        .words()
        .filter(|&(id, _)| id > augnet::Vocabulary::UNK && id != query)
        .map(|(id, w)| {
            let cos = dot(model.words.row(query as usize), model.words.row(id as usize)) / (norm(query) * norm(id));
            (cos, w)
        })
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    println!("neighbours of {}:", corpus.vocab.word(query));
    for (cos, w) in scored.iter().take(8) {
        println!("  {w:<8} {cos:.3}");
    }
    Ok(())
}
