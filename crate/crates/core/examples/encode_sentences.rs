//! Compose sentence vectors with each encoder and compare their similarity.

use augnet::encoders::encode_only;
use augnet::graph::{Sentence, Vocabulary};
use augnet::linalg::dot;
use augnet::{init_params, EncoderKind};

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b) / (dot(a, a).sqrt() * dot(b, b).sqrt())
}

fn main() -> augnet::Result<()> {
    let text = ["the cat sat", "the cat sat down", "sat cat the", "dogs bark loudly"];
    let counts: Vec<(&str, u64)> = text
        .iter()
        .flat_map(|s| s.split_whitespace())
        .map(|w| (w, 1))
        .collect();
    let vocab = Vocabulary::from_counts(counts, 1);
    let sentences: Vec<Sentence> = text
        .iter()
        .map(|s| Sentence::new(s.split_whitespace().map(|w| vocab.lookup(w)).collect()))
        .collect::<augnet::Result<_>>()?;

    for kind in EncoderKind::ALL {
        let params = init_params(1, vocab.len(), 16, kind, 3)?;
        let vectors: Vec<Vec<f64>> = sentences
            .iter()
            .map(|s| encode_only(s.tokens(), &params.words, &params.encoder))
            .collect::<augnet::Result<_>>()?;
        // Word averaging ignores order, so "sat cat the" matches "the cat sat" exactly.
        println!(
            "{kind:>5}: reordered {:.4}  extended {:.4}  unrelated {:.4}",
            cosine(&vectors[0], &vectors[2]),
            cosine(&vectors[0], &vectors[1]),
            cosine(&vectors[0], &vectors[3]),
        );
    }
    Ok(())
}
