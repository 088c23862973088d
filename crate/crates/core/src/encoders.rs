//! Sentence composition: word average, GRU with mean pooling, and
//! bidirectional GRU with mean pooling, each with an exact backward pass.

use crate::error::{Error, Result};
use crate::graph::WordId;
use crate::linalg::{axpy, sigmoid};
use crate::params::{EncoderParams, GruWeights, WordTable};

/// Mean of the word vectors of `tokens`.
pub fn encode_wavg(tokens: &[WordId], words: &WordTable) -> Result<Vec<f64>> {
    if tokens.is_empty() {
        return Err(Error::EmptyInput("sentence".into()));
    }
    let mut out = vec![0.0; words.dim()];
    let scale = 1.0 / tokens.len() as f64;
    for &w in tokens {
        axpy(scale, words.row(w as usize), &mut out);
    }
    Ok(out)
}

/// Gate activations of one GRU step.
#[derive(Clone, Debug, PartialEq)]
pub struct GruStep {
    pub z: Vec<f64>,
    pub r: Vec<f64>,
    pub candidate: Vec<f64>,
    pub h: Vec<f64>,
}

pub fn gru_step(x: &[f64], h_prev: &[f64], w: &GruWeights) -> GruStep {
    let n = w.hidden_dim();
    let mut z = w.b_z.clone();
    w.w_z.mul_vec_add(x, &mut z);
    w.u_z.mul_vec_add(h_prev, &mut z);
    z.iter_mut().for_each(|a| *a = sigmoid(*a));

    let mut r = w.b_r.clone();
    w.w_r.mul_vec_add(x, &mut r);
    w.u_r.mul_vec_add(h_prev, &mut r);
    r.iter_mut().for_each(|a| *a = sigmoid(*a));

    let gated: Vec<f64> = r.iter().zip(h_prev).map(|(a, b)| a * b).collect();
    let mut candidate = w.b_h.clone();
    w.w_h.mul_vec_add(x, &mut candidate);
    w.u_h.mul_vec_add(&gated, &mut candidate);
    candidate.iter_mut().for_each(|a| *a = a.tanh());

    let h = (0..n)
        .map(|i| (1.0 - z[i]) * h_prev[i] + z[i] * candidate[i])
        .collect();
    GruStep { z, r, candidate, h }
}

/// One GRU transition `h_t = (1 - z) ⊙ h_prev + z ⊙ h̃`.
pub fn gru_cell(x: &[f64], h_prev: &[f64], w: &GruWeights) -> Vec<f64> {
    gru_step(x, h_prev, w).h
}

/// Forward pass record for one GRU direction. Tokens are stored in the
/// order they were consumed.
#[derive(Clone, Debug)]
pub struct GruTrace {
    pub tokens: Vec<WordId>,
    /// Word vectors as read at each position.
    pub inputs: Vec<Vec<f64>>,
    /// `h_0 ..= h_T`, with `h_0 = 0`.
    pub hidden: Vec<Vec<f64>>,
    pub steps: Vec<GruStep>,
}

impl GruTrace {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

fn run_gru<I>(tokens: I, words: &WordTable, w: &GruWeights) -> (Vec<f64>, GruTrace)
where
    I: Iterator<Item = WordId>,
{
    let n = w.hidden_dim();
    let mut trace = GruTrace {
        tokens: Vec::new(),
        inputs: Vec::new(),
        hidden: vec![vec![0.0; n]],
        steps: Vec::new(),
    };
    let mut pooled = vec![0.0; n];
    for tok in tokens {
        let x = words.row(tok as usize);
        let step = gru_step(x, trace.hidden.last().unwrap(), w);
        axpy(1.0, &step.h, &mut pooled);
        trace.tokens.push(tok);
        trace.inputs.push(x.to_vec());
        trace.hidden.push(step.h.clone());
        trace.steps.push(step);
    }
    let scale = 1.0 / trace.tokens.len().max(1) as f64;
    pooled.iter_mut().for_each(|p| *p *= scale);
    (pooled, trace)
}

fn check_gru_dims(tokens: &[WordId], words: &WordTable, w: &GruWeights) -> Result<()> {
    if tokens.is_empty() {
        return Err(Error::EmptyInput("sentence".into()));
    }
    if w.input_dim() != words.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.input_dim(),
            found: words.dim(),
        });
    }
    Ok(())
}

/// Left-to-right GRU, mean-pooled over `h_1 ..= h_T`.
pub fn encode_gru(
    tokens: &[WordId],
    words: &WordTable,
    w: &GruWeights,
) -> Result<(Vec<f64>, GruTrace)> {
    check_gru_dims(tokens, words, w)?;
    Ok(run_gru(tokens.iter().copied(), words, w))
}

/// Forward and backward GRUs; per-position states are concatenated
/// (forward half first) and mean-pooled.
pub fn encode_bigru(
    tokens: &[WordId],
    words: &WordTable,
    forward: &GruWeights,
    backward: &GruWeights,
) -> Result<(Vec<f64>, [GruTrace; 2])> {
    check_gru_dims(tokens, words, forward)?;
    check_gru_dims(tokens, words, backward)?;
    // Mean pooling commutes with concatenation, so each half is pooled alone.
    let (mut out, fwd) = run_gru(tokens.iter().copied(), words, forward);
    let (bwd_pooled, bwd) = run_gru(tokens.iter().rev().copied(), words, backward);
    out.extend_from_slice(&bwd_pooled);
    Ok((out, [fwd, bwd]))
}

/// Everything the backward pass needs from a forward call.
#[derive(Clone, Debug)]
pub enum EncodeTrace {
    WAvg { tokens: Vec<WordId> },
    Gru(GruTrace),
    BiGru { forward: GruTrace, backward: GruTrace },
}

impl EncodeTrace {
    pub fn len(&self) -> usize {
        match self {
            EncodeTrace::WAvg { tokens } => tokens.len(),
            EncodeTrace::Gru(t) => t.len(),
            EncodeTrace::BiGru { forward, .. } => forward.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Encodes with whichever model `encoder` holds, keeping a trace.
pub fn encode(
    tokens: &[WordId],
    words: &WordTable,
    encoder: &EncoderParams,
) -> Result<(Vec<f64>, EncodeTrace)> {
    match encoder {
        EncoderParams::WAvg => Ok((
            encode_wavg(tokens, words)?,
            EncodeTrace::WAvg {
                tokens: tokens.to_vec(),
            },
        )),
        EncoderParams::Gru(w) => {
            let (out, trace) = encode_gru(tokens, words, w)?;
            Ok((out, EncodeTrace::Gru(trace)))
        }
        EncoderParams::BiGru { forward, backward } => {
            let (out, [f, b]) = encode_bigru(tokens, words, forward, backward)?;
            Ok((
                out,
                EncodeTrace::BiGru {
                    forward: f,
                    backward: b,
                },
            ))
        }
    }
}

/// Encodes without keeping a trace.
pub fn encode_only(
    tokens: &[WordId],
    words: &WordTable,
    encoder: &EncoderParams,
) -> Result<Vec<f64>> {
    match encoder {
        EncoderParams::WAvg => encode_wavg(tokens, words),
        _ => encode(tokens, words, encoder).map(|(v, _)| v),
    }
}

/// Gradient of a scalar loss with respect to the encoder weights (one entry
/// per direction) and each input word occurrence.
#[derive(Clone, Debug, PartialEq)]
pub struct EncodeGrad {
    pub weights: Vec<GruWeights>,
    pub words: Vec<(WordId, Vec<f64>)>,
}

impl EncodeGrad {
    pub fn zeros_for(encoder: &EncoderParams) -> Self {
        EncodeGrad {
            weights: encoder.directions().iter().map(|w| w.zeros_like()).collect(),
            words: Vec::new(),
        }
    }

    /// Adds `other` into `self`.
    pub fn accumulate(&mut self, other: EncodeGrad) {
        for (a, b) in self.weights.iter_mut().zip(&other.weights) {
            a.add_scaled(1.0, b);
        }
        self.words.extend(other.words);
    }

    pub fn norm(&self) -> f64 {
        let w: f64 = self.weights.iter().map(GruWeights::norm_sq).sum();
        let x: f64 = self
            .words
            .iter()
            .map(|(_, g)| crate::linalg::norm_sq(g))
            .sum();
        (w + x).sqrt()
    }

    pub fn scale(&mut self, factor: f64) {
        for w in &mut self.weights {
            for t in w.tensors_mut() {
                t.iter_mut().for_each(|x| *x *= factor);
            }
        }
        for (_, g) in &mut self.words {
            g.iter_mut().for_each(|x| *x *= factor);
        }
    }

    /// Rescales so the global norm is at most `max_norm`.
    pub fn clip_norm(&mut self, max_norm: f64) {
        let n = self.norm();
        if n > max_norm && n > 0.0 {
            self.scale(max_norm / n);
        }
    }

    pub fn all_finite(&self) -> bool {
        self.weights.iter().all(GruWeights::all_finite)
            && self.words.iter().all(|(_, g)| g.iter().all(|x| x.is_finite()))
    }
}

/// Backpropagation through mean pooling and the recurrence.
pub fn encode_backward(
    trace: &EncodeTrace,
    upstream: &[f64],
    encoder: &EncoderParams,
) -> Result<EncodeGrad> {
    match (trace, encoder) {
        (EncodeTrace::WAvg { tokens }, EncoderParams::WAvg) => {
            let scale = 1.0 / tokens.len() as f64;
            let g: Vec<f64> = upstream.iter().map(|x| x * scale).collect();
            Ok(EncodeGrad {
                weights: Vec::new(),
                words: tokens.iter().map(|&w| (w, g.clone())).collect(),
            })
        }
        (EncodeTrace::Gru(t), EncoderParams::Gru(w)) => {
            check_upstream(upstream, w.hidden_dim())?;
            let (gw, words) = gru_backward(t, upstream, w);
            Ok(EncodeGrad {
                weights: vec![gw],
                words,
            })
        }
        (
            EncodeTrace::BiGru {
                forward: tf,
                backward: tb,
            },
            EncoderParams::BiGru { forward, backward },
        ) => {
            let h = forward.hidden_dim();
            check_upstream(upstream, h + backward.hidden_dim())?;
            let (gf, mut words) = gru_backward(tf, &upstream[..h], forward);
            let (gb, words_b) = gru_backward(tb, &upstream[h..], backward);
            words.extend(words_b);
            Ok(EncodeGrad {
                weights: vec![gf, gb],
                words,
            })
        }
        _ => Err(Error::Degenerate(
            "trace does not match the encoder it is differentiated against".into(),
        )),
    }
}

fn check_upstream(upstream: &[f64], expected: usize) -> Result<()> {
    if upstream.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: upstream.len(),
        });
    }
    Ok(())
}

fn gru_backward(
    trace: &GruTrace,
    upstream: &[f64],
    w: &GruWeights,
) -> (GruWeights, Vec<(WordId, Vec<f64>)>) {
    let n = w.hidden_dim();
    let len = trace.len();
    let pooled_share = 1.0 / len as f64;
    let mut grad = w.zeros_like();
    let mut word_grads = Vec::with_capacity(len);
    let mut dh_next = vec![0.0; n];
    for t in (0..len).rev() {
        let step = &trace.steps[t];
        let h_prev = &trace.hidden[t];
        let x = &trace.inputs[t];
        let dh: Vec<f64> = (0..n).map(|i| upstream[i] * pooled_share + dh_next[i]).collect();

        let mut dh_prev: Vec<f64> = (0..n).map(|i| dh[i] * (1.0 - step.z[i])).collect();
        let da_z: Vec<f64> = (0..n)
            .map(|i| dh[i] * (step.candidate[i] - h_prev[i]) * step.z[i] * (1.0 - step.z[i]))
            .collect();
        let da_h: Vec<f64> = (0..n)
            .map(|i| dh[i] * step.z[i] * (1.0 - step.candidate[i] * step.candidate[i]))
            .collect();
        let gated: Vec<f64> = (0..n).map(|i| step.r[i] * h_prev[i]).collect();

        let mut dx = vec![0.0; w.input_dim()];
        grad.w_h.add_outer(1.0, &da_h, x);
        grad.u_h.add_outer(1.0, &da_h, &gated);
        axpy(1.0, &da_h, &mut grad.b_h);
        w.w_h.tmul_vec_add(&da_h, &mut dx);
        let mut d_gated = vec![0.0; n];
        w.u_h.tmul_vec_add(&da_h, &mut d_gated);
        for i in 0..n {
            dh_prev[i] += d_gated[i] * step.r[i];
        }
        let da_r: Vec<f64> = (0..n)
            .map(|i| d_gated[i] * h_prev[i] * step.r[i] * (1.0 - step.r[i]))
            .collect();

        grad.w_z.add_outer(1.0, &da_z, x);
        grad.u_z.add_outer(1.0, &da_z, h_prev);
        axpy(1.0, &da_z, &mut grad.b_z);
        w.w_z.tmul_vec_add(&da_z, &mut dx);
        w.u_z.tmul_vec_add(&da_z, &mut dh_prev);

        grad.w_r.add_outer(1.0, &da_r, x);
        grad.u_r.add_outer(1.0, &da_r, h_prev);
        axpy(1.0, &da_r, &mut grad.b_r);
        w.w_r.tmul_vec_add(&da_r, &mut dx);
        w.u_r.tmul_vec_add(&da_r, &mut dh_prev);

        word_grads.push((trace.tokens[t], dx));
        dh_next = dh_prev;
    }
    word_grads.reverse();
    (grad, word_grads)
}
