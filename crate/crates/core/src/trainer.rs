//! Link scores, the two negative-sampling loss branches, and the joint SGD
//! loop that picks a branch per step with probability `alpha`.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::encoders::{encode, encode_backward, encode_only, EncodeGrad};
use crate::error::{Error, Result};
use crate::graph::{AugmentedNetwork, ContentId, NodeId};
use crate::linalg::{axpy, dot, log_sigmoid, sigmoid};
use crate::params::{EncoderKind, ModelParams, NodeTable};
use crate::sampler::{
    sample_negatives_nc, sample_negatives_nn, sample_positive, Link, LinkKind, NegTable,
};

pub type Branch = LinkKind;

fn branch_name(b: Branch) -> &'static str {
    match b {
        LinkKind::NodeNode => "nn",
        LinkKind::NodeContent => "nc",
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrainConfig {
    /// Probability of a node-node step; `1 - alpha` for node-content.
    pub alpha: f64,
    pub dim: usize,
    pub encoder: EncoderKind,
    pub neg_nn: usize,
    pub neg_nc: usize,
    pub eta0: f64,
    /// Passes over `|E_nn| + |E_nc|`; ignored when `max_steps` is set.
    pub epochs: usize,
    pub max_steps: Option<u64>,
    /// Score node pairs through the in/out halves instead of full vectors.
    pub directed_score: bool,
    pub seed: u64,
    pub workers: usize,
    pub freeze_words: bool,
    /// Global-norm clip for encoder and word gradients.
    pub grad_clip: Option<f64>,
    pub uniform_negatives: bool,
    /// Steps per loss-trace window.
    pub trace_every: u64,
}

impl TrainConfig {
    pub fn new(encoder: EncoderKind) -> Self {
        TrainConfig {
            alpha: 0.5,
            dim: 200,
            encoder,
            neg_nn: 15,
            neg_nc: 25,
            eta0: encoder.default_eta0(),
            epochs: 100,
            max_steps: None,
            directed_score: true,
            seed: 1,
            workers: 1,
            freeze_words: false,
            grad_clip: None,
            uniform_negatives: false,
            trace_every: 1000,
        }
    }

    pub fn total_steps(&self, net: &AugmentedNetwork) -> u64 {
        self.max_steps.unwrap_or_else(|| {
            self.epochs as u64 * (net.edges_nn().len() + net.edges_nc().len()) as u64
        })
    }

    /// `max(eta0 · (1 − step/max_steps), eta0 · 1e-4)`
    pub fn learning_rate(&self, step: u64, max_steps: u64) -> f64 {
        let progress = step as f64 / max_steps.max(1) as f64;
        (self.eta0 * (1.0 - progress)).max(self.eta0 * 1e-4)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidConfig(format!("alpha must lie in [0, 1], got {}", self.alpha)));
        }
        if self.dim < 2 || !self.dim.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!("dim must be even and >= 2, got {}", self.dim)));
        }
        if !(self.eta0 > 0.0 && self.eta0.is_finite()) {
            return Err(Error::InvalidConfig(format!("eta0 must be positive, got {}", self.eta0)));
        }
        if self.neg_nn == 0 || self.neg_nc == 0 {
            return Err(Error::InvalidConfig("negative sample counts must be >= 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("workers must be >= 1".into()));
        }
        if matches!(self.grad_clip, Some(c) if !(c > 0.0)) {
            return Err(Error::InvalidConfig("grad_clip must be positive".into()));
        }
        if self.trace_every == 0 {
            return Err(Error::InvalidConfig("trace_every must be >= 1".into()));
        }
        Ok(())
    }
}

/// Pre-sigmoid node-node score for edge `(u, v)`.
pub fn score_nn_logit(nodes: &NodeTable, u: NodeId, v: NodeId, directed: bool) -> f64 {
    if directed {
        dot(nodes.in_half(v), nodes.out_half(u))
    } else {
        dot(nodes.vector(u), nodes.vector(v))
    }
}

/// `σ(e_v^in · e_u^out)` when directed, `σ(e_u · e_v)` otherwise.
pub fn score_nn(params: &ModelParams, u: NodeId, v: NodeId, directed: bool) -> f64 {
    sigmoid(score_nn_logit(&params.nodes, u, v, directed))
}

/// `σ((e_u^out ⊕ e_u^in) · f)` for a composed sentence vector `f`.
pub fn score_nc(params: &ModelParams, u: NodeId, sentence_embedding: &[f64]) -> Result<f64> {
    if sentence_embedding.len() != params.dim() {
        return Err(Error::DimensionMismatch {
            expected: params.dim(),
            found: sentence_embedding.len(),
        });
    }
    Ok(sigmoid(dot(
        &params.nodes.concat_out_in(u),
        sentence_embedding,
    )))
}

/// Per-step loss `−log σ(s⁺) − Σ log σ(−s⁻)` and its gradient as
/// full-width node-vector rows.
#[derive(Clone, Debug)]
pub struct NodeGrad {
    pub loss: f64,
    pub rows: Vec<(NodeId, Vec<f64>)>,
}

pub fn nn_loss_and_grad(
    nodes: &NodeTable,
    u: NodeId,
    v: NodeId,
    negatives: &[NodeId],
    directed: bool,
) -> NodeGrad {
    let d = nodes.dim();
    let h = nodes.half();
    let mut grad_u = vec![0.0; d];
    let mut rows = Vec::with_capacity(negatives.len() + 2);
    let mut loss = 0.0;
    let targets = std::iter::once((v, 1.0)).chain(negatives.iter().map(|&n| (n, 0.0)));
    for (t, label) in targets {
        let s = score_nn_logit(nodes, u, t, directed);
        loss -= if label > 0.0 { log_sigmoid(s) } else { log_sigmoid(-s) };
        let g = sigmoid(s) - label;
        let mut grad_t = vec![0.0; d];
        if directed {
            axpy(g, nodes.in_half(t), &mut grad_u[h..]);
            axpy(g, nodes.out_half(u), &mut grad_t[..h]);
        } else {
            axpy(g, nodes.vector(t), &mut grad_u);
            axpy(g, nodes.vector(u), &mut grad_t);
        }
        rows.push((t, grad_t));
    }
    rows.push((u, grad_u));
    NodeGrad { loss, rows }
}

pub fn nn_loss(nodes: &NodeTable, u: NodeId, v: NodeId, negatives: &[NodeId], directed: bool) -> f64 {
    let pos = -log_sigmoid(score_nn_logit(nodes, u, v, directed));
    negatives.iter().fold(pos, |acc, &n| {
        acc - log_sigmoid(-score_nn_logit(nodes, u, n, directed))
    })
}

/// One SGD step on a node-node edge and its negatives. Returns the loss
/// before the update.
pub fn step_nn(
    params: &mut ModelParams,
    u: NodeId,
    v: NodeId,
    negatives: &[NodeId],
    eta: f64,
    directed: bool,
) -> f64 {
    let grad = nn_loss_and_grad(&params.nodes, u, v, negatives, directed);
    for (id, g) in &grad.rows {
        axpy(-eta, g, params.nodes.vector_mut(*id));
    }
    grad.loss
}

/// Node-content loss and gradients for the node vector (stored layout,
/// in-half first), encoder weights and word occurrences.
#[derive(Clone, Debug)]
pub struct ContentGrad {
    pub loss: f64,
    pub node: Vec<f64>,
    pub encoder: EncodeGrad,
}

pub fn nc_loss_and_grad(
    params: &ModelParams,
    net: &AugmentedNetwork,
    u: NodeId,
    c: ContentId,
    negatives: &[ContentId],
) -> Result<ContentGrad> {
    let d = params.dim();
    let h = d / 2;
    let cat = params.nodes.concat_out_in(u);
    let mut cat_grad = vec![0.0; d];
    let mut enc_grad = EncodeGrad::zeros_for(&params.encoder);
    let mut loss = 0.0;
    let targets = std::iter::once((c, 1.0)).chain(negatives.iter().map(|&n| (n, 0.0)));
    for (t, label) in targets {
        let tokens = net.sentence(t).tokens();
        let (f, trace) = encode(tokens, &params.words, &params.encoder)?;
        if f.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: f.len(),
            });
        }
        let s = dot(&cat, &f);
        loss -= if label > 0.0 { log_sigmoid(s) } else { log_sigmoid(-s) };
        let g = sigmoid(s) - label;
        axpy(g, &f, &mut cat_grad);
        let upstream: Vec<f64> = cat.iter().map(|x| g * x).collect();
        enc_grad.accumulate(encode_backward(&trace, &upstream, &params.encoder)?);
    }
    let mut node = Vec::with_capacity(d);
    node.extend_from_slice(&cat_grad[h..]);
    node.extend_from_slice(&cat_grad[..h]);
    Ok(ContentGrad {
        loss,
        node,
        encoder: enc_grad,
    })
}

pub fn nc_loss(
    params: &ModelParams,
    net: &AugmentedNetwork,
    u: NodeId,
    c: ContentId,
    negatives: &[ContentId],
) -> Result<f64> {
    let cat = params.nodes.concat_out_in(u);
    let mut loss = 0.0;
    let targets = std::iter::once((c, 1.0)).chain(negatives.iter().map(|&n| (n, 0.0)));
    for (t, label) in targets {
        let f = encode_only(net.sentence(t).tokens(), &params.words, &params.encoder)?;
        let s = dot(&cat, &f);
        loss -= if label > 0.0 { log_sigmoid(s) } else { log_sigmoid(-s) };
    }
    Ok(loss)
}

/// One SGD step on a node-content edge. Word vectors are left alone when
/// `params.freeze_words` is set.
pub fn step_nc(
    params: &mut ModelParams,
    net: &AugmentedNetwork,
    u: NodeId,
    c: ContentId,
    negatives: &[ContentId],
    eta: f64,
    grad_clip: Option<f64>,
) -> Result<f64> {
    let mut grad = nc_loss_and_grad(params, net, u, c, negatives)?;
    axpy(-eta, &grad.node, params.nodes.vector_mut(u));
    if let Some(max_norm) = grad_clip {
        grad.encoder.clip_norm(max_norm);
    }
    for (w, g) in params
        .encoder
        .directions_mut()
        .into_iter()
        .zip(&grad.encoder.weights)
    {
        w.add_scaled(-eta, g);
    }
    if !params.freeze_words {
        for (word, g) in &grad.encoder.words {
            axpy(-eta, g, params.words.row_mut(*word as usize));
        }
    }
    Ok(grad.loss)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepReport {
    pub step: u64,
    pub branch: Branch,
    pub loss: f64,
    pub eta: f64,
}

/// One row of the loss trace: mean loss of one branch over a window.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    /// Last step (exclusive) of the window.
    pub step: u64,
    pub branch: Branch,
    pub window_mean_loss: f64,
    pub eta: f64,
}

#[derive(Clone, Debug, Default)]
pub struct TrainOutcome {
    pub steps: u64,
    pub nn_steps: u64,
    pub nc_steps: u64,
    /// Node-node pair scores evaluated (positives and negatives).
    pub nn_scores: u64,
    /// Node-content pair scores evaluated (positives and negatives).
    pub nc_scores: u64,
    pub trace: Vec<TraceRow>,
    /// Mean step loss over the first 10% of steps.
    pub first_decile_loss: f64,
    /// Mean step loss over the last 10% of steps.
    pub last_decile_loss: f64,
}

pub fn write_loss_csv<W: Write>(mut out: W, rows: &[TraceRow]) -> std::io::Result<()> {
    writeln!(out, "step,branch,window_mean_loss,eta")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{:.6},{:.8}",
            r.step,
            branch_name(r.branch),
            r.window_mean_loss,
            r.eta
        )?;
    }
    Ok(())
}

#[derive(Default)]
struct Tally {
    nn_steps: u64,
    nc_steps: u64,
    nn_scores: u64,
    nc_scores: u64,
    first: (f64, u64),
    last: (f64, u64),
    windows: BTreeMap<(u64, u8), (f64, u64)>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.nn_steps += other.nn_steps;
        self.nc_steps += other.nc_steps;
        self.nn_scores += other.nn_scores;
        self.nc_scores += other.nc_scores;
        self.first.0 += other.first.0;
        self.first.1 += other.first.1;
        self.last.0 += other.last.0;
        self.last.1 += other.last.1;
        for (k, (s, n)) in other.windows {
            let e = self.windows.entry(k).or_default();
            e.0 += s;
            e.1 += n;
        }
    }
}

struct Tables {
    nodes: Option<NegTable>,
    contents: Option<NegTable>,
}

/// Raw pointer to parameters shared by lock-free workers.
struct SharedParams(*mut ModelParams);

// Workers update disjoint-or-overlapping rows without synchronization; lost
// updates are tolerated as in other asynchronous SGD embedding trainers. No
// buffer is ever resized while workers run.
unsafe impl Send for SharedParams {}
unsafe impl Sync for SharedParams {}

impl SharedParams {
    fn get(&self) -> *mut ModelParams {
        self.0
    }
}

/// Joint training. With `workers == 1` the run is bit-reproducible for a
/// fixed seed.
pub fn train(
    net: &AugmentedNetwork,
    params: &mut ModelParams,
    config: &TrainConfig,
) -> Result<TrainOutcome> {
    config.validate()?;
    if params.dim() != config.dim {
        return Err(Error::DimensionMismatch {
            expected: config.dim,
            found: params.dim(),
        });
    }
    if params.encoder.kind() != config.encoder {
        return Err(Error::InvalidConfig(format!(
            "parameters hold a {} encoder but the configuration asks for {}",
            params.encoder.kind(),
            config.encoder
        )));
    }
    if params.nodes.len() != net.node_count() {
        return Err(Error::DimensionMismatch {
            expected: net.node_count(),
            found: params.nodes.len(),
        });
    }
    if config.alpha > 0.0 && net.edges_nn().is_empty() {
        return Err(Error::InvalidConfig(
            "alpha > 0 requires at least one node-node edge".into(),
        ));
    }
    if config.alpha < 1.0 && net.edges_nc().is_empty() {
        return Err(Error::InvalidConfig(
            "alpha < 1 requires node contents (no node-content edges were loaded)".into(),
        ));
    }
    let tables = Tables {
        nodes: (config.alpha > 0.0)
            .then(|| NegTable::for_nodes(net, config.uniform_negatives))
            .transpose()?,
        contents: (config.alpha < 1.0)
            .then(|| NegTable::for_contents(net, config.uniform_negatives))
            .transpose()?,
    };
    params.freeze_words = config.freeze_words;

    let max_steps = config.total_steps(net);
    let counter = AtomicU64::new(0);
    let collected = Mutex::new(Tally::default());
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let shared = SharedParams(params as *mut ModelParams);

    let worker = |id: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(id as u64));
        // SAFETY: see `SharedParams`. The pointer outlives the scope below.
        let params = unsafe { &mut *shared.get() };
        let mut tally = Tally::default();
        loop {
            let step = counter.fetch_add(1, Ordering::Relaxed);
            if step >= max_steps {
                break;
            }
            match run_step(&mut rng, net, params, config, &tables, step, max_steps, &mut tally) {
                Ok(report) => record(&mut tally, &report, config, max_steps),
                Err(e) => {
                    failure.lock().unwrap().get_or_insert(e);
                    counter.store(max_steps, Ordering::Relaxed);
                    break;
                }
            }
        }
        collected.lock().unwrap().merge(tally);
    };

    if config.workers == 1 {
        worker(0);
    } else {
        std::thread::scope(|s| {
            for id in 0..config.workers {
                let worker = &worker;
                s.spawn(move || worker(id));
            }
        });
    }

    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    if !params.all_finite() {
        return Err(Error::Degenerate(
            "training produced non-finite parameters; lower eta0 or set grad_clip".into(),
        ));
    }

    let tally = collected.into_inner().unwrap();
    let trace = tally
        .windows
        .iter()
        .map(|(&(window, b), &(sum, n))| {
            let end = ((window + 1) * config.trace_every).min(max_steps);
            TraceRow {
                step: end,
                branch: if b == 0 { LinkKind::NodeNode } else { LinkKind::NodeContent },
                window_mean_loss: sum / n as f64,
                eta: config.learning_rate(end - 1, max_steps),
            }
        })
        .collect();
    let mean = |(s, n): (f64, u64)| if n == 0 { f64::NAN } else { s / n as f64 };
    Ok(TrainOutcome {
        steps: max_steps,
        nn_steps: tally.nn_steps,
        nc_steps: tally.nc_steps,
        nn_scores: tally.nn_scores,
        nc_scores: tally.nc_scores,
        trace,
        first_decile_loss: mean(tally.first),
        last_decile_loss: mean(tally.last),
    })
}

#[allow(clippy::too_many_arguments)]
fn run_step(
    rng: &mut ChaCha8Rng,
    net: &AugmentedNetwork,
    params: &mut ModelParams,
    config: &TrainConfig,
    tables: &Tables,
    step: u64,
    max_steps: u64,
    tally: &mut Tally,
) -> Result<StepReport> {
    let eta = config.learning_rate(step, max_steps);
    let x: f64 = rng.random();
    if x < config.alpha {
        let Link::NodeNode(u, v) = sample_positive(rng, net, LinkKind::NodeNode)? else {
            unreachable!()
        };
        let table = tables.nodes.as_ref().expect("node table built when alpha > 0");
        let negatives = sample_negatives_nn(rng, u, config.neg_nn, net, table);
        tally.nn_steps += 1;
        tally.nn_scores += 1 + negatives.len() as u64;
        let loss = step_nn(params, u, v, &negatives, eta, config.directed_score);
        Ok(StepReport {
            step,
            branch: LinkKind::NodeNode,
            loss,
            eta,
        })
    } else {
        let Link::NodeContent(u, c) = sample_positive(rng, net, LinkKind::NodeContent)? else {
            unreachable!()
        };
        let table = tables.contents.as_ref().expect("content table built when alpha < 1");
        let negatives = sample_negatives_nc(rng, u, config.neg_nc, net, table);
        tally.nc_steps += 1;
        tally.nc_scores += 1 + negatives.len() as u64;
        let loss = step_nc(params, net, u, c, &negatives, eta, config.grad_clip)?;
        Ok(StepReport {
            step,
            branch: LinkKind::NodeContent,
            loss,
            eta,
        })
    }
}

fn record(tally: &mut Tally, report: &StepReport, config: &TrainConfig, max_steps: u64) {
    let decile = (max_steps / 10).max(1);
    if report.step < decile {
        tally.first.0 += report.loss;
        tally.first.1 += 1;
    }
    if report.step >= max_steps.saturating_sub(decile) {
        tally.last.0 += report.loss;
        tally.last.1 += 1;
    }
    let b = match report.branch {
        LinkKind::NodeNode => 0,
        LinkKind::NodeContent => 1,
    };
    let e = tally
        .windows
        .entry((report.step / config.trace_every, b))
        .or_default();
    e.0 += report.loss;
    e.1 += 1;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdcheck::{numeric_grad, rel_error};
    use crate::graph::{build_augmented, read_contents, read_edges, NodeIndex};
    use crate::params::init_params;
    use std::io::Cursor;

    fn small_network() -> AugmentedNetwork {
        let edges: String = (0..12)
            .flat_map(|i| [format!("n{i}\tn{}\n", (i + 1) % 12), format!("n{i}\tn{}\n", (i + 5) % 12)])
            .collect();
        let docs: String = (0..12)
            .map(|i| format!("n{i}\tw{} w{} w{}. w{} w{}\n", i % 3, i % 5, i % 7, i % 4, (i + 2) % 6))
            .collect();
        let mut nodes = NodeIndex::new();
        let e = read_edges(Cursor::new(edges), "e", true, &mut nodes).unwrap();
        let c = read_contents(Cursor::new(docs), "c", 1, &mut nodes).unwrap();
        build_augmented(nodes, e, c).unwrap()
    }

    fn scaled_params(net: &AugmentedNetwork, d: usize, kind: EncoderKind, seed: u64) -> ModelParams {
        let mut p = init_params(net.node_count(), net.vocab().len(), d, kind, seed).unwrap();
        // Larger vectors than the default init so gradients are well above
        // finite-difference noise.
        let factor = d as f64;
        p.nodes.table_mut().as_mut_slice().iter_mut().for_each(|x| *x *= factor);
        p.words.as_mut_slice().iter_mut().for_each(|x| *x *= factor);
        p
    }

    fn logistic(x: f64) -> f64 {
        1.0 / (1.0 + (-x).exp())
    }

    #[test]
    fn zero_vectors_score_one_half() {
        let mut p = init_params(3, 3, 4, EncoderKind::WAvg, 0).unwrap();
        p.nodes.table_mut().as_mut_slice().fill(0.0);
        assert_eq!(score_nn(&p, NodeId(0), NodeId(1), true), 0.5);
        assert_eq!(score_nn(&p, NodeId(0), NodeId(1), false), 0.5);
        assert_eq!(score_nc(&p, NodeId(2), &[3.0, -1.0, 2.0, 9.0]).unwrap(), 0.5);
        assert!(score_nc(&p, NodeId(2), &[1.0]).is_err());
    }

    #[test]
    fn directed_score_uses_target_in_and_source_out() {
        let mut p = init_params(2, 2, 4, EncoderKind::WAvg, 0).unwrap();
        p.nodes.vector_mut(NodeId(0)).copy_from_slice(&[9.0, 9.0, 1.0, 0.5]);
        p.nodes.vector_mut(NodeId(1)).copy_from_slice(&[1.0, 2.0, -7.0, 7.0]);
        let s = score_nn(&p, NodeId(0), NodeId(1), true);
        assert!((s - logistic(2.0)).abs() < 1e-15);
        assert!((s - 0.880797).abs() < 1e-6);
        assert!((score_nn(&p, NodeId(1), NodeId(0), true) - s).abs() > 1e-3);
    }

    #[test]
    fn symmetric_score_is_symmetric() {
        let net = small_network();
        let p = scaled_params(&net, 6, EncoderKind::WAvg, 3);
        for (u, v) in [(0, 1), (4, 9), (11, 2)] {
            let (u, v) = (NodeId(u), NodeId(v));
            assert_eq!(score_nn(&p, u, v, false), score_nn(&p, v, u, false));
        }
    }

    #[test]
    fn content_score_concatenates_out_then_in() {
        let mut p = init_params(1, 2, 4, EncoderKind::WAvg, 0).unwrap();
        p.nodes.vector_mut(NodeId(0)).copy_from_slice(&[1.0, 2.0, 3.0, 4.0]);
        let f = [0.5, -1.0, 0.25, 2.0];
        let expected = logistic(3.0 * 0.5 + 4.0 * -1.0 + 1.0 * 0.25 + 2.0 * 2.0);
        assert!((score_nc(&p, NodeId(0), &f).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn content_score_matches_scalar_oracle() {
        let net = small_network();
        let p = scaled_params(&net, 8, EncoderKind::WAvg, 4);
        let f: Vec<f64> = (0..8).map(|i| (i as f64 * 0.37).sin()).collect();
        for u in 0..net.node_count() {
            let v = p.nodes.vector(NodeId(u));
            let mut s = 0.0;
            for i in 0..4 {
                s += v[4 + i] * f[i] + v[i] * f[4 + i];
            }
            let got = score_nc(&p, NodeId(u), &f).unwrap();
            assert!((got - logistic(s)).abs() < 1e-12);
        }
    }

    #[test]
    fn nn_gradient_matches_finite_differences() {
        let net = small_network();
        for directed in [true, false] {
            let p = scaled_params(&net, 8, EncoderKind::WAvg, 5);
            let (u, v) = net.edges_nn()[3];
            let negs = [NodeId(7), NodeId(10)];
            let grad = nn_loss_and_grad(&p.nodes, u, v, &negs, directed);
            assert!((grad.loss - nn_loss(&p.nodes, u, v, &negs, directed)).abs() < 1e-12);
            let mut analytic = vec![0.0; p.nodes.table().as_slice().len()];
            for (id, g) in &grad.rows {
                axpy(1.0, g, &mut analytic[id.0 * 8..(id.0 + 1) * 8]);
            }
            let numeric = numeric_grad(
                &p,
                |q| q.nodes.table_mut().as_mut_slice(),
                |q| nn_loss(&q.nodes, u, v, &negs, directed),
            );
            let err = rel_error(&analytic, &numeric);
            assert!(err < 1e-6, "directed={directed}: {err}");
            // The out-half of u in isolation.
            let out_u = |x: &[f64]| x[u.0 * 8 + 4..u.0 * 8 + 8].to_vec();
            if directed {
                assert!(rel_error(&out_u(&analytic), &out_u(&numeric)) < 1e-6);
            }
        }
    }

    #[test]
    fn nn_step_moves_scores_the_right_way() {
        let net = small_network();
        let mut p = scaled_params(&net, 8, EncoderKind::WAvg, 6);
        let (u, v) = net.edges_nn()[0];
        let before = score_nn_logit(&p.nodes, u, v, true);
        step_nn(&mut p, u, v, &[], 0.1, true);
        assert!(score_nn_logit(&p.nodes, u, v, true) > before);

        let negs = [NodeId(6), NodeId(8)];
        let neg_before: Vec<f64> = negs.iter().map(|&n| score_nn_logit(&p.nodes, u, n, true)).collect();
        step_nn(&mut p, u, v, &negs, 0.05, true);
        for (i, &n) in negs.iter().enumerate() {
            assert!(score_nn_logit(&p.nodes, u, n, true) < neg_before[i]);
        }
    }

    #[test]
    fn nc_gradient_matches_finite_differences_for_every_encoder() {
        let net = small_network();
        for kind in EncoderKind::ALL {
            let p = scaled_params(&net, 6, kind, 7);
            let (u, c) = net.edges_nc()[5];
            let negs: Vec<ContentId> = (0..net.content_count())
                .map(ContentId)
                .filter(|&x| !net.has_edge_nc(u, x))
                .take(3)
                .collect();
            let grad = nc_loss_and_grad(&p, &net, u, c, &negs).unwrap();
            let loss = |q: &ModelParams| nc_loss(q, &net, u, c, &negs).unwrap();
            assert!((grad.loss - loss(&p)).abs() < 1e-12);

            let numeric = numeric_grad(&p, |q| q.nodes.vector_mut(u), loss);
            assert!(rel_error(&grad.node, &numeric) < 1e-4, "{kind}: node");

            let mut words = vec![0.0; p.words.as_slice().len()];
            for (w, g) in &grad.encoder.words {
                let w = *w as usize;
                axpy(1.0, g, &mut words[w * 6..(w + 1) * 6]);
            }
            let numeric = numeric_grad(&p, |q| q.words.as_mut_slice(), loss);
            assert!(rel_error(&words, &numeric) < 1e-4, "{kind}: words");

            for (d, gw) in grad.encoder.weights.iter().enumerate() {
                for t in 0..9 {
                    let numeric = numeric_grad(
                        &p,
                        |q| q.encoder.directions_mut().into_iter().nth(d).unwrap().tensors_mut().into_iter().nth(t).unwrap(),
                        loss,
                    );
                    let err = rel_error(gw.tensors()[t], &numeric);
                    assert!(err < 1e-4, "{kind} dir {d} tensor {t}: {err}");
                }
            }
        }
    }

    #[test]
    fn frozen_words_stay_put() {
        let net = small_network();
        let mut p = scaled_params(&net, 6, EncoderKind::Gru, 8);
        p.freeze_words = true;
        let words = p.words.clone();
        let encoder = p.encoder.clone();
        let (u, c) = net.edges_nc()[0];
        step_nc(&mut p, &net, u, c, &[], 0.1, None).unwrap();
        assert_eq!(p.words, words);
        assert_ne!(p.encoder, encoder);
    }

    #[test]
    fn single_word_wavg_gradient_is_the_node_side_upstream() {
        let mut nodes = NodeIndex::new();
        let e = read_edges(Cursor::new("a\tb\n"), "e", true, &mut nodes).unwrap();
        let c = read_contents(Cursor::new("a\thello\n"), "c", 1, &mut nodes).unwrap();
        let net = build_augmented(nodes, e, c).unwrap();
        let p = scaled_params(&net, 4, EncoderKind::WAvg, 9);
        let u = NodeId(0);
        let grad = nc_loss_and_grad(&p, &net, u, ContentId(0), &[]).unwrap();
        let f = encode_only(net.sentence(ContentId(0)).tokens(), &p.words, &p.encoder).unwrap();
        let cat = p.nodes.concat_out_in(u);
        let g = sigmoid(dot(&cat, &f)) - 1.0;
        let expected: Vec<f64> = cat.iter().map(|x| g * x).collect();
        assert_eq!(grad.encoder.words.len(), 1);
        for (a, b) in grad.encoder.words[0].1.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    fn config(kind: EncoderKind, alpha: f64, steps: u64) -> TrainConfig {
        TrainConfig {
            alpha,
            dim: 6,
            max_steps: Some(steps),
            neg_nn: 3,
            neg_nc: 3,
            ..TrainConfig::new(kind)
        }
    }

    #[test]
    fn alpha_one_never_touches_content_parameters() {
        let net = small_network();
        for kind in EncoderKind::ALL {
            let mut p = init_params(net.node_count(), net.vocab().len(), 6, kind, 1).unwrap();
            let before = p.clone();
            let out = train(&net, &mut p, &config(kind, 1.0, 2000)).unwrap();
            assert_eq!(out.nc_steps, 0);
            assert_eq!(p.words, before.words);
            assert_eq!(p.encoder, before.encoder);
            assert_ne!(p.nodes, before.nodes);
        }
    }

    #[test]
    fn alpha_zero_never_scores_node_pairs() {
        let net = small_network();
        let mut p = init_params(net.node_count(), net.vocab().len(), 6, EncoderKind::WAvg, 1).unwrap();
        let before = p.clone();
        let out = train(&net, &mut p, &config(EncoderKind::WAvg, 0.0, 2000)).unwrap();
        assert_eq!(out.nn_scores, 0);
        assert_eq!(out.nn_steps, 0);
        assert_eq!(out.nc_steps, 2000);
        assert_ne!(p.nodes, before.nodes);
    }

    #[test]
    fn single_worker_runs_are_bit_reproducible() {
        let net = small_network();
        let run = || {
            let mut p = init_params(net.node_count(), net.vocab().len(), 6, EncoderKind::BiGru, 3).unwrap();
            let out = train(&net, &mut p, &config(EncoderKind::BiGru, 0.4, 1500)).unwrap();
            (p, out.trace)
        };
        let (a, ta) = run();
        let (b, tb) = run();
        assert_eq!(a, b);
        assert_eq!(ta, tb);
    }

    #[test]
    fn multi_worker_training_stays_finite() {
        let net = small_network();
        let mut p = init_params(net.node_count(), net.vocab().len(), 6, EncoderKind::Gru, 3).unwrap();
        let cfg = TrainConfig {
            workers: 4,
            ..config(EncoderKind::Gru, 0.5, 4000)
        };
        let out = train(&net, &mut p, &cfg).unwrap();
        assert_eq!(out.nn_steps + out.nc_steps, 4000);
        assert!(p.all_finite());
    }

    #[test]
    fn preconditions_are_checked() {
        let mut nodes = NodeIndex::new();
        let e = read_edges(Cursor::new("a\tb\n"), "e", true, &mut nodes).unwrap();
        let net = build_augmented(nodes, e, crate::graph::ContentCorpus::empty()).unwrap();
        let mut p = init_params(2, 2, 6, EncoderKind::WAvg, 0).unwrap();
        assert!(train(&net, &mut p, &config(EncoderKind::WAvg, 0.5, 10)).is_err());
        assert!(train(&net, &mut p, &config(EncoderKind::WAvg, 1.0, 10)).is_ok());
        assert!(train(&net, &mut p, &config(EncoderKind::WAvg, 1.5, 10)).is_err());
        assert!(train(&net, &mut p, &config(EncoderKind::Gru, 1.0, 10)).is_err());
    }

    #[test]
    fn learning_rate_decays_linearly_to_a_floor() {
        let c = TrainConfig::new(EncoderKind::WAvg);
        assert_eq!(c.learning_rate(0, 100), 0.025);
        assert!((c.learning_rate(50, 100) - 0.0125).abs() < 1e-15);
        assert_eq!(c.learning_rate(100, 100), 0.025 * 1e-4);
        assert_eq!(TrainConfig::new(EncoderKind::BiGru).eta0, 0.01);
    }

    #[test]
    fn loss_csv_has_expected_header() {
        let rows = vec![TraceRow {
            step: 1000,
            branch: LinkKind::NodeContent,
            window_mean_loss: 1.5,
            eta: 0.02,
        }];
        let mut buf = Vec::new();
        write_loss_csv(&mut buf, &rows).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "step,branch,window_mean_loss,eta\n1000,nc,1.500000,0.02000000\n"
        );
    }
}
