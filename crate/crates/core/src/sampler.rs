//! Positive link sampling and rejection-sampled negatives.

use rand::distr::Distribution;
use rand::Rng;
use rand_distr::weighted::WeightedAliasIndex;

use crate::error::{Error, Result};
use crate::graph::{AugmentedNetwork, ContentId, NodeId};

/// Exponent applied to degree counts for the negative distribution.
pub const NEG_POWER: f64 = 0.75;

/// Attempts per requested negative before giving up on a dense neighbourhood.
pub const REJECTION_FACTOR: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkKind {
    NodeNode,
    NodeContent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Link {
    NodeNode(NodeId, NodeId),
    NodeContent(NodeId, ContentId),
}

/// Alias table over candidate ids.
#[derive(Clone, Debug)]
pub struct NegTable {
    alias: WeightedAliasIndex<f64>,
    probabilities: Vec<f64>,
}

impl NegTable {
    /// Weights `count^power`. Fails if every weight is zero.
    pub fn from_counts(counts: &[usize], power: f64) -> Result<Self> {
        let weights: Vec<f64> = counts.iter().map(|&c| (c as f64).powf(power)).collect();
        Self::from_weights(weights)
    }

    pub fn uniform(len: usize) -> Result<Self> {
        Self::from_weights(vec![1.0; len])
    }

    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) || !(total > 0.0) {
            return Err(Error::Degenerate(
                "negative sampling table needs non-negative weights with a positive sum".into(),
            ));
        }
        let probabilities = weights.iter().map(|w| w / total).collect();
        let alias = WeightedAliasIndex::new(weights)
            .map_err(|e| Error::Degenerate(format!("negative sampling table: {e}")))?;
        Ok(NegTable {
            alias,
            probabilities,
        })
    }

    /// Node table weighted by in-degree.
    pub fn for_nodes(net: &AugmentedNetwork, uniform: bool) -> Result<Self> {
        if uniform {
            Self::uniform(net.node_count())
        } else {
            Self::from_counts(net.in_degrees(), NEG_POWER)
        }
    }

    /// Content table weighted by the number of attached nodes.
    pub fn for_contents(net: &AugmentedNetwork, uniform: bool) -> Result<Self> {
        if uniform {
            Self::uniform(net.content_count())
        } else {
            Self::from_counts(net.attachment_counts(), NEG_POWER)
        }
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.alias.sample(rng)
    }
}

/// Uniform draw from the edge list of `kind`.
pub fn sample_positive<R: Rng + ?Sized>(
    rng: &mut R,
    net: &AugmentedNetwork,
    kind: LinkKind,
) -> Result<Link> {
    match kind {
        LinkKind::NodeNode => {
            let edges = net.edges_nn();
            if edges.is_empty() {
                return Err(Error::EmptyInput("node-node edge list".into()));
            }
            let (u, v) = edges[rng.random_range(0..edges.len())];
            Ok(Link::NodeNode(u, v))
        }
        LinkKind::NodeContent => {
            let edges = net.edges_nc();
            if edges.is_empty() {
                return Err(Error::EmptyInput("node-content edge list".into()));
            }
            let (u, c) = edges[rng.random_range(0..edges.len())];
            Ok(Link::NodeContent(u, c))
        }
    }
}

fn rejection_sample<R, F>(rng: &mut R, k: usize, table: &NegTable, valid: F) -> Vec<usize>
where
    R: Rng + ?Sized,
    F: Fn(usize) -> bool,
{
    let mut out = Vec::with_capacity(k);
    for _ in 0..REJECTION_FACTOR * k {
        if out.len() == k {
            break;
        }
        let cand = table.sample(rng);
        if valid(cand) && !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

/// Up to `k` distinct nodes `v'` with `v' != u` and `(u, v')` not an edge.
pub fn sample_negatives_nn<R: Rng + ?Sized>(
    rng: &mut R,
    u: NodeId,
    k: usize,
    net: &AugmentedNetwork,
    table: &NegTable,
) -> Vec<NodeId> {
    rejection_sample(rng, k, table, |v| {
        let v = NodeId(v);
        v != u && !net.has_edge_nn(u, v)
    })
    .into_iter()
    .map(NodeId)
    .collect()
}

/// Up to `k` distinct contents `c'` with `(u, c')` not an edge.
pub fn sample_negatives_nc<R: Rng + ?Sized>(
    rng: &mut R,
    u: NodeId,
    k: usize,
    net: &AugmentedNetwork,
    table: &NegTable,
) -> Vec<ContentId> {
    rejection_sample(rng, k, table, |c| !net.has_edge_nc(u, ContentId(c)))
        .into_iter()
        .map(ContentId)
        .collect()
}
