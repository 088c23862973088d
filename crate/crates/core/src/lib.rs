//! Joint node/content network embeddings.
//!
//! Each sentence attached to a node becomes a content node of an augmented
//! graph. Node vectors are trained with negative sampling on two link types:
//! node→node edges scored through split in/out halves, and node→sentence
//! edges scored against a composed sentence vector (word average, GRU or
//! bidirectional GRU). A logistic-regression harness measures how well the
//! learned vectors predict node labels.
//!
//! ```text
//! graph      edge/content ingestion, augmented network
//! params     node/word tables, GRU weights, embedding text format
//! encoders   sentence composition with exact backward passes
//! sampler    positive edges and rejection-sampled negatives
//! trainer    scores, per-branch SGD steps, joint training loop
//! pretrain   skip-gram word vector pretraining
//! eval       label splits, logistic regression, Micro-F1
//! synth      stochastic block model networks with text
//! cli        the `augnet` command line
//! ```

pub mod cli;
pub mod encoders;
pub mod error;
pub mod eval;
pub mod graph;
pub mod linalg;
pub mod params;
pub mod pretrain;
pub mod sampler;
pub mod synth;
pub mod trainer;

#[cfg(test)]
pub(crate) mod fdcheck;

pub use error::{Error, Result};
pub use graph::{build_augmented, AugmentedNetwork, ContentId, NodeId, NodeIndex, Sentence, Vocabulary};
pub use params::{init_params, EmbeddingPart, EncoderKind, ModelParams};
pub use trainer::{train, TrainConfig, TrainOutcome};
