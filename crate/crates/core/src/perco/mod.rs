//! Bernoulli bond percolation under the monotone coupling.

mod clusters;
mod labels;
mod philox;
mod unionfind;

pub use clusters::{
    clusters_in, clusters_in_rooted, connected_in, crossing_cluster_count, origin_cluster, ClusterDecomposition,
    ClusterSummary, OriginCluster,
};
pub use labels::{label_field, label_from_digest, Config, EdgeStates, LabelField, LabelTable, Labels, OpenSet};
pub use philox::philox4x32_10;
pub use unionfind::UnionFind;
