//! Fixtures shared by the benchmarks.

use hgcut_core::{ensemble, EnsembleParams, Hypergraph};

/// A fixed configuration-model instance.
pub fn sampled_instance(n: usize, gamma: usize, delta: usize, seed: u64) -> Hypergraph {
    let params = EnsembleParams::new(n, gamma, delta).expect("valid ensemble");
    ensemble::sample(&params, seed)
}
