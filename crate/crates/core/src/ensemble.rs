//! Regular LDPC ensembles `E(n, gamma, delta)` under the configuration model.
//!
//! Variable socket `i` (node `i / gamma`) is joined to check socket `pi(i)`
//! (node `pi(i) / delta`) for a permutation `pi` of the `xi = gamma * n`
//! sockets. Check nodes become vertices and variable nodes become nets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Generator used by [`sample`], recorded alongside sampled instances.
pub const RNG_DESCRIPTION: &str =
    "ChaCha8Rng (rand_chacha 0.9, seed_from_u64) + Fisher-Yates shuffle (rand 0.9 SliceRandom)";

/// Default bound on the number of sockets for exhaustive enumeration.
pub const DEFAULT_SOCKET_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnsembleParams {
    n: usize,
    gamma: usize,
    delta: usize,
    m: usize,
    xi: usize,
}

impl EnsembleParams {
    pub fn new(n: usize, gamma: usize, delta: usize) -> Result<Self> {
        if n == 0 || gamma == 0 || delta == 0 {
            return Err(Error::InvalidParams(format!(
                "n, gamma and delta must be >= 1 (got n={n}, gamma={gamma}, delta={delta})"
            )));
        }
        let xi = gamma
            .checked_mul(n)
            .ok_or_else(|| Error::InvalidParams("gamma*n overflows".into()))?;
        if xi % delta != 0 {
            return Err(Error::NotDivisible {
                n: n as u64,
                gamma: gamma as u64,
                delta: delta as u64,
            });
        }
        Ok(EnsembleParams {
            n,
            gamma,
            delta,
            m: xi / delta,
            xi,
        })
    }

    /// Variable-node count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Check-node count `gamma * n / delta`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Edge (socket) count `gamma * n`.
    pub fn xi(&self) -> usize {
        self.xi
    }

    pub fn design_rate(&self) -> f64 {
        1.0 - self.gamma as f64 / self.delta as f64
    }

    /// Set when `delta < gamma`, i.e. the design rate is negative.
    pub fn warning(&self) -> Option<String> {
        (self.delta < self.gamma).then(|| {
            format!(
                "delta={} < gamma={}: design rate {:.4} is negative",
                self.delta,
                self.gamma,
                self.design_rate()
            )
        })
    }

    /// Hypergraph produced by socket permutation `perm` (`perm[i]` is the
    /// check socket joined to variable socket `i`).
    pub fn hypergraph(&self, perm: &[usize]) -> Hypergraph {
        debug_assert_eq!(perm.len(), self.xi);
        let nets = perm
            .chunks(self.gamma)
            .map(|sockets| {
                let mut net: Vec<usize> = sockets.iter().map(|&s| s / self.delta).collect();
                net.sort_unstable();
                net
            })
            .collect();
        Hypergraph::from_sorted_unchecked(self.m, nets)
    }
}

/// Draws one hypergraph uniformly over socket permutations.
pub fn sample(params: &EnsembleParams, seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(params, &mut rng)
}

pub fn sample_with<R: rand::Rng + ?Sized>(params: &EnsembleParams, rng: &mut R) -> Hypergraph {
    let mut perm: Vec<usize> = (0..params.xi).collect();
    perm.shuffle(rng);
    params.hypergraph(&perm)
}

/// `k!` if it fits in a `u64`.
pub fn factorial(k: usize) -> Option<u64> {
    (1..=k as u64).try_fold(1u64, |acc, x| acc.checked_mul(x))
}

/// Streams the hypergraph of every socket permutation in lexicographic order,
/// `xi!` items in total, duplicates included.
pub fn enumerate_all(params: &EnsembleParams, cap: usize) -> Result<SocketPermutations> {
    check_socket_cap(params, cap)?;
    Ok(SocketPermutations::range(*params, 0, factorial(params.xi).expect("xi <= cap")))
}

pub(crate) fn check_socket_cap(params: &EnsembleParams, cap: usize) -> Result<()> {
    if params.xi > cap || factorial(params.xi).is_none() {
        return Err(Error::CapExceeded {
            what: "exhaustive socket enumeration",
            needed: format!("xi = {} sockets ({}! permutations)", params.xi, params.xi),
            cap: cap as u64,
        });
    }
    Ok(())
}

/// Lexicographic permutations with ranks in `[start, end)`.
#[derive(Debug, Clone)]
pub struct SocketPermutations {
    params: EnsembleParams,
    perm: Vec<usize>,
    remaining: u64,
}

impl SocketPermutations {
    pub fn range(params: EnsembleParams, start: u64, end: u64) -> Self {
        SocketPermutations {
            params,
            perm: unrank_permutation(params.xi, start),
            remaining: end.saturating_sub(start),
        }
    }

    /// The permutation that the next call to `next` turns into a hypergraph.
    pub fn current(&self) -> &[usize] {
        &self.perm
    }
}

impl Iterator for SocketPermutations {
    type Item = Hypergraph;

    fn next(&mut self) -> Option<Hypergraph> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let h = self.params.hypergraph(&self.perm);
        if self.remaining > 0 {
            next_permutation(&mut self.perm);
        }
        Some(h)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// Lexicographic successor in place; returns false at the last permutation.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm.iter().rposition(|&x| x > perm[i]).expect("pivot has a successor");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Permutation of `0..len` with lexicographic rank `rank` (factorial base).
pub(crate) fn unrank_permutation(len: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..len).collect();
    let mut out = Vec::with_capacity(len);
    for i in (0..len).rev() {
        let f = factorial(i).unwrap_or(u64::MAX);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx.min(pool.len() - 1)));
    }
    out
}
