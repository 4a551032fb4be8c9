//! Brute-force ground truth for the cutsize distribution: per-instance
//! bipartition counting, exhaustive averaging over all socket permutations,
//! and Monte-Carlo estimation.
//!
//! Nothing here uses the generating-function route; the tables are built
//! from hypergraphs alone.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::distribution::CutsizeTable;
use crate::ensemble::{self, check_socket_cap, factorial, EnsembleParams, SocketPermutations};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Largest vertex count for which all `2^m` bipartitions are enumerated.
pub const DEFAULT_VERTEX_CAP: usize = 24;

/// `counts[s][m1]`: labeled bipartitions with cutsize `s` and `|U1| = m1`,
/// including the two with an empty part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionCounts {
    pub counts: Vec<Vec<u64>>,
}

impl BipartitionCounts {
    pub fn get(&self, s: usize, m1: usize) -> u64 {
        self.counts[s][m1]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }
}

fn net_masks(h: &Hypergraph) -> Vec<u32> {
    h.nets()
        .iter()
        .map(|net| net.iter().fold(0u32, |acc, &v| acc | 1 << v))
        .collect()
}

fn accumulate(masks: &[u32], m: usize, counts: &mut [Vec<u64>]) {
    for u1 in 0u32..(1u32 << m) {
        let cut = masks
            .iter()
            .filter(|&&net| {
                let inside = net & u1;
                inside != 0 && inside != net
            })
            .count();
        counts[cut][u1.count_ones() as usize] += 1;
    }
}

fn check_vertex_cap(m: usize, cap: usize) -> Result<()> {
    if m > cap.min(31) {
        return Err(Error::CapExceeded {
            what: "bipartition enumeration",
            needed: format!("2^{m} assignments"),
            cap: cap as u64,
        });
    }
    Ok(())
}

/// Tallies all `2^m` labeled bipartitions of `h` by `(cutsize, |U1|)`.
pub fn count_bipartitions(h: &Hypergraph, vertex_cap: usize) -> Result<BipartitionCounts> {
    let m = h.vertex_count();
    check_vertex_cap(m, vertex_cap)?;
    let mut counts = vec![vec![0u64; m + 1]; h.net_count() + 1];
    accumulate(&net_masks(h), m, &mut counts);
    Ok(BipartitionCounts { counts })
}

/// Average of [`count_bipartitions`] over all `xi!` socket permutations.
pub fn exact_ensemble_average(
    params: &EnsembleParams,
    socket_cap: usize,
    vertex_cap: usize,
) -> Result<CutsizeTable> {
    check_socket_cap(params, socket_cap)?;
    check_vertex_cap(params.m(), vertex_cap)?;
    let (n, m) = (params.n(), params.m());
    let total = factorial(params.xi()).expect("checked by cap");
    const CHUNK: u64 = 5040;
    let sums = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let mut counts = vec![vec![0u64; m + 1]; n + 1];
            for h in SocketPermutations::range(*params, start, (start + CHUNK).min(total)) {
                accumulate(&net_masks(&h), m, &mut counts);
            }
            counts
        })
        .reduce(
            || vec![vec![0u64; m + 1]; n + 1],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            },
        );
    let denom = BigInt::from(total);
    let entries = sums
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|c| BigRational::new(BigInt::from(c), denom.clone()))
                .collect()
        })
        .collect();
    CutsizeTable::from_entries(*params, entries)
}

/// Per-cell sample mean and standard error of the mean.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloTable {
    pub params: EnsembleParams,
    pub samples: u64,
    pub seed: u64,
    /// Exact sample mean, `sum / samples`.
    pub mean: Vec<Vec<BigRational>>,
    pub stderr: Vec<Vec<f64>>,
}

impl MonteCarloTable {
    /// Cells `(s, m1)` whose mean lies more than `k` standard errors from
    /// `exact`. A cell with zero spread counts as an excursion only if it
    /// differs at all.
    pub fn excursions(&self, exact: &CutsizeTable, k: f64) -> Vec<(usize, usize, f64)> {
        use num_traits::ToPrimitive;
        let mut out = Vec::new();
        for (s, row) in self.mean.iter().enumerate() {
            for (m1, mean) in row.iter().enumerate() {
                let truth = exact.get(s, m1);
                if mean == truth {
                    continue;
                }
                let diff = (mean - truth).to_f64().unwrap_or(f64::INFINITY).abs();
                let se = self.stderr[s][m1];
                if diff > k * se {
                    out.push((s, m1, diff / se));
                }
            }
        }
        out
    }

    /// `s,m1,A_num,A_den,stderr`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,m1,A_num,A_den,stderr\n");
        for (s, row) in self.mean.iter().enumerate() {
            for (m1, mean) in row.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{s},{m1},{},{},{:.10e}",
                    mean.numer(),
                    mean.denom(),
                    self.stderr[s][m1]
                );
            }
        }
        out
    }
}

/// Estimates `A(s, m1)` from `samples` independent draws. Draw `i` uses
/// stream `i` of a ChaCha8 generator keyed by `seed`, so the result does not
/// depend on how work is split across threads.
pub fn monte_carlo_average(
    params: &EnsembleParams,
    samples: u64,
    seed: u64,
    vertex_cap: usize,
) -> Result<MonteCarloTable> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    check_vertex_cap(params.m(), vertex_cap)?;
    let (n, m) = (params.n(), params.m());
    let cells = (n + 1) * (m + 1);
    const CHUNK: u64 = 1024;
    let (sum, sum_sq) = (0..samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut sum = vec![0u128; cells];
            let mut sum_sq = vec![0u128; cells];
            let mut counts = vec![vec![0u64; m + 1]; n + 1];
            for i in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                let h = ensemble::sample_with(params, &mut rng);
                counts.iter_mut().flatten().for_each(|x| *x = 0);
                accumulate(&net_masks(&h), m, &mut counts);
                for (idx, &x) in counts.iter().flatten().enumerate() {
                    sum[idx] += x as u128;
                    sum_sq[idx] += (x as u128) * (x as u128);
                }
            }
            (sum, sum_sq)
        })
        .reduce(
            || (vec![0u128; cells], vec![0u128; cells]),
            |(mut a, mut a2), (b, b2)| {
                for i in 0..cells {
                    a[i] += b[i];
                    a2[i] += b2[i];
                }
                (a, a2)
            },
        );

    let nf = samples as f64;
    let mut mean = Vec::with_capacity(n + 1);
    let mut stderr = Vec::with_capacity(n + 1);
    for s in 0..=n {
        let mut mrow = Vec::with_capacity(m + 1);
        let mut erow = Vec::with_capacity(m + 1);
        for m1 in 0..=m {
            let idx = s * (m + 1) + m1;
            mrow.push(BigRational::new(BigInt::from(sum[idx]), BigInt::from(samples)));
            let se = if samples < 2 {
                f64::NAN
            } else {
                // N sum x^2 - (sum x)^2 is exact in integers
                let num = BigInt::from(sum_sq[idx]) * BigInt::from(samples)
                    - BigInt::from(sum[idx]) * BigInt::from(sum[idx]);
                let var = num_traits::ToPrimitive::to_f64(&num).unwrap_or(f64::NAN)
                    / (nf * (nf - 1.0));
                (var / nf).sqrt()
            };
            erow.push(se);
        }
        mean.push(mrow);
        stderr.push(erow);
    }
    Ok(MonteCarloTable {
        params: *params,
        samples,
        seed,
        mean,
        stderr,
    })
}
