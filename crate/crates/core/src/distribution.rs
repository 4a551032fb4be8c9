//! Exact ensemble-average cutsize distribution of labeled bipartitions.
//!
//! ```text
//! A(s, m1) = C(m, m1) C(n, s) / C(delta m, delta m1)
//!            * [u^(delta m1)] p(u)^s q(u)^(n-s)
//!            * [s <= delta m1] [s <= delta (m - m1)]
//! ```
//!
//! `p` and `q` come from [`crate::poly`]. Entries at `m1 = 0` and `m1 = m`
//! (one part empty) are kept so that the table sums to `2^m`; they never
//! enter `B`.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::ensemble::EnsembleParams;
use crate::error::{Error, Result};
use crate::poly::{binomial, binomial_row, coef_power_product, poly_p};
use crate::ratio::Ratio;

/// Default upper bound on `n` for [`full_table`].
pub const DEFAULT_TABLE_MAX_N: usize = 2000;

fn indicators_hold(params: &EnsembleParams, s: usize, m1: usize) -> bool {
    let delta = params.delta();
    s <= delta * m1 && s <= delta * (params.m() - m1)
}

fn assemble(params: &EnsembleParams, s: usize, m1: usize, coef: BigInt) -> BigRational {
    let (n, m, delta) = (params.n(), params.m(), params.delta());
    let numer = binomial(m, m1) * binomial(n, s) * coef;
    BigRational::new(numer, binomial(delta * m, delta * m1))
}

/// `A(s, m1)` as a reduced fraction.
pub fn cutsize_distribution(params: &EnsembleParams, s: usize, m1: usize) -> BigRational {
    assert!(s <= params.n() && m1 <= params.m(), "(s, m1) = ({s}, {m1}) out of range");
    if !indicators_hold(params, s, m1) {
        return BigRational::zero();
    }
    let coef = coef_power_product(params.gamma(), s, params.n(), params.delta() * m1);
    assemble(params, s, m1, coef)
}

/// Sizes `m1` of the first part of an `epsilon`-balanced bipartition with
/// both parts non-empty: `ceil(m(1-eps)/2) ..= floor(m(1+eps)/2)` clipped to
/// `1..=m-1`. `None` when no integer fits (e.g. odd `m` with `eps = 0`).
pub fn balanced_sizes(m: usize, epsilon: Ratio) -> Option<RangeInclusive<usize>> {
    let (a, b) = (epsilon.numer() as u128, epsilon.denom() as u128);
    let m128 = m as u128;
    let lower = if a >= b {
        0
    } else {
        (m128 * (b - a)).div_ceil(2 * b)
    };
    let upper = (m128 * (b + a) / (2 * b)).min(m128);
    let lower = lower.max(1) as usize;
    let upper = (upper as usize).min(m.saturating_sub(1));
    (lower <= upper).then_some(lower..=upper)
}

/// `B(s, eps)`: the sum of `A(s, m1)` over balanced sizes.
pub fn balanced_distribution(params: &EnsembleParams, s: usize, epsilon: Ratio) -> BigRational {
    balanced_sizes(params.m(), epsilon)
        .map(|range| range.map(|m1| cutsize_distribution(params, s, m1)).sum())
        .unwrap_or_else(BigRational::zero)
}

/// `A(s, m1)` for every `s in 0..=n`, `m1 in 0..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutsizeTable {
    params: EnsembleParams,
    // entries[s][m1]
    entries: Vec<Vec<BigRational>>,
}

impl CutsizeTable {
    pub fn from_entries(params: EnsembleParams, entries: Vec<Vec<BigRational>>) -> Result<Self> {
        if entries.len() != params.n() + 1 || entries.iter().any(|r| r.len() != params.m() + 1) {
            return Err(Error::DimensionMismatch(format!(
                "table must be {}x{}",
                params.n() + 1,
                params.m() + 1
            )));
        }
        Ok(CutsizeTable { params, entries })
    }

    pub fn params(&self) -> &EnsembleParams {
        &self.params
    }

    pub fn get(&self, s: usize, m1: usize) -> &BigRational {
        &self.entries[s][m1]
    }

    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    /// `sum_s A(s, m1)`.
    pub fn size_marginal(&self, m1: usize) -> BigRational {
        self.entries.iter().map(|row| &row[m1]).sum()
    }

    pub fn total(&self) -> BigRational {
        self.entries.iter().flatten().sum()
    }

    /// `B(s, eps)` for every `s`.
    pub fn balanced(&self, epsilon: Ratio) -> Vec<BigRational> {
        let range = balanced_sizes(self.params.m(), epsilon);
        self.entries
            .iter()
            .map(|row| match &range {
                Some(r) => r.clone().map(|m1| &row[m1]).sum(),
                None => BigRational::zero(),
            })
            .collect()
    }

    /// Checks the support, marginal, total and mirror-symmetry identities.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let (m, delta) = (self.params.m(), self.params.delta());
        for (s, row) in self.entries.iter().enumerate() {
            for (m1, a) in row.iter().enumerate() {
                if a.is_negative() {
                    return Err(format!("A({s},{m1}) is negative"));
                }
                if (s > delta * m1 || s > delta * (m - m1)) && !a.is_zero() {
                    return Err(format!("A({s},{m1}) = {a} outside the support"));
                }
                if *a != row[m - m1] {
                    return Err(format!("A({s},{m1}) != A({s},{})", m - m1));
                }
            }
        }
        for m1 in 0..=m {
            let expect = BigRational::from_integer(binomial(m, m1));
            let got = self.size_marginal(m1);
            if got != expect {
                return Err(format!("sum_s A(s,{m1}) = {got}, expected {expect}"));
            }
        }
        let total = self.total();
        let expect = BigRational::from_integer(BigInt::one() << m);
        if total != expect {
            return Err(format!("table total {total}, expected {expect}"));
        }
        Ok(())
    }

    /// `s,m1,A_num,A_den`, optionally dropping zero cells.
    pub fn to_csv(&self, skip_zeros: bool) -> String {
        let mut out = String::from("s,m1,A_num,A_den\n");
        for (s, row) in self.entries.iter().enumerate() {
            for (m1, a) in row.iter().enumerate() {
                if skip_zeros && a.is_zero() {
                    continue;
                }
                let _ = writeln!(out, "{s},{m1},{},{}", a.numer(), a.denom());
            }
        }
        out
    }

    /// `s,B_num,B_den`.
    pub fn balanced_csv(&self, epsilon: Ratio) -> String {
        let mut out = String::from("s,B_num,B_den\n");
        for (s, b) in self.balanced(epsilon).iter().enumerate() {
            let _ = writeln!(out, "{s},{},{}", b.numer(), b.denom());
        }
        out
    }
}

/// Builds the whole table. `q(u)^(n-s)` is expanded binomially, so only
/// `p(u)^s` is carried as a polynomial; each row is independent of the
/// repeated-squaring route in [`cutsize_distribution`].
pub fn full_table(params: &EnsembleParams, max_n: usize) -> Result<CutsizeTable> {
    if params.n() > max_n {
        return Err(Error::CapExceeded {
            what: "exact cutsize table",
            needed: format!("n = {}", params.n()),
            cap: max_n as u64,
        });
    }
    let (n, m, gamma, delta) = (params.n(), params.m(), params.gamma(), params.delta());
    let p = poly_p(gamma);
    let mut p_pow = crate::poly::PolyZ::one();
    let mut entries = Vec::with_capacity(n + 1);
    for s in 0..=n {
        if s > 0 {
            p_pow = p_pow.mul_truncated(&p, gamma * n);
        }
        let q_binom = binomial_row(n - s);
        let row: Vec<BigRational> = (0..=m)
            .into_par_iter()
            .map(|m1| {
                if !indicators_hold(params, s, m1) {
                    return BigRational::zero();
                }
                let target = delta * m1;
                // [u^target] p^s (1 + u^gamma)^(n-s)
                let coef: BigInt = q_binom
                    .iter()
                    .enumerate()
                    .take_while(|(i, _)| gamma * i <= target)
                    .map(|(i, c)| c * p_pow.coef(target - gamma * i))
                    .sum();
                assemble(params, s, m1, coef)
            })
            .collect();
        entries.push(row);
    }
    let table = CutsizeTable { params: *params, entries };
    debug_assert_eq!(table.check_invariants(), Ok(()));
    Ok(table)
}

/// `log2` of a positive big integer.
pub fn log2_bigint(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "log2 of non-positive integer");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.log2() + shift as f64
}

/// `log2 A(s, m1)`; `-inf` when the entry is zero.
///
/// Binomials go through the log-gamma function and the coefficient through
/// an exact big-integer extraction, so no big rational is formed.
pub fn log2_cutsize_distribution(params: &EnsembleParams, s: usize, m1: usize) -> f64 {
    use statrs::function::factorial::ln_binomial;
    assert!(s <= params.n() && m1 <= params.m(), "(s, m1) = ({s}, {m1}) out of range");
    if !indicators_hold(params, s, m1) {
        return f64::NEG_INFINITY;
    }
    let (n, m, delta) = (params.n(), params.m(), params.delta());
    let coef = coef_power_product(params.gamma(), s, n, delta * m1);
    if !coef.is_positive() {
        return f64::NEG_INFINITY;
    }
    let ln_binom = |a: usize, b: usize| ln_binomial(a as u64, b as u64);
    let ln_prefactor = ln_binom(m, m1) + ln_binom(n, s) - ln_binom(delta * m, delta * m1);
    ln_prefactor / std::f64::consts::LN_2 + log2_bigint(&coef)
}
