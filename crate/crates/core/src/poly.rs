//! Dense polynomials in `u` with arbitrary-precision integer coefficients.

use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coefficient `i` multiplies `u^i`. Trailing zeros are trimmed, so the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyZ {
    coeffs: Vec<BigInt>,
}

impl PolyZ {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = PolyZ { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        PolyZ::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        PolyZ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyZ {
            coeffs: vec![BigInt::one()],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `u^k`, zero beyond the degree.
    pub fn coef(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn pow(&self, mut exp: usize) -> PolyZ {
        let mut base = self.clone();
        let mut acc = PolyZ::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Product with every coefficient above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &PolyZ, max_degree: usize) -> PolyZ {
        if self.is_zero() || other.is_zero() {
            return PolyZ::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(max_degree + 1);
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PolyZ::new(out)
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + c.to_f64().unwrap_or(f64::NAN))
    }
}

// `mul_truncated` keeps degrees `<= max_degree`; leave room for `+ 1`.
const UNBOUNDED: usize = usize::MAX - 1;

impl Mul for &PolyZ {
    type Output = PolyZ;

    fn mul(self, other: &PolyZ) -> PolyZ {
        self.mul_truncated(other, UNBOUNDED)
    }
}

/// `p(u) = (1+u)^gamma - 1 - u^gamma`: the weight of a variable node whose
/// sockets are split between both sides.
pub fn poly_p(gamma: usize) -> PolyZ {
    let mut coeffs = binomial_row(gamma);
    coeffs[0] -= 1;
    coeffs[gamma] -= 1;
    PolyZ::new(coeffs)
}

/// `q(u) = 1 + u^gamma`: all sockets on one side.
pub fn poly_q(gamma: usize) -> PolyZ {
    let mut coeffs = vec![BigInt::zero(); gamma + 1];
    coeffs[0] += 1;
    coeffs[gamma] += 1;
    PolyZ::new(coeffs)
}

/// `C(k, 0..=k)`.
pub fn binomial_row(k: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(k + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for i in 0..k {
        c = c * (k - i) / (i + 1);
        row.push(c.clone());
    }
    row
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// Coefficient of `u^k` in `p(u)^s q(u)^(n-s)`, by repeated squaring.
pub fn coef_power_product(gamma: usize, s: usize, n: usize, k: usize) -> BigInt {
    assert!(s <= n, "s = {s} exceeds n = {n}");
    if k > gamma * n {
        return BigInt::zero();
    }
    let ps = poly_p(gamma).pow(s);
    let qs = poly_q(gamma).pow(n - s);
    // only the u^k coefficient of the product is needed
    ps.coeffs()
        .iter()
        .enumerate()
        .take(k + 1)
        .map(|(i, a)| a * qs.coef(k - i))
        .sum()
}
