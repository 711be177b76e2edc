//! Krawtchouk polynomials `K_n(x; q, M)` and the spectrum of the weighted
//! Hamming graph.
//!
//! The eigenvalues of `A_i` on the eigenspace `E(s)` of `A_1` (eigenvalue
//! `λ_s = M − 2s`) are `K_i(s; 2, M)`. Polynomial values are computed in
//! exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scheme::binomial;
use crate::walk::WalkSpec;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `K_n(x; q, M)` from the three-term recurrence
/// `(n+1)K_{n+1} = [(M−n)(q−1) + n − qx]K_n − (q−1)(M−n+1)K_{n−1}`,
/// `K_{−1} = 0`, `K_0 = 1`.
pub fn krawtchouk_q(n: usize, x: i64, q: i64, m: usize) -> Result<BigRational> {
    if n > m {
        return Err(Error::InvalidInput(format!("degree {n} outside [0, {m}]")));
    }
    if q < 2 {
        return Err(Error::InvalidInput(format!("alphabet size q = {q} must be >= 2")));
    }
    let m_i = m as i64;
    let mut prev = BigRational::zero();
    let mut cur = BigRational::one();
    for k in 0..n as i64 {
        let a = rat((m_i - k) * (q - 1) + k - q * x);
        let b = rat((q - 1) * (m_i - k + 1));
        let next = (a * &cur - b * &prev) / rat(k + 1);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `K_n(x; 2, M)` by recurrence.
pub fn krawtchouk(n: usize, x: i64, m: usize) -> Result<BigRational> {
    krawtchouk_q(n, x, 2, m)
}

/// `K_n(x; 2, M) = C(M, n) · ₂F₁(−n, −x; −M; 2)` as the terminating sum
/// `Σ_k (−n)_k (−x)_k / ((−M)_k k!) · 2^k`.
pub fn krawtchouk_hypergeometric(n: usize, x: usize, m: usize) -> Result<BigRational> {
    if n > m || x > m {
        return Err(Error::InvalidInput(format!(
            "need 0 <= n, x <= M, got n = {n}, x = {x}, M = {m}"
        )));
    }
    let (n_i, x_i, m_i) = (n as i64, x as i64, m as i64);
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    // the series terminates at k = min(n, x) through (-n)_k or (-x)_k, before (-M)_k can vanish
    for k in 0..n.min(x) as i64 {
        term = term * rat((k - n_i) * (k - x_i) * 2) / rat((k - m_i) * (k + 1));
        sum += &term;
    }
    Ok(sum * BigRational::from_integer(BigInt::from(binomial(m, n))))
}

/// Integer value of an exact rational, if it has denominator one.
pub fn as_integer(value: &BigRational) -> Option<i64> {
    if value.is_integer() {
        value.to_integer().to_i64()
    } else {
        None
    }
}

/// `p_1(λ_s) = M − 2s`.
pub fn p1(s: usize, m: usize) -> f64 {
    m as f64 - 2.0 * s as f64
}

/// `p_2(λ_s) = ½[(M − 2s)² − M]`.
pub fn p2(s: usize, m: usize) -> f64 {
    let l = p1(s, m);
    0.5 * (l * l - m as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub s: usize,
    /// Eigenvalue of `A_1`.
    pub lambda: f64,
    /// Eigenvalue of `A_2`.
    pub p2: f64,
    /// `dim E(s) = C(M, s)`.
    pub multiplicity: u64,
}

/// Eigenvalues of `A_1` and `A_2` on each eigenspace `E(s)`, `s = 0..=M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub m: usize,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    pub fn new(m: usize) -> Self {
        let entries = (0..=m)
            .map(|s| SpectrumEntry {
                s,
                lambda: p1(s, m),
                p2: p2(s, m),
                multiplicity: binomial(m, s),
            })
            .collect();
        SpectrumTable { m, entries }
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }
}

/// Eigenvalue `ℰ_s = (α/2)p_2(λ_s) + (β/2)p_1(λ_s)` of `(α/2)A_2 + (β/2)A_1`.
pub fn graph_eigenvalue(s: usize, spec: &WalkSpec) -> f64 {
    let m = spec.m();
    0.5 * spec.alpha() * p2(s, m) + 0.5 * spec.beta() * p1(s, m)
}

/// `ℰ_s` for every `s = 0..=M`.
pub fn graph_spectrum(spec: &WalkSpec) -> Vec<f64> {
    (0..=spec.m()).map(|s| graph_eigenvalue(s, spec)).collect()
}
