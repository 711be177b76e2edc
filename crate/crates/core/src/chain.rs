//! One-excitation sector of the next-to-nearest-neighbour Krawtchouk chain.
//!
//! Sites are numbered `1..=N` in the public API and stored 0-based. With
//! `J_n = ½√(n(N−n))` (and `J_0 = J_N = 0`) the Hamiltonian restricted to one
//! excitation is the pentadiagonal matrix `αJ² + βJ`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::spectral::DensePropagator;
use crate::state::AmplitudeVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec {
    n: usize,
    alpha: f64,
    beta: f64,
}

impl ChainSpec {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("chain needs N >= 2 sites, got {n}")));
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidInput(format!(
                "couplings must be finite, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(ChainSpec { n, alpha, beta })
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Coupling constants; index `k` holds the value for site `n = k + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Couplings {
    /// `J_n`, `n = 1..N−1`.
    pub j: Vec<f64>,
    /// `J_n^(1) = βJ_n`, `n = 1..N−1`.
    pub j1: Vec<f64>,
    /// `J_n^(2) = αJ_nJ_{n+1}`, `n = 1..N−2`.
    pub j2: Vec<f64>,
    /// `B_n = α(J_n² + J_{n−1}²)`, `n = 1..N`.
    pub b: Vec<f64>,
}

/// `J_n = ½√(n(N−n))`; zero outside `1..N−1`.
pub fn krawtchouk_coupling(n: usize, sites: usize) -> f64 {
    if n == 0 || n >= sites {
        0.0
    } else {
        0.5 * ((n * (sites - n)) as f64).sqrt()
    }
}

pub fn couplings(spec: &ChainSpec) -> Couplings {
    let n = spec.n;
    let jn = |k: usize| krawtchouk_coupling(k, n);
    let j: Vec<f64> = (1..n).map(jn).collect();
    let j1 = j.iter().map(|v| spec.beta * v).collect();
    let j2 = (1..n - 1).map(|k| spec.alpha * jn(k) * jn(k + 1)).collect();
    let b = (1..=n)
        .map(|k| spec.alpha * (jn(k).powi(2) + jn(k - 1).powi(2)))
        .collect();
    Couplings { j, j1, j2, b }
}

/// Symmetric pentadiagonal one-excitation Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainOperator {
    /// `B_n`, length `N`.
    pub diag: Vec<f64>,
    /// `J_n^(1)`, length `N − 1`.
    pub offdiag1: Vec<f64>,
    /// `J_n^(2)`, length `N − 2`.
    pub offdiag2: Vec<f64>,
}

impl ChainOperator {
    pub fn sites(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.sites();
        let mut h = DMatrix::zeros(n, n);
        for (k, &b) in self.diag.iter().enumerate() {
            h[(k, k)] = b;
        }
        for (k, &v) in self.offdiag1.iter().enumerate() {
            h[(k, k + 1)] = v;
            h[(k + 1, k)] = v;
        }
        for (k, &v) in self.offdiag2.iter().enumerate() {
            h[(k, k + 2)] = v;
            h[(k + 2, k)] = v;
        }
        h
    }

    /// `H|n⟩` for a 1-based site `n`, as written out term by term.
    pub fn apply_to_site(&self, site: usize) -> Result<AmplitudeVector> {
        let n = self.sites();
        if site == 0 || site > n {
            return Err(Error::InvalidInput(format!("site {site} outside [1, {n}]")));
        }
        let k = site - 1;
        let mut out = vec![0.0; n];
        out[k] += self.diag[k];
        if k + 1 < n {
            out[k + 1] += self.offdiag1[k];
        }
        if k + 2 < n {
            out[k + 2] += self.offdiag2[k];
        }
        if k >= 1 {
            out[k - 1] += self.offdiag1[k - 1];
        }
        if k >= 2 {
            out[k - 2] += self.offdiag2[k - 2];
        }
        Ok(AmplitudeVector::from_real(&out))
    }
}

/// Tridiagonal Jacobi matrix `J|n⟩ = J_n|n+1⟩ + J_{n−1}|n−1⟩`.
pub fn jacobi_matrix(sites: usize) -> DMatrix<f64> {
    DMatrix::from_fn(sites, sites, |r, c| {
        if c == r + 1 {
            krawtchouk_coupling(r + 1, sites)
        } else if r == c + 1 {
            krawtchouk_coupling(c + 1, sites)
        } else {
            0.0
        }
    })
}

/// Largest entry of `|H − (αJ² + βJ)|`.
pub fn factorization_deviation(spec: &ChainSpec, op: &ChainOperator) -> f64 {
    let j = jacobi_matrix(spec.n);
    let expected = &j * &j * spec.alpha + &j * spec.beta;
    (op.to_dense() - expected).amax()
}

pub fn build_hamiltonian(spec: &ChainSpec) -> ChainOperator {
    let c = couplings(spec);
    let op = ChainOperator {
        diag: c.b,
        offdiag1: c.j1,
        offdiag2: c.j2,
    };
    debug_assert!(
        factorization_deviation(spec, &op) < 1e-12 * (1.0 + spec.alpha.abs() + spec.beta.abs()) * spec.n as f64
    );
    op
}

/// Exact chain evolution via a dense eigendecomposition of `αJ² + βJ`.
pub struct ChainPropagator {
    spec: ChainSpec,
    operator: ChainOperator,
    propagator: DensePropagator,
}

impl ChainPropagator {
    pub fn new(spec: ChainSpec) -> Self {
        let operator = build_hamiltonian(&spec);
        let propagator = DensePropagator::new(operator.to_dense());
        ChainPropagator {
            spec,
            operator,
            propagator,
        }
    }

    pub fn spec(&self) -> &ChainSpec {
        &self.spec
    }

    pub fn operator(&self) -> &ChainOperator {
        &self.operator
    }

    pub fn evolve(&self, psi0: &AmplitudeVector, tau: f64) -> Result<AmplitudeVector> {
        psi0.require_len(self.spec.n)?;
        psi0.require_normalized()?;
        if !tau.is_finite() {
            return Err(Error::InvalidInput(format!("time must be finite, got {tau}")));
        }
        Ok(self.propagator.apply(psi0, tau))
    }
}

/// `e^{−iτH} ψ0` on the chain.
pub fn chain_evolve(spec: &ChainSpec, psi0: &AmplitudeVector, tau: f64) -> Result<AmplitudeVector> {
    ChainPropagator::new(*spec).evolve(psi0, tau)
}

/// Basis state `|site⟩` for a 1-based site.
pub fn site_state(sites: usize, site: usize) -> Result<AmplitudeVector> {
    if site == 0 {
        return Err(Error::InvalidInput("sites are numbered from 1".into()));
    }
    AmplitudeVector::basis(sites, site - 1)
}
