//! Evolution on `{0,1}^M` under `H̄_G = (α/2)A_2 + (β/2)A_1`.
//!
//! The production path diagonalises `H̄_G` analytically: every character
//! vector `z ↦ (−1)^{x·z}` is a common eigenvector of the `A_i`, and the
//! eigenvalue depends only on the bit weight `|z|`. So
//! `e^{−iτH̄_G} = Ĥ · diag(e^{−iτℰ_{|z|}}) · Ĥ` with `Ĥ` the normalized
//! Walsh–Hadamard transform. [`DenseOracle`] materializes the matrix and
//! diagonalises it numerically for cross-checks at small `M`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kraw::graph_spectrum;
use crate::scheme::{binomial, vertex_count};
use crate::spectral::DensePropagator;
use crate::state::AmplitudeVector;

/// Default cap on `M` (a `2^26` complex vector is 1 GiB).
pub const DEFAULT_MAX_M: usize = 26;

/// Environment variable that overrides [`DEFAULT_MAX_M`].
pub const MAX_M_ENV: &str = "REVIVAL_MAX_M";

/// Largest `M` the dense oracle will materialize.
pub const DENSE_ORACLE_MAX_M: usize = 10;

/// Current cap on `M`: `REVIVAL_MAX_M` when set to an integer, otherwise
/// [`DEFAULT_MAX_M`]. Never exceeds the 31-bit vertex label width.
pub fn resource_cap() -> usize {
    std::env::var(MAX_M_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_MAX_M)
        .min(crate::scheme::MAX_BITS)
}

/// Parameters of the weighted graph `G_1 ∪ G_2` on `{0,1}^M`: `G_1` edges
/// carry weight `β/2` and `G_2` edges weight `α/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkSpec {
    m: usize,
    alpha: f64,
    beta: f64,
}

impl WalkSpec {
    pub fn new(m: usize, alpha: f64, beta: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("bit dimension M must be at least 1".into()));
        }
        let cap = resource_cap();
        if m > cap {
            return Err(Error::Resource(format!(
                "M = {m} exceeds the limit of {cap} (set {MAX_M_ENV} to override)"
            )));
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidInput(format!(
                "weights must be finite, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(WalkSpec { m, alpha, beta })
    }

    /// The graph that lifts the `n`-site chain (`M = N − 1`).
    pub fn for_chain(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("chain needs N >= 2 sites, got {n}")));
        }
        Self::new(n - 1, alpha, beta)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn dim(&self) -> usize {
        vertex_count(self.m)
    }

    pub fn antipode(&self) -> usize {
        self.dim() - 1
    }
}

/// In-place normalized Walsh–Hadamard transform. `data.len()` must be a
/// power of two.
pub fn fwht_in_place(data: &mut [Complex64]) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    let scale = 1.0 / (n as f64).sqrt();
    for v in data.iter_mut() {
        *v *= scale;
    }
}

/// `(Ĥψ)(z) = 2^{−M/2} Σ_x (−1)^{x·z} ψ(x)`.
pub fn fwht(psi: &AmplitudeVector) -> Result<AmplitudeVector> {
    if !psi.len().is_power_of_two() {
        return Err(Error::InvalidInput(format!(
            "transform length {} is not a power of two",
            psi.len()
        )));
    }
    let mut out = psi.clone();
    fwht_in_place(out.as_mut_slice());
    Ok(out)
}

/// Spectral propagator for one [`WalkSpec`]; holds the `M + 1` distinct
/// eigenvalues `ℰ_s`.
#[derive(Debug, Clone)]
pub struct GraphPropagator {
    spec: WalkSpec,
    energies: Vec<f64>,
}

impl GraphPropagator {
    pub fn new(spec: WalkSpec) -> Self {
        GraphPropagator {
            spec,
            energies: graph_spectrum(&spec),
        }
    }

    pub fn spec(&self) -> &WalkSpec {
        &self.spec
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    fn phases(&self, tau: f64) -> Vec<Complex64> {
        self.energies
            .iter()
            .map(|&e| Complex64::from_polar(1.0, -tau * e))
            .collect()
    }

    /// Applies `e^{−iτH̄_G}` to an arbitrary vector of the right length
    /// (no normalization requirement).
    pub fn apply(&self, psi: &AmplitudeVector, tau: f64) -> Result<AmplitudeVector> {
        psi.require_len(self.spec.dim())?;
        let phases = self.phases(tau);
        let mut out = psi.clone();
        let data = out.as_mut_slice();
        fwht_in_place(data);
        for (z, v) in data.iter_mut().enumerate() {
            *v *= phases[z.count_ones() as usize];
        }
        fwht_in_place(data);
        Ok(out)
    }

    pub fn evolve(&self, psi0: &AmplitudeVector, tau: f64) -> Result<AmplitudeVector> {
        psi0.require_len(self.spec.dim())?;
        psi0.require_normalized()?;
        if !tau.is_finite() {
            return Err(Error::InvalidInput(format!("time must be finite, got {tau}")));
        }
        self.apply(psi0, tau)
    }
}

/// `e^{−iτH̄_G} ψ0` via the Walsh–Hadamard diagonalisation.
pub fn evolve_graph(spec: &WalkSpec, psi0: &AmplitudeVector, tau: f64) -> Result<AmplitudeVector> {
    GraphPropagator::new(*spec).evolve(psi0, tau)
}

/// Dense `(α/2)A_2 + (β/2)A_1` with a numerical eigendecomposition.
pub struct DenseOracle {
    spec: WalkSpec,
    matrix: DMatrix<f64>,
    propagator: DensePropagator,
}

impl DenseOracle {
    pub fn new(spec: WalkSpec) -> Result<Self> {
        if spec.m() > DENSE_ORACLE_MAX_M {
            return Err(Error::Resource(format!(
                "dense oracle limited to M <= {DENSE_ORACLE_MAX_M}, got {}",
                spec.m()
            )));
        }
        let n = spec.dim();
        let matrix = DMatrix::from_fn(n, n, |x, y| match (x ^ y).count_ones() {
            1 => 0.5 * spec.beta(),
            2 => 0.5 * spec.alpha(),
            _ => 0.0,
        });
        let propagator = DensePropagator::new(matrix.clone());
        Ok(DenseOracle {
            spec,
            matrix,
            propagator,
        })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Numerical eigenvalues, in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev = self.propagator.eigenvalues().to_vec();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn evolve(&self, psi0: &AmplitudeVector, tau: f64) -> Result<AmplitudeVector> {
        psi0.require_len(self.spec.dim())?;
        psi0.require_normalized()?;
        Ok(self.propagator.apply(psi0, tau))
    }

    /// `e^{−iτH̄_G}` as a row-major `2^M × 2^M` array.
    pub fn unitary(&self, tau: f64) -> Vec<Complex64> {
        self.propagator.unitary(tau)
    }
}

pub fn dense_oracle_evolve(
    spec: &WalkSpec,
    psi0: &AmplitudeVector,
    tau: f64,
) -> Result<AmplitudeVector> {
    DenseOracle::new(*spec)?.evolve(psi0, tau)
}

/// Amplitudes of the walk started at the corner `(0,…,0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntipodalAmplitudes {
    /// Amplitude at the corner.
    pub mu: Complex64,
    /// Amplitude at the antipode `(1,…,1)`.
    pub nu: Complex64,
    /// `1 − |μ|² − |ν|²`.
    pub leakage: f64,
}

impl AntipodalAmplitudes {
    fn new(mu: Complex64, nu: Complex64) -> Self {
        AntipodalAmplitudes {
            mu,
            nu,
            leakage: 1.0 - mu.norm_sqr() - nu.norm_sqr(),
        }
    }

    /// Same amplitudes with the global phase chosen so that `μ` is real and
    /// non-negative (unchanged when `μ = 0`).
    pub fn phase_normalized(&self) -> Self {
        let m = self.mu.norm();
        if m == 0.0 {
            return *self;
        }
        let rot = self.mu.conj() / m;
        AntipodalAmplitudes {
            mu: self.mu * rot,
            nu: self.nu * rot,
            leakage: self.leakage,
        }
    }
}

/// Evolves the corner basis state and reads off corner and antipode.
pub fn antipodal_amplitudes(spec: &WalkSpec, tau: f64) -> Result<AntipodalAmplitudes> {
    let psi0 = AmplitudeVector::basis(spec.dim(), 0)?;
    let out = evolve_graph(spec, &psi0, tau)?;
    Ok(AntipodalAmplitudes::new(out[0], out[spec.antipode()]))
}

/// Corner and antipode amplitudes from the shell sums
/// `μ = 2^{−M} Σ_s C(M,s) e^{−iτℰ_s}` and
/// `ν = 2^{−M} Σ_s (−1)^s C(M,s) e^{−iτℰ_s}`, in `O(M)`.
pub fn antipodal_amplitudes_spectral(spec: &WalkSpec, tau: f64) -> AntipodalAmplitudes {
    let m = spec.m();
    let norm = (0.5f64).powi(m as i32);
    let mut mu = Complex64::new(0.0, 0.0);
    let mut nu = Complex64::new(0.0, 0.0);
    for (s, e) in graph_spectrum(spec).into_iter().enumerate() {
        let w = Complex64::from_polar(binomial(m, s) as f64 * norm, -tau * e);
        mu += w;
        if s % 2 == 0 {
            nu += w;
        } else {
            nu -= w;
        }
    }
    AntipodalAmplitudes::new(mu, nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spec_guards() {
        assert!(WalkSpec::new(0, 1.0, 1.0).is_err());
        assert!(matches!(WalkSpec::new(40, 1.0, 1.0), Err(Error::Resource(_))));
        assert!(WalkSpec::new(3, f64::NAN, 1.0).is_err());
        assert!(WalkSpec::for_chain(1, 1.0, 1.0).is_err());
        assert_eq!(WalkSpec::for_chain(4, 1.0, 1.0).unwrap().m(), 3);
    }

    #[test]
    fn fwht_examples() {
        let e0 = AmplitudeVector::from_real(&[1.0, 0.0]);
        let out = fwht(&e0).unwrap();
        assert!((out[0] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((out[1] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);

        let corner = AmplitudeVector::basis(16, 0).unwrap();
        let out = fwht(&corner).unwrap();
        assert!(out.as_slice().iter().all(|a| (a - c(0.25, 0.0)).norm() < 1e-15));

        assert!(fwht(&AmplitudeVector::zeros(6)).is_err());
    }

    #[test]
    fn fwht_matches_character_sum() {
        let m = 4;
        let n: usize = 1 << m;
        let psi = AmplitudeVector::from_raw(
            (0..n).map(|i| c((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos())).collect(),
        );
        let fast = fwht(&psi).unwrap();
        for z in 0..n {
            let direct: Complex64 = (0..n)
                .map(|x| {
                    let sign = if (x & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    psi[x] * sign
                })
                .sum::<Complex64>()
                / (n as f64).sqrt();
            assert!((fast[z] - direct).norm() < 1e-14);
        }
    }

    #[test]
    fn evolve_time_zero_is_identity() {
        let spec = WalkSpec::new(4, 0.3, 1.7).unwrap();
        let psi = AmplitudeVector::basis(16, 5).unwrap();
        let out = evolve_graph(&spec, &psi, 0.0).unwrap();
        assert!(out.max_abs_diff(&psi).unwrap() < 1e-13);
    }

    #[test]
    fn evolve_rejects_bad_input() {
        let spec = WalkSpec::new(3, 1.0, 1.0).unwrap();
        let unnormalized = AmplitudeVector::from_real(&[1.0; 8]);
        assert!(matches!(
            evolve_graph(&spec, &unnormalized, 1.0),
            Err(Error::NotNormalized { .. })
        ));
        let short = AmplitudeVector::basis(4, 0).unwrap();
        assert!(evolve_graph(&spec, &short, 1.0).is_err());
    }

    #[test]
    fn unweighted_cube_balanced_revival() {
        let spec = WalkSpec::new(3, 2.0, 2.0).unwrap();
        let psi = AmplitudeVector::basis(8, 0).unwrap();
        let out = evolve_graph(&spec, &psi, FRAC_PI_4).unwrap();
        let probs = out.probabilities();
        assert!((probs[0] - 0.5).abs() < 1e-12);
        assert!((probs[7] - 0.5).abs() < 1e-12);
        for p in &probs[1..7] {
            assert!(*p < 1e-10);
        }
        let oracle = dense_oracle_evolve(&spec, &psi, FRAC_PI_4).unwrap();
        assert!(out.max_abs_diff(&oracle).unwrap() < 1e-11);
    }

    #[test]
    fn dense_oracle_examples() {
        let spec = WalkSpec::new(4, 0.9, -0.4).unwrap();
        let oracle = DenseOracle::new(spec).unwrap();
        assert_eq!(oracle.matrix(), &oracle.matrix().transpose());

        // single edge with weight 1: (cos τ, −i sin τ)
        let spec = WalkSpec::new(1, 0.0, 2.0).unwrap();
        let psi = AmplitudeVector::basis(2, 0).unwrap();
        let out = dense_oracle_evolve(&spec, &psi, FRAC_PI_2).unwrap();
        assert!((out[0] - c(0.0, 0.0)).norm() < 1e-14);
        assert!((out[1] - c(0.0, -1.0)).norm() < 1e-14);

        assert!(DenseOracle::new(WalkSpec::new(11, 1.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn dense_eigenvalues_match_analytic_multiset() {
        for m in 1..=8 {
            let spec = WalkSpec::new(m, 1.3, 0.6).unwrap();
            let mut analytic: Vec<f64> = (0..=m)
                .flat_map(|s| {
                    let e = crate::kraw::graph_eigenvalue(s, &spec);
                    std::iter::repeat_n(e, binomial(m, s) as usize)
                })
                .collect();
            analytic.sort_by(f64::total_cmp);
            let numeric = DenseOracle::new(spec).unwrap().eigenvalues();
            for (a, b) in analytic.iter().zip(&numeric) {
                assert!((a - b).abs() < 1e-10, "M={m}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn antipodal_examples() {
        let spec = WalkSpec::new(3, 2.0, 2.0).unwrap();
        let a = antipodal_amplitudes(&spec, 0.0).unwrap();
        assert!((a.mu - c(1.0, 0.0)).norm() < 1e-15 && a.nu.norm() < 1e-15);
        assert!(a.leakage.abs() < 1e-15);

        let a = antipodal_amplitudes(&spec, FRAC_PI_4).unwrap().phase_normalized();
        assert!((a.mu.norm_sqr() - 0.5).abs() < 1e-12);
        assert!((a.nu.norm_sqr() - 0.5).abs() < 1e-12);
        assert!(a.leakage.abs() < 1e-10);
        assert!(a.mu.im.abs() < 1e-12 && a.nu.re.abs() < 1e-12);

        let spec = WalkSpec::new(3, 0.0, 1.0).unwrap();
        let a = antipodal_amplitudes(&spec, PI).unwrap();
        assert!((a.nu.norm() - 1.0).abs() < 1e-12);
        assert!(a.leakage.abs() < 1e-10);
    }

    #[test]
    fn spectral_shortcut_matches_full_evolution() {
        for m in 1..=9 {
            let spec = WalkSpec::new(m, 0.8 - 0.1 * m as f64, 1.1).unwrap();
            for &tau in &[0.0, 0.3, 1.9, 7.7] {
                let full = antipodal_amplitudes(&spec, tau).unwrap();
                let fast = antipodal_amplitudes_spectral(&spec, tau);
                assert!((full.mu - fast.mu).norm() < 1e-13);
                assert!((full.nu - fast.nu).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn hypercube_limit_matches_nearest_neighbour_walk() {
        // α = 0: each bit evolves independently under (β/2)σx
        let (m, beta, tau) = (5, 1.4, 0.9);
        let spec = WalkSpec::new(m, 0.0, beta).unwrap();
        let out = evolve_graph(&spec, &AmplitudeVector::basis(1 << m, 0).unwrap(), tau).unwrap();
        let (cs, sn) = ((0.5 * beta * tau).cos(), (0.5 * beta * tau).sin());
        for x in 0..(1usize << m) {
            let w = x.count_ones() as i32;
            let expected = c(0.0, -1.0).powi(w) * cs.powi(m as i32 - w) * sn.powi(w);
            assert!((out[x] - expected).norm() < 1e-13);
        }
    }
}
