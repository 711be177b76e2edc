//! Fractional revival (FR) and perfect state transfer (PST) between the
//! corner and its antipode.
//!
//! [`check_conditions`] applies the arithmetic criteria on `α/β = p/q` and
//! the parity of `N`. [`certify_numeric`] confirms the prediction on the
//! graph propagator, and [`appendix_phase_check`] walks through the
//! eigenphase algebra showing `e^{−iτH̄_G} = e^{−iφ′}(A_0 ± iA_{N−1})/√2`.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use crate::error::{Error, Result};
use crate::kraw::graph_spectrum;
use crate::scheme::vertex_count;
use crate::state::AmplitudeVector;
use crate::walk::{
    antipodal_amplitudes, antipodal_amplitudes_spectral, AntipodalAmplitudes, DenseOracle,
    GraphPropagator, WalkSpec,
};

/// Continued-fraction tolerance on `α/β` (relative once `|α/β| > 1`).
pub const RATIO_TOLERANCE: f64 = 1e-9;
pub const MAX_DENOMINATOR: i64 = 1_000_000;
/// Tolerance on probabilities and phases for a certified revival.
pub const BALANCE_TOLERANCE: f64 = 1e-9;
/// A scanned time counts as a revival when `|μ|² + |ν|² ≥ 1 − SCAN_TOLERANCE`.
pub const SCAN_TOLERANCE: f64 = 1e-6;
/// ...and as balanced when additionally `||μ|² − |ν|²| ≤ SCAN_BALANCE_TOLERANCE`.
pub const SCAN_BALANCE_TOLERANCE: f64 = 1e-2;
pub const SCAN_STEPS: usize = 10_000;
pub const APPENDIX_TOLERANCE: f64 = 1e-10;
/// Largest `M = N − 1` for which the matrix identity is checked entrywise.
pub const APPENDIX_MATRIX_MAX_M: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RevivalKind {
    #[serde(rename = "balanced_FR")]
    BalancedFr,
    #[serde(rename = "PST_only")]
    PstOnly,
    #[serde(rename = "none")]
    None,
}

impl RevivalKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RevivalKind::BalancedFr => "balanced_FR",
            RevivalKind::PstOnly => "PST_only",
            RevivalKind::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RevivalCertificate {
    #[serde(skip)]
    pub n: usize,
    #[serde(skip)]
    pub alpha: f64,
    #[serde(skip)]
    pub beta: f64,
    pub kind: RevivalKind,
    /// `α/β = p/q` in lowest terms with `q > 0`; absent when `β = 0` or the
    /// ratio could not be rationalized.
    #[serde(skip)]
    pub p: Option<i64>,
    #[serde(skip)]
    pub q: Option<i64>,
    pub tau_fr: Option<f64>,
    pub tau_pst: Option<f64>,
    pub reason: Option<String>,
}

impl RevivalCertificate {
    pub fn predicts_fr(&self) -> bool {
        self.kind == RevivalKind::BalancedFr
    }

    pub fn predicts_pst(&self) -> bool {
        self.tau_pst.is_some()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Best rational approximation `p/q` of `x` from its continued fraction,
/// within `tol·max(1, |x|)` and with `q ≤ max_den`.
pub fn rationalize(x: f64, tol: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() {
        return None;
    }
    let sign = if x < 0.0 { -1 } else { 1 };
    let target = x.abs();
    let bound = tol * target.max(1.0);
    let (mut h_prev, mut h) = (0i64, 1i64);
    let (mut k_prev, mut k) = (1i64, 0i64);
    let mut y = target;
    for _ in 0..64 {
        let a = y.floor();
        if a > i64::MAX as f64 / 2.0 {
            return None;
        }
        let a = a as i64;
        let h_next = a.checked_mul(h)?.checked_add(h_prev)?;
        let k_next = a.checked_mul(k)?.checked_add(k_prev)?;
        if k_next > max_den {
            return None;
        }
        (h_prev, h, k_prev, k) = (h, h_next, k, k_next);
        if (target - h as f64 / k as f64).abs() <= bound {
            return Some((sign * h, k));
        }
        let frac = y - a as f64;
        if frac <= 0.0 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

fn validate(n: usize, alpha: f64, beta: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("chain needs N >= 2 sites, got {n}")));
    }
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::InvalidInput(format!(
            "alpha and beta must be finite, got {alpha}, {beta}"
        )));
    }
    if alpha == 0.0 && beta == 0.0 {
        return Err(Error::InvalidInput("(α, β) ≠ (0, 0) required".into()));
    }
    Ok(())
}

fn certificate(n: usize, alpha: f64, beta: f64, kind: RevivalKind) -> RevivalCertificate {
    RevivalCertificate {
        n,
        alpha,
        beta,
        kind,
        p: None,
        q: None,
        tau_fr: None,
        tau_pst: None,
        reason: None,
    }
}

/// Case analysis for a reduced ratio `p/q` with `β ≠ 0`.
fn classify(n: usize, alpha: f64, beta: f64, p: i64, q: i64) -> RevivalCertificate {
    let mut cert = certificate(n, alpha, beta, RevivalKind::None);
    cert.p = Some(p);
    cert.q = Some(q);
    let scale = beta.abs();
    if n == 2 {
        // M = 1: A_2 vanishes and αJ² is a multiple of the identity
        cert.kind = RevivalKind::BalancedFr;
        cert.tau_fr = Some(PI / (2.0 * scale));
        cert.tau_pst = Some(PI / scale);
        cert.reason = Some("two sites: the NNN term is a constant shift".into());
        return cert;
    }
    let p_odd = p.rem_euclid(2) == 1;
    let q_odd = q % 2 == 1;
    if p_odd && (q % 2) as usize != n % 2 {
        let tau_fr = PI * q as f64 / (2.0 * scale);
        cert.kind = RevivalKind::BalancedFr;
        cert.tau_fr = Some(tau_fr);
        cert.tau_pst = Some(2.0 * tau_fr);
    } else if !p_odd && q_odd {
        cert.kind = RevivalKind::PstOnly;
        cert.tau_pst = Some(PI * q as f64 / scale);
        cert.reason = Some("p even: perfect state transfer only".into());
    } else {
        cert.reason = Some(format!(
            "p = {p} odd but q = {q} and N = {n} have the same parity"
        ));
    }
    cert
}

/// Arithmetic FR/PST conditions for the `N`-site chain (equivalently the
/// graph on `{0,1}^{N−1}`).
pub fn check_conditions(n: usize, alpha: f64, beta: f64) -> Result<RevivalCertificate> {
    validate(n, alpha, beta)?;
    if beta == 0.0 {
        let mut cert = certificate(n, alpha, beta, RevivalKind::None);
        if n % 2 == 1 {
            let tau_fr = PI / (2.0 * alpha.abs());
            cert.kind = RevivalKind::BalancedFr;
            cert.tau_fr = Some(tau_fr);
            cert.tau_pst = Some(2.0 * tau_fr);
        } else {
            cert.reason = Some("β = 0 requires an odd number of sites".into());
        }
        return Ok(cert);
    }
    match rationalize(alpha / beta, RATIO_TOLERANCE, MAX_DENOMINATOR) {
        Some((p, q)) => Ok(classify(n, alpha, beta, p, q)),
        None => {
            let mut cert = certificate(n, alpha, beta, RevivalKind::None);
            cert.reason = Some("ratio not rationalizable".into());
            Ok(cert)
        }
    }
}

/// Same as [`check_conditions`] with the ratio given exactly as `p/q`;
/// `α = β·p/q`.
pub fn check_conditions_exact(n: usize, p: i64, q: i64, beta: f64) -> Result<RevivalCertificate> {
    if q <= 0 {
        return Err(Error::InvalidInput(format!("denominator q must be positive, got {q}")));
    }
    if beta == 0.0 {
        return Err(Error::InvalidInput("an exact ratio p/q needs β ≠ 0".into()));
    }
    let g = gcd(p, q).max(1);
    let (p, q) = (p / g, q / g);
    let alpha = beta * p as f64 / q as f64;
    validate(n, alpha, beta)?;
    Ok(classify(n, alpha, beta, p, q))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BalancedCheck {
    pub tau: f64,
    pub p_corner: f64,
    pub p_antipode: f64,
    pub leakage: f64,
    /// `|Re ν|` once `μ` is rotated to the positive real axis.
    pub nu_real_part: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransferCheck {
    pub tau: f64,
    pub nu_abs: f64,
    pub passed: bool,
}

/// Grid scan looking for a balanced revival.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanEvidence {
    pub window: f64,
    pub steps: usize,
    /// Largest `|μ|² + |ν|²` among scanned times with
    /// `||μ|² − |ν|²| ≤ SCAN_BALANCE_TOLERANCE`.
    pub max_balanced_support: f64,
    pub tau_at_max: f64,
    /// First scanned times that qualified as balanced revivals.
    pub balanced_hits: Vec<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericReport {
    pub certificate: RevivalCertificate,
    /// Time at which [`NumericReport::amplitudes`] were sampled: `τ_FR` when
    /// predicted, otherwise the time FR would have had.
    pub probe_tau: f64,
    #[serde(skip)]
    pub amplitudes: AntipodalAmplitudes,
    pub fr: Option<BalancedCheck>,
    pub pst: Option<TransferCheck>,
    pub scan: Option<ScanEvidence>,
    pub passed: bool,
}

fn balanced_check(spec: &WalkSpec, tau: f64) -> Result<(BalancedCheck, AntipodalAmplitudes)> {
    let amps = antipodal_amplitudes(spec, tau)?.phase_normalized();
    let (pc, pa) = (amps.mu.norm_sqr(), amps.nu.norm_sqr());
    let nu_real_part = amps.nu.re.abs();
    let passed = (pc - 0.5).abs() < BALANCE_TOLERANCE
        && (pa - 0.5).abs() < BALANCE_TOLERANCE
        && amps.leakage.abs() < BALANCE_TOLERANCE
        && nu_real_part < BALANCE_TOLERANCE;
    Ok((
        BalancedCheck {
            tau,
            p_corner: pc,
            p_antipode: pa,
            leakage: amps.leakage,
            nu_real_part,
            passed,
        },
        amps,
    ))
}

fn transfer_check(spec: &WalkSpec, tau: f64) -> Result<TransferCheck> {
    let nu_abs = antipodal_amplitudes(spec, tau)?.nu.norm();
    Ok(TransferCheck {
        tau,
        nu_abs,
        passed: nu_abs > 1.0 - BALANCE_TOLERANCE,
    })
}

/// Window `[0, W]` over which the corner/antipode dynamics repeats (exactly
/// for rational `α/β`).
pub fn scan_window(cert: &RevivalCertificate) -> f64 {
    let (a, b) = (cert.alpha.abs(), cert.beta.abs());
    match (cert.q, b > 0.0) {
        (Some(q), true) => TAU * q as f64 / b,
        (_, false) => TAU / a,
        (None, true) => TAU / if a > 0.0 { a.min(b) } else { b },
    }
}

/// Time at which a balanced revival would be expected if the conditions
/// held: `πq/(2|β|)`, or `π/(2|α|)` when `β = 0`.
pub fn candidate_time(cert: &RevivalCertificate) -> f64 {
    if let Some(t) = cert.tau_fr {
        return t;
    }
    let b = cert.beta.abs();
    if b == 0.0 {
        return PI / (2.0 * cert.alpha.abs());
    }
    PI * cert.q.unwrap_or(1) as f64 / (2.0 * b)
}

/// Scans `[0, window]` in `steps` intervals plus the candidate times, using
/// the `O(M)` shell-sum amplitudes.
pub fn scan_for_balanced_revival(spec: &WalkSpec, window: f64, steps: usize, candidates: &[f64]) -> ScanEvidence {
    let mut best = (f64::NEG_INFINITY, 0.0);
    let mut hits = Vec::new();
    let grid = (0..=steps).map(|k| window * k as f64 / steps as f64);
    for tau in grid.chain(candidates.iter().copied()) {
        let a = antipodal_amplitudes_spectral(spec, tau);
        let (pc, pa) = (a.mu.norm_sqr(), a.nu.norm_sqr());
        if (pc - pa).abs() > SCAN_BALANCE_TOLERANCE {
            continue;
        }
        let support = pc + pa;
        if support > best.0 {
            best = (support, tau);
        }
        if support >= 1.0 - SCAN_TOLERANCE && hits.len() < 8 {
            hits.push(tau);
        }
    }
    let max_balanced_support = best.0.max(0.0);
    ScanEvidence {
        window,
        steps,
        max_balanced_support,
        tau_at_max: best.1,
        passed: hits.is_empty(),
        balanced_hits: hits,
    }
}

/// Confirms a certificate numerically on the graph walk.
pub fn certify_numeric(n: usize, alpha: f64, beta: f64) -> Result<NumericReport> {
    let cert = check_conditions(n, alpha, beta)?;
    certify_certificate(cert)
}

/// [`certify_numeric`] for an already computed certificate.
pub fn certify_certificate(cert: RevivalCertificate) -> Result<NumericReport> {
    let spec = WalkSpec::for_chain(cert.n, cert.alpha, cert.beta)?;
    let probe_tau = candidate_time(&cert);
    let (probe, amplitudes) = balanced_check(&spec, probe_tau)?;

    let fr = cert.predicts_fr().then_some(probe);
    let pst = match cert.tau_pst {
        Some(t) => Some(transfer_check(&spec, t)?),
        None => None,
    };
    let scan = (!cert.predicts_fr()).then(|| {
        let b = cert.beta.abs();
        let mut candidates = vec![probe_tau];
        if b > 0.0 {
            candidates.extend((1..=8).map(|j| j as f64 * PI / (2.0 * b)));
        }
        scan_for_balanced_revival(&spec, scan_window(&cert), SCAN_STEPS, &candidates)
    });

    let passed = fr.is_none_or(|c| c.passed)
        && pst.is_none_or(|c| c.passed)
        && scan.as_ref().is_none_or(|s| s.passed);
    Ok(NumericReport {
        certificate: cert,
        probe_tau,
        amplitudes,
        fr,
        pst,
        scan,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendixRow {
    /// Eigenspace index `s` of `ℰ_s`, `0..=N−1`.
    pub s: usize,
    pub tau_energy: f64,
    /// `M_{⌊s/2⌋}`.
    pub m_half: f64,
    /// `|e^{−iM} − 1|`.
    pub m_phase_dev: f64,
    /// `|e^{−i4τα⌊s/2⌋} − 1|`.
    pub shift_phase_dev: f64,
    /// `|τℰ_s − (φ + M ∓ δ [+ 4τα⌊s/2⌋])|`.
    pub decomposition_dev: f64,
    /// `|e^{−iτℰ_s} − e^{−iφ′}(1 ± i(−1)^s)/√2|`.
    pub identity_dev: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendixReport {
    pub tau: f64,
    pub delta: f64,
    pub phi: f64,
    pub phi_prime: f64,
    /// The `±` in `(A_0 ± iA_{N−1})/√2`.
    pub sign: i8,
    /// Distance from `e^{iδ}` to the nearest of `±(1 ± i)/√2`.
    pub delta_phase_dev: f64,
    pub rows: Vec<AppendixRow>,
    /// Largest scalar identity deviation over `s`.
    pub max_identity_dev: f64,
    /// Entrywise deviation of the dense-oracle unitary (`N − 1 ≤ 8`).
    pub matrix_dev: Option<f64>,
    /// Column-by-column deviation of the transform propagator (`N − 1 ≤ 8`).
    pub propagator_dev: Option<f64>,
    pub passed: bool,
}

fn phase_dev(angle: f64) -> f64 {
    (Complex64::from_polar(1.0, -angle) - 1.0).norm()
}

/// Eigenvalue-by-eigenvalue verification of the balanced-FR unitary at
/// `τ_FR`. Refuses unless the certificate predicts balanced FR.
pub fn appendix_phase_check(n: usize, alpha: f64, beta: f64) -> Result<AppendixReport> {
    let cert = check_conditions(n, alpha, beta)?;
    let tau = match (cert.kind, cert.tau_fr) {
        (RevivalKind::BalancedFr, Some(t)) => t,
        _ => {
            return Err(Error::Precondition(
                cert.reason.unwrap_or_else(|| "no balanced FR predicted".into()),
            ))
        }
    };
    let spec = WalkSpec::for_chain(n, alpha, beta)?;
    let nf = n as f64;
    let delta = 0.5 * tau * (alpha - alpha * (nf - 1.0) - beta);
    let phi = tau * (0.25 * alpha * (nf - 1.0) * (nf - 2.0) + 0.5 * beta * (nf - 1.0)) + delta;

    // e^{iδ} = σ(1 + iε)/√2
    let w = Complex64::from_polar(1.0, delta) / FRAC_1_SQRT_2;
    let sigma = if w.re >= 0.0 { 1.0 } else { -1.0 };
    let eps = if w.im * sigma >= 0.0 { 1i8 } else { -1i8 };
    let delta_phase_dev =
        (w - Complex64::new(sigma, sigma * eps as f64)).norm() * FRAC_1_SQRT_2;
    let phi_prime = if sigma > 0.0 { phi } else { phi + PI }.rem_euclid(TAU);
    let global = Complex64::from_polar(1.0, -phi_prime);

    let rows: Vec<AppendixRow> = graph_spectrum(&spec)
        .into_iter()
        .enumerate()
        .map(|(s, energy)| {
            let tau_energy = tau * energy;
            let h = (s / 2) as f64;
            let m_half = 4.0 * tau * alpha * h * h - 2.0 * tau * alpha * (nf - 1.0) * h - 2.0 * tau * beta * h;
            let shift = 4.0 * tau * alpha * h;
            let rebuilt = if s % 2 == 0 {
                phi + m_half - delta
            } else {
                phi + m_half + shift + delta
            };
            let parity = if s % 2 == 0 { 1.0 } else { -1.0 };
            let expected = global * Complex64::new(1.0, eps as f64 * parity) * FRAC_1_SQRT_2;
            AppendixRow {
                s,
                tau_energy,
                m_half,
                m_phase_dev: phase_dev(m_half),
                shift_phase_dev: phase_dev(shift),
                decomposition_dev: (tau_energy - rebuilt).abs() / tau_energy.abs().max(1.0),
                identity_dev: (Complex64::from_polar(1.0, -tau_energy) - expected).norm(),
            }
        })
        .collect();
    let max_identity_dev = rows.iter().map(|r| r.identity_dev).fold(0.0, f64::max);

    let (matrix_dev, propagator_dev) = if spec.m() <= APPENDIX_MATRIX_MAX_M {
        let dim = vertex_count(spec.m());
        let anti = dim - 1;
        let target = |x: usize, y: usize| {
            let mut v = Complex64::new(0.0, 0.0);
            if x == y {
                v += 1.0;
            }
            if x ^ y == anti {
                v += Complex64::new(0.0, eps as f64);
            }
            global * v * FRAC_1_SQRT_2
        };
        let dense = DenseOracle::new(spec)?.unitary(tau);
        let mut matrix_dev: f64 = 0.0;
        for x in 0..dim {
            for y in 0..dim {
                matrix_dev = matrix_dev.max((dense[x * dim + y] - target(x, y)).norm());
            }
        }
        let prop = GraphPropagator::new(spec);
        let mut propagator_dev: f64 = 0.0;
        for y in 0..dim {
            let col = prop.evolve(&AmplitudeVector::basis(dim, y)?, tau)?;
            for x in 0..dim {
                propagator_dev = propagator_dev.max((col[x] - target(x, y)).norm());
            }
        }
        (Some(matrix_dev), Some(propagator_dev))
    } else {
        (None, None)
    };

    let passed = delta_phase_dev < APPENDIX_TOLERANCE
        && max_identity_dev < APPENDIX_TOLERANCE
        && rows.iter().all(|r| {
            r.m_phase_dev < APPENDIX_TOLERANCE
                && r.shift_phase_dev < APPENDIX_TOLERANCE
                && r.decomposition_dev < APPENDIX_TOLERANCE
        })
        && matrix_dev.is_none_or(|d| d < APPENDIX_TOLERANCE)
        && propagator_dev.is_none_or(|d| d < APPENDIX_TOLERANCE);

    Ok(AppendixReport {
        tau,
        delta,
        phi,
        phi_prime,
        sign: eps,
        delta_phase_dev,
        rows,
        max_identity_dev,
        matrix_dev,
        propagator_dev,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn rationalize_examples() {
        assert_eq!(rationalize(1.0, 1e-9, 1_000_000), Some((1, 1)));
        assert_eq!(rationalize(2.0 / 3.0, 1e-9, 1_000_000), Some((2, 3)));
        assert_eq!(rationalize(-0.6, 1e-9, 1_000_000), Some((-3, 5)));
        assert_eq!(rationalize(0.0, 1e-9, 1_000_000), Some((0, 1)));
        assert!(rationalize(2f64.sqrt(), 1e-9, 1_000_000).is_none_or(|(_, q)| q > 1000));
        assert_eq!(rationalize(std::f64::consts::PI, 1e-15, 1_000_000), None);
        assert_eq!(rationalize(f64::NAN, 1e-9, 10), None);
    }

    #[test]
    fn certificate_examples() {
        let c = check_conditions(4, 2.0, 2.0).unwrap();
        assert_eq!((c.kind, c.p, c.q), (RevivalKind::BalancedFr, Some(1), Some(1)));
        assert!((c.tau_fr.unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!((c.tau_pst.unwrap() - FRAC_PI_2).abs() < 1e-15);

        let c = check_conditions(5, 1.0, 0.0).unwrap();
        assert_eq!(c.kind, RevivalKind::BalancedFr);
        assert!((c.tau_fr.unwrap() - FRAC_PI_2).abs() < 1e-15);

        let c = check_conditions(4, 2.0, 1.0).unwrap();
        assert_eq!((c.kind, c.p, c.q), (RevivalKind::PstOnly, Some(2), Some(1)));
        assert!((c.tau_pst.unwrap() - PI).abs() < 1e-15);
        assert!(c.tau_fr.is_none());

        let c = check_conditions(5, 2.0, 2.0).unwrap();
        assert_eq!(c.kind, RevivalKind::None);

        let c = check_conditions(6, 2.0, 0.0).unwrap();
        assert_eq!(c.kind, RevivalKind::None);

        let c = check_conditions(3, 0.0, 1.0).unwrap();
        assert_eq!(c.kind, RevivalKind::PstOnly);
        assert!((c.tau_pst.unwrap() - PI).abs() < 1e-15);
    }

    #[test]
    fn certificate_errors_and_refusals() {
        assert!(matches!(check_conditions(3, 0.0, 0.0), Err(Error::InvalidInput(m)) if m.contains("(α, β) ≠ (0, 0)")));
        assert!(check_conditions(1, 1.0, 1.0).is_err());
        // within 1e-9 and q <= 1e6 almost any double has a convergent
        let c = check_conditions(4, 2f64.sqrt() * std::f64::consts::E, 1.0).unwrap();
        assert_eq!(c.kind, RevivalKind::None);
        assert!(c.q.unwrap() > 10_000);
        assert_eq!(rationalize(2f64.sqrt(), 1e-14, 1_000), None);
    }

    #[test]
    fn exact_ratio_bypass() {
        let c = check_conditions_exact(4, 2, 2, 2.0).unwrap();
        assert_eq!((c.p, c.q, c.kind), (Some(1), Some(1), RevivalKind::BalancedFr));
        assert_eq!(c.alpha, 2.0);
        assert!(check_conditions_exact(4, 1, 0, 1.0).is_err());
        assert!(check_conditions_exact(4, 1, 3, 0.0).is_err());
    }

    #[test]
    fn negative_weights_use_magnitudes() {
        let c = check_conditions(4, -2.0, 2.0).unwrap();
        assert_eq!((c.kind, c.p, c.q), (RevivalKind::BalancedFr, Some(-1), Some(1)));
        assert!((c.tau_fr.unwrap() - FRAC_PI_4).abs() < 1e-15);
        for &(a, b) in &[(-2.0, 2.0), (2.0, -2.0), (-2.0, -2.0)] {
            let r = certify_numeric(4, a, b).unwrap();
            assert!(r.passed, "alpha={a} beta={b}");
            assert!(appendix_phase_check(4, a, b).unwrap().passed);
        }
        assert!(certify_numeric(5, -1.0, 0.0).unwrap().passed);
    }

    #[test]
    fn two_site_chain_revives_for_any_ratio() {
        for &(a, b) in &[(2.0, 1.0), (1.0, 2.0), (0.3, 1.0)] {
            let c = check_conditions(2, a, b).unwrap();
            assert_eq!(c.kind, RevivalKind::BalancedFr);
            assert!((c.tau_fr.unwrap() - PI / (2.0 * b)).abs() < 1e-15);
            assert!(certify_numeric(2, a, b).unwrap().passed);
        }
        assert_eq!(check_conditions(2, 1.0, 0.0).unwrap().kind, RevivalKind::None);
    }

    #[test]
    fn numeric_certification_examples() {
        let r = certify_numeric(4, 2.0, 2.0).unwrap();
        assert!(r.passed);
        let fr = r.fr.unwrap();
        assert!((fr.p_corner - 0.5).abs() < 1e-12 && (fr.p_antipode - 0.5).abs() < 1e-12);
        assert!(r.pst.unwrap().passed);

        let r = certify_numeric(5, 2.0, 2.0).unwrap();
        assert_eq!(r.certificate.kind, RevivalKind::None);
        let scan = r.scan.unwrap();
        assert!(scan.passed);
        assert!(scan.max_balanced_support < 1.0 - SCAN_TOLERANCE);

        let r = certify_numeric(3, 0.0, 1.0).unwrap();
        assert!(r.passed);
        assert!(r.pst.unwrap().nu_abs > 1.0 - 1e-9);
        assert!(r.scan.unwrap().passed);
    }

    #[test]
    fn appendix_examples() {
        let r = appendix_phase_check(4, 2.0, 2.0).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.matrix_dev.unwrap() < 1e-10);
        // s = 0 fixes φ′: e^{−iτℰ_0} = e^{−iφ′}(1 ± i)/√2
        let e0 = Complex64::from_polar(1.0, -r.rows[0].tau_energy);
        let anchor = Complex64::from_polar(1.0, -r.phi_prime) * Complex64::new(1.0, r.sign as f64) * FRAC_1_SQRT_2;
        assert!((e0 - anchor).norm() < 1e-12);

        let r = appendix_phase_check(5, 1.0, 0.0).unwrap();
        assert!(r.passed);
        for row in &r.rows {
            let h = (row.s / 2) as f64;
            // M = 2πh² − π(N−1)h
            assert!((row.m_half - (TAU * h * h - PI * 4.0 * h)).abs() < 1e-12);
        }
        // δ = −3π/4, i.e. πN/4 modulo 2π
        assert!((r.delta + 3.0 * FRAC_PI_4).abs() < 1e-12);
        assert!((r.delta + TAU - 5.0 * FRAC_PI_4).abs() < 1e-12);

        assert!(matches!(appendix_phase_check(5, 2.0, 2.0), Err(Error::Precondition(_))));
    }
}
