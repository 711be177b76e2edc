use num_complex::Complex64;
use std::ops::Index;

use crate::error::{Error, Result};

/// Tolerance on `‖ψ‖₂ − 1` accepted by the normalized constructors.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Dense vector of complex amplitudes, indexed by hypercube vertex or by
/// (0-based) chain site.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeVector {
    amplitudes: Vec<Complex64>,
}

impl AmplitudeVector {
    /// Wraps raw amplitudes without any normalization check. Used for
    /// intermediates such as `A_i ψ`.
    pub fn from_raw(amplitudes: Vec<Complex64>) -> Self {
        AmplitudeVector { amplitudes }
    }

    /// Wraps amplitudes that must form a quantum state (unit norm within
    /// [`NORM_TOLERANCE`]).
    pub fn new_state(amplitudes: Vec<Complex64>) -> Result<Self> {
        let v = AmplitudeVector { amplitudes };
        v.require_normalized()?;
        Ok(v)
    }

    pub fn from_real(values: &[f64]) -> Self {
        AmplitudeVector {
            amplitudes: values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn zeros(len: usize) -> Self {
        AmplitudeVector {
            amplitudes: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    /// Computational basis state `|index⟩` in dimension `len`.
    pub fn basis(len: usize, index: usize) -> Result<Self> {
        if index >= len {
            return Err(Error::InvalidInput(format!(
                "basis index {index} out of range for dimension {len}"
            )));
        }
        let mut v = Self::zeros(len);
        v.amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// `Σ|ψ_i|²` with Neumaier compensation, so the error stays near one
    /// ulp for state vectors with millions of entries.
    pub fn norm_sqr(&self) -> f64 {
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for a in &self.amplitudes {
            let v = a.norm_sqr();
            let t = sum + v;
            comp += if sum.abs() >= v { (sum - t) + v } else { (v - t) + sum };
            sum = t;
        }
        sum + comp
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn require_normalized(&self) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(())
    }

    pub fn require_len(&self, expected: usize) -> Result<()> {
        if self.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.len(),
            });
        }
        Ok(())
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &AmplitudeVector) -> Result<Complex64> {
        other.require_len(self.len())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn scale(&self, factor: Complex64) -> AmplitudeVector {
        AmplitudeVector {
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &AmplitudeVector) -> Result<f64> {
        other.require_len(self.len())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Unit phase of the largest-magnitude component (first one on ties).
    pub fn reference_phase(&self) -> Complex64 {
        let mut best = Complex64::new(1.0, 0.0);
        let mut best_abs = 0.0;
        for a in &self.amplitudes {
            let m = a.norm();
            if m > best_abs {
                best_abs = m;
                best = a / m;
            }
        }
        best
    }

    /// Max-abs distance between `self` and `other` after removing one global
    /// phase from each, fixed by `self`'s largest-magnitude component.
    pub fn phase_aligned_diff(&self, other: &AmplitudeVector) -> Result<f64> {
        other.require_len(self.len())?;
        let idx = self
            .amplitudes
            .iter()
            .enumerate()
            .fold((0, 0.0), |(bi, bm), (i, a)| {
                if a.norm() > bm {
                    (i, a.norm())
                } else {
                    (bi, bm)
                }
            })
            .0;
        let mine = self.amplitudes[idx];
        let theirs = other.amplitudes[idx];
        if theirs.norm() == 0.0 || mine.norm() == 0.0 {
            return self.max_abs_diff(other);
        }
        // rotate `other` so its component at `idx` has the same phase as ours
        let rot = (mine / mine.norm()) / (theirs / theirs.norm());
        self.max_abs_diff(&other.scale(rot))
    }
}

impl Index<usize> for AmplitudeVector {
    type Output = Complex64;

    fn index(&self, index: usize) -> &Complex64 {
        &self.amplitudes[index]
    }
}

impl From<Vec<Complex64>> for AmplitudeVector {
    fn from(v: Vec<Complex64>) -> Self {
        AmplitudeVector::from_raw(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_state_rejects_unnormalized() {
        let err = AmplitudeVector::new_state(vec![Complex64::new(1.0, 0.0); 2]).unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
        let s = 0.5f64.sqrt();
        assert!(AmplitudeVector::new_state(vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)]).is_ok());
    }

    #[test]
    fn basis_out_of_range() {
        assert!(AmplitudeVector::basis(4, 4).is_err());
        let e = AmplitudeVector::basis(4, 2).unwrap();
        assert_eq!(e.probabilities(), vec![0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn phase_alignment_ignores_global_phase() {
        let a = AmplitudeVector::from_real(&[0.6, 0.8]);
        let b = a.scale(Complex64::from_polar(1.0, 1.234));
        assert!(a.max_abs_diff(&b).unwrap() > 0.1);
        assert!(a.phase_aligned_diff(&b).unwrap() < 1e-15);
    }
}
