//! Dense real-symmetric eigendecomposition and the induced propagator
//! `e^{-iτH} = V·diag(e^{-iτλ})·Vᵀ`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::state::AmplitudeVector;

pub(crate) struct DensePropagator {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

impl DensePropagator {
    pub(crate) fn new(matrix: DMatrix<f64>) -> Self {
        debug_assert!(matrix.is_square());
        let eig = SymmetricEigen::new(matrix);
        DensePropagator {
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            eigenvectors: eig.eigenvectors,
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub(crate) fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Applies `e^{-iτH}` to `psi`; the caller checks the dimension.
    pub(crate) fn apply(&self, psi: &AmplitudeVector, tau: f64) -> AmplitudeVector {
        let n = self.dim();
        let v = &self.eigenvectors;
        let src = psi.as_slice();
        // coefficients in the eigenbasis, c_k = Σ_x V[x,k] ψ(x)
        let coeffs: Vec<Complex64> = (0..n)
            .map(|k| {
                let col = v.column(k);
                let c: Complex64 = (0..n).map(|x| src[x] * col[x]).sum();
                c * Complex64::from_polar(1.0, -tau * self.eigenvalues[k])
            })
            .collect();
        let out = (0..n)
            .map(|x| (0..n).map(|k| coeffs[k] * v[(x, k)]).sum())
            .collect();
        AmplitudeVector::from_raw(out)
    }

    /// Full unitary `e^{-iτH}` as a row-major `n × n` complex array.
    pub(crate) fn unitary(&self, tau: f64) -> Vec<Complex64> {
        let n = self.dim();
        let v = &self.eigenvectors;
        let phases: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&l| Complex64::from_polar(1.0, -tau * l))
            .collect();
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for x in 0..n {
            for y in 0..n {
                out[x * n + y] = (0..n).map(|k| phases[k] * (v[(x, k)] * v[(y, k)])).sum();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_level_oscillation() {
        // H = σx: e^{-iτσx}|0⟩ = cos τ |0⟩ − i sin τ |1⟩
        let h = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let prop = DensePropagator::new(h);
        let psi = AmplitudeVector::basis(2, 0).unwrap();
        let tau = 0.37;
        let out = prop.apply(&psi, tau);
        assert!((out[0] - Complex64::new(tau.cos(), 0.0)).norm() < 1e-14);
        assert!((out[1] - Complex64::new(0.0, -tau.sin())).norm() < 1e-14);
        let u = prop.unitary(tau);
        assert!((u[2] - out[1]).norm() < 1e-14);
    }
}
