//! Small dense linear-algebra helpers on complex matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Dense complex matrix used throughout the crate.
pub type CMatrix = DMatrix<Complex64>;

/// Spectral norm (largest singular value). Returns 0 for an empty matrix.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    m.clone()
        .singular_values()
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Smallest singular value.
pub fn least_singular_value(m: &CMatrix) -> f64 {
    m.clone()
        .singular_values()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// Maximum entrywise deviation from Hermitian symmetry, `max |m_jk - conj(m_kj)|`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut defect = 0.0f64;
    for j in 0..n {
        for k in j..n {
            let d = (m[(j, k)] - m[(k, j)].conj()).norm();
            defect = defect.max(d);
        }
    }
    defect
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    hermitian_defect(m) <= tol
}

/// Hermitian part `(m + m^H) / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).map(|v| v * 0.5)
}

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
/// first so that tiny assembly round-off cannot leak imaginary parts.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let eig = nalgebra::SymmetricEigen::new(hermitian_part(m));
    let mut vals: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

/// Maximum entrywise deviation from the identity.
pub fn identity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut defect = 0.0f64;
    for j in 0..n {
        for k in 0..n {
            let target = if j == k { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            defect = defect.max((m[(j, k)] - target).norm());
        }
    }
    defect
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermitian_detection() {
        let h = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.3, 0.2), c(0.3, -0.2), c(2.0, 0.0)]);
        assert!(is_hermitian(&h, 0.0));
        let g = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.3, 0.2), c(0.3, 0.2), c(2.0, 0.0)]);
        assert!(!is_hermitian(&g, 1e-3));
        assert!((hermitian_defect(&g) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn norms_of_diagonal() {
        let d = CMatrix::from_row_slice(2, 2, &[c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-5.0, 0.0)]);
        assert!((spectral_norm(&d) - 5.0).abs() < 1e-12);
        assert!((least_singular_value(&d) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn hermitian_eigenvalues_sorted() {
        let h = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.9), c(0.0, -0.9), c(1.0, 0.0)]);
        let vals = hermitian_eigenvalues(&h);
        assert!((vals[0] - 0.1).abs() < 1e-12);
        assert!((vals[1] - 1.9).abs() < 1e-12);
    }
}
