//! The quadratic matrix polynomial `M(z) = A0 - 2 z A1 + z^2 A2`.
//!
//! The coefficients are Gram-type matrices of operator inner products over a
//! finite basis: `[A0]_jk = <A e_j, A e_k>`, `[A1]_jk = <A e_j, e_k>`,
//! `[A2]_jk = <e_j, e_k>`. Assembly enforces Hermitian symmetry and positive
//! definiteness of the Gram matrix `A2`; perturbed pencils built through
//! [`QuadraticPencil::from_matrices`] are allowed to break Hermiticity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::models::OperatorModel;

/// Entrywise tolerance for Hermitian symmetry of assembled coefficients.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Tolerance for the `A2 == I` check on orthonormal bases.
pub const ORTHONORMALITY_TOL: f64 = 1e-12;

/// Ordered basis labels for a trial subspace, with an orthonormality flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSpec {
    indices: Vec<i64>,
    orthonormal: bool,
}

impl BasisSpec {
    pub fn new(indices: Vec<i64>, orthonormal: bool) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyBasis);
        }
        let mut seen = std::collections::HashSet::new();
        for &label in &indices {
            if !seen.insert(label) {
                return Err(Error::DuplicateBasisLabel { label });
            }
        }
        Ok(Self { indices, orthonormal })
    }

    /// The symmetric Fourier window `-n..=n`, orthonormal.
    pub fn symmetric_range(n: usize) -> Self {
        let n = n as i64;
        Self {
            indices: (-n..=n).collect(),
            orthonormal: true,
        }
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }
}

/// Assembly diagnostics: the largest pre-symmetrization Hermiticity defect of
/// each coefficient. Analytic entry formulas are exactly Hermitian, so a
/// nonzero defect signals an entry-formula regression in the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssemblyMetadata {
    pub hermiticity_defect: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticPencil {
    n: usize,
    a0: CMatrix,
    a1: CMatrix,
    a2: CMatrix,
    assembly: Option<AssemblyMetadata>,
}

impl QuadraticPencil {
    /// Assemble the pencil from an operator model over the given basis.
    ///
    /// Every coefficient is cross-checked against its conjugate transpose,
    /// then symmetrized entry by entry; the pre-symmetrization defect is kept
    /// in [`AssemblyMetadata`]. The Gram matrix must be positive definite and
    /// `A0` positive semidefinite.
    pub fn assemble(model: &dyn OperatorModel, basis: &BasisSpec) -> Result<Self> {
        let n = basis.len();
        let labels = basis.indices();
        // (p, q) powers defining each coefficient: A0 from (1,1), A1 from (1,0), A2 from (0,0).
        let powers: [(u8, u8); 3] = [(1, 1), (1, 0), (0, 0)];
        let mut mats = Vec::with_capacity(3);
        let mut defects = [0.0f64; 3];

        for (idx, &(p, q)) in powers.iter().enumerate() {
            let mut m = CMatrix::zeros(n, n);
            for (row, &j) in labels.iter().enumerate() {
                for (col, &k) in labels.iter().enumerate() {
                    m[(row, col)] = model.inner_product(p, q, j, k)?;
                }
            }
            for row in 0..n {
                for col in row..n {
                    let defect = (m[(row, col)] - m[(col, row)].conj()).norm();
                    if defect > HERMITICITY_TOL {
                        return Err(Error::NonHermitianEntry {
                            p,
                            q,
                            j: labels[row],
                            k: labels[col],
                            defect,
                        });
                    }
                    defects[idx] = defects[idx].max(defect);
                }
            }
            mats.push(linalg::hermitian_part(&m));
        }

        let a2 = mats.pop().expect("three coefficients");
        let a1 = mats.pop().expect("three coefficients");
        let a0 = mats.pop().expect("three coefficients");

        if basis.is_orthonormal() {
            let defect = linalg::identity_defect(&a2);
            if defect > ORTHONORMALITY_TOL {
                return Err(Error::GramNotIdentity { defect });
            }
        }
        let gram_eigs = linalg::hermitian_eigenvalues(&a2);
        let min_gram = gram_eigs[0];
        if min_gram <= 0.0 {
            return Err(Error::DegenerateBasis { min_eigenvalue: min_gram });
        }
        let min_a0 = linalg::hermitian_eigenvalues(&a0)[0];
        if min_a0 < -1e-10 {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min_a0 });
        }

        Ok(Self {
            n,
            a0,
            a1,
            a2,
            assembly: Some(AssemblyMetadata { hermiticity_defect: defects }),
        })
    }

    /// Build a pencil directly from coefficient matrices.
    ///
    /// Only shapes are validated; Hermiticity is deliberately not required so
    /// that perturbed coefficient sets remain representable.
    pub fn from_matrices(a0: CMatrix, a1: CMatrix, a2: CMatrix) -> Result<Self> {
        let n = a0.nrows();
        for m in [&a0, &a1, &a2] {
            if m.nrows() != n || m.ncols() != n || n == 0 {
                return Err(Error::DimensionMismatch { n, rows: m.nrows(), cols: m.ncols() });
            }
        }
        Ok(Self { n, a0, a1, a2, assembly: None })
    }

    /// Subspace dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn a0(&self) -> &CMatrix {
        &self.a0
    }

    pub fn a1(&self) -> &CMatrix {
        &self.a1
    }

    pub fn a2(&self) -> &CMatrix {
        &self.a2
    }

    pub fn assembly_metadata(&self) -> Option<&AssemblyMetadata> {
        self.assembly.as_ref()
    }

    /// True when all three coefficients are Hermitian within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        linalg::is_hermitian(&self.a0, tol)
            && linalg::is_hermitian(&self.a1, tol)
            && linalg::is_hermitian(&self.a2, tol)
    }

    /// `M(z) = A0 - 2 z A1 + z^2 A2`.
    pub fn evaluate(&self, z: Complex64) -> CMatrix {
        let two_z = Complex64::new(2.0, 0.0) * z;
        let z2 = z * z;
        let mut m = self.a0.clone();
        m.zip_zip_apply(&self.a1, &self.a2, |out, m1, m2| {
            *out = *out - two_z * m1 + z2 * m2;
        });
        m
    }

    /// Least singular value of `M(z)`; zero exactly at solutions of the
    /// quadratic problem.
    pub fn least_singular_value(&self, z: Complex64) -> f64 {
        linalg::least_singular_value(&self.evaluate(z))
    }

    /// The basis constant `beta = sqrt(lambda_min(A2))`, the largest constant
    /// with `|u| >= beta |coefficients(u)|` on the subspace.
    ///
    /// Computed with a Hermitian eigensolver on (the Hermitian part of) `A2`
    /// so the result is guaranteed real and nonnegative.
    pub fn beta(&self) -> Result<f64> {
        let eigs = linalg::hermitian_eigenvalues(&self.a2);
        let min = eigs[0];
        let max = eigs[eigs.len() - 1].max(1.0);
        if min <= max * 1e-14 {
            return Err(Error::DegenerateBasis { min_eigenvalue: min });
        }
        Ok(min.sqrt())
    }

    /// Norm scale `max(|A0|, |A1|, |A2|)` used for residual normalization.
    pub fn norm_scale(&self) -> f64 {
        linalg::spectral_norm(&self.a0)
            .max(linalg::spectral_norm(&self.a1))
            .max(linalg::spectral_norm(&self.a2))
    }

    /// SHA-256 digest of the exact coefficient bits (dimension, then the
    /// three matrices row-major, each entry as little-endian `re` and `im`).
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(b"quadratic-pencil-v1");
        hasher.update((self.n as u64).to_le_bytes());
        for m in [&self.a0, &self.a1, &self.a2] {
            for row in 0..self.n {
                for col in 0..self.n {
                    let v = m[(row, col)];
                    hasher.update(v.re.to_le_bytes());
                    hasher.update(v.im.to_le_bytes());
                }
            }
        }
        let bytes = hasher.finalize();
        bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Serialize to the documented JSON schema:
    /// `{"n": int, "a0": [[re, im], ...] row-major, "a1": ..., "a2": ...}`.
    /// Round-trips are bit-preserving for finite doubles.
    pub fn to_json(&self) -> String {
        let doc = PencilDocument::from(self);
        serde_json::to_string(&doc).expect("pencil serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PencilDocument =
            serde_json::from_str(text).map_err(|e| Error::Deserialization(e.to_string()))?;
        doc.into_pencil()
    }
}

#[derive(Serialize, Deserialize)]
struct PencilDocument {
    n: usize,
    a0: Vec<[f64; 2]>,
    a1: Vec<[f64; 2]>,
    a2: Vec<[f64; 2]>,
}

fn matrix_to_pairs(m: &CMatrix) -> Vec<[f64; 2]> {
    let n = m.nrows();
    let mut out = Vec::with_capacity(n * n);
    for row in 0..n {
        for col in 0..n {
            let v = m[(row, col)];
            out.push([v.re, v.im]);
        }
    }
    out
}

fn pairs_to_matrix(n: usize, pairs: &[[f64; 2]]) -> Result<CMatrix> {
    if pairs.len() != n * n {
        return Err(Error::Deserialization(format!(
            "expected {} entries for an {n}x{n} matrix, got {}",
            n * n,
            pairs.len()
        )));
    }
    let mut m = CMatrix::zeros(n, n);
    for row in 0..n {
        for col in 0..n {
            let [re, im] = pairs[row * n + col];
            m[(row, col)] = Complex64::new(re, im);
        }
    }
    Ok(m)
}

impl From<&QuadraticPencil> for PencilDocument {
    fn from(p: &QuadraticPencil) -> Self {
        Self {
            n: p.n,
            a0: matrix_to_pairs(&p.a0),
            a1: matrix_to_pairs(&p.a1),
            a2: matrix_to_pairs(&p.a2),
        }
    }
}

impl PencilDocument {
    fn into_pencil(self) -> Result<QuadraticPencil> {
        if self.n == 0 {
            return Err(Error::Deserialization("pencil dimension must be positive".into()));
        }
        QuadraticPencil::from_matrices(
            pairs_to_matrix(self.n, &self.a0)?,
            pairs_to_matrix(self.n, &self.a1)?,
            pairs_to_matrix(self.n, &self.a2)?,
        )
    }
}

/// A 1x1 pencil `(lambda^2, lambda, 1)` whose evaluation is `(z - lambda)^2`.
/// Handy as an exactly solvable fixture.
pub fn scalar_pencil(lambda: f64) -> QuadraticPencil {
    let c = |v: f64| CMatrix::from_element(1, 1, Complex64::new(v, 0.0));
    QuadraticPencil::from_matrices(c(lambda * lambda), c(lambda), c(1.0))
        .expect("1x1 shapes are valid")
}
