//! Operator models: sources of the inner products `<A^p e_j, A^q e_k>`.
//!
//! The main model is the rank-one-perturbed multiplication operator on
//! `L^2[-pi, pi]`: `A phi = a phi + <phi, e_0> e_0` with `a` the indicator of
//! `[0, pi)` and `e_k(x) = (2 pi)^{-1/2} e^{ikx}` the Fourier basis. Its
//! essential spectrum is `{0, 1}` and its two discrete eigenvalues are
//! `1 -+ sqrt(2)/2`; the lower one sits inside the gap `(0, 1)`, which is
//! exactly where Galerkin truncations pollute.
//!
//! Only powers `p, q <= 1` are ever requested, so models never need inner
//! products involving `A^2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pencil::BasisSpec;

/// Maximum recursion depth of the adaptive quadrature.
const QUADRATURE_MAX_DEPTH: u32 = 48;

/// Abstract source of operator inner products over a labelled basis.
pub trait OperatorModel: Send + Sync {
    /// `<A^p e_j, A^q e_k>` for `p, q` in `{0, 1}`.
    fn inner_product(&self, p: u8, q: u8, j: i64, k: i64) -> Result<Complex64>;

    /// Natural truncation basis for parameter `n`.
    fn basis(&self, n: usize) -> BasisSpec;

    /// Exact spectrum, when known.
    fn exact_spectrum(&self) -> Option<SpectrumDescription>;
}

/// Known spectrum of a model operator: essential points, discrete
/// eigenvalues, and the spectral gap the experiments target.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumDescription {
    pub essential_points: Vec<f64>,
    pub discrete_eigenvalues: Vec<f64>,
    pub gap_of_interest: (f64, f64),
}

impl SpectrumDescription {
    /// All spectrum points, essential then discrete.
    pub fn all_points(&self) -> Vec<f64> {
        let mut pts = self.essential_points.clone();
        pts.extend_from_slice(&self.discrete_eigenvalues);
        pts
    }

    /// Distance from `x` to the nearest spectrum point.
    pub fn distance_to(&self, x: f64) -> f64 {
        self.all_points()
            .iter()
            .map(|p| (x - p).abs())
            .fold(f64::INFINITY, f64::min)
    }
}

/// The fixed case-study operator. All inner products have closed forms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CaseStudyModel;

/// `<a e_j, e_k>` for the indicator symbol: `1/2` on the diagonal, zero for
/// even nonzero `j - k`, and `i / (pi (j - k))` for odd `j - k`.
fn symbol_entry(j: i64, k: i64) -> Complex64 {
    let m = j - k;
    if m == 0 {
        Complex64::new(0.5, 0.0)
    } else if m % 2 == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0 / (PI * m as f64))
    }
}

/// Closed-form `<A^p e_j, A^q e_k>` for the case-study operator.
///
/// The rank-one term contributes `delta_j0 delta_k0` for `p + q = 1` and the
/// expanded cross terms `<a e_j, e_0> delta_k0 + delta_j0 <e_0, a e_k> +
/// delta_j0 delta_k0` for `p = q = 1`; the symbol part uses `a^2 = a`.
pub fn case_study_entry(p: u8, q: u8, j: i64, k: i64) -> Result<Complex64> {
    if p > 1 || q > 1 {
        return Err(Error::InvalidPower { p, q });
    }
    let delta_j0 = j == 0;
    let delta_k0 = k == 0;
    let rank_one = if delta_j0 && delta_k0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
    Ok(match (p, q) {
        (0, 0) => {
            if j == k {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }
        (1, 0) | (0, 1) => symbol_entry(j, k) + rank_one,
        (1, 1) => {
            let mut v = symbol_entry(j, k);
            if delta_k0 {
                v += symbol_entry(j, 0);
            }
            if delta_j0 {
                v += symbol_entry(0, k);
            }
            v + rank_one
        }
        _ => unreachable!("powers validated above"),
    })
}

impl OperatorModel for CaseStudyModel {
    fn inner_product(&self, p: u8, q: u8, j: i64, k: i64) -> Result<Complex64> {
        case_study_entry(p, q, j, k)
    }

    fn basis(&self, n: usize) -> BasisSpec {
        BasisSpec::symmetric_range(n)
    }

    fn exact_spectrum(&self) -> Option<SpectrumDescription> {
        Some(exact_spectrum_case_study())
    }
}

/// Exact spectrum of the case-study operator.
///
/// The essential spectrum is the range `{0, 1}` of the symbol; the discrete
/// eigenvalues solve `<(lambda - a)^{-1} e_0, e_0> = 1`, i.e.
/// `(1/2)(1/lambda + 1/(lambda - 1)) = 1`, giving `1 -+ sqrt(2)/2`.
pub fn exact_spectrum_case_study() -> SpectrumDescription {
    let half_sqrt2 = std::f64::consts::SQRT_2 / 2.0;
    SpectrumDescription {
        essential_points: vec![0.0, 1.0],
        discrete_eigenvalues: vec![1.0 - half_sqrt2, 1.0 + half_sqrt2],
        gap_of_interest: (0.0, 1.0),
    }
}

/// `(A^p e_j)(x)` for the case-study operator with the symbol value fixed to
/// `a_val` (the integration routine splits at the symbol's jump, so each
/// subinterval sees a constant symbol).
fn apply_power(p: u8, j: i64, x: f64, a_val: f64) -> Complex64 {
    let norm = 1.0 / (2.0 * PI).sqrt();
    let e = |m: i64| Complex64::new(0.0, m as f64 * x).exp() * norm;
    match p {
        0 => e(j),
        _ => {
            let mut v = e(j) * a_val;
            if j == 0 {
                v += e(0);
            }
            v
        }
    }
}

/// Independent quadrature oracle for [`case_study_entry`].
///
/// Integrates `(A^p e_j)(x) conj((A^q e_k)(x))` adaptively over `[-pi, 0]`
/// and `[0, pi]` separately, so each half-integrand is smooth.
pub fn quadrature_entry(p: u8, q: u8, j: i64, k: i64, tolerance: f64) -> Result<Complex64> {
    if p > 1 || q > 1 {
        return Err(Error::InvalidPower { p, q });
    }
    if tolerance <= 0.0 {
        return Err(Error::InvalidTolerance { tolerance });
    }
    let half = tolerance / 2.0;
    let left = adaptive_simpson(
        &|x| apply_power(p, j, x, 0.0) * apply_power(q, k, x, 0.0).conj(),
        -PI,
        0.0,
        half,
    )?;
    let right = adaptive_simpson(
        &|x| apply_power(p, j, x, 1.0) * apply_power(q, k, x, 1.0).conj(),
        0.0,
        PI,
        half,
    )?;
    Ok(left + right)
}

fn simpson(f: &dyn Fn(f64) -> Complex64, a: f64, fa: Complex64, b: f64, fb: Complex64) -> (f64, Complex64, Complex64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    let s = (fa + fm * 4.0 + fb) * ((b - a) / 6.0);
    (m, fm, s)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    let fa = f(a);
    let fb = f(b);
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, QUADRATURE_MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    fa: Complex64,
    b: f64,
    fb: Complex64,
    m: f64,
    fm: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Result<Complex64> {
    let (lm, flm, left) = simpson(f, a, fa, m, fm);
    let (rm, frm, right) = simpson(f, m, fm, b, fb);
    let delta = left + right - whole;
    if delta.norm() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureDidNotConverge {
            requested: tol,
            achieved: delta.norm() / 15.0,
        });
    }
    let lhs = adaptive_step(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)?;
    let rhs = adaptive_step(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)?;
    Ok(lhs + rhs)
}

/// Diagonal test model: `A e_j = lambda_j e_j` in an orthonormal basis, so
/// `<A^p e_j, A^q e_k> = lambda_j^p lambda_k^q delta_jk`.
#[derive(Debug, Clone)]
pub struct DiagonalModel {
    eigenvalues: Vec<f64>,
}

impl DiagonalModel {
    pub fn new(eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::EmptyBasis);
        }
        Ok(Self { eigenvalues })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    fn lambda(&self, label: i64) -> Result<f64> {
        usize::try_from(label)
            .ok()
            .and_then(|i| self.eigenvalues.get(i))
            .copied()
            .ok_or(Error::UnknownLabel { label })
    }
}

impl OperatorModel for DiagonalModel {
    fn inner_product(&self, p: u8, q: u8, j: i64, k: i64) -> Result<Complex64> {
        if p > 1 || q > 1 {
            return Err(Error::InvalidPower { p, q });
        }
        let lj = self.lambda(j)?;
        let lk = self.lambda(k)?;
        if j != k {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(Complex64::new(lj.powi(p as i32) * lk.powi(q as i32), 0.0))
    }

    /// The diagonal model is finite; its basis is the full label set
    /// regardless of the truncation parameter.
    fn basis(&self, _n: usize) -> BasisSpec {
        let labels = (0..self.eigenvalues.len() as i64).collect();
        BasisSpec::new(labels, true).expect("nonempty by construction")
    }

    fn exact_spectrum(&self) -> Option<SpectrumDescription> {
        let mut sorted = self.eigenvalues.clone();
        sorted.sort_by(|a, b| a.total_cmp(b));
        // Widest gap between consecutive eigenvalues, degenerate when there
        // is only one.
        let mut gap = (sorted[0], sorted[0]);
        for w in sorted.windows(2) {
            if w[1] - w[0] > gap.1 - gap.0 {
                gap = (w[0], w[1]);
            }
        }
        Some(SpectrumDescription {
            essential_points: Vec::new(),
            discrete_eigenvalues: sorted,
            gap_of_interest: gap,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn orthonormality_entries() {
        for (j, k) in [(0, 0), (3, 3), (-2, -2), (1, 4), (-5, 2)] {
            let v = case_study_entry(0, 0, j, k).unwrap();
            let expected = if j == k { 1.0 } else { 0.0 };
            assert_eq!(v, c(expected, 0.0));
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(case_study_entry(1, 0, 0, 0).unwrap(), c(1.5, 0.0));
        let v = case_study_entry(1, 0, 1, 0).unwrap();
        assert!((v - c(0.0, 1.0 / PI)).norm() < 1e-16);
        assert_eq!(case_study_entry(1, 0, 2, 0).unwrap(), c(0.0, 0.0));
        assert_eq!(case_study_entry(1, 1, 0, 0).unwrap(), c(2.5, 0.0));
        let w = case_study_entry(1, 0, 5, 2).unwrap();
        assert!((w - c(0.0, 1.0 / (3.0 * PI))).norm() < 1e-16);
    }

    #[test]
    fn rejects_invalid_powers() {
        assert!(matches!(case_study_entry(2, 0, 0, 0), Err(Error::InvalidPower { p: 2, q: 0 })));
        assert!(matches!(quadrature_entry(0, 3, 0, 0, 1e-8), Err(Error::InvalidPower { p: 0, q: 3 })));
    }

    #[test]
    fn reality_pattern() {
        // Entries are purely real for even j - k and purely imaginary for odd.
        for p in 0..=1u8 {
            for q in 0..=1u8 {
                for j in -6..=6i64 {
                    for k in -6..=6i64 {
                        let v = case_study_entry(p, q, j, k).unwrap();
                        if (j - k) % 2 == 0 {
                            assert_eq!(v.im, 0.0, "({p},{q},{j},{k}) = {v}");
                        } else {
                            assert_eq!(v.re, 0.0, "({p},{q},{j},{k}) = {v}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hermitian_interface_symmetry_exact() {
        for p in 0..=1u8 {
            for q in 0..=1u8 {
                for j in -5..=5i64 {
                    for k in -5..=5i64 {
                        let a = case_study_entry(p, q, j, k).unwrap();
                        let b = case_study_entry(q, p, k, j).unwrap();
                        assert_eq!(a, b.conj(), "({p},{q},{j},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn quadrature_matches_closed_forms() {
        let tol = 1e-10;
        let q1 = quadrature_entry(0, 0, 3, 3, tol).unwrap();
        assert!((q1 - c(1.0, 0.0)).norm() < 1e-9);
        let q2 = quadrature_entry(1, 0, 0, 0, tol).unwrap();
        assert!((q2 - c(1.5, 0.0)).norm() < 1e-9);
        let q3 = quadrature_entry(1, 0, 5, 2, tol).unwrap();
        assert!((q3 - c(0.0, 1.0 / (3.0 * PI))).norm() < 1e-9);
        let q4 = quadrature_entry(1, 1, 0, 0, tol).unwrap();
        assert!((q4 - c(2.5, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn quadrature_rejects_bad_tolerance() {
        assert!(matches!(
            quadrature_entry(0, 0, 0, 0, 0.0),
            Err(Error::InvalidTolerance { .. })
        ));
    }

    #[test]
    fn oracle_agreement_small_window() {
        // Full |j|,|k| <= 10 sweep lives in the acceptance suite.
        for p in 0..=1u8 {
            for q in 0..=1u8 {
                for j in -4..=4i64 {
                    for k in -4..=4i64 {
                        let exact = case_study_entry(p, q, j, k).unwrap();
                        let quad = quadrature_entry(p, q, j, k, 1e-11).unwrap();
                        assert!(
                            (exact - quad).norm() <= 1e-9,
                            "mismatch at ({p},{q},{j},{k}): {exact} vs {quad}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn exact_spectrum_values() {
        let s = exact_spectrum_case_study();
        assert_eq!(s.essential_points, vec![0.0, 1.0]);
        let lm = 1.0 - std::f64::consts::SQRT_2 / 2.0;
        let lp = 1.0 + std::f64::consts::SQRT_2 / 2.0;
        assert!((s.discrete_eigenvalues[0] - lm).abs() < 1e-15);
        assert!((s.discrete_eigenvalues[1] - lp).abs() < 1e-15);
        assert_eq!(s.gap_of_interest, (0.0, 1.0));
        assert!(s.gap_of_interest.0 < lm && lm < s.gap_of_interest.1);

        // Both eigenvalues solve the resolvent identity
        // (1/2)(1/l + 1/(l - 1)) = 1.
        for l in [lm, lp] {
            let lhs = 0.5 * (1.0 / l + 1.0 / (l - 1.0));
            assert!((lhs - 1.0).abs() < 1e-12, "resolvent identity off at {l}");
        }
    }

    #[test]
    fn resolvent_identity_by_quadrature() {
        // <(lambda - a)^{-1} e_0, e_0> computed numerically equals 1 at the
        // eigenvalues.
        let s = exact_spectrum_case_study();
        for l in s.discrete_eigenvalues {
            let left = adaptive_simpson(
                &|_x| c(1.0 / (2.0 * PI) / l, 0.0),
                -PI,
                0.0,
                1e-12,
            )
            .unwrap();
            let right = adaptive_simpson(
                &|_x| c(1.0 / (2.0 * PI) / (l - 1.0), 0.0),
                0.0,
                PI,
                1e-12,
            )
            .unwrap();
            assert!(((left + right) - c(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn diagonal_model_entries() {
        let m = DiagonalModel::new(vec![2.0]).unwrap();
        assert_eq!(m.inner_product(1, 1, 0, 0).unwrap(), c(4.0, 0.0));

        let m2 = DiagonalModel::new(vec![1.0, 3.0]).unwrap();
        assert_eq!(m2.inner_product(1, 0, 0, 1).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            m2.inner_product(1, 0, 0, 5),
            Err(Error::UnknownLabel { label: 5 })
        ));
        assert!(matches!(DiagonalModel::new(vec![]), Err(Error::EmptyBasis)));
    }

    #[test]
    fn diagonal_model_spectrum_gap() {
        let m = DiagonalModel::new(vec![3.0, 1.0, 7.0]).unwrap();
        let s = m.exact_spectrum().unwrap();
        assert_eq!(s.discrete_eigenvalues, vec![1.0, 3.0, 7.0]);
        assert_eq!(s.gap_of_interest, (3.0, 7.0));
    }
}
