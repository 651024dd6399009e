//! Fold classification of singular points: the quadratic-form test on the
//! combined log-Hessian, the complex shortcut when p and i·grad log f(p) are
//! ℂ-dependent, and the fold index.

use crate::error::{Error, Result};
use crate::exact::rational_to_f64;
use crate::linalg::{
    complex_orthocomplement, congruence, hermitian, real_orthocomplement, CMatrix,
};
use crate::poly::{combined_hessian, log_gradient, log_hessian, Polynomial};
use crate::singular::{
    complex_dependence, is_singular_algebraic, AlgebraicVerdict, SpherePoint, Tolerances,
};
use crate::weights::CommonWeightCertificate;
use num_complex::Complex64;
use num_rational::BigRational;

/// Full outcome of the fold test at one singular point.
#[derive(Debug, Clone)]
pub struct FoldReport {
    pub point: SpherePoint,
    /// Weight proportionality factor of the pair.
    pub s: BigRational,
    /// Combined Hessian H = Hess(−i(log g − s·log f)) at p (n×n); entries
    /// below the subtraction noise floor are snapped to exact zero.
    pub h: CMatrix,
    /// Basis of the test space: (W, iW) when c_dependent, otherwise the real
    /// Gram–Schmidt tangent complement of {p, i·grad log f(p)} (n×(2n−2)).
    pub v: CMatrix,
    /// Complex tangent basis of p^⊥ (n×(n−1)); present iff c_dependent.
    pub w: Option<CMatrix>,
    /// det Re(VᵀHV).
    pub det_real: f64,
    /// det(WᵀHW); present iff c_dependent.
    pub det_complex: Option<Complex64>,
    /// Eigenvalues of Re(VᵀHV), ascending (2n−2 values).
    pub eigenvalues: Vec<f64>,
    pub is_fold: bool,
    /// Negative eigenvalue count; present iff is_fold.
    pub index: Option<usize>,
    /// min(index, 2n−2−index): the index up to the normal-form sign
    /// ambiguity; present iff is_fold.
    pub absolute_index: Option<usize>,
    /// Whether p and i·grad log f(p) are linearly dependent over ℂ.
    pub c_dependent: bool,
    /// |det_real| fell within [0.1×, 10×] of the threshold: too close to
    /// call at this precision.
    pub indeterminate: bool,
    /// The comparison value fold_tol · ‖Re(VᵀHV)‖_F^{2n−2}.
    pub fold_threshold: f64,
}

/// Columns spanning {v ∈ ℂⁿ : Re⟨v,p⟩ = Re⟨v,q⟩ = 0} (2n−2 of them), via
/// real Gram–Schmidt over ℝ^{2n}.
pub fn real_tangent_basis(p: &[Complex64], q: &[Complex64]) -> Result<CMatrix> {
    let cols = real_orthocomplement(&[p.to_vec(), q.to_vec()])?;
    for col in &cols {
        debug_assert!(hermitian(col, p)?.re.abs() < 1e-10);
        debug_assert!(hermitian(col, q)?.re.abs() < 1e-10);
    }
    CMatrix::from_columns(&cols)
}

/// Columns spanning {v ∈ ℂⁿ : ⟨v,p⟩ = 0} (n−1 of them), via complex
/// Gram–Schmidt.
pub fn complex_tangent_basis(p: &[Complex64]) -> Result<CMatrix> {
    // Phase-normalizing each column (first significant entry real positive)
    // pins the basis down exactly, so reported quadratic forms like WᵀHW are
    // reproducible and independent of elimination order.
    let cols: Vec<Vec<Complex64>> = complex_orthocomplement(p)?
        .iter()
        .map(|col| crate::singular::phase_normalize(col, 1.0))
        .collect();
    for col in &cols {
        debug_assert!(hermitian(col, p)?.norm() < 1e-10);
    }
    CMatrix::from_columns(&cols)
}

/// ± pairing of the eigenvalues (ascending order pairs first with last).
fn check_pairing(eigenvalues: &[f64], scale: f64) -> Result<()> {
    let dim = eigenvalues.len();
    for k in 0..dim / 2 {
        let sum = eigenvalues[k] + eigenvalues[dim - 1 - k];
        if sum.abs() >= 1e-8 * scale {
            return Err(Error::Numerical(format!(
                "eigenvalues fail the ± pairing: {} + {} = {sum:.3e}",
                eigenvalues[k],
                eigenvalues[dim - 1 - k]
            )));
        }
    }
    Ok(())
}

/// Fold test at a singular point of the pair map (f/|f|, g/|g|): p is a fold
/// iff det Re(VᵀHV) ≠ 0 for the combined Hessian H. When p and
/// i·grad log f(p) are ℂ-dependent, V = (W, iW) for the complex tangent
/// basis W, which makes det Re(VᵀHV) = (−1)^{n−1}|det(WᵀHW)|² (verified
/// internally).
pub fn fold_test(
    f: &Polynomial,
    g: &Polynomial,
    cert: &CommonWeightCertificate,
    p: &SpherePoint,
    tol: &Tolerances,
) -> Result<FoldReport> {
    let singularity = is_singular_algebraic(f, g, cert, p, tol)?;
    if singularity.algebraic_verdict != AlgebraicVerdict::Singular {
        return Err(Error::NotSingular {
            margin: singularity
                .algebraic_residual
                .unwrap_or(singularity.numeric_margin),
        });
    }
    let coords = p.coords();
    let n = coords.len();
    let dim = 2 * n - 2;
    let s = cert.pair_s().clone();
    let s_f64 = rational_to_f64(&s);
    let mut h = combined_hessian(f, g, &s, coords)?;
    // H is a difference of log-Hessians; entries smaller than the rounding
    // noise of that subtraction carry no information and are treated as
    // exact zeros (otherwise noise, not the map, would decide the verdict).
    let noise_floor = 1e-12
        * (log_hessian(g, coords)?.frobenius()
            + s_f64.abs() * log_hessian(f, coords)?.frobenius());
    for j in 0..n {
        for k in 0..n {
            if h.at(j, k).norm() <= noise_floor {
                h.set(j, k, Complex64::new(0.0, 0.0));
            }
        }
    }
    let i = Complex64::new(0.0, 1.0);
    let q: Vec<Complex64> = log_gradient(f, coords)?.iter().map(|&z| i * z).collect();
    let (c_dependent, _) = complex_dependence(&[coords.to_vec(), q.clone()], tol)?;
    let (v, w, det_complex) = if c_dependent {
        let w = complex_tangent_basis(coords)?;
        let mut columns = w.columns();
        columns.extend(w.scale(i).columns());
        let v = CMatrix::from_columns(&columns)?;
        let det_c = congruence(&h, &w).det();
        (v, Some(w), Some(det_c))
    } else {
        (real_tangent_basis(coords, &q)?, None, None)
    };
    let a = congruence(&h, &v).re_part();
    let det_real = a.det();
    if let Some(dc) = det_complex {
        let sign = if (n - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        let expected = sign * dc.norm_sqr();
        let err = (det_real - expected).abs();
        if err > 1e-8 * (det_real.abs() + dc.norm_sqr() + 1e-300) {
            return Err(Error::Numerical(format!(
                "determinant identity violated: det Re(VᵀHV) = {det_real:.6e}, \
                 (−1)^(n−1)|det WᵀHW|² = {expected:.6e}"
            )));
        }
    }
    let eigenvalues = a.symmetric_eigenvalues();
    let fold_threshold = tol.fold * a.frobenius().powi(dim as i32);
    let is_fold = det_real.abs() > fold_threshold;
    let indeterminate = fold_threshold > 0.0
        && det_real.abs() > 0.1 * fold_threshold
        && det_real.abs() <= 10.0 * fold_threshold;
    let (index, absolute_index) = if is_fold {
        let count = eigenvalues.iter().filter(|&&l| l < 0.0).count();
        if c_dependent {
            check_pairing(&eigenvalues, h.frobenius())?;
            if count != n - 1 {
                return Err(Error::Numerical(format!(
                    "ℂ-dependent fold must have index {}, counted {count}",
                    n - 1
                )));
            }
        }
        (Some(count), Some(count.min(dim - count)))
    } else {
        (None, None)
    };
    Ok(FoldReport {
        point: p.clone(),
        s,
        h,
        v,
        w,
        det_real,
        det_complex,
        eigenvalues,
        is_fold,
        index,
        absolute_index,
        c_dependent,
        indeterminate,
        fold_threshold,
    })
}

/// Fold index: the negative eigenvalue count of Re(VᵀHV). In the
/// ℂ-dependent regime the eigenvalues must pair as ±λ and the count must be
/// n−1.
pub fn index_of(report: &FoldReport) -> Result<usize> {
    if !report.is_fold {
        return Err(Error::NotAFold);
    }
    let count = report
        .eigenvalues
        .iter()
        .filter(|&&l| l < 0.0)
        .count();
    if report.c_dependent {
        check_pairing(&report.eigenvalues, report.h.frobenius())?;
        let n = report.point.n();
        if count != n - 1 {
            return Err(Error::Numerical(format!(
                "ℂ-dependent fold must have index {}, counted {count}",
                n - 1
            )));
        }
    }
    Ok(count)
}
