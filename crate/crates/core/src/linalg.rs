//! Small dense linear algebra: complex/real matrices, one-sided Jacobi SVD,
//! cyclic Jacobi eigenvalues, LU determinants, and orthocomplement bases in
//! the real and hermitian senses.
//!
//! Everything here is sized for desk-scale systems (dimensions ≤ ~32); the
//! algorithms favour accuracy of small singular values over speed.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Hermitian inner product ⟨u, v⟩ = Σ u_j·conj(v_j). Its real part equals the
/// Euclidean inner product of u and v viewed as vectors in ℝ^{2n}.
pub fn hermitian(u: &[Complex64], v: &[Complex64]) -> Result<Complex64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    Ok(u.iter().zip(v).map(|(a, b)| a * b.conj()).sum())
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn real_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// ℂⁿ → ℝ^{2n} as (Re z₁, …, Re z_n, Im z₁, …, Im z_n).
pub fn embed_real(z: &[Complex64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * z.len());
    out.extend(z.iter().map(|w| w.re));
    out.extend(z.iter().map(|w| w.im));
    out
}

/// Inverse of [`embed_real`]; `r.len()` must be even.
pub fn unembed_real(r: &[f64]) -> Vec<Complex64> {
    let n = r.len() / 2;
    debug_assert_eq!(r.len(), 2 * n);
    (0..n).map(|j| Complex64::new(r[j], r[n + j])).collect()
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m.set(j, j, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend_from_slice(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn from_columns(cols: &[Vec<Complex64>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        for col in cols {
            if col.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: col.len(),
                });
            }
        }
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.at(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Complex64>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Complex64> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    /// Plain transpose, no conjugation.
    pub fn transpose(&self) -> CMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c));
            }
        }
        t
    }

    pub fn conj_entries(&self) -> CMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self.at(r, k) * rhs.at(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, z: Complex64) -> CMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    pub fn re_part(&self) -> RMatrix {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.re).collect(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// max |a_jk − a_kj| over j < k; zero for a (plain-)symmetric matrix.
    pub fn symmetry_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut worst = 0.0f64;
        for j in 0..self.rows {
            for k in (j + 1)..self.cols {
                worst = worst.max((self.at(j, k) - self.at(k, j)).norm());
            }
        }
        worst
    }

    /// Determinant by LU with partial pivoting on |·|.
    pub fn det(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let mut a = self.data.clone();
        let idx = |r: usize, c: usize| r * n + c;
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let mut piv = k;
            let mut best = a[idx(k, k)].norm();
            for r in (k + 1)..n {
                let cand = a[idx(r, k)].norm();
                if cand > best {
                    best = cand;
                    piv = r;
                }
            }
            if best == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if piv != k {
                for c in 0..n {
                    a.swap(idx(k, c), idx(piv, c));
                }
                det = -det;
            }
            let pivot = a[idx(k, k)];
            det *= pivot;
            for r in (k + 1)..n {
                let factor = a[idx(r, k)] / pivot;
                if factor.norm() == 0.0 {
                    continue;
                }
                for c in k..n {
                    let v = a[idx(k, c)];
                    a[idx(r, c)] -= factor * v;
                }
            }
        }
        det
    }

    /// det(t·I − self).
    pub fn char_value(&self, t: Complex64) -> Complex64 {
        assert_eq!(self.rows, self.cols);
        let mut m = self.scale(Complex64::new(-1.0, 0.0));
        for j in 0..self.rows {
            let v = m.at(j, j);
            m.set(j, j, v + t);
        }
        m.det()
    }
}

/// Row-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m.set(j, j, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend_from_slice(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_complex(&self) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Complex64::new(*x, 0.0)).collect(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn symmetry_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut worst = 0.0f64;
        for j in 0..self.rows {
            for k in (j + 1)..self.cols {
                worst = worst.max((self.at(j, k) - self.at(k, j)).abs());
            }
        }
        worst
    }

    pub fn trace(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|j| self.at(j, j)).sum()
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1.0;
        }
        let mut a = self.data.clone();
        let idx = |r: usize, c: usize| r * n + c;
        let mut det = 1.0f64;
        for k in 0..n {
            let mut piv = k;
            let mut best = a[idx(k, k)].abs();
            for r in (k + 1)..n {
                let cand = a[idx(r, k)].abs();
                if cand > best {
                    best = cand;
                    piv = r;
                }
            }
            if best == 0.0 {
                return 0.0;
            }
            if piv != k {
                for c in 0..n {
                    a.swap(idx(k, c), idx(piv, c));
                }
                det = -det;
            }
            let pivot = a[idx(k, k)];
            det *= pivot;
            for r in (k + 1)..n {
                let factor = a[idx(r, k)] / pivot;
                if factor == 0.0 {
                    continue;
                }
                for c in k..n {
                    a[idx(r, c)] -= factor * a[idx(k, c)];
                }
            }
        }
        det
    }

    /// det(t·I − self).
    pub fn char_value(&self, t: f64) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for v in m.data.iter_mut() {
            *v = -*v;
        }
        for j in 0..self.rows {
            let v = m.at(j, j);
            m.set(j, j, v + t);
        }
        m.det()
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
    /// ascending. The input must be symmetric (assert on the defect).
    pub fn symmetric_eigenvalues(&self) -> Vec<f64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Vec::new();
        }
        assert!(
            self.symmetry_defect() <= 1e-12 * (1.0 + self.frobenius()),
            "eigen solve on a non-symmetric matrix"
        );
        let mut a = self.clone();
        let scale = 1.0 + a.frobenius();
        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a.at(p, q) * a.at(p, q);
                }
            }
            if (2.0 * off).sqrt() <= 1e-13 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.at(p, q);
                    if apq.abs() <= 1e-300 {
                        continue;
                    }
                    let app = a.at(p, p);
                    let aqq = a.at(q, q);
                    let tau = (aqq - app) / (2.0 * apq);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // Update the p/q rows and columns in place.
                    for r in 0..n {
                        if r == p || r == q {
                            continue;
                        }
                        let arp = a.at(r, p);
                        let arq = a.at(r, q);
                        a.set(r, p, c * arp - s * arq);
                        a.set(p, r, c * arp - s * arq);
                        a.set(r, q, s * arp + c * arq);
                        a.set(q, r, s * arp + c * arq);
                    }
                    a.set(p, p, app - t * apq);
                    a.set(q, q, aqq + t * apq);
                    a.set(p, q, 0.0);
                    a.set(q, p, 0.0);
                }
            }
        }
        let mut eig: Vec<f64> = (0..n).map(|j| a.at(j, j)).collect();
        eig.sort_by(f64::total_cmp);
        eig
    }
}

/// Singular values of `a` by one-sided Jacobi: rotate column pairs until every
/// normalized inner product falls below 1e-14 (at most 60 sweeps), then read
/// off the column norms. Returns `a.cols()` values sorted descending; when
/// the columns outnumber the rows the surplus values are zeros of the column
/// Gram matrix, which is exactly what rank decisions need.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    let mut cols = a.columns();
    let k = cols.len();
    if k == 0 {
        return Vec::new();
    }
    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..k {
            for j in (i + 1)..k {
                let mut alpha = 0.0f64;
                let mut gamma = 0.0f64;
                let mut beta = Complex64::new(0.0, 0.0);
                for (a, b) in cols[i].iter().zip(&cols[j]) {
                    alpha += a.norm_sqr();
                    gamma += b.norm_sqr();
                    beta += a.conj() * b;
                }
                let bnorm = beta.norm();
                if bnorm <= 1e-14 * (alpha.sqrt() * gamma.sqrt()) + f64::MIN_POSITIVE {
                    continue;
                }
                rotated = true;
                let b = beta / bnorm;
                let tau = (gamma - alpha) / (2.0 * bnorm);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let bc = b.conj();
                for t_row in 0..cols[i].len() {
                    let ai = cols[i][t_row];
                    let aj = cols[j][t_row];
                    cols[i][t_row] = c * ai - s * bc * aj;
                    cols[j][t_row] = s * ai + c * bc * aj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sigma: Vec<f64> = cols.iter().map(|c| vec_norm(c)).collect();
    sigma.sort_by(|x, y| y.total_cmp(x));
    sigma
}

pub fn smallest_singular_value(a: &CMatrix) -> f64 {
    singular_values(a).last().copied().unwrap_or(0.0)
}

fn real_project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
        for (x, y) in v.iter_mut().zip(b) {
            *x -= dot * y;
        }
    }
}

/// Orthonormal complex vectors spanning the Re⟨·,·⟩-orthogonal complement of
/// span_ℝ(anchors) inside ℂⁿ ≅ ℝ^{2n}. The anchors must be ℝ-independent;
/// returns 2n − anchors.len() vectors chosen by pivoted two-pass Gram–Schmidt
/// over the standard real basis (deterministic: ties break on lowest index).
pub fn real_orthocomplement(anchors: &[Vec<Complex64>]) -> Result<Vec<Vec<Complex64>>> {
    let n = anchors
        .first()
        .map(|a| a.len())
        .ok_or_else(|| Error::InvalidInput("no anchor vectors given".into()))?;
    for a in anchors {
        if a.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: a.len(),
            });
        }
    }
    let dim = 2 * n;
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim);
    for a in anchors {
        let mut r = embed_real(a);
        let scale = real_norm(&r);
        if scale <= 1e-300 {
            return Err(Error::ZeroVector);
        }
        real_project_out(&mut r, &basis);
        real_project_out(&mut r, &basis);
        let rem = real_norm(&r);
        if rem <= 1e-12 * scale {
            return Err(Error::DegenerateSpan);
        }
        for x in r.iter_mut() {
            *x /= rem;
        }
        basis.push(r);
    }
    let wanted = dim - anchors.len();
    let mut residuals: Vec<Vec<f64>> = (0..dim)
        .map(|k| {
            let mut e = vec![0.0; dim];
            e[k] = 1.0;
            real_project_out(&mut e, &basis);
            e
        })
        .collect();
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(wanted);
    while out.len() < wanted {
        let (best_idx, best_norm) = residuals
            .iter()
            .enumerate()
            .map(|(i, r)| (i, real_norm(r)))
            .fold((usize::MAX, -1.0), |acc, (i, nr)| {
                if nr > acc.1 { (i, nr) } else { acc }
            });
        assert!(
            best_norm > 1e-9,
            "standard basis exhausted before the complement was spanned"
        );
        let mut v = residuals[best_idx].clone();
        real_project_out(&mut v, &basis);
        let nv = real_norm(&v);
        for x in v.iter_mut() {
            *x /= nv;
        }
        for (i, r) in residuals.iter_mut().enumerate() {
            if i == best_idx {
                for x in r.iter_mut() {
                    *x = 0.0;
                }
                continue;
            }
            let dot: f64 = r.iter().zip(&v).map(|(x, y)| x * y).sum();
            for (x, y) in r.iter_mut().zip(&v) {
                *x -= dot * y;
            }
        }
        out.push(unembed_real(&v));
        basis.push(v);
    }
    Ok(out)
}

fn complex_project_out(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for b in basis {
        let dot: Complex64 = v.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
        for (x, y) in v.iter_mut().zip(b) {
            *x -= dot * y;
        }
    }
}

/// Orthonormal (hermitian sense) basis of {v ∈ ℂⁿ : ⟨v, p⟩ = 0}, i.e. n − 1
/// vectors, chosen by pivoted two-pass Gram–Schmidt over the standard basis.
pub fn complex_orthocomplement(p: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    let n = p.len();
    let scale = vec_norm(p);
    if scale <= 1e-300 {
        return Err(Error::ZeroVector);
    }
    let phat: Vec<Complex64> = p.iter().map(|z| z / scale).collect();
    let basis0 = vec![phat];
    let mut residuals: Vec<Vec<Complex64>> = (0..n)
        .map(|k| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[k] = Complex64::new(1.0, 0.0);
            complex_project_out(&mut e, &basis0);
            e
        })
        .collect();
    let mut accepted = basis0;
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(n - 1);
    while out.len() < n - 1 {
        let (best_idx, best_norm) = residuals
            .iter()
            .enumerate()
            .map(|(i, r)| (i, vec_norm(r)))
            .fold((usize::MAX, -1.0), |acc, (i, nr)| {
                if nr > acc.1 { (i, nr) } else { acc }
            });
        assert!(
            best_norm > 1e-9,
            "standard basis exhausted before the complement was spanned"
        );
        let mut v = residuals[best_idx].clone();
        complex_project_out(&mut v, &accepted);
        let nv = vec_norm(&v);
        for x in v.iter_mut() {
            *x /= nv;
        }
        for (i, r) in residuals.iter_mut().enumerate() {
            if i == best_idx {
                for x in r.iter_mut() {
                    *x = Complex64::new(0.0, 0.0);
                }
                continue;
            }
            let dot: Complex64 = r.iter().zip(&v).map(|(x, y)| x * y.conj()).sum();
            for (x, y) in r.iter_mut().zip(&v) {
                *x -= dot * y;
            }
        }
        out.push(v.clone());
        accepted.push(v);
    }
    Ok(out)
}

/// WᵀHW with a plain (unconjugated) transpose.
pub fn congruence(h: &CMatrix, w: &CMatrix) -> CMatrix {
    w.transpose().mul(&h.mul(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermitian_matches_examples() {
        let u = vec![c(1.0, 0.0), c(0.0, 1.0)];
        assert_eq!(hermitian(&u, &u).unwrap(), c(2.0, 0.0));

        let e1 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let e2 = vec![c(0.0, 0.0), c(1.0, 0.0)];
        assert_eq!(hermitian(&e1, &e2).unwrap(), c(0.0, 0.0));

        // (1+i, 2)·conj((i, 1−i)) = (1+i)(−i) + 2(1+i) = 3+i
        let a = vec![c(1.0, 1.0), c(2.0, 0.0)];
        let b = vec![c(0.0, 1.0), c(1.0, -1.0)];
        let got = hermitian(&a, &b).unwrap();
        assert!((got - c(3.0, 1.0)).norm() < 1e-15);

        assert!(hermitian(&a, &e1[..1]).is_err());
    }

    #[test]
    fn hermitian_real_part_is_euclidean() {
        let u = vec![c(0.3, -1.2), c(2.0, 0.7), c(-0.4, 0.1)];
        let v = vec![c(1.1, 0.5), c(-0.2, 0.9), c(0.6, -1.3)];
        let re = hermitian(&u, &v).unwrap().re;
        let dot: f64 = embed_real(&u)
            .iter()
            .zip(embed_real(&v).iter())
            .map(|(a, b)| a * b)
            .sum();
        assert!((re - dot).abs() < 1e-14);
    }

    #[test]
    fn singular_values_of_diagonal() {
        let m = CMatrix::from_rows(&[
            vec![c(3.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, -2.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let sv = singular_values(&m);
        assert!((sv[0] - 3.0).abs() < 1e-12);
        assert!((sv[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_detect_dependence() {
        // Second column is i times the first: rank 1.
        let a = vec![c(1.0, 2.0), c(-0.3, 0.4), c(0.5, -0.5)];
        let b: Vec<Complex64> = a.iter().map(|z| z * c(0.0, 1.0)).collect();
        let m = CMatrix::from_columns(&[a, b]).unwrap();
        let sv = singular_values(&m);
        assert!(sv[1] < 1e-14 * sv[0]);
    }

    #[test]
    fn singular_values_match_gram_eigenvalues() {
        // Cross-check σ² against the eigenvalues of AᴴA for a fixed matrix.
        let m = CMatrix::from_rows(&[
            vec![c(0.9, -0.1), c(0.2, 0.8), c(-0.5, 0.3)],
            vec![c(0.1, 0.4), c(-0.7, 0.2), c(0.6, -0.9)],
            vec![c(1.2, 0.0), c(0.3, -0.3), c(0.0, 0.5)],
            vec![c(-0.2, 0.6), c(0.8, 0.1), c(0.4, 0.4)],
        ])
        .unwrap();
        let sv = singular_values(&m);
        // Gram matrix G = AᴴA is hermitian; embed as real symmetric
        // [[Re G, −Im G],[Im G, Re G]] whose eigenvalues are those of G doubled.
        let k = m.cols();
        let mut gram = CMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = c(0.0, 0.0);
                for r in 0..m.rows() {
                    acc += m.at(r, i).conj() * m.at(r, j);
                }
                gram.set(i, j, acc);
            }
        }
        let mut real_embed = RMatrix::zeros(2 * k, 2 * k);
        for i in 0..k {
            for j in 0..k {
                let g = gram.at(i, j);
                real_embed.set(i, j, g.re);
                real_embed.set(i, j + k, -g.im);
                real_embed.set(i + k, j, g.im);
                real_embed.set(i + k, j + k, g.re);
            }
        }
        let eig = real_embed.symmetric_eigenvalues();
        // Eigenvalues come in duplicated pairs; compare the deduplicated tail.
        for (idx, s) in sv.iter().enumerate() {
            let lam = eig[eig.len() - 1 - 2 * idx];
            assert!(
                (s * s - lam).abs() <= 1e-10 * (1.0 + lam.abs()),
                "σ²={} vs λ={}",
                s * s,
                lam
            );
        }
    }

    #[test]
    fn eigenvalues_of_known_symmetric() {
        let m = RMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let eig = m.symmetric_eigenvalues();
        assert!((eig[0] - 1.0).abs() < 1e-12);
        assert!((eig[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_reproduce_trace_and_det() {
        let m = RMatrix::from_rows(&[
            vec![1.5, -0.3, 0.8, 0.0],
            vec![-0.3, 2.2, 0.1, -1.1],
            vec![0.8, 0.1, -0.7, 0.4],
            vec![0.0, -1.1, 0.4, 0.9],
        ])
        .unwrap();
        let eig = m.symmetric_eigenvalues();
        let tr: f64 = eig.iter().sum();
        let det: f64 = eig.iter().product();
        assert!((tr - m.trace()).abs() <= 1e-9 * (1.0 + m.trace().abs()));
        assert!((det - m.det()).abs() <= 1e-9 * (1.0 + m.det().abs()));
    }

    #[test]
    fn determinants() {
        let m = RMatrix::from_rows(&[vec![0.0, 1.0], vec![-2.0, 3.0]]).unwrap();
        assert!((m.det() - 2.0).abs() < 1e-14);

        let mc = CMatrix::from_rows(&[
            vec![c(0.0, 1.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 1.0)],
        ])
        .unwrap();
        // det = i·i − 1 = −2
        assert!((mc.det() - c(-2.0, 0.0)).norm() < 1e-14);
        assert!((CMatrix::identity(3).det() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn char_value_matches_eigen_product() {
        let m = RMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        // det(tI − M) = (t−1)(t−3)
        for t in [0.0, 0.5, 1.0, 2.0, 5.0] {
            let expect = (t - 1.0) * (t - 3.0);
            assert!((m.char_value(t) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn real_orthocomplement_coordinate_cases() {
        // p = (1,0), q = (i,0): complement is the z₂ plane.
        let p = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let q = vec![c(0.0, 1.0), c(0.0, 0.0)];
        let basis = real_orthocomplement(&[p.clone(), q]).unwrap();
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(b[0].norm() < 1e-12);
            assert!((vec_norm(b) - 1.0).abs() < 1e-12);
        }

        // p = (1,0), q = (0,1): complement is span_ℝ{(i,0),(0,i)}.
        let q2 = vec![c(0.0, 0.0), c(1.0, 0.0)];
        let basis2 = real_orthocomplement(&[p.clone(), q2]).unwrap();
        assert_eq!(basis2.len(), 2);
        for b in &basis2 {
            assert!(b[0].re.abs() < 1e-12 && b[1].re.abs() < 1e-12);
        }

        // Re-orthogonality holds for a generic anchor pair.
        let a1 = vec![c(0.4, -0.8), c(1.1, 0.2)];
        let a2 = vec![c(-0.3, 0.5), c(0.7, 0.9)];
        let basis3 = real_orthocomplement(&[a1.clone(), a2.clone()]).unwrap();
        assert_eq!(basis3.len(), 2);
        for b in &basis3 {
            assert!(hermitian(b, &a1).unwrap().re.abs() < 1e-10);
            assert!(hermitian(b, &a2).unwrap().re.abs() < 1e-10);
        }
    }

    #[test]
    fn real_orthocomplement_rejects_dependent_anchors() {
        let p = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let q: Vec<Complex64> = p.iter().map(|z| z * 2.0).collect();
        match real_orthocomplement(&[p, q]) {
            Err(Error::DegenerateSpan) => {}
            other => panic!("expected DegenerateSpan, got {other:?}"),
        }
        match real_orthocomplement(&[vec![c(0.0, 0.0), c(0.0, 0.0)]]) {
            Err(Error::ZeroVector) => {}
            other => panic!("expected ZeroVector, got {other:?}"),
        }
    }

    #[test]
    fn complex_orthocomplement_cases() {
        let p = vec![c(0.3, 0.0), c(0.0, 0.0)];
        let w = complex_orthocomplement(&p).unwrap();
        assert_eq!(w.len(), 1);
        assert!(w[0][0].norm() < 1e-12);
        assert!((w[0][1].norm() - 1.0).abs() < 1e-12);

        // p ∝ (1, ω): the complement is spanned by (1, −ω)/√2.
        let om = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let phase = Complex64::from_polar(1.0, 0.37);
        let p2 = vec![phase / 2.0f64.sqrt(), phase * om / 2.0f64.sqrt()];
        let w2 = complex_orthocomplement(&p2).unwrap();
        assert_eq!(w2.len(), 1);
        assert!(hermitian(&w2[0], &p2).unwrap().norm() < 1e-12);
        let expected = vec![c(1.0, 0.0) / 2.0f64.sqrt(), -om / 2.0f64.sqrt()];
        // Same line: |⟨w, expected⟩| = 1.
        let ip = hermitian(&w2[0], &expected).unwrap().norm();
        assert!((ip - 1.0).abs() < 1e-12);

        let n4 = vec![c(0.2, -0.4), c(1.0, 0.3), c(-0.7, 0.6), c(0.1, 1.2)];
        let w4 = complex_orthocomplement(&n4).unwrap();
        assert_eq!(w4.len(), 3);
        for (i, a) in w4.iter().enumerate() {
            assert!(hermitian(a, &n4).unwrap().norm() < 1e-10);
            for b in w4.iter().skip(i + 1) {
                assert!(hermitian(a, b).unwrap().norm() < 1e-10);
            }
        }
    }

    #[test]
    fn congruence_is_plain_transpose() {
        // W = (i), H = (i): WᵀHW = i³ = −i; a conjugating transpose would give i.
        let w = CMatrix::from_rows(&[vec![c(0.0, 1.0)]]).unwrap();
        let h = CMatrix::from_rows(&[vec![c(0.0, 1.0)]]).unwrap();
        let g = congruence(&h, &w);
        assert!((g.at(0, 0) - c(0.0, -1.0)).norm() < 1e-15);
    }
}
