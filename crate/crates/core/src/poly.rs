//! Sparse multivariate polynomials over exact complex-rational coefficients.
//!
//! Coefficients stay exact through construction and formal differentiation;
//! doubles appear only at evaluation time. The log-gradient convention is
//! Milnor's conjugated one: grad log f(p)_j = conj((∂f/∂z_j)(p) / f(p)).

use crate::error::{Error, Result};
use crate::exact::QComplex;
use crate::linalg::CMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse polynomial in `n_vars` complex variables. Exponent vectors have
/// length `n_vars` and stored coefficients are never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, QComplex>,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        assert!(n_vars >= 1, "a polynomial needs at least one variable");
        Self {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: QComplex) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(vec![0; n_vars], c);
        p
    }

    /// The variable z_{j+1} (0-based index).
    pub fn var(n_vars: usize, j: usize) -> Result<Self> {
        if j >= n_vars {
            return Err(Error::IndexOutOfRange {
                index: j,
                n_vars,
            });
        }
        let mut exps = vec![0; n_vars];
        exps[j] = 1;
        Ok(Self::monomial(n_vars, exps, QComplex::one()))
    }

    pub fn monomial(n_vars: usize, exps: Vec<u32>, coeff: QComplex) -> Self {
        assert_eq!(exps.len(), n_vars);
        let mut p = Self::zero(n_vars);
        p.add_term(exps, coeff);
        p
    }

    /// Adds `coeff·z^exps`, merging with an existing term and dropping the
    /// entry if the sum cancels.
    pub fn add_term(&mut self, exps: Vec<u32>, coeff: QComplex) {
        assert_eq!(exps.len(), self.n_vars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                let sum = &*existing + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], &QComplex)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Max total degree of a monomial; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// All monomials share one total degree (vacuously true when zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        }
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.keys().any(|e| e.iter().all(|&x| x == 0))
    }

    /// Some(c) when the polynomial is a constant, including zero.
    pub fn constant_value(&self) -> Option<QComplex> {
        if self.terms.is_empty() {
            return Some(QComplex::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().expect("len checked");
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Reinterpret in a larger variable ring (pads exponent vectors).
    pub fn embed(&self, n_vars: usize) -> Result<Self> {
        if n_vars < self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: n_vars,
            });
        }
        if n_vars == self.n_vars {
            return Ok(self.clone());
        }
        let mut out = Self::zero(n_vars);
        for (e, c) in self.iter() {
            let mut exps = e.to_vec();
            exps.resize(n_vars, 0);
            out.add_term(exps, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QComplex) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (e, coeff) in self.iter() {
            out.add_term(e.to_vec(), coeff * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.n_vars, QComplex::one());
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Σ coeff · Π p_j^{e_j} in double precision.
    pub fn evaluate(&self, p: &[Complex64]) -> Result<Complex64> {
        if p.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: p.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (exps, coeff) in self.iter() {
            let mut term = coeff.to_c64();
            for (z, &e) in p.iter().zip(exps) {
                term *= cpow(*z, e);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Formal holomorphic partial ∂f/∂z_{j+1} with exact coefficients.
    pub fn partial(&self, j: usize) -> Result<Self> {
        if j >= self.n_vars {
            return Err(Error::IndexOutOfRange {
                index: j,
                n_vars: self.n_vars,
            });
        }
        let mut out = Self::zero(self.n_vars);
        for (exps, coeff) in self.iter() {
            let e = exps[j];
            if e == 0 {
                continue;
            }
            let mut de = exps.to_vec();
            de[j] = e - 1;
            out.add_term(de, coeff.scale(&BigRational::from_integer(e.into())));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.n_vars)
            .map(|j| self.partial(j).expect("index in range"))
            .collect()
    }

    /// Scale-aware zero threshold for values at p: 1e-12·(1 + ‖p‖^{deg f}).
    pub fn zero_set_tolerance(&self, p: &[Complex64]) -> f64 {
        let norm = p.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        1e-12 * (1.0 + norm.powi(self.total_degree() as i32))
    }

    /// Evaluate and insist the value clears the zero-set tolerance.
    pub fn value_off_zero_set(&self, p: &[Complex64]) -> Result<Complex64> {
        let v = self.evaluate(p)?;
        if v.norm() <= self.zero_set_tolerance(p) {
            return Err(Error::EvaluationOnZeroSet { magnitude: v.norm() });
        }
        Ok(v)
    }
}

fn cpow(z: Complex64, e: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut base = z;
    let mut k = e;
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        k >>= 1;
        if k > 0 {
            base *= base;
        }
    }
    acc
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e.to_vec(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e.to_vec(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = Polynomial::zero(self.n_vars);
        for (ea, ca) in self.iter() {
            for (eb, cb) in rhs.iter() {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let mut out = Polynomial::zero(self.n_vars);
        for (e, c) in self.iter() {
            out.add_term(e.to_vec(), -c);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, coeff) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_const = exps.iter().all(|&e| e == 0);
            write!(f, "({coeff})")?;
            if !is_const {
                for (j, &e) in exps.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    write!(f, "*z{}", j + 1)?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Milnor's conjugated gradient of log f: entry j is conj(∂f/∂z_j(p) / f(p)).
pub fn log_gradient(f: &Polynomial, p: &[Complex64]) -> Result<Vec<Complex64>> {
    let fval = f.value_off_zero_set(p)?;
    let mut out = Vec::with_capacity(f.n_vars());
    for j in 0..f.n_vars() {
        let d = f.partial(j)?.evaluate(p)?;
        out.push((d / fval).conj());
    }
    Ok(out)
}

/// Hessian of log f at p: entry (j,k) is (f·f_{jk} − f_j·f_k)/f². Constructed
/// symmetric.
pub fn log_hessian(f: &Polynomial, p: &[Complex64]) -> Result<CMatrix> {
    let n = f.n_vars();
    let fval = f.value_off_zero_set(p)?;
    let fsq = fval * fval;
    let grads: Vec<Polynomial> = f.gradient();
    let grad_vals: Vec<Complex64> = grads
        .iter()
        .map(|g| g.evaluate(p))
        .collect::<Result<_>>()?;
    let mut h = CMatrix::zeros(n, n);
    for j in 0..n {
        for k in j..n {
            let second = grads[j].partial(k)?.evaluate(p)?;
            let entry = (fval * second - grad_vals[j] * grad_vals[k]) / fsq;
            h.set(j, k, entry);
            h.set(k, j, entry);
        }
    }
    Ok(h)
}

/// H = −i·(log_hessian(g, p) − s·log_hessian(f, p)); symmetric.
pub fn combined_hessian(
    f: &Polynomial,
    g: &Polynomial,
    s: &BigRational,
    p: &[Complex64],
) -> Result<CMatrix> {
    let hf = log_hessian(f, p)?;
    let hg = log_hessian(g, p)?;
    let sf = crate::exact::rational_to_f64(s);
    let minus_i = Complex64::new(0.0, -1.0);
    Ok(hg.sub(&hf.scale(Complex64::new(sf, 0.0))).scale(minus_i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn qi(v: i64) -> QComplex {
        QComplex::from_int(v)
    }

    /// z₁² + z₂²
    fn sum_of_squares() -> Polynomial {
        let mut p = Polynomial::zero(2);
        p.add_term(vec![2, 0], qi(1));
        p.add_term(vec![0, 2], qi(1));
        p
    }

    /// z₁z₂
    fn product_poly() -> Polynomial {
        Polynomial::monomial(2, vec![1, 1], qi(1))
    }

    fn fermat(m: u32) -> Polynomial {
        let mut p = Polynomial::zero(2);
        p.add_term(vec![m, 0], qi(1));
        p.add_term(vec![0, m], qi(1));
        p
    }

    #[test]
    fn evaluate_examples() {
        let f = sum_of_squares();
        let v = f.evaluate(&[c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert!(v.norm() < 1e-15);

        let g = product_poly();
        assert_eq!(g.evaluate(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap(), c(1.0, 0.0));

        // z₁³ + 2z₂ at (2, −3+i), with an independent term-by-term oracle.
        let mut h = Polynomial::zero(2);
        h.add_term(vec![3, 0], qi(1));
        h.add_term(vec![0, 1], qi(2));
        let p = [c(2.0, 0.0), c(-3.0, 1.0)];
        let got = h.evaluate(&p).unwrap();
        let oracle = p[0] * p[0] * p[0] + 2.0 * p[1];
        assert!((got - oracle).norm() < 1e-14);
        assert!((got - c(2.0, 2.0)).norm() < 1e-14);

        assert!(h.evaluate(&[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn partial_examples() {
        let f = sum_of_squares();
        let df = f.partial(0).unwrap();
        assert_eq!(df, Polynomial::monomial(2, vec![1, 0], qi(2)));

        let g = product_poly();
        assert_eq!(
            g.partial(1).unwrap(),
            Polynomial::monomial(2, vec![1, 0], qi(1))
        );

        // ∂(z₁³+z₂³)/∂z₁ = 3z₁², checked against central differences.
        let f3 = fermat(3);
        let d = f3.partial(0).unwrap();
        assert_eq!(d, Polynomial::monomial(2, vec![2, 0], qi(3)));
        let p = [c(0.7, 0.4), c(-0.2, 1.1)];
        let h = 1e-6;
        let fd = (f3.evaluate(&[p[0] + h, p[1]]).unwrap()
            - f3.evaluate(&[p[0] - h, p[1]]).unwrap())
            / (2.0 * h);
        assert!((d.evaluate(&p).unwrap() - fd).norm() < 1e-8);

        assert!(f3.partial(2).is_err());
    }

    #[test]
    fn arithmetic_and_pow() {
        let f = sum_of_squares();
        let g = product_poly();
        let fg = &f * &g;
        assert_eq!(fg.total_degree(), 4);
        assert_eq!(fg.term_count(), 2);

        let sq = g.pow(2);
        assert_eq!(sq, Polynomial::monomial(2, vec![2, 2], qi(1)));
        assert_eq!(g.pow(0), Polynomial::constant(2, qi(1)));

        let zero = &f - &f;
        assert!(zero.is_zero());
    }

    #[test]
    fn degree_and_shape_queries() {
        let f = sum_of_squares();
        assert!(f.is_homogeneous());
        assert_eq!(f.total_degree(), 2);
        assert!(!f.has_constant_term());

        let mut g = product_poly();
        g.add_term(vec![0, 0], qi(5));
        assert!(g.has_constant_term());
        assert!(!g.is_homogeneous());

        let e = f.embed(4).unwrap();
        assert_eq!(e.n_vars(), 4);
        assert_eq!(e.total_degree(), 2);
        assert!(f.embed(1).is_err());
    }

    #[test]
    fn log_gradient_examples() {
        let g = product_poly();
        let lg = log_gradient(&g, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((lg[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((lg[1] - c(1.0, 0.0)).norm() < 1e-15);

        let f = sum_of_squares();
        let eps = 0.3;
        let lg2 = log_gradient(&f, &[c(eps, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((lg2[0] - c(2.0 / eps, 0.0)).norm() < 1e-13);
        assert!(lg2[1].norm() < 1e-15);

        // Fermat at p = ε·e^{iθ}·e_u: i·grad log f(p) = (mi/ε²)·p.
        for m in [2u32, 3, 5] {
            let fm = fermat(m);
            let eps = 0.8;
            let theta = 0.9;
            let p = [Complex64::from_polar(eps, theta), c(0.0, 0.0)];
            let lg = log_gradient(&fm, &p).unwrap();
            let i = c(0.0, 1.0);
            let lhs = [i * lg[0], i * lg[1]];
            let scale = i * (m as f64) / (eps * eps);
            assert!((lhs[0] - scale * p[0]).norm() < 1e-12);
            assert!((lhs[1] - scale * p[1]).norm() < 1e-12);
        }

        // On the zero set the gradient is refused.
        assert!(matches!(
            log_gradient(&f, &[c(1.0, 0.0), c(0.0, 1.0)]),
            Err(Error::EvaluationOnZeroSet { .. })
        ));
    }

    #[test]
    fn log_hessian_examples() {
        let g = product_poly();
        let h = log_hessian(&g, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((h.at(0, 0) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((h.at(1, 1) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(h.at(0, 1).norm() < 1e-15);

        // Linear polynomial in 2 variables: only the (1,1) entry survives.
        let lin = Polynomial::monomial(2, vec![1, 0], qi(1));
        let hl = log_hessian(&lin, &[c(1.0, 0.0), c(5.0, -2.0)]).unwrap();
        assert!((hl.at(0, 0) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(hl.at(0, 1).norm() < 1e-15);
        assert!(hl.at(1, 1).norm() < 1e-15);
        assert_eq!(hl.symmetry_defect(), 0.0);
    }

    #[test]
    fn log_hessian_matches_finite_differences() {
        // Entrywise central differences of log f, step 1e-5.
        let mut f = Polynomial::zero(2);
        f.add_term(vec![3, 0], qi(1));
        f.add_term(vec![1, 1], QComplex::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(1), BigInt::from(1)),
        ));
        f.add_term(vec![0, 2], qi(2));
        let p = [c(0.9, 0.2), c(-0.4, 0.7)];
        let h = log_hessian(&f, &p).unwrap();
        let step = 1e-5;
        for j in 0..2 {
            for k in 0..2 {
                let mut pp = p.to_vec();
                let mut pm = p.to_vec();
                pp[k] += step;
                pm[k] -= step;
                // d/dz_k of (d log f/dz_j) via central differences of the
                // analytic first partial of log f.
                let dlog = |q: &[Complex64], j: usize| {
                    f.partial(j).unwrap().evaluate(q).unwrap() / f.evaluate(q).unwrap()
                };
                let fd = (dlog(&pp, j) - dlog(&pm, j)) / (2.0 * step);
                assert!(
                    (h.at(j, k) - fd).norm() < 1e-6,
                    "entry ({j},{k}): {} vs {}",
                    h.at(j, k),
                    fd
                );
            }
        }
    }

    #[test]
    fn combined_hessian_fermat_pair() {
        // f = Σ c_j z_j², g = Σ d_j z_j² at p = ε·e^{iθ}·e_u:
        // H = (2i·e^{−2iθ}/(ε²·c_u·d_u))·diag(A_{j,u}), A_{j,u} = c_j d_u − c_u d_j.
        let cs = [3i64, 1];
        let ds = [1i64, 2];
        let mut f = Polynomial::zero(2);
        let mut g = Polynomial::zero(2);
        f.add_term(vec![2, 0], qi(cs[0]));
        f.add_term(vec![0, 2], qi(cs[1]));
        g.add_term(vec![2, 0], qi(ds[0]));
        g.add_term(vec![0, 2], qi(ds[1]));
        let s = BigRational::from_integer(1.into());
        let eps = 0.7;
        let theta = 0.4;
        let u = 0usize;
        let p = [Complex64::from_polar(eps, theta), c(0.0, 0.0)];
        let h = combined_hessian(&f, &g, &s, &p).unwrap();
        let scale = c(0.0, 2.0) * Complex64::from_polar(1.0, -2.0 * theta)
            / (eps * eps * (cs[u] * ds[u]) as f64);
        for j in 0..2 {
            for k in 0..2 {
                let expect = if j == k {
                    scale * ((cs[j] * ds[u] - cs[u] * ds[j]) as f64)
                } else {
                    c(0.0, 0.0)
                };
                assert!(
                    (h.at(j, k) - expect).norm() < 1e-12,
                    "entry ({j},{k}): {} vs {}",
                    h.at(j, k),
                    expect
                );
            }
        }
    }

    #[test]
    fn combined_hessian_fermat_pair_higher_m_is_zero() {
        for m in [3u32, 4] {
            let mut f = Polynomial::zero(2);
            f.add_term(vec![m, 0], qi(2));
            f.add_term(vec![0, m], qi(1));
            let mut g = Polynomial::zero(2);
            g.add_term(vec![m, 0], qi(1));
            g.add_term(vec![0, m], qi(3));
            let s = BigRational::from_integer(1.into());
            let p = [Complex64::from_polar(1.0, 0.5), c(0.0, 0.0)];
            let h = combined_hessian(&f, &g, &s, &p).unwrap();
            assert!(h.frobenius() < 1e-12, "m={m}: {}", h.frobenius());
        }
    }

    #[test]
    fn combined_hessian_of_equal_pair_is_zero() {
        let f = sum_of_squares();
        let s = BigRational::from_integer(1.into());
        let p = [c(0.4, 0.3), c(-0.1, 0.9)];
        let h = combined_hessian(&f, &f, &s, &p).unwrap();
        assert_eq!(h.frobenius(), 0.0);
    }

    #[test]
    fn prop42_combined_hessian_formula() {
        // f = z₁^m + z₂^m, g = z₁z₂, s = 2/m, p = (ε·e^{iθ}/√2)(1, ω):
        // H = (m·i·e^{−2iθ}/(ε²ω²))·[[ω², −ω],[−ω, 1]].
        for (m, k) in [(2u32, 0u32), (3, 1), (5, 2)] {
            let f = fermat(m);
            let g = product_poly();
            let s = BigRational::new(BigInt::from(2), BigInt::from(m));
            let eps = 1.3;
            let theta = 0.25;
            let om = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64);
            let base = Complex64::from_polar(eps / 2.0f64.sqrt(), theta);
            let p = [base, base * om];
            let h = combined_hessian(&f, &g, &s, &p).unwrap();
            let scale = c(0.0, m as f64) * Complex64::from_polar(1.0, -2.0 * theta)
                / (eps * eps * om * om);
            let expect = [[om * om, -om], [-om, c(1.0, 0.0)]];
            for (j, row) in expect.iter().enumerate() {
                for (l, e) in row.iter().enumerate() {
                    assert!(
                        (h.at(j, l) - scale * e).norm() < 1e-11,
                        "m={m} entry ({j},{l}): {} vs {}",
                        h.at(j, l),
                        scale * e
                    );
                }
            }
        }
    }
}
