//! Exact weight systems: weighted homogeneity over ℚ.
//!
//! A polynomial is weighted homogeneous with weights w iff every monomial
//! z^b satisfies Σ b_j/w_j = 1. In reciprocal coordinates u_j = 1/w_j this is
//! the linear system B·u = 1 with the open condition u > 0, which is solved
//! exactly: Gaussian elimination for the affine part, Fourier–Motzkin for
//! strict positivity. No floating point is involved anywhere in this module.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// One row per monomial of the polynomial; entry (r, j) is the exponent of
/// z_{j+1} in that monomial. Rows are distinct and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    n_vars: usize,
    rows: Vec<Vec<u32>>,
}

impl ExponentMatrix {
    pub fn of(f: &Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self {
            n_vars: f.n_vars(),
            rows: f.iter().map(|(e, _)| e.to_vec()).collect(),
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
}

/// Exact description of the weight space of one polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSolution {
    /// Always true for a returned solution; infeasible systems error instead.
    pub feasible: bool,
    /// Strictly positive u with B·u = 1 (u_j = 1/w_j), the canonical interior
    /// point of the solution set.
    pub reciprocal_point: Vec<BigRational>,
    /// Basis of {v : B·v = 0}; empty iff the weights are unique.
    pub kernel_basis: Vec<Vec<BigRational>>,
    /// canonical_weights_j = 1/reciprocal_point_j.
    pub canonical_weights: Vec<BigRational>,
}

/// Witness that all f_j are weighted homogeneous with proportional weights:
/// w_{f_j} = s_j·w_f with s_1 = 1 (for a pair, s = [1, s]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonWeightCertificate {
    pub w_f: Vec<BigRational>,
    pub s: Vec<BigRational>,
}

impl CommonWeightCertificate {
    /// Reciprocal weights u_j = 1/w_f_j.
    pub fn reciprocals(&self) -> Vec<BigRational> {
        self.w_f.iter().map(|w| w.recip()).collect()
    }

    /// The proportionality factor of a pair certificate (w_g = s·w_f).
    pub fn pair_s(&self) -> &BigRational {
        assert!(self.s.len() >= 2, "pair factor on a single-polynomial certificate");
        &self.s[1]
    }

    /// Weights of the j-th polynomial: s_j·w_f.
    pub fn weights_of(&self, j: usize) -> Vec<BigRational> {
        self.w_f.iter().map(|w| w * &self.s[j]).collect()
    }

    pub fn s_all_integer(&self) -> bool {
        self.s.iter().all(|s| s.is_integer())
    }

    /// Exact row checks B_{f_j}·u = s_j·1 for every polynomial.
    pub fn verify(&self, polys: &[&Polynomial]) -> Result<bool> {
        if polys.len() != self.s.len() {
            return Err(Error::DimensionMismatch {
                expected: self.s.len(),
                got: polys.len(),
            });
        }
        let u = self.reciprocals();
        for (k, f) in polys.iter().enumerate() {
            let b = ExponentMatrix::of(f)?;
            if b.n_vars() != u.len() {
                return Err(Error::DimensionMismatch {
                    expected: u.len(),
                    got: b.n_vars(),
                });
            }
            for row in b.rows() {
                let total = row_dot(row, &u);
                if total != self.s[k] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn row_dot(row: &[u32], u: &[BigRational]) -> BigRational {
    row.iter()
        .zip(u)
        .map(|(&b, uj)| uj * BigRational::from_integer(BigInt::from(b)))
        .sum()
}

struct AffineSet {
    particular: Vec<BigRational>,
    basis: Vec<Vec<BigRational>>,
}

/// Exact RREF solve of the system rows·x = rhs; None when inconsistent.
fn solve_affine(mut rows: Vec<(Vec<BigRational>, BigRational)>, n: usize) -> Option<AffineSet> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0usize;
    for col in 0..n {
        if next_row == rows.len() {
            break;
        }
        let Some(prow) = (next_row..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, prow);
        let inv = rows[next_row].0[col].clone();
        for x in rows[next_row].0.iter_mut() {
            *x = &*x / &inv;
        }
        rows[next_row].1 = &rows[next_row].1 / &inv;
        for r in 0..rows.len() {
            if r == next_row {
                continue;
            }
            let factor = rows[r].0[col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                let delta = &factor * &rows[next_row].0[j];
                rows[r].0[j] = &rows[r].0[j] - &delta;
            }
            let drhs = &factor * &rows[next_row].1;
            rows[r].1 = &rows[r].1 - &drhs;
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    for (coeffs, rhs) in &rows[next_row..] {
        debug_assert!(coeffs.iter().all(|x| x.is_zero()));
        if !rhs.is_zero() {
            return None;
        }
    }
    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut particular = vec![BigRational::zero(); n];
    for &(r, c) in &pivots {
        particular[c] = rows[r].1.clone();
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![BigRational::zero(); n];
        v[free] = BigRational::one();
        for &(r, c) in &pivots {
            v[c] = -rows[r].0[free].clone();
        }
        basis.push(v);
    }
    Some(AffineSet { particular, basis })
}

/// A strict inequality coeffs·t + constant > 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Strict {
    coeffs: Vec<BigRational>,
    constant: BigRational,
}

impl Strict {
    /// Scale by a positive rational so the first nonzero entry is ±1
    /// (deduplication key; scaling preserves the inequality).
    fn normalized(mut self) -> Self {
        let lead = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.constant))
            .find(|x| !x.is_zero())
            .cloned();
        if let Some(l) = lead {
            let a = l.abs();
            for x in self.coeffs.iter_mut() {
                *x = &*x / &a;
            }
            self.constant = &self.constant / &a;
        }
        self
    }
}

/// Affine expression coeffs·t + constant over the not-yet-assigned variables.
#[derive(Debug, Clone)]
struct Bound {
    coeffs: Vec<BigRational>,
    constant: BigRational,
}

impl Bound {
    fn eval(&self, t: &[BigRational]) -> BigRational {
        let mut acc = self.constant.clone();
        for (c, v) in self.coeffs.iter().zip(t) {
            acc += c * v;
        }
        acc
    }
}

const FM_SIZE_BUDGET: usize = 200_000;

/// Strict Fourier–Motzkin elimination. Returns a canonical interior point of
/// {t : all constraints hold}: variables are eliminated from the last to the
/// first, then assigned in index order as the midpoint of their interval
/// (lower bound + 1 when unbounded above, upper − 1 when unbounded below,
/// 0 when free).
fn interior_point(
    constraints: Vec<Strict>,
    dim: usize,
) -> Result<Option<Vec<BigRational>>> {
    // stages[k] holds the lower/upper bounds for variable k as expressions in
    // the variables before it.
    let mut stages: Vec<(Vec<Bound>, Vec<Bound>)> = vec![(Vec::new(), Vec::new()); dim];
    let mut current = constraints;
    for k in (0..dim).rev() {
        let mut lowers: Vec<Bound> = Vec::new();
        let mut uppers: Vec<Bound> = Vec::new();
        let mut rest: Vec<Strict> = Vec::new();
        for mut con in current {
            debug_assert_eq!(con.coeffs.len(), k + 1);
            let a = con.coeffs.pop().expect("variable coefficient");
            if a.is_zero() {
                rest.push(con);
            } else if a.is_positive() {
                // t_k > −(constant + Σ coeffs·t)/a
                lowers.push(Bound {
                    coeffs: con.coeffs.iter().map(|c| -(c / &a)).collect(),
                    constant: -(&con.constant / &a),
                });
            } else {
                let na = -a;
                // t_k < (constant + Σ coeffs·t)/(−a)
                uppers.push(Bound {
                    coeffs: con.coeffs.iter().map(|c| c / &na).collect(),
                    constant: &con.constant / &na,
                });
            }
        }
        let mut next: BTreeSet<Strict> = BTreeSet::new();
        for s in rest {
            next.insert(s.normalized());
        }
        for lo in &lowers {
            for up in &uppers {
                // up − lo > 0
                let coeffs: Vec<BigRational> = up
                    .coeffs
                    .iter()
                    .zip(&lo.coeffs)
                    .map(|(u, l)| u - l)
                    .collect();
                let constant = &up.constant - &lo.constant;
                next.insert(Strict { coeffs, constant }.normalized());
                if next.len() > FM_SIZE_BUDGET {
                    return Err(Error::Numerical(
                        "positivity elimination exceeded its size budget".into(),
                    ));
                }
            }
        }
        stages[k] = (lowers, uppers);
        current = next.into_iter().collect();
    }
    for con in &current {
        debug_assert!(con.coeffs.is_empty());
        if !con.constant.is_positive() {
            return Ok(None);
        }
    }
    let mut t: Vec<BigRational> = Vec::with_capacity(dim);
    for (lowers, uppers) in stages.iter().take(dim) {
        let lo = lowers.iter().map(|b| b.eval(&t)).max();
        let up = uppers.iter().map(|b| b.eval(&t)).min();
        let two = BigRational::from_integer(BigInt::from(2));
        let one = BigRational::one();
        let value = match (lo, up) {
            (Some(l), Some(u)) => {
                debug_assert!(l < u, "infeasibility missed by elimination");
                (&l + &u) / &two
            }
            (Some(l), None) => &l + &one,
            (None, Some(u)) => &u - &one,
            (None, None) => BigRational::zero(),
        };
        t.push(value);
    }
    Ok(Some(t))
}

fn positivity_constraints(affine: &AffineSet, coords: &[usize]) -> Vec<Strict> {
    coords
        .iter()
        .map(|&j| Strict {
            coeffs: affine.basis.iter().map(|v| v[j].clone()).collect(),
            constant: affine.particular[j].clone(),
        })
        .collect()
}

fn point_from(affine: &AffineSet, t: &[BigRational]) -> Vec<BigRational> {
    let n = affine.particular.len();
    (0..n)
        .map(|j| {
            let mut acc = affine.particular[j].clone();
            for (k, v) in affine.basis.iter().enumerate() {
                acc += &t[k] * &v[j];
            }
            acc
        })
        .collect()
}

fn check_input(f: &Polynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.has_constant_term() {
        return Err(Error::ConstantTermPresent);
    }
    Ok(())
}

/// Exact solution of {B·u = 1, u > 0} for one polynomial.
pub fn weight_space(f: &Polynomial) -> Result<WeightSolution> {
    check_input(f)?;
    let b = ExponentMatrix::of(f)?;
    let n = f.n_vars();
    let rows: Vec<(Vec<BigRational>, BigRational)> = b
        .rows()
        .iter()
        .map(|row| {
            (
                row.iter()
                    .map(|&e| BigRational::from_integer(BigInt::from(e)))
                    .collect(),
                BigRational::one(),
            )
        })
        .collect();
    let affine = solve_affine(rows, n).ok_or(Error::NotWeightedHomogeneous)?;
    let coords: Vec<usize> = (0..n).collect();
    let cons = positivity_constraints(&affine, &coords);
    let t = interior_point(cons, affine.basis.len())?
        .ok_or(Error::NotWeightedHomogeneous)?;
    let u = point_from(&affine, &t);
    for row in b.rows() {
        assert!(row_dot(row, &u).is_one(), "weight solve failed its own row check");
    }
    assert!(u.iter().all(|x| x.is_positive()));
    let canonical_weights: Vec<BigRational> = u.iter().map(|x| x.recip()).collect();
    Ok(WeightSolution {
        feasible: true,
        reciprocal_point: u,
        kernel_basis: affine.basis,
        canonical_weights,
    })
}

/// Common exact weights for a pair: u > 0 and s > 0 with B_f·u = 1 and
/// B_g·u = s·1. `Ok(None)` is the infeasible verdict.
pub fn common_weights(
    f: &Polynomial,
    g: &Polynomial,
) -> Result<Option<CommonWeightCertificate>> {
    common_weights_multi(&[f.clone(), g.clone()])
}

/// Common exact weights for m ≥ 2 polynomials: u > 0 with B_{f_1}·u = 1 and
/// B_{f_j}·u = s_j·1, s_j > 0, s_1 = 1.
pub fn common_weights_multi(
    polys: &[Polynomial],
) -> Result<Option<CommonWeightCertificate>> {
    let m = polys.len();
    if m < 2 {
        return Err(Error::InvalidInput(
            "a common weight certificate needs at least two polynomials".into(),
        ));
    }
    let n = polys[0].n_vars();
    for f in polys {
        if f.n_vars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: f.n_vars(),
            });
        }
        check_input(f)?;
    }
    // Unknowns: u_1..u_n, then s_2..s_m.
    let total = n + m - 1;
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for (k, f) in polys.iter().enumerate() {
        let b = ExponentMatrix::of(f)?;
        for row in b.rows() {
            let mut coeffs = vec![BigRational::zero(); total];
            for (j, &e) in row.iter().enumerate() {
                coeffs[j] = BigRational::from_integer(BigInt::from(e));
            }
            let rhs = if k == 0 {
                BigRational::one()
            } else {
                coeffs[n + k - 1] = -BigRational::one();
                BigRational::zero()
            };
            rows.push((coeffs, rhs));
        }
    }
    let Some(affine) = solve_affine(rows, total) else {
        return Ok(None);
    };
    let coords: Vec<usize> = (0..total).collect();
    let cons = positivity_constraints(&affine, &coords);
    let Some(t) = interior_point(cons, affine.basis.len())? else {
        return Ok(None);
    };
    let x = point_from(&affine, &t);
    let u = x[..n].to_vec();
    let mut s = Vec::with_capacity(m);
    s.push(BigRational::one());
    s.extend(x[n..].iter().cloned());
    let cert = CommonWeightCertificate {
        w_f: u.iter().map(|v| v.recip()).collect(),
        s,
    };
    let refs: Vec<&Polynomial> = polys.iter().collect();
    assert!(
        cert.verify(&refs)?,
        "weight certificate failed its own exact row check"
    );
    Ok(Some(cert))
}

/// Relative defect of the Euler identity Σ (z_j/w_j)·∂f/∂z_j(z) = f(z) at z.
pub fn euler_defect(
    f: &Polynomial,
    weights: &[BigRational],
    z: &[Complex64],
) -> Result<f64> {
    if weights.len() != f.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: f.n_vars(),
            got: weights.len(),
        });
    }
    let fz = f.evaluate(z)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..f.n_vars() {
        let w = crate::exact::rational_to_f64(&weights[j]);
        acc += z[j] / w * f.partial(j)?.evaluate(z)?;
    }
    Ok((acc - fz).norm() / (1.0 + fz.norm()))
}

/// Relative defect of the rescaling identity f(z·e^{c/w}) = e^c·f(z).
pub fn rescaling_defect(
    f: &Polynomial,
    weights: &[BigRational],
    z: &[Complex64],
    c: Complex64,
) -> Result<f64> {
    if weights.len() != f.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: f.n_vars(),
            got: weights.len(),
        });
    }
    let scaled: Vec<Complex64> = z
        .iter()
        .zip(weights)
        .map(|(zj, w)| zj * (c / crate::exact::rational_to_f64(w)).exp())
        .collect();
    let lhs = f.evaluate(&scaled)?;
    let rhs = c.exp() * f.evaluate(z)?;
    Ok((lhs - rhs).norm() / (1.0 + rhs.norm()))
}
