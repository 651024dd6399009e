//! Simultaneous root finding for univariate complex polynomials
//! (Aberth–Ehrlich iteration with zero-root deflation).

use crate::error::{Error, Result};
use num_complex::Complex64;

const MAX_ITERATIONS: usize = 200;
const BACKWARD_TOLERANCE: f64 = 1e-10;
const TINY: f64 = 1e-300;

/// p(x) and p'(x) by Horner's rule; `coeffs` ascending, c₀ + c₁t + … + c_d t^d.
fn eval_with_derivative(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Backward error of x as a root: |p(x)| relative to Σ|c_k||x|^k.
fn backward_error(coeffs: &[Complex64], x: Complex64) -> f64 {
    let (p, _) = eval_with_derivative(coeffs, x);
    let mut scale = 0.0;
    let mut xk = 1.0;
    let ax = x.norm();
    for c in coeffs {
        scale += c.norm() * xk;
        xk *= ax;
    }
    p.norm() / (scale + TINY)
}

fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d].norm();
    let radius = 1.0
        + coeffs[..d]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0, f64::max);
    (0..d)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * j as f64 / d as f64 + 0.7;
            Complex64::from_polar(radius, angle)
        })
        .collect()
}

fn aberth(coeffs: &[Complex64], max_iterations: usize) -> Result<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    if d == 1 {
        return Ok(vec![-coeffs[0] / coeffs[1]]);
    }
    let mut x = initial_guesses(coeffs);
    let mut worst = f64::INFINITY;
    for _ in 0..max_iterations {
        worst = x
            .iter()
            .map(|&xj| backward_error(coeffs, xj))
            .fold(0.0, f64::max);
        if worst <= BACKWARD_TOLERANCE {
            return Ok(x);
        }
        let snapshot = x.clone();
        for j in 0..d {
            let xj = snapshot[j];
            let (p, dp) = eval_with_derivative(coeffs, xj);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() > 0.0 {
                p / dp
            } else {
                // Critical point: nudge off it instead of dividing by zero.
                x[j] = xj + Complex64::new(1e-6, 1e-6) * (1.0 + xj.norm());
                continue;
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (k, &xk) in snapshot.iter().enumerate() {
                if k != j {
                    repulsion += (xj - xk).finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() > 0.0 { newton / denom } else { newton };
            let next = xj - step;
            x[j] = if next.re.is_finite() && next.im.is_finite() {
                next
            } else {
                xj + Complex64::new(1e-6, -1e-6) * (1.0 + xj.norm())
            };
        }
    }
    let final_worst = x
        .iter()
        .map(|&xj| backward_error(coeffs, xj))
        .fold(0.0, f64::max);
    Err(Error::RootFindingDidNotConverge {
        residual: final_worst.min(worst),
        iterations: max_iterations,
    })
}

/// All `d` complex roots of c₀ + c₁t + … + c_d t^d (ascending coefficients,
/// exact trailing zeros trimmed), sorted by (re, im). Roots at t = 0 are
/// deflated exactly before the iteration.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    polynomial_roots_with_budget(coeffs, MAX_ITERATIONS)
}

/// As [`polynomial_roots`] with an explicit iteration budget.
pub fn polynomial_roots_with_budget(
    coeffs: &[Complex64],
    max_iterations: usize,
) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|t| t.norm() == 0.0) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if c.len() == 1 {
        return Ok(Vec::new());
    }
    let zero_roots = c.iter().take_while(|t| t.norm() == 0.0).count();
    let deflated = &c[zero_roots..];
    let mut roots = vec![Complex64::new(0.0, 0.0); zero_roots];
    if deflated.len() > 1 {
        roots.extend(aberth(deflated, max_iterations)?);
    }
    roots.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("finite roots")
    });
    Ok(roots)
}
