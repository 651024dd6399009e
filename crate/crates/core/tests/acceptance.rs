//! Release gate: eight end-to-end criteria, each printing one PASS/FAIL line.
//!
//! Every tolerance is pinned here (not read from configuration) so the gate
//! cannot drift. Criteria 1–5 re-run the named verification suites at their
//! production parameters and additionally enforce wall-clock budgets;
//! criteria 6–8 check the exact weight arithmetic, the determinant/eigenvalue
//! identities on every fold point produced by criteria 1–2, and the analytic
//! invariances (finite differences, Euler/rescaling, circle action, phase,
//! criterion equivalence) on the worked examples.

use std::f64::consts::PI;
use std::time::Instant;

use milnor_atlas::exact::{rational_to_f64, QComplex};
use milnor_atlas::suites::{identity_checks, run_suite, SuiteOptions};
use milnor_atlas::weights::{euler_defect, rescaling_defect};
use milnor_atlas::{
    common_weights, fold_test, is_singular_algebraic, is_singular_numeric, parse_polynomial_in,
    weight_space, AlgebraicVerdict, CommonWeightCertificate, MapSpec, Polynomial, SpherePoint,
    Tolerances,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn conclude(id: u32, label: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("acceptance {id}/8 [{label}]: PASS — {detail}"),
        Err(detail) => {
            println!("acceptance {id}/8 [{label}]: FAIL — {detail}");
            panic!("acceptance criterion {id} failed: {detail}");
        }
    }
}

/// Runs one named suite at the given options, requiring every assertion to
/// hold and the wall clock to stay under `budget` seconds.
fn suite_under_budget(suite: &str, opts: &SuiteOptions, budget: f64) -> Result<String, String> {
    let start = Instant::now();
    let report = run_suite(suite, opts).map_err(|e| format!("{suite}: {e}"))?;
    let elapsed = start.elapsed().as_secs_f64();
    let total = report.assertions.len();
    let failed: Vec<String> = report
        .assertions
        .iter()
        .filter(|a| !a.passed)
        .map(|a| format!("{} ({})", a.name, a.detail))
        .collect();
    if !failed.is_empty() {
        return Err(format!(
            "{suite}: {}/{total} assertions failed: {}",
            failed.len(),
            failed.join("; ")
        ));
    }
    if elapsed > budget {
        return Err(format!(
            "{suite}: runtime {elapsed:.3}s exceeded the {budget}s budget"
        ));
    }
    Ok(format!(
        "{suite}: {total}/{total} assertions in {elapsed:.3}s (budget {budget}s)"
    ))
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn power_sum(m: u32) -> Polynomial {
    parse_polynomial_in(&format!("z1^{m} + z2^{m}"), 2).expect("power sum parses")
}

fn product_pair() -> Polynomial {
    parse_polynomial_in("z1*z2", 2).expect("product parses")
}

/// f = Σ_j c_j z_j^m over n variables with integer coefficients.
fn diagonal_power_sum(coeffs: &[i64], m: u32) -> Polynomial {
    let n = coeffs.len();
    let mut f = Polynomial::zero(n);
    for (j, &c) in coeffs.iter().enumerate() {
        let mut exps = vec![0u32; n];
        exps[j] = m;
        f.add_term(exps, QComplex::from_int(c));
    }
    f
}

/// Integer coefficient vectors whose pairwise cross minors c_j d_k − c_k d_j
/// are all nonzero, drawn from a seeded generator.
fn generic_axis_coefficients(rng: &mut ChaCha8Rng, n: usize) -> (Vec<i64>, Vec<i64>) {
    loop {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=9)).collect();
        let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=9)).collect();
        let ok = (0..n)
            .all(|j| (j + 1..n).all(|k| c[j] * d[k] - c[k] * d[j] != 0));
        if ok {
            return (c, d);
        }
    }
}

fn random_sphere_point(rng: &mut ChaCha8Rng, n: usize, epsilon: f64) -> SpherePoint {
    loop {
        let coords: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Ok(p) = SpherePoint::from_direction(coords, epsilon) {
            return p;
        }
    }
}

fn require_certificate(f: &Polynomial, g: &Polynomial) -> CommonWeightCertificate {
    common_weights(f, g)
        .expect("weight systems are solvable")
        .expect("the pair shares a weight system")
}

/// Criterion 1: the power-sum/product pairs (z1^m+z2^m, z1·z2) for
/// m ∈ {2,3,5} at radius 1. Every point (e^{iθ}, e^{iθ}ω)/√2 with ω^m = 1 and
/// θ ∈ {2πk/7} must be singular under both criteria (margins ≤ 1e−8), the
/// fold determinant on the canonical complex tangent line must equal 2mi to
/// relative 1e−8, and the fold index must be 1. Budget: one second.
#[test]
fn criterion_1_power_sum_product_fold_circles() {
    let opts = SuiteOptions::default(); // m ∈ {2,3,5}, ε = 1, θ grid 2πk/7
    conclude(
        1,
        "power-sum/product folds",
        suite_under_budget("prop42", &opts, 1.0),
    );
}

/// Criterion 2: diagonal quadratic pairs (Σ c_j z_j², Σ d_j z_j²) with generic
/// integer coefficients in n ∈ {2,3} variables. The axis points ε·e^{iθ}·e_u
/// are singular folds of index n−1 and the combined Hessian matches the
/// closed-form diagonal entrywise to relative 1e−8. Budget: one second.
#[test]
fn criterion_2_diagonal_quadratic_axis_folds() {
    let opts = SuiteOptions {
        ms: Some(vec![2]),
        ..SuiteOptions::default()
    };
    conclude(
        2,
        "diagonal quadratic folds",
        suite_under_budget("prop41", &opts, 1.0),
    );
}

/// Criterion 3: the same diagonal pairs with exponent m ∈ {3,4}. The axis
/// points stay singular but the combined Hessian vanishes identically
/// (entrywise ≤ 1e−10), so none of them is a fold. Budget: one second.
#[test]
fn criterion_3_higher_exponent_degenerate_axes() {
    let opts = SuiteOptions {
        ms: Some(vec![3, 4]),
        ..SuiteOptions::default()
    };
    conclude(
        3,
        "degenerate higher exponents",
        suite_under_budget("prop41", &opts, 1.0),
    );
}

/// Criterion 4: maps with no singular points at all — (z1², z2²) in two
/// variables and (z1, z2, z3) in three, both at radius 0.1. The multistart
/// search (64 restarts × 300 iterations) must come back empty at tolerance
/// 1e−8 and the minimum dependence margin over 10,000 seeded samples must
/// stay above the frozen floors. Budget: thirty seconds for both families.
#[test]
fn criterion_4_empty_singular_sets() {
    let start = Instant::now();
    let opts = SuiteOptions::default(); // 64×300 search, 10,000 samples, seed 0
    let outcome = suite_under_budget("prop33", &opts, 30.0).and_then(|first| {
        let second = suite_under_budget("prop52", &opts, 30.0)?;
        let elapsed = start.elapsed().as_secs_f64();
        if elapsed > 30.0 {
            return Err(format!(
                "combined runtime {elapsed:.3}s exceeded the 30s budget"
            ));
        }
        Ok(format!("{first}; {second}; combined {elapsed:.3}s"))
    });
    conclude(4, "empty singular sets", outcome);
}

/// Criterion 5: exact circle enumeration for homogeneous two-variable pairs.
/// (z1²+z2², z1·z2) has exactly two singular circles against a resultant
/// bound of two; (z1^m+z2^m, z1·z2) has exactly m for m ∈ {2,…,6} with
/// representative points confirmed singular; the proportional pair
/// (z1·z2, z1·z2) degenerates to an everywhere-singular verdict.
/// Budget: one second.
#[test]
fn criterion_5_exact_circle_enumeration() {
    let opts = SuiteOptions::default();
    conclude(
        5,
        "exact circle enumeration",
        suite_under_budget("prop43", &opts, 1.0),
    );
}

/// Criterion 6: exact weight arithmetic. common_weights on
/// (z1^m+z2^m, z1·z2) returns the ratio s = 2/m as an exact rational for
/// every m ∈ {2,…,8}; weight_space(z1·z2) is a one-dimensional family whose
/// canonical point (2,2) satisfies both weighted-homogeneity
/// characterizations — the Euler identity and the rescaling identity — at 20
/// seeded random points to relative 1e−9.
#[test]
fn criterion_6_exact_weight_certificates() {
    let outcome = (|| -> Result<String, String> {
        let g = product_pair();
        for m in 2..=8u32 {
            let f = power_sum(m);
            let cert = common_weights(&f, &g)
                .map_err(|e| format!("m={m}: {e}"))?
                .ok_or_else(|| format!("m={m}: no common weight certificate"))?;
            let expected = rational(2, i64::from(m));
            if cert.pair_s() != &expected {
                return Err(format!(
                    "m={m}: pair ratio {} instead of the exact {}",
                    cert.pair_s(),
                    expected
                ));
            }
        }

        let sol = weight_space(&g).map_err(|e| format!("weight_space(z1*z2): {e}"))?;
        if sol.kernel_basis.len() != 1 {
            return Err(format!(
                "weight_space(z1*z2): expected a 1-dimensional family, got dimension {}",
                sol.kernel_basis.len()
            ));
        }
        let two = rational(2, 1);
        if sol.canonical_weights != vec![two.clone(), two] {
            return Err(format!(
                "canonical weights {:?} instead of (2, 2)",
                sol.canonical_weights
            ));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let z: Vec<Complex64> = (0..2)
                .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let e = euler_defect(&g, &sol.canonical_weights, &z).map_err(|e| e.to_string())?;
            let r = rescaling_defect(&g, &sol.canonical_weights, &z, c)
                .map_err(|e| e.to_string())?;
            worst = worst.max(e).max(r);
        }
        if worst > 1e-9 {
            return Err(format!(
                "canonical-point identity defect {worst:.3e} exceeds 1e-9"
            ));
        }
        Ok(format!(
            "s = 2/m exact for m ∈ 2..=8; weight_space(z1*z2) 1-dimensional with canonical (2,2); \
             worst identity defect {worst:.3e} over 20 points (bound 1e-9)"
        ))
    })();
    conclude(6, "exact weight certificates", outcome);
}

/// Criterion 7: on every fold point produced by criteria 1–2, the real 2n−2
/// determinant equals (−1)^{n−1}·|det W'HW|² to relative 1e−8, the real
/// characteristic polynomial matches det(t²·I − conj(B)·B) at
/// t ∈ {0, 0.5, 1, 2}, and the eigenvalues pair off as ±λ to absolute 1e−8
/// after scale normalization.
#[test]
fn criterion_7_determinant_and_pairing_identities() {
    let outcome = (|| -> Result<String, String> {
        let tol = Tolerances::default();
        let mut points = 0usize;
        let mut worst_det = 0.0f64;
        let mut worst_char = 0.0f64;
        let mut worst_pair = 0.0f64;

        // Fold points of criterion 1: the m-th-root circles at radius 1.
        let g2 = product_pair();
        for m in [2u32, 3, 5] {
            let f = power_sum(m);
            let cert = require_certificate(&f, &g2);
            for k in 0..m {
                let omega = Complex64::from_polar(1.0, 2.0 * PI * f64::from(k) / f64::from(m));
                for t in 0..7u32 {
                    let theta = 2.0 * PI * f64::from(t) / 7.0;
                    let lambda = Complex64::from_polar(1.0 / 2.0f64.sqrt(), theta);
                    let p = SpherePoint::new(vec![lambda, lambda * omega], 1.0)
                        .map_err(|e| e.to_string())?;
                    let rep = fold_test(&f, &g2, &cert, &p, &tol)
                        .map_err(|e| format!("fold at m={m}, k={k}, t={t}: {e}"))?;
                    if !rep.is_fold {
                        return Err(format!("m={m}, k={k}, t={t}: expected a fold"));
                    }
                    let st = identity_checks(&rep).map_err(|e| e.to_string())?;
                    worst_det = worst_det.max(st.det_identity_rel);
                    worst_char = worst_char.max(st.char_poly_rel);
                    worst_pair = worst_pair.max(st.pairing_abs);
                    points += 1;
                }
            }
        }

        // Fold points of criterion 2: axis points of diagonal quadratic pairs.
        for n in [2usize, 3] {
            let mut rng = ChaCha8Rng::seed_from_u64(7 + n as u64);
            let (c, d) = generic_axis_coefficients(&mut rng, n);
            let f = diagonal_power_sum(&c, 2);
            let g = diagonal_power_sum(&d, 2);
            let cert = require_certificate(&f, &g);
            for u in 0..n {
                for theta in [0.0f64, 1.0, 2.0] {
                    let mut coords = vec![Complex64::new(0.0, 0.0); n];
                    coords[u] = Complex64::from_polar(1.0, theta);
                    let p = SpherePoint::new(coords, 1.0).map_err(|e| e.to_string())?;
                    let rep = fold_test(&f, &g, &cert, &p, &tol)
                        .map_err(|e| format!("fold at n={n}, u={u}, θ={theta}: {e}"))?;
                    if !rep.is_fold {
                        return Err(format!("n={n}, u={u}, θ={theta}: expected a fold"));
                    }
                    let st = identity_checks(&rep).map_err(|e| e.to_string())?;
                    worst_det = worst_det.max(st.det_identity_rel);
                    worst_char = worst_char.max(st.char_poly_rel);
                    worst_pair = worst_pair.max(st.pairing_abs);
                    points += 1;
                }
            }
        }

        if worst_det > 1e-8 || worst_char > 1e-8 || worst_pair > 1e-8 {
            return Err(format!(
                "identity residuals exceed 1e-8 over {points} fold points: \
                 det {worst_det:.3e}, char-poly {worst_char:.3e}, pairing {worst_pair:.3e}"
            ));
        }
        Ok(format!(
            "{points} fold points: det identity {worst_det:.3e}, char-poly {worst_char:.3e}, \
             ± pairing {worst_pair:.3e} (bounds 1e-8)"
        ))
    })();
    conclude(7, "determinant and pairing identities", outcome);
}

/// Criterion 8: analytic cross-checks on the worked examples.
/// (a) log-Hessians match entrywise central finite differences to absolute
///     1e−6;
/// (b) the certified weight vectors satisfy the Euler and rescaling
///     identities to relative 1e−9;
/// (c) singularity verdicts and margins are invariant under the weighted
///     circle action z_j ↦ z_j·e^{2πit/w_j} and under a global phase;
/// (d) the algebraic and numeric singularity criteria agree at 200 random
///     sphere points per certified pair.
#[test]
fn criterion_8_analytic_invariances() {
    let outcome = (|| -> Result<String, String> {
        let tol = Tolerances::default();
        let epsilon = 1.0;

        // The worked example pairs: power-sum/product (m = 3) in two
        // variables and a generic diagonal quadratic pair in two variables.
        let pairs: Vec<(Polynomial, Polynomial, &str)> = {
            let mut rng = ChaCha8Rng::seed_from_u64(8);
            let (c, d) = generic_axis_coefficients(&mut rng, 2);
            vec![
                (power_sum(3), product_pair(), "power-sum/product m=3"),
                (
                    diagonal_power_sum(&c, 2),
                    diagonal_power_sum(&d, 2),
                    "diagonal quadratics n=2",
                ),
            ]
        };

        // (a) Log-Hessian vs central finite differences, step 1e-5.
        let mut worst_fd = 0.0f64;
        let mut rng = ChaCha8Rng::seed_from_u64(81);
        for (f, g, _) in &pairs {
            for poly in [f, g] {
                for _ in 0..3 {
                    let z: Vec<Complex64> = (0..poly.n_vars())
                        .map(|_| {
                            Complex64::new(rng.gen_range(0.4..1.2), rng.gen_range(-0.8..0.8))
                        })
                        .collect();
                    let h = milnor_atlas::poly::log_hessian(poly, &z)
                        .map_err(|e| e.to_string())?;
                    let step = 1e-5;
                    let dlog = |q: &[Complex64], j: usize| -> Result<Complex64, String> {
                        let num = poly
                            .partial(j)
                            .map_err(|e| e.to_string())?
                            .evaluate(q)
                            .map_err(|e| e.to_string())?;
                        let den = poly.evaluate(q).map_err(|e| e.to_string())?;
                        Ok(num / den)
                    };
                    for j in 0..poly.n_vars() {
                        for k in 0..poly.n_vars() {
                            let mut zp = z.clone();
                            let mut zm = z.clone();
                            zp[k] += step;
                            zm[k] -= step;
                            let fd = (dlog(&zp, j)? - dlog(&zm, j)?) / (2.0 * step);
                            worst_fd = worst_fd.max((h.at(j, k) - fd).norm());
                        }
                    }
                }
            }
        }
        if worst_fd > 1e-6 {
            return Err(format!(
                "log-Hessian finite-difference error {worst_fd:.3e} exceeds 1e-6"
            ));
        }

        // (b) Euler and rescaling identities under the certified weights.
        let mut worst_identity = 0.0f64;
        let mut rng = ChaCha8Rng::seed_from_u64(82);
        for (f, g, label) in &pairs {
            let cert = require_certificate(f, g);
            for (j, poly) in [f, g].into_iter().enumerate() {
                let weights = cert.weights_of(j);
                for _ in 0..20 {
                    let z: Vec<Complex64> = (0..poly.n_vars())
                        .map(|_| {
                            Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
                        })
                        .collect();
                    let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    let e = euler_defect(poly, &weights, &z)
                        .map_err(|e| format!("{label}: {e}"))?;
                    let r = rescaling_defect(poly, &weights, &z, c)
                        .map_err(|e| format!("{label}: {e}"))?;
                    worst_identity = worst_identity.max(e).max(r);
                }
            }
        }
        if worst_identity > 1e-9 {
            return Err(format!(
                "Euler/rescaling defect {worst_identity:.3e} exceeds 1e-9"
            ));
        }

        // (c) Circle-action and global-phase invariance of the verdicts.
        let mut worst_margin_shift = 0.0f64;
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        for (f, g, label) in &pairs {
            let cert = require_certificate(f, g);
            let w: Vec<f64> = cert
                .weights_of(0)
                .iter()
                .map(rational_to_f64)
                .collect();
            let spec = MapSpec::new(vec![f.clone(), g.clone()], epsilon)
                .map_err(|e| e.to_string())?;
            let n = f.n_vars();

            // Sample points plus one known singular representative.
            let mut probes: Vec<SpherePoint> =
                (0..5).map(|_| random_sphere_point(&mut rng, n, epsilon)).collect();
            let lambda = Complex64::from_polar(epsilon / 2.0f64.sqrt(), 0.3);
            if *label == "power-sum/product m=3" {
                probes.push(
                    SpherePoint::new(vec![lambda, lambda], epsilon).map_err(|e| e.to_string())?,
                );
            } else {
                let mut coords = vec![Complex64::new(0.0, 0.0); n];
                coords[0] = Complex64::from_polar(epsilon, 0.3);
                probes.push(SpherePoint::new(coords, epsilon).map_err(|e| e.to_string())?);
            }

            for p in &probes {
                let base = is_singular_numeric(&spec, p, &tol).map_err(|e| e.to_string())?;
                let mut transformed: Vec<Vec<Complex64>> = Vec::new();
                for t in 1..=9 {
                    let t = f64::from(t) / 10.0;
                    transformed.push(
                        p.coords()
                            .iter()
                            .zip(&w)
                            .map(|(z, wj)| z * Complex64::from_polar(1.0, 2.0 * PI * t / wj))
                            .collect(),
                    );
                }
                for theta in [0.7f64, 2.1] {
                    let phase = Complex64::from_polar(1.0, theta);
                    transformed.push(p.coords().iter().map(|z| z * phase).collect());
                }
                for coords in transformed {
                    let q = SpherePoint::project(coords, epsilon).map_err(|e| e.to_string())?;
                    let moved =
                        is_singular_numeric(&spec, &q, &tol).map_err(|e| e.to_string())?;
                    if moved.numeric_singular != base.numeric_singular {
                        return Err(format!(
                            "{label}: verdict changed under a verdict-preserving symmetry"
                        ));
                    }
                    worst_margin_shift = worst_margin_shift
                        .max((moved.numeric_margin - base.numeric_margin).abs());
                }
            }
        }
        if worst_margin_shift > 1e-9 {
            return Err(format!(
                "margin drift {worst_margin_shift:.3e} under symmetries exceeds 1e-9"
            ));
        }

        // (d) Algebraic ⇔ numeric agreement at 200 random points per pair.
        let mut rng = ChaCha8Rng::seed_from_u64(84);
        let mut agreements = 0usize;
        for (f, g, label) in &pairs {
            let cert = require_certificate(f, g);
            let spec = MapSpec::new(vec![f.clone(), g.clone()], epsilon)
                .map_err(|e| e.to_string())?;
            for _ in 0..200 {
                let p = random_sphere_point(&mut rng, f.n_vars(), epsilon);
                let numeric = is_singular_numeric(&spec, &p, &tol).map_err(|e| e.to_string())?;
                let algebraic =
                    is_singular_algebraic(f, g, &cert, &p, &tol).map_err(|e| e.to_string())?;
                let alg_singular = algebraic.algebraic_verdict == AlgebraicVerdict::Singular;
                if numeric.numeric_singular != alg_singular {
                    return Err(format!(
                        "{label}: criteria disagree at a random point \
                         (margin {:.3e}, residual {:?})",
                        numeric.numeric_margin, algebraic.algebraic_residual
                    ));
                }
                agreements += 1;
            }
        }

        Ok(format!(
            "finite differences {worst_fd:.3e} (bound 1e-6); Euler/rescaling \
             {worst_identity:.3e} (bound 1e-9); margin drift {worst_margin_shift:.3e} under \
             circle action and phase (bound 1e-9); criteria agree at {agreements} random points"
        ))
    })();
    conclude(8, "analytic invariances", outcome);
}
