//! Randomized invariants of the public API. Each property states something
//! that must hold for *every* admissible input, not just the worked examples:
//! torus values have unit modulus, certified weight systems satisfy the
//! Euler/rescaling identities, singularity verdicts are invariant under the
//! weighted circle action and global phases, the two singularity criteria
//! agree wherever both apply, and fold eigenvalues pair off as ±λ.

use std::f64::consts::PI;

use milnor_atlas::exact::rational_to_f64;
use milnor_atlas::weights::{euler_defect, rescaling_defect};
use milnor_atlas::{
    common_weights, dependence_margin, fold_test, is_singular_algebraic, is_singular_numeric,
    parse_polynomial_in, phi, AlgebraicVerdict, MapSpec, Polynomial, SpherePoint, Tolerances,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn power_sum(m: u32) -> Polynomial {
    parse_polynomial_in(&format!("z1^{m} + z2^{m}"), 2).expect("power sum parses")
}

fn product_pair() -> Polynomial {
    parse_polynomial_in("z1*z2", 2).expect("product parses")
}

/// A point on S_ε from four raw reals (rejecting the measure-zero origin).
fn sphere_point(raw: [f64; 4], epsilon: f64) -> Option<SpherePoint> {
    let coords = vec![
        Complex64::new(raw[0], raw[1]),
        Complex64::new(raw[2], raw[3]),
    ];
    SpherePoint::from_direction(coords, epsilon).ok()
}

fn coordinate() -> impl Strategy<Value = f64> {
    prop_oneof![-3.0..3.0f64, -0.2..0.2f64]
}

proptest! {
    /// Φ maps into the torus: every component has unit modulus wherever the
    /// map is defined.
    #[test]
    fn phi_values_have_unit_modulus(
        m in 2u32..6,
        raw in [coordinate(), coordinate(), coordinate(), coordinate()],
    ) {
        let spec = MapSpec::new(vec![power_sum(m), product_pair()], 1.0).unwrap();
        let Some(p) = sphere_point(raw, 1.0) else { return Ok(()) };
        // Points on a link have no torus value; erring there is the contract.
        if let Ok(values) = phi(&spec, &p) {
            for v in values {
                prop_assert!((v.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    /// A common-weight certificate guarantees the Euler and rescaling
    /// identities for every component, at every point, for every scale.
    #[test]
    fn certificates_guarantee_euler_and_rescaling(
        m in 2u32..7,
        zre in proptest::array::uniform4(-2.0..2.0f64),
        cre in -1.0..1.0f64,
        cim in -1.0..1.0f64,
    ) {
        let f = power_sum(m);
        let g = product_pair();
        let cert = common_weights(&f, &g).unwrap().expect("certificate exists");
        let z = vec![
            Complex64::new(zre[0], zre[1]),
            Complex64::new(zre[2], zre[3]),
        ];
        let c = Complex64::new(cre, cim);
        for (j, poly) in [&f, &g].into_iter().enumerate() {
            let w = cert.weights_of(j);
            prop_assert!(euler_defect(poly, &w, &z).unwrap() <= 1e-9);
            prop_assert!(rescaling_defect(poly, &w, &z, c).unwrap() <= 1e-9);
        }
    }

    /// The dependence margin is invariant under the weighted circle action
    /// z_j ↦ z_j·e^{2πit/w_j} and under a global phase, and so is the
    /// singularity verdict.
    #[test]
    fn circle_action_and_phase_preserve_the_verdict(
        m in 2u32..6,
        raw in [coordinate(), coordinate(), coordinate(), coordinate()],
        t in 0.01..0.99f64,
        theta in 0.0..(2.0 * PI),
    ) {
        let f = power_sum(m);
        let g = product_pair();
        let cert = common_weights(&f, &g).unwrap().expect("certificate exists");
        let w: Vec<f64> = cert.weights_of(0).iter().map(rational_to_f64).collect();
        let spec = MapSpec::new(vec![f, g], 1.0).unwrap();
        let tol = Tolerances::default();
        let Some(p) = sphere_point(raw, 1.0) else { return Ok(()) };
        let Ok(base) = is_singular_numeric(&spec, &p, &tol) else { return Ok(()) };

        let orbit: Vec<Complex64> = p
            .coords()
            .iter()
            .zip(&w)
            .map(|(z, wj)| z * Complex64::from_polar(1.0, 2.0 * PI * t / wj))
            .collect();
        let phased: Vec<Complex64> = p
            .coords()
            .iter()
            .map(|z| z * Complex64::from_polar(1.0, theta))
            .collect();
        for coords in [orbit, phased] {
            let q = SpherePoint::project(coords, 1.0).unwrap();
            let moved = is_singular_numeric(&spec, &q, &tol).unwrap();
            prop_assert_eq!(moved.numeric_singular, base.numeric_singular);
            prop_assert!((moved.numeric_margin - base.numeric_margin).abs() <= 1e-9);
        }
    }

    /// Wherever a certificate makes the algebraic minor criterion available,
    /// it agrees with the numeric rank criterion.
    #[test]
    fn algebraic_and_numeric_criteria_agree(
        m in 2u32..6,
        raw in [coordinate(), coordinate(), coordinate(), coordinate()],
    ) {
        let f = power_sum(m);
        let g = product_pair();
        let cert = common_weights(&f, &g).unwrap().expect("certificate exists");
        let spec = MapSpec::new(vec![f.clone(), g.clone()], 1.0).unwrap();
        let tol = Tolerances::default();
        let Some(p) = sphere_point(raw, 1.0) else { return Ok(()) };
        let (Ok(numeric), Ok(algebraic)) = (
            is_singular_numeric(&spec, &p, &tol),
            is_singular_algebraic(&f, &g, &cert, &p, &tol),
        ) else { return Ok(()) };
        prop_assert_eq!(
            numeric.numeric_singular,
            algebraic.algebraic_verdict == AlgebraicVerdict::Singular
        );
    }

    /// The known singular circles stay singular at every phase pair, and the
    /// fold data there is phase-independent: index 1 and |det W'HW| = 2m.
    #[test]
    fn fold_data_is_constant_along_singular_circles(
        m in 2u32..6,
        k in 0u32..6,
        theta in 0.0..(2.0 * PI),
    ) {
        let k = k % m;
        let f = power_sum(m);
        let g = product_pair();
        let cert = common_weights(&f, &g).unwrap().expect("certificate exists");
        let tol = Tolerances::default();
        let omega = Complex64::from_polar(1.0, 2.0 * PI * f64::from(k) / f64::from(m));
        let lambda = Complex64::from_polar(1.0 / 2.0f64.sqrt(), theta);
        let p = SpherePoint::new(vec![lambda, lambda * omega], 1.0).unwrap();

        let rep = fold_test(&f, &g, &cert, &p, &tol).unwrap();
        prop_assert!(rep.is_fold);
        prop_assert_eq!(rep.index, Some(1));
        let det = rep.det_complex.expect("complex determinant on a fold");
        let target = 2.0 * f64::from(m);
        prop_assert!((det.norm() - target).abs() <= target * 1e-8);

        // Eigenvalues pair off as ±λ.
        let mut eig = rep.eigenvalues.clone();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let dim = eig.len();
        let scale = eig.iter().fold(1.0f64, |acc, e| acc.max(e.abs()));
        for i in 0..dim / 2 {
            prop_assert!((eig[i] + eig[dim - 1 - i]).abs() <= 1e-8 * scale);
        }
    }

    /// Margins are scale-free: the same direction at radius 0.1 and 1.0
    /// yields the same dependence margin for homogeneous components.
    #[test]
    fn margins_are_radius_invariant_for_homogeneous_maps(
        m in 2u32..6,
        raw in [coordinate(), coordinate(), coordinate(), coordinate()],
    ) {
        let Some(p_unit) = sphere_point(raw, 1.0) else { return Ok(()) };
        let coords_small: Vec<Complex64> =
            p_unit.coords().iter().map(|z| z * 0.1).collect();
        let spec_unit = MapSpec::new(vec![power_sum(m), product_pair()], 1.0).unwrap();
        let spec_small = MapSpec::new(vec![power_sum(m), product_pair()], 0.1).unwrap();
        let (Ok(a), Ok(b)) = (
            dependence_margin(&spec_unit, p_unit.coords()),
            dependence_margin(&spec_small, &coords_small),
        ) else { return Ok(()) };
        prop_assert!((a - b).abs() <= 1e-9);
    }

    /// Sphere constructors enforce the radius contract: drift below the
    /// relative re-projection window is absorbed, drift far above it is
    /// rejected.
    #[test]
    fn projection_window_is_enforced(
        raw in [coordinate(), coordinate(), coordinate(), coordinate()],
        small in 1e-9..5e-7f64,
        large in 1e-4..1e-2f64,
        epsilon in prop_oneof![Just(0.1f64), Just(1.0f64), Just(2.5f64)],
    ) {
        let Some(p) = sphere_point(raw, epsilon) else { return Ok(()) };
        let drifted = |factor: f64| -> Vec<Complex64> {
            p.coords().iter().map(|z| z * factor).collect()
        };
        let absorbed = SpherePoint::project(drifted(1.0 + small), epsilon).unwrap();
        prop_assert!((absorbed.radius() - epsilon).abs() <= 1e-12 * epsilon);
        prop_assert!(SpherePoint::project(drifted(1.0 + large), epsilon).is_err());
    }
}
