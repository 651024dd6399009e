//! Singularity analysis of the torus-valued product map
//! Φ(z) = (f₁(z)/|f₁(z)|, …, f_m(z)/|f_m(z)|) restricted to a sphere:
//! pointwise rank tests, the minor criterion for weighted-homogeneous pairs,
//! exact circle enumeration for 2-variable homogeneous pairs, and a
//! multi-start descent search for singular points.

use crate::error::{Error, Result};
use crate::linalg::{
    embed_real, hermitian, real_norm, real_orthocomplement, singular_values,
    smallest_singular_value, unembed_real, vec_norm, CMatrix,
};
use crate::poly::Polynomial;
use crate::roots::polynomial_roots;
use crate::weights::{common_weights_multi, weight_space, CommonWeightCertificate};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Comparison thresholds for the floating-point verdicts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// A column-normalized matrix is rank-deficient iff its smallest singular
    /// value is ≤ this.
    pub rank: f64,
    /// Scale factor of the fold determinant threshold.
    pub fold: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: 1e-8,
            fold: 1e-8,
        }
    }
}

/// A point p ∈ ℂⁿ with ‖p‖ = ε.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    coords: Vec<Complex64>,
    radius: f64,
}

impl SpherePoint {
    /// Accepts coordinates whose norm matches the radius to 1e−9 relative.
    pub fn new(coords: Vec<Complex64>, radius: f64) -> Result<Self> {
        check_radius(radius)?;
        let norm = vec_norm(&coords);
        if (norm - radius).abs() > 1e-9 * radius {
            return Err(Error::OffSphere { norm, radius });
        }
        Ok(Self { coords, radius })
    }

    /// Absorbs up to 1e−6 relative deviation (decimal truncation of inputs
    /// like 1/√2) by rescaling onto the sphere; errors beyond that.
    pub fn project(coords: Vec<Complex64>, radius: f64) -> Result<Self> {
        check_radius(radius)?;
        let norm = vec_norm(&coords);
        if (norm - radius).abs() >= 1e-6 * radius {
            return Err(Error::OffSphere { norm, radius });
        }
        Ok(Self::rescaled(coords, norm, radius))
    }

    /// Scales an arbitrary nonzero vector onto the sphere of the given radius.
    pub fn from_direction(direction: Vec<Complex64>, radius: f64) -> Result<Self> {
        check_radius(radius)?;
        let norm = vec_norm(&direction);
        if norm <= 1e-300 {
            return Err(Error::ZeroVector);
        }
        Ok(Self::rescaled(direction, norm, radius))
    }

    fn rescaled(mut coords: Vec<Complex64>, norm: f64, radius: f64) -> Self {
        let scale = radius / norm;
        for c in coords.iter_mut() {
            *c *= scale;
        }
        Self { coords, radius }
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }
}

pub(crate) fn check_radius(radius: f64) -> Result<()> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "sphere radius must be positive and finite, got {radius}"
        )));
    }
    Ok(())
}

/// The product map: m polynomial components on the sphere of radius ε.
#[derive(Debug, Clone)]
pub struct MapSpec {
    polys: Vec<Polynomial>,
    grads: Vec<Vec<Polynomial>>,
    epsilon: f64,
}

impl MapSpec {
    /// Validates 1 ≤ m ≤ 2n−1, a common variable count, vanishing at the
    /// origin, and a positive radius; caches all partial derivatives.
    pub fn new(polys: Vec<Polynomial>, epsilon: f64) -> Result<Self> {
        check_radius(epsilon)?;
        if polys.is_empty() {
            return Err(Error::InvalidInput(
                "the map needs at least one component".into(),
            ));
        }
        let n = polys[0].n_vars();
        for f in &polys {
            if f.n_vars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: f.n_vars(),
                });
            }
            if f.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if f.has_constant_term() {
                return Err(Error::ConstantTermPresent);
            }
        }
        if polys.len() > 2 * n - 1 {
            return Err(Error::InvalidInput(format!(
                "{} components exceed the limit 2n−1 = {} for n = {n}",
                polys.len(),
                2 * n - 1
            )));
        }
        let grads = polys.iter().map(|f| f.gradient()).collect();
        Ok(Self {
            polys,
            grads,
            epsilon,
        })
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn m(&self) -> usize {
        self.polys.len()
    }

    pub fn n_vars(&self) -> usize {
        self.polys[0].n_vars()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    fn check_point(&self, p: &SpherePoint) -> Result<()> {
        if p.n() != self.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars(),
                got: p.n(),
            });
        }
        if (p.radius() - self.epsilon).abs() > 1e-12 * self.epsilon {
            return Err(Error::OffSphere {
                norm: p.radius(),
                radius: self.epsilon,
            });
        }
        Ok(())
    }

    /// Component values f_j(p); PointOnLink (1-based component index) when
    /// any |f_j(p)| falls below its zero-set tolerance.
    pub fn values_off_links(&self, coords: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut values = Vec::with_capacity(self.m());
        for (j, f) in self.polys.iter().enumerate() {
            let v = f.evaluate(coords)?;
            if v.norm() <= f.zero_set_tolerance(coords) {
                return Err(Error::PointOnLink {
                    index: j + 1,
                    magnitude: v.norm(),
                });
            }
            values.push(v);
        }
        Ok(values)
    }

    /// All logarithmic gradients conj(∂f_j/∂z_k(p) / f_j(p)), using the
    /// cached derivative polynomials.
    pub fn log_gradients_at(&self, coords: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
        let values = self.values_off_links(coords)?;
        let mut out = Vec::with_capacity(self.m());
        for (grads, v) in self.grads.iter().zip(&values) {
            let mut glf = Vec::with_capacity(coords.len());
            for d in grads {
                glf.push((d.evaluate(coords)? / v).conj());
            }
            out.push(glf);
        }
        Ok(out)
    }
}

/// Torus value of the map: (f_j(p)/|f_j(p)|)_j, each of unit modulus.
pub fn phi(spec: &MapSpec, p: &SpherePoint) -> Result<Vec<Complex64>> {
    spec.check_point(p)?;
    let values = spec.values_off_links(p.coords())?;
    let torus: Vec<Complex64> = values.iter().map(|v| v / v.norm()).collect();
    for t in &torus {
        debug_assert!((t.norm() - 1.0).abs() < 1e-12);
    }
    Ok(torus)
}

/// Unit-normalized real 2n-column for a complex vector; zero vectors are kept
/// as zero columns (they make any set dependent, which is the right verdict).
fn unit_real_column(v: &[Complex64]) -> Vec<Complex64> {
    let embedded = embed_real(v);
    let norm = real_norm(&embedded);
    let scale = if norm > 1e-300 { 1.0 / norm } else { 0.0 };
    embedded
        .iter()
        .map(|&x| Complex64::new(x * scale, 0.0))
        .collect()
}

/// Smallest singular value of the 2n × (m+1) matrix with unit columns
/// p, i·grad log f₁(p), …, i·grad log f_m(p) over ℝ^{2n}.
pub fn dependence_margin(spec: &MapSpec, coords: &[Complex64]) -> Result<f64> {
    let glfs = spec.log_gradients_at(coords)?;
    let i = Complex64::new(0.0, 1.0);
    let mut columns = vec![unit_real_column(coords)];
    for glf in &glfs {
        let rotated: Vec<Complex64> = glf.iter().map(|&z| i * z).collect();
        columns.push(unit_real_column(&rotated));
    }
    Ok(smallest_singular_value(&CMatrix::from_columns(&columns)?))
}

/// Rank of the differential dΦ_p as the m × (2n−1) real matrix
/// [Re⟨v_k, i·grad log f_j(p)⟩] over an orthonormal real basis v_k of the
/// sphere's tangent space; singular values ≤ the rank tolerance count as zero.
pub fn differential_rank(spec: &MapSpec, p: &SpherePoint, tol: &Tolerances) -> Result<usize> {
    spec.check_point(p)?;
    let glfs = spec.log_gradients_at(p.coords())?;
    let i = Complex64::new(0.0, 1.0);
    let tangent = real_orthocomplement(&[p.coords().to_vec()])?;
    let mut rows = Vec::with_capacity(spec.m());
    for glf in &glfs {
        let rotated: Vec<Complex64> = glf.iter().map(|&z| i * z).collect();
        let norm = vec_norm(&rotated);
        let scale = if norm > 1e-300 { 1.0 / norm } else { 0.0 };
        let mut row = Vec::with_capacity(tangent.len());
        for v in &tangent {
            let re = hermitian(v, &rotated)?.re * scale;
            row.push(Complex64::new(re, 0.0));
        }
        rows.push(row);
    }
    let matrix = CMatrix::from_rows(&rows)?;
    Ok(singular_values(&matrix)
        .into_iter()
        .filter(|&s| s > tol.rank)
        .count())
}

/// Three-valued outcome of the minor criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraicVerdict {
    Singular,
    Regular,
    NotApplicable,
}

/// Outcome of the singularity tests at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityReport {
    pub point: SpherePoint,
    /// Smallest singular value of the unit-column real dependence matrix.
    pub numeric_margin: f64,
    /// True iff numeric_margin ≤ rank tolerance.
    pub numeric_singular: bool,
    /// max |minor| / (‖grad f‖·‖grad g‖ + 1e−30); present only when a common
    /// weight certificate backs the minor criterion.
    pub algebraic_residual: Option<f64>,
    pub algebraic_verdict: AlgebraicVerdict,
}

/// Rank criterion: p is singular iff {p, i·grad log f₁(p), …} is linearly
/// dependent over ℝ, measured by the dependence-matrix margin. The verdict is
/// cross-checked against differential_rank away from the threshold band.
pub fn is_singular_numeric(
    spec: &MapSpec,
    p: &SpherePoint,
    tol: &Tolerances,
) -> Result<SingularityReport> {
    spec.check_point(p)?;
    let margin = dependence_margin(spec, p.coords())?;
    let singular = margin <= tol.rank;
    let rank = differential_rank(spec, p, tol)?;
    let rank_says_singular = rank < spec.m();
    if rank_says_singular != singular && (margin < tol.rank / 10.0 || margin > tol.rank * 10.0) {
        return Err(Error::Numerical(format!(
            "rank test (rank {rank} of {}) contradicts the dependence margin {margin:.3e}",
            spec.m()
        )));
    }
    Ok(SingularityReport {
        point: p.clone(),
        numeric_margin: margin,
        numeric_singular: singular,
        algebraic_residual: None,
        algebraic_verdict: AlgebraicVerdict::NotApplicable,
    })
}

/// Minor criterion for a pair sharing weights: p is singular iff every 2×2
/// minor ∂f/∂z_j·∂g/∂z_k − ∂f/∂z_k·∂g/∂z_j vanishes at p. Fills the numeric
/// side of the report as well.
pub fn is_singular_algebraic(
    f: &Polynomial,
    g: &Polynomial,
    cert: &CommonWeightCertificate,
    p: &SpherePoint,
    tol: &Tolerances,
) -> Result<SingularityReport> {
    if !cert.verify(&[f, g])? {
        return Err(Error::CertificateRequired);
    }
    let spec = MapSpec::new(vec![f.clone(), g.clone()], p.radius())?;
    spec.check_point(p)?;
    spec.values_off_links(p.coords())?;
    let coords = p.coords();
    let n = spec.n_vars();
    let df: Vec<Complex64> = f
        .gradient()
        .iter()
        .map(|d| d.evaluate(coords))
        .collect::<Result<_>>()?;
    let dg: Vec<Complex64> = g
        .gradient()
        .iter()
        .map(|d| d.evaluate(coords))
        .collect::<Result<_>>()?;
    let mut max_minor = 0.0f64;
    for j in 0..n {
        for k in (j + 1)..n {
            let minor = df[j] * dg[k] - df[k] * dg[j];
            max_minor = max_minor.max(minor.norm());
        }
    }
    let residual = max_minor / (vec_norm(&df) * vec_norm(&dg) + 1e-30);
    let mut report = is_singular_numeric(&spec, p, tol)?;
    report.algebraic_residual = Some(residual);
    report.algebraic_verdict = if residual <= tol.rank {
        AlgebraicVerdict::Singular
    } else {
        AlgebraicVerdict::Regular
    };
    Ok(report)
}

/// Linear dependence over ℂ of a family of vectors: smallest singular value
/// of the unit-column complex matrix, compared against the rank tolerance.
pub fn complex_dependence(
    vectors: &[Vec<Complex64>],
    tol: &Tolerances,
) -> Result<(bool, f64)> {
    let Some(first) = vectors.first() else {
        return Err(Error::InvalidInput(
            "dependence test needs at least one vector".into(),
        ));
    };
    let n = first.len();
    let mut columns = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let norm = vec_norm(v);
        let scale = if norm > 1e-300 { 1.0 / norm } else { 0.0 };
        columns.push(v.iter().map(|&z| z * scale).collect::<Vec<_>>());
    }
    let margin = smallest_singular_value(&CMatrix::from_columns(&columns)?);
    Ok((margin <= tol.rank, margin))
}

/// Singular circles of a 2-variable homogeneous pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleFamily {
    /// Unit direction vectors d̂ ∈ ℂ², one per circle {ε·e^{iθ}·d̂}, phase-
    /// normalized (first nonzero coordinate real positive) and sorted.
    pub directions: Vec<Vec<Complex64>>,
    pub radius: f64,
    pub count: usize,
    /// deg f + deg g − 2.
    pub bound: usize,
    /// True when the Jacobian determinant vanishes identically: every point
    /// off the links is singular.
    pub degenerate_all_singular: bool,
}

/// Rotate by a unit scalar so the first coordinate above the threshold is
/// real positive; identity for (numerically) zero vectors.
pub(crate) fn phase_normalize(v: &[Complex64], scale: f64) -> Vec<Complex64> {
    match v.iter().find(|c| c.norm() > 1e-12 * scale) {
        Some(c) => {
            let lambda = c.conj() / c.norm();
            v.iter().map(|z| z * lambda).collect()
        }
        None => v.to_vec(),
    }
}

/// Projective (phase-independent) distance sqrt(1 − |⟨û, v̂⟩|²) of two
/// nonzero vectors.
fn chordal_distance(u: &[Complex64], v: &[Complex64]) -> f64 {
    let nu = vec_norm(u);
    let nv = vec_norm(v);
    if nu <= 1e-300 || nv <= 1e-300 {
        return 1.0;
    }
    let inner = hermitian(u, v).expect("equal lengths").norm() / (nu * nv);
    (1.0 - (inner * inner).min(1.0)).max(0.0).sqrt()
}

/// Enumerates the singular circles of Φ for homogeneous f, g in two
/// variables: the projective roots of R = ∂₁f·∂₂g − ∂₂f·∂₁g, minus those on
/// the links of f or g.
pub fn homogeneous_2var_circles(
    f: &Polynomial,
    g: &Polynomial,
    epsilon: f64,
) -> Result<CircleFamily> {
    check_radius(epsilon)?;
    for h in [f, g] {
        if h.n_vars() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: h.n_vars(),
            });
        }
        if h.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !h.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }
    let bound = (f.total_degree() + g.total_degree()).saturating_sub(2) as usize;
    let r = &(&f.partial(0)? * &g.partial(1)?) - &(&f.partial(1)? * &g.partial(0)?);
    if r.is_zero() {
        return Ok(CircleFamily {
            directions: Vec::new(),
            radius: epsilon,
            count: 0,
            bound,
            degenerate_all_singular: true,
        });
    }
    debug_assert!(r.is_homogeneous());
    let deg_r = r.total_degree();
    // Dehomogenize: the coefficient of t^k in R(1, t) is that of z₁^{d−k}z₂^k.
    let mut coeffs = vec![Complex64::new(0.0, 0.0); deg_r as usize + 1];
    for (expo, c) in r.iter() {
        coeffs[expo[1] as usize] = c.to_c64();
    }
    let deg_t = coeffs
        .iter()
        .rposition(|c| c.norm() > 0.0)
        .expect("nonzero dehomogenization");
    let mut raw_directions: Vec<Vec<Complex64>> = polynomial_roots(&coeffs)?
        .into_iter()
        .map(|t| {
            let norm = (1.0 + t.norm_sqr()).sqrt();
            vec![Complex64::new(1.0 / norm, 0.0), t / norm]
        })
        .collect();
    if (deg_t as u32) < deg_r {
        // The missing top coefficients are the factor z₁^{deg R − deg_t}.
        raw_directions.push(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    }
    // Directions on a link carry no fibration point: drop them.
    let scale_f: f64 = f.iter().map(|(_, c)| c.to_c64().norm()).sum();
    let scale_g: f64 = g.iter().map(|(_, c)| c.to_c64().norm()).sum();
    raw_directions.retain(|d| {
        let fv = f.evaluate(d).expect("dimension checked").norm();
        let gv = g.evaluate(d).expect("dimension checked").norm();
        fv > 1e-8 * scale_f && gv > 1e-8 * scale_g
    });
    let mut directions: Vec<Vec<Complex64>> = Vec::new();
    for d in raw_directions {
        if directions
            .iter()
            .all(|kept| chordal_distance(kept, &d) > 1e-7)
        {
            directions.push(d);
        }
    }
    let mut directions: Vec<Vec<Complex64>> = directions
        .iter()
        .map(|d| phase_normalize(d, 1.0))
        .collect();
    directions.sort_by(|a, b| {
        let key = |v: &[Complex64]| [v[0].re, v[0].im, v[1].re, v[1].im];
        key(a).partial_cmp(&key(b)).expect("finite directions")
    });
    let count = directions.len();
    assert!(
        count <= bound,
        "found {count} circles, above the degree bound {bound}"
    );
    Ok(CircleFamily {
        directions,
        radius: epsilon,
        count,
        bound,
        degenerate_all_singular: false,
    })
}

const GOLDEN_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

fn sample_sphere(rng: &mut ChaCha8Rng, n: usize, epsilon: f64) -> Vec<Complex64> {
    loop {
        let raw: Vec<f64> = (0..2 * n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = real_norm(&raw);
        if norm > 1e-6 {
            let scaled: Vec<f64> = raw.iter().map(|x| x * epsilon / norm).collect();
            return unembed_real(&scaled);
        }
    }
}

/// One restart of the projected descent; returns the final point and margin.
fn descend(
    spec: &MapSpec,
    rng: &mut ChaCha8Rng,
    iterations: usize,
) -> (Vec<Complex64>, f64) {
    let n = spec.n_vars();
    let epsilon = spec.epsilon();
    let margin_at = |coords: &[Complex64]| -> Option<f64> {
        dependence_margin(spec, coords).ok()
    };
    // Resample until the start is off the links (almost surely immediate).
    let mut point = sample_sphere(rng, n, epsilon);
    let mut margin = margin_at(&point);
    for _ in 0..100 {
        if margin.is_some() {
            break;
        }
        point = sample_sphere(rng, n, epsilon);
        margin = margin_at(&point);
    }
    let Some(mut margin) = margin else {
        return (point, f64::INFINITY);
    };
    let project = |x: &[f64]| -> Vec<Complex64> {
        let norm = real_norm(x);
        let scaled: Vec<f64> = x.iter().map(|v| v * epsilon / norm).collect();
        unembed_real(&scaled)
    };
    let mut eta = 0.1 * epsilon;
    for _ in 0..iterations {
        let x = embed_real(&point);
        let h = (0.1 * margin * epsilon).clamp(1e-9 * epsilon, 1e-5 * epsilon);
        // Central differences of margin ∘ project in the ambient chart.
        let mut grad = vec![0.0; 2 * n];
        for k in 0..2 * n {
            let mut plus = x.clone();
            plus[k] += h;
            let mut minus = x.clone();
            minus[k] -= h;
            match (margin_at(&project(&plus)), margin_at(&project(&minus))) {
                (Some(a), Some(b)) => grad[k] = (a - b) / (2.0 * h),
                _ => grad[k] = 0.0,
            }
        }
        // Tangential part: remove the radial component.
        let radial: f64 = grad.iter().zip(&x).map(|(g, xi)| g * xi).sum::<f64>()
            / (epsilon * epsilon);
        let tangent: Vec<f64> = grad
            .iter()
            .zip(&x)
            .map(|(g, xi)| g - radial * xi)
            .collect();
        let tnorm = real_norm(&tangent);
        if tnorm <= 1e-300 {
            break;
        }
        let direction: Vec<f64> = tangent.iter().map(|t| t / tnorm).collect();
        let mut improved = false;
        while eta > 1e-15 * epsilon {
            let candidate_x: Vec<f64> = x
                .iter()
                .zip(&direction)
                .map(|(xi, d)| xi - eta * d)
                .collect();
            let candidate = project(&candidate_x);
            if let Some(next) = margin_at(&candidate) {
                if next < margin {
                    point = candidate;
                    margin = next;
                    eta = (eta * 1.3).min(epsilon);
                    improved = true;
                    break;
                }
            }
            eta *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (point, margin)
}

/// Multi-start projected descent on the dependence margin over S_ε. Returns
/// every local minimum with margin ≤ 10× the rank tolerance, deduplicated up
/// to the circle action when a common weight certificate exists, sorted by
/// (margin, lexicographic point order). Restarts run in parallel; the result
/// is independent of scheduling.
pub fn sphere_search(
    spec: &MapSpec,
    restarts: usize,
    iterations: usize,
    seed: u64,
    tol: &Tolerances,
) -> Vec<SingularityReport> {
    assert!(restarts >= 1 && iterations >= 1);
    let outcomes: Vec<(Vec<Complex64>, f64)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed.wrapping_add((r as u64 + 1).wrapping_mul(GOLDEN_STRIDE)),
            );
            descend(spec, &mut rng, iterations)
        })
        .collect();
    let mut hits: Vec<SingularityReport> = outcomes
        .into_iter()
        .filter(|(_, margin)| *margin <= 10.0 * tol.rank)
        .filter_map(|(coords, _)| {
            let p = SpherePoint::from_direction(coords, spec.epsilon()).ok()?;
            is_singular_numeric(spec, &p, tol).ok()
        })
        .collect();
    hits.sort_by(|a, b| {
        let ka = (a.numeric_margin, point_key(&a.point));
        let kb = (b.numeric_margin, point_key(&b.point));
        ka.partial_cmp(&kb).expect("finite reports")
    });
    if has_weight_certificate(spec) {
        let mut kept: Vec<SingularityReport> = Vec::new();
        for hit in hits {
            let candidate = phase_normalize(hit.point.coords(), spec.epsilon());
            let dup = kept.iter().any(|k| {
                let existing = phase_normalize(k.point.coords(), spec.epsilon());
                chordal_distance(&existing, &candidate) < 1e-4
            });
            if !dup {
                kept.push(hit);
            }
        }
        hits = kept;
    }
    hits
}

fn point_key(p: &SpherePoint) -> Vec<f64> {
    embed_real(p.coords())
}

fn has_weight_certificate(spec: &MapSpec) -> bool {
    if spec.m() >= 2 {
        matches!(common_weights_multi(spec.components()), Ok(Some(_)))
    } else {
        weight_space(&spec.components()[0]).is_ok()
    }
}
