//! Command-line front end: weighted-homogeneity certificates, singularity
//! tests, fold classification, and named verification suites, with optional
//! deterministic JSON reports.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use milnor_atlas::error::{Error, Result};
use milnor_atlas::exact::rational_to_string;
use milnor_atlas::fold::fold_test;
use milnor_atlas::parse::{parse_point, parse_polynomial};
use milnor_atlas::poly::Polynomial;
use milnor_atlas::report::{
    certificate_value, circle_family_value, float_value, fold_value, singularity_value,
    weight_solution_value, ReportDocument,
};
use milnor_atlas::singular::{
    homogeneous_2var_circles, is_singular_algebraic, is_singular_numeric, sphere_search, MapSpec,
    SpherePoint, Tolerances,
};
use milnor_atlas::suites::{run_suite, SuiteOptions, SuiteReport};
use milnor_atlas::weights::{common_weights_multi, weight_space};

#[derive(Parser)]
#[command(
    name = "milnor",
    version,
    about = "Singular-point analysis for products of Milnor fibration maps"
)]
struct Cli {
    /// Emit one line of machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact weight systems for each polynomial and a common-weight
    /// certificate for the tuple.
    Weights(WeightsArgs),
    /// Singularity tests: at a given point, by multistart search, or by
    /// exact circle enumeration for two-variable homogeneous pairs.
    Singular(SingularArgs),
    /// Fold classification of a pair map at a singular point.
    Fold(FoldArgs),
    /// Run a named verification suite (prop33, prop41, prop42, prop43,
    /// prop52, prop53).
    Verify(VerifyArgs),
}

#[derive(Args)]
struct WeightsArgs {
    /// Polynomial expressions, e.g. "z1^3 + z2^3" "z1*z2".
    #[arg(required = true)]
    polynomials: Vec<String>,
}

#[derive(Args)]
#[command(group(
    clap::ArgGroup::new("mode")
        .required(true)
        .args(["point", "scan", "circles"]),
))]
struct SingularArgs {
    /// Polynomial expressions defining the map components.
    #[arg(required = true)]
    polynomials: Vec<String>,

    /// Sphere radius.
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,

    /// Test one point, given as comma-separated complex literals
    /// ("0.7071+0i,0.7071+0i"); it is re-projected onto the sphere when the
    /// norm deviates by less than a relative 1e-6.
    #[arg(long)]
    point: Option<String>,

    /// Search the sphere for singular points with multistart descent.
    #[arg(long)]
    scan: bool,

    /// Enumerate the singular circles of a two-variable homogeneous pair.
    #[arg(long)]
    circles: bool,

    /// Seed for the multistart search.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of independent descent restarts.
    #[arg(long, default_value_t = 64)]
    restarts: usize,

    /// Iteration budget per restart.
    #[arg(long, default_value_t = 300)]
    iterations: usize,

    /// Rank-decision tolerance on the dependence margin.
    #[arg(long = "tolerance-rank")]
    tolerance_rank: Option<f64>,

    /// Scale factor of the fold determinant threshold.
    #[arg(long = "tolerance-fold")]
    tolerance_fold: Option<f64>,
}

#[derive(Args)]
struct FoldArgs {
    /// Exactly two polynomial expressions (the pair f, g).
    #[arg(required = true, num_args = 2)]
    polynomials: Vec<String>,

    /// Sphere radius.
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,

    /// The singular point to classify, as comma-separated complex literals.
    #[arg(long, required = true)]
    point: String,

    /// Rank-decision tolerance on the dependence margin.
    #[arg(long = "tolerance-rank")]
    tolerance_rank: Option<f64>,

    /// Scale factor of the fold determinant threshold.
    #[arg(long = "tolerance-fold")]
    tolerance_fold: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: prop33, prop41, prop42, prop43, prop52, or prop53.
    suite: String,

    /// Exponent list for the suites parametrised by m.
    #[arg(long = "m", num_args = 1..)]
    ms: Option<Vec<u32>>,

    /// Ambient dimension for the suites parametrised by n.
    #[arg(long = "n")]
    n: Option<usize>,

    /// Sphere radius override.
    #[arg(long)]
    epsilon: Option<f64>,

    /// Seed for every randomised choice the suite makes.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of search restarts for the scan-based suites.
    #[arg(long, default_value_t = 64)]
    restarts: usize,

    /// Iteration budget per restart.
    #[arg(long, default_value_t = 300)]
    iterations: usize,

    /// Sample count for the brute-force margin floor.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,

    /// Rank-decision tolerance on the dependence margin.
    #[arg(long = "tolerance-rank")]
    tolerance_rank: Option<f64>,

    /// Scale factor of the fold determinant threshold.
    #[arg(long = "tolerance-fold")]
    tolerance_fold: Option<f64>,
}

fn main() -> ExitCode {
    // Die silently when the consumer of a pipe stops reading (e.g. `| head`)
    // instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Weights(args) => cmd_weights(args, cli.json),
        Command::Singular(args) => cmd_singular(args, cli.json),
        Command::Fold(args) => cmd_fold(args, cli.json),
        Command::Verify(args) => cmd_verify(args, cli.json),
    }
}

// ---------------------------------------------------------------------------
// shared plumbing
// ---------------------------------------------------------------------------

fn tolerances(rank: Option<f64>, fold: Option<f64>) -> Result<Tolerances> {
    let mut tol = Tolerances::default();
    if let Some(r) = rank {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidInput(
                "--tolerance-rank must be a positive finite number".into(),
            ));
        }
        tol.rank = r;
    }
    if let Some(f) = fold {
        if !(f.is_finite() && f > 0.0) {
            return Err(Error::InvalidInput(
                "--tolerance-fold must be a positive finite number".into(),
            ));
        }
        tol.fold = f;
    }
    Ok(tol)
}

/// Parse all expressions and embed them into the smallest common variable
/// ring, so that "z1^2" next to "z2^2" yields two polynomials on (z1, z2).
fn parse_components(texts: &[String]) -> Result<Vec<Polynomial>> {
    let parsed: Vec<Polynomial> = texts
        .iter()
        .map(|t| parse_polynomial(t))
        .collect::<Result<_>>()?;
    let n = parsed.iter().map(|p| p.n_vars()).max().unwrap_or(1);
    parsed.iter().map(|p| p.embed(n)).collect()
}

fn parse_sphere_point(text: &str, n: usize, epsilon: f64) -> Result<SpherePoint> {
    let coords = parse_point(text)?;
    if coords.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: coords.len(),
        });
    }
    SpherePoint::project(coords, epsilon)
}

fn format_complex(z: Complex64) -> String {
    format!("{:.6e} {} {:.6e}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
}

fn format_point(coords: &[Complex64]) -> String {
    let parts: Vec<String> = coords.iter().map(|&z| format_complex(z)).collect();
    format!("({})", parts.join(", "))
}

fn format_rationals(rs: &[num_rational::BigRational]) -> String {
    let parts: Vec<String> = rs.iter().map(rational_to_string).collect();
    format!("({})", parts.join(", "))
}

fn emit(doc: &ReportDocument, json: bool, text: &str) {
    if json {
        print!("{}", doc.to_json());
    } else {
        println!("{text}");
    }
}

// ---------------------------------------------------------------------------
// weights
// ---------------------------------------------------------------------------

fn cmd_weights(args: &WeightsArgs, json: bool) -> Result<u8> {
    let polys = parse_components(&args.polynomials)?;
    let config = json!({ "polynomials": args.polynomials });
    let mut doc = ReportDocument::new("weights", config);
    let mut text = String::new();
    let mut all_ok = true;

    let mut solutions = Vec::new();
    for (k, (poly, source)) in polys.iter().zip(&args.polynomials).enumerate() {
        text.push_str(&format!("polynomial {}: {}\n", k + 1, source));
        match weight_space(poly) {
            Ok(sol) => {
                text.push_str(&format!(
                    "  weighted homogeneous: yes\n  canonical weights: {}\n  reciprocal point: {}\n  family dimension: {}\n",
                    format_rationals(&sol.canonical_weights),
                    format_rationals(&sol.reciprocal_point),
                    sol.kernel_basis.len(),
                ));
                solutions.push(weight_solution_value(&sol));
            }
            Err(err) => {
                all_ok = false;
                text.push_str(&format!("  weighted homogeneous: no ({err})\n"));
                solutions.push(json!({ "feasible": false, "error": err.to_string() }));
            }
        }
    }
    doc.insert("weight_solutions", Value::Array(solutions));

    if polys.len() >= 2 {
        match common_weights_multi(&polys) {
            Ok(Some(cert)) => {
                text.push_str(&format!(
                    "common certificate:\n  w_f = {}\n  s = {}\n",
                    format_rationals(&cert.w_f),
                    format_rationals(&cert.s),
                ));
                if cert.s.len() == 2 {
                    text.push_str(&format!("  pair ratio s = {}\n", rational_to_string(cert.pair_s())));
                }
                text.push_str(&format!(
                    "  s all integer: {}\n",
                    if cert.s_all_integer() { "yes" } else { "no" }
                ));
                doc.insert("certificate", certificate_value(&cert));
            }
            Ok(None) => {
                all_ok = false;
                text.push_str("common certificate: none (no shared weight system)\n");
                doc.insert("certificate", Value::Null);
            }
            Err(err) => {
                all_ok = false;
                text.push_str(&format!("common certificate: none ({err})\n"));
                doc.insert("certificate", Value::Null);
            }
        }
    }

    emit(&doc, json, text.trim_end());
    Ok(if all_ok { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// singular
// ---------------------------------------------------------------------------

fn cmd_singular(args: &SingularArgs, json: bool) -> Result<u8> {
    let tol = tolerances(args.tolerance_rank, args.tolerance_fold)?;
    let polys = parse_components(&args.polynomials)?;
    let config = json!({
        "polynomials": args.polynomials,
        "epsilon": float_value(args.epsilon),
        "seed": args.seed,
        "restarts": args.restarts,
        "iterations": args.iterations,
        "tolerance_rank": float_value(tol.rank),
        "tolerance_fold": float_value(tol.fold),
        "mode": if args.scan { "scan" } else if args.circles { "circles" } else { "point" },
    });
    let mut doc = ReportDocument::new("singular", config);

    if args.circles {
        if polys.len() != 2 {
            return Err(Error::InvalidInput(
                "--circles needs exactly two polynomials".into(),
            ));
        }
        let family = homogeneous_2var_circles(&polys[0], &polys[1], args.epsilon)?;
        let mut text = format!(
            "singular circles: {} (upper bound {})\n",
            family.count, family.bound
        );
        if family.degenerate_all_singular {
            text.push_str("every point of the sphere minus the link is singular\n");
        }
        for dir in &family.directions {
            text.push_str(&format!("  circle through {}\n", format_point(dir)));
        }
        doc.insert("circles", circle_family_value(&family));
        emit(&doc, json, text.trim_end());
        return Ok(0);
    }

    if args.scan {
        let spec = MapSpec::new(polys, args.epsilon)?;
        let hits = sphere_search(&spec, args.restarts, args.iterations, args.seed, &tol);
        let singular_count = hits.iter().filter(|r| r.numeric_singular).count();
        let mut text = format!(
            "scan: {} singular point(s) found ({} candidate(s) reported) over {} restarts\n",
            singular_count,
            hits.len(),
            args.restarts
        );
        for rep in &hits {
            text.push_str(&format!(
                "  {} margin {:.3e} -> {}\n",
                format_point(rep.point.coords()),
                rep.numeric_margin,
                if rep.numeric_singular { "singular" } else { "near miss" },
            ));
        }
        doc.insert(
            "scan",
            json!({
                "singular_count": singular_count,
                "reports": hits.iter().map(singularity_value).collect::<Vec<_>>(),
            }),
        );
        emit(&doc, json, text.trim_end());
        return Ok(0);
    }

    let point_text = args.point.as_deref().expect("clap group guarantees --point");
    let spec = MapSpec::new(polys.clone(), args.epsilon)?;
    let p = parse_sphere_point(point_text, spec.n_vars(), args.epsilon)?;
    let report = if polys.len() == 2 {
        match common_weights_multi(&polys) {
            Ok(Some(cert)) => is_singular_algebraic(&polys[0], &polys[1], &cert, &p, &tol)?,
            _ => is_singular_numeric(&spec, &p, &tol)?,
        }
    } else {
        is_singular_numeric(&spec, &p, &tol)?
    };

    let mut text = format!(
        "point {} on the sphere of radius {:.6e}\n",
        format_point(report.point.coords()),
        args.epsilon
    );
    text.push_str(&format!(
        "numeric dependence margin: {:.6e} -> {}\n",
        report.numeric_margin,
        if report.numeric_singular { "singular" } else { "regular" }
    ));
    match (report.algebraic_residual, &report.algebraic_verdict) {
        (Some(res), verdict) => text.push_str(&format!(
            "algebraic minor residual: {:.6e} -> {}\n",
            res,
            match verdict {
                milnor_atlas::singular::AlgebraicVerdict::Singular => "singular",
                milnor_atlas::singular::AlgebraicVerdict::Regular => "regular",
                milnor_atlas::singular::AlgebraicVerdict::NotApplicable => "not applicable",
            }
        )),
        (None, _) => text.push_str("algebraic criterion: not applicable (no common weight certificate)\n"),
    }
    let singular = report.numeric_singular;
    doc.insert("singularity", singularity_value(&report));
    emit(&doc, json, text.trim_end());
    Ok(if singular { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// fold
// ---------------------------------------------------------------------------

fn cmd_fold(args: &FoldArgs, json: bool) -> Result<u8> {
    let tol = tolerances(args.tolerance_rank, args.tolerance_fold)?;
    let polys = parse_components(&args.polynomials)?;
    let config = json!({
        "polynomials": args.polynomials,
        "epsilon": float_value(args.epsilon),
        "point": args.point,
        "tolerance_rank": float_value(tol.rank),
        "tolerance_fold": float_value(tol.fold),
    });
    let mut doc = ReportDocument::new("fold", config);

    let cert = common_weights_multi(&polys)?.ok_or(Error::CertificateRequired)?;
    let p = parse_sphere_point(&args.point, polys[0].n_vars(), args.epsilon)?;
    let report = fold_test(&polys[0], &polys[1], &cert, &p, &tol)?;

    let mut text = format!(
        "point {}: singular; weight ratio s = {}\n",
        format_point(report.point.coords()),
        rational_to_string(&report.s)
    );
    text.push_str(&format!(
        "log-gradients complex dependent: {}\n",
        if report.c_dependent { "yes" } else { "no" }
    ));
    text.push_str(&format!(
        "det Re(V'HV) = {:.6e} (fold threshold {:.6e})\n",
        report.det_real, report.fold_threshold
    ));
    if let Some(dc) = report.det_complex {
        text.push_str(&format!("det W'HW = {}\n", format_complex(dc)));
    }
    let eigen: Vec<String> = report.eigenvalues.iter().map(|l| format!("{l:.6e}")).collect();
    text.push_str(&format!("eigenvalues of Re(V'HV): [{}]\n", eigen.join(", ")));
    if report.indeterminate {
        text.push_str("verdict: indeterminate (determinant within a decade of the threshold)\n");
    }
    match report.index {
        Some(idx) => text.push_str(&format!("verdict: fold point, index {idx}\n")),
        None => text.push_str("verdict: not a fold point\n"),
    }
    let is_fold = report.is_fold;
    doc.insert("fold", fold_value(&report));
    emit(&doc, json, text.trim_end());
    Ok(if is_fold { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn suite_value(report: &SuiteReport) -> Value {
    let mut map = Map::new();
    map.insert("suite".into(), Value::String(report.suite.clone()));
    map.insert("passed".into(), Value::Bool(report.passed()));
    map.insert(
        "assertions".into(),
        Value::Array(
            report
                .assertions
                .iter()
                .map(|a| {
                    json!({
                        "name": a.name,
                        "passed": a.passed,
                        "detail": a.detail,
                    })
                })
                .collect(),
        ),
    );
    Value::Object(map)
}

fn cmd_verify(args: &VerifyArgs, json: bool) -> Result<u8> {
    let tol = tolerances(args.tolerance_rank, args.tolerance_fold)?;
    let opts = SuiteOptions {
        epsilon: args.epsilon,
        ms: args.ms.clone(),
        n: args.n,
        restarts: args.restarts,
        iterations: args.iterations,
        samples: args.samples,
        seed: args.seed,
        tolerances: tol,
    };

    let config = json!({
        "suite": args.suite,
        "m": args.ms,
        "n": args.n,
        "epsilon": args.epsilon.map(float_value),
        "seed": args.seed,
        "restarts": args.restarts,
        "iterations": args.iterations,
        "samples": args.samples,
        "tolerance_rank": float_value(opts.tolerances.rank),
        "tolerance_fold": float_value(opts.tolerances.fold),
    });
    let mut doc = ReportDocument::new("verify", config);

    let report = run_suite(&args.suite, &opts)?;
    let mut text = format!("suite {}\n", report.suite);
    for a in &report.assertions {
        text.push_str(&format!(
            "{} {} - {}\n",
            if a.passed { "PASS" } else { "FAIL" },
            a.name,
            a.detail
        ));
    }
    let total = report.assertions.len();
    let passed = report.assertions.iter().filter(|a| a.passed).count();
    text.push_str(&format!("{passed}/{total} assertions passed\n"));

    let all_passed = report.passed();
    doc.insert("verify", suite_value(&report));
    emit(&doc, json, text.trim_end());
    Ok(if all_passed { 0 } else { 1 })
}
