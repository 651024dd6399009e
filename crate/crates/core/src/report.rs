//! JSON report assembly: a versioned document schema with deterministic,
//! lossless serialization (17 significant digits for every float, compact
//! layout, sorted keys, trailing newline).

use crate::exact::rational_to_string;
use crate::fold::FoldReport;
use crate::linalg::CMatrix;
use crate::singular::{AlgebraicVerdict, CircleFamily, SingularityReport, SpherePoint};
use crate::weights::{CommonWeightCertificate, WeightSolution};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::io;

pub const SCHEMA: &str = "milnor-atlas/1";

/// Serializer writing every f64 as `{:.16e}` (17 significant digits, enough
/// to round-trip losslessly).
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Compact, deterministic JSON text with a trailing newline.
pub fn to_json_line(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serializer emits UTF-8")
}

/// A finite float, or null when the value is not representable.
pub fn float_value(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn complex_value(z: Complex64) -> Value {
    json!({ "re": float_value(z.re), "im": float_value(z.im) })
}

pub fn rational_value(r: &BigRational) -> Value {
    Value::String(rational_to_string(r))
}

pub fn point_value(coords: &[Complex64]) -> Value {
    Value::Array(coords.iter().map(|&z| complex_value(z)).collect())
}

pub fn matrix_value(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| point_value(&m.row(r)))
            .collect(),
    )
}

fn sphere_point_value(p: &SpherePoint) -> Value {
    json!({
        "coordinates": point_value(p.coords()),
        "radius": float_value(p.radius()),
    })
}

fn verdict_str(singular: bool) -> &'static str {
    if singular {
        "singular"
    } else {
        "regular"
    }
}

pub fn singularity_value(rep: &SingularityReport) -> Value {
    let mut map = Map::new();
    map.insert("point".into(), sphere_point_value(&rep.point));
    map.insert("numeric_margin".into(), float_value(rep.numeric_margin));
    map.insert(
        "numeric_verdict".into(),
        Value::String(verdict_str(rep.numeric_singular).into()),
    );
    if let Some(res) = rep.algebraic_residual {
        map.insert("algebraic_residual".into(), float_value(res));
    }
    map.insert(
        "algebraic_verdict".into(),
        Value::String(
            match rep.algebraic_verdict {
                AlgebraicVerdict::Singular => "singular",
                AlgebraicVerdict::Regular => "regular",
                AlgebraicVerdict::NotApplicable => "not-applicable",
            }
            .into(),
        ),
    );
    Value::Object(map)
}

pub fn fold_value(rep: &FoldReport) -> Value {
    let mut map = Map::new();
    map.insert("point".into(), sphere_point_value(&rep.point));
    map.insert("s".into(), rational_value(&rep.s));
    map.insert("H".into(), matrix_value(&rep.h));
    map.insert("V".into(), matrix_value(&rep.v));
    if let Some(w) = &rep.w {
        map.insert("W".into(), matrix_value(w));
    }
    map.insert("det_real".into(), float_value(rep.det_real));
    if let Some(dc) = rep.det_complex {
        map.insert("det_complex".into(), complex_value(dc));
    }
    map.insert(
        "eigenvalues".into(),
        Value::Array(rep.eigenvalues.iter().map(|&l| float_value(l)).collect()),
    );
    map.insert("is_fold".into(), Value::Bool(rep.is_fold));
    if let Some(idx) = rep.index {
        map.insert("index".into(), json!(idx));
    }
    if let Some(idx) = rep.absolute_index {
        map.insert("absolute_index".into(), json!(idx));
    }
    map.insert("c_dependent".into(), Value::Bool(rep.c_dependent));
    map.insert("indeterminate".into(), Value::Bool(rep.indeterminate));
    map.insert("fold_threshold".into(), float_value(rep.fold_threshold));
    Value::Object(map)
}

pub fn weight_solution_value(sol: &WeightSolution) -> Value {
    json!({
        "feasible": sol.feasible,
        "reciprocal_point": rationals_value(&sol.reciprocal_point),
        "kernel_basis": sol.kernel_basis.iter().map(|v| rationals_value(v)).collect::<Vec<_>>(),
        "canonical_weights": rationals_value(&sol.canonical_weights),
    })
}

pub fn certificate_value(cert: &CommonWeightCertificate) -> Value {
    json!({
        "w_f": rationals_value(&cert.w_f),
        "s": rationals_value(&cert.s),
        "s_all_integer": cert.s_all_integer(),
    })
}

pub fn circle_family_value(fam: &CircleFamily) -> Value {
    json!({
        "directions": fam.directions.iter().map(|d| point_value(d)).collect::<Vec<_>>(),
        "radius": float_value(fam.radius),
        "count": fam.count,
        "bound": fam.bound,
        "degenerate_all_singular": fam.degenerate_all_singular,
    })
}

fn rationals_value(rs: &[BigRational]) -> Value {
    Value::Array(rs.iter().map(rational_value).collect())
}

/// Top-level document: schema marker, tool version, the echoed configuration,
/// and named result sections.
pub struct ReportDocument {
    command: String,
    config: Value,
    sections: Map<String, Value>,
}

impl ReportDocument {
    pub fn new(command: &str, config: Value) -> Self {
        Self {
            command: command.to_string(),
            config,
            sections: Map::new(),
        }
    }

    pub fn insert(&mut self, key: &str, value: Value) {
        self.sections.insert(key.to_string(), value);
    }

    pub fn to_value(&self) -> Value {
        let mut map = Map::new();
        map.insert("schema".into(), Value::String(SCHEMA.into()));
        map.insert(
            "version".into(),
            Value::String(env!("CARGO_PKG_VERSION").into()),
        );
        map.insert("command".into(), Value::String(self.command.clone()));
        map.insert("config".into(), self.config.clone());
        for (k, v) in &self.sections {
            map.insert(k.clone(), v.clone());
        }
        Value::Object(map)
    }

    pub fn to_json(&self) -> String {
        to_json_line(&self.to_value())
    }
}
