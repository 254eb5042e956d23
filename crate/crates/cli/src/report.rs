//! Row types and their CSV / JSON / text renderings.

use std::fmt::Write as _;

use ricci_core::Rational;
use serde::Serialize;

/// JSON schema version written at the top level of every document.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Frac {
    pub num: i64,
    pub den: i64,
}

impl From<Rational> for Frac {
    fn from(q: Rational) -> Self {
        Frac {
            num: *q.numer(),
            den: *q.denom(),
        }
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// [`sig12`] for eigenvalues, flushing magnitudes below `1e-12` to zero so
/// that round-off in the kernel does not leak into reports.
pub fn eigen12(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        sig12(x)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureRow {
    pub x: usize,
    pub y: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<&'static str>,
    pub kappa: Frac,
    pub jl_lower: Frac,
    pub jl_upper: Frac,
    pub wasserstein: Frac,
}

pub fn curvature_csv(rows: &[CurvatureRow]) -> String {
    let mut out = String::from("x,y,kappa_num,kappa_den,jl_lower,jl_upper,W_num,W_den\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.x, r.y, r.kappa.num, r.kappa.den, r.jl_lower, r.jl_upper, r.wasserstein.num, r.wasserstein.den
        )
        .unwrap();
    }
    out
}

pub fn curvature_text(rows: &[CurvatureRow]) -> String {
    let mut out = String::new();
    let with_class = rows.iter().any(|r| r.class.is_some());
    if with_class {
        writeln!(out, "{:>4} {:>4}  {:<16} {:>12} {:>12} {:>12} {:>12}", "x", "y", "class", "kappa", "jl_lower", "jl_upper", "W").unwrap();
    } else {
        writeln!(out, "{:>4} {:>4}  {:>12} {:>12} {:>12} {:>12}", "x", "y", "kappa", "jl_lower", "jl_upper", "W").unwrap();
    }
    for r in rows {
        let (k, lo, hi, w) = (
            r.kappa.to_string(),
            r.jl_lower.to_string(),
            r.jl_upper.to_string(),
            r.wasserstein.to_string(),
        );
        match r.class {
            Some(class) => writeln!(out, "{:>4} {:>4}  {class:<16} {k:>12} {lo:>12} {hi:>12} {w:>12}", r.x, r.y),
            None => writeln!(out, "{:>4} {:>4}  {k:>12} {lo:>12} {hi:>12} {w:>12}", r.x, r.y),
        }
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub kappa_min: Frac,
    pub argmin_class: &'static str,
    pub argmin_edge: (usize, usize),
    pub positive: bool,
    /// `m` is the smallest positively curved value `M` (only for `n >= 5`).
    pub is_m: bool,
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("n,m,kappa_min_num,kappa_min_den,argmin_class,argmin_x,argmin_y,positive,is_M\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            r.m,
            r.kappa_min.num,
            r.kappa_min.den,
            r.argmin_class,
            r.argmin_edge.0,
            r.argmin_edge.1,
            r.positive,
            r.is_m
        )
        .unwrap();
    }
    out
}

pub fn sweep_text(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{:>3} {:>3} {:>12}  {:<16} {:>9}  positive  M", "n", "m", "kappa_min", "argmin_class", "edge").unwrap();
    for r in rows {
        writeln!(
            out,
            "{:>3} {:>3} {:>12}  {:<16} {:>9}  {:<8}  {}",
            r.n,
            r.m,
            r.kappa_min.to_string(),
            r.argmin_class,
            format!("({},{})", r.argmin_edge.0, r.argmin_edge.1),
            if r.positive { "T" } else { "F" },
            if r.is_m { "*" } else { "" }
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub n: usize,
    pub m: Option<usize>,
    pub section: &'static str,
    pub subject: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
    pub informational: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralOut {
    pub lambda1: f64,
    pub kappa_min: Frac,
    pub eigen_residual: f64,
    pub eigenvalues: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unnormalized_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unnormalized_eigenvalues: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheegerOut {
    pub variant: &'static str,
    pub value: Frac,
    pub argmin_set: Vec<usize>,
    pub boundary_edges: usize,
    pub denominator: usize,
}

/// Wraps a payload in the versioned top-level JSON object.
pub fn json_document(command: &str, payload: serde_json::Value) -> String {
    let mut doc = serde_json::json!({ "schema": SCHEMA_VERSION, "command": command });
    if let (Some(obj), serde_json::Value::Object(extra)) = (doc.as_object_mut(), payload) {
        obj.extend(extra);
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}
