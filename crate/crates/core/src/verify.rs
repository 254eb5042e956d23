//! End-to-end check suite for the gluing `K_n +_m K'_n`, one `n` at a time.
//!
//! For each `n` the suite compares, in order:
//!
//! 1. the sign of the minimum edge curvature against the positivity window,
//!    for every `m`;
//! 2. every edge's solver curvature against the closed form of its class;
//! 3. the threshold `M` and the curvature bound at `M`;
//! 4. the hand-built couplings and potentials against the solver;
//! 5. the spectral and Cheeger sandwich at `M`.
//!
//! The order matters for [`VerifyReport::first_failure`].

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::curvature::{self, CurvatureError};
use crate::gluing::witness::{self, PotentialFixture};
use crate::gluing::{self, ClosedForm, EdgeClass, GluingError, GluingSpec};
use crate::graph::Graph;
use crate::spectral::{self, CheckRole, SpectralError};
use crate::transport::{self, TransportError};
use crate::Rational;

/// Largest `n` the suite accepts; `2n` must stay within the exhaustive
/// Cheeger limit.
pub const MAX_N: usize = spectral::EXHAUSTIVE_VERTEX_LIMIT / 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("n = {n} is above the supported maximum {max}")]
    NTooLarge { n: usize, max: usize },
    #[error(transparent)]
    Gluing(#[from] GluingError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Transport(#[from] TransportError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Test hook: predict positivity for `m >= threshold` instead of
    /// `m > threshold`. The suite must then fail wherever the threshold is
    /// an integer.
    pub inject_off_by_one: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Section {
    Window,
    Formula,
    Threshold,
    Coupling,
    Potential,
    Spectral,
}

impl Section {
    pub fn name(&self) -> &'static str {
        match self {
            Section::Window => "window",
            Section::Formula => "formula",
            Section::Threshold => "threshold",
            Section::Coupling => "coupling",
            Section::Potential => "potential",
            Section::Spectral => "spectral",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub n: usize,
    pub m: Option<usize>,
    pub section: Section,
    pub subject: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
    /// Reported for comparison only; does not affect [`VerifyReport::passed`].
    pub informational: bool,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed, self.informational) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (true, true) => "info",
            (false, true) => "info-fail",
        };
        write!(f, "{status} n={}", self.n)?;
        if let Some(m) = self.m {
            write!(f, " m={m}")?;
        }
        write!(
            f,
            " {} {}: expected {}, got {}",
            self.section.name(),
            self.subject,
            self.expected,
            self.actual
        )
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub n: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed && !c.informational)
    }
}

struct Recorder {
    n: usize,
    checks: Vec<CheckOutcome>,
}

impl Recorder {
    fn push(
        &mut self,
        m: Option<usize>,
        section: Section,
        subject: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        passed: bool,
    ) {
        self.checks.push(CheckOutcome {
            n: self.n,
            m,
            section,
            subject: subject.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            passed,
            informational: false,
        });
    }
}

/// Runs the full suite for one `n` in `5..=MAX_N`.
pub fn verify_n(n: usize, options: VerifyOptions) -> Result<VerifyReport, VerifyError> {
    if n < 5 {
        return Err(GluingError::NTooSmall(n).into());
    }
    if n > MAX_N {
        return Err(VerifyError::NTooLarge { n, max: MAX_N });
    }
    let mut rec = Recorder {
        n,
        checks: Vec::new(),
    };
    let window = gluing::positivity_window(n)?;
    let specs: Vec<GluingSpec> = (1..n)
        .map(|m| GluingSpec::for_main_theorem(n, m))
        .collect::<Result<_, _>>()?;
    let graphs: Vec<Graph> = specs.iter().map(|&s| gluing::build_gluing(s)).collect();
    let mut edge_kappas = Vec::with_capacity(specs.len());
    for g in &graphs {
        edge_kappas.push(curvature::edge_curvatures(g)?);
    }

    // 1. Positivity window.
    for (spec, reports) in specs.iter().zip(&edge_kappas) {
        let m = spec.m();
        let kappa_min = reports.iter().map(|r| r.kappa).min().expect("gluings have edges");
        let m_q = Rational::from_integer(m as i64);
        let predicted = if options.inject_off_by_one {
            m_q >= window.threshold
        } else {
            gluing::predicted_positive(&window, m)
        };
        let actual = kappa_min > Rational::from_integer(0);
        let sign = |positive: bool| if positive { "kappa_min > 0" } else { "kappa_min <= 0" };
        rec.push(
            Some(m),
            Section::Window,
            format!("threshold {}", window.threshold),
            sign(predicted),
            format!("kappa_min = {kappa_min}"),
            predicted == actual,
        );
    }

    // 2. Closed forms, every edge grouped by class.
    for (spec, reports) in specs.iter().zip(&edge_kappas) {
        let mut by_class: BTreeMap<usize, (EdgeClass, Vec<Rational>)> = BTreeMap::new();
        for r in reports {
            let class = gluing::classify_edge(*spec, (r.x, r.y))?;
            let slot = EdgeClass::ALL.iter().position(|&c| c == class).expect("listed class");
            by_class.entry(slot).or_insert((class, Vec::new())).1.push(r.kappa);
        }
        for (class, values) in by_class.into_values() {
            let form = gluing::closed_form_kappa(*spec, class)?;
            let all_match = values.iter().all(|&k| form.contains(k));
            let mut distinct = values.clone();
            distinct.sort();
            distinct.dedup();
            let shown: Vec<String> = distinct.iter().map(|k| k.to_string()).collect();
            rec.push(
                Some(spec.m()),
                Section::Formula,
                class.name(),
                form,
                format!("{} over {} edges", shown.join(" | "), values.len()),
                all_match,
            );
        }
        if spec.m() == n - 1 {
            let g = &graphs[spec.m() - 1];
            let edges = [(spec.u(1), spec.u(2)), (spec.u(0), spec.v(0)), (spec.u(0), spec.v(1))];
            for ((x, y), expected) in edges.into_iter().zip(gluing::full_gluing_values(n)) {
                let kappa = curvature::ricci_curvature(g, x, y)?.kappa;
                rec.push(
                    Some(spec.m()),
                    Section::Formula,
                    format!("full gluing ({x},{y})"),
                    expected,
                    kappa,
                    kappa == expected,
                );
            }
        }
    }

    // 3. Threshold and the bound at M.
    let expected_m = if n > 6 { n - 3 } else { n - 2 };
    rec.push(
        None,
        Section::Threshold,
        "M",
        expected_m,
        window.smallest_m,
        window.smallest_m == expected_m,
    );
    let bound = gluing::global_lower_bound_at_m(n)?;
    let kappa_at_m = edge_kappas[window.smallest_m - 1]
        .iter()
        .map(|r| r.kappa)
        .min()
        .expect("gluings have edges");
    rec.push(
        Some(window.smallest_m),
        Section::Threshold,
        "kappa_min at M",
        format!(">= {bound}"),
        kappa_at_m,
        kappa_at_m >= bound,
    );

    // 4. Hand-built certificates.
    for (spec, g) in specs.iter().zip(&graphs) {
        for fixture in witness::couplings(*spec) {
            let mu = g.random_walk_measure(fixture.source);
            let nu = g.random_walk_measure(fixture.target);
            let (w, _) = transport::wasserstein(g, &mu, &nu)?;
            let plan = fixture.plan(g);
            let feasible = plan.is_coupling(&mu, &nu);
            rec.push(
                Some(spec.m()),
                Section::Coupling,
                format!("{} ({},{})", fixture.name, fixture.source, fixture.target),
                format!("feasible, cost {} = W", fixture.stated_cost),
                format!("feasible={feasible}, cost {}, W {w}", plan.cost()),
                feasible && plan.cost() == fixture.stated_cost && plan.cost() == w,
            );
        }
        for fixture in witness::potentials(*spec) {
            check_potential(&mut rec, g, *spec, &fixture)?;
        }
        if let Ok(fixture) = witness::potential_f4_as_printed(*spec) {
            let mu = g.random_walk_measure(fixture.source);
            let nu = g.random_walk_measure(fixture.target);
            let (w, _) = transport::wasserstein(g, &mu, &nu)?;
            let outcome = transport::check_dual_witness(g, &mu, &nu, &fixture.witness(g), w);
            rec.push(
                Some(spec.m()),
                Section::Potential,
                fixture.name,
                "rejected as not 1-Lipschitz",
                match &outcome {
                    Ok(_) => "accepted".to_string(),
                    Err(e) => e.to_string(),
                },
                matches!(outcome, Err(TransportError::NotLipschitz { .. })),
            );
        }
    }

    // 5. Spectral sandwich at M.
    let sandwich = spectral::verify_sandwich(n)?;
    for check in &sandwich.checks {
        rec.checks.push(CheckOutcome {
            n,
            m: Some(sandwich.m),
            section: Section::Spectral,
            subject: check.name.to_string(),
            expected: format!("[{:.12}, {:.12}]", check.lower, check.upper),
            actual: format!("{:.12}", check.value),
            passed: check.holds,
            informational: check.role == CheckRole::Supplementary,
        });
    }

    Ok(VerifyReport {
        n,
        checks: rec.checks,
    })
}

/// A potential must be 1-Lipschitz, attain its stated value and certify the
/// solver distance; it must close the duality gap wherever the closed form
/// is exact.
fn check_potential(
    rec: &mut Recorder,
    g: &Graph,
    spec: GluingSpec,
    fixture: &PotentialFixture,
) -> Result<(), VerifyError> {
    let mu = g.random_walk_measure(fixture.source);
    let nu = g.random_walk_measure(fixture.target);
    let (w, _) = transport::wasserstein(g, &mu, &nu)?;
    let class = gluing::classify_edge(spec, (fixture.source, fixture.target))?;
    let tight = matches!(gluing::closed_form_kappa(spec, class)?, ClosedForm::Exact(_));
    let f = fixture.witness(g);
    let subject = format!("{} ({},{})", fixture.name, fixture.source, fixture.target);
    let (passed, actual) = match transport::check_dual_witness(g, &mu, &nu, &f, w) {
        Ok(cert) => (
            f.attained_value() == fixture.stated_value && (!tight || cert.optimal),
            format!("value {}, W {w}", cert.dual_value),
        ),
        Err(e) => (false, e.to_string()),
    };
    let relation = if tight { "=" } else { "<=" };
    rec.push(
        Some(spec.m()),
        Section::Potential,
        subject,
        format!("1-Lipschitz, value {} {relation} W", fixture.stated_value),
        actual,
        passed,
    );
    Ok(())
}
