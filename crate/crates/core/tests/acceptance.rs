//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs as a plain binary so the report is always printed.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ricci_core::curvature::{edge_curvatures, jost_liu_lower, ricci_curvature};
use ricci_core::gluing::witness::potentials;
use ricci_core::gluing::{
    build_gluing, classify_edge, closed_form_kappa, full_gluing_values, global_lower_bound_at_m,
    jost_liu_closed_forms, positivity_window, ClosedForm, EdgeClass, GluingSpec,
};
use ricci_core::spectral::{verify_sandwich, CheckRole};
use ricci_core::transport::{check_dual_witness, wasserstein_bruteforce};
use ricci_core::{min_edge_curvature, wasserstein, Rational};

struct Outcome {
    passed: bool,
    detail: String,
    info: Vec<String>,
}

impl Outcome {
    fn new(failures: Vec<String>, ok_detail: String) -> Self {
        Outcome {
            passed: failures.is_empty(),
            detail: if failures.is_empty() {
                ok_detail
            } else {
                let shown: Vec<_> = failures.iter().take(6).cloned().collect();
                let more = failures.len().saturating_sub(6);
                let suffix = if more > 0 { format!(" (+{more} more)") } else { String::new() };
                format!("{}{suffix}", shown.join("; "))
            },
            info: Vec::new(),
        }
    }

    fn with_info(mut self, info: Vec<String>) -> Self {
        self.info = info;
        self
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn specs(ns: std::ops::RangeInclusive<usize>) -> impl Iterator<Item = GluingSpec> {
    ns.flat_map(|n| (1..n).map(move |m| GluingSpec::new(n, m).unwrap()))
}

fn complete_graph_baseline() -> Outcome {
    let mut failures = Vec::new();
    let mut edges = 0;
    for n in 3..=10 {
        let expected = q(n as i64 - 2, n as i64 - 1);
        for r in edge_curvatures(&common::complete(n)).unwrap() {
            edges += 1;
            if r.kappa != expected {
                failures.push(format!("K_{n} ({},{}): {} != {expected}", r.x, r.y, r.kappa));
            }
        }
    }
    Outcome::new(failures, format!("{edges} edges of K_3..K_10 equal (n-2)/(n-1)"))
}

fn full_gluing_theorem() -> Outcome {
    let mut failures = Vec::new();
    for n in 5..=9 {
        let spec = GluingSpec::new(n, n - 1).unwrap();
        let g = build_gluing(spec);
        let ni = n as i64;
        let cases = [
            ((spec.u(1), spec.u(2)), q(ni - 1, ni)),
            ((spec.u(0), spec.v(0)), q(2 * ni - 2, 2 * ni - 1)),
            ((spec.u(0), spec.v(1)), q(3 * ni - 2, ni * (2 * ni - 1))),
        ];
        for ((x, y), expected) in cases {
            let kappa = ricci_curvature(&g, x, y).unwrap().kappa;
            if kappa != expected {
                failures.push(format!("n={n} ({x},{y}): {kappa} != {expected}"));
            }
        }
        debug_assert_eq!(full_gluing_values(n), cases.map(|c| c.1));
    }
    Outcome::new(failures, "three values exact for n=5..9".into())
}

fn class_formulas() -> Outcome {
    let mut failures = Vec::new();
    let mut info = Vec::new();
    let mut compared = 0;
    for spec in specs(5..=9) {
        let g = build_gluing(spec);
        for r in edge_curvatures(&g).unwrap() {
            let class = classify_edge(spec, (r.x, r.y)).unwrap();
            let form = closed_form_kappa(spec, class).unwrap();
            compared += 1;
            if !form.contains(r.kappa) {
                failures.push(format!("{spec} {class} ({},{}): {} vs {form}", r.x, r.y, r.kappa));
            }
            if class == EdgeClass::Bridge && spec.m() == spec.n() - 1 {
                let (n, m) = (spec.n() as i64, spec.m() as i64);
                let literal = q(4 * m - 2 * n + 4, n + m);
                info.push(format!(
                    "{spec}: bridge {}; general bridge formula gives {literal} > 1, full-gluing value used",
                    r.kappa
                ));
            }
        }
    }
    Outcome::new(failures, format!("{compared} edge comparisons over n=5..9, all m")).with_info(info)
}

fn positivity_window_exhaustive() -> Outcome {
    let mut failures = Vec::new();
    let mut zero_at_six_three = false;
    for spec in specs(5..=9) {
        let window = positivity_window(spec.n()).unwrap();
        let (kappa, _) = min_edge_curvature(&build_gluing(spec)).unwrap();
        let predicted = window.threshold < Rational::from_integer(spec.m() as i64);
        if (kappa > Rational::from_integer(0)) != predicted {
            failures.push(format!("{spec}: kappa_min {kappa}, window predicts positive={predicted}"));
        }
        if (spec.n(), spec.m()) == (6, 3) {
            zero_at_six_three = kappa == Rational::from_integer(0);
        }
    }
    if !zero_at_six_three {
        failures.push("kappa_min at (6,3) is not 0".into());
    }
    Outcome::new(failures, "window matches for all 35 cells; kappa_min(6,3) = 0".into())
}

fn threshold_and_bound() -> Outcome {
    let mut failures = Vec::new();
    let mut shown = Vec::new();
    for n in 5..=9 {
        let window = positivity_window(n).unwrap();
        let expected = if n > 6 { n - 3 } else { n - 2 };
        if window.smallest_m != expected {
            failures.push(format!("n={n}: M={} != {expected}", window.smallest_m));
        }
        let spec = GluingSpec::new(n, window.smallest_m).unwrap();
        let (kappa, _) = min_edge_curvature(&build_gluing(spec)).unwrap();
        let bound = global_lower_bound_at_m(n).unwrap();
        if kappa < bound {
            failures.push(format!("n={n}: kappa_min {kappa} < {bound}"));
        }
        shown.push(format!("n={n} M={} {kappa}>={bound}", window.smallest_m));
    }
    Outcome::new(failures, shown.join(", "))
}

fn zero_duality_gap() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for spec in specs(6..=7) {
        let g = build_gluing(spec);
        for fixture in potentials(spec) {
            let mu = g.random_walk_measure(fixture.source);
            let nu = g.random_walk_measure(fixture.target);
            let (w, _) = wasserstein(&g, &mu, &nu).unwrap();
            checked += 1;
            match check_dual_witness(&g, &mu, &nu, &fixture.witness(&g), w) {
                Ok(cert) if cert.optimal => {}
                Ok(cert) => failures.push(format!(
                    "{spec} {}: dual {} < primal {w}",
                    fixture.name, cert.dual_value
                )),
                Err(e) => failures.push(format!("{spec} {}: {e}", fixture.name)),
            }
        }
    }
    Outcome::new(failures, format!("{checked} potential fixtures at n=6,7 close the gap"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_607);
    let mut failures = Vec::new();
    for trial in 0..200 {
        let n = rng.gen_range(2..=12);
        let density = rng.gen_range(0.05..0.6);
        let g = common::random_connected(&mut rng, n, density);
        let mu = common::random_measure(&mut rng, n, 6);
        let nu = common::random_measure(&mut rng, n, 6);
        let (flow, _) = wasserstein(&g, &mu, &nu).unwrap();
        match wasserstein_bruteforce(&g, &mu, &nu) {
            Ok(lp) if lp == flow => {}
            Ok(lp) => failures.push(format!("trial {trial}: flow {flow} != LP {lp}")),
            Err(e) => failures.push(format!("trial {trial}: {e}")),
        }
    }
    Outcome::new(failures, "200/200 random pairs agree exactly".into())
}

fn spectral_sandwich() -> Outcome {
    let mut failures = Vec::new();
    let mut info = Vec::new();
    for n in 5..=9 {
        let report = verify_sandwich(n).unwrap();
        for check in &report.checks {
            let relation = if check.holds { "in" } else { "outside" };
            let line = format!(
                "n={n} M={} {}: {:.12} {relation} [{:.12}, {:.12}]",
                report.m, check.name, check.value, check.lower, check.upper
            );
            match (check.role, check.holds) {
                (CheckRole::Claimed, true) => {}
                (CheckRole::Claimed, false) => failures.push(line),
                (CheckRole::Supplementary, holds) => {
                    info.push(format!("{line} ({})", if holds { "holds" } else { "fails" }))
                }
            }
        }
        info.push(format!(
            "n={n}: kappa_min {}, lambda1 {:.12}, h {} (A = {:?}), phi {}",
            report.kappa_min, report.lambda1, report.cheeger.value, report.cheeger.argmin_set, report.conductance.value
        ));
    }
    Outcome::new(failures, "all claimed spectral checks hold for n=5..9".into()).with_info(info)
}

fn lin_lu_yau_reduction() -> Outcome {
    let mut failures = Vec::new();
    let mut graphs = 0;
    for (name, g) in common::corpus() {
        if g.vertex_count() > 14 {
            continue;
        }
        graphs += 1;
        let (edge_min, _) = min_edge_curvature(&g).unwrap();
        for x in g.vertices() {
            for y in x + 1..g.vertex_count() {
                let kappa = ricci_curvature(&g, x, y).unwrap().kappa;
                if kappa < edge_min {
                    failures.push(format!("{name} ({x},{y}): {kappa} < {edge_min}"));
                }
            }
        }
    }
    Outcome::new(failures, format!("all pairs >= edge minimum on {graphs} corpus graphs"))
}

fn jost_liu_envelope() -> Outcome {
    let mut failures = Vec::new();
    let mut edges = 0;
    for (name, g) in common::corpus() {
        for r in edge_curvatures(&g).unwrap() {
            edges += 1;
            let b = r.jost_liu.expect("edge");
            if !(b.lower <= r.kappa && r.kappa <= b.upper) {
                failures.push(format!("{name} ({},{}): {} not in [{}, {}]", r.x, r.y, r.kappa, b.lower, b.upper));
            }
        }
    }
    let spec = GluingSpec::new(6, 3).unwrap();
    let g = build_gluing(spec);
    let (hub, spoke) = jost_liu_closed_forms(spec);
    let cases = [
        ("hub-attached", (spec.u(0), spec.u(1)), hub, q(7, 18)),
        ("cross-spoke", (spec.u(0), spec.v(1)), spoke, q(-5, 18)),
    ];
    let mut shown = Vec::new();
    for (label, (x, y), closed, stated) in cases {
        let estimate = jost_liu_lower(&g, x, y).unwrap();
        let exact = ricci_curvature(&g, x, y).unwrap().kappa;
        if estimate != closed || closed != stated {
            failures.push(format!("{label}: estimate {estimate}, closed form {closed}, stated {stated}"));
        }
        if estimate >= exact {
            failures.push(format!("{label}: estimate {estimate} not strictly below {exact}"));
        }
        let class = classify_edge(spec, (x, y)).unwrap();
        if closed_form_kappa(spec, class).unwrap() != ClosedForm::Exact(exact) {
            failures.push(format!("{label}: exact value {exact} disagrees with its closed form"));
        }
        shown.push(format!("{label} {estimate} < {exact}"));
    }
    Outcome::new(
        failures,
        format!("{edges} corpus edges inside the envelope; at (6,3) {}", shown.join(", ")),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("complete-graph baseline", complete_graph_baseline, Some(Duration::from_secs(1))),
        ("full gluing values", full_gluing_theorem, None),
        ("edge-class formulas", class_formulas, Some(Duration::from_secs(30))),
        ("positivity window", positivity_window_exhaustive, None),
        ("threshold M and global bound", threshold_and_bound, None),
        ("zero duality gap", zero_duality_gap, None),
        ("flow vs LP oracle", oracle_equivalence, None),
        ("spectral sandwich", spectral_sandwich, Some(Duration::from_secs(10))),
        ("Lin-Lu-Yau reduction", lin_lu_yau_reduction, None),
        ("Jost-Liu envelope", jost_liu_envelope, None),
    ];
    let mut failed = Vec::new();
    for (index, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over_budget = budget.is_some_and(|b| elapsed > b);
        let passed = outcome.passed && !over_budget;
        let status = if passed { "PASS" } else { "FAIL" };
        let budget_note = match (budget, over_budget) {
            (Some(b), true) => format!(" [over budget {:.1}s]", b.as_secs_f64()),
            _ => String::new(),
        };
        println!(
            "criterion {:>2} {status} {name} ({:.2}s){budget_note}: {}",
            index + 1,
            elapsed.as_secs_f64(),
            outcome.detail
        );
        for line in outcome.info {
            println!("             info: {line}");
        }
        if !passed {
            failed.push(index + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria PASS");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAIL on criteria {failed:?}");
        ExitCode::FAILURE
    }
}
