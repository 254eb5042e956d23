use num_traits::One;
use ricci_core::curvature::{edge_curvatures, jost_liu_lower, ricci_curvature};
use ricci_core::gluing::witness::{couplings, potential_f4_as_printed, potentials};
use ricci_core::gluing::{
    build_gluing, class_present, classify_edge, closed_form_kappa, cross_spoke_regime,
    full_gluing_values, global_lower_bound_at_m, jost_liu_closed_forms, min_curvature_by_class,
    positivity_window, predicted_positive, regime_conditions_disagree, representative_edge,
    ClosedForm, CrossSpokeRegime, EdgeClass, GluingError, GluingSpec,
};
use ricci_core::transport::{check_dual_witness, TransportError};
use ricci_core::{min_edge_curvature, wasserstein, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn specs(ns: std::ops::RangeInclusive<usize>) -> impl Iterator<Item = GluingSpec> {
    ns.flat_map(|n| (1..n).map(move |m| GluingSpec::new(n, m).unwrap()))
}

#[test]
fn every_edge_matches_its_class_formula() {
    for spec in specs(5..=9) {
        let g = build_gluing(spec);
        for report in edge_curvatures(&g).unwrap() {
            let class = classify_edge(spec, (report.x, report.y)).unwrap();
            let form = closed_form_kappa(spec, class).unwrap();
            assert!(
                form.contains(report.kappa),
                "{spec} {class} ({},{}): {} not in {form}",
                report.x,
                report.y,
                report.kappa
            );
        }
    }
}

#[test]
fn class_sizes_partition_the_edges() {
    for spec in specs(2..=9) {
        let (n, m) = (spec.n(), spec.m());
        let free = n - 1 - m;
        let g = build_gluing(spec);
        let mut counts = [0usize; 7];
        for e in g.edges() {
            let class = classify_edge(spec, e).unwrap();
            counts[EdgeClass::ALL.iter().position(|&c| c == class).unwrap()] += 1;
        }
        let expected = |class: EdgeClass| match class {
            EdgeClass::Bridge => 1,
            EdgeClass::CrossSpoke | EdgeClass::HubToAttached => 2 * m,
            EdgeClass::AttachedPair => m * (m - 1),
            EdgeClass::AttachedToFree => 2 * m * free,
            EdgeClass::HubToFree => 2 * free,
            EdgeClass::FreePair => free * free.saturating_sub(1),
        };
        for (i, class) in EdgeClass::ALL.iter().enumerate() {
            assert_eq!(counts[i], expected(*class), "{spec} {class}");
            assert_eq!(class_present(spec, *class), counts[i] > 0, "{spec} {class}");
            assert_eq!(representative_edge(spec, *class).is_ok(), counts[i] > 0);
        }
    }
}

#[test]
fn curvature_is_mirror_symmetric() {
    for spec in specs(3..=7) {
        let g = build_gluing(spec);
        for report in edge_curvatures(&g).unwrap() {
            let (a, b) = (spec.mirror(report.x), spec.mirror(report.y));
            let mirrored = ricci_curvature(&g, a.min(b), a.max(b)).unwrap();
            assert_eq!(mirrored.kappa, report.kappa, "{spec}");
        }
    }
}

#[test]
fn full_gluing_theorem_values() {
    for n in 5..=9 {
        let spec = GluingSpec::new(n, n - 1).unwrap();
        let g = build_gluing(spec);
        let [attached, bridge, spoke] = full_gluing_values(n);
        let ni = n as i64;
        assert_eq!(attached, q(ni - 1, ni));
        assert_eq!(bridge, q(2 * ni - 2, 2 * ni - 1));
        assert_eq!(spoke, q(3 * ni - 2, ni * (2 * ni - 1)));
        assert_eq!(ricci_curvature(&g, spec.u(1), spec.u(2)).unwrap().kappa, attached);
        assert_eq!(ricci_curvature(&g, spec.u(0), spec.v(0)).unwrap().kappa, bridge);
        assert_eq!(ricci_curvature(&g, spec.u(0), spec.v(1)).unwrap().kappa, spoke);
    }
    // (u_0, v_1) in K_6 +_5 K'_6.
    assert_eq!(full_gluing_values(6)[2], q(8, 33));
}

#[test]
fn general_bridge_formula_breaks_at_full_gluing() {
    for n in 5..=9i64 {
        let m = n - 1;
        let literal = q(4 * m - 2 * n + 4, n + m);
        assert!(literal > Rational::one(), "n={n}: {literal}");
    }
}

#[test]
fn regime_split_and_disagreement_cells() {
    let mut disagree = Vec::new();
    for spec in specs(5..=9) {
        let (n, m) = (spec.n() as i64, spec.m() as i64);
        let dense = (2 * m + n).pow(2) >= 5 * n * n - 8 * n;
        let expected = if dense { CrossSpokeRegime::Dense } else { CrossSpokeRegime::Sparse };
        assert_eq!(cross_spoke_regime(spec.n(), spec.m()), expected);
        if regime_conditions_disagree(spec.n(), spec.m()) {
            disagree.push((spec.n(), spec.m()));
        }
    }
    assert_eq!(disagree, vec![(6, 3), (8, 4), (9, 5)]);
}

#[test]
fn positivity_window_and_threshold() {
    for n in 5..=9 {
        let window = positivity_window(n).unwrap();
        let ni = n as i64;
        assert_eq!(window.threshold, q(ni * ni - 2 * ni, ni + 2));
        assert_eq!(window.smallest_m, if n > 6 { n - 3 } else { n - 2 });
        for m in 1..n {
            let spec = GluingSpec::new(n, m).unwrap();
            let (kappa, _) = min_edge_curvature(&build_gluing(spec)).unwrap();
            assert_eq!(kappa > Rational::from_integer(0), predicted_positive(&window, m), "{spec}");
            assert_eq!(min_curvature_by_class(spec).unwrap().0, kappa, "{spec}");
        }
        let at_m = GluingSpec::new(n, window.smallest_m).unwrap();
        let (kappa, _) = min_edge_curvature(&build_gluing(at_m)).unwrap();
        assert!(kappa >= global_lower_bound_at_m(n).unwrap());
    }
    let (kappa, _) = min_edge_curvature(&build_gluing(GluingSpec::new(6, 3).unwrap())).unwrap();
    assert_eq!(kappa, Rational::from_integer(0));
    assert_eq!(positivity_window(4), Err(GluingError::NTooSmall(4)));
}

#[test]
fn jost_liu_closed_forms_match_triangle_estimate() {
    for spec in specs(3..=9) {
        let g = build_gluing(spec);
        let (hub, spoke) = jost_liu_closed_forms(spec);
        if spec.m() >= 2 {
            assert_eq!(jost_liu_lower(&g, spec.u(0), spec.u(1)).unwrap(), hub, "{spec}");
        }
        if spec.m() <= spec.n() - 2 {
            assert_eq!(jost_liu_lower(&g, spec.u(0), spec.v(1)).unwrap(), spoke, "{spec}");
        }
    }
}

#[test]
fn jost_liu_is_strictly_weaker_at_six_three() {
    let spec = GluingSpec::new(6, 3).unwrap();
    let (hub, spoke) = jost_liu_closed_forms(spec);
    assert_eq!((hub, spoke), (q(7, 18), q(-5, 18)));
    assert_eq!(closed_form_kappa(spec, EdgeClass::HubToAttached).unwrap(), ClosedForm::Exact(q(4, 9)));
    assert_eq!(closed_form_kappa(spec, EdgeClass::CrossSpoke).unwrap(), ClosedForm::Exact(q(0, 1)));
}

#[test]
fn coupling_fixtures_are_optimal() {
    let mut seen = std::collections::BTreeSet::new();
    for spec in specs(5..=9) {
        let g = build_gluing(spec);
        for fixture in couplings(spec) {
            let mu = g.random_walk_measure(fixture.source);
            let nu = g.random_walk_measure(fixture.target);
            let plan = fixture.plan(&g);
            assert!(plan.is_coupling(&mu, &nu), "{spec} {}", fixture.name);
            assert_eq!(plan.cost(), fixture.stated_cost, "{spec} {}", fixture.name);
            assert_eq!(wasserstein(&g, &mu, &nu).unwrap().0, plan.cost(), "{spec} {}", fixture.name);
            seen.insert(fixture.name);
        }
    }
    assert_eq!(seen.len(), 5, "{seen:?}");
}

#[test]
fn potential_fixtures_certify_lower_bounds() {
    let mut seen = std::collections::BTreeSet::new();
    for spec in specs(5..=9) {
        let g = build_gluing(spec);
        for fixture in potentials(spec) {
            let mu = g.random_walk_measure(fixture.source);
            let nu = g.random_walk_measure(fixture.target);
            let (w, _) = wasserstein(&g, &mu, &nu).unwrap();
            let f = fixture.witness(&g);
            let cert = check_dual_witness(&g, &mu, &nu, &f, w)
                .unwrap_or_else(|e| panic!("{spec} {}: {e}", fixture.name));
            assert_eq!(cert.dual_value, fixture.stated_value, "{spec} {}", fixture.name);
            let class = classify_edge(spec, (fixture.source, fixture.target)).unwrap();
            if let ClosedForm::Exact(_) = closed_form_kappa(spec, class).unwrap() {
                assert!(cert.optimal, "{spec} {}", fixture.name);
            }
            seen.insert(fixture.name);
        }
    }
    assert_eq!(seen.len(), 6, "{seen:?}");
}

#[test]
fn printed_hub_free_potential_is_not_lipschitz() {
    for spec in specs(5..=9) {
        let Ok(fixture) = potential_f4_as_printed(spec) else {
            continue;
        };
        let g = build_gluing(spec);
        let mu = g.random_walk_measure(fixture.source);
        let nu = g.random_walk_measure(fixture.target);
        let (w, _) = wasserstein(&g, &mu, &nu).unwrap();
        let outcome = check_dual_witness(&g, &mu, &nu, &fixture.witness(&g), w);
        assert!(matches!(outcome, Err(TransportError::NotLipschitz { .. })), "{spec}: {outcome:?}");
    }
}
