//! Acceptance gate for the shipped catalogs: one test per guarantee, each
//! ending in a single printed verdict line. Tolerances and sample counts are
//! part of the contract and are asserted, not configurable.

use std::time::Instant;

use bicrossed::bialgebra::pairing_check;
use bicrossed::bialgebra_catalog::{bialgebra_entry, catalog_bialgebras, BIALGEBRA_NAMES};
use bicrossed::catalog::{catalog, entry};
use bicrossed::cohomology::extension_group_dim;
use bicrossed::groups::catalog::{group_catalog, group_pair};
use bicrossed::groups::cocycles::{
    check_group_cocycle, cocycle_family, pole_log_closed, pole_log_integral, quantization_scan,
    torus_obstruction, EvalMode, QUANTIZATION_STEP,
};
use bicrossed::groups::verify::{
    check_group_matched_pair, kac_criterion, match_to_catalog, SampleConfig,
};
use bicrossed::linalg::QMat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(what: &str, started: Instant) {
    println!("PASS: {what} ({:.2}s)", started.elapsed().as_secs_f64());
}

#[test]
fn catalog_entries_satisfy_their_defining_identities_exactly() {
    let started = Instant::now();
    let entries = catalog();
    assert_eq!(entries.len(), 15);
    for e in &entries {
        let name = e.full_name();
        assert!(e.data.check().unwrap().ok(), "{name}: defining identities");
        let pair = e.data.matched_pair().unwrap();
        assert!(pair.check().unwrap().ok(), "{name}: matched-pair axioms");
        assert!(pair.ambient().check_jacobi().ok(), "{name}: Jacobi");
    }
    assert!(started.elapsed().as_secs_f64() < 1.0, "over the 1s budget");
    verdict("all 15 catalog entries satisfy their identities exactly", started);
}

#[test]
fn extension_group_dimensions_match_the_classification() {
    let started = Instant::now();
    let expect = |spec: &str, dim: usize| {
        let e = entry(spec).unwrap();
        assert_eq!(
            extension_group_dim(&e.data).unwrap(),
            dim,
            "{spec}: extension group dimension"
        );
    };

    for spec in [
        "2+1/1.1",
        "2+1/2.1",
        "2+1/2.1?r=1",
        "2+1/2.1?r=-1",
        "2+1/2.2",
        "2+1/2.3",
        "2+1/3?a=-1",
        "2+1/4.1?d=-1&b=1",
        "2+1/4.1?d=-1&b=0",
        "2+1/4.2?d=-1",
        "2+1/4.3?a=1",
        "2+1/4.3?a=0",
        "2+1/4.3?a=-1",
    ] {
        expect(spec, 1);
    }

    for spec in [
        "1+1/1",
        "1+1/2",
        "1+1/3",
        "1+1/4",
        "2+1/1.2",
        "2+1/2.4",
        "2+1/2.5",
        "2+1/3?a=1",
        "2+1/3?a=2",
        "2+1/4.1?d=1&b=1",
        "2+1/4.1?d=2&b=0",
        "2+1/4.2?d=1",
    ] {
        expect(spec, 0);
    }

    assert!(started.elapsed().as_secs_f64() < 1.0, "over the 1s budget");
    verdict(
        "extension group dimensions match the classification exactly",
        started,
    );
}

fn parameter_samples(name: &str) -> Vec<String> {
    match name {
        "4.1" | "4.1~" => vec![
            format!("{name}?d=-1&b=1&lambda=1"),
            format!("{name}?d=-1&b=-3/2&lambda=2/5"),
            format!("{name}?d=2&b=1/3&lambda=-1"),
        ],
        "4.2" | "4.2~" => vec![
            format!("{name}?d=-1&lambda=1"),
            format!("{name}?d=-1&lambda=-5/3"),
            format!("{name}?d=3&lambda=1/2"),
        ],
        "4.3+" | "4.3+~" | "4.3=0" | "4.3=0~" | "4.3-" | "4.3-~" => vec![
            format!("{name}?lambda=1"),
            format!("{name}?lambda=-2/7"),
            format!("{name}?lambda=13"),
        ],
        "2dim" => vec![
            format!("{name}?q=1"),
            format!("{name}?q=-3/4"),
            format!("{name}?q=5"),
        ],
        "uq-su2" | "uq-su11" => vec![
            format!("{name}?k=2&m=1"),
            format!("{name}?k=-1/3&m=4"),
            format!("{name}?k=5&m=-2/7"),
        ],
        "uq-sl2r" => vec![
            format!("{name}?k=2&r=1"),
            format!("{name}?k=3/2&r=-2"),
            format!("{name}?k=-4&r=1/5"),
        ],
        "suq2" | "suq11" => vec![
            format!("{name}?t=1&p=2"),
            format!("{name}?t=-2/3&p=1/4"),
            format!("{name}?t=3&p=-5"),
        ],
        "slq2r" => vec![
            format!("{name}?r=1"),
            format!("{name}?r=-3/2"),
            format!("{name}?r=4"),
        ],
        "umu-e2" | "emu2" => vec![
            format!("{name}?l=1"),
            format!("{name}?l=-2/5"),
            format!("{name}?l=3"),
        ],
        "sd1" => vec![
            format!("{name}?re_mu=1&im_mu=2&c=5"),
            format!("{name}?re_mu=1&im_mu=0&c=1"),
            format!("{name}?re_mu=3&im_mu=-1&c=2"),
        ],
        "sd2" => vec![
            format!("{name}?alpha=2&beta=1"),
            format!("{name}?alpha=-1&beta=3"),
            format!("{name}?alpha=1/2&beta=-2"),
        ],
        other => vec![other.to_string()],
    }
}

#[test]
fn bialgebra_families_pass_their_axioms_and_dualities() {
    let started = Instant::now();

    for name in BIALGEBRA_NAMES {
        for spec in parameter_samples(name) {
            let e = bialgebra_entry(&spec).unwrap();
            let report = e.bialgebra.check();
            assert!(report.ok(), "{spec}: {report}");
        }
    }

    for e in catalog_bialgebras() {
        let name = e.full_name();
        let d = e.bialgebra.dual();
        assert!(d.check().ok(), "dual of {name}");
        let dd = d.dual();
        assert_eq!(
            dd.algebra().structure_constants(),
            e.bialgebra.algebra().structure_constants(),
            "{name}: double dual brackets"
        );
        assert_eq!(
            dd.cobracket(),
            e.bialgebra.cobracket(),
            "{name}: double dual cobracket"
        );
    }

    for name in ["4.1", "4.2", "4.3+", "4.3=0", "4.3-"] {
        let e = bialgebra_entry(name).unwrap();
        let stored = bialgebra_entry(e.dual_name.unwrap()).unwrap();
        let computed = e.bialgebra.dual();
        assert_eq!(
            computed.algebra().structure_constants(),
            stored.bialgebra.algebra().structure_constants(),
            "{name}: stored dual brackets"
        );
        assert_eq!(
            computed.cobracket(),
            stored.bialgebra.cobracket(),
            "{name}: stored dual cobracket"
        );
        let pairing = pairing_check(&stored.bialgebra, &e.bialgebra, &QMat::identity(3)).unwrap();
        assert!(pairing.ok(), "{name}: canonical pairing: {pairing}");
    }

    assert!(started.elapsed().as_secs_f64() < 5.0, "over the 5s budget");
    verdict(
        "all 23 bialgebra families pass their axioms, duals, and pairings",
        started,
    );
}

#[test]
fn group_pairs_integrate_their_algebra_entries() {
    let started = Instant::now();
    let cfg = SampleConfig::default();
    assert_eq!(cfg.samples, 1000);
    for pair in group_catalog() {
        let name = pair.full_name();
        let report = check_group_matched_pair(&pair, &cfg).unwrap();
        assert!(
            report.ok(1e-9),
            "{name}: worst identity residual {:.3e}\n{report}",
            report.max()
        );
        if pair.algebra_entry().is_none() {
            continue;
        }
        let m = match_to_catalog(&pair).unwrap();
        assert!(
            m.ok && m.residual <= 1e-5,
            "{name} -> {}: residual {:.3e}",
            m.target,
            m.residual
        );
    }
    assert!(started.elapsed().as_secs_f64() < 30.0, "over the 30s budget");
    verdict(
        "every group pair satisfies the factorization identities at 1e-9 \
         and recovers its algebra entry at 1e-5",
        started,
    );
}

#[test]
fn modular_criterion_separates_the_scaling_families() {
    let started = Instant::now();
    let cfg = SampleConfig::with_samples(400);

    let compliant = kac_criterion(&group_pair("4.2").unwrap(), &cfg).unwrap();
    assert!(
        compliant.eq1_max <= 1e-9,
        "4.2: first equality residual {:.3e}",
        compliant.eq1_max
    );
    assert!(
        compliant.delta_m_residual.unwrap() <= 1e-9,
        "4.2: modular element residual"
    );
    let pair42 = group_pair("4.2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let g = pair42.first().sample_point(&mut rng);
        let s = pair42.second().sample_point(&mut rng);
        let dm = pair42.delta_m_closed(&g, &s).unwrap();
        assert!((dm - 1.0).abs() <= 1e-9, "4.2: modular element {dm} != 1");
    }

    for head in ["4.1", "4.3+", "4.3=0", "4.3-"] {
        let report = kac_criterion(&group_pair(head).unwrap(), &cfg).unwrap();
        assert!(
            report.eq1_max >= 1e-2,
            "{head}: expected a failure witness, worst residual {:.3e}",
            report.eq1_max
        );
    }

    for (spec, d) in [("4.1", -1.0), ("4.1?d=2&b=1", 2.0), ("4.1?d=0&b=-1", 0.0)] {
        let pair = group_pair(spec).unwrap();
        let report = kac_criterion(&pair, &cfg).unwrap();
        assert!(
            report.delta_m_residual.unwrap() <= 1e-9,
            "{spec}: closed modular element vs chart evaluation"
        );
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let g = pair.first().sample_point(&mut rng);
            let s = pair.second().sample_point(&mut rng);
            let alpha = g[0] * (s[0] - 1.0) + 1.0;
            if alpha.abs() < 1e-3 {
                continue;
            }
            let formula = alpha.abs().powf(d + 1.0);
            let dm = pair.delta_m_closed(&g, &s).unwrap();
            assert!(
                (dm - formula).abs() <= 1e-9,
                "{spec}: modular element {dm} vs formula {formula}"
            );
        }
    }

    verdict(
        "the modular criterion passes on 4.2 with trivial modular element \
         and fails with strong witnesses on 4.1 and 4.3",
        started,
    );
}

#[test]
fn principal_value_integrals_reproduce_the_sign_formula() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0;
    while checked < 50 {
        let mut coef = || rng.gen_range(-3.0f64..3.0);
        let (a, b, c, d) = (coef(), coef(), coef(), coef());
        if a.abs() < 0.1 || c.abs() < 0.1 || (b / a - d / c).abs() < 0.05 {
            continue;
        }
        let integral = pole_log_integral(a, b, c, d);
        let closed = pole_log_closed(a, b, c, d);
        assert!(
            (integral.value - closed).abs() <= 1e-5,
            "({a}, {b}, {c}, {d}): integral {} vs closed {closed}",
            integral.value
        );
        checked += 1;
    }
    verdict(
        "50 principal-value pole-log integrals reproduce the sign formula at 1e-5",
        started,
    );
}

#[test]
fn cocycle_identities_hold_on_the_declared_coupling_sets() {
    let started = Instant::now();

    let scaling = cocycle_family("4.1").unwrap();
    let cfg = SampleConfig {
        samples: 500,
        seed: 42,
        tol: 1e-6,
    };
    let report = check_group_cocycle(&scaling, 1.0, EvalMode::Closed, &cfg).unwrap();
    assert!(
        report.passed,
        "4.1: identity residuals {:.3e} / {:.3e}",
        report.identity1_max, report.identity2_max
    );

    let parabolic = cocycle_family("4.3=0").unwrap();
    let grid = [
        0.0,
        QUANTIZATION_STEP,
        -QUANTIZATION_STEP,
        2.0 * QUANTIZATION_STEP,
        -2.0 * QUANTIZATION_STEP,
        1.0,
        2.0,
    ];
    let cfg = SampleConfig {
        samples: 10,
        seed: 42,
        tol: 1e-3,
    };
    let points = quantization_scan(&parabolic, &grid, EvalMode::Integral, &cfg).unwrap();
    for p in &points {
        assert_eq!(
            p.passed, p.expected,
            "4.3=0 at coupling {}: residual {:.3e}",
            p.coupling, p.identity1_max
        );
        if !p.expected {
            assert!(
                p.identity1_max >= 1e-1,
                "4.3=0 at coupling {}: weak witness {:.3e}",
                p.coupling,
                p.identity1_max
            );
        }
    }

    let elliptic = cocycle_family("4.3-").unwrap();
    let chart = elliptic.pair().first().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut checked = 0;
    while checked < 100 {
        let g = chart.sample_point(&mut rng);
        let h = chart.sample_point(&mut rng);
        let Some((quad, closed)) = torus_obstruction(&elliptic, 1.0, &g, &h) else {
            continue;
        };
        assert!(
            (quad.value - closed).abs() <= 1e-5,
            "circle obstruction at {g:?}, {h:?}: quadrature {} vs closed {closed}",
            quad.value
        );
        checked += 1;
    }

    assert!(started.elapsed().as_secs_f64() < 300.0, "over the 5min budget");
    verdict(
        "cocycle identities pass in closed form, quantize on the coupling \
         lattice, and match the circle obstruction",
        started,
    );
}

#[test]
fn full_verification_output_is_deterministic() {
    let started = Instant::now();
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_bicrossed"))
            .args(["--format", "json", "verify", "all", "--samples", "25"])
            .output()
            .expect("verification run")
    };
    let first = run();
    let second = run();
    assert!(first.status.success(), "first run failed");
    assert!(second.status.success(), "second run failed");
    assert_eq!(
        first.stdout, second.stdout,
        "verification output differs between identical runs"
    );
    let doc: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(doc["passed"], serde_json::Value::Bool(true));
    assert_eq!(doc["entries"].as_array().unwrap().len(), 18);
    assert_eq!(doc["bialgebras"].as_array().unwrap().len(), 23);
    verdict(
        "two seeded full verification runs emit byte-identical passing JSON",
        started,
    );
}
