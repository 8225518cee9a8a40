//! Repository configurations, the pathway language and whole-model evaluation.

use std::path::PathBuf;

use vibresp::bath::{lineshape_g, ohmic_zero_temperature, Bath, SpectralDensity};
use vibresp::coherent::{log_decay, Oscillator};
use vibresp::config::Config;
use vibresp::dsl::{parse_pathway, preset_script, Resolver};
use vibresp::evaluate::{Evaluator, ResponseOptions, Selection};
use vibresp::exponent::single_mode;
use vibresp::fock::{brute_force_response, FockOptions, Initial};
use vibresp::pathway::{Contribution, Kind};
use vibresp::relaxation::{relaxed_multimode, relaxed_r_v3, table_r_v3};
use vibresp::third_order::{full_response3, r_v3};
use vibresp::{Complex64, Error};

fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn load(name: &str) -> Config {
    Config::from_path(&config_path(name)).unwrap()
}

#[test]
fn repository_configs_load() {
    let v = load("v_scheme.toml");
    assert_eq!(v.model.n_levels(), 3);
    assert_eq!(v.model.z(0), &[0.0, 0.4, -0.7]);
    assert!(v.bath.is_none());
    let x = load("ladder.toml");
    assert_eq!(x.model.doubles(), vec![2]);
    let b = load("ohmic_bath.toml");
    assert!(matches!(b.bath, Some(Bath::Scaled { .. })));
}

#[test]
fn script_file_binds_symbols() {
    let cfg = load("v_scheme.toml");
    let text = std::fs::read_to_string(config_path("gsb_rephasing.path")).unwrap();
    let r = Resolver::new(Some(&cfg.model)).bind("j", 1).bind("k", 2);
    let p = parse_pathway(&text, &r).unwrap();
    assert_eq!(p, Contribution::new(Kind::GsbR, 1, 2, 0).pathway());
}

#[test]
fn presets_parse_to_their_kinds() {
    for kind in Kind::ALL {
        let r = Resolver::new(None).bind("j", 1).bind("k", 2).bind("l", 3);
        let p = parse_pathway(&preset_script(kind), &r).unwrap();
        assert_eq!(p, Contribution::new(kind, 1, 2, 3).pathway(), "{kind}");
    }
}

#[test]
fn script_pathway_sums_like_the_kind() {
    let cfg = load("v_scheme.toml");
    let m = &cfg.model;
    let t = [0.7, 1.4, 2.1];
    let pathways: Vec<_> = [(1, 1), (1, 2), (2, 1), (2, 2)]
        .iter()
        .map(|&(j, k)| {
            let r = Resolver::new(Some(m)).bind("j", j).bind("k", k);
            parse_pathway(&preset_script(Kind::GsbR), &r).unwrap()
        })
        .collect();
    let e = Evaluator::new(
        m,
        None,
        &Selection::Pathways(pathways),
        ResponseOptions::default(),
    )
    .unwrap();
    let want = full_response3(m, Kind::GsbR, t).unwrap();
    assert!((e.evaluate(&t).unwrap() - want).norm() < 1e-13);
}

#[test]
fn ohmic_bath_adds_line_shape() {
    let cfg = load("ohmic_bath.toml");
    let m = &cfg.model;
    let c = Contribution::new(Kind::GsbR, 1, 1, 0);
    let sel = Selection::Contributions(vec![c]);
    let opts = ResponseOptions {
        vibrational_only: true,
        ..Default::default()
    };
    let bare = Evaluator::new(m, None, &sel, opts).unwrap();
    let dressed = Evaluator::new(m, cfg.bath.as_ref(), &sel, opts).unwrap();
    let t = [1.2, 0.0, 0.0];
    let ratio = dressed.evaluate(&t).unwrap() / bare.evaluate(&t).unwrap();
    let sd = SpectralDensity::Ohmic {
        eta: 0.02,
        cutoff: 2.0,
    };
    let mut want = Complex64::new(0.0, 0.0);
    for term in &single_mode(&c.pathway(), &[0.0, 1.0], 1.0).terms {
        let g = ohmic_zero_temperature(0.02, 2.0, term.window_sum(&t));
        assert!((g - lineshape_g(&sd, term.window_sum(&t), 0.0).unwrap()).norm() < 1e-9);
        want += term.coeff * if term.conj { g.conj() } else { g };
    }
    assert!((ratio - want.exp()).norm() < 1e-9);
    assert!(ratio.norm() < 1.0);
}

#[test]
fn ohmic_quadrature_at_temperature_is_bounded() {
    let sd = SpectralDensity::Ohmic {
        eta: 0.1,
        cutoff: 1.0,
    };
    let cold = lineshape_g(&sd, 3.0, 0.0).unwrap();
    let warm = lineshape_g(&sd, 3.0, 0.5).unwrap();
    let hot = lineshape_g(&sd, 3.0, 2.0).unwrap();
    assert!(cold.re < warm.re && warm.re < hot.re);
    assert!((cold.im - warm.im).abs() < 1e-9 && (warm.im - hot.im).abs() < 1e-9);
}

#[test]
fn decay_factor_example() {
    let d = log_decay(Complex64::new(0.0, 0.0), 1.0, 4f64.ln(), 1.0);
    assert!((d + 0.375).abs() < 1e-15);
}

#[test]
fn relaxed_model_matches_number_basis() {
    let mut cfg = load("v_scheme.toml");
    cfg.model.kappa = 0.1;
    let c = Contribution::new(Kind::SeNr, 1, 1, 0);
    let t = [0.8, 3.0, 1.6];
    let r = relaxed_multimode(&cfg.model, &c.pathway(), &t).unwrap();
    let o = brute_force_response(
        &cfg.model,
        &c.pathway(),
        &t,
        Initial::Vacuum,
        0.1,
        FockOptions::new(64),
    )
    .unwrap();
    assert!((r - o.value).norm() < 1e-10);
    let e = Evaluator::new(
        &cfg.model,
        None,
        &Selection::Contributions(vec![c]),
        ResponseOptions {
            vibrational_only: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert!((e.evaluate(&t).unwrap() - r).norm() < 1e-14);
}

#[test]
fn tabulated_relaxed_forms_reduce_without_relaxation() {
    let z = [0.0, 0.4, -0.7, 0.25];
    let t = [0.9, 2.3, 1.4];
    for kind in Kind::ALL {
        let c = Contribution::new(kind, 1, 2, 3);
        let bare = r_v3(&c, &z, 1.0, t);
        let osc = Oscillator::new(1.0, 0.0);
        assert!(
            (table_r_v3(&c, &z, osc, t).unwrap() - bare).norm() < 1e-13,
            "{kind}"
        );
        assert!(
            (relaxed_r_v3(&c, &z, osc, t).unwrap() - bare).norm() < 1e-13,
            "{kind}"
        );
    }
}

#[test]
fn thermal_relaxation_is_refused() {
    let cfg = load("v_scheme.toml");
    let opts = ResponseOptions {
        temperature: 0.3,
        kappa: Some(0.1),
        ..Default::default()
    };
    let r = Evaluator::new(&cfg.model, None, &Selection::Kind(Kind::SeR), opts);
    assert_eq!(r.err(), Some(Error::ThermalRelaxation));
}
