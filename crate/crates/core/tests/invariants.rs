use std::path::PathBuf;

use bicrit::algebra;
use bicrit::family::{self, FamilyParams, DEFAULT_THETA};
use bicrit::orbit::{self, OrbitSettings, ParamClass, PointClass, DEFAULT_BUDGET};
use bicrit::render::{self, count_components, Execution, RenderSettings, ViewRect};
use bicrit::sphere::ExtComplex;
use num_complex::Complex64;
use proptest::prelude::*;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn beta_cycles_only_inside_unit_disc() {
    // the components are small, so this scan may see none; it checks the implication only
    for (m, n) in [(2, 1), (3, 1), (2, 2)] {
        let trap = family::trap_disc(m, n, DEFAULT_THETA).unwrap();
        let settings = OrbitSettings::with_budget(DEFAULT_BUDGET);
        for i in 0..80 {
            for j in 0..80 {
                let t = Complex64::new(-3.0 + 6.0 * (i as f64 + 0.5) / 80.0, -3.0 + 6.0 * (j as f64 + 0.5) / 80.0);
                let r = orbit::classify_parameter_with(&trap, t, &settings).unwrap();
                if let ParamClass::BetaCycle(_) = r.class {
                    assert!(t.norm() < 1.0, "({m},{n}) BetaCycle at {t}");
                }
                if t.norm() <= 1.0 {
                    assert!(!matches!(r.class, ParamClass::AlphaCycle(_)), "({m},{n}) AlphaCycle at {t}");
                    assert!(!r.alpha.outcome.to_infinity(), "({m},{n}) alpha escapes at {t}");
                }
            }
        }
    }
}

#[test]
fn alpha_inactive_on_unit_disc() {
    for t in bicrit::verify::unit_disc_params(100) {
        for (m, n) in [(2, 1), (3, 2)] {
            let r = orbit::classify_parameter(m, n, t, DEFAULT_BUDGET).unwrap();
            assert!(r.alpha.outcome.to_zero(), "({m},{n}) t={t}: {:?}", r.alpha.outcome);
        }
    }
}

#[test]
fn stored_orbits_respect_trap_and_doubling() {
    for (t, z) in [(Complex64::new(0.7, 0.2), ExtComplex::new(0.9, -0.4)), (Complex64::new(1.0, 0.0), ExtComplex::real(-2.5))] {
        let p = FamilyParams::new(2, 1, t).unwrap();
        let trap = family::trap_disc(2, 1, DEFAULT_THETA).unwrap();
        let r_trap = trap.radius_for(t.norm());
        let big = family::escape_radius(&p);
        // keep iterating past the decision to check the invariants
        let mut z = z;
        let mut trapped = false;
        let mut escaped = false;
        for _ in 0..60 {
            let w = p.eval_map(z);
            if trapped {
                assert!(w.norm() < r_trap);
            }
            if escaped && !w.is_infinite() {
                assert!(w.norm() >= 2.0 * z.norm());
            }
            trapped |= w.norm() < r_trap;
            escaped |= w.norm() >= big;
            if w.is_infinite() || w.norm() > 1e150 {
                break;
            }
            z = w;
        }
        assert!(trapped || escaped);
    }
}

#[test]
fn dynamical_plane_golden() {
    let p = FamilyParams::new(2, 1, Complex64::new(0.2, 0.3)).unwrap();
    let view = ViewRect::new(Complex64::new(0.0, 0.0), 4.0, 3.0).unwrap();
    let settings = RenderSettings::new(16, 12, 500).with_execution(Execution::Sequential);
    let (img, _) = render::render_dynamical_plane(&p, &view, &settings).unwrap();
    let bytes = render::encode_ppm(&img);
    let path = golden("dyn_t0.2_0.3_16x12.ppm");
    if std::env::var_os("BICRIT_BLESS").is_some() {
        std::fs::write(&path, &bytes).unwrap();
    }
    assert_eq!(bytes, std::fs::read(&path).unwrap());
}

#[test]
fn residual_region_is_one_component() {
    // the alpha-residual blob around 0 for (2, 1)
    let view = ViewRect::from_bounds(-0.2, 0.25, -0.25, 0.25).unwrap();
    let (_, grid) = render::render_parameter_plane(2, 1, &view, &RenderSettings::new(90, 100, DEFAULT_BUDGET)).unwrap();
    let blob = count_components(&grid, orbit::ClassTag::AlphaResidual);
    assert!(blob >= 1);
    // t = 0.01 sits in it
    let (col, row) = view.pixel_of(Complex64::new(0.01, 0.0), 90, 100).unwrap();
    assert_eq!(*grid.get(col, row), ParamClass::AlphaResidual);
    let levels = count_components(&grid, orbit::ClassTag::BothEscape);
    println!("AlphaResidual components: {blob}, BothEscape components: {levels}");
}

#[test]
fn point_examples() {
    let p = FamilyParams::new(2, 1, Complex64::new(1.0, 0.0)).unwrap();
    let trap = family::trap_disc(2, 1, DEFAULT_THETA).unwrap();
    let cd = p.critical_data();
    let rec = orbit::iterate_orbit(&p, ExtComplex::real(1.0), 100, &trap);
    assert_eq!(rec.outcome, PointClass::BasinZero { entry_time: 1 });
    assert_eq!(rec.first_trap_entry, Some(1));
    let rec = orbit::iterate_orbit(&p, ExtComplex::real(cd.beta), 100, &trap);
    assert_eq!(rec.outcome, PointClass::BasinInfinity { escape_time: 1 });
    assert_eq!(rec.first_escape, Some(1));
    assert_eq!(rec.points[0], ExtComplex::real(cd.beta));
    assert!(orbit::iterate_orbit(&p, ExtComplex::real(cd.alpha), 100, &trap).outcome.to_zero());
}

fn curve_text() -> String {
    let mut out = String::new();
    let mut push = |label: &str, r: &algebra::ResultantReport| {
        out.push_str(&format!("[{label}]\nraw = {}\ncontent = {}\n", r.raw, r.content));
        for f in &r.removed_factors {
            out.push_str(&format!("removed = {f}\n"));
        }
        out.push_str(&format!("primitive = {}\n", r.primitive));
    };
    for (m, n) in [(2, 1), (3, 1), (2, 2)] {
        push(&format!("R_f {m} {n}"), &algebra::multiplier_curve(m, n).unwrap());
        push(&format!("R_P {m} {n}"), &algebra::pc_multiplier_curve(m, n).unwrap());
    }
    let rf = algebra::multiplier_curve(2, 1).unwrap().primitive;
    let rp = algebra::pc_multiplier_curve(2, 1).unwrap().primitive;
    push("elimination 2 1", &algebra::eliminate_multiplier(&rf, &rp).unwrap());
    out
}

#[test]
fn multiplier_curves_golden() {
    let text = curve_text();
    let path = golden("multiplier_curves.txt");
    if std::env::var_os("BICRIT_BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    assert_eq!(text, std::fs::read_to_string(&path).unwrap());
}

proptest! {
    #[test]
    fn orbit_records_follow_the_map(re in -2.0f64..2.0, im in -2.0f64..2.0, tr in -1.5f64..1.5, ti in -1.5f64..1.5) {
        prop_assume!(Complex64::new(tr, ti).norm() > 1e-3);
        let p = FamilyParams::new(2, 1, Complex64::new(tr, ti)).unwrap();
        let trap = family::trap_disc(2, 1, DEFAULT_THETA).unwrap();
        let rec = orbit::iterate_orbit(&p, ExtComplex::new(re, im), 300, &trap);
        prop_assert_eq!(rec.points[0], ExtComplex::new(re, im));
        for w in rec.points.windows(2) {
            prop_assert_eq!(w[1], p.eval_map(w[0]));
        }
        prop_assert!(rec.first_trap_entry.is_none() || rec.first_escape.is_none());
    }

    #[test]
    fn pixel_centers_round_trip(cx in -5.0f64..5.0, cy in -5.0f64..5.0, w in 0.01f64..10.0, h in 0.01f64..10.0,
                                 wp in 1usize..300, hp in 1usize..300, fx in 0.0f64..1.0, fy in 0.0f64..1.0) {
        let v = ViewRect::new(Complex64::new(cx, cy), w, h).unwrap();
        let col = ((fx * wp as f64) as usize).min(wp - 1);
        let row = ((fy * hp as f64) as usize).min(hp - 1);
        let z = v.pixel_center(col, row, wp, hp);
        prop_assert_eq!(v.pixel_of(z, wp, hp), Some((col, row)));
    }
}
