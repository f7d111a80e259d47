use num_complex::Complex64 as C;
use proptest::prelude::*;
use qcluster::dilog::*;

const HBARS: [f64; 3] = [0.7, 1.3, std::f64::consts::SQRT_2];

#[test]
fn suites_pass_on_the_real_axis() {
    for hb in HBARS {
        let t = std::time::Instant::now();
        let r = run_identity_suite_with(&DilogParams::real(hb).unwrap(), &SuiteOptions::default());
        for e in &r.entries {
            assert!(e.pass, "hbar {hb}: {e:?}");
            assert_eq!(e.skipped, 0);
        }
        let names: Vec<_> = r.entries.iter().map(|e| e.identity).collect();
        assert_eq!(names, ["unitarity", "difference-h", "difference-1", "involutivity", "self-duality"]);
        assert_eq!(r.get("unitarity").unwrap().samples, 100);
        assert!(t.elapsed().as_secs_f64() < 20.0);
    }
}

#[test]
fn ratio_identity_off_the_axis() {
    let p = DilogParams::new(C::new(0.8, 0.3)).unwrap();
    let r = run_identity_suite_with(&p, &SuiteOptions::default());
    let e = r.get("ratio").unwrap();
    assert!(e.pass && e.samples >= 15, "{e:?}");
    assert!(r.all_pass(), "{r:?}");
}

#[test]
fn involutivity_constant_at_root_two() {
    let hb = std::f64::consts::SQRT_2;
    let p = DilogParams::real(hb).unwrap();
    let x = C::new(1.7, 0.0);
    let cfg = QuadratureConfig::default();
    let c = phi_eval(x, &p, &cfg).unwrap() * phi_eval(-x, &p, &cfg).unwrap() / (x * x / (4.0 * std::f64::consts::PI * C::i() * hb)).exp();
    let want = C::from_polar(1.0, -std::f64::consts::PI * (hb + 1.0 / hb) / 12.0);
    assert!((c - want).norm() < 1e-8);
}

#[test]
fn suite_report_serializes() {
    let r = run_identity_suite(&DilogParams::real(0.7).unwrap(), 3, 1e-8);
    let v = r.to_json();
    assert_eq!(v["entries"].as_array().unwrap().len(), 5);
    assert_eq!(v["entries"][0]["identity"], "unitarity");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn doubling_nodes_is_stable(hb in 0.55f64..1.8, x in -8.0f64..8.0, y in -0.5f64..0.5) {
        let p = DilogParams::real(hb).unwrap();
        let z = C::new(x, y * p.strip());
        let a = log_phi_integral(z, &p, &QuadratureConfig::default()).unwrap();
        let b = log_phi_integral(z, &p, &QuadratureConfig { nodes: 32, ..QuadratureConfig::default() }).unwrap();
        prop_assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
    }

    #[test]
    fn unitary_on_the_real_line(hb in 0.3f64..3.0, x in -10.0f64..10.0) {
        let p = DilogParams::real(hb).unwrap();
        let v = phi_eval(C::new(x, 0.0), &p, &QuadratureConfig::default()).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn psi_split_identity(re in -0.5f64..0.5, im in -0.5f64..0.5, zr in -2.0f64..2.0, zi in -2.0f64..2.0) {
        let q = C::new(re, im);
        let z = C::new(zr, zi);
        prop_assume!((1.0 + q * z).norm() > 1e-3 && (1.0 + q * q * q * z).norm() > 1e-3);
        let n = 200;
        let split = psi_eval(q * z, q * q, n).unwrap() * psi_eval(z / q, q * q, n).unwrap();
        let whole = psi_eval(z, q, n).unwrap();
        prop_assert!((split - whole).norm() < 1e-9 * whole.norm().max(1.0));
    }
}
