use centext::rh::*;
use centext::rootdata::root_data;

fn d4_report(opts: &MonodromyOptions) -> MonodromyReport {
    let rd = root_data("D4").unwrap();
    let rep = SphericalRep::build(&rd, None).unwrap();
    monodromy_report(&rd, &rep, opts).unwrap()
}

#[test]
fn d4_relations_hold() {
    let rd = root_data("D4").unwrap();
    let (rec, rep) = verify_phi(&rd, None, &MonodromyOptions::new(1e-6));
    assert!(rec.pass, "{:?}", rec.failed_items());
    assert_eq!(rep.unwrap().dim, 12);
}

#[test]
fn residuals_shrink_with_tolerance() {
    let floor = 10.0 * f64::EPSILON;
    let mut prev: Option<MonodromyReport> = None;
    for i in 0..4 {
        let mut o = MonodromyOptions::new(1e-6);
        o.integrator_tol = Some(1e-9 / 2f64.powi(i));
        let r = d4_report(&o);
        if let Some(p) = &prev {
            let pairs = p.hecke_residuals.iter().zip(&r.hecke_residuals).chain([(&p.product_residual, &r.product_residual)]);
            for (a, b) in pairs {
                assert!(b <= a || *b < floor, "residual grew from {a:e} to {b:e}");
            }
        }
        prev = Some(r);
    }
}

#[test]
fn monodromy_is_invariant_under_path_deformation() {
    let tol = 1e-6;
    let rd = root_data("D4").unwrap();
    let rep = SphericalRep::build(&rd, None).unwrap();
    let sys = rep.system().unwrap();
    let iopts = IntegratorOptions::with_tol(1e-12);
    let base = sys.default_delta();
    let reference = all_monodromies(&sys, base, &iopts).unwrap();
    for f in [0.75, 1.25] {
        let ys = all_monodromies(&sys, base * f, &iopts).unwrap();
        for ((a, _), (b, _)) in reference.iter().zip(&ys) {
            assert!(op_norm(&(a - b)) < 10.0 * tol);
        }
    }
}

#[test]
fn deformed_b_satisfies_hecke_relations() {
    let rd = root_data("A3").unwrap();
    let params = parse_leg_params("0,1/40;-1/50,1/30").unwrap();
    let (rec, rep) = verify_phi(&rd, params, &MonodromyOptions::new(1e-8));
    assert!(rec.pass, "{:?}", rec.failed_items());
    assert!(rep.unwrap().leading_terms.is_empty());
}
