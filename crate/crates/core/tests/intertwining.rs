use logtensor::error::Error;
use logtensor::fixtures::{random_log_family, Fixture, FixtureSpec, HeisenbergFamily, JordanFamily};
use logtensor::intertwining::*;
use logtensor::scalar::{ExactComplex, Q};
use logtensor::series::{LogSeries, Var};
use logtensor::symbolic::ZContext;
use proptest::prelude::*;

fn heis(l: &str, m: &str, cutoff: u32) -> Fixture {
    Fixture::load(&format!("heis:{l},{m}").parse().unwrap(), cutoff).unwrap()
}

fn small_cfg() -> JacobiConfig {
    JacobiConfig { a_range: (-1, 1), k_range: (-1, 1), ..JacobiConfig::default() }
}

#[test]
fn heisenberg_operators_obey_the_weight_law() {
    for (l, m) in [("0", "0"), ("1/2", "1/2"), ("1", "-1"), ("-1/3", "2/3")] {
        let f = heis(l, m, 4);
        let r = f.op.weight_law_report();
        assert!(r.pass, "{l},{m}: {:?}", r.offending);
    }
}

#[test]
fn lowest_coefficient_is_x_to_the_lambda_mu() {
    let f = heis("1/2", "1/3", 3);
    // Y(v_λ, x)v_μ = x^{λμ} exp(λ Σ p_n x^n / n) v_{λ+μ}
    let top = f.op.component(0, 0);
    assert_eq!(top[&0], LogSeries::power(Var::X, ExactComplex::rat(1, 6)));
    let p1 = (0..f.op.ty.w3.dim()).find(|r| f.op.ty.w3.space.basis()[*r].name == "p1").unwrap();
    assert_eq!(top[&p1], LogSeries::power(Var::X, ExactComplex::rat(7, 6)).scale(&ExactComplex::rat(1, 2)));
}

#[test]
fn jacobi_detects_a_planted_defect() {
    let f = heis("1/2", "-1/2", 4);
    let mut i = i_from_y(&f.op, &ZContext::real(1.0).unwrap(), 0);
    assert!(verify_p_jacobi(&i, &f.alg, &small_cfg()).unwrap().pass);
    let r = *i.component(1, 0).keys().next().unwrap();
    i.perturb(1, 0, r, ExactComplex::rat(1, 7));
    let rep = verify_p_jacobi(&i, &f.alg, &small_cfg()).unwrap();
    assert!(!rep.pass);
    assert!(!rep.offending.is_empty());
    assert!(!verify_p_sl2(&i, Sl2Form::Bracket, 1e-9, None).unwrap().pass);
}

#[test]
fn jacobi_at_a_numeric_point() {
    let f = heis("1/2", "1/2", 4);
    let ctx = ZContext::new(num_complex::Complex64::new(0.3, -1.7)).unwrap();
    let i = i_from_y(&f.op, &ctx, 1);
    let rep = verify_p_jacobi(&i, &f.alg, &small_cfg()).unwrap();
    assert!(rep.pass, "{:?}", rep.offending);
}

/// With only the vacuum available every grading-compatible map passes.
#[test]
fn vacuum_jacobi_holds_for_any_graded_family() {
    for seed in 0..5 {
        let f = Fixture::load(&FixtureSpec::Jordan { r: 2, seed }, 0).unwrap();
        let i = i_from_y(&f.op, &ZContext::real(2.0).unwrap(), 0);
        assert!(verify_p_jacobi(&i, &f.alg, &JacobiConfig::default()).unwrap().pass);
    }
}

#[test]
fn both_sl2_forms_and_residue_route_agree() {
    let f = heis("1", "-1", 4);
    let i = i_from_y(&f.op, &ZContext::real(1.0).unwrap(), 0);
    let a = verify_p_sl2(&i, Sl2Form::Bracket, 1e-9, None).unwrap();
    let b = verify_p_sl2(&i, Sl2Form::Rearranged, 1e-9, None).unwrap();
    let c = verify_p_sl2_residue(&i, 1e-9, None).unwrap();
    assert!(a.pass && b.pass && c.pass);
    assert_eq!((a.checked, a.skipped, &a.offending), (c.checked, c.skipped, &c.offending));
}

#[test]
fn q_side_checks_pass_on_adjoints() {
    let f = heis("1/2", "1/2", 4);
    let i = i_from_y(&f.op, &ZContext::real(2.0).unwrap(), 0);
    let j = adjoint(&i, &f.alg).unwrap();
    assert_eq!(j.kind, MapKind::Q);
    assert!(verify_q_jacobi(&j, &f.alg, &small_cfg()).unwrap().pass);
    assert!(verify_q_sl2(&j, 1e-9, None).unwrap().pass);
    assert!(verify_q_sl2_residue(&j, 1e-9, None).unwrap().pass);
    // adjoint is an involution
    let back = adjoint(&j, &f.alg).unwrap();
    assert!(back.compare(&i, "adjoint twice", "adjoint", 1e-9).exact_zero);
}

#[test]
fn q_map_round_trip() {
    let f = heis("1/2", "1/2", 4);
    let ctx = ZContext::real(-1.0).unwrap();
    let b = b_r(&f.op, &f.alg, 0).unwrap();
    let j = i_q_from_y(&b, &f.alg, &ctx, 0).unwrap();
    let y = y_q_from_i(&j, &f.alg, 0, None).unwrap();
    let rep = y.compare(&b, "Q round trip", "roundtrip", 1e-9);
    assert!(rep.pass && rep.exact_zero, "{:?}", rep.offending);
}

#[test]
fn elm_on_the_module_vertex_operator() {
    let f = heis("0", "1/2", 5);
    let i = i_from_y(&f.op, &ZContext::real(1.0).unwrap(), 0);
    let alpha = (0..f.alg.module.dim()).find(|u| f.alg.vector_name(*u) == "p1").unwrap();
    let cfg = JacobiConfig { vectors: Some(vec![alpha]), ..JacobiConfig::default() };
    assert!(verify_elm(&i, &f.alg, &cfg).unwrap().pass);
}

#[test]
fn log_power_guard() {
    let y = random_log_family(&JordanFamily::new(3, 4)).unwrap();
    let i = i_from_y(&y, &ZContext::real(1.0).unwrap(), 0);
    assert_eq!(y.max_logpower(), 2);
    assert!(matches!(y_from_i(&i, 0, Some(1)), Err(Error::LogPowerOverflow { found: 2, max: 1 })));
}

#[test]
fn transport_to_another_point_and_back() {
    let y = random_log_family(&JordanFamily::new(2, 9)).unwrap();
    let i = i_from_y(&y, &ZContext::real(1.0).unwrap(), 0);
    let moved = transport_z(&i, &ZContext::real(3.0).unwrap()).unwrap();
    let back = transport_z(&moved, &ZContext::real(1.0).unwrap()).unwrap();
    assert!(back.compare(&i, "transport", "transport", 1e-9).exact_zero);
}

#[test]
fn omega_twice_is_identity_up_to_branch() {
    // Ω_{−1−r} ∘ Ω_r = id
    let f = heis("1/2", "-1/2", 4);
    for r in -1..=1 {
        let back = omega_r(&omega_r(&f.op, r).unwrap(), -1 - r).unwrap();
        assert!(back.compare(&f.op, "Ω twice", "omega", 1e-9).exact_zero, "r = {r}");
    }
}

#[test]
fn unit_laws_on_the_algebra_itself() {
    let fam = HeisenbergFamily::new(4).unwrap();
    let y = fam.intw(&Q::zero(), &Q::zero()).unwrap();
    let ctx = ZContext::real(3.0).unwrap();
    let (eta, rep) = unit_eta_left(&i_from_y(&y, &ctx, 0), &fam.alg, 1e-9).unwrap();
    assert!(rep.pass);
    assert!(eta.iter().all(|(b, v)| v.len() == 1 && v[b] == LogSeries::one()));
    let (_, rep) = unit_eta_right(&i_from_y(&omega_r(&y, 0).unwrap(), &ctx, 0), &fam.alg, 1e-9).unwrap();
    assert!(rep.pass);
}

#[test]
fn unit_law_rejects_z_dependent_eta() {
    let fam = HeisenbergFamily::new(4).unwrap();
    let y = fam.intw(&Q::zero(), &Q::new(1, 2)).unwrap();
    let ctx = ZContext::real(2.0).unwrap();
    let mut i = i_from_y(&y, &ctx, 0);
    // scale I(1 ⊗ w) by z for one w
    let v = i.component(0, 1);
    let scaled = v.iter().map(|(r, s)| (*r, s * &ctx.z_pow(1))).collect();
    i.insert(0, 1, scaled);
    let (_, rep) = unit_eta_left(&i, &fam.alg, 1e-9).unwrap();
    assert!(!rep.pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn round_trip_is_exact(seed in 0u64..10_000, r in 1u32..=3, zi in 0usize..4, p in -2i64..=2) {
        let z = [1.0, -1.0, 4.0, -0.5][zi];
        let y = random_log_family(&JordanFamily::new(r, seed)).unwrap();
        let i = i_from_y(&y, &ZContext::real(z).unwrap(), p);
        let back = y_from_i(&i, p, None).unwrap();
        let rep = back.compare(&y, "round trip", "roundtrip", 0.0);
        prop_assert!(rep.pass && rep.exact_zero);
    }

    #[test]
    fn branch_shift_is_exact(seed in 0u64..10_000, r in 1u32..=3, p in -2i64..=2, d in -3i64..=3) {
        let y = random_log_family(&JordanFamily::new(r, seed)).unwrap();
        let i = i_from_y(&y, &ZContext::real(-2.0).unwrap(), p);
        let (lhs, rhs) = branch_shift(&i, p, p + d, None).unwrap();
        prop_assert!(lhs.compare(&rhs, "branch shift", "branch-shift", 0.0).exact_zero);
    }

    #[test]
    fn mu_inverse_undoes_mu(seed in 0u64..10_000, r in 1u32..=3, zi in 0usize..3) {
        let z = [1.0, 2.0, -1.0][zi];
        let y = random_log_family(&JordanFamily::new(r, seed)).unwrap();
        let i = i_from_y(&y, &ZContext::real(z).unwrap(), 0);
        let back = mu_inverse(&mu(&i).unwrap()).unwrap();
        prop_assert!(back.compare(&i, "μ⁻¹μ", "mu", 1e-9).pass);
    }

    #[test]
    fn b_r_factorizations_agree(seed in 0u64..10_000, r in -1i64..=1, r3 in -2i64..=2) {
        let f = Fixture::load(&FixtureSpec::Jordan { r: 2, seed }, 0).unwrap();
        let a = b_r(&f.op, &f.alg, r).unwrap();
        let b = b_r_factorized(&f.op, &f.alg, r + 2 * r3 + 1, r3).unwrap();
        prop_assert!(b.compare(&a, "B_r", "b-r", 0.0).exact_zero);
    }
}
