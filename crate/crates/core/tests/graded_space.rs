mod common;

use std::sync::Arc;

use common::partition_count;
use logtensor::error::Error;
use logtensor::fixtures::{build_fock, jordan_module, partitions, trivial_algebra, HeisenbergFamily, MAX_CUTOFF};
use logtensor::graded::{basis_svec, check_strong_grading, contragredient, contragredient_explicit, pair, power_l0, LinearMap, PowerBase};
use logtensor::scalar::{ExactComplex, Q};
use logtensor::series::Var;
use proptest::prelude::*;

fn q(s: &str) -> Q {
    s.parse().unwrap()
}

#[test]
fn fock_dimensions_match_partition_counts() {
    for n in 0..=MAX_CUTOFF {
        assert_eq!(partitions(n).len() as u64, partition_count(n as usize), "p({n})");
    }
    let lambda = q("1/3");
    let m = build_fock(&lambda, 8).unwrap();
    let base = &lambda * &lambda / Q::from_int(2);
    for n in 0..=8u32 {
        let w = ExactComplex::real(&base + &Q::from_int(n as i64));
        assert_eq!(m.space.with_weight(&w).len() as u64, partition_count(n as usize), "level {n}");
    }
}

#[test]
fn cutoff_guard() {
    assert!(matches!(build_fock(&Q::zero(), MAX_CUTOFF + 1), Err(Error::Resource(_))));
    assert!(matches!(build_fock(&Q::zero(), 1), Err(Error::Unsupported(_))));
}

#[test]
fn heisenberg_fixture_is_strongly_graded() {
    let fam = HeisenbergFamily::new(6).unwrap();
    for l in ["0", "1/2", "-1", "3/4"] {
        let m = fam.fock(&q(l)).unwrap();
        let r = check_strong_grading(&m, &fam.alg);
        assert!(r.pass, "M({l}): {:?}", r.offending);
    }
}

/// `[α_m, α_n] = m δ_{m+n,0}` on every vector whose images stay inside the cutoff.
#[test]
fn heisenberg_commutator() {
    let fam = HeisenbergFamily::new(6).unwrap();
    let alpha = (0..fam.alg.module.dim()).find(|u| fam.alg.vector_name(*u) == "p1").unwrap();
    let m = fam.fock(&q("1/2")).unwrap();
    let lowest = m.weight(0).re.clone();
    let mut checked = 0;
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            let (Some(x), Some(y)) = (m.mode(alpha, a), m.mode(alpha, b)) else { continue };
            let comm = x.compose(y).sub(&y.compose(x));
            for v in 0..m.dim() {
                let level = &m.weight(v).re - &lowest;
                // both orders must stay inside the truncation
                if level + Q::from_int((-a).max(0) + (-b).max(0)) > Q::from_int(6) {
                    continue;
                }
                let got = comm.apply_exact(&[(v, ExactComplex::one())].into_iter().collect());
                let want: std::collections::BTreeMap<_, _> =
                    if a + b == 0 && a != 0 { [(v, ExactComplex::int(a))].into_iter().collect() } else { Default::default() };
                assert_eq!(got, want, "[α_{a}, α_{b}] on basis {v}");
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn planted_weight_defect_is_named() {
    let fam = HeisenbergFamily::new(4).unwrap();
    let alpha = (0..fam.alg.module.dim()).find(|u| fam.alg.vector_name(*u) == "p1").unwrap();
    let mut m = (*fam.fock(&q("1/2")).unwrap()).clone();
    let mut op = m.modes[&(alpha, -1)].clone();
    // α_{-1} must raise the weight by one; send the vacuum to itself instead
    op.insert(0, 0, ExactComplex::one());
    m.modes.insert((alpha, -1), op);
    let r = check_strong_grading(&m, &fam.alg);
    assert!(!r.pass);
    assert!(r.offending.iter().any(|o| o.contains("p1_-1")), "{:?}", r.offending);
}

#[test]
fn empty_module_passes() {
    let m = jordan_module("empty", &[]).unwrap();
    assert!(check_strong_grading(&m, &trivial_algebra()).pass);
}

#[test]
fn double_contragredient_is_the_module() {
    let fam = HeisenbergFamily::new(4).unwrap();
    let m = fam.fock(&q("1/2")).unwrap();
    let d = contragredient(&m, &fam.alg).unwrap();
    assert!(Arc::ptr_eq(&contragredient(&d, &fam.alg).unwrap(), &m));
    // built from scratch, the double dual has the same matrices
    let dd = contragredient_explicit(&contragredient_explicit(&m, &fam.alg).unwrap(), &fam.alg).unwrap();
    assert_eq!(dd.modes, m.modes);
    assert_eq!(dd.l_minus, m.l_minus);
    assert_eq!(dd.l_plus, m.l_plus);
    assert!(d.space.weights().eq(m.space.weights()));
}

#[test]
fn contragredient_of_jordan_module_keeps_weights() {
    let m = Arc::new(jordan_module("J", &[(q("1/2"), 3), (q("1"), 2)]).unwrap());
    let alg = trivial_algebra();
    let d = contragredient(&m, &alg).unwrap();
    assert!(d.space.weights().eq(m.space.weights()));
    assert!(check_strong_grading(&d, &alg).pass);
}

fn transpose_holds(l_dual: &LinearMap, l: &LinearMap, dim: usize) -> bool {
    (0..dim).all(|a| {
        (0..dim).all(|b| {
            let lhs = pair(&l_dual.apply(&basis_svec(a)), &basis_svec(b));
            let rhs = pair(&basis_svec(a), &l.apply(&basis_svec(b)));
            lhs == rhs
        })
    })
}

#[test]
fn dual_l1_is_transpose_of_l_minus_1() {
    let fam = HeisenbergFamily::new(5).unwrap();
    let m = fam.fock(&q("-1/2")).unwrap();
    let d = contragredient(&m, &fam.alg).unwrap();
    assert!(transpose_holds(&d.l_plus, &m.l_minus, m.dim()));
    assert!(transpose_holds(&d.l_minus, &m.l_plus, m.dim()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `x^{L(0)}` followed by `x^{-L(0)}` is the identity, including the
    /// logarithmic part on Jordan blocks.
    #[test]
    fn x_l0_round_trip(size in 1u32..=4, num in -8i64..=8, v in 0usize..4) {
        let m = jordan_module("J", &[(Q::new(num, 4), size)]).unwrap();
        prop_assume!(v < m.dim());
        let up = power_l0(&m, &basis_svec(v), &PowerBase::var(Var::X, 1)).unwrap();
        let back = power_l0(&m, &up, &PowerBase::var(Var::X, -1)).unwrap();
        prop_assert_eq!(back, basis_svec(v));
        prop_assert_eq!(up.values().map(|s| s.max_logpower(Var::X)).max().unwrap(), size - 1 - v as u32);
    }
}
