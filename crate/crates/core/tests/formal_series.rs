mod common;

use std::sync::Arc;

use common::{delta_brute, R};
use logtensor::scalar::{ExactComplex, Q};
use logtensor::series::{delta_expand, DeltaPattern, LogMonomial, LogSeries, TruncationWindow, Var};
use logtensor::symbolic::ZContext;
use num_complex::Complex64;
use proptest::prelude::*;

type Raw = Vec<(i8, u8, i8, i8, u8)>;

fn series(raw: &Raw, var: Var) -> LogSeries {
    let mut s = LogSeries::zero();
    for (e, k, re, im, den) in raw {
        let m = LogMonomial { var, exponent: ExactComplex::real(Q::new(*e as i64, 2)), logpower: *k as u32 };
        let c = ExactComplex::new(Q::new(*re as i64, *den as i64 + 1), Q::new(*im as i64, 3));
        s = &s + &LogSeries::term(vec![m], c);
    }
    s
}

fn raw() -> impl Strategy<Value = Raw> {
    prop::collection::vec((-8i8..=8, 0u8..=2, -9i8..=9, -3i8..=3, 0u8..4), 0..5)
}

fn two_var(a: &Raw, b: &Raw) -> LogSeries {
    &series(a, Var::X) * &series(b, Var::X0)
}

fn exact(z: R) -> ExactComplex {
    ExactComplex::real(Q::new(*z.numer() as i64, *z.denom() as i64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multiplication_is_associative_and_commutative(a in raw(), b in raw(), c in raw(), d in raw()) {
        let (x, y, z) = (two_var(&a, &b), series(&c, Var::X), series(&d, Var::X0));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn leibniz(a in raw(), b in raw(), c in raw()) {
        let (f, g) = (two_var(&a, &b), series(&c, Var::X));
        for v in [Var::X, Var::X0] {
            prop_assert_eq!((&f * &g).ddx(v), &(&f.ddx(v) * &g) + &(&f * &g.ddx(v)));
        }
    }

    #[test]
    fn substitution_is_multiplicative(a in raw(), b in raw(), re in -3.0f64..3.0, im in -3.0f64..3.0, p in -2i64..=2) {
        prop_assume!(re.abs() + im.abs() > 1e-3);
        let ctx = ZContext::new(Complex64::new(re, im)).unwrap();
        let sub = |s: &LogSeries| s.substitute(Var::X, &|n| ctx.exp_zeta(n, p), &ctx.zeta(p));
        let (f, g) = (series(&a, Var::X), series(&b, Var::X));
        prop_assert_eq!(sub(&(&f * &g)), &sub(&f) * &sub(&g));
    }

    #[test]
    fn substitution_matches_numeric_branch(a in raw(), re in -3.0f64..3.0, im in -3.0f64..3.0, p in -2i64..=2) {
        prop_assume!(re.abs() + im.abs() > 1e-3);
        let ctx = ZContext::new(Complex64::new(re, im)).unwrap();
        let f = series(&a, Var::X);
        let symbolic = ctx.eval_const(&f.substitute(Var::X, &|n| ctx.exp_zeta(n, p), &ctx.zeta(p)));
        let arg = { let t = im.atan2(re); if t < 0.0 { t + 2.0 * std::f64::consts::PI } else { t } };
        let l = Complex64::new(Complex64::new(re, im).norm().ln(), arg + 2.0 * std::f64::consts::PI * p as f64);
        let direct: Complex64 = f.terms().map(|(k, c)| {
            let (e, lp) = k.part(Var::X);
            c.to_numeric() * (l * e.to_numeric()).exp() * l.powu(lp)
        }).sum();
        prop_assert!((symbolic - direct).norm() <= 1e-9 * (1.0 + direct.norm()), "{symbolic} vs {direct}");
    }

    #[test]
    fn invert_var_is_an_involution(a in raw()) {
        let f = series(&a, Var::X);
        prop_assert_eq!(f.invert_var(Var::X).invert_var(Var::X), f);
    }

    #[test]
    fn delta_matches_brute_force(shape in 0u8..3, zn in -6i128..=6, zd in 1i128..=4, lo0 in -5i64..=1, w0 in 0i64..=4, lo1 in -5i64..=1, w1 in 0i64..=4) {
        prop_assume!(zn != 0);
        let z = R::new(zn, zd);
        let pattern = [DeltaPattern::X1MinusZOverX0, DeltaPattern::X1MinusX0OverZ, DeltaPattern::ZMinusX1OverMinusX0][shape as usize];
        let window = Arc::new(TruncationWindow::unbounded()
            .with_bound(Var::X0, Q::from_int(lo0), Q::from_int(lo0 + w0))
            .with_bound(Var::X1, Q::from_int(lo1), Q::from_int(lo1 + w1)));
        let zc = exact(z);
        let got = delta_expand(pattern, &move |n| LogSeries::constant(if n >= 0 { zc.pow(n as u32) } else { zc.inv().unwrap().pow((-n) as u32) }), &window).unwrap();
        for e0 in lo0..=lo0 + w0 {
            for e1 in lo1..=lo1 + w1 {
                let want = exact(delta_brute(shape, z, e0 as i128, e1 as i128));
                let key = LogSeries::term(vec![
                    LogMonomial { var: Var::X0, exponent: ExactComplex::int(e0), logpower: 0 },
                    LogMonomial { var: Var::X1, exponent: ExactComplex::int(e1), logpower: 0 },
                ], ExactComplex::one());
                let (k, _) = key.terms().next().unwrap();
                prop_assert_eq!(got.coefficient(k), want, "x0^{} x1^{}", e0, e1);
            }
        }
        prop_assert!(got.terms().all(|(k, _)| window.contains(k)));
    }
}

#[test]
fn delta_oracle_spot_values() {
    // x0^{-1} δ((x1 − 2)/x0) at x0^{-3} x1^0: C(2, 2)(−2)^2 = 4
    assert_eq!(delta_brute(0, R::from_integer(2), -3, 0), R::from_integer(4));
    // z^{-1} δ((x1 − x0)/z) at x0^1 x1^1, z = 1: C(2, 1)(−1) = −2
    assert_eq!(delta_brute(1, R::from_integer(1), 1, 1), R::from_integer(-2));
}
