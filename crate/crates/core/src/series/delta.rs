//! Binomial and formal delta-function expansions.

use std::sync::Arc;

use super::{LogMonomial, LogSeries, TruncationWindow, Var};
use crate::error::{Error, Result};
use crate::scalar::{binom, ExactComplex, Q};

/// Second summand of a binomial: another formal variable or a scalar.
#[derive(Clone, Debug)]
pub enum BinomOperand {
    Var(Var),
    Scalar(LogSeries),
}

/// The three delta-function shapes appearing in the Jacobi identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaPattern {
    /// `x0^{-1} δ((x1 − z)/x0)`
    X1MinusZOverX0,
    /// `z^{-1} δ((x1 − x0)/z)`
    X1MinusX0OverZ,
    /// `x0^{-1} δ((z − x1)/(−x0))` (note the `x0^{-1}`, not `(−x0)^{-1}`, prefactor)
    ZMinusX1OverMinusX0,
}

fn ceil(q: &Q) -> i64 {
    (-(-q).floor()).to_i64().expect("bound out of range")
}

fn floor(q: &Q) -> i64 {
    q.floor().to_i64().expect("bound out of range")
}

fn int_range(window: &TruncationWindow, var: Var) -> Result<(i64, i64)> {
    let (lo, hi) = window
        .bound(var)
        .ok_or_else(|| Error::Unsupported(format!("window must bound {var}")))?;
    Ok((ceil(lo), floor(hi)))
}

/// `(a ± b)^n = Σ_{i≥0} C(n,i) (±1)^i a^{n−i} b^i`, truncated to `window`.
pub fn binom_expand(a: Var, b: &BinomOperand, sign: i8, n: &ExactComplex, window: &Arc<TruncationWindow>) -> Result<LogSeries> {
    let mut limits = Vec::new();
    if let Some(k) = n.to_i64().filter(|k| *k >= 0) {
        limits.push(k);
    }
    if let Some((lo, _)) = window.bound(a) {
        limits.push(floor(&(&n.re - lo)));
    }
    if let BinomOperand::Var(bv) = b {
        if let Some((_, hi)) = window.bound(*bv) {
            limits.push(floor(hi));
        }
    }
    let top = *limits
        .iter()
        .min()
        .ok_or_else(|| Error::Unsupported("binomial expansion needs a finite window".into()))?;
    let mut out = LogSeries::zero_in(window);
    let s = ExactComplex::int(sign as i64);
    for i in 0..=top.max(-1) {
        let i = i as u32;
        let c = &binom(n, i) * &s.pow(i);
        let apow = LogSeries::power(a, n - &ExactComplex::int(i as i64));
        let bpow = match b {
            BinomOperand::Var(bv) => LogSeries::power(*bv, ExactComplex::int(i as i64)),
            BinomOperand::Scalar(z) => z.pow(i),
        };
        out.add_scaled(&(&apow * &bpow), &c);
    }
    Ok(out)
}

/// Truncated expansion of a delta-function pattern. `zpow(n)` must return `z^n`.
pub fn delta_expand(pattern: DeltaPattern, zpow: &dyn Fn(i64) -> LogSeries, window: &Arc<TruncationWindow>) -> Result<LogSeries> {
    if zpow(1).is_zero() {
        return Err(Error::ZeroPoint);
    }
    let (lo0, hi0) = int_range(window, Var::X0)?;
    let (lo1, hi1) = int_range(window, Var::X1)?;
    let mut out = LogSeries::zero_in(window);
    let mono = |e0: i64, e1: i64| {
        LogSeries::term(
            vec![
                LogMonomial { var: Var::X0, exponent: ExactComplex::int(e0), logpower: 0 },
                LogMonomial { var: Var::X1, exponent: ExactComplex::int(e1), logpower: 0 },
            ],
            ExactComplex::one(),
        )
    };
    match pattern {
        DeltaPattern::X1MinusZOverX0 => {
            // Σ_n (x1 − z)^n x0^{−n−1}
            for n in (-hi0 - 1)..=(-lo0 - 1) {
                let nn = ExactComplex::int(n);
                for i in 0.. {
                    let e1 = n - i;
                    if e1 < lo1 {
                        break;
                    }
                    if e1 > hi1 {
                        continue;
                    }
                    let c = &binom(&nn, i as u32) * &ExactComplex::sign(i);
                    out.add_scaled(&(&mono(-n - 1, e1) * &zpow(i)), &c);
                }
            }
        }
        DeltaPattern::X1MinusX0OverZ => {
            // Σ_n (x1 − x0)^n z^{−n−1}
            for i in lo0.max(0)..=hi0 {
                for e1 in lo1..=hi1 {
                    let n = e1 + i;
                    let c = &binom(&ExactComplex::int(n), i as u32) * &ExactComplex::sign(i);
                    out.add_scaled(&(&mono(i, e1) * &zpow(-n - 1)), &c);
                }
            }
        }
        DeltaPattern::ZMinusX1OverMinusX0 => {
            // x0^{-1} Σ_n (z − x1)^n (−x0)^{−n}
            for n in (-hi0 - 1)..=(-lo0 - 1) {
                for i in lo1.max(0)..=hi1 {
                    let c = &(&binom(&ExactComplex::int(n), i as u32) * &ExactComplex::sign(i)) * &ExactComplex::sign(n);
                    out.add_scaled(&(&mono(-n - 1, i) * &zpow(n - i)), &c);
                }
            }
        }
    }
    Ok(out)
}

/// `z^n` for an exact nonzero scalar.
pub fn exact_powers(z: ExactComplex) -> impl Fn(i64) -> LogSeries {
    move |n| {
        if n >= 0 {
            LogSeries::constant(z.pow(n as u32))
        } else {
            LogSeries::constant(z.inv().expect("z = 0").pow((-n) as u32))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::MonoKey;

    fn window() -> Arc<TruncationWindow> {
        Arc::new(
            TruncationWindow::unbounded()
                .with_bound(Var::X0, Q::from_int(-6), Q::from_int(6))
                .with_bound(Var::X1, Q::from_int(-6), Q::from_int(6)),
        )
    }

    fn key(e0: i64, e1: i64) -> MonoKey {
        let s = LogSeries::term(
            vec![
                LogMonomial { var: Var::X0, exponent: ExactComplex::int(e0), logpower: 0 },
                LogMonomial { var: Var::X1, exponent: ExactComplex::int(e1), logpower: 0 },
            ],
            ExactComplex::one(),
        );
        let k = s.terms().next().unwrap().0.clone();
        k
    }

    #[test]
    fn delta_coefficients() {
        let z = ExactComplex::int(3);
        let d = delta_expand(DeltaPattern::X1MinusZOverX0, &exact_powers(z.clone()), &window()).unwrap();
        assert_eq!(d.coefficient(&key(-3, 1)), ExactComplex::int(-6));
        assert_eq!(d.coefficient(&key(-1, 0)), ExactComplex::one());
        assert_eq!(d.residue(Var::X0), LogSeries::one());
    }

    #[test]
    fn two_term_delta_identity() {
        // x0^{-1}δ((x1−z)/x0) − x0^{-1}δ((z−x1)/(−x0)) = z^{-1}δ((x1−x0)/z)
        let z = ExactComplex::rat(-2, 3);
        let zp = exact_powers(z);
        let w = window();
        let a = delta_expand(DeltaPattern::X1MinusZOverX0, &zp, &w).unwrap();
        let b = delta_expand(DeltaPattern::ZMinusX1OverMinusX0, &zp, &w).unwrap();
        let c = delta_expand(DeltaPattern::X1MinusX0OverZ, &zp, &w).unwrap();
        // every coefficient is a single binomial term, so the identity holds key-by-key
        assert_eq!(&a - &b, c);
    }

    #[test]
    fn binomials() {
        let w = Arc::new(TruncationWindow::unbounded().with_bound(Var::X1, Q::from_int(-10), Q::from_int(10)));
        let s = binom_expand(Var::X1, &BinomOperand::Scalar(LogSeries::one()), -1, &ExactComplex::int(2), &w).unwrap();
        let expect = &(&LogSeries::power(Var::X1, ExactComplex::int(2)) - &LogSeries::power(Var::X1, ExactComplex::one()).scale(&ExactComplex::int(2)))
            + &LogSeries::one();
        assert_eq!(s, expect.with_window(&w));
        let w2 = Arc::new(
            TruncationWindow::unbounded()
                .with_bound(Var::X, Q::from_int(-2), Q::from_int(1))
                .with_bound(Var::X0, Q::from_int(0), Q::from_int(4)),
        );
        let h = binom_expand(Var::X, &BinomOperand::Scalar(LogSeries::int(1)), -1, &ExactComplex::rat(1, 2), &w2).unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(h.coefficient(&MonoKey::single(Var::X, ExactComplex::rat(-3, 2), 0)), ExactComplex::rat(-1, 8));
    }
}
