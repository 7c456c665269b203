//! Exact bookkeeping for the point `z` and its logarithm branches.
//!
//! `log z` is written as `a·τ + b·πi` with `τ = log T` (a formal symbol whose
//! numeric value is stored here) and `b` rational. Then
//! `e^{n l_p(z)} = T^{an} U^{(b+2p)n}` and `l_p(z) = a·log T + (b+2p)·log U`
//! are exact series in the symbolic variables. For `z = ±1` no `T` is
//! needed and everything reduces to Gaussian rationals times powers of `πi`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::scalar::{ExactComplex, NumericComplex, Q};
use crate::series::branch::arg_0_2pi;
use crate::series::{LogMonomial, LogSeries, MonoKey, Var};

#[derive(Clone, Debug, PartialEq)]
pub struct ZContext {
    pub z: NumericComplex,
    /// coefficient of `τ` in `log z` (0 or ±1)
    pub a: i64,
    /// coefficient of `πi` in `log z`
    pub b: Q,
    /// numeric value of `τ`
    pub tau: NumericComplex,
}

impl ZContext {
    pub fn new(z: NumericComplex) -> Result<Self> {
        if z.norm() == 0.0 {
            return Err(Error::ZeroPoint);
        }
        let one = NumericComplex::new(1.0, 0.0);
        if z == one {
            return Ok(ZContext { z, a: 0, b: Q::zero(), tau: NumericComplex::new(0.0, 0.0) });
        }
        if z == -one {
            return Ok(ZContext { z, a: 0, b: Q::one(), tau: NumericComplex::new(0.0, 0.0) });
        }
        if z.im == 0.0 {
            let b = if z.re > 0.0 { Q::zero() } else { Q::one() };
            return Ok(ZContext { z, a: 1, b, tau: NumericComplex::new(z.re.abs().ln(), 0.0) });
        }
        let tau = NumericComplex::new(z.norm().ln(), arg_0_2pi(z));
        Ok(ZContext { z, a: 1, b: Q::zero(), tau })
    }

    pub fn real(z: f64) -> Result<Self> {
        Self::new(NumericComplex::new(z, 0.0))
    }

    pub fn from_exact(z: &ExactComplex) -> Result<Self> {
        Self::new(z.to_numeric())
    }

    /// True when no `T` symbol is involved (z = ±1).
    pub fn is_unimodular_root(&self) -> bool {
        self.a == 0
    }

    /// `l_p(z)` as a series in the symbols.
    pub fn zeta(&self, p: i64) -> LogSeries {
        let mut s = LogSeries::log(Var::T).scale(&ExactComplex::int(self.a));
        let c = &self.b + &Q::from_int(2 * p);
        s.add_scaled(&LogSeries::log(Var::U), &ExactComplex::real(c));
        s
    }

    /// `e^{n l_p(z)}`.
    pub fn exp_zeta(&self, n: &ExactComplex, p: i64) -> LogSeries {
        let c = &self.b + &Q::from_int(2 * p);
        LogSeries::term(
            vec![
                LogMonomial { var: Var::T, exponent: n.scale(&Q::from_int(self.a)), logpower: 0 },
                LogMonomial { var: Var::U, exponent: n.scale(&c), logpower: 0 },
            ],
            ExactComplex::one(),
        )
    }

    /// `z^n` for integral `n` (branch-independent).
    pub fn z_pow(&self, n: i64) -> LogSeries {
        self.exp_zeta(&ExactComplex::int(n), 0)
    }

    /// Context for `z^{-1}` sharing the same `T` symbol; its principal
    /// logarithm is `−log z` or `−log z + 2πi`.
    pub fn inverse(&self) -> ZContext {
        let positive_real = self.z.im == 0.0 && self.z.re > 0.0;
        let b = if positive_real { -&self.b } else { &Q::from_int(2) - &self.b };
        ZContext { z: NumericComplex::new(1.0, 0.0) / self.z, a: -self.a, b, tau: self.tau }
    }

    /// The integer `p` with `log z = −(log z^{-1} + 2πip)`.
    pub fn inversion_branch(&self) -> i64 {
        let inv = self.inverse();
        let s = &(&self.b + &inv.b) / &Q::from_int(-2);
        s.to_i64().expect("branch index must be integral")
    }

    fn logs(&self) -> impl Fn(Var) -> Option<NumericComplex> + '_ {
        move |v| match v {
            Var::T => Some(self.tau),
            Var::U => Some(NumericComplex::new(0.0, PI)),
            _ => None,
        }
    }

    /// Evaluates the symbols, keeping formal variables.
    pub fn eval(&self, s: &LogSeries) -> BTreeMap<MonoKey, NumericComplex> {
        s.eval_vars(&self.logs())
    }

    /// Numeric value of a symbol-only series.
    pub fn eval_const(&self, s: &LogSeries) -> NumericComplex {
        let m = self.eval(s);
        let mut total = NumericComplex::new(0.0, 0.0);
        for (k, v) in m {
            assert!(k.is_one(), "series still involves formal variables: {k}");
            total += v;
        }
        total
    }
}

/// True if `s` is a constant or involves only `U` (no `T`, no formal variable).
pub fn is_z_free(s: &LogSeries) -> bool {
    s.terms().all(|(k, _)| k.vars().all(|v| v == Var::U))
}
