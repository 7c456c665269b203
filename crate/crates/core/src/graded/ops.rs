//! `b^{L(0)}` for formal or symbolic bases, and `e^{c L(±1)}`.

use std::collections::BTreeMap;

use super::{ExactVec, GeneralizedModule, LinearMap, SVec};
use crate::error::{Error, Result};
use crate::scalar::{ExactComplex, Q};
use crate::series::{LogSeries, Var};
use crate::symbolic::ZContext;

/// A base `b` given by `n ↦ b^n` and `log b`, so that
/// `b^{L(0)} w = b^{n} Σ_j (log b)^j N^j w / j!` on weight `n`.
pub struct PowerBase<'a> {
    pow: Box<dyn Fn(&ExactComplex) -> LogSeries + 'a>,
    log: LogSeries,
}

impl<'a> PowerBase<'a> {
    pub fn new(pow: impl Fn(&ExactComplex) -> LogSeries + 'a, log: LogSeries) -> Self {
        PowerBase { pow: Box::new(pow), log }
    }

    /// `var^c`.
    pub fn var(var: Var, c: i64) -> Self {
        PowerBase::new(move |n| LogSeries::power(var, n.scale(&Q::from_int(c))), LogSeries::log(var).scale(&ExactComplex::int(c)))
    }

    /// `e^{cπi}`.
    pub fn pi_i(c: Q) -> Self {
        let log = LogSeries::log(Var::U).scale(&ExactComplex::real(c.clone()));
        PowerBase::new(move |n| LogSeries::power(Var::U, n.scale(&c)), log)
    }

    /// `e^{c·l_p(z)}`.
    pub fn zeta(ctx: &'a ZContext, p: i64, c: i64) -> Self {
        let log = ctx.zeta(p).scale(&ExactComplex::int(c));
        PowerBase::new(move |n| ctx.exp_zeta(&n.scale(&Q::from_int(c)), p), log)
    }

    pub fn times(self, other: PowerBase<'a>) -> PowerBase<'a> {
        let log = &self.log + &other.log;
        let (a, b) = (self.pow, other.pow);
        PowerBase::new(move |n| &a(n) * &b(n), log)
    }

    pub fn pow(&self, n: &ExactComplex) -> LogSeries {
        (self.pow)(n)
    }

    pub fn log(&self) -> &LogSeries {
        &self.log
    }
}

/// `N^j e_i` for `j = 0, 1, …` until it vanishes.
fn nilpotent_orbit(m: &GeneralizedModule, i: usize) -> Result<Vec<ExactVec>> {
    let limit = m.space.piece_of(i).len();
    let mut out = vec![ExactVec::from([(i, ExactComplex::one())])];
    loop {
        let next = m.l_nil.apply_exact(out.last().unwrap());
        if next.is_empty() {
            return Ok(out);
        }
        if out.len() > limit {
            return Err(Error::NotNilpotent(format!("L(0) nilpotent part on {} at basis {}", m.label(), i)));
        }
        out.push(next);
    }
}

/// `b^{L(0)} v`.
pub fn power_l0(m: &GeneralizedModule, v: &SVec, base: &PowerBase) -> Result<SVec> {
    let mut pow_cache: BTreeMap<ExactComplex, LogSeries> = BTreeMap::new();
    let mut log_pows: Vec<LogSeries> = vec![LogSeries::one()];
    let mut out: SVec = BTreeMap::new();
    for (i, s) in v {
        let n = m.weight(*i);
        let pw = pow_cache.entry(n.clone()).or_insert_with(|| base.pow(n)).clone();
        let coeff = s * &pw;
        for (j, t) in nilpotent_orbit(m, *i)?.iter().enumerate() {
            while log_pows.len() <= j {
                let k = log_pows.len() as i64;
                let next = (log_pows.last().unwrap() * base.log()).scale(&ExactComplex::rat(1, k));
                log_pows.push(next);
            }
            let c = &coeff * &log_pows[j];
            for (r, x) in t {
                out.entry(*r).or_default().add_scaled(&c, x);
            }
        }
    }
    out.retain(|_, s| !s.is_zero());
    Ok(out)
}

/// `x^{L(0)} w` in the formal variable `var`.
pub fn x_l0_apply(m: &GeneralizedModule, w: &ExactVec, var: Var) -> Result<SVec> {
    power_l0(m, &super::exact_to_svec(w), &PowerBase::var(var, 1))
}

/// `e^{c L(j)} v` for `j = ±1`, summed until the powers vanish.
pub fn exp_l(m: &GeneralizedModule, j: i64, c: &LogSeries, v: &SVec) -> Result<SVec> {
    let op: &LinearMap = match j {
        -1 => &m.l_minus,
        1 => &m.l_plus,
        _ => return Err(Error::Unsupported("exp_l needs j = ±1".into())),
    };
    // weights move by ∓1 each step, so the number of steps is bounded by the weight span
    let limit = m.space.weights().count() + 1;
    let mut out = v.clone();
    let mut term = v.clone();
    for k in 1.. {
        let next = op.apply(&term);
        if next.is_empty() {
            break;
        }
        if k > limit {
            return Err(Error::NotNilpotent(format!("L({j}) on {}", m.label())));
        }
        let f = c.scale(&ExactComplex::rat(1, k as i64));
        term = next.into_iter().map(|(i, s)| (i, &s * &f)).filter(|(_, s)| !s.is_zero()).collect();
        for (i, s) in &term {
            out.entry(*i).or_default().add_scaled(s, &ExactComplex::one());
        }
    }
    out.retain(|_, s| !s.is_zero());
    Ok(out)
}
