//! Sparse truncated logarithmic formal series.
//!
//! A series is a finite map from multi-monomial keys
//! `Π var^{e}(log var)^k` to exact Gaussian-rational coefficients.
//! Besides the formal variables `x, y, x0, x1, x2` there are two
//! *symbolic constants*: `U` stands for `e^{πi}` (so `log U = πi`) and
//! `T` stands for `e^{τ}` where `τ` is the base logarithm of the point
//! `z` in play (see [`crate::symbolic::ZContext`]). Powers of `U` are kept
//! reduced: `U^{c}` with `0 ≤ Re c < 1/2`, using `U^{1/2} = i`.
//! With these two symbols every exponential produced by a branch
//! substitution is an exact monomial, so all bookkeeping identities are
//! checked as exact equalities.

pub mod branch;
pub mod delta;
pub mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ExactComplex, NumericComplex, Q};

pub use branch::{branch_value, BranchPoint};
pub use delta::{binom_expand, delta_expand, BinomOperand, DeltaPattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    X0,
    X1,
    X2,
    /// `e^{τ}`, τ the base logarithm of the current point.
    T,
    /// `e^{πi}`.
    U,
}

impl Var {
    pub const ALL: [Var; 7] = [Var::X, Var::Y, Var::X0, Var::X1, Var::X2, Var::T, Var::U];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::X0 => "x0",
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::T => "T",
            Var::U => "U",
        }
    }

    pub fn from_name(s: &str) -> Result<Var> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown variable {s:?}")))
    }

    pub fn is_symbolic(self) -> bool {
        matches!(self, Var::T | Var::U)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `var^{exponent} (log var)^{logpower}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LogMonomial {
    pub var: Var,
    pub exponent: ExactComplex,
    pub logpower: u32,
}

impl LogMonomial {
    fn is_trivial(&self) -> bool {
        self.logpower == 0 && self.exponent.is_zero()
    }
}

/// Product of monomials, one per active variable, sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MonoKey(pub Vec<LogMonomial>);

impl MonoKey {
    pub fn one() -> MonoKey {
        MonoKey(Vec::new())
    }

    pub fn single(var: Var, exponent: ExactComplex, logpower: u32) -> MonoKey {
        let m = LogMonomial { var, exponent, logpower };
        if m.is_trivial() {
            MonoKey::one()
        } else {
            MonoKey(vec![m])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: Var) -> Option<&LogMonomial> {
        self.0.iter().find(|m| m.var == var)
    }

    /// Exponent and log power of `var` (zero if absent).
    pub fn part(&self, var: Var) -> (ExactComplex, u32) {
        match self.get(var) {
            Some(m) => (m.exponent.clone(), m.logpower),
            None => (ExactComplex::zero(), 0),
        }
    }

    pub fn without(&self, var: Var) -> MonoKey {
        MonoKey(self.0.iter().filter(|m| m.var != var).cloned().collect())
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|m| m.var)
    }

    /// Product of two keys plus the scalar picked up by reducing `U`.
    fn mul(&self, other: &MonoKey) -> (MonoKey, ExactComplex) {
        if other.0.is_empty() {
            return (self.clone(), ExactComplex::one());
        }
        if self.0.is_empty() {
            return (other.clone(), ExactComplex::one());
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let take = match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a.var == b.var => {
                    out.push(LogMonomial {
                        var: a.var,
                        exponent: &a.exponent + &b.exponent,
                        logpower: a.logpower + b.logpower,
                    });
                    i += 1;
                    j += 1;
                    continue;
                }
                (Some(a), Some(b)) => a.var < b.var,
                (Some(_), None) => true,
                _ => false,
            };
            if take {
                out.push(self.0[i].clone());
                i += 1;
            } else {
                out.push(other.0[j].clone());
                j += 1;
            }
        }
        canonical_key(out)
    }
}

/// Drops trivial monomials and reduces the `U` exponent.
fn canonical_key(mut monos: Vec<LogMonomial>) -> (MonoKey, ExactComplex) {
    let mut factor = ExactComplex::one();
    for m in monos.iter_mut() {
        if m.var == Var::U {
            let twice = &m.exponent.re * &Q::from_int(2);
            let k = twice.floor();
            if !k.is_zero() {
                let shift = &k / &Q::from_int(2);
                m.exponent.re = &m.exponent.re - &shift;
                let k = k.to_i64().expect("U exponent out of range");
                factor = ExactComplex::i_pow(k);
            }
        }
    }
    monos.retain(|m| !m.is_trivial());
    (MonoKey(monos), factor)
}

impl fmt::Display for MonoKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (idx, m) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str("·")?;
            }
            if !m.exponent.is_zero() {
                write!(f, "{}^({})", m.var, m.exponent)?;
            }
            if m.logpower > 0 {
                if !m.exponent.is_zero() {
                    f.write_str("·")?;
                }
                write!(f, "(log {})^{}", m.var, m.logpower)?;
            }
        }
        Ok(())
    }
}

/// Per-variable bounds on the real part of exponents, plus a log-power cap.
/// Variables without bounds are unrestricted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TruncationWindow {
    pub bounds: BTreeMap<Var, (Q, Q)>,
    pub max_logpower: Option<u32>,
}

impl TruncationWindow {
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn with_bound(mut self, var: Var, lo: Q, hi: Q) -> Self {
        assert!(lo <= hi, "empty window");
        self.bounds.insert(var, (lo, hi));
        self
    }

    pub fn with_max_logpower(mut self, k: u32) -> Self {
        self.max_logpower = Some(k);
        self
    }

    pub fn bound(&self, var: Var) -> Option<&(Q, Q)> {
        self.bounds.get(&var)
    }

    pub fn contains(&self, key: &MonoKey) -> bool {
        for (var, (lo, hi)) in &self.bounds {
            let re = key.get(*var).map(|m| m.exponent.re.clone()).unwrap_or_default();
            if &re < lo || &re > hi {
                return false;
            }
        }
        if let Some(maxk) = self.max_logpower {
            if key.0.iter().any(|m| !m.var.is_symbolic() && m.logpower > maxk) {
                return false;
            }
        }
        true
    }

    pub fn is_unbounded(&self) -> bool {
        self.bounds.is_empty() && self.max_logpower.is_none()
    }
}

/// Truncated sparse logarithmic series with exact coefficients.
#[derive(Clone)]
pub struct LogSeries {
    terms: BTreeMap<MonoKey, ExactComplex>,
    window: Option<Arc<TruncationWindow>>,
}

impl PartialEq for LogSeries {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.window_eq(other)
    }
}

impl Eq for LogSeries {}

impl Default for LogSeries {
    fn default() -> Self {
        LogSeries::zero()
    }
}

impl LogSeries {
    pub fn zero() -> Self {
        LogSeries { terms: BTreeMap::new(), window: None }
    }

    pub fn zero_in(window: &Arc<TruncationWindow>) -> Self {
        LogSeries { terms: BTreeMap::new(), window: normalise_window(window) }
    }

    pub fn one() -> Self {
        Self::constant(ExactComplex::one())
    }

    pub fn constant(c: ExactComplex) -> Self {
        let mut s = Self::zero();
        if !c.is_zero() {
            s.terms.insert(MonoKey::one(), c);
        }
        s
    }

    pub fn int(n: i64) -> Self {
        Self::constant(ExactComplex::int(n))
    }

    /// `c · var^{exponent} (log var)^{logpower}`.
    pub fn monomial(var: Var, exponent: ExactComplex, logpower: u32) -> Self {
        Self::term(MonoKey::single(var, exponent, logpower).0, ExactComplex::one())
    }

    pub fn power(var: Var, exponent: ExactComplex) -> Self {
        Self::monomial(var, exponent, 0)
    }

    pub fn log(var: Var) -> Self {
        Self::monomial(var, ExactComplex::zero(), 1)
    }

    /// Single term from (possibly unsorted, possibly non-canonical) monomials.
    pub fn term(mut monos: Vec<LogMonomial>, c: ExactComplex) -> Self {
        monos.sort_by_key(|a| a.var);
        for w in monos.windows(2) {
            assert!(w[0].var != w[1].var, "duplicate variable in key");
        }
        let (key, f) = canonical_key(monos);
        let mut s = Self::zero();
        let c = &c * &f;
        if !c.is_zero() {
            s.terms.insert(key, c);
        }
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MonoKey, ExactComplex)>, window: Option<Arc<TruncationWindow>>) -> Self {
        let mut s = LogSeries { terms: BTreeMap::new(), window: window.as_ref().and_then(normalise_window) };
        for (k, c) in terms {
            let (key, f) = canonical_key(k.0);
            s.add_term(key, &c * &f);
        }
        s
    }

    pub fn window(&self) -> Option<&TruncationWindow> {
        self.window.as_deref()
    }

    pub fn window_arc(&self) -> Option<&Arc<TruncationWindow>> {
        self.window.as_ref()
    }

    fn window_eq(&self, other: &Self) -> bool {
        match (&self.window, &other.window) {
            (None, None) => true,
            (Some(a), Some(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }

    /// Re-truncates to `window`.
    pub fn with_window(mut self, window: &Arc<TruncationWindow>) -> Self {
        self.window = normalise_window(window);
        if let Some(w) = &self.window {
            self.terms.retain(|k, _| w.contains(k));
        }
        self
    }

    /// Shared window of two operands; an unbounded operand adapts to the other.
    fn joint_window(&self, other: &Self) -> Result<Option<Arc<TruncationWindow>>> {
        match (&self.window, &other.window) {
            (None, w) | (w, None) => Ok(w.clone()),
            (Some(a), Some(b)) => {
                if Arc::ptr_eq(a, b) || a == b {
                    Ok(Some(a.clone()))
                } else {
                    Err(Error::WindowMismatch)
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoKey, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<MonoKey, ExactComplex> {
        self.terms
    }

    pub fn coefficient(&self, key: &MonoKey) -> ExactComplex {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// The value if the series is a constant (including zero).
    pub fn as_constant(&self) -> Option<ExactComplex> {
        match self.terms.len() {
            0 => Some(ExactComplex::zero()),
            1 => self.terms.get(&MonoKey::one()).cloned(),
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|k| k.vars()).collect()
    }

    pub fn involves(&self, var: Var) -> bool {
        self.terms.keys().any(|k| k.get(var).is_some())
    }

    fn add_term(&mut self, key: MonoKey, c: ExactComplex) {
        if c.is_zero() {
            return;
        }
        if let Some(w) = &self.window {
            if !w.contains(&key) {
                return;
            }
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.window = self.joint_window(other)?;
        out.add_scaled(other, &ExactComplex::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.window = self.joint_window(other)?;
        out.add_scaled(other, &ExactComplex::int(-1));
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let window = self.joint_window(other)?;
        let mut out = LogSeries { terms: BTreeMap::new(), window };
        out.add_product(self, other);
        Ok(out)
    }

    /// `self += c · other` (window of `self` governs truncation).
    pub fn add_scaled(&mut self, other: &Self, c: &ExactComplex) {
        if c.is_zero() {
            return;
        }
        if self.window.is_none() && other.window.is_some() {
            self.window = other.window.clone();
            if let Some(w) = &self.window {
                self.terms.retain(|k, _| w.contains(k));
            }
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), if c.is_one() { v.clone() } else { v * c });
        }
    }

    /// `self += a · b`.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        if let Some(c) = b.terms.get(&MonoKey::one()).filter(|_| b.terms.len() == 1) {
            let c = c.clone();
            return self.add_scaled(a, &c);
        }
        if let Some(c) = a.terms.get(&MonoKey::one()).filter(|_| a.terms.len() == 1) {
            let c = c.clone();
            return self.add_scaled(b, &c);
        }
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let (k, f) = ka.mul(kb);
                let mut c = ca * cb;
                if !f.is_one() {
                    c = &c * &f;
                }
                self.add_term(k, c);
            }
        }
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        let mut out = LogSeries { terms: BTreeMap::new(), window: self.window.clone() };
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LogSeries::one();
        acc.window = self.window.clone();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient of `var^{-1}(log var)^0`; log-bearing terms contribute nothing.
    pub fn residue(&self, var: Var) -> Self {
        self.slice(var, &ExactComplex::int(-1), 0)
    }

    /// Sum of the terms carrying `var^{exponent}(log var)^{logpower}`, with that factor removed.
    pub fn slice(&self, var: Var, exponent: &ExactComplex, logpower: u32) -> Self {
        let mut out = LogSeries { terms: BTreeMap::new(), window: None };
        for (k, c) in &self.terms {
            let (e, l) = k.part(var);
            if &e == exponent && l == logpower {
                out.terms.insert(k.without(var), c.clone());
            }
        }
        out
    }

    /// Groups terms by their `var`-monomial.
    pub fn split(&self, var: Var) -> BTreeMap<(ExactComplex, u32), LogSeries> {
        let mut out: BTreeMap<(ExactComplex, u32), LogSeries> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k.part(var)).or_default().terms.insert(k.without(var), c.clone());
        }
        out
    }

    /// Groups terms by their formal-variable part; the values carry only
    /// the symbolic constants `T`, `U`.
    pub fn split_formal(&self) -> BTreeMap<MonoKey, LogSeries> {
        let mut out: BTreeMap<MonoKey, LogSeries> = BTreeMap::new();
        for (k, c) in &self.terms {
            let (sym, formal): (Vec<_>, Vec<_>) = k.0.iter().cloned().partition(|m| m.var.is_symbolic());
            out.entry(MonoKey(formal)).or_default().terms.insert(MonoKey(sym), c.clone());
        }
        out
    }

    /// Formal derivative in `var`.
    pub fn ddx(&self, var: Var) -> Self {
        let window = self.window.as_ref().map(|w| {
            let mut w2 = (**w).clone();
            if let Some((lo, hi)) = w2.bounds.get_mut(&var) {
                *lo = &*lo - &Q::one();
                *hi = &*hi - &Q::one();
            }
            Arc::new(w2)
        });
        let mut out = LogSeries { terms: BTreeMap::new(), window };
        let minus_one = ExactComplex::int(-1);
        for (k, c) in &self.terms {
            let (e, l) = k.part(var);
            let rest = k.without(var);
            let e1 = &e + &minus_one;
            if !e.is_zero() {
                let key = MonoKey::single(var, e1.clone(), l);
                let (key, f) = rest.mul(&key);
                out.add_term(key, &(c * &e) * &f);
            }
            if l > 0 {
                let key = MonoKey::single(var, e1, l - 1);
                let (key, f) = rest.mul(&key);
                out.add_term(key, &(c * &ExactComplex::int(l as i64)) * &f);
            }
        }
        out
    }

    /// `var^n (log var)^k ↦ pow(n) · log^k`: substitution of `var = e^{ζ}`
    /// with `pow(n) = e^{nζ}` and `log = ζ` given as series.
    pub fn substitute(&self, var: Var, pow: &dyn Fn(&ExactComplex) -> LogSeries, log: &LogSeries) -> LogSeries {
        let mut out = LogSeries::zero();
        let mut log_powers: Vec<LogSeries> = vec![LogSeries::one()];
        for ((e, l), rest) in self.split(var) {
            while log_powers.len() <= l as usize {
                let next = log_powers.last().unwrap() * log;
                log_powers.push(next);
            }
            let factor = &pow(&e) * &log_powers[l as usize];
            out.add_product(&rest, &factor);
        }
        out
    }

    /// `var ↦ var^{-1}`: `var^a (log var)^k ↦ var^{-a} (−log var)^k`.
    pub fn invert_var(&self, var: Var) -> LogSeries {
        let mut out = LogSeries::zero();
        for (k, c) in &self.terms {
            let (e, l) = k.part(var);
            let key = MonoKey::single(var, -e, l);
            let (key, f) = k.without(var).mul(&key);
            let sign = ExactComplex::sign(l as i64);
            out.add_term(key, &(c * &f) * &sign);
        }
        out
    }

    /// `var ↦ e^{cπi} var`: `var^a (log var)^k ↦ U^{ca} var^a (log var + c·log U)^k`.
    pub fn rotate_var(&self, var: Var, c: &Q) -> LogSeries {
        let shift = &LogSeries::log(var) + &LogSeries::log(Var::U).scale(&ExactComplex::real(c.clone()));
        let mut out = LogSeries::zero();
        for ((e, l), rest) in self.split(var) {
            let phase = LogSeries::power(Var::U, e.scale(c));
            let body = &LogSeries::power(var, e) * &shift.pow(l);
            out.add_product(&rest, &(&phase * &body));
        }
        out
    }

    /// Numeric substitution `var = e^{ζ}`, grouped by the remaining keys.
    pub fn substitute_exp(&self, var: Var, zeta: NumericComplex) -> BTreeMap<MonoKey, NumericComplex> {
        self.eval_vars(&|v| (v == var).then_some(zeta))
    }

    /// Evaluates every variable for which `logs` supplies `log var`.
    pub fn eval_vars(&self, logs: &dyn Fn(Var) -> Option<NumericComplex>) -> BTreeMap<MonoKey, NumericComplex> {
        let mut out: BTreeMap<MonoKey, NumericComplex> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut val = c.to_numeric();
            let mut rest = Vec::new();
            for m in &k.0 {
                match logs(m.var) {
                    Some(l) => {
                        val *= (m.exponent.to_numeric() * l).exp() * l.powu(m.logpower);
                    }
                    None => rest.push(m.clone()),
                }
            }
            *out.entry(MonoKey(rest)).or_default() += val;
        }
        out
    }

    pub fn max_logpower(&self, var: Var) -> u32 {
        self.terms.keys().map(|k| k.part(var).1).max().unwrap_or(0)
    }
}

fn normalise_window(w: &Arc<TruncationWindow>) -> Option<Arc<TruncationWindow>> {
    if w.is_unbounded() {
        None
    } else {
        Some(w.clone())
    }
}

impl<'a> std::ops::Add<&'a LogSeries> for &'a LogSeries {
    type Output = LogSeries;
    fn add(self, rhs: &'a LogSeries) -> LogSeries {
        self.try_add(rhs).expect("series windows differ")
    }
}

impl<'a> std::ops::Sub<&'a LogSeries> for &'a LogSeries {
    type Output = LogSeries;
    fn sub(self, rhs: &'a LogSeries) -> LogSeries {
        self.try_sub(rhs).expect("series windows differ")
    }
}

impl<'a> std::ops::Mul<&'a LogSeries> for &'a LogSeries {
    type Output = LogSeries;
    fn mul(self, rhs: &'a LogSeries) -> LogSeries {
        self.try_mul(rhs).expect("series windows differ")
    }
}

impl std::ops::Neg for &LogSeries {
    type Output = LogSeries;
    fn neg(self) -> LogSeries {
        self.scale(&ExactComplex::int(-1))
    }
}

impl From<ExactComplex> for LogSeries {
    fn from(c: ExactComplex) -> Self {
        LogSeries::constant(c)
    }
}

impl fmt::Display for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if k.is_one() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})·{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(e: i64) -> LogSeries {
        LogSeries::power(Var::X, ExactComplex::int(e))
    }

    #[test]
    fn mixed_arithmetic() {
        assert!((&x(0) + &(-&x(0))).is_zero());
        let half = LogSeries::power(Var::X, ExactComplex::rat(1, 2));
        assert_eq!((&half + &half).coefficient(&MonoKey::single(Var::X, ExactComplex::rat(1, 2), 0)), ExactComplex::int(2));
        assert_eq!(&x(1) * &x(-1), LogSeries::one());
        let l = LogSeries::log(Var::X);
        assert_eq!(&l * &l, LogSeries::monomial(Var::X, ExactComplex::zero(), 2));
        let a = &LogSeries::one() + &x(1);
        let b = &LogSeries::one() - &x(1);
        assert_eq!(&a * &b, &LogSeries::one() - &x(2));
    }

    #[test]
    fn u_reduction() {
        let u = LogSeries::power(Var::U, ExactComplex::one());
        assert_eq!(u, LogSeries::int(-1));
        let h = LogSeries::power(Var::U, ExactComplex::rat(1, 2));
        assert_eq!(h, LogSeries::constant(ExactComplex::i()));
        let t = LogSeries::power(Var::U, ExactComplex::rat(1, 3));
        assert_eq!(&(&t * &t) * &t, LogSeries::int(-1));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(x(2).ddx(Var::X), x(1).scale(&ExactComplex::int(2)));
        assert_eq!(LogSeries::log(Var::X).ddx(Var::X), x(-1));
        let f = LogSeries::monomial(Var::X, ExactComplex::rat(1, 2), 2);
        let expect = &LogSeries::monomial(Var::X, ExactComplex::rat(-1, 2), 2).scale(&ExactComplex::rat(1, 2))
            + &LogSeries::monomial(Var::X, ExactComplex::rat(-1, 2), 1).scale(&ExactComplex::int(2));
        assert_eq!(f.ddx(Var::X), expect);
    }

    #[test]
    fn residues() {
        let s = &x(-1).scale(&ExactComplex::int(3)) + &x(2).scale(&ExactComplex::int(5));
        assert_eq!(s.residue(Var::X), LogSeries::int(3));
        assert!(LogSeries::monomial(Var::X, ExactComplex::int(-1), 1).residue(Var::X).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let one = x(2).substitute_exp(Var::X, NumericComplex::new(0.0, 0.0));
        assert!((one[&MonoKey::one()] - 1.0).norm() < 1e-15);
        let two_pi_i = NumericComplex::new(0.0, 2.0 * std::f64::consts::PI);
        let v = LogSeries::monomial(Var::X, ExactComplex::rat(1, 2), 1).substitute_exp(Var::X, two_pi_i);
        assert!((v[&MonoKey::one()] + two_pi_i).norm() < 1e-12);
        let v = LogSeries::power(Var::X, ExactComplex::rat(-3, 2)).substitute_exp(Var::X, NumericComplex::new(4f64.ln(), 0.0));
        assert!((v[&MonoKey::one()] - 0.125).norm() < 1e-15);
    }

    #[test]
    fn window_truncates_products() {
        let w = Arc::new(TruncationWindow::unbounded().with_bound(Var::X, Q::from_int(-2), Q::from_int(2)));
        let a = (&LogSeries::one() + &x(2)).with_window(&w);
        let sq = &a * &a;
        assert_eq!(sq, (&LogSeries::one() + &x(2).scale(&ExactComplex::int(2))).with_window(&w));
        let other = Arc::new(TruncationWindow::unbounded().with_max_logpower(1));
        assert!(matches!(a.try_add(&LogSeries::zero_in(&other)), Err(Error::WindowMismatch)));
    }

    #[test]
    fn invert_and_rotate() {
        let f = LogSeries::monomial(Var::X, ExactComplex::rat(1, 2), 1);
        assert_eq!(f.invert_var(Var::X).invert_var(Var::X), f);
        let r = f.rotate_var(Var::X, &Q::from_int(1)).rotate_var(Var::X, &Q::from_int(-1));
        assert_eq!(r, f);
        // e^{πi}x with integral exponent only flips the sign
        assert_eq!(x(3).rotate_var(Var::X, &Q::from_int(1)), -&x(3));
    }
}
