//! Verification reports and the coefficient comparator that fills them.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::graded::SVec;
use crate::series::{LogSeries, MonoKey};
use crate::symbolic::ZContext;

pub const SCHEMA: &str = "logtensor-report/1";
const MAX_OFFENDING: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompareMode {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    /// Short identifier of the law being verified.
    pub tag: String,
    pub window: String,
    pub mode: CompareMode,
    pub checked: usize,
    pub skipped: usize,
    pub max_deviation: f64,
    pub exact_zero: bool,
    pub pass: bool,
    pub offending: Vec<String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// A report built from structural (pass/fail) checks.
    pub fn structural(identity: &str, tag: &str, checked: usize, offending: Vec<String>) -> Self {
        let pass = offending.is_empty();
        VerificationReport {
            identity: identity.into(),
            tag: tag.into(),
            window: String::new(),
            mode: CompareMode::Exact,
            checked,
            skipped: 0,
            max_deviation: if pass { 0.0 } else { f64::INFINITY },
            exact_zero: pass,
            pass,
            offending: offending.into_iter().take(MAX_OFFENDING).collect(),
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<34} tag={:<14} mode={:<7} checked={:<7} skipped={:<6} max_dev={:.3e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.identity,
            self.tag,
            match self.mode {
                CompareMode::Exact => "exact",
                CompareMode::Numeric => "numeric",
            },
            self.checked,
            self.skipped,
            self.max_deviation
        )?;
        if !self.window.is_empty() {
            write!(f, " window={}", self.window)?;
        }
        for o in &self.offending {
            write!(f, "\n    offending: {o}")?;
        }
        for n in &self.notes {
            write!(f, "\n    note: {n}")?;
        }
        Ok(())
    }
}

/// Wraps reports in the versioned JSON envelope.
pub fn envelope(command: &str, reports: &[VerificationReport]) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "pass": reports.iter().all(|r| r.pass),
        "reports": reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
    })
}

/// Accumulates coefficient comparisons `lhs == rhs` whose values are
/// symbol-only series (constants, possibly with `T`/`U`).
///
/// A formally zero difference is exact agreement. A nonzero difference
/// that is a plain constant is an exact disagreement. Otherwise the
/// difference is evaluated numerically against `tol · max(1, scale)`.
pub struct Comparator {
    ctx: ZContext,
    tol: f64,
    checked: usize,
    skipped: usize,
    symbolic: bool,
    exact_nonzero: bool,
    formal_nonzero: bool,
    max_dev: f64,
    scale: f64,
    offending: Vec<String>,
    offending_total: usize,
}

impl Comparator {
    /// Without a context only `U` may appear symbolically.
    pub fn new(ctx: Option<&ZContext>, tol: f64) -> Self {
        Comparator {
            ctx: ctx.cloned().unwrap_or_else(|| ZContext::real(1.0).expect("nonzero")),
            tol,
            checked: 0,
            skipped: 0,
            symbolic: false,
            exact_nonzero: false,
            formal_nonzero: false,
            max_dev: 0.0,
            scale: 0.0,
            offending: Vec::new(),
            offending_total: 0,
        }
    }

    fn magnitude(&mut self, s: &LogSeries) -> f64 {
        match s.as_constant() {
            Some(c) => c.to_numeric().norm(),
            None => {
                self.symbolic = true;
                self.ctx.eval_const(s).norm()
            }
        }
    }

    pub fn compare(&mut self, key: impl FnOnce() -> String, lhs: &LogSeries, rhs: &LogSeries) {
        self.checked += 1;
        let ml = self.magnitude(lhs);
        let mr = self.magnitude(rhs);
        self.scale = self.scale.max(ml).max(mr);
        let d = lhs - rhs;
        if d.is_zero() {
            return;
        }
        self.formal_nonzero = true;
        let (dev, exact) = match d.as_constant() {
            Some(c) => (c.to_numeric().norm(), true),
            None => (self.magnitude(&d), false),
        };
        if exact {
            self.exact_nonzero = true;
        }
        self.max_dev = self.max_dev.max(dev);
        if exact || dev > self.tol {
            self.offending_total += 1;
            if self.offending.len() < MAX_OFFENDING {
                self.offending.push(format!("{} (deviation {:.3e})", key(), dev));
            }
        }
    }

    /// Compares two vectors entry by entry and formal monomial by formal
    /// monomial; entries rejected by `keep` are counted as skipped.
    pub fn compare_svec(&mut self, key: impl Fn(usize, &MonoKey) -> String, lhs: &SVec, rhs: &SVec, keep: impl Fn(usize) -> bool) {
        let zero = LogSeries::zero();
        let idx: BTreeSet<usize> = lhs.keys().chain(rhs.keys()).copied().collect();
        for i in idx {
            let a = lhs.get(&i).unwrap_or(&zero);
            let b = rhs.get(&i).unwrap_or(&zero);
            if !keep(i) {
                self.skipped += 1;
                continue;
            }
            let sa = a.split_formal();
            let sb = b.split_formal();
            let keys: BTreeSet<&MonoKey> = sa.keys().chain(sb.keys()).collect();
            for k in keys {
                self.compare(|| key(i, k), sa.get(k).unwrap_or(&zero), sb.get(k).unwrap_or(&zero));
            }
        }
    }

    pub fn skip(&mut self, n: usize) {
        self.skipped += n;
    }

    /// Records a structural failure that has no numeric deviation.
    pub fn fail(&mut self, msg: String) {
        self.checked += 1;
        self.exact_nonzero = true;
        self.formal_nonzero = true;
        self.max_dev = f64::INFINITY;
        self.offending_total += 1;
        if self.offending.len() < MAX_OFFENDING {
            self.offending.push(msg);
        }
    }

    pub fn checked(&self) -> usize {
        self.checked
    }

    pub fn finish(self, identity: &str, tag: &str, window: &str) -> VerificationReport {
        let mode = if self.symbolic { CompareMode::Numeric } else { CompareMode::Exact };
        let exact_zero = !self.formal_nonzero;
        let bound = self.tol * self.scale.max(1.0);
        let pass = self.checked > 0
            && !self.exact_nonzero
            && match mode {
                CompareMode::Exact => exact_zero,
                CompareMode::Numeric => self.max_dev <= bound,
            };
        let mut notes = Vec::new();
        if self.checked == 0 {
            notes.push("no coefficient fell inside the exact window".to_string());
        }
        if self.offending_total > self.offending.len() {
            notes.push(format!("{} offending coefficients in total", self.offending_total));
        }
        VerificationReport {
            identity: identity.into(),
            tag: tag.into(),
            window: window.into(),
            mode,
            checked: self.checked,
            skipped: self.skipped,
            max_deviation: self.max_dev,
            exact_zero,
            pass,
            offending: self.offending,
            notes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactComplex;
    use crate::series::Var;

    #[test]
    fn exact_and_numeric_modes() {
        let mut c = Comparator::new(None, 1e-9);
        c.compare(|| "a".into(), &LogSeries::int(2), &LogSeries::int(2));
        let r = c.finish("id", "t", "");
        assert!(r.pass && r.exact_zero && r.mode == CompareMode::Exact);

        let mut c = Comparator::new(None, 1e-9);
        c.compare(|| "b".into(), &LogSeries::int(2), &LogSeries::int(3));
        let r = c.finish("id", "t", "");
        assert!(!r.pass);
        assert!(r.offending[0].starts_with('b'));

        let ctx = ZContext::real(4.0).unwrap();
        let t = LogSeries::power(Var::T, ExactComplex::rat(1, 2));
        let mut c = Comparator::new(Some(&ctx), 1e-9);
        c.compare(|| "c".into(), &t, &LogSeries::int(2));
        let r = c.finish("id", "t", "");
        assert!(r.pass && r.mode == CompareMode::Numeric && !r.exact_zero);
    }

    #[test]
    fn empty_comparison_does_not_pass() {
        let r = Comparator::new(None, 1e-9).finish("id", "t", "");
        assert!(!r.pass);
    }
}
