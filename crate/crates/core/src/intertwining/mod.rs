//! Logarithmic intertwining operators and P(z)/Q(z)-intertwining maps.
//!
//! Both are stored the same way: for every pair of input basis vectors
//! `(e_i, e_j)` a vector in the (truncated) target module. For an operator
//! `Y` the entries are series in `x` (`Y(e_i, x)e_j`); for a map the entries
//! are symbol-only constants (`I(e_i ⊗ e_j)` projected to every stored
//! weight). Constants may involve `T = e^τ` and `U = e^{πi}`, see
//! [`crate::symbolic`].

mod correspond;
mod jacobi;
mod skew;
mod unit;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{svec_add_scaled, GeneralizedModule, SVec};
use crate::report::{Comparator, VerificationReport};
use crate::scalar::ExactComplex;
use crate::series::{LogSeries, MonoKey, Var};
use crate::symbolic::ZContext;

pub use correspond::{adjoint, branch_shift, i_from_y, i_q_from_y, transport_z, transport_z_branch, y_from_i, y_q_from_i};
pub use jacobi::{
    verify_elm, verify_p_jacobi, verify_p_sl2, verify_p_sl2_residue, verify_q_jacobi, verify_q_sl2, verify_q_sl2_residue,
    JacobiConfig, Sl2Form,
};
pub use skew::{a_r, b_r, b_r_factorized, mu, mu_inverse, omega_r};
pub use unit::{module_map_apply, unit_eta_left, unit_eta_right, ModuleMap};

/// `(W3; W1 W2)`: inputs from `W1 ⊗ W2`, values in `W3`.
#[derive(Clone)]
pub struct IntertwiningType {
    pub w1: Arc<GeneralizedModule>,
    pub w2: Arc<GeneralizedModule>,
    pub w3: Arc<GeneralizedModule>,
}

impl IntertwiningType {
    pub fn new(w3: &Arc<GeneralizedModule>, w1: &Arc<GeneralizedModule>, w2: &Arc<GeneralizedModule>) -> Self {
        IntertwiningType { w1: w1.clone(), w2: w2.clone(), w3: w3.clone() }
    }

    pub fn same_as(&self, other: &IntertwiningType) -> bool {
        Arc::ptr_eq(&self.w1, &other.w1) && Arc::ptr_eq(&self.w2, &other.w2) && Arc::ptr_eq(&self.w3, &other.w3)
    }

    pub fn label(&self) -> String {
        format!("({}; {} {})", self.w3.label(), self.w1.label(), self.w2.label())
    }
}

impl fmt::Debug for IntertwiningType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `Σ_{i,j} a_i b_j comp(i, j)`.
fn bilinear(components: &BTreeMap<(usize, usize), SVec>, a: &SVec, b: &SVec) -> SVec {
    let mut out = SVec::new();
    for (i, ca) in a {
        for (j, cb) in b {
            if let Some(v) = components.get(&(*i, *j)) {
                let c = ca * cb;
                svec_add_scaled(&mut out, v, &c);
            }
        }
    }
    out
}

/// Logarithmic intertwining operator: `Y(e_i, x)e_j = Σ (e_i)_{n;k}e_j x^{-n-1}(log x)^k`.
#[derive(Clone, Debug)]
pub struct LogIntwOp {
    pub ty: IntertwiningType,
    pub components: BTreeMap<(usize, usize), SVec>,
}

impl LogIntwOp {
    pub fn zero(ty: IntertwiningType) -> Self {
        LogIntwOp { ty, components: BTreeMap::new() }
    }

    pub fn apply(&self, a: &SVec, b: &SVec) -> SVec {
        bilinear(&self.components, a, b)
    }

    pub fn component(&self, i: usize, j: usize) -> SVec {
        self.components.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn insert(&mut self, i: usize, j: usize, v: SVec) {
        let v: SVec = v.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        if v.is_empty() {
            self.components.remove(&(i, j));
        } else {
            self.components.insert((i, j), v);
        }
    }

    /// The coefficient map `(e_i, e_j) ↦ (e_i)_{n;k} e_j` for the monomial
    /// `x^{-n-1}(log x)^k`; its values may carry symbolic constants.
    pub fn coefficient(&self, n: &ExactComplex, k: u32) -> BTreeMap<(usize, usize), SVec> {
        let e = -(n + &ExactComplex::one());
        let mut out = BTreeMap::new();
        for (pair, v) in &self.components {
            let mut w = SVec::new();
            for (r, s) in v {
                let c = s.slice(Var::X, &e, k);
                if !c.is_zero() {
                    w.insert(*r, c);
                }
            }
            if !w.is_empty() {
                out.insert(*pair, w);
            }
        }
        out
    }

    /// All `(n, k)` with a nonzero coefficient.
    pub fn support(&self) -> Vec<(ExactComplex, u32)> {
        let mut keys = std::collections::BTreeSet::new();
        for v in self.components.values() {
            for s in v.values() {
                for (key, _) in s.terms() {
                    let (e, k) = key.part(Var::X);
                    keys.insert((-(&e + &ExactComplex::one()), k));
                }
            }
        }
        keys.into_iter().collect()
    }

    /// Builds an operator from coefficient maps with exact values.
    pub fn from_coefficients(ty: IntertwiningType, coeffs: &[(ExactComplex, u32, Vec<(usize, usize, usize, ExactComplex)>)]) -> Self {
        let mut op = LogIntwOp::zero(ty);
        for (n, k, entries) in coeffs {
            let e = -(n + &ExactComplex::one());
            let mono = LogSeries::monomial(Var::X, e, *k);
            for (i, j, r, c) in entries {
                let v = op.components.entry((*i, *j)).or_default();
                v.entry(*r).or_default().add_scaled(&mono, c);
            }
        }
        op.components.retain(|_, v| {
            v.retain(|_, s| !s.is_zero());
            !v.is_empty()
        });
        op
    }

    pub fn max_logpower(&self) -> u32 {
        self.components.values().flat_map(|v| v.values()).map(|s| s.max_logpower(Var::X)).max().unwrap_or(0)
    }

    /// Checks that every stored coefficient obeys the weight law
    /// `wt((e_i)_{n;k} e_j) = wt e_i + wt e_j − n − 1` and grading compatibility.
    pub fn weight_law_report(&self) -> VerificationReport {
        let (w1, w2, w3) = (&self.ty.w1, &self.ty.w2, &self.ty.w3);
        let group = &w3.space.group;
        let mut checked = 0;
        let mut bad = Vec::new();
        for ((i, j), v) in &self.components {
            let grade = group.add(w1.space.grade(*i), w2.space.grade(*j));
            for (r, s) in v {
                checked += 1;
                if group.reduce(w3.space.grade(*r).clone()) != grade {
                    bad.push(format!("({i},{j}) -> {r}: grade"));
                }
                for (key, _) in s.terms() {
                    let (e, _) = key.part(Var::X);
                    let want = &(w3.weight(*r) - w1.weight(*i)) - w2.weight(*j);
                    if e != want {
                        bad.push(format!("({i},{j}) -> {r}: x-exponent {e}, expected {want}"));
                    }
                }
            }
        }
        VerificationReport::structural(&format!("weight law {}", self.ty.label()), "weight-law", checked, bad)
    }

    /// Exact (or, with symbolic constants, numeric) comparison of two operators.
    pub fn compare(&self, other: &LogIntwOp, identity: &str, tag: &str, tol: f64) -> VerificationReport {
        let mut cmp = Comparator::new(None, tol);
        compare_components(&mut cmp, &self.components, &other.components);
        cmp.finish(identity, tag, "all stored components")
    }

    /// `Y(e_i, x)e_j` with `x` replaced by `x^{-1}` (and `log x` by `−log x`).
    pub(crate) fn inverted(&self) -> BTreeMap<(usize, usize), SVec> {
        self.components
            .iter()
            .map(|(k, v)| (*k, v.iter().map(|(r, s)| (*r, s.invert_var(Var::X))).collect()))
            .collect()
    }
}

pub(crate) fn compare_components(
    cmp: &mut Comparator,
    a: &BTreeMap<(usize, usize), SVec>,
    b: &BTreeMap<(usize, usize), SVec>,
) {
    let empty = SVec::new();
    let pairs: std::collections::BTreeSet<&(usize, usize)> = a.keys().chain(b.keys()).collect();
    for p in pairs {
        let (x, y) = (a.get(p).unwrap_or(&empty), b.get(p).unwrap_or(&empty));
        cmp.compare_svec(|r, k: &MonoKey| format!("({},{}) -> {} at {}", p.0, p.1, r, k), x, y, |_| true);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MapKind {
    P,
    Q,
}

/// A P(z)- or Q(z)-intertwining map `W1 ⊗ W2 → W̄3`, stored by components.
#[derive(Clone, Debug)]
pub struct IntwMap {
    pub kind: MapKind,
    pub ty: IntertwiningType,
    pub ctx: ZContext,
    /// branch index used when the map was produced from an operator
    pub p: i64,
    pub components: BTreeMap<(usize, usize), SVec>,
}

pub type PzMap = IntwMap;
pub type QzMap = IntwMap;

impl IntwMap {
    pub fn zero(kind: MapKind, ty: IntertwiningType, ctx: ZContext, p: i64) -> Self {
        IntwMap { kind, ty, ctx, p, components: BTreeMap::new() }
    }

    pub fn apply(&self, a: &SVec, b: &SVec) -> SVec {
        bilinear(&self.components, a, b)
    }

    pub fn component(&self, i: usize, j: usize) -> SVec {
        self.components.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn insert(&mut self, i: usize, j: usize, v: SVec) {
        let v: SVec = v.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        if v.is_empty() {
            self.components.remove(&(i, j));
        } else {
            self.components.insert((i, j), v);
        }
    }

    /// Adds `c · e_r` to the component at `(i, j)` (used to plant defects).
    pub fn perturb(&mut self, i: usize, j: usize, r: usize, c: ExactComplex) {
        let mut v = self.component(i, j);
        v.entry(r).or_default().add_scaled(&LogSeries::one(), &c);
        self.insert(i, j, v);
    }

    pub fn compare(&self, other: &IntwMap, identity: &str, tag: &str, tol: f64) -> VerificationReport {
        let mut cmp = Comparator::new(Some(&self.ctx), tol);
        if self.kind != other.kind || !self.ty.same_as(&other.ty) {
            cmp.fail(format!("maps of different kind or type: {} vs {}", self.ty.label(), other.ty.label()));
        }
        compare_components(&mut cmp, &self.components, &other.components);
        cmp.finish(identity, tag, "all stored components")
    }

    /// Checks grading compatibility of every component.
    pub fn grading_report(&self) -> VerificationReport {
        let (w1, w2, w3) = (&self.ty.w1, &self.ty.w2, &self.ty.w3);
        let group = &w3.space.group;
        let mut checked = 0;
        let mut bad = Vec::new();
        for ((i, j), v) in &self.components {
            let grade = group.add(w1.space.grade(*i), w2.space.grade(*j));
            for r in v.keys() {
                checked += 1;
                if group.reduce(w3.space.grade(*r).clone()) != grade {
                    bad.push(format!("({i},{j}) -> {r}"));
                }
            }
        }
        VerificationReport::structural(&format!("grading {}", self.ty.label()), "grad-comp", checked, bad)
    }
}

pub(crate) fn basis(i: usize) -> SVec {
    crate::graded::basis_svec(i)
}

pub(crate) fn require_same(a: &Arc<GeneralizedModule>, b: &Arc<GeneralizedModule>, what: &str) -> Result<()> {
    if Arc::ptr_eq(a, b) {
        Ok(())
    } else {
        Err(Error::TypeMismatch(format!("{what}: {} is not {}", a.label(), b.label())))
    }
}
