//! Unit laws: a P(z)-intertwining map with the algebra in one slot factors
//! through a module map `η` and the module vertex operator.

use std::collections::BTreeMap;

use super::{basis, correspond::i_from_y, require_same, skew::omega_r, IntertwiningType, IntwMap, LogIntwOp, MapKind};
use crate::error::{Error, Result};
use crate::graded::{exp_l, svec_add_scaled, GeneralizedModule, SVec, VertexAlgebra};
use crate::report::{Comparator, VerificationReport};
use crate::scalar::ExactComplex;
use crate::series::{LogSeries, MonoKey, Var};
use crate::symbolic::is_z_free;

/// A weight-preserving linear map given by the images of basis vectors.
pub type ModuleMap = BTreeMap<usize, SVec>;

pub fn module_map_apply(eta: &ModuleMap, v: &SVec) -> SVec {
    let mut out = SVec::new();
    for (i, c) in v {
        if let Some(img) = eta.get(i) {
            svec_add_scaled(&mut out, img, c);
        }
    }
    out
}

/// `Y_W` as an intertwining operator of type `(W; V W)` (mode vectors only).
fn module_operator(alg: &VertexAlgebra, w: &std::sync::Arc<GeneralizedModule>) -> LogIntwOp {
    let ty = IntertwiningType { w1: alg.module.clone(), w2: w.clone(), w3: w.clone() };
    let mut y = LogIntwOp::zero(ty);
    for &u in &alg.mode_vectors {
        for b in 0..w.dim() {
            let mut v = SVec::new();
            for ((_, m), op) in w.modes.range((u, i64::MIN)..=(u, i64::MAX)) {
                svec_add_scaled(&mut v, &op.apply(&basis(b)), &LogSeries::power(Var::X, ExactComplex::int(-m - 1)));
            }
            y.insert(u, b, v);
        }
    }
    y
}

fn check_constant(cmp: &mut Comparator, eta: &ModuleMap, w: &GeneralizedModule) {
    for (b, img) in eta {
        for (r, s) in img {
            if !is_z_free(s) {
                cmp.fail(format!("η({}) has a z-dependent component at {r}: {s}", w.space.basis()[*b].name));
            }
        }
    }
}

fn check_mode_commutation(cmp: &mut Comparator, eta: &ModuleMap, alg: &VertexAlgebra, w: &GeneralizedModule, w3: &GeneralizedModule) {
    for ((u, m), op) in &w.modes {
        let Some(op3) = w3.mode(*u, *m) else { continue };
        for b in 0..w.dim() {
            let lhs = module_map_apply(eta, &op.apply(&basis(b)));
            let rhs = op3.apply(eta.get(&b).unwrap_or(&SVec::new()));
            let keep = |r: usize| w.covers(w3.weight(r)) && w3.covers(w3.weight(r));
            let key = |r: usize, k: &MonoKey| format!("η({}_{m} {}) at {r} {k}", alg.vector_name(*u), w.space.basis()[b].name);
            cmp.compare_svec(key, &lhs, &rhs, keep);
        }
    }
}

/// For `I` of type `(W3; V W)`: `η(w) = I(1⊗w)` is z-independent, commutes with
/// all stored modes, and `I(u⊗w) = η(Y_W(u, z)w)`. Returns `η` and the report.
pub fn unit_eta_left(i: &IntwMap, alg: &VertexAlgebra, tol: f64) -> Result<(ModuleMap, VerificationReport)> {
    if i.kind != MapKind::P {
        return Err(Error::TypeMismatch("unit law needs a P(z)-intertwining map".into()));
    }
    require_same(&i.ty.w1, &alg.module, "left unit slot")?;
    let (w, w3) = (&i.ty.w2, &i.ty.w3);
    let eta: ModuleMap = (0..w.dim()).map(|b| (b, i.component(alg.vacuum, b))).filter(|(_, v)| !v.is_empty()).collect();
    let mut cmp = Comparator::new(Some(&i.ctx), tol);
    check_constant(&mut cmp, &eta, w);
    check_mode_commutation(&mut cmp, &eta, alg, w, w3);
    let yw = module_operator(alg, w);
    let factored = i_from_y(&yw, &i.ctx, i.p);
    for &u in &alg.mode_vectors {
        for b in 0..w.dim() {
            let lhs = i.component(u, b);
            let rhs = module_map_apply(&eta, &factored.component(u, b));
            let keep = |r: usize| w.covers(w3.weight(r));
            let key = |r: usize, k: &MonoKey| format!("I({}⊗{}) at {r} {k}", alg.vector_name(u), w.space.basis()[b].name);
            cmp.compare_svec(key, &lhs, &rhs, keep);
        }
    }
    Ok((eta, cmp.finish(&format!("left unit law {}", i.ty.label()), "unit-left", "all stored components")))
}

/// For `I` of type `(W3; W V)`: `η(w) = e^{−zL(−1)}I(w⊗1)` is z-independent,
/// commutes with all stored modes, and `I = η ∘ I_{Ω_p(Y_W), p}`.
pub fn unit_eta_right(i: &IntwMap, alg: &VertexAlgebra, tol: f64) -> Result<(ModuleMap, VerificationReport)> {
    if i.kind != MapKind::P {
        return Err(Error::TypeMismatch("unit law needs a P(z)-intertwining map".into()));
    }
    require_same(&i.ty.w2, &alg.module, "right unit slot")?;
    let (w, w3) = (&i.ty.w1, &i.ty.w3);
    let minus_z = i.ctx.z_pow(1).scale(&ExactComplex::int(-1));
    let mut eta = ModuleMap::new();
    for b in 0..w.dim() {
        let v = exp_l(w3, -1, &minus_z, &i.component(b, alg.vacuum))?;
        if !v.is_empty() {
            eta.insert(b, v);
        }
    }
    let mut cmp = Comparator::new(Some(&i.ctx), tol);
    check_constant(&mut cmp, &eta, w);
    check_mode_commutation(&mut cmp, &eta, alg, w, w3);
    let skewed = omega_r(&module_operator(alg, w), i.p)?;
    let factored = i_from_y(&skewed, &i.ctx, i.p);
    for b in 0..w.dim() {
        for &u in &alg.mode_vectors {
            let lhs = i.component(b, u);
            let rhs = module_map_apply(&eta, &factored.component(b, u));
            let keep = |r: usize| w.covers(w3.weight(r));
            let key = |r: usize, k: &MonoKey| format!("I({}⊗{}) at {r} {k}", w.space.basis()[b].name, alg.vector_name(u));
            cmp.compare_svec(key, &lhs, &rhs, keep);
        }
    }
    Ok((eta, cmp.finish(&format!("right unit law {}", i.ty.label()), "unit-right", "all stored components")))
}
