//! Operator ↔ map correspondences, branch shifts, z-transport and the
//! P/Q adjunction.

use std::collections::BTreeMap;

use super::{basis, IntertwiningType, IntwMap, LogIntwOp, MapKind};
use crate::error::{Error, Result};
use crate::graded::{contragredient, power_l0, PowerBase, SVec, VertexAlgebra};
use crate::scalar::Q;
use crate::series::{LogSeries, Var};
use crate::symbolic::ZContext;

fn substitute_x(s: &LogSeries, ctx: &ZContext, p: i64) -> LogSeries {
    s.substitute(Var::X, &|e| ctx.exp_zeta(e, p), &ctx.zeta(p))
}

/// `I_{Y,p}(w1 ⊗ w2) = Y(w1, e^{l_p(z)})w2`.
pub fn i_from_y(y: &LogIntwOp, ctx: &ZContext, p: i64) -> IntwMap {
    let mut out = IntwMap::zero(MapKind::P, y.ty.clone(), ctx.clone(), p);
    for (pair, v) in &y.components {
        let w: SVec = v.iter().map(|(r, s)| (*r, substitute_x(s, ctx, p))).collect();
        out.insert(pair.0, pair.1, w);
    }
    out
}

/// `(xy)^{∓L(0)}` bases with `y = e^{-l_p(z)}`.
fn xy_base(ctx: &ZContext, p: i64, sign: i64) -> PowerBase<'_> {
    PowerBase::var(Var::X, sign).times(PowerBase::zeta(ctx, p, -sign))
}

fn check_logpower(s: &LogSeries, max: Option<u32>) -> Result<()> {
    if let Some(max) = max {
        let found = s.max_logpower(Var::X);
        if found > max {
            return Err(Error::LogPowerOverflow { found, max });
        }
    }
    Ok(())
}

/// `Y_{I,p}(w1, x)w2 = y^{L(0)}x^{L(0)} I(y^{-L(0)}x^{-L(0)}w1 ⊗ y^{-L(0)}x^{-L(0)}w2)|_{y = e^{-l_p(z)}}`.
///
/// Fails if a produced log power exceeds `max_logpower`.
pub fn y_from_i(i: &IntwMap, p: i64, max_logpower: Option<u32>) -> Result<LogIntwOp> {
    let ty = &i.ty;
    let ctx = &i.ctx;
    let down = xy_base(ctx, p, -1);
    let up = xy_base(ctx, p, 1);
    let mut cache1: BTreeMap<usize, SVec> = BTreeMap::new();
    let mut out = LogIntwOp::zero(ty.clone());
    let pairs: Vec<(usize, usize)> = i.components.keys().copied().collect();
    // every pair whose Jordan orbit meets a stored component contributes
    let mut inputs: std::collections::BTreeSet<(usize, usize)> = pairs.iter().copied().collect();
    for (a, b) in &pairs {
        for c1 in ty.w1.space.piece_of(*a) {
            for c2 in ty.w2.space.piece_of(*b) {
                inputs.insert((*c1, *c2));
            }
        }
    }
    for (a, b) in inputs {
        if let std::collections::btree_map::Entry::Vacant(e) = cache1.entry(a) {
            e.insert(power_l0(&ty.w1, &basis(a), &down)?);
        }
        let s1 = &cache1[&a];
        let s2 = power_l0(&ty.w2, &basis(b), &down)?;
        let t = i.apply(s1, &s2);
        let v = power_l0(&ty.w3, &t, &up)?;
        for (r, s) in &v {
            check_logpower(s, max_logpower)?;
            let want = &(ty.w3.weight(*r) - ty.w1.weight(a)) - ty.w2.weight(b);
            for (key, _) in s.terms() {
                let (e, _) = key.part(Var::X);
                if e != want {
                    return Err(Error::Grading(format!("component ({a},{b}) -> {r} has x-exponent {e}, expected {want}")));
                }
            }
        }
        out.insert(a, b, v);
    }
    Ok(out)
}

/// The two sides of the branch-shift law:
/// `Y_{I,p'}` and `e^{2πi(p−p')L(0)} Y_{I,p}(e^{2πi(p'−p)L(0)}·, x) e^{2πi(p'−p)L(0)}·`.
pub fn branch_shift(i: &IntwMap, p: i64, p_new: i64, max_logpower: Option<u32>) -> Result<(LogIntwOp, LogIntwOp)> {
    let lhs = y_from_i(i, p_new, max_logpower)?;
    let yp = y_from_i(i, p, max_logpower)?;
    let ty = &i.ty;
    let d = Q::from_int(2 * (p_new - p));
    let inward = PowerBase::pi_i(d.clone());
    let outward = PowerBase::pi_i(-d);
    let mut rhs = LogIntwOp::zero(ty.clone());
    let mut inputs: std::collections::BTreeSet<(usize, usize)> = std::collections::BTreeSet::new();
    for (a, b) in yp.components.keys() {
        for c1 in ty.w1.space.piece_of(*a) {
            for c2 in ty.w2.space.piece_of(*b) {
                inputs.insert((*c1, *c2));
            }
        }
    }
    for (a, b) in inputs {
        let s1 = power_l0(&ty.w1, &basis(a), &inward)?;
        let s2 = power_l0(&ty.w2, &basis(b), &inward)?;
        let t = yp.apply(&s1, &s2);
        rhs.insert(a, b, power_l0(&ty.w3, &t, &outward)?);
    }
    Ok((lhs, rhs))
}

/// `I_1(w1 ⊗ w2) = Σ (w1)^{I,p}_{n;k} w2 e^{l_p(z_1)(−n−1)} l_p(z_1)^k`.
pub fn transport_z(i: &IntwMap, z1: &ZContext) -> Result<IntwMap> {
    transport_z_branch(i, z1, i.p)
}

/// As [`transport_z`], substituting with the branch `l_{p1}(z_1)`.
pub fn transport_z_branch(i: &IntwMap, z1: &ZContext, p1: i64) -> Result<IntwMap> {
    let y = y_from_i(i, i.p, None)?;
    Ok(i_from_y(&y, z1, p1))
}

/// The adjoint under `⟨w1, J(w3' ⊗ w2)⟩ = ⟨w3', I(w1 ⊗ w2)⟩`: a P(z)-map
/// of type `(W3; W1 W2)` goes to a Q(z)-map of type `(W1'; W3' W2)` and
/// vice versa.
pub fn adjoint(map: &IntwMap, alg: &VertexAlgebra) -> Result<IntwMap> {
    let ty = &map.ty;
    let w1d = contragredient(&ty.w1, alg)?;
    let w3d = contragredient(&ty.w3, alg)?;
    let kind = match map.kind {
        MapKind::P => MapKind::Q,
        MapKind::Q => MapKind::P,
    };
    let new_ty = IntertwiningType { w1: w3d, w2: ty.w2.clone(), w3: w1d };
    let mut comps: BTreeMap<(usize, usize), SVec> = BTreeMap::new();
    for ((a, b), v) in &map.components {
        for (r, s) in v {
            comps.entry((*r, *b)).or_default().insert(*a, s.clone());
        }
    }
    Ok(IntwMap { kind, ty: new_ty, ctx: map.ctx.clone(), p: map.p, components: comps })
}

/// `⟨w3', I^{Q(z)}_{Y,p}(w1 ⊗ w2)⟩ = ⟨w1, Y(w3', e^{l_p(z)})w2⟩` for `Y` of
/// type `(W1'; W3' W2)`; the result has type `(W3; W1 W2)`.
pub fn i_q_from_y(y: &LogIntwOp, alg: &VertexAlgebra, ctx: &ZContext, p: i64) -> Result<IntwMap> {
    let w3 = contragredient(&y.ty.w1, alg)?;
    let w1 = contragredient(&y.ty.w3, alg)?;
    let ty = IntertwiningType { w1, w2: y.ty.w2.clone(), w3 };
    let mut comps: BTreeMap<(usize, usize), SVec> = BTreeMap::new();
    for ((r, b), v) in &y.components {
        for (a, s) in v {
            let val = substitute_x(s, ctx, p);
            if !val.is_zero() {
                comps.entry((*a, *b)).or_default().insert(*r, val);
            }
        }
    }
    Ok(IntwMap { kind: MapKind::Q, ty, ctx: ctx.clone(), p, components: comps })
}

/// `⟨w1, Y^{Q(z)}_{I,p}(w3', x)w2⟩ =
/// ⟨y^{-L'(0)}x^{-L'(0)}w3', I(y^{L(0)}x^{L(0)}w1 ⊗ y^{-L(0)}x^{-L(0)}w2)⟩|_{y=e^{-l_p(z)}}`.
pub fn y_q_from_i(j: &IntwMap, alg: &VertexAlgebra, p: i64, max_logpower: Option<u32>) -> Result<LogIntwOp> {
    if j.kind != MapKind::Q {
        return Err(Error::TypeMismatch("expected a Q(z)-intertwining map".into()));
    }
    let ty = &j.ty;
    let ctx = &j.ctx;
    let up = xy_base(ctx, p, 1);
    let down = xy_base(ctx, p, -1);
    let new_ty = IntertwiningType { w1: contragredient(&ty.w3, alg)?, w2: ty.w2.clone(), w3: contragredient(&ty.w1, alg)? };
    let mut comps: BTreeMap<(usize, usize), SVec> = BTreeMap::new();
    for a in 0..ty.w1.dim() {
        let s1 = power_l0(&ty.w1, &basis(a), &up)?;
        for b in 0..ty.w2.dim() {
            let s2 = power_l0(&ty.w2, &basis(b), &down)?;
            let t = j.apply(&s1, &s2);
            if t.is_empty() {
                continue;
            }
            for (r, s) in power_l0(&ty.w3, &t, &down)? {
                check_logpower(&s, max_logpower)?;
                comps.entry((r, b)).or_default().insert(a, s);
            }
        }
    }
    let mut out = LogIntwOp::zero(new_ty);
    for ((r, b), v) in comps {
        out.insert(r, b, v);
    }
    Ok(out)
}
