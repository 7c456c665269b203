//! Skew-symmetry `Ω_r`, the contragredient operators `A_r`, `B_r`, and the
//! P(z) ↔ Q(z^{-1}) correspondence `μ`.

use std::collections::BTreeMap;

use super::{basis, bilinear, IntertwiningType, IntwMap, LogIntwOp, MapKind};
use crate::error::Result;
use crate::graded::{contragredient, exp_l, power_l0, PowerBase, SVec, VertexAlgebra};
use crate::scalar::{ExactComplex, Q};
use crate::series::{LogSeries, Var};

fn x_pow(n: i64) -> LogSeries {
    LogSeries::power(Var::X, ExactComplex::int(n))
}

/// `e^{(2r+1)πi L(0)} x^{-2L(0)}`.
fn twist(r: i64) -> PowerBase<'static> {
    PowerBase::pi_i(Q::from_int(2 * r + 1)).times(PowerBase::var(Var::X, -2))
}

/// `Ω_r(Y)(w2, x)w1 = e^{xL(−1)} Y(w1, e^{(2r+1)πi}x)w2`, of type `(W3; W2 W1)`.
pub fn omega_r(y: &LogIntwOp, r: i64) -> Result<LogIntwOp> {
    let ty = &y.ty;
    let c = Q::from_int(2 * r + 1);
    let x = x_pow(1);
    let mut out = LogIntwOp::zero(IntertwiningType { w1: ty.w2.clone(), w2: ty.w1.clone(), w3: ty.w3.clone() });
    for ((i, j), v) in &y.components {
        let rotated: SVec = v.iter().map(|(k, s)| (*k, s.rotate_var(Var::X, &c))).collect();
        out.insert(*j, *i, exp_l(&ty.w3, -1, &x, &rotated)?);
    }
    Ok(out)
}

/// `⟨A_r(Y)(w1, x)w3', w2⟩ = ⟨w3', Y(e^{xL(1)}e^{(2r+1)πiL(0)}x^{-2L(0)}w1, x^{-1})w2⟩`,
/// of type `(W2'; W1 W3')`.
pub fn a_r(y: &LogIntwOp, alg: &VertexAlgebra, r: i64) -> Result<LogIntwOp> {
    let ty = &y.ty;
    let new_ty = IntertwiningType { w1: ty.w1.clone(), w2: contragredient(&ty.w3, alg)?, w3: contragredient(&ty.w2, alg)? };
    let inv = y.inverted();
    let base = twist(r);
    let x = x_pow(1);
    let mut comps: BTreeMap<(usize, usize), SVec> = BTreeMap::new();
    for i1 in 0..ty.w1.dim() {
        let s = exp_l(&ty.w1, 1, &x, &power_l0(&ty.w1, &basis(i1), &base)?)?;
        for i2 in 0..ty.w2.dim() {
            for (k, val) in bilinear(&inv, &s, &basis(i2)) {
                comps.entry((i1, k)).or_default().insert(i2, val);
            }
        }
    }
    let mut out = LogIntwOp::zero(new_ty);
    for ((a, b), v) in comps {
        out.insert(a, b, v);
    }
    Ok(out)
}

/// `⟨B_r(Y)(w3', x)w2, w1⟩ =
/// ⟨e^{−x^{-1}L'(1)}w3', Y(e^{xL(1)}w1, x^{-1})e^{−xL(1)}e^{(2r+1)πiL(0)}x^{-2L(0)}w2⟩`,
/// of type `(W1'; W3' W2)`.
pub fn b_r(y: &LogIntwOp, alg: &VertexAlgebra, r: i64) -> Result<LogIntwOp> {
    let ty = &y.ty;
    let new_ty = IntertwiningType { w1: contragredient(&ty.w3, alg)?, w2: ty.w2.clone(), w3: contragredient(&ty.w1, alg)? };
    let inv = y.inverted();
    let base = twist(r);
    let x = x_pow(1);
    let minus_x = x.scale(&ExactComplex::int(-1));
    let minus_xinv = x_pow(-1).scale(&ExactComplex::int(-1));
    let s2: Vec<SVec> =
        (0..ty.w2.dim()).map(|i2| exp_l(&ty.w2, 1, &minus_x, &power_l0(&ty.w2, &basis(i2), &base)?)).collect::<Result<_>>()?;
    let mut comps: BTreeMap<(usize, usize), SVec> = BTreeMap::new();
    for i1 in 0..ty.w1.dim() {
        let s1 = exp_l(&ty.w1, 1, &x, &basis(i1))?;
        for (i2, s2) in s2.iter().enumerate() {
            let t = bilinear(&inv, &s1, s2);
            if t.is_empty() {
                continue;
            }
            for (k, val) in exp_l(&ty.w3, -1, &minus_xinv, &t)? {
                comps.entry((k, i2)).or_default().insert(i1, val);
            }
        }
    }
    let mut out = LogIntwOp::zero(new_ty);
    for ((a, b), v) in comps {
        out.insert(a, b, v);
    }
    Ok(out)
}

/// `Ω_{r3} ∘ A_{r2} ∘ Ω_{r3}`, which equals `B_r` for `r = r2 − 2r3 − 1`.
pub fn b_r_factorized(y: &LogIntwOp, alg: &VertexAlgebra, r2: i64, r3: i64) -> Result<LogIntwOp> {
    omega_r(&a_r(&omega_r(y, r3)?, alg, r2)?, r3)
}

/// `μ(I)(w1⊗w2) = e^{−zL(−1)} I(e^{z^{-1}L(1)}w1 ⊗ e^{−z^{-1}L(1)}e^{πiL(0)}e^{−2 log(z^{-1})L(0)}w2)`,
/// a Q(z^{-1})-intertwining map of the same type.
pub fn mu(i: &IntwMap) -> Result<IntwMap> {
    let ctx = &i.ctx;
    let inv = ctx.inverse();
    let ty = &i.ty;
    let zinv = ctx.z_pow(-1);
    let minus_z = ctx.z_pow(1).scale(&ExactComplex::int(-1));
    let minus_zinv = zinv.scale(&ExactComplex::int(-1));
    let inv2 = inv.clone();
    let base = PowerBase::pi_i(Q::one())
        .times(PowerBase::new(move |n| inv2.exp_zeta(&n.scale(&Q::from_int(-2)), 0), inv.zeta(0).scale(&ExactComplex::int(-2))));
    let mut out = IntwMap::zero(MapKind::Q, ty.clone(), inv.clone(), ctx.inversion_branch());
    let s2: Vec<SVec> =
        (0..ty.w2.dim()).map(|b| exp_l(&ty.w2, 1, &minus_zinv, &power_l0(&ty.w2, &basis(b), &base)?)).collect::<Result<_>>()?;
    for a in 0..ty.w1.dim() {
        let s1 = exp_l(&ty.w1, 1, &zinv, &basis(a))?;
        for (b, s2) in s2.iter().enumerate() {
            let t = i.apply(&s1, s2);
            if !t.is_empty() {
                out.insert(a, b, exp_l(&ty.w3, -1, &minus_z, &t)?);
            }
        }
    }
    Ok(out)
}

/// `μ^{-1}(J)(w1⊗w2) = e^{zL(−1)} J(e^{−z^{-1}L(1)}w1 ⊗ e^{2 log(z^{-1})L(0)}e^{−πiL(0)}e^{z^{-1}L(1)}w2)`
/// for a Q(z^{-1})-intertwining map `J`; the result is a P(z)-intertwining map.
pub fn mu_inverse(j: &IntwMap) -> Result<IntwMap> {
    let inv = &j.ctx;
    let ctx = inv.inverse();
    let ty = &j.ty;
    let zinv = inv.z_pow(1);
    let z = inv.z_pow(-1);
    let minus_zinv = zinv.scale(&ExactComplex::int(-1));
    let base = PowerBase::pi_i(-Q::one())
        .times(PowerBase::new(|n| inv.exp_zeta(&n.scale(&Q::from_int(2)), 0), inv.zeta(0).scale(&ExactComplex::int(2))));
    let mut out = IntwMap::zero(MapKind::P, ty.clone(), ctx, 0);
    let mut s2 = Vec::with_capacity(ty.w2.dim());
    for b in 0..ty.w2.dim() {
        s2.push(power_l0(&ty.w2, &exp_l(&ty.w2, 1, &zinv, &basis(b))?, &base)?);
    }
    for a in 0..ty.w1.dim() {
        let s1 = exp_l(&ty.w1, 1, &minus_zinv, &basis(a))?;
        for (b, s2) in s2.iter().enumerate() {
            let t = j.apply(&s1, s2);
            if !t.is_empty() {
                out.insert(a, b, exp_l(&ty.w3, -1, &z, &t)?);
            }
        }
    }
    Ok(out)
}
