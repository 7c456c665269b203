//! Opposite vertex operators and contragredient modules.
//!
//! `v°_r = (−1)^h Σ_k (1/k!) (L(1)^k v)_{2h−r−2−k}` for `v` of weight `h`;
//! the contragredient module carries `v'_r = (v°_r)^T`, `L'(j) = L(−j)^T`,
//! with `W'_{[n]}^{(β)} = (W_{[n]}^{(−β)})^*`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{BasisVector, ExactVec, GeneralizedModule, GradedSpace, LinearMap, SVec, VertexAlgebra};
use crate::error::Result;
use crate::scalar::{factorial, ExactComplex};
use crate::series::LogSeries;

fn build_opposite(m: &GeneralizedModule, alg: &VertexAlgebra) -> Result<BTreeMap<(usize, i64), LinearMap>> {
    let mut by_vector: BTreeMap<usize, Vec<(i64, &LinearMap)>> = BTreeMap::new();
    for ((u, k), op) in &m.modes {
        by_vector.entry(*u).or_default().push((*k, op));
    }
    let mut out: BTreeMap<(usize, i64), LinearMap> = BTreeMap::new();
    for &v in &alg.mode_vectors {
        let h = alg.int_weight(v)?;
        let sign = ExactComplex::sign(h);
        let mut term: ExactVec = BTreeMap::from([(v, ExactComplex::one())]);
        let mut k = 0i64;
        while !term.is_empty() {
            let f = &sign * &ExactComplex::real(factorial(k as u32).recip()?);
            for (u, c) in &term {
                let coeff = &f * c;
                for (mi, op) in by_vector.get(u).map(Vec::as_slice).unwrap_or(&[]) {
                    let r = 2 * h - 2 - k - mi;
                    out.entry((v, r)).or_default().add_scaled(op, &coeff);
                }
            }
            term = alg.module.l_plus.apply_exact(&term);
            k += 1;
        }
    }
    out.retain(|_, op| !op.is_zero());
    Ok(out)
}

/// All opposite modes `v°_r` on `m` (cached on the module).
pub fn opposite_modes<'m>(m: &'m GeneralizedModule, alg: &VertexAlgebra) -> Result<&'m BTreeMap<(usize, i64), LinearMap>> {
    if let Some(c) = m.opposite_cache.get() {
        return Ok(c);
    }
    let built = build_opposite(m, alg)?;
    Ok(m.opposite_cache.get_or_init(|| built))
}

/// `Y°(v, x)` as its nonzero modes `r ↦ v°_r`.
pub fn y_opposite(m: &GeneralizedModule, alg: &VertexAlgebra, v: usize) -> Result<BTreeMap<i64, LinearMap>> {
    Ok(opposite_modes(m, alg)?.range((v, i64::MIN)..=(v, i64::MAX)).map(|((_, r), op)| (*r, op.clone())).collect())
}

fn build_dual(m: &GeneralizedModule, alg: &VertexAlgebra) -> Result<GeneralizedModule> {
    let group = m.space.group.clone();
    let basis = m
        .space
        .basis()
        .iter()
        .map(|b| BasisVector { grade: group.neg(&b.grade), weight: b.weight.clone(), name: dual_name(&b.name) })
        .collect();
    let space = GradedSpace::new(dual_name(&m.space.label), group, basis)?;
    let modes = build_opposite(m, alg)?.into_iter().map(|(k, op)| (k, op.transpose())).collect();
    Ok(GeneralizedModule::new(
        space,
        modes,
        m.l_plus.transpose(),
        m.l_nil.transpose(),
        m.l_minus.transpose(),
        m.cutoff.clone(),
    ))
}

fn dual_name(s: &str) -> String {
    match s.strip_suffix('\'') {
        Some(base) => base.to_string(),
        None => format!("{s}'"),
    }
}

/// The contragredient `W'`, cached on `W`. For a module that is itself a
/// cached contragredient this returns the original module (`W'' = W`).
pub fn contragredient(m: &Arc<GeneralizedModule>, alg: &VertexAlgebra) -> Result<Arc<GeneralizedModule>> {
    if let Some(base) = m.dual_base() {
        return Ok(base);
    }
    if let Some(d) = m.dual_cache.get() {
        return Ok(d.clone());
    }
    let mut d = build_dual(m, alg)?;
    d.dual_of = Some(Arc::downgrade(m));
    let d = Arc::new(d);
    Ok(m.dual_cache.get_or_init(|| d).clone())
}

/// The contragredient built from scratch, without any identification.
pub fn contragredient_explicit(m: &GeneralizedModule, alg: &VertexAlgebra) -> Result<GeneralizedModule> {
    build_dual(m, alg)
}

/// `⟨w', w⟩` for `w' ∈ W'` and `w ∈ W` written in dual bases.
pub fn pair(dual: &SVec, v: &SVec) -> LogSeries {
    let mut acc = LogSeries::zero();
    for (i, a) in dual {
        if let Some(b) = v.get(i) {
            acc.add_product(a, b);
        }
    }
    acc
}
