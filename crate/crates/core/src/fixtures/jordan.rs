//! Modules for the trivial algebra `ℂ1` with Jordan-block `L(0)`, and
//! logarithmic coefficient families on them.
//!
//! With `L(±1) = 0` and `L(0) = weight + N`, every
//! `Y(w1, x)w2 = x^{L(0)} B(x^{−L(0)}w1 ⊗ x^{−L(0)}w2)` obeys the weight law
//! for an arbitrary linear `B`. Supporting `B` on cyclic vectors only (so
//! it kills `Im N` in both inputs) keeps the log power below the block size.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graded::{
    basis_svec, exact_to_svec, power_l0, BasisVector, ExactVec, GeneralizedModule, GradeGroup, GradedSpace, LinearMap, PowerBase,
    VertexAlgebra,
};
use crate::intertwining::{IntertwiningType, LogIntwOp};
use crate::scalar::{ExactComplex, Q};
use crate::series::Var;

/// A seeded random logarithmic family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanFamily {
    /// Jordan block size (nilpotency index of `N`)
    pub r: u32,
    pub seed: u64,
    /// number of nonzero entries of `B`
    pub support: usize,
}

impl JordanFamily {
    pub fn new(r: u32, seed: u64) -> Self {
        JordanFamily { r, seed, support: 6 }
    }
}

/// `ℂ1` as a vertex algebra: one vector of weight 0 whose only mode is `1_{−1} = id`.
pub fn trivial_algebra() -> VertexAlgebra {
    let space = GradedSpace::new(
        "C",
        GradeGroup::trivial(),
        vec![BasisVector { grade: crate::graded::Grade(vec![]), weight: ExactComplex::zero(), name: "1".into() }],
    )
    .expect("one-dimensional space");
    let modes = BTreeMap::from([((0, -1), LinearMap::identity([0]))]);
    let module = GeneralizedModule::new(space, modes, LinearMap::new(), LinearMap::new(), LinearMap::new(), Q::zero());
    VertexAlgebra { name: "trivial".into(), module: Arc::new(module), vacuum: 0, conformal: None, mode_vectors: vec![0] }
}

/// A trivial-algebra module with Jordan blocks `(weight, size)`; in each
/// block `e_0` is cyclic and `N e_j = e_{j+1}`.
pub fn jordan_module(label: &str, blocks: &[(Q, u32)]) -> Result<GeneralizedModule> {
    let mut sorted: Vec<(usize, &(Q, u32))> = blocks.iter().enumerate().collect();
    sorted.sort_by(|a, b| a.1 .0.cmp(&b.1 .0));
    let mut basis = Vec::new();
    let mut nil = LinearMap::new();
    for (k, (w, size)) in sorted {
        let start = basis.len();
        for j in 0..*size {
            basis.push(BasisVector { grade: crate::graded::Grade(vec![]), weight: ExactComplex::real(w.clone()), name: format!("b{k}.{j}") });
            if j > 0 {
                nil.insert(start + j as usize, start + j as usize - 1, ExactComplex::one());
            }
        }
    }
    let dim = basis.len();
    let cutoff = blocks.iter().map(|(w, _)| w.clone()).max().unwrap_or_else(Q::zero);
    let space = GradedSpace::new(label, GradeGroup::trivial(), basis)?;
    let modes = BTreeMap::from([((0, -1), LinearMap::identity(0..dim))]);
    Ok(GeneralizedModule::new(space, modes, LinearMap::new(), nil, LinearMap::new(), cutoff))
}

/// Indices of the cyclic vectors (`e_0` of each block).
pub fn cyclic_vectors(m: &GeneralizedModule) -> Vec<usize> {
    (0..m.dim()).filter(|i| m.space.basis()[*i].name.ends_with(".0")).collect()
}

/// `Y(w1, x)w2 = x^{L(0)} B(x^{−L(0)}w1 ⊗ x^{−L(0)}w2)` for `B` given on basis pairs.
pub fn operator_from_bilinear(ty: IntertwiningType, b: &BTreeMap<(usize, usize), ExactVec>) -> Result<LogIntwOp> {
    let down = PowerBase::var(Var::X, -1);
    let up = PowerBase::var(Var::X, 1);
    let s1: Vec<_> = (0..ty.w1.dim()).map(|i| power_l0(&ty.w1, &basis_svec(i), &down)).collect::<Result<_>>()?;
    let s2: Vec<_> = (0..ty.w2.dim()).map(|i| power_l0(&ty.w2, &basis_svec(i), &down)).collect::<Result<_>>()?;
    let bmap: BTreeMap<(usize, usize), _> = b.iter().map(|(k, v)| (*k, exact_to_svec(v))).collect();
    let mut op = LogIntwOp::zero(ty.clone());
    for (i, a1) in s1.iter().enumerate() {
        for (j, a2) in s2.iter().enumerate() {
            let mut t = crate::graded::SVec::new();
            for (p, c1) in a1 {
                for (q, c2) in a2 {
                    if let Some(v) = bmap.get(&(*p, *q)) {
                        crate::graded::svec_add_scaled(&mut t, v, &(c1 * c2));
                    }
                }
            }
            if !t.is_empty() {
                op.insert(i, j, power_l0(&ty.w3, &t, &up)?);
            }
        }
    }
    Ok(op)
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let n: i64 = rng.gen_range(-6..=6);
        if n != 0 {
            return Q::new(n, rng.gen_range(1..=4));
        }
    }
}

fn random_module(rng: &mut ChaCha8Rng, label: &str, r: u32) -> Result<GeneralizedModule> {
    let blocks: Vec<(Q, u32)> = (0..2).map(|_| (Q::new(rng.gen_range(0..=12), 4), r)).collect();
    jordan_module(label, &blocks)
}

/// Deterministic random family: three modules with blocks of size `r` at
/// random rational weights, and `B` with `support` random entries on
/// cyclic ⊗ cyclic inputs.
pub fn random_log_family(spec: &JordanFamily) -> Result<LogIntwOp> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let r = spec.r.max(1);
    let w1 = Arc::new(random_module(&mut rng, &format!("J{}a", spec.seed), r)?);
    let w2 = Arc::new(random_module(&mut rng, &format!("J{}b", spec.seed), r)?);
    let w3 = Arc::new(random_module(&mut rng, &format!("J{}c", spec.seed), r)?);
    let (c1, c2) = (cyclic_vectors(&w1), cyclic_vectors(&w2));
    let mut b: BTreeMap<(usize, usize), ExactVec> = BTreeMap::new();
    for _ in 0..spec.support {
        let p = c1[rng.gen_range(0..c1.len())];
        let q = c2[rng.gen_range(0..c2.len())];
        let out = rng.gen_range(0..w3.dim());
        *b.entry((p, q)).or_default().entry(out).or_insert_with(ExactComplex::zero) += &ExactComplex::real(random_q(&mut rng));
    }
    for v in b.values_mut() {
        v.retain(|_, c| !c.is_zero());
    }
    operator_from_bilinear(IntertwiningType::new(&w3, &w1, &w2), &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_is_nilpotent_of_index_r() {
        let m = jordan_module("J", &[(Q::new(1, 2), 3)]).unwrap();
        let n2 = m.l_nil.compose(&m.l_nil);
        assert!(!n2.is_zero());
        assert!(n2.compose(&m.l_nil).is_zero());
    }
}
