//! Doubly graded generalized modules.
//!
//! A module is stored pre-truncated: a basis sorted by weight, the pieces
//! `(β, n)` it spans, mode operators `v_m` for a fixed set of vectors `v` of
//! the algebra, and the `sl(2)` data `L(−1)`, `L(0) = weight + N`, `L(1)`.
//! Everything with real weight `≤ cutoff` is complete; above it the module
//! is absent, so a computation is exact whenever every weight it touches is
//! `≤ cutoff`.

mod check;
mod dual;
mod linear;
mod ops;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, Weak};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ExactComplex, Q};

pub use check::check_strong_grading;
pub use dual::{contragredient, contragredient_explicit, opposite_modes, pair, y_opposite};
pub use linear::{basis_svec, exact_to_svec, svec_add_scaled, svec_is_zero, svec_sub, ExactVec, LinearMap, SVec};
pub use ops::{exp_l, power_l0, x_l0_apply, PowerBase};

/// Element of a finitely presented abelian group `ℚ^a × Π ℚ/mℤ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Grade(pub Vec<Q>);

/// Per-coordinate moduli; `None` means an unreduced rational coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GradeGroup {
    pub moduli: Vec<Option<i64>>,
}

impl GradeGroup {
    pub fn trivial() -> Self {
        GradeGroup { moduli: Vec::new() }
    }

    pub fn rational(rank: usize) -> Self {
        GradeGroup { moduli: vec![None; rank] }
    }

    pub fn zero(&self) -> Grade {
        Grade(vec![Q::zero(); self.moduli.len()])
    }

    pub fn reduce(&self, g: Grade) -> Grade {
        Grade(
            g.0.into_iter()
                .zip(&self.moduli)
                .map(|(c, m)| match m {
                    Some(m) => {
                        let m = Q::from_int(*m);
                        let k = (&c / &m).floor();
                        &c - &(&k * &m)
                    }
                    None => c,
                })
                .collect(),
        )
    }

    pub fn add(&self, a: &Grade, b: &Grade) -> Grade {
        self.reduce(Grade(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
    }

    pub fn neg(&self, a: &Grade) -> Grade {
        self.reduce(Grade(a.0.iter().map(|x| -x).collect()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisVector {
    pub grade: Grade,
    pub weight: ExactComplex,
    pub name: String,
}

/// Basis sorted by weight, grouped into doubly homogeneous pieces.
#[derive(Clone, Debug)]
pub struct GradedSpace {
    pub label: String,
    pub group: GradeGroup,
    basis: Vec<BasisVector>,
    pieces: BTreeMap<(ExactComplex, Grade), Vec<usize>>,
    by_weight: BTreeMap<ExactComplex, Vec<usize>>,
}

impl GradedSpace {
    pub fn new(label: impl Into<String>, group: GradeGroup, basis: Vec<BasisVector>) -> Result<Self> {
        let mut pieces: BTreeMap<(ExactComplex, Grade), Vec<usize>> = BTreeMap::new();
        let mut by_weight: BTreeMap<ExactComplex, Vec<usize>> = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            if i > 0 && basis[i - 1].weight > b.weight {
                return Err(Error::Grading("basis must be sorted by weight".into()));
            }
            if b.grade.0.len() != group.moduli.len() {
                return Err(Error::Grading(format!("basis vector {} has a grade of the wrong rank", b.name)));
            }
            pieces.entry((b.weight.clone(), group.reduce(b.grade.clone()))).or_default().push(i);
            by_weight.entry(b.weight.clone()).or_default().push(i);
        }
        Ok(GradedSpace { label: label.into(), group, basis, pieces, by_weight })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn weight(&self, i: usize) -> &ExactComplex {
        &self.basis[i].weight
    }

    pub fn grade(&self, i: usize) -> &Grade {
        &self.basis[i].grade
    }

    pub fn pieces(&self) -> &BTreeMap<(ExactComplex, Grade), Vec<usize>> {
        &self.pieces
    }

    pub fn piece_of(&self, i: usize) -> &[usize] {
        let b = &self.basis[i];
        &self.pieces[&(b.weight.clone(), self.group.reduce(b.grade.clone()))]
    }

    pub fn weights(&self) -> impl Iterator<Item = &ExactComplex> {
        self.by_weight.keys()
    }

    pub fn with_weight(&self, w: &ExactComplex) -> &[usize] {
        self.by_weight.get(w).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn min_weight_re(&self) -> Option<Q> {
        self.basis.first().map(|b| b.weight.re.clone())
    }
}

/// A truncated strongly graded generalized module.
#[derive(Debug)]
pub struct GeneralizedModule {
    pub space: GradedSpace,
    /// `(algebra basis index, m) ↦ v_m`
    pub modes: BTreeMap<(usize, i64), LinearMap>,
    pub l_minus: LinearMap,
    /// nilpotent part `N` of `L(0)`
    pub l_nil: LinearMap,
    pub l_plus: LinearMap,
    /// real weights `≤ cutoff` are complete
    pub cutoff: Q,
    dual_of: Option<Weak<GeneralizedModule>>,
    dual_cache: OnceLock<Arc<GeneralizedModule>>,
    opposite_cache: OnceLock<BTreeMap<(usize, i64), LinearMap>>,
}

impl Clone for GeneralizedModule {
    fn clone(&self) -> Self {
        GeneralizedModule::new(
            self.space.clone(),
            self.modes.clone(),
            self.l_minus.clone(),
            self.l_nil.clone(),
            self.l_plus.clone(),
            self.cutoff.clone(),
        )
    }
}

impl GeneralizedModule {
    pub fn new(
        space: GradedSpace,
        modes: BTreeMap<(usize, i64), LinearMap>,
        l_minus: LinearMap,
        l_nil: LinearMap,
        l_plus: LinearMap,
        cutoff: Q,
    ) -> Self {
        GeneralizedModule {
            space,
            modes,
            l_minus,
            l_nil,
            l_plus,
            cutoff,
            dual_of: None,
            dual_cache: OnceLock::new(),
            opposite_cache: OnceLock::new(),
        }
    }

    pub fn label(&self) -> &str {
        &self.space.label
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn weight(&self, i: usize) -> &ExactComplex {
        self.space.weight(i)
    }

    /// Whether the projection to weight `w` is fully stored.
    pub fn covers(&self, w: &ExactComplex) -> bool {
        w.re <= self.cutoff
    }

    pub fn mode(&self, v: usize, m: i64) -> Option<&LinearMap> {
        self.modes.get(&(v, m))
    }

    /// `L(j)` for `j ∈ {−1, 0, 1}`; `L(0)` includes the semisimple part.
    pub fn l(&self, j: i64) -> LinearMap {
        match j {
            -1 => self.l_minus.clone(),
            1 => self.l_plus.clone(),
            0 => {
                let mut m = self.l_nil.clone();
                for i in 0..self.dim() {
                    m.insert(i, i, self.weight(i).clone());
                }
                m
            }
            _ => panic!("only L(-1), L(0), L(1) are stored"),
        }
    }

    pub fn is_dual(&self) -> bool {
        self.dual_of.is_some()
    }

    /// The module this one is the contragredient of, if any.
    pub fn dual_base(&self) -> Option<Arc<GeneralizedModule>> {
        self.dual_of.as_ref().and_then(Weak::upgrade)
    }
}

/// A vertex algebra given through its own (truncated) adjoint module.
#[derive(Debug)]
pub struct VertexAlgebra {
    pub name: String,
    pub module: Arc<GeneralizedModule>,
    pub vacuum: usize,
    /// conformal vector in the basis of `module`, if the algebra is conformal
    pub conformal: Option<ExactVec>,
    /// basis vectors of the algebra that carry mode operators on every module
    pub mode_vectors: Vec<usize>,
}

impl VertexAlgebra {
    pub fn weight(&self, v: usize) -> &ExactComplex {
        self.module.weight(v)
    }

    pub fn grade(&self, v: usize) -> &Grade {
        self.module.space.grade(v)
    }

    pub fn vector_name(&self, v: usize) -> &str {
        &self.module.space.basis()[v].name
    }

    /// Integral weight of a mode vector.
    pub fn int_weight(&self, v: usize) -> Result<i64> {
        self.weight(v)
            .to_i64()
            .ok_or_else(|| Error::Unsupported(format!("algebra vector {} has non-integral weight", self.vector_name(v))))
    }
}

/// Direct sum of modules over the same algebra; returns the embeddings of
/// each summand's basis.
pub fn direct_sum(label: &str, parts: &[&GeneralizedModule]) -> Result<(GeneralizedModule, Vec<Vec<usize>>)> {
    let group = parts.first().map(|m| m.space.group.clone()).unwrap_or_default();
    let mut all: Vec<(ExactComplex, usize, usize)> = Vec::new();
    for (s, m) in parts.iter().enumerate() {
        if m.space.group != group {
            return Err(Error::TypeMismatch("summands have different grade groups".into()));
        }
        for i in 0..m.dim() {
            all.push((m.weight(i).clone(), s, i));
        }
    }
    all.sort();
    let mut emb: Vec<Vec<usize>> = parts.iter().map(|m| vec![0; m.dim()]).collect();
    let mut basis = Vec::new();
    for (new, (_, s, i)) in all.iter().enumerate() {
        emb[*s][*i] = new;
        let mut b = parts[*s].space.basis()[*i].clone();
        b.name = format!("{}:{}", s, b.name);
        basis.push(b);
    }
    let space = GradedSpace::new(label, group, basis)?;
    let embed = |s: usize, m: &LinearMap, out: &mut LinearMap| {
        for (r, c, v) in m.entries() {
            out.insert(emb[s][r], emb[s][c], v.clone());
        }
    };
    let mut modes: BTreeMap<(usize, i64), LinearMap> = BTreeMap::new();
    let (mut lm, mut ln, mut lp) = (LinearMap::new(), LinearMap::new(), LinearMap::new());
    for (s, m) in parts.iter().enumerate() {
        for (k, op) in &m.modes {
            embed(s, op, modes.entry(*k).or_default());
        }
        embed(s, &m.l_minus, &mut lm);
        embed(s, &m.l_nil, &mut ln);
        embed(s, &m.l_plus, &mut lp);
    }
    let cutoff = parts.iter().map(|m| m.cutoff.clone()).min().unwrap_or_default();
    Ok((GeneralizedModule::new(space, modes, lm, ln, lp, cutoff), emb))
}
