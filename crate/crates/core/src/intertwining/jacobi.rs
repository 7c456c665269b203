//! Jacobi identities for P(z)- and Q(z)-intertwining maps, their `sl(2)`
//! consequences and the one-mode commutator formula.
//!
//! Everything is checked coefficientwise on a truncated module: a
//! coefficient is compared only when every term feeding it lies below the
//! module cutoffs; the rest is reported as skipped.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{basis, IntwMap, MapKind};
use crate::error::{Error, Result};
use crate::graded::{opposite_modes, svec_add_scaled, GeneralizedModule, LinearMap, SVec, VertexAlgebra};
use crate::report::{Comparator, VerificationReport};
use crate::scalar::{binom_int, ExactComplex, Q};
use crate::series::{delta_expand, DeltaPattern, LogSeries, MonoKey, TruncationWindow, Var};
use crate::symbolic::ZContext;

/// Which coefficients of a Jacobi identity to compare.
#[derive(Clone, Debug)]
pub struct JacobiConfig {
    /// `x0^{-a-1}` for `a` in this inclusive range
    pub a_range: (i64, i64),
    /// `x1^{-k-1}` for `k` in this inclusive range
    pub k_range: (i64, i64),
    /// algebra basis vectors to test; all mode vectors when `None`
    pub vectors: Option<Vec<usize>>,
    /// bound on the summed input levels `Re(wt w_i − min wt W_i)`
    pub max_input_level: Option<Q>,
    pub tol: f64,
}

impl Default for JacobiConfig {
    fn default() -> Self {
        JacobiConfig { a_range: (-2, 2), k_range: (-2, 2), vectors: None, max_input_level: Some(Q::from_int(3)), tol: 1e-9 }
    }
}

impl JacobiConfig {
    fn window(&self) -> String {
        let lvl = self.max_input_level.as_ref().map(|q| q.to_string()).unwrap_or_else(|| "∞".into());
        format!("a∈[{},{}], k∈[{},{}], input level ≤ {lvl}", self.a_range.0, self.a_range.1, self.k_range.0, self.k_range.1)
    }
}

/// The two equivalent shapes of the P(z) `sl(2)` relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Form {
    /// `L(j)I(w1⊗w2) = I(w1⊗L(j)w2) + Σ C(j+1,i) z^i I(L(j−i)w1⊗w2)`
    Bracket,
    /// `I(L(j)w1⊗w2) = Σ C(j+1,i)(−z)^i L(j−i)I(w1⊗w2) − Σ C(j+1,i)(−z)^i I(w1⊗L(j−i)w2)`
    Rearranged,
}

fn input_pairs(map: &IntwMap, max_level: Option<&Q>) -> Vec<(usize, usize)> {
    let (w1, w2) = (&map.ty.w1, &map.ty.w2);
    let m1 = w1.space.min_weight_re().unwrap_or_else(Q::zero);
    let m2 = w2.space.min_weight_re().unwrap_or_else(Q::zero);
    let mut out = Vec::new();
    for a in 0..w1.dim() {
        for b in 0..w2.dim() {
            let lvl = &(&w1.weight(a).re - &m1) + &(&w2.weight(b).re - &m2);
            if max_level.is_none_or(|m| lvl <= *m) {
                out.push((a, b));
            }
        }
    }
    out
}

fn require_kind(map: &IntwMap, kind: MapKind) -> Result<()> {
    if map.kind == kind {
        Ok(())
    } else {
        Err(Error::TypeMismatch(format!("expected a {kind:?}(z)-intertwining map, got {:?}", map.kind)))
    }
}

/// `c · z^e`.
fn zc(ctx: &ZContext, c: Q, e: i64) -> LogSeries {
    ctx.z_pow(e).scale(&ExactComplex::real(c))
}

fn int(n: i64) -> ExactComplex {
    ExactComplex::int(n)
}

fn modes_on(m: &GeneralizedModule, v: usize) -> BTreeMap<i64, LinearMap> {
    m.modes.range((v, i64::MIN)..=(v, i64::MAX)).map(|((_, k), op)| (*k, op.clone())).collect()
}

fn opposite_on(m: &GeneralizedModule, alg: &VertexAlgebra, v: usize) -> Result<BTreeMap<i64, LinearMap>> {
    Ok(opposite_modes(m, alg)?.range((v, i64::MIN)..=(v, i64::MAX)).map(|((_, k), op)| (*k, op.clone())).collect())
}

/// Kernel of `x0^{-1}δ((x1−z)/x0)`-type sums: `m ≤ k+a`, `i = k+a−m`, `C(a,i)(−z)^i`.
fn kernel_a(ctx: &ZContext, a: i64, k: i64, m: i64) -> Option<LogSeries> {
    let i = k + a - m;
    (i >= 0).then(|| zc(ctx, &binom_int(a, i as u32) * &Q::from_int(if i % 2 == 0 { 1 } else { -1 }), i))
}

/// Kernel of `z^{-1}δ((x1−x0)/z)`-type sums: `m ≥ a`, `i = m−a`, `C(i−k−1,i)(−1)^i z^{k−i}`.
fn kernel_b(ctx: &ZContext, a: i64, k: i64, m: i64) -> Option<LogSeries> {
    let i = m - a;
    (i >= 0).then(|| zc(ctx, &binom_int(i - k - 1, i as u32) * &Q::from_int(if i % 2 == 0 { 1 } else { -1 }), k - i))
}

/// Kernel of `x0^{-1}δ((z−x1)/(−x0))`-type sums: `m ≥ k`, `i = m−k`, `(−1)^a C(a,i)(−1)^i z^{a−i}`.
fn kernel_c(ctx: &ZContext, a: i64, k: i64, m: i64) -> Option<LogSeries> {
    let i = m - k;
    (i >= 0).then(|| zc(ctx, &binom_int(a, i as u32) * &Q::from_int(if (a + i).rem_euclid(2) == 0 { 1 } else { -1 }), a - i))
}

fn combine(cache: &BTreeMap<i64, SVec>, kernel: impl Fn(i64) -> Option<LogSeries>) -> SVec {
    let mut out = SVec::new();
    for (m, v) in cache {
        if let Some(c) = kernel(*m) {
            svec_add_scaled(&mut out, v, &c);
        }
    }
    out
}

fn sum(a: &SVec, b: &SVec, sign: i64) -> SVec {
    let mut out = a.clone();
    svec_add_scaled(&mut out, b, &LogSeries::int(sign));
    out
}

fn jacobi(map: &IntwMap, alg: &VertexAlgebra, cfg: &JacobiConfig, identity: &str, tag: &str) -> Result<VerificationReport> {
    let ty = &map.ty;
    let ctx = &map.ctx;
    let (w1, w2, w3) = (&ty.w1, &ty.w2, &ty.w3);
    let q = map.kind == MapKind::Q;
    let vectors = cfg.vectors.clone().unwrap_or_else(|| alg.mode_vectors.clone());
    let pairs = input_pairs(map, cfg.max_input_level.as_ref());
    let mut cmp = Comparator::new(Some(ctx), cfg.tol);
    for v in vectors {
        let h = alg.weight(v).clone();
        let (ops3, ops1) = if q { (opposite_on(w3, alg, v)?, opposite_on(w1, alg, v)?) } else { (modes_on(w3, v), modes_on(w1, v)) };
        let ops2 = modes_on(w2, v);
        for &(ia, ib) in &pairs {
            let (e1, e2) = (basis(ia), basis(ib));
            let t0 = map.component(ia, ib);
            let c3: BTreeMap<i64, SVec> = ops3.iter().map(|(m, op)| (*m, op.apply(&t0))).filter(|(_, s)| !s.is_empty()).collect();
            let c1: BTreeMap<i64, SVec> =
                ops1.iter().map(|(m, op)| (*m, map.apply(&op.apply(&e1), &e2))).filter(|(_, s)| !s.is_empty()).collect();
            let c2: BTreeMap<i64, SVec> =
                ops2.iter().map(|(m, op)| (*m, map.apply(&e1, &op.apply(&e2)))).filter(|(_, s)| !s.is_empty()).collect();
            if c1.is_empty() && c2.is_empty() && c3.is_empty() {
                continue;
            }
            let (n1, n2) = (w1.weight(ia), w2.weight(ib));
            for a in cfg.a_range.0..=cfg.a_range.1 {
                for k in cfg.k_range.0..=cfg.k_range.1 {
                    let (lhs, rhs1, rhs2, ok1, ok2);
                    if q {
                        lhs = combine(&c3, |m| kernel_b(ctx, a, k, m));
                        rhs1 = combine(&c1, |m| kernel_a(ctx, a, k, m));
                        rhs2 = combine(&c2, |m| kernel_c(ctx, a, k, m).map(|c| -&c));
                        ok1 = w1.covers(&(&(n1 - &h) + &int(a + k + 1)));
                    } else {
                        lhs = combine(&c3, |m| kernel_a(ctx, a, k, m));
                        rhs1 = combine(&c1, |m| kernel_b(ctx, a, k, m));
                        rhs2 = combine(&c2, |m| kernel_c(ctx, a, k, m));
                        ok1 = w1.covers(&(&(n1 + &h) - &int(a + 1)));
                    }
                    ok2 = w2.covers(&(&(n2 + &h) - &int(k + 1)));
                    let rhs = sum(&rhs1, &rhs2, 1);
                    let keep = |r: usize| {
                        let n = w3.weight(r);
                        let src = if q { &(n + &h) - &int(a + 1) } else { &(n - &h) + &int(k + a + 1) };
                        ok1 && ok2 && w3.covers(&src)
                    };
                    let key = |r: usize, mk: &MonoKey| {
                        format!("{}: ({ia},{ib}) a={a} k={k} -> {}{}", alg.vector_name(v), w3.space.basis()[r].name, show_key(mk))
                    };
                    cmp.compare_svec(key, &lhs, &rhs, keep);
                }
            }
        }
    }
    Ok(cmp.finish(identity, tag, &cfg.window()))
}

fn show_key(k: &MonoKey) -> String {
    if k.is_one() {
        String::new()
    } else {
        format!(" [{k}]")
    }
}

/// Coefficientwise P(z)-Jacobi identity
/// `x0^{-1}δ((x1−z)/x0)Y3(v,x1)I(w1⊗w2) = z^{-1}δ((x1−x0)/z)I(Y1(v,x0)w1⊗w2) + x0^{-1}δ((z−x1)/(−x0))I(w1⊗Y2(v,x1)w2)`.
pub fn verify_p_jacobi(map: &IntwMap, alg: &VertexAlgebra, cfg: &JacobiConfig) -> Result<VerificationReport> {
    require_kind(map, MapKind::P)?;
    jacobi(map, alg, cfg, &format!("P(z)-Jacobi {}", map.ty.label()), "p-jacobi")
}

/// Coefficientwise Q(z)-Jacobi identity
/// `z^{-1}δ((x1−x0)/z)Y3°(v,x0)J(w1⊗w2) = x0^{-1}δ((x1−z)/x0)J(Y1°(v,x1)w1⊗w2) − x0^{-1}δ((z−x1)/(−x0))J(w1⊗Y2(v,x1)w2)`.
pub fn verify_q_jacobi(map: &IntwMap, alg: &VertexAlgebra, cfg: &JacobiConfig) -> Result<VerificationReport> {
    require_kind(map, MapKind::Q)?;
    jacobi(map, alg, cfg, &format!("Q(z)-Jacobi {}", map.ty.label()), "q-jacobi")
}

/// `v_m I(w1⊗w2) = I(w1⊗v_m w2) + Σ_{i≥0} C(m,i) z^{m−i} I(v_i w1⊗w2)` for
/// `m` in `cfg.k_range` (`cfg.a_range` is ignored).
pub fn verify_elm(map: &IntwMap, alg: &VertexAlgebra, cfg: &JacobiConfig) -> Result<VerificationReport> {
    require_kind(map, MapKind::P)?;
    let cfg = JacobiConfig { a_range: (0, 0), ..cfg.clone() };
    jacobi(map, alg, &cfg, &format!("commutator formula {}", map.ty.label()), "elm")
}

fn lv(m: &GeneralizedModule, j: i64, v: &SVec) -> SVec {
    m.l(j).apply(v)
}

struct Sl2Rows<'a> {
    map: &'a IntwMap,
    cmp: Comparator,
    pairs: Vec<(usize, usize)>,
}

impl<'a> Sl2Rows<'a> {
    fn new(map: &'a IntwMap, tol: f64, max_level: Option<&Q>) -> Self {
        Sl2Rows { map, cmp: Comparator::new(Some(&map.ctx), tol), pairs: input_pairs(map, max_level) }
    }

    fn row(&mut self, ia: usize, ib: usize, j: i64, lhs: &SVec, rhs: &SVec, keep: impl Fn(usize) -> bool) {
        let w3 = &self.map.ty.w3;
        let key = |r: usize, mk: &MonoKey| format!("({ia},{ib}) j={j} -> {}{}", w3.space.basis()[r].name, show_key(mk));
        self.cmp.compare_svec(key, lhs, rhs, keep);
    }
}

fn sl2_window(max_level: Option<&Q>) -> String {
    format!("j∈{{-1,0,1}}, input level ≤ {}", max_level.map(|q| q.to_string()).unwrap_or_else(|| "∞".into()))
}

/// `sl(2)` relations of a P(z)-intertwining map in either form.
pub fn verify_p_sl2(map: &IntwMap, form: Sl2Form, tol: f64, max_level: Option<&Q>) -> Result<VerificationReport> {
    require_kind(map, MapKind::P)?;
    let (w1, w2, w3) = (&map.ty.w1, &map.ty.w2, &map.ty.w3);
    let ctx = &map.ctx;
    let mut rows = Sl2Rows::new(map, tol, max_level);
    for (ia, ib) in rows.pairs.clone() {
        let (e1, e2) = (basis(ia), basis(ib));
        let (n1, n2) = (w1.weight(ia), w2.weight(ib));
        let t0 = map.component(ia, ib);
        for j in -1i64..=1 {
            match form {
                Sl2Form::Bracket => {
                    let lhs = lv(w3, j, &t0);
                    let mut rhs = map.apply(&e1, &lv(w2, j, &e2));
                    for i in 0..=(j + 1) {
                        let c = zc(ctx, binom_int(j + 1, i as u32), i);
                        svec_add_scaled(&mut rhs, &map.apply(&lv(w1, j - i, &e1), &e2), &c);
                    }
                    let ok = w2.covers(&(n2 - &int(j))) && w1.covers(&(n1 + &int(1)));
                    rows.row(ia, ib, j, &lhs, &rhs, |r| ok && w3.covers(&(w3.weight(r) + &int(j))));
                }
                Sl2Form::Rearranged => {
                    let lhs = map.apply(&lv(w1, j, &e1), &e2);
                    let mut rhs = SVec::new();
                    for i in 0..=(j + 1) {
                        let s = if i % 2 == 0 { 1 } else { -1 };
                        let c = zc(ctx, &binom_int(j + 1, i as u32) * &Q::from_int(s), i);
                        svec_add_scaled(&mut rhs, &lv(w3, j - i, &t0), &c);
                        svec_add_scaled(&mut rhs, &map.apply(&e1, &lv(w2, j - i, &e2)), &-&c);
                    }
                    let ok = w1.covers(&(n1 - &int(j))) && w2.covers(&(n2 + &int(1)));
                    rows.row(ia, ib, j, &lhs, &rhs, |r| ok && w3.covers(&(w3.weight(r) + &int(j))));
                }
            }
        }
    }
    let name = match form {
        Sl2Form::Bracket => "P(z) sl(2) relations",
        Sl2Form::Rearranged => "P(z) sl(2) relations (rearranged)",
    };
    Ok(rows.cmp.finish(&format!("{name} {}", map.ty.label()), "p-sl2", &sl2_window(max_level)))
}

/// `L(−j)J(w1⊗w2) = Σ C(j+1,i)(−z)^i J(L(i−j)w1⊗w2) − Σ C(j+1,i)(−z)^i J(w1⊗L(j−i)w2)`.
pub fn verify_q_sl2(map: &IntwMap, tol: f64, max_level: Option<&Q>) -> Result<VerificationReport> {
    require_kind(map, MapKind::Q)?;
    let (w1, w2, w3) = (&map.ty.w1, &map.ty.w2, &map.ty.w3);
    let ctx = &map.ctx;
    let mut rows = Sl2Rows::new(map, tol, max_level);
    for (ia, ib) in rows.pairs.clone() {
        let (e1, e2) = (basis(ia), basis(ib));
        let (n1, n2) = (w1.weight(ia), w2.weight(ib));
        let t0 = map.component(ia, ib);
        for j in -1i64..=1 {
            let lhs = lv(w3, -j, &t0);
            let mut rhs = SVec::new();
            for i in 0..=(j + 1) {
                let s = if i % 2 == 0 { 1 } else { -1 };
                let c = zc(ctx, &binom_int(j + 1, i as u32) * &Q::from_int(s), i);
                svec_add_scaled(&mut rhs, &map.apply(&lv(w1, i - j, &e1), &e2), &c);
                svec_add_scaled(&mut rhs, &map.apply(&e1, &lv(w2, j - i, &e2)), &-&c);
            }
            let ok = w1.covers(&(n1 + &int(j))) && w2.covers(&(n2 + &int(1)));
            rows.row(ia, ib, j, &lhs, &rhs, |r| ok && w3.covers(&(w3.weight(r) - &int(j))));
        }
    }
    Ok(rows.cmp.finish(&format!("Q(z) sl(2) relations {}", map.ty.label()), "q-sl2", &sl2_window(max_level)))
}

fn residue_window(j_max: i64) -> Arc<TruncationWindow> {
    let b = Q::from_int(2 + j_max + 4);
    Arc::new(TruncationWindow::unbounded().with_bound(Var::X0, -&b, b.clone()).with_bound(Var::X1, -&b, b))
}

/// `Σ_m vecs[m] var^{-m-1}` for `m = 0, 1, 2`.
fn generating(vecs: [SVec; 3], var: Var) -> SVec {
    let mut out = SVec::new();
    for (m, v) in vecs.iter().enumerate() {
        svec_add_scaled(&mut out, v, &LogSeries::power(var, int(-(m as i64) - 1)));
    }
    out
}

fn times(d: &LogSeries, v: &SVec) -> SVec {
    let mut out = SVec::new();
    svec_add_scaled(&mut out, v, d);
    out
}

fn coefficient(v: &SVec, e0: i64, e1: i64) -> SVec {
    v.iter()
        .map(|(r, s)| (*r, s.slice(Var::X0, &int(e0), 0).slice(Var::X1, &int(e1), 0)))
        .filter(|(_, s)| !s.is_zero())
        .collect()
}

/// The P(z) `sl(2)` relations obtained by expanding the three delta
/// functions and taking the coefficient of `x0^{-1}x1^{-j-2}` of the
/// Jacobi identity at `v = ω`. Uses the same exactness filter as
/// [`verify_p_sl2`] in its bracket form.
pub fn verify_p_sl2_residue(map: &IntwMap, tol: f64, max_level: Option<&Q>) -> Result<VerificationReport> {
    require_kind(map, MapKind::P)?;
    let (w1, w2, w3) = (&map.ty.w1, &map.ty.w2, &map.ty.w3);
    let ctx = &map.ctx;
    let window = residue_window(1);
    let zpow = |n: i64| ctx.z_pow(n);
    let d_lhs = delta_expand(DeltaPattern::X1MinusZOverX0, &zpow, &window)?;
    let d_r1 = delta_expand(DeltaPattern::X1MinusX0OverZ, &zpow, &window)?;
    let d_r2 = delta_expand(DeltaPattern::ZMinusX1OverMinusX0, &zpow, &window)?;
    let mut rows = Sl2Rows::new(map, tol, max_level);
    for (ia, ib) in rows.pairs.clone() {
        let (e1, e2) = (basis(ia), basis(ib));
        let (n1, n2) = (w1.weight(ia), w2.weight(ib));
        let t0 = map.component(ia, ib);
        // ω_m = L(m − 1)
        let y3 = generating([lv(w3, -1, &t0), lv(w3, 0, &t0), lv(w3, 1, &t0)], Var::X1);
        let y1 = generating([-1, 0, 1].map(|j| map.apply(&lv(w1, j, &e1), &e2)), Var::X0);
        let y2 = generating([-1, 0, 1].map(|j| map.apply(&e1, &lv(w2, j, &e2))), Var::X1);
        let lhs_s = times(&d_lhs, &y3);
        let rhs_s = sum(&times(&d_r1, &y1), &times(&d_r2, &y2), 1);
        for j in -1i64..=1 {
            let lhs = coefficient(&lhs_s, -1, -j - 2);
            let rhs = coefficient(&rhs_s, -1, -j - 2);
            let ok = w2.covers(&(n2 - &int(j))) && w1.covers(&(n1 + &int(1)));
            rows.row(ia, ib, j, &lhs, &rhs, |r| ok && w3.covers(&(w3.weight(r) + &int(j))));
        }
    }
    Ok(rows.cmp.finish(&format!("P(z) sl(2) relations via residues {}", map.ty.label()), "p-sl2-residue", &sl2_window(max_level)))
}

/// The Q(z) `sl(2)` relations as the coefficient of `x0^{-j-2}x1^{-1}` of
/// the expanded Q(z)-Jacobi identity at `v = ω`, using `ω°_r = L(1−r)`.
pub fn verify_q_sl2_residue(map: &IntwMap, tol: f64, max_level: Option<&Q>) -> Result<VerificationReport> {
    require_kind(map, MapKind::Q)?;
    let (w1, w2, w3) = (&map.ty.w1, &map.ty.w2, &map.ty.w3);
    let ctx = &map.ctx;
    let window = residue_window(1);
    let zpow = |n: i64| ctx.z_pow(n);
    let d_lhs = delta_expand(DeltaPattern::X1MinusX0OverZ, &zpow, &window)?;
    let d_r1 = delta_expand(DeltaPattern::X1MinusZOverX0, &zpow, &window)?;
    let d_r2 = delta_expand(DeltaPattern::ZMinusX1OverMinusX0, &zpow, &window)?;
    let mut rows = Sl2Rows::new(map, tol, max_level);
    for (ia, ib) in rows.pairs.clone() {
        let (e1, e2) = (basis(ia), basis(ib));
        let (n1, n2) = (w1.weight(ia), w2.weight(ib));
        let t0 = map.component(ia, ib);
        let y3 = generating([lv(w3, 1, &t0), lv(w3, 0, &t0), lv(w3, -1, &t0)], Var::X0);
        let y1 = generating([1, 0, -1].map(|j| map.apply(&lv(w1, j, &e1), &e2)), Var::X1);
        let y2 = generating([-1, 0, 1].map(|j| map.apply(&e1, &lv(w2, j, &e2))), Var::X1);
        let lhs_s = times(&d_lhs, &y3);
        let rhs_s = sum(&times(&d_r1, &y1), &times(&d_r2, &y2), -1);
        for j in -1i64..=1 {
            let lhs = coefficient(&lhs_s, -j - 2, -1);
            let rhs = coefficient(&rhs_s, -j - 2, -1);
            let ok = w1.covers(&(n1 + &int(j))) && w2.covers(&(n2 + &int(1)));
            rows.row(ia, ib, j, &lhs, &rhs, |r| ok && w3.covers(&(w3.weight(r) - &int(j))));
        }
    }
    Ok(rows.cmp.finish(&format!("Q(z) sl(2) relations via residues {}", map.ty.label()), "q-sl2-residue", &sl2_window(max_level)))
}
