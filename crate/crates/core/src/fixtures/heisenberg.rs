//! Rank-one Heisenberg Fock modules `M(λ)` and their vertex operators.
//!
//! The basis of `M(λ)` is indexed by partitions, read as monomials in the
//! `p_n = α_{−n}` acting on the highest-weight vector; `α_n` (`n > 0`) acts
//! as `n ∂/∂p_n` and `α_0` as `λ`. The operator of type
//! `(M(λ+μ); M(λ) M(μ))` is built from
//! `Y(v_λ, x) = exp(λ Σ p_n x^n/n) · x^{λμ} · (p_n ↦ p_n − λ x^{−n})`
//! and the iterate formula for `Y(α_{−n}w, x)`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::graded::{BasisVector, GeneralizedModule, Grade, GradeGroup, GradedSpace, LinearMap, SVec, VertexAlgebra};
use crate::intertwining::{IntertwiningType, LogIntwOp};
use crate::scalar::{binom_int, factorial, ExactComplex, Q};
use crate::series::{LogSeries, Var};

/// Largest supported level cutoff.
pub const MAX_CUTOFF: u32 = 10;

/// Parts in non-increasing order.
pub type Partition = Vec<u32>;
type Poly = BTreeMap<Partition, Q>;

/// Partitions of `n`, ordered by largest part ascending.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in 1..=max.min(n) {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.iter_mut().for_each(|p| p.sort_unstable_by(|a, b| b.cmp(a)));
    out.sort_by(|a, b| a.first().cmp(&b.first()).then_with(|| b.len().cmp(&a.len())).then_with(|| a.cmp(b)));
    out
}

fn level(p: &Partition) -> u32 {
    p.iter().sum()
}

fn monomial_name(p: &Partition) -> String {
    if p.is_empty() {
        return "1".into();
    }
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for k in p {
        *counts.entry(*k).or_default() += 1;
    }
    counts
        .iter()
        .map(|(n, m)| if *m == 1 { format!("p{n}") } else { format!("p{n}^{m}") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn insert_part(p: &Partition, n: u32) -> Partition {
    let mut q = p.clone();
    let pos = q.iter().position(|k| *k < n).unwrap_or(q.len());
    q.insert(pos, n);
    q
}

fn add_to(poly: &mut Poly, key: Partition, c: &Q) {
    if c.is_zero() {
        return;
    }
    let v = poly.get(&key).map(|v| v + c).unwrap_or_else(|| c.clone());
    if v.is_zero() {
        poly.remove(&key);
    } else {
        poly.insert(key, v);
    }
}

fn add_poly(acc: &mut Poly, p: &Poly, c: &Q) {
    for (k, v) in p {
        add_to(acc, k.clone(), &(v * c));
    }
}

/// `p_n · f`, dropping levels above `max`.
fn mul_p(n: u32, f: &Poly, max: u32) -> Poly {
    f.iter().filter(|(k, _)| level(k) + n <= max).map(|(k, v)| (insert_part(k, n), v.clone())).collect()
}

/// `α_n f = n ∂f/∂p_n` for `n > 0`.
fn annihilate(n: u32, f: &Poly) -> Poly {
    let mut out = Poly::new();
    for (k, v) in f {
        let mult = k.iter().filter(|x| **x == n).count() as i64;
        if mult > 0 {
            let mut q = k.clone();
            let pos = q.iter().position(|x| *x == n).unwrap();
            q.remove(pos);
            add_to(&mut out, q, &(v * &Q::from_int(n as i64 * mult)));
        }
    }
    out
}

fn mul(a: &Poly, b: &Poly, max: u32) -> Poly {
    let mut out = Poly::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            if level(ka) + level(kb) > max {
                continue;
            }
            let mut k: Partition = ka.iter().chain(kb).copied().collect();
            k.sort_unstable_by(|x, y| y.cmp(x));
            add_to(&mut out, k, &(va * vb));
        }
    }
    out
}

/// `exp(λ Σ_{n>0} p_n x^n / n)` up to level `max` (the power of `x` equals the level).
fn creation_exponential(lambda: &Q, max: u32) -> Poly {
    let mut out = Poly::new();
    for l in 0..=max {
        for p in partitions(l) {
            let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
            for k in &p {
                *counts.entry(*k).or_default() += 1;
            }
            let mut c = Q::one();
            for (n, m) in counts {
                let f = lambda / &Q::from_int(n as i64);
                c = &(&c * &f.pow(m)) / &factorial(m);
            }
            add_to(&mut out, p, &c);
        }
    }
    out
}

/// `f(p_n − λx^{−n})`, with the power of `x` implied by the level drop.
fn translate(f: &Partition, lambda: &Q) -> Poly {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for k in f {
        *counts.entry(*k).or_default() += 1;
    }
    let mut out: Poly = Poly::from([(Vec::new(), Q::one())]);
    for (n, m) in counts {
        let mut factor = Poly::new();
        for j in 0..=m {
            // C(m, j) p_n^{m−j} (−λ)^j
            let c = &binom_int(m as i64, j) * &(-lambda).pow(j);
            add_to(&mut factor, vec![n; (m - j) as usize], &c);
        }
        out = mul(&out, &factor, u32::MAX);
    }
    out
}

/// `Y(p_a v_λ, x)(p_b v_μ)` as output polynomials for all `a` in `left` and
/// every `b` in `right`; the power of `x` is `λμ + ℓ_out − ℓ_a − ℓ_b`.
struct VertexTable<'a> {
    lambda: Q,
    mu: Q,
    right: &'a [Partition],
    right_index: BTreeMap<Partition, usize>,
    out_max: u32,
    memo: BTreeMap<Partition, Vec<Poly>>,
}

impl<'a> VertexTable<'a> {
    fn new(lambda: Q, mu: Q, right: &'a [Partition], out_max: u32) -> Self {
        let right_index = right.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        VertexTable { lambda, mu, right, right_index, out_max, memo: BTreeMap::new() }
    }

    fn row(&mut self, a: &Partition) -> Vec<Poly> {
        if let Some(r) = self.memo.get(a) {
            return r.clone();
        }
        let row = if a.is_empty() {
            let e = creation_exponential(&self.lambda, self.out_max);
            self.right.iter().map(|b| mul(&e, &translate(b, &self.lambda), self.out_max)).collect()
        } else {
            let n = a[0];
            let rest: Partition = a[1..].to_vec();
            let prev = self.row(&rest);
            let sign = if n.is_multiple_of(2) { Q::one() } else { -Q::one() };
            let mut row = Vec::with_capacity(self.right.len());
            for (bi, b) in self.right.iter().enumerate() {
                let mut out = Poly::new();
                // Σ_i C(n+i−1, i) α_{−n−i} Y(w', x) w2
                for i in 0..=self.out_max {
                    let c = binom_int((n + i) as i64 - 1, i);
                    add_poly(&mut out, &mul_p(n + i, &prev[bi], self.out_max), &c);
                }
                // −(−1)^n Σ_i C(n+i−1, i) Y(w', x) α_i w2
                add_poly(&mut out, &prev[bi], &(&(-&sign) * &self.mu));
                let bpoly: Poly = Poly::from([(b.clone(), Q::one())]);
                for i in 1..=level(b) {
                    let c = &(-&sign) * &binom_int((n + i) as i64 - 1, i);
                    for (k, v) in annihilate(i, &bpoly) {
                        let j = self.right_index[&k];
                        add_poly(&mut out, &prev[j], &(&c * &v));
                    }
                }
                row.push(out);
            }
            row
        };
        self.memo.insert(a.clone(), row.clone());
        row
    }
}

fn basis_up_to(max: u32) -> Vec<Partition> {
    (0..=max).flat_map(partitions).collect()
}

/// The mode vectors `1, α_{−1}1, α_{−1}²1, α_{−2}1` of the algebra.
fn mode_partitions() -> Vec<Partition> {
    vec![vec![], vec![1], vec![1, 1], vec![2]]
}

fn check_cutoff(cutoff: u32) -> Result<()> {
    if cutoff > MAX_CUTOFF {
        Err(Error::Resource(format!("Fock cutoff {cutoff} exceeds {MAX_CUTOFF}")))
    } else if cutoff < 2 {
        Err(Error::Unsupported("Fock cutoff must be at least 2".into()))
    } else {
        Ok(())
    }
}

fn fock_label(lambda: &Q) -> String {
    format!("M({lambda})")
}

/// `M(λ)` truncated at level `cutoff`, with modes of `1, α, α_{−1}²1, α_{−2}1`
/// keyed by their index in `M(0)`.
pub fn build_fock(lambda: &Q, cutoff: u32) -> Result<GeneralizedModule> {
    check_cutoff(cutoff)?;
    let parts = basis_up_to(cutoff);
    let v_parts = basis_up_to(cutoff);
    let v_index: BTreeMap<Partition, usize> = v_parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let index: BTreeMap<Partition, usize> = parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let h0 = &(lambda * lambda) / &Q::from_int(2);
    let basis = parts
        .iter()
        .map(|p| BasisVector {
            grade: Grade(vec![lambda.clone()]),
            weight: ExactComplex::real(&h0 + &Q::from_int(level(p) as i64)),
            name: monomial_name(p),
        })
        .collect();
    let space = GradedSpace::new(fock_label(lambda), GradeGroup::rational(1), basis)?;

    let mut table = VertexTable::new(Q::zero(), lambda.clone(), &parts, cutoff);
    let mut modes: BTreeMap<(usize, i64), LinearMap> = BTreeMap::new();
    for u in mode_partitions() {
        let lu = level(&u) as i64;
        let row = table.row(&u);
        for (bi, b) in parts.iter().enumerate() {
            for (r, c) in &row[bi] {
                let m = lu + level(b) as i64 - level(r) as i64 - 1;
                modes.entry((v_index[&u], m)).or_default().insert(index[r], bi, ExactComplex::real(c.clone()));
            }
        }
    }
    let omega = v_index[&vec![1, 1]];
    let half = ExactComplex::rat(1, 2);
    let l = |j: i64| {
        let mut op = LinearMap::new();
        if let Some(m) = modes.get(&(omega, j + 1)) {
            op.add_scaled(m, &half);
        }
        op
    };
    let (lm, l0, lp) = (l(-1), l(0), l(1));
    // L(0) is semisimple here: its nilpotent part is L(0) minus the weights
    let mut nil = l0;
    for i in 0..parts.len() {
        nil.insert(i, i, -space.weight(i).clone());
    }
    if !nil.is_zero() {
        return Err(Error::Grading("Fock L(0) is not diagonal".into()));
    }
    Ok(GeneralizedModule::new(space, modes, lm, LinearMap::new(), lp, &h0 + &Q::from_int(cutoff as i64)))
}

/// A Heisenberg vertex algebra together with a cache of its Fock modules,
/// so that every module appears as a single shared `Arc`.
pub struct HeisenbergFamily {
    pub cutoff: u32,
    pub alg: Arc<VertexAlgebra>,
    modules: Mutex<BTreeMap<Q, Arc<GeneralizedModule>>>,
}

impl HeisenbergFamily {
    pub fn new(cutoff: u32) -> Result<Self> {
        let v = Arc::new(build_fock(&Q::zero(), cutoff)?);
        let parts = basis_up_to(cutoff);
        let idx = |p: &Partition| parts.iter().position(|q| q == p).expect("mode vector in basis");
        let mode_vectors: Vec<usize> = mode_partitions().iter().map(idx).collect();
        let conformal = BTreeMap::from([(idx(&vec![1, 1]), ExactComplex::rat(1, 2))]);
        let alg = Arc::new(VertexAlgebra {
            name: "Heisenberg".into(),
            module: v.clone(),
            vacuum: idx(&vec![]),
            conformal: Some(conformal),
            mode_vectors,
        });
        Ok(HeisenbergFamily { cutoff, alg, modules: Mutex::new(BTreeMap::from([(Q::zero(), v)])) })
    }

    pub fn fock(&self, lambda: &Q) -> Result<Arc<GeneralizedModule>> {
        if let Some(m) = self.modules.lock().unwrap().get(lambda) {
            return Ok(m.clone());
        }
        let m = Arc::new(build_fock(lambda, self.cutoff)?);
        Ok(self.modules.lock().unwrap().entry(lambda.clone()).or_insert(m).clone())
    }

    /// The operator of type `(M(λ+μ); M(λ) M(μ))` with lowest coefficient
    /// `Y(v_λ, x)v_μ = x^{λμ} v_{λ+μ} + …`.
    pub fn intw(&self, lambda: &Q, mu: &Q) -> Result<LogIntwOp> {
        let nu = lambda + mu;
        let ty = IntertwiningType::new(&self.fock(&nu)?, &self.fock(lambda)?, &self.fock(mu)?);
        let parts = basis_up_to(self.cutoff);
        let index: BTreeMap<&Partition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let lm = lambda * mu;
        let mut table = VertexTable::new(lambda.clone(), mu.clone(), &parts, self.cutoff);
        let mut op = LogIntwOp::zero(ty);
        for (ai, a) in parts.iter().enumerate() {
            let row = table.row(a);
            for (bi, b) in parts.iter().enumerate() {
                let mut v = SVec::new();
                for (r, c) in &row[bi] {
                    let e = &lm + &Q::from_int(level(r) as i64 - level(a) as i64 - level(b) as i64);
                    v.insert(index[r], LogSeries::monomial(Var::X, ExactComplex::real(e), 0).scale(&ExactComplex::real(c.clone())));
                }
                op.insert(ai, bi, v);
            }
        }
        Ok(op)
    }
}

/// `heis_intw` with a fresh family at the given cutoff.
pub fn heis_intw(lambda: &Q, mu: &Q, cutoff: u32) -> Result<(HeisenbergFamily, LogIntwOp)> {
    let fam = HeisenbergFamily::new(cutoff)?;
    let op = fam.intw(lambda, mu)?;
    Ok((fam, op))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_order_starts_with_mode_vectors() {
        let b = basis_up_to(2);
        assert_eq!(b, vec![vec![], vec![1], vec![1, 1], vec![2]]);
    }

    #[test]
    fn translate_expands_binomially() {
        // (p1 − λx^{-1})^2 = p1^2 − 2λ p1 + λ^2
        let t = translate(&vec![1, 1], &Q::from_int(3));
        assert_eq!(t[&vec![1, 1]], Q::one());
        assert_eq!(t[&vec![1]], Q::from_int(-6));
        assert_eq!(t[&vec![]], Q::from_int(9));
    }
}
