//! Structural checks of a truncated strongly graded generalized module.

use super::{ExactVec, GeneralizedModule, LinearMap, VertexAlgebra};
use crate::report::VerificationReport;
use crate::scalar::ExactComplex;

struct Tally {
    checked: usize,
    offending: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.offending.push(msg());
        }
    }
}

fn shift_check(t: &mut Tally, m: &GeneralizedModule, op: &LinearMap, name: &str, shift: &ExactComplex, grade: &super::Grade) {
    let group = &m.space.group;
    for (r, c, _) in op.entries() {
        let want_w = m.weight(c) + shift;
        let want_g = group.add(m.space.grade(c), grade);
        t.check(m.weight(r) == &want_w && group.reduce(m.space.grade(r).clone()) == want_g, || {
            format!("{name} sends basis {c} to basis {r} outside the expected piece")
        });
    }
}

/// Grading and `sl(2)` consistency of `m` as a module for `alg`:
/// homogeneity of every stored operator, nilpotency of `N`,
/// `[N, L(±1)] = 0`, `[L(1), L(−1)] = 2L(0)` where the data is complete,
/// and `ω_{j+1} = L(j)` when the algebra is conformal.
pub fn check_strong_grading(m: &GeneralizedModule, alg: &VertexAlgebra) -> VerificationReport {
    let mut t = Tally { checked: 0, offending: Vec::new() };
    let zero = m.space.group.zero();

    for ((v, k), op) in &m.modes {
        let h = alg.weight(*v);
        let shift = h - &ExactComplex::int(k + 1);
        shift_check(&mut t, m, op, &format!("{}_{}", alg.vector_name(*v), k), &shift, alg.grade(*v));
    }
    shift_check(&mut t, m, &m.l_minus, "L(-1)", &ExactComplex::one(), &zero);
    shift_check(&mut t, m, &m.l_plus, "L(1)", &ExactComplex::int(-1), &zero);
    shift_check(&mut t, m, &m.l_nil, "N", &ExactComplex::zero(), &zero);

    let max_piece = m.space.pieces().values().map(Vec::len).max().unwrap_or(0);
    let mut p = m.l_nil.clone();
    for _ in 0..max_piece {
        p = m.l_nil.compose(&p);
    }
    t.check(p.is_zero(), || "L(0) nilpotent part is not nilpotent on some piece".into());

    for (j, lj) in [(-1i64, &m.l_minus), (1, &m.l_plus)] {
        let comm = lj.compose(&m.l_nil).sub(&m.l_nil.compose(lj));
        t.check(comm.is_zero(), || format!("[N, L({j})] != 0"));
    }

    let l0 = m.l(0);
    let comm = m.l_plus.compose(&m.l_minus).sub(&m.l_minus.compose(&m.l_plus));
    for c in 0..m.dim() {
        let next = m.weight(c) + &ExactComplex::one();
        if !m.covers(&next) {
            continue;
        }
        let e: ExactVec = ExactVec::from([(c, ExactComplex::one())]);
        let lhs = comm.apply_exact(&e);
        let rhs: ExactVec = l0.apply_exact(&e).into_iter().map(|(i, x)| (i, &x * &ExactComplex::int(2))).collect();
        t.check(lhs == rhs, || format!("[L(1), L(-1)] != 2L(0) on basis {c}"));
    }

    if let Some(omega) = &alg.conformal {
        if omega.keys().all(|u| alg.mode_vectors.contains(u)) {
            for j in -1i64..=1 {
                let mut w = LinearMap::new();
                for (u, c) in omega {
                    if let Some(op) = m.mode(*u, j + 1) {
                        w.add_scaled(op, c);
                    }
                }
                let diff = w.sub(&m.l(j));
                let bad: Vec<usize> = diff
                    .entries()
                    .filter(|(r, c, _)| m.covers(m.weight(*r)) && m.covers(m.weight(*c)))
                    .map(|(_, c, _)| c)
                    .collect();
                t.check(bad.is_empty(), || format!("omega_{} != L({j}) on basis {:?}", j + 1, bad.first()));
            }
        }
    }

    VerificationReport::structural(&format!("strong-grading {}", m.label()), "grading", t.checked, t.offending)
}
