//! Sparse vectors and column-sparse linear maps.

use std::collections::BTreeMap;

use crate::scalar::ExactComplex;
use crate::series::LogSeries;

/// Exact module element in a basis.
pub type ExactVec = BTreeMap<usize, ExactComplex>;
/// Element whose coordinates are series (symbolic constants or formal series).
pub type SVec = BTreeMap<usize, LogSeries>;

pub fn basis_svec(i: usize) -> SVec {
    BTreeMap::from([(i, LogSeries::one())])
}

pub fn exact_to_svec(v: &ExactVec) -> SVec {
    v.iter().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (*i, LogSeries::constant(c.clone()))).collect()
}

/// `acc += c · v`.
pub fn svec_add_scaled(acc: &mut SVec, v: &SVec, c: &LogSeries) {
    if c.is_zero() {
        return;
    }
    let k = c.as_constant();
    for (i, s) in v {
        let e = acc.entry(*i).or_default();
        match &k {
            Some(k) => e.add_scaled(s, k),
            None => e.add_product(s, c),
        }
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

pub fn svec_sub(a: &SVec, b: &SVec) -> SVec {
    let mut out = a.clone();
    svec_add_scaled(&mut out, b, &LogSeries::int(-1));
    out
}

pub fn svec_is_zero(v: &SVec) -> bool {
    v.values().all(LogSeries::is_zero)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearMap {
    cols: BTreeMap<usize, Vec<(usize, ExactComplex)>>,
}

impl LinearMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Self::new();
        for i in indices {
            m.insert(i, i, ExactComplex::one());
        }
        m
    }

    /// Adds `val` to entry `(row, col)`.
    pub fn insert(&mut self, row: usize, col: usize, val: ExactComplex) {
        if val.is_zero() {
            return;
        }
        let col_v = self.cols.entry(col).or_default();
        match col_v.iter_mut().position(|(r, _)| *r == row) {
            Some(p) => {
                col_v[p].1 += &val;
                if col_v[p].1.is_zero() {
                    col_v.remove(p);
                }
            }
            None => {
                col_v.push((row, val));
                col_v.sort_by_key(|(r, _)| *r);
            }
        }
        if col_v.is_empty() {
            self.cols.remove(&col);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> ExactComplex {
        self.cols
            .get(&col)
            .and_then(|c| c.iter().find(|(r, _)| *r == row))
            .map(|(_, v)| v.clone())
            .unwrap_or_default()
    }

    pub fn col(&self, col: usize) -> &[(usize, ExactComplex)] {
        self.cols.get(&col).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ExactComplex)> {
        self.cols.iter().flat_map(|(c, v)| v.iter().map(move |(r, x)| (*r, *c, x)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn apply_exact(&self, v: &ExactVec) -> ExactVec {
        let mut out: ExactVec = BTreeMap::new();
        for (c, x) in v {
            for (r, m) in self.col(*c) {
                *out.entry(*r).or_default() += &(m * x);
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut out: SVec = BTreeMap::new();
        for (c, s) in v {
            for (r, m) in self.col(*c) {
                out.entry(*r).or_default().add_scaled(s, m);
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new();
        for (r, c, v) in self.entries() {
            t.insert(c, r, v.clone());
        }
        t
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (r1, c1, v1) in other.entries() {
            for (r2, v2) in self.col(r1) {
                out.insert(*r2, c1, v2 * v1);
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, c: &ExactComplex) {
        for (r, col, v) in other.entries() {
            self.insert(r, col, v * c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &ExactComplex::int(-1));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_transpose() {
        let mut a = LinearMap::new();
        a.insert(1, 0, ExactComplex::int(2));
        a.insert(2, 1, ExactComplex::int(3));
        let b = a.compose(&a);
        assert_eq!(b.get(2, 0), ExactComplex::int(6));
        assert_eq!(b.nnz(), 1);
        assert_eq!(a.transpose().get(0, 1), ExactComplex::int(2));
        let v: ExactVec = BTreeMap::from([(0, ExactComplex::one())]);
        assert_eq!(a.apply_exact(&v), BTreeMap::from([(1, ExactComplex::int(2))]));
        let mut z = a.clone();
        z.add_scaled(&a, &ExactComplex::int(-1));
        assert!(z.is_zero());
    }
}
