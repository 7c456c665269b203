//! Multiplicity-level tensor products over a table of fusion rules
//! `N^{M_j}_{M_a M_b}`.
//!
//! Everything here is integer arithmetic on multiplicity vectors. Equal
//! multiplicities do not give canonical module isomorphisms; the reports
//! only speak about multiplicities.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::report::VerificationReport;

/// Multiplicities of the irreducibles, in table order.
pub type ModuleVector = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTable {
    pub labels: Vec<String>,
    pub unit: usize,
    /// `n[j][a][b] = N^{M_j}_{M_a M_b}`
    n: Vec<Vec<Vec<u64>>>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    labels: Vec<String>,
    unit: String,
    #[serde(rename = "N")]
    n: Vec<[Value; 4]>,
}

/// `W1 ⊠ (W2 ⊠ W3)` or `(W1 ⊠ W2) ⊠ W3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A quadruple `(a, b, c, j)` where the two iterated multiplicities differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocViolation {
    pub w1: usize,
    pub w2: usize,
    pub w3: usize,
    pub j: usize,
    /// `Σ_i N^{M_j}_{W1 M_i} N^{M_i}_{W2 W3}`
    pub left: u64,
    /// `Σ_i N^{M_i}_{W1 W2} N^{M_j}_{M_i W3}`
    pub right: u64,
}

impl FusionTable {
    /// Builds a table from `(j, a, b, N)` entries (absent entries are 0) and
    /// rejects it unless `N^{M_j}_{V M_i} = N^{M_j}_{M_i V} = δ_{ij}`.
    pub fn new(labels: Vec<String>, unit: usize, entries: &[(usize, usize, usize, u64)]) -> Result<Self> {
        let k = labels.len();
        if unit >= k {
            return Err(Error::Fusion(format!("unit index {unit} out of range")));
        }
        let mut n = vec![vec![vec![0u64; k]; k]; k];
        for &(j, a, b, v) in entries {
            if j >= k || a >= k || b >= k {
                return Err(Error::Fusion(format!("entry ({j},{a},{b}) out of range")));
            }
            n[j][a][b] = v;
        }
        let t = FusionTable { labels, unit, n };
        let bad = t.unit_violations();
        if !bad.is_empty() {
            return Err(Error::Fusion(format!("unit law fails: {}", bad.join("; "))));
        }
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn n(&self, j: usize, a: usize, b: usize) -> u64 {
        self.n[j][a][b]
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::Fusion(format!("unknown label {label}")))
    }

    /// The unit vector of an irreducible.
    pub fn irreducible(&self, i: usize) -> ModuleVector {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    fn unit_violations(&self) -> Vec<String> {
        let u = self.unit;
        let mut bad = Vec::new();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let want = u64::from(i == j);
                if self.n[j][u][i] != want {
                    bad.push(format!("N^{}_{{{} {}}} = {}", self.labels[j], self.labels[u], self.labels[i], self.n[j][u][i]));
                }
                if self.n[j][i][u] != want {
                    bad.push(format!("N^{}_{{{} {}}} = {}", self.labels[j], self.labels[i], self.labels[u], self.n[j][i][u]));
                }
            }
        }
        bad
    }

    /// Parses `{labels, unit, N: [[j, a, b, value], ...]}`; `j, a, b` may be
    /// labels or indices.
    pub fn from_json(s: &str) -> Result<Self> {
        let f: TableFile = serde_json::from_str(s).map_err(|e| Error::Parse(format!("fusion table: {e}")))?;
        let idx = |v: &Value| -> Result<usize> {
            match v {
                Value::String(l) => f.labels.iter().position(|x| x == l).ok_or_else(|| Error::Parse(format!("unknown label {l}"))),
                Value::Number(n) => n.as_u64().map(|n| n as usize).ok_or_else(|| Error::Parse(format!("bad index {n}"))),
                _ => Err(Error::Parse(format!("bad table entry {v}"))),
            }
        };
        let unit = f.labels.iter().position(|x| *x == f.unit).ok_or_else(|| Error::Parse(format!("unknown unit {}", f.unit)))?;
        let mut entries = Vec::new();
        for [j, a, b, v] in &f.n {
            let v = v.as_u64().ok_or_else(|| Error::Parse(format!("multiplicity must be a non-negative integer, got {v}")))?;
            entries.push((idx(j)?, idx(a)?, idx(b)?, v));
        }
        FusionTable::new(f.labels.clone(), unit, &entries)
    }

    pub fn to_json(&self) -> Value {
        let mut n = Vec::new();
        for j in 0..self.rank() {
            for a in 0..self.rank() {
                for b in 0..self.rank() {
                    if self.n[j][a][b] != 0 {
                        n.push(serde_json::json!([self.labels[j], self.labels[a], self.labels[b], self.n[j][a][b]]));
                    }
                }
            }
        }
        serde_json::json!({ "labels": self.labels, "unit": self.labels[self.unit], "N": n })
    }

    /// A copy with one entry replaced, bypassing the load-time checks
    /// (for planting defects).
    pub fn with_entry_unchecked(&self, j: usize, a: usize, b: usize, v: u64) -> FusionTable {
        let mut t = self.clone();
        t.n[j][a][b] = v;
        t
    }
}

fn check_len(t: &FusionTable, v: &ModuleVector) -> Result<()> {
    if v.len() == t.rank() {
        Ok(())
    } else {
        Err(Error::Fusion(format!("module vector has length {}, table has {} irreducibles", v.len(), t.rank())))
    }
}

/// Multiplicity of `M_i` in `W1 ⊠ W2`: `Σ_{a,b} m_a m'_b N^{M_i}_{M_a M_b}`.
pub fn fuse(a: &ModuleVector, b: &ModuleVector, t: &FusionTable) -> Result<ModuleVector> {
    check_len(t, a)?;
    check_len(t, b)?;
    let k = t.rank();
    let mut out = vec![0u64; k];
    for (i, o) in out.iter_mut().enumerate() {
        for (x, ma) in a.iter().enumerate().filter(|(_, m)| **m != 0) {
            for (y, mb) in b.iter().enumerate().filter(|(_, m)| **m != 0) {
                *o += ma * mb * t.n[i][x][y];
            }
        }
    }
    Ok(out)
}

pub fn triple_decompose(w1: &ModuleVector, w2: &ModuleVector, w3: &ModuleVector, t: &FusionTable, side: Side) -> Result<ModuleVector> {
    match side {
        Side::Left => fuse(w1, &fuse(w2, w3, t)?, t),
        Side::Right => fuse(&fuse(w1, w2, t)?, w3, t),
    }
}

/// Every irreducible quadruple where the two iterated multiplicities differ.
pub fn assoc_violations(t: &FusionTable) -> Vec<AssocViolation> {
    let k = t.rank();
    let mut out = Vec::new();
    for w1 in 0..k {
        for w2 in 0..k {
            for w3 in 0..k {
                for j in 0..k {
                    let left: u64 = (0..k).map(|i| t.n[j][w1][i] * t.n[i][w2][w3]).sum();
                    let right: u64 = (0..k).map(|i| t.n[i][w1][w2] * t.n[j][i][w3]).sum();
                    if left != right {
                        out.push(AssocViolation { w1, w2, w3, j, left, right });
                    }
                }
            }
        }
    }
    out
}

/// `Σ_i N^{M_j}_{W1 M_i} N^{M_i}_{W2 W3} = Σ_i N^{M_i}_{W1 W2} N^{M_j}_{M_i W3}` over all
/// irreducible quadruples; every violation is listed.
pub fn assoc_multiplicity_check(t: &FusionTable) -> VerificationReport {
    let k = t.rank();
    let bad: Vec<String> = assoc_violations(t)
        .iter()
        .map(|v| {
            format!(
                "({}, {}, {}; {}): {} vs {}",
                t.labels[v.w1], t.labels[v.w2], t.labels[v.w3], t.labels[v.j], v.left, v.right
            )
        })
        .collect();
    let mut r = VerificationReport::structural("fusion-rule associativity", "fusion-assoc", k * k * k * k, Vec::new());
    r.pass = bad.is_empty();
    r.exact_zero = r.pass;
    if !r.pass {
        r.max_deviation = f64::INFINITY;
    }
    r.offending = bad;
    r.with_note("multiplicity equality only; no module isomorphism is constructed")
}

/// Unit laws `V ⊠ W = W = W ⊠ V` on every irreducible.
pub fn unit_law_report(t: &FusionTable) -> VerificationReport {
    let mut bad = t.unit_violations();
    let u = t.irreducible(t.unit);
    for i in 0..t.rank() {
        let w = t.irreducible(i);
        if fuse(&u, &w, t).ok().as_ref() != Some(&w) || fuse(&w, &u, t).ok().as_ref() != Some(&w) {
            bad.push(format!("unit fails on {}", t.labels[i]));
        }
    }
    VerificationReport::structural("fusion unit laws", "fusion-unit", 2 * t.rank(), bad)
}

/// `(W ⊕ W') ⊠ X = W ⊠ X ⊕ W' ⊠ X` and its mirror, over all irreducible triples.
pub fn bilinearity_report(t: &FusionTable) -> VerificationReport {
    let k = t.rank();
    let mut bad = Vec::new();
    let add = |a: &ModuleVector, b: &ModuleVector| -> ModuleVector { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    for a in 0..k {
        for a2 in 0..k {
            let s = add(&t.irreducible(a), &t.irreducible(a2));
            for b in 0..k {
                let e = t.irreducible(b);
                let lhs = fuse(&s, &e, t).expect("lengths agree");
                let rhs = add(&fuse(&t.irreducible(a), &e, t).expect("lengths"), &fuse(&t.irreducible(a2), &e, t).expect("lengths"));
                if lhs != rhs {
                    bad.push(format!("({}+{}) ⊠ {}", t.labels[a], t.labels[a2], t.labels[b]));
                }
                let lhs = fuse(&e, &s, t).expect("lengths agree");
                let rhs = add(&fuse(&e, &t.irreducible(a), t).expect("lengths"), &fuse(&e, &t.irreducible(a2), t).expect("lengths"));
                if lhs != rhs {
                    bad.push(format!("{} ⊠ ({}+{})", t.labels[b], t.labels[a], t.labels[a2]));
                }
            }
        }
    }
    VerificationReport::structural("fusion bilinearity", "fusion-bilinear", 2 * k * k * k, bad)
}

/// For `W2 ↠ W3` (componentwise `W2 ≥ W3`): `W ⊠ W2 ≥ W ⊠ W3` componentwise.
pub fn quotient_multiplicity_check(w2: &ModuleVector, w3: &ModuleVector, w: &ModuleVector, t: &FusionTable) -> Result<VerificationReport> {
    check_len(t, w2)?;
    check_len(t, w3)?;
    if w2.iter().zip(w3).any(|(a, b)| a < b) {
        return Err(Error::Fusion("quotient check needs W2 ≥ W3 componentwise".into()));
    }
    let big = fuse(w, w2, t)?;
    let small = fuse(w, w3, t)?;
    let bad: Vec<String> = (0..t.rank())
        .filter(|i| big[*i] < small[*i])
        .map(|i| format!("{}: {} < {}", t.labels[i], big[i], small[i]))
        .collect();
    Ok(VerificationReport::structural("right exactness (multiplicities)", "fusion-quotient", t.rank(), bad))
}

/// Names accepted by [`bundled_table`].
pub const BUNDLED_TABLES: &[&str] = &["z1", "z2", "z3", "z4", "z5", "z6", "ising", "fibonacci"];

fn cyclic(n: usize) -> FusionTable {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let mut e = Vec::new();
    for a in 0..n {
        for b in 0..n {
            e.push(((a + b) % n, a, b, 1));
        }
    }
    FusionTable::new(labels, 0, &e).expect("group tables satisfy the unit law")
}

fn from_rules(labels: &[&str], rules: &[(&str, &str, &[&str])]) -> FusionTable {
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    let idx = |s: &str| labels.iter().position(|l| l == s).expect("label");
    let mut e: BTreeMap<(usize, usize, usize), u64> = BTreeMap::new();
    for i in 0..labels.len() {
        e.insert((i, 0, i), 1);
        e.insert((i, i, 0), 1);
    }
    for (a, b, out) in rules {
        for j in *out {
            *e.entry((idx(j), idx(a), idx(b))).or_default() += 1;
            if a != b {
                *e.entry((idx(j), idx(b), idx(a))).or_default() += 1;
            }
        }
    }
    let entries: Vec<_> = e.into_iter().map(|((j, a, b), v)| (j, a, b, v)).collect();
    FusionTable::new(labels, 0, &entries).expect("bundled table")
}

/// `zN` (cyclic group `ℤ/N`, `N ≤ 6`), `ising` (`1, ε, σ`) or `fibonacci` (`1, τ`).
pub fn bundled_table(name: &str) -> Result<FusionTable> {
    match name {
        "ising" => Ok(from_rules(&["1", "ε", "σ"], &[("ε", "ε", &["1"]), ("ε", "σ", &["σ"]), ("σ", "σ", &["1", "ε"])])),
        "fibonacci" => Ok(from_rules(&["1", "τ"], &[("τ", "τ", &["1", "τ"])])),
        _ => match name.strip_prefix('z').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if (1..=6).contains(&n) => Ok(cyclic(n)),
            _ => Err(Error::Fusion(format!("no bundled table named {name}; known: {}", BUNDLED_TABLES.join(", ")))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_broken_unit() {
        let r = FusionTable::new(vec!["1".into(), "a".into()], 0, &[(0, 0, 0, 1), (1, 0, 1, 1), (1, 1, 0, 1)]);
        assert!(r.is_ok());
        let r = FusionTable::new(vec!["1".into(), "a".into()], 0, &[(0, 0, 0, 1), (1, 0, 1, 2), (1, 1, 0, 1)]);
        assert!(matches!(r, Err(Error::Fusion(_))));
    }

    #[test]
    fn json_round_trip() {
        let t = bundled_table("ising").unwrap();
        let back = FusionTable::from_json(&t.to_json().to_string()).unwrap();
        assert_eq!(t, back);
    }
}
