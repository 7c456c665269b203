//! Independent oracles. Nothing here calls into the series, delta or
//! fusion code of the library; they recompute from the definitions with
//! plain `Ratio<i128>` arithmetic and nested loops.

#![allow(dead_code)]

use num_rational::Ratio;

pub type R = Ratio<i128>;

/// Number of partitions of `n` by the standard `p(n, k)` table.
pub fn partition_count(n: usize) -> u64 {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p[n]
}

/// `C(n, i)` for any integer `n` by the falling factorial.
pub fn gbinom(n: i128, i: i128) -> R {
    let mut c = R::from_integer(1);
    for t in 0..i {
        c = c * R::from_integer(n - t) / R::from_integer(t + 1);
    }
    c
}

pub fn rpow(z: R, n: i128) -> R {
    let mut out = R::from_integer(1);
    let base = if n < 0 { z.recip() } else { z };
    for _ in 0..n.abs() {
        out *= base;
    }
    out
}

/// Coefficient of `x0^{e0} x1^{e1}` in the three delta shapes, for a
/// real rational `z`, by summing the defining series term by term.
///
/// `shape` 0: `Σ_n (x1 − z)^n x0^{−n−1}`,
/// 1: `Σ_n (x1 − x0)^n z^{−n−1}`,
/// 2: `x0^{−1} Σ_n (z − x1)^n (−x0)^{−n}`.
pub fn delta_brute(shape: u8, z: R, e0: i128, e1: i128) -> R {
    let mut total = R::from_integer(0);
    // every n whose expansion could reach x0^{e0}; only one survives, but
    // scan a band to stay honest about it
    for n in -40..=40i128 {
        match shape {
            0 => {
                if -n - 1 != e0 {
                    continue;
                }
                for i in 0..=60i128 {
                    if n - i == e1 {
                        total += gbinom(n, i) * rpow(-z, i);
                    }
                }
            }
            1 => {
                for i in 0..=60i128 {
                    if i == e0 && n - i == e1 {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        total += gbinom(n, i) * R::from_integer(sign) * rpow(z, -n - 1);
                    }
                }
            }
            _ => {
                if -n - 1 != e0 {
                    continue;
                }
                let sign_x0 = if n % 2 == 0 { 1 } else { -1 };
                for i in 0..=60i128 {
                    if i == e1 {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        total += gbinom(n, i) * rpow(z, n - i) * R::from_integer(sign * sign_x0);
                    }
                }
            }
        }
    }
    total
}

/// Ising fusion rules written out by hand: `(label index) 0 = 1, 1 = ε, 2 = σ`,
/// `n[j][a][b]`.
pub fn ising_rules() -> [[[u64; 3]; 3]; 3] {
    let mut n = [[[0u64; 3]; 3]; 3];
    for i in 0..3 {
        n[i][0][i] = 1;
        n[i][i][0] = 1;
    }
    n[0][1][1] = 1; // ε ε = 1
    n[2][1][2] = 1; // ε σ = σ
    n[2][2][1] = 1;
    n[0][2][2] = 1; // σ σ = 1 + ε
    n[1][2][2] = 1;
    n
}

/// `Σ_{a,b} m_a m'_b n[i][a][b]`.
pub fn fuse_oracle<const K: usize>(n: &[[[u64; K]; K]; K], a: &[u64], b: &[u64]) -> Vec<u64> {
    (0..K).map(|i| (0..K).flat_map(|x| (0..K).map(move |y| (x, y))).map(|(x, y)| a[x] * b[y] * n[i][x][y]).sum()).collect()
}

/// Quadruples `(w1, w2, w3, j)` violating
/// `Σ_i N^j_{w1 i} N^i_{w2 w3} = Σ_i N^i_{w1 w2} N^j_{i w3}`.
pub fn assoc_oracle<const K: usize>(n: &[[[u64; K]; K]; K]) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for w1 in 0..K {
        for w2 in 0..K {
            for w3 in 0..K {
                for j in 0..K {
                    let mut l = 0;
                    let mut r = 0;
                    for i in 0..K {
                        l += n[j][w1][i] * n[i][w2][w3];
                        r += n[i][w1][w2] * n[j][i][w3];
                    }
                    if l != r {
                        out.push((w1, w2, w3, j));
                    }
                }
            }
        }
    }
    out
}
