//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use cox_core::linalg::{determinant, IntegerMatrix};

/// Row-style Hermite form: positive pivots moving strictly right, entries
/// above a pivot reduced into `[0, pivot)`, zero rows last.
pub fn is_hermite(h: &IntegerMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for r in 0..h.rows() {
        let row = h.row(r);
        match row.iter().position(|x| !x.is_zero()) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last_pivot.is_some_and(|q| p <= q) || !row[p].is_positive() {
                    return false;
                }
                for above in 0..r {
                    let x = h.get(above, p);
                    if x.is_negative() || x >= &row[p] {
                        return false;
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}

/// gcd of all `k × k` minors.
pub fn determinantal_divisor(m: &IntegerMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in (0..m.rows()).combinations(k) {
        for cols in (0..m.cols()).combinations(k) {
            let sub: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect())
                .collect();
            g = g.gcd(&determinant(&IntegerMatrix::from_rows(k, sub).unwrap()));
        }
    }
    g
}

/// Minimal hitting sets of `edges` over `n ≤ 31` variables, by subset enumeration.
pub fn brute_force_transversals(n: usize, edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let hits = |s: u32| edges.iter().all(|e| e.iter().any(|&i| s >> i & 1 == 1));
    let hitting: Vec<u32> = (0u32..1 << n).filter(|&s| hits(s)).collect();
    let mut minimal: Vec<Vec<usize>> = hitting
        .iter()
        .filter(|&&s| !hitting.iter().any(|&t| t != s && t & s == t))
        .map(|&s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect();
    minimal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    minimal
}
