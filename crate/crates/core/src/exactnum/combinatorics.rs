use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Largest `s` kept in the memoized Stirling table.
pub const STIRLING_TABLE_MAX: usize = 64;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // Exact at every step: acc * (n - i) is divisible by (i + 1).
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Signed Stirling number of the first kind: the coefficient of `x^l` in
/// the falling factorial `x(x-1)...(x-s+1)`.
pub fn stirling_first(s: usize, l: usize) -> BigInt {
    if l > s {
        return BigInt::zero();
    }
    if s <= STIRLING_TABLE_MAX {
        return stirling_table()[s][l].clone();
    }
    stirling_row(s).swap_remove(l)
}

fn stirling_table() -> &'static [Vec<BigInt>] {
    static TABLE: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows = vec![vec![BigInt::one()]];
        for s in 0..STIRLING_TABLE_MAX {
            let next = next_stirling_row(&rows[s], s);
            rows.push(next);
        }
        rows
    })
}

fn stirling_row(s: usize) -> Vec<BigInt> {
    let mut row = stirling_table()[STIRLING_TABLE_MAX].clone();
    for i in STIRLING_TABLE_MAX..s {
        row = next_stirling_row(&row, i);
    }
    row
}

// S_{s+1}^{(l)} = S_s^{(l-1)} - s S_s^{(l)}
fn next_stirling_row(row: &[BigInt], s: usize) -> Vec<BigInt> {
    let mut next = vec![BigInt::zero(); row.len() + 1];
    for (l, slot) in next.iter_mut().enumerate() {
        if l >= 1 {
            *slot += &row[l - 1];
        }
        if l < row.len() {
            *slot -= BigInt::from(s) * &row[l];
        }
    }
    next
}

/// `sum_{k=1}^n k^(l-1)`.
pub fn power_sum(n: usize, l: usize) -> BigInt {
    assert!(l >= 1, "power_sum exponent index starts at 1");
    (1..=n).fold(BigInt::zero(), |acc, k| acc + num_traits::pow(BigInt::from(k), l - 1))
}
