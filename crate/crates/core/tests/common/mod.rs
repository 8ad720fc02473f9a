//! Helpers shared by the integration tests. Everything here is an
//! independent reimplementation, not a call into the library's formulas.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use selalg_core::exactnum::{ratio, Rational, RationalMatrix};

pub fn r(p: i64, q: i64) -> Rational {
    ratio(p, q)
}

pub fn big(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

pub fn mat(rows: usize, cols: usize, f: impl Fn(i64, i64) -> Rational) -> RationalMatrix {
    RationalMatrix::from_fn(rows, cols, |i, j| f(i as i64, j as i64))
}

fn scaled(scale: Rational, rows: &[[i64; 2]; 2]) -> RationalMatrix {
    mat(2, 2, |i, j| &scale * big(rows[i as usize - 1][j as usize - 1]))
}

/// The hand-computed `t = 2` matrices, as closed forms in `n`. `G` is in
/// its defining form `C(2,r)(H_k^r - H_{k-1}^r)`, which `R = G D` forces.
pub fn t2_golden(n: i64) -> Vec<(&'static str, RationalMatrix)> {
    let nn = n * n;
    let inv_n2 = r(1, nn);
    let half_n = r(n, 2);
    let nu = n as usize;
    vec![
        ("F", scaled(Rational::one(), &[[1, 0], [-1, 1]])),
        ("Fbar", scaled(Rational::one(), &[[1, 0], [1, 1]])),
        ("C", scaled(Rational::one(), &[[2, 0], [0, 1]])),
        ("Cbar", scaled(r(1, 2), &[[1, 0], [0, 2]])),
        ("N", scaled(inv_n2.clone(), &[[n, -1], [0, 2]])),
        ("Nbar", scaled(half_n.clone(), &[[2, 1], [0, n]])),
        ("P", mat(nu, 2, |i, p| if p == 1 { r(i * n, nn) } else { r(i * i, nn) })),
        ("Pbar", scaled(half_n.clone(), &[[4, -1], [-2 * n, n]])),
        ("V", mat(nu, 2, |k, l| if l == 1 { big(1) } else { big(k) })),
        ("Vbar", scaled(Rational::one(), &[[2, -1], [-1, 1]])),
        ("T", scaled(inv_n2.clone(), &[[2 * n + 1, -1], [-2, 2]])),
        ("Tbar", scaled(r(n, 4), &[[2, 1], [2, 2 * n + 1]])),
        ("Ubar", scaled(Rational::one(), &[[1, -1], [0, 1]])),
        ("Lbar", scaled(Rational::one(), &[[1, 0], [-1, 1]])),
        ("H", mat(nu, 2, |k, c| if c == 1 { r(k * (n - k), nn) } else { r(k * k, nn) })),
        ("G", mat(nu, 2, |k, c| if c == 1 { r(2 * (n - 2 * k + 1), nn) } else { r(2 * k - 1, nn) })),
        ("R", mat(nu, 2, |k, c| if c == 1 { r(2 * n - 2 * k + 1, nn) } else { r(2 * k - 1, nn) })),
    ]
}

/// `C(n, k)` by the multiplicative formula on rationals.
pub fn choose(n: i64, k: i64) -> Rational {
    if k < 0 || k > n {
        return Rational::zero();
    }
    (0..k).fold(Rational::one(), |acc, i| acc * big(n - i) / big(i + 1))
}

/// `P(s-th smallest of t uniform draws from 1..=n is k)` as the difference
/// of two order-statistic CDFs.
pub fn order_statistic_pmf(n: i64, t: i64, s: i64, k: i64) -> Rational {
    let cdf = |k: i64| -> Rational {
        let p = r(k, n);
        let q = Rational::one() - &p;
        (s..=t)
            .map(|j| choose(t, j) * num_traits::pow(p.clone(), j as usize) * num_traits::pow(q.clone(), (t - j) as usize))
            .sum()
    };
    cdf(k) - cdf(k - 1)
}

/// Quadratic through `(1, y1), (2, y2), (3, y3)`, ascending coefficients.
pub fn quadratic_through(y: [Rational; 3]) -> [Rational; 3] {
    let [y1, y2, y3] = y;
    let a3 = (&y3 - big(2) * &y2 + &y1) / big(2);
    let a2 = (&y2 - &y1) - big(3) * &a3;
    let a1 = &y1 - &a2 - &a3;
    [a1, a2, a3]
}

/// Normalised `c (k - i)(k - j)` as `(a1, a2, a3)`, sign chosen so it is
/// nonnegative on the ranks.
pub fn vertex_oracle(n: i64, i: i64, j: i64) -> [Rational; 3] {
    let sign = if j == i + 1 { 1 } else { -1 };
    let raw = [big(sign * i * j), big(-sign * (i + j)), big(sign)];
    let total: Rational = (1..=n).map(|k| &raw[0] + &raw[1] * big(k) + &raw[2] * big(k * k)).sum();
    raw.map(|c| c / &total)
}

/// All extreme points of the valid quadratic region in boundary order:
/// adjacent zero pairs then the outer pair.
pub fn polygon_oracle(n: i64) -> Vec<[Rational; 3]> {
    let mut v: Vec<[Rational; 3]> = (1..n).map(|i| vertex_oracle(n, i, i + 1)).collect();
    v.push(vertex_oracle(n, 1, n));
    v
}

/// Shoelace area of a polygon in the `(a1, a2)` plane.
pub fn area(points: &[[Rational; 3]]) -> Rational {
    let m = points.len();
    let twice: Rational = (0..m)
        .map(|i| {
            let (p, q) = (&points[i], &points[(i + 1) % m]);
            &p[0] * &q[1] - &q[0] * &p[1]
        })
        .sum();
    let half = twice / big(2);
    if half < Rational::zero() {
        -half
    } else {
        half
    }
}

/// Corners of the size-3 tournament triangle, from the order statistics.
pub fn triangle_oracle(n: i64) -> Vec<[Rational; 3]> {
    (1..=3)
        .map(|s| quadratic_through([1, 2, 3].map(|k| order_statistic_pmf(n, 3, s, k))))
        .collect()
}

/// Exact share of the valid quadratic region covered by size-3 tournaments.
pub fn exact_t3_coverage(n: i64) -> Rational {
    area(&triangle_oracle(n)) / area(&polygon_oracle(n))
}
