//! The factor matrices linking tournament biases, polynomial coefficients
//! and rank probabilities, for a concrete population size `n` and
//! tournament size `t`.
//!
//! Every public index is 1-based. Rank 1 is the fittest individual and seed 1
//! is the best member of a tournament, so seeds are ordered
//! `I_1 <= I_2 <= ... <= I_t` in rank number.
//!
//! Composite maps:
//!
//! * `R = Dbar_n P F C D = V N F C D` maps tournament biases to rank
//!   probabilities (`n x t`).
//! * `T = N F C D` maps tournament biases to polynomial coefficients.
//! * `Tbar = Dbar_t Cbar Fbar Nbar` is the closed-form inverse of `T`.

use num_traits::{One, Zero};

use crate::error::{param, Result};
use crate::exactnum::{binomial, factorial, from_bigint, int, stirling_first, Rational, RationalMatrix};

/// Every named matrix for one `(n, t)`.
#[derive(Clone, Debug)]
pub struct MatrixZoo {
    n: usize,
    t: usize,
    d: RationalMatrix,
    dbar_t: RationalMatrix,
    dbar_n: RationalMatrix,
    c: RationalMatrix,
    cbar: RationalMatrix,
    f: RationalMatrix,
    fbar: RationalMatrix,
    n_mat: RationalMatrix,
    nbar: RationalMatrix,
    p_full: RationalMatrix,
    pbar: RationalMatrix,
    v_full: RationalMatrix,
    vbar: RationalMatrix,
    lbar: RationalMatrix,
    ubar: RationalMatrix,
    t_mat: RationalMatrix,
    tbar: RationalMatrix,
    h: RationalMatrix,
    g: RationalMatrix,
    r: RationalMatrix,
}

/// Names accepted by [`MatrixZoo::matrix`].
pub const MATRIX_NAMES: &[&str] = &[
    "D", "Dbar", "Dbar_n", "C", "Cbar", "F", "Fbar", "N", "Nbar", "P", "P_t", "Pbar", "V", "V_t",
    "Vbar", "Lbar", "Ubar", "T", "Tbar", "H", "G", "R",
];

fn sign(exp: usize) -> Rational {
    if exp % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn binom(n: usize, k: usize) -> Rational {
    from_bigint(binomial(n, k))
}

fn pow(x: &Rational, e: usize) -> Rational {
    num_traits::pow(x.clone(), e)
}

/// Lower-triangular matrix of ones.
pub fn lower_ones(size: usize) -> RationalMatrix {
    RationalMatrix::from_fn(size, size, |r, s| if s <= r { int(1) } else { int(0) })
}

/// Inverse of [`lower_ones`]: 1 on the diagonal, -1 just below it.
pub fn difference_matrix(size: usize) -> RationalMatrix {
    RationalMatrix::from_fn(size, size, |k, i| {
        if k == i {
            int(1)
        } else if i + 1 == k {
            int(-1)
        } else {
            int(0)
        }
    })
}

/// `H_k^r = (k/n)^r (1 - k/n)^(t-r)` for `k in 0..=n`, `r in 0..=t`.
pub fn h_entry(n: usize, t: usize, k: usize, r: usize) -> Rational {
    let x = Rational::new(k.into(), n.into());
    pow(&x, r) * pow(&(Rational::one() - &x), t - r)
}

/// Vandermonde inverse on nodes `1..=t` as `Ubar * Lbar`, with
/// `Ubar_ls = S_s^(l)` and `Lbar_sk = (-1)^(s-k) / ((s-k)! (k-1)!)`.
fn vandermonde_factors(t: usize) -> (RationalMatrix, RationalMatrix) {
    let ubar = RationalMatrix::from_fn(t, t, |l, s| from_bigint(stirling_first(s, l)));
    let lbar = RationalMatrix::from_fn(t, t, |s, k| {
        if s >= k {
            sign(s - k) / from_bigint(factorial(s - k) * factorial(k - 1))
        } else {
            Rational::zero()
        }
    });
    (ubar, lbar)
}

/// Inverse of the `t x t` Vandermonde matrix `V_kl = k^(l-1)`.
pub fn vandermonde_inverse(t: usize) -> Result<RationalMatrix> {
    let (ubar, lbar) = vandermonde_factors(t);
    ubar.mul(&lbar)
}

/// The `t x t` factors; everything except the `n`-row matrices.
struct SquareFactors {
    d: RationalMatrix,
    dbar_t: RationalMatrix,
    c: RationalMatrix,
    cbar: RationalMatrix,
    f: RationalMatrix,
    fbar: RationalMatrix,
    n_mat: RationalMatrix,
    nbar: RationalMatrix,
    pbar: RationalMatrix,
    vbar: RationalMatrix,
    lbar: RationalMatrix,
    ubar: RationalMatrix,
    t_mat: RationalMatrix,
    tbar: RationalMatrix,
}

impl SquareFactors {
    fn build(n: usize, t: usize) -> Result<Self> {
        check_sizes(n, t)?;
        let nn = int(n as i64);
        let d = lower_ones(t);
        let dbar_t = difference_matrix(t);
        let c = RationalMatrix::from_fn(t, t, |q, r| if q == r { binom(t, q) } else { int(0) });
        let cbar =
            RationalMatrix::from_fn(t, t, |r, q| if q == r { Rational::one() / binom(t, r) } else { int(0) });
        let f = RationalMatrix::from_fn(t, t, |p, q| {
            if q <= p {
                sign(p - q) * binom(t - q, t - p)
            } else {
                Rational::zero()
            }
        });
        let fbar = RationalMatrix::from_fn(t, t, |q, r| if r <= q { binom(t - r, t - q) } else { int(0) });
        let n_mat = RationalMatrix::from_fn(t, t, |l, p| {
            if l <= p {
                sign(p - l) * binom(p, l - 1) / pow(&nn, p)
            } else {
                Rational::zero()
            }
        });
        let v_t = RationalMatrix::from_fn(t, t, |k, l| pow(&int(k as i64), l - 1));
        let (ubar, lbar) = vandermonde_factors(t);
        let vbar = ubar.mul(&lbar)?;
        let pbar = RationalMatrix::from_fn(t, t, |l, k| pow(&nn, l) * vbar.get(l, k) / int(k as i64));
        let nbar = pbar.mul(&d)?.mul(&v_t)?;
        let t_mat = n_mat.mul(&f)?.mul(&c)?.mul(&d)?;
        let tbar = dbar_t.mul(&cbar)?.mul(&fbar)?.mul(&nbar)?;
        Ok(Self {
            d,
            dbar_t,
            c,
            cbar,
            f,
            fbar,
            n_mat,
            nbar,
            pbar,
            vbar,
            lbar,
            ubar,
            t_mat,
            tbar,
        })
    }
}

/// Just `T` and `Tbar`, without the `n`-row matrices of a full zoo.
#[derive(Clone, Debug)]
pub struct ConversionMaps {
    n: usize,
    t: usize,
    t_mat: RationalMatrix,
    tbar: RationalMatrix,
}

impl ConversionMaps {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        let sq = SquareFactors::build(n, t)?;
        Ok(Self {
            n,
            t,
            t_mat: sq.t_mat,
            tbar: sq.tbar,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn t_matrix(&self) -> &RationalMatrix {
        &self.t_mat
    }

    pub fn tbar(&self) -> &RationalMatrix {
        &self.tbar
    }
}

fn check_sizes(n: usize, t: usize) -> Result<()> {
    if t == 0 || n == 0 {
        return Err(param(format!("need n >= 1 and t >= 1, got n={n}, t={t}")));
    }
    if t > n {
        return Err(param(format!("tournament size t={t} exceeds population n={n}")));
    }
    Ok(())
}

impl MatrixZoo {
    pub fn build(n: usize, t: usize) -> Result<Self> {
        let SquareFactors {
            d,
            dbar_t,
            c,
            cbar,
            f,
            fbar,
            n_mat,
            nbar,
            pbar,
            vbar,
            lbar,
            ubar,
            t_mat,
            tbar,
        } = SquareFactors::build(n, t)?;
        let dbar_n = difference_matrix(n);
        let p_full = RationalMatrix::from_fn(n, t, |i, p| pow(&Rational::new(i.into(), n.into()), p));
        let v_full = RationalMatrix::from_fn(n, t, |k, l| pow(&int(k as i64), l - 1));
        let fcd = f.mul(&c)?.mul(&d)?;
        let h = RationalMatrix::from_fn(n, t, |k, r| h_entry(n, t, k, r));
        let g = RationalMatrix::from_fn(n, t, |k, r| binom(t, r) * (h_entry(n, t, k, r) - h_entry(n, t, k - 1, r)));
        let r = dbar_n.mul(&p_full)?.mul(&fcd)?;

        let zoo = Self {
            n,
            t,
            d,
            dbar_t,
            dbar_n,
            c,
            cbar,
            f,
            fbar,
            n_mat,
            nbar,
            p_full,
            pbar,
            v_full,
            vbar,
            lbar,
            ubar,
            t_mat,
            tbar,
            h,
            g,
            r,
        };
        #[cfg(debug_assertions)]
        zoo.self_check();
        Ok(zoo)
    }

    #[cfg(debug_assertions)]
    fn self_check(&self) {
        let ident = |m: RationalMatrix, what: &str| {
            assert!(m.is_identity(), "{what} is not the identity for n={}, t={}", self.n, self.t)
        };
        ident(self.t_mat.mul(&self.tbar).unwrap(), "T Tbar");
        ident(self.tbar.mul(&self.t_mat).unwrap(), "Tbar T");
        ident(self.v_t().mul(&self.vbar).unwrap(), "V Vbar");
        assert_eq!(self.v_full.mul(&self.t_mat).unwrap(), self.r, "R != V T");
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Lower-triangular ones, `t x t`.
    pub fn d(&self) -> &RationalMatrix {
        &self.d
    }

    pub fn dbar_t(&self) -> &RationalMatrix {
        &self.dbar_t
    }

    pub fn dbar_n(&self) -> &RationalMatrix {
        &self.dbar_n
    }

    /// Diagonal binomials `C(t, q)`.
    pub fn c(&self) -> &RationalMatrix {
        &self.c
    }

    pub fn cbar(&self) -> &RationalMatrix {
        &self.cbar
    }

    pub fn f(&self) -> &RationalMatrix {
        &self.f
    }

    pub fn fbar(&self) -> &RationalMatrix {
        &self.fbar
    }

    pub fn n_matrix(&self) -> &RationalMatrix {
        &self.n_mat
    }

    pub fn nbar(&self) -> &RationalMatrix {
        &self.nbar
    }

    /// `P_i^p = (i/n)^p`, all `n` rows.
    pub fn p_full(&self) -> &RationalMatrix {
        &self.p_full
    }

    pub fn p_t(&self) -> RationalMatrix {
        self.p_full.top_left(self.t, self.t)
    }

    pub fn pbar(&self) -> &RationalMatrix {
        &self.pbar
    }

    /// `V_k^l = k^(l-1)`, all `n` rows.
    pub fn v_full(&self) -> &RationalMatrix {
        &self.v_full
    }

    pub fn v_t(&self) -> RationalMatrix {
        self.v_full.top_left(self.t, self.t)
    }

    pub fn vbar(&self) -> &RationalMatrix {
        &self.vbar
    }

    pub fn lbar(&self) -> &RationalMatrix {
        &self.lbar
    }

    pub fn ubar(&self) -> &RationalMatrix {
        &self.ubar
    }

    /// Tournament biases to polynomial coefficients.
    pub fn t_matrix(&self) -> &RationalMatrix {
        &self.t_mat
    }

    /// Polynomial coefficients to tournament biases.
    pub fn tbar(&self) -> &RationalMatrix {
        &self.tbar
    }

    pub fn h(&self) -> &RationalMatrix {
        &self.h
    }

    pub fn g(&self) -> &RationalMatrix {
        &self.g
    }

    /// `R_k^s = P(I_s = k)`, `n x t`.
    pub fn r(&self) -> &RationalMatrix {
        &self.r
    }

    /// `R` via the alternative factorisation `V N F C D`.
    pub fn r_via_vandermonde(&self) -> Result<RationalMatrix> {
        self.v_full
            .mul(&self.n_mat)?
            .mul(&self.f)?
            .mul(&self.c)?
            .mul(&self.d)
    }

    /// Look a matrix up by its conventional name (see [`MATRIX_NAMES`]).
    pub fn matrix(&self, name: &str) -> Option<RationalMatrix> {
        Some(match name {
            "D" => self.d.clone(),
            "Dbar" => self.dbar_t.clone(),
            "Dbar_n" => self.dbar_n.clone(),
            "C" => self.c.clone(),
            "Cbar" => self.cbar.clone(),
            "F" => self.f.clone(),
            "Fbar" => self.fbar.clone(),
            "N" => self.n_mat.clone(),
            "Nbar" => self.nbar.clone(),
            "P" => self.p_full.clone(),
            "P_t" => self.p_t(),
            "Pbar" => self.pbar.clone(),
            "V" => self.v_full.clone(),
            "V_t" => self.v_t(),
            "Vbar" => self.vbar.clone(),
            "Lbar" => self.lbar.clone(),
            "Ubar" => self.ubar.clone(),
            "T" => self.t_mat.clone(),
            "Tbar" => self.tbar.clone(),
            "H" => self.h.clone(),
            "G" => self.g.clone(),
            "R" => self.r.clone(),
            _ => return None,
        })
    }

    /// `P(I_s = k)`, read from `R` after range checks.
    pub fn seed_rank_pmf(&self, s: usize, k: usize) -> Result<Rational> {
        check_seed_rank(self.n, self.t, s, k)?;
        Ok(self.r.get(k, s).clone())
    }
}

pub fn build_zoo(n: usize, t: usize) -> Result<MatrixZoo> {
    MatrixZoo::build(n, t)
}

fn check_seed_rank(n: usize, t: usize, s: usize, k: usize) -> Result<()> {
    if !(1..=t).contains(&s) {
        return Err(param(format!("seed {s} outside 1..={t}")));
    }
    if !(1..=n).contains(&k) {
        return Err(param(format!("rank {k} outside 1..={n}")));
    }
    Ok(())
}

/// `P(I_s = k)` straight from the distribution-function difference
/// `sum_{r=s}^t C(t,r) [H_k^r - H_{k-1}^r]`, independent of the matrix route.
pub fn seed_rank_probability(n: usize, t: usize, s: usize, k: usize) -> Result<Rational> {
    check_sizes(n, t)?;
    check_seed_rank(n, t, s, k)?;
    Ok((s..=t).fold(Rational::zero(), |acc, r| {
        acc + binom(t, r) * (h_entry(n, t, k, r) - h_entry(n, t, k - 1, r))
    }))
}

/// Deterministic tournament (`alpha = e_1`):
/// `P(I = k) = (1 - (k-1)/n)^t - (1 - k/n)^t`.
pub fn deterministic_pmf(n: usize, t: usize, k: usize) -> Result<Rational> {
    if n == 0 || t == 0 {
        return Err(param("n and t must be positive"));
    }
    if !(1..=n).contains(&k) {
        return Err(param(format!("rank {k} outside 1..={n}")));
    }
    let one = Rational::one();
    let prev = &one - Rational::new((k - 1).into(), n.into());
    let here = &one - Rational::new(k.into(), n.into());
    Ok(pow(&prev, t) - pow(&here, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn grid(rows: &[&[(i64, i64)]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(p, q)| ratio(p, q)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(build_zoo(3, 0).is_err());
        assert!(build_zoo(3, 4).is_err());
        assert!(build_zoo(0, 0).is_err());
    }

    #[test]
    fn t2_n4_composites() {
        let zoo = build_zoo(4, 2).unwrap();
        assert_eq!(*zoo.t_matrix(), grid(&[&[(9, 16), (-1, 16)], &[(-2, 16), (2, 16)]]));
        assert_eq!(*zoo.tbar(), grid(&[&[(2, 1), (1, 1)], &[(2, 1), (9, 1)]]));
        assert_eq!(zoo.r().column(1), [7, 5, 3, 1].map(|x| ratio(x, 16)).to_vec());
        assert_eq!(zoo.r().column(2), [1, 3, 5, 7].map(|x| ratio(x, 16)).to_vec());
    }

    #[test]
    fn dbar_inverts_d() {
        let zoo = build_zoo(2, 2).unwrap();
        assert!(zoo.dbar_t().mul(zoo.d()).unwrap().is_identity());
    }

    #[test]
    fn seed_rank_examples() {
        let zoo = build_zoo(4, 2).unwrap();
        assert_eq!(zoo.seed_rank_pmf(1, 1).unwrap(), ratio(7, 16));
        assert_eq!(zoo.seed_rank_pmf(2, 4).unwrap(), ratio(7, 16));
        assert!(zoo.seed_rank_pmf(3, 1).is_err());
        assert!(zoo.seed_rank_pmf(1, 5).is_err());
        assert!(zoo.seed_rank_pmf(0, 1).is_err());
        assert_eq!(build_zoo(1, 1).unwrap().seed_rank_pmf(1, 1).unwrap(), ratio(1, 1));
        assert_eq!(seed_rank_probability(4, 2, 1, 1).unwrap(), ratio(7, 16));
    }

    #[test]
    fn deterministic_examples() {
        for n in 1..8 {
            for k in 1..=n {
                assert_eq!(deterministic_pmf(n, 1, k).unwrap(), ratio(1, n as i64));
            }
        }
        // 64 - 27 tournaments of size 3 over 4 ranks contain rank 1.
        assert_eq!(deterministic_pmf(4, 3, 1).unwrap(), ratio(37, 64));
        assert_eq!(deterministic_pmf(4, 2, 4).unwrap(), ratio(1, 16));
        assert!(deterministic_pmf(4, 2, 0).is_err());
        assert!(deterministic_pmf(4, 2, 5).is_err());
    }

    #[test]
    fn named_lookup_covers_every_name() {
        let zoo = build_zoo(5, 3).unwrap();
        for name in MATRIX_NAMES {
            assert!(zoo.matrix(name).is_some(), "{name}");
        }
        assert!(zoo.matrix("Q").is_none());
        assert_eq!(zoo.matrix("P").unwrap().rows(), 5);
        assert_eq!(zoo.matrix("P_t").unwrap().rows(), 3);
    }
}
