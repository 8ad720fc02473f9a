//! Executable selection: drawing winners from tournaments and rank PMFs,
//! plus an exhaustive enumeration oracle for the seed-rank distribution.
//!
//! The generator is ChaCha8 (`rand_chacha`): seedable from a `u64`, with
//! 2^64 independent streams per seed, used here to split work across
//! workers deterministically.

use num_bigint::BigInt;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::exactnum::{to_f64, Rational, RationalMatrix};
use crate::schemes::{validate_pmf, SelectionPmf, TournamentScheme};

pub type Rng = ChaCha8Rng;

/// Largest number of tournaments `brute_force_seed_pmf` will enumerate.
pub const ENUMERATION_CAP: u64 = 10_000_000;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream `worker` of `seed`.
pub fn worker_rng(seed: u64, worker: usize) -> Rng {
    let mut rng = rng_from_seed(seed);
    rng.set_stream(worker as u64);
    rng
}

/// Draw `u` in `[0, 1)` and return the first index whose cumulative weight exceeds it.
fn pick(cumulative: &[f64], rng: &mut Rng) -> usize {
    let u: f64 = rng.gen();
    cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1)
}

fn cumulative(weights: &[Rational]) -> Vec<f64> {
    let mut acc = 0.0;
    weights
        .iter()
        .map(|w| {
            acc += to_f64(w);
            acc
        })
        .collect()
}

/// Precomputed tournament sampler.
#[derive(Clone, Debug)]
pub struct TournamentSampler {
    n: usize,
    t: usize,
    seed_cdf: Vec<f64>,
}

impl TournamentSampler {
    pub fn new(scheme: &TournamentScheme) -> Self {
        Self {
            n: scheme.n(),
            t: scheme.t(),
            seed_cdf: cumulative(scheme.alpha()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Draw `t` ranks with replacement, pick a seed by `alpha`, and return
    /// the rank sitting at that seed.
    pub fn sample(&self, rng: &mut Rng, buf: &mut Vec<usize>) -> usize {
        buf.clear();
        buf.extend((0..self.t).map(|_| rng.gen_range(1..=self.n)));
        let seed = pick(&self.seed_cdf, rng);
        *buf.select_nth_unstable(seed).1
    }
}

pub fn sample_tournament_winner(scheme: &TournamentScheme, rng: &mut Rng) -> usize {
    TournamentSampler::new(scheme).sample(rng, &mut Vec::with_capacity(scheme.t()))
}

/// Inverse-CDF sampler over ranks.
#[derive(Clone, Debug)]
pub struct RankSampler {
    cdf: Vec<f64>,
}

impl RankSampler {
    pub fn new(pmf: &SelectionPmf) -> Result<Self> {
        let verdict = validate_pmf(pmf, 0.0);
        if !verdict.is_valid() {
            let reasons: Vec<String> = verdict.violations.iter().map(ToString::to_string).collect();
            return Err(Error::InvalidPmf(reasons.join("; ")));
        }
        Ok(Self {
            cdf: cumulative(pmf.probabilities()),
        })
    }

    pub fn sample(&self, rng: &mut Rng) -> usize {
        pick(&self.cdf, rng) + 1
    }
}

pub fn sample_rank_winner(pmf: &SelectionPmf, rng: &mut Rng) -> Result<usize> {
    Ok(RankSampler::new(pmf)?.sample(rng))
}

/// Exact `P(I_s = k)` by enumerating all `n^t` equally likely tournaments.
/// Row `k`, column `s`.
pub fn brute_force_seed_pmf(n: usize, t: usize) -> Result<RationalMatrix> {
    if n == 0 || t == 0 {
        return Err(param("need n >= 1 and t >= 1"));
    }
    let total = (n as u64)
        .checked_pow(t as u32)
        .filter(|&m| m <= ENUMERATION_CAP)
        .ok_or(Error::EnumerationCap {
            n,
            t,
            cap: ENUMERATION_CAP,
        })?;
    let mut counts = vec![vec![0u64; t]; n];
    let mut draw = vec![1usize; t];
    let mut sorted = vec![0usize; t];
    for _ in 0..total {
        sorted.copy_from_slice(&draw);
        sorted.sort_unstable();
        for (s, &k) in sorted.iter().enumerate() {
            counts[k - 1][s] += 1;
        }
        // Odometer increment.
        for d in draw.iter_mut() {
            if *d < n {
                *d += 1;
                break;
            }
            *d = 1;
        }
    }
    let denom = BigInt::from(total);
    Ok(RationalMatrix::from_fn(n, t, |k, s| {
        Rational::new(BigInt::from(counts[k - 1][s - 1]), denom.clone())
    }))
}

/// Draw counts per rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmpiricalPmf {
    pub n: usize,
    pub counts: Vec<u64>,
    pub trials: u64,
}

impl EmpiricalPmf {
    pub fn frequencies(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.trials as f64).collect()
    }
}

pub fn empirical_pmf(scheme: &TournamentScheme, trials: u64, seed: u64) -> Result<EmpiricalPmf> {
    empirical_pmf_sharded(scheme, trials, seed, 1)
}

/// Like [`empirical_pmf`], split over `workers` streams of `seed`.
/// Deterministic for a fixed `(seed, workers)`.
pub fn empirical_pmf_sharded(scheme: &TournamentScheme, trials: u64, seed: u64, workers: usize) -> Result<EmpiricalPmf> {
    if trials == 0 {
        return Err(param("trials must be at least 1"));
    }
    let sampler = TournamentSampler::new(scheme);
    let n = scheme.n();
    let workers = workers.max(1);
    let share = |w: usize| trials / workers as u64 + u64::from((w as u64) < trials % workers as u64);
    let counts = (0..workers)
        .into_par_iter()
        .map(|w| {
            let mut rng = worker_rng(seed, w);
            let mut buf = Vec::with_capacity(scheme.t());
            let mut counts = vec![0u64; n];
            for _ in 0..share(w) {
                counts[sampler.sample(&mut rng, &mut buf) - 1] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(EmpiricalPmf { n, counts, trials })
}

/// Draw counts from an arbitrary rank PMF.
pub fn empirical_rank_pmf(pmf: &SelectionPmf, trials: u64, seed: u64) -> Result<EmpiricalPmf> {
    if trials == 0 {
        return Err(param("trials must be at least 1"));
    }
    let sampler = RankSampler::new(pmf)?;
    let mut rng = rng_from_seed(seed);
    let mut counts = vec![0u64; pmf.n()];
    for _ in 0..trials {
        counts[sampler.sample(&mut rng) - 1] += 1;
    }
    Ok(EmpiricalPmf {
        n: pmf.n(),
        counts,
        trials,
    })
}

/// `1/2 sum_k |counts_k / trials - pi_k|`.
pub fn tv_distance(e: &EmpiricalPmf, pi: &SelectionPmf) -> Result<f64> {
    if e.n != pi.n() {
        return Err(Error::DimensionMismatch {
            left_rows: e.n,
            left_cols: 1,
            right_rows: pi.n(),
            right_cols: 1,
        });
    }
    Ok(0.5
        * e.frequencies()
            .iter()
            .zip(pi.probabilities())
            .map(|(f, p)| (f - to_f64(p)).abs())
            .sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, ratio};

    fn scheme(n: usize, alpha: &[(i64, i64)]) -> TournamentScheme {
        TournamentScheme::new(n, alpha.iter().map(|&(p, q)| ratio(p, q)).collect()).unwrap()
    }

    #[test]
    fn trivial_tournaments() {
        let mut rng = rng_from_seed(1);
        let single = scheme(1, &[(1, 1)]);
        for _ in 0..50 {
            assert_eq!(sample_tournament_winner(&single, &mut rng), 1);
        }
        let e = empirical_pmf(&single, 123, 9).unwrap();
        assert_eq!(e.counts, vec![123]);
        let s = scheme(5, &[(1, 1)]);
        let e = empirical_pmf(&s, 50_000, 2).unwrap();
        assert!(e.counts.iter().all(|&c| (c as f64 - 10_000.0).abs() < 5.0 * 89.5));
        assert!(empirical_pmf(&s, 0, 2).is_err());
    }

    #[test]
    fn rank_sampler_point_mass_and_rejection() {
        let mut rng = rng_from_seed(4);
        let point = SelectionPmf::new(vec![int(1), int(0), int(0)]).unwrap();
        assert!((0..100).all(|_| sample_rank_winner(&point, &mut rng).unwrap() == 1));
        let bad = SelectionPmf::new(vec![ratio(3, 2), ratio(-1, 2)]).unwrap();
        assert!(matches!(sample_rank_winner(&bad, &mut rng), Err(Error::InvalidPmf(_))));
    }

    #[test]
    fn brute_force_examples() {
        let m = brute_force_seed_pmf(4, 2).unwrap();
        assert_eq!(m.column(1), vec![ratio(7, 16), ratio(5, 16), ratio(3, 16), ratio(1, 16)]);
        let m = brute_force_seed_pmf(2, 1).unwrap();
        assert_eq!(m.column(1), vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(brute_force_seed_pmf(4, 3).unwrap().get(1, 1), &ratio(37, 64));
        assert!(matches!(brute_force_seed_pmf(100, 4), Err(Error::EnumerationCap { .. })));
    }

    #[test]
    fn empirical_is_deterministic() {
        let s = scheme(10, &[(1, 3), (1, 3), (1, 3)]);
        assert_eq!(empirical_pmf(&s, 10_000, 5).unwrap(), empirical_pmf(&s, 10_000, 5).unwrap());
        let a = empirical_pmf_sharded(&s, 10_001, 5, 3).unwrap();
        assert_eq!(a, empirical_pmf_sharded(&s, 10_001, 5, 3).unwrap());
        assert_eq!(a.counts.iter().sum::<u64>(), 10_001);
    }

    #[test]
    fn tv_distance_examples() {
        let uniform = SelectionPmf::uniform(2).unwrap();
        let exact = EmpiricalPmf { n: 2, counts: vec![5, 5], trials: 10 };
        assert_eq!(tv_distance(&exact, &uniform).unwrap(), 0.0);
        let point = EmpiricalPmf { n: 2, counts: vec![4, 0], trials: 4 };
        assert_eq!(tv_distance(&point, &uniform).unwrap(), 0.5);
        let other = SelectionPmf::new(vec![int(0), int(1)]).unwrap();
        assert_eq!(tv_distance(&point, &other).unwrap(), 1.0);
        assert!(tv_distance(&point, &SelectionPmf::uniform(3).unwrap()).is_err());
    }
}
