//! Geometry of the valid-coefficient polytope and its tournament simplex.
//!
//! A coefficient vector `a` of degree `t - 1` is a valid selection scheme
//! when every `pi_k = sum_l a_l k^(l-1)` is nonnegative and the `pi_k` sum to
//! one. The sum constraint is a hyperplane, so one coefficient is always
//! determined by the others. The tournament-representable part is the
//! simplex spanned by the columns of `T`.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::exactnum::{from_bigint, int, power_sum, ratio, to_f64, Rational};
use crate::schemes::{lagrange_coefficients, linear_tournament_bounds};
use crate::selmat::ConversionMaps;

/// Share of valid degree-`t-1` polynomials that are size-`t` tournaments.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverageEstimate {
    pub n: usize,
    pub t: usize,
    /// Closed form rather than Monte-Carlo (`t = 2`).
    pub exact: bool,
    pub samples_accepted: u64,
    pub samples_drawn: u64,
    pub fraction: f64,
    pub stderr: f64,
    pub seed: u64,
    pub workers: usize,
}

/// Coordinates in which the normalisation plane is sampled uniformly. The
/// coverage fraction is a ratio of volumes on that plane, so every affine
/// chart estimates the same number; they differ only in acceptance rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parametrization {
    /// Free `a_1..a_{t-1}`, `a_t` solved from the sum constraint.
    EliminateTop,
    /// Free `a_2..a_t`, `a_1` solved.
    EliminateFirst,
    /// Free probabilities at `t - 1` evenly spread ranks, the last node's
    /// value solved. The valid region is far less elongated here.
    NodeValues,
}

impl Parametrization {
    /// Coefficient space for `t <= 3`, node values above, where the
    /// coefficient box accepts too rarely to be practical.
    pub fn default_for(t: usize) -> Self {
        if t <= 3 {
            Self::EliminateTop
        } else {
            Self::NodeValues
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoverageOptions {
    pub target_accepted: u64,
    pub seed: u64,
    pub workers: usize,
    /// `None` picks [`Parametrization::default_for`].
    pub parametrization: Option<Parametrization>,
    /// Accepted samples in the box-fitting pilot run.
    pub pilot_accepted: u64,
    pub max_inflation_rounds: usize,
}

impl CoverageOptions {
    pub fn new(target_accepted: u64, seed: u64) -> Self {
        Self {
            target_accepted,
            seed,
            workers: 1,
            parametrization: None,
            pilot_accepted: 2_000,
            max_inflation_rounds: 24,
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn parametrization(mut self, chart: Parametrization) -> Self {
        self.parametrization = Some(chart);
        self
    }
}

/// Accepted-sample targets used for the published table: `10^6` for
/// `t = 3` and `10^5` above.
pub fn default_target_accepted(t: usize) -> u64 {
    if t <= 3 {
        1_000_000
    } else {
        100_000
    }
}

/// Initial box: corner bounding box inflated by this factor.
const BOX_INFLATION: f64 = 4.0;
/// Accepted samples closer than this (box-relative) to a face trigger a doubling.
const FACE_MARGIN: f64 = 0.05;
/// Padding (relative to the observed range) kept around the pilot's samples.
const PILOT_PADDING: f64 = 0.25;
const MAX_DRAWS_WITHOUT_ACCEPT: u64 = 50_000_000;

pub fn coverage_estimate(n: usize, t: usize, target_accepted: u64, seed: u64) -> Result<CoverageEstimate> {
    coverage_estimate_with(n, t, &CoverageOptions::new(target_accepted, seed))
}

/// Monte-Carlo coverage.
///
/// For `t = 2` the answer is the closed form `(n - 1) / n`. For `t >= 3`
/// the free coefficients are drawn uniformly from an axis-aligned box, the
/// eliminated one is completed from the sum constraint, and a draw is
/// accepted when every `pi_k >= 0`. The estimate is the share of accepted
/// draws whose `alpha = Tbar a` is nonnegative.
///
/// The box starts as the corners' bounding box inflated 4x and is clamped to
/// `|a_l| <= max_k |Vbar_lk|`, a hard bound on any valid coefficient. A
/// small pilot run fits the box to the observed samples (plus padding). Any
/// run whose accepted samples come within 5% of a face that is not clamped
/// doubles that coordinate and restarts. Results are deterministic for a
/// fixed `(seed, workers)`.
pub fn coverage_estimate_with(n: usize, t: usize, opts: &CoverageOptions) -> Result<CoverageEstimate> {
    if t < 2 || n < t {
        return Err(param(format!("coverage needs 2 <= t <= n, got n={n}, t={t}")));
    }
    if opts.target_accepted == 0 {
        return Err(param("target_accepted must be positive"));
    }
    let workers = opts.workers.max(1);
    if t == 2 {
        let ratio = linear_tournament_bounds(n)?.coverage_ratio;
        return Ok(CoverageEstimate {
            n,
            t,
            exact: true,
            samples_accepted: 0,
            samples_drawn: 0,
            fraction: to_f64(&ratio),
            stderr: 0.0,
            seed: opts.seed,
            workers,
        });
    }

    let model = PlaneModel::new(n, t, opts.parametrization.unwrap_or(Parametrization::default_for(t)))?;
    let (mut sample_box, mut attempt, mut rounds) = fitted_box(&model, opts, workers)?;
    loop {
        let tally = run(&model, &sample_box, opts.target_accepted, opts.seed, attempt, workers)?;
        attempt += 1;
        if sample_box.inflate_touched(&tally) {
            rounds += 1;
            if rounds > opts.max_inflation_rounds {
                return Err(Error::BoxInflation { rounds });
            }
            continue;
        }
        let accepted = tally.accepted;
        let fraction = tally.representable as f64 / accepted as f64;
        return Ok(CoverageEstimate {
            n,
            t,
            exact: false,
            samples_accepted: accepted,
            samples_drawn: tally.drawn,
            fraction,
            stderr: (fraction * (1.0 - fraction) / accepted as f64).sqrt(),
            seed: opts.seed,
            workers,
        });
    }
}

/// Pilot: grow until no face is touched, then shrink to the sample cloud.
fn fitted_box(model: &PlaneModel, opts: &CoverageOptions, workers: usize) -> Result<(SampleBox, u64, usize)> {
    let mut sample_box = model.initial_box();
    let pilot_target = opts.pilot_accepted.min(opts.target_accepted).max(1);
    let mut attempt = 0;
    let mut rounds = 0;
    loop {
        let tally = run(model, &sample_box, pilot_target, opts.seed, attempt, workers)?;
        attempt += 1;
        if !sample_box.inflate_touched(&tally) {
            sample_box.fit_to(&tally);
            return Ok((sample_box, attempt, rounds));
        }
        rounds += 1;
        if rounds > opts.max_inflation_rounds {
            return Err(Error::BoxInflation { rounds });
        }
    }
}

/// One accepted Monte-Carlo draw.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidSample {
    pub a: Vec<f64>,
    pub representable: bool,
}

/// The first `count` accepted draws the estimator would see, for inspection.
pub fn sample_valid_coefficients(n: usize, t: usize, count: usize, seed: u64) -> Result<Vec<ValidSample>> {
    if t < 3 || n < t {
        return Err(param(format!("sampling needs 3 <= t <= n, got n={n}, t={t}")));
    }
    let opts = CoverageOptions::new(count.max(1) as u64, seed);
    let model = PlaneModel::new(n, t, opts.parametrization.unwrap_or(Parametrization::default_for(t)))?;
    let (sample_box, attempt, _) = fitted_box(&model, &opts, 1)?;
    let mut rng = worker_rng(seed, attempt, 0);
    let mut out = Vec::with_capacity(count);
    let mut x = vec![0.0; model.dim()];
    let mut a = vec![0.0; t];
    while out.len() < count {
        for (j, xj) in x.iter_mut().enumerate() {
            *xj = rng.gen_range(sample_box.lo[j]..sample_box.hi[j]);
        }
        if model.place_and_check(&x, &mut a) {
            out.push(ValidSample {
                a: a.clone(),
                representable: model.representable(&a),
            });
        }
    }
    Ok(out)
}

/// Affine chart of the normalisation plane: `a = base + sum_j x_j dirs_j`.
struct PlaneModel {
    n: usize,
    t: usize,
    base: Vec<f64>,
    dirs: Vec<Vec<f64>>,
    /// Hard per-coordinate bounds valid for every scheme.
    lo_cap: Vec<f64>,
    hi_cap: Vec<f64>,
    /// Tournament corners in chart coordinates.
    corners: Vec<Vec<f64>>,
    tbar: Vec<Vec<f64>>,
}

/// Evenly spread distinct ranks `1 = x_1 < ... < x_t = n`.
fn spread_nodes(n: usize, t: usize) -> Vec<i64> {
    (0..t)
        .map(|j| 1 + ((j * (n - 1)) as f64 / (t - 1) as f64).round() as i64)
        .collect()
}

impl PlaneModel {
    fn new(n: usize, t: usize, chart: Parametrization) -> Result<Self> {
        let maps = ConversionMaps::new(n, t)?;
        let sums: Vec<Rational> = (1..=t).map(|l| from_bigint(power_sum(n, l))).collect();
        let tm = maps.t_matrix();
        let corner_a: Vec<Vec<Rational>> = (1..=t).map(|s| tm.column(s)).collect();

        // Exact basis vectors `b_j` with weights `w_j = sum_k (b_j poly)(k)`:
        // any `a = sum_j y_j b_j` with `sum_j y_j w_j = 1` lies on the plane.
        // The last basis vector is the one eliminated.
        let (basis, coords_of, lo_cap, hi_cap): (Vec<Vec<Rational>>, Box<dyn Fn(&[Rational]) -> Vec<Rational>>, Vec<f64>, Vec<f64>) =
            match chart {
                Parametrization::EliminateTop | Parametrization::EliminateFirst => {
                    let elim = if chart == Parametrization::EliminateTop { t - 1 } else { 0 };
                    let order: Vec<usize> = (0..t).filter(|&l| l != elim).chain([elim]).collect();
                    let basis = order
                        .iter()
                        .map(|&l| (0..t).map(|i| if i == l { int(1) } else { int(0) }).collect())
                        .collect();
                    let free = order[..t - 1].to_vec();
                    // |a_l| <= max_k |Vbar_lk| because a = Vbar pi with pi in the simplex.
                    let vbar = crate::selmat::vandermonde_inverse(t)?;
                    let cap: Vec<f64> = free
                        .iter()
                        .map(|&l| vbar.row(l + 1).iter().map(|x| to_f64(&x.abs())).fold(0.0, f64::max))
                        .collect();
                    let neg = cap.iter().map(|c| -c).collect();
                    (basis, Box::new(move |a: &[Rational]| free.iter().map(|&l| a[l].clone()).collect()), neg, cap)
                }
                Parametrization::NodeValues => {
                    let nodes = spread_nodes(n, t);
                    let lag = lagrange_coefficients(&nodes)?;
                    let basis = (1..=t).map(|j| lag.column(j)).collect();
                    let free_nodes = nodes[..t - 1].to_vec();
                    let eval = move |a: &[Rational]| {
                        free_nodes
                            .iter()
                            .map(|&x| a.iter().rev().fold(Rational::zero(), |acc, c| acc * int(x) + c))
                            .collect()
                    };
                    // Probabilities of a valid scheme lie in [0, 1].
                    (basis, Box::new(eval), vec![0.0; t - 1], vec![1.0; t - 1])
                }
            };
        let weight = |b: &[Rational]| -> Rational { b.iter().zip(&sums).map(|(c, s)| c * s).sum() };
        let last = &basis[t - 1];
        let w_last = weight(last);
        let base = last.iter().map(|c| to_f64(&(c / &w_last))).collect();
        let dirs = basis[..t - 1]
            .iter()
            .map(|b| {
                let ratio = weight(b) / &w_last;
                b.iter().zip(last).map(|(c, e)| to_f64(&(c - &ratio * e))).collect()
            })
            .collect();
        let corners = corner_a
            .iter()
            .map(|c| coords_of(c).iter().map(to_f64).collect())
            .collect();
        Ok(Self {
            n,
            t,
            base,
            dirs,
            lo_cap,
            hi_cap,
            corners,
            tbar: maps.tbar().to_f64_rows(),
        })
    }

    fn dim(&self) -> usize {
        self.t - 1
    }

    fn initial_box(&self) -> SampleBox {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for j in 0..self.dim() {
            let (min, max) = self
                .corners
                .iter()
                .map(|c| c[j])
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
            let centre = 0.5 * (min + max);
            let half = 0.5 * (max - min).max(f64::MIN_POSITIVE) * BOX_INFLATION;
            lo.push((centre - half).max(self.lo_cap[j]));
            hi.push((centre + half).min(self.hi_cap[j]));
        }
        SampleBox {
            lo,
            hi,
            lo_cap: self.lo_cap.clone(),
            hi_cap: self.hi_cap.clone(),
        }
    }

    /// Map chart coordinates to `a`; returns whether the induced `pi` is
    /// nonnegative.
    #[inline]
    fn place_and_check(&self, x: &[f64], a: &mut [f64]) -> bool {
        a.copy_from_slice(&self.base);
        for (xj, dir) in x.iter().zip(&self.dirs) {
            for (ai, d) in a.iter_mut().zip(dir) {
                *ai += xj * d;
            }
        }
        let eval = |k: usize| {
            let x = k as f64;
            a.iter().rev().fold(0.0, |acc, c| acc * x + c)
        };
        // Violations concentrate at the ends of the rank range.
        if eval(1) < 0.0 || eval(self.n) < 0.0 {
            return false;
        }
        (2..self.n).all(|k| eval(k) >= 0.0)
    }

    #[inline]
    fn representable(&self, a: &[f64]) -> bool {
        self.tbar
            .iter()
            .all(|row| row.iter().zip(a).map(|(m, x)| m * x).sum::<f64>() >= 0.0)
    }
}

#[derive(Clone, Debug)]
struct SampleBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
    lo_cap: Vec<f64>,
    hi_cap: Vec<f64>,
}

impl SampleBox {
    /// Double every coordinate whose accepted samples reached within
    /// `FACE_MARGIN` of an unclamped face. Returns whether anything grew.
    fn inflate_touched(&mut self, tally: &Tally) -> bool {
        let mut grew = false;
        for j in 0..self.lo.len() {
            let width = self.hi[j] - self.lo[j];
            let near_lo = (tally.min[j] - self.lo[j]) / width < FACE_MARGIN && self.lo[j] > self.lo_cap[j];
            let near_hi = (self.hi[j] - tally.max[j]) / width < FACE_MARGIN && self.hi[j] < self.hi_cap[j];
            if near_lo || near_hi {
                let centre = 0.5 * (self.lo[j] + self.hi[j]);
                self.lo[j] = (centre - width).max(self.lo_cap[j]);
                self.hi[j] = (centre + width).min(self.hi_cap[j]);
                grew = true;
            }
        }
        grew
    }

    fn fit_to(&mut self, tally: &Tally) {
        for j in 0..self.lo.len() {
            let pad = PILOT_PADDING * (tally.max[j] - tally.min[j]);
            self.lo[j] = self.lo[j].max(tally.min[j] - pad);
            self.hi[j] = self.hi[j].min(tally.max[j] + pad);
        }
    }
}

#[derive(Clone, Debug)]
struct Tally {
    drawn: u64,
    accepted: u64,
    representable: u64,
    min: Vec<f64>,
    max: Vec<f64>,
}

impl Tally {
    fn empty(dim: usize) -> Self {
        Self {
            drawn: 0,
            accepted: 0,
            representable: 0,
            min: vec![f64::INFINITY; dim],
            max: vec![f64::NEG_INFINITY; dim],
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.drawn += other.drawn;
        self.accepted += other.accepted;
        self.representable += other.representable;
        for j in 0..self.min.len() {
            self.min[j] = self.min[j].min(other.min[j]);
            self.max[j] = self.max[j].max(other.max[j]);
        }
        self
    }
}

/// Sub-stream for `(attempt, worker)`; independent ChaCha streams of one seed.
pub(crate) fn worker_rng(seed: u64, attempt: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((attempt << 32) | worker as u64);
    rng
}

fn run(model: &PlaneModel, sample_box: &SampleBox, target: u64, seed: u64, attempt: u64, workers: usize) -> Result<Tally> {
    let share = |w: usize| target / workers as u64 + u64::from((w as u64) < target % workers as u64);
    let tallies: Vec<Result<Tally>> = (0..workers)
        .into_par_iter()
        .map(|w| run_worker(model, sample_box, share(w), worker_rng(seed, attempt, w)))
        .collect();
    tallies.into_iter().try_fold(Tally::empty(model.dim()), |acc, t| Ok(acc.merge(t?)))
}

fn run_worker(model: &PlaneModel, sample_box: &SampleBox, target: u64, mut rng: ChaCha8Rng) -> Result<Tally> {
    let mut tally = Tally::empty(model.dim());
    let mut x = vec![0.0; model.dim()];
    let mut a = vec![0.0; model.t];
    while tally.accepted < target {
        tally.drawn += 1;
        for (j, xj) in x.iter_mut().enumerate() {
            *xj = rng.gen_range(sample_box.lo[j]..sample_box.hi[j]);
        }
        if !model.place_and_check(&x, &mut a) {
            if tally.accepted == 0 && tally.drawn >= MAX_DRAWS_WITHOUT_ACCEPT {
                return Err(param("no valid polynomial found in the sampling box"));
            }
            continue;
        }
        tally.accepted += 1;
        for (j, &xj) in x.iter().enumerate() {
            tally.min[j] = tally.min[j].min(xj);
            tally.max[j] = tally.max[j].max(xj);
        }
        if model.representable(&a) {
            tally.representable += 1;
        }
    }
    Ok(tally)
}

/// Extreme point of the valid quadratic polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeVertex {
    /// `(a_1, a_2, a_3)`.
    pub a: [Rational; 3],
    /// The two ranks whose probability is exactly zero here.
    pub active_constraints: (usize, usize),
}

/// Constraint `pi_k >= 0` on the `t = 3` plane, with `a_3` eliminated and
/// scaled by `sum k^2`: `coef_a1 * a_1 + coef_a2 * a_2 + constant >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankConstraint {
    pub rank: usize,
    pub coef_a1: i128,
    pub coef_a2: i128,
    pub constant: i128,
}

impl RankConstraint {
    pub fn value(&self, a1: &Rational, a2: &Rational) -> Rational {
        Rational::from_integer(self.coef_a1.into()) * a1
            + Rational::from_integer(self.coef_a2.into()) * a2
            + Rational::from_integer(self.constant.into())
    }
}

/// The `n` rank constraints of the quadratic plane.
pub fn quadratic_constraints(n: usize) -> Result<Vec<RankConstraint>> {
    if n < 3 {
        return Err(param("quadratic polytope needs n >= 3"));
    }
    let n_i = n as i128;
    let s2 = n_i * (n_i + 1) / 2;
    let s3 = n_i * (n_i + 1) * (2 * n_i + 1) / 6;
    Ok((1..=n)
        .map(|k| {
            let k_i = k as i128;
            let k2 = k_i * k_i;
            // pi_k * S3 = a_1 (S3 - n k^2) + a_2 (S3 k - S2 k^2) + k^2
            RankConstraint {
                rank: k,
                coef_a1: s3 - n_i * k2,
                coef_a2: s3 * k_i - s2 * k2,
                constant: k2,
            }
        })
        .collect())
}

/// `a_3` on the normalisation plane.
pub fn quadratic_top(n: usize, a1: &Rational, a2: &Rational) -> Rational {
    crate::schemes::complete_top_coefficient(n, &[a1.clone(), a2.clone()])
}

/// All extreme points of the valid quadratic polytope, counterclockwise in
/// the `(a_1, a_2)` plane.
///
/// Every pair of rank constraints is intersected exactly and the point kept
/// when it satisfies all `n` constraints. Intersections and feasibility use
/// integer arithmetic on the common denominator, so the test is exact.
pub fn quadratic_polytope_vertices(n: usize) -> Result<Vec<PolytopeVertex>> {
    let cons = quadratic_constraints(n)?;
    let overflow = || param(format!("n={n} too large for exact vertex enumeration"));
    let mut found: Vec<(Rational, Rational, (usize, usize))> = Vec::new();
    for i in 0..cons.len() {
        for j in i + 1..cons.len() {
            let (p, q) = (&cons[i], &cons[j]);
            let det = p
                .coef_a1
                .checked_mul(q.coef_a2)
                .zip(q.coef_a1.checked_mul(p.coef_a2))
                .and_then(|(x, y)| x.checked_sub(y))
                .ok_or_else(overflow)?;
            if det == 0 {
                continue;
            }
            // Cramer: a1 = x / det, a2 = y / det.
            let x = p.coef_a2 * q.constant - q.coef_a2 * p.constant;
            let y = q.coef_a1 * p.constant - p.coef_a1 * q.constant;
            let sign = det.signum();
            let mut feasible = true;
            for c in &cons {
                let v = c
                    .coef_a1
                    .checked_mul(x)
                    .zip(c.coef_a2.checked_mul(y))
                    .zip(c.constant.checked_mul(det))
                    .and_then(|((u, v), w)| u.checked_add(v)?.checked_add(w))
                    .ok_or_else(overflow)?;
                if v.signum() * sign < 0 {
                    feasible = false;
                    break;
                }
            }
            if feasible {
                let det_r = Rational::from_integer(det.into());
                let a1 = Rational::from_integer(x.into()) / &det_r;
                let a2 = Rational::from_integer(y.into()) / &det_r;
                if !found.iter().any(|(u, v, _)| *u == a1 && *v == a2) {
                    found.push((a1, a2, (p.rank, q.rank)));
                }
            }
        }
    }
    let (cx, cy) = found.iter().fold((0.0, 0.0), |(sx, sy), (a1, a2, _)| {
        (sx + to_f64(a1), sy + to_f64(a2))
    });
    let m = found.len().max(1) as f64;
    let (cx, cy) = (cx / m, cy / m);
    found.sort_by(|(a1, a2, _), (b1, b2, _)| {
        let ang = |x: &Rational, y: &Rational| (to_f64(y) - cy).atan2(to_f64(x) - cx);
        ang(a1, a2).total_cmp(&ang(b1, b2))
    });
    Ok(found
        .into_iter()
        .map(|(a1, a2, active)| {
            let a3 = quadratic_top(n, &a1, &a2);
            PolytopeVertex {
                a: [a1, a2, a3],
                active_constraints: active,
            }
        })
        .collect())
}

/// Shape of a quadratic scheme on the ranks `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadraticShape {
    /// Probability grows with rank number (favours the least fit).
    MonotoneIncreasing,
    /// Probability falls with rank number (favours the fittest).
    MonotoneDecreasing,
    FavoursMiddle,
    FavoursExtremes,
    Constant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticClass {
    pub shape: QuadraticShape,
    /// `-a_2 / (2 a_3)` when `a_3 != 0`.
    pub stationary_point: Option<Rational>,
}

/// Classify `a_1 + a_2 k + a_3 k^2`. The parabola is monotone on the
/// integers `1..=n` iff its stationary point lies outside `(3/2, n - 1/2)`.
pub fn classify_quadratic(n: usize, a: &[Rational]) -> Result<QuadraticClass> {
    if n == 0 || a.is_empty() {
        return Err(param("need n >= 1 and at least one coefficient"));
    }
    if let Some(idx) = a.iter().skip(3).position(|c| !c.is_zero()) {
        return Err(Error::Degree {
            index: idx + 4,
            max_degree: 2,
        });
    }
    let zero = Rational::zero();
    let a2 = a.get(1).unwrap_or(&zero);
    let a3 = a.get(2).unwrap_or(&zero);
    if a3.is_zero() {
        let shape = if a2.is_positive() {
            QuadraticShape::MonotoneIncreasing
        } else if a2.is_negative() {
            QuadraticShape::MonotoneDecreasing
        } else {
            QuadraticShape::Constant
        };
        return Ok(QuadraticClass {
            shape,
            stationary_point: None,
        });
    }
    let x = -a2 / (int(2) * a3);
    let low = ratio(3, 2);
    let high = int(n as i64) - ratio(1, 2);
    let opens_up = a3.is_positive();
    let shape = if x > low && x < high {
        if opens_up {
            QuadraticShape::FavoursExtremes
        } else {
            QuadraticShape::FavoursMiddle
        }
    } else if (x <= low) == opens_up {
        // Vertex left of the ranks and opening up, or right and opening down.
        QuadraticShape::MonotoneIncreasing
    } else {
        QuadraticShape::MonotoneDecreasing
    };
    Ok(QuadraticClass {
        shape,
        stationary_point: Some(x),
    })
}

/// `T e_s` for `s = 1..=t`: the corners of the tournament simplex in
/// coefficient space.
pub fn tournament_simplex_corners(n: usize, t: usize) -> Result<Vec<Vec<Rational>>> {
    let maps = ConversionMaps::new(n, t)?;
    Ok((1..=t).map(|s| maps.t_matrix().column(s)).collect())
}

/// Line `coef_a1 a_1 + coef_a2 a_2 + constant = 0` in the quadratic plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneLine {
    pub coef_a1: Rational,
    pub coef_a2: Rational,
    pub constant: Rational,
}

/// Where the stationary point sits at `3/2` and at `n - 1/2`: the two lines
/// separating monotone schemes from the rest.
pub fn monotone_boundary_lines(n: usize) -> Result<[PlaneLine; 2]> {
    if n < 3 {
        return Err(param("quadratic plane needs n >= 3"));
    }
    let s2 = crate::exactnum::from_bigint(power_sum(n, 2));
    let s3 = crate::exactnum::from_bigint(power_sum(n, 3));
    let nn = int(n as i64);
    // a_2 + 2c a_3 = 0 with a_3 = (1 - n a_1 - S2 a_2) / S3, times S3.
    let line = |c: Rational| PlaneLine {
        coef_a1: -(int(2) * &c * &nn),
        coef_a2: &s3 - int(2) * &c * &s2,
        constant: int(2) * c,
    };
    Ok([line(ratio(3, 2)), line(nn.clone() - ratio(1, 2))])
}

/// Clip a line to the convex polygon given by its counterclockwise vertices.
pub fn clip_line_to_polygon(line: &PlaneLine, polygon: &[PolytopeVertex]) -> Option<[(Rational, Rational); 2]> {
    let side = |v: &PolytopeVertex| &line.coef_a1 * &v.a[0] + &line.coef_a2 * &v.a[1] + &line.constant;
    let mut hits: Vec<(Rational, Rational)> = Vec::new();
    for i in 0..polygon.len() {
        let (p, q) = (&polygon[i], &polygon[(i + 1) % polygon.len()]);
        let (sp, sq) = (side(p), side(q));
        if sp.is_zero() {
            hits.push((p.a[0].clone(), p.a[1].clone()));
            continue;
        }
        if (sp.is_positive() && sq.is_negative()) || (sp.is_negative() && sq.is_positive()) {
            let w = &sp / (&sp - &sq);
            hits.push((
                &p.a[0] + &w * (&q.a[0] - &p.a[0]),
                &p.a[1] + &w * (&q.a[1] - &p.a[1]),
            ));
        }
    }
    hits.dedup();
    match hits.len() {
        0 | 1 => None,
        _ => Some([hits[0].clone(), hits[hits.len() - 1].clone()]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_rational;
    use crate::schemes::{validate_pmf, RankPolynomial};

    fn r(p: i64, q: i64) -> Rational {
        ratio(p, q)
    }

    #[test]
    fn t2_is_closed_form() {
        let est = coverage_estimate(4, 2, 10, 1).unwrap();
        assert!(est.exact);
        assert_eq!(est.fraction, 0.75);
        assert_eq!(est.stderr, 0.0);
        assert!(coverage_estimate(4, 1, 10, 1).is_err());
        assert!(coverage_estimate(3, 4, 10, 1).is_err());
        assert!(coverage_estimate(4, 3, 0, 1).is_err());
    }

    #[test]
    fn coverage_is_deterministic() {
        let a = coverage_estimate(6, 3, 20_000, 7).unwrap();
        let b = coverage_estimate(6, 3, 20_000, 7).unwrap();
        assert_eq!(a, b);
        let c = coverage_estimate(6, 3, 20_000, 8).unwrap();
        assert_ne!(a.fraction, c.fraction);
        assert!((0.0..=1.0).contains(&a.fraction));
        let expected = (a.fraction * (1.0 - a.fraction) / a.samples_accepted as f64).sqrt();
        assert_eq!(a.stderr, expected);
    }

    #[test]
    fn worker_sharding_is_deterministic() {
        let opts = CoverageOptions::new(20_000, 3).workers(3);
        let a = coverage_estimate_with(5, 3, &opts).unwrap();
        let b = coverage_estimate_with(5, 3, &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.samples_accepted, 20_000);
        assert_eq!(a.workers, 3);
    }

    #[test]
    fn n4_vertices_are_exact() {
        let v = quadratic_polytope_vertices(4).unwrap();
        let mut a3: Vec<Rational> = v.iter().map(|x| x.a[2].clone()).collect();
        a3.sort();
        assert_eq!(a3, vec![r(-1, 4), r(1, 8), r(1, 8), r(1, 4)]);
        let pairs: Vec<(usize, usize)> = v.iter().map(|x| x.active_constraints).collect();
        for p in [(1, 2), (1, 4), (2, 3), (3, 4)] {
            assert!(pairs.contains(&p), "{p:?}");
        }
        assert!(quadratic_polytope_vertices(2).is_err());
    }

    #[test]
    fn vertices_are_counterclockwise() {
        for n in [4, 7, 20] {
            let v = quadratic_polytope_vertices(n).unwrap();
            for i in 0..v.len() {
                let (p, q, s) = (&v[i], &v[(i + 1) % v.len()], &v[(i + 2) % v.len()]);
                let cross = (&q.a[0] - &p.a[0]) * (&s.a[1] - &q.a[1]) - (&q.a[1] - &p.a[1]) * (&s.a[0] - &q.a[0]);
                assert!(cross.is_positive(), "n={n} turn at {i}");
            }
        }
    }

    #[test]
    fn vertex_pmfs_are_valid_with_two_zeros() {
        for n in [3, 5, 12] {
            for v in quadratic_polytope_vertices(n).unwrap() {
                let pmf = RankPolynomial::new(n, v.a.to_vec()).unwrap().pmf();
                assert!(validate_pmf(&pmf, 0.0).is_valid());
                let zeros = pmf.probabilities().iter().filter(|p| p.is_zero()).count();
                assert_eq!(zeros, 2);
                let (i, j) = v.active_constraints;
                assert!(pmf.get(i).is_zero() && pmf.get(j).is_zero());
            }
        }
    }

    #[test]
    fn classify_examples() {
        let a: Vec<Rational> = ["0.01", "-1e-4", "2.781e-7"]
            .iter()
            .map(|s| parse_rational(s).unwrap())
            .collect();
        let c = classify_quadratic(300, &a).unwrap();
        assert_eq!(c.shape, QuadraticShape::FavoursExtremes);
        let x = to_f64(c.stationary_point.as_ref().unwrap());
        assert!((x - 179.79).abs() < 0.01, "{x}");

        assert_eq!(classify_quadratic(7, &[r(1, 7), r(0, 1), r(0, 1)]).unwrap().shape, QuadraticShape::Constant);
        assert_eq!(
            classify_quadratic(10, &[r(0, 1), r(2, 110), r(0, 1)]).unwrap().shape,
            QuadraticShape::MonotoneIncreasing
        );
        assert_eq!(classify_quadratic(10, &[r(1, 5), r(-1, 55)]).unwrap().shape, QuadraticShape::MonotoneDecreasing);
        assert!(classify_quadratic(10, &[r(1, 5), r(0, 1), r(0, 1), r(1, 2)]).is_err());
    }

    #[test]
    fn classify_parabola_cases() {
        // (k - 5)^2 on 1..=10 dips in the middle: favours extremes.
        let up = [int(25), int(-10), int(1)];
        assert_eq!(classify_quadratic(10, &up).unwrap().shape, QuadraticShape::FavoursExtremes);
        let down: Vec<Rational> = up.iter().map(|x| -x).collect();
        assert_eq!(classify_quadratic(10, &down).unwrap().shape, QuadraticShape::FavoursMiddle);
        // Vertex at k = 1: increasing when opening up, decreasing when down.
        let left = [int(1), int(-2), int(1)];
        assert_eq!(classify_quadratic(10, &left).unwrap().shape, QuadraticShape::MonotoneIncreasing);
        let left_down: Vec<Rational> = left.iter().map(|x| -x).collect();
        assert_eq!(classify_quadratic(10, &left_down).unwrap().shape, QuadraticShape::MonotoneDecreasing);
        // Vertex exactly at 3/2 still counts as monotone.
        let edge = [int(0), int(-3), int(1)];
        assert_eq!(classify_quadratic(10, &edge).unwrap().shape, QuadraticShape::MonotoneIncreasing);
        // Vertex at n - 1/2 opening up: decreasing.
        let right = [int(0), int(-19), int(1)];
        assert_eq!(classify_quadratic(10, &right).unwrap().shape, QuadraticShape::MonotoneDecreasing);
    }

    #[test]
    fn corners_examples() {
        let c = tournament_simplex_corners(4, 2).unwrap();
        assert_eq!(c, vec![vec![r(9, 16), r(-2, 16)], vec![r(-1, 16), r(2, 16)]]);
        assert_eq!(tournament_simplex_corners(7, 1).unwrap(), vec![vec![r(1, 7)]]);
        let c = tournament_simplex_corners(10, 2).unwrap();
        assert_eq!(c, vec![vec![r(21, 100), r(-1, 50)], vec![r(-1, 100), r(1, 50)]]);
    }

    #[test]
    fn monotone_lines_pass_through_matching_parabolas() {
        let n = 10;
        let [low, high] = monotone_boundary_lines(n).unwrap();
        // Any plane point on `low` has its stationary point at 3/2.
        let a1 = r(1, 20);
        let a2 = -(&low.coef_a1 * &a1 + &low.constant) / &low.coef_a2;
        let a3 = quadratic_top(n, &a1, &a2);
        let c = classify_quadratic(n, &[a1, a2, a3]).unwrap();
        assert_eq!(c.stationary_point, Some(r(3, 2)));
        let a1 = r(1, 30);
        let a2 = -(&high.coef_a1 * &a1 + &high.constant) / &high.coef_a2;
        let a3 = quadratic_top(n, &a1, &a2);
        let c = classify_quadratic(n, &[a1, a2, a3]).unwrap();
        assert_eq!(c.stationary_point, Some(r(19, 2)));
    }
}
