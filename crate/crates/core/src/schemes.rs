//! Selection schemes and the conversions between them.
//!
//! A [`RankPolynomial`] assigns rank `k` the probability
//! `sum_l a_l k^(l-1)`. A [`TournamentScheme`] draws `t` individuals
//! uniformly with replacement and picks seed `s` with probability `alpha_s`.
//! Every size-`t` tournament is a polynomial of degree at most `t - 1`
//! (`a = T alpha`). The converse holds exactly when `Tbar a` lies in the
//! probability simplex.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::exactnum::{
    from_bigint, int, parse_rational, power_sum, ratio, serde_vec, to_fraction_string, Rational,
    RationalMatrix,
};
use crate::selmat::{seed_rank_probability, ConversionMaps};

/// Polynomial rank selection: `P(I = k) = sum_l a[l-1] * k^(l-1)`.
///
/// Validity of the induced distribution is a separate question; see
/// [`RankPolynomial::pmf`] and [`validate_pmf`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankPolynomial {
    n: usize,
    a: Vec<Rational>,
}

impl RankPolynomial {
    pub fn new(n: usize, a: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(param("population size must be positive"));
        }
        if a.is_empty() {
            return Err(param("polynomial needs at least one coefficient"));
        }
        Ok(Self { n, a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.a
    }

    /// Highest `l - 1` with `a_l != 0`, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.a.iter().rposition(|c| !c.is_zero())
    }

    pub fn evaluate(&self, k: usize) -> Rational {
        let x = int(k as i64);
        self.a
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    /// Induced rank probabilities, not necessarily valid.
    pub fn pmf(&self) -> SelectionPmf {
        SelectionPmf {
            pi: (1..=self.n).map(|k| self.evaluate(k)).collect(),
        }
    }
}

/// Probabilistic tournament: `alpha[s-1]` is the chance that seed `s` wins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TournamentScheme {
    n: usize,
    alpha: Vec<Rational>,
}

impl TournamentScheme {
    /// Checks `alpha_s >= 0`, `sum alpha_s = 1` and `1 <= t <= n` exactly.
    pub fn new(n: usize, alpha: Vec<Rational>) -> Result<Self> {
        let t = alpha.len();
        if t == 0 {
            return Err(param("tournament size must be positive"));
        }
        if t > n {
            return Err(param(format!("tournament size t={t} exceeds population n={n}")));
        }
        if let Some(s) = alpha.iter().position(Signed::is_negative) {
            return Err(param(format!(
                "alpha_{} = {} is negative",
                s + 1,
                to_fraction_string(&alpha[s])
            )));
        }
        let sum: Rational = alpha.iter().sum();
        if !sum.is_one() {
            return Err(param(format!("alpha sums to {}, not 1", to_fraction_string(&sum))));
        }
        Ok(Self { n, alpha })
    }

    /// Standard tournament: the best of `t` always wins.
    pub fn deterministic(n: usize, t: usize) -> Result<Self> {
        let mut alpha = vec![Rational::zero(); t];
        if let Some(first) = alpha.first_mut() {
            *first = Rational::one();
        }
        Self::new(n, alpha)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    /// Exact rank probabilities `pi = R alpha`, always a valid PMF.
    pub fn pmf(&self) -> SelectionPmf {
        let (n, t) = (self.n, self.t());
        let pi = (1..=n)
            .map(|k| {
                self.alpha
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (s, a)| {
                        acc + a * seed_rank_probability(n, t, s + 1, k).expect("sizes checked at construction")
                    })
            })
            .collect();
        SelectionPmf { pi }
    }
}

/// Probabilities over ranks `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectionPmf {
    pi: Vec<Rational>,
}

impl SelectionPmf {
    pub fn new(pi: Vec<Rational>) -> Result<Self> {
        if pi.is_empty() {
            return Err(param("PMF needs at least one rank"));
        }
        Ok(Self { pi })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![ratio(1, n as i64); n])
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.pi
    }

    /// `P(I = k)` for 1-based `k`.
    pub fn get(&self, k: usize) -> &Rational {
        &self.pi[k - 1]
    }

    pub fn total(&self) -> Rational {
        self.pi.iter().sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.pi.iter().map(crate::exactnum::to_f64).collect()
    }
}

pub fn scheme_pmf_polynomial(p: &RankPolynomial) -> SelectionPmf {
    p.pmf()
}

pub fn scheme_pmf_tournament(s: &TournamentScheme) -> SelectionPmf {
    s.pmf()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PmfViolation {
    Negative {
        rank: usize,
        #[serde(serialize_with = "ser_rational")]
        value: Rational,
    },
    SumNotOne {
        #[serde(serialize_with = "ser_rational")]
        sum: Rational,
    },
}

impl fmt::Display for PmfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Negative { rank, value } => write!(f, "π_{rank} = {} < 0", to_fraction_string(value)),
            Self::SumNotOne { sum } => write!(f, "Σπ = {} ≠ 1", to_fraction_string(sum)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PmfVerdict {
    pub violations: Vec<PmfViolation>,
}

impl PmfVerdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check `pi_k >= 0` and `sum pi_k = 1`. With `tolerance = 0` the test is
/// exact; otherwise each constraint may miss by at most `tolerance`.
/// Violating PMFs are reported, never clamped.
pub fn validate_pmf(pmf: &SelectionPmf, tolerance: f64) -> PmfVerdict {
    let tol = if tolerance > 0.0 {
        Rational::from_float(tolerance).unwrap_or_else(Rational::zero)
    } else {
        Rational::zero()
    };
    let mut violations: Vec<PmfViolation> = pmf
        .pi
        .iter()
        .enumerate()
        .filter(|(_, p)| **p < -tol.clone())
        .map(|(i, p)| PmfViolation::Negative {
            rank: i + 1,
            value: p.clone(),
        })
        .collect();
    let sum = pmf.total();
    if (&sum - Rational::one()).abs() > tol {
        violations.push(PmfViolation::SumNotOne { sum });
    }
    PmfVerdict { violations }
}

/// `a = T alpha`; the result has exactly `t` coefficients.
pub fn tournament_to_polynomial(s: &TournamentScheme) -> RankPolynomial {
    let maps = ConversionMaps::new(s.n, s.t()).expect("sizes checked at construction");
    let a = maps.t_matrix().mul_vec(&s.alpha).expect("square map");
    RankPolynomial { n: s.n, a }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectionKind {
    /// The polynomial's probabilities do not sum to one.
    NotNormalized,
    /// Sums to one but some rank gets negative probability.
    NegativeProbability,
    /// A valid PMF that no size-`t` tournament realises.
    OutsideSimplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlphaViolation {
    Negative {
        seed: usize,
        #[serde(serialize_with = "ser_rational")]
        value: Rational,
    },
    SumNotOne {
        #[serde(serialize_with = "ser_rational")]
        sum: Rational,
    },
}

impl fmt::Display for AlphaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Negative { seed, value } => write!(f, "α_{seed} = {} < 0", to_fraction_string(value)),
            Self::SumNotOne { sum } => write!(f, "Σα = {} ≠ 1", to_fraction_string(sum)),
        }
    }
}

/// Why a polynomial is not a tournament, with the exact offending values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub n: usize,
    pub t: usize,
    pub kind: RejectionKind,
    #[serde(serialize_with = "serde_vec::serialize")]
    pub alpha: Vec<Rational>,
    pub alpha_violations: Vec<AlphaViolation>,
    pub pmf_violations: Vec<PmfViolation>,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            RejectionKind::NotNormalized => "not a probability distribution (sum ≠ 1)",
            RejectionKind::NegativeProbability => "not a probability distribution (negative mass)",
            RejectionKind::OutsideSimplex => "valid ranking but not a size-t tournament",
        };
        write!(f, "rejected (n={}, t={}): {what}", self.n, self.t)?;
        for v in &self.pmf_violations {
            write!(f, "; {v}")?;
        }
        for v in &self.alpha_violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conversion {
    Tournament(TournamentScheme),
    Rejected(Rejection),
}

impl Conversion {
    pub fn tournament(&self) -> Option<&TournamentScheme> {
        match self {
            Self::Tournament(s) => Some(s),
            Self::Rejected(_) => None,
        }
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            Self::Tournament(_) => None,
            Self::Rejected(r) => Some(r),
        }
    }
}

/// `alpha = Tbar a`, accepted iff `alpha` lies in the simplex.
///
/// `p` is zero-padded up to `t` coefficients. A nonzero coefficient beyond
/// degree `t - 1` is a [`Error::Degree`].
pub fn polynomial_to_tournament(p: &RankPolynomial, t: usize) -> Result<Conversion> {
    if t == 0 || t > p.n {
        return Err(param(format!("need 1 <= t <= n, got n={}, t={t}", p.n)));
    }
    if let Some(idx) = p.a.iter().skip(t).position(|c| !c.is_zero()) {
        return Err(Error::Degree {
            index: t + idx + 1,
            max_degree: t - 1,
        });
    }
    let mut a = p.a.clone();
    a.resize(t, Rational::zero());
    let maps = ConversionMaps::new(p.n, t)?;
    let alpha = maps.tbar().mul_vec(&a)?;

    let padded = RankPolynomial { n: p.n, a };
    let pmf_violations = validate_pmf(&padded.pmf(), 0.0).violations;
    let mut alpha_violations: Vec<AlphaViolation> = alpha
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_negative())
        .map(|(s, x)| AlphaViolation::Negative {
            seed: s + 1,
            value: x.clone(),
        })
        .collect();
    let alpha_sum: Rational = alpha.iter().sum();
    if !alpha_sum.is_one() {
        alpha_violations.push(AlphaViolation::SumNotOne { sum: alpha_sum });
    }
    if pmf_violations.is_empty() && alpha_violations.is_empty() {
        return Ok(Conversion::Tournament(TournamentScheme { n: p.n, alpha }));
    }
    let kind = if pmf_violations.iter().any(|v| matches!(v, PmfViolation::SumNotOne { .. })) {
        RejectionKind::NotNormalized
    } else if !pmf_violations.is_empty() {
        RejectionKind::NegativeProbability
    } else {
        RejectionKind::OutsideSimplex
    };
    Ok(Conversion::Rejected(Rejection {
        n: p.n,
        t,
        kind,
        alpha,
        alpha_violations,
        pmf_violations,
    }))
}

/// Bounds for linear ranking `a_1 + a_2 k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRankBounds {
    pub n: usize,
    /// Valid schemes have `|a_2| <= bound`.
    pub bound: Rational,
}

impl LinearRankBounds {
    /// Intercept forced by normalisation: `a_1 = (1 - a_2 (n^2 + n) / 2) / n`.
    pub fn intercept(&self, a2: &Rational) -> Rational {
        let n = int(self.n as i64);
        (Rational::one() - a2 * (&n * &n + &n) / int(2)) / n
    }
}

/// `|a_2| <= 2 / (n^2 - n)` for every valid linear ranking.
pub fn linear_rank_bounds(n: usize) -> Result<LinearRankBounds> {
    if n < 2 {
        return Err(param("linear ranking bounds need n >= 2"));
    }
    let n_i = n as i64;
    Ok(LinearRankBounds {
        n,
        bound: ratio(2, n_i * n_i - n_i),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearTournamentBounds {
    pub n: usize,
    /// Size-2 tournaments reach exactly `|a_2| <= bound`.
    pub bound: Rational,
    /// Share of valid linear rankings that are tournaments, `(n - 1) / n`.
    pub coverage_ratio: Rational,
}

/// `|a_2| <= 2 / n^2` for size-2 tournaments.
pub fn linear_tournament_bounds(n: usize) -> Result<LinearTournamentBounds> {
    let rank = linear_rank_bounds(n)?;
    let n_i = n as i64;
    let bound = ratio(2, n_i * n_i);
    let coverage_ratio = &bound / &rank.bound;
    Ok(LinearTournamentBounds {
        n,
        bound,
        coverage_ratio,
    })
}

/// Solve the normalisation `sum_k pi_k = 1` for the top coefficient `a_t`
/// given `a_1 .. a_{t-1}` (`lower`).
pub fn complete_top_coefficient(n: usize, lower: &[Rational]) -> Rational {
    let t = lower.len() + 1;
    let known = lower
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (i, a)| acc + a * from_bigint(power_sum(n, i + 1)));
    (Rational::one() - known) / from_bigint(power_sum(n, t))
}

/// Randomised tie breaking: ranks in one block share the block's average
/// probability. `groups` must partition `1..=n` into consecutive blocks
/// (any order).
pub fn effective_pmf_with_ties(pmf: &SelectionPmf, groups: &[Vec<usize>]) -> Result<SelectionPmf> {
    let n = pmf.n();
    let mut blocks: Vec<&Vec<usize>> = groups.iter().collect();
    if blocks.iter().any(|g| g.is_empty()) {
        return Err(Error::TieGroups("empty group".into()));
    }
    blocks.sort_by_key(|g| g.iter().min().copied());
    let mut next = 1;
    for g in &blocks {
        let mut ranks = (*g).clone();
        ranks.sort_unstable();
        let expected: Vec<usize> = (next..next + ranks.len()).collect();
        if ranks != expected {
            return Err(Error::TieGroups(format!(
                "group {g:?} is not the consecutive block starting at rank {next}"
            )));
        }
        next += ranks.len();
    }
    if next != n + 1 {
        return Err(Error::TieGroups(format!("groups cover {} of {n} ranks", next - 1)));
    }
    let mut pi = pmf.pi.clone();
    for g in blocks {
        let mean = g.iter().map(|&k| &pmf.pi[k - 1]).sum::<Rational>() / int(g.len() as i64);
        for &k in g {
            pi[k - 1] = mean.clone();
        }
    }
    Ok(SelectionPmf { pi })
}

/// Coefficients of the Lagrange basis on `nodes`:
/// `A[l][s]` is the coefficient of `x^(l-1)` in
/// `p_s(x) = prod_{r != s} (x - x_r) / (x_s - x_r)`, so `V A = I`.
pub fn lagrange_coefficients(nodes: &[i64]) -> Result<RationalMatrix> {
    let t = nodes.len();
    if t == 0 {
        return Err(param("need at least one node"));
    }
    for (i, x) in nodes.iter().enumerate() {
        if nodes[..i].contains(x) {
            return Err(Error::DuplicateNode(*x));
        }
    }
    let mut columns = Vec::with_capacity(t);
    for (s, &xs) in nodes.iter().enumerate() {
        // Ascending-power coefficients of prod (x - x_r).
        let mut poly = vec![Rational::one()];
        let mut denom = Rational::one();
        for (r, &xr) in nodes.iter().enumerate() {
            if r == s {
                continue;
            }
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * int(xr);
            }
            poly = next;
            denom *= int(xs - xr);
        }
        columns.push(poly.into_iter().map(|c| c / &denom).collect::<Vec<_>>());
    }
    Ok(RationalMatrix::from_fn(t, t, |l, s| columns[s - 1][l - 1].clone()))
}

fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_fraction_string(x))
}

/// On-disk scheme description.
///
/// ```json
/// {"kind": "tournament", "n": 10, "t": 2, "alpha": ["1", "0"]}
/// {"kind": "polynomial", "n": 10, "a": ["21/100", "-1/50"]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SchemeFile {
    Tournament {
        n: usize,
        t: usize,
        #[serde(with = "serde_vec")]
        alpha: Vec<Rational>,
    },
    Polynomial {
        n: usize,
        #[serde(with = "serde_vec")]
        a: Vec<Rational>,
    },
}

/// A parsed and validated scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scheme {
    Tournament(TournamentScheme),
    Polynomial(RankPolynomial),
}

impl Scheme {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SchemeFile = serde_json::from_str(text).map_err(|e| Error::SchemeFormat(e.to_string()))?;
        Self::try_from(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SchemeFile::from(self)).expect("scheme serialises")
    }

    pub fn n(&self) -> usize {
        match self {
            Self::Tournament(s) => s.n(),
            Self::Polynomial(p) => p.n(),
        }
    }

    pub fn pmf(&self) -> SelectionPmf {
        match self {
            Self::Tournament(s) => s.pmf(),
            Self::Polynomial(p) => p.pmf(),
        }
    }
}

impl TryFrom<SchemeFile> for Scheme {
    type Error = Error;

    fn try_from(file: SchemeFile) -> Result<Self> {
        match file {
            SchemeFile::Tournament { n, t, alpha } => {
                if alpha.len() != t {
                    return Err(Error::SchemeFormat(format!(
                        "t = {t} but alpha has {} entries",
                        alpha.len()
                    )));
                }
                TournamentScheme::new(n, alpha)
                    .map(Scheme::Tournament)
                    .map_err(|e| Error::SchemeFormat(e.to_string()))
            }
            SchemeFile::Polynomial { n, a } => RankPolynomial::new(n, a)
                .map(Scheme::Polynomial)
                .map_err(|e| Error::SchemeFormat(e.to_string())),
        }
    }
}

impl From<&Scheme> for SchemeFile {
    fn from(s: &Scheme) -> Self {
        match s {
            Scheme::Tournament(s) => SchemeFile::Tournament {
                n: s.n(),
                t: s.t(),
                alpha: s.alpha().to_vec(),
            },
            Scheme::Polynomial(p) => SchemeFile::Polynomial {
                n: p.n(),
                a: p.coefficients().to_vec(),
            },
        }
    }
}

/// Parse a comma-separated list of rationals, e.g. `"1/10, 0"`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        ratio(p, q)
    }

    fn poly(n: usize, a: &[Rational]) -> RankPolynomial {
        RankPolynomial::new(n, a.to_vec()).unwrap()
    }

    #[test]
    fn tournament_construction_checks_simplex() {
        assert!(TournamentScheme::new(4, vec![r(1, 2), r(1, 2)]).is_ok());
        assert!(TournamentScheme::new(4, vec![r(3, 2), r(-1, 2)]).is_err());
        assert!(TournamentScheme::new(4, vec![r(1, 2), r(1, 3)]).is_err());
        assert!(TournamentScheme::new(1, vec![r(1, 2), r(1, 2)]).is_err());
        assert!(TournamentScheme::new(3, vec![]).is_err());
    }

    #[test]
    fn tournament_to_polynomial_examples() {
        let s = TournamentScheme::new(10, vec![r(1, 1), r(0, 1)]).unwrap();
        assert_eq!(tournament_to_polynomial(&s).coefficients(), &[r(21, 100), r(-2, 100)]);
        let s = TournamentScheme::new(10, vec![r(0, 1), r(1, 1)]).unwrap();
        assert_eq!(tournament_to_polynomial(&s).coefficients(), &[r(-1, 100), r(2, 100)]);
        let s = TournamentScheme::new(10, vec![r(1, 1)]).unwrap();
        assert_eq!(tournament_to_polynomial(&s).coefficients(), &[r(1, 10)]);
    }

    #[test]
    fn trailing_zero_coefficients_are_kept() {
        // alpha chosen so that a_2 = 0: the uniform scheme as a size-2 tournament.
        let s = TournamentScheme::new(10, vec![r(1, 2), r(1, 2)]).unwrap();
        let p = tournament_to_polynomial(&s);
        assert_eq!(p.coefficients(), &[r(1, 10), r(0, 1)]);
        assert_eq!(p.degree(), Some(0));
    }

    #[test]
    fn polynomial_to_tournament_examples() {
        let conv = polynomial_to_tournament(&poly(10, &[r(21, 100), r(-2, 100)]), 2).unwrap();
        assert_eq!(conv.tournament().unwrap().alpha(), &[r(1, 1), r(0, 1)]);

        let conv = polynomial_to_tournament(&poly(10, &[r(1, 10), r(0, 1)]), 2).unwrap();
        assert_eq!(conv.tournament().unwrap().alpha(), &[r(1, 2), r(1, 2)]);

        // 1/55 is inside |a_2| <= 2/n^2 = 1/50, so this one is a tournament.
        let conv = polynomial_to_tournament(&poly(10, &[r(0, 1), r(1, 55)]), 2).unwrap();
        assert_eq!(conv.tournament().unwrap().alpha(), &[r(1, 22), r(21, 22)]);

        // a_2 = 1/46 lies between 1/50 and 1/45: valid ranking, not a tournament.
        let conv = polynomial_to_tournament(&poly(10, &[r(-9, 460), r(1, 46)]), 2).unwrap();
        let rej = conv.rejection().unwrap();
        assert_eq!(rej.kind, RejectionKind::OutsideSimplex);
        assert_eq!(
            rej.alpha_violations,
            vec![AlphaViolation::Negative {
                seed: 1,
                value: r(-1, 23)
            }]
        );
        assert!(rej.to_string().contains("α_1 = -1/23 < 0"));
    }

    #[test]
    fn rejection_distinguishes_non_pmf() {
        let conv = polynomial_to_tournament(&poly(10, &[r(1, 5), r(0, 1)]), 2).unwrap();
        let rej = conv.rejection().unwrap();
        assert_eq!(rej.kind, RejectionKind::NotNormalized);
        assert!(rej
            .alpha_violations
            .iter()
            .any(|v| matches!(v, AlphaViolation::SumNotOne { .. })));

        // Sums to one but pi_1 < 0.
        let a2 = r(1, 40);
        let a1 = linear_rank_bounds(10).unwrap().intercept(&a2);
        let conv = polynomial_to_tournament(&poly(10, &[a1, a2]), 2).unwrap();
        assert_eq!(conv.rejection().unwrap().kind, RejectionKind::NegativeProbability);
    }

    #[test]
    fn degree_padding_and_truncation() {
        let p = poly(10, &[r(1, 10)]);
        let conv = polynomial_to_tournament(&p, 3).unwrap();
        assert_eq!(conv.tournament().unwrap().t(), 3);
        let p = poly(10, &[r(1, 10), r(0, 1), r(0, 1)]);
        assert!(polynomial_to_tournament(&p, 1).unwrap().tournament().is_some());
        let p = poly(10, &[r(1, 10), r(0, 1), r(1, 1000)]);
        assert_eq!(
            polynomial_to_tournament(&p, 2).unwrap_err(),
            Error::Degree {
                index: 3,
                max_degree: 1
            }
        );
        assert!(polynomial_to_tournament(&p, 11).is_err());
    }

    #[test]
    fn pmf_examples() {
        let s = TournamentScheme::new(4, vec![r(1, 1), r(0, 1)]).unwrap();
        assert_eq!(s.pmf().probabilities(), [7, 5, 3, 1].map(|x| r(x, 16)).as_slice());
        assert_eq!(poly(4, &[r(1, 4), r(0, 1)]).pmf(), SelectionPmf::uniform(4).unwrap());
        assert_eq!(
            poly(4, &[r(0, 1), r(1, 10)]).pmf().probabilities(),
            [1, 2, 3, 4].map(|x| r(x, 10)).as_slice()
        );
    }

    #[test]
    fn validate_examples() {
        assert!(validate_pmf(&SelectionPmf::uniform(7).unwrap(), 0.0).is_valid());
        let v = validate_pmf(&SelectionPmf::new(vec![r(1, 2), r(3, 4), r(-1, 4)]).unwrap(), 0.0);
        assert_eq!(
            v.violations,
            vec![PmfViolation::Negative {
                rank: 3,
                value: r(-1, 4)
            }]
        );
        let v = validate_pmf(&SelectionPmf::new(vec![r(1, 2); 3]).unwrap(), 0.0);
        assert_eq!(v.violations, vec![PmfViolation::SumNotOne { sum: r(3, 2) }]);
    }

    #[test]
    fn validate_with_tolerance() {
        let pmf = SelectionPmf::new(vec![r(1, 2), r(1, 2) + r(1, 1_000_000_000), r(-1, 1_000_000_000)]).unwrap();
        assert!(!validate_pmf(&pmf, 0.0).is_valid());
        assert!(validate_pmf(&pmf, 1e-8).is_valid());
        assert!(!validate_pmf(&pmf, 1e-10).is_valid());
    }

    #[test]
    fn linear_bounds() {
        assert_eq!(linear_rank_bounds(10).unwrap().bound, r(1, 45));
        assert_eq!(linear_rank_bounds(2).unwrap().bound, r(1, 1));
        assert_eq!(linear_rank_bounds(10).unwrap().intercept(&r(0, 1)), r(1, 10));
        assert!(linear_rank_bounds(1).is_err());

        assert_eq!(linear_tournament_bounds(4).unwrap().coverage_ratio, r(3, 4));
        assert_eq!(linear_tournament_bounds(300).unwrap().coverage_ratio, r(299, 300));
        assert_eq!(linear_tournament_bounds(10).unwrap().bound, r(1, 50));
        assert!(linear_tournament_bounds(0).is_err());
    }

    #[test]
    fn complete_top_examples() {
        assert_eq!(complete_top_coefficient(4, &[r(1, 4)]), r(0, 1));
        assert_eq!(complete_top_coefficient(4, &[r(0, 1), r(0, 1)]), r(1, 30));
        let a3 = complete_top_coefficient(300, &[r(1, 100), r(-1, 10_000)]);
        // (1 - 3 + 4.515) / 9045050
        assert_eq!(a3, r(2515, 1000) / r(9_045_050, 1));
        assert_eq!(complete_top_coefficient(5, &[]), r(1, 5));
    }

    #[test]
    fn ties_examples() {
        let pmf = SelectionPmf::new(vec![r(1, 2), r(1, 3), r(1, 6)]).unwrap();
        let eff = effective_pmf_with_ties(&pmf, &[vec![1], vec![2, 3]]).unwrap();
        assert_eq!(eff.probabilities(), &[r(1, 2), r(1, 4), r(1, 4)]);
        let same = effective_pmf_with_ties(&pmf, &[vec![3], vec![1], vec![2]]).unwrap();
        assert_eq!(same, pmf);
        let flat = effective_pmf_with_ties(&pmf, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(flat, SelectionPmf::uniform(3).unwrap());
    }

    #[test]
    fn ties_reject_bad_partitions() {
        let pmf = SelectionPmf::uniform(4).unwrap();
        assert!(effective_pmf_with_ties(&pmf, &[vec![1, 3], vec![2, 4]]).is_err());
        assert!(effective_pmf_with_ties(&pmf, &[vec![1, 2]]).is_err());
        assert!(effective_pmf_with_ties(&pmf, &[vec![1, 2], vec![2, 3, 4]]).is_err());
        assert!(effective_pmf_with_ties(&pmf, &[vec![1, 2, 3, 4], vec![]]).is_err());
        assert!(effective_pmf_with_ties(&pmf, &[vec![1, 2, 3, 4, 5]]).is_err());
    }

    #[test]
    fn lagrange_examples() {
        let a = lagrange_coefficients(&[1, 2]).unwrap();
        assert_eq!(a.row(1), &[int(2), int(-1)]);
        assert_eq!(a.row(2), &[int(-1), int(1)]);
        assert_eq!(lagrange_coefficients(&[1]).unwrap(), RationalMatrix::identity(1));
        // Partition of unity: the basis polynomials sum to the constant 1.
        let a = lagrange_coefficients(&[1, 2, 3]).unwrap();
        let row_sums: Vec<Rational> = (1..=3).map(|l| a.row(l).iter().sum()).collect();
        assert_eq!(row_sums, vec![int(1), int(0), int(0)]);
        assert_eq!(lagrange_coefficients(&[1, 2, 1]).unwrap_err(), Error::DuplicateNode(1));
    }

    #[test]
    fn scheme_file_round_trip() {
        let text = r#"{"kind": "tournament", "n": 10, "t": 2, "alpha": ["1", "0"]}"#;
        let s = Scheme::from_json(text).unwrap();
        assert_eq!(Scheme::from_json(&s.to_json()).unwrap(), s);

        let text = r#"{"kind": "polynomial", "n": 300, "a": ["0.01", "-1e-4", 2.781e-7]}"#;
        let Scheme::Polynomial(p) = Scheme::from_json(text).unwrap() else {
            panic!("expected polynomial")
        };
        assert_eq!(p.coefficients()[2], r(2781, 10_000_000_000));
    }

    #[test]
    fn scheme_file_errors() {
        for bad in [
            r#"{"kind": "tournament", "n": 10, "t": 3, "alpha": ["1", "0"]}"#,
            r#"{"kind": "tournament", "n": 10, "t": 2, "alpha": ["1", "1"]}"#,
            r#"{"kind": "polynomial", "n": 10, "a": ["x"]}"#,
            r#"{"kind": "polynomial", "n": 10, "a": []}"#,
            r#"{"kind": "exponential", "n": 10}"#,
            "not json",
        ] {
            assert!(matches!(Scheme::from_json(bad), Err(Error::SchemeFormat(_))), "{bad}");
        }
    }
}
