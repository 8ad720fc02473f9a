mod figure;
mod geometry;
mod sample;
mod schemes;
mod zoo;

use anyhow::{bail, Context, Result};
use selalg_core::schemes::{parse_rational_list, RankPolynomial, Scheme, TournamentScheme};

use crate::args::{Cli, Command, SchemeArgs};
use crate::output::Output;

pub fn run(cli: &Cli) -> Result<Output> {
    let f = cli.format;
    match &cli.command {
        Command::Convert(a) => schemes::convert(a, f),
        Command::Pmf(a) => schemes::pmf(a, f),
        Command::Validate(a) => schemes::validate(a, f),
        Command::Zoo(a) => zoo::zoo(a, f),
        Command::Coverage(a) => geometry::coverage(a, f),
        Command::Table1(a) => geometry::table1(a, f),
        Command::Vertices(a) => geometry::vertices(a, f),
        Command::Corners(a) => geometry::corners(a, f),
        Command::Classify(a) => geometry::classify(a, f),
        Command::Sample(a) => sample::sample(a, f),
        Command::FigureData(a) => figure::figure_data(a, f),
    }
}

impl SchemeArgs {
    pub fn load(&self) -> Result<Scheme> {
        if let Some(path) = &self.scheme {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return Ok(Scheme::from_json(&text)?);
        }
        let Some(n) = self.n else {
            bail!("give --scheme FILE, or --n with --alpha or --a");
        };
        if let Some(alpha) = &self.alpha {
            return Ok(Scheme::Tournament(TournamentScheme::new(n, parse_rational_list(alpha)?)?));
        }
        if let Some(a) = &self.a {
            return Ok(Scheme::Polynomial(RankPolynomial::new(n, parse_rational_list(a)?)?));
        }
        bail!("--n needs --alpha (tournament) or --a (polynomial)")
    }
}

/// `SELALG_WORKERS` wins over `--workers`; one worker by default.
pub fn resolve_workers(flag: Option<usize>) -> Result<usize> {
    let workers = match std::env::var("SELALG_WORKERS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .with_context(|| format!("SELALG_WORKERS must be a positive integer, got {v:?}"))?,
        Err(_) => flag.unwrap_or(1),
    };
    if workers == 0 {
        bail!("worker count must be positive");
    }
    Ok(workers)
}
