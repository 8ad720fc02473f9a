use anyhow::Result;
use serde_json::json;
use selalg_core::sampling::{empirical_pmf_sharded, empirical_rank_pmf, tv_distance, EmpiricalPmf};
use selalg_core::schemes::Scheme;
use selalg_core::Error;

use super::resolve_workers;
use crate::args::{Format, Report, SampleArgs};
use crate::output::{self, decimal, number, pretty, Output};

pub fn sample(args: &SampleArgs, format: Format) -> Result<Output> {
    let scheme = args.scheme.load()?;
    let pmf = scheme.pmf();
    let (empirical, workers): (EmpiricalPmf, usize) = match &scheme {
        Scheme::Tournament(s) => {
            let workers = resolve_workers(args.workers)?;
            (empirical_pmf_sharded(s, args.trials, args.seed, workers)?, workers)
        }
        Scheme::Polynomial(_) => match empirical_rank_pmf(&pmf, args.trials, args.seed) {
            Ok(e) => (e, 1),
            Err(Error::InvalidPmf(why)) => {
                return Ok(Output::rejected(format!("cannot sample: not a probability distribution: {why}\n")))
            }
            Err(e) => return Err(e.into()),
        },
    };
    let tv = format!("{:.6}", tv_distance(&empirical, &pmf)?);
    let freqs = empirical.frequencies();
    let body = match (format, args.report) {
        (Format::Csv, _) => output::csv(
            &["rank", "count", "frequency", "probability"],
            empirical.counts.iter().enumerate().map(|(k, c)| {
                [(k + 1).to_string(), c.to_string(), format!("{:.6}", freqs[k]), decimal(pmf.get(k + 1))]
            }),
        ),
        (Format::Json, report) => {
            let mut v = json!({
                "n": empirical.n,
                "trials": empirical.trials,
                "seed": args.seed,
                "workers": workers,
                "tv": number(&tv),
            });
            if report == Report::Counts {
                v["counts"] = json!(empirical.counts);
                v["probabilities"] = json!(pmf.probabilities().iter().map(output::decimal_json).collect::<Vec<_>>());
            }
            pretty(&v)
        }
        (Format::Text, report) => {
            let mut out = format!(
                "n={} trials={} seed={} workers={workers} tv={tv}\n",
                empirical.n, empirical.trials, args.seed
            );
            if report == Report::Counts {
                for (k, c) in empirical.counts.iter().enumerate() {
                    out.push_str(&format!(
                        "rank {:>4}: {c:>10} ({:.6}; exact {})\n",
                        k + 1,
                        freqs[k],
                        decimal(pmf.get(k + 1))
                    ));
                }
            }
            out
        }
    };
    Ok(Output::ok(body))
}
