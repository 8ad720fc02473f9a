use anyhow::{bail, Result};
use serde_json::json;
use selalg_core::schemes::{
    polynomial_to_tournament, tournament_to_polynomial, validate_pmf, Conversion, RankPolynomial, Scheme,
    SelectionPmf, TournamentScheme,
};
use selalg_core::Rational;

use crate::args::{ConvertArgs, Format, SchemeArgs, ValidateArgs};
use crate::output::{self, decimal, exact, list, no_csv, pretty, rational_json, rationals_json, Output};

fn describe(s: &Scheme) -> String {
    match s {
        Scheme::Tournament(t) => format!("tournament n={} t={} alpha={}", t.n(), t.t(), list(t.alpha())),
        Scheme::Polynomial(p) => format!("polynomial n={} a={}", p.n(), list(p.coefficients())),
    }
}

fn coefficient_lines(name: &str, xs: &[Rational]) -> String {
    xs.iter()
        .enumerate()
        .map(|(i, x)| format!("  {name}_{} = {}\n", i + 1, exact(x)))
        .collect()
}

/// Polynomial input: `a` zero-padded to `t` coefficients for comparison.
fn padded(p: &RankPolynomial, t: usize) -> Vec<Rational> {
    let mut a = p.coefficients().to_vec();
    a.resize(t.max(a.len()), Rational::default());
    a
}

pub fn convert(args: &ConvertArgs, format: Format) -> Result<Output> {
    no_csv(format, "convert")?;
    let input = args.scheme.load()?;
    let converted = match &input {
        Scheme::Tournament(s) => {
            if args.t.is_some_and(|t| t != s.t()) {
                bail!("--t {} disagrees with the tournament size {}", args.t.unwrap_or(0), s.t());
            }
            let p = tournament_to_polynomial(s);
            if args.round_trip {
                let back = polynomial_to_tournament(&p, s.t())?;
                if back.tournament() != Some(s) {
                    bail!("round trip changed the scheme");
                }
            }
            Scheme::Polynomial(p)
        }
        Scheme::Polynomial(p) => {
            let t = args.t.unwrap_or(p.coefficients().len());
            match polynomial_to_tournament(p, t)? {
                Conversion::Tournament(s) => {
                    if args.round_trip && tournament_to_polynomial(&s).coefficients() != padded(p, t).as_slice() {
                        bail!("round trip changed the scheme");
                    }
                    Scheme::Tournament(s)
                }
                Conversion::Rejected(rej) => {
                    let body = match format {
                        Format::Json => pretty(&json!({
                            "status": "rejected",
                            "message": rej.to_string(),
                            "rejection": rej,
                        })),
                        _ => format!("{}\n{rej}\n{}", describe(&input), coefficient_lines("alpha", &rej.alpha)),
                    };
                    return Ok(Output::rejected(body));
                }
            }
        }
    };
    let scheme_json = converted.to_json();
    if let Some(path) = &args.output {
        std::fs::write(path, format!("{scheme_json}\n"))?;
    }
    let body = match format {
        Format::Json => scheme_json,
        _ => {
            let (name, xs) = match &converted {
                Scheme::Tournament(s) => ("alpha", s.alpha()),
                Scheme::Polynomial(p) => ("a", p.coefficients()),
            };
            let trip = if args.round_trip { "round trip: exact\n" } else { "" };
            format!("{}\n-> {}\n{}{trip}", describe(&input), describe(&converted), coefficient_lines(name, xs))
        }
    };
    Ok(Output::ok(body))
}

fn pmf_body(pmf: &SelectionPmf, format: Format) -> String {
    match format {
        Format::Csv => output::csv(
            &["rank", "probability"],
            pmf.probabilities().iter().enumerate().map(|(k, p)| [(k + 1).to_string(), decimal(p)]),
        ),
        Format::Json => pretty(&json!({
            "n": pmf.n(),
            "pmf": rationals_json(pmf.probabilities()),
            "sum": rational_json(&pmf.total()),
        })),
        Format::Text => {
            let mut out: String = pmf
                .probabilities()
                .iter()
                .enumerate()
                .map(|(k, p)| format!("pi_{} = {}\n", k + 1, exact(p)))
                .collect();
            out.push_str(&format!("sum = {}\n", exact(&pmf.total())));
            out
        }
    }
}

pub fn pmf(args: &SchemeArgs, format: Format) -> Result<Output> {
    Ok(Output::ok(pmf_body(&args.load()?.pmf(), format)))
}

pub fn validate(args: &ValidateArgs, format: Format) -> Result<Output> {
    no_csv(format, "validate")?;
    let scheme = args.scheme.load()?;
    let verdict = validate_pmf(&scheme.pmf(), 0.0);
    let violations: Vec<String> = verdict.violations.iter().map(ToString::to_string).collect();
    // For a valid polynomial, also say whether a tournament realises it.
    let tournament: Option<(usize, Option<TournamentScheme>)> = match &scheme {
        Scheme::Polynomial(p) if verdict.is_valid() => {
            let t = args.t.unwrap_or(p.coefficients().len());
            Some((t, polynomial_to_tournament(p, t)?.tournament().cloned()))
        }
        _ => None,
    };
    let body = match format {
        Format::Json => pretty(&json!({
            "valid": verdict.is_valid(),
            "violations": violations,
            "tournament": tournament.as_ref().map(|(t, s)| json!({
                "t": t,
                "representable": s.is_some(),
                "alpha": s.as_ref().map(|s| rationals_json(s.alpha())),
            })),
        })),
        _ => {
            let mut out = format!("{}\n", describe(&scheme));
            if verdict.is_valid() {
                out.push_str("valid probability distribution\n");
            } else {
                out.push_str("not a probability distribution\n");
                for v in &violations {
                    out.push_str(&format!("  {v}\n"));
                }
            }
            match &tournament {
                Some((t, Some(s))) => out.push_str(&format!("size-{t} tournament: alpha = {}\n", list(s.alpha()))),
                Some((t, None)) => out.push_str(&format!("not a size-{t} tournament\n")),
                None => {}
            }
            out
        }
    };
    Ok(if verdict.is_valid() { Output::ok(body) } else { Output::rejected(body) })
}
