use anyhow::{bail, Result};
use serde_json::{json, Value};
use selalg_core::geometry::{
    classify_quadratic, coverage_estimate_with, default_target_accepted, quadratic_polytope_vertices,
    quadratic_top, tournament_simplex_corners, CoverageEstimate, CoverageOptions, Parametrization,
};
use selalg_core::schemes::{parse_rational_list, validate_pmf, RankPolynomial};

use super::resolve_workers;
use crate::args::{Chart, ClassifyArgs, CoverageArgs, Format, SizeArgs, Table1Args, VerticesArgs};
use crate::output::{self, decimal, exact, no_csv, number, pretty, rational_json, rationals_json, Output};

fn parametrization(chart: Chart) -> Parametrization {
    match chart {
        Chart::Top => Parametrization::EliminateTop,
        Chart::First => Parametrization::EliminateFirst,
        Chart::Nodes => Parametrization::NodeValues,
    }
}

fn method(e: &CoverageEstimate) -> &'static str {
    if e.exact {
        "exact"
    } else {
        "monte-carlo"
    }
}

pub fn coverage(args: &CoverageArgs, format: Format) -> Result<Output> {
    let (n, t) = (args.size.n, args.size.t);
    let mut opts = CoverageOptions::new(args.accepted.unwrap_or(default_target_accepted(t)), args.mc.seed)
        .workers(resolve_workers(args.mc.workers)?);
    if let Some(chart) = args.chart {
        opts = opts.parametrization(parametrization(chart));
    }
    let e = coverage_estimate_with(n, t, &opts)?;
    let fraction = format!("{:.6}", e.fraction);
    let stderr = format!("{:.6}", e.stderr);
    let body = match format {
        Format::Text => format!(
            "n={n} t={t} fraction={fraction} stderr={stderr} accepted={} drawn={} seed={} workers={} method={}\n",
            e.samples_accepted,
            e.samples_drawn,
            e.seed,
            e.workers,
            method(&e)
        ),
        Format::Json => pretty(&json!({
            "n": n,
            "t": t,
            "fraction": number(&fraction),
            "stderr": number(&stderr),
            "samples_accepted": e.samples_accepted,
            "samples_drawn": e.samples_drawn,
            "seed": e.seed,
            "workers": e.workers,
            "method": method(&e),
        })),
        Format::Csv => output::csv(
            &["n", "t", "fraction", "stderr", "samples_accepted", "samples_drawn", "seed", "workers", "method"],
            [[
                n.to_string(),
                t.to_string(),
                fraction,
                stderr,
                e.samples_accepted.to_string(),
                e.samples_drawn.to_string(),
                e.seed.to_string(),
                e.workers.to_string(),
                method(&e).to_string(),
            ]],
        ),
    };
    Ok(Output::ok(body))
}

const TABLE_N: [usize; 5] = [4, 10, 20, 100, 300];

/// Cells of the published table, plus the blank `t = 3, n = 10` cell.
fn default_cells() -> Vec<(usize, usize)> {
    let mut cells: Vec<(usize, usize)> = TABLE_N.iter().flat_map(|&n| [(2, n), (3, n)]).collect();
    cells.extend([(4, 10), (4, 20), (4, 100), (5, 10)]);
    cells.sort();
    cells
}

pub fn table1(args: &Table1Args, format: Format) -> Result<Output> {
    let workers = resolve_workers(args.mc.workers)?;
    let cells = if args.all {
        (2..=5).flat_map(|t| TABLE_N.iter().filter(move |&&n| t <= n).map(move |&n| (t, n))).collect()
    } else {
        default_cells()
    };
    let mut rows = Vec::new();
    for (t, n) in cells {
        let accepted = args.accepted.unwrap_or(default_target_accepted(t));
        let opts = CoverageOptions::new(accepted, args.mc.seed).workers(workers);
        let e = coverage_estimate_with(n, t, &opts)?;
        rows.push((t, n, format!("{:.4}", e.fraction), format!("{:.4}", e.stderr), e));
    }
    let body = match format {
        Format::Csv => output::csv(
            &["t", "n", "fraction", "stderr", "samples_accepted", "method"],
            rows.iter().map(|(t, n, f, s, e)| {
                [t.to_string(), n.to_string(), f.clone(), s.clone(), e.samples_accepted.to_string(), method(e).into()]
            }),
        ),
        Format::Json => pretty(&json!({
            "seed": args.mc.seed,
            "workers": workers,
            "cells": rows.iter().map(|(t, n, f, s, e)| json!({
                "t": t,
                "n": n,
                "fraction": number(f),
                "stderr": number(s),
                "samples_accepted": e.samples_accepted,
                "method": method(e),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = format!("{:>5}", "");
            for n in TABLE_N {
                out.push_str(&format!(" {:>15}", format!("n={n}")));
            }
            out.push('\n');
            for t in 2..=5 {
                out.push_str(&format!("{:>5}", format!("t={t}")));
                for n in TABLE_N {
                    let cell = match rows.iter().find(|r| r.0 == t && r.1 == n) {
                        Some((_, _, f, _, e)) if e.exact => f.clone(),
                        Some((_, _, f, s, _)) => format!("{f}±{s}"),
                        None => String::new(),
                    };
                    out.push_str(&format!(" {cell:>15}"));
                }
                out.push('\n');
            }
            out
        }
    };
    Ok(Output::ok(body))
}

pub fn vertices(args: &VerticesArgs, format: Format) -> Result<Output> {
    let verts = quadratic_polytope_vertices(args.n)?;
    let body = match format {
        Format::Text => verts
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let (p, q) = v.active_constraints;
                format!(
                    "v{}: a1 = {}, a2 = {}, a3 = {}; zero at ranks {p} and {q}\n",
                    i + 1,
                    exact(&v.a[0]),
                    exact(&v.a[1]),
                    exact(&v.a[2])
                )
            })
            .collect(),
        Format::Json => pretty(&json!({
            "n": args.n,
            "vertices": verts.iter().map(|v| json!({
                "a": rationals_json(&v.a),
                "zero_ranks": [v.active_constraints.0, v.active_constraints.1],
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => output::csv(
            &["a1", "a2", "a3", "zero_rank_1", "zero_rank_2"],
            verts.iter().map(|v| {
                let mut row: Vec<String> = v.a.iter().map(decimal).collect();
                row.push(v.active_constraints.0.to_string());
                row.push(v.active_constraints.1.to_string());
                row
            }),
        ),
    };
    Ok(Output::ok(body))
}

pub fn corners(args: &SizeArgs, format: Format) -> Result<Output> {
    let corners = tournament_simplex_corners(args.n, args.t)?;
    let body = match format {
        Format::Text => corners
            .iter()
            .enumerate()
            .map(|(s, a)| {
                let parts: Vec<String> = a.iter().map(exact).collect();
                format!("seed {}: a = [{}]\n", s + 1, parts.join(", "))
            })
            .collect(),
        Format::Json => pretty(&json!({
            "n": args.n,
            "t": args.t,
            "corners": corners.iter().enumerate().map(|(s, a)| json!({
                "seed": s + 1,
                "a": rationals_json(a),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let header: Vec<String> = std::iter::once("seed".to_string()).chain((1..=args.t).map(|l| format!("a{l}"))).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            output::csv(
                &header,
                corners
                    .iter()
                    .enumerate()
                    .map(|(s, a)| std::iter::once((s + 1).to_string()).chain(a.iter().map(decimal)).collect::<Vec<_>>()),
            )
        }
    };
    Ok(Output::ok(body))
}

pub fn shape_name(v: &impl serde::Serialize) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        _ => String::from("unknown"),
    }
}

pub fn classify(args: &ClassifyArgs, format: Format) -> Result<Output> {
    no_csv(format, "classify")?;
    let mut a = parse_rational_list(&args.a)?;
    let completed = if args.complete {
        if a.len() != 2 {
            bail!("--complete takes exactly a_1,a_2");
        }
        let top = quadratic_top(args.n, &a[0], &a[1]);
        a.push(top.clone());
        Some(top)
    } else {
        None
    };
    let class = classify_quadratic(args.n, &a)?;
    let valid = validate_pmf(&RankPolynomial::new(args.n, a.clone())?.pmf(), 0.0).is_valid();
    let shape = shape_name(&class.shape);
    let body = match format {
        Format::Json => pretty(&json!({
            "n": args.n,
            "a": rationals_json(&a),
            "completed_a3": completed.as_ref().map(rational_json),
            "shape": shape,
            "stationary_point": class.stationary_point.as_ref().map(rational_json),
            "valid_pmf": valid,
        })),
        _ => {
            let mut out = format!("n={} a=[{}]\n", args.n, a.iter().map(exact).collect::<Vec<_>>().join(", "));
            if let Some(top) = &completed {
                out.push_str(&format!("completed a3 = {}\n", exact(top)));
            }
            out.push_str(&format!("shape: {shape}\n"));
            if let Some(x) = &class.stationary_point {
                out.push_str(&format!("stationary point: {}\n", exact(x)));
            }
            out.push_str(&format!("valid pmf: {valid}\n"));
            out
        }
    };
    Ok(Output::ok(body))
}
