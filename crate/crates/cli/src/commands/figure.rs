use anyhow::Result;
use serde_json::{json, Value};
use selalg_core::exactnum::{int, ratio, to_f64, Rational};
use selalg_core::geometry::{
    clip_line_to_polygon, monotone_boundary_lines, quadratic_polytope_vertices, quadratic_top,
    tournament_simplex_corners,
};
use selalg_core::selmat::deterministic_pmf;

use crate::args::{Figure, FigureArgs, Format};
use crate::output::{self, decimal, decimal_json, pretty, Output};

const SIZES: [usize; 5] = [1, 2, 3, 5, 8];

pub fn figure_data(args: &FigureArgs, format: Format) -> Result<Output> {
    match args.figure {
        Figure::Tournament => tournament(args.n, format),
        Figure::Quad => quad(args.n, format),
    }
}

/// `(k/n, n P(I = k))` for deterministic tournaments of several sizes.
fn tournament(n: usize, format: Format) -> Result<Output> {
    let nn = int(n as i64);
    let mut series = Vec::new();
    for t in SIZES {
        let points: Vec<(Rational, Rational)> = (1..=n)
            .map(|k| Ok((ratio(k as i64, n as i64), &nn * deterministic_pmf(n, t, k)?)))
            .collect::<Result<_>>()?;
        series.push((t, points));
    }
    let body = match format {
        Format::Json => pretty(&json!({
            "n": n,
            "series": series.iter().map(|(t, pts)| json!({
                "t": t,
                "points": pts.iter().map(|(x, y)| json!([decimal_json(x), decimal_json(y)])).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        _ => output::csv(
            &["t", "k", "x", "y"],
            series.iter().flat_map(|(t, pts)| {
                pts.iter()
                    .enumerate()
                    .map(move |(k, (x, y))| vec![t.to_string(), (k + 1).to_string(), decimal(x), decimal(y)])
            }),
        ),
    };
    Ok(Output::ok(body))
}

/// Valid quadratic region, tournament triangle and the monotone boundaries
/// clipped to the region, all as `(a1, a2, a3)` points.
fn quad(n: usize, format: Format) -> Result<Output> {
    let verts = quadratic_polytope_vertices(n)?;
    let region: Vec<[Rational; 3]> = verts.iter().map(|v| v.a.clone()).collect();
    let triangle: Vec<[Rational; 3]> = tournament_simplex_corners(n, 3)?
        .into_iter()
        .map(|c| [c[0].clone(), c[1].clone(), c[2].clone()])
        .collect();
    let stationary = [ratio(3, 2), int(n as i64) - ratio(1, 2)];
    let mut boundaries: Vec<(String, Vec<[Rational; 3]>)> = Vec::new();
    for (line, x) in monotone_boundary_lines(n)?.iter().zip(&stationary) {
        let segment = clip_line_to_polygon(line, &verts)
            .map(|ends| ends.into_iter().map(|(a1, a2)| {
                let a3 = quadratic_top(n, &a1, &a2);
                [a1, a2, a3]
            }).collect())
            .unwrap_or_default();
        boundaries.push((format!("stationary_{}", to_f64(x)), segment));
    }
    let point_json = |p: &[Rational; 3]| Value::Array(p.iter().map(decimal_json).collect());
    let body = match format {
        Format::Json => pretty(&json!({
            "n": n,
            "region": region.iter().map(point_json).collect::<Vec<_>>(),
            "triangle": triangle.iter().map(point_json).collect::<Vec<_>>(),
            "monotone_boundaries": boundaries.iter().map(|(name, seg)| json!({
                "name": name,
                "segment": seg.iter().map(point_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut rows: Vec<Vec<String>> = Vec::new();
            let mut push = |series: &str, pts: &[[Rational; 3]]| {
                for (i, p) in pts.iter().enumerate() {
                    rows.push(vec![series.to_string(), (i + 1).to_string(), decimal(&p[0]), decimal(&p[1]), decimal(&p[2])]);
                }
            };
            push("region", &region);
            push("triangle", &triangle);
            for (name, seg) in &boundaries {
                push(name, seg);
            }
            output::csv(&["series", "index", "a1", "a2", "a3"], rows)
        }
    };
    Ok(Output::ok(body))
}
