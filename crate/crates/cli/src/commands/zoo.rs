use anyhow::{anyhow, Result};
use serde_json::{json, Map, Value};
use selalg_core::selmat::MATRIX_NAMES;
use selalg_core::{build_zoo, RationalMatrix};

use crate::args::{Format, ZooArgs};
use crate::output::{self, decimal, pretty, rational_json, Output};

fn matrix_json(m: &RationalMatrix) -> Value {
    Value::Array((1..=m.rows()).map(|i| Value::Array(m.row(i).iter().map(rational_json).collect())).collect())
}

pub fn zoo(args: &ZooArgs, format: Format) -> Result<Output> {
    let zoo = build_zoo(args.size.n, args.size.t)?;
    let names: Vec<&str> = match &args.matrix {
        Some(name) => vec![MATRIX_NAMES
            .iter()
            .copied()
            .find(|m| m == name)
            .ok_or_else(|| anyhow!("unknown matrix {name:?}; known: {}", MATRIX_NAMES.join(", ")))?],
        None => MATRIX_NAMES.to_vec(),
    };
    let matrices: Vec<(&str, RationalMatrix)> =
        names.iter().map(|&name| (name, zoo.matrix(name).expect("listed names resolve"))).collect();
    let body = match format {
        Format::Text => matrices
            .iter()
            .map(|(name, m)| format!("{name} ({}x{}):\n{m}\n", m.rows(), m.cols()))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let map: Map<String, Value> = matrices.iter().map(|(name, m)| (name.to_string(), matrix_json(m))).collect();
            pretty(&json!({ "n": args.size.n, "t": args.size.t, "matrices": map }))
        }
        Format::Csv => output::csv(
            &["matrix", "row", "col", "value"],
            matrices.iter().flat_map(|(name, m)| {
                (1..=m.rows()).flat_map(move |i| {
                    (1..=m.cols()).map(move |j| vec![name.to_string(), i.to_string(), j.to_string(), decimal(m.get(i, j))])
                })
            }),
        ),
    };
    Ok(Output::ok(body))
}
