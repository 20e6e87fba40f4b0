use std::fmt::Write;

use clap::ValueEnum;
use lassalle_core::sequence::Witness;
use num_bigint::BigUint;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

pub fn plain(values: &[BigUint]) -> String {
    values
        .iter()
        .map(BigUint::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn strings(values: &[BigUint]) -> Vec<String> {
    values.iter().map(BigUint::to_string).collect()
}

/// Values are emitted as decimal strings in JSON so they survive any reader.
pub fn row(k: u32, values: &[BigUint], format: Format) -> String {
    match format {
        Format::Plain => format!("{}\n", plain(values)),
        Format::Csv => {
            let mut s = String::from("ell,value\n");
            for (i, v) in values.iter().enumerate() {
                writeln!(s, "{},{v}", i + 1).unwrap();
            }
            s
        }
        Format::Json => format!("{}\n", json!({ "k": k, "row": strings(values) })),
    }
}

pub fn totals(rows: &[(u32, BigUint, BigUint)], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Plain => {
            for (k, want, got) in rows {
                let tag = if want == got { "ok" } else { "MISMATCH" };
                writeln!(s, "k={k} recurrence={want} row_sum={got} {tag}").unwrap();
            }
        }
        Format::Csv => {
            s.push_str("k,recurrence,row_sum\n");
            for (k, want, got) in rows {
                writeln!(s, "{k},{want},{got}").unwrap();
            }
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(k, want, got)| {
                    json!({ "k": k, "recurrence": want.to_string(), "row_sum": got.to_string() })
                })
                .collect();
            writeln!(s, "{}", Value::Array(items)).unwrap();
        }
    }
    s
}

pub struct VerifyLine {
    pub k: u32,
    pub verdicts: Vec<(&'static str, bool)>,
}

fn witness_text(k: u32, property: &str, w: &Witness) -> String {
    let mut s = format!("k={k} property={property} index={}", w.index);
    if let Some([a, b, c]) = w.triple {
        write!(s, " triple=({a},{b},{c})").unwrap();
    }
    s
}

pub fn verify(
    lines: &[VerifyLine],
    failure: Option<&(u32, &'static str, Witness)>,
    format: Format,
) -> String {
    let mut s = String::new();
    match format {
        Format::Plain => {
            for line in lines {
                write!(s, "k={}", line.k).unwrap();
                for (name, ok) in &line.verdicts {
                    write!(s, " {name}={}", if *ok { "ok" } else { "FAIL" }).unwrap();
                }
                s.push('\n');
            }
            match failure {
                None => writeln!(s, "all hold for k <= {}", lines.len() - 1).unwrap(),
                Some((k, p, w)) => writeln!(s, "first failure: {}", witness_text(*k, p, w)).unwrap(),
            }
        }
        Format::Csv => {
            s.push_str("k,property,holds\n");
            for line in lines {
                for (name, ok) in &line.verdicts {
                    writeln!(s, "{},{name},{ok}", line.k).unwrap();
                }
            }
        }
        Format::Json => {
            let results: Vec<Value> = lines
                .iter()
                .map(|line| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("k".into(), json!(line.k));
                    for (name, ok) in &line.verdicts {
                        obj.insert((*name).into(), json!(ok));
                    }
                    Value::Object(obj)
                })
                .collect();
            let witness = failure.map(|(k, p, w)| {
                json!({ "k": k, "property": p, "index": w.index, "triple": w.triple })
            });
            writeln!(
                s,
                "{}",
                json!({ "results": results, "holds": failure.is_none(), "witness": witness })
            )
            .unwrap();
        }
    }
    s
}
