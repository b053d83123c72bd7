use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use qmoments_core::moments::{moment, sstar, symmetrized_moment};
use qmoments_core::partitions::{partitions_of, spt_finite};
use qmoments_core::{Cap, StatKind};

use crate::cache;
use crate::output::{csv, emit, envelope, Format};
use crate::ranges::Range;
use crate::{usage, CliError, CliResult};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// partition counts under the cap
    Partitions,
    /// smallest-parts counts spt(n, N)
    Spt,
    /// the rank-statistic table N(m, n)
    Rank,
    /// the crank-statistic table M(m, n)
    Crank,
    /// plain k-th moments of a statistic table
    Moments,
    /// symmetrized k-th moments (eta/mu)
    Symmetrized,
    /// the S*(n, k) change-of-basis triangle
    Sstar,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stat {
    Rank,
    Crank,
}

#[derive(Args)]
pub struct TableArgs {
    /// What to tabulate
    #[arg(value_enum)]
    pub kind: TableKind,
    /// Inclusive n range "a..b" or a single value (for sstar a bare value
    /// means the triangle depth)
    #[arg(long = "n", default_value = "1..20", allow_hyphen_values = true)]
    pub n: String,
    /// Largest-part cap: a positive integer, or "inf" for the classical objects
    #[arg(long = "N", default_value = "4", allow_hyphen_values = true)]
    pub cap: String,
    /// Which statistic the moments/symmetrized kinds aggregate
    #[arg(long, value_enum, default_value_t = Stat::Crank)]
    pub stat: Stat,
    /// Moment order for the moments/symmetrized kinds
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub k: i64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_cap(text: &str) -> Result<Cap, CliError> {
    if text == "inf" {
        return Ok(Cap::Infinite);
    }
    match text.parse::<usize>() {
        Ok(c) if c >= 1 => Ok(Cap::Finite(c)),
        _ => Err(usage(format!("--N must be a positive integer or \"inf\", got {text:?}"))),
    }
}

fn cap_json(cap: Cap) -> Value {
    match cap {
        Cap::Finite(c) => json!(c),
        Cap::Infinite => json!("inf"),
    }
}

pub fn run(args: TableArgs) -> CliResult {
    let start = Instant::now();
    let range = Range::parse("n", &args.n)?;
    match args.kind {
        TableKind::Partitions => {
            let cap = parse_cap(&args.cap)?;
            let rows: Vec<(usize, String)> = range
                .iter()
                .map(|n| (n, partitions_of(n, cap.as_finite()).count().to_string()))
                .collect();
            let params = json!({"kind": "partitions", "n": range.label(), "N": cap_json(cap)});
            emit_series(&args, params, "count", rows, true, start)
        }
        TableKind::Spt => {
            let cap = parse_cap(&args.cap)?;
            let range = range.require_min("n", 1)?;
            let rows: Vec<(usize, String)> = range
                .iter()
                .map(|n| {
                    let c = match cap {
                        Cap::Finite(c) => c,
                        Cap::Infinite => n, // parts of n never exceed n
                    };
                    (n, spt_finite(n, c).to_string())
                })
                .collect();
            let params = json!({"kind": "spt", "n": range.label(), "N": cap_json(cap)});
            emit_series(&args, params, "spt", rows, true, start)
        }
        TableKind::Moments | TableKind::Symmetrized => {
            let cap = parse_cap(&args.cap)?;
            let range = range.require_min("n", 1)?;
            let symmetrized = args.kind == TableKind::Symmetrized;
            let min_k = i64::from(symmetrized);
            if args.k < min_k {
                return Err(usage(format!(
                    "--k must be at least {min_k} for this kind, got {}",
                    args.k
                )));
            }
            let k = args.k as u32;
            let kind = match args.stat {
                Stat::Rank => StatKind::Rank,
                Stat::Crank => StatKind::Crank,
            };
            let table = cache::table(kind, cap, range.hi);
            let rows: Vec<(usize, String)> = range
                .iter()
                .map(|n| {
                    let v = if symmetrized {
                        symmetrized_moment(&table, k, n)
                    } else {
                        moment(&table, k, n)
                    };
                    (n, v.to_string())
                })
                .collect();
            let (name, label) = if symmetrized {
                ("symmetrized", "symmetrized-moment")
            } else {
                ("moments", "moment")
            };
            let params = json!({
                "kind": name,
                "stat": match args.stat { Stat::Rank => "rank", Stat::Crank => "crank" },
                "k": k,
                "n": range.label(),
                "N": cap_json(cap),
            });
            emit_series(&args, params, label, rows, false, start)
        }
        TableKind::Rank | TableKind::Crank => {
            let cap = parse_cap(&args.cap)?;
            let kind = if args.kind == TableKind::Rank {
                StatKind::Rank
            } else {
                StatKind::Crank
            };
            let table = cache::table(kind, cap, range.hi);
            let rows = table.rows_in_range(range.lo, range.hi);
            let params = json!({"kind": table.kind_label(), "n": range.label(), "N": cap_json(cap)});
            let text = match args.format {
                Format::Table => grouped_rows(&rows),
                Format::Csv => csv("n,m,value", rows.iter().map(|(n, m, v)| format!("{n},{m},{v}"))),
                Format::Json => {
                    let triples: Vec<Value> =
                        rows.iter().map(|(n, m, v)| json!([n, m, v])).collect();
                    let data = json!({"kind": table.kind_label(), "N": cap_json(cap), "rows": triples});
                    envelope("table", params, data, start.elapsed())
                }
            };
            emit(&args.output, text.as_bytes())?;
            Ok(true)
        }
        TableKind::Sstar => {
            let range = range.require_min("n", 1)?;
            let lo = if range.explicit { range.lo } else { 1 };
            let triangle = sstar(range.hi);
            let params = json!({"kind": "sstar", "n": range.label()});
            let text = match args.format {
                Format::Table => {
                    let mut t = String::new();
                    for n in lo..=range.hi {
                        let row: Vec<String> =
                            triangle.row(n).iter().map(|v| v.to_string()).collect();
                        t.push_str(&row.join(" "));
                        t.push('\n');
                    }
                    t
                }
                Format::Csv => csv(
                    "n,m,value",
                    (lo..=range.hi).flat_map(|n| {
                        triangle
                            .row(n)
                            .iter()
                            .enumerate()
                            .map(move |(i, v)| format!("{n},{},{v}", i + 1))
                            .collect::<Vec<_>>()
                    }),
                ),
                Format::Json => {
                    let triples: Vec<Value> = (lo..=range.hi)
                        .flat_map(|n| {
                            triangle
                                .row(n)
                                .iter()
                                .enumerate()
                                .map(move |(i, v)| json!([n, i + 1, v.to_string()]))
                                .collect::<Vec<_>>()
                        })
                        .collect();
                    envelope("table", params, json!({"rows": triples}), start.elapsed())
                }
            };
            emit(&args.output, text.as_bytes())?;
            Ok(true)
        }
    }
}

/// One line per n: `n=5  -2:1  0:1  2:1`.
fn grouped_rows(rows: &[(usize, i64, i64)]) -> String {
    let mut t = String::new();
    let mut current = None;
    for &(n, m, v) in rows {
        if current != Some(n) {
            if current.is_some() {
                t.push('\n');
            }
            t.push_str(&format!("n={n}"));
            current = Some(n);
        }
        t.push_str(&format!("  {m}:{v}"));
    }
    if current.is_some() {
        t.push('\n');
    }
    t
}

fn emit_series(
    args: &TableArgs,
    params: Value,
    label: &str,
    rows: Vec<(usize, String)>,
    numeric: bool,
    start: Instant,
) -> CliResult {
    let text = match args.format {
        Format::Table => {
            let w = rows.last().map_or(1, |(n, _)| n.to_string().len()).max(1);
            let mut t = format!("{:>w$}  {label}\n", "n");
            for (n, v) in &rows {
                t.push_str(&format!("{n:>w$}  {v}\n"));
            }
            t
        }
        Format::Csv => csv("n,coefficient", rows.iter().map(|(n, v)| format!("{n},{v}"))),
        Format::Json => {
            let values: Vec<Value> = rows
                .iter()
                .map(|(n, v)| {
                    if numeric {
                        json!([n, v.parse::<u64>().expect("count fits u64")])
                    } else {
                        json!([n, v])
                    }
                })
                .collect();
            envelope(
                "table",
                params,
                json!({"series": label, "values": values}),
                start.elapsed(),
            )
        }
    };
    emit(&args.output, text.as_bytes())?;
    Ok(true)
}
