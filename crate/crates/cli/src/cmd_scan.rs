use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use rayon::prelude::*;
use serde_json::json;

use qmoments_core::moments::{scan_with_tables, ScanCell, ScanReport, ScanViolation};
use qmoments_core::{Cap, StatKind};

use crate::cache;
use crate::output::{csv, emit, envelope, with_pool, Format};
use crate::ranges::Range;
use crate::CliResult;

#[derive(Args)]
pub struct ScanArgs {
    /// Inclusive cap range
    #[arg(long = "N", default_value = "1..4", allow_hyphen_values = true)]
    pub cap: String,
    /// Inclusive half-order range (the moments compared are the 2k-th)
    #[arg(long, default_value = "1..3", allow_hyphen_values = true)]
    pub k: String,
    /// Inclusive n range
    #[arg(long = "n", default_value = "1..20", allow_hyphen_values = true)]
    pub n: String,
    /// Stop recording violations beyond this many
    #[arg(long, default_value_t = 10)]
    pub max_violations: usize,
    /// Print every grid cell, not just the summary
    #[arg(long)]
    pub verbose: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads (defaults to all cores)
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn run(args: ScanArgs) -> CliResult {
    let start = Instant::now();
    let caps = Range::parse("N", &args.cap)?.require_min("N", 1)?;
    let ks = Range::parse("k", &args.k)?.require_min("k", 1)?;
    let ns = Range::parse("n", &args.n)?.require_min("n", 1)?;
    let ks_v: Vec<u32> = ks.iter().map(|k| k as u32).collect();
    let ns_v = ns.values();

    // caps scan independently; the merge keeps cap-major order
    let per_cap: Vec<(Vec<ScanCell>, Vec<ScanViolation>, bool)> = with_pool(args.jobs, || {
        caps.values()
            .par_iter()
            .map(|&cap| {
                let rank = cache::table(StatKind::Rank, Cap::Finite(cap), ns.hi);
                let crank = cache::table(StatKind::Crank, Cap::Finite(cap), ns.hi);
                scan_with_tables(&rank, &crank, &ks_v, &ns_v, args.max_violations)
            })
            .collect()
    })?;
    let mut cells = Vec::new();
    let mut violations = Vec::new();
    let mut truncated = false;
    for (c, v, t) in per_cap {
        cells.extend(c);
        truncated |= t;
        for violation in v {
            if violations.len() < args.max_violations {
                violations.push(violation);
            } else {
                truncated = true;
            }
        }
    }
    let report = ScanReport {
        caps: caps.values(),
        ks: ks_v,
        ns: ns_v,
        checked: cells.len() as u64,
        cells,
        violations,
        violation_cap: args.max_violations,
        violations_truncated: truncated,
        elapsed: start.elapsed(),
    };

    let params = json!({
        "N": caps.label(),
        "k": ks.label(),
        "n": ns.label(),
        "max_violations": args.max_violations,
        "verbose": args.verbose,
    });
    let text = match args.format {
        Format::Table => {
            let mut t = String::new();
            if args.verbose {
                for c in &report.cells {
                    t.push_str(&format!(
                        "N={} k={} n={}: M={} N={} margin={} spt_k={}\n",
                        c.cap, c.k, c.n, c.crank_moment, c.rank_moment, c.margin, c.spt_margin
                    ));
                }
            }
            for v in &report.violations {
                t.push_str(&format!(
                    "[VIOLATION] N={} k={} n={} {}: {}\n",
                    v.cap, v.k, v.n, v.condition, v.detail
                ));
            }
            t.push_str(&format!(
                "checked {} cells over N={} k={} n={}: {} violations{}\n",
                report.checked,
                caps.label(),
                ks.label(),
                ns.label(),
                report.violations.len(),
                if report.violations_truncated { " (list truncated)" } else { "" }
            ));
            t
        }
        Format::Csv => csv(
            "N,k,n,M_value,N_value,margin",
            report.cells.iter().map(|c| {
                format!(
                    "{},{},{},{},{},{}",
                    c.cap, c.k, c.n, c.crank_moment, c.rank_moment, c.margin
                )
            }),
        ),
        Format::Json => {
            let mut data = report.to_json();
            if args.verbose {
                data["cells"] = report
                    .cells
                    .iter()
                    .map(|c| {
                        json!({
                            "N": c.cap,
                            "k": c.k,
                            "n": c.n,
                            "M_value": c.crank_moment.to_string(),
                            "N_value": c.rank_moment.to_string(),
                            "margin": c.margin.to_string(),
                            "spt_margin": c.spt_margin.to_string(),
                        })
                    })
                    .collect::<Vec<_>>()
                    .into();
            }
            envelope("scan", params, data, report.elapsed)
        }
    };
    emit(&args.output, text.as_bytes())?;
    Ok(report.passed())
}
