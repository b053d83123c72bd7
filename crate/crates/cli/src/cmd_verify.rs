use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use qmoments_core::identities::{
    bailey_check, check_bivariate_identity_32, check_bivariate_identity_35, check_corollary_53,
    check_degeneration, check_fg, check_prop_51, check_sstar, check_stabilization,
    check_theorem_11_with_tables, check_theorem_22, check_theorem_26, check_theorem_28,
    crank_pair, rank_pair, VerificationReport,
};
use qmoments_core::moments::sstar;
use qmoments_core::{Cap, StatKind};

use crate::cache;
use crate::output::{emit, envelope, with_pool, Format};
use crate::ranges::Range;
use crate::{usage, CliError, CliResult};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyId {
    /// 2·spt(n, N) = M_2 - N_2
    #[value(name = "thm1.1")]
    Thm11,
    /// rank symmetrized-moment series vs closed form
    #[value(name = "thm2.2")]
    Thm22,
    /// crank symmetrized-moment series vs closed form
    #[value(name = "thm2.6")]
    Thm26,
    /// weighted multisum vs mu - eta series
    #[value(name = "thm2.8")]
    Thm28,
    /// bivariate rank identity
    #[value(name = "eq3.2")]
    Eq32,
    /// bivariate crank identity
    #[value(name = "eq3.5")]
    Eq35,
    /// multisum closed form vs mu closed form
    #[value(name = "cor5.3")]
    Cor53,
    /// weighted multisum over a Bailey pair
    #[value(name = "prop5.1")]
    Prop51,
    /// the defining pair relation for the built-in pairs
    Bailey,
    /// the S* triangle recursion and basis identity
    Sstar,
    /// moment reconstructions through g_k and S*
    Fg,
    /// finite objects equal the classical ones for N >= n
    Degeneration,
    /// everything above
    All,
}

impl VerifyId {
    fn name(self) -> &'static str {
        match self {
            VerifyId::Thm11 => "thm1.1",
            VerifyId::Thm22 => "thm2.2",
            VerifyId::Thm26 => "thm2.6",
            VerifyId::Thm28 => "thm2.8",
            VerifyId::Eq32 => "eq3.2",
            VerifyId::Eq35 => "eq3.5",
            VerifyId::Cor53 => "cor5.3",
            VerifyId::Prop51 => "prop5.1",
            VerifyId::Bailey => "bailey",
            VerifyId::Sstar => "sstar",
            VerifyId::Fg => "fg",
            VerifyId::Degeneration => "degeneration",
            VerifyId::All => "all",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairChoice {
    Rank,
    Crank,
    Both,
}

impl PairChoice {
    fn names(self) -> &'static [&'static str] {
        match self {
            PairChoice::Rank => &["rank"],
            PairChoice::Crank => &["crank"],
            PairChoice::Both => &["crank", "rank"],
        }
    }

    fn name(self) -> &'static str {
        match self {
            PairChoice::Rank => "rank",
            PairChoice::Crank => "crank",
            PairChoice::Both => "both",
        }
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Which identity to check
    #[arg(value_enum)]
    pub id: VerifyId,
    /// Inclusive cap range
    #[arg(long = "N", default_value = "1..4", allow_hyphen_values = true)]
    pub cap: String,
    /// Inclusive n range (drives thm1.1, bailey depth, sstar depth, fg);
    /// defaults to 1..20
    #[arg(long = "n", allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Inclusive k range (thm2.8, cor5.3, prop5.1, fg)
    #[arg(long, default_value = "1..3", allow_hyphen_values = true)]
    pub k: String,
    /// Inclusive nu range (thm2.2, thm2.6, degeneration)
    #[arg(long, default_value = "1..3", allow_hyphen_values = true)]
    pub nu: String,
    /// Truncation order; defaults to the largest requested n
    #[arg(long = "Q", allow_hyphen_values = true)]
    pub q: Option<i64>,
    /// Which built-in pair prop5.1 and bailey run on
    #[arg(long, value_enum, default_value_t = PairChoice::Both)]
    pub pair: PairChoice,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads (defaults to all cores)
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// One independently runnable check; plan order is the output order.
enum Job {
    Thm11 { cap: usize, ns: Vec<usize> },
    Thm22 { cap: usize, nu: u32, q: usize },
    Thm26 { cap: usize, nu: u32, q: usize },
    Thm28 { cap: usize, k: u32, q: usize },
    Eq32 { cap: usize, q: usize },
    Eq35 { cap: usize, q: usize },
    Cor53 { cap: usize, k: u32, q: usize },
    Prop51 { pair: &'static str, cap: usize, k: u32, q: usize },
    Bailey { pair: &'static str, nmax: usize, q: usize },
    Sstar { depth: usize },
    Fg { cap: usize, kind: StatKind, kmax: u32, nmax: usize },
    Stabilization { cap: usize, kind: StatKind, classical_nmax: usize },
    Degeneration { cap: usize, nu: u32, q: usize },
}

fn pair_by_name(name: &str) -> qmoments_core::BaileyPair {
    match name {
        "crank" => crank_pair(),
        _ => rank_pair(),
    }
}

fn execute(job: &Job) -> Vec<VerificationReport> {
    match *job {
        Job::Thm11 { cap, ref ns } => {
            let nmax = *ns.last().expect("nonempty range");
            let rank = cache::table(StatKind::Rank, Cap::Finite(cap), nmax);
            let crank = cache::table(StatKind::Crank, Cap::Finite(cap), nmax);
            vec![check_theorem_11_with_tables(&rank, &crank, ns)]
        }
        Job::Thm22 { cap, nu, q } => {
            let rank = cache::table(StatKind::Rank, Cap::Finite(cap), q);
            vec![check_theorem_22(cap, nu, q, &rank)]
        }
        Job::Thm26 { cap, nu, q } => {
            let crank = cache::table(StatKind::Crank, Cap::Finite(cap), q);
            vec![check_theorem_26(cap, nu, q, &crank)]
        }
        Job::Thm28 { cap, k, q } => {
            let rank = cache::table(StatKind::Rank, Cap::Finite(cap), q);
            let crank = cache::table(StatKind::Crank, Cap::Finite(cap), q);
            vec![check_theorem_28(cap, k, q, &rank, &crank)]
        }
        Job::Eq32 { cap, q } => vec![check_bivariate_identity_32(cap, q)],
        Job::Eq35 { cap, q } => vec![check_bivariate_identity_35(cap, q)],
        Job::Cor53 { cap, k, q } => {
            let crank = cache::table(StatKind::Crank, Cap::Finite(cap), q);
            vec![check_corollary_53(cap, k, q, &crank)]
        }
        Job::Prop51 { pair, cap, k, q } => {
            vec![check_prop_51(&pair_by_name(pair), k, cap, q)]
        }
        Job::Bailey { pair, nmax, q } => vec![bailey_check(&pair_by_name(pair), nmax, q)],
        Job::Sstar { depth } => vec![check_sstar(&sstar(depth))],
        Job::Fg { cap, kind, kmax, nmax } => {
            let table = cache::table(kind, Cap::Finite(cap), nmax);
            vec![check_fg(&table, kmax, nmax, &sstar(kmax as usize))]
        }
        Job::Stabilization { cap, kind, classical_nmax } => {
            let finite = cache::table(kind, Cap::Finite(cap), cap);
            let classical = cache::table(kind, Cap::Infinite, classical_nmax);
            vec![check_stabilization(&finite, &classical)]
        }
        Job::Degeneration { cap, nu, q } => check_degeneration(cap, nu, q),
    }
}

struct Plan {
    caps: Range,
    ns: Range,
    ks: Range,
    nus: Range,
    q: usize,
    pair: PairChoice,
}

fn build_plan(id: VerifyId, p: &Plan) -> Vec<Job> {
    let mut jobs = Vec::new();
    let ids: Vec<VerifyId> = match id {
        VerifyId::All => vec![
            VerifyId::Thm11,
            VerifyId::Thm22,
            VerifyId::Thm26,
            VerifyId::Thm28,
            VerifyId::Eq32,
            VerifyId::Eq35,
            VerifyId::Cor53,
            VerifyId::Prop51,
            VerifyId::Bailey,
            VerifyId::Sstar,
            VerifyId::Fg,
            VerifyId::Degeneration,
        ],
        one => vec![one],
    };
    for id in ids {
        match id {
            VerifyId::Thm11 => {
                for cap in p.caps.iter() {
                    jobs.push(Job::Thm11 { cap, ns: p.ns.values() });
                }
            }
            VerifyId::Thm22 => {
                for cap in p.caps.iter() {
                    for nu in p.nus.iter() {
                        jobs.push(Job::Thm22 { cap, nu: nu as u32, q: p.q });
                    }
                }
            }
            VerifyId::Thm26 => {
                for cap in p.caps.iter() {
                    for nu in p.nus.iter() {
                        jobs.push(Job::Thm26 { cap, nu: nu as u32, q: p.q });
                    }
                }
            }
            VerifyId::Thm28 => {
                for cap in p.caps.iter() {
                    for k in p.ks.iter() {
                        jobs.push(Job::Thm28 { cap, k: k as u32, q: p.q });
                    }
                }
            }
            VerifyId::Eq32 => {
                for cap in p.caps.iter() {
                    jobs.push(Job::Eq32 { cap, q: p.q });
                }
            }
            VerifyId::Eq35 => {
                for cap in p.caps.iter() {
                    jobs.push(Job::Eq35 { cap, q: p.q });
                }
            }
            VerifyId::Cor53 => {
                for cap in p.caps.iter() {
                    for k in p.ks.iter() {
                        jobs.push(Job::Cor53 { cap, k: k as u32, q: p.q });
                    }
                }
            }
            VerifyId::Prop51 => {
                for &pair in p.pair.names() {
                    for cap in p.caps.iter() {
                        for k in p.ks.iter() {
                            jobs.push(Job::Prop51 { pair, cap, k: k as u32, q: p.q });
                        }
                    }
                }
            }
            VerifyId::Bailey => {
                for &pair in p.pair.names() {
                    jobs.push(Job::Bailey { pair, nmax: p.ns.hi, q: p.q });
                }
            }
            VerifyId::Sstar => jobs.push(Job::Sstar { depth: p.ns.hi }),
            VerifyId::Fg => {
                for cap in p.caps.iter() {
                    for kind in [StatKind::Rank, StatKind::Crank] {
                        jobs.push(Job::Fg {
                            cap,
                            kind,
                            kmax: p.ks.hi as u32,
                            nmax: p.ns.hi,
                        });
                    }
                }
            }
            VerifyId::Degeneration => {
                for cap in p.caps.iter() {
                    for kind in [StatKind::Rank, StatKind::Crank] {
                        jobs.push(Job::Stabilization { cap, kind, classical_nmax: p.caps.hi });
                    }
                    for nu in p.nus.iter() {
                        jobs.push(Job::Degeneration { cap, nu: nu as u32, q: p.q });
                    }
                }
            }
            VerifyId::All => unreachable!("expanded above"),
        }
    }
    jobs
}

/// Default `Q` is the largest requested `n`. An explicit `--n` pins the
/// invariant `Q >= max n`; with the n-range left at its default, `--Q` only
/// has to be non-negative.
fn resolve_q(q: Option<i64>, floor: usize, default: usize) -> Result<usize, CliError> {
    match q {
        None => Ok(default),
        Some(v) if v < 0 => Err(usage(format!("--Q must be non-negative, got {v}"))),
        Some(v) if (v as usize) < floor => Err(usage(format!(
            "--Q {v} is below the largest requested n = {floor}"
        ))),
        Some(v) => Ok(v as usize),
    }
}

pub fn run(args: VerifyArgs) -> CliResult {
    let start = Instant::now();
    if args.format == Format::Csv {
        return Err(usage(
            "verification reports have no CSV form; use --format table or json",
        ));
    }
    let ns = Range::parse("n", args.n.as_deref().unwrap_or("1..20"))?.require_min("n", 1)?;
    let q_floor = if args.n.is_some() { ns.hi } else { 0 };
    let plan = Plan {
        caps: Range::parse("N", &args.cap)?.require_min("N", 1)?,
        ns,
        ks: Range::parse("k", &args.k)?.require_min("k", 1)?,
        nus: Range::parse("nu", &args.nu)?.require_min("nu", 1)?,
        q: resolve_q(args.q, q_floor, ns.hi)?,
        pair: args.pair,
    };
    let jobs = build_plan(args.id, &plan);
    // jobs run concurrently; reports keep plan order, not completion order
    let reports: Vec<VerificationReport> = with_pool(args.jobs, || {
        jobs.par_iter().map(execute).collect::<Vec<_>>()
    })?
    .into_iter()
    .flatten()
    .collect();
    let passed = reports.iter().filter(|r| r.passed()).count();
    let failed = reports.len() - passed;
    let params = json!({
        "id": args.id.name(),
        "N": plan.caps.label(),
        "n": plan.ns.label(),
        "k": plan.ks.label(),
        "nu": plan.nus.label(),
        "Q": plan.q,
        "pair": args.pair.name(),
    });
    match args.format {
        Format::Table => {
            let mut text = String::new();
            for r in &reports {
                text.push_str(&format!("{r}\n"));
            }
            text.push_str(&format!(
                "{} checks: {passed} passed, {failed} failed\n",
                reports.len()
            ));
            emit(&args.output, text.as_bytes())?;
        }
        Format::Json => {
            let data = json!({
                "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                "checked": reports.len(),
                "passed": passed,
                "failed": failed,
            });
            emit(
                &args.output,
                envelope("verify", params, data, start.elapsed()).as_bytes(),
            )?;
        }
        Format::Csv => unreachable!("rejected above"),
    }
    Ok(failed == 0)
}
