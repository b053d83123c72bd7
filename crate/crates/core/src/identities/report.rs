use std::fmt;
use std::time::Duration;

use num::BigInt;
use serde_json::{json, Value};

use crate::series::{QSeries, ZQSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

/// First coefficient where two sides of a check disagree. The location slots
/// are series-shaped (`q_degree`, optional `z_exp`); checks over other index
/// sets reuse them and say so in their docs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub q_degree: usize,
    pub z_exp: Option<i64>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one identity check: id, parameters, verdict, and — on failure —
/// the first mismatching coefficient. Pass holds exactly when no coefficient
/// up to the truncation differs.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub params: Value,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn pass(id: &str, params: Value) -> Self {
        VerificationReport {
            id: id.to_string(),
            params,
            status: Status::Pass,
            first_mismatch: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn fail(id: &str, params: Value, mismatch: Mismatch) -> Self {
        VerificationReport {
            id: id.to_string(),
            params,
            status: Status::Fail,
            first_mismatch: Some(mismatch),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        let mismatch = match &self.first_mismatch {
            None => Value::Null,
            Some(m) => json!({
                "q_degree": m.q_degree,
                "z_exp": m.z_exp,
                "lhs": m.lhs,
                "rhs": m.rhs,
            }),
        };
        json!({
            "id": self.id,
            "params": self.params,
            "status": if self.passed() { "pass" } else { "fail" },
            "first_mismatch": mismatch,
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", if self.passed() { "PASS" } else { "FAIL" }, self.id)?;
        if let Some(obj) = self.params.as_object() {
            for (k, v) in obj {
                match v {
                    Value::String(s) => write!(f, " {k}={s}")?,
                    other => write!(f, " {k}={other}")?,
                }
            }
        }
        if let Some(m) = &self.first_mismatch {
            write!(f, ": first mismatch at q^{}", m.q_degree)?;
            if let Some(z) = m.z_exp {
                write!(f, " z^{z}")?;
            }
            write!(f, ": lhs={}, rhs={}", m.lhs, m.rhs)?;
        }
        Ok(())
    }
}

/// Compare two single-variable series coefficient by coefficient.
pub fn compare_qseries(id: &str, params: Value, lhs: &QSeries, rhs: &QSeries) -> VerificationReport {
    assert_eq!(
        lhs.trunc_order(),
        rhs.trunc_order(),
        "both sides of a check must share a truncation order"
    );
    for d in 0..=lhs.trunc_order() {
        if lhs.coeff(d) != rhs.coeff(d) {
            let mismatch = Mismatch {
                q_degree: d,
                z_exp: None,
                lhs: lhs.coeff(d).to_string(),
                rhs: rhs.coeff(d).to_string(),
            };
            return VerificationReport::fail(id, params, mismatch);
        }
    }
    VerificationReport::pass(id, params)
}

/// Compare two bivariate series coefficient by coefficient.
pub fn compare_zqseries(
    id: &str,
    params: Value,
    lhs: &ZQSeries,
    rhs: &ZQSeries,
) -> VerificationReport {
    match lhs.first_difference(rhs) {
        None => VerificationReport::pass(id, params),
        Some((n, m, a, b)) => VerificationReport::fail(
            id,
            params,
            Mismatch {
                q_degree: n,
                z_exp: Some(m),
                lhs: a.to_string(),
                rhs: b.to_string(),
            },
        ),
    }
}

/// Compare two integer sequences; index `i` is reported as degree
/// `start_n + i`.
pub fn compare_bigint_seq(
    id: &str,
    params: Value,
    lhs: &[BigInt],
    rhs: &[BigInt],
    start_n: usize,
) -> VerificationReport {
    assert_eq!(lhs.len(), rhs.len(), "sequence checks need equal lengths");
    for (i, (a, b)) in lhs.iter().zip(rhs).enumerate() {
        if a != b {
            return VerificationReport::fail(
                id,
                params,
                Mismatch {
                    q_degree: start_n + i,
                    z_exp: None,
                    lhs: a.to_string(),
                    rhs: b.to_string(),
                },
            );
        }
    }
    VerificationReport::pass(id, params)
}
