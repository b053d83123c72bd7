use std::collections::{BTreeMap, HashMap};

use num::ToPrimitive;
use serde_json::{json, Value};

use crate::error::CoreError;
use crate::partitions::partitions_of;
use crate::qfunctions::pochhammer_inf;
use crate::series::ZQSeries;

/// Largest `nmax` accepted by the brute-force triple enumeration.
pub const BRUTE_FORCE_LIMIT: usize = 14;

/// Which statistic a table counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StatKind {
    Rank,
    Crank,
}

/// Largest-part / window cap of a table: a finite bound `N`, or none at all
/// (the classical objects).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cap {
    Finite(usize),
    Infinite,
}

impl Cap {
    pub fn as_finite(self) -> Option<usize> {
        match self {
            Cap::Finite(n) => Some(n),
            Cap::Infinite => None,
        }
    }
}

/// Exact integer table `c(m, n)` of weighted counts for one statistic.
///
/// Entries can be negative (the counts are signed); `c(m, n) = 0` whenever
/// `|m| > n`. Rank tables start at `n = 1` — their defining sums have no
/// constant term — while crank tables include `c(0, 0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatTable {
    kind: StatKind,
    cap: Cap,
    nmax: usize,
    rows: Vec<BTreeMap<i64, i64>>,
}

impl StatTable {
    fn new_empty(kind: StatKind, cap: Cap, nmax: usize) -> Self {
        StatTable {
            kind,
            cap,
            nmax,
            rows: vec![BTreeMap::new(); nmax + 1],
        }
    }

    pub fn kind(&self) -> StatKind {
        self.kind
    }

    pub fn cap(&self) -> Cap {
        self.cap
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    /// First row that carries data: 1 for rank tables, 0 for crank tables.
    pub fn n_min(&self) -> usize {
        match self.kind {
            StatKind::Rank => 1,
            StatKind::Crank => 0,
        }
    }

    /// Serialization label combining statistic and cap.
    pub fn kind_label(&self) -> &'static str {
        match (self.kind, self.cap) {
            (StatKind::Rank, Cap::Finite(_)) => "rank-S1",
            (StatKind::Rank, Cap::Infinite) => "rank-classical",
            (StatKind::Crank, Cap::Finite(_)) => "crank-S2",
            (StatKind::Crank, Cap::Infinite) => "crank-classical",
        }
    }

    pub fn entry(&self, m: i64, n: usize) -> i64 {
        assert!(n <= self.nmax, "row {n} is beyond nmax = {}", self.nmax);
        self.rows[n].get(&m).copied().unwrap_or(0)
    }

    /// Nonzero entries of one row, keyed by `m`.
    pub fn row(&self, n: usize) -> &BTreeMap<i64, i64> {
        assert!(n <= self.nmax, "row {n} is beyond nmax = {}", self.nmax);
        &self.rows[n]
    }

    /// Overwrite one entry (mainly for perturbation in tests).
    pub fn set_entry(&mut self, m: i64, n: usize, v: i64) {
        assert!(n <= self.nmax, "row {n} is beyond nmax = {}", self.nmax);
        if v == 0 {
            self.rows[n].remove(&m);
        } else {
            self.rows[n].insert(m, v);
        }
    }

    pub fn column_sum(&self, n: usize) -> i64 {
        self.row(n).values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.iter().all(|(&m, v)| row.get(&-m) == Some(v)))
    }

    /// Nonzero entries as `(n, m, value)` triples, `n` then `m` ascending.
    pub fn rows_in_range(&self, lo: usize, hi: usize) -> Vec<(usize, i64, i64)> {
        assert!(lo <= hi && hi <= self.nmax, "bad row range {lo}..={hi}");
        let mut out = Vec::new();
        for n in lo.max(self.n_min())..=hi {
            for (&m, &v) in &self.rows[n] {
                out.push((n, m, v));
            }
        }
        out
    }

    /// RFC 4180 CSV with columns `n,m,value` (nonzero entries only).
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,m,value\r\n");
        for (n, m, v) in self.rows_in_range(self.n_min(), self.nmax) {
            s.push_str(&format!("{n},{m},{v}\r\n"));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let cap = match self.cap {
            Cap::Finite(n) => json!(n),
            Cap::Infinite => json!("inf"),
        };
        let rows: Vec<Value> = self
            .rows_in_range(self.n_min(), self.nmax)
            .into_iter()
            .map(|(n, m, v)| json!([n, m, v]))
            .collect();
        json!({
            "kind": self.kind_label(),
            "N": cap,
            "nmax": self.nmax,
            "rows": rows,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, CoreError> {
        let bad = |msg: &str| CoreError::InvalidInput(format!("table JSON: {msg}"));
        let obj = v.as_object().ok_or_else(|| bad("not an object"))?;
        let label = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing kind"))?;
        let kind = match label {
            "rank-S1" | "rank-classical" => StatKind::Rank,
            "crank-S2" | "crank-classical" => StatKind::Crank,
            other => return Err(bad(&format!("unknown kind {other:?}"))),
        };
        let cap = match obj.get("N") {
            Some(Value::String(s)) if s == "inf" => Cap::Infinite,
            Some(n) => Cap::Finite(
                n.as_u64().ok_or_else(|| bad("N must be a non-negative integer or \"inf\""))?
                    as usize,
            ),
            None => return Err(bad("missing N")),
        };
        let expected_label = StatTable::new_empty(kind, cap, 0).kind_label();
        if expected_label != label {
            return Err(bad(&format!("kind {label:?} inconsistent with N")));
        }
        let nmax = obj
            .get("nmax")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing nmax"))? as usize;
        let mut table = StatTable::new_empty(kind, cap, nmax);
        let rows = obj
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing rows"))?;
        for r in rows {
            let triple = r.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("row is not a triple"))?;
            let n = triple[0].as_u64().ok_or_else(|| bad("bad n"))? as usize;
            let m = triple[1].as_i64().ok_or_else(|| bad("bad m"))?;
            let val = triple[2].as_i64().ok_or_else(|| bad("bad value"))?;
            if n > nmax {
                return Err(bad("row beyond nmax"));
            }
            table.set_entry(m, n, val);
        }
        Ok(table)
    }

    /// Read a table off a bivariate series: coefficient of `z^m q^n` becomes
    /// `c(m, n)`. Asserts integrality, the `|m| <= n` support bound, and (for
    /// rank tables) the absence of an `n = 0` row.
    pub fn from_zqseries(kind: StatKind, cap: Cap, series: &ZQSeries) -> Self {
        let nmax = series.trunc_order();
        let mut table = StatTable::new_empty(kind, cap, nmax);
        for n in 0..=nmax {
            for (&m, c) in series.slice(n) {
                assert!(
                    c.is_integer(),
                    "non-integer coefficient {c} at z^{m} q^{n} in a statistic series"
                );
                assert!(
                    m.unsigned_abs() as usize <= n,
                    "support violation: z^{m} at q^{n}"
                );
                let v = c
                    .to_integer()
                    .to_i64()
                    .expect("table entry exceeds the i64 range");
                table.set_entry(m, n, v);
            }
        }
        if kind == StatKind::Rank {
            assert!(table.rows[0].is_empty(), "rank tables have no n = 0 row");
        }
        table
    }
}

/// Signed subset-sum polynomial `Π_{v in window} (1 - x^v)` truncated at
/// `nmax`: coefficient `s` is `Σ (-1)^{#parts}` over distinct-part choices
/// from `window` summing to `s`.
fn signed_distinct_poly(window: impl Iterator<Item = usize>, nmax: usize) -> Vec<i64> {
    let mut w = vec![0i64; nmax + 1];
    w[0] = 1;
    for v in window {
        if v > nmax {
            continue;
        }
        for s in (v..=nmax).rev() {
            w[s] -= w[s - v];
        }
    }
    w
}

/// Weighted rank table: pairs `(π₁, π₂)` where, for each `j = 1..=cap`, `π₁`
/// is empty or has distinct parts inside the window `[cap-j+1, cap]` and `π₂`
/// is any partition with Durfee side exactly `j`; weight `(-1)^{#π₁}`, binned
/// by `rank(π₂)` and aggregated over `j`.
pub fn table_ns1(cap: usize, nmax: usize) -> StatTable {
    assert!(cap >= 1, "the cap must be positive");
    // (durfee side, rank) profile of all plain partitions per size
    let mut profile: Vec<HashMap<(usize, i64), i64>> = vec![HashMap::new(); nmax + 1];
    for (t, bucket) in profile.iter_mut().enumerate().skip(1) {
        for p in partitions_of(t, None) {
            *bucket.entry((p.durfee_side(), p.rank())).or_insert(0) += 1;
        }
    }
    let mut table = StatTable::new_empty(StatKind::Rank, Cap::Finite(cap), nmax);
    for j in 1..=cap {
        if j * j > nmax {
            break; // a Durfee side of j needs at least j^2 cells
        }
        let w = signed_distinct_poly(cap - j + 1..=cap, nmax);
        for (s, &ws) in w.iter().enumerate() {
            if ws == 0 {
                continue;
            }
            for t in 0..=(nmax - s) {
                for (&(d, r), &cnt) in &profile[t] {
                    if d == j {
                        let cur = table.entry(r, s + t);
                        table.set_entry(r, s + t, cur + ws * cnt);
                    }
                }
            }
        }
    }
    table
}

/// Partition counts by (size, number of parts) with all parts at most `cap`.
fn count_by_size_and_parts(cap: usize, nmax: usize) -> Vec<Vec<i64>> {
    let mut b = vec![vec![0i64; nmax + 1]; nmax + 1];
    b[0][0] = 1;
    for v in 1..=cap.min(nmax) {
        for t in v..=nmax {
            for c in 1..=t {
                b[t][c] += b[t - v][c - 1];
            }
        }
    }
    b
}

/// Weighted crank table: triples `(π₁, π₂, π₃)` with `π₁` distinct parts
/// `<= cap`, `π₂`, `π₃` arbitrary partitions with parts `<= cap`, weight
/// `(-1)^{#π₁}`, binned by `#π₂ - #π₃`.
///
/// Assembled by convolving three per-component tables; the literal triple
/// enumeration survives as [`table_ms2_bruteforce`] for cross-checking.
pub fn table_ms2(cap: usize, nmax: usize) -> StatTable {
    assert!(cap >= 1, "the cap must be positive");
    let a = signed_distinct_poly(1..=cap, nmax);
    let b = count_by_size_and_parts(cap, nmax);
    // crank-difference convolution of the two unrestricted components:
    // d[t][m + nmax] counts (π₂, π₃) with |π₂|+|π₃| = t, #π₂ - #π₃ = m
    let mut d = vec![vec![0i64; 2 * nmax + 1]; nmax + 1];
    for s2 in 0..=nmax {
        for s3 in 0..=(nmax - s2) {
            for (c2, &x) in b[s2].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (c3, &y) in b[s3].iter().enumerate() {
                    if y != 0 {
                        d[s2 + s3][nmax + c2 - c3] += x * y;
                    }
                }
            }
        }
    }
    let mut table = StatTable::new_empty(StatKind::Crank, Cap::Finite(cap), nmax);
    for (s, &ws) in a.iter().enumerate() {
        if ws == 0 {
            continue;
        }
        for t in 0..=(nmax - s) {
            for (idx, &cnt) in d[t].iter().enumerate() {
                if cnt != 0 {
                    let m = idx as i64 - nmax as i64;
                    let cur = table.entry(m, s + t);
                    table.set_entry(m, s + t, cur + ws * cnt);
                }
            }
        }
    }
    table
}

/// Same table as [`table_ms2`] by literal enumeration of all triples.
/// Cubic blowup limits it to `nmax <= 14`.
pub fn table_ms2_bruteforce(cap: usize, nmax: usize) -> Result<StatTable, CoreError> {
    assert!(cap >= 1, "the cap must be positive");
    if nmax > BRUTE_FORCE_LIMIT {
        return Err(CoreError::BruteForceLimit {
            limit: BRUTE_FORCE_LIMIT,
            got: nmax,
        });
    }
    // distinct-part components as (size, sign) pairs
    let mut distinct: Vec<(usize, i64)> = Vec::new();
    fn gen(v: usize, cap: usize, budget: usize, sum: usize, sign: i64, out: &mut Vec<(usize, i64)>) {
        out.push((sum, sign));
        for next in v..=cap {
            if sum + next > budget {
                break;
            }
            gen(next + 1, cap, budget, sum + next, -sign, out);
        }
    }
    gen(1, cap, nmax, 0, 1, &mut distinct);

    let mut table = StatTable::new_empty(StatKind::Crank, Cap::Finite(cap), nmax);
    for &(s1, sign) in &distinct {
        for s2 in 0..=(nmax - s1) {
            for s3 in 0..=(nmax - s1 - s2) {
                let n = s1 + s2 + s3;
                for p2 in partitions_of(s2, Some(cap)) {
                    for p3 in partitions_of(s3, Some(cap)) {
                        let m = p2.count() as i64 - p3.count() as i64;
                        let cur = table.entry(m, n);
                        table.set_entry(m, n, cur + sign);
                    }
                }
            }
        }
    }
    Ok(table)
}

/// Classical rank counts by direct enumeration of all partitions of each `n`.
pub fn table_classical_rank(nmax: usize) -> StatTable {
    let mut table = StatTable::new_empty(StatKind::Rank, Cap::Infinite, nmax);
    for n in 1..=nmax {
        for p in partitions_of(n, None) {
            let r = p.rank();
            let cur = table.entry(r, n);
            table.set_entry(r, n, cur + 1);
        }
    }
    table
}

/// Classical crank counts `M(m, n)`, read off the bivariate expansion of
/// `(q)_∞ / ((zq)_∞ (z⁻¹q)_∞)` — the normative definition used here.
pub fn table_classical_crank(nmax: usize) -> StatTable {
    let mut series = ZQSeries::from_qseries(&pochhammer_inf(nmax));
    for i in 1..=nmax {
        let up = ZQSeries::invert_factor(1, i, nmax).expect("q-exponent >= 1");
        let down = ZQSeries::invert_factor(-1, i, nmax).expect("q-exponent >= 1");
        series = &(&series * &up) * &down;
    }
    StatTable::from_zqseries(StatKind::Crank, Cap::Infinite, &series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ns1_smallest_cap_examples() {
        let t = table_ns1(1, 4);
        assert_eq!(t.entry(0, 1), 1);
        assert_eq!(t.row(1).len(), 1);
        assert_eq!(t.entry(1, 2), 1);
        assert_eq!(t.entry(-1, 2), 1);
        assert_eq!(t.entry(0, 2), -1);
    }

    #[test]
    fn ns1_matches_classical_once_cap_reaches_n() {
        let t = table_ns1(2, 4);
        assert_eq!(t.entry(0, 2), 0);
        assert_eq!(t.entry(1, 2), 1);
        assert_eq!(t.entry(-1, 2), 1);
    }

    #[test]
    fn ns1_frozen_column() {
        // cap 3, n = 5, computed independently by pair enumeration
        let t = table_ns1(3, 12);
        let expect = [(-4, 1), (-2, 1), (0, 1), (2, 1), (4, 1)];
        assert_eq!(t.row(5).len(), expect.len());
        for (m, v) in expect {
            assert_eq!(t.entry(m, 5), v, "at m = {m}");
        }
    }

    #[test]
    fn ms2_smallest_cap_examples() {
        let t = table_ms2(1, 4);
        assert_eq!(t.entry(0, 0), 1);
        assert_eq!(t.entry(1, 1), 1);
        assert_eq!(t.entry(-1, 1), 1);
        assert_eq!(t.entry(0, 1), -1);
        assert_eq!(t.entry(2, 2), 1);
        assert_eq!(t.entry(-2, 2), 1);
        assert_eq!(t.entry(0, 2), 1);
        assert_eq!(t.entry(1, 2), -1);
        assert_eq!(t.entry(-1, 2), -1);
    }

    #[test]
    fn ms2_stabilizes_to_classical_crank_values() {
        let t = table_ms2(4, 4);
        for m in -5i64..=5 {
            let expect = i64::from([-4, -2, 0, 2, 4].contains(&m));
            assert_eq!(t.entry(m, 4), expect, "at m = {m}");
        }
    }

    #[test]
    fn ms2_frozen_column() {
        let t = table_ms2(3, 12);
        let expect = [
            (-5, 1),
            (-3, 1),
            (-2, -1),
            (-1, 2),
            (0, -1),
            (1, 2),
            (2, -1),
            (3, 1),
            (5, 1),
        ];
        assert_eq!(t.row(5).len(), expect.len());
        for (m, v) in expect {
            assert_eq!(t.entry(m, 5), v, "at m = {m}");
        }
    }

    #[test]
    fn ms2_brute_force_agrees_with_convolution() {
        for cap in [1usize, 3] {
            let brute = table_ms2_bruteforce(cap, 8).unwrap();
            let fast = table_ms2(cap, 8);
            assert_eq!(brute, fast, "disagreement at cap = {cap}");
        }
    }

    #[test]
    fn ms2_brute_force_rejects_large_input() {
        assert!(matches!(
            table_ms2_bruteforce(2, 15),
            Err(CoreError::BruteForceLimit { .. })
        ));
    }

    #[test]
    fn classical_rank_examples() {
        let t = table_classical_rank(6);
        for m in [3i64, 1, 0, -1, -3] {
            assert_eq!(t.entry(m, 4), 1, "at m = {m}");
        }
        assert_eq!(t.entry(2, 4), 0);
        // column sums recover the partition numbers
        for n in 1..=6 {
            assert_eq!(t.column_sum(n) as usize, partitions_of(n, None).count());
        }
    }

    #[test]
    fn classical_crank_examples() {
        let t = table_classical_crank(8);
        assert_eq!(t.entry(0, 0), 1);
        assert_eq!(t.entry(1, 1), 1);
        assert_eq!(t.entry(-1, 1), 1);
        assert_eq!(t.entry(0, 1), -1);
        for m in [-4i64, -2, 0, 2, 4] {
            assert_eq!(t.entry(m, 4), 1, "at m = {m}");
        }
        for m in [-3i64, -1, 1, 3] {
            assert_eq!(t.entry(m, 4), 0, "at m = {m}");
        }
        for n in 2..=8 {
            assert_eq!(t.column_sum(n) as usize, partitions_of(n, None).count());
        }
    }

    #[test]
    fn finite_tables_stabilize_for_cap_at_least_n() {
        let nmax = 16;
        let rank_fin = table_ns1(nmax, nmax);
        let rank_cl = table_classical_rank(nmax);
        let crank_fin = table_ms2(nmax, nmax);
        let crank_cl = table_classical_crank(nmax);
        for n in 0..=nmax {
            assert_eq!(rank_fin.row(n), rank_cl.row(n), "rank row {n}");
            assert_eq!(crank_fin.row(n), crank_cl.row(n), "crank row {n}");
        }
    }

    #[test]
    fn every_table_is_symmetric() {
        assert!(table_ns1(3, 10).is_symmetric());
        assert!(table_ms2(3, 10).is_symmetric());
        assert!(table_classical_rank(10).is_symmetric());
        assert!(table_classical_crank(10).is_symmetric());
    }

    #[test]
    fn csv_shape() {
        let t = table_ms2(1, 2);
        let csv = t.to_csv();
        assert!(csv.starts_with("n,m,value\r\n0,0,1\r\n"));
        assert!(csv.contains("2,-2,1\r\n"));
        assert!(csv.ends_with("\r\n"));
    }

    #[test]
    fn json_round_trip() {
        for t in [table_ns1(2, 6), table_ms2(3, 6), table_classical_crank(5)] {
            let v = t.to_json();
            let back = StatTable::from_json(&v).unwrap();
            assert_eq!(t, back);
        }
    }

    #[test]
    fn row_range_and_entry_access() {
        let t = table_ms2(1, 2);
        let rows = t.rows_in_range(2, 2);
        assert_eq!(
            rows,
            vec![(2, -2, 1), (2, -1, -1), (2, 0, 1), (2, 1, -1), (2, 2, 1)]
        );
    }
}
