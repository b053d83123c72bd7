use std::collections::HashMap;
use std::env;
use std::fs;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use qmoments_core::partitions::{
    table_classical_crank, table_classical_rank, table_ms2, table_ns1,
};
use qmoments_core::{Cap, StatKind, StatTable};

type Key = (StatKind, Cap, usize);

static MEMO: OnceLock<Mutex<HashMap<Key, Arc<StatTable>>>> = OnceLock::new();

/// Fetch a statistic table, memoized in-process. With `QMOMENTS_CACHE_DIR`
/// set, tables are additionally persisted there as JSON keyed by
/// (kind, N, nmax) and reloaded on later runs; a stale or corrupt cache
/// entry is silently rebuilt.
pub fn table(kind: StatKind, cap: Cap, nmax: usize) -> Arc<StatTable> {
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = memo.lock().unwrap().get(&(kind, cap, nmax)) {
        return Arc::clone(hit);
    }
    let table = Arc::new(fetch_or_build(kind, cap, nmax));
    memo.lock()
        .unwrap()
        .entry((kind, cap, nmax))
        .or_insert(table)
        .clone()
}

fn fetch_or_build(kind: StatKind, cap: Cap, nmax: usize) -> StatTable {
    let cache_path = env::var_os("QMOMENTS_CACHE_DIR").map(|dir| {
        let cap_label = match cap {
            Cap::Finite(c) => c.to_string(),
            Cap::Infinite => "inf".to_string(),
        };
        let kind_label = match kind {
            StatKind::Rank => "rank",
            StatKind::Crank => "crank",
        };
        Path::new(&dir).join(format!("{kind_label}-N{cap_label}-n{nmax}.json"))
    });
    if let Some(path) = &cache_path {
        if let Some(table) = load(path, kind, cap, nmax) {
            return table;
        }
    }
    let table = match (kind, cap) {
        (StatKind::Rank, Cap::Finite(c)) => table_ns1(c, nmax),
        (StatKind::Crank, Cap::Finite(c)) => table_ms2(c, nmax),
        (StatKind::Rank, Cap::Infinite) => table_classical_rank(nmax),
        (StatKind::Crank, Cap::Infinite) => table_classical_crank(nmax),
    };
    if let Some(path) = &cache_path {
        if let Some(dir) = path.parent() {
            let _ = fs::create_dir_all(dir);
        }
        let _ = fs::write(path, table.to_json().to_string());
    }
    table
}

fn load(path: &Path, kind: StatKind, cap: Cap, nmax: usize) -> Option<StatTable> {
    let text = fs::read_to_string(path).ok()?;
    let doc: serde_json::Value = serde_json::from_str(&text).ok()?;
    let table = StatTable::from_json(&doc).ok()?;
    (table.kind() == kind && table.cap() == cap && table.nmax() == nmax).then_some(table)
}
