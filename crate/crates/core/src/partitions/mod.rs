//! Partition enumeration, the weighted vector-partition statistic tables, and
//! smallest-parts counts.

mod tables;

use std::fmt;

pub use tables::{
    table_classical_crank, table_classical_rank, table_ms2, table_ms2_bruteforce, table_ns1, Cap,
    StatKind, StatTable, BRUTE_FORCE_LIMIT,
};

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing: {parts:?}"
        );
        assert!(parts.iter().all(|&p| p > 0), "parts must be positive: {parts:?}");
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn count(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<usize> {
        self.parts.first().copied()
    }

    pub fn smallest(&self) -> Option<usize> {
        self.parts.last().copied()
    }

    /// Largest part minus number of parts. Only defined for nonempty
    /// partitions; the empty partition has no largest part.
    pub fn rank(&self) -> i64 {
        assert!(!self.is_empty(), "the rank of the empty partition is undefined");
        self.parts[0] as i64 - self.parts.len() as i64
    }

    /// Side of the Durfee square: the largest `j` with `parts[j-1] >= j`.
    pub fn durfee_side(&self) -> usize {
        let mut d = 0;
        for (i, &p) in self.parts.iter().enumerate() {
            if p >= i + 1 {
                d = i + 1;
            } else {
                break;
            }
        }
        d
    }

    /// Multiplicity of the smallest part (0 for the empty partition).
    pub fn smallest_multiplicity(&self) -> usize {
        match self.smallest() {
            None => 0,
            Some(s) => self.parts.iter().rev().take_while(|&&p| p == s).count(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join("+"))
    }
}

/// Iterator over all partitions of `n` with parts at most `max_part`
/// (`None` = unbounded), in reverse-lexicographic order: for n = 4 that is
/// 4; 3+1; 2+2; 2+1+1; 1+1+1+1. The order is stable and documented so that
/// streamed output is reproducible byte for byte.
pub fn partitions_of(n: usize, max_part: Option<usize>) -> PartitionIter {
    let cap = max_part.unwrap_or(n.max(1));
    PartitionIter {
        n,
        cap,
        current: None,
        done: false,
    }
}

pub struct PartitionIter {
    n: usize,
    cap: usize,
    current: Option<Vec<usize>>,
    done: bool,
}

fn greedy_fill(parts: &mut Vec<usize>, mut rem: usize, limit: usize) {
    while rem > 0 {
        let p = limit.min(rem);
        parts.push(p);
        rem -= p;
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        match &mut self.current {
            None => {
                if self.n == 0 {
                    self.done = true;
                    return Some(Partition::empty());
                }
                if self.cap == 0 {
                    self.done = true;
                    return None;
                }
                let mut first = Vec::new();
                greedy_fill(&mut first, self.n, self.cap);
                self.current = Some(first.clone());
                Some(Partition { parts: first })
            }
            Some(parts) => {
                // successor: shrink the rightmost part exceeding 1, then
                // refill greedily under the new limit
                let k = match parts.iter().rposition(|&p| p > 1) {
                    None => {
                        self.done = true;
                        return None;
                    }
                    Some(k) => k,
                };
                let rem: usize = parts[k..].iter().sum();
                let limit = parts[k] - 1;
                parts.truncate(k);
                greedy_fill(parts, rem, limit);
                Some(Partition { parts: parts.clone() })
            }
        }
    }
}

/// Total multiplicity of smallest parts over partitions of `n` whose largest
/// part is at most `cap`.
pub fn spt_finite(n: usize, cap: usize) -> u64 {
    assert!(n >= 1 && cap >= 1, "spt is defined for n >= 1, cap >= 1");
    partitions_of(n, Some(cap.min(n)))
        .map(|p| p.smallest_multiplicity() as u64)
        .sum()
}
