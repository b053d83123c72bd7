use crate::{usage, CliError};

/// An inclusive integer range parsed from `a..b`, or a single value `a`.
#[derive(Clone, Copy, Debug)]
pub struct Range {
    pub lo: usize,
    pub hi: usize,
    /// whether the `..` form was used (a bare value reads as depth for sstar)
    pub explicit: bool,
}

impl Range {
    pub fn parse(flag: &str, text: &str) -> Result<Range, CliError> {
        let bad = || {
            usage(format!(
                "--{flag} wants an inclusive range \"a..b\" or a single non-negative integer, got {text:?}"
            ))
        };
        let (lo_text, hi_text, explicit) = match text.split_once("..") {
            Some((a, b)) => (a, b, true),
            None => (text, text, false),
        };
        let lo = lo_text.trim().parse::<usize>().map_err(|_| bad())?;
        let hi = hi_text.trim().parse::<usize>().map_err(|_| bad())?;
        if lo > hi {
            return Err(usage(format!("--{flag} {text} is an empty range ({lo} > {hi})")));
        }
        Ok(Range { lo, hi, explicit })
    }

    pub fn require_min(self, flag: &str, min: usize) -> Result<Range, CliError> {
        if self.lo < min {
            Err(usage(format!("--{flag} must start at {min} or above, got {}", self.lo)))
        } else {
            Ok(self)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }

    pub fn values(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Round-trippable form for report headers and JSON params.
    pub fn label(&self) -> String {
        if self.lo == self.hi {
            self.lo.to_string()
        } else {
            format!("{}..{}", self.lo, self.hi)
        }
    }
}
