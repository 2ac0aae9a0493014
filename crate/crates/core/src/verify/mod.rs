//! Self-checking suites, one per acceptance criterion. Each suite computes
//! both sides of its identities independently and reports every mismatch.

mod algebra;
mod streams;
mod sums;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::DEFAULT_PRECISION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Tables,
    ConstantValue,
    HigherWeight,
    Representations,
    Bijections,
    Cocycle,
    LOracle,
    Counting,
    StreamLaws,
    Identities,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Tables,
        Suite::ConstantValue,
        Suite::HigherWeight,
        Suite::Representations,
        Suite::Bijections,
        Suite::Cocycle,
        Suite::LOracle,
        Suite::Counting,
        Suite::StreamLaws,
        Suite::Identities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::ConstantValue => "constant-value",
            Suite::HigherWeight => "higher-weight",
            Suite::Representations => "representations",
            Suite::Bijections => "bijections",
            Suite::Cocycle => "cocycle",
            Suite::LOracle => "l-oracle",
            Suite::Counting => "counting",
            Suite::StreamLaws => "stream-laws",
            Suite::Identities => "identities",
        }
    }

    /// Largest discriminant visited when the config leaves it open.
    pub fn default_dmax(self) -> i64 {
        match self {
            Suite::ConstantValue => 30,
            Suite::Representations | Suite::Bijections | Suite::Cocycle => 50,
            Suite::LOracle | Suite::Counting => 200,
            _ => 5,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub dmax: Option<i64>,
    pub seed: u64,
    /// Working precision for interval inputs, in bits.
    pub prec: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            dmax: None,
            seed: 20240607,
            prec: DEFAULT_PRECISION,
        }
    }
}

impl VerifyConfig {
    fn dmax(&self, suite: Suite) -> i64 {
        self.dmax.unwrap_or_else(|| suite.default_dmax())
    }
}

/// Failures listed in a report before the rest are only counted.
const MAX_LISTED: usize = 25;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub pass: bool,
    pub checks: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            pass: true,
            checks: 0,
            failed: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.pass = false;
            self.failed += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(what());
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// `"PASS tables (12 checks)"` or the failure count.
    pub fn summary_line(&self) -> String {
        if self.pass {
            format!("PASS {} ({} checks)", self.suite, self.checks)
        } else {
            format!("FAIL {} ({} of {} checks failed)", self.suite, self.failed, self.checks)
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(suite);
    let dmax = cfg.dmax(suite);
    match suite {
        Suite::Tables => sums::tables(&mut r, cfg)?,
        Suite::ConstantValue => sums::constant_value(&mut r, cfg, dmax)?,
        Suite::HigherWeight => sums::higher_weight(&mut r, cfg)?,
        Suite::Representations => sums::representations(&mut r, cfg, dmax)?,
        Suite::Bijections => sums::bijections(&mut r, dmax)?,
        Suite::Cocycle => algebra::cocycle(&mut r, dmax)?,
        Suite::LOracle => algebra::l_oracle(&mut r, dmax)?,
        Suite::Counting => algebra::counting(&mut r, dmax)?,
        Suite::StreamLaws => streams::stream_laws(&mut r, cfg)?,
        Suite::Identities => algebra::identities(&mut r, cfg)?,
    }
    Ok(r)
}

/// Positive non-square discriminants up to `max`.
pub fn discriminants(max: i64) -> Vec<i64> {
    (5..=max)
        .filter(|d| d % 4 == 0 || d % 4 == 1)
        .filter(|&d| {
            let s = (d as f64).sqrt() as i64;
            (s.saturating_sub(1)..=s + 1).all(|r| r * r != d)
        })
        .collect()
}
