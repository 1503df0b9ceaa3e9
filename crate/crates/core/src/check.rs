//! Verdicts for exhaustive identity checks over basis tuples.

use std::fmt;

use serde::Serialize;

use crate::group::GroupElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Nothing failed, but some tuple needed data outside the tabulated
    /// domain, or no tuple could be checked at all.
    Inconclusive,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    /// Conjunction: any failure wins, then any inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    /// First failing basis tuple in iteration order.
    pub witness: Option<Vec<GroupElement>>,
    pub checked: usize,
    /// Tuples whose intermediate degrees leave the padded window.
    pub skipped: usize,
    /// Tuples that touched a coefficient outside a tabulated domain.
    pub unavailable: usize,
}

#[derive(Debug, Default)]
pub(crate) struct Tally {
    witness: Option<Vec<GroupElement>>,
    checked: usize,
    skipped: usize,
    unavailable: usize,
}

pub(crate) enum Outcome {
    Holds,
    Fails,
    Skipped,
    Unavailable,
}

impl Tally {
    pub fn record(&mut self, outcome: Outcome, tuple: impl FnOnce() -> Vec<GroupElement>) {
        match outcome {
            Outcome::Holds => self.checked += 1,
            Outcome::Fails => {
                self.checked += 1;
                if self.witness.is_none() {
                    self.witness = Some(tuple());
                }
            }
            Outcome::Skipped => self.skipped += 1,
            Outcome::Unavailable => self.unavailable += 1,
        }
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub fn finish(self) -> CheckReport {
        let verdict = if self.witness.is_some() {
            Verdict::Fail
        } else if self.unavailable > 0 || self.checked == 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        CheckReport {
            verdict,
            witness: self.witness,
            checked: self.checked,
            skipped: self.skipped,
            unavailable: self.unavailable,
        }
    }
}
