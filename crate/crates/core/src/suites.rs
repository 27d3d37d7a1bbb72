//! The benchmark workloads: 3^5, log_3 243, and quine, twine and thrine
//! synthesis, each with a correctness verdict.

use std::fmt;
use std::str::FromStr;

use crate::goal::run;
use crate::scheme::{quineso, thrineso, twineso};
use crate::stdlib::arith::{expo, logo, num, term_to_u64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Exp,
    Log,
    Quines,
    Twines,
    Thrines,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Exp, Suite::Log, Suite::Quines, Suite::Twines, Suite::Thrines];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Exp => "exp",
            Suite::Log => "log",
            Suite::Quines => "quines",
            Suite::Twines => "twines",
            Suite::Thrines => "thrines",
        }
    }

    /// Number of results the suite asks for.
    pub fn target(self) -> usize {
        match self {
            Suite::Exp | Suite::Log => 1,
            Suite::Quines => 100,
            Suite::Twines => 15,
            Suite::Thrines => 2,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}` (expected exp, log, quines, twines or thrines)")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// Results produced.
    pub count: usize,
    /// Whether every result checked out and the count matched the target.
    pub verified: bool,
}

/// All results of `expo(3, 5, r)`, decoded.
pub fn three_to_the_fifth() -> Vec<Option<u64>> {
    run(|r| expo(num(3), num(5), r)).map(|r| term_to_u64(&r)).collect()
}

/// All results of `logo(243, 3, q, 0)`, decoded.
pub fn log_three_of_243() -> Vec<Option<u64>> {
    run(|q| logo(num(243), num(3), q, num(0)))
        .map(|q| term_to_u64(&q))
        .collect()
}

/// Runs one suite to completion. Deep searches may need
/// [`crate::batch::with_search_stack`].
pub fn run_suite(suite: Suite) -> Outcome {
    let exact = |results: Vec<Option<u64>>, expected: u64| Outcome {
        count: results.len(),
        verified: results == [Some(expected)],
    };
    let target = suite.target();
    match suite {
        Suite::Exp => exact(three_to_the_fifth(), 243),
        Suite::Log => exact(log_three_of_243(), 5),
        Suite::Quines => {
            let r = quineso(target, None);
            Outcome {
                count: r.found.len(),
                verified: r.found.len() == target && r.all_verified(),
            }
        }
        Suite::Twines => {
            let r = twineso(target, None);
            Outcome {
                count: r.found.len(),
                verified: r.found.len() == target && r.all_verified(),
            }
        }
        Suite::Thrines => {
            let r = thrineso(target, None);
            Outcome {
                count: r.found.len(),
                verified: r.found.len() == target && r.all_verified(),
            }
        }
    }
}
