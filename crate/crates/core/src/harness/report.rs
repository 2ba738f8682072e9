use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub graph6: String,
    pub expected: String,
    pub observed: String,
}

impl Violation {
    pub fn new(graph6: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>) -> Self {
        Violation {
            graph6: graph6.into(),
            expected: expected.into(),
            observed: observed.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: Value,
    pub checked: usize,
    pub violations: Vec<Violation>,
    pub ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Zeroes the wall time so identical runs serialize identically.
    pub fn deterministic(mut self) -> Self {
        self.ms = 0;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Chain,
    Theorem2,
    Corollary1,
    Theorem3,
    Theorem4,
    Theorem5,
    Corollary2,
    Lemma1,
    Lemma2,
    Theorem1Equiv,
    EnumCount,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Chain,
        Suite::Theorem2,
        Suite::Corollary1,
        Suite::Theorem3,
        Suite::Theorem4,
        Suite::Theorem5,
        Suite::Corollary2,
        Suite::Lemma1,
        Suite::Lemma2,
        Suite::Theorem1Equiv,
        Suite::EnumCount,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Chain => "chain",
            Suite::Theorem2 => "theorem2",
            Suite::Corollary1 => "corollary1",
            Suite::Theorem3 => "theorem3",
            Suite::Theorem4 => "theorem4",
            Suite::Theorem5 => "theorem5",
            Suite::Corollary2 => "corollary2",
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Theorem1Equiv => "theorem1equiv",
            Suite::EnumCount => "enumcount",
        }
    }

    /// Default order limit: larger for suites that only solve LPs.
    pub fn default_n_max(self) -> usize {
        match self {
            Suite::Theorem2 | Suite::Theorem5 | Suite::Corollary2 | Suite::Corollary1 | Suite::Theorem4 => 12,
            Suite::Theorem1Equiv => 9,
            Suite::Lemma1 => 8,
            Suite::Chain | Suite::Theorem3 | Suite::Lemma2 | Suite::EnumCount => 10,
        }
    }

    /// Whether cycles join the trees in the corpus.
    pub fn uses_cycles(self) -> bool {
        matches!(self, Suite::Chain | Suite::Theorem5 | Suite::Corollary2)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, UnknownSuite> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .map(|c| c.to_ascii_lowercase())
            .collect();
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == key)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}
