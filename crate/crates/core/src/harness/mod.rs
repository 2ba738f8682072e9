//! Reference fixtures, exhaustive verification suites over small subcubic
//! trees and cycles, and conjecture scans, all reporting JSON-ready results.

pub mod fixtures;
mod report;
mod suites;

pub use fixtures::{fixture_f1, fixture_f1_middles, fixture_f2, full_binary_tree, FixtureId};
pub use report::{Report, Suite, UnknownSuite, Violation};
pub use suites::{
    check_graph, conjecture1_ratio, conjecture2_equality, conjecture_finding, integrality_gap,
    lemma1_equality_violations, recheck, run_suite, search_counterexample, theorem4_hits, trees_up_to,
    HarnessError, SuiteParams,
};
