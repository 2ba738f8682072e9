//! Exact computation of domination, exponential domination and porous
//! exponential domination numbers on small graphs, with an exact LP layer
//! for the fractional porous parameter and tools for a family of subcubic
//! trees.
//!
//! ```
//! use expodom::graph::Graph;
//! use expodom::lp::fractional_porous_number;
//! use expodom::arith::rational;
//!
//! let p10 = Graph::path(10);
//! assert_eq!(fractional_porous_number(&p10), rational(2, 1));
//! ```

pub mod arith;
pub mod family;
pub mod graph;
pub mod harness;
pub mod lp;
pub mod par;
pub mod solve;
pub mod weight;
