//! The porous exponential domination linear program, its exact solution and
//! the closed-form certificates and lower bounds that go with it.

mod bounds;
mod simplex;

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{coeff, is_dyadic, rational, serialize_rational, serialize_rationals, Rational};
use crate::graph::{degree_partition, distance_matrix, Graph};

pub use bounds::{bound_diameter, bound_order_degree, bound_subcubic_order, max_form_bound};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("model dimensions disagree: {0}")]
    Dimension(String),
    #[error("input is not a subcubic tree")]
    NotSubcubicTree,
    #[error("degree bound {0} unsupported (need Δ >= 3)")]
    UnsupportedDegree(usize),
    #[error("diameter bound needs d >= 1")]
    DiameterTooSmall,
    #[error("dual construction needs a minimization with only >= rows")]
    UnsupportedDual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowSense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

/// `optimize objective·x` subject to `rows[i]·x (sense) rhs[i]` and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub rows: Vec<Vec<Rational>>,
    pub row_sense: Vec<RowSense>,
    pub rhs: Vec<Rational>,
}

impl LpModel {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let m = self.rows.len();
        if self.rhs.len() != m || self.row_sense.len() != m {
            return Err(LpError::Dimension(format!(
                "{m} rows, {} right-hand sides, {} senses",
                self.rhs.len(),
                self.row_sense.len()
            )));
        }
        if let Some((i, row)) = self.rows.iter().enumerate().find(|(_, r)| r.len() != self.num_vars()) {
            return Err(LpError::Dimension(format!(
                "row {i} has {} entries, objective has {}",
                row.len(),
                self.num_vars()
            )));
        }
        Ok(())
    }

    /// The LP dual of `min c·x, Ax >= b, x >= 0`: `max b·y, Aᵀy <= c, y >= 0`.
    pub fn dual(&self) -> Result<LpModel, LpError> {
        self.validate()?;
        if self.sense != Sense::Minimize || self.row_sense.iter().any(|s| *s != RowSense::Ge) {
            return Err(LpError::UnsupportedDual);
        }
        let n = self.num_vars();
        let rows = (0..n)
            .map(|j| self.rows.iter().map(|row| row[j].clone()).collect())
            .collect();
        Ok(LpModel {
            sense: Sense::Maximize,
            objective: self.rhs.clone(),
            rows,
            row_sense: vec![RowSense::Le; n],
            rhs: self.objective.clone(),
        })
    }

    fn row_value(&self, i: usize, x: &[Rational]) -> Rational {
        self.rows[i].iter().zip(x).fold(Rational::zero(), |acc, (a, v)| acc + a * v)
    }

    pub fn primal_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && (0..self.rows.len()).all(|i| {
                let lhs = self.row_value(i, x);
                match self.row_sense[i] {
                    RowSense::Ge => lhs >= self.rhs[i],
                    RowSense::Le => lhs <= self.rhs[i],
                    RowSense::Eq => lhs == self.rhs[i],
                }
            })
    }

    /// Sign constraints on `y` and `Aᵀy` against the objective, for either sense.
    pub fn dual_feasible(&self, y: &[Rational]) -> bool {
        if y.len() != self.rows.len() {
            return false;
        }
        let min = self.sense == Sense::Minimize;
        let signs_ok = y.iter().zip(&self.row_sense).all(|(v, s)| match (s, min) {
            (RowSense::Eq, _) => true,
            (RowSense::Ge, true) | (RowSense::Le, false) => !v.is_negative(),
            (RowSense::Le, true) | (RowSense::Ge, false) => !v.is_positive(),
        });
        signs_ok
            && (0..self.num_vars()).all(|j| {
                let col = self
                    .rows
                    .iter()
                    .zip(y)
                    .fold(Rational::zero(), |acc, (row, v)| acc + &row[j] * v);
                if min {
                    col <= self.objective[j]
                } else {
                    col >= self.objective[j]
                }
            })
    }

    pub fn dual_objective(&self, y: &[Rational]) -> Rational {
        y.iter().zip(&self.rhs).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// CPLEX-LP text for cross-checking with external solvers.
    pub fn to_cplex_lp(&self) -> String {
        let mut out = String::new();
        out.push_str(match self.sense {
            Sense::Minimize => "Minimize\n",
            Sense::Maximize => "Maximize\n",
        });
        out.push_str(" obj:");
        write_terms(&mut out, &self.objective);
        out.push_str("\nSubject To\n");
        for (i, row) in self.rows.iter().enumerate() {
            let _ = write!(out, " c{i}:");
            write_terms(&mut out, row);
            let op = match self.row_sense[i] {
                RowSense::Ge => ">=",
                RowSense::Le => "<=",
                RowSense::Eq => "=",
            };
            let _ = writeln!(out, " {op} {}", decimal(&self.rhs[i]));
        }
        out.push_str("Bounds\n");
        for j in 0..self.num_vars() {
            let _ = writeln!(out, " x{j} >= 0");
        }
        out.push_str("End\n");
        out
    }
}

fn write_terms(out: &mut String, coefs: &[Rational]) {
    let mut written = 0;
    for (j, c) in coefs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if written > 0 && written % 8 == 0 {
            out.push_str("\n   ");
        }
        match (written == 0, c.is_negative()) {
            (true, false) => {}
            (true, true) => out.push_str(" -"),
            (false, false) => out.push_str(" +"),
            (false, true) => out.push_str(" -"),
        }
        let abs = c.abs();
        if abs.is_one() {
            let _ = write!(out, " x{j}");
        } else {
            let _ = write!(out, " {} x{j}", decimal(&abs));
        }
        written += 1;
    }
    if written == 0 {
        out.push_str(" 0 x0");
    }
}

/// Exact decimal when the denominator is `2^a 5^b`, otherwise 17 significant digits.
fn decimal(r: &Rational) -> String {
    use num_traits::ToPrimitive;
    if r.is_integer() {
        return r.numer().to_string();
    }
    let mut den = r.denom().clone();
    let (two, five) = (num_bigint::BigInt::from(2), num_bigint::BigInt::from(5));
    let mut digits = 0usize;
    let mut scale = num_bigint::BigInt::one();
    while &den % &two == num_bigint::BigInt::zero() || &den % &five == num_bigint::BigInt::zero() {
        if &den % &two == num_bigint::BigInt::zero() {
            den /= &two;
        } else {
            den /= &five;
        }
        digits += 1;
        scale *= 10;
    }
    if den.is_one() {
        // r · 10^digits is an integer; `digits` over-counts at most, which only pads zeros
        let scaled = (r * Rational::from_integer(scale)).to_integer();
        let neg = scaled.is_negative();
        let s = scaled.abs().to_string();
        let s = format!("{:0>width$}", s, width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        let frac = frac.trim_end_matches('0');
        let body = if frac.is_empty() { int.to_string() } else { format!("{int}.{frac}") };
        return if neg { format!("-{body}") } else { body };
    }
    format!("{:.17e}", r.to_f64().unwrap_or(f64::NAN))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpSolution {
    pub status: LpStatus,
    #[serde(serialize_with = "serialize_rationals")]
    pub primal: Vec<Rational>,
    #[serde(serialize_with = "serialize_rationals")]
    pub dual: Vec<Rational>,
    #[serde(serialize_with = "serialize_rational")]
    pub objective: Rational,
}

impl LpSolution {
    fn without_optimum(status: LpStatus) -> Self {
        LpSolution {
            status,
            primal: Vec::new(),
            dual: Vec::new(),
            objective: Rational::zero(),
        }
    }

    /// Primal and dual feasibility plus equal objectives, recomputed from the
    /// model alone.
    pub fn certifies(&self, model: &LpModel) -> bool {
        self.status == LpStatus::Optimal
            && model.primal_feasible(&self.primal)
            && model.dual_feasible(&self.dual)
            && model.dual_objective(&self.dual) == self.objective
    }
}

/// One row per vertex `v`: `Σ_u (1/2)^(dist(u,v)-1) x(u) >= 1`, minimizing `Σ x(u)`.
pub fn build_porous_lp(g: &Graph) -> LpModel {
    let n = g.n();
    let dist = distance_matrix(g);
    let rows = (0..n)
        .map(|v| (0..n).map(|u| coeff(dist[u][v]).to_rational()).collect())
        .collect();
    LpModel {
        sense: Sense::Minimize,
        objective: vec![Rational::one(); n],
        rows,
        row_sense: vec![RowSense::Ge; n],
        rhs: vec![Rational::one(); n],
    }
}

pub fn solve_exact(model: &LpModel) -> Result<LpSolution, LpError> {
    model.validate()?;
    Ok(simplex::solve(model))
}

/// Solves the dual model on its own; returns `(dual solution, its dual)`.
/// A debugging cross-check of the values read off the primal basis.
pub fn solve_dual_separately(model: &LpModel) -> Result<LpSolution, LpError> {
    solve_exact(&model.dual()?)
}

pub fn solve_porous_lp(g: &Graph) -> LpSolution {
    solve_exact(&build_porous_lp(g)).expect("porous model is well formed")
}

/// γ*_{e,f}(G), the optimum of the porous LP.
pub fn fractional_porous_number(g: &Graph) -> Rational {
    let sol = solve_porous_lp(g);
    debug_assert_eq!(sol.status, LpStatus::Optimal);
    sol.objective
}

/// The explicit primal/dual pair for a subcubic tree: `1/3` on endvertices,
/// `1/6` on degree-2 vertices, `0` on degree-3 vertices, and `y = x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeCertificate {
    #[serde(serialize_with = "serialize_rationals")]
    pub primal: Vec<Rational>,
    #[serde(serialize_with = "serialize_rationals")]
    pub dual: Vec<Rational>,
    #[serde(serialize_with = "serialize_rational")]
    pub objective: Rational,
    pub primal_feasible: bool,
    pub dual_feasible: bool,
    /// Every primal constraint holds with equality.
    pub all_tight: bool,
}

pub fn canonical_tree_solution(t: &Graph) -> Result<TreeCertificate, LpError> {
    if !t.is_subcubic_tree() {
        return Err(LpError::NotSubcubicTree);
    }
    let primal: Vec<Rational> = if t.n() == 1 {
        vec![rational(1, 2)]
    } else {
        let parts = degree_partition(t).map_err(|_| LpError::NotSubcubicTree)?;
        (0..t.n())
            .map(|v| {
                if parts.ends.contains(v) {
                    rational(1, 3)
                } else if parts.twos.contains(v) {
                    rational(1, 6)
                } else {
                    Rational::zero()
                }
            })
            .collect()
    };
    let model = build_porous_lp(t);
    let dual = primal.clone();
    let all_tight = (0..t.n()).all(|v| model.row_value(v, &primal).is_one());
    Ok(TreeCertificate {
        objective: primal.iter().sum(),
        primal_feasible: model.primal_feasible(&primal),
        dual_feasible: model.dual_feasible(&dual),
        all_tight,
        primal,
        dual,
    })
}

/// Whether every constraint coefficient is dyadic, symmetric and in `[0, 2]`.
pub fn porous_model_is_well_shaped(model: &LpModel) -> bool {
    let n = model.num_vars();
    let two = rational(2, 1);
    model.rows.len() == n
        && (0..n).all(|i| {
            model.rows[i][i] == two
                && (0..n).all(|j| {
                    let a = &model.rows[i][j];
                    *a == model.rows[j][i] && !a.is_negative() && *a <= two && is_dyadic(a)
                })
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational(x, 1)).collect()
    }

    #[test]
    fn model_examples() {
        let m = build_porous_lp(&Graph::path(1));
        assert_eq!(m.rows, vec![ints(&[2])]);
        let m = build_porous_lp(&Graph::path(2));
        assert_eq!(m.rows, vec![ints(&[2, 1]), ints(&[1, 2])]);
        let m = build_porous_lp(&Graph::star(3));
        assert_eq!(m.rows[0], ints(&[2, 1, 1, 1]));
        assert!(porous_model_is_well_shaped(&m));
        let disconnected = build_porous_lp(&Graph::empty(2));
        assert_eq!(disconnected.rows, vec![ints(&[2, 0]), ints(&[0, 2])]);
    }

    #[test]
    fn solve_examples() {
        let s = solve_porous_lp(&Graph::path(1));
        assert_eq!(s.objective, rational(1, 2));
        assert_eq!(solve_porous_lp(&Graph::star(3)).objective, rational(1, 1));
        let c4 = build_porous_lp(&Graph::cycle(4));
        let s = solve_exact(&c4).unwrap();
        assert_eq!(s.objective, rational(8, 9));
        assert!(s.certifies(&c4));
    }

    #[test]
    fn c4_uniform_certificate() {
        // every row reads (2 + 1 + 1 + 1/2)·x, so x ≡ 2/9 is tight everywhere
        let m = build_porous_lp(&Graph::cycle(4));
        let x = vec![rational(2, 9); 4];
        assert!(m.primal_feasible(&x));
        assert!(m.dual_feasible(&x));
        assert_eq!(m.dual_objective(&x), rational(8, 9));
    }

    #[test]
    fn dimension_errors() {
        let mut m = build_porous_lp(&Graph::path(2));
        m.rows[1].pop();
        assert!(matches!(solve_exact(&m), Err(LpError::Dimension(_))));
        let mut m = build_porous_lp(&Graph::path(2));
        m.rhs.push(rational(1, 1));
        assert!(matches!(solve_exact(&m), Err(LpError::Dimension(_))));
    }

    #[test]
    fn general_models() {
        // max x + y, x + 2y <= 4, 3x + y <= 6  ->  x = 8/5, y = 6/5, value 14/5
        let m = LpModel {
            sense: Sense::Maximize,
            objective: ints(&[1, 1]),
            rows: vec![ints(&[1, 2]), ints(&[3, 1])],
            row_sense: vec![RowSense::Le, RowSense::Le],
            rhs: ints(&[4, 6]),
        };
        let s = solve_exact(&m).unwrap();
        assert_eq!(s.objective, rational(14, 5));
        assert_eq!(s.primal, vec![rational(8, 5), rational(6, 5)]);
        assert!(s.certifies(&m), "{s:?}");

        let infeasible = LpModel {
            sense: Sense::Minimize,
            objective: ints(&[1]),
            rows: vec![ints(&[1]), ints(&[1])],
            row_sense: vec![RowSense::Ge, RowSense::Le],
            rhs: ints(&[2, 1]),
        };
        assert_eq!(solve_exact(&infeasible).unwrap().status, LpStatus::Infeasible);

        let unbounded = LpModel {
            sense: Sense::Maximize,
            objective: ints(&[1]),
            rows: vec![ints(&[1])],
            row_sense: vec![RowSense::Ge],
            rhs: ints(&[1]),
        };
        assert_eq!(solve_exact(&unbounded).unwrap().status, LpStatus::Unbounded);

        // equality and negative right-hand side
        let m = LpModel {
            sense: Sense::Minimize,
            objective: ints(&[2, 3]),
            rows: vec![ints(&[1, 1]), ints(&[-1, 1])],
            row_sense: vec![RowSense::Eq, RowSense::Le],
            rhs: ints(&[3, -1]),
        };
        let s = solve_exact(&m).unwrap();
        assert_eq!(s.objective, rational(6, 1));
        assert!(s.certifies(&m), "{s:?}");
    }

    #[test]
    fn separate_dual_solve_matches() {
        for g in [Graph::cycle(5), Graph::path(6), Graph::star(3)] {
            let m = build_porous_lp(&g);
            let p = solve_exact(&m).unwrap();
            let d = solve_dual_separately(&m).unwrap();
            assert_eq!(p.objective, d.objective);
            assert!(d.certifies(&m.dual().unwrap()));
        }
    }

    #[test]
    fn tree_certificates() {
        let c = canonical_tree_solution(&Graph::star(3)).unwrap();
        assert_eq!(c.primal, vec![rational(0, 1), rational(1, 3), rational(1, 3), rational(1, 3)]);
        assert_eq!(c.objective, rational(1, 1));
        assert!(c.all_tight && c.primal_feasible && c.dual_feasible);
        let c = canonical_tree_solution(&Graph::path(2)).unwrap();
        assert_eq!(c.objective, rational(2, 3));
        let c = canonical_tree_solution(&Graph::path(4)).unwrap();
        assert_eq!(c.primal, vec![rational(1, 3), rational(1, 6), rational(1, 6), rational(1, 3)]);
        assert_eq!(c.objective, rational(1, 1));
        let c = canonical_tree_solution(&Graph::path(1)).unwrap();
        assert_eq!(c.objective, rational(1, 2));
        assert!(c.all_tight);
        assert_eq!(canonical_tree_solution(&Graph::cycle(4)), Err(LpError::NotSubcubicTree));
    }

    #[test]
    fn cplex_export() {
        let text = build_porous_lp(&Graph::path(3)).to_cplex_lp();
        assert!(text.starts_with("Minimize\n obj: x0 + x1 + x2\n"), "{text}");
        assert!(text.contains(" c0: 2 x0 + x1 + 0.5 x2 >= 1\n"), "{text}");
        assert!(text.ends_with("End\n"));
        assert_eq!(decimal(&rational(-3, 8)), "-0.375");
        assert_eq!(decimal(&rational(1, 1024)), "0.0009765625");
    }
}
