//! Two-phase primal simplex over exact rationals with Bland's rule.

use num_traits::{Signed, Zero};

use super::{LpModel, LpSolution, LpStatus, RowSense, Sense};
use crate::arith::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Original,
    Slack,
    Artificial,
}

struct Tableau {
    /// `rows[r]` holds the coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    kinds: Vec<Column>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.width()]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let p = self.rows[pr][pc].clone();
        for v in self.rows[pr].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        let pivot_row = self.rows[pr].clone();
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == pr || row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[pr] = pc;
    }

    /// Reduced costs `c_j - c_B B⁻¹ A_j` and the current objective value.
    fn reduced_costs(&self, cost: &[Rational]) -> (Vec<Rational>, Rational) {
        let mut z: Vec<Rational> = cost.to_vec();
        let mut value = Rational::zero();
        for (r, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for (zj, a) in z.iter_mut().zip(row) {
                if !a.is_zero() {
                    *zj -= cb * a;
                }
            }
            value += cb * self.rhs(r);
        }
        (z, value)
    }

    /// Runs simplex iterations for `cost`. Returns `false` if unbounded.
    fn optimize(&mut self, cost: &[Rational], allow_artificial: bool) -> bool {
        loop {
            let (z, _) = self.reduced_costs(cost);
            let entering = (0..self.width())
                .filter(|&j| allow_artificial || self.kinds[j] != Column::Artificial)
                .find(|&j| z[j].is_negative());
            let Some(e) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return false,
            }
        }
    }
}

pub(super) fn solve(model: &LpModel) -> LpSolution {
    let n = model.objective.len();
    let m = model.rows.len();
    let maximize = model.sense == Sense::Maximize;

    // Normalize to nonnegative right-hand sides.
    let mut flipped = vec![false; m];
    let mut senses = model.row_sense.clone();
    for i in 0..m {
        if model.rhs[i].is_negative() {
            flipped[i] = true;
            senses[i] = match senses[i] {
                RowSense::Ge => RowSense::Le,
                RowSense::Le => RowSense::Ge,
                RowSense::Eq => RowSense::Eq,
            };
        }
    }

    let mut kinds = vec![Column::Original; n];
    let mut slack_of = vec![None; m];
    for (i, s) in senses.iter().enumerate() {
        if *s != RowSense::Eq {
            slack_of[i] = Some(kinds.len());
            kinds.push(Column::Slack);
        }
    }
    let mut artificial_of = vec![None; m];
    for (i, s) in senses.iter().enumerate() {
        if *s != RowSense::Le {
            artificial_of[i] = Some(kinds.len());
            kinds.push(Column::Artificial);
        }
    }
    let width = kinds.len();

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut initial = Vec::with_capacity(m);
    for i in 0..m {
        let sign = if flipped[i] { -Rational::from_integer(1.into()) } else { Rational::from_integer(1.into()) };
        let mut row = vec![Rational::zero(); width + 1];
        for j in 0..n {
            row[j] = &model.rows[i][j] * &sign;
        }
        row[width] = &model.rhs[i] * &sign;
        if let Some(s) = slack_of[i] {
            row[s] = match senses[i] {
                RowSense::Le => Rational::from_integer(1.into()),
                _ => Rational::from_integer((-1).into()),
            };
        }
        if let Some(a) = artificial_of[i] {
            row[a] = Rational::from_integer(1.into());
        }
        let start = artificial_of[i].or(slack_of[i]).expect("every row has a basic column");
        basis.push(start);
        initial.push(start);
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, kinds };

    // Phase 1: minimize the sum of artificials.
    let phase1: Vec<Rational> = t
        .kinds
        .iter()
        .map(|k| match k {
            Column::Artificial => Rational::from_integer(1.into()),
            _ => Rational::zero(),
        })
        .collect();
    t.optimize(&phase1, true);
    let (_, infeasibility) = t.reduced_costs(&phase1);
    if infeasibility.is_positive() {
        return LpSolution::without_optimum(LpStatus::Infeasible);
    }
    // Drive zero-level artificials out of the basis where possible.
    for r in 0..m {
        if t.kinds[t.basis[r]] == Column::Artificial {
            if let Some(j) = (0..width).find(|&j| t.kinds[j] != Column::Artificial && !t.rows[r][j].is_zero()) {
                t.pivot(r, j);
            }
        }
    }

    // Phase 2.
    let mut cost = vec![Rational::zero(); width];
    for j in 0..n {
        cost[j] = if maximize {
            -&model.objective[j]
        } else {
            model.objective[j].clone()
        };
    }
    if !t.optimize(&cost, false) {
        return LpSolution::without_optimum(LpStatus::Unbounded);
    }

    let mut primal = vec![Rational::zero(); n];
    for r in 0..m {
        if t.basis[r] < n {
            primal[t.basis[r]] = t.rhs(r).clone();
        }
    }
    // y = c_B B⁻¹; the columns that started as the identity now hold B⁻¹.
    let mut dual = vec![Rational::zero(); m];
    for i in 0..m {
        let col = initial[i];
        let mut y = Rational::zero();
        for r in 0..m {
            let cb = &cost[t.basis[r]];
            if !cb.is_zero() && !t.rows[r][col].is_zero() {
                y += cb * &t.rows[r][col];
            }
        }
        if flipped[i] {
            y = -y;
        }
        if maximize {
            y = -y;
        }
        dual[i] = y;
    }
    let objective = primal
        .iter()
        .zip(&model.objective)
        .fold(Rational::zero(), |acc, (x, c)| acc + x * c);
    LpSolution {
        status: LpStatus::Optimal,
        primal,
        dual,
        objective,
    }
}
