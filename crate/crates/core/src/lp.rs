//! Exact rational linear programming: dense two-phase simplex with Bland's
//! rule, so termination is guaranteed and every answer is exact. Problem
//! sizes here are tiny (dimension <= ambient + 1, a dozen constraints), so
//! a dense tableau is the right tool.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ratmat::{dot, QVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: QVec,
    pub rel: Rel,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: QVec, rel: Rel, rhs: BigRational) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: BigRational, point: QVec },
}

struct Tableau {
    ncols: usize,
    rows: Vec<QVec>,
    rhs: QVec,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].clone().recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.ncols {
                let d = &self.rows[r][j] * &f;
                self.rows[i][j] -= d;
            }
            let d = &self.rhs[r] * &f;
            self.rhs[i] -= d;
        }
        self.basis[r] = c;
    }

    /// Maximize c over the current feasible dictionary; Bland's rule.
    /// Returns false on unboundedness.
    fn simplex(&mut self, cost: &[BigRational]) -> bool {
        loop {
            let y: QVec = self.basis.iter().map(|&b| cost[b].clone()).collect();
            let mut entering = None;
            for j in 0..self.ncols {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (i, yi) in y.iter().enumerate() {
                    if !yi.is_zero() {
                        reduced -= yi * &self.rows[i][j];
                    }
                }
                if reduced.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][c];
                    let better = match &leaving {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leaving else {
                return false;
            };
            self.pivot(r, c);
        }
    }
}

/// Maximize `objective . x` over free variables `x` subject to the
/// constraints. Exact; no feasibility or boundedness assumptions.
pub fn maximize(objective: &[BigRational], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    // Free variables split as x = u - w with u, w >= 0.
    let n_struct = 2 * n;
    let m = constraints.len();
    let n_slack = constraints.iter().filter(|c| c.rel != Rel::Eq).count();
    let ncols = n_struct + n_slack;

    let mut rows: Vec<QVec> = Vec::with_capacity(m);
    let mut rhs: QVec = Vec::with_capacity(m);
    let mut slack_col_of_row: Vec<Option<usize>> = Vec::with_capacity(m);
    let mut next_slack = n_struct;
    for cons in constraints {
        assert_eq!(cons.coeffs.len(), n, "constraint arity");
        let mut row = vec![BigRational::zero(); ncols];
        for (j, a) in cons.coeffs.iter().enumerate() {
            row[j] = a.clone();
            row[n + j] = -a.clone();
        }
        let slack = match cons.rel {
            Rel::Le => {
                row[next_slack] = BigRational::one();
                Some(next_slack)
            }
            Rel::Ge => {
                row[next_slack] = -BigRational::one();
                Some(next_slack)
            }
            Rel::Eq => None,
        };
        if slack.is_some() {
            next_slack += 1;
        }
        let mut b = cons.rhs.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            b = -b;
        }
        rows.push(row);
        rhs.push(b);
        slack_col_of_row.push(slack);
    }

    // Phase 1: artificial variables wherever the slack cannot start basic.
    let mut basis = Vec::with_capacity(m);
    let mut artificial_cols = Vec::new();
    let mut total_cols = ncols;
    for i in 0..m {
        let usable = slack_col_of_row[i].filter(|&c| rows[i][c].is_one());
        match usable {
            Some(c) => basis.push(c),
            None => {
                for row in rows.iter_mut() {
                    row.push(BigRational::zero());
                }
                rows[i][total_cols] = BigRational::one();
                basis.push(total_cols);
                artificial_cols.push(total_cols);
                total_cols += 1;
            }
        }
    }

    let mut tab = Tableau {
        ncols: total_cols,
        rows,
        rhs,
        basis,
    };

    if !artificial_cols.is_empty() {
        let mut phase1 = vec![BigRational::zero(); total_cols];
        for &c in &artificial_cols {
            phase1[c] = -BigRational::one();
        }
        let bounded = tab.simplex(&phase1);
        debug_assert!(bounded, "phase-1 objective is bounded");
        let value: BigRational = tab
            .basis
            .iter()
            .zip(&tab.rhs)
            .filter(|(b, _)| artificial_cols.contains(b))
            .map(|(_, v)| v.clone())
            .sum();
        if !value.is_zero() {
            return LpOutcome::Infeasible;
        }
        // Pivot lingering zero-valued artificials out of the basis.
        let mut drop_rows = Vec::new();
        for i in 0..tab.rows.len() {
            if artificial_cols.contains(&tab.basis[i]) {
                match (0..ncols).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => drop_rows.push(i),
                }
            }
        }
        for &i in drop_rows.iter().rev() {
            tab.rows.remove(i);
            tab.rhs.remove(i);
            tab.basis.remove(i);
        }
        for row in tab.rows.iter_mut() {
            row.truncate(ncols);
        }
        tab.ncols = ncols;
    }

    let mut cost = vec![BigRational::zero(); tab.ncols];
    for (j, c) in objective.iter().enumerate() {
        cost[j] = c.clone();
        cost[n + j] = -c.clone();
    }
    if !tab.simplex(&cost) {
        return LpOutcome::Unbounded;
    }

    let mut point = vec![BigRational::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            point[b] += &tab.rhs[i];
        } else if b < 2 * n {
            point[b - n] -= &tab.rhs[i];
        }
    }
    let value = dot(objective, &point);
    LpOutcome::Optimal { value, point }
}

/// A witness satisfying every `coeffs . x > rhs` strictly, if one exists.
/// Solves max t subject to coeffs.x - t >= rhs, t <= 1.
pub fn strict_feasible_point(rows: &[(QVec, BigRational)]) -> Option<QVec> {
    let n = rows.first().map(|(c, _)| c.len()).unwrap_or(0);
    let mut constraints = Vec::with_capacity(rows.len() + 1);
    for (coeffs, rhs) in rows {
        let mut c = coeffs.clone();
        c.push(-BigRational::one());
        constraints.push(Constraint::new(c, Rel::Ge, rhs.clone()));
    }
    let mut top = vec![BigRational::zero(); n + 1];
    top[n] = BigRational::one();
    constraints.push(Constraint::new(top.clone(), Rel::Le, BigRational::one()));
    match maximize(&top, &constraints) {
        LpOutcome::Optimal { value, mut point } if value.is_positive() => {
            point.truncate(n);
            Some(point)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qv(v: &[i64]) -> QVec {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn simple_box_maximum() {
        // max x + y s.t. x <= 3, y <= 4, x + y <= 5
        let cons = vec![
            Constraint::new(qv(&[1, 0]), Rel::Le, q(3)),
            Constraint::new(qv(&[0, 1]), Rel::Le, q(4)),
            Constraint::new(qv(&[1, 1]), Rel::Le, q(5)),
        ];
        match maximize(&qv(&[1, 1]), &cons) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_detected() {
        let cons = vec![
            Constraint::new(qv(&[1]), Rel::Ge, q(2)),
            Constraint::new(qv(&[1]), Rel::Le, q(1)),
        ];
        assert_eq!(maximize(&qv(&[1]), &cons), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let cons = vec![Constraint::new(qv(&[1]), Rel::Ge, q(0))];
        assert_eq!(maximize(&qv(&[1]), &cons), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_constraints() {
        // max y s.t. x = 2, x + y <= 3 -> y = 1
        let cons = vec![
            Constraint::new(qv(&[1, 0]), Rel::Eq, q(2)),
            Constraint::new(qv(&[1, 1]), Rel::Le, q(3)),
        ];
        match maximize(&qv(&[0, 1]), &cons) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(1));
                assert_eq!(point[0], q(2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn strict_feasibility_witness() {
        // Open first quadrant intersected with x + y < 1: nonempty.
        let rows = vec![
            (qv(&[1, 0]), q(0)),
            (qv(&[0, 1]), q(0)),
            (qv(&[-1, -1]), q(-1)),
        ];
        let x = strict_feasible_point(&rows).unwrap();
        assert!(x[0].is_positive() && x[1].is_positive());
        assert!((&x[0] + &x[1]) < q(1));
        // x > 0 and x < 0: empty.
        let bad = vec![(qv(&[1]), q(0)), (qv(&[-1]), q(0))];
        assert!(strict_feasible_point(&bad).is_none());
    }

    #[test]
    fn negative_rhs_rows() {
        // max -x s.t. x >= -5 -> value 5 at x = -5.
        let cons = vec![Constraint::new(qv(&[1]), Rel::Ge, q(-5))];
        match maximize(&qv(&[-1]), &cons) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(5));
                assert_eq!(point[0], q(-5));
            }
            other => panic!("{other:?}"),
        }
    }
}
