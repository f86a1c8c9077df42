//! Dense exact simplex over the rationals.
//!
//! Only small programs show up here (a handful of variables, a few dozen
//! constraints), so a textbook tableau with Bland's rule is enough and
//! guarantees termination without any tolerance.

use num_traits::{Signed, Zero};

use crate::rational::{dot, RatVector, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: RatVector },
    Unbounded,
}

/// Maximizes `objective · x` subject to `rows[k] · x <= rhs[k]` with `x` free.
///
/// `start` must be a feasible point; it seeds the basis so no phase one is
/// needed.
pub fn maximize(
    objective: &[Rational],
    rows: &[RatVector],
    rhs: &[Rational],
    start: &[Rational],
) -> LpOutcome {
    let nvars = objective.len();
    let m = rows.len();
    // Columns: u (nvars), w (nvars), slacks (m); x = start + u - w.
    let ncols = 2 * nvars + m;
    let mut tab: Vec<RatVector> = Vec::with_capacity(m);
    let mut b: RatVector = Vec::with_capacity(m);
    for (k, row) in rows.iter().enumerate() {
        let slack_rhs = &rhs[k] - dot(row, start);
        debug_assert!(!slack_rhs.is_negative(), "start point is infeasible");
        let mut t = vec![Rational::zero(); ncols];
        for (j, a) in row.iter().enumerate() {
            t[j] = a.clone();
            t[nvars + j] = -a;
        }
        t[2 * nvars + k] = Rational::from_integer(1.into());
        tab.push(t);
        b.push(slack_rhs);
    }
    let mut cost = vec![Rational::zero(); ncols];
    for (j, c) in objective.iter().enumerate() {
        cost[j] = c.clone();
        cost[nvars + j] = -c;
    }
    let mut basis: Vec<usize> = (0..m).map(|k| 2 * nvars + k).collect();

    loop {
        // Reduced costs r_j = c_j - c_B · column_j.
        let entering = (0..ncols).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut r = cost[j].clone();
            for (i, &bi) in basis.iter().enumerate() {
                if !cost[bi].is_zero() && !tab[i][j].is_zero() {
                    r -= &cost[bi] * &tab[i][j];
                }
            }
            r.is_positive()
        });
        let Some(col) = entering else { break };

        // Ratio test, ties broken by smallest basic index (Bland).
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if tab[i][col].is_positive() {
                let ratio = &b[i] / &tab[i][col];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            return LpOutcome::Unbounded;
        };

        let pivot = tab[row][col].clone();
        for v in tab[row].iter_mut() {
            *v /= &pivot;
        }
        b[row] /= &pivot;
        let pivot_row = tab[row].clone();
        let pivot_b = b[row].clone();
        for i in 0..m {
            if i == row || tab[i][col].is_zero() {
                continue;
            }
            let factor = tab[i][col].clone();
            for (v, p) in tab[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            b[i] -= &factor * &pivot_b;
        }
        basis[row] = col;
    }

    let mut point: RatVector = start.to_vec();
    for (i, &bi) in basis.iter().enumerate() {
        if bi < nvars {
            point[bi] += &b[i];
        } else if bi < 2 * nvars {
            point[bi - nvars] -= &b[i];
        }
    }
    let value = dot(objective, &point);
    LpOutcome::Optimal { value, point }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn maximizes_over_a_triangle() {
        // x >= 0, y >= 0, x + y <= 1; maximize x + 2y -> 2 at (0, 1).
        let rows = vec![
            vec![int(-1), int(0)],
            vec![int(0), int(-1)],
            vec![int(1), int(1)],
        ];
        let rhs = vec![int(0), int(0), int(1)];
        let out = maximize(&[int(1), int(2)], &rows, &rhs, &[rat(1, 4), rat(1, 4)]);
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: int(2),
                point: vec![int(0), int(1)]
            }
        );
    }

    #[test]
    fn detects_unbounded_direction() {
        let rows = vec![vec![int(-1)]];
        let out = maximize(&[int(1)], &rows, &[int(0)], &[int(3)]);
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn handles_free_variables_on_negative_side() {
        // -3 <= x <= -1, minimize x (maximize -x) -> 3.
        let rows = vec![vec![int(1)], vec![int(-1)]];
        let rhs = vec![int(-1), int(3)];
        let out = maximize(&[int(-1)], &rows, &rhs, &[int(-2)]);
        match out {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, int(3));
                assert_eq!(point, vec![int(-3)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
