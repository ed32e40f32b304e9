//! Exact small linear programs in three free variables.
//!
//! `maximize c·x subject to a_i·x <= b_i` is solved through its dual,
//! `minimize b·y subject to Σ y_i a_i = c, y >= 0`, a standard-form problem
//! with three equality rows. Two-phase tableau simplex with Bland's rule, so
//! heavily degenerate inputs (every edge of a regular polygon touching the
//! inscribed circle) terminate. The optimal dual basis names three tight
//! primal constraints and the primal point is read off the simplex
//! multipliers.

const PIVOT_EPS: f64 = 1e-12;
const COST_EPS: f64 = 1e-12;
const FEAS_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: [f64; 3],
    pub objective: f64,
    /// Positive dual multipliers `(constraint index, y_i)`. They satisfy
    /// `Σ y_i a_i = c` and `Σ y_i b_i = objective`.
    pub multipliers: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Unbounded,
    Infeasible,
}

struct Tableau {
    rows: [Vec<f64>; 3],
    basis: [usize; 3],
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.rows[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for k in 0..3 {
            if k == r {
                continue;
            }
            let f = self.rows[k][j];
            if f != 0.0 {
                for (v, pv) in self.rows[k].iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        self.basis[r] = j;
    }

    /// Runs simplex iterations minimizing `cost` over columns `< allowed`.
    /// Returns false when the objective is unbounded below.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let d = cost[j] - (0..3).map(|r| cost[self.basis[r]] * self.rows[r][j]).sum::<f64>();
                d < -COST_EPS
            });
            let Some(j) = entering else { return true };

            let mut leave: Option<(usize, f64)> = None;
            for r in 0..3 {
                let a = self.rows[r][j];
                if a > PIVOT_EPS {
                    let ratio = self.rhs(r) / a;
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((br, bratio)) => {
                            if ratio < bratio - 1e-15
                                || (ratio <= bratio + 1e-15 && self.basis[r] < self.basis[br])
                            {
                                Some((r, ratio))
                            } else {
                                Some((br, bratio))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, j);
        }
    }
}

/// Maximize `c·x` subject to `rows[i]·x <= rhs[i]`.
pub fn maximize(c: [f64; 3], rows: &[[f64; 3]], rhs: &[f64]) -> LpOutcome {
    assert_eq!(rows.len(), rhs.len());
    let m = rows.len();
    let ncols = m + 3;
    let sign: [f64; 3] = c.map(|v| if v < 0.0 { -1.0 } else { 1.0 });

    let mut t = Tableau {
        rows: std::array::from_fn(|k| {
            let mut row = vec![0.0; ncols + 1];
            for (i, a) in rows.iter().enumerate() {
                row[i] = sign[k] * a[k];
            }
            row[m + k] = 1.0;
            row[ncols] = sign[k] * c[k];
            row
        }),
        basis: [m, m + 1, m + 2],
        ncols,
    };

    let mut cost = vec![0.0; ncols];
    cost[m..].fill(1.0);
    t.optimize(&cost, m);
    let infeasibility: f64 = (0..3).filter(|&r| t.basis[r] >= m).map(|r| t.rhs(r)).sum();
    if infeasibility > FEAS_EPS {
        // The dual is infeasible; every caller passes a feasible primal, so
        // the primal objective is unbounded.
        return LpOutcome::Unbounded;
    }

    for r in 0..3 {
        if t.basis[r] >= m {
            let col = (0..m)
                .filter(|j| !t.basis.contains(j))
                .max_by(|&a, &b| t.rows[r][a].abs().total_cmp(&t.rows[r][b].abs()));
            if let Some(j) = col {
                if t.rows[r][j].abs() > 1e-9 {
                    t.pivot(r, j);
                }
            }
        }
    }

    cost[..m].copy_from_slice(rhs);
    cost[m..].fill(0.0);
    if !t.optimize(&cost, m) {
        return LpOutcome::Infeasible;
    }

    let mut x = [0.0; 3];
    for (k, xk) in x.iter_mut().enumerate() {
        let pi: f64 = (0..3).map(|r| cost[t.basis[r]] * t.rows[r][m + k]).sum();
        *xk = sign[k] * pi;
    }
    let objective = c[0] * x[0] + c[1] * x[1] + c[2] * x[2];
    let mut multipliers: Vec<(usize, f64)> = (0..3)
        .filter(|&r| t.basis[r] < m && t.rhs(r) > 0.0)
        .map(|r| (t.basis[r], t.rhs(r)))
        .collect();
    multipliers.sort_by_key(|&(i, _)| i);
    LpOutcome::Optimal(LpSolution {
        x,
        objective,
        multipliers,
    })
}
