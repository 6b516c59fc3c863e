//! Dense two-phase primal simplex with Bland's rule.
//!
//! The programs solved here are small (tens of rows and columns), so the
//! whole tableau is kept in memory and reduced costs are recomputed from
//! scratch at every iteration.

use thiserror::Error;

/// Constraint residual allowed on an optimal point.
pub const FEASIBILITY_TOL: f64 = 1e-8;
/// Smallest pivot magnitude accepted by the ratio test.
pub const PIVOT_TOL: f64 = 1e-10;
/// Reduced-cost threshold for entering a column.
pub const OPTIMALITY_TOL: f64 = 1e-9;

/// Entries this small after a pivot are flushed to zero.
const FLUSH_TOL: f64 = 1e-14;
/// Ratio-test ties within this relative margin fall back to Bland's lowest index.
const RATIO_TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("dimension mismatch: expected {expected} coefficients, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("non-finite coefficient in linear program")]
    NonFinite,
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarBound {
    NonNegative,
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// `maximize c.z` subject to equality rows, `<=` rows and per-variable bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem {
    objective: Vec<f64>,
    bounds: Vec<VarBound>,
    eq_rows: Vec<(Vec<f64>, f64)>,
    le_rows: Vec<(Vec<f64>, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Set only when `status` is `Optimal`.
    pub objective_value: Option<f64>,
    /// Set only when `status` is `Optimal`.
    pub primal: Option<Vec<f64>>,
}

impl LpSolution {
    fn without_point(status: LpStatus) -> Self {
        Self {
            status,
            objective_value: None,
            primal: None,
        }
    }
}

impl LpProblem {
    /// New problem maximizing `objective`; every variable starts nonnegative.
    pub fn maximize(objective: Vec<f64>) -> Result<Self, LpError> {
        if objective.iter().any(|c| !c.is_finite()) {
            return Err(LpError::NonFinite);
        }
        let n = objective.len();
        Ok(Self {
            objective,
            bounds: vec![VarBound::NonNegative; n],
            eq_rows: Vec::new(),
            le_rows: Vec::new(),
        })
    }

    /// Same as [`maximize`](Self::maximize) with the objective negated.
    pub fn minimize(objective: Vec<f64>) -> Result<Self, LpError> {
        Self::maximize(objective.into_iter().map(|c| -c).collect())
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn set_free(&mut self, var: usize) {
        self.bounds[var] = VarBound::Free;
    }

    pub fn add_eq(&mut self, row: Vec<f64>, rhs: f64) -> Result<(), LpError> {
        self.check_row(&row, rhs)?;
        self.eq_rows.push((row, rhs));
        Ok(())
    }

    pub fn add_le(&mut self, row: Vec<f64>, rhs: f64) -> Result<(), LpError> {
        self.check_row(&row, rhs)?;
        self.le_rows.push((row, rhs));
        Ok(())
    }

    fn check_row(&self, row: &[f64], rhs: f64) -> Result<(), LpError> {
        if row.len() != self.num_vars() {
            return Err(LpError::Dimension {
                expected: self.num_vars(),
                found: row.len(),
            });
        }
        if !rhs.is_finite() || row.iter().any(|v| !v.is_finite()) {
            return Err(LpError::NonFinite);
        }
        Ok(())
    }

    /// Worst violation of the original constraints at `z`.
    pub fn residual(&self, z: &[f64]) -> f64 {
        let dot = |row: &[f64]| row.iter().zip(z).map(|(a, b)| a * b).sum::<f64>();
        let eq = self.eq_rows.iter().map(|(row, f)| (dot(row) - f).abs());
        let le = self.le_rows.iter().map(|(row, f)| (dot(row) - f).max(0.0));
        let bounds = z
            .iter()
            .zip(&self.bounds)
            .filter(|(_, b)| **b == VarBound::NonNegative)
            .map(|(v, _)| (-v).max(0.0));
        eq.chain(le).chain(bounds).fold(0.0, f64::max)
    }
}

/// Column layout of the standard form `E z = f, z >= 0`.
struct StandardForm {
    /// For each user variable: (positive column, negative column if free).
    columns: Vec<(usize, Option<usize>)>,
    cost: Vec<f64>,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
}

impl StandardForm {
    fn build(prob: &LpProblem) -> Self {
        let mut columns = Vec::with_capacity(prob.num_vars());
        let mut next = 0;
        for bound in &prob.bounds {
            match bound {
                VarBound::NonNegative => {
                    columns.push((next, None));
                    next += 1;
                }
                VarBound::Free => {
                    columns.push((next, Some(next + 1)));
                    next += 2;
                }
            }
        }
        let n_split = next;
        let n_total = n_split + prob.le_rows.len();

        let mut cost = vec![0.0; n_total];
        for (&c, &(pos, neg)) in prob.objective.iter().zip(&columns) {
            cost[pos] = c;
            if let Some(neg) = neg {
                cost[neg] = -c;
            }
        }

        let expand = |row: &[f64]| {
            let mut out = vec![0.0; n_total];
            for (&v, &(pos, neg)) in row.iter().zip(&columns) {
                out[pos] = v;
                if let Some(neg) = neg {
                    out[neg] = -v;
                }
            }
            out
        };

        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (row, f) in &prob.eq_rows {
            rows.push(expand(row));
            rhs.push(*f);
        }
        for (k, (row, f)) in prob.le_rows.iter().enumerate() {
            let mut r = expand(row);
            r[n_split + k] = 1.0;
            rows.push(r);
            rhs.push(*f);
        }
        for (row, f) in rows.iter_mut().zip(rhs.iter_mut()) {
            if *f < 0.0 {
                row.iter_mut().for_each(|v| *v = -*v);
                *f = -*f;
            }
        }
        Self {
            columns,
            cost,
            rows,
            rhs,
        }
    }

    fn num_cols(&self) -> usize {
        self.cost.len()
    }
}

enum Phase {
    Optimal,
    Unbounded,
}

struct Tableau {
    /// `rows x (cols + 1)`, right-hand side last.
    data: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.data[r][self.cols]
    }

    fn pivot(&mut self, r: usize, e: usize) -> Result<(), LpError> {
        let p = self.data[r][e];
        for v in self.data[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.data[r].clone();
        for (k, row) in self.data.iter_mut().enumerate() {
            if k == r {
                continue;
            }
            let factor = row[e];
            if factor == 0.0 {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= factor * pv;
                if v.abs() < FLUSH_TOL {
                    *v = 0.0;
                }
            }
            row[e] = 0.0;
        }
        self.basis[r] = e;
        if self.data[r].iter().any(|v| !v.is_finite()) {
            return Err(LpError::NumericalBreakdown(
                "non-finite tableau entry after pivot".into(),
            ));
        }
        Ok(())
    }

    /// Primal simplex maximizing `cost . z`. Only columns below `enter_limit`
    /// may enter the basis.
    fn optimize(&mut self, cost: &[f64], enter_limit: usize) -> Result<Phase, LpError> {
        let max_iter = 200 * (self.data.len() + self.cols).max(10);
        let mut in_basis = vec![false; self.cols];
        for &b in &self.basis {
            in_basis[b] = true;
        }
        for _ in 0..max_iter {
            // Bland: lowest-index column with a positive reduced cost.
            let entering = (0..enter_limit).find(|&j| {
                !in_basis[j] && {
                    let reduced = cost[j]
                        - self
                            .data
                            .iter()
                            .zip(&self.basis)
                            .map(|(row, &b)| cost[b] * row[j])
                            .sum::<f64>();
                    reduced > OPTIMALITY_TOL
                }
            });
            let Some(e) = entering else {
                return Ok(Phase::Optimal);
            };

            // Bland: among minimum ratios, the row whose basic variable has
            // the lowest index.
            let mut leaving: Option<(usize, f64)> = None;
            for (r, row) in self.data.iter().enumerate() {
                let coef = row[e];
                if coef <= PIVOT_TOL {
                    continue;
                }
                let ratio = row[self.cols] / coef;
                leaving = match leaving {
                    None => Some((r, ratio)),
                    Some((br, best)) => {
                        let tie = RATIO_TIE_TOL * (1.0 + best.abs());
                        if ratio < best - tie
                            || (ratio <= best + tie && self.basis[r] < self.basis[br])
                        {
                            Some((r, ratio))
                        } else {
                            Some((br, best))
                        }
                    }
                };
            }
            let Some((r, _)) = leaving else {
                let largest = self.data.iter().map(|row| row[e]).fold(0.0, f64::max);
                if largest > PIVOT_TOL * 1e-3 {
                    return Err(LpError::NumericalBreakdown(format!(
                        "column {e} has only sub-threshold pivots (largest {largest:e})"
                    )));
                }
                return Ok(Phase::Unbounded);
            };
            in_basis[self.basis[r]] = false;
            in_basis[e] = true;
            self.pivot(r, e)?;
        }
        Err(LpError::NumericalBreakdown(format!(
            "no convergence after {max_iter} pivots"
        )))
    }
}

/// Solves the program. Infeasible and unbounded programs are statuses, not
/// errors; only numerical trouble is an error.
pub fn solve(prob: &LpProblem) -> Result<LpSolution, LpError> {
    let sf = StandardForm::build(prob);
    let n = sf.num_cols();
    let m = sf.rows.len();

    // Phase 1: one artificial per row, maximize -(sum of artificials).
    let cols = n + m;
    let data = sf
        .rows
        .iter()
        .zip(&sf.rhs)
        .enumerate()
        .map(|(r, (row, &f))| {
            let mut t = row.clone();
            t.resize(cols, 0.0);
            t[n + r] = 1.0;
            t.push(f);
            t
        })
        .collect();
    let mut tab = Tableau {
        data,
        basis: (n..n + m).collect(),
        cols,
    };
    let mut phase1_cost = vec![0.0; cols];
    phase1_cost[n..].iter_mut().for_each(|c| *c = -1.0);
    if let Phase::Unbounded = tab.optimize(&phase1_cost, cols)? {
        return Err(LpError::NumericalBreakdown(
            "phase 1 reported an unbounded ray".into(),
        ));
    }
    let infeasibility: f64 = (0..m)
        .filter(|&r| tab.basis[r] >= n)
        .map(|r| tab.rhs(r))
        .sum();
    if infeasibility > FEASIBILITY_TOL {
        return Ok(LpSolution::without_point(LpStatus::Infeasible));
    }

    // Pivot remaining (zero-level) artificials out; rows where that is
    // impossible are linearly dependent and get dropped.
    let mut r = 0;
    while r < tab.data.len() {
        if tab.basis[r] < n {
            r += 1;
            continue;
        }
        tab.data[r][cols] = 0.0;
        let replacement = (0..n)
            .filter(|j| !tab.basis.contains(j))
            .find(|&j| tab.data[r][j].abs() > PIVOT_TOL);
        match replacement {
            Some(j) => {
                tab.pivot(r, j)?;
                r += 1;
            }
            None => {
                tab.data.remove(r);
                tab.basis.remove(r);
            }
        }
    }
    for row in tab.data.iter_mut() {
        let f = row[cols];
        row.truncate(n);
        row.push(f);
    }
    tab.cols = n;

    // Phase 2.
    if let Phase::Unbounded = tab.optimize(&sf.cost, n)? {
        return Ok(LpSolution::without_point(LpStatus::Unbounded));
    }

    let mut z = vec![0.0; n];
    for (r, &b) in tab.basis.iter().enumerate() {
        z[b] = tab.rhs(r);
    }
    let primal: Vec<f64> = sf
        .columns
        .iter()
        .map(|&(pos, neg)| z[pos] - neg.map_or(0.0, |k| z[k]))
        .collect();
    let scale = sf.rhs.iter().fold(1.0_f64, |acc, f| acc.max(f.abs()));
    let residual = prob.residual(&primal);
    if residual > FEASIBILITY_TOL * scale {
        return Err(LpError::NumericalBreakdown(format!(
            "optimal point violates constraints by {residual:e}"
        )));
    }
    let objective_value = prob.objective.iter().zip(&primal).map(|(c, x)| c * x).sum();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        objective_value: Some(objective_value),
        primal: Some(primal),
    })
}
