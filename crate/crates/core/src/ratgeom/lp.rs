//! A small exact linear-programming kernel: dense two-phase simplex with
//! Bland's rule over arbitrary-precision rationals. Problem sizes in this
//! crate are tiny (a handful of variables, a few dozen constraints), so a
//! plain tableau is entirely adequate.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{Rat, RatVec};

/// Outcome of an optimization run.
#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal { value: Rat, point: RatVec },
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

/// Linear program over free (sign-unconstrained) variables.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    nvars: usize,
    constraints: Vec<(RatVec, Cmp, Rat)>,
}

impl LinearProgram {
    pub fn new(nvars: usize) -> Self {
        Self {
            nvars,
            constraints: Vec::new(),
        }
    }

    pub fn constrain(&mut self, coeffs: RatVec, cmp: Cmp, rhs: Rat) {
        assert_eq!(coeffs.len(), self.nvars);
        self.constraints.push((coeffs, cmp, rhs));
    }

    /// Solve for the given objective.
    pub fn solve(&self, objective: &[Rat], sense: Sense) -> Result<LpOutcome> {
        assert_eq!(objective.len(), self.nvars);
        // Split free variables x = u - v with u, v >= 0, then add slacks.
        let n = self.nvars;
        let m = self.constraints.len();
        let mut ncols = 2 * n;
        let mut rows: Vec<RatVec> = Vec::with_capacity(m);
        let mut rhs: Vec<Rat> = Vec::with_capacity(m);
        let mut slack_cols: Vec<Option<usize>> = Vec::with_capacity(m);
        for (coeffs, cmp, b) in &self.constraints {
            let mut row = vec![Rat::zero(); 2 * n];
            for (j, c) in coeffs.iter().enumerate() {
                row[j] = c.clone();
                row[n + j] = -c.clone();
            }
            match cmp {
                Cmp::Le => {
                    slack_cols.push(Some(ncols));
                    ncols += 1;
                }
                Cmp::Ge => {
                    slack_cols.push(Some(ncols));
                    ncols += 1;
                }
                Cmp::Eq => slack_cols.push(None),
            }
            rows.push(row);
            rhs.push(b.clone());
        }
        // Assemble equality-form tableau data.
        let mut a: Vec<RatVec> = Vec::with_capacity(m);
        for (i, mut row) in rows.into_iter().enumerate() {
            row.resize(ncols, Rat::zero());
            if let Some(col) = slack_cols[i] {
                let (_, cmp, _) = &self.constraints[i];
                row[col] = match cmp {
                    Cmp::Le => Rat::from_integer(1.into()),
                    Cmp::Ge => Rat::from_integer((-1).into()),
                    Cmp::Eq => unreachable!(),
                };
            }
            a.push(row);
        }
        // Normalize to nonnegative rhs.
        for i in 0..m {
            if rhs[i].is_negative() {
                rhs[i] = -rhs[i].clone();
                for x in a[i].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        let mut c = vec![Rat::zero(); ncols];
        for j in 0..n {
            let sign = match sense {
                Sense::Minimize => objective[j].clone(),
                Sense::Maximize => -objective[j].clone(),
            };
            c[j] = sign.clone();
            c[n + j] = -sign;
        }
        let out = simplex_min_eq(&a, &rhs, &c)?;
        Ok(match out {
            RawOutcome::Infeasible => LpOutcome::Infeasible,
            RawOutcome::Unbounded => LpOutcome::Unbounded,
            RawOutcome::Optimal { value, point } => {
                let x: RatVec = (0..n).map(|j| &point[j] - &point[n + j]).collect();
                let value = match sense {
                    Sense::Minimize => value,
                    Sense::Maximize => -value,
                };
                LpOutcome::Optimal { value, point: x }
            }
        })
    }

    /// Any feasible point, or `None`.
    pub fn feasible_point(&self) -> Result<Option<RatVec>> {
        let zero = vec![Rat::zero(); self.nvars];
        Ok(match self.solve(&zero, Sense::Minimize)? {
            LpOutcome::Optimal { point, .. } => Some(point),
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
        })
    }
}

enum RawOutcome {
    Optimal { value: Rat, point: RatVec },
    Infeasible,
    Unbounded,
}

/// Two-phase simplex for `min c·x, A x = b, x >= 0, b >= 0`.
fn simplex_min_eq(a: &[RatVec], b: &[Rat], c: &[Rat]) -> Result<RawOutcome> {
    let m = a.len();
    let n = if m == 0 { c.len() } else { a[0].len() };
    // Tableau with artificial variables appended: columns [0..n) original,
    // [n..n+m) artificial, last column rhs.
    let width = n + m + 1;
    let mut t: Vec<RatVec> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row = Vec::with_capacity(width);
        row.extend(a[i].iter().cloned());
        for j in 0..m {
            row.push(Rat::from_integer(i64::from(i == j).into()));
        }
        row.push(b[i].clone());
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1 objective row: minimize sum of artificials.
    let mut obj = vec![Rat::zero(); width];
    for j in n..n + m {
        obj[j] = Rat::from_integer(1.into());
    }
    // Make reduced costs consistent with the starting basis.
    for i in 0..m {
        for j in 0..width {
            let d = t[i][j].clone();
            obj[j] -= d;
        }
    }
    run_simplex(&mut t, &mut obj, &mut basis, n + m)?;
    let phase1 = -obj[width - 1].clone();
    if !phase1.is_zero() {
        return Ok(RawOutcome::Infeasible);
    }
    // Drive any artificial variables out of the basis.
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut obj, &mut basis, i, j);
            }
            // If the whole row is zero the constraint is redundant; the
            // artificial stays basic at value zero, which is harmless.
        }
    }

    // Phase 2: real objective, artificial columns frozen.
    let mut obj2 = vec![Rat::zero(); width];
    obj2[..n].clone_from_slice(&c[..n]);
    for i in 0..m {
        if basis[i] < n && !obj2[basis[i]].is_zero() {
            let factor = obj2[basis[i]].clone();
            for j in 0..width {
                let d = &t[i][j] * &factor;
                obj2[j] -= d;
            }
        }
    }
    if run_simplex(&mut t, &mut obj2, &mut basis, n)? == StopReason::Unbounded {
        return Ok(RawOutcome::Unbounded);
    }
    let mut point = vec![Rat::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            point[basis[i]] = t[i][width - 1].clone();
        }
    }
    Ok(RawOutcome::Optimal {
        value: -obj2[width - 1].clone(),
        point,
    })
}

#[derive(PartialEq, Eq)]
enum StopReason {
    Optimal,
    Unbounded,
}

fn run_simplex(
    t: &mut [RatVec],
    obj: &mut RatVec,
    basis: &mut [usize],
    ncols_active: usize,
) -> Result<StopReason> {
    let m = t.len();
    let width = obj.len();
    let rhs_col = width - 1;
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        if iterations > 10_000 {
            return Err(Error::InvalidInput(
                "simplex iteration limit exceeded".into(),
            ));
        }
        // Bland: entering column = smallest index with negative reduced cost.
        let Some(enter) = (0..ncols_active).find(|&j| obj[j].is_negative()) else {
            return Ok(StopReason::Optimal);
        };
        // Ratio test, Bland tie-break on basis index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][rhs_col] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => &ratio < b || (&ratio == b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            return Ok(StopReason::Unbounded);
        };
        pivot(t, obj, basis, leave, enter);
    }
}

fn pivot(t: &mut [RatVec], obj: &mut RatVec, basis: &mut [usize], row: usize, col: usize) {
    let width = obj.len();
    let inv = t[row][col].clone();
    for j in 0..width {
        t[row][j] = &t[row][j] / &inv;
    }
    for i in 0..t.len() {
        if i != row && !t[i][col].is_zero() {
            let factor = t[i][col].clone();
            for j in 0..width {
                let d = &t[row][j] * &factor;
                t[i][j] -= d;
            }
        }
    }
    if !obj[col].is_zero() {
        let factor = obj[col].clone();
        for j in 0..width {
            let d = &t[row][j] * &factor;
            obj[j] -= d;
        }
    }
    basis[row] = col;
}
