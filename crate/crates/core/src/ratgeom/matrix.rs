//! Dense exact linear algebra over the rationals and the integers:
//! determinants, solves, rank, column-style Hermite reduction and
//! saturated lattice bases. Everything here is desk scale (dimension at
//! most 5) so plain Gaussian/Euclidean elimination is the right tool.

use num_traits::Zero;

use crate::rat::{LatticeVec, Rat, RatVec};

/// Determinant of a square integer matrix (rows), exact via the
/// fraction-free Bareiss scheme in `i128`.
pub fn int_det(rows: &[LatticeVec]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0);
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Determinant of a square rational matrix (rows).
pub fn rat_det(rows: &[RatVec]) -> Rat {
    let n = rows.len();
    if n == 0 {
        return Rat::from_integer(1.into());
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut m = rows.to_vec();
    let mut det = Rat::from_integer(1.into());
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            m.swap(col, p);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].clone();
        for i in col + 1..n {
            if !m[i][col].is_zero() {
                let factor = &m[i][col] / &inv;
                for j in col..n {
                    let t = &m[col][j] * &factor;
                    m[i][j] -= t;
                }
            }
        }
    }
    det
}

/// Rank of a rational matrix (rows need not be square).
pub fn rat_rank(rows: &[RatVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = rows.to_vec();
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let pivot = (rank..m.len()).find(|&i| !m[i][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let factor = &m[i][col] / &inv;
                for j in col..ncols {
                    let t = &m[rank][j] * &factor;
                    m[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix.
pub fn int_rank(rows: &[LatticeVec]) -> usize {
    let rows: Vec<RatVec> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect();
    rat_rank(&rows)
}

/// Solve the square system `A x = b` exactly; `None` if `A` is singular.
pub fn rat_solve(a: &[RatVec], b: &[Rat]) -> Option<RatVec> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    let mut m: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] / &inv;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..=n {
                    let t = &m[col][j] * &factor;
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Solve the (possibly overdetermined, consistent) system
/// `sum_j c_j basis_j = v` for rational coordinates `c`. Returns `None`
/// when `v` is not in the span.
pub fn coords_in_span(basis: &[RatVec], v: &[Rat]) -> Option<RatVec> {
    let k = basis.len();
    let d = v.len();
    debug_assert!(basis.iter().all(|b| b.len() == d));
    // Gaussian elimination on the d x (k+1) augmented system.
    let mut m: Vec<RatVec> = (0..d)
        .map(|row| {
            let mut r: RatVec = basis.iter().map(|b| b[row].clone()).collect();
            r.push(v[row].clone());
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..d).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for j in col..=k {
            m[row][j] = &m[row][j] / &inv;
        }
        for i in 0..d {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..=k {
                    let t = &m[row][j] * &factor;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == d {
            break;
        }
    }
    // Consistency: zero rows must have zero rhs.
    for i in row..d {
        if !m[i][k].is_zero() {
            return None;
        }
    }
    let mut c = vec![Rat::zero(); k];
    for (r, col) in pivots {
        c[col] = m[r][k].clone();
    }
    // Verify (guards against free columns making the solution non-unique
    // in a way that matters: any valid representation is acceptable).
    for row_i in 0..d {
        let mut acc = Rat::zero();
        for (j, b) in basis.iter().enumerate() {
            acc += &c[j] * &b[row_i];
        }
        if acc != v[row_i] {
            return None;
        }
    }
    Some(c)
}

/// Column-style Hermite reduction: returns a unimodular `U` (as columns)
/// with `A U` lower-staircase, together with the set of columns of `U`
/// spanning `ker(A) ∩ Z^d`. The kernel lattice obtained this way is
/// saturated.
pub fn int_kernel_basis(a: &[LatticeVec]) -> Vec<LatticeVec> {
    let k = a.len();
    if k == 0 {
        return Vec::new();
    }
    let d = a[0].len();
    // Work on columns: cols[j] is the j-th column of the evolving A,
    // u[j] the j-th column of U.
    let mut cols: Vec<Vec<i128>> = (0..d)
        .map(|j| a.iter().map(|row| row[j] as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..d)
        .map(|j| (0..d).map(|i| i128::from(i == j)).collect())
        .collect();
    let mut pivot_col = 0;
    for row in 0..k {
        if pivot_col == d {
            break;
        }
        // Euclidean elimination across columns pivot_col..d on this row.
        loop {
            // Find the column with the smallest nonzero |entry| in `row`.
            let mut best: Option<usize> = None;
            for j in pivot_col..d {
                if cols[j][row] != 0
                    && best.is_none_or(|b| cols[j][row].abs() < cols[b][row].abs())
                {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            cols.swap(pivot_col, b);
            u.swap(pivot_col, b);
            let pivot_val = cols[pivot_col][row];
            let mut done = true;
            for j in pivot_col + 1..d {
                let q = cols[j][row].div_euclid(pivot_val);
                if q != 0 {
                    for i in 0..k {
                        let t = q * cols[pivot_col][i];
                        cols[j][i] -= t;
                    }
                    for i in 0..d {
                        let t = q * u[pivot_col][i];
                        u[j][i] -= t;
                    }
                }
                if cols[j][row] != 0 {
                    done = false;
                }
            }
            if done {
                pivot_col += 1;
                break;
            }
        }
    }
    // Columns past `pivot_col` are zero in A·U: kernel basis.
    (pivot_col..d)
        .map(|j| {
            u[j].iter()
                .map(|&x| i64::try_from(x).expect("kernel basis entry fits i64"))
                .collect()
        })
        .collect()
}

/// Basis of the saturated lattice `span(gens) ∩ Z^d`. The result has
/// `rank(gens)` vectors.
pub fn saturated_span_basis(gens: &[LatticeVec]) -> Vec<LatticeVec> {
    assert!(!gens.is_empty());
    let kernel = int_kernel_basis(gens);
    if kernel.is_empty() {
        // Full span: the standard basis works.
        let d = gens[0].len();
        return (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    int_kernel_basis(&kernel)
}

/// Express an integer vector in a lattice basis; `None` if it is not in
/// the generated lattice.
pub fn int_coords_in_basis(basis: &[LatticeVec], v: &LatticeVec) -> Option<LatticeVec> {
    let vr: RatVec = v.iter().map(|&x| Rat::from_integer(x.into())).collect();
    let br: Vec<RatVec> = basis
        .iter()
        .map(|b| b.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect();
    let c = coords_in_span(&br, &vr)?;
    let mut out = Vec::with_capacity(c.len());
    for x in c {
        if !x.is_integer() {
            return None;
        }
        out.push(i64::try_from(x.to_integer()).ok()?);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    #[test]
    fn dets() {
        assert_eq!(int_det(&[vec![2, 0], vec![0, 3]]), 6);
        assert_eq!(int_det(&[vec![0, 1], vec![2, 1]]), -2);
        assert_eq!(int_det(&[vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(
            int_det(&[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]),
            1
        );
    }

    #[test]
    fn solve() {
        let a = vec![vec![rat_i(2), rat_i(1)], vec![rat_i(1), rat_i(3)]];
        let b = vec![rat_i(5), rat_i(10)];
        let x = rat_solve(&a, &b).unwrap();
        assert_eq!(x, vec![rat_i(1), rat_i(3)]);
        let singular = vec![vec![rat_i(1), rat_i(2)], vec![rat_i(2), rat_i(4)]];
        assert!(rat_solve(&singular, &b).is_none());
    }

    #[test]
    fn kernel_and_saturation() {
        // ker of (2,1) in Z^2 is generated by (1,-2) (up to sign).
        let k = int_kernel_basis(&[vec![2, 1]]);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(2 * v[0] + v[1], 0);
        assert_eq!(crate::rat::gcd_vec(v), 1);

        // Saturated lattice of the span of (2,4): must be generated by (1,2).
        let b = saturated_span_basis(&[vec![2, 4]]);
        assert_eq!(b.len(), 1);
        let g = &b[0];
        assert_eq!((g[0].abs(), g[1].abs()), (1, 2));

        // Span of (2,1) in Z^2 is saturated, basis (2,1).
        let b = saturated_span_basis(&[vec![2, 1]]);
        assert_eq!(b.len(), 1);
        assert_eq!(int_coords_in_basis(&b, &vec![2, 1]).unwrap().len(), 1);
        assert_eq!(int_coords_in_basis(&b, &vec![2, 1]).unwrap()[0].abs(), 1);
    }

    #[test]
    fn rank() {
        assert_eq!(int_rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
        assert_eq!(int_rank(&[vec![1, 2], vec![3, 4]]), 2);
    }

    #[test]
    fn coords() {
        let basis = vec![vec![rat_i(1), rat_i(0), rat_i(1)], vec![rat_i(0), rat_i(1), rat_i(1)]];
        let v = vec![rat_i(2), rat_i(3), rat_i(5)];
        let c = coords_in_span(&basis, &v).unwrap();
        assert_eq!(c, vec![rat_i(2), rat_i(3)]);
        let w = vec![rat_i(2), rat_i(3), rat_i(4)];
        assert!(coords_in_span(&basis, &w).is_none());
    }
}
