use rayon::prelude::*;

use super::ratfn::RationalFn;
use super::text;
use super::ExprError;

/// Result of row reduction over the rational-function field.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Reduced rows, same order as the input.
    pub rows: Vec<Vec<RationalFn>>,
    /// Pivot column of each row, `None` for rows that were never pivots.
    pub pivot_of_row: Vec<Option<usize>>,
    /// `rows[i] = sum_j transform[i][j] * input[j]`.
    pub transform: Vec<Vec<RationalFn>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivot_of_row.iter().filter(|p| p.is_some()).count()
    }

    /// Rows that were not used as pivots; after elimination over the first
    /// `k` columns these have zeros there.
    pub fn free_rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_of_row
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_none())
            .map(|(i, _)| i)
    }
}

/// Pivot candidate order: lowest total degree of the numerator, then row index.
fn choose_pivot(rows: &[Vec<RationalFn>], used: &[bool], col: usize) -> Option<usize> {
    rows.iter()
        .enumerate()
        .filter(|(i, r)| !used[*i] && !r[col].is_zero())
        .min_by_key(|(i, r)| (r[col].num().total_degree(), *i))
        .map(|(i, _)| i)
}

/// Row-reduce `matrix`, pivoting only in the first `pivot_cols` columns.
///
/// With `jordan` the pivot column is cleared in every other row (reduced
/// echelon form); otherwise only in rows not yet used as pivots.
pub fn echelon(
    matrix: &[Vec<RationalFn>],
    pivot_cols: usize,
    jordan: bool,
) -> Result<Echelon, ExprError> {
    let nrows = matrix.len();
    let ncols = matrix.first().map(|r| r.len()).unwrap_or(0);
    if matrix.iter().any(|r| r.len() != ncols) || pivot_cols > ncols {
        return Err(ExprError::DimensionMismatch);
    }
    let mut rows = matrix.to_vec();
    let mut transform: Vec<Vec<RationalFn>> = (0..nrows)
        .map(|i| {
            (0..nrows)
                .map(|j| if i == j { RationalFn::one() } else { RationalFn::zero() })
                .collect()
        })
        .collect();
    let mut used = vec![false; nrows];
    let mut pivot_of_row = vec![None; nrows];

    for col in 0..pivot_cols {
        let Some(piv) = choose_pivot(&rows, &used, col) else {
            continue;
        };
        used[piv] = true;
        pivot_of_row[piv] = Some(col);

        let inv = rows[piv][col].inv()?;
        rows[piv] = rows[piv].iter().map(|e| e * &inv).collect();
        transform[piv] = transform[piv].iter().map(|e| e * &inv).collect();

        let prow = rows[piv].clone();
        let ptr = transform[piv].clone();
        let targets: Vec<usize> = (0..nrows)
            .filter(|&i| i != piv && (jordan || !used[i]) && !rows[i][col].is_zero())
            .collect();
        let updated: Vec<(usize, Vec<RationalFn>, Vec<RationalFn>)> = targets
            .par_iter()
            .map(|&i| {
                let f = rows[i][col].clone();
                let r = rows[i]
                    .iter()
                    .zip(prow.iter())
                    .map(|(a, b)| if b.is_zero() { a.clone() } else { a - &(&f * b) })
                    .collect();
                let t = transform[i]
                    .iter()
                    .zip(ptr.iter())
                    .map(|(a, b)| if b.is_zero() { a.clone() } else { a - &(&f * b) })
                    .collect();
                (i, r, t)
            })
            .collect();
        for (i, r, t) in updated {
            rows[i] = r;
            transform[i] = t;
        }
    }

    Ok(Echelon {
        rows,
        pivot_of_row,
        transform,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<RationalFn>),
    /// Fewer independent rows than unknowns.
    Underdetermined {
        rank: usize,
        reduced: Vec<(Vec<RationalFn>, RationalFn)>,
    },
}

/// Solve `rows` = `(coefficients, rhs)` by Gauss–Jordan elimination.
pub fn solve(rows: &[(Vec<RationalFn>, RationalFn)]) -> Result<Solution, ExprError> {
    let n = rows.first().map(|r| r.0.len()).unwrap_or(0);
    if rows.iter().any(|r| r.0.len() != n) {
        return Err(ExprError::DimensionMismatch);
    }
    let aug: Vec<Vec<RationalFn>> = rows
        .iter()
        .map(|(c, b)| {
            let mut r = c.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let ech = echelon(&aug, n, true)?;
    for i in ech.free_rows() {
        let r = &ech.rows[i];
        if !r[n].is_zero() {
            let shown: Vec<String> = r.iter().map(text::ratfn_to_string).collect();
            return Err(ExprError::Inconsistent {
                row: format!("[{}]", shown.join(", ")),
            });
        }
    }
    let rank = ech.rank();
    if rank < n {
        let reduced = ech
            .rows
            .iter()
            .filter(|r| r.iter().any(|e| !e.is_zero()))
            .map(|r| (r[..n].to_vec(), r[n].clone()))
            .collect();
        return Ok(Solution::Underdetermined { rank, reduced });
    }
    let mut x = vec![RationalFn::zero(); n];
    for (i, p) in ech.pivot_of_row.iter().enumerate() {
        if let Some(c) = p {
            x[*c] = ech.rows[i][n].clone();
        }
    }
    Ok(Solution::Unique(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{Poly, Var};

    fn rf(p: Poly) -> RationalFn {
        RationalFn::from_poly(p)
    }

    #[test]
    fn identity_system() {
        let rows = vec![
            (vec![RationalFn::one(), RationalFn::zero()], RationalFn::one()),
            (vec![RationalFn::zero(), RationalFn::one()], RationalFn::var(Var::P)),
        ];
        assert_eq!(
            solve(&rows).unwrap(),
            Solution::Unique(vec![RationalFn::one(), RationalFn::var(Var::P)])
        );
    }

    #[test]
    fn sum_and_difference() {
        let a = rf(Poly::var(Var::E));
        let b = rf(Poly::var(Var::Alpha));
        let rows = vec![
            (vec![RationalFn::one(), RationalFn::one()], a.clone()),
            (vec![RationalFn::one(), RationalFn::int(-1)], b.clone()),
        ];
        let Solution::Unique(x) = solve(&rows).unwrap() else {
            panic!("expected unique solution")
        };
        assert_eq!(x[0], (&a + &b).scale(&crate::expr::GaussRat::from_ratio(1, 2)));
        assert_eq!(x[1], (&a - &b).scale(&crate::expr::GaussRat::from_ratio(1, 2)));
    }

    #[test]
    fn inconsistent_reported() {
        let rows = vec![
            (vec![RationalFn::one()], RationalFn::one()),
            (vec![RationalFn::one()], RationalFn::int(2)),
        ];
        assert!(matches!(solve(&rows), Err(ExprError::Inconsistent { .. })));
    }

    #[test]
    fn rank_deficient() {
        let rows = vec![(vec![RationalFn::one(), RationalFn::one()], RationalFn::one())];
        assert!(matches!(
            solve(&rows).unwrap(),
            Solution::Underdetermined { rank: 1, .. }
        ));
    }
}
