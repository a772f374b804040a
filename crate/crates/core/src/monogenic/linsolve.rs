//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::ga::Rational;

/// Solution set of `A c = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    /// A particular solution with every free unknown set to zero.
    pub particular: Vec<Rational>,
    /// Dimension of the solution space of the homogeneous system.
    pub nullity: usize,
}

/// Reduced row echelon solve. Returns `None` when the system is
/// inconsistent.
pub fn solve(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>, unknowns: usize) -> Option<LinearSolution> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = Rational::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        rhs[r] = rhs[r].clone() * inv;
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in col..unknowns {
                let d = f.clone() * rows[r][j].clone();
                if !d.is_zero() {
                    rows[i][j] = rows[i][j].clone() - d;
                }
            }
            rhs[i] = rhs[i].clone() - f * rhs[r].clone();
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut particular = vec![Rational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        particular[col] = rhs[i].clone();
    }
    Some(LinearSolution {
        particular,
        nullity: unknowns - pivots.len(),
    })
}
