//! Dense exact linear algebra over [`Rational`]: reduced row echelon form,
//! affine solution sets, and an L1-minimising solver built on a two-phase
//! simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub(crate) type Matrix = Vec<Vec<Rational>>;

/// Reduces `rows` in place to RREF and returns the pivot columns.
/// Zero rows are dropped.
pub(crate) fn rref(rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v = &*v / &lead;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Solution set of `A x = b`: a particular solution and a nullspace basis.
#[derive(Debug, Clone)]
pub(crate) struct AffineSolution {
    pub particular: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

/// Solves the augmented system `[A | b]` (each row has `ncols + 1` entries).
/// Returns `None` when the system is inconsistent.
pub(crate) fn solve_augmented(augmented: &[Vec<Rational>], ncols: usize) -> Option<AffineSolution> {
    let mut rows: Matrix = augmented.to_vec();
    let pivots = rref(&mut rows);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut particular = vec![Rational::zero(); ncols];
    for (row, &c) in rows.iter().zip(&pivots) {
        particular[c] = row[ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let directions = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &c) in rows.iter().zip(&pivots) {
                v[c] = -row[f].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, directions })
}

/// Canonical form of the affine set `{x : A x = b}` given as augmented rows.
/// Two consistent systems define the same set iff their canonical forms agree.
pub(crate) fn canonical_affine(augmented: &[Vec<Rational>]) -> Matrix {
    let mut rows = augmented.to_vec();
    rref(&mut rows);
    rows
}

/// Minimises `Σ cost_j |x_j|` subject to `Σ_j columns[j] x_j = target`.
///
/// Returns the optimal `x` or `None` if the system is infeasible. Costs must
/// be positive.
pub(crate) fn min_weighted_l1(
    columns: &[Vec<Rational>],
    target: &[Rational],
    cost: &[Rational],
) -> Option<Vec<Rational>> {
    let m = target.len();
    let k = columns.len();
    // Variables: u_j (0..k), v_j (k..2k), artificials a_i (2k..2k+m).
    let nvars = 2 * k + m;
    let mut tableau: Matrix = Vec::with_capacity(m);
    for i in 0..m {
        let sign = if target[i].is_negative() { -Rational::one() } else { Rational::one() };
        let mut row = vec![Rational::zero(); nvars + 1];
        for j in 0..k {
            row[j] = &sign * &columns[j][i];
            row[k + j] = -&row[j];
        }
        row[2 * k + i] = Rational::one();
        row[nvars] = &sign * &target[i];
        tableau.push(row);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * k + i).collect();

    // Phase one: minimise the sum of artificials.
    let mut phase_one = vec![Rational::zero(); nvars];
    for a in 2 * k..nvars {
        phase_one[a] = Rational::one();
    }
    simplex(&mut tableau, &mut basis, &phase_one, nvars);
    let infeasibility: Rational =
        basis.iter().zip(&tableau).filter(|(&b, _)| b >= 2 * k).map(|(_, row)| row[nvars].clone()).sum();
    if !infeasibility.is_zero() {
        return None;
    }
    // Drive remaining (zero-valued) artificials out of the basis or drop redundant rows.
    let mut i = 0;
    while i < tableau.len() {
        if basis[i] >= 2 * k {
            if let Some(c) = (0..2 * k).find(|&c| !tableau[i][c].is_zero()) {
                pivot(&mut tableau, i, c);
                basis[i] = c;
            } else {
                tableau.remove(i);
                basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    for row in tableau.iter_mut() {
        row.drain(2 * k..nvars);
    }
    let nvars = 2 * k;

    let mut phase_two = vec![Rational::zero(); nvars];
    phase_two[..k].clone_from_slice(&cost[..k]);
    phase_two[k..].clone_from_slice(&cost[..k]);
    simplex(&mut tableau, &mut basis, &phase_two, nvars);

    let mut x = vec![Rational::zero(); k];
    for (row, &b) in tableau.iter().zip(&basis) {
        if b < k {
            x[b] += &row[nvars];
        } else {
            x[b - k] -= &row[nvars];
        }
    }
    Some(x)
}

fn pivot(tableau: &mut Matrix, r: usize, c: usize) {
    let lead = tableau[r][c].clone();
    for v in tableau[r].iter_mut() {
        *v = &*v / &lead;
    }
    let width = tableau[r].len();
    for i in 0..tableau.len() {
        if i != r && !tableau[i][c].is_zero() {
            let factor = tableau[i][c].clone();
            for j in 0..width {
                let delta = &factor * &tableau[r][j];
                tableau[i][j] -= delta;
            }
        }
    }
}

/// Minimises `cost · x` over the current tableau (rows already feasible).
fn simplex(tableau: &mut Matrix, basis: &mut [usize], cost: &[Rational], nvars: usize) {
    loop {
        // Reduced cost of column j: cost_j - Σ_i cost_{basis_i} tableau[i][j].
        let entering = (0..nvars).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut reduced = cost[j].clone();
            for (row, &b) in tableau.iter().zip(basis.iter()) {
                if !cost[b].is_zero() && !row[j].is_zero() {
                    reduced -= &cost[b] * &row[j];
                }
            }
            reduced.is_negative()
        });
        let Some(c) = entering else { return };
        // Ratio test with Bland's tie-break on the basic variable index.
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tableau.iter().enumerate() {
            if row[c].is_positive() {
                let ratio = &row[nvars] / &row[c];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // Unbounded; cannot happen with positive costs on |x|.
            return;
        };
        pivot(tableau, r, c);
        basis[r] = c;
    }
}
