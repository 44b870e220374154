//! Exact linear-programming feasibility over the rationals.
//!
//! Only one question is ever asked: does `A x = b, x >= 0` have a solution?
//! It is answered by a phase-one simplex with artificial variables and
//! Bland's least-index pivot rule, which terminates on every input. All
//! arithmetic is exact, and for a fixed input the pivot sequence — hence the
//! returned solution — is deterministic.

use num_traits::{Signed, Zero};

use crate::rational::{rat, Rational};

/// Searches for `x >= 0` with `A x = b`. Returns one such `x` (the basic
/// feasible solution reached by Bland pivoting from the all-artificial
/// basis) or `None` when the system is infeasible.
pub fn equality_feasible(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(b.len(), m);
    let n = a.first().map_or(0, |row| row.len());
    if m == 0 {
        return Some(vec![]);
    }

    // Tableau over the n structural columns, m artificial columns and the
    // right-hand side. Rows are sign-normalized so the rhs is nonnegative.
    let total = n + m;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Rational> = Vec::with_capacity(total);
        for j in 0..n {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { rat(1) } else { rat(0) });
        }
        tab.push(row);
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let mut basis: Vec<usize> = (n..total).collect();

    loop {
        // Reduced costs for minimizing the sum of artificials: for column j,
        // c_j - sum over rows whose basic variable is artificial.
        let mut entering = None;
        for j in 0..total {
            if basis.contains(&j) {
                continue;
            }
            let mut reduced = if j >= n { rat(1) } else { rat(0) };
            for i in 0..m {
                if basis[i] >= n {
                    reduced -= &tab[i][j];
                }
            }
            if reduced.is_negative() {
                entering = Some(j);
                break; // Bland: least index
            }
        }
        let Some(enter) = entering else {
            break;
        };

        // Ratio test; ties broken by least basic-variable index (Bland).
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &rhs[i] / &tab[i][enter];
                let better = match &best {
                    None => true,
                    Some(cur) => {
                        ratio < *cur
                            || (ratio == *cur
                                && basis[i] < basis[leave.expect("leave set with best")])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // The phase-one objective is bounded below by zero, so a
            // missing leaving row cannot happen on valid input.
            unreachable!("phase-one simplex cannot be unbounded");
        };

        // Pivot.
        let pivot = tab[leave][enter].clone();
        for x in tab[leave].iter_mut() {
            *x /= &pivot;
        }
        rhs[leave] /= &pivot;
        for i in 0..m {
            if i != leave && !tab[i][enter].is_zero() {
                let factor = tab[i][enter].clone();
                for j in 0..total {
                    let delta = &factor * &tab[leave][j];
                    tab[i][j] -= delta;
                }
                let delta = &factor * &rhs[leave];
                rhs[i] -= delta;
            }
        }
        basis[leave] = enter;
    }

    // Optimal: feasible iff all artificial variables sit at zero.
    let objective: Rational = (0..m)
        .filter(|&i| basis[i] >= n)
        .map(|i| rhs[i].clone())
        .fold(rat(0), |acc, v| acc + v);
    if !objective.is_zero() {
        return None;
    }
    let mut x = vec![rat(0); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = rhs[i].clone();
        }
    }
    Some(x)
}
