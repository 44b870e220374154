//! Independent no-pruning reference search.
//!
//! This module re-decides partition existence through a deliberately
//! different route than the main search: every assignment of vertices to
//! {unused, part 1..r} is enumerated without canonicalization or rainbow
//! pruning (validity is checked at the leaf), and hull intersection is
//! decided by Fourier-Motzkin elimination instead of the simplex. It exists
//! to cross-check NONE certificates on small instances and must stay
//! independent of the main code path.

use num_traits::{Signed, Zero};

use crate::complex::{is_rainbow, Face};
use crate::error::Result;
use crate::rational::{rat, Rational};

use super::{ColoredConfiguration, Target};

#[derive(Clone, Debug)]
pub struct NaiveReport {
    pub found: Option<Vec<Face>>,
    pub assignments_examined: u64,
}

/// Exhaustive reference search. Suitable for small instances only: the walk
/// covers all (r+1)^n assignments, and parts are ordered, so every
/// partition is revisited up to r! times.
pub fn find_partition_naive(config: &ColoredConfiguration) -> Result<NaiveReport> {
    let n = config.n_vertices();
    let r = config.r();
    let mut labels = vec![0u8; n];
    let mut examined = 0u64;
    loop {
        examined += 1;
        if let Some(parts) = candidate_parts(config, &labels) {
            let intersects = match config.target() {
                Target::Euclidean => {
                    hulls_intersect_fm(config, &parts, &vec![vec![0i64; config.d()]; r])
                }
                Target::Torus => torus_intersects_fm(config, &parts),
            };
            if intersects {
                let faces = parts
                    .into_iter()
                    .map(|p| Face::from_sorted_unchecked(p))
                    .collect();
                return Ok(NaiveReport { found: Some(faces), assignments_examined: examined });
            }
        }
        // Next assignment vector in lexicographic order, labels 0..=r.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(NaiveReport { found: None, assignments_examined: examined });
            }
            pos -= 1;
            if (labels[pos] as usize) < r {
                labels[pos] += 1;
                for x in labels[pos + 1..].iter_mut() {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Validity check at the leaf: all parts nonempty and rainbow.
fn candidate_parts(config: &ColoredConfiguration, labels: &[u8]) -> Option<Vec<Vec<usize>>> {
    let r = config.r();
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); r];
    for (v, &l) in labels.iter().enumerate() {
        if l > 0 {
            parts[(l - 1) as usize].push(v);
        }
    }
    if parts.iter().any(|p| p.is_empty()) {
        return None;
    }
    for p in &parts {
        if !is_rainbow(&Face::from_sorted_unchecked(p.clone()), config.coloring()) {
            return None;
        }
    }
    Some(parts)
}

fn torus_intersects_fm(config: &ColoredConfiguration, parts: &[Vec<usize>]) -> bool {
    let d = config.d();
    let r = config.r();
    let slots = d * (r - 1);
    let mut digits = vec![0usize; slots];
    loop {
        let mut translates: Vec<Vec<i64>> = vec![vec![0; d]];
        for i in 0..r - 1 {
            translates.push((0..d).map(|k| digits[i * d + k] as i64 - 1).collect());
        }
        if hulls_intersect_fm(config, parts, &translates) {
            return true;
        }
        let mut pos = slots;
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            if digits[pos] < 2 {
                digits[pos] += 1;
                for x in digits[pos + 1..].iter_mut() {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Decides whether the translated hulls of the parts share a point, by
/// eliminating the equality constraints by substitution and the remaining
/// free variables by Fourier-Motzkin.
fn hulls_intersect_fm(
    config: &ColoredConfiguration,
    parts: &[Vec<usize>],
    translates: &[Vec<i64>],
) -> bool {
    let d = config.d();
    let r = parts.len();
    let n_vars: usize = parts.iter().map(|p| p.len()).sum();
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0usize, |acc, p| {
            let o = *acc;
            *acc += p.len();
            Some(o)
        })
        .collect();

    // Equalities as rows [coeffs | rhs].
    let mut eqs: Vec<Vec<Rational>> = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let mut row = vec![rat(0); n_vars + 1];
        for j in 0..part.len() {
            row[offsets[i] + j] = rat(1);
        }
        row[n_vars] = rat(1);
        eqs.push(row);
    }
    for i in 1..r {
        for k in 0..d {
            let mut row = vec![rat(0); n_vars + 1];
            for (j, &v) in parts[0].iter().enumerate() {
                row[offsets[0] + j] = &config.points()[v][k] + rat(translates[0][k]);
            }
            for (j, &v) in parts[i].iter().enumerate() {
                row[offsets[i] + j] = -(&config.points()[v][k] + rat(translates[i][k]));
            }
            eqs.push(row);
        }
    }

    // Gaussian elimination to reduced row-echelon form.
    let cols = n_vars;
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row_idx = 0usize;
    for col in 0..cols {
        let mut sel = None;
        for i in row_idx..eqs.len() {
            if !eqs[i][col].is_zero() {
                sel = Some(i);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        eqs.swap(sel, row_idx);
        let inv = eqs[row_idx][col].clone();
        for x in eqs[row_idx].iter_mut() {
            *x /= &inv;
        }
        for i in 0..eqs.len() {
            if i != row_idx && !eqs[i][col].is_zero() {
                let f = eqs[i][col].clone();
                for j in 0..=cols {
                    let delta = &f * &eqs[row_idx][j];
                    eqs[i][j] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        row_idx += 1;
        if row_idx == eqs.len() {
            break;
        }
    }
    // Inconsistent system: 0 = nonzero.
    for row in &eqs[row_idx..] {
        if row[..cols].iter().all(|x| x.is_zero()) && !row[cols].is_zero() {
            return false;
        }
    }

    // Express lambda_j >= 0 in the free variables: for a pivot column,
    // lambda = rhs - sum(coeff * free); for a free column, lambda = itself.
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let nf = free_cols.len();
    // Inequality rows: [free coefficients | constant] meaning
    // sum(coeff * free) + constant >= 0.
    let mut ineqs: Vec<Vec<Rational>> = Vec::new();
    for col in 0..cols {
        let mut row = vec![rat(0); nf + 1];
        if let Some(pi) = pivot_cols.iter().position(|&c| c == col) {
            for (fi, &fc) in free_cols.iter().enumerate() {
                row[fi] = -eqs[pi][fc].clone();
            }
            row[nf] = eqs[pi][cols].clone();
        } else {
            let fi = free_cols.iter().position(|&c| c == col).unwrap();
            row[fi] = rat(1);
        }
        ineqs.push(row);
    }
    fourier_motzkin_feasible(ineqs, nf)
}

/// Feasibility of a system of inequalities sum(coeff * x) + constant >= 0
/// by eliminating the variables one at a time, last variable first. Rows
/// are laid out as [x_0, ..., x_{k-1}, constant].
fn fourier_motzkin_feasible(mut ineqs: Vec<Vec<Rational>>, n_vars: usize) -> bool {
    for var in (0..n_vars).rev() {
        let mut lower: Vec<Vec<Rational>> = Vec::new(); // coeff at var is +1
        let mut upper: Vec<Vec<Rational>> = Vec::new(); // coeff at var is -1
        let mut next: Vec<Vec<Rational>> = Vec::new();
        for mut row in ineqs {
            let c = row[var].clone();
            if c.is_zero() {
                row.remove(var);
                next.push(row);
            } else {
                let abs = if c.is_negative() { -c.clone() } else { c.clone() };
                for x in row.iter_mut() {
                    *x /= &abs;
                }
                if c.is_positive() {
                    lower.push(row);
                } else {
                    upper.push(row);
                }
            }
        }
        for lo in &lower {
            for hi in &upper {
                // lo: x + L >= 0, hi: -x + U >= 0  =>  L + U >= 0.
                let mut row: Vec<Rational> = Vec::with_capacity(lo.len() - 1);
                for j in 0..lo.len() {
                    if j != var {
                        row.push(&lo[j] + &hi[j]);
                    }
                }
                next.push(row);
            }
        }
        next.sort();
        next.dedup();
        ineqs = next;
    }
    // Only constants remain.
    ineqs.iter().all(|row| !row[0].is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::find_partition;

    fn euclid(d: usize, r: usize, pts: &[&[i64]], colors: &[usize]) -> ColoredConfiguration {
        ColoredConfiguration::from_integer_points(d, r, pts, colors, Target::Euclidean).unwrap()
    }

    #[test]
    fn agrees_on_classic_line_instances() {
        let found = euclid(1, 2, &[&[0], &[1], &[2]], &[0, 1, 2]);
        let none = euclid(1, 2, &[&[0], &[1], &[2]], &[0, 1, 0]);
        assert!(find_partition_naive(&found).unwrap().found.is_some());
        assert!(find_partition_naive(&none).unwrap().found.is_none());
        assert_eq!(find_partition_naive(&none).unwrap().assignments_examined, 27);
    }

    #[test]
    fn agrees_with_main_search_small() {
        let cases = [
            euclid(1, 2, &[&[0], &[2], &[1], &[3]], &[0, 1, 2, 3]),
            euclid(2, 2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]], &[0, 1, 0, 2]),
            euclid(2, 2, &[&[0, 0], &[2, 0], &[1, 1], &[1, -1]], &[0, 1, 2, 3]),
            euclid(1, 3, &[&[0], &[10], &[20], &[4], &[6]], &[0, 0, 0, 1, 2]),
        ];
        for config in &cases {
            let main = find_partition(config).unwrap();
            let naive = find_partition_naive(config).unwrap();
            assert_eq!(main.found().is_some(), naive.found.is_some());
        }
    }

    #[test]
    fn fm_feasibility_direct() {
        // x >= 0, -x + 1 >= 0 is feasible; x - 2 >= 0, -x + 1 >= 0 is not.
        assert!(fourier_motzkin_feasible(
            vec![vec![rat(1), rat(0)], vec![rat(-1), rat(1)]],
            1
        ));
        assert!(!fourier_motzkin_feasible(
            vec![vec![rat(1), rat(-2)], vec![rat(-1), rat(1)]],
            1
        ));
    }
}
