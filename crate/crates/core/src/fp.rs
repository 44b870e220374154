//! Exact elimination over the prime fields F_p, p <= 97.
//!
//! Boundary matrices are held as triple lists. Rank is computed by Gaussian
//! elimination: dense row-major below [`SPARSE_THRESHOLD`] columns, sparse
//! row-list elimination above it. Both paths are deterministic.

/// Column count at which elimination switches to the sparse row-list path.
pub const SPARSE_THRESHOLD: usize = 2000;

/// A matrix over F_p stored as (row, col, value) triples with value in `1..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub triples: Vec<(usize, usize, u64)>,
}

impl FpMatrix {
    pub fn new(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, triples: Vec::new() }
    }

    /// Adds `value` (any integer) to entry (row, col), reducing mod p.
    /// Triples are accumulated; call `normalize` before use.
    pub fn push(&mut self, row: usize, col: usize, value: i64) {
        debug_assert!(row < self.rows && col < self.cols);
        let v = value.rem_euclid(self.p as i64) as u64;
        if v != 0 {
            self.triples.push((row, col, v));
        }
    }

    /// Merges duplicate positions and drops zeros.
    pub fn normalize(&mut self) {
        self.triples.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut out: Vec<(usize, usize, u64)> = Vec::with_capacity(self.triples.len());
        for &(r, c, v) in &self.triples {
            match out.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = (last.2 + v) % self.p,
                _ => out.push((r, c, v)),
            }
        }
        out.retain(|&(_, _, v)| v != 0);
        self.triples = out;
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 || self.triples.is_empty() {
            return 0;
        }
        if self.cols < SPARSE_THRESHOLD {
            rank_dense(self)
        } else {
            rank_sparse(self)
        }
    }

    /// Product with another matrix (self * rhs), for boundary-composition checks.
    pub fn multiply(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows);
        assert_eq!(self.p, rhs.p);
        let p = self.p;
        // Index rhs rows.
        let mut rhs_rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); rhs.rows];
        for &(r, c, v) in &rhs.triples {
            rhs_rows[r].push((c, v));
        }
        let mut acc: std::collections::HashMap<(usize, usize), u64> =
            std::collections::HashMap::new();
        for &(r, k, v) in &self.triples {
            for &(c, w) in &rhs_rows[k] {
                let e = acc.entry((r, c)).or_insert(0);
                *e = (*e + v * w) % p;
            }
        }
        let mut out = FpMatrix::new(p, self.rows, rhs.cols);
        for ((r, c), v) in acc {
            if v != 0 {
                out.triples.push((r, c, v));
            }
        }
        out.normalize();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.triples.iter().all(|&(_, _, v)| v == 0)
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p for p prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

pub fn rank_dense(m: &FpMatrix) -> usize {
    let p = m.p;
    let mut data = vec![0u64; m.rows * m.cols];
    for &(r, c, v) in &m.triples {
        data[r * m.cols + c] = (data[r * m.cols + c] + v) % p;
    }
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..m.cols {
        let mut sel = None;
        for row in pivot_row..m.rows {
            if data[row * m.cols + col] != 0 {
                sel = Some(row);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        if sel != pivot_row {
            for k in 0..m.cols {
                data.swap(sel * m.cols + k, pivot_row * m.cols + k);
            }
        }
        let inv = mod_inverse(data[pivot_row * m.cols + col], p);
        for k in col..m.cols {
            data[pivot_row * m.cols + k] = data[pivot_row * m.cols + k] * inv % p;
        }
        for row in 0..m.rows {
            if row != pivot_row && data[row * m.cols + col] != 0 {
                let factor = data[row * m.cols + col];
                for k in col..m.cols {
                    let sub = factor * data[pivot_row * m.cols + k] % p;
                    data[row * m.cols + k] = (data[row * m.cols + k] + p - sub) % p;
                }
            }
        }
        rank += 1;
        pivot_row += 1;
        if pivot_row == m.rows {
            break;
        }
    }
    rank
}

pub fn rank_sparse(m: &FpMatrix) -> usize {
    let p = m.p;
    // Rows as sorted (col, value) lists.
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); m.rows];
    for &(r, c, v) in &m.triples {
        rows[r].push((c, v));
    }
    for row in &mut rows {
        row.sort_unstable_by_key(|&(c, _)| c);
    }
    // pivot_for[col] = index into `pivots` of the row with leading entry at col.
    let mut pivots: Vec<Vec<(usize, u64)>> = Vec::new();
    let mut pivot_for: Vec<Option<usize>> = vec![None; m.cols];
    for mut row in rows {
        loop {
            let Some(&(lead, val)) = row.first() else { break };
            match pivot_for[lead] {
                Some(pi) => {
                    // row -= (val / pivot_lead) * pivot  (pivot is normalized to lead 1)
                    row = row_subtract_scaled(&row, &pivots[pi], val, p);
                }
                None => {
                    let inv = mod_inverse(val, p);
                    for e in &mut row {
                        e.1 = e.1 * inv % p;
                    }
                    pivot_for[lead] = Some(pivots.len());
                    pivots.push(row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// a - scale * b over F_p for sorted sparse rows (b has leading value 1).
fn row_subtract_scaled(
    a: &[(usize, u64)],
    b: &[(usize, u64)],
    scale: u64,
    p: u64,
) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                let v = (va + p - scale * vb % p) % p;
                if v != 0 {
                    out.push((ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                out.push((ca, va));
                i += 1;
            }
            (Some(_), Some(&(cb, vb))) => {
                let v = (p - scale * vb % p) % p;
                if v != 0 {
                    out.push((cb, v));
                }
                j += 1;
            }
            (Some(&(ca, va)), None) => {
                out.push((ca, va));
                i += 1;
            }
            (None, Some(&(cb, vb))) => {
                let v = (p - scale * vb % p) % p;
                if v != 0 {
                    out.push((cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(p: u64, rows: &[&[i64]]) -> FpMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = FpMatrix::new(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.push(i, j, v);
            }
        }
        m.normalize();
        m
    }

    #[test]
    fn rank_simple() {
        let m = from_dense(5, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(rank_dense(&m), 2);
        assert_eq!(rank_sparse(&m), 2);
    }

    #[test]
    fn rank_depends_on_p() {
        // Determinant 2: invertible mod 3 and 5, singular mod 2.
        let m2 = from_dense(2, &[&[1, 1], &[1, 3]]);
        let m3 = from_dense(3, &[&[1, 1], &[1, 3]]);
        assert_eq!(m2.rank(), 1);
        assert_eq!(m3.rank(), 2);
    }

    #[test]
    fn dense_and_sparse_agree_on_random() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for p in [2u64, 3, 5, 7] {
            for _ in 0..20 {
                let rows = (next() % 8 + 1) as usize;
                let cols = (next() % 8 + 1) as usize;
                let mut m = FpMatrix::new(p, rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        if next() % 3 == 0 {
                            m.push(r, c, (next() % p) as i64);
                        }
                    }
                }
                m.normalize();
                assert_eq!(rank_dense(&m), rank_sparse(&m), "p={p} rows={rows} cols={cols}");
            }
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
        );
    }
}
