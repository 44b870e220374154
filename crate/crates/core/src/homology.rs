//! Reduced homology with F_p coefficients.
//!
//! Chain complexes are augmented: the empty face generates the chain group
//! in dimension -1 and every vertex maps to it. All Betti numbers below are
//! reduced. Cohomology is not computed separately: over a field the ranks
//! of homology and cohomology coincide in every dimension, so a separate
//! cochain pass would only duplicate the elimination.

use crate::cells::CellComplex;
use crate::complex::{index_faces, SimplicialComplex};
use crate::error::{Error, Result};
use crate::fp::{is_prime, FpMatrix};

/// Largest supported coefficient prime; desk-scale instances never need more.
pub const MAX_PRIME: u64 = 97;

/// Augmented chain complex over F_p.
///
/// Index `t` corresponds to dimension `t - 1`: `sizes[0]` counts the
/// (-1)-dimensional basis (the empty face or empty-cell slot),
/// `boundaries[t]` is the matrix of the boundary map from dimension `t - 1`
/// into dimension `t - 2` (so `boundaries[0]` is the map out of the empty
/// face, always zero-shaped).
#[derive(Clone, Debug)]
pub struct ChainComplexFp {
    p: u64,
    sizes: Vec<usize>,
    boundaries: Vec<FpMatrix>,
}

impl ChainComplexFp {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Basis sizes per dimension, starting at dimension -1.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Boundary matrices; entry `t` maps dimension `t - 1` to `t - 2`.
    pub fn boundaries(&self) -> &[FpMatrix] {
        &self.boundaries
    }

    /// Checks that consecutive boundary maps compose to zero.
    pub fn boundary_squared_is_zero(&self) -> bool {
        (1..self.boundaries.len())
            .all(|t| self.boundaries[t - 1].multiply(&self.boundaries[t]).is_zero())
    }

    /// Reduced Betti numbers by exact elimination.
    pub fn betti(&self) -> BettiProfile {
        let top = self.sizes.len();
        let ranks: Vec<usize> = self.boundaries.iter().map(|m| m.rank()).collect();
        let mut tilde = Vec::with_capacity(top);
        for t in 0..top {
            let rank_out = ranks[t];
            let rank_in = if t + 1 < top { ranks[t + 1] } else { 0 };
            tilde.push(self.sizes[t] - rank_out - rank_in);
        }
        BettiProfile { p: self.p, tilde }
    }
}

/// Reduced Betti numbers over F_p, indexed from dimension -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiProfile {
    p: u64,
    tilde: Vec<usize>,
}

impl BettiProfile {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduced Betti number in dimension `dim` (zero outside the stored range).
    pub fn b(&self, dim: isize) -> usize {
        let t = dim + 1;
        if t < 0 || t as usize >= self.tilde.len() {
            0
        } else {
            self.tilde[t as usize]
        }
    }

    /// b-tilde in dimension -1: one exactly for the empty complex.
    pub fn b_minus_one(&self) -> usize {
        self.b(-1)
    }

    /// Reduced Betti numbers from dimension 0 up to the top dimension.
    pub fn from_dim_zero(&self) -> Vec<usize> {
        self.tilde[1..].to_vec()
    }

    /// Top dimension carried by the profile.
    pub fn top_dim(&self) -> isize {
        self.tilde.len() as isize - 2
    }

    /// Reduced Euler characteristic: alternating sum including dimension -1.
    pub fn reduced_euler(&self) -> i64 {
        let mut sum = 0i64;
        for (t, &b) in self.tilde.iter().enumerate() {
            // dimension t-1 carries sign (-1)^(t-1)
            if (t as isize - 1).rem_euclid(2) == 0 {
                sum += b as i64;
            } else {
                sum -= b as i64;
            }
        }
        sum
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    Ok(())
}

/// Augmented simplicial chain complex with the usual signs
/// ((-1)^i on removal of the i-th sorted vertex).
pub fn chain_complex(complex: &SimplicialComplex, p: u64) -> Result<ChainComplexFp> {
    check_prime(p)?;
    let by_dim = complex.faces_by_dim()?;
    let sizes: Vec<usize> = by_dim.iter().map(|b| b.len()).collect();
    let mut boundaries = Vec::with_capacity(sizes.len());
    boundaries.push(FpMatrix::new(p, 0, sizes[0]));
    for t in 1..sizes.len() {
        let below = index_faces(&by_dim[t - 1]);
        let mut m = FpMatrix::new(p, sizes[t - 1], sizes[t]);
        for (col, face) in by_dim[t].iter().enumerate() {
            for i in 0..face.len() {
                let sub = face.without_index(i);
                let &row = below.get(&sub).expect("closure is downward closed");
                m.push(row, col, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m.normalize();
        boundaries.push(m);
    }
    Ok(ChainComplexFp { p, sizes, boundaries })
}

/// Augmented cellular chain complex of a product-cell complex. The signs
/// come with the complex (Leibniz rule); the augmentation sends every
/// 0-cell to the empty-cell generator.
pub fn cell_chain_complex(cells: &CellComplex, p: u64) -> Result<ChainComplexFp> {
    check_prime(p)?;
    let by_dim = cells.cells_by_dim();
    let mut sizes = vec![1usize];
    sizes.extend(by_dim.iter().map(|c| c.len()));
    let mut boundaries = Vec::with_capacity(sizes.len());
    boundaries.push(FpMatrix::new(p, 0, 1));
    if !by_dim.is_empty() {
        // Augmentation.
        let mut aug = FpMatrix::new(p, 1, by_dim[0].len());
        for col in 0..by_dim[0].len() {
            aug.push(0, col, 1);
        }
        aug.normalize();
        boundaries.push(aug);
        for d in 1..by_dim.len() {
            let mut m = FpMatrix::new(p, by_dim[d - 1].len(), by_dim[d].len());
            for &(from, to, sign) in cells.boundary_triples(d) {
                m.push(to, from, sign as i64);
            }
            m.normalize();
            boundaries.push(m);
        }
    }
    Ok(ChainComplexFp { p, sizes, boundaries })
}

/// Reduced Betti numbers of a simplicial complex over F_p.
pub fn betti(complex: &SimplicialComplex, p: u64) -> Result<BettiProfile> {
    Ok(chain_complex(complex, p)?.betti())
}

/// Reduced Betti numbers of a product-cell complex over F_p.
pub fn betti_cells(cells: &CellComplex, p: u64) -> Result<BettiProfile> {
    Ok(cell_chain_complex(cells, p)?.betti())
}

/// Outcome of checking the join formula
/// `b~_{i+r-1}(X^{*r}) = sum over j_1+...+j_r = i of prod b~_{j_k}(X)`
/// (indices range over >= -1) by computing both sides independently:
/// the left by elimination on the actual r-fold join, the right by
/// convolving the Betti profile of `x`.
#[derive(Clone, Debug)]
pub struct JoinFormulaReport {
    pub holds: bool,
    pub r: usize,
    pub p: u64,
    pub join_profile: BettiProfile,
    pub expected: Vec<usize>,
    pub mismatches: Vec<(isize, usize, usize)>,
}

pub fn check_join_formula(x: &SimplicialComplex, r: usize, p: u64) -> Result<JoinFormulaReport> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("join formula needs r >= 2, got {r}")));
    }
    let factors: Vec<SimplicialComplex> = (0..r).map(|_| x.clone()).collect();
    let join = crate::constructions::iterated_join(&factors)?;
    let join_profile = betti(join.complex(), p)?;
    let base = betti(x, p)?;
    // Convolve the shifted vector u[t] = b~_{t-1}(x) r times.
    let u: Vec<usize> = (0..base.tilde.len()).map(|t| base.tilde[t]).collect();
    let mut conv = vec![1usize];
    for _ in 0..r {
        let mut next = vec![0usize; conv.len() + u.len() - 1];
        for (i, &a) in conv.iter().enumerate() {
            for (j, &b) in u.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        conv = next;
    }
    // conv[t] is the expected b~ in dimension t - 1 of the r-fold join.
    let top = join_profile.tilde.len().max(conv.len());
    let mut expected = vec![0usize; top];
    expected[..conv.len().min(top)].copy_from_slice(&conv[..conv.len().min(top)]);
    let mut mismatches = Vec::new();
    for t in 0..top {
        let got = join_profile.tilde.get(t).copied().unwrap_or(0);
        let want = expected[t];
        if got != want {
            mismatches.push((t as isize - 1, got, want));
        }
    }
    Ok(JoinFormulaReport {
        holds: mismatches.is_empty(),
        r,
        p,
        join_profile,
        expected,
        mismatches,
    })
}

/// Largest `c <= up_to` such that all reduced Betti numbers through
/// dimension `c` vanish (F_p-homological connectivity; genuine topological
/// connectivity is not computed). Returns -2 when even b~_{-1} is nonzero,
/// i.e. for the empty complex.
pub fn homological_connectivity(
    complex: &SimplicialComplex,
    p: u64,
    up_to: isize,
) -> Result<isize> {
    let profile = betti(complex, p)?;
    let mut c = -2;
    let mut d = -1;
    while d <= up_to {
        if profile.b(d) != 0 {
            break;
        }
        c = d;
        d += 1;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Face;

    #[test]
    fn chain_complex_rejects_bad_primes() {
        let c = SimplicialComplex::simplex(3);
        assert_eq!(chain_complex(&c, 4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(chain_complex(&c, 1).unwrap_err(), Error::NotPrime(1));
        assert_eq!(chain_complex(&c, 101).unwrap_err(), Error::PrimeTooLarge(101));
    }

    #[test]
    fn six_cycle_boundary_shape() {
        let c = SimplicialComplex::cycle(6).unwrap();
        let chain = chain_complex(&c, 2).unwrap();
        assert_eq!(chain.sizes(), &[1, 6, 6]);
        // Each edge hits two vertices.
        assert_eq!(chain.boundaries()[2].triples.len(), 12);
        assert!(chain.boundary_squared_is_zero());
    }

    #[test]
    fn six_cycle_is_a_circle() {
        let c = SimplicialComplex::cycle(6).unwrap();
        for p in [2, 3, 5] {
            let b = betti(&c, p).unwrap();
            assert_eq!(b.from_dim_zero(), vec![0, 1]);
            assert_eq!(b.b_minus_one(), 0);
        }
    }

    #[test]
    fn full_simplex_has_trivial_reduced_homology() {
        for n in 1..=5 {
            let b = betti(&SimplicialComplex::simplex(n), 3).unwrap();
            assert!(b.from_dim_zero().iter().all(|&x| x == 0), "simplex({n}): {b:?}");
            assert_eq!(b.b_minus_one(), 0);
        }
    }

    #[test]
    fn empty_complex_has_b_minus_one() {
        let empty = SimplicialComplex::from_facets(0, vec![]).unwrap();
        let b = betti(&empty, 2).unwrap();
        assert_eq!(b.b_minus_one(), 1);
        assert_eq!(b.reduced_euler(), -1);
        let point = SimplicialComplex::points(1);
        assert_eq!(betti(&point, 2).unwrap().b_minus_one(), 0);
    }

    #[test]
    fn two_components() {
        let c = SimplicialComplex::from_facets(
            4,
            vec![Face::new(vec![0, 1]), Face::new(vec![2, 3])],
        )
        .unwrap();
        let b = betti(&c, 2).unwrap();
        assert_eq!(b.from_dim_zero(), vec![1, 0]);
    }

    #[test]
    fn euler_consistency() {
        for c in [
            SimplicialComplex::simplex(4),
            SimplicialComplex::cycle(5).unwrap(),
            SimplicialComplex::points(3),
            crate::constructions::chessboard(3, 4).unwrap(),
        ] {
            let chi = c.euler_characteristic().unwrap();
            for p in [2, 3] {
                let b = betti(&c, p).unwrap();
                assert_eq!(b.reduced_euler(), chi - 1, "complex {c:?} p={p}");
            }
        }
    }

    #[test]
    fn connectivity_examples() {
        // [2]^{*3} is homeomorphic to S^2.
        let s0 = SimplicialComplex::points(2);
        let join =
            crate::constructions::iterated_join(&[s0.clone(), s0.clone(), s0.clone()]).unwrap();
        assert_eq!(homological_connectivity(join.complex(), 2, 10).unwrap(), 1);
        let board = crate::constructions::chessboard(3, 4).unwrap();
        assert_eq!(homological_connectivity(&board, 2, 10).unwrap(), 0);
        let simplex = SimplicialComplex::simplex(4);
        let d = simplex.dim();
        assert_eq!(homological_connectivity(&simplex, 2, d).unwrap(), d);
        let empty = SimplicialComplex::from_facets(0, vec![]).unwrap();
        assert_eq!(homological_connectivity(&empty, 2, 5).unwrap(), -2);
    }
}
