//! Product-cell complexes for deleted products.
//!
//! Cells are r-tuples of nonempty faces; the dimension of a cell is the sum
//! of its factor dimensions. The boundary follows the Leibniz rule: the i-th
//! factor differentiates with sign (-1)^(sum of the dimensions of the
//! factors before it), and factors of dimension 0 contribute nothing.

use std::collections::HashMap;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::guard::GuardCounter;

/// A cell of a product complex: one nonempty face per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductCell {
    pub factors: Vec<Face>,
}

impl ProductCell {
    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.len() - 1).sum()
    }
}

/// A finite product-cell complex with signed boundary data.
///
/// `cells_by_dim[d]` lists the d-cells in canonical (lexicographic on the
/// factor tuple) order. `boundaries[d]` holds incidence triples
/// `(cell_from, cell_to, sign)` describing the boundary map from the d-cells
/// to the (d-1)-cells; `boundaries[0]` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    factor_count: usize,
    cells_by_dim: Vec<Vec<ProductCell>>,
    boundaries: Vec<Vec<(usize, usize, i8)>>,
}

impl CellComplex {
    pub fn factor_count(&self) -> usize {
        self.factor_count
    }

    pub fn cells_by_dim(&self) -> &[Vec<ProductCell>] {
        &self.cells_by_dim
    }

    pub fn dim(&self) -> isize {
        self.cells_by_dim.len() as isize - 1
    }

    /// Incidence triples of the boundary map out of the d-cells.
    pub fn boundary_triples(&self, d: usize) -> &[(usize, usize, i8)] {
        &self.boundaries[d]
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.cells_by_dim.iter().map(|c| c.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn total_cells(&self) -> usize {
        self.cells_by_dim.iter().map(|c| c.len()).sum()
    }

    fn from_cells(factor_count: usize, mut cells: Vec<ProductCell>) -> Self {
        cells.sort();
        cells.dedup();
        let top = cells.iter().map(|c| c.dim()).max().map_or(0, |d| d + 1);
        let mut cells_by_dim: Vec<Vec<ProductCell>> = vec![Vec::new(); top];
        for cell in cells {
            cells_by_dim[cell.dim()].push(cell);
        }
        // Leibniz boundary. Every codimension-one face tuple of a kept cell
        // is again a kept cell: shrinking a factor preserves l-wise
        // disjointness, and faces of faces are faces.
        let mut boundaries: Vec<Vec<(usize, usize, i8)>> = vec![Vec::new(); cells_by_dim.len()];
        for d in 1..cells_by_dim.len() {
            let below: HashMap<&ProductCell, usize> =
                cells_by_dim[d - 1].iter().enumerate().map(|(i, c)| (c, i)).collect();
            let mut triples = Vec::new();
            for (ci, cell) in cells_by_dim[d].iter().enumerate() {
                let mut prefix_dim = 0usize;
                for (fi, face) in cell.factors.iter().enumerate() {
                    let fdim = face.len() - 1;
                    if fdim >= 1 {
                        let outer_sign = if prefix_dim % 2 == 0 { 1i8 } else { -1i8 };
                        for k in 0..face.len() {
                            let inner_sign = if k % 2 == 0 { 1i8 } else { -1i8 };
                            let mut factors = cell.factors.clone();
                            factors[fi] = face.without_index(k);
                            let child = ProductCell { factors };
                            let &ti = below
                                .get(&child)
                                .expect("boundary cell must be present in the complex");
                            triples.push((ci, ti, outer_sign * inner_sign));
                        }
                    }
                    prefix_dim += fdim;
                }
            }
            boundaries[d] = triples;
        }
        CellComplex { factor_count, cells_by_dim, boundaries }
    }
}

/// The r-fold l-wise deleted product of `x`: the cell complex of tuples
/// `F_1 x ... x F_r` of nonempty faces such that no vertex of `x` occurs in
/// `l` or more of the factors (for l = 2: pairwise disjoint).
pub fn deleted_product(x: &SimplicialComplex, r: usize, l: usize) -> Result<CellComplex> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("deleted product needs r >= 2, got r={r}")));
    }
    if l < 2 || l > r {
        return Err(Error::InvalidParameter(format!(
            "deleted product needs 2 <= l <= r, got l={l}, r={r}"
        )));
    }
    let nonempty: Vec<Face> = {
        let by_dim = x.faces_by_dim()?;
        by_dim[1..].iter().flatten().cloned().collect()
    };
    let mut guard = GuardCounter::new();
    let mut cells = Vec::new();
    let mut usage = vec![0usize; x.n_vertices()];
    let mut chosen: Vec<Face> = Vec::with_capacity(r);
    fill_cells(&nonempty, r, l, &mut usage, &mut chosen, &mut cells, &mut guard)?;
    Ok(CellComplex::from_cells(r, cells))
}

fn fill_cells(
    faces: &[Face],
    r: usize,
    l: usize,
    usage: &mut Vec<usize>,
    chosen: &mut Vec<Face>,
    out: &mut Vec<ProductCell>,
    guard: &mut GuardCounter,
) -> Result<()> {
    if chosen.len() == r {
        guard.tick()?;
        out.push(ProductCell { factors: chosen.clone() });
        return Ok(());
    }
    'faces: for face in faces {
        for &v in face.vertices() {
            if usage[v] + 1 >= l {
                continue 'faces;
            }
        }
        for &v in face.vertices() {
            usage[v] += 1;
        }
        chosen.push(face.clone());
        fill_cells(faces, r, l, usage, chosen, out, guard)?;
        chosen.pop();
        for &v in face.vertices() {
            usage[v] -= 1;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::FpMatrix;
    use crate::homology::cell_chain_complex;

    #[test]
    fn deleted_product_of_triangle_is_hexagon() {
        let c = deleted_product(&SimplicialComplex::simplex(3), 2, 2).unwrap();
        assert_eq!(c.f_vector(), vec![6, 6]);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn deleted_product_of_edge_is_two_points() {
        let c = deleted_product(&SimplicialComplex::simplex(2), 2, 2).unwrap();
        assert_eq!(c.f_vector(), vec![2]);
    }

    #[test]
    fn deleted_product_of_point_is_empty() {
        let c = deleted_product(&SimplicialComplex::simplex(1), 2, 2).unwrap();
        assert_eq!(c.total_cells(), 0);
    }

    #[test]
    fn boundary_squares_to_zero() {
        for (x, r, l) in [
            (SimplicialComplex::simplex(3), 2, 2),
            (SimplicialComplex::simplex(4), 2, 2),
            (SimplicialComplex::simplex(3), 3, 2),
            (SimplicialComplex::simplex(3), 3, 3),
            (SimplicialComplex::cycle(4).unwrap(), 2, 2),
        ] {
            let c = deleted_product(&x, r, l).unwrap();
            for p in [2u64, 3, 5] {
                let chain = cell_chain_complex(&c, p).unwrap();
                for d in 1..chain.boundaries().len() {
                    let prod: FpMatrix = chain.boundaries()[d - 1].multiply(&chain.boundaries()[d]);
                    assert!(prod.is_zero(), "d2 != 0 at dim {d} over F_{p}");
                }
            }
        }
    }

    #[test]
    fn parameter_validation() {
        let x = SimplicialComplex::simplex(3);
        assert!(deleted_product(&x, 1, 2).is_err());
        assert!(deleted_product(&x, 3, 1).is_err());
        assert!(deleted_product(&x, 3, 4).is_err());
    }
}
