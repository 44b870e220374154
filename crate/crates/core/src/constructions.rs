//! Joins, chessboard complexes, deleted joins, the chessboard-join test
//! space of a coloring, and the cyclic shift action with freeness
//! certification.
//!
//! Vertex labelings are deterministic throughout: joins are factor-major
//! (factor 0's vertices first, in their original order), chessboards are
//! column-major (cell (row, col) has id col*rows + row). Isomorphism checks
//! and golden files rely on these conventions.

use std::collections::{HashMap, HashSet};

use crate::complex::{Coloring, Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::guard::GuardCounter;

/// Copy/slot labels that exhibit a complex as carrying a cyclic shift:
/// the generator sends the vertex labeled (copy j, slot s) to the vertex
/// labeled (copy j+1 mod order, slot s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub order: usize,
    /// Per vertex: (copy index in 0..order, slot id shared across copies).
    pub labels: Vec<(usize, usize)>,
}

/// A join with provenance: the underlying complex plus, per vertex, the
/// join factor it came from and its id inside that factor. Joins of r
/// copies of one complex (and the test space) additionally carry rotation
/// labels for the cyclic shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledJoinComplex {
    complex: SimplicialComplex,
    factor_of: Vec<(usize, VertexId)>,
    rotation: Option<Rotation>,
}

impl LabeledJoinComplex {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn into_complex(self) -> SimplicialComplex {
        self.complex
    }

    /// (join factor, original vertex id) of a join vertex.
    pub fn factor_of(&self, v: VertexId) -> (usize, VertexId) {
        self.factor_of[v]
    }

    pub fn factor_labels(&self) -> &[(usize, VertexId)] {
        &self.factor_of
    }

    pub fn rotation(&self) -> Option<&Rotation> {
        self.rotation.as_ref()
    }

    pub fn n_vertices(&self) -> usize {
        self.complex.n_vertices()
    }
}

/// Join of a list of complexes: faces are unions of one face per factor,
/// with factor-major vertex labels. Errors when a factor has no vertices or
/// the resulting face count would pass the guard.
pub fn iterated_join(factors: &[SimplicialComplex]) -> Result<LabeledJoinComplex> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter("join of zero factors".into()));
    }
    for (i, f) in factors.iter().enumerate() {
        if f.n_vertices() == 0 {
            return Err(Error::InvalidParameter(format!("join factor {i} has no vertices")));
        }
    }
    let guard = GuardCounter::new();
    let mut total_faces: usize = 1;
    for f in factors {
        total_faces = total_faces
            .checked_mul(f.total_faces()?)
            .ok_or(Error::FaceGuardExceeded { limit: crate::guard::face_guard() })?;
    }
    guard.check_total(total_faces)?;

    let mut offsets = Vec::with_capacity(factors.len());
    let mut n = 0usize;
    for f in factors {
        offsets.push(n);
        n += f.n_vertices();
    }
    let mut factor_of = Vec::with_capacity(n);
    for (i, f) in factors.iter().enumerate() {
        for v in 0..f.n_vertices() {
            factor_of.push((i, v));
        }
    }
    // Facets of a join are unions of factor facets. A factor whose only
    // face is the empty one contributes nothing to the union.
    let empty = [Face::empty()];
    let mut facets: Vec<Vec<VertexId>> = vec![Vec::new()];
    for (i, f) in factors.iter().enumerate() {
        let factor_facets: &[Face] = if f.facets().is_empty() { &empty } else { f.facets() };
        let mut next = Vec::with_capacity(facets.len() * factor_facets.len());
        for partial in &facets {
            for facet in factor_facets {
                let mut face = partial.clone();
                face.extend(facet.vertices().iter().map(|&v| v + offsets[i]));
                next.push(face);
            }
        }
        facets = next;
    }
    let complex =
        SimplicialComplex::from_facets(n, facets.into_iter().map(Face::new).collect())?;
    Ok(LabeledJoinComplex { complex, factor_of, rotation: None })
}

/// Join of two complexes.
pub fn join(x: &SimplicialComplex, y: &SimplicialComplex) -> Result<LabeledJoinComplex> {
    iterated_join(&[x.clone(), y.clone()])
}

/// The chessboard complex: vertices are the cells of a rows x cols board
/// (vertex id = col*rows + row), faces are placements of non-attacking
/// rooks. Every maximal placement has min(rows, cols) rooks.
pub fn chessboard(rows: usize, cols: usize) -> Result<SimplicialComplex> {
    if rows < 1 || cols < 1 {
        return Err(Error::InvalidParameter(format!(
            "chessboard needs rows >= 1 and cols >= 1, got {rows}x{cols}"
        )));
    }
    let guard = GuardCounter::new();
    let total = chessboard_face_count(rows, cols);
    let total: usize = total
        .try_into()
        .map_err(|_| Error::FaceGuardExceeded { limit: crate::guard::face_guard() })?;
    guard.check_total(total)?;

    let mut facets: Vec<Face> = Vec::new();
    let mut cells: Vec<VertexId> = Vec::new();
    if rows <= cols {
        let mut used_cols = vec![false; cols];
        place_rows(rows, cols, 0, &mut used_cols, &mut cells, &mut facets);
    } else {
        let mut used_rows = vec![false; rows];
        place_cols(rows, cols, 0, &mut used_rows, &mut cells, &mut facets);
    }
    SimplicialComplex::from_facets(rows * cols, facets)
}

fn place_rows(
    rows: usize,
    cols: usize,
    row: usize,
    used_cols: &mut Vec<bool>,
    cells: &mut Vec<VertexId>,
    out: &mut Vec<Face>,
) {
    if row == rows {
        out.push(Face::new(cells.clone()));
        return;
    }
    for col in 0..cols {
        if !used_cols[col] {
            used_cols[col] = true;
            cells.push(col * rows + row);
            place_rows(rows, cols, row + 1, used_cols, cells, out);
            cells.pop();
            used_cols[col] = false;
        }
    }
}

fn place_cols(
    rows: usize,
    cols: usize,
    col: usize,
    used_rows: &mut Vec<bool>,
    cells: &mut Vec<VertexId>,
    out: &mut Vec<Face>,
) {
    if col == cols {
        out.push(Face::new(cells.clone()));
        return;
    }
    for row in 0..rows {
        if !used_rows[row] {
            used_rows[row] = true;
            cells.push(col * rows + row);
            place_cols(rows, cols, col + 1, used_rows, cells, out);
            cells.pop();
            used_rows[row] = false;
        }
    }
}

/// Number of faces (including the empty one) of the chessboard complex:
/// sum over s of C(rows,s) * C(cols,s) * s!.
pub fn chessboard_face_count(rows: usize, cols: usize) -> u128 {
    let m = rows.min(cols);
    let mut total: u128 = 0;
    for s in 0..=m {
        total += binomial(rows, s) * binomial(cols, s) * factorial(s);
    }
    total
}

/// Number of facets (maximal non-attacking placements) of the chessboard
/// complex: the falling factorial of the larger side over the smaller.
pub fn chessboard_facet_count(rows: usize, cols: usize) -> u128 {
    let (small, large) = if rows <= cols { (rows, cols) } else { (cols, rows) };
    let mut total: u128 = 1;
    for i in 0..small {
        total *= (large - i) as u128;
    }
    total
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    for i in 0..k {
        num = num * (n - i) as u128 / (i + 1) as u128;
    }
    num
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// The r-fold l-wise deleted join of `x`: the subcomplex of the r-fold join
/// keeping those faces in which no vertex of `x` occurs in `l` or more of
/// the copies (for l = 2: pairwise disjoint copies). Vertex labels are
/// copy-major: copy j's vertex v has id j * n + v.
pub fn deleted_join(x: &SimplicialComplex, r: usize, l: usize) -> Result<LabeledJoinComplex> {
    check_deleted_params(r, l)?;
    let n = x.n_vertices();
    if n == 0 {
        return Err(Error::InvalidParameter("deleted join of a complex with no vertices".into()));
    }
    let join_vertices = r * n;
    let mut faces_masks: Vec<u64> = Vec::new();
    let mut faces_vecs: Vec<Vec<VertexId>> = Vec::new();
    let use_masks = join_vertices <= 64;
    deleted_join_visit(x, r, l, &mut |components: &[Vec<VertexId>]| {
        if use_masks {
            let mut mask = 0u64;
            for (j, comp) in components.iter().enumerate() {
                for &v in comp {
                    mask |= 1u64 << (j * n + v);
                }
            }
            faces_masks.push(mask);
        } else {
            let mut face: Vec<VertexId> = Vec::new();
            for (j, comp) in components.iter().enumerate() {
                face.extend(comp.iter().map(|&v| j * n + v));
            }
            face.sort_unstable();
            faces_vecs.push(face);
        }
        Ok(())
    })?;

    let facets: Vec<Face> = if use_masks {
        let set: HashSet<u64> = faces_masks.iter().copied().collect();
        faces_masks
            .iter()
            .copied()
            .filter(|&m| {
                (0..join_vertices)
                    .all(|u| m & (1u64 << u) != 0 || !set.contains(&(m | (1u64 << u))))
            })
            .map(Face::from_mask)
            .collect()
    } else {
        let set: HashSet<Vec<VertexId>> = faces_vecs.iter().cloned().collect();
        faces_vecs
            .iter()
            .filter(|f| {
                (0..join_vertices).all(|u| {
                    f.binary_search(&u).is_ok() || {
                        let mut bigger = (*f).clone();
                        let pos = bigger.binary_search(&u).unwrap_err();
                        bigger.insert(pos, u);
                        !set.contains(&bigger)
                    }
                })
            })
            .cloned()
            .map(Face::new)
            .collect()
    };

    let complex = SimplicialComplex::from_facets(join_vertices, facets)?;
    let mut factor_of = Vec::with_capacity(join_vertices);
    for j in 0..r {
        for v in 0..n {
            factor_of.push((j, v));
        }
    }
    let rotation = Rotation { order: r, labels: factor_of.clone() };
    Ok(LabeledJoinComplex { complex, factor_of, rotation: Some(rotation) })
}

fn check_deleted_params(r: usize, l: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("deleted join needs r >= 2, got r={r}")));
    }
    if l < 2 || l > r {
        return Err(Error::InvalidParameter(format!(
            "deleted join needs 2 <= l <= r, got l={l}, r={r}"
        )));
    }
    Ok(())
}

/// Streams every face of the r-fold l-wise deleted join of `x` exactly once
/// without materializing the complex. The visitor receives the per-copy
/// components (sorted vertex lists of `x`). Used by `deleted_join` and by
/// exhaustive sweeps that only need to look at each face.
pub fn deleted_join_visit<F>(
    x: &SimplicialComplex,
    r: usize,
    l: usize,
    visitor: &mut F,
) -> Result<()>
where
    F: FnMut(&[Vec<VertexId>]) -> Result<()>,
{
    check_deleted_params(r, l)?;
    let n = x.n_vertices();
    let lookup = FaceLookup::new(x)?;
    // Subsets of copies a single vertex may join: fewer than l of them.
    let mut vertex_choices: Vec<usize> = Vec::new();
    for bits in 0usize..(1 << r) {
        if (bits.count_ones() as usize) < l {
            vertex_choices.push(bits);
        }
    }
    vertex_choices.sort_unstable_by_key(|b| (b.count_ones(), *b));

    let mut guard = GuardCounter::new();
    let mut components: Vec<Vec<VertexId>> = vec![Vec::new(); r];
    // Component bitmasks feed the table lookup; only maintained while they fit.
    let track_masks = n <= 63;
    let mut masks: Vec<u64> = vec![0; r];

    #[allow(clippy::too_many_arguments)]
    fn recurse<F>(
        v: usize,
        n: usize,
        choices: &[usize],
        lookup: &FaceLookup<'_>,
        components: &mut Vec<Vec<VertexId>>,
        masks: &mut Vec<u64>,
        track_masks: bool,
        guard: &mut GuardCounter,
        visitor: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&[Vec<VertexId>]) -> Result<()>,
    {
        if v == n {
            guard.tick()?;
            return visitor(components);
        }
        'choice: for &bits in choices {
            let mut b = bits;
            while b != 0 {
                let j = b.trailing_zeros() as usize;
                if !lookup.is_face_with(masks[j], &components[j], v) {
                    continue 'choice;
                }
                b &= b - 1;
            }
            let mut b = bits;
            while b != 0 {
                let j = b.trailing_zeros() as usize;
                components[j].push(v);
                if track_masks {
                    masks[j] |= 1u64 << v;
                }
                b &= b - 1;
            }
            recurse(v + 1, n, choices, lookup, components, masks, track_masks, guard, visitor)?;
            let mut b = bits;
            while b != 0 {
                let j = b.trailing_zeros() as usize;
                components[j].pop();
                if track_masks {
                    masks[j] &= !(1u64 << v);
                }
                b &= b - 1;
            }
        }
        Ok(())
    }

    recurse(
        0,
        n,
        &vertex_choices,
        &lookup,
        &mut components,
        &mut masks,
        track_masks,
        &mut guard,
        visitor,
    )
}

/// Face-membership oracle for a small complex: a bitmask table when the
/// vertex count allows it, facet scans otherwise.
enum FaceLookup<'a> {
    Table(Vec<bool>),
    Scan(&'a SimplicialComplex),
}

impl<'a> FaceLookup<'a> {
    fn new(x: &'a SimplicialComplex) -> Result<Self> {
        let n = x.n_vertices();
        if n <= 16 {
            let mut table = vec![false; 1 << n];
            for bucket in x.faces_by_dim()? {
                for face in bucket {
                    table[face.to_mask() as usize] = true;
                }
            }
            Ok(FaceLookup::Table(table))
        } else {
            Ok(FaceLookup::Scan(x))
        }
    }

    /// Is `component + {v}` a face? `mask` is the component's bitmask when
    /// the table is in use.
    fn is_face_with(&self, mask: u64, component: &[VertexId], v: VertexId) -> bool {
        match self {
            FaceLookup::Table(table) => table[(mask | (1 << v)) as usize],
            FaceLookup::Scan(x) => {
                let mut verts = component.to_vec();
                verts.push(v);
                x.has_face(&Face::new(verts))
            }
        }
    }
}

/// The test space of a coloring: the join of the chessboard complexes
/// `chessboard(r, |C_i|)` over the color classes, labeled factor-major with
/// column-major boards, and carrying the simultaneous row-shift rotation.
pub fn test_space(coloring: &Coloring, r: usize) -> Result<LabeledJoinComplex> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("test space needs r >= 2, got {r}")));
    }
    let classes = coloring.classes();
    let boards: Vec<SimplicialComplex> = classes
        .iter()
        .map(|c| chessboard(r, c.len()))
        .collect::<Result<_>>()?;
    let joined = iterated_join(&boards)?;
    // Rotation: vertex (factor i, cell (row, col)) has copy = row and
    // slot = global column index.
    let mut labels = Vec::with_capacity(joined.n_vertices());
    let mut col_offset = 0usize;
    for class in classes {
        for col in 0..class.len() {
            for row in 0..r {
                labels.push((row, col_offset + col));
            }
        }
        col_offset += class.len();
    }
    Ok(LabeledJoinComplex {
        rotation: Some(Rotation { order: r, labels }),
        ..joined
    })
}

/// The relabeling exhibiting the identity between the r-fold 2-wise deleted
/// join of the rainbow subcomplex and the test space: deleted-join vertex
/// (copy j, original v) maps to the board cell (row j, column = position of
/// v inside its class) of the class(v)-th chessboard factor.
pub fn rainbow_join_relabeling(coloring: &Coloring, r: usize) -> Vec<VertexId> {
    let n = coloring.n_vertices();
    let classes = coloring.classes();
    let mut class_offset = vec![0usize; classes.len()];
    let mut acc = 0;
    for (i, c) in classes.iter().enumerate() {
        class_offset[i] = acc;
        acc += r * c.len();
    }
    let mut perm = vec![0usize; r * n];
    for j in 0..r {
        for v in 0..n {
            let class = coloring.color_of(v);
            let pos = coloring.position_in_class(v);
            perm[j * n + v] = class_offset[class] + pos * r + j;
        }
    }
    perm
}

/// A cyclic group action on a complex, given by the vertex permutation of
/// its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAction {
    order: usize,
    perm: Vec<VertexId>,
}

impl CyclicAction {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generator(&self) -> &[VertexId] {
        &self.perm
    }

    /// Permutation of the t-th power of the generator.
    pub fn power(&self, t: usize) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = (0..self.perm.len()).collect();
        for _ in 0..t {
            out = out.iter().map(|&v| self.perm[v]).collect();
        }
        out
    }

    pub fn apply_face(&self, face: &Face) -> Face {
        face.relabeled(&self.perm)
    }
}

/// Builds the cyclic shift on a join carrying rotation labels: the
/// generator sends the vertex labeled (copy j, slot s) to the vertex
/// labeled (copy j+1 mod r, slot s). Errors when the complex is not closed
/// under the shift, which signals a malformed construction.
pub fn cyclic_action(j: &LabeledJoinComplex) -> Result<CyclicAction> {
    let rotation = j.rotation().ok_or_else(|| {
        Error::InvalidParameter("complex carries no rotation labels".into())
    })?;
    let r = rotation.order;
    let mut by_label: HashMap<(usize, usize), VertexId> = HashMap::new();
    for (v, &(copy, slot)) in rotation.labels.iter().enumerate() {
        if copy >= r {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} has copy index {copy} outside 0..{r}"
            )));
        }
        if by_label.insert((copy, slot), v).is_some() {
            return Err(Error::InvalidParameter(format!(
                "duplicate rotation label ({copy}, {slot})"
            )));
        }
    }
    let mut perm = vec![0usize; j.n_vertices()];
    for (v, &(copy, slot)) in rotation.labels.iter().enumerate() {
        let target = by_label.get(&((copy + 1) % r, slot)).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "rotation labels are not a full grid: missing ({}, {slot})",
                (copy + 1) % r
            ))
        })?;
        perm[v] = *target;
    }
    let action = CyclicAction { order: r, perm };
    // Order must be exactly r on vertices.
    for t in 1..r {
        if action.power(t).iter().enumerate().all(|(v, &img)| v == img) {
            return Err(Error::InvalidParameter(format!(
                "generator has order {t}, expected {r}"
            )));
        }
    }
    if !action.power(r).iter().enumerate().all(|(v, &img)| v == img) {
        return Err(Error::InvalidParameter(format!("generator does not have order {r}")));
    }
    // Closure: the image of every facet must again be a face.
    for facet in j.complex().facets() {
        let image = action.apply_face(facet);
        if !j.complex().has_face(&image) {
            return Err(Error::ActionNotClosed { face: facet.vertices().to_vec() });
        }
    }
    Ok(action)
}

/// Result of a freeness check: either free, or a nonempty invariant face
/// together with the power of the generator fixing it setwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Freeness {
    Free,
    NotFree { face: Face, power: usize },
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }
}

/// Decides whether the action is free at the face level: no nonempty face
/// is setwise invariant under any nontrivial power of the generator. For
/// simplicial actions this coincides with point-level freeness.
///
/// A nonempty invariant face exists iff some vertex orbit under a power is
/// itself a face: any invariant face contains the full orbit of each of its
/// vertices, and faces are closed under subsets, so the orbit is then a
/// face (and is invariant). The check therefore tests every vertex orbit of
/// every nontrivial power; witnesses are reported with the smallest power
/// and smallest leading vertex.
pub fn is_free(j: &LabeledJoinComplex, action: &CyclicAction) -> Result<Freeness> {
    if action.generator().len() != j.n_vertices() {
        return Err(Error::InvalidParameter("action does not match complex".into()));
    }
    let r = action.order();
    for t in 1..r {
        let perm = action.power(t);
        for v in 0..j.n_vertices() {
            let mut orbit = vec![v];
            let mut w = perm[v];
            while w != v {
                orbit.push(w);
                w = perm[w];
            }
            if orbit.iter().min() != Some(&v) {
                continue; // each orbit once, from its least vertex
            }
            let face = Face::new(orbit);
            if j.complex().has_face(&face) {
                return Ok(Freeness::NotFree { face, power: t });
            }
        }
    }
    Ok(Freeness::Free)
}

/// Brute-force freeness check that walks every nonempty face of the complex
/// and every nontrivial power. Exponentially slower than [`is_free`]; kept
/// as an independent cross-check for tests and the verification battery.
pub fn is_free_exhaustive(j: &LabeledJoinComplex, action: &CyclicAction) -> Result<Freeness> {
    let r = action.order();
    let powers: Vec<Vec<VertexId>> = (1..r).map(|t| action.power(t)).collect();
    for bucket in j.complex().faces_by_dim()?.iter().skip(1) {
        for face in bucket {
            for (i, perm) in powers.iter().enumerate() {
                let image = face.relabeled(perm);
                if image == *face {
                    return Ok(Freeness::NotFree { face: face.clone(), power: i + 1 });
                }
            }
        }
    }
    Ok(Freeness::Free)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_of_two_spheres_is_four_cycle() {
        let s0 = SimplicialComplex::points(2);
        let j = join(&s0, &s0).unwrap();
        assert_eq!(j.complex().f_vector().unwrap(), vec![4, 4]);
        assert_eq!(j.complex().euler_characteristic().unwrap(), 0);
        // Edges connect the two factors only.
        for facet in j.complex().facets() {
            let factors: Vec<usize> =
                facet.vertices().iter().map(|&v| j.factor_of(v).0).collect();
            assert_eq!(factors, vec![0, 1]);
        }
    }

    #[test]
    fn cone_is_contractible() {
        let c = SimplicialComplex::cycle(5).unwrap();
        let point = SimplicialComplex::points(1);
        let cone = join(&c, &point).unwrap();
        assert_eq!(cone.complex().euler_characteristic().unwrap(), 1);
        assert_eq!(cone.complex().dim(), c.dim() + 1);
    }

    #[test]
    fn join_of_point_sets_is_complete_bipartite() {
        let three = SimplicialComplex::points(3);
        let j = join(&three, &three).unwrap();
        assert_eq!(j.complex().f_vector().unwrap(), vec![6, 9]);
    }

    #[test]
    fn chessboard_small_cases() {
        let b22 = chessboard(2, 2).unwrap();
        assert_eq!(b22.n_vertices(), 4);
        assert_eq!(
            b22.facets(),
            &[Face::new(vec![0, 3]), Face::new(vec![1, 2])]
        );

        let b23 = chessboard(2, 3).unwrap();
        assert_eq!(b23.f_vector().unwrap(), vec![6, 6]);

        let b34 = chessboard(3, 4).unwrap();
        assert_eq!(b34.f_vector().unwrap(), vec![12, 36, 24]);
        assert_eq!(b34.euler_characteristic().unwrap(), 0);
    }

    #[test]
    fn chessboard_dim_and_counts() {
        for r in 1..=4 {
            for k in 1..=4 {
                let b = chessboard(r, k).unwrap();
                assert_eq!(b.dim(), r.min(k) as isize - 1, "dim of {r}x{k}");
                assert_eq!(b.f_vector().unwrap()[0], r * k);
                assert_eq!(b.total_faces().unwrap() as u128, chessboard_face_count(r, k));
                assert_eq!(b.facets().len() as u128, chessboard_facet_count(r, k));
                // Transpose is isomorphic; same counts.
                assert_eq!(chessboard_face_count(r, k), chessboard_face_count(k, r));
            }
        }
    }

    #[test]
    fn deleted_join_of_point() {
        let dj = deleted_join(&SimplicialComplex::simplex(1), 2, 2).unwrap();
        assert_eq!(dj.complex().f_vector().unwrap(), vec![2]);
    }

    #[test]
    fn deleted_join_of_edge_is_four_cycle() {
        let dj = deleted_join(&SimplicialComplex::simplex(2), 2, 2).unwrap();
        assert_eq!(dj.complex().f_vector().unwrap(), vec![4, 4]);
        let b = crate::homology::betti(dj.complex(), 2).unwrap();
        assert_eq!(b.from_dim_zero(), vec![0, 1]);
    }

    #[test]
    fn deleted_join_of_simplex_is_full_transversal_join() {
        // Every assignment of original vertices to copies (or none) is a face.
        for (n, r) in [(2usize, 2usize), (3, 2), (3, 3), (2, 4)] {
            let dj = deleted_join(&SimplicialComplex::simplex(n), r, 2).unwrap();
            assert_eq!(dj.complex().total_faces().unwrap(), (r + 1).pow(n as u32));
            assert_eq!(dj.complex().facets().len(), r.pow(n as u32));
        }
    }

    #[test]
    fn deleted_join_l3_contains_l2() {
        let x = SimplicialComplex::from_facets(
            4,
            vec![Face::new(vec![0, 1, 2]), Face::new(vec![2, 3])],
        )
        .unwrap();
        let dj2 = deleted_join(&x, 3, 2).unwrap();
        let dj3 = deleted_join(&x, 3, 3).unwrap();
        for bucket in dj2.complex().faces_by_dim().unwrap() {
            for face in bucket {
                assert!(dj3.complex().has_face(face), "face {face:?} missing at l=3");
            }
        }
    }

    #[test]
    fn test_space_singletons_is_transversal_join() {
        let coloring = Coloring::new(vec![0, 1, 2]).unwrap();
        let k = test_space(&coloring, 3).unwrap();
        assert_eq!(k.complex().total_faces().unwrap(), 4usize.pow(3));
    }

    #[test]
    fn test_space_single_class_of_one() {
        let coloring = Coloring::new(vec![0]).unwrap();
        let k = test_space(&coloring, 2).unwrap();
        assert_eq!(k.complex().f_vector().unwrap(), vec![2]);
    }

    #[test]
    fn test_space_classes_two_one() {
        let coloring = Coloring::new(vec![0, 0, 1]).unwrap();
        let k = test_space(&coloring, 3).unwrap();
        // Join of the 3x2 and 3x1 boards.
        assert_eq!(k.complex().f_vector().unwrap(), vec![9, 24, 18]);
        assert_eq!(k.complex().euler_characteristic().unwrap(), 3);
    }

    #[test]
    fn relabeling_is_isomorphism_small() {
        for (colors, r) in [
            (vec![0usize, 1, 2], 2usize),
            (vec![0, 0, 1], 3),
            (vec![0, 1, 0, 2], 3),
            (vec![0, 1, 2, 3], 2),
        ] {
            let coloring = Coloring::new(colors.clone()).unwrap();
            let rainbow =
                crate::complex::rainbow_subcomplex(coloring.n_vertices(), &coloring).unwrap();
            let dj = deleted_join(&rainbow, r, 2).unwrap();
            let k = test_space(&coloring, r).unwrap();
            let perm = rainbow_join_relabeling(&coloring, r);
            let relabeled = dj.complex().relabeled(&perm).unwrap();
            assert_eq!(&relabeled, k.complex(), "colors {colors:?}, r={r}");
        }
    }

    #[test]
    fn cyclic_action_swap_on_two_copies() {
        let dj = deleted_join(&SimplicialComplex::points(2), 2, 2).unwrap();
        let action = cyclic_action(&dj).unwrap();
        assert_eq!(action.generator(), &[2, 3, 0, 1]);
        assert_eq!(action.power(2), vec![0, 1, 2, 3]);
    }

    #[test]
    fn cyclic_action_on_test_space_closes() {
        for colors in [vec![0usize, 0, 1], vec![0, 1, 2], vec![0, 0, 1, 1]] {
            let coloring = Coloring::new(colors).unwrap();
            for r in [2usize, 3] {
                let k = test_space(&coloring, r).unwrap();
                let action = cyclic_action(&k).unwrap();
                assert_eq!(action.order(), r);
                let id = action.power(r);
                assert!(id.iter().enumerate().all(|(v, &img)| v == img));
            }
        }
    }

    #[test]
    fn full_join_of_two_points_is_not_free() {
        let two = SimplicialComplex::points(2);
        let mut j = iterated_join(&[two.clone(), two]).unwrap();
        j.rotation = Some(Rotation {
            order: 2,
            labels: vec![(0, 0), (0, 1), (1, 0), (1, 1)],
        });
        let action = cyclic_action(&j).unwrap();
        let freeness = is_free(&j, &action).unwrap();
        assert_eq!(
            freeness,
            Freeness::NotFree { face: Face::new(vec![0, 2]), power: 1 }
        );
        assert_eq!(is_free_exhaustive(&j, &action).unwrap(), freeness);
    }

    #[test]
    fn deleted_joins_are_free() {
        for (n, r) in [(3usize, 2usize), (3, 3), (4, 3), (3, 4), (2, 5)] {
            let dj = deleted_join(&SimplicialComplex::simplex(n), r, 2).unwrap();
            let action = cyclic_action(&dj).unwrap();
            assert!(is_free(&dj, &action).unwrap().is_free(), "n={n} r={r}");
            assert!(is_free_exhaustive(&dj, &action).unwrap().is_free(), "n={n} r={r}");
        }
    }

    #[test]
    fn test_space_actions_are_free() {
        for colors in [vec![0usize, 1], vec![0, 0, 1], vec![0, 1, 1, 2]] {
            let coloring = Coloring::new(colors).unwrap();
            for r in [2usize, 3, 5] {
                let k = test_space(&coloring, r).unwrap();
                let action = cyclic_action(&k).unwrap();
                assert!(is_free(&k, &action).unwrap().is_free());
                assert!(is_free_exhaustive(&k, &action).unwrap().is_free());
            }
        }
    }
}
