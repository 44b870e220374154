//! Finite abstract simplicial complexes.
//!
//! A complex stores its vertex count and its inclusion-maximal faces
//! (facets); the face set is the downward closure of the facets and is
//! computed on demand, memoized, and guarded against combinatorial blowup.
//! The empty face is a first-class face of every complex, which is what
//! reduced homology and the join formulas expect.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::guard::GuardCounter;

/// Index of a vertex inside its owning complex.
pub type VertexId = usize;

/// A face: a strictly increasing list of vertex ids. The empty list is the
/// empty face, of dimension -1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(Vec<VertexId>);

impl Face {
    /// Builds a face from a vertex list in any order.
    ///
    /// # Panics
    /// Panics if the list contains duplicates.
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        assert!(
            vertices.windows(2).all(|w| w[0] < w[1]),
            "face vertices must be distinct: {vertices:?}"
        );
        Face(vertices)
    }

    /// The empty face.
    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Dimension: number of vertices minus one; -1 for the empty face.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True iff every vertex of `self` is a vertex of `other`.
    pub fn is_subset_of(&self, other: &Face) -> bool {
        subset_of(&self.0, &other.0)
    }

    /// Face with the vertex at position `i` removed.
    pub fn without_index(&self, i: usize) -> Face {
        let mut v = self.0.clone();
        v.remove(i);
        Face(v)
    }

    /// Union of two faces with disjoint or overlapping vertex sets.
    pub fn union(&self, other: &Face) -> Face {
        let mut v: Vec<VertexId> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    /// Applies a vertex relabeling (`perm[old] = new`).
    pub fn relabeled(&self, perm: &[VertexId]) -> Face {
        Face::new(self.0.iter().map(|&v| perm[v]).collect())
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    /// Bitmask representation; only valid when all vertex ids are < 64.
    pub(crate) fn to_mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }

    pub(crate) fn from_mask(mut mask: u64) -> Self {
        let mut v = Vec::with_capacity(mask.count_ones() as usize);
        while mask != 0 {
            let b = mask.trailing_zeros() as usize;
            v.push(b);
            mask &= mask - 1;
        }
        Face(v)
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn subset_of(a: &[VertexId], b: &[VertexId]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// A finite abstract simplicial complex: a vertex count plus the list of
/// inclusion-maximal faces. The face set is the downward closure of the
/// facets. Facets are stored in canonical (lexicographic) order.
///
/// Values are immutable after construction; the memoized closure is
/// synchronized, so complexes can be shared read-only across threads.
pub struct SimplicialComplex {
    n_vertices: usize,
    facets: Vec<Face>,
    closure: OnceLock<Result<Vec<Vec<Face>>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            n_vertices: self.n_vertices,
            facets: self.facets.clone(),
            closure: OnceLock::new(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("n_vertices", &self.n_vertices)
            .field("facets", &self.facets)
            .finish()
    }
}

impl SimplicialComplex {
    /// Builds a complex from an arbitrary list of generating faces.
    /// Dominated faces are dropped, so `facets()` is always the set of
    /// inclusion-maximal faces in lexicographic order.
    pub fn from_facets(n_vertices: usize, faces: Vec<Face>) -> Result<Self> {
        for face in &faces {
            if let Some(&v) = face.vertices().last() {
                if v >= n_vertices {
                    return Err(Error::InvalidComplex(format!(
                        "facet {face:?} references vertex {v} but the complex has {n_vertices} vertices"
                    )));
                }
            }
        }
        let mut facets: Vec<Face> = faces;
        facets.sort();
        facets.dedup();
        // Keep only inclusion-maximal faces.
        let mut maximal: Vec<Face> = Vec::with_capacity(facets.len());
        for (i, f) in facets.iter().enumerate() {
            let dominated = facets
                .iter()
                .enumerate()
                .any(|(j, g)| i != j && f.len() < g.len() && f.is_subset_of(g));
            if !dominated {
                maximal.push(f.clone());
            }
        }
        Ok(SimplicialComplex {
            n_vertices,
            facets: maximal,
            closure: OnceLock::new(),
        })
    }

    /// The full simplex on `n` vertices (the (n-1)-simplex).
    pub fn simplex(n: usize) -> Self {
        let facet = Face::from_sorted_unchecked((0..n).collect());
        SimplicialComplex {
            n_vertices: n,
            facets: if n == 0 { vec![] } else { vec![facet] },
            closure: OnceLock::new(),
        }
    }

    /// `n` isolated vertices (a 0-dimensional complex).
    pub fn points(n: usize) -> Self {
        SimplicialComplex {
            n_vertices: n,
            facets: (0..n).map(|v| Face::from_sorted_unchecked(vec![v])).collect(),
            closure: OnceLock::new(),
        }
    }

    /// The cycle graph on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs >= 3 vertices, got {n}")));
        }
        let facets = (0..n)
            .map(|i| Face::new(vec![i, (i + 1) % n]))
            .collect();
        SimplicialComplex::from_facets(n, facets)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Dimension of the complex: the maximal facet dimension, or -1 when
    /// the only face is the empty one.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    /// True iff `face` is a face of the complex, i.e. contained in a facet.
    /// The empty face belongs to every complex.
    pub fn has_face(&self, face: &Face) -> bool {
        face.is_empty() || self.facets.iter().any(|f| face.is_subset_of(f))
    }

    /// The full face list by dimension: entry `t` holds the faces of
    /// dimension `t - 1`, each list lexicographically sorted. Entry 0 is
    /// always `[empty face]`. Memoized; guarded.
    pub fn faces_by_dim(&self) -> Result<&[Vec<Face>]> {
        let r = self.closure.get_or_init(|| self.compute_closure());
        match r {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    fn compute_closure(&self) -> Result<Vec<Vec<Face>>> {
        let mut guard = GuardCounter::new();
        let top = (self.dim() + 1) as usize;
        let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
        if self.n_vertices <= 64 {
            let mut seen: HashSet<u64> = HashSet::new();
            guard.tick()?;
            seen.insert(0);
            for facet in &self.facets {
                let m = facet.to_mask();
                // Enumerate all submasks of the facet.
                let mut sub = m;
                loop {
                    if seen.insert(sub) {
                        guard.tick()?;
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & m;
                }
            }
            for mask in seen {
                let face = Face::from_mask(mask);
                by_dim[face.len()].push(face);
            }
        } else {
            let mut seen: HashSet<Face> = HashSet::new();
            guard.tick()?;
            seen.insert(Face::empty());
            for facet in &self.facets {
                let verts = facet.vertices();
                let k = verts.len();
                // All subsets via binary counters; facets above 63 vertices
                // are past desk scale and the guard rejects them anyway.
                if k > 63 {
                    return Err(Error::FaceGuardExceeded { limit: crate::guard::face_guard() });
                }
                for bits in 1u64..(1u64 << k) {
                    let mut sub = Vec::with_capacity(bits.count_ones() as usize);
                    for (i, &v) in verts.iter().enumerate() {
                        if bits & (1 << i) != 0 {
                            sub.push(v);
                        }
                    }
                    if seen.insert(Face::from_sorted_unchecked(sub)) {
                        guard.tick()?;
                    }
                }
            }
            for face in seen {
                by_dim[face.len()].push(face);
            }
        }
        for bucket in &mut by_dim {
            bucket.sort();
        }
        Ok(by_dim)
    }

    /// All faces of exactly the given dimension, lexicographically sorted.
    /// `dim = -1` yields the empty face; out-of-range dimensions yield an
    /// empty list.
    pub fn faces_of(&self, dim: isize) -> Result<Vec<Face>> {
        if dim < -1 || dim > self.dim() {
            return Ok(Vec::new());
        }
        let by_dim = self.faces_by_dim()?;
        Ok(by_dim[(dim + 1) as usize].clone())
    }

    /// Number of faces including the empty face.
    pub fn total_faces(&self) -> Result<usize> {
        Ok(self.faces_by_dim()?.iter().map(|b| b.len()).sum())
    }

    /// f-vector: `f[i]` is the number of i-dimensional faces, for i >= 0.
    pub fn f_vector(&self) -> Result<Vec<usize>> {
        let by_dim = self.faces_by_dim()?;
        Ok(by_dim[1..].iter().map(|b| b.len()).collect())
    }

    /// Euler characteristic from the f-vector (empty face not counted).
    pub fn euler_characteristic(&self) -> Result<i64> {
        let f = self.f_vector()?;
        Ok(f.iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum())
    }

    /// Applies a vertex bijection (`perm[old] = new`) and re-canonicalizes.
    pub fn relabeled(&self, perm: &[VertexId]) -> Result<SimplicialComplex> {
        if perm.len() != self.n_vertices {
            return Err(Error::InvalidParameter(format!(
                "relabeling has {} entries for {} vertices",
                perm.len(),
                self.n_vertices
            )));
        }
        let mut check: Vec<bool> = vec![false; self.n_vertices];
        for &img in perm {
            if img >= self.n_vertices || check[img] {
                return Err(Error::InvalidParameter("relabeling is not a bijection".into()));
            }
            check[img] = true;
        }
        let facets = self.facets.iter().map(|f| f.relabeled(perm)).collect();
        SimplicialComplex::from_facets(self.n_vertices, facets)
    }
}

/// A partition of the vertex set `0..n` into color classes. Colors are
/// contiguous indices `0..=max`, each used at least once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    color_of: Vec<usize>,
    classes: Vec<Vec<VertexId>>,
}

impl Coloring {
    pub fn new(color_of: Vec<usize>) -> Result<Self> {
        if color_of.is_empty() {
            return Err(Error::InvalidColoring("coloring of zero vertices".into()));
        }
        let m = *color_of.iter().max().unwrap();
        let mut classes: Vec<Vec<VertexId>> = vec![Vec::new(); m + 1];
        for (v, &c) in color_of.iter().enumerate() {
            classes[c].push(v);
        }
        if let Some(c) = classes.iter().position(|cl| cl.is_empty()) {
            return Err(Error::InvalidColoring(format!("color {c} is unused")));
        }
        Ok(Coloring { color_of, classes })
    }

    pub fn n_vertices(&self) -> usize {
        self.color_of.len()
    }

    pub fn n_colors(&self) -> usize {
        self.classes.len()
    }

    pub fn color_of(&self, v: VertexId) -> usize {
        self.color_of[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.color_of
    }

    /// Color classes; class `i` lists its vertices in increasing order.
    pub fn classes(&self) -> &[Vec<VertexId>] {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }

    /// Position of `v` inside its own color class.
    pub fn position_in_class(&self, v: VertexId) -> usize {
        self.classes[self.color_of[v]]
            .binary_search(&v)
            .expect("vertex is in its class")
    }
}

/// True iff no two vertices of the face share a color. The empty face is
/// rainbow vacuously.
pub fn is_rainbow(face: &Face, coloring: &Coloring) -> bool {
    let mut seen = vec![false; coloring.n_colors()];
    for &v in face.vertices() {
        let c = coloring.color_of(v);
        if seen[c] {
            return false;
        }
        seen[c] = true;
    }
    true
}

/// The subcomplex of rainbow faces on `0..n_vertices`: the join of the
/// color classes viewed as 0-dimensional complexes. Its facets are the
/// transversals picking exactly one vertex per class.
pub fn rainbow_subcomplex(n_vertices: usize, coloring: &Coloring) -> Result<SimplicialComplex> {
    if coloring.n_vertices() != n_vertices {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} vertices, complex has {}",
            coloring.n_vertices(),
            n_vertices
        )));
    }
    let classes = coloring.classes();
    let guard = GuardCounter::new();
    let n_facets: usize = classes.iter().map(|c| c.len()).try_fold(1usize, |acc, k| {
        acc.checked_mul(k)
            .ok_or(Error::FaceGuardExceeded { limit: crate::guard::face_guard() })
    })?;
    guard.check_total(n_facets)?;
    let mut facets = vec![Vec::new()];
    for class in classes {
        let mut next = Vec::with_capacity(facets.len() * class.len());
        for partial in &facets {
            for &v in class {
                let mut f: Vec<VertexId> = partial.clone();
                f.push(v);
                next.push(f);
            }
        }
        facets = next;
    }
    SimplicialComplex::from_facets(n_vertices, facets.into_iter().map(Face::new).collect())
}

/// HashMap-backed face index used when building boundary matrices.
pub(crate) fn index_faces(faces: &[Face]) -> HashMap<&Face, usize> {
    faces.iter().enumerate().map(|(i, f)| (f, i)).collect()
}

/// All colorings of `n` vertices up to renaming of colors (one canonical
/// representative per set partition, as a restricted-growth string), with
/// every class of size at most `max_class_size`.
pub fn all_colorings(n: usize, max_class_size: usize) -> Vec<Coloring> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let ok = {
            let mut counts: Vec<usize> = Vec::new();
            for &c in &rgs {
                if c >= counts.len() {
                    counts.resize(c + 1, 0);
                }
                counts[c] += 1;
            }
            counts.iter().all(|&s| s <= max_class_size)
        };
        if ok {
            out.push(Coloring::new(rgs.clone()).expect("RGS strings are valid colorings"));
        }
        if !next_restricted_growth(&mut rgs) {
            break;
        }
    }
    out
}

/// Advances a restricted-growth string to the next set partition in
/// lexicographic order; returns false after the last one.
fn next_restricted_growth(rgs: &mut [usize]) -> bool {
    let n = rgs.len();
    for i in (1..n).rev() {
        let max_prev = rgs[..i].iter().copied().max().unwrap();
        if rgs[i] <= max_prev {
            rgs[i] += 1;
            for x in rgs[i + 1..].iter_mut() {
                *x = 0;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn faces_as_vecs(faces: &[Face]) -> Vec<Vec<usize>> {
        faces.iter().map(|f| f.vertices().to_vec()).collect()
    }

    #[test]
    fn faces_of_full_triangle() {
        let c = SimplicialComplex::simplex(3);
        assert_eq!(
            faces_as_vecs(&c.faces_of(1).unwrap()),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
    }

    #[test]
    fn empty_face_always_present() {
        let c = SimplicialComplex::points(4);
        assert_eq!(c.faces_of(-1).unwrap(), vec![Face::empty()]);
        let big = SimplicialComplex::simplex(5);
        assert_eq!(big.faces_of(-1).unwrap(), vec![Face::empty()]);
    }

    #[test]
    fn faces_of_out_of_range_is_empty() {
        let c = SimplicialComplex::simplex(3);
        assert!(c.faces_of(3).unwrap().is_empty());
        assert!(c.faces_of(-2).unwrap().is_empty());
    }

    #[test]
    fn six_cycle_edges() {
        let c = SimplicialComplex::cycle(6).unwrap();
        let edges = c.faces_of(1).unwrap();
        assert_eq!(edges.len(), 6);
        assert_eq!(c.f_vector().unwrap(), vec![6, 6]);
        assert_eq!(c.euler_characteristic().unwrap(), 0);
    }

    #[test]
    fn full_simplex_is_contractible_chi() {
        for k in 1..=6 {
            let c = SimplicialComplex::simplex(k);
            assert_eq!(c.euler_characteristic().unwrap(), 1, "simplex on {k} vertices");
        }
    }

    #[test]
    fn rainbow_basic() {
        let col = Coloring::new(vec![0, 1]).unwrap();
        assert!(is_rainbow(&Face::new(vec![0, 1]), &col));
        let same = Coloring::new(vec![0, 0]).unwrap();
        assert!(!is_rainbow(&Face::new(vec![0, 1]), &same));
        assert!(is_rainbow(&Face::empty(), &same));
    }

    #[test]
    fn rainbow_subcomplex_two_classes() {
        let col = Coloring::new(vec![0, 0, 1]).unwrap();
        let r = rainbow_subcomplex(3, &col).unwrap();
        assert_eq!(
            faces_as_vecs(r.facets()),
            vec![vec![0, 2], vec![1, 2]]
        );
    }

    #[test]
    fn rainbow_subcomplex_all_distinct_is_simplex() {
        let col = Coloring::new(vec![0, 1, 2]).unwrap();
        let r = rainbow_subcomplex(3, &col).unwrap();
        assert_eq!(r, SimplicialComplex::simplex(3));
    }

    #[test]
    fn rainbow_subcomplex_four_cycle() {
        let col = Coloring::new(vec![0, 0, 1, 1]).unwrap();
        let r = rainbow_subcomplex(4, &col).unwrap();
        assert_eq!(
            faces_as_vecs(r.facets()),
            vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]
        );
    }

    #[test]
    fn rainbow_face_count_formula() {
        // Product formula over all colorings of up to 8 vertices.
        for n in 1..=8 {
            for coloring in all_colorings(n, n) {
                let r = rainbow_subcomplex(n, &coloring).unwrap();
                let expected: usize =
                    coloring.class_sizes().iter().map(|&s| s + 1).product::<usize>() - 1;
                let nonempty = r.total_faces().unwrap() - 1;
                assert_eq!(nonempty, expected, "coloring {:?}", coloring.colors());
            }
        }
    }

    #[test]
    fn coloring_enumeration_counts() {
        // Bell numbers for unrestricted class sizes.
        assert_eq!(all_colorings(1, 1).len(), 1);
        assert_eq!(all_colorings(3, 3).len(), 5);
        assert_eq!(all_colorings(5, 5).len(), 52);
        // Involution numbers when classes are capped at two.
        assert_eq!(all_colorings(4, 2).len(), 10);
        assert_eq!(all_colorings(6, 2).len(), 76);
        // Singleton-only colorings.
        assert_eq!(all_colorings(7, 1).len(), 1);
    }

    #[test]
    fn downward_closure() {
        let c = SimplicialComplex::from_facets(
            5,
            vec![Face::new(vec![0, 1, 2]), Face::new(vec![2, 3]), Face::new(vec![4])],
        )
        .unwrap();
        for d in -1..=c.dim() {
            for face in c.faces_of(d).unwrap() {
                for i in 0..face.len() {
                    assert!(c.has_face(&face.without_index(i)));
                }
            }
        }
    }

    #[test]
    fn facets_drop_dominated() {
        let c = SimplicialComplex::from_facets(
            3,
            vec![Face::new(vec![0, 1]), Face::new(vec![0]), Face::new(vec![0, 1, 2])],
        )
        .unwrap();
        assert_eq!(c.facets(), &[Face::new(vec![0, 1, 2])]);
    }

    #[test]
    fn guard_aborts_runaway_closure() {
        let prev = crate::guard::set_face_guard(100);
        let c = SimplicialComplex::simplex(10); // 1024 faces > 100
        let err = c.faces_by_dim().unwrap_err();
        assert_eq!(err, Error::FaceGuardExceeded { limit: 100 });
        crate::guard::set_face_guard(prev);
    }
}
