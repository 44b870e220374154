//! Exact-rational verification of colored Tverberg partitions.
//!
//! Configurations are rational point sets with a coloring; maps are affine
//! (determined by vertex images) into Euclidean d-space, or piecewise
//! linear into the flat torus R^d/Z^d via lifts in [0,1)^d. Searches
//! enumerate candidate partitions exhaustively and certify every answer
//! with exact arithmetic: a FOUND comes with barycentric coefficients that
//! re-verify by substitution, a NONE is produced only after the full
//! candidate space has been enumerated.
//!
//! Torus translate bound: all lifts lie in [0,1)^d, so each part's convex
//! hull lies in [0,1]^d. If x is a common point of the translated hulls
//! with the first translate fixed at zero, then x is in [0,1]^d and
//! x - t_i is in [0,1]^d for every other part, hence every coordinate of
//! t_i lies in [-1,1]; integer translates outside {-1,0,1}^d separate the
//! hulls and need not be searched.

pub mod bruteforce;
pub mod lp;
pub mod tightness;

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_traits::{Signed, Zero};

use crate::complex::{is_rainbow, Coloring, Face};
use crate::error::{Error, Result};
use crate::rational::{is_in_unit_interval, rat, Rational};

pub use tightness::{find_tightness_witness, TightnessOutcome};

/// Target space of the verified map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Affine maps to R^d.
    Euclidean,
    /// Piecewise-linear maps to the flat torus R^d/Z^d, points given as
    /// lifts in [0,1)^d.
    Torus,
}

/// A colored configuration: one rational point per vertex of the simplex,
/// a coloring of the vertices, and the search parameters (d, r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredConfiguration {
    d: usize,
    r: usize,
    points: Vec<Vec<Rational>>,
    coloring: Coloring,
    target: Target,
}

impl ColoredConfiguration {
    pub fn new(
        d: usize,
        r: usize,
        points: Vec<Vec<Rational>>,
        coloring: Coloring,
        target: Target,
    ) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParameter("configuration needs d >= 1".into()));
        }
        if r < 2 {
            return Err(Error::InvalidParameter("configuration needs r >= 2".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidParameter("configuration has no points".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: p.len() });
            }
            if target == Target::Torus {
                for (k, x) in p.iter().enumerate() {
                    if !is_in_unit_interval(x) {
                        return Err(Error::LiftOutOfRange { point: i, coord: k });
                    }
                }
            }
        }
        if coloring.n_vertices() != points.len() {
            return Err(Error::InvalidColoring(format!(
                "coloring covers {} vertices, configuration has {} points",
                coloring.n_vertices(),
                points.len()
            )));
        }
        Ok(ColoredConfiguration { d, r, points, coloring, target })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_integer_points(
        d: usize,
        r: usize,
        points: &[&[i64]],
        colors: &[usize],
        target: Target,
    ) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| p.iter().map(|&x| rat(x)).collect())
            .collect();
        ColoredConfiguration::new(d, r, pts, Coloring::new(colors.to_vec())?, target)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n_vertices(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn target(&self) -> Target {
        self.target
    }

    /// Violations of the tight-theorem hypotheses. The search stays
    /// meaningful without them (tightness experiments violate the class
    /// bound on purpose), so these warn instead of aborting.
    pub fn hypothesis_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        let n_expected = (self.d + 1) * (self.r - 1) + 1;
        if self.n_vertices() != n_expected {
            warnings.push(format!(
                "expected N+1 = (d+1)(r-1)+1 = {n_expected} points for d={}, r={}, got {}",
                self.d,
                self.r,
                self.n_vertices()
            ));
        }
        for (i, class) in self.coloring.classes().iter().enumerate() {
            if class.len() > self.r - 1 {
                warnings.push(format!(
                    "color class {i} has {} vertices, above the tight bound r-1 = {}",
                    class.len(),
                    self.r - 1
                ));
            }
        }
        warnings
    }
}

/// An exact witness that r convex hulls share a point: the common point and
/// the barycentric coefficients realizing it inside each hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullWitness {
    pub point: Vec<Rational>,
    pub coefficients: Vec<Vec<Rational>>,
}

/// Finds an exact common point of the convex hulls of the given point sets.
///
/// Feasibility of the system
///   sum_j l_ij = 1 for every i,  sum_j l_0j p_0j = sum_j l_ij p_ij,  l >= 0
/// is decided by the exact phase-one simplex with Bland's rule; the
/// returned point is the basic solution that pivot sequence reaches, so the
/// output is deterministic for a fixed input order.
pub fn intersect_hulls(point_sets: &[Vec<Vec<Rational>>]) -> Result<Option<HullWitness>> {
    if point_sets.is_empty() {
        return Err(Error::InvalidParameter("no point sets".into()));
    }
    let d = point_sets[0]
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty point set".into()))?
        .len();
    for set in point_sets {
        if set.is_empty() {
            return Err(Error::InvalidParameter("empty point set".into()));
        }
        for p in set {
            if p.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: p.len() });
            }
        }
    }
    let r = point_sets.len();
    let n_vars: usize = point_sets.iter().map(|s| s.len()).sum();
    let offsets: Vec<usize> = point_sets
        .iter()
        .scan(0usize, |acc, s| {
            let o = *acc;
            *acc += s.len();
            Some(o)
        })
        .collect();

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(r + d * (r - 1));
    let mut rhs: Vec<Rational> = Vec::with_capacity(r + d * (r - 1));
    for (i, set) in point_sets.iter().enumerate() {
        let mut row = vec![rat(0); n_vars];
        for j in 0..set.len() {
            row[offsets[i] + j] = rat(1);
        }
        rows.push(row);
        rhs.push(rat(1));
    }
    for i in 1..r {
        for k in 0..d {
            let mut row = vec![rat(0); n_vars];
            for (j, p) in point_sets[0].iter().enumerate() {
                row[offsets[0] + j] = p[k].clone();
            }
            for (j, p) in point_sets[i].iter().enumerate() {
                row[offsets[i] + j] = -p[k].clone();
            }
            rows.push(row);
            rhs.push(rat(0));
        }
    }

    let Some(lambda) = lp::equality_feasible(&rows, &rhs) else {
        return Ok(None);
    };
    let coefficients: Vec<Vec<Rational>> = point_sets
        .iter()
        .enumerate()
        .map(|(i, set)| lambda[offsets[i]..offsets[i] + set.len()].to_vec())
        .collect();
    let mut point = vec![rat(0); d];
    for (j, p) in point_sets[0].iter().enumerate() {
        for k in 0..d {
            point[k] += &coefficients[0][j] * &p[k];
        }
    }
    Ok(Some(HullWitness { point, coefficients }))
}

/// Exact bounding boxes: if the coordinate ranges of the sets do not all
/// overlap, the hulls cannot intersect. A cheap sound prefilter before the
/// simplex runs.
fn boxes_intersect(point_sets: &[Vec<Vec<Rational>>]) -> bool {
    let d = point_sets[0][0].len();
    for k in 0..d {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for set in point_sets {
            let mut set_lo = set[0][k].clone();
            let mut set_hi = set[0][k].clone();
            for p in &set[1..] {
                if p[k] < set_lo {
                    set_lo = p[k].clone();
                }
                if p[k] > set_hi {
                    set_hi = p[k].clone();
                }
            }
            lo = Some(match lo {
                None => set_lo,
                Some(cur) => cur.max(set_lo),
            });
            hi = Some(match hi {
                None => set_hi,
                Some(cur) => cur.min(set_hi),
            });
        }
        if lo.unwrap() > hi.unwrap() {
            return false;
        }
    }
    true
}

/// Searches integer translate tuples (t_1 = 0, other t_i in {-1,0,1}^d, in
/// ascending lexicographic order) for one that makes the translated hulls
/// of the lift sets intersect. Returns the first hit with its exact common
/// point, or None only after all 3^(d(r-1)) tuples have failed.
pub fn torus_intersect(
    point_sets: &[Vec<Vec<Rational>>],
) -> Result<Option<(HullWitness, Vec<Vec<i64>>)>> {
    if point_sets.is_empty() {
        return Err(Error::InvalidParameter("no point sets".into()));
    }
    let d = point_sets[0]
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty point set".into()))?
        .len();
    let mut flat_index = 0usize;
    for set in point_sets {
        for p in set {
            if p.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: p.len() });
            }
            for (k, x) in p.iter().enumerate() {
                if !is_in_unit_interval(x) {
                    return Err(Error::LiftOutOfRange { point: flat_index, coord: k });
                }
            }
            flat_index += 1;
        }
    }
    let r = point_sets.len();
    let slots = d * (r - 1);
    // Base-3 counter over {-1,0,1}^slots, ascending lexicographically.
    let mut digits = vec![0usize; slots];
    loop {
        let translates: Vec<Vec<i64>> = std::iter::once(vec![0i64; d])
            .chain((0..r - 1).map(|i| {
                (0..d).map(|k| digits[i * d + k] as i64 - 1).collect()
            }))
            .collect();
        let translated: Vec<Vec<Vec<Rational>>> = point_sets
            .iter()
            .enumerate()
            .map(|(i, set)| {
                set.iter()
                    .map(|p| {
                        p.iter()
                            .enumerate()
                            .map(|(k, x)| x + rat(translates[i][k]))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        if boxes_intersect(&translated) {
            if let Some(witness) = intersect_hulls(&translated)? {
                return Ok(Some((witness, translates)));
            }
        }
        // Next tuple.
        let mut pos = slots;
        loop {
            if pos == 0 {
                return Ok(None);
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

/// A certified colored Tverberg partition: r pairwise-disjoint nonempty
/// rainbow faces, the exact common point of their (translated) hulls, and
/// the barycentric coefficients proving membership part by part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TverbergPartition {
    pub parts: Vec<Face>,
    pub witness: Vec<Rational>,
    pub coefficients: Vec<Vec<Rational>>,
    /// Torus only: integer translate per part, first translate zero.
    /// Empty for Euclidean targets.
    pub translates: Vec<Vec<i64>>,
}

impl TverbergPartition {
    /// Re-verifies the certificate by direct substitution: parts disjoint,
    /// nonempty and rainbow; coefficients nonnegative, summing to one, and
    /// reproducing the witness inside every translated hull.
    pub fn verify(&self, config: &ColoredConfiguration) -> std::result::Result<(), String> {
        if self.parts.len() != config.r() {
            return Err(format!("expected {} parts, got {}", config.r(), self.parts.len()));
        }
        let mut used = vec![false; config.n_vertices()];
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(format!("part {i} is empty"));
            }
            for &v in part.vertices() {
                if v >= config.n_vertices() {
                    return Err(format!("part {i} references vertex {v}"));
                }
                if used[v] {
                    return Err(format!("vertex {v} appears in two parts"));
                }
                used[v] = true;
            }
            if !is_rainbow(part, config.coloring()) {
                return Err(format!("part {i} is not rainbow"));
            }
        }
        match config.target() {
            Target::Euclidean => {
                if !self.translates.is_empty() {
                    return Err("euclidean partition carries translates".into());
                }
            }
            Target::Torus => {
                if self.translates.len() != config.r() {
                    return Err("torus partition needs one translate per part".into());
                }
                if self.translates[0].iter().any(|&t| t != 0) {
                    return Err("first translate must be zero".into());
                }
                for t in &self.translates {
                    if t.len() != config.d() || t.iter().any(|&x| !(-1..=1).contains(&x)) {
                        return Err("translate outside {-1,0,1}^d".into());
                    }
                }
            }
        }
        if self.witness.len() != config.d() {
            return Err("witness has wrong dimension".into());
        }
        if self.coefficients.len() != self.parts.len() {
            return Err("coefficient blocks do not match parts".into());
        }
        for (i, (part, coeffs)) in self.parts.iter().zip(&self.coefficients).enumerate() {
            if coeffs.len() != part.len() {
                return Err(format!("part {i}: coefficient count mismatch"));
            }
            if coeffs.iter().any(|c| c.is_negative()) {
                return Err(format!("part {i}: negative coefficient"));
            }
            let total: Rational = coeffs.iter().cloned().fold(rat(0), |s, c| s + c);
            if total != rat(1) {
                return Err(format!("part {i}: coefficients sum to {total}, not 1"));
            }
            for k in 0..config.d() {
                let mut acc = rat(0);
                for (&v, c) in part.vertices().iter().zip(coeffs) {
                    acc += c * &config.points()[v][k];
                }
                if let Some(t) = self.translates.get(i) {
                    acc += rat(t[k]);
                }
                if acc != self.witness[k] {
                    return Err(format!(
                        "part {i}: witness coordinate {k} is {}, hull combination gives {acc}",
                        self.witness[k]
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of a partition search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(TverbergPartition),
    None,
}

/// Result of a partition search. A NONE outcome is a certificate: it is
/// only emitted when the enumeration was exhaustive.
#[derive(Clone, Debug)]
pub struct TverbergReport {
    pub outcome: Outcome,
    pub partitions_examined: u64,
    pub exhaustive: bool,
    pub warnings: Vec<String>,
}

impl TverbergReport {
    pub fn found(&self) -> Option<&TverbergPartition> {
        match &self.outcome {
            Outcome::Found(p) => Some(p),
            Outcome::None => None,
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self.outcome, Outcome::None)
    }
}

/// Tests one complete candidate assignment. Returns the certified partition
/// when the (translated) hulls intersect.
fn test_candidate(
    config: &ColoredConfiguration,
    labels: &[u8],
) -> Result<Option<TverbergPartition>> {
    let r = config.r();
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); r];
    for (v, &l) in labels.iter().enumerate() {
        if l > 0 {
            parts[(l - 1) as usize].push(v);
        }
    }
    let point_sets: Vec<Vec<Vec<Rational>>> = parts
        .iter()
        .map(|part| part.iter().map(|&v| config.points()[v].clone()).collect())
        .collect();
    let faces: Vec<Face> = parts
        .iter()
        .map(|p| Face::from_sorted_unchecked(p.clone()))
        .collect();
    match config.target() {
        Target::Euclidean => {
            if !boxes_intersect(&point_sets) {
                return Ok(None);
            }
            Ok(intersect_hulls(&point_sets)?.map(|w| TverbergPartition {
                parts: faces,
                witness: w.point,
                coefficients: w.coefficients,
                translates: vec![],
            }))
        }
        Target::Torus => Ok(torus_intersect(&point_sets)?.map(|(w, translates)| {
            TverbergPartition {
                parts: faces,
                witness: w.point,
                coefficients: w.coefficients,
                translates,
            }
        })),
    }
}

/// Candidate enumerator: assigns vertices 0..n to {unused, part 1..r} in
/// lexicographic order of the assignment vector. Parts are unordered, so
/// the enumeration is canonicalized by restricted growth (a vertex may only
/// open part i+1 once parts 1..i are nonempty), which forces
/// min(part 1) < min(part 2) < ... < min(part r). Non-rainbow assignments
/// are pruned as soon as they arise. The callback sees every complete
/// candidate (all parts nonempty) and may stop the walk.
struct Enumerator<'a> {
    config: &'a ColoredConfiguration,
    labels: Vec<u8>,
    /// Per part, bitmask of colors present.
    part_colors: Vec<u64>,
    opened: usize,
}

impl<'a> Enumerator<'a> {
    fn new(config: &'a ColoredConfiguration) -> Self {
        Enumerator {
            config,
            labels: vec![0; config.n_vertices()],
            part_colors: vec![0; config.r()],
            opened: 0,
        }
    }

    /// Replays a prefix of assignments; returns false if the prefix is
    /// internally inconsistent (never happens for generated prefixes).
    fn load_prefix(&mut self, prefix: &[u8]) {
        for (v, &l) in prefix.iter().enumerate() {
            self.labels[v] = l;
            if l > 0 {
                let part = (l - 1) as usize;
                if part + 1 > self.opened {
                    self.opened = part + 1;
                }
                self.part_colors[part] |= 1u64 << self.config.coloring().color_of(v);
            }
        }
    }

    /// Walks all completions of the current assignment from vertex `v` on.
    /// `visit` returns ControlFlow::Break to stop the walk.
    fn walk<F>(&mut self, v: usize, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[u8]) -> Result<ControlFlow<()>>,
    {
        let n = self.config.n_vertices();
        let r = self.config.r();
        if v == n {
            if self.opened == r {
                return visit(&self.labels);
            }
            return Ok(ControlFlow::Continue(()));
        }
        // Parts still to open must fit in the remaining vertices.
        let remaining = n - v;
        let color_bit = 1u64 << self.config.coloring().color_of(v);
        let max_label = (self.opened + 1).min(r);
        for label in 0..=max_label {
            if label == 0 {
                if r - self.opened > remaining - 1 {
                    continue;
                }
                self.labels[v] = 0;
                let flow = self.walk(v + 1, visit)?;
                if flow.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            } else {
                let part = label - 1;
                if self.part_colors[part] & color_bit != 0 {
                    continue; // not rainbow
                }
                let newly_opened = part == self.opened;
                if r - (self.opened + usize::from(newly_opened)) > remaining - 1 {
                    continue;
                }
                self.labels[v] = label as u8;
                self.part_colors[part] |= color_bit;
                if newly_opened {
                    self.opened += 1;
                }
                let flow = self.walk(v + 1, visit)?;
                self.part_colors[part] &= !color_bit;
                if newly_opened {
                    self.opened -= 1;
                }
                self.labels[v] = 0;
                if flow.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
        self.labels[v] = 0;
        Ok(ControlFlow::Continue(()))
    }
}

/// Enumerates every candidate partition and invokes the callback on each
/// one that is a genuine (hull-intersecting) partition. Returns the number
/// of candidates examined. Does not stop at the first hit unless the
/// callback breaks.
pub fn for_each_partition<F>(config: &ColoredConfiguration, mut f: F) -> Result<u64>
where
    F: FnMut(&TverbergPartition) -> ControlFlow<()>,
{
    let mut examined = 0u64;
    let mut enumerator = Enumerator::new(config);
    let _ = enumerator.walk(0, &mut |labels| {
        examined += 1;
        if let Some(partition) = test_candidate(config, labels)? {
            return Ok(f(&partition));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(examined)
}

/// Exhaustive search for a colored Tverberg partition, single-threaded.
pub fn find_partition(config: &ColoredConfiguration) -> Result<TverbergReport> {
    find_partition_with_jobs(config, 1)
}

/// Exhaustive search with `jobs` worker threads over lexicographic blocks
/// of the candidate space. The report is byte-for-byte independent of the
/// job count: the returned partition is the lexicographically least valid
/// candidate, and `partitions_examined` always equals the sequential count
/// (full counts of the blocks before the hit, plus the in-block index).
pub fn find_partition_with_jobs(
    config: &ColoredConfiguration,
    jobs: usize,
) -> Result<TverbergReport> {
    let warnings = config.hypothesis_warnings();
    let jobs = jobs.max(1);
    let (outcome, examined, exhaustive) = if jobs == 1 {
        search_sequential(config)?
    } else {
        search_blocks(config, jobs)?
    };
    Ok(TverbergReport { outcome, partitions_examined: examined, exhaustive, warnings })
}

fn search_sequential(config: &ColoredConfiguration) -> Result<(Outcome, u64, bool)> {
    let mut examined = 0u64;
    let mut found: Option<TverbergPartition> = None;
    let mut enumerator = Enumerator::new(config);
    let _ = enumerator.walk(0, &mut |labels| {
        examined += 1;
        if let Some(partition) = test_candidate(config, labels)? {
            found = Some(partition);
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    match found {
        Some(p) => Ok((Outcome::Found(p), examined, false)),
        None => Ok((Outcome::None, examined, true)),
    }
}

struct BlockResult {
    count: u64,
    found: Option<(u64, TverbergPartition)>,
}

fn search_blocks(config: &ColoredConfiguration, jobs: usize) -> Result<(Outcome, u64, bool)> {
    // Prefix depth: enough blocks to keep the workers busy.
    let n = config.n_vertices();
    let mut depth = 1usize;
    let mut prefixes = enumerate_prefixes(config, depth)?;
    while depth < n && prefixes.len() < 8 * jobs {
        depth += 1;
        prefixes = enumerate_prefixes(config, depth)?;
    }

    let next = AtomicUsize::new(0);
    let earliest_found = AtomicUsize::new(usize::MAX);
    let results: Vec<Mutex<Option<Result<BlockResult>>>> =
        (0..prefixes.len()).map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::SeqCst);
                if idx >= prefixes.len() {
                    break;
                }
                let block = run_block(config, &prefixes[idx], idx, &earliest_found);
                if let Ok(b) = &block {
                    if b.found.is_some() {
                        earliest_found.fetch_min(idx, Ordering::SeqCst);
                    }
                }
                *results[idx].lock().unwrap() = Some(block);
            });
        }
    });

    let mut total = 0u64;
    for (idx, cell) in results.iter().enumerate() {
        let slot = cell.lock().unwrap().take();
        let block = match slot {
            Some(b) => b?,
            // Unprocessed blocks can only sit behind an earlier hit.
            None => continue,
        };
        match block.found {
            Some((within, partition)) => {
                total += within;
                return Ok((Outcome::Found(partition), total, false));
            }
            None => {
                if earliest_found.load(Ordering::SeqCst) > idx {
                    total += block.count;
                } else if earliest_found.load(Ordering::SeqCst) == idx {
                    unreachable!("found block recorded no hit");
                }
                // Blocks past the earliest hit contribute nothing; they may
                // have aborted early.
            }
        }
    }
    Ok((Outcome::None, total, true))
}

fn run_block(
    config: &ColoredConfiguration,
    prefix: &[u8],
    block_index: usize,
    earliest_found: &AtomicUsize,
) -> Result<BlockResult> {
    let mut enumerator = Enumerator::new(config);
    enumerator.load_prefix(prefix);
    let mut count = 0u64;
    let mut found = None;
    let _ = enumerator.walk(prefix.len(), &mut |labels| {
        if earliest_found.load(Ordering::Relaxed) < block_index {
            // An earlier block already holds the answer; this block's
            // partial count can never be used.
            return Ok(ControlFlow::Break(()));
        }
        count += 1;
        if let Some(partition) = test_candidate(config, labels)? {
            found = Some((count, partition));
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(BlockResult { count, found })
}

/// All viable assignment prefixes of the given depth, in lexicographic
/// order. Together the blocks they define partition the candidate sequence.
fn enumerate_prefixes(config: &ColoredConfiguration, depth: usize) -> Result<Vec<Vec<u8>>> {
    struct PrefixWalker<'a> {
        config: &'a ColoredConfiguration,
        out: Vec<Vec<u8>>,
    }
    impl<'a> PrefixWalker<'a> {
        fn walk(
            &mut self,
            v: usize,
            depth: usize,
            labels: &mut Vec<u8>,
            part_colors: &mut Vec<u64>,
            opened: usize,
        ) {
            let n = self.config.n_vertices();
            let r = self.config.r();
            if v == depth {
                self.out.push(labels.clone());
                return;
            }
            let remaining = n - v;
            let color_bit = 1u64 << self.config.coloring().color_of(v);
            let max_label = (opened + 1).min(r);
            for label in 0..=max_label {
                if label == 0 {
                    if r - opened > remaining - 1 {
                        continue;
                    }
                    labels.push(0);
                    self.walk(v + 1, depth, labels, part_colors, opened);
                    labels.pop();
                } else {
                    let part = label - 1;
                    if part_colors[part] & color_bit != 0 {
                        continue;
                    }
                    let newly = part == opened;
                    if r - (opened + usize::from(newly)) > remaining - 1 {
                        continue;
                    }
                    labels.push(label as u8);
                    part_colors[part] |= color_bit;
                    self.walk(v + 1, depth, labels, part_colors, opened + usize::from(newly));
                    part_colors[part] &= !color_bit;
                    labels.pop();
                }
            }
        }
    }
    let mut walker = PrefixWalker { config, out: Vec::new() };
    let mut labels = Vec::new();
    let mut part_colors = vec![0u64; config.r()];
    walker.walk(0, depth.min(config.n_vertices()), &mut labels, &mut part_colors, 0);
    Ok(walker.out)
}

/// Number of times the dimension-raising reduction applies:
/// g = 1 + floor(d / (r-1)).
pub fn reduction_count(d: usize, r: usize) -> Result<usize> {
    if d < 1 || r < 2 {
        return Err(Error::InvalidParameter(format!(
            "reduction count needs d >= 1 and r >= 2, got d={d}, r={r}"
        )));
    }
    Ok(1 + d / (r - 1))
}

/// The dimension-versus-cohomology-dimension inequality after raising the
/// target dimension by g: (r-1) * (d_dim + g) > r * e. The cohomology
/// dimension e is a caller-supplied integer; no coefficient convention is
/// assumed here.
pub fn check_reduction_inequality(d_dim: usize, g: usize, e: usize, r: usize) -> bool {
    (r - 1) * (d_dim + g) > r * e
}

/// Lifts a Euclidean configuration one dimension up, realizing the
/// reduction step affinely: old vertices keep their points at height 0,
/// and r-1 new vertices sit at height 1 above the last original point,
/// sharing one fresh color. Restricting the lifted map to the original
/// vertices reproduces the original map at height 0.
pub fn lift_configuration(config: &ColoredConfiguration) -> Result<ColoredConfiguration> {
    if config.target() != Target::Euclidean {
        return Err(Error::InvalidParameter(
            "only euclidean configurations can be lifted".into(),
        ));
    }
    let n = config.n_vertices();
    let r = config.r();
    let last = config.points()[n - 1].clone();
    let mut points: Vec<Vec<Rational>> = Vec::with_capacity(n + r - 1);
    for p in config.points() {
        let mut q = p.clone();
        q.push(rat(0));
        points.push(q);
    }
    for _ in 0..r - 1 {
        let mut q = last.clone();
        q.push(rat(1));
        points.push(q);
    }
    let fresh = config.coloring().n_colors();
    let mut colors = config.coloring().colors().to_vec();
    colors.extend(std::iter::repeat(fresh).take(r - 1));
    ColoredConfiguration::new(
        config.d() + 1,
        r,
        points,
        Coloring::new(colors)?,
        Target::Euclidean,
    )
}

/// Outcome of checking the reduction lift against the original instance.
#[derive(Clone, Debug)]
pub struct RoundtripReport {
    pub holds: bool,
    pub violations: Vec<String>,
    pub lifted_partitions: u64,
    pub level_zero_partitions: u64,
    pub original_found: bool,
}

/// Verifies the reduction roundtrip on a Euclidean configuration:
/// every partition of the lifted configuration whose witness lies at
/// height 0 restricts (by dropping the new vertices) to a valid partition
/// of the original; no partition consists of new vertices only in all r
/// parts; and height-0 witnesses exist exactly when the original instance
/// has a partition.
pub fn verify_reduction_roundtrip(config: &ColoredConfiguration) -> Result<RoundtripReport> {
    let lifted = lift_configuration(config)?;
    let n = config.n_vertices();
    let d = config.d();
    let mut violations: Vec<String> = Vec::new();
    let mut lifted_partitions = 0u64;
    let mut level_zero = 0u64;

    for_each_partition(&lifted, |partition| {
        lifted_partitions += 1;
        let all_new = partition
            .parts
            .iter()
            .filter(|p| p.vertices().iter().all(|&v| v >= n))
            .count();
        if all_new >= config.r() {
            violations.push(format!(
                "partition {:?} has every part made of new vertices",
                partition.parts
            ));
        }
        if partition.witness[d].is_zero() {
            level_zero += 1;
            // Height zero forces zero weight on every new vertex, so the
            // same coefficients certify the restricted partition.
            for (i, (part, coeffs)) in
                partition.parts.iter().zip(&partition.coefficients).enumerate()
            {
                let mut restricted = Vec::new();
                let mut restricted_coeffs = Vec::new();
                for (&v, c) in part.vertices().iter().zip(coeffs) {
                    if v >= n {
                        if !c.is_zero() {
                            violations.push(format!(
                                "partition {:?}: new vertex {v} carries weight {c} at height 0",
                                partition.parts
                            ));
                        }
                    } else {
                        restricted.push(v);
                        restricted_coeffs.push(c.clone());
                    }
                }
                if restricted.is_empty() {
                    violations.push(format!(
                        "partition {:?}: part {i} restricts to the empty face",
                        partition.parts
                    ));
                    continue;
                }
                let total: Rational =
                    restricted_coeffs.iter().cloned().fold(rat(0), |s, c| s + c);
                if total != rat(1) {
                    violations.push(format!(
                        "partition {:?}: restricted part {i} coefficients sum to {total}",
                        partition.parts
                    ));
                }
                for k in 0..d {
                    let mut acc = rat(0);
                    for (&v, c) in restricted.iter().zip(&restricted_coeffs) {
                        acc += c * &config.points()[v][k];
                    }
                    if acc != partition.witness[k] {
                        violations.push(format!(
                            "partition {:?}: restricted part {i} misses the witness in coordinate {k}",
                            partition.parts
                        ));
                    }
                }
            }
        }
        ControlFlow::Continue(())
    })?;

    let original = find_partition(config)?;
    let original_found = original.found().is_some();
    if original_found && level_zero == 0 {
        violations.push("original instance has a partition but no lifted witness at height 0".into());
    }
    if !original_found && level_zero > 0 {
        violations.push(format!(
            "original instance is NONE but {level_zero} lifted witnesses sit at height 0"
        ));
    }
    Ok(RoundtripReport {
        holds: violations.is_empty(),
        violations,
        lifted_partitions,
        level_zero_partitions: level_zero,
        original_found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn euclid(d: usize, r: usize, pts: &[&[i64]], colors: &[usize]) -> ColoredConfiguration {
        ColoredConfiguration::from_integer_points(d, r, pts, colors, Target::Euclidean).unwrap()
    }

    fn torus(d: usize, r: usize, pts: Vec<Vec<Rational>>, colors: &[usize]) -> ColoredConfiguration {
        ColoredConfiguration::new(
            d,
            r,
            pts,
            crate::complex::Coloring::new(colors.to_vec()).unwrap(),
            Target::Torus,
        )
        .unwrap()
    }

    #[test]
    fn hulls_identical_singletons() {
        let p = vec![vec![rat(3), rat(-1)]];
        let w = intersect_hulls(&[p.clone(), p.clone()]).unwrap().unwrap();
        assert_eq!(w.point, vec![rat(3), rat(-1)]);
    }

    #[test]
    fn hulls_square_diagonals_meet_in_center() {
        let diag1 = vec![vec![rat(0), rat(0)], vec![rat(1), rat(1)]];
        let diag2 = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]];
        let w = intersect_hulls(&[diag1, diag2]).unwrap().unwrap();
        assert_eq!(w.point, vec![ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn hulls_disjoint_segments() {
        let a = vec![vec![rat(0)], vec![rat(1)]];
        let b = vec![vec![rat(2)], vec![rat(3)]];
        assert!(intersect_hulls(&[a, b]).unwrap().is_none());
    }

    #[test]
    fn hulls_dimension_mismatch() {
        let a = vec![vec![rat(0)]];
        let b = vec![vec![rat(0), rat(1)]];
        assert!(matches!(
            intersect_hulls(&[a, b]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn find_partition_line_distinct_colors() {
        let config = euclid(1, 2, &[&[0], &[1], &[2]], &[0, 1, 2]);
        let report = find_partition(&config).unwrap();
        let p = report.found().expect("theorem instance must be FOUND");
        assert_eq!(p.parts, vec![Face::new(vec![0, 2]), Face::new(vec![1])]);
        assert_eq!(p.witness, vec![rat(1)]);
        p.verify(&config).unwrap();
        assert!(!report.exhaustive);
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn find_partition_line_tightness_instance() {
        let config = euclid(1, 2, &[&[0], &[1], &[2]], &[0, 1, 0]);
        let report = find_partition(&config).unwrap();
        assert!(report.is_none());
        assert!(report.exhaustive);
        assert!(!report.warnings.is_empty()); // class of size r
    }

    #[test]
    fn find_partition_square() {
        let config = euclid(2, 2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[0, 1, 2, 3]);
        let report = find_partition(&config).unwrap();
        let p = report.found().unwrap();
        assert_eq!(p.witness, vec![ratio(1, 2), ratio(1, 2)]);
        p.verify(&config).unwrap();
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let configs = [
            euclid(1, 2, &[&[0], &[1], &[2]], &[0, 1, 2]),
            euclid(1, 2, &[&[0], &[1], &[2]], &[0, 1, 0]),
            euclid(2, 2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[0, 1, 2, 3]),
            euclid(1, 3, &[&[0], &[10], &[20], &[4], &[6]], &[0, 0, 0, 1, 2]),
            euclid(2, 3, &[&[0, 0], &[1, 1], &[2, 4], &[3, 9], &[4, 16], &[5, 25], &[6, 36]],
                   &[0, 1, 2, 0, 1, 2, 3]),
        ];
        for config in &configs {
            let base = find_partition_with_jobs(config, 1).unwrap();
            for jobs in [2usize, 8] {
                let other = find_partition_with_jobs(config, jobs).unwrap();
                assert_eq!(base.partitions_examined, other.partitions_examined);
                assert_eq!(base.exhaustive, other.exhaustive);
                match (&base.outcome, &other.outcome) {
                    (Outcome::Found(a), Outcome::Found(b)) => assert_eq!(a, b),
                    (Outcome::None, Outcome::None) => {}
                    _ => panic!("outcomes differ at jobs={jobs}"),
                }
            }
        }
    }

    #[test]
    fn torus_intersect_examples() {
        // Hull [0, 4/5] meets the singleton 2/5 with no translate.
        let sets = vec![
            vec![vec![rat(0)], vec![ratio(4, 5)]],
            vec![vec![ratio(2, 5)]],
        ];
        let (w, translates) = torus_intersect(&sets).unwrap().unwrap();
        assert_eq!(w.point, vec![ratio(2, 5)]);
        assert_eq!(translates, vec![vec![0], vec![0]]);

        // Distinct singleton lifts never meet.
        let sets = vec![vec![vec![ratio(9, 10)]], vec![vec![rat(0)]]];
        assert!(torus_intersect(&sets).unwrap().is_none());

        // Wrap-around: [1/10, 9/10] misses 0, but translated by -1 it hits.
        let sets = vec![
            vec![vec![rat(0)]],
            vec![vec![ratio(9, 10)], vec![ratio(1, 10)]],
        ];
        let (w, translates) = torus_intersect(&sets).unwrap().unwrap();
        assert_eq!(w.point, vec![rat(0)]);
        assert_eq!(translates, vec![vec![0], vec![-1]]);
    }

    #[test]
    fn torus_rejects_out_of_range_lifts() {
        let sets = vec![vec![vec![rat(1)]], vec![vec![rat(0)]]];
        assert!(matches!(
            torus_intersect(&sets),
            Err(Error::LiftOutOfRange { .. })
        ));
    }

    #[test]
    fn torus_partition_search() {
        let config = torus(
            1,
            2,
            vec![vec![rat(0)], vec![ratio(1, 3)], vec![ratio(2, 3)]],
            &[0, 1, 2],
        );
        let report = find_partition(&config).unwrap();
        let p = report.found().unwrap();
        p.verify(&config).unwrap();
    }

    #[test]
    fn reduction_count_examples() {
        assert_eq!(reduction_count(1, 2).unwrap(), 2);
        assert_eq!(reduction_count(3, 2).unwrap(), 4);
        assert_eq!(reduction_count(2, 3).unwrap(), 2);
        assert!(check_reduction_inequality(1, 2, 1, 2)); // 3 > 2
        assert!(check_reduction_inequality(2, 2, 2, 3)); // 8 > 6
        assert!(!check_reduction_inequality(1, 0, 1, 2)); // 1 > 2 fails
    }

    #[test]
    fn lift_shape_and_front_face() {
        let config = euclid(1, 2, &[&[0], &[1], &[2]], &[0, 1, 0]);
        let lifted = lift_configuration(&config).unwrap();
        assert_eq!(lifted.d(), 2);
        assert_eq!(lifted.n_vertices(), 4);
        // Old vertices at height 0 with unchanged first coordinates.
        for (v, p) in config.points().iter().enumerate() {
            assert_eq!(lifted.points()[v][0], p[0]);
            assert_eq!(lifted.points()[v][1], rat(0));
        }
        // New vertex above the last original point.
        assert_eq!(lifted.points()[3], vec![rat(2), rat(1)]);
        // Fresh color class of size r-1 keeps the hypotheses.
        assert_eq!(lifted.coloring().colors(), &[0, 1, 0, 2]);
        assert_eq!(lifted.coloring().classes()[2].len(), config.r() - 1);
    }

    #[test]
    fn roundtrip_on_found_and_none_instances() {
        let found = euclid(1, 2, &[&[0], &[1], &[2]], &[0, 1, 2]);
        let report = verify_reduction_roundtrip(&found).unwrap();
        assert!(report.holds, "{:?}", report.violations);
        assert!(report.original_found);
        assert!(report.level_zero_partitions > 0);

        let none = euclid(1, 2, &[&[0], &[1], &[2]], &[0, 1, 0]);
        let report = verify_reduction_roundtrip(&none).unwrap();
        assert!(report.holds, "{:?}", report.violations);
        assert!(!report.original_found);
        assert_eq!(report.level_zero_partitions, 0);
    }

    #[test]
    fn soundness_every_found_reverifies() {
        let config = euclid(
            2,
            3,
            &[&[0, 0], &[3, 1], &[1, 4], &[-2, 2], &[4, -1], &[2, 2], &[1, 1]],
            &[0, 1, 2, 0, 1, 2, 3],
        );
        let mut seen = 0;
        for_each_partition(&config, |p| {
            p.verify(&config).unwrap();
            seen += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert!(seen > 0);
    }
}
