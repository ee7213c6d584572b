//! Lattice polytopes: exact convex hulls of integer points, face lattices
//! with inward facet normals, lattice-point enumeration, dilation and a
//! brute-force normality audit.
//!
//! Everything is integer arithmetic. A polytope that is not full-dimensional
//! is handled in the coordinates of its affine hull, obtained from a
//! unimodular change of basis, and its facets are reported back in ambient
//! coordinates together with the equations of the hull.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{Exponent, LaurentPolynomial};
use crate::transform::integer::{
    combinations, dot, integer_kernel, primitive, saturated_basis, unimodular_completion, Completion,
};
use crate::transform::IntMatrix;

/// Default cap on the number of lattice points enumerated in one call.
pub const DEFAULT_BUDGET: usize = 100_000;

/// `normal · x ≥ offset` (or `=` when used as an equation).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Halfspace {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Halfspace {
    pub fn value(&self, x: &[i64]) -> i64 {
        dot(&self.normal, x) - self.offset
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.value(x) >= 0
    }

    pub fn is_tight(&self, x: &[i64]) -> bool {
        self.value(x) == 0
    }
}

/// Unimodular coordinates on the affine hull: `x = origin + U·y` with the
/// last `rank` entries of `y` free and the others zero on the hull.
#[derive(Clone, Debug, PartialEq, Eq)]
struct AffineFrame {
    origin: Vec<i64>,
    u: IntMatrix,
    u_inv: IntMatrix,
    rank: usize,
}

impl AffineFrame {
    fn new(points: &[Vec<i64>], d: usize) -> Self {
        let origin = points[0].clone();
        let diffs: Vec<Vec<i64>> = points.iter().map(|p| sub(p, &origin)).collect();
        let basis = saturated_basis(&diffs, d);
        let u = match unimodular_completion(&basis, d) {
            Ok(Completion::Unimodular(u)) => u,
            _ => unreachable!("a saturated basis always completes"),
        };
        let u_inv = u.inverse_unimodular().expect("unimodular");
        Self { origin, u, u_inv, rank: basis.len() }
    }

    fn d(&self) -> usize {
        self.origin.len()
    }

    fn to_reduced(&self, x: &[i64]) -> Vec<i64> {
        let y = self.u_inv.mul_vec(&sub(x, &self.origin));
        y[self.d() - self.rank..].to_vec()
    }

    fn from_reduced(&self, y: &[i64]) -> Vec<i64> {
        let mut full = vec![0; self.d() - self.rank];
        full.extend_from_slice(y);
        add(&self.origin, &self.u.mul_vec(&full))
    }

    /// Lattice basis of the hull's direction space.
    fn basis(&self) -> Vec<Vec<i64>> {
        (self.d() - self.rank..self.d()).map(|j| self.u.column(j)).collect()
    }

    fn ambient_halfspace(&self, h: &Halfspace) -> Halfspace {
        let mut padded = vec![0; self.d() - self.rank];
        padded.extend_from_slice(&h.normal);
        let normal = self.u_inv.transpose().mul_vec(&padded);
        let offset = h.offset + dot(&normal, &self.origin);
        Halfspace { normal, offset }
    }

    fn equations(&self) -> Vec<Halfspace> {
        (0..self.d() - self.rank)
            .map(|i| {
                let normal = self.u_inv.row(i);
                let offset = dot(&normal, &self.origin);
                Halfspace { normal, offset }
            })
            .collect()
    }
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Convex hull of finitely many integer points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Exponent>,
    halfspaces: Vec<Halfspace>,
    equations: Vec<Halfspace>,
    frame: AffineFrame,
    reduced_vertices: Vec<Vec<i64>>,
    reduced_halfspaces: Vec<Halfspace>,
}

impl LatticePolytope {
    pub fn from_points(points: &[Exponent]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Precondition("empty point set".into()));
        };
        let d = first.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: bad.dim() });
        }
        let distinct: BTreeSet<Vec<i64>> = points.iter().map(|p| p.0.clone()).collect();
        let pts: Vec<Vec<i64>> = distinct.into_iter().collect();
        let frame = AffineFrame::new(&pts, d);
        let reduced: Vec<Vec<i64>> = pts.iter().map(|p| frame.to_reduced(p)).collect();
        let reduced_halfspaces = hull_facets(&reduced, frame.rank);
        let vertex_idx: Vec<usize> = if frame.rank == 0 {
            vec![0]
        } else {
            (0..pts.len())
                .filter(|&i| {
                    let tight: Vec<Vec<i64>> = reduced_halfspaces
                        .iter()
                        .filter(|h| h.is_tight(&reduced[i]))
                        .map(|h| h.normal.clone())
                        .collect();
                    saturated_basis(&tight, frame.rank).len() == frame.rank
                })
                .collect()
        };
        let mut verts: Vec<(Vec<i64>, Vec<i64>)> =
            vertex_idx.iter().map(|&i| (pts[i].clone(), reduced[i].clone())).collect();
        verts.sort();
        let halfspaces = reduced_halfspaces.iter().map(|h| frame.ambient_halfspace(h)).collect();
        Ok(Self {
            dim: d,
            vertices: verts.iter().map(|(p, _)| Exponent(p.clone())).collect(),
            reduced_vertices: verts.into_iter().map(|(_, r)| r).collect(),
            halfspaces,
            equations: frame.equations(),
            reduced_halfspaces,
            frame,
        })
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.frame.rank
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.frame.rank == self.dim
    }

    /// Extreme points in lexicographic order.
    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    /// Facet inequalities `n·x ≥ c` with primitive inward normals.
    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// Equations of the affine hull (empty when full-dimensional).
    pub fn equations(&self) -> &[Halfspace] {
        &self.equations
    }

    /// A lattice point of the hull and a lattice basis of its directions.
    pub fn affine_hull(&self) -> (Vec<i64>, Vec<Vec<i64>>) {
        (self.frame.origin.clone(), self.frame.basis())
    }

    /// Coordinates of a hull point in the affine-hull lattice basis.
    pub fn reduced_coordinates(&self, x: &[i64]) -> Vec<i64> {
        self.frame.to_reduced(x)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|e| e.is_tight(x)) && self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// `k·P`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        let pts: Vec<Exponent> = self.vertices.iter().map(|v| v.scale(k)).collect();
        Self::from_points(&pts).expect("nonempty")
    }

    /// All integer points, lexicographically sorted; errors when the
    /// bounding box holds more than `budget` points.
    pub fn lattice_points_with_budget(&self, budget: usize) -> Result<Vec<Exponent>> {
        let r = self.frame.rank;
        let lo: Vec<i64> = (0..r).map(|j| self.reduced_vertices.iter().map(|v| v[j]).min().unwrap_or(0)).collect();
        let hi: Vec<i64> = (0..r).map(|j| self.reduced_vertices.iter().map(|v| v[j]).max().unwrap_or(0)).collect();
        let mut count: usize = 1;
        for j in 0..r {
            count = count
                .checked_mul((hi[j] - lo[j] + 1) as usize)
                .filter(|&c| c <= budget)
                .ok_or(Error::LatticeBudgetExceeded { budget })?;
        }
        let mut out = Vec::new();
        let mut y = lo.clone();
        loop {
            if self.reduced_halfspaces.iter().all(|h| h.contains(&y)) {
                out.push(Exponent(self.frame.from_reduced(&y)));
            }
            // odometer increment
            let mut j = 0;
            loop {
                if j == r {
                    out.sort();
                    return Ok(out);
                }
                if y[j] < hi[j] {
                    y[j] += 1;
                    break;
                }
                y[j] = lo[j];
                j += 1;
            }
        }
    }

    pub fn lattice_points(&self) -> Result<Vec<Exponent>> {
        self.lattice_points_with_budget(DEFAULT_BUDGET)
    }

    /// The face lattice, all nonempty faces including the polytope itself.
    pub fn face_lattice(&self) -> Result<FaceLattice> {
        let points = self.lattice_points()?;
        let nv = self.vertices.len();
        let facet_sets: Vec<BTreeSet<usize>> =
            self.halfspaces.iter().map(|h| (0..nv).filter(|&i| h.is_tight(&self.vertices[i].0)).collect()).collect();
        let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        faces.insert((0..nv).collect());
        let mut frontier: Vec<BTreeSet<usize>> = facet_sets.clone();
        while let Some(f) = frontier.pop() {
            if f.is_empty() || !faces.insert(f.clone()) {
                continue;
            }
            for g in &facet_sets {
                let meet: BTreeSet<usize> = f.intersection(g).copied().collect();
                if !meet.is_empty() && !faces.contains(&meet) {
                    frontier.push(meet);
                }
            }
        }
        let mut descriptors: Vec<FaceDescriptor> = faces
            .into_iter()
            .map(|set| {
                let vertex_indices: Vec<usize> = set.iter().copied().collect();
                let tight: Vec<usize> = (0..facet_sets.len()).filter(|&j| set.is_subset(&facet_sets[j])).collect();
                let anchor = self.vertices[vertex_indices[0]].clone();
                let diffs: Vec<Vec<i64>> = vertex_indices.iter().map(|&i| self.vertices[i].sub(&anchor).0).collect();
                let span_basis = saturated_basis(&diffs, self.dim);
                let lattice_points: Vec<Exponent> = points
                    .iter()
                    .filter(|p| tight.iter().all(|&j| self.halfspaces[j].is_tight(&p.0)))
                    .cloned()
                    .collect();
                FaceDescriptor {
                    id: 0,
                    dim: span_basis.len(),
                    codim: self.frame.rank - span_basis.len(),
                    vertices: vertex_indices.iter().map(|&i| self.vertices[i].clone()).collect(),
                    inward_normals: tight.iter().map(|&j| self.halfspaces[j].normal.clone()).collect(),
                    vertex_indices,
                    tight_halfspaces: tight,
                    lattice_points,
                    vertex_anchor: anchor,
                    span_basis,
                }
            })
            .collect();
        descriptors.sort_by(|a, b| (a.dim, &a.vertex_indices).cmp(&(b.dim, &b.vertex_indices)));
        for (id, f) in descriptors.iter_mut().enumerate() {
            f.id = id;
        }
        Ok(FaceLattice { faces: descriptors, lattice_points: points })
    }
}

/// Facets of the hull of `points ⊂ ℤ^r`, assumed full-dimensional.
fn hull_facets(points: &[Vec<i64>], r: usize) -> Vec<Halfspace> {
    if r == 0 {
        return Vec::new();
    }
    let mut found: BTreeSet<Halfspace> = BTreeSet::new();
    for subset in combinations(points.len(), r) {
        let base = &points[subset[0]];
        let mut m = IntMatrix::zeros(r - 1, r);
        for (row, &i) in subset[1..].iter().enumerate() {
            for (j, v) in sub(&points[i], base).into_iter().enumerate() {
                m.set(row, j, v);
            }
        }
        let kernel = integer_kernel(&m);
        if kernel.len() != 1 {
            continue;
        }
        let n = primitive(&kernel[0]);
        let c = dot(&n, base);
        let vals: Vec<i64> = points.iter().map(|p| dot(&n, p) - c).collect();
        if vals.iter().all(|&v| v >= 0) {
            found.insert(Halfspace { normal: n, offset: c });
        } else if vals.iter().all(|&v| v <= 0) {
            found.insert(Halfspace { normal: n.iter().map(|x| -x).collect(), offset: -c });
        }
    }
    found.into_iter().collect()
}

/// Newton polytope: hull of the exponent vectors.
pub fn newton_polytope(h: &LaurentPolynomial) -> Result<LatticePolytope> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts: Vec<Exponent> = h.exponents().cloned().collect();
    LatticePolytope::from_points(&pts)
}

/// Dilation factor `κ = max(1, d - 1)`, sufficient for `κP` to be normal.
pub fn normal_scaling_factor(d: usize) -> i64 {
    (d as i64 - 1).max(1)
}

/// `(κP, κ)`, with `d` the dimension of `P`'s affine hull.
pub fn scale_to_normal(p: &LatticePolytope) -> (LatticePolytope, i64) {
    let kappa = normal_scaling_factor(p.affine_dim());
    (p.dilate(kappa), kappa)
}

/// Outcome of the sumset audit of normality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Normality {
    Normal,
    /// A point of `k·Q` that is not a sum of `k` lattice points of `Q`.
    NotNormal {
        k: i64,
        witness: Exponent,
    },
    /// The enumeration would exceed the lattice-point budget.
    Unverified,
}

/// Checks that for every `k ≤ k_max` each lattice point of `kQ` is a sum of
/// `k` lattice points of `Q`.
pub fn verify_normality(q: &LatticePolytope, k_max: i64, budget: usize) -> Normality {
    let Ok(base) = q.lattice_points_with_budget(budget) else {
        return Normality::Unverified;
    };
    let mut sums: HashSet<Vec<i64>> = base.iter().map(|p| p.0.clone()).collect();
    for k in 2..=k_max {
        let Ok(target) = q.dilate(k).lattice_points_with_budget(budget) else {
            return Normality::Unverified;
        };
        if sums.len().saturating_mul(base.len()) > budget.saturating_mul(16) {
            return Normality::Unverified;
        }
        sums = sums.iter().flat_map(|s| base.iter().map(move |p| add(s, &p.0))).collect();
        if let Some(w) = target.iter().find(|t| !sums.contains(&t.0)) {
            return Normality::NotNormal { k, witness: w.clone() };
        }
    }
    Normality::Normal
}

/// A nonempty face of a lattice polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceDescriptor {
    /// Index in the face list, ordered by dimension then vertex indices.
    pub id: usize,
    pub dim: usize,
    /// Codimension inside the polytope's affine hull.
    pub codim: usize,
    pub vertices: Vec<Exponent>,
    #[serde(skip)]
    pub vertex_indices: Vec<usize>,
    /// Indices of the facets containing the face.
    pub tight_halfspaces: Vec<usize>,
    pub inward_normals: Vec<Vec<i64>>,
    pub lattice_points: Vec<Exponent>,
    /// Lexicographically smallest vertex.
    pub vertex_anchor: Exponent,
    /// Canonical lattice basis of `L_F ∩ ℤ^d`, where `L_F` is the span of
    /// `F - vertex_anchor`.
    pub span_basis: Vec<Vec<i64>>,
}

impl FaceDescriptor {
    /// The face lies in exactly `codim` facets.
    pub fn modified_simple(&self) -> bool {
        self.tight_halfspaces.len() == self.codim
    }

    /// Whether `x` lies in `L_F`: every containing facet normal is orthogonal
    /// to it.
    pub fn span_contains(&self, x: &[i64]) -> bool {
        self.inward_normals.iter().all(|n| dot(n, x) == 0)
    }

    pub fn is_vertex(&self) -> bool {
        self.dim == 0
    }
}

/// The faces of a polytope together with its lattice points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceLattice {
    pub faces: Vec<FaceDescriptor>,
    pub lattice_points: Vec<Exponent>,
}

impl FaceLattice {
    pub fn face(&self, id: usize) -> Result<&FaceDescriptor> {
        self.faces.get(id).ok_or(Error::UnknownFace(id))
    }

    /// The polytope itself, the unique face of top dimension.
    pub fn top(&self) -> &FaceDescriptor {
        self.faces.last().expect("face lattice is never empty")
    }

    /// Faces strictly contained in `f`.
    pub fn subfaces<'a>(&'a self, f: &'a FaceDescriptor) -> impl Iterator<Item = &'a FaceDescriptor> + 'a {
        self.faces.iter().filter(move |g| g.id != f.id && g.vertex_indices.iter().all(|v| f.vertex_indices.contains(v)))
    }

    /// Faces strictly containing `f`.
    pub fn superfaces<'a>(&'a self, f: &'a FaceDescriptor) -> impl Iterator<Item = &'a FaceDescriptor> + 'a {
        self.faces.iter().filter(move |g| g.id != f.id && f.vertex_indices.iter().all(|v| g.vertex_indices.contains(v)))
    }

    /// The smallest face containing every given lattice point.
    pub fn minimal_face_containing(&self, pts: &[Exponent]) -> Option<&FaceDescriptor> {
        self.faces.iter().find(|f| pts.iter().all(|p| f.lattice_points.contains(p)))
    }

    pub fn point_index(&self, p: &Exponent) -> Option<usize> {
        self.lattice_points.binary_search(p).ok()
    }
}

/// `σ_F`: lineality space `L_F` plus the nonnegative span of `generators`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeDescriptor {
    pub generators: Vec<Vec<i64>>,
    pub lineality_basis: Vec<Vec<i64>>,
    /// Inequalities `n·x ≥ 0` cutting out the cone.
    pub inequalities: Vec<Vec<i64>>,
}

impl ConeDescriptor {
    pub fn contains(&self, x: &[i64]) -> bool {
        self.inequalities.iter().all(|n| dot(n, x) >= 0)
    }

    pub fn in_lineality(&self, x: &[i64]) -> bool {
        self.inequalities.iter().all(|n| dot(n, x) == 0)
    }
}

/// The cone of directions from `f` into the polytope.
///
/// It is cut out by the inward normals of the facets containing `f`; its
/// rays modulo `L_F` come from the faces one dimension higher than `f`.
pub fn sigma_cone(lattice: &FaceLattice, f: &FaceDescriptor) -> ConeDescriptor {
    let generators = lattice
        .superfaces(f)
        .filter(|g| g.dim == f.dim + 1)
        .map(|g| {
            let v = g.vertices.iter().find(|v| !f.vertices.contains(v)).expect("larger face has a new vertex");
            v.sub(&f.vertex_anchor).0
        })
        .collect();
    ConeDescriptor { generators, lineality_basis: f.span_basis.clone(), inequalities: f.inward_normals.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse;

    fn poly(text: &str, d: usize) -> LaurentPolynomial {
        parse(text, &crate::laurent::default_variables(d)).unwrap()
    }

    fn e(v: &[i64]) -> Exponent {
        Exponent(v.to_vec())
    }

    #[test]
    fn paraboloid_tetrahedron() {
        let p = newton_polytope(&poly("1 - 2*x + x^2 + 1 - 2*y + y^2 - z", 3)).unwrap();
        assert_eq!(p.vertices(), &[e(&[0, 0, 0]), e(&[0, 0, 1]), e(&[0, 2, 0]), e(&[2, 0, 0])]);
        assert_eq!(p.halfspaces().len(), 4);
        let fl = p.face_lattice().unwrap();
        let count = |k| fl.faces.iter().filter(|f| f.dim == k).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (4, 6, 4, 1));
        let (q, kappa) = scale_to_normal(&p);
        assert_eq!(kappa, 2);
        // independent count of x, y, z ≥ 0 with x + y + 2z ≤ 4
        let oracle = (0..=4i64)
            .flat_map(|x| (0..=4i64).flat_map(move |y| (0..=2i64).map(move |z| (x, y, z))))
            .filter(|(x, y, z)| x + y + 2 * z <= 4)
            .count();
        assert_eq!(oracle, 22);
        assert_eq!(q.lattice_points().unwrap().len(), oracle);
    }

    #[test]
    fn quadrilateral() {
        let p = newton_polytope(&poly("1 + x + x^2 + x*y + x^2*y", 2)).unwrap();
        assert_eq!(p.vertices(), &[e(&[0, 0]), e(&[1, 1]), e(&[2, 0]), e(&[2, 1])]);
        assert_eq!(scale_to_normal(&p).1, 1);
        assert_eq!(p.lattice_points().unwrap(), vec![e(&[0, 0]), e(&[1, 0]), e(&[1, 1]), e(&[2, 0]), e(&[2, 1])]);
    }

    #[test]
    fn lower_dimensional() {
        let p = newton_polytope(&poly("3", 2)).unwrap();
        assert_eq!(p.affine_dim(), 0);
        assert_eq!(p.lattice_points().unwrap(), vec![e(&[0, 0])]);
        assert_eq!(p.face_lattice().unwrap().faces.len(), 1);
        let seg = newton_polytope(&poly("x*y + x^3*y^3", 2)).unwrap();
        assert_eq!(seg.affine_dim(), 1);
        assert_eq!(seg.lattice_points().unwrap(), vec![e(&[1, 1]), e(&[2, 2]), e(&[3, 3])]);
        assert_eq!(seg.equations().len(), 1);
        assert_eq!(scale_to_normal(&seg).1, 1);
    }

    #[test]
    fn edge_span_and_cone() {
        let p = newton_polytope(&poly("z - y - (x-1)^2", 3)).unwrap();
        let fl = p.face_lattice().unwrap();
        let edge = fl.faces.iter().find(|f| f.vertices == vec![e(&[0, 0, 0]), e(&[2, 0, 0])]).unwrap();
        assert_eq!(edge.span_basis, vec![vec![1, 0, 0]]);
        assert_eq!(edge.lattice_points.len(), 3);
        let cone = sigma_cone(&fl, edge);
        let mut gens = cone.generators.clone();
        gens.sort();
        assert_eq!(gens, vec![vec![0, 0, 1], vec![0, 1, 0]]);
        let mut normals = edge.inward_normals.clone();
        normals.sort();
        assert_eq!(normals, vec![vec![0, 0, 1], vec![0, 1, 0]]);
        assert!(cone.contains(&[-5, 0, 3]));
        assert!(!cone.contains(&[0, -1, 0]));
        // facet cone is a halfspace
        let facet = fl.faces.iter().find(|f| f.dim == 2).unwrap();
        let c = sigma_cone(&fl, facet);
        assert_eq!((c.lineality_basis.len(), c.generators.len()), (2, 1));
        let top = sigma_cone(&fl, fl.top());
        assert!(top.generators.is_empty() && top.inequalities.is_empty());
    }

    #[test]
    fn pyramid_apex_is_not_simple() {
        let p = newton_polytope(&poly("1 + x + y + x*y + z", 3)).unwrap();
        let fl = p.face_lattice().unwrap();
        let apex = fl.faces.iter().find(|f| f.vertices == vec![e(&[0, 0, 1])]).unwrap();
        assert_eq!(apex.tight_halfspaces.len(), 4);
        assert!(!apex.modified_simple());
        assert!(fl.faces.iter().filter(|f| f.codim <= 2 && f.codim >= 1).all(FaceDescriptor::modified_simple));
        // a simplex is simple
        let t = newton_polytope(&poly("1 + x + y + z", 3)).unwrap().face_lattice().unwrap();
        assert!(t.faces.iter().filter(|f| f.dim == 0).all(FaceDescriptor::modified_simple));
    }

    #[test]
    fn normality_audit() {
        let square = newton_polytope(&poly("1 + x + y + x*y", 2)).unwrap();
        assert_eq!(verify_normality(&square, 3, DEFAULT_BUDGET), Normality::Normal);
        let tet = newton_polytope(&poly("1 + x^2 + y^2 + z", 3)).unwrap();
        assert_eq!(verify_normality(&tet.dilate(2), 2, DEFAULT_BUDGET), Normality::Normal);
        let seg = newton_polytope(&poly("1 + x^2", 1)).unwrap();
        assert_eq!(verify_normality(&seg, 4, DEFAULT_BUDGET), Normality::Normal);
        // the Reeve-type simplex conv(0, e1, e2, (1,1,2)) is not normal
        let reeve =
            LatticePolytope::from_points(&[e(&[0, 0, 0]), e(&[1, 0, 0]), e(&[0, 1, 0]), e(&[1, 1, 2])]).unwrap();
        assert!(matches!(verify_normality(&reeve, 2, DEFAULT_BUDGET), Normality::NotNormal { k: 2, .. }));
        assert_eq!(verify_normality(&square.dilate(1000), 2, 1000), Normality::Unverified);
    }

    #[test]
    fn budget_is_enforced() {
        let big = newton_polytope(&poly("1 + x^1000 + y^1000", 2)).unwrap();
        assert!(matches!(big.lattice_points_with_budget(1000), Err(Error::LatticeBudgetExceeded { .. })));
    }
}
