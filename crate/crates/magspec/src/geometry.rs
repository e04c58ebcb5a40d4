//! Convex polygonal domains, their triangulations, and cylinder domains.
//!
//! Polygons are stored as counterclockwise, strictly convex vertex lists.
//! Meshes come from a fan triangulation out of the area centroid followed by
//! uniform midpoint subdivision, so every refinement level nests in the next
//! and each round exactly halves the longest edge.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// A point in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product `self × other`.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }
}

impl std::ops::Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, t: f64) -> Point2 {
        Point2::new(self.x * t, self.y * t)
    }
}

/// Orientation test: z-component of `(a - o) × (b - o)`.
///
/// Positive when the triple `o, a, b` turns counterclockwise.
pub fn orient(o: Point2, a: Point2, b: Point2) -> f64 {
    (a - o).cross(b - o)
}

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Clone, Debug)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

/// Relative tolerance (times the diameter) below which two vertices count
/// as duplicates.
const DUP_TOL: f64 = 1e-12;

impl ConvexPolygon {
    /// Validate and build a polygon. Clockwise input is reversed; input that
    /// is not strictly convex, has duplicate vertices (within `1e-12` times
    /// the diameter), or has fewer than three vertices is rejected.
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::InvalidPolygon("non-finite vertex".into()));
        }
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        let poly = ConvexPolygon { vertices };
        poly.validate()?;
        Ok(poly)
    }

    fn validate(&self) -> Result<()> {
        let v = &self.vertices;
        let n = v.len();
        let dup = DUP_TOL * self.diameter();
        for i in 0..n {
            for j in (i + 1)..n {
                if v[i].distance(v[j]) <= dup {
                    return Err(Error::InvalidPolygon(format!(
                        "vertices {i} and {j} coincide within {dup:.3e}"
                    )));
                }
            }
        }
        for i in 0..n {
            let turn = orient(v[i], v[(i + 1) % n], v[(i + 2) % n]);
            if turn <= 0.0 {
                return Err(Error::InvalidPolygon(format!(
                    "not strictly convex at vertex {} (turn {turn:.3e})",
                    (i + 1) % n
                )));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Area by the shoelace formula.
    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut d: f64 = 0.0;
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                d = d.max(v[i].distance(v[j]));
            }
        }
        d
    }

    /// Area centroid; lies in the interior for a convex polygon.
    pub fn centroid(&self) -> Point2 {
        let v = &self.vertices;
        let n = v.len();
        let (mut cx, mut cy, mut a) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let (p, q) = (v[i], v[(i + 1) % n]);
            let w = p.cross(q);
            a += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        Point2::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    /// Point-in-polygon test with a small tolerance on the boundary.
    pub fn contains(&self, p: Point2) -> bool {
        let v = &self.vertices;
        let n = v.len();
        let tol = DUP_TOL * self.diameter().powi(2).max(1.0);
        (0..n).all(|i| orient(v[i], v[(i + 1) % n], p) >= -tol)
    }

    /// Dilation about the origin by `t > 0`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidInput(format!("scale factor {t} not positive")));
        }
        ConvexPolygon::new(self.vertices.iter().map(|&p| p * t).collect())
    }

    /// Translation by `d`.
    pub fn translated(&self, d: Point2) -> Result<Self> {
        ConvexPolygon::new(self.vertices.iter().map(|&p| p + d).collect())
    }

    /// True when the vertex set is invariant under `x ↦ -x` (rotation by π
    /// about the origin), within `1e-10` times the diameter.
    pub fn is_centrally_symmetric(&self) -> bool {
        let tol = 1e-10 * self.diameter();
        self.vertices.iter().all(|&p| {
            let q = p * -1.0;
            self.vertices.iter().any(|&w| w.distance(q) <= tol)
        })
    }
}

fn signed_area(v: &[Point2]) -> f64 {
    let n = v.len();
    let mut a = 0.0;
    for i in 0..n {
        a += v[i].cross(v[(i + 1) % n]);
    }
    0.5 * a
}

/// Regular `n`-gon inscribed in the circle of radius `circumradius`, first
/// vertex on the positive x-axis.
pub fn regular_polygon(n: usize, circumradius: f64) -> Result<ConvexPolygon> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("regular polygon needs n >= 3, got {n}")));
    }
    if !(circumradius > 0.0 && circumradius.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "circumradius must be positive, got {circumradius}"
        )));
    }
    let v = (0..n)
        .map(|j| {
            let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            Point2::new(circumradius * t.cos(), circumradius * t.sin())
        })
        .collect();
    ConvexPolygon::new(v)
}

/// Regular `n`-gon circumscribed about the circle of radius `radius`
/// (every edge is tangent to the circle), so it contains the disk.
pub fn circumscribed_polygon(radius: f64, n: usize) -> Result<ConvexPolygon> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "circumscribed polygon needs n >= 3, got {n}"
        )));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
    }
    let half = std::f64::consts::PI / n as f64;
    let rv = radius / half.cos();
    let v = (0..n)
        .map(|j| {
            let t = half + 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            Point2::new(rv * t.cos(), rv * t.sin())
        })
        .collect();
    ConvexPolygon::new(v)
}

/// Axis-aligned unit square `[0,1]²`.
pub fn unit_square() -> ConvexPolygon {
    ConvexPolygon::new(vec![
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(1.0, 1.0),
        Point2::new(0.0, 1.0),
    ])
    .expect("unit square is a valid polygon")
}

/// Convex hull by Andrew's monotone chain. Collinear points interior to
/// hull edges are dropped, so the result is strictly convex.
pub fn convex_hull_polygon(points: &[Point2]) -> Result<ConvexPolygon> {
    if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(Error::InvalidInput("non-finite input point".into()));
    }
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() < 3 {
        return Err(Error::InvalidPolygon(format!(
            "hull needs at least 3 distinct points, got {}",
            pts.len()
        )));
    }
    let build = |iter: &mut dyn Iterator<Item = Point2>| {
        let mut chain: Vec<Point2> = Vec::new();
        for p in iter {
            while chain.len() >= 2
                && orient(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0.0
            {
                chain.pop();
            }
            chain.push(p);
        }
        chain
    };
    let lower = build(&mut pts.iter().copied());
    let upper = build(&mut pts.iter().rev().copied());
    let mut hull = lower;
    hull.pop();
    hull.extend_from_slice(&upper[..upper.len().saturating_sub(1)]);
    if hull.len() < 3 {
        return Err(Error::InvalidPolygon("input points are collinear".into()));
    }
    ConvexPolygon::new(hull)
}

/// Deterministic random convex polygon with exactly `nv` vertices: convex
/// hulls of `nv` uniform samples in the unit disk, redrawn until all samples
/// lie in convex position. Identical `(nv, seed)` always returns the same
/// polygon.
pub fn random_convex_polygon(nv: usize, seed: u64) -> Result<ConvexPolygon> {
    if nv < 3 {
        return Err(Error::InvalidInput(format!("need nv >= 3, got {nv}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let pts: Vec<Point2> = (0..nv)
            .map(|_| {
                let r = rng.gen::<f64>().sqrt();
                let t = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
                Point2::new(r * t.cos(), r * t.sin())
            })
            .collect();
        if let Ok(hull) = convex_hull_polygon(&pts) {
            if hull.num_vertices() == nv {
                return Ok(hull);
            }
        }
    }
    Err(Error::InvalidInput(format!(
        "no convex position draw of {nv} points within the attempt budget (seed {seed})"
    )))
}

/// A conforming triangle mesh of a convex polygon.
///
/// Triangles are counterclockwise index triples into `nodes`; boundary
/// nodes are those on edges shared by exactly one triangle.
#[derive(Clone, Debug)]
pub struct TriangleMesh {
    pub nodes: Vec<Point2>,
    pub triangles: Vec<[usize; 3]>,
    boundary: Vec<usize>,
}

impl TriangleMesh {
    /// Build a mesh from raw parts, computing boundary nodes and validating
    /// orientation and boundary structure.
    pub fn from_parts(nodes: Vec<Point2>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::InvalidMesh("no triangles".into()));
        }
        for (t, tri) in triangles.iter().enumerate() {
            for &i in tri {
                if i >= nodes.len() {
                    return Err(Error::InvalidMesh(format!(
                        "triangle {t} references node {i} out of {}",
                        nodes.len()
                    )));
                }
            }
            let area2 = orient(nodes[tri[0]], nodes[tri[1]], nodes[tri[2]]);
            if area2 <= 0.0 {
                return Err(Error::InvalidMesh(format!(
                    "triangle {t} is not counterclockwise (doubled area {area2:.3e})"
                )));
            }
        }
        let boundary = boundary_nodes_of(&triangles, nodes.len())?;
        Ok(TriangleMesh { nodes, triangles, boundary })
    }

    /// Indices of boundary nodes, ascending.
    pub fn boundary_nodes(&self) -> &[usize] {
        &self.boundary
    }

    pub fn is_boundary(&self, node: usize) -> bool {
        self.boundary.binary_search(&node).is_ok()
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_interior(&self) -> usize {
        self.nodes.len() - self.boundary.len()
    }

    /// Sum of triangle areas.
    pub fn area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| 0.5 * orient(self.nodes[t[0]], self.nodes[t[1]], self.nodes[t[2]]))
            .sum()
    }

    /// Length of the longest edge.
    pub fn max_edge(&self) -> f64 {
        let mut h: f64 = 0.0;
        for t in &self.triangles {
            for k in 0..3 {
                h = h.max(self.nodes[t[k]].distance(self.nodes[t[(k + 1) % 3]]));
            }
        }
        h
    }

    /// Dilation about the origin by `t > 0`; connectivity is unchanged.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidInput(format!("scale factor {t} not positive")));
        }
        Ok(TriangleMesh {
            nodes: self.nodes.iter().map(|&p| p * t).collect(),
            triangles: self.triangles.clone(),
            boundary: self.boundary.clone(),
        })
    }
}

/// Boundary nodes = endpoints of edges that belong to exactly one triangle.
/// Checks that those edges close up into cycles (every boundary node has
/// exactly two incident boundary edges).
fn boundary_nodes_of(triangles: &[[usize; 3]], num_nodes: usize) -> Result<Vec<usize>> {
    let mut edge_count: HashMap<(usize, usize), u32> = HashMap::new();
    for tri in triangles {
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            *edge_count.entry(key).or_insert(0) += 1;
        }
    }
    let mut degree = vec![0u32; num_nodes];
    for (&(a, b), &c) in &edge_count {
        match c {
            1 => {
                degree[a] += 1;
                degree[b] += 1;
            }
            2 => {}
            _ => {
                return Err(Error::InvalidMesh(format!(
                    "edge ({a},{b}) belongs to {c} triangles"
                )))
            }
        }
    }
    let boundary: Vec<usize> = (0..num_nodes).filter(|&i| degree[i] > 0).collect();
    if boundary.iter().any(|&i| degree[i] != 2) {
        return Err(Error::InvalidMesh("boundary edges do not close into cycles".into()));
    }
    if boundary.is_empty() {
        return Err(Error::InvalidMesh("mesh has no boundary".into()));
    }
    Ok(boundary)
}

/// Fan-triangulate `poly` from its centroid, then apply `refine` rounds of
/// uniform midpoint subdivision (each round splits every triangle in four
/// and halves the longest edge).
pub fn triangulate(poly: &ConvexPolygon, refine: u32) -> TriangleMesh {
    let nv = poly.num_vertices();
    let mut nodes: Vec<Point2> = poly.vertices().to_vec();
    nodes.push(poly.centroid());
    let center = nv;
    let mut triangles: Vec<[usize; 3]> = (0..nv).map(|i| [i, (i + 1) % nv, center]).collect();

    for _ in 0..refine {
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, nodes: &mut Vec<Point2>| -> usize {
            let key = (a.min(b), a.max(b));
            *midpoint.entry(key).or_insert_with(|| {
                let p = (nodes[a] + nodes[b]) * 0.5;
                nodes.push(p);
                nodes.len() - 1
            })
        };
        let mut next = Vec::with_capacity(triangles.len() * 4);
        for &[a, b, c] in &triangles {
            let ab = mid(a, b, &mut nodes);
            let bc = mid(b, c, &mut nodes);
            let ca = mid(c, a, &mut nodes);
            next.push([a, ab, ca]);
            next.push([ab, b, bc]);
            next.push([ca, bc, c]);
            next.push([ab, bc, ca]);
        }
        triangles = next;
    }

    let boundary = boundary_nodes_of(&triangles, nodes.len())
        .expect("fan subdivision always yields a valid single-boundary mesh");
    TriangleMesh { nodes, triangles, boundary }
}

/// A right cylinder `cross_section × (0, length)` with the magnetic field
/// along the cylinder axis.
///
/// The cross-section must be symmetric under `x ↦ -x`; this is what makes
/// the cylinder invariant under the isometry
/// `(x₁, x₂, x₃) ↦ (-x₁, -x₂, x₃)` used by the shifted eigenvalue
/// comparison in 3D.
#[derive(Clone, Debug)]
pub struct CylinderDomain {
    pub cross_section: ConvexPolygon,
    pub length: f64,
}

impl CylinderDomain {
    pub fn new(cross_section: ConvexPolygon, length: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "cylinder length must be positive, got {length}"
            )));
        }
        if !cross_section.is_centrally_symmetric() {
            return Err(Error::InvalidInput(
                "cross-section is not symmetric under x ↦ -x (must be centered at the origin)"
                    .into(),
            ));
        }
        Ok(CylinderDomain { cross_section, length })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!((a - b).abs() <= tol, "{what}: {a} vs {b} (tol {tol})");
    }

    #[test]
    fn regular_square_matches_expected_vertices_and_area() {
        let p = regular_polygon(4, 1.0).unwrap();
        let want = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (v, w) in p.vertices().iter().zip(want) {
            assert_close(v.x, w.0, 1e-15, "vertex x");
            assert_close(v.y, w.1, 1e-15, "vertex y");
        }
        assert_close(p.area(), 2.0, 1e-14, "diamond area");
    }

    #[test]
    fn regular_polygon_area_approaches_disk() {
        // area = (n/2) r² sin(2π/n)
        for n in [3usize, 5, 8, 64] {
            let p = regular_polygon(n, 2.0).unwrap();
            let exact = 0.5 * n as f64 * 4.0 * (2.0 * std::f64::consts::PI / n as f64).sin();
            assert_close(p.area(), exact, 1e-12 * exact, "regular polygon area");
        }
    }

    #[test]
    fn circumscribed_square_is_the_expected_square() {
        let p = circumscribed_polygon(1.0, 4).unwrap();
        let mut got: Vec<(f64, f64)> = p.vertices().iter().map(|v| (v.x, v.y)).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let want = [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)];
        for (g, w) in got.iter().zip(want) {
            assert_close(g.0, w.0, 1e-12, "vertex x");
            assert_close(g.1, w.1, 1e-12, "vertex y");
        }
        assert_close(p.area(), 4.0, 1e-12, "square area");
    }

    #[test]
    fn circumscribed_polygon_contains_the_disk_and_tightens() {
        // Every edge is tangent: distance from origin to each edge line
        // equals the radius.
        for n in [3usize, 4, 16, 64] {
            let r = 1.0;
            let p = circumscribed_polygon(r, n).unwrap();
            let v = p.vertices();
            for i in 0..n {
                let (a, b) = (v[i], v[(i + 1) % n]);
                let d = orient(a, b, Point2::new(0.0, 0.0)).abs() / a.distance(b);
                assert_close(d, r, 1e-12, "edge-line distance");
            }
        }
        let p64 = circumscribed_polygon(1.0, 64).unwrap();
        let rel = (p64.area() - std::f64::consts::PI) / std::f64::consts::PI;
        assert!(rel > 0.0, "circumscribed area must exceed π");
        assert!(rel < 0.002, "64-gon area within 0.2% of π, got rel {rel}");
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let mut pts = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                pts.push(Point2::new(i as f64, j as f64));
            }
        }
        let hull = convex_hull_polygon(&pts).unwrap();
        assert_eq!(hull.num_vertices(), 4, "3x3 grid hull is the 4 corners");
        assert_close(hull.area(), 4.0, 1e-14, "hull area");
        for p in pts {
            assert!(hull.contains(p), "hull must contain every input point");
        }
    }

    #[test]
    fn hull_rejects_collinear_input() {
        let pts: Vec<Point2> = (0..5).map(|i| Point2::new(i as f64, 2.0 * i as f64)).collect();
        assert!(convex_hull_polygon(&pts).is_err());
    }

    #[test]
    fn polygon_validation_rejects_bad_input() {
        // duplicate vertices
        let dup = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ];
        assert!(ConvexPolygon::new(dup).is_err());
        // reflex corner
        let reflex = vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 0.5),
            Point2::new(2.0, 2.0),
        ];
        assert!(ConvexPolygon::new(reflex).is_err());
        // clockwise input is re-oriented, not rejected
        let cw = vec![Point2::new(0.0, 0.0), Point2::new(0.0, 1.0), Point2::new(1.0, 0.0)];
        let p = ConvexPolygon::new(cw).unwrap();
        assert!(p.area() > 0.0);
    }

    #[test]
    fn fan_triangulation_counts() {
        let sq = regular_polygon(4, 1.0).unwrap();
        let m0 = triangulate(&sq, 0);
        assert_eq!(m0.triangles.len(), 4);
        assert_eq!(m0.num_nodes(), 5);
        assert_eq!(m0.boundary_nodes().len(), 4);

        let m1 = triangulate(&sq, 1);
        assert_eq!(m1.triangles.len(), 16);
        assert_eq!(m1.num_nodes(), 13);
        assert_eq!(m1.boundary_nodes().len(), 8);

        let pent = regular_polygon(5, 1.0).unwrap();
        let m2 = triangulate(&pent, 2);
        assert_eq!(m2.triangles.len(), 80);
        // V = (T + 2 + B)/2 with B = 5·2²
        assert_eq!(m2.boundary_nodes().len(), 20);
        assert_eq!(m2.num_nodes(), 51);
    }

    #[test]
    fn refinement_preserves_area_and_halves_edges() {
        let hexagon = regular_polygon(6, 1.3).unwrap();
        let mut prev = triangulate(&hexagon, 0);
        for r in 1..=3 {
            let m = triangulate(&hexagon, r);
            assert_close(
                m.area(),
                hexagon.area(),
                1e-12 * hexagon.area(),
                "area conservation",
            );
            assert_close(m.max_edge(), prev.max_edge() / 2.0, 1e-12, "edge halving");
            assert_eq!(m.triangles.len(), prev.triangles.len() * 4);
            prev = m;
        }
    }

    #[test]
    fn mesh_nodes_are_distinct() {
        let p = regular_polygon(5, 1.0).unwrap();
        let m = triangulate(&p, 2);
        let tol = 1e-12 * p.diameter();
        for i in 0..m.num_nodes() {
            for j in (i + 1)..m.num_nodes() {
                assert!(
                    m.nodes[i].distance(m.nodes[j]) > tol,
                    "nodes {i} and {j} coincide"
                );
            }
        }
    }

    #[test]
    fn from_parts_validates_orientation_and_boundary() {
        let nodes = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)];
        let mesh = TriangleMesh::from_parts(nodes.clone(), vec![[0, 1, 2]]).unwrap();
        assert_eq!(mesh.boundary_nodes(), &[0, 1, 2]);
        assert!(TriangleMesh::from_parts(nodes, vec![[0, 2, 1]]).is_err(), "clockwise triangle");
    }

    #[test]
    fn random_polygons_are_deterministic_and_in_the_disk() {
        let a = random_convex_polygon(6, 42).unwrap();
        let b = random_convex_polygon(6, 42).unwrap();
        for (p, q) in a.vertices().iter().zip(b.vertices()) {
            assert_eq!(p.x, q.x);
            assert_eq!(p.y, q.y);
        }
        assert_eq!(a.num_vertices(), 6);
        assert!(a.vertices().iter().all(|p| p.norm() <= 1.0 + 1e-12));
        let c = random_convex_polygon(6, 43).unwrap();
        assert!(
            a.vertices()
                .iter()
                .zip(c.vertices())
                .any(|(p, q)| p.x != q.x || p.y != q.y),
            "different seeds should give different polygons"
        );
    }

    #[test]
    fn central_symmetry_detection() {
        assert!(regular_polygon(6, 1.0).unwrap().is_centrally_symmetric());
        assert!(regular_polygon(4, 2.0).unwrap().is_centrally_symmetric());
        assert!(!regular_polygon(5, 1.0).unwrap().is_centrally_symmetric());
        assert!(!unit_square().is_centrally_symmetric(), "unit square is not origin-centered");
        let centered = unit_square().translated(Point2::new(-0.5, -0.5)).unwrap();
        assert!(centered.is_centrally_symmetric());
    }

    #[test]
    fn cylinder_domain_validation() {
        let hexagon = regular_polygon(6, 1.0).unwrap();
        assert!(CylinderDomain::new(hexagon.clone(), 2.0).is_ok());
        assert!(CylinderDomain::new(hexagon.clone(), 0.0).is_err());
        assert!(CylinderDomain::new(hexagon, -1.0).is_err());
        assert!(
            CylinderDomain::new(unit_square(), 1.0).is_err(),
            "off-center cross-section must be rejected"
        );
        let centered = unit_square().translated(Point2::new(-0.5, -0.5)).unwrap();
        assert!(CylinderDomain::new(centered, 1.0).is_ok());
    }

    #[test]
    fn scaling_scales_area_quadratically() {
        let p = regular_polygon(5, 1.0).unwrap();
        let s = p.scaled(2.0).unwrap();
        assert_close(s.area(), 4.0 * p.area(), 1e-12, "scaled area");
        let m = triangulate(&p, 1);
        let ms = m.scaled(0.5).unwrap();
        assert_close(ms.area(), 0.25 * m.area(), 1e-12, "scaled mesh area");
        assert_eq!(ms.boundary_nodes(), m.boundary_nodes());
    }
}
