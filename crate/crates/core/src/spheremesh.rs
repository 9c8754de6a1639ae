//! Even geodesic triangulations of the round 2-sphere.
//!
//! A closed triangulation of `S²` in which every vertex has even degree
//! admits a proper vertex 3-coloring. From such a coloring one assembles the
//! polyhedron `W`: one copy of a model triangle per face, with the copies
//! glued along edges whose endpoint colors agree.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Angular tolerance used throughout the module.
pub const ANGLE_TOLERANCE: f64 = 1e-10;

pub type Point = [f64; 3];

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Point, b: Point) -> Point {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: Point) -> f64 {
    dot(a, a).sqrt()
}

fn normalize(a: Point) -> Point {
    let n = norm(a);
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Great-circle distance between unit vectors.
pub fn angle(a: Point, b: Point) -> f64 {
    norm(cross(a, b)).atan2(dot(a, b))
}

/// Geodesic midpoint of two non-antipodal unit vectors.
pub fn geodesic_midpoint(a: Point, b: Point) -> Point {
    normalize([a[0] + b[0], a[1] + b[1], a[2] + b[2]])
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphericalTriangulation {
    vertices: Vec<Point>,
    /// Counter-clockwise seen from outside the sphere.
    faces: Vec<[usize; 3]>,
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl SphericalTriangulation {
    pub fn new(vertices: Vec<Point>, faces: Vec<[usize; 3]>) -> Result<Self> {
        if let Some(f) = faces.iter().find(|f| f.iter().any(|&v| v >= vertices.len())) {
            return Err(Error::InvalidMesh(format!("face {f:?} references a missing vertex")));
        }
        if let Some(f) = faces.iter().find(|f| f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
            return Err(Error::InvalidMesh(format!("face {f:?} repeats a vertex")));
        }
        Ok(SphericalTriangulation { vertices, faces })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    /// Undirected edge → incident faces.
    pub fn edge_faces(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for j in 0..3 {
                map.entry(edge_key(f[j], f[(j + 1) % 3])).or_default().push(fi);
            }
        }
        map
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(a, b) in self.edge_faces().keys() {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn is_even(&self) -> bool {
        self.degrees().iter().all(|d| d % 2 == 0)
    }

    pub fn surface_audit(&self) -> SurfaceAudit {
        surface_audit(self.vertices.len(), &self.faces)
    }

    /// Replace the diagonal shared by the two faces on edge `{a, b}` with the
    /// opposite diagonal.
    pub fn flip_edge(&self, a: usize, b: usize) -> Result<Self> {
        let find = |from: usize, to: usize| {
            self.faces.iter().position(|f| (0..3).any(|j| f[j] == from && f[(j + 1) % 3] == to))
        };
        let (Some(f1), Some(f2)) = (find(a, b), find(b, a)) else {
            return Err(Error::InvalidMesh(format!("edge ({a}, {b}) is not interior")));
        };
        let third = |f: [usize; 3]| f.into_iter().find(|&v| v != a && v != b).expect("triangle");
        let (c, d) = (third(self.faces[f1]), third(self.faces[f2]));
        if self.edge_faces().contains_key(&edge_key(c, d)) {
            return Err(Error::InvalidMesh(format!("flip would duplicate edge ({c}, {d})")));
        }
        let mut faces = self.faces.clone();
        faces[f1] = [a, d, c];
        faces[f2] = [d, b, c];
        SphericalTriangulation::new(self.vertices.clone(), faces)
    }
}

/// The octahedron with vertices `±e_i`.
pub fn octahedron() -> SphericalTriangulation {
    let vertices = vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut faces = Vec::with_capacity(8);
    for x in [0, 1] {
        for y in [2, 3] {
            for z in [4, 5] {
                let f = [x, y, z];
                let (a, b, c) = (vertices[x], vertices[y], vertices[z]);
                let outward = dot(cross(sub(b, a), sub(c, a)), a) > 0.0;
                faces.push(if outward { f } else { [x, z, y] });
            }
        }
    }
    SphericalTriangulation { vertices, faces }
}

/// Split every face into four through the geodesic midpoints of its edges.
pub fn subdivide(t: &SphericalTriangulation) -> SphericalTriangulation {
    let mut vertices = t.vertices.clone();
    let mut midpoints: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut mid = |a: usize, b: usize, vertices: &mut Vec<Point>| {
        *midpoints.entry(edge_key(a, b)).or_insert_with(|| {
            vertices.push(geodesic_midpoint(vertices[a], vertices[b]));
            vertices.len() - 1
        })
    };
    let mut faces = Vec::with_capacity(4 * t.faces.len());
    for &[a, b, c] in &t.faces {
        let ab = mid(a, b, &mut vertices);
        let bc = mid(b, c, &mut vertices);
        let ca = mid(c, a, &mut vertices);
        faces.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
    }
    SphericalTriangulation { vertices, faces }
}

pub fn subdivided_octahedron(times: usize) -> SphericalTriangulation {
    (0..times).fold(octahedron(), |t, _| subdivide(&t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    fn third(a: Color, b: Color) -> Option<Color> {
        if a == b {
            return None;
        }
        Color::ALL.into_iter().find(|&c| c != a && c != b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeColoring {
    pub colors: Vec<Color>,
}

impl ThreeColoring {
    pub fn is_proper(&self, t: &SphericalTriangulation) -> bool {
        self.colors.len() == t.vertices.len()
            && t.edge_faces().keys().all(|&(a, b)| self.colors[a] != self.colors[b])
    }

    pub fn faces_trichromatic(&self, t: &SphericalTriangulation) -> bool {
        t.faces.iter().all(|f| {
            let set: BTreeSet<Color> = f.iter().map(|&v| self.colors[v]).collect();
            set.len() == 3
        })
    }
}

/// Color by propagating across a spanning tree of the dual graph, then
/// verify the result on every edge and face.
pub fn three_color(t: &SphericalTriangulation) -> Result<ThreeColoring> {
    if t.faces.is_empty() {
        return Err(Error::InvalidMesh("no faces".into()));
    }
    let edges = t.edge_faces();
    let mut color: Vec<Option<Color>> = vec![None; t.vertices.len()];
    for (v, c) in t.faces[0].iter().zip(Color::ALL) {
        color[*v] = Some(c);
    }
    let mut seen = vec![false; t.faces.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(fi) = queue.pop_front() {
        let f = t.faces[fi];
        for j in 0..3 {
            let (a, b) = (f[j], f[(j + 1) % 3]);
            for &g in &edges[&edge_key(a, b)] {
                if seen[g] {
                    continue;
                }
                seen[g] = true;
                let x = t.faces[g].into_iter().find(|&v| v != a && v != b).expect("triangle");
                let (ca, cb) = (color[a].expect("colored"), color[b].expect("colored"));
                let want = Color::third(ca, cb).ok_or_else(|| {
                    Error::NotThreeColorable(format!("edge ({a}, {b}) is monochromatic"))
                })?;
                match color[x] {
                    Some(c) if c != want => {
                        return Err(Error::NotThreeColorable(format!(
                            "vertex {x} needs two different colors"
                        )))
                    }
                    _ => color[x] = Some(want),
                }
                queue.push_back(g);
            }
        }
    }
    let colors: Vec<Color> = color
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| Error::NotThreeColorable(format!("vertex {v} unreached"))))
        .collect::<Result<_>>()?;
    let coloring = ThreeColoring { colors };
    if !coloring.is_proper(t) || !coloring.faces_trichromatic(t) {
        return Err(Error::NotThreeColorable("propagated coloring fails verification".into()));
    }
    Ok(coloring)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaceGeometry {
    pub circumcenter: Point,
    /// Angular radius of the circumcircle.
    pub circumradius: f64,
    pub midpoints: [Point; 3],
    pub circumcenter_inside: bool,
    /// Spread of the center-to-vertex distances.
    pub equidistance_residual: f64,
}

pub fn face_geometry(t: &SphericalTriangulation, face: usize) -> Result<FaceGeometry> {
    let f = *t
        .faces
        .get(face)
        .ok_or_else(|| Error::InvalidArgument(format!("no face {face}")))?;
    let [a, b, c] = f.map(|v| t.vertices[v]);
    for (p, q) in [(a, b), (b, c), (c, a)] {
        if dot(p, q) < -1.0 + ANGLE_TOLERANCE {
            return Err(Error::Degenerate(format!("face {face} has antipodal vertices")));
        }
    }
    let n = cross(sub(b, a), sub(c, a));
    if norm(n) < ANGLE_TOLERANCE {
        return Err(Error::Degenerate(format!("face {face} is collinear")));
    }
    let mut center = normalize(n);
    if dot(center, [a[0] + b[0] + c[0], a[1] + b[1] + c[1], a[2] + b[2] + c[2]]) < 0.0 {
        center = [-center[0], -center[1], -center[2]];
    }
    let dists = [angle(center, a), angle(center, b), angle(center, c)];
    let max = dists.iter().copied().fold(f64::MIN, f64::max);
    let min = dists.iter().copied().fold(f64::MAX, f64::min);
    // Inside the closed spherical triangle: on the inner side of all three
    // great circles through its edges.
    let side = |p: Point, q: Point| dot(cross(p, q), center);
    let orientation = dot(n, a).signum();
    let inside = [side(a, b), side(b, c), side(c, a)]
        .iter()
        .all(|&s| s * orientation >= -ANGLE_TOLERANCE);
    Ok(FaceGeometry {
        circumcenter: center,
        circumradius: dists[0],
        midpoints: [
            geodesic_midpoint(a, b),
            geodesic_midpoint(b, c),
            geodesic_midpoint(c, a),
        ],
        circumcenter_inside: inside,
        equidistance_residual: max - min,
    })
}

/// Largest circumradius over all faces.
pub fn fineness(t: &SphericalTriangulation) -> Result<f64> {
    (0..t.faces.len())
        .map(|f| face_geometry(t, f).map(|g| g.circumradius))
        .try_fold(0.0_f64, |acc, r| r.map(|r| acc.max(r)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceAudit {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub edges_have_two_faces: bool,
    pub consistently_oriented: bool,
    pub links_are_cycles: bool,
}

impl SurfaceAudit {
    pub fn closed_surface(&self) -> bool {
        self.edges_have_two_faces && self.consistently_oriented && self.links_are_cycles
    }

    pub fn is_sphere_like(&self) -> bool {
        self.closed_surface() && self.euler == 2
    }
}

/// Closed-surface checks on an abstract triangle list.
pub fn surface_audit(vertex_count: usize, faces: &[[usize; 3]]) -> SurfaceAudit {
    let mut undirected: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut links: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertex_count];
    for f in faces {
        for j in 0..3 {
            let (a, b, c) = (f[j], f[(j + 1) % 3], f[(j + 2) % 3]);
            *undirected.entry(edge_key(a, b)).or_default() += 1;
            *directed.entry((a, b)).or_default() += 1;
            links[a].push((b, c));
        }
    }
    let used: BTreeSet<usize> = faces.iter().flatten().copied().collect();
    let links_are_cycles = (0..vertex_count).all(|v| is_single_cycle(&links[v]));
    SurfaceAudit {
        vertices: used.len(),
        edges: undirected.len(),
        faces: faces.len(),
        euler: used.len() as i64 - undirected.len() as i64 + faces.len() as i64,
        edges_have_two_faces: undirected.values().all(|&n| n == 2),
        consistently_oriented: directed.values().all(|&n| n == 1),
        links_are_cycles: used.len() == vertex_count && links_are_cycles,
    }
}

fn is_single_cycle(edges: &[(usize, usize)]) -> bool {
    if edges.len() < 3 {
        return false;
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.len() != edges.len() || adj.values().any(|n| n.len() != 2) {
        return false;
    }
    let start = *adj.keys().next().expect("nonempty");
    let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
    while cur != start {
        let next = adj[&cur].iter().copied().find(|&n| n != prev).unwrap_or(prev);
        prev = cur;
        cur = next;
        steps += 1;
        if steps > edges.len() {
            return false;
        }
    }
    steps == edges.len()
}

/// One edge identification of `W`: side `edge_a` of copy `face_a` glued to
/// side `edge_b` of copy `face_b`, both joining corners of colors `colors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    pub face_a: usize,
    pub edge_a: [usize; 2],
    pub face_b: usize,
    pub edge_b: [usize; 2],
    pub colors: [Color; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingPolyhedron {
    /// Corner colors of each model-triangle copy.
    pub copies: Vec<[Color; 3]>,
    pub identifications: Vec<Identification>,
    /// Triangles of `W` on its glued vertex set.
    pub faces: Vec<[usize; 3]>,
    pub audit: SurfaceAudit,
}

pub fn gluing_pattern(t: &SphericalTriangulation, coloring: &ThreeColoring) -> Result<GluingPolyhedron> {
    if !coloring.is_proper(t) || !coloring.faces_trichromatic(t) {
        return Err(Error::InvalidArgument("coloring is not proper".into()));
    }
    let copies: Vec<[Color; 3]> = t.faces.iter().map(|f| f.map(|v| coloring.colors[v])).collect();
    let mut uf = UnionFind::new(3 * t.faces.len());
    let mut identifications = Vec::new();
    for (&(a, b), fs) in &t.edge_faces() {
        let [fa, fb] = fs[..] else {
            return Err(Error::InvalidMesh(format!("edge ({a}, {b}) is not shared by two faces")));
        };
        // Corner of copy f carrying color c.
        let corner = |f: usize, c: Color| copies[f].iter().position(|&x| x == c).expect("trichromatic");
        let colors = [coloring.colors[a], coloring.colors[b]];
        let side_a = colors.map(|c| corner(fa, c));
        let side_b = colors.map(|c| corner(fb, c));
        for (&ca, &cb) in side_a.iter().zip(&side_b) {
            uf.union(3 * fa + ca, 3 * fb + cb);
        }
        identifications.push(Identification {
            face_a: fa,
            edge_a: side_a,
            face_b: fb,
            edge_b: side_b,
            colors,
        });
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut class = |corner: usize, uf: &mut UnionFind| {
        let root = uf.find(corner);
        let next = ids.len();
        *ids.entry(root).or_insert(next)
    };
    let faces: Vec<[usize; 3]> = (0..t.faces.len())
        .map(|f| [class(3 * f, &mut uf), class(3 * f + 1, &mut uf), class(3 * f + 2, &mut uf)])
        .collect();
    let audit = surface_audit(ids.len(), &faces);
    Ok(GluingPolyhedron {
        copies,
        identifications,
        faces,
        audit,
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Everything checked about one colored mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshAudit {
    pub surface: SurfaceAudit,
    pub even: bool,
    pub properly_colored: bool,
    pub trichromatic: bool,
    pub circumcenters_inside: bool,
    pub max_equidistance_residual: f64,
    pub fineness: f64,
    pub gluing_sphere_like: bool,
}

impl MeshAudit {
    pub fn passed(&self) -> bool {
        self.surface.is_sphere_like()
            && self.even
            && self.properly_colored
            && self.trichromatic
            && self.circumcenters_inside
            && self.max_equidistance_residual < ANGLE_TOLERANCE
            && self.gluing_sphere_like
    }
}

/// A colored, audited mesh ready for export.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredMesh {
    pub mesh: SphericalTriangulation,
    pub coloring: ThreeColoring,
    pub geometry: Vec<FaceGeometry>,
    pub gluing: GluingPolyhedron,
    pub audit: MeshAudit,
}

pub fn build_colored_mesh(t: SphericalTriangulation) -> Result<ColoredMesh> {
    let coloring = three_color(&t)?;
    let geometry = (0..t.faces.len())
        .map(|f| face_geometry(&t, f))
        .collect::<Result<Vec<_>>>()?;
    let gluing = gluing_pattern(&t, &coloring)?;
    let audit = MeshAudit {
        surface: t.surface_audit(),
        even: t.is_even(),
        properly_colored: coloring.is_proper(&t),
        trichromatic: coloring.faces_trichromatic(&t),
        circumcenters_inside: geometry.iter().all(|g| g.circumcenter_inside),
        max_equidistance_residual: geometry
            .iter()
            .map(|g| g.equidistance_residual)
            .fold(0.0, f64::max),
        fineness: geometry.iter().map(|g| g.circumradius).fold(0.0, f64::max),
        gluing_sphere_like: gluing.audit.is_sphere_like(),
    };
    Ok(ColoredMesh {
        mesh: t,
        coloring,
        geometry,
        gluing,
        audit,
    })
}

/// OFF text for the mesh.
pub fn to_off(t: &SphericalTriangulation) -> String {
    let mut out = format!("OFF\n{} {} 0\n", t.vertices.len(), t.faces.len());
    for v in &t.vertices {
        out.push_str(&format!("{} {} {}\n", v[0], v[1], v[2]));
    }
    for f in &t.faces {
        out.push_str(&format!("3 {} {} {}\n", f[0], f[1], f[2]));
    }
    out
}

/// Parse OFF text (triangles only).
pub fn from_off(text: &str) -> Result<SphericalTriangulation> {
    let bad = |msg: &str| Error::InvalidMesh(format!("OFF: {msg}"));
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    if lines.next() != Some("OFF") {
        return Err(bad("missing header"));
    }
    let counts: Vec<usize> = lines
        .next()
        .ok_or_else(|| bad("missing counts"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("bad count")))
        .collect::<Result<_>>()?;
    let (nv, nf) = match counts[..] {
        [nv, nf, _] => (nv, nf),
        _ => return Err(bad("expected three counts")),
    };
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let p: Vec<f64> = lines
            .next()
            .ok_or_else(|| bad("truncated vertices"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad coordinate")))
            .collect::<Result<_>>()?;
        let [x, y, z] = p[..] else { return Err(bad("vertex needs 3 coordinates")) };
        vertices.push([x, y, z]);
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let f: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("truncated faces"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad index")))
            .collect::<Result<_>>()?;
        let [3, a, b, c] = f[..] else { return Err(bad("only triangles are supported")) };
        faces.push([a, b, c]);
    }
    SphericalTriangulation::new(vertices, faces)
}

/// JSON companion of an OFF export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshSidecar {
    pub schema: String,
    pub subdivisions: usize,
    pub colors: Vec<Color>,
    pub circumcenters: Vec<Point>,
    pub gluing: Vec<Identification>,
    pub audit: MeshAudit,
}

impl MeshSidecar {
    pub fn new(schema: &str, subdivisions: usize, mesh: &ColoredMesh) -> Self {
        MeshSidecar {
            schema: schema.to_string(),
            subdivisions,
            colors: mesh.coloring.colors.clone(),
            circumcenters: mesh.geometry.iter().map(|g| g.circumcenter).collect(),
            gluing: mesh.gluing.identifications.clone(),
            audit: mesh.audit.clone(),
        }
    }
}
