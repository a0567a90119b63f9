//! Ideal triangulation dual to a framed spine, its truncation, the boundary
//! surface and the graph of boundary components.
//!
//! Tetrahedron `v` is dual to spine vertex `v`; its face `a` is dual to the
//! dart `4v + a` and its edge `{x, y}` to the corner opposite `{x, y}`.
//! Vertex `z` of face `a` is labeled by the cycle owning the corner `{a, z}`,
//! and faces are glued by matching labels.

use std::collections::VecDeque;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{local_of, local_pair_index, vertex_of, LOCAL_PAIRS};
use crate::spine::SpineComplex;

/// How face `a` of a tetrahedron is glued.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceGluing {
    /// `(tetrahedron, face)` on the other side.
    pub target: (u32, u8),
    /// Image of each vertex of this tetrahedron in the target tetrahedron.
    pub perm: [u8; 4],
    /// Vertex of this face carrying cycle label `c`.
    pub slot_vertex: [u8; 3],
}

impl FaceGluing {
    /// For each cycle label, the target vertex it is glued to.
    pub fn corner_map(&self) -> [u8; 3] {
        self.slot_vertex.map(|x| self.perm[x as usize])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub n: usize,
    /// Indexed by `4 * tet + face`.
    pub gluings: Vec<FaceGluing>,
    /// Orbits of `(tet, edge_index)`, each sorted, sorted among themselves.
    pub edge_classes: Vec<Vec<(u32, u8)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationReport {
    pub manifold_ok: bool,
    pub m_orientable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySurface {
    pub triangle_count: usize,
    /// Pairs of `(triangle, face)` glued along a boundary edge; the triangle
    /// `4t + x` truncates vertex `x` of tetrahedron `t` and its edge on face
    /// `f` lies in that face of the tetrahedron.
    pub edge_gluings: Vec<((u32, u8), (u32, u8))>,
    pub vertex_orbits: usize,
    pub component_count: usize,
    pub euler_char: i64,
    pub orientable: bool,
    /// Orientable genus when `orientable`, otherwise non-orientable genus.
    pub genus: i64,
    pub triangle_component: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GammaGraph {
    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }

    pub fn is_wedge_of_three_circles(&self) -> bool {
        self.vertices == 1 && self.edges.len() == 3 && self.loop_count() == 3
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn count_roots(&mut self, members: impl IntoIterator<Item = usize>) -> usize {
        let mut roots: Vec<usize> = members.into_iter().map(|m| self.find(m)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

fn perm_is_bijection(p: &[u8; 4]) -> bool {
    let mut seen = [false; 4];
    for &x in p {
        if x > 3 || seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    true
}

fn perm_is_odd(p: &[u8; 4]) -> bool {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

impl Triangulation {
    pub fn gluing(&self, tet: usize, face: u8) -> &FaceGluing {
        &self.gluings[4 * tet + face as usize]
    }

    pub fn num_face_pairings(&self) -> usize {
        self.gluings.len() / 2
    }

    pub fn edge_valences(&self) -> Vec<usize> {
        self.edge_classes.iter().map(Vec::len).collect()
    }

    /// Checks that the gluing table is an involution with inverse vertex maps.
    fn check_involution(&self) -> Result<()> {
        for (slot, g) in self.gluings.iter().enumerate() {
            let (t, f) = ((slot / 4) as u32, (slot % 4) as u8);
            if g.target.0 as usize >= self.n || g.target.1 > 3 {
                return Err(Error::malformed(format!("face {t}:{f} glued out of range")));
            }
            if g.target == (t, f) {
                return Err(Error::malformed(format!("face {t}:{f} glued to itself")));
            }
            if !perm_is_bijection(&g.perm) || g.perm[f as usize] != g.target.1 {
                return Err(Error::malformed(format!(
                    "face {t}:{f} has an invalid vertex map"
                )));
            }
            let back = self.gluing(g.target.0 as usize, g.target.1);
            if back.target != (t, f) || (0..4).any(|x| back.perm[g.perm[x] as usize] as usize != x)
            {
                return Err(Error::malformed(format!(
                    "gluing of face {t}:{f} is not symmetric"
                )));
            }
        }
        Ok(())
    }
}

fn compute_edge_classes(n: usize, gluings: &[FaceGluing]) -> Vec<Vec<(u32, u8)>> {
    let mut uf = UnionFind::new(6 * n);
    for (slot, g) in gluings.iter().enumerate() {
        let (t, f) = (slot / 4, (slot % 4) as u8);
        for &(x, y) in LOCAL_PAIRS.iter().filter(|(x, y)| *x != f && *y != f) {
            let here = 6 * t + local_pair_index(x, y);
            let there =
                6 * g.target.0 as usize + local_pair_index(g.perm[x as usize], g.perm[y as usize]);
            uf.union(here, there);
        }
    }
    let mut classes: Vec<Vec<(u32, u8)>> = Vec::new();
    let mut class_of_root = vec![usize::MAX; 6 * n];
    for node in 0..6 * n {
        let r = uf.find(node);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[class_of_root[r]].push(((node / 6) as u32, (node % 6) as u8));
    }
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

/// One tetrahedron per true vertex, faces glued across graph edges.
pub fn dualize(s: &SpineComplex) -> Result<Triangulation> {
    let g = &s.graph;
    let n = g.n();
    let slots = |v: usize, a: u8| -> Result<[u8; 3]> {
        let mut out = [u8::MAX; 3];
        for z in (0..4u8).filter(|&z| z != a) {
            let c = s.corner_color(v, a, z) as usize;
            if c > 2 || out[c] != u8::MAX {
                return Err(Error::DualizationFailure(format!(
                    "face {a} of tetrahedron {v} has repeated cycle labels"
                )));
            }
            out[c] = z;
        }
        Ok(out)
    };
    let mut gluings = Vec::with_capacity(4 * n);
    for d in 0..g.num_darts() as u32 {
        let (v, a) = (vertex_of(d), local_of(d));
        let e = g.eps(d);
        let (w, b) = (vertex_of(e), local_of(e));
        let slot_vertex = slots(v, a)?;
        let target_slots = slots(w, b)?;
        let mut perm = [0u8; 4];
        perm[a as usize] = b;
        for c in 0..3 {
            perm[slot_vertex[c] as usize] = target_slots[c];
        }
        if !perm_is_bijection(&perm) {
            return Err(Error::DualizationFailure(format!(
                "face {v}:{a} has no consistent gluing"
            )));
        }
        gluings.push(FaceGluing {
            target: (w as u32, b),
            perm,
            slot_vertex,
        });
    }
    let edge_classes = compute_edge_classes(n, &gluings);
    for class in &edge_classes {
        let color = |&(t, k): &(u32, u8)| {
            let (x, y) = LOCAL_PAIRS[k as usize];
            s.corner_color(t as usize, x, y)
        };
        let c0 = color(&class[0]);
        if class.iter().any(|m| color(m) != c0) {
            return Err(Error::DualizationFailure(
                "an edge class mixes cycle labels".into(),
            ));
        }
    }
    Ok(Triangulation {
        n,
        gluings,
        edge_classes,
    })
}

#[inline]
fn corner_node(t: usize, x: u8, y: u8) -> usize {
    16 * t + 4 * x as usize + y as usize
}

/// Unions directed tetrahedron edges `(t, x -> y)` across every gluing.
fn directed_edge_classes(t: &Triangulation) -> UnionFind {
    let mut uf = UnionFind::new(16 * t.n);
    for (slot, g) in t.gluings.iter().enumerate() {
        let (tet, f) = (slot / 4, (slot % 4) as u8);
        for x in (0..4u8).filter(|&x| x != f) {
            for y in (0..4u8).filter(|&y| y != f && y != x) {
                uf.union(
                    corner_node(tet, x, y),
                    corner_node(g.target.0 as usize, g.perm[x as usize], g.perm[y as usize]),
                );
            }
        }
    }
    uf
}

/// `manifold_ok`: no edge is identified with itself in reverse.
/// `m_orientable`: tetrahedra admit orientations making every gluing
/// orientation-reversing on the shared face.
pub fn orientation_check(t: &Triangulation) -> OrientationReport {
    if t.check_involution().is_err() {
        return OrientationReport {
            manifold_ok: false,
            m_orientable: false,
        };
    }
    let mut uf = directed_edge_classes(t);
    let manifold_ok = (0..t.n).all(|tet| {
        LOCAL_PAIRS
            .iter()
            .all(|&(x, y)| uf.find(corner_node(tet, x, y)) != uf.find(corner_node(tet, y, x)))
    });
    let mut sign = vec![0i8; t.n];
    let mut m_orientable = true;
    for root in 0..t.n {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(tet) = queue.pop_front() {
            for f in 0..4u8 {
                let g = t.gluing(tet, f);
                let other = g.target.0 as usize;
                let want = if perm_is_odd(&g.perm) {
                    sign[tet]
                } else {
                    -sign[tet]
                };
                if sign[other] == 0 {
                    sign[other] = want;
                    queue.push_back(other);
                } else if sign[other] != want {
                    m_orientable = false;
                }
            }
        }
    }
    OrientationReport {
        manifold_ok,
        m_orientable,
    }
}

/// Position of `q` after `p` in the cyclic order of the sorted triple `verts`.
fn cyclic_direction(verts: [u8; 3], p: u8, q: u8) -> i8 {
    let i = verts.iter().position(|&v| v == p).unwrap();
    if verts[(i + 1) % 3] == q {
        1
    } else {
        -1
    }
}

/// The boundary surface tiled by the `4n` truncation triangles.
pub fn boundary(t: &Triangulation) -> Result<BoundarySurface> {
    if !orientation_check(t).manifold_ok {
        return Err(Error::NotAManifold(
            "an edge is glued to itself in reverse".into(),
        ));
    }
    let n = t.n;
    let tri = |tet: usize, x: u8| 4 * tet + x as usize;
    let mut corners = UnionFind::new(16 * n);
    let mut components = UnionFind::new(4 * n);
    let mut edge_gluings = Vec::with_capacity(6 * n);
    for (slot, g) in t.gluings.iter().enumerate() {
        let (tet, f) = (slot / 4, (slot % 4) as u8);
        let (other, f2) = (g.target.0 as usize, g.target.1);
        for x in (0..4u8).filter(|&x| x != f) {
            let x2 = g.perm[x as usize];
            components.union(tri(tet, x), tri(other, x2));
            if (tet, f) < (other, f2) {
                edge_gluings.push(((tri(tet, x) as u32, f), (tri(other, x2) as u32, f2)));
            }
            for y in (0..4u8).filter(|&y| y != f && y != x) {
                corners.union(
                    corner_node(tet, x, y),
                    corner_node(other, x2, g.perm[y as usize]),
                );
            }
        }
    }
    edge_gluings.sort_unstable();
    let vertex_orbits = corners.count_roots((0..n).flat_map(|tet| {
        (0..4u8).flat_map(move |x| {
            (0..4u8)
                .filter(move |&y| y != x)
                .map(move |y| corner_node(tet, x, y))
        })
    }));
    let component_count = components.count_roots(0..4 * n);
    let triangle_component = {
        let roots: Vec<usize> = (0..4 * n).map(|k| components.find(k)).collect();
        let mut sorted = roots.clone();
        sorted.sort_unstable();
        sorted.dedup();
        roots
            .iter()
            .map(|r| sorted.binary_search(r).unwrap())
            .collect::<Vec<_>>()
    };

    // orientability: 2-color triangles so glued edges run in opposite directions
    let verts_of = |x: u8| -> [u8; 3] {
        let v: Vec<u8> = (0..4u8).filter(|&y| y != x).collect();
        [v[0], v[1], v[2]]
    };
    let mut sign = vec![0i8; 4 * n];
    let mut orientable = true;
    for root in 0..4 * n {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(k) = queue.pop_front() {
            let (tet, x) = (k / 4, (k % 4) as u8);
            for f in (0..4u8).filter(|&f| f != x) {
                let g = t.gluing(tet, f);
                let (other, x2) = (g.target.0 as usize, g.perm[x as usize]);
                let [p, q] = {
                    let e: Vec<u8> = (0..4u8).filter(|&y| y != x && y != f).collect();
                    [e[0], e[1]]
                };
                let here = cyclic_direction(verts_of(x), p, q);
                let there = cyclic_direction(verts_of(x2), g.perm[p as usize], g.perm[q as usize]);
                let want = -sign[k] * here * there;
                let k2 = tri(other, x2);
                if sign[k2] == 0 {
                    sign[k2] = want;
                    queue.push_back(k2);
                } else if sign[k2] != want {
                    orientable = false;
                }
            }
        }
    }

    let euler_char = vertex_orbits as i64 - 6 * n as i64 + 4 * n as i64;
    let deficit = 2 * component_count as i64 - euler_char;
    let genus = if orientable { deficit / 2 } else { deficit };
    Ok(BoundarySurface {
        triangle_count: 4 * n,
        edge_gluings,
        vertex_orbits,
        component_count,
        euler_char,
        orientable,
        genus,
        triangle_component,
    })
}

/// One vertex per boundary component, one edge per edge class joining the
/// components that contain its two truncated ends.
pub fn gamma_graph(t: &Triangulation, b: &BoundarySurface) -> GammaGraph {
    let edges = t
        .edge_classes
        .iter()
        .map(|class| {
            let (tet, k) = class[0];
            let (x, y) = LOCAL_PAIRS[k as usize];
            let comp = |z: u8| b.triangle_component[4 * tet as usize + z as usize];
            let (a, c) = (comp(x), comp(y));
            (a.min(c), a.max(c))
        })
        .collect();
    GammaGraph {
        vertices: b.component_count,
        edges,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    TriJson,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tri-json" => Ok(ExportFormat::TriJson),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FaceJson {
    glued_to: [u32; 2],
    corner_map: [u8; 3],
}

#[derive(Serialize, Deserialize)]
struct TetJson {
    faces: Vec<FaceJson>,
}

#[derive(Serialize, Deserialize)]
struct TriJson {
    n: usize,
    tets: Vec<TetJson>,
    edge_classes: Vec<Vec<[u32; 2]>>,
}

/// Serializes the gluing table. Corner slots follow the cycle order of the
/// framing's sorted triple.
pub fn export(t: &Triangulation, format: ExportFormat) -> Result<String> {
    match format {
        ExportFormat::TriJson => {
            let doc = TriJson {
                n: t.n,
                tets: t
                    .gluings
                    .chunks(4)
                    .map(|faces| TetJson {
                        faces: faces
                            .iter()
                            .map(|g| FaceJson {
                                glued_to: [g.target.0, g.target.1 as u32],
                                corner_map: g.corner_map(),
                            })
                            .collect(),
                    })
                    .collect(),
                edge_classes: t
                    .edge_classes
                    .iter()
                    .map(|c| c.iter().map(|&(tet, k)| [tet, k as u32]).collect())
                    .collect(),
            };
            let mut out = serde_json::to_string(&doc).expect("plain data serializes");
            out.push('\n');
            Ok(out)
        }
    }
}

/// Reads a `tri-json` document. Vertex maps are rebuilt from the corner maps
/// on both sides of each face; edge classes are recomputed from the gluings.
pub fn import_tri_json(text: &str) -> Result<Triangulation> {
    let doc: TriJson =
        serde_json::from_str(text).map_err(|e| Error::malformed(format!("tri-json: {e}")))?;
    if doc.n == 0 || doc.tets.len() != doc.n || doc.tets.iter().any(|t| t.faces.len() != 4) {
        return Err(Error::malformed(
            "tri-json: expected n tetrahedra with 4 faces each",
        ));
    }
    let face = |t: u32, f: u32| -> Result<&FaceJson> {
        doc.tets
            .get(t as usize)
            .and_then(|tet| tet.faces.get(f as usize))
            .ok_or_else(|| Error::malformed(format!("tri-json: face {t}:{f} out of range")))
    };
    let mut gluings = Vec::with_capacity(4 * doc.n);
    for (t, tet) in doc.tets.iter().enumerate() {
        for (f, fj) in tet.faces.iter().enumerate() {
            let [t2, f2] = fj.glued_to;
            let back = face(t2, f2)?;
            if back.glued_to != [t as u32, f as u32] {
                return Err(Error::malformed(format!(
                    "tri-json: face {t}:{f} is not glued back"
                )));
            }
            let slot_vertex = back.corner_map;
            let mut perm = [u8::MAX; 4];
            perm[f] = f2 as u8;
            for c in 0..3 {
                let x = slot_vertex[c];
                if x > 3 || x as usize == f || perm[x as usize] != u8::MAX {
                    return Err(Error::malformed(format!(
                        "tri-json: bad corner map at {t}:{f}"
                    )));
                }
                perm[x as usize] = fj.corner_map[c];
            }
            if !perm_is_bijection(&perm) {
                return Err(Error::malformed(format!(
                    "tri-json: face {t}:{f} has no bijective gluing"
                )));
            }
            gluings.push(FaceGluing {
                target: (t2, f2 as u8),
                perm,
                slot_vertex,
            });
        }
    }
    let edge_classes = compute_edge_classes(doc.n, &gluings);
    let t = Triangulation {
        n: doc.n,
        gluings,
        edge_classes,
    };
    t.check_involution()?;
    Ok(t)
}

/// Edge classes as listed in a `tri-json` document, without recomputation.
pub fn declared_edge_classes(text: &str) -> Result<Vec<Vec<(u32, u8)>>> {
    let doc: TriJson =
        serde_json::from_str(text).map_err(|e| Error::malformed(format!("tri-json: {e}")))?;
    Ok(doc
        .edge_classes
        .iter()
        .map(|c| c.iter().map(|&[t, k]| (t, k as u8)).collect())
        .collect())
}
