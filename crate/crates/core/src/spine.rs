//! The special polyhedron obtained from a framed graph by attaching one disk
//! along each cycle of the framing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framing::Framing;
use crate::graphs::{local_of, local_pair_index, vertex_of, Dart, DartGraph, LOCAL_PAIRS};

/// Cell structure of the spine: `n` true vertices, the `2n` graph edges and
/// three disks. `corner_table[v][k]` is the disk passing through the dart
/// pair `LOCAL_PAIRS[k]` at `v`.
#[derive(Clone, Debug)]
pub struct SpineComplex {
    pub graph: DartGraph,
    pub edges: Vec<(Dart, Dart)>,
    pub walks: [Vec<Dart>; 3],
    pub corner_table: Vec<[u8; 6]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialReport {
    pub link_ok: bool,
    pub orientation_preserving: [bool; 3],
}

impl SpecialReport {
    pub fn all_ok(&self) -> bool {
        self.link_ok && self.orientation_preserving.iter().all(|&b| b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Z2Homology {
    pub h0_rank: usize,
    pub h1_rank: usize,
    pub h2_rank: usize,
    pub closed_surface_count: usize,
}

impl SpineComplex {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.n()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.walks.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    #[inline]
    pub fn corner_color(&self, v: usize, i: u8, j: u8) -> u8 {
        self.corner_table[v][local_pair_index(i, j)]
    }

    fn edge_index(&self) -> Vec<usize> {
        let mut idx = vec![usize::MAX; self.graph.num_darts()];
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            idx[a as usize] = k;
            idx[b as usize] = k;
        }
        idx
    }

    /// Number of times each disk runs over each edge.
    fn sheet_counts(&self) -> Vec<[u32; 3]> {
        let idx = self.edge_index();
        let mut counts = vec![[0u32; 3]; self.edges.len()];
        for (color, walk) in self.walks.iter().enumerate() {
            for &d in walk {
                counts[idx[d as usize]][color] += 1;
            }
        }
        counts
    }

    /// Every color covers two opposite corners at each vertex.
    fn link_condition(&self) -> bool {
        self.corner_table.iter().all(|row| {
            (0..3u8).all(|c| {
                let ks: Vec<usize> = (0..6).filter(|&k| row[k] == c).collect();
                ks.len() == 2 && ks[0] + ks[1] == 5
            })
        })
    }
}

pub fn build_spine(g: &DartGraph, f: &Framing) -> Result<SpineComplex> {
    if f.n() != g.n() || f.cycles().iter().any(|c| !c.belongs_to(g)) {
        return Err(Error::NotAFraming("framing lives on another graph".into()));
    }
    let corner_table = (0..g.n())
        .map(|v| LOCAL_PAIRS.map(|(i, j)| f.color_of_pair(v, i, j) as u8))
        .collect();
    let walks = f.cycles().clone().map(|c| c.witness().to_vec());
    let s = SpineComplex {
        graph: g.clone(),
        edges: g.edge_darts(),
        walks,
        corner_table,
    };
    if !s.link_condition() {
        return Err(Error::NotAFraming(
            "corner table violates the vertex link condition".into(),
        ));
    }
    if s.sheet_counts().iter().any(|c| *c != [1, 1, 1]) {
        return Err(Error::NotAFraming(
            "some edge does not carry exactly three sheets".into(),
        ));
    }
    Ok(s)
}

/// Checks the vertex links and, for each disk `i`, whether its boundary curve
/// has an annulus neighbourhood in the closed surface formed by the graph and
/// the other two disks.
///
/// Along each edge the other two disks lie on opposite sides of the curve.
/// The color on a fixed side is carried through each vertex by the corner
/// table: entering through dart `a` with color `c` on that side, the side
/// contains the corner `{a, x}` of color `c`, and leaving through `b` the
/// same side is the corner `{b, x}`. The curve is orientation preserving iff
/// the side color returns to its starting value.
pub fn verify_special(s: &SpineComplex) -> Result<SpecialReport> {
    let link_ok = s.link_condition();
    let mut orientation_preserving = [false; 3];
    for (i, walk) in s.walks.iter().enumerate() {
        let i = i as u8;
        if walk.is_empty() {
            return Err(Error::InconsistentComplex(format!(
                "disk {i} has an empty boundary"
            )));
        }
        let start_color = (0..3u8).find(|&c| c != i).unwrap();
        let mut side = start_color;
        for t in 0..walk.len() {
            let arrive = s.graph.eps(walk[t]);
            let leave = walk[(t + 1) % walk.len()];
            let v = vertex_of(arrive);
            if vertex_of(leave) != v {
                return Err(Error::InconsistentComplex(format!(
                    "walk of disk {i} jumps between vertices at step {t}"
                )));
            }
            let (a, b) = (local_of(arrive), local_of(leave));
            if a == b || s.corner_color(v, a, b) != i {
                return Err(Error::InconsistentComplex(format!(
                    "walk of disk {i} does not follow its own corner at vertex {v}"
                )));
            }
            let x = (0..4u8)
                .find(|&x| x != a && x != b && s.corner_color(v, a, x) == side)
                .ok_or_else(|| {
                    Error::InconsistentComplex(format!("no corner of color {side} at vertex {v}"))
                })?;
            side = s.corner_color(v, b, x);
            if side == i {
                return Err(Error::InconsistentComplex(format!(
                    "disk {i} meets itself across vertex {v}"
                )));
            }
        }
        orientation_preserving[i as usize] = side == start_color;
    }
    Ok(SpecialReport {
        link_ok,
        orientation_preserving,
    })
}

fn rank_gf2(mut rows: Vec<Vec<u64>>) -> usize {
    let words = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..words * 64 {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn bitrow(len: usize, ones: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut row = vec![0u64; len.div_ceil(64).max(1)];
    for k in ones {
        row[k / 64] ^= 1 << (k % 64);
    }
    row
}

/// Mod-2 boundary of the sum of the selected disks, as an edge vector.
pub fn boundary2(s: &SpineComplex, selected: [bool; 3]) -> Vec<bool> {
    let idx = s.edge_index();
    let mut out = vec![false; s.edges.len()];
    for (walk, _) in s.walks.iter().zip(selected).filter(|(_, on)| *on) {
        for &d in walk {
            out[idx[d as usize]] ^= true;
        }
    }
    out
}

/// Cellular homology over Z/2 of the spine.
pub fn z2_homology(s: &SpineComplex) -> Z2Homology {
    let idx = s.edge_index();
    let (nv, ne, nf) = (s.num_vertices(), s.num_edges(), s.num_faces());
    // d1 as rows indexed by edges, d2 as rows indexed by disks
    let d1: Vec<Vec<u64>> = s
        .edges
        .iter()
        .map(|&(a, b)| bitrow(nv, [vertex_of(a), vertex_of(b)]))
        .collect();
    let d2: Vec<Vec<u64>> = s
        .walks
        .iter()
        .map(|walk| bitrow(ne, walk.iter().map(|&d| idx[d as usize])))
        .collect();
    let r1 = rank_gf2(d1);
    let r2 = rank_gf2(d2);
    let h2_rank = nf - r2;
    Z2Homology {
        h0_rank: nv - r1,
        h1_rank: ne - r1 - r2,
        h2_rank,
        closed_surface_count: (1usize << h2_rank) - 1,
    }
}
