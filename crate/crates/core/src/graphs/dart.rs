use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a dart (half-edge). Vertex `v` owns darts `4v..4v+3`.
pub type Dart = u32;

#[inline]
pub fn vertex_of(d: Dart) -> usize {
    (d >> 2) as usize
}

#[inline]
pub fn local_of(d: Dart) -> u8 {
    (d & 3) as u8
}

#[inline]
pub fn dart_at(v: usize, local: u8) -> Dart {
    (v as Dart) * 4 + local as Dart
}

/// One of the three perfect matchings of a vertex's four local darts `(a,b,c,d) = (0,1,2,3)`.
///
/// `P0 = {ab|cd}`, `P1 = {ac|bd}`, `P2 = {ad|bc}`. The partner of local dart `i`
/// under pairing `Pk` is `i ^ (k + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LocalPairing {
    P0 = 0,
    P1 = 1,
    P2 = 2,
}

impl LocalPairing {
    pub const ALL: [LocalPairing; 3] = [LocalPairing::P0, LocalPairing::P1, LocalPairing::P2];

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            0 => Some(LocalPairing::P0),
            1 => Some(LocalPairing::P1),
            2 => Some(LocalPairing::P2),
            _ => None,
        }
    }

    #[inline]
    pub fn index(self) -> u8 {
        self as u8
    }

    #[inline]
    pub fn partner(self, local: u8) -> u8 {
        local ^ (self as u8 + 1)
    }

    /// The pairing that contains the pair `{i, j}` (`i != j`).
    #[inline]
    pub fn containing(i: u8, j: u8) -> Self {
        debug_assert!(i != j && i < 4 && j < 4);
        Self::from_index((i ^ j) - 1).expect("distinct local darts")
    }

    pub fn pairs(self) -> [(u8, u8); 2] {
        match self {
            LocalPairing::P0 => [(0, 1), (2, 3)],
            LocalPairing::P1 => [(0, 2), (1, 3)],
            LocalPairing::P2 => [(0, 3), (1, 2)],
        }
    }

    /// Image of this pairing under a permutation of the local darts.
    pub fn permuted(self, local_perm: &[u8; 4]) -> Self {
        let [(a, b), _] = self.pairs();
        Self::containing(local_perm[a as usize], local_perm[b as usize])
    }
}

/// The six dart pairs at a vertex, in the fixed order used by corner tables
/// and tetrahedron edge indices.
pub const LOCAL_PAIRS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[inline]
pub fn local_pair_index(i: u8, j: u8) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("invalid local pair ({i}, {j})"),
    }
}

/// A connected 4-regular multigraph stored as darts with a fixed-point-free
/// edge involution. Loops and parallel edges are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DartGraph {
    n: usize,
    eps: Vec<Dart>,
}

impl fmt::Debug for DartGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DartGraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl DartGraph {
    /// Builds a graph from its edge involution on `4n` darts.
    pub fn from_involution(eps: Vec<Dart>) -> Result<Self> {
        if eps.is_empty() || !eps.len().is_multiple_of(4) {
            return Err(Error::malformed(format!(
                "dart count {} is not a positive multiple of 4",
                eps.len()
            )));
        }
        for (d, &e) in eps.iter().enumerate() {
            if e as usize >= eps.len() {
                return Err(Error::malformed(format!("dart {d} maps out of range")));
            }
            if e as usize == d || eps[e as usize] as usize != d {
                return Err(Error::malformed(format!(
                    "edge map is not a fixed-point-free involution at dart {d}"
                )));
            }
        }
        let g = DartGraph {
            n: eps.len() / 4,
            eps,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Builds a graph from an edge list. Edges are processed in order; each
    /// edge takes the lowest free dart at each endpoint (a loop takes two).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::malformed("vertex count must be positive"));
        }
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::malformed(format!("edge ({u}, {v}) out of range")));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        if let Some((vertex, &degree)) = degree.iter().enumerate().find(|(_, &d)| d != 4) {
            return Err(Error::NonQuadrivalent { vertex, degree });
        }
        let mut next_free = vec![0u8; n];
        let mut eps = vec![0 as Dart; 4 * n];
        for &(u, v) in edges {
            let du = dart_at(u, next_free[u]);
            next_free[u] += 1;
            let dv = dart_at(v, next_free[v]);
            next_free[v] += 1;
            eps[du as usize] = dv;
            eps[dv as usize] = du;
        }
        Self::from_involution(eps)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_darts(&self) -> usize {
        self.eps.len()
    }

    pub fn num_edges(&self) -> usize {
        2 * self.n
    }

    #[inline]
    pub fn eps(&self, d: Dart) -> Dart {
        self.eps[d as usize]
    }

    pub fn involution(&self) -> &[Dart] {
        &self.eps
    }

    /// Edges as dart pairs `(d, eps(d))` with `d < eps(d)`, ascending.
    pub fn edge_darts(&self) -> Vec<(Dart, Dart)> {
        (0..self.eps.len() as Dart)
            .filter(|&d| d < self.eps(d))
            .map(|d| (d, self.eps(d)))
            .collect()
    }

    /// Edges as vertex pairs `(u, v)` with `u <= v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .edge_darts()
            .into_iter()
            .map(|(a, b)| {
                let (u, v) = (vertex_of(a), vertex_of(b));
                (u.min(v), u.max(v))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Multiplicity matrix; the diagonal counts loop ends (twice the loop count).
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0u8; self.n]; self.n];
        for (d, &e) in self.eps.iter().enumerate() {
            a[vertex_of(d as Dart)][vertex_of(e)] += 1;
        }
        a
    }

    pub fn is_simple(&self) -> bool {
        let a = self.adjacency();
        (0..self.n).all(|u| a[u][u] == 0 && a[u].iter().all(|&m| m <= 1))
    }

    fn is_connected(&self) -> bool {
        self.reachable_avoiding(&[]) == self.n
    }

    /// Number of vertices reachable from the first vertex not in `removed`.
    pub(crate) fn reachable_avoiding(&self, removed: &[usize]) -> usize {
        let Some(start) = (0..self.n).find(|v| !removed.contains(v)) else {
            return 0;
        };
        let mut seen = vec![false; self.n];
        for &r in removed {
            seen[r] = true;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for local in 0..4 {
                let w = vertex_of(self.eps(dart_at(v, local)));
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count
    }

    /// Applies a dart relabeling `old -> new`. The map must send the dart
    /// block of each vertex onto the dart block of a vertex.
    pub fn relabeled(&self, dart_map: &[Dart]) -> Result<Self> {
        if dart_map.len() != self.eps.len() {
            return Err(Error::malformed("relabeling has the wrong length"));
        }
        for v in 0..self.n {
            let target = vertex_of(dart_map[4 * v] as Dart);
            if (1..4).any(|i| vertex_of(dart_map[4 * v + i]) != target) {
                return Err(Error::malformed("relabeling splits a vertex"));
            }
        }
        let mut eps = vec![Dart::MAX; self.eps.len()];
        for (d, &e) in self.eps.iter().enumerate() {
            let nd = dart_map[d] as usize;
            if eps[nd] != Dart::MAX {
                return Err(Error::malformed("relabeling is not a bijection"));
            }
            eps[nd] = dart_map[e as usize];
        }
        Self::from_involution(eps)
    }
}

/// Dart relabeling built from a vertex permutation and one local permutation per vertex.
pub fn dart_relabeling(vertex_perm: &[usize], local_perms: &[[u8; 4]]) -> Vec<Dart> {
    let mut map = vec![0; vertex_perm.len() * 4];
    for (v, &w) in vertex_perm.iter().enumerate() {
        for i in 0..4u8 {
            map[4 * v + i as usize] = dart_at(w, local_perms[v][i as usize]);
        }
    }
    map
}
