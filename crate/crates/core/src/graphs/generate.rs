//! Orderly generation of connected 4-regular multigraphs.
//!
//! Adjacency matrices are built one column at a time. Column `j` holds the
//! multiplicities `a[i][j]` for `i < j` followed by the loop-end count
//! `a[j][j]`. A matrix is kept only if its column string is the
//! lexicographic maximum over all vertex orders; that property is inherited
//! by every leading principal submatrix, so non-maximal prefixes are pruned
//! and every isomorphism class is emitted exactly once.

use super::dart::DartGraph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`generate_graphs`].
pub const MAX_GENERATE_N: usize = 7;

type Matrix = Vec<Vec<u8>>;

/// Compares column `p` of `a` permuted by `perm[..=p]` against the unpermuted column.
fn compare_column(a: &Matrix, perm: &[usize], p: usize) -> std::cmp::Ordering {
    let u = perm[p];
    for i in 0..p {
        let c = a[perm[i]][u].cmp(&a[i][p]);
        if c.is_ne() {
            return c;
        }
    }
    a[u][u].cmp(&a[p][p])
}

/// True iff no relabeling of the leading `k` vertices gives a larger column string.
fn is_max_form(a: &Matrix, k: usize) -> bool {
    fn go(a: &Matrix, k: usize, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let p = perm.len();
        if p == k {
            return true;
        }
        for u in 0..k {
            if used[u] {
                continue;
            }
            perm.push(u);
            match compare_column(a, perm, p) {
                std::cmp::Ordering::Greater => {
                    perm.pop();
                    return false;
                }
                std::cmp::Ordering::Equal => {
                    used[u] = true;
                    let ok = go(a, k, perm, used);
                    used[u] = false;
                    if !ok {
                        perm.pop();
                        return false;
                    }
                }
                std::cmp::Ordering::Less => {}
            }
            perm.pop();
        }
        true
    }
    go(a, k, &mut Vec::with_capacity(k), &mut vec![false; k])
}

struct Generator {
    n: usize,
    a: Matrix,
    degree: Vec<u8>,
    out: Vec<Matrix>,
}

impl Generator {
    fn column(&mut self, j: usize) {
        if j == self.n {
            self.out.push(self.a.clone());
            return;
        }
        self.fill(j, 0);
    }

    /// Chooses `a[i][j]` for `i = row, row+1, ..`, then the loop count at `j`.
    fn fill(&mut self, j: usize, row: usize) {
        if row == j {
            // loop ends; whatever is left goes to later vertices
            let free = 4 - self.degree[j];
            for ends in (0..=free).rev().filter(|e| e % 2 == 0) {
                self.a[j][j] = ends;
                self.degree[j] += ends;
                if self.feasible(j + 1) && is_max_form(&self.a, j + 1) {
                    self.column(j + 1);
                }
                self.degree[j] -= ends;
            }
            self.a[j][j] = 0;
            return;
        }
        let cap = (4 - self.degree[row]).min(4 - self.degree[j]);
        for m in (0..=cap).rev() {
            self.a[row][j] = m;
            self.a[j][row] = m;
            self.degree[row] += m;
            self.degree[j] += m;
            self.fill(j, row + 1);
            self.degree[row] -= m;
            self.degree[j] -= m;
        }
        self.a[row][j] = 0;
        self.a[j][row] = 0;
    }

    /// Remaining degree of the first `k` vertices must fit into the rest.
    fn feasible(&self, k: usize) -> bool {
        let remaining = (self.n - k) as u32;
        let deficit: u32 = self.degree[..k].iter().map(|&d| 4 - d as u32).sum();
        if remaining == 0 {
            return deficit == 0;
        }
        deficit <= 4 * remaining
    }
}

fn to_graph(a: &Matrix) -> Result<DartGraph> {
    let n = a.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for _ in 0..a[u][u] / 2 {
            edges.push((u, u));
        }
        for v in u + 1..n {
            for _ in 0..a[u][v] {
                edges.push((u, v));
            }
        }
    }
    DartGraph::from_edges(n, &edges)
}

/// Every connected 4-regular multigraph on `n` vertices, one per isomorphism
/// class, in a deterministic order.
pub fn generate_graphs(n: usize) -> Result<Vec<DartGraph>> {
    if n == 0 || n > MAX_GENERATE_N {
        return Err(Error::LimitExceeded(format!(
            "graph generation supports 1 <= n <= {MAX_GENERATE_N}, got {n}"
        )));
    }
    let mut gen = Generator {
        n,
        a: vec![vec![0; n]; n],
        degree: vec![0; n],
        out: Vec::new(),
    };
    gen.column(0);
    Ok(gen
        .out
        .iter()
        .filter_map(|a| match to_graph(a) {
            Ok(g) => Some(g),
            Err(Error::Disconnected) => None,
            Err(e) => panic!("generator produced an invalid matrix: {e}"),
        })
        .collect())
}

/// Simple graphs only (no loops, no parallel edges).
pub fn generate_simple_graphs(n: usize) -> Result<Vec<DartGraph>> {
    Ok(generate_graphs(n)?
        .into_iter()
        .filter(DartGraph::is_simple)
        .collect())
}
