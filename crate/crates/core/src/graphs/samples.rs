//! Small named graphs used throughout tests and examples.

use super::dart::DartGraph;

fn build(n: usize, edges: &[(usize, usize)]) -> DartGraph {
    DartGraph::from_edges(n, edges).expect("sample graph is valid")
}

/// One vertex carrying two loops.
pub fn two_loops() -> DartGraph {
    build(1, &[(0, 0), (0, 0)])
}

/// Two vertices joined by four parallel edges.
pub fn four_parallel() -> DartGraph {
    build(2, &[(0, 1), (0, 1), (0, 1), (0, 1)])
}

/// Two vertices joined by two parallel edges, with a loop at each.
pub fn double_edge_with_loops() -> DartGraph {
    build(2, &[(0, 0), (0, 1), (0, 1), (1, 1)])
}

pub fn k5() -> DartGraph {
    let edges: Vec<_> = (0..5)
        .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
        .collect();
    build(5, &edges)
}

/// K_{2,2,2}: vertices `2i` and `2i+1` are the non-adjacent antipodes.
pub fn octahedron() -> DartGraph {
    let edges: Vec<_> = (0..6)
        .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
        .filter(|&(u, v)| u / 2 != v / 2)
        .collect();
    build(6, &edges)
}

/// Circulant graph `C_k(s1, s2)` with `k >= 5`.
pub fn circulant(k: usize, s1: usize, s2: usize) -> DartGraph {
    let edges: Vec<_> = (0..k)
        .flat_map(|u| [(u, (u + s1) % k), (u, (u + s2) % k)])
        .collect();
    build(k, &edges)
}

/// Two copies of K5 minus an edge, both attached to one shared cut vertex.
pub fn two_blocks_cut_vertex() -> DartGraph {
    let mut edges = Vec::new();
    for block in 0..2 {
        let off = 5 * block;
        for u in 0..5 {
            for v in u + 1..5 {
                if (u, v) != (0, 1) {
                    edges.push((off + u, off + v));
                }
            }
        }
        edges.push((10, off));
        edges.push((10, off + 1));
    }
    build(11, &edges)
}
