//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's canonical forms or search routines.
#![allow(dead_code)]

use std::collections::BTreeSet;

use eulerspine::euler::TransitionSystem;
use eulerspine::framing::Framing;
use eulerspine::graphs::{dart_relabeling, DartGraph, LocalPairing};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Matrix = Vec<Vec<u8>>;

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Adjacency with loop ends on the diagonal, computed from the edge list.
pub fn adjacency(g: &DartGraph) -> Matrix {
    let n = g.n();
    let mut a = vec![vec![0u8; n]; n];
    for (u, v) in g.edges() {
        if u == v {
            a[u][u] += 2;
        } else {
            a[u][v] += 1;
            a[v][u] += 1;
        }
    }
    a
}

fn permuted(a: &Matrix, p: &[usize]) -> Matrix {
    let n = a.len();
    let mut b = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            b[p[i]][p[j]] = a[i][j];
        }
    }
    b
}

/// Minimum over all vertex permutations: an isomorphism-class key.
pub fn brute_class_key(a: &Matrix) -> Matrix {
    permutations(a.len())
        .iter()
        .map(|p| permuted(a, p))
        .min()
        .unwrap()
}

pub fn brute_aut_order(g: &DartGraph) -> usize {
    let a = adjacency(g);
    permutations(g.n())
        .iter()
        .filter(|p| permuted(&a, p) == a)
        .count()
}

fn connected(a: &Matrix) -> bool {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if a[u][v] > 0 && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Every labeled connected 4-regular multigraph on `n` vertices.
pub fn labeled_quartic(n: usize) -> Vec<Matrix> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    fn go(
        n: usize,
        slots: &[(usize, usize)],
        k: usize,
        a: &mut Matrix,
        deg: &mut [u8],
        out: &mut Vec<Matrix>,
    ) {
        if k == slots.len() {
            if deg.iter().all(|&d| d == 4) && connected(a) {
                out.push(a.clone());
            }
            return;
        }
        let (i, j) = slots[k];
        if i == j {
            for loops in 0..=(4 - deg[i]) / 2 {
                a[i][i] = 2 * loops;
                deg[i] += 2 * loops;
                go(n, slots, k + 1, a, deg, out);
                deg[i] -= 2 * loops;
            }
            a[i][i] = 0;
        } else {
            for m in 0..=(4 - deg[i]).min(4 - deg[j]) {
                a[i][j] = m;
                a[j][i] = m;
                deg[i] += m;
                deg[j] += m;
                go(n, slots, k + 1, a, deg, out);
                deg[i] -= m;
                deg[j] -= m;
            }
            a[i][j] = 0;
            a[j][i] = 0;
        }
    }
    go(
        n,
        &slots,
        0,
        &mut vec![vec![0; n]; n],
        &mut vec![0; n],
        &mut out,
    );
    out
}

pub fn graph_of(a: &Matrix) -> DartGraph {
    let n = a.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for _ in 0..a[i][i] / 2 {
            edges.push((i, i));
        }
        for j in i + 1..n {
            for _ in 0..a[i][j] {
                edges.push((i, j));
            }
        }
    }
    DartGraph::from_edges(n, &edges).unwrap()
}

pub fn random_relabeling(n: usize, rng: &mut impl Rng) -> (Vec<usize>, Vec<[u8; 4]>) {
    let mut vp: Vec<usize> = (0..n).collect();
    vp.shuffle(rng);
    let lp = (0..n)
        .map(|_| {
            let mut p = [0u8, 1, 2, 3];
            p.shuffle(rng);
            p
        })
        .collect();
    (vp, lp)
}

fn image_pairing(p: LocalPairing, perm: &[u8; 4]) -> LocalPairing {
    let [(a, b), _] = p.pairs();
    LocalPairing::containing(perm[a as usize], perm[b as usize])
}

/// Transports the framing along a vertex permutation with local dart permutations.
pub fn relabel_framed(
    g: &DartGraph,
    f: &Framing,
    vp: &[usize],
    lp: &[[u8; 4]],
) -> (DartGraph, Framing) {
    let g2 = g.relabeled(&dart_relabeling(vp, lp)).unwrap();
    let systems = f.systems().map(|t| {
        let mut choice = vec![LocalPairing::P0; g.n()];
        for v in 0..g.n() {
            choice[vp[v]] = image_pairing(t.at(v), &lp[v]);
        }
        TransitionSystem::new(choice)
    });
    let f2 = Framing::new(&g2, systems).unwrap();
    (g2, f2)
}

/// All dart automorphisms of `g`, as (vertex perm, local perms), found by
/// backtracking over vertex images and the 24 local maps at each vertex.
pub fn dart_automorphisms(g: &DartGraph) -> Vec<(Vec<usize>, Vec<[u8; 4]>)> {
    let n = g.n();
    let locals: Vec<[u8; 4]> = permutations(4)
        .into_iter()
        .map(|p| [p[0] as u8, p[1] as u8, p[2] as u8, p[3] as u8])
        .collect();
    let mut out = Vec::new();
    let mut vp = vec![usize::MAX; n];
    let mut lp = vec![[0u8; 4]; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &DartGraph,
        v: usize,
        locals: &[[u8; 4]],
        vp: &mut Vec<usize>,
        lp: &mut Vec<[u8; 4]>,
        used: &mut Vec<bool>,
        out: &mut Vec<(Vec<usize>, Vec<[u8; 4]>)>,
    ) {
        let n = g.n();
        if v == n {
            out.push((vp.clone(), lp.clone()));
            return;
        }
        let map = |vp: &[usize], lp: &[[u8; 4]], d: u32| -> u32 {
            let (w, i) = (d as usize / 4, d as usize % 4);
            (4 * vp[w] + lp[w][i] as usize) as u32
        };
        for w in 0..n {
            if used[w] {
                continue;
            }
            used[w] = true;
            vp[v] = w;
            for l in locals {
                lp[v] = *l;
                // every dart of an assigned vertex whose partner is assigned
                let ok = (0..=v).all(|x| {
                    (0..4).all(|i| {
                        let d = (4 * x + i) as u32;
                        let e = g.eps(d);
                        (e as usize / 4) > v || g.eps(map(vp, lp, d)) == map(vp, lp, e)
                    })
                });
                if ok {
                    go(g, v + 1, locals, vp, lp, used, out);
                }
            }
            vp[v] = usize::MAX;
            used[w] = false;
        }
    }
    go(g, 0, &locals, &mut vp, &mut lp, &mut used, &mut out);
    out
}

pub type SystemsKey = BTreeSet<Vec<u8>>;

/// A framing as an unordered set of pairing strings.
pub fn systems_key(f: &Framing) -> SystemsKey {
    f.systems()
        .iter()
        .map(|t| t.choices().iter().map(|p| p.index()).collect())
        .collect()
}

/// Orbits of the framings of `g` under its dart automorphism group; each
/// orbit is returned as a set of indices into `framings`.
pub fn framing_orbits(g: &DartGraph, framings: &[Framing]) -> Vec<BTreeSet<usize>> {
    let auts = dart_automorphisms(g);
    let index: std::collections::HashMap<SystemsKey, usize> = framings
        .iter()
        .enumerate()
        .map(|(i, f)| (systems_key(f), i))
        .collect();
    let mut orbit_of = vec![usize::MAX; framings.len()];
    let mut orbits: Vec<BTreeSet<usize>> = Vec::new();
    for i in 0..framings.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for (vp, lp) in &auts {
            let (g2, f2) = relabel_framed(g, &framings[i], vp, lp);
            assert_eq!(g2.involution(), g.involution());
            let j = index[&systems_key(&f2)];
            orbit.insert(j);
            orbit_of[j] = orbits.len();
        }
        orbits.push(orbit);
    }
    orbits
}
