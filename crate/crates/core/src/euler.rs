//! Transition systems and Eulerian cycles of 4-regular multigraphs.
//!
//! A transition system picks one [`LocalPairing`] per vertex. Following
//! `d -> eps(d) -> partner(eps(d))` from every dart splits the edge set into
//! closed trails; an Eulerian cycle is a transition system with a single
//! trail. This forgets rotation and reversal, so equality of cycles is
//! equality of transition systems.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graphs::{dart_at, local_of, vertex_of, Dart, DartGraph, LocalPairing};

/// Largest `n` for the `3^n` scan in [`enumerate_eulerian`].
pub const MAX_ENUMERATE_N: usize = 14;
/// Largest `n` for the walk-based oracle [`count_circuits_brute`].
pub const MAX_BRUTE_N: usize = 8;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionSystem {
    choice: Vec<LocalPairing>,
}

impl TransitionSystem {
    pub fn new(choice: Vec<LocalPairing>) -> Self {
        TransitionSystem { choice }
    }

    pub fn constant(n: usize, p: LocalPairing) -> Self {
        TransitionSystem { choice: vec![p; n] }
    }

    pub fn n(&self) -> usize {
        self.choice.len()
    }

    #[inline]
    pub fn at(&self, v: usize) -> LocalPairing {
        self.choice[v]
    }

    pub fn choices(&self) -> &[LocalPairing] {
        &self.choice
    }

    pub fn with(&self, v: usize, p: LocalPairing) -> Self {
        let mut choice = self.choice.clone();
        choice[v] = p;
        TransitionSystem { choice }
    }

    /// The dart that follows `d` on its trail.
    #[inline]
    pub fn next(&self, g: &DartGraph, d: Dart) -> Dart {
        let e = g.eps(d);
        let v = vertex_of(e);
        dart_at(v, self.choice[v].partner(local_of(e)))
    }

    /// Base-3 value with vertex 0 as the most significant digit.
    pub fn code(&self) -> u64 {
        self.choice
            .iter()
            .fold(0u64, |acc, p| acc * 3 + p.index() as u64)
    }

    pub fn from_code(n: usize, mut code: u64) -> Self {
        let mut choice = vec![LocalPairing::P0; n];
        for slot in choice.iter_mut().rev() {
            *slot = LocalPairing::from_index((code % 3) as u8).unwrap();
            code /= 3;
        }
        TransitionSystem { choice }
    }
}

impl fmt::Display for TransitionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.choice {
            write!(f, "{}", p.index())?;
        }
        Ok(())
    }
}

impl fmt::Debug for TransitionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TransitionSystem({self})")
    }
}

impl FromStr for TransitionSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::malformed("empty transition string"));
        }
        let choice = s
            .bytes()
            .map(|b| {
                b.checked_sub(b'0')
                    .and_then(LocalPairing::from_index)
                    .ok_or_else(|| {
                        Error::malformed(format!("bad transition digit {:?}", b as char))
                    })
            })
            .collect::<Result<_>>()?;
        Ok(TransitionSystem { choice })
    }
}

/// Closed trails of `ts`, each as the sequence of darts it leaves through.
/// Trails start at the lowest dart not yet covered.
pub fn circuit_decomposition(g: &DartGraph, ts: &TransitionSystem) -> Vec<Vec<Dart>> {
    assert_eq!(g.n(), ts.n(), "transition system belongs to another graph");
    let mut used = vec![false; g.num_darts()];
    let mut circuits = Vec::new();
    for start in 0..g.num_darts() as Dart {
        if used[start as usize] {
            continue;
        }
        let mut circuit = Vec::new();
        let mut d = start;
        loop {
            used[d as usize] = true;
            used[g.eps(d) as usize] = true;
            circuit.push(d);
            d = ts.next(g, d);
            if d == start {
                break;
            }
        }
        circuits.push(circuit);
    }
    circuits
}

/// Length (in edges) of the trail through dart 0.
fn trail_length_from_zero(g: &DartGraph, ts: &TransitionSystem) -> usize {
    let mut d = 0;
    let mut len = 0;
    loop {
        len += 1;
        d = ts.next(g, d);
        if d == 0 {
            return len;
        }
    }
}

pub fn is_single_circuit(g: &DartGraph, ts: &TransitionSystem) -> bool {
    ts.n() == g.n() && trail_length_from_zero(g, ts) == g.num_edges()
}

/// A single-circuit transition system together with one traversal of it.
#[derive(Clone)]
pub struct EulerianCycle {
    transitions: TransitionSystem,
    witness: Vec<Dart>,
    graph_key: u64,
}

/// FNV-1a over the edge involution; tags cycles with the graph they live on.
pub(crate) fn graph_key(g: &DartGraph) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &e in g.involution() {
        for b in e.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

impl EulerianCycle {
    /// Wraps `ts` if it is single-circuit on `g`.
    pub fn new(g: &DartGraph, ts: TransitionSystem) -> Option<Self> {
        if !is_single_circuit(g, &ts) {
            return None;
        }
        let witness = circuit_decomposition(g, &ts).swap_remove(0);
        Some(EulerianCycle {
            transitions: ts,
            witness,
            graph_key: graph_key(g),
        })
    }

    pub fn transitions(&self) -> &TransitionSystem {
        &self.transitions
    }

    /// The darts left through, in traversal order, starting at dart 0.
    pub fn witness(&self) -> &[Dart] {
        &self.witness
    }

    pub fn n(&self) -> usize {
        self.transitions.n()
    }

    pub fn belongs_to(&self, g: &DartGraph) -> bool {
        self.graph_key == graph_key(g) && self.n() == g.n()
    }

    /// Space-separated dart list of the witness.
    pub fn export_witness(&self) -> String {
        let parts: Vec<String> = self.witness.iter().map(|d| d.to_string()).collect();
        parts.join(" ")
    }
}

impl PartialEq for EulerianCycle {
    fn eq(&self, other: &Self) -> bool {
        self.transitions == other.transitions
    }
}

impl Eq for EulerianCycle {}

impl Hash for EulerianCycle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.transitions.hash(state);
    }
}

impl PartialOrd for EulerianCycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EulerianCycle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.transitions.cmp(&other.transitions)
    }
}

impl fmt::Debug for EulerianCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EulerianCycle({})", self.transitions)
    }
}

/// Iterates all `3^n` transition systems in ascending base-3 order.
pub fn all_transition_systems(n: usize) -> impl Iterator<Item = TransitionSystem> {
    let total = 3u64.pow(n as u32);
    (0..total).map(move |c| TransitionSystem::from_code(n, c))
}

/// All Eulerian cycles of `g`, ascending by transition code.
pub fn enumerate_eulerian(g: &DartGraph) -> Result<Vec<EulerianCycle>> {
    if g.n() > MAX_ENUMERATE_N {
        return Err(Error::LimitExceeded(format!(
            "Eulerian enumeration supports n <= {MAX_ENUMERATE_N}, got {}",
            g.n()
        )));
    }
    Ok(all_transition_systems(g.n())
        .filter_map(|ts| EulerianCycle::new(g, ts))
        .collect())
}

/// Two cycles are compatible iff their pairings differ at every vertex, i.e.
/// no two adjacent edges are consecutive in both.
pub fn compatible(c1: &EulerianCycle, c2: &EulerianCycle) -> Result<bool> {
    if c1.graph_key != c2.graph_key || c1.n() != c2.n() {
        return Err(Error::GraphMismatch);
    }
    Ok(c1
        .transitions
        .choice
        .iter()
        .zip(&c2.transitions.choice)
        .all(|(a, b)| a != b))
}

/// Counts Eulerian cycles by walking: leave through dart 0, and at each
/// arrival try every unused dart of the current vertex. Each unoriented,
/// unanchored Eulerian cycle has exactly one such walk.
pub fn count_circuits_brute(g: &DartGraph) -> Result<u64> {
    if g.n() > MAX_BRUTE_N {
        return Err(Error::LimitExceeded(format!(
            "walk enumeration supports n <= {MAX_BRUTE_N}, got {}",
            g.n()
        )));
    }
    fn walk(g: &DartGraph, used: &mut [bool], leave: Dart, edges_left: usize) -> u64 {
        let arrive = g.eps(leave);
        used[leave as usize] = true;
        used[arrive as usize] = true;
        let count = if edges_left == 1 {
            // the walk closes iff it ends back at dart 0's vertex
            u64::from(vertex_of(arrive) == 0)
        } else {
            let v = vertex_of(arrive);
            (0..4)
                .map(|i| dart_at(v, i))
                .filter(|&d| !used[d as usize])
                .collect::<Vec<_>>()
                .into_iter()
                .map(|d| walk(g, used, d, edges_left - 1))
                .sum()
        };
        used[leave as usize] = false;
        used[arrive as usize] = false;
        count
    }
    let mut used = vec![false; g.num_darts()];
    Ok(walk(g, &mut used, 0, g.num_edges()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::samples;

    #[test]
    fn two_loop_trace() {
        let g = samples::two_loops();
        let p1 = TransitionSystem::constant(1, LocalPairing::P1);
        assert_eq!(circuit_decomposition(&g, &p1), vec![vec![0, 3]]);
        let p0 = TransitionSystem::constant(1, LocalPairing::P0);
        assert_eq!(circuit_decomposition(&g, &p0).len(), 2);
        let cycles = enumerate_eulerian(&g).unwrap();
        let codes: Vec<String> = cycles.iter().map(|c| c.transitions().to_string()).collect();
        assert_eq!(codes, ["1", "2"]);
        assert_eq!(count_circuits_brute(&g).unwrap(), 2);
    }

    #[test]
    fn compatibility_on_one_vertex() {
        let g = samples::two_loops();
        let cycles = enumerate_eulerian(&g).unwrap();
        assert!(compatible(&cycles[0], &cycles[1]).unwrap());
        assert!(!compatible(&cycles[0], &cycles[0]).unwrap());
    }

    #[test]
    fn mismatched_graphs() {
        let a = enumerate_eulerian(&samples::k5()).unwrap();
        let b = enumerate_eulerian(&samples::octahedron()).unwrap();
        assert!(matches!(
            compatible(&a[0], &b[0]),
            Err(Error::GraphMismatch)
        ));
    }

    #[test]
    fn four_parallel_conservation() {
        let g = samples::four_parallel();
        for ts in all_transition_systems(2) {
            let total: usize = circuit_decomposition(&g, &ts).iter().map(Vec::len).sum();
            assert_eq!(total, 4);
        }
    }

    #[test]
    fn k5_all_p0() {
        let g = samples::k5();
        let ts = TransitionSystem::constant(5, LocalPairing::P0);
        let c = circuit_decomposition(&g, &ts);
        assert!((1..=5).contains(&c.len()));
        for cycle in enumerate_eulerian(&g).unwrap() {
            assert_eq!(cycle.witness().len(), 10);
        }
    }

    #[test]
    fn transition_string_round_trip() {
        let ts: TransitionSystem = "01220".parse().unwrap();
        assert_eq!(ts.to_string(), "01220");
        assert_eq!(ts.code(), 27 + 2 * 9 + 2 * 3);
        assert!("013".parse::<TransitionSystem>().is_err());
    }

    #[test]
    fn limits() {
        let big = samples::circulant(15, 1, 2);
        assert!(matches!(
            enumerate_eulerian(&big),
            Err(Error::LimitExceeded(_))
        ));
        assert!(matches!(
            count_circuits_brute(&samples::circulant(9, 1, 2)),
            Err(Error::LimitExceeded(_))
        ));
    }
}
