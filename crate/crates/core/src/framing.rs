//! Framings: unordered triples of pairwise compatible Eulerian cycles.
//!
//! Pairwise compatibility forces the three pairings at every vertex to be
//! exactly `{P0, P1, P2}`, so a framing is a 3-coloring of the six dart
//! pairs at each vertex in which every color class is a perfect matching and
//! every color traces a single circuit.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::euler::{enumerate_eulerian, is_single_circuit, EulerianCycle, TransitionSystem};
use crate::graphs::{dart_at, local_of, vertex_of, Dart, DartGraph, LocalPairing};

/// Largest `n` accepted by the framing searches.
pub const MAX_FRAMING_N: usize = 14;

/// All six permutations of three colors; index 0 is the identity.
pub const PERMS3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Framing {
    cycles: [EulerianCycle; 3],
}

impl Framing {
    /// Validates and sorts a triple of transition systems.
    pub fn new(g: &DartGraph, systems: [TransitionSystem; 3]) -> Result<Self> {
        for ts in &systems {
            if ts.n() != g.n() {
                return Err(Error::GraphMismatch);
            }
        }
        for v in 0..g.n() {
            let mut seen = [false; 3];
            for ts in &systems {
                seen[ts.at(v).index() as usize] = true;
            }
            if seen != [true; 3] {
                return Err(Error::NotAFraming(format!(
                    "pairings at vertex {v} are not pairwise distinct"
                )));
            }
        }
        let mut cycles = Vec::with_capacity(3);
        for ts in systems {
            let label = ts.to_string();
            cycles.push(EulerianCycle::new(g, ts).ok_or_else(|| {
                Error::NotAFraming(format!("transition system {label} is not a single circuit"))
            })?);
        }
        cycles.sort();
        Ok(Framing {
            cycles: cycles.try_into().unwrap(),
        })
    }

    pub fn cycles(&self) -> &[EulerianCycle; 3] {
        &self.cycles
    }

    pub fn systems(&self) -> [&TransitionSystem; 3] {
        [
            self.cycles[0].transitions(),
            self.cycles[1].transitions(),
            self.cycles[2].transitions(),
        ]
    }

    pub fn n(&self) -> usize {
        self.cycles[0].n()
    }

    /// Index of the cycle using `pairing` at vertex `v`.
    pub fn color_of(&self, v: usize, pairing: LocalPairing) -> usize {
        (0..3)
            .find(|&i| self.cycles[i].transitions().at(v) == pairing)
            .expect("framing covers every pairing")
    }

    /// Index of the cycle in which the local darts `i`, `j` of `v` are consecutive.
    pub fn color_of_pair(&self, v: usize, i: u8, j: u8) -> usize {
        self.color_of(v, LocalPairing::containing(i, j))
    }

    /// Parses `t1|t2|t3`.
    pub fn parse(g: &DartGraph, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split('|').collect();
        if parts.len() != 3 {
            return Err(Error::malformed(format!(
                "expected three transition strings in {s:?}"
            )));
        }
        let systems = [parts[0].parse()?, parts[1].parse()?, parts[2].parse()?];
        Framing::new(g, systems)
    }
}

impl fmt::Display for Framing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.systems();
        write!(f, "{a}|{b}|{c}")
    }
}

impl fmt::Debug for Framing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Framing({self})")
    }
}

fn check_limit(g: &DartGraph) -> Result<()> {
    if g.n() > MAX_FRAMING_N {
        return Err(Error::LimitExceeded(format!(
            "framing search supports n <= {MAX_FRAMING_N}, got {}",
            g.n()
        )));
    }
    Ok(())
}

/// The two pairings other than `p`, ascending.
fn others(p: LocalPairing) -> [LocalPairing; 2] {
    match p {
        LocalPairing::P0 => [LocalPairing::P1, LocalPairing::P2],
        LocalPairing::P1 => [LocalPairing::P0, LocalPairing::P2],
        LocalPairing::P2 => [LocalPairing::P0, LocalPairing::P1],
    }
}

/// Splits the complement of `t1` into two systems according to the bits of `mask`.
fn split_complement(t1: &TransitionSystem, mask: u64) -> (TransitionSystem, TransitionSystem) {
    let n = t1.n();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for v in 0..n {
        let [lo, hi] = others(t1.at(v));
        if mask >> v & 1 == 0 {
            a.push(lo);
            b.push(hi);
        } else {
            a.push(hi);
            b.push(lo);
        }
    }
    (TransitionSystem::new(a), TransitionSystem::new(b))
}

/// Every framing of `g`, each once, ascending by its sorted triple.
///
/// For each Eulerian `T1` and each split of the remaining pairings into
/// `(T2, T3)`, the triple is kept when `T1 < T2 < T3` and both are Eulerian.
pub fn find_framings(g: &DartGraph) -> Result<Vec<Framing>> {
    check_limit(g)?;
    let eulerian = enumerate_eulerian(g)?;
    let n = g.n();
    let mut is_eulerian = vec![false; 3usize.pow(n as u32)];
    for c in &eulerian {
        is_eulerian[c.transitions().code() as usize] = true;
    }
    let per_t1: Vec<Vec<Framing>> = eulerian
        .par_iter()
        .map(|c1| {
            let t1 = c1.transitions();
            let k1 = t1.code();
            let mut found = Vec::new();
            for mask in 0..1u64 << n {
                let (t2, t3) = split_complement(t1, mask);
                let (k2, k3) = (t2.code(), t3.code());
                if k1 < k2 && k2 < k3 && is_eulerian[k2 as usize] && is_eulerian[k3 as usize] {
                    found.push(Framing::new(g, [t1.clone(), t2, t3]).expect("validated triple"));
                }
            }
            found.sort();
            found
        })
        .collect();
    Ok(per_t1.into_iter().flatten().collect())
}

/// Every framing whose triple contains `c`. At most `2^(n-1)` exist: the
/// split at vertex 0 is fixed to quotient by swapping the other two cycles.
pub fn framings_containing(g: &DartGraph, c: &EulerianCycle) -> Result<Vec<Framing>> {
    check_limit(g)?;
    if !c.belongs_to(g) {
        return Err(Error::GraphMismatch);
    }
    let n = g.n();
    let t1 = c.transitions();
    let mut out = Vec::new();
    for mask in (0..1u64 << n).step_by(2) {
        let (t2, t3) = split_complement(t1, mask);
        if is_single_circuit(g, &t2) && is_single_circuit(g, &t3) {
            out.push(Framing::new(g, [t1.clone(), t2, t3]).expect("validated triple"));
        }
    }
    out.sort();
    Ok(out)
}

/// Reassigns pairings at `v`: system `i` takes the pairing system `perm[i]` had there.
pub fn permute_at(
    systems: &[TransitionSystem; 3],
    v: usize,
    perm: [usize; 3],
) -> [TransitionSystem; 3] {
    let at_v = [systems[0].at(v), systems[1].at(v), systems[2].at(v)];
    [
        systems[0].with(v, at_v[perm[0]]),
        systems[1].with(v, at_v[perm[1]]),
        systems[2].with(v, at_v[perm[2]]),
    ]
}

/// The distinct framings obtained by changing `f` only at vertex `v`.
pub fn mutate_at(g: &DartGraph, f: &Framing, v: usize) -> Result<Vec<Framing>> {
    if v >= g.n() {
        return Err(Error::OutOfRange(format!("vertex {v} >= n = {}", g.n())));
    }
    let systems = f.systems().map(Clone::clone);
    let mut out = BTreeSet::new();
    for perm in &PERMS3[1..] {
        let candidate = permute_at(&systems, v, *perm);
        if candidate.iter().all(|ts| is_single_circuit(g, ts)) {
            out.insert(Framing::new(g, candidate)?);
        }
    }
    out.remove(f);
    Ok(out.into_iter().collect())
}

/// Canonical byte string of a framed graph, up to relabeling and recoloring.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FramedGraphCode(Vec<u8>);

impl FramedGraphCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let bytes =
            hex::decode(s.trim()).map_err(|e| Error::malformed(format!("framed code: {e}")))?;
        Ok(FramedGraphCode(bytes))
    }
}

impl fmt::Display for FramedGraphCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for FramedGraphCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FramedGraphCode({})", self.to_hex())
    }
}

/// Breadth-first relabeling from a start dart with a color order.
///
/// The vertex of `start` becomes vertex 0 and each newly reached vertex is
/// entered through some dart `e`; that dart becomes local slot 0 and its
/// partner under color `colors[k]` becomes slot `k + 1`. In the new labels the
/// cycle of color `colors[k]` therefore uses pairing `Pk` at every vertex,
/// and the relabeled involution alone determines the framed graph.
fn bfs_relabel(g: &DartGraph, f: &Framing, start: Dart, colors: [usize; 3]) -> Vec<Dart> {
    let n = g.n();
    let systems = f.systems();
    let mut vertex_label = vec![usize::MAX; n];
    let mut entry = Vec::with_capacity(n);
    let mut map = vec![0 as Dart; g.num_darts()];
    vertex_label[vertex_of(start)] = 0;
    entry.push(start);
    let mut k = 0;
    while k < entry.len() {
        let e = entry[k];
        let v = vertex_of(e);
        let le = local_of(e);
        let mut slots = [le; 4];
        for (c, &color) in colors.iter().enumerate() {
            slots[c + 1] = systems[color].at(v).partner(le);
        }
        for (slot, &local) in slots.iter().enumerate() {
            let d = dart_at(v, local);
            map[d as usize] = (4 * k + slot) as Dart;
            let w = vertex_of(g.eps(d));
            if vertex_label[w] == usize::MAX {
                vertex_label[w] = entry.len();
                entry.push(g.eps(d));
            }
        }
        k += 1;
    }
    map
}

fn code_of_relabel(g: &DartGraph, map: &[Dart]) -> Vec<u8> {
    let mut eps = vec![0 as Dart; g.num_darts()];
    for (d, &nd) in map.iter().enumerate() {
        eps[nd as usize] = map[g.eps(d as Dart) as usize];
    }
    let mut bytes = Vec::with_capacity(4 * (eps.len() + 1));
    bytes.extend_from_slice(&(g.n() as u32).to_be_bytes());
    for e in eps {
        bytes.extend_from_slice(&e.to_be_bytes());
    }
    bytes
}

/// Minimizing relabeling: `(code, dart map old -> new)`.
fn canonical_search(g: &DartGraph, f: &Framing) -> (Vec<u8>, Vec<Dart>) {
    let mut best: Option<(Vec<u8>, Vec<Dart>)> = None;
    for start in 0..g.num_darts() as Dart {
        for colors in PERMS3 {
            let map = bfs_relabel(g, f, start, colors);
            let code = code_of_relabel(g, &map);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                best = Some((code, map));
            }
        }
    }
    best.expect("graph has darts")
}

pub fn framed_canonical_code(g: &DartGraph, f: &Framing) -> FramedGraphCode {
    FramedGraphCode(canonical_search(g, f).0)
}

/// The canonical representative of the framed graph `(g, f)`.
pub fn canonical_framed(g: &DartGraph, f: &Framing) -> (DartGraph, Framing, FramedGraphCode) {
    let (code, _) = canonical_search(g, f);
    let (cg, cf) =
        framed_from_code(&FramedGraphCode(code.clone())).expect("canonical code decodes");
    (cg, cf, FramedGraphCode(code))
}

/// Rebuilds the canonical framed graph from its code.
pub fn framed_from_code(code: &FramedGraphCode) -> Result<(DartGraph, Framing)> {
    let bytes = code.as_bytes();
    if bytes.len() < 4 || !bytes.len().is_multiple_of(4) {
        return Err(Error::malformed(
            "framed code length is not a multiple of 4 bytes",
        ));
    }
    let words: Vec<u32> = bytes
        .chunks_exact(4)
        .map(|c| u32::from_be_bytes(c.try_into().unwrap()))
        .collect();
    let n = words[0] as usize;
    if n == 0 || words.len() != 1 + 4 * n {
        return Err(Error::malformed(format!(
            "framed code does not describe {n} vertices"
        )));
    }
    let g = DartGraph::from_involution(words[1..].to_vec())?;
    let f = Framing::new(
        &g,
        LocalPairing::ALL.map(|p| TransitionSystem::constant(n, p)),
    )?;
    if framed_canonical_code(&g, &f) != *code {
        return Err(Error::malformed("framed code is not in canonical form"));
    }
    Ok((g, f))
}
