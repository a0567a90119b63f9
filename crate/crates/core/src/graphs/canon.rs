//! Canonical labeling of multigraphs by color refinement plus backtracking
//! over individualizations. The same search tree yields the automorphism group.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use super::dart::DartGraph;

/// Canonical byte string of a multigraph isomorphism class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphCode(Vec<u8>);

impl GraphCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Debug for GraphCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphCode({})", self.to_hex())
    }
}

impl fmt::Display for GraphCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Clone, Debug)]
pub struct Automorphisms {
    pub order: u64,
    /// Vertex permutations `v -> generators[k][v]` generating the group.
    pub generators: Vec<Vec<usize>>,
}

/// Partition refinement: iterate neighbourhood signatures until stable.
/// New colors are ranks of sorted signatures, so cell order only depends on
/// the structure, never on vertex names.
fn refine(a: &[Vec<u8>], mut colors: Vec<u32>) -> Vec<u32> {
    let n = a.len();
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<(u32, Vec<(u32, u8)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(u32, u8)> = (0..n)
                    .filter(|&u| a[v][u] > 0)
                    .map(|u| (if u == v { u32::MAX } else { colors[u] }, a[v][u]))
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let ranks: BTreeMap<&(u32, Vec<(u32, u8)>), u32> = {
            let mut sorted: Vec<_> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            sorted
                .into_iter()
                .enumerate()
                .map(|(i, s)| (s, i as u32))
                .collect()
        };
        colors = sigs.iter().map(|s| ranks[s]).collect();
        let now = ranks.len();
        if now == classes {
            return colors;
        }
        classes = now;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    a: &'a [Vec<u8>],
    best: Option<Vec<u8>>,
    /// Leaf labelings attaining `best`: `leaves[k][v]` is the position of vertex `v`.
    leaves: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf_code(&self, pos: &[usize]) -> Vec<u8> {
        let n = self.a.len();
        let mut inv = vec![0; n];
        for (v, &p) in pos.iter().enumerate() {
            inv[p] = v;
        }
        let mut code = Vec::with_capacity(1 + n * (n + 1) / 2);
        code.push(n as u8);
        for i in 0..n {
            for j in i..n {
                code.push(self.a[inv[i]][inv[j]]);
            }
        }
        code
    }

    fn descend(&mut self, colors: Vec<u32>) {
        let colors = refine(self.a, colors);
        let n = self.a.len();
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        match (0..n).find(|&c| sizes[c] > 1) {
            None => {
                let pos: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
                let code = self.leaf_code(&pos);
                match self.best.as_ref().map(|b| code.cmp(b)) {
                    None | Some(std::cmp::Ordering::Less) => {
                        self.best = Some(code);
                        self.leaves = vec![pos];
                    }
                    Some(std::cmp::Ordering::Equal) => self.leaves.push(pos),
                    Some(std::cmp::Ordering::Greater) => {}
                }
            }
            Some(cell) => {
                let cell = cell as u32;
                for v in (0..n).filter(|&v| colors[v] == cell) {
                    let split = colors
                        .iter()
                        .enumerate()
                        .map(|(x, &c)| 2 * c + u32::from(c == cell && x != v))
                        .collect();
                    self.descend(split);
                }
            }
        }
    }
}

fn search(g: &DartGraph) -> (Vec<u8>, Vec<Vec<usize>>) {
    let a = g.adjacency();
    let mut s = Search {
        a: &a,
        best: None,
        leaves: Vec::new(),
    };
    s.descend(vec![0; g.n()]);
    (s.best.expect("non-empty graph"), s.leaves)
}

/// Canonical code: the lexicographically smallest upper-triangular adjacency
/// string over all leaves of the refinement tree.
pub fn canonical_code(g: &DartGraph) -> GraphCode {
    GraphCode(search(g).0)
}

/// Canonical vertex order: `order[v]` is the canonical position of vertex `v`.
pub fn canonical_order(g: &DartGraph) -> Vec<usize> {
    search(g).1.swap_remove(0)
}

pub fn automorphism_group(g: &DartGraph) -> Automorphisms {
    let (_, leaves) = search(g);
    let n = g.n();
    let base = &leaves[0];
    let elements: Vec<Vec<usize>> = leaves
        .iter()
        .map(|leaf| {
            let mut inv = vec![0; n];
            for (v, &p) in leaf.iter().enumerate() {
                inv[p] = v;
            }
            base.iter().map(|&p| inv[p]).collect()
        })
        .collect();
    let identity: Vec<usize> = (0..n).collect();
    let mut generators: Vec<Vec<usize>> = Vec::new();
    let mut group: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    for el in &elements {
        if !group.contains(el) {
            generators.push(el.clone());
            group = closure(&identity, &generators);
        }
    }
    debug_assert_eq!(group.len(), elements.len());
    Automorphisms {
        order: elements.len() as u64,
        generators,
    }
}

fn closure(identity: &[usize], generators: &[Vec<usize>]) -> HashSet<Vec<usize>> {
    let mut seen = HashSet::from([identity.to_vec()]);
    let mut queue = VecDeque::from([identity.to_vec()]);
    while let Some(p) = queue.pop_front() {
        for gen in generators {
            let q: Vec<usize> = p.iter().map(|&x| gen[x]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

/// True iff `n >= 4` and deleting any one or two vertices leaves the graph connected.
pub fn is_three_connected(g: &DartGraph) -> bool {
    let n = g.n();
    if n < 4 {
        return false;
    }
    for u in 0..n {
        if g.reachable_avoiding(&[u]) != n - 1 {
            return false;
        }
        for v in u + 1..n {
            if g.reachable_avoiding(&[u, v]) != n - 2 {
                return false;
            }
        }
    }
    true
}
