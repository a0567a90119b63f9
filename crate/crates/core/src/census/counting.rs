use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` for the brute-force path count.
pub const MAX_PATH_COUNT_N: usize = 4;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `|𝓜ₙ|` against the counting bounds. Only `within_bound` is a hard check;
/// the `n! < |𝓜ₙ| < n!·4ⁿ` comparison is asymptotic and merely reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub count: u128,
    pub upper_bound: u128,
    pub within_bound: bool,
    pub n_factorial: u128,
    pub n_factorial_times_4n: u128,
    pub above_n_factorial: bool,
    pub below_n_factorial_times_4n: bool,
}

pub fn verify_bounds(n: usize, count: usize) -> BoundsReport {
    let count = count as u128;
    let upper_bound = factorial(2 * n) / (factorial(n) * 2);
    let nf = factorial(n);
    let nf4 = nf * 4u128.pow(n as u32);
    BoundsReport {
        n,
        count,
        upper_bound,
        within_bound: count <= upper_bound,
        n_factorial: nf,
        n_factorial_times_4n: nf4,
        above_n_factorial: count > nf,
        below_n_factorial_times_4n: count < nf4,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCountCheck {
    pub n: usize,
    pub computed: u128,
    pub formula: u128,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Relabels vertices in order of first appearance.
fn normalize(seq: &[usize], n: usize) -> Vec<usize> {
    let mut map = vec![usize::MAX; n];
    let mut next = 0;
    seq.iter()
        .map(|&v| {
            if map[v] == usize::MAX {
                map[v] = next;
                next += 1;
            }
            map[v]
        })
        .collect()
}

fn arrangements(n: usize, left: &mut [u8], seq: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
    if seq.len() == 2 * n {
        out.insert(normalize(seq, n));
        return;
    }
    for v in 0..n {
        if left[v] > 0 {
            left[v] -= 1;
            seq.push(v);
            arrangements(n, left, seq, out);
            seq.pop();
            left[v] += 1;
        }
    }
}

/// Counts vertex sequences of length `2n` using each of `n` vertices twice —
/// the closed Eulerian paths with a distinguished start — up to relabeling
/// the vertices, and compares with `(2n)!/(n!·2ⁿ)`.
pub fn eulerian_path_count_check(n: usize) -> Result<PathCountCheck> {
    if n == 0 || n > MAX_PATH_COUNT_N {
        return Err(Error::LimitExceeded(format!(
            "path count brute force supports 1 <= n <= {MAX_PATH_COUNT_N}"
        )));
    }
    let mut classes = BTreeSet::new();
    arrangements(n, &mut vec![2; n], &mut Vec::new(), &mut classes);
    let computed = classes.len() as u128;
    let formula = factorial(2 * n) / (factorial(n) * 2u128.pow(n as u32));
    Ok(PathCountCheck {
        n,
        computed,
        formula,
        matches: computed == formula,
    })
}
