//! Acceptance gate: each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::*;
use eulerspine::census::{eulerian_path_count_check, run_census, CensusOptions, CensusSummary};
use eulerspine::euler::enumerate_eulerian;
use eulerspine::framing::{
    find_framings, framed_canonical_code, framings_containing, mutate_at, Framing,
};
use eulerspine::geometry::{edge_length, lobachevsky, manifold_volume, trunc_tet_volume};
use eulerspine::graphs::{generate_graphs, generate_simple_graphs, samples, DartGraph};
use eulerspine::spine::{build_spine, verify_special, z2_homology};
use eulerspine::triangulation::{boundary, dualize, gamma_graph, orientation_check};
use nalgebra::Matrix4;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Regression values from exhaustive enumeration.
const M4: usize = 5;
const M5: usize = 18;

struct Outcome {
    ok: bool,
    lines: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.lines
            .push(format!("    [{}] {what}", if ok { "ok" } else { "FAIL" }));
        self.ok &= ok;
    }
}

/// Every connected 4-regular multigraph with n <= 5 plus the simple ones at n = 6.
fn exhaustive_graphs() -> Vec<DartGraph> {
    let mut v: Vec<DartGraph> = (1..=5).flat_map(|n| generate_graphs(n).unwrap()).collect();
    v.extend(generate_simple_graphs(6).unwrap());
    v
}

fn framed_set() -> Vec<(DartGraph, Vec<Framing>)> {
    exhaustive_graphs()
        .into_iter()
        .map(|g| {
            let fs = find_framings(&g).unwrap();
            (g, fs)
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let mut instances = vec![
        ("K5".to_string(), samples::k5()),
        ("octahedron".to_string(), samples::octahedron()),
    ];
    for k in 5..=10 {
        instances.push((format!("C{k}(1,2)"), samples::circulant(k, 1, 2)));
    }
    for (name, g) in instances {
        let t = Instant::now();
        let count = find_framings(&g).map(|f| f.len()).unwrap_or(0);
        let dt = t.elapsed();
        o.check(
            count >= 1 && dt < Duration::from_secs(10),
            format!("{name}: {count} framings in {dt:.2?}"),
        );
    }
    o
}

fn criterion_2(set: &[(DartGraph, Vec<Framing>)]) -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let (mut total, mut good) = (0, 0);
    for (g, fs) in set {
        for f in fs {
            total += 1;
            let s = build_spine(g, f).unwrap();
            let special = verify_special(&s).map(|r| r.all_ok()).unwrap_or(false);
            let manifold = dualize(&s)
                .map(|t| orientation_check(&t).manifold_ok)
                .unwrap_or(false);
            good += (special && manifold) as usize;
        }
    }
    let dt = t.elapsed();
    o.check(
        good == total,
        format!("{good}/{total} framings special with manifold dual"),
    );
    o.check(
        dt < Duration::from_secs(30 * 60),
        format!("runtime {dt:.2?}"),
    );
    o
}

fn criterion_3(set: &[(DartGraph, Vec<Framing>)]) -> Outcome {
    let mut o = Outcome::new();
    let mut bad = [0usize; 6];
    let mut total = 0;
    for (g, fs) in set {
        let n = g.n();
        for f in fs {
            total += 1;
            let s = build_spine(g, f).unwrap();
            let t = dualize(&s).unwrap();
            let h = z2_homology(&s);
            bad[0] += (t.edge_valences() != vec![2 * n; 3]) as usize;
            bad[1] += (s.euler_characteristic() != 3 - n as i64) as usize;
            bad[2] += (h.h2_rank != 2 || h.closed_surface_count != 3) as usize;
            match boundary(&t) {
                Ok(b) => {
                    bad[3] += (b.component_count != 1 || b.euler_char != 6 - 2 * n as i64) as usize;
                    bad[4] += (b.vertex_orbits != 6) as usize;
                    bad[5] += !gamma_graph(&t, &b).is_wedge_of_three_circles() as usize;
                }
                Err(_) => bad[3] += 1,
            }
        }
    }
    let names = [
        "3 edge classes of valence 2n",
        "chi(P) = 3 - n",
        "h2 rank 2, three closed surfaces",
        "boundary connected, chi = 6 - 2n",
        "6 boundary vertex orbits",
        "Gamma is a wedge of three circles",
    ];
    for (name, b) in names.iter().zip(bad) {
        o.check(b == 0, format!("{name}: {}/{total}", total - b));
    }
    o
}

fn criterion_4(census: &CensusSummary) -> Outcome {
    let mut o = Outcome::new();
    let (mut cycles, mut over) = (0, 0);
    let (mut pairs, mut empty) = (0, 0);
    for n in 1..=5 {
        for g in generate_graphs(n).unwrap() {
            for c in enumerate_eulerian(&g).unwrap() {
                cycles += 1;
                over += (framings_containing(&g, &c).unwrap().len() > 1 << (n - 1)) as usize;
            }
            for f in find_framings(&g).unwrap() {
                for v in 0..n {
                    pairs += 1;
                    empty += mutate_at(&g, &f, v).unwrap().is_empty() as usize;
                }
            }
        }
    }
    o.check(
        over == 0,
        format!(
            "|framings_containing(c)| <= 2^(n-1): {}/{cycles} cycles",
            cycles - over
        ),
    );
    o.check(
        empty == 0,
        format!(
            "mutate_at non-empty: {}/{pairs} (framing, vertex) pairs",
            pairs - empty
        ),
    );
    for b in &census.manifest.bounds {
        o.check(
            b.within_bound,
            format!(
                "n={}: |M_n| = {} <= {} (reported: n! = {}, n!*4^n = {})",
                b.n, b.count, b.upper_bound, b.n_factorial, b.n_factorial_times_4n
            ),
        );
    }
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    for (n, want) in [(1, 1), (2, 3), (3, 15)] {
        let c = eulerian_path_count_check(n).unwrap();
        o.check(
            c.matches && c.computed == want,
            format!("n={n}: computed {} formula {}", c.computed, c.formula),
        );
    }
    o
}

fn criterion_6(census: &CensusSummary) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut instances: Vec<(DartGraph, Framing)> = Vec::new();
    for n in [4, 5] {
        for r in &census.records[&n] {
            let code = eulerspine::framing::FramedGraphCode::from_hex(&r.framed_code).unwrap();
            instances.push(eulerspine::framing::framed_from_code(&code).unwrap());
        }
    }
    for g in [samples::octahedron(), samples::circulant(7, 1, 2)] {
        for f in find_framings(&g).unwrap().into_iter().take(5) {
            instances.push((g.clone(), f));
        }
    }
    let (mut trials, mut mismatches) = (0, 0);
    for (g, f) in &instances {
        let code = framed_canonical_code(g, f);
        for _ in 0..100 {
            let (vp, lp) = random_relabeling(g.n(), &mut rng);
            let (g2, f2) = relabel_framed(g, f, &vp, &lp);
            let mut systems: Vec<_> = f2.systems().iter().map(|t| (*t).clone()).collect();
            systems.shuffle(&mut rng);
            let f3 = Framing::new(
                &g2,
                [systems[0].clone(), systems[1].clone(), systems[2].clone()],
            )
            .unwrap();
            trials += 1;
            mismatches += (framed_canonical_code(&g2, &f3) != code) as usize;
        }
    }
    o.check(
        mismatches == 0,
        format!(
            "{mismatches} mismatches in {trials} relabelings over {} instances",
            instances.len()
        ),
    );

    let mut brute = std::collections::BTreeSet::new();
    let (mut orbits, mut split) = (0, 0);
    for g in generate_graphs(4).unwrap() {
        let fs = find_framings(&g).unwrap();
        for orbit in framing_orbits(&g, &fs) {
            let codes: std::collections::BTreeSet<String> = orbit
                .iter()
                .map(|&i| framed_canonical_code(&g, &fs[i]).to_hex())
                .collect();
            orbits += 1;
            split += (codes.len() != 1) as usize;
            brute.extend(codes);
        }
    }
    o.check(
        split == 0,
        format!("n=4: {split} of {orbits} isomorphism orbits carry more than one code"),
    );
    let canonical: std::collections::BTreeSet<String> = census.records[&4]
        .iter()
        .map(|r| r.framed_code.clone())
        .collect();
    o.check(
        brute == canonical,
        format!(
            "n=4: brute-force {} classes, canonical {}",
            brute.len(),
            canonical.len()
        ),
    );
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let l = lobachevsky(PI / 6.0);
    o.check(
        (l - 0.507470861).abs() <= 1e-9,
        format!("Lambda(pi/6) = {l:.12} vs 0.507470861 +- 1e-9"),
    );
    let v = trunc_tet_volume(PI / 3.0 - 1e-6).unwrap();
    o.check(
        (v - 1.014941606).abs() <= 1e-4,
        format!("V(pi/3 - 1e-6) = {v:.12}, limit 1.014941606"),
    );
    let mut worst = 0f64;
    for k in 0..20 {
        let theta = PI / 3.0 * (k as f64 + 1.0) / 21.5;
        let h = 1e-4;
        let fd = (trunc_tet_volume(theta + h).unwrap() - trunc_tet_volume(theta - h).unwrap())
            / (2.0 * h);
        let exact = -3.0 * edge_length(theta).unwrap();
        worst = worst.max(((fd - exact) / exact).abs());
    }
    o.check(
        worst <= 1e-5,
        format!("Schlafli dV/dtheta = -3 l: worst relative error {worst:.2e} at 20 angles"),
    );
    o.check(
        (0..=3).all(|n| manifold_volume(n).is_err()),
        "manifold_volume rejects n <= 3",
    );
    let mut worst = 0f64;
    for k in 0..20 {
        let theta = PI / 3.0 * (k as f64 + 1.0) / 21.5;
        let c = theta.cos();
        let g = Matrix4::from_fn(|i, j| if i == j { 1.0 } else { -c });
        let cof = |i: usize, j: usize| {
            let s = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            s * g.remove_row(i).remove_column(j).determinant()
        };
        let oracle = cof(0, 1) / (cof(0, 0) * cof(1, 1)).sqrt();
        worst = worst.max((edge_length(theta).unwrap().cosh() - oracle).abs() / oracle);
    }
    o.check(
        worst <= 1e-10,
        format!("cosh l vs Gram cofactors: worst relative error {worst:.2e}"),
    );
    let dt = t.elapsed();
    o.check(dt < Duration::from_secs(10), format!("runtime {dt:.2?}"));
    o
}

fn criterion_8(census: &CensusSummary) -> Outcome {
    let mut o = Outcome::new();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let mut oa = CensusOptions::new(4, 5, a.path());
    oa.jobs = 1;
    let mut ob = CensusOptions::new(4, 5, b.path());
    ob.jobs = 8;
    let (ra, rb) = (run_census(&oa).unwrap(), run_census(&ob).unwrap());
    let fa = std::fs::read(a.path().join("census-4.jsonl")).unwrap();
    let fb = std::fs::read(b.path().join("census-4.jsonl")).unwrap();
    o.check(
        fa == fb,
        format!(
            "census-4.jsonl identical at jobs 1 and 8 ({} bytes)",
            fa.len()
        ),
    );
    for (n, want) in [(4, M4), (5, M5)] {
        let counts = [ra.class_count(n), rb.class_count(n), census.class_count(n)];
        o.check(
            counts.iter().all(|&c| c == want),
            format!("|M_{n}| = {counts:?}, recorded {want}"),
        );
    }
    o
}

fn main() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let mut opts = CensusOptions::new(1, 6, dir.path());
    opts.jobs = 4;
    let census = run_census(&opts).unwrap();
    let set = framed_set();

    let results = [
        ("1 framing existence", criterion_1()),
        ("2 framed-graph invariants", criterion_2(&set)),
        ("3 spine and triangulation combinatorics", criterion_3(&set)),
        ("4 class counts and bounds", criterion_4(&census)),
        ("5 counting identity", criterion_5()),
        ("6 classification consistency", criterion_6(&census)),
        ("7 geometry", criterion_7()),
        ("8 determinism", criterion_8(&census)),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        println!(
            "{} criterion {name}",
            if outcome.ok { "PASS" } else { "FAIL" }
        );
        for line in &outcome.lines {
            println!("{line}");
        }
        failed += !outcome.ok as usize;
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.2?}",
        results.len() - failed,
        started.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
