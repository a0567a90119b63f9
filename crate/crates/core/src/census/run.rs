use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::counting::{verify_bounds, BoundsReport};
use super::{analyze_canonical, geometry_summary, Analysis, CensusRecord, Provenance};
use crate::error::{Error, Result};
use crate::framing::{canonical_framed, find_framings};
use crate::graphs::{canonical_code, generate_graphs, is_three_connected, parse_graphs, DartGraph};

/// Largest `n` censused without `allow_slow`.
pub const MAX_DEFAULT_CENSUS_N: usize = 6;
/// Hard ceiling, reachable only with `allow_slow`.
pub const MAX_CENSUS_N: usize = 7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusOptions {
    pub n_min: usize,
    pub n_max: usize,
    pub simple_only: bool,
    pub three_connected_only: bool,
    pub jobs: usize,
    pub out_dir: PathBuf,
    /// Graph files to census instead of generating all graphs.
    pub inputs: Vec<PathBuf>,
    pub allow_slow: bool,
    /// Written into every record's provenance.
    pub timestamp: u64,
}

impl CensusOptions {
    pub fn new(n_min: usize, n_max: usize, out_dir: impl Into<PathBuf>) -> Self {
        CensusOptions {
            n_min,
            n_max,
            simple_only: false,
            three_connected_only: false,
            jobs: 1,
            out_dir: out_dir.into(),
            inputs: Vec::new(),
            allow_slow: false,
            timestamp: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsForN {
    pub graphs: usize,
    pub classes: usize,
    pub classes_simple: usize,
    pub classes_three_connected: usize,
    pub quarantined: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunParameters {
    pub n_min: usize,
    pub n_max: usize,
    pub simple_only: bool,
    pub three_connected_only: bool,
    pub jobs: usize,
    pub allow_slow: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub parameters: RunParameters,
    pub params_hash: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub counts: BTreeMap<usize, CountsForN>,
    pub bounds: Vec<BoundsReport>,
    /// Graphs whose partial results were reused from an earlier run.
    pub resumed_graphs: usize,
    pub wall_time_secs: f64,
}

#[derive(Clone, Debug)]
pub struct CensusSummary {
    pub manifest: RunManifest,
    pub records: BTreeMap<usize, Vec<CensusRecord>>,
    pub quarantine: Vec<Analysis>,
}

impl CensusSummary {
    pub fn class_count(&self, n: usize) -> usize {
        self.records.get(&n).map_or(0, Vec::len)
    }
}

/// Per-graph result, flushed to disk so interrupted runs can resume.
#[derive(Serialize, Deserialize)]
struct GraphResult {
    graph_code: String,
    analyses: Vec<Analysis>,
}

fn check_limits(opts: &CensusOptions) -> Result<()> {
    if opts.n_min == 0 || opts.n_min > opts.n_max {
        return Err(Error::OutOfRange(format!(
            "invalid range n = {}..={}",
            opts.n_min, opts.n_max
        )));
    }
    let limit = if opts.allow_slow {
        MAX_CENSUS_N
    } else {
        MAX_DEFAULT_CENSUS_N
    };
    if opts.n_max > limit {
        return Err(Error::LimitExceeded(format!(
            "census limited to n <= {limit}{}",
            if opts.allow_slow {
                ""
            } else {
                " (n = 7 needs allow_slow)"
            }
        )));
    }
    Ok(())
}

fn hash_params(opts: &CensusOptions, input_texts: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(crate::TOOL_VERSION.as_bytes());
    h.update([opts.simple_only as u8, opts.three_connected_only as u8]);
    h.update(opts.timestamp.to_be_bytes());
    for t in input_texts {
        h.update((t.len() as u64).to_be_bytes());
        h.update(t.as_bytes());
    }
    hex::encode(&h.finalize()[..8])
}

fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn graph_filter(opts: &CensusOptions, g: &DartGraph) -> bool {
    let simple = g.is_simple();
    (!opts.simple_only || simple)
        && (!opts.three_connected_only || (simple && is_three_connected(g)))
}

/// All framings of `g`, reduced to one canonical representative per class.
fn census_graph(g: &DartGraph, n: usize, prov: &Provenance) -> Result<GraphResult> {
    let mut reps = BTreeMap::new();
    for f in find_framings(g)? {
        let (cg, cf, code) = canonical_framed(g, &f);
        reps.entry(code).or_insert((cg, cf));
    }
    let geometry = geometry_summary(n);
    let analyses = reps
        .iter()
        .map(|(code, (cg, cf))| analyze_canonical(cg, cf, code, geometry.clone(), prov))
        .collect::<Result<Vec<_>>>()?;
    Ok(GraphResult {
        graph_code: canonical_code(g).to_hex(),
        analyses,
    })
}

fn load_partial(path: &Path, g: &DartGraph) -> Option<GraphResult> {
    let text = fs::read_to_string(path).ok()?;
    let r: GraphResult = serde_json::from_str(&text).ok()?;
    (r.graph_code == canonical_code(g).to_hex()).then_some(r)
}

fn jsonl<T: Serialize>(items: &[T]) -> Result<String> {
    let mut out = String::new();
    for item in items {
        out.push_str(
            &serde_json::to_string(item).map_err(|e| Error::MalformedInput(e.to_string()))?,
        );
        out.push('\n');
    }
    Ok(out)
}

/// Enumerates `𝓜ₙ` for each `n` in range and writes `census-{n}.jsonl`,
/// `quarantine.jsonl` and `manifest.json` into `out_dir`.
///
/// Output files other than the manifest depend only on the parameters, never
/// on `jobs` or on whether the run resumed from partial results.
pub fn run_census(opts: &CensusOptions) -> Result<CensusSummary> {
    let started = Instant::now();
    check_limits(opts)?;
    let input_texts = opts
        .inputs
        .iter()
        .map(fs::read_to_string)
        .collect::<std::io::Result<Vec<_>>>()?;
    let mut ingested: BTreeMap<usize, Vec<DartGraph>> = BTreeMap::new();
    for text in &input_texts {
        for g in parse_graphs(text)? {
            let n = g.n();
            if n > opts.n_max.max(MAX_DEFAULT_CENSUS_N) && !(opts.allow_slow && n <= MAX_CENSUS_N) {
                return Err(Error::LimitExceeded(format!(
                    "input graph with n = {n} is too large to census"
                )));
            }
            ingested.entry(n).or_default().push(g);
        }
    }

    let params_hash = hash_params(opts, &input_texts);
    let partial_root = opts.out_dir.join("partial").join(&params_hash);
    let prov = Provenance {
        tool_version: crate::TOOL_VERSION.into(),
        timestamp: opts.timestamp,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::LimitExceeded(format!("thread pool: {e}")))?;

    let mut records = BTreeMap::new();
    let mut quarantine = Vec::new();
    let mut counts = BTreeMap::new();
    let mut bounds = Vec::new();
    let mut outputs = Vec::new();
    let mut resumed_graphs = 0;
    fs::create_dir_all(&opts.out_dir)?;

    for n in opts.n_min..=opts.n_max {
        let graphs: Vec<DartGraph> = if opts.inputs.is_empty() {
            generate_graphs(n)?
        } else {
            ingested.remove(&n).unwrap_or_default()
        };
        let graphs: Vec<DartGraph> = graphs
            .into_iter()
            .filter(|g| graph_filter(opts, g))
            .collect();
        let dir = partial_root.join(format!("n{n}"));
        let results: Vec<(GraphResult, bool)> = pool.install(|| {
            graphs
                .par_iter()
                .enumerate()
                .map(|(i, g)| {
                    let path = dir.join(format!("g{i:05}.json"));
                    if let Some(r) = load_partial(&path, g) {
                        return Ok((r, true));
                    }
                    let r = census_graph(g, n, &prov)?;
                    let bytes =
                        serde_json::to_vec(&r).map_err(|e| Error::MalformedInput(e.to_string()))?;
                    write_atomic(&path, &bytes)?;
                    Ok((r, false))
                })
                .collect::<Result<Vec<_>>>()
        })?;

        // single writer: merge in canonical order
        let mut by_code: BTreeMap<String, Analysis> = BTreeMap::new();
        for (r, resumed) in results {
            resumed_graphs += resumed as usize;
            for a in r.analyses {
                by_code.entry(a.record.framed_code.clone()).or_insert(a);
            }
        }
        let mut emitted = Vec::new();
        for (_, a) in by_code {
            if a.passed() {
                emitted.push(a.record);
            } else {
                quarantine.push(a);
            }
        }
        let c = CountsForN {
            graphs: graphs.len(),
            classes: emitted.len(),
            classes_simple: emitted.iter().filter(|r| r.flags.simple).count(),
            classes_three_connected: emitted.iter().filter(|r| r.flags.three_connected).count(),
            quarantined: quarantine.iter().filter(|a| a.record.n == n).count(),
        };
        let path = opts.out_dir.join(format!("census-{n}.jsonl"));
        write_atomic(&path, jsonl(&emitted)?.as_bytes())?;
        outputs.push(path.display().to_string());
        bounds.push(verify_bounds(n, c.classes + c.quarantined));
        counts.insert(n, c);
        records.insert(n, emitted);
    }

    let qpath = opts.out_dir.join("quarantine.jsonl");
    write_atomic(&qpath, jsonl(&quarantine)?.as_bytes())?;
    outputs.push(qpath.display().to_string());
    let mpath = opts.out_dir.join("manifest.json");
    outputs.push(mpath.display().to_string());

    let manifest = RunManifest {
        tool_version: crate::TOOL_VERSION.into(),
        parameters: RunParameters {
            n_min: opts.n_min,
            n_max: opts.n_max,
            simple_only: opts.simple_only,
            three_connected_only: opts.three_connected_only,
            jobs: opts.jobs,
            allow_slow: opts.allow_slow,
        },
        params_hash,
        inputs: opts
            .inputs
            .iter()
            .map(|p| p.display().to_string())
            .collect(),
        outputs,
        counts,
        bounds,
        resumed_graphs,
        wall_time_secs: started.elapsed().as_secs_f64(),
    };
    let mut text = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::MalformedInput(e.to_string()))?;
    text.push('\n');
    write_atomic(&mpath, text.as_bytes())?;
    Ok(CensusSummary {
        manifest,
        records,
        quarantine,
    })
}
