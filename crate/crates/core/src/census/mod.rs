//! Census orchestration: classify framed graphs, compute every invariant,
//! check the structural facts each record must satisfy, and persist results.

mod counting;
mod run;
mod verify;

pub use counting::{eulerian_path_count_check, verify_bounds, BoundsReport, PathCountCheck};
pub use run::{
    run_census, CensusOptions, CensusSummary, CountsForN, RunManifest, MAX_CENSUS_N,
    MAX_DEFAULT_CENSUS_N,
};
pub use verify::{verify_instance, verify_text, CheckOutcome, CheckStatus, VerifyReport};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::framing::{canonical_framed, FramedGraphCode, Framing};
use crate::geometry::TruncTetGeometry;
use crate::graphs::{automorphism_group, canonical_code, is_three_connected, DartGraph};
use crate::spine::{build_spine, verify_special, z2_homology};
use crate::triangulation::{boundary, dualize, gamma_graph, orientation_check};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFlags {
    pub simple: bool,
    pub three_connected: bool,
    pub aut_order: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpineSummary {
    #[serde(rename = "V")]
    pub vertices: usize,
    #[serde(rename = "E")]
    pub edges: usize,
    #[serde(rename = "F")]
    pub faces: usize,
    pub chi: i64,
    pub h2_rank: usize,
    pub closed_surfaces: usize,
    pub special_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriSummary {
    pub edge_valences: Vec<usize>,
    pub manifold_ok: bool,
    pub m_orientable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySummary {
    pub components: usize,
    pub chi: i64,
    pub orientable: bool,
    pub genus: i64,
    pub vertex_orbits: usize,
    pub gamma_vertices: usize,
    pub gamma_loops: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometrySummary {
    pub theta: f64,
    pub edge_length: f64,
    pub tet_volume: f64,
    pub total_volume: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    /// Seconds since the Unix epoch; fixed per run so output stays reproducible.
    pub timestamp: u64,
}

/// One manifold `M(G, θ)` of the census, described through its canonical
/// framed graph. `n` is also its complexity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: usize,
    pub graph_code: String,
    pub flags: GraphFlags,
    pub framed_code: String,
    /// The framing in the canonical labeling, `t1|t2|t3`.
    pub framing: String,
    pub spine: SpineSummary,
    pub tri: TriSummary,
    pub boundary: BoundarySummary,
    pub geometry: Option<GeometrySummary>,
    pub provenance: Provenance,
}

/// A record together with the names of the checks it failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub record: CensusRecord,
    pub failures: Vec<String>,
}

impl Analysis {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub(crate) fn geometry_summary(n: usize) -> Option<GeometrySummary> {
    let geo = TruncTetGeometry::for_n(n).ok()?;
    Some(GeometrySummary {
        theta: geo.theta,
        edge_length: geo.edge_length,
        tet_volume: geo.tet_volume,
        total_volume: n as f64 * geo.tet_volume,
    })
}

/// Runs the whole pipeline on the canonical representative of `(g, f)`.
///
/// `geometry` is the precomputed summary for this `n` (absent for `n < 4`).
pub fn analyze(
    g: &DartGraph,
    f: &Framing,
    geometry: Option<GeometrySummary>,
    provenance: &Provenance,
) -> Result<Analysis> {
    let (cg, cf, code) = canonical_framed(g, f);
    analyze_canonical(&cg, &cf, &code, geometry, provenance)
}

pub(crate) fn analyze_canonical(
    g: &DartGraph,
    f: &Framing,
    code: &FramedGraphCode,
    geometry: Option<GeometrySummary>,
    provenance: &Provenance,
) -> Result<Analysis> {
    let n = g.n();
    let n_i = n as i64;
    let mut failures = Vec::new();
    let mut check = |ok: bool, name: &str| {
        if !ok {
            failures.push(name.to_string());
        }
    };

    let s = build_spine(g, f)?;
    let special = verify_special(&s)?;
    let h = z2_homology(&s);
    check(special.all_ok(), "special_spine");
    check(
        s.euler_characteristic() == 3 - n_i,
        "spine_euler_characteristic",
    );
    check(
        (s.num_vertices(), s.num_edges(), s.num_faces()) == (n, 2 * n, 3),
        "spine_cell_counts",
    );
    check(h.h2_rank == 2 && h.closed_surface_count == 3, "spine_h2");

    let t = dualize(&s)?;
    let orient = orientation_check(&t);
    check(orient.manifold_ok, "manifold_ok");
    check(
        orient.manifold_ok == special.all_ok(),
        "dual_orientation_agrees",
    );
    let valences = t.edge_valences();
    check(valences == vec![2 * n; 3], "three_edges_of_valence_2n");

    let (boundary_summary, gamma_ok) = match boundary(&t) {
        Ok(b) => {
            let gamma = gamma_graph(&t, &b);
            check(b.component_count == 1, "boundary_connected");
            check(b.euler_char == 6 - 2 * n_i, "boundary_euler_characteristic");
            check(
                b.euler_char == 2 * s.euler_characteristic(),
                "boundary_chi_twice_spine_chi",
            );
            check(b.vertex_orbits == 6, "boundary_vertex_orbits");
            check(
                (b.component_count == 1) == (gamma.vertices == 1),
                "gamma_matches_boundary",
            );
            (
                BoundarySummary {
                    components: b.component_count,
                    chi: b.euler_char,
                    orientable: b.orientable,
                    genus: b.genus,
                    vertex_orbits: b.vertex_orbits,
                    gamma_vertices: gamma.vertices,
                    gamma_loops: gamma.loop_count(),
                },
                gamma.is_wedge_of_three_circles(),
            )
        }
        Err(_) => {
            failures.push("boundary".into());
            (
                BoundarySummary {
                    components: 0,
                    chi: 0,
                    orientable: false,
                    genus: 0,
                    vertex_orbits: 0,
                    gamma_vertices: 0,
                    gamma_loops: 0,
                },
                false,
            )
        }
    };
    if !gamma_ok {
        failures.push("gamma_wedge_of_three_circles".into());
    }
    if n >= 4 {
        let geo_ok = geometry.as_ref().is_some_and(|geo| {
            geo.total_volume.is_finite() && geo.tet_volume > crate::geometry::ideal_regular_volume()
        });
        if !geo_ok {
            failures.push("geometry".into());
        }
    }

    let record = CensusRecord {
        n,
        graph_code: canonical_code(g).to_hex(),
        flags: GraphFlags {
            simple: g.is_simple(),
            three_connected: g.is_simple() && is_three_connected(g),
            aut_order: automorphism_group(g).order,
        },
        framed_code: code.to_hex(),
        framing: f.to_string(),
        spine: SpineSummary {
            vertices: s.num_vertices(),
            edges: s.num_edges(),
            faces: s.num_faces(),
            chi: s.euler_characteristic(),
            h2_rank: h.h2_rank,
            closed_surfaces: h.closed_surface_count,
            special_ok: special.all_ok(),
        },
        tri: TriSummary {
            edge_valences: valences,
            manifold_ok: orient.manifold_ok,
            m_orientable: orient.m_orientable,
        },
        boundary: boundary_summary,
        geometry: if n >= 4 { geometry } else { None },
        provenance: provenance.clone(),
    };
    Ok(Analysis { record, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framing::find_framings;
    use crate::graphs::samples;

    #[test]
    fn k5_records_pass() {
        let g = samples::k5();
        let prov = Provenance {
            tool_version: "test".into(),
            timestamp: 0,
        };
        for f in find_framings(&g).unwrap().iter().take(5) {
            let a = analyze(&g, f, geometry_summary(5), &prov).unwrap();
            assert!(a.passed(), "{:?}", a.failures);
            assert_eq!(a.record.spine.chi, -2);
            assert_eq!(a.record.boundary.chi, -4);
            assert!(a.record.flags.three_connected);
        }
    }
}
