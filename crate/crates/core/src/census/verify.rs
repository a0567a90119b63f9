use serde::{Deserialize, Serialize};

use super::{analyze_canonical, geometry_summary, CensusRecord};
use crate::error::{Error, Result};
use crate::framing::{framed_from_code, FramedGraphCode};
use crate::geometry::{edge_length, ideal_regular_volume, trunc_tet_volume};
use crate::spine::{build_spine, verify_special, z2_homology};
use crate::triangulation::{
    boundary, declared_edge_classes, dualize, gamma_graph, import_tri_json, orientation_check,
    Triangulation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    /// `record`, `framed_code` or `tri-json`.
    pub source: String,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    fn push(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        self.checks.push(CheckOutcome {
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }
}

fn geometry_checks(report: &mut VerifyReport, n: usize) {
    if n < 4 {
        report.checks.push(CheckOutcome {
            name: "geometry".into(),
            status: CheckStatus::NotApplicable,
            detail: "not applicable (n < 4)".into(),
        });
        return;
    }
    let theta = std::f64::consts::PI / n as f64;
    let (Ok(v), Ok(l)) = (trunc_tet_volume(theta), edge_length(theta)) else {
        report.push(
            "geometry",
            false,
            format!("no truncated tetrahedron at angle pi/{n}"),
        );
        return;
    };
    report.push(
        "geometry_volume_above_ideal",
        v > ideal_regular_volume(),
        format!("tet volume {v:.12}"),
    );
    let h = 1e-4 * theta;
    let schlafli = match (trunc_tet_volume(theta + h), trunc_tet_volume(theta - h)) {
        (Ok(a), Ok(b)) => (a - b) / (2.0 * h),
        _ => f64::NAN,
    };
    let rel = (schlafli + 3.0 * l).abs() / (3.0 * l);
    report.push(
        "geometry_schlafli",
        rel <= 1e-5,
        format!("dV/dtheta {schlafli:.10} vs -3*length {:.10}", -3.0 * l),
    );
}

/// Combinatorial checks that need only the gluing table.
fn triangulation_checks(report: &mut VerifyReport, t: &Triangulation) {
    let n = t.n;
    let o = orientation_check(t);
    report.push(
        "manifold_ok",
        o.manifold_ok,
        "no edge identified with itself reversed",
    );
    let valences = t.edge_valences();
    report.push(
        "edge_classes",
        valences == vec![2 * n; 3],
        format!("valences {valences:?}, expected three of {}", 2 * n),
    );
    match boundary(t) {
        Ok(b) => {
            let gamma = gamma_graph(t, &b);
            report.push(
                "boundary_connected",
                b.component_count == 1,
                format!("{} components", b.component_count),
            );
            report.push(
                "boundary_euler_characteristic",
                b.euler_char == 6 - 2 * n as i64,
                format!("chi {} expected {}", b.euler_char, 6 - 2 * n as i64),
            );
            report.push(
                "boundary_vertex_orbits",
                b.vertex_orbits == 6,
                format!("{} orbits", b.vertex_orbits),
            );
            report.push(
                "gamma_wedge_of_three_circles",
                gamma.is_wedge_of_three_circles(),
                format!("{} vertices, {} loops", gamma.vertices, gamma.loop_count()),
            );
        }
        Err(e) => report.push("boundary", false, e.to_string()),
    }
}

fn verify_framed(code: &FramedGraphCode, stored: Option<&CensusRecord>) -> Result<VerifyReport> {
    let (g, f) = framed_from_code(code)?;
    let n = g.n();
    let mut report = VerifyReport {
        n,
        source: if stored.is_some() {
            "record"
        } else {
            "framed_code"
        }
        .into(),
        checks: Vec::new(),
    };
    let s = build_spine(&g, &f)?;
    let special = verify_special(&s)?;
    report.push("special_spine", special.all_ok(), format!("{special:?}"));
    report.push(
        "spine_euler_characteristic",
        s.euler_characteristic() == 3 - n as i64,
        format!("chi {}", s.euler_characteristic()),
    );
    let h = z2_homology(&s);
    report.push(
        "spine_h2",
        h.h2_rank == 2 && h.closed_surface_count == 3,
        format!(
            "h2 rank {}, {} closed surfaces",
            h.h2_rank, h.closed_surface_count
        ),
    );
    let t = dualize(&s)?;
    report.push(
        "dual_counts",
        t.n == n && t.num_face_pairings() == 2 * n,
        format!("{} tets", t.n),
    );
    triangulation_checks(&mut report, &t);
    geometry_checks(&mut report, n);
    if let Some(rec) = stored {
        let prov = rec.provenance.clone();
        let fresh = analyze_canonical(&g, &f, code, geometry_summary(n), &prov)?.record;
        report.push(
            "record_matches_recomputation",
            &fresh == rec,
            "stored invariants vs recomputed",
        );
    }
    Ok(report)
}

/// Re-runs every check on one instance given as a framed code.
pub fn verify_instance(code: &str) -> Result<VerifyReport> {
    verify_framed(&FramedGraphCode::from_hex(code.trim())?, None)
}

fn verify_tri_json(text: &str) -> Result<VerifyReport> {
    let t = import_tri_json(text)?;
    let mut report = VerifyReport {
        n: t.n,
        source: "tri-json".into(),
        checks: Vec::new(),
    };
    let declared = declared_edge_classes(text)?;
    report.push(
        "declared_edge_classes",
        declared == t.edge_classes,
        "edge classes listed in the file vs recomputed from gluings",
    );
    triangulation_checks(&mut report, &t);
    geometry_checks(&mut report, t.n);
    Ok(report)
}

/// Accepts census JSONL (one report per line), a `tri-json` document, or
/// bare framed codes one per line.
pub fn verify_text(text: &str) -> Result<Vec<VerifyReport>> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() {
        return Err(Error::malformed("empty input"));
    }
    if trimmed.starts_with('{') {
        let value: serde_json::Value = match serde_json::from_str(trimmed) {
            Ok(v) => v,
            // several JSON lines
            Err(_) => serde_json::Value::Null,
        };
        if value.get("tets").is_some() {
            return Ok(vec![verify_tri_json(trimmed)?]);
        }
    }
    let mut reports = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('{') {
            let rec: CensusRecord = serde_json::from_str(line)
                .map_err(|e| Error::malformed(format!("line {}: {e}", lineno + 1)))?;
            let code = FramedGraphCode::from_hex(&rec.framed_code)?;
            reports.push(verify_framed(&code, Some(&rec))?);
        } else {
            reports.push(verify_instance(line)?);
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framing::{canonical_framed, find_framings};
    use crate::graphs::samples;

    #[test]
    fn framed_code_verifies() {
        let g = samples::k5();
        let f = &find_framings(&g).unwrap()[0];
        let (_, _, code) = canonical_framed(&g, f);
        let r = verify_instance(&code.to_hex()).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn small_n_geometry_not_applicable() {
        let (g, f) = crate::graphs::generate_graphs(3)
            .unwrap()
            .into_iter()
            .find_map(|g| {
                find_framings(&g)
                    .unwrap()
                    .into_iter()
                    .next()
                    .map(|f| (g, f))
            })
            .unwrap();
        let (_, _, code) = canonical_framed(&g, &f);
        let r = verify_instance(&code.to_hex()).unwrap();
        let geo = r.checks.iter().find(|c| c.name == "geometry").unwrap();
        assert_eq!(geo.status, CheckStatus::NotApplicable);
        assert_eq!(geo.detail, "not applicable (n < 4)");
    }
}
