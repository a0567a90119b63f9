//! Regular truncated hyperbolic tetrahedra: dihedral angle, internal edge
//! length and volume, and the volume of a manifold glued from `n` of them.
//!
//! Fixed tolerances: Lobachevsky function to 1e-12 absolute, volume
//! quadrature to 1e-9 absolute (the integrator targets 1e-12).

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const QUAD_TOL: f64 = 1e-12;

fn zeta_even_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // zeta(2k) for k = 1..=40; direct sum plus Euler-Maclaurin tail from M
        const M: f64 = 50.0;
        (1..=40)
            .map(|k| {
                if k == 1 {
                    return PI * PI / 6.0;
                }
                let s = 2.0 * k as f64;
                let head: f64 = (1..50).map(|m| (m as f64).powf(-s)).sum();
                let tail =
                    M.powf(1.0 - s) / (s - 1.0) + 0.5 * M.powf(-s) + s / 12.0 * M.powf(-s - 1.0);
                head + tail
            })
            .collect()
    })
}

/// Clausen function Cl2 on `[0, pi]` via its expansion about 0:
/// `Cl2(t) = t - t ln t + t * sum zeta(2k) / (k (2k+1)) (t / 2pi)^(2k)`.
fn clausen2_reduced(t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let r2 = (t / (2.0 * PI)).powi(2);
    let mut sum = 0.0;
    let mut power = 1.0;
    for (i, z) in zeta_even_table().iter().enumerate() {
        let k = (i + 1) as f64;
        power *= r2;
        let term = z / (k * (2.0 * k + 1.0)) * power;
        sum += term;
        if term < 1e-18 {
            break;
        }
    }
    t - t * t.ln() + t * sum
}

/// Lobachevsky function `Λ(x) = -∫_0^x ln|2 sin t| dt`.
///
/// Reduced to `[0, π/2]` by π-periodicity and oddness, then `Λ(x) = Cl2(2x) / 2`.
pub fn lobachevsky(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let mut y = x.rem_euclid(PI);
    if y > PI / 2.0 {
        y -= PI;
    }
    let value = 0.5 * clausen2_reduced(2.0 * y.abs());
    if y < 0.0 {
        -value
    } else {
        value
    }
}

/// Volume of the regular ideal tetrahedron, `2Λ(π/6)`.
pub fn ideal_regular_volume() -> f64 {
    2.0 * lobachevsky(PI / 6.0)
}

fn check_angle(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < PI / 3.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!(
            "dihedral angle {theta} outside (0, π/3): vertices are not hyperideal"
        )))
    }
}

/// `cosh ℓ` for the internal edges of the regular truncated tetrahedron with
/// dihedral angle `theta` (no range check).
fn cosh_edge_length(theta: f64) -> f64 {
    let c = theta.cos();
    c / (2.0 * c - 1.0)
}

/// Length of an internal edge: `cosh ℓ = cos θ / (2 cos θ - 1)`.
pub fn edge_length(theta: f64) -> Result<f64> {
    check_angle(theta)?;
    Ok(cosh_edge_length(theta).acosh())
}

// standard 15-point Kronrod abscissae and weights, kept at full published precision
#[allow(clippy::excessive_precision)]
const GK_NODES: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const GK_WEIGHTS_K: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const GK_WEIGHTS_G: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Gauss-Kronrod 7/15 rule: (integral, error estimate).
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kronrod = GK_WEIGHTS_K[7] * fc;
    let mut gauss = GK_WEIGHTS_G[3] * fc;
    for i in 0..7 {
        let dx = half * GK_NODES[i];
        let pair = f(mid - dx) + f(mid + dx);
        kronrod += GK_WEIGHTS_K[i] * pair;
        if i % 2 == 1 {
            gauss += GK_WEIGHTS_G[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss-Kronrod: bisect the worst interval until the
/// summed error estimate drops below `tol`.
pub(crate) fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (value, error) = gk15(&f, a, b);
    let mut heap = BinaryHeap::from([Piece { a, b, value, error }]);
    let mut total_err = error;
    for _ in 0..10_000 {
        if total_err <= tol {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gk15(&f, worst.a, mid);
        let (rv, re) = gk15(&f, mid, worst.b);
        total_err += le + re - worst.error;
        heap.push(Piece {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Piece {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
    }
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    (value, error)
}

/// `cosh ℓ` at `θ = π/3 - gap`, written to avoid cancellation in `2 cos θ - 1`.
fn cosh_edge_length_below_ideal(gap: f64) -> f64 {
    let half = (0.5 * gap).sin();
    let cos_theta = 0.5 * gap.cos() + 0.5 * 3f64.sqrt() * gap.sin();
    cos_theta / (3f64.sqrt() * gap.sin() - 2.0 * half * half)
}

/// `∫_θ^{π/3} ℓ(t) dt`. With `t = π/3 - L w²` the logarithmic endpoint
/// singularity becomes `w ln w`, which the rule handles well.
fn edge_length_integral(theta: f64) -> f64 {
    let span = PI / 3.0 - theta;
    let integrand = |w: f64| 2.0 * span * w * cosh_edge_length_below_ideal(span * w * w).acosh();
    integrate(integrand, 0.0, 1.0, QUAD_TOL).0
}

/// Volume by integrating the Schläfli identity `dV/dθ = -3ℓ(θ)` down from
/// the ideal regular tetrahedron at `θ = π/3`. Truncation faces meet the
/// internal faces at right angles and contribute nothing.
pub fn trunc_tet_volume(theta: f64) -> Result<f64> {
    check_angle(theta)?;
    Ok(ideal_regular_volume() + 3.0 * edge_length_integral(theta))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncTetGeometry {
    pub theta: f64,
    pub edge_length: f64,
    pub tet_volume: f64,
    pub n_context: Option<usize>,
}

impl TruncTetGeometry {
    pub fn for_angle(theta: f64) -> Result<Self> {
        Ok(TruncTetGeometry {
            theta,
            edge_length: edge_length(theta)?,
            tet_volume: trunc_tet_volume(theta)?,
            n_context: None,
        })
    }

    /// The tetrahedron with angle `π/n`, so that `2n` angles close up to `2π`.
    pub fn for_n(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::OutOfRange(format!(
                "n = {n}: angle π/n >= π/3, no hyperbolic structure from this construction"
            )));
        }
        let mut geo = Self::for_angle(PI / n as f64)?;
        geo.n_context = Some(n);
        Ok(geo)
    }
}

/// Volume of `M(G, θ)` for an `n`-vertex framed graph, `n ≥ 4`.
pub fn manifold_volume(n: usize) -> Result<f64> {
    Ok(n as f64 * TruncTetGeometry::for_n(n)?.tet_volume)
}

/// `%.{digits}g`-style formatting.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if exp < -5 || exp >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, x);
        let (mantissa, e) = s.split_once('e').unwrap();
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        return format!("{mantissa}e{e}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// CSV table `n,theta,edge_length,tet_volume,total_volume` for `4 ≤ n ≤ n_max`.
pub fn volume_table(n_max: usize) -> Result<String> {
    if n_max < 4 {
        return Err(Error::OutOfRange(format!("n_max = {n_max} < 4")));
    }
    let mut out = String::from("n,theta,edge_length,tet_volume,total_volume\n");
    for n in 4..=n_max {
        let geo = TruncTetGeometry::for_n(n)?;
        let f = |x: f64| format_significant(x, 12);
        writeln!(
            out,
            "{n},{},{},{},{}",
            f(geo.theta),
            f(geo.edge_length),
            f(geo.tet_volume),
            f(n as f64 * geo.tet_volume)
        )
        .unwrap();
    }
    Ok(out)
}
