//! Floating-point sampling oracle.
//!
//! Samples arcs of T, evaluates real point-to-segment distances to T′ on a
//! dyadic grid t = 2^{-k}, and fits the slope of log2(dist) against log2(t)
//! by least squares. The fitted slope corroborates the exact distance order;
//! nothing in the exact pipeline depends on it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pizza_core::exacts::{ratio_to_f64, Exp};
use pizza_core::germmodel::{distance_order, eval_arc, ArcLoc};
use pizza_core::{Rat, TriangleModel};

#[derive(Debug, Clone)]
pub struct OracleParams {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub k_min: u32,
    pub k_max: u32,
}

impl Default for OracleParams {
    fn default() -> Self {
        OracleParams {
            samples: 24,
            seed: 17,
            tolerance: 0.05,
            k_min: 10,
            k_max: 40,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleSample {
    pub loc: String,
    pub exact: String,
    pub fitted: Option<f64>,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub samples: Vec<OracleSample>,
}

impl OracleOutcome {
    pub fn mismatches(&self) -> usize {
        self.samples.iter().filter(|s| !s.ok).count()
    }
}

fn point_at(m: &TriangleModel, patch: usize, w: f64, t: f64) -> Vec<f64> {
    let a = m.anchors()[patch].coords();
    let b = m.anchors()[patch + 1].coords();
    a.iter()
        .zip(b.iter())
        .map(|(pa, pb)| {
            let va = pa.eval_f64(t);
            let vb = pb.eval_f64(t);
            va + w * (vb - va)
        })
        .collect()
}

fn dist_point_segment(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let mut d2 = 0.0;
    let mut ed = 0.0;
    let mut ee = 0.0;
    for i in 0..p.len() {
        let di = b[i] - a[i];
        let ei = p[i] - a[i];
        d2 += di * di;
        ed += ei * di;
        ee += ei * ei;
    }
    let w = if d2 > 0.0 { (ed / d2).clamp(0.0, 1.0) } else { 0.0 };
    let mut acc = 0.0;
    for i in 0..p.len() {
        let di = b[i] - a[i];
        let ei = p[i] - a[i];
        let r = ei - w * di;
        acc += r * r;
    }
    let _ = ee;
    acc.sqrt()
}

fn dist_to_triangle(p: &[f64], m: &TriangleModel, t: f64) -> f64 {
    let mut best = f64::INFINITY;
    for j in 0..m.num_patches() {
        let a: Vec<f64> = m.anchors()[j].coords().iter().map(|c| c.eval_f64(t)).collect();
        let b: Vec<f64> = m.anchors()[j + 1]
            .coords()
            .iter()
            .map(|c| c.eval_f64(t))
            .collect();
        let d = dist_point_segment(p, &a, &b);
        if d < best {
            best = d;
        }
    }
    best
}

/// Least-squares slope of log2(dist) against log2(t) on the dyadic grid;
/// None when the distances sit below the numeric floor (consistent with an
/// infinite order).
fn fitted_slope(
    tt: &TriangleModel,
    tp: &TriangleModel,
    patch: usize,
    w: f64,
    params: &OracleParams,
) -> Option<f64> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in params.k_min..=params.k_max {
        let t = (2.0f64).powi(-(k as i32));
        let p = point_at(tt, patch, w, t);
        let d = dist_to_triangle(&p, tp, t);
        if d < 1e-280 {
            continue;
        }
        xs.push(-(k as f64));
        ys.push(d.log2());
    }
    if xs.len() < (params.k_max - params.k_min) as usize / 2 {
        return None;
    }
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys.iter()).map(|(x, y)| x * y).sum();
    Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

/// Check sampled exact orders against numeric slopes. Orders of 10 and above
/// (and infinite orders) are only checked for consistency with the floor.
pub fn oracle_check(
    tt: &TriangleModel,
    tp: &TriangleModel,
    params: &OracleParams,
) -> OracleOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut locs: Vec<ArcLoc<Rat>> = Vec::new();
    // Boundary arcs first, then seeded random constant rulings.
    locs.push(ArcLoc::at_constant(0, Rat::from_integer(0.into())));
    locs.push(ArcLoc::at_constant(
        tt.num_patches() - 1,
        Rat::from_integer(1.into()),
    ));
    while locs.len() < params.samples {
        let patch = rng.gen_range(0..tt.num_patches());
        let num = rng.gen_range(1i64..16);
        locs.push(ArcLoc::at_constant(patch, Rat::new(num.into(), 16.into())));
    }
    let mut samples = Vec::new();
    for loc in locs {
        let arc = eval_arc(tt, &loc).expect("sampled location is valid");
        let exact = distance_order(&arc, tp).expect("exact order");
        let w = ratio_to_f64(&loc.ruling.constant_term());
        let fitted = fitted_slope(tt, tp, loc.patch, w, params);
        let ok = match (&exact, fitted) {
            (Exp::Infinite, None) => true,
            (Exp::Infinite, Some(_)) => false,
            (Exp::Finite(q), fit) => {
                let qf = ratio_to_f64(q);
                if qf < 10.0 {
                    match fit {
                        Some(s) => (s - qf).abs() <= params.tolerance,
                        None => false,
                    }
                } else {
                    true
                }
            }
        };
        samples.push(OracleSample {
            loc: format!("patch {} ruling {}", loc.patch, loc.ruling.constant_term()),
            exact: exact.to_string(),
            fitted,
            ok,
        });
    }
    OracleOutcome { samples }
}

pub fn oracle_text(outcome: &OracleOutcome) -> String {
    let mut out = String::new();
    for s in &outcome.samples {
        let fitted = match s.fitted {
            Some(f) => format!("{f:.4}"),
            None => "below floor".into(),
        };
        out.push_str(&format!(
            "{}: exact {} fitted {} {}\n",
            s.loc,
            s.exact,
            fitted,
            if s.ok { "ok" } else { "MISMATCH" }
        ));
    }
    out.push_str(&format!(
        "{} sample(s), {} mismatch(es)\n",
        outcome.samples.len(),
        outcome.mismatches()
    ));
    out
}
