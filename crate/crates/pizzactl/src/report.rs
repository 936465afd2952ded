//! Deterministic reports: the full pipeline output as text or JSON.

use serde::Serialize;

use pizza_core::pizza::{is_elementary, pizza_equivalent, profile_of, q_range};
use pizza_core::sigmatau::{
    graph_representable, sigma_tau_pizza, Representability, SigmaTauError,
};
use pizza_core::{PizzaData, SigmaTau};

use crate::scene::{exp_str, sigma_tau_to_doc, ChartDoc, Scene, SceneBody, SceneError};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub scene: String,
    pub kind: String,
    pub chart: ChartDoc,
    pub q_range_t: String,
    pub q_range_tp: String,
    pub elementary_t: bool,
    pub elementary_tp: bool,
    /// Whether the two minimal pizzas of the scene are equivalent.
    pub pizzas_equivalent: bool,
    pub representability: String,
    pub diagnostics: Vec<String>,
}

/// Run the full pipeline. Abstract charts skip the geometric stages and echo
/// their validated data.
pub fn run_pipeline(scene: &Scene) -> Result<(SigmaTau, Report), SceneError> {
    let map_err = |e: SigmaTauError| SceneError::Validation(e.to_string());
    let (st, representability) = match &scene.body {
        SceneBody::Geometric { t, tp } => {
            let st = sigma_tau_pizza(t, tp).map_err(map_err)?;
            let verdict = graph_representable(t, tp).map_err(map_err)?;
            (st, verdict)
        }
        SceneBody::Abstract { st } => (st.clone(), Representability::Unknown),
    };
    let q_of = |p: &PizzaData| {
        let lo = p.zone_orders().into_iter().min().unwrap();
        let hi = p.zone_orders().into_iter().max().unwrap();
        format!("[{lo}, {hi}]")
    };
    let (q_range_t, q_range_tp) = match &scene.body {
        SceneBody::Geometric { t, tp } => {
            let prof_t = profile_of(&st.pizza_t);
            let prof_tp = profile_of(&st.pizza_tp);
            let _ = (t, tp);
            (
                q_range(&prof_t).to_string(),
                q_range(&prof_tp).to_string(),
            )
        }
        SceneBody::Abstract { .. } => (q_of(&st.pizza_t), q_of(&st.pizza_tp)),
    };
    let report = Report {
        scene: scene.name.clone(),
        kind: match &scene.body {
            SceneBody::Geometric { .. } => "geometric".into(),
            SceneBody::Abstract { .. } => "abstract".into(),
        },
        chart: sigma_tau_to_doc(&st),
        q_range_t,
        q_range_tp,
        elementary_t: is_elementary(&st.pizza_t),
        elementary_tp: is_elementary(&st.pizza_tp),
        pizzas_equivalent: pizza_equivalent(&st.pizza_t, &st.pizza_tp),
        representability: representability.to_string(),
        diagnostics: Vec::new(),
    };
    Ok((st, report))
}

fn pizza_text(out: &mut String, label: &str, p: &PizzaData) {
    out.push_str(&format!("pizza on {label}: {} slice(s)\n", p.slices.len()));
    for (i, s) in p.slices.iter().enumerate() {
        let q = if s.is_point() {
            format!("{{{}}}", s.q_prev)
        } else {
            format!("({} -> {})", s.q_prev, s.q_next)
        };
        out.push_str(&format!(
            "  slice {}: Q {}, mu(q) = {}*q + {}, beta {}, support {}\n",
            i + 1,
            q,
            s.mu.a,
            s.mu.b,
            s.beta,
            s.support
        ));
    }
    let qs: Vec<String> = p.zones.iter().map(|z| exp_str(&z.q)).collect();
    let nus: Vec<String> = p.zones.iter().map(|z| exp_str(&z.nu)).collect();
    let kinds: Vec<String> = p.zones.iter().map(|z| z.kind.to_string()).collect();
    out.push_str(&format!("  zone orders: ({})\n", qs.join(", ")));
    out.push_str(&format!("  zone depths: ({})\n", nus.join(", ")));
    out.push_str(&format!("  zone kinds:  ({})\n", kinds.join(", ")));
}

pub fn report_text(st: &SigmaTau, report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("scene: {}\n", report.scene));
    out.push_str(&format!("kind: {}\n", report.kind));
    pizza_text(&mut out, "T", &st.pizza_t);
    pizza_text(&mut out, "T'", &st.pizza_tp);
    out.push_str(&format!("orders attained on T: {}\n", report.q_range_t));
    out.push_str(&format!("orders attained on T': {}\n", report.q_range_tp));
    let sigma: Vec<String> = st
        .sigma
        .iter()
        .map(|(i, ip)| format!("{i}->{ip}"))
        .collect();
    out.push_str(&format!("sigma: ({})\n", sigma.join(", ")));
    let tau: Vec<String> = st
        .tau
        .iter()
        .map(|p| format!("{}->{} {}", p.l, p.lp, p.sign))
        .collect();
    out.push_str(&format!("tau: ({})\n", tau.join(", ")));
    out.push_str(&format!(
        "elementary: T {}, T' {}\n",
        if report.elementary_t { "yes" } else { "no" },
        if report.elementary_tp { "yes" } else { "no" }
    ));
    out.push_str(&format!(
        "pizzas equivalent: {}\n",
        if report.pizzas_equivalent { "yes" } else { "no" }
    ));
    out.push_str(&format!(
        "graph representable: {}\n",
        report.representability
    ));
    out
}

pub fn report_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serialization")
}

/// Compare two στ-pizzas: equivalence verdict with the first difference.
pub fn compare_text(a: &SigmaTau, b: &SigmaTau) -> String {
    if let Some(reason) = first_difference(a, b) {
        format!("not equivalent: {reason}\n")
    } else {
        "equivalent\n".into()
    }
}

pub fn first_difference(a: &SigmaTau, b: &SigmaTau) -> Option<String> {
    for (label, pa, pb) in [
        ("T", &a.pizza_t, &b.pizza_t),
        ("T'", &a.pizza_tp, &b.pizza_tp),
    ] {
        if pa.slices.len() != pb.slices.len() {
            return Some(format!(
                "pizza on {label} has {} slices vs {}",
                pa.slices.len(),
                pb.slices.len()
            ));
        }
        for (i, (x, y)) in pa.slices.iter().zip(pb.slices.iter()).enumerate() {
            let same = x.beta == y.beta
                && x.q_prev == y.q_prev
                && x.q_next == y.q_next
                && x.mu.same_law(&y.mu)
                && x.support == y.support;
            if !same {
                return Some(format!("pizza on {label} differs at slice {}", i + 1));
            }
        }
    }
    if a.sigma != b.sigma {
        let at = a
            .sigma
            .iter()
            .zip(b.sigma.iter())
            .position(|(x, y)| x != y)
            .map(|i| i + 1)
            .unwrap_or(a.sigma.len().min(b.sigma.len()) + 1);
        return Some(format!("sigma differs at index {at}"));
    }
    if a.tau != b.tau {
        let at = a
            .tau
            .iter()
            .zip(b.tau.iter())
            .position(|(x, y)| x != y)
            .map(|i| i + 1)
            .unwrap_or(a.tau.len().min(b.tau.len()) + 1);
        return Some(format!("tau differs at index {at}"));
    }
    None
}
