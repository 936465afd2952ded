//! Scene files: UTF-8 JSON with exact rationals as strings.
//!
//! A scene is either geometric (two anchor lists in a common ambient
//! dimension) or an abstract chart carrying the combinatorial στ-data
//! directly. Rationals are written `"p"` or `"p/q"`; the infinite exponent is
//! `"inf"`. Decimal literals are rejected to keep every value exact.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use pizza_core::arcspace::validate_arc;
use pizza_core::exacts::{AffineFn, Exp, ExpInterval};
use pizza_core::germmodel::validate_triangle;
use pizza_core::pizza::{check_width_axioms, SupportSide, ZoneKind};
use pizza_core::sigmatau::{check_tord_tord, classify_zones, recompute_signs, TauSign};
use pizza_core::{
    Arc, GPoly, PizzaData, PizzaSlice, Rat, SigmaTau, SignedPair, TriangleModel, ZoneRecord,
};

#[derive(Debug, Error)]
pub enum SceneError {
    /// Malformed JSON or schema (position carried in the message).
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid rational literal {0:?} (decimals are rejected)")]
    InvalidRational(String),
    #[error("validation failed: {0}")]
    Validation(String),
}

impl SceneError {
    pub fn exit_code(&self) -> i32 {
        match self {
            SceneError::Parse(_) | SceneError::InvalidRational(_) => 2,
            SceneError::Validation(_) => 1,
        }
    }
}

// --- document types (wire format) --------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneDoc {
    pub kind: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometric: Option<GeometricDoc>,
    #[serde(
        default,
        rename = "abstract",
        skip_serializing_if = "Option::is_none"
    )]
    pub chart: Option<ChartDoc>,
}

/// An anchor is a list of per-coordinate polynomials; each polynomial is a
/// list of [exponent, coefficient] pairs. The first coordinate (identically
/// t) may be omitted.
pub type PolyDoc = Vec<(String, String)>;
pub type AnchorDoc = Vec<PolyDoc>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometricDoc {
    pub ambient_dim: usize,
    pub t_anchors: Vec<AnchorDoc>,
    pub tp_anchors: Vec<AnchorDoc>,
    #[serde(default = "aligned")]
    pub boundary_correspondence: String,
}

fn aligned() -> String {
    "aligned".into()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    pub pizza_t: PizzaDoc,
    pub pizza_tp: PizzaDoc,
    pub sigma: Vec<(usize, usize)>,
    pub tau: Vec<TauDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PizzaDoc {
    pub slices: Vec<SliceDoc>,
    pub zones: Vec<ZoneDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceDoc {
    pub beta: String,
    pub q_prev: String,
    pub q_next: String,
    pub mu_a: String,
    pub mu_b: String,
    pub support: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZoneDoc {
    pub q: String,
    pub nu: String,
    pub kind: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauDoc {
    pub l: usize,
    pub lp: usize,
    pub sign: String,
}

// --- exact literals -----------------------------------------------------------

pub fn parse_rat(s: &str) -> Result<Rat, SceneError> {
    let body = s.strip_prefix('-').unwrap_or(s);
    let ok = match body.split_once('/') {
        None => !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit()),
        Some((n, d)) => {
            !n.is_empty()
                && !d.is_empty()
                && n.bytes().all(|b| b.is_ascii_digit())
                && d.bytes().all(|b| b.is_ascii_digit())
                && d.bytes().any(|b| b != b'0')
        }
    };
    if !ok {
        return Err(SceneError::InvalidRational(s.to_string()));
    }
    s.parse::<Rat>()
        .map_err(|_| SceneError::InvalidRational(s.to_string()))
}

pub fn parse_exp(s: &str) -> Result<Exp<Rat>, SceneError> {
    if s == "inf" {
        Ok(Exp::Infinite)
    } else {
        Ok(Exp::Finite(parse_rat(s)?))
    }
}

pub fn exp_str(e: &Exp<Rat>) -> String {
    e.to_string()
}

// --- validated scenes -----------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum SceneBody {
    Geometric {
        t: TriangleModel,
        tp: TriangleModel,
    },
    Abstract {
        st: SigmaTau,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub name: String,
    pub description: Option<String>,
    pub body: SceneBody,
}

fn poly_from_doc(doc: &PolyDoc) -> Result<GPoly, SceneError> {
    let mut terms = Vec::new();
    for (e, c) in doc {
        terms.push((parse_rat(e)?, parse_rat(c)?));
    }
    Ok(pizza_core::exacts::GPoly::from_terms(terms))
}

fn anchor_from_doc(doc: &AnchorDoc, dim: usize) -> Result<Arc, SceneError> {
    let mut coords: Vec<GPoly> = Vec::with_capacity(dim);
    if doc.len() == dim {
        for p in doc {
            coords.push(poly_from_doc(p)?);
        }
    } else if doc.len() + 1 == dim {
        coords.push(pizza_core::exacts::GPoly::t());
        for p in doc {
            coords.push(poly_from_doc(p)?);
        }
    } else {
        return Err(SceneError::Validation(format!(
            "anchor has {} coordinates for ambient dimension {}",
            doc.len(),
            dim
        )));
    }
    validate_arc(coords).map_err(|e| SceneError::Validation(e.to_string()))
}

fn support_from_str(s: &str) -> Result<SupportSide, SceneError> {
    match s {
        "prev" => Ok(SupportSide::Prev),
        "next" => Ok(SupportSide::Next),
        "none" => Ok(SupportSide::None),
        _ => Err(SceneError::Validation(format!("unknown support side {s:?}"))),
    }
}

fn kind_from_str(s: &str) -> Result<ZoneKind, SceneError> {
    match s {
        "max" => Ok(ZoneKind::Maximum),
        "min" => Ok(ZoneKind::Minimum),
        "neither" => Ok(ZoneKind::Neither),
        _ => Err(SceneError::Validation(format!("unknown zone kind {s:?}"))),
    }
}

fn pizza_from_doc(doc: &PizzaDoc) -> Result<PizzaData, SceneError> {
    if doc.zones.len() != doc.slices.len() + 1 {
        return Err(SceneError::Validation(
            "a pizza needs one more zone than slices".into(),
        ));
    }
    let mut slices = Vec::new();
    for s in &doc.slices {
        let q_prev = parse_exp(&s.q_prev)?;
        let q_next = parse_exp(&s.q_next)?;
        let domain = ExpInterval::spanning(&q_prev, &q_next);
        let mu = AffineFn::new(parse_rat(&s.mu_a)?, parse_rat(&s.mu_b)?, domain)
            .map_err(|e| SceneError::Validation(e.to_string()))?;
        slices.push(PizzaSlice {
            beta: parse_exp(&s.beta)?,
            q_prev,
            q_next,
            mu,
            support: support_from_str(&s.support)?,
        });
    }
    let mut zones = Vec::new();
    for z in &doc.zones {
        zones.push(ZoneRecord {
            q: parse_exp(&z.q)?,
            nu: parse_exp(&z.nu)?,
            kind: kind_from_str(&z.kind)?,
            rep: None,
        });
    }
    Ok(PizzaData { slices, zones })
}

fn pizza_to_doc(p: &PizzaData) -> PizzaDoc {
    PizzaDoc {
        slices: p
            .slices
            .iter()
            .map(|s| SliceDoc {
                beta: exp_str(&s.beta),
                q_prev: exp_str(&s.q_prev),
                q_next: exp_str(&s.q_next),
                mu_a: s.mu.a.to_string(),
                mu_b: s.mu.b.to_string(),
                support: s.support.to_string(),
            })
            .collect(),
        zones: p
            .zones
            .iter()
            .map(|z| ZoneDoc {
                q: exp_str(&z.q),
                nu: exp_str(&z.nu),
                kind: z.kind.to_string(),
            })
            .collect(),
    }
}

fn sign_from_str(s: &str) -> Result<TauSign, SceneError> {
    match s {
        "+" => Ok(TauSign::Plus),
        "-" => Ok(TauSign::Minus),
        _ => Err(SceneError::Validation(format!("unknown tau sign {s:?}"))),
    }
}

/// Serialize a στ-pizza in the abstract-chart format (representatives are
/// probe artifacts and are not part of the invariant).
pub fn sigma_tau_to_doc(st: &SigmaTau) -> ChartDoc {
    ChartDoc {
        pizza_t: pizza_to_doc(&st.pizza_t),
        pizza_tp: pizza_to_doc(&st.pizza_tp),
        sigma: st.sigma.clone(),
        tau: st
            .tau
            .iter()
            .map(|p| TauDoc {
                l: p.l,
                lp: p.lp,
                sign: p.sign.to_string(),
            })
            .collect(),
    }
}

/// Canonical JSON of a στ-pizza; byte-identical for equal invariants.
pub fn sigma_tau_json(st: &SigmaTau) -> String {
    serde_json::to_string_pretty(&sigma_tau_to_doc(st)).expect("chart serialization")
}

// --- chart validation -----------------------------------------------------------

/// Data-level mergeability of adjacent slices (minimality check for charts).
fn chart_mergeable(s1: &PizzaSlice, s2: &PizzaSlice) -> bool {
    let (qa, qb, qc) = (&s1.q_prev, &s1.q_next, &s2.q_next);
    let monotone = (qa <= qb && qb <= qc) || (qa >= qb && qb >= qc);
    if !monotone {
        return false;
    }
    match (s1.is_point(), s2.is_point()) {
        (true, true) => true,
        (true, false) => s2.mu_at(qb) <= s1.mu_at(qb),
        (false, true) => s1.mu_at(qb) <= s2.mu_at(qb),
        (false, false) => s1.mu.same_law(&s2.mu),
    }
}

fn validate_chart(doc: &ChartDoc) -> Result<SigmaTau, SceneError> {
    let pt = pizza_from_doc(&doc.pizza_t)?;
    let ptp = pizza_from_doc(&doc.pizza_tp)?;
    for (label, p) in [("T", &pt), ("T'", &ptp)] {
        let d = check_width_axioms(p);
        if !d.is_ok() {
            return Err(SceneError::Validation(format!(
                "width axioms fail on pizza {label}: {d}"
            )));
        }
        for w in p.slices.windows(2) {
            if chart_mergeable(&w[0], &w[1]) {
                return Err(SceneError::Validation(format!(
                    "pizza {label} is not minimal: adjacent slices merge"
                )));
            }
        }
        let classified = classify_zones(p.clone(), &p.beta());
        for (i, (a, b)) in p.zones.iter().zip(classified.zones.iter()).enumerate() {
            if a.kind != b.kind {
                return Err(SceneError::Validation(format!(
                    "pizza {label} zone {i} has kind {} but the orders give {}",
                    a.kind, b.kind
                )));
            }
        }
    }
    // σ: a bijection on maximum-zone ranks preserving the zone order.
    let max_t = pt.maximum_zones();
    let max_tp = ptp.maximum_zones();
    if max_t.len() != max_tp.len() {
        return Err(SceneError::Validation(
            "maximum zone counts differ between the pizzas".into(),
        ));
    }
    if doc.sigma.len() != max_t.len() {
        return Err(SceneError::Validation(
            "sigma must cover every maximum zone".into(),
        ));
    }
    let mut seen = vec![false; max_t.len()];
    for &(i, ip) in &doc.sigma {
        if i == 0 || ip == 0 || i > max_t.len() || ip > max_tp.len() {
            return Err(SceneError::Validation(format!(
                "sigma pair ({i},{ip}) out of range"
            )));
        }
        if seen[ip - 1] {
            return Err(SceneError::Validation("sigma is not a bijection".into()));
        }
        seen[ip - 1] = true;
        if pt.zones[max_t[i - 1]].q != ptp.zones[max_tp[ip - 1]].q {
            return Err(SceneError::Validation(format!(
                "sigma pair ({i},{ip}) does not preserve the zone order"
            )));
        }
    }
    // τ: a bijection on non-transversal slices with matching data and signs
    // that the combinatorial rules reproduce.
    let nt = pt.non_transversal_slices();
    let ntp = ptp.non_transversal_slices();
    if doc.tau.len() != nt.len() || nt.len() != ntp.len() {
        return Err(SceneError::Validation(
            "tau must cover every non-transversal slice".into(),
        ));
    }
    let mut tau = Vec::new();
    for t in &doc.tau {
        if !nt.contains(&(t.l - 1)) || !ntp.contains(&(t.lp - 1)) {
            return Err(SceneError::Validation(format!(
                "tau pair ({},{}) must join non-transversal slices",
                t.l, t.lp
            )));
        }
        let s = &pt.slices[t.l - 1];
        let sp = &ptp.slices[t.lp - 1];
        if s.q_interval() != sp.q_interval() || !s.mu.same_law(&sp.mu) {
            return Err(SceneError::Validation(format!(
                "tau pair ({},{}) joins slices with different Q or width law",
                t.l, t.lp
            )));
        }
        tau.push(SignedPair {
            l: t.l,
            lp: t.lp,
            sign: sign_from_str(&t.sign)?,
        });
    }
    let unsigned: Vec<(usize, usize)> = tau.iter().map(|p| (p.l, p.lp)).collect();
    let derived = recompute_signs(&pt, &ptp, &doc.sigma, &unsigned)
        .map_err(|e| SceneError::Validation(e.to_string()))?;
    if derived != tau {
        return Err(SceneError::Validation(
            "tau signs disagree with the signs determined by the pizzas and sigma".into(),
        ));
    }
    Ok(SigmaTau {
        pizza_t: pt,
        pizza_tp: ptp,
        sigma: doc.sigma.clone(),
        tau,
    })
}

// --- parse / serialize -----------------------------------------------------------

pub fn parse_scene(text: &str) -> Result<Scene, SceneError> {
    let doc: SceneDoc =
        serde_json::from_str(text).map_err(|e| SceneError::Parse(e.to_string()))?;
    scene_from_doc(&doc)
}

pub fn scene_from_doc(doc: &SceneDoc) -> Result<Scene, SceneError> {
    let body = match doc.kind.as_str() {
        "geometric" => {
            let g = doc.geometric.as_ref().ok_or_else(|| {
                SceneError::Validation("geometric scene without a geometric body".into())
            })?;
            if doc.chart.is_some() {
                return Err(SceneError::Validation(
                    "geometric scene must not carry an abstract chart".into(),
                ));
            }
            let t_anchors: Vec<Arc> = g
                .t_anchors
                .iter()
                .map(|a| anchor_from_doc(a, g.ambient_dim))
                .collect::<Result<_, _>>()?;
            let mut tp_anchors: Vec<Arc> = g
                .tp_anchors
                .iter()
                .map(|a| anchor_from_doc(a, g.ambient_dim))
                .collect::<Result<_, _>>()?;
            match g.boundary_correspondence.as_str() {
                "aligned" => {}
                "reversed" => tp_anchors.reverse(),
                other => {
                    return Err(SceneError::Validation(format!(
                        "unknown boundary correspondence {other:?}"
                    )))
                }
            }
            let t = validate_triangle(t_anchors)
                .map_err(|e| SceneError::Validation(format!("triangle T: {e}")))?;
            let tp = validate_triangle(tp_anchors)
                .map_err(|e| SceneError::Validation(format!("triangle T': {e}")))?;
            let chains = check_tord_tord(&t, &tp)
                .map_err(|e| SceneError::Validation(e.to_string()))?;
            if !chains {
                return Err(SceneError::Validation(
                    "the boundary tangency chains (tord-tord) do not hold".into(),
                ));
            }
            SceneBody::Geometric { t, tp }
        }
        "abstract" => {
            let c = doc.chart.as_ref().ok_or_else(|| {
                SceneError::Validation("abstract scene without a chart body".into())
            })?;
            if doc.geometric.is_some() {
                return Err(SceneError::Validation(
                    "abstract scene must not carry anchors".into(),
                ));
            }
            SceneBody::Abstract {
                st: validate_chart(c)?,
            }
        }
        other => {
            return Err(SceneError::Parse(format!("unknown scene kind {other:?}")));
        }
    };
    Ok(Scene {
        name: doc.name.clone(),
        description: doc.description.clone(),
        body,
    })
}

fn poly_to_doc(p: &GPoly) -> PolyDoc {
    p.terms()
        .iter()
        .map(|(e, c)| (e.to_string(), c.to_string()))
        .collect()
}

fn anchors_to_doc(t: &TriangleModel) -> Vec<AnchorDoc> {
    t.anchors()
        .iter()
        .map(|a| a.coords().iter().skip(1).map(poly_to_doc).collect())
        .collect()
}

pub fn scene_to_doc(scene: &Scene) -> SceneDoc {
    match &scene.body {
        SceneBody::Geometric { t, tp } => SceneDoc {
            kind: "geometric".into(),
            name: scene.name.clone(),
            description: scene.description.clone(),
            geometric: Some(GeometricDoc {
                ambient_dim: t.dim(),
                t_anchors: anchors_to_doc(t),
                tp_anchors: anchors_to_doc(tp),
                boundary_correspondence: "aligned".into(),
            }),
            chart: None,
        },
        SceneBody::Abstract { st } => SceneDoc {
            kind: "abstract".into(),
            name: scene.name.clone(),
            description: scene.description.clone(),
            geometric: None,
            chart: Some(sigma_tau_to_doc(st)),
        },
    }
}

pub fn serialize_scene(scene: &Scene) -> String {
    serde_json::to_string_pretty(&scene_to_doc(scene)).expect("scene serialization")
}
