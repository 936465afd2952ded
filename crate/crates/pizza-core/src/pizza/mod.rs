//! Minimal pizzas of the distance function on a pair of ruled triangles.
//!
//! The order of dist(·, T′) along the link of T is piecewise constant with
//! finitely many stations where it rises. Between consecutive breakpoints the
//! width of an arc is an affine function of its order; a minimal pizza is the
//! coarsest such decomposition. [`build_minimal_pizza`] computes it by
//! over-segmenting (every candidate station becomes a zone seed) and then
//! greedily merging adjacent slices whenever their union carries a single
//! affine width law and stays elementary.

pub(crate) mod features;
mod profile;

use std::fmt;

use thiserror::Error;

use crate::arcspace::{tord, ArcError};
use crate::exacts::{AffineFn, ExactError, Exp, ExpInterval, ExponentField, GPoly};
use crate::germmodel::{distance_order, eval_arc, ArcLoc, ModelError, TriangleModel};

pub use profile::ProfileParams;
use profile::{Law, Profiler, SliceSeed, ZoneSeed};

#[derive(Debug, Error)]
pub enum PizzaError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Arc(ArcError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    /// The probe-driven profile could not be resolved (budget or structure).
    #[error("profile resolution failed: {0}")]
    ProfileResolution(String),
    /// A cancellation locus with an irrational position. Unreachable for
    /// ruled chains (the loci are double roots of nonnegative quadratics,
    /// hence rational); kept so callers can treat rejection uniformly.
    #[error("irrational breakpoint in the ruling variable")]
    IrrationalBreakpoint,
    #[error("ambiguous location in the pizza: {0}")]
    Ambiguous(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Which end of a slice supports the maximal width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportSide {
    Prev,
    Next,
    None,
}

impl fmt::Display for SupportSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportSide::Prev => write!(f, "prev"),
            SupportSide::Next => write!(f, "next"),
            SupportSide::None => write!(f, "none"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZoneKind {
    Maximum,
    Minimum,
    Neither,
}

impl fmt::Display for ZoneKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZoneKind::Maximum => write!(f, "max"),
            ZoneKind::Minimum => write!(f, "min"),
            ZoneKind::Neither => write!(f, "neither"),
        }
    }
}

/// One slice of a pizza: exponent β, the orders at its two ends, the affine
/// width law on the spanned interval, and the supporting side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PizzaSlice<F> {
    pub beta: Exp<F>,
    pub q_prev: Exp<F>,
    pub q_next: Exp<F>,
    pub mu: AffineFn<F>,
    pub support: SupportSide,
}

impl<F: ExponentField> PizzaSlice<F> {
    pub fn q_interval(&self) -> ExpInterval<F> {
        ExpInterval::spanning(&self.q_prev, &self.q_next)
    }

    pub fn is_point(&self) -> bool {
        self.q_prev == self.q_next
    }

    pub fn mu_at(&self, q: &Exp<F>) -> Exp<F> {
        self.mu
            .eval_unchecked(q)
            .expect("width laws never have negative slope")
    }
}

/// A pizza zone: order of the distance on it, its depth, max/min kind, and a
/// representative location (geometric pizzas only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZoneRecord<F> {
    pub q: Exp<F>,
    pub nu: Exp<F>,
    pub kind: ZoneKind,
    pub rep: Option<ArcLoc<F>>,
}

/// An oriented minimal pizza: p slices and p+1 zones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PizzaData<F> {
    pub slices: Vec<PizzaSlice<F>>,
    pub zones: Vec<ZoneRecord<F>>,
}

impl<F: ExponentField> PizzaData<F> {
    /// Exponent of the underlying triangle: the minimum slice exponent.
    pub fn beta(&self) -> Exp<F> {
        self.slices
            .iter()
            .map(|s| s.beta.clone())
            .min()
            .expect("a pizza has at least one slice")
    }

    pub fn zone_orders(&self) -> Vec<Exp<F>> {
        self.zones.iter().map(|z| z.q.clone()).collect()
    }

    /// Indices of maximum zones, in orientation order.
    pub fn maximum_zones(&self) -> Vec<usize> {
        self.zones
            .iter()
            .enumerate()
            .filter(|(_, z)| z.kind == ZoneKind::Maximum)
            .map(|(i, _)| i)
            .collect()
    }

    /// Indices of non-transversal slices, in orientation order.
    pub fn non_transversal_slices(&self) -> Vec<usize> {
        self.slices
            .iter()
            .enumerate()
            .filter(|(_, s)| !transversal(s))
            .map(|(i, _)| i)
            .collect()
    }
}

/// A breakpoint of the order profile: a representative link position with
/// the order and width of the distance there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Breakpoint<F> {
    pub patch: usize,
    pub ruling: GPoly<F>,
    pub order: Exp<F>,
    pub width: Exp<F>,
}

/// The order profile of dist(·, T′) along the link of T: its breakpoints in
/// orientation order (generic stretches between them carry constant order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderProfile<F> {
    pub breakpoints: Vec<Breakpoint<F>>,
}

// --- construction ------------------------------------------------------------

/// Minimal pizza of f = dist(·, T′) on T, with canonical probe choices.
pub fn build_minimal_pizza<F: ExponentField>(
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
) -> Result<PizzaData<F>, PizzaError> {
    build_minimal_pizza_with(t, tp, ProfileParams::default())
}

/// Minimal pizza with explicit probe parameters. The result must not depend
/// on the parameters; alternate probes exercise representative independence.
pub fn build_minimal_pizza_with<F: ExponentField>(
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
    params: ProfileParams,
) -> Result<PizzaData<F>, PizzaError> {
    let profiler = Profiler::new(t, tp, params);
    let (zones, slices) = profiler.run()?;
    build_from_seeds(t, zones, slices, false)
}

fn build_from_seeds<F: ExponentField>(
    t: &TriangleModel<F>,
    mut zones: Vec<ZoneSeed<F>>,
    mut slices: Vec<SliceSeed<F>>,
    reverse_sweep: bool,
) -> Result<PizzaData<F>, PizzaError> {
    if std::env::var("PIZZA_DEBUG").is_ok() {
        eprintln!("--- raw profile ---");
        for (i, z) in zones.iter().enumerate() {
            eprintln!("zone {i}: q={} rep=({}, {:?})", z.q, z.rep.patch, z.rep.ruling.terms());
            if i < slices.len() {
                let s = &slices[i];
                eprintln!("  slice: ({} -> {}) law={:?} beta={}", s.q_prev, s.q_next, s.law, s.beta);
            }
        }
    }
    merge_until_minimal(t, &mut zones, &mut slices, reverse_sweep)?;
    finalize(t, zones, slices)
}

/// The order profile of dist(·, T′) along the link of T.
pub fn order_profile<F: ExponentField>(
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
) -> Result<OrderProfile<F>, PizzaError> {
    let p = build_minimal_pizza(t, tp)?;
    Ok(profile_of(&p))
}

/// Breakpoint view of a geometric pizza.
pub fn profile_of<F: ExponentField>(p: &PizzaData<F>) -> OrderProfile<F> {
    let breakpoints = p
        .zones
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let rep = z.rep.as_ref().expect("geometric pizza has representatives");
            Breakpoint {
                patch: rep.patch,
                ruling: rep.ruling.clone(),
                order: z.q.clone(),
                width: zone_width(p, i),
            }
        })
        .collect();
    OrderProfile { breakpoints }
}

/// Width of arcs in zone i: the minimum of the adjacent slice laws at the
/// zone order (single-sided at the boundary).
fn zone_width<F: ExponentField>(p: &PizzaData<F>, i: usize) -> Exp<F> {
    let q = &p.zones[i].q;
    let left = (i > 0).then(|| p.slices[i - 1].mu_at(q));
    let right = (i < p.slices.len()).then(|| p.slices[i].mu_at(q));
    match (left, right) {
        (Some(a), Some(b)) => {
            if a < b {
                a
            } else {
                b
            }
        }
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => Exp::Infinite,
    }
}

fn law_value_at<F: ExponentField>(law: &Law<F>, q: &Exp<F>) -> Exp<F> {
    match law {
        Law::Point { width } => Exp::Finite(width.clone()),
        Law::Ramp { shift } => q.add_f(shift),
    }
}

fn merge_until_minimal<F: ExponentField>(
    t: &TriangleModel<F>,
    zones: &mut Vec<ZoneSeed<F>>,
    slices: &mut Vec<SliceSeed<F>>,
    reverse_sweep: bool,
) -> Result<(), PizzaError> {
    loop {
        let mut changed = false;
        let order: Vec<usize> = if reverse_sweep {
            (0..slices.len().saturating_sub(1)).rev().collect()
        } else {
            (0..slices.len().saturating_sub(1)).collect()
        };
        for i in order {
            if i + 1 >= slices.len() {
                continue;
            }
            if let Some(merged) = try_merge(t, &slices[i], &slices[i + 1], &zones[i], &zones[i + 2])?
            {
                slices[i] = merged;
                slices.remove(i + 1);
                zones.remove(i + 1);
                changed = true;
                break;
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Two adjacent slices merge when the union is elementary (the three zone
/// orders are weakly monotone) and a single affine width law covers the
/// concatenated interval.
fn try_merge<F: ExponentField>(
    t: &TriangleModel<F>,
    s1: &SliceSeed<F>,
    s2: &SliceSeed<F>,
    zone_a: &ZoneSeed<F>,
    zone_c: &ZoneSeed<F>,
) -> Result<Option<SliceSeed<F>>, PizzaError> {
    let qa = &s1.q_prev;
    let qb = &s1.q_next;
    let qc = &s2.q_next;
    debug_assert!(qb == &s2.q_prev);
    let monotone = (qa <= qb && qb <= qc) || (qa >= qb && qb >= qc);
    if !monotone {
        return Ok(None);
    }
    let merged = match (&s1.law, &s2.law) {
        (Law::Point { .. }, Law::Point { .. }) => {
            let a1 = t.eval_ruling(zone_a.rep.patch, &zone_a.rep.ruling);
            let a2 = t.eval_ruling(zone_c.rep.patch, &zone_c.rep.ruling);
            let w = tord(&a1, &a2).map_err(PizzaError::Arc)?;
            let w = w
                .finite_ref()
                .ok_or_else(|| PizzaError::Internal("coinciding zone representatives".into()))?
                .clone();
            Some(SliceSeed {
                q_prev: qa.clone(),
                q_next: qc.clone(),
                law: Law::Point { width: w.clone() },
                beta: Exp::Finite(w),
            })
        }
        // A constant-order part merges into a ramp when the ramp's width law
        // at the junction does not exceed the constant part's width: in the
        // union, the wider part's arcs inherit the horn's width, so the
        // single affine law extends. A wider law would jump at the junction.
        (Law::Point { width }, Law::Ramp { shift }) => {
            if law_value_at(&s2.law, qb) <= Exp::Finite(width.clone()) {
                Some(SliceSeed {
                    q_prev: qa.clone(),
                    q_next: qc.clone(),
                    law: Law::Ramp {
                        shift: shift.clone(),
                    },
                    beta: min_exp(&s1.beta, &s2.beta),
                })
            } else {
                None
            }
        }
        (Law::Ramp { shift }, Law::Point { width }) => {
            if law_value_at(&s1.law, qb) <= Exp::Finite(width.clone()) {
                Some(SliceSeed {
                    q_prev: qa.clone(),
                    q_next: qc.clone(),
                    law: Law::Ramp {
                        shift: shift.clone(),
                    },
                    beta: min_exp(&s1.beta, &s2.beta),
                })
            } else {
                None
            }
        }
        (Law::Ramp { shift: a }, Law::Ramp { shift: b }) => {
            if a == b {
                Some(SliceSeed {
                    q_prev: qa.clone(),
                    q_next: qc.clone(),
                    law: Law::Ramp { shift: a.clone() },
                    beta: min_exp(&s1.beta, &s2.beta),
                })
            } else {
                None
            }
        }
    };
    Ok(merged)
}

fn min_exp<F: ExponentField>(a: &Exp<F>, b: &Exp<F>) -> Exp<F> {
    if a < b {
        a.clone()
    } else {
        b.clone()
    }
}

fn finalize<F: ExponentField>(
    t: &TriangleModel<F>,
    zones: Vec<ZoneSeed<F>>,
    slices: Vec<SliceSeed<F>>,
) -> Result<PizzaData<F>, PizzaError> {
    let _ = t;
    for (i, s) in slices.iter().enumerate() {
        if zones[i].q != s.q_prev || zones[i + 1].q != s.q_next {
            return Err(PizzaError::Internal(
                "slice orders do not chain with zone orders".into(),
            ));
        }
    }
    let out_slices: Vec<PizzaSlice<F>> = slices
        .iter()
        .map(|s| {
            let domain = ExpInterval::spanning(&s.q_prev, &s.q_next);
            let (mu, support) = match &s.law {
                Law::Point { width } => (
                    AffineFn::constant(width.clone(), domain),
                    SupportSide::None,
                ),
                Law::Ramp { shift } => {
                    let mu = AffineFn::new(F::one(), shift.clone(), domain)
                        .expect("unit slope is valid on any interval");
                    let support = if s.q_prev < s.q_next {
                        SupportSide::Next
                    } else {
                        SupportSide::Prev
                    };
                    (mu, support)
                }
            };
            PizzaSlice {
                beta: s.beta.clone(),
                q_prev: s.q_prev.clone(),
                q_next: s.q_next.clone(),
                mu,
                support,
            }
        })
        .collect();

    let last = zones.len() - 1;
    let out_zones: Vec<ZoneRecord<F>> = zones
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let nu = if i == 0 || i == last {
                // Boundary pizza zones are the boundary arcs: singular zones.
                Exp::Infinite
            } else if let Some(ov) = &z.nu_override {
                ov.clone()
            } else {
                let l = out_slices[i - 1].mu_at(&z.q);
                let r = out_slices[i].mu_at(&z.q);
                depth(Some(&l), Some(&r))
            };
            ZoneRecord {
                q: z.q.clone(),
                nu,
                kind: ZoneKind::Neither,
                rep: Some(z.rep.clone()),
            }
        })
        .collect();

    Ok(PizzaData {
        slices: out_slices,
        zones: out_zones,
    })
}

// --- operations ---------------------------------------------------------------

/// Depth at a zone boundary from the widths on its two sides: their common
/// value when equal, else the maximum; boundary arcs take their single side.
pub fn depth<F: ExponentField>(mu_left: Option<&Exp<F>>, mu_right: Option<&Exp<F>>) -> Exp<F> {
    match (mu_left, mu_right) {
        (Some(a), Some(b)) => {
            if a == b {
                a.clone()
            } else if a > b {
                a.clone()
            } else {
                b.clone()
            }
        }
        (Some(a), None) | (None, Some(a)) => a.clone(),
        (None, None) => Exp::Infinite,
    }
}

/// The set of orders attained along the link: a point or a closed interval.
pub fn q_range<F: ExponentField>(profile: &OrderProfile<F>) -> ExpInterval<F> {
    let lo = profile
        .breakpoints
        .iter()
        .map(|b| b.order.clone())
        .min()
        .expect("profile has breakpoints");
    let hi = profile
        .breakpoints
        .iter()
        .map(|b| b.order.clone())
        .max()
        .unwrap();
    ExpInterval::new(lo, hi)
}

/// Width μ_T(γ, f) of the arc at `loc` with respect to f = dist(·, T′).
pub fn width<F: ExponentField>(
    loc: &ArcLoc<F>,
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
) -> Result<Exp<F>, PizzaError> {
    let p = build_minimal_pizza(t, tp)?;
    width_in_pizza(&p, t, tp, loc)
}

pub fn width_in_pizza<F: ExponentField>(
    p: &PizzaData<F>,
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
    loc: &ArcLoc<F>,
) -> Result<Exp<F>, PizzaError> {
    match locate(p, t, tp, loc)? {
        Location::Zone(i) => Ok(zone_width(p, i)),
        Location::Slice(i) => {
            let arc = eval_arc(t, loc)?;
            let o = distance_order(&arc, tp)?;
            Ok(p.slices[i].mu_at(&o))
        }
    }
}

/// True iff every level set of the order along the link is connected, i.e.
/// the zone-order sequence is weakly monotone.
pub fn is_elementary<F: ExponentField>(p: &PizzaData<F>) -> bool {
    let qs = p.zone_orders();
    qs.windows(2).all(|w| w[0] <= w[1]) || qs.windows(2).all(|w| w[0] >= w[1])
}

/// A slice is transversal when its width law is the identity on Q.
pub fn transversal<F: ExponentField>(s: &PizzaSlice<F>) -> bool {
    if s.is_point() {
        s.mu_at(&s.q_prev) == s.q_prev
    } else {
        s.mu.is_identity()
    }
}

/// Combinatorial equivalence of minimal pizzas: slot by slot in orientation
/// order, equal exponents, equal oriented order pairs, identical width laws,
/// same supporting side.
pub fn pizza_equivalent<F: ExponentField>(a: &PizzaData<F>, b: &PizzaData<F>) -> bool {
    a.slices.len() == b.slices.len()
        && a.slices.iter().zip(b.slices.iter()).all(|(x, y)| {
            x.beta == y.beta
                && x.q_prev == y.q_prev
                && x.q_next == y.q_next
                && x.mu.same_law(&y.mu)
                && x.support == y.support
        })
}

/// Width-axiom diagnostics; empty on success.
#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    pub issues: Vec<String>,
}

impl Diagnostics {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            write!(f, "ok")
        } else {
            for issue in &self.issues {
                writeln!(f, "{issue}")?;
            }
            Ok(())
        }
    }
}

/// Verify the width axioms on every slice: β ≤ μ(q) ≤ max(q, β), the width at
/// a generic arc is β, the support marks the μ-maximal end, and slice data
/// chains consistently with the zones.
pub fn check_width_axioms<F: ExponentField>(p: &PizzaData<F>) -> Diagnostics {
    let mut d = Diagnostics::default();
    if p.zones.len() != p.slices.len() + 1 {
        d.issues
            .push("zone count must be slice count plus one".into());
        return d;
    }
    for (i, s) in p.slices.iter().enumerate() {
        if p.zones[i].q != s.q_prev || p.zones[i + 1].q != s.q_next {
            d.issues
                .push(format!("slice {i}: orders do not chain with zones"));
        }
        let domain = s.q_interval();
        if s.mu.domain != domain {
            d.issues
                .push(format!("slice {i}: width law domain differs from Q"));
        }
        // Check β ≤ μ(q) ≤ max(q, β) at the ends and at the kink q = β.
        let mut checkpoints = vec![s.q_prev.clone(), s.q_next.clone()];
        if domain.contains(&s.beta) {
            checkpoints.push(s.beta.clone());
        }
        for q in &checkpoints {
            let v = s.mu_at(q);
            if v < s.beta {
                d.issues
                    .push(format!("slice {i}: width below beta at q = {q}"));
            }
            let cap = if q > &s.beta { q.clone() } else { s.beta.clone() };
            if v > cap {
                d.issues
                    .push(format!("slice {i}: width above max(q, beta) at q = {q}"));
            }
        }
        let v_prev = s.mu_at(&s.q_prev);
        let v_next = s.mu_at(&s.q_next);
        let v_min = if v_prev < v_next { &v_prev } else { &v_next };
        if v_min != &s.beta {
            d.issues.push(format!(
                "slice {i}: generic width {v_min} differs from beta {}",
                s.beta
            ));
        }
        if s.is_point() {
            if s.support != SupportSide::None {
                d.issues
                    .push(format!("slice {i}: point slice must have no support side"));
            }
        } else {
            match (&s.support, v_prev.cmp(&v_next)) {
                (SupportSide::Prev, std::cmp::Ordering::Greater) => {}
                (SupportSide::Next, std::cmp::Ordering::Less) => {}
                _ => d.issues.push(format!(
                    "slice {i}: support does not mark the width-maximal end"
                )),
            }
        }
    }
    for (i, z) in p.zones.iter().enumerate() {
        let left = (i > 0).then(|| p.slices[i - 1].mu_at(&z.q));
        let right = (i < p.slices.len()).then(|| p.slices[i].mu_at(&z.q));
        for v in [left, right].into_iter().flatten() {
            if z.nu < v {
                d.issues
                    .push(format!("zone {i}: depth {} below side width {v}", z.nu));
            }
        }
    }
    d
}

// --- locating arcs in a pizza ---------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Zone(usize),
    Slice(usize),
}

/// Membership of an arc in a pizza zone: matching order, and tangency to the
/// representative at least the zone depth (exact coincidence for singular
/// zones).
pub fn zone_contains<F: ExponentField>(
    p: &PizzaData<F>,
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
    zone: usize,
    loc: &ArcLoc<F>,
) -> Result<bool, PizzaError> {
    let arc = eval_arc(t, loc)?;
    let o = distance_order(&arc, tp)?;
    zone_contains_arc(p, t, zone, &arc, &o, loc)
}

fn zone_contains_arc<F: ExponentField>(
    p: &PizzaData<F>,
    t: &TriangleModel<F>,
    zone: usize,
    arc: &crate::arcspace::Arc<F>,
    order: &Exp<F>,
    loc: &ArcLoc<F>,
) -> Result<bool, PizzaError> {
    let z = &p.zones[zone];
    if &z.q != order {
        return Ok(false);
    }
    let rep = z
        .rep
        .as_ref()
        .ok_or_else(|| PizzaError::Internal("zone membership needs representatives".into()))?;
    let rep_arc = t.eval_ruling(rep.patch, &rep.ruling);
    let contact = tord(arc, &rep_arc).map_err(PizzaError::Arc)?;
    let deep_enough = if z.nu.is_infinite() {
        contact.is_infinite()
    } else {
        contact >= z.nu
    };
    if !deep_enough {
        return Ok(false);
    }
    // Zones are link-ordered: membership also requires the position to fall
    // strictly between the neighbouring representatives (two distant zones
    // can share order and depth while the triangle pinches below the depth
    // between them).
    let pos = normalize_loc(t, loc);
    if zone > 0 {
        let lower = normalize_loc(t, p.zones[zone - 1].rep.as_ref().unwrap());
        if link_cmp(&pos, &lower) != std::cmp::Ordering::Greater {
            return Ok(false);
        }
    }
    if zone + 1 < p.zones.len() {
        let upper = normalize_loc(t, p.zones[zone + 1].rep.as_ref().unwrap());
        if link_cmp(&pos, &upper) != std::cmp::Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Locate an arc in the pizza: the zone containing it, or the slice between
/// the two zones its link position falls in.
pub fn locate<F: ExponentField>(
    p: &PizzaData<F>,
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
    loc: &ArcLoc<F>,
) -> Result<Location, PizzaError> {
    let arc = eval_arc(t, loc)?;
    let o = distance_order(&arc, tp)?;
    let mut hit = None;
    for i in 0..p.zones.len() {
        if zone_contains_arc(p, t, i, &arc, &o, loc)? {
            if hit.is_some() {
                return Err(PizzaError::Ambiguous(
                    "arc matches more than one pizza zone".into(),
                ));
            }
            hit = Some(i);
        }
    }
    if let Some(i) = hit {
        return Ok(Location::Zone(i));
    }
    // Between which representatives does the position fall?
    let pos = normalize_loc(t, loc);
    for i in 0..p.zones.len() {
        let rep = p.zones[i].rep.as_ref().unwrap();
        let rep_pos = normalize_loc(t, rep);
        match link_cmp(&pos, &rep_pos) {
            std::cmp::Ordering::Less => {
                if i == 0 {
                    return Err(PizzaError::Internal(
                        "arc positioned before the first boundary zone".into(),
                    ));
                }
                return Ok(Location::Slice(i - 1));
            }
            std::cmp::Ordering::Equal => {
                return Err(PizzaError::Internal(
                    "arc at a zone representative position but not in the zone".into(),
                ));
            }
            std::cmp::Ordering::Greater => continue,
        }
    }
    Err(PizzaError::Internal(
        "arc positioned after the last boundary zone".into(),
    ))
}

/// Canonical link coordinates: a right-anchor ruling becomes the next patch's
/// left anchor where possible.
fn normalize_loc<F: ExponentField>(t: &TriangleModel<F>, loc: &ArcLoc<F>) -> (usize, GPoly<F>) {
    let one = GPoly::constant(F::one());
    if loc.ruling == one && loc.patch + 1 < t.num_patches() {
        (loc.patch + 1, GPoly::zero())
    } else {
        (loc.patch, loc.ruling.clone())
    }
}

fn link_cmp<F: ExponentField>(a: &(usize, GPoly<F>), b: &(usize, GPoly<F>)) -> std::cmp::Ordering {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Equal => {
            let diff = b.1.sub(&a.1);
            match diff.sign_at_zero() {
                crate::exacts::Sign::Positive => std::cmp::Ordering::Less,
                crate::exacts::Sign::Zero => std::cmp::Ordering::Equal,
                crate::exacts::Sign::Negative => std::cmp::Ordering::Greater,
            }
        }
        other => other,
    }
}

/// A verified interior representative of slice i: an arc strictly between
/// the two bounding zones.
///
/// Point slices take link midpoints between the zone representatives; ramp
/// slices perturb off the supporting zone to the tangency level of the
/// middle order. Every candidate is verified with [`locate`].
pub fn slice_representative<F: ExponentField>(
    p: &PizzaData<F>,
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
    i: usize,
) -> Result<ArcLoc<F>, PizzaError> {
    let s = &p.slices[i];
    let za = p.zones[i]
        .rep
        .as_ref()
        .ok_or_else(|| PizzaError::Internal("slice representative needs zone reps".into()))?;
    let zb = p.zones[i + 1].rep.as_ref().unwrap();
    let mut candidates: Vec<ArcLoc<F>> = Vec::new();
    let half = F::half(&F::one());
    if s.is_point() {
        let (pa, wa) = normalize_loc(t, za);
        let (pb, wb) = normalize_loc(t, zb);
        if pa == pb {
            let avg = wa.add(&wb).scale(&half);
            candidates.push(ArcLoc::new(pa, avg));
            let third = wa
                .scale(&F::from_int(2))
                .add(&wb)
                .scale(&(F::one() / F::from_int(3)));
            candidates.push(ArcLoc::new(pa, third));
        } else {
            let ca = wa.constant_term();
            candidates.push(ArcLoc::at_constant(
                pa,
                F::half(&(ca + F::one())),
            ));
            for j in (pa + 1)..=pb {
                candidates.push(ArcLoc::at_constant(j, F::zero()));
            }
            let cb = wb.constant_term();
            if cb.is_positive() {
                candidates.push(ArcLoc::at_constant(pb, F::half(&cb)));
            }
        }
    } else {
        let (sup_idx, other_idx) = match s.support {
            SupportSide::Next => (i + 1, i),
            SupportSide::Prev => (i, i + 1),
            SupportSide::None => {
                return Err(PizzaError::Internal(
                    "non-point slice without a support side".into(),
                ))
            }
        };
        let sup = p.zones[sup_idx].rep.as_ref().unwrap();
        let other = p.zones[other_idx].rep.as_ref().unwrap();
        let q_mid = match (
            s.q_prev.finite_ref(),
            s.q_next.finite_ref(),
        ) {
            (Some(a), Some(b)) => F::half(&(a.clone() + b.clone())),
            (Some(a), None) | (None, Some(a)) => a.clone() + F::one(),
            (None, None) => {
                return Err(PizzaError::Internal("slice with two infinite ends".into()))
            }
        };
        let mu_mid = s
            .mu_at(&Exp::Finite(q_mid))
            .finite_ref()
            .cloned()
            .ok_or_else(|| PizzaError::Internal("infinite width at a finite order".into()))?;
        let beta_patch = t
            .patch_exponent(sup.patch)
            .expect_finite("patch exponent")
            .clone();
        let level = mu_mid - beta_patch;
        if !level.is_positive() {
            return Err(PizzaError::Internal(
                "interior tangency level is not positive".into(),
            ));
        }
        let dir_positive = match link_cmp(&normalize_loc(t, sup), &normalize_loc(t, other)) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => {
                return Err(PizzaError::Internal("coinciding zone positions".into()))
            }
        };
        let below: GPoly<F> = GPoly::from_terms(
            sup.ruling
                .terms()
                .iter()
                .filter(|(e, _)| e < &level)
                .cloned()
                .collect(),
        );
        for mag in [F::one(), F::two(), half.clone()] {
            let u = if dir_positive { mag } else { -mag };
            candidates.push(ArcLoc::new(
                sup.patch,
                below.add(&GPoly::monomial(level.clone(), u)),
            ));
        }
    }
    for c in candidates {
        if crate::germmodel::validate_arc_loc(t, &c).is_err() {
            continue;
        }
        if let Ok(Location::Slice(k)) = locate(p, t, tp, &c) {
            if k == i {
                return Ok(c);
            }
        }
    }
    Err(PizzaError::Internal(format!(
        "no verified interior representative for slice {i}"
    )))
}
