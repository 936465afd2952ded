//! The στ-invariant of a pair: maximum/minimum zone classification, the
//! characteristic permutation σ of maximum zones, the signed characteristic
//! correspondence τ of non-transversal slices, and the combinatorial
//! equivalence decision.
//!
//! σ and τ are computed by projecting zone and slice representatives with
//! the nearest-arc kernel and locating the image in the partner pizza; the
//! signs are then recomputed from the combinatorial data alone and the two
//! derivations are required to agree on every geometric scene.

use std::fmt;

use thiserror::Error;

use crate::arcspace::{tord, ArcError};
use crate::exacts::{Exp, ExponentField};
use crate::germmodel::{
    distance_order, eval_arc, nearest_arc, ArcLoc, ModelError, TriangleModel,
};
use crate::pizza::{build_minimal_pizza, locate, Location, PizzaData, PizzaError, ZoneKind};

pub use crate::pizza::transversal;

#[derive(Debug, Error)]
pub enum SigmaTauError {
    #[error(transparent)]
    Pizza(#[from] PizzaError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Arc(ArcError),
    #[error("the boundary tangency chains (tord-tord) do not hold")]
    TordTordViolated,
    #[error("ambiguous maximum-zone correspondence: {0}")]
    AmbiguousSigma(String),
    #[error("maximum-zone correspondence violated: {0}")]
    SigmaViolation(String),
    #[error("slice correspondence violated: {0}")]
    TauViolation(String),
    #[error("ambiguous slice correspondence: {0}")]
    AmbiguousTau(String),
    #[error("sign rules do not determine a sign: {0}")]
    Undetermined(String),
    #[error("combinatorial signs disagree with geometric signs: {0}")]
    SignDeterminism(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TauSign {
    Plus,
    Minus,
}

impl fmt::Display for TauSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauSign::Plus => write!(f, "+"),
            TauSign::Minus => write!(f, "-"),
        }
    }
}

/// One entry of τ: non-transversal slice `l` of the first pizza corresponds
/// to slice `lp` of the second, with an orientation sign. Indices are
/// 1-based in orientation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedPair {
    pub l: usize,
    pub lp: usize,
    pub sign: TauSign,
}

/// The στ-pizza: the pair of minimal pizzas, σ on maximum zones, and the
/// signed correspondence τ on non-transversal slices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaTau<F> {
    pub pizza_t: PizzaData<F>,
    pub pizza_tp: PizzaData<F>,
    /// 1-based pairs (i, i′) over the maximum-zone lists.
    pub sigma: Vec<(usize, usize)>,
    pub tau: Vec<SignedPair>,
}

/// Assign maximum/minimum kinds to the zones of a minimal pizza.
///
/// Interior zones are maximal when their order dominates both neighbours;
/// boundary zones require the order to exceed β as well.
pub fn classify_zones<F: ExponentField>(mut p: PizzaData<F>, beta: &Exp<F>) -> PizzaData<F> {
    let qs = p.zone_orders();
    let last = qs.len() - 1;
    for (i, z) in p.zones.iter_mut().enumerate() {
        let q = &qs[i];
        let kind = if i == 0 || i == last {
            let neighbour = if i == 0 { &qs[1] } else { &qs[last - 1] };
            if beta < q && q >= neighbour {
                ZoneKind::Maximum
            } else if q <= neighbour {
                ZoneKind::Minimum
            } else {
                ZoneKind::Neither
            }
        } else {
            let (l, r) = (&qs[i - 1], &qs[i + 1]);
            if q >= l && q >= r {
                ZoneKind::Maximum
            } else if q <= l && q <= r {
                ZoneKind::Minimum
            } else {
                ZoneKind::Neither
            }
        };
        z.kind = kind;
    }
    p
}

/// The boundary condition: at each pair of corresponding boundary arcs, the
/// tangency order to the partner triangle is attained at the partner's
/// boundary arc, in both directions.
pub fn check_tord_tord<F: ExponentField>(
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
) -> Result<bool, SigmaTauError> {
    let chain = |g: &crate::arcspace::Arc<F>,
                 gp: &crate::arcspace::Arc<F>|
     -> Result<bool, SigmaTauError> {
        let a = distance_order(g, tp)?;
        let b = tord(g, gp).map_err(SigmaTauError::Arc)?;
        let c = distance_order(gp, t)?;
        Ok(a == b && b == c)
    };
    Ok(chain(t.boundary_first(), tp.boundary_first())?
        && chain(t.boundary_last(), tp.boundary_last())?)
}

/// A pair of arcs is regular when the tangency order between them attains
/// the tangency order of each to the other triangle.
pub fn regular_pair<F: ExponentField>(
    g: &ArcLoc<F>,
    gp: &ArcLoc<F>,
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
) -> Result<bool, SigmaTauError> {
    let a = eval_arc(t, g)?;
    let b = eval_arc(tp, gp)?;
    let to_tp = distance_order(&a, tp)?;
    let between = tord(&a, &b).map_err(SigmaTauError::Arc)?;
    let to_t = distance_order(&b, t)?;
    Ok(to_tp == between && between == to_t)
}

fn zone_rep<'a, F: ExponentField>(
    p: &'a PizzaData<F>,
    i: usize,
) -> Result<&'a ArcLoc<F>, SigmaTauError> {
    p.zones[i]
        .rep
        .as_ref()
        .ok_or_else(|| SigmaTauError::SigmaViolation("zone without representative".into()))
}

/// Project a location of `t` into `tp` by the nearest-arc kernel.
fn project<F: ExponentField>(
    loc: &ArcLoc<F>,
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
) -> Result<ArcLoc<F>, SigmaTauError> {
    let arc = eval_arc(t, loc)?;
    Ok(nearest_arc(&arc, tp)?)
}

/// The characteristic permutation σ: for each maximum zone of the first
/// pizza, project its representative and locate the containing zone of the
/// partner pizza. It must be a maximum zone with the same order, reached at
/// tangency order q̄; the result must be a bijection fixing maximal boundary
/// zones.
pub fn compute_sigma<F: ExponentField>(
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
    pt: &PizzaData<F>,
    ptp: &PizzaData<F>,
) -> Result<Vec<(usize, usize)>, SigmaTauError> {
    let max_t = pt.maximum_zones();
    let max_tp = ptp.maximum_zones();
    if max_t.len() != max_tp.len() {
        return Err(SigmaTauError::SigmaViolation(format!(
            "maximum zone counts differ: {} vs {}",
            max_t.len(),
            max_tp.len()
        )));
    }
    let mut sigma: Vec<(usize, usize)> = Vec::new();
    for (rank, &zi) in max_t.iter().enumerate() {
        let rep = zone_rep(pt, zi)?;
        let qbar = pt.zones[zi].q.clone();
        let proj = project(rep, t, tp)?;
        let rep_arc = eval_arc(t, rep)?;
        let proj_arc = eval_arc(tp, &proj)?;
        let contact = tord(&rep_arc, &proj_arc).map_err(SigmaTauError::Arc)?;
        if contact != qbar {
            return Err(SigmaTauError::SigmaViolation(format!(
                "maximum zone {} projects at tangency {} instead of {}",
                zi, contact, qbar
            )));
        }
        let target = match locate(ptp, tp, t, &proj) {
            Ok(Location::Zone(k)) => k,
            Ok(Location::Slice(k)) => {
                return Err(SigmaTauError::SigmaViolation(format!(
                    "projection of maximum zone {} lands inside slice {}",
                    zi, k
                )))
            }
            Err(PizzaError::Ambiguous(m)) => return Err(SigmaTauError::AmbiguousSigma(m)),
            Err(e) => return Err(e.into()),
        };
        if ptp.zones[target].kind != ZoneKind::Maximum {
            return Err(SigmaTauError::SigmaViolation(format!(
                "projection of maximum zone {} lands in a non-maximum zone",
                zi
            )));
        }
        if ptp.zones[target].q != qbar {
            return Err(SigmaTauError::SigmaViolation(
                "corresponding maximum zones have different orders".into(),
            ));
        }
        let rank_p = max_tp
            .iter()
            .position(|&k| k == target)
            .expect("target is a maximum zone");
        sigma.push((rank + 1, rank_p + 1));
    }
    // Bijectivity.
    let mut seen = vec![false; sigma.len()];
    for &(_, ip) in &sigma {
        if seen[ip - 1] {
            return Err(SigmaTauError::AmbiguousSigma(
                "two maximum zones project into the same target".into(),
            ));
        }
        seen[ip - 1] = true;
    }
    // Boundary-fixing rules.
    let p_t = pt.zones.len() - 1;
    let p_tp = ptp.zones.len() - 1;
    if max_t.first() == Some(&0) {
        if max_tp.first() != Some(&0) || sigma[0] != (1, 1) {
            return Err(SigmaTauError::SigmaViolation(
                "first boundary maximum zone is not fixed".into(),
            ));
        }
    }
    if max_t.last() == Some(&p_t) {
        let m = sigma.len();
        if max_tp.last() != Some(&p_tp) || sigma[m - 1] != (m, m) {
            return Err(SigmaTauError::SigmaViolation(
                "last boundary maximum zone is not fixed".into(),
            ));
        }
    }
    Ok(sigma)
}

/// Does the tangency order between two pizza zones attain the order of the
/// distance on them? Witnessed by the representative pair, or by the
/// nearest-arc projection of either representative landing in the other
/// zone (projections always realize the tangency to the whole triangle).
fn zones_in_contact<F: ExponentField>(
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
    pt: &PizzaData<F>,
    ptp: &PizzaData<F>,
    x: usize,
    y: usize,
) -> Result<bool, SigmaTauError> {
    let qbar = &pt.zones[x].q;
    if &ptp.zones[y].q != qbar {
        return Ok(false);
    }
    let rep_x = zone_rep(pt, x)?;
    let rep_y = zone_rep(ptp, y)?;
    let arc_x = eval_arc(t, rep_x)?;
    let arc_y = eval_arc(tp, rep_y)?;
    if &tord(&arc_x, &arc_y).map_err(SigmaTauError::Arc)? == qbar {
        return Ok(true);
    }
    let proj_x = nearest_arc(&arc_x, tp)?;
    if let Ok(true) = crate::pizza::zone_contains(ptp, tp, t, y, &proj_x) {
        return Ok(true);
    }
    let proj_y = nearest_arc(&arc_y, t)?;
    if let Ok(true) = crate::pizza::zone_contains(pt, t, tp, x, &proj_y) {
        return Ok(true);
    }
    Ok(false)
}

/// The signed characteristic correspondence τ on non-transversal slices.
///
/// A pair of slices corresponds when their Q intervals and width laws agree
/// and their end zones satisfy one of the two tangency chains: in order
/// (positive) or reversed (negative). The chains are decided by exact
/// zone-contact witnesses.
pub fn compute_tau<F: ExponentField>(
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
    pt: &PizzaData<F>,
    ptp: &PizzaData<F>,
) -> Result<Vec<SignedPair>, SigmaTauError> {
    let nt = pt.non_transversal_slices();
    let ntp = ptp.non_transversal_slices();
    if nt.len() != ntp.len() {
        return Err(SigmaTauError::TauViolation(format!(
            "non-transversal slice counts differ: {} vs {}",
            nt.len(),
            ntp.len()
        )));
    }
    let mut tau = Vec::new();
    for &i in &nt {
        let s = &pt.slices[i];
        let mut candidates: Vec<SignedPair> = Vec::new();
        for &ip in &ntp {
            let sp = &ptp.slices[ip];
            if s.q_interval() != sp.q_interval() || !s.mu.same_law(&sp.mu) {
                continue;
            }
            let plus = zones_in_contact(t, tp, pt, ptp, i, ip)?
                && zones_in_contact(t, tp, pt, ptp, i + 1, ip + 1)?;
            let minus = zones_in_contact(t, tp, pt, ptp, i, ip + 1)?
                && zones_in_contact(t, tp, pt, ptp, i + 1, ip)?;
            match (plus, minus) {
                (true, false) => candidates.push(SignedPair {
                    l: i + 1,
                    lp: ip + 1,
                    sign: TauSign::Plus,
                }),
                (false, true) => candidates.push(SignedPair {
                    l: i + 1,
                    lp: ip + 1,
                    sign: TauSign::Minus,
                }),
                (true, true) => {
                    return Err(SigmaTauError::AmbiguousTau(format!(
                        "slices {} and {} satisfy both orientation chains",
                        i, ip
                    )))
                }
                (false, false) => {}
            }
        }
        match candidates.len() {
            1 => tau.push(candidates.pop().unwrap()),
            0 => {
                return Err(SigmaTauError::TauViolation(format!(
                    "no matching slice with the required tangency chains for slice {}",
                    i
                )))
            }
            _ => {
                return Err(SigmaTauError::AmbiguousTau(format!(
                    "slice {} matches several partner slices",
                    i
                )))
            }
        }
    }
    // Bijectivity on the non-transversal sets.
    let mut seen = std::collections::BTreeSet::new();
    for pair in &tau {
        if !seen.insert(pair.lp) {
            return Err(SigmaTauError::AmbiguousTau(
                "two slices correspond to the same partner slice".into(),
            ));
        }
    }
    Ok(tau)
}

/// Recover the τ signs from the combinatorial data alone.
///
/// Non-point Q: the sign is positive exactly when the oriented end orders
/// match. Point Q with a maximum end zone: the sign follows σ on that zone.
/// Point Q with two minimum end zones: the sign follows σ on the nearest
/// flanking maximum zones.
pub fn recompute_signs<F: ExponentField>(
    pt: &PizzaData<F>,
    ptp: &PizzaData<F>,
    sigma: &[(usize, usize)],
    tau_unsigned: &[(usize, usize)],
) -> Result<Vec<SignedPair>, SigmaTauError> {
    let max_t = pt.maximum_zones();
    let max_tp = ptp.maximum_zones();
    let sigma_of = |zone_idx: usize| -> Option<usize> {
        let rank = max_t.iter().position(|&z| z == zone_idx)?;
        let (_, ip) = sigma.iter().find(|(i, _)| *i == rank + 1)?;
        Some(max_tp[*ip - 1])
    };
    let mut out = Vec::new();
    for &(l, lp) in tau_unsigned {
        let i = l - 1;
        let ip = lp - 1;
        let s = &pt.slices[i];
        let sp = &ptp.slices[ip];
        let sign = if !s.is_point() {
            if s.q_prev == sp.q_prev && s.q_next == sp.q_next {
                TauSign::Plus
            } else if s.q_prev == sp.q_next && s.q_next == sp.q_prev {
                TauSign::Minus
            } else {
                return Err(SigmaTauError::Undetermined(format!(
                    "slice pair ({l},{lp}): oriented orders match neither way"
                )));
            }
        } else {
            let kinds = (pt.zones[i].kind, pt.zones[i + 1].kind);
            let max_end = match kinds {
                (ZoneKind::Maximum, _) => Some(i),
                (_, ZoneKind::Maximum) => Some(i + 1),
                _ => None,
            };
            if let Some(z) = max_end {
                let target = sigma_of(z).ok_or_else(|| {
                    SigmaTauError::Undetermined(format!(
                        "slice pair ({l},{lp}): sigma does not cover end zone {z}"
                    ))
                })?;
                let at_prev = z == i;
                if (at_prev && target == ip) || (!at_prev && target == ip + 1) {
                    TauSign::Plus
                } else if (at_prev && target == ip + 1) || (!at_prev && target == ip) {
                    TauSign::Minus
                } else {
                    return Err(SigmaTauError::Undetermined(format!(
                        "slice pair ({l},{lp}): sigma image {target} is not an end zone"
                    )));
                }
            } else if kinds.0 == ZoneKind::Minimum && kinds.1 == ZoneKind::Minimum {
                let left_flank = max_t.iter().rev().find(|&&z| z < i).copied();
                let right_flank = max_t.iter().find(|&&z| z > i + 1).copied();
                let (lf, rf) = match (left_flank, right_flank) {
                    (Some(a), Some(b)) => (a, b),
                    _ => {
                        return Err(SigmaTauError::Undetermined(format!(
                            "slice pair ({l},{lp}): no flanking maximum zones"
                        )))
                    }
                };
                let lf_p = ptp
                    .maximum_zones()
                    .iter()
                    .rev()
                    .find(|&&z| z < ip)
                    .copied();
                let rf_p = ptp.maximum_zones().iter().find(|&&z| z > ip + 1).copied();
                let (lfp, rfp) = match (lf_p, rf_p) {
                    (Some(a), Some(b)) => (a, b),
                    _ => {
                        return Err(SigmaTauError::Undetermined(format!(
                            "slice pair ({l},{lp}): partner has no flanking maximum zones"
                        )))
                    }
                };
                let tl = sigma_of(lf);
                let tr = sigma_of(rf);
                match (tl, tr) {
                    (Some(a), Some(b)) if a == lfp && b == rfp => TauSign::Plus,
                    (Some(a), Some(b)) if a == rfp && b == lfp => TauSign::Minus,
                    _ => {
                        return Err(SigmaTauError::Undetermined(format!(
                            "slice pair ({l},{lp}): flanking maxima do not correspond"
                        )))
                    }
                }
            } else {
                return Err(SigmaTauError::Undetermined(format!(
                    "slice pair ({l},{lp}): end zones are neither maximum nor minimum"
                )));
            }
        };
        out.push(SignedPair { l, lp, sign });
    }
    Ok(out)
}

/// Assemble the στ-pizza of a geometric pair: both minimal pizzas with
/// classified zones, σ, and the signed τ, cross-checking the combinatorial
/// signs against the geometric ones.
pub fn sigma_tau_pizza<F: ExponentField>(
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
) -> Result<SigmaTau<F>, SigmaTauError> {
    if !check_tord_tord(t, tp)? {
        return Err(SigmaTauError::TordTordViolated);
    }
    let pt = classify_zones(build_minimal_pizza(t, tp)?, t.beta());
    let ptp = classify_zones(build_minimal_pizza(tp, t)?, tp.beta());
    let sigma = compute_sigma(t, tp, &pt, &ptp)?;
    let tau = compute_tau(t, tp, &pt, &ptp)?;
    let unsigned: Vec<(usize, usize)> = tau.iter().map(|p| (p.l, p.lp)).collect();
    let derived = recompute_signs(&pt, &ptp, &sigma, &unsigned)?;
    if derived != tau {
        return Err(SigmaTauError::SignDeterminism(format!(
            "geometric {:?} vs combinatorial {:?}",
            tau, derived
        )));
    }
    Ok(SigmaTau {
        pizza_t: pt,
        pizza_tp: ptp,
        sigma,
        tau,
    })
}

/// Combinatorial equivalence of στ-pizzas.
pub fn st_equivalent<F: ExponentField>(a: &SigmaTau<F>, b: &SigmaTau<F>) -> bool {
    crate::pizza::pizza_equivalent(&a.pizza_t, &b.pizza_t)
        && crate::pizza::pizza_equivalent(&a.pizza_tp, &b.pizza_tp)
        && a.sigma == b.sigma
        && a.tau == b.tau
}

/// Verdict on whether the pair is outer bi-Lipschitz equivalent to the union
/// of T and the graph of its distance function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representability {
    Yes(String),
    No(String),
    Unknown,
}

impl fmt::Display for Representability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representability::Yes(reason) => write!(f, "yes ({reason})"),
            Representability::No(reason) => write!(f, "no ({reason})"),
            Representability::Unknown => write!(f, "unknown"),
        }
    }
}

/// Decide graph representability where possible.
///
/// Sufficient: the boundary chains hold and T is elementary with respect to
/// the distance. Necessary: the boundary chains, an order-preserving σ, and
/// all-positive τ signs (a link-order-preserving nearest-point pairing
/// forces both). Anything not certified either way is Unknown.
pub fn graph_representable<F: ExponentField>(
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
) -> Result<Representability, SigmaTauError> {
    if !check_tord_tord(t, tp)? {
        return Ok(Representability::No(
            "boundary tangency chains fail".into(),
        ));
    }
    let st = sigma_tau_pizza(t, tp)?;
    if st.sigma.windows(2).any(|w| w[0].1 > w[1].1) {
        return Ok(Representability::No(
            "characteristic permutation is not order-preserving".into(),
        ));
    }
    if st.tau.iter().any(|p| p.sign == TauSign::Minus) {
        return Ok(Representability::No(
            "a non-transversal pair is negatively oriented".into(),
        ));
    }
    if crate::pizza::is_elementary(&st.pizza_t) {
        return Ok(Representability::Yes(
            "elementary with matching boundary chains".into(),
        ));
    }
    Ok(Representability::Unknown)
}
