//! Breakpoint discovery along the link of T for the distance to T′.
//!
//! The order of the distance along arc families approaching a feature center
//! is a monotone piecewise-affine function of the approach depth whose slopes
//! are 0 or 1 (every contribution is a capped slope-one tent in the tangency
//! level). The profiler therefore measures ramps with exact probe arcs:
//! candidate vertex depths seed the measurement, and any slope inconsistency
//! between consecutive probes is resolved by solving for the missing vertex,
//! which is exact precisely because slopes are restricted to {0, 1}.
//!
//! Output is a link-ordered alternating sequence of zone seeds (stations,
//! shells, plateau components) and slice seeds (ramp pieces); gaps between
//! adjacent zones are filled with point slices whose width is the tangency
//! order of the bounding representatives.

use std::cell::Cell;
use std::collections::BTreeMap;

use crate::exacts::{Exp, ExponentField, GPoly, RatFun, Sign};
use crate::germmodel::{distance_order, ArcLoc, TriangleModel};

use super::features::{patch_features, patch_pairings, Feature, Pairing};
use super::PizzaError;

/// Probe-choice parameters. The alternate mode picks different (equally
/// valid) representatives and probe coefficients everywhere; minimal pizzas
/// must be identical under both.
#[derive(Debug, Clone, Copy, Default)]
pub struct ProfileParams {
    pub alternate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Law<F> {
    /// Constant width (point Q).
    Point { width: F },
    /// μ(q) = q + shift (every geometric ramp has unit slope).
    Ramp { shift: F },
}

#[derive(Debug, Clone)]
pub(crate) struct SliceSeed<F> {
    pub q_prev: Exp<F>,
    pub q_next: Exp<F>,
    pub law: Law<F>,
    pub beta: Exp<F>,
}

#[derive(Debug, Clone)]
pub(crate) struct ZoneSeed<F> {
    pub q: Exp<F>,
    pub rep: ArcLoc<F>,
    /// Depth override for zones where the two-sided width rule does not
    /// apply (subtriangles where the distance vanishes identically).
    pub nu_override: Option<Exp<F>>,
}

#[derive(Debug, Clone)]
pub(crate) enum Item<F> {
    Zone(ZoneSeed<F>),
    Slice(SliceSeed<F>),
}

// --- ramp measurement -------------------------------------------------------

#[derive(Debug, Clone)]
struct RampPiece<F> {
    d_lo: F,
    d_hi: F,
    q_lo: Exp<F>,
    q_hi: Exp<F>,
}

impl<F: ExponentField> RampPiece<F> {
    fn is_flat(&self) -> bool {
        self.q_lo == self.q_hi
    }
}

#[derive(Debug, Clone)]
enum RampEnd<F> {
    /// Bounded measurement: pieces cover (level, upper].
    Bounded,
    /// Flat beyond `sat` with constant order `q`.
    Flat { q: Exp<F>, sat: F },
    /// Order keeps rising with unit slope (certified by an uncapped tent).
    Infinite,
}

#[derive(Debug)]
struct Measured<F> {
    pieces: Vec<RampPiece<F>>,
    end: RampEnd<F>,
    /// Probe rulings by depth, for zone representatives.
    rulings: BTreeMap<F, GPoly<F>>,
}

// --- sites -------------------------------------------------------------------

enum SiteKind<F> {
    /// Anchor k with features clustered at its two patch-side constants.
    Anchor {
        index: usize,
        left: Vec<Feature<F>>,
        right: Vec<Feature<F>>,
    },
    Interior {
        feats: Vec<Feature<F>>,
    },
}

struct Site<F> {
    patch: usize,
    c: F,
    kind: SiteKind<F>,
}

pub(crate) struct Profiler<'a, F: ExponentField> {
    pub t: &'a TriangleModel<F>,
    pub tp: &'a TriangleModel<F>,
    alt: bool,
    fuel: Cell<u64>,
    pairings: Vec<Vec<Pairing<F>>>,
}

impl<'a, F: ExponentField> Profiler<'a, F> {
    pub fn new(t: &'a TriangleModel<F>, tp: &'a TriangleModel<F>, params: ProfileParams) -> Self {
        let pairings = (0..t.num_patches())
            .map(|j| patch_pairings(t, tp, j))
            .collect();
        Profiler {
            t,
            tp,
            alt: params.alternate,
            fuel: Cell::new(400_000),
            pairings,
        }
    }

    fn spend(&self, n: u64) -> Result<(), PizzaError> {
        let left = self.fuel.get();
        if left < n {
            return Err(PizzaError::ProfileResolution(
                "probe budget exhausted while resolving the order profile".into(),
            ));
        }
        self.fuel.set(left - n);
        Ok(())
    }

    fn patch_beta(&self, patch: usize) -> F {
        self.t
            .patch_exponent(patch)
            .expect_finite("patch exponent")
            .clone()
    }

    fn probe(&self, patch: usize, ruling: &GPoly<F>) -> Result<Exp<F>, PizzaError> {
        self.spend(1)?;
        let arc = self.t.eval_ruling(patch, ruling);
        distance_order(&arc, self.tp).map_err(PizzaError::Model)
    }

    // --- probe construction --------------------------------------------------

    /// The partial expansion of `limit` strictly below depth δ, plus u·t^δ.
    fn ruling_at(&self, limit: &RatFun<F>, delta: &F, u: &F) -> GPoly<F> {
        let ex = limit.expand(delta);
        let at = ex.coeff_at(delta);
        let below = ex.sub(&GPoly::monomial(delta.clone(), at));
        below.add(&GPoly::monomial(delta.clone(), u.clone()))
    }

    /// Coefficients to avoid at depth δ: the feature centers' coefficients
    /// relative to the limit, and zero (staying on the limit).
    fn avoid_at(&self, limit: &RatFun<F>, feats: &[Feature<F>], delta: &F) -> Vec<F> {
        let mut avoid = vec![F::zero()];
        for f in feats {
            let c = f.center.sub(limit).coeff_at_depth(delta);
            avoid.push(c);
        }
        avoid
    }

    /// Deterministic probe coefficient on the requested side. Canonical mode
    /// walks the positive integers, alternate mode the positive half-integers,
    /// so the two modes never choose the same representative.
    fn pick_coeff(&self, avoid: &[F], positive: bool) -> F {
        let mut k = if self.alt {
            F::half(&F::one())
        } else {
            F::one()
        };
        loop {
            let candidate = if positive { k.clone() } else { -k.clone() };
            if !avoid.contains(&candidate) {
                return candidate;
            }
            k = k + F::one();
        }
    }

    /// A value strictly between lo and hi avoiding the given set.
    fn pick_between(&self, lo: &F, hi: &F, avoid: &[F]) -> F {
        let gap = hi.clone() - lo.clone();
        let mut denom = F::two();
        let mut numer = F::one();
        if self.alt {
            denom = F::from_int(3);
        }
        loop {
            let candidate = lo.clone() + gap.clone() * numer.clone() / denom.clone();
            if !avoid.contains(&candidate) {
                return candidate;
            }
            numer = numer + F::two();
            if numer >= denom {
                numer = F::one();
                denom = denom * F::two();
            }
        }
    }

    // --- ramp measurement ----------------------------------------------------

    /// Measure the order profile along arcs approaching `limit` on one side,
    /// for depths in (level, upper] (bounded) or until saturation.
    fn measure(
        &self,
        patch: usize,
        limit: &RatFun<F>,
        level: &F,
        upper: Option<&F>,
        positive: bool,
        feats: &[Feature<F>],
    ) -> Result<Measured<F>, PizzaError> {
        let mut candidates: Vec<F> = Vec::new();
        let limit_rf = limit.clone();
        for f in feats {
            self.pairings[patch][f.pairing].vertex_candidates(&limit_rf, &mut candidates);
        }
        candidates.retain(|d| d > level);
        if let Some(hi) = upper {
            candidates.retain(|d| d < hi);
        }
        candidates.sort();
        candidates.dedup();

        // Finite order bound certified by the cluster's own features; rising
        // past it requires an uncapped tent.
        let mut sup_finite: Option<Exp<F>> = None;
        let mut has_infinite_sup = false;
        for f in feats {
            let s = self.pairings[patch][f.pairing].sup_at(&limit_rf);
            if s.is_infinite() {
                has_infinite_sup = true;
            } else {
                sup_finite = Some(match sup_finite {
                    None => s,
                    Some(b) => {
                        if s > b {
                            s
                        } else {
                            b
                        }
                    }
                });
            }
        }

        let mut hi = match upper {
            Some(h) => h.clone(),
            None => {
                let mut h = level.clone() + F::two();
                if let Some(last) = candidates.last() {
                    let bumped = last.clone() + F::one();
                    if bumped > h {
                        h = bumped;
                    }
                }
                h
            }
        };

        let mut probes: BTreeMap<F, (GPoly<F>, Exp<F>)> = BTreeMap::new();
        let probe_at = |this: &Self,
                            probes: &mut BTreeMap<F, (GPoly<F>, Exp<F>)>,
                            delta: &F|
         -> Result<(), PizzaError> {
            if probes.contains_key(delta) {
                return Ok(());
            }
            let avoid = this.avoid_at(&limit_rf, feats, delta);
            let u = this.pick_coeff(&avoid, positive);
            let ruling = this.ruling_at(&limit_rf, delta, &u);
            let q = this.probe(patch, &ruling)?;
            probes.insert(delta.clone(), (ruling, q));
            Ok(())
        };

        // Seed probes: candidates plus quarter points of the range.
        let seed = |hi: &F| -> Vec<F> {
            let four = F::from_int(4);
            let gap = hi.clone() - level.clone();
            let mut pts: Vec<F> = (1..=4)
                .map(|k| level.clone() + gap.clone() * F::from_int(k) / four.clone())
                .collect();
            pts.extend(candidates.iter().cloned());
            pts
        };
        for d in seed(&hi) {
            probe_at(self, &mut probes, &d)?;
        }

        // Refine until consecutive probes are slope-consistent.
        let mut guard = 0u32;
        loop {
            guard += 1;
            if guard > 200 {
                return Err(PizzaError::ProfileResolution(
                    "ramp refinement did not converge".into(),
                ));
            }
            let keys: Vec<F> = probes.keys().cloned().collect();
            let mut inserts: Vec<F> = Vec::new();
            let mut infinite_seen = false;
            let mut finite_seen = false;
            for w in keys.windows(2) {
                let (d1, d2) = (&w[0], &w[1]);
                let q1 = probes[d1].1.clone();
                let q2 = probes[d2].1.clone();
                match (&q1, &q2) {
                    (Exp::Infinite, Exp::Infinite) => {
                        infinite_seen = true;
                    }
                    (Exp::Finite(a), Exp::Finite(b)) => {
                        finite_seen = true;
                        let dq = b.clone() - a.clone();
                        let dd = d2.clone() - d1.clone();
                        if dq.is_zero() || dq == dd {
                            continue;
                        }
                        if dq.is_negative() || dq > dd {
                            return Err(PizzaError::ProfileResolution(
                                "order profile is not monotone with unit slope".into(),
                            ));
                        }
                        // One or more vertices inside: both possible single-vertex
                        // positions, plus the midpoint as a fallback splitter.
                        inserts.push(d1.clone() + dq.clone());
                        inserts.push(d2.clone() - dq.clone());
                        inserts.push(F::half(&(d1.clone() + d2.clone())));
                    }
                    _ => {
                        // A finite and an infinite probe on the same side can
                        // only happen at the edge of a region where the
                        // distance vanishes; the edge is itself a feature
                        // center, so this indicates a missed station.
                        return Err(PizzaError::ProfileResolution(
                            "mixed finite/infinite probes in one ramp".into(),
                        ));
                    }
                }
            }
            if infinite_seen && finite_seen {
                return Err(PizzaError::ProfileResolution(
                    "mixed finite/infinite probes in one ramp".into(),
                ));
            }
            if inserts.is_empty() {
                // Consistent. In unbounded mode, check the tail.
                if upper.is_none() {
                    let keys: Vec<F> = probes.keys().cloned().collect();
                    let last = keys.last().unwrap().clone();
                    let prev = keys[keys.len() - 2].clone();
                    let q_last = probes[&last].1.clone();
                    let q_prev = probes[&prev].1.clone();
                    let rising = q_last != q_prev;
                    if rising && q_last.is_finite() {
                        if let (Some(bound), Exp::Finite(ql)) = (&sup_finite, &q_last) {
                            if let Exp::Finite(bv) = bound {
                                if ql < bv {
                                    // Structure pending below the certified bound:
                                    // extend the measured range and continue.
                                    let extend = bv.clone() - ql.clone() + F::one();
                                    hi = last.clone() + extend;
                                    probe_at(self, &mut probes, &hi)?;
                                    let near =
                                        F::half(&(last.clone() + hi.clone()));
                                    probe_at(self, &mut probes, &near)?;
                                    continue;
                                }
                            }
                        }
                        if !has_infinite_sup {
                            return Err(PizzaError::ProfileResolution(
                                "ramp rises past every certified bound".into(),
                            ));
                        }
                    }
                }
                break;
            }
            for d in inserts {
                if d > *level && (upper.is_none() || d <= hi) && !d.is_negative() {
                    probe_at(self, &mut probes, &d)?;
                }
            }
        }

        // Convert probes to maximal constant-slope pieces.
        let pts: Vec<(F, Exp<F>)> = probes
            .iter()
            .map(|(d, (_, q))| (d.clone(), q.clone()))
            .collect();
        let rulings: BTreeMap<F, GPoly<F>> = probes
            .iter()
            .map(|(d, (r, _))| (d.clone(), r.clone()))
            .collect();

        if pts.iter().all(|(_, q)| q.is_infinite()) {
            // Identically infinite side: the whole side lies where the
            // distance vanishes.
            return Ok(Measured {
                pieces: Vec::new(),
                end: RampEnd::Flat {
                    q: Exp::Infinite,
                    sat: level.clone(),
                },
                rulings,
            });
        }

        let mut pieces: Vec<RampPiece<F>> = Vec::new();
        for w in pts.windows(2) {
            let (d1, q1) = (&w[0].0, &w[0].1);
            let (d2, q2) = (&w[1].0, &w[1].1);
            let flat = q1 == q2;
            if let Some(last) = pieces.last_mut() {
                if last.is_flat() == flat && last.d_hi == *d1 {
                    last.d_hi = d2.clone();
                    last.q_hi = q2.clone();
                    continue;
                }
            }
            pieces.push(RampPiece {
                d_lo: d1.clone(),
                d_hi: d2.clone(),
                q_lo: q1.clone(),
                q_hi: q2.clone(),
            });
        }
        // Extrapolate the first piece down to `level` (open end).
        if let Some(first) = pieces.first_mut() {
            if first.is_flat() {
                first.d_lo = level.clone();
            } else {
                let drop = first.d_lo.clone() - level.clone();
                first.q_lo = first.q_lo.sub_f(&drop);
                first.d_lo = level.clone();
            }
        } else {
            // Single probe (cannot happen: seeds give ≥ 4), defensive.
            return Err(PizzaError::ProfileResolution("no ramp probes".into()));
        }

        let end = match upper {
            Some(_) => RampEnd::Bounded,
            None => {
                let last = pieces.last().unwrap();
                if last.is_flat() {
                    let q = last.q_lo.clone();
                    let sat = pieces
                        .iter()
                        .rev()
                        .find(|p| !p.is_flat())
                        .map(|p| p.d_hi.clone())
                        .unwrap_or_else(|| level.clone());
                    // Trailing flat belongs to the station core.
                    pieces.pop();
                    RampEnd::Flat { q, sat }
                } else {
                    // Certified unbounded rise.
                    let mut last = pieces.pop().unwrap();
                    last.q_hi = Exp::Infinite;
                    pieces.push(last);
                    RampEnd::Infinite
                }
            }
        };

        // In bounded mode a trailing flat is represented by the shell zone the
        // caller emits at the split depth.
        let mut pieces = pieces;
        if matches!(end, RampEnd::Bounded) {
            if let Some(last) = pieces.last() {
                if last.is_flat() {
                    pieces.pop();
                }
            }
        }

        Ok(Measured {
            pieces,
            end,
            rulings,
        })
    }

    /// Convert measured ramp pieces into link-ordered items.
    ///
    /// `positive` = the side with rulings above the limit. On the negative
    /// side increasing depth moves link-rightward (toward the limit); on the
    /// positive side it moves link-leftward, so the emission order flips and
    /// prev/next swap.
    fn ramp_items(&self, patch: usize, measured: &Measured<F>, positive: bool) -> Vec<Item<F>> {
        let beta = self.patch_beta(patch);
        let mut items: Vec<Item<F>> = Vec::new();
        for p in &measured.pieces {
            if p.is_flat() {
                let rep = measured
                    .rulings
                    .get(&p.d_hi)
                    .cloned()
                    .expect("flat piece endpoint was probed");
                items.push(Item::Zone(ZoneSeed {
                    q: p.q_lo.clone(),
                    rep: ArcLoc::new(patch, rep),
                    nu_override: None,
                }));
            } else {
                let q_lo_f = p
                    .q_lo
                    .finite_ref()
                    .expect("rising piece starts finite")
                    .clone();
                let shift = beta.clone() + p.d_lo.clone() - q_lo_f;
                let slice_beta = Exp::Finite(beta.clone() + p.d_lo.clone());
                let (q_prev, q_next) = if positive {
                    (p.q_hi.clone(), p.q_lo.clone())
                } else {
                    (p.q_lo.clone(), p.q_hi.clone())
                };
                items.push(Item::Slice(SliceSeed {
                    q_prev,
                    q_next,
                    law: Law::Ramp { shift },
                    beta: slice_beta,
                }));
            }
        }
        if positive {
            items.reverse();
        }
        items
    }

    // --- clusters --------------------------------------------------------------

    /// Analyze the family of arcs whose rulings agree with `prefix` beyond
    /// depth `level`, containing the given feature centers.
    fn cluster(
        &self,
        patch: usize,
        prefix: &GPoly<F>,
        level: &F,
        feats: Vec<Feature<F>>,
        emit_core: bool,
    ) -> Result<Vec<Item<F>>, PizzaError> {
        self.spend(1)?;
        let prefix_rf = RatFun::from_poly(prefix.clone());

        // Divergence depths of the centers from the prefix.
        let mut split: Option<F> = None;
        let mut distinct: Vec<&RatFun<F>> = Vec::new();
        for f in &feats {
            if !distinct.iter().any(|z| z.same_function(&f.center)) {
                distinct.push(&f.center);
            }
            if let Exp::Finite(d) = f.center.sub(&prefix_rf).ord() {
                debug_assert!(d > *level, "cluster invariant: divergence below level");
                split = Some(match split {
                    None => d,
                    Some(s) => {
                        if d < s {
                            d
                        } else {
                            s
                        }
                    }
                });
            }
        }

        if distinct.len() <= 1 || split.is_none() {
            let mut limit = distinct
                .first()
                .map(|z| (*z).clone())
                .unwrap_or(prefix_rf.clone());
            // A center that leaves [0, 1] cannot be followed by arcs of the
            // triangle; the structure around it is measured from the prefix.
            if !limit_followable(&limit) {
                limit = prefix_rf.clone();
            }
            return self.terminal(patch, prefix, &limit, level, &feats, emit_core);
        }
        let d = split.unwrap();

        // Branch groups at depth d by the centers' coefficient.
        let mut groups: BTreeMap<F, Vec<Feature<F>>> = BTreeMap::new();
        for f in feats.iter() {
            let u = f.center.sub(&prefix_rf).coeff_at_depth(&d);
            groups.entry(u).or_default().push(f.clone());
        }
        let group_coeffs: Vec<F> = groups.keys().cloned().collect();
        let valid: Vec<(F, Vec<Feature<F>>)> = groups
            .into_iter()
            .filter(|(u, _)| {
                let p = prefix.add(&GPoly::monomial(d.clone(), u.clone()));
                valid_ruling(&p)
            })
            .collect();
        if valid.is_empty() {
            return self.terminal(patch, prefix, &prefix_rf, level, &feats, emit_core);
        }

        let (allow_neg, allow_pos) = allowed_sides(prefix);
        let left_m = if allow_neg {
            Some(self.measure(patch, &prefix_rf, level, Some(&d), false, &feats)?)
        } else {
            None
        };
        let right_m = if allow_pos {
            Some(self.measure(patch, &prefix_rf, level, Some(&d), true, &feats)?)
        } else {
            None
        };

        // Recurse into branches, ordered by coefficient.
        let mut subs: Vec<(F, Vec<Item<F>>)> = Vec::new();
        for (u, fs) in valid {
            let newprefix = prefix.add(&GPoly::monomial(d.clone(), u.clone()));
            let ec = if u.is_zero() { emit_core } else { true };
            let items = self.cluster(patch, &newprefix, &d, fs, ec)?;
            subs.push((u, items));
        }

        // Shell zones at the split depth.
        let mut avoid = group_coeffs;
        avoid.push(F::zero());
        let shell = |u: F| -> Result<Item<F>, PizzaError> {
            let ruling = prefix.add(&GPoly::monomial(d.clone(), u));
            let q = self.probe(patch, &ruling)?;
            Ok(Item::Zone(ZoneSeed {
                q,
                rep: ArcLoc::new(patch, ruling),
                nu_override: None,
            }))
        };

        let u_min = subs.first().unwrap().0.clone();
        let u_max = subs.last().unwrap().0.clone();

        let mut items: Vec<Item<F>> = Vec::new();
        if let Some(m) = &left_m {
            items.extend(self.ramp_items(patch, m, false));
            // Close the ramp's deep end with the outer shell.
            let mut u = u_min.clone() - F::one();
            if self.alt {
                u = u - F::one();
            }
            while avoid.contains(&u) {
                u = u - F::one();
            }
            items.push(shell(u)?);
        }
        for (i, (_, sub_items)) in subs.iter().enumerate() {
            if i > 0 {
                let (u1, _) = &subs[i - 1];
                let (u2, _) = &subs[i];
                let mid = self.pick_between(u1, u2, &avoid);
                items.push(shell(mid)?);
            }
            items.extend(sub_items.iter().cloned());
        }
        if let Some(m) = &right_m {
            let mut u = u_max.clone() + F::one();
            if self.alt {
                u = u + F::one();
            }
            while avoid.contains(&u) {
                u = u + F::one();
            }
            items.push(shell(u)?);
            items.extend(self.ramp_items(patch, m, true));
        }
        Ok(items)
    }

    /// Terminal cluster: every remaining center is the same series `limit`
    /// (possibly the prefix itself). Measure both sides to saturation and
    /// emit the station core.
    fn terminal(
        &self,
        patch: usize,
        prefix: &GPoly<F>,
        limit: &RatFun<F>,
        level: &F,
        feats: &[Feature<F>],
        emit_core: bool,
    ) -> Result<Vec<Item<F>>, PizzaError> {
        let prefix_rf = RatFun::from_poly(prefix.clone());
        let limit_is_prefix = limit.same_function(&prefix_rf);

        // Side availability: near a boundary constant, arcs on the outward
        // side only exist below the limit's drift depth.
        let c0 = limit
            .series_constant()
            .expect("centers kept only with constants in [0,1]");
        let drift = limit.sub(&RatFun::from_poly(GPoly::constant(c0.clone()))).ord();
        let side_level = |outward: bool| -> Option<F> {
            // Returns the level from which this side can be measured.
            let boundary_low = c0.is_zero();
            let boundary_high = c0 == F::one();
            let at_boundary = boundary_low || boundary_high;
            if !at_boundary {
                return Some(level.clone());
            }
            // outward = negative side at the low boundary, positive at the high.
            if !outward {
                return Some(level.clone());
            }
            match &drift {
                Exp::Infinite => None, // the limit IS the boundary arc
                Exp::Finite(d0) => Some(if d0 > level { d0.clone() } else { level.clone() }),
            }
        };
        let (neg_level, pos_level) = if c0.is_zero() {
            (side_level(true), side_level(false))
        } else if c0 == F::one() {
            (side_level(false), side_level(true))
        } else {
            (Some(level.clone()), Some(level.clone()))
        };

        let left_m = match &neg_level {
            Some(lv) => Some(self.measure(patch, limit, lv, None, false, feats)?),
            None => None,
        };
        let right_m = match &pos_level {
            Some(lv) => Some(self.measure(patch, limit, lv, None, true, feats)?),
            None => None,
        };

        // Station order and saturation depth.
        let mut q_star: Option<Exp<F>> = None;
        let mut sat: F = level.clone();
        let mut unbounded = false;
        for m in [&left_m, &right_m].into_iter().flatten() {
            match &m.end {
                RampEnd::Flat { q, sat: s } => {
                    if let Some(prev) = &q_star {
                        if prev != q {
                            return Err(PizzaError::ProfileResolution(
                                "station order disagrees between sides".into(),
                            ));
                        }
                    }
                    q_star = Some(q.clone());
                    if *s > sat {
                        sat = s.clone();
                    }
                }
                RampEnd::Infinite => unbounded = true,
                RampEnd::Bounded => unreachable!("terminal ramps are unbounded"),
            }
        }
        let q_star = if unbounded {
            Exp::Infinite
        } else {
            match q_star {
                Some(q) => q,
                None => {
                    // No measurable side: the limit is a boundary arc.
                    self.probe(patch, &limit.expand(&(level.clone() + F::one())))?
                }
            }
        };

        // Representative: the exact center when the series terminates, else a
        // truncation beyond every measured feature.
        let rep_depth = sat.clone() + F::one();
        let rep_ruling = {
            let expanded = limit.expand(&rep_depth);
            expanded
        };
        if !unbounded {
            let check = self.probe(patch, &rep_ruling)?;
            if check != q_star {
                return Err(PizzaError::ProfileResolution(
                    "station representative does not attain the station order".into(),
                ));
            }
        }

        let mut items: Vec<Item<F>> = Vec::new();
        if let Some(m) = &left_m {
            items.extend(self.ramp_items(patch, m, false));
        }
        let suppress = !emit_core && limit_is_prefix;
        if !suppress {
            items.push(Item::Zone(ZoneSeed {
                q: q_star,
                rep: ArcLoc::new(patch, rep_ruling),
                nu_override: None,
            }));
        }
        if let Some(m) = &right_m {
            items.extend(self.ramp_items(patch, m, true));
        }
        Ok(items)
    }

    // --- sites and plateaus ------------------------------------------------------

    fn collect_sites(&self) -> Vec<Site<F>> {
        let m = self.t.num_patches();
        // Interior feature clusters per patch, keyed by constant term.
        let mut interior: Vec<BTreeMap<F, Vec<Feature<F>>>> = vec![BTreeMap::new(); m];
        let mut at_low: Vec<Vec<Feature<F>>> = vec![Vec::new(); m];
        let mut at_high: Vec<Vec<Feature<F>>> = vec![Vec::new(); m];
        let one = F::one();
        for j in 0..m {
            for f in patch_features(&self.pairings[j]) {
                let c0 = f.center.series_constant().expect("filtered");
                if c0.is_zero() {
                    at_low[j].push(f);
                } else if c0 == one {
                    at_high[j].push(f);
                } else {
                    interior[j].entry(c0).or_default().push(f);
                }
            }
        }

        let mut sites: Vec<Site<F>> = Vec::new();
        for k in 0..=m {
            let (patch, c) = if k < m {
                (k, F::zero())
            } else {
                (m - 1, F::one())
            };
            sites.push(Site {
                patch,
                c,
                kind: SiteKind::Anchor {
                    index: k,
                    left: if k > 0 {
                        std::mem::take(&mut at_high[k - 1])
                    } else {
                        Vec::new()
                    },
                    right: if k < m {
                        std::mem::take(&mut at_low[k])
                    } else {
                        Vec::new()
                    },
                },
            });
        }
        for (j, clusters) in interior.into_iter().enumerate() {
            for (c0, feats) in clusters {
                sites.push(Site {
                    patch: j,
                    c: c0,
                    kind: SiteKind::Interior { feats },
                });
            }
        }
        sites.sort_by(|a, b| a.patch.cmp(&b.patch).then(a.c.cmp(&b.c)));
        sites
    }

    fn anchor_loc(&self, k: usize) -> ArcLoc<F> {
        let m = self.t.num_patches();
        if k < m {
            ArcLoc::at_constant(k, F::zero())
        } else {
            ArcLoc::at_constant(m - 1, F::one())
        }
    }

    fn site_items(&self, site: &Site<F>) -> Result<Vec<Item<F>>, PizzaError> {
        match &site.kind {
            SiteKind::Interior { feats } => self.cluster(
                site.patch,
                &GPoly::constant(site.c.clone()),
                &F::zero(),
                feats.clone(),
                true,
            ),
            SiteKind::Anchor { index, left, right } => {
                let m = self.t.num_patches();
                let k = *index;
                let mut items: Vec<Item<F>> = Vec::new();
                if k > 0 {
                    items.extend(self.cluster(
                        k - 1,
                        &GPoly::constant(F::one()),
                        &F::zero(),
                        left.clone(),
                        false,
                    )?);
                }
                let rep = self.anchor_loc(k);
                let q = self.probe(rep.patch, &rep.ruling)?;
                items.push(Item::Zone(ZoneSeed {
                    q,
                    rep,
                    nu_override: None,
                }));
                if k < m {
                    items.extend(self.cluster(
                        k,
                        &GPoly::constant(F::zero()),
                        &F::zero(),
                        right.clone(),
                        false,
                    )?);
                }
                Ok(items)
            }
        }
    }

    /// Zones contributed by the constant-order stretch between two sites.
    fn plateau_items(&self, a: &Site<F>, b: &Site<F>) -> Result<Vec<Item<F>>, PizzaError> {
        // Patch pieces spanned by the open interval (a, b).
        let mut pieces: Vec<(usize, F, F)> = Vec::new();
        if a.patch == b.patch {
            if a.c < b.c {
                pieces.push((a.patch, a.c.clone(), b.c.clone()));
            }
        } else {
            if a.c < F::one() {
                pieces.push((a.patch, a.c.clone(), F::one()));
            }
            for j in (a.patch + 1)..b.patch {
                pieces.push((j, F::zero(), F::one()));
            }
            if b.c > F::zero() {
                pieces.push((b.patch, F::zero(), b.c.clone()));
            }
        }
        if pieces.is_empty() {
            return Ok(Vec::new());
        }

        // One probe per piece; a constant-order stretch must agree across.
        let mut orders: Vec<Exp<F>> = Vec::new();
        let mut reps: Vec<ArcLoc<F>> = Vec::new();
        for (j, lo, hi) in &pieces {
            let c = self.pick_between(lo, hi, &[]);
            let loc = ArcLoc::at_constant(*j, c);
            orders.push(self.probe(*j, &loc.ruling)?);
            reps.push(loc);
        }
        let q = orders[0].clone();
        if orders.iter().any(|o| o != &q) {
            return Err(PizzaError::ProfileResolution(
                "generic order is not constant between stations".into(),
            ));
        }

        // Subtriangle where the distance vanishes identically: one zone whose
        // depth is the exponent of the span.
        if q.is_infinite() {
            let span = pieces
                .iter()
                .map(|(j, _, _)| self.t.patch_exponent(*j).clone())
                .min()
                .unwrap();
            return Ok(vec![Item::Zone(ZoneSeed {
                q,
                rep: reps[0].clone(),
                nu_override: Some(span),
            })]);
        }

        // Depth of each piece: the two-sided width rule applied to the span
        // exponents toward the two bounding sites.
        let betas: Vec<F> = pieces.iter().map(|(j, _, _)| self.patch_beta(*j)).collect();
        let n = pieces.len();
        let mut depth: Vec<F> = Vec::with_capacity(n);
        for i in 0..n {
            let to_left = betas[..=i].iter().cloned().min().unwrap();
            let to_right = betas[i..].iter().cloned().min().unwrap();
            depth.push(if to_left == to_right {
                to_left
            } else if to_left > to_right {
                to_left
            } else {
                to_right
            });
        }

        // Local maximum components of the depth sequence become zones.
        let mut items: Vec<Item<F>> = Vec::new();
        let mut i = 0;
        while i < n {
            let mut j = i;
            while j + 1 < n && depth[j + 1] == depth[i] {
                j += 1;
            }
            let left_ok = i == 0 || depth[i - 1] < depth[i];
            let right_ok = j + 1 == n || depth[j + 1] < depth[i];
            if left_ok && right_ok {
                items.push(Item::Zone(ZoneSeed {
                    q: q.clone(),
                    rep: reps[i].clone(),
                    nu_override: None,
                }));
            }
            i = j + 1;
        }
        debug_assert!(!items.is_empty());
        Ok(items)
    }

    /// The full link profile: alternating zone and slice seeds from the first
    /// boundary arc to the last.
    pub fn run(&self) -> Result<(Vec<ZoneSeed<F>>, Vec<SliceSeed<F>>), PizzaError> {
        let sites = self.collect_sites();
        let mut items: Vec<Item<F>> = Vec::new();
        for i in 0..sites.len() {
            items.extend(self.site_items(&sites[i])?);
            if i + 1 < sites.len() {
                items.extend(self.plateau_items(&sites[i], &sites[i + 1])?);
            }
        }
        self.normalize(items)
    }

    /// Fill zone–zone gaps with point slices and validate alternation.
    fn normalize(
        &self,
        items: Vec<Item<F>>,
    ) -> Result<(Vec<ZoneSeed<F>>, Vec<SliceSeed<F>>), PizzaError> {
        let mut zones: Vec<ZoneSeed<F>> = Vec::new();
        let mut slices: Vec<SliceSeed<F>> = Vec::new();
        let mut pending_slice: Option<SliceSeed<F>> = None;
        for item in items {
            match item {
                Item::Slice(s) => {
                    if zones.is_empty() || pending_slice.is_some() {
                        return Err(PizzaError::ProfileResolution(
                            "two slices without a zone between them".into(),
                        ));
                    }
                    pending_slice = Some(s);
                }
                Item::Zone(z) => {
                    if zones.is_empty() {
                        zones.push(z);
                        continue;
                    }
                    match pending_slice.take() {
                        Some(s) => {
                            slices.push(s);
                            zones.push(z);
                        }
                        None => {
                            let prev = zones.last().unwrap();
                            let a1 = self.t.eval_ruling(prev.rep.patch, &prev.rep.ruling);
                            let a2 = self.t.eval_ruling(z.rep.patch, &z.rep.ruling);
                            let w = crate::arcspace::tord(&a1, &a2).map_err(PizzaError::Arc)?;
                            if w.is_infinite() {
                                // Duplicate representative: drop the second zone.
                                continue;
                            }
                            if prev.q != z.q {
                                return Err(PizzaError::ProfileResolution(
                                    "adjacent zones with different orders and no ramp".into(),
                                ));
                            }
                            let width = w.finite_ref().unwrap().clone();
                            slices.push(SliceSeed {
                                q_prev: prev.q.clone(),
                                q_next: z.q.clone(),
                                law: Law::Point { width: width.clone() },
                                beta: Exp::Finite(width),
                            });
                            zones.push(z);
                        }
                    }
                }
            }
        }
        if pending_slice.is_some() {
            return Err(PizzaError::ProfileResolution(
                "profile ends with a dangling slice".into(),
            ));
        }
        if zones.len() < 2 || zones.len() != slices.len() + 1 {
            return Err(PizzaError::ProfileResolution(
                "profile does not span the link".into(),
            ));
        }
        Ok((zones, slices))
    }
}

/// Which sides of a ruling prefix carry valid arcs.
fn allowed_sides<F: ExponentField>(prefix: &GPoly<F>) -> (bool, bool) {
    if prefix.is_zero() {
        return (false, true);
    }
    if *prefix == GPoly::constant(F::one()) {
        return (true, false);
    }
    (true, true)
}

/// Ruling-prefix validity: exponents ≥ 0, constant term in [0, 1], and
/// boundary constants pushed inward by the next term.
fn valid_ruling<F: ExponentField>(w: &GPoly<F>) -> bool {
    if let Some(e) = w.min_exp() {
        if e.is_negative() {
            return false;
        }
    }
    let c0 = w.constant_term();
    let one = F::one();
    if c0.is_negative() || c0 > one {
        return false;
    }
    let rest = w.without_constant();
    if c0.is_zero() {
        rest.is_zero() || rest.sign_at_zero() == Sign::Positive
    } else if c0 == one {
        rest.is_zero() || rest.sign_at_zero() == Sign::Negative
    } else {
        true
    }
}

/// Whether a center series stays inside [0, 1] near 0, i.e. is realizable by
/// rulings of the patch. Decided by the constant term and the sign of the
/// first drift term.
fn limit_followable<F: ExponentField>(limit: &RatFun<F>) -> bool {
    let Some(c0) = limit.series_constant() else {
        return false;
    };
    if c0.is_negative() || c0 > F::one() {
        return false;
    }
    let drift = limit.sub(&RatFun::from_poly(GPoly::constant(c0.clone())));
    match drift.ord() {
        Exp::Infinite => true,
        Exp::Finite(d) => {
            let w = limit.expand(&d);
            valid_ruling(&w)
        }
    }
}
