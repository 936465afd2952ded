//! Per patch-pair quadratic data driving breakpoint discovery.
//!
//! Fix a patch of T with base A(t) and direction D(t), and a patch of T′ with
//! base B(t) and direction E(t). For the arc of T at constant ruling c write
//! e(c) = A − B + c·D. The squared distance from that arc to the T′ patch
//! satisfies the exact identity
//!
//! ```text
//!     dist²·⟨E,E⟩ = Gap(c) + M(c)²,
//!     Gap = ⟨e,e⟩⟨E,E⟩ − ⟨e,E⟩²,
//!     M   = max(0, −⟨e,E⟩, ⟨e,E⟩ − ⟨E,E⟩)   (pointwise in t),
//! ```
//!
//! and both summands are nonnegative, so orders add without cancellation.
//! Gap is a quadratic in c that is nonnegative for every real c; such a
//! quadratic either has a double root or a positive-definite minimum, and in
//! both cases the locus where its order in t can rise is a single rational
//! center −Gap₁/(2·Gap₂). The clamp term is linear in c with a rational root.
//! These centers are the only positions along the link where the order of
//! the distance can exceed its generic value, which is why breakpoint
//! positions are always rational for ruled chains.

use crate::exacts::{inner, norm2, vsub, Exp, ExponentField, GPoly, RatFun};
use crate::germmodel::TriangleModel;

#[derive(Debug, Clone)]
pub(crate) struct Feature<F> {
    pub pairing: usize,
    pub center: RatFun<F>,
}

/// The quadratic data of one (T patch, T′ patch) pair.
#[derive(Debug, Clone)]
pub(crate) struct Pairing<F> {
    /// ⟨E,E⟩
    pub s2: GPoly<F>,
    /// ⟨A−B, E⟩ and ⟨D, E⟩: S1(c) = s1_0 + c·s1_1
    pub s1_0: GPoly<F>,
    pub s1_1: GPoly<F>,
    /// Gap(c) = g0 + c·g1 + c²·g2
    pub g0: GPoly<F>,
    pub g1: GPoly<F>,
    pub g2: GPoly<F>,
    /// Discriminant g1² − 4·g0·g2 (≤ 0 as a germ).
    pub disc: GPoly<F>,
}

impl<F: ExponentField> Pairing<F> {
    pub fn build(t: &TriangleModel<F>, tp: &TriangleModel<F>, j: usize, jp: usize) -> Self {
        let a = t.anchors()[j].coords();
        let d = vsub(t.anchors()[j + 1].coords(), a).expect("validated dims");
        let b = tp.anchors()[jp].coords();
        let e = vsub(tp.anchors()[jp + 1].coords(), b).expect("validated dims");
        let amb = vsub(a, b).expect("validated dims");

        let s2 = norm2(&e);
        let s1_0 = inner(&amb, &e).expect("validated dims");
        let s1_1 = inner(&d, &e).expect("validated dims");

        // ⟨e(c), e(c)⟩ = q0 + 2 q1 c + q2 c²
        let q0 = norm2(&amb);
        let q1 = inner(&amb, &d).expect("validated dims");
        let q2 = norm2(&d);

        // Gap = ⟨e,e⟩·s2 − S1²
        let g0 = q0.mul(&s2).sub(&s1_0.square());
        let g1 = q1.mul(&s2).scale(&F::two()).sub(&s1_0.mul(&s1_1).scale(&F::two()));
        let g2 = q2.mul(&s2).sub(&s1_1.square());

        let four = F::from_int(4);
        let disc = g1.square().sub(&g0.mul(&g2).scale(&four));

        Pairing {
            s2,
            s1_0,
            s1_1,
            g0,
            g1,
            g2,
            disc,
        }
    }

    /// Center of the gap quadratic, if it depends on c at all.
    pub fn gap_center(&self) -> Option<RatFun<F>> {
        if self.g2.is_zero() {
            // Nonnegative linear-in-c germ forces g1 ≡ 0: constant in c.
            None
        } else {
            Some(
                RatFun::new(self.g1.neg(), self.g2.scale(&F::two()))
                    .expect("g2 nonzero"),
            )
        }
    }

    /// ord Δ − 2·ord g2: the depth (doubled) at which the gap tent saturates.
    /// ∞ when the discriminant vanishes identically (double root: the center
    /// arc lies on the patch line).
    pub fn gap_cap(&self) -> Exp<F> {
        match (self.disc.ord(), self.g2.ord()) {
            (Exp::Infinite, _) => Exp::Infinite,
            (Exp::Finite(d), Exp::Finite(g)) => {
                Exp::Finite(d - g.clone() - g)
            }
            (Exp::Finite(_), Exp::Infinite) => Exp::Infinite, // g2 ≡ 0: no tent
        }
    }

    pub fn clamp_low_center(&self) -> Option<RatFun<F>> {
        if self.s1_1.is_zero() {
            None
        } else {
            Some(RatFun::new(self.s1_0.neg(), self.s1_1.clone()).expect("s1_1 nonzero"))
        }
    }

    pub fn clamp_high_center(&self) -> Option<RatFun<F>> {
        if self.s1_1.is_zero() {
            None
        } else {
            Some(
                RatFun::new(self.s2.sub(&self.s1_0), self.s1_1.clone())
                    .expect("s1_1 nonzero"),
            )
        }
    }

    /// Exact order of Gap along arcs whose ruling approaches the series z:
    /// ord g2 + min(2·ord(z − center), ord Δ − 2·ord g2), with the degenerate
    /// constant-in-c case ord g0.
    pub fn gap_ord_limit_at(&self, z: &RatFun<F>) -> Exp<F> {
        match self.gap_center() {
            None => self.g0.ord(),
            Some(center) => {
                let dz = center.sub(z).ord().double();
                let cap = self.gap_cap();
                let inner_min = if dz < cap { dz } else { cap };
                self.g2.ord().add(&inner_min)
            }
        }
    }

    /// Upper bound for the pairing's distance-order contribution along arcs
    /// approaching z: ½·(gap order limit − ord ⟨E,E⟩). The clamp term only
    /// lowers the contribution, never raises it above this.
    pub fn sup_at(&self, z: &RatFun<F>) -> Exp<F> {
        self.gap_ord_limit_at(z)
            .sub_f(self.s2.ord().expect_finite("patch direction"))
            .half()
    }

    /// Candidate δ-vertices for ramps around `prefix` contributed by this
    /// pairing: divergence depths of its centers and the gap saturation
    /// depth. Crossings between tents are recovered by probe refinement.
    pub fn vertex_candidates(&self, prefix: &RatFun<F>, out: &mut Vec<F>) {
        let mut push_exp = |e: Exp<F>| {
            if let Exp::Finite(v) = e {
                if v.is_positive() {
                    out.push(v);
                }
            }
        };
        if let Some(c) = self.gap_center() {
            push_exp(c.sub(prefix).ord());
            push_exp(self.gap_cap().half());
        }
        if let Some(c) = self.clamp_low_center() {
            push_exp(c.sub(prefix).ord());
        }
        if let Some(c) = self.clamp_high_center() {
            push_exp(c.sub(prefix).ord());
        }
    }
}

/// All pairings of patch j of `t` against every patch of `tp`.
pub(crate) fn patch_pairings<F: ExponentField>(
    t: &TriangleModel<F>,
    tp: &TriangleModel<F>,
    j: usize,
) -> Vec<Pairing<F>> {
    (0..tp.num_patches())
        .map(|jp| Pairing::build(t, tp, j, jp))
        .collect()
}

/// Features of patch j whose centers are followable inside the patch: finite
/// series with constant term in [0, 1].
pub(crate) fn patch_features<F: ExponentField>(pairings: &[Pairing<F>]) -> Vec<Feature<F>> {
    let mut out = Vec::new();
    let one = F::one();
    for (idx, p) in pairings.iter().enumerate() {
        let mut push = |center: Option<RatFun<F>>| {
            if let Some(c) = center {
                if let Some(c0) = c.series_constant() {
                    if !c0.is_negative() && c0 <= one {
                        out.push(Feature {
                            pairing: idx,
                            center: c,
                        });
                    }
                }
            }
        };
        // A gap tent with nonpositive cap never elevates the order.
        let keep_gap = match p.gap_cap() {
            Exp::Infinite => true,
            Exp::Finite(v) => v.is_positive(),
        };
        if keep_gap {
            push(p.gap_center());
        }
        push(p.clamp_low_center());
        push(p.clamp_high_center());
    }
    out
}
