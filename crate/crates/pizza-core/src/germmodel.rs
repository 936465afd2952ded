//! Normally embedded Hölder triangles as chains of ruled monomial patches,
//! and the exact kernel for the order of the distance from an arc to a
//! triangle.
//!
//! A triangle is an ordered chain of anchor arcs a₀ … a_m; patch j is the
//! ruled strip whose cross-section at time t is the straight segment between
//! a_{j-1}(t) and a_j(t). Point-to-set distance is therefore exact
//! point-to-segment distance, and all asymptotic decisions (clamping regime,
//! order of vanishing) reduce to leading-coefficient signs of generalized
//! polynomials.

use thiserror::Error;

use crate::arcspace::{tord, Arc, ArcError};
use crate::exacts::{
    div_series, inner, lincomb_ruled, norm2, vsub, Exp, ExponentField, GPoly, Sign,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("a triangle needs at least two anchors")]
    TooFewAnchors,
    #[error("ambient dimension mismatch between anchors")]
    DimensionMismatch,
    #[error("patch {patch} is degenerate: equal adjacent anchors")]
    DegeneratePatch { patch: usize },
    #[error(
        "not normally embedded: tord(a{i}, a{j}) = {actual} but the chain gives {expected}"
    )]
    NotNormallyEmbedded {
        i: usize,
        j: usize,
        actual: String,
        expected: String,
    },
    #[error("ruling out of range for the patch")]
    RulingOutOfRange,
    #[error("patch index {patch} out of bounds")]
    PatchOutOfBounds { patch: usize },
    #[error(transparent)]
    Arc(#[from] ArcError),
}

/// A β-Hölder strip between two anchor arcs of the parent chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuledPatch<F> {
    pub left_anchor: usize,
    pub right_anchor: usize,
    pub exponent: Exp<F>,
}

/// A normally embedded Hölder triangle as an ordered chain of ruled patches.
///
/// Construction verifies the chain certificate: for all i < j the tangency
/// order of anchors i and j equals the minimum patch exponent between them.
/// This certifies that inner and outer metrics agree on the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleModel<F> {
    anchors: Vec<Arc<F>>,
    patches: Vec<RuledPatch<F>>,
    beta: Exp<F>,
    dim: usize,
}

impl<F: ExponentField> TriangleModel<F> {
    pub fn anchors(&self) -> &[Arc<F>] {
        &self.anchors
    }

    pub fn patches(&self) -> &[RuledPatch<F>] {
        &self.patches
    }

    pub fn num_patches(&self) -> usize {
        self.patches.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exponent β(T) = tord of the two boundary arcs.
    pub fn beta(&self) -> &Exp<F> {
        &self.beta
    }

    pub fn patch_exponent(&self, j: usize) -> &Exp<F> {
        &self.patches[j].exponent
    }

    pub fn boundary_first(&self) -> &Arc<F> {
        self.anchors.first().unwrap()
    }

    pub fn boundary_last(&self) -> &Arc<F> {
        self.anchors.last().unwrap()
    }

    /// Minimum patch exponent over patches lo..hi (inclusive indices).
    pub fn min_patch_exponent(&self, lo: usize, hi: usize) -> Exp<F> {
        self.patches[lo..=hi]
            .iter()
            .map(|p| p.exponent.clone())
            .min()
            .unwrap()
    }

    /// The arc at a ruling location, without revalidating the ruling.
    pub fn eval_ruling(&self, patch: usize, ruling: &GPoly<F>) -> Arc<F> {
        let a = self.anchors[patch].coords();
        let b = self.anchors[patch + 1].coords();
        let coords = lincomb_ruled(a, b, ruling).expect("anchors share dimension");
        Arc::from_validated(coords)
    }

    /// Reversed orientation: anchors listed from a_m to a_0.
    pub fn reversed(&self) -> Self {
        let mut anchors = self.anchors.clone();
        anchors.reverse();
        validate_triangle(anchors).expect("reversal preserves validity")
    }
}

/// Validate an anchor chain as a normally embedded ruled triangle.
pub fn validate_triangle<F: ExponentField>(
    anchors: Vec<Arc<F>>,
) -> Result<TriangleModel<F>, ModelError> {
    if anchors.len() < 2 {
        return Err(ModelError::TooFewAnchors);
    }
    let dim = anchors[0].dim();
    if anchors.iter().any(|a| a.dim() != dim) {
        return Err(ModelError::DimensionMismatch);
    }
    let mut patches = Vec::with_capacity(anchors.len() - 1);
    for j in 1..anchors.len() {
        let e = tord(&anchors[j - 1], &anchors[j])?;
        if e.is_infinite() {
            return Err(ModelError::DegeneratePatch { patch: j - 1 });
        }
        patches.push(RuledPatch {
            left_anchor: j - 1,
            right_anchor: j,
            exponent: e,
        });
    }
    // Chain certificate: pairwise tangency orders must match the minimum
    // patch exponent along the chain.
    for i in 0..anchors.len() {
        for j in (i + 1)..anchors.len() {
            let actual = tord(&anchors[i], &anchors[j])?;
            let expected = patches[i..j]
                .iter()
                .map(|p| p.exponent.clone())
                .min()
                .unwrap();
            if actual != expected {
                return Err(ModelError::NotNormallyEmbedded {
                    i,
                    j,
                    actual: actual.to_string(),
                    expected: expected.to_string(),
                });
            }
        }
    }
    let beta = patches.iter().map(|p| p.exponent.clone()).min().unwrap();
    Ok(TriangleModel {
        anchors,
        patches,
        beta,
        dim,
    })
}

/// A location inside a triangle: a patch index and a ruling w(t) ∈ [0, 1].
///
/// The ruling is a generalized polynomial with exponents ≥ 0 whose constant
/// term lies in [0, 1]; if the constant term sits on a boundary the next
/// term must push inward (or the ruling is exactly the boundary anchor).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcLoc<F> {
    pub patch: usize,
    pub ruling: GPoly<F>,
}

impl<F: ExponentField> ArcLoc<F> {
    pub fn new(patch: usize, ruling: GPoly<F>) -> Self {
        ArcLoc { patch, ruling }
    }

    pub fn at_constant(patch: usize, c: F) -> Self {
        ArcLoc {
            patch,
            ruling: GPoly::constant(c),
        }
    }
}

/// Validate an ArcLoc against a triangle.
pub fn validate_arc_loc<F: ExponentField>(
    m: &TriangleModel<F>,
    loc: &ArcLoc<F>,
) -> Result<(), ModelError> {
    if loc.patch >= m.num_patches() {
        return Err(ModelError::PatchOutOfBounds { patch: loc.patch });
    }
    let w = &loc.ruling;
    if let Some(e) = w.min_exp() {
        if e.is_negative() {
            return Err(ModelError::RulingOutOfRange);
        }
    }
    let c0 = w.constant_term();
    let one = F::one();
    if c0.is_negative() || c0 > one {
        return Err(ModelError::RulingOutOfRange);
    }
    let rest = w.without_constant();
    if c0.is_zero() {
        if !rest.is_zero() && rest.sign_at_zero() != Sign::Positive {
            return Err(ModelError::RulingOutOfRange);
        }
    } else if c0 == one {
        if !rest.is_zero() && rest.sign_at_zero() != Sign::Negative {
            return Err(ModelError::RulingOutOfRange);
        }
    }
    Ok(())
}

/// The arc t ↦ (1−w(t))·a_{j−1}(t) + w(t)·a_j(t).
pub fn eval_arc<F: ExponentField>(
    m: &TriangleModel<F>,
    loc: &ArcLoc<F>,
) -> Result<Arc<F>, ModelError> {
    validate_arc_loc(m, loc)?;
    Ok(m.eval_ruling(loc.patch, &loc.ruling))
}

/// Order of t ↦ dist(g(t), segment[a_{j−1}(t), a_j(t)]) plus the asymptotic
/// minimizer as an ArcLoc on patch j.
///
/// With e = g − a_{j−1} and d = a_j − a_{j−1}, the regime is decided from the
/// leading signs of ⟨e,d⟩ and ⟨e,d⟩ − ⟨d,d⟩:
/// clamp to 0, clamp to 1, or the interior minimizer w* = ⟨e,d⟩/⟨d,d⟩.
/// The squared distance is ⟨e,e⟩, ⟨e−d,e−d⟩, or (⟨e,e⟩⟨d,d⟩ − ⟨e,d⟩²)/⟨d,d⟩.
pub fn patch_distance_order<F: ExponentField>(
    g: &Arc<F>,
    m: &TriangleModel<F>,
    j: usize,
) -> Result<(Exp<F>, ArcLoc<F>), ModelError> {
    if j >= m.num_patches() {
        return Err(ModelError::PatchOutOfBounds { patch: j });
    }
    if g.dim() != m.dim() {
        return Err(ModelError::DimensionMismatch);
    }
    let a = m.anchors()[j].coords();
    let b = m.anchors()[j + 1].coords();
    let e = vsub(g.coords(), a).expect("dimension checked");
    let d = vsub(b, a).expect("dimension checked");
    let s1 = inner(&e, &d).expect("dimension checked");
    let s2 = norm2(&d);
    match s1.sign_at_zero() {
        Sign::Negative | Sign::Zero => {
            // Unclamped minimizer is ≤ 0 for small t: nearest point is the
            // left anchor.
            let order = norm2(&e).ord().half();
            Ok((order, ArcLoc::at_constant(j, F::zero())))
        }
        Sign::Positive => {
            let s1_minus_s2 = s1.sub(&s2);
            match s1_minus_s2.sign_at_zero() {
                Sign::Positive | Sign::Zero => {
                    let emd = vsub(&e, &d).expect("dimension checked");
                    let order = norm2(&emd).ord().half();
                    Ok((order, ArcLoc::at_constant(j, F::one())))
                }
                Sign::Negative => {
                    // Interior: squared distance (⟨e,e⟩⟨d,d⟩ − ⟨e,d⟩²)/⟨d,d⟩.
                    let num = norm2(&e).mul(&s2).sub(&s1.square());
                    let order = num.ord().sub_f(s2.ord().expect_finite("patch direction"))
                        .half();
                    let ruling = interior_ruling(&s1, &s2, &num, &order);
                    Ok((order, ArcLoc::new(j, ruling)))
                }
            }
        }
    }
}

/// Truncated expansion of w* = ⟨e,d⟩/⟨d,d⟩ deep enough that the arc at the
/// truncation realizes the exact distance order.
fn interior_ruling<F: ExponentField>(
    s1: &GPoly<F>,
    s2: &GPoly<F>,
    num: &GPoly<F>,
    order: &Exp<F>,
) -> GPoly<F> {
    // |g − arc(w̃)|² = num/⟨d,d⟩ + (w̃ − w*)²·⟨d,d⟩; a truncation error of
    // order > (ord num − 2·ord⟨d,d⟩)/2 cannot disturb the total order because
    // both summands are nonnegative.
    let s2_ord = s2.ord().expect_finite("patch direction").clone();
    let depth = match (num.ord(), order) {
        (Exp::Finite(n), _) => {
            let need = F::half(&(n - s2_ord.clone() - s2_ord.clone()));
            need + F::one()
        }
        (Exp::Infinite, _) => {
            // Cauchy–Schwarz gap identically zero: the arc tracks the patch
            // line exactly; expand to a fixed generous depth.
            F::from_int(24)
        }
    };
    let (w, _exact) = div_series(s1, s2, &depth).expect("s2 nonzero");
    w
}

/// Order of the distance from an arc to the triangle: the maximum of the
/// per-patch orders (the distance is the minimum of per-patch distances, and
/// generalized polynomials are asymptotically comparable).
pub fn distance_order<F: ExponentField>(
    g: &Arc<F>,
    m: &TriangleModel<F>,
) -> Result<Exp<F>, ModelError> {
    let mut best = None;
    for j in 0..m.num_patches() {
        let (o, _) = patch_distance_order(g, m, j)?;
        best = Some(match best {
            None => o,
            Some(b) => if o > b { o } else { b },
        });
    }
    Ok(best.expect("triangle has at least one patch"))
}

/// The ArcLoc achieving the distance order; ties across patches resolve to
/// the lowest patch index.
pub fn nearest_arc<F: ExponentField>(
    g: &Arc<F>,
    m: &TriangleModel<F>,
) -> Result<ArcLoc<F>, ModelError> {
    let mut best: Option<(Exp<F>, ArcLoc<F>)> = None;
    for j in 0..m.num_patches() {
        let (o, loc) = patch_distance_order(g, m, j)?;
        match &best {
            None => best = Some((o, loc)),
            Some((bo, _)) => {
                if &o > bo {
                    best = Some((o, loc));
                }
            }
        }
    }
    Ok(best.expect("triangle has at least one patch").1)
}
