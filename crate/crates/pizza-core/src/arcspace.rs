//! Arcs as normalized germ curves and the non-Archimedean tangency order.
//!
//! An arc is a vector generalized polynomial whose first coordinate is
//! exactly t (graph normalization) and whose remaining coordinates have all
//! exponents ≥ 1. Equality of arcs is equality of canonical coordinates.

use thiserror::Error;

use crate::exacts::{norm2, vsub, Exp, ExponentField, GPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error("first coordinate must be exactly t")]
    NotNormalized,
    #[error("coordinate {coord} has a term with exponent below one")]
    ExponentBelowOne { coord: usize },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("an arc needs at least two coordinates")]
    TooFewCoordinates,
}

/// A germ curve t ↦ (t, y₂(t), …, yₙ(t)) with rational exponents ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arc<F> {
    coords: Vec<GPoly<F>>,
}

impl<F: ExponentField> Arc<F> {
    pub fn coords(&self) -> &[GPoly<F>] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Construct without validation; for kernel-internal arcs whose shape is
    /// guaranteed by construction.
    pub(crate) fn from_validated(coords: Vec<GPoly<F>>) -> Self {
        debug_assert!(validate_arc(coords.clone()).is_ok());
        Arc { coords }
    }
}

/// Accept a candidate coordinate vector as an arc.
///
/// Requires the first coordinate to be exactly t and every exponent in the
/// remaining coordinates to be ≥ 1 (so the curve is parameterized by its
/// first coordinate and passes through the origin no slower than linearly).
pub fn validate_arc<F: ExponentField>(coords: Vec<GPoly<F>>) -> Result<Arc<F>, ArcError> {
    if coords.len() < 2 {
        return Err(ArcError::TooFewCoordinates);
    }
    if coords[0] != GPoly::t() {
        return Err(ArcError::NotNormalized);
    }
    let one = F::one();
    for (i, p) in coords.iter().enumerate().skip(1) {
        if let Some(e) = p.min_exp() {
            if e < &one {
                return Err(ArcError::ExponentBelowOne { coord: i });
            }
        }
    }
    Ok(Arc { coords })
}

/// Tangency order of two arcs: half the order of the squared distance.
///
/// ∞ exactly when the arcs coincide. Because both arcs share the first
/// coordinate t, the order is always ≥ 1.
pub fn tord<F: ExponentField>(g1: &Arc<F>, g2: &Arc<F>) -> Result<Exp<F>, ArcError> {
    let diff = vsub(g1.coords(), g2.coords()).map_err(|_| ArcError::DimensionMismatch {
        left: g1.dim(),
        right: g2.dim(),
    })?;
    Ok(norm2(&diff).ord().half())
}
