//! Exact symbolic kernels for the outer Lipschitz geometry of pairs of
//! normally embedded Hölder triangles.
//!
//! A triangle is modeled as a chain of ruled monomial patches spanned by
//! anchor arcs with rational exponents. All invariants (tangency orders,
//! minimal pizzas, maximum zones, the characteristic permutation σ and the
//! signed correspondence τ) are computed in exact rational arithmetic; no
//! floating point enters any decision.
//!
//! The computational substrate is generic over the exponent field via
//! [`ExponentField`]. The canonical instantiation is `BigRational`
//! (arbitrary-precision ℚ); concrete type aliases for it live at the crate
//! root.

pub mod arcspace;
pub mod exacts;
pub mod germmodel;
pub mod pizza;
pub mod sigmatau;

pub use exacts::ExponentField;

/// Canonical scalar: arbitrary-precision rationals.
pub type Rat = num_rational::BigRational;

pub type Exp = exacts::Exp<Rat>;
pub type GPoly = exacts::GPoly<Rat>;
pub type AffineFn = exacts::AffineFn<Rat>;
pub type ExpInterval = exacts::ExpInterval<Rat>;
pub type RatFun = exacts::RatFun<Rat>;

pub type Arc = arcspace::Arc<Rat>;

pub type TriangleModel = germmodel::TriangleModel<Rat>;
pub type ArcLoc = germmodel::ArcLoc<Rat>;

pub type PizzaData = pizza::PizzaData<Rat>;
pub type PizzaSlice = pizza::PizzaSlice<Rat>;
pub type ZoneRecord = pizza::ZoneRecord<Rat>;
pub type OrderProfile = pizza::OrderProfile<Rat>;

pub type SigmaTau = sigmatau::SigmaTau<Rat>;
pub type SignedPair = sigmatau::SignedPair;

/// Parse a rational literal (`"p"` or `"p/q"`). Convenience for tests and
/// scene tooling; rejects anything that is not an exact integer ratio.
pub fn rat(s: &str) -> Rat {
    s.parse::<Rat>()
        .unwrap_or_else(|_| panic!("invalid rational literal: {s:?}"))
}

/// Finite exponent from a rational literal.
pub fn exp(s: &str) -> Exp {
    exacts::Exp::Finite(rat(s))
}
