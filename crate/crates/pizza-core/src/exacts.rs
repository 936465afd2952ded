//! Exact arithmetic for exponents in ℚ ∪ {∞} and finite generalized
//! polynomials Σ c·t^e with rational exponents.
//!
//! Everything here is closed over finite term lists: ring operations never
//! truncate, orders are read off leading terms, and signs at 0⁺ are decided
//! by leading coefficients. Quotients of generalized polynomials are handled
//! by [`RatFun`], which expands to any requested depth.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_traits::{FromPrimitive, Num, Signed};
use thiserror::Error;

/// Scalar requirements for the exponent/coefficient field.
///
/// Instantiated with `BigRational` throughout the library; any exact ordered
/// field type satisfying the bounds works (e.g. `Ratio<i64>` for small
/// inputs). Floating-point types do not: every kernel relies on exact zero
/// tests and exact sign decisions.
pub trait ExponentField:
    Clone + fmt::Debug + fmt::Display + Ord + Eq + Hash + Num + Signed + FromPrimitive + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("small integer must embed into the field")
    }

    fn two() -> Self {
        Self::from_int(2)
    }

    fn half(x: &Self) -> Self {
        x.clone() / Self::two()
    }
}

impl<T> ExponentField for T where
    T: Clone + fmt::Debug + fmt::Display + Ord + Eq + Hash + Num + Signed + FromPrimitive + 'static
{
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("evaluation point outside the affine domain")]
    OutsideDomain,
    #[error("affine function with negative slope evaluated at infinity")]
    NegativeSlopeAtInfinity,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
}

/// Sign of a germ at 0⁺.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// An exponent: a rational number or ∞.
///
/// The derived order puts every rational below `Infinite`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exp<F> {
    Finite(F),
    Infinite,
}

impl<F: ExponentField> Exp<F> {
    pub fn finite(v: F) -> Self {
        Exp::Finite(v)
    }

    pub fn from_int(n: i64) -> Self {
        Exp::Finite(F::from_int(n))
    }

    pub fn zero() -> Self {
        Exp::Finite(F::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exp::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn finite_ref(&self) -> Option<&F> {
        match self {
            Exp::Finite(v) => Some(v),
            Exp::Infinite => None,
        }
    }

    /// Finite value, panicking on ∞. For contexts whose invariants rule ∞ out.
    pub fn expect_finite(&self, what: &str) -> &F {
        self.finite_ref()
            .unwrap_or_else(|| panic!("unexpected infinite exponent in {what}"))
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Exp::Finite(a), Exp::Finite(b)) => Exp::Finite(a.clone() + b.clone()),
            _ => Exp::Infinite,
        }
    }

    pub fn add_f(&self, other: &F) -> Self {
        match self {
            Exp::Finite(a) => Exp::Finite(a.clone() + other.clone()),
            Exp::Infinite => Exp::Infinite,
        }
    }

    /// Difference of finite exponents; ∞ − finite = ∞.
    pub fn sub_f(&self, other: &F) -> Self {
        match self {
            Exp::Finite(a) => Exp::Finite(a.clone() - other.clone()),
            Exp::Infinite => Exp::Infinite,
        }
    }

    pub fn half(&self) -> Self {
        match self {
            Exp::Finite(a) => Exp::Finite(F::half(a)),
            Exp::Infinite => Exp::Infinite,
        }
    }

    pub fn double(&self) -> Self {
        match self {
            Exp::Finite(a) => Exp::Finite(a.clone() * F::two()),
            Exp::Infinite => Exp::Infinite,
        }
    }
}

impl<F: fmt::Display> fmt::Display for Exp<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exp::Finite(v) => write!(f, "{v}"),
            Exp::Infinite => write!(f, "inf"),
        }
    }
}

/// A finite generalized polynomial Σ c·t^e with rational exponents.
///
/// Terms are kept sorted by strictly increasing exponent with no zero
/// coefficients; the empty list is the zero polynomial. This canonical form
/// is unique, so equality of values is equality of representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GPoly<F> {
    terms: Vec<(F, F)>, // (exponent, coefficient)
}

impl<F: ExponentField> GPoly<F> {
    pub fn zero() -> Self {
        GPoly { terms: Vec::new() }
    }

    /// The identity monomial t.
    pub fn t() -> Self {
        GPoly::monomial(F::one(), F::one())
    }

    pub fn constant(c: F) -> Self {
        GPoly::monomial(F::zero(), c)
    }

    pub fn monomial(exp: F, coeff: F) -> Self {
        if coeff.is_zero() {
            GPoly::zero()
        } else {
            GPoly {
                terms: vec![(exp, coeff)],
            }
        }
    }

    /// Build from arbitrary (exponent, coefficient) pairs, combining and
    /// dropping as needed to reach canonical form.
    pub fn from_terms(pairs: Vec<(F, F)>) -> Self {
        let mut sorted = pairs;
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(F, F)> = Vec::with_capacity(sorted.len());
        for (e, c) in sorted {
            if let Some(last) = terms.last_mut() {
                if last.0 == e {
                    last.1 = last.1.clone() + c;
                    if last.1.is_zero() {
                        terms.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                terms.push((e, c));
            }
        }
        GPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(F, F)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Least exponent with nonzero coefficient; ∞ for the zero polynomial.
    pub fn ord(&self) -> Exp<F> {
        match self.terms.first() {
            Some((e, _)) => Exp::Finite(e.clone()),
            None => Exp::Infinite,
        }
    }

    /// Leading (lowest-order) term.
    pub fn leading(&self) -> Option<(&F, &F)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn coeff_at(&self, exp: &F) -> F {
        self.terms
            .iter()
            .find(|(e, _)| e == exp)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    pub fn min_exp(&self) -> Option<&F> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn max_exp(&self) -> Option<&F> {
        self.terms.last().map(|(e, _)| e)
    }

    /// Sign of the germ at 0⁺: the sign of the leading coefficient.
    pub fn sign_at_zero(&self) -> Sign {
        match self.terms.first() {
            None => Sign::Zero,
            Some((_, c)) => {
                if c.is_positive() {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        GPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms: Vec<(F, F)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Less => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.clone() + other.terms[j].1.clone();
                    if !c.is_zero() {
                        terms.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend(other.terms[j..].iter().cloned());
        GPoly { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return GPoly::zero();
        }
        GPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * k.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &F, coeff: &F) -> Self {
        if coeff.is_zero() {
            return GPoly::zero();
        }
        GPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone() + exp.clone(), c.clone() * coeff.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = GPoly::zero();
        for (e, c) in &self.terms {
            acc = acc.add(&other.mul_monomial(e, c));
        }
        acc
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Drop all terms with exponent strictly above `cutoff`.
    pub fn truncate_above(&self, cutoff: &F) -> Self {
        GPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e <= cutoff)
                .cloned()
                .collect(),
        }
    }

    /// Constant term (coefficient of t^0).
    pub fn constant_term(&self) -> F {
        self.coeff_at(&F::zero())
    }

    /// The polynomial with its constant term removed.
    pub fn without_constant(&self) -> Self {
        GPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| !e.is_zero())
                .cloned()
                .collect(),
        }
    }
}

/// Numeric evaluation; used only by the sampling oracle, never by kernels.
impl GPoly<num_rational::BigRational> {
    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let ef = ratio_to_f64(e);
            let cf = ratio_to_f64(c);
            acc += cf * t.powf(ef);
        }
        acc
    }
}

pub fn ratio_to_f64(r: &num_rational::BigRational) -> f64 {
    let n = bigint_to_f64(r.numer());
    let d = bigint_to_f64(r.denom());
    n / d
}

fn bigint_to_f64(b: &num_bigint::BigInt) -> f64 {
    // Adequate for oracle use: inputs are small.
    b.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

// --- vector-valued polynomials -------------------------------------------

/// Component-wise difference; errors on arity mismatch.
pub fn vsub<F: ExponentField>(a: &[GPoly<F>], b: &[GPoly<F>]) -> Result<Vec<GPoly<F>>, ExactError> {
    if a.len() != b.len() {
        return Err(ExactError::ArityMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().zip(b.iter()).map(|(x, y)| x.sub(y)).collect())
}

/// Inner product of vector polynomials.
pub fn inner<F: ExponentField>(a: &[GPoly<F>], b: &[GPoly<F>]) -> Result<GPoly<F>, ExactError> {
    if a.len() != b.len() {
        return Err(ExactError::ArityMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut acc = GPoly::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        acc = acc.add(&x.mul(y));
    }
    Ok(acc)
}

/// Sum of squared components.
pub fn norm2<F: ExponentField>(v: &[GPoly<F>]) -> GPoly<F> {
    let mut acc = GPoly::zero();
    for x in v {
        acc = acc.add(&x.square());
    }
    acc
}

/// Least exponent whose coefficient tuple is nonzero; ∞ for the zero vector.
pub fn vec_ord<F: ExponentField>(v: &[GPoly<F>]) -> Exp<F> {
    v.iter().map(|p| p.ord()).min().unwrap_or(Exp::Infinite)
}

/// a + w·(b − a), component-wise.
pub fn lincomb_ruled<F: ExponentField>(
    a: &[GPoly<F>],
    b: &[GPoly<F>],
    w: &GPoly<F>,
) -> Result<Vec<GPoly<F>>, ExactError> {
    let diff = vsub(b, a)?;
    Ok(a.iter()
        .zip(diff.iter())
        .map(|(base, d)| base.add(&w.mul(d)))
        .collect())
}

// --- series division -------------------------------------------------------

/// Leading terms of num/den up to exponent `max_exp` inclusive.
///
/// Returns the partial quotient and whether the division terminated exactly
/// within the cutoff (remainder zero).
pub fn div_series<F: ExponentField>(
    num: &GPoly<F>,
    den: &GPoly<F>,
    max_exp: &F,
) -> Result<(GPoly<F>, bool), ExactError> {
    let (den_exp, den_coeff) = den.leading().ok_or(ExactError::DivisionByZeroPoly)?;
    let (den_exp, den_coeff) = (den_exp.clone(), den_coeff.clone());
    let mut rem = num.clone();
    let mut out = GPoly::zero();
    loop {
        let Some((re, rc)) = rem.leading() else {
            return Ok((out, true));
        };
        let qe = re.clone() - den_exp.clone();
        if &qe > max_exp {
            return Ok((out, false));
        }
        let qc = rc.clone() / den_coeff.clone();
        let term = GPoly::monomial(qe, qc);
        rem = rem.sub(&term.mul(den));
        out = out.add(&term);
    }
}

/// A quotient of generalized polynomials, treated as a lazy series.
#[derive(Debug, Clone)]
pub struct RatFun<F> {
    pub num: GPoly<F>,
    pub den: GPoly<F>,
}

impl<F: ExponentField> RatFun<F> {
    pub fn new(num: GPoly<F>, den: GPoly<F>) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZeroPoly);
        }
        Ok(RatFun { num, den })
    }

    pub fn from_poly(p: GPoly<F>) -> Self {
        RatFun {
            num: p,
            den: GPoly::constant(F::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Order of the series (ord num − ord den); ∞ when the numerator is 0.
    pub fn ord(&self) -> Exp<F> {
        match (self.num.leading(), self.den.leading()) {
            (None, _) => Exp::Infinite,
            (Some((ne, _)), Some((de, _))) => Exp::Finite(ne.clone() - de.clone()),
            (_, None) => unreachable!("denominator validated nonzero"),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RatFun {
            num: self
                .num
                .mul(&other.den)
                .sub(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn sub_poly(&self, p: &GPoly<F>) -> Self {
        RatFun {
            num: self.num.sub(&p.mul(&self.den)),
            den: self.den.clone(),
        }
    }

    pub fn same_function(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Series expansion up to exponent `max_exp` inclusive.
    pub fn expand(&self, max_exp: &F) -> GPoly<F> {
        div_series(&self.num, &self.den, max_exp)
            .expect("denominator validated nonzero")
            .0
    }

    /// Coefficient of t^depth in the series expansion.
    pub fn coeff_at_depth(&self, depth: &F) -> F {
        self.expand(depth).coeff_at(depth)
    }

    /// Constant term of the series, if the series has no negative part.
    pub fn series_constant(&self) -> Option<F> {
        match self.ord() {
            Exp::Infinite => Some(F::zero()),
            Exp::Finite(o) => {
                if o.is_negative() {
                    None
                } else if o.is_zero() {
                    Some(self.coeff_at_depth(&F::zero()))
                } else {
                    Some(F::zero())
                }
            }
        }
    }
}

// --- affine exponent functions ---------------------------------------------

/// Closed exponent interval [lo, hi]; degenerate means a point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpInterval<F> {
    lo: Exp<F>,
    hi: Exp<F>,
}

impl<F: ExponentField> ExpInterval<F> {
    pub fn new(lo: Exp<F>, hi: Exp<F>) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        ExpInterval { lo, hi }
    }

    /// Interval spanned by two endpoints given in either order.
    pub fn spanning(a: &Exp<F>, b: &Exp<F>) -> Self {
        if a <= b {
            ExpInterval::new(a.clone(), b.clone())
        } else {
            ExpInterval::new(b.clone(), a.clone())
        }
    }

    pub fn lo(&self) -> &Exp<F> {
        &self.lo
    }

    pub fn hi(&self) -> &Exp<F> {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &Exp<F>) -> bool {
        &self.lo <= q && q <= &self.hi
    }
}

impl<F: ExponentField> fmt::Display for ExpInterval<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Affine exponent function q ↦ a·q + b on a closed exponent interval.
///
/// At q = ∞ the value is ∞ when a > 0 and b when a = 0; a < 0 with ∞ in the
/// domain is rejected at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineFn<F> {
    pub a: F,
    pub b: F,
    pub domain: ExpInterval<F>,
}

impl<F: ExponentField> AffineFn<F> {
    pub fn new(a: F, b: F, domain: ExpInterval<F>) -> Result<Self, ExactError> {
        if a.is_negative() && domain.hi().is_infinite() {
            return Err(ExactError::NegativeSlopeAtInfinity);
        }
        Ok(AffineFn { a, b, domain })
    }

    pub fn constant(b: F, domain: ExpInterval<F>) -> Self {
        AffineFn {
            a: F::zero(),
            b,
            domain,
        }
    }

    pub fn eval(&self, q: &Exp<F>) -> Result<Exp<F>, ExactError> {
        if !self.domain.contains(q) {
            return Err(ExactError::OutsideDomain);
        }
        self.eval_unchecked(q)
    }

    /// Evaluate without the domain check (still applies the ∞ conventions).
    pub fn eval_unchecked(&self, q: &Exp<F>) -> Result<Exp<F>, ExactError> {
        match q {
            Exp::Finite(v) => Ok(Exp::Finite(self.a.clone() * v.clone() + self.b.clone())),
            Exp::Infinite => {
                if self.a.is_positive() {
                    Ok(Exp::Infinite)
                } else if self.a.is_zero() {
                    Ok(Exp::Finite(self.b.clone()))
                } else {
                    Err(ExactError::NegativeSlopeAtInfinity)
                }
            }
        }
    }

    /// Same (a, b) coefficients; domains may differ.
    pub fn same_law(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
}

impl<F: ExponentField> fmt::Display for AffineFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q -> {}*q + {} on {}", self.a, self.b, self.domain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{exp, rat, Rat};

    fn gp(pairs: &[(&str, &str)]) -> GPoly<Rat> {
        GPoly::from_terms(pairs.iter().map(|(e, c)| (rat(e), rat(c))).collect())
    }

    #[test]
    fn ord_of_leading_term() {
        // 3t^{3/2} + t^2
        let p = gp(&[("3/2", "3"), ("2", "1")]);
        assert_eq!(p.ord(), exp("3/2"));
    }

    #[test]
    fn ord_of_zero_and_cancellation() {
        assert_eq!(GPoly::<Rat>::zero().ord(), Exp::Infinite);
        let p = gp(&[("2", "1")]);
        assert_eq!(p.sub(&p).ord(), Exp::Infinite);
    }

    #[test]
    fn ring_ops_examples() {
        // (t + t^2) + (−t) = t^2
        let a = gp(&[("1", "1"), ("2", "1")]);
        let b = gp(&[("1", "-1")]);
        assert_eq!(a.add(&b), gp(&[("2", "1")]));

        // inner((t,0),(0,t)) = 0
        let v1 = vec![gp(&[("1", "1")]), GPoly::zero()];
        let v2 = vec![GPoly::zero(), gp(&[("1", "1")])];
        assert!(inner(&v1, &v2).unwrap().is_zero());

        // norm2((t, t^{3/2})) = t^2 + t^3
        let v = vec![gp(&[("1", "1")]), gp(&[("3/2", "1")])];
        assert_eq!(norm2(&v), gp(&[("2", "1"), ("3", "1")]));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let v1 = vec![GPoly::<Rat>::zero()];
        let v2 = vec![GPoly::zero(), GPoly::zero()];
        assert!(matches!(
            inner(&v1, &v2),
            Err(ExactError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn sign_at_zero_examples() {
        assert_eq!(
            gp(&[("3", "-2"), ("4", "1")]).sign_at_zero(),
            Sign::Negative
        );
        assert_eq!(GPoly::<Rat>::zero().sign_at_zero(), Sign::Zero);
        assert_eq!(
            gp(&[("1/2", "1"), ("1", "-1")]).sign_at_zero(),
            Sign::Positive
        );
    }

    #[test]
    fn affine_eval_examples() {
        let dom = ExpInterval::new(exp("0"), Exp::Infinite);
        let f = AffineFn::new(rat("1/2"), rat("1"), dom.clone()).unwrap();
        assert_eq!(f.eval(&exp("2")).unwrap(), exp("2"));

        let g = AffineFn::constant(rat("3/2"), dom.clone());
        assert_eq!(g.eval(&Exp::Infinite).unwrap(), exp("3/2"));

        let h = AffineFn::new(rat("1"), rat("0"), dom).unwrap();
        assert_eq!(h.eval(&Exp::Infinite).unwrap(), Exp::Infinite);

        assert!(matches!(
            AffineFn::new(rat("-1"), rat("0"), ExpInterval::new(exp("1"), Exp::Infinite)),
            Err(ExactError::NegativeSlopeAtInfinity)
        ));

        let bounded = AffineFn::new(rat("1"), rat("0"), ExpInterval::new(exp("1"), exp("2"))).unwrap();
        assert!(matches!(bounded.eval(&exp("3")), Err(ExactError::OutsideDomain)));
    }

    #[test]
    fn division_series_terminates_and_truncates() {
        // (t + t^2) / t = 1 + t exactly
        let num = gp(&[("1", "1"), ("2", "1")]);
        let den = gp(&[("1", "1")]);
        let (q, exact) = div_series(&num, &den, &rat("10")).unwrap();
        assert!(exact);
        assert_eq!(q, gp(&[("0", "1"), ("1", "1")]));

        // 1 / (1 - t) = 1 + t + t^2 + ... truncated
        let num = gp(&[("0", "1")]);
        let den = gp(&[("0", "1"), ("1", "-1")]);
        let (q, exact) = div_series(&num, &den, &rat("3")).unwrap();
        assert!(!exact);
        assert_eq!(q, gp(&[("0", "1"), ("1", "1"), ("2", "1"), ("3", "1")]));
    }

    #[test]
    fn ratfun_series_access() {
        // t^2 / (t + t^2) = t - t^2 + t^3 - ...
        let f = RatFun::new(gp(&[("2", "1")]), gp(&[("1", "1"), ("2", "1")])).unwrap();
        assert_eq!(f.ord(), exp("1"));
        assert_eq!(f.series_constant(), Some(rat("0")));
        assert_eq!(f.coeff_at_depth(&rat("2")), rat("-1"));
        let g = RatFun::from_poly(gp(&[("1", "1")]));
        assert_eq!(f.sub(&g).ord(), exp("2"));
    }

    #[test]
    fn mul_ord_is_additive() {
        let p = gp(&[("1/2", "2"), ("3", "-1")]);
        let q = gp(&[("5/4", "3"), ("2", "7")]);
        assert_eq!(p.mul(&q).ord(), exp("7/4"));
        assert_eq!(p.mul(&q), q.mul(&p));
    }

    #[test]
    fn norm2_ord_is_twice_vec_ord() {
        let v = vec![gp(&[("3/2", "1")]), gp(&[("3/2", "-1"), ("2", "5")])];
        assert_eq!(vec_ord(&v), exp("3/2"));
        assert_eq!(norm2(&v).ord(), exp("3"));
    }
}
