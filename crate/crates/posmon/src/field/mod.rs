//! Exact arithmetic and ordering for the two ambient fields.
//!
//! Elements live either in Q (arbitrary-precision rationals) or in Q(X),
//! the rational functions over Q ordered by the sign of the leading
//! coefficient: a nonzero p(X)/q(X) with monic q is positive exactly when
//! the leading coefficient of p is positive. Under that cone X is
//! infinitely large and 1/X is a positive infinitesimal, which is what
//! makes the field non-Archimedean.

pub mod poly;
pub mod rational;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use poly::Poly;
use rational::Rational;

/// Which ambient field an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldTag {
    Q,
    QX,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::QX => write!(f, "QX"),
        }
    }
}

/// A reduced rational function with monic denominator.
///
/// Canonical form: gcd(num, den) = 1, den monic, zero stored as 0/1. The
/// sign of the element therefore lives entirely in the numerator's leading
/// coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { num: Poly::zero(), den: Poly::one() });
        }
        if den.degree() == Some(0) {
            // Constant denominator: no common factor to cancel.
            let c = den.leading().expect("nonzero").clone();
            return Ok(RatFunc { num: num.scale(&c.recip()), den: Poly::one() });
        }
        let g = num.gcd(&den);
        let (num, r) = num.div_rem(&g);
        debug_assert!(r.is_zero());
        let (den, r) = den.div_rem(&g);
        debug_assert!(r.is_zero());
        let lead = den.leading().expect("nonzero denominator").clone();
        Ok(RatFunc { num: num.scale(&lead.recip()), den: den.scale(&lead.recip()) })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Sign of the element under the leading-coefficient cone.
    fn sign(&self) -> Ordering {
        match self.num.leading() {
            None => Ordering::Equal,
            Some(l) => {
                if l.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// deg(num) - deg(den); `None` for zero.
    fn arch_degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().expect("den nonzero") as i64)
    }

    /// Multiplies by a rational scalar. Scaling the numerator by a unit
    /// keeps the fraction reduced and the denominator monic, so canonical
    /// form is preserved without another reduction pass.
    fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() || self.is_zero() {
            return RatFunc { num: Poly::zero(), den: Poly::one() };
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }
}

/// An element of one of the two ambient ordered fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldElem {
    Q(Rational),
    QX(RatFunc),
}

/// An Archimedean class, identified by the degree of its representatives.
///
/// The class order mirrors the big-O domination order: `ArchClass(d1)`
/// precedes (or equals) `ArchClass(d2)` exactly when `d1 >= d2`, so classes
/// of large elements come first. In Q every nonzero element has class 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArchClass {
    pub deg: i64,
}

impl ArchClass {
    /// The order on classes: `self` precedes-or-equals `other` when every
    /// representative of `other` is big-O of one of `self`.
    pub fn precedes(&self, other: &ArchClass) -> bool {
        self.deg >= other.deg
    }

    /// Class of a product of representatives; the group law of the value group.
    pub fn combine(&self, other: &ArchClass) -> ArchClass {
        ArchClass { deg: self.deg + other.deg }
    }
}

impl fmt::Display for ArchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg {}", self.deg)
    }
}

impl FieldElem {
    pub fn zero(tag: FieldTag) -> FieldElem {
        match tag {
            FieldTag::Q => FieldElem::Q(Rational::zero()),
            FieldTag::QX => FieldElem::QX(RatFunc { num: Poly::zero(), den: Poly::one() }),
        }
    }

    pub fn one(tag: FieldTag) -> FieldElem {
        FieldElem::constant(tag, Rational::one())
    }

    /// A rational constant embedded into the requested field.
    pub fn constant(tag: FieldTag, q: Rational) -> FieldElem {
        match tag {
            FieldTag::Q => FieldElem::Q(q),
            FieldTag::QX => FieldElem::QX(RatFunc { num: Poly::constant(q), den: Poly::one() }),
        }
    }

    /// The indeterminate X in Q(X).
    pub fn x() -> FieldElem {
        FieldElem::QX(RatFunc { num: Poly::x(), den: Poly::one() })
    }

    /// A polynomial viewed as an element of Q(X).
    pub fn from_poly(p: Poly) -> FieldElem {
        FieldElem::QX(RatFunc { num: p, den: Poly::one() })
    }

    /// A quotient of polynomials, brought to canonical form.
    pub fn from_polys(num: Poly, den: Poly) -> Result<FieldElem> {
        Ok(FieldElem::QX(RatFunc::new(num, den)?))
    }

    pub fn tag(&self) -> FieldTag {
        match self {
            FieldElem::Q(_) => FieldTag::Q,
            FieldElem::QX(_) => FieldTag::QX,
        }
    }

    fn same_tag(&self, other: &FieldElem) -> Result<()> {
        if self.tag() == other.tag() {
            Ok(())
        } else {
            Err(Error::TagMismatch(self.tag(), other.tag()))
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_zero(),
            FieldElem::QX(r) => r.is_zero(),
        }
    }

    /// Sign relative to zero in the field order.
    pub fn sign(&self) -> Ordering {
        match self {
            FieldElem::Q(q) => q.cmp(&Rational::zero()),
            FieldElem::QX(r) => r.sign(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// Total order comparison; errors on mixed field tags.
    pub fn compare(&self, other: &FieldElem) -> Result<Ordering> {
        self.same_tag(other)?;
        match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => Ok(a.cmp(b)),
            (FieldElem::QX(a), FieldElem::QX(b)) => {
                // Denominators are monic, so the difference has the sign of
                // its cross-multiplied numerator; no reduction needed.
                let diff = if a.den.is_one_poly() && b.den.is_one_poly() {
                    &a.num - &b.num
                } else {
                    &(&a.num * &b.den) - &(&b.num * &a.den)
                };
                Ok(match diff.leading() {
                    None => Ordering::Equal,
                    Some(l) if l.is_positive() => Ordering::Greater,
                    Some(_) => Ordering::Less,
                })
            }
            _ => unreachable!(),
        }
    }

    /// The Archimedean valuation; errors at zero.
    pub fn arch_class(&self) -> Result<ArchClass> {
        if self.is_zero() {
            return Err(Error::UndefinedValuation);
        }
        match self {
            FieldElem::Q(_) => Ok(ArchClass { deg: 0 }),
            FieldElem::QX(r) => Ok(ArchClass { deg: r.arch_degree().unwrap() }),
        }
    }

    /// `alpha(a) <= alpha(b)` in the class order, i.e. `b = O(a)`.
    pub fn arch_leq(&self, other: &FieldElem) -> Result<bool> {
        self.same_tag(other)?;
        Ok(self.arch_class()?.precedes(&other.arch_class()?))
    }

    /// Leading coefficient: the value itself in Q, the numerator's leading
    /// coefficient in Q(X) (the denominator being monic). Zero for zero.
    pub fn leading_coeff(&self) -> Rational {
        match self {
            FieldElem::Q(q) => q.clone(),
            FieldElem::QX(r) => r.num.leading().cloned().unwrap_or_else(Rational::zero),
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_tag(other)?;
        match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => Ok(FieldElem::Q(a + b)),
            (FieldElem::QX(a), FieldElem::QX(b)) => {
                if a.den.is_one_poly() && b.den.is_one_poly() {
                    return Ok(FieldElem::QX(RatFunc { num: &a.num + &b.num, den: Poly::one() }));
                }
                let num = &(&a.num * &b.den) + &(&b.num * &a.den);
                FieldElem::from_polys(num, &a.den * &b.den)
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_tag(other)?;
        match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => Ok(FieldElem::Q(a - b)),
            (FieldElem::QX(a), FieldElem::QX(b)) => {
                if a.den.is_one_poly() && b.den.is_one_poly() {
                    return Ok(FieldElem::QX(RatFunc { num: &a.num - &b.num, den: Poly::one() }));
                }
                let num = &(&a.num * &b.den) - &(&b.num * &a.den);
                FieldElem::from_polys(num, &a.den * &b.den)
            }
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_tag(other)?;
        match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => Ok(FieldElem::Q(a * b)),
            (FieldElem::QX(a), FieldElem::QX(b)) => {
                if a.den.is_one_poly() && b.den.is_one_poly() {
                    return Ok(FieldElem::QX(RatFunc { num: &a.num * &b.num, den: Poly::one() }));
                }
                FieldElem::from_polys(&a.num * &b.num, &a.den * &b.den)
            }
            _ => unreachable!(),
        }
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_tag(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => Ok(FieldElem::Q(a / b)),
            (FieldElem::QX(a), FieldElem::QX(b)) => {
                FieldElem::from_polys(&a.num * &b.den, &a.den * &b.num)
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Q(a) => FieldElem::Q(-a),
            FieldElem::QX(a) => FieldElem::QX(RatFunc { num: -&a.num, den: a.den.clone() }),
        }
    }

    pub fn abs(&self) -> FieldElem {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Scalar multiple by a natural number (repeated addition collapsed).
    pub fn scale_nat(&self, n: u64) -> FieldElem {
        let scalar = Rational::from_integer(n.into());
        match self {
            FieldElem::Q(a) => FieldElem::Q(a * scalar),
            FieldElem::QX(r) => FieldElem::QX(r.scale(&scalar)),
        }
    }

    /// Integer power; negative exponents invert (error at zero).
    pub fn pow(&self, e: u32) -> FieldElem {
        match self {
            FieldElem::Q(a) => FieldElem::Q(a.pow(e as i32)),
            FieldElem::QX(a) => {
                FieldElem::QX(RatFunc { num: a.num.pow(e), den: a.den.pow(e) })
            }
        }
    }

    /// The rational value of a constant element, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            FieldElem::Q(q) => Some(q.clone()),
            FieldElem::QX(r) => {
                if r.den.is_one_poly() && r.num.degree().map_or(true, |d| d == 0) {
                    Some(r.num.coeff(0))
                } else {
                    None
                }
            }
        }
    }

    /// Substitutes a rational for X; identity on Q. Errors when the
    /// denominator vanishes at the point.
    pub fn eval_at(&self, t: &Rational) -> Result<Rational> {
        match self {
            FieldElem::Q(q) => Ok(q.clone()),
            FieldElem::QX(r) => {
                let den = r.den.eval(t);
                if den.is_zero() {
                    return Err(Error::InvalidEvalPoint(format!("denominator of {self} vanishes at {t}")));
                }
                Ok(r.num.eval(t) / den)
            }
        }
    }
}

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}

/// Structural total order: elements of Q sort before elements of Q(X), and
/// within one field the order is the field order. This makes ordered
/// collections of same-field elements behave like the field; use
/// [`FieldElem::compare`] when mixed tags must be rejected instead.
impl Ord for FieldElem {
    fn cmp(&self, other: &FieldElem) -> Ordering {
        match (self.tag(), other.tag()) {
            (FieldTag::Q, FieldTag::QX) => Ordering::Less,
            (FieldTag::QX, FieldTag::Q) => Ordering::Greater,
            _ => self.compare(other).expect("same tag"),
        }
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &FieldElem) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldElem {
    /// Rationals render as `a/b` (`b` omitted when 1). Elements of Q(X)
    /// render as `num/den` in descending powers with a component
    /// parenthesized when it has more than one term, e.g. `(X^2+1)/X`;
    /// the denominator is omitted when it is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Q(q) => write!(f, "{}", rational::render(q)),
            FieldElem::QX(r) => {
                if r.den.is_one_poly() {
                    return write!(f, "{}", r.num);
                }
                if r.num.is_single_term() {
                    write!(f, "{}", r.num)?;
                } else {
                    write!(f, "({})", r.num)?;
                }
                write!(f, "/")?;
                if r.den.is_single_term() {
                    write!(f, "{}", r.den)
                } else {
                    write!(f, "({})", r.den)
                }
            }
        }
    }
}
