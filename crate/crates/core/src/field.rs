//! Exact scalars: big rationals and elements `a + b*sqrt(D)` of one quadratic
//! extension `Q(sqrt(D))`.
//!
//! The radicand is kept exactly as produced (no square-free reduction). A
//! computation works inside a single [`ExtensionTag`]; rational scalars (those
//! tagged with a trivial extension) embed into every extension and may be mixed
//! freely, while combining two different non-trivial extensions is a usage
//! error.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot combine scalars from Q(sqrt({0})) and Q(sqrt({1}))")]
    ExtensionMismatch(Box<Rational>, Box<Rational>),
    #[error("malformed number `{0}`")]
    Parse(String),
}

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self, FieldError> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numerator.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Shorthand for small literals; panics on a zero denominator.
    pub fn frac(numerator: i64, denominator: i64) -> Self {
        Rational::new(numerator, denominator).expect("zero denominator")
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Non-negative rational square root when `self` is the square of a
    /// rational, `None` otherwise (in particular for every negative value).
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        // Reduced n/d is a square iff both n and d are.
        let num = self.numerator().magnitude();
        let den = self.denominator().magnitude();
        let rn = num.sqrt();
        if &(&rn * &rn) != num {
            return None;
        }
        let rd = den.sqrt();
        if &(&rd * &rd) != den {
            return None;
        }
        Some(Rational(BigRational::new(BigInt::from_biguint(Sign::Plus, rn), BigInt::from_biguint(Sign::Plus, rd))))
    }

    /// Largest number of bits in numerator or denominator.
    pub fn bits(&self) -> u64 {
        self.numerator().bits().max(self.denominator().bits())
    }
}

/// Free-function form of [`Rational::sqrt_exact`].
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    r.sqrt_exact()
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Grammar: `[-]digits[/digits]`.
impl FromStr for Rational {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FieldError::Parse(s.to_string());
        let body = s.strip_prefix('-').unwrap_or(s);
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        if !is_digits(num) || !den.is_none_or(is_digits) {
            return Err(err());
        }
        let mut n: BigInt = num.parse().map_err(|_| err())?;
        if body.len() != s.len() {
            n = -n;
        }
        let d: BigInt = match den {
            Some(d) => d.parse().map_err(|_| err())?,
            None => BigInt::one(),
        };
        Rational::new(n, d).map_err(|_| err())
    }
}

macro_rules! rational_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// The quadratic extension a computation lives in.
///
/// `trivial` holds when the radicand is the square of a rational (or when the
/// computation never left `Q`); scalars under a trivial tag always have a zero
/// radical part.
#[derive(Clone)]
pub struct ExtensionTag(Arc<TagData>);

#[derive(PartialEq, Eq, Hash)]
struct TagData {
    radicand: Rational,
    root: Option<Rational>,
}

impl PartialEq for ExtensionTag {
    fn eq(&self, other: &ExtensionTag) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for ExtensionTag {}

impl std::hash::Hash for ExtensionTag {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

static RATIONAL_TAG: OnceLock<ExtensionTag> = OnceLock::new();

impl ExtensionTag {
    /// Plain rationals. The radicand is recorded as 0.
    pub fn rational() -> Self {
        RATIONAL_TAG
            .get_or_init(|| {
                ExtensionTag(Arc::new(TagData { radicand: Rational::zero(), root: Some(Rational::zero()) }))
            })
            .clone()
    }

    pub fn new(radicand: Rational) -> Self {
        let root = radicand.sqrt_exact();
        ExtensionTag(Arc::new(TagData { radicand, root }))
    }

    pub fn radicand(&self) -> &Rational {
        &self.0.radicand
    }

    pub fn is_trivial(&self) -> bool {
        self.0.root.is_some()
    }

    /// Rational value of `sqrt(D)` for trivial tags.
    pub fn rational_root(&self) -> Option<&Rational> {
        self.0.root.as_ref()
    }

    pub fn compatible(&self, other: &ExtensionTag) -> bool {
        self.is_trivial() || other.is_trivial() || self.radicand() == other.radicand()
    }

    fn join(&self, other: &ExtensionTag) -> Result<ExtensionTag, FieldError> {
        match (self.is_trivial(), other.is_trivial()) {
            (_, true) => Ok(self.clone()),
            (true, false) => Ok(other.clone()),
            (false, false) if self.radicand() == other.radicand() => Ok(self.clone()),
            _ => Err(FieldError::ExtensionMismatch(
                Box::new(self.radicand().clone()),
                Box::new(other.radicand().clone()),
            )),
        }
    }
}

impl fmt::Debug for ExtensionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.radicand())
    }
}

/// `rational_part + radical_part * sqrt(D)`.
#[derive(Clone)]
pub struct Scalar {
    rational_part: Rational,
    radical_part: Rational,
    extension: ExtensionTag,
}

impl Scalar {
    /// Builds `a + b*sqrt(D)`, collapsing to a rational when the tag is trivial.
    pub fn new(rational_part: Rational, radical_part: Rational, extension: ExtensionTag) -> Self {
        Scalar::from_parts(rational_part, radical_part, extension).collapse()
    }

    /// Builds `a + b*sqrt(D)` verbatim, without collapsing.
    pub fn from_parts(rational_part: Rational, radical_part: Rational, extension: ExtensionTag) -> Self {
        Scalar { rational_part, radical_part, extension }
    }

    pub fn rational(r: Rational) -> Self {
        Scalar { rational_part: r, radical_part: Rational::zero(), extension: ExtensionTag::rational() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::rational(Rational::from_integer(n))
    }

    pub fn frac(numerator: i64, denominator: i64) -> Self {
        Scalar::rational(Rational::frac(numerator, denominator))
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// `sqrt(D)` itself, collapsed if the tag is trivial.
    pub fn sqrt_of(extension: &ExtensionTag) -> Self {
        Scalar::new(Rational::zero(), Rational::one(), extension.clone())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational_part
    }

    pub fn radical_part(&self) -> &Rational {
        &self.radical_part
    }

    pub fn extension(&self) -> &ExtensionTag {
        &self.extension
    }

    pub fn is_zero(&self) -> bool {
        self.rational_part.is_zero() && self.radical_part.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rational_part.is_one() && self.radical_part.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radical_part.is_zero()
    }

    /// The rational value, if the radical part is zero.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rational_part)
    }

    /// Rewrites `a + b*sqrt(s^2)` as the rational `a + b*s` when the tag is trivial.
    pub fn collapse(self) -> Self {
        match self.extension.rational_root() {
            Some(root) if !self.radical_part.is_zero() => {
                let value = &self.rational_part + &(&self.radical_part * root);
                Scalar { rational_part: value, radical_part: Rational::zero(), extension: self.extension }
            }
            _ => self,
        }
    }

    /// `a - b*sqrt(D)`.
    pub fn conjugate(&self) -> Self {
        Scalar {
            rational_part: self.rational_part.clone(),
            radical_part: -&self.radical_part,
            extension: self.extension.clone(),
        }
    }

    /// `a^2 - b^2 D`.
    pub fn norm(&self) -> Rational {
        self.rational_part.square() - self.radical_part.square() * self.extension.radicand().clone()
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        if self.is_rational() && rhs.is_rational() {
            return Ok(Scalar::rational(&self.rational_part + &rhs.rational_part));
        }
        let extension = self.extension.join(&rhs.extension)?;
        Ok(Scalar::new(&self.rational_part + &rhs.rational_part, &self.radical_part + &rhs.radical_part, extension))
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        if self.is_rational() && rhs.is_rational() {
            return Ok(Scalar::rational(&self.rational_part * &rhs.rational_part));
        }
        let extension = self.extension.join(&rhs.extension)?;
        let (a, b) = (&self.rational_part, &self.radical_part);
        let (c, e) = (&rhs.rational_part, &rhs.radical_part);
        let rational = a * c + b * e * extension.radicand().clone();
        let radical = a * e + b * c;
        Ok(Scalar::new(rational, radical, extension))
    }

    pub fn checked_inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let norm = self.norm();
        // Non-zero elements of a genuine quadratic field have non-zero norm;
        // trivial tags never carry a radical part.
        assert!(!norm.is_zero(), "zero norm for non-zero {self:?}");
        let scale = norm.inv()?;
        Ok(Scalar::new(&self.rational_part * &scale, -(&self.radical_part * &scale), self.extension.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_mul(&rhs.checked_inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        self.checked_inv()
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Lexicographic key on (rational part, radical part); used only for
    /// deterministic ordering, not as a field order.
    pub fn lex_cmp(&self, other: &Scalar) -> Ordering {
        self.rational_part.cmp(&other.rational_part).then_with(|| self.radical_part.cmp(&other.radical_part))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.rational_part == other.rational_part
            && self.radical_part == other.radical_part
            && (self.radical_part.is_zero() || self.extension.compatible(&other.extension))
    }
}

impl Eq for Scalar {}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

/// Rationals print as `n` or `n/d`; irrational elements as `a + b*sqrt(D)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical_part.is_zero() {
            write!(f, "{}", self.rational_part)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rational_part, self.radical_part, self.extension.radicand())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FieldError::Parse(s.to_string());
        match s.split_once(" + ") {
            None => Ok(Scalar::rational(s.parse().map_err(|_| err())?)),
            Some((a, rest)) => {
                let (b, radicand) = rest.split_once("*sqrt(").ok_or_else(err)?;
                let radicand = radicand.strip_suffix(')').ok_or_else(err)?;
                let a: Rational = a.parse().map_err(|_| err())?;
                let b: Rational = b.parse().map_err(|_| err())?;
                let d: Rational = radicand.parse().map_err(|_| err())?;
                Ok(Scalar::new(a, b, ExtensionTag::new(d)))
            }
        }
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

// Operator forms panic on extension mismatch and division by zero; the
// `checked_*` methods report them instead.
scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rational_part: -&self.rational_part,
            radical_part: -&self.radical_part,
            extension: self.extension.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}
