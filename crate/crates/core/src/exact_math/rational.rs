use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{ExactScalar, Field, FieldKind, MathError};

/// An element of Q.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }
    pub fn int(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
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

impl Field for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        Rational(BigRational::zero())
    }
    fn one(_: &()) -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(_: &(), v: i64) -> Self {
        Rational::int(v)
    }
    fn from_ratio(_: &(), num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(num.clone(), den.clone())))
        }
    }
    fn kind(_: &()) -> FieldKind {
        FieldKind::Rational
    }
    fn ctx_of_kind(kind: FieldKind) -> Result<(), MathError> {
        match kind {
            FieldKind::Rational => Ok(()),
            other => Err(MathError::MixedFields("Q".into(), other.to_string())),
        }
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn plus(&self, o: &Self) -> Self {
        Rational(&self.0 + &o.0)
    }
    fn minus(&self, o: &Self) -> Self {
        Rational(&self.0 - &o.0)
    }
    fn times(&self, o: &Self) -> Self {
        Rational(&self.0 * &o.0)
    }
    fn negated(&self) -> Self {
        Rational(-&self.0)
    }
    fn inverse(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn to_exact(&self) -> ExactScalar {
        ExactScalar::Rational(self.0.clone())
    }
    fn from_exact(_: &(), s: &ExactScalar) -> Result<Self, MathError> {
        match s {
            ExactScalar::Rational(r) => Ok(Rational(r.clone())),
            ExactScalar::Prime { modulus, .. } => {
                Err(MathError::MixedFields("Q".into(), format!("Fp:{modulus}")))
            }
        }
    }
    fn random<R: Rng + ?Sized>(_: &(), rng: &mut R, bound: i64) -> Self {
        Rational::int(rng.gen_range(-bound..=bound))
    }
    fn is_negative_display(&self) -> bool {
        self.0.is_negative()
    }
}
