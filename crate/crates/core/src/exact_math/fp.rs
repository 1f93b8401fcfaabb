use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::{ExactScalar, Field, FieldKind, MathError};

/// An element of F_p for a runtime prime `p < 2^61`.
///
/// Combining elements of different moduli panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        let r = (v as i128).rem_euclid(p as i128) as u64;
        Fp { v: r, p }
    }
    pub fn from_u64(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }
    pub fn residue(self) -> u64 {
        self.v
    }
    pub fn modulus(self) -> u64 {
        self.p
    }
    #[inline]
    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "mixed prime fields F_{} and F_{}", self.p, o.p);
    }
    fn reduce_big(x: &BigInt, p: u64) -> u64 {
        x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.v, self.p)
    }
}

impl Field for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p
    }
    fn zero(p: &u64) -> Self {
        Fp { v: 0, p: *p }
    }
    fn one(p: &u64) -> Self {
        Fp { v: 1 % *p, p: *p }
    }
    fn from_i64(p: &u64, v: i64) -> Self {
        Fp::new(v, *p)
    }
    fn from_ratio(p: &u64, num: &BigInt, den: &BigInt) -> Option<Self> {
        let n = Fp { v: Self::reduce_big(num, *p), p: *p };
        let d = Fp { v: Self::reduce_big(den, *p), p: *p };
        n.divided(&d)
    }
    fn kind(p: &u64) -> FieldKind {
        FieldKind::Prime(*p)
    }
    fn ctx_of_kind(kind: FieldKind) -> Result<u64, MathError> {
        match kind {
            FieldKind::Prime(p) => Ok(p),
            FieldKind::Rational => Err(MathError::MixedFields("Fp".into(), "Q".into())),
        }
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    #[inline]
    fn is_one(&self) -> bool {
        self.v == 1
    }
    #[inline]
    fn plus(&self, o: &Self) -> Self {
        self.check(o);
        let s = self.v + o.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    #[inline]
    fn minus(&self, o: &Self) -> Self {
        self.check(o);
        Fp { v: if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v }, p: self.p }
    }
    #[inline]
    fn times(&self, o: &Self) -> Self {
        self.check(o);
        Fp { v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    #[inline]
    fn negated(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn inverse(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let (mut a, mut b) = (self.v as i128, self.p as i128);
        let (mut x0, mut x1) = (1i128, 0i128);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        Some(Fp { v: x0.rem_euclid(self.p as i128) as u64, p: self.p })
    }
    fn to_exact(&self) -> ExactScalar {
        ExactScalar::Prime { residue: self.v, modulus: self.p }
    }
    fn from_exact(p: &u64, s: &ExactScalar) -> Result<Self, MathError> {
        match s {
            ExactScalar::Prime { residue, modulus } if modulus == p => Ok(Fp { v: *residue, p: *p }),
            ExactScalar::Prime { modulus, .. } => {
                Err(MathError::MixedFields(format!("Fp:{p}"), format!("Fp:{modulus}")))
            }
            ExactScalar::Rational(r) => {
                if r.denom().is_zero() {
                    return Err(MathError::DivisionByZero);
                }
                Err(MathError::MixedFields(format!("Fp:{p}"), "Q".into()))
            }
        }
    }
    fn random<R: Rng + ?Sized>(p: &u64, rng: &mut R, _bound: i64) -> Self {
        Fp { v: rng.gen_range(0..*p), p: *p }
    }
}
