use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;

use super::{ExactScalar, MathError};

/// Which exact field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl FieldKind {
    pub fn characteristic(self) -> u64 {
        match self {
            FieldKind::Rational => 0,
            FieldKind::Prime(p) => p,
        }
    }
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = MathError;
    fn from_str(s: &str) -> Result<Self, MathError> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(FieldKind::Rational);
        }
        let rest = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F"))
            .ok_or_else(|| MathError::Parse(s.to_string()))?;
        let p: u64 = rest.parse().map_err(|_| MathError::Parse(s.to_string()))?;
        if !super::is_prime(p) || p >= (1u64 << 61) {
            return Err(MathError::BadModulus(p));
        }
        Ok(FieldKind::Prime(p))
    }
}

/// An exact field element. The context carries runtime data (the modulus for
/// prime fields), so constants are built from a context rather than from
/// nothing.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Eq + Debug + Send + Sync + 'static;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    /// `num/den`, or `None` when `den` vanishes in the field.
    fn from_ratio(ctx: &Self::Ctx, num: &BigInt, den: &BigInt) -> Option<Self>;
    fn kind(ctx: &Self::Ctx) -> FieldKind;
    fn ctx_of_kind(kind: FieldKind) -> Result<Self::Ctx, MathError>;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;

    fn divided(&self, o: &Self) -> Option<Self> {
        o.inverse().map(|i| self.times(&i))
    }
    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }
    fn to_exact(&self) -> ExactScalar;
    fn from_exact(ctx: &Self::Ctx, s: &ExactScalar) -> Result<Self, MathError>;
    /// Uniform over the field for prime fields; integers in `[-bound, bound]` over Q.
    fn random<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R, bound: i64) -> Self;
    /// Parse a coefficient token: an integer or `num/den`.
    fn parse_coeff(ctx: &Self::Ctx, s: &str) -> Result<Self, MathError> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| MathError::Parse(s.to_string()))?;
        let d: BigInt = d.parse().map_err(|_| MathError::Parse(s.to_string()))?;
        Self::from_ratio(ctx, &n, &d).ok_or(MathError::DivisionByZero)
    }
    /// Coefficient token for polynomial text (integers print without a denominator).
    fn coeff_string(&self) -> String {
        self.to_string()
    }
    /// Whether the printed form starts with a minus sign.
    fn is_negative_display(&self) -> bool {
        false
    }
}
