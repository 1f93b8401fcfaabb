use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{is_prime, Field, FieldKind, Fp, MathError, Rational};

/// A tagged exact scalar: a rational number or a residue modulo a prime.
///
/// Text form is `num/den` (integers print bare) or `r mod p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ExactScalar {
    pub fn rational(num: i64, den: i64) -> Self {
        ExactScalar::Rational(BigRational::new(num.into(), den.into()))
    }
    pub fn prime(v: i64, p: u64) -> Result<Self, MathError> {
        if !is_prime(p) || p >= 1 << 61 {
            return Err(MathError::BadModulus(p));
        }
        Ok(Fp::new(v, p).to_exact())
    }
    pub fn kind(&self) -> FieldKind {
        match self {
            ExactScalar::Rational(_) => FieldKind::Rational,
            ExactScalar::Prime { modulus, .. } => FieldKind::Prime(*modulus),
        }
    }
    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rational(r) => r.is_zero(),
            ExactScalar::Prime { residue, .. } => *residue == 0,
        }
    }
    fn same_field(&self, o: &Self) -> Result<FieldKind, MathError> {
        let (a, b) = (self.kind(), o.kind());
        if a != b {
            return Err(MathError::MixedFields(a.to_string(), b.to_string()));
        }
        Ok(a)
    }
    pub fn checked(&self, op: ScalarOp, o: &Self) -> Result<Self, MathError> {
        self.same_field(o)?;
        match (self, o) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => {
                let (a, b) = (Rational(a.clone()), Rational(b.clone()));
                Ok(apply(op, &a, &b)?.to_exact())
            }
            (
                ExactScalar::Prime { residue: a, modulus: p },
                ExactScalar::Prime { residue: b, .. },
            ) => {
                let (a, b) = (Fp::from_u64(*a, *p), Fp::from_u64(*b, *p));
                Ok(apply(op, &a, &b)?.to_exact())
            }
            _ => unreachable!(),
        }
    }
}

fn apply<F: Field>(op: ScalarOp, a: &F, b: &F) -> Result<F, MathError> {
    Ok(match op {
        ScalarOp::Add => a.plus(b),
        ScalarOp::Sub => a.minus(b),
        ScalarOp::Mul => a.times(b),
        ScalarOp::Div => a.divided(b).ok_or(MathError::DivisionByZero)?,
    })
}

/// One field operation on tagged scalars; mixing fields is an error.
pub fn scalar_arith(op: ScalarOp, a: &ExactScalar, b: &ExactScalar) -> Result<ExactScalar, MathError> {
    a.checked(op, b)
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) => write!(f, "{}", Rational(r.clone())),
            ExactScalar::Prime { residue, modulus } => write!(f, "{residue} mod {modulus}"),
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactScalar {
    type Err = MathError;
    fn from_str(s: &str) -> Result<Self, MathError> {
        let err = || MathError::Parse(s.to_string());
        if let Some((r, p)) = s.split_once("mod") {
            let r: i64 = r.trim().parse().map_err(|_| err())?;
            let p: u64 = p.trim().parse().map_err(|_| err())?;
            return ExactScalar::prime(r, p);
        }
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(ExactScalar::Rational(BigRational::new(n, d)))
    }
}
