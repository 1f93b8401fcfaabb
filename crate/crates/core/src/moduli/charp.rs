use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::exact_math::Field;

use super::ModuliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharPCase {
    Cusp2,
    Cusp3,
    Tacnode2,
}

impl CharPCase {
    pub const ALL: [CharPCase; 3] = [CharPCase::Cusp2, CharPCase::Cusp3, CharPCase::Tacnode2];

    pub fn prime(self) -> u64 {
        match self {
            CharPCase::Cusp3 => 3,
            _ => 2,
        }
    }
    pub fn is_cusp(self) -> bool {
        self != CharPCase::Tacnode2
    }
    pub fn branches(self) -> usize {
        if self.is_cusp() {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for CharPCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharPCase::Cusp2 => "cusp@2",
            CharPCase::Cusp3 => "cusp@3",
            CharPCase::Tacnode2 => "tacnode@2",
        })
    }
}

impl FromStr for CharPCase {
    type Err = ModuliError;
    fn from_str(s: &str) -> Result<Self, ModuliError> {
        CharPCase::ALL.into_iter().find(|c| c.to_string() == s).ok_or_else(|| ModuliError::BadArg(format!("unknown case `{s}`")))
    }
}

/// Laurent polynomial in one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent<F: Field> {
    pub terms: BTreeMap<i32, F>,
}

impl<F: Field> Laurent<F> {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }
    pub fn monomial(e: i32, c: F) -> Self {
        let mut l = Self::zero();
        l.add_term(e, c);
        l
    }
    fn add_term(&mut self, e: i32, c: F) {
        let v = match self.terms.remove(&e) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }
    pub fn from_ints(ctx: &F::Ctx, terms: &[(i32, i64)]) -> Self {
        let mut l = Self::zero();
        for &(e, c) in terms {
            l.add_term(e, F::from_i64(ctx, c));
        }
        l
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1.times(c2));
            }
        }
        r
    }
    pub fn pow(&self, k: u32, ctx: &F::Ctx) -> Self {
        (0..k).fold(Self::monomial(0, F::one(ctx)), |acc, _| acc.mul(self))
    }
    pub fn derivative(&self, ctx: &F::Ctx) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            r.add_term(e - 1, c.times(&F::from_i64(ctx, *e as i64)));
        }
        r
    }
}

impl<F: Field> fmt::Display for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(e, c)| format!("{}*t^{}", c, e)).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A vector field v = f_x d/dx + f_y d/dy on the singular curve together with
/// its claimed lift to the normalization (one Laurent coefficient per branch).
/// Coefficients are integers, reduced into whatever field is used to check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPVectorField {
    pub case: CharPCase,
    pub down_label: String,
    pub up_label: String,
    /// Terms (coeff, x exponent, y exponent) of f_x and f_y.
    pub down: [Vec<(i64, u32, u32)>; 2],
    /// Per branch, terms (exponent, coeff) of the coefficient of d/dt (d/ds).
    pub up: Vec<Vec<(i32, i64)>>,
}

/// The listed generators for each small-characteristic case.
pub fn charp_vector_fields(case: CharPCase) -> Vec<CharPVectorField> {
    let f = |dl: &str, ul: &str, fx: Vec<(i64, u32, u32)>, fy: Vec<(i64, u32, u32)>, up: Vec<Vec<(i32, i64)>>| CharPVectorField {
        case,
        down_label: dl.into(),
        up_label: ul.into(),
        down: [fx, fy],
        up,
    };
    match case {
        CharPCase::Cusp2 => vec![
            f("x^2*d_y", "t^2*d_t", vec![], vec![(1, 2, 0)], vec![vec![(2, 1)]]),
            f("y*d_y", "t*d_t", vec![], vec![(1, 0, 1)], vec![vec![(1, 1)]]),
            f("x*d_y", "d_t", vec![], vec![(1, 1, 0)], vec![vec![(0, 1)]]),
            f("d_y", "t^-2*d_t", vec![], vec![(1, 0, 0)], vec![vec![(-2, 1)]]),
        ],
        CharPCase::Cusp3 => vec![
            f("x^2*d_x", "t^2*d_t", vec![(1, 2, 0)], vec![], vec![vec![(2, 1)]]),
            f("x*d_x", "t*d_t", vec![(1, 1, 0)], vec![], vec![vec![(1, 1)]]),
            f("y*d_x", "d_t", vec![(1, 0, 1)], vec![], vec![vec![(0, 1)]]),
            f("d_x", "t^-1*d_t", vec![(1, 0, 0)], vec![], vec![vec![(-1, 1)]]),
        ],
        CharPCase::Tacnode2 => vec![
            f("y*d_x", "t^2*d_t", vec![(1, 0, 1)], vec![], vec![vec![(2, 1)], vec![]]),
            f("(x^2 - y)*d_x", "s^2*d_s", vec![(1, 2, 0), (-1, 0, 1)], vec![], vec![vec![], vec![(2, 1)]]),
            f("x*d_x", "t*d_t + s*d_s", vec![(1, 1, 0)], vec![], vec![vec![(1, 1)], vec![(1, 1)]]),
            f("d_x", "d_t + d_s", vec![(1, 0, 0)], vec![], vec![vec![(0, 1)], vec![(0, 1)]]),
        ],
    }
}
