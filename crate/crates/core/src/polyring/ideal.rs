use std::collections::HashMap;
use std::sync::Arc;

use crate::exact_math::{Field, SparseMatrix};

use super::groebner::{buchberger, normal_form_with_quotients, GroebnerBasis};
use super::hilbert::{monomials_of_degree, standard_counts};
use super::{PolyError, PolyRing, Polynomial};

/// Named generators of an ideal plus a tag naming the equation family that
/// produced them.
#[derive(Clone, Debug)]
pub struct IdealPresentation<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub gens: Vec<(String, Polynomial<F>)>,
    pub provenance: String,
}

/// Three-valued ideal membership.
#[derive(Clone, Debug)]
pub enum Membership<F: Field> {
    /// `f = sum q_i g_i` over the Groebner basis `basis`.
    Member { quotients: Vec<Polynomial<F>>, basis: Vec<Polynomial<F>> },
    NotMember { remainder: Polynomial<F> },
    /// Basis truncated below the degree needed to decide.
    Unknown { cap: u32 },
}

impl<F: Field> Membership<F> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
    pub fn is_unknown(&self) -> bool {
        matches!(self, Membership::Unknown { .. })
    }
}

impl<F: Field> IdealPresentation<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, provenance: impl Into<String>) -> Self {
        IdealPresentation { ring: ring.clone(), gens: Vec::new(), provenance: provenance.into() }
    }

    /// Add a generator; zero polynomials are skipped.
    pub fn push(&mut self, name: impl Into<String>, p: Polynomial<F>) {
        assert!(Arc::ptr_eq(&p.ring, &self.ring) || *p.ring == *self.ring, "generator from another ring");
        if !p.is_zero() {
            self.gens.push((name.into(), p));
        }
    }

    pub fn polys(&self) -> Vec<Polynomial<F>> {
        self.gens.iter().map(|g| g.1.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Same generators in a ring with the same variables and another order.
    pub fn with_ring(&self, ring: &Arc<PolyRing<F>>) -> Self {
        IdealPresentation {
            ring: ring.clone(),
            gens: self.gens.iter().map(|(n, p)| (n.clone(), p.to_ring(ring))).collect(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn groebner(&self, cap: Option<u32>) -> GroebnerBasis<F> {
        if self.gens.is_empty() {
            return GroebnerBasis { ring: self.ring.clone(), polys: Vec::new(), complete: true, cap };
        }
        buchberger(&self.polys(), cap)
    }

    pub fn homogeneity_check(&self) -> bool {
        self.gens.iter().all(|g| g.1.is_homogeneous())
    }

    /// Membership using a basis computed up to `cap`. The default is the
    /// degree of `f` for homogeneous ideals, twice that plus 2 otherwise.
    pub fn member(&self, f: &Polynomial<F>, cap: Option<u32>) -> Membership<F> {
        let homog = self.homogeneity_check();
        let deg = f.degree().unwrap_or(0);
        let cap = cap.unwrap_or(if homog { deg } else { 2 * deg + 2 });
        let gb = self.groebner(Some(cap));
        member_in(&gb, homog, f)
    }

    /// Graded standard monomial counts in degrees `0..=up_to`.
    ///
    /// Homogeneous ideals need a basis only up to `up_to`; otherwise a complete
    /// basis (cap `2*up_to + 2`) is required and its absence is reported.
    pub fn standard_monomial_counts(&self, up_to: u32) -> Result<Vec<u64>, PolyError> {
        let homog = self.homogeneity_check();
        let cap = if homog { up_to } else { 2 * up_to + 2 };
        let gb = self.groebner(Some(cap));
        if !homog && !gb.complete {
            return Err(PolyError::Truncated(cap));
        }
        Ok(standard_counts(&gb.leading_monomials(), &self.ring.weights(), up_to))
    }

    /// Coefficients of the variables in each generator (rows = generators).
    pub fn linear_part(&self) -> Result<SparseMatrix<F>, PolyError> {
        let n = self.ring.nvars();
        let mut m = SparseMatrix::zeros(&self.ring.ctx, 0, n);
        for (name, g) in &self.gens {
            if !g.constant_term().is_zero() {
                return Err(PolyError::NotAtOrigin(name.clone()));
            }
            let row = g
                .terms
                .iter()
                .filter(|(mo, _)| mo.total_degree() == 1)
                .map(|(mo, c)| (mo.e.iter().position(|&x| x == 1).unwrap(), c.clone()))
                .collect();
            m.push_row(row);
        }
        Ok(m)
    }

    /// Dimension of the Zariski tangent space at the origin.
    pub fn tangent_dimension(&self) -> Result<usize, PolyError> {
        Ok(self.ring.nvars() - self.linear_part()?.rank())
    }

    /// Degrees of a minimal homogeneous generating set, up to `up_to`, as
    /// `dim I_d - dim (m I)_d`.
    pub fn minimal_generator_degrees(&self, up_to: u32) -> Result<Vec<u32>, PolyError> {
        if !self.homogeneity_check() {
            return Err(PolyError::NotHomogeneous);
        }
        let w = self.ring.weights();
        let mut out = Vec::new();
        for d in 1..=up_to {
            let mut cols: HashMap<Vec<u8>, usize> = HashMap::new();
            let mut all = SparseMatrix::zeros(&self.ring.ctx, 0, 0);
            let mut rows_all: Vec<Vec<(usize, F)>> = Vec::new();
            let mut rows_m: Vec<Vec<(usize, F)>> = Vec::new();
            for (_, g) in &self.gens {
                let gd = g.degree().unwrap();
                if gd > d {
                    continue;
                }
                for mono in monomials_of_degree(&w, d - gd) {
                    let m = self.ring.monomial(&mono);
                    let prod = g.mul_monomial(&m, &self.ring.one_scalar());
                    let row: Vec<(usize, F)> = prod
                        .terms
                        .iter()
                        .map(|(t, c)| {
                            let k = cols.len();
                            (*cols.entry(t.e.to_vec()).or_insert(k), c.clone())
                        })
                        .collect();
                    if !m.is_one() {
                        rows_m.push(row.clone());
                    }
                    rows_all.push(row);
                }
            }
            all.ncols = cols.len();
            let mut mi = all.clone();
            for r in rows_all {
                all.push_row(r);
            }
            for r in rows_m {
                mi.push_row(r);
            }
            let k = all.rank() - mi.rank();
            out.extend(std::iter::repeat_n(d, k));
        }
        Ok(out)
    }

    /// Partial derivatives of the generators evaluated at a point.
    pub fn jacobian_at(&self, point: &[F]) -> SparseMatrix<F> {
        let n = self.ring.nvars();
        let mut m = SparseMatrix::zeros(&self.ring.ctx, 0, n);
        for (_, g) in &self.gens {
            let row = (0..n).map(|i| (i, g.derivative(i).eval(point))).collect();
            m.push_row(row);
        }
        m
    }

    /// Whether every generator vanishes at the point.
    pub fn vanishes_at(&self, point: &[F]) -> bool {
        self.gens.iter().all(|g| g.1.eval(point).is_zero())
    }
}

/// Membership against an already computed basis.
pub fn member_in<F: Field>(gb: &GroebnerBasis<F>, homogeneous: bool, f: &Polynomial<F>) -> Membership<F> {
    let red = normal_form_with_quotients(f, &gb.polys);
    if red.remainder.is_zero() {
        return Membership::Member { quotients: red.quotients, basis: gb.polys.clone() };
    }
    let decisive = gb.complete
        || (homogeneous && gb.cap.is_some_and(|c| f.degree().unwrap_or(0) <= c));
    if decisive {
        Membership::NotMember { remainder: red.remainder }
    } else {
        Membership::Unknown { cap: gb.cap.unwrap_or(0) }
    }
}
