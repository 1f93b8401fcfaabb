use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Field, MathError, Rational};

/// Row-major sparse matrix; each row is sorted by column with no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F: Field> {
    pub nrows: usize,
    pub ncols: usize,
    pub ctx: F::Ctx,
    rows: Vec<Vec<(usize, F)>>,
}

type Row<F> = Vec<(usize, F)>;

/// `a - c * b` on sorted sparse rows.
fn axpy<F: Field>(a: &Row<F>, c: &F, b: &Row<F>) -> Row<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.times(&b[j].1).negated()));
            j += 1;
        } else {
            let v = a[i].1.minus(&c.times(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(ctx: &F::Ctx, nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, ctx: ctx.clone(), rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(ctx: &F::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.rows[i].push((i, F::one(ctx)));
        }
        m
    }

    pub fn from_dense(ctx: &F::Ctx, rows: &[Vec<F>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(ctx, rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged dense matrix");
            m.rows[i] = r.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        }
        m
    }

    /// Build from triplets; repeated positions are summed.
    pub fn from_triplets(ctx: &F::Ctx, nrows: usize, ncols: usize, trips: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut acc: Vec<HashMap<usize, F>> = vec![HashMap::new(); nrows];
        for (r, c, v) in trips {
            assert!(r < nrows && c < ncols, "triplet out of range");
            let e = acc[r].entry(c).or_insert_with(|| F::zero(ctx));
            *e = e.plus(&v);
        }
        let rows = acc
            .into_iter()
            .map(|h| {
                let mut r: Row<F> = h.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                r.sort_by_key(|e| e.0);
                r
            })
            .collect();
        SparseMatrix { nrows, ncols, ctx: ctx.clone(), rows }
    }

    pub fn push_row(&mut self, mut row: Vec<(usize, F)>) {
        row.retain(|e| !e.1.is_zero());
        row.sort_by_key(|e| e.0);
        assert!(row.last().is_none_or(|e| e.0 < self.ncols));
        self.rows.push(row);
        self.nrows += 1;
    }

    pub fn row(&self, i: usize) -> &[(usize, F)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        match self.rows[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => F::zero(&self.ctx),
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, MathError> {
        if v.len() != self.ncols {
            return Err(MathError::Dimension(format!("{} columns, vector of length {}", self.ncols, v.len())));
        }
        Ok(self
            .rows
            .iter()
            .map(|r| r.iter().fold(F::zero(&self.ctx), |acc, (j, a)| acc.plus(&a.times(&v[*j]))))
            .collect())
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Row<F>> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                rows[*j].push((i, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, ctx: self.ctx.clone(), rows }
    }

    /// Echelon form with monic pivots, keyed by pivot column.
    fn echelon(&self) -> HashMap<usize, Row<F>> {
        let mut order: Vec<usize> = (0..self.nrows).collect();
        order.sort_by_key(|&i| self.rows[i].len());
        let mut piv: HashMap<usize, Row<F>> = HashMap::new();
        for i in order {
            let mut r = self.rows[i].clone();
            while let Some((c, lead)) = r.first().cloned() {
                match piv.get(&c) {
                    Some(p) => r = axpy(&r, &lead, p),
                    None => {
                        let inv = lead.inverse().expect("nonzero pivot");
                        for e in r.iter_mut() {
                            e.1 = e.1.times(&inv);
                        }
                        piv.insert(c, r);
                        break;
                    }
                }
            }
        }
        piv
    }

    /// Rank by sparse elimination.
    pub fn rank(&self) -> usize {
        self.echelon().len()
    }

    /// Rank and a basis of the right kernel `{v : M v = 0}`.
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<F>>) {
        let piv = self.echelon();
        let mut cols: Vec<usize> = piv.keys().copied().collect();
        cols.sort_unstable();
        // back-substitute into reduced form, last pivot first
        let mut reduced: HashMap<usize, Row<F>> = HashMap::new();
        for &c in cols.iter().rev() {
            let mut r = piv[&c].clone();
            let mut k = 1;
            while k < r.len() {
                let (cc, v) = r[k].clone();
                if let Some(p) = reduced.get(&cc) {
                    r = axpy(&r, &v, p);
                } else {
                    k += 1;
                }
            }
            reduced.insert(c, r);
        }
        let is_pivot: std::collections::HashSet<usize> = cols.iter().copied().collect();
        let mut kernel = Vec::new();
        for free in (0..self.ncols).filter(|j| !is_pivot.contains(j)) {
            let mut v = vec![F::zero(&self.ctx); self.ncols];
            v[free] = F::one(&self.ctx);
            for &c in &cols {
                if let Ok(k) = reduced[&c].binary_search_by_key(&free, |e| e.0) {
                    v[c] = reduced[&c][k].1.negated();
                }
            }
            kernel.push(v);
        }
        (cols.len(), kernel)
    }
}

/// Fraction-free (Bareiss) rank of a rational matrix, after clearing
/// denominators row by row.
pub fn bareiss_rank(m: &SparseMatrix<Rational>) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .to_dense()
        .into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, x| num_integer::lcm(l, x.denom().clone()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let (nr, nc) = (m.nrows, m.ncols);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..nc {
        if rank == nr {
            break;
        }
        let Some(p) = (rank..nr).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..nr {
            for j in col + 1..nc {
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}
