use std::sync::Arc;

use crate::exact_math::Field;

use super::{PolyError, PolyRing, Polynomial};

/// Substitution homomorphism: source variable `i` goes to `images[i]`.
#[derive(Clone, Debug)]
pub struct RingMap<F: Field> {
    pub source: Arc<PolyRing<F>>,
    pub target: Arc<PolyRing<F>>,
    pub images: Vec<Polynomial<F>>,
}

impl<F: Field> RingMap<F> {
    pub fn new(source: &Arc<PolyRing<F>>, target: &Arc<PolyRing<F>>, images: Vec<Polynomial<F>>) -> Result<Self, PolyError> {
        if images.len() != source.nvars() {
            return Err(PolyError::Ring(format!("{} images for {} variables", images.len(), source.nvars())));
        }
        if images.iter().any(|p| !(Arc::ptr_eq(&p.ring, target) || *p.ring == **target)) {
            return Err(PolyError::RingMismatch);
        }
        Ok(RingMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(ring: &Arc<PolyRing<F>>) -> Self {
        let images = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        RingMap { source: ring.clone(), target: ring.clone(), images }
    }

    /// Build from `(source name, image)` pairs; unlisted variables map to the
    /// same-named target variable.
    pub fn by_name(source: &Arc<PolyRing<F>>, target: &Arc<PolyRing<F>>, pairs: Vec<(String, Polynomial<F>)>) -> Result<Self, PolyError> {
        let mut images: Vec<Option<Polynomial<F>>> = vec![None; source.nvars()];
        for (name, p) in pairs {
            let i = source.var_index(&name).ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
            images[i] = Some(p);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, p)| match p {
                Some(p) => Ok(p),
                None => {
                    let name = &source.vars[i].name;
                    target.var_index(name).map(|j| Polynomial::var(target, j)).ok_or_else(|| PolyError::UnknownVariable(name.clone()))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, images)
    }

    pub fn apply(&self, f: &Polynomial<F>) -> Result<Polynomial<F>, PolyError> {
        if !(Arc::ptr_eq(&f.ring, &self.source) || *f.ring == *self.source) {
            return Err(PolyError::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = vec![Vec::new(); self.images.len()];
        let mut acc = Polynomial::zero(&self.target);
        for (m, c) in &f.terms {
            let mut t = Polynomial::constant(&self.target, c.clone());
            for (i, &e) in m.e.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                if pw.is_empty() {
                    pw.push(Polynomial::one(&self.target));
                }
                while pw.len() <= e as usize {
                    let next = &pw[pw.len() - 1] * &self.images[i];
                    pw.push(next);
                }
                t = &t * &pw[e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &RingMap<F>) -> Result<RingMap<F>, PolyError> {
        let images = inner.images.iter().map(|p| self.apply(p)).collect::<Result<Vec<_>, _>>()?;
        RingMap::new(&inner.source, &self.target, images)
    }
}
