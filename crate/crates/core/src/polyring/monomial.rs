use smallvec::SmallVec;

/// Dense exponent vector with cached weighted degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub deg: u32,
    pub e: SmallVec<[u8; 24]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { deg: 0, e: SmallVec::from_elem(0, n) }
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Product; exponent overflow beyond 255 panics.
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let e = self
            .e
            .iter()
            .zip(&o.e)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow (cap 255)"))
            .collect();
        Monomial { deg: self.deg + o.deg, e }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && self.e.iter().zip(&o.e).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self | o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial { deg: o.deg - self.deg, e: o.e.iter().zip(&self.e).map(|(b, a)| b - a).collect() }
    }

    pub fn lcm(&self, o: &Monomial, weights: &[u32]) -> Monomial {
        let e: SmallVec<[u8; 24]> = self.e.iter().zip(&o.e).map(|(a, b)| *a.max(b)).collect();
        let deg = e.iter().zip(weights).map(|(&x, &w)| x as u32 * w).sum();
        Monomial { deg, e }
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.e.iter().zip(&o.e).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.e.iter().map(|&x| x as u32).sum()
    }

    /// Bitmask of the support, for fast non-divisibility tests.
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &x) in self.e.iter().enumerate() {
            if x > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }
}
