//! Seeded pseudo-random elements for property tests and axiom checks.
//!
//! Coordinates are small dyadic rationals `k/4`, so every backend
//! represents them exactly and sums of products stay exact in `f64`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::index_set::IndexSet;
use crate::scalar::Scalar;
use crate::talgebra::{BigradedElement, Shape, TAlgebra, TriangularElement};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// `k/4` with `k` uniform in `-8..=8`.
    pub fn dyadic<S: Scalar>(&mut self) -> S {
        S::from_ratio(self.rng.random_range(-8..=8), 4)
    }

    /// `k/4` with `k` uniform in `1..=8`.
    pub fn positive_dyadic<S: Scalar>(&mut self) -> S {
        S::from_ratio(self.rng.random_range(1..=8), 4)
    }

    pub fn element<S: Scalar>(&mut self, alg: &TAlgebra<S>) -> BigradedElement<S> {
        let r = alg.rank();
        let mut a = alg.zero();
        for i in 0..r {
            for j in 0..r {
                for v in a.component_mut(i, j).iter_mut() {
                    *v = self.dyadic();
                }
            }
        }
        a
    }

    /// `a + a^*` for a random `a`.
    pub fn hermitian<S: Scalar>(&mut self, alg: &TAlgebra<S>) -> BigradedElement<S> {
        let a = self.element(alg);
        a.add(&alg.involution(&a))
    }

    /// Random triangular element; the diagonal is positive when
    /// `positive_diagonal`, otherwise arbitrary.
    pub fn triangular<S: Scalar>(
        &mut self,
        alg: &TAlgebra<S>,
        shape: Shape,
        positive_diagonal: bool,
    ) -> TriangularElement<S> {
        let r = alg.rank();
        let mut a = alg.zero();
        for i in 0..r {
            for j in 0..r {
                if i == j || !shape.allows(i, j) {
                    continue;
                }
                for v in a.component_mut(i, j).iter_mut() {
                    *v = self.dyadic();
                }
            }
            a.component_mut(i, i)[0] = if positive_diagonal { self.positive_dyadic() } else { self.dyadic() };
        }
        TriangularElement::new(a, shape).expect("sampled with the right shape")
    }

    /// A proper triangular element whose zero-diagonal set is `zeroed`.
    pub fn proper_factor<S: Scalar>(
        &mut self,
        alg: &TAlgebra<S>,
        shape: Shape,
        zeroed: IndexSet,
    ) -> TriangularElement<S> {
        let t = self.triangular(alg, shape, true);
        let mut a = t.into_elem();
        for i in zeroed.positions() {
            for k in 0..alg.rank() {
                for v in a.component_mut(k, i).iter_mut() {
                    *v = S::zero();
                }
            }
        }
        TriangularElement::new(a, shape).expect("zeroing columns keeps the shape")
    }

    /// Uniformly random subset of `{1, ..., r}`.
    pub fn index_set(&mut self, r: usize) -> IndexSet {
        IndexSet::from_positions((0..r).filter(|_| self.rng.random_bool(0.5)))
    }

    /// Random subset that is neither empty nor everything (needs `r >= 2`).
    pub fn proper_nonempty_index_set(&mut self, r: usize) -> IndexSet {
        loop {
            let s = self.index_set(r);
            if !s.is_empty() && s.len() < r {
                return s;
            }
        }
    }
}
