//! Generic T-algebras described by component-wise product tensors.
//!
//! An instance of rank `r` is a direct sum of components `A_ij`, each a
//! coordinate space of dimension `dim(i, j)`. Multiplication of an `A_ij`
//! coordinate vector by an `A_jk` coordinate vector is a bilinear map into
//! `A_ik`, given as a sparse list of [`ProductTerm`]s. The involution maps
//! `A_ij` to `A_ji` by a sparse list of [`InvolutionTerm`]s. Diagonal
//! components are one-dimensional and their single coordinate is `ρ_i`.
//!
//! Component indices in this API are zero-based positions; JSON and display
//! use 1-based labels.

mod axioms;
mod element;
mod triangular;

pub use axioms::{check_axioms, AxiomEntry, AxiomReport};
pub use element::BigradedElement;
pub use triangular::{Shape, TriangularElement};

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::scalar::Scalar;

/// `out[out] += coeff * left[left] * right[right]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductTerm<S> {
    pub out: usize,
    pub left: usize,
    pub right: usize,
    pub coeff: S,
}

impl<S: Scalar> ProductTerm<S> {
    pub fn unit(out: usize, left: usize, right: usize) -> Self {
        ProductTerm { out, left, right, coeff: S::one() }
    }
}

/// `out[out] += coeff * input[input]`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvolutionTerm<S> {
    pub out: usize,
    pub input: usize,
    pub coeff: S,
}

#[derive(Debug, Clone)]
pub struct TAlgebra<S> {
    rank: usize,
    dims: Vec<usize>,
    products: Vec<Vec<ProductTerm<S>>>,
    involution: Vec<Vec<InvolutionTerm<S>>>,
    label: String,
}

/// Incremental construction of a [`TAlgebra`], validated by [`build`](Self::build).
#[derive(Debug, Clone)]
pub struct TAlgebraBuilder<S> {
    inner: TAlgebra<S>,
}

impl<S: Scalar> TAlgebraBuilder<S> {
    pub fn new(rank: usize, label: impl Into<String>) -> Self {
        let mut dims = vec![0; rank * rank];
        for i in 0..rank {
            dims[i * rank + i] = 1;
        }
        TAlgebraBuilder {
            inner: TAlgebra {
                rank,
                dims,
                products: vec![Vec::new(); rank * rank * rank],
                involution: vec![Vec::new(); rank * rank],
                label: label.into(),
            },
        }
    }

    /// Sets `dim(i, j)` and `dim(j, i)`.
    pub fn dim(mut self, i: usize, j: usize, d: usize) -> Self {
        let r = self.inner.rank;
        self.inner.dims[i * r + j] = d;
        self.inner.dims[j * r + i] = d;
        self
    }

    pub fn product(mut self, i: usize, j: usize, k: usize, terms: Vec<ProductTerm<S>>) -> Self {
        let idx = self.inner.product_index(i, j, k);
        self.inner.products[idx] = terms;
        self
    }

    pub fn involution(mut self, i: usize, j: usize, terms: Vec<InvolutionTerm<S>>) -> Self {
        let r = self.inner.rank;
        self.inner.involution[i * r + j] = terms;
        self
    }

    /// Checks bigradation bounds. Algebraic axioms are left to
    /// [`check_axioms`].
    pub fn build(self) -> Result<TAlgebra<S>> {
        let alg = self.inner;
        let r = alg.rank;
        if r == 0 {
            return Err(Error::BadDims("rank must be positive".into()));
        }
        if r > crate::index_set::MAX_RANK {
            return Err(Error::RankTooLarge { rank: r, bound: crate::index_set::MAX_RANK });
        }
        for i in 0..r {
            if alg.dim(i, i) != 1 {
                return Err(Error::BadDims(format!("diagonal component {} must be one-dimensional", i + 1)));
            }
            for j in 0..r {
                if alg.dim(i, j) != alg.dim(j, i) {
                    return Err(Error::BadDims(format!("dim({},{}) differs from its transpose", i + 1, j + 1)));
                }
                for t in &alg.involution[i * r + j] {
                    if t.input >= alg.dim(i, j) || t.out >= alg.dim(j, i) {
                        return Err(Error::BadDims(format!("involution term out of range at ({},{})", i + 1, j + 1)));
                    }
                }
                for k in 0..r {
                    for t in &alg.products[alg.product_index(i, j, k)] {
                        if t.left >= alg.dim(i, j) || t.right >= alg.dim(j, k) || t.out >= alg.dim(i, k) {
                            return Err(Error::BadDims(format!(
                                "product term out of range at ({},{},{})",
                                i + 1,
                                j + 1,
                                k + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(alg)
    }
}

impl<S: Scalar> TAlgebra<S> {
    fn product_index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.rank + j) * self.rank + k
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.dims[i * self.rank + j]
    }

    /// Dimension of the Hermitian subspace.
    pub fn hermitian_dim(&self) -> usize {
        let r = self.rank;
        (0..r).map(|i| (i..r).map(|j| self.dim(i, j)).sum::<usize>()).sum()
    }

    pub fn product_terms(&self, i: usize, j: usize, k: usize) -> &[ProductTerm<S>] {
        &self.products[self.product_index(i, j, k)]
    }

    pub fn involution_terms(&self, i: usize, j: usize) -> &[InvolutionTerm<S>] {
        &self.involution[i * self.rank + j]
    }

    /// Product of an `A_ij` vector by an `A_jk` vector, in `A_ik`.
    pub fn component_product(&self, i: usize, j: usize, k: usize, a: &[S], b: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim(i, k)];
        self.accumulate_product(i, j, k, a, b, &mut out);
        out
    }

    fn accumulate_product(&self, i: usize, j: usize, k: usize, a: &[S], b: &[S], out: &mut [S]) {
        for t in self.product_terms(i, j, k) {
            let (x, y) = (&a[t.left], &b[t.right]);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            out[t.out] = out[t.out].clone() + t.coeff.clone() * x.clone() * y.clone();
        }
    }

    /// Involution of an `A_ij` vector, in `A_ji`.
    pub fn component_involution(&self, i: usize, j: usize, a: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim(j, i)];
        for t in self.involution_terms(i, j) {
            out[t.out] = out[t.out].clone() + t.coeff.clone() * a[t.input].clone();
        }
        out
    }

    pub fn zero(&self) -> BigradedElement<S> {
        BigradedElement::zero_with(self.rank, |i, j| self.dim(i, j))
    }

    /// `e_i`, the unit of `A_ii`.
    pub fn unit(&self, i: usize) -> BigradedElement<S> {
        let mut e = self.zero();
        e.component_mut(i, i)[0] = S::one();
        e
    }

    /// The identity `e = e_1 + ... + e_r`.
    pub fn identity(&self) -> BigradedElement<S> {
        self.principal_identity(IndexSet::empty())
    }

    /// `Σ_{i ∉ zeroed} e_i`, the identity of the principal subalgebra that
    /// discards the indices in `zeroed`.
    pub fn principal_identity(&self, zeroed: IndexSet) -> BigradedElement<S> {
        let mut e = self.zero();
        for i in 0..self.rank {
            if !zeroed.contains(i) {
                e.component_mut(i, i)[0] = S::one();
            }
        }
        e
    }

    pub(crate) fn conforms(&self, a: &BigradedElement<S>) -> Result<()> {
        if a.rank() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "element of rank {} in an algebra of rank {}",
                a.rank(),
                self.rank
            )));
        }
        for i in 0..self.rank {
            for j in 0..self.rank {
                if a.component(i, j).len() != self.dim(i, j) {
                    return Err(Error::DimensionMismatch(format!(
                        "component ({},{}) has length {}, expected {}",
                        i + 1,
                        j + 1,
                        a.component(i, j).len(),
                        self.dim(i, j)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Bigraded product `(ab)_ik = Σ_j a_ij b_jk`.
    pub fn star(&self, a: &BigradedElement<S>, b: &BigradedElement<S>) -> Result<BigradedElement<S>> {
        self.conforms(a)?;
        self.conforms(b)?;
        Ok(self.star_unchecked(a, b))
    }

    pub(crate) fn star_unchecked(&self, a: &BigradedElement<S>, b: &BigradedElement<S>) -> BigradedElement<S> {
        let r = self.rank;
        let mut out = self.zero();
        for i in 0..r {
            for j in 0..r {
                let aij = a.component(i, j);
                if aij.is_empty() || aij.iter().all(|v| v.is_zero()) {
                    continue;
                }
                for k in 0..r {
                    if self.dim(i, k) == 0 {
                        continue;
                    }
                    let bjk = b.component(j, k);
                    if bjk.is_empty() {
                        continue;
                    }
                    self.accumulate_product(i, j, k, aij, bjk, out.component_mut(i, k));
                }
            }
        }
        out
    }

    pub fn involution(&self, a: &BigradedElement<S>) -> BigradedElement<S> {
        let r = self.rank;
        let mut out = self.zero();
        for i in 0..r {
            for j in 0..r {
                if self.dim(i, j) > 0 {
                    *out.component_mut(j, i) = self.component_involution(i, j, a.component(i, j));
                }
            }
        }
        out
    }

    /// `ρ_i(a_ii)`.
    pub fn rho(&self, a: &BigradedElement<S>, i: usize) -> S {
        a.component(i, i)[0].clone()
    }

    pub fn diagonal(&self, a: &BigradedElement<S>) -> Vec<S> {
        (0..self.rank).map(|i| self.rho(a, i)).collect()
    }

    pub fn trace(&self, a: &BigradedElement<S>) -> S {
        (0..self.rank).fold(S::zero(), |acc, i| acc + self.rho(a, i))
    }

    /// `tr(ab^*) = Σ ρ_i(a_ij b_ij^*)`.
    pub fn inner(&self, a: &BigradedElement<S>, b: &BigradedElement<S>) -> Result<S> {
        self.conforms(a)?;
        self.conforms(b)?;
        Ok(self.inner_unchecked(a, b))
    }

    pub(crate) fn inner_unchecked(&self, a: &BigradedElement<S>, b: &BigradedElement<S>) -> S {
        let r = self.rank;
        let mut acc = S::zero();
        for i in 0..r {
            for j in 0..r {
                if self.dim(i, j) == 0 {
                    continue;
                }
                let bt = self.component_involution(i, j, b.component(i, j));
                acc = acc + self.component_product(i, j, i, a.component(i, j), &bt)[0].clone();
            }
        }
        acc
    }

    pub fn norm_sq(&self, a: &BigradedElement<S>) -> S {
        self.inner_unchecked(a, a)
    }

    /// Largest coordinate of `b - b^*`.
    pub fn hermitian_defect(&self, b: &BigradedElement<S>) -> S {
        b.sub(&self.involution(b)).max_abs()
    }

    /// Rejects `b` unless it equals its involution, exactly for exact
    /// scalars and up to a scale-relative `1e-9` otherwise.
    pub fn check_hermitian(&self, b: &BigradedElement<S>) -> Result<()> {
        self.conforms(b)?;
        let defect = self.hermitian_defect(b);
        let scale = S::max_of(S::one(), b.max_abs());
        if defect > S::tolerance(1e-9) * scale {
            return Err(Error::NotHermitian { asymmetry: defect.to_f64_lossy() });
        }
        Ok(())
    }

    /// `Q_a(b) = ½(a(ba^*) + a(ab) − (aa)b)` symmetrized.
    pub fn quad_map(&self, a: &BigradedElement<S>, b: &BigradedElement<S>) -> Result<BigradedElement<S>> {
        self.conforms(a)?;
        self.check_hermitian(b)?;
        Ok(self.quad_map_unchecked(a, b))
    }

    pub(crate) fn quad_map_unchecked(&self, a: &BigradedElement<S>, b: &BigradedElement<S>) -> BigradedElement<S> {
        let at = self.involution(a);
        let ba = self.star_unchecked(b, &at);
        let first = self.star_unchecked(a, &ba);
        let ab = self.star_unchecked(a, b);
        let second = self.star_unchecked(a, &ab);
        let aa = self.star_unchecked(a, a);
        let third = self.star_unchecked(&aa, b);
        let m = first.add(&second).sub(&third);
        let half = S::one() / (S::one() + S::one());
        m.add(&self.involution(&m)).scale(&half)
    }

    /// The algebra with reversed indices, `A^D_ij = A_{r+1-i, r+1-j}`.
    /// Upper triangular elements of the result are lower triangular
    /// elements of `self` under [`reverse_indices`](Self::reverse_indices).
    pub fn dual_algebra(&self) -> TAlgebra<S> {
        let r = self.rank;
        let rev = |i: usize| r - 1 - i;
        let mut out = TAlgebra {
            rank: r,
            dims: vec![0; r * r],
            products: vec![Vec::new(); r * r * r],
            involution: vec![Vec::new(); r * r],
            label: format!("dual of {}", self.label),
        };
        for i in 0..r {
            for j in 0..r {
                out.dims[i * r + j] = self.dim(rev(i), rev(j));
                out.involution[i * r + j] = self.involution_terms(rev(i), rev(j)).to_vec();
                for k in 0..r {
                    let idx = out.product_index(i, j, k);
                    out.products[idx] = self.product_terms(rev(i), rev(j), rev(k)).to_vec();
                }
            }
        }
        out
    }

    /// Moves component `(i, j)` to `(r-1-i, r-1-j)`; the element map into
    /// [`dual_algebra`](Self::dual_algebra).
    pub fn reverse_indices(&self, a: &BigradedElement<S>) -> BigradedElement<S> {
        let r = self.rank;
        let mut out = BigradedElement::zero_with(r, |i, j| self.dim(r - 1 - i, r - 1 - j));
        for i in 0..r {
            for j in 0..r {
                *out.component_mut(r - 1 - i, r - 1 - j) = a.component(i, j).to_vec();
            }
        }
        out
    }

    /// Converts the coefficients to another scalar type.
    pub fn map_scalar<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> TAlgebra<T> {
        TAlgebra {
            rank: self.rank,
            dims: self.dims.clone(),
            products: self
                .products
                .iter()
                .map(|ts| {
                    ts.iter()
                        .map(|t| ProductTerm { out: t.out, left: t.left, right: t.right, coeff: f(&t.coeff) })
                        .collect()
                })
                .collect(),
            involution: self
                .involution
                .iter()
                .map(|ts| ts.iter().map(|t| InvolutionTerm { out: t.out, input: t.input, coeff: f(&t.coeff) }).collect())
                .collect(),
            label: self.label.clone(),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Full `n x n` matrix algebra with scalar components.
    pub(crate) fn matrix_algebra(n: usize) -> TAlgebra<f64> {
        let mut b = TAlgebraBuilder::new(n, format!("M{n}"));
        for i in 0..n {
            for j in 0..n {
                b = b.dim(i, j, 1).involution(i, j, vec![InvolutionTerm { out: 0, input: 0, coeff: 1.0 }]);
                for k in 0..n {
                    b = b.product(i, j, k, vec![ProductTerm::unit(0, 0, 0)]);
                }
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let alg = matrix_algebra(3);
        let mut a = alg.zero();
        for i in 0..3 {
            for j in 0..3 {
                a.component_mut(i, j)[0] = (3 * i + j) as f64;
            }
        }
        let e = alg.identity();
        assert_eq!(alg.star(&e, &a).unwrap(), a);
        assert_eq!(alg.star(&a, &e).unwrap(), a);
        assert!(alg.star(&alg.zero(), &a).unwrap().is_zero());
    }

    #[test]
    fn inner_of_units_is_kronecker() {
        let alg = matrix_algebra(3);
        for i in 0..3 {
            for j in 0..3 {
                let v = alg.inner(&alg.unit(i), &alg.unit(j)).unwrap();
                assert_eq!(v, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn quad_map_by_identity_is_identity() {
        let alg = matrix_algebra(2);
        let mut b = alg.zero();
        b.component_mut(0, 0)[0] = 2.0;
        b.component_mut(0, 1)[0] = 0.5;
        b.component_mut(1, 0)[0] = 0.5;
        assert_eq!(alg.quad_map(&alg.identity(), &b).unwrap(), b);
        b.component_mut(1, 0)[0] = 0.0;
        assert!(matches!(alg.quad_map(&alg.identity(), &b), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn builder_rejects_bad_shapes() {
        let b = TAlgebraBuilder::<f64>::new(2, "bad").dim(0, 0, 2);
        assert!(b.build().is_err());
        let b = TAlgebraBuilder::<f64>::new(2, "bad").product(0, 0, 0, vec![ProductTerm::unit(0, 0, 3)]);
        assert!(b.build().is_err());
    }
}
