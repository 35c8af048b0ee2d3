use serde::Serialize;

use super::{BigradedElement, TAlgebra};
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Upper,
    Lower,
}

impl Shape {
    /// Whether component `(i, j)` may be nonzero.
    pub fn allows(self, i: usize, j: usize) -> bool {
        match self {
            Shape::Upper => i <= j,
            Shape::Lower => i >= j,
        }
    }

    pub fn flip(self) -> Shape {
        match self {
            Shape::Upper => Shape::Lower,
            Shape::Lower => Shape::Upper,
        }
    }
}

/// A bigraded element known to be upper or lower triangular.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularElement<S> {
    elem: BigradedElement<S>,
    shape: Shape,
}

impl<S: Scalar> TriangularElement<S> {
    /// Fails unless every component on the wrong side of the diagonal is zero.
    pub fn new(elem: BigradedElement<S>, shape: Shape) -> Result<Self> {
        if !elem.vanishes_outside(|i, j| shape.allows(i, j)) {
            return Err(Error::DimensionMismatch(format!("element is not {shape:?} triangular")));
        }
        Ok(TriangularElement { elem, shape })
    }

    pub fn elem(&self) -> &BigradedElement<S> {
        &self.elem
    }

    pub fn into_elem(self) -> BigradedElement<S> {
        self.elem
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn rank(&self) -> usize {
        self.elem.rank()
    }

    /// The values `ρ_i(a_ii)`.
    pub fn diag(&self) -> Vec<S> {
        (0..self.rank()).map(|i| self.elem.component(i, i)[0].clone()).collect()
    }

    /// Every diagonal value is `> 0` (`strict`) or `>= 0`.
    pub fn has_positive_diagonal(&self, strict: bool) -> bool {
        self.diag()
            .iter()
            .all(|d| if strict { *d > S::zero() } else { *d >= S::zero() })
    }

    /// Off-diagonal part of column `i`: `a_ki` for `k < i` (upper) or
    /// `k > i` (lower).
    fn column_positions(&self, i: usize) -> Vec<usize> {
        match self.shape {
            Shape::Upper => (0..i).collect(),
            Shape::Lower => ((i + 1)..self.rank()).collect(),
        }
    }

    pub fn column_vanishes(&self, i: usize, tol: &S) -> bool {
        self.column_positions(i)
            .into_iter()
            .all(|k| self.elem.component(k, i).iter().all(|v| v.abs() <= *tol))
    }

    /// `{i : ρ_i(a_ii) <= tol}`.
    pub fn zero_set(&self, tol: &S) -> IndexSet {
        IndexSet::from_positions(
            self.diag()
                .iter()
                .enumerate()
                .filter(|(_, d)| **d <= *tol)
                .map(|(i, _)| i),
        )
    }

    /// A zero diagonal value forces the whole column to vanish.
    pub fn is_proper(&self, tol: &S) -> bool {
        self.has_positive_diagonal(false) && self.zero_set(tol).positions().all(|i| self.column_vanishes(i, tol))
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TriangularElement<T> {
        TriangularElement { elem: self.elem.map_scalar(f), shape: self.shape }
    }
}

impl<S: Scalar> TAlgebra<S> {
    pub fn involution_triangular(&self, t: &TriangularElement<S>) -> TriangularElement<S> {
        TriangularElement { elem: self.involution(t.elem()), shape: t.shape().flip() }
    }

    pub fn star_triangular(&self, a: &TriangularElement<S>, b: &TriangularElement<S>) -> Result<TriangularElement<S>> {
        if a.shape() != b.shape() {
            return Err(Error::DimensionMismatch("product of upper and lower triangular elements".into()));
        }
        Ok(TriangularElement { elem: self.star(a.elem(), b.elem())?, shape: a.shape() })
    }

    /// Inverse of a triangular element with positive diagonal, by
    /// back substitution over components.
    pub fn triangular_inverse(&self, u: &TriangularElement<S>) -> Result<TriangularElement<S>> {
        self.conforms(u.elem())?;
        let r = self.rank();
        let diag = u.diag();
        if let Some(i) = diag.iter().position(|d| *d <= S::zero()) {
            return Err(Error::NotInvertible { index: i + 1 });
        }
        let mut v = self.zero();
        for i in 0..r {
            v.component_mut(i, i)[0] = S::one() / diag[i].clone();
        }
        let a = u.elem();
        match u.shape() {
            Shape::Upper => {
                for i in (0..r).rev() {
                    for j in (i + 1)..r {
                        if self.dim(i, j) == 0 {
                            continue;
                        }
                        let mut acc = vec![S::zero(); self.dim(i, j)];
                        for k in (i + 1)..=j {
                            let p = self.component_product(i, k, j, a.component(i, k), v.component(k, j));
                            add_into(&mut acc, &p);
                        }
                        let f = -(S::one() / diag[i].clone());
                        *v.component_mut(i, j) = acc.into_iter().map(|x| x * f.clone()).collect();
                    }
                }
            }
            Shape::Lower => {
                for i in 0..r {
                    for j in 0..i {
                        if self.dim(i, j) == 0 {
                            continue;
                        }
                        let mut acc = vec![S::zero(); self.dim(i, j)];
                        for k in j..i {
                            let p = self.component_product(i, k, j, a.component(i, k), v.component(k, j));
                            add_into(&mut acc, &p);
                        }
                        let f = -(S::one() / diag[i].clone());
                        *v.component_mut(i, j) = acc.into_iter().map(|x| x * f.clone()).collect();
                    }
                }
            }
        }
        Ok(TriangularElement { elem: v, shape: u.shape() })
    }

    /// For a proper `t` whose zero-diagonal set is `zeroed`, an invertible
    /// `u` of the same shape with `u ⋆ t = e_I`.
    ///
    /// The helper `ũ` takes column `i` from `t` for `i ∉ I` and `e_i`
    /// otherwise, so `ũ ⋆ e_I = t`; then `u = ũ⁻¹`. Values at most `tol` in
    /// absolute value count as zero.
    pub fn triangular_solve_to_identity(
        &self,
        t: &TriangularElement<S>,
        zeroed: IndexSet,
        tol: &S,
    ) -> Result<TriangularElement<S>> {
        let helper = self.solve_helper(t, zeroed, tol)?;
        self.triangular_inverse(&helper)
    }

    /// The element `ũ` of [`triangular_solve_to_identity`](Self::triangular_solve_to_identity).
    pub fn solve_helper(&self, t: &TriangularElement<S>, zeroed: IndexSet, tol: &S) -> Result<TriangularElement<S>> {
        self.conforms(t.elem())?;
        let r = self.rank();
        if zeroed.bound() > r {
            return Err(Error::BadIndexSet(zeroed));
        }
        if !t.is_proper(tol) {
            return Err(Error::ImproperFactor("a zero diagonal entry has a nonzero column".into()));
        }
        let actual = t.zero_set(tol);
        if actual != zeroed {
            return Err(Error::ImproperFactor(format!("zero-diagonal set is {actual}, expected {zeroed}")));
        }
        let mut helper = t.elem().clone();
        for i in zeroed.positions() {
            for k in 0..r {
                if self.dim(k, i) > 0 {
                    *helper.component_mut(k, i) = vec![S::zero(); self.dim(k, i)];
                }
            }
            helper.component_mut(i, i)[0] = S::one();
        }
        TriangularElement::new(helper, t.shape())
    }
}

fn add_into<S: Scalar>(acc: &mut [S], p: &[S]) {
    for (a, b) in acc.iter_mut().zip(p) {
        *a = a.clone() + b.clone();
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::matrix_algebra;
    use super::*;

    fn lower_from(alg: &TAlgebra<f64>, rows: &[[f64; 3]; 3]) -> TriangularElement<f64> {
        let mut a = alg.zero();
        for i in 0..3 {
            for j in 0..3 {
                a.component_mut(i, j)[0] = rows[i][j];
            }
        }
        TriangularElement::new(a, Shape::Lower).unwrap()
    }

    #[test]
    fn inverse_of_unit_lower() {
        let alg = matrix_algebra(3);
        let l = lower_from(&alg, &[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-1.0, -1.0, 1.0]]);
        let inv = alg.triangular_inverse(&l).unwrap();
        let expect = lower_from(&alg, &[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 1.0]]);
        assert_eq!(inv, expect);
        assert_eq!(alg.star(l.elem(), inv.elem()).unwrap(), alg.identity());
        assert_eq!(alg.star(inv.elem(), l.elem()).unwrap(), alg.identity());
    }

    #[test]
    fn inverse_of_scaled_identity() {
        let alg = matrix_algebra(3);
        let u = TriangularElement::new(alg.identity().scale(&4.0), Shape::Upper).unwrap();
        let inv = alg.triangular_inverse(&u).unwrap();
        assert_eq!(inv.elem(), &alg.identity().scale(&0.25));
        let bad = TriangularElement::new(alg.principal_identity(IndexSet::from_positions([1])), Shape::Upper).unwrap();
        assert_eq!(alg.triangular_inverse(&bad), Err(Error::NotInvertible { index: 2 }));
    }

    #[test]
    fn solve_to_identity_on_full_matrices() {
        let alg = matrix_algebra(3);
        let t = lower_from(&alg, &[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]]);
        let zeroed = IndexSet::from_positions([2]);
        let u = alg.triangular_solve_to_identity(&t, zeroed, &0.0).unwrap();
        let expect = lower_from(&alg, &[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-1.0, -1.0, 1.0]]);
        assert_eq!(u, expect);
        assert_eq!(alg.star(u.elem(), t.elem()).unwrap(), alg.principal_identity(zeroed));
        assert!(matches!(
            alg.triangular_solve_to_identity(&t, IndexSet::empty(), &0.0),
            Err(Error::ImproperFactor(_))
        ));
    }

    #[test]
    fn improper_factor_is_rejected() {
        let alg = matrix_algebra(3);
        let t = lower_from(&alg, &[[0.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(!t.is_proper(&0.0));
        assert!(matches!(
            alg.triangular_solve_to_identity(&t, IndexSet::from_positions([0]), &0.0),
            Err(Error::ImproperFactor(_))
        ));
    }
}
