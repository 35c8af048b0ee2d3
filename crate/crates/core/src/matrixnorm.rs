//! The rank `m + 1` algebra of the matrix-norm cone.
//!
//! Elements are block matrices `[[V, W], [U^T, α I_n]]` with `V` of size
//! `m x m` and `W`, `U` of size `m x n`. Indices `1..=m` carry the entries
//! of `V`; index `m + 1` carries `α`. The component at `(i, m+1)` is row `i`
//! of `W` and the component at `(m+1, i)` is row `i` of `U`, both in `ℝⁿ`.
//! Products follow block multiplication, except that the lower-right block
//! is collapsed to the scalar `Σ_k ⟨U_k, W_k⟩ + α₁α₂`.

use serde_json::{json, Value};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::scalar::Scalar;
use crate::talgebra::{BigradedElement, InvolutionTerm, ProductTerm, TAlgebra, TAlgebraBuilder};

pub fn build_instance<S: Scalar>(m: usize, n: usize) -> Result<TAlgebra<S>> {
    if m == 0 || n == 0 {
        return Err(Error::BadDims(format!("matrix-norm algebra needs m, n >= 1, got ({m}, {n})")));
    }
    let a = m;
    let ident = |d: usize| (0..d).map(|p| InvolutionTerm { out: p, input: p, coeff: S::one() }).collect::<Vec<_>>();
    let dot = || (0..n).map(|p| ProductTerm::unit(0, p, p)).collect::<Vec<_>>();
    let scale_right = || (0..n).map(|p| ProductTerm::unit(p, 0, p)).collect::<Vec<_>>();
    let scale_left = || (0..n).map(|p| ProductTerm::unit(p, p, 0)).collect::<Vec<_>>();

    let mut b = TAlgebraBuilder::new(m + 1, format!("matrix-norm algebra ({m}, {n})"));
    for i in 0..m {
        b = b.dim(i, a, n).involution(i, a, ident(n)).involution(a, i, ident(n));
        for j in 0..m {
            b = b.dim(i, j, 1).involution(i, j, ident(1));
        }
    }
    b = b.involution(a, a, ident(1));
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                // V V
                b = b.product(i, j, k, vec![ProductTerm::unit(0, 0, 0)]);
            }
            // W-row times U-row, into V
            b = b.product(i, a, j, dot());
            // V times W-row
            b = b.product(i, j, a, scale_right());
            // U-row times V
            b = b.product(a, i, j, scale_left());
        }
        // W-row times α
        b = b.product(i, a, a, scale_left());
        // α times U-row
        b = b.product(a, a, i, scale_right());
        // U-row times W-row, into α
        b = b.product(a, i, a, dot());
    }
    b = b.product(a, a, a, vec![ProductTerm::unit(0, 0, 0)]);
    b.build()
}

/// The block form `[[V, W], [U^T, α I]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixNormElement<S> {
    pub v: DenseMatrix<S>,
    pub w: DenseMatrix<S>,
    pub u: DenseMatrix<S>,
    pub alpha: S,
}

impl<S: Scalar> MatrixNormElement<S> {
    pub fn m(&self) -> usize {
        self.v.rows()
    }

    pub fn n(&self) -> usize {
        self.w.cols()
    }

    fn check(&self) -> Result<()> {
        let (m, n) = (self.v.rows(), self.w.cols());
        if !self.v.is_square() || self.w.rows() != m || self.u.rows() != m || self.u.cols() != n || m == 0 || n == 0 {
            return Err(Error::BadDims("V must be m x m and W, U must be m x n".into()));
        }
        Ok(())
    }

    pub fn to_element(&self, alg: &TAlgebra<S>) -> Result<BigradedElement<S>> {
        self.check()?;
        let (m, n) = (self.m(), self.n());
        if alg.rank() != m + 1 || alg.dim(0, m) != n {
            return Err(Error::DimensionMismatch(format!("element of shape ({m}, {n}) in a different algebra")));
        }
        let mut e = alg.zero();
        for i in 0..m {
            for j in 0..m {
                e.component_mut(i, j)[0] = self.v[(i, j)].clone();
            }
            *e.component_mut(i, m) = (0..n).map(|p| self.w[(i, p)].clone()).collect();
            *e.component_mut(m, i) = (0..n).map(|p| self.u[(i, p)].clone()).collect();
        }
        e.component_mut(m, m)[0] = self.alpha.clone();
        Ok(e)
    }

    pub fn from_element(e: &BigradedElement<S>, n: usize) -> Self {
        let m = e.rank() - 1;
        MatrixNormElement {
            v: DenseMatrix::from_fn(m, m, |i, j| e.component(i, j)[0].clone()),
            w: DenseMatrix::from_fn(m, n, |i, p| e.component(i, m)[p].clone()),
            u: DenseMatrix::from_fn(m, n, |i, p| e.component(m, i)[p].clone()),
            alpha: e.component(m, m)[0].clone(),
        }
    }

    /// The ordinary `(m+n) x (m+n)` matrix `[[V, W], [U^T, α I]]`.
    pub fn to_dense(&self) -> DenseMatrix<S> {
        let (m, n) = (self.m(), self.n());
        DenseMatrix::from_fn(m + n, m + n, |i, j| match (i < m, j < m) {
            (true, true) => self.v[(i, j)].clone(),
            (true, false) => self.w[(i, j - m)].clone(),
            (false, true) => self.u[(j, i - m)].clone(),
            (false, false) => {
                if i == j {
                    self.alpha.clone()
                } else {
                    S::zero()
                }
            }
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m(),
            "n": self.n(),
            "V": self.v.to_json(),
            "W": self.w.to_json(),
            "U": self.u.to_json(),
            "alpha": self.alpha.to_json(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let field = |k: &str| value.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
        let out = MatrixNormElement {
            v: DenseMatrix::from_json(field("V")?)?,
            w: DenseMatrix::from_json(field("W")?)?,
            u: DenseMatrix::from_json(field("U")?)?,
            alpha: S::from_json(field("alpha")?).ok_or_else(|| Error::Parse("bad alpha".into()))?,
        };
        out.check()?;
        for (k, want) in [("m", out.m()), ("n", out.n())] {
            if let Some(given) = value.get(k).and_then(Value::as_u64) {
                if given as usize != want {
                    return Err(Error::BadDims(format!("field {k:?} is {given} but the blocks say {want}")));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum FaceType {
    /// Linearly isomorphic to the PSD cone of order `k`.
    PsdCone(usize),
    /// Linearly isomorphic to the matrix-norm cone with parameters `(k, n)`.
    MatrixNormCone(usize, usize),
}

/// Type of the principal face with zero set `zeroed` (labels `1..=m+1`).
pub fn classify_principal_face(m: usize, n: usize, zeroed: IndexSet) -> Result<FaceType> {
    if zeroed.bound() > m + 1 {
        return Err(Error::BadIndex { index: zeroed.bound(), bound: m + 1 });
    }
    let first = zeroed.intersection(IndexSet::full(m)).len();
    if zeroed.contains(m) {
        Ok(FaceType::PsdCone(m - first))
    } else {
        Ok(FaceType::MatrixNormCone(m - first, n))
    }
}
