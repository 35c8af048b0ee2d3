//! Generalized Cholesky factorization into proper triangular factors.
//!
//! The primal side factors `x = t t^*` with `t` upper triangular, sweeping
//! the indices from `r` down to `1`; the dual side factors `x = l l^*` with
//! `l` lower triangular, sweeping from `1` up to `r`. The dual sweep is the
//! primal sweep of the index-reversed algebra.
//!
//! The sweep itself is square-root free: column `i` is kept unnormalized
//! as `c_i` together with its pivot `d_i = ρ_i(y_ii)`, and the update is
//! `y ← y − c_i c_i^* / d_i`. The normalized factor `t = c / √d` is formed
//! afterwards. Exact backends can therefore decide membership even when
//! the factor itself has irrational entries.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::scalar::Scalar;
use crate::talgebra::{BigradedElement, Shape, TAlgebra, TriangularElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// The cone `{t t^* : t upper triangular}`.
    Primal,
    /// Its dual `{t^* t : t upper triangular} = {l l^* : l lower triangular}`.
    Dual,
}

impl Side {
    pub fn shape(self) -> Shape {
        match self {
            Side::Primal => Shape::Upper,
            Side::Dual => Shape::Lower,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }

    fn sweep(self, r: usize) -> Vec<usize> {
        match self {
            Side::Primal => (0..r).rev().collect(),
            Side::Dual => (0..r).collect(),
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Side> {
        match s {
            "primal" => Ok(Side::Primal),
            "dual" => Ok(Side::Dual),
            _ => Err(Error::Parse(format!("side must be \"primal\" or \"dual\", got {s:?}"))),
        }
    }
}

/// Zero-pivot and reconstruction tolerances. Ignored by exact backends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// A pivot counts as zero when `<= zero * max(1, tr x)`.
    pub zero: f64,
    /// Reconstruction passes when `‖x − tt^*‖ <= rec * max(1, ‖x‖)`.
    pub rec: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { zero: 1e-9, rec: 1e-7 }
    }
}

/// Output of the square-root-free sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<S> {
    side: Side,
    columns: TriangularElement<S>,
    pivots: Vec<Option<S>>,
}

impl<S: Scalar> Decomposition<S> {
    pub fn side(&self) -> Side {
        self.side
    }

    /// Unnormalized columns `c_i`; zero where the pivot vanished.
    pub fn columns(&self) -> &TriangularElement<S> {
        &self.columns
    }

    /// `Some(d_i)` for accepted pivots.
    pub fn pivots(&self) -> &[Option<S>] {
        &self.pivots
    }

    pub fn zero_set(&self) -> IndexSet {
        IndexSet::from_positions(self.pivots.iter().enumerate().filter(|(_, d)| d.is_none()).map(|(i, _)| i))
    }

    /// Number of accepted pivots.
    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|d| d.is_some()).count()
    }

    /// Column `i` as an element of its own.
    pub fn column(&self, alg: &TAlgebra<S>, i: usize) -> BigradedElement<S> {
        column_of(alg, self.columns.elem(), i, self.side.shape())
    }

    /// `Σ c_i c_i^* / d_i`, which equals `t t^*`.
    pub fn reconstruction(&self, alg: &TAlgebra<S>) -> BigradedElement<S> {
        let mut acc = alg.zero();
        for (i, d) in self.pivots.iter().enumerate() {
            if let Some(d) = d {
                let c = self.column(alg, i);
                let outer = alg.star_unchecked(&c, &alg.involution(&c));
                acc = acc.add(&outer.scale(&(S::one() / d.clone())));
            }
        }
        acc
    }

    /// The proper factor `t = c / √d`. Exact backends fail with
    /// [`Error::Irrational`] when a pivot is not a perfect square.
    pub fn factor(&self, alg: &TAlgebra<S>) -> Result<ProperFactor<S>> {
        let r = alg.rank();
        let shape = self.side.shape();
        let mut t = self.columns.elem().clone();
        for (i, d) in self.pivots.iter().enumerate() {
            let Some(d) = d else { continue };
            let root = d.sqrt_checked().ok_or_else(|| Error::Irrational(format!("{d:?}")))?;
            let inv = S::one() / root;
            for k in 0..r {
                if shape.allows(k, i) {
                    for v in t.component_mut(k, i).iter_mut() {
                        *v = v.clone() * inv.clone();
                    }
                }
            }
        }
        Ok(ProperFactor { t: TriangularElement::new(t, shape)?, zero_set: self.zero_set(), side: self.side })
    }
}

fn column_of<S: Scalar>(alg: &TAlgebra<S>, a: &BigradedElement<S>, i: usize, shape: Shape) -> BigradedElement<S> {
    let mut c = alg.zero();
    for k in 0..alg.rank() {
        if shape.allows(k, i) {
            *c.component_mut(k, i) = a.component(k, i).to_vec();
        }
    }
    c
}

/// A proper triangular factor and its zero-diagonal set.
#[derive(Debug, Clone, PartialEq)]
pub struct ProperFactor<S> {
    pub t: TriangularElement<S>,
    pub zero_set: IndexSet,
    pub side: Side,
}

impl<S: Scalar> ProperFactor<S> {
    /// `t t^*`.
    pub fn product(&self, alg: &TAlgebra<S>) -> BigradedElement<S> {
        alg.star_unchecked(self.t.elem(), &alg.involution(self.t.elem()))
    }
}

/// Runs the sweep for `side`. Non-positive pivots (up to tolerance) leave
/// the column at zero, so the result is proper even for points outside
/// the cone.
pub fn decompose<S: Scalar>(
    alg: &TAlgebra<S>,
    x: &BigradedElement<S>,
    side: Side,
    tol: &Tolerances,
) -> Result<Decomposition<S>> {
    alg.check_hermitian(x)?;
    let r = alg.rank();
    let shape = side.shape();
    let threshold = S::tolerance(tol.zero) * S::max_of(S::one(), alg.trace(x));
    let mut y = x.clone();
    let mut columns = alg.zero();
    let mut pivots = vec![None; r];
    for i in side.sweep(r) {
        let d = alg.rho(&y, i);
        if d <= threshold {
            continue;
        }
        let c = column_of(alg, &y, i, shape);
        let outer = alg.star_unchecked(&c, &alg.involution(&c));
        y = y.sub(&outer.scale(&(S::one() / d.clone())));
        for k in 0..r {
            if shape.allows(k, i) {
                *columns.component_mut(k, i) = c.component(k, i).to_vec();
            }
        }
        pivots[i] = Some(d);
    }
    Ok(Decomposition { side, columns: TriangularElement::new(columns, shape)?, pivots })
}

/// Upper proper factor with `x = t t^*` when `x` lies in the closed primal cone.
pub fn primal_factor<S: Scalar>(alg: &TAlgebra<S>, x: &BigradedElement<S>, tol: &Tolerances) -> Result<ProperFactor<S>> {
    decompose(alg, x, Side::Primal, tol)?.factor(alg)
}

/// Lower proper factor with `x = l l^*` when `x` lies in the closed dual cone.
pub fn dual_factor<S: Scalar>(alg: &TAlgebra<S>, x: &BigradedElement<S>, tol: &Tolerances) -> Result<ProperFactor<S>> {
    decompose(alg, x, Side::Dual, tol)?.factor(alg)
}

pub fn factor<S: Scalar>(
    alg: &TAlgebra<S>,
    x: &BigradedElement<S>,
    side: Side,
    tol: &Tolerances,
) -> Result<ProperFactor<S>> {
    decompose(alg, x, side, tol)?.factor(alg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Boundary(IndexSet),
    Outside,
}

impl Membership {
    pub fn is_member(self) -> bool {
        !matches!(self, Membership::Outside)
    }

    /// Zero set of a member; `None` when outside.
    pub fn zero_set(self) -> Option<IndexSet> {
        match self {
            Membership::Interior => Some(IndexSet::empty()),
            Membership::Boundary(i) => Some(i),
            Membership::Outside => None,
        }
    }
}

impl std::fmt::Display for Membership {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Membership::Interior => write!(f, "interior"),
            Membership::Boundary(i) => write!(f, "boundary {i}"),
            Membership::Outside => write!(f, "outside"),
        }
    }
}

/// Membership verdict with the evidence behind it.
#[derive(Debug, Clone)]
pub struct MembershipReport<S> {
    pub membership: Membership,
    pub decomposition: Decomposition<S>,
    /// `‖x − tt^*‖ / max(1, ‖x‖)`.
    pub residual: f64,
}

pub fn membership_report<S: Scalar>(
    alg: &TAlgebra<S>,
    x: &BigradedElement<S>,
    side: Side,
    tol: &Tolerances,
) -> Result<MembershipReport<S>> {
    let decomposition = decompose(alg, x, side, tol)?;
    let rec = decomposition.reconstruction(alg);
    let (passed, residual) = reconstruction_check(alg, x, &rec, tol.rec);
    let membership = if !passed {
        Membership::Outside
    } else {
        let zs = decomposition.zero_set();
        if zs.is_empty() {
            Membership::Interior
        } else {
            Membership::Boundary(zs)
        }
    };
    Ok(MembershipReport { membership, decomposition, residual })
}

pub fn membership<S: Scalar>(alg: &TAlgebra<S>, x: &BigradedElement<S>, side: Side, tol: &Tolerances) -> Result<Membership> {
    Ok(membership_report(alg, x, side, tol)?.membership)
}

/// Whether `‖x − rec‖ <= eps · max(1, ‖x‖)` (compared squared, exactly for
/// exact backends), and the relative residual.
pub fn reconstruction_check<S: Scalar>(
    alg: &TAlgebra<S>,
    x: &BigradedElement<S>,
    rec: &BigradedElement<S>,
    eps: f64,
) -> (bool, f64) {
    let diff = x.sub(rec);
    let diff_sq = alg.norm_sq(&diff);
    let scale_sq = S::max_of(S::one(), alg.norm_sq(x));
    let eps = S::tolerance(eps);
    let passed = diff_sq <= eps.clone() * eps * scale_sq.clone();
    let residual = (diff_sq.to_f64_lossy() / scale_sq.to_f64_lossy()).max(0.0).sqrt();
    (passed, residual)
}
