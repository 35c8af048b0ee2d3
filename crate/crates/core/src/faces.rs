//! Faces of the cones of a T-algebra.
//!
//! A face is described by a [`FaceCertificate`] anchored at a point of its
//! relative interior. The certificate carries the proper factor, the
//! triangular automorphism taking the point to a principal idempotent,
//! the (oblique) projection onto the face and an exposing vector.

use serde::Serialize;

use crate::cholesky::{membership_report, Membership, ProperFactor, Side, Tolerances};
use crate::error::{Error, Result};
use crate::index_set::{IndexSet, MAX_RANK};
use crate::sampling::Sampler;
use crate::scalar::Scalar;
use crate::talgebra::{BigradedElement, TAlgebra, TriangularElement};

/// Default bound on the rank for [`enumerate_principal_faces`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

/// Identity checks recomputed from the certificate, as largest absolute
/// deviations (the reconstruction entry is relative).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FaceResiduals {
    /// `‖x − tt^*‖ / max(1, ‖x‖)`.
    pub reconstruction: f64,
    /// `u ⋆ t − e_I`.
    pub solve: f64,
    /// `Q_u(x) − e_I`.
    pub canonical: f64,
    /// `⟨x, exposing⟩`.
    pub exposing_inner: f64,
    /// `v ⋆ v − v`.
    pub projection_idempotent: f64,
}

impl FaceResiduals {
    pub fn max(&self) -> f64 {
        [self.reconstruction, self.solve, self.canonical, self.exposing_inner, self.projection_idempotent]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone)]
pub struct FaceCertificate<S> {
    pub side: Side,
    pub point: BigradedElement<S>,
    pub factor: ProperFactor<S>,
    /// Satisfies `u ⋆ t = e_I`; `Q_u` maps the face onto the principal face.
    pub u: TriangularElement<S>,
    /// `u⁻¹`, whose columns outside `I` are those of `t`.
    pub u_inverse: TriangularElement<S>,
    pub face_rank: usize,
    /// `v = u⁻¹ ⋆ e_I ⋆ u`; `Q_v` projects the closed cone onto the face.
    pub projection: BigradedElement<S>,
    /// `Q_{u^*}(e − e_I)`, in the opposite cone and orthogonal to the face.
    pub exposing: BigradedElement<S>,
    pub residuals: FaceResiduals,
}

impl<S: Scalar> FaceCertificate<S> {
    /// The zeroed index set `I`.
    pub fn zero_set(&self) -> IndexSet {
        self.factor.zero_set
    }
}

/// Certificate for the minimal face containing `x` in the cone of `side`.
pub fn minimal_face<S: Scalar>(
    alg: &TAlgebra<S>,
    x: &BigradedElement<S>,
    side: Side,
    tol: &Tolerances,
) -> Result<FaceCertificate<S>> {
    let report = membership_report(alg, x, side, tol)?;
    if report.membership == Membership::Outside {
        return Err(Error::OutsideCone { residual: report.residual });
    }
    let factor = report.decomposition.factor(alg)?;
    let zeroed = factor.zero_set;
    let u_inverse = alg.solve_helper(&factor.t, zeroed, &S::zero())?;
    let u = alg.triangular_inverse(&u_inverse)?;
    let e_i = alg.principal_identity(zeroed);
    let projection = alg.star_unchecked(&alg.star_unchecked(u_inverse.elem(), &e_i), u.elem());
    let e_bar = alg.principal_identity(zeroed.complement(alg.rank()));
    let exposing = alg.quad_map_unchecked(&alg.involution(u.elem()), &e_bar);

    let solve = alg.star_unchecked(u.elem(), factor.t.elem()).max_abs_diff(&e_i);
    let canonical = alg.quad_map_unchecked(u.elem(), x).max_abs_diff(&e_i);
    let exposing_inner = alg.inner_unchecked(x, &exposing).abs();
    let idem = alg.star_unchecked(&projection, &projection).max_abs_diff(&projection);
    let residuals = FaceResiduals {
        reconstruction: report.residual,
        solve: solve.to_f64_lossy(),
        canonical: canonical.to_f64_lossy(),
        exposing_inner: exposing_inner.to_f64_lossy(),
        projection_idempotent: idem.to_f64_lossy(),
    };
    Ok(FaceCertificate {
        side,
        point: x.clone(),
        face_rank: alg.rank() - zeroed.len(),
        factor,
        u,
        u_inverse,
        projection,
        exposing,
        residuals,
    })
}

/// `Q_v(y)`: the projection of the certificate's face applied to `y`.
pub fn face_projection_apply<S: Scalar>(
    alg: &TAlgebra<S>,
    cert: &FaceCertificate<S>,
    y: &BigradedElement<S>,
) -> Result<BigradedElement<S>> {
    alg.quad_map(&cert.projection, y)
}

/// `Q_{e_I}(y)`: zeroes rows and columns indexed by `zeroed`.
pub fn orthogonal_projection_principal<S: Scalar>(
    alg: &TAlgebra<S>,
    zeroed: IndexSet,
    y: &BigradedElement<S>,
) -> Result<BigradedElement<S>> {
    if zeroed.bound() > alg.rank() {
        return Err(Error::BadIndexSet(zeroed));
    }
    alg.quad_map(&alg.principal_identity(zeroed), y)
}

/// Exactly one positive pivot in the proper factor.
pub fn is_extreme_ray<S: Scalar>(alg: &TAlgebra<S>, x: &BigradedElement<S>, side: Side, tol: &Tolerances) -> Result<bool> {
    let report = membership_report(alg, x, side, tol)?;
    if report.membership == Membership::Outside {
        return Err(Error::OutsideCone { residual: report.residual });
    }
    Ok(report.decomposition.rank() == 1)
}

/// Descriptor of the conjugate face `F^Δ` in the opposite cone.
#[derive(Debug, Clone)]
pub struct ConjugateFace<S> {
    pub side: Side,
    /// Complement of the certificate's zero set.
    pub zeroed: IndexSet,
    /// `(u⁻¹)^*`; `Q_w` relates the conjugate face to the principal face
    /// of the opposite cone with index set `zeroed`.
    pub w: TriangularElement<S>,
    /// `r − |zeroed|`.
    pub rank: usize,
}

pub fn conjugate_face<S: Scalar>(alg: &TAlgebra<S>, cert: &FaceCertificate<S>) -> ConjugateFace<S> {
    let zeroed = cert.zero_set().complement(alg.rank());
    ConjugateFace {
        side: cert.side.opposite(),
        zeroed,
        w: alg.involution_triangular(&cert.u_inverse),
        rank: alg.rank() - zeroed.len(),
    }
}

/// Rank of the conjugate face measured independently: the exposing vector
/// lies in the relative interior of `F^Δ`, so its factor on the opposite
/// side has that many positive pivots.
pub fn conjugate_rank_from_exposing<S: Scalar>(
    alg: &TAlgebra<S>,
    cert: &FaceCertificate<S>,
    tol: &Tolerances,
) -> Result<usize> {
    let report = membership_report(alg, &cert.exposing, cert.side.opposite(), tol)?;
    if report.membership == Membership::Outside {
        return Err(Error::OutsideCone { residual: report.residual });
    }
    Ok(report.decomposition.rank())
}

/// Zero sets `{1..r} ⊋ {1..r−1} ⊋ … ⊋ {1} ⊋ ∅`, i.e. faces of rank `0..=r`.
pub fn principal_face_chain(r: usize) -> Vec<IndexSet> {
    (0..=r).rev().map(IndexSet::full).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrincipalFace {
    pub zeroed: IndexSet,
    pub rank: usize,
    /// Dimension of the Hermitian span of the face.
    pub dimension: usize,
}

/// Dimension of the Hermitian part of the principal subalgebra without
/// the indices in `zeroed`.
pub fn principal_dimension<S: Scalar>(alg: &TAlgebra<S>, zeroed: IndexSet) -> usize {
    let keep: Vec<usize> = zeroed.complement(alg.rank()).positions().collect();
    keep.iter()
        .enumerate()
        .map(|(a, &i)| keep[a..].iter().map(|&j| alg.dim(i, j)).sum::<usize>())
        .sum()
}

/// All `2^r` principal faces, in increasing bitmask order of the zero set.
pub fn enumerate_principal_faces<S: Scalar>(alg: &TAlgebra<S>, bound: usize) -> Result<Vec<PrincipalFace>> {
    let r = alg.rank();
    let bound = bound.min(MAX_RANK - 1);
    if r > bound {
        return Err(Error::RankTooLarge { rank: r, bound });
    }
    Ok(IndexSet::all_subsets(r)
        .map(|zeroed| PrincipalFace { zeroed, rank: r - zeroed.len(), dimension: principal_dimension(alg, zeroed) })
        .collect())
}

/// Checks that no triangular automorphism relates two distinct principal
/// faces: for sampled invertible `u`, the zero set of `Q_u(e_I)` is
/// always `I` again, so `e_I` can only land in the face with index `I`.
pub fn principal_faces_distinct<S: Scalar>(
    alg: &TAlgebra<S>,
    faces: &[PrincipalFace],
    samples_per_face: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<bool> {
    let mut seen = std::collections::HashSet::new();
    if !faces.iter().all(|f| seen.insert(f.zeroed)) {
        return Ok(false);
    }
    let mut sampler = Sampler::new(seed);
    for f in faces {
        let e_i = alg.principal_identity(f.zeroed);
        for _ in 0..samples_per_face {
            for side in [Side::Primal, Side::Dual] {
                let u = sampler.triangular(alg, side.shape(), true);
                let image = alg.quad_map_unchecked(u.elem(), &e_i);
                if membership_report(alg, &image, side, tol)?.membership.zero_set() != Some(f.zeroed) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
