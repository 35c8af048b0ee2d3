//! The T-algebra of a homogeneous chordal sparsity pattern and PSD
//! completion.
//!
//! For a graph whose labels form a trivially perfect elimination ordering,
//! the algebra has a scalar component at `(i, j)` exactly when `i = j` or
//! `{i, j}` is an edge, and the product is the ordinary matrix product
//! followed by restriction to the pattern. Its primal closed cone is the
//! set of PSD-completable pattern matrices and its dual is the cone of PSD
//! matrices with that pattern.
//!
//! [`ChordalAlgebra`] accepts graphs in any labeling: it relabels by a
//! trivially perfect ordering internally and maps results back.

use serde_json::{json, Value};

use crate::cholesky::{decompose, membership_report, Decomposition, Membership, Side, Tolerances};
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::faces::{minimal_face, FaceCertificate};
use crate::graph::{Graph, Ordering};
use crate::index_set::IndexSet;
use crate::scalar::Scalar;
use crate::talgebra::{BigradedElement, InvolutionTerm, ProductTerm, TAlgebra, TAlgebraBuilder};

/// A symmetric matrix supported on the diagonal and the edges of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternMatrix<S> {
    graph: Graph,
    values: DenseMatrix<S>,
}

impl<S: Scalar> PatternMatrix<S> {
    pub fn zeros(graph: &Graph) -> Self {
        PatternMatrix { graph: graph.clone(), values: DenseMatrix::zeros(graph.n(), graph.n()) }
    }

    pub fn identity(graph: &Graph) -> Self {
        PatternMatrix { graph: graph.clone(), values: DenseMatrix::identity(graph.n()) }
    }

    fn allowed(graph: &Graph, i: usize, j: usize) -> bool {
        i == j || graph.adjacent0(i, j)
    }

    /// Wraps a dense matrix that must already be symmetric and in pattern.
    pub fn new(graph: &Graph, values: DenseMatrix<S>) -> Result<Self> {
        let n = graph.n();
        if values.rows() != n || values.cols() != n {
            return Err(Error::DimensionMismatch(format!("expected a {n}x{n} matrix")));
        }
        let asym = values.asymmetry();
        if !asym.is_zero() {
            return Err(Error::NotSymmetric { asymmetry: asym.to_f64_lossy() });
        }
        for i in 0..n {
            for j in 0..n {
                if !Self::allowed(graph, i, j) && !values[(i, j)].is_zero() {
                    return Err(Error::DimensionMismatch(format!(
                        "entry ({},{}) lies outside the sparsity pattern",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(PatternMatrix { graph: graph.clone(), values })
    }

    /// From 1-based upper-triangle entries `(i, j, value)`, `i <= j`.
    pub fn from_entries(graph: &Graph, entries: &[(usize, usize, S)]) -> Result<Self> {
        let n = graph.n();
        let mut values = DenseMatrix::zeros(n, n);
        let mut seen = std::collections::HashSet::new();
        for (i, j, v) in entries {
            let (i, j) = (*i, *j);
            for l in [i, j] {
                if l == 0 || l > n {
                    return Err(Error::BadIndex { index: l, bound: n });
                }
            }
            if i > j {
                return Err(Error::Parse(format!("entry ({i},{j}) is below the diagonal")));
            }
            if !seen.insert((i, j)) {
                return Err(Error::Parse(format!("entry ({i},{j}) given twice")));
            }
            if !Self::allowed(graph, i - 1, j - 1) {
                return Err(Error::DimensionMismatch(format!("entry ({i},{j}) lies outside the sparsity pattern")));
            }
            values[(i - 1, j - 1)] = v.clone();
            values[(j - 1, i - 1)] = v.clone();
        }
        Ok(PatternMatrix { graph: graph.clone(), values })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn dense(&self) -> &DenseMatrix<S> {
        &self.values
    }

    /// Zero-based entry access.
    pub fn value(&self, i: usize, j: usize) -> &S {
        &self.values[(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.max_abs().is_zero()
    }

    pub fn max_abs_diff(&self, other: &Self) -> S {
        self.values.max_abs_diff(&other.values)
    }

    /// `{"n": n, "entries": [[i, j, v], ...]}` listing every pattern
    /// position with `i <= j`.
    pub fn to_json(&self) -> Value {
        let n = self.n();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i..n {
                if Self::allowed(&self.graph, i, j) {
                    entries.push(json!([i + 1, j + 1, self.values[(i, j)].to_json()]));
                }
            }
        }
        json!({"n": n, "entries": entries})
    }

    pub fn from_json(value: &Value, graph: &Graph) -> Result<Self> {
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("pattern matrix needs an integer \"n\"".into()))? as usize;
        if n != graph.n() {
            return Err(Error::DimensionMismatch(format!("matrix order {n} but the graph has {} vertices", graph.n())));
        }
        let raw = value
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("pattern matrix needs an \"entries\" array".into()))?;
        let mut entries = Vec::with_capacity(raw.len());
        for e in raw {
            let triple = e.as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::Parse(format!("bad entry {e}")))?;
            let idx = |v: &Value| v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("bad index in {e}")));
            let v = S::from_json(&triple[2]).ok_or_else(|| Error::Parse(format!("bad value in {e}")))?;
            entries.push((idx(&triple[0])?, idx(&triple[1])?, v));
        }
        Self::from_entries(graph, &entries)
    }
}

/// Restriction of a dense symmetric matrix to the pattern of `g`.
pub fn pi_g<S: Scalar>(g: &Graph, dense: &DenseMatrix<S>) -> Result<PatternMatrix<S>> {
    let n = g.n();
    if dense.rows() != n || dense.cols() != n {
        return Err(Error::DimensionMismatch(format!("expected a {n}x{n} matrix")));
    }
    let asym = dense.asymmetry();
    if asym > S::tolerance(1e-12) * S::max_of(S::one(), dense.max_abs()) {
        return Err(Error::NotSymmetric { asymmetry: asym.to_f64_lossy() });
    }
    let values = DenseMatrix::from_fn(n, n, |i, j| {
        if PatternMatrix::<S>::allowed(g, i, j) {
            dense[(i, j)].clone()
        } else {
            S::zero()
        }
    });
    Ok(PatternMatrix { graph: g.clone(), values })
}

/// The pattern algebra of `g` in its given labeling, without checking the
/// ordering conditions. The axioms hold only for trivially perfect
/// elimination orderings.
pub fn pattern_algebra<S: Scalar>(g: &Graph) -> TAlgebra<S> {
    let n = g.n();
    let present = |i: usize, j: usize| i == j || g.adjacent0(i, j);
    let mut b = TAlgebraBuilder::new(n, format!("pattern algebra on {n} vertices"));
    for i in 0..n {
        for j in 0..n {
            if !present(i, j) {
                continue;
            }
            b = b.dim(i, j, 1).involution(i, j, vec![InvolutionTerm { out: 0, input: 0, coeff: S::one() }]);
            for k in 0..n {
                if present(j, k) && present(i, k) {
                    b = b.product(i, j, k, vec![ProductTerm::unit(0, 0, 0)]);
                }
            }
        }
    }
    b.build().expect("pattern algebra is well formed")
}

/// The algebra of `g` under an ordering checked against the ordering
/// conditions.
pub fn build_instance<S: Scalar>(g: &Graph, ord: &Ordering) -> Result<TAlgebra<S>> {
    if !g.verify_tpeo(ord) {
        return Err(Error::OrderingNotVerified);
    }
    Ok(pattern_algebra(&g.relabel(ord)?))
}

/// A homogeneous chordal graph together with its algebra.
#[derive(Debug, Clone)]
pub struct ChordalAlgebra<S> {
    original: Graph,
    ordering: Ordering,
    ordered: Graph,
    alg: TAlgebra<S>,
}

impl<S: Scalar> ChordalAlgebra<S> {
    /// Keeps the given labels when they already satisfy the ordering
    /// conditions, and otherwise relabels by
    /// [`Graph::trivially_perfect_ordering`].
    pub fn new(g: &Graph) -> Result<Self> {
        let ord = if g.satisfies_tpeo_conditions() { Ordering::identity(g.n()) } else { g.trivially_perfect_ordering()? };
        Self::with_ordering(g, ord)
    }

    pub fn with_ordering(g: &Graph, ord: Ordering) -> Result<Self> {
        let alg = build_instance(g, &ord)?;
        let ordered = g.relabel(&ord)?;
        Ok(ChordalAlgebra { original: g.clone(), ordering: ord, ordered, alg })
    }

    pub fn alg(&self) -> &TAlgebra<S> {
        &self.alg
    }

    pub fn graph(&self) -> &Graph {
        &self.original
    }

    pub fn ordered_graph(&self) -> &Graph {
        &self.ordered
    }

    /// Old label to internal label.
    pub fn ordering(&self) -> &Ordering {
        &self.ordering
    }

    pub fn n(&self) -> usize {
        self.original.n()
    }

    /// Internal zero-based position of original zero-based vertex `v`.
    fn pos(&self, v: usize) -> usize {
        self.ordering.new_label(v + 1) - 1
    }

    /// Maps an index set over original labels to internal positions.
    pub fn to_internal_set(&self, s: IndexSet) -> IndexSet {
        IndexSet::from_positions(s.positions().map(|v| self.pos(v)))
    }

    /// Maps an index set over internal positions back to original labels.
    pub fn to_original_set(&self, s: IndexSet) -> IndexSet {
        let inv = self.ordering.inverse();
        IndexSet::from_positions(s.positions().map(|p| inv.new_label(p + 1) - 1))
    }

    /// A dense matrix in original labels, supported in the pattern, as an
    /// algebra element. The matrix need not be symmetric.
    pub fn dense_to_element(&self, m: &DenseMatrix<S>) -> Result<BigradedElement<S>> {
        let n = self.n();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!("expected a {n}x{n} matrix")));
        }
        let mut e = self.alg.zero();
        for a in 0..n {
            for b in 0..n {
                let v = &m[(a, b)];
                if a != b && !self.original.adjacent0(a, b) {
                    if !v.is_zero() {
                        return Err(Error::DimensionMismatch(format!(
                            "entry ({},{}) lies outside the sparsity pattern",
                            a + 1,
                            b + 1
                        )));
                    }
                    continue;
                }
                e.component_mut(self.pos(a), self.pos(b))[0] = v.clone();
            }
        }
        Ok(e)
    }

    /// An algebra element as a dense matrix in original labels.
    pub fn element_to_dense(&self, e: &BigradedElement<S>) -> DenseMatrix<S> {
        DenseMatrix::from_fn(self.n(), self.n(), |a, b| {
            e.component(self.pos(a), self.pos(b)).first().cloned().unwrap_or_else(S::zero)
        })
    }

    pub fn to_element(&self, x: &PatternMatrix<S>) -> Result<BigradedElement<S>> {
        if x.graph() != &self.original {
            return Err(Error::DimensionMismatch("pattern matrix belongs to a different graph".into()));
        }
        self.dense_to_element(x.dense())
    }

    pub fn to_pattern(&self, e: &BigradedElement<S>) -> Result<PatternMatrix<S>> {
        PatternMatrix::new(&self.original, self.element_to_dense(e))
    }

    pub fn minimal_face(&self, x: &PatternMatrix<S>, side: Side, tol: &Tolerances) -> Result<FaceCertificate<S>> {
        minimal_face(&self.alg, &self.to_element(x)?, side, tol)
    }

    pub fn membership(&self, x: &PatternMatrix<S>, side: Side, tol: &Tolerances) -> Result<Membership> {
        Ok(membership_report(&self.alg, &self.to_element(x)?, side, tol)?.membership)
    }

    /// `Σ c_i c_i^T / d_i` with ordinary outer products, in original labels.
    fn dense_reconstruction(&self, dec: &Decomposition<S>) -> DenseMatrix<S> {
        let n = self.n();
        let mut w = DenseMatrix::zeros(n, n);
        for (i, d) in dec.pivots().iter().enumerate() {
            let Some(d) = d else { continue };
            let col: Vec<S> = (0..n)
                .map(|a| {
                    let p = self.pos(a);
                    dec.columns().elem().component(p, i).first().cloned().unwrap_or_else(S::zero)
                })
                .collect();
            w = w.add(&DenseMatrix::outer(&col).scale(&(S::one() / d.clone())));
        }
        w
    }

    /// Primal decomposition of a completable `x`; `NotCompletable` otherwise.
    fn completable_decomposition(&self, x: &PatternMatrix<S>, tol: &Tolerances) -> Result<Decomposition<S>> {
        let report = membership_report(&self.alg, &self.to_element(x)?, Side::Primal, tol)?;
        if report.membership == Membership::Outside {
            return Err(Error::NotCompletable { residual: report.residual });
        }
        Ok(report.decomposition)
    }

    /// The completion `t t^T` (ordinary product) from the upper proper
    /// factor of `x`; its rank is the number of positive pivots.
    pub fn max_rank_completion(&self, x: &PatternMatrix<S>, tol: &Tolerances) -> Result<Completion<S>> {
        let dec = self.completable_decomposition(x, tol)?;
        Ok(Completion { w: self.dense_reconstruction(&dec), rank: dec.rank() })
    }

    /// The maximum determinant completion, certified by its inverse lying
    /// in the pattern.
    pub fn max_det_completion(&self, x: &PatternMatrix<S>, tol: &Tolerances) -> Result<MaxDetCompletion<S>> {
        let completion = self.max_rank_completion(x, tol)?;
        if completion.rank < self.n() {
            return Err(Error::RankDeficient { rank: completion.rank, n: self.n() });
        }
        let inverse = completion.w.inverse()?;
        let mut off_pattern = S::zero();
        for a in 0..self.n() {
            for b in 0..self.n() {
                if a != b && !self.original.adjacent0(a, b) {
                    off_pattern = S::max_of(off_pattern, inverse[(a, b)].abs());
                }
            }
        }
        let determinant = completion.w.determinant()?;
        Ok(MaxDetCompletion { completion, inverse, determinant, certificate: off_pattern.to_f64_lossy() })
    }

    /// Whether a nonzero completable `x` spans an extreme ray, i.e. has
    /// maximum completion rank one.
    pub fn extreme_ray_completable(&self, x: &PatternMatrix<S>, tol: &Tolerances) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.completable_decomposition(x, tol)?.rank() == 1)
    }

    /// The principal face obtained by discarding the vertices outside
    /// `keep` (original labels).
    pub fn face_of_subgraph(&self, keep: IndexSet, side: Side) -> Result<SubgraphFace> {
        if keep.bound() > self.n() {
            return Err(Error::BadIndex { index: keep.bound(), bound: self.n() });
        }
        if keep.is_empty() {
            return Err(Error::BadIndexSet(keep));
        }
        let subgraph = self.original.induced_subgraph(keep)?;
        Ok(SubgraphFace {
            side,
            zeroed: keep.complement(self.n()),
            dimension: subgraph.n() + subgraph.edge_count(),
            rank: keep.len(),
            subgraph,
        })
    }

    /// Sparsity-preserving facial reduction step from a dual-side
    /// certificate: each matrix is mapped by `y ↦ Q_l(y) = π_G(l y l^T)`
    /// (the congruence that takes the face onto a principal face) and the
    /// rows and columns in the zero set are dropped.
    pub fn congruence_reduce(&self, cert: &FaceCertificate<S>, matrices: &[PatternMatrix<S>]) -> Result<Reduction<S>> {
        self.reduce_by(cert, matrices, cert.u.elem())
    }

    /// Like [`congruence_reduce`](Self::congruence_reduce) but for
    /// constraint data: matrices are mapped by the adjoint of the inverse
    /// congruence, so `⟨a, x⟩ = ⟨a', x'⟩` for every `x` in the face.
    pub fn congruence_reduce_data(&self, cert: &FaceCertificate<S>, matrices: &[PatternMatrix<S>]) -> Result<Reduction<S>> {
        let adjoint_inverse = self.alg.involution(cert.u_inverse.elem());
        self.reduce_by(cert, matrices, &adjoint_inverse)
    }

    fn reduce_by(&self, cert: &FaceCertificate<S>, matrices: &[PatternMatrix<S>], map: &BigradedElement<S>) -> Result<Reduction<S>> {
        if cert.side != Side::Dual {
            return Err(Error::CertificateMismatch("reduction needs a certificate for the PSD pattern cone (dual side)".into()));
        }
        if cert.point.rank() != self.n() || self.alg.conforms(&cert.point).is_err() {
            return Err(Error::CertificateMismatch("certificate comes from a different algebra".into()));
        }
        let zeroed = self.to_original_set(cert.zero_set());
        let keep = zeroed.complement(self.n());
        let kept: Vec<usize> = keep.positions().collect();
        let subgraph = self.original.induced_subgraph(keep)?;
        let mut reduced = Vec::with_capacity(matrices.len());
        for m in matrices {
            let mapped = self.alg.quad_map(map, &self.to_element(m)?)?;
            let dense = self.element_to_dense(&mapped);
            let small = DenseMatrix::from_fn(kept.len(), kept.len(), |a, b| dense[(kept[a], kept[b])].clone());
            let dropped = (0..self.n())
                .filter(|v| zeroed.contains(*v))
                .flat_map(|v| (0..self.n()).map(move |w| (v, w)))
                .fold(S::zero(), |acc, (v, w)| S::max_of(acc, dense[(v, w)].abs()));
            reduced.push(ReducedMatrix { matrix: PatternMatrix::new(&subgraph, small)?, dropped_mass: dropped.to_f64_lossy() });
        }
        Ok(Reduction { subgraph, kept: kept.iter().map(|v| v + 1).collect(), matrices: reduced })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Completion<S> {
    /// Dense PSD matrix agreeing with the input on the pattern.
    pub w: DenseMatrix<S>,
    /// Maximum completion rank, from the factor's positive pivots.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxDetCompletion<S> {
    pub completion: Completion<S>,
    pub inverse: DenseMatrix<S>,
    pub determinant: S,
    /// Largest entry of `w⁻¹` outside the pattern; zero at the optimum.
    pub certificate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubgraphFace {
    pub side: Side,
    /// Discarded vertices (original labels).
    pub zeroed: IndexSet,
    pub subgraph: Graph,
    pub dimension: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedMatrix<S> {
    pub matrix: PatternMatrix<S>,
    /// Largest entry removed with the discarded rows and columns.
    pub dropped_mass: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reduction<S> {
    pub subgraph: Graph,
    /// Original labels of the surviving vertices, in order.
    pub kept: Vec<usize>,
    pub matrices: Vec<ReducedMatrix<S>>,
}

/// Whether every connected component is a clique, which is when the
/// completable cone is orthogonally projectionally exposed (and self-dual).
pub fn orth_proj_classification(g: &Graph) -> bool {
    g.is_disjoint_union_of_cliques()
}

/// Decomposition of `x` for an arbitrary side, exposed for diagnostics.
pub fn pattern_decomposition<S: Scalar>(
    ca: &ChordalAlgebra<S>,
    x: &PatternMatrix<S>,
    side: Side,
    tol: &Tolerances,
) -> Result<Decomposition<S>> {
    decompose(ca.alg(), &ca.to_element(x)?, side, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn star() -> Graph {
        Graph::new(3, [(1, 3), (2, 3)]).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn pm(g: &Graph, rows: [[f64; 3]; 3]) -> PatternMatrix<f64> {
        PatternMatrix::new(g, DenseMatrix::from_rows(&rows.map(|r| r.to_vec())).unwrap()).unwrap()
    }

    #[test]
    fn instance_shapes() {
        let ca = ChordalAlgebra::<f64>::new(&star()).unwrap();
        assert_eq!(ca.alg().hermitian_dim(), 5);
        assert!(ca.ordering().is_identity());
        let bad = Ordering::new(vec![3, 1, 2]).unwrap();
        assert!(matches!(build_instance::<f64>(&star(), &bad), Err(Error::OrderingNotVerified)));
        let edgeless = ChordalAlgebra::<f64>::new(&Graph::edgeless(3)).unwrap();
        assert_eq!(edgeless.alg().hermitian_dim(), 3);
    }

    #[test]
    fn pi_g_zeroes_the_missing_edge() {
        let g = star();
        let ones = DenseMatrix::outer(&[1.0, 1.0, 1.0]);
        let p = pi_g(&g, &ones).unwrap();
        assert_eq!(p, pm(&g, [[1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [1.0, 1.0, 1.0]]));
        assert_eq!(pi_g(&g, p.dense()).unwrap(), p);
        assert!(pi_g(&g, &DenseMatrix::<f64>::zeros(3, 3)).unwrap().is_zero());
        let mut asym = ones.clone();
        asym[(0, 2)] = 2.0;
        assert!(matches!(pi_g(&g, &asym), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn rank_one_completion() {
        let g = star();
        let ca = ChordalAlgebra::<f64>::new(&g).unwrap();
        let x = pi_g(&g, &DenseMatrix::outer(&[1.0, 1.0, 1.0])).unwrap();
        let c = ca.max_rank_completion(&x, &Tolerances::default()).unwrap();
        assert_eq!(c.rank, 1);
        assert!(c.w.max_abs_diff(&DenseMatrix::outer(&[1.0, 1.0, 1.0])) < 1e-14);
        assert!(ca.extreme_ray_completable(&x, &Tolerances::default()).unwrap());
        assert!(!ca.extreme_ray_completable(&PatternMatrix::identity(&g), &Tolerances::default()).unwrap());
        assert_eq!(ca.extreme_ray_completable(&PatternMatrix::zeros(&g), &Tolerances::default()), Err(Error::ZeroInput));
    }

    #[test]
    fn half_star_completion_is_exact() {
        let g = star();
        let ca = ChordalAlgebra::<Rational>::new(&g).unwrap();
        let h = q(1, 2);
        let x = PatternMatrix::from_entries(
            &g,
            &[(1, 1, q(1, 1)), (2, 2, q(1, 1)), (3, 3, q(1, 1)), (1, 3, h.clone()), (2, 3, h)],
        )
        .unwrap();
        let det = ca.max_det_completion(&x, &Tolerances::default()).unwrap();
        assert_eq!(det.completion.rank, 3);
        assert_eq!(det.completion.w[(0, 1)], q(1, 4));
        assert_eq!(det.certificate, 0.0);
        assert_eq!(det.determinant, q(9, 16));
    }

    #[test]
    fn non_completable_is_rejected() {
        let g = star();
        let ca = ChordalAlgebra::<f64>::new(&g).unwrap();
        let x = pm(&g, [[1.0, 0.0, 2.0], [0.0, 1.0, 0.0], [2.0, 0.0, 1.0]]);
        assert!(matches!(ca.max_rank_completion(&x, &Tolerances::default()), Err(Error::NotCompletable { .. })));
    }

    #[test]
    fn relabeled_input_maps_back() {
        // center labeled 1: internal ordering puts it last
        let g = Graph::new(3, [(1, 2), (1, 3)]).unwrap();
        let ca = ChordalAlgebra::<f64>::new(&g).unwrap();
        assert_eq!(ca.ordering().new_label(1), 3);
        let x = pi_g(&g, &DenseMatrix::outer(&[1.0, 2.0, 3.0])).unwrap();
        let c = ca.max_rank_completion(&x, &Tolerances::default()).unwrap();
        assert_eq!(c.rank, 1);
        assert!(c.w.max_abs_diff(&DenseMatrix::outer(&[1.0, 2.0, 3.0])) < 1e-12);
        let e = ca.to_element(&x).unwrap();
        assert_eq!(ca.to_pattern(&e).unwrap(), x);
    }

    #[test]
    fn subgraph_faces() {
        let ca = ChordalAlgebra::<f64>::new(&star()).unwrap();
        let f = ca.face_of_subgraph(IndexSet::from_labels(&[1, 2], 3).unwrap(), Side::Dual).unwrap();
        assert_eq!(f.dimension, 2);
        assert_eq!(f.subgraph, Graph::edgeless(2));
        let all = ca.face_of_subgraph(IndexSet::full(3), Side::Dual).unwrap();
        assert_eq!(all.dimension, 5);
        let ray = ca.face_of_subgraph(IndexSet::from_labels(&[3], 3).unwrap(), Side::Dual).unwrap();
        assert_eq!((ray.dimension, ray.rank), (1, 1));
        assert!(ca.face_of_subgraph(IndexSet::from_labels(&[4], 4).unwrap(), Side::Dual).is_err());
    }

    #[test]
    fn clique_union_classification() {
        assert!(!orth_proj_classification(&star()));
        assert!(orth_proj_classification(&Graph::complete(4)));
        assert!(orth_proj_classification(&Graph::edgeless(1)));
    }

    #[test]
    fn pattern_json_round_trip() {
        let g = star();
        let x = pm(&g, [[1.0, 0.0, 0.5], [0.0, 1.0, 0.5], [0.5, 0.5, 1.0]]);
        let j = x.to_json();
        assert_eq!(j["entries"].as_array().unwrap().len(), 5);
        assert_eq!(PatternMatrix::from_json(&j, &g).unwrap(), x);
        let bad = json!({"n": 3, "entries": [[1, 2, 1.0]]});
        assert!(PatternMatrix::<f64>::from_json(&bad, &g).is_err());
    }
}
