mod common;

use common::*;
use hcone::cholesky::{Membership, Side, Tolerances};
use hcone::chordal::{orth_proj_classification, pi_g, ChordalAlgebra, PatternMatrix};
use hcone::dense::DenseMatrix;
use hcone::faces::{is_extreme_ray, minimal_face, principal_dimension};
use hcone::sampling::Sampler;
use hcone::{Graph, IndexSet, Rational, Scalar, Shape};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

#[test]
fn recognition_matches_the_scan_up_to_seven_vertices() {
    for n in 1..=7 {
        for mask in 0..1u64 << pair_count(n) {
            let g = Graph::from_edge_mask(n, mask);
            let want = !has_forbidden_by_scan(&adjacency(n, mask));
            assert_eq!(g.is_homogeneous_chordal(), want, "n={n} mask={mask:#x}");
            if want {
                let ord = g.trivially_perfect_ordering().unwrap();
                assert!(g.verify_tpeo(&ord), "n={n} mask={mask:#x}");
            }
        }
    }
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..=7).prop_flat_map(|n| (0..1u64 << pair_count(n)).prop_map(move |m| Graph::from_edge_mask(n, m)))
}

proptest! {
    #[test]
    fn recognition_is_hereditary(g in graph_strategy(), bits in any::<u64>()) {
        let keep = IndexSet::from_bits(bits).intersection(IndexSet::full(g.n()));
        prop_assume!(!keep.is_empty());
        if g.is_homogeneous_chordal() {
            prop_assert!(g.induced_subgraph(keep).unwrap().is_homogeneous_chordal());
        }
    }

    #[test]
    fn ordering_is_deterministic(g in graph_strategy()) {
        let a = g.trivially_perfect_ordering();
        let b = g.clone().trivially_perfect_ordering();
        prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }

    #[test]
    fn relabeling_preserves_recognition(g in graph_strategy(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (1..=g.n()).collect();
        let mut s = Sampler::new(seed);
        use rand::seq::SliceRandom;
        perm.shuffle(s.rng());
        let h = g.relabel(&hcone::Ordering::new(perm).unwrap()).unwrap();
        prop_assert_eq!(h.is_homogeneous_chordal(), g.is_homogeneous_chordal());
    }
}

#[test]
fn star_instance_has_five_dimensional_hermitian_space() {
    let ca = ChordalAlgebra::<f64>::new(&star3()).unwrap();
    assert_eq!(ca.alg().rank(), 3);
    assert_eq!(ca.alg().hermitian_dim(), 5);
    let dims = [(vec![], 5), (vec![3], 2), (vec![1], 3), (vec![2], 3), (vec![1, 2], 1)];
    for (zeroed, d) in dims {
        assert_eq!(principal_dimension(ca.alg(), IndexSet::from_labels(&zeroed, 3).unwrap()), d, "{zeroed:?}");
    }
}

/// Star products agree with ordinary matrix products for lower/lower and
/// upper/upper pairs, and `l ⋆ l^T = l l^T` for lower `l`. (For upper `u`
/// the product `u u^T` may fill outside the pattern.)
#[test]
fn pattern_star_of_triangular_pairs_is_the_ordinary_product() {
    let mut s = Sampler::new(41);
    for g in trivially_perfect_graphs_up_to(5) {
        let ca = ChordalAlgebra::<f64>::new(&g).unwrap();
        let alg = ca.alg();
        for _ in 0..20 {
            for shape in [Shape::Upper, Shape::Lower] {
                let a = s.triangular(alg, shape, false);
                let b = s.triangular(alg, shape, false);
                let (da, db) = (ca.element_to_dense(a.elem()), ca.element_to_dense(b.elem()));
                let star = ca.element_to_dense(&alg.star(a.elem(), b.elem()).unwrap());
                assert!(star.max_abs_diff(&da.mul(&db).unwrap()) <= 1e-10, "{:?}", g.edges());
                if shape == Shape::Upper {
                    continue;
                }
                let square = ca.element_to_dense(&alg.star(a.elem(), &alg.involution(a.elem())).unwrap());
                assert!(square.max_abs_diff(&da.mul(&da.transpose()).unwrap()) <= 1e-10, "{:?}", g.edges());
            }
        }
    }
}

#[test]
fn cones_contain_their_generators() {
    let tol = Tolerances::default();
    let mut s = Sampler::new(43);
    for g in trivially_perfect_graphs_up_to(5) {
        let ca = ChordalAlgebra::<f64>::new(&g).unwrap();
        let n = g.n();
        for _ in 0..10 {
            // l l^T for a pattern-lower l with nonnegative diagonal is in S₊(G)
            let l = s.triangular(ca.alg(), Shape::Lower, false);
            let mut l = l.into_elem();
            for i in 0..n {
                let d = &mut l.component_mut(i, i)[0];
                *d = d.abs();
            }
            let dense = ca.element_to_dense(&l);
            let y = PatternMatrix::new(&g, dense.mul(&dense.transpose()).unwrap()).unwrap();
            assert!(ca.membership(&y, Side::Dual, &tol).unwrap().is_member());

            // π_G(w w^T) for dense w is completable
            let data: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| s.dyadic()).collect()).collect();
            let w = DenseMatrix::from_rows(&data).unwrap();
            let x = pi_g(&g, &w.mul(&w.transpose()).unwrap()).unwrap();
            assert!(ca.membership(&x, Side::Primal, &tol).unwrap().is_member());
        }
    }
}

#[test]
fn completions_are_exact_in_rational_mode() {
    let tol = Tolerances::default();
    let mut s = Sampler::new(47);
    for g in trivially_perfect_graphs_up_to(4) {
        let ca = ChordalAlgebra::<Rational>::new(&g).unwrap();
        let n = g.n();
        for k in 1..=n {
            let data: Vec<Vec<Rational>> = (0..n).map(|_| (0..k).map(|_| s.dyadic()).collect()).collect();
            let b = DenseMatrix::from_rows(&data).unwrap();
            let x = pi_g(&g, &b.mul(&b.transpose()).unwrap()).unwrap();
            if x.is_zero() {
                continue;
            }
            let comp = ca.max_rank_completion(&x, &tol).unwrap();
            assert_eq!(pi_g(&g, &comp.w).unwrap(), x);
            assert_eq!(comp.w.numerical_rank(1e-9), comp.rank);
            assert!(comp.w.is_psd(1e-12));
        }
    }
}

/// No completion can exceed the maximum rank: the exposing vector of the
/// minimal face is PSD, has rank `n − r`, and is orthogonal to every
/// completion, so every completion has its range in an `r`-dimensional
/// kernel.
#[test]
fn maximum_rank_is_certified_by_the_exposing_vector() {
    let tol = Tolerances::default();
    let mut s = Sampler::new(53);
    for g in trivially_perfect_graphs_up_to(4) {
        let ca = ChordalAlgebra::<f64>::new(&g).unwrap();
        let n = g.n();
        for k in 1..n {
            let data: Vec<Vec<f64>> = (0..n).map(|_| (0..k).map(|_| s.dyadic()).collect()).collect();
            let b = DenseMatrix::from_rows(&data).unwrap();
            let x = pi_g(&g, &b.mul(&b.transpose()).unwrap()).unwrap();
            if x.is_zero() {
                continue;
            }
            let r = ca.max_rank_completion(&x, &tol).unwrap().rank;
            let cert = ca.minimal_face(&x, Side::Primal, &tol).unwrap();
            let y = ca.element_to_dense(&cert.exposing);
            assert!(y.is_psd(1e-9));
            assert_eq!(y.numerical_rank(1e-9), n - r, "{:?}", g.edges());
            let inner: f64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| x.dense()[(i, j)] * y[(i, j)]).sum();
            assert!(inner.abs() <= 1e-9);
        }
    }
}

#[test]
fn worked_example_point_is_not_extreme() {
    let g = star3();
    let ca = ChordalAlgebra::<f64>::new(&g).unwrap();
    let x = PatternMatrix::from_entries(&g, &[(1, 1, 1.0), (2, 2, 1.0), (3, 3, 2.0), (1, 3, 1.0), (2, 3, 1.0)]).unwrap();
    let e = ca.to_element(&x).unwrap();
    let tol = Tolerances::default();
    assert!(!is_extreme_ray(ca.alg(), &e, Side::Dual, &tol).unwrap());
    assert_eq!(minimal_face(ca.alg(), &e, Side::Dual, &tol).unwrap().face_rank, 2);

    let ones = pi_g(&g, &DenseMatrix::outer(&[1.0, 1.0, 1.0])).unwrap();
    assert_eq!(ones.dense(), &dense(&[&[1.0, 0.0, 1.0], &[0.0, 1.0, 1.0], &[1.0, 1.0, 1.0]]));
    assert!(ca.extreme_ray_completable(&ones, &tol).unwrap());
    assert!(!ca.extreme_ray_completable(&PatternMatrix::identity(&g), &tol).unwrap());
    let w = ca.max_rank_completion(&ones, &tol).unwrap();
    assert_eq!((w.w, w.rank), (DenseMatrix::outer(&[1.0, 1.0, 1.0]), 1));
}

#[test]
fn non_completable_point_is_outside() {
    let g = star3();
    let ca = ChordalAlgebra::<Rational>::new(&g).unwrap();
    let x = PatternMatrix::from_entries(&g, &[(1, 1, q(1, 1)), (2, 2, q(1, 1)), (3, 3, q(1, 1)), (1, 3, q(2, 1))]).unwrap();
    assert_eq!(ca.membership(&x, Side::Primal, &Tolerances::default()).unwrap(), Membership::Outside);
    assert!(matches!(ca.max_rank_completion(&x, &Tolerances::default()), Err(hcone::Error::NotCompletable { .. })));
}

#[test]
fn half_star_max_det_completion() {
    let g = star3();
    let ca = ChordalAlgebra::<Rational>::new(&g).unwrap();
    let h = q(1, 2);
    let x = PatternMatrix::from_entries(
        &g,
        &[(1, 1, q(1, 1)), (2, 2, q(1, 1)), (3, 3, q(1, 1)), (1, 3, h.clone()), (2, 3, h)],
    )
    .unwrap();
    let md = ca.max_det_completion(&x, &Tolerances::default()).unwrap();
    assert_eq!(md.completion.w[(0, 1)], q(1, 4));
    // det as a function of the free entry f is 1/2 + f/2 - f^2
    assert_eq!(md.determinant, q(9, 16));
    assert_eq!(md.certificate, 0.0);
    assert_eq!(pi_g(&g, &md.inverse).unwrap().dense(), &md.inverse);
}

#[test]
fn trivial_completions() {
    let tol = Tolerances::default();
    let g = Graph::edgeless(3);
    let ca = ChordalAlgebra::<f64>::new(&g).unwrap();
    let x = PatternMatrix::from_entries(&g, &[(1, 1, 2.0), (2, 2, 3.0), (3, 3, 5.0)]).unwrap();
    let md = ca.max_det_completion(&x, &tol).unwrap();
    assert_eq!(&md.completion.w, x.dense());
    let full = Graph::complete(3);
    let ca = ChordalAlgebra::<f64>::new(&full).unwrap();
    let x = PatternMatrix::new(&full, dense(&[&[2.0, 1.0, 0.0], &[1.0, 2.0, 1.0], &[0.0, 1.0, 2.0]])).unwrap();
    assert!(ca.max_det_completion(&x, &tol).unwrap().completion.w.max_abs_diff(x.dense()) <= 1e-12);
    let rank_deficient = PatternMatrix::new(&full, DenseMatrix::outer(&[1.0, 2.0, 3.0])).unwrap();
    assert!(matches!(ca.max_det_completion(&rank_deficient, &tol), Err(hcone::Error::RankDeficient { rank: 1, n: 3 })));
}

#[test]
fn reduction_of_the_worked_example() {
    let g = star3();
    let ca = ChordalAlgebra::<Rational>::new(&g).unwrap();
    let one = q(1, 1);
    let x = PatternMatrix::from_entries(
        &g,
        &[(1, 1, one.clone()), (2, 2, one.clone()), (3, 3, q(2, 1)), (1, 3, one.clone()), (2, 3, one.clone())],
    )
    .unwrap();
    let tol = Tolerances::default();
    let cert = ca.minimal_face(&x, Side::Dual, &tol).unwrap();
    let red = ca.congruence_reduce(&cert, std::slice::from_ref(&x)).unwrap();
    assert_eq!(red.kept, vec![1, 2]);
    assert_eq!(red.subgraph, Graph::edgeless(2));
    assert_eq!(red.matrices[0].matrix.dense(), &DenseMatrix::identity(2));
    assert_eq!(red.matrices[0].dropped_mass, 0.0);

    // a primal certificate is rejected
    let primal = ca.minimal_face(&PatternMatrix::identity(&g), Side::Primal, &tol).unwrap();
    assert!(matches!(ca.congruence_reduce(&primal, &[]), Err(hcone::Error::CertificateMismatch(_))));

    // the identity has an empty zero set and a trivial certificate
    let id = ca.minimal_face(&PatternMatrix::identity(&g), Side::Dual, &tol).unwrap();
    let red = ca.congruence_reduce(&id, std::slice::from_ref(&x)).unwrap();
    assert_eq!(red.subgraph, g);
    assert_eq!(&red.matrices[0].matrix, &x);
}

/// The data-side reduction preserves `⟨a, y⟩` for every `y` in the face,
/// and reduced matrices stay in the pattern of the induced subgraph.
#[test]
fn data_reduction_preserves_inner_products_on_the_face() {
    let tol = Tolerances::default();
    let mut s = Sampler::new(59);
    for g in trivially_perfect_graphs_up_to(4).into_iter().filter(|g| g.n() >= 2) {
        let ca = ChordalAlgebra::<Rational>::new(&g).unwrap();
        let alg = ca.alg();
        let r = alg.rank();
        let zeroed = s.proper_nonempty_index_set(r);
        let l = s.proper_factor(alg, Shape::Lower, zeroed);
        let x = alg.star(l.elem(), &alg.involution(l.elem())).unwrap();
        let cert = minimal_face(alg, &x, Side::Dual, &tol).unwrap();
        let data: Vec<PatternMatrix<Rational>> = (0..3).map(|_| ca.to_pattern(&s.hermitian(alg)).unwrap()).collect();
        let red = ca.congruence_reduce_data(&cert, &data).unwrap();
        let point = ca.congruence_reduce(&cert, std::slice::from_ref(&ca.to_pattern(&x).unwrap())).unwrap();
        for (a, ra) in data.iter().zip(&red.matrices) {
            let full = alg.inner(&ca.to_element(a).unwrap(), &x).unwrap();
            let small = ra.matrix.dense();
            let px = point.matrices[0].matrix.dense();
            let k = small.rows();
            let reduced: Rational = (0..k)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .fold(Rational::from_ratio(0, 1), |acc, (i, j)| acc + small[(i, j)].clone() * px[(i, j)].clone());
            assert_eq!(full, reduced, "{:?}", g.edges());
            assert_eq!(ra.matrix.graph(), &red.subgraph);
        }
    }
}

#[test]
fn orthogonal_projectional_exposure_classification() {
    let triangles = Graph::new(6, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)]).unwrap();
    assert!(orth_proj_classification(&triangles));
    assert!(!orth_proj_classification(&star3()));
    assert!(orth_proj_classification(&Graph::edgeless(1)));
}
