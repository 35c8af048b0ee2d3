use nalgebra::DMatrix;
use serde::Serialize;

use super::{BigradedElement, TAlgebra};
use crate::sampling::Sampler;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomEntry {
    pub axiom: String,
    pub max_violation: f64,
    /// Where the largest violation occurred, if any was nonzero.
    pub witness: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn max_violation(&self) -> f64 {
        self.entries.iter().map(|e| e.max_violation).fold(0.0, f64::max)
    }
}

/// Running maximum of a violation and where it happened.
struct Tracker {
    axiom: &'static str,
    worst: f64,
    witness: Option<String>,
}

impl Tracker {
    fn new(axiom: &'static str) -> Self {
        Tracker { axiom, worst: 0.0, witness: None }
    }

    fn record(&mut self, v: f64, witness: impl FnOnce() -> String) {
        let v = if v.is_nan() { f64::INFINITY } else { v };
        if v > self.worst {
            self.worst = v;
            self.witness = Some(witness());
        }
    }

    fn finish(self, tol: f64) -> AxiomEntry {
        AxiomEntry {
            axiom: self.axiom.to_string(),
            max_violation: self.worst,
            witness: self.witness,
            passed: self.worst <= tol,
        }
    }
}

fn diff<S: Scalar>(a: &[S], b: &[S]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.clone() - y.clone()).abs().to_f64_lossy())
        .fold(0.0, f64::max)
}

fn basis<S: Scalar>(d: usize, p: usize) -> Vec<S> {
    (0..d).map(|q| if q == p { S::one() } else { S::zero() }).collect()
}

/// Evaluates the axioms on `n_samples` seeded random elements. Axioms
/// (a1), (a2) and the definiteness part of (a5) are checked on basis
/// vectors; the rest on samples. Each entry passes when its violation is
/// at most `tol`. An extra `involution` entry checks `a** = a` and
/// `(ab)* = b*a*`.
pub fn check_axioms<S: Scalar>(alg: &TAlgebra<S>, n_samples: usize, seed: u64, tol: f64) -> AxiomReport {
    let r = alg.rank();
    let mut sampler = Sampler::new(seed);
    let samples: Vec<[BigradedElement<S>; 3]> = (0..n_samples.max(1))
        .map(|_| [sampler.element(alg), sampler.element(alg), sampler.element(alg)])
        .collect();

    let mut a1 = Tracker::new("a1");
    for i in 0..r {
        if alg.dim(i, i) != 1 {
            a1.record(f64::INFINITY, || format!("dim A_{0}{0} != 1", i + 1));
            continue;
        }
        let one = [S::one()];
        let sq = alg.component_product(i, i, i, &one, &one);
        a1.record(diff(&sq, &one), || format!("e_{0} e_{0} != e_{0}", i + 1));
    }

    let mut a2 = Tracker::new("a2");
    for i in 0..r {
        let one = [S::one()];
        for j in 0..r {
            let d = alg.dim(i, j);
            for p in 0..d {
                let b: Vec<S> = basis(d, p);
                let left = alg.component_product(i, i, j, &one, &b);
                a2.record(diff(&left, &b), || format!("e_{} a_{}{} != a_{}{}", i + 1, i + 1, j + 1, i + 1, j + 1));
                let right = alg.component_product(j, i, i, &basis(alg.dim(j, i), p), &one);
                let bj: Vec<S> = basis(alg.dim(j, i), p);
                a2.record(diff(&right, &bj), || format!("a_{}{} e_{} != a_{}{}", j + 1, i + 1, i + 1, j + 1, i + 1));
            }
        }
    }

    let mut inv = Tracker::new("involution");
    let mut a3 = Tracker::new("a3");
    let mut a4 = Tracker::new("a4");
    let mut a5 = Tracker::new("a5");
    let mut a6 = Tracker::new("a6");
    let mut a7 = Tracker::new("a7");

    for (s, [a, b, c]) in samples.iter().enumerate() {
        let at = alg.involution(a);
        inv.record(diff_elem(&alg.involution(&at), a), || format!("a** != a, sample {s}"));
        let ab = alg.star_unchecked(a, b);
        let ba = alg.star_unchecked(b, a);
        let lhs = alg.involution(&ab);
        let rhs = alg.star_unchecked(&alg.involution(b), &at);
        inv.record(diff_elem(&lhs, &rhs), || format!("(ab)* != b*a*, sample {s}"));

        let v = (alg.trace(&ab) - alg.trace(&ba)).abs().to_f64_lossy();
        a3.record(v, || format!("tr(ab) != tr(ba), sample {s}"));

        let left = alg.trace(&alg.star_unchecked(&ab, c));
        let right = alg.trace(&alg.star_unchecked(a, &alg.star_unchecked(b, c)));
        a4.record((left - right).abs().to_f64_lossy(), || format!("tr((ab)c) != tr(a(bc)), sample {s}"));

        let n = alg.trace(&alg.star_unchecked(a, &at));
        if n < S::zero() {
            a5.record(-n.to_f64_lossy(), || format!("tr(aa*) < 0, sample {s}"));
        }

        for i in 0..r {
            for j in i..r {
                for k in j..r {
                    for l in k..r {
                        if alg.dim(i, l) == 0 {
                            continue;
                        }
                        let bc = alg.component_product(j, k, l, b.component(j, k), c.component(k, l));
                        let lhs = alg.component_product(i, j, l, a.component(i, j), &bc);
                        let abp = alg.component_product(i, j, k, a.component(i, j), b.component(j, k));
                        let rhs = alg.component_product(i, k, l, &abp, c.component(k, l));
                        a6.record(diff(&lhs, &rhs), || {
                            format!("(i,j,k,l)=({},{},{},{}), sample {s}", i + 1, j + 1, k + 1, l + 1)
                        });
                    }
                }
                for k in j..r {
                    for l in 0..=k {
                        if alg.dim(i, l) == 0 {
                            continue;
                        }
                        let blk_t = alg.component_involution(l, k, b.component(l, k));
                        let inner = alg.component_product(j, k, l, b.component(j, k), &blk_t);
                        let lhs = alg.component_product(i, j, l, a.component(i, j), &inner);
                        let abp = alg.component_product(i, j, k, a.component(i, j), b.component(j, k));
                        let rhs = alg.component_product(i, k, l, &abp, &blk_t);
                        a7.record(diff(&lhs, &rhs), || {
                            format!("(i,j,k,l)=({},{},{},{}), sample {s}", i + 1, j + 1, k + 1, l + 1)
                        });
                    }
                }
            }
        }
    }

    // definiteness of tr(aa*) restricted to each component
    for i in 0..r {
        for j in 0..r {
            let d = alg.dim(i, j);
            if d == 0 {
                continue;
            }
            let gram = DMatrix::from_fn(d, d, |p, q| {
                let bq = alg.component_involution(i, j, &basis::<S>(d, q));
                alg.component_product(i, j, i, &basis::<S>(d, p), &bq)[0].to_f64_lossy()
            });
            let sym = (&gram + gram.transpose()) * 0.5;
            let lambda = sym.symmetric_eigenvalues().min();
            if lambda <= 1e-12 {
                let v = if lambda < 0.0 { -lambda } else { 1.0 };
                a5.record(v, || format!("tr(aa*) not positive definite on A_{}{}", i + 1, j + 1));
            }
        }
    }

    AxiomReport {
        entries: vec![
            a1.finish(tol),
            a2.finish(tol),
            a3.finish(tol),
            a4.finish(tol),
            a5.finish(tol),
            a6.finish(tol),
            a7.finish(tol),
            inv.finish(tol),
        ],
    }
}

fn diff_elem<S: Scalar>(a: &BigradedElement<S>, b: &BigradedElement<S>) -> f64 {
    a.max_abs_diff(b).to_f64_lossy()
}
