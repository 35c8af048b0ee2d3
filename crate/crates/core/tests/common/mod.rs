//! Fixtures and brute-force oracles shared by the integration tests.
//! Nothing here calls the recognition code under test.

#![allow(dead_code)]

use hcone::chordal::PatternMatrix;
use hcone::dense::DenseMatrix;
use hcone::Graph;

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Adjacency matrix of the edge mask, pairs in lexicographic order.
pub fn adjacency(n: usize, mask: u64) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    let mut bit = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> bit & 1 == 1 {
                adj[i][j] = true;
                adj[j][i] = true;
            }
            bit += 1;
        }
    }
    adj
}

fn mask_of(adj: &[Vec<bool>]) -> u64 {
    let n = adj.len();
    let mut mask = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if adj[i][j] {
                mask |= 1 << bit;
            }
            bit += 1;
        }
    }
    mask
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..left.len() {
            let v = left.remove(k);
            prefix.push(v);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(k, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// Smallest edge mask among all relabelings.
pub fn canonical_mask(n: usize, mask: u64, perms: &[Vec<usize>]) -> u64 {
    let adj = adjacency(n, mask);
    perms
        .iter()
        .map(|p| {
            let relabeled: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| adj[p[i]][p[j]]).collect()).collect();
            mask_of(&relabeled)
        })
        .min()
        .unwrap()
}

/// Induced P4 or C4 somewhere, by degree sequences of all 4-subsets:
/// an induced P4 has 3 edges and degrees {1,1,2,2}; an induced C4 has 4
/// edges, all degrees 2. (A star K_{1,3} has degrees {1,1,1,3}.)
pub fn has_forbidden_by_scan(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    let q = [a, b, c, d];
                    let mut deg = [0usize; 4];
                    let mut edges = 0;
                    for x in 0..4 {
                        for y in (x + 1)..4 {
                            if adj[q[x]][q[y]] {
                                deg[x] += 1;
                                deg[y] += 1;
                                edges += 1;
                            }
                        }
                    }
                    deg.sort_unstable();
                    if (edges == 3 && deg == [1, 1, 2, 2]) || (edges == 4 && deg == [2, 2, 2, 2]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Pairwise non-isomorphic trivially perfect graphs on `n` vertices.
pub fn trivially_perfect_graphs(n: usize) -> Vec<Graph> {
    let perms = permutations(n);
    (0..1u64 << pair_count(n))
        .filter(|&m| canonical_mask(n, m, &perms) == m && !has_forbidden_by_scan(&adjacency(n, m)))
        .map(|m| Graph::from_edge_mask(n, m))
        .collect()
}

pub fn trivially_perfect_graphs_up_to(n_max: usize) -> Vec<Graph> {
    (1..=n_max).flat_map(trivially_perfect_graphs).collect()
}

/// The three-vertex star with center `3`.
pub fn star3() -> Graph {
    Graph::new(3, [(1, 3), (2, 3)]).unwrap()
}

pub fn dense(rows: &[&[f64]]) -> DenseMatrix<f64> {
    DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// Brute-force extreme-ray oracle for a completable `x`: every rank-one
/// completion `vv^T` must have `v_i = ±√x_ii`, so all sign vectors are
/// tried. `x` spans an extreme ray iff some rank-one completion exists and
/// the average of all of them still has eigenvalue rank one (two distinct
/// rank-one completions would average to rank two).
pub fn extreme_by_sign_enumeration(x: &PatternMatrix<f64>, tol: f64) -> bool {
    let g = x.graph();
    let n = x.n();
    let d = x.dense();
    let scale = d.max_abs().max(1.0);
    let roots: Vec<f64> = (0..n).map(|i| d[(i, i)].max(0.0).sqrt()).collect();
    let support: Vec<usize> = (0..n).filter(|&i| d[(i, i)] > tol * scale).collect();
    let mut matches: Vec<DenseMatrix<f64>> = Vec::new();
    for signs in 0..1u64 << support.len() {
        let mut v = vec![0.0; n];
        for (k, &i) in support.iter().enumerate() {
            v[i] = if signs >> k & 1 == 1 { -roots[i] } else { roots[i] };
        }
        let outer = DenseMatrix::outer(&v);
        let fits = (0..n).all(|i| {
            (0..n).all(|j| i != j && !g.has_edge(i + 1, j + 1) || (outer[(i, j)] - d[(i, j)]).abs() <= tol * scale)
        });
        if fits {
            matches.push(outer);
        }
    }
    if matches.is_empty() {
        return false;
    }
    let k = matches.len() as f64;
    let avg = matches.iter().skip(1).fold(matches[0].clone(), |acc, m| acc.add(m)).scale(&(1.0 / k));
    avg.numerical_rank(1e-9) == 1
}
