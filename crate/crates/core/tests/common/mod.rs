//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use degen::curve::StableModel;
use degen::exact::rational::int;
use degen::exact::{kernel, ExactMatrix, GaussianRational, Poly, PolyMatrix, Subspace};
use degen::mhs::WeightFiltration;
use num_traits::{One, Zero};

/// `W_{c+k} = Σ_{j ≥ 0} im N^j ∩ ker N^{k+j+1}`, read off Jordan chains;
/// compared step by step over `[c - dim, c + dim]`.
pub fn jordan_weight_step(n: &ExactMatrix, center: i64, level: i64) -> Subspace {
    let dim = n.rows();
    let k = level - center;
    let mut acc = Subspace::zero(dim);
    for j in 0..=dim as i64 {
        let e = k + j + 1;
        if e <= 0 {
            continue;
        }
        let im = Subspace::full(dim).image(&n.pow(j as u32));
        let ker = kernel(&n.pow(e as u32));
        acc = acc.sum(&im.intersection(&ker));
    }
    acc
}

pub fn same_as_oracle(n: &ExactMatrix, w: &WeightFiltration) -> bool {
    let dim = n.rows() as i64;
    let c = w.center();
    (c - dim - 1..=c + dim + 1).all(|k| w.step(k) == jordan_weight_step(n, c, k))
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting at `pos` moves the new element past `len - pos` others
            let parity = (p.len() - pos) % 2 == 0;
            out.push((q, even == parity));
        }
    }
    out
}

/// Leibniz expansion of a polynomial determinant.
pub fn leibniz_det(m: &PolyMatrix) -> Poly {
    let n = m.rows();
    let mut acc = Poly::zero();
    for (perm, even) in permutations(n) {
        let mut term = Poly::one();
        for (i, &j) in perm.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        acc = if even { &acc + &term } else { &acc - &term };
    }
    acc
}

pub fn leibniz_det_const(m: &ExactMatrix) -> GaussianRational {
    let n = m.rows();
    let mut acc = GaussianRational::zero();
    for (perm, even) in permutations(n) {
        let mut term = GaussianRational::one();
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &m[(i, j)];
        }
        acc = if even { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `h^0` from Riemann–Roch: `deg - g + 1 + h^1`, with `deg K̃^k = k(2g-2) + (k-1)d`,
/// `h^1 = 1` for `k = 1` and `0` beyond.
pub fn rr_h0(g: i64, d: i64, k: i64) -> i64 {
    let deg = k * (2 * g - 2) + (k - 1) * d;
    let h1 = if k == 1 { 1 } else { 0 };
    deg - g + 1 + h1
}

pub fn rr_smooth(g: i64, m: i64) -> i64 {
    (1..=m).map(|k| rr_h0(g, 0, k)).sum()
}

pub fn rr_central(model: &StableModel, m: i64) -> i64 {
    let graph = model.graph();
    let mut d = vec![0i64; graph.vertex_count()];
    for &(a, b) in graph.edges() {
        d[a] += 1;
        d[b] += 1;
    }
    graph.genera().iter().zip(&d).map(|(&g, &di)| (1..=m).map(|k| rr_h0(g as i64, di, k)).sum::<i64>()).sum()
}

pub fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(int(re), int(im))
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}
