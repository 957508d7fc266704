//! Seeded generators of nilpotent matrices and limiting mixed Hodge structures
//! whose weight filtration is known by construction.
//!
//! An LMHS is assembled as a direct sum of blocks `H ⊗ S_L`: `H` a polarized
//! pure Hodge structure of weight `w`, and `S_L` the `(L+1)`-dimensional
//! representation of `sl_2` with basis `t_0, …, t_L`, `N t_j = t_{j+1}`, `t_j` of
//! type `(L-j, L-j)` and `Q(t_i, t_{L-i}) = (-1)^i`. With `w + L = n` the sum
//! is split over ℝ; a rational change of basis and a twist `e^{zN}` of `F`
//! then hide the splitting.

use crate::exact::rational::{int, rat};
use crate::exact::{ExactMatrix, GaussianRational, Rational, Subspace};
use crate::mhs::{HodgeFiltration, LimitingMixedHodge, NilpotentEndo, PolarizedLattice, WeightFiltration};
use num_traits::{One, Zero};
use rand::Rng;

/// A nilpotent matrix with the weight filtration read off its Jordan basis.
#[derive(Clone, Debug)]
pub struct RandomNilpotent {
    pub n: ExactMatrix,
    pub center: i64,
    pub jordan_type: Vec<usize>,
    pub known: WeightFiltration,
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(-3..=3);
    let den = if rng.gen_bool(0.25) { 2 } else { 1 };
    rat(num, den)
}

/// A random invertible rational matrix with small entries.
pub fn random_invertible<R: Rng>(rng: &mut R, dim: usize) -> ExactMatrix {
    loop {
        let mut m = ExactMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                // bias toward the identity keeps entries of the inverse small
                let base = if i == j { int(1) } else { Rational::zero() };
                let r = if rng.gen_bool(0.5) { random_rational(rng) } else { Rational::zero() };
                m[(i, j)] = GaussianRational::real(base + r);
            }
        }
        if m.rank() == dim {
            return m;
        }
    }
}

fn random_partition<R: Rng>(rng: &mut R, dim: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = dim;
    while left > 0 {
        let s = rng.gen_range(1..=left);
        parts.push(s);
        left -= s;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Filtration `W_k = span{ g e_i : weight_i ≤ k }` over `[low, high]`.
fn filtration_from_weights(g: &ExactMatrix, weights: &[i64], center: i64, low: i64, high: i64) -> WeightFiltration {
    let steps = (low..=high)
        .map(|k| {
            let idx: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] <= k).collect();
            Subspace::coordinate(weights.len(), &idx).image(g)
        })
        .collect();
    WeightFiltration::candidate(center, low, steps).expect("increasing and exhaustive")
}

/// Random Jordan type of dimension `1..=max_dim`, conjugated by a random rational matrix.
pub fn random_nilpotent<R: Rng>(rng: &mut R, max_dim: usize) -> RandomNilpotent {
    let dim = rng.gen_range(1..=max_dim);
    let jordan_type = random_partition(rng, dim);
    let center = rng.gen_range(-2..=3);
    let mut j = ExactMatrix::zeros(dim, dim);
    let mut weights = Vec::with_capacity(dim);
    let mut offset = 0;
    for &s in &jordan_type {
        for k in 0..s {
            if k + 1 < s {
                j[(offset + k + 1, offset + k)] = GaussianRational::one();
            }
            weights.push(center + (s as i64 - 1) - 2 * k as i64);
        }
        offset += s;
    }
    let g = random_invertible(rng, dim);
    let n = &(&g * &j) * &g.inverse().expect("invertible");
    let top = jordan_type[0] as i64 - 1;
    let known = filtration_from_weights(&g, &weights, center, center - top, center + top);
    RandomNilpotent { n, center, jordan_type, known }
}

/// One summand of a pure Hodge structure of weight `w`: `(p, p)` when `2p = w`,
/// otherwise the pair `(p, w-p) ⊕ (w-p, p)` with `p > w - p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HodgePiece {
    pub p: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub sl2: u32,
    pub pieces: Vec<HodgePiece>,
}

impl Block {
    fn h_dim(&self, w: u32) -> usize {
        self.pieces.iter().map(|pc| if 2 * pc.p == w { 1 } else { 2 }).sum()
    }

    pub fn dim(&self, n: u32) -> usize {
        self.h_dim(n - self.sl2) * (self.sl2 as usize + 1)
    }

    /// Pieces reaching `F^n`, i.e. of type `(w, 0)`.
    pub fn top_count(&self, n: u32) -> usize {
        let w = n - self.sl2;
        self.pieces.iter().filter(|pc| pc.p == w).count()
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedLmhs {
    pub weight: u32,
    pub blocks: Vec<Block>,
    pub lmhs: LimitingMixedHodge,
    pub known_w: WeightFiltration,
    /// `Σ` over blocks of `L ·` (number of `(w, 0)` pieces).
    pub expected_degree: usize,
    pub twist: GaussianRational,
}

/// `(Q, N, F steps, weights)` of the split structure in standard coordinates.
pub struct SplitData {
    pub q: ExactMatrix,
    pub n: ExactMatrix,
    pub f: Vec<Subspace>,
    pub weights: Vec<i64>,
}

pub fn split_data(weight: u32, blocks: &[Block]) -> SplitData {
    let dim: usize = blocks.iter().map(|b| b.dim(weight)).sum();
    let mut q = ExactMatrix::zeros(dim, dim);
    let mut n = ExactMatrix::zeros(dim, dim);
    let mut weights = vec![0i64; dim];
    // (first Hodge index, vector)
    let mut typed: Vec<(u32, Vec<GaussianRational>)> = Vec::new();
    let g = |x: i64| GaussianRational::from_int(x);
    let mut offset = 0;
    for b in blocks {
        let l = b.sl2 as usize;
        let w = weight - b.sl2;
        let hd = b.h_dim(w);
        let idx = |h: usize, j: usize| offset + h * (l + 1) + j;
        // Q_H and typed vectors of H
        let mut qh = ExactMatrix::zeros(hd, hd);
        let mut h_types: Vec<(u32, Vec<GaussianRational>)> = Vec::new();
        let mut h = 0;
        for pc in &b.pieces {
            if 2 * pc.p == w {
                qh[(h, h)] = g(1);
                let mut v = vec![GaussianRational::zero(); hd];
                v[h] = g(1);
                h_types.push((pc.p, v));
                h += 1;
            } else {
                let diff = (2 * pc.p - w) as i64;
                if w % 2 == 1 {
                    let s = if ((diff + 1) / 2) % 2 == 0 { -1 } else { 1 };
                    qh[(h, h + 1)] = g(s);
                    qh[(h + 1, h)] = g(-s);
                } else {
                    let c = if (diff / 2) % 2 == 0 { 1 } else { -1 };
                    qh[(h, h)] = g(c);
                    qh[(h + 1, h + 1)] = g(c);
                }
                let mut u = vec![GaussianRational::zero(); hd];
                u[h] = g(1);
                u[h + 1] = GaussianRational::i();
                let ubar = u.iter().map(GaussianRational::conj).collect();
                h_types.push((pc.p, u));
                h_types.push((w - pc.p, ubar));
                h += 2;
            }
        }
        for a in 0..hd {
            for c in 0..hd {
                if qh[(a, c)].is_zero() {
                    continue;
                }
                for i in 0..=l {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    q[(idx(a, i), idx(c, l - i))] = qh[(a, c)].scale(&int(sign));
                }
            }
            for j in 0..=l {
                weights[idx(a, j)] = weight as i64 + l as i64 - 2 * j as i64;
                if j < l {
                    n[(idx(a, j + 1), idx(a, j))] = g(1);
                }
            }
        }
        for (p, v) in &h_types {
            for j in 0..=l {
                let mut full = vec![GaussianRational::zero(); dim];
                for a in 0..hd {
                    full[idx(a, j)] = v[a].clone();
                }
                typed.push((p + (l - j) as u32, full));
            }
        }
        offset += b.dim(weight);
    }
    let f = (0..=weight)
        .map(|a| {
            let vs: Vec<_> = typed.iter().filter(|(p, _)| *p >= a).map(|(_, v)| v.clone()).collect();
            Subspace::from_vectors(dim, &vs).expect("ambient length")
        })
        .collect();
    SplitData { q, n, f, weights }
}

fn random_block<R: Rng>(rng: &mut R, n: u32) -> Block {
    let sl2 = rng.gen_range(0..=n);
    let w = n - sl2;
    let count = if rng.gen_bool(0.3) { 2 } else { 1 };
    let pieces = (0..count).map(|_| HodgePiece { p: rng.gen_range(w.div_ceil(2)..=w) }).collect();
    Block { sl2, pieces }
}

/// Random block structure of weight `0..=4`, total dimension at most `max_dim`, `p_g ≥ 1`.
pub fn random_blocks<R: Rng>(rng: &mut R, max_dim: usize) -> (u32, Vec<Block>) {
    loop {
        let n = rng.gen_range(0..=4);
        let mut blocks = Vec::new();
        let mut used = 0;
        for _ in 0..6 {
            let b = random_block(rng, n);
            if used + b.dim(n) <= max_dim {
                used += b.dim(n);
                blocks.push(b);
            }
            if !blocks.is_empty() && rng.gen_bool(0.4) {
                break;
            }
        }
        if blocks.iter().map(|b| b.top_count(n)).sum::<usize>() > 0 {
            return (n, blocks);
        }
    }
}

fn random_twist<R: Rng>(rng: &mut R) -> GaussianRational {
    if rng.gen_bool(0.4) {
        return GaussianRational::zero();
    }
    GaussianRational::new(random_rational(rng), random_rational(rng))
}

/// Builds the structure for `blocks`, then applies `F ↦ e^{zN} F` and a change of basis `g`.
pub fn assemble(weight: u32, blocks: Vec<Block>, twist: GaussianRational, g: &ExactMatrix) -> GeneratedLmhs {
    let split = split_data(weight, &blocks);
    let dim = split.q.rows();
    let ginv = g.inverse().expect("invertible change of basis");
    let q = &(&ginv.transpose() * &split.q) * &ginv;
    let n = &(g * &split.n) * &ginv;
    let exp = crate::exact::polymatrix::nilpotent_exp_at(&split.n, &twist).expect("nilpotent");
    let move_f = g * &exp;
    let f = HodgeFiltration::new(split.f.iter().map(|s| s.image(&move_f)).collect()).expect("decreasing");
    let lattice = PolarizedLattice::new(weight, q).expect("generator produces a valid lattice");
    let endo = NilpotentEndo::new(lattice, n).expect("generator produces an isometry");
    let top = blocks.iter().map(|b| b.sl2).max().unwrap_or(0) as i64;
    let c = weight as i64;
    let known_w = filtration_from_weights(g, &split.weights, c, c - top, c + top);
    let lmhs = LimitingMixedHodge::new(endo, f, None).expect("consistent shapes");
    let expected_degree = blocks.iter().map(|b| b.sl2 as usize * b.top_count(weight)).sum();
    debug_assert_eq!(known_w.ambient_dim(), dim);
    GeneratedLmhs { weight, blocks, lmhs, known_w, expected_degree, twist }
}

pub fn random_lmhs<R: Rng>(rng: &mut R, max_dim: usize) -> GeneratedLmhs {
    let (weight, blocks) = random_blocks(rng, max_dim);
    let dim: usize = blocks.iter().map(|b| b.dim(weight)).sum();
    let twist = random_twist(rng);
    let g = random_invertible(rng, dim);
    assemble(weight, blocks, twist, &g)
}
