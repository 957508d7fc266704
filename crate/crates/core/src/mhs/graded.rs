//! Coordinates on the graded pieces `Gr_k = W_k / W_{k-1}`.
//!
//! A basis of `V` adapted to `W` is assembled from complements `C_k` with
//! `W_k = W_{k-1} ⊕ C_k`. Classes in `Gr_k` are then the `C_k` block of the
//! adapted coordinates. When `W` is rational the `C_k` are rational, so complex
//! conjugation commutes with taking classes.

use super::weight::WeightFiltration;
use crate::exact::{ExactMatrix, GaussianRational, Subspace};
use std::collections::BTreeMap;

pub struct Graded {
    dim: usize,
    inverse: ExactMatrix,
    blocks: BTreeMap<i64, (usize, ExactMatrix)>,
}

impl Graded {
    pub fn new(w: &WeightFiltration) -> Self {
        let dim = w.ambient_dim();
        let (low, high) = w.range();
        let mut columns: Vec<Vec<GaussianRational>> = Vec::with_capacity(dim);
        let mut blocks = BTreeMap::new();
        for k in low..=high {
            let comp = w.step(k).complement_of(&w.step(k - 1));
            let start = columns.len();
            let lift = ExactMatrix::from_columns(dim, &comp).expect("complement vectors have ambient length");
            columns.extend(comp);
            blocks.insert(k, (start, lift));
        }
        let adapted = ExactMatrix::from_columns(dim, &columns).expect("ambient length");
        let inverse = adapted.inverse().expect("adapted basis is a basis");
        Self { dim, inverse, blocks }
    }

    pub fn dim(&self, k: i64) -> usize {
        self.blocks.get(&k).map_or(0, |(_, l)| l.cols())
    }

    /// `V ⊇ W_k → Gr_k`, as a `dim Gr_k × dim V` matrix.
    pub fn projection(&self, k: i64) -> ExactMatrix {
        match self.blocks.get(&k) {
            Some((start, lift)) => {
                let rows: Vec<usize> = (*start..start + lift.cols()).collect();
                self.inverse.select_rows(&rows)
            }
            None => ExactMatrix::zeros(0, self.dim),
        }
    }

    /// Representatives `C_k ⊆ W_k` of `Gr_k`, one per column.
    pub fn lift(&self, k: i64) -> ExactMatrix {
        match self.blocks.get(&k) {
            Some((_, lift)) => lift.clone(),
            None => ExactMatrix::zeros(self.dim, 0),
        }
    }

    /// Image of `S ∩ W_k` in `Gr_k`.
    pub fn class_of(&self, s: &Subspace, w: &WeightFiltration, k: i64) -> Subspace {
        let p = self.projection(k);
        if p.rows() == 0 {
            return Subspace::zero(0);
        }
        s.intersection(&w.step(k)).image(&p)
    }

    /// The map `Gr_from → Gr_to` induced by `m` (valid when `m W_from ⊆ W_to`
    /// and `m W_{from-1} ⊆ W_{to-1}`).
    pub fn induced(&self, m: &ExactMatrix, from: i64, to: i64) -> ExactMatrix {
        let lift = self.lift(from);
        let proj = self.projection(to);
        &(&proj * m) * &lift
    }

    pub fn lift_vector(&self, k: i64, v: &[GaussianRational]) -> Vec<GaussianRational> {
        self.lift(k).mul_vec(v)
    }
}
