//! The monodromy weight filtration of a nilpotent endomorphism.

use super::graded::Graded;
use super::lattice::NilpotentEndo;
use super::MhsError;
use crate::exact::{ExactMatrix, Subspace};
use std::collections::BTreeMap;

/// Increasing filtration `W_low ⊆ … ⊆ W_high = V`, with `W_j = 0` below `low`
/// and `W_j = V` above `high`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFiltration {
    center: i64,
    low: i64,
    steps: Vec<Subspace>,
}

impl WeightFiltration {
    /// A user-supplied candidate; must be increasing and end at `V`.
    pub fn candidate(center: i64, low: i64, steps: Vec<Subspace>) -> Result<Self, MhsError> {
        let dim = steps.last().map(Subspace::ambient_dim).ok_or(MhsError::EmptyFiltration)?;
        if steps.iter().any(|s| s.ambient_dim() != dim) {
            return Err(MhsError::Shape("weight filtration steps live in different spaces".into()));
        }
        for (j, w) in steps.windows(2).enumerate() {
            if !w[1].contains(&w[0]) {
                return Err(MhsError::NotIncreasing { index: low + j as i64 + 1 });
            }
        }
        if !steps.last().unwrap().is_full() {
            return Err(MhsError::NotExhaustive);
        }
        Ok(Self { center, low, steps })
    }

    pub fn center(&self) -> i64 {
        self.center
    }

    pub fn ambient_dim(&self) -> usize {
        self.steps[0].ambient_dim()
    }

    /// `(low, high)`: the range outside of which the filtration is 0 or `V`.
    pub fn range(&self) -> (i64, i64) {
        (self.low, self.low + self.steps.len() as i64 - 1)
    }

    pub fn step(&self, k: i64) -> Subspace {
        let (low, high) = self.range();
        if k < low {
            Subspace::zero(self.ambient_dim())
        } else if k > high {
            Subspace::full(self.ambient_dim())
        } else {
            self.steps[(k - low) as usize].clone()
        }
    }

    pub fn graded_dim(&self, k: i64) -> usize {
        self.step(k).dim() - self.step(k - 1).dim()
    }

    /// The same filtration with `range()` widened to `[low, high]`.
    pub fn padded(&self, low: i64, high: i64) -> Self {
        let (l, h) = self.range();
        let (low, high) = (low.min(l), high.max(h));
        Self { center: self.center, low, steps: (low..=high).map(|k| self.step(k)).collect() }
    }

    pub fn is_rational(&self) -> bool {
        self.steps.iter().all(Subspace::is_rational)
    }
}

/// `W(N)` centered at the weight of the lattice, built by the standard
/// induction: with `k` the nilpotency index, `W_{n+k} = V`,
/// `W_{n+k-1} = ker N^k`, `W_{n-k} = im N^k`, then recurse on the middle quotient.
pub fn weight_filtration(endo: &NilpotentEndo) -> WeightFiltration {
    weight_filtration_of(endo.n(), endo.weight() as i64)
}

/// Weight filtration of any nilpotent matrix, centered at `center`.
pub fn weight_filtration_of(n: &ExactMatrix, center: i64) -> WeightFiltration {
    let dim = n.rows();
    let top = n.nilpotency_index().expect("weight filtration needs a nilpotent matrix") as i64;
    let mut jumps = BTreeMap::new();
    recurse(n, Subspace::full(dim), Subspace::zero(dim), center, &mut jumps);
    let low = center - top;
    let high = center + top;
    let mut steps = Vec::new();
    let mut current = Subspace::zero(dim);
    for k in low..=high {
        if let Some(s) = jumps.get(&k) {
            current = s.clone();
        }
        steps.push(current.clone());
    }
    WeightFiltration { center, low, steps }
}

/// Works on the subquotient `a / b`, both `N`-stable.
fn recurse(n: &ExactMatrix, a: Subspace, b: Subspace, center: i64, jumps: &mut BTreeMap<i64, Subspace>) {
    if a == b {
        return;
    }
    // smallest k with N^(k+1) a ⊆ b
    let mut k = 0i64;
    let mut img = a.image(n);
    while !b.contains(&img) {
        img = img.image(n);
        k += 1;
    }
    if k == 0 {
        jumps.insert(center - 1, b);
        jumps.insert(center, a);
        return;
    }
    let nk = n.pow(k as u32);
    let ker = a.intersection(&b.preimage(&nk));
    let im = a.image(&nk).sum(&b);
    jumps.insert(center + k, a);
    jumps.insert(center + k - 1, ker.clone());
    jumps.insert(center - k, im.clone());
    jumps.insert(center - k - 1, b);
    recurse(n, ker, im, center, jumps);
}

/// Per-`ℓ` outcome of the graded isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIsoCheck {
    pub ell: i64,
    /// `N^ℓ` maps `W_{n+ℓ}` into `W_{n-ℓ}` and `W_{n+ℓ-1}` into `W_{n-ℓ-1}`.
    pub well_defined: bool,
    pub bijective: bool,
}

impl GradedIsoCheck {
    pub fn pass(&self) -> bool {
        self.well_defined && self.bijective
    }
}

/// Whether `N^ℓ : Gr_{n+ℓ} → Gr_{n-ℓ}` is an isomorphism, for every `ℓ ≥ 0`
/// that can matter for `w`.
pub fn check_graded_isomorphisms(n: &ExactMatrix, w: &WeightFiltration) -> Vec<GradedIsoCheck> {
    let c = w.center();
    let (low, high) = w.range();
    let span = (high - c).max(c - low).max(0);
    let graded = Graded::new(w);
    (0..=span)
        .map(|ell| {
            let nl = n.pow(ell as u32);
            let well_defined = w.step(c - ell).contains(&w.step(c + ell).image(&nl))
                && w.step(c - ell - 1).contains(&w.step(c + ell - 1).image(&nl));
            let bijective = well_defined && {
                let m = graded.induced(&nl, c + ell, c - ell);
                m.rows() == m.cols() && m.rank() == m.rows()
            };
            GradedIsoCheck { ell, well_defined, bijective }
        })
        .collect()
}

/// `N(W_k) ⊆ W_{k-2}` for all `k`; returns the first offending `k` otherwise.
pub fn lowers_weight_by_two(n: &ExactMatrix, w: &WeightFiltration) -> Result<(), i64> {
    let (low, high) = w.range();
    for k in low..=high + 2 {
        if !w.step(k - 2).contains(&w.step(k).image(n)) {
            return Err(k);
        }
    }
    Ok(())
}
