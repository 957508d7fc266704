use super::gaussian::GaussianRational;
use super::matrix::ExactMatrix;
use super::ExactError;
use num_traits::Zero;

/// A linear subspace of ℚ(i)^ambient, stored by its reduced column-echelon basis.
///
/// Two subspaces are equal exactly when their canonical bases are equal, so the
/// derived `PartialEq` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: ExactMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: ExactMatrix::zeros(ambient, 0), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: ExactMatrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the columns of `m`.
    pub fn span(m: &ExactMatrix) -> Self {
        let ambient = m.rows();
        if m.cols() == 0 {
            return Self::zero(ambient);
        }
        let (r, pivots) = m.transpose().rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        let basis = r.select_rows(&rows).transpose();
        Self { ambient, basis, pivots }
    }

    pub fn from_vectors(ambient: usize, vs: &[Vec<GaussianRational>]) -> Result<Self, ExactError> {
        Ok(Self::span(&ExactMatrix::from_columns(ambient, vs)?))
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, idx: &[usize]) -> Self {
        let cols: Vec<Vec<GaussianRational>> = idx
            .iter()
            .map(|&i| {
                let mut v = vec![GaussianRational::zero(); ambient];
                v[i] = GaussianRational::from_int(1);
                v
            })
            .collect();
        Self::from_vectors(ambient, &cols).expect("coordinate index in range")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis, one vector per column.
    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<GaussianRational>> {
        self.basis.columns()
    }

    /// Re-canonicalizes; always returns an identical value.
    pub fn canonicalize(&self) -> Self {
        Self::span(&self.basis)
    }

    pub fn contains_vector(&self, v: &[GaussianRational]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut r = v.to_vec();
        for (j, &p) in self.pivots.iter().enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (i, ri) in r.iter_mut().enumerate() {
                let b = &self.basis[(i, j)];
                if !b.is_zero() {
                    *ri -= &(&f * b);
                }
            }
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.ambient == other.ambient && other.basis_vectors().iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        Self::span(&self.basis.hstack(&other.basis))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        let stacked = self.basis.hstack(&(-&other.basis));
        let k = kernel(&stacked);
        let a = self.dim();
        let coeffs = k.basis.select_rows(&(0..a).collect::<Vec<_>>());
        Self::span(&(&self.basis * &coeffs))
    }

    /// `{ m·v : v ∈ self }`.
    pub fn image(&self, m: &ExactMatrix) -> Self {
        assert_eq!(m.cols(), self.ambient, "image: shape mismatch");
        Self::span(&(m * &self.basis))
    }

    /// `{ v : m·v ∈ self }` inside the domain of `m`.
    pub fn preimage(&self, m: &ExactMatrix) -> Self {
        assert_eq!(m.rows(), self.ambient, "preimage: shape mismatch");
        let n = m.cols();
        let stacked = m.hstack(&(-&self.basis));
        let k = kernel(&stacked);
        Self::span(&k.basis.select_rows(&(0..n).collect::<Vec<_>>()))
    }

    pub fn conj(&self) -> Self {
        Self::span(&self.basis.conj())
    }

    /// True when the canonical basis has rational entries.
    pub fn is_rational(&self) -> bool {
        self.basis.is_real()
    }

    /// Vectors from `self`'s basis completing a basis of `sub` to one of `self`.
    pub fn complement_of(&self, sub: &Self) -> Vec<Vec<GaussianRational>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in self.basis_vectors() {
            if !acc.contains_vector(&v) {
                acc = acc.sum(&Self::span(&ExactMatrix::column_vector(&v)));
                out.push(v);
            }
        }
        out
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

/// `{ v : m·v = 0 }`.
pub fn kernel(m: &ExactMatrix) -> Subspace {
    let n = m.cols();
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut cols = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![GaussianRational::zero(); n];
        v[f] = GaussianRational::from_int(1);
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -&r[(row, f)];
        }
        cols.push(v);
    }
    Subspace::span(&ExactMatrix::from_columns(n, &cols).expect("kernel vectors have length n"))
}

/// Sum, intersection, and whether `b ⊆ a`.
pub fn subspace_algebra(a: &Subspace, b: &Subspace) -> Result<(Subspace, Subspace, bool), ExactError> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(ExactError::DimensionMismatch { expected: a.ambient_dim(), found: b.ambient_dim() });
    }
    Ok((a.sum(b), a.intersection(b), a.contains(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<GaussianRational> {
        let mut v = vec![GaussianRational::zero(); n];
        v[i] = GaussianRational::from_int(1);
        v
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&ExactMatrix::zeros(2, 2)), Subspace::full(2));
        assert_eq!(kernel(&ExactMatrix::identity(2)), Subspace::zero(2));
        let k = kernel(&ExactMatrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert_eq!(k, Subspace::coordinate(2, &[0]));
    }

    #[test]
    fn algebra_examples() {
        let a = Subspace::coordinate(2, &[0]);
        let b = Subspace::coordinate(2, &[1]);
        let (s, i, c) = subspace_algebra(&a, &b).unwrap();
        assert_eq!((s.dim(), i.dim(), c), (2, 0, false));

        let diag = Subspace::from_vectors(2, &[vec![1.into(), 1.into()]]).unwrap();
        let (s, i, _) = subspace_algebra(&diag, &a).unwrap();
        assert_eq!((s.dim(), i.dim()), (2, 0));

        let plane = Subspace::coordinate(3, &[0, 1]);
        let line = Subspace::coordinate(3, &[0]);
        assert!(subspace_algebra(&plane, &line).unwrap().2);
        assert!(!subspace_algebra(&line, &plane).unwrap().2);
        assert!(subspace_algebra(&plane, &Subspace::zero(2)).is_err());
    }

    #[test]
    fn canonical_equality_ignores_spanning_set() {
        let a = Subspace::from_vectors(3, &[e(3, 0), e(3, 1)]).unwrap();
        let mixed: Vec<GaussianRational> = vec![2.into(), (-3).into(), 0.into()];
        let b = Subspace::from_vectors(3, &[mixed, e(3, 1), e(3, 1)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonicalize(), a);
    }

    #[test]
    fn preimage_and_image() {
        let n = ExactMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let target = Subspace::coordinate(3, &[0]);
        assert_eq!(target.preimage(&n), Subspace::coordinate(3, &[0, 1]));
        assert_eq!(Subspace::full(3).image(&n), Subspace::coordinate(3, &[0, 1]));
    }

    #[test]
    fn conjugate_line() {
        let v = vec![GaussianRational::from_int(1), GaussianRational::i()];
        let l = Subspace::from_vectors(2, &[v]).unwrap();
        assert!(!l.is_rational());
        assert_eq!(l.sum(&l.conj()).dim(), 2);
        assert_eq!(l.intersection(&l.conj()).dim(), 0);
    }
}
