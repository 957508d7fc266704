use super::MhsError;
use crate::exact::{ExactMatrix, GaussianRational};
use num_traits::Zero;

/// Middle cohomology with its cup-product pairing `Q(u, v) = uᵀ Q v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedLattice {
    weight: u32,
    q: ExactMatrix,
}

impl PolarizedLattice {
    pub fn new(weight: u32, q: ExactMatrix) -> Result<Self, MhsError> {
        if !q.is_square() {
            return Err(MhsError::Shape(format!("Q is {}x{}", q.rows(), q.cols())));
        }
        if !q.is_real() {
            return Err(MhsError::NotRational("Q"));
        }
        let sign = if weight.is_multiple_of(2) { 1 } else { -1 };
        if q.transpose() != q.scale(&GaussianRational::from_int(sign)) {
            return Err(MhsError::WrongSymmetry { weight });
        }
        if q.det().expect("square").is_zero() {
            return Err(MhsError::Degenerate);
        }
        Ok(Self { weight, q })
    }

    pub fn dim(&self) -> usize {
        self.q.rows()
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn q(&self) -> &ExactMatrix {
        &self.q
    }

    /// `Q(u, v)`, bilinear (no conjugation).
    pub fn pair(&self, u: &[GaussianRational], v: &[GaussianRational]) -> GaussianRational {
        let qv = self.q.mul_vec(v);
        u.iter().zip(&qv).fold(GaussianRational::zero(), |acc, (a, b)| &acc + &(a * b))
    }
}

/// The nilpotent monodromy logarithm `N`, an infinitesimal isometry of `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentEndo {
    lattice: PolarizedLattice,
    n: ExactMatrix,
    index: usize,
}

impl NilpotentEndo {
    pub fn new(lattice: PolarizedLattice, n: ExactMatrix) -> Result<Self, MhsError> {
        let dim = lattice.dim();
        if n.rows() != dim || n.cols() != dim {
            return Err(MhsError::Shape(format!("N is {}x{}, expected {dim}x{dim}", n.rows(), n.cols())));
        }
        if !n.is_real() {
            return Err(MhsError::NotRational("N"));
        }
        let index = n.nilpotency_index().ok_or(MhsError::NotNilpotent)?;
        let q = lattice.q();
        if !(&(&n.transpose() * q) + &(q * &n)).is_zero() {
            return Err(MhsError::NotIsometry);
        }
        Ok(Self { lattice, n, index })
    }

    pub fn lattice(&self) -> &PolarizedLattice {
        &self.lattice
    }

    pub fn n(&self) -> &ExactMatrix {
        &self.n
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn weight(&self) -> u32 {
        self.lattice.weight()
    }

    /// Smallest `k` with `N^(k+1) = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.index
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_lattices() {
        let sym = ExactMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(PolarizedLattice::new(1, sym.clone()), Err(MhsError::WrongSymmetry { weight: 1 }));
        assert!(PolarizedLattice::new(2, sym).is_ok());
        let sing = ExactMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(PolarizedLattice::new(0, sing), Err(MhsError::Degenerate));
    }

    #[test]
    fn endo_checks() {
        let q = ExactMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        let lat = PolarizedLattice::new(1, q).unwrap();
        let good = ExactMatrix::from_i64(&[&[0, -1], &[0, 0]]);
        assert_eq!(NilpotentEndo::new(lat.clone(), good).unwrap().nilpotency_index(), 1);
        let not_nil = ExactMatrix::identity(2);
        assert_eq!(NilpotentEndo::new(lat.clone(), not_nil), Err(MhsError::NotNilpotent));
        // symplectic form in dim 2: every nilpotent is an isometry, so use weight 0 instead
        let lat0 = PolarizedLattice::new(0, ExactMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        let bad = ExactMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(NilpotentEndo::new(lat0, bad), Err(MhsError::NotIsometry));
    }
}
