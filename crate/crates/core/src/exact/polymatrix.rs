use super::gaussian::GaussianRational;
use super::matrix::ExactMatrix;
use super::poly::Poly;
use super::rational::Rational;
use super::ExactError;
use num_traits::{One, Zero};

/// Matrix whose entries are polynomials in `y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(&ExactMatrix::identity(n))
    }

    pub fn constant(m: &ExactMatrix) -> Self {
        let entries = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| Poly::constant(m[(i, j)].clone()))
            .collect();
        Self { rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn eval(&self, y: &GaussianRational) -> ExactMatrix {
        ExactMatrix::new(self.rows, self.cols, self.entries.iter().map(|p| p.eval(y)).collect())
    }

    pub fn eval_real(&self, y: &Rational) -> ExactMatrix {
        self.eval(&GaussianRational::real(y.clone()))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|p| p.scale(s)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, ExactError> {
        if self.cols != o.rows {
            return Err(ExactError::DimensionMismatch { expected: self.cols, found: o.rows });
        }
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * o.get(k, j));
                }
                *m.get_mut(i, j) = acc;
            }
        }
        Ok(m)
    }

    pub fn mul_const(&self, o: &ExactMatrix) -> Result<Self, ExactError> {
        self.mul(&Self::constant(o))
    }

    pub fn const_mul(&self, o: &ExactMatrix) -> Result<Self, ExactError> {
        Self::constant(o).mul(self)
    }

    /// Maximal entry degree of each row (0 for zero rows).
    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|i| (0..self.cols).filter_map(|j| self.get(i, j).degree()).max().unwrap_or(0))
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination over ℚ(i)[y].
    pub fn det(&self) -> Result<Poly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut m = self.clone();
        let mut prev = Poly::one();
        let mut negate = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return Ok(Poly::zero());
            };
            if p != k {
                for j in 0..n {
                    m.entries.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(m.get(k, k) * m.get(i, j)) - &(m.get(i, k) * m.get(k, j));
                    *m.get_mut(i, j) = t.exact_div(&prev).expect("Bareiss division is exact");
                }
                *m.get_mut(i, k) = Poly::zero();
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { -&d } else { d })
    }
}

/// `Σ_k (scale·y)^k N^k / k!`, a finite sum since `N` is nilpotent.
pub fn nilpotent_exp(n: &ExactMatrix, scale: &GaussianRational) -> Result<PolyMatrix, ExactError> {
    let index = n.nilpotency_index().ok_or(ExactError::NotNilpotent)?;
    let dim = n.rows();
    let mut out = PolyMatrix::identity(dim);
    let mut power = ExactMatrix::identity(dim);
    let mut coeff = GaussianRational::one();
    for k in 1..=index {
        power = &power * n;
        coeff = &coeff * scale;
        coeff = coeff.scale(&Rational::new(1.into(), (k as i64).into()));
        for i in 0..dim {
            for j in 0..dim {
                let c = &power[(i, j)] * &coeff;
                if !c.is_zero() {
                    let e = out.get_mut(i, j);
                    *e = &*e + &Poly::monomial(c, k);
                }
            }
        }
    }
    Ok(out)
}

/// `exp(c·N)` as a constant matrix.
pub fn nilpotent_exp_at(n: &ExactMatrix, c: &GaussianRational) -> Result<ExactMatrix, ExactError> {
    Ok(nilpotent_exp(n, c)?.eval(&GaussianRational::one()))
}

/// Determinant of a polynomial matrix.
pub fn poly_det(m: &PolyMatrix) -> Result<Poly, ExactError> {
    m.det()
}
