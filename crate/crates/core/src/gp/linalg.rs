//! The small amount of dense linear algebra a GP needs: a square row-major
//! matrix and its Cholesky factor.

#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Lower-triangular `L` with `L Lᵀ = A`, stored row-major (upper part zero).
#[derive(Debug, Clone, PartialEq)]
pub struct Cholesky {
    l: SquareMatrix,
}

impl Cholesky {
    /// Factors `a + shift·I`. Returns `None` if the shifted matrix is not
    /// numerically positive definite. Only the lower triangle of `a` is read.
    pub fn factor_shifted(a: &SquareMatrix, shift: f64) -> Option<Self> {
        let n = a.n();
        let mut l = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let (ri, rj) = if i == j {
                    let r = l.row(i);
                    (r, r)
                } else {
                    (l.row(i), l.row(j))
                };
                let dot: f64 = ri[..j].iter().zip(&rj[..j]).map(|(a, b)| a * b).sum();
                let mut s = a.get(i, j) - dot;
                if i == j {
                    s += shift;
                    if !(s > 0.0 && s.is_finite()) {
                        return None;
                    }
                    l.set(i, i, s.sqrt());
                } else {
                    let v = s / l.get(j, j);
                    l.set(i, j, v);
                }
            }
        }
        Some(Self { l })
    }

    pub fn factor(a: &SquareMatrix) -> Option<Self> {
        Self::factor_shifted(a, 0.0)
    }

    pub fn n(&self) -> usize {
        self.l.n()
    }

    pub fn lower(&self) -> &SquareMatrix {
        &self.l
    }

    /// Solves `L y = b` in place.
    pub fn solve_lower_in_place(&self, b: &mut [f64]) {
        let n = self.n();
        debug_assert_eq!(b.len(), n);
        for i in 0..n {
            let row = self.l.row(i);
            let dot: f64 = row[..i].iter().zip(&b[..i]).map(|(a, c)| a * c).sum();
            b[i] = (b[i] - dot) / row[i];
        }
    }

    /// Solves `Lᵀ x = y` in place.
    pub fn solve_upper_in_place(&self, y: &mut [f64]) {
        let n = self.n();
        debug_assert_eq!(y.len(), n);
        for i in (0..n).rev() {
            let row = self.l.row(i);
            y[i] /= row[i];
            let xi = y[i];
            for (yk, lik) in y[..i].iter_mut().zip(&row[..i]) {
                *yk -= lik * xi;
            }
        }
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_lower_in_place(&mut x);
        self.solve_upper_in_place(&mut x);
        x
    }

    /// `Σ log L_ii`, i.e. half of `log det A`.
    pub fn sum_log_diag(&self) -> f64 {
        (0..self.n()).map(|i| self.l.get(i, i).ln()).sum()
    }

    /// `L Lᵀ`.
    pub fn reconstruct(&self) -> SquareMatrix {
        let n = self.n();
        SquareMatrix::from_fn(n, |i, j| {
            let k = i.min(j) + 1;
            self.l.row(i)[..k]
                .iter()
                .zip(&self.l.row(j)[..k])
                .map(|(a, b)| a * b)
                .sum()
        })
    }
}
