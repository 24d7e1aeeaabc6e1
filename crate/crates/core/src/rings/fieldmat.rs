use super::intmat::IntMat;
use super::scalar::{RingSpec, Scalar};

/// Dense matrix over a field ring (`Q` or `Z/p` with `p` prime).
#[derive(Clone, Debug, PartialEq)]
pub struct FieldMat {
    pub ring: RingSpec,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl FieldMat {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> FieldMat {
        assert!(ring.is_field(), "{ring} is not a field");
        FieldMat {
            ring,
            rows,
            cols,
            data: vec![Scalar::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: RingSpec, n: usize) -> FieldMat {
        let mut m = FieldMat::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(ring));
        }
        m
    }

    pub fn from_int(ring: RingSpec, m: &IntMat) -> FieldMat {
        let mut out = FieldMat::zeros(ring, m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                out.set(i, j, Scalar::from_bigint(ring, m.get(i, j).clone()));
            }
        }
        out
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul(&self, rhs: &FieldMat) -> FieldMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = FieldMat::zeros(self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &FieldMat) -> FieldMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = FieldMat::zeros(self.ring, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j) - rhs.get(i, j));
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &FieldMat) -> FieldMat {
        assert_eq!(self.rows, rhs.rows);
        let mut out = FieldMat::zeros(self.ring, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix_cols(&self, keep: &[usize]) -> FieldMat {
        let mut out = FieldMat::zeros(self.ring, self.rows, keep.len());
        for i in 0..self.rows {
            for (j, &c) in keep.iter().enumerate() {
                out.set(i, j, self.get(i, c).clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// In-place reduction to row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    let t = self.get(r, j).clone();
                    self.set(r, j, self.get(p, j).clone());
                    self.set(p, j, t);
                }
            }
            let inv = self.get(r, c).inverse().expect("field element");
            for j in 0..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let f = self.get(i, c).clone();
                    for j in 0..self.cols {
                        let v = self.get(i, j) - &(&f * self.get(r, j));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the kernel, as matrix columns.
    pub fn kernel_basis(&self) -> FieldMat {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FieldMat::zeros(self.ring, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, Scalar::one(self.ring));
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, -m.get(r, fc));
            }
        }
        out
    }

    /// Solve `self * X = B`; `None` when inconsistent.
    pub fn solve_matrix(&self, b: &FieldMat) -> Option<FieldMat> {
        assert_eq!(self.rows, b.rows);
        let mut aug = self.hstack(b);
        let pivots = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = FieldMat::zeros(self.ring, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, aug.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<FieldMat> {
        assert_eq!(self.rows, self.cols);
        let x = self.solve_matrix(&FieldMat::identity(self.ring, self.rows))?;
        if self.mul(&x).eq(&FieldMat::identity(self.ring, self.rows)) {
            Some(x)
        } else {
            None
        }
    }
}
