use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> IntMat {
        let mut m = IntMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    pub fn sub(&self, rhs: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }

    pub fn neg(&self) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn scale(&self, c: &BigInt) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn submatrix_cols(&self, keep: &[usize]) -> IntMat {
        IntMat::from_fn(self.rows, keep.len(), |i, j| self.get(i, keep[j]).clone())
    }

    pub fn submatrix_rows(&self, keep: &[usize]) -> IntMat {
        IntMat::from_fn(keep.len(), self.cols, |i, j| self.get(keep[i], j).clone())
    }

    /// Columns of `self` followed by columns of `rhs`.
    pub fn hstack(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.rows, rhs.rows);
        IntMat::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn reduce_mod(&self, n: u64) -> IntMat {
        let m = BigInt::from(n);
        IntMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).mod_floor(&m))
    }

    /// Bareiss fraction-free determinant (square matrices only).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !a.get(i, k).is_zero());
                match swap {
                    None => return BigInt::zero(),
                    Some(i) => {
                        for j in 0..n {
                            let t = a.get(k, j).clone();
                            a.set(k, j, a.get(i, j).clone());
                            a.set(i, j, t);
                        }
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            for i in k + 1..n {
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }

    pub fn smith(&self) -> SmithForm {
        smith_normal_form(self)
    }

    pub fn rank(&self) -> usize {
        self.smith().invariants.len()
    }

    /// Basis of the integer kernel as matrix columns.
    pub fn kernel_basis(&self) -> IntMat {
        let s = self.smith();
        let r = s.invariants.len();
        let keep: Vec<usize> = (r..self.cols).collect();
        s.v.submatrix_cols(&keep)
    }

    /// Basis for the lattice spanned by the columns.
    pub fn column_lattice_basis(&self) -> IntMat {
        let s = self.smith();
        let r = s.invariants.len();
        let mut out = IntMat::zeros(self.rows, r);
        for k in 0..r {
            for i in 0..self.rows {
                out.set(i, k, s.u_inv.get(i, k) * &s.invariants[k]);
            }
        }
        out
    }

    /// One integer solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let bm = IntMat::from_fn(self.rows, 1, |i, _| b[i].clone());
        self.solve_matrix(&bm).map(|x| x.column(0))
    }

    /// Integer solutions `X` of `self * X = B` (columnwise), if all exist.
    pub fn solve_matrix(&self, b: &IntMat) -> Option<IntMat> {
        assert_eq!(self.rows, b.rows);
        let s = self.smith();
        let ub = s.u.mul(b);
        let r = s.invariants.len();
        let mut y = IntMat::zeros(self.cols, b.cols);
        for j in 0..b.cols {
            for i in 0..self.rows.min(self.cols).max(self.rows) {
                if i >= self.rows {
                    break;
                }
                let rhs = ub.get(i, j);
                if i < r {
                    let (q, rem) = rhs.div_rem(&s.invariants[i]);
                    if !rem.is_zero() {
                        return None;
                    }
                    y.set(i, j, q);
                } else if !rhs.is_zero() {
                    return None;
                }
            }
        }
        Some(s.v.mul(&y))
    }
}

/// `d = u * m * v` with `d` diagonal, `d_i | d_{i+1}`, and `u`, `v`
/// unimodular. Only the nonzero invariants are listed.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
    pub u: IntMat,
    pub v: IntMat,
    pub u_inv: IntMat,
    pub v_inv: IntMat,
}

impl SmithForm {
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMat {
        let mut d = IntMat::zeros(rows, cols);
        for (i, inv) in self.invariants.iter().enumerate() {
            d.set(i, i, inv.clone());
        }
        d
    }
}

struct Worker {
    m: IntMat,
    u: IntMat,
    v: IntMat,
    u_inv: IntMat,
    v_inv: IntMat,
}

impl Worker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.m.cols {
            let t = self.m.get(a, j).clone();
            self.m.set(a, j, self.m.get(b, j).clone());
            self.m.set(b, j, t);
        }
        for j in 0..self.u.cols {
            let t = self.u.get(a, j).clone();
            self.u.set(a, j, self.u.get(b, j).clone());
            self.u.set(b, j, t);
        }
        for i in 0..self.u_inv.rows {
            let t = self.u_inv.get(i, a).clone();
            self.u_inv.set(i, a, self.u_inv.get(i, b).clone());
            self.u_inv.set(i, b, t);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.m.rows {
            let t = self.m.get(i, a).clone();
            self.m.set(i, a, self.m.get(i, b).clone());
            self.m.set(i, b, t);
        }
        for i in 0..self.v.rows {
            let t = self.v.get(i, a).clone();
            self.v.set(i, a, self.v.get(i, b).clone());
            self.v.set(i, b, t);
        }
        for j in 0..self.v_inv.cols {
            let t = self.v_inv.get(a, j).clone();
            self.v_inv.set(a, j, self.v_inv.get(b, j).clone());
            self.v_inv.set(b, j, t);
        }
    }

    /// row a += c * row b
    fn add_row(&mut self, a: usize, b: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.m.cols {
            let t = self.m.get(a, j) + c * self.m.get(b, j);
            self.m.set(a, j, t);
        }
        for j in 0..self.u.cols {
            let t = self.u.get(a, j) + c * self.u.get(b, j);
            self.u.set(a, j, t);
        }
        // u_inv: col b -= c * col a
        for i in 0..self.u_inv.rows {
            let t = self.u_inv.get(i, b) - c * self.u_inv.get(i, a);
            self.u_inv.set(i, b, t);
        }
    }

    /// col a += c * col b
    fn add_col(&mut self, a: usize, b: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.m.rows {
            let t = self.m.get(i, a) + c * self.m.get(i, b);
            self.m.set(i, a, t);
        }
        for i in 0..self.v.rows {
            let t = self.v.get(i, a) + c * self.v.get(i, b);
            self.v.set(i, a, t);
        }
        // v_inv: row b -= c * row a
        for j in 0..self.v_inv.cols {
            let t = self.v_inv.get(b, j) - c * self.v_inv.get(a, j);
            self.v_inv.set(b, j, t);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.m.cols {
            let t = -self.m.get(a, j);
            self.m.set(a, j, t);
        }
        for j in 0..self.u.cols {
            let t = -self.u.get(a, j);
            self.u.set(a, j, t);
        }
        for i in 0..self.u_inv.rows {
            let t = -self.u_inv.get(i, a);
            self.u_inv.set(i, a, t);
        }
    }
}

/// Pivoting reduction with magnitude-minimal pivot selection to limit
/// coefficient growth.
fn smith_normal_form(m0: &IntMat) -> SmithForm {
    let (rows, cols) = (m0.rows, m0.cols);
    let mut w = Worker {
        m: m0.clone(),
        u: IntMat::identity(rows),
        v: IntMat::identity(cols),
        u_inv: IntMat::identity(rows),
        v_inv: IntMat::identity(cols),
    };

    let mut k = 0;
    'stage: while k < rows.min(cols) {
        // magnitude-minimal nonzero pivot in the trailing block, re-selected
        // after every reduction pass to limit coefficient growth
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !w.m.get(i, j).is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => w.m.get(i, j).abs() < w.m.get(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);

        for i in k + 1..rows {
            let q = -(w.m.get(i, k) / w.m.get(k, k));
            w.add_row(i, k, &q);
        }
        if (k + 1..rows).any(|i| !w.m.get(i, k).is_zero()) {
            continue 'stage; // a smaller remainder exists, re-pivot
        }
        for j in k + 1..cols {
            let q = -(w.m.get(k, j) / w.m.get(k, k));
            w.add_col(j, k, &q);
        }
        if (k + 1..cols).any(|j| !w.m.get(k, j).is_zero()) {
            continue 'stage;
        }

        // divisibility: fold in a row holding an entry the pivot misses
        for i in k + 1..rows {
            for j in k + 1..cols {
                if !w.m.get(i, j).mod_floor(&w.m.get(k, k).abs()).is_zero() {
                    w.add_row(k, i, &BigInt::one());
                    continue 'stage;
                }
            }
        }
        if w.m.get(k, k).is_negative() {
            w.negate_row(k);
        }
        k += 1;
    }

    let invariants: Vec<BigInt> = (0..rows.min(cols))
        .map(|i| w.m.get(i, i).clone())
        .filter(|d| !d.is_zero())
        .collect();
    SmithForm {
        invariants,
        u: w.u,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}

/// Free rank and torsion invariants of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeHomology {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl LatticeHomology {
    pub fn zero() -> LatticeHomology {
        LatticeHomology {
            free_rank: 0,
            torsion: vec![],
        }
    }

    pub fn total_dim_over_fp(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        let t = self
            .torsion
            .iter()
            .filter(|d| d.mod_floor(&p).is_zero())
            .count();
        self.free_rank + t
    }
}

/// Invariant factors of `span(K) / span(L)` where the columns of `K` are a
/// lattice basis and the column span of `L` is contained in it. Factors equal
/// to one are dropped; zero factors count toward the free rank.
pub fn lattice_quotient(k: &IntMat, l: &IntMat) -> LatticeHomology {
    let s = k.cols;
    if s == 0 {
        return LatticeHomology::zero();
    }
    let y = k
        .solve_matrix(l)
        .expect("denominator lattice not contained in numerator");
    let sm = y.smith();
    let torsion: Vec<BigInt> = sm
        .invariants
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    LatticeHomology {
        free_rank: s - sm.invariants.len(),
        torsion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn check_snf(m: &IntMat) -> SmithForm {
        let s = m.smith();
        let d = s.u.mul(m).mul(&s.v);
        // diagonal with the invariant chain
        for i in 0..d.rows {
            for j in 0..d.cols {
                if i != j {
                    assert!(d.get(i, j).is_zero(), "off-diagonal at ({i},{j})");
                } else if i < s.invariants.len() {
                    assert_eq!(d.get(i, i), &s.invariants[i]);
                } else {
                    assert!(d.get(i, i).is_zero());
                }
            }
        }
        for w in s.invariants.windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero(), "divisibility chain");
        }
        assert!(s.u.det().abs().is_one(), "U unimodular");
        assert!(s.v.det().abs().is_one(), "V unimodular");
        assert_eq!(s.u.mul(&s.u_inv), IntMat::identity(m.rows));
        assert_eq!(s.v.mul(&s.v_inv), IntMat::identity(m.cols));
        s
    }

    #[test]
    fn snf_hand_examples() {
        // hand reduction: diag(2,3) ~ diag(1,6)
        let s = check_snf(&IntMat::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariants, vec![BigInt::from(1), BigInt::from(6)]);

        let s = check_snf(&IntMat::zeros(3, 2));
        assert!(s.invariants.is_empty());

        let s = check_snf(&IntMat::from_rows(&[vec![1]]));
        assert_eq!(s.invariants, vec![BigInt::from(1)]);
    }

    #[test]
    fn snf_random_6x6() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let m = IntMat::from_fn(6, 6, |_, _| BigInt::from(rng.gen_range(-9i64..=9)));
            check_snf(&m);
        }
    }

    #[test]
    fn kernel_and_solve() {
        let m = IntMat::from_rows(&[vec![2, 4, 6], vec![1, 2, 3]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols, 2);
        assert!(m.mul(&k).is_zero());

        let b = vec![BigInt::from(10), BigInt::from(5)];
        let x = m.solve(&b).unwrap();
        let mx = m.mul(&IntMat::from_fn(3, 1, |i, _| x[i].clone()));
        assert_eq!(mx.column(0), b);

        // 2x = 1 has no integer solution
        let m2 = IntMat::from_rows(&[vec![2]]);
        assert!(m2.solve(&[BigInt::one()]).is_none());
    }

    #[test]
    fn lattice_quotients() {
        // Z^2 / span{(2,0),(0,3)} = Z/2 + Z/3 = Z/6 with a leading 1
        let k = IntMat::identity(2);
        let l = IntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let h = lattice_quotient(&k, &l);
        assert_eq!(h.free_rank, 0);
        assert_eq!(h.torsion, vec![BigInt::from(6)]);

        // Z -> Z by 2: homology (0, Z/2)
        let k = IntMat::identity(1);
        let l = IntMat::from_rows(&[vec![2]]);
        let h = lattice_quotient(&k, &l);
        assert_eq!(h.free_rank, 0);
        assert_eq!(h.torsion, vec![BigInt::from(2)]);

        // zero differential: homology = chain rank
        let l0 = IntMat::zeros(2, 0);
        let h = lattice_quotient(&IntMat::identity(2), &l0);
        assert_eq!(h.free_rank, 2);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn column_lattice() {
        let g = IntMat::from_rows(&[vec![2, 4], vec![0, 0]]);
        let b = g.column_lattice_basis();
        assert_eq!(b.cols, 1);
        assert_eq!(b.get(0, 0).abs(), BigInt::from(2));
        assert!(b.get(1, 0).is_zero());
    }
}
