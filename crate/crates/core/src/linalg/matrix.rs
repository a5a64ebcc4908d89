use std::fmt;

use super::GaussianRational as C;

/// Dense row-major matrix over Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

/// Result of [`solve_in_rowspace`] when a target row lies outside the span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Infeasible;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<C>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Self {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| C::from_int(v)).collect())
                .collect(),
        )
    }

    /// A single-column matrix.
    pub fn column(v: &[C]) -> Self {
        Self::from_rows(1, v.iter().map(|x| vec![x.clone()]).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &C {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[C] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column_vec(&self, c: usize) -> Vec<C> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(C::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = C::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(C::conj).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// `(M†)_{ij} = conj(M_{ji})`.
    pub fn conj_transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a * rhs.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Stacks `self` on top of `rhs`.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let pv = m.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * pv);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Reduced row echelon form and rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Rows of the rref with the zero rows removed.
    pub fn row_basis(&self) -> Matrix {
        let (m, pivots) = self.rref_with_pivots();
        m.take_rows(pivots.len())
    }

    fn take_rows(&self, k: usize) -> Matrix {
        Matrix {
            rows: k,
            cols: self.cols,
            data: self.data[..k * self.cols].to_vec(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of `{x : M·x = 0}` as rows, in rref form.
    pub fn kernel_basis(&self) -> Matrix {
        let (m, pivots) = self.rref_with_pivots();
        let mut rows = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(r);
        }
        for free in (0..self.cols).filter(|&c| pivot_of_col[c].is_none()) {
            let mut v = vec![C::zero(); self.cols];
            v[free] = C::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free);
            }
            rows.push(v);
        }
        Matrix::from_rows(self.cols, rows).row_basis()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, C::one());
        }
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Expresses every row of `target` as a combination of the rows of `basis`.
///
/// Returns a `target.rows() × basis.rows()` coefficient matrix, or
/// [`Infeasible`] when some row lies outside the row space. When the basis
/// rows are dependent, free coefficients are set to zero.
pub fn solve_in_rowspace(target: &Matrix, basis: &Matrix) -> Result<Matrix, Infeasible> {
    assert_eq!(target.cols(), basis.cols(), "column count mismatch");
    let k = basis.rows();
    let mut coeffs = Vec::with_capacity(target.rows());
    for t in 0..target.rows() {
        // Solve basisᵀ · c = tᵀ through the augmented system.
        let mut aug = Matrix::zeros(basis.cols(), k + 1);
        for i in 0..basis.cols() {
            for j in 0..k {
                aug.set(i, j, basis.get(j, i).clone());
            }
            aug.set(i, k, target.get(t, i).clone());
        }
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&k) {
            return Err(Infeasible);
        }
        let mut c = vec![C::zero(); k];
        for (r, &pc) in pivots.iter().enumerate() {
            c[pc] = red.get(r, k).clone();
        }
        coeffs.push(c);
    }
    Ok(Matrix::from_rows(k, coeffs))
}

/// `⟨x|y⟩ = Σ conj(x_i)·y_i`.
pub fn inner(x: &[C], y: &[C]) -> C {
    assert_eq!(x.len(), y.len());
    let mut acc = C::zero();
    for (a, b) in x.iter().zip(y) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(&a.conj() * b);
        }
    }
    acc
}

pub fn is_zero_vec(v: &[C]) -> bool {
    v.iter().all(C::is_zero)
}

pub fn vec_add(x: &[C], y: &[C]) -> Vec<C> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn vec_scale(x: &[C], k: &C) -> Vec<C> {
    x.iter().map(|a| a * k).collect()
}

/// Kronecker product of two vectors.
pub fn vec_kron(x: &[C], y: &[C]) -> Vec<C> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a * b);
        }
    }
    out
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_int_rows(rows)
    }

    #[test]
    fn rref_examples() {
        assert_eq!(m(&[&[1, 0], &[0, 1]]).rref(), (m(&[&[1, 0], &[0, 1]]), 2));
        assert_eq!(m(&[&[1, 1], &[1, -1]]).rref(), (m(&[&[1, 0], &[0, 1]]), 2));
        assert_eq!(m(&[&[1, 1], &[2, 2]]).rref(), (m(&[&[1, 1], &[0, 0]]), 1));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(2).kernel_basis().rows(), 0);
        assert_eq!(m(&[&[1, 1], &[2, 2]]).kernel_basis(), m(&[&[1, -1]]));
        let z = Matrix::zeros(2, 2).kernel_basis();
        assert_eq!(z, Matrix::identity(2));
    }

    #[test]
    fn conj_transpose_examples() {
        let x = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(x.conj_transpose(), x);
        let h = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(h.conj_transpose(), h);
        let a = Matrix::from_rows(
            2,
            vec![vec![C::zero(), C::i()], vec![C::zero(), C::zero()]],
        );
        let expect = Matrix::from_rows(
            2,
            vec![vec![C::zero(), C::zero()], vec![-C::i(), C::zero()]],
        );
        assert_eq!(a.conj_transpose(), expect);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(2);
        assert_eq!(solve_in_rowspace(&m(&[&[1, 1]]), &id), Ok(m(&[&[1, 1]])));
        assert_eq!(solve_in_rowspace(&m(&[&[0, 1]]), &m(&[&[1, 1]])), Err(Infeasible));
        assert_eq!(solve_in_rowspace(&m(&[&[2, 2]]), &m(&[&[1, 1]])), Ok(m(&[&[2]])));
    }

    #[test]
    fn inverse_of_hadamard_is_half_hadamard() {
        let h = m(&[&[1, 1], &[1, -1]]);
        let inv = h.inverse().unwrap();
        assert_eq!(inv, h.scale(&C::from_ratio(1, 2)));
        assert!(m(&[&[1, 1], &[2, 2]]).inverse().is_none());
    }

    #[test]
    fn kron_of_identities() {
        assert_eq!(Matrix::identity(2).kron(&Matrix::identity(2)), Matrix::identity(4));
    }
}
