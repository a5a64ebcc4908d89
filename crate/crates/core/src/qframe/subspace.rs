use std::fmt;

use crate::linalg::{is_zero_vec, GaussianRational as C, Matrix};

use super::Ray;

/// A closed linear subspace, stored as the nonzero rows of an rref basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            basis: Matrix::zeros(0, dim),
        }
    }

    pub fn full(dim: usize) -> Self {
        Self {
            dim,
            basis: Matrix::identity(dim),
        }
    }

    /// Span of the given vectors (rows).
    pub fn span(dim: usize, vecs: &[Vec<C>]) -> Self {
        if vecs.is_empty() {
            return Self::zero(dim);
        }
        Self::from_matrix(&Matrix::from_rows(dim, vecs.to_vec()))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        Self {
            dim: m.cols(),
            basis: m.row_basis(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<Vec<C>> {
        self.basis.row_vecs()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn contains_vec(&self, v: &[C]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        let stacked = self.basis.vstack(&Matrix::from_rows(self.dim, vec![v.to_vec()]));
        stacked.rank() == self.rank()
    }

    pub fn contains_ray(&self, r: &Ray) -> bool {
        self.contains_vec(r.amplitudes())
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        if self.rank() > other.rank() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        other.basis.vstack(&self.basis).rank() == other.rank()
    }

    /// `S^⊥ = {x : ⟨b|x⟩ = 0 for every basis vector b}`.
    pub fn ortho(&self) -> Subspace {
        if self.is_zero() {
            return Self::full(self.dim);
        }
        Self {
            dim: self.dim,
            basis: self.basis.conj().kernel_basis(),
        }
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        Self::from_matrix(&self.basis.vstack(&other.basis))
    }

    pub fn meet(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.dim);
        }
        if self.is_subspace_of(other) {
            return self.clone();
        }
        if other.is_subspace_of(self) {
            return other.clone();
        }
        self.ortho().join(&other.ortho()).ortho()
    }

    /// `F(S)`.
    pub fn image(&self, f: &Matrix) -> Subspace {
        let vecs: Vec<Vec<C>> = self.basis_vecs().iter().map(|b| f.mul_vec(b)).collect();
        Subspace::span(f.rows(), &vecs)
    }

    /// `{x : F x ∈ S}`, which always contains `ker F`.
    pub fn preimage(&self, f: &Matrix) -> Subspace {
        let perp = self.ortho();
        if perp.is_zero() {
            return Subspace::full(f.cols());
        }
        Subspace {
            dim: f.cols(),
            basis: perp.basis.conj().mul(f).kernel_basis(),
        }
    }

    /// Orthogonal projector onto `S`, `B (B†B)^{-1} B†` with `B` the basis columns.
    pub fn projector(&self) -> Matrix {
        if self.is_zero() {
            return Matrix::zeros(self.dim, self.dim);
        }
        let b = self.basis.transpose();
        let bh = self.basis.conj();
        let gram = bh.mul(&b);
        let inv = gram.inverse().expect("basis vectors are independent");
        b.mul(&inv).mul(&bh)
    }

    /// One vector of the subspace per basis row, for witness search.
    pub fn sample_vector(&self, coeffs: &[C]) -> Vec<C> {
        let mut v = vec![C::zero(); self.dim];
        for (c, row) in coeffs.iter().zip(self.basis_vecs()) {
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(&row) {
                *x += &(c * r);
            }
        }
        v
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "span{{}}");
        }
        if self.is_full() {
            return write!(f, "full({})", self.dim);
        }
        let rows: Vec<String> = self
            .basis_vecs()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("({})", cells.join(", "))
            })
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<C> {
        xs.iter().map(|&x| C::from_int(x)).collect()
    }

    #[test]
    fn ortho_is_an_involution() {
        let s = Subspace::span(4, &[v(&[1, 1, 0, 0]), v(&[0, 0, 1, 2])]);
        assert_eq!(s.ortho().ortho(), s);
        assert_eq!(s.ortho().rank(), 2);
        assert_eq!(Subspace::zero(2).ortho(), Subspace::full(2));
    }

    #[test]
    fn ortho_of_complex_ray() {
        let s = Subspace::span(2, &[vec![C::one(), C::i()]]);
        let p = s.ortho();
        let w = &p.basis_vecs()[0];
        assert!(crate::linalg::inner(&s.basis_vecs()[0], w).is_zero());
    }

    #[test]
    fn lattice_absorption() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 1])]);
        assert_eq!(a.meet(&a.join(&b)), a);
        assert_eq!(a.join(&a.meet(&b)), a);
        assert!(a.meet(&b).is_zero());
    }

    #[test]
    fn projector_fixes_subspace_and_kills_complement() {
        let s = Subspace::span(2, &[v(&[1, 1])]);
        let p = s.projector();
        assert_eq!(p.mul_vec(&v(&[1, 1])), v(&[1, 1]));
        assert!(is_zero_vec(&p.mul_vec(&v(&[1, -1]))));
    }

    #[test]
    fn preimage_contains_kernel() {
        let f = Matrix::from_int_rows(&[&[1, 0], &[0, 0]]);
        let target = Subspace::span(2, &[v(&[0, 1])]);
        assert_eq!(target.preimage(&f), Subspace::span(2, &[v(&[0, 1])]));
        assert_eq!(Subspace::span(2, &[v(&[1, 0])]).preimage(&f), Subspace::full(2));
    }
}
