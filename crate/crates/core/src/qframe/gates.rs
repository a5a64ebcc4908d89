use std::fmt;

use crate::linalg::{GaussianRational as C, Matrix};

use super::{embed_local, Frame, QframeError, Ray, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    Z,
    H,
    Cnot,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot => 2,
            _ => 1,
        }
    }

    /// The local matrix; `H` is the unnormalized `[[1,1],[1,-1]]`.
    pub fn local_matrix(self) -> Matrix {
        match self {
            GateKind::X => Matrix::from_int_rows(&[&[0, 1], &[1, 0]]),
            GateKind::Z => Matrix::from_int_rows(&[&[1, 0], &[0, -1]]),
            GateKind::H => Matrix::from_int_rows(&[&[1, 1], &[1, -1]]),
            GateKind::Cnot => Matrix::from_int_rows(&[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 0, 1],
                &[0, 0, 1, 0],
            ]),
        }
    }
}

/// A linear map on the frame, acting on rays as a partial function.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMap {
    pub matrix: Matrix,
}

impl PartialMap {
    pub fn new(matrix: Matrix) -> Self {
        assert!(matrix.is_square(), "partial maps are square");
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(Matrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, s: &Ray) -> Option<Ray> {
        s.apply(&self.matrix)
    }

    pub fn adjoint(&self) -> PartialMap {
        Self::new(self.matrix.conj_transpose())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &PartialMap) -> PartialMap {
        Self::new(next.matrix.mul(&self.matrix))
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::from_matrix(&self.matrix.kernel_basis())
    }

    /// `U†U = λ·id` for some positive rational `λ`.
    pub fn is_scaled_unitary(&self) -> bool {
        let g = self.matrix.conj_transpose().mul(&self.matrix);
        let lambda = g.get(0, 0).clone();
        if !lambda.is_real() || lambda.is_zero() || lambda.re < num_traits::Zero::zero() {
            return false;
        }
        g == Matrix::identity(self.dim()).scale(&lambda)
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialMap({:?})", self.matrix)
    }
}

/// A finite union of partial maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QAction {
    pub branches: Vec<PartialMap>,
}

impl QAction {
    /// All images of `s`, one per branch that is defined on it.
    pub fn images(&self, s: &Ray) -> Vec<Ray> {
        let mut out: Vec<Ray> = Vec::new();
        for b in &self.branches {
            if let Some(t) = b.apply(s) {
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        out
    }
}

/// Embeds a `2^k × 2^k` local operator acting on `targets` (in the given order).
pub fn embed_operator(frame: &Frame, targets: &[usize], u: &Matrix) -> Matrix {
    let k = targets.len();
    let dim = frame.dim();
    let mut m = Matrix::zeros(dim, dim);
    for b in 0..dim {
        let a = targets.iter().fold(0, |acc, &q| (acc << 1) | frame.bit(b, q));
        for a2 in 0..(1usize << k) {
            let entry = u.get(a2, a);
            if entry.is_zero() {
                continue;
            }
            let mut row = b;
            for (pos, &q) in targets.iter().enumerate() {
                row = frame.with_bit(row, q, (a2 >> (k - 1 - pos)) & 1);
            }
            m.set(row, b, entry.clone());
        }
    }
    m
}

pub fn gate(frame: &Frame, kind: GateKind, targets: &[usize]) -> Result<PartialMap, QframeError> {
    if targets.len() != kind.arity() {
        return Err(QframeError::BadIndex(format!(
            "{kind:?} takes {} target(s), got {}",
            kind.arity(),
            targets.len()
        )));
    }
    frame.check_indices(targets)?;
    Ok(PartialMap::new(embed_operator(frame, targets, &kind.local_matrix())))
}

/// `F_(1)`: `G[b][a] = ⟨b 0…0| F |a 0…0⟩`.
pub fn restrict_first(frame: &Frame, f: &PartialMap) -> Matrix {
    let shift = frame.n - 1;
    let mut g = Matrix::zeros(2, 2);
    for b in 0..2 {
        for a in 0..2 {
            g.set(b, a, f.matrix.get(b << shift, a << shift).clone());
        }
    }
    g
}

/// The property of having qubits `i, j` in the state `Σ_α e_α ⊗ G e_α`.
pub fn map_to_state(frame: &Frame, g: &Matrix, i: usize, j: usize) -> Result<Subspace, QframeError> {
    frame.check_indices(&[i, j])?;
    if g.is_zero() {
        return Ok(Subspace::zero(frame.dim()));
    }
    let mut psi = vec![C::zero(); 4];
    for alpha in 0..2 {
        for beta in 0..2 {
            let idx = if i < j { alpha * 2 + beta } else { beta * 2 + alpha };
            psi[idx] = g.get(beta, alpha).clone();
        }
    }
    let pair = if i < j { [i, j] } else { [j, i] };
    Ok(embed_local(frame, &pair, &Subspace::span(4, &[psi])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qframe::Basis;

    #[test]
    fn single_qubit_examples() {
        let f = Frame::new(1);
        let x = gate(&f, GateKind::X, &[1]).unwrap();
        assert_eq!(x.apply(&Ray::product(&[Basis::Zero])), Some(Ray::product(&[Basis::One])));
        let h = gate(&f, GateKind::H, &[1]).unwrap();
        assert_eq!(h.apply(&Ray::product(&[Basis::Plus])), Some(Ray::product(&[Basis::Zero])));
    }

    #[test]
    fn cnot_makes_bell() {
        let f = Frame::new(2);
        let c = gate(&f, GateKind::Cnot, &[1, 2]).unwrap();
        let out = c.apply(&Ray::product(&[Basis::Plus, Basis::Zero])).unwrap();
        assert_eq!(out, Ray::from_ints(&[1, 0, 0, 1]).unwrap());
        let rev = gate(&f, GateKind::Cnot, &[2, 1]).unwrap();
        let out = rev.apply(&Ray::product(&[Basis::One, Basis::One])).unwrap();
        assert_eq!(out, Ray::product(&[Basis::Zero, Basis::One]));
    }

    #[test]
    fn gate_index_errors() {
        let f = Frame::new(2);
        assert!(gate(&f, GateKind::X, &[3]).is_err());
        assert!(gate(&f, GateKind::Cnot, &[1, 1]).is_err());
        assert!(gate(&f, GateKind::X, &[1, 2]).is_err());
    }

    #[test]
    fn restrict_first_examples() {
        let f = Frame::new(2);
        let x1 = gate(&f, GateKind::X, &[1]).unwrap();
        assert_eq!(restrict_first(&f, &x1), GateKind::X.local_matrix());
        let c = gate(&f, GateKind::Cnot, &[1, 2]).unwrap();
        // |10⟩ goes to |11⟩, which leaves W.
        assert_eq!(restrict_first(&f, &c), Matrix::from_int_rows(&[&[1, 0], &[0, 0]]));
        let x2 = gate(&f, GateKind::X, &[2]).unwrap();
        assert!(restrict_first(&f, &x2).is_zero());
    }

    #[test]
    fn map_to_state_examples() {
        let f = Frame::new(2);
        let s = map_to_state(&f, &Matrix::identity(2), 1, 2).unwrap();
        assert_eq!(s, Ray::from_ints(&[1, 0, 0, 1]).unwrap().as_subspace());
        let s = map_to_state(&f, &GateKind::X.local_matrix(), 1, 2).unwrap();
        assert_eq!(s, Ray::from_ints(&[0, 1, 1, 0]).unwrap().as_subspace());
        assert!(map_to_state(&f, &Matrix::zeros(2, 2), 1, 2).unwrap().is_zero());
        assert!(map_to_state(&f, &Matrix::identity(2), 1, 1).is_err());
    }

    #[test]
    fn gates_are_scaled_unitaries() {
        let f = Frame::new(3);
        for (k, t) in [(GateKind::X, vec![2]), (GateKind::H, vec![3]), (GateKind::Cnot, vec![3, 1])] {
            assert!(gate(&f, k, &t).unwrap().is_scaled_unitary());
        }
    }
}
