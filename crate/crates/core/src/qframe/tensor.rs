use crate::linalg::{GaussianRational as C, Matrix};

use super::{Basis, Frame, Ray, Subspace};

/// Splits basis index `b` into the bits of `set` and of its complement,
/// each read in increasing qubit order.
fn split_index(frame: &Frame, set: &[usize], b: usize) -> (usize, usize) {
    let (mut a, mut c) = (0, 0);
    for q in 1..=frame.n {
        let bit = frame.bit(b, q);
        if set.contains(&q) {
            a = (a << 1) | bit;
        } else {
            c = (c << 1) | bit;
        }
    }
    (a, c)
}

fn join_index(frame: &Frame, set: &[usize], a: usize, c: usize) -> usize {
    let k = set.len();
    let r = frame.n - k;
    let (mut ia, mut ic) = (0, 0);
    let mut b = 0;
    for q in 1..=frame.n {
        let bit = if set.contains(&q) {
            ia += 1;
            (a >> (k - ia)) & 1
        } else {
            ic += 1;
            (c >> (r - ic)) & 1
        };
        b = (b << 1) | bit;
    }
    b
}

/// `2^|I| × 2^(n-|I|)` matrix with `M[a][c]` the amplitude whose `I`-qubits
/// spell `a` and whose remaining qubits spell `c`.
pub fn reshape(frame: &Frame, v: &[C], set: &[usize]) -> Matrix {
    let k = set.len();
    let mut m = Matrix::zeros(1 << k, 1 << (frame.n - k));
    for (b, amp) in v.iter().enumerate() {
        if amp.is_zero() {
            continue;
        }
        let (a, c) = split_index(frame, set, b);
        m.set(a, c, amp.clone());
    }
    m
}

/// `u ⊗ w` placed with `u` on the qubits of `set` and `w` on the rest.
pub fn tensor_vectors(frame: &Frame, set: &[usize], u: &[C], w: &[C]) -> Vec<C> {
    let mut out = vec![C::zero(); frame.dim()];
    for (a, x) in u.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (c, y) in w.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[join_index(frame, set, a, c)] = x * y;
        }
    }
    out
}

/// `U ⊗ W` with `U` living on the qubits of `set`.
pub fn tensor_subspaces(frame: &Frame, set: &[usize], u: &Subspace, w: &Subspace) -> Subspace {
    let mut vecs = Vec::new();
    for x in u.basis_vecs() {
        for y in w.basis_vecs() {
            vecs.push(tensor_vectors(frame, set, &x, &y));
        }
    }
    Subspace::span(frame.dim(), &vecs)
}

/// `U ⊗ H_rest`.
pub fn embed_local(frame: &Frame, set: &[usize], u: &Subspace) -> Subspace {
    let rest = 1 << (frame.n - set.len());
    tensor_subspaces(frame, set, u, &Subspace::full(rest))
}

/// The property `c_q`: local constant `c` at qubit `q`, anything elsewhere.
pub fn local_state(frame: &Frame, q: usize, c: Basis) -> Subspace {
    embed_local(frame, &[q], &Subspace::span(2, &[c.vector()]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separability {
    Separated(Ray, Ray),
    NotSeparated,
}

/// Decides whether `s` factors as `s_I ⊗ s_rest`, returning both factors.
pub fn separability(frame: &Frame, s: &Ray, set: &[usize]) -> Separability {
    let m = reshape(frame, s.amplitudes(), set);
    if m.rank() != 1 {
        return Separability::NotSeparated;
    }
    let col = (0..m.cols())
        .find(|&c| (0..m.rows()).any(|r| !m.get(r, c).is_zero()))
        .expect("rank one");
    let row = (0..m.rows())
        .find(|&r| !m.get(r, col).is_zero())
        .expect("rank one");
    let x = Ray::new(m.column_vec(col)).expect("nonzero column");
    let y = Ray::new(m.row(row).to_vec()).expect("nonzero row");
    Separability::Separated(x, y)
}

/// Span in `H_I` of every `I`-slice of every vector of `s`.
pub fn support(frame: &Frame, s: &Subspace, set: &[usize]) -> Subspace {
    let mut cols = Vec::new();
    for b in s.basis_vecs() {
        let m = reshape(frame, &b, set);
        for c in 0..m.cols() {
            cols.push(m.column_vec(c));
        }
    }
    Subspace::span(1 << set.len(), &cols)
}

/// Every ray reachable from `s` by an `I`-local map: `H_I ⊗ rowspace(reshape(s, I))`.
pub fn reachable(frame: &Frame, s: &Ray, set: &[usize]) -> Subspace {
    let m = reshape(frame, s.amplitudes(), set);
    let rows = Subspace::from_matrix(&m);
    tensor_subspaces(frame, set, &Subspace::full(1 << set.len()), &rows)
}

/// Shape of a subspace with respect to the cut `I | N∖I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductForm {
    Zero,
    /// `x ⊗ W`: every ray has `I`-component `x`.
    Left { x: Ray, w: Subspace },
    /// `V ⊗ y` with `dim V > 1`: components range over `V`.
    Right { v: Subspace, y: Ray },
    /// Contains a ray that is not `I`-separated.
    NotProduct,
}

pub fn product_form(frame: &Frame, s: &Subspace, set: &[usize]) -> ProductForm {
    if s.is_zero() {
        return ProductForm::Zero;
    }
    let rest = frame.complement(set);
    let si = support(frame, s, set);
    let sr = support(frame, s, &rest);
    if si.rank() == 1 {
        let x = Ray::new(si.basis_vecs().remove(0)).expect("nonzero");
        return ProductForm::Left { x, w: sr };
    }
    if sr.rank() == 1 {
        let y = Ray::new(sr.basis_vecs().remove(0)).expect("nonzero");
        return ProductForm::Right { v: si, y };
    }
    ProductForm::NotProduct
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<C> {
        xs.iter().map(|&x| C::from_int(x)).collect()
    }

    #[test]
    fn reshape_examples() {
        let f = Frame::new(2);
        assert_eq!(
            reshape(&f, &ints(&[0, 1, 0, 0]), &[1]),
            Matrix::from_int_rows(&[&[0, 1], &[0, 0]])
        );
        assert_eq!(
            reshape(&f, &ints(&[1, 0, 0, 1]), &[1]),
            Matrix::from_int_rows(&[&[1, 0], &[0, 1]])
        );
        let f3 = Frame::new(3);
        let s = ints(&[1, 0, 0, 1, 0, 0, 0, 0]);
        let m = reshape(&f3, &s, &[2, 3]);
        assert_eq!((m.rows(), m.cols(), m.rank()), (4, 2, 1));
    }

    #[test]
    fn reshape_independent_oracle() {
        // Direct placement by bit arithmetic on a 3-qubit vector.
        let f = Frame::new(3);
        let v: Vec<C> = (0..8).map(|k| C::from_int(k as i64 + 1)).collect();
        let m = reshape(&f, &v, &[1, 3]);
        for (b, vb) in v.iter().enumerate() {
            let (q1, q2, q3) = ((b >> 2) & 1, (b >> 1) & 1, b & 1);
            assert_eq!(m.get(q1 * 2 + q3, q2), vb);
        }
    }

    #[test]
    fn separability_examples() {
        let f = Frame::new(2);
        let s = Ray::product(&[Basis::Zero, Basis::One]);
        assert_eq!(
            separability(&f, &s, &[1]),
            Separability::Separated(Ray::from_ints(&[1, 0]).unwrap(), Ray::from_ints(&[0, 1]).unwrap())
        );
        let bell = Ray::from_ints(&[1, 0, 0, 1]).unwrap();
        assert_eq!(separability(&f, &bell, &[1]), Separability::NotSeparated);
        let f3 = Frame::new(3);
        let s = Ray::from_ints(&[1, 0, 0, 1, 1, 0, 0, 1]).unwrap();
        assert_eq!(
            separability(&f3, &s, &[1]),
            Separability::Separated(Ray::from_ints(&[1, 1]).unwrap(), bell)
        );
    }

    #[test]
    fn reachable_examples() {
        let f = Frame::new(2);
        let s00 = Ray::basis_state(4, 0);
        assert_eq!(
            reachable(&f, &s00, &[1]),
            Subspace::span(4, &[ints(&[1, 0, 0, 0]), ints(&[0, 0, 1, 0])])
        );
        let bell = Ray::from_ints(&[1, 0, 0, 1]).unwrap();
        assert!(reachable(&f, &bell, &[1]).is_full());
        assert!(reachable(&f, &s00, &[1, 2]).is_full());
    }

    #[test]
    fn product_forms() {
        let f = Frame::new(2);
        let left = local_state(&f, 1, Basis::Plus);
        assert!(matches!(product_form(&f, &left, &[1]), ProductForm::Left { .. }));
        assert!(matches!(product_form(&f, &left, &[2]), ProductForm::Right { .. }));
        assert_eq!(product_form(&f, &Subspace::full(4), &[1]), ProductForm::NotProduct);
        assert!(matches!(product_form(&f, &Subspace::full(4), &[]), ProductForm::Left { .. }));
    }
}
