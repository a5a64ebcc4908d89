//! Finite Boolean combinations of subspaces, in disjunctive normal form.
//!
//! A [`Term`] denotes the rays of a subspace `A` that avoid finitely many
//! proper subspaces `B_i`, optionally further restricted to states that are
//! (or are not) separated across given cuts. Pure terms, with no cut
//! literals, are all that is needed for the separation-free fragment.
//!
//! Emptiness is exact. A subspace over an infinite field is never covered
//! by finitely many proper subspaces, so a pure term is empty iff `A = 0` or
//! `A ⊆ B_i` for some `i`. With cut literals the positive part must factor as
//! a tensor product over the blocks of the cut partition; the product rays
//! then form an irreducible variety spanning `A`, and each forbidden cut
//! removes either everything or a proper closed subset.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{GaussianRational as C, Matrix};
use crate::qframe::{product_form, separability, support, Frame, ProductForm, Ray, Separability, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegionError {
    #[error("witness search exhausted after {0} candidates")]
    WitnessSearchExhausted(usize),
    #[error("unsupported region shape: {0}")]
    Unsupported(String),
}

/// One DNF term.
#[derive(Clone)]
pub struct Term {
    pub pos: Subspace,
    pub negs: Vec<Subspace>,
    /// Cuts across which the state must be separated.
    pub seps: Vec<Vec<usize>>,
    /// Cuts across which the state must not be separated.
    pub nonseps: Vec<Vec<usize>>,
}

impl Term {
    pub fn subspace(s: Subspace) -> Self {
        Self {
            pos: s,
            negs: Vec::new(),
            seps: Vec::new(),
            nonseps: Vec::new(),
        }
    }

    /// No negatives and no cut literals.
    pub fn is_plain(&self) -> bool {
        self.negs.is_empty() && self.is_pure()
    }

    /// No cut literals.
    pub fn is_pure(&self) -> bool {
        self.seps.is_empty() && self.nonseps.is_empty()
    }

    fn same_as(&self, other: &Term) -> bool {
        fn same_set<T: PartialEq>(a: &[T], b: &[T]) -> bool {
            a.len() == b.len() && a.iter().all(|x| b.contains(x))
        }
        self.pos == other.pos
            && same_set(&self.negs, &other.negs)
            && same_set(&self.seps, &other.seps)
            && same_set(&self.nonseps, &other.nonseps)
    }

    fn intersect(&self, other: &Term) -> Term {
        let pos = self.pos.meet(&other.pos);
        let negs = self
            .negs
            .iter()
            .chain(&other.negs)
            .map(|b| b.meet(&pos))
            .collect();
        let mut seps = self.seps.clone();
        seps.extend(other.seps.iter().cloned());
        let mut nonseps = self.nonseps.clone();
        nonseps.extend(other.nonseps.iter().cloned());
        Term {
            pos,
            negs,
            seps,
            nonseps,
        }
    }

    pub fn contains(&self, frame: &Frame, s: &Ray) -> bool {
        self.pos.contains_ray(s)
            && !self.negs.iter().any(|b| b.contains_ray(s))
            && self.seps.iter().all(|k| is_separated(frame, s, k))
            && !self.nonseps.iter().any(|k| is_separated(frame, s, k))
    }
}

fn is_separated(frame: &Frame, s: &Ray, cut: &[usize]) -> bool {
    matches!(separability(frame, s, cut), Separability::Separated(..))
}

/// Canonical side of a cut: the one containing qubit 1; `None` when trivial.
pub fn canonical_cut(frame: &Frame, cut: &[usize]) -> Option<Vec<usize>> {
    let mut k: Vec<usize> = cut.to_vec();
    k.sort_unstable();
    k.dedup();
    if k.is_empty() || k.len() == frame.n {
        return None;
    }
    if k.contains(&1) {
        Some(k)
    } else {
        Some(frame.complement(&k))
    }
}

/// Blocks of the partition generated by a family of cuts.
pub fn cut_partition(frame: &Frame, cuts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut blocks: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
    for q in 1..=frame.n {
        let sig: Vec<bool> = cuts.iter().map(|c| c.contains(&q)).collect();
        match blocks.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, b)) => b.push(q),
            None => blocks.push((sig, vec![q])),
        }
    }
    blocks.into_iter().map(|(_, b)| b).collect()
}

/// Is every ray of `s` separated across `cut`?
pub fn all_product(frame: &Frame, s: &Subspace, cut: &[usize]) -> bool {
    if cut.is_empty() || cut.len() == frame.n {
        return true;
    }
    !matches!(product_form(frame, s, cut), ProductForm::NotProduct)
}

/// A factorization of a term's positive subspace over its cut partition.
struct Factored {
    blocks: Vec<Vec<usize>>,
    factors: Vec<Subspace>,
}

fn factor(frame: &Frame, term: &Term) -> Result<Factored, RegionError> {
    let blocks = cut_partition(frame, &term.seps);
    if blocks.len() == 1 {
        return Ok(Factored {
            blocks,
            factors: vec![term.pos.clone()],
        });
    }
    let factors: Vec<Subspace> = blocks.iter().map(|b| support(frame, &term.pos, b)).collect();
    let dim: usize = factors.iter().map(Subspace::rank).product();
    if dim != term.pos.rank() {
        return Err(RegionError::Unsupported(format!(
            "separation literals over a subspace that does not factor across {blocks:?}"
        )));
    }
    Ok(Factored { blocks, factors })
}

/// Does the product variety of `fac` contain a state not separated across `cut`?
fn escapes_cut(fac: &Factored, cut: &[usize]) -> bool {
    fac.blocks.iter().zip(&fac.factors).any(|(block, v)| {
        let local: Vec<usize> = block
            .iter()
            .enumerate()
            .filter(|(_, q)| cut.contains(q))
            .map(|(k, _)| k + 1)
            .collect();
        let sub = Frame::new(block.len());
        !all_product(&sub, v, &local)
    })
}

/// Tensor of per-block vectors into an n-qubit vector.
fn tensor_blocks(frame: &Frame, blocks: &[Vec<usize>], parts: &[Vec<C>]) -> Vec<C> {
    (0..frame.dim())
        .map(|b| {
            let mut acc = C::one();
            for (block, v) in blocks.iter().zip(parts) {
                let idx = block.iter().fold(0, |a, &q| (a << 1) | frame.bit(b, q));
                if v[idx].is_zero() {
                    return C::zero();
                }
                acc = &acc * &v[idx];
            }
            acc
        })
        .collect()
}

/// A Boolean combination of subspaces and separation literals.
#[derive(Clone)]
pub struct Region {
    frame: Frame,
    terms: Vec<Term>,
}

impl Region {
    pub fn empty(frame: Frame) -> Self {
        Self {
            frame,
            terms: Vec::new(),
        }
    }

    pub fn full(frame: Frame) -> Self {
        Self::from_subspace(frame, Subspace::full(frame.dim()))
    }

    pub fn from_subspace(frame: Frame, s: Subspace) -> Self {
        Self::from_terms(frame, vec![Term::subspace(s)])
    }

    /// The states separated across `cut` (the separation atom).
    pub fn separated(frame: Frame, cut: &[usize]) -> Self {
        let mut t = Term::subspace(Subspace::full(frame.dim()));
        t.seps.push(cut.to_vec());
        Self::from_terms(frame, vec![t])
    }

    pub fn from_terms(frame: Frame, terms: Vec<Term>) -> Self {
        let mut r = Self { frame, terms };
        r.normalize();
        r
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// True when no term carries a cut literal.
    pub fn is_pure(&self) -> bool {
        self.terms.iter().all(Term::is_pure)
    }

    /// The subspace this region syntactically is, if it is a single plain term.
    pub fn as_subspace(&self) -> Option<Subspace> {
        match self.terms.as_slice() {
            [] => Some(Subspace::zero(self.frame.dim())),
            [t] if t.is_plain() => Some(t.pos.clone()),
            _ => None,
        }
    }

    pub fn contains(&self, s: &Ray) -> bool {
        self.terms.iter().any(|t| t.contains(&self.frame, s))
    }

    pub fn union(&self, other: &Region) -> Region {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(self.frame, terms)
    }

    pub fn intersect(&self, other: &Region) -> Region {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.intersect(b));
            }
        }
        Self::from_terms(self.frame, terms)
    }

    pub fn complement(&self) -> Region {
        let dim = self.frame.dim();
        let full = Subspace::full(dim);
        let mut acc = Region::full(self.frame);
        for t in &self.terms {
            let mut parts = Vec::new();
            if !t.pos.is_full() {
                let mut c = Term::subspace(full.clone());
                c.negs.push(t.pos.clone());
                parts.push(c);
            }
            for b in &t.negs {
                parts.push(Term::subspace(b.clone()));
            }
            for k in &t.seps {
                let mut c = Term::subspace(full.clone());
                c.nonseps.push(k.clone());
                parts.push(c);
            }
            for k in &t.nonseps {
                let mut c = Term::subspace(full.clone());
                c.seps.push(k.clone());
                parts.push(c);
            }
            acc = acc.intersect(&Region::from_terms(self.frame, parts));
            if acc.terms.is_empty() {
                break;
            }
        }
        acc
    }

    fn normalize(&mut self) {
        let frame = self.frame;
        let mut out: Vec<Term> = Vec::new();
        'terms: for mut t in std::mem::take(&mut self.terms) {
            if t.pos.is_zero() {
                continue;
            }
            let mut negs: Vec<Subspace> = Vec::new();
            for b in t.negs.drain(..) {
                let b = if b.is_subspace_of(&t.pos) { b } else { b.meet(&t.pos) };
                if b == t.pos {
                    continue 'terms;
                }
                if b.is_zero() || negs.iter().any(|x| b.is_subspace_of(x)) {
                    continue;
                }
                negs.retain(|x| !x.is_subspace_of(&b));
                negs.push(b);
            }
            t.negs = negs;
            let mut seps: Vec<Vec<usize>> = Vec::new();
            for k in &t.seps {
                if let Some(k) = canonical_cut(&frame, k) {
                    if !seps.contains(&k) && !all_product(&frame, &t.pos, &k) {
                        seps.push(k);
                    }
                }
            }
            seps.sort();
            let mut nonseps: Vec<Vec<usize>> = Vec::new();
            for k in &t.nonseps {
                let Some(k) = canonical_cut(&frame, k) else {
                    continue 'terms;
                };
                if seps.contains(&k) || all_product(&frame, &t.pos, &k) {
                    continue 'terms;
                }
                if !nonseps.contains(&k) {
                    nonseps.push(k);
                }
            }
            nonseps.sort();
            if !seps.is_empty() {
                let blocks = cut_partition(&frame, &seps);
                let implied = |k: &Vec<usize>| {
                    blocks.iter().all(|b| b.iter().all(|q| k.contains(q)) || b.iter().all(|q| !k.contains(q)))
                };
                if nonseps.iter().any(implied) {
                    continue;
                }
            }
            t.seps = seps;
            t.nonseps = nonseps;
            if out.iter().any(|o| o.same_as(&t)) {
                continue;
            }
            out.push(t);
        }
        // Plain terms absorb whatever they contain.
        let plains: Vec<Subspace> = out.iter().filter(|t| t.is_plain()).map(|t| t.pos.clone()).collect();
        if plains.iter().any(Subspace::is_full) {
            self.terms = vec![Term::subspace(Subspace::full(frame.dim()))];
            return;
        }
        let mut kept: Vec<Term> = Vec::new();
        for (idx, mut t) in out.into_iter().enumerate() {
            let absorbed = plains.iter().any(|p| {
                t.pos.is_subspace_of(p) && !(t.is_plain() && *p == t.pos)
            });
            if absorbed {
                continue;
            }
            if t.is_plain() && kept.iter().any(|k| k.is_plain() && k.pos == t.pos) {
                continue;
            }
            t.negs.retain(|b| !plains.iter().any(|p| b.is_subspace_of(p)));
            let _ = idx;
            kept.push(t);
        }
        let mut dedup: Vec<Term> = Vec::new();
        for t in kept {
            if !dedup.iter().any(|o| o.same_as(&t)) {
                dedup.push(t);
            }
        }
        self.terms = dedup;
    }

    fn term_nonempty(&self, t: &Term) -> Result<bool, RegionError> {
        if t.pos.is_zero() || t.negs.iter().any(|b| t.pos.is_subspace_of(b)) {
            return Ok(false);
        }
        if t.is_pure() {
            return Ok(true);
        }
        let fac = factor(&self.frame, t)?;
        Ok(t.nonseps.iter().all(|k| escapes_cut(&fac, k)))
    }

    pub fn is_empty(&self) -> Result<bool, RegionError> {
        for t in &self.terms {
            if self.term_nonempty(t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_full(&self) -> Result<bool, RegionError> {
        if self.as_subspace().is_some_and(|s| s.is_full()) {
            return Ok(true);
        }
        self.complement().is_empty()
    }

    /// Mutual containment, each side decided by emptiness.
    pub fn equals(&self, other: &Region) -> Result<bool, RegionError> {
        Ok(self.intersect(&other.complement()).is_empty()?
            && other.intersect(&self.complement()).is_empty()?)
    }

    /// Smallest subspace containing every ray of the region.
    pub fn closure(&self) -> Result<Subspace, RegionError> {
        let mut acc = Subspace::zero(self.frame.dim());
        for t in &self.terms {
            if self.term_nonempty(t)? {
                acc = acc.join(&t.pos);
            }
        }
        Ok(acc)
    }

    /// `□r = closure(¬r)^⊥`.
    pub fn box_op(&self) -> Result<Subspace, RegionError> {
        Ok(self.complement().closure()?.ortho())
    }

    /// `∼r = closure(r)^⊥`.
    pub fn ortho(&self) -> Result<Subspace, RegionError> {
        Ok(self.closure()?.ortho())
    }

    /// `◇r`, the complement of `□¬r`.
    pub fn diamond(&self) -> Result<Region, RegionError> {
        let b = self.complement().box_op()?;
        Ok(Region::from_subspace(self.frame, b).complement())
    }

    /// A concrete ray of the region, or `None` when empty.
    pub fn witness(&self) -> Result<Option<Ray>, RegionError> {
        for t in &self.terms {
            if self.term_nonempty(t)? {
                return self.term_witness(t).map(Some);
            }
        }
        Ok(None)
    }

    fn term_witness(&self, t: &Term) -> Result<Ray, RegionError> {
        let frame = &self.frame;
        let basis = t.pos.basis_vecs();
        for b in &basis {
            let r = Ray::new(b.clone()).expect("basis vectors are nonzero");
            if t.contains(frame, &r) {
                return Ok(r);
            }
        }
        if t.is_pure() {
            // Points on the moment curve Σ t^m a_m: each B_i meets it at most
            // k-1 times, so this many parameters suffice.
            let k = basis.len();
            let bound = (k.saturating_sub(1)) * t.negs.len() + 1;
            for step in 0..=bound {
                let x = C::from_int(step as i64);
                let mut coeffs = Vec::with_capacity(k);
                let mut p = C::one();
                for _ in 0..k {
                    coeffs.push(p.clone());
                    p = &p * &x;
                }
                let v = t.pos.sample_vector(&coeffs);
                if let Ok(r) = Ray::new(v) {
                    if t.contains(frame, &r) {
                        return Ok(r);
                    }
                }
            }
        }
        let fac = factor(frame, t)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        const TRIES: usize = 2000;
        for _ in 0..TRIES {
            let parts: Vec<Vec<C>> = fac
                .factors
                .iter()
                .map(|v| {
                    let coeffs: Vec<C> = (0..v.rank())
                        .map(|_| C::from_int(rng.random_range(-4..=4)))
                        .collect();
                    v.sample_vector(&coeffs)
                })
                .collect();
            if let Ok(r) = Ray::new(tensor_blocks(frame, &fac.blocks, &parts)) {
                if t.contains(frame, &r) {
                    return Ok(r);
                }
            }
        }
        Err(RegionError::WitnessSearchExhausted(TRIES))
    }

    /// `[F] r`: the rays killed by `F` or sent into `r`.
    pub fn wp_map(&self, f: &Matrix) -> Result<Region, RegionError> {
        let kernel = Subspace::from_matrix(&f.kernel_basis());
        let mut terms = vec![Term::subspace(kernel.clone())];
        for t in &self.terms {
            if !t.is_pure() {
                return Err(RegionError::Unsupported(
                    "weakest precondition of a separation literal".into(),
                ));
            }
            let mut negs = vec![kernel.clone()];
            negs.extend(t.negs.iter().map(|b| b.preimage(f)));
            terms.push(Term {
                pos: t.pos.preimage(f),
                negs,
                seps: Vec::new(),
                nonseps: Vec::new(),
            });
        }
        Ok(Region::from_terms(self.frame, terms))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "empty");
        }
        for (k, t) in self.terms.iter().enumerate() {
            write!(f, "term {}: {}", k + 1, t.pos)?;
            for b in &t.negs {
                write!(f, " minus {b}")?;
            }
            for s in &t.seps {
                write!(f, " sep{s:?}")?;
            }
            for s in &t.nonseps {
                write!(f, " nonsep{s:?}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qframe::{gate, local_state, Basis, GateKind};

    fn ray(frame: Frame, xs: &[i64]) -> Subspace {
        let _ = frame;
        Ray::from_ints(xs).unwrap().as_subspace()
    }

    #[test]
    fn complement_of_full_is_empty() {
        let f = Frame::new(1);
        assert!(Region::full(f).complement().is_empty().unwrap());
        assert!(Region::empty(f).complement().is_full().unwrap());
    }

    #[test]
    fn intersect_with_complement_of_ray() {
        let f = Frame::new(2);
        let a = Subspace::span(4, &[Ray::from_ints(&[1, 0, 0, 0]).unwrap().amplitudes().to_vec(), Ray::from_ints(&[0, 0, 0, 1]).unwrap().amplitudes().to_vec()]);
        let r = Region::from_subspace(f, a.clone())
            .intersect(&Region::from_subspace(f, ray(f, &[1, 0, 0, 0])).complement());
        assert_eq!(r.terms().len(), 1);
        assert_eq!(r.terms()[0].pos, a);
        assert_eq!(r.terms()[0].negs, vec![ray(f, &[1, 0, 0, 0])]);
    }

    #[test]
    fn union_of_two_rays_misses_plus() {
        let f = Frame::new(1);
        let r = Region::from_subspace(f, ray(f, &[1, 0])).union(&Region::from_subspace(f, ray(f, &[0, 1])));
        assert_eq!(r.terms().len(), 2);
        assert!(!r.contains(&Ray::from_ints(&[1, 1]).unwrap()));
        assert!(r.contains(&Ray::from_ints(&[0, 3]).unwrap()));
    }

    #[test]
    fn closure_examples() {
        let f = Frame::new(1);
        assert!(Region::empty(f).closure().unwrap().is_zero());
        let s = ray(f, &[1, 1]);
        assert_eq!(Region::from_subspace(f, s.clone()).closure().unwrap(), s);
        let punctured = Region::from_subspace(f, ray(f, &[1, 0])).complement();
        assert!(punctured.closure().unwrap().is_full());
    }

    #[test]
    fn box_examples() {
        let f = Frame::new(1);
        assert!(Region::full(f).box_op().unwrap().is_full());
        let r = Region::from_subspace(f, ray(f, &[1, 0])).complement();
        assert_eq!(r.box_op().unwrap(), ray(f, &[0, 1]));
        let one = Region::from_subspace(f, local_state(&f, 1, Basis::One));
        assert_eq!(one.ortho().unwrap(), local_state(&f, 1, Basis::Zero));
    }

    #[test]
    fn wp_examples() {
        let f = Frame::new(1);
        let test0 = ray(f, &[1, 0]).projector();
        assert_eq!(Region::empty(f).wp_map(&test0).unwrap().as_subspace().unwrap(), ray(f, &[0, 1]));
        let x = gate(&f, GateKind::X, &[1]).unwrap();
        let one = Region::from_subspace(f, local_state(&f, 1, Basis::One));
        let pre = one.wp_map(&x.matrix).unwrap();
        assert!(pre.equals(&Region::from_subspace(f, local_state(&f, 1, Basis::Zero))).unwrap());
        assert!(Region::full(f).wp_map(&test0).unwrap().is_full().unwrap());
    }

    #[test]
    fn emptiness_examples() {
        let f = Frame::new(1);
        let a = ray(f, &[1, 1]);
        let t = Term {
            pos: a.clone(),
            negs: vec![a],
            seps: vec![],
            nonseps: vec![],
        };
        assert!(Region::from_terms(f, vec![t]).is_empty().unwrap());
        let r = Region::from_subspace(f, ray(f, &[1, 0])).complement();
        let w = r.witness().unwrap().unwrap();
        assert!(r.contains(&w));
        assert_ne!(w, Ray::from_ints(&[1, 0]).unwrap());
    }

    #[test]
    fn separation_literals() {
        let f = Frame::new(2);
        let sep = Region::separated(f, &[1]);
        assert!(!sep.is_empty().unwrap());
        assert!(sep.closure().unwrap().is_full());
        assert!(!sep.complement().is_empty().unwrap());
        let bell = Ray::from_ints(&[1, 0, 0, 1]).unwrap();
        assert!(!sep.contains(&bell));
        assert!(sep.complement().contains(&bell));
        let w = sep.complement().witness().unwrap().unwrap();
        assert!(!sep.contains(&w));
        // A local subspace lies inside the separated states.
        let loc = Region::from_subspace(f, local_state(&f, 1, Basis::Plus));
        assert!(loc.intersect(&sep.complement()).is_empty().unwrap());
    }

    #[test]
    fn separation_closure_laws() {
        let f = Frame::new(3);
        let both = Region::separated(f, &[1]).intersect(&Region::separated(f, &[2]));
        let derived = Region::separated(f, &[3]).intersect(&Region::separated(f, &[1, 2]));
        assert!(both.intersect(&derived.complement()).is_empty().unwrap());
    }
}
