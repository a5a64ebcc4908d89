//! Program denotations and the formula evaluators.
//!
//! [`Checker::eval`] maps a desugared formula to a [`Region`]. Separation
//! atoms become cut literals and `cmp{I}` components are computed exactly
//! whenever the argument's terms have a recognized product shape. Anything
//! beyond that raises an "unsupported" error, and [`Checker::holds`] then
//! falls back to evaluating at a concrete ray.

mod schematic;

use std::cell::RefCell;
use std::collections::HashMap;

use thiserror::Error;

use crate::lang::{desugar_formula, Formula, LangError, Program};
use crate::linalg::Matrix;
use crate::qframe::{
    embed_local, gate, local_state, map_to_state, product_form, reachable, restrict_first, separability,
    support, tensor_subspaces, tensor_vectors, Frame, PartialMap, ProductForm, QAction, QframeError, Ray,
    Separability, Subspace,
};
use crate::regions::{Region, RegionError, Term};

pub use schematic::{check_schematic, local_instance, InstanceKind, InstanceRecord, SchematicClaim, SchematicOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("spatial construct outside the symbolic fragment: {0}")]
    SpatialAtomInSymbolicMode(String),
    #[error("unsupported nesting: {0}")]
    UnsupportedNesting(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("nondeterministic program where a deterministic one is required: {0}")]
    NonDeterministicAdjoint(String),
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error("evaluator disagreement: {0}")]
    Disagreement(String),
}

impl CheckError {
    /// Errors that only mean "outside the supported fragment".
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            CheckError::SpatialAtomInSymbolicMode(_)
                | CheckError::UnsupportedNesting(_)
                | CheckError::UnsupportedShape(_)
                | CheckError::Region(RegionError::Unsupported(_))
        )
    }
}

impl From<QframeError> for CheckError {
    fn from(e: QframeError) -> Self {
        CheckError::BadIndex(e.to_string())
    }
}

/// A frame together with a valuation of propositional variables.
#[derive(Clone)]
pub struct Env {
    pub frame: Frame,
    vals: HashMap<String, Region>,
}

impl Env {
    pub fn new(frame: Frame) -> Self {
        Self {
            frame,
            vals: HashMap::new(),
        }
    }

    pub fn bind(&mut self, name: &str, r: Region) {
        self.vals.insert(name.to_string(), r);
    }

    pub fn bind_subspace(&mut self, name: &str, s: Subspace) {
        let r = Region::from_subspace(self.frame, s);
        self.bind(name, r);
    }

    pub fn get(&self, name: &str) -> Option<&Region> {
        self.vals.get(name)
    }
}

/// Denotation of a program: a finite quantum action, or the trivial `I`-local action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Denotation {
    Action(QAction),
    LocalTrivial(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Counterexample(Ray),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Evaluator over one environment, memoizing formula denotations.
pub struct Checker<'e> {
    env: &'e Env,
    memo: RefCell<HashMap<Formula, Region>>,
    tests: RefCell<HashMap<Formula, Matrix>>,
}

impl<'e> Checker<'e> {
    pub fn new(env: &'e Env) -> Self {
        Self {
            env,
            memo: RefCell::new(HashMap::new()),
            tests: RefCell::new(HashMap::new()),
        }
    }

    pub fn frame(&self) -> Frame {
        self.env.frame
    }

    pub fn desugar(&self, f: &Formula) -> Result<Formula, CheckError> {
        Ok(desugar_formula(self.frame().n, f)?)
    }

    /// Symbolic denotation of a desugared formula.
    pub fn eval(&self, f: &Formula) -> Result<Region, CheckError> {
        if let Some(r) = self.memo.borrow().get(f) {
            return Ok(r.clone());
        }
        let r = self.eval_uncached(f)?;
        self.memo.borrow_mut().insert(f.clone(), r.clone());
        Ok(r)
    }

    fn eval_uncached(&self, f: &Formula) -> Result<Region, CheckError> {
        let frame = self.frame();
        match f {
            Formula::Top(qs) => Ok(Region::separated(frame, qs)),
            Formula::Var(v) => self
                .env
                .get(v)
                .cloned()
                .ok_or_else(|| CheckError::UnboundVariable(v.clone())),
            Formula::Const(c, q) => {
                frame.check_index(*q)?;
                Ok(Region::from_subspace(frame, local_state(&frame, *q, *c)))
            }
            Formula::Not(a) => Ok(self.eval(a)?.complement()),
            Formula::And(a, b) => {
                let ra = self.eval(a)?;
                if ra.terms().is_empty() {
                    return Ok(ra);
                }
                Ok(ra.intersect(&self.eval(b)?))
            }
            Formula::BoxP(p, a) => {
                let r = self.eval(a)?;
                self.wp(p, &r)
            }
            Formula::Ent(i, j, p) => Ok(Region::from_subspace(frame, self.entangled(*i, *j, p)?)),
            Formula::Cmp(qs, a) => {
                let r = self.eval(a)?;
                component(frame, &r, qs)
            }
            other => Err(CheckError::UnsupportedShape(format!("not a core formula: {other}"))),
        }
    }

    /// The subspace of states entangled according to the 1-qubit map of `p`.
    pub fn entangled(&self, i: usize, j: usize, p: &Program) -> Result<Subspace, CheckError> {
        let frame = self.frame();
        let m = self.det_map(p)?;
        let g = restrict_first(&frame, &PartialMap::new(m));
        Ok(map_to_state(&frame, &g, i, j)?)
    }

    /// Projector of the test `g?`: onto the closure of `⟦g⟧`.
    pub fn test_projector(&self, g: &Formula) -> Result<Matrix, CheckError> {
        if let Some(m) = self.tests.borrow().get(g) {
            return Ok(m.clone());
        }
        let m = self.eval(g)?.closure()?.projector();
        self.tests.borrow_mut().insert(g.clone(), m.clone());
        Ok(m)
    }

    /// Matrix of a deterministic program; `;` runs left to right.
    pub fn det_map(&self, p: &Program) -> Result<Matrix, CheckError> {
        let frame = self.frame();
        match p {
            Program::Gate(kind, ts) => Ok(gate(&frame, *kind, ts)?.matrix),
            Program::Test(g) => self.test_projector(g),
            Program::Adj(q) => Ok(self.det_map(q)?.conj_transpose()),
            Program::Seq(a, b) => Ok(self.det_map(b)?.mul(&self.det_map(a)?)),
            other => Err(CheckError::NonDeterministicAdjoint(other.to_string())),
        }
    }

    pub fn denote_program(&self, p: &Program) -> Result<Denotation, CheckError> {
        if let Program::Top(qs) = p {
            return Ok(Denotation::LocalTrivial(qs.clone()));
        }
        Ok(Denotation::Action(QAction {
            branches: self.branch_maps(p)?,
        }))
    }

    fn branch_maps(&self, p: &Program) -> Result<Vec<PartialMap>, CheckError> {
        match p {
            Program::Union(a, b) => {
                let mut out = self.branch_maps(a)?;
                for m in self.branch_maps(b)? {
                    if !out.contains(&m) {
                        out.push(m);
                    }
                }
                Ok(out)
            }
            Program::Seq(a, b) => {
                let (xs, ys) = (self.branch_maps(a)?, self.branch_maps(b)?);
                let mut out: Vec<PartialMap> = Vec::new();
                for x in &xs {
                    for y in &ys {
                        let m = x.then(y);
                        if !out.contains(&m) {
                            out.push(m);
                        }
                    }
                }
                Ok(out)
            }
            Program::Top(qs) => Err(CheckError::UnsupportedNesting(format!(
                "T{qs:?} inside a composite program has no finite branch list"
            ))),
            other => Ok(vec![PartialMap::new(self.det_map(other)?)]),
        }
    }

    /// Weakest precondition `[p] r`.
    pub fn wp(&self, p: &Program, r: &Region) -> Result<Region, CheckError> {
        let frame = self.frame();
        let via = |m: &Matrix| -> Result<Region, CheckError> {
            if r.is_pure() {
                Ok(r.wp_map(m)?)
            } else {
                Err(CheckError::SpatialAtomInSymbolicMode(
                    "weakest precondition of a separation property".into(),
                ))
            }
        };
        match p {
            Program::Gate(kind, ts) => via(&gate(&frame, *kind, ts)?.matrix),
            Program::Test(g) => {
                if r.as_subspace().is_some_and(|s| s.is_full()) {
                    return Ok(r.clone());
                }
                via(&self.test_projector(g)?)
            }
            Program::Adj(_) => via(&self.det_map(p)?),
            Program::Union(a, b) => Ok(self.wp(a, r)?.intersect(&self.wp(b, r)?)),
            Program::Seq(a, b) => {
                let inner = self.wp(b, r)?;
                self.wp(a, &inner)
            }
            Program::Top(qs) => {
                let Some(s) = r.as_subspace() else {
                    return Err(CheckError::SpatialAtomInSymbolicMode(
                        "box of the trivial local program over a non-subspace".into(),
                    ));
                };
                Ok(Region::from_subspace(frame, local_box(&frame, qs, &s)))
            }
            other => Err(CheckError::UnsupportedShape(format!("not a core program: {other}"))),
        }
    }

    /// Pointwise semantics at a concrete state.
    /// Evaluates a core formula at `s` from program images alone; formulas are
    /// evaluated as regions only to build test projectors.
    pub fn holds_direct(&self, s: &Ray, f: &Formula) -> Result<bool, CheckError> {
        let frame = self.frame();
        match f {
            Formula::Top(qs) => Ok(qs.len() == frame.n
                || matches!(separability(&frame, s, qs), Separability::Separated(..))),
            Formula::Var(v) => Ok(self
                .env
                .get(v)
                .ok_or_else(|| CheckError::UnboundVariable(v.clone()))?
                .contains(s)),
            Formula::Const(b, q) => Ok(local_state(&frame, *q, *b).contains_ray(s)),
            Formula::Ent(i, j, p) => Ok(self.entangled(*i, *j, p)?.contains_ray(s)),
            Formula::Not(a) => Ok(!self.holds_direct(s, a)?),
            Formula::And(a, b) => Ok(self.holds_direct(s, a)? && self.holds_direct(s, b)?),
            Formula::BoxP(p, a) => match self.denote_program(p)? {
                Denotation::Action(act) => {
                    for t in act.images(s) {
                        if !self.holds_direct(&t, a)? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                }
                Denotation::LocalTrivial(qs) => Err(CheckError::SpatialAtomInSymbolicMode(format!(
                    "T{qs:?} has no ray-by-ray image"
                ))),
            },
            other => Err(CheckError::UnsupportedShape(format!("{other} is not a core formula"))),
        }
    }

    pub fn holds(&self, s: &Ray, f: &Formula) -> Result<bool, CheckError> {
        match self.eval(f) {
            Ok(r) => return Ok(r.contains(s)),
            Err(e) if e.is_unsupported() => {}
            Err(e) => return Err(e),
        }
        let frame = self.frame();
        match f {
            Formula::Top(qs) => Ok(matches!(separability(&frame, s, qs), Separability::Separated(..))),
            Formula::Not(a) => Ok(!self.holds(s, a)?),
            Formula::And(a, b) => Ok(self.holds(s, a)? && self.holds(s, b)?),
            Formula::Cmp(qs, a) => {
                let qs = sorted(qs);
                if qs.is_empty() {
                    return Ok(!self.symbolic(a)?.is_empty()?);
                }
                if qs.len() == frame.n {
                    return self.holds(s, a);
                }
                match separability(&frame, s, &qs) {
                    Separability::NotSeparated => Ok(false),
                    Separability::Separated(x, _) => {
                        let slice = embed_local(&frame, &qs, &x.as_subspace());
                        let r = self.symbolic(a)?;
                        Ok(!Region::from_subspace(frame, slice).intersect(&r).is_empty()?)
                    }
                }
            }
            Formula::BoxP(p, a) => {
                for t in self.images(vec![s.as_subspace()], p)? {
                    let ok = if t.rank() == 1 {
                        let ray = Ray::new(t.basis_vecs().remove(0)).expect("nonzero");
                        self.holds(&ray, a)?
                    } else {
                        let r = self.symbolic(a)?;
                        Region::from_subspace(frame, t).intersect(&r.complement()).is_empty()?
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => self.eval(f).map(|r| r.contains(s)),
        }
    }

    /// `eval`, with unsupported shapes reported as unsupported nesting.
    fn symbolic(&self, f: &Formula) -> Result<Region, CheckError> {
        self.eval(f).map_err(|e| {
            if e.is_unsupported() {
                CheckError::UnsupportedNesting(format!("{f} must be symbolic here ({e})"))
            } else {
                e
            }
        })
    }

    /// All output states of `p` from the states of `sets`, each set meaning
    /// every nonzero ray it contains.
    pub fn images(&self, sets: Vec<Subspace>, p: &Program) -> Result<Vec<Subspace>, CheckError> {
        let frame = self.frame();
        let mapped = |m: &Matrix| -> Vec<Subspace> {
            let mut out: Vec<Subspace> = Vec::new();
            for s in &sets {
                let t = s.image(m);
                if !t.is_zero() && !out.contains(&t) {
                    out.push(t);
                }
            }
            out
        };
        match p {
            Program::Gate(kind, ts) => Ok(mapped(&gate(&frame, *kind, ts)?.matrix)),
            Program::Test(g) => {
                let m = self.test_projector(g).map_err(|e| {
                    if e.is_unsupported() {
                        CheckError::UnsupportedNesting(format!("test {g}? needs a symbolic closure"))
                    } else {
                        e
                    }
                })?;
                Ok(mapped(&m))
            }
            Program::Adj(_) => Ok(mapped(&self.det_map(p)?)),
            Program::Union(a, b) => {
                let mut out = self.images(sets.clone(), a)?;
                for t in self.images(sets, b)? {
                    if !out.contains(&t) {
                        out.push(t);
                    }
                }
                Ok(out)
            }
            Program::Seq(a, b) => {
                let mid = self.images(sets, a)?;
                self.images(mid, b)
            }
            Program::Top(qs) => {
                let mut out: Vec<Subspace> = Vec::new();
                for s in &sets {
                    if s.rank() != 1 {
                        return Err(CheckError::UnsupportedNesting(
                            "trivial local program applied to a non-singleton set".into(),
                        ));
                    }
                    let ray = Ray::new(s.basis_vecs().remove(0)).expect("nonzero");
                    let t = reachable(&frame, &ray, qs);
                    if !out.contains(&t) {
                        out.push(t);
                    }
                }
                Ok(out)
            }
            other => Err(CheckError::UnsupportedShape(format!("not a core program: {other}"))),
        }
    }

    /// Valid iff `⟦¬f⟧` is empty; a witness is re-verified pointwise.
    pub fn check_valid(&self, f: &Formula) -> Result<Validity, CheckError> {
        let r = self.eval(f)?;
        match r.complement().witness()? {
            None => Ok(Validity::Valid),
            Some(w) => {
                if self.holds(&w, f)? {
                    return Err(CheckError::Disagreement(format!("witness {w} satisfies {f}")));
                }
                Ok(Validity::Counterexample(w))
            }
        }
    }

    /// `φ =_I ψ` on denotations: both `I`-separated, with equal `I`-components.
    pub fn eq_component(&self, a: &Region, b: &Region, qs: &[usize]) -> Result<bool, CheckError> {
        let frame = self.frame();
        let nonsep = Region::separated(frame, qs).complement();
        if !a.intersect(&nonsep).is_empty()? || !b.intersect(&nonsep).is_empty()? {
            return Ok(false);
        }
        Ok(component(frame, a, qs)?.equals(&component(frame, b, qs)?)?)
    }
}

fn sorted(qs: &[usize]) -> Vec<usize> {
    let mut v = qs.to_vec();
    v.sort_unstable();
    v
}

/// `{s : every I-local image of s lies in A}` = `H_I ⊗ W` with `W` the
/// largest subspace such that `H_I ⊗ W ⊆ A`.
fn local_box(frame: &Frame, qs: &[usize], a: &Subspace) -> Subspace {
    let qs = sorted(qs);
    let rest = frame.complement(&qs);
    let rdim = 1usize << rest.len();
    let mut w = Subspace::full(rdim);
    for idx in 0..(1usize << qs.len()) {
        let mut e = vec![crate::linalg::GaussianRational::zero(); 1 << qs.len()];
        e[idx] = crate::linalg::GaussianRational::one();
        let cols: Vec<Vec<_>> = (0..rdim)
            .map(|c| {
                let mut f = vec![crate::linalg::GaussianRational::zero(); rdim];
                f[c] = crate::linalg::GaussianRational::one();
                tensor_vectors(frame, &qs, &e, &f)
            })
            .collect();
        let embed = Matrix::from_rows(frame.dim(), cols).transpose();
        w = w.meet(&a.preimage(&embed));
    }
    tensor_subspaces(frame, &qs, &Subspace::full(1 << qs.len()), &w)
}

/// `{x ∈ U : x ⊗ W ⊆ B}` for `B ⊆ U ⊗ W`.
fn slice_inside(frame: &Frame, qs: &[usize], u: &Subspace, w: &Subspace, b: &Subspace) -> Subspace {
    let k = 1usize << qs.len();
    let mut acc = u.clone();
    for wv in w.basis_vecs() {
        let cols: Vec<Vec<_>> = (0..k)
            .map(|a| {
                let mut e = vec![crate::linalg::GaussianRational::zero(); k];
                e[a] = crate::linalg::GaussianRational::one();
                tensor_vectors(frame, qs, &e, &wv)
            })
            .collect();
        let embed = Matrix::from_rows(frame.dim(), cols).transpose();
        acc = acc.meet(&b.preimage(&embed));
    }
    acc
}

/// `⟦φ_I⟧` from `⟦φ⟧`: the `I`-separated states whose `I`-component is the
/// `I`-component of some state of `r`.
pub fn component(frame: Frame, r: &Region, qs: &[usize]) -> Result<Region, CheckError> {
    let qs = sorted(qs);
    if qs.is_empty() {
        return Ok(if r.is_empty()? { Region::empty(frame) } else { Region::full(frame) });
    }
    if qs.len() == frame.n {
        return Ok(r.clone());
    }
    let rest = frame.complement(&qs);
    let lift = |s: &Subspace| embed_local(&frame, &qs, s);
    let mut terms = Vec::new();
    for t in r.terms() {
        if !t.is_pure() {
            return Err(CheckError::UnsupportedShape(format!(
                "component on {qs:?} of a property with separation constraints"
            )));
        }
        let (pos, negs): (Subspace, Vec<Subspace>) = match product_form(&frame, &t.pos, &qs) {
            ProductForm::Zero => continue,
            ProductForm::Left { x, .. } => (x.as_subspace(), Vec::new()),
            ProductForm::Right { v, .. } => {
                let negs = t.negs.iter().map(|b| support(&frame, b, &qs)).collect();
                (v, negs)
            }
            ProductForm::NotProduct => {
                if t.pos.rank() == 1 {
                    // A single entangled ray has no separated states.
                    continue;
                }
                let u = support(&frame, &t.pos, &qs);
                let w = support(&frame, &t.pos, &rest);
                if u.rank() * w.rank() != t.pos.rank() {
                    return Err(CheckError::UnsupportedShape(format!(
                        "component on {qs:?} of an entangled subspace {}",
                        t.pos
                    )));
                }
                let negs = t.negs.iter().map(|b| slice_inside(&frame, &qs, &u, &w, b)).collect();
                (u, negs)
            }
        };
        let mut term = Term::subspace(lift(&pos));
        term.negs = negs.iter().map(lift).collect();
        term.seps.push(qs.clone());
        terms.push(term);
    }
    Ok(Region::from_terms(frame, terms))
}

#[cfg(test)]
mod tests;
