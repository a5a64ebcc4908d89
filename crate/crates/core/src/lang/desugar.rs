use crate::qframe::{Basis, GateKind};

use super::ast::{Formula, Program};
use super::LangError;

/// Rewrites every abbreviation into core constructors for an `n`-qubit frame.
pub struct Desugarer {
    n: usize,
}

fn bx<T>(t: T) -> Box<T> {
    Box::new(t)
}

/// Classical negation that cancels a double negation.
fn neg(f: Formula) -> Formula {
    match f {
        Formula::Not(g) => *g,
        g => Formula::Not(bx(g)),
    }
}

fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(bx(a), bx(b))
}

fn or(a: Formula, b: Formula) -> Formula {
    neg(and(neg(a), neg(b)))
}

fn imp(a: Formula, b: Formula) -> Formula {
    neg(and(a, neg(b)))
}

fn iff(a: Formula, b: Formula) -> Formula {
    and(imp(a.clone(), b.clone()), imp(b, a))
}

fn boxp(p: Program, f: Formula) -> Formula {
    Formula::BoxP(bx(p), bx(f))
}

fn seq(a: Program, b: Program) -> Program {
    Program::Seq(bx(a), bx(b))
}

/// Every vector in `{0,1,+}^k`.
pub fn determining_vectors(k: usize) -> Vec<Vec<Basis>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                Basis::DETERMINING.iter().map(move |&b| {
                    let mut w = v.clone();
                    w.push(b);
                    w
                })
            })
            .collect();
    }
    out
}

impl Desugarer {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    fn all(&self) -> Vec<usize> {
        (1..=self.n).collect()
    }

    fn truth(&self) -> Formula {
        Formula::Top(self.all())
    }

    fn falsum(&self) -> Formula {
        neg(self.truth())
    }

    fn ortho(&self, f: Formula) -> Formula {
        boxp(Program::Test(bx(f)), self.falsum())
    }

    fn box_box(&self, f: Formula) -> Formula {
        let inner = boxp(Program::Test(bx(neg(f))), self.falsum());
        boxp(Program::Test(bx(neg(inner))), self.falsum())
    }

    fn leq(&self, a: Formula, b: Formula) -> Formula {
        self.box_box(imp(a, b))
    }

    fn eqf(&self, a: Formula, b: Formula) -> Formula {
        self.box_box(iff(a, b))
    }

    fn eqi(&self, set: &[usize], a: Formula, b: Formula) -> Formula {
        let top = Formula::Top(set.to_vec());
        let ca = Formula::Cmp(set.to_vec(), bx(a.clone()));
        let cb = Formula::Cmp(set.to_vec(), bx(b.clone()));
        and(and(self.leq(a, top.clone()), self.leq(b, top)), self.eqf(ca, cb))
    }

    fn id(&self) -> Program {
        Program::Test(bx(self.truth()))
    }

    fn check(&self, q: usize) -> Result<usize, LangError> {
        if q == 0 || q > self.n {
            return Err(LangError::BadIndex(format!("{q} not in 1..={}", self.n)));
        }
        Ok(q)
    }

    fn check_set(&self, qs: &[usize]) -> Result<Vec<usize>, LangError> {
        for (k, &q) in qs.iter().enumerate() {
            self.check(q)?;
            if qs[..k].contains(&q) {
                return Err(LangError::BadIndex(format!("duplicate index {q}")));
            }
        }
        Ok(qs.to_vec())
    }

    fn distinct(&self, qs: &[usize]) -> Result<(), LangError> {
        self.check_set(qs).map(|_| ())
    }

    fn vec_const(&self, set: &[usize], cs: &[Basis]) -> Formula {
        Formula::conj(set.iter().zip(cs).map(|(&q, &c)| Formula::Const(c, q))).unwrap_or_else(|| self.truth())
    }

    fn set0(&self, set: &[usize]) -> Program {
        let steps = set.iter().map(|&q| {
            let zero = Program::Test(bx(Formula::Const(Basis::Zero, q)));
            let one = Program::Test(bx(Formula::Const(Basis::One, q)));
            Program::Union(bx(zero), bx(seq(one, Program::Gate(GateKind::X, vec![q]))))
        });
        Program::seq_all(steps).unwrap_or_else(|| self.id())
    }

    fn proj0(&self, set: &[usize]) -> Program {
        match Formula::conj(set.iter().map(|&q| Formula::Const(Basis::Zero, q))) {
            Some(f) => Program::Test(bx(f)),
            None => self.id(),
        }
    }

    fn flip(&self, i: usize, j: usize) -> Option<Program> {
        if i == j {
            return None;
        }
        let c = |a, b| Program::Gate(GateKind::Cnot, vec![a, b]);
        Some(seq(seq(c(i, j), c(j, i)), c(i, j)))
    }

    fn unary1(&self, p: Program) -> Program {
        let rest: Vec<usize> = (2..=self.n).collect();
        if rest.is_empty() {
            return p;
        }
        seq(seq(self.set0(&rest), p), self.proj0(&rest))
    }

    fn mov(&self, i: usize, j: usize, p: Program) -> Program {
        let parts = [self.flip(1, i), Some(self.unary1(p)), self.flip(1, j)];
        Program::seq_all(parts.into_iter().flatten()).expect("nonempty")
    }

    /// Syntactic branches of a finite union of deterministic programs.
    pub fn branches(&self, p: &Program) -> Result<Vec<Program>, LangError> {
        match p {
            Program::Union(a, b) => {
                let mut out = self.branches(a)?;
                out.extend(self.branches(b)?);
                Ok(out)
            }
            Program::Seq(a, b) => {
                let (xs, ys) = (self.branches(a)?, self.branches(b)?);
                let mut out = Vec::with_capacity(xs.len() * ys.len());
                for x in &xs {
                    for y in &ys {
                        out.push(seq(x.clone(), y.clone()));
                    }
                }
                Ok(out)
            }
            Program::Top(_) => Err(LangError::NonDeterministicAdjoint(format!(
                "{p} is not a finite union of deterministic programs"
            ))),
            other => {
                if other.is_deterministic() {
                    Ok(vec![other.clone()])
                } else {
                    Err(LangError::NonDeterministicAdjoint(format!("{other} is not deterministic")))
                }
            }
        }
    }

    fn post(&self, p: Program, f: Formula) -> Result<Formula, LangError> {
        if !p.is_deterministic() {
            return Err(LangError::NonDeterministicAdjoint(format!("post over {p}")));
        }
        Ok(self.ortho(boxp(Program::Adj(bx(p)), self.ortho(f))))
    }

    fn img(&self, p: &Program, f: Formula) -> Result<Formula, LangError> {
        let mut parts = Vec::new();
        for b in self.branches(p)? {
            parts.push(self.post(b, f.clone())?);
        }
        Ok(parts.into_iter().reduce(or).expect("at least one branch"))
    }

    pub fn formula(&self, f: &Formula) -> Result<Formula, LangError> {
        use Formula as F;
        Ok(match f {
            F::Top(qs) => F::Top(self.check_set(qs)?),
            F::Var(v) => F::Var(v.clone()),
            F::Const(b, q) => F::Const(*b, self.check(*q)?),
            F::One => self.vec_const(&self.all(), &vec![Basis::One; self.n]),
            F::PlusAll => self.vec_const(&self.all(), &vec![Basis::Plus; self.n]),
            F::True => self.truth(),
            F::False => self.falsum(),
            F::Not(a) => neg(self.formula(a)?),
            F::Ortho(a) => self.ortho(self.formula(a)?),
            F::And(a, b) => and(self.formula(a)?, self.formula(b)?),
            F::Or(a, b) => or(self.formula(a)?, self.formula(b)?),
            F::Imp(a, b) => imp(self.formula(a)?, self.formula(b)?),
            F::Iff(a, b) => iff(self.formula(a)?, self.formula(b)?),
            F::BoxP(p, a) => boxp(self.program(p)?, self.formula(a)?),
            F::DiaP(p, a) => neg(boxp(self.program(p)?, neg(self.formula(a)?))),
            F::BoxM(a) => boxp(Program::Test(bx(neg(self.formula(a)?))), self.falsum()),
            F::DiaM(a) => neg(boxp(Program::Test(bx(self.formula(a)?)), self.falsum())),
            F::Bell { x, y, i, j } => {
                self.distinct(&[*i, *j])?;
                let mut word = Vec::new();
                if *x == 1 {
                    word.push(Program::Gate(GateKind::Z, vec![1]));
                }
                if *y == 1 {
                    word.push(Program::Gate(GateKind::X, vec![1]));
                }
                let p = Program::seq_all(word).unwrap_or_else(|| self.id());
                F::Ent(*i, *j, bx(p))
            }
            F::Ghz(i, j, k) => {
                self.distinct(&[*i, *j, *k])?;
                let c = |b, q| F::Const(b, q);
                let dia = |t: Formula, g: Formula| neg(boxp(Program::Test(bx(t)), neg(g)));
                let a = dia(c(Basis::Zero, *i), and(c(Basis::Zero, *j), c(Basis::Zero, *k)));
                let b = dia(c(Basis::One, *i), and(c(Basis::One, *j), c(Basis::One, *k)));
                let bell = self.formula(&F::Bell { x: 0, y: 0, i: *j, j: *k })?;
                let d = dia(c(Basis::Plus, *i), bell);
                and(and(a, b), d)
            }
            F::Gamma(i, j) => {
                self.distinct(&[*i, *j])?;
                let dia = |t: Basis| {
                    neg(boxp(
                        Program::Test(bx(F::Const(t, *i))),
                        neg(F::Const(Basis::Plus, *j)),
                    ))
                };
                and(and(dia(Basis::Zero), dia(Basis::One)), dia(Basis::Plus))
            }
            F::Ent(i, j, p) => {
                self.distinct(&[*i, *j])?;
                let p = self.program(p)?;
                if !p.is_deterministic() {
                    return Err(LangError::NonDeterministicAdjoint(format!("ent over {p}")));
                }
                F::Ent(*i, *j, bx(p))
            }
            F::Cmp(qs, a) => F::Cmp(self.check_set(qs)?, bx(self.formula(a)?)),
            F::Local(qs, a) => {
                let qs = self.check_set(qs)?;
                let a = self.formula(a)?;
                self.eqf(a.clone(), F::Cmp(qs, bx(a)))
            }
            F::LocalP(qs, p) => {
                let set = self.check_set(qs)?;
                let rest: Vec<usize> = self.all().into_iter().filter(|q| !set.contains(q)).collect();
                let p = self.program(p)?;
                let mut parts = Vec::new();
                for c in determining_vectors(set.len()) {
                    let cf = self.vec_const(&set, &c);
                    let ds = determining_vectors(rest.len());
                    for d in &ds {
                        let df = self.vec_const(&rest, d);
                        let input = if rest.is_empty() { cf.clone() } else if set.is_empty() { df.clone() } else { and(cf.clone(), df.clone()) };
                        let out = self.img(&p, input)?;
                        parts.push(self.eqi(&rest, df.clone(), out.clone()));
                        for d2 in &ds {
                            let df2 = self.vec_const(&rest, d2);
                            let input2 = if rest.is_empty() { cf.clone() } else if set.is_empty() { df2 } else { and(cf.clone(), df2) };
                            let out2 = self.img(&p, input2)?;
                            parts.push(self.eqi(&set, out.clone(), out2));
                        }
                    }
                }
                Formula::conj(parts).expect("nonempty")
            }
            F::Testable(a) => {
                let a = self.formula(a)?;
                self.leq(self.ortho(self.ortho(a.clone())), a)
            }
            F::Leq(a, b) => self.leq(self.formula(a)?, self.formula(b)?),
            F::Eqf(a, b) => self.eqf(self.formula(a)?, self.formula(b)?),
            F::Eqi(qs, a, b) => {
                let qs = self.check_set(qs)?;
                self.eqi(&qs, self.formula(a)?, self.formula(b)?)
            }
            F::Perp(a, b) => {
                let b = self.formula(b)?;
                self.leq(self.formula(a)?, self.ortho(b))
            }
            F::Sqcup(a, b) => {
                let (a, b) = (self.formula(a)?, self.formula(b)?);
                self.ortho(and(self.ortho(a), self.ortho(b)))
            }
            F::Img(p, a) => {
                let p = self.program(p)?;
                self.img(&p, self.formula(a)?)?
            }
            F::Post(p, a) => {
                let p = self.program(p)?;
                self.post(p, self.formula(a)?)?
            }
            F::Dom(p) => neg(boxp(self.program(p)?, self.falsum())),
        })
    }

    pub fn program(&self, p: &Program) -> Result<Program, LangError> {
        use Program as P;
        Ok(match p {
            P::Top(qs) => P::Top(self.check_set(qs)?),
            P::Test(f) => P::Test(bx(self.formula(f)?)),
            P::Gate(kind, ts) => {
                if ts.len() != kind.arity() {
                    return Err(LangError::BadIndex(format!("{kind:?} takes {} target(s)", kind.arity())));
                }
                P::Gate(*kind, self.check_set(ts)?)
            }
            P::Adj(a) => {
                let a = self.program(a)?;
                if !a.is_deterministic() {
                    return Err(LangError::NonDeterministicAdjoint(format!("adj({a})")));
                }
                P::Adj(bx(a))
            }
            P::Union(a, b) => P::Union(bx(self.program(a)?), bx(self.program(b)?)),
            P::Seq(a, b) => seq(self.program(a)?, self.program(b)?),
            P::Id => self.id(),
            P::Flip(i, j) => {
                self.check(*i)?;
                self.check(*j)?;
                self.flip(*i, *j).unwrap_or_else(|| self.id())
            }
            P::Set0(qs) => self.set0(&self.check_set(qs)?),
            P::Proj0(qs) => self.proj0(&self.check_set(qs)?),
            P::Unary1(a) => self.unary1(self.program(a)?),
            P::Mov(i, j, a) => {
                self.check(*i)?;
                self.check(*j)?;
                self.mov(*i, *j, self.program(a)?)
            }
        })
    }
}

pub fn desugar_formula(n: usize, f: &Formula) -> Result<Formula, LangError> {
    Desugarer::new(n).formula(f)
}

pub fn desugar_program(n: usize, p: &Program) -> Result<Program, LangError> {
    Desugarer::new(n).program(p)
}

/// Only core constructors (and the native atoms `Const`, `Ent`, `Cmp`).
pub fn is_core_formula(f: &Formula) -> bool {
    use Formula as F;
    match f {
        F::Top(_) | F::Var(_) | F::Const(..) => true,
        F::Not(a) | F::Cmp(_, a) => is_core_formula(a),
        F::And(a, b) => is_core_formula(a) && is_core_formula(b),
        F::Ent(_, _, p) => is_core_program(p),
        F::BoxP(p, a) => is_core_program(p) && is_core_formula(a),
        _ => false,
    }
}

pub fn is_core_program(p: &Program) -> bool {
    use Program as P;
    match p {
        P::Top(_) | P::Gate(..) => true,
        P::Test(f) => is_core_formula(f),
        P::Adj(a) => is_core_program(a),
        P::Union(a, b) | P::Seq(a, b) => is_core_program(a) && is_core_program(b),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parser::{parse_formula, parse_program};

    fn d(n: usize, s: &str) -> Formula {
        desugar_formula(n, &parse_formula(s).unwrap()).unwrap()
    }

    #[test]
    fn ortho_is_test_box() {
        assert_eq!(d(1, "~p"), parse_formula("[p?]!T{1}").unwrap());
    }

    #[test]
    fn set0_single_qubit() {
        let p = desugar_program(2, &parse_program("set0{2}").unwrap()).unwrap();
        assert_eq!(p, parse_program("0_2? + 1_2?; X_2").unwrap());
    }

    #[test]
    fn gamma_expands() {
        let g = d(2, "gamma[1,2]");
        let expect = d(2, "<0_1?>+_2 & <1_1?>+_2 & <+_1?>+_2");
        assert_eq!(g, expect);
    }

    #[test]
    fn desugar_is_idempotent_and_core() {
        for s in [
            "p -> [X_1]q",
            "leq(p, q) | eqi{1}(p, q)",
            "local{1}(0_1) & testable(~p)",
            "bell[1,1,1,2] & ghz[1,2,3]",
            "img(mov[1,3](id), p)",
            "dom(flip_1_2) <-> sqcup(p, dia q)",
        ] {
            let once = d(3, s);
            assert!(is_core_formula(&once), "{s}");
            assert_eq!(desugar_formula(3, &once).unwrap(), once, "{s}");
        }
    }

    #[test]
    fn adjoint_of_union_is_rejected() {
        let f = parse_formula("[adj(X_1 + Z_1)]p").unwrap();
        assert!(matches!(desugar_formula(1, &f), Err(LangError::NonDeterministicAdjoint(_))));
        assert!(desugar_formula(1, &parse_formula("img(T{1}, p)").unwrap()).is_err());
        assert!(matches!(desugar_formula(1, &parse_formula("0_2").unwrap()), Err(LangError::BadIndex(_))));
    }

    #[test]
    fn mov_omits_trivial_flip() {
        let p = desugar_program(2, &parse_program("mov[1,2](H_1)").unwrap()).unwrap();
        let expect = desugar_program(2, &parse_program("unary1(H_1); flip_1_2").unwrap()).unwrap();
        assert_eq!(p, expect);
    }
}
