use crate::qframe::{Basis, GateKind};

/// Formulas, core and sugared. After desugaring only `Top`, `Var`, `Const`,
/// `Not`, `And`, `BoxP`, `Ent` and `Cmp` remain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Top(Vec<usize>),
    Var(String),
    Const(Basis, usize),
    One,
    PlusAll,
    True,
    False,
    Not(Box<Formula>),
    Ortho(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    BoxP(Box<Program>, Box<Formula>),
    DiaP(Box<Program>, Box<Formula>),
    BoxM(Box<Formula>),
    DiaM(Box<Formula>),
    Bell { x: u8, y: u8, i: usize, j: usize },
    Ghz(usize, usize, usize),
    Gamma(usize, usize),
    Ent(usize, usize, Box<Program>),
    Cmp(Vec<usize>, Box<Formula>),
    Local(Vec<usize>, Box<Formula>),
    LocalP(Vec<usize>, Box<Program>),
    Testable(Box<Formula>),
    Leq(Box<Formula>, Box<Formula>),
    Eqf(Box<Formula>, Box<Formula>),
    Eqi(Vec<usize>, Box<Formula>, Box<Formula>),
    Perp(Box<Formula>, Box<Formula>),
    Sqcup(Box<Formula>, Box<Formula>),
    Img(Box<Program>, Box<Formula>),
    Post(Box<Program>, Box<Formula>),
    Dom(Box<Program>),
}

/// Programs, core and sugared. Core: `Top`, `Test`, `Gate`, `Adj`, `Union`, `Seq`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Program {
    Top(Vec<usize>),
    Test(Box<Formula>),
    Gate(GateKind, Vec<usize>),
    Adj(Box<Program>),
    Union(Box<Program>, Box<Program>),
    Seq(Box<Program>, Box<Program>),
    Id,
    Flip(usize, usize),
    Set0(Vec<usize>),
    Proj0(Vec<usize>),
    Unary1(Box<Program>),
    Mov(usize, usize, Box<Program>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn boxp(p: Program, f: Formula) -> Formula {
        Formula::BoxP(Box::new(p), Box::new(f))
    }

    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn conj(fs: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        fs.into_iter().reduce(Formula::and)
    }

    /// Unary-level formulas print without parentheses in operand position.
    pub fn is_unary_level(&self) -> bool {
        !matches!(
            self,
            Formula::And(..) | Formula::Or(..) | Formula::Imp(..) | Formula::Iff(..)
        )
    }
}

impl Program {
    pub fn seq(a: Program, b: Program) -> Program {
        Program::Seq(Box::new(a), Box::new(b))
    }

    pub fn union(a: Program, b: Program) -> Program {
        Program::Union(Box::new(a), Box::new(b))
    }

    pub fn test(f: Formula) -> Program {
        Program::Test(Box::new(f))
    }

    pub fn gate(kind: GateKind, targets: &[usize]) -> Program {
        Program::Gate(kind, targets.to_vec())
    }

    /// Left-nested sequence; `None` for an empty list.
    pub fn seq_all(ps: impl IntoIterator<Item = Program>) -> Option<Program> {
        ps.into_iter().reduce(Program::seq)
    }

    /// Built without `+` and without `T{I}`.
    pub fn is_deterministic(&self) -> bool {
        match self {
            Program::Top(_) | Program::Union(..) => false,
            Program::Set0(qs) => qs.is_empty(),
            Program::Unary1(_) | Program::Mov(..) => false,
            Program::Adj(p) => p.is_deterministic(),
            Program::Seq(a, b) => a.is_deterministic() && b.is_deterministic(),
            Program::Test(_) | Program::Gate(..) | Program::Id | Program::Flip(..) | Program::Proj0(_) => true,
        }
    }
}
