use std::collections::BTreeSet;

use crate::qframe::GateKind;

use super::ast::{Formula, Program};
use super::lexer::{lex, Spanned, Tok};
use super::LangError;

const KEYWORDS: &[&str] = &[
    "T", "true", "false", "one", "plus", "box", "dia", "bell", "ghz", "gamma", "ent", "cmp", "local",
    "localp", "testable", "leq", "eqf", "eqi", "perpf", "sqcup", "img", "post", "dom", "id", "adj",
    "set0", "proj0", "unary1", "mov",
];

/// Either a formula or a program, as accepted by [`parse_expr`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Formula(Formula),
    Program(Program),
}

pub fn parse_formula(src: &str) -> Result<Formula, LangError> {
    let mut p = Parser::new(src)?;
    let r = p.formula().and_then(|f| p.expect(&Tok::Eof).map(|_| f));
    r.map_err(|_| p.error())
}

pub fn parse_program(src: &str) -> Result<Program, LangError> {
    let mut p = Parser::new(src)?;
    let r = p.program().and_then(|f| p.expect(&Tok::Eof).map(|_| f));
    r.map_err(|_| p.error())
}

/// Tries a formula first, then a program; reports the further-reaching error.
pub fn parse_expr(src: &str) -> Result<Expr, LangError> {
    match parse_formula(src) {
        Ok(f) => Ok(Expr::Formula(f)),
        Err(fe) => match parse_program(src) {
            Ok(p) => Ok(Expr::Program(p)),
            Err(pe) => Err(further(fe, pe)),
        },
    }
}

fn further(a: LangError, b: LangError) -> LangError {
    match (&a, &b) {
        (LangError::Syntax { line: l1, col: c1, .. }, LangError::Syntax { line: l2, col: c2, .. }) => {
            if (l2, c2) > (l1, c1) {
                b
            } else {
                a
            }
        }
        _ => a,
    }
}

fn gate_ident(s: &str) -> Option<Program> {
    let parts: Vec<&str> = s.split('_').collect();
    let nums: Option<Vec<usize>> = parts[1..]
        .iter()
        .map(|p| if p.chars().all(|c| c.is_ascii_digit()) && !p.is_empty() { p.parse().ok() } else { None })
        .collect();
    let nums = nums?;
    match (parts[0], nums.as_slice()) {
        ("X", [i]) => Some(Program::Gate(GateKind::X, vec![*i])),
        ("Z", [i]) => Some(Program::Gate(GateKind::Z, vec![*i])),
        ("H", [i]) => Some(Program::Gate(GateKind::H, vec![*i])),
        ("CNOT", [i, j]) => Some(Program::Gate(GateKind::Cnot, vec![*i, *j])),
        ("flip", [i, j]) => Some(Program::Flip(*i, *j)),
        _ => None,
    }
}

/// Identifiers usable as propositional variables.
pub fn is_variable_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&s)
        && gate_ident(s).is_none()
}

type PResult<T> = Result<T, ()>;

fn bx<T>(t: T) -> Box<T> {
    Box::new(t)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    far: usize,
    expected: BTreeSet<String>,
}

impl Parser {
    fn new(src: &str) -> Result<Self, LangError> {
        Ok(Self {
            toks: lex(src)?,
            pos: 0,
            far: 0,
            expected: BTreeSet::new(),
        })
    }

    fn error(&self) -> LangError {
        let t = &self.toks[self.far.min(self.toks.len() - 1)];
        LangError::Syntax {
            line: t.line,
            col: t.col,
            expected: self.expected.iter().cloned().collect(),
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn fail<T>(&mut self, what: &str) -> PResult<T> {
        if self.pos > self.far {
            self.far = self.pos;
            self.expected.clear();
        }
        if self.pos == self.far {
            self.expected.insert(what.to_string());
        }
        Err(())
    }

    fn advance(&mut self) {
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            let what = match t {
                Tok::Eof => "end of input".to_string(),
                other => format!("`{}`", other.text()),
            };
            self.fail(&what)
        }
    }

    fn num(&mut self) -> PResult<usize> {
        if let Tok::Num(k) = *self.peek() {
            self.advance();
            Ok(k)
        } else {
            self.fail("index")
        }
    }

    fn bit(&mut self) -> PResult<u8> {
        match *self.peek() {
            Tok::Num(k @ (0 | 1)) => {
                self.advance();
                Ok(k as u8)
            }
            _ => self.fail("`0` or `1`"),
        }
    }

    /// `[n1,...,nk]` with exactly `k` numbers.
    fn bracket_nums(&mut self, k: usize) -> PResult<Vec<usize>> {
        self.expect(&Tok::LBrack)?;
        let mut out = Vec::with_capacity(k);
        for m in 0..k {
            if m > 0 {
                self.expect(&Tok::Comma)?;
            }
            out.push(self.num()?);
        }
        self.expect(&Tok::RBrack)?;
        Ok(out)
    }

    fn index_set(&mut self) -> PResult<Vec<usize>> {
        self.expect(&Tok::LBrace)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrace) {
            return Ok(out);
        }
        loop {
            out.push(self.num()?);
            if self.eat(&Tok::RBrace) {
                return Ok(out);
            }
            self.expect(&Tok::Comma)?;
        }
    }

    fn paren_formula(&mut self) -> PResult<Formula> {
        self.expect(&Tok::LParen)?;
        let f = self.formula()?;
        self.expect(&Tok::RParen)?;
        Ok(f)
    }

    fn paren_program(&mut self) -> PResult<Program> {
        self.expect(&Tok::LParen)?;
        let p = self.program()?;
        self.expect(&Tok::RParen)?;
        Ok(p)
    }

    fn paren_two(&mut self) -> PResult<(Formula, Formula)> {
        self.expect(&Tok::LParen)?;
        let a = self.formula()?;
        self.expect(&Tok::Comma)?;
        let b = self.formula()?;
        self.expect(&Tok::RParen)?;
        Ok((a, b))
    }

    fn paren_prog_formula(&mut self) -> PResult<(Program, Formula)> {
        self.expect(&Tok::LParen)?;
        let p = self.program()?;
        self.expect(&Tok::Comma)?;
        let f = self.formula()?;
        self.expect(&Tok::RParen)?;
        Ok((p, f))
    }

    fn formula(&mut self) -> PResult<Formula> {
        let a = self.or()?;
        if self.eat(&Tok::Arrow) {
            let b = self.formula()?;
            return Ok(Formula::Imp(Box::new(a), Box::new(b)));
        }
        if self.eat(&Tok::DArrow) {
            let b = self.formula()?;
            return Ok(Formula::Iff(Box::new(a), Box::new(b)));
        }
        Ok(a)
    }

    fn or(&mut self) -> PResult<Formula> {
        let mut a = self.and()?;
        while self.eat(&Tok::Bar) {
            let b = self.and()?;
            a = Formula::Or(Box::new(a), Box::new(b));
        }
        Ok(a)
    }

    fn and(&mut self) -> PResult<Formula> {
        let mut a = self.unary()?;
        while self.eat(&Tok::Amp) {
            let b = self.unary()?;
            a = Formula::And(Box::new(a), Box::new(b));
        }
        Ok(a)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.advance();
                Ok(Formula::Not(Box::new(self.unary()?)))
            }
            Tok::Tilde => {
                self.advance();
                Ok(Formula::Ortho(Box::new(self.unary()?)))
            }
            Tok::LBrack => {
                self.advance();
                let p = self.program()?;
                self.expect(&Tok::RBrack)?;
                Ok(Formula::BoxP(Box::new(p), Box::new(self.unary()?)))
            }
            Tok::Lt => {
                self.advance();
                let p = self.program()?;
                self.expect(&Tok::Gt)?;
                Ok(Formula::DiaP(Box::new(p), Box::new(self.unary()?)))
            }
            Tok::Ident(s) if s == "box" => {
                self.advance();
                Ok(Formula::BoxM(Box::new(self.unary()?)))
            }
            Tok::Ident(s) if s == "dia" => {
                self.advance();
                Ok(Formula::DiaM(Box::new(self.unary()?)))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        let tok = self.peek().clone();
        match tok {
            Tok::LParen => self.paren_formula(),
            Tok::Const(b, i) => {
                self.advance();
                Ok(Formula::Const(b, i))
            }
            Tok::Ident(s) => {
                if s == "T" && *self.peek_at(1) == Tok::LBrace {
                    self.advance();
                    return Ok(Formula::Top(self.index_set()?));
                }
                if !KEYWORDS.contains(&s.as_str()) {
                    if is_variable_name(&s) {
                        self.advance();
                        return Ok(Formula::Var(s));
                    }
                    return self.fail("formula");
                }
                self.advance();
                Ok(match s.as_str() {
                    "true" => Formula::True,
                    "false" => Formula::False,
                    "one" => Formula::One,
                    "plus" => Formula::PlusAll,
                    "bell" => {
                        self.expect(&Tok::LBrack)?;
                        let x = self.bit()?;
                        self.expect(&Tok::Comma)?;
                        let y = self.bit()?;
                        self.expect(&Tok::Comma)?;
                        let i = self.num()?;
                        self.expect(&Tok::Comma)?;
                        let j = self.num()?;
                        self.expect(&Tok::RBrack)?;
                        Formula::Bell { x, y, i, j }
                    }
                    "ghz" => {
                        let v = self.bracket_nums(3)?;
                        Formula::Ghz(v[0], v[1], v[2])
                    }
                    "gamma" => {
                        let v = self.bracket_nums(2)?;
                        Formula::Gamma(v[0], v[1])
                    }
                    "ent" => {
                        let v = self.bracket_nums(2)?;
                        Formula::Ent(v[0], v[1], bx(self.paren_program()?))
                    }
                    "cmp" => {
                        let set = self.index_set()?;
                        Formula::Cmp(set, bx(self.paren_formula()?))
                    }
                    "local" => {
                        let set = self.index_set()?;
                        Formula::Local(set, bx(self.paren_formula()?))
                    }
                    "localp" => {
                        let set = self.index_set()?;
                        Formula::LocalP(set, bx(self.paren_program()?))
                    }
                    "testable" => Formula::Testable(bx(self.paren_formula()?)),
                    "leq" | "eqf" | "perpf" | "sqcup" => {
                        let (a, b) = self.paren_two()?;
                        let (a, b) = (bx(a), bx(b));
                        match s.as_str() {
                            "leq" => Formula::Leq(a, b),
                            "eqf" => Formula::Eqf(a, b),
                            "perpf" => Formula::Perp(a, b),
                            _ => Formula::Sqcup(a, b),
                        }
                    }
                    "eqi" => {
                        let set = self.index_set()?;
                        let (a, b) = self.paren_two()?;
                        Formula::Eqi(set, bx(a), bx(b))
                    }
                    "img" | "post" => {
                        let (p, f) = self.paren_prog_formula()?;
                        if s == "img" {
                            Formula::Img(bx(p), bx(f))
                        } else {
                            Formula::Post(bx(p), bx(f))
                        }
                    }
                    "dom" => Formula::Dom(bx(self.paren_program()?)),
                    _ => {
                        self.pos -= 1;
                        return self.fail("formula");
                    }
                })
            }
            _ => self.fail("formula"),
        }
    }

    fn program(&mut self) -> PResult<Program> {
        let mut a = self.seq()?;
        while self.eat(&Tok::Plus) {
            let b = self.seq()?;
            a = Program::Union(Box::new(a), Box::new(b));
        }
        Ok(a)
    }

    fn seq(&mut self) -> PResult<Program> {
        let mut a = self.patom()?;
        while self.eat(&Tok::Semi) {
            let b = self.patom()?;
            a = Program::Seq(Box::new(a), Box::new(b));
        }
        Ok(a)
    }

    fn patom(&mut self) -> PResult<Program> {
        let save = self.pos;
        if let Ok(f) = self.unary() {
            if self.eat(&Tok::Query) {
                return Ok(Program::Test(Box::new(f)));
            }
            let _ = self.fail::<()>("`?`");
        }
        self.pos = save;
        let tok = self.peek().clone();
        match tok {
            Tok::LParen => self.paren_program(),
            Tok::Ident(s) => {
                if let Some(g) = gate_ident(&s) {
                    self.advance();
                    return Ok(g);
                }
                if s == "T" && *self.peek_at(1) == Tok::LBrace {
                    self.advance();
                    return Ok(Program::Top(self.index_set()?));
                }
                match s.as_str() {
                    "id" => {
                        self.advance();
                        Ok(Program::Id)
                    }
                    "adj" => {
                        self.advance();
                        Ok(Program::Adj(Box::new(self.paren_program()?)))
                    }
                    "set0" => {
                        self.advance();
                        Ok(Program::Set0(self.index_set()?))
                    }
                    "proj0" => {
                        self.advance();
                        Ok(Program::Proj0(self.index_set()?))
                    }
                    "unary1" => {
                        self.advance();
                        Ok(Program::Unary1(Box::new(self.paren_program()?)))
                    }
                    "mov" => {
                        self.advance();
                        let v = self.bracket_nums(2)?;
                        Ok(Program::Mov(v[0], v[1], Box::new(self.paren_program()?)))
                    }
                    _ => self.fail("program"),
                }
            }
            _ => self.fail("program"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qframe::Basis;

    #[test]
    fn implication_over_box() {
        let f = parse_formula("0_1 -> [X_1] 1_1").unwrap();
        assert_eq!(
            f,
            Formula::imp(
                Formula::Const(Basis::Zero, 1),
                Formula::boxp(Program::gate(GateKind::X, &[1]), Formula::Const(Basis::One, 1))
            )
        );
    }

    #[test]
    fn entangled_according_to_word() {
        let f = parse_formula("ent[1,2](Z_1 ; X_1)").unwrap();
        let word = Program::seq(Program::gate(GateKind::Z, &[1]), Program::gate(GateKind::X, &[1]));
        assert_eq!(f, Formula::Ent(1, 2, Box::new(word)));
    }

    #[test]
    fn three_step_program_in_box() {
        let f = parse_formula("[CNOT_1_2 ; H_1 ; (0_1 & 0_2)? ] p").unwrap();
        let test = Program::test(Formula::and(Formula::Const(Basis::Zero, 1), Formula::Const(Basis::Zero, 2)));
        let prog = Program::seq(
            Program::seq(Program::gate(GateKind::Cnot, &[1, 2]), Program::gate(GateKind::H, &[1])),
            test,
        );
        assert_eq!(f, Formula::boxp(prog, Formula::var("p")));
    }

    #[test]
    fn precedence() {
        let f = parse_formula("p | q & r -> s").unwrap();
        let expect = Formula::imp(
            Formula::or(Formula::var("p"), Formula::and(Formula::var("q"), Formula::var("r"))),
            Formula::var("s"),
        );
        assert_eq!(f, expect);
        let p = parse_program("X_1 ; Z_1 + H_2").unwrap();
        assert!(matches!(p, Program::Union(..)));
    }

    #[test]
    fn top_in_both_positions() {
        assert_eq!(parse_formula("T{1,2}").unwrap(), Formula::Top(vec![1, 2]));
        assert_eq!(parse_program("T{1}").unwrap(), Program::Top(vec![1]));
        assert_eq!(
            parse_program("T{1}?").unwrap(),
            Program::test(Formula::Top(vec![1]))
        );
    }

    #[test]
    fn syntax_error_reports_furthest_position() {
        let err = parse_formula("p &\n  & q").unwrap_err();
        match err {
            LangError::Syntax { line, col, expected } => {
                assert_eq!((line, col), (2, 3));
                assert!(expected.contains(&"formula".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("bell[2,0,1,2]").is_err());
        assert!(parse_formula("X_1").is_err());
    }

    #[test]
    fn expr_picks_kind() {
        assert!(matches!(parse_expr("H_1; X_2").unwrap(), Expr::Program(_)));
        assert!(matches!(parse_expr("p & q").unwrap(), Expr::Formula(_)));
    }
}
