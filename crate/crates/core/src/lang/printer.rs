use std::fmt;

use crate::qframe::GateKind;

use super::ast::{Formula, Program};

fn set(qs: &[usize]) -> String {
    let parts: Vec<String> = qs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) | Formula::Iff(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        _ => 4,
    }
}

fn plevel(p: &Program) -> u8 {
    match p {
        Program::Union(..) => 1,
        Program::Seq(..) => 2,
        _ => 3,
    }
}

fn pf(f: &Formula, min: u8) -> String {
    let s = formula_text(f);
    if level(f) < min {
        format!("({s})")
    } else {
        s
    }
}

fn pp(p: &Program, min: u8) -> String {
    let s = program_text(p);
    if plevel(p) < min {
        format!("({s})")
    } else {
        s
    }
}

fn formula_text(f: &Formula) -> String {
    use Formula as F;
    match f {
        F::Top(qs) => format!("T{}", set(qs)),
        F::Var(v) => v.clone(),
        F::Const(b, i) => format!("{}_{i}", b.symbol()),
        F::One => "one".into(),
        F::PlusAll => "plus".into(),
        F::True => "true".into(),
        F::False => "false".into(),
        F::Not(a) => format!("!{}", pf(a, 4)),
        F::Ortho(a) => format!("~{}", pf(a, 4)),
        F::And(a, b) => format!("{} & {}", pf(a, 3), pf(b, 4)),
        F::Or(a, b) => format!("{} | {}", pf(a, 2), pf(b, 3)),
        F::Imp(a, b) => format!("{} -> {}", pf(a, 2), pf(b, 1)),
        F::Iff(a, b) => format!("{} <-> {}", pf(a, 2), pf(b, 1)),
        F::BoxP(p, a) => format!("[{}]{}", pp(p, 1), pf(a, 4)),
        F::DiaP(p, a) => format!("<{}>{}", pp(p, 1), pf(a, 4)),
        F::BoxM(a) => format!("box {}", pf(a, 4)),
        F::DiaM(a) => format!("dia {}", pf(a, 4)),
        F::Bell { x, y, i, j } => format!("bell[{x},{y},{i},{j}]"),
        F::Ghz(i, j, k) => format!("ghz[{i},{j},{k}]"),
        F::Gamma(i, j) => format!("gamma[{i},{j}]"),
        F::Ent(i, j, p) => format!("ent[{i},{j}]({})", pp(p, 1)),
        F::Cmp(qs, a) => format!("cmp{}({})", set(qs), pf(a, 1)),
        F::Local(qs, a) => format!("local{}({})", set(qs), pf(a, 1)),
        F::LocalP(qs, p) => format!("localp{}({})", set(qs), pp(p, 1)),
        F::Testable(a) => format!("testable({})", pf(a, 1)),
        F::Leq(a, b) => format!("leq({}, {})", pf(a, 1), pf(b, 1)),
        F::Eqf(a, b) => format!("eqf({}, {})", pf(a, 1), pf(b, 1)),
        F::Eqi(qs, a, b) => format!("eqi{}({}, {})", set(qs), pf(a, 1), pf(b, 1)),
        F::Perp(a, b) => format!("perpf({}, {})", pf(a, 1), pf(b, 1)),
        F::Sqcup(a, b) => format!("sqcup({}, {})", pf(a, 1), pf(b, 1)),
        F::Img(p, a) => format!("img({}, {})", pp(p, 1), pf(a, 1)),
        F::Post(p, a) => format!("post({}, {})", pp(p, 1), pf(a, 1)),
        F::Dom(p) => format!("dom({})", pp(p, 1)),
    }
}

fn program_text(p: &Program) -> String {
    use Program as P;
    match p {
        P::Top(qs) => format!("T{}", set(qs)),
        P::Test(f) => {
            if f.is_unary_level() {
                format!("{}?", pf(f, 4))
            } else {
                format!("({})?", pf(f, 1))
            }
        }
        P::Gate(kind, ts) => {
            let name = match kind {
                GateKind::X => "X",
                GateKind::Z => "Z",
                GateKind::H => "H",
                GateKind::Cnot => "CNOT",
            };
            let idx: Vec<String> = ts.iter().map(ToString::to_string).collect();
            format!("{name}_{}", idx.join("_"))
        }
        P::Adj(a) => format!("adj({})", pp(a, 1)),
        P::Union(a, b) => format!("{} + {}", pp(a, 1), pp(b, 2)),
        P::Seq(a, b) => format!("{}; {}", pp(a, 2), pp(b, 3)),
        P::Id => "id".into(),
        P::Flip(i, j) => format!("flip_{i}_{j}"),
        P::Set0(qs) => format!("set0{}", set(qs)),
        P::Proj0(qs) => format!("proj0{}", set(qs)),
        P::Unary1(a) => format!("unary1({})", pp(a, 1)),
        P::Mov(i, j, a) => format!("mov[{i},{j}]({})", pp(a, 1)),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&formula_text(self))
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&program_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::{parse_formula, parse_program};

    #[test]
    fn prints_canonical_text() {
        let f = parse_formula("p&(q|r)->s").unwrap();
        assert_eq!(f.to_string(), "p & (q | r) -> s");
        let p = parse_program("(X_1+Z_1);(p&q)?").unwrap();
        assert_eq!(p.to_string(), "(X_1 + Z_1); (p & q)?");
        let f = parse_formula("[CNOT_1_2;H_1;(0_1&0_2)?]p").unwrap();
        assert_eq!(f.to_string(), "[CNOT_1_2; H_1; (0_1 & 0_2)?]p");
    }
}
