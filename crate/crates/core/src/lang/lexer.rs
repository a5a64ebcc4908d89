use crate::qframe::Basis;

use super::LangError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(usize),
    /// An indexed constant such as `0_1` or `+_3`.
    Const(Basis, usize),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Comma,
    Semi,
    Plus,
    Query,
    Bang,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Eof,
}

impl Tok {
    pub fn text(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Plus => "+",
            Tok::Query => "?",
            Tok::Bang => "!",
            Tok::Tilde => "~",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Arrow => "->",
            Tok::DArrow => "<->",
            _ => "",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn peek(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn number(&mut self) -> Option<usize> {
        let mut s = String::new();
        while let Some(c) = self.peek(0).filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s.parse().ok()
    }
}

pub fn lex(src: &str) -> Result<Vec<Spanned>, LangError> {
    let mut cur = Cursor {
        chars: src.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        while cur.peek(0).is_some_and(char::is_whitespace) {
            cur.bump();
        }
        let (line, col) = (cur.line, cur.col);
        let Some(c) = cur.peek(0) else {
            out.push(Spanned { tok: Tok::Eof, line, col });
            return Ok(out);
        };
        let next = cur.peek(1);
        let after = cur.peek(2);
        let const_start = next == Some('_') && after.is_some_and(|d| d.is_ascii_digit());
        let tok = match c {
            '0' | '1' | '+' | '-' if const_start => {
                cur.bump();
                cur.bump();
                let idx = cur.number().ok_or_else(|| bad(line, col, "index"))?;
                Tok::Const(Basis::from_symbol(c).expect("constant symbol"), idx)
            }
            d if d.is_ascii_digit() => Tok::Num(cur.number().ok_or_else(|| bad(line, col, "number"))?),
            a if a.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(ch) = cur.peek(0).filter(|ch| ch.is_ascii_alphanumeric() || *ch == '_') {
                    s.push(ch);
                    cur.bump();
                }
                Tok::Ident(s)
            }
            '-' if next == Some('>') => {
                cur.bump();
                cur.bump();
                Tok::Arrow
            }
            '<' if next == Some('-') && after == Some('>') => {
                cur.bump();
                cur.bump();
                cur.bump();
                Tok::DArrow
            }
            _ => {
                let t = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBrack,
                    ']' => Tok::RBrack,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '<' => Tok::Lt,
                    '>' => Tok::Gt,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '+' => Tok::Plus,
                    '?' => Tok::Query,
                    '!' => Tok::Bang,
                    '~' => Tok::Tilde,
                    '&' => Tok::Amp,
                    '|' => Tok::Bar,
                    _ => return Err(bad(line, col, "a token")),
                };
                cur.bump();
                t
            }
        };
        out.push(Spanned { tok, line, col });
    }
}

fn bad(line: usize, col: usize, what: &str) -> LangError {
    LangError::Syntax {
        line,
        col,
        expected: vec![what.to_string()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn constants_and_operators() {
        assert_eq!(
            toks("0_1 -> +_2 <-> -_3"),
            vec![
                Tok::Const(Basis::Zero, 1),
                Tok::Arrow,
                Tok::Const(Basis::Plus, 2),
                Tok::DArrow,
                Tok::Const(Basis::Minus, 3),
                Tok::Eof
            ]
        );
        assert_eq!(
            toks("X_1+CNOT_1_2"),
            vec![Tok::Ident("X_1".into()), Tok::Plus, Tok::Ident("CNOT_1_2".into()), Tok::Eof]
        );
    }

    #[test]
    fn positions_are_one_based() {
        let t = lex("p &\n  q").unwrap();
        assert_eq!((t[2].line, t[2].col), (2, 3));
        assert!(matches!(lex("p $ q"), Err(LangError::Syntax { line: 1, col: 3, .. })));
    }
}
