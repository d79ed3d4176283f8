//! Recursive-descent parser for algebra expressions such as
//! `tau(s1*s2*e(1,2,1)) + 3*y2*e(1,2,1)`.
//!
//! Besides the generator atoms it accepts the rendered normal form
//! (`-2 * psi[1,2] * y^[0,1,0] * e(1,1,2)`), so printed output parses back.

use std::fmt;

use klr_core::Int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(Int),
    /// `e(i1,...,id)`
    Idempotent(Vec<i32>),
    /// `y<r>`
    Dot(usize),
    /// `s<r>`
    Crossing(usize),
    /// `psi[r1,...,rk]`
    Crossings(Vec<usize>),
    /// `y^[m1,...,md]`
    Dots(Vec<u32>),
    Tau(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) => write!(f, "integer {s}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            column += s.len();
            Tok::Int(s)
        } else if c.is_ascii_alphabetic() {
            // Identifiers stop before digits so that `y12` lexes as `y` `12`.
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphabetic()) {
                s.push(d);
                chars.next();
            }
            column += s.len();
            Tok::Ident(s)
        } else if "+-*()[],^".contains(c) {
            chars.next();
            column += 1;
            Tok::Sym(c)
        } else {
            return Err(SyntaxError { line: l, column: col, message: format!("unexpected character '{c}'") });
        };
        out.push(Token { tok, line: l, column: col });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    /// Errors at end of input point at the last token read.
    fn error(&self, message: String) -> SyntaxError {
        let at = if self.toks[self.pos].tok == Tok::End { self.pos.saturating_sub(1) } else { self.pos };
        let t = &self.toks[at];
        SyntaxError { line: t.line, column: t.column, message }
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn int<T: std::str::FromStr>(&mut self) -> Result<T, SyntaxError> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let v = s.parse().map_err(|_| self.error(format!("integer {s} out of range")))?;
                self.next();
                Ok(v)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn list<T: std::str::FromStr>(&mut self, open: char, close: char) -> Result<Vec<T>, SyntaxError> {
        self.expect(open)?;
        let mut out = Vec::new();
        if *self.peek() == Tok::Sym(close) {
            self.next();
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            match *self.peek() {
                Tok::Sym(',') => {}
                Tok::Sym(c) if c == close => {
                    self.next();
                    return Ok(out);
                }
                _ => return Err(self.unexpected(&format!("',' or '{close}'"))),
            }
            self.next();
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Sym('*') {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(Expr::Int(self.int()?)),
            Tok::Sym('-') => {
                self.next();
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Tok::Sym('(') => {
                self.next();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.next();
                match name.as_str() {
                    "e" => Ok(Expr::Idempotent(self.list('(', ')')?)),
                    "s" => Ok(Expr::Crossing(self.int()?)),
                    "y" if *self.peek() == Tok::Sym('^') => {
                        self.next();
                        Ok(Expr::Dots(self.list('[', ']')?))
                    }
                    "y" => Ok(Expr::Dot(self.int()?)),
                    "psi" => Ok(Expr::Crossings(self.list('[', ']')?)),
                    "tau" => {
                        self.expect('(')?;
                        let e = self.expr()?;
                        self.expect(')')?;
                        Ok(Expr::Tau(Box::new(e)))
                    }
                    _ => {
                        self.pos -= 1;
                        Err(self.error(format!("unknown name '{name}'")))
                    }
                }
            }
            _ => Err(self.unexpected("an integer, a generator, 'tau' or '('")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn products_of_atoms() {
        let e = parse("s1*y2*e(1,1)").unwrap();
        let expected = Expr::Mul(b(Expr::Mul(b(Expr::Crossing(1)), b(Expr::Dot(2)))), b(Expr::Idempotent(vec![1, 1])));
        assert_eq!(e, expected);
        assert_eq!(parse(" s 1 * y 2\n* e( 1 , 1 ) ").unwrap(), expected);
    }

    #[test]
    fn tau_node() {
        let e = parse("tau(s1*s2*e(1,2,1))").unwrap();
        assert!(matches!(e, Expr::Tau(_)));
    }

    #[test]
    fn precedence_and_sign() {
        let e = parse("1 - 2*y1 + -3").unwrap();
        let expected = Expr::Add(
            b(Expr::Sub(b(Expr::Int(Int::from(1))), b(Expr::Mul(b(Expr::Int(Int::from(2))), b(Expr::Dot(1)))))),
            b(Expr::Neg(b(Expr::Int(Int::from(3))))),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn rendered_terms() {
        let e = parse("-2 * psi[1,2] * y^[0,1,0] * e(1,1,2)").unwrap();
        let expected = Expr::Mul(
            b(Expr::Mul(
                b(Expr::Mul(b(Expr::Neg(b(Expr::Int(Int::from(2))))), b(Expr::Crossings(vec![1, 2])))),
                b(Expr::Dots(vec![0, 1, 0])),
            )),
            b(Expr::Idempotent(vec![1, 1, 2])),
        );
        assert_eq!(e, expected);
        assert_eq!(parse("psi[]").unwrap(), Expr::Crossings(vec![]));
    }

    #[test]
    fn errors_have_positions() {
        let err = parse("y1*(").unwrap_err();
        assert_eq!((err.line, err.column), (1, 4));
        let err = parse("y1 +\n  q2").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(parse("e(1,").is_err());
        assert!(parse("y1 y2").is_err());
        assert!(parse("").is_err());
        assert!(parse("y1 # 2").is_err());
    }
}
