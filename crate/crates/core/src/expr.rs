//! A closed expression mini-language for endpoint functions.
//!
//! Grammar:
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := ["-"] atom
//! atom   := number | ident | "abs(" expr ")" | "ln(" expr ")"
//!         | "norm()" | "pow(" expr "," int ")" | "(" expr ")"
//! ident  := "y" | "y1" .. "yn"
//! ```
//! `y` is an alias for `y1`; `norm()` evaluates to the Euclidean norm of
//! the whole argument vector.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    /// Zero-based coordinate index.
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Abs(Box<Expr>),
    Ln(Box<Expr>),
    Pow(Box<Expr>, i32),
    Norm,
}

impl Expr {
    /// Evaluates at `y`. In-domain inputs of a validated piece always
    /// produce a finite value; otherwise NaN/inf can escape and is
    /// caught by load-time validation.
    pub fn eval(&self, y: &[f64]) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var(i) => y[*i],
            Expr::Add(a, b) => a.eval(y) + b.eval(y),
            Expr::Sub(a, b) => a.eval(y) - b.eval(y),
            Expr::Mul(a, b) => a.eval(y) * b.eval(y),
            Expr::Div(a, b) => a.eval(y) / b.eval(y),
            Expr::Neg(a) => -a.eval(y),
            Expr::Abs(a) => a.eval(y).abs(),
            Expr::Ln(a) => a.eval(y).ln(),
            Expr::Pow(a, k) => a.eval(y).powi(*k),
            Expr::Norm => y.iter().map(|v| v * v).sum::<f64>().sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

type Spanned = (Tok, usize, usize);

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize, col: usize) -> Self {
        Lexer { src, pos: 0, line, col }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self, n: usize) {
        self.pos += n;
        self.col += n;
    }

    fn tokens(mut self) -> Result<Vec<Spanned>> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let rest = &self.src[self.pos..];
            let c = rest.chars().next().unwrap();
            let (line, col) = (self.line, self.col);
            match c {
                ' ' | '\t' => self.bump(1),
                '+' => {
                    out.push((Tok::Plus, line, col));
                    self.bump(1);
                }
                '-' => {
                    out.push((Tok::Minus, line, col));
                    self.bump(1);
                }
                '*' => {
                    out.push((Tok::Star, line, col));
                    self.bump(1);
                }
                '/' => {
                    out.push((Tok::Slash, line, col));
                    self.bump(1);
                }
                '(' => {
                    out.push((Tok::LParen, line, col));
                    self.bump(1);
                }
                ')' => {
                    out.push((Tok::RParen, line, col));
                    self.bump(1);
                }
                ',' => {
                    out.push((Tok::Comma, line, col));
                    self.bump(1);
                }
                '0'..='9' | '.' => {
                    let n = rest
                        .find(|ch: char| !(ch.is_ascii_digit() || ch == '.'))
                        .unwrap_or(rest.len());
                    // allow a trailing exponent like 1e-3
                    let mut n = n;
                    let bytes = rest.as_bytes();
                    if n < rest.len() && (bytes[n] == b'e' || bytes[n] == b'E') {
                        let mut m = n + 1;
                        if m < rest.len() && (bytes[m] == b'+' || bytes[m] == b'-') {
                            m += 1;
                        }
                        let digits = rest[m..]
                            .find(|ch: char| !ch.is_ascii_digit())
                            .unwrap_or(rest.len() - m);
                        if digits > 0 {
                            n = m + digits;
                        }
                    }
                    let text = &rest[..n];
                    let v: f64 = text
                        .parse()
                        .map_err(|_| self.err(format!("invalid number '{text}'")))?;
                    out.push((Tok::Num(v), line, col));
                    self.bump(n);
                }
                c if c.is_ascii_alphabetic() => {
                    let n = rest
                        .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                        .unwrap_or(rest.len());
                    out.push((Tok::Ident(rest[..n].to_string()), line, col));
                    self.bump(n);
                }
                _ => return Err(self.err(format!("unexpected character '{c}'"))),
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    dim: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    fn err_at(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((self.line, self.end_col));
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err_at(format!("expected {what}")))
            }
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.next();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            return Ok(Expr::Neg(Box::new(self.atom()?)));
        }
        self.atom()
    }

    fn int_literal(&mut self) -> Result<i32> {
        let neg = if let Some(Tok::Minus) = self.peek() {
            self.next();
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Num(v)) if v.fract() == 0.0 => {
                let k = v as i32;
                Ok(if neg { -k } else { k })
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err_at("expected integer exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(Expr::Const(v)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "abs" => {
                    self.expect(Tok::LParen, "'(' after abs")?;
                    let e = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Abs(Box::new(e)))
                }
                "ln" => {
                    self.expect(Tok::LParen, "'(' after ln")?;
                    let e = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Ln(Box::new(e)))
                }
                "norm" => {
                    self.expect(Tok::LParen, "'(' after norm")?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Norm)
                }
                "pow" => {
                    self.expect(Tok::LParen, "'(' after pow")?;
                    let base = self.expr()?;
                    self.expect(Tok::Comma, "','")?;
                    let k = self.int_literal()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                "y" => Ok(Expr::Var(0)),
                _ => {
                    if let Some(idx) = name.strip_prefix('y').and_then(|s| s.parse::<usize>().ok())
                    {
                        if idx >= 1 && idx <= self.dim {
                            return Ok(Expr::Var(idx - 1));
                        }
                        self.pos -= 1;
                        return Err(self.err_at(format!(
                            "variable '{name}' out of range for dimension {}",
                            self.dim
                        )));
                    }
                    self.pos -= 1;
                    Err(self.err_at(format!("unknown identifier '{name}'")))
                }
            },
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err_at("expected expression"))
            }
        }
    }
}

/// Parses one expression. `line` and `col` locate `src` inside a larger
/// document so that errors carry document positions.
pub fn parse_expr_at(src: &str, dim: usize, line: usize, col: usize) -> Result<Expr> {
    let toks = Lexer::new(src, line, col).tokens()?;
    let end_col = col + src.len();
    let mut p = Parser {
        toks,
        pos: 0,
        dim,
        line,
        end_col,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err_at("trailing input after expression"));
    }
    Ok(e)
}

/// Parses a standalone expression over `dim` variables.
pub fn parse_expr(src: &str, dim: usize) -> Result<Expr> {
    parse_expr_at(src, dim, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_evaluates() {
        let e = parse_expr("pow(y,2) - 0.5*y + 1", 1).unwrap();
        assert_eq!(e.eval(&[2.0]), 4.0 - 1.0 + 1.0);
        let e = parse_expr("abs(y1) + ln(y2)", 2).unwrap();
        assert_eq!(e.eval(&[-3.0, 1.0]), 3.0);
        let e = parse_expr("norm()", 2).unwrap();
        assert_eq!(e.eval(&[3.0, 4.0]), 5.0);
        let e = parse_expr("-y/2", 1).unwrap();
        assert_eq!(e.eval(&[4.0]), -2.0);
    }

    #[test]
    fn precedence() {
        let e = parse_expr("1 + 2*3", 1).unwrap();
        assert_eq!(e.eval(&[0.0]), 7.0);
        let e = parse_expr("(1 + 2)*3", 1).unwrap();
        assert_eq!(e.eval(&[0.0]), 9.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_expr("y3", 2).is_err());
        assert!(parse_expr("sin(y)", 1).is_err());
        assert!(parse_expr("1 +", 1).is_err());
        assert!(parse_expr("pow(y, 0.5)", 1).is_err());
        assert!(parse_expr("y 1", 1).is_err());
    }

    #[test]
    fn error_positions() {
        match parse_expr("1 + $", 1) {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(col, 5);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
