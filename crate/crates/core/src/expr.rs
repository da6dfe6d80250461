//! A small recursive-descent parser for arithmetic expressions.
//!
//! The grammar is shared by field elements (`1/2*z^3 - z + 2`) and Laurent
//! polynomials (`(z^2 - 1)*t^3 + t^-1`). What a symbol means is decided by an
//! [`ExprContext`].

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Semantic actions used by [`parse_expr`].
pub trait ExprContext {
    type Value: Clone;

    fn number(&self, n: BigInt) -> Result<Self::Value>;
    fn symbol(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value>;
    fn pow(&self, a: Self::Value, e: i64) -> Result<Self::Value>;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(s.parse().expect("digits")));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::parse(
                    line,
                    format!("unexpected character '{other}'"),
                ))
            }
        }
    }
    Ok(out)
}

struct Parser<'a, C: ExprContext> {
    ctx: &'a C,
    toks: Vec<Tok>,
    pos: usize,
    line: usize,
}

impl<C: ExprContext> Parser<'_, C> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, msg)
    }

    fn expr(&mut self) -> Result<C::Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.ctx.add(acc, rhs)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.ctx.sub(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<C::Value> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.ctx.mul(acc, rhs)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.ctx.div(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<C::Value> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let v = self.unary()?;
                self.ctx.neg(v)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<C::Value> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let mut negative = false;
        loop {
            match self.peek() {
                Some(Tok::Minus) => {
                    negative = !negative;
                    self.pos += 1;
                }
                Some(Tok::Plus) => self.pos += 1,
                _ => break,
            }
        }
        let e = match self.next() {
            Some(Tok::Num(n)) => i64::try_from(n).map_err(|_| self.err("exponent too large"))?,
            _ => return Err(self.err("expected integer exponent after '^'")),
        };
        self.ctx.pow(base, if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<C::Value> {
        match self.next() {
            Some(Tok::Num(n)) => self.ctx.number(n),
            Some(Tok::Ident(name)) => self.ctx.symbol(&name),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(self.err("expected ')'")),
                }
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses `text` with the semantics supplied by `ctx`; `line` is used in errors.
pub fn parse_expr<C: ExprContext>(ctx: &C, text: &str, line: usize) -> Result<C::Value> {
    let toks = tokenize(text, line)?;
    if toks.is_empty() {
        return Err(Error::parse(line, "empty expression"));
    }
    let mut p = Parser {
        ctx,
        toks,
        pos: 0,
        line,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(line, "trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    /// Evaluates expressions over Q with `x` fixed to 3.
    struct Rat;

    impl ExprContext for Rat {
        type Value = BigRational;
        fn number(&self, n: BigInt) -> Result<BigRational> {
            Ok(BigRational::from_integer(n))
        }
        fn symbol(&self, name: &str) -> Result<BigRational> {
            match name {
                "x" => Ok(BigRational::from_integer(3.into())),
                _ => Err(Error::parse(0, "unknown")),
            }
        }
        fn add(&self, a: BigRational, b: BigRational) -> Result<BigRational> {
            Ok(a + b)
        }
        fn sub(&self, a: BigRational, b: BigRational) -> Result<BigRational> {
            Ok(a - b)
        }
        fn mul(&self, a: BigRational, b: BigRational) -> Result<BigRational> {
            Ok(a * b)
        }
        fn div(&self, a: BigRational, b: BigRational) -> Result<BigRational> {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(a / b)
        }
        fn neg(&self, a: BigRational) -> Result<BigRational> {
            Ok(-a)
        }
        fn pow(&self, a: BigRational, e: i64) -> Result<BigRational> {
            let mut r = BigRational::one();
            for _ in 0..e.unsigned_abs() {
                r *= a.clone();
            }
            if e < 0 {
                r = r.recip();
            }
            Ok(r)
        }
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn precedence_and_signs() {
        assert_eq!(parse_expr(&Rat, "1/2*x^3 - x + 2", 1).unwrap(), q(25, 2));
        assert_eq!(parse_expr(&Rat, "-x^2", 1).unwrap(), q(-9, 1));
        assert_eq!(parse_expr(&Rat, "x^-1", 1).unwrap(), q(1, 3));
        assert_eq!(parse_expr(&Rat, "-(x - 1)*2", 1).unwrap(), q(-4, 1));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr(&Rat, "", 4).is_err());
        assert!(parse_expr(&Rat, "x +", 4).is_err());
        assert!(parse_expr(&Rat, "(x", 4).is_err());
        assert!(matches!(
            parse_expr(&Rat, "x $ 2", 7),
            Err(Error::Parse { line: 7, .. })
        ));
        assert!(parse_expr(&Rat, "x x", 1).is_err());
    }
}
