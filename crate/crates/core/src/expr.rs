//! Infix expressions over scalars, named symbols and `@` (tensor), shared by
//! the presentation DSL and the catalog tables. `@` binds tighter than `+`
//! and looser than `*`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Scalar),
    Ident(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Tensor(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(chars[start..i].iter().collect()), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/()^@".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(Error::Parse { line, col, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, col: self.col(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // sum := tprod (('+' | '-') tprod)*
    fn sum(&mut self) -> Result<Expr> {
        let mut e = self.tprod()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.tprod()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.tprod()?));
            } else {
                return Ok(e);
            }
        }
    }

    // tprod := product ('@' product)?
    fn tprod(&mut self) -> Result<Expr> {
        let lhs = self.product()?;
        if self.eat('@') {
            let rhs = self.product()?;
            return Ok(Expr::Tensor(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e = n.parse::<u32>().or_else(|_| self.err("exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return self.err("expected integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let s: Scalar = n.parse().or_else(|_| self.err("bad integer"))?;
                Ok(Expr::Num(s))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Ident(name))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses `src`; `line`/`col0` locate it in a larger document for errors.
pub fn parse_expr_at(src: &str, line: usize, col0: usize) -> Result<Expr> {
    let toks = tokenize(src, line, col0)?;
    let end_col = col0 + src.chars().count();
    let mut p = Parser { toks, pos: 0, line, end_col };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    parse_expr_at(src, 1, 1)
}

/// Something expressions can be evaluated into.
pub trait Target {
    type Value: Clone;
    fn scalar(&self, s: Scalar) -> Self::Value;
    fn ident(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn scale(&self, a: Self::Value, s: &Scalar) -> Self::Value;
    fn as_scalar(&self, a: &Self::Value) -> Option<Scalar>;
    fn tensor(&self, _a: Self::Value, _b: Self::Value) -> Result<Self::Value> {
        Err(Error::Invalid("tensor product not allowed here".into()))
    }
}

impl Expr {
    pub fn eval<T: Target>(&self, t: &T) -> Result<T::Value> {
        Ok(match self {
            Expr::Num(s) => t.scalar(s.clone()),
            Expr::Ident(n) if n == "x" => t.scalar(Scalar::xi()),
            Expr::Ident(n) => t.ident(n)?,
            Expr::Add(a, b) => t.add(a.eval(t)?, b.eval(t)?)?,
            Expr::Sub(a, b) => {
                let nb = t.scale(b.eval(t)?, &Scalar::from_int(-1));
                t.add(a.eval(t)?, nb)?
            }
            Expr::Mul(a, b) => t.mul(a.eval(t)?, b.eval(t)?)?,
            Expr::Div(a, b) => {
                let d = b.eval(t)?;
                let s = t
                    .as_scalar(&d)
                    .ok_or_else(|| Error::Invalid("can only divide by a scalar".into()))?;
                t.scale(a.eval(t)?, &s.inv()?)
            }
            Expr::Neg(a) => t.scale(a.eval(t)?, &Scalar::from_int(-1)),
            Expr::Pow(a, e) => {
                let base = a.eval(t)?;
                let mut acc = t.scalar(Scalar::one());
                for _ in 0..*e {
                    acc = t.mul(acc, base.clone())?;
                }
                acc
            }
            Expr::Tensor(a, b) => t.tensor(a.eval(t)?, b.eval(t)?)?,
        })
    }

    /// Identifiers occurring in the expression (excluding `x`).
    pub fn idents(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Ident(n) => {
                if n != "x" && !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.idents(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Tensor(a, b) => {
                a.idents(out);
                b.idents(out);
            }
        }
    }
}

/// Evaluates to a plain scalar, resolving identifiers from a parameter table.
pub struct ScalarTarget<'a> {
    pub params: &'a BTreeMap<String, Scalar>,
}

impl Target for ScalarTarget<'_> {
    type Value = Scalar;
    fn scalar(&self, s: Scalar) -> Scalar {
        s
    }
    fn ident(&self, name: &str) -> Result<Scalar> {
        self.params.get(name).cloned().ok_or_else(|| Error::UnknownName(name.into()))
    }
    fn add(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(a + b)
    }
    fn mul(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(a * b)
    }
    fn scale(&self, a: Scalar, s: &Scalar) -> Scalar {
        &a * s
    }
    fn as_scalar(&self, a: &Scalar) -> Option<Scalar> {
        Some(a.clone())
    }
}

pub fn eval_scalar(src: &str, params: &BTreeMap<String, Scalar>) -> Result<Scalar> {
    parse_expr(src)?.eval(&ScalarTarget { params })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_expressions() {
        let p = BTreeMap::from([("alpha".to_string(), Scalar::from_int(3))]);
        assert_eq!(eval_scalar("(1/2)*(1+x)", &p).unwrap().to_string(), "1/2+1/2*x");
        assert_eq!(eval_scalar("-alpha^2 + 1", &p).unwrap(), Scalar::from_int(-8));
        assert_eq!(eval_scalar("x*x", &p).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn errors_have_columns() {
        match parse_expr_at("a * (b + ", 4, 10) {
            Err(Error::Parse { line: 4, col, .. }) => assert_eq!(col, 19),
            other => panic!("{other:?}"),
        }
        assert!(matches!(eval_scalar("beta", &BTreeMap::new()), Err(Error::UnknownName(_))));
        assert!(matches!(parse_expr("a $ b"), Err(Error::Parse { col: 3, .. })));
    }

    #[test]
    fn tensor_binds_between_sum_and_product() {
        let e = parse_expr("a*b @ c + d @ 1").unwrap();
        match e {
            Expr::Add(l, r) => {
                assert!(matches!(*l, Expr::Tensor(_, _)));
                assert!(matches!(*r, Expr::Tensor(_, _)));
            }
            other => panic!("{other:?}"),
        }
    }
}
