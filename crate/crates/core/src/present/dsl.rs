//! The line-oriented presentation language.
//!
//! ```text
//! name: U14
//! gens: a b c d | p1 p2        # group letters | module letters
//! param lambda = (1/2)*(1+x)
//! rel: d*b -> c*d              # oriented; the left side must be the larger word
//! rel: p1*p2 + p2*p1 = lambda*(1 - b*c)   # oriented automatically
//! delta: p1 = p1 @ 1 + b @ p1
//! eps: p1 = 0
//! antipode: a = a
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::expr::{parse_expr_at, Expr, Target};
use crate::scalar::Scalar;

use super::{interreduce, Alphabet, Poly, Presentation, Rewriter, TPoly, DEFAULT_STEP_CAP};

#[derive(Clone, Debug)]
enum Val {
    P(Poly),
    T(TPoly),
}

struct PolyTarget<'a> {
    alphabet: &'a Alphabet,
    params: &'a BTreeMap<String, Scalar>,
}

impl Target for PolyTarget<'_> {
    type Value = Val;

    fn scalar(&self, s: Scalar) -> Val {
        Val::P(Poly::scalar(s))
    }

    fn ident(&self, name: &str) -> Result<Val> {
        if let Some(l) = self.alphabet.letter(name) {
            return Ok(Val::P(Poly::word(vec![l])));
        }
        self.params.get(name).map(|s| Val::P(Poly::scalar(s.clone()))).ok_or_else(|| Error::UnknownName(name.into()))
    }

    fn add(&self, a: Val, b: Val) -> Result<Val> {
        match (a, b) {
            (Val::P(mut x), Val::P(y)) => {
                x.add_scaled(&y, &Scalar::one());
                Ok(Val::P(x))
            }
            (Val::T(mut x), Val::T(y)) => {
                x.add_scaled(&y, &Scalar::one());
                Ok(Val::T(x))
            }
            _ => Err(Error::Invalid("cannot add an element and a tensor".into())),
        }
    }

    fn mul(&self, a: Val, b: Val) -> Result<Val> {
        match (a, b) {
            (Val::P(x), Val::P(y)) => Ok(Val::P(x.mul(&y))),
            (Val::P(x), Val::T(t)) | (Val::T(t), Val::P(x)) => match x.as_scalar() {
                Some(s) => Ok(Val::T(t.scaled(&s))),
                None => Err(Error::Invalid("a tensor can only be multiplied by a scalar".into())),
            },
            (Val::T(_), Val::T(_)) => Err(Error::Invalid("products of tensors are not supported".into())),
        }
    }

    fn scale(&self, a: Val, s: &Scalar) -> Val {
        match a {
            Val::P(p) => Val::P(p.scaled(s)),
            Val::T(t) => Val::T(t.scaled(s)),
        }
    }

    fn as_scalar(&self, a: &Val) -> Option<Scalar> {
        match a {
            Val::P(p) => p.as_scalar(),
            Val::T(_) => None,
        }
    }

    fn tensor(&self, a: Val, b: Val) -> Result<Val> {
        match (a, b) {
            (Val::P(x), Val::P(y)) => {
                let mut t = TPoly::zero();
                t.add_product(&x, &y, &Scalar::one());
                Ok(Val::T(t))
            }
            _ => Err(Error::Invalid("nested tensor".into())),
        }
    }
}

fn located(e: Error, line: usize, col: usize) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Parse { line, col, msg: other.to_string() },
    }
}

fn eval_at(alphabet: &Alphabet, params: &BTreeMap<String, Scalar>, src: &str, line: usize, col: usize) -> Result<Val> {
    let e: Expr = parse_expr_at(src, line, col)?;
    e.eval(&PolyTarget { alphabet, params }).map_err(|err| located(err, line, col))
}

fn element_at(alphabet: &Alphabet, params: &BTreeMap<String, Scalar>, src: &str, line: usize, col: usize) -> Result<Poly> {
    match eval_at(alphabet, params, src, line, col)? {
        Val::P(p) => Ok(p),
        Val::T(_) => Err(Error::Parse { line, col, msg: "expected an element, found a tensor".into() }),
    }
}

fn tensor_at(alphabet: &Alphabet, params: &BTreeMap<String, Scalar>, src: &str, line: usize, col: usize) -> Result<TPoly> {
    match eval_at(alphabet, params, src, line, col)? {
        Val::T(t) => Ok(t),
        Val::P(p) if p.is_zero() => Ok(TPoly::zero()),
        Val::P(_) => Err(Error::Parse { line, col, msg: "expected a tensor (use `@`)".into() }),
    }
}

pub(super) fn eval_element(p: &Presentation, src: &str) -> Result<Poly> {
    element_at(&p.alphabet, &p.params, src, 1, 1)
}

pub(super) fn eval_tensor(p: &Presentation, src: &str) -> Result<TPoly> {
    tensor_at(&p.alphabet, &p.params, src, 1, 1)
}

/// Splits `lhs <op> rhs` at the first top-level occurrence of one of the
/// operators; returns the operator and the two sides with their columns.
fn split_at_op<'a>(s: &'a str, col: usize, ops: &[&'static str]) -> Option<(&'static str, (&'a str, usize), (&'a str, usize))> {
    let mut best: Option<(usize, &'static str)> = None;
    for op in ops {
        if let Some(i) = s.find(op) {
            if best.is_none_or(|(j, _)| i < j) {
                best = Some((i, op));
            }
        }
    }
    let (i, op) = best?;
    let lhs = &s[..i];
    let rhs = &s[i + op.len()..];
    Some((op, (lhs, col), (rhs, col + s[..i + op.len()].chars().count())))
}

pub fn parse_presentation(src: &str) -> Result<Presentation> {
    let mut name = String::from("presentation");
    let mut alphabet: Option<Alphabet> = None;
    let mut params: BTreeMap<String, Scalar> = BTreeMap::new();
    let mut relations: Vec<(Poly, String)> = Vec::new();
    let mut deltas: Vec<(String, TPoly)> = Vec::new();
    let mut epss: Vec<(String, Scalar)> = Vec::new();
    let mut antipodes: Vec<(String, Poly)> = Vec::new();

    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("");
        if text.trim().is_empty() {
            continue;
        }
        let indent = text.len() - text.trim_start().len();
        let body = text.trim_start();
        let col0 = indent + 1;
        let err = |col: usize, msg: String| Error::Parse { line, col, msg };

        if let Some(rest) = body.strip_prefix("param ") {
            let rest_col = col0 + "param ".len();
            let Some((_, (lhs, _), (rhs, rcol))) = split_at_op(rest, rest_col, &["="]) else {
                return Err(err(rest_col, "expected `param name = value`".into()));
            };
            let pname = lhs.trim();
            if pname.is_empty() || !pname.chars().all(|c| c.is_alphanumeric() || c == '_') || pname == "x" {
                return Err(err(rest_col, format!("invalid parameter name `{pname}`")));
            }
            let value = crate::expr::parse_expr_at(rhs, line, rcol)?
                .eval(&crate::expr::ScalarTarget { params: &params })
                .map_err(|e| located(e, line, rcol))?;
            params.insert(pname.to_string(), value);
            continue;
        }

        let Some(colon) = body.find(':') else {
            return Err(err(col0, "expected a directive (`gens:`, `rel:`, `delta:`, `eps:`, `antipode:`, `name:`, `param`)".into()));
        };
        let directive = body[..colon].trim();
        let rest = &body[colon + 1..];
        let rest_col = col0 + body[..colon + 1].chars().count();

        match directive {
            "name" => name = rest.trim().to_string(),
            "gens" => {
                if alphabet.is_some() {
                    return Err(err(col0, "generators declared twice".into()));
                }
                let (g, m) = match rest.split_once('|') {
                    Some((g, m)) => (g, m),
                    None => (rest, ""),
                };
                let g: Vec<&str> = g.split_whitespace().collect();
                let m: Vec<&str> = m.split_whitespace().collect();
                for n in g.iter().chain(m.iter()) {
                    let ok = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                        && n.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
                    if !ok {
                        return Err(err(rest_col, format!("invalid generator name `{n}`")));
                    }
                }
                alphabet = Some(Alphabet::new(&g, &m).map_err(|e| located(e, line, rest_col))?);
            }
            "rel" | "delta" | "eps" | "antipode" => {
                let Some(alpha) = alphabet.as_ref() else {
                    return Err(err(col0, "`gens:` must come first".into()));
                };
                if directive == "rel" {
                    let Some((op, (lhs, lcol), (rhs, rcol))) = split_at_op(rest, rest_col, &["->", "="]) else {
                        return Err(err(rest_col, "expected `lhs -> rhs` or `lhs = rhs`".into()));
                    };
                    let l = element_at(alpha, &params, lhs, line, lcol)?;
                    let r = element_at(alpha, &params, rhs, line, rcol)?;
                    if op == "->" {
                        check_orientation(alpha, &l, &r, rest.trim())?;
                    }
                    let mut f = l;
                    f.add_scaled(&r, &Scalar::from_int(-1));
                    relations.push((f, format!("line {line}")));
                } else {
                    let Some((_, (lhs, lcol), (rhs, rcol))) = split_at_op(rest, rest_col, &["="]) else {
                        return Err(err(rest_col, format!("expected `{directive}: generator = value`")));
                    };
                    let g = lhs.trim().to_string();
                    if alpha.letter(&g).is_none() {
                        return Err(err(lcol, format!("unknown generator `{g}`")));
                    }
                    match directive {
                        "delta" => deltas.push((g, tensor_at(alpha, &params, rhs, line, rcol)?)),
                        "antipode" => antipodes.push((g, element_at(alpha, &params, rhs, line, rcol)?)),
                        _ => {
                            let v = element_at(alpha, &params, rhs, line, rcol)?;
                            let s = v.as_scalar().ok_or_else(|| err(rcol, "counit values must be scalars".into()))?;
                            epss.push((g, s));
                        }
                    }
                }
            }
            other => return Err(err(col0, format!("unknown directive `{other}`"))),
        }
    }

    let alphabet = alphabet.ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "missing `gens:` line".into() })?;
    let rules = interreduce(&alphabet, Vec::new(), relations, DEFAULT_STEP_CAP)?;
    let mut p = Presentation {
        name,
        alphabet,
        params,
        rw: Rewriter::new(rules, DEFAULT_STEP_CAP),
        delta: BTreeMap::new(),
        eps: BTreeMap::new(),
        antipode: BTreeMap::new(),
    };
    for (g, d) in deltas {
        p.set_delta(&g, d)?;
    }
    for (g, e) in epss {
        p.set_eps(&g, e)?;
    }
    for (g, s) in antipodes {
        p.set_antipode(&g, s)?;
    }
    Ok(p)
}

fn check_orientation(alphabet: &Alphabet, lhs: &Poly, rhs: &Poly, text: &str) -> Result<()> {
    let word = match lhs.terms().len() {
        1 => lhs.terms().keys().next().expect("one term").clone(),
        _ => return Err(Error::Orientation(text.into(), "the left side must be a single word".into())),
    };
    for w in rhs.terms().keys() {
        if alphabet.cmp_words(w, &word) != std::cmp::Ordering::Less {
            return Err(Error::Orientation(
                text.into(),
                format!("`{}` is not smaller than `{}`", alphabet.format_word(w), alphabet.format_word(&word)),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_carry_positions() {
        match parse_presentation("gens: a | p\nrel: p*p -> p $ a\n") {
            Err(Error::Parse { line: 2, col, .. }) => assert_eq!(col, 15),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_presentation("rel: a -> 1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_presentation("gens: a\nfoo: 1"), Err(Error::Parse { line: 2, col: 1, .. })));
        assert!(matches!(parse_presentation("gens: a\nrel: a*q -> 1"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn orientation_is_enforced() {
        let r = parse_presentation("gens: a | p1\nrel: p1 -> p1*p1\n");
        assert!(matches!(r, Err(Error::Orientation(_, _))));
        let r = parse_presentation("gens: a b | p\nrel: a*b -> b*a\n");
        assert!(matches!(r, Err(Error::Orientation(_, _))));
        assert!(parse_presentation("gens: a b | p\nrel: b*a -> a*b\n").is_ok());
    }

    #[test]
    fn one_generator_free_algebra() {
        let p = parse_presentation("gens: | t\n").unwrap();
        assert_eq!(p.generators(), ["t"]);
        assert!(p.rules().is_empty());
    }

    #[test]
    fn params_and_comments() {
        let p = parse_presentation("gens: a | p  # letters\nparam l = (1/2)*(1+x)\nparam m = 2*l\nrel: p*p = m\n").unwrap();
        assert_eq!(p.params()["m"].to_string(), "1+x");
        let nf = p.normal_form(&p.element("p*p*p").unwrap()).unwrap();
        assert_eq!(p.format(&nf), "(1+x)*p");
    }
}
