//! The liftings `U_i` of the Nichols algebras `B(Omega_i)`, as presentations
//! over the group letters `a b c d` of `H`.

use crate::error::{Error, Result};
use crate::nichols::{graded_dims_of, Caps};
use crate::present::{parse_presentation, Param, ParamSet, Presentation, Shape};
use crate::scalar::Scalar;

use super::modules;

pub const H_DSL: &str = "\
name: H
gens: a b c d |
rel: a*a -> 1
rel: b*b -> 1
rel: c*c -> 1
rel: b*a -> a*b
rel: c*a -> a*c
rel: c*b -> b*c
rel: d*d -> a
rel: d*a -> a*d
rel: d*b -> c*d
rel: d*c -> b*d
delta: a = a @ a
delta: b = b @ b
delta: c = c @ c
delta: d = (1/2)*(1 + b*c)*d @ d + (1/2)*(1 - b*c)*d @ a*d
eps: a = 1
eps: b = 1
eps: c = 1
eps: d = 1
antipode: a = a
antipode: b = b
antipode: c = c
antipode: d = (1/2)*(a*(1 + b*c) + (1 - b*c))*d
";

/// Families with a non-trivial lifting, in catalog order.
pub const FAMILIES: [usize; 15] = [1, 2, 9, 14, 15, 16, 20, 23, 29, 38, 39, 41, 42, 44, 45];

/// Families whose only liftings are `B(Omega_i) # H`.
pub const TRIVIAL_FAMILIES: [usize; 6] = [4, 5, 19, 21, 22, 30];

const ROUNDS: usize = 8;
const MAX_RULES: usize = 4000;

pub fn h_presentation() -> Presentation {
    parse_presentation(H_DSL).expect("H presentation is well formed")
}

/// Number of multiplicities `U_i` takes.
pub fn arity(i: usize) -> Option<usize> {
    match i {
        1 => Some(8),
        2 | 9 => Some(4),
        _ if FAMILIES.contains(&i) => Some(0),
        _ => None,
    }
}

fn check_n(i: usize, n: &[usize]) -> Result<()> {
    let k = arity(i).ok_or_else(|| Error::UnknownName(format!("U{i}")))?;
    if n.len() != k {
        return Err(Error::Shape(format!("U{i} takes {k} multiplicities, got {}", n.len())));
    }
    if i == 1 && n.iter().sum::<usize>() == 0 {
        return Err(Error::Invalid("U1 requires n1 + ... + n8 >= 1".into()));
    }
    Ok(())
}

/// Parameter names and shapes of `U_i(n)`.
pub fn param_shapes(i: usize, n: &[usize]) -> Result<Vec<(&'static str, Shape)>> {
    check_n(i, n)?;
    use Shape::*;
    Ok(match i {
        1 => vec![
            ("lambda", Matrix(n[0], n[3])),
            ("mu", Matrix(n[1], n[2])),
            ("nu", Matrix(n[4], n[7])),
            ("gamma", Matrix(n[5], n[6])),
        ],
        2 => vec![("lambda", Scalar), ("nu", Matrix(n[0], n[3])), ("gamma", Matrix(n[1], n[2]))],
        9 => vec![
            ("nu", Matrix(n[0], n[3])),
            ("gamma", Matrix(n[1], n[2])),
            ("lambda", Vector(n[0])),
            ("mu", Vector(n[1])),
            ("alpha", Vector(n[2])),
            ("beta", Vector(n[3])),
        ],
        14 | 38 | 39 | 41 | 42 | 44 => vec![("lambda", Scalar), ("mu", Scalar), ("alpha", Scalar)],
        15 => vec![("lambda", Scalar), ("mu", Scalar), ("nu", Scalar), ("alpha", Scalar)],
        16 | 20 | 23 | 29 => vec![("lambda", Scalar)],
        45 => vec![("lambda", Scalar), ("mu", Scalar)],
        _ => unreachable!(),
    })
}

struct Text {
    lines: Vec<String>,
    mods: Vec<String>,
}

impl Text {
    fn new() -> Self {
        Text { lines: Vec::new(), mods: Vec::new() }
    }

    fn push(&mut self, s: String) {
        self.lines.push(s);
    }

    fn param(&mut self, name: &str, v: &Scalar) {
        self.push(format!("param {name} = ({v})"));
    }

    /// `g x = (+/-) x g` for `g = a, b, c`, and `d x -> d_rhs`.
    fn commute(&mut self, x: &str, signs: [i8; 3], d_rhs: &str) {
        for (g, s) in ["a", "b", "c"].iter().zip(signs) {
            let sign = if s < 0 { "-" } else { "" };
            self.push(format!("rel: {g}*{x} -> {sign}{x}*{g}"));
        }
        self.push(format!("rel: d*{x} -> {d_rhs}"));
    }

    fn rel(&mut self, lhs: &str, rhs: &str) {
        self.push(format!("rel: {lhs} = {rhs}"));
    }

    fn anti(&mut self, x: &str, y: &str, rhs: &str) {
        if x == y {
            self.rel(&format!("2*{x}*{x}"), rhs);
        } else {
            self.rel(&format!("{x}*{y} + {y}*{x}"), rhs);
        }
    }

    fn skew_primitive(&mut self, x: &str, g: &str) {
        self.push(format!("delta: {x} = {x} @ 1 + {g} @ {x}"));
        self.push(format!("eps: {x} = 0"));
    }

    /// `Delta(x1) = x1 (x) 1 + (1/2) pre f+ (x) x1 + (1/2) pre f- (x) x2`,
    /// where `pre = a` for `x1` when `a_first`, else for `x2`.
    fn twisted(&mut self, x1: &str, x2: &str, a_first: bool, plus: &str, minus: &str) {
        let (pre1, pre2) = if a_first { ("a*", "") } else { ("", "a*") };
        self.push(format!("delta: {x1} = {x1} @ 1 + (1/2)*{pre1}{plus}*d @ {x1} + (1/2)*{pre1}{minus}*d @ {x2}"));
        self.push(format!("delta: {x2} = {x2} @ 1 + (1/2)*{pre2}{plus}*d @ {x2} + (1/2)*{pre2}{minus}*d @ {x1}"));
        self.push(format!("eps: {x1} = 0"));
        self.push(format!("eps: {x2} = 0"));
    }

    fn render(&self, name: &str) -> String {
        let mut s = H_DSL.replacen("name: H", &format!("name: {name}"), 1);
        s = s.replacen("gens: a b c d |", &format!("gens: a b c d | {}", self.mods.join(" ")), 1);
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        s
    }
}

/// Group-letter data of a copy of `V_k`: signs for `a, b, c`, the scalar in
/// `d X = s X d`, and the group-like of its coproduct.
fn v_data(k: usize) -> ([i8; 3], &'static str, &'static str) {
    let signs = if k <= 4 { [-1, 1, 1] } else { [-1, -1, -1] };
    let s = if k % 2 == 1 { "-x" } else { "x" };
    let g = match k {
        1 | 2 => "a*b",
        3 | 4 => "a*c",
        5 | 6 => "b",
        _ => "c",
    };
    (signs, s, g)
}

/// Copies of `V_k` for each `k` in `ks`, with multiplicities `n`.
fn v_letters(ks: &[usize], n: &[usize]) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    for (slot, &k) in ks.iter().enumerate() {
        for copy in 1..=n[slot] {
            out.push((k, copy, format!("{}{copy}", modules::V_LETTERS[k - 1])));
        }
    }
    out
}

/// Relations among copies of `V_1..V_8`: anticommutation within
/// `{V1..V4}` and within `{V5..V8}`, commutation across, and the deformed
/// pairs `(k1, k2) -> param`.
fn v_block(t: &mut Text, ps: &ParamSet, letters: &[(usize, usize, String)], deformed: &[(usize, usize, &str)]) {
    for (k, _, x) in letters {
        let (signs, s, g) = v_data(*k);
        t.mods.push(x.clone());
        t.commute(x, signs, &format!("{s}*{x}*d"));
        t.skew_primitive(x, g);
    }
    for (i, (k1, c1, x)) in letters.iter().enumerate() {
        for (k2, c2, y) in &letters[i..] {
            if (*k1 <= 4) != (*k2 <= 4) {
                t.rel(&format!("{x}*{y} - {y}*{x}"), "0");
                continue;
            }
            let rhs = match deformed.iter().find(|(u, v, _)| (u, v) == (k1, k2)) {
                Some((_, _, name)) => {
                    let pname = format!("{name}_{c1}_{c2}");
                    t.param(&pname, &ps.matrix_entry(name, c1 - 1, c2 - 1));
                    format!("{pname}*(1 - b*c)")
                }
                None => "0".into(),
            };
            t.anti(x, y, &rhs);
        }
    }
}

fn scalars(t: &mut Text, ps: &ParamSet, names: &[&str]) {
    for n in names {
        t.param(n, &ps.scalar_or_zero(n));
    }
}

fn pq(t: &mut Text, ps: &ParamSet, names: &[&str]) {
    t.mods.extend(["p1", "p2", "q1", "q2"].map(String::from));
    scalars(t, ps, names);
}

/// Squares zero and `x1 x2 + x2 x1 = rhs`.
fn exterior(t: &mut Text, x1: &str, x2: &str, rhs: &str) {
    t.rel(&format!("{x1}*{x1}"), "0");
    t.rel(&format!("{x2}*{x2}"), "0");
    t.anti(x1, x2, rhs);
}

/// The U2 relations of `p1, p2` with parameter `l`.
fn u2_block(t: &mut Text, x1: &str, x2: &str, l: &str) {
    t.commute(x1, [1, -1, -1], &format!("{x2}*d"));
    t.commute(x2, [1, -1, -1], &format!("{x1}*d"));
    exterior(t, x1, x2, &format!("{l}*(1 - b*c)"));
}

/// `a` anticommutes, `b, c` commute, `d x1 = x2 d`, `d x2 = -x1 d`.
fn u16_block(t: &mut Text, x1: &str, x2: &str) {
    t.commute(x1, [-1, 1, 1], &format!("{x2}*d"));
    t.commute(x2, [-1, 1, 1], &format!("-{x1}*d"));
}

fn u20_commute(t: &mut Text) {
    t.commute("p1", [1, 1, -1], "p2*a*d");
    t.commute("p2", [1, -1, 1], "p1*a*d");
    t.commute("q1", [1, -1, 1], "q2*a*d");
    t.commute("q2", [1, 1, -1], "q1*a*d");
}

fn u38_block(t: &mut Text, x1: &str, x2: &str, l: &str) {
    t.commute(x1, [1, -1, -1], &format!("{x1}*d"));
    t.commute(x2, [1, 1, 1], &format!("-{x2}*d"));
    t.rel(&format!("{x1}*{x1}"), &format!("{l}*(a*b*c + a - 2)"));
    t.rel(&format!("{x2}*{x2}"), &format!("{l}*(a*b*c - a)"));
    t.anti(x1, x2, "0");
}

fn u41_block(t: &mut Text, x1: &str, x2: &str, l: &str) {
    t.commute(x1, [1, 1, 1], &format!("-{x1}*d"));
    t.commute(x2, [1, -1, -1], &format!("-{x2}*d"));
    t.rel(&format!("{x1}*{x1}"), &format!("{l}*(a*b*c + a - 2)"));
    t.rel(&format!("{x2}*{x2}"), &format!("{l}*(a - a*b*c)"));
    t.anti(x1, x2, "0");
}

fn u44_block(t: &mut Text, x1: &str, x2: &str, l: &str) {
    t.commute(x1, [1, 1, -1], &format!("-{x2}*a*d"));
    t.commute(x2, [1, -1, 1], &format!("-{x1}*a*d"));
    t.rel(&format!("{x1}*{x2}"), "0");
    t.rel(&format!("{x2}*{x1}"), "0");
    t.rel(&format!("{x1}*{x1} + {x2}*{x2}"), &format!("{l}*(1 - a)"));
}

fn u44_mixed(t: &mut Text, alpha: &str) {
    t.rel("p1*q1 + q1*p1 + p2*q2 + q2*p2", &format!("{alpha}*(1 - a)"));
    t.rel("p1*q1 - q1*p1 - p2*q2 + q2*p2", "0");
    t.rel("p1*q2 + q2*p1 + p2*q1 + q1*p2", "0");
    t.rel("p1*q2 - q2*p1 - p2*q1 + q1*p2", "0");
}

/// The presentation text of `U_i(n; params)`.
pub fn family_dsl(i: usize, n: &[usize], ps: &ParamSet) -> Result<String> {
    let shapes = param_shapes(i, n)?;
    ps.check_shapes(&shapes)?;
    let mut t = Text::new();
    match i {
        1 => {
            let letters = v_letters(&[1, 2, 3, 4, 5, 6, 7, 8], n);
            v_block(&mut t, ps, &letters, &[(1, 4, "lambda"), (2, 3, "mu"), (5, 8, "nu"), (6, 7, "gamma")]);
        }
        2 => {
            t.mods.extend(["p1", "p2"].map(String::from));
            scalars(&mut t, ps, &["lambda"]);
            u2_block(&mut t, "p1", "p2", "lambda");
            t.skew_primitive("p1", "b");
            t.skew_primitive("p2", "c");
            let letters = v_letters(&[5, 6, 7, 8], n);
            v_block(&mut t, ps, &letters, &[(5, 8, "nu"), (6, 7, "gamma")]);
            t.mods.rotate_left(2);
            for (_, _, x) in &letters {
                t.anti("p1", x, "0");
                t.anti("p2", x, "0");
            }
        }
        9 => {
            t.mods.extend(["p1", "p2"].map(String::from));
            t.commute("p1", [-1, -1, -1], "p2*d");
            t.commute("p2", [-1, -1, -1], "-p1*d");
            exterior(&mut t, "p1", "p2", "0");
            t.skew_primitive("p1", "a");
            t.skew_primitive("p2", "a*b*c");
            let letters = v_letters(&[5, 6, 7, 8], n);
            v_block(&mut t, ps, &letters, &[(5, 8, "nu"), (6, 7, "gamma")]);
            t.mods.rotate_left(2);
            for (k, c, x) in &letters {
                let (name, g1, g2, s2) = match k {
                    5 => ("lambda", "a*b", "a*c", "x"),
                    6 => ("mu", "a*b", "a*c", "-x"),
                    7 => ("alpha", "a*c", "a*b", "x"),
                    _ => ("beta", "a*c", "a*b", "-x"),
                };
                let pname = format!("{name}_{c}");
                t.param(&pname, &ps.vector_entry(name, c - 1));
                t.anti("p1", x, &format!("{pname}*(1 - {g1})"));
                t.anti("p2", x, &format!("{s2}*{pname}*(1 - {g2})"));
            }
        }
        14 | 15 => {
            pq(&mut t, ps, if i == 14 { &["lambda", "mu", "alpha"] } else { &["lambda", "mu", "nu", "alpha"] });
            u2_block(&mut t, "p1", "p2", "lambda");
            u2_block(&mut t, "q1", "q2", "mu");
            t.skew_primitive("p1", "b");
            t.skew_primitive("p2", "c");
            if i == 14 {
                t.anti("p1", "q1", "0");
                t.anti("p2", "q2", "0");
                t.anti("p1", "q2", "alpha*(1 - b*c)");
                t.anti("p2", "q1", "alpha*(1 - b*c)");
                t.skew_primitive("q1", "b");
                t.skew_primitive("q2", "c");
            } else {
                t.anti("p1", "q1", "nu*(1 - a)");
                t.anti("p2", "q2", "nu*(1 - a)");
                t.anti("p1", "q2", "alpha*(1 - a*b*c)");
                t.anti("p2", "q1", "alpha*(1 - a*b*c)");
                t.skew_primitive("q1", "a*b");
                t.skew_primitive("q2", "a*c");
            }
        }
        16 => {
            pq(&mut t, ps, &["lambda"]);
            u2_block(&mut t, "p1", "p2", "lambda");
            u16_block(&mut t, "q1", "q2");
            exterior(&mut t, "q1", "q2", "0");
            for (x, y) in [("p1", "q1"), ("p2", "q2"), ("p1", "q2"), ("p2", "q1")] {
                t.rel(&format!("{x}*{y} - {y}*{x}"), "0");
            }
            t.skew_primitive("p1", "b");
            t.skew_primitive("p2", "c");
            t.skew_primitive("q1", "a");
            t.skew_primitive("q2", "a*b*c");
        }
        20 | 23 => {
            pq(&mut t, ps, &["lambda"]);
            u20_commute(&mut t);
            if i == 20 {
                exterior(&mut t, "p1", "p2", "0");
                exterior(&mut t, "q1", "q2", "0");
                t.anti("p1", "q1", "0");
                t.anti("p2", "q2", "0");
            } else {
                for (x, y) in [("p1", "p2"), ("q1", "q2")] {
                    t.rel(&format!("{x}*{x}"), "0");
                    t.rel(&format!("{y}*{y}"), "0");
                    t.rel(&format!("{x}*{y} - {y}*{x}"), "0");
                }
                t.rel("p1*q1 - q1*p1", "0");
                t.rel("p2*q2 - q2*p2", "0");
            }
            t.anti("p1", "q2", "lambda*(1 - a)");
            t.anti("p2", "q1", "lambda*(1 - a)");
            let gs = if i == 20 { ["b*c", "a*b*c", "b*c", "a*b*c"] } else { ["c", "a*b", "b", "a*c"] };
            for (x, g) in ["p1", "p2", "q1", "q2"].iter().zip(gs) {
                t.skew_primitive(x, g);
            }
        }
        29 => {
            pq(&mut t, ps, &["lambda"]);
            u16_block(&mut t, "p1", "p2");
            u16_block(&mut t, "q1", "q2");
            exterior(&mut t, "p1", "p2", "0");
            exterior(&mut t, "q1", "q2", "0");
            t.anti("p1", "q1", "0");
            t.anti("p2", "q2", "0");
            t.anti("p1", "q2", "lambda*(1 - b*c)");
            t.anti("p2", "q1", "-lambda*(1 - b*c)");
            for (x, g) in [("p1", "a"), ("p2", "a*b*c"), ("q1", "a"), ("q2", "a*b*c")] {
                t.skew_primitive(x, g);
            }
        }
        38 | 39 => {
            pq(&mut t, ps, &["lambda", "mu", "alpha"]);
            u38_block(&mut t, "p1", "p2", "lambda");
            u38_block(&mut t, "q1", "q2", "mu");
            if i == 38 {
                t.anti("p1", "q1", "alpha*(a*b*c + a - 2)");
                t.anti("p2", "q2", "alpha*(a*b*c - a)");
            } else {
                t.anti("p1", "q1", "alpha*(1 - b*c)");
                t.anti("p2", "q2", "alpha*(1 - b*c)");
            }
            t.anti("p1", "q2", "0");
            t.anti("p2", "q1", "0");
            t.twisted("p1", "p2", true, "(b + c)", "(b - c)");
            t.twisted("q1", "q2", i == 38, "(b + c)", "(b - c)");
        }
        41 | 42 => {
            pq(&mut t, ps, &["lambda", "mu", "alpha"]);
            u41_block(&mut t, "p1", "p2", "lambda");
            u41_block(&mut t, "q1", "q2", "mu");
            if i == 41 {
                t.anti("p1", "q1", "alpha*(a*b*c + a - 2)");
                t.anti("p2", "q2", "alpha*(a - a*b*c)");
            } else {
                t.anti("p1", "q1", "alpha*(1 - b*c)");
                t.anti("p2", "q2", "-alpha*(1 - b*c)");
            }
            t.anti("p1", "q2", "0");
            t.anti("p2", "q1", "0");
            t.twisted("p1", "p2", true, "(1 + b*c)", "(1 - b*c)");
            t.twisted("q1", "q2", i == 41, "(1 + b*c)", "(1 - b*c)");
        }
        44 | 45 => {
            pq(&mut t, ps, if i == 44 { &["lambda", "mu", "alpha"] } else { &["lambda", "mu"] });
            u44_block(&mut t, "p1", "p2", "lambda");
            u44_block(&mut t, "q1", "q2", "mu");
            u44_mixed(&mut t, if i == 44 { "alpha" } else { "0" });
            t.twisted("p1", "p2", true, "(1 + b*c)", "(1 - b*c)");
            t.twisted("q1", "q2", i == 44, "(1 + b*c)", "(1 - b*c)");
        }
        _ => unreachable!(),
    }
    Ok(t.render(&family_name(i, n)))
}

pub fn family_name(i: usize, n: &[usize]) -> String {
    if n.is_empty() {
        format!("U{i}")
    } else {
        let ns: Vec<String> = n.iter().map(|k| k.to_string()).collect();
        format!("U{i}({})", ns.join(","))
    }
}

/// `U_i(n; params)`, with its rewriting system completed (bounded).
pub fn lifting(i: usize, n: &[usize], ps: &ParamSet) -> Result<Presentation> {
    let mut p = parse_presentation(&family_dsl(i, n, ps)?)?;
    p.complete(ROUNDS, MAX_RULES)?;
    Ok(p)
}

/// `B(Omega_i) # H` for the families listed in `TRIVIAL_FAMILIES`, and for
/// any other `Omega_i` whose Nichols algebra is quadratic.
pub fn bosonization(i: usize, n: &[usize], caps: &Caps) -> Result<Presentation> {
    let om = modules::omega(i, n)?;
    let b = crate::present::nichols_presentation(&om, caps)?;
    crate::present::smash_product(&b, &modules::h_arc(), Some(&om))
}

/// `16 * dim B(Omega_i)`.
pub fn expected_dim(i: usize, n: &[usize], caps: &Caps) -> Result<usize> {
    let om = modules::omega(i, n)?;
    let g = graded_dims_of(&om, caps.degree, caps)?;
    g.total
        .map(|t| 16 * t)
        .ok_or_else(|| Error::Inconclusive(format!("B(Omega_{i}) not finite by degree {}", caps.degree)))
}

/// A scalar parameter set from `(name, value)` pairs.
pub fn scalar_params(pairs: &[(&str, Scalar)]) -> ParamSet {
    let mut ps = ParamSet::new();
    for (k, v) in pairs {
        ps.insert(k, Param::Scalar(v.clone()));
    }
    ps
}

/// One attempt to deform a quadratic relation `r` of `B(Omega_i) # H` with
/// `Delta(r) = r (x) 1 + g (x) r` into `r = (1 - g)`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DeformationTrial {
    pub relation: String,
    pub group_like: String,
    /// Overlaps of the deformed system (before completion) all resolve.
    pub confluent: bool,
    pub bialgebra: bool,
    /// Dimension after bounded completion, when finite.
    pub dim_after_completion: Option<usize>,
    pub expected_dim: usize,
}

impl DeformationTrial {
    /// The deformation survives as a lifting of the same dimension.
    pub fn is_lifting(&self) -> bool {
        self.confluent && self.bialgebra && self.dim_after_completion == Some(self.expected_dim)
    }
}

const GROUP_LIKES: [&str; 7] = ["a", "b", "c", "a*b", "a*c", "b*c", "a*b*c"];

/// Deforms, one at a time, a basis of each space of `(1, g)`-skew-primitive
/// quadratic relations (`g != 1`), and then one combination of that basis.
pub fn deformation_trials(i: usize, n: &[usize], caps: &Caps) -> Result<Vec<DeformationTrial>> {
    use crate::linalg::Matrix;
    use crate::present::{set_smash_coalgebra, smash_relations, Poly, TPoly};

    let h = modules::h_arc();
    let om = modules::omega(i, n)?;
    let b = crate::present::nichols_presentation(&om, caps)?;
    let (alphabet, rels) = smash_relations(&b, &h, Some(&om))?;
    let full = crate::present::smash_product(&b, &h, Some(&om))?;
    let expected = full.enumerate_basis(1 << 20).dim.ok_or_else(|| Error::Resource("basis too large".into()))?;
    let quad: Vec<usize> = rels
        .iter()
        .enumerate()
        .filter(|(_, (p, origin))| origin.starts_with("R: ") && p.terms().keys().all(|w| w.len() == 2))
        .map(|(k, _)| k)
        .collect();
    // T(V) # H: skew-primitivity has to be tested before the relations are imposed
    let free_rels: Vec<_> = rels.iter().filter(|(_, o)| !o.starts_with("R: ")).cloned().collect();
    let mut free = Presentation::from_relations("free smash", alphabet.clone(), free_rels)?;
    set_smash_coalgebra(&mut free, &h, Some(&om))?;
    let mut out = Vec::new();
    for g in GROUP_LIKES {
        let gp = free.element(g)?;
        // columns: Delta(q) - q (x) 1 - g (x) q, reduced
        let mut defects: Vec<TPoly> = Vec::new();
        for &k in &quad {
            let q = &rels[k].0;
            let mut t = free.tensor_nf(&free.delta(q)?)?;
            let mut rhs = TPoly::zero();
            rhs.add_product(q, &Poly::one(), &Scalar::one());
            rhs.add_product(&gp, q, &Scalar::one());
            t.add_scaled(&free.tensor_nf(&rhs)?, &Scalar::from_int(-1));
            defects.push(t);
        }
        let keys: std::collections::BTreeSet<_> = defects.iter().flat_map(|t| t.terms().keys().cloned()).collect();
        let cols: Vec<Vec<Scalar>> = defects
            .iter()
            .map(|t| keys.iter().map(|key| t.terms().get(key).cloned().unwrap_or_else(Scalar::zero)).collect())
            .collect();
        let mut combos = if keys.is_empty() {
            (0..quad.len()).map(|k| (0..quad.len()).map(|j| if j == k { Scalar::one() } else { Scalar::zero() }).collect()).collect()
        } else {
            Matrix::from_columns(&cols)?.nullspace()
        };
        if combos.len() > 1 {
            let mut mix = vec![Scalar::zero(); quad.len()];
            for (t, c) in combos.iter().enumerate() {
                for (m, x) in mix.iter_mut().zip(c) {
                    *m += &(x * &Scalar::from_int(t as i64 + 1));
                }
            }
            combos.push(mix);
        }
        for c in combos {
            let mut r = Poly::zero();
            for (x, &k) in c.iter().zip(&quad) {
                r.add_scaled(&rels[k].0, x);
            }
            if r.is_zero() {
                continue;
            }
            let Some(j) = c.iter().position(|x| !x.is_zero()) else { continue };
            let mut deformed = r.clone();
            deformed.add_term(Vec::new(), Scalar::from_int(-1));
            deformed.add_scaled(&gp, &Scalar::one());
            let mut rs = rels.clone();
            rs[quad[j]] = (deformed, format!("deformed: {} = 1 - {g}", r.format(&alphabet)));
            let mut p = Presentation::from_relations(&format!("{} deformed", full.name), alphabet.clone(), rs)?;
            set_smash_coalgebra(&mut p, &h, Some(&om))?;
            let confluent = p.confluence_check()?.confluent();
            let bialgebra = p.check_bialgebra()?.all_passed();
            p.complete(ROUNDS, MAX_RULES)?;
            let dim = if p.confluence_check()?.confluent() { p.enumerate_basis(1 << 20).dim } else { None };
            out.push(DeformationTrial {
                relation: r.format(&alphabet),
                group_like: g.to_string(),
                confluent,
                bialgebra,
                dim_after_completion: dim,
                expected_dim: expected,
            });
        }
    }
    Ok(out)
}
