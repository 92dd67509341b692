//! Isomorphism conditions between members of one lifted family, and the
//! Hopf map `Phi` a witness induces.
//!
//! A witness fixes `Phi|_H = tau_k` and, for every isotypic block of
//! `Omega_i`, a matrix mixing the copies of the block. On a simple summand
//! `T`, `Phi` is the unique (up to scalar) map `T -> tau^* T'` of
//! Yetter-Drinfeld modules, normalized so that the first nonzero coefficient
//! of the image of the first basis vector is `1`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::present::{Param, ParamSet, Poly, Presentation};
use crate::scalar::Scalar;
use crate::ydmod::{homs_along, YdModule};

use super::hopf::{tau, tau_images};
use super::lift::{arity, param_shapes};
use super::modules::{self, OmegaShape, V_LETTERS};

/// Families with an isomorphism criterion.
pub const ISO_FAMILIES: [usize; 11] = [1, 2, 9, 14, 15, 38, 39, 41, 42, 44, 45];

/// Copies of one simple summand type inside `Omega_i`.
#[derive(Clone, Debug)]
pub struct Block {
    /// Name of the witness entry acting on this block.
    pub key: &'static str,
    pub ty: YdModule,
    /// Letter names of each copy.
    pub copies: Vec<Vec<String>>,
}

pub fn blocks(i: usize, n: &[usize]) -> Result<Vec<Block>> {
    let shape = modules::omega_shape(i).ok_or_else(|| Error::UnknownName(format!("Omega_{i}")))?;
    const V_KEYS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let v_block = |k: usize, count: usize| -> Result<Block> {
        Ok(Block {
            key: V_KEYS[k - 1],
            ty: modules::v(k)?,
            copies: (1..=count).map(|c| vec![format!("{}{c}", V_LETTERS[k - 1])]).collect(),
        })
    };
    let pq = |p: bool| -> Vec<String> {
        if p {
            vec!["p1".into(), "p2".into()]
        } else {
            vec!["q1".into(), "q2".into()]
        }
    };
    let mut out = Vec::new();
    match shape {
        OmegaShape::Ones => {
            if n.len() != 8 {
                return Err(Error::Shape("8 multiplicities expected".into()));
            }
            for k in 1..=8 {
                out.push(v_block(k, n[k - 1])?);
            }
        }
        OmegaShape::WithM { vs, m } => {
            if n.len() != 4 {
                return Err(Error::Shape("4 multiplicities expected".into()));
            }
            for (slot, k) in vs.into_iter().enumerate() {
                out.push(v_block(k, n[slot])?);
            }
            let key = if i == 2 { "beta" } else { "z" };
            out.push(Block { key, ty: modules::m(m)?, copies: vec![pq(true)] });
        }
        OmegaShape::Pair { first, second, .. } => {
            if first == second {
                out.push(Block { key: "w", ty: modules::m(first)?, copies: vec![pq(true), pq(false)] });
            } else {
                out.push(Block { key: "z", ty: modules::m(first)?, copies: vec![pq(true)] });
                out.push(Block { key: "beta", ty: modules::m(second)?, copies: vec![pq(false)] });
            }
        }
    }
    Ok(out)
}

/// For each block, the target block under `tau_k` and the normalized map
/// between their types; `None` if some block has no target or the
/// multiplicities differ.
pub fn type_map(i: usize, n: &[usize], k: usize) -> Result<Option<Vec<(usize, Matrix)>>> {
    let bs = blocks(i, n)?;
    let h = modules::h_arc();
    let phi = tau(&h, k).ok_or_else(|| Error::UnknownName(format!("tau{k}")))?;
    let mut out = Vec::new();
    for b in &bs {
        let mut found = None;
        for (j, t) in bs.iter().enumerate() {
            if t.ty.dim() != b.ty.dim() {
                continue;
            }
            if let Some(f) = homs_along(&b.ty, &t.ty, &phi).into_iter().next() {
                found = Some((j, normalize(f)));
                break;
            }
        }
        match found {
            Some((j, f)) if bs[j].copies.len() == b.copies.len() => out.push((j, f)),
            _ => return Ok(None),
        }
    }
    Ok(Some(out))
}

fn normalize(f: Matrix) -> Matrix {
    let col = f.column(0);
    let lead = col.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(Scalar::one);
    f.scale(&lead.inv().expect("nonzero"))
}

/// The `tau_k` admitting an isomorphism `U_i(I) -> U_i(I')` for some `I, I'`.
pub fn allowed_taus(i: usize, n: &[usize]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=32 {
        if type_map(i, n, k)?.is_some() {
            out.push(k);
        }
    }
    Ok(out)
}

/// `Phi|_H = tau_k` together with the block matrices, read from a parameter
/// set (`z1, z2, beta1, beta2` for two copies of one type, `z`, `beta` for
/// single `M` blocks, `a` .. `h` for the copies of `V_1` .. `V_8`).
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub tau: usize,
    pub values: ParamSet,
}

impl Witness {
    pub fn new(tau: usize, values: ParamSet) -> Self {
        Witness { tau, values }
    }

    /// `{"tau": 5, "z1": "1", "a": [["1","0"],["0","2"]], ...}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut v: serde_json::Map<String, Value> =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("witness file: {e}")))?;
        let tau = match v.remove("tau") {
            Some(Value::Number(n)) => n.as_u64().map(|t| t as usize),
            Some(Value::String(s)) => s.trim().parse().ok(),
            _ => None,
        }
        .ok_or_else(|| Error::Invalid("witness needs an integer `tau`".into()))?;
        let values = ParamSet::from_json(&Value::Object(v).to_string())?;
        Ok(Witness { tau, values })
    }

    /// The matrix of block `key` (rows: target copies, columns: source copies).
    pub fn block_matrix(&self, key: &str, rows: usize, cols: usize) -> Result<Matrix> {
        let s = |name: &str| self.values.scalar_or_zero(name);
        let m = match key {
            "w" => Matrix::from_rows(vec![vec![s("z1"), s("beta1")], vec![s("z2"), s("beta2")]])?,
            "z" | "beta" => Matrix::from_rows(vec![vec![s(key)]])?,
            _ => match self.values.get(key) {
                Some(Param::Matrix(m)) => Matrix::from_rows(m.clone())?,
                Some(Param::Scalar(x)) => Matrix::from_rows(vec![vec![x.clone()]])?,
                None if rows == 0 && cols == 0 => Matrix::zeros(0, 0),
                _ => return Err(Error::Shape(format!("witness matrix `{key}` missing"))),
            },
        };
        if m.rows() != rows || m.cols() != cols {
            return Err(Error::Shape(format!("witness `{key}` should be {rows}x{cols}")));
        }
        Ok(m)
    }
}

/// The images of the generators of `U_i` under the map induced by `w`, as
/// elements of `target` (a member of the same family).
pub fn induced_map(target: &Presentation, i: usize, n: &[usize], w: &Witness) -> Result<BTreeMap<String, Poly>> {
    let tm = type_map(i, n, w.tau)?.ok_or_else(|| Error::Invalid(format!("tau{} is not admissible for U{i}", w.tau)))?;
    let bs = blocks(i, n)?;
    let imgs = tau_images(w.tau).ok_or_else(|| Error::UnknownName(format!("tau{}", w.tau)))?;
    let mut out = BTreeMap::new();
    for (g, img) in ["a", "b", "c", "d"].iter().zip(imgs.iter()) {
        out.insert(g.to_string(), target.element(img)?);
    }
    for (b, (j, f)) in bs.iter().zip(&tm) {
        let t = &bs[*j];
        let wm = w.block_matrix(b.key, t.copies.len(), b.copies.len())?;
        for (ci, copy) in b.copies.iter().enumerate() {
            for (l, name) in copy.iter().enumerate() {
                let mut p = Poly::zero();
                for (ti, tcopy) in t.copies.iter().enumerate() {
                    for (r, tname) in tcopy.iter().enumerate() {
                        let c = &wm[(ti, ci)] * &f[(r, l)];
                        if !c.is_zero() {
                            p.add_scaled(&Poly::word(target.word(tname)?), &c);
                        }
                    }
                }
                out.insert(name.clone(), p);
            }
        }
    }
    Ok(out)
}

/// Which system of equations applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `U1`: substitution `first` for `(lambda, mu)`, `second` for `(nu, gamma)`.
    U1 { first: u8, second: u8 },
    /// `U2`: `beta^2 lambda' = lambda` and substitution `second` on `(nu, gamma)`.
    U2 { second: u8 },
    /// `U9`: substitution `k` on the four vectors, scaled by `z` or by `+/- z x`.
    U9 { k: u8, xi: bool },
    /// `U14`: quadratic forms with `2 alpha'`.
    Quadratic14,
    /// `U38`, `U41`, `U44`: quadratic forms with `2 z1 beta1`.
    Quadratic38,
    /// `U15`: `swap_lm` exchanges `lambda', mu'`, `swap_na` exchanges `nu', alpha'`.
    Diagonal15 { swap_lm: bool, swap_na: bool },
    /// `U39`, `U42`, `U45`: `swap_lm` exchanges `lambda', mu'`.
    Diagonal39 { swap_lm: bool },
}

const NAMES_1: [&str; 4] = ["lambda", "mu", "nu", "gamma"];

/// Substitution `k` (1..8) on a pair of deformation matrices: the primed
/// source of each and whether it is transposed.
fn u1_sub(k: u8, second_half: bool) -> [(usize, bool); 2] {
    // indices into NAMES_1
    let table: [[(usize, bool); 2]; 8] = [
        [(0, false), (1, false)],
        [(1, false), (0, false)],
        [(1, true), (0, true)],
        [(0, true), (1, true)],
        [(2, false), (3, false)],
        [(3, false), (2, false)],
        [(3, true), (2, true)],
        [(2, true), (3, true)],
    ];
    let mut row = table[(k - 1) as usize];
    if second_half {
        // the same pattern with the halves exchanged
        for e in row.iter_mut() {
            e.0 = (e.0 + 2) % 4;
        }
    }
    row
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |k: u8, second: bool| -> String {
            let targets = if second { ["nu", "gamma"] } else { ["lambda", "mu"] };
            u1_sub(k, second)
                .iter()
                .zip(targets)
                .map(|((src, t), name)| format!("{name} <- {}'{}", NAMES_1[*src], if *t { "^T" } else { "" }))
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            Branch::U1 { first, second } => write!(f, "{}; {}", sub(*first, false), sub(*second, true)),
            Branch::U2 { second } => write!(f, "lambda <- beta^2 lambda'; {}", sub(*second, true)),
            Branch::U9 { k, xi } => write!(f, "vectors: substitution {k}{}; {}", if *xi { " times x" } else { "" }, sub(*k, true)),
            Branch::Quadratic14 => write!(f, "quadratic forms, mixed coefficient 2 alpha'"),
            Branch::Quadratic38 => write!(f, "quadratic forms, mixed coefficient 2 z1 beta1"),
            Branch::Diagonal15 { swap_lm, swap_na } => write!(
                f,
                "diagonal{}{}",
                if *swap_lm { ", lambda' <-> mu'" } else { "" },
                if *swap_na { ", nu' <-> alpha'" } else { "" }
            ),
            Branch::Diagonal39 { swap_lm } => write!(f, "diagonal{}", if *swap_lm { ", lambda' <-> mu'" } else { "" }),
        }
    }
}

/// The system of equations attached to `tau_k` for `U_i`.
pub fn branch_for(i: usize, k: usize) -> Option<Branch> {
    Some(match i {
        1 => {
            let (first, second) = match k {
                1..=16 => {
                    let s = [1, 2, 1, 2, 3, 4, 3, 4, 5, 6, 5, 6, 7, 8, 7, 8][k - 1];
                    (s, s)
                }
                17 | 18 => (3, 1),
                19 | 20 => (4, 2),
                21 | 22 => (1, 3),
                23 | 24 => (2, 4),
                25 | 26 => (7, 5),
                27 | 28 => (8, 6),
                29 | 30 => (5, 7),
                _ => (6, 8),
            };
            Branch::U1 { first, second }
        }
        2 => Branch::U2 { second: u2_second(k)? },
        9 => {
            let second = u2_second(k)?;
            Branch::U9 { k: second, xi: k > 16 }
        }
        14 => {
            u2_second(k)?;
            Branch::Quadratic14
        }
        38 | 41 | 44 => Branch::Quadratic38,
        15 => Branch::Diagonal15 { swap_lm: matches!(k, 9..=16 | 25..=32), swap_na: k > 16 },
        39 => Branch::Diagonal39 { swap_lm: [2, 4, 6, 8, 9, 11, 13, 15, 19, 20, 23, 24, 25, 26, 29, 30].contains(&k) },
        42 => Branch::Diagonal39 { swap_lm: [2, 4, 6, 8, 10, 12, 14, 16, 19, 20, 23, 24, 27, 28, 31, 32].contains(&k) },
        45 => Branch::Diagonal39 { swap_lm: [2, 4, 5, 7, 10, 12, 13, 15].contains(&k) },
        _ => return None,
    })
}

fn u2_second(k: usize) -> Option<u8> {
    match k {
        1 | 3 | 17 | 18 => Some(1),
        2 | 4 | 19 | 20 => Some(2),
        5 | 7 | 21 | 22 => Some(3),
        6 | 8 | 23 | 24 => Some(4),
        _ => None,
    }
}

fn mat(ps: &ParamSet, name: &str, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = ps.matrix_entry(name, r, c);
        }
    }
    m
}

fn col(ps: &ParamSet, name: &str, len: usize) -> Matrix {
    let mut m = Matrix::zeros(len, 1);
    for r in 0..len {
        m[(r, 0)] = ps.vector_entry(name, r);
    }
    m
}

fn to_param(m: &Matrix) -> Param {
    Param::Matrix((0..m.rows()).map(|r| m.row(r).to_vec()).collect())
}

fn to_vector(m: &Matrix) -> Param {
    Param::Vector(m.column(0))
}

/// The parameters `I` forced by `I'` and the witness through the
/// equations of `branch`.
pub fn iso_target_with(i: usize, n: &[usize], ip: &ParamSet, w: &Witness, branch: Branch) -> Result<ParamSet> {
    let shapes = param_shapes(i, n)?;
    ip.check_shapes(&shapes)?;
    let bs = blocks(i, n)?;
    let tm = type_map(i, n, w.tau)?.ok_or_else(|| Error::Invalid(format!("tau{} is not admissible for U{i}", w.tau)))?;
    // block matrix by key
    let bm = |key: &str| -> Result<Matrix> {
        let (idx, b) = bs.iter().enumerate().find(|(_, b)| b.key == key).expect("known key");
        let t = &bs[tm[idx].0];
        w.block_matrix(key, t.copies.len(), b.copies.len())
    };
    let sc = |name: &str| ip.scalar_or_zero(name);
    let mut out = ParamSet::new();
    // `x^T P y` over the (nu, gamma) or (lambda, mu) pairs
    let quad_pairs = |out: &mut ParamSet, k: u8, second: bool, nn: &[usize; 8]| -> Result<()> {
        let (keys, names): ([(&str, &str); 2], [&str; 2]) = if second {
            ([("e", "h"), ("f", "g")], ["nu", "gamma"])
        } else {
            ([("a", "d"), ("b", "c")], ["lambda", "mu"])
        };
        let dims = [(nn[0], nn[3]), (nn[1], nn[2]), (nn[4], nn[7]), (nn[5], nn[6])];
        for ((src, tr), ((xk, yk), name)) in u1_sub(k, second).iter().zip(keys.iter().zip(names)) {
            let (r, c) = dims[*src];
            let mut p = mat(ip, NAMES_1[*src], r, c);
            if *tr {
                p = p.transpose();
            }
            let x = bm(xk)?;
            let y = bm(yk)?;
            if x.rows() != p.rows() || y.rows() != p.cols() {
                return Err(Error::Shape(format!("witness blocks do not fit `{name}`")));
            }
            out.insert(name, to_param(&(&(&x.transpose() * &p) * &y)));
        }
        Ok(())
    };
    match branch {
        Branch::U1 { first, second } => {
            let nn: [usize; 8] = n.try_into().map_err(|_| Error::Shape("8 multiplicities expected".into()))?;
            quad_pairs(&mut out, first, false, &nn)?;
            quad_pairs(&mut out, second, true, &nn)?;
        }
        Branch::U2 { second } | Branch::U9 { k: second, .. } => {
            let nn = [0, 0, 0, 0, n[0], n[1], n[2], n[3]];
            quad_pairs(&mut out, second, true, &nn)?;
            if let Branch::U2 { .. } = branch {
                let beta = bm("beta")?[(0, 0)].clone();
                out.insert("lambda", Param::Scalar(&(&beta * &beta) * &sc("lambda")));
            } else {
                let z = bm("z")?[(0, 0)].clone();
                let xi = matches!(branch, Branch::U9 { xi: true, .. });
                let k = second;
                let (c1, c2) = match (xi, k % 2 == 1) {
                    (false, _) => (Scalar::one(), Scalar::one()),
                    (true, true) => (Scalar::xi(), -Scalar::xi()),
                    (true, false) => (-Scalar::xi(), Scalar::xi()),
                };
                // (target, witness block, primed source)
                let names = ["lambda", "mu", "alpha", "beta"];
                let src: [usize; 4] = match k {
                    1 => [0, 1, 2, 3],
                    2 => [1, 0, 3, 2],
                    3 => [2, 3, 0, 1],
                    _ => [3, 2, 1, 0],
                };
                for (t, (key, s)) in names.iter().zip(["e", "f", "g", "h"].iter().zip(src)) {
                    let x = bm(key)?;
                    let v = col(ip, names[s], n[s]);
                    if x.rows() != v.rows() {
                        return Err(Error::Shape(format!("witness `{key}` does not fit `{t}`")));
                    }
                    let c = if t == &"lambda" || t == &"alpha" { &c1 } else { &c2 };
                    out.insert(t, to_vector(&(&x.transpose() * &v).scale(&(&z * c))));
                }
            }
        }
        Branch::Quadratic14 | Branch::Quadratic38 => {
            let wm = bm("w")?;
            let (z1, z2, b1, b2) = (&wm[(0, 0)], &wm[(1, 0)], &wm[(0, 1)], &wm[(1, 1)]);
            let (l, m, a) = (sc("lambda"), sc("mu"), sc("alpha"));
            let two = Scalar::from_int(2);
            let (mix, diag) = if branch == Branch::Quadratic14 { (two.clone(), Scalar::one()) } else { (Scalar::one(), two) };
            let q = |x: &Scalar, y: &Scalar| &(&(&(x * x) * &l) + &(&(&mix * &(x * y)) * &a)) + &(&(y * y) * &m);
            out.insert("lambda", Param::Scalar(q(z1, z2)));
            out.insert("mu", Param::Scalar(q(b1, b2)));
            let alpha = &(&(&diag * &(&(z1 * b1) * &l)) + &(&diag * &(&(z2 * b2) * &m))) + &(&(&(z1 * b2) + &(z2 * b1)) * &a);
            out.insert("alpha", Param::Scalar(alpha));
        }
        Branch::Diagonal15 { swap_lm, .. } | Branch::Diagonal39 { swap_lm } => {
            let swap_na = matches!(branch, Branch::Diagonal15 { swap_na: true, .. });
            let z = bm("z")?[(0, 0)].clone();
            let b = bm("beta")?[(0, 0)].clone();
            let (l, m) = if swap_lm { (sc("mu"), sc("lambda")) } else { (sc("lambda"), sc("mu")) };
            out.insert("lambda", Param::Scalar(&(&z * &z) * &l));
            out.insert("mu", Param::Scalar(&(&b * &b) * &m));
            let zb = &z * &b;
            if i == 15 {
                let (nu, al) = if swap_na { (sc("alpha"), sc("nu")) } else { (sc("nu"), sc("alpha")) };
                out.insert("nu", Param::Scalar(&zb * &nu));
                out.insert("alpha", Param::Scalar(&zb * &al));
            } else if i != 45 {
                out.insert("alpha", Param::Scalar(&zb * &sc("alpha")));
            }
        }
    }
    Ok(out)
}

/// `iso_target_with` on the branch attached to the witness' `tau`.
pub fn iso_target(i: usize, n: &[usize], ip: &ParamSet, w: &Witness) -> Result<ParamSet> {
    let branch = branch_for(i, w.tau).ok_or_else(|| Error::Invalid(format!("no equations for tau{} on U{i}", w.tau)))?;
    iso_target_with(i, n, ip, w, branch)
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsoReport {
    pub holds: bool,
    pub branch: Option<String>,
    /// Parameters whose forced value differs from the given one.
    pub mismatches: Vec<String>,
    pub reason: Option<String>,
}

fn same_param(p: Option<&Param>, q: Option<&Param>) -> bool {
    let flat = |p: Option<&Param>| -> Vec<Scalar> {
        match p {
            None => Vec::new(),
            Some(Param::Scalar(s)) => vec![s.clone()],
            Some(Param::Vector(v)) => v.clone(),
            Some(Param::Matrix(m)) => m.iter().flatten().cloned().collect(),
        }
    };
    let (a, b) = (flat(p), flat(q));
    let n = a.len().max(b.len());
    (0..n).all(|k| a.get(k).cloned().unwrap_or_else(Scalar::zero) == b.get(k).cloned().unwrap_or_else(Scalar::zero))
}

/// Whether the equations of the branch of `w.tau` hold for
/// `I`, `I'` and the witness matrices (which must be invertible).
pub fn iso_condition(i: usize, n: &[usize], p: &ParamSet, pp: &ParamSet, w: &Witness) -> Result<IsoReport> {
    let shapes = param_shapes(i, n)?;
    p.check_shapes(&shapes)?;
    pp.check_shapes(&shapes)?;
    let fail = |reason: String| IsoReport { holds: false, branch: None, mismatches: Vec::new(), reason: Some(reason) };
    let Some(branch) = branch_for(i, w.tau) else {
        return Ok(fail(format!("tau{} does not extend to U{i}", w.tau)));
    };
    let Some(tm) = type_map(i, n, w.tau)? else {
        return Ok(fail(format!("tau{} does not extend to U{i}{:?}", w.tau, n)));
    };
    let bs = blocks(i, n)?;
    for (b, (j, _)) in bs.iter().zip(&tm) {
        let m = w.block_matrix(b.key, bs[*j].copies.len(), b.copies.len())?;
        if m.rows() > 0 && m.inverse().is_err() {
            return Ok(fail(format!("witness `{}` is not invertible", b.key)));
        }
    }
    let forced = iso_target_with(i, n, pp, w, branch)?;
    let mismatches: Vec<String> = shapes
        .iter()
        .map(|(name, _)| *name)
        .filter(|name| forced.get(name).is_some() || p.get(name).is_some())
        .filter(|name| forced.get(name).is_some() && !same_param(forced.get(name), p.get(name)))
        .map(String::from)
        .collect();
    Ok(IsoReport { holds: mismatches.is_empty(), branch: Some(branch.to_string()), mismatches, reason: None })
}

/// Multiplicity count for `U_i`, for callers that only know the family.
pub fn default_multiplicities(i: usize) -> Option<Vec<usize>> {
    arity(i).map(|k| vec![1; k])
}
