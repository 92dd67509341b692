//! The simple Yetter-Drinfeld modules `V1..V8`, `M1..M20` and the direct
//! sums `Omega_1..Omega_49`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finhopf::{Element, HopfData};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::ydmod::{coaction_from_elements, direct_sum, YdModule};

use super::hopf;

/// The shared instance of `H`.
pub fn h_arc() -> Arc<HopfData> {
    static H: OnceLock<Arc<HopfData>> = OnceLock::new();
    H.get_or_init(|| Arc::new(hopf::h())).clone()
}

/// The shared instance of the dual of `H`.
pub fn hstar_arc() -> Arc<HopfData> {
    static HS: OnceLock<Arc<HopfData>> = OnceLock::new();
    HS.get_or_init(|| Arc::new(h_arc().dualize())).clone()
}

/// `(i, j, k, l)` of `V1..V8`.
pub const V_PARAMS: [(u32, u32, u32, u32); 8] = [
    (1, 1, 0, 0),
    (1, 3, 0, 0),
    (1, 1, 1, 0),
    (1, 3, 1, 0),
    (0, 1, 0, 1),
    (0, 3, 0, 1),
    (0, 1, 1, 1),
    (0, 3, 1, 1),
];

/// Letters naming copies of `V1..V8` in the lifted families.
pub const V_LETTERS: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "H"];

fn sign(e: u32) -> Scalar {
    if e.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

/// One-dimensional `k_{chi_{i,j,k,l}}`: `a.v = (-1)^j v`, `b.v = c.v =
/// (-1)^l v`, `d.v = x^{-j} v`, `delta(v) = a^i b^{j+k} c^k (x) v`.
pub fn chi(i: u32, j: u32, k: u32, l: u32) -> Result<YdModule> {
    let h = h_arc();
    let one = |s: Scalar| Matrix::from_rows(vec![vec![s]]).expect("1x1");
    let gens = BTreeMap::from([
        ("a".to_string(), one(sign(j))),
        ("b".to_string(), one(sign(l))),
        ("c".to_string(), one(sign(l))),
        ("d".to_string(), one(Scalar::xi().pow((4 - j % 4) % 4))),
    ]);
    let g = hopf::monomial_index((i % 2) as usize, ((j + k) % 2) as usize, (k % 2) as usize, 0);
    let co = coaction_from_elements(&h, &[vec![h.basis_vec(g)]])?;
    YdModule::build(h, &format!("chi_{i}{j}{k}{l}"), vec!["v".into()], &gens, co)
}

pub fn v(n: usize) -> Result<YdModule> {
    let (i, j, k, l) = *V_PARAMS.get(n.wrapping_sub(1)).ok_or_else(|| Error::UnknownName(format!("V{n}")))?;
    Ok(chi(i, j, k, l)?.renamed(&format!("V{n}")))
}

type M2 = [[i64; 2]; 2];

const I2: M2 = [[1, 0], [0, 1]];
const NEG_I2: M2 = [[-1, 0], [0, -1]];
const SWAP: M2 = [[0, 1], [1, 0]];
const D_P: M2 = [[1, 0], [0, -1]];
const D_M: M2 = [[-1, 0], [0, 1]];
const ROT: M2 = [[0, -1], [1, 0]];
const ROT_T: M2 = [[0, 1], [-1, 0]];
const NEG_SWAP: M2 = [[0, -1], [-1, 0]];

/// Matrices `[a], [b], [c], [d]` of `M1..M20`.
fn m_action(n: usize) -> [M2; 4] {
    match n {
        1 | 2 => [I2, NEG_I2, NEG_I2, SWAP],
        3 | 4 => [I2, D_P, D_M, SWAP],
        5 | 6 => [I2, D_M, D_P, SWAP],
        7 => [NEG_I2, I2, I2, ROT],
        8 => [NEG_I2, NEG_I2, NEG_I2, ROT],
        9 | 10 => [NEG_I2, D_P, D_M, ROT_T],
        11 | 12 => [NEG_I2, D_M, D_P, ROT_T],
        13 | 14 => [I2, D_M, D_M, D_P],
        15 | 16 => [I2, D_P, D_P, NEG_I2],
        17 | 18 => [I2, D_P, D_M, NEG_SWAP],
        19 => [NEG_I2, D_P, D_M, ROT_T],
        20 => [NEG_I2, D_M, D_P, ROT_T],
        _ => unreachable!(),
    }
}

/// Coaction of `M1..M20` as `[delta(v1), delta(v2)]`, each a list of
/// `(element of H, index of v)`.
fn m_coaction(n: usize) -> [Vec<(&'static str, usize)>; 2] {
    let diag = |g1: &'static str, g2: &'static str| [vec![(g1, 0)], vec![(g2, 1)]];
    match n {
        1 => diag("b", "c"),
        2 => diag("a*b", "a*c"),
        3 => diag("b*c", "a*b*c"),
        4 => diag("c", "a*b"),
        5 => diag("b*c", "a*b*c"),
        6 => diag("b", "a*c"),
        7 | 8 => diag("a", "a*b*c"),
        9 => diag("c", "a*c"),
        10 => diag("b*c", "a"),
        11 => diag("b", "a*b"),
        12 => diag("b*c", "a"),
        13 => [
            vec![("(1/2)*a*(b+c)*d", 0), ("(1/2)*a*(b-c)*d", 1)],
            vec![("(1/2)*(b+c)*d", 1), ("(1/2)*(b-c)*d", 0)],
        ],
        14 => [
            vec![("(1/2)*(b+c)*d", 0), ("(1/2)*(b-c)*d", 1)],
            vec![("(1/2)*a*(b+c)*d", 1), ("(1/2)*a*(b-c)*d", 0)],
        ],
        15 | 17 | 19 | 20 => [
            vec![("(1/2)*a*(1+b*c)*d", 0), ("(1/2)*a*(1-b*c)*d", 1)],
            vec![("(1/2)*(1+b*c)*d", 1), ("(1/2)*(1-b*c)*d", 0)],
        ],
        16 | 18 => [
            vec![("(1/2)*(1+b*c)*d", 0), ("(1/2)*(1-b*c)*d", 1)],
            vec![("(1/2)*a*(1+b*c)*d", 1), ("(1/2)*a*(1-b*c)*d", 0)],
        ],
        _ => unreachable!(),
    }
}

/// The coaction of `M_n`, in the notation of the matrices.
pub fn m_coaction_text(n: usize) -> Option<[String; 2]> {
    if !(1..=20).contains(&n) {
        return None;
    }
    let co = m_coaction(n);
    let fmt = |terms: &[(&str, usize)]| {
        terms.iter().map(|(e, i)| format!("{e} @ v{}", i + 1)).collect::<Vec<_>>().join(" + ")
    };
    Some([fmt(&co[0]), fmt(&co[1])])
}

pub fn m(n: usize) -> Result<YdModule> {
    if !(1..=20).contains(&n) {
        return Err(Error::UnknownName(format!("M{n}")));
    }
    let h = h_arc();
    let to_matrix = |m: M2| Matrix::from_ints(&[&m[0], &m[1]]);
    let act = m_action(n);
    let gens: BTreeMap<String, Matrix> =
        ["a", "b", "c", "d"].iter().zip(act).map(|(g, mm)| (g.to_string(), to_matrix(mm))).collect();
    let mut elems: Vec<Vec<Element>> = vec![vec![crate::finhopf::zero(h.dim()); 2]; 2];
    for (j, terms) in m_coaction(n).iter().enumerate() {
        for (src, i) in terms {
            elems[j][*i] = h.eval(src)?;
        }
    }
    let co = coaction_from_elements(&h, &elems)?;
    YdModule::build(h, &format!("M{n}"), vec!["v1".into(), "v2".into()], &gens, co)
}

/// The trivial one-dimensional module.
pub fn trivial() -> YdModule {
    let h = h_arc();
    let gens: BTreeMap<String, Matrix> =
        ["a", "b", "c", "d"].iter().map(|g| (g.to_string(), Matrix::identity(1))).collect();
    let co = coaction_from_elements(&h, &[vec![h.unit().clone()]]).expect("shape");
    YdModule::build(h, "trivial", vec!["v".into()], &gens, co).expect("trivial module is valid")
}

/// Resolves `V3`, `M15`, `trivial`.
pub fn simple_by_name(name: &str) -> Result<YdModule> {
    if name == "trivial" {
        return Ok(trivial());
    }
    let parse = |p: &str| name.strip_prefix(p).and_then(|r| r.parse::<usize>().ok());
    if let Some(k) = parse("V") {
        return v(k);
    }
    if let Some(k) = parse("M") {
        return m(k);
    }
    Err(Error::UnknownName(name.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OmegaShape {
    /// `Omega_1(n1..n8)`: copies of `V1..V8`.
    Ones,
    /// `Omega_i(n1..n4)`: copies of four `V`s plus one `M`.
    WithM { vs: [usize; 4], m: usize },
    /// `Omega_i = M_j (+) M_k`, with the grouping block (14) or (15).
    Pair { first: usize, second: usize, block: u8 },
}

pub fn omega_shape(i: usize) -> Option<OmegaShape> {
    let with_m = |vs: [usize; 4], m: usize| Some(OmegaShape::WithM { vs, m });
    let pair = |first, second, block| Some(OmegaShape::Pair { first, second, block });
    match i {
        1 => Some(OmegaShape::Ones),
        2 => with_m([5, 6, 7, 8], 1),
        3 => with_m([1, 2, 3, 4], 2),
        4 => with_m([1, 2, 5, 6], 3),
        5 => with_m([1, 2, 7, 8], 4),
        6 => with_m([3, 4, 7, 8], 5),
        7 => with_m([3, 4, 5, 6], 6),
        8 => with_m([1, 2, 3, 4], 7),
        9 => with_m([5, 6, 7, 8], 8),
        10 => with_m([3, 4, 7, 8], 9),
        11 => with_m([3, 4, 5, 6], 10),
        12 => with_m([1, 2, 5, 6], 11),
        13 => with_m([1, 2, 7, 8], 12),
        14 => pair(1, 1, 14),
        15 => pair(1, 2, 14),
        16 => pair(1, 7, 14),
        17 => pair(2, 2, 15),
        18 => pair(2, 8, 15),
        19 => pair(3, 3, 14),
        20 => pair(3, 5, 14),
        21 => pair(3, 9, 14),
        22 => pair(4, 4, 14),
        23 => pair(4, 6, 14),
        24 => pair(4, 10, 15),
        25 => pair(5, 5, 15),
        26 => pair(5, 11, 15),
        27 => pair(6, 6, 15),
        28 => pair(6, 12, 15),
        29 => pair(7, 7, 14),
        30 => pair(7, 8, 14),
        31 => pair(8, 8, 15),
        32 => pair(9, 9, 15),
        33 => pair(9, 11, 15),
        34 => pair(10, 10, 15),
        35 => pair(10, 12, 15),
        36 => pair(11, 11, 15),
        37 => pair(12, 12, 15),
        38 => pair(13, 13, 14),
        39 => pair(13, 14, 14),
        40 => pair(14, 14, 15),
        41 => pair(15, 15, 14),
        42 => pair(15, 16, 14),
        43 => pair(16, 16, 15),
        44 => pair(17, 17, 14),
        45 => pair(17, 18, 14),
        46 => pair(18, 18, 15),
        47 => pair(19, 19, 15),
        48 => pair(19, 20, 15),
        49 => pair(20, 20, 15),
        _ => None,
    }
}

/// `Omega_i` with the given multiplicities. Copies of `V_k` are named by
/// `V_LETTERS` with an index, the `M` summands `p1, p2` (and `q1, q2`).
pub fn omega(i: usize, n: &[usize]) -> Result<YdModule> {
    let shape = omega_shape(i).ok_or_else(|| Error::UnknownName(format!("Omega_{i}")))?;
    let name = format!("Omega_{i}");
    let mut parts: Vec<YdModule> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut add_vs = |vs: &[usize], n: &[usize], parts: &mut Vec<YdModule>| -> Result<()> {
        for (slot, &k) in vs.iter().enumerate() {
            for copy in 1..=n[slot] {
                parts.push(v(k)?);
                names.push(format!("{}{copy}", V_LETTERS[k - 1]));
            }
        }
        Ok(())
    };
    match shape {
        OmegaShape::Ones => {
            if n.len() != 8 {
                return Err(Error::Shape(format!("Omega_1 takes 8 multiplicities, got {}", n.len())));
            }
            if n.iter().sum::<usize>() == 0 {
                return Err(Error::Invalid("Omega_1 requires n1 + ... + n8 >= 1".into()));
            }
            add_vs(&[1, 2, 3, 4, 5, 6, 7, 8], n, &mut parts)?;
        }
        OmegaShape::WithM { vs, m: mm } => {
            if n.len() != 4 {
                return Err(Error::Shape(format!("Omega_{i} takes 4 multiplicities, got {}", n.len())));
            }
            add_vs(&vs, n, &mut parts)?;
            parts.push(m(mm)?);
            names.extend(["p1".to_string(), "p2".to_string()]);
        }
        OmegaShape::Pair { first, second, .. } => {
            if !n.is_empty() {
                return Err(Error::Shape(format!("Omega_{i} takes no multiplicities")));
            }
            parts.push(m(first)?);
            parts.push(m(second)?);
            names.extend(["p1", "p2", "q1", "q2"].map(String::from));
        }
    }
    let refs: Vec<&YdModule> = parts.iter().collect();
    direct_sum(&name, &refs)?.with_names(names)
}
