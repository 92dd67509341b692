//! The 16-dimensional algebra `H` and its automorphisms.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::finhopf::{basis_vector, check_hopf_morphism, zero, Element, HopfData};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub const GENERATORS: [&str; 4] = ["a", "b", "c", "d"];

/// Basis index of `a^i b^j c^k d^l`.
pub fn monomial_index(i: usize, j: usize, k: usize, l: usize) -> usize {
    8 * i + 4 * j + 2 * k + l
}

pub fn monomial_exponents(m: usize) -> [usize; 4] {
    [(m >> 3) & 1, (m >> 2) & 1, (m >> 1) & 1, m & 1]
}

pub fn monomial_name(m: usize) -> String {
    let e = monomial_exponents(m);
    let s: String = GENERATORS.iter().zip(e).filter(|(_, x)| *x == 1).map(|(g, _)| *g).collect();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Product of two monomials of the underlying group of order 16.
pub fn group_law(x: usize, y: usize) -> usize {
    let [i, j, k, l] = monomial_exponents(x);
    let [i2, j2, k2, l2] = monomial_exponents(y);
    // d^l (b^j2 c^k2) = (b^k2 c^j2 if l else b^j2 c^k2) d^l, and d^2 = a
    let (jb, kb) = if l == 1 { (k2, j2) } else { (j2, k2) };
    let carry = (l + l2) / 2;
    monomial_index((i + i2 + carry) % 2, (j + jb) % 2, (k + kb) % 2, (l + l2) % 2)
}

fn half() -> Scalar {
    Scalar::from_frac(1, 2)
}

/// `H` built from the group law and the coproduct of `d`.
pub fn h() -> HopfData {
    let n = 16;
    let names: Vec<String> = (0..n).map(monomial_name).collect();
    let mono = |m: usize| basis_vector(n, m);
    let pair = |x: usize, y: usize| x * n + y;
    let a = monomial_index(1, 0, 0, 0);
    let bc = monomial_index(0, 1, 1, 0);
    let d = monomial_index(0, 0, 0, 1);
    let bcd = group_law(bc, d);
    let ad = group_law(a, d);

    let mul_mono = |x: usize, y: usize| mono(group_law(x, y));
    let mul2 = |x: &Element, y: &Element| -> Element {
        let mut out = zero(n * n);
        for (p, s) in x.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for (q, t) in y.iter().enumerate() {
                if t.is_zero() {
                    continue;
                }
                let r = pair(group_law(p / n, q / n), group_law(p % n, q % n));
                out[r] += s * t;
            }
        }
        out
    };
    let mut delta_gen: Vec<Element> = Vec::new();
    for g in [a, monomial_index(0, 1, 0, 0), monomial_index(0, 0, 1, 0)] {
        delta_gen.push(basis_vector(n * n, pair(g, g)));
    }
    {
        // (1/2)[(1+bc)d (x) d + (1-bc)d (x) ad]
        let mut v = zero(n * n);
        v[pair(d, d)] += half();
        v[pair(bcd, d)] += half();
        v[pair(d, ad)] += half();
        v[pair(bcd, ad)] -= half();
        delta_gen.push(v);
    }
    let comul = |m: usize| -> Element {
        let e = monomial_exponents(m);
        let mut acc = basis_vector(n * n, pair(0, 0));
        for (g, &x) in e.iter().enumerate() {
            if x == 1 {
                acc = mul2(&acc, &delta_gen[g]);
            }
        }
        acc
    };
    // S(d) = (1/2)[a(1+bc) + (1-bc)]d, S reverses products
    let mut s_gen: Vec<Element> = vec![mono(a), mono(monomial_index(0, 1, 0, 0)), mono(monomial_index(0, 0, 1, 0))];
    {
        let mut v = zero(n);
        v[ad] += half();
        v[group_law(a, bcd)] += half();
        v[d] += half();
        v[bcd] -= half();
        s_gen.push(v);
    }
    let mul1 = |x: &Element, y: &Element| -> Element {
        let mut out = zero(n);
        for (p, s) in x.iter().enumerate() {
            for (q, t) in y.iter().enumerate() {
                if !s.is_zero() && !t.is_zero() {
                    out[group_law(p, q)] += s * t;
                }
            }
        }
        out
    };
    let mut s = Matrix::zeros(n, n);
    for m in 0..n {
        let e = monomial_exponents(m);
        let mut acc = mono(0);
        for g in (0..4).rev() {
            if e[g] == 1 {
                acc = mul1(&acc, &s_gen[g]);
            }
        }
        for (r, c) in acc.into_iter().enumerate() {
            s[(r, m)] = c;
        }
    }
    let mut hd = HopfData::from_fns("H", names, mul_mono, mono(0), comul, vec![Scalar::one(); n], s)
        .expect("consistent dimensions");
    let gens = GENERATORS
        .iter()
        .enumerate()
        .map(|(g, nm)| (nm.to_string(), mono(1 << (3 - g))))
        .collect();
    let spelling = (0..n)
        .map(|m| {
            let e = monomial_exponents(m);
            (0..4).filter(|&g| e[g] == 1).collect()
        })
        .collect();
    hd.set_generators(gens, Some(spelling));
    hd
}

/// Images of `a, b, c, d` under the automorphisms of `H`, indexed 1..=32.
pub fn tau_images(k: usize) -> Option<[String; 4]> {
    if !(1..=32).contains(&k) {
        return None;
    }
    let idx = k - 1;
    let upper = idx >= 16;
    let block = (idx % 16) / 4;
    let pos = idx % 4;
    let a = if upper { "a*b*c" } else { "a" };
    let (b, c) = match block {
        0 => ("b", "c"),
        1 => ("c", "b"),
        2 => ("a*b", "a*c"),
        _ => ("a*c", "a*b"),
    };
    let d = if upper {
        let p = "(1/2)*((1+x)+(1-x)*b*c)";
        let m = "(1/2)*((1-x)+(1+x)*b*c)";
        match pos {
            0 => format!("{p}*d"),
            1 => format!("{m}*d"),
            2 => format!("{p}*a*d"),
            _ => format!("{m}*a*d"),
        }
    } else {
        ["d", "d*a", "d*b*c", "d*a*b*c"][pos].to_string()
    };
    Some([a.to_string(), b.to_string(), c.to_string(), d])
}

/// Extends images of the generators to a 16x16 matrix through the monomial
/// basis (column `m` = image of basis monomial `m`).
pub fn matrix_from_images(hd: &HopfData, images: &[Element; 4]) -> Matrix {
    let n = hd.dim();
    let mut f = Matrix::zeros(n, n);
    for m in 0..n {
        let e = monomial_exponents(m);
        let mut acc = hd.unit().clone();
        for g in 0..4 {
            if e[g] == 1 {
                acc = hd.mul(&acc, &images[g]);
            }
        }
        for (r, c) in acc.into_iter().enumerate() {
            f[(r, m)] = c;
        }
    }
    f
}

pub fn tau(hd: &HopfData, k: usize) -> Option<Matrix> {
    let imgs = tau_images(k)?;
    let ev: Vec<Element> = imgs.iter().map(|s| hd.eval(s).expect("table entries parse")).collect();
    Some(matrix_from_images(hd, &[ev[0].clone(), ev[1].clone(), ev[2].clone(), ev[3].clone()]))
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismReport {
    pub checks: Vec<NamedCheck>,
    pub group_order: usize,
    /// Relations of the stated group presentation that fail for the table
    /// of images; kept apart from `checks`.
    pub errata: Vec<NamedCheck>,
}

impl AutomorphismReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn key(m: &Matrix) -> Vec<String> {
    (0..m.rows()).flat_map(|i| m.row(i).iter().map(|s| s.to_string()).collect::<Vec<_>>()).collect()
}

pub fn automorphism_group_check() -> AutomorphismReport {
    let hd = h();
    let taus: Vec<Matrix> = (1..=32).map(|k| tau(&hd, k).expect("in range")).collect();
    let mut checks = Vec::new();
    let mut push = |name: &str, ok: bool, witness: Option<String>| {
        checks.push(NamedCheck { name: name.into(), passed: ok, witness: if ok { None } else { witness } })
    };
    let bad: Vec<usize> = (0..32)
        .filter(|&k| !(check_hopf_morphism(&hd, &hd, &taus[k]) && taus[k].inverse().is_ok()))
        .map(|k| k + 1)
        .collect();
    push("each tau is a Hopf automorphism", bad.is_empty(), Some(format!("tau{:?}", bad)));
    push("tau1 is the identity", taus[0].is_identity(), Some("tau1".into()));

    let keys: Vec<Vec<String>> = taus.iter().map(key).collect();
    let distinct: BTreeSet<&Vec<String>> = keys.iter().collect();
    push("the 32 maps are distinct", distinct.len() == 32, Some(format!("{} distinct", distinct.len())));

    let find = |m: &Matrix| keys.iter().position(|k| *k == key(m));
    let mut closure_fail = None;
    'outer: for i in 0..32 {
        for j in 0..32 {
            if find(&(&taus[i] * &taus[j])).is_none() {
                closure_fail = Some(format!("tau{} o tau{}", i + 1, j + 1));
                break 'outer;
            }
        }
    }
    push("closed under composition", closure_fail.is_none(), closure_fail);

    // closure of the generators tau2, tau5, tau9, tau17
    let mut group: Vec<Matrix> = vec![Matrix::identity(16)];
    let gens = [&taus[1], &taus[4], &taus[8], &taus[16]];
    let mut frontier = group.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = x * g;
                if !group.contains(&y) {
                    group.push(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let order = group.len();
    push("generated group has order 32", order == 32, Some(format!("order {order}")));

    let t = |k: usize| &taus[k - 1];
    let id = Matrix::identity(16);
    let sq = |m: &Matrix| m * m;
    let rels: Vec<(&str, bool)> = vec![
        ("tau2^2 = 1", sq(t(2)) == id),
        ("tau5^2 = 1", sq(t(5)) == id),
        ("tau9^2 = 1", sq(t(9)) == id),
        ("tau17^4 = 1", sq(&sq(t(17))) == id),
        ("tau17^2 != 1", sq(t(17)) != id),
        ("tau2 tau5 = tau5 tau2", t(2) * t(5) == t(5) * t(2)),
        ("tau2 tau9 = tau9 tau2", t(2) * t(9) == t(9) * t(2)),
        ("tau5 tau9 = tau9 tau5", t(5) * t(9) == t(9) * t(5)),
        ("tau5 tau17 = tau17 tau5", t(5) * t(17) == t(17) * t(5)),
        ("tau17 tau5 = tau9 tau17 tau9", t(17) * t(5) == &(t(9) * t(17)) * t(9)),
    ];
    for (name, ok) in rels {
        push(name, ok, Some("matrices differ".into()));
    }
    let mut errata = Vec::new();
    if t(2) * t(17) != t(17) * t(2) {
        let central: Vec<String> = (1..=32)
            .filter(|&i| (1..=32).all(|j| t(i) * t(j) == t(j) * t(i)))
            .map(|i| format!("tau{i}"))
            .collect();
        errata.push(NamedCheck {
            name: "tau2 tau17 = tau17 tau2".into(),
            passed: false,
            witness: Some(format!(
                "tau2 tau17 (d) = tau17(d) a but tau17 tau2 (d) = tau17(d) abc; central elements: {}",
                central.join(", ")
            )),
        });
    }
    AutomorphismReport { checks, group_order: order, errata }
}
