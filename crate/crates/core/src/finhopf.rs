//! Finite-dimensional Hopf algebras given by structure constants.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse_expr, Target};
use crate::linalg::{roots_in_field, span_basis, Matrix};
use crate::scalar::Scalar;

/// Coordinates with respect to the basis of some `HopfData`.
pub type Element = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq)]
pub struct HopfData {
    pub name: String,
    basis: Vec<String>,
    // (i * dim + j) -> nonzero (k, coefficient of e_k in e_i e_j)
    mul: Vec<Vec<(usize, Scalar)>>,
    unit: Element,
    // i -> nonzero (j, k, coefficient of e_j (x) e_k in Delta(e_i))
    comul: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
    // column j = S(e_j)
    antipode: Matrix,
    generators: Vec<(String, Element)>,
    // basis element k as a word in the generators, if known
    spelling: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn zero(dim: usize) -> Element {
    vec![Scalar::zero(); dim]
}

pub fn basis_vector(dim: usize, i: usize) -> Element {
    let mut v = zero(dim);
    v[i] = Scalar::one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

fn axpy(acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

impl HopfData {
    /// Assembles a Hopf algebra from dense structure constants.
    ///
    /// `mul(i, j)` returns the coordinates of `e_i e_j`, `comul(i)` the
    /// coordinates of `Delta(e_i)` in the basis `e_j (x) e_k` (index
    /// `j * dim + k`).
    pub fn from_fns(
        name: impl Into<String>,
        basis: Vec<String>,
        mut mul: impl FnMut(usize, usize) -> Element,
        unit: Element,
        mut comul: impl FnMut(usize) -> Element,
        counit: Vec<Scalar>,
        antipode: Matrix,
    ) -> Result<Self> {
        let dim = basis.len();
        if dim == 0 {
            return Err(Error::Dimension("empty basis".into()));
        }
        if unit.len() != dim || counit.len() != dim {
            return Err(Error::Dimension("unit/counit length differs from basis".into()));
        }
        if antipode.rows() != dim || antipode.cols() != dim {
            return Err(Error::Dimension("antipode shape differs from basis".into()));
        }
        let mut m = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = mul(i, j);
                if v.len() != dim {
                    return Err(Error::Dimension(format!("product e{i}*e{j} has wrong length")));
                }
                m.push(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        let mut cm = Vec::with_capacity(dim);
        for i in 0..dim {
            let v = comul(i);
            if v.len() != dim * dim {
                return Err(Error::Dimension(format!("coproduct of e{i} has wrong length")));
            }
            cm.push(
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(p, c)| (p / dim, p % dim, c))
                    .collect(),
            );
        }
        Ok(HopfData {
            name: name.into(),
            basis,
            mul: m,
            unit,
            comul: cm,
            counit,
            antipode,
            generators: Vec::new(),
            spelling: None,
        })
    }

    /// Group algebra of a finite group given by its multiplication table.
    pub fn group_algebra(name: &str, names: Vec<String>, table: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = names.len();
        let inverse: Vec<usize> = (0..n)
            .map(|g| (0..n).find(|&h| table(g, h) == 0).ok_or_else(|| Error::Invalid("no inverse".into())))
            .collect::<Result<_>>()?;
        let mut s = Matrix::zeros(n, n);
        for g in 0..n {
            s[(inverse[g], g)] = Scalar::one();
        }
        let mut h = HopfData::from_fns(
            name,
            names.clone(),
            |i, j| basis_vector(n, table(i, j)),
            basis_vector(n, 0),
            |i| basis_vector(n * n, i * n + i),
            vec![Scalar::one(); n],
            s,
        )?;
        h.generators = names.into_iter().enumerate().map(|(i, nm)| (nm, basis_vector(n, i))).collect();
        Ok(h)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn counit_vector(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn mul_terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.mul[i * self.dim() + j]
    }

    pub fn comul_terms(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.comul[i]
    }

    pub fn set_generators(&mut self, gens: Vec<(String, Element)>, spelling: Option<Vec<Vec<usize>>>) {
        self.generators = gens;
        self.spelling = spelling;
    }

    pub fn generators(&self) -> &[(String, Element)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&Element> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    pub fn spelling(&self) -> Option<&[Vec<usize>]> {
        self.spelling.as_deref()
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn basis_vec(&self, i: usize) -> Element {
        basis_vector(self.dim(), i)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        let n = self.dim();
        let mut out = zero(n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.mul_terms(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn comul(&self, x: &[Scalar]) -> Element {
        let n = self.dim();
        let mut out = zero(n * n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, k, c) in &self.comul[i] {
                out[j * n + k] += a * c;
            }
        }
        out
    }

    pub fn counit(&self, x: &[Scalar]) -> Scalar {
        x.iter().zip(&self.counit).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()
    }

    pub fn apply_antipode(&self, x: &[Scalar]) -> Element {
        self.antipode.mul_vec(x)
    }

    /// Multiplication in `H (x) H`.
    pub fn mul2(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        let n = self.dim();
        let mut out = zero(n * n);
        for (p, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k1, c1) in self.mul_terms(p / n, q / n) {
                    for (k2, c2) in self.mul_terms(p % n, q % n) {
                        out[k1 * n + k2] += &ab * &(c1 * c2);
                    }
                }
            }
        }
        out
    }

    /// `x^k`.
    pub fn pow(&self, x: &[Scalar], k: u32) -> Element {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Evaluates an expression in the generators, e.g. `(1/2)*(1+b*c)*d`.
    pub fn eval(&self, src: &str) -> Result<Element> {
        parse_expr(src)?.eval(self)
    }

    /// Human-readable form of an element in basis names.
    pub fn format(&self, x: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = &self.basis[i];
            parts.push(if c.is_one() { b.clone() } else { format!("({c})*{b}") });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    fn name_triple(&self, idx: &[usize]) -> String {
        let names: Vec<&str> = idx.iter().map(|&i| self.basis[i].as_str()).collect();
        format!("({})", names.join(", "))
    }

    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();

        let assoc = triples
            .par_iter()
            .find_first(|&&(i, j, k)| {
                let mut lhs = zero(n);
                for (m, c) in self.mul_terms(i, j) {
                    for (t, d) in self.mul_terms(*m, k) {
                        lhs[*t] += c * d;
                    }
                }
                let mut rhs = zero(n);
                for (m, c) in self.mul_terms(j, k) {
                    for (t, d) in self.mul_terms(i, *m) {
                        rhs[*t] += c * d;
                    }
                }
                lhs != rhs
            })
            .map(|&(i, j, k)| self.name_triple(&[i, j, k]));

        let unit = (0..n)
            .find(|&i| {
                let e = self.basis_vec(i);
                self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e
            })
            .map(|i| self.name_triple(&[i]));

        let coassoc = (0..n)
            .into_par_iter()
            .find_first(|&i| {
                let mut lhs = zero(n * n * n);
                let mut rhs = zero(n * n * n);
                for (j, k, c) in &self.comul[i] {
                    for (p, q, d) in &self.comul[*j] {
                        lhs[(p * n + q) * n + k] += c * d;
                    }
                    for (p, q, d) in &self.comul[*k] {
                        rhs[(j * n + p) * n + q] += c * d;
                    }
                }
                lhs != rhs
            })
            .map(|i| self.name_triple(&[i]));

        let counit = (0..n)
            .find(|&i| {
                let mut l = zero(n);
                let mut r = zero(n);
                for (j, k, c) in &self.comul[i] {
                    l[*k] += c * &self.counit[*j];
                    r[*j] += c * &self.counit[*k];
                }
                let e = self.basis_vec(i);
                l != e || r != e
            })
            .map(|i| self.name_triple(&[i]));

        let bialg = {
            let one2 = {
                let mut v = zero(n * n);
                for (p, a) in self.unit.iter().enumerate() {
                    for (q, b) in self.unit.iter().enumerate() {
                        if !a.is_zero() && !b.is_zero() {
                            v[p * n + q] = a * b;
                        }
                    }
                }
                v
            };
            if self.comul(&self.unit) != one2 || !self.counit(&self.unit).is_one() {
                Some("(1)".to_string())
            } else {
                let deltas: Vec<Element> = (0..n).map(|i| self.comul(&self.basis_vec(i))).collect();
                pairs
                    .par_iter()
                    .find_first(|&&(i, j)| {
                        let mut prod = zero(n);
                        for (k, c) in self.mul_terms(i, j) {
                            prod[*k] = c.clone();
                        }
                        self.comul(&prod) != self.mul2(&deltas[i], &deltas[j])
                            || self.counit(&prod) != &self.counit[i] * &self.counit[j]
                    })
                    .map(|&(i, j)| self.name_triple(&[i, j]))
            }
        };

        let antipode = (0..n)
            .find(|&i| {
                let mut l = zero(n);
                let mut r = zero(n);
                for (j, k, c) in &self.comul[i] {
                    let sj = self.antipode.column(*j);
                    let sk = self.antipode.column(*k);
                    axpy(&mut l, c, &self.mul(&sj, &self.basis_vec(*k)));
                    axpy(&mut r, c, &self.mul(&self.basis_vec(*j), &sk));
                }
                let target: Element = self.unit.iter().map(|u| u * &self.counit[i]).collect();
                l != target || r != target
            })
            .map(|i| self.name_triple(&[i]));

        let mk = |name: &str, w: Option<String>| AxiomCheck { name: name.into(), passed: w.is_none(), witness: w };
        AxiomReport {
            checks: vec![
                mk("associativity", assoc),
                mk("unit", unit),
                mk("coassociativity", coassoc),
                mk("counit", counit),
                mk("bialgebra", bialg),
                mk("antipode", antipode),
            ],
        }
    }

    /// Solves `m(S (x) id) Delta = eta epsilon` for S; `None` when singular.
    pub fn solve_antipode(&self) -> Option<Matrix> {
        let n = self.dim();
        // unknowns S[r][j] at index r * n + j; equation per (i, t)
        let mut a = Matrix::zeros(n * n, n * n);
        let mut b = Matrix::zeros(n * n, 1);
        for i in 0..n {
            for (j, k, c) in &self.comul[i] {
                for r in 0..n {
                    for (t, d) in self.mul_terms(r, *k) {
                        let row = i * n + t;
                        a[(row, r * n + j)] += c * d;
                    }
                }
            }
            for t in 0..n {
                b[(i * n + t, 0)] = &self.unit[t] * &self.counit[i];
            }
        }
        let sol = a.solve(&b)?;
        if a.rank() < n * n {
            return None;
        }
        let mut s = Matrix::zeros(n, n);
        for r in 0..n {
            for j in 0..n {
                s[(r, j)] = sol[(r * n + j, 0)].clone();
            }
        }
        Some(s)
    }

    pub fn with_antipode(mut self, s: Matrix) -> Self {
        self.antipode = s;
        self
    }

    /// All group-like elements. Characters of the dual algebra are found as
    /// joint eigenvectors of the transposed regular action on the
    /// annihilator of the commutator ideal.
    pub fn group_likes(&self) -> Result<Vec<Element>> {
        let n = self.dim();
        let dual_mul = |i: usize, j: usize| -> Element {
            let mut v = zero(n);
            for k in 0..n {
                for (p, q, c) in &self.comul[k] {
                    if *p == i && *q == j {
                        v[k] += c;
                    }
                }
            }
            v
        };
        let dual_table: Vec<Vec<Element>> = (0..n).map(|i| (0..n).map(|j| dual_mul(i, j)).collect()).collect();
        let dmul = |x: &[Scalar], j: usize, left: bool| -> Element {
            let mut out = zero(n);
            for (i, a) in x.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let prod = if left { &dual_table[j][i] } else { &dual_table[i][j] };
                axpy(&mut out, a, prod);
            }
            out
        };
        // commutator ideal in H*
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c: Element = dual_table[i][j].iter().zip(&dual_table[j][i]).map(|(a, b)| a - b).collect();
                if !is_zero(&c) {
                    gens.push(c);
                }
            }
        }
        let mut ideal = span_basis(&gens);
        loop {
            let mut more = ideal.clone();
            for v in &ideal {
                for j in 0..n {
                    more.push(dmul(v, j, true));
                    more.push(dmul(v, j, false));
                }
            }
            let next = span_basis(&more);
            if next.len() == ideal.len() {
                break;
            }
            ideal = next;
        }
        let w_basis: Vec<Element> = if ideal.is_empty() {
            (0..n).map(|i| self.basis_vec(i)).collect()
        } else {
            Matrix::from_rows(ideal).expect("rectangular").nullspace()
        };
        let r = w_basis.len();
        let bmat = Matrix::from_columns(&w_basis)?;
        // operator x -> (e^i (x) id) Delta(x), restricted to W
        let mut ops = Vec::new();
        for i in 0..n {
            let mut m = Matrix::zeros(n, n);
            for k in 0..n {
                for (p, q, c) in &self.comul[k] {
                    if *p == i {
                        m[(*q, k)] += c;
                    }
                }
            }
            let mb = &m * &bmat;
            let rest = bmat
                .solve(&mb)
                .ok_or_else(|| Error::Inconclusive("annihilator is not invariant".into()))?;
            ops.push(rest);
        }
        let mut spaces: Vec<Matrix> = vec![Matrix::identity(r)];
        for op in &ops {
            let mut next = Vec::new();
            for q in spaces {
                let s = q.cols();
                if s == 1 {
                    let v = q.column(0);
                    let ov = op.mul_vec(&v);
                    if rank_one_multiple(&v, &ov).is_none() {
                        return Err(Error::Inconclusive("joint eigenvector split failed".into()));
                    }
                    next.push(q);
                    continue;
                }
                let oq = op * &q;
                let restricted = q.solve(&oq).ok_or_else(|| Error::Inconclusive("subspace not invariant".into()))?;
                let roots = roots_in_field(&restricted.char_poly())?;
                let mut total = 0;
                for (lambda, _) in roots {
                    let mut shifted = restricted.clone();
                    for t in 0..s {
                        shifted[(t, t)] -= &lambda;
                    }
                    let ker = shifted.nullspace();
                    total += ker.len();
                    let kmat = Matrix::from_columns(&ker)?;
                    next.push(&q * &kmat);
                }
                if total != s {
                    return Err(Error::Inconclusive("eigenvalues outside the field or not diagonalizable".into()));
                }
            }
            spaces = next;
        }
        let mut out = Vec::new();
        for q in spaces {
            if q.cols() != 1 {
                return Err(Error::Inconclusive("degenerate joint eigenspace".into()));
            }
            let x = bmat.mul_vec(&q.column(0));
            let e = self.counit(&x);
            if e.is_zero() {
                return Err(Error::Inconclusive("eigenvector with zero counit".into()));
            }
            let inv = e.inv()?;
            let x: Element = x.iter().map(|c| c * &inv).collect();
            let xx = {
                let mut v = zero(n * n);
                for (p, a) in x.iter().enumerate() {
                    for (q, b) in x.iter().enumerate() {
                        if !a.is_zero() && !b.is_zero() {
                            v[p * n + q] = a * b;
                        }
                    }
                }
                v
            };
            if self.comul(&x) != xx {
                return Err(Error::Inconclusive("candidate is not group-like".into()));
            }
            out.push(x);
        }
        out.sort_by_key(|x| {
            let lead = x.iter().position(|c| !c.is_zero()).unwrap_or(n);
            (lead, x.iter().map(|c| c.to_string()).collect::<Vec<_>>())
        });
        Ok(out)
    }

    /// Basis of `{ x : Delta(x) = x (x) g + h (x) x }`.
    pub fn skew_primitives(&self, g: &[Scalar], h: &[Scalar]) -> Vec<Element> {
        let n = self.dim();
        let mut m = Matrix::zeros(n * n, n);
        for k in 0..n {
            for (p, q, c) in &self.comul[k] {
                m[(p * n + q, k)] += c;
            }
            for q in 0..n {
                if !g[q].is_zero() {
                    m[(k * n + q, k)] -= &g[q];
                }
            }
            for p in 0..n {
                if !h[p].is_zero() {
                    m[(p * n + k, k)] -= &h[p];
                }
            }
        }
        m.nullspace()
    }

    /// The dual Hopf algebra on the dual basis.
    pub fn dualize(&self) -> HopfData {
        let n = self.dim();
        let basis = self.basis.iter().map(|b| dual_name(b)).collect();
        let mut dmul = vec![Vec::new(); n * n];
        for k in 0..n {
            for (i, j, c) in &self.comul[k] {
                dmul[i * n + j].push((k, c.clone()));
            }
        }
        for v in dmul.iter_mut() {
            v.sort_by_key(|t| t.0);
        }
        let mut dcomul = vec![Vec::new(); n];
        for j in 0..n {
            for k in 0..n {
                for (i, c) in self.mul_terms(j, k) {
                    dcomul[*i].push((j, k, c.clone()));
                }
            }
        }
        HopfData {
            name: dual_name(&self.name),
            basis,
            mul: dmul,
            unit: self.counit.clone(),
            comul: dcomul,
            counit: self.unit.clone(),
            antipode: self.antipode.transpose(),
            generators: Vec::new(),
            spelling: None,
        }
    }

    /// Same structure constants (ignoring names and generators).
    pub fn same_structure(&self, other: &HopfData) -> bool {
        self.dim() == other.dim()
            && self.mul == other.mul
            && self.unit == other.unit
            && self.counit == other.counit
            && self.antipode == other.antipode
            && (0..self.dim()).all(|i| {
                let mut a = self.comul[i].clone();
                let mut b = other.comul[i].clone();
                a.sort_by_key(|t| (t.0, t.1));
                b.sort_by_key(|t| (t.0, t.1));
                a == b
            })
    }

    pub fn to_json(&self) -> HopfJson {
        let n = self.dim();
        let mut mul = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.mul_terms(i, j) {
                    mul.push((i, j, *k, c.to_string()));
                }
            }
        }
        let mut comul = Vec::new();
        for i in 0..n {
            let mut terms = self.comul[i].clone();
            terms.sort_by_key(|t| (t.0, t.1));
            for (j, k, c) in terms {
                comul.push((i, j, k, c.to_string()));
            }
        }
        let sparse = |v: &[Scalar]| -> Vec<(usize, String)> {
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.to_string())).collect()
        };
        let mut antipode = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = &self.antipode[(i, j)];
                if !c.is_zero() {
                    antipode.push((i, j, c.to_string()));
                }
            }
        }
        HopfJson {
            schema: 1,
            name: self.name.clone(),
            basis: self.basis.clone(),
            mul,
            unit: sparse(&self.unit),
            comul,
            counit: sparse(&self.counit),
            antipode,
            generators: self.generators.iter().map(|(nm, e)| (nm.clone(), sparse(e))).collect(),
        }
    }

    pub fn from_json(j: &HopfJson) -> Result<HopfData> {
        let n = j.basis.len();
        let s = |t: &str| -> Result<Scalar> { t.parse() };
        let idx = |i: usize| -> Result<usize> {
            if i < n {
                Ok(i)
            } else {
                Err(Error::Dimension(format!("index {i} out of range for dimension {n}")))
            }
        };
        let dense = |v: &[(usize, String)]| -> Result<Element> {
            let mut out = zero(n);
            for (i, c) in v {
                out[idx(*i)?] = s(c)?;
            }
            Ok(out)
        };
        let mut mul = vec![zero(n); n * n];
        for (i, jj, k, c) in &j.mul {
            mul[idx(*i)? * n + idx(*jj)?][idx(*k)?] = s(c)?;
        }
        let mut comul = vec![zero(n * n); n];
        for (i, a, b, c) in &j.comul {
            comul[idx(*i)?][idx(*a)? * n + idx(*b)?] = s(c)?;
        }
        let mut ant = Matrix::zeros(n, n);
        for (a, b, c) in &j.antipode {
            ant[(idx(*a)?, idx(*b)?)] = s(c)?;
        }
        let mut h = HopfData::from_fns(
            j.name.clone(),
            j.basis.clone(),
            |a, b| mul[a * n + b].clone(),
            dense(&j.unit)?,
            |a| comul[a].clone(),
            dense(&j.counit)?,
            ant,
        )?;
        let gens = j.generators.iter().map(|(nm, v)| Ok((nm.clone(), dense(v)?))).collect::<Result<_>>()?;
        h.generators = gens;
        Ok(h)
    }
}

fn dual_name(b: &str) -> String {
    match b.strip_suffix('*') {
        Some(s) => s.to_string(),
        None => format!("{b}*"),
    }
}

fn rank_one_multiple(v: &[Scalar], w: &[Scalar]) -> Option<Scalar> {
    let p = v.iter().position(|c| !c.is_zero())?;
    let l = w[p].checked_div(&v[p]).ok()?;
    v.iter().zip(w).all(|(a, b)| &(a * &l) == b).then_some(l)
}

/// JSON form: basis names plus sparse tensor entries as scalar strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfJson {
    pub schema: u32,
    pub name: String,
    pub basis: Vec<String>,
    /// `(i, j, k, c)`: `e_i e_j` has coefficient `c` at `e_k`.
    pub mul: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<(usize, String)>,
    /// `(i, j, k, c)`: `Delta(e_i)` has coefficient `c` at `e_j (x) e_k`.
    pub comul: Vec<(usize, usize, usize, String)>,
    pub counit: Vec<(usize, String)>,
    /// `(i, j, c)`: `S(e_j)` has coefficient `c` at `e_i`.
    pub antipode: Vec<(usize, usize, String)>,
    #[serde(default)]
    pub generators: BTreeMap<String, Vec<(usize, String)>>,
}

impl Target for HopfData {
    type Value = Element;
    fn scalar(&self, s: Scalar) -> Element {
        self.unit.iter().map(|u| u * &s).collect()
    }
    fn ident(&self, name: &str) -> Result<Element> {
        self.generator(name)
            .cloned()
            .or_else(|| self.basis_index(name).map(|i| self.basis_vec(i)))
            .ok_or_else(|| Error::UnknownName(name.into()))
    }
    fn add(&self, a: Element, b: Element) -> Result<Element> {
        Ok(a.iter().zip(&b).map(|(x, y)| x + y).collect())
    }
    fn mul(&self, a: Element, b: Element) -> Result<Element> {
        Ok(HopfData::mul(self, &a, &b))
    }
    fn scale(&self, a: Element, s: &Scalar) -> Element {
        a.iter().map(|x| x * s).collect()
    }
    fn as_scalar(&self, a: &Element) -> Option<Scalar> {
        let p = self.unit.iter().position(|c| !c.is_zero())?;
        let l = a[p].checked_div(&self.unit[p]).ok()?;
        a.iter().zip(&self.unit).all(|(x, u)| x == &(u * &l)).then_some(l)
    }
}

/// Is `f` (column `j` = image of `e_j`) a bialgebra map `h1 -> h2`? Returns
/// the first violated identity with a witness.
pub fn hopf_morphism_defect(h1: &HopfData, h2: &HopfData, f: &Matrix) -> Option<String> {
    let (n1, n2) = (h1.dim(), h2.dim());
    if f.rows() != n2 || f.cols() != n1 {
        return Some("shape".into());
    }
    let img: Vec<Element> = (0..n1).map(|j| f.column(j)).collect();
    let apply = |x: &[Scalar]| f.mul_vec(x);
    if apply(h1.unit()) != *h2.unit() {
        return Some("unital".into());
    }
    for i in 0..n1 {
        for j in 0..n1 {
            let mut prod = zero(n1);
            for (k, c) in h1.mul_terms(i, j) {
                prod[*k] = c.clone();
            }
            if apply(&prod) != h2.mul(&img[i], &img[j]) {
                return Some(format!("multiplicative at ({}, {})", h1.basis[i], h1.basis[j]));
            }
        }
    }
    for i in 0..n1 {
        if h2.counit(&img[i]) != h1.counit[i] {
            return Some(format!("counital at {}", h1.basis[i]));
        }
        let lhs = h2.comul(&img[i]);
        let mut rhs = zero(n2 * n2);
        for (j, k, c) in h1.comul_terms(i) {
            for (p, a) in img[*j].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (q, b) in img[*k].iter().enumerate() {
                    if !b.is_zero() {
                        rhs[p * n2 + q] += c * &(a * b);
                    }
                }
            }
        }
        if lhs != rhs {
            return Some(format!("comultiplicative at {}", h1.basis[i]));
        }
    }
    None
}

pub fn check_hopf_morphism(h1: &HopfData, h2: &HopfData, f: &Matrix) -> bool {
    hopf_morphism_defect(h1, h2, f).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn z2() -> HopfData {
        HopfData::group_algebra("kZ2", vec!["1".into(), "g".into()], |i, j| (i + j) % 2).unwrap()
    }

    #[test]
    fn z2_axioms_and_group_likes() {
        let h = z2();
        assert!(h.verify_axioms().all_passed());
        let g = h.group_likes().unwrap();
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn dual_of_z2_is_function_algebra() {
        let h = z2();
        let d = h.dualize();
        assert!(d.verify_axioms().all_passed());
        // idempotents e^1, e^g
        let e0 = d.basis_vec(0);
        assert_eq!(d.mul(&e0, &e0), e0);
        assert!(is_zero(&d.mul(&e0, &d.basis_vec(1))));
        assert!(d.dualize().same_structure(&h));
        assert_eq!(d.group_likes().unwrap().len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let h = z2();
        let j = h.to_json();
        let back = HopfData::from_json(&j).unwrap();
        assert!(back.same_structure(&h));
        let text = serde_json::to_string(&j).unwrap();
        let j2: HopfJson = serde_json::from_str(&text).unwrap();
        assert_eq!(j, j2);
    }

    #[test]
    fn antipode_solve_on_group_algebra() {
        let h = z2();
        assert_eq!(h.solve_antipode().unwrap(), *h.antipode());
    }

    #[test]
    fn broken_z2_is_caught() {
        let h = HopfData::from_fns(
            "bad",
            vec!["1".into(), "g".into()],
            |i, j| basis_vector(2, (i + j) % 2),
            basis_vector(2, 0),
            |i| basis_vector(4, i * 2 + i),
            vec![Scalar::one(), Scalar::from_int(-1)],
            Matrix::identity(2),
        )
        .unwrap();
        let r = h.verify_axioms();
        assert!(!r.all_passed());
        assert!(r.failures().all(|f| f.witness.is_some()));
    }
}
