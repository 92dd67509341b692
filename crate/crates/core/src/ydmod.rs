//! Yetter-Drinfeld modules over a `HopfData`, their braidings and the
//! transfer to the dual Hopf algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finhopf::{zero, Element, HopfData};
use crate::linalg::{eval_poly, roots_in_field, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct YdModule {
    hopf: Arc<HopfData>,
    pub name: String,
    names: Vec<String>,
    // one matrix per basis element of H; column j = image of v_j
    action: Vec<Matrix>,
    // row h * dim + i, column j: coefficient of e_h (x) v_i in delta(v_j)
    coaction: Matrix,
    // summands as (start, len)
    blocks: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YdCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YdReport {
    pub checks: Vec<YdCheck>,
}

impl YdReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn first_error(&self) -> Option<Error> {
        self.checks.iter().find(|c| !c.passed).map(|c| Error::Axiom {
            identity: c.name.clone(),
            witness: c.witness.clone().unwrap_or_default(),
        })
    }
}

/// Builds the coaction matrix from `delta(v_j) = sum_i h_ij (x) v_i`, where
/// `elems[j][i] = h_ij`.
pub fn coaction_from_elements(h: &HopfData, elems: &[Vec<Element>]) -> Result<Matrix> {
    let n = h.dim();
    let d = elems.len();
    let mut c = Matrix::zeros(n * d, d);
    for (j, col) in elems.iter().enumerate() {
        if col.len() != d {
            return Err(Error::Shape(format!("coaction of v{} has {} entries", j + 1, col.len())));
        }
        for (i, e) in col.iter().enumerate() {
            if e.len() != n {
                return Err(Error::Dimension("coaction entry is not an element of H".into()));
            }
            for (hh, s) in e.iter().enumerate() {
                c[(hh * d + i, j)] = s.clone();
            }
        }
    }
    Ok(c)
}

impl YdModule {
    /// Extends generator matrices to all basis elements through the spelling
    /// of the basis of `H`, then validates.
    pub fn build(
        h: Arc<HopfData>,
        name: &str,
        basis_names: Vec<String>,
        generator_actions: &BTreeMap<String, Matrix>,
        coaction: Matrix,
    ) -> Result<YdModule> {
        let dim = basis_names.len();
        let spelling = h
            .spelling()
            .ok_or_else(|| Error::Invalid(format!("{} has no generator spelling", h.name)))?
            .to_vec();
        let mut gens = Vec::new();
        for (gname, _) in h.generators() {
            let m = generator_actions.get(gname).ok_or_else(|| Error::UnknownName(gname.clone()))?;
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(format!("[{gname}] is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
            }
            gens.push(m.clone());
        }
        for k in generator_actions.keys() {
            if h.generator(k).is_none() {
                return Err(Error::UnknownName(k.clone()));
            }
        }
        let action = spelling
            .iter()
            .map(|word| word.iter().fold(Matrix::identity(dim), |acc, &g| &acc * &gens[g]))
            .collect();
        YdModule::from_parts(h, name, basis_names, action, coaction)
    }

    pub fn from_parts(
        h: Arc<HopfData>,
        name: &str,
        basis_names: Vec<String>,
        action: Vec<Matrix>,
        coaction: Matrix,
    ) -> Result<YdModule> {
        let m = YdModule::unchecked(h, name, basis_names, action, coaction)?;
        let report = m.validate();
        match report.first_error() {
            Some(e) => Err(e),
            None => Ok(m),
        }
    }

    /// Shape-checked but not validated against the axioms.
    pub fn unchecked(
        h: Arc<HopfData>,
        name: &str,
        basis_names: Vec<String>,
        action: Vec<Matrix>,
        coaction: Matrix,
    ) -> Result<YdModule> {
        let dim = basis_names.len();
        if dim == 0 {
            return Err(Error::Dimension("empty module".into()));
        }
        if action.len() != h.dim() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Shape("action matrices".into()));
        }
        if coaction.rows() != h.dim() * dim || coaction.cols() != dim {
            return Err(Error::Shape("coaction matrix".into()));
        }
        Ok(YdModule { hopf: h, name: name.into(), names: basis_names, action, coaction, blocks: vec![(0, dim)] })
    }

    pub fn hopf(&self) -> &Arc<HopfData> {
        &self.hopf
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn action(&self, basis_index: usize) -> &Matrix {
        &self.action[basis_index]
    }

    pub fn coaction(&self) -> &Matrix {
        &self.coaction
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    /// Action of an arbitrary element of `H`.
    pub fn act(&self, h: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (i, c) in h.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.action[i].scale(c);
            }
        }
        m
    }

    /// `delta(v)` as a vector in `H (x) V` (index `h * dim + i`).
    pub fn delta(&self, v: &[Scalar]) -> Element {
        self.coaction.mul_vec(v)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::Shape("name count".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    /// Reorders the basis: new basis vector `k` is old vector `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<YdModule> {
        let d = self.dim();
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..d).collect::<Vec<_>>() {
            return Err(Error::Invalid("not a permutation".into()));
        }
        let mut p = Matrix::zeros(d, d); // p[old][new]
        for (new, &old) in perm.iter().enumerate() {
            p[(old, new)] = Scalar::one();
        }
        let pt = p.transpose();
        let action = self.action.iter().map(|m| &(&pt * m) * &p).collect();
        let n = self.hopf.dim();
        let mut co = Matrix::zeros(n * d, d);
        for h in 0..n {
            for (ni, &oi) in perm.iter().enumerate() {
                for (nj, &oj) in perm.iter().enumerate() {
                    co[(h * d + ni, nj)] = self.coaction[(h * d + oi, oj)].clone();
                }
            }
        }
        Ok(YdModule {
            hopf: self.hopf.clone(),
            name: self.name.clone(),
            names: perm.iter().map(|&o| self.names[o].clone()).collect(),
            action,
            coaction: co,
            blocks: vec![(0, d)],
        })
    }

    pub fn validate(&self) -> YdReport {
        let h = &*self.hopf;
        let n = h.dim();
        let d = self.dim();
        let hn = |i: usize| h.basis_names()[i].clone();
        let vn = |j: usize| self.names[j].clone();

        // module
        let mut module = None;
        if self.act(h.unit()) != Matrix::identity(d) {
            module = Some("(h=1)".to_string());
        }
        'm: for i in 0..n {
            if module.is_some() {
                break;
            }
            for j in 0..n {
                let lhs = &self.action[i] * &self.action[j];
                let mut rhs = Matrix::zeros(d, d);
                for (k, c) in h.mul_terms(i, j) {
                    rhs = &rhs + &self.action[*k].scale(c);
                }
                if lhs != rhs {
                    module = Some(format!("(h={}, h'={})", hn(i), hn(j)));
                    break 'm;
                }
            }
        }

        // comodule
        let mut comodule = None;
        for j in 0..d {
            let dv = self.coaction.column(j);
            let mut lhs = zero(n * n * d);
            let mut rhs = zero(n * n * d);
            let mut counit = zero(d);
            for hh in 0..n {
                for i in 0..d {
                    let c = &dv[hh * d + i];
                    if c.is_zero() {
                        continue;
                    }
                    for (p, q, e) in h.comul_terms(hh) {
                        lhs[(p * n + q) * d + i] += c * e;
                    }
                    let di = self.coaction.column(i);
                    for (t, e) in di.iter().enumerate() {
                        if !e.is_zero() {
                            rhs[(hh * n) * d + t] += c * e;
                        }
                    }
                    counit[i] += c * &h.counit_vector()[hh];
                }
            }
            let mut unit_vec = zero(d);
            unit_vec[j] = Scalar::one();
            if lhs != rhs || counit != unit_vec {
                comodule = Some(format!("(v={})", vn(j)));
                break;
            }
        }

        // compatibility
        let mut compat = None;
        if module.is_none() && comodule.is_none() {
            let s_cols: Vec<Element> = (0..n).map(|r| h.antipode().column(r)).collect();
            let mut conj: std::collections::HashMap<(usize, usize, usize), Vec<(usize, Scalar)>> =
                std::collections::HashMap::new();
            'c: for p in 0..n {
                let mut d2: Vec<(usize, usize, usize, Scalar)> = Vec::new();
                for (q, r, c) in h.comul_terms(p) {
                    for (q1, q2, c2) in h.comul_terms(*q) {
                        d2.push((*q1, *q2, *r, c * c2));
                    }
                }
                for j in 0..d {
                    let hv = self.action[p].column(j);
                    let lhs = self.delta(&hv);
                    let dv = self.coaction.column(j);
                    let mut rhs = zero(n * d);
                    for (q1, q2, r, c) in &d2 {
                        for hh in 0..n {
                            for u in 0..d {
                                let cc = &dv[hh * d + u];
                                if cc.is_zero() {
                                    continue;
                                }
                                let left = conj.entry((*q1, hh, *r)).or_insert_with(|| {
                                    let e = h.mul(&h.mul(&h.basis_vec(*q1), &h.basis_vec(hh)), &s_cols[*r]);
                                    e.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
                                });
                                let right = self.action[*q2].column(u);
                                let coef = c * cc;
                                for (x, a) in left.iter() {
                                    let x = *x;
                                    for (y, b) in right.iter().enumerate() {
                                        if !b.is_zero() {
                                            rhs[x * d + y] += &coef * &(a * b);
                                        }
                                    }
                                }
                            }
                        }
                    }
                    if lhs != rhs {
                        compat = Some(format!("(h={}, v={})", hn(p), vn(j)));
                        break 'c;
                    }
                }
            }
        } else {
            compat = Some("skipped: module or comodule check failed".into());
        }

        let mk = |name: &str, w: Option<String>| YdCheck { name: name.into(), passed: w.is_none(), witness: w };
        YdReport {
            checks: vec![mk("module", module), mk("comodule", comodule), mk("yd-compatibility", compat)],
        }
    }

    pub fn to_json(&self) -> YdJson {
        let mat = |m: &Matrix| -> Vec<Vec<String>> {
            (0..m.rows()).map(|i| m.row(i).iter().map(|s| s.to_string()).collect()).collect()
        };
        let mut generators = BTreeMap::new();
        for (g, e) in self.hopf.generators() {
            generators.insert(g.clone(), mat(&self.act(e)));
        }
        let d = self.dim();
        let mut coaction = Vec::new();
        for r in 0..self.coaction.rows() {
            for j in 0..d {
                let c = &self.coaction[(r, j)];
                if !c.is_zero() {
                    coaction.push((self.hopf.basis_names()[r / d].clone(), r % d, j, c.to_string()));
                }
            }
        }
        YdJson { schema: 1, name: self.name.clone(), hopf: self.hopf.name.clone(), basis: self.names.clone(), generators, coaction }
    }

    pub fn from_json(h: Arc<HopfData>, j: &YdJson) -> Result<YdModule> {
        let d = j.basis.len();
        let mut gens = BTreeMap::new();
        for (g, rows) in &j.generators {
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<Scalar>>>())
                .collect::<Result<Vec<_>>>()?;
            gens.insert(g.clone(), Matrix::from_rows(rows)?);
        }
        let mut co = Matrix::zeros(h.dim() * d, d);
        for (hname, i, jj, c) in &j.coaction {
            let hi = h.basis_index(hname).ok_or_else(|| Error::UnknownName(hname.clone()))?;
            if *i >= d || *jj >= d {
                return Err(Error::Dimension("coaction index".into()));
            }
            co[(hi * d + i, *jj)] = c.parse()?;
        }
        YdModule::build(h, &j.name, j.basis.clone(), &gens, co)
    }
}

/// JSON form: generator matrices plus sparse coaction entries
/// `(h, i, j, c)` meaning `delta(v_j)` has `c * h (x) v_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YdJson {
    pub schema: u32,
    pub name: String,
    pub hopf: String,
    pub basis: Vec<String>,
    pub generators: BTreeMap<String, Vec<Vec<String>>>,
    pub coaction: Vec<(String, usize, usize, String)>,
}

fn same_parent(m: &YdModule, n: &YdModule) -> Result<()> {
    if Arc::ptr_eq(&m.hopf, &n.hopf) || m.hopf.same_structure(&n.hopf) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{} and {} live over different Hopf algebras", m.name, n.name)))
    }
}

/// `c_{M,N}(m (x) w) = m_(-1) . w (x) m_(0)`; column `i * dimN + j`, row
/// `w * dimM + u`.
pub fn braiding(m: &YdModule, n: &YdModule) -> Result<Matrix> {
    same_parent(m, n)?;
    let (dm, dn) = (m.dim(), n.dim());
    let hd = m.hopf.dim();
    let mut c = Matrix::zeros(dn * dm, dm * dn);
    for i in 0..dm {
        for hh in 0..hd {
            for u in 0..dm {
                let coef = &m.coaction[(hh * dm + u, i)];
                if coef.is_zero() {
                    continue;
                }
                let act = &n.action[hh];
                for j in 0..dn {
                    for w in 0..dn {
                        let a = &act[(w, j)];
                        if !a.is_zero() {
                            c[(w * dm + u, i * dn + j)] += coef * a;
                        }
                    }
                }
            }
        }
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BraidedSpace {
    pub names: Vec<String>,
    pub c: Matrix,
}

impl BraidedSpace {
    pub fn new(names: Vec<String>, c: Matrix) -> Result<Self> {
        let d = names.len();
        if c.rows() != d * d || c.cols() != d * d {
            return Err(Error::Shape("braiding must be dim^2 x dim^2".into()));
        }
        Ok(BraidedSpace { names, c })
    }

    pub fn of(m: &YdModule) -> BraidedSpace {
        BraidedSpace { names: m.names.clone(), c: braiding(m, m).expect("same parent") }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn satisfies_braid_equation(&self) -> bool {
        let id = Matrix::identity(self.dim());
        let c1 = self.c.kron(&id);
        let c2 = id.kron(&self.c);
        &(&c1 * &c2) * &c1 == &(&c2 * &c1) * &c2
    }

    pub fn is_invertible(&self) -> bool {
        self.c.rank() == self.c.rows()
    }
}

pub fn direct_sum(name: &str, parts: &[&YdModule]) -> Result<YdModule> {
    let first = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
    for p in parts {
        same_parent(first, p)?;
    }
    let h = first.hopf.clone();
    let hd = h.dim();
    let d: usize = parts.iter().map(|p| p.dim()).sum();
    let mut names: Vec<String> = Vec::new();
    let mut action = vec![Matrix::zeros(d, d); hd];
    let mut co = Matrix::zeros(hd * d, d);
    let mut blocks = Vec::new();
    let mut off = 0;
    for p in parts {
        let pd = p.dim();
        for nm in &p.names {
            let mut cand = nm.clone();
            let mut k = 2;
            while names.contains(&cand) {
                cand = format!("{nm}_{k}");
                k += 1;
            }
            names.push(cand);
        }
        for (x, m) in action.iter_mut().enumerate() {
            for i in 0..pd {
                for j in 0..pd {
                    m[(off + i, off + j)] = p.action[x][(i, j)].clone();
                }
            }
        }
        for hh in 0..hd {
            for i in 0..pd {
                for j in 0..pd {
                    co[(hh * d + off + i, off + j)] = p.coaction[(hh * pd + i, j)].clone();
                }
            }
        }
        for (s, l) in &p.blocks {
            blocks.push((off + s, *l));
        }
        off += pd;
    }
    let mut m = YdModule::from_parts(h, name, names, action, co)?;
    m.blocks = blocks;
    Ok(m)
}

/// The same vector space as a Yetter-Drinfeld module over `hstar`, which
/// must be `h.dualize()`.
pub fn transfer_to_dual(m: &YdModule, hstar: &Arc<HopfData>) -> Result<YdModule> {
    let h = &*m.hopf;
    let n = h.dim();
    let d = m.dim();
    let s = h.antipode();
    // f . v = f(S(v_(-1))) v_(0)
    let mut action = vec![Matrix::zeros(d, d); n];
    for (k, act) in action.iter_mut().enumerate() {
        for j in 0..d {
            for hh in 0..n {
                let skh = &s[(k, hh)];
                if skh.is_zero() {
                    continue;
                }
                for u in 0..d {
                    let c = &m.coaction[(hh * d + u, j)];
                    if !c.is_zero() {
                        act[(u, j)] += skh * c;
                    }
                }
            }
        }
    }
    // delta(v) = sum_i S*^{-1}(h^i) (x) h_i . v
    let sstar_inv = hstar.antipode().inverse()?;
    let mut co = Matrix::zeros(n * d, d);
    for j in 0..d {
        for i in 0..n {
            let hv = m.action[i].column(j);
            for mm in 0..n {
                let c = &sstar_inv[(mm, i)];
                if c.is_zero() {
                    continue;
                }
                for (u, a) in hv.iter().enumerate() {
                    if !a.is_zero() {
                        co[(mm * d + u, j)] += c * a;
                    }
                }
            }
        }
    }
    let mut out = YdModule::from_parts(hstar.clone(), &format!("{}*", m.name), m.names.clone(), action, co)?;
    out.blocks = m.blocks.clone();
    Ok(out)
}

/// Basis of the linear maps `f: M -> N` with `f(h v) = phi(h) f(v)` and
/// `(phi (x) f) delta(v) = delta(f(v))`, where `phi` is an automorphism of
/// `H` given as a matrix (column `k` = image of basis vector `k`).
pub fn homs_along(m: &YdModule, n: &YdModule, phi: &Matrix) -> Vec<Matrix> {
    let (dm, dn) = (m.dim(), n.dim());
    let hd = m.hopf().dim();
    let images: Vec<Matrix> = (0..hd).map(|k| n.act(&phi.column(k))).collect();
    // residual of the unit map E_rs, stacked into one column per unknown
    let mut cols = Vec::with_capacity(dm * dn);
    for r in 0..dn {
        for s in 0..dm {
            let mut f = Matrix::zeros(dn, dm);
            f[(r, s)] = Scalar::one();
            let mut res = Vec::new();
            for k in 0..hd {
                let lhs = &f * m.action(k);
                let rhs = &images[k] * &f;
                res.extend((&lhs - &rhs).entries().iter().cloned());
            }
            for j in 0..dm {
                let dv = m.coaction().column(j);
                let mut lhs = zero(hd * dn);
                for h in 0..hd {
                    for i in 0..dm {
                        let c = &dv[h * dm + i];
                        if c.is_zero() {
                            continue;
                        }
                        let img = phi.column(h);
                        for (h2, e) in img.iter().enumerate() {
                            if !e.is_zero() {
                                for t in 0..dn {
                                    lhs[h2 * dn + t] += &(&(c * e) * &f[(t, i)]);
                                }
                            }
                        }
                    }
                }
                let rhs = n.delta(&f.column(j));
                res.extend(lhs.iter().zip(&rhs).map(|(x, y)| x - y));
            }
            cols.push(res);
        }
    }
    let Ok(sys) = Matrix::from_columns(&cols) else { return Vec::new() };
    sys.nullspace()
        .into_iter()
        .map(|v| {
            let mut f = Matrix::zeros(dn, dm);
            for r in 0..dn {
                for s in 0..dm {
                    f[(r, s)] = v[r * dm + s].clone();
                }
            }
            f
        })
        .collect()
}

pub fn is_involutive_pair(m: &YdModule, n: &YdModule) -> Result<bool> {
    let cmn = braiding(m, n)?;
    let cnm = braiding(n, m)?;
    Ok((&cnm * &cmn).is_identity())
}

/// Outcome of the search for `v != 0` with `c(v (x) v) = v (x) v`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricSearch {
    pub vector: Option<Element>,
    /// True when the search covered every line of `V`.
    pub exhaustive: bool,
}

enum BlockLines {
    Finite(Vec<Element>),
    /// every vector of the block is symmetric, or the block is too large;
    /// the listed vectors are a finite sample
    Sampled(Vec<Element>),
}

fn grid_vectors(dim: usize) -> Vec<Element> {
    let vals = [Scalar::zero(), Scalar::one(), Scalar::from_int(-1), Scalar::xi(), -Scalar::xi()];
    let mut out = Vec::new();
    let total = 5usize.pow(dim as u32);
    for mut code in 1..total {
        let mut v = Vec::with_capacity(dim);
        for _ in 0..dim {
            v.push(vals[code % 5].clone());
            code /= 5;
        }
        // first nonzero coordinate 1: one representative per line and unit
        if v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_one()) {
            out.push(v);
        }
    }
    out
}

fn symmetric_defect(c: &Matrix, d: usize, x: &[Scalar], y: &[Scalar]) -> bool {
    // c(x (x) y) == y (x) x
    let mut xy = zero(d * d);
    let mut yx = zero(d * d);
    for i in 0..d {
        for j in 0..d {
            xy[i * d + j] = &x[i] * &y[j];
            yx[i * d + j] = &y[i] * &x[j];
        }
    }
    c.mul_vec(&xy) == yx
}

impl YdModule {
    pub fn symmetric_search(&self) -> SymmetricSearch {
        let d = self.dim();
        let c = braiding(self, self).expect("same parent");
        let embed = |start: usize, v: &[Scalar]| {
            let mut e = zero(d);
            for (k, x) in v.iter().enumerate() {
                e[start + k] = x.clone();
            }
            e
        };
        let mut exhaustive = true;
        let mut per_block: Vec<Vec<Element>> = Vec::new();
        for &(start, len) in &self.blocks {
            let lines = match len {
                1 => {
                    let v = embed(start, &[Scalar::one()]);
                    BlockLines::Finite(if symmetric_defect(&c, d, &v, &v) { vec![v] } else { vec![] })
                }
                2 => self.lines_in_plane(&c, start),
                _ => {
                    let sample = if len <= 6 {
                        grid_vectors(len).into_iter().map(|v| embed(start, &v)).collect()
                    } else {
                        (0..len).map(|k| embed(start, &crate::finhopf::basis_vector(len, k))).collect()
                    };
                    BlockLines::Sampled(sample)
                }
            };
            per_block.push(match lines {
                BlockLines::Finite(v) => v,
                BlockLines::Sampled(v) => {
                    exhaustive = false;
                    v.into_iter().filter(|x| symmetric_defect(&c, d, x, x)).collect()
                }
            });
        }
        // v = sum of one symmetric line per chosen block; cross terms must
        // satisfy c(x (x) y) = y (x) x, which is scale invariant
        let nb = per_block.len();
        let mut choice: Vec<Option<usize>> = vec![None; nb];
        let found = search_combination(&c, d, &per_block, &mut choice, 0);
        SymmetricSearch { vector: found, exhaustive }
    }

    pub fn find_symmetric_vector(&self) -> Option<Element> {
        self.symmetric_search().vector
    }

    fn lines_in_plane(&self, c: &Matrix, start: usize) -> BlockLines {
        let d = self.dim();
        let e1 = {
            let mut v = zero(d);
            v[start] = Scalar::one();
            v
        };
        let e2 = {
            let mut v = zero(d);
            v[start + 1] = Scalar::one();
            v
        };
        let mut found = Vec::new();
        if symmetric_defect(c, d, &e2, &e2) {
            found.push(e2.clone());
        }
        // v = e1 + t e2: (c - id)(v (x) v) has quadratic coordinates in t
        let idx = |i: usize, j: usize| (start + i) * d + (start + j);
        let col = |k: usize| c.column(k);
        let (c11, c12, c21, c22) = (col(idx(0, 0)), col(idx(0, 1)), col(idx(1, 0)), col(idx(1, 1)));
        let mut polys: Vec<Vec<Scalar>> = Vec::new();
        for r in 0..d * d {
            let sub = |v: &Vec<Scalar>, k: usize| {
                let mut x = v[r].clone();
                if r == k {
                    x -= Scalar::one();
                }
                x
            };
            let p0 = sub(&c11, idx(0, 0));
            let p1 = &sub(&c12, idx(0, 1)) + &sub(&c21, idx(1, 0));
            let p2 = sub(&c22, idx(1, 1));
            if !(p0.is_zero() && p1.is_zero() && p2.is_zero()) {
                polys.push(vec![p0, p1, p2]);
            }
        }
        if polys.is_empty() {
            return BlockLines::Sampled(grid_vectors(2).into_iter().map(|v| {
                let mut e = zero(d);
                e[start] = v[0].clone();
                e[start + 1] = v[1].clone();
                e
            }).collect());
        }
        let mut inexact = false;
        let roots = match roots_in_field(&polys[0]) {
            Ok(r) => r,
            Err(_) => {
                inexact = true;
                Vec::new()
            }
        };
        for (t, _) in roots {
            if polys.iter().all(|p| eval_poly(p, &t).is_zero()) {
                let mut v = e1.clone();
                v[start + 1] = t;
                found.push(v);
            }
        }
        if inexact {
            BlockLines::Sampled(found)
        } else {
            BlockLines::Finite(found)
        }
    }
}

fn search_combination(
    c: &Matrix,
    d: usize,
    per_block: &[Vec<Element>],
    choice: &mut Vec<Option<usize>>,
    k: usize,
) -> Option<Element> {
    if k == per_block.len() {
        let picked: Vec<&Element> =
            choice.iter().enumerate().filter_map(|(b, ch)| ch.map(|i| &per_block[b][i])).collect();
        if picked.is_empty() {
            return None;
        }
        let mut v = zero(d);
        for p in &picked {
            for (a, b) in v.iter_mut().zip(p.iter()) {
                *a += b;
            }
        }
        return Some(v);
    }
    // leave block k out
    choice[k] = None;
    if let Some(v) = search_combination(c, d, per_block, choice, k + 1) {
        return Some(v);
    }
    for i in 0..per_block[k].len() {
        let x = &per_block[k][i];
        let compatible = choice[..k].iter().enumerate().all(|(b, ch)| match ch {
            None => true,
            Some(j) => {
                let y = &per_block[b][*j];
                symmetric_defect(c, d, x, y) && symmetric_defect(c, d, y, x)
            }
        });
        if compatible {
            choice[k] = Some(i);
            if let Some(v) = search_combination(c, d, per_block, choice, k + 1) {
                return Some(v);
            }
        }
    }
    choice[k] = None;
    None
}
