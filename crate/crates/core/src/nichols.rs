//! Graded dimensions of Nichols algebras from quantum symmetrizer ranks.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finhopf::Element;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::ydmod::{direct_sum, BraidedSpace, YdModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub degree: usize,
    pub tensor_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { degree: 8, tensor_dim: 20_000 }
    }
}

type SparseVec = BTreeMap<usize, Scalar>;

/// Braiding columns in sparse form: `cols[x * d + y]` lists `(u * d + v, coef)`.
struct SparseBraid {
    d: usize,
    cols: Vec<Vec<(usize, Scalar)>>,
}

impl SparseBraid {
    fn new(space: &BraidedSpace) -> Self {
        let d = space.dim();
        let cols = (0..d * d)
            .map(|k| {
                (0..d * d)
                    .filter_map(|r| {
                        let c = &space.c[(r, k)];
                        (!c.is_zero()).then(|| (r, c.clone()))
                    })
                    .collect()
            })
            .collect();
        SparseBraid { d, cols }
    }

    /// `c` acting on tensor factors `p, p+1` (0-based) of `V^{(x) n}`.
    fn apply(&self, n: usize, p: usize, v: &SparseVec) -> SparseVec {
        let d = self.d;
        let low = d.pow((n - p - 2) as u32);
        let mut out = SparseVec::new();
        for (idx, coef) in v {
            let lo = idx % low;
            let pair = (idx / low) % (d * d);
            let hi = idx / (low * d * d);
            for (target, c) in &self.cols[pair] {
                let t = (hi * d * d + target) * low + lo;
                let e = out.entry(t).or_insert_with(Scalar::zero);
                *e += coef * c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn neighbours(&self, n: usize, idx: usize) -> Vec<usize> {
        let d = self.d;
        let mut out = Vec::new();
        for p in 0..n.saturating_sub(1) {
            let low = d.pow((n - p - 2) as u32);
            let lo = idx % low;
            let pair = (idx / low) % (d * d);
            let hi = idx / (low * d * d);
            for (target, _) in &self.cols[pair] {
                out.push((hi * d * d + target) * low + lo);
            }
        }
        out
    }
}

fn add_into(acc: &mut SparseVec, v: &SparseVec) {
    for (k, c) in v {
        let e = acc.entry(*k).or_insert_with(Scalar::zero);
        *e += c;
    }
    acc.retain(|_, c| !c.is_zero());
}

/// Applies the symmetrizer through `S_n = T_2 T_3 ... T_n` with
/// `T_k = 1 + c_{k-1}(1 + c_{k-2}(1 + ... (1 + c_1)))`.
fn symmetrize(b: &SparseBraid, n: usize, v: &SparseVec) -> SparseVec {
    let mut cur = v.clone();
    for k in (2..=n).rev() {
        // T_k on the first k factors; positions are 0-based, c_i acts on (i-1, i)
        let mut acc = cur.clone();
        for i in 1..k {
            let mut t = b.apply(n, i - 1, &acc);
            add_into(&mut t, &cur);
            acc = t;
        }
        cur = acc;
    }
    cur
}

fn check_caps(d: usize, n: usize, caps: &Caps) -> Result<()> {
    if n > caps.degree {
        return Err(Error::Resource(format!("degree {n} exceeds the degree cap {}", caps.degree)));
    }
    let size = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > caps.tensor_dim as u128 {
        return Err(Error::Resource(format!(
            "dim(V)^n = {d}^{n} exceeds the tensor dimension cap {}",
            caps.tensor_dim
        )));
    }
    Ok(())
}

/// The symmetrizer on `V^{(x) n}` as a dense matrix.
pub fn symmetrizer(space: &BraidedSpace, n: usize, caps: &Caps) -> Result<Matrix> {
    let d = space.dim();
    check_caps(d, n, caps)?;
    let b = SparseBraid::new(space);
    let size = d.pow(n as u32);
    let mut m = Matrix::zeros(size, size);
    for j in 0..size {
        let e = SparseVec::from([(j, Scalar::one())]);
        for (i, c) in symmetrize(&b, n, &e) {
            m[(i, j)] = c;
        }
    }
    Ok(m)
}

/// Lexicographically smallest reduced word of a permutation (`w[i]` is the
/// image of `i`), letters `1..n-1` for the simple transpositions.
pub fn reduced_word(w: &[usize]) -> Vec<usize> {
    reduced_word_by(w, |descents| descents[0])
}

/// A reduced word built by picking, at each step, the left descent chosen
/// by `pick` among all left descents (in increasing order).
pub fn reduced_word_by(w: &[usize], mut pick: impl FnMut(&[usize]) -> usize) -> Vec<usize> {
    let mut w = w.to_vec();
    let n = w.len();
    let mut word = Vec::new();
    loop {
        let mut inv = vec![0; n];
        for (i, &x) in w.iter().enumerate() {
            inv[x] = i;
        }
        let descents: Vec<usize> = (0..n.saturating_sub(1)).filter(|&i| inv[i] > inv[i + 1]).collect();
        if descents.is_empty() {
            return word;
        }
        let i = pick(&descents);
        word.push(i + 1);
        // w <- s_i w: swap the values i and i+1
        for x in w.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
    }
}

/// The braid lift `c_{i1} c_{i2} ... c_{ik}` of a word as a dense matrix.
pub fn braid_lift(space: &BraidedSpace, n: usize, word: &[usize]) -> Matrix {
    let b = SparseBraid::new(space);
    let size = space.dim().pow(n as u32);
    let mut m = Matrix::zeros(size, size);
    for j in 0..size {
        let mut v = SparseVec::from([(j, Scalar::one())]);
        for &i in word.iter().rev() {
            v = b.apply(n, i - 1, &v);
        }
        for (i, c) in v {
            m[(i, j)] = c;
        }
    }
    m
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Sum over all permutations of their braid lifts, one lexicographically
/// smallest reduced word each. Used to cross-check [`symmetrizer`].
pub fn symmetrizer_by_permutations(space: &BraidedSpace, n: usize, caps: &Caps) -> Result<Matrix> {
    check_caps(space.dim(), n, caps)?;
    let size = space.dim().pow(n as u32);
    let mut acc = Matrix::zeros(size, size);
    for w in permutations(n) {
        acc = &acc + &braid_lift(space, n, &reduced_word(&w));
    }
    Ok(acc)
}

/// Rank of the symmetrizer, computed block by block on the connected
/// components of the support of the braiding.
pub fn symmetrizer_rank(space: &BraidedSpace, n: usize, caps: &Caps) -> Result<usize> {
    let d = space.dim();
    check_caps(d, n, caps)?;
    if n <= 1 {
        return Ok(d.pow(n as u32));
    }
    let b = SparseBraid::new(space);
    let size = d.pow(n as u32);
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for t in 0..size {
        for u in b.neighbours(n, t) {
            let (rt, ru) = (find(&mut parent, t), find(&mut parent, u));
            if rt != ru {
                parent[rt.max(ru)] = rt.min(ru);
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for t in 0..size {
        let r = find(&mut parent, t);
        comps.entry(r).or_default().push(t);
    }
    let comps: Vec<Vec<usize>> = comps.into_values().collect();
    let ranks: Vec<usize> = comps
        .par_iter()
        .map(|comp| {
            let local: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(i, &t)| (t, i)).collect();
            let mut m = Matrix::zeros(comp.len(), comp.len());
            for (j, &t) in comp.iter().enumerate() {
                let e = SparseVec::from([(t, Scalar::one())]);
                for (i, c) in symmetrize(&b, n, &e) {
                    m[(local[&i], j)] = c;
                }
            }
            m.rank()
        })
        .collect();
    Ok(ranks.into_iter().sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    /// `dim B(V)_n` for `n = 0, 1, ...`, ending at the first zero when the
    /// series terminated within the requested degree.
    pub dims: Vec<usize>,
    pub total: Option<usize>,
}

/// `(1 + c_{n-1} + c_{n-2} c_{n-1} + ... + c_1 ... c_{n-1}) v`, so that
/// `S_n = T*_n (S_{n-1} (x) id)` through minimal coset representatives.
fn coset_sum(b: &SparseBraid, n: usize, v: &SparseVec) -> SparseVec {
    let mut acc = v.clone();
    let mut w = v.clone();
    for p in (0..n - 1).rev() {
        w = b.apply(n, p, &w);
        add_into(&mut acc, &w);
    }
    acc
}

/// Echelon basis keyed by leading (smallest) index, leading coefficient 1.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    fn insert(&mut self, mut v: SparseVec) -> bool {
        while let Some((&k, c)) = v.iter().next() {
            match self.rows.get(&k) {
                Some(row) => {
                    let c = c.clone();
                    for (j, x) in row {
                        let e = v.entry(*j).or_insert_with(Scalar::zero);
                        *e -= &(&c * x);
                    }
                    v.retain(|_, x| !x.is_zero());
                }
                None => {
                    let inv = c.inv().expect("leading coefficient is nonzero");
                    for x in v.values_mut() {
                        *x = &*x * &inv;
                    }
                    self.rows.insert(k, v);
                    return true;
                }
            }
        }
        false
    }
}

/// Graded dimensions through images: `Im S_n` is spanned by
/// `T*_n (u (x) e_i)` for `u` in a basis of `Im S_{n-1}`. The tensor cap
/// bounds the number of such candidates per degree.
pub fn graded_dims(space: &BraidedSpace, max_degree: usize, caps: &Caps) -> Result<GradedDims> {
    if max_degree < 1 {
        return Err(Error::Invalid("max_degree must be at least 1".into()));
    }
    let d = space.dim();
    let b = SparseBraid::new(space);
    let mut dims = vec![1];
    let mut image: Vec<SparseVec> = vec![SparseVec::from([(0, Scalar::one())])];
    for n in 1..=max_degree {
        if n > caps.degree {
            return Err(Error::Resource(format!("degree {n} exceeds the degree cap {}", caps.degree)));
        }
        if image.len() * d > caps.tensor_dim {
            return Err(Error::Resource(format!(
                "{} candidate vectors in degree {n} exceed the tensor dimension cap {}",
                image.len() * d,
                caps.tensor_dim
            )));
        }
        let candidates: Vec<SparseVec> = image
            .par_iter()
            .flat_map_iter(|u| (0..d).map(move |i| (u, i)))
            .map(|(u, i)| {
                let v: SparseVec = u.iter().map(|(k, c)| (k * d + i, c.clone())).collect();
                if n == 1 { v } else { coset_sum(&b, n, &v) }
            })
            .collect();
        let mut ech = Echelon::default();
        for v in candidates {
            ech.insert(v);
        }
        image = ech.rows.into_values().collect();
        dims.push(image.len());
        if image.is_empty() {
            let total = dims.iter().sum();
            return Ok(GradedDims { dims, total: Some(total) });
        }
    }
    Ok(GradedDims { dims, total: None })
}

pub fn graded_dims_of(m: &YdModule, max_degree: usize, caps: &Caps) -> Result<GradedDims> {
    graded_dims(&BraidedSpace::of(m), max_degree, caps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetrizerTable {
    /// `(n, rank, kernel dimension)` of the degree-`n` symmetrizer.
    pub degrees: Vec<(usize, usize, usize)>,
}

impl SymmetrizerTable {
    /// Once a rank is zero every later rank is zero.
    pub fn vanishing_is_monotone(&self) -> bool {
        let mut seen_zero = false;
        for &(_, r, _) in &self.degrees {
            if seen_zero && r != 0 {
                return false;
            }
            seen_zero |= r == 0;
        }
        true
    }
}

/// Ranks for every degree `0..=max_degree`, without stopping at the first zero.
pub fn symmetrizer_table(space: &BraidedSpace, max_degree: usize, caps: &Caps) -> Result<SymmetrizerTable> {
    let d = space.dim();
    let degrees = (0..=max_degree)
        .map(|n| symmetrizer_rank(space, n, caps).map(|r| (n, r, d.pow(n as u32) - r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SymmetrizerTable { degrees })
}

/// Basis of `ker(id + c)` on `V (x) V`.
pub fn quadratic_relations(space: &BraidedSpace) -> Vec<Element> {
    let d = space.dim();
    let m = &space.c + &Matrix::identity(d * d);
    m.nullspace()
}

/// A vector of `V (x) V` written with the basis names, e.g. `v1*v2 + v2*v1`.
pub fn format_quadratic(names: &[String], v: &[Scalar]) -> String {
    let d = names.len();
    let mut parts: Vec<String> = Vec::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let w = format!("{}*{}", names[k / d], names[k % d]);
        let neg = -c;
        let (sign, mag) = if c.is_one() {
            ("+", String::new())
        } else if neg.is_one() {
            ("-", String::new())
        } else {
            ("+", format!("({c})*"))
        };
        parts.push(format!("{sign} {mag}{w}"));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let s = parts.join(" ");
    s.strip_prefix("+ ").map(str::to_string).unwrap_or(s)
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn strip_zeros(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Compares the graded dimensions of `B(parts[0] (+) ...)` with the product
/// of the parts' series.
pub fn hilbert_factorization_check(parts: &[&YdModule], caps: &Caps) -> Result<bool> {
    let mut product = vec![1usize];
    for p in parts {
        let g = graded_dims_of(p, caps.degree, caps)?;
        if g.total.is_none() {
            return Err(Error::Resource(format!("series of {} does not terminate by degree {}", p.name, caps.degree)));
        }
        product = convolve(&product, &strip_zeros(&g.dims));
    }
    let sum = direct_sum("sum", parts)?;
    let top = product.len();
    let g = graded_dims_of(&sum, top, caps)?;
    let mut expected = product;
    expected.push(0);
    Ok(g.dims == expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(d: usize, c: Matrix) -> BraidedSpace {
        BraidedSpace::new((1..=d).map(|i| format!("v{i}")).collect(), c).unwrap()
    }

    fn flip(d: usize, s: i64) -> Matrix {
        let mut m = Matrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                m[(j * d + i, i * d + j)] = Scalar::from_int(s);
            }
        }
        m
    }

    #[test]
    fn symmetric_algebra_dims() {
        // c = flip: symmetric algebra on 2 generators, dims n+1
        let s = space(2, flip(2, 1));
        let g = graded_dims(&s, 4, &Caps::default()).unwrap();
        assert_eq!(g.dims, vec![1, 2, 3, 4, 5]);
        assert_eq!(g.total, None);
    }

    #[test]
    fn exterior_algebra_dims() {
        let s = space(3, flip(3, -1));
        let g = graded_dims(&s, 6, &Caps::default()).unwrap();
        assert_eq!(g.dims, vec![1, 3, 3, 1, 0]);
        assert_eq!(g.total, Some(8));
        let t = symmetrizer_table(&s, 5, &Caps::default()).unwrap();
        assert_eq!(t.degrees[0], (0, 1, 0));
        assert_eq!(t.degrees[5], (5, 0, 243));
        assert!(t.vanishing_is_monotone());
    }

    #[test]
    fn small_degrees() {
        let s = space(1, Matrix::from_ints(&[&[-1]]));
        let caps = Caps::default();
        assert!(symmetrizer(&s, 0, &caps).unwrap().is_identity());
        assert!(symmetrizer(&s, 2, &caps).unwrap().is_zero());
        let t = space(2, flip(2, -1));
        let s2 = symmetrizer(&t, 2, &caps).unwrap();
        assert_eq!(s2, &Matrix::identity(4) + &t.c);
    }

    #[test]
    fn image_recursion_matches_full_ranks() {
        // diagonal braiding of type A2 at -1: dims 1, 2, 2, 2, 1
        let mut c = flip(2, -1);
        c[(2, 1)] = Scalar::xi();
        c[(1, 2)] = Scalar::xi();
        let a2 = space(2, c);
        assert_eq!(graded_dims(&a2, 6, &Caps::default()).unwrap().dims, vec![1, 2, 2, 2, 1, 0]);
        for s in [space(2, flip(2, 1)), space(3, flip(3, -1)), a2] {
            let g = graded_dims(&s, 5, &Caps::default()).unwrap();
            for (n, &dim) in g.dims.iter().enumerate() {
                assert_eq!(dim, symmetrizer_rank(&s, n, &Caps::default()).unwrap());
            }
        }
    }

    #[test]
    fn reduced_words() {
        assert_eq!(reduced_word(&[0, 1, 2]), Vec::<usize>::new());
        assert_eq!(reduced_word(&[1, 0, 2]), vec![1]);
        assert_eq!(reduced_word(&[2, 1, 0]).len(), 3);
        assert_eq!(reduced_word(&[2, 1, 0]), vec![1, 2, 1]);
    }

    #[test]
    fn caps_are_enforced() {
        let s = space(2, flip(2, -1));
        let caps = Caps { degree: 3, tensor_dim: 100 };
        assert!(matches!(symmetrizer_rank(&s, 4, &caps), Err(Error::Resource(_))));
        let caps = Caps { degree: 10, tensor_dim: 100 };
        assert!(matches!(symmetrizer_rank(&s, 7, &caps), Err(Error::Resource(_))));
    }

    #[test]
    fn quadratic_formatting() {
        let names = vec!["p1".to_string(), "p2".to_string()];
        let v: Vec<Scalar> = [0, 1, 1, 0].iter().map(|&x| Scalar::from_int(x)).collect();
        assert_eq!(format_quadratic(&names, &v), "p1*p2 + p2*p1");
    }
}
