//! Dense exact matrices over `Q(x)` and the handful of eliminations the rest
//! of the crate needs: rank, reduced row echelon form, kernels, inverses,
//! characteristic polynomials and roots.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Integer entries, for tests and hard-coded tables.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Matrix::from_rows(v).expect("rectangular")
    }

    pub fn from_columns(cols: &[Vec<Scalar>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(Error::Shape("ragged columns".into()));
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product `self (x) other`, row index `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            m[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &(&f * &m[(r, j)]);
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of `{ v : self * v = 0 }`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(row, free)];
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Invalid("matrix is singular".into()));
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Solves `self * X = rhs` when a solution exists (any one of them).
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let mut aug = Matrix::zeros(self.rows, n + rhs.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, n + j)] = rhs[(i, j)].clone();
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Matrix::zeros(n, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = r[(row, n + j)].clone();
            }
        }
        Some(x)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Coefficients `c_0..c_n` of `det(t I - self)`, lowest degree first
    /// (Faddeev-LeVerrier; exact in characteristic zero).
    pub fn char_poly(&self) -> Vec<Scalar> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self * &m;
            coeffs[n - k] = -(am.trace() * Scalar::from_frac(1, k as i64));
        }
        coeffs
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rank of a list of vectors.
pub fn rank_of(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).map(|m| m.rank()).unwrap_or(0)
}

/// Row-reduced basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec()).expect("equal lengths");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

const DIVISOR_SEARCH_LIMIT: u64 = 1 << 40;

/// Roots in `Q(x)` of the polynomial with coefficients `coeffs` (lowest
/// degree first), with multiplicities. Returns `Inconclusive` when the
/// Gaussian-integer divisor search would exceed a fixed bound.
pub fn roots_in_field(coeffs: &[Scalar]) -> Result<Vec<(Scalar, usize)>> {
    let mut p: Vec<Scalar> = coeffs.to_vec();
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        return Err(Error::Invalid("zero polynomial has every root".into()));
    }
    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    let mut zero_mult = 0;
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Scalar::zero(), zero_mult));
    }
    if p.len() == 1 {
        return Ok(roots);
    }
    let ints = to_gaussian_integers(&p);
    let lead = ints.last().unwrap().clone();
    let constant = ints[0].clone();
    let nums = gaussian_divisors(&constant)?;
    let dens = gaussian_divisors(&lead)?;
    let mut candidates: Vec<Scalar> = Vec::new();
    for n in &nums {
        for d in &dens {
            let c = n.checked_div(d).expect("divisor is nonzero");
            if !candidates.contains(&c) {
                candidates.push(c);
            }
        }
    }
    for c in candidates {
        let mut mult = 0;
        while p.len() > 1 && eval_poly(&p, &c).is_zero() {
            p = deflate(&p, &c);
            mult += 1;
        }
        if mult > 0 {
            roots.push((c, mult));
        }
    }
    Ok(roots)
}

pub fn eval_poly(p: &[Scalar], t: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.iter().rev() {
        acc = &(&acc * t) + c;
    }
    acc
}

fn deflate(p: &[Scalar], root: &Scalar) -> Vec<Scalar> {
    let n = p.len() - 1;
    let mut q = vec![Scalar::zero(); n];
    let mut carry = Scalar::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + &(&carry * root);
        q[i] = carry.clone();
    }
    q
}

fn to_gaussian_integers(p: &[Scalar]) -> Vec<Scalar> {
    let mut l = BigInt::one();
    for c in p {
        l = l.lcm(c.re().denom());
        l = l.lcm(c.im().denom());
    }
    let s = Scalar::from(BigRational::from_integer(l));
    p.iter().map(|c| c * &s).collect()
}

fn gaussian_divisors(z: &Scalar) -> Result<Vec<Scalar>> {
    let norm = z.norm();
    debug_assert!(norm.is_integer());
    let n = norm
        .numer()
        .to_u64()
        .filter(|&n| n <= DIVISOR_SEARCH_LIMIT)
        .ok_or_else(|| Error::Inconclusive("coefficient too large for root search".into()))?;
    let mut out = Vec::new();
    let mut int_divs = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            int_divs.push(k);
            if k * k != n {
                int_divs.push(n / k);
            }
        }
        k += 1;
    }
    for m in int_divs {
        let r = (m as f64).sqrt() as i64 + 1;
        for u in -r..=r {
            let rest = m as i64 - u * u;
            if rest < 0 {
                continue;
            }
            let v = (rest as f64).sqrt().round() as i64;
            for v in [v, -v] {
                if u * u + v * v != m as i64 {
                    continue;
                }
                let g = Scalar::gaussian(u, v);
                let q = z.checked_div(&g)?;
                if q.re().is_integer() && q.im().is_integer() && !out.contains(&g) {
                    out.push(g);
                }
            }
        }
    }
    out.sort_by_key(|g| (g.norm().numer().abs(), g.to_string()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![vec![s("1"), s("x")], vec![s("1/2"), s("3")]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(Matrix::from_ints(&[&[1, 1], &[1, 1]]).inverse().is_err());
    }

    #[test]
    fn char_poly_of_rotation() {
        // [[0,-1],[1,0]] has t^2 + 1 = (t - x)(t + x)
        let m = Matrix::from_ints(&[&[0, -1], &[1, 0]]);
        let p = m.char_poly();
        assert_eq!(p, vec![s("1"), s("0"), s("1")]);
        let mut roots = roots_in_field(&p).unwrap();
        roots.sort_by_key(|(r, _)| r.to_string());
        assert_eq!(roots, vec![(s("-x"), 1), (s("x"), 1)]);
    }

    #[test]
    fn roots_with_multiplicity_and_fractions() {
        // (t - 1/2)^2 (t + 3x) t
        let p = vec![s("0"), s("3/4*x"), s("1/4 - 3*x"), s("-1 + 3*x"), s("1")];
        let p = {
            // expand directly to avoid hand errors
            let lin = |r: Scalar| vec![-r, Scalar::one()];
            let mul = |a: &[Scalar], b: &[Scalar]| {
                let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] += x * y;
                    }
                }
                out
            };
            let _ = p;
            let q = mul(&lin(s("1/2")), &lin(s("1/2")));
            let q = mul(&q, &lin(s("-3*x")));
            mul(&q, &lin(s("0")))
        };
        let mut roots = roots_in_field(&p).unwrap();
        roots.sort_by_key(|(r, _)| r.to_string());
        assert_eq!(roots, vec![(s("-3*x"), 1), (s("0"), 1), (s("1/2"), 2)]);
    }

    #[test]
    fn irrational_roots_are_not_reported() {
        // t^2 - 2
        let roots = roots_in_field(&[s("-2"), s("0"), s("1")]).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert!(a.solve(&Matrix::from_ints(&[&[1], &[2]])).is_some());
        assert!(a.solve(&Matrix::from_ints(&[&[1], &[3]])).is_none());
    }
}
