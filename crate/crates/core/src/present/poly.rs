use std::collections::BTreeMap;

use crate::scalar::Scalar;

use super::Alphabet;

/// A word in the generators, as letter indices.
pub type Word = Vec<u16>;

/// A linear combination of words (not necessarily reduced).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(BTreeMap<Word, Scalar>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Poly::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        Poly(BTreeMap::from([(w, Scalar::one())]))
    }

    pub fn scalar(s: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), s);
        p
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, w: &[u16]) -> Scalar {
        self.0.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn remove(&mut self, w: &[u16]) {
        self.0.remove(w);
    }

    /// The constant, if this is a multiple of the empty word.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.0.len() {
            0 => Some(Scalar::zero()),
            1 => self.0.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(w).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.0 {
            let e = self.0.entry(w.clone()).or_insert_with(Scalar::zero);
            *e += &(d * c);
        }
        self.0.retain(|_, v| !v.is_zero());
    }

    pub fn scaled(&self, c: &Scalar) -> Poly {
        let mut p = Poly::zero();
        p.add_scaled(self, c);
        p
    }

    /// Concatenation product, without reduction.
    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (u, c) in &self.0 {
            for (v, d) in &other.0 {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, c * d);
            }
        }
        out
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        let mut words: Vec<&Word> = self.0.keys().collect();
        words.sort_by(|u, v| alphabet.cmp_words(v, u));
        let parts: Vec<(bool, String)> = words
            .into_iter()
            .map(|w| format_term(&self.0[w], if w.is_empty() { None } else { Some(alphabet.format_word(w)) }))
            .collect();
        join_terms(parts)
    }
}

fn format_term(c: &Scalar, word: Option<String>) -> (bool, String) {
    let neg = -c;
    let (negative, mag) = if c.is_rational() && num_traits::Signed::is_negative(c.re()) {
        (true, neg)
    } else {
        (false, c.clone())
    };
    let coef = mag.to_string();
    let simple = mag.is_rational() && !coef.contains('/');
    let body = match word {
        None => coef,
        Some(w) if mag.is_one() => w,
        Some(w) if simple => format!("{coef}*{w}"),
        Some(w) => format!("({coef})*{w}"),
    };
    (negative, body)
}

fn join_terms(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => s.push_str(&body),
            (0, true) => {
                s.push('-');
                s.push_str(&body);
            }
            (_, false) => {
                s.push_str(" + ");
                s.push_str(&body);
            }
            (_, true) => {
                s.push_str(" - ");
                s.push_str(&body);
            }
        }
    }
    s
}

/// An element of the tensor square, as pairs of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TPoly(BTreeMap<(Word, Word), Scalar>);

impl TPoly {
    pub fn zero() -> Self {
        TPoly(BTreeMap::new())
    }

    pub fn simple(u: Word, v: Word) -> Self {
        TPoly(BTreeMap::from([((u, v), Scalar::one())]))
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), Scalar> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry((u, v)).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    /// Adds `c * (p (x) q)`.
    pub fn add_product(&mut self, p: &Poly, q: &Poly, c: &Scalar) {
        for (u, a) in p.terms() {
            for (v, b) in q.terms() {
                let e = self.0.entry((u.clone(), v.clone())).or_insert_with(Scalar::zero);
                *e += &(&(a * b) * c);
            }
        }
        self.0.retain(|_, v| !v.is_zero());
    }

    pub fn add_scaled(&mut self, other: &TPoly, c: &Scalar) {
        for ((u, v), d) in &other.0 {
            let e = self.0.entry((u.clone(), v.clone())).or_insert_with(Scalar::zero);
            *e += &(d * c);
        }
        self.0.retain(|_, v| !v.is_zero());
    }

    pub fn scaled(&self, c: &Scalar) -> TPoly {
        let mut t = TPoly::zero();
        t.add_scaled(self, c);
        t
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        let mut keys: Vec<&(Word, Word)> = self.0.keys().collect();
        keys.sort_by(|(u1, v1), (u2, v2)| alphabet.cmp_words(u2, u1).then(alphabet.cmp_words(v2, v1)));
        let parts = keys
            .into_iter()
            .map(|k| {
                let w = format!("{} @ {}", alphabet.format_word(&k.0), alphabet.format_word(&k.1));
                format_term(&self.0[k], Some(w))
            })
            .collect();
        join_terms(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        let a = Alphabet::new(&["a", "b"], &["p"]).unwrap();
        let mut p = Poly::word(vec![2, 0]);
        p.add_term(vec![], Scalar::from_int(-3));
        p.add_term(vec![1], Scalar::from_frac(1, 2));
        assert_eq!(p.format(&a), "p*a + (1/2)*b - 3");
        let mut q = Poly::zero();
        q.add_term(vec![0], Scalar::xi());
        assert_eq!(q.format(&a), "(x)*a");
        assert_eq!(Poly::zero().format(&a), "0");
        let t = TPoly::simple(vec![2], vec![]);
        assert_eq!(t.format(&a), "p @ 1");
    }
}
