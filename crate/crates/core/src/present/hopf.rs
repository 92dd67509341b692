//! Bialgebra and antipode checks for presented algebras, morphisms between
//! presentations, and conversion to structure constants.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finhopf::{zero, AxiomCheck, HopfData};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::{HopfCheck, LetterClass, Poly, Presentation, TPoly, Word};

type T3 = BTreeMap<(Word, Word, Word), Scalar>;

fn check(name: &str, witness: Option<String>) -> AxiomCheck {
    AxiomCheck { name: name.into(), passed: witness.is_none(), witness }
}

fn add3(t: &mut T3, k: (Word, Word, Word), c: Scalar) {
    let e = t.entry(k).or_insert_with(Scalar::zero);
    *e += &c;
}

fn clean3(mut t: T3) -> T3 {
    t.retain(|_, v| !v.is_zero());
    t
}

impl Presentation {
    fn delta_letter(&self, l: u16) -> Result<&TPoly> {
        self.delta.get(&l).ok_or_else(|| Error::Invalid(format!("no coproduct given for `{}`", self.alphabet.names()[l as usize])))
    }

    /// `Delta` of a word, reduced in the tensor square.
    pub fn delta_word(&self, w: &[u16]) -> Result<TPoly> {
        let mut acc = TPoly::simple(Vec::new(), Vec::new());
        for &l in w {
            acc = self.tensor_mul(&acc, self.delta_letter(l)?)?;
        }
        Ok(acc)
    }

    pub fn delta(&self, p: &Poly) -> Result<TPoly> {
        let mut out = TPoly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(&self.delta_word(w)?, c);
        }
        Ok(out)
    }

    pub fn eps(&self, p: &Poly) -> Scalar {
        p.terms().iter().map(|(w, c)| c * &w.iter().map(|&l| self.eps_letter(l)).product::<Scalar>()).sum()
    }

    fn delta_left(&self, t: &TPoly) -> Result<T3> {
        let mut out = T3::new();
        for ((u, v), c) in t.terms() {
            for ((x, y), d) in self.delta_word(u)?.terms() {
                add3(&mut out, (x.clone(), y.clone(), v.clone()), c * d);
            }
        }
        Ok(clean3(out))
    }

    fn delta_right(&self, t: &TPoly) -> Result<T3> {
        let mut out = T3::new();
        for ((u, v), c) in t.terms() {
            for ((x, y), d) in self.delta_word(v)?.terms() {
                add3(&mut out, (u.clone(), x.clone(), y.clone()), c * d);
            }
        }
        Ok(clean3(out))
    }

    /// `Delta` and `epsilon` extended multiplicatively annihilate every
    /// rule; coassociativity and counit hold on the generators.
    pub fn check_bialgebra(&self) -> Result<HopfCheck> {
        for l in 0..self.alphabet.len() as u16 {
            self.delta_letter(l)?;
        }
        let rules = self.rules();
        let rel = rules
            .par_iter()
            .map(|r| -> Result<Option<String>> {
                let mut d = self.delta_word(&r.lhs)?;
                d.add_scaled(&self.delta(&r.rhs)?, &Scalar::from_int(-1));
                Ok((!d.is_zero()).then(|| {
                    format!("{} -> {} ({}): {}", self.format_word(&r.lhs), self.format(&r.rhs), r.origin, self.format_tensor(&d))
                }))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .next();
        let eps_rel = rules
            .iter()
            .find(|r| self.eps(&Poly::word(r.lhs.clone())) != self.eps(&r.rhs))
            .map(|r| format!("{} ({})", self.format_word(&r.lhs), r.origin));
        let mut coassoc = None;
        let mut counit = None;
        for l in 0..self.alphabet.len() as u16 {
            let d = self.delta_letter(l)?.clone();
            let d = self.tensor_nf(&d)?;
            if coassoc.is_none() && self.delta_left(&d)? != self.delta_right(&d)? {
                coassoc = Some(self.alphabet.names()[l as usize].clone());
            }
            let mut left = Poly::zero();
            let mut right = Poly::zero();
            for ((u, v), c) in d.terms() {
                left.add_scaled(&Poly::word(v.clone()), &(c * &self.eps(&Poly::word(u.clone()))));
                right.add_scaled(&Poly::word(u.clone()), &(c * &self.eps(&Poly::word(v.clone()))));
            }
            let g = self.nf_word(&[l])?;
            if counit.is_none() && (left != g || right != g) {
                counit = Some(self.alphabet.names()[l as usize].clone());
            }
        }
        Ok(HopfCheck {
            checks: vec![
                check("delta-respects-relations", rel),
                check("counit-respects-relations", eps_rel),
                check("coassociativity", coassoc),
                check("counit", counit),
            ],
        })
    }

    /// `S` extended as an anti-homomorphism.
    fn apply_antipode(&self, s: &BTreeMap<u16, Poly>, p: &Poly) -> Result<Poly> {
        let mut out = Poly::zero();
        for (w, c) in p.terms() {
            let mut acc = Poly::one();
            for l in w.iter().rev() {
                acc = self.mul(&acc, &s[l])?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// The group letters span a sub-Hopf algebra; its antipode is solved
    /// from structure constants.
    fn group_antipode(&self) -> Result<Option<BTreeMap<u16, Poly>>> {
        let group = self.alphabet.letters(LetterClass::Group);
        if group.is_empty() {
            return Ok(Some(BTreeMap::new()));
        }
        let (words, finite) = self.group_words(4096);
        if !finite {
            return Ok(None);
        }
        let hd = match self.sub_hopf_data("group part", &words, None) {
            Ok(h) => h,
            Err(Error::Invalid(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let Some(s) = hd.solve_antipode() else {
            return Ok(None);
        };
        let mut out = BTreeMap::new();
        for &l in &group {
            let idx = words.iter().position(|w| w == &vec![l]).ok_or_else(|| Error::Invalid("generator not a basis word".into()))?;
            let mut p = Poly::zero();
            for (r, w) in words.iter().enumerate() {
                p.add_term(w.clone(), s[(r, idx)].clone());
            }
            out.insert(l, p);
        }
        Ok(Some(out))
    }

    /// Solves for the antipode on generators and verifies it.
    pub fn find_antipode(&self) -> Result<AntipodeReport> {
        let mut s: BTreeMap<u16, Poly> = BTreeMap::new();
        let given = |l: u16| self.antipode.get(&l).cloned();
        let group = self.alphabet.letters(LetterClass::Group);
        if group.iter().all(|&l| given(l).is_some()) {
            for &l in &group {
                s.insert(l, self.normal_form(&given(l).expect("checked"))?);
            }
        } else {
            match self.group_antipode()? {
                Some(g) => s.extend(g),
                None => return Ok(AntipodeReport { images: None, checks: vec![check("solve", Some("group part".into()))] }),
            }
        }
        for l in self.alphabet.letters(LetterClass::Module) {
            if let Some(g) = given(l) {
                s.insert(l, self.normal_form(&g)?);
                continue;
            }
            // Delta(x) = x (x) 1 + sum u (x) w  =>  S(x) = -sum S(u) w
            let mut rest = self.tensor_nf(self.delta_letter(l)?)?;
            rest.add_term(vec![l], Vec::new(), Scalar::from_int(-1));
            let mut img = Poly::zero();
            for ((u, w), c) in rest.terms() {
                if u.iter().any(|x| !s.contains_key(x)) {
                    let msg = format!("cannot solve for S({})", self.alphabet.names()[l as usize]);
                    return Ok(AntipodeReport { images: None, checks: vec![check("solve", Some(msg))] });
                }
                let su = self.apply_antipode(&s, &Poly::word(u.clone()))?;
                img.add_scaled(&self.mul(&su, &Poly::word(w.clone()))?, &(-c));
            }
            s.insert(l, self.normal_form(&img)?);
        }

        let mut gen_fail = None;
        for l in 0..self.alphabet.len() as u16 {
            let d = self.tensor_nf(self.delta_letter(l)?)?;
            let mut left = Poly::zero();
            let mut right = Poly::zero();
            for ((u, v), c) in d.terms() {
                let su = self.apply_antipode(&s, &Poly::word(u.clone()))?;
                let sv = self.apply_antipode(&s, &Poly::word(v.clone()))?;
                left.add_scaled(&self.mul(&su, &Poly::word(v.clone()))?, c);
                right.add_scaled(&self.mul(&Poly::word(u.clone()), &sv)?, c);
            }
            let target = Poly::scalar(self.eps_letter(l));
            if left != target || right != target {
                gen_fail = Some(self.alphabet.names()[l as usize].clone());
                break;
            }
        }
        let mut rel_fail = None;
        for r in self.rules() {
            let mut d = self.apply_antipode(&s, &Poly::word(r.lhs.clone()))?;
            d.add_scaled(&self.apply_antipode(&s, &r.rhs)?, &Scalar::from_int(-1));
            if !self.normal_form(&d)?.is_zero() {
                rel_fail = Some(format!("{} ({})", self.format_word(&r.lhs), r.origin));
                break;
            }
        }
        let checks = vec![check("antipode-on-generators", gen_fail), check("antipode-respects-relations", rel_fail)];
        let ok = checks.iter().all(|c| c.passed);
        let images = ok.then(|| s.iter().map(|(l, p)| (self.alphabet.names()[*l as usize].clone(), self.format(p))).collect());
        Ok(AntipodeReport { images, checks })
    }

    fn sub_hopf_data(&self, name: &str, words: &[Word], antipode: Option<&BTreeMap<u16, Poly>>) -> Result<HopfData> {
        let n = words.len();
        let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let coords = |p: &Poly| -> Result<Vec<Scalar>> {
            let mut v = zero(n);
            for (w, c) in p.terms() {
                let i = index.get(w).ok_or_else(|| Error::Invalid(format!("`{}` leaves the span", self.format_word(w))))?;
                v[*i] = c.clone();
            }
            Ok(v)
        };
        let mut mul = Vec::with_capacity(n * n);
        for u in words {
            for v in words {
                let mut w = u.clone();
                w.extend_from_slice(v);
                mul.push(coords(&self.nf_word(&w)?)?);
            }
        }
        let mut comul = Vec::with_capacity(n);
        for w in words {
            let d = self.delta_word(w)?;
            let mut v = zero(n * n);
            for ((x, y), c) in d.terms() {
                let (i, j) = match (index.get(x), index.get(y)) {
                    (Some(i), Some(j)) => (*i, *j),
                    _ => return Err(Error::Invalid("coproduct leaves the span".into())),
                };
                v[i * n + j] = c.clone();
            }
            comul.push(v);
        }
        let counit: Vec<Scalar> = words.iter().map(|w| self.eps(&Poly::word(w.clone()))).collect();
        let mut s = Matrix::zeros(n, n);
        if let Some(sm) = antipode {
            for (j, w) in words.iter().enumerate() {
                let col = coords(&self.apply_antipode(sm, &Poly::word(w.clone()))?)?;
                for (i, c) in col.into_iter().enumerate() {
                    s[(i, j)] = c;
                }
            }
        }
        let names = words.iter().map(|w| self.format_word(w)).collect();
        let mut unit = zero(n);
        unit[index[&Vec::new()]] = Scalar::one();
        HopfData::from_fns(name, names, |i, j| mul[i * n + j].clone(), unit, |i| comul[i].clone(), counit, s)
    }

    /// Structure constants on the irreducible words (requires a finite basis
    /// and a verified antipode).
    pub fn to_hopf_data(&self, word_bound: usize) -> Result<HopfData> {
        let (words, finite) = self.enumerate_words(word_bound);
        if !finite {
            return Err(Error::Resource(format!("basis exceeds the word bound {word_bound}")));
        }
        let rep = self.find_antipode()?;
        if rep.images.is_none() {
            return Err(Error::Invalid("no antipode".into()));
        }
        let mut s = BTreeMap::new();
        for (name, img) in rep.images.expect("checked") {
            let l = self.alphabet.letter(&name).expect("own generator");
            s.insert(l, self.element(&img)?);
        }
        self.sub_hopf_data(&self.name, &words, Some(&s))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AntipodeReport {
    /// Images of the generators in normal form, when the antipode exists.
    pub images: Option<BTreeMap<String, String>>,
    pub checks: Vec<AxiomCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismReport {
    pub checks: Vec<AxiomCheck>,
}

impl MorphismReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn map_poly(p2: &Presentation, imgs: &BTreeMap<u16, Poly>, p: &Poly) -> Result<Poly> {
    let mut out = Poly::zero();
    for (w, c) in p.terms() {
        let mut acc = Poly::one();
        for l in w {
            acc = p2.mul(&acc, &imgs[l])?;
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

/// Checks that the images of the generators of `p1` define a morphism of
/// bialgebras `p1 -> p2`: relations map to zero, and `Delta`, `epsilon`
/// commute with the map on generators.
pub fn check_presented_morphism(p1: &Presentation, p2: &Presentation, images: &BTreeMap<String, Poly>) -> Result<MorphismReport> {
    let mut imgs = BTreeMap::new();
    for (l, name) in p1.alphabet.names().iter().enumerate() {
        let img = images.get(name).ok_or_else(|| Error::Invalid(format!("no image for `{name}`")))?;
        imgs.insert(l as u16, p2.normal_form(img)?);
    }
    let rel = p1
        .rules()
        .par_iter()
        .map(|r| -> Result<Option<String>> {
            let mut d = map_poly(p2, &imgs, &Poly::word(r.lhs.clone()))?;
            d.add_scaled(&map_poly(p2, &imgs, &r.rhs)?, &Scalar::from_int(-1));
            Ok((!d.is_zero()).then(|| format!("{} ({}): {}", p1.format_word(&r.lhs), r.origin, p2.format(&d))))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    let mut comul = None;
    let mut counit = None;
    for (l, img) in &imgs {
        let name = &p1.alphabet.names()[*l as usize];
        let lhs = p2.delta(img)?;
        let mut rhs = TPoly::zero();
        for ((u, v), c) in p1.delta_letter(*l)?.terms() {
            let fu = map_poly(p2, &imgs, &Poly::word(u.clone()))?;
            let fv = map_poly(p2, &imgs, &Poly::word(v.clone()))?;
            rhs.add_product(&fu, &fv, c);
        }
        if comul.is_none() && p2.tensor_nf(&lhs)? != p2.tensor_nf(&rhs)? {
            comul = Some(name.clone());
        }
        if counit.is_none() && p2.eps(img) != p1.eps_letter(*l) {
            counit = Some(name.clone());
        }
    }
    Ok(MorphismReport {
        checks: vec![check("respects-relations", rel), check("comultiplicative", comul), check("counital", counit)],
    })
}
