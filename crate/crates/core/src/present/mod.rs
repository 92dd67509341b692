//! Presented algebras: rewriting to normal forms, overlap checking,
//! irreducible bases, smash products and Hopf structure on generators.
//!
//! Words are ordered by
//! 1. the number of module letters,
//! 2. the tuple of lengths of the group-letter blocks between consecutive
//!    module letters (lexicographically),
//! 3. the module letters in listed order,
//! 4. the group letters in listed order.
//!
//! This order is compatible with concatenation and well-founded, moves
//! group letters to the right and orients every defining relation of the
//! catalog from left to right.

mod dsl;
mod hopf;
pub mod params;
mod poly;
mod smash;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::RwLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finhopf::AxiomCheck;
use crate::scalar::Scalar;

pub use dsl::parse_presentation;
pub use hopf::{check_presented_morphism, AntipodeReport, MorphismReport};
pub use params::{Param, ParamSet, Shape};
pub use poly::{Poly, TPoly, Word};
pub use smash::{nichols_presentation, set_smash_coalgebra, smash_product, smash_relations};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LetterClass {
    Group,
    Module,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    class: Vec<LetterClass>,
    // rank within its class, in listed order
    rank: Vec<usize>,
}

impl Alphabet {
    pub fn new(group: &[&str], module: &[&str]) -> Result<Self> {
        let mut names = Vec::new();
        let mut class = Vec::new();
        let mut rank = Vec::new();
        for (i, g) in group.iter().enumerate() {
            names.push(g.to_string());
            class.push(LetterClass::Group);
            rank.push(i);
        }
        for (i, m) in module.iter().enumerate() {
            names.push(m.to_string());
            class.push(LetterClass::Module);
            rank.push(i);
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::Invalid("repeated generator name".into()));
        }
        if names.iter().any(|n| n == "x") {
            return Err(Error::Invalid("`x` is reserved for the fourth root of unity".into()));
        }
        Ok(Alphabet { names, class, rank })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn class(&self, letter: u16) -> LetterClass {
        self.class[letter as usize]
    }

    pub fn letter(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }

    pub fn letters(&self, class: LetterClass) -> Vec<u16> {
        (0..self.len() as u16).filter(|&l| self.class(l) == class).collect()
    }

    /// Sort key realizing the monomial order (see the module docs).
    pub fn key(&self, w: &[u16]) -> Vec<usize> {
        let m = w.iter().filter(|&&l| self.class(l) == LetterClass::Module).count();
        let mut key = Vec::with_capacity(2 * w.len() + 2);
        key.push(m);
        let mut block = 0;
        for &l in w {
            if self.class(l) == LetterClass::Module {
                key.push(block);
                block = 0;
            } else {
                block += 1;
            }
        }
        key.push(block);
        key.extend(w.iter().filter(|&&l| self.class(l) == LetterClass::Module).map(|&l| self.rank[l as usize]));
        key.extend(w.iter().filter(|&&l| self.class(l) == LetterClass::Group).map(|&l| self.rank[l as usize]));
        key
    }

    pub fn cmp_words(&self, u: &[u16], v: &[u16]) -> std::cmp::Ordering {
        self.key(u).cmp(&self.key(v))
    }

    pub fn format_word(&self, w: &[u16]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&l| self.names[l as usize].as_str()).collect::<Vec<_>>().join("*")
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Vec::new());
        }
        s.split('*')
            .map(|t| self.letter(t.trim()).ok_or_else(|| Error::UnknownName(t.trim().to_string())))
            .collect()
    }

    fn leading(&self, p: &Poly) -> Option<Word> {
        p.terms().keys().max_by(|u, v| self.cmp_words(u, v)).cloned()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Poly,
    /// Where the rule came from: a source line or `completion`.
    pub origin: String,
}

/// A terminating rewriting system with a cache of `nf(u * letter)` for
/// irreducible `u`.
struct Rewriter {
    rules: Vec<Rule>,
    index: HashMap<Word, usize>,
    lens: Vec<usize>,
    cache: RwLock<HashMap<(Word, u16), Poly>>,
    step_cap: usize,
}

impl Rewriter {
    fn new(rules: Vec<Rule>, step_cap: usize) -> Self {
        let index = rules.iter().enumerate().map(|(i, r)| (r.lhs.clone(), i)).collect();
        let lens: BTreeSet<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        Rewriter { rules, index, lens: lens.into_iter().collect(), cache: RwLock::new(HashMap::new()), step_cap }
    }

    fn suffix_rule(&self, w: &[u16]) -> Option<(usize, &Rule)> {
        for &len in &self.lens {
            if len <= w.len() {
                if let Some(&i) = self.index.get(&w[w.len() - len..]) {
                    return Some((w.len() - len, &self.rules[i]));
                }
            }
        }
        None
    }

    fn is_irreducible(&self, w: &[u16]) -> bool {
        (1..=w.len()).all(|end| self.suffix_rule(&w[..end]).is_none())
    }

    fn append(&self, u: &[u16], x: u16, depth: usize) -> Result<Poly> {
        if depth > self.step_cap {
            return Err(Error::NonTermination(self.step_cap));
        }
        let key = (u.to_vec(), x);
        if let Some(p) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(p.clone());
        }
        let mut ux = u.to_vec();
        ux.push(x);
        let out = match self.suffix_rule(&ux) {
            None => Poly::word(ux),
            Some((start, rule)) => {
                let prefix = &ux[..start];
                let mut acc = Poly::zero();
                for (w, c) in rule.rhs.terms() {
                    let part = self.extend(Poly::word(prefix.to_vec()), w, depth + 1)?;
                    acc.add_scaled(&part, c);
                }
                acc
            }
        };
        self.cache.write().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    /// `nf(p * w)` for `p` already in normal form.
    fn extend(&self, p: Poly, w: &[u16], depth: usize) -> Result<Poly> {
        let mut acc = p;
        for &x in w {
            let mut next = Poly::zero();
            for (u, c) in acc.terms() {
                next.add_scaled(&self.append(u, x, depth)?, c);
            }
            acc = next;
        }
        Ok(acc)
    }

    fn nf(&self, p: &Poly) -> Result<Poly> {
        let mut acc = Poly::zero();
        for (w, c) in p.terms() {
            acc.add_scaled(&self.extend(Poly::one(), w, 0)?, c);
        }
        Ok(acc)
    }
}

fn contains_subword(w: &[u16], s: &[u16]) -> bool {
    s.len() <= w.len() && w.windows(s.len()).any(|win| win == s)
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPair {
    pub word: String,
    pub rules: (String, String),
    pub resolved: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapReport {
    pub rules: usize,
    pub pairs: Vec<CriticalPair>,
}

impl OverlapReport {
    pub fn confluent(&self) -> bool {
        self.pairs.iter().all(|p| p.resolved)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CriticalPair> {
        self.pairs.iter().filter(|p| !p.resolved)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletionReport {
    pub rounds: usize,
    pub added: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Basis {
    pub words: Vec<String>,
    /// `None` when the word bound was reached before the enumeration ended.
    pub dim: Option<usize>,
}

pub const DEFAULT_STEP_CAP: usize = 2_000;

pub struct Presentation {
    pub name: String,
    alphabet: Alphabet,
    params: BTreeMap<String, Scalar>,
    rw: Rewriter,
    delta: BTreeMap<u16, TPoly>,
    eps: BTreeMap<u16, Scalar>,
    antipode: BTreeMap<u16, Poly>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            name: self.name.clone(),
            alphabet: self.alphabet.clone(),
            params: self.params.clone(),
            rw: Rewriter::new(self.rw.rules.clone(), self.rw.step_cap),
            delta: self.delta.clone(),
            eps: self.eps.clone(),
            antipode: self.antipode.clone(),
        }
    }
}

impl std::fmt::Debug for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Presentation")
            .field("name", &self.name)
            .field("generators", &self.alphabet.names)
            .field("rules", &self.rw.rules.len())
            .finish()
    }
}

impl Presentation {
    /// Builds a presentation from relations `f = 0`, each tagged with its
    /// origin. The relations are oriented and interreduced.
    pub fn from_relations(name: &str, alphabet: Alphabet, relations: Vec<(Poly, String)>) -> Result<Self> {
        let rules = interreduce(&alphabet, Vec::new(), relations, DEFAULT_STEP_CAP)?;
        Ok(Presentation {
            name: name.to_string(),
            alphabet,
            params: BTreeMap::new(),
            rw: Rewriter::new(rules, DEFAULT_STEP_CAP),
            delta: BTreeMap::new(),
            eps: BTreeMap::new(),
            antipode: BTreeMap::new(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generators(&self) -> &[String] {
        self.alphabet.names()
    }

    pub fn params(&self) -> &BTreeMap<String, Scalar> {
        &self.params
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rw.rules
    }

    pub fn set_step_cap(&mut self, cap: usize) {
        self.rw = Rewriter::new(self.rw.rules.clone(), cap);
    }

    pub fn set_delta(&mut self, gen: &str, d: TPoly) -> Result<()> {
        let l = self.alphabet.letter(gen).ok_or_else(|| Error::UnknownName(gen.into()))?;
        self.delta.insert(l, d);
        Ok(())
    }

    pub fn set_eps(&mut self, gen: &str, e: Scalar) -> Result<()> {
        let l = self.alphabet.letter(gen).ok_or_else(|| Error::UnknownName(gen.into()))?;
        self.eps.insert(l, e);
        Ok(())
    }

    pub fn set_antipode(&mut self, gen: &str, s: Poly) -> Result<()> {
        let l = self.alphabet.letter(gen).ok_or_else(|| Error::UnknownName(gen.into()))?;
        self.antipode.insert(l, s);
        Ok(())
    }

    pub fn delta_of(&self, gen: &str) -> Option<&TPoly> {
        self.alphabet.letter(gen).and_then(|l| self.delta.get(&l))
    }

    /// Counit on a generator: as declared, else 1 on group letters and 0 on
    /// module letters.
    pub fn eps_letter(&self, l: u16) -> Scalar {
        self.eps.get(&l).cloned().unwrap_or_else(|| match self.alphabet.class(l) {
            LetterClass::Group => Scalar::one(),
            LetterClass::Module => Scalar::zero(),
        })
    }

    pub fn word(&self, s: &str) -> Result<Word> {
        self.alphabet.parse_word(s)
    }

    pub fn format_word(&self, w: &[u16]) -> String {
        self.alphabet.format_word(w)
    }

    pub fn format(&self, p: &Poly) -> String {
        p.format(&self.alphabet)
    }

    pub fn format_tensor(&self, t: &TPoly) -> String {
        t.format(&self.alphabet)
    }

    /// Parses an element (no tensors) over this presentation's generators
    /// and parameters.
    pub fn element(&self, src: &str) -> Result<Poly> {
        dsl::eval_element(self, src)
    }

    pub fn tensor(&self, src: &str) -> Result<TPoly> {
        dsl::eval_tensor(self, src)
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.rw.nf(p)
    }

    pub fn nf_word(&self, w: &[u16]) -> Result<Poly> {
        self.rw.nf(&Poly::word(w.to_vec()))
    }

    /// `nf(nf(p) * nf(q))`.
    pub fn mul(&self, p: &Poly, q: &Poly) -> Result<Poly> {
        let p = self.rw.nf(p)?;
        let mut acc = Poly::zero();
        for (w, c) in q.terms() {
            acc.add_scaled(&self.rw.extend(p.clone(), w, 0)?, c);
        }
        Ok(acc)
    }

    pub fn is_irreducible(&self, w: &[u16]) -> bool {
        self.rw.is_irreducible(w)
    }

    pub fn tensor_nf(&self, t: &TPoly) -> Result<TPoly> {
        let mut out = TPoly::zero();
        for ((u, v), c) in t.terms() {
            let nu = self.nf_word(u)?;
            let nv = self.nf_word(v)?;
            out.add_product(&nu, &nv, c);
        }
        Ok(out)
    }

    /// Product in the tensor square, reduced on both sides.
    pub fn tensor_mul(&self, s: &TPoly, t: &TPoly) -> Result<TPoly> {
        let mut out = TPoly::zero();
        for ((u1, v1), c1) in s.terms() {
            for ((u2, v2), c2) in t.terms() {
                let l = self.rw.extend(self.nf_word(u1)?, u2, 0)?;
                let r = self.rw.extend(self.nf_word(v1)?, v2, 0)?;
                out.add_product(&l, &r, &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Critical pairs (overlaps and inclusions of leading words), each
    /// reduced both ways.
    pub fn confluence_check(&self) -> Result<OverlapReport> {
        let pairs = self.critical_pairs()?.into_iter().map(|(p, _)| p).collect();
        Ok(OverlapReport { rules: self.rw.rules.len(), pairs })
    }

    fn critical_pairs(&self) -> Result<Vec<(CriticalPair, Poly)>> {
        let rules = &self.rw.rules;
        let mut jobs: Vec<(usize, usize, usize, bool)> = Vec::new();
        for (i, ri) in rules.iter().enumerate() {
            for (j, rj) in rules.iter().enumerate() {
                let (li, lj) = (ri.lhs.len(), rj.lhs.len());
                for k in 1..li.min(lj) {
                    if ri.lhs[li - k..] == rj.lhs[..k] {
                        jobs.push((i, j, k, false));
                    }
                }
                if i != j && contains_subword(&ri.lhs, &rj.lhs) {
                    let pos = ri.lhs.windows(lj).position(|w| w == rj.lhs.as_slice()).expect("contained");
                    jobs.push((i, j, pos, true));
                }
            }
        }
        jobs.par_iter().map(|&(i, j, k, inclusion)| self.resolve(i, j, k, inclusion)).collect()
    }

    fn resolve(&self, i: usize, j: usize, k: usize, inclusion: bool) -> Result<(CriticalPair, Poly)> {
        let (ri, rj) = (&self.rw.rules[i], &self.rw.rules[j]);
        let (word, left, right) = if inclusion {
            // lhs_i = p lhs_j q
            let p = ri.lhs[..k].to_vec();
            let q = ri.lhs[k + rj.lhs.len()..].to_vec();
            let right = Poly::word(p).mul(&rj.rhs).mul(&Poly::word(q));
            (ri.lhs.clone(), ri.rhs.clone(), right)
        } else {
            let li = ri.lhs.len();
            let tail = rj.lhs[k..].to_vec();
            let head = ri.lhs[..li - k].to_vec();
            let mut word = ri.lhs.clone();
            word.extend_from_slice(&tail);
            (word, ri.rhs.mul(&Poly::word(tail)), Poly::word(head).mul(&rj.rhs))
        };
        let mut diff = self.rw.nf(&left)?;
        diff.add_scaled(&self.rw.nf(&right)?, &Scalar::from_int(-1));
        let resolved = diff.is_zero();
        let pair = CriticalPair {
            word: self.format_word(&word),
            rules: (ri.origin.clone(), rj.origin.clone()),
            resolved,
            difference: (!resolved).then(|| self.format(&diff)),
        };
        Ok((pair, diff))
    }

    /// Adds the unresolved critical-pair differences as new rules until the
    /// system is confluent, within `max_rounds` rounds and `max_rules` rules.
    pub fn complete(&mut self, max_rounds: usize, max_rules: usize) -> Result<CompletionReport> {
        let mut added = Vec::new();
        for round in 0..=max_rounds {
            let new: Vec<(Poly, String)> = self
                .critical_pairs()?
                .into_iter()
                .filter(|(p, _)| !p.resolved)
                .enumerate()
                .map(|(idx, (_, diff))| (diff, format!("completion {}.{}", round + 1, idx + 1)))
                .collect();
            if new.is_empty() {
                return Ok(CompletionReport { rounds: round, added });
            }
            if round == max_rounds {
                break;
            }
            let before: BTreeSet<Word> = self.rw.rules.iter().map(|r| r.lhs.clone()).collect();
            let rules = interreduce(&self.alphabet, self.rw.rules.clone(), new, self.rw.step_cap)?;
            if rules.len() > max_rules {
                return Err(Error::Resource(format!("completion exceeded {max_rules} rules")));
            }
            for r in &rules {
                if !before.contains(&r.lhs) {
                    added.push(format!("{} -> {}", self.format_word(&r.lhs), self.format(&r.rhs)));
                }
            }
            self.rw = Rewriter::new(rules, self.rw.step_cap);
        }
        Err(Error::Resource(format!("completion did not finish within {max_rounds} rounds")))
    }

    /// Irreducible words, by breadth-first extension of irreducible words.
    pub fn enumerate_words(&self, word_bound: usize) -> (Vec<Word>, bool) {
        let letters: Vec<u16> = (0..self.alphabet.len() as u16).collect();
        self.enumerate_over(&letters, word_bound)
    }

    fn enumerate_over(&self, letters: &[u16], word_bound: usize) -> (Vec<Word>, bool) {
        let mut all: Vec<Word> = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for w in &layer {
                for &x in letters {
                    let mut wx = w.clone();
                    wx.push(x);
                    if self.rw.suffix_rule(&wx).is_none() {
                        next.push(wx);
                    }
                }
            }
            all.extend(next.iter().cloned());
            if all.len() > word_bound {
                all.sort_by(|u, v| self.alphabet.cmp_words(u, v));
                return (all, false);
            }
            layer = next;
        }
        all.sort_by(|u, v| self.alphabet.cmp_words(u, v));
        (all, true)
    }

    pub fn enumerate_basis(&self, word_bound: usize) -> Basis {
        let (words, finite) = self.enumerate_words(word_bound);
        let dim = finite.then_some(words.len());
        Basis { words: words.iter().map(|w| self.format_word(w)).collect(), dim }
    }

    /// Irreducible words in the group letters only.
    pub fn group_words(&self, word_bound: usize) -> (Vec<Word>, bool) {
        self.enumerate_over(&self.alphabet.letters(LetterClass::Group), word_bound)
    }

    /// Same irreducible words and the same normal form for every product of
    /// two of them.
    pub fn same_multiplication(&self, other: &Presentation, word_bound: usize) -> Result<Option<String>> {
        if self.alphabet.names != other.alphabet.names {
            return Ok(Some("generator lists differ".into()));
        }
        let (b1, f1) = self.enumerate_words(word_bound);
        let (b2, f2) = other.enumerate_words(word_bound);
        if !f1 || !f2 {
            return Err(Error::Resource("basis exceeds the word bound".into()));
        }
        if b1 != b2 {
            return Ok(Some(format!("bases differ: {} vs {} words", b1.len(), b2.len())));
        }
        let pairs: Vec<(usize, usize)> = (0..b1.len()).flat_map(|i| (0..b1.len()).map(move |j| (i, j))).collect();
        let bad = pairs.par_iter().find_map_first(|&(i, j)| {
            let mut w = b1[i].clone();
            w.extend_from_slice(&b1[j]);
            match (self.nf_word(&w), other.nf_word(&w)) {
                (Ok(x), Ok(y)) if x == y => None,
                (Ok(x), Ok(y)) => Some(Ok(format!(
                    "{} * {}: {} vs {}",
                    self.format_word(&b1[i]),
                    self.format_word(&b1[j]),
                    self.format(&x),
                    other.format(&y)
                ))),
                (Err(e), _) | (_, Err(e)) => Some(Err(e)),
            }
        });
        bad.transpose()
    }
}

/// Orients and interreduces `existing` rules together with new relations.
fn interreduce(alphabet: &Alphabet, existing: Vec<Rule>, new: Vec<(Poly, String)>, step_cap: usize) -> Result<Vec<Rule>> {
    let mut rules = existing;
    let mut queue: VecDeque<(Poly, String)> = new.into();
    while let Some((f, origin)) = queue.pop_front() {
        let rw = Rewriter::new(rules.clone(), step_cap);
        let g = rw.nf(&f)?;
        let Some(lead) = alphabet.leading(&g) else {
            continue;
        };
        let c = g.coeff(&lead);
        let inv = c.inv()?;
        let mut rhs = g.clone();
        rhs.remove(&lead);
        let rhs = rhs.scaled(&(-&inv));
        let mut kept = Vec::new();
        for r in rules.drain(..) {
            if contains_subword(&r.lhs, &lead) {
                let mut back = Poly::word(r.lhs.clone());
                back.add_scaled(&r.rhs, &Scalar::from_int(-1));
                queue.push_back((back, r.origin));
            } else {
                kept.push(r);
            }
        }
        rules = kept;
        rules.push(Rule { lhs: lead, rhs, origin });
    }
    // fully reduce right-hand sides
    let rw = Rewriter::new(rules.clone(), step_cap);
    for r in rules.iter_mut() {
        r.rhs = rw.nf(&r.rhs)?;
    }
    Ok(rules)
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfCheck {
    pub checks: Vec<AxiomCheck>,
}

impl HopfCheck {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_moves_group_letters_right() {
        let a = Alphabet::new(&["a", "b", "c", "d"], &["p1", "p2"]).unwrap();
        let w = |s: &str| a.parse_word(s).unwrap();
        use std::cmp::Ordering::*;
        assert_eq!(a.cmp_words(&w("d*p1"), &w("p2*a*d")), Greater);
        assert_eq!(a.cmp_words(&w("d*b"), &w("c*d")), Greater);
        assert_eq!(a.cmp_words(&w("p1*p1"), &w("a*b*c")), Greater);
        assert_eq!(a.cmp_words(&w("p2*p1"), &w("p1*p2")), Greater);
        assert_eq!(a.cmp_words(&w("d*d"), &w("a")), Greater);
    }

    #[test]
    fn free_algebra_is_confluent() {
        let a = Alphabet::new(&[], &["t"]).unwrap();
        let p = Presentation::from_relations("free", a, vec![]).unwrap();
        assert!(p.confluence_check().unwrap().confluent());
        assert_eq!(p.enumerate_basis(10).dim, None);
    }
}
