//! Access by name to every catalog object, and the fixed tables of module
//! pairs (involutive sums, isomorphic bosonizations, infinite sums).

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finhopf::HopfData;
use crate::linalg::Matrix;
use crate::nichols::Caps;
use crate::present::{ParamSet, Presentation};
use crate::ydmod::YdModule;

use super::{hopf, lift, modules};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Hopf,
    Automorphism,
    SimpleModule,
    Omega,
    Lifting,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogKey {
    pub kind: Kind,
    pub name: String,
    pub multiplicities: Option<Vec<usize>>,
    pub params: Option<ParamSet>,
}

fn numbered(name: &str, prefixes: &[&str]) -> Option<usize> {
    prefixes.iter().find_map(|p| name.strip_prefix(p).and_then(|r| r.parse::<usize>().ok()))
}

impl CatalogKey {
    /// Infers the kind from the spelling: `H`, `Hstar`, `tau17`, `V3`,
    /// `M13`, `trivial`, `Omega_9` (or `Omega9`), `U44`.
    pub fn parse(name: &str) -> Result<Self> {
        let kind = if name == "H" || name == "Hstar" {
            Kind::Hopf
        } else if numbered(name, &["tau"]).is_some() {
            Kind::Automorphism
        } else if name == "trivial" || numbered(name, &["V", "M"]).is_some() {
            Kind::SimpleModule
        } else if numbered(name, &["Omega_", "Omega"]).is_some() {
            Kind::Omega
        } else if numbered(name, &["U"]).is_some() {
            Kind::Lifting
        } else {
            return Err(Error::UnknownName(name.into()));
        };
        Ok(CatalogKey { kind, name: name.into(), multiplicities: None, params: None })
    }

    pub fn with_multiplicities(mut self, n: Vec<usize>) -> Self {
        self.multiplicities = Some(n);
        self
    }

    pub fn with_params(mut self, ps: ParamSet) -> Self {
        self.params = Some(ps);
        self
    }

    fn n(&self) -> Vec<usize> {
        self.multiplicities.clone().unwrap_or_default()
    }

    /// Index of `Omega_i` or `U_i`.
    pub fn index(&self) -> Option<usize> {
        match self.kind {
            Kind::Omega => numbered(&self.name, &["Omega_", "Omega"]),
            Kind::Lifting => numbered(&self.name, &["U"]),
            Kind::Automorphism => numbered(&self.name, &["tau"]),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum CatalogObject {
    Hopf(Arc<HopfData>),
    Matrix(Matrix),
    Module(YdModule),
    Presentation(Presentation),
}

fn no_params(key: &CatalogKey) -> Result<()> {
    match &key.params {
        Some(ps) if ps.names().next().is_some() => {
            Err(Error::Invalid(format!("{} takes no parameters", key.name)))
        }
        _ => Ok(()),
    }
}

pub fn make(key: &CatalogKey) -> Result<CatalogObject> {
    let unknown = || Error::UnknownName(key.name.clone());
    match key.kind {
        Kind::Hopf => match key.name.as_str() {
            "H" => Ok(CatalogObject::Hopf(modules::h_arc())),
            "Hstar" => Ok(CatalogObject::Hopf(modules::hstar_arc())),
            _ => Err(unknown()),
        },
        Kind::Automorphism => {
            let k = key.index().ok_or_else(unknown)?;
            hopf::tau(&modules::h_arc(), k).map(CatalogObject::Matrix).ok_or_else(unknown)
        }
        Kind::SimpleModule => modules::simple_by_name(&key.name).map(CatalogObject::Module),
        Kind::Omega => {
            let i = key.index().ok_or_else(unknown)?;
            modules::omega(i, &key.n()).map(CatalogObject::Module)
        }
        Kind::Lifting => {
            let i = key.index().ok_or_else(unknown)?;
            if lift::FAMILIES.contains(&i) {
                let ps = key.params.clone().unwrap_or_default();
                lift::lifting(i, &key.n(), &ps).map(CatalogObject::Presentation)
            } else if lift::TRIVIAL_FAMILIES.contains(&i) {
                // only the bosonization lifts these
                no_params(key)?;
                lift::bosonization(i, &key.n(), &Caps::default()).map(CatalogObject::Presentation)
            } else {
                Err(unknown())
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub kind: Kind,
    pub name: String,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<usize>,
    /// Grouping label of the two-summand `Omega`s (14 or 15), kept as data.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block: Option<u8>,
}

fn entry(kind: Kind, name: String, description: String) -> Entry {
    Entry { kind, name, description, multiplicities: None, block: None }
}

pub fn list() -> Vec<Entry> {
    let mut out = vec![
        entry(Kind::Hopf, "H".into(), "16-dimensional semisimple Hopf algebra on a, b, c, d with d^2 = a, db = cd".into()),
        entry(Kind::Hopf, "Hstar".into(), "dual Hopf algebra of H".into()),
    ];
    for k in 1..=32 {
        let im = hopf::tau_images(k).expect("in range");
        out.push(entry(
            Kind::Automorphism,
            format!("tau{k}"),
            format!("Hopf automorphism a -> {}, b -> {}, c -> {}, d -> {}", im[0], im[1], im[2], im[3]),
        ));
    }
    out.push(entry(Kind::SimpleModule, "trivial".into(), "trivial one-dimensional module".into()));
    for (k, (i, j, kk, l)) in modules::V_PARAMS.iter().enumerate() {
        out.push(entry(
            Kind::SimpleModule,
            format!("V{}", k + 1),
            format!("one-dimensional module k_chi({i},{j},{kk},{l})"),
        ));
    }
    for k in 1..=20 {
        out.push(entry(Kind::SimpleModule, format!("M{k}"), "two-dimensional simple module".into()));
    }
    for i in 1..=49 {
        let shape = modules::omega_shape(i).expect("in range");
        let (description, mult, block) = match shape {
            modules::OmegaShape::Ones => ("sum of copies of V1..V8".to_string(), Some(8), None),
            modules::OmegaShape::WithM { vs, m } => {
                (format!("copies of V{}, V{}, V{}, V{} plus M{m}", vs[0], vs[1], vs[2], vs[3]), Some(4), None)
            }
            modules::OmegaShape::Pair { first, second, block } => {
                (format!("M{first} (+) M{second}"), None, Some(block))
            }
        };
        out.push(Entry { kind: Kind::Omega, name: format!("Omega_{i}"), description, multiplicities: mult, block });
    }
    for i in lift::FAMILIES {
        let mut e = entry(Kind::Lifting, format!("U{i}"), format!("liftings of B(Omega_{i}) # H"));
        e.multiplicities = lift::arity(i).filter(|&k| k > 0);
        out.push(e);
    }
    for i in lift::TRIVIAL_FAMILIES {
        let mut e = entry(Kind::Lifting, format!("U{i}"), format!("B(Omega_{i}) # H, which has no other lifting"));
        if matches!(modules::omega_shape(i), Some(modules::OmegaShape::WithM { .. })) {
            e.multiplicities = Some(4);
        }
        out.push(e);
    }
    out
}

/// Pairs `(V, W)` of simple modules for which `B(V (+) W)` is the braided
/// tensor product `B(V) (x) B(W)`, labelled by case letter.
pub fn involutive_cases() -> Vec<(char, String, String)> {
    let vs = |ks: &[usize]| ks.iter().map(|k| format!("V{k}")).collect::<Vec<_>>();
    let ms = |ks: &[usize]| ks.iter().map(|k| format!("M{k}")).collect::<Vec<_>>();
    let mut out = Vec::new();
    let mut cross = |label: char, left: Vec<String>, right: Vec<String>| {
        for l in &left {
            for r in &right {
                out.push((label, l.clone(), r.clone()));
            }
        }
    };
    let all_v = vs(&[1, 2, 3, 4, 5, 6, 7, 8]);
    cross('a', all_v.clone(), all_v);
    cross('b', vs(&[5, 6, 7, 8]), ms(&[1, 8]));
    cross('c', vs(&[1, 2, 3, 4]), ms(&[2, 7]));
    cross('d', vs(&[1, 2, 5, 6]), ms(&[3, 11]));
    cross('e', vs(&[1, 2, 7, 8]), ms(&[4, 12]));
    cross('f', vs(&[3, 4, 7, 8]), ms(&[5, 9]));
    cross('g', vs(&[3, 4, 5, 6]), ms(&[6, 10]));
    cross('h', ms(&[1]), ms(&[2, 7]));
    cross('h', ms(&[3, 11]), ms(&[5, 9]));
    cross('i', ms(&[4, 12]), ms(&[6, 10]));
    for (l, r) in [(2, 8), (7, 8), (13, 14), (15, 16), (17, 18), (19, 20)] {
        cross('j', ms(&[l]), ms(&[r]));
    }
    for k in 1..=20 {
        cross('k', ms(&[k]), ms(&[k]));
    }
    out
}

/// `(V_i, M_j)` with `j` in 13..=20, whose sums have infinite Nichols algebras.
pub fn infinite_pairs() -> Vec<(String, String)> {
    (1..=8).flat_map(|i| (13..=20).map(move |j| (format!("V{i}"), format!("M{j}")))).collect()
}

/// `(i, j)` with `B(Omega_i(n)) # H` isomorphic to `B(Omega_j(n)) # H` for
/// every multiplicity tuple `n`.
pub const ISOMORPHIC_WITH_MULTIPLICITIES: [(usize, usize); 8] =
    [(2, 3), (4, 6), (5, 7), (8, 9), (10, 12), (11, 13), (4, 11), (5, 10)];

/// `(i, j)` with `B(Omega_i) # H` isomorphic to `B(Omega_j) # H`.
pub const ISOMORPHIC_PAIRS: [(usize, usize); 20] = [
    (14, 17),
    (16, 18),
    (19, 25),
    (21, 26),
    (22, 27),
    (24, 28),
    (29, 31),
    (32, 36),
    (34, 37),
    (38, 40),
    (41, 43),
    (44, 46),
    (47, 49),
    (21, 24),
    (22, 32),
    (23, 33),
    (19, 34),
    (20, 35),
    (44, 47),
    (45, 48),
];
