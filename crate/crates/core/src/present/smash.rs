//! Quadratic presentations of Nichols algebras and smash products `R # H`.

use crate::error::{Error, Result};
use crate::finhopf::HopfData;
use crate::nichols::{graded_dims_of, quadratic_relations, Caps};
use crate::scalar::Scalar;
use crate::ydmod::{BraidedSpace, YdModule};

use super::{Alphabet, LetterClass, Poly, Presentation, TPoly, Word};

const COMPLETION_ROUNDS: usize = 12;
const COMPLETION_RULES: usize = 4000;

/// `T(V) / (ker(id + c))`, completed, and checked against the symmetrizer
/// ranks of `V` degree by degree.
pub fn nichols_presentation(m: &YdModule, caps: &Caps) -> Result<Presentation> {
    let names: Vec<&str> = m.basis_names().iter().map(String::as_str).collect();
    let alphabet = Alphabet::new(&[], &names)?;
    let d = m.dim();
    let rels = quadratic_relations(&BraidedSpace::of(m))
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let mut p = Poly::zero();
            for (idx, c) in v.into_iter().enumerate() {
                p.add_term(vec![(idx / d) as u16, (idx % d) as u16], c);
            }
            (p, format!("quadratic {}", k + 1))
        })
        .collect();
    let mut p = Presentation::from_relations(&format!("B({})", m.name), alphabet, rels)?;
    p.complete(COMPLETION_ROUNDS, COMPLETION_RULES)?;

    let dims = graded_dims_of(m, caps.degree, caps)?;
    if dims.total.is_none() {
        return Err(Error::Resource(format!("B({}) does not terminate by degree {}", m.name, caps.degree)));
    }
    let (words, finite) = p.enumerate_words(dims.total.unwrap_or(0) + 1);
    let mut counts = vec![0usize; dims.dims.len()];
    for w in &words {
        if w.len() < counts.len() {
            counts[w.len()] += 1;
        } else {
            return Err(Error::Invalid(format!("B({}) is not presented by its quadratic relations", m.name)));
        }
    }
    if !finite || counts != dims.dims {
        return Err(Error::Invalid(format!(
            "B({}) is not presented by its quadratic relations: {:?} vs {:?}",
            m.name, counts, dims.dims
        )));
    }
    Ok(p)
}

fn spelled(h: &HopfData, k: usize) -> Result<Word> {
    let sp = h.spelling().ok_or_else(|| Error::Invalid(format!("{} has no basis spelling", h.name)))?;
    Ok(sp[k].iter().map(|&g| g as u16).collect())
}

/// An element of `H` as a combination of spelled basis words.
fn spell(h: &HopfData, x: &[Scalar]) -> Result<Poly> {
    let mut p = Poly::zero();
    for (k, c) in x.iter().enumerate() {
        if !c.is_zero() {
            p.add_term(spelled(h, k)?, c.clone());
        }
    }
    Ok(p)
}

/// The smash product `R # H` on the group letters of `H` (its named
/// generators) followed by the generators of `R`, with
/// `g v = (g_(1) . v) g_(2)` and `Delta(v) = v (x) 1 + v_(-1) (x) v_(0)`.
/// `v = None` means `R` is the ground field.
pub fn smash_product(r: &Presentation, h: &HopfData, v: Option<&YdModule>) -> Result<Presentation> {
    let (alphabet, rels) = smash_relations(r, h, v)?;
    let mut p = Presentation::from_relations(&format!("{} # {}", r.name, h.name), alphabet, rels)?;
    p.complete(COMPLETION_ROUNDS, COMPLETION_RULES)?;
    set_smash_coalgebra(&mut p, h, v)?;
    Ok(p)
}

/// The defining relations of `R # H`, before any rewriting: relations of
/// `H`, the rules of `R` (origins prefixed `R: `) and the commutation rules.
pub fn smash_relations(r: &Presentation, h: &HopfData, v: Option<&YdModule>) -> Result<(Alphabet, Vec<(Poly, String)>)> {
    let gens: Vec<&str> = h.generators().iter().map(|(n, _)| n.as_str()).collect();
    if gens.is_empty() {
        return Err(Error::Invalid(format!("{} has no named generators", h.name)));
    }
    let mods: Vec<&str> = r.generators().iter().map(String::as_str).collect();
    match v {
        Some(m) if m.basis_names() != r.generators() => {
            return Err(Error::Invalid("generators of R differ from the basis of V".into()))
        }
        None if !mods.is_empty() => return Err(Error::Invalid("R has generators but no module was given".into())),
        _ => {}
    }
    if !r.alphabet().letters(LetterClass::Group).is_empty() {
        return Err(Error::Invalid("R must be generated by module letters only".into()));
    }
    let alphabet = Alphabet::new(&gens, &mods)?;
    let ng = gens.len() as u16;
    let n = h.dim();
    let mut rels: Vec<(Poly, String)> = Vec::new();

    // H: spelled(e_k) * g = spelled(e_k g)
    for k in 0..n {
        for (gi, (gname, g)) in h.generators().iter().enumerate() {
            let mut lhs = spelled(h, k)?;
            lhs.push(gi as u16);
            let mut f = Poly::word(lhs);
            f.add_scaled(&spell(h, &h.mul(&h.basis_vec(k), g))?, &Scalar::from_int(-1));
            rels.push((f, format!("H: {} * {gname}", h.basis_names()[k])));
        }
    }
    // R: relations shifted past the group letters
    for rule in r.rules() {
        let shift = |w: &Word| -> Word { w.iter().map(|&l| l + ng).collect() };
        let mut f = Poly::word(shift(&rule.lhs));
        for (w, c) in rule.rhs.terms() {
            f.add_term(shift(w), -c);
        }
        rels.push((f, format!("R: {}", rule.origin)));
    }
    if let Some(m) = v {
        let d = m.dim();
        for (gi, (gname, g)) in h.generators().iter().enumerate() {
            let dg = h.comul(g);
            for i in 0..d {
                let mut f = Poly::word(vec![gi as u16, ng + i as u16]);
                for j in 0..n {
                    for k in 0..n {
                        let c = &dg[j * n + k];
                        if c.is_zero() {
                            continue;
                        }
                        let col = m.action(j).column(i);
                        for (t, a) in col.iter().enumerate() {
                            if a.is_zero() {
                                continue;
                            }
                            let mut w = vec![ng + t as u16];
                            w.extend(spelled(h, k)?);
                            f.add_term(w, -(c * a));
                        }
                    }
                }
                rels.push((f, format!("commute {gname} {}", m.basis_names()[i])));
            }
        }
    }
    Ok((alphabet, rels))
}

/// Sets `Delta` and `epsilon` of a presentation on the letters of `R # H`.
pub fn set_smash_coalgebra(p: &mut Presentation, h: &HopfData, v: Option<&YdModule>) -> Result<()> {
    let ng = h.generators().len() as u16;
    let n = h.dim();
    for (gname, g) in h.generators() {
        let dg = h.comul(g);
        let mut t = TPoly::zero();
        for j in 0..n {
            for k in 0..n {
                if !dg[j * n + k].is_zero() {
                    t.add_term(spelled(h, j)?, spelled(h, k)?, dg[j * n + k].clone());
                }
            }
        }
        p.set_delta(gname, t)?;
        p.set_eps(gname, h.counit(g))?;
    }
    if let Some(m) = v {
        let d = m.dim();
        for i in 0..d {
            let mut e = vec![Scalar::zero(); d];
            e[i] = Scalar::one();
            let delta = m.delta(&e);
            let mut t = TPoly::simple(vec![ng + i as u16], Vec::new());
            for hk in 0..n {
                for s in 0..d {
                    let c = &delta[hk * d + s];
                    if !c.is_zero() {
                        t.add_term(spelled(h, hk)?, vec![ng + s as u16], c.clone());
                    }
                }
            }
            p.set_delta(&m.basis_names()[i], t)?;
            p.set_eps(&m.basis_names()[i], Scalar::zero())?;
        }
    }
    Ok(())
}
