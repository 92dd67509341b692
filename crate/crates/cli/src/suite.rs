//! The acceptance checks, shared by `suite all` and the `acceptance` test.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ydlift::catalog::keys;
use ydlift::catalog::{hopf, iso, lift, modules};
use ydlift::linalg::Matrix;
use ydlift::nichols::{graded_dims_of, Caps};
use ydlift::present::{check_presented_morphism, parse_presentation, Param, ParamSet, Poly, Presentation, Shape};
use ydlift::ydmod::{braiding, is_involutive_pair, transfer_to_dual, BraidedSpace};
use ydlift::{Result, Scalar};

use crate::commands::presentation_checks;
use crate::report::Check;

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    body: fn() -> Vec<Check>,
}

impl Criterion {
    pub fn run(&self) -> Vec<Check> {
        (self.body)()
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "Hopf axioms of H and mutated relations", body: hopf_axioms },
        Criterion { id: 2, title: "group-likes of H", body: group_likes },
        Criterion { id: 3, title: "automorphism group of order 32", body: automorphisms },
        Criterion { id: 4, title: "simple Yetter-Drinfeld modules", body: yd_modules },
        Criterion { id: 5, title: "Nichols dimensions and involutive pairs", body: nichols_dims },
        Criterion { id: 6, title: "transfer to the dual", body: dual_transfer },
        Criterion { id: 7, title: "lifting dimensions", body: lifting_dims },
        Criterion { id: 8, title: "confluence and a forced overlap failure", body: confluence },
        Criterion { id: 9, title: "bialgebra and antipode of the liftings", body: hopf_structure },
        Criterion { id: 10, title: "trivial liftings", body: trivial_liftings },
        Criterion { id: 11, title: "isomorphism checks", body: isomorphisms },
        Criterion { id: 12, title: "graded at zero parameters", body: graded_at_zero },
    ]
}

fn caps() -> Caps {
    Caps::default()
}

fn failed(name: impl Into<String>, e: ydlift::Error) -> Check {
    Check::new(name, false).witness(e.to_string())
}

fn collect(name: &str, r: Result<Check>) -> Check {
    r.unwrap_or_else(|e| failed(name, e))
}

/// Every parameter set to `f(k)`, `k` counting entries across parameters.
pub fn fill(shapes: &[(&str, Shape)], f: impl Fn(usize) -> Scalar) -> ParamSet {
    let mut k = 0;
    let mut next = || {
        k += 1;
        f(k - 1)
    };
    let mut ps = ParamSet::new();
    for (name, shape) in shapes {
        let p = match shape {
            Shape::Scalar => Param::Scalar(next()),
            Shape::Vector(n) => Param::Vector((0..*n).map(|_| next()).collect()),
            Shape::Matrix(r, c) => Param::Matrix((0..*r).map(|_| (0..*c).map(|_| next()).collect()).collect()),
        };
        ps.insert(name, p);
    }
    ps
}

/// Zero, all ones, and a mixed pattern over `Q(xi)`.
pub fn instances(i: usize, n: &[usize]) -> Result<Vec<(&'static str, ParamSet)>> {
    let shapes = lift::param_shapes(i, n)?;
    let pattern = [
        Scalar::from_frac(1, 2),
        Scalar::xi(),
        Scalar::from_int(-2),
        Scalar::gaussian(1, 1),
        Scalar::from_int(3),
    ];
    Ok(vec![
        ("zero", fill(&shapes, |_| Scalar::zero())),
        ("ones", fill(&shapes, |_| Scalar::one())),
        ("mixed", fill(&shapes, |k| pattern[k % pattern.len()].clone())),
    ])
}

/// Multiplicities used where a family takes them.
pub fn sample_n(i: usize) -> Vec<usize> {
    vec![1; lift::arity(i).unwrap_or(0)]
}

fn hopf_axioms() -> Vec<Check> {
    let h = modules::h_arc();
    let rep = h.verify_axioms();
    let mut out = vec![Check::new("six axiom groups", rep.checks.len() == 6 && rep.all_passed())
        .value(rep.checks.iter().map(|c| c.name.clone()).collect::<Vec<_>>())
        .witness(rep.failures().map(|c| c.name.clone()).collect::<Vec<_>>().join(", "))];

    let base = parse_presentation(lift::H_DSL).and_then(|p| presentation_checks(&p));
    out.push(collect(
        "H as a presentation",
        base.map(|cs| {
            let bad: Vec<String> = cs.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
            Check::new("H as a presentation", bad.is_empty()).witness(bad.join(", "))
        }),
    ));

    // flip the sign of the right-hand side of one defining line at a time
    let lines: Vec<&str> = lift::H_DSL.lines().collect();
    for (k, line) in lines.iter().enumerate() {
        let mutated = if let Some(rest) = line.strip_prefix("rel: ") {
            let (lhs, rhs) = rest.split_once(" -> ").expect("oriented");
            format!("rel: {lhs} -> -({rhs})")
        } else if let Some(rest) = line.strip_prefix("delta: ") {
            let (g, rhs) = rest.split_once(" = ").expect("delta line");
            if g == "d" {
                format!("delta: d = {}", rhs.replace("(1/2)", "(1/3)"))
            } else {
                format!("delta: {g} = -({rhs})")
            }
        } else if let Some(rest) = line.strip_prefix("eps: ") {
            let (g, rhs) = rest.split_once(" = ").expect("eps line");
            format!("eps: {g} = -({rhs})")
        } else {
            continue;
        };
        let mut src: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
        src[k] = mutated.clone();
        let name = format!("mutant `{mutated}` fails");
        let res = parse_presentation(&src.join("\n")).and_then(|p| presentation_checks(&p));
        out.push(match res {
            Ok(cs) => match cs.iter().find(|c| !c.passed) {
                Some(c) if c.witness.is_some() => Check::new(name, true)
                    .value(format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())),
                Some(c) => Check::new(name, false).witness(format!("{} failed without a witness", c.name)),
                None => Check::new(name, false).witness("every check passed"),
            },
            // a mutant that cannot even be oriented or parsed is rejected too
            Err(e) => Check::new(name, true).value(e.to_string()),
        });
    }
    out
}

fn group_likes() -> Vec<Check> {
    let h = modules::h_arc();
    let g = match h.group_likes() {
        Ok(g) => g,
        Err(e) => return vec![failed("group-likes", e)],
    };
    let mut expected = Vec::new();
    for e in 0..8u32 {
        let word: Vec<&str> = ["a", "b", "c"].iter().enumerate().filter(|(k, _)| e >> k & 1 == 1).map(|(_, s)| *s).collect();
        let src = if word.is_empty() { "1".to_string() } else { word.join("*") };
        expected.push(h.eval(&src).expect("group word"));
    }
    let same_set = g.len() == 8 && g.iter().all(|x| expected.contains(x));
    let one = h.unit().clone();
    let elementary = g.iter().all(|x| h.mul(x, x) == one)
        && g.iter().all(|x| g.iter().all(|y| h.mul(x, y) == h.mul(y, x) && g.contains(&h.mul(x, y))));
    vec![
        Check::new("eight group-likes", g.len() == 8).value(g.len()),
        Check::new("equal to <a> x <b> x <c>", same_set),
        Check::new("elementary abelian of order 8", elementary),
    ]
}

fn automorphisms() -> Vec<Check> {
    let rep = hopf::automorphism_group_check();
    let mut out: Vec<Check> = rep
        .checks
        .iter()
        .map(|c| Check { name: c.name.clone(), passed: c.passed, value: None, witness: c.witness.clone() })
        .collect();
    out.push(Check::new("order 32", rep.group_order == 32).value(rep.group_order));
    out
}

fn simple_names() -> Vec<String> {
    (1..=8).map(|k| format!("V{k}")).chain((1..=20).map(|k| format!("M{k}"))).collect()
}

fn yd_modules() -> Vec<Check> {
    simple_names()
        .par_iter()
        .map(|name| {
            let r = modules::simple_by_name(name).map(|m| {
                let rep = m.validate();
                let braid = BraidedSpace::of(&m).satisfies_braid_equation();
                let bad: Vec<String> = rep.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
                let mut c = Check::new(format!("{name} valid, braid equation"), bad.is_empty() && braid);
                if !braid {
                    c = c.witness("braid equation fails");
                } else if !bad.is_empty() {
                    c = c.witness(bad.join(", "));
                }
                c
            });
            collect(name, r)
        })
        .collect()
}

fn nichols_dims() -> Vec<Check> {
    let mut out: Vec<Check> = simple_names()
        .par_iter()
        .map(|name| {
            let expected: Vec<usize> = if name.starts_with('V') { vec![1, 1, 0] } else { vec![1, 2, 1, 0] };
            let r = modules::simple_by_name(name).and_then(|m| graded_dims_of(&m, 6, &caps())).map(|g| {
                Check::new(format!("dims of B({name})"), g.dims == expected)
                    .value(&g.dims)
                    .witness(format!("{:?}", g.dims))
            });
            collect(name, r)
        })
        .collect();
    let pair = |v: &str, w: &str| -> Result<bool> {
        is_involutive_pair(&modules::simple_by_name(v)?, &modules::simple_by_name(w)?)
    };
    let cases = keys::involutive_cases();
    let bad: Vec<String> = cases
        .iter()
        .filter(|(_, v, w)| !pair(v, w).unwrap_or(false))
        .map(|(l, v, w)| format!("({l}) {v} {w}"))
        .collect();
    out.push(Check::new("involutive in every listed case", bad.is_empty()).value(cases.len()).witness(bad.join("; ")));
    let inf = keys::infinite_pairs();
    let bad: Vec<String> =
        inf.iter().filter(|(v, w)| pair(v, w).unwrap_or(true)).map(|(v, w)| format!("{v} {w}")).collect();
    out.push(Check::new("not involutive for V_i with M13..M20", bad.is_empty()).value(inf.len()).witness(bad.join("; ")));
    out
}

fn dual_transfer() -> Vec<Check> {
    let hs = modules::hstar_arc();
    simple_names()
        .par_iter()
        .map(|name| {
            let r = modules::simple_by_name(name).and_then(|m| {
                let d = transfer_to_dual(&m, &hs)?;
                let valid = d.validate().all_passed();
                let same = braiding(&d, &d)? == braiding(&m, &m)?;
                Ok(Check::new(format!("{name} over H*"), valid && same)
                    .witness(if valid { "braiding differs" } else { "not a Yetter-Drinfeld module" }))
            });
            collect(name, r)
        })
        .collect()
}

fn dim_check(i: usize, n: &[usize], label: &str, ps: &ParamSet, expected: usize) -> Check {
    let name = format!("dim {}[{label}] = {expected}", lift::family_name(i, n));
    let r = lift::lifting(i, n, ps).map(|p| {
        let d = p.enumerate_basis(1 << 16).dim;
        Check::new(name.clone(), d == Some(expected)).witness(format!("{d:?}"))
    });
    collect(&name, r)
}

fn lifting_dims() -> Vec<Check> {
    let mut jobs: Vec<(usize, Vec<usize>, usize)> = Vec::new();
    for mask in 1u32..256 {
        if mask.count_ones() <= 3 {
            let n: Vec<usize> = (0..8).map(|k| (mask >> k & 1) as usize).collect();
            jobs.push((1, n, 1 << (4 + mask.count_ones())));
        }
    }
    jobs.push((1, vec![1; 8], 4096));
    jobs.push((2, vec![1; 4], 1024));
    jobs.push((9, vec![1; 4], 1024));
    for i in [14, 15, 16, 20, 23, 29, 38, 39, 41, 42, 44, 45] {
        jobs.push((i, vec![], 256));
    }
    jobs.par_iter()
        .flat_map_iter(|(i, n, expected)| match instances(*i, n) {
            Ok(sets) => sets.into_iter().map(|(label, ps)| dim_check(*i, n, label, &ps, *expected)).collect(),
            Err(e) => vec![failed(lift::family_name(*i, n), e)],
        })
        .collect()
}

fn confluent_check(name: String, p: &Presentation) -> Check {
    match p.confluence_check() {
        Ok(rep) => {
            let w = rep.failures().next().map(|c| format!("{}: {}", c.word, c.difference.clone().unwrap_or_default()));
            Check::from_witness(name, w).value(rep.pairs.len())
        }
        Err(e) => failed(name, e),
    }
}

/// U14 with `p2 q1 + q1 p2` set to `alpha' (1 - bc)` for `alpha' != alpha`.
pub fn perturbed_u14(alpha: &Scalar, other: &Scalar) -> Result<Presentation> {
    let ps = lift::scalar_params(&[("lambda", Scalar::one()), ("mu", Scalar::one()), ("alpha", alpha.clone())]);
    let text = lift::family_dsl(14, &[], &ps)?;
    let target = "rel: p2*q1 + q1*p2 = alpha*(1 - b*c)";
    assert!(text.contains(target), "U14 text has the mixed relation");
    parse_presentation(&text.replace(target, &format!("rel: p2*q1 + q1*p2 = ({other})*(1 - b*c)")))
}

fn confluence() -> Vec<Check> {
    let mut out: Vec<Check> = lift::FAMILIES
        .par_iter()
        .map(|&i| {
            let n = sample_n(i);
            let (_, ps) = instances(i, &n).expect("shapes").remove(2);
            match lift::lifting(i, &n, &ps) {
                Ok(p) => confluent_check(format!("{} confluent", lift::family_name(i, &n)), &p),
                Err(e) => failed(lift::family_name(i, &n), e),
            }
        })
        .collect();
    let name = "U14 with unequal mixed constants has an unresolved overlap";
    out.push(collect(
        name,
        perturbed_u14(&Scalar::one(), &Scalar::from_int(2)).and_then(|p| {
            let rep = p.confluence_check()?;
            let first = rep.failures().next().map(|c| format!("{}: {}", c.word, c.difference.clone().unwrap_or_default()));
            Ok(Check::new(name, first.is_some()).value(first).witness("every overlap resolves"))
        }),
    ));
    out.push(collect(
        "U14 with equal mixed constants is confluent as written",
        perturbed_u14(&Scalar::one(), &Scalar::one())
            .map(|p| confluent_check("U14 with equal mixed constants is confluent as written".into(), &p)),
    ));
    out
}

fn hopf_structure() -> Vec<Check> {
    lift::FAMILIES
        .par_iter()
        .map(|&i| {
            let n = sample_n(i);
            let (_, ps) = instances(i, &n).expect("shapes").remove(2);
            let name = format!("{} bialgebra and antipode", lift::family_name(i, &n));
            let r = lift::lifting(i, &n, &ps).and_then(|p| {
                let cs = presentation_checks(&p)?;
                let bad = cs.iter().find(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
                Ok(Check::from_witness(name.clone(), bad))
            });
            collect(&name, r)
        })
        .collect()
}

fn trivial_liftings() -> Vec<Check> {
    lift::TRIVIAL_FAMILIES
        .par_iter()
        .map(|&i| {
            let n = match modules::omega_shape(i) {
                Some(modules::OmegaShape::WithM { .. }) => vec![1; 4],
                _ => vec![],
            };
            let name = format!("Omega_{i}{}: no deformation survives", if n.is_empty() { "" } else { "(1,1,1,1)" });
            let r = lift::deformation_trials(i, &n, &caps()).map(|ts| {
                // a survivor is a deformation with no overlap and no bialgebra failure
                let survivors: Vec<String> = ts
                    .iter()
                    .filter(|t| (t.confluent && t.bialgebra) || t.is_lifting())
                    .map(|t| format!("{} = 1 - {}", t.relation, t.group_like))
                    .collect();
                let mut cs = vec![Check::new(name.clone(), !ts.is_empty() && survivors.is_empty())
                    .value(ts.len())
                    .witness(if ts.is_empty() { "no candidate relation".into() } else { survivors.join("; ") })];
                if i == 4 {
                    let hit = ts.iter().any(|t| t.relation == "p1*A1 - A1*p1" && t.group_like == "a*c");
                    cs.push(Check::new("p1 A1 - A1 p1 is among the (1, ac)-skew-primitive candidates", hit));
                }
                cs
            });
            r.unwrap_or_else(|e| vec![failed(&name, e)])
        })
        .flatten()
        .collect()
}

fn rand_scalar(r: &mut ChaCha8Rng, nonzero: bool) -> Scalar {
    loop {
        let s = Scalar::gaussian(r.gen_range(-3..=3), r.gen_range(-1..=1));
        if !nonzero || !s.is_zero() {
            return s;
        }
    }
}

fn rand_params(r: &mut ChaCha8Rng, shapes: &[(&str, Shape)]) -> ParamSet {
    let mut ps = ParamSet::new();
    for (name, shape) in shapes {
        let p = match shape {
            Shape::Scalar => Param::Scalar(rand_scalar(r, false)),
            Shape::Vector(k) => Param::Vector((0..*k).map(|_| rand_scalar(r, false)).collect()),
            Shape::Matrix(a, b) => {
                Param::Matrix((0..*a).map(|_| (0..*b).map(|_| rand_scalar(r, false)).collect()).collect())
            }
        };
        ps.insert(name, p);
    }
    ps
}

fn rand_invertible(r: &mut ChaCha8Rng, k: usize) -> Vec<Vec<Scalar>> {
    loop {
        let m: Vec<Vec<Scalar>> = (0..k).map(|_| (0..k).map(|_| rand_scalar(r, false)).collect()).collect();
        if Matrix::from_rows(m.clone()).map(|x| x.rank() == k).unwrap_or(false) {
            return m;
        }
    }
}

fn rand_witness(r: &mut ChaCha8Rng, i: usize, n: &[usize], tau: usize) -> Result<iso::Witness> {
    let mut ps = ParamSet::new();
    for b in iso::blocks(i, n)? {
        match b.key {
            "w" => {
                let m = rand_invertible(r, 2);
                for (name, v) in [("z1", &m[0][0]), ("beta1", &m[0][1]), ("z2", &m[1][0]), ("beta2", &m[1][1])] {
                    ps.insert(name, Param::Scalar(v.clone()));
                }
            }
            "z" | "beta" => ps.insert(b.key, Param::Scalar(rand_scalar(r, true))),
            key if !b.copies.is_empty() => ps.insert(key, Param::Matrix(rand_invertible(r, b.copies.len()))),
            _ => {}
        }
    }
    Ok(iso::Witness::new(tau, ps))
}

/// Draws `I'`, `tau` and witness matrices, solves for `I`, and checks that
/// the induced map `U(I) -> U(I')` is a morphism.
pub fn soundness_instance(i: usize, n: &[usize], seed: u64) -> Result<Option<String>> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let shapes = lift::param_shapes(i, n)?;
    let taus = iso::allowed_taus(i, n)?;
    let tau = taus[r.gen_range(0..taus.len())];
    let ip = rand_params(&mut r, &shapes);
    let w = rand_witness(&mut r, i, n, tau)?;
    let p = iso::iso_target(i, n, &ip, &w)?;
    let rep = iso::iso_condition(i, n, &p, &ip, &w)?;
    if !rep.holds {
        return Ok(Some(format!("tau{tau}: condition fails on its own solution ({:?})", rep.mismatches)));
    }
    let u = lift::lifting(i, n, &p)?;
    let up = lift::lifting(i, n, &ip)?;
    let phi = iso::induced_map(&up, i, n, &w)?;
    let m = check_presented_morphism(&u, &up, &phi)?;
    Ok(m.checks.iter().find(|c| !c.passed).map(|c| format!("tau{tau}: {} {}", c.name, c.witness.clone().unwrap_or_default())))
}

fn scaled(p: &Presentation, factors: &[(&str, Scalar)]) -> Result<BTreeMap<String, Poly>> {
    let mut out = BTreeMap::new();
    for g in p.generators() {
        let mut img = p.element(g)?;
        if let Some((_, f)) = factors.iter().find(|(k, _)| g.starts_with(k)) {
            img = img.scaled(f);
        }
        out.insert(g.clone(), img);
    }
    Ok(out)
}

fn u45_iso() -> Result<Vec<Check>> {
    let s = Scalar::from_int;
    let u49 = lift::lifting(45, &[], &lift::scalar_params(&[("lambda", s(4)), ("mu", s(9))]))?;
    let u11 = lift::lifting(45, &[], &lift::scalar_params(&[("lambda", s(1)), ("mu", s(1))]))?;
    let fwd = scaled(&u11, &[("p", s(2)), ("q", s(3))])?;
    let back = scaled(&u49, &[("p", Scalar::from_frac(1, 2)), ("q", Scalar::from_frac(1, 3))])?;
    let f = check_presented_morphism(&u49, &u11, &fwd)?;
    let g = check_presented_morphism(&u11, &u49, &back)?;
    let first = |m: &ydlift::present::MorphismReport| {
        m.checks.iter().find(|c| !c.passed).map(|c| format!("{} {}", c.name, c.witness.clone().unwrap_or_default()))
    };
    let wit = iso::Witness::new(1, lift::scalar_params(&[("z", s(2)), ("beta", s(3))]));
    let cond = iso::iso_condition(45, &[], &lift::scalar_params(&[("lambda", s(4)), ("mu", s(9))]), &lift::scalar_params(&[("lambda", s(1)), ("mu", s(1))]), &wit)?;
    Ok(vec![
        Check::from_witness("U45(4,9) -> U45(1,1), p -> 2p, q -> 3q", first(&f)),
        Check::from_witness("U45(1,1) -> U45(4,9), p -> p/2, q -> q/3", first(&g)),
        // the scalings are mutually inverse on generators
        Check::new("maps are mutually inverse", &s(2) * &Scalar::from_frac(1, 2) == Scalar::one() && &s(3) * &Scalar::from_frac(1, 3) == Scalar::one()),
        Check::new("iso condition holds with z = 2, beta = 3", cond.holds).witness(format!("{:?}", cond.mismatches)),
    ])
}

fn isomorphisms() -> Vec<Check> {
    let mut out = u45_iso().unwrap_or_else(|e| vec![failed("U45(4,9) ~ U45(1,1)", e)]);
    let fams: [(usize, Vec<usize>); 7] =
        [(1, vec![1; 8]), (2, vec![1; 4]), (9, vec![1; 4]), (14, vec![]), (15, vec![]), (38, vec![]), (39, vec![])];
    let jobs: Vec<(usize, Vec<usize>, u64)> =
        fams.iter().flat_map(|(i, n)| (0..20).map(move |s| (*i, n.clone(), 1000 * *i as u64 + s))).collect();
    let results: Vec<(usize, Vec<usize>, u64, Result<Option<String>>)> = jobs
        .into_par_iter()
        .map(|(i, n, seed)| {
            let r = soundness_instance(i, &n, seed);
            (i, n, seed, r)
        })
        .collect();
    for (i, n) in &fams {
        let mine: Vec<&(usize, Vec<usize>, u64, Result<Option<String>>)> =
            results.iter().filter(|(j, m, _, _)| j == i && m == n).collect();
        let bad: Vec<String> = mine
            .iter()
            .filter_map(|(_, _, seed, r)| match r {
                Ok(None) => None,
                Ok(Some(w)) => Some(format!("seed {seed}: {w}")),
                Err(e) => Some(format!("seed {seed}: {e}")),
            })
            .collect();
        out.push(
            Check::new(format!("{} soundness on {} random instances", lift::family_name(*i, n), mine.len()), bad.is_empty())
                .witness(bad.join("; ")),
        );
    }
    out
}

fn graded_at_zero() -> Vec<Check> {
    [(14usize, vec![]), (2, vec![0; 4])]
        .par_iter()
        .map(|(i, n)| {
            let name = format!("{} equals B(Omega_{i}) # H", lift::family_name(*i, n));
            let r = (|| -> Result<Check> {
                let zero = fill(&lift::param_shapes(*i, n)?, |_| Scalar::zero());
                let u = lift::lifting(*i, n, &zero)?;
                let b = lift::bosonization(*i, n, &caps())?;
                let diff = u.same_multiplication(&b, 1 << 16)?;
                Ok(Check::from_witness(name.clone(), diff))
            })();
            collect(&name, r)
        })
        .collect()
}
