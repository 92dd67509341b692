use std::collections::BTreeMap;

use ydlift::catalog::{hopf, lift, modules};
use ydlift::nichols::Caps;
use ydlift::present::{
    check_presented_morphism, nichols_presentation, parse_presentation, smash_product, Alphabet, Param, ParamSet, Poly, Presentation,
    Shape,
};
use ydlift::{Error, Scalar};

fn u14(alpha: i64) -> Presentation {
    let ps = lift::scalar_params(&[("lambda", Scalar::one()), ("mu", Scalar::one()), ("alpha", Scalar::from_int(alpha))]);
    lift::lifting(14, &[], &ps).unwrap()
}

fn u14_text(alpha: i64) -> String {
    let ps = lift::scalar_params(&[("lambda", Scalar::one()), ("mu", Scalar::one()), ("alpha", Scalar::from_int(alpha))]);
    lift::family_dsl(14, &[], &ps).unwrap()
}

fn nf(p: &Presentation, src: &str) -> Poly {
    p.normal_form(&p.element(src).unwrap()).unwrap()
}

#[test]
fn u14_generators() {
    assert_eq!(u14(3).generators().len(), 8);
}

#[test]
fn normal_forms() {
    let p = u14(3);
    assert!(nf(&p, "p1*p1").is_zero());
    assert_eq!(nf(&p, "q2*p1"), nf(&p, "-p1*q2 + 3*(1 - b*c)"));
    assert_eq!(nf(&p, "d*d*d*d"), Poly::one());
    assert_eq!(nf(&p, "d*b"), nf(&p, "c*d"));
}

#[test]
fn orientation_is_checked() {
    assert!(matches!(parse_presentation("gens: | p1\nrel: p1 -> p1*p1\n"), Err(Error::Orientation(..))));
}

#[test]
fn confluence_of_u14_and_a_broken_variant() {
    assert!(u14(3).confluence_check().unwrap().confluent());
    let target = "rel: p2*q1 + q1*p2 = alpha*(1 - b*c)";
    let text = u14_text(1);
    assert!(text.contains(target));
    let broken = parse_presentation(&text.replace(target, "rel: p2*q1 + q1*p2 = 2*(1 - b*c)")).unwrap();
    let rep = broken.confluence_check().unwrap();
    let bad = rep.failures().next().expect("an unresolved overlap");
    assert!(bad.difference.as_deref().is_some_and(|d| d != "0"));
}

#[test]
fn dimensions() {
    let s = Scalar::one;
    let n = [1, 0, 0, 1, 0, 0, 0, 0];
    let mut ps = ParamSet::new();
    for (name, shape) in lift::param_shapes(1, &n).unwrap() {
        let Shape::Matrix(r, c) = shape else { panic!("U1 takes matrices") };
        ps.insert(name, Param::Matrix(vec![vec![s(); c]; r]));
    }
    assert_eq!(lift::lifting(1, &n, &ps).unwrap().enumerate_basis(1 << 12).dim, Some(64));
    assert_eq!(u14(3).enumerate_basis(1 << 12).dim, Some(256));
    let u38 = lift::lifting(38, &[], &lift::scalar_params(&[("lambda", s()), ("mu", s()), ("alpha", s())])).unwrap();
    assert_eq!(u38.enumerate_basis(1 << 12).dim, Some(256));
    let u44 = lift::lifting(44, &[], &lift::scalar_params(&[("lambda", s()), ("mu", Scalar::zero()), ("alpha", s())])).unwrap();
    assert_eq!(u44.enumerate_basis(1 << 12).dim, Some(256));
}

#[test]
fn word_bound_is_reported() {
    assert_eq!(u14(3).enumerate_basis(10).dim, None);
}

#[test]
fn smash_products() {
    let h = hopf::h();
    let v1 = modules::v(1).unwrap();
    let r = nichols_presentation(&v1, &Caps::default()).unwrap();
    let s = smash_product(&r, &h, Some(&v1)).unwrap();
    assert_eq!(s.enumerate_basis(1 << 10).dim, Some(32));
    assert!(s.check_bialgebra().unwrap().all_passed());

    let k = Presentation::from_relations("k", Alphabet::new(&[], &[]).unwrap(), vec![]).unwrap();
    let hk = smash_product(&k, &h, None).unwrap();
    assert_eq!(hk.enumerate_basis(1 << 10).dim, Some(16));
    assert!(hk.same_multiplication(&lift::h_presentation(), 1 << 10).unwrap().is_none());
}

#[test]
fn bosonization_of_omega14_is_u14_at_zero() {
    let zero = lift::lifting(14, &[], &lift::scalar_params(&[("lambda", Scalar::zero()), ("mu", Scalar::zero()), ("alpha", Scalar::zero())])).unwrap();
    let b = lift::bosonization(14, &[], &Caps::default()).unwrap();
    assert_eq!(zero.same_multiplication(&b, 1 << 12).unwrap(), None);
}

#[test]
fn bialgebra_checks() {
    assert!(u14(3).check_bialgebra().unwrap().all_passed());
    assert!(lift::h_presentation().check_bialgebra().unwrap().all_passed());
    let text = u14_text(3);
    let line = text.lines().find(|l| l.starts_with("delta: p1 =")).unwrap();
    let broken = parse_presentation(&text.replace(line, "delta: p1 = p1 @ 1 + c @ p1")).unwrap();
    let rep = broken.check_bialgebra().unwrap();
    assert!(!rep.all_passed());
    assert!(rep.checks.iter().filter(|c| !c.passed).all(|c| c.witness.is_some()));
}

#[test]
fn antipode_of_u14() {
    let rep = u14(3).find_antipode().unwrap();
    assert!(rep.images.is_some());
    assert!(rep.checks.iter().all(|c| c.passed));
}

fn identity_images(p: &Presentation) -> BTreeMap<String, Poly> {
    p.generators().iter().map(|g| (g.clone(), p.element(g).unwrap())).collect()
}

#[test]
fn presented_morphisms() {
    let p = u14(3);
    assert!(check_presented_morphism(&p, &p, &identity_images(&p)).unwrap().all_passed());
    let mut doubled = identity_images(&p);
    doubled.insert("p1".into(), p.element("2*p1").unwrap());
    assert!(!check_presented_morphism(&p, &p, &doubled).unwrap().all_passed());
}

#[test]
fn u45_rescaling() {
    let s = Scalar::from_int;
    let u49 = lift::lifting(45, &[], &lift::scalar_params(&[("lambda", s(4)), ("mu", s(9))])).unwrap();
    let u11 = lift::lifting(45, &[], &lift::scalar_params(&[("lambda", s(1)), ("mu", s(1))])).unwrap();
    let mut fwd = identity_images(&u11);
    for (g, f) in [("p1", 2), ("p2", 2), ("q1", 3), ("q2", 3)] {
        fwd.insert(g.into(), u11.element(&format!("{f}*{g}")).unwrap());
    }
    assert!(check_presented_morphism(&u49, &u11, &fwd).unwrap().all_passed());
    // the same map in the other direction is not a morphism
    let mut wrong = identity_images(&u49);
    for (g, f) in [("p1", 2), ("p2", 2), ("q1", 3), ("q2", 3)] {
        wrong.insert(g.into(), u49.element(&format!("{f}*{g}")).unwrap());
    }
    assert!(!check_presented_morphism(&u11, &u49, &wrong).unwrap().all_passed());
}
