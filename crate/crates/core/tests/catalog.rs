use ydlift::catalog::keys::{self, CatalogKey, CatalogObject, Kind};
use ydlift::catalog::{hopf, iso, lift, modules};
use ydlift::finhopf::check_hopf_morphism;
use ydlift::nichols::{graded_dims_of, Caps};
use ydlift::present::{Param, ParamSet, Shape};
use ydlift::Scalar;

fn make(name: &str) -> ydlift::Result<CatalogObject> {
    keys::make(&CatalogKey::parse(name)?)
}

#[test]
fn keys_by_name() {
    assert!(matches!(make("H").unwrap(), CatalogObject::Hopf(h) if h.dim() == 16));
    assert!(matches!(make("M15").unwrap(), CatalogObject::Module(m) if m.dim() == 2));
    assert!(matches!(make("tau1").unwrap(), CatalogObject::Matrix(m) if m.is_identity()));
    assert_eq!(CatalogKey::parse("Omega_9").unwrap().kind, Kind::Omega);
    assert_eq!(CatalogKey::parse("U44").unwrap().index(), Some(44));
    assert!(CatalogKey::parse("W3").is_err());
    let zeros = CatalogKey::parse("Omega_1").unwrap().with_multiplicities(vec![0; 8]);
    assert!(keys::make(&zeros).is_err());
    let with = CatalogKey::parse("U4").unwrap().with_multiplicities(vec![1; 4]).with_params(lift::scalar_params(&[("lambda", Scalar::one())]));
    assert!(keys::make(&with).is_err());
}

#[test]
fn automorphisms() {
    let h = hopf::h();
    let t17 = hopf::tau(&h, 17).unwrap();
    let fourth = &(&t17 * &t17) * &(&t17 * &t17);
    assert_eq!(fourth, hopf::tau(&h, 1).unwrap());
    for k in 1..=32 {
        assert!(check_hopf_morphism(&h, &h, &hopf::tau(&h, k).unwrap()), "tau{k}");
    }
    assert!(hopf::tau(&h, 33).is_none());
    let rep = hopf::automorphism_group_check();
    assert_eq!(rep.group_order, 32);
}

fn u1_params(n: &[usize], lambda: i64) -> ParamSet {
    let mut ps = ParamSet::new();
    for (name, shape) in lift::param_shapes(1, n).unwrap() {
        let Shape::Matrix(r, c) = shape else { panic!("U1 takes matrices") };
        ps.insert(name, Param::Matrix(vec![vec![Scalar::from_int(lambda); c]; r]));
    }
    ps
}

#[test]
fn u1_rescaling_witness() {
    let n = [1, 0, 0, 1, 0, 0, 0, 0];
    let (p, pp) = (u1_params(&n, 1), u1_params(&n, 4));
    let one = |x: Scalar| Param::Matrix(vec![vec![x]]);
    let mut w = ParamSet::new();
    w.insert("a", one(Scalar::one()));
    w.insert("d", one(Scalar::from_frac(1, 4)));
    let rep = iso::iso_condition(1, &n, &p, &pp, &iso::Witness::new(1, w)).unwrap();
    assert!(rep.holds, "{rep:?}");

    let mut id = ParamSet::new();
    id.insert("a", one(Scalar::one()));
    id.insert("d", one(Scalar::one()));
    let rep = iso::iso_condition(1, &n, &p, &p, &iso::Witness::new(1, id.clone())).unwrap();
    assert!(rep.holds);
    assert!(!iso::iso_condition(1, &n, &p, &pp, &iso::Witness::new(1, id)).unwrap().holds);
}

#[test]
fn u14_different_alpha_is_not_identified() {
    let s = Scalar::from_int;
    let p = lift::scalar_params(&[("lambda", s(1)), ("mu", s(1)), ("alpha", s(0))]);
    let pp = lift::scalar_params(&[("lambda", s(1)), ("mu", s(1)), ("alpha", s(1))]);
    let w = lift::scalar_params(&[("z1", s(1)), ("z2", s(0)), ("beta1", s(0)), ("beta2", s(1))]);
    let rep = iso::iso_condition(14, &[], &p, &pp, &iso::Witness::new(1, w.clone())).unwrap();
    assert!(!rep.holds);
    assert!(rep.mismatches.iter().any(|m| m == "alpha"));
    assert!(iso::iso_condition(14, &[], &pp, &pp, &iso::Witness::new(1, w)).unwrap().holds);
}

#[test]
fn singular_witness_is_rejected() {
    let s = Scalar::from_int;
    let p = lift::scalar_params(&[("lambda", s(1)), ("mu", s(1)), ("alpha", s(0))]);
    let w = lift::scalar_params(&[("z1", s(1)), ("z2", s(1)), ("beta1", s(1)), ("beta2", s(1))]);
    let rep = iso::iso_condition(14, &[], &p, &p, &iso::Witness::new(1, w)).unwrap();
    assert!(!rep.holds);
    assert!(rep.reason.is_some());
}

#[test]
fn isomorphic_pairs_share_graded_dimensions() {
    let caps = Caps::default();
    let dims = |i: usize, n: &[usize]| graded_dims_of(&modules::omega(i, n).unwrap(), 10, &caps).unwrap().dims;
    for (i, j) in keys::ISOMORPHIC_WITH_MULTIPLICITIES {
        let n = [1, 2, 0, 1];
        assert_eq!(dims(i, &n), dims(j, &n), "Omega_{i} vs Omega_{j}");
    }
    for (i, j) in keys::ISOMORPHIC_PAIRS {
        assert_eq!(dims(i, &[]), dims(j, &[]), "Omega_{i} vs Omega_{j}");
    }
}

#[test]
fn listing() {
    let l = keys::list();
    assert!(!l.is_empty());
    assert!(l.iter().any(|e| e.name == "U45" && e.kind == Kind::Lifting));
    for e in &l {
        assert!(!e.description.is_empty(), "{}", e.name);
    }
    assert_eq!(keys::involutive_cases().len(), 148);
    assert_eq!(keys::infinite_pairs().len(), 64);
}
