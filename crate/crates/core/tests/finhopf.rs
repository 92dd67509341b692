use ydlift::catalog::{hopf, modules};
use ydlift::finhopf::{check_hopf_morphism, hopf_morphism_defect, HopfData};
use ydlift::linalg::Matrix;
use ydlift::Scalar;

fn z2() -> HopfData {
    HopfData::group_algebra("kZ2", vec!["1".into(), "g".into()], |i, j| (i + j) % 2).unwrap()
}

#[test]
fn h_and_z2_satisfy_the_axioms() {
    let h = hopf::h();
    assert_eq!(h.dim(), 16);
    let rep = h.verify_axioms();
    assert!(rep.all_passed(), "{:?}", rep.failures().map(|c| c.name.clone()).collect::<Vec<_>>());
    assert!(z2().verify_axioms().all_passed());
}

#[test]
fn d_squared_one_breaks_the_axioms() {
    let h = hopf::h();
    let mut j = h.to_json();
    let (d, a) = (h.basis_index("d").unwrap(), h.basis_index("a").unwrap());
    let one = h.unit().iter().position(|c| !c.is_zero()).unwrap();
    let mut hit = false;
    for (i, jj, k, _) in j.mul.iter_mut() {
        if *i == d && *jj == d && *k == a {
            *k = one;
            hit = true;
        }
    }
    assert!(hit);
    let bad = HopfData::from_json(&j).unwrap();
    let rep = bad.verify_axioms();
    assert!(!rep.all_passed());
    assert!(rep.failures().all(|c| c.witness.is_some()));
}

#[test]
fn group_likes() {
    assert_eq!(hopf::h().group_likes().unwrap().len(), 8);
    assert_eq!(z2().group_likes().unwrap().len(), 2);
    assert_eq!(hopf::h().dualize().group_likes().unwrap().len(), 8);
}

#[test]
fn skew_primitives() {
    let h = hopf::h();
    let one = h.eval("1").unwrap();
    let bc = h.eval("b*c").unwrap();
    let sp = h.skew_primitives(&one, &bc);
    assert_eq!(sp.len(), 1);
    let target = h.eval("1 - b*c").unwrap();
    let k = target.iter().position(|c| !c.is_zero()).unwrap();
    let f = &target[k] * &sp[0][k].inv().unwrap();
    assert_eq!(sp[0].iter().map(|c| c * &f).collect::<Vec<_>>(), target);
    assert!(h.skew_primitives(&one, &one).is_empty());
}

#[test]
fn morphisms() {
    let h = hopf::h();
    assert!(check_hopf_morphism(&h, &h, &Matrix::identity(16)));
    assert!(check_hopf_morphism(&h, &h, &hopf::tau(&h, 17).unwrap()));
    let imgs = ["a", "b", "c", "b*d"].map(|s| h.eval(s).unwrap());
    let f = hopf::matrix_from_images(&h, &imgs);
    assert!(hopf_morphism_defect(&h, &h, &f).is_some());
}

#[test]
fn double_dual() {
    let h = hopf::h();
    let hs = h.dualize();
    assert!(hs.verify_axioms().all_passed());
    assert!(hs.dualize().same_structure(&h));
    assert!(modules::hstar_arc().same_structure(&hs));
}

#[test]
fn json_round_trip() {
    let h = hopf::h();
    let back = HopfData::from_json(&h.to_json()).unwrap();
    assert!(back.same_structure(&h));
}

#[test]
fn antipode_is_solved_uniquely() {
    let h = hopf::h();
    assert_eq!(h.solve_antipode().as_ref(), Some(h.antipode()));
    let d = h.eval("d").unwrap();
    assert_eq!(h.counit(&d), Scalar::one());
}
