use ydlift::catalog::modules;
use ydlift::linalg::Matrix;
use ydlift::ydmod::{braiding, direct_sum, is_involutive_pair, transfer_to_dual, BraidedSpace, YdModule};
use ydlift::Scalar;

fn flip(d: usize) -> Matrix {
    let mut p = Matrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            p[(j * d + i, i * d + j)] = Scalar::one();
        }
    }
    p
}

#[test]
fn simple_modules_validate() {
    for name in ["trivial", "V1", "V8", "M1", "M13", "M20"] {
        let m = modules::simple_by_name(name).unwrap();
        assert!(m.validate().all_passed(), "{name}");
        assert!(BraidedSpace::of(&m).satisfies_braid_equation(), "{name}");
    }
}

#[test]
fn broken_action_is_rejected() {
    let m = modules::m(1).unwrap();
    let h = m.hopf().clone();
    let d = h.basis_index("d").unwrap();
    let mut action: Vec<Matrix> = (0..h.dim()).map(|i| m.action(i).clone()).collect();
    for r in 0..2 {
        action[d][(r, 0)] = -action[d][(r, 0)].clone();
    }
    let bad = YdModule::unchecked(h.clone(), "M1'", m.basis_names().to_vec(), action.clone(), m.coaction().clone()).unwrap();
    let rep = bad.validate();
    assert!(!rep.all_passed());
    assert!(rep.checks.iter().filter(|c| !c.passed).all(|c| c.witness.is_some()));
    assert!(YdModule::from_parts(h, "M1'", m.basis_names().to_vec(), action, m.coaction().clone()).is_err());
}

#[test]
fn braidings() {
    let v1 = modules::v(1).unwrap();
    assert_eq!(braiding(&v1, &v1).unwrap(), Matrix::from_ints(&[&[-1]]));
    let t = modules::trivial();
    assert!(braiding(&t, &t).unwrap().is_identity());
    let m1 = modules::m(1).unwrap();
    assert_eq!(braiding(&m1, &m1).unwrap(), flip(2).scale(&Scalar::from_int(-1)));
}

#[test]
fn omega_dimensions() {
    assert_eq!(modules::omega(14, &[]).unwrap().dim(), 4);
    assert_eq!(modules::omega(2, &[1, 1, 1, 1]).unwrap().dim(), 6);
    assert_eq!(modules::omega(1, &[1, 0, 2, 0, 0, 0, 0, 1]).unwrap().dim(), 4);
    assert!(modules::omega(1, &[0; 8]).is_err());
}

#[test]
fn transfer_keeps_the_braiding() {
    let hs = modules::hstar_arc();
    for name in ["V1", "V6", "M1", "M17"] {
        let m = modules::simple_by_name(name).unwrap();
        let d = transfer_to_dual(&m, &hs).unwrap();
        assert!(d.validate().all_passed(), "{name}");
        assert_eq!(braiding(&d, &d).unwrap(), braiding(&m, &m).unwrap(), "{name}");
    }
}

#[test]
fn involutive_pairs() {
    let m1 = modules::m(1).unwrap();
    assert!(is_involutive_pair(&modules::v(5).unwrap(), &m1).unwrap());
    assert!(!is_involutive_pair(&modules::v(1).unwrap(), &m1).unwrap());
}

#[test]
fn symmetric_vectors() {
    for k in 1..=8 {
        assert_eq!(modules::v(k).unwrap().find_symmetric_vector(), None, "V{k}");
    }
    let t = modules::trivial();
    assert!(t.find_symmetric_vector().is_some());
    let s = direct_sum("V1+M13", &[&modules::v(1).unwrap(), &modules::m(13).unwrap()]).unwrap();
    let found = s.symmetric_search();
    assert!(found.exhaustive);
    assert_eq!(found.vector, None);
}
