use ydlift::catalog::modules;
use ydlift::linalg::Matrix;
use ydlift::nichols::{
    format_quadratic, graded_dims, graded_dims_of, hilbert_factorization_check, quadratic_relations, symmetrizer,
    symmetrizer_by_permutations, symmetrizer_table, Caps,
};
use ydlift::ydmod::BraidedSpace;

fn caps() -> Caps {
    Caps::default()
}

#[test]
fn symmetrizer_low_degrees() {
    let v1 = BraidedSpace::of(&modules::v(1).unwrap());
    assert!(symmetrizer(&v1, 0, &caps()).unwrap().is_identity());
    assert!(symmetrizer(&v1, 1, &caps()).unwrap().is_identity());
    assert!(symmetrizer(&v1, 2, &caps()).unwrap().is_zero());
}

#[test]
fn factorized_symmetrizer_matches_permutation_sum() {
    let m1 = BraidedSpace::of(&modules::m(1).unwrap());
    for n in 0..=3 {
        assert_eq!(symmetrizer(&m1, n, &caps()).unwrap(), symmetrizer_by_permutations(&m1, n, &caps()).unwrap());
    }
}

#[test]
fn graded_dimensions() {
    let dims = |name: &str| graded_dims_of(&modules::simple_by_name(name).unwrap(), 8, &caps()).unwrap();
    assert_eq!(dims("V1").dims, vec![1, 1, 0]);
    assert_eq!(dims("M1").dims, vec![1, 2, 1, 0]);
    assert_eq!(dims("M1").total, Some(4));
    let o14 = graded_dims_of(&modules::omega(14, &[]).unwrap(), 8, &caps()).unwrap();
    assert_eq!(o14.dims, vec![1, 4, 6, 4, 1, 0]);
    assert_eq!(o14.total, Some(16));
}

#[test]
fn trivial_braiding_does_not_terminate() {
    let t = BraidedSpace::of(&modules::trivial());
    let g = graded_dims(&t, 5, &caps()).unwrap();
    assert_eq!(g.total, None);
    assert_eq!(g.dims, vec![1; 6]);
}

#[test]
fn degree_cap_is_a_resource_error() {
    let t = BraidedSpace::of(&modules::trivial());
    let small = Caps { degree: 3, ..caps() };
    assert!(matches!(graded_dims(&t, 6, &small), Err(ydlift::Error::Resource(_))));
}

#[test]
fn table_vanishes_monotonically() {
    let m1 = BraidedSpace::of(&modules::m(1).unwrap());
    let t = symmetrizer_table(&m1, 4, &caps()).unwrap();
    assert_eq!(t.degrees.iter().map(|d| d.1).collect::<Vec<_>>(), vec![1, 2, 1, 0, 0]);
    assert!(t.vanishing_is_monotone());
}

#[test]
fn quadratic_relations_of_small_spaces() {
    let v1 = modules::v(1).unwrap();
    let r = quadratic_relations(&BraidedSpace::of(&v1));
    assert_eq!(r.len(), 1);
    assert_eq!(format_quadratic(v1.basis_names(), &r[0]), format!("{0}*{0}", v1.basis_names()[0]));

    let m1 = BraidedSpace::of(&modules::m(1).unwrap());
    assert_eq!(quadratic_relations(&m1).len(), 3);

    let id = BraidedSpace::new(vec!["t".into()], Matrix::identity(1)).unwrap();
    assert!(quadratic_relations(&id).is_empty());
}

#[test]
fn hilbert_series_factor_over_involutive_sums() {
    let v1 = modules::v(1).unwrap();
    let v5 = modules::v(5).unwrap();
    let m1 = modules::m(1).unwrap();
    let m2 = modules::m(2).unwrap();
    assert!(hilbert_factorization_check(&[&v5, &m1], &caps()).unwrap());
    assert!(hilbert_factorization_check(&[&v1], &caps()).unwrap());
    assert!(hilbert_factorization_check(&[&m1, &m2], &caps()).unwrap());
}
