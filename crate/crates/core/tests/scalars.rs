use ydlift::scalar::sqrt_witness;
use ydlift::Scalar;

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

#[test]
fn xi_squares_to_minus_one() {
    assert_eq!(&Scalar::xi() * &Scalar::xi(), Scalar::from_int(-1));
}

#[test]
fn conjugate_halves() {
    let half = Scalar::from_frac(1, 2);
    let p = &half * &(Scalar::one() + Scalar::xi());
    let q = &half * &(Scalar::one() - Scalar::xi());
    assert_eq!(&p * &q, half);
}

#[test]
fn parse_matches_constructors() {
    assert_eq!(s("x"), Scalar::xi());
    assert_eq!(s("1/2"), Scalar::from_frac(1, 2));
    assert_eq!(s("1+x"), Scalar::gaussian(1, 1));
    assert_eq!(s("-3"), Scalar::from_int(-3));
}

#[test]
fn display_round_trips() {
    for v in [Scalar::xi(), Scalar::from_frac(-2, 3), Scalar::gaussian(1, -1), Scalar::zero(), &Scalar::from_frac(1, 2) * &Scalar::gaussian(3, 5)] {
        assert_eq!(v.to_string().parse::<Scalar>().unwrap(), v, "{v}");
    }
}

#[test]
fn square_root_witnesses() {
    assert!(sqrt_witness(&Scalar::from_int(4), &Scalar::from_int(2)));
    assert!(sqrt_witness(&Scalar::from_int(-1), &Scalar::xi()));
    assert!(!sqrt_witness(&Scalar::xi(), &Scalar::one()));
}

#[test]
fn inverse_of_gaussian() {
    let z = Scalar::gaussian(2, 3);
    assert_eq!(&z * &z.inv().unwrap(), Scalar::one());
    assert!(Scalar::zero().inv().is_err());
}

#[test]
fn field_axioms_on_a_grid() {
    let vals: Vec<Scalar> = [(0, 1), (1, 1), (-2, 0), (3, -1)].iter().map(|&(a, b)| Scalar::gaussian(a, b)).collect();
    for x in &vals {
        for y in &vals {
            assert_eq!(x * y, y * x);
            for z in &vals {
                assert_eq!(&(x * y) * z, x * &(y * z));
                assert_eq!(x * &(y + z), &(x * y) + &(x * z));
            }
        }
    }
}
