use num_bigint::BigInt;
use num_rational::BigRational;
use posmon_core::discriminant::*;
use posmon_core::discriminant::Coeff;
use posmon_core::TypeLabel;

fn poly(cs: &[i64]) -> UniPoly {
    UniPoly::from_ints(cs)
}

fn y_pow(k: usize) -> UniPoly {
    let mut cs = vec![0; k + 1];
    cs[k] = 1;
    poly(&cs)
}

/// True when `a = c · b` for some nonzero rational `c`.
fn proportional(a: &UniPoly, b: &UniPoly) -> Option<BigRational> {
    let (q, r) = a.divrem(b);
    (r.degree().is_none() && q.degree() == Some(0)).then(|| q.coeffs()[0].clone())
}

const HOLDING: [(TypeLabel, i64, i64); 13] = [
    (TypeLabel::Ai, -16777216, 1),
    (TypeLabel::Aii, 729, 1),
    (TypeLabel::Bi, 432, 1),
    (TypeLabel::Biii, -1620, 1),
    (TypeLabel::Biv, -1296, 1),
    (TypeLabel::Bv, 1, 1),
    (TypeLabel::Bvii, -1, 4),
    (TypeLabel::Hiii, -128, 1),
    (TypeLabel::Hiv, -1, 1),
    (TypeLabel::Hv, -27, 1),
    (TypeLabel::Hvi, -1, 1),
    (TypeLabel::Hvii, 1, 1),
    (TypeLabel::Hviii, -1, 1),
];

#[test]
fn tabulated_rows_with_constants() {
    for (t, n, d) in HOLDING {
        let c = specialize_and_check(t).unwrap();
        let expect = BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(c.constant, Some(expect), "{t}");
        assert!(c.degree_matches(), "{t}");
    }
}

#[test]
fn all_weight_audits_but_h_i() {
    for t in TypeLabel::ALL {
        let a = weight_audit(t).unwrap();
        assert_eq!(a.passes(), t != TypeLabel::Hi, "{t}");
    }
}

#[test]
fn b_ii_resultant_factors() {
    let c = specialize_and_check(TypeLabel::Bii).unwrap();
    assert!(!c.holds());
    let f = y_pow(6).mul(&poly(&[2, 3]).pow(2)).mul(&poly(&[1, 6]));
    assert_eq!(proportional(&c.omega, &f), Some(BigRational::from_integer((-432).into())));
}

#[test]
fn b_vi_resultant_factors() {
    let c = specialize_and_check(TypeLabel::Bvi).unwrap();
    assert!(!c.holds());
    assert_eq!(c.omega.degree(), Some(9));
    assert_eq!(c.expected.degree(), 10);
    let f = y_pow(5).mul(&poly(&[-2, 1]).pow(3)).mul(&poly(&[-3, 64]));
    assert_eq!(proportional(&c.omega, &f), Some(BigRational::from_integer((-64).into())));
}

#[test]
fn h_ii_resultant_factors() {
    let c = specialize_and_check(TypeLabel::Hii).unwrap();
    assert!(!c.holds());
    assert_eq!(c.omega.degree(), Some(10));
    assert_eq!(c.expected.degree(), 14);
    let f = y_pow(5).mul(&poly(&[-12, 1]).pow(4)).mul(&poly(&[-4, 27]));
    assert_eq!(proportional(&c.omega, &f), Some(BigRational::from_integer(1.into())));
}

#[test]
fn h_i_with_weighted_linear_term() {
    let fixed = parse_poly(
        "-50z^3 + (4x^5 - 50x^2y)z^2 + (4x^7y + 60x^4y^2 + 225xy^3)z \
         - (135/2)y^5 - 115x^3y^4 - 10x^6y^3 - 4x^9y^2",
    )
    .unwrap();
    for (e, _) in fixed.terms() {
        assert_eq!(2 * e[0] + 6 * e[1] + 10 * e[2], 30);
    }
    let w = omega(&fixed, 1);
    let table = omega_table(TypeLabel::Hi).unwrap().expand();
    assert_eq!(proportional(&w, &table), Some(BigRational::from_integer(250.into())));
}
