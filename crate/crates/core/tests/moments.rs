use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use sticky_hopf::combinatorics::{factorial, zigzag_numbers};
use sticky_hopf::moments::{
    classical_moments, expectation_rule, moment, sech_taylor, w_by_method, w_closed, w_hopf, w_oracle,
    w_oracle_presubstitution, w_recovery, AreaWord, Method, Sigma, ORACLE_LIMIT,
};
use sticky_hopf::tensor_hopf::Word;
use sticky_hopf::{Error, Scalar};

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn value(area: &AreaWord, n: usize, a: BigRational, b: BigRational, sigma: &Sigma) -> Scalar {
    moment(area, n, &a, &b, sigma, Method::Hopf).unwrap().moment
}

#[test]
fn closed_form_at_order_eight() {
    let area = AreaWord::normalized_quantum();
    assert_eq!(w_hopf(&area, 8), w_closed(4));
    assert_eq!(w_recovery(&area, 8), w_closed(4));
}

#[test]
fn presubstitution_variant_agrees() {
    for n in 0..=4 {
        assert_eq!(w_oracle_presubstitution(n).unwrap(), w_oracle(n).unwrap());
    }
}

#[test]
fn second_moment_deforms_monotonically() {
    let area = AreaWord::normalized_quantum();
    for s in [1, 2, 10] {
        let got = value(&area, 2, q(0, 1), q(1, 1), &Sigma::Value(q(s, 1)));
        let expected = q(1, 4) * (q(1, 1) - q(1, s.pow(4)));
        assert_eq!(got, Scalar::from_rational(expected), "σ = {s}");
    }
}

#[test]
fn degenerate_at_sigma_one_for_every_method() {
    let area = AreaWord::normalized_quantum();
    for n in 0..=6 {
        for m in Method::ALL {
            let r = moment(&area, n, &q(0, 1), &q(1, 1), &Sigma::Value(q(1, 1)), m).unwrap();
            let expected = if n == 0 { Scalar::from_int(1) } else { Scalar::zero() };
            assert_eq!(r.moment, expected, "n = {n}, {m}");
        }
    }
}

#[test]
fn sech_series_consistency() {
    let area = AreaWord::normalized_quantum();
    let sech = sech_taylor(8);
    for m in 1..=4usize {
        let n = 2 * m;
        let mu = value(&area, n, q(0, 1), q(1, 1), &Sigma::Infinity).as_constant().unwrap().re;
        let fact = BigRational::from_integer(factorial(n).into());
        let lhs = if m % 2 == 0 { &mu / &fact } else { -(&mu / &fact) };
        let coefficient = &sech[n] / BigRational::from_integer(BigInt::from(1u64 << n));
        assert_eq!(lhs, coefficient, "m = {m}");
    }
    let a = zigzag_numbers(8);
    for m in 0..=4 {
        let sign = if m % 2 == 0 { q(1, 1) } else { q(-1, 1) };
        assert_eq!(sech[2 * m], sign * BigRational::new(a[2 * m].clone().into(), factorial(2 * m).into()));
    }
}

#[test]
fn classical_areas_match_the_quantum_limit() {
    let quantum = AreaWord::normalized_quantum();
    let z = AreaWord::classical_z();
    let planar = AreaWord::classical_planar();
    for n in 1..=6 {
        let lim = value(&quantum, n, q(-1, 2), q(3, 2), &Sigma::Infinity);
        assert_eq!(value(&z, n, q(-1, 2), q(3, 2), &Sigma::Infinity), lim, "n = {n}");
        assert_eq!(value(&planar, n, q(-1, 2), q(3, 2), &Sigma::Infinity), lim, "n = {n}");
    }
    let expected = classical_moments(3, &q(0, 1), &q(2, 1));
    assert_eq!(expected, vec![q(1, 1), q(1, 1), q(5, 1), q(61, 1)]);
}

#[test]
fn unnormalized_quantum_areas_scale_by_sigma_four() {
    let hat = AreaWord::normalized_quantum();
    for s in [2i64, 3] {
        let s2 = q(s * s, 1);
        let sigma = Sigma::Value(q(s, 1));
        let hat2 = value(&hat, 2, q(0, 1), q(1, 1), &sigma);
        let s4 = Scalar::from_rational(q(s.pow(4), 1));
        let pq = AreaWord::quantum_pq(s2.clone()).unwrap();
        let a = AreaWord::quantum_a(s2).unwrap();
        // the unnormalized pair has variance σ², so the area carries σ⁴
        assert_eq!(value(&pq, 2, q(0, 1), q(1, 1), &Sigma::Infinity), &hat2 * &s4);
        assert_eq!(value(&a, 2, q(0, 1), q(1, 1), &Sigma::Infinity), &hat2 * &s4);
        assert_eq!(w_hopf(&pq, 2), Scalar::from_rational(q(2 * (s.pow(4) - 1), 1)));
    }
}

#[test]
fn symbolic_moment_examples() {
    let area = AreaWord::normalized_quantum();
    let r = moment(&area, 2, &q(1, 1), &q(4, 1), &Sigma::Symbolic, Method::Hopf).unwrap();
    assert_eq!(r.moment, "9 s+ s-".parse().unwrap());
    assert!(r.moment_decimal(3).is_none());
    let r = moment(&area, 3, &q(0, 1), &q(1, 1), &Sigma::Symbolic, Method::Closed).unwrap();
    assert!(r.moment.is_zero());
}

#[test]
fn report_json_is_golden() {
    let area = AreaWord::normalized_quantum();
    let r = moment(&area, 4, &q(0, 1), &q(1, 1), &Sigma::Infinity, Method::Closed).unwrap();
    let w = r#"[{"ep":3,"em":1,"re":"8","im":"0"},{"ep":2,"em":2,"re":"104","im":"0"},{"ep":1,"em":3,"re":"8","im":"0"}]"#;
    let expected = format!(r#"{{"order":4,"method":"closed","w":{w},"a":"0","b":"1","sigma":"inf","moment":"5/16"}}"#);
    assert_eq!(serde_json::to_string(&r.to_json()).unwrap(), expected);
}

#[test]
fn error_paths() {
    let area = AreaWord::normalized_quantum();
    assert!(matches!(
        moment(&area, 2, &q(2, 1), &q(1, 1), &Sigma::Infinity, Method::Hopf),
        Err(Error::InvalidInterval { .. })
    ));
    assert!(matches!("0".parse::<Sigma>(), Err(Error::InvalidSigma(_))));
    assert!(matches!(w_by_method(&area, ORACLE_LIMIT + 1, Method::Oracle, ORACLE_LIMIT), Err(Error::OracleLimit { .. })));
    assert!(matches!(w_by_method(&AreaWord::classical_z(), 2, Method::Closed, 6), Err(Error::MethodUnavailable { .. })));
    assert_eq!("symbolic".parse::<Sigma>().unwrap(), Sigma::Symbolic);
    assert_eq!("inf".parse::<Sigma>().unwrap(), Sigma::Infinity);
    assert_eq!("3/2".parse::<Sigma>().unwrap(), Sigma::Value(q(3, 2)));
}

#[test]
fn expectation_rule_examples() {
    let area = AreaWord::normalized_quantum();
    let alg = area.algebra();
    let t = alg.time_index();
    let a = alg.index_of("dAhat").unwrap();
    assert!(expectation_rule(alg, &Word(vec![t, t])));
    assert!(!expectation_rule(alg, &Word(vec![t, a])));
    assert!(expectation_rule(alg, &Word::empty()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn moments_scale_with_interval_length(
        n in 0usize..=6,
        a in -5i64..5,
        len in 1i64..5,
        shift in -3i64..3,
    ) {
        let area = AreaWord::normalized_quantum();
        let base = moment(&area, n, &q(a, 1), &q(a + len, 1), &Sigma::Symbolic, Method::Hopf).unwrap().moment;
        let moved = moment(&area, n, &q(a + shift, 1), &q(a + shift + len, 1), &Sigma::Symbolic, Method::Hopf).unwrap().moment;
        prop_assert_eq!(&base, &moved);
        let unit = moment(&area, n, &q(0, 1), &q(1, 1), &Sigma::Symbolic, Method::Hopf).unwrap().moment;
        let factor = Scalar::from_rational(q(len, 1)).pow(n as u32);
        prop_assert_eq!(base, &unit * &factor);
    }
}
