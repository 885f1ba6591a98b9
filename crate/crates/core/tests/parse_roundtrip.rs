use heckeprod::parse::{parse_element, parse_polynomial};
use heckeprod::poly::slots;
use heckeprod::{sample, NilHecke};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn rendered_elements_parse_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..100 {
        let n = 1 + k % 4;
        let h = sample::nilhecke(&mut rng, n, 6);
        let text = h.render();
        assert_eq!(parse_element(&text, Some(n)).unwrap(), h, "{text}");
    }
}

#[test]
fn products_follow_operator_order() {
    let lhs = parse_element("tau1*x1", Some(2)).unwrap();
    let rhs = parse_element("x2*tau1 + 1", Some(2)).unwrap();
    assert_eq!(lhs, rhs);
    assert!(parse_element("tau1^2", Some(2)).unwrap().is_zero());
    assert_eq!(parse_element("s1*s1", None).unwrap(), NilHecke::one(2));
    assert_eq!(parse_element("-1/2*x1 + 1/2*x1", Some(1)).unwrap(), NilHecke::zero(1));
}

#[test]
fn arity_is_inferred_from_the_highest_index() {
    assert_eq!(parse_element("tau3", None).unwrap().n(), 4);
    assert_eq!(parse_element("x2", None).unwrap().n(), 2);
    assert!(parse_element("tau3", Some(2)).is_err());
}

#[test]
fn polynomials_reject_operators() {
    assert_eq!(parse_polynomial("(x1 - y)^2").unwrap(), slots::yi(1) * slots::yi(1));
    assert!(parse_polynomial("tau1").is_err());
}

#[test]
fn errors_report_offsets() {
    assert_eq!(parse_element("x1 + ", Some(1)).unwrap_err().offset, 5);
    assert_eq!(parse_element("x1 # y", Some(1)).unwrap_err().offset, 3);
    assert_eq!(parse_element("(x1", Some(1)).unwrap_err().offset, 3);
    assert_eq!(parse_element("x9", None).unwrap_err().offset, 0);
}
