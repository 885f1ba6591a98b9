use heckeprod::poly::{int, ratio, slots, x, Y};
use heckeprod::{Monomial, Polynomial, PolyError, Scalar, VarSet};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

/// Polynomials in `x1..xn, y` with small integer coefficients.
fn poly_in(n: usize, max_exp: u16) -> impl Strategy<Value = Polynomial> {
    let term = (-4i64..=4, prop::collection::vec(0..=max_exp, n + 1));
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        Polynomial::from_terms(
            VarSet::Slots,
            terms.into_iter().map(|(c, e)| {
                let mut exps = [0u16; 5];
                exps[..n].copy_from_slice(&e[..n]);
                exps[Y] = e[n];
                (int(c), Monomial::from_exps(&exps))
            }),
        )
    })
}

fn arity_and_poly() -> impl Strategy<Value = (usize, Polynomial)> {
    (2usize..=4).prop_flat_map(|n| (Just(n), poly_in(n, 3)))
}

fn stored_coefficients_are_nonzero(p: &Polynomial) -> bool {
    p.terms().all(|(_, c)| !c.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(f in poly_in(4, 2), g in poly_in(4, 2), h in poly_in(4, 2)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!((&f * &g) * &h, &f * (&g * &h));
        prop_assert_eq!(&f * (&g + &h), &f * &g + &f * &h);
        prop_assert_eq!(&f * &slots::one(), f.clone());
        prop_assert!((&f - &f).is_zero());
        prop_assert!(stored_coefficients_are_nonzero(&(&f * &g - &h)));
    }

    #[test]
    fn divided_difference_times_root_is_antisymmetrization((n, f) in arity_and_poly(), pick in 0usize..3) {
        let i = 1 + pick % (n - 1);
        let root = slots::xv(i) - slots::xv(i + 1);
        prop_assert_eq!(root * f.demazure(i).unwrap(), &f - &f.swap(i).unwrap());
    }

    #[test]
    fn divided_difference_squares_to_zero((n, f) in arity_and_poly(), pick in 0usize..3) {
        let i = 1 + pick % (n - 1);
        prop_assert!(f.demazure(i).unwrap().demazure(i).unwrap().is_zero());
    }

    #[test]
    fn divided_difference_twisted_leibniz((n, f) in arity_and_poly(), pick in 0usize..3) {
        let i = 1 + pick % (n - 1);
        let lhs = (slots::xv(i) * &f).demazure(i).unwrap();
        let rhs = slots::xv(i + 1) * f.demazure(i).unwrap() + &f;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn swap_is_an_involution((n, f) in arity_and_poly(), pick in 0usize..3) {
        let i = 1 + pick % (n - 1);
        prop_assert_eq!(f.swap(i).unwrap().swap(i).unwrap(), f);
    }

    #[test]
    fn exact_division_recovers_the_quotient(g in poly_in(3, 2), q in poly_in(3, 2)) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!((&g * &q).exact_divide(&g).unwrap(), q);
    }

    #[test]
    fn division_by_linear_factor_fails_off_its_ideal(f in poly_in(3, 3), i in 1usize..=3) {
        let yi = slots::yi(i);
        let on_hyperplane = f.substitute(x(i), &slots::yv()).unwrap();
        prop_assert_eq!(f.exact_divide(&yi).is_ok(), on_hyperplane.is_zero());
    }

    #[test]
    fn kernel_divisibility_both_ways(n in 1usize..=4, f in poly_in(4, 2), g in poly_in(4, 2)) {
        // One polynomial known to be in the ideal, one arbitrary.
        let restrict = |p: &Polynomial| {
            (n + 1..=4).fold(p.clone(), |acc, j| acc.substitute(x(j), &slots::zero()).unwrap())
        };
        let inside = slots::y_prod(n) * restrict(&f);
        for h in [inside, restrict(&g)] {
            let vanishes = (1..=n).all(|i| h.substitute(x(i), &slots::yv()).unwrap().is_zero());
            prop_assert_eq!(vanishes, h.exact_divide(&slots::y_prod(n)).is_ok());
        }
    }

    #[test]
    fn graded_degree_is_twice_the_exponent_sum(f in poly_in(4, 3)) {
        for (m, _) in f.terms() {
            prop_assert_eq!(m.graded_degree(), 2 * m.total());
        }
    }

    #[test]
    fn scalars_stay_in_lowest_terms(a in -50i64..50, b in 1i64..50) {
        let s = ratio(a, -b);
        prop_assert!(s.denom().is_positive());
        prop_assert_eq!(s, ratio(-a, b));
    }
}

#[test]
fn substitution_examples() {
    let p = slots::yi(1);
    assert!(p.substitute(x(1), &slots::yv()).unwrap().is_zero());
    let q = slots::xv(1) * slots::xv(2);
    assert_eq!(q.substitute(x(2), &slots::yv()).unwrap(), slots::xv(1) * slots::yv());
    assert_eq!(q.substitute(x(1), &slots::xv(1)).unwrap(), q);
}

#[test]
fn zero_divisor_is_rejected() {
    assert_eq!(slots::xv(1).exact_divide(&slots::zero()), Err(PolyError::ZeroDivisor));
    assert!(slots::zero().exact_divide(&slots::yi(2)).unwrap().is_zero());
}

#[test]
fn rational_coefficients_render_reduced() {
    let p = Polynomial::constant(VarSet::Slots, ratio(6, -4)) * slots::xv(1);
    assert_eq!(p.render(), "-3/2*x1");
    assert!(Scalar::one().is_positive());
}
