//! Random generators for polynomials, operators and model elements.
//!
//! Degree bounds are graded: a bound of `d` allows monomials with
//! exponent sum up to `d / 2`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::gmodels::{
    gen_g4, tau1_tilde, tau2_tilde, CGenerator, Etilde2, Etilde3, G4Seed, GError, SlotMap, G1,
    G2, G3, G4,
};
use crate::nilhecke::{NilHecke, Perm};
use crate::poly::{int, ratio, slots, Monomial, Polynomial, Scalar, VarSet, Y};

fn coefficient<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    if rng.gen_ratio(1, 6) {
        ratio(n, 2)
    } else {
        int(n)
    }
}

/// A random monomial in `x1..xn` (and `y` if `with_y`) of exponent sum `<= max_graded / 2`.
pub fn monomial<R: Rng + ?Sized>(rng: &mut R, n: usize, with_y: bool, max_graded: u32) -> Monomial {
    let total = rng.gen_range(0..=max_graded / 2);
    let mut vars: Vec<usize> = (0..n).collect();
    if with_y {
        vars.push(Y);
    }
    let mut exps = [0u16; 5];
    if vars.is_empty() {
        return Monomial::one();
    }
    for _ in 0..total {
        exps[*vars.choose(rng).expect("nonempty")] += 1;
    }
    Monomial::from_exps(&exps)
}

/// A random polynomial in `x1..xn, y` with up to three terms.
pub fn poly<R: Rng + ?Sized>(rng: &mut R, n: usize, max_graded: u32) -> Polynomial {
    let terms = rng.gen_range(1..=3);
    let mut p = slots::zero();
    for _ in 0..terms {
        let m = monomial(rng, n, true, max_graded);
        p = p + Polynomial::term(VarSet::Slots, coefficient(rng), m);
    }
    p
}

/// A random polynomial that is occasionally zero.
pub fn poly_or_zero<R: Rng + ?Sized>(rng: &mut R, n: usize, max_graded: u32) -> Polynomial {
    if rng.gen_ratio(1, 8) {
        slots::zero()
    } else {
        poly(rng, n, max_graded)
    }
}

/// A random polynomial in `y` alone.
pub fn poly_y<R: Rng + ?Sized>(rng: &mut R, max_graded: u32) -> Polynomial {
    poly(rng, 0, max_graded)
}

/// A random nil-Hecke element on `n` strands with up to three terms.
pub fn nilhecke<R: Rng + ?Sized>(rng: &mut R, n: usize, max_graded: u32) -> NilHecke {
    let perms = Perm::all(n);
    let mut h = NilHecke::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let w = perms.choose(rng).copied().expect("nonempty");
        let term = NilHecke::monomial(n, poly(rng, n, max_graded), w).expect("in arity");
        h = h.checked_add(&term).expect("same arity");
    }
    h
}

pub fn slot_map<R: Rng + ?Sized>(rng: &mut R, n: usize, max_graded: u32) -> SlotMap {
    SlotMap::new(nilhecke(rng, n, max_graded))
}

pub fn g1<R: Rng + ?Sized>(rng: &mut R, max_graded: u32) -> G1 {
    let theta = poly_y(rng, max_graded);
    let phi = &theta + &(slots::yi(1) * poly_or_zero(rng, 1, max_graded.saturating_sub(2)));
    G1::new(theta, phi).expect("constructed member")
}

pub fn g2<R: Rng + ?Sized>(rng: &mut R, max_graded: u32) -> G2 {
    let e2 = poly_or_zero(rng, 1, max_graded);
    let e_prime = poly_or_zero(rng, 1, max_graded);
    let xi_prime = slot_map(rng, 2, max_graded);
    G2::generate(&e2, &e_prime, &xi_prime).expect("constructed member")
}

pub fn g3<R: Rng + ?Sized>(rng: &mut R, max_graded: u32) -> G3 {
    let ee3 = poly_or_zero(rng, 2, max_graded);
    let ee_bar = poly_or_zero(rng, 2, max_graded);
    let ee_second = poly_or_zero(rng, 2, max_graded);
    let chi_second = slot_map(rng, 3, max_graded);
    G3::generate(&ee3, &ee_bar, &ee_second, &chi_second).expect("constructed member")
}

/// A `G4` element from a random composite construction, followed by up to
/// two random crossings.
pub fn g4<R: Rng + ?Sized>(rng: &mut R, max_graded: u32) -> Result<G4, GError> {
    let small = max_graded.min(4);
    let base = match rng.gen_range(0..4) {
        0 => {
            let g = g2(rng, small);
            let ee = poly(rng, 2, small);
            gen_g4(G4Seed::FromG2(&g, &ee))?
        }
        1 => {
            let g = g1(rng, small);
            let eee = poly(rng, 3, small);
            gen_g4(G4Seed::FromG1(&g, &eee))?
        }
        2 => {
            let inner = g3(rng, small);
            let outer = g2(rng, small);
            gen_g4(G4Seed::G3ThenG2(&inner, &outer))?
        }
        _ => {
            let inner = g2(rng, small);
            let outer = g3(rng, small);
            gen_g4(G4Seed::G2ThenG3(&inner, &outer))?
        }
    };
    let mut v = Etilde3::Low22(base);
    for _ in 0..rng.gen_range(0..=2) {
        v = if rng.gen_bool(0.5) {
            tau1_tilde(&v)?
        } else {
            tau2_tilde(&v)?
        };
    }
    match v {
        Etilde3::Low22(g) => Ok(g),
        _ => unreachable!("crossings preserve components"),
    }
}

pub const COMPONENTS: [&str; 4] = ["11", "12", "21", "22"];

/// A random element of the given square component.
pub fn etilde2<R: Rng + ?Sized>(rng: &mut R, component: &str, max_graded: u32) -> Etilde2 {
    match component {
        "11" => Etilde2::Top11(slots::y_prod(2) * poly(rng, 2, max_graded)),
        "12" => Etilde2::Top12(slots::y_prod(3) * poly(rng, 3, max_graded)),
        "21" => Etilde2::Low21(g2(rng, max_graded)),
        _ => Etilde2::Low22(g3(rng, max_graded)),
    }
}

/// A random element of the given cube component.
pub fn etilde3<R: Rng + ?Sized>(rng: &mut R, component: &str, max_graded: u32) -> Result<Etilde3, GError> {
    Ok(match component {
        "11" => Etilde3::Top11(slots::y_prod(3) * poly(rng, 3, max_graded)),
        "12" => Etilde3::Top12(slots::y_prod(4) * poly(rng, 4, max_graded)),
        "21" => Etilde3::Low21(g3(rng, max_graded)),
        _ => Etilde3::Low22(g4(rng, max_graded)?),
    })
}

pub const GENERATOR_FAMILIES: [&str; 6] = [
    "right-scalar",
    "left-scalar",
    "right-g1",
    "left-g1",
    "right-y1e",
    "left-y1e",
];

/// A random generator of the named family.
pub fn c_generator<R: Rng + ?Sized>(rng: &mut R, family: &str, max_graded: u32) -> CGenerator {
    match family {
        "right-scalar" => CGenerator::RightScalar(poly_y(rng, max_graded)),
        "left-scalar" => CGenerator::LeftScalar(poly_y(rng, max_graded)),
        "right-g1" => CGenerator::RightG1(g1(rng, max_graded)),
        "left-g1" => CGenerator::LeftG1(g1(rng, max_graded)),
        "right-y1e" => CGenerator::RightY1E(poly(rng, 1, max_graded)),
        _ => CGenerator::LeftY1E(poly(rng, 1, max_graded)),
    }
}
