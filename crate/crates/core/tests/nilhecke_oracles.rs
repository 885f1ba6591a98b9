//! Independent oracles for the nil-Hecke normal form: a word rewriting
//! system that only knows the two-generator relations, and a search over
//! braid and commutation moves.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use heckeprod::nilhecke::Perm;
use heckeprod::poly::{int, slots};
use heckeprod::{Monomial, NilHecke, Polynomial, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Gen {
    X(usize),
    Y,
    T(usize),
}

type Words = BTreeMap<Vec<Gen>, Scalar>;

fn add_word(acc: &mut Words, w: Vec<Gen>, c: Scalar) {
    let e = acc.entry(w.clone()).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&w);
    }
}

/// Rewrite until every crossing sits to the right of every dot, using only
/// `t_i x_i = x_{i+1} t_i + 1`, `t_i x_{i+1} = x_i t_i - 1` and commutation
/// of `t_i` with the other dots.
fn push_crossings_right(start: Words) -> Words {
    let mut todo: Vec<(Vec<Gen>, Scalar)> = start.into_iter().collect();
    let mut done = Words::new();
    while let Some((w, c)) = todo.pop() {
        let hit = w
            .windows(2)
            .position(|p| matches!((p[0], p[1]), (Gen::T(_), Gen::X(_) | Gen::Y)));
        let Some(k) = hit else {
            add_word(&mut done, w, c);
            continue;
        };
        let Gen::T(i) = w[k] else { unreachable!() };
        let mut swapped = w.clone();
        swapped.swap(k, k + 1);
        match w[k + 1] {
            Gen::X(j) if j == i => {
                swapped[k] = Gen::X(i + 1);
                todo.push((swapped, c.clone()));
                let mut dropped = w.clone();
                dropped.drain(k..k + 2);
                todo.push((dropped, c));
            }
            Gen::X(j) if j == i + 1 => {
                swapped[k] = Gen::X(i);
                todo.push((swapped, c.clone()));
                let mut dropped = w.clone();
                dropped.drain(k..k + 2);
                todo.push((dropped, -c));
            }
            _ => todo.push((swapped, c)),
        }
    }
    done
}

fn dots_to_poly(w: &[Gen]) -> Polynomial {
    w.iter().fold(slots::one(), |acc, g| match g {
        Gen::X(i) => acc * slots::xv(*i),
        Gen::Y => acc * slots::yv(),
        Gen::T(_) => unreachable!("dots only"),
    })
}

fn monomial_word(m: &Monomial) -> Vec<Gen> {
    let mut w = Vec::new();
    for i in 1..=4 {
        w.extend(std::iter::repeat_n(Gen::X(i), m.exp(i - 1) as usize));
    }
    w.extend(std::iter::repeat_n(Gen::Y, m.exp(4) as usize));
    w
}

fn monomials_up_to(n: usize, total: u16) -> Vec<Monomial> {
    let mut out = vec![[0u16; 5]];
    for var in (0..n).chain([4]) {
        let mut next = Vec::new();
        for e in &out {
            let used: u16 = e.iter().sum();
            for k in 0..=(total - used) {
                let mut f = *e;
                f[var] = k;
                next.push(f);
            }
        }
        out = next;
    }
    out.iter().map(|e| Monomial::from_exps(e)).collect()
}

#[test]
fn straightening_agrees_with_two_term_rewriting() {
    for n in 2..=4 {
        for i in 1..n {
            let tau = NilHecke::tau(n, i).unwrap();
            let w_i = Perm::from_word(n, &[i]).unwrap();
            for m in monomials_up_to(n, 6) {
                let mut start = Words::new();
                let mut word = vec![Gen::T(i)];
                word.extend(monomial_word(&m));
                add_word(&mut start, word, int(1));
                let mut expected = NilHecke::zero(n);
                for (w, c) in push_crossings_right(start) {
                    let split = w.iter().position(|g| matches!(g, Gen::T(_))).unwrap_or(w.len());
                    let perm = match &w[split..] {
                        [] => Perm::identity(n),
                        [Gen::T(j)] if *j == i => w_i,
                        other => panic!("unexpected crossings {other:?}"),
                    };
                    let p = dots_to_poly(&w[..split]) * Polynomial::constant(heckeprod::VarSet::Slots, c);
                    expected = expected
                        .checked_add(&NilHecke::monomial(n, p, perm).unwrap())
                        .unwrap();
                }
                let p = Polynomial::term(heckeprod::VarSet::Slots, int(1), m);
                let got = tau.mul(&NilHecke::from_poly(n, p).unwrap()).unwrap();
                assert_eq!(got, expected, "tau{i} * {m:?} on {n} strands");
            }
        }
    }
}

/// All words equal to `start` under braid and distant commutation moves,
/// or `None` if one of them contains a repeated letter (so the product is 0).
fn braid_class(start: Vec<usize>) -> Option<BTreeSet<Vec<usize>>> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        if w.windows(2).any(|p| p[0] == p[1]) {
            return None;
        }
        let mut moves = Vec::new();
        for k in 0..w.len().saturating_sub(1) {
            if w[k].abs_diff(w[k + 1]) > 1 {
                let mut v = w.clone();
                v.swap(k, k + 1);
                moves.push(v);
            }
            if k + 2 < w.len() && w[k] == w[k + 2] && w[k].abs_diff(w[k + 1]) == 1 {
                let mut v = w.clone();
                v[k] = w[k + 1];
                v[k + 1] = w[k];
                v[k + 2] = w[k + 1];
                moves.push(v);
            }
        }
        for v in moves {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    Some(seen)
}

#[test]
fn crossing_products_agree_with_braid_search() {
    for n in 1..=4 {
        for w in Perm::all(n) {
            for i in 1..n {
                let mut word = w.reduced_word();
                word.push(i);
                let product = NilHecke::tau_word(n, &w.reduced_word())
                    .unwrap()
                    .mul(&NilHecke::tau(n, i).unwrap())
                    .unwrap();
                match braid_class(word.clone()) {
                    None => assert!(product.is_zero(), "{word:?} should vanish"),
                    Some(class) => {
                        let terms: Vec<_> = product.terms().collect();
                        assert_eq!(terms.len(), 1, "{word:?}");
                        let (perm, coeff) = terms[0];
                        assert_eq!(coeff, &slots::one());
                        assert!(class.contains(&perm.reduced_word()), "{word:?} vs {perm:?}");
                        assert_eq!(perm.length(), word.len());
                    }
                }
            }
        }
    }
}

#[test]
fn named_examples() {
    let d1 = NilHecke::delta(2, 1).unwrap();
    assert_eq!(d1.render(), "x2*tau1 - y*tau1 + 1");
    let s1 = NilHecke::s(2, 1).unwrap();
    assert_eq!(s1.mul(&s1).unwrap(), NilHecke::one(2));
    let t = NilHecke::tau(3, 1).unwrap();
    let braid = NilHecke::tau_word(3, &[1, 2, 1])
        .unwrap()
        .checked_sub(&NilHecke::tau_word(3, &[2, 1, 2]).unwrap())
        .unwrap();
    assert!(braid.mul(&t).unwrap().is_zero());
    let straightened = NilHecke::tau(2, 1)
        .unwrap()
        .mul(&NilHecke::from_poly(2, slots::yi(1)).unwrap())
        .unwrap();
    assert_eq!(straightened, d1);
}

fn element(n: usize) -> impl Strategy<Value = NilHecke> {
    let perms = Perm::all(n);
    let term = (0..perms.len(), -3i64..=3, prop::collection::vec(0u16..=2, 5));
    prop::collection::vec(term, 0..4).prop_map(move |terms| {
        terms.into_iter().fold(NilHecke::zero(n), |acc, (k, c, e)| {
            let mut exps = [0u16; 5];
            exps[..n].copy_from_slice(&e[..n]);
            exps[4] = e[4];
            let p = Polynomial::term(heckeprod::VarSet::Slots, int(c), Monomial::from_exps(&exps));
            acc.checked_add(&NilHecke::monomial(n, p, perms[k]).unwrap()).unwrap()
        })
    })
}

fn arity_elements() -> impl Strategy<Value = (usize, NilHecke, NilHecke, NilHecke)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), element(n), element(n), element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn multiplication_is_associative((_n, a, b, c) in arity_elements()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn action_is_a_morphism((n, a, b, v) in arity_elements()) {
        let v = v.coeff(&Perm::identity(n));
        let lhs = a.mul(&b).unwrap().act(&v).unwrap();
        let rhs = a.act(&b.act(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_division_inverts_left_multiplication((n, g, _b, _c) in arity_elements(), pick in 0usize..4) {
        let i = 1 + pick % n;
        let h = g.left_mul_poly(&slots::yi(i)).unwrap();
        prop_assert_eq!(h.left_divide_exact(i).unwrap(), g);
    }
}
