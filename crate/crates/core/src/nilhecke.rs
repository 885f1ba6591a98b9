//! The nil affine Hecke algebra on at most four strands, with a central
//! variable `y` adjoined.
//!
//! Elements are kept in normal form `sum_w p_w * tau_w`, polynomials to the
//! left. Products compose as operators: `(a*b).act(v) == a.act(b.act(v))`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::mutation::{self, Mutation};
use crate::poly::{render_sum, slots, x, PolyError, Polynomial, Scalar, VarSet};

/// Largest supported number of strands.
pub const MAX_STRANDS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("invalid generator index {index} for {n} strands")]
    InvalidIndex { index: usize, n: usize },
    #[error("unsupported arity {0}")]
    UnsupportedArity(usize),
    #[error("polynomial uses variables beyond x{0}")]
    PolynomialOutOfRange(usize),
    #[error("not divisible")]
    NotDivisible,
    #[error("evaluations admit no operator: {0}")]
    NoSolution(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A permutation of `{1..n}` in one-line notation, `n <= 4`.
///
/// Unused trailing entries are fixed points so that equality and ordering
/// only depend on the permutation and `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    n: u8,
    line: [u8; MAX_STRANDS],
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_STRANDS).contains(&n), "unsupported arity {n}");
        Perm {
            n: n as u8,
            line: [1, 2, 3, 4],
        }
    }

    /// From one-line notation; `None` unless it is a permutation of `1..=len`.
    pub fn from_one_line(line: &[u8]) -> Option<Self> {
        let n = line.len();
        if !(1..=MAX_STRANDS).contains(&n) {
            return None;
        }
        let mut seen = [false; MAX_STRANDS];
        for &v in line {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return None;
            }
            seen[v - 1] = true;
        }
        let mut p = Perm::identity(n);
        p.line[..n].copy_from_slice(line);
        Some(p)
    }

    /// The product `s_{w_1} ... s_{w_k}`; `None` on an out-of-range letter.
    pub fn from_word(n: usize, word: &[usize]) -> Option<Self> {
        let mut p = Perm::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return None;
            }
            p = p.right_mul_simple(i);
        }
        Some(p)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn one_line(&self) -> &[u8] {
        &self.line[..self.n()]
    }

    pub fn is_identity(&self) -> bool {
        self.length() == 0
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let l = self.one_line();
        let mut inv = 0;
        for a in 0..l.len() {
            for b in a + 1..l.len() {
                if l[a] > l[b] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// `s_i * w`: exchanges the values `i` and `i+1`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        let mut p = *self;
        for v in p.line[..self.n()].iter_mut() {
            if *v as usize == i {
                *v = (i + 1) as u8;
            } else if *v as usize == i + 1 {
                *v = i as u8;
            }
        }
        p
    }

    /// `w * s_i`: exchanges positions `i` and `i+1`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let mut p = *self;
        p.line.swap(i - 1, i);
        p
    }

    fn position_of(&self, value: usize) -> usize {
        self.one_line()
            .iter()
            .position(|&v| v as usize == value)
            .expect("value present")
    }

    /// `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.position_of(i) > self.position_of(i + 1)
    }

    /// `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.line[i - 1] > self.line[i]
    }

    /// Lexicographically least reduced word.
    ///
    /// The least possible first letter is the least left descent; the rest
    /// is the least reduced word of what remains.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = *self;
        while let Some(i) = (1..w.n()).find(|&i| w.has_left_descent(i)) {
            word.push(i);
            w = w.left_mul_simple(i);
        }
        word
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n, other.n);
        let mut p = *self;
        for (j, v) in p.line[..self.n()].iter_mut().enumerate() {
            *v = self.line[other.line[j] as usize - 1];
        }
        p
    }

    /// Embed into `n + by` strands acting on the top `n` values.
    pub fn shifted(&self, by: usize) -> Perm {
        let n = self.n() + by;
        let mut line = Vec::with_capacity(n);
        line.extend((1..=by).map(|v| v as u8));
        line.extend(self.one_line().iter().map(|&v| v + by as u8));
        Perm::from_one_line(&line).expect("shifted permutation")
    }

    /// Same permutation viewed on more strands (new strands fixed at the top).
    pub fn widened(&self, n: usize) -> Perm {
        assert!(n >= self.n() && n <= MAX_STRANDS);
        Perm {
            n: n as u8,
            line: self.line,
        }
    }

    /// All permutations of `n`, shortest first.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = vec![Perm::identity(n)];
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 1..n {
                    let v = w.right_mul_simple(i);
                    if v.length() > w.length() && !next.contains(&v) {
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().copied());
            frontier = next;
        }
        out
    }

    pub fn render(&self) -> String {
        self.reduced_word()
            .iter()
            .map(|i| format!("tau{i}"))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Check that `p` only involves `x1..xn` and `y`.
pub fn check_in_arity(p: &Polynomial, n: usize) -> Result<(), HeckeError> {
    if p.vars() != VarSet::Slots {
        return Err(PolyError::VarSetMismatch(p.vars(), VarSet::Slots).into());
    }
    if (n + 1..=MAX_STRANDS).any(|i| p.uses_var(x(i))) {
        return Err(HeckeError::PolynomialOutOfRange(n));
    }
    Ok(())
}

/// Divided difference honoring the active mutation; index checked by caller.
fn demazure(p: &Polynomial, i: usize) -> Polynomial {
    p.demazure(i).expect("validated index")
}

/// `tau_w` acting on `v`: rightmost letter first.
pub fn act_word(w: &Perm, v: &Polynomial) -> Polynomial {
    w.reduced_word()
        .iter()
        .rev()
        .fold(v.clone(), |acc, &i| demazure(&acc, i))
}

/// Element `sum_w p_w tau_w` of the nil affine Hecke algebra on `n` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NilHecke {
    n: usize,
    terms: BTreeMap<Perm, Polynomial>,
}

impl NilHecke {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_STRANDS).contains(&n), "unsupported arity {n}");
        NilHecke {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(n, slots::one()).expect("constant")
    }

    pub fn from_poly(n: usize, p: Polynomial) -> Result<Self, HeckeError> {
        Self::monomial(n, p, Perm::identity(n))
    }

    /// `p * tau_w`.
    pub fn monomial(n: usize, p: Polynomial, w: Perm) -> Result<Self, HeckeError> {
        if !(1..=MAX_STRANDS).contains(&n) {
            return Err(HeckeError::UnsupportedArity(n));
        }
        if w.n() != n {
            return Err(HeckeError::ArityMismatch(w.n(), n));
        }
        check_in_arity(&p, n)?;
        let mut h = Self::zero(n);
        h.add_term(w, p);
        Ok(h)
    }

    pub fn tau(n: usize, i: usize) -> Result<Self, HeckeError> {
        Self::check_index(n, i)?;
        Self::monomial(n, slots::one(), Perm::identity(n).right_mul_simple(i))
    }

    /// `tau_{w_1} ... tau_{w_k}`; zero if the word is not reduced.
    pub fn tau_word(n: usize, word: &[usize]) -> Result<Self, HeckeError> {
        let mut h = Self::one(n);
        for &i in word {
            h = h.mul(&Self::tau(n, i)?)?;
        }
        Ok(h)
    }

    pub fn x(n: usize, i: usize) -> Result<Self, HeckeError> {
        if i == 0 || i > n {
            return Err(HeckeError::InvalidIndex { index: i, n });
        }
        Self::from_poly(n, slots::xv(i))
    }

    pub fn y(n: usize) -> Self {
        Self::from_poly(n, slots::yv()).expect("y is central")
    }

    /// `s_i = tau_i (x_i - x_{i+1}) - 1`.
    pub fn s(n: usize, i: usize) -> Result<Self, HeckeError> {
        let t = Self::tau(n, i)?;
        let diff = Self::from_poly(n, slots::xv(i) - slots::xv(i + 1))?;
        t.mul(&diff)?.checked_sub(&Self::one(n))
    }

    /// `delta_i = tau_i (x_i - y)`, an idempotent.
    pub fn delta(n: usize, i: usize) -> Result<Self, HeckeError> {
        let t = Self::tau(n, i)?;
        t.mul(&Self::from_poly(n, slots::yi(i))?)
    }

    fn check_index(n: usize, i: usize) -> Result<(), HeckeError> {
        if !(1..=MAX_STRANDS).contains(&n) {
            return Err(HeckeError::UnsupportedArity(n));
        }
        if i == 0 || i >= n {
            return Err(HeckeError::InvalidIndex { index: i, n });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Perm) -> Polynomial {
        self.terms.get(w).cloned().unwrap_or_else(slots::zero)
    }

    /// Largest graded degree among coefficients.
    pub fn max_coeff_degree(&self) -> u32 {
        self.terms
            .values()
            .filter_map(Polynomial::graded_degree)
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, w: Perm, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(slots::zero);
        *slot = &*slot + &p;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), HeckeError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(HeckeError::ArityMismatch(self.n, other.n))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, HeckeError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(*w, p.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, HeckeError> {
        self.check_same(other)?;
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::from_integer(1.into()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        NilHecke {
            n: self.n,
            terms: self.terms.iter().map(|(w, p)| (*w, p.scale(c))).collect(),
        }
    }

    /// `p * self`: multiplies every coefficient.
    pub fn left_mul_poly(&self, p: &Polynomial) -> Result<Self, HeckeError> {
        check_in_arity(p, self.n)?;
        let mut out = Self::zero(self.n);
        for (w, q) in &self.terms {
            out.add_term(*w, p * q);
        }
        Ok(out)
    }

    /// `self * p`.
    pub fn right_mul_poly(&self, p: &Polynomial) -> Result<Self, HeckeError> {
        self.mul(&Self::from_poly(self.n, p.clone())?)
    }

    /// `tau_i * self`.
    pub fn left_mul_tau(&self, i: usize) -> Result<Self, HeckeError> {
        Self::check_index(self.n, i)?;
        let drop_one = mutation::active() == Some(Mutation::DropStraightenOne);
        let mut out = Self::zero(self.n);
        for (w, p) in &self.terms {
            if !w.has_left_descent(i) {
                out.add_term(w.left_mul_simple(i), p.swap(i)?);
            }
            if !drop_one {
                out.add_term(*w, demazure(p, i));
            }
        }
        Ok(out)
    }

    /// Normal form of the product; composition order `(a*b)(v) = a(b(v))`.
    pub fn mul(&self, other: &Self) -> Result<Self, HeckeError> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n);
        for (u, p) in &self.terms {
            let mut acc = other.clone();
            for &i in u.reduced_word().iter().rev() {
                acc = acc.left_mul_tau(i)?;
            }
            for (w, q) in acc.terms {
                out.add_term(w, p * &q);
            }
        }
        Ok(out)
    }

    /// Polynomial representation: `x_i` multiplies, `tau_i` divides differences.
    pub fn act(&self, v: &Polynomial) -> Result<Polynomial, HeckeError> {
        check_in_arity(v, self.n)?;
        let mut out = slots::zero();
        for (w, p) in &self.terms {
            out = out + p * &act_word(w, v);
        }
        Ok(out)
    }

    /// The unique `g` with `(x_i - y) * g == self`.
    pub fn left_divide_exact(&self, i: usize) -> Result<Self, HeckeError> {
        if i == 0 || i > self.n {
            return Err(HeckeError::InvalidIndex { index: i, n: self.n });
        }
        let d = slots::yi(i);
        let mut out = Self::zero(self.n);
        for (w, p) in &self.terms {
            let q = p.exact_divide(&d).map_err(|e| match e {
                PolyError::NotDivisible => HeckeError::NotDivisible,
                other => other.into(),
            })?;
            out.add_term(*w, q);
        }
        Ok(out)
    }

    /// Relabel strands `i -> i + by`, producing an element on `n + by` strands.
    pub fn shifted(&self, by: usize) -> Result<Self, HeckeError> {
        let n = self.n + by;
        if n > MAX_STRANDS {
            return Err(HeckeError::UnsupportedArity(n));
        }
        let mut out = Self::zero(n);
        for (w, p) in &self.terms {
            out.add_term(w.shifted(by), p.shift_slots(by));
        }
        Ok(out)
    }

    /// The same element viewed on `n` strands, `n >= self.n()`.
    pub fn widened(&self, n: usize) -> Result<Self, HeckeError> {
        if n < self.n || n > MAX_STRANDS {
            return Err(HeckeError::UnsupportedArity(n));
        }
        let mut out = Self::zero(n);
        for (w, p) in &self.terms {
            out.add_term(w.widened(n), p.clone());
        }
        Ok(out)
    }

    /// Drop every term whose permutation has a right descent among the first
    /// `n - 2` positions.
    ///
    /// Those terms act by zero on polynomials in `x_n` and `y` alone, and
    /// they span a left ideal, so this is the canonical representative of
    /// the induced map out of `k[x_n, y]`.
    pub fn reduce_for_source(&self) -> Self {
        let mut out = self.clone();
        out.terms
            .retain(|w, _| (1..self.n.saturating_sub(1)).all(|j| !w.has_right_descent(j)));
        out
    }

    /// Canonical rendering, longer words first.
    pub fn render(&self) -> String {
        let mut words: Vec<(Perm, Vec<usize>)> =
            self.terms.keys().map(|w| (*w, w.reduced_word())).collect();
        words.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.1.cmp(&b.1)));
        let mut items = Vec::new();
        for (w, _) in words {
            let tail = w.render();
            for (m, c) in self.terms[&w].terms().rev() {
                let head = Polynomial::term(VarSet::Slots, c.clone(), *m);
                let head_word = match head.leading() {
                    Some((mm, _)) if mm.total() > 0 => {
                        let mut s = head.scale(&(Scalar::from_integer(1.into()) / c)).render();
                        if !tail.is_empty() {
                            s.push('*');
                        }
                        s
                    }
                    _ => String::new(),
                };
                items.push((c.clone(), format!("{head_word}{tail}")));
            }
        }
        render_sum(&items)
    }
}

impl fmt::Display for NilHecke {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The coset representatives `tau_{n-l} ... tau_{n-1}` for `l = 0..n`.
pub fn source_words(n: usize) -> Vec<Perm> {
    (0..n)
        .map(|l| {
            let word: Vec<usize> = (n - l..n).collect();
            Perm::from_word(n, &word).expect("valid word")
        })
        .collect()
}

/// Find the operator `h` (reduced for the source) with
/// `h.act(x_n^k) == result` for every supplied `(k, result)`.
///
/// Evaluation `k = l` is the first one seen by the length-`l` coset
/// representative, whose action sends `x_n^l` to a nonzero constant, so the
/// coefficients are solved one length at a time. The remaining evaluations
/// are checked as residuals.
pub fn recover_operator(
    evaluations: &[(u32, Polynomial)],
    n: usize,
) -> Result<NilHecke, HeckeError> {
    if !(1..=MAX_STRANDS).contains(&n) {
        return Err(HeckeError::UnsupportedArity(n));
    }
    let lookup: BTreeMap<u32, &Polynomial> = evaluations.iter().map(|(k, p)| (*k, p)).collect();
    let xn = slots::xv(n);
    let reps = source_words(n);
    let mut h = NilHecke::zero(n);
    for (l, w) in reps.iter().enumerate() {
        let target = lookup.get(&(l as u32)).ok_or_else(|| {
            HeckeError::NoSolution(format!("missing evaluation at x{n}^{l}"))
        })?;
        check_in_arity(target, n)?;
        let known = h.act(&xn.pow(l as u32))?;
        let pivot = act_word(w, &xn.pow(l as u32))
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| HeckeError::NoSolution("degenerate pivot".into()))?;
        let residual = *target - &known;
        let coeff = residual.scale(&(Scalar::from_integer(1.into()) / pivot));
        h.add_term(*w, coeff);
    }
    for (k, result) in evaluations {
        let got = h.act(&xn.pow(*k))?;
        if &got != result {
            return Err(HeckeError::NoSolution(format!(
                "evaluation at x{n}^{k} disagrees: expected {result}, reconstructed {got}"
            )));
        }
    }
    Ok(h)
}

/// Evaluations `h(x_n^k)` for `k = 0..=max_k`.
pub fn evaluations(h: &NilHecke, max_k: u32) -> Result<Vec<(u32, Polynomial)>, HeckeError> {
    let xn = slots::xv(h.n());
    (0..=max_k)
        .map(|k| Ok((k, h.act(&xn.pow(k))?)))
        .collect()
}

/// The evaluation bound `maxdeg/2 + n + 1` used for round trips.
pub fn evaluation_bound(h: &NilHecke) -> u32 {
    h.max_coeff_degree() / 2 + h.n() as u32 + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::slots::*;

    fn nf(n: usize, p: Polynomial) -> NilHecke {
        NilHecke::from_poly(n, p).unwrap()
    }

    #[test]
    fn reduced_words_are_lex_least() {
        let w0 = Perm::from_one_line(&[3, 2, 1]).unwrap();
        assert_eq!(w0.reduced_word(), vec![1, 2, 1]);
        assert_eq!(Perm::all(3).len(), 6);
        assert_eq!(Perm::all(4).len(), 24);
        for w in Perm::all(4) {
            assert_eq!(w.reduced_word().len(), w.length());
            assert_eq!(Perm::from_word(4, &w.reduced_word()).unwrap(), w);
        }
    }

    #[test]
    fn straighten_examples() {
        let t = NilHecke::tau(2, 1).unwrap();
        assert_eq!(t.mul(&nf(2, xv(1))).unwrap().render(), "x2*tau1 + 1");
        assert_eq!(t.mul(&nf(2, yv())).unwrap().render(), "y*tau1");
        assert_eq!(t.mul(&nf(2, yi(1))).unwrap().render(), "x2*tau1 - y*tau1 + 1");
    }

    #[test]
    fn tau_squares_to_zero_and_braids() {
        let t1 = NilHecke::tau(3, 1).unwrap();
        assert!(t1.mul(&t1).unwrap().is_zero());
        let a = NilHecke::tau_word(3, &[1, 2, 1]).unwrap();
        let b = NilHecke::tau_word(3, &[2, 1, 2]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn special_elements() {
        let s = NilHecke::s(2, 1).unwrap();
        assert_eq!(s.mul(&s).unwrap(), NilHecke::one(2));
        let d = NilHecke::delta(2, 1).unwrap();
        assert_eq!(d.render(), "x2*tau1 - y*tau1 + 1");
        assert_eq!(d.mul(&d).unwrap(), d);
        assert_eq!(d.act(&one()).unwrap(), one());
    }

    #[test]
    fn act_examples() {
        let t = NilHecke::tau(2, 1).unwrap();
        assert_eq!(t.act(&(xv(1) * xv(1))).unwrap(), xv(1) + xv(2));
        let h = NilHecke::tau(2, 1).unwrap().mul(&nf(2, xv(1))).unwrap();
        assert_eq!(h.act(&xv(1)).unwrap(), xv(1) + xv(2));
        assert!(matches!(
            t.act(&xv(3)),
            Err(HeckeError::PolynomialOutOfRange(2))
        ));
    }

    #[test]
    fn left_division_examples() {
        let h = nf(2, yi(2))
            .mul(&NilHecke::tau(2, 1).unwrap())
            .unwrap()
            .checked_add(&nf(2, yi(1) * yi(2)))
            .unwrap();
        let expected = NilHecke::tau(2, 1)
            .unwrap()
            .checked_add(&nf(2, yi(1)))
            .unwrap();
        assert_eq!(h.left_divide_exact(2).unwrap(), expected);
        assert_eq!(
            NilHecke::delta(2, 1).unwrap().left_divide_exact(1),
            Err(HeckeError::NotDivisible)
        );
        assert!(NilHecke::zero(3).left_divide_exact(3).unwrap().is_zero());
    }

    #[test]
    fn recover_examples() {
        let t = NilHecke::tau(2, 1).unwrap();
        assert_eq!(recover_operator(&evaluations(&t, 2).unwrap(), 2).unwrap(), t);
        let x1 = nf(1, xv(1));
        assert_eq!(recover_operator(&evaluations(&x1, 2).unwrap(), 1).unwrap(), x1);
        let zeros: Vec<_> = (0..5).map(|k| (k, zero())).collect();
        assert!(recover_operator(&zeros, 3).unwrap().is_zero());
        let bad = vec![(0, one()), (1, one()), (2, yv())];
        assert!(matches!(
            recover_operator(&bad, 2),
            Err(HeckeError::NoSolution(_))
        ));
    }

    #[test]
    fn source_reduction_kills_only_invisible_terms() {
        let h = NilHecke::tau_word(3, &[2, 1]).unwrap();
        assert!(h.reduce_for_source().is_zero());
        assert!(h.act(&(xv(3) * xv(3) * xv(3))).unwrap().is_zero());
        let g = NilHecke::tau_word(3, &[1, 2]).unwrap();
        assert_eq!(g.reduce_for_source(), g);
    }
}
