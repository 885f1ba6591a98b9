//! Sparse multivariate polynomials over the rationals.
//!
//! Every polynomial carries its ambient [`VarSet`]; arithmetic between
//! different variable sets is a usage error. Variables all have graded
//! degree 2, so the graded degree of a monomial is twice its exponent sum.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::mutation::{self, Mutation};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Build a scalar from an integer.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Build a scalar `num/den`; panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Maximum number of variables in any variable set.
pub const MAX_VARS: usize = 5;

/// The fixed ambient variable sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarSet {
    /// `x1, x2, x3, x4, y`: slot variables of `E^n[y]` plus the central `y`.
    Slots,
    /// `y1, y2`: the two-variable ring used for the explicit rank-one model.
    Pair,
}

impl VarSet {
    pub fn count(self) -> usize {
        match self {
            VarSet::Slots => 5,
            VarSet::Pair => 2,
        }
    }

    pub fn names(self) -> &'static [&'static str] {
        match self {
            VarSet::Slots => &["x1", "x2", "x3", "x4", "y"],
            VarSet::Pair => &["y1", "y2"],
        }
    }

    /// Number of variables permuted by the symmetric group action.
    pub fn permutable(self) -> usize {
        match self {
            VarSet::Slots => 4,
            VarSet::Pair => 2,
        }
    }

    pub fn index_of(self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| *n == name)
    }
}

/// Index of `y` in [`VarSet::Slots`].
pub const Y: usize = 4;

/// Index of `x_i` (1-based) in [`VarSet::Slots`].
pub fn x(i: usize) -> usize {
    debug_assert!((1..=4).contains(&i));
    i - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable sets differ: {0:?} vs {1:?}")]
    VarSetMismatch(VarSet, VarSet),
    #[error("not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("invalid slot index {index} for {vars:?}")]
    InvalidIndex { index: usize, vars: VarSet },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
}

/// Exponent vector. Unused trailing slots stay zero.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared left to right (so `x1 > x2 > ... > y`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut m = Self::default();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn var(index: usize) -> Self {
        let mut m = Self::default();
        m.exps[index] = 1;
        m
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn exp(&self, index: usize) -> u16 {
        self.exps[index]
    }

    pub fn total(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Graded degree: every variable has degree 2.
    pub fn graded_degree(&self) -> u32 {
        2 * self.total()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = *other;
        for (a, b) in m.exps.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        m
    }

    pub fn with_exp(mut self, index: usize, e: u16) -> Monomial {
        self.exps[index] = e;
        self
    }

    fn swapped(mut self, a: usize, b: usize) -> Monomial {
        self.exps.swap(a, b);
        self
    }

    fn render(&self, vars: VarSet) -> String {
        let mut parts = Vec::new();
        for (i, name) in vars.names().iter().enumerate() {
            match self.exps[i] {
                0 => {}
                1 => parts.push((*name).to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial: monomial to nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: VarSet,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(vars: VarSet) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, Scalar::one())
    }

    pub fn constant(vars: VarSet, c: Scalar) -> Self {
        Self::term(vars, c, Monomial::one())
    }

    pub fn from_int(vars: VarSet, c: i64) -> Self {
        Self::constant(vars, int(c))
    }

    pub fn term(vars: VarSet, c: Scalar, m: Monomial) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(vars: VarSet, index: usize) -> Self {
        assert!(index < vars.count(), "variable index out of range");
        Self::term(vars, Scalar::one(), Monomial::var(index))
    }

    /// Look up a variable by name (`x1`, `y`, `y2`, ...).
    pub fn named(vars: VarSet, name: &str) -> Result<Self, PolyError> {
        vars.index_of(name)
            .map(|i| Self::var(vars, i))
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn from_terms(vars: VarSet, terms: impl IntoIterator<Item = (Scalar, Monomial)>) -> Self {
        let mut p = Self::zero(vars);
        for (c, m) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Constant coefficient if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Maximum exponent sum over the terms; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total).max()
    }

    pub fn graded_degree(&self) -> Option<u32> {
        self.total_degree().map(|d| 2 * d)
    }

    /// True if all terms have the same graded degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::total);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Largest exponent of the given variable.
    pub fn degree_in(&self, index: usize) -> u16 {
        self.terms.keys().map(|m| m.exp(index)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, index: usize) -> bool {
        self.degree_in(index) > 0
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarSetMismatch(self.vars, other.vars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = Self::zero(self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.vars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact quotient by a single divisor.
    ///
    /// Long division along graded-lex order: if `g | f` every intermediate
    /// remainder is a multiple of `g`, so its leading monomial is divisible by
    /// the leading monomial of `g`. The first failure proves non-divisibility.
    pub fn exact_divide(&self, g: &Self) -> Result<Self, PolyError> {
        self.check_same(g)?;
        let (lm, lc) = match g.leading() {
            Some((m, c)) => (*m, c.clone()),
            None => return Err(PolyError::ZeroDivisor),
        };
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !lm.divides(&rm) {
                return Err(PolyError::NotDivisible);
            }
            let qm = lm.quotient_of(&rm);
            let qc = rc / &lc;
            for (gm, gc) in &g.terms {
                rem.add_term(gm.mul(&qm), -(gc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    fn check_swap_index(&self, i: usize) -> Result<(), PolyError> {
        if i >= 1 && i < self.vars.permutable() {
            Ok(())
        } else {
            Err(PolyError::InvalidIndex {
                index: i,
                vars: self.vars,
            })
        }
    }

    /// Exchange the `i`-th and `(i+1)`-th permutable variables (1-based).
    pub fn swap(&self, i: usize) -> Result<Self, PolyError> {
        self.check_swap_index(i)?;
        Ok(Self {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swapped(i - 1, i), c.clone()))
                .collect(),
        })
    }

    /// Divided difference `(f - swap(f, i)) / (v_i - v_{i+1})`.
    ///
    /// Computed termwise: for `a > b`,
    /// `(u^a v^b - u^b v^a) / (u - v) = sum_{k=0}^{a-b-1} u^{a-1-k} v^{b+k}`.
    pub fn demazure(&self, i: usize) -> Result<Self, PolyError> {
        self.check_swap_index(i)?;
        let (pa, pb) = (i - 1, i);
        let flip = mutation::active() == Some(Mutation::SwapOrientation);
        let mut out = Self::zero(self.vars);
        for (m, c) in &self.terms {
            let (a, b) = (m.exp(pa), m.exp(pb));
            if a == b {
                continue;
            }
            let (hi, lo, sign) = if a > b { (a, b, 1) } else { (b, a, -1) };
            let sign = if flip { -sign } else { sign };
            let c = if sign > 0 { c.clone() } else { -c.clone() };
            for k in 0..(hi - lo) {
                let mm = m.with_exp(pa, hi - 1 - k).with_exp(pb, lo + k);
                out.add_term(mm, c.clone());
            }
        }
        Ok(out)
    }

    /// Substitute a polynomial for one variable.
    pub fn substitute(&self, index: usize, value: &Self) -> Result<Self, PolyError> {
        self.check_same(value)?;
        if index >= self.vars.count() {
            return Err(PolyError::InvalidIndex {
                index,
                vars: self.vars,
            });
        }
        let mut powers: Vec<Self> = vec![Self::one(self.vars)];
        let mut out = Self::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(index) as usize;
            while powers.len() <= e {
                let next = powers.last().expect("nonempty") * value;
                powers.push(next);
            }
            let rest = m.with_exp(index, 0);
            for (pm, pc) in &powers[e].terms {
                out.add_term(pm.mul(&rest), pc * c);
            }
        }
        Ok(out)
    }

    /// Rename variables by an index map; `map[i]` is the new index of variable `i`.
    /// Distinct variables must map to distinct targets.
    pub fn relabel(&self, map: &[usize]) -> Self {
        let mut out = Self::zero(self.vars);
        for (m, c) in &self.terms {
            let mut e = [0u16; MAX_VARS];
            for (i, &target) in map.iter().enumerate() {
                e[target] += m.exp(i);
            }
            out.add_term(Monomial { exps: e }, c.clone());
        }
        out
    }

    /// Shift slot variables `x_i -> x_{i+by}`, fixing `y`.
    pub fn shift_slots(&self, by: usize) -> Self {
        debug_assert_eq!(self.vars, VarSet::Slots);
        if by == 0 {
            return self.clone();
        }
        let mut map = [0usize; MAX_VARS];
        for (i, slot) in map.iter_mut().enumerate().take(4) {
            *slot = i + by;
        }
        map[Y] = Y;
        for i in 0..4 {
            if self.uses_var(i) {
                assert!(i + by < 4, "slot shift beyond x4");
            }
        }
        let map: Vec<usize> = map.iter().map(|&t| t.min(MAX_VARS - 1)).collect();
        self.relabel(&map)
    }

    /// Coefficients of powers of one variable: `f = sum_k v^k * out[k]`.
    pub fn coefficients_in(&self, index: usize) -> Vec<Self> {
        let deg = self.degree_in(index) as usize;
        let mut out = vec![Self::zero(self.vars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(index) as usize;
            out[e].add_term(m.with_exp(index, 0), c.clone());
        }
        out
    }

    /// Evaluate at rational values for all variables.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t *= v;
                }
            }
            total += t;
        }
        total
    }

    /// Canonical rendering, graded-lex descending.
    pub fn render(&self) -> String {
        let items: Vec<(Scalar, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| (c.clone(), m.render(self.vars)))
            .collect();
        render_sum(&items)
    }
}

/// Render `sum c_k * word_k` with `+`/`-` separators; empty words are constants.
pub(crate) fn render_sum(items: &[(Scalar, String)]) -> String {
    if items.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (c, word)) in items.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff = render_scalar(&abs);
        if word.is_empty() {
            out.push_str(&coeff);
        } else if abs.is_one() {
            out.push_str(word);
        } else {
            out.push_str(&coeff);
            out.push('*');
            out.push_str(word);
        }
    }
    out
}

/// `p/q` with `q` omitted when it is 1.
pub fn render_scalar(c: &Scalar) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on mismatched variable sets.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial variable sets must agree")
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

impl std::ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Shorthands for the slot ring `k[x1..x4, y]`.
pub mod slots {
    use super::*;

    pub fn zero() -> Polynomial {
        Polynomial::zero(VarSet::Slots)
    }

    pub fn one() -> Polynomial {
        Polynomial::one(VarSet::Slots)
    }

    pub fn c(n: i64) -> Polynomial {
        Polynomial::from_int(VarSet::Slots, n)
    }

    /// `x_i`, 1-based.
    pub fn xv(i: usize) -> Polynomial {
        Polynomial::var(VarSet::Slots, x(i))
    }

    pub fn yv() -> Polynomial {
        Polynomial::var(VarSet::Slots, Y)
    }

    /// `y_i = x_i - y`.
    pub fn yi(i: usize) -> Polynomial {
        xv(i) - yv()
    }

    /// `y_1 * ... * y_n`.
    pub fn y_prod(n: usize) -> Polynomial {
        (1..=n).fold(one(), |acc, i| acc * yi(i))
    }
}

/// Shorthands for the pair ring `k[y1, y2]`.
pub mod pair {
    use super::*;

    pub fn zero() -> Polynomial {
        Polynomial::zero(VarSet::Pair)
    }

    pub fn one() -> Polynomial {
        Polynomial::one(VarSet::Pair)
    }

    pub fn c(n: i64) -> Polynomial {
        Polynomial::from_int(VarSet::Pair, n)
    }

    pub fn y1() -> Polynomial {
        Polynomial::var(VarSet::Pair, 0)
    }

    pub fn y2() -> Polynomial {
        Polynomial::var(VarSet::Pair, 1)
    }

    /// `omega = y1 - y2`.
    pub fn omega() -> Polynomial {
        y1() - y2()
    }

    /// All monomials of exponent sum `d`, graded-lex descending.
    pub fn monomials(d: u32) -> Vec<Monomial> {
        (0..=d)
            .rev()
            .map(|a| Monomial::from_exps(&[a as u16, (d - a) as u16]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::slots::*;
    use super::*;

    #[test]
    fn additive_inverse() {
        assert!((xv(1) + -xv(1)).is_zero());
    }

    #[test]
    fn expansion() {
        let lhs = yi(1) * yi(2);
        let rhs = xv(1) * xv(2) - xv(1) * yv() - xv(2) * yv() + yv() * yv();
        assert_eq!(lhs, rhs);
        assert_eq!(one() * &lhs, lhs);
    }

    #[test]
    fn exact_divide_examples() {
        let f = yi(1) * (xv(2) + one());
        assert_eq!(f.exact_divide(&yi(1)).unwrap(), xv(2) + one());
        assert_eq!(xv(1).exact_divide(&yi(1)), Err(PolyError::NotDivisible));
        assert!(zero().exact_divide(&yi(3)).unwrap().is_zero());
        assert_eq!(xv(1).exact_divide(&zero()), Err(PolyError::ZeroDivisor));
    }

    #[test]
    fn swap_examples() {
        let f = xv(1) * xv(1);
        assert_eq!(f.swap(1).unwrap(), xv(2) * xv(2));
        let g = xv(1) * xv(2);
        assert_eq!(g.swap(1).unwrap(), g);
        assert!(f.swap(4).is_err());
        assert!(f.swap(0).is_err());
    }

    #[test]
    fn demazure_examples() {
        assert_eq!(xv(1).demazure(1).unwrap(), one());
        assert_eq!(xv(2).demazure(1).unwrap(), -one());
        assert_eq!((xv(1) * xv(1)).demazure(1).unwrap(), xv(1) + xv(2));
        assert!(yv().demazure(2).unwrap().is_zero());
    }

    #[test]
    fn substitute_examples() {
        assert!(yi(1).substitute(x(1), &yv()).unwrap().is_zero());
        let f = xv(1) * xv(2);
        assert_eq!(f.substitute(x(2), &yv()).unwrap(), xv(1) * yv());
        assert_eq!(f.substitute(x(1), &xv(1)).unwrap(), f);
    }

    #[test]
    fn mismatched_sets_are_rejected() {
        let a = xv(1);
        let b = pair::y1();
        assert!(matches!(
            a.checked_add(&b),
            Err(PolyError::VarSetMismatch(..))
        ));
    }

    #[test]
    fn rendering() {
        assert_eq!((xv(2) + one()).render(), "x2 + 1");
        assert_eq!((-(xv(1) * xv(1)) + yv().scale(&ratio(3, 2))).render(), "-x1^2 + 3/2*y");
        assert_eq!(zero().render(), "0");
        assert_eq!((pair::y1() - pair::y2()).render(), "y1 - y2");
    }

    #[test]
    fn shift_and_coefficients() {
        let f = xv(1) * xv(2) + yv();
        assert_eq!(f.shift_slots(2), xv(3) * xv(4) + yv());
        let cs = (xv(1) * xv(1) * xv(2) + xv(2)).coefficients_in(x(1));
        assert_eq!(cs, vec![xv(2), zero(), xv(2)]);
    }
}
