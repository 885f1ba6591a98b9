//! Tuple models for the components of the product bimodule and its powers.
//!
//! Each model is a tuple of polynomials in the slot variables plus one map
//! `E -> E^n`, constrained by divisibility by `y_i = x_i - y`. Slot `i` is
//! the `i`-th tensor factor counted from the right, so the source of a map
//! `E -> E^n` sits in slot `n`. In that convention `E*delta` on `E^2` is
//! `delta_1`, `delta*E` is `delta_2`, and likewise for `tau` and `x`.

use std::fmt;

use thiserror::Error;

use crate::nilhecke::{check_in_arity, recover_operator, HeckeError, NilHecke, Perm};
use crate::poly::{slots, x, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// The failed condition, e.g. `y1 | e1 - e2`.
    pub condition: String,
    /// Rendering of the quantity that failed to divide.
    pub remainder: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails on {}", self.condition, self.remainder)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GError {
    #[error("membership violation: {0}")]
    Violation(Violation),
    #[error("component arity: {0}")]
    Arity(String),
    #[error("generator does not act on this component: {0}")]
    GeneratorMismatch(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

impl From<PolyError> for GError {
    fn from(e: PolyError) -> Self {
        GError::Hecke(e.into())
    }
}

fn violation(condition: impl Into<String>, remainder: String) -> GError {
    GError::Violation(Violation {
        condition: condition.into(),
        remainder,
    })
}

/// `p / y_i` or a violation naming `condition`.
fn div_y(p: &Polynomial, i: usize, condition: &str) -> Result<Polynomial, GError> {
    p.exact_divide(&slots::yi(i)).map_err(|e| match e {
        PolyError::NotDivisible => violation(condition, p.render()),
        other => other.into(),
    })
}

fn div_y_prod(p: &Polynomial, n: usize, condition: &str) -> Result<Polynomial, GError> {
    p.exact_divide(&slots::y_prod(n)).map_err(|e| match e {
        PolyError::NotDivisible => violation(condition, p.render()),
        other => other.into(),
    })
}

fn in_arity(p: &Polynomial, n: usize, what: &str) -> Result<(), GError> {
    check_in_arity(p, n).map_err(|_| GError::Arity(format!("{what} must lie in arity {n}")))
}

/// Divided difference `tau_i` on a polynomial.
fn dd(p: &Polynomial, i: usize) -> Polynomial {
    p.demazure(i).expect("valid slot index")
}

/// `delta_i(p) = tau_i((x_i - y) p)`.
fn delta_on(p: &Polynomial, i: usize) -> Polynomial {
    dd(&(slots::yi(i) * p), i)
}

/// A map `E -> E^n[y]`, `f |-> op(f(x_n))`.
///
/// Only the class of `op` modulo the operators that kill every polynomial
/// in `x_n` and `y` matters; the stored operator is the canonical
/// representative, so equality of maps is equality of fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlotMap {
    op: NilHecke,
}

impl SlotMap {
    pub fn new(op: NilHecke) -> Self {
        SlotMap {
            op: op.reduce_for_source(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(NilHecke::zero(n))
    }

    /// The map `_ (x) e`: multiply the inserted source by `e(x_1..x_{n-1}, y)`.
    pub fn mult(n: usize, e: &Polynomial) -> Result<Self, GError> {
        in_arity(e, n - 1, "multiplier")?;
        Ok(Self::new(NilHecke::from_poly(n, e.clone())?))
    }

    pub fn n(&self) -> usize {
        self.op.n()
    }

    pub fn op(&self) -> &NilHecke {
        &self.op
    }

    pub fn is_zero(&self) -> bool {
        self.op.is_zero()
    }

    /// Evaluate on `f(x_1, y)`, inserted in slot `n`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, GError> {
        in_arity(f, 1, "source")?;
        let moved = f.substitute(x(1), &slots::xv(self.n()))?;
        Ok(self.op.act(&moved)?)
    }

    /// Post-compose with an operator on `E^n`.
    pub fn then(&self, g: &NilHecke) -> Result<Self, GError> {
        Ok(Self::new(g.mul(&self.op)?))
    }

    /// Post-compose with multiplication by `p`.
    pub fn times(&self, p: &Polynomial) -> Result<Self, GError> {
        Ok(Self::new(self.op.left_mul_poly(p)?))
    }

    /// Pre-compose with multiplication by `phi(x, y)` on the source.
    pub fn precompose(&self, phi: &Polynomial) -> Result<Self, GError> {
        in_arity(phi, 1, "source multiplier")?;
        let moved = phi.substitute(x(1), &slots::xv(self.n()))?;
        Ok(Self::new(self.op.right_mul_poly(&moved)?))
    }

    /// Tensor `E^by` on the right: slot `i` becomes slot `i + by`.
    pub fn shifted(&self, by: usize) -> Result<Self, GError> {
        Ok(Self::new(self.op.shifted(by)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self, GError> {
        Ok(Self::new(self.op.checked_add(&other.op)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GError> {
        Ok(Self::new(self.op.checked_sub(&other.op)?))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.op.neg())
    }

    /// The unique `g` with `y_i g == self`, or a violation naming `condition`.
    pub fn left_divide(&self, i: usize, condition: &str) -> Result<Self, GError> {
        match self.op.left_divide_exact(i) {
            Ok(op) => Ok(Self::new(op)),
            Err(HeckeError::NotDivisible) => Err(violation(condition, self.op.render())),
            Err(e) => Err(e.into()),
        }
    }

    pub fn render(&self) -> String {
        self.op.render()
    }
}

/// Operator `tau_{w_1} ... tau_{w_k}` on `n` strands.
fn taus(n: usize, word: &[usize]) -> NilHecke {
    NilHecke::tau_word(n, word).expect("valid word")
}

/// Operator `delta_{w_1} ... delta_{w_k}` on `n` strands.
fn deltas(n: usize, word: &[usize]) -> NilHecke {
    word.iter().fold(NilHecke::one(n), |acc, &i| {
        acc.mul(&NilHecke::delta(n, i).expect("valid index"))
            .expect("same arity")
    })
}

fn m(n: usize, e: &Polynomial) -> Result<SlotMap, GError> {
    SlotMap::mult(n, e)
}

/// `theta(y)` with `phi(x1, y) = theta + y1 * phi1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct G1 {
    pub theta: Polynomial,
    pub phi: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct G2 {
    pub e1: Polynomial,
    pub e2: Polynomial,
    pub xi: SlotMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct G3 {
    pub ee1: Polynomial,
    pub ee2: Polynomial,
    pub ee3: Polynomial,
    pub chi: SlotMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct G4 {
    pub eee: [Polynomial; 4],
    pub psi: SlotMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G1Witness {
    pub phi1: Polynomial,
}

/// Auxiliary data of a `G2` element, in both equivalent condition forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KWitness {
    pub e_prime: Polynomial,
    pub xi1: SlotMap,
    pub xi2: SlotMap,
    pub xi_prime: SlotMap,
}

/// Auxiliary data of a `G3` element, in both equivalent condition forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LWitness {
    pub ee_prime: Polynomial,
    pub ee_second: Polynomial,
    pub ee_third: Polynomial,
    pub ee_bar: Polynomial,
    pub chi1: SlotMap,
    pub chi2: SlotMap,
    pub chi3: SlotMap,
    pub chi1_prime: SlotMap,
    pub chi2_prime: SlotMap,
    pub chi_second: SlotMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G4Witness {
    /// `eee^(1)..eee^(6)`.
    pub eee_aux: [Polynomial; 6],
    pub eee_bar: Polynomial,
    pub psi: [SlotMap; 4],
}

impl G1 {
    pub fn new(theta: Polynomial, phi: Polynomial) -> Result<Self, GError> {
        let g = G1 { theta, phi };
        g.witness()?;
        Ok(g)
    }

    pub fn zero() -> Self {
        G1 {
            theta: slots::zero(),
            phi: slots::zero(),
        }
    }

    pub fn witness(&self) -> Result<G1Witness, GError> {
        in_arity(&self.theta, 0, "theta")?;
        in_arity(&self.phi, 1, "phi")?;
        let phi1 = div_y(&(&self.phi - &self.theta), 1, "y1 | phi - theta")?;
        Ok(G1Witness { phi1 })
    }

    /// `(y theta, x1 phi)`.
    pub fn xtilde(&self) -> G1 {
        G1 {
            theta: slots::yv() * &self.theta,
            phi: slots::xv(1) * &self.phi,
        }
    }

    pub fn render(&self) -> String {
        format!("({}; {})", self.theta, self.phi)
    }
}

impl G2 {
    pub fn new(e1: Polynomial, e2: Polynomial, xi: SlotMap) -> Result<Self, GError> {
        let g = G2 { e1, e2, xi };
        g.witness()?;
        Ok(g)
    }

    pub fn zero() -> Self {
        G2 {
            e1: slots::zero(),
            e2: slots::zero(),
            xi: SlotMap::zero(2),
        }
    }

    /// `e1 = e2 + y1 e'`, `xi1 = tau1 m(e2) + y1 xi'`, `xi = m(e1) + y2 xi1`.
    pub fn generate(e2: &Polynomial, e_prime: &Polynomial, xi_prime: &SlotMap) -> Result<Self, GError> {
        in_arity(e2, 1, "e2")?;
        in_arity(e_prime, 1, "e'")?;
        let e1 = e2 + slots::yi(1) * e_prime;
        let xi1 = m(2, e2)?.then(&taus(2, &[1]))?.add(&xi_prime.times(&slots::yi(1))?)?;
        let xi = m(2, &e1)?.add(&xi1.times(&slots::yi(2))?)?;
        G2::new(e1, e2.clone(), xi)
    }

    /// Extract the auxiliary data, checking both condition forms and that
    /// they agree.
    pub fn witness(&self) -> Result<KWitness, GError> {
        in_arity(&self.e1, 1, "e1")?;
        in_arity(&self.e2, 1, "e2")?;
        if self.xi.n() != 2 {
            return Err(GError::Arity("xi must map into E^2".into()));
        }
        let e_prime = div_y(&(&self.e1 - &self.e2), 1, "y1 | e1 - e2")?;
        let xi1 = self
            .xi
            .sub(&m(2, &self.e1)?)?
            .left_divide(2, "y2 | xi - m(e1)")?;
        let xi2 = self
            .xi
            .sub(&m(2, &self.e2)?.then(&deltas(2, &[1]))?)?
            .left_divide(1, "y1 | xi - delta1 m(e2)")?;
        let xi_prime = xi1
            .sub(&m(2, &self.e2)?.then(&taus(2, &[1]))?)?
            .left_divide(1, "y1 | xi1 - tau1 m(e2)")?;
        let expected = m(2, &e_prime)?.add(&xi_prime.times(&slots::yi(2))?)?;
        if expected != xi2 {
            return Err(violation(
                "xi2 = m(e') + y2 xi'",
                xi2.sub(&expected)?.render(),
            ));
        }
        Ok(KWitness {
            e_prime,
            xi1,
            xi2,
            xi_prime,
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self, GError> {
        Ok(G2 {
            e1: &self.e1 + &o.e1,
            e2: &self.e2 + &o.e2,
            xi: self.xi.add(&o.xi)?,
        })
    }

    pub fn render(&self) -> String {
        format!("({}; {}; {})", self.e1, self.e2, self.xi.render())
    }
}

impl G3 {
    pub fn new(ee1: Polynomial, ee2: Polynomial, ee3: Polynomial, chi: SlotMap) -> Result<Self, GError> {
        let g = G3 { ee1, ee2, ee3, chi };
        g.witness()?;
        Ok(g)
    }

    pub fn zero() -> Self {
        G3 {
            ee1: slots::zero(),
            ee2: slots::zero(),
            ee3: slots::zero(),
            chi: SlotMap::zero(3),
        }
    }

    /// Build from the free data `(ee3, ee_bar, ee'', chi'')`.
    pub fn generate(
        ee3: &Polynomial,
        ee_bar: &Polynomial,
        ee_second: &Polynomial,
        chi_second: &SlotMap,
    ) -> Result<Self, GError> {
        for (p, name) in [(ee3, "ee3"), (ee_bar, "ee_bar"), (ee_second, "ee''")] {
            in_arity(p, 2, name)?;
        }
        let ee_prime = dd(ee3, 1) - slots::yi(1) * ee_bar;
        let ee2 = ee3 - slots::yi(1) * ee_second;
        let ee1 = &ee2 + slots::yi(2) * &ee_prime;
        let chi1_prime = m(3, ee3)?
            .then(&taus(3, &[1, 2]))?
            .add(&chi_second.times(&slots::yi(1))?)?;
        let chi1 = m(3, &ee2)?
            .then(&taus(3, &[2]))?
            .add(&chi1_prime.times(&slots::yi(2))?)?;
        let chi = m(3, &ee1)?.add(&chi1.times(&slots::yi(3))?)?;
        G3::new(ee1, ee2, ee3.clone(), chi)
    }

    pub fn witness(&self) -> Result<LWitness, GError> {
        for (p, name) in [(&self.ee1, "ee1"), (&self.ee2, "ee2"), (&self.ee3, "ee3")] {
            in_arity(p, 2, name)?;
        }
        if self.chi.n() != 3 {
            return Err(GError::Arity("chi must map into E^3".into()));
        }
        let ee_prime = div_y(&(&self.ee1 - &self.ee2), 2, "y2 | ee1 - ee2")?;
        let ee_second = div_y(&(&self.ee3 - &self.ee2), 1, "y1 | ee3 - ee2")?;
        let ee_third = div_y(
            &(delta_on(&self.ee3, 1) - &self.ee1),
            1,
            "y1 | delta1(ee3) - ee1",
        )?;
        let ee_bar = div_y(&(dd(&self.ee3, 1) - &ee_prime), 1, "y1 | tau1(ee3) - ee'")?;
        if &ee_third - &ee_second != slots::yi(2) * &ee_bar {
            return Err(violation(
                "ee''' - ee'' = y2 ee_bar",
                (&ee_third - &ee_second - slots::yi(2) * &ee_bar).render(),
            ));
        }

        let chi1 = self
            .chi
            .sub(&m(3, &self.ee1)?)?
            .left_divide(3, "y3 | chi - m(ee1)")?;
        let chi2 = self
            .chi
            .sub(&m(3, &self.ee2)?.then(&deltas(3, &[2]))?)?
            .left_divide(2, "y2 | chi - delta2 m(ee2)")?;
        let chi3 = self
            .chi
            .sub(&m(3, &self.ee3)?.then(&deltas(3, &[1, 2]))?)?
            .left_divide(1, "y1 | chi - delta1 delta2 m(ee3)")?;
        let chi1_prime = chi1
            .sub(&m(3, &self.ee2)?.then(&taus(3, &[2]))?)?
            .left_divide(2, "y2 | chi1 - tau2 m(ee2)")?;
        let chi_second = chi1_prime
            .sub(&m(3, &self.ee3)?.then(&taus(3, &[1, 2]))?)?
            .left_divide(1, "y1 | chi1' - tau1 tau2 m(ee3)")?;

        let chi2_prime = m(3, &ee_bar)?
            .neg()
            .add(&chi_second.times(&slots::yi(3))?)?;
        let tau1_delta2 = taus(3, &[1]).mul(&deltas(3, &[2]))?;
        let expect2 = m(3, &self.ee3)?
            .then(&tau1_delta2)?
            .add(&chi2_prime.times(&slots::yi(1))?)?;
        if expect2 != chi2 {
            return Err(violation(
                "chi2 = tau1 delta2 m(ee3) + y1 chi2'",
                chi2.sub(&expect2)?.render(),
            ));
        }
        let expect3 = m(3, &ee_second)?
            .then(&deltas(3, &[2]))?
            .neg()
            .add(&chi2_prime.times(&slots::yi(2))?)?;
        if expect3 != chi3 {
            return Err(violation(
                "chi3 = -delta2 m(ee'') + y2 chi2'",
                chi3.sub(&expect3)?.render(),
            ));
        }
        Ok(LWitness {
            ee_prime,
            ee_second,
            ee_third,
            ee_bar,
            chi1,
            chi2,
            chi3,
            chi1_prime,
            chi2_prime,
            chi_second,
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self, GError> {
        Ok(G3 {
            ee1: &self.ee1 + &o.ee1,
            ee2: &self.ee2 + &o.ee2,
            ee3: &self.ee3 + &o.ee3,
            chi: self.chi.add(&o.chi)?,
        })
    }

    pub fn render(&self) -> String {
        format!(
            "({}; {}; {}; {})",
            self.ee1,
            self.ee2,
            self.ee3,
            self.chi.render()
        )
    }
}

impl G4 {
    pub fn new(eee: [Polynomial; 4], psi: SlotMap) -> Result<Self, GError> {
        let g = G4 { eee, psi };
        g.witness()?;
        Ok(g)
    }

    pub fn zero() -> Self {
        G4 {
            eee: std::array::from_fn(|_| slots::zero()),
            psi: SlotMap::zero(4),
        }
    }

    pub fn witness(&self) -> Result<G4Witness, GError> {
        for (k, p) in self.eee.iter().enumerate() {
            in_arity(p, 3, &format!("eee{}", k + 1))?;
        }
        if self.psi.n() != 4 {
            return Err(GError::Arity("psi must map into E^4".into()));
        }
        let [e1, e2, e3, e4] = &self.eee;
        let aux1 = div_y(&(e3 - e4), 1, "y1 | eee3 - eee4")?;
        let aux2 = div_y(&(e2 - e3), 2, "y2 | eee2 - eee3")?;
        let aux3 = div_y(&(delta_on(e4, 1) - e2), 1, "y1 | delta1(eee4) - eee2")?;
        let aux4 = div_y(&(e1 - e2), 3, "y3 | eee1 - eee2")?;
        let aux5 = div_y(&(e1 - delta_on(e3, 2)), 2, "y2 | eee1 - delta2(eee3)")?;
        let aux6 = div_y(
            &(e1 - delta_on(&delta_on(e4, 2), 1)),
            1,
            "y1 | eee1 - delta1 delta2(eee4)",
        )?;
        let eee_bar = div_y(&(&aux5 - &aux2), 3, "y3 | eee(5) - eee(2)")?;
        if &aux4 - dd(e3, 2) != slots::yi(2) * &eee_bar {
            return Err(violation(
                "eee(4) - tau2(eee3) = y2 eee_bar",
                (&aux4 - dd(e3, 2) - slots::yi(2) * &eee_bar).render(),
            ));
        }
        let psi1 = self
            .psi
            .sub(&m(4, e1)?)?
            .left_divide(4, "y4 | psi - m(eee1)")?;
        let psi2 = self
            .psi
            .sub(&m(4, e2)?.then(&deltas(4, &[3]))?)?
            .left_divide(3, "y3 | psi - delta3 m(eee2)")?;
        let psi3 = self
            .psi
            .sub(&m(4, e3)?.then(&deltas(4, &[2, 3]))?)?
            .left_divide(2, "y2 | psi - delta2 delta3 m(eee3)")?;
        let psi4 = self
            .psi
            .sub(&m(4, e4)?.then(&deltas(4, &[1, 2, 3]))?)?
            .left_divide(1, "y1 | psi - delta1 delta2 delta3 m(eee4)")?;
        Ok(G4Witness {
            eee_aux: [aux1, aux2, aux3, aux4, aux5, aux6],
            eee_bar,
            psi: [psi1, psi2, psi3, psi4],
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self, GError> {
        Ok(G4 {
            eee: std::array::from_fn(|k| &self.eee[k] + &o.eee[k]),
            psi: self.psi.add(&o.psi)?,
        })
    }

    pub fn scale_poly(&self, c: &Polynomial) -> Result<Self, GError> {
        in_arity(c, 0, "scalar")?;
        Ok(G4 {
            eee: std::array::from_fn(|k| c * &self.eee[k]),
            psi: self.psi.times(c)?,
        })
    }

    pub fn render(&self) -> String {
        format!(
            "({}; {}; {}; {}; {})",
            self.eee[0],
            self.eee[1],
            self.eee[2],
            self.eee[3],
            self.psi.render()
        )
    }
}

/// Witness of any model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    G1(G1Witness),
    G2(KWitness),
    G3(LWitness),
    G4(G4Witness),
}

/// A checked element of one of the models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GElement {
    G1(G1),
    G2(G2),
    G3(G3),
    G4(G4),
}

impl GElement {
    pub fn witness(&self) -> Result<Witness, GError> {
        Ok(match self {
            GElement::G1(g) => Witness::G1(g.witness()?),
            GElement::G2(g) => Witness::G2(g.witness()?),
            GElement::G3(g) => Witness::G3(g.witness()?),
            GElement::G4(g) => Witness::G4(g.witness()?),
        })
    }
}

/// Check a raw tuple `(polys; op)` for membership in the `n`-th model.
///
/// For `n = 1` the operator part is the polynomial `phi` viewed as a map
/// `E -> E`.
pub fn check_membership(
    n: usize,
    polys: &[Polynomial],
    op: &NilHecke,
) -> Result<(GElement, Witness), GError> {
    let want = match n {
        1 => 1,
        2 => 2,
        3 => 3,
        4 => 4,
        _ => return Err(GError::Arity(format!("no model of index {n}"))),
    };
    if polys.len() != want {
        return Err(GError::Arity(format!(
            "model {n} takes {want} polynomials, got {}",
            polys.len()
        )));
    }
    if op.n() != n {
        return Err(GError::Arity(format!("operator must act on {n} strands")));
    }
    let map = SlotMap::new(op.clone());
    let elem = match n {
        1 => GElement::G1(G1 {
            theta: polys[0].clone(),
            phi: map.op().coeff(&Perm::identity(1)),
        }),
        2 => GElement::G2(G2 {
            e1: polys[0].clone(),
            e2: polys[1].clone(),
            xi: map,
        }),
        3 => GElement::G3(G3 {
            ee1: polys[0].clone(),
            ee2: polys[1].clone(),
            ee3: polys[2].clone(),
            chi: map,
        }),
        _ => GElement::G4(G4 {
            eee: std::array::from_fn(|k| polys[k].clone()),
            psi: map,
        }),
    };
    let w = elem.witness()?;
    Ok((elem, w))
}

/// A component of the square of the product bimodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Etilde2 {
    /// Multiple of `y1 y2` in arity 2.
    Top11(Polynomial),
    /// Multiple of `y1 y2 y3` in arity 3.
    Top12(Polynomial),
    Low21(G2),
    Low22(G3),
}

/// A component of the cube of the product bimodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Etilde3 {
    /// Multiple of `y1 y2 y3` in arity 3.
    Top11(Polynomial),
    /// Multiple of `y1 y2 y3 y4` in arity 4.
    Top12(Polynomial),
    Low21(G3),
    Low22(G4),
}

impl Etilde2 {
    pub fn name(&self) -> &'static str {
        match self {
            Etilde2::Top11(_) => "11",
            Etilde2::Top12(_) => "12",
            Etilde2::Low21(_) => "21",
            Etilde2::Low22(_) => "22",
        }
    }

    pub fn check(&self) -> Result<(), GError> {
        match self {
            Etilde2::Top11(p) => {
                in_arity(p, 2, "entry 11")?;
                div_y_prod(p, 2, "y1 y2 | entry 11").map(|_| ())
            }
            Etilde2::Top12(p) => {
                in_arity(p, 3, "entry 12")?;
                div_y_prod(p, 3, "y1 y2 y3 | entry 12").map(|_| ())
            }
            Etilde2::Low21(g) => g.witness().map(|_| ()),
            Etilde2::Low22(g) => g.witness().map(|_| ()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Etilde2::Top11(p) | Etilde2::Top12(p) => p.is_zero(),
            Etilde2::Low21(g) => g.e1.is_zero() && g.e2.is_zero() && g.xi.is_zero(),
            Etilde2::Low22(g) => {
                g.ee1.is_zero() && g.ee2.is_zero() && g.ee3.is_zero() && g.chi.is_zero()
            }
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, GError> {
        Ok(match (self, o) {
            (Etilde2::Top11(a), Etilde2::Top11(b)) => Etilde2::Top11(a + b),
            (Etilde2::Top12(a), Etilde2::Top12(b)) => Etilde2::Top12(a + b),
            (Etilde2::Low21(a), Etilde2::Low21(b)) => Etilde2::Low21(a.add(b)?),
            (Etilde2::Low22(a), Etilde2::Low22(b)) => Etilde2::Low22(a.add(b)?),
            _ => return Err(GError::Arity("components differ".into())),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, GError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            Etilde2::Top11(a) => Etilde2::Top11(-a),
            Etilde2::Top12(a) => Etilde2::Top12(-a),
            Etilde2::Low21(g) => Etilde2::Low21(G2 {
                e1: -&g.e1,
                e2: -&g.e2,
                xi: g.xi.neg(),
            }),
            Etilde2::Low22(g) => Etilde2::Low22(G3 {
                ee1: -&g.ee1,
                ee2: -&g.ee2,
                ee3: -&g.ee3,
                chi: g.chi.neg(),
            }),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Etilde2::Top11(p) | Etilde2::Top12(p) => p.render(),
            Etilde2::Low21(g) => g.render(),
            Etilde2::Low22(g) => g.render(),
        }
    }
}

/// `xE` on the square: the dot on the left factor.
pub fn xtilde_left(v: &Etilde2) -> Result<Etilde2, GError> {
    v.check()?;
    Ok(match v {
        Etilde2::Top11(p) => Etilde2::Top11(slots::xv(2) * p),
        Etilde2::Top12(p) => Etilde2::Top12(slots::xv(3) * p),
        Etilde2::Low21(g) => Etilde2::Low21(G2 {
            e1: slots::yv() * &g.e1,
            e2: slots::xv(1) * &g.e2,
            xi: g.xi.times(&slots::xv(2))?,
        }),
        Etilde2::Low22(g) => Etilde2::Low22(G3 {
            ee1: slots::yv() * &g.ee1,
            ee2: slots::xv(2) * &g.ee2,
            ee3: slots::xv(2) * &g.ee3,
            chi: g.chi.times(&slots::xv(3))?,
        }),
    })
}

/// `Ex` on the square: the dot on the right factor.
pub fn xtilde_right(v: &Etilde2) -> Result<Etilde2, GError> {
    v.check()?;
    Ok(match v {
        Etilde2::Top11(p) => Etilde2::Top11(slots::xv(1) * p),
        Etilde2::Top12(p) => Etilde2::Top12(slots::xv(2) * p),
        Etilde2::Low21(g) => Etilde2::Low21(G2 {
            e1: slots::xv(1) * &g.e1,
            e2: slots::yv() * &g.e2,
            xi: g.xi.times(&slots::xv(1))?,
        }),
        Etilde2::Low22(g) => Etilde2::Low22(G3 {
            ee1: slots::xv(2) * &g.ee1,
            ee2: slots::yv() * &g.ee2,
            ee3: slots::xv(1) * &g.ee3,
            chi: g.chi.times(&slots::xv(2))?,
        }),
    })
}

/// The crossing on the square.
pub fn tautilde(v: &Etilde2) -> Result<Etilde2, GError> {
    v.check()?;
    Ok(match v {
        Etilde2::Top11(p) => Etilde2::Top11(dd(p, 1)),
        Etilde2::Top12(p) => Etilde2::Top12(dd(p, 2)),
        Etilde2::Low21(g) => {
            let w = g.witness()?;
            Etilde2::Low21(G2 {
                e1: w.e_prime.clone(),
                e2: w.e_prime,
                xi: g.xi.then(&taus(2, &[1]))?,
            })
        }
        Etilde2::Low22(g) => {
            let w = g.witness()?;
            Etilde2::Low22(G3 {
                ee1: w.ee_prime.clone(),
                ee2: w.ee_prime,
                ee3: dd(&g.ee3, 1),
                chi: g.chi.then(&taus(3, &[2]))?,
            })
        }
    })
}

impl Etilde3 {
    pub fn name(&self) -> &'static str {
        match self {
            Etilde3::Top11(_) => "11",
            Etilde3::Top12(_) => "12",
            Etilde3::Low21(_) => "21",
            Etilde3::Low22(_) => "22",
        }
    }

    pub fn check(&self) -> Result<(), GError> {
        match self {
            Etilde3::Top11(p) => {
                in_arity(p, 3, "entry 11")?;
                div_y_prod(p, 3, "y1 y2 y3 | entry 11").map(|_| ())
            }
            Etilde3::Top12(p) => {
                in_arity(p, 4, "entry 12")?;
                div_y_prod(p, 4, "y1 y2 y3 y4 | entry 12").map(|_| ())
            }
            Etilde3::Low21(g) => g.witness().map(|_| ()),
            Etilde3::Low22(g) => g.witness().map(|_| ()),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Etilde3::Top11(p) | Etilde3::Top12(p) => p.render(),
            Etilde3::Low21(g) => g.render(),
            Etilde3::Low22(g) => g.render(),
        }
    }
}

/// The crossing of the two right factors of the cube.
pub fn tau1_tilde(v: &Etilde3) -> Result<Etilde3, GError> {
    v.check()?;
    Ok(match v {
        Etilde3::Top11(p) => Etilde3::Top11(dd(p, 1)),
        Etilde3::Top12(p) => Etilde3::Top12(dd(p, 2)),
        Etilde3::Low21(g) => {
            let w = g.witness()?;
            Etilde3::Low21(G3 {
                ee1: dd(&g.ee1, 1),
                ee2: -&w.ee_second,
                ee3: -&w.ee_second,
                chi: g.chi.then(&taus(3, &[1]))?,
            })
        }
        Etilde3::Low22(g) => {
            let w = g.witness()?;
            let aux2 = &w.eee_aux[1];
            Etilde3::Low22(G4 {
                eee: [dd(&g.eee[0], 2), aux2.clone(), aux2.clone(), dd(&g.eee[3], 1)],
                psi: g.psi.then(&taus(4, &[2]))?,
            })
        }
    })
}

/// The crossing of the two left factors of the cube.
pub fn tau2_tilde(v: &Etilde3) -> Result<Etilde3, GError> {
    v.check()?;
    Ok(match v {
        Etilde3::Top11(p) => Etilde3::Top11(dd(p, 2)),
        Etilde3::Top12(p) => Etilde3::Top12(dd(p, 3)),
        Etilde3::Low21(g) => match tautilde(&Etilde2::Low22(g.clone()))? {
            Etilde2::Low22(h) => Etilde3::Low21(h),
            _ => unreachable!("tautilde preserves components"),
        },
        Etilde3::Low22(g) => {
            let w = g.witness()?;
            let aux4 = &w.eee_aux[3];
            Etilde3::Low22(G4 {
                eee: [aux4.clone(), aux4.clone(), dd(&g.eee[2], 2), dd(&g.eee[3], 2)],
                psi: g.psi.then(&taus(4, &[3]))?,
            })
        }
    })
}

/// The intermediate and final forms of both sides of the braid relation,
/// written directly in terms of the witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidForms {
    /// After `tau1` then `tau2`.
    pub after_12: Etilde3,
    /// After `tau2` then `tau1`.
    pub after_21: Etilde3,
    /// Common value of both triple products.
    pub end: Etilde3,
}

/// Closed forms of the braid composites on `G3` and `G4` cube entries.
pub fn braid_closed_forms(v: &Etilde3) -> Result<Option<BraidForms>, GError> {
    v.check()?;
    Ok(match v {
        Etilde3::Low21(g) => {
            let w = g.witness()?;
            let t = |word: &[usize]| g.chi.then(&taus(3, word));
            let mid = -&w.ee_bar - dd(&w.ee_third, 1);
            let bar = -dd(&w.ee_bar, 1);
            Some(BraidForms {
                after_12: Etilde3::Low21(G3 {
                    ee1: mid.clone(),
                    ee2: mid,
                    ee3: -dd(&w.ee_second, 1),
                    chi: t(&[2, 1])?,
                }),
                after_21: Etilde3::Low21(G3 {
                    ee1: dd(&w.ee_prime, 1),
                    ee2: -&w.ee_bar,
                    ee3: -&w.ee_bar,
                    chi: t(&[1, 2])?,
                }),
                end: Etilde3::Low21(G3 {
                    ee1: bar.clone(),
                    ee2: bar.clone(),
                    ee3: bar,
                    chi: t(&[1, 2, 1])?,
                }),
            })
        }
        Etilde3::Low22(g) => {
            let w = g.witness()?;
            let t = |word: &[usize]| g.psi.then(&taus(4, word));
            let [_, aux2, _, aux4, aux5, _] = &w.eee_aux;
            let e4 = &g.eee[3];
            let mid = dd(aux5, 2) + &w.eee_bar;
            let bar = dd(&w.eee_bar, 2);
            Some(BraidForms {
                after_12: Etilde3::Low22(G4 {
                    eee: [mid.clone(), mid, dd(aux2, 2), dd(&dd(e4, 1), 2)],
                    psi: t(&[3, 2])?,
                }),
                after_21: Etilde3::Low22(G4 {
                    eee: [
                        dd(aux4, 2),
                        w.eee_bar.clone(),
                        w.eee_bar.clone(),
                        dd(&dd(e4, 2), 1),
                    ],
                    psi: t(&[2, 3])?,
                }),
                end: Etilde3::Low22(G4 {
                    eee: [bar.clone(), bar.clone(), bar, dd(&dd(&dd(e4, 1), 2), 1)],
                    psi: t(&[2, 3, 2])?,
                }),
            })
        }
        _ => None,
    })
}

/// A generator of the algebra acting on the product bimodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CGenerator {
    /// `theta(y)` acting on the right.
    RightScalar(Polynomial),
    /// `theta(y)` acting on the left.
    LeftScalar(Polynomial),
    RightG1(G1),
    LeftG1(G1),
    /// `y1 * e` acting on the right, `e` in `k[x1, y]`.
    RightY1E(Polynomial),
    /// `y1 * e` acting on the left.
    LeftY1E(Polynomial),
}

impl CGenerator {
    pub fn family(&self) -> &'static str {
        match self {
            CGenerator::RightScalar(_) => "right-scalar",
            CGenerator::LeftScalar(_) => "left-scalar",
            CGenerator::RightG1(_) => "right-g1",
            CGenerator::LeftG1(_) => "left-g1",
            CGenerator::RightY1E(_) => "right-y1e",
            CGenerator::LeftY1E(_) => "left-y1e",
        }
    }

    /// Components on which this generator acts.
    pub fn acts_on(&self, component: &str) -> bool {
        matches!(
            (self, component),
            (CGenerator::RightScalar(_), "11" | "21")
                | (CGenerator::LeftScalar(_), "11" | "12")
                | (CGenerator::RightG1(_), "12" | "22")
                | (CGenerator::LeftG1(_), "21" | "22")
                | (CGenerator::RightY1E(_), "11" | "21")
                | (CGenerator::LeftY1E(_), "21" | "22")
        )
    }
}

/// Act by a generator on a square component.
pub fn act_c_generator(gen: &CGenerator, v: &Etilde2) -> Result<Etilde2, GError> {
    v.check()?;
    let mismatch = || {
        GError::GeneratorMismatch(format!("{} on component {}", gen.family(), v.name()))
    };
    let y1e = |e: &Polynomial| -> Result<Polynomial, GError> {
        in_arity(e, 1, "generator")?;
        Ok(slots::yi(1) * e)
    };
    Ok(match (gen, v) {
        (CGenerator::RightScalar(t), Etilde2::Top11(p)) => {
            in_arity(t, 0, "scalar")?;
            Etilde2::Top11(t * p)
        }
        (CGenerator::RightScalar(t), Etilde2::Low21(g)) => {
            in_arity(t, 0, "scalar")?;
            Etilde2::Low21(G2 {
                e1: &g.e1 * t,
                e2: &g.e2 * t,
                xi: g.xi.times(t)?,
            })
        }
        (CGenerator::LeftScalar(t), Etilde2::Top11(p)) => {
            in_arity(t, 0, "scalar")?;
            Etilde2::Top11(t * p)
        }
        (CGenerator::LeftScalar(t), Etilde2::Top12(p)) => {
            in_arity(t, 0, "scalar")?;
            Etilde2::Top12(t * p)
        }
        (CGenerator::RightG1(a), Etilde2::Top12(p)) => {
            a.witness()?;
            Etilde2::Top12(&a.phi * p)
        }
        (CGenerator::RightG1(a), Etilde2::Low22(g)) => {
            a.witness()?;
            Etilde2::Low22(G3 {
                ee1: &a.phi * &g.ee1,
                ee2: &a.phi * &g.ee2,
                ee3: &a.theta * &g.ee3,
                chi: g.chi.times(&a.phi)?,
            })
        }
        (CGenerator::LeftG1(a), Etilde2::Low21(g)) => {
            a.witness()?;
            Etilde2::Low21(G2 {
                e1: &a.theta * &g.e1,
                e2: &a.theta * &g.e2,
                xi: g.xi.precompose(&a.phi)?,
            })
        }
        (CGenerator::LeftG1(a), Etilde2::Low22(g)) => {
            a.witness()?;
            Etilde2::Low22(G3 {
                ee1: &a.theta * &g.ee1,
                ee2: &a.theta * &g.ee2,
                ee3: &a.theta * &g.ee3,
                chi: g.chi.precompose(&a.phi)?,
            })
        }
        (CGenerator::RightY1E(e), Etilde2::Top11(p)) => {
            Etilde2::Top12(p.shift_slots(1) * y1e(e)?)
        }
        (CGenerator::RightY1E(e), Etilde2::Low21(g)) => {
            let f = y1e(e)?;
            Etilde2::Low22(G3 {
                ee1: g.e1.shift_slots(1) * &f,
                ee2: g.e2.shift_slots(1) * &f,
                ee3: slots::zero(),
                chi: g.xi.shifted(1)?.times(&f)?,
            })
        }
        (CGenerator::LeftY1E(e), Etilde2::Low21(g)) => {
            let f = y1e(e)?;
            Etilde2::Top11(g.xi.apply(&f)?)
        }
        (CGenerator::LeftY1E(e), Etilde2::Low22(g)) => {
            let f = y1e(e)?;
            Etilde2::Top12(g.chi.apply(&f)?)
        }
        _ => return Err(mismatch()),
    })
}

/// Feed `v` through `m` at slot `j`.
///
/// Writing `v = sum_k x_j^k v_k` with `v_k` free of `x_j`, the result is
/// `sum_k m(x^k) v_k`, where `m`'s output occupies slots `j..j+a-1` and the
/// slots of `v` above `j` move up by `a - 1`.
pub fn apply_to_slot(map: &SlotMap, v: &Polynomial, j: usize) -> Result<Polynomial, GError> {
    let a = map.n();
    let b = (1..=4).rev().find(|&i| v.uses_var(x(i))).unwrap_or(j).max(j);
    if a + b - 1 > 4 {
        return Err(GError::Arity(format!("composite arity {} exceeds 4", a + b - 1)));
    }
    let mut out = slots::zero();
    for (k, coeff) in v.coefficients_in(x(j)).into_iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let image = map.apply(&slots::xv(1).pow(k as u32))?.shift_slots(j - 1);
        let mut moved = coeff;
        for i in (j + 1..=b).rev() {
            moved = moved.substitute(x(i), &slots::xv(i + a - 1))?;
        }
        out = out + image * moved;
    }
    Ok(out)
}

/// The map `E -> E^{a+b-1}` that applies `outer` to slot 1 of `inner`'s output.
pub fn compose_insertion(outer: &SlotMap, inner: &SlotMap) -> Result<SlotMap, GError> {
    let n = outer.n() + inner.n() - 1;
    if n > 4 {
        return Err(GError::Arity(format!("composite arity {n} exceeds 4")));
    }
    let bound =
        (outer.op().max_coeff_degree() + inner.op().max_coeff_degree()) / 2 + n as u32 + 1;
    let mut evals = Vec::with_capacity(bound as usize + 1);
    for k in 0..=bound {
        let mid = inner.apply(&slots::xv(1).pow(k))?;
        evals.push((k, apply_to_slot(outer, &mid, 1)?));
    }
    let op = recover_operator(&evals, n).map_err(|e| GError::Internal(e.to_string()))?;
    Ok(SlotMap::new(op))
}

/// Seeds for the four composite constructions of `G4` elements.
pub enum G4Seed<'a> {
    /// A `G2` element and `ee` in arity 2.
    FromG2(&'a G2, &'a Polynomial),
    /// A `G1` element and `eee` in arity 3.
    FromG1(&'a G1, &'a Polynomial),
    /// A `G3` element fed into a `G2` element.
    G3ThenG2(&'a G3, &'a G2),
    /// A `G2` element fed into a `G3` element.
    G2ThenG3(&'a G2, &'a G3),
}

/// Build a `G4` element from one of the composite constructions.
pub fn gen_g4(seed: G4Seed<'_>) -> Result<G4, GError> {
    let zero = slots::zero;
    match seed {
        G4Seed::FromG2(g, ee) => {
            in_arity(ee, 2, "ee")?;
            let f = slots::y_prod(2) * ee;
            G4::new(
                [g.e1.shift_slots(2) * &f, g.e2.shift_slots(2) * &f, zero(), zero()],
                g.xi.shifted(2)?.times(&f)?,
            )
        }
        G4Seed::FromG1(g, eee) => {
            in_arity(eee, 3, "eee")?;
            g.witness()?;
            let f = slots::y_prod(3) * eee;
            G4::new(
                [&g.theta * &f, zero(), zero(), zero()],
                SlotMap::mult(4, &f)?.precompose(&g.phi)?,
            )
        }
        G4Seed::G3ThenG2(inner, outer) => G4::new(
            [
                apply_to_slot(&outer.xi, &inner.ee1, 1)?,
                apply_to_slot(&outer.xi, &inner.ee2, 1)?,
                inner.ee3.shift_slots(1) * &outer.e1,
                inner.ee3.shift_slots(1) * &outer.e2,
            ],
            compose_insertion(&outer.xi, &inner.chi)?,
        ),
        G4Seed::G2ThenG3(inner, outer) => {
            let e2 = inner.e2.shift_slots(2);
            G4::new(
                [
                    apply_to_slot(&outer.chi, &inner.e1, 1)?,
                    &e2 * &outer.ee1,
                    &e2 * &outer.ee2,
                    &e2 * &outer.ee3,
                ],
                compose_insertion(&outer.chi, &inner.xi)?,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::slots::*;

    fn sample_g2() -> G2 {
        G2::new(yi(1), zero(), SlotMap::mult(2, &yi(1)).unwrap()).unwrap()
    }

    #[test]
    fn g2_example_witnesses() {
        let w = sample_g2().witness().unwrap();
        assert_eq!(w.e_prime, one());
        assert!(w.xi1.is_zero());
        assert_eq!(w.xi2, SlotMap::mult(2, &one()).unwrap());
        assert!(w.xi_prime.is_zero());
    }

    #[test]
    fn g2_generation_examples() {
        let g = G2::generate(&zero(), &one(), &SlotMap::zero(2)).unwrap();
        assert_eq!(g, sample_g2());
        let g = G2::generate(&xv(1), &one(), &SlotMap::zero(2)).unwrap();
        assert_eq!(g.e1, xv(1) + yi(1));
        let w = g.witness().unwrap();
        assert_eq!(w.xi1.render(), "x2*tau1 + 1");
    }

    #[test]
    fn g2_violation_names_condition() {
        let err = G2::new(one(), zero(), SlotMap::mult(2, &one()).unwrap()).unwrap_err();
        match err {
            GError::Violation(v) => assert_eq!(v.condition, "y1 | e1 - e2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_elements_are_members() {
        assert!(G1::zero().witness().is_ok());
        assert!(G2::zero().witness().is_ok());
        assert!(G3::zero().witness().is_ok());
        assert!(G4::zero().witness().is_ok());
    }

    #[test]
    fn g3_generation_examples() {
        let g = G3::generate(&(xv(1) * xv(2)), &zero(), &zero(), &SlotMap::zero(3)).unwrap();
        assert!(g.witness().unwrap().ee_prime.is_zero());
        let g = G3::generate(&(xv(1) * xv(1)), &zero(), &zero(), &SlotMap::zero(3)).unwrap();
        assert_eq!(g.witness().unwrap().ee_prime, xv(1) + xv(2));
    }

    #[test]
    fn tautilde_on_sample() {
        let v = Etilde2::Low21(sample_g2());
        let t = tautilde(&v).unwrap();
        let Etilde2::Low21(g) = &t else { panic!() };
        assert_eq!(g.e1, one());
        assert_eq!(g.xi.op(), &NilHecke::delta(2, 1).unwrap());
        assert!(tautilde(&t).unwrap().is_zero());
    }

    #[test]
    fn g1_xtilde() {
        let g = G1::new(one(), one()).unwrap();
        assert_eq!(g.xtilde(), G1 { theta: yv(), phi: xv(1) });
    }

    #[test]
    fn apply_to_slot_examples() {
        let id = SlotMap::mult(1, &one()).unwrap();
        let v = xv(1) * xv(2) + yv();
        assert_eq!(apply_to_slot(&id, &v, 1).unwrap(), v);
        let me = SlotMap::mult(2, &(xv(1) + yv())).unwrap();
        assert_eq!(
            apply_to_slot(&me, &(xv(1) * xv(1)), 1).unwrap(),
            (xv(1) + yv()) * xv(2) * xv(2)
        );
    }

    #[test]
    fn compose_insertion_of_multipliers() {
        let a = SlotMap::mult(2, &xv(1)).unwrap();
        let b = SlotMap::mult(2, &(xv(1) * yv())).unwrap();
        let c = compose_insertion(&a, &b).unwrap();
        assert_eq!(c, SlotMap::mult(3, &(xv(1) * xv(2) * yv())).unwrap());
        let id = SlotMap::mult(1, &one()).unwrap();
        assert_eq!(compose_insertion(&id, &b).unwrap(), b);
    }

    #[test]
    fn right_y1e_example_is_member() {
        let out = act_c_generator(&CGenerator::RightY1E(one()), &Etilde2::Low21(sample_g2())).unwrap();
        assert!(out.check().is_ok());
        assert_eq!(out.name(), "22");
    }

    #[test]
    fn g4_from_g2_example() {
        let g = gen_g4(G4Seed::FromG2(&sample_g2(), &one())).unwrap();
        assert_eq!(g.eee[0], yi(3) * yi(1) * yi(2));
    }
}
