//! The rank-one product model over `P2 = k[y1, y2]` and its comparison with
//! the Soergel-side algebra.
//!
//! Two weight-zero algebras are built as generalized matrix algebras:
//! `T0 = (P2, P2<2>; P2, R)` with `R = P2[e]/(e^2 - w e)` and
//! `C0 = (P2, wP2; P2, Q1)`, where `w = y1 - y2`. The comparison map
//! `T0 -> C0` is `(id, t -> w t; id, gamma')`.

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{dense_to_sparse, Echelon};
use crate::matrix_alg::{
    check_left_module_map, compose, induced_map, scale, tensor_over, Elem, Entry,
    GenMatAlgebra, GenMatElement, GradedFreeComponent, Homogeneity, LeftModule, MatError,
    PieceMap, QuotientMatrix, RightModule, ENTRIES,
};
use crate::mutation::{self, Mutation};
use crate::poly::{pair, Polynomial, Scalar};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum L1Error {
    #[error("unknown component `{0}` (expected one of {ids})", ids = COMPONENT_IDS.join(", "))]
    UnknownComponent(String),
    #[error(transparent)]
    Mat(#[from] MatError),
}

pub const COMPONENT_IDS: [&str; 8] = ["P2", "omegaP2", "Q1", "Q2", "Bs1", "R", "T0", "C0"];

fn omega() -> Polynomial {
    pair::omega()
}

fn div_omega(p: &Polynomial) -> Option<Polynomial> {
    p.exact_divide(&omega()).ok()
}

fn dd(p: &Polynomial) -> Polynomial {
    p.demazure(1).expect("pair ring has one simple reflection")
}

// ---- components ----

pub fn p2() -> GradedFreeComponent {
    fn dec(e: &Elem) -> Option<Vec<Polynomial>> {
        Some(vec![e[0].clone()])
    }
    GradedFreeComponent::new("P2", 1, vec![("1", 0, vec![pair::one()])], dec)
}

pub fn omega_p2() -> GradedFreeComponent {
    fn dec(e: &Elem) -> Option<Vec<Polynomial>> {
        Some(vec![div_omega(&e[0])?])
    }
    GradedFreeComponent::new("omegaP2", 1, vec![("w", 2, vec![omega()])], dec)
}

/// `P2` with its generator placed in degree 2.
pub fn p2_shifted() -> GradedFreeComponent {
    fn dec(e: &Elem) -> Option<Vec<Polynomial>> {
        Some(vec![e[0].clone()])
    }
    GradedFreeComponent::new("P2<2>", 1, vec![("t", 2, vec![pair::one()])], dec)
}

/// Pairs `(a, b)` with `a - b` divisible by `w`.
pub fn q1() -> GradedFreeComponent {
    fn dec(e: &Elem) -> Option<Vec<Polynomial>> {
        Some(vec![e[1].clone(), div_omega(&(&e[0] - &e[1]))?])
    }
    GradedFreeComponent::new(
        "Q1",
        2,
        vec![
            ("(1,1)", 0, vec![pair::one(), pair::one()]),
            ("(w,0)", 2, vec![omega(), pair::zero()]),
        ],
        dec,
    )
}

/// Same underlying pairs as `Q1`, with generators `(1,1)` and `(0,w)`.
pub fn q2() -> GradedFreeComponent {
    fn dec(e: &Elem) -> Option<Vec<Polynomial>> {
        Some(vec![e[0].clone(), div_omega(&(&e[1] - &e[0]))?])
    }
    GradedFreeComponent::new(
        "Q2",
        2,
        vec![
            ("(1,1)", 0, vec![pair::one(), pair::one()]),
            ("(0,w)", 2, vec![pair::zero(), omega()]),
        ],
        dec,
    )
}

/// `p1 + p2 e`, stored as `(p1, p2)`.
pub fn r_comp() -> GradedFreeComponent {
    fn dec(e: &Elem) -> Option<Vec<Polynomial>> {
        Some(e.clone())
    }
    GradedFreeComponent::new(
        "R",
        2,
        vec![
            ("1", 0, vec![pair::one(), pair::zero()]),
            ("e", 2, vec![pair::zero(), pair::one()]),
        ],
        dec,
    )
}

/// `a (x) 1 + b (x) y1`, stored as `(a, b)`.
pub fn bs1() -> GradedFreeComponent {
    fn dec(e: &Elem) -> Option<Vec<Polynomial>> {
        Some(e.clone())
    }
    GradedFreeComponent::new(
        "Bs1",
        2,
        vec![
            ("1(x)1", 0, vec![pair::one(), pair::zero()]),
            ("1(x)y1", 2, vec![pair::zero(), pair::one()]),
        ],
        dec,
    )
}

// ---- ring structures ----

pub fn r_mul(a: &Elem, b: &Elem) -> Elem {
    let (p1, p2, q1, q2) = (&a[0], &a[1], &b[0], &b[1]);
    vec![p1 * q1, p1 * q2 + p2 * q1 + omega() * p2 * q2]
}

/// `1 (x) y1^2 = -y1 y2 (x) 1 + (y1 + y2) (x) y1`.
pub fn bs1_mul(a: &Elem, b: &Elem) -> Elem {
    let (a0, a1, b0, b1) = (&a[0], &a[1], &b[0], &b[1]);
    let top = a1 * b1;
    vec![
        a0 * b0 - pair::y1() * pair::y2() * &top,
        a0 * b1 + a1 * b0 + (pair::y1() + pair::y2()) * &top,
    ]
}

/// `1 (x) f` in the basis `{1 (x) 1, 1 (x) y1}`.
pub fn bs1_right(f: &Polynomial) -> Elem {
    let d = dd(f);
    vec![f - &(pair::y1() * &d), d]
}

fn q1_mul(a: &Elem, b: &Elem) -> Elem {
    vec![&a[0] * &b[0], &a[1] * &b[1]]
}

/// Right action of `Q1` on `Q2`: `(e1, e2).(t, f) = (e1 f, e2 t)`.
pub fn q2_right_act(v: &Elem, d: &Elem) -> Elem {
    if mutation::active() == Some(Mutation::FlipQ2Action) {
        return vec![&v[0] * &d[0], &v[1] * &d[1]];
    }
    vec![&v[0] * &d[1], &v[1] * &d[0]]
}

// ---- the isomorphisms ----

/// `R -> Bs1`, `e -> 1 (x) y1 - y1 (x) 1`, linear for `f -> 1 (x) f`.
pub fn gamma(r: &Elem) -> Elem {
    let base = bs1_right(&r[0]);
    let e = vec![-pair::y1(), pair::one()];
    let twist = bs1_mul(&bs1_right(&r[1]), &e);
    vec![&base[0] + &twist[0], &base[1] + &twist[1]]
}

/// `R -> Q1`, `p1 + p2 e -> (p1 + w p2, p1)`.
pub fn gamma_prime(r: &Elem) -> Elem {
    vec![&r[0] + &(omega() * &r[1]), r[0].clone()]
}

/// `Q1 -> Q2`, `(t, f) -> (f, t)`.
pub fn sigma(q: &Elem) -> Elem {
    vec![q[1].clone(), q[0].clone()]
}

/// The demazure-type endomorphism of `Q2`: `(e1, e2) -> (d, d)`, `d = (e1 - e2)/w`.
pub fn t21(v: &Elem) -> Result<Elem, L1Error> {
    let d = div_omega(&(&v[0] - &v[1])).ok_or_else(|| {
        L1Error::Mat(MatError::NotInComponent {
            component: "Q2",
            element: crate::matrix_alg::render_elem(v),
        })
    })?;
    Ok(vec![d.clone(), d])
}

/// `p1 + p2 e -> -p2`.
pub fn tau_r(r: &Elem) -> Elem {
    vec![-r[1].clone(), pair::zero()]
}

/// Divided difference on the left tensor factor.
pub fn tau_bs1(b: &Elem) -> Elem {
    vec![dd(&b[0]), dd(&b[1])]
}

// ---- the weight-zero algebras ----

fn t0_product(a: Entry, x: &Elem, b: Entry, y: &Elem) -> Elem {
    match (a, b) {
        ((1, 1), (1, 1)) | ((1, 1), (1, 2)) | ((2, 1), (1, 1)) => vec![&x[0] * &y[0]],
        ((1, 2), (2, 2)) => vec![&x[0] * &y[0]],
        ((2, 2), (2, 1)) => vec![&x[0] * &y[0]],
        ((1, 2), (2, 1)) => vec![omega() * &x[0] * &y[0]],
        ((2, 1), (1, 2)) => {
            let p = &x[0] * &y[0];
            vec![omega() * &p, -p]
        }
        ((2, 2), (2, 2)) => r_mul(x, y),
        _ => unreachable!("entries {a:?} and {b:?} do not chain"),
    }
}

fn c0_product(a: Entry, x: &Elem, b: Entry, y: &Elem) -> Elem {
    match (a, b) {
        ((1, 1), (1, 1)) | ((1, 1), (1, 2)) | ((2, 1), (1, 1)) => vec![&x[0] * &y[0]],
        ((1, 2), (2, 2)) => vec![&x[0] * &y[1]],
        ((2, 2), (2, 1)) => vec![&x[1] * &y[0]],
        ((1, 2), (2, 1)) => vec![&x[0] * &y[0]],
        ((2, 1), (1, 2)) => vec![pair::zero(), &x[0] * &y[0]],
        ((2, 2), (2, 2)) => q1_mul(x, y),
        _ => unreachable!("entries {a:?} and {b:?} do not chain"),
    }
}

pub fn build_t0() -> GenMatAlgebra {
    GenMatAlgebra::new(
        "T0",
        [p2(), p2_shifted(), p2(), r_comp()],
        [vec![pair::one()], vec![pair::one(), pair::zero()]],
        t0_product,
    )
}

pub fn build_c0() -> GenMatAlgebra {
    GenMatAlgebra::new(
        "C0",
        [p2(), omega_p2(), p2(), q1()],
        [vec![pair::one()], vec![pair::one(), pair::one()]],
        c0_product,
    )
}

/// `T0 -> C0` entrywise.
pub fn phi_entry(e: Entry, x: &Elem) -> Elem {
    match e {
        (1, 2) => vec![omega() * &x[0]],
        (2, 2) => gamma_prime(x),
        _ => x.clone(),
    }
}

pub fn phi(x: &GenMatElement) -> GenMatElement {
    GenMatElement {
        algebra: "C0",
        entries: std::array::from_fn(|k| phi_entry(ENTRIES[k], &x.entries[k])),
    }
}

/// Action of `x` on the weight arrow `-2 -> 0`: `diag(y1, y1 - e)` in `T0`.
pub fn x_lower_t(t0: &GenMatAlgebra) -> GenMatElement {
    t0.diag(vec![pair::y1()], vec![pair::y1(), -pair::one()])
}

/// Action of `x` on the weight arrow `0 -> 2`: `diag(y2, y2 + e)` in `T0`.
pub fn x_upper_t(t0: &GenMatAlgebra) -> GenMatElement {
    t0.diag(vec![pair::y2()], vec![pair::y2(), pair::one()])
}

/// `diag(y1, (y2, y1))` in `C0`.
pub fn x_lower_c(c0: &GenMatAlgebra) -> GenMatElement {
    c0.diag(vec![pair::y1()], vec![pair::y2(), pair::y1()])
}

/// `diag(y2, (y1, y2))` in `C0`.
pub fn x_upper_c(c0: &GenMatAlgebra) -> GenMatElement {
    c0.diag(vec![pair::y2()], vec![pair::y1(), pair::y2()])
}

// ---- modules ----

fn t0_col2_act(e: Entry, r: &Elem, m: &Elem) -> Elem {
    t0_product(e, r, (e.1, 2), m)
}

fn t0_row2_act(n: &Elem, e: Entry, r: &Elem) -> Elem {
    t0_product((2, e.0), n, e, r)
}

fn c0_col_act(e: Entry, r: &Elem, m: &Elem) -> Elem {
    c0_product(e, r, (e.1, 2), m)
}

fn c0_row1_act(n: &Elem, e: Entry, r: &Elem) -> Elem {
    c0_product((1, e.0), n, e, r)
}

fn c0_row2_act(n: &Elem, e: Entry, r: &Elem) -> Elem {
    c0_product((2, e.0), n, e, r)
}

fn c0_col1_act(e: Entry, r: &Elem, m: &Elem) -> Elem {
    c0_product(e, r, (e.1, 1), m)
}

/// Right `C0` action on the row `(P2, Q2)`.
fn e_upper_act(n: &Elem, e: Entry, r: &Elem) -> Elem {
    match e {
        (1, 1) => vec![&n[0] * &r[0]],
        (1, 2) => vec![&n[0] * &r[0], pair::zero()],
        (2, 1) => vec![&n[0] * &r[0]],
        (2, 2) => q2_right_act(n, r),
        _ => unreachable!(),
    }
}

/// The column `(wP2; Q1)` over `C0`: weight `-2 -> 0`.
pub fn e_lower_c() -> LeftModule {
    LeftModule {
        name: "E(0,-2)",
        comps: [omega_p2(), q1()],
        act: c0_col_act,
    }
}

/// The row `(P2, Q2)` over `C0`: weight `0 -> 2`.
pub fn e_upper_c() -> RightModule {
    RightModule {
        name: "E(2,0)",
        comps: [p2(), q2()],
        act: e_upper_act,
    }
}

pub fn e_lower_t() -> LeftModule {
    LeftModule {
        name: "T0 column 2",
        comps: [p2_shifted(), r_comp()],
        act: t0_col2_act,
    }
}

pub fn e_upper_t() -> RightModule {
    RightModule {
        name: "T0 row 2",
        comps: [p2(), r_comp()],
        act: t0_row2_act,
    }
}

/// Row `i` of `C0` as a right module over it.
pub fn c0_row(i: usize) -> RightModule {
    match i {
        1 => RightModule {
            name: "C0 row 1",
            comps: [p2(), omega_p2()],
            act: c0_row1_act,
        },
        _ => RightModule {
            name: "C0 row 2",
            comps: [p2(), q1()],
            act: c0_row2_act,
        },
    }
}

/// Column `j` of `C0` as a left module over it.
pub fn c0_col(j: usize) -> LeftModule {
    match j {
        1 => LeftModule {
            name: "C0 column 1",
            comps: [p2(), p2()],
            act: c0_col1_act,
        },
        _ => e_lower_c(),
    }
}

// ---- graded dimensions ----

pub fn hilbert(id: &str, bound: u32) -> Result<Vec<(u32, usize)>, L1Error> {
    let comps: Vec<GradedFreeComponent> = match id {
        "P2" => vec![p2()],
        "omegaP2" => vec![omega_p2()],
        "Q1" => vec![q1()],
        "Q2" => vec![q2()],
        "Bs1" => vec![bs1()],
        "R" => vec![r_comp()],
        "T0" => build_t0().comps.to_vec(),
        "C0" => build_c0().comps.to_vec(),
        other => return Err(L1Error::UnknownComponent(other.to_string())),
    };
    Ok((0..=bound)
        .step_by(2)
        .map(|d| (d, comps.iter().map(|c| c.dim(d)).sum()))
        .collect())
}

// ---- reports ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub degree_bound: u32,
    pub status: Status,
    pub details: Vec<String>,
    #[serde(skip)]
    pub cases: usize,
    #[serde(skip)]
    pub failed: usize,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Collects the outcome of one named check.
struct Check {
    name: &'static str,
    bound: u32,
    cases: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

const MAX_REPORTED_FAILURES: usize = 5;

impl Check {
    fn new(name: &'static str, bound: u32) -> Self {
        Check {
            name,
            bound,
            cases: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < MAX_REPORTED_FAILURES {
            self.failures.push(detail());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    fn fail(&mut self, detail: String) {
        self.expect(false, || detail);
    }

    fn finish(self) -> CheckReport {
        let failed = self.failures.len();
        let mut details = vec![format!("{} cases, {} failed", self.cases, failed)];
        details.extend(self.notes);
        details.extend(self.failures.into_iter().filter(|f| !f.is_empty()));
        CheckReport {
            check: self.name.to_string(),
            degree_bound: self.bound,
            status: if failed == 0 { Status::Pass } else { Status::Fail },
            details,
            cases: self.cases,
            failed,
        }
    }
}

fn show(e: &Elem) -> String {
    crate::matrix_alg::render_elem(e)
}

fn even(bound: u32) -> impl Iterator<Item = u32> + Clone {
    (0..=bound).step_by(2)
}

/// Whether a linear map between graded pieces of equal dimension is bijective.
fn bijective_on(
    check: &mut Check,
    src: &GradedFreeComponent,
    dst: &GradedFreeComponent,
    map: impl Fn(&Elem) -> Elem,
    d: u32,
) {
    let mut ech = Echelon::new();
    for b in src.basis(d) {
        match dst.coords(&map(&b), d) {
            Ok(c) => {
                ech.insert(dense_to_sparse(&c));
            }
            Err(e) => {
                check.fail(format!("degree {d}: image of {} not in {}: {e}", show(&b), dst.name));
                return;
            }
        }
    }
    let (n, m, r) = (src.dim(d), dst.dim(d), ech.rank());
    check.expect(n == m && r == n, || {
        format!("degree {d}: {} -> {} has dims {n} -> {m}, rank {r}", src.name, dst.name)
    });
}

/// Check (i): `gamma`, `gamma'` and `sigma` are graded bijections compatible
/// with the algebra and module structures.
fn check_isomorphisms(bound: u32) -> CheckReport {
    let mut c = Check::new("canonical-isomorphisms", bound);
    let (r, b, q1c, q2c) = (r_comp(), bs1(), q1(), q2());
    for d in even(bound) {
        bijective_on(&mut c, &r, &b, gamma, d);
        bijective_on(&mut c, &r, &q1c, gamma_prime, d);
        bijective_on(&mut c, &q1c, &q2c, sigma, d);
    }
    let e = vec![pair::zero(), pair::one()];
    let ge = gamma(&e);
    let w_ge = bs1_mul(&bs1_right(&omega()), &ge);
    c.expect(bs1_mul(&ge, &ge) == w_ge, || {
        format!("gamma(e)^2 = {} but w gamma(e) = {}", show(&bs1_mul(&ge, &ge)), show(&w_ge))
    });
    let gpe = gamma_prime(&e);
    c.expect(q1_mul(&gpe, &gpe) == scale(&omega(), &gpe), || {
        format!("gamma'(e)^2 = {}", show(&q1_mul(&gpe, &gpe)))
    });
    for da in even(bound) {
        for db in even(bound - da) {
            for x in r.basis(da) {
                for y in r.basis(db) {
                    let xy = r_mul(&x, &y);
                    let lhs = gamma(&xy);
                    let rhs = bs1_mul(&gamma(&x), &gamma(&y));
                    c.expect(lhs == rhs, || {
                        format!(
                            "degree {}: gamma({} * {}) = {} but product of images is {}",
                            da + db,
                            show(&x),
                            show(&y),
                            show(&lhs),
                            show(&rhs)
                        )
                    });
                    let lhs = gamma_prime(&xy);
                    let rhs = q1_mul(&gamma_prime(&x), &gamma_prime(&y));
                    c.expect(lhs == rhs, || {
                        format!(
                            "degree {}: gamma'({} * {}) = {} but product of images is {}",
                            da + db,
                            show(&x),
                            show(&y),
                            show(&lhs),
                            show(&rhs)
                        )
                    });
                }
            }
            // sigma carries right multiplication on Q1 to the right action on Q2.
            for z in q1c.basis(da) {
                for w in q1c.basis(db) {
                    let lhs = sigma(&q1_mul(&z, &w));
                    let rhs = q2_right_act(&sigma(&z), &w);
                    c.expect(lhs == rhs, || {
                        format!(
                            "degree {}: sigma({} * {}) = {} but sigma({}).{} = {}",
                            da + db,
                            show(&z),
                            show(&w),
                            show(&lhs),
                            show(&z),
                            show(&w),
                            show(&rhs)
                        )
                    });
                }
            }
        }
    }
    let sge = sigma(&gpe);
    c.expect(sge == vec![pair::zero(), omega()], || {
        format!("sigma(gamma'(e)) = {}", show(&sge))
    });
    c.finish()
}

/// Check (ii): `Phi` is unital, multiplicative on basis pairs and bijective
/// in every degree.
fn check_phi(t0: &GenMatAlgebra, c0: &GenMatAlgebra, bound: u32) -> CheckReport {
    let mut c = Check::new("phi-isomorphism", bound);
    c.expect(phi(&t0.one()) == c0.one(), || "Phi(1) != 1".to_string());
    for d in even(bound) {
        for e in ENTRIES {
            bijective_on(&mut c, t0.comp(e), c0.comp(e), |x| phi_entry(e, x), d);
        }
    }
    for da in even(bound) {
        for db in even(bound - da) {
            for x in t0.basis(da) {
                for y in t0.basis(db) {
                    let (Ok(xy), Ok(pxy)) = (t0.mat_mul(&x, &y), c0.mat_mul(&phi(&x), &phi(&y)))
                    else {
                        c.fail(format!("degree {}: product outside the algebra", da + db));
                        continue;
                    };
                    let lhs = phi(&xy);
                    c.expect(lhs == pxy, || {
                        format!(
                            "degree {}: Phi({} * {}) = {} but Phi * Phi = {}",
                            da + db,
                            x.render(),
                            y.render(),
                            lhs.render(),
                            pxy.render()
                        )
                    });
                }
            }
        }
    }
    c.finish()
}

/// Check (iii): `Phi` sends the `x` elements to the `x~` elements and
/// intertwines their actions on both weight arrows.
fn check_x_intertwining(t0: &GenMatAlgebra, c0: &GenMatAlgebra, bound: u32) -> CheckReport {
    let mut c = Check::new("x-intertwining", bound);
    for (name, xt, xc) in [
        ("lower", x_lower_t(t0), x_lower_c(c0)),
        ("upper", x_upper_t(t0), x_upper_c(c0)),
    ] {
        c.expect(phi(&xt) == xc, || {
            format!("{name}: Phi({}) = {} but expected {}", xt.render(), phi(&xt).render(), xc.render())
        });
    }
    let (lt, lc) = (e_lower_t(), e_lower_c());
    let (ut, uc) = (e_upper_t(), e_upper_c());
    let (xlt, xlc) = (x_lower_t(t0), x_lower_c(c0));
    let (xut, xuc) = (x_upper_t(t0), x_upper_c(c0));
    for d in even(bound.saturating_sub(2)) {
        for i in 1..=2 {
            for m in lt.comps[i - 1].basis(d) {
                let lhs = phi_entry((i, 2), &(lt.act)((i, i), xlt.entry((i, i)), &m));
                let rhs = (lc.act)((i, i), xlc.entry((i, i)), &phi_entry((i, 2), &m));
                c.expect(lhs == rhs, || {
                    format!("lower arrow, degree {d}: on {}: {} vs {}", show(&m), show(&lhs), show(&rhs))
                });
            }
            for n in ut.comps[i - 1].basis(d) {
                let to_c = |v: &Elem| if i == 1 { v.clone() } else { sigma(&gamma_prime(v)) };
                let lhs = to_c(&(ut.act)(&n, (i, i), xut.entry((i, i))));
                let rhs = (uc.act)(&to_c(&n), (i, i), xuc.entry((i, i)));
                c.expect(lhs == rhs, || {
                    format!("upper arrow, degree {d}: on {}: {} vs {}", show(&n), show(&lhs), show(&rhs))
                });
            }
        }
    }
    c.finish()
}

/// Check (iv): `sigma gamma'` carries `p1 + p2 e -> -p2` to `t21` and the
/// two `x` actions on the square to the corresponding actions on `Q2`;
/// through `gamma` the same form matches the divided difference on `Bs1`.
fn check_tau_intertwining(t0: &GenMatAlgebra, c0: &GenMatAlgebra, bound: u32) -> CheckReport {
    let mut c = Check::new("tau-intertwining", bound);
    let to_q2 = |r: &Elem| sigma(&gamma_prime(r));
    let (xl_r, xu_r) = (x_lower_t(t0).entry((2, 2)).clone(), x_upper_t(t0).entry((2, 2)).clone());
    let (xl_q, xu_q) = (x_lower_c(c0).entry((2, 2)).clone(), x_upper_c(c0).entry((2, 2)).clone());
    for d in even(bound) {
        for r in r_comp().basis(d) {
            match t21(&to_q2(&r)) {
                Ok(lhs) => {
                    let rhs = to_q2(&tau_r(&r));
                    c.expect(lhs == rhs, || {
                        format!("degree {d}: t21 on image of {}: {} vs {}", show(&r), show(&lhs), show(&rhs))
                    });
                }
                Err(e) => c.fail(format!("degree {d}: {e}")),
            }
            let lhs = tau_bs1(&gamma(&r));
            let rhs = gamma(&tau_r(&r));
            c.expect(lhs == rhs, || {
                format!("degree {d}: divided difference on gamma({}): {} vs {}", show(&r), show(&lhs), show(&rhs))
            });
            if d + 2 <= bound {
                for (name, xr, xq) in [("xE", &xu_r, &xu_q), ("Ex", &xl_r, &xl_q)] {
                    let lhs = to_q2(&r_mul(&r, xr));
                    let rhs = q2_right_act(&to_q2(&r), xq);
                    c.expect(lhs == rhs, || {
                        format!("degree {d}: {name} on image of {}: {} vs {}", show(&r), show(&lhs), show(&rhs))
                    });
                }
            }
        }
    }
    c.finish()
}

/// `(Ex o t21 - t21 o xE)(v)` for a choice of the two `x` actions on `Q2`.
fn hecke_defect(v: &Elem, x_e: &Elem, e_x: &Elem) -> Result<Elem, L1Error> {
    let a = q2_right_act(&t21(v)?, e_x);
    let b = t21(&q2_right_act(v, x_e))?;
    Ok(vec![&a[0] - &b[0], &a[1] - &b[1]])
}

/// Check (v): `Ex o t21 - t21 o xE = Id` on `Q2`, and `t21^2 = 0`.
/// The opposite assignment of the two actions is evaluated as a witness
/// and is expected to give `-Id`.
fn check_hecke_q2(c0: &GenMatAlgebra, bound: u32) -> CheckReport {
    let mut c = Check::new("hecke-relation-q2", bound);
    let xl = x_lower_c(c0).entry((2, 2)).clone();
    let xu = x_upper_c(c0).entry((2, 2)).clone();
    let mut witness_minus_id = true;
    for d in even(bound.saturating_sub(2)) {
        for v in q2().basis(d) {
            match hecke_defect(&v, &xu, &xl) {
                Ok(out) => c.expect(out == v, || {
                    format!("degree {d}: on {} the relation gives {}", show(&v), show(&out))
                }),
                Err(e) => c.fail(format!("degree {d}: {e}")),
            }
            if let Ok(out) = hecke_defect(&v, &xl, &xu) {
                let neg: Elem = v.iter().map(|p| -p.clone()).collect();
                witness_minus_id &= out == neg;
            } else {
                witness_minus_id = false;
            }
            match t21(&v).and_then(|w| t21(&w)) {
                Ok(w) => c.expect(GradedFreeComponent::is_zero(&w), || {
                    format!("degree {d}: t21^2 of {} is {}", show(&v), show(&w))
                }),
                Err(e) => c.fail(format!("degree {d}: {e}")),
            }
        }
    }
    c.notes.push(format!(
        "opposite assignment of the x actions yields {}",
        if witness_minus_id { "-Id" } else { "neither Id nor -Id" }
    ));
    // The same relation in R form: multiplication by y1 - e and y2 + e.
    let (xl_r, xu_r) = (
        vec![pair::y1(), -pair::one()],
        vec![pair::y2(), pair::one()],
    );
    for d in even(bound.saturating_sub(2)) {
        for r in r_comp().basis(d) {
            let a = r_mul(&tau_r(&r), &xl_r);
            let b = tau_r(&r_mul(&r, &xu_r));
            let out = vec![&a[0] - &b[0], &a[1] - &b[1]];
            c.expect(out == r, || format!("degree {d}: R form on {} gives {}", show(&r), show(&out)));
        }
    }
    c.finish()
}

/// Associativity of both algebras and the module axioms for the square
/// factors, followed by the tensor dimension cross-checks.
fn check_structures(t0: &GenMatAlgebra, c0: &GenMatAlgebra, bound: u32) -> CheckReport {
    let mut c = Check::new("structures-and-tensor-dimensions", bound);
    for alg in [t0, c0] {
        match alg.check_associativity(bound) {
            Ok(n) => {
                c.cases += 1;
                c.notes.push(format!("{} associative on {n} basis triples", alg.name));
            }
            Err(e) => c.fail(format!("{} not associative: {e}", alg.name)),
        }
    }
    for (alg, left) in [(t0, e_lower_t()), (c0, e_lower_c())] {
        c.expect(left.check_compatibility(alg, bound).is_ok(), || {
            format!("{}: {}", left.name, left.check_compatibility(alg, bound).unwrap_err())
        });
    }
    for (alg, right) in [(t0, e_upper_t()), (c0, e_upper_c())] {
        c.expect(right.check_compatibility(alg, bound).is_ok(), || {
            format!("{}: {}", right.name, right.check_compatibility(alg, bound).unwrap_err())
        });
    }
    for (alg, right, left, target) in [
        (c0, e_upper_c(), e_lower_c(), "Q2"),
        (t0, e_upper_t(), e_lower_t(), "R"),
    ] {
        let expected = hilbert(target, bound).expect("known component");
        match tensor_over(alg, &right, &left, bound) {
            Ok(t) => {
                let got = t.graded_dims();
                c.expect(got == expected, || {
                    format!("{} (x) {}: dims {got:?}, expected {target} {expected:?}", right.name, left.name)
                });
                c.notes.push(format!("{} (x) {} dims {got:?}", right.name, left.name));
            }
            Err(e) => c.fail(e.to_string()),
        }
    }
    c.finish()
}

/// The five comparison checks plus the structural ones, up to graded degree `bound`.
pub fn verify_comparison(bound: u32) -> Vec<CheckReport> {
    let bound = bound - bound % 2;
    let (t0, c0) = (build_t0(), build_c0());
    vec![
        check_structures(&t0, &c0, bound),
        check_isomorphisms(bound),
        check_phi(&t0, &c0, bound),
        check_x_intertwining(&t0, &c0, bound),
        check_tau_intertwining(&t0, &c0, bound),
        check_hecke_q2(&c0, bound),
    ]
}

// ---- weights ----

/// The algebra as a product of weight blocks `-2, 0, 2`.
pub struct WeightedAlgebra {
    pub blocks: Vec<(i8, GenMatAlgebra)>,
}

fn upper_product(a: Entry, x: &Elem, b: Entry, y: &Elem) -> Elem {
    match (a, b) {
        ((2, 2), (2, 2)) => vec![&x[0] * &y[0]],
        _ if (a.0, b.1) == (2, 2) => vec![pair::zero()],
        _ => Vec::new(),
    }
}

fn lower_product(a: Entry, x: &Elem, b: Entry, y: &Elem) -> Elem {
    match (a, b) {
        ((1, 1), (1, 1)) => vec![&x[0] * &y[0]],
        _ if (a.0, b.1) == (1, 1) => vec![pair::zero()],
        _ => Vec::new(),
    }
}

pub fn build_c_weighted() -> WeightedAlgebra {
    let z = GradedFreeComponent::zero_module;
    WeightedAlgebra {
        blocks: vec![
            (
                -2,
                GenMatAlgebra::new("C-2", [p2(), z(), z(), z()], [vec![pair::one()], Vec::new()], lower_product),
            ),
            (0, build_c0()),
            (
                2,
                GenMatAlgebra::new("C+2", [z(), z(), z(), p2()], [Vec::new(), vec![pair::one()]], upper_product),
            ),
        ],
    }
}

/// An element of the weighted algebra: one matrix per weight.
pub type WeightedElement = Vec<(i8, GenMatElement)>;

impl WeightedAlgebra {
    pub fn block(&self, w: i8) -> &GenMatAlgebra {
        &self.blocks.iter().find(|b| b.0 == w).expect("weight block").1
    }

    pub fn idempotent(&self, w: i8) -> WeightedElement {
        self.blocks
            .iter()
            .map(|(v, a)| (*v, if *v == w { a.one() } else { a.zero() }))
            .collect()
    }

    pub fn one(&self) -> WeightedElement {
        self.blocks.iter().map(|(v, a)| (*v, a.one())).collect()
    }

    pub fn mul(&self, x: &WeightedElement, y: &WeightedElement) -> Result<WeightedElement, MatError> {
        x.iter()
            .zip(y)
            .zip(&self.blocks)
            .map(|(((w, a), (_, b)), (_, alg))| Ok((*w, alg.mat_mul(a, b)?)))
            .collect()
    }

    pub fn add(&self, x: &WeightedElement, y: &WeightedElement) -> WeightedElement {
        x.iter()
            .zip(y)
            .zip(&self.blocks)
            .map(|(((w, a), (_, b)), (_, alg))| (*w, alg.add(a, b)))
            .collect()
    }
}

/// A homogeneous-in-weight element of `E~`: the block `(target, source)`
/// and its two components.
#[derive(Clone, Debug, PartialEq)]
pub struct EBlockElement {
    pub target: i8,
    pub source: i8,
    pub comps: [Elem; 2],
}

/// The weight blocks of `E~` with their component pairs.
pub fn e_blocks() -> Vec<(i8, i8, [GradedFreeComponent; 2])> {
    vec![(2, 0, [p2(), q2()]), (0, -2, [omega_p2(), q1()])]
}

/// `r . v . s` for weighted algebra elements acting on a block of `E~`.
fn e_sandwich(
    r: &WeightedElement,
    v: &EBlockElement,
    s: &WeightedElement,
) -> EBlockElement {
    let left = &r.iter().find(|b| b.0 == v.target).expect("weight").1;
    let right = &s.iter().find(|b| b.0 == v.source).expect("weight").1;
    let comps = match (v.target, v.source) {
        (2, 0) => {
            // Left weight-2 block acts through its (2,2) entry by scalars.
            let p = &left.entry((2, 2))[0];
            let lv = [scale(p, &v.comps[0]), scale(p, &v.comps[1])];
            let m = e_upper_c();
            let mut out = [vec![pair::zero()], vec![pair::zero(), pair::zero()]];
            for (i, j) in ENTRIES {
                let x = (m.act)(&lv[i - 1], (i, j), right.entry((i, j)));
                out[j - 1] = crate::matrix_alg::add(&out[j - 1], &x);
            }
            out
        }
        _ => {
            let m = e_lower_c();
            let mut out = [vec![pair::zero()], vec![pair::zero(), pair::zero()]];
            for (i, j) in ENTRIES {
                let x = (m.act)((i, j), left.entry((i, j)), &v.comps[j - 1]);
                out[i - 1] = crate::matrix_alg::add(&out[i - 1], &x);
            }
            // Right weight -2 block acts through its (1,1) entry by scalars.
            let p = &right.entry((1, 1))[0];
            [scale(p, &out[0]), scale(p, &out[1])]
        }
    };
    EBlockElement {
        target: v.target,
        source: v.source,
        comps,
    }
}

fn homogeneity_of(comps: &[GradedFreeComponent; 2], v: &[Elem; 2]) -> Result<Homogeneity, MatError> {
    let a = comps[0].homogeneity(&v[0])?;
    let b = comps[1].homogeneity(&v[1])?;
    Ok(match (a, b) {
        (Homogeneity::Zero, h) | (h, Homogeneity::Zero) => h,
        (Homogeneity::Degree(x), Homogeneity::Degree(y)) if x == y => a,
        _ => Homogeneity::Mixed,
    })
}

/// Weight idempotents, weight blocks of `E~`, degrees of `x~` and `t21`,
/// and vanishing of the cube, up to graded degree `bound`.
pub fn verify_weights_grading_nilpotence(bound: u32) -> Vec<CheckReport> {
    let bound = bound - bound % 2;
    let c = build_c_weighted();
    let weights = [-2i8, 0, 2];
    let mut idem = Check::new("weight-idempotents", bound);
    let mut total = c.idempotent(-2);
    for w in weights {
        for v in weights {
            let fw = c.idempotent(w);
            let fv = c.idempotent(v);
            match c.mul(&fw, &fv) {
                Ok(p) => {
                    let expected = if w == v { fw.clone() } else { zero_of(&c) };
                    idem.expect(p == expected, || format!("f{w} * f{v} is not {}", if w == v { "f" } else { "0" }));
                }
                Err(e) => idem.fail(e.to_string()),
            }
        }
        if w != -2 {
            total = c.add(&total, &c.idempotent(w));
        }
    }
    idem.expect(total == c.one(), || "idempotents do not sum to 1".to_string());

    let mut blocks = Check::new("weight-blocks", bound);
    for (t, s, comps) in e_blocks() {
        blocks.expect(t == s + 2, || format!("block ({t},{s}) does not raise weight by 2"));
        for d in even(bound) {
            for k in 0..2 {
                for b in comps[k].basis(d) {
                    let mut v = EBlockElement {
                        target: t,
                        source: s,
                        comps: [comps[0].zero(), comps[1].zero()],
                    };
                    v.comps[k] = b;
                    for j in weights {
                        for i in weights {
                            let out = e_sandwich(&c.idempotent(j), &v, &c.idempotent(i));
                            let expect_v = j == t && i == s;
                            let ok = if expect_v {
                                out == v
                            } else {
                                out.comps.iter().all(GradedFreeComponent::is_zero)
                            };
                            blocks.expect(ok, || {
                                format!("degree {d}: f{j} E f{i} on block ({t},{s}) element {:?}", v.comps.clone().map(|e| show(&e)))
                            });
                        }
                    }
                }
            }
        }
    }

    let mut grading = Check::new("grading", bound);
    let c0 = c.block(0);
    let (xl, xu) = (x_lower_c(c0), x_upper_c(c0));
    let (lower, upper) = (e_lower_c(), e_upper_c());
    for d in even(bound.saturating_sub(2)) {
        for k in 0..2 {
            for b in lower.comps[k].basis(d) {
                let mut v = [lower.comps[0].zero(), lower.comps[1].zero()];
                v[k] = b;
                let mut out = [lower.comps[0].zero(), lower.comps[1].zero()];
                for i in 1..=2 {
                    out[i - 1] = (lower.act)((i, i), xl.entry((i, i)), &v[i - 1]);
                }
                let h = homogeneity_of(&lower.comps, &out);
                grading.expect(matches!(h, Ok(Homogeneity::Degree(e)) if e == d + 2) || matches!(h, Ok(Homogeneity::Zero)), || {
                    format!("x~ on lower block, degree {d}: {:?}", h)
                });
            }
            for b in upper.comps[k].basis(d) {
                let mut v = [upper.comps[0].zero(), upper.comps[1].zero()];
                v[k] = b;
                let mut out = [upper.comps[0].zero(), upper.comps[1].zero()];
                for i in 1..=2 {
                    out[i - 1] = (upper.act)(&v[i - 1], (i, i), xu.entry((i, i)));
                }
                let h = homogeneity_of(&upper.comps, &out);
                grading.expect(matches!(h, Ok(Homogeneity::Degree(e)) if e == d + 2) || matches!(h, Ok(Homogeneity::Zero)), || {
                    format!("x~ on upper block, degree {d}: {:?}", h)
                });
            }
        }
    }
    let q2c = q2();
    for d in even(bound) {
        for b in q2c.basis(d) {
            let h = t21(&b).map_err(|e| e.to_string()).and_then(|o| q2c.homogeneity(&o).map_err(|e| e.to_string()));
            let ok = match h {
                Ok(Homogeneity::Zero) => true,
                Ok(Homogeneity::Degree(e)) => e + 2 == d,
                _ => false,
            };
            grading.expect(ok, || format!("t21 on degree {d} element {}: {:?}", show(&b), h));
        }
    }

    let mut nil = Check::new("nilpotence", bound);
    let single = e_blocks();
    let mut square = Vec::new();
    let mut cube = Vec::new();
    for a in &single {
        for b in single.iter().filter(|b| b.1 == a.0) {
            square.push((b.0, a.1));
            for c3 in single.iter().filter(|c3| c3.1 == b.0) {
                cube.push([c3, b, a]);
            }
        }
    }
    nil.expect(square == vec![(2, -2)], || format!("square has blocks {square:?}"));
    // The cube is a quotient of the sum of triple tensor products of
    // composable blocks, so that sum bounds its dimension.
    let block_dim = |blk: &(i8, i8, [GradedFreeComponent; 2]), d: u32| -> usize {
        blk.2.iter().map(|c| c.dim(d)).sum()
    };
    let dims: Vec<(u32, usize)> = even(bound)
        .map(|d| {
            let mut total = 0;
            for chain in &cube {
                for d1 in even(d) {
                    for d2 in even(d - d1) {
                        total += block_dim(chain[0], d1)
                            * block_dim(chain[1], d2)
                            * block_dim(chain[2], d - d1 - d2);
                    }
                }
            }
            (d, total)
        })
        .collect();
    nil.expect(dims.iter().all(|x| x.1 == 0), || format!("cube dims bounded by {dims:?}"));
    nil.notes.push(format!("cube graded dims {dims:?}"));

    vec![idem.finish(), blocks.finish(), grading.finish(), nil.finish()]
}

fn zero_of(c: &WeightedAlgebra) -> WeightedElement {
    c.blocks.iter().map(|(w, a)| (*w, a.zero())).collect()
}

fn identity_matrix(n: usize) -> QuotientMatrix {
    (0..n)
        .map(|r| (0..n).map(|c| if r == c { Scalar::one() } else { Scalar::zero() }).collect())
        .collect()
}

/// Tensor products over `C0`: regular rows act as units, the zero module
/// gives zero, induced maps respect identities, central elements and
/// composition, and a non-module map is rejected.
pub fn verify_tensor_products(bound: u32) -> CheckReport {
    let bound = bound - bound % 2;
    let mut c = Check::new("tensor-products", bound);
    let c0 = build_c0();
    for j in 1..=2 {
        let n = c0_col(j);
        for i in 1..=2 {
            let row = c0_row(i);
            match tensor_over(&c0, &row, &n, bound) {
                Ok(t) => {
                    let expected: Vec<(u32, usize)> =
                        even(bound).map(|d| (d, n.comps[i - 1].dim(d))).collect();
                    c.expect(t.graded_dims() == expected, || {
                        format!("{} (x) {}: {:?} vs {:?}", row.name, n.name, t.graded_dims(), expected)
                    });
                }
                Err(e) => c.fail(e.to_string()),
            }
        }
    }
    let zero = LeftModule {
        name: "zero",
        comps: [GradedFreeComponent::zero_module(), GradedFreeComponent::zero_module()],
        act: c0_col_act,
    };
    match tensor_over(&c0, &e_upper_c(), &zero, bound) {
        Ok(t) => c.expect(t.graded_dims().iter().all(|x| x.1 == 0), || {
            format!("tensor with zero module: {:?}", t.graded_dims())
        }),
        Err(e) => c.fail(e.to_string()),
    }

    let (m, n) = (e_upper_c(), e_lower_c());
    let t = match tensor_over(&c0, &m, &n, bound) {
        Ok(t) => t,
        Err(e) => {
            c.fail(e.to_string());
            return c.finish();
        }
    };
    let sum = pair::y1() + pair::y2();
    let x_lower = x_lower_c(&c0);
    let central_n = |_: usize, e: &Elem| scale(&sum, e);
    let central_m = |_: usize, e: &Elem| scale(&sum, e);
    let x_on_n = |k: usize, e: &Elem| (n.act)((k + 1, k + 1), x_lower.entry((k + 1, k + 1)), e);
    let x_then_central = |k: usize, e: &Elem| central_n(k, &x_on_n(k, e));
    let id = PieceMap::identity();
    let maps = [
        ("central", PieceMap { shift: 2, apply: &central_n }),
        ("x", PieceMap { shift: 2, apply: &x_on_n }),
        ("central after x", PieceMap { shift: 4, apply: &x_then_central }),
    ];
    for (name, f) in &maps {
        if let Err(e) = check_left_module_map(&c0, &n, f, bound) {
            c.fail(format!("{name}: {e}"));
        }
    }
    let induced = |g: &PieceMap<'_>, f: &PieceMap<'_>| induced_map(&t, &m, &n, f, g);
    match induced(&id, &id) {
        Ok(mats) => {
            for (d, mat) in mats {
                c.expect(mat == identity_matrix(mat.len()), || format!("identity not induced in degree {d}"));
            }
        }
        Err(e) => c.fail(format!("identity: {e}")),
    }
    match (
        induced(&maps[0].1, &id),
        induced(&id, &PieceMap { shift: 2, apply: &central_m }),
    ) {
        (Ok(a), Ok(b)) => c.expect(a == b, || "central element acts differently on the two factors".to_string()),
        (Err(e), _) | (_, Err(e)) => c.fail(format!("central: {e}")),
    }
    match (induced(&maps[0].1, &id), induced(&maps[1].1, &id), induced(&maps[2].1, &id)) {
        (Ok(g), Ok(f), Ok(fg)) => {
            for (d, mat) in &fg {
                let (Some(gd), Some(fd)) = (
                    f.iter().find(|x| x.0 == d + 2),
                    g.iter().find(|x| x.0 == *d),
                ) else {
                    continue;
                };
                let composed = compose(&gd.1, &fd.1);
                c.expect(&composed == mat, || format!("composition differs in degree {d}"));
            }
        }
        _ => c.fail("composition: an induced map failed".to_string()),
    }
    // Zero on the first piece and the identity on the second does not
    // commute with the lower-left entry, so it must be rejected twice.
    let broken = |k: usize, e: &Elem| if k == 0 { scale(&pair::zero(), e) } else { e.clone() };
    let broken = PieceMap { shift: 0, apply: &broken };
    c.expect(check_left_module_map(&c0, &n, &broken, bound).is_err(), || {
        "non-module map accepted by the module-map check".to_string()
    });
    c.expect(
        matches!(induced(&id, &broken), Err(MatError::NotDescending { .. })),
        || "non-module map descended to the tensor product".to_string(),
    );
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_products_in_t0() {
        let t0 = build_t0();
        let th = vec![pair::y1()];
        let th2 = vec![pair::y2()];
        assert_eq!(t0.entry_product((1, 2), &th, (2, 1), &th2), vec![omega() * pair::y1() * pair::y2()]);
        let p = pair::y1() * pair::y2();
        assert_eq!(t0.entry_product((2, 1), &th2, (1, 2), &th), vec![omega() * &p, -p]);
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert("P2", 4).unwrap(), vec![(0, 1), (2, 2), (4, 3)]);
        assert_eq!(hilbert("omegaP2", 4).unwrap(), vec![(0, 0), (2, 1), (4, 2)]);
        assert_eq!(hilbert("Q1", 4).unwrap(), vec![(0, 1), (2, 3), (4, 5)]);
        assert!(hilbert("nope", 4).is_err());
    }

    #[test]
    fn t21_examples() {
        assert_eq!(t21(&vec![omega(), pair::zero()]).unwrap(), vec![pair::one(), pair::one()]);
        assert!(GradedFreeComponent::is_zero(&t21(&vec![pair::y1(), pair::y1()]).unwrap()));
    }

    #[test]
    fn comparison_small_bound() {
        for r in verify_comparison(6) {
            assert!(r.passed(), "{r:?}");
        }
        for r in verify_weights_grading_nilpotence(6) {
            assert!(r.passed(), "{r:?}");
        }
        let r = verify_tensor_products(6);
        assert!(r.passed(), "{r:?}");
    }
}
