//! Property suites and their machine-readable report.
//!
//! Every random case draws from its own ChaCha8 stream: the generator is
//! seeded with the master seed and switched to stream
//! `(property_index << 32) | case_index`, so any counterexample can be
//! replayed from the seed and the stream number in the report alone.

use std::fmt::Write as _;
use std::panic::{self, AssertUnwindSafe};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::gmodels::{
    act_c_generator, braid_closed_forms, tau1_tilde, tau2_tilde, tautilde, xtilde_left,
    xtilde_right, CGenerator, Etilde2, Etilde3, G2, G3,
};
use crate::l1l1::{self, CheckReport};
use crate::nilhecke::{evaluation_bound, evaluations, recover_operator, NilHecke};
use crate::poly::{slots, Polynomial};
use crate::sample;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    NilHecke,
    GModels,
    L1L1,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::NilHecke => "nilhecke",
            Suite::GModels => "gmodels",
            Suite::L1L1 => "l1l1",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nilhecke" => Ok(Suite::NilHecke),
            "gmodels" => Ok(Suite::GModels),
            "l1l1" => Ok(Suite::L1L1),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}` (nilhecke, gmodels, l1l1, all)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random cases per property.
    pub cases: usize,
    /// Graded degree bound for random polynomials.
    pub max_degree: u32,
    /// Graded degree bound for the degreewise checks.
    pub degree_bound: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            cases: 100,
            max_degree: 6,
            degree_bound: 12,
            mutation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case_index: usize,
    /// RNG stream of the case; absent for exhaustive checks.
    pub stream: Option<u64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub id: String,
    pub component: String,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: SuiteConfig,
    pub properties: Vec<PropertyResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(
            out,
            "suite {} seed {} cases {} max-degree {} degree-bound {}",
            self.suite, c.seed, c.cases, c.max_degree, c.degree_bound
        );
        if let Some(m) = &c.mutation {
            let _ = writeln!(out, "mutation {m}");
        }
        for p in &self.properties {
            let mark = if p.failed == 0 { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{mark} {} [{}] {}/{} passed",
                p.id, p.component, p.passed, p.cases
            );
            if let Some(ce) = &p.first_counterexample {
                let stream = ce.stream.map_or(String::new(), |s| format!(" stream {s}"));
                let _ = writeln!(out, "  case {}{}: {}", ce.case_index, stream, ce.detail);
            }
        }
        let failed = self.properties.iter().filter(|p| p.failed > 0).count();
        let _ = writeln!(out, "{} properties, {} failed", self.properties.len(), failed);
        out
    }
}

type CaseResult = Result<(), String>;

/// Runs properties in order, numbering them for stream derivation.
struct Runner<'a> {
    config: &'a SuiteConfig,
    next_index: u64,
    results: Vec<PropertyResult>,
}

fn panic_message(e: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        format!("panic: {s}")
    } else if let Some(s) = e.downcast_ref::<String>() {
        format!("panic: {s}")
    } else {
        "panic".to_string()
    }
}

impl<'a> Runner<'a> {
    fn new(config: &'a SuiteConfig) -> Self {
        Runner {
            config,
            next_index: 0,
            results: Vec::new(),
        }
    }

    fn record(
        &mut self,
        id: &str,
        component: &str,
        cases: usize,
        mut case: impl FnMut(usize, &mut ChaCha8Rng) -> CaseResult,
        random: bool,
    ) {
        let prop = self.next_index;
        self.next_index += 1;
        let mut passed = 0;
        let mut first = None;
        for k in 0..cases {
            let stream = (prop << 32) | k as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
            rng.set_stream(stream);
            let outcome = panic::catch_unwind(AssertUnwindSafe(|| case(k, &mut rng)))
                .unwrap_or_else(|e| Err(panic_message(e)));
            match outcome {
                Ok(()) => passed += 1,
                Err(detail) if first.is_none() => {
                    first = Some(Counterexample {
                        case_index: k,
                        stream: random.then_some(stream),
                        detail,
                    })
                }
                Err(_) => {}
            }
        }
        self.results.push(PropertyResult {
            id: id.to_string(),
            component: component.to_string(),
            cases,
            passed,
            failed: cases - passed,
            first_counterexample: first,
        });
    }

    /// A property over `config.cases` random cases.
    fn random(
        &mut self,
        id: &str,
        component: &str,
        mut case: impl FnMut(&mut ChaCha8Rng) -> CaseResult,
    ) {
        let cases = self.config.cases;
        self.record(id, component, cases, |_, rng| case(rng), true);
    }

    /// A property over a fixed list of exhaustive cases.
    fn exhaustive(&mut self, id: &str, component: &str, cases: usize, case: impl FnMut(usize) -> CaseResult) {
        let mut case = case;
        self.record(id, component, cases, |k, _| case(k), false);
    }

    fn check_report(&mut self, component: &str, r: CheckReport) {
        self.next_index += 1;
        // Failure descriptions follow the summary and notes.
        let first = (!r.passed()).then(|| Counterexample {
            case_index: 0,
            stream: None,
            detail: r.details.last().cloned().unwrap_or_default(),
        });
        self.results.push(PropertyResult {
            id: r.check.clone(),
            component: component.to_string(),
            cases: r.cases,
            passed: r.cases - r.failed,
            failed: r.failed,
            first_counterexample: first,
        });
    }
}

fn expect_eq<T: PartialEq>(lhs: &T, rhs: &T, render: impl FnOnce() -> String) -> CaseResult {
    if lhs == rhs {
        Ok(())
    } else {
        Err(render())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---- nil-Hecke suite ----

fn nh(r: Result<NilHecke, crate::nilhecke::HeckeError>) -> Result<NilHecke, String> {
    r.map_err(err)
}

/// Products of generators, left to right.
fn prod(n: usize, factors: &[NilHecke]) -> Result<NilHecke, String> {
    let mut acc = NilHecke::one(n);
    for f in factors {
        acc = nh(acc.mul(f))?;
    }
    Ok(acc)
}

fn relation(name: String, lhs: NilHecke, rhs: NilHecke) -> CaseResult {
    expect_eq(&lhs, &rhs, || format!("{name}: {} != {}", lhs.render(), rhs.render()))
}

/// Every defining relation on `n` strands, each side built as a product of
/// generators; the expected side of the mixed relations is assembled from
/// monomials so it does not pass through straightening.
fn defining_relations(n: usize) -> CaseResult {
    let x = |i| nh(NilHecke::x(n, i));
    let t = |i| nh(NilHecke::tau(n, i));
    let y = NilHecke::y(n);
    for i in 1..=n {
        for j in 1..=n {
            relation(format!("x{i} x{j} = x{j} x{i}"), prod(n, &[x(i)?, x(j)?])?, prod(n, &[x(j)?, x(i)?])?)?;
        }
        relation(format!("x{i} y = y x{i}"), prod(n, &[x(i)?, y.clone()])?, prod(n, &[y.clone(), x(i)?])?)?;
    }
    for i in 1..n {
        relation(format!("tau{i}^2 = 0"), prod(n, &[t(i)?, t(i)?])?, NilHecke::zero(n))?;
        relation(format!("tau{i} y = y tau{i}"), prod(n, &[t(i)?, y.clone()])?, prod(n, &[y.clone(), t(i)?])?)?;
        let tau_i = crate::nilhecke::Perm::from_word(n, &[i]).expect("valid word");
        let with_coeff = |p: Polynomial| nh(NilHecke::monomial(n, p, tau_i));
        let one = NilHecke::one(n);
        relation(
            format!("tau{i} x{i} = x{} tau{i} + 1", i + 1),
            prod(n, &[t(i)?, x(i)?])?,
            nh(with_coeff(slots::xv(i + 1))?.checked_add(&one))?,
        )?;
        relation(
            format!("x{i} tau{i} = tau{i} x{} + 1", i + 1),
            prod(n, &[x(i)?, t(i)?])?,
            nh(prod(n, &[t(i)?, x(i + 1)?])?.checked_add(&one))?,
        )?;
        relation(
            format!("tau{i} x{} = x{i} tau{i} - 1", i + 1),
            prod(n, &[t(i)?, x(i + 1)?])?,
            nh(with_coeff(slots::xv(i))?.checked_sub(&one))?,
        )?;
        for j in 1..=n {
            if j != i && j != i + 1 {
                relation(format!("tau{i} x{j} = x{j} tau{i}"), prod(n, &[t(i)?, x(j)?])?, prod(n, &[x(j)?, t(i)?])?)?;
            }
        }
        for j in 1..n {
            if i.abs_diff(j) > 1 {
                relation(format!("tau{i} tau{j} = tau{j} tau{i}"), prod(n, &[t(i)?, t(j)?])?, prod(n, &[t(j)?, t(i)?])?)?;
            }
        }
        if i + 1 < n {
            let k = i + 1;
            relation(
                format!("tau{i} tau{k} tau{i} = tau{k} tau{i} tau{k}"),
                prod(n, &[t(i)?, t(k)?, t(i)?])?,
                prod(n, &[t(k)?, t(i)?, t(k)?])?,
            )?;
        }
    }
    Ok(())
}

fn special_elements(n: usize) -> CaseResult {
    for i in 1..n {
        let s = nh(NilHecke::s(n, i))?;
        let t = nh(NilHecke::tau(n, i))?;
        let d = nh(NilHecke::delta(n, i))?;
        relation(format!("s{i}^2 = 1"), nh(s.mul(&s))?, NilHecke::one(n))?;
        relation(format!("s{i} tau{i} = tau{i}"), nh(s.mul(&t))?, t.clone())?;
        relation(format!("delta{i}^2 = delta{i}"), nh(d.mul(&d))?, d.clone())?;
    }
    Ok(())
}

/// `sum_S (-1)^|S| h|_{x_i = y, i in S}`, which vanishes under every
/// substitution `x_i = y`.
pub fn kernel_projection(h: &Polynomial, n: usize) -> Result<Polynomial, String> {
    let mut out = slots::zero();
    for mask in 0u32..(1 << n) {
        let mut p = h.clone();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                p = p.substitute(i, &slots::yv()).map_err(err)?;
            }
        }
        out = if mask.count_ones() % 2 == 0 { out + p } else { out - p };
    }
    Ok(out)
}

fn vanishes_everywhere(f: &Polynomial, n: usize) -> Result<Option<usize>, String> {
    for i in 0..n {
        if !f.substitute(i, &slots::yv()).map_err(err)?.is_zero() {
            return Ok(Some(i + 1));
        }
    }
    Ok(None)
}

/// Graded degree of the operators recovered from their evaluations.
const FAITHFULNESS_DEGREE: u32 = 8;

fn nilhecke_suite(r: &mut Runner<'_>) {
    let d = r.config.max_degree;
    r.exhaustive("defining-relations", "n<=4", 4, |k| defining_relations(k + 1));
    r.exhaustive("special-elements", "n<=4", 4, |k| special_elements(k + 1));
    r.random("straighten-closed-form", "n<=4", |rng| {
        let n = rng.gen_range(2..=4);
        let i = rng.gen_range(1..n);
        let p = sample::poly(rng, n, d);
        let lhs = nh(NilHecke::tau(n, i).and_then(|t| t.mul(&NilHecke::from_poly(n, p.clone())?)))?;
        let w = crate::nilhecke::Perm::from_word(n, &[i]).expect("valid word");
        let rhs = nh(NilHecke::monomial(n, p.swap(i).map_err(err)?, w)
            .and_then(|a| a.checked_add(&NilHecke::from_poly(n, p.demazure(i)?)?)))?;
        relation(format!("tau{i} * ({p})"), lhs, rhs)
    });
    r.random("act-morphism", "n<=4", |rng| {
        let n = rng.gen_range(1..=4);
        let a = sample::nilhecke(rng, n, d);
        let b = sample::nilhecke(rng, n, d);
        let v = sample::poly(rng, n, d);
        let ab = nh(a.mul(&b))?;
        let lhs = ab.act(&v).map_err(err)?;
        let rhs = a.act(&b.act(&v).map_err(err)?).map_err(err)?;
        expect_eq(&lhs, &rhs, || {
            format!("a = {}, b = {}, v = {}: {} vs {}", a.render(), b.render(), v, lhs, rhs)
        })
    });
    r.random("faithfulness-on-source", "n<=3", |rng| {
        let n = rng.gen_range(1..=3);
        let h = sample::nilhecke(rng, n, FAITHFULNESS_DEGREE);
        let evals = evaluations(&h, evaluation_bound(&h)).map_err(err)?;
        let back = recover_operator(&evals, n).map_err(err)?;
        let expected = h.reduce_for_source();
        relation(format!("recover(act({}))", h.render()), back, expected)
    });
    r.random("left-division", "n<=4", |rng| {
        let n = rng.gen_range(1..=4);
        let i = rng.gen_range(1..=n);
        let g = sample::nilhecke(rng, n, d);
        let h = nh(g.left_mul_poly(&slots::yi(i)))?;
        let back = nh(h.left_divide_exact(i))?;
        relation(format!("y{i} \\ (y{i} * ({}))", g.render()), back, g)
    });
    for n in 1..=4usize {
        let component = format!("n={n}");
        r.random("kernel-divisible-implies-vanishing", &component, |rng| {
            let f = slots::y_prod(n) * sample::poly(rng, n, d);
            match vanishes_everywhere(&f, n)? {
                None => Ok(()),
                Some(i) => Err(format!("{f} survives x{i} = y")),
            }
        });
        r.random("kernel-vanishing-implies-divisible", &component, |rng| {
            let h = sample::poly(rng, n, d + 2 * n as u32);
            let f = kernel_projection(&h, n)?;
            if let Some(i) = vanishes_everywhere(&f, n)? {
                return Err(format!("projection of {h} survives x{i} = y"));
            }
            f.exact_divide(&slots::y_prod(n))
                .map(|_| ())
                .map_err(|_| format!("{f} vanishes under every x_i = y but is not divisible by the product"))
        });
    }
}

// ---- G-model suite ----

fn g(r: Result<Etilde2, crate::gmodels::GError>) -> Result<Etilde2, String> {
    r.map_err(err)
}

fn g3e(r: Result<Etilde3, crate::gmodels::GError>) -> Result<Etilde3, String> {
    r.map_err(err)
}

fn closed(v: &Etilde2, what: &str) -> CaseResult {
    v.check().map_err(|e| format!("{what} = {} fails membership: {e}", v.render()))
}

fn closed3(v: &Etilde3, what: &str) -> CaseResult {
    v.check().map_err(|e| format!("{what} = {} fails membership: {e}", v.render()))
}

fn eq2(lhs: &Etilde2, rhs: &Etilde2, what: &str) -> CaseResult {
    expect_eq(lhs, rhs, || format!("{what}: {} vs {}", lhs.render(), rhs.render()))
}

fn eq3(lhs: &Etilde3, rhs: &Etilde3, what: &str) -> CaseResult {
    expect_eq(lhs, rhs, || format!("{what}: {} vs {}", lhs.render(), rhs.render()))
}

fn applicable_component<R: Rng + ?Sized>(rng: &mut R, gen: &CGenerator) -> &'static str {
    let comps: Vec<&str> = sample::COMPONENTS.into_iter().filter(|c| gen.acts_on(c)).collect();
    comps[rng.gen_range(0..comps.len())]
}

fn gmodels_suite(r: &mut Runner<'_>) {
    let d = r.config.max_degree;
    r.random("k-conditions", "21", |rng| {
        let x = sample::g2(rng, d);
        let w = x.witness().map_err(err)?;
        let again = G2::generate(&x.e2, &w.e_prime, &w.xi_prime).map_err(err)?;
        expect_eq(&again, &x, || format!("witness of {} does not regenerate it", x.render()))?;
        expect_eq(&again.witness().map_err(err)?, &w, || "witness not unique".to_string())
    });
    r.random("l-conditions", "22", |rng| {
        let x = sample::g3(rng, d);
        let w = x.witness().map_err(err)?;
        let again = G3::generate(&x.ee3, &w.ee_bar, &w.ee_second, &w.chi_second).map_err(err)?;
        expect_eq(&again, &x, || format!("witness of {} does not regenerate it", x.render()))?;
        expect_eq(&again.witness().map_err(err)?, &w, || "witness not unique".to_string())
    });
    r.random("g4-membership", "G4", |rng| {
        let x = sample::g4(rng, d).map_err(err)?;
        x.witness().map(|_| ()).map_err(|e| format!("{}: {e}", x.render()))
    });
    for comp in sample::COMPONENTS {
        r.random("closure-xtilde", comp, |rng| {
            let v = sample::etilde2(rng, comp, d);
            closed(&g(xtilde_left(&v))?, "xE(v)")?;
            closed(&g(xtilde_right(&v))?, "Ex(v)")
        });
        r.random("closure-tautilde", comp, |rng| {
            let v = sample::etilde2(rng, comp, d);
            closed(&g(tautilde(&v))?, "tau(v)")
        });
    }
    for comp in sample::COMPONENTS {
        r.random("closure-tau1-tau2", comp, |rng| {
            let v = g3e(sample::etilde3(rng, comp, d))?;
            closed3(&g3e(tau1_tilde(&v))?, "tau1(v)")?;
            closed3(&g3e(tau2_tilde(&v))?, "tau2(v)")
        });
    }
    for family in sample::GENERATOR_FAMILIES {
        r.random("closure-generator", family, |rng| {
            let gen = sample::c_generator(rng, family, d);
            let comp = applicable_component(rng, &gen);
            let v = sample::etilde2(rng, comp, d);
            closed(&g(act_c_generator(&gen, &v))?, "generator action")
        });
    }
    for comp in sample::COMPONENTS {
        r.random("hecke-ex-tau", comp, |rng| {
            let v = sample::etilde2(rng, comp, d);
            let a = g(xtilde_right(&g(tautilde(&v))?))?;
            let b = g(tautilde(&g(xtilde_left(&v))?))?;
            eq2(&g(a.sub(&b))?, &v, "Ex tau - tau xE")
        });
        r.random("hecke-tau-ex", comp, |rng| {
            let v = sample::etilde2(rng, comp, d);
            let a = g(tautilde(&g(xtilde_right(&v))?))?;
            let b = g(xtilde_left(&g(tautilde(&v))?))?;
            eq2(&g(a.sub(&b))?, &v, "tau Ex - xE tau")
        });
        r.random("tau-squared-zero", comp, |rng| {
            let v = sample::etilde2(rng, comp, d);
            let t2 = g(tautilde(&g(tautilde(&v))?))?;
            if t2.is_zero() {
                Ok(())
            } else {
                Err(format!("tau^2({}) = {}", v.render(), t2.render()))
            }
        });
    }
    for comp in sample::COMPONENTS {
        r.random("braid", comp, |rng| {
            let v = g3e(sample::etilde3(rng, comp, d))?;
            let t1 = |x: &Etilde3| g3e(tau1_tilde(x));
            let t2 = |x: &Etilde3| g3e(tau2_tilde(x));
            let after_12 = t2(&t1(&v)?)?;
            let after_21 = t1(&t2(&v)?)?;
            let lhs = t1(&after_12)?;
            let rhs = t2(&after_21)?;
            eq3(&lhs, &rhs, "tau1 tau2 tau1 vs tau2 tau1 tau2")?;
            if let Some(forms) = braid_closed_forms(&v).map_err(err)? {
                eq3(&after_12, &forms.after_12, "after tau1 then tau2")?;
                eq3(&after_21, &forms.after_21, "after tau2 then tau1")?;
                eq3(&lhs, &forms.end, "end form")?;
            }
            Ok(())
        });
    }
    for family in sample::GENERATOR_FAMILIES {
        r.random("equivariance", family, |rng| {
            let gen = sample::c_generator(rng, family, d);
            let comp = applicable_component(rng, &gen);
            let v = sample::etilde2(rng, comp, d);
            let lhs = g(tautilde(&g(act_c_generator(&gen, &v))?))?;
            let rhs = g(act_c_generator(&gen, &g(tautilde(&v))?))?;
            eq2(&lhs, &rhs, "tau(g.v) vs g.tau(v)")
        });
    }
}

fn l1l1_suite(r: &mut Runner<'_>) {
    let bound = r.config.degree_bound;
    for rep in l1l1::verify_comparison(bound) {
        r.check_report("T0/C0", rep);
    }
    r.check_report("C0", l1l1::verify_tensor_products(bound));
    for rep in l1l1::verify_weights_grading_nilpotence(bound) {
        r.check_report("C", rep);
    }
}

/// Run a suite under the configured mutation, if any.
pub fn run(suite: Suite, config: &SuiteConfig) -> Result<Report, String> {
    let mutation = match &config.mutation {
        Some(name) => Some(name.parse::<crate::Mutation>()?),
        None => None,
    };
    let mut runner = Runner::new(config);
    crate::with_mutation(mutation, || {
        if matches!(suite, Suite::NilHecke | Suite::All) {
            nilhecke_suite(&mut runner);
        }
        if matches!(suite, Suite::GModels | Suite::All) {
            gmodels_suite(&mut runner);
        }
        if matches!(suite, Suite::L1L1 | Suite::All) {
            l1l1_suite(&mut runner);
        }
    });
    Ok(Report {
        suite: suite.name().to_string(),
        config: config.clone(),
        properties: runner.results,
    })
}
