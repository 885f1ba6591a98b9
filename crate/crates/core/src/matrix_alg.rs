//! Generalized 2x2 matrix algebras `(A B; C D)` whose entries are graded
//! free modules over `P2 = k[y1, y2]`, their one-sided modules, and tensor
//! products over them computed degree by degree.
//!
//! Elements of every component are stored as short vectors of polynomials
//! in `y1, y2`; each component knows how to write an element in its free
//! generators, which gives exact coordinates in every graded piece.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{axpy, Echelon, SparseVec};
use crate::poly::{pair, Polynomial, Scalar, VarSet};

/// A component element: a fixed number of polynomials in `y1, y2`.
pub type Elem = Vec<Polynomial>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(&'static str, &'static str),
    #[error("{component} does not contain {element}")]
    NotInComponent { component: &'static str, element: String },
    #[error("induced map does not descend in degree {degree}: {detail}")]
    NotDescending { degree: u32, detail: String },
    #[error("map is not a module map: {0}")]
    NotModuleMap(String),
    #[error("degree bound {0} is not even")]
    OddBound(u32),
}

/// Homogeneity of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed,
}

/// A graded free `P2`-module with named generators.
#[derive(Clone)]
pub struct GradedFreeComponent {
    pub name: &'static str,
    /// Polynomials per element.
    pub width: usize,
    /// `(symbol, degree, element)` for each free generator.
    pub gens: Vec<(&'static str, u32, Elem)>,
    /// Coefficients on the generators, or `None` for a non-member.
    decompose: fn(&Elem) -> Option<Vec<Polynomial>>,
}

impl fmt::Debug for GradedFreeComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedFreeComponent")
            .field("name", &self.name)
            .field("gens", &self.gens.iter().map(|g| (g.0, g.1)).collect::<Vec<_>>())
            .finish()
    }
}

impl GradedFreeComponent {
    pub fn new(
        name: &'static str,
        width: usize,
        gens: Vec<(&'static str, u32, Elem)>,
        decompose: fn(&Elem) -> Option<Vec<Polynomial>>,
    ) -> Self {
        GradedFreeComponent {
            name,
            width,
            gens,
            decompose,
        }
    }

    pub fn zero_module() -> Self {
        fn decompose(e: &Elem) -> Option<Vec<Polynomial>> {
            e.is_empty().then(Vec::new)
        }
        GradedFreeComponent::new("0", 0, Vec::new(), decompose)
    }

    pub fn zero(&self) -> Elem {
        vec![pair::zero(); self.width]
    }

    pub fn is_zero(e: &Elem) -> bool {
        e.iter().all(Polynomial::is_zero)
    }

    pub fn contains(&self, e: &Elem) -> bool {
        e.len() == self.width
            && e.iter().all(|p| p.vars() == VarSet::Pair)
            && (self.decompose)(e).is_some()
    }

    pub fn coefficients(&self, e: &Elem) -> Result<Vec<Polynomial>, MatError> {
        if e.len() != self.width {
            return Err(self.not_member(e));
        }
        (self.decompose)(e).ok_or_else(|| self.not_member(e))
    }

    fn not_member(&self, e: &Elem) -> MatError {
        MatError::NotInComponent {
            component: self.name,
            element: render_elem(e),
        }
    }

    /// `sum_j c_j g_j`.
    pub fn from_coefficients(&self, coeffs: &[Polynomial]) -> Elem {
        let mut out = self.zero();
        for (c, (_, _, g)) in coeffs.iter().zip(&self.gens) {
            out = add(&out, &scale(c, g));
        }
        out
    }

    /// Dimension over `k` of the piece of graded degree `d`.
    pub fn dim(&self, d: u32) -> usize {
        if d % 2 == 1 {
            return 0;
        }
        self.gens
            .iter()
            .filter(|g| g.1 <= d)
            .map(|g| ((d - g.1) / 2 + 1) as usize)
            .sum()
    }

    /// Monomial multiples of the generators spanning degree `d`, in
    /// coordinate order.
    pub fn basis(&self, d: u32) -> Vec<Elem> {
        let mut out = Vec::new();
        if d % 2 == 1 {
            return out;
        }
        for (_, gd, g) in &self.gens {
            if *gd > d {
                continue;
            }
            for m in pair::monomials((d - gd) / 2) {
                let mono = Polynomial::term(VarSet::Pair, Scalar::from_integer(1.into()), m);
                out.push(scale(&mono, g));
            }
        }
        out
    }

    /// Human-readable labels matching [`Self::basis`].
    pub fn basis_labels(&self, d: u32) -> Vec<String> {
        let mut out = Vec::new();
        if d % 2 == 1 {
            return out;
        }
        for (sym, gd, _) in &self.gens {
            if *gd > d {
                continue;
            }
            for m in pair::monomials((d - gd) / 2) {
                let mono = Polynomial::term(VarSet::Pair, Scalar::from_integer(1.into()), m);
                out.push(format!("{}*{}", mono, sym));
            }
        }
        out
    }

    pub fn homogeneity(&self, e: &Elem) -> Result<Homogeneity, MatError> {
        let coeffs = self.coefficients(e)?;
        let mut seen: Option<u32> = None;
        for (c, (_, gd, _)) in coeffs.iter().zip(&self.gens) {
            for (m, _) in c.terms() {
                let d = m.graded_degree() + gd;
                match seen {
                    None => seen = Some(d),
                    Some(s) if s != d => return Ok(Homogeneity::Mixed),
                    _ => {}
                }
            }
        }
        Ok(seen.map_or(Homogeneity::Zero, Homogeneity::Degree))
    }

    /// Coordinates in the degree-`d` basis; `Err` if not homogeneous of degree `d`.
    pub fn coords(&self, e: &Elem, d: u32) -> Result<Vec<Scalar>, MatError> {
        let coeffs = self.coefficients(e)?;
        let mut out = Vec::with_capacity(self.dim(d));
        for (c, (_, gd, _)) in coeffs.iter().zip(&self.gens) {
            if *gd > d || d % 2 == 1 {
                if !c.is_zero() {
                    return Err(self.not_member(e));
                }
                continue;
            }
            let monos = pair::monomials((d - gd) / 2);
            let mut used = 0;
            for m in &monos {
                let a = c.coeff(m);
                if !a.is_zero() {
                    used += 1;
                }
                out.push(a);
            }
            if used != c.num_terms() {
                return Err(MatError::NotInComponent {
                    component: self.name,
                    element: format!("{} (not of degree {d})", render_elem(e)),
                });
            }
        }
        Ok(out)
    }
}

pub fn add(a: &Elem, b: &Elem) -> Elem {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &Elem, b: &Elem) -> Elem {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Diagonal multiplication of every stored polynomial.
pub fn scale(p: &Polynomial, e: &Elem) -> Elem {
    e.iter().map(|x| p * x).collect()
}

pub fn render_elem(e: &Elem) -> String {
    match e.len() {
        1 => e[0].render(),
        _ => format!(
            "({})",
            e.iter().map(Polynomial::render).collect::<Vec<_>>().join(", ")
        ),
    }
}

/// Matrix position, 1-based: `(row, column)`.
pub type Entry = (usize, usize);

fn slot((i, j): Entry) -> usize {
    2 * (i - 1) + (j - 1)
}

pub const ENTRIES: [Entry; 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

/// Product of an `(i, j)` entry with a `(j, k)` entry, landing in `(i, k)`.
pub type EntryProduct = fn(Entry, &Elem, Entry, &Elem) -> Elem;

/// A generalized matrix algebra.
#[derive(Clone, Debug)]
pub struct GenMatAlgebra {
    pub name: &'static str,
    /// Components in the order 11, 12, 21, 22.
    pub comps: [GradedFreeComponent; 4],
    /// Units of the two diagonal components.
    pub units: [Elem; 2],
    product: EntryProduct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMatElement {
    pub algebra: &'static str,
    /// Entries in the order 11, 12, 21, 22.
    pub entries: [Elem; 4],
}

impl GenMatElement {
    pub fn entry(&self, e: Entry) -> &Elem {
        &self.entries[slot(e)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GradedFreeComponent::is_zero)
    }

    pub fn render(&self) -> String {
        format!(
            "[{}, {}; {}, {}]",
            render_elem(&self.entries[0]),
            render_elem(&self.entries[1]),
            render_elem(&self.entries[2]),
            render_elem(&self.entries[3])
        )
    }
}

impl GenMatAlgebra {
    pub fn new(
        name: &'static str,
        comps: [GradedFreeComponent; 4],
        units: [Elem; 2],
        product: EntryProduct,
    ) -> Self {
        GenMatAlgebra {
            name,
            comps,
            units,
            product,
        }
    }

    pub fn comp(&self, e: Entry) -> &GradedFreeComponent {
        &self.comps[slot(e)]
    }

    pub fn zero(&self) -> GenMatElement {
        GenMatElement {
            algebra: self.name,
            entries: std::array::from_fn(|k| self.comps[k].zero()),
        }
    }

    pub fn one(&self) -> GenMatElement {
        let mut z = self.zero();
        z.entries[0] = self.units[0].clone();
        z.entries[3] = self.units[1].clone();
        z
    }

    /// Element with a single nonzero entry.
    pub fn single(&self, e: Entry, value: Elem) -> GenMatElement {
        let mut z = self.zero();
        z.entries[slot(e)] = value;
        z
    }

    pub fn diag(&self, a: Elem, d: Elem) -> GenMatElement {
        let mut z = self.zero();
        z.entries[0] = a;
        z.entries[3] = d;
        z
    }

    pub fn entry_product(&self, a: Entry, x: &Elem, b: Entry, y: &Elem) -> Elem {
        debug_assert_eq!(a.1, b.0);
        (self.product)(a, x, b, y)
    }

    fn check(&self, x: &GenMatElement) -> Result<(), MatError> {
        if x.algebra != self.name {
            return Err(MatError::AlgebraMismatch(self.name, x.algebra));
        }
        for (k, e) in x.entries.iter().enumerate() {
            if !self.comps[k].contains(e) {
                return Err(self.comps[k].not_member(e));
            }
        }
        Ok(())
    }

    /// Matrix product with the structure maps on the cross terms.
    pub fn mat_mul(&self, a: &GenMatElement, b: &GenMatElement) -> Result<GenMatElement, MatError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for (i, k) in ENTRIES {
            let mut acc = self.comp((i, k)).zero();
            for j in 1..=2 {
                let x = a.entry((i, j));
                let y = b.entry((j, k));
                if GradedFreeComponent::is_zero(x) || GradedFreeComponent::is_zero(y) {
                    continue;
                }
                acc = add(&acc, &self.entry_product((i, j), x, (j, k), y));
            }
            out.entries[slot((i, k))] = acc;
        }
        Ok(out)
    }

    pub fn add(&self, a: &GenMatElement, b: &GenMatElement) -> GenMatElement {
        GenMatElement {
            algebra: self.name,
            entries: std::array::from_fn(|k| add(&a.entries[k], &b.entries[k])),
        }
    }

    pub fn sub(&self, a: &GenMatElement, b: &GenMatElement) -> GenMatElement {
        GenMatElement {
            algebra: self.name,
            entries: std::array::from_fn(|k| sub(&a.entries[k], &b.entries[k])),
        }
    }

    pub fn dim(&self, d: u32) -> usize {
        self.comps.iter().map(|c| c.dim(d)).sum()
    }

    /// `k`-basis of degree `d`, entry by entry.
    pub fn basis(&self, d: u32) -> Vec<GenMatElement> {
        let mut out = Vec::new();
        for e in ENTRIES {
            for b in self.comp(e).basis(d) {
                out.push(self.single(e, b));
            }
        }
        out
    }

    /// Coordinates in [`Self::basis`] order.
    pub fn coords(&self, x: &GenMatElement, d: u32) -> Result<Vec<Scalar>, MatError> {
        let mut out = Vec::new();
        for e in ENTRIES {
            out.extend(self.comp(e).coords(x.entry(e), d)?);
        }
        Ok(out)
    }

    /// Algebra generators besides the units: `y1, y2` on each diagonal
    /// component, the non-unit generators of the diagonal components and
    /// all generators of the off-diagonal ones. Together with the units
    /// they generate the algebra over `k`.
    pub fn generators(&self) -> Vec<(Entry, Elem, u32)> {
        let mut out = Vec::new();
        for (idx, e) in [(1, 1), (2, 2)].into_iter().enumerate() {
            for y in [pair::y1(), pair::y2()] {
                out.push((e, scale(&y, &self.units[idx]), 2));
            }
            for (_, d, g) in self.comp(e).gens.iter().skip(1) {
                out.push((e, g.clone(), *d));
            }
        }
        for e in [(1, 2), (2, 1)] {
            for (_, d, g) in &self.comp(e).gens {
                out.push((e, g.clone(), *d));
            }
        }
        out
    }

    /// Check `(ab)c == a(bc)` on all basis triples of total degree `<= bound`.
    /// Basis elements sit in single entries, so only chains `(i,j)(j,k)(k,l)`
    /// can be nonzero. Returns the number of triples checked.
    pub fn check_associativity(&self, bound: u32) -> Result<usize, String> {
        let basis = entry_basis(self, bound);
        let mut checked = 0;
        for (ea, da, a) in &basis {
            for (eb, db, b) in basis.iter().filter(|x| x.0 .0 == ea.1) {
                if da + db > bound {
                    continue;
                }
                let ab = self.entry_product(*ea, a, *eb, b);
                for (ec, dc, c) in basis.iter().filter(|x| x.0 .0 == eb.1) {
                    if da + db + dc > bound {
                        continue;
                    }
                    let bc = self.entry_product(*eb, b, *ec, c);
                    let lhs = self.entry_product((ea.0, eb.1), &ab, *ec, c);
                    let rhs = self.entry_product(*ea, a, (eb.0, ec.1), &bc);
                    checked += 1;
                    if lhs != rhs {
                        return Err(format!(
                            "{:?}{} * {:?}{} * {:?}{}: {} vs {}",
                            ea,
                            render_elem(a),
                            eb,
                            render_elem(b),
                            ec,
                            render_elem(c),
                            render_elem(&lhs),
                            render_elem(&rhs)
                        ));
                    }
                }
            }
        }
        Ok(checked)
    }
}

/// Left action of the `(i, j)` entry on `M_j`, landing in `M_i`.
pub type LeftAction = fn(Entry, &Elem, &Elem) -> Elem;
/// Right action of the `(i, j)` entry on `N_i`, landing in `N_j`.
pub type RightAction = fn(&Elem, Entry, &Elem) -> Elem;

/// A column `(M1; M2)` with a left action.
#[derive(Clone, Debug)]
pub struct LeftModule {
    pub name: &'static str,
    pub comps: [GradedFreeComponent; 2],
    pub act: LeftAction,
}

/// A row `(N1, N2)` with a right action.
#[derive(Clone, Debug)]
pub struct RightModule {
    pub name: &'static str,
    pub comps: [GradedFreeComponent; 2],
    pub act: RightAction,
}

fn entry_basis(alg: &GenMatAlgebra, bound: u32) -> Vec<(Entry, u32, Elem)> {
    let mut out = Vec::new();
    for d in (0..=bound).step_by(2) {
        for e in ENTRIES {
            for b in alg.comp(e).basis(d) {
                out.push((e, d, b));
            }
        }
    }
    out
}

impl LeftModule {
    pub fn dim(&self, d: u32) -> usize {
        self.comps.iter().map(|c| c.dim(d)).sum()
    }

    /// `(rs)m == r(sm)` and `1m == m` on all basis triples of total degree `<= bound`.
    pub fn check_compatibility(&self, alg: &GenMatAlgebra, bound: u32) -> Result<usize, String> {
        let rb = entry_basis(alg, bound);
        let mut checked = 0;
        for d in (0..=bound).step_by(2) {
            for j in 1..=2 {
                for m in self.comps[j - 1].basis(d) {
                    let unit = (self.act)((j, j), &alg.units[j - 1], &m);
                    if unit != m {
                        return Err(format!("unit fails on {}", render_elem(&m)));
                    }
                    for (s_e, sd, s) in rb.iter().filter(|r| r.0 .1 == j) {
                        if d + sd > bound {
                            continue;
                        }
                        let sm = (self.act)(*s_e, s, &m);
                        for (r_e, rd, r) in rb.iter().filter(|r| r.0 .1 == s_e.0) {
                            if d + sd + rd > bound {
                                continue;
                            }
                            let rs = alg.entry_product(*r_e, r, *s_e, s);
                            let lhs = (self.act)((r_e.0, j), &rs, &m);
                            let rhs = (self.act)(*r_e, r, &sm);
                            checked += 1;
                            if lhs != rhs {
                                return Err(format!(
                                    "{:?}{} * {:?}{} on {}: {} vs {}",
                                    r_e,
                                    render_elem(r),
                                    s_e,
                                    render_elem(s),
                                    render_elem(&m),
                                    render_elem(&lhs),
                                    render_elem(&rhs)
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(checked)
    }
}

impl RightModule {
    pub fn dim(&self, d: u32) -> usize {
        self.comps.iter().map(|c| c.dim(d)).sum()
    }

    /// `n(rs) == (nr)s` and `n1 == n` on all basis triples of total degree `<= bound`.
    pub fn check_compatibility(&self, alg: &GenMatAlgebra, bound: u32) -> Result<usize, String> {
        let rb = entry_basis(alg, bound);
        let mut checked = 0;
        for d in (0..=bound).step_by(2) {
            for i in 1..=2 {
                for n in self.comps[i - 1].basis(d) {
                    let unit = (self.act)(&n, (i, i), &alg.units[i - 1]);
                    if unit != n {
                        return Err(format!("unit fails on {}", render_elem(&n)));
                    }
                    for (r_e, rd, r) in rb.iter().filter(|r| r.0 .0 == i) {
                        if d + rd > bound {
                            continue;
                        }
                        let nr = (self.act)(&n, *r_e, r);
                        for (s_e, sd, s) in rb.iter().filter(|s| s.0 .0 == r_e.1) {
                            if d + rd + sd > bound {
                                continue;
                            }
                            let rs = alg.entry_product(*r_e, r, *s_e, s);
                            let lhs = (self.act)(&n, (i, s_e.1), &rs);
                            let rhs = (self.act)(&nr, *s_e, s);
                            checked += 1;
                            if lhs != rhs {
                                return Err(format!(
                                    "{} * {:?}{} * {:?}{}: {} vs {}",
                                    render_elem(&n),
                                    r_e,
                                    render_elem(r),
                                    s_e,
                                    render_elem(s),
                                    render_elem(&lhs),
                                    render_elem(&rhs)
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(checked)
    }
}

/// Layout of `M1 (x) N1 + M2 (x) N2` in one graded degree.
#[derive(Clone, Debug)]
struct Layout {
    /// `(slot, deg_m, deg_n, offset)` blocks; block size is `dim M * dim N`.
    blocks: Vec<(usize, u32, u32, usize)>,
    len: usize,
}

impl Layout {
    fn new(m: &RightModule, n: &LeftModule, d: u32) -> Self {
        let mut blocks = Vec::new();
        let mut off = 0;
        for s in 0..2 {
            for a in (0..=d).step_by(2) {
                let b = d - a;
                let size = m.comps[s].dim(a) * n.comps[s].dim(b);
                if size > 0 {
                    blocks.push((s, a, b, off));
                    off += size;
                }
            }
        }
        Layout { blocks, len: off }
    }

    fn offset(&self, s: usize, a: u32) -> Option<usize> {
        self.blocks
            .iter()
            .find(|blk| blk.0 == s && blk.1 == a)
            .map(|blk| blk.3)
    }

    /// Coordinates of `x (x) y` in slot `s`.
    #[allow(clippy::too_many_arguments)]
    fn tensor(
        &self,
        m: &RightModule,
        n: &LeftModule,
        s: usize,
        x: &Elem,
        a: u32,
        y: &Elem,
        b: u32,
    ) -> Result<SparseVec, MatError> {
        let mut out = SparseVec::new();
        if GradedFreeComponent::is_zero(x) || GradedFreeComponent::is_zero(y) {
            return Ok(out);
        }
        let cx = m.comps[s].coords(x, a)?;
        let cy = n.comps[s].coords(y, b)?;
        let off = self.offset(s, a).expect("block present for nonzero tensor");
        let w = cy.len();
        for (i, u) in cx.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (j, v) in cy.iter().enumerate() {
                if !v.is_zero() {
                    out.insert(off + i * w + j, u * v);
                }
            }
        }
        Ok(out)
    }
}

/// One graded piece of a tensor product over a matrix algebra.
#[derive(Clone, Debug)]
pub struct TensorDegree {
    pub degree: u32,
    pub ambient_dim: usize,
    pub dim: usize,
    /// Labels of the basis tensors that survive as a quotient basis.
    pub basis_labels: Vec<String>,
    layout: Layout,
    echelon: Echelon,
    relations: Vec<SparseVec>,
}

impl TensorDegree {
    /// Non-pivot coordinates of the canonical representative.
    fn quotient_coords(&self, v: SparseVec) -> Vec<Scalar> {
        let r = self.echelon.reduce(v);
        (0..self.layout.len)
            .filter(|k| !self.echelon.is_pivot(*k))
            .map(|k| r.get(&k).cloned().unwrap_or_else(Scalar::zero))
            .collect()
    }

    fn free_columns(&self) -> Vec<usize> {
        (0..self.layout.len)
            .filter(|k| !self.echelon.is_pivot(*k))
            .collect()
    }
}

/// `M (x)_R N` up to a degree bound.
#[derive(Clone, Debug)]
pub struct TensorQuotient {
    pub degree_bound: u32,
    pub degrees: Vec<TensorDegree>,
}

impl TensorQuotient {
    /// `(degree, dimension)` pairs over even degrees.
    pub fn graded_dims(&self) -> Vec<(u32, usize)> {
        self.degrees.iter().map(|t| (t.degree, t.dim)).collect()
    }

    fn at(&self, d: u32) -> Option<&TensorDegree> {
        self.degrees.iter().find(|t| t.degree == d)
    }
}

fn labels(m: &RightModule, n: &LeftModule, layout: &Layout) -> Vec<String> {
    let mut out = Vec::with_capacity(layout.len);
    for &(s, a, b, _) in &layout.blocks {
        for lm in m.comps[s].basis_labels(a) {
            for ln in n.comps[s].basis_labels(b) {
                out.push(format!("{lm} (x) {ln}"));
            }
        }
    }
    out
}

/// The quotient of `M1 (x) N1 + M2 (x) N2` by `mr (x) n - m (x) rn`.
///
/// Relations are imposed for the algebra generators only; a relation for a
/// product `rs` is a sum of relations for `r` and for `s`, so this spans
/// the full relation space.
pub fn tensor_over(
    alg: &GenMatAlgebra,
    m: &RightModule,
    n: &LeftModule,
    bound: u32,
) -> Result<TensorQuotient, MatError> {
    if bound % 2 == 1 {
        return Err(MatError::OddBound(bound));
    }
    let gens = alg.generators();
    let mut degrees = Vec::new();
    for d in (0..=bound).step_by(2) {
        let layout = Layout::new(m, n, d);
        let mut echelon = Echelon::new();
        let mut relations = Vec::new();
        for (e, r, rd) in &gens {
            let (i, j) = *e;
            if *rd > d {
                continue;
            }
            for a in (0..=d - rd).step_by(2) {
                let b = d - rd - a;
                for x in m.comps[i - 1].basis(a) {
                    let xr = (m.act)(&x, *e, r);
                    for y in n.comps[j - 1].basis(b) {
                        let ry = (n.act)(*e, r, &y);
                        let mut rel = layout.tensor(m, n, j - 1, &xr, a + rd, &y, b)?;
                        let rhs = layout.tensor(m, n, i - 1, &x, a, &ry, b + rd)?;
                        axpy(&mut rel, &-Scalar::from_integer(1.into()), &rhs);
                        if !rel.is_empty() {
                            echelon.insert(rel.clone());
                            relations.push(rel);
                        }
                    }
                }
            }
        }
        let all = labels(m, n, &layout);
        let basis_labels = (0..layout.len)
            .filter(|k| !echelon.is_pivot(*k))
            .map(|k| all[k].clone())
            .collect();
        degrees.push(TensorDegree {
            degree: d,
            ambient_dim: layout.len,
            dim: layout.len - echelon.rank(),
            basis_labels,
            layout,
            echelon,
            relations,
        });
    }
    Ok(TensorQuotient {
        degree_bound: bound,
        degrees,
    })
}

/// A component-preserving map on the pieces of a module, raising degree by `shift`.
pub struct PieceMap<'a> {
    pub shift: u32,
    pub apply: &'a dyn Fn(usize, &Elem) -> Elem,
}

impl PieceMap<'_> {
    pub fn identity() -> PieceMap<'static> {
        PieceMap {
            shift: 0,
            apply: &|_, e| e.clone(),
        }
    }
}

/// Matrix of an induced map in quotient coordinates: `rows[target][source]`.
pub type QuotientMatrix = Vec<Vec<Scalar>>;

/// Check that `f` commutes with the left action of every algebra generator
/// on basis elements up to `bound`.
pub fn check_left_module_map(
    alg: &GenMatAlgebra,
    n: &LeftModule,
    f: &PieceMap<'_>,
    bound: u32,
) -> Result<(), MatError> {
    let mut gens = alg.generators();
    gens.push(((1, 1), alg.units[0].clone(), 0));
    gens.push(((2, 2), alg.units[1].clone(), 0));
    for d in (0..=bound).step_by(2) {
        for (e, r, rd) in &gens {
            if d + rd > bound {
                continue;
            }
            let (i, j) = *e;
            for y in n.comps[j - 1].basis(d) {
                let lhs = (f.apply)(i - 1, &(n.act)(*e, r, &y));
                let rhs = (n.act)(*e, r, &(f.apply)(j - 1, &y));
                if lhs != rhs {
                    return Err(MatError::NotModuleMap(format!(
                        "{:?}{} on {}: {} vs {}",
                        e,
                        render_elem(r),
                        render_elem(&y),
                        render_elem(&lhs),
                        render_elem(&rhs)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The map `f (x) g` on the tensor quotient, degree by degree.
///
/// Descent is verified: every relation must map into the relation span of
/// the target degree. Degrees whose image exceeds the bound are skipped.
pub fn induced_map(
    t: &TensorQuotient,
    m: &RightModule,
    n: &LeftModule,
    f: &PieceMap<'_>,
    g: &PieceMap<'_>,
) -> Result<Vec<(u32, QuotientMatrix)>, MatError> {
    let shift = f.shift + g.shift;
    let mut out = Vec::new();
    for src in &t.degrees {
        let Some(dst) = t.at(src.degree + shift) else {
            continue;
        };
        let image = |v: &SparseVec| -> Result<SparseVec, MatError> {
            let mut acc = SparseVec::new();
            for &(s, a, b, off) in &src.layout.blocks {
                let bm = m.comps[s].basis(a);
                let bn = n.comps[s].basis(b);
                let w = bn.len();
                for (k, c) in v.range(off..off + bm.len() * w) {
                    let (i, j) = ((k - off) / w, (k - off) % w);
                    let fx = (f.apply)(s, &bm[i]);
                    let gy = (g.apply)(s, &bn[j]);
                    let piece =
                        dst.layout
                            .tensor(m, n, s, &fx, a + f.shift, &gy, b + g.shift)?;
                    axpy(&mut acc, c, &piece);
                }
            }
            Ok(acc)
        };
        for rel in &src.relations {
            let im = image(rel)?;
            if !dst.echelon.contains(&im) {
                return Err(MatError::NotDescending {
                    degree: src.degree,
                    detail: format!("relation with {} terms leaves the relation span", rel.len()),
                });
            }
        }
        let cols: Vec<Vec<Scalar>> = src
            .free_columns()
            .into_iter()
            .map(|k| {
                let unit: SparseVec = [(k, Scalar::from_integer(1.into()))].into_iter().collect();
                image(&unit).map(|im| dst.quotient_coords(im))
            })
            .collect::<Result<_, _>>()?;
        let rows = dst.dim;
        let matrix = (0..rows)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        out.push((src.degree, matrix));
    }
    Ok(out)
}

/// Product of quotient matrices, `a` after `b`.
pub fn compose(a: &QuotientMatrix, b: &QuotientMatrix) -> QuotientMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    (0..inner).fold(Scalar::zero(), |acc, k| acc + &row[k] * &b[k][c])
                })
                .collect()
        })
        .collect()
}
