//! Truncated cohomology of the cochain complexes of `gc_N`.
//!
//! A truncation keeps the tuples of level at most `L` and, per tuple, the
//! values of homogeneous degree inside a [`DegreeWindow`]. The cocycle space
//! `K` is the projection to level `≤ L` of the cochains of level `≤ L + margin`
//! whose differential vanishes on every tuple of level `≤ L + margin`; the
//! coboundary space `B` is the image of the `(q-1)`-cochains of level `≤ L`.
//! The reported `dim_H` is `dim (K + B) − dim B`: a dimension of a truncated
//! complex, not a certified cohomology dimension.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraDescriptor, GeneratorIndex};
use crate::cochain::{
    canonical_tuples, differential, reduce_value, reduced_differential, symmetrize, tau1, tau2, tuple_weight,
    value_variables, Cochain, CochainError, DifferentialPlan, GeneratorTuple, LeibnizCochain, PlanMode,
};
use crate::linalg::{Certificate, Echelon, Insertion, SparseRationalMatrix, SparseVector};
use crate::modules::{ModuleDescriptor, ModuleElement};
use crate::par;
use crate::poly::{Monomial, Poly, Var};
use crate::rational::{binomial, rat, ratio, Rational};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error("not a cocycle: {residuals} nonzero residual(s) up to level {level}")]
    NotCocycle { residuals: usize, level: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown builtin cochain `{0}`")]
    UnknownBuiltin(String),
}

/// Allowed homogeneous degrees `p`: on a tuple of level `l` a value has
/// degree `p + l` in the `λ_i` (and `∂` for free modules). `min = None`
/// admits every degree down to 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeWindow {
    pub min: Option<i64>,
    pub max: i64,
}

impl DegreeWindow {
    pub fn exact(p: i64) -> Self {
        DegreeWindow { min: Some(p), max: p }
    }

    pub fn range(min: i64, max: i64) -> Self {
        DegreeWindow { min: Some(min), max }
    }

    pub fn at_most(max: i64) -> Self {
        DegreeWindow { min: None, max }
    }

    pub fn widened(self, extra: i64) -> Self {
        DegreeWindow {
            min: self.min,
            max: self.max + extra,
        }
    }

    /// Total polynomial degrees allowed on a tuple of the given level.
    pub fn degrees_at(&self, level: usize) -> std::ops::RangeInclusive<u32> {
        let l = level as i64;
        let lo = self.min.map_or(0, |m| (m + l).max(0));
        let hi = self.max + l;
        if hi < lo {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        lo as u32..=hi as u32
    }
}

/// Whether the differential of the complex preserves the homogeneous degree
/// exactly (otherwise it only lowers it, and windows must be of the form
/// "degree at most").
pub fn complex_is_graded(module: &ModuleDescriptor, reduced: bool) -> bool {
    match module {
        ModuleDescriptor::Trivial => true,
        ModuleDescriptor::TwistedScalar { .. } => !reduced,
        _ => module.is_graded(),
    }
}

/// The default window: degree 0 for the basic trivial complex (the only degree
/// carrying cohomology), degrees 0 and 1 for the reduced trivial complex (the
/// constant 0-cochain and `ψ′`), otherwise every degree up to 1.
pub fn default_window(module: &ModuleDescriptor, reduced: bool) -> DegreeWindow {
    match (module, reduced) {
        (ModuleDescriptor::Trivial, false) => DegreeWindow::exact(0),
        (ModuleDescriptor::Trivial, true) => DegreeWindow::range(0, 1),
        _ => DegreeWindow::at_most(1),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncationSpec {
    pub q: usize,
    pub n: usize,
    pub level: usize,
    pub margin: usize,
    pub module: ModuleDescriptor,
    pub reduced: bool,
    pub window: DegreeWindow,
}

impl TruncationSpec {
    pub fn new(q: usize, n: usize, level: usize, module: ModuleDescriptor, reduced: bool) -> Self {
        let window = default_window(&module, reduced);
        TruncationSpec {
            q,
            n,
            level,
            margin: 1,
            module,
            reduced,
            window,
        }
    }

    pub fn with_margin(mut self, margin: usize) -> Self {
        self.margin = margin;
        self
    }

    pub fn with_window(mut self, window: DegreeWindow) -> Self {
        self.window = window;
        self
    }

    pub fn with_degree(mut self, q: usize) -> Self {
        self.q = q;
        self
    }

    pub fn with_level(mut self, level: usize) -> Self {
        self.level = level;
        self
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        AlgebraDescriptor::gc(self.n)
    }

    /// Window for the `(q-1)`-cochains whose images form the coboundaries: one
    /// degree wider when the differential only filters degrees.
    pub fn primitive_window(&self) -> DegreeWindow {
        if complex_is_graded(&self.module, self.reduced) {
            self.window
        } else {
            self.window.widened(1)
        }
    }

    fn empty_cochain(&self, q: usize, level: usize) -> Result<Cochain, CochainError> {
        Cochain::zero(q, self.algebra(), self.module.clone(), self.reduced, level)
    }
}

/// One spanning value on one canonical tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement {
    pub tuple: GeneratorTuple,
    pub value: ModuleElement,
}

/// All monomials of total degree `d` in `vars`.
pub fn monomials_of_degree(vars: &[Var], d: u32) -> Vec<Monomial> {
    fn rec(vars: &[Var], d: u32, cur: &mut Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
        match vars {
            [] => {
                if d == 0 {
                    out.push(Monomial::from_exponents(cur.clone()));
                }
            }
            [v, rest @ ..] => {
                for e in (0..=d).rev() {
                    if e > 0 {
                        cur.push((*v, e));
                    }
                    rec(rest, d - e, cur, out);
                    if e > 0 {
                        cur.pop();
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, d, &mut Vec::new(), &mut out);
    out
}

fn normal_form(module: &ModuleDescriptor, q: usize, reduced: bool, t: &GeneratorTuple, v: &ModuleElement) -> ModuleElement {
    let w = symmetrize(t, v);
    if reduced {
        reduce_value(module, q, &w)
    } else {
        w
    }
}

fn local_vector(v: &ModuleElement, index: &mut BTreeMap<(usize, Monomial), usize>) -> SparseVector {
    let mut out = SparseVector::new();
    for (k, p) in v.components.iter().enumerate() {
        for (m, c) in p.terms() {
            let next = index.len();
            let i = *index.entry((k, m.clone())).or_insert(next);
            out.insert(i, c.clone());
        }
    }
    out
}

/// A basis of the truncated `q`-cochains: canonical tuples of level at most
/// `level`, values of degree inside `window`.
pub fn enumerate_basis(
    spec: &TruncationSpec,
    q: usize,
    level: usize,
    window: DegreeWindow,
) -> Result<Vec<BasisElement>, EngineError> {
    spec.empty_cochain(q, level)?;
    let module = &spec.module;
    let vars = value_variables(module, q, spec.reduced);
    let tuples = canonical_tuples(spec.n, q, level);
    let per_tuple = par::map(&tuples, |t| {
        let mut out = Vec::new();
        let mut ech = Echelon::new();
        let mut index = BTreeMap::new();
        for d in window.degrees_at(t.level()) {
            for m in monomials_of_degree(&vars, d) {
                for k in 0..module.rank() {
                    let raw = ModuleElement::basis(module.rank(), k, Poly::term(Rational::one(), m.clone()));
                    let v = normal_form(module, q, spec.reduced, t, &raw);
                    if v.is_zero() {
                        continue;
                    }
                    if let Insertion::Pivot(_) = ech.insert(&local_vector(&v, &mut index)) {
                        out.push(BasisElement { tuple: t.clone(), value: v });
                    }
                }
            }
        }
        out
    });
    Ok(per_tuple.into_iter().flatten().collect())
}

/// Global coordinates `(tuple, component, monomial)` for cochain values.
#[derive(Clone, Debug, Default)]
pub struct Coordinates {
    index: HashMap<(GeneratorTuple, usize, Monomial), usize>,
    keys: Vec<(GeneratorTuple, usize, Monomial)>,
}

impl Coordinates {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: usize) -> &(GeneratorTuple, usize, Monomial) {
        &self.keys[i]
    }

    fn intern(&mut self, t: &GeneratorTuple, k: usize, m: &Monomial) -> usize {
        if let Some(i) = self.index.get(&(t.clone(), k, m.clone())) {
            return *i;
        }
        let i = self.keys.len();
        self.keys.push((t.clone(), k, m.clone()));
        self.index.insert((t.clone(), k, m.clone()), i);
        i
    }

    pub fn add_value(&mut self, out: &mut SparseVector, t: &GeneratorTuple, v: &ModuleElement) {
        for (k, p) in v.components.iter().enumerate() {
            for (m, c) in p.terms() {
                let i = self.intern(t, k, m);
                let e = out.entry(i).or_insert_with(Rational::zero);
                *e += c;
                if e.is_zero() {
                    out.remove(&i);
                }
            }
        }
    }

    pub fn vector_of(&mut self, c: &Cochain) -> SparseVector {
        let mut out = SparseVector::new();
        for (t, v) in c.values() {
            self.add_value(&mut out, t, v);
        }
        out
    }

    /// Readable name of a coordinate, e.g. `J[0,1,1] J[2,1,1] : e1 : l1^2`.
    pub fn describe(&self, i: usize) -> String {
        let (t, k, m) = &self.keys[i];
        format!("{t} : e{} : {}", k + 1, Poly::term(Rational::one(), m.clone()))
    }

    /// Assemble a cochain from a coordinate vector, keeping tuples of level at
    /// most `max_level`.
    pub fn cochain(&self, template: &Cochain, v: &SparseVector, max_level: usize) -> Cochain {
        let mut values: BTreeMap<GeneratorTuple, ModuleElement> = BTreeMap::new();
        let rank = template.module_rank();
        for (i, c) in v {
            let (t, k, m) = &self.keys[*i];
            if t.level() > max_level {
                continue;
            }
            let slot = values.entry(t.clone()).or_insert_with(|| ModuleElement::zero(rank));
            slot.components[*k].add_term(m.clone(), c.clone());
        }
        let mut out = template.zero_like();
        out.level_bound = max_level;
        for (t, w) in values {
            out.add_canonical(t, &w);
        }
        out
    }
}

/// The differential from the span of `basis` into `(q+1)`-cochains on tuples
/// of level at most `out_level`, as columns over `coords`.
pub fn assemble_differential_matrix(
    spec: &TruncationSpec,
    q: usize,
    basis: &[BasisElement],
    out_level: usize,
    coords: &mut Coordinates,
) -> Result<SparseRationalMatrix, EngineError> {
    assemble_differential_matrix_with(spec, q, basis, out_level, coords, Execution::Parallel)
}

/// How the columns of a differential matrix are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    /// Through [`par::map`]: data-parallel when the `parallel` feature is on.
    Parallel,
    /// Always on the calling thread.
    Sequential,
}

/// [`assemble_differential_matrix`] with an explicit execution strategy; the
/// result does not depend on the strategy.
pub fn assemble_differential_matrix_with(
    spec: &TruncationSpec,
    q: usize,
    basis: &[BasisElement],
    out_level: usize,
    coords: &mut Coordinates,
    execution: Execution,
) -> Result<SparseRationalMatrix, EngineError> {
    let plan = DifferentialPlan::new(&spec.algebra(), &spec.module, q, out_level, PlanMode::Skew)?;
    let module = &spec.module;
    let reduced = spec.reduced;
    let column = |b: &BasisElement| {
        let src = if reduced {
            symmetrize(&b.tuple, &b.value)
        } else {
            b.value.clone()
        };
        plan.apply_single(&b.tuple, &src)
            .into_iter()
            .map(|(oi, v)| {
                let v = if reduced { reduce_value(module, q + 1, &v) } else { v };
                (oi, v)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect::<Vec<_>>()
    };
    let images = match execution {
        Execution::Parallel => par::map(basis, column),
        Execution::Sequential => par::map_sequential(basis, column),
    };
    let mut columns = Vec::with_capacity(basis.len());
    for image in images {
        let mut col = SparseVector::new();
        for (oi, v) in image {
            coords.add_value(&mut col, plan.output_tuple(oi), &v);
        }
        columns.push(col);
    }
    Ok(SparseRationalMatrix::new(coords.len(), columns))
}

/// Kernel basis and rank of a matrix.
pub fn kernel_and_rank(m: &SparseRationalMatrix) -> (Vec<SparseVector>, usize) {
    let kernel = m.kernel();
    let rank = m.ncols() - kernel.len();
    (kernel, rank)
}

fn combine(basis: &[BasisElement], coeffs: &SparseVector, coords: &mut Coordinates, max_level: usize) -> SparseVector {
    let mut out = SparseVector::new();
    for (i, c) in coeffs {
        let b = &basis[*i];
        if b.tuple.level() <= max_level {
            coords.add_value(&mut out, &b.tuple, &b.value.scale(c));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyReport {
    pub q: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub level: usize,
    pub margin: usize,
    pub module: String,
    pub reduced: bool,
    pub dim_kernel: usize,
    pub dim_image: usize,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
    pub stabilized: bool,
    /// Cocycles spanning a complement of the coboundaries.
    #[serde(skip)]
    pub representatives: Vec<Cochain>,
}

/// Truncated cohomology at `spec`, without the stabilization comparison.
fn truncated(spec: &TruncationSpec) -> Result<(usize, usize, usize, Vec<Cochain>), EngineError> {
    let q = spec.q;
    let top = spec.level + spec.margin;
    let template = spec.empty_cochain(q, spec.level)?;
    let mut coords = Coordinates::default();

    // coboundaries: images of (q-1)-cochains of level ≤ L, on level ≤ L
    let mut boundaries = Vec::new();
    if q > 0 {
        let prev = enumerate_basis(spec, q - 1, spec.level, spec.primitive_window())?;
        let mut out_coords = Coordinates::default();
        let m = assemble_differential_matrix(spec, q - 1, &prev, spec.level, &mut out_coords)?;
        for col in &m.columns {
            let mut v = SparseVector::new();
            for (i, c) in col {
                let (t, k, mono) = out_coords.key(*i).clone();
                let j = coords.intern(&t, k, &mono);
                v.insert(j, c.clone());
            }
            boundaries.push(v);
        }
    }

    // cocycles: kernel at level ≤ L + margin, projected to level ≤ L
    let basis = enumerate_basis(spec, q, top, spec.window)?;
    let mut scratch = Coordinates::default();
    let m = assemble_differential_matrix(spec, q, &basis, top, &mut scratch)?;
    let (kernel, _) = kernel_and_rank(&m);

    let mut ech = Echelon::new();
    for b in &boundaries {
        ech.insert(b);
    }
    let mut k_ech = Echelon::new();
    let mut dim_k = 0;
    let mut dim_h = 0;
    let mut reps = Vec::new();
    for r in &kernel {
        let v = combine(&basis, r, &mut coords, spec.level);
        if v.is_empty() {
            continue;
        }
        if let Insertion::Pivot(_) = k_ech.insert(&v) {
            dim_k += 1;
            if let Insertion::Pivot(_) = ech.insert(&v) {
                dim_h += 1;
                reps.push(coords.cochain(&template, &v, spec.level));
            }
        }
    }
    Ok((dim_k, dim_k - dim_h, dim_h, reps))
}

pub fn cohomology_dim(spec: &TruncationSpec) -> Result<CohomologyReport, EngineError> {
    let (dim_kernel, dim_image, dim_h, representatives) = truncated(spec)?;
    let stabilized = if spec.level == 0 {
        false
    } else {
        truncated(&spec.clone().with_level(spec.level - 1))?.2 == dim_h
    };
    Ok(CohomologyReport {
        q: spec.q,
        n: spec.n,
        level: spec.level,
        margin: spec.margin,
        module: spec.module.to_string(),
        reduced: spec.reduced,
        dim_kernel,
        dim_image,
        dim_h,
        stabilized,
        representatives,
    })
}

/// The differential of a cochain on tuples up to a level, with its nonzero values.
#[derive(Clone, Debug)]
pub struct CocycleCheck {
    pub level: usize,
    pub residual: Cochain,
}

impl CocycleCheck {
    pub fn is_cocycle(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn residual_count(&self) -> usize {
        self.residual.support_len()
    }
}

/// `dγ` (or the reduced differential) on every canonical tuple of level at most `level`.
pub fn verify_cocycle(c: &Cochain, level: usize) -> Result<CocycleCheck, EngineError> {
    let residual = if c.reduced {
        reduced_differential(c, level)?
    } else {
        differential(c, level)?
    };
    Ok(CocycleCheck { level, residual })
}

/// A proof that `dφ = γ` has no solution in the truncated space: a functional
/// `y` on the truncated `q`-cochain values that kills every column of the
/// system but not `γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct InfeasibilityCertificate {
    pub level: usize,
    pub entries: Vec<(String, Rational)>,
    pub pairing: Rational,
    /// Whether the certificate was re-checked exactly against the system.
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub enum PrimitiveResult {
    Found(Cochain),
    Infeasible(InfeasibilityCertificate),
}

impl PrimitiveResult {
    pub fn is_found(&self) -> bool {
        matches!(self, PrimitiveResult::Found(_))
    }
}

/// Solve `dφ = γ` on tuples of level at most `spec.level`, with `φ` in the
/// truncated `(q-1)`-cochains of `spec` (degrees in the primitive window).
pub fn find_primitive(c: &Cochain, spec: &TruncationSpec) -> Result<PrimitiveResult, EngineError> {
    if c.q == 0 {
        return Err(EngineError::Unsupported("0-cochains have no primitive".into()));
    }
    if c.reduced != spec.reduced || c.module != spec.module || c.rank() != spec.n {
        return Err(EngineError::Unsupported("cochain does not match the truncation".into()));
    }
    let q = c.q;
    let basis = enumerate_basis(spec, q - 1, spec.level, spec.primitive_window())?;
    let mut coords = Coordinates::default();
    let m = assemble_differential_matrix(spec, q - 1, &basis, spec.level, &mut coords)?;
    let target = coords.vector_of(&c.restrict(spec.level));
    let m = SparseRationalMatrix::new(coords.len(), m.columns);
    match m.solve(&target) {
        Ok(x) => {
            let template = spec.empty_cochain(q - 1, spec.level)?;
            let mut phi_coords = Coordinates::default();
            let v = combine(&basis, &x, &mut phi_coords, spec.level);
            Ok(PrimitiveResult::Found(phi_coords.cochain(&template, &v, spec.level)))
        }
        Err(cert) => {
            let verified = m.verify_certificate(&target, &cert);
            let Certificate { y, pairing } = cert;
            Ok(PrimitiveResult::Infeasible(InfeasibilityCertificate {
                level: spec.level,
                entries: y.iter().map(|(i, x)| (coords.describe(*i), x.clone())).collect(),
                pairing,
                verified,
            }))
        }
    }
}

/// `m·c^{(m−1,n)} + n·c^{(m,n−1)} − (C(m, m+n) − (−1)^{m+n} C(n, m+n))` for the
/// coefficients `c^{(m,n)} = (−1)^n m! n! / (m+n+1)!` of `ψ′` (with `c_{AB} = 1`);
/// `C(a, b)` is the binomial coefficient "a choose b", zero when `b > a`.
pub fn psi_recursion_residual(m: usize, n: usize) -> Rational {
    let c = |a: i64, b: i64| -> Rational {
        if a < 0 || b < 0 {
            Rational::zero()
        } else {
            crate::algebra::central_coefficient(a as usize, b as usize)
        }
    };
    let (mi, ni) = (m as i64, n as i64);
    let lhs = rat(mi) * c(mi - 1, ni) + rat(ni) * c(mi, ni - 1);
    let s = if (m + n) % 2 == 0 { rat(1) } else { rat(-1) };
    let rhs = binomial(mi, mi + ni) - s * binomial(ni, mi + ni);
    lhs - rhs
}

/// The reduced 2-cocycle `ψ′_λ(J^m_A, J^n_B) = (−1)^n m! n!/(m+n+1)! tr(AB) λ^{m+n+1}`
/// on all tuples of level at most `level`.
pub fn psi_prime(n: usize, level: usize) -> Result<Cochain, EngineError> {
    let mut c = Cochain::zero(2, AlgebraDescriptor::gc(n), ModuleDescriptor::Trivial, true, level)?;
    for t in canonical_tuples(n, 2, level) {
        let (a, b) = (t.entries()[0], t.entries()[1]);
        if !a.label.trace_product(b.label) {
            continue;
        }
        let coef = crate::algebra::central_coefficient(a.n, b.n);
        let v = Poly::lambda(1).pow((a.n + b.n + 1) as u32).scale(&coef);
        c.insert(&[a, b], ModuleElement::scalar(v))?;
    }
    c.level_bound = level;
    Ok(c)
}

/// The basic 3-cochain `γ̄` of `gc_1`: on canonical `(J^0, J^0, J^n)` with
/// `n ≥ 1` the value `λ_2^n − λ_1^n`, zero on every other canonical tuple.
pub fn gamma_bar(level: usize) -> Result<Cochain, EngineError> {
    let mut c = Cochain::zero(3, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, false, level)?;
    for k in 1..=level {
        let v = &Poly::lambda(2).pow(k as u32) - &Poly::lambda(1).pow(k as u32);
        let j = GeneratorIndex::gc1;
        c.insert(&[j(0), j(0), j(k)], ModuleElement::scalar(v))?;
    }
    c.level_bound = level;
    Ok(c)
}

/// The Leibniz 2-cochain of `gc_1` with `f(J^0, J^0) = 1` and zero elsewhere.
pub fn leibniz_f() -> Result<LeibnizCochain, EngineError> {
    let mut f = LeibnizCochain::zero(2, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, 0)?;
    let j0 = GeneratorIndex::gc1(0);
    f.insert(&[j0, j0], ModuleElement::scalar(Poly::one()))?;
    Ok(f)
}

/// Builtin cochains by name: `psi-prime`, `psi-prime-basic` (a basic lift of
/// `ψ′`), `gamma-bar`.
pub fn builtin_cocycle(name: &str, n: usize, level: usize) -> Result<Cochain, EngineError> {
    match name.replace('_', "-").as_str() {
        "psi-prime" => psi_prime(n, level),
        "psi-prime-basic" => Ok(psi_prime(n, level)?.lift()?),
        "gamma-bar" => {
            if n != 1 {
                return Err(EngineError::Unsupported("gamma-bar is defined for N = 1".into()));
            }
            gamma_bar(level)
        }
        other => Err(EngineError::UnknownBuiltin(other.to_string())),
    }
}

fn require_cocycle(c: &Cochain, level: usize) -> Result<(), EngineError> {
    let check = verify_cocycle(c, level)?;
    if !check.is_cocycle() {
        return Err(EngineError::NotCocycle {
            residuals: check.residual_count(),
            level,
        });
    }
    Ok(())
}

/// `γ − d(Σ_{p≠0} p^{-1} τ_1 γ^{(p)})` on tuples of level at most `level`:
/// a cohomologous cocycle with only the degree-0 component. For `N ≥ 2`
/// the values of `γ` must be known through `level + 1`.
pub fn normalize_degree_zero(c: &Cochain, level: usize) -> Result<Cochain, EngineError> {
    if c.reduced || !c.module.acts_trivially() || c.module.partial_scalar() != Some(Rational::zero()) {
        return Err(EngineError::Unsupported("degree normalization needs basic trivial coefficients".into()));
    }
    require_cocycle(c, c.level_bound)?;
    let mut phi = match c.q {
        0 => return Ok(c.restrict(level)),
        q => c.zero_of_degree(q - 1, c.level_bound),
    };
    for p in c.degrees() {
        if p == 0 {
            continue;
        }
        if let Some(t) = tau1(&c.degree_component(p))? {
            phi = phi.add(&t.scale(&ratio(1, p)))?;
        }
    }
    Ok(c.restrict(level).sub(&differential(&phi, level)?)?)
}

/// `γ − d(Σ_{w≠0} w^{-1} τ_2 γ_w)` on tuples of level at most `level`, where
/// `γ_w` is the part of `γ` on tuples of weight `w`: a cohomologous cocycle
/// vanishing on every tuple of nonzero weight.
pub fn normalize_weight_zero(c: &Cochain, level: usize) -> Result<Cochain, EngineError> {
    if c.reduced || !c.module.acts_trivially() || c.module.partial_scalar() != Some(Rational::zero()) {
        return Err(EngineError::Unsupported("weight normalization needs basic trivial coefficients".into()));
    }
    if c.rank() < 2 {
        return Err(EngineError::Unsupported("weight normalization needs N ≥ 2".into()));
    }
    let mut phi = match c.q {
        0 => return Ok(c.restrict(level)),
        q => c.zero_of_degree(q - 1, c.level_bound),
    };
    let mut weights: Vec<i64> = c.values().map(|(t, _)| tuple_weight(t)).collect();
    weights.sort_unstable();
    weights.dedup();
    for w in weights.into_iter().filter(|w| *w != 0) {
        let part = c.map_values(|t, v| {
            if tuple_weight(t) == w {
                v.clone()
            } else {
                ModuleElement::zero(v.rank())
            }
        });
        if let Some(t) = tau2(&part)? {
            phi = phi.add(&t.scale(&ratio(1, w)))?;
        }
    }
    Ok(c.restrict(level).sub(&differential(&phi, level)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_cochain, rng_from_seed, RandomShape};

    #[test]
    fn monomial_counts() {
        let vars = [Var::lambda(1), Var::lambda(2), Var::lambda(3)];
        // C(d + 2, 2)
        for (d, n) in [(0, 1), (1, 3), (2, 6), (3, 10)] {
            assert_eq!(monomials_of_degree(&vars, d).len(), n);
        }
        assert_eq!(monomials_of_degree(&[], 0).len(), 1);
        assert!(monomials_of_degree(&[], 2).is_empty());
    }

    #[test]
    fn windows() {
        assert_eq!(DegreeWindow::exact(0).degrees_at(3), 3..=3);
        assert_eq!(DegreeWindow::range(0, 1).degrees_at(2), 2..=3);
        assert_eq!(DegreeWindow::at_most(1).degrees_at(2), 0..=3);
        assert!(complex_is_graded(&ModuleDescriptor::Trivial, true));
        assert!(!complex_is_graded(&ModuleDescriptor::twisted(rat(1)), true));
        assert!(complex_is_graded(&ModuleDescriptor::free(1, rat(0)), true));
        assert!(!complex_is_graded(&ModuleDescriptor::free(1, ratio(1, 2)), true));
    }

    #[test]
    fn basis_of_trivial_two_cochains() {
        // N = 1, level 0: on (J^0, J^0) skew-symmetry kills the constant and
        // leaves the antisymmetric linear value.
        let spec = TruncationSpec::new(2, 1, 0, ModuleDescriptor::Trivial, false);
        let b = enumerate_basis(&spec, 2, 0, DegreeWindow::exact(1)).unwrap();
        assert_eq!(b.len(), 1);
        let half = ratio(1, 2);
        assert_eq!(b[0].value.components[0], (&Poly::lambda(1) - &Poly::lambda(2)).scale(&half));
        let b0 = enumerate_basis(&spec, 2, 0, DegreeWindow::exact(0)).unwrap();
        assert!(b0.is_empty());
    }

    #[test]
    fn parallel_and_sequential_assembly_agree() {
        let spec = TruncationSpec::new(1, 2, 2, ModuleDescriptor::natural(2), true);
        let basis = enumerate_basis(&spec, 1, 2, spec.window.clone()).unwrap();
        let mut a = Coordinates::default();
        let mut b = Coordinates::default();
        let ma = assemble_differential_matrix_with(&spec, 1, &basis, 2, &mut a, Execution::Parallel).unwrap();
        let mb = assemble_differential_matrix_with(&spec, 1, &basis, 2, &mut b, Execution::Sequential).unwrap();
        assert_eq!(ma, mb);
        assert!(ma.nnz() > 0);
    }

    #[test]
    fn coboundaries_have_primitives() {
        let mut rng = rng_from_seed(11);
        let shape = RandomShape::new(1, 1, ModuleDescriptor::Trivial, false, 2).with_degrees([0]);
        let phi = random_cochain(&mut rng, &shape).unwrap();
        let c = differential(&phi, 3).unwrap();
        assert!(verify_cocycle(&c, 3).unwrap().is_cocycle());
        let spec = TruncationSpec::new(2, 1, 2, ModuleDescriptor::Trivial, false);
        match find_primitive(&c.restrict(2), &spec).unwrap() {
            PrimitiveResult::Found(p) => assert_eq!(differential(&p, 2).unwrap(), c.restrict(2)),
            PrimitiveResult::Infeasible(_) => panic!("a coboundary must have a primitive"),
        }
    }

    #[test]
    fn non_cocycle_is_rejected() {
        // values known through level 2, so the failure at level 2 is visible
        let mut c = Cochain::zero(2, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, false, 2).unwrap();
        let j = GeneratorIndex::gc1;
        c.insert(&[j(0), j(1)], ModuleElement::scalar(Poly::one())).unwrap();
        assert!(!verify_cocycle(&c, 2).unwrap().is_cocycle());
        let r = normalize_degree_zero(&c, 1);
        assert!(matches!(r, Err(EngineError::NotCocycle { .. })), "{r:?}");
    }

    #[test]
    fn psi_prime_is_a_nontrivial_reduced_cocycle() {
        let psi = psi_prime(1, 3).unwrap();
        assert!(verify_cocycle(&psi, 3).unwrap().is_cocycle());
        let spec = TruncationSpec::new(2, 1, 2, ModuleDescriptor::Trivial, true);
        match find_primitive(&psi.restrict(2), &spec).unwrap() {
            PrimitiveResult::Infeasible(cert) => assert!(cert.verified),
            PrimitiveResult::Found(_) => panic!("ψ′ is not a coboundary"),
        }
    }

    #[test]
    fn builtins_by_name() {
        assert!(builtin_cocycle("psi-prime", 2, 1).is_ok());
        assert!(builtin_cocycle("psi_prime_basic", 1, 1).unwrap().reduced == false);
        assert!(matches!(builtin_cocycle("gamma-bar", 2, 1), Err(EngineError::Unsupported(_))));
        assert!(matches!(builtin_cocycle("nope", 1, 1), Err(EngineError::UnknownBuiltin(_))));
    }

    #[test]
    fn psi_recursion_holds() {
        for m in 0..5 {
            for n in 0..5 {
                assert!(psi_recursion_residual(m, n).is_zero(), "({m},{n})");
            }
        }
    }

    #[test]
    fn degree_normalization_keeps_the_class() {
        // a degree-0 cocycle plus the coboundary of a degree-1 cochain
        let mut rng = rng_from_seed(2);
        let shape = RandomShape::new(1, 1, ModuleDescriptor::Trivial, false, 3).with_degrees([1]);
        let phi = random_cochain(&mut rng, &shape).unwrap();
        let c = differential(&phi, 4).unwrap();
        let n = normalize_degree_zero(&c, 3).unwrap();
        assert!(n.degrees().iter().all(|p| *p == 0));
        assert!(n.is_zero());
    }

    #[test]
    fn weight_normalization_kills_nonzero_weights() {
        let mut rng = rng_from_seed(8);
        let shape = RandomShape::new(1, 2, ModuleDescriptor::Trivial, false, 1).with_degrees([0]);
        let phi = random_cochain(&mut rng, &shape).unwrap();
        let c = differential(&phi, 2).unwrap();
        let n = normalize_weight_zero(&c, 2).unwrap();
        assert!(n.values().all(|(t, _)| tuple_weight(t) == 0));
    }

    #[test]
    fn report_serializes_with_fixed_keys() {
        let r = cohomology_dim(&TruncationSpec::new(0, 1, 1, ModuleDescriptor::Trivial, false)).unwrap();
        assert_eq!(r.dim_h, 1);
        let json = serde_json::to_value(&r).unwrap();
        for key in ["q", "N", "L", "margin", "module", "reduced", "dim_kernel", "dim_image", "dim_H", "stabilized"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }
}
