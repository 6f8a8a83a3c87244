//! The conformal algebras `gc_N` (optionally centrally extended) and Virasoro.
//!
//! Elements are finite sums `Σ p_g(λ, μ, ..., ∂) g` over free generators `g`,
//! where `∂` inside a coefficient acts on the generator. General matrices are
//! never stored: `J^n_A` is always expanded over the unit matrices `E_{jk}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::poly::{Poly, Var};
use crate::rational::{binomial, factorial, rat, sign, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix label E[{j},{k}] out of range for N = {n}")]
    LabelOutOfRange { j: usize, k: usize, n: usize },
    #[error("generator {0} does not belong to this algebra")]
    ForeignGenerator(Generator),
    #[error("N must be at least 1")]
    EmptyAlgebra,
}

/// Unit matrix `E_{j,k}`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixLabel {
    pub j: usize,
    pub k: usize,
}

impl MatrixLabel {
    pub fn new(j: usize, k: usize) -> Self {
        MatrixLabel { j, k }
    }

    /// `E_{jk} E_{lm} = δ_{kl} E_{jm}`
    pub fn times(self, other: MatrixLabel) -> Option<MatrixLabel> {
        (self.k == other.j).then_some(MatrixLabel::new(self.j, other.k))
    }

    /// `tr(E_{jk} E_{lm}) = δ_{kl} δ_{jm}`
    pub fn trace_product(self, other: MatrixLabel) -> bool {
        self.k == other.j && self.j == other.k
    }

    /// `k - j`, the eigenvalue of `ad h` for `h = Σ j E_{jj}` up to sign.
    pub fn weight(self) -> i64 {
        self.k as i64 - self.j as i64
    }
}

/// Free generator `J^n_{E_{jk}}`. Ordered by level first, then by matrix entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorIndex {
    pub n: usize,
    pub label: MatrixLabel,
}

impl GeneratorIndex {
    pub fn new(n: usize, j: usize, k: usize) -> Self {
        GeneratorIndex {
            n,
            label: MatrixLabel::new(j, k),
        }
    }

    /// `J^n` of `gc_1`.
    pub fn gc1(n: usize) -> Self {
        GeneratorIndex::new(n, 1, 1)
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J[{},{},{}]", self.n, self.label.j, self.label.k)
    }
}

/// Generators of any of the supported algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    J(GeneratorIndex),
    /// The Virasoro generator `L`.
    L,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::J(g) => g.fmt(f),
            Generator::L => f.write_str("L"),
        }
    }
}

impl From<GeneratorIndex> for Generator {
    fn from(g: GeneratorIndex) -> Self {
        Generator::J(g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    GcN { n: usize, extended: bool },
    Virasoro,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraDescriptor {
    pub kind: AlgebraKind,
    /// Negative-control switch: perturbs the `s = 1` structure constant of
    /// the `gc_N` bracket so that the axiom checks must fail.
    pub corrupted: bool,
}

impl AlgebraDescriptor {
    pub fn gc(n: usize) -> Self {
        AlgebraDescriptor {
            kind: AlgebraKind::GcN { n, extended: false },
            corrupted: false,
        }
    }

    pub fn gc_extended(n: usize) -> Self {
        AlgebraDescriptor {
            kind: AlgebraKind::GcN { n, extended: true },
            corrupted: false,
        }
    }

    pub fn virasoro() -> Self {
        AlgebraDescriptor {
            kind: AlgebraKind::Virasoro,
            corrupted: false,
        }
    }

    pub fn corrupt(mut self) -> Self {
        self.corrupted = true;
        self
    }

    pub fn rank(&self) -> Option<usize> {
        match self.kind {
            AlgebraKind::GcN { n, .. } => Some(n),
            AlgebraKind::Virasoro => None,
        }
    }

    pub fn is_extended(&self) -> bool {
        matches!(self.kind, AlgebraKind::GcN { extended: true, .. })
    }

    pub fn validate(&self, g: &Generator) -> Result<(), AlgebraError> {
        match (self.kind, g) {
            (AlgebraKind::GcN { n, .. }, Generator::J(gi)) => {
                if n == 0 {
                    return Err(AlgebraError::EmptyAlgebra);
                }
                let MatrixLabel { j, k } = gi.label;
                if j == 0 || k == 0 || j > n || k > n {
                    Err(AlgebraError::LabelOutOfRange { j, k, n })
                } else {
                    Ok(())
                }
            }
            (AlgebraKind::Virasoro, Generator::L) => Ok(()),
            _ => Err(AlgebraError::ForeignGenerator(*g)),
        }
    }

    /// All generators of level at most `max_level`, in increasing order.
    pub fn generators_up_to(&self, max_level: usize) -> Vec<Generator> {
        match self.kind {
            AlgebraKind::GcN { n, .. } => all_labels(n)
                .flat_map(|lab| (0..=max_level).map(move |lvl| (lvl, lab)))
                .map(|(lvl, lab)| Generator::J(GeneratorIndex { n: lvl, label: lab }))
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect(),
            AlgebraKind::Virasoro => vec![Generator::L],
        }
    }
}

pub fn all_labels(n: usize) -> impl Iterator<Item = MatrixLabel> + Clone {
    (1..=n).flat_map(move |j| (1..=n).map(move |k| MatrixLabel::new(j, k)))
}

/// `Σ p_g g + c·C`, with `∂` in `p_g` acting on `g`. The central coefficient
/// never contains `∂` since `∂C = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<Generator, Poly>,
    central: Poly,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: impl Into<Generator>) -> Self {
        Self::monomial(g, Poly::one())
    }

    pub fn monomial(g: impl Into<Generator>, coeff: Poly) -> Self {
        let mut e = Self::zero();
        e.add_term(g.into(), &coeff);
        e
    }

    /// The central element `C`.
    pub fn central_unit() -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
            central: Poly::one(),
        }
    }

    /// `J^n_A` for `A = Σ a_{jk} E_{jk}` given as `(j, k, a_{jk})` entries.
    pub fn matrix_generator(n: usize, entries: &[(usize, usize, Rational)]) -> Self {
        let mut e = Self::zero();
        for (j, k, a) in entries {
            e.add_term(Generator::J(GeneratorIndex::new(n, *j, *k)), &Poly::constant(a.clone()));
        }
        e
    }

    /// `J^n_I` for the identity of `gl_N`.
    pub fn identity_generator(level: usize, rank: usize) -> Self {
        let entries: Vec<_> = (1..=rank).map(|j| (j, j, Rational::one())).collect();
        Self::matrix_generator(level, &entries)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &Generator) -> Poly {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn central(&self) -> &Poly {
        &self.central
    }

    pub fn add_term(&mut self, g: Generator, coeff: &Poly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_central(&mut self, coeff: &Poly) {
        self.central += &coeff.set_zero(Var::Partial);
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        for (g, p) in &other.terms {
            self.add_term(*g, p);
        }
        self.central += &other.central;
    }

    pub fn sub_assign(&mut self, other: &AlgebraElement) {
        self.add_assign(&other.scale(&-Rational::one()));
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        self.mul_poly(&Poly::constant(c.clone()))
    }

    /// Multiply every coefficient by `p`; `∂` in `p` acts on the element.
    pub fn mul_poly(&self, p: &Poly) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (g, c) in &self.terms {
            out.add_term(*g, &(c * p));
        }
        out.add_central(&(&self.central * &p.set_zero(Var::Partial)));
        out
    }

    /// Apply `f` to every coefficient (generator and central).
    pub fn map_coefficients(&self, f: impl Fn(&Poly) -> Poly) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (g, c) in &self.terms {
            out.add_term(*g, &f(c));
        }
        out.add_central(&f(&self.central));
        out
    }

    pub fn substitute_var(&self, v: Var, form: &Poly) -> AlgebraElement {
        self.map_coefficients(|c| c.substitute_var(v, form))
    }

    /// `∂·self`
    pub fn partial(&self) -> AlgebraElement {
        self.mul_poly(&Poly::var(Var::Partial))
    }

    /// Drop everything in `∂·gc_N`: only the `∂^0` part of each coefficient survives.
    pub fn modulo_partial(&self) -> AlgebraElement {
        self.map_coefficients(|c| c.coefficient_of(Var::Partial, 0))
    }

    /// Largest total degree of a coefficient monomial in `{λ, ∂}`.
    pub fn max_degree_in_lambda_partial(&self) -> u32 {
        self.terms
            .values()
            .flat_map(|p| p.terms().map(|(m, _)| m.degree_in(|v| matches!(v, Var::AuxLambda | Var::Partial))))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| format!("({c})*{g}"))
            .collect();
        if !self.central.is_zero() {
            parts.push(format!("({})*C", self.central));
        }
        f.write_str(&parts.join(" + "))
    }
}

fn lambda() -> Poly {
    Poly::var(Var::AuxLambda)
}

fn partial() -> Poly {
    Poly::var(Var::Partial)
}

/// `[a_λ b]` on free generators; coefficients are polynomials in `λ` (the
/// [`Var::AuxLambda`] variable) and `∂`.
pub fn bracket_generators(
    alg: &AlgebraDescriptor,
    a: &Generator,
    b: &Generator,
) -> Result<AlgebraElement, AlgebraError> {
    alg.validate(a)?;
    alg.validate(b)?;
    let mut out = AlgebraElement::zero();
    match (a, b) {
        (Generator::L, Generator::L) => {
            out.add_term(Generator::L, &(&partial() + &lambda().scale(&rat(2))));
        }
        (Generator::J(ga), Generator::J(gb)) => {
            let (m, n) = (ga.n as i64, gb.n as i64);
            if let Some(ab) = ga.label.times(gb.label) {
                let shifted = &lambda() + &partial();
                for s in 0..=m {
                    let mut c = binomial(m, s);
                    if alg.corrupted && s == 1 {
                        c += Rational::one();
                    }
                    let g = Generator::J(GeneratorIndex {
                        n: (m + n - s) as usize,
                        label: ab,
                    });
                    out.add_term(g, &shifted.pow(s as u32).scale(&c));
                }
            }
            if let Some(ba) = gb.label.times(ga.label) {
                let neg = -lambda();
                for s in 0..=n {
                    let g = Generator::J(GeneratorIndex {
                        n: (m + n - s) as usize,
                        label: ba,
                    });
                    out.add_term(g, &neg.pow(s as u32).scale(&-binomial(n, s)));
                }
            }
            if alg.is_extended() && ga.label.trace_product(gb.label) {
                out.add_central(&lambda().pow((m + n + 1) as u32).scale(&central_coefficient(ga.n, gb.n)));
            }
        }
        _ => unreachable!("validated"),
    }
    Ok(out)
}

/// `(-1)^n m! n! / (m+n+1)!`
pub fn central_coefficient(m: usize, n: usize) -> Rational {
    let num = factorial(m as u32) * factorial(n as u32);
    let den = factorial((m + n + 1) as u32);
    sign(n as i64) * Rational::new(num, den)
}

/// `[a_x b]` where the bracket variable is replaced by the polynomial `x`.
///
/// Sesquilinearity: `∂` in a coefficient of `a` becomes `-x`, and `∂` in a
/// coefficient of `b` becomes `∂ + x` (acting on the result). Variables other
/// than `∂` in the input coefficients are scalars. Central inputs bracket to zero.
pub fn bracket_at(
    alg: &AlgebraDescriptor,
    a: &AlgebraElement,
    b: &AlgebraElement,
    x: &Poly,
) -> Result<AlgebraElement, AlgebraError> {
    let mut out = AlgebraElement::zero();
    let neg_x = -x;
    let shifted = &partial() + x;
    for (ga, ca) in a.terms() {
        let ca = ca.substitute_var(Var::Partial, &neg_x);
        if ca.is_zero() {
            continue;
        }
        for (gb, cb) in b.terms() {
            let cb = cb.substitute_var(Var::Partial, &shifted);
            let g = bracket_generators(alg, ga, gb)?.substitute_var(Var::AuxLambda, x);
            out.add_assign(&g.mul_poly(&(&ca * &cb)));
        }
    }
    Ok(out)
}

/// `[a_λ b]` with the distinguished bracket variable `λ`.
pub fn bracket(
    alg: &AlgebraDescriptor,
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    bracket_at(alg, a, b, &lambda())
}

/// `[a_λ b] + [b_{-λ-∂} a]`; zero when skew-symmetry holds.
pub fn check_skew_symmetry(
    alg: &AlgebraDescriptor,
    a: &Generator,
    b: &Generator,
) -> Result<AlgebraElement, AlgebraError> {
    let (ea, eb) = (AlgebraElement::generator(*a), AlgebraElement::generator(*b));
    let mut res = bracket(alg, &ea, &eb)?;
    let swapped = bracket_at(alg, &eb, &ea, &Poly::var(Var::AuxMu))?;
    let form = -(&lambda() + &partial());
    res.add_assign(&swapped.substitute_var(Var::AuxMu, &form));
    Ok(res)
}

/// `[a_λ[b_μ c]] - [[a_λ b]_{λ+μ} c] - [b_μ[a_λ c]]`; zero when the Jacobi identity holds.
pub fn check_jacobi(
    alg: &AlgebraDescriptor,
    a: &AlgebraElement,
    b: &AlgebraElement,
    c: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    let lam = lambda();
    let mu = Poly::var(Var::AuxMu);
    let mut res = bracket_at(alg, a, &bracket_at(alg, b, c, &mu)?, &lam)?;
    res.sub_assign(&bracket_at(alg, &bracket_at(alg, a, b, &lam)?, c, &(&lam + &mu))?);
    res.sub_assign(&bracket_at(alg, b, &bracket_at(alg, a, c, &lam)?, &mu)?);
    Ok(res)
}

/// Jacobi residual on three generators.
pub fn check_jacobi_generators(
    alg: &AlgebraDescriptor,
    a: &Generator,
    b: &Generator,
    c: &Generator,
) -> Result<AlgebraElement, AlgebraError> {
    check_jacobi(
        alg,
        &AlgebraElement::generator(*a),
        &AlgebraElement::generator(*b),
        &AlgebraElement::generator(*c),
    )
}

/// Both zero-brackets of `J^0_I` with `a`, at `λ = 0`.
#[derive(Debug, Clone)]
pub struct ZeroBracketResidual {
    /// `[J^0_I {}_0 a] - [a {}_0 J^0_I]` taken literally in `gc_N`.
    pub raw: AlgebraElement,
    /// The same difference in `gc_N / ∂gc_N`, where the 0-bracket is a Lie bracket.
    pub modulo_partial: AlgebraElement,
}

pub fn check_zero_bracket_central(
    alg: &AlgebraDescriptor,
    a: &AlgebraElement,
) -> Result<ZeroBracketResidual, AlgebraError> {
    let n = alg.rank().ok_or(AlgebraError::ForeignGenerator(Generator::L))?;
    let unit = AlgebraElement::identity_generator(0, n);
    let zero = Poly::zero();
    let mut raw = bracket_at(alg, &unit, a, &zero)?;
    raw.sub_assign(&bracket_at(alg, a, &unit, &zero)?);
    let modulo_partial = raw.modulo_partial();
    Ok(ZeroBracketResidual {
        raw,
        modulo_partial,
    })
}

/// A nonzero residual found by [`axiom_residuals`].
#[derive(Clone, Debug)]
pub struct AxiomResidual {
    pub check: &'static str,
    pub generators: String,
    pub value: String,
}

fn generator_level(g: &Generator) -> usize {
    match g {
        Generator::J(gi) => gi.n,
        Generator::L => 0,
    }
}

/// Skew-symmetry on all generator pairs and the Jacobi identity on all
/// generator triples of total level at most `max_level`; for central
/// extensions also the vanishing of brackets with the central element.
/// Returns the nonzero residuals (empty when every check passes).
pub fn axiom_residuals(alg: &AlgebraDescriptor, max_level: usize) -> Result<Vec<AxiomResidual>, AlgebraError> {
    let gens = alg.generators_up_to(max_level);
    let mut pairs = Vec::new();
    let mut triples = Vec::new();
    for a in &gens {
        for b in &gens {
            let ab = generator_level(a) + generator_level(b);
            if ab > max_level {
                continue;
            }
            pairs.push((*a, *b));
            for c in &gens {
                if ab + generator_level(c) <= max_level {
                    triples.push((*a, *b, *c));
                }
            }
        }
    }
    let skew = crate::par::map(&pairs, |(a, b)| {
        check_skew_symmetry(alg, a, b).map(|r| (!r.is_zero()).then(|| AxiomResidual {
            check: "skew-symmetry",
            generators: format!("{a}, {b}"),
            value: format!("{r}"),
        }))
    });
    let jacobi = crate::par::map(&triples, |(a, b, c)| {
        check_jacobi_generators(alg, a, b, c).map(|r| (!r.is_zero()).then(|| AxiomResidual {
            check: "jacobi",
            generators: format!("{a}, {b}, {c}"),
            value: format!("{r}"),
        }))
    });
    let mut out = Vec::new();
    for r in skew.into_iter().chain(jacobi) {
        out.extend(r?);
    }
    if alg.is_extended() {
        let c = AlgebraElement::central_unit();
        for g in &gens {
            let e = AlgebraElement::generator(*g);
            for (x, y) in [(&c, &e), (&e, &c)] {
                let r = bracket(alg, x, y)?;
                if !r.is_zero() {
                    out.push(AxiomResidual {
                        check: "central",
                        generators: format!("C, {g}"),
                        value: format!("{r}"),
                    });
                }
            }
            let r = check_jacobi(alg, &c, &e, &e)?;
            if !r.is_zero() {
                out.push(AxiomResidual {
                    check: "jacobi",
                    generators: format!("C, {g}, {g}"),
                    value: format!("{r}"),
                });
            }
        }
    }
    Ok(out)
}
