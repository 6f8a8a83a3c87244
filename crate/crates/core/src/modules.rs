//! Coefficient modules: trivial `ℂ`, twisted `ℂ_a` and the free module `ℂ^N_α[∂]`.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{bracket_at, AlgebraDescriptor, AlgebraElement, AlgebraError, Generator, GeneratorIndex};
use crate::poly::{Poly, Var};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("module element has {got} components, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generator {gen} is not a gc_{n} generator")]
    IncompatibleGenerator { gen: String, n: usize },
    #[error("cannot parse module `{0}` (expected trivial | twisted:a | natural:N:alpha)")]
    Parse(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleDescriptor {
    Trivial,
    /// `ℂ_a`: `∂` acts as `a ≠ 0`, the algebra acts trivially.
    TwistedScalar { a: Rational },
    /// `ℂ^N_α[∂]` with `J^m_A {}_λ v = (∂+λ+α)^m A v`.
    FreeRankN { n: usize, alpha: Rational },
    /// Test fixture, not a conformal module: the free-module action with every
    /// level-0 generator scaled by `c`, so that `J^0_I {}_λ v |_{λ=0} = c v`.
    ScaledZeroMode { n: usize, alpha: Rational, c: Rational },
}

impl ModuleDescriptor {
    /// `ℂ_a`; `a = 0` gives the trivial module.
    pub fn twisted(a: Rational) -> Self {
        if a.is_zero() {
            ModuleDescriptor::Trivial
        } else {
            ModuleDescriptor::TwistedScalar { a }
        }
    }

    pub fn free(n: usize, alpha: Rational) -> Self {
        ModuleDescriptor::FreeRankN { n, alpha }
    }

    pub fn natural(n: usize) -> Self {
        Self::free(n, Rational::zero())
    }

    pub fn rank(&self) -> usize {
        match self {
            ModuleDescriptor::Trivial | ModuleDescriptor::TwistedScalar { .. } => 1,
            ModuleDescriptor::FreeRankN { n, .. } | ModuleDescriptor::ScaledZeroMode { n, .. } => *n,
        }
    }

    /// Free over `ℂ[∂]`: cochain values carry `∂`.
    pub fn is_free(&self) -> bool {
        matches!(
            self,
            ModuleDescriptor::FreeRankN { .. } | ModuleDescriptor::ScaledZeroMode { .. }
        )
    }

    pub fn acts_trivially(&self) -> bool {
        !self.is_free()
    }

    /// Whether `d` preserves the homogeneous degree of cochain values (so a
    /// single degree can be isolated).
    pub fn is_graded(&self) -> bool {
        match self {
            ModuleDescriptor::Trivial | ModuleDescriptor::TwistedScalar { .. } => true,
            ModuleDescriptor::FreeRankN { alpha, .. } | ModuleDescriptor::ScaledZeroMode { alpha, .. } => {
                alpha.is_zero()
            }
        }
    }

    /// The scalar by which `∂` acts, for scalar modules.
    pub fn partial_scalar(&self) -> Option<Rational> {
        match self {
            ModuleDescriptor::Trivial => Some(Rational::zero()),
            ModuleDescriptor::TwistedScalar { a } => Some(a.clone()),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Result<Self, ModuleError> {
        let bad = || ModuleError::Parse(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["trivial"] => Ok(ModuleDescriptor::Trivial),
            ["twisted", a] => Ok(Self::twisted(parse_rational(a).ok_or_else(bad)?)),
            ["natural", n] => Ok(Self::natural(n.parse().map_err(|_| bad())?)),
            ["natural", n, alpha] | ["free", n, alpha] => {
                let n: usize = n.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                Ok(Self::free(n, parse_rational(alpha).ok_or_else(bad)?))
            }
            ["scaled", n, alpha, c] => Ok(ModuleDescriptor::ScaledZeroMode {
                n: n.parse().map_err(|_| bad())?,
                alpha: parse_rational(alpha).ok_or_else(bad)?,
                c: parse_rational(c).ok_or_else(bad)?,
            }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleDescriptor::Trivial => f.write_str("trivial"),
            ModuleDescriptor::TwistedScalar { a } => write!(f, "twisted:{}", format_rational(a)),
            ModuleDescriptor::FreeRankN { n, alpha } => write!(f, "natural:{n}:{}", format_rational(alpha)),
            ModuleDescriptor::ScaledZeroMode { n, alpha, c } => {
                write!(f, "scaled:{n}:{}:{}", format_rational(alpha), format_rational(c))
            }
        }
    }
}

/// Vector of polynomials, one per module component. For free modules `∂` in a
/// component is the module derivation; scalar modules never contain `∂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    pub components: Vec<Poly>,
}

impl ModuleElement {
    pub fn zero(rank: usize) -> Self {
        ModuleElement {
            components: vec![Poly::zero(); rank],
        }
    }

    pub fn scalar(p: Poly) -> Self {
        ModuleElement { components: vec![p] }
    }

    /// `p·e_k` (0-based `k`).
    pub fn basis(rank: usize, k: usize, p: Poly) -> Self {
        let mut v = Self::zero(rank);
        v.components[k] = p;
        v
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn add_assign(&mut self, other: &ModuleElement) {
        debug_assert_eq!(self.rank(), other.rank());
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &ModuleElement) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            *a -= b;
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleElement, p: &Poly) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            *a += &(b * p);
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> ModuleElement {
        self.map(|c| c * p)
    }

    pub fn scale(&self, c: &Rational) -> ModuleElement {
        self.map(|p| p.scale(c))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> ModuleElement {
        ModuleElement {
            components: self.components.iter().map(f).collect(),
        }
    }
}

fn check_rank(module: &ModuleDescriptor, v: &ModuleElement) -> Result<(), ModuleError> {
    if v.rank() != module.rank() {
        return Err(ModuleError::DimensionMismatch {
            expected: module.rank(),
            got: v.rank(),
        });
    }
    Ok(())
}

/// `g {}_x v` for a free generator `g`, with the action variable replaced by `x`.
pub fn lambda_action(
    module: &ModuleDescriptor,
    g: &GeneratorIndex,
    x: &Poly,
    v: &ModuleElement,
) -> Result<ModuleElement, ModuleError> {
    check_rank(module, v)?;
    let (n, alpha, scale) = match module {
        ModuleDescriptor::Trivial | ModuleDescriptor::TwistedScalar { .. } => {
            return Ok(ModuleElement::zero(v.rank()))
        }
        ModuleDescriptor::FreeRankN { n, alpha } => (*n, alpha, Rational::one()),
        ModuleDescriptor::ScaledZeroMode { n, alpha, c } => {
            (*n, alpha, if g.n == 0 { c.clone() } else { Rational::one() })
        }
    };
    let (j, k) = (g.label.j, g.label.k);
    if j == 0 || k == 0 || j > n || k > n {
        return Err(ModuleError::IncompatibleGenerator {
            gen: g.to_string(),
            n,
        });
    }
    let partial = Poly::var(Var::Partial);
    let shifted = &partial + x;
    let factor = (&shifted + &Poly::constant(alpha.clone())).pow(g.n as u32).scale(&scale);
    // a_x (p(∂) v) = p(∂ + x) (a_x v)
    let moved = v.components[k - 1].substitute_var(Var::Partial, &shifted);
    Ok(ModuleElement::basis(n, j - 1, &factor * &moved))
}

/// `a {}_x v` for an algebra element; `∂` in a coefficient of `a` becomes `-x`.
pub fn act(
    module: &ModuleDescriptor,
    a: &AlgebraElement,
    x: &Poly,
    v: &ModuleElement,
) -> Result<ModuleElement, ModuleError> {
    check_rank(module, v)?;
    let mut out = ModuleElement::zero(v.rank());
    if module.acts_trivially() {
        return Ok(out);
    }
    let neg = -x;
    for (g, c) in a.terms() {
        let gi = match g {
            Generator::J(gi) => gi,
            Generator::L => {
                return Err(ModuleError::IncompatibleGenerator {
                    gen: g.to_string(),
                    n: module.rank(),
                })
            }
        };
        let c = c.substitute_var(Var::Partial, &neg);
        out.add_scaled(&lambda_action(module, gi, x, v)?, &c);
    }
    Ok(out)
}

/// `∂_M v`.
pub fn partial_action(module: &ModuleDescriptor, v: &ModuleElement) -> ModuleElement {
    match module.partial_scalar() {
        Some(a) => v.scale(&a),
        None => v.mul_poly(&Poly::var(Var::Partial)),
    }
}

/// A named nonzero residual from an axiom check.
#[derive(Clone, Debug)]
pub struct Residual {
    pub check: &'static str,
    pub context: String,
    pub value: String,
}

fn module_test_vectors(module: &ModuleDescriptor) -> Vec<ModuleElement> {
    let r = module.rank();
    if module.is_free() {
        (0..r)
            .flat_map(|k| {
                [
                    ModuleElement::basis(r, k, Poly::one()),
                    ModuleElement::basis(r, k, Poly::var(Var::Partial)),
                ]
            })
            .collect()
    } else {
        vec![ModuleElement::scalar(Poly::one())]
    }
}

/// Residuals of the module axioms over all generator pairs of total level at
/// most `max_level` and a set of test vectors. Empty means every check passed.
pub fn check_module_axioms(
    module: &ModuleDescriptor,
    algebra_rank: usize,
    max_level: usize,
) -> Result<Vec<Residual>, ModuleError> {
    if module.is_free() && module.rank() != algebra_rank {
        return Err(ModuleError::DimensionMismatch {
            expected: algebra_rank,
            got: module.rank(),
        });
    }
    let alg = AlgebraDescriptor::gc(algebra_rank);
    let lam = Poly::var(Var::AuxLambda);
    let mu = Poly::var(Var::AuxMu);
    let gens = alg.generators_up_to(max_level);
    let vectors = module_test_vectors(module);
    let mut out = Vec::new();
    let level = |g: &Generator| match g {
        Generator::J(gi) => gi.n,
        Generator::L => 0,
    };
    for a in &gens {
        let ea = AlgebraElement::generator(*a);
        for v in &vectors {
            // (∂a)_λ v = -λ a_λ v
            let mut r = act(module, &ea.partial(), &lam, v)?;
            r.add_assign(&act(module, &ea, &lam, v)?.mul_poly(&lam));
            if !r.is_zero() {
                out.push(residual("partial-on-algebra", format!("{a} on {v:?}"), &r));
            }
            // a_λ(∂v) = (∂+λ) a_λ v
            let dv = partial_action(module, v);
            let lhs = act(module, &ea, &lam, &dv)?;
            let rhs = partial_action(module, &act(module, &ea, &lam, v)?);
            let mut r = lhs;
            r.sub_assign(&rhs);
            r.sub_assign(&act(module, &ea, &lam, v)?.mul_poly(&lam));
            if !r.is_zero() {
                out.push(residual("partial-on-module", format!("{a} on {v:?}"), &r));
            }
        }
        for b in &gens {
            if level(a) + level(b) > max_level {
                continue;
            }
            let eb = AlgebraElement::generator(*b);
            let ab = bracket_at(&alg, &ea, &eb, &lam)?;
            for v in &vectors {
                let mut r = act(module, &ea, &lam, &act(module, &eb, &mu, v)?)?;
                r.sub_assign(&act(module, &eb, &mu, &act(module, &ea, &lam, v)?)?);
                r.sub_assign(&act(module, &ab, &(&lam + &mu), v)?);
                if !r.is_zero() {
                    out.push(residual("commutator", format!("{a}, {b} on {v:?}"), &r));
                }
            }
        }
    }
    Ok(out)
}

fn residual(check: &'static str, context: String, r: &ModuleElement) -> Residual {
    Residual {
        check,
        context,
        value: r
            .components
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", "),
    }
}
