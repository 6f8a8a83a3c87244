//! Basic and reduced cochains of `gc_N` with values in a module.
//!
//! A `q`-cochain is stored by its values on canonical (sorted) generator
//! tuples; the value on any other tuple follows from skew-symmetry and the
//! value on `∂`-multiples from conformal antilinearity. A stored value is a
//! polynomial in `λ_1, ..., λ_q` (and `∂` for free modules) per module
//! component. Cochains are finitely supported: tuples without a stored value
//! evaluate to zero.
//!
//! Reduced cochains (classes modulo `∂C̃`) are stored through a normal form:
//! the last variable `λ_q` is eliminated for scalar modules, `∂` for free
//! modules.

mod differential;
mod homotopy;
mod io;
mod leibniz;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraDescriptor, AlgebraElement, AlgebraError, AlgebraKind, Generator, GeneratorIndex};
use crate::modules::{ModuleDescriptor, ModuleElement, ModuleError};
use crate::poly::{Poly, Var};
use crate::rational::{rat, Rational};

pub use differential::{differential, reduced_differential, DifferentialPlan, PlanMode};
pub use homotopy::{tau0, tau1, tau2, tau_twisted, tuple_weight};
pub use io::{parse_cochain, write_cochain};
pub use leibniz::{leibniz_differential, LeibnizCochain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("expected {expected} arguments, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("cochains have different shapes ({0})")]
    ShapeMismatch(String),
    #[error("operation needs a {expected} cochain")]
    WrongKind { expected: &'static str },
    #[error("cochains are defined on gc_N only (not {0})")]
    UnsupportedAlgebra(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// A tuple of free generators; ordered by level first, then entrywise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GeneratorTuple(pub Vec<GeneratorIndex>);

impl GeneratorTuple {
    pub fn new(entries: Vec<GeneratorIndex>) -> Self {
        GeneratorTuple(entries)
    }

    pub fn entries(&self) -> &[GeneratorIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|n̄| = Σ n_i`.
    pub fn level(&self) -> usize {
        self.0.iter().map(|g| g.n).sum()
    }

    pub fn is_canonical(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// The tuple with entry `i` (0-based) removed.
    pub fn without(&self, i: usize) -> GeneratorTuple {
        let mut v = self.0.clone();
        v.remove(i);
        GeneratorTuple(v)
    }
}

impl Ord for GeneratorTuple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.level(), &self.0).cmp(&(other.level(), &other.0))
    }
}

impl PartialOrd for GeneratorTuple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneratorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.iter().map(|g| g.to_string()).join(" "))
    }
}

/// Result of sorting a tuple: `tuple[k] = input[perm[k]]`, and `sign` is the
/// signature of `perm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub tuple: GeneratorTuple,
    pub sign: i32,
    pub perm: Vec<usize>,
}

pub fn canonicalize(t: &[GeneratorIndex]) -> Canonical {
    let mut perm: Vec<usize> = (0..t.len()).collect();
    perm.sort_by_key(|&i| t[i]);
    let tuple = GeneratorTuple(perm.iter().map(|&i| t[i]).collect());
    Canonical {
        sign: permutation_sign(&perm),
        tuple,
        perm,
    }
}

pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn sorted_generators(rank: usize, max_level: usize) -> Vec<GeneratorIndex> {
    AlgebraDescriptor::gc(rank)
        .generators_up_to(max_level)
        .into_iter()
        .filter_map(|g| match g {
            Generator::J(gi) => Some(gi),
            Generator::L => None,
        })
        .collect()
}

/// All canonical `q`-tuples of `gc_rank` generators with level at most `max_level`,
/// in increasing order.
pub fn canonical_tuples(rank: usize, q: usize, max_level: usize) -> Vec<GeneratorTuple> {
    let gens = sorted_generators(rank, max_level);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q);
    fn rec(
        gens: &[GeneratorIndex],
        start: usize,
        q: usize,
        budget: usize,
        cur: &mut Vec<GeneratorIndex>,
        out: &mut Vec<GeneratorTuple>,
    ) {
        if cur.len() == q {
            out.push(GeneratorTuple(cur.clone()));
            return;
        }
        for (i, g) in gens.iter().enumerate().skip(start) {
            if g.n <= budget {
                cur.push(*g);
                rec(gens, i, q, budget - g.n, cur, out);
                cur.pop();
            }
        }
    }
    rec(&gens, 0, q, max_level, &mut cur, &mut out);
    out.sort();
    out
}

/// All ordered `q`-tuples with level at most `max_level`, in increasing order.
pub fn ordered_tuples(rank: usize, q: usize, max_level: usize) -> Vec<GeneratorTuple> {
    let gens = sorted_generators(rank, max_level);
    let mut out = vec![Vec::new()];
    for _ in 0..q {
        out = out
            .into_iter()
            .flat_map(|t: Vec<GeneratorIndex>| {
                let used: usize = t.iter().map(|g| g.n).sum();
                gens.iter()
                    .filter(move |g| used + g.n <= max_level)
                    .map(move |g| {
                        let mut t = t.clone();
                        t.push(*g);
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out: Vec<GeneratorTuple> = out.into_iter().map(GeneratorTuple).collect();
    out.sort();
    out
}

/// Permutations fixing a canonical tuple, with their signs. A permutation `σ`
/// is given as the vector `(σ(0), ..., σ(q-1))`.
pub fn stabilizer(t: &GeneratorTuple) -> Vec<(Vec<usize>, i32)> {
    let entries = t.entries();
    if entries.is_empty() {
        return vec![(Vec::new(), 1)];
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, g) in entries.iter().enumerate() {
        match blocks.last_mut() {
            Some(b) if entries[b[0]] == *g => b.push(i),
            _ => blocks.push(vec![i]),
        }
    }
    let per_block: Vec<Vec<Vec<usize>>> = blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).collect())
        .collect();
    per_block
        .into_iter()
        .multi_cartesian_product()
        .map(|choice| {
            let mut sigma: Vec<usize> = (0..entries.len()).collect();
            for (block, image) in blocks.iter().zip(&choice) {
                for (src, dst) in block.iter().zip(image) {
                    sigma[*src] = *dst;
                }
            }
            let sign = permutation_sign(&sigma);
            (sigma, sign)
        })
        .collect()
}

/// `λ_{i+1} ↦ λ_{σ(i)+1}`.
fn permute_lambdas(v: &ModuleElement, sigma: &[usize]) -> ModuleElement {
    let map: HashMap<Var, Poly> = sigma
        .iter()
        .enumerate()
        .filter(|(i, s)| i != *s)
        .map(|(i, &s)| (Var::lambda(i + 1), Poly::lambda(s + 1)))
        .collect();
    if map.is_empty() {
        return v.clone();
    }
    v.map(|p| p.substitute(&map))
}

/// The stabilizer projector `(1/|G|) Σ_σ sgn(σ) v(λ_σ)`: the closest value on
/// `t` that satisfies skew-symmetry under permutations fixing `t`.
pub fn symmetrize(t: &GeneratorTuple, v: &ModuleElement) -> ModuleElement {
    let stab = stabilizer(t);
    if stab.len() == 1 {
        return v.clone();
    }
    let mut acc = ModuleElement::zero(v.rank());
    for (sigma, sign) in &stab {
        let w = permute_lambdas(v, sigma);
        if *sign > 0 {
            acc.add_assign(&w);
        } else {
            acc.sub_assign(&w);
        }
    }
    acc.scale(&Rational::new(1.into(), (stab.len() as i64).into()))
}

/// The form `ℓ = ∂_M + Σ λ_i` solved for the eliminated variable, or `None`
/// when `ℓ` is a nonzero constant (so every reduced cochain vanishes) or zero.
fn elimination(module: &ModuleDescriptor, q: usize) -> Elimination {
    let lambdas = if q == 0 { Poly::zero() } else { Poly::lambda_sum(1, q) };
    match module.partial_scalar() {
        Some(a) => {
            if q == 0 {
                if a.is_zero() {
                    Elimination::Identity
                } else {
                    Elimination::Annihilate
                }
            } else {
                let rest = if q == 1 { Poly::zero() } else { Poly::lambda_sum(1, q - 1) };
                Elimination::Substitute(Var::lambda(q), -(&rest + &Poly::constant(a)))
            }
        }
        None => Elimination::Substitute(Var::Partial, -lambdas),
    }
}

enum Elimination {
    Identity,
    Annihilate,
    Substitute(Var, Poly),
}

/// Normal form of a value modulo `(∂_M + Σ λ_i)`.
pub fn reduce_value(module: &ModuleDescriptor, q: usize, v: &ModuleElement) -> ModuleElement {
    match elimination(module, q) {
        Elimination::Identity => v.clone(),
        Elimination::Annihilate => ModuleElement::zero(v.rank()),
        Elimination::Substitute(var, form) => v.map(|p| p.substitute_var(var, &form)),
    }
}

/// Variables a stored value may contain.
pub fn value_variables(module: &ModuleDescriptor, q: usize, reduced: bool) -> Vec<Var> {
    let mut vars: Vec<Var> = (1..=q).map(Var::lambda).collect();
    if module.is_free() {
        if !reduced {
            vars.push(Var::Partial);
        }
    } else if reduced {
        vars.pop();
    }
    vars
}

/// A `q`-cochain of `gc_N` with coefficients in a module, basic or reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub q: usize,
    pub algebra: AlgebraDescriptor,
    pub module: ModuleDescriptor,
    pub reduced: bool,
    /// Level up to which the values are meaningful; all stored tuples lie below it.
    pub level_bound: usize,
    values: BTreeMap<GeneratorTuple, ModuleElement>,
}

impl Cochain {
    pub fn zero(
        q: usize,
        algebra: AlgebraDescriptor,
        module: ModuleDescriptor,
        reduced: bool,
        level_bound: usize,
    ) -> Result<Self, CochainError> {
        let n = match algebra.kind {
            AlgebraKind::GcN { n, extended: false } if !algebra.corrupted && n > 0 => n,
            _ => return Err(CochainError::UnsupportedAlgebra(format!("{:?}", algebra.kind))),
        };
        if module.is_free() && module.rank() != n {
            return Err(ModuleError::DimensionMismatch {
                expected: n,
                got: module.rank(),
            }
            .into());
        }
        Ok(Cochain {
            q,
            algebra,
            module,
            reduced,
            level_bound,
            values: BTreeMap::new(),
        })
    }

    /// Zero cochain with the same shape.
    pub fn zero_like(&self) -> Cochain {
        Cochain {
            values: BTreeMap::new(),
            ..self.clone()
        }
    }

    /// Zero cochain of another degree with the same algebra, module and kind.
    pub fn zero_of_degree(&self, q: usize, level_bound: usize) -> Cochain {
        Cochain {
            q,
            level_bound,
            values: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank().expect("gc_N")
    }

    pub fn module_rank(&self) -> usize {
        self.module.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of tuples with a nonzero value.
    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> impl Iterator<Item = (&GeneratorTuple, &ModuleElement)> {
        self.values.iter()
    }

    pub fn value(&self, t: &GeneratorTuple) -> Option<&ModuleElement> {
        self.values.get(t)
    }

    pub fn max_support_level(&self) -> Option<usize> {
        self.values.keys().map(GeneratorTuple::level).max()
    }

    fn normalize(&self, t: &GeneratorTuple, v: &ModuleElement) -> ModuleElement {
        let w = symmetrize(t, v);
        if self.reduced {
            reduce_value(&self.module, self.q, &w)
        } else {
            w
        }
    }

    /// Add `v` (a polynomial in `λ_1..λ_q` for this argument order) to the value
    /// on the tuple `gens`. The result is projected onto the symmetric values and,
    /// for reduced cochains, brought to normal form.
    pub fn insert(&mut self, gens: &[GeneratorIndex], v: ModuleElement) -> Result<(), CochainError> {
        if gens.len() != self.q {
            return Err(CochainError::DegreeMismatch {
                expected: self.q,
                got: gens.len(),
            });
        }
        if v.rank() != self.module_rank() {
            return Err(ModuleError::DimensionMismatch {
                expected: self.module_rank(),
                got: v.rank(),
            }
            .into());
        }
        for g in gens {
            self.algebra.validate(&Generator::J(*g))?;
        }
        let can = canonicalize(gens);
        // γ_μ(u) = sgn · γ_λ(t) with λ_{perm[k]} = μ_k
        let map: HashMap<Var, Poly> = can
            .perm
            .iter()
            .enumerate()
            .map(|(k, &p)| (Var::lambda(p + 1), Poly::lambda(k + 1)))
            .collect();
        let mut w = v.map(|p| p.substitute(&map));
        if can.sign < 0 {
            w = w.scale(&rat(-1));
        }
        let w = self.normalize(&can.tuple, &w);
        self.level_bound = self.level_bound.max(can.tuple.level());
        self.add_canonical(can.tuple, &w);
        Ok(())
    }

    /// Add a value on a canonical tuple without projecting (caller guarantees symmetry).
    pub(crate) fn add_canonical(&mut self, t: GeneratorTuple, w: &ModuleElement) {
        if w.is_zero() {
            return;
        }
        match self.values.get_mut(&t) {
            Some(cur) => {
                cur.add_assign(w);
                if cur.is_zero() {
                    self.values.remove(&t);
                }
            }
            None => {
                self.values.insert(t, w.clone());
            }
        }
    }

    /// `γ_{x_1..x_q}(g_1, ..., g_q)` on free generators, for arbitrary
    /// polynomial assignments `x_i`. For reduced cochains this is the value of
    /// the stored representative.
    pub fn value_at(&self, gens: &[GeneratorIndex], xs: &[Poly]) -> ModuleElement {
        let can = canonicalize(gens);
        let stored = match self.values.get(&can.tuple) {
            Some(v) => v,
            None => return ModuleElement::zero(self.module_rank()),
        };
        let map: HashMap<Var, Poly> = can
            .perm
            .iter()
            .enumerate()
            .map(|(k, &p)| (Var::lambda(k + 1), xs[p].clone()))
            .collect();
        let w = stored.map(|p| p.substitute(&map));
        if can.sign < 0 {
            w.scale(&rat(-1))
        } else {
            w
        }
    }

    /// `γ_{x_1..x_q}(a_1, ..., a_q)` for arbitrary algebra elements: multilinear
    /// over generators, with `∂` in the coefficient of `a_i` acting as `-x_i`.
    pub fn evaluate(&self, args: &[AlgebraElement], xs: &[Poly]) -> Result<ModuleElement, CochainError> {
        if args.len() != self.q || xs.len() != self.q {
            return Err(CochainError::DegreeMismatch {
                expected: self.q,
                got: args.len().min(xs.len()),
            });
        }
        if self.q == 0 {
            return Ok(self.value_at(&[], &[]));
        }
        let mut expanded: Vec<Vec<(GeneratorIndex, Poly)>> = Vec::with_capacity(self.q);
        for (a, x) in args.iter().zip(xs) {
            let neg = -x;
            let mut terms = Vec::new();
            for (g, c) in a.terms() {
                self.algebra.validate(g)?;
                if let Generator::J(gi) = g {
                    terms.push((*gi, c.substitute_var(Var::Partial, &neg)));
                }
            }
            expanded.push(terms);
        }
        let mut out = ModuleElement::zero(self.module_rank());
        for combo in expanded.iter().map(|v| v.iter()).multi_cartesian_product() {
            let gens: Vec<GeneratorIndex> = combo.iter().map(|(g, _)| *g).collect();
            let coeff = combo.iter().fold(Poly::one(), |acc, (_, c)| &acc * c);
            out.add_scaled(&self.value_at(&gens, xs), &coeff);
        }
        Ok(out)
    }

    /// The standard variables `λ_1, ..., λ_q`.
    pub fn standard_lambdas(q: usize) -> Vec<Poly> {
        (1..=q).map(Poly::lambda).collect()
    }

    fn check_shape(&self, other: &Cochain) -> Result<(), CochainError> {
        if self.q != other.q
            || self.algebra != other.algebra
            || self.module != other.module
            || self.reduced != other.reduced
        {
            return Err(CochainError::ShapeMismatch(format!(
                "q={} vs q={}, {} vs {}",
                self.q, other.q, self.module, other.module
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.level_bound = self.level_bound.max(other.level_bound);
        for (t, v) in &other.values {
            out.add_canonical(t.clone(), v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        self.map_values(|_, v| v.scale(c))
    }

    /// Apply `f` to every stored value (dropping values that become zero).
    pub fn map_values(&self, f: impl Fn(&GeneratorTuple, &ModuleElement) -> ModuleElement) -> Cochain {
        let mut out = self.zero_like();
        for (t, v) in &self.values {
            out.add_canonical(t.clone(), &f(t, v));
        }
        out
    }

    /// Values on tuples of level at most `max_level`.
    pub fn restrict(&self, max_level: usize) -> Cochain {
        let mut out = self.zero_like();
        out.level_bound = max_level;
        for (t, v) in &self.values {
            if t.level() <= max_level {
                out.add_canonical(t.clone(), v);
            }
        }
        out
    }

    /// Whether `self - other` vanishes on all tuples of level at most `max_level`.
    pub fn agrees_with(&self, other: &Cochain, max_level: usize) -> Result<bool, CochainError> {
        Ok(self.sub(other)?.restrict(max_level).is_zero())
    }

    /// `∂γ = (∂_M + Σ λ_i) γ`.
    pub fn partial(&self) -> Cochain {
        let sum = if self.q == 0 { Poly::zero() } else { Poly::lambda_sum(1, self.q) };
        let module = self.module.clone();
        let q = self.q;
        let reduced = self.reduced;
        self.map_values(|_, v| {
            let mut w = crate::modules::partial_action(&module, v);
            w.add_assign(&v.mul_poly(&sum));
            if reduced {
                reduce_value(&module, q, &w)
            } else {
                w
            }
        })
    }

    /// Variables counted by the homogeneous degree: the `λ_i`, and `∂` for free modules.
    pub fn degree_variable(&self) -> impl Fn(Var) -> bool {
        let free = self.module.is_free();
        move |v: Var| v.is_lambda() || (free && v == Var::Partial)
    }

    /// The component `γ^{(p)}`: on each tuple `n̄`, the part of degree `p + |n̄|`.
    pub fn degree_component(&self, p: i64) -> Cochain {
        let is_deg = self.degree_variable();
        self.map_values(|t, v| {
            let d = p + t.level() as i64;
            if d < 0 {
                ModuleElement::zero(v.rank())
            } else {
                v.map(|c| c.homogeneous_component(d as u32, &is_deg))
            }
        })
    }

    /// The degrees `p` with a nonzero component.
    pub fn degrees(&self) -> Vec<i64> {
        let is_deg = self.degree_variable();
        let mut out: Vec<i64> = self
            .values
            .iter()
            .flat_map(|(t, v)| {
                let lvl = t.level() as i64;
                v.components
                    .iter()
                    .flat_map(|c| c.degrees_in(&is_deg))
                    .map(move |d| d as i64 - lvl)
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The reduction map `Δ` onto the reduced complex.
    pub fn delta_reduce(&self) -> Result<Cochain, CochainError> {
        if self.reduced {
            return Err(CochainError::WrongKind { expected: "basic" });
        }
        let mut out = self.zero_like();
        out.reduced = true;
        for (t, v) in &self.values {
            out.add_canonical(t.clone(), &reduce_value(&self.module, self.q, v));
        }
        Ok(out)
    }

    /// A basic cochain whose reduction is `self`: the stored representative,
    /// projected onto symmetric values.
    pub fn lift(&self) -> Result<Cochain, CochainError> {
        if !self.reduced {
            return Err(CochainError::WrongKind { expected: "reduced" });
        }
        let mut out = self.zero_like();
        out.reduced = false;
        for (t, v) in &self.values {
            out.add_canonical(t.clone(), &symmetrize(t, v));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(n: usize) -> GeneratorIndex {
        GeneratorIndex::gc1(n)
    }

    #[test]
    fn canonicalize_examples() {
        let c = canonicalize(&[j(2), j(0), j(1)]);
        assert_eq!(c.tuple.entries(), &[j(0), j(1), j(2)]);
        // the sorting permutation is a 3-cycle
        assert_eq!(c.sign, 1);
        let c = canonicalize(&[j(0), j(2), j(1)]);
        assert_eq!(c.sign, -1);
        assert_eq!(canonicalize(&[j(0), j(1), j(2)]).sign, 1);
        assert_eq!(canonicalize(&[j(1), j(1), j(1)]).sign, 1);
    }

    #[test]
    fn tuple_enumeration() {
        let t = canonical_tuples(1, 2, 2);
        let levels: Vec<Vec<usize>> = t.iter().map(|t| t.entries().iter().map(|g| g.n).collect()).collect();
        assert_eq!(levels, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1]]);
        assert_eq!(canonical_tuples(2, 1, 1).len(), 8);
        assert_eq!(canonical_tuples(1, 0, 3), vec![GeneratorTuple::default()]);
        assert_eq!(ordered_tuples(1, 2, 1).len(), 3);
    }

    #[test]
    fn projector_kills_symmetric_values_on_repeated_entries() {
        let t = GeneratorTuple::new(vec![j(0), j(0)]);
        let sym = ModuleElement::scalar(&Poly::lambda(1) + &Poly::lambda(2));
        assert!(symmetrize(&t, &sym).is_zero());
        let anti = ModuleElement::scalar(&Poly::lambda(1) - &Poly::lambda(2));
        assert_eq!(symmetrize(&t, &anti), anti);
        assert_eq!(stabilizer(&GeneratorTuple::new(vec![j(0), j(0), j(0)])).len(), 6);
    }

    fn gamma_bar_like() -> Cochain {
        let mut c = Cochain::zero(3, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, false, 2).unwrap();
        let v = &Poly::lambda(2).pow(2) - &Poly::lambda(1).pow(2);
        c.insert(&[j(0), j(0), j(2)], ModuleElement::scalar(v)).unwrap();
        c
    }

    #[test]
    fn evaluation_reorders_with_sign() {
        let c = gamma_bar_like();
        let l = Cochain::standard_lambdas(3);
        let v = c.value_at(&[j(0), j(2), j(0)], &l);
        let expect = -(&Poly::lambda(3).pow(2) - &Poly::lambda(1).pow(2));
        assert_eq!(v.components[0], expect);
    }

    #[test]
    fn conformal_antilinearity() {
        let c = gamma_bar_like();
        let l = Cochain::standard_lambdas(3);
        let j0 = AlgebraElement::generator(j(0));
        let j2 = AlgebraElement::generator(j(2));
        let plain = c.evaluate(&[j0.clone(), j0.clone(), j2.clone()], &l).unwrap();
        let with_d = c.evaluate(&[j0.partial(), j0, j2], &l).unwrap();
        assert_eq!(with_d, plain.mul_poly(&-Poly::lambda(1)));
    }

    #[test]
    fn insert_off_canonical_order() {
        let mut c = Cochain::zero(2, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, false, 1).unwrap();
        // value λ_1 on (J^1, J^0) is -λ_2 on (J^0, J^1)
        c.insert(&[j(1), j(0)], ModuleElement::scalar(Poly::lambda(1))).unwrap();
        let t = GeneratorTuple::new(vec![j(0), j(1)]);
        assert_eq!(c.value(&t).unwrap().components[0], -Poly::lambda(2));
    }

    #[test]
    fn reduction_kills_partial_multiples() {
        let mut c = Cochain::zero(2, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, false, 1).unwrap();
        c.insert(&[j(0), j(1)], ModuleElement::scalar(Poly::lambda(1).pow(2))).unwrap();
        assert!(c.partial().delta_reduce().unwrap().is_zero());
        let mut f = Cochain::zero(1, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, false, 1).unwrap();
        f.insert(&[j(0)], ModuleElement::scalar(Poly::lambda(1).pow(2))).unwrap();
        assert!(f.delta_reduce().unwrap().is_zero());
        let tw = ModuleDescriptor::twisted(rat(2));
        let mut g = Cochain::zero(2, AlgebraDescriptor::gc(1), tw, false, 1).unwrap();
        g.insert(&[j(0), j(1)], ModuleElement::scalar(Poly::lambda(2))).unwrap();
        assert!(g.partial().delta_reduce().unwrap().is_zero());
        let free = ModuleDescriptor::natural(1);
        let mut h = Cochain::zero(1, AlgebraDescriptor::gc(1), free, false, 1).unwrap();
        h.insert(&[j(1)], ModuleElement::scalar(Poly::var(Var::Partial))).unwrap();
        assert!(h.partial().delta_reduce().unwrap().is_zero());
    }

    #[test]
    fn degree_components() {
        let mut c = Cochain::zero(3, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, false, 1).unwrap();
        let v = &Poly::lambda(1).pow(3) + &Poly::lambda(1);
        c.insert(&[j(0), j(0), j(1)], ModuleElement::scalar(v)).unwrap();
        let t = GeneratorTuple::new(vec![j(0), j(0), j(1)]);
        let c2 = c.degree_component(2);
        let stored = c.value(&t).unwrap().components[0].clone();
        assert_eq!(
            c2.value(&t).unwrap().components[0],
            stored.homogeneous_component(3, &|v: Var| v.is_lambda())
        );
        assert_eq!(c.degrees(), vec![0, 2]);
        let sum = c.degree_component(0).add(&c2).unwrap();
        assert_eq!(sum, c);
        assert_eq!(gamma_bar_like().degrees(), vec![0]);
    }
}
