//! Homotopy operators: contraction of the last argument with a fixed element.
//!
//! Each operator maps `q`-cochains to `(q-1)`-cochains (and `0`-cochains to
//! zero, returned as `None`):
//!
//! * `τ_1 γ = (-1)^{q-1} ∂/∂λ γ_{.., λ}(.., J^1_I) |_{λ=0}` (trivial coefficients),
//! * `τ_2 γ = (-1)^{q-1} γ_{.., 0}(.., J^0_h)`, `h = Σ_j j E_jj`,
//! * `τ γ = (-1)^{q-1} γ_{.., λ}(.., J^1_I) |_{λ=0}` (twisted coefficients),
//! * `τ_0 γ = (-1)^{q-1} γ_{.., λ}(.., J^0_I) |_{λ=0}` (reduced, free coefficients).

use std::collections::BTreeSet;

use num_traits::One;

use crate::algebra::GeneratorIndex;
use crate::modules::{ModuleDescriptor, ModuleElement};
use crate::poly::{Poly, Var};
use crate::rational::{rat, sign, Rational};

use super::{reduce_value, Cochain, CochainError, GeneratorTuple};

fn contract_last(
    c: &Cochain,
    element: &[(GeneratorIndex, Rational)],
    extract: impl Fn(&Poly) -> Poly,
) -> Option<Cochain> {
    if c.q == 0 {
        return None;
    }
    let q = c.q;
    let mut candidates: BTreeSet<GeneratorTuple> = BTreeSet::new();
    for (u, _) in c.values() {
        for (i, g) in u.entries().iter().enumerate() {
            if element.iter().any(|(h, _)| h == g) {
                candidates.insert(u.without(i));
            }
        }
    }
    let mut xs = Cochain::standard_lambdas(q - 1);
    xs.push(Poly::var(Var::AuxLambda));
    let s = sign(q as i64 - 1);
    let mut out = c.zero_of_degree(q - 1, c.level_bound);
    for t in candidates {
        let mut acc = ModuleElement::zero(c.module_rank());
        for (g, coeff) in element {
            let mut gens = t.entries().to_vec();
            gens.push(*g);
            acc.add_assign(&c.value_at(&gens, &xs).scale(coeff));
        }
        let v = acc.map(&extract).scale(&s);
        let v = if c.reduced { reduce_value(&c.module, q - 1, &v) } else { v };
        out.add_canonical(t, &v);
    }
    Some(out)
}

fn identity(level: usize, rank: usize) -> Vec<(GeneratorIndex, Rational)> {
    (1..=rank)
        .map(|j| (GeneratorIndex::new(level, j, j), Rational::one()))
        .collect()
}

fn require(c: &Cochain, reduced: bool) -> Result<(), CochainError> {
    if c.reduced != reduced {
        return Err(CochainError::WrongKind {
            expected: if reduced { "reduced" } else { "basic" },
        });
    }
    Ok(())
}

pub fn tau1(c: &Cochain) -> Result<Option<Cochain>, CochainError> {
    require(c, false)?;
    Ok(contract_last(c, &identity(1, c.rank()), |p| p.coefficient_of(Var::AuxLambda, 1)))
}

pub fn tau2(c: &Cochain) -> Result<Option<Cochain>, CochainError> {
    require(c, false)?;
    let h: Vec<(GeneratorIndex, Rational)> = (1..=c.rank())
        .map(|j| (GeneratorIndex::new(0, j, j), rat(j as i64)))
        .collect();
    Ok(contract_last(c, &h, |p| p.set_zero(Var::AuxLambda)))
}

pub fn tau_twisted(c: &Cochain) -> Result<Option<Cochain>, CochainError> {
    require(c, false)?;
    if !matches!(c.module, ModuleDescriptor::TwistedScalar { .. }) {
        return Err(CochainError::WrongKind { expected: "twisted-coefficient" });
    }
    Ok(contract_last(c, &identity(1, c.rank()), |p| p.set_zero(Var::AuxLambda)))
}

pub fn tau0(c: &Cochain) -> Result<Option<Cochain>, CochainError> {
    require(c, true)?;
    if !c.module.is_free() {
        return Err(CochainError::WrongKind { expected: "free-coefficient" });
    }
    Ok(contract_last(c, &identity(0, c.rank()), |p| p.set_zero(Var::AuxLambda)))
}

/// `Σ_i (k_i - j_i)` over the labels `E_{j_i k_i}` of a tuple.
pub fn tuple_weight(t: &GeneratorTuple) -> i64 {
    t.entries().iter().map(|g| g.label.weight()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDescriptor;

    #[test]
    fn zero_cochains_contract_to_nothing() {
        let c = Cochain::zero(0, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, false, 0).unwrap();
        assert!(tau1(&c).unwrap().is_none());
        assert!(tau2(&c).unwrap().is_none());
    }

    #[test]
    fn tau1_extracts_linear_coefficient() {
        let mut c = Cochain::zero(2, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, false, 2).unwrap();
        let v = &(&Poly::lambda(1) * &Poly::lambda(2)) + &Poly::lambda(2).pow(2);
        c.insert(&[GeneratorIndex::gc1(0), GeneratorIndex::gc1(1)], ModuleElement::scalar(v))
            .unwrap();
        let t = tau1(&c).unwrap().unwrap();
        let key = GeneratorTuple::new(vec![GeneratorIndex::gc1(0)]);
        // (-1)^1 · coefficient of λ in λ_1 λ + λ^2
        assert_eq!(t.value(&key).unwrap().components[0], -Poly::lambda(1));
    }

    #[test]
    fn weights() {
        let t = GeneratorTuple::new(vec![GeneratorIndex::new(0, 1, 2), GeneratorIndex::new(0, 2, 1)]);
        assert_eq!(tuple_weight(&t), 0);
        let t = GeneratorTuple::new(vec![GeneratorIndex::new(0, 1, 2)]);
        assert_eq!(tuple_weight(&t), 1);
    }
}
