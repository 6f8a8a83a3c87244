//! Leibniz cochains: no skew-symmetry, values stored on every ordered tuple.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraDescriptor, Generator, GeneratorIndex};
use crate::modules::{ModuleDescriptor, ModuleElement, ModuleError};
use crate::poly::Poly;

use super::differential::{DifferentialPlan, PlanMode};
use super::{ordered_tuples, Cochain, CochainError, GeneratorTuple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizCochain {
    pub q: usize,
    pub algebra: AlgebraDescriptor,
    pub module: ModuleDescriptor,
    pub level_bound: usize,
    values: BTreeMap<GeneratorTuple, ModuleElement>,
}

impl LeibnizCochain {
    pub fn zero(q: usize, algebra: AlgebraDescriptor, module: ModuleDescriptor, level_bound: usize) -> Result<Self, CochainError> {
        // same admissibility rules as skew cochains
        Cochain::zero(q, algebra.clone(), module.clone(), false, level_bound)?;
        Ok(LeibnizCochain {
            q,
            algebra,
            module,
            level_bound,
            values: BTreeMap::new(),
        })
    }

    /// Add `v` to the value on the ordered tuple `gens`.
    pub fn insert(&mut self, gens: &[GeneratorIndex], v: ModuleElement) -> Result<(), CochainError> {
        if gens.len() != self.q {
            return Err(CochainError::DegreeMismatch {
                expected: self.q,
                got: gens.len(),
            });
        }
        if v.rank() != self.module.rank() {
            return Err(ModuleError::DimensionMismatch {
                expected: self.module.rank(),
                got: v.rank(),
            }
            .into());
        }
        for g in gens {
            self.algebra.validate(&Generator::J(*g))?;
        }
        let t = GeneratorTuple::new(gens.to_vec());
        self.level_bound = self.level_bound.max(t.level());
        self.add_raw(t, &v);
        Ok(())
    }

    fn add_raw(&mut self, t: GeneratorTuple, v: &ModuleElement) {
        if v.is_zero() {
            return;
        }
        let slot = self
            .values
            .entry(t.clone())
            .or_insert_with(|| ModuleElement::zero(v.rank()));
        slot.add_assign(v);
        if slot.is_zero() {
            self.values.remove(&t);
        }
    }

    pub fn values(&self) -> impl Iterator<Item = (&GeneratorTuple, &ModuleElement)> {
        self.values.iter()
    }

    pub fn value(&self, t: &GeneratorTuple) -> Option<&ModuleElement> {
        self.values.get(t)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// The skew cochain `γ` viewed as a Leibniz cochain on ordered tuples of
    /// level at most `max_level`.
    pub fn from_cochain(c: &Cochain, max_level: usize) -> Result<Self, CochainError> {
        if c.reduced {
            return Err(CochainError::WrongKind { expected: "basic" });
        }
        let mut out = LeibnizCochain::zero(c.q, c.algebra.clone(), c.module.clone(), max_level)?;
        let lambdas = Cochain::standard_lambdas(c.q);
        for t in ordered_tuples(c.rank(), c.q, max_level) {
            let v = c.value_at(t.entries(), &lambdas);
            out.add_raw(t, &v);
        }
        Ok(out)
    }

    /// Whether the two cochains agree on all ordered tuples of level at most `max_level`.
    pub fn agrees_with(&self, other: &LeibnizCochain, max_level: usize) -> bool {
        self.disagreements(other, max_level).is_empty()
    }

    /// Ordered tuples (level at most `max_level`) where the values differ, with both values.
    pub fn disagreements(
        &self,
        other: &LeibnizCochain,
        max_level: usize,
    ) -> Vec<(GeneratorTuple, ModuleElement, ModuleElement)> {
        let zero = ModuleElement::zero(self.module.rank());
        let keys: std::collections::BTreeSet<&GeneratorTuple> =
            self.values.keys().chain(other.values.keys()).collect();
        keys.into_iter()
            .filter(|t| t.level() <= max_level)
            .filter_map(|t| {
                let a = self.values.get(t).unwrap_or(&zero);
                let b = other.values.get(t).unwrap_or(&zero);
                (a != b).then(|| (t.clone(), a.clone(), b.clone()))
            })
            .collect()
    }

    pub fn value_poly(&self, gens: &[GeneratorIndex]) -> Poly {
        self.values
            .get(&GeneratorTuple::new(gens.to_vec()))
            .map(|v| v.components[0].clone())
            .unwrap_or_default()
    }
}

/// `d_L γ` on all ordered tuples of level at most `out_level`.
pub fn leibniz_differential(c: &LeibnizCochain, out_level: usize) -> Result<LeibnizCochain, CochainError> {
    let plan = DifferentialPlan::new(&c.algebra, &c.module, c.q, out_level, PlanMode::Leibniz)?;
    let mut out = LeibnizCochain::zero(c.q + 1, c.algebra.clone(), c.module.clone(), out_level)?;
    for (t, v) in plan.apply_lookup(|u| c.values.get(u)) {
        out.add_raw(t, &v);
    }
    Ok(out)
}
