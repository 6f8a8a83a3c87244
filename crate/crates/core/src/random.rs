//! Seeded random cochains for property checks.
//!
//! Values are seeded on canonical tuples with small integer coefficients and
//! then symmetrized, so equal seeds give identical cochains.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraDescriptor;
use crate::cochain::{canonical_tuples, ordered_tuples, value_variables, Cochain, CochainError, LeibnizCochain};
use crate::engine::monomials_of_degree;
use crate::modules::{ModuleDescriptor, ModuleElement};
use crate::poly::{Poly, Var};
use crate::rational::rat;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomShape {
    pub q: usize,
    pub n: usize,
    pub module: ModuleDescriptor,
    pub reduced: bool,
    pub level: usize,
    /// Homogeneous degrees `p` to populate.
    pub degrees: Vec<i64>,
    /// Probability that a given monomial gets a nonzero coefficient.
    pub density: f64,
}

impl RandomShape {
    pub fn new(q: usize, n: usize, module: ModuleDescriptor, reduced: bool, level: usize) -> Self {
        RandomShape {
            q,
            n,
            module,
            reduced,
            level,
            degrees: vec![0],
            density: 0.5,
        }
    }

    pub fn with_degrees(mut self, degrees: impl IntoIterator<Item = i64>) -> Self {
        self.degrees = degrees.into_iter().collect();
        self
    }
}

fn random_value<R: Rng>(rng: &mut R, shape: &RandomShape, vars: &[Var], level: usize) -> ModuleElement {
    let rank = shape.module.rank();
    let mut v = ModuleElement::zero(rank);
    for &p in &shape.degrees {
        let d = p + level as i64;
        if d < 0 {
            continue;
        }
        for m in monomials_of_degree(vars, d as u32) {
            for k in 0..rank {
                if rng.gen_bool(shape.density) {
                    let mut c = 0;
                    while c == 0 {
                        c = rng.gen_range(-3..=3);
                    }
                    v.components[k].add_term(m.clone(), rat(c));
                }
            }
        }
    }
    v
}

/// A random skew cochain supported on canonical tuples of level at most `shape.level`.
pub fn random_cochain<R: Rng>(rng: &mut R, shape: &RandomShape) -> Result<Cochain, CochainError> {
    let mut c = Cochain::zero(
        shape.q,
        AlgebraDescriptor::gc(shape.n),
        shape.module.clone(),
        shape.reduced,
        shape.level,
    )?;
    // draw in the unreduced variables, so the reduction is exercised too
    let vars = value_variables(&shape.module, shape.q, false);
    for t in canonical_tuples(shape.n, shape.q, shape.level) {
        let v = random_value(rng, shape, &vars, t.level());
        if !v.is_zero() {
            c.insert(t.entries(), v)?;
        }
    }
    c.level_bound = shape.level;
    Ok(c)
}

/// A random Leibniz cochain: independent values on every ordered tuple.
pub fn random_leibniz_cochain<R: Rng>(rng: &mut R, shape: &RandomShape) -> Result<LeibnizCochain, CochainError> {
    let mut c = LeibnizCochain::zero(shape.q, AlgebraDescriptor::gc(shape.n), shape.module.clone(), shape.level)?;
    let vars = value_variables(&shape.module, shape.q, false);
    for t in ordered_tuples(shape.n, shape.q, shape.level) {
        let v = random_value(rng, shape, &vars, t.level());
        if !v.is_zero() {
            c.insert(t.entries(), v)?;
        }
    }
    Ok(c)
}

/// A random polynomial in the given variables with total degree at most `max_degree`.
pub fn random_poly<R: Rng>(rng: &mut R, vars: &[Var], max_degree: u32) -> Poly {
    let mut p = Poly::zero();
    for d in 0..=max_degree {
        for m in monomials_of_degree(vars, d) {
            if rng.gen_bool(0.5) {
                p.add_term(m, rat(rng.gen_range(-4..=4)));
            }
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let shape = RandomShape::new(2, 1, ModuleDescriptor::Trivial, false, 2);
        let a = random_cochain(&mut rng_from_seed(5), &shape).unwrap();
        let b = random_cochain(&mut rng_from_seed(5), &shape).unwrap();
        let c = random_cochain(&mut rng_from_seed(6), &shape).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(!a.is_zero());
    }

    #[test]
    fn degrees_are_respected() {
        let shape = RandomShape::new(2, 1, ModuleDescriptor::Trivial, false, 3).with_degrees([-1, 2]);
        let c = random_cochain(&mut rng_from_seed(1), &shape).unwrap();
        for p in c.degrees() {
            assert!(p == -1 || p == 2);
        }
    }
}
