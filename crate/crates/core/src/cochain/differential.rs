//! The differentials `d` (skew cochains) and `d_L` (Leibniz cochains).
//!
//! A [`DifferentialPlan`] expands the differential formula once for every
//! output tuple into terms "coefficient × (value on a source tuple with the
//! variables substituted)", optionally followed by a `λ`-action on the module.
//! Applying the plan to a cochain is then a lookup-and-substitute pass, and the
//! column of a single basis cochain only touches the terms that reference its
//! tuple.

use std::collections::HashMap;

use crate::algebra::{bracket_generators, AlgebraDescriptor, Generator, GeneratorIndex};
use crate::modules::{lambda_action, ModuleDescriptor, ModuleElement};
use crate::par;
use crate::poly::{Poly, Var};
use crate::rational::sign;

use super::{canonical_tuples, canonicalize, ordered_tuples, Cochain, CochainError, GeneratorTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanMode {
    /// `d` on skew-symmetric cochains; outputs and sources are canonical tuples.
    Skew,
    /// `d_L` on Leibniz cochains; outputs and sources are ordered tuples and the
    /// bracket is placed in the slot of its second argument.
    Leibniz,
}

#[derive(Clone, Debug)]
enum TermKind {
    Bracket,
    /// `a {}_{λ_var} (·)` applied after substitution.
    Action { gen: GeneratorIndex, var: usize },
}

#[derive(Clone, Debug)]
struct PlanTerm {
    source: GeneratorTuple,
    subst: HashMap<Var, Poly>,
    coef: Poly,
    kind: TermKind,
}

/// `[a_λ b]` on generators, with `∂` in each coefficient replaced by `-(λ+μ)`:
/// the form it takes inside a cochain slot whose variable is `λ + μ`.
fn bracket_in_slot(alg: &AlgebraDescriptor, a: GeneratorIndex, b: GeneratorIndex) -> Vec<(GeneratorIndex, Poly)> {
    let slot = -(&Poly::var(Var::AuxLambda) + &Poly::var(Var::AuxMu));
    let br = bracket_generators(alg, &Generator::J(a), &Generator::J(b)).expect("validated generators");
    br.terms()
        .filter_map(|(g, c)| match g {
            Generator::J(gi) => {
                let c = c.substitute_var(Var::Partial, &slot);
                (!c.is_zero()).then_some((*gi, c))
            }
            Generator::L => None,
        })
        .collect()
}

pub struct DifferentialPlan {
    pub q: usize,
    pub mode: PlanMode,
    pub out_level: usize,
    module: ModuleDescriptor,
    outputs: Vec<(GeneratorTuple, Vec<PlanTerm>)>,
    by_source: HashMap<GeneratorTuple, Vec<(usize, usize)>>,
}

impl DifferentialPlan {
    /// The differential from degree `q` into degree `q + 1`, on output tuples of
    /// level at most `out_level`.
    pub fn new(
        algebra: &AlgebraDescriptor,
        module: &ModuleDescriptor,
        q: usize,
        out_level: usize,
        mode: PlanMode,
    ) -> Result<Self, CochainError> {
        let rank = algebra
            .rank()
            .ok_or_else(|| CochainError::UnsupportedAlgebra(format!("{:?}", algebra.kind)))?;
        let tuples = match mode {
            PlanMode::Skew => canonical_tuples(rank, q + 1, out_level),
            PlanMode::Leibniz => ordered_tuples(rank, q + 1, out_level),
        };
        let mut cache: HashMap<(GeneratorIndex, GeneratorIndex), Vec<(GeneratorIndex, Poly)>> = HashMap::new();
        for t in &tuples {
            for (i, a) in t.entries().iter().enumerate() {
                for b in &t.entries()[i + 1..] {
                    cache
                        .entry((*a, *b))
                        .or_insert_with(|| bracket_in_slot(algebra, *a, *b));
                }
            }
        }
        let outputs: Vec<(GeneratorTuple, Vec<PlanTerm>)> = par::map(&tuples, |t| {
            (t.clone(), expand(t, q, module, mode, &cache))
        });
        let mut by_source: HashMap<GeneratorTuple, Vec<(usize, usize)>> = HashMap::new();
        for (oi, (_, terms)) in outputs.iter().enumerate() {
            for (ti, term) in terms.iter().enumerate() {
                by_source.entry(term.source.clone()).or_default().push((oi, ti));
            }
        }
        Ok(DifferentialPlan {
            q,
            mode,
            out_level,
            module: module.clone(),
            outputs,
            by_source,
        })
    }

    pub fn output_tuples(&self) -> impl Iterator<Item = &GeneratorTuple> {
        self.outputs.iter().map(|(t, _)| t)
    }

    pub fn output_count(&self) -> usize {
        self.outputs.len()
    }

    fn eval_term(&self, term: &PlanTerm, w: &ModuleElement) -> ModuleElement {
        let v = w.map(|p| p.substitute(&term.subst));
        let v = match term.kind {
            TermKind::Bracket => v,
            TermKind::Action { gen, var } => {
                lambda_action(&self.module, &gen, &Poly::lambda(var), &v).expect("rank checked")
            }
        };
        v.mul_poly(&term.coef)
    }

    /// Values of the differential on every output tuple, given the values of the
    /// input on source tuples.
    pub fn apply_lookup<'a, F>(&self, lookup: F) -> Vec<(GeneratorTuple, ModuleElement)>
    where
        F: Fn(&GeneratorTuple) -> Option<&'a ModuleElement> + Sync + Send,
    {
        let rank = self.module.rank();
        let rows = par::map(&self.outputs, |(t, terms)| {
            let mut acc = ModuleElement::zero(rank);
            for term in terms {
                if let Some(w) = lookup(&term.source) {
                    acc.add_assign(&self.eval_term(term, w));
                }
            }
            (t.clone(), acc)
        });
        rows.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Contributions of a cochain supported on the single source tuple `u` with
    /// value `w`, as `(output index, value)` pairs.
    pub fn apply_single(&self, u: &GeneratorTuple, w: &ModuleElement) -> Vec<(usize, ModuleElement)> {
        let mut acc: Vec<(usize, ModuleElement)> = Vec::new();
        if let Some(refs) = self.by_source.get(u) {
            for &(oi, ti) in refs {
                let v = self.eval_term(&self.outputs[oi].1[ti], w);
                match acc.last_mut() {
                    Some((last, cur)) if *last == oi => cur.add_assign(&v),
                    _ => acc.push((oi, v)),
                }
            }
        }
        acc.retain(|(_, v)| !v.is_zero());
        acc
    }

    pub fn output_tuple(&self, index: usize) -> &GeneratorTuple {
        &self.outputs[index].0
    }

    /// `dγ` on all output tuples, for a basic skew cochain.
    pub fn apply_to(&self, c: &Cochain) -> Result<Cochain, CochainError> {
        if self.mode != PlanMode::Skew || c.q != self.q {
            return Err(CochainError::DegreeMismatch {
                expected: self.q,
                got: c.q,
            });
        }
        if c.reduced {
            return Err(CochainError::WrongKind { expected: "basic" });
        }
        let mut out = c.zero_of_degree(self.q + 1, self.out_level);
        for (t, v) in self.apply_lookup(|u| c.value(u)) {
            out.add_canonical(t, &v);
        }
        Ok(out)
    }

    /// `Δ d (lift γ)` on all output tuples, for a reduced cochain.
    pub fn apply_reduced(&self, c: &Cochain) -> Result<Cochain, CochainError> {
        self.apply_to(&c.lift()?)?.delta_reduce()
    }
}

fn expand(
    t: &GeneratorTuple,
    q: usize,
    module: &ModuleDescriptor,
    mode: PlanMode,
    brackets: &HashMap<(GeneratorIndex, GeneratorIndex), Vec<(GeneratorIndex, Poly)>>,
) -> Vec<PlanTerm> {
    let gens = t.entries();
    let lambdas: Vec<Poly> = (1..=q + 1).map(Poly::lambda).collect();
    let mut terms = Vec::new();
    let mut push = |args: Vec<GeneratorIndex>, xs: Vec<Poly>, coef: Poly, kind: TermKind| {
        let (source, subst) = match mode {
            PlanMode::Skew => {
                let can = canonicalize(&args);
                let subst = can
                    .perm
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| (Var::lambda(k + 1), xs[p].clone()))
                    .collect();
                let coef = if can.sign < 0 { -coef } else { coef };
                (can.tuple, (subst, coef))
            }
            PlanMode::Leibniz => {
                let subst = xs
                    .iter()
                    .enumerate()
                    .map(|(k, x)| (Var::lambda(k + 1), x.clone()))
                    .collect();
                (GeneratorTuple::new(args), (subst, coef))
            }
        };
        let (subst, coef) = subst;
        terms.push(PlanTerm {
            source,
            subst,
            coef,
            kind,
        });
    };
    if module.is_free() {
        for i in 0..=q {
            let mut args = gens.to_vec();
            args.remove(i);
            let mut xs = lambdas.clone();
            xs.remove(i);
            let coef = Poly::constant(sign(i as i64));
            push(args, xs, coef, TermKind::Action { gen: gens[i], var: i + 1 });
        }
    }
    for i in 0..=q {
        for j in i + 1..=q {
            let slot_var = &lambdas[i] + &lambdas[j];
            let mut rest = gens.to_vec();
            let mut rest_x = lambdas.clone();
            rest.remove(j);
            rest.remove(i);
            rest_x.remove(j);
            rest_x.remove(i);
            let key = (gens[i], gens[j]);
            for (g, c) in &brackets[&key] {
                let mut sub = std::collections::HashMap::new();
                sub.insert(Var::AuxLambda, lambdas[i].clone());
                sub.insert(Var::AuxMu, lambdas[j].clone());
                let c = c.substitute(&sub);
                match mode {
                    PlanMode::Skew => {
                        let mut args = vec![*g];
                        args.extend_from_slice(&rest);
                        let mut xs = vec![slot_var.clone()];
                        xs.extend(rest_x.iter().cloned());
                        let coef = c.scale(&sign((i + j) as i64));
                        push(args, xs, coef, TermKind::Bracket);
                    }
                    PlanMode::Leibniz => {
                        // a_1..â_i..a_{j-1}, [a_i a_j], a_{j+1}..
                        let mut args = gens.to_vec();
                        let mut xs = lambdas.clone();
                        args[j] = *g;
                        xs[j] = slot_var.clone();
                        args.remove(i);
                        xs.remove(i);
                        let coef = c.scale(&sign(i as i64 + 1));
                        push(args, xs, coef, TermKind::Bracket);
                    }
                }
            }
        }
    }
    terms
}

/// `dγ` on all canonical tuples of level at most `out_level`.
pub fn differential(c: &Cochain, out_level: usize) -> Result<Cochain, CochainError> {
    DifferentialPlan::new(&c.algebra, &c.module, c.q, out_level, PlanMode::Skew)?.apply_to(c)
}

/// The reduced differential `Δ ∘ d ∘ lift`.
pub fn reduced_differential(c: &Cochain, out_level: usize) -> Result<Cochain, CochainError> {
    DifferentialPlan::new(&c.algebra, &c.module, c.q, out_level, PlanMode::Skew)?.apply_reduced(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraElement;

    fn j(n: usize) -> GeneratorIndex {
        GeneratorIndex::gc1(n)
    }

    #[test]
    fn zero_cochain_in_natural_module() {
        // (dv)_λ(J^0_I) = J^0_I λ v = v(∂+λ)
        let m = ModuleDescriptor::natural(2);
        let mut v = Cochain::zero(0, AlgebraDescriptor::gc(2), m, false, 0).unwrap();
        let val = ModuleElement {
            components: vec![Poly::int(1), Poly::var(Var::Partial)],
        };
        v.insert(&[], val).unwrap();
        let dv = differential(&v, 0).unwrap();
        let unit = AlgebraElement::identity_generator(0, 2);
        let got = dv.evaluate(&[unit], &[Poly::lambda(1)]).unwrap();
        assert_eq!(got.components[0], Poly::int(1));
        assert_eq!(got.components[1], &Poly::var(Var::Partial) + &Poly::lambda(1));
    }

    #[test]
    fn trivial_zero_cochain_is_closed() {
        let mut v = Cochain::zero(0, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, false, 0).unwrap();
        v.insert(&[], ModuleElement::scalar(Poly::int(5))).unwrap();
        assert!(differential(&v, 3).unwrap().is_zero());
    }

    #[test]
    fn one_cochain_differential_by_hand() {
        // f(J^0) = 1, so (df)(J^0, J^n) = -(J^0 coefficient of [J^0 λ_1 J^n])
        let mut f = Cochain::zero(1, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, false, 0).unwrap();
        f.insert(&[j(0)], ModuleElement::scalar(Poly::one())).unwrap();
        let df = differential(&f, 2).unwrap();
        let t = GeneratorTuple::new(vec![j(0), j(2)]);
        // [J^0 λ J^2] = -Σ_{s=1}^2 C(2,s)(-λ)^s J^{2-s}; J^0 coefficient -λ^2
        assert_eq!(df.value(&t).unwrap().components[0], Poly::lambda(1).pow(2));
        let t = GeneratorTuple::new(vec![j(1), j(1)]);
        // [J^1 λ J^1] = (λ+∂)J^1 + λ J^1 ... J^0 coefficient 0
        assert!(df.value(&t).is_none());
    }

    #[test]
    fn plan_single_matches_full_application() {
        let mut f = Cochain::zero(2, AlgebraDescriptor::gc(1), ModuleDescriptor::Trivial, false, 2).unwrap();
        let v = &Poly::lambda(1).pow(2) - &Poly::lambda(2).pow(2);
        f.insert(&[j(0), j(2)], ModuleElement::scalar(v)).unwrap();
        let plan = DifferentialPlan::new(&f.algebra, &f.module, 2, 3, PlanMode::Skew).unwrap();
        let full = plan.apply_to(&f).unwrap();
        let (u, w) = f.values().next().unwrap();
        let mut single = f.zero_of_degree(3, 3);
        for (oi, v) in plan.apply_single(u, w) {
            single.add_canonical(plan.output_tuple(oi).clone(), &v);
        }
        assert_eq!(full, single);
    }
}
