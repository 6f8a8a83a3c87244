//! Exact residuals of the structural identities of the complexes.
//!
//! Every function returns the difference of the two sides of an identity as a
//! cochain; the identity holds on the tested cochain iff the residual is zero.
//! Random test cochains have finite support (level at most their bound `L`),
//! so all differentials are computed exactly, and residuals are compared on
//! every tuple of level at most `L + 1`.

use crate::cochain::{
    differential, leibniz_differential, reduce_value, reduced_differential, tau0, tau1, tau2, tau_twisted,
    tuple_weight, Cochain, CochainError, LeibnizCochain,
};
use crate::modules::{ModuleDescriptor, ModuleElement};
use crate::poly::Poly;
use crate::rational::rat;

fn d(c: &Cochain, level: usize) -> Result<Cochain, CochainError> {
    if c.reduced {
        reduced_differential(c, level)
    } else {
        differential(c, level)
    }
}

type Contraction = fn(&Cochain) -> Result<Option<Cochain>, CochainError>;

/// `(dτ + τd)γ` on tuples of level at most `L + 1`.
fn homotopy(c: &Cochain, tau: Contraction) -> Result<Cochain, CochainError> {
    let check = c.level_bound + 1;
    let dc = d(c, check + 1)?;
    let tau_dc = tau(&dc)?.expect("degree of dγ is positive").restrict(check);
    match tau(c)? {
        Some(t) => d(&t, check)?.add(&tau_dc),
        None => Ok(tau_dc),
    }
}

/// `(dτ_1 + τ_1 d)γ − pγ` for `γ` homogeneous of degree `p`.
pub fn tau1_residual(c: &Cochain, p: i64) -> Result<Cochain, CochainError> {
    homotopy(c, tau1)?.sub(&c.scale(&rat(p)))
}

/// `(dτ_2 + τ_2 d)γ − wγ`, where `w` is the weight `Σ (k_i − j_i)` of each tuple.
pub fn tau2_residual(c: &Cochain) -> Result<Cochain, CochainError> {
    let weighted = c.map_values(|t, v| v.scale(&rat(tuple_weight(t))));
    homotopy(c, tau2)?.sub(&weighted)
}

/// `(dτ + τd)γ − (Σ λ_i)γ` in the basic complex with twisted coefficients.
pub fn tau_twisted_exact_residual(c: &Cochain) -> Result<Cochain, CochainError> {
    let q = c.q;
    let sum = if q == 0 { Poly::zero() } else { Poly::lambda_sum(1, q) };
    homotopy(c, tau_twisted)?.sub(&c.map_values(|_, v| v.mul_poly(&sum)))
}

/// `(dτ + τd)γ + aγ` modulo `(a + Σ λ_i)`: the congruence with twisted coefficients.
pub fn tau_twisted_residual(c: &Cochain) -> Result<Cochain, CochainError> {
    let a = match &c.module {
        ModuleDescriptor::TwistedScalar { a } => a.clone(),
        _ => return Err(CochainError::WrongKind { expected: "twisted-coefficient" }),
    };
    let lhs = homotopy(c, tau_twisted)?.add(&c.scale(&a))?;
    let module = c.module.clone();
    let q = c.q;
    Ok(lhs.map_values(|_, v| reduce_value(&module, q, v)))
}

/// `(dτ_0 + τ_0 d)γ − γ` in the reduced complex with free coefficients.
pub fn tau0_residual(c: &Cochain) -> Result<Cochain, CochainError> {
    homotopy(c, tau0)?.sub(c)
}

/// `(dτ_0 + τ_0 d)γ + γ`: the opposite sign, for comparison.
pub fn tau0_negated_residual(c: &Cochain) -> Result<Cochain, CochainError> {
    homotopy(c, tau0)?.add(c)
}

/// `d(dγ)` on tuples of level at most `level`.
pub fn d_squared(c: &Cochain, level: usize) -> Result<Cochain, CochainError> {
    d(&d(c, level)?, level)
}

/// `d_L(d_L γ)` on ordered tuples of level at most `level`.
pub fn leibniz_d_squared(c: &LeibnizCochain, level: usize) -> Result<LeibnizCochain, CochainError> {
    leibniz_differential(&leibniz_differential(c, level)?, level)
}

/// `Δ(dγ) − d(Δγ)` on tuples of level at most `level`, for a basic cochain.
pub fn delta_commutation(c: &Cochain, level: usize) -> Result<Cochain, CochainError> {
    let lhs = differential(c, level)?.delta_reduce()?;
    let rhs = reduced_differential(&c.delta_reduce()?, level)?;
    lhs.sub(&rhs)
}

/// `d(∂γ) − ∂(dγ)` on tuples of level at most `level`.
pub fn partial_commutation(c: &Cochain, level: usize) -> Result<Cochain, CochainError> {
    d(&c.partial(), level)?.sub(&d(c, level)?.partial())
}

/// Number of tuples where a residual is nonzero, and the first one as text.
pub fn summarize(residual: &Cochain) -> (usize, Option<String>) {
    let first = residual.values().next().map(|(t, v)| format!("{t} : {}", show(v)));
    (residual.support_len(), first)
}

fn show(v: &ModuleElement) -> String {
    if v.rank() == 1 {
        v.components[0].to_string()
    } else {
        let parts: Vec<String> = v.components.iter().map(|p| p.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}
