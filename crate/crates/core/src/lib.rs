//! Exact λ-bracket calculus for the general conformal algebra `gc_N`, the
//! Lie conformal algebra cochain complexes with trivial, twisted and free
//! coefficients, and truncated cohomology computations.

pub mod algebra;
pub mod cochain;
pub mod engine;
pub mod grammar;
pub mod linalg;
pub mod modules;
pub mod par;
pub mod poly;
pub mod properties;
pub mod random;
pub mod rational;

pub use algebra::{AlgebraDescriptor, AlgebraElement, Generator, GeneratorIndex, MatrixLabel};
pub use cochain::{Cochain, GeneratorTuple, LeibnizCochain};
pub use grammar::{parse_poly, ParseError};
pub use modules::{ModuleDescriptor, ModuleElement};
pub use poly::{Monomial, Poly, Var};
pub use rational::Rational;
