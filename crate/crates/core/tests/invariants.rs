//! Property-based invariants of the polynomial layer and the cochain format.

use std::collections::HashMap;

use proptest::prelude::*;

use gcn_core::cochain::{parse_cochain, write_cochain};
use gcn_core::engine::monomials_of_degree;
use gcn_core::random::{random_cochain, rng_from_seed, RandomShape};
use gcn_core::rational::ratio;
use gcn_core::{parse_poly, ModuleDescriptor, Poly, Var};

const VARS: [Var; 4] = [Var::Lambda(1), Var::Lambda(2), Var::Lambda(3), Var::Partial];

fn poly_strategy(vars: &'static [Var], max_degree: u32) -> impl Strategy<Value = Poly> {
    let monomials: Vec<_> = (0..=max_degree).flat_map(|d| monomials_of_degree(vars, d)).collect();
    let n = monomials.len();
    prop::collection::vec((0..n, -5i64..=5, 1i64..=3), 0..6).prop_map(move |terms| {
        let mut p = Poly::zero();
        for (i, num, den) in terms {
            p.add_term(monomials[i].clone(), ratio(num, den));
        }
        p
    })
}

fn any_poly() -> impl Strategy<Value = Poly> {
    poly_strategy(&VARS, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in any_poly(), b in any_poly(), c in any_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in any_poly(), b in any_poly(), s in poly_strategy(&VARS[..2], 2)) {
        let map: HashMap<Var, Poly> = [(Var::Lambda(3), s.clone()), (Var::Partial, &s + &Poly::lambda(1))].into();
        prop_assert_eq!((&a * &b).substitute(&map), &a.substitute(&map) * &b.substitute(&map));
        prop_assert_eq!((&a + &b).substitute(&map), &a.substitute(&map) + &b.substitute(&map));
    }

    #[test]
    fn euler_identity(a in any_poly(), d in 0u32..=3) {
        let h = a.homogeneous_component(d, &|_| true);
        let mut euler = Poly::zero();
        for v in VARS {
            euler += &(&Poly::var(v) * &h.derivative(v));
        }
        prop_assert_eq!(euler, h.scale(&ratio(d as i64, 1)));
    }

    #[test]
    fn poly_text_round_trip(a in any_poly()) {
        prop_assert_eq!(parse_poly(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn cochain_text_round_trip(seed in 0u64..1000, q in 0usize..=3, reduced in any::<bool>(), rank in 1usize..=2) {
        let module = if rank == 1 { ModuleDescriptor::Trivial } else { ModuleDescriptor::natural(2) };
        let shape = RandomShape::new(q, rank, module, reduced, 1).with_degrees(0..=1);
        let c = random_cochain(&mut rng_from_seed(seed), &shape).unwrap();
        prop_assert_eq!(parse_cochain(&write_cochain(&c)).unwrap(), c);
    }
}
