use proptest::prelude::*;

use wsmod_core::exact_poly::{Monomial, Poly, Rational};
use wsmod_core::family::{
    crosscheck_generic, family_dims, graded_t1, w_equations, w_scalar_equations, ArtinElement, FamilyModel,
};
use wsmod_core::krull::dim_certified;

#[test]
fn w_dimension_is_seven_tau() {
    for tau in 1..=2 {
        let w = w_scalar_equations(tau);
        let d = dim_certified(&w.generators, w.num_vars(), Some(&w.weights())).unwrap();
        assert_eq!(d, 7 * tau as usize);
    }
}

#[test]
fn non_unit_stratum_for_tau_two() {
    let w = w_scalar_equations(2);
    let mut gens = w.generators.clone();
    for i in 1..=10 {
        gens.push(Poly::monomial(Monomial::var(w.var(i, 0))));
    }
    let d = dim_certified(&gens, w.num_vars(), Some(&w.weights())).unwrap();
    assert_eq!(d, 10);
}

proptest! {
    // With ω_1 a unit, solving the first, third and fourth equations for
    // ω_9, ω_4, ω_7 leaves the other two identically satisfied.
    #[test]
    fn unit_elimination(
        tau in 1usize..=3,
        c0 in prop_oneof![-4i64..=-1, 1i64..=4],
        cs in prop::collection::vec(-5i64..=5, 30),
    ) {
        let mut omega: [ArtinElement; 10] = std::array::from_fn(|i| ArtinElement::from_i64s(&cs[3 * i..3 * i + tau]));
        let mut first = cs[..tau].to_vec();
        first[0] = c0;
        omega[0] = ArtinElement::from_i64s(&first);
        let w1 = omega[0].clone();
        let inv = w1.inverse().unwrap();
        let o = |k: usize| omega[k - 1].clone();
        let w9 = &(&(&o(2) * &o(10)) - &(&o(5) * &o(6))) * &inv;
        let w4 = &-&(&(&o(2) * &o(3)) + &(&o(6) * &o(8))) * &inv;
        let w7 = &-&(&(&o(8) * &o(10)) + &(&o(3) * &o(5))) * &inv;
        omega[8] = w9;
        omega[3] = w4;
        omega[6] = w7;
        for e in w_equations(&omega) {
            prop_assert!(e.is_zero(), "{}", e);
        }
    }

    #[test]
    fn scalar_export_matches_artinian_evaluation(tau in 1usize..=3, cs in prop::collection::vec(-4i64..=4, 30)) {
        let omega: [ArtinElement; 10] = std::array::from_fn(|i| ArtinElement::from_i64s(&cs[3 * i..3 * i + tau]));
        let w = w_scalar_equations(tau as u32);
        let point: Vec<Rational> = (1..=10).flat_map(|i| omega[i - 1].coeffs().to_vec()).collect();
        let vals = w_equations(&omega);
        for (e, val) in vals.iter().enumerate() {
            for k in 0..tau {
                let g = &w.generators[e * tau + k];
                let mut acc = Rational::from_integer(0.into());
                for (m, c) in g.terms() {
                    let mut t = c.clone();
                    for &(v, x) in m.pairs() {
                        for _ in 0..x {
                            t *= &point[v as usize];
                        }
                    }
                    acc += t;
                }
                prop_assert_eq!(&acc, &val.coeffs()[k]);
            }
        }
    }
}

#[test]
fn generic_pipeline_matches_closed_forms() {
    for tau in 1..=2 {
        let r = crosscheck_generic(tau, true).unwrap();
        assert_eq!(r.dim_t1 as u32, family_dims(tau).dim_t1);
        assert_eq!(r.t1_weights, graded_t1(tau));
        assert_eq!(r.dim_q, Some(family_dims(tau).dim_q as usize));
        assert_eq!(r.constant_weights, Some(FamilyModel::new(tau).v_weights));
    }
}
