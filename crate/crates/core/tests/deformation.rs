use std::collections::BTreeMap;

use wsmod_core::canonical_ideal::CanonicalIdeal;
use wsmod_core::deformation::{t1_minus, t1_oracle, RhoEngine};
use wsmod_core::semigroup::Semigroup;

fn engine(gens: &[u32]) -> RhoEngine {
    RhoEngine::new(CanonicalIdeal::new(&Semigroup::new(gens).unwrap()).unwrap()).unwrap()
}

#[test]
fn t1_of_genus_seven_family_member() {
    let e = engine(&[6, 8, 9, 10, 11]);
    let t1 = t1_minus(&e);
    let expected: BTreeMap<u32, usize> =
        [(1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (6, 2), (7, 2), (8, 2), (9, 1), (10, 2), (12, 2)].into();
    eprintln!("engine {:?}", t1.histogram());
    eprintln!("oracle {:?}", t1_oracle(&Semigroup::new(&[6, 8, 9, 10, 11]).unwrap()));
    assert_eq!(t1.histogram(), expected);
    assert_eq!(t1_oracle(&Semigroup::new(&[6, 8, 9, 10, 11]).unwrap()), expected);
}

#[test]
fn table_one_t1_totals() {
    for (gens, dim) in [
        (&[6u32, 8, 9, 10, 11][..], 17),
        (&[6, 8, 10, 11, 13], 18),
        (&[7, 9, 10, 11, 12, 13], 23),
        (&[6, 8, 10, 13, 15], 19),
        (&[6, 9, 10, 13, 14], 19),
        (&[6, 14, 15, 16, 17], 28),
    ] {
        let t = std::time::Instant::now();
        let e = engine(gens);
        let t1 = t1_minus(&e);
        let o = t1_oracle(&Semigroup::new(gens).unwrap());
        eprintln!("{gens:?}: {} oracle {} ({:?})", t1.dimension(), o.values().sum::<usize>(), t.elapsed());
        assert_eq!(t1.dimension(), dim);
        assert_eq!(t1.histogram(), o);
    }
}

#[test]
fn quadratic_cone_dims() {
    use wsmod_core::deformation::quadratic_cone;
    use wsmod_core::exact_poly::Rational;
    use wsmod_core::krull::dim_certified;
    for (gens, dim) in [
        (&[6u32, 8, 9, 10, 11][..], 14),
        (&[6, 8, 10, 11, 13], 15),
        (&[7, 9, 10, 11, 12, 13], 16),
        (&[6, 8, 10, 13, 15], 16),
        (&[6, 9, 10, 13, 14], 16),
        (&[6, 14, 15, 16, 17], 22),
    ] {
        let t = std::time::Instant::now();
        let e = engine(gens);
        let t1 = t1_minus(&e);
        let q = quadratic_cone::<Rational>(&e, &t1).unwrap();
        eprintln!("{gens:?}: {} generators in {} vars ({:?})", q.generators.len(), q.num_vars(), t.elapsed());
        let d = dim_certified(&q.generators, q.num_vars(), Some(&q.weights())).unwrap();
        eprintln!("   dim {d} ({:?})", t.elapsed());
        assert_eq!(d, dim);
    }
}

#[test]
fn full_mode_dims() {
    use wsmod_core::deformation::reduce_ideal;
    use wsmod_core::exact_poly::Rational;
    use wsmod_core::krull::dim_certified;
    for (gens, dim) in [(&[6u32, 8, 9, 10, 11][..], 14), (&[6, 8, 10, 11, 13], 15)] {
        let t = std::time::Instant::now();
        let e = engine(gens);
        let t1 = t1_minus(&e);
        let q = reduce_ideal::<Rational>(&e, &t1).unwrap();
        let maxdeg = q.generators.iter().filter_map(|g| g.total_degree()).max();
        eprintln!("{gens:?}: {} generators, max degree {:?} ({:?})", q.generators.len(), maxdeg, t.elapsed());
        let d = dim_certified(&q.generators, q.num_vars(), Some(&q.weights())).unwrap();
        eprintln!("   dim {d} ({:?})", t.elapsed());
        assert_eq!(d, dim);
    }
}
