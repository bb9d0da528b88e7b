//! Identities of the constructions, checked over every verified catalog
//! family at random specializations, and the isomorphism search under
//! random basis changes.

mod common;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use common::*;
use rbalg::catalog;
use rbalg::classify::{find_isomorphism, iso_invariants, transports, IsoOutcome, IsoSearch};
use rbalg::{Algebra, GaussRat, Operator};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn identities_at_random_specializations(
        idx in 0usize..10_000,
        seed in 0usize..64,
        values in proptest::collection::vec(small_value(), 4),
        alpha in small_value(),
    ) {
        let cases = pool();
        let case = &cases[idx % cases.len()];
        let Some(r) = specialize(case, seed, &values) else {
            return Err(TestCaseError::reject("no admissible point"));
        };
        check_identities(&case.algebra, &r, &alpha)
            .map_err(|e| TestCaseError::fail(format!("{} with R = {}: {}", case.family.name, r, e)))?;
    }
}

#[test]
fn identities_on_every_family() {
    let mut checked = 0;
    for case in pool() {
        let alpha = GaussRat::frac(3, 2);
        for p in case.points.iter().take(2) {
            let r = case.family.specialize(p).unwrap();
            if let Err(e) = check_identities(&case.algebra, &r, &alpha) {
                panic!("{} at {}: {}", case.family.name, rbalg::operators::fmt_assignment(p), e);
            }
            checked += 1;
        }
    }
    // A1-A5, B1, B2, C1-C12, T1-T12 and the generated entries
    assert!(checked > 200, "only {} specializations", checked);
    let families: std::collections::BTreeSet<&str> = pool().iter().map(|c| c.family.name.as_str()).collect();
    for name in ["A1.4", "B1.1", "B2.1", "C5.1", "T6.14", "T12.1"] {
        assert!(families.contains(name), "{} missing from the pool", name);
    }
}

fn concrete_algebras() -> Vec<Algebra> {
    catalog::labels()
        .into_iter()
        .map(|l| catalog::load_unverified(&l).unwrap().algebra)
        .filter(|a| a.is_concrete() && a.dim() >= 2)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Transporting a catalog algebra along a random basis change gives an
    /// isomorphic algebra with the same invariants, and the search finds a
    /// witness in both directions.
    #[test]
    fn isomorphism_search_is_symmetric(
        idx in 0usize..1000,
        ops in proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2, any::<bool>()), 1..5),
    ) {
        let algebras = concrete_algebras();
        let a = &algebras[idx % algebras.len()];
        let n = a.dim();
        let (t, inv) = elementary(n, &ops);
        let ta = Tab::of(a);
        // e_i *_B e_j = T(T^-1 e_i * T^-1 e_j)
        let b = Tab::from_fn(n, |x, y| t.apply(&ta.mul(&inv.apply(x), &inv.apply(y)))).algebra();
        prop_assert!(transports(a, &b, &to_operator(&t)));
        prop_assert!(transports(&b, a, &to_operator(&inv)));
        prop_assert_eq!(iso_invariants(a).unwrap(), iso_invariants(&b).unwrap());
        let search = IsoSearch::default();
        for (x, y) in [(a, &b), (&b, a)] {
            match find_isomorphism(x, y, &[], &search).unwrap() {
                IsoOutcome::Witness(w) => prop_assert!(transports(x, y, &w.transform)),
                other => prop_assert!(false, "no witness: {:?}", other),
            }
        }
    }
}

#[test]
fn evaluator_matches_known_products() {
    // type (II) in dimension 2: e1 e1 = e1, e1 e2 = e2
    let a = catalog::load("type-II(2)").unwrap().algebra;
    let t = Tab::of(&a);
    assert_eq!(t.mul(&basis(2, 0), &basis(2, 1)), basis(2, 1));
    assert!(is_zero(&t.mul(&basis(2, 1), &basis(2, 0))));
    let r = Mat::of(&Operator::from_ints(&[&[1, 0], &[2, 0]]).unwrap());
    let star = induced(&t, &r);
    assert_eq!(star.mul(&basis(2, 0), &basis(2, 0)), vec![GaussRat::from_int(-1), zero()]);
    assert_eq!(star.mul(&basis(2, 1), &basis(2, 1)), vec![zero(), GaussRat::from_int(2)]);
}
