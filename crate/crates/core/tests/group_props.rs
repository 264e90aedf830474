mod common;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_idempotent(gens in common::gates(), pick in any::<prop::sample::Index>()) {
        common::closure_idempotent(&gens, pick)?;
    }

    #[test]
    fn subgroup_orders_divide_group_order(gens in common::gates()) {
        common::lagrange(&gens)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn magic_basis_conjugates_so4_to_local_gates((a, b) in common::so4_seeds()) {
        common::magic_locality(a, b)?;
    }
}

#[test]
fn magic_basis_reflection_is_not_local() {
    assert!(common::magic_reflection_is_entangling());
}

#[test]
fn monomial_parts_round_trip_on_every_monomial_catalog_element() {
    let checked = common::monomial_round_trip_all().unwrap();
    assert!(checked > 10_000);
}
