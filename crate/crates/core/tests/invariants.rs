use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::sample::select;

use qcap_core::capelli::capelli_eigenvalue;
use qcap_core::partitions::{contains, count_shifted_tableaux, enumerate_strict, n_lambda};
use qcap_core::qfunctions::{expand_in_basis, factorial_schur_q, schur_q, Basis};
use qcap_core::repsim::measured_eigenvalue;
use qcap_core::{ExactScalar, MultiPoly, StrictPartition};

fn strict(n: usize, k: u32) -> impl Strategy<Value = StrictPartition> {
    select(enumerate_strict(n, k))
}

fn single(lambda: &StrictPartition) -> Vec<(StrictPartition, ExactScalar)> {
    vec![(lambda.clone(), ExactScalar::one())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tableau_count_matches_product_formula(lambda in strict(5, 12)) {
        prop_assert_eq!(n_lambda(&lambda), ExactScalar::from_integer(count_shifted_tableaux(&lambda).into()));
    }

    #[test]
    fn eigenvalue_is_normalized_and_vanishes_off_containment(lambda in strict(3, 5), mu in strict(3, 5)) {
        let c = capelli_eigenvalue(&lambda, &mu, 3).unwrap();
        if lambda == mu {
            prop_assert!(c.is_one());
        }
        if !contains(&lambda, &mu) {
            prop_assert!(c.is_zero());
        }
    }

    #[test]
    fn bases_expand_to_themselves(lambda in strict(2, 5)) {
        let q = schur_q(&lambda, 2).unwrap();
        let star = factorial_schur_q(&lambda, 2).unwrap();
        prop_assert_eq!(expand_in_basis(&q, Basis::Q, 2).unwrap().into_iter().collect::<Vec<_>>(), single(&lambda));
        prop_assert_eq!(expand_in_basis(&star, Basis::QStar, 2).unwrap().into_iter().collect::<Vec<_>>(), single(&lambda));
    }

    #[test]
    fn polynomial_json_round_trips(lambda in strict(3, 4)) {
        let p = factorial_schur_q(&lambda, 3).unwrap();
        prop_assert_eq!(MultiPoly::from_json_str(&p.to_json_string()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn measured_spectrum_matches_closed_form(lambda in strict(2, 3), mu in strict(2, 3)) {
        prop_assume!(lambda.weight() <= mu.weight());
        prop_assert_eq!(measured_eigenvalue(&lambda, &mu, 2).unwrap(), capelli_eigenvalue(&lambda, &mu, 2).unwrap());
    }
}
