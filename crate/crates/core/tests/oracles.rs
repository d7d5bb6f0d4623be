//! Dimension counts checked against independent generating-function oracles.

use tsteenrod::fpmod::{realize, GradedModule, ModulePresentation};
use tsteenrod::algebra::A1;
use tsteenrod::steenrod::{self, AlgebraId, SteenrodElement};
use tsteenrod::twisted::{self, TwistedSubalgebraId};
use tsteenrod::unstable::{self, Ambient};

/// Coefficients of `Π 1/(1 - t^g)` over the given generator degrees.
fn polynomial_algebra(generator_degrees: impl IntoIterator<Item = usize>, max_degree: usize) -> Vec<u64> {
    let mut dims = vec![0u64; max_degree + 1];
    dims[0] = 1;
    for g in generator_degrees {
        for d in g..=max_degree {
            dims[d] += dims[d - g];
        }
    }
    dims
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    (0..a.len().min(b.len()))
        .map(|d| (0..=d).map(|i| a[i] * b[d - i]).sum())
        .collect()
}

#[test]
fn steenrod_algebra_matches_dual_monomial_count() {
    let xi = (1..6).map(|i| (1usize << i) - 1).filter(|&g| g <= 20);
    assert_eq!(steenrod::dimension_series(AlgebraId::FullA, 20).dims(), polynomial_algebra(xi, 20));
}

#[test]
fn a1_matches_dual_quotient() {
    // (1 + t + t^2 + t^3)(1 + t^3) is the series of F2[ξ1]/ξ1^4 ⊗ F2[ξ2]/ξ2^2.
    let dual = convolve(&[1, 1, 1, 1, 0, 0, 0, 0], &[1, 0, 0, 1, 0, 0, 0, 0]);
    assert_eq!(steenrod::dimension_series(AlgebraId::A1, 7).dims(), dual);
    assert_eq!(&dual[..7], &[1, 1, 1, 2, 1, 1, 1]);
}

#[test]
fn k_is_polynomial_on_serre_generators() {
    let degrees = std::iter::once(1).chain((0..5).map(|k| (1usize << k) + 1));
    let oracle = polynomial_algebra(degrees, 20);
    assert_eq!(unstable::dimension_series(Ambient::K, 20).dims(), oracle);
    assert_eq!(&oracle[..5], &[1, 1, 2, 3, 4]);
}

#[test]
fn bo_counts_partitions_into_bounded_parts() {
    for vars in [3, 8, 16] {
        let oracle = polynomial_algebra(1..=vars, 16);
        assert_eq!(unstable::dimension_series(Ambient::BO { vars }, 16).dims(), oracle);
    }
}

#[test]
fn bspin_matches_product_oracle() {
    let skipped = [1, 2, 3, 5, 9, 17];
    let oracle = polynomial_algebra((1..=24).filter(|j| !skipped.contains(j)), 24);
    let bspin = unstable::bspin_series(24).unwrap();
    assert_eq!(bspin.dims(), oracle);
    let bo = unstable::dimension_series(Ambient::BO { vars: 24 }, 24);
    assert_eq!(bo, bspin.product(&unstable::dimension_series(Ambient::K, 24)));
}

#[test]
fn joker_has_one_class_in_each_degree_through_four() {
    let joker = ModulePresentation::cyclic(A1, "j", 0, vec![SteenrodElement::sq(3)]).unwrap();
    assert_eq!(realize(&joker, 6).unwrap().poincare().dims(), [1, 1, 1, 1, 1, 0, 0]);
}

#[test]
fn twisted_algebra_is_k_tensor_a() {
    let a = steenrod::dimension_series(AlgebraId::FullA, 24);
    let k = unstable::dimension_series(Ambient::K, 24);
    let expected: Vec<u64> = vec![
        1, 2, 4, 8, 13, 21, 33, 49, 71, 102, 142, 194, 263, 349, 458, 597, 767, 978, 1239, 1554, 1937, 2401, 2954,
        3615, 4404,
    ];
    assert_eq!(convolve(a.dims(), k.dims()), expected);
    assert_eq!(twisted::dimension_series(TwistedSubalgebraId::FullTwisted, 24).dims(), expected);
}

#[test]
fn twisted_a1_is_k_tensor_a1() {
    let a1 = steenrod::dimension_series(AlgebraId::A1, 16);
    let k = unstable::dimension_series(Ambient::K, 16);
    assert_eq!(
        twisted::dimension_series(TwistedSubalgebraId::TwistedA1, 16).dims(),
        convolve(a1.dims(), k.dims())
    );
}
