//! Property tests over randomly sampled elements.

use proptest::prelude::*;
use tsteenrod::algebra::A1;
use tsteenrod::expr;
use tsteenrod::fpmod::{realize, ModulePresentation};
use tsteenrod::steenrod::{self, AlgebraId, SqWord, SteenrodElement};
use tsteenrod::twisted::{self, TwistedElement, TwistedSubalgebraId};
use tsteenrod::unstable::{self, Ambient, PolyElement};

fn steenrod_element(max_degree: usize) -> impl Strategy<Value = SteenrodElement> {
    (0..=max_degree, any::<u64>()).prop_map(|(d, mask)| {
        let basis = steenrod::admissible_basis(d);
        SteenrodElement::from_terms(
            basis
                .into_iter()
                .enumerate()
                .filter(|(i, _)| *i == 0 || mask >> (i % 64) & 1 == 1)
                .map(|(_, m)| m),
        )
    })
}

fn twisted_element(id: TwistedSubalgebraId, max_degree: usize) -> impl Strategy<Value = TwistedElement> {
    (0..=max_degree, any::<u64>()).prop_map(move |(d, mask)| {
        twisted::basis(id, d)
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i == 0 || mask >> (i % 64) & 1 == 1)
            .fold(TwistedElement::zero(), |acc, (_, b)| &acc + &b)
    })
}

fn poly_element(ambient: Ambient, max_degree: usize) -> impl Strategy<Value = PolyElement> {
    (0..=max_degree, any::<u64>()).prop_map(move |(d, mask)| {
        unstable::monomials(ambient, d)
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i == 0 || mask >> (i % 64) & 1 == 1)
            .fold(PolyElement::zero(ambient), |acc, (_, m)| &acc + &PolyElement::from_monomial(ambient, m))
    })
}

fn iterated_coproducts(a: &SteenrodElement) -> (Vec<String>, Vec<String>) {
    let mut left = tsteenrod::lincomb::F2Sum::zero();
    let mut right = tsteenrod::lincomb::F2Sum::zero();
    for (x, y) in steenrod::coproduct(a).iter() {
        for (p, q) in steenrod::coproduct(&x.clone().into()).iter() {
            left.toggle((p.clone(), q.clone(), y.clone()));
        }
        for (p, q) in steenrod::coproduct(&y.clone().into()).iter() {
            right.toggle((x.clone(), p.clone(), q.clone()));
        }
    }
    let render = |s: &tsteenrod::lincomb::F2Sum<_>| {
        s.iter()
            .map(|(a, b, c): &(_, _, _)| format!("{a}|{b}|{c}"))
            .collect::<Vec<String>>()
    };
    (render(&left), render(&right))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adem_normal_form_matches_sequential_products(word in prop::collection::vec(1u16..=7, 1..=4)) {
        let w = SqWord::new(word.clone()).unwrap();
        let normal = steenrod::adem_normalize(&w);
        let sequential = word.iter().fold(SteenrodElement::one(), |acc, &i| &acc * &SteenrodElement::sq(i));
        prop_assert_eq!(&normal, &sequential);
        for m in normal.terms() {
            prop_assert_eq!(m.degree(), w.degree());
            prop_assert!(m.exponents().windows(2).all(|p| p[0] >= 2 * p[1]));
        }
    }

    #[test]
    fn steenrod_product_is_associative(a in steenrod_element(6), b in steenrod_element(6), c in steenrod_element(6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn steenrod_coproduct_is_coassociative(a in steenrod_element(10)) {
        let (left, right) = iterated_coproducts(&a);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn steenrod_coproduct_is_multiplicative(a in steenrod_element(6), b in steenrod_element(6)) {
        prop_assert_eq!(
            steenrod::coproduct(&(&a * &b)),
            steenrod::tensor_multiply(&steenrod::coproduct(&a), &steenrod::coproduct(&b))
        );
    }

    #[test]
    fn twisted_product_is_associative(
        x in twisted_element(TwistedSubalgebraId::FullTwisted, 4),
        y in twisted_element(TwistedSubalgebraId::FullTwisted, 4),
        z in twisted_element(TwistedSubalgebraId::FullTwisted, 4),
    ) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn twisted_coproduct_is_multiplicative(
        x in twisted_element(TwistedSubalgebraId::FullTwisted, 4),
        y in twisted_element(TwistedSubalgebraId::FullTwisted, 4),
    ) {
        prop_assert_eq!(
            twisted::coproduct_twisted(&(&x * &y)),
            twisted::tensor_multiply_twisted(&twisted::coproduct_twisted(&x), &twisted::coproduct_twisted(&y))
        );
    }

    #[test]
    fn phi_ext_and_psi_are_inverse(x in twisted_element(TwistedSubalgebraId::TwistedA1, 10)) {
        let p = twisted::phi_extended(&x).unwrap();
        prop_assert_eq!(twisted::psi(&p).unwrap(), x.clone());
        prop_assert_eq!(twisted::phi_extended(&twisted::psi(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn phi_is_multiplicative_on_a1(i in 0usize..8, j in 0usize..8) {
        let a1 = steenrod::a1();
        let (x, y) = (&a1.element(i).element, &a1.element(j).element);
        prop_assert_eq!(twisted::phi(&(x * y)).unwrap(), &twisted::phi(x).unwrap() * &twisted::phi(y).unwrap());
    }

    #[test]
    fn cartan_formula_in_k(x in poly_element(Ambient::K, 5), y in poly_element(Ambient::K, 5), i in 0u16..=6) {
        let lhs = unstable::sq_action(i, &(&x * &y));
        let rhs = (0..=i).fold(PolyElement::zero(Ambient::K), |acc, j| {
            &acc + &(&unstable::sq_action(j, &x) * &unstable::sq_action(i - j, &y))
        });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unstable_axioms_in_bo(x in poly_element(Ambient::BO { vars: 8 }, 7)) {
        let Some(d) = x.degree() else { return Ok(()); };
        prop_assert_eq!(unstable::sq_action(0, &x), x.clone());
        prop_assert_eq!(unstable::sq_action(d as u16, &x), x.square());
        prop_assert!(unstable::sq_action(d as u16 + 1, &x).is_zero());
    }

    #[test]
    fn adem_relations_hold_on_k(x in poly_element(Ambient::K, 4), a in 1u16..=4, b in 1u16..=4) {
        let word = &SteenrodElement::sq(a) * &SteenrodElement::sq(b);
        let sequential = unstable::sq_action(a, &unstable::sq_action(b, &x));
        prop_assert_eq!(unstable::apply(&word, &x), sequential);
    }

    #[test]
    fn classification_is_equivariant(k in poly_element(Ambient::K, 5), i in 0u16..=5) {
        let vars = 12;
        let lhs = unstable::classify_iota_to_w(&unstable::sq_action(i, &k), vars).unwrap();
        let rhs = unstable::sq_action(i, &unstable::classify_iota_to_w(&k, vars).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn realized_relations_vanish(picks in prop::collection::vec(1usize..8, 1..=3)) {
        let a1 = steenrod::a1();
        let relations = picks.into_iter().map(|i| a1.element(i).element.clone()).collect();
        let p = ModulePresentation::cyclic(A1, "g", 0, relations).unwrap();
        prop_assert!(realize(&p, 8).unwrap().relations_sound().unwrap());
    }

    #[test]
    fn steenrod_rendering_round_trips(a in steenrod_element(12)) {
        prop_assert_eq!(expr::parse_steenrod(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn twisted_rendering_round_trips(x in twisted_element(TwistedSubalgebraId::FullTwisted, 7)) {
        prop_assert_eq!(expr::parse_twisted(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn poly_rendering_round_trips(x in poly_element(Ambient::K, 9)) {
        prop_assert_eq!(expr::parse_poly(&x.to_string(), Ambient::K).unwrap(), x);
    }

    #[test]
    fn expression_display_round_trips(x in twisted_element(TwistedSubalgebraId::FullTwisted, 6)) {
        let e = expr::parse(&x.to_string()).unwrap();
        prop_assert_eq!(expr::parse(&e.to_string()).unwrap(), e);
    }
}

#[test]
fn a1_dimension_sanity() {
    assert_eq!(steenrod::dimension_series(AlgebraId::A1, 6).total(), 8);
}
