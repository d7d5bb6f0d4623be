//! A common interface for the four acting algebras used by module
//! presentations: `𝒜`, `𝒜(1)`, `𝒜̲` and `𝒜̲(1)`.
//!
//! Subalgebras share the coordinates of their ambient algebra, so a basis
//! element of `𝒜(1)` in degree 5 is the vector of `Sq5 + Sq4 Sq1` in the
//! admissible basis of `𝒜`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock};

use f2linalg::BitVector;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr;
use crate::steenrod::{self, a1, AlgebraId, SteenrodElement};
use crate::twisted::{self, TwistedElement, TwistedSubalgebraId};
use crate::unstable::{self, Ambient, UGenerator};

/// Names the acting algebra of a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    #[serde(alias = "A")]
    FullA,
    A1,
    #[serde(alias = "Twisted")]
    FullTwisted,
    TwistedA1,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlgebraKind::FullA => "FullA",
            AlgebraKind::A1 => "A1",
            AlgebraKind::FullTwisted => "FullTwisted",
            AlgebraKind::TwistedA1 => "TwistedA1",
        };
        f.write_str(s)
    }
}

/// A connected graded algebra over GF(2), materialized degree by degree.
pub trait GradedAlgebra: Clone + Send + Sync + 'static {
    type Element: Clone + PartialEq + fmt::Display + fmt::Debug + Send + Sync;

    fn kind(&self) -> AlgebraKind;
    fn one(&self) -> Self::Element;
    fn zero(&self) -> Self::Element;
    fn add(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn is_zero(&self, a: &Self::Element) -> bool;
    /// Common degree of all terms; `None` for zero or inhomogeneous input.
    fn degree(&self, a: &Self::Element) -> Option<usize>;
    fn contains(&self, a: &Self::Element) -> bool;
    /// A basis of the degree-`d` part.
    fn basis(&self, d: usize) -> Arc<Vec<Self::Element>>;
    /// Dimension of the ambient coordinate space in degree `d`.
    fn coordinate_dim(&self, d: usize) -> usize;
    /// Coordinates of the degree-`d` part of `a` in the ambient coordinates.
    fn coordinates(&self, a: &Self::Element, d: usize) -> BitVector;
    /// Algebra generators of degree at most `max_degree`, with labels.
    fn generators(&self, max_degree: usize) -> Vec<(String, Self::Element)>;
    fn parse(&self, s: &str) -> Result<Self::Element>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FullA;

#[derive(Clone, Copy, Debug, Default)]
pub struct A1;

#[derive(Clone, Copy, Debug, Default)]
pub struct Twisted;

#[derive(Clone, Copy, Debug, Default)]
pub struct TwistedA1;

type Cache<K, V> = LazyLock<RwLock<HashMap<K, Arc<V>>>>;

static STEENROD_BASES: Cache<(AlgebraId, usize), Vec<SteenrodElement>> = LazyLock::new(Default::default);
static TWISTED_BASES: Cache<(TwistedSubalgebraId, usize), Vec<TwistedElement>> = LazyLock::new(Default::default);

fn steenrod_basis(id: AlgebraId, d: usize) -> Arc<Vec<SteenrodElement>> {
    if let Some(hit) = STEENROD_BASES.read().get(&(id, d)) {
        return hit.clone();
    }
    let out = Arc::new(steenrod::basis(id, d));
    STEENROD_BASES.write().insert((id, d), out.clone());
    out
}

fn twisted_basis(id: TwistedSubalgebraId, d: usize) -> Arc<Vec<TwistedElement>> {
    if let Some(hit) = TWISTED_BASES.read().get(&(id, d)) {
        return hit.clone();
    }
    let out = Arc::new(twisted::basis(id, d));
    TWISTED_BASES.write().insert((id, d), out.clone());
    out
}

fn powers_of_two(max_degree: usize) -> impl Iterator<Item = u16> {
    (0..16).map(|k| 1u16 << k).take_while(move |&s| s as usize <= max_degree)
}

macro_rules! steenrod_common {
    () => {
        type Element = SteenrodElement;

        fn one(&self) -> SteenrodElement {
            SteenrodElement::one()
        }

        fn zero(&self) -> SteenrodElement {
            SteenrodElement::zero()
        }

        fn add(&self, a: &SteenrodElement, b: &SteenrodElement) -> SteenrodElement {
            a + b
        }

        fn multiply(&self, a: &SteenrodElement, b: &SteenrodElement) -> SteenrodElement {
            steenrod::multiply(a, b)
        }

        fn is_zero(&self, a: &SteenrodElement) -> bool {
            a.is_zero()
        }

        fn degree(&self, a: &SteenrodElement) -> Option<usize> {
            a.degree()
        }

        fn coordinate_dim(&self, d: usize) -> usize {
            steenrod::admissible_basis(d).len()
        }

        fn coordinates(&self, a: &SteenrodElement, d: usize) -> BitVector {
            steenrod::coordinates(a, d)
        }

        fn parse(&self, s: &str) -> Result<SteenrodElement> {
            let a = expr::parse_steenrod(s)?;
            if !self.contains(&a) {
                return Err(Error::NotInSubalgebra {
                    what: a.to_string(),
                    algebra: self.label(),
                });
            }
            Ok(a)
        }
    };
}

macro_rules! twisted_common {
    () => {
        type Element = TwistedElement;

        fn one(&self) -> TwistedElement {
            TwistedElement::one()
        }

        fn zero(&self) -> TwistedElement {
            TwistedElement::zero()
        }

        fn add(&self, a: &TwistedElement, b: &TwistedElement) -> TwistedElement {
            a + b
        }

        fn multiply(&self, a: &TwistedElement, b: &TwistedElement) -> TwistedElement {
            twisted::multiply_twisted(a, b)
        }

        fn is_zero(&self, a: &TwistedElement) -> bool {
            a.is_zero()
        }

        fn degree(&self, a: &TwistedElement) -> Option<usize> {
            a.degree()
        }

        fn coordinate_dim(&self, d: usize) -> usize {
            twisted::term_table(d).list.len()
        }

        fn coordinates(&self, a: &TwistedElement, d: usize) -> BitVector {
            twisted::coordinates(a, d)
        }

        fn parse(&self, s: &str) -> Result<TwistedElement> {
            let a = expr::parse_twisted(s)?;
            if !self.contains(&a) {
                return Err(Error::NotInSubalgebra {
                    what: a.to_string(),
                    algebra: self.label(),
                });
            }
            Ok(a)
        }
    };
}

fn k_generators(max_degree: usize) -> Vec<(String, TwistedElement)> {
    unstable::generators_up_to(Ambient::K, max_degree)
        .into_iter()
        .map(|g| {
            let k = unstable::PolyElement::generator(Ambient::K, g).expect("K generator");
            let label = match g {
                UGenerator::Iota2Derived(j) if j > 0 => format!("({g}) | 1"),
                _ => format!("{g} | 1"),
            };
            (label, TwistedElement::from_poly(&k))
        })
        .collect()
}

impl FullA {
    fn label(&self) -> &'static str {
        "A"
    }
}

impl A1 {
    fn label(&self) -> &'static str {
        "A(1)"
    }
}

impl Twisted {
    fn label(&self) -> &'static str {
        "the twisted algebra"
    }
}

impl TwistedA1 {
    fn label(&self) -> &'static str {
        "the twisted A(1)"
    }
}

impl GradedAlgebra for FullA {
    steenrod_common!();

    fn kind(&self) -> AlgebraKind {
        AlgebraKind::FullA
    }

    fn contains(&self, _: &SteenrodElement) -> bool {
        true
    }

    fn basis(&self, d: usize) -> Arc<Vec<SteenrodElement>> {
        steenrod_basis(AlgebraId::FullA, d)
    }

    fn generators(&self, max_degree: usize) -> Vec<(String, SteenrodElement)> {
        powers_of_two(max_degree)
            .map(|s| (format!("Sq{s}"), SteenrodElement::sq(s)))
            .collect()
    }
}

impl GradedAlgebra for A1 {
    steenrod_common!();

    fn kind(&self) -> AlgebraKind {
        AlgebraKind::A1
    }

    fn contains(&self, a: &SteenrodElement) -> bool {
        a1().contains(a)
    }

    fn basis(&self, d: usize) -> Arc<Vec<SteenrodElement>> {
        steenrod_basis(AlgebraId::A1, d)
    }

    fn generators(&self, max_degree: usize) -> Vec<(String, SteenrodElement)> {
        powers_of_two(max_degree.min(2))
            .map(|s| (format!("Sq{s}"), SteenrodElement::sq(s)))
            .collect()
    }
}

impl GradedAlgebra for Twisted {
    twisted_common!();

    fn kind(&self) -> AlgebraKind {
        AlgebraKind::FullTwisted
    }

    fn contains(&self, _: &TwistedElement) -> bool {
        true
    }

    fn basis(&self, d: usize) -> Arc<Vec<TwistedElement>> {
        twisted_basis(TwistedSubalgebraId::FullTwisted, d)
    }

    fn generators(&self, max_degree: usize) -> Vec<(String, TwistedElement)> {
        let mut out: Vec<_> = powers_of_two(max_degree)
            .map(|s| (format!("1 | Sq{s}"), TwistedElement::from_steenrod(&SteenrodElement::sq(s))))
            .collect();
        out.extend(k_generators(max_degree));
        out
    }
}

impl GradedAlgebra for TwistedA1 {
    twisted_common!();

    fn kind(&self) -> AlgebraKind {
        AlgebraKind::TwistedA1
    }

    fn contains(&self, a: &TwistedElement) -> bool {
        twisted::contains_a1(a)
    }

    fn basis(&self, d: usize) -> Arc<Vec<TwistedElement>> {
        twisted_basis(TwistedSubalgebraId::TwistedA1, d)
    }

    fn generators(&self, max_degree: usize) -> Vec<(String, TwistedElement)> {
        let mut out: Vec<_> = powers_of_two(max_degree.min(2))
            .map(|s| (format!("1 | Sq{s}"), TwistedElement::from_steenrod(&SteenrodElement::sq(s))))
            .collect();
        out.extend(k_generators(max_degree));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bases_have_expected_sizes() {
        assert_eq!(FullA.basis(3).len(), 2);
        assert_eq!(A1.basis(3).len(), 2);
        assert_eq!(A1.basis(7).len(), 0);
        assert_eq!(Twisted.basis(2).len(), 4);
        assert_eq!(TwistedA1.basis(1).len(), 2);
    }

    #[test]
    fn subalgebra_coordinates_are_independent() {
        for d in 0..=6 {
            let mut t = f2linalg::SpanTracker::new(A1.coordinate_dim(d), 0);
            for b in A1.basis(d).iter() {
                assert!(t.insert(&A1.coordinates(b, d)));
            }
        }
    }

    #[test]
    fn parse_checks_membership() {
        assert!(A1.parse("Sq2 Sq2").is_ok());
        assert!(matches!(A1.parse("Sq4"), Err(Error::NotInSubalgebra { .. })));
        assert!(TwistedA1.parse("i1 | Sq2").is_ok());
        assert!(TwistedA1.parse("i1 | Sq4").is_err());
    }

    #[test]
    fn generator_lists() {
        let g: Vec<String> = FullA.generators(8).into_iter().map(|(s, _)| s).collect();
        assert_eq!(g, ["Sq1", "Sq2", "Sq4", "Sq8"]);
        let t: Vec<String> = TwistedA1.generators(3).into_iter().map(|(s, _)| s).collect();
        assert_eq!(t, ["1 | Sq1", "1 | Sq2", "i1 | 1", "i2 | 1", "(Sq1 i2) | 1"]);
    }
}
