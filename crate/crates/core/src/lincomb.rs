//! Finite formal sums with GF(2) coefficients.

use std::ops::{Add, AddAssign};

/// A finite sum of distinct terms over GF(2), stored sorted.
///
/// Adding a term that is already present cancels it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Sum<T> {
    terms: Vec<T>,
}

impl<T> Default for F2Sum<T> {
    fn default() -> Self {
        Self { terms: Vec::new() }
    }
}

impl<T: Ord> F2Sum<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(t: T) -> Self {
        Self { terms: vec![t] }
    }

    /// Collects terms, cancelling those that occur an even number of times.
    pub fn from_terms(terms: impl IntoIterator<Item = T>) -> Self {
        let mut v: Vec<T> = terms.into_iter().collect();
        v.sort_unstable();
        let mut out: Vec<T> = Vec::with_capacity(v.len());
        let mut parity = false;
        for t in v {
            match out.last() {
                Some(last) if *last == t => parity = !parity,
                _ => {
                    if !parity {
                        out.pop();
                    }
                    out.push(t);
                    parity = true;
                }
            }
        }
        if !parity {
            out.pop();
        }
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[T] {
        &self.terms
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.terms.iter()
    }

    pub fn contains(&self, t: &T) -> bool {
        self.terms.binary_search(t).is_ok()
    }

    pub fn toggle(&mut self, t: T) {
        match self.terms.binary_search(&t) {
            Ok(i) => {
                self.terms.remove(i);
            }
            Err(i) => self.terms.insert(i, t),
        }
    }

    pub fn into_terms(self) -> Vec<T> {
        self.terms
    }
}

impl<T: Ord + Clone> F2Sum<T> {
    /// Symmetric difference merge.
    pub fn add_sum(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { terms: out }
    }
}

impl<T: Ord> FromIterator<T> for F2Sum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<'a, T: Ord> IntoIterator for &'a F2Sum<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<T: Ord + Clone> Add for &F2Sum<T> {
    type Output = F2Sum<T>;

    fn add(self, rhs: &F2Sum<T>) -> F2Sum<T> {
        self.add_sum(rhs)
    }
}

impl<T: Ord + Clone> AddAssign<&F2Sum<T>> for F2Sum<T> {
    fn add_assign(&mut self, rhs: &F2Sum<T>) {
        *self = self.add_sum(rhs);
    }
}
