//! Truncated Poincaré series with nonnegative integer coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimensions of a graded vector space in degrees `0..=max_degree`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PoincareSeries {
    dims: Vec<u64>,
}

impl PoincareSeries {
    /// Builds a series from its coefficients. An empty list is treated as the
    /// zero series truncated at degree 0.
    pub fn new(mut dims: Vec<u64>) -> Self {
        if dims.is_empty() {
            dims.push(0);
        }
        Self { dims }
    }

    pub fn zero(max_degree: usize) -> Self {
        Self::new(vec![0; max_degree + 1])
    }

    /// The series `1`.
    pub fn one(max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        s.dims[0] = 1;
        s
    }

    /// `1 / Π (1 - t^{d})` over the given generator degrees: the series of a
    /// polynomial algebra.
    pub fn polynomial(generator_degrees: &[usize], max_degree: usize) -> Self {
        let mut dims = vec![0u64; max_degree + 1];
        dims[0] = 1;
        for &g in generator_degrees {
            assert!(g > 0, "polynomial generators need positive degree");
            for d in g..=max_degree {
                dims[d] += dims[d - g];
            }
        }
        Self { dims }
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    /// Coefficient in degree `d`; zero past the truncation.
    pub fn get(&self, d: usize) -> u64 {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::new((0..=max_degree).map(|d| self.get(d)).collect())
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }

    /// Product, truncated at the smaller of the two bounds.
    pub fn product(&self, other: &Self) -> Self {
        let max = self.max_degree().min(other.max_degree());
        let mut dims = vec![0u64; max + 1];
        for (i, &a) in self.dims.iter().enumerate().take(max + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.dims.iter().enumerate().take(max + 1 - i) {
                dims[i + j] += a * b;
            }
        }
        Self { dims }
    }

    /// Multiplication by `t^k`, keeping the same truncation.
    pub fn shift(&self, k: usize) -> Self {
        Self::new(
            (0..=self.max_degree())
                .map(|d| if d >= k { self.dims[d - k] } else { 0 })
                .collect(),
        )
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.dims.iter().map(|&a| a * c).collect())
    }

    pub fn sum(&self, other: &Self) -> Self {
        let max = self.max_degree().min(other.max_degree());
        Self::new((0..=max).map(|d| self.dims[d] + other.dims[d]).collect())
    }

    /// `self - other`, failing if any coefficient would be negative.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        let max = self.max_degree().min(other.max_degree());
        let mut dims = Vec::with_capacity(max + 1);
        for d in 0..=max {
            let (a, b) = (self.dims[d], other.dims[d]);
            if b > a {
                return Err(Error::NegativeCoefficient {
                    degree: d,
                    value: a as i64 - b as i64,
                });
            }
            dims.push(a - b);
        }
        Ok(Self { dims })
    }

    /// Power-series quotient `self / divisor`, truncated at the smaller bound.
    ///
    /// Fails with `InexactDivision` when a coefficient is not an integer or
    /// comes out negative, i.e. when the quotient is not a Poincaré series.
    pub fn quotient(&self, divisor: &Self) -> Result<Self> {
        let max = self.max_degree().min(divisor.max_degree());
        let lead = divisor.dims[0] as i128;
        if lead == 0 {
            return Err(Error::InexactDivision { degree: 0 });
        }
        let mut q: Vec<i128> = Vec::with_capacity(max + 1);
        for n in 0..=max {
            let mut c = self.dims[n] as i128;
            for k in 1..=n {
                c -= divisor.dims[k] as i128 * q[n - k];
            }
            if c % lead != 0 || c / lead < 0 {
                return Err(Error::InexactDivision { degree: n });
            }
            q.push(c / lead);
        }
        Ok(Self::new(q.into_iter().map(|c| c as u64).collect()))
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PoincareSeries{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_of_unit() {
        let s = PoincareSeries::one(10).shift(8);
        assert_eq!(s.dims(), &[0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn product_of_a1_factors() {
        // (1+t+t^2+t^3)(1+t^3)
        let a = PoincareSeries::new(vec![1, 1, 1, 1, 0, 0, 0, 0]);
        let b = PoincareSeries::new(vec![1, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(a.product(&b).dims(), &[1, 1, 1, 2, 1, 1, 1, 0]);
    }

    #[test]
    fn difference_rejects_negative() {
        let a = PoincareSeries::new(vec![1, 1]);
        let b = PoincareSeries::new(vec![1, 2]);
        assert!(matches!(
            a.difference(&b),
            Err(Error::NegativeCoefficient { degree: 1, value: -1 })
        ));
        assert_eq!(b.difference(&a).unwrap().dims(), &[0, 1]);
    }

    #[test]
    fn quotient_inverts_product() {
        let a = PoincareSeries::polynomial(&[1, 3, 7], 12);
        let b = PoincareSeries::new(vec![1, 1, 1, 2, 1, 1, 1, 0, 0, 0, 0, 0, 0]);
        let p = a.product(&b);
        assert_eq!(p.quotient(&b).unwrap(), a);
        // 1 / (1 + t) has alternating signs
        let one = PoincareSeries::one(3);
        let d = PoincareSeries::new(vec![1, 1, 0, 0]);
        assert!(matches!(one.quotient(&d), Err(Error::InexactDivision { degree: 1 })));
        let two = PoincareSeries::new(vec![2, 0]);
        assert!(matches!(one.truncate(1).quotient(&two), Err(Error::InexactDivision { degree: 0 })));
    }

    #[test]
    fn polynomial_counts_partitions() {
        let p = PoincareSeries::polynomial(&(1..=10).collect::<Vec<_>>(), 10);
        assert_eq!(p.dims(), &[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }
}
