//! The mod 2 Steenrod algebra in the admissible basis.
//!
//! Products are normalized with the Adem relations
//! `Sq^a Sq^b = Σ_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c` (for `a < 2b`), applied by
//! left-multiplying a single square onto an admissible monomial. Those left
//! products, monomial products and coproducts are memoized in process-wide
//! caches guarded by read-write locks, so lookups from many threads proceed
//! concurrently and insertions are serialized.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock};

use f2linalg::{BitVector, SpanTracker};
use parking_lot::RwLock;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lincomb::F2Sum;
use crate::series::PoincareSeries;

pub(crate) type Exps = SmallVec<[u16; 6]>;

/// `C(n, k) mod 2` by Lucas' theorem; zero outside `0 ≤ k ≤ n`.
pub(crate) fn binom_odd(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && k <= n && (k & !n) == 0
}

/// A free word `Sq^{i_1} ⋯ Sq^{i_k}`; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqWord(Vec<u16>);

impl SqWord {
    pub fn new(exponents: Vec<u16>) -> Result<Self> {
        if exponents.contains(&0) {
            return Err(Error::ZeroExponent);
        }
        Ok(Self(exponents))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }
}

/// `Sq^{i_1} ⋯ Sq^{i_k}` with `i_j ≥ 2 i_{j+1}`.
///
/// Ordered by degree first, then with larger leading exponents first, so a
/// rendered sum reads `Sq5 + Sq4 Sq1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AdmissibleMonomial(Exps);

impl AdmissibleMonomial {
    pub fn new(exponents: &[u16]) -> Result<Self> {
        if exponents.contains(&0) {
            return Err(Error::ZeroExponent);
        }
        if !is_admissible(exponents) {
            return Err(Error::NotAdmissible(exponents.to_vec()));
        }
        Ok(Self(exponents.iter().copied().collect()))
    }

    pub fn unit() -> Self {
        Self(Exps::new())
    }

    /// `Sq^i`, or the unit for `i = 0`.
    pub fn sq(i: u16) -> Self {
        if i == 0 {
            Self::unit()
        } else {
            Self(smallvec::smallvec![i])
        }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// `i_1 - (i_2 + ⋯ + i_k)`; zero for the unit.
    pub fn excess(&self) -> i64 {
        match self.0.split_first() {
            None => 0,
            Some((&first, rest)) => first as i64 - rest.iter().map(|&e| e as i64).sum::<i64>(),
        }
    }

    fn tail(&self) -> Self {
        Self(self.0[1..].iter().copied().collect())
    }
}

fn is_admissible(e: &[u16]) -> bool {
    e.windows(2).all(|w| w[0] >= 2 * w[1])
}

impl Ord for AdmissibleMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for AdmissibleMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "Sq{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of the Steenrod algebra: a GF(2) sum of admissible monomials.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SteenrodElement(F2Sum<AdmissibleMonomial>);

impl SteenrodElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self(F2Sum::from_term(AdmissibleMonomial::unit()))
    }

    /// `Sq^i`, with `Sq^0 = 1`.
    pub fn sq(i: u16) -> Self {
        Self(F2Sum::from_term(AdmissibleMonomial::sq(i)))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = AdmissibleMonomial>) -> Self {
        Self(F2Sum::from_terms(terms))
    }

    pub fn terms(&self) -> &[AdmissibleMonomial] {
        self.0.terms()
    }

    pub fn sum(&self) -> &F2Sum<AdmissibleMonomial> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.0.iter().map(AdmissibleMonomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Homogeneous components by degree, ascending.
    pub fn components(&self) -> Vec<(usize, SteenrodElement)> {
        let mut by: std::collections::BTreeMap<usize, Vec<AdmissibleMonomial>> = Default::default();
        for m in self.terms() {
            by.entry(m.degree()).or_default().push(m.clone());
        }
        by.into_iter()
            .map(|(d, v)| (d, SteenrodElement::from_terms(v)))
            .collect()
    }
}

impl From<AdmissibleMonomial> for SteenrodElement {
    fn from(m: AdmissibleMonomial) -> Self {
        Self(F2Sum::from_term(m))
    }
}

impl std::ops::Add for &SteenrodElement {
    type Output = SteenrodElement;

    fn add(self, rhs: &SteenrodElement) -> SteenrodElement {
        SteenrodElement(&self.0 + &rhs.0)
    }
}

impl std::ops::Mul for &SteenrodElement {
    type Output = SteenrodElement;

    fn mul(self, rhs: &SteenrodElement) -> SteenrodElement {
        multiply(self, rhs)
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

type Cache<K, V> = LazyLock<RwLock<HashMap<K, Arc<V>>>>;

static LEFT_MUL: Cache<(u16, AdmissibleMonomial), F2Sum<AdmissibleMonomial>> =
    LazyLock::new(Default::default);
static MONO_PRODUCT: Cache<(AdmissibleMonomial, AdmissibleMonomial), F2Sum<AdmissibleMonomial>> =
    LazyLock::new(Default::default);
static MONO_COPRODUCT: Cache<AdmissibleMonomial, SteenrodTensor> = LazyLock::new(Default::default);

/// `Sq^x · m` in admissible form.
pub(crate) fn left_mul_sq(x: u16, m: &AdmissibleMonomial) -> Arc<F2Sum<AdmissibleMonomial>> {
    if x == 0 {
        return Arc::new(F2Sum::from_term(m.clone()));
    }
    if m.0.first().is_none_or(|&b| x >= 2 * b) {
        let mut e = Exps::with_capacity(m.0.len() + 1);
        e.push(x);
        e.extend_from_slice(&m.0);
        return Arc::new(F2Sum::from_term(AdmissibleMonomial(e)));
    }
    let key = (x, m.clone());
    if let Some(hit) = LEFT_MUL.read().get(&key) {
        return hit.clone();
    }
    let (a, b) = (x as i64, m.0[0] as i64);
    let rest = m.tail();
    let mut terms = Vec::new();
    for c in 0..=a / 2 {
        if !binom_odd(b - c - 1, a - 2 * c) {
            continue;
        }
        for n in left_mul_sq(c as u16, &rest).iter() {
            terms.extend(left_mul_sq((a + b - c) as u16, n).iter().cloned());
        }
    }
    let out = Arc::new(F2Sum::from_terms(terms));
    LEFT_MUL.write().insert(key, out.clone());
    out
}

fn apply_word(word: &[u16], start: F2Sum<AdmissibleMonomial>) -> F2Sum<AdmissibleMonomial> {
    word.iter().rev().fold(start, |acc, &x| {
        let mut terms = Vec::new();
        for m in acc.iter() {
            terms.extend(left_mul_sq(x, m).iter().cloned());
        }
        F2Sum::from_terms(terms)
    })
}

/// Normal form of a free word, by repeated Adem rewriting from the right.
pub fn adem_normalize(w: &SqWord) -> SteenrodElement {
    SteenrodElement(apply_word(&w.0, F2Sum::from_term(AdmissibleMonomial::unit())))
}

pub(crate) fn mono_product(m: &AdmissibleMonomial, n: &AdmissibleMonomial) -> Arc<F2Sum<AdmissibleMonomial>> {
    if m.is_unit() {
        return Arc::new(F2Sum::from_term(n.clone()));
    }
    if n.is_unit() {
        return Arc::new(F2Sum::from_term(m.clone()));
    }
    let key = (m.clone(), n.clone());
    if let Some(hit) = MONO_PRODUCT.read().get(&key) {
        return hit.clone();
    }
    let out = Arc::new(apply_word(&m.0, F2Sum::from_term(n.clone())));
    MONO_PRODUCT.write().insert(key, out.clone());
    out
}

pub fn multiply(a: &SteenrodElement, b: &SteenrodElement) -> SteenrodElement {
    let mut terms = Vec::new();
    for m in a.terms() {
        for n in b.terms() {
            terms.extend(mono_product(m, n).iter().cloned());
        }
    }
    SteenrodElement::from_terms(terms)
}

/// An element of `𝒜 ⊗ 𝒜` as a sum of monomial pairs.
pub type SteenrodTensor = F2Sum<(AdmissibleMonomial, AdmissibleMonomial)>;

pub(crate) fn mono_coproduct(m: &AdmissibleMonomial) -> Arc<SteenrodTensor> {
    if m.is_unit() {
        return Arc::new(F2Sum::from_term((m.clone(), m.clone())));
    }
    if let Some(hit) = MONO_COPRODUCT.read().get(m) {
        return hit.clone();
    }
    let first = m.0[0];
    let rest = mono_coproduct(&m.tail());
    let mut terms = Vec::new();
    for j in 0..=first {
        for (x, y) in rest.iter() {
            let left = left_mul_sq(j, x);
            let right = left_mul_sq(first - j, y);
            for l in left.iter() {
                for r in right.iter() {
                    terms.push((l.clone(), r.clone()));
                }
            }
        }
    }
    let out = Arc::new(F2Sum::from_terms(terms));
    MONO_COPRODUCT.write().insert(m.clone(), out.clone());
    out
}

/// Cartan coproduct `Δ(Sq^n) = Σ Sq^i ⊗ Sq^{n-i}`, extended multiplicatively.
pub fn coproduct(a: &SteenrodElement) -> SteenrodTensor {
    let mut terms = Vec::new();
    for m in a.terms() {
        terms.extend(mono_coproduct(m).iter().cloned());
    }
    F2Sum::from_terms(terms)
}

/// Product in `𝒜 ⊗ 𝒜`, factorwise.
pub fn tensor_multiply(x: &SteenrodTensor, y: &SteenrodTensor) -> SteenrodTensor {
    let mut terms = Vec::new();
    for (a, b) in x.iter() {
        for (c, d) in y.iter() {
            let left = mono_product(a, c);
            let right = mono_product(b, d);
            for l in left.iter() {
                for r in right.iter() {
                    terms.push((l.clone(), r.clone()));
                }
            }
        }
    }
    F2Sum::from_terms(terms)
}

pub fn render_tensor(t: &SteenrodTensor) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.iter()
        .map(|(a, b)| format!("({a}) ⊗ ({b})"))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub(crate) struct AdmissibleDegree {
    pub basis: Vec<AdmissibleMonomial>,
    pub index: HashMap<AdmissibleMonomial, usize>,
}

static ADMISSIBLE: Cache<usize, AdmissibleDegree> = LazyLock::new(Default::default);

fn enumerate_admissible(degree: usize, max_first: usize, out: &mut Vec<Exps>, prefix: &mut Exps) {
    if degree == 0 {
        out.push(prefix.clone());
        return;
    }
    for first in (1..=degree.min(max_first)).rev() {
        prefix.push(first as u16);
        enumerate_admissible(degree - first, first / 2, out, prefix);
        prefix.pop();
    }
}

pub(crate) fn admissible_degree(degree: usize) -> Arc<AdmissibleDegree> {
    if let Some(hit) = ADMISSIBLE.read().get(&degree) {
        return hit.clone();
    }
    let mut raw = Vec::new();
    enumerate_admissible(degree, degree, &mut raw, &mut Exps::new());
    let mut basis: Vec<AdmissibleMonomial> = raw.into_iter().map(AdmissibleMonomial).collect();
    basis.sort();
    let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let out = Arc::new(AdmissibleDegree { basis, index });
    ADMISSIBLE.write().insert(degree, out.clone());
    out
}

/// All admissible monomials of the given degree.
pub fn admissible_basis(degree: usize) -> Vec<AdmissibleMonomial> {
    admissible_degree(degree).basis.clone()
}

/// Coordinates of the degree-`degree` part of `e` in the admissible basis.
pub fn coordinates(e: &SteenrodElement, degree: usize) -> BitVector {
    let table = admissible_degree(degree);
    BitVector::from_indices(
        table.basis.len(),
        e.terms().iter().filter(|m| m.degree() == degree).map(|m| table.index[m]),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum AlgebraId {
    FullA,
    A1,
}

pub const A1_TOP_DEGREE: usize = 6;

/// One basis element of `𝒜(1)` together with a word in `Sq1`, `Sq2` that
/// produces it.
#[derive(Clone, Debug)]
pub struct A1BasisElement {
    pub degree: usize,
    pub element: SteenrodElement,
    pub word: Vec<u16>,
}

/// The subalgebra `𝒜(1)` generated by `Sq1` and `Sq2`, computed degreewise
/// by spanning all words in the generators and row-reducing.
pub struct A1Structure {
    elements: Vec<A1BasisElement>,
    by_degree: Vec<Vec<usize>>,
    // tags: local index within the degree
    members: Vec<SpanTracker>,
    // tags: local A(1) indices first, then complement coordinates
    extended: Vec<SpanTracker>,
}

fn words_in_sq1_sq2(degree: usize) -> Vec<Vec<u16>> {
    if degree == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for g in [1u16, 2] {
        if g as usize <= degree {
            for mut w in words_in_sq1_sq2(degree - g as usize) {
                w.insert(0, g);
                out.push(w);
            }
        }
    }
    out
}

impl A1Structure {
    fn compute() -> Self {
        let mut elements = Vec::new();
        let mut by_degree = Vec::new();
        let mut members = Vec::new();
        let mut extended = Vec::new();
        // Degree 7 has no words' images; stop one past the top to confirm it.
        for d in 0..=A1_TOP_DEGREE + 1 {
            let dim = admissible_degree(d).basis.len();
            let mut tracker = SpanTracker::new(dim, dim);
            let mut local = Vec::new();
            let mut words = words_in_sq1_sq2(d);
            words.sort();
            for w in words {
                let e = adem_normalize(&SqWord(w.clone()));
                if tracker.insert_tagged(&coordinates(&e, d), local.len()) {
                    local.push(elements.len());
                    elements.push(A1BasisElement {
                        degree: d,
                        element: e,
                        word: w,
                    });
                }
            }
            let mut ext = SpanTracker::new(dim, dim);
            for (k, &gi) in local.iter().enumerate() {
                ext.insert_tagged(&coordinates(&elements[gi].element, d), k);
            }
            let mut next = local.len();
            for i in 0..dim {
                if next == dim {
                    break;
                }
                if ext.insert_tagged(&BitVector::unit(dim, i), next) {
                    next += 1;
                }
            }
            debug_assert_eq!(next, dim);
            by_degree.push(local);
            members.push(tracker);
            extended.push(ext);
        }
        assert!(by_degree[A1_TOP_DEGREE + 1].is_empty(), "A(1) has no classes above degree 6");
        Self {
            elements,
            by_degree,
            members,
            extended,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[A1BasisElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &A1BasisElement {
        &self.elements[i]
    }

    /// Global indices of basis elements in the given degree.
    pub fn indices_in_degree(&self, degree: usize) -> &[usize] {
        self.by_degree.get(degree).map_or(&[], |v| v.as_slice())
    }

    pub fn basis(&self, degree: usize) -> Vec<SteenrodElement> {
        self.indices_in_degree(degree)
            .iter()
            .map(|&i| self.elements[i].element.clone())
            .collect()
    }

    /// Global basis indices whose sum is `e`, or `None` if `e ∉ 𝒜(1)`.
    pub fn decompose(&self, e: &SteenrodElement) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for (d, part) in e.components() {
            if d > A1_TOP_DEGREE {
                return None;
            }
            let (res, combo) = self.members[d].reduce(&coordinates(&part, d));
            if !res.is_zero() {
                return None;
            }
            out.extend(combo.ones().map(|k| self.by_degree[d][k]));
        }
        Some(out)
    }

    pub fn contains(&self, e: &SteenrodElement) -> bool {
        self.decompose(e).is_some()
    }

    /// Coordinates of a monomial of degree ≤ 6 in the basis "𝒜(1) basis,
    /// then complement"; the first `indices_in_degree(d).len()` entries are
    /// the `𝒜(1)` part.
    fn extended_coordinates(&self, m: &AdmissibleMonomial) -> Option<BitVector> {
        let d = m.degree();
        let ext = self.extended.get(d)?;
        let (res, combo) = ext.reduce(&coordinates(&SteenrodElement::from(m.clone()), d));
        debug_assert!(res.is_zero());
        Some(combo)
    }

    /// Rewrites a tensor known to lie in `𝒜 ⊗ 𝒜(1)` as `Σ_j L_j ⊗ b_j`
    /// with `b_j` basis elements of `𝒜(1)`. Returns `None` if the right
    /// factors do not lie in `𝒜(1)`.
    pub fn split_right(&self, t: &SteenrodTensor) -> Option<Vec<(SteenrodElement, usize)>> {
        let mut left: std::collections::BTreeMap<(usize, usize), Vec<AdmissibleMonomial>> =
            Default::default();
        for (m, n) in t.iter() {
            let q = n.degree();
            let coords = self.extended_coordinates(n)?;
            for k in coords.ones() {
                left.entry((q, k)).or_default().push(m.clone());
            }
        }
        let mut out = Vec::new();
        for ((q, k), ms) in left {
            let l = SteenrodElement::from_terms(ms);
            if l.is_zero() {
                continue;
            }
            let local = &self.by_degree[q];
            if k >= local.len() {
                return None;
            }
            out.push((l, local[k]));
        }
        Some(out)
    }

    /// Rewrites a tensor known to lie in `𝒜(1) ⊗ 𝒜(1)` as a sum of pairs of
    /// global basis indices. Returns `None` if it does not lie there.
    pub fn split_both(&self, t: &SteenrodTensor) -> Option<F2Sum<(usize, usize)>> {
        let mut pairs = Vec::new();
        for (m, n) in t.iter() {
            let (p, q) = (m.degree(), n.degree());
            let cm = self.extended_coordinates(m)?;
            let cn = self.extended_coordinates(n)?;
            for i in cm.ones() {
                for j in cn.ones() {
                    pairs.push(((p, i), (q, j)));
                }
            }
        }
        let mut out = Vec::new();
        for ((p, i), (q, j)) in F2Sum::from_terms(pairs).into_terms() {
            let (lp, lq) = (&self.by_degree[p], &self.by_degree[q]);
            if i >= lp.len() || j >= lq.len() {
                return None;
            }
            out.push((lp[i], lq[j]));
        }
        Some(F2Sum::from_terms(out))
    }
}

static A1: LazyLock<A1Structure> = LazyLock::new(A1Structure::compute);

/// The shared `𝒜(1)` tables.
pub fn a1() -> &'static A1Structure {
    &A1
}

/// A basis of the degree-`degree` part of `𝒜` or `𝒜(1)`.
pub fn basis(alg: AlgebraId, degree: usize) -> Vec<SteenrodElement> {
    match alg {
        AlgebraId::FullA => admissible_degree(degree)
            .basis
            .iter()
            .cloned()
            .map(SteenrodElement::from)
            .collect(),
        AlgebraId::A1 => a1().basis(degree),
    }
}

pub fn dimension_series(alg: AlgebraId, max_degree: usize) -> PoincareSeries {
    PoincareSeries::new(
        (0..=max_degree)
            .map(|d| match alg {
                AlgebraId::FullA => admissible_degree(d).basis.len() as u64,
                AlgebraId::A1 => a1().indices_in_degree(d).len() as u64,
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(e: &[u16]) -> SteenrodElement {
        adem_normalize(&SqWord::new(e.to_vec()).unwrap())
    }

    fn mono(e: &[u16]) -> SteenrodElement {
        AdmissibleMonomial::new(e).unwrap().into()
    }

    #[test]
    fn adem_examples() {
        assert!(word(&[1, 1]).is_zero());
        assert_eq!(word(&[2, 2]), mono(&[3, 1]));
        assert_eq!(word(&[1, 2]), mono(&[3]));
        assert_eq!(word(&[2, 3]), &mono(&[5]) + &mono(&[4, 1]));
        assert_eq!(word(&[1, 2, 1]), mono(&[3, 1]));
        assert_eq!(word(&[]), SteenrodElement::one());
    }

    #[test]
    fn rendering() {
        assert_eq!(word(&[2, 3]).to_string(), "Sq5 + Sq4 Sq1");
        assert_eq!(SteenrodElement::one().to_string(), "1");
        assert_eq!(SteenrodElement::zero().to_string(), "0");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SqWord::new(vec![2, 0]), Err(Error::ZeroExponent)));
        assert!(matches!(AdmissibleMonomial::new(&[1, 1]), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn multiply_examples() {
        let x = &mono(&[4, 2]) + &mono(&[5]);
        assert_eq!(multiply(&SteenrodElement::one(), &x), x);
        assert_eq!(multiply(&mono(&[2]), &mono(&[2])), mono(&[3, 1]));
        let s = &mono(&[1]) + &mono(&[2]);
        assert_eq!(multiply(&s, &mono(&[1])), mono(&[2, 1]));
    }

    #[test]
    fn coproduct_examples() {
        let one = AdmissibleMonomial::unit();
        assert_eq!(coproduct(&SteenrodElement::one()).terms(), &[(one.clone(), one.clone())]);
        let sq = AdmissibleMonomial::sq;
        let expected = F2Sum::from_terms([(sq(2), one.clone()), (sq(1), sq(1)), (one.clone(), sq(2))]);
        assert_eq!(coproduct(&mono(&[2])), expected);

        // Δ(Sq2 Sq1) = Δ(Sq2)·Δ(Sq1)
        let lhs = coproduct(&mono(&[2, 1]));
        let rhs = tensor_multiply(&coproduct(&mono(&[2])), &coproduct(&mono(&[1])));
        assert_eq!(lhs, rhs);
        let sq21 = AdmissibleMonomial::new(&[2, 1]).unwrap();
        assert!(lhs.contains(&(sq21.clone(), one.clone())));
        assert!(lhs.contains(&(one, sq21)));
        // Sq1 ⊗ Sq1Sq1 = 0; Sq1 ⊗ Sq2 comes from (1 ⊗ Sq2)(Sq1 ⊗ 1)
        assert!(lhs.contains(&(sq(1), sq(2))));
        assert!(lhs.contains(&(sq(2), sq(1))));
        assert_eq!(lhs.len(), 4);
    }

    #[test]
    fn admissible_bases() {
        let b3: Vec<String> = admissible_basis(3).iter().map(|m| m.to_string()).collect();
        assert_eq!(b3, vec!["Sq3", "Sq2 Sq1"]);
        assert_eq!(admissible_basis(0), vec![AdmissibleMonomial::unit()]);
    }

    #[test]
    fn a1_profile() {
        assert_eq!(basis(AlgebraId::A1, 0), vec![SteenrodElement::one()]);
        assert_eq!(
            dimension_series(AlgebraId::A1, 8).dims(),
            &[1, 1, 1, 2, 1, 1, 1, 0, 0]
        );
        assert_eq!(a1().len(), 8);
        assert_eq!(dimension_series(AlgebraId::FullA, 3).dims(), &[1, 1, 1, 2]);
    }

    #[test]
    fn a1_membership() {
        let a = a1();
        assert!(a.contains(&mono(&[3])));
        assert!(a.contains(&(&mono(&[5]) + &mono(&[4, 1]))));
        assert!(!a.contains(&mono(&[4])));
        assert!(!a.contains(&mono(&[5])));
        assert!(a.contains(&SteenrodElement::zero()));
    }

    #[test]
    fn split_right_rebuilds_coproduct() {
        let a = a1();
        for b in a.elements() {
            let t = coproduct(&b.element);
            let split = a.split_right(&t).expect("Δ(𝒜(1)) ⊂ 𝒜 ⊗ 𝒜(1)");
            let mut terms = Vec::new();
            for (l, j) in &split {
                for x in l.terms() {
                    for y in a.element(*j).element.terms() {
                        terms.push((x.clone(), y.clone()));
                    }
                }
            }
            let rebuilt: SteenrodTensor = F2Sum::from_terms(terms);
            assert_eq!(rebuilt, t);
            assert!(a.split_both(&t).is_some());
        }
        // Sq4 ⊗ 1 is not in A(1) ⊗ A(1)
        let bad: SteenrodTensor = F2Sum::from_term((AdmissibleMonomial::sq(4), AdmissibleMonomial::unit()));
        assert!(a.split_both(&bad).is_none());
    }
}
