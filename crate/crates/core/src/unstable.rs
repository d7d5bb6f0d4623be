//! Polynomial algebras with Steenrod action.
//!
//! Two ambients are supported:
//!
//! * `K`: the cohomology of `K(Z/2,1) × K(Z/2,2)`, free on `ι₁` and the
//!   Serre generators `Sq^I ι₂` with `I = (2^{k-1}, …, 2, 1)` (the admissible
//!   sequences of excess at most one), in degrees `1, 2, 3, 5, 9, 17, …`.
//! * `BO(n)`: polynomial on the Stiefel–Whitney classes `w₁ … w_n`, acted on
//!   by the Wu formula.
//!
//! The action on a product is computed with the Cartan formula, using
//! `Sq^{2i}(y²) = (Sq^i y)²` for even powers. On generators the action is
//! straightened through the Adem relations and finished off with the
//! instability rules `Sq^{|y|} y = y²`, `Sq^i y = 0` for `i > |y|`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock};

use f2linalg::{BitVector, SpanTracker};
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lincomb::F2Sum;
use crate::series::PoincareSeries;
use crate::steenrod::{self, binom_odd, AdmissibleMonomial, SqWord, SteenrodElement};

/// Which polynomial algebra an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ambient {
    K,
    /// `H*(BO(vars))`.
    BO { vars: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    K,
    BO,
}

impl Ambient {
    pub fn kind(self) -> Kind {
        match self {
            Ambient::K => Kind::K,
            Ambient::BO { .. } => Kind::BO,
        }
    }
}

/// A polynomial generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UGenerator {
    Iota1,
    /// `Sq^{2^{k-1}} ⋯ Sq^2 Sq^1 ι₂` with `k` squares; `k = 0` is `ι₂`.
    Iota2Derived(u8),
    /// The Stiefel–Whitney class `w_i`, `i ≥ 1`.
    SW(u16),
}

impl UGenerator {
    pub fn degree(self) -> usize {
        match self {
            UGenerator::Iota1 => 1,
            UGenerator::Iota2Derived(k) => (1usize << k) + 1,
            UGenerator::SW(i) => i as usize,
        }
    }

    /// The admissible sequence `I` with this generator equal to `Sq^I ι₂`.
    pub fn iota2_sequence(k: u8) -> Vec<u16> {
        (0..k).rev().map(|j| 1u16 << j).collect()
    }

    fn kind(self) -> Kind {
        match self {
            UGenerator::SW(_) => Kind::BO,
            _ => Kind::K,
        }
    }

    fn slot(self) -> usize {
        match self {
            UGenerator::Iota1 => 0,
            UGenerator::Iota2Derived(k) => 1 + k as usize,
            UGenerator::SW(i) => i as usize - 1,
        }
    }

    fn from_slot(kind: Kind, slot: usize) -> Self {
        match (kind, slot) {
            (Kind::K, 0) => UGenerator::Iota1,
            (Kind::K, s) => UGenerator::Iota2Derived((s - 1) as u8),
            (Kind::BO, s) => UGenerator::SW((s + 1) as u16),
        }
    }
}

impl fmt::Display for UGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            UGenerator::Iota1 => write!(f, "i1"),
            UGenerator::Iota2Derived(k) => {
                for e in Self::iota2_sequence(k) {
                    write!(f, "Sq{e} ")?;
                }
                write!(f, "i2")
            }
            UGenerator::SW(i) => write!(f, "w{i}"),
        }
    }
}

type Exps = SmallVec<[u16; 8]>;

/// A monomial: exponent per generator slot, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMonomial {
    kind: Kind,
    exps: Exps,
}

impl PolyMonomial {
    pub fn one(kind: Kind) -> Self {
        Self {
            kind,
            exps: Exps::new(),
        }
    }

    pub fn generator(g: UGenerator) -> Self {
        Self::power(g, 1)
    }

    pub fn power(g: UGenerator, e: u16) -> Self {
        let mut exps = Exps::from_elem(0, g.slot() + 1);
        exps[g.slot()] = e;
        let mut m = Self { kind: g.kind(), exps };
        m.trim();
        m
    }

    /// Builds `Π g^e`. Generators must all belong to one ambient kind.
    pub fn from_factors(kind: Kind, factors: &[(UGenerator, u16)]) -> Self {
        let mut m = Self::one(kind);
        for &(g, e) in factors {
            assert_eq!(g.kind(), kind, "generator {g} does not belong here");
            m = m.mul(&Self::power(g, e));
        }
        m
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.exps
            .iter()
            .enumerate()
            .map(|(s, &e)| e as usize * UGenerator::from_slot(self.kind, s).degree())
            .sum()
    }

    /// Generators with nonzero exponent, in slot order.
    pub fn factors(&self) -> impl Iterator<Item = (UGenerator, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(s, &e)| (UGenerator::from_slot(self.kind, s), e))
    }

    pub fn exponent(&self, g: UGenerator) -> u16 {
        self.exps.get(g.slot()).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.kind, other.kind);
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (a, b) in exps.iter_mut().zip(&short.exps) {
            *a += b;
        }
        Self {
            kind: self.kind,
            exps,
        }
    }

    pub fn square(&self) -> Self {
        Self {
            kind: self.kind,
            exps: self.exps.iter().map(|&e| 2 * e).collect(),
        }
    }

    fn num_factors(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }

    /// Largest generator degree occurring.
    pub fn max_generator_degree(&self) -> usize {
        self.factors().map(|(g, _)| g.degree()).max().unwrap_or(0)
    }
}

impl Ord for PolyMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.kind
            .cmp(&other.kind)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for PolyMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PolyMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let several = self.num_factors() > 1;
        let mut first = true;
        for (g, e) in self.factors() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let derived = matches!(g, UGenerator::Iota2Derived(k) if k > 0);
            if derived && (several || e > 1) {
                write!(f, "({g})")?;
            } else {
                write!(f, "{g}")?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type PolySum = F2Sum<PolyMonomial>;

/// An element of `H*(K)` or `H*(BO(n))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyElement {
    ambient: Ambient,
    terms: PolySum,
}

impl PolyElement {
    pub fn zero(ambient: Ambient) -> Self {
        Self {
            ambient,
            terms: F2Sum::zero(),
        }
    }

    pub fn one(ambient: Ambient) -> Self {
        Self::from_monomial(ambient, PolyMonomial::one(ambient.kind()))
    }

    pub fn from_monomial(ambient: Ambient, m: PolyMonomial) -> Self {
        Self {
            ambient,
            terms: F2Sum::from_term(m),
        }
    }

    pub fn from_sum(ambient: Ambient, terms: PolySum) -> Self {
        Self { ambient, terms }
    }

    /// A generator of the ambient algebra, checked for membership.
    pub fn generator(ambient: Ambient, g: UGenerator) -> Result<Self> {
        match (ambient, g) {
            (Ambient::BO { vars }, UGenerator::SW(i)) if i >= 1 && (i as usize) <= vars => {}
            (Ambient::K, UGenerator::Iota1 | UGenerator::Iota2Derived(_)) => {}
            _ => return Err(Error::WrongAmbient(format!("{g} is not a generator of {ambient:?}"))),
        }
        Ok(Self::from_monomial(ambient, PolyMonomial::generator(g)))
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn terms(&self) -> &[PolyMonomial] {
        self.terms.terms()
    }

    pub fn sum(&self) -> &PolySum {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Common degree of all terms, `None` if zero or inhomogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.iter().map(PolyMonomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn square(&self) -> Self {
        Self::from_sum(self.ambient, square_sum(&self.terms))
    }
}

impl std::ops::Add for &PolyElement {
    type Output = PolyElement;

    fn add(self, rhs: &PolyElement) -> PolyElement {
        assert_eq!(self.ambient, rhs.ambient, "adding elements of different ambients");
        PolyElement::from_sum(self.ambient, &self.terms + &rhs.terms)
    }
}

impl std::ops::Mul for &PolyElement {
    type Output = PolyElement;

    fn mul(self, rhs: &PolyElement) -> PolyElement {
        assert_eq!(self.ambient, rhs.ambient, "multiplying elements of different ambients");
        PolyElement::from_sum(self.ambient, poly_mul(&self.terms, &rhs.terms))
    }
}

impl fmt::Display for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_sum(&self.terms, f)
    }
}

impl fmt::Debug for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn render_sum<T: fmt::Display + Ord>(s: &F2Sum<T>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if s.is_zero() {
        return write!(f, "0");
    }
    for (k, t) in s.iter().enumerate() {
        if k > 0 {
            write!(f, " + ")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

pub(crate) fn poly_mul(a: &PolySum, b: &PolySum) -> PolySum {
    let mut terms = Vec::with_capacity(a.len() * b.len());
    for x in a.iter() {
        for y in b.iter() {
            terms.push(x.mul(y));
        }
    }
    F2Sum::from_terms(terms)
}

fn square_sum(a: &PolySum) -> PolySum {
    F2Sum::from_terms(a.iter().map(PolyMonomial::square))
}

type Cache<K, V> = LazyLock<RwLock<HashMap<K, Arc<V>>>>;

static SQ_MONO: Cache<(Ambient, u16, PolyMonomial), PolySum> = LazyLock::new(Default::default);
static ACT_MONO: Cache<(Ambient, AdmissibleMonomial, PolyMonomial), PolySum> =
    LazyLock::new(Default::default);

fn generator_action(ambient: Ambient, i: u16, g: UGenerator) -> PolySum {
    let kind = ambient.kind();
    let single = |m: PolyMonomial| F2Sum::from_term(m);
    match g {
        UGenerator::Iota1 => match i {
            0 => single(PolyMonomial::generator(g)),
            1 => single(PolyMonomial::power(g, 2)),
            _ => F2Sum::zero(),
        },
        UGenerator::Iota2Derived(k) => {
            let deg = g.degree() as u16;
            if i == 0 {
                return single(PolyMonomial::generator(g));
            }
            if i > deg {
                return F2Sum::zero();
            }
            if i == deg {
                return single(PolyMonomial::power(g, 2));
            }
            let mut word = vec![i];
            word.extend(UGenerator::iota2_sequence(k));
            let straightened = steenrod::adem_normalize(&SqWord::new(word).expect("positive"));
            let mut terms = Vec::new();
            for j in straightened.terms() {
                terms.extend(eval_on_iota2(j).into_terms());
            }
            F2Sum::from_terms(terms)
        }
        UGenerator::SW(j) => {
            let vars = match ambient {
                Ambient::BO { vars } => vars,
                Ambient::K => unreachable!("Stiefel-Whitney class in K"),
            };
            wu(i as i64, j as i64, vars, kind)
        }
    }
}

/// `Sq^i w_j` in `H*(BO(vars))`.
fn wu(i: i64, j: i64, vars: usize, kind: Kind) -> PolySum {
    let w = |r: i64| -> Option<PolyMonomial> {
        if r == 0 {
            Some(PolyMonomial::one(kind))
        } else if r as usize <= vars {
            Some(PolyMonomial::generator(UGenerator::SW(r as u16)))
        } else {
            None
        }
    };
    if i == 0 {
        return F2Sum::from_terms(w(j));
    }
    if i > j {
        return F2Sum::zero();
    }
    if i == j {
        return F2Sum::from_terms(w(j).map(|m| m.square()));
    }
    let mut terms = Vec::new();
    for t in 0..=i {
        if binom_odd(j - i + t - 1, t) {
            if let (Some(a), Some(b)) = (w(i - t), w(j + t)) {
                terms.push(a.mul(&b));
            }
        }
    }
    F2Sum::from_terms(terms)
}

/// `Sq^J ι₂` for admissible `J`.
fn eval_on_iota2(j: &AdmissibleMonomial) -> PolySum {
    let e = j.exponents();
    if e.is_empty() {
        return F2Sum::from_term(PolyMonomial::generator(UGenerator::Iota2Derived(0)));
    }
    if e == UGenerator::iota2_sequence(e.len() as u8).as_slice() {
        return F2Sum::from_term(PolyMonomial::generator(UGenerator::Iota2Derived(e.len() as u8)));
    }
    // excess ≥ 2, so the leading square is at least the degree of what follows
    let tail = AdmissibleMonomial::new(&e[1..]).expect("suffix of admissible is admissible");
    let below = eval_on_iota2(&tail);
    let deg = 2 + tail.degree();
    let lead = e[0] as usize;
    assert!(lead >= deg, "admissible sequence of excess one must be canonical");
    if lead == deg {
        square_sum(&below)
    } else {
        F2Sum::zero()
    }
}

fn cartan(ambient: Ambient, i: u16, x: &PolyMonomial, y: &PolyMonomial) -> PolySum {
    let (dx, dy) = (x.degree(), y.degree());
    let mut terms = Vec::new();
    for a in 0..=i.min(dx as u16) {
        let b = i - a;
        if b as usize > dy {
            continue;
        }
        let sx = sq_monomial(ambient, a, x);
        if sx.is_zero() {
            continue;
        }
        let sy = sq_monomial(ambient, b, y);
        for p in sx.iter() {
            for q in sy.iter() {
                terms.push(p.mul(q));
            }
        }
    }
    F2Sum::from_terms(terms)
}

/// `Sq^i` of a monomial.
pub fn sq_monomial(ambient: Ambient, i: u16, m: &PolyMonomial) -> Arc<PolySum> {
    if i == 0 {
        return Arc::new(F2Sum::from_term(m.clone()));
    }
    let d = m.degree();
    if i as usize > d {
        return Arc::new(F2Sum::zero());
    }
    if i as usize == d {
        return Arc::new(F2Sum::from_term(m.square()));
    }
    let key = (ambient, i, m.clone());
    if let Some(hit) = SQ_MONO.read().get(&key) {
        return hit.clone();
    }
    let (g, e) = m.factors().next().expect("positive degree");
    let head = PolyMonomial::power(g, e);
    let out = if m.num_factors() == 1 {
        if e == 1 {
            generator_action(ambient, i, g)
        } else if e % 2 == 0 {
            if i % 2 == 1 {
                F2Sum::zero()
            } else {
                square_sum(&sq_monomial(ambient, i / 2, &PolyMonomial::power(g, e / 2)))
            }
        } else {
            cartan(ambient, i, &PolyMonomial::generator(g), &PolyMonomial::power(g, e - 1))
        }
    } else {
        let mut rest = m.clone();
        rest.exps[g.slot()] = 0;
        rest.trim();
        cartan(ambient, i, &head, &rest)
    };
    let out = Arc::new(out);
    SQ_MONO.write().insert(key, out.clone());
    out
}

/// `Sq^i(x)`.
pub fn sq_action(i: u16, x: &PolyElement) -> PolyElement {
    let mut terms = Vec::new();
    for m in x.terms() {
        terms.extend(sq_monomial(x.ambient, i, m).iter().cloned());
    }
    PolyElement::from_sum(x.ambient, F2Sum::from_terms(terms))
}

/// An admissible monomial acting on a polynomial monomial.
pub fn act_monomial(ambient: Ambient, a: &AdmissibleMonomial, m: &PolyMonomial) -> Arc<PolySum> {
    match a.exponents() {
        [] => return Arc::new(F2Sum::from_term(m.clone())),
        [i] => return sq_monomial(ambient, *i, m),
        _ => {}
    }
    if a.degree() > m.degree() * (1 << a.exponents().len()) {
        return Arc::new(F2Sum::zero());
    }
    let key = (ambient, a.clone(), m.clone());
    if let Some(hit) = ACT_MONO.read().get(&key) {
        return hit.clone();
    }
    let mut cur: PolySum = F2Sum::from_term(m.clone());
    for &i in a.exponents().iter().rev() {
        let mut terms = Vec::new();
        for t in cur.iter() {
            terms.extend(sq_monomial(ambient, i, t).iter().cloned());
        }
        cur = F2Sum::from_terms(terms);
        if cur.is_zero() {
            break;
        }
    }
    let out = Arc::new(cur);
    ACT_MONO.write().insert(key, out.clone());
    out
}

/// A Steenrod algebra element acting on a polynomial.
pub fn apply(a: &SteenrodElement, x: &PolyElement) -> PolyElement {
    let mut terms = Vec::new();
    for op in a.terms() {
        for m in x.terms() {
            terms.extend(act_monomial(x.ambient, op, m).iter().cloned());
        }
    }
    PolyElement::from_sum(x.ambient, F2Sum::from_terms(terms))
}

/// Polynomial generators of degree at most `max_degree`.
pub fn generators_up_to(ambient: Ambient, max_degree: usize) -> Vec<UGenerator> {
    match ambient {
        Ambient::K => {
            let mut out = Vec::new();
            if max_degree >= 1 {
                out.push(UGenerator::Iota1);
            }
            let mut k = 0u8;
            while UGenerator::Iota2Derived(k).degree() <= max_degree {
                out.push(UGenerator::Iota2Derived(k));
                k += 1;
            }
            out
        }
        Ambient::BO { vars } => (1..=vars.min(max_degree)).map(|i| UGenerator::SW(i as u16)).collect(),
    }
}

/// Number of monomials per degree.
pub fn dimension_series(ambient: Ambient, max_degree: usize) -> PoincareSeries {
    let degrees: Vec<usize> = generators_up_to(ambient, max_degree)
        .into_iter()
        .map(UGenerator::degree)
        .collect();
    PoincareSeries::polynomial(&degrees, max_degree)
}

pub(crate) struct MonomialTable {
    pub list: Vec<PolyMonomial>,
    pub index: HashMap<PolyMonomial, usize>,
}

static MONOMIALS: Cache<(Ambient, usize), MonomialTable> = LazyLock::new(Default::default);

fn enumerate(gens: &[UGenerator], degree: usize, kind: Kind, acc: PolyMonomial, out: &mut Vec<PolyMonomial>) {
    if degree == 0 {
        out.push(acc);
        return;
    }
    let Some((&g, rest)) = gens.split_first() else {
        return;
    };
    let gd = g.degree();
    let mut e = 0u16;
    loop {
        let used = gd * e as usize;
        if used > degree {
            break;
        }
        let m = if e == 0 {
            acc.clone()
        } else {
            acc.mul(&PolyMonomial::power(g, e))
        };
        enumerate(rest, degree - used, kind, m, out);
        e += 1;
    }
}

pub(crate) fn monomial_table(ambient: Ambient, degree: usize) -> Arc<MonomialTable> {
    let key = (ambient, degree);
    if let Some(hit) = MONOMIALS.read().get(&key) {
        return hit.clone();
    }
    let gens = generators_up_to(ambient, degree);
    let mut list = Vec::new();
    enumerate(&gens, degree, ambient.kind(), PolyMonomial::one(ambient.kind()), &mut list);
    list.sort();
    let index = list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let out = Arc::new(MonomialTable { list, index });
    MONOMIALS.write().insert(key, out.clone());
    out
}

/// All monomials of the given degree.
pub fn monomials(ambient: Ambient, degree: usize) -> Vec<PolyMonomial> {
    monomial_table(ambient, degree).list.clone()
}

fn coordinates(x: &PolyElement, degree: usize) -> BitVector {
    let table = monomial_table(x.ambient, degree);
    BitVector::from_indices(
        table.list.len(),
        x.terms().iter().filter(|m| m.degree() == degree).map(|m| table.index[m]),
    )
}

/// The image of a generator of `H*(K)` under `ι₁ ↦ w₁`, `ι₂ ↦ w₂`.
fn classify_generator(g: UGenerator, vars: usize) -> PolyElement {
    let bo = Ambient::BO { vars };
    match g {
        UGenerator::Iota1 => PolyElement::generator(bo, UGenerator::SW(1)).expect("vars ≥ 1"),
        UGenerator::Iota2Derived(k) => {
            let w2 = PolyElement::generator(bo, UGenerator::SW(2)).expect("vars ≥ 2");
            UGenerator::iota2_sequence(k)
                .iter()
                .rev()
                .fold(w2, |acc, &i| sq_action(i, &acc))
        }
        UGenerator::SW(_) => unreachable!("not a generator of H*(K)"),
    }
}

/// Pulls an element of `H*(K)` back along the map `BO → K` classifying
/// `(w₁, w₂)`.
///
/// Fails if a generator of `x` has degree above `vars`, since its image would
/// need classes that `BO(vars)` does not have.
pub fn classify_iota_to_w(x: &PolyElement, vars: usize) -> Result<PolyElement> {
    if x.ambient != Ambient::K {
        return Err(Error::WrongAmbient("classification expects an element of H*(K)".into()));
    }
    let needed = x
        .terms()
        .iter()
        .map(PolyMonomial::max_generator_degree)
        .max()
        .unwrap_or(0)
        .max(2);
    if vars < needed {
        return Err(Error::VariableBoundTooSmall { needed, have: vars });
    }
    let bo = Ambient::BO { vars };
    let mut out = PolyElement::zero(bo);
    for m in x.terms() {
        let mut img = PolyElement::one(bo);
        for (g, e) in m.factors() {
            let gi = classify_generator(g, vars);
            for _ in 0..e {
                img = &img * &gi;
            }
        }
        out = &out + &img;
    }
    Ok(out)
}

/// Largest degree for which [`bspin_series`] is trusted.
pub const BSPIN_MAX_DEGREE: usize = 31;

/// Dimensions of `H*(BO) / I`, where `I` is the smallest ideal closed under
/// Steenrod operations containing `w₁` and `w₂`.
///
/// Degree by degree, `I_d` is spanned by `m · g` for monomials `m` and
/// previously found ideal generators `g`, together with the new Steenrod
/// images `Sq^J w₁`, `Sq^J w₂` of degree `d`; any image outside the span is
/// recorded as a new generator.
pub fn bspin_series(max_degree: usize) -> Result<PoincareSeries> {
    if max_degree > BSPIN_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            requested: max_degree,
            limit: BSPIN_MAX_DEGREE,
        });
    }
    let vars = max_degree.max(2);
    let bo = Ambient::BO { vars };
    let w = |i| PolyElement::generator(bo, UGenerator::SW(i)).expect("vars ≥ 2");
    let seeds = [w(1), w(2)];
    let mut ideal_generators: Vec<(usize, PolyElement)> = Vec::new();
    let mut dims = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let dim = monomial_table(bo, d).list.len();
        let mut span = SpanTracker::new(dim, 0);
        for (gd, g) in &ideal_generators {
            for m in monomial_table(bo, d - gd).list.iter() {
                let v = &PolyElement::from_monomial(bo, m.clone()) * g;
                span.insert(&coordinates(&v, d));
            }
        }
        for (k, seed) in seeds.iter().enumerate() {
            let sd = k + 1;
            if d < sd {
                continue;
            }
            for op in steenrod::admissible_basis(d - sd) {
                let img = apply(&SteenrodElement::from(op), seed);
                if img.is_zero() {
                    continue;
                }
                if span.insert(&coordinates(&img, d)) {
                    ideal_generators.push((d, img));
                }
            }
        }
        dims.push((dim - span.rank()) as u64);
    }
    Ok(PoincareSeries::new(dims))
}

/// The coproduct on `H*(K)` induced by the multiplication of `K`: `ι₁`
/// primitive, `Δι₂ = ι₂⊗1 + ι₁⊗ι₁ + 1⊗ι₂`, and each `Sq^I ι₂` mapped to
/// `Sq^I(Δι₂)` with the Cartan formula on the tensor square.
pub type PolyTensor = F2Sum<(PolyMonomial, PolyMonomial)>;

static K_COPRODUCT: Cache<PolyMonomial, PolyTensor> = LazyLock::new(Default::default);

fn sq_on_tensor(i: u16, t: &PolyTensor) -> PolyTensor {
    let mut terms = Vec::new();
    for (x, y) in t.iter() {
        for a in 0..=i {
            let sx = sq_monomial(Ambient::K, a, x);
            if sx.is_zero() {
                continue;
            }
            let sy = sq_monomial(Ambient::K, i - a, y);
            for p in sx.iter() {
                for q in sy.iter() {
                    terms.push((p.clone(), q.clone()));
                }
            }
        }
    }
    F2Sum::from_terms(terms)
}

fn tensor_mul(a: &PolyTensor, b: &PolyTensor) -> PolyTensor {
    let mut terms = Vec::new();
    for (x, y) in a.iter() {
        for (p, q) in b.iter() {
            terms.push((x.mul(p), y.mul(q)));
        }
    }
    F2Sum::from_terms(terms)
}

fn k_generator_coproduct(g: UGenerator) -> PolyTensor {
    let one = PolyMonomial::one(Kind::K);
    let gen = |g| PolyMonomial::generator(g);
    match g {
        UGenerator::Iota1 => F2Sum::from_terms([(gen(g), one.clone()), (one, gen(g))]),
        UGenerator::Iota2Derived(0) => F2Sum::from_terms([
            (gen(g), one.clone()),
            (gen(UGenerator::Iota1), gen(UGenerator::Iota1)),
            (one, gen(g)),
        ]),
        UGenerator::Iota2Derived(k) => {
            let below = k_generator_coproduct(UGenerator::Iota2Derived(k - 1));
            sq_on_tensor(1 << (k - 1), &below)
        }
        UGenerator::SW(_) => unreachable!("H*(BO) coproduct is not modelled"),
    }
}

/// Coproduct of a monomial of `H*(K)`.
pub fn k_coproduct(m: &PolyMonomial) -> Arc<PolyTensor> {
    assert_eq!(m.kind, Kind::K);
    if let Some(hit) = K_COPRODUCT.read().get(m) {
        return hit.clone();
    }
    let one = PolyMonomial::one(Kind::K);
    let mut acc: PolyTensor = F2Sum::from_term((one.clone(), one));
    for (g, e) in m.factors() {
        let dg = k_generator_coproduct(g);
        for _ in 0..e {
            acc = tensor_mul(&acc, &dg);
        }
    }
    let out = Arc::new(acc);
    K_COPRODUCT.write().insert(m.clone(), out.clone());
    out
}

/// The Thom class `u` of the universal bundle: `H*(MO(n))` is free of rank
/// one over `H*(BO(n))` on `u`, with `Sq^i(u) = u·w_i`.
///
/// Elements `u·x` are represented by `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThomClass {
    pub vars: usize,
}

impl ThomClass {
    fn ambient(self) -> Ambient {
        Ambient::BO { vars: self.vars }
    }

    /// `u⁻¹ · Sq^i(u·x) = Σ_j w_j · Sq^{i-j}(x)`.
    pub fn sq(self, i: u16, x: &PolyElement) -> PolyElement {
        let bo = self.ambient();
        let mut out = PolyElement::zero(bo);
        for j in 0..=i.min(self.vars as u16) {
            let s = sq_action(i - j, x);
            if s.is_zero() {
                continue;
            }
            let term = if j == 0 {
                s
            } else {
                &PolyElement::generator(bo, UGenerator::SW(j)).expect("j ≤ vars") * &s
            };
            out = &out + &term;
        }
        out
    }

    /// `u⁻¹ · a(u·x)` for a Steenrod algebra element `a`.
    pub fn apply(self, a: &SteenrodElement, x: &PolyElement) -> PolyElement {
        let mut out = PolyElement::zero(self.ambient());
        for m in a.terms() {
            let v = m
                .exponents()
                .iter()
                .rev()
                .fold(x.clone(), |acc, &i| self.sq(i, &acc));
            out = &out + &v;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(g: UGenerator) -> PolyElement {
        PolyElement::generator(Ambient::K, g).unwrap()
    }

    fn i1() -> PolyElement {
        k(UGenerator::Iota1)
    }

    fn i2() -> PolyElement {
        k(UGenerator::Iota2Derived(0))
    }

    #[test]
    fn action_on_iotas() {
        assert_eq!(sq_action(1, &i1()), i1().square());
        assert!(sq_action(2, &i1()).is_zero());
        assert_eq!(sq_action(2, &i2()), i2().square());
        assert!(sq_action(1, &i1().square()).is_zero());
        assert_eq!(sq_action(2, &i1().square()), i1().square().square());
        assert_eq!(sq_action(1, &i2()), k(UGenerator::Iota2Derived(1)));
        assert_eq!(sq_action(2, &k(UGenerator::Iota2Derived(1))), k(UGenerator::Iota2Derived(2)));
    }

    #[test]
    fn derived_generators_straighten() {
        // Sq1 Sq1 i2 = 0 and Sq2 Sq2 i2 = Sq3 Sq1 i2 = (Sq1 i2)^2
        assert!(sq_action(1, &k(UGenerator::Iota2Derived(1))).is_zero());
        let s = sq_action(2, &sq_action(2, &i2()));
        assert_eq!(s, k(UGenerator::Iota2Derived(1)).square());
    }

    #[test]
    fn wu_formula() {
        let bo = Ambient::BO { vars: 6 };
        let w = |i| PolyElement::generator(bo, UGenerator::SW(i)).unwrap();
        assert_eq!(sq_action(1, &w(2)), &(&w(1) * &w(2)) + &w(3));
        assert_eq!(sq_action(2, &w(2)), w(2).square());
        assert!(sq_action(3, &w(2)).is_zero());
        assert_eq!(sq_action(1, &w(1)), w(1).square());
        // Sq^2 w3 = w2 w3 + w1 w4 + w5
        let expected = &(&(&w(2) * &w(3)) + &(&w(1) * &w(4))) + &w(5);
        assert_eq!(sq_action(2, &w(3)), expected);
    }

    #[test]
    fn wu_truncates_in_small_bo() {
        let bo = Ambient::BO { vars: 2 };
        let w = |i| PolyElement::generator(bo, UGenerator::SW(i)).unwrap();
        assert_eq!(sq_action(1, &w(2)), &w(1) * &w(2));
        assert!(PolyElement::generator(bo, UGenerator::SW(3)).is_err());
    }

    #[test]
    fn generator_lists() {
        use UGenerator::*;
        assert_eq!(
            generators_up_to(Ambient::K, 5),
            vec![Iota1, Iota2Derived(0), Iota2Derived(1), Iota2Derived(2)]
        );
        assert_eq!(generators_up_to(Ambient::K, 1), vec![Iota1]);
        assert_eq!(generators_up_to(Ambient::BO { vars: 3 }, 3), vec![SW(1), SW(2), SW(3)]);
    }

    #[test]
    fn k_series_low_degrees() {
        assert_eq!(dimension_series(Ambient::K, 4).dims(), &[1, 1, 2, 3, 4]);
        assert!(dimension_series(Ambient::BO { vars: 1 }, 10).dims().iter().all(|&d| d == 1));
    }

    #[test]
    fn rendering() {
        assert_eq!(k(UGenerator::Iota2Derived(1)).to_string(), "Sq1 i2");
        assert_eq!((&i1() * &k(UGenerator::Iota2Derived(1))).to_string(), "i1 (Sq1 i2)");
        assert_eq!(k(UGenerator::Iota2Derived(1)).square().to_string(), "(Sq1 i2)^2");
        assert_eq!((&i1().square() * &i2()).to_string(), "i1^2 i2");
        assert_eq!(PolyElement::zero(Ambient::K).to_string(), "0");
        assert_eq!(PolyElement::one(Ambient::K).to_string(), "1");
    }

    #[test]
    fn classify_examples() {
        let bo = Ambient::BO { vars: 4 };
        let w = |i| PolyElement::generator(bo, UGenerator::SW(i)).unwrap();
        assert_eq!(classify_iota_to_w(&i1(), 4).unwrap(), w(1));
        assert_eq!(classify_iota_to_w(&i2(), 4).unwrap(), w(2));
        assert_eq!(
            classify_iota_to_w(&k(UGenerator::Iota2Derived(1)), 4).unwrap(),
            &(&w(1) * &w(2)) + &w(3)
        );
        assert!(matches!(
            classify_iota_to_w(&k(UGenerator::Iota2Derived(2)), 4),
            Err(Error::VariableBoundTooSmall { needed: 5, have: 4 })
        ));
    }

    #[test]
    fn bspin_low_degrees() {
        let s = bspin_series(8).unwrap();
        assert_eq!(&s.dims()[..5], &[1, 0, 0, 0, 1]);
        assert!(matches!(bspin_series(32), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn k_coproduct_of_iota2() {
        let one = PolyMonomial::one(Kind::K);
        let g = |g| PolyMonomial::generator(g);
        let d = k_coproduct(&g(UGenerator::Iota2Derived(0)));
        assert_eq!(d.len(), 3);
        assert!(d.contains(&(g(UGenerator::Iota1), g(UGenerator::Iota1))));
        let d1 = k_coproduct(&g(UGenerator::Iota1));
        assert_eq!(*d1, F2Sum::from_terms([(g(UGenerator::Iota1), one.clone()), (one, g(UGenerator::Iota1))]));
    }

    #[test]
    fn thom_class_squares() {
        let t = ThomClass { vars: 4 };
        let bo = Ambient::BO { vars: 4 };
        let one = PolyElement::one(bo);
        let w = |i| PolyElement::generator(bo, UGenerator::SW(i)).unwrap();
        assert_eq!(t.sq(1, &one), w(1));
        assert_eq!(t.sq(2, &one), w(2));
        assert_eq!(t.apply(&SteenrodElement::sq(3), &one), w(3));
    }
}
