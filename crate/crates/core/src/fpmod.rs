//! Finitely presented graded left modules, realized degree by degree.
//!
//! In degree `d` the free module on the generators has the spanning set of
//! candidates `b·g`, with `g` a generator and `b` a basis element of the
//! acting algebra in degree `d - |g|`. Candidates are ordered by generator
//! name, then by the rendering of `b`. The submodule is spanned by `b·r` for
//! relations `r`, and the module basis is the greedy choice of candidates
//! independent modulo the submodule and the candidates chosen before them.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use f2linalg::{BitMatrix, BitVector, SpanTracker};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, FullA, GradedAlgebra, Twisted, TwistedA1, A1};
use crate::error::{Error, Result};
use crate::lincomb::F2Sum;
use crate::series::PoincareSeries;
use crate::steenrod::{self, SteenrodElement};
use crate::twisted::{self, TwistedElement};

/// A relation `Σ a_i · g_i`, homogeneous of total degree `degree`.
#[derive(Clone, Debug)]
pub struct Relation<E> {
    pub terms: Vec<(E, usize)>,
    pub degree: usize,
}

/// A finitely presented module over the algebra `A`.
#[derive(Clone, Debug)]
pub struct ModulePresentation<A: GradedAlgebra> {
    algebra: A,
    generators: Vec<(String, usize)>,
    relations: Vec<Relation<A::Element>>,
}

impl<A: GradedAlgebra> ModulePresentation<A> {
    /// Validates and builds a presentation. Zero coefficients are dropped,
    /// and relations that become empty are discarded.
    pub fn new(
        algebra: A,
        generators: Vec<(String, usize)>,
        relations: Vec<Vec<(A::Element, String)>>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for (name, _) in &generators {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
        }
        let mut rels = Vec::new();
        for rel in relations {
            let mut terms = Vec::new();
            let mut degree: Option<usize> = None;
            for (coef, gen) in rel {
                let g = generators
                    .iter()
                    .position(|(n, _)| *n == gen)
                    .ok_or_else(|| Error::UnknownGenerator(gen.clone()))?;
                if algebra.is_zero(&coef) {
                    continue;
                }
                if !algebra.contains(&coef) {
                    return Err(Error::NotInSubalgebra {
                        what: coef.to_string(),
                        algebra: algebra_label(algebra.kind()),
                    });
                }
                let cd = algebra.degree(&coef).ok_or_else(|| Error::Inhomogeneous(coef.to_string()))?;
                let total = cd + generators[g].1;
                match degree {
                    Some(d) if d != total => return Err(Error::InhomogeneousRelation(d, total)),
                    _ => degree = Some(total),
                }
                terms.push((coef, g));
            }
            if let Some(degree) = degree {
                rels.push(Relation { terms, degree });
            }
        }
        Ok(Self {
            algebra,
            generators,
            relations: rels,
        })
    }

    /// The cyclic module `A / A(r_1, …, r_k)` on one generator of degree
    /// `degree`.
    pub fn cyclic(algebra: A, name: &str, degree: usize, relations: Vec<A::Element>) -> Result<Self> {
        let rels = relations.into_iter().map(|r| vec![(r, name.to_string())]).collect();
        Self::new(algebra, vec![(name.to_string(), degree)], rels)
    }

    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation<A::Element>] {
        &self.relations
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    /// Lowest generator degree, `None` without generators.
    pub fn connectivity(&self) -> Option<usize> {
        self.generators.iter().map(|(_, d)| *d).min()
    }

    /// Serializes to the JSON presentation format.
    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            algebra: self.algebra.kind(),
            generators: self
                .generators
                .iter()
                .map(|(name, degree)| GeneratorJson {
                    name: name.clone(),
                    degree: *degree,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, g)| TermJson {
                            coef: c.to_string(),
                            gen: self.generators[*g].0.clone(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

fn algebra_label(kind: AlgebraKind) -> &'static str {
    match kind {
        AlgebraKind::FullA => "A",
        AlgebraKind::A1 => "A(1)",
        AlgebraKind::FullTwisted => "the twisted algebra",
        AlgebraKind::TwistedA1 => "the twisted A(1)",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: String,
    pub gen: String,
}

/// The JSON form of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub algebra: AlgebraKind,
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub relations: Vec<Vec<TermJson>>,
}

/// A presentation over any of the four algebras.
#[derive(Clone, Debug)]
pub enum AnyPresentation {
    FullA(ModulePresentation<FullA>),
    A1(ModulePresentation<A1>),
    FullTwisted(ModulePresentation<Twisted>),
    TwistedA1(ModulePresentation<TwistedA1>),
}

fn from_json_with<A: GradedAlgebra>(algebra: A, p: &PresentationJson) -> Result<ModulePresentation<A>> {
    let generators = p.generators.iter().map(|g| (g.name.clone(), g.degree)).collect();
    let mut relations = Vec::new();
    for rel in &p.relations {
        let mut terms = Vec::new();
        for t in rel {
            terms.push((algebra.parse(&t.coef)?, t.gen.clone()));
        }
        relations.push(terms);
    }
    ModulePresentation::new(algebra, generators, relations)
}

impl AnyPresentation {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let p: PresentationJson = serde_json::from_str(s)?;
        Self::from_json(&p)
    }

    pub fn from_json(p: &PresentationJson) -> Result<Self> {
        Ok(match p.algebra {
            AlgebraKind::FullA => Self::FullA(from_json_with(FullA, p)?),
            AlgebraKind::A1 => Self::A1(from_json_with(A1, p)?),
            AlgebraKind::FullTwisted => Self::FullTwisted(from_json_with(Twisted, p)?),
            AlgebraKind::TwistedA1 => Self::TwistedA1(from_json_with(TwistedA1, p)?),
        })
    }

    /// Realizes the module and produces its JSON report.
    pub fn realize_report(&self, max_degree: usize, with_basis: bool, with_actions: bool) -> Result<RealizationReport> {
        Ok(match self {
            Self::FullA(p) => realize(p, max_degree)?.report(with_basis, with_actions),
            Self::A1(p) => realize(p, max_degree)?.report(with_basis, with_actions),
            Self::FullTwisted(p) => realize(p, max_degree)?.report(with_basis, with_actions),
            Self::TwistedA1(p) => realize(p, max_degree)?.report(with_basis, with_actions),
        })
    }
}

/// A homogeneous module element, in coordinates of the degreewise basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    pub degree: usize,
    pub coords: BitVector,
}

impl ModuleElement {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding module elements of different degrees");
        Self {
            degree: self.degree,
            coords: &self.coords + &other.coords,
        }
    }
}

struct DegreeData<E> {
    offsets: Vec<Option<usize>>,
    coord_dim: usize,
    candidates: Vec<(usize, E)>,
    tracker: SpanTracker,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
}

/// The degreewise realization of a presentation through `max_degree`.
pub struct ModuleRealization<A: GradedAlgebra> {
    presentation: ModulePresentation<A>,
    max_degree: usize,
    degrees: Vec<DegreeData<A::Element>>,
}

/// Read-only access shared by module realizations and tensor products.
pub trait GradedModule {
    fn max_degree(&self) -> usize;
    fn dimension(&self, degree: usize) -> usize;
    fn basis_labels(&self, degree: usize) -> Vec<String>;

    fn poincare(&self) -> PoincareSeries {
        PoincareSeries::new((0..=self.max_degree()).map(|d| self.dimension(d) as u64).collect())
    }
}

fn label<E: std::fmt::Display>(b: &E, gen: &str) -> String {
    let s = b.to_string();
    if s == "1" {
        gen.to_string()
    } else if !s.contains('+') && !s.contains('|') {
        format!("{s} {gen}")
    } else {
        format!("({s}) {gen}")
    }
}

fn build_degree<A: GradedAlgebra>(p: &ModulePresentation<A>, d: usize) -> DegreeData<A::Element> {
    let alg = &p.algebra;
    let mut offsets = Vec::with_capacity(p.generators.len());
    let mut coord_dim = 0;
    for (_, gd) in &p.generators {
        if *gd <= d {
            offsets.push(Some(coord_dim));
            coord_dim += alg.coordinate_dim(d - gd);
        } else {
            offsets.push(None);
        }
    }
    let mut keyed: Vec<(String, String, usize, A::Element)> = Vec::new();
    for (g, (name, gd)) in p.generators.iter().enumerate() {
        if *gd > d {
            continue;
        }
        for b in alg.basis(d - gd).iter() {
            keyed.push((name.clone(), b.to_string(), g, b.clone()));
        }
    }
    keyed.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
    let candidates: Vec<(usize, A::Element)> = keyed.into_iter().map(|(_, _, g, b)| (g, b)).collect();

    let embed = |terms: &[(A::Element, usize)]| -> BitVector {
        let mut v = BitVector::zeros(coord_dim);
        for (a, g) in terms {
            let off = offsets[*g].expect("generator degree within range");
            let gd = p.generators[*g].1;
            for i in alg.coordinates(a, d - gd).ones() {
                v.flip(off + i);
            }
        }
        v
    };

    let mut tracker = SpanTracker::new(coord_dim, candidates.len());
    for rel in &p.relations {
        if rel.degree > d {
            continue;
        }
        for b in alg.basis(d - rel.degree).iter() {
            let terms: Vec<(A::Element, usize)> = rel
                .terms
                .iter()
                .map(|(c, g)| (alg.multiply(b, c), *g))
                .collect();
            tracker.insert(&embed(&terms));
        }
    }
    let mut basis = Vec::new();
    let mut position = vec![None; candidates.len()];
    for (i, (g, b)) in candidates.iter().enumerate() {
        if tracker.insert_tagged(&embed(&[(b.clone(), *g)]), i) {
            position[i] = Some(basis.len());
            basis.push(i);
        }
    }
    DegreeData {
        offsets,
        coord_dim,
        candidates,
        tracker,
        basis,
        position,
    }
}

/// Realizes a presentation in degrees `0..=max_degree`.
pub fn realize<A: GradedAlgebra>(p: &ModulePresentation<A>, max_degree: usize) -> Result<ModuleRealization<A>> {
    let degrees = (0..=max_degree)
        .into_par_iter()
        .map(|d| build_degree(p, d))
        .collect();
    Ok(ModuleRealization {
        presentation: p.clone(),
        max_degree,
        degrees,
    })
}

/// One action matrix: columns are images of the source basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionTable {
    pub op: String,
    pub degree: usize,
    pub rows: Vec<Vec<u8>>,
}

/// The JSON report of a realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationReport {
    pub algebra: AlgebraKind,
    pub max_degree: usize,
    pub dims: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<ActionTable>>,
}

impl<A: GradedAlgebra> ModuleRealization<A> {
    pub fn presentation(&self) -> &ModulePresentation<A> {
        &self.presentation
    }

    fn data(&self, d: usize) -> Result<&DegreeData<A::Element>> {
        self.degrees.get(d).ok_or(Error::Truncated {
            requested: d,
            max: self.max_degree,
        })
    }

    fn reduce(&self, d: usize, v: &BitVector) -> ModuleElement {
        let data = &self.degrees[d];
        let (res, combo) = data.tracker.reduce(v);
        debug_assert!(res.is_zero(), "element outside the free module's span");
        let coords = BitVector::from_indices(
            data.basis.len(),
            combo.ones().map(|i| data.position[i].expect("only chosen candidates are tagged")),
        );
        ModuleElement { degree: d, coords }
    }

    fn embed(&self, d: usize, terms: &[(A::Element, usize)]) -> BitVector {
        let data = &self.degrees[d];
        let alg = &self.presentation.algebra;
        let mut v = BitVector::zeros(data.coord_dim);
        for (a, g) in terms {
            let gd = self.presentation.generators[*g].1;
            let Some(off) = data.offsets[*g] else { continue };
            for i in alg.coordinates(a, d - gd).ones() {
                v.flip(off + i);
            }
        }
        v
    }

    pub fn zero(&self, degree: usize) -> Result<ModuleElement> {
        Ok(ModuleElement {
            degree,
            coords: BitVector::zeros(self.data(degree)?.basis.len()),
        })
    }

    /// The image of a free-module element `Σ a_i · g_i`, homogeneous of
    /// degree `degree`.
    pub fn element(&self, degree: usize, terms: &[(A::Element, usize)]) -> Result<ModuleElement> {
        self.data(degree)?;
        let alg = &self.presentation.algebra;
        for (a, g) in terms {
            if alg.is_zero(a) {
                continue;
            }
            let gd = self.presentation.generators[*g].1;
            if alg.degree(a).map(|x| x + gd) != Some(degree) {
                return Err(Error::Inhomogeneous(a.to_string()));
            }
        }
        Ok(self.reduce(degree, &self.embed(degree, terms)))
    }

    /// The class of the named generator.
    pub fn generator_element(&self, name: &str) -> Result<ModuleElement> {
        let g = self.presentation.generator_index(name)?;
        let d = self.presentation.generators[g].1;
        self.element(d, &[(self.presentation.algebra.one(), g)])
    }

    /// The `i`-th basis element of degree `d`.
    pub fn basis_element(&self, d: usize, i: usize) -> Result<ModuleElement> {
        let n = self.data(d)?.basis.len();
        Ok(ModuleElement {
            degree: d,
            coords: BitVector::unit(n, i),
        })
    }

    /// `x · v` for homogeneous `x`.
    pub fn act(&self, x: &A::Element, v: &ModuleElement) -> Result<ModuleElement> {
        let alg = &self.presentation.algebra;
        if alg.is_zero(x) {
            return self.zero(v.degree);
        }
        let xd = alg.degree(x).ok_or_else(|| Error::Inhomogeneous(x.to_string()))?;
        let target = v.degree + xd;
        let source = self.data(v.degree)?;
        self.data(target)?;
        let mut terms = Vec::new();
        for p in v.coords.ones() {
            let (g, b) = &source.candidates[source.basis[p]];
            terms.push((alg.multiply(x, b), *g));
        }
        Ok(self.reduce(target, &self.embed(target, &terms)))
    }

    /// The matrix of `x` from degree `d` to degree `d + |x|`.
    pub fn action_matrix(&self, x: &A::Element, d: usize) -> Result<BitMatrix> {
        let xd = self
            .presentation
            .algebra
            .degree(x)
            .ok_or_else(|| Error::Inhomogeneous(x.to_string()))?;
        let target_dim = self.data(d + xd)?.basis.len();
        let mut cols = Vec::new();
        for i in 0..self.data(d)?.basis.len() {
            cols.push(self.act(x, &self.basis_element(d, i)?)?.coords);
        }
        Ok(BitMatrix::from_columns(target_dim, &cols))
    }

    /// Action matrices of the algebra generators on every degree where the
    /// target is still within the realization.
    pub fn action_tables(&self) -> Vec<ActionTable> {
        let mut out = Vec::new();
        for (name, x) in self.presentation.algebra.generators(self.max_degree) {
            let xd = self.presentation.algebra.degree(&x).expect("generators are homogeneous");
            for d in 0..=self.max_degree.saturating_sub(xd) {
                let m = self.action_matrix(&x, d).expect("degrees in range");
                out.push(ActionTable {
                    op: name.clone(),
                    degree: d,
                    rows: (0..m.num_rows())
                        .map(|r| (0..m.num_cols()).map(|c| m.get(r, c) as u8).collect())
                        .collect(),
                });
            }
        }
        out
    }

    /// Checks that every relation maps to zero in every degree.
    pub fn relations_sound(&self) -> Result<bool> {
        let alg = &self.presentation.algebra;
        for rel in &self.presentation.relations {
            for d in rel.degree..=self.max_degree {
                for b in alg.basis(d - rel.degree).iter() {
                    let terms: Vec<_> = rel.terms.iter().map(|(c, g)| (alg.multiply(b, c), *g)).collect();
                    if !self.element(d, &terms)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Renders a module element in the degreewise basis.
    pub fn render(&self, v: &ModuleElement) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let labels = self.basis_labels(v.degree);
        v.coords.ones().map(|i| labels[i].clone()).collect::<Vec<_>>().join(" + ")
    }

    pub fn report(&self, with_basis: bool, with_actions: bool) -> RealizationReport {
        RealizationReport {
            algebra: self.presentation.algebra.kind(),
            max_degree: self.max_degree,
            dims: self.poincare().dims().to_vec(),
            basis: with_basis.then(|| (0..=self.max_degree).map(|d| self.basis_labels(d)).collect()),
            actions: with_actions.then(|| self.action_tables()),
        }
    }
}

impl<A: GradedAlgebra> GradedModule for ModuleRealization<A> {
    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn dimension(&self, degree: usize) -> usize {
        self.degrees.get(degree).map_or(0, |d| d.basis.len())
    }

    fn basis_labels(&self, degree: usize) -> Vec<String> {
        let Some(data) = self.degrees.get(degree) else {
            return Vec::new();
        };
        data.basis
            .iter()
            .map(|&i| {
                let (g, b) = &data.candidates[i];
                label(b, &self.presentation.generators[*g].0)
            })
            .collect()
    }
}

/// A named class of a module, such as the bottom class of a cyclic module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedClass {
    pub name: String,
    pub element: ModuleElement,
}

impl DistinguishedClass {
    pub fn generator<A: GradedAlgebra>(m: &ModuleRealization<A>, generator: &str, name: &str) -> Result<Self> {
        Ok(Self {
            name: name.into(),
            element: m.generator_element(generator)?,
        })
    }

    pub fn degree(&self) -> usize {
        self.element.degree
    }

    /// Whether the class is the only nonzero element of its degree.
    pub fn is_unique_nonzero<M: GradedModule>(&self, m: &M) -> bool {
        !self.element.is_zero() && m.dimension(self.degree()) == 1
    }
}

/// Replaces every coefficient `a` of an `𝒜(1)` presentation by `φ(a)`,
/// presenting `𝒜̲ ⊗_{𝒜(1)} M` along `φ`.
pub fn induce_along_phi(p: &ModulePresentation<A1>) -> Result<ModulePresentation<Twisted>> {
    let rels = p
        .relations
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .map(|(a, g)| Ok((twisted::phi(a)?, p.generators[*g].0.clone())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ModulePresentation::new(Twisted, p.generators.clone(), rels)
}

/// A basis element of a tensor product: degree and index in the plain
/// factor, then degree and index in the twisted factor.
pub type TensorBasis = (usize, usize, usize, usize);

/// A homogeneous element of a tensor product.
pub type TensorElement = F2Sum<TensorBasis>;

/// `M ⊗ T` for an `𝒜`-module `M` and an `𝒜̲`-module `T`, with
/// `(k ⊗ a)(x ⊗ y) = Σ a'(x) ⊗ (k ⊗ a'')(y)`.
pub struct TensorRealization {
    plain: Arc<ModuleRealization<FullA>>,
    twisted: Arc<ModuleRealization<Twisted>>,
    max_degree: usize,
    plain_connectivity: usize,
}

/// One summand of an expanded action, kept before cancellation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub operator: String,
    pub left: ModuleElement,
    pub right: ModuleElement,
}

/// Builds the tensor product through `max_degree`. The plain factor must be
/// realized through `max_degree` and the twisted factor through
/// `max_degree` minus the plain factor's connectivity.
pub fn tensor_with_plain(
    plain: Arc<ModuleRealization<FullA>>,
    twisted: Arc<ModuleRealization<Twisted>>,
    max_degree: usize,
) -> Result<TensorRealization> {
    let conn = plain.presentation.connectivity().unwrap_or(0).min(max_degree);
    if plain.max_degree < max_degree {
        return Err(Error::Truncated {
            requested: max_degree,
            max: plain.max_degree,
        });
    }
    if twisted.max_degree < max_degree - conn {
        return Err(Error::Truncated {
            requested: max_degree - conn,
            max: twisted.max_degree,
        });
    }
    Ok(TensorRealization {
        plain,
        twisted,
        max_degree,
        plain_connectivity: conn,
    })
}

impl TensorRealization {
    pub fn plain(&self) -> &ModuleRealization<FullA> {
        &self.plain
    }

    pub fn twisted(&self) -> &ModuleRealization<Twisted> {
        &self.twisted
    }

    /// `x ⊗ y` expanded in the product basis.
    pub fn outer(&self, x: &ModuleElement, y: &ModuleElement) -> TensorElement {
        let mut terms = Vec::new();
        for i in x.coords.ones() {
            for j in y.coords.ones() {
                terms.push((x.degree, i, y.degree, j));
            }
        }
        F2Sum::from_terms(terms)
    }

    /// `x · v`, together with every summand `a'(x_i) ⊗ (k ⊗ a'')(y_j)` of
    /// the expansion before cancellation.
    pub fn act_traced(&self, x: &TwistedElement, v: &TensorElement) -> Result<(TensorElement, Vec<TraceEntry>)> {
        let mut trace = Vec::new();
        let mut terms = Vec::new();
        for &(p, i, q, j) in v.iter() {
            if p + q + x.degree().unwrap_or(0) > self.max_degree {
                return Err(Error::Truncated {
                    requested: p + q + x.degree().unwrap_or(0),
                    max: self.max_degree,
                });
            }
            let xi = self.plain.basis_element(p, i)?;
            let yj = self.twisted.basis_element(q, j)?;
            for (k, a) in x.terms() {
                for (a1, a2) in steenrod::mono_coproduct(a).iter() {
                    let left = self.plain.act(&SteenrodElement::from(a1.clone()), &xi)?;
                    let op = TwistedElement::term(k.clone(), a2.clone());
                    let right = self.twisted.act(&op, &yj)?;
                    terms.extend(self.outer(&left, &right).into_terms());
                    trace.push(TraceEntry {
                        operator: format!("({a1}) ⊗ ({k} | {a2})"),
                        left,
                        right,
                    });
                }
            }
        }
        Ok((F2Sum::from_terms(terms), trace))
    }

    pub fn act(&self, x: &TwistedElement, v: &TensorElement) -> Result<TensorElement> {
        Ok(self.act_traced(x, v)?.0)
    }

    pub fn render(&self, v: &TensorElement) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|&(p, i, q, j)| format!("{} ⊗ {}", self.plain.basis_labels(p)[i], self.twisted.basis_labels(q)[j]))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Renders one summand of a trace.
    pub fn render_pair(&self, left: &ModuleElement, right: &ModuleElement) -> String {
        if left.is_zero() || right.is_zero() {
            return "0".into();
        }
        format!("({}) ⊗ ({})", self.plain.render(left), self.twisted.render(right))
    }
}

impl GradedModule for TensorRealization {
    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn dimension(&self, degree: usize) -> usize {
        (self.plain_connectivity..=degree)
            .map(|p| self.plain.dimension(p) * self.twisted.dimension(degree - p))
            .sum()
    }

    fn basis_labels(&self, degree: usize) -> Vec<String> {
        let mut out = Vec::new();
        for p in self.plain_connectivity..=degree {
            let left = self.plain.basis_labels(p);
            let right = self.twisted.basis_labels(degree - p);
            for l in &left {
                for r in &right {
                    out.push(format!("{l} ⊗ {r}"));
                }
            }
        }
        out
    }
}

/// Groups per-degree dimensions, for reports.
pub fn dims_by_degree<M: GradedModule>(m: &M) -> BTreeMap<usize, usize> {
    (0..=m.max_degree()).map(|d| (d, m.dimension(d))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(i: u16) -> SteenrodElement {
        SteenrodElement::sq(i)
    }

    #[test]
    fn a1_quotients() {
        let z2 = ModulePresentation::cyclic(A1, "g", 0, vec![sq(1), sq(2)]).unwrap();
        let r = realize(&z2, 8).unwrap();
        assert_eq!(r.poincare().dims(), &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
        let joker = ModulePresentation::cyclic(A1, "g", 0, vec![sq(3)]).unwrap();
        let r = realize(&joker, 7).unwrap();
        assert_eq!(r.poincare().dims(), &[1, 1, 1, 1, 1, 0, 0, 0]);
        assert!(r.relations_sound().unwrap());
        let free = ModulePresentation::cyclic(A1, "g", 0, vec![]).unwrap();
        assert_eq!(realize(&free, 7).unwrap().poincare().dims(), &[1, 1, 1, 2, 1, 1, 1, 0]);
    }

    #[test]
    fn presentation_validation() {
        let bad = ModulePresentation::new(A1, vec![("g".into(), 0)], vec![vec![(sq(1), "h".into())]]);
        assert!(matches!(bad, Err(Error::UnknownGenerator(_))));
        let dup = ModulePresentation::new(A1, vec![("g".into(), 0), ("g".into(), 1)], vec![]);
        assert!(matches!(dup, Err(Error::DuplicateGenerator(_))));
        let outside = ModulePresentation::new(A1, vec![("g".into(), 0)], vec![vec![(sq(4), "g".into())]]);
        assert!(matches!(outside, Err(Error::NotInSubalgebra { .. })));
        let inhom = ModulePresentation::new(
            FullA,
            vec![("g".into(), 0), ("h".into(), 0)],
            vec![vec![(sq(1), "g".into()), (sq(2), "h".into())]],
        );
        assert!(matches!(inhom, Err(Error::InhomogeneousRelation(1, 2))));
    }

    #[test]
    fn action_respects_relations() {
        let joker = ModulePresentation::cyclic(A1, "g", 0, vec![sq(3)]).unwrap();
        let r = realize(&joker, 6).unwrap();
        let g = r.generator_element("g").unwrap();
        let s3 = r.act(&sq(3), &g).unwrap();
        assert!(s3.is_zero());
        let s2s2 = r.act(&sq(2), &r.act(&sq(2), &g).unwrap()).unwrap();
        assert!(!s2s2.is_zero());
        assert!(r.act(&sq(1), &r.act(&sq(1), &g).unwrap()).unwrap().is_zero());
        let top = r.basis_element(4, 0).unwrap();
        assert!(matches!(r.act(&sq(4), &top), Err(Error::Truncated { requested: 8, max: 6 })));
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"algebra":"TwistedA1","generators":[{"name":"g","degree":0}],"relations":[[{"coef":"1 | Sq2","gen":"g"}]]}"#;
        let p = AnyPresentation::from_json_str(src).unwrap();
        let AnyPresentation::TwistedA1(p) = p else { panic!("wrong algebra") };
        let back = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(back, src);
        assert!(AnyPresentation::from_json_str(r#"{"algebra":"A1","generators":[{"name":"g","degree":0}],"relations":[[{"coef":"Sq4","gen":"g"}]]}"#).is_err());
    }

    #[test]
    fn induction_of_trivial_module() {
        let z2 = ModulePresentation::cyclic(A1, "k", 0, vec![sq(1), sq(2)]).unwrap();
        let ind = induce_along_phi(&z2).unwrap();
        assert_eq!(ind.relations().len(), 2);
        let r = realize(&ind, 4).unwrap();
        assert_eq!(r.poincare().dims()[0], 1);
        assert!(r.relations_sound().unwrap());
    }

    #[test]
    fn tensor_with_unit_module() {
        let unit = Arc::new(realize(&ModulePresentation::cyclic(FullA, "u", 0, vec![sq(1), sq(2), sq(4)]).unwrap(), 6).unwrap());
        let z2 = ModulePresentation::cyclic(A1, "k", 0, vec![sq(1), sq(2)]).unwrap();
        let t = Arc::new(realize(&induce_along_phi(&z2).unwrap(), 6).unwrap());
        let tens = tensor_with_plain(unit, t.clone(), 6).unwrap();
        assert_eq!(tens.poincare(), t.poincare());
    }
}
