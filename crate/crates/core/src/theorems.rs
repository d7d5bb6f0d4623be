//! Named verification procedures with machine-readable reports.
//!
//! Every check returns a [`CheckReport`] whose ledger lists, degree by degree
//! or identity by identity, the two sides that were compared. A report
//! passes exactly when every ledger entry agrees.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock};
use std::time::Instant;

use f2linalg::SpanTracker;
use parking_lot::Mutex;
use serde::Serialize;

use crate::algebra::{FullA, Twisted, TwistedA1, A1};
use crate::error::{Error, Result};
use crate::fpmod::{
    induce_along_phi, realize, tensor_with_plain, DistinguishedClass, GradedModule, ModulePresentation,
    ModuleRealization,
};
use crate::series::PoincareSeries;
use crate::steenrod::{self, a1, AlgebraId, SteenrodElement};
use crate::twisted::{
    self, contains_a1, phi, phi_basis, phi_extended, psi, TwistedElement, TwistedSubalgebraId,
};
use crate::unstable::{self, Ambient, PolyElement, ThomClass, UGenerator, BSPIN_MAX_DEGREE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Exploratory output with no verdict.
    Info,
}

/// One side of a ledger comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum LedgerValue {
    Count(u64),
    Text(String),
}

impl fmt::Display for LedgerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LedgerValue::Count(n) => write!(f, "{n}"),
            LedgerValue::Text(s) => f.write_str(s),
        }
    }
}

impl From<u64> for LedgerValue {
    fn from(n: u64) -> Self {
        Self::Count(n)
    }
}

impl From<usize> for LedgerValue {
    fn from(n: usize) -> Self {
        Self::Count(n as u64)
    }
}

impl From<String> for LedgerValue {
    fn from(s: String) -> Self {
        Self::Text(s)
    }
}

impl From<&str> for LedgerValue {
    fn from(s: &str) -> Self {
        Self::Text(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub degree: usize,
    pub lhs: LedgerValue,
    pub rhs: LedgerValue,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl LedgerEntry {
    pub fn counts(degree: usize, lhs: u64, rhs: u64) -> Self {
        Self {
            degree,
            lhs: lhs.into(),
            rhs: rhs.into(),
            agree: lhs == rhs,
            label: None,
            detail: None,
        }
    }

    pub fn new(degree: usize, label: impl Into<String>, lhs: impl Into<LedgerValue>, rhs: impl Into<LedgerValue>, agree: bool) -> Self {
        Self {
            degree,
            lhs: lhs.into(),
            rhs: rhs.into(),
            agree,
            label: Some(label.into()),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// The outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub max_degree: usize,
    pub status: Status,
    pub ledger: Vec<LedgerEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
    pub ms: u64,
}

impl CheckReport {
    fn finish(check: &str, max_degree: usize, ledger: Vec<LedgerEntry>, details: Vec<String>, start: Instant) -> Self {
        let status = if ledger.iter().all(|e| e.agree) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            check: check.into(),
            max_degree,
            status,
            ledger,
            details,
            ms: start.elapsed().as_millis() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        Self { ms: 0, ..self.clone() } == Self { ms: 0, ..other.clone() }
    }

    pub fn render_text(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        };
        let mut out = format!("{} (max degree {}): {} in {} ms\n", self.check, self.max_degree, status, self.ms);
        for e in &self.ledger {
            let mark = if e.agree { "ok " } else { "BAD" };
            let label = e.label.as_deref().map(|l| format!("{l}: ")).unwrap_or_default();
            out.push_str(&format!("  [{mark}] degree {:>2}  {label}{}  vs  {}\n", e.degree, e.lhs, e.rhs));
            if let Some(d) = &e.detail {
                out.push_str(&format!("        {d}\n"));
            }
        }
        for d in &self.details {
            out.push_str(&format!("  {d}\n"));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Shared realizations

type RealizationCache<A> = LazyLock<Mutex<HashMap<&'static str, Arc<ModuleRealization<A>>>>>;

static TWISTED_QUOTIENTS: RealizationCache<Twisted> = LazyLock::new(Default::default);
static PLAIN_QUOTIENTS: RealizationCache<FullA> = LazyLock::new(Default::default);

fn sq(i: u16) -> SteenrodElement {
    SteenrodElement::sq(i)
}

fn cached<A: crate::algebra::GradedAlgebra>(
    cache: &RealizationCache<A>,
    key: &'static str,
    max_degree: usize,
    build: impl FnOnce() -> Result<ModulePresentation<A>>,
) -> Result<Arc<ModuleRealization<A>>> {
    let mut guard = cache.lock();
    if let Some(r) = guard.get(key) {
        if r.max_degree() >= max_degree {
            return Ok(r.clone());
        }
    }
    let r = Arc::new(realize(&build()?, max_degree)?);
    guard.insert(key, r.clone());
    Ok(r)
}

/// The trivial `𝒜(1)`-module `Z/2 = 𝒜(1)/(Sq1, Sq2)`.
pub fn trivial_a1_module() -> ModulePresentation<A1> {
    ModulePresentation::cyclic(A1, "κ", 0, vec![sq(1), sq(2)]).expect("valid presentation")
}

/// The joker `𝒜(1)/𝒜(1)Sq3`.
pub fn joker() -> ModulePresentation<A1> {
    ModulePresentation::cyclic(A1, "κ", 0, vec![sq(3)]).expect("valid presentation")
}

/// `𝒜̲/𝒜̲(φSq1, φSq2)`, realized through at least `max_degree`.
pub fn twisted_trivial_quotient(max_degree: usize) -> Result<Arc<ModuleRealization<Twisted>>> {
    cached(&TWISTED_QUOTIENTS, "phi(Sq1), phi(Sq2)", max_degree, || induce_along_phi(&trivial_a1_module()))
}

/// `𝒜̲/𝒜̲φ(Sq3)`, realized through at least `max_degree`.
pub fn twisted_joker_quotient(max_degree: usize) -> Result<Arc<ModuleRealization<Twisted>>> {
    cached(&TWISTED_QUOTIENTS, "phi(Sq3)", max_degree, || induce_along_phi(&joker()))
}

/// `𝒜/𝒜(Sq1, Sq2)`, the cohomology of `ko`.
pub fn plain_trivial_quotient(max_degree: usize) -> Result<Arc<ModuleRealization<FullA>>> {
    cached(&PLAIN_QUOTIENTS, "Sq1, Sq2", max_degree, || {
        ModulePresentation::cyclic(FullA, "g", 0, vec![sq(1), sq(2)])
    })
}

/// `𝒜/𝒜Sq3`.
pub fn plain_joker_quotient(max_degree: usize) -> Result<Arc<ModuleRealization<FullA>>> {
    cached(&PLAIN_QUOTIENTS, "Sq3", max_degree, || ModulePresentation::cyclic(FullA, "g", 0, vec![sq(3)]))
}

fn series_ledger(lhs: &PoincareSeries, rhs: &PoincareSeries, max_degree: usize) -> Vec<LedgerEntry> {
    (0..=max_degree).map(|d| LedgerEntry::counts(d, lhs.get(d), rhs.get(d))).collect()
}

fn k_series(max_degree: usize) -> PoincareSeries {
    unstable::dimension_series(Ambient::K, max_degree)
}

/// `PS(𝒜 // 𝒜(1)) = PS(𝒜) ÷ PS(𝒜(1))`.
pub fn ko_series_by_division(max_degree: usize) -> Result<PoincareSeries> {
    steenrod::dimension_series(AlgebraId::FullA, max_degree)
        .quotient(&steenrod::dimension_series(AlgebraId::A1, max_degree))
}

// ---------------------------------------------------------------------------
// Checks on φ and ψ

/// `φ(Sq1)² = 0`, the six-term value of `φ(Sq2)²` and `φ(Sq1)φ(Sq2)φ(Sq1)`,
/// `Δι₂`, and the Hopf property on `Sq1` and `Sq2`.
pub fn check_appendix() -> CheckReport {
    let start = Instant::now();
    let ledger = twisted::verify_appendix()
        .into_iter()
        .map(|c| {
            let degree = match c.name.as_str() {
                "phi(Sq1)^2 = 0" => 2,
                "coproduct of i2" => 2,
                n if n.contains("Sq1 Sq2 Sq1") || n.starts_with("phi(Sq") => 4,
                n if n.ends_with("Sq2") => 2,
                _ => 1,
            };
            LedgerEntry::new(degree, c.name, c.lhs, c.rhs, c.holds)
        })
        .collect();
    let details = vec![format!("expected six-term element: {}", twisted::appendix_expected())];
    CheckReport::finish("appendix", 4, ledger, details, start)
}

/// The Hopf property `Δφ(b) = (φ ⊗ φ)Δ(b)` on every basis element of
/// `𝒜(1)`, and `φ(b b') = φ(b)φ(b')` on all ordered basis pairs.
pub fn check_hopf() -> CheckReport {
    let start = Instant::now();
    let mut ledger = Vec::new();
    let elems = a1().elements();
    for b in elems {
        let c = twisted::check_hopf(&format!("coproduct of phi({})", b.element), &b.element)
            .expect("basis elements lie in A(1)");
        ledger.push(LedgerEntry::new(b.degree, c.name, c.lhs, c.rhs, c.holds));
    }
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let prod = steenrod::multiply(&x.element, &y.element);
            let lhs = phi(&prod).expect("A(1) is closed under products");
            let rhs = phi_basis(i) * phi_basis(j);
            let agree = lhs == rhs;
            ledger.push(LedgerEntry::new(
                x.degree + y.degree,
                format!("phi(({}) ({}))", x.element, y.element),
                lhs.to_string(),
                rhs.to_string(),
                agree,
            ));
        }
    }
    CheckReport::finish("hopf", 2 * steenrod::A1_TOP_DEGREE, ledger, Vec::new(), start)
}

/// `φ_ext ∘ ψ = ψ ∘ φ_ext = id` on a basis of `𝒜̲(1)` in each degree, and
/// both maps are degreewise bijective.
pub fn check_inverse(max_degree: usize) -> CheckReport {
    let start = Instant::now();
    let mut ledger = Vec::new();
    for d in 0..=max_degree {
        let basis = twisted::basis(TwistedSubalgebraId::TwistedA1, d);
        let mut identities = 0u64;
        let dim = crate::algebra::GradedAlgebra::coordinate_dim(&Twisted, d);
        let mut span_phi = SpanTracker::new(dim, 0);
        let mut span_psi = SpanTracker::new(dim, 0);
        let mut closed = true;
        for b in &basis {
            let (Ok(p), Ok(q)) = (phi_extended(b), psi(b)) else {
                closed = false;
                continue;
            };
            closed &= contains_a1(&p) && contains_a1(&q);
            let back_pq = phi_extended(&q).ok();
            let back_qp = psi(&p).ok();
            if back_pq.as_ref() == Some(b) && back_qp.as_ref() == Some(b) {
                identities += 1;
            }
            span_phi.insert(&twisted::coordinates(&p, d));
            span_psi.insert(&twisted::coordinates(&q, d));
        }
        let n = basis.len() as u64;
        let agree = identities == n && closed && span_phi.rank() == basis.len() && span_psi.rank() == basis.len();
        ledger.push(
            LedgerEntry {
                agree,
                ..LedgerEntry::counts(d, n, identities)
            }
            .with_detail(format!(
                "rank phi_ext = {}, rank psi = {}",
                span_phi.rank(),
                span_psi.rank()
            )),
        );
    }
    CheckReport::finish("inverse", max_degree, ledger, Vec::new(), start)
}

/// `φ(α)(l ⊗ 1) = Σ (α'(l) ⊗ 1)φ(α'')` for all `α` in the `𝒜(1)` basis and
/// all monomials `l` of `H*(K)`.
pub fn check_commutation(max_degree: usize) -> CheckReport {
    let start = Instant::now();
    let mut ledger = Vec::new();
    let mut details = Vec::new();
    for d in 0..=max_degree {
        let (n, failures) = twisted::commutation_in_degree(d);
        ledger.push(LedgerEntry::counts(d, n as u64, (n - failures.len()) as u64));
        for f in failures.iter().take(3) {
            details.push(format!("{}: {} vs {}", f.name, f.lhs, f.rhs));
        }
    }
    CheckReport::finish("commutation", max_degree, ledger, details, start)
}

// ---------------------------------------------------------------------------
// Module-level checks

/// `PS(𝒜̲) = PS(𝒜̲ / 𝒜̲·φ(𝒜(1)⁺)) × PS(𝒜(1))`.
pub fn check_freeness(max_degree: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let q = twisted_trivial_quotient(max_degree)?;
    let lhs = twisted::dimension_series(TwistedSubalgebraId::FullTwisted, max_degree);
    let rhs = q
        .poincare()
        .truncate(max_degree)
        .product(&steenrod::dimension_series(AlgebraId::A1, max_degree));
    let ledger = series_ledger(&lhs, &rhs, max_degree);
    Ok(CheckReport::finish("freeness", max_degree, ledger, Vec::new(), start))
}

fn kappa_relations(q: &ModuleRealization<Twisted>) -> Result<Vec<LedgerEntry>> {
    let kappa = q.generator_element("κ")?;
    let t = |s: &str| crate::expr::parse_twisted(s);
    let mut out = Vec::new();
    for (op, k) in [("1 | Sq1", "i1 | 1"), ("1 | Sq2", "i2 | 1")] {
        let lhs = q.act(&t(op)?, &kappa)?;
        let rhs = q.act(&t(k)?, &kappa)?;
        out.push(LedgerEntry::new(
            lhs.degree,
            format!("({op}) κ = ({k}) κ"),
            q.render(&lhs),
            q.render(&rhs),
            lhs == rhs,
        ));
    }
    for i in [1u16, 2] {
        let v = q.act(&twisted::phi_generator(i), &kappa)?;
        out.push(LedgerEntry::new(v.degree, format!("phi(Sq{i}) κ = 0"), q.render(&v), "0", v.is_zero()));
    }
    let class = DistinguishedClass::generator(q, "κ", "κ")?;
    out.push(LedgerEntry::new(
        0,
        "κ is the unique nonzero class in degree 0",
        q.dimension(0),
        1usize,
        class.is_unique_nonzero(q),
    ));
    Ok(out)
}

/// `PS(𝒜̲/(φSq1, φSq2)) = PS(𝒜/𝒜(Sq1, Sq2)) × PS(H*(K))`, the first factor
/// cross-checked against `PS(𝒜) ÷ PS(𝒜(1))`, together with the relations
/// satisfied by the bottom class `κ`.
pub fn check_k2o(max_degree: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let q = twisted_trivial_quotient(max_degree)?;
    let ko = plain_trivial_quotient(max_degree)?.poincare().truncate(max_degree);
    let lhs = q.poincare().truncate(max_degree);
    let rhs = ko.product(&k_series(max_degree));
    let mut ledger = series_ledger(&lhs, &rhs, max_degree);
    let divided = ko_series_by_division(max_degree)?;
    for d in 0..=max_degree {
        ledger.push(LedgerEntry {
            label: Some("PS(A/A(Sq1,Sq2)) vs PS(A) / PS(A(1))".into()),
            ..LedgerEntry::counts(d, ko.get(d), divided.get(d))
        });
    }
    ledger.extend(kappa_relations(&q)?);
    let details = vec![
        format!("PS(twisted quotient) = {lhs}"),
        format!("PS(H*(ko)) = {ko}"),
    ];
    Ok(CheckReport::finish("k2o", max_degree, ledger, details, start))
}

/// `PS(𝒜̲/φ(Sq3)) = PS(𝒜//𝒜(1)) × PS(joker) × PS(H*(K))`, with the untwisted
/// factor `PS(𝒜/𝒜Sq3)` realized directly and the joker recovered by series
/// division.
pub fn check_k2o2(max_degree: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let q = twisted_joker_quotient(max_degree)?;
    let lhs = q.poincare().truncate(max_degree);
    let ko = ko_series_by_division(max_degree)?;
    let joker_series = realize(&joker(), max_degree)?.poincare();
    let rhs = ko.product(&joker_series).product(&k_series(max_degree));
    let mut ledger = series_ledger(&lhs, &rhs, max_degree);
    let plain = plain_joker_quotient(max_degree)?.poincare().truncate(max_degree);
    let untwisted = plain.product(&k_series(max_degree));
    for d in 0..=max_degree {
        ledger.push(LedgerEntry {
            label: Some("PS(A/A Sq3) x PS(H*(K))".into()),
            ..LedgerEntry::counts(d, lhs.get(d), untwisted.get(d))
        });
    }
    let recovered = plain.quotient(&ko)?;
    ledger.push(LedgerEntry::new(
        4,
        "PS(A/A Sq3) / PS(A//A(1))",
        recovered.truncate(max_degree.min(6)).to_string(),
        joker_series.truncate(max_degree.min(6)).to_string(),
        recovered == joker_series,
    ));
    let details = vec![format!("PS(twisted joker quotient) = {lhs}"), format!("PS(joker) = {joker_series}")];
    Ok(CheckReport::finish("k2o2", max_degree, ledger, details, start))
}

/// Degree of the class `λ` in the Sq3 computation.
pub const LAMBDA_DEGREE: usize = 10;

/// `φ(Sq3)(λ ⊗ κ) = 0` in `(𝒜/𝒜Sq3 · λ) ⊗ 𝒜̲/(φSq1, φSq2)`, with `|λ| = 10`,
/// computed as `φ(Sq1)(φ(Sq2)(λ ⊗ κ))` and recording the uncancelled
/// summands of each step.
pub fn check_sq3_kappa10() -> Result<CheckReport> {
    let start = Instant::now();
    let top = LAMBDA_DEGREE + 4;
    let plain = Arc::new(realize(
        &ModulePresentation::cyclic(FullA, "λ", LAMBDA_DEGREE, vec![sq(3)])?,
        top,
    )?);
    let q = twisted_trivial_quotient(4)?;
    let tensor = tensor_with_plain(plain.clone(), q.clone(), top)?;
    let lambda = plain.generator_element("λ")?;
    let kappa = q.generator_element("κ")?;
    let v = tensor.outer(&lambda, &kappa);

    let mut ledger = Vec::new();
    let mut details = Vec::new();

    let (step1, trace1) = tensor.act_traced(&twisted::phi_generator(2), &v)?;
    details.push("phi(Sq2)(λ ⊗ κ) before cancellation:".into());
    for t in &trace1 {
        details.push(format!("  {} : {}", t.operator, tensor.render_pair(&t.left, &t.right)));
    }
    let sq2_lambda = plain.act(&sq(2), &lambda)?;
    let expected1 = tensor.outer(&sq2_lambda, &kappa);
    ledger.push(LedgerEntry::new(
        LAMBDA_DEGREE + 2,
        "phi(Sq2)(λ ⊗ κ) = Sq2 λ ⊗ κ",
        tensor.render(&step1),
        tensor.render(&expected1),
        step1 == expected1,
    ));

    let (step2, trace2) = tensor.act_traced(&twisted::phi_generator(1), &step1)?;
    details.push("phi(Sq1)(Sq2 λ ⊗ κ) before cancellation:".into());
    for t in &trace2 {
        details.push(format!("  {} : {}", t.operator, tensor.render_pair(&t.left, &t.right)));
    }
    ledger.push(LedgerEntry::new(
        LAMBDA_DEGREE + 3,
        "phi(Sq1) phi(Sq2)(λ ⊗ κ) = 0",
        tensor.render(&step2),
        "0",
        step2.is_zero(),
    ));

    let i1_kappa = q.act(&crate::expr::parse_twisted("i1 | 1")?, &kappa)?;
    let occurrences = trace1
        .iter()
        .chain(&trace2)
        .filter(|t| t.left == sq2_lambda && t.right == i1_kappa)
        .count();
    ledger.push(LedgerEntry::new(
        LAMBDA_DEGREE + 3,
        "uncancelled occurrences of Sq2 λ ⊗ i1 κ",
        occurrences,
        2usize,
        occurrences == 2,
    ));

    let phi3 = phi(&sq(3))?;
    let direct = tensor.act(&phi3, &v)?;
    ledger.push(LedgerEntry::new(
        LAMBDA_DEGREE + 3,
        "phi(Sq3)(λ ⊗ κ) = 0",
        tensor.render(&direct),
        "0",
        direct.is_zero(),
    ));

    let sq1_sq2 = plain.act(&sq(1), &sq2_lambda)?;
    ledger.push(LedgerEntry::new(
        LAMBDA_DEGREE + 3,
        "Sq1 Sq2 λ = 0",
        plain.render(&sq1_sq2),
        "0",
        sq1_sq2.is_zero(),
    ));
    let plain_sq3 = tensor.act(&TwistedElement::from_steenrod(&sq(3)), &v)?;
    details.push(format!("(1 | Sq3)(λ ⊗ κ) = {}", tensor.render(&plain_sq3)));
    Ok(CheckReport::finish("sq3kappa", top, ledger, details, start))
}

/// The `𝒜̲`-action on `H*(BO(n))` with `k ∈ H*(K)` acting through
/// `ι₁ ↦ w₁, ι₂ ↦ w₂`.
fn twisted_act_on_bo(x: &TwistedElement, p: &PolyElement, vars: usize, thom: bool) -> Result<PolyElement> {
    let bo = Ambient::BO { vars };
    let mut out = PolyElement::zero(bo);
    for (k, a) in x.terms() {
        let kk = unstable::classify_iota_to_w(&PolyElement::from_monomial(Ambient::K, k.clone()), vars)?;
        let op = SteenrodElement::from(a.clone());
        let acted = if thom {
            ThomClass { vars }.apply(&op, p)
        } else {
            unstable::apply(&op, p)
        };
        out = &out + &(&kk * &acted);
    }
    Ok(out)
}

/// Smallest Stiefel-Whitney bound for the Thom check: `ψ` of the `𝒜(1)`
/// basis involves `Sq2 Sq1 ι₂`, whose image needs `w₅`.
pub const THOM_MIN_VARS: usize = 5;

/// On `u·H*(BO(n))`, the transported action `θ ⋄ x = u⁻¹θ(u·x)` equals the
/// `ψ`-twisted action `ψ(1 ⊗ θ)(x)`, and `φ(θ)(u·x) = u·θ(x)`, for every
/// basis element `θ` of `𝒜(1)` and every monomial `x` of degree at most
/// `max_degree`. Requires at least `max(max_degree, THOM_MIN_VARS)`
/// variables.
pub fn check_thom_twist(max_degree: usize, num_vars: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let needed = max_degree.max(THOM_MIN_VARS);
    if num_vars < needed {
        return Err(Error::VariableBoundTooSmall { needed, have: num_vars });
    }
    let bo = Ambient::BO { vars: num_vars };
    let thom = ThomClass { vars: num_vars };
    let one = PolyElement::one(bo);
    let w = |i| PolyElement::generator(bo, UGenerator::SW(i)).expect("index within bound");
    let mut ledger = Vec::new();

    let sq1u = thom.sq(1, &one);
    ledger.push(LedgerEntry::new(1, "Sq1 u = w1 u", sq1u.to_string(), "w1", sq1u == w(1)));
    let lhs = &(&thom.sq(2, &one) + &(&w(1) * &thom.sq(1, &one))) + &(&w(1).square() + &w(2));
    ledger.push(LedgerEntry::new(
        2,
        "Sq2 u + w1 Sq1 u + (w1^2 + w2) u = 0",
        lhs.to_string(),
        "0",
        lhs.is_zero(),
    ));
    for i in [1u16, 2] {
        let v = twisted_act_on_bo(&twisted::phi_generator(i), &one, num_vars, true)?;
        ledger.push(LedgerEntry::new(i as usize, format!("phi(Sq{i}) u = 0"), v.to_string(), "0", v.is_zero()));
    }

    let ops: Vec<(String, SteenrodElement, TwistedElement, TwistedElement)> = a1()
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.degree > 0)
        .map(|(i, b)| {
            let psi_b = twisted::psi_basis(i).clone();
            (b.element.to_string(), b.element.clone(), psi_b, phi_basis(i).clone())
        })
        .collect();
    for d in 0..=max_degree {
        let monos = unstable::monomials(bo, d);
        let mut agreeing = 0u64;
        let mut first_failure = None;
        for m in &monos {
            let x = PolyElement::from_monomial(bo, m.clone());
            let mut ok = true;
            for (name, theta, psi_theta, phi_theta) in &ops {
                let transported = thom.apply(theta, &x);
                let twisted_side = twisted_act_on_bo(psi_theta, &x, num_vars, false)?;
                let plain = unstable::apply(theta, &x);
                let phi_side = twisted_act_on_bo(phi_theta, &x, num_vars, true)?;
                if transported != twisted_side || phi_side != plain {
                    ok = false;
                    first_failure.get_or_insert_with(|| format!("theta = {name}, x = {m}: {transported} vs {twisted_side}"));
                }
            }
            if ok {
                agreeing += 1;
            }
        }
        let mut e = LedgerEntry::counts(d, monos.len() as u64, agreeing);
        if let Some(f) = first_failure {
            e = e.with_detail(f);
        }
        ledger.push(e);
    }
    let details = vec![format!(
        "operations: {}; {} Stiefel-Whitney variables",
        ops.iter().map(|o| o.0.clone()).collect::<Vec<_>>().join(", "),
        num_vars
    )];
    Ok(CheckReport::finish("thom", max_degree, ledger, details, start))
}

// ---------------------------------------------------------------------------
// Census

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CensusKind {
    TrivialQuot,
    JokerQuot,
    Free,
}

/// One summand of the splitting of `H*(MO)` over `𝒜̲`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub j: Vec<usize>,
    pub n_j: usize,
    pub kind: CensusKind,
    pub multiplicity: u64,
}

/// `4n` for even `n`, `4n - 2` for odd `n`.
pub fn shift_degree(n: usize) -> usize {
    if n % 2 == 0 {
        4 * n
    } else {
        4 * n - 2
    }
}

/// Non-decreasing sequences with parts at least 2 and shift at most
/// `max_degree`, including the empty one.
pub fn census_partitions(max_degree: usize) -> Vec<Vec<usize>> {
    fn go(min_part: usize, total: usize, prefix: &mut Vec<usize>, limit: usize, out: &mut Vec<Vec<usize>>) {
        if shift_degree(total) <= limit {
            out.push(prefix.clone());
        }
        let mut p = min_part;
        while shift_degree(total + p) <= limit || shift_degree(total + p + 1) <= limit {
            prefix.push(p);
            go(p, total + p, prefix, limit, out);
            prefix.pop();
            p += 1;
        }
    }
    let mut out = Vec::new();
    go(2, 0, &mut Vec::new(), max_degree, &mut out);
    out.sort_by_key(|j| (shift_degree(j.iter().sum()), j.clone()));
    out
}

struct Ledger {
    residual_before_free: PoincareSeries,
    multiplicities: Vec<u64>,
}

fn solve_ledger(
    total: &PoincareSeries,
    quotients: &[(usize, PoincareSeries)],
    free: &PoincareSeries,
    max_degree: usize,
) -> Result<Ledger> {
    let mut residual = total.truncate(max_degree);
    for (shift, series) in quotients {
        residual = residual.difference(&series.truncate(max_degree).shift(*shift))?;
    }
    let before = residual.clone();
    let mut multiplicities = vec![0u64; max_degree + 1];
    for d in 0..=max_degree {
        let m = residual.get(d);
        if m > 0 {
            multiplicities[d] = m;
            residual = residual.difference(&free.truncate(max_degree).shift(d).scale(m))?;
        }
    }
    Ok(Ledger {
        residual_before_free: before,
        multiplicities,
    })
}

/// Splits `PS(H*(MO))` into shifted twisted quotients indexed by `J` plus
/// free `𝒜̲`-summands, and cross-checks against the splitting of
/// `PS(H*(MSpin))` over `𝒜`.
pub fn abp_census(max_degree: usize) -> Result<(Vec<CensusEntry>, CheckReport)> {
    let start = Instant::now();
    if max_degree > BSPIN_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            requested: max_degree,
            limit: BSPIN_MAX_DEGREE,
        });
    }
    let js = census_partitions(max_degree);
    let tw_trivial = twisted_trivial_quotient(max_degree)?.poincare();
    let tw_joker = twisted_joker_quotient(max_degree)?.poincare();
    let pl_trivial = plain_trivial_quotient(max_degree)?.poincare();
    let pl_joker = plain_joker_quotient(max_degree)?.poincare();

    let mut entries = Vec::new();
    let mut tw_quotients = Vec::new();
    let mut pl_quotients = Vec::new();
    for j in &js {
        let n: usize = j.iter().sum();
        let n_j = shift_degree(n);
        let (kind, tw, pl) = if n % 2 == 0 {
            (CensusKind::TrivialQuot, &tw_trivial, &pl_trivial)
        } else {
            (CensusKind::JokerQuot, &tw_joker, &pl_joker)
        };
        tw_quotients.push((n_j, tw.clone()));
        pl_quotients.push((n_j, pl.clone()));
        entries.push(CensusEntry {
            j: j.clone(),
            n_j,
            kind,
            multiplicity: 1,
        });
    }

    let bo = unstable::dimension_series(Ambient::BO { vars: max_degree.max(1) }, max_degree);
    let bspin = unstable::bspin_series(max_degree)?;
    let twisted_free = twisted::dimension_series(TwistedSubalgebraId::FullTwisted, max_degree);
    let plain_free = steenrod::dimension_series(AlgebraId::FullA, max_degree);
    let tw = solve_ledger(&bo, &tw_quotients, &twisted_free, max_degree)?;
    let pl = solve_ledger(&bspin, &pl_quotients, &plain_free, max_degree)?;
    let lifted = pl.residual_before_free.product(&k_series(max_degree));

    let mut ledger = Vec::new();
    for d in 0..=max_degree {
        let agree = tw.multiplicities[d] == pl.multiplicities[d]
            && tw.residual_before_free.get(d) == lifted.get(d);
        ledger.push(
            LedgerEntry {
                agree,
                ..LedgerEntry::counts(d, tw.multiplicities[d], pl.multiplicities[d])
            }
            .with_detail(format!(
                "residual {} vs untwisted residual x PS(H*(K)) {}",
                tw.residual_before_free.get(d),
                lifted.get(d)
            )),
        );
    }
    for (d, &m) in tw.multiplicities.iter().enumerate() {
        if m > 0 {
            entries.push(CensusEntry {
                j: Vec::new(),
                n_j: d,
                kind: CensusKind::Free,
                multiplicity: m,
            });
        }
    }
    let details = entries
        .iter()
        .map(|e| format!("{:?} J = {:?}, shift {}, multiplicity {}", e.kind, e.j, e.n_j, e.multiplicity))
        .collect();
    Ok((entries, CheckReport::finish("census", max_degree, ledger, details, start)))
}

// ---------------------------------------------------------------------------
// Exploration

/// Computes the quotients of `𝒜̲(1)` and of `𝒜̲` by `φ(Sq2)` and by
/// `φ(Sq1), φ(Sq5)`, next to the candidate series `PS(𝒜/𝒜Sq2) × PS(H*(K))`
/// and `PS(𝒜/𝒜(Sq1, Sq5)) × PS(H*(K))`. No verdict is given.
pub fn explore_conjecture(max_degree: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let ks = k_series(max_degree);
    let target_sq2 = realize(&ModulePresentation::cyclic(FullA, "g", 0, vec![sq(2)])?, max_degree)?
        .poincare()
        .product(&ks);
    let target_sq15 = realize(&ModulePresentation::cyclic(FullA, "g", 0, vec![sq(1), sq(5)])?, max_degree)?
        .poincare()
        .product(&ks);
    let phi2 = phi(&sq(2))?;
    let small = realize(&ModulePresentation::cyclic(TwistedA1, "g", 0, vec![phi2.clone()])?, max_degree)?.poincare();
    let full = realize(&ModulePresentation::cyclic(Twisted, "g", 0, vec![phi2])?, max_degree)?.poincare();

    let mut ledger = Vec::new();
    for d in 0..=max_degree {
        ledger.push(LedgerEntry::new(
            d,
            "A(1)-twisted / phi(Sq2) vs PS(A/A Sq2) x PS(H*(K))",
            small.get(d),
            target_sq2.get(d),
            small.get(d) == target_sq2.get(d),
        ));
        ledger.push(LedgerEntry::new(
            d,
            "twisted / phi(Sq2) vs PS(A/A Sq2) x PS(H*(K))",
            full.get(d),
            target_sq2.get(d),
            full.get(d) == target_sq2.get(d),
        ));
    }
    let sq5_in_a1 = a1().contains(&sq(5));
    let mut details = vec![
        format!("A(1)-twisted / phi(Sq2): {small}"),
        format!("twisted / phi(Sq2): {full}"),
        format!("candidate PS(A/A Sq2) x PS(H*(K)): {target_sq2}"),
        format!("candidate PS(A/A(Sq1,Sq5)) x PS(H*(K)): {target_sq15}"),
    ];
    if !sq5_in_a1 {
        details.push("A(1)-twisted / phi(Sq1, Sq5): relation leaves subalgebra (Sq5 is not in A(1))".into());
        details.push("twisted / phi(Sq1, Sq5): phi is undefined outside A(1), quotient not formed".into());
    }
    let mut report = CheckReport::finish("conjecture", max_degree, ledger, details, start);
    report.status = Status::Info;
    Ok(report)
}

/// The checks run by `verify all`, sorted by name.
pub const CHECK_NAMES: [&str; 10] = [
    "appendix",
    "census",
    "commutation",
    "freeness",
    "hopf",
    "inverse",
    "k2o",
    "k2o2",
    "sq3kappa",
    "thom",
];

/// Runs a named check. `vars` defaults to the larger of `max_degree` and
/// [`THOM_MIN_VARS`] where a Stiefel-Whitney bound is needed.
pub fn run_check(name: &str, max_degree: usize, vars: Option<usize>) -> Result<CheckReport> {
    Ok(match name {
        "appendix" => check_appendix(),
        "hopf" => check_hopf(),
        "inverse" => check_inverse(max_degree),
        "commutation" => check_commutation(max_degree),
        "freeness" => check_freeness(max_degree)?,
        "k2o" => check_k2o(max_degree)?,
        "k2o2" => check_k2o2(max_degree)?,
        "sq3kappa" => check_sq3_kappa10()?,
        "thom" => check_thom_twist(max_degree, vars.unwrap_or(max_degree.max(THOM_MIN_VARS)))?,
        "census" => abp_census(max_degree)?.1,
        "conjecture" => explore_conjecture(max_degree)?,
        other => return Err(Error::UnknownCheck(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_degrees() {
        assert_eq!(shift_degree(0), 0);
        assert_eq!(shift_degree(2), 8);
        assert_eq!(shift_degree(3), 10);
    }

    #[test]
    fn partitions_through_twenty() {
        let js = census_partitions(20);
        assert_eq!(
            js,
            vec![
                vec![],
                vec![2],
                vec![3],
                vec![2, 2],
                vec![4],
                vec![2, 3],
                vec![5],
            ]
        );
    }

    #[test]
    fn small_checks_pass() {
        assert!(check_appendix().passed());
        assert!(check_commutation(3).passed());
        assert!(check_inverse(4).passed());
        assert!(check_freeness(6).unwrap().passed());
        assert!(check_k2o(6).unwrap().passed());
        assert!(check_k2o2(6).unwrap().passed());
        assert!(check_thom_twist(4, 5).unwrap().passed());
    }

    #[test]
    fn unknown_check_is_an_error() {
        assert!(run_check("nope", 4, None).is_err());
    }
}
