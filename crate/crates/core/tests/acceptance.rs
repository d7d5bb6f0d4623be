//! Acceptance gate: one PASS/FAIL line per criterion, exits nonzero if any
//! criterion fails. Time limits are wall-clock bounds on an optimized build.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tsteenrod::algebra::{FullA, Twisted, A1};
use tsteenrod::fpmod::{realize, GradedModule, ModulePresentation};
use tsteenrod::lincomb::F2Sum;
use tsteenrod::steenrod::{self, AdmissibleMonomial, AlgebraId, SqWord, SteenrodElement};
use tsteenrod::theorems::{self, CheckReport};
use tsteenrod::twisted::{self, TwistedElement, TwistedSubalgebraId};
use tsteenrod::unstable::{self, Ambient, PolyElement};

const APPENDIX_LIMIT: Duration = Duration::from_secs(1);
const HOPF_LIMIT: Duration = Duration::from_secs(5);
const FREENESS_LIMIT: Duration = Duration::from_secs(60);
const K2O_LIMIT: Duration = Duration::from_secs(60);
const CENSUS_LIMIT: Duration = Duration::from_secs(300);
const SUITE_LIMIT: Duration = Duration::from_secs(600);

const INVERSE_DEGREE: usize = 20;
const COMMUTATION_DEGREE: usize = 10;
const FREENESS_DEGREE: usize = 24;
const K2O_DEGREE: usize = 20;
const THOM_DEGREE: usize = 12;
const THOM_VARS: usize = 12;
const CENSUS_DEGREE: usize = 20;
const ORACLE_DEGREE: usize = 20;

const SAMPLES: usize = 200;
const SEED: u64 = 0x5eed_2024;

struct Gate {
    failures: usize,
}

impl Gate {
    fn record(&mut self, index: usize, name: &str, ok: bool, note: String) {
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {index:>2} {name}: {note}");
        if !ok {
            self.failures += 1;
        }
    }

    fn report(&mut self, index: usize, name: &str, report: tsteenrod::Result<CheckReport>, limit: Option<Duration>) {
        match report {
            Ok(r) => {
                let in_time = limit.map_or(true, |l| Duration::from_millis(r.ms) < l);
                let bad = r.ledger.iter().filter(|e| !e.agree).count();
                let mut note = format!("{} ledger entries, {bad} disagreeing, {} ms", r.ledger.len(), r.ms);
                if let Some(l) = limit {
                    note.push_str(&format!(" (limit {} ms)", l.as_millis()));
                }
                if !r.passed() {
                    eprintln!("{}", r.render_text());
                }
                self.record(index, name, r.passed() && in_time, note);
            }
            Err(e) => self.record(index, name, false, format!("error: {e}")),
        }
    }
}

/// Count of monomials in the dual polynomial algebra on `ξ_i`, `|ξ_i| = 2^i - 1`.
fn dual_steenrod_series(max_degree: usize) -> Vec<u64> {
    let mut dims = vec![0u64; max_degree + 1];
    dims[0] = 1;
    let mut g = 1usize;
    while g <= max_degree {
        for d in g..=max_degree {
            dims[d] += dims[d - g];
        }
        g = 2 * g + 1;
    }
    dims
}

fn oracle_suites() -> (bool, String) {
    let a1 = steenrod::dimension_series(AlgebraId::A1, 8);
    let mut dual_a1 = vec![0u64; 9];
    for i in 0..=3 {
        for j in [0, 3] {
            dual_a1[i + j] += 1;
        }
    }
    let a1_ok = a1.dims() == dual_a1.as_slice() && a1.dims()[..7] == [1, 1, 1, 2, 1, 1, 1];

    let a = steenrod::dimension_series(AlgebraId::FullA, ORACLE_DEGREE);
    let a_ok = a.dims() == dual_steenrod_series(ORACLE_DEGREE).as_slice();

    let joker = ModulePresentation::cyclic(A1, "j", 0, vec![SteenrodElement::sq(3)]).expect("valid");
    let joker = realize(&joker, 8).expect("realizes");
    let joker_ok = joker.poincare().dims() == [1, 1, 1, 1, 1, 0, 0, 0, 0];
    (
        a1_ok && a_ok && joker_ok,
        format!("A(1) {a1_ok}, A through {ORACLE_DEGREE} {a_ok}, joker {joker_ok}"),
    )
}

fn random_admissible(rng: &mut StdRng, max_degree: usize) -> AdmissibleMonomial {
    loop {
        let d = rng.gen_range(0..=max_degree);
        let basis = steenrod::admissible_basis(d);
        if !basis.is_empty() {
            return basis[rng.gen_range(0..basis.len())].clone();
        }
    }
}

fn triple_from_left(t: &steenrod::SteenrodTensor) -> F2Sum<(AdmissibleMonomial, AdmissibleMonomial, AdmissibleMonomial)> {
    t.iter()
        .flat_map(|(x, y)| {
            steenrod::coproduct(&x.clone().into())
                .into_terms()
                .into_iter()
                .map(move |(p, q)| (p, q, y.clone()))
        })
        .collect()
}

fn triple_from_right(t: &steenrod::SteenrodTensor) -> F2Sum<(AdmissibleMonomial, AdmissibleMonomial, AdmissibleMonomial)> {
    t.iter()
        .flat_map(|(x, y)| {
            steenrod::coproduct(&y.clone().into())
                .into_terms()
                .into_iter()
                .map(move |(p, q)| (x.clone(), p, q))
        })
        .collect()
}

fn structural_suites(rng: &mut StdRng) -> (bool, String) {
    let mut failures = Vec::new();

    for _ in 0..SAMPLES {
        let len = rng.gen_range(1..=4);
        let word: Vec<u16> = (0..len).map(|_| rng.gen_range(1..=6)).collect();
        let w = SqWord::new(word.clone()).expect("positive exponents");
        let normal = steenrod::adem_normalize(&w);
        let sequential = word
            .iter()
            .fold(SteenrodElement::one(), |acc, &i| steenrod::multiply(&acc, &SteenrodElement::sq(i)));
        let degree_ok = normal.terms().iter().all(|m| m.degree() == w.degree());
        let admissible_ok = normal
            .terms()
            .iter()
            .all(|m| m.exponents().windows(2).all(|p| p[0] >= 2 * p[1]));
        if normal != sequential || !degree_ok || !admissible_ok {
            failures.push(format!("Adem normal form of {word:?}"));
        }
    }

    for _ in 0..SAMPLES {
        let [a, b, c]: [SteenrodElement; 3] = std::array::from_fn(|_| random_admissible(rng, 8).into());
        let left = steenrod::multiply(&steenrod::multiply(&a, &b), &c);
        let right = steenrod::multiply(&a, &steenrod::multiply(&b, &c));
        if left != right {
            failures.push(format!("associativity on {a}, {b}, {c}"));
        }
        let delta = steenrod::coproduct(&a);
        if triple_from_left(&delta) != triple_from_right(&delta) {
            failures.push(format!("coassociativity on {a}"));
        }
        let lhs = steenrod::coproduct(&steenrod::multiply(&a, &b));
        let rhs = steenrod::tensor_multiply(&steenrod::coproduct(&a), &steenrod::coproduct(&b));
        if lhs != rhs {
            failures.push(format!("coproduct multiplicative on {a}, {b}"));
        }
    }

    for _ in 0..SAMPLES / 4 {
        let basis = |rng: &mut StdRng| {
            let d = rng.gen_range(0..=4);
            let b = twisted::basis(TwistedSubalgebraId::FullTwisted, d);
            b[rng.gen_range(0..b.len())].clone()
        };
        let (x, y, z): (TwistedElement, TwistedElement, TwistedElement) = (basis(rng), basis(rng), basis(rng));
        if &(&x * &y) * &z != &x * &(&y * &z) {
            failures.push(format!("twisted associativity on {x}, {y}, {z}"));
        }
    }

    for ambient in [Ambient::K, Ambient::BO { vars: 6 }] {
        for d in 1..=6 {
            for m in unstable::monomials(ambient, d) {
                let x = PolyElement::from_monomial(ambient, m);
                let top = unstable::sq_action(d as u16, &x);
                let above = unstable::sq_action(d as u16 + 1, &x);
                let zeroth = unstable::sq_action(0, &x);
                if top != x.square() || !above.is_zero() || zeroth != x {
                    failures.push(format!("unstable axioms on {x}"));
                }
            }
        }
    }

    let mut sound = Vec::new();
    let sq = SteenrodElement::sq;
    sound.push(realize(&ModulePresentation::cyclic(A1, "g", 0, vec![sq(3)]).unwrap(), 8).unwrap().relations_sound());
    sound.push(realize(&ModulePresentation::cyclic(A1, "g", 0, vec![sq(1), sq(2)]).unwrap(), 8).unwrap().relations_sound());
    sound.push(realize(&ModulePresentation::cyclic(FullA, "g", 0, vec![sq(2)]).unwrap(), 16).unwrap().relations_sound());
    sound.push(realize(&ModulePresentation::cyclic(FullA, "g", 0, vec![sq(1), sq(5)]).unwrap(), 16).unwrap().relations_sound());
    sound.push(theorems::plain_trivial_quotient(20).and_then(|m| m.relations_sound()));
    sound.push(theorems::plain_joker_quotient(20).and_then(|m| m.relations_sound()));
    sound.push(theorems::twisted_trivial_quotient(12).and_then(|m| m.relations_sound()));
    sound.push(theorems::twisted_joker_quotient(12).and_then(|m| m.relations_sound()));
    sound.push(
        realize(&ModulePresentation::cyclic(Twisted, "g", 0, vec![twisted::phi(&sq(2)).unwrap()]).unwrap(), 10)
            .unwrap()
            .relations_sound(),
    );
    let unsound = sound.iter().filter(|r| !matches!(r, Ok(true))).count();
    if unsound > 0 {
        failures.push(format!("{unsound} realizations violate their relations"));
    }

    for f in &failures {
        eprintln!("structural failure: {f}");
    }
    (
        failures.is_empty(),
        format!("{} failures over {SAMPLES} samples per property, {} realizations", failures.len(), sound.len()),
    )
}

fn main() -> ExitCode {
    let suite_start = Instant::now();
    let mut gate = Gate { failures: 0 };

    gate.report(1, "appendix", Ok(theorems::check_appendix()), Some(APPENDIX_LIMIT));
    gate.report(2, "hopf", Ok(theorems::check_hopf()), Some(HOPF_LIMIT));
    gate.report(3, "inverse", Ok(theorems::check_inverse(INVERSE_DEGREE)), None);
    gate.report(4, "commutation", Ok(theorems::check_commutation(COMMUTATION_DEGREE)), None);
    gate.report(5, "freeness", theorems::check_freeness(FREENESS_DEGREE), Some(FREENESS_LIMIT));
    gate.report(6, "k2o", theorems::check_k2o(K2O_DEGREE), Some(K2O_LIMIT));

    let k2o2 = theorems::check_k2o2(K2O_DEGREE);
    let sq3 = theorems::check_sq3_kappa10();
    match (k2o2, sq3) {
        (Ok(a), Ok(b)) => {
            let ok = a.passed() && b.passed();
            if !ok {
                eprintln!("{}\n{}", a.render_text(), b.render_text());
            }
            gate.record(
                7,
                "k2o2 and sq3kappa",
                ok,
                format!("{} + {} ledger entries, {} ms", a.ledger.len(), b.ledger.len(), a.ms + b.ms),
            );
        }
        (a, b) => gate.record(7, "k2o2 and sq3kappa", false, format!("{:?} / {:?}", a.err(), b.err())),
    }

    gate.report(8, "thom", theorems::check_thom_twist(THOM_DEGREE, THOM_VARS), None);
    gate.report(9, "census", theorems::abp_census(CENSUS_DEGREE).map(|(_, r)| r), Some(CENSUS_LIMIT));

    let (ok, note) = oracle_suites();
    gate.record(10, "oracle suites", ok, note);

    let mut rng = StdRng::seed_from_u64(SEED);
    let (ok, note) = structural_suites(&mut rng);
    let elapsed = suite_start.elapsed();
    gate.record(
        11,
        "structural suites",
        ok && elapsed < SUITE_LIMIT,
        format!("{note}; whole gate {} ms (limit {} ms)", elapsed.as_millis(), SUITE_LIMIT.as_millis()),
    );

    if gate.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
