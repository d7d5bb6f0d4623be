//! `tsteenrod`: arithmetic in the Steenrod algebra and its twisted extension,
//! module realization from JSON presentations, and the verification suite.
//!
//! Exit codes: 0 on success or a passing verification, 1 when a verification
//! ledger disagrees, 2 on usage, parse or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use tsteenrod::expr::{self, ExpressionKind};
use tsteenrod::fpmod::{realize, AnyPresentation, GradedModule};
use tsteenrod::series::PoincareSeries;
use tsteenrod::steenrod::{self, AlgebraId, SteenrodElement};
use tsteenrod::theorems::{self, CheckReport, CHECK_NAMES};
use tsteenrod::twisted::{self, TwistedElement, TwistedSubalgebraId};
use tsteenrod::unstable::{self, Ambient, PolyElement};

#[derive(Parser, Debug)]
#[command(name = "tsteenrod", version, about = "Steenrod and twisted Steenrod algebra toolkit")]
struct Cli {
    /// Largest degree computed by series, realizations and checks.
    #[arg(long, global = true, default_value_t = 16)]
    max_degree: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Number of Stiefel-Whitney variables for H*(BO); defaults to the max degree.
    #[arg(long, global = true)]
    vars: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Adem normal form of a Steenrod expression.
    Adem { expr: String },
    /// Product of two expressions, in the twisted algebra if either side has `|`.
    Mul { left: String, right: String },
    /// Coproduct of a Steenrod or twisted expression.
    Coprod { expr: String },
    /// φ of an element of A(1), or φ_ext of a twisted element with --extended.
    Phi {
        expr: String,
        #[arg(long)]
        extended: bool,
    },
    /// ψ of an element of the twisted A(1).
    Psi { expr: String },
    /// Basis of an algebra in one degree.
    Basis {
        #[arg(value_enum)]
        algebra: BasisAlgebra,
        degree: usize,
    },
    /// Poincaré series through --max-degree.
    Series {
        #[arg(value_enum)]
        name: SeriesName,
    },
    /// Realizes a module presentation read from a JSON file.
    Realize {
        path: PathBuf,
        /// Include basis labels in every degree.
        #[arg(long)]
        basis: bool,
        /// Include action matrices of the algebra generators.
        #[arg(long)]
        actions: bool,
    },
    /// Runs a named verification, or all of them.
    Verify { name: String },
    /// Splits H*(MO) into twisted quotients and free summands.
    Census,
    /// Quotients by φ(Sq2) and φ(Sq1), φ(Sq5) next to candidate series.
    Conjecture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisAlgebra {
    #[value(name = "A")]
    A,
    #[value(name = "A1")]
    A1,
    #[value(name = "twisted-A")]
    TwistedA,
    #[value(name = "twisted-A1")]
    TwistedA1,
    #[value(name = "K")]
    K,
    #[value(name = "BO")]
    Bo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    #[value(name = "A")]
    A,
    #[value(name = "A1")]
    A1,
    #[value(name = "K")]
    K,
    #[value(name = "BO")]
    Bo,
    #[value(name = "BSpin")]
    BSpin,
    #[value(name = "twisted-A")]
    TwistedA,
    #[value(name = "twisted-A1")]
    TwistedA1,
    #[value(name = "ko")]
    Ko,
    #[value(name = "joker")]
    Joker,
}

/// An evaluated command-line expression.
enum Value {
    Steenrod(SteenrodElement),
    Poly(PolyElement),
    Twisted(TwistedElement),
}

impl Value {
    fn homogeneous(&self) -> bool {
        match self {
            Value::Steenrod(a) => a.components().len() <= 1,
            Value::Poly(p) => p.terms().iter().map(|m| m.degree()).collect::<std::collections::BTreeSet<_>>().len() <= 1,
            Value::Twisted(x) => x.components().len() <= 1,
        }
    }

    fn into_twisted(self) -> anyhow::Result<TwistedElement> {
        Ok(match self {
            Value::Steenrod(a) => TwistedElement::from_steenrod(&a),
            Value::Twisted(x) => x,
            Value::Poly(p) if p.ambient() == Ambient::K => TwistedElement::from_poly(&p),
            Value::Poly(_) => bail!("only polynomials in i1, i2 embed in the twisted algebra"),
        })
    }
}

/// Failure of the command itself, as opposed to a failing verification.
struct UsageError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for UsageError {
    fn from(e: E) -> Self {
        Self(e.into())
    }
}

type CmdResult = Result<bool, UsageError>;

fn evaluate(input: &str, vars: Option<usize>) -> anyhow::Result<Value> {
    let parsed = expr::parse(input).map_err(|e| anyhow!("cannot parse `{input}`: {e}"))?;
    let value = match parsed.kind() {
        ExpressionKind::Steenrod => Value::Steenrod(expr::parse_steenrod(input)?),
        ExpressionKind::Twisted => Value::Twisted(expr::parse_twisted(input)?),
        ExpressionKind::Poly => {
            let ambient = match parsed.natural_ambient() {
                Some(Ambient::BO { vars: needed }) => Ambient::BO {
                    vars: vars.unwrap_or(needed).max(needed),
                },
                Some(a) => a,
                None => bail!("`{input}` mixes i1, i2 with Stiefel-Whitney classes"),
            };
            Value::Poly(expr::parse_poly(input, ambient)?)
        }
    };
    if !value.homogeneous() {
        eprintln!("warning: `{input}` is not homogeneous");
    }
    Ok(value)
}

fn emit(format: Format, text: impl FnOnce() -> String, json: impl FnOnce() -> serde_json::Value) {
    match format {
        Format::Text => println!("{}", text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&json()).expect("values serialize")),
    }
}

fn emit_result(format: Format, op: &str, inputs: &[&str], result: String) {
    emit(format, || result.clone(), || json!({ "op": op, "inputs": inputs, "result": result }));
}

fn series_for(name: SeriesName, max: usize, vars: usize) -> anyhow::Result<PoincareSeries> {
    Ok(match name {
        SeriesName::A => steenrod::dimension_series(AlgebraId::FullA, max),
        SeriesName::A1 => steenrod::dimension_series(AlgebraId::A1, max),
        SeriesName::K => unstable::dimension_series(Ambient::K, max),
        SeriesName::Bo => unstable::dimension_series(Ambient::BO { vars }, max),
        SeriesName::BSpin => unstable::bspin_series(max)?,
        SeriesName::TwistedA => twisted::dimension_series(TwistedSubalgebraId::FullTwisted, max),
        SeriesName::TwistedA1 => twisted::dimension_series(TwistedSubalgebraId::TwistedA1, max),
        SeriesName::Ko => theorems::plain_trivial_quotient(max)?.poincare().truncate(max),
        SeriesName::Joker => realize(&theorems::joker(), max)?.poincare().truncate(max),
    })
}

fn basis_for(algebra: BasisAlgebra, degree: usize, vars: usize) -> Vec<String> {
    fn strings<T: ToString>(v: impl IntoIterator<Item = T>) -> Vec<String> {
        v.into_iter().map(|x| x.to_string()).collect()
    }
    match algebra {
        BasisAlgebra::A => strings(steenrod::basis(AlgebraId::FullA, degree)),
        BasisAlgebra::A1 => strings(steenrod::basis(AlgebraId::A1, degree)),
        BasisAlgebra::TwistedA => strings(twisted::basis(TwistedSubalgebraId::FullTwisted, degree)),
        BasisAlgebra::TwistedA1 => strings(twisted::basis(TwistedSubalgebraId::TwistedA1, degree)),
        BasisAlgebra::K => strings(unstable::monomials(Ambient::K, degree)),
        BasisAlgebra::Bo => strings(unstable::monomials(Ambient::BO { vars }, degree)),
    }
}

fn emit_report(format: Format, report: &CheckReport) {
    emit(format, || report.render_text(), || serde_json::to_value(report).expect("reports serialize"));
}

fn run(cli: &Cli) -> CmdResult {
    let max = cli.max_degree;
    let vars = cli.vars.unwrap_or(max);
    let format = cli.format;
    match &cli.command {
        Command::Adem { expr } => {
            let result = match evaluate(expr, cli.vars)? {
                Value::Steenrod(a) => a,
                _ => return Err(anyhow!("`{expr}` is not a Steenrod expression").into()),
            };
            emit_result(format, "adem", &[expr], result.to_string());
        }
        Command::Mul { left, right } => {
            let result = match (evaluate(left, cli.vars)?, evaluate(right, cli.vars)?) {
                (Value::Steenrod(a), Value::Steenrod(b)) => steenrod::multiply(&a, &b).to_string(),
                (Value::Poly(p), Value::Poly(q)) if p.ambient() == q.ambient() => (&p * &q).to_string(),
                (a, b) => twisted::multiply_twisted(&a.into_twisted()?, &b.into_twisted()?).to_string(),
            };
            emit_result(format, "mul", &[left, right], result);
        }
        Command::Coprod { expr } => {
            let result = match evaluate(expr, cli.vars)? {
                Value::Steenrod(a) => steenrod::render_tensor(&steenrod::coproduct(&a)),
                v => twisted::render_twisted_tensor(&twisted::coproduct_twisted(&v.into_twisted()?)),
            };
            emit_result(format, "coprod", &[expr], result);
        }
        Command::Phi { expr, extended } => {
            let value = evaluate(expr, cli.vars)?;
            let result = if *extended {
                twisted::phi_extended(&value.into_twisted()?)?
            } else {
                match value {
                    Value::Steenrod(a) => twisted::phi(&a)?,
                    _ => return Err(anyhow!("φ takes a Steenrod expression; use --extended for twisted input").into()),
                }
            };
            emit_result(format, if *extended { "phi-extended" } else { "phi" }, &[expr], result.to_string());
        }
        Command::Psi { expr } => {
            let result = twisted::psi(&evaluate(expr, cli.vars)?.into_twisted()?)?;
            emit_result(format, "psi", &[expr], result.to_string());
        }
        Command::Basis { algebra, degree } => {
            let basis = basis_for(*algebra, *degree, vars);
            let name = algebra.to_possible_value().expect("named").get_name().to_string();
            emit(
                format,
                || basis.join("\n"),
                || json!({ "algebra": name, "degree": degree, "dimension": basis.len(), "basis": basis }),
            );
        }
        Command::Series { name } => {
            let series = series_for(*name, max, vars)?;
            let label = name.to_possible_value().expect("named").get_name().to_string();
            emit(
                format,
                || series.to_string(),
                || json!({ "series": label, "max_degree": max, "dims": series.dims() }),
            );
        }
        Command::Realize { path, basis, actions } => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let presentation = AnyPresentation::from_json_str(&text)?;
            let report = presentation.realize_report(max, *basis, *actions)?;
            emit(
                format,
                || {
                    let mut out = format!(
                        "{} module through degree {}: {}",
                        report.algebra,
                        report.max_degree,
                        PoincareSeries::new(report.dims.clone())
                    );
                    if let Some(b) = &report.basis {
                        for (d, labels) in b.iter().enumerate().filter(|(_, l)| !l.is_empty()) {
                            out.push_str(&format!("\n  degree {d}: {}", labels.join(", ")));
                        }
                    }
                    out
                },
                || serde_json::to_value(&report).expect("reports serialize"),
            );
        }
        Command::Verify { name } => {
            let names: Vec<&str> = if name == "all" {
                CHECK_NAMES.to_vec()
            } else if CHECK_NAMES.contains(&name.as_str()) {
                vec![name.as_str()]
            } else {
                return Err(anyhow!("unknown check `{name}`; expected one of {} or all", CHECK_NAMES.join(", ")).into());
            };
            let reports = std::thread::scope(|s| {
                let handles: Vec<_> = names
                    .iter()
                    .map(|n| s.spawn(move || theorems::run_check(n, max, cli.vars)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("check threads do not panic"))
                    .collect::<Result<Vec<_>, _>>()
            })?;
            let passed = reports.iter().all(CheckReport::passed);
            match format {
                Format::Text => {
                    for r in &reports {
                        print!("{}", r.render_text());
                    }
                }
                Format::Json if name == "all" => emit(format, String::new, || json!(reports)),
                Format::Json => emit_report(format, &reports[0]),
            }
            return Ok(passed);
        }
        Command::Census => {
            let (entries, report) = theorems::abp_census(max)?;
            emit(
                format,
                || report.render_text(),
                || json!({ "entries": entries, "report": report }),
            );
            return Ok(report.passed());
        }
        Command::Conjecture => {
            let report = theorems::explore_conjecture(max)?;
            emit_report(format, &report);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
