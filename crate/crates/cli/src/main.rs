//! `mwcalc`: a calculator for Milnor-Witt K-theory over finite fields.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mwk::parse::{
    parse_bundle, parse_cochain, parse_elem, parse_field, parse_place, parse_poly,
    parse_scheme, parse_twisted,
};
use mwk::residue::{residue, residue_twisted, residue_twisted_with};
use mwk::rost_schmid::{
    chow_comparison, chow_degree, differential, euler_class_line, h0_membership,
    pushforward_point, Cochain, Scheme,
};
use mwk::suites::{reciprocity_run, run_suite, Report, SUITES};
use mwk::transfer::{canonical_transfer, geometric_transfer, scharlau_transfer};
use mwk::{normal_form, Error, Field, TwistedMw};

const SCHEMA: &str = "mwcalc/1";

#[derive(Parser)]
#[command(name = "mwcalc", version, about = "Exact Milnor-Witt K-theory calculator")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct FieldArg {
    /// Owner field: F5, F9, F9=F3[x]/(x^2+1), F5(t) or R.
    #[arg(long, env = "MWCALC_FIELD")]
    field: String,
}

#[derive(Args)]
struct SeedArg {
    /// Seed for randomized runs.
    #[arg(long, env = "MWCALC_SEED", default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct CurveArgs {
    /// A1 or P1.
    #[arg(long, default_value = "P1")]
    scheme: String,
    /// O(d), omega or triv (P1 only).
    #[arg(long, default_value = "triv", allow_hyphen_values = true)]
    twist: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransferKind {
    Geometric,
    Canonical,
    Scharlau,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexOp {
    /// The differential.
    D,
    /// Reduction modulo eta, pointwise.
    Chow,
    /// The constant a closed codimension-0 cochain on A1 comes from.
    H0,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and print an expression (`expr` or `expr @ word`).
    Eval {
        #[command(flatten)]
        field: FieldArg,
        /// Apply the rewriting pass.
        #[arg(long)]
        simplify: bool,
        /// Print the normal form (finite fields and R).
        #[arg(long, conflicts_with = "simplify")]
        normal: bool,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Residue at a place of F_q(t), twisted by the conormal line.
    Residue {
        #[command(flatten)]
        field: FieldArg,
        /// A monic irreducible polynomial in t, or inf.
        #[arg(long)]
        at: String,
        /// Uniformizer; defaults to the place polynomial or -1/t.
        #[arg(long, allow_hyphen_values = true)]
        pi: Option<String>,
        /// Print the untwisted residue for the chosen uniformizer.
        #[arg(long)]
        plain: bool,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Transfer from the residue field F_q[s]/(p) down to F_q.
    Transfer {
        #[command(flatten)]
        field: FieldArg,
        /// Monic irreducible p in t; expressions use s for its root.
        #[arg(long)]
        ext: String,
        #[arg(long, value_enum, default_value_t = TransferKind::Geometric)]
        kind: TransferKind,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Milnor-Witt degree of a codimension-1 cochain.
    Degree {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        curve: CurveArgs,
        cochain: String,
    },
    /// Operations on Rost-Schmid cochains `{point: expr; ...}`.
    Complex {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(value_enum)]
        op: ComplexOp,
        cochain: String,
    },
    /// Euler class of O(d) on P1 from a section.
    Euler {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        section: String,
    },
    /// Randomized reciprocity check over F_q(t).
    Reciprocity {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Run a named property suite.
    Suite {
        /// Suite name; `list` prints the available names.
        name: String,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Serialize)]
struct JsonPoint {
    point: String,
    expr: String,
    #[serde(rename = "twistWord")]
    twist_word: String,
}

#[derive(Serialize)]
struct JsonCochain {
    schema: &'static str,
    scheme: String,
    twist: String,
    codim: u32,
    points: Vec<JsonPoint>,
}

#[derive(Serialize)]
struct JsonValue {
    schema: &'static str,
    field: String,
    expr: String,
    #[serde(rename = "twistWord")]
    twist_word: String,
}

#[derive(Serialize)]
struct JsonReport {
    schema: &'static str,
    suite: String,
    pass: bool,
    passed: usize,
    total: usize,
    counterexamples: Vec<String>,
    notes: Vec<String>,
}

/// Rendered output plus whether a property failed.
struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: false }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn value_out(format: Format, v: &TwistedMw) -> mwk::Result<Output> {
    let n = v.normalized()?;
    Ok(Output::ok(match format {
        Format::Text => n.to_string(),
        Format::Json => json(&JsonValue {
            schema: SCHEMA,
            field: n.field().to_string(),
            expr: n.expr().to_string(),
            twist_word: n.line().to_string(),
        }),
    }))
}

fn cochain_out(format: Format, c: &Cochain) -> mwk::Result<Output> {
    Ok(Output::ok(match format {
        Format::Text => c.to_string(),
        Format::Json => {
            let ft = c.generic_field()?;
            let mut points = Vec::new();
            for (pt, v) in &c.values {
                let n = v.normalized()?;
                points.push(JsonPoint {
                    point: pt.name(&ft)?,
                    expr: n.expr().to_string(),
                    twist_word: n.line().to_string(),
                });
            }
            json(&JsonCochain {
                schema: SCHEMA,
                scheme: c.scheme.to_string(),
                twist: format!("O({})", c.twist),
                codim: c.codim,
                points,
            })
        }
    }))
}

fn report_out(format: Format, r: &Report) -> Output {
    let text = match format {
        Format::Text => r.to_string(),
        Format::Json => json(&JsonReport {
            schema: SCHEMA,
            suite: r.name.clone(),
            pass: r.ok(),
            passed: r.passed,
            total: r.total,
            counterexamples: r.failures.clone(),
            notes: r.notes.clone(),
        }),
    };
    Output { text, failed: !r.ok() }
}

fn curve(field: &Field, c: &CurveArgs) -> mwk::Result<(Scheme, i64)> {
    if !field.is_finite() {
        return Err(Error::Unsupported("cochains live on curves over a finite field".into()));
    }
    let scheme = parse_scheme(&c.scheme)?;
    let twist = parse_bundle(&c.twist)?;
    if twist != 0 && scheme != Scheme::ProjLine {
        return Err(Error::Unsupported("O(d) twists live on P1".into()));
    }
    Ok((scheme, twist))
}

fn run(cli: Cli) -> mwk::Result<Output> {
    let format = cli.format;
    match cli.command {
        Command::Eval { field, simplify, normal, expr } => {
            let f = parse_field(&field.field)?;
            let x = parse_twisted(&f, &expr)?;
            let x = if normal {
                x.map_expr(normal_form)?
            } else if simplify {
                x.map_expr(|e| Ok(e.simplify()))?
            } else {
                x
            };
            value_out(format, &x)
        }
        Command::Residue { field, at, pi, plain, expr } => {
            let f = parse_field(&field.field)?;
            let v = parse_place(&f, &at)?;
            let x = parse_twisted(&f, &expr)?;
            let r = match (&pi, plain) {
                (None, false) => residue_twisted(&x, &v)?,
                (Some(p), false) => residue_twisted_with(&x, &v, &parse_elem(&f, p)?)?,
                (p, true) => {
                    let p = match p {
                        Some(p) => parse_elem(&f, p)?,
                        None => f.uniformizer(&v)?,
                    };
                    let n = x.normalized()?;
                    TwistedMw::untwisted(residue(n.expr(), &v, &p)?)
                }
            };
            value_out(format, &r)
        }
        Command::Transfer { field, ext, kind, expr } => {
            let base = parse_field(&field.field)?;
            let k = base
                .finite_field()
                .cloned()
                .ok_or_else(|| Error::Unsupported("transfers need a finite base field".into()))?;
            let p = parse_poly(&base, &ext)?;
            if p.lead() != 1 || !p.is_irreducible(&k) {
                return Err(Error::Domain("--ext must be monic irreducible".into()));
            }
            let kp = Field::Finite(k.residue_field(&p, "s")?);
            let x = parse_twisted(&kp, &expr)?;
            let out = match kind {
                TransferKind::Geometric => {
                    let n = x.normalized()?;
                    TwistedMw::new(geometric_transfer(n.expr(), &p, &base)?, n.line().clone())
                }
                TransferKind::Canonical => canonical_transfer(&x, &p, &base)?,
                TransferKind::Scharlau => {
                    let n = x.normalized()?;
                    let form = mwk::mw::mw0_to_gw(n.expr())?;
                    let s = scharlau_transfer(&form, &p, &base)?;
                    TwistedMw::new(normal_form(&mwk::mw::gw_to_mw0(&s))?, n.line().clone())
                }
            };
            value_out(format, &out)
        }
        Command::Degree { field, curve: ca, cochain } => {
            let f = parse_field(&field.field)?;
            let (scheme, twist) = curve(&f, &ca)?;
            let c = parse_cochain(scheme, &f, twist, &cochain)?;
            value_out(format, &pushforward_point(&c)?)
        }
        Command::Complex { field, curve: ca, op, cochain } => {
            let f = parse_field(&field.field)?;
            let (scheme, twist) = curve(&f, &ca)?;
            let c = parse_cochain(scheme, &f, twist, &cochain)?;
            match op {
                ComplexOp::D => cochain_out(format, &differential(&c)?),
                ComplexOp::Chow => cochain_out(format, &chow_comparison(&c)?),
                ComplexOp::H0 => match h0_membership(&c)? {
                    Some(a) => value_out(format, &TwistedMw::untwisted(a)),
                    None => Ok(Output {
                        text: match format {
                            Format::Text => "not closed".into(),
                            Format::Json => json(&serde_json::json!({"schema": SCHEMA, "closed": false})),
                        },
                        failed: true,
                    }),
                },
            }
        }
        Command::Euler { field, d, section } => {
            let f = parse_field(&field.field)?;
            let s = parse_poly(&f, &section)?;
            let e = euler_class_line(&f, d, &s)?;
            let chow = chow_degree(&e.representative)?;
            match format {
                Format::Text => Ok(Output::ok(format!(
                    "class: {}\nchow degree: {}\nmw degree: {}",
                    e.representative,
                    chow,
                    e.mw_degree.normalized()?
                ))),
                Format::Json => {
                    let rep = cochain_out(Format::Json, &e.representative)?.text;
                    let rep: serde_json::Value = serde_json::from_str(&rep).expect("own output");
                    let m = e.mw_degree.normalized()?;
                    Ok(Output::ok(json(&serde_json::json!({
                        "schema": SCHEMA,
                        "class": rep,
                        "chowDegree": chow,
                        "mwDegree": {"expr": m.expr().to_string(), "twistWord": m.line().to_string()},
                    }))))
                }
            }
        }
        Command::Reciprocity { field, samples, seed } => {
            let f = parse_field(&field.field)?;
            Ok(report_out(format, &reciprocity_run(&f, samples, seed.seed)?))
        }
        Command::Suite { name, seed } => {
            if name == "list" {
                return Ok(Output::ok(SUITES.join("\n")));
            }
            Ok(report_out(format, &run_suite(&name, seed.seed)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", out.text);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
