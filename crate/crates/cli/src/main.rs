use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use paraunitary::json::{self, DecodeError};
use paraunitary::normal_form::{factorize_lossless, multiply_out};
use paraunitary::order::{self, Cone};
use paraunitary::random::InstanceRng;
use paraunitary::{Error, GroupElement, QuadSpace};
use serde::Serialize;

/// Exact computations in pure paraunitary groups.
///
/// Payloads are JSON; rationals are strings like "-1/2". Inputs named `-`
/// are read from stdin.
#[derive(Parser)]
#[command(name = "ppu", version)]
struct Cli {
    /// Quadratic space {"n", "gram"}; defaults to the standard form.
    #[arg(long, global = true, value_name = "FILE")]
    gram: Option<PathBuf>,
    /// Seed for `random`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report paraunitarity, purity, cone and interval membership.
    Verify { file: PathBuf },
    /// The generator p_U of a subspace.
    Gen { file: PathBuf },
    /// Normal form of a paraunitary matrix with entries in k[t^-1].
    Factor { file: PathBuf },
    /// Multiply a normal form back out.
    MultiplyOut { file: PathBuf },
    /// Lattice meet of two pure elements.
    Meet { a: PathBuf, b: PathBuf },
    /// Lattice join of two pure elements.
    Join { a: PathBuf, b: PathBuf },
    /// Order relation between two pure elements.
    Compare { a: PathBuf, b: PathBuf },
    /// Kernel on V⊕ of a negative-cone element.
    Omega { file: PathBuf },
    /// t^-1 φ^-1 of a pure element.
    Complement { file: PathBuf },
    /// Product of `length` random generators.
    Random { dim: usize, length: usize },
    /// Specialize t at 1 or -1.
    Spec {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        at: i64,
        file: PathBuf,
    },
}

fn parse_point(s: &str) -> Result<i64, String> {
    match s {
        "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err("expected 1 or -1".into()),
    }
}

enum Failure {
    /// Exit 2: unreadable or malformed input, or inconsistent arguments.
    Usage(String),
    /// Exit 1: well-formed input on which the operation is undefined.
    Semantic(Error),
    /// Exit 1: a command's own output failed its postcondition.
    SelfCheck(&'static str),
}

impl From<DecodeError> for Failure {
    fn from(e: DecodeError) -> Self {
        match e {
            DecodeError::Malformed(m) => Failure::Usage(m),
            DecodeError::Invalid(e) => Failure::Semantic(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Semantic(e)
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
}

#[derive(Serialize)]
struct VerifyReport {
    paraunitary: bool,
    pure: Option<bool>,
    cone: Option<&'static str>,
    interval: Option<bool>,
}

#[derive(Serialize)]
struct CompareReport {
    relation: order::OrderRelation,
}

#[derive(Serialize)]
struct SpecReport {
    at: i64,
    matrix: json::ScalarMatrixDoc,
}

struct Outcome {
    body: String,
    code: u8,
}

impl Outcome {
    fn ok<T: Serialize>(doc: &T) -> Self {
        Outcome { body: json::to_line(doc), code: 0 }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn ensure(cond: bool, what: &'static str) -> Result<(), Failure> {
    if cond { Ok(()) } else { Err(Failure::SelfCheck(what)) }
}

fn cone_name(c: Cone) -> &'static str {
    match c {
        Cone::Positive => "positive",
        Cone::Negative => "negative",
        Cone::Identity => "identity",
        Cone::Neither => "neither",
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let space: Option<Arc<QuadSpace>> = match &cli.gram {
        Some(p) => Some(json::decode_space(&read_input(p)?)?),
        None => None,
    };
    let space = space.as_ref();
    let element = |p: &Path| -> Result<GroupElement, Failure> { Ok(json::decode_element(&read_input(p)?, space)?) };

    match &cli.command {
        Command::Verify { file } => {
            let (s, mat) = json::decode_matrix(&read_input(file)?, space)?;
            let phi = match GroupElement::new(&s, mat) {
                Ok(phi) => phi,
                Err(Error::NotParaunitary { .. }) => {
                    let report = VerifyReport { paraunitary: false, pure: None, cone: None, interval: None };
                    return Ok(Outcome { body: json::to_line(&report), code: 1 });
                }
                Err(e) => return Err(e.into()),
            };
            let pure = phi.is_pure();
            let report = VerifyReport {
                paraunitary: true,
                pure: Some(pure),
                cone: if pure { Some(cone_name(order::cone_classify(&phi)?)) } else { None },
                interval: if pure { Some(order::in_interval(&phi)?) } else { None },
            };
            Ok(Outcome::ok(&report))
        }
        Command::Gen { file } => {
            let u = json::decode_subspace(&read_input(file)?, space)?;
            let p = GroupElement::generator(&u);
            ensure(order::as_generator(&p)? == u, "generator does not recover its subspace")?;
            Ok(Outcome::ok(&json::encode_element(&p)))
        }
        Command::Factor { file } => {
            let (s, mat) = json::decode_matrix(&read_input(file)?, space)?;
            let phi = GroupElement::new(&s, mat)?;
            let nf = factorize_lossless(&phi)?;
            let verified = multiply_out(&nf)? == phi;
            let out = json::encode_normal_form(&nf, Some(verified));
            Ok(Outcome { body: json::to_line(&out), code: if verified { 0 } else { 1 } })
        }
        Command::MultiplyOut { file } => {
            let nf = json::decode_normal_form(&read_input(file)?, space)?;
            let phi = multiply_out(&nf)?;
            ensure(phi.epsilon1() == nf.tail, "value at t = 1 differs from the tail")?;
            Ok(Outcome::ok(&json::encode_element(&phi)))
        }
        Command::Meet { a, b } | Command::Join { a, b } => {
            let (x, y) = (element(a)?, element(b)?);
            let meet = matches!(cli.command, Command::Meet { .. });
            let r = if meet { order::lattice_meet(&x, &y)? } else { order::lattice_join(&x, &y)? };
            let bounded = if meet {
                order::le(&r, &x)? && order::le(&r, &y)?
            } else {
                order::le(&x, &r)? && order::le(&y, &r)?
            };
            ensure(bounded, "result is not a bound of its arguments")?;
            Ok(Outcome::ok(&json::encode_element(&r)))
        }
        Command::Compare { a, b } => {
            let (x, y) = (element(a)?, element(b)?);
            let relation = order::compare(&x, &y)?;
            use order::OrderRelation::*;
            let mirrored = match relation {
                LessEq => GreaterEq,
                GreaterEq => LessEq,
                r => r,
            };
            ensure(order::compare(&y, &x)? == mirrored, "comparison is not antisymmetric")?;
            Ok(Outcome::ok(&CompareReport { relation }))
        }
        Command::Omega { file } => {
            let phi = element(file)?;
            let m = order::omega(&phi)?;
            ensure(order::omega_inverse(&m)? == phi, "kernel does not determine the element")?;
            Ok(Outcome::ok(&json::encode_submodule(&m)))
        }
        Command::Complement { file } => {
            let phi = element(file)?;
            let c = order::interval_complement(&phi)?;
            ensure(order::interval_complement(&c)? == phi, "complement is not an involution")?;
            Ok(Outcome::ok(&json::encode_element(&c)))
        }
        Command::Random { dim, length } => {
            if *dim == 0 || *dim > json::MAX_DIM {
                return Err(Failure::Usage(format!("dimension must lie in 1..={}", json::MAX_DIM)));
            }
            if *length > json::MAX_FACTORS {
                return Err(Failure::Usage(format!("length must be at most {}", json::MAX_FACTORS)));
            }
            let s = match space {
                Some(s) if s.dim() != *dim => {
                    return Err(Failure::Usage(format!("--gram has dimension {}, requested {dim}", s.dim())))
                }
                Some(s) => Arc::clone(s),
                None => QuadSpace::standard(*dim),
            };
            let (_, phi) = InstanceRng::new(cli.seed).generator_product(&s, *length);
            ensure(phi.is_pure() && phi.degree() <= 0, "random product is not pure and negative")?;
            Ok(Outcome::ok(&json::encode_element(&phi)))
        }
        Command::Spec { at, file } => {
            let phi = element(file)?;
            let h = if *at == 1 { phi.epsilon1() } else { phi.epsilon_minus1() };
            let g = h.space().gram();
            ensure(&h.mat().transpose().mul(g).mul(h.mat()) == g, "specialization is not orthogonal")?;
            Ok(Outcome::ok(&SpecReport { at: *at, matrix: json::encode_scalar_matrix(h.mat()) }))
        }
    }
}

fn emit(cli: &Cli, body: &str) -> io::Result<()> {
    let line = format!("{body}\n");
    match &cli.output {
        Some(p) => fs::write(p, line),
        None => io::stdout().lock().write_all(line.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match run(&cli) {
        Ok(out) => match emit(&cli, &out.body) {
            Ok(()) => return ExitCode::from(out.code),
            Err(e) => (ErrorReport { error: "Io", message: e.to_string() }, 2),
        },
        Err(Failure::Usage(message)) => (ErrorReport { error: "Malformed", message }, 2),
        Err(Failure::Semantic(e)) => (ErrorReport { error: e.kind(), message: e.to_string() }, 1),
        Err(Failure::SelfCheck(what)) => (ErrorReport { error: "SelfCheckFailed", message: what.to_string() }, 1),
    };
    eprintln!("{}", json::to_line(&report));
    ExitCode::from(code)
}
