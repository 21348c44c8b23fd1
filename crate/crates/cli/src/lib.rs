//! Command-line front end for `whittaker-core`: catalog data, JSON formats,
//! the Bernstein term parser and the verification sweeps.

pub mod catalog;
pub mod format;
pub mod terms;
pub mod verify;

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use whittaker_core::characters::{dimension, tensor_coeffs, weyl_character};
use whittaker_core::whittaker::{cs_value, general_cs_o_value, general_cs_value, specialize};
use whittaker_core::{GroupAlgebraElement, HeckeAlgebra, LatticePoint, RootDatum, SatakeSpecialization};

use format::{element_json, parse_rational, point_json, rational_to_string, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] whittaker_core::Error),
}

#[derive(Parser, Debug)]
#[command(name = "whittaker", version, about = "Exact spherical Whittaker computations on root data")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// `catalog:NAME`, `file:PATH` or a bare catalog name.
    #[arg(long, global = true)]
    datum: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Multiplicity override `k=v` for positive root index `k`.
    #[arg(long = "mult", global = true, value_parser = parse_mult)]
    mult: Vec<(usize, u32)>,
    /// Record wall-clock time in verification reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots, coroots, Weyl group order and the dual datum.
    Datum,
    /// Weyl character of the dual-group representation `V_λ`.
    Char {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        lambda: LatticePoint,
    },
    /// Tensor-product coefficients `c_{λ,μ}^η`.
    Tensor {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        lambda: LatticePoint,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        mu: LatticePoint,
    },
    #[command(subcommand)]
    Hecke(HeckeCmd),
    #[command(subcommand)]
    Cs(CsCmd),
    /// Run a verification sweep (or `all`).
    Verify {
        check: String,
        #[arg(long = "box", default_value_t = 3)]
        box_size: i64,
        #[arg(long, default_value_t = 2)]
        lambda_max: i64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
enum HeckeCmd {
    /// Normal form of a term in the Bernstein basis `T_w θ_λ`.
    NormalForm { expr: String },
    /// `T_s θ_λ` rewritten as `θ_{sλ} T_s + correction`.
    TsTheta {
        #[arg(long)]
        s: usize,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        lambda: LatticePoint,
    },
}

#[derive(Subcommand, Debug)]
enum CsCmd {
    /// Closed-form value at a strictly dominant `μ`.
    Eval {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        mu: LatticePoint,
    },
    /// Value through the adjoint quotient, for any datum.
    General {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        mu: LatticePoint,
    },
    /// Conductor-`O` value at a dominant `λ`, through the adjoint quotient.
    O {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        lambda: LatticePoint,
    },
    /// Closed-form value evaluated at a point of the dual torus.
    Specialize {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        mu: LatticePoint,
        #[arg(long)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

fn parse_point(s: &str) -> Result<LatticePoint, String> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| format!("not an integer: `{x}`")))
        .collect::<Result<Vec<_>, _>>()
        .map(LatticePoint::from)
}

fn parse_mult(s: &str) -> Result<(usize, u32), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected k=v, got `{s}`"))?;
    Ok((
        k.trim().parse().map_err(|_| format!("bad root index `{k}`"))?,
        v.trim().parse().map_err(|_| format!("bad multiplicity `{v}`"))?,
    ))
}

/// Output of one command: a JSON value plus its text rendering.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, ok: true }
    }
}

/// Runs the CLI on `args` (including the program name), writing to the
/// given streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let default_format = match cli.command {
        Command::Hecke(_) => Format::Text,
        _ => Format::Json,
    };
    let format = cli.common.format.unwrap_or(default_format);
    match execute(&cli) {
        Ok(o) => {
            let res = match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable")),
                Format::Text => writeln!(out, "{}", o.text),
            };
            if res.is_err() {
                return 2;
            }
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn load_datum(common: &Common, default: &str) -> Result<RootDatum, CliError> {
    let mult: BTreeMap<usize, u32> = common.mult.iter().copied().collect();
    catalog::load(common.datum.as_deref().unwrap_or(default), &mult)
}

fn check_rank(p: &LatticePoint, rank: usize, flag: &str) -> Result<(), CliError> {
    if p.rank() != rank {
        return Err(CliError::Usage(format!("{flag}: expected {rank} coordinates, got {}", p.rank())));
    }
    Ok(())
}

fn element_output(e: &GroupAlgebraElement) -> Output {
    Output::ok(element_json(e), e.to_string())
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let c = &cli.common;
    match &cli.command {
        Command::Datum => {
            let d = load_datum(c, "A1-adjoint")?;
            let dual = d.dual_datum()?;
            let j = format::datum_json(&d, &dual);
            let text = format!(
                "{}: rank {}, semisimple rank {}, {} roots, |W| = {}, dual {}",
                d.label(),
                d.rank(),
                d.semisimple_rank(),
                d.roots().len(),
                d.weyl().order(),
                dual.label()
            );
            Ok(Output::ok(j, text))
        }
        Command::Char { lambda } => {
            let d = load_datum(c, "A1-adjoint")?;
            let dual = d.dual_datum()?;
            check_rank(lambda, dual.rank(), "--lambda")?;
            let ch = weyl_character(&dual, lambda)?;
            let dim = dimension(&dual, lambda)?;
            let weights: Vec<Value> =
                ch.weights().iter().map(|(w, m)| json!({"weight": w.coords(), "mult": m})).collect();
            let j = json!({"lambda": point_json(lambda), "dimension": dim, "weights": weights, "character": element_json(&ch.element)});
            Ok(Output::ok(j, format!("dim {dim}: {}", ch.element)))
        }
        Command::Tensor { lambda, mu } => {
            let d = load_datum(c, "A1-adjoint")?;
            let dual = d.dual_datum()?;
            check_rank(lambda, dual.rank(), "--lambda")?;
            check_rank(mu, dual.rank(), "--mu")?;
            let tc = tensor_coeffs(&dual, lambda, mu)?;
            let text = tc.iter().map(|(eta, k)| format!("{k}*[{eta}]")).collect::<Vec<_>>().join(" + ");
            Ok(Output::ok(format::tensor_json(&tc), text))
        }
        Command::Hecke(cmd) => {
            let d = load_datum(c, "A1-adjoint")?;
            let h = HeckeAlgebra::new(&d);
            match cmd {
                HeckeCmd::NormalForm { expr } => {
                    let e = terms::parse(&h, expr)?;
                    let s = h.format(&e);
                    Ok(Output::ok(json!({"input": expr, "normal_form": s}), s))
                }
                HeckeCmd::TsTheta { s, lambda } => {
                    check_rank(lambda, d.rank(), "--lambda")?;
                    if *s == 0 || *s > d.semisimple_rank() {
                        return Err(CliError::Usage(format!("--s: no simple reflection s{s}")));
                    }
                    let tc = h.ts_theta(s - 1, lambda)?;
                    let full = h.mul(&h.t(s - 1)?, &h.theta(lambda.clone()));
                    let s_str = h.format(&full);
                    let mut corr = whittaker_core::BernsteinElement::zero(d.rank());
                    for (mu, k) in &tc.correction {
                        corr.add_term(h.weyl().identity_index(), mu.clone(), k.clone());
                    }
                    let j = json!({
                        "s": s,
                        "lambda": point_json(lambda),
                        "s_lambda": point_json(&tc.leading),
                        "correction": h.format(&corr),
                        "normal_form": s_str,
                    });
                    Ok(Output::ok(j, s_str))
                }
            }
        }
        Command::Cs(cmd) => cs(c, cmd),
        Command::Verify { check, box_size, lambda_max, samples } => {
            let opts = verify::Options {
                box_size: *box_size,
                lambda_max: *lambda_max,
                seed: c.seed,
                samples: *samples,
                timing: c.timing,
            };
            let checks: Vec<&str> = if check == "all" {
                verify::CHECKS.to_vec()
            } else if verify::CHECKS.contains(&check.as_str()) {
                vec![check.as_str()]
            } else {
                return Err(CliError::Usage(format!(
                    "unknown check `{check}`; expected one of all, {}",
                    verify::CHECKS.join(", ")
                )));
            };
            let data: Vec<RootDatum> = match &c.datum {
                Some(_) => vec![load_datum(c, "")?],
                None => catalog::DEFAULT_SWEEP
                    .iter()
                    .map(|n| catalog::load(n, &BTreeMap::new()))
                    .collect::<Result<_, _>>()?,
            };
            let mut reports: Vec<Report> = Vec::new();
            for d in &data {
                for ch in &checks {
                    reports.push(verify::run_check(ch, d, &opts).expect("known check"));
                }
            }
            let ok = reports.iter().all(Report::passed);
            let text = reports
                .iter()
                .map(|r| {
                    format!(
                        "{} {} {}: {} cases, {} failures",
                        if r.passed() { "PASS" } else { "FAIL" },
                        r.check,
                        r.datum,
                        r.cases,
                        r.failures.len()
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let j = if reports.len() == 1 {
                serde_json::to_value(&reports[0]).expect("serializable")
            } else {
                json!({"passed": ok, "reports": reports})
            };
            Ok(Output { json: j, text, ok })
        }
    }
}

fn cs(c: &Common, cmd: &CsCmd) -> Result<Output, CliError> {
    let d = load_datum(c, "A1-adjoint")?;
    let one = GroupAlgebraElement::one(d.cochar_tag().clone(), d.rank());
    match cmd {
        CsCmd::Eval { mu } => {
            check_rank(mu, d.rank(), "--mu")?;
            Ok(element_output(&cs_value(&d, mu, &one)?))
        }
        CsCmd::General { mu } => {
            check_rank(mu, d.rank(), "--mu")?;
            let r = general_cs_value(&d.isogeny_decomposition()?, mu, None)?;
            let j = json!({"value": element_json(&r.value), "ambient": element_json(&r.ambient)});
            Ok(Output::ok(j, r.value.to_string()))
        }
        CsCmd::O { lambda } => {
            check_rank(lambda, d.rank(), "--lambda")?;
            let r = general_cs_o_value(&d.isogeny_decomposition()?, lambda, None)?;
            let j = json!({"value": element_json(&r.value), "ambient": element_json(&r.ambient)});
            Ok(Output::ok(j, r.value.to_string()))
        }
        CsCmd::Specialize { mu, q, point } => {
            check_rank(mu, d.rank(), "--mu")?;
            let z = point.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
            if z.len() != d.rank() {
                return Err(CliError::Usage(format!("--point: expected {} coordinates, got {}", d.rank(), z.len())));
            }
            let s = SatakeSpecialization::new(z, parse_rational(q)?)?;
            let x = specialize(&cs_value(&d, mu, &one)?, &s)?;
            let xs = rational_to_string(&x);
            Ok(Output::ok(json!({"value": xs, "v": rational_to_string(s.v_value())}), xs))
        }
    }
}
