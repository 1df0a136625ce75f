//! `mirabolic`: command-line access to characters, Eisenstein coefficients,
//! Γ-factors and the quadrature checks.

mod args;
mod commands;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mirabolic::eisenstein::Cell;
use mirabolic::fe_verify::QuadratureConfig;
use mirabolic::C64;
use serde_json::{json, Value};

use args::{parse_complex, parse_int_list, parse_tolerance, IntList};
use commands::{CharsQuery, EisQuery, Functor, GammaQuery};
use output::{cx, render_csv, render_json, Format, Outcome, Status};
use verify::Suite;

const PRECISION_ENV: &str = "MIRABOLIC_PRECISION";

#[derive(Parser)]
#[command(name = "mirabolic", version, about = "Characters, Eisenstein coefficients, Γ-factors and quadrature checks")]
#[command(after_help = "Complex arguments are written `re,im`; a bare `re` means a real value.\n\
Quadrature defaults can be overridden through MIRABOLIC_PRECISION, either a bare\n\
tolerance or `key=value` pairs such as `rel_tol=1e-8,max_depth=12`.\n\
Exit codes: 0 success, 1 failed verification, 2 bad flags or parse error, 3 domain error.")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or query Dirichlet characters by enumeration index.
    Chars {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        modulus: u64,
        /// List every character mod N.
        #[arg(long, conflicts_with = "index")]
        list: bool,
        #[arg(long, required_unless_present = "list")]
        index: Option<usize>,
        /// Gauss sum τ_ψ.
        #[arg(long, requires = "index")]
        gauss: bool,
        /// Finite Fourier transform ψ̂(m).
        #[arg(long, requires = "index", allow_negative_numbers = true)]
        fft: Option<i64>,
        #[arg(long, requires = "index")]
        conductor: bool,
    },
    /// Fourier coefficients of a mirabolic Eisenstein distribution.
    Eis {
        /// Rank n ≥ 2.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        nu: C64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        modulus: u64,
        #[arg(long, default_value_t = 0)]
        char_index: usize,
        #[arg(long, value_parser = parse_cell, default_value = "wlong")]
        cell: Cell,
        /// One frequency vector `r_1,…,r_{n-1}`.
        #[arg(long, value_parser = parse_int_list, allow_hyphen_values = true, conflicts_with = "r_box")]
        r: Option<IntList>,
        /// Every `r` with `|r_j| ≤ B`.
        #[arg(long)]
        r_box: Option<u32>,
        /// Pole data of the constant term at ν = n/2.
        #[arg(long)]
        pole: bool,
    },
    /// Γ-factors of an isobaric sum and its functorial images.
    Gamma {
        /// Isobaric sum, e.g. `D3[0.1]+triv[-0.2]+sgn[0.5,1]`.
        #[arg(long, allow_hyphen_values = true)]
        rep: String,
        #[arg(long, value_enum, default_value_t = Functor::Std)]
        functor: Functor,
        /// Second factor for `--functor tensor`.
        #[arg(long, allow_hyphen_values = true)]
        other: Option<String>,
        /// Twist the image by sgn^η.
        #[arg(long)]
        twist_parity: Option<u32>,
        /// Evaluate the Γ-product at s.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        eval: Option<C64>,
        /// Principal-series parameters (λ, δ) of the representation.
        #[arg(long)]
        embedding: bool,
        /// Use δ = (k+1, 1) for discrete blocks in `--embedding`.
        #[arg(long, requires = "embedding")]
        alternative: bool,
        /// Check the generic unitary conditions.
        #[arg(long)]
        validate: bool,
    },
    /// Compare every quadrature oracle with its closed form.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Sets both absolute and relative tolerance.
        #[arg(long, value_parser = parse_tolerance)]
        tol: Option<f64>,
    },
}

fn parse_cell(s: &str) -> Result<Cell, String> {
    match s {
        "big" => Ok(Cell::Big),
        "wlong" => Ok(Cell::Wlong),
        _ => Err(format!("unknown cell `{s}`; expected `big` or `wlong`")),
    }
}

fn base_config() -> mirabolic::Result<QuadratureConfig> {
    match std::env::var(PRECISION_ENV) {
        Ok(spec) => QuadratureConfig::default().with_overrides(&spec),
        Err(_) => Ok(QuadratureConfig::default()),
    }
}

fn dispatch(cmd: &Command) -> (&'static str, Value, Outcome) {
    let done = |r: mirabolic::Result<Outcome>| r.unwrap_or_else(|e| Outcome::failure(&e));
    match cmd {
        Command::Chars { modulus, list, index, gauss, fft, conductor } => {
            let inputs = json!({
                "modulus": modulus, "list": list, "index": index, "gauss": gauss, "fft": fft, "conductor": conductor,
            });
            let q = CharsQuery { modulus: *modulus, list: *list, index: *index, gauss: *gauss, fft: *fft, conductor: *conductor };
            ("chars", inputs, done(commands::chars(&q)))
        }
        Command::Eis { n, nu, modulus, char_index, cell, r, r_box, pole } => {
            let cell_name = match cell {
                Cell::Big => "big",
                Cell::Wlong => "wlong",
            };
            let inputs = json!({
                "n": n, "nu": cx(*nu), "modulus": modulus, "char_index": char_index, "cell": cell_name,
                "r": r.as_ref().map(|l| &l.0), "r_box": r_box, "pole": pole,
            });
            let q = EisQuery {
                n: *n as usize,
                nu: *nu,
                modulus: *modulus,
                char_index: *char_index,
                cell: *cell,
                r: r.as_ref().map(|l| l.0.clone()),
                r_box: *r_box,
                pole: *pole,
            };
            let out = if q.r.is_none() && q.r_box.is_none() && !q.pole {
                Outcome::failure(&mirabolic::Error::InvalidArgument("one of --r, --r-box or --pole is required".into()))
            } else {
                done(commands::eis(&q))
            };
            ("eis", inputs, out)
        }
        Command::Gamma { rep, functor, other, twist_parity, eval, embedding, alternative, validate } => {
            let functor_name = match functor {
                Functor::Std => "std",
                Functor::Ext2 => "ext2",
                Functor::Sym2 => "sym2",
                Functor::Tensor => "tensor",
            };
            let inputs = json!({
                "rep": rep, "functor": functor_name, "other": other, "twist_parity": twist_parity,
                "eval": eval.map(cx), "embedding": embedding, "alternative": alternative, "validate": validate,
            });
            let q = GammaQuery {
                rep: rep.clone(),
                functor: *functor,
                other: other.clone(),
                twist_parity: *twist_parity,
                eval: *eval,
                embedding: *embedding,
                alternative: *alternative,
                validate: *validate,
            };
            ("gamma", inputs, done(commands::gamma(&q)))
        }
        Command::Verify { suite, tol } => {
            let inputs = json!({ "suite": format!("{suite:?}").to_lowercase(), "tol": tol });
            let cfg = base_config().map(|c| match tol {
                Some(t) => c.with_tolerance(*t),
                None => c,
            });
            let cfg = match cfg.and_then(|c| c.validate().map(|_| c)) {
                Ok(c) => c,
                Err(e) => {
                    let mut out = Outcome::failure(&e);
                    out.status = Status::Usage;
                    return ("verify", inputs, out);
                }
            };
            let (reports, pass) = verify::run(*suite, &cfg);
            let mut out = Outcome::ok(json!({ "pass": pass, "suites": reports }));
            out.precision = serde_json::to_value(cfg).expect("config serializes");
            if *suite != Suite::All {
                out.rows = Some("/suites/0/cases");
            }
            if !pass {
                out.status = Status::Failed;
            }
            ("verify", inputs, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, inputs, out) = dispatch(&cli.command);
    let text = match cli.format {
        Format::Json => render_json(command, &inputs, &out) + "\n",
        Format::Csv => render_csv(&out),
    };
    print!("{text}");
    ExitCode::from(out.status.code() as u8)
}
