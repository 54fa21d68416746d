use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hzeta::bernoulli::{bern_numbers, bern_poly, companion_poly};
use hzeta::conjectures::conjecture_scan;
use hzeta::exact::rat_to_string;
use hzeta::verify::verify_battery;
use hzeta::zeros::{zero_list, zeros_json, zeta_truncated};
use hzeta::zeta::{zeta_linear, zeta_table, Method};
use hzeta::{parse_rat, Error, FloatCfg, Params, Rat};

/// Hypergeometric zeta values, Bernoulli numbers and Kummer-function zeros.
#[derive(Parser)]
#[command(name = "hzeta", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact ζ_{a,b}(p) for 2 ≤ p ≤ pmax.
    Zeta {
        #[arg(long, value_parser = positive_rat)]
        a: Rat,
        #[arg(long, value_parser = positive_rat)]
        b: Rat,
        #[arg(long, default_value_t = 10)]
        pmax: u32,
        #[arg(long, value_enum, default_value_t = ZetaMethod::Linear)]
        method: ZetaMethod,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Hypergeometric Bernoulli numbers B_0 … B_nmax.
    Bernoulli {
        #[arg(long, value_parser = positive_rat)]
        a: Rat,
        #[arg(long, value_parser = positive_rat)]
        b: Rat,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// The polynomial B_n(x) or its companion C_n(x).
    Poly {
        #[arg(long, value_parser = positive_rat)]
        a: Rat,
        #[arg(long, value_parser = positive_rat)]
        b: Rat,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Family::B)]
        family: Family,
    },
    /// Zeros of Φ_{a,b} in the upper half-plane.
    Zeros {
        #[arg(long, value_parser = positive_rat)]
        a: Rat,
        #[arg(long, value_parser = positive_rat)]
        b: Rat,
        /// Number of conjugate pairs.
        #[arg(long, default_value_t = 10)]
        pairs: usize,
        #[arg(long)]
        precision_bits: Option<u32>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Truncated sum of z^{-s} over the zeros, compared with the exact value.
    ZetaNum {
        #[arg(long, value_parser = positive_rat)]
        a: Rat,
        #[arg(long, value_parser = positive_rat)]
        b: Rat,
        #[arg(long, default_value_t = 2)]
        s: u32,
        /// Refined conjugate pairs.
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        /// Last index summed from asymptotic seeds (default max(10^4, 200·pairs)).
        #[arg(long)]
        tail: Option<u64>,
        #[arg(long)]
        precision_bits: Option<u32>,
    },
    /// Scan the denominator conjectures for B_n^{(1,b)}.
    Conjecture {
        #[arg(long, default_value_t = 50)]
        bmax: u32,
        #[arg(long, default_value_t = 100)]
        nmax: usize,
    },
    /// Run every applicable exact identity and print a pass/fail matrix.
    Verify {
        #[arg(long, value_parser = positive_rat)]
        a: Rat,
        #[arg(long, value_parser = positive_rat)]
        b: Rat,
        #[arg(long, default_value_t = 10)]
        pmax: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ZetaMethod {
    Linear,
    Quadratic,
    Series,
}

impl From<ZetaMethod> for Method {
    fn from(m: ZetaMethod) -> Method {
        match m {
            ZetaMethod::Linear => Method::Linear,
            ZetaMethod::Quadratic => Method::Quadratic,
            ZetaMethod::Series => Method::SeriesRatio,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
}

fn positive_rat(s: &str) -> Result<Rat, String> {
    let r = parse_rat(s).map_err(|e| e.to_string())?;
    if r <= 0 {
        return Err(format!("{s} is not positive"));
    }
    Ok(r)
}

fn params(a: Rat, b: Rat) -> hzeta::Result<Params> {
    Params::new(a, b)
}

fn float_cfg(precision_bits: Option<u32>, tol: Option<f64>) -> hzeta::Result<FloatCfg> {
    let mut cfg = match precision_bits {
        Some(p) => FloatCfg::with_precision(p)?,
        None => FloatCfg::from_env()?,
    };
    if let Some(t) = tol {
        cfg.newton_tol = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

// a closed pipe (e.g. `| head`) is not an error worth reporting
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

fn print_json(v: &serde_json::Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("json"));
}

enum Outcome {
    Done,
    Failed,
}

fn run(cli: Cli) -> hzeta::Result<Outcome> {
    match cli.command {
        Command::Zeta {
            a,
            b,
            pmax,
            method,
            format,
        } => {
            let table = zeta_table(&params(a, b)?, pmax, method.into())?;
            match format {
                Format::Json => print_json(&table.to_json()),
                Format::Csv => {
                    let _ = std::io::stdout()
                        .lock()
                        .write_all(table.to_csv().as_bytes());
                }
                Format::Plain => {
                    for (p, v) in table.iter() {
                        out!("zeta({p}) = {v}");
                    }
                }
            }
        }
        Command::Bernoulli { a, b, nmax } => {
            print_json(&bern_numbers(&params(a, b)?, nmax).to_json());
        }
        Command::Poly { a, b, n, family } => {
            let p = params(a, b)?;
            let (name, poly) = match family {
                Family::B => ("B", bern_poly(&p, n)),
                Family::C => ("C", companion_poly(&p, n)),
            };
            print_json(&json!({
                "a": rat_to_string(p.a()),
                "b": rat_to_string(p.b()),
                "n": n,
                "family": name,
                "coefficients": serde_json::to_value(&poly).expect("json"),
                "text": poly.to_string(),
            }));
        }
        Command::Zeros {
            a,
            b,
            pairs,
            precision_bits,
            tol,
        } => {
            let p = params(a, b)?;
            let cfg = float_cfg(precision_bits, tol)?;
            let zeros = zero_list(&p, pairs, &cfg)?;
            print_json(&zeros_json(&p, &zeros, &cfg));
        }
        Command::ZetaNum {
            a,
            b,
            s,
            pairs,
            tail,
            precision_bits,
        } => {
            let p = params(a, b)?;
            let cfg = float_cfg(precision_bits, None)?;
            let t = zeta_truncated(&p, s, pairs, tail, &cfg)?;
            let exact = zeta_linear(&p, s)?.get(s).clone();
            let exact_f = exact.to_f64();
            print_json(&json!({
                "a": rat_to_string(p.a()),
                "b": rat_to_string(p.b()),
                "s": s,
                "pairs": t.refined,
                "tail": t.tail_end,
                "precision_bits": cfg.precision_bits,
                "value": format!("{:.15e}", t.value),
                "refined_part": format!("{:.15e}", t.refined_part),
                "tail_part": format!("{:.15e}", t.tail_part),
                "remainder_bound": format!("{:.3e}", t.remainder_bound),
                "exact": rat_to_string(&exact),
                "difference": format!("{:.3e}", t.value - exact_f),
            }));
        }
        Command::Conjecture { bmax, nmax } => {
            let report = conjecture_scan(bmax, nmax)?;
            print_json(&report.to_json());
            if !report.is_clean() {
                return Ok(Outcome::Failed);
            }
        }
        Command::Verify { a, b, pmax } => {
            let p = params(a, b)?;
            out!("verify {p}, pmax = {pmax}");
            let reports = verify_battery(&p, pmax)?;
            for r in &reports {
                out!("{r}");
            }
            if !reports.iter().all(|r| r.all_pass()) {
                return Ok(Outcome::Failed);
            }
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidParams(_) | Error::InvalidConfig(_) | Error::ParseRational { .. } => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
