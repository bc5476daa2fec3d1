//! Command-line front end. [`run`] parses arguments and returns the exit
//! code with everything that should go to stdout, so it can be driven from
//! tests without spawning a process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::arith::format_rational;
use crate::e4e6::{series_to_poly, DEFAULT_GUARD};
use crate::hankel::{build, build_symbolic, chi_spec, classify, det, det_series, hankel_spec, parse_matrix, MinorSpec, ZeroPattern};
use crate::identities::{catalog_ids, discover, verify as verify_identity, Mode};
use crate::jacobi::{ns2, verify_delta_param, verify_e2m, verify_gauss, verify_specialization, Variant};
use crate::modforms::named_series;
use crate::report::VerificationReport;
use crate::{Error, QSeries, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Exact Eisenstein series, Hankel determinants and their identities.
#[derive(Parser, Debug)]
#[command(name = "ehankel", version)]
struct Cli {
    /// Truncation order (number of q-coefficients).
    #[arg(long, global = true, default_value_t = 64)]
    order: usize,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Series)]
    mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Extra coefficients checked after every exact solve.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    guard: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Series,
    Symbolic,
    Both,
}

impl ModeArg {
    fn modes(self) -> Vec<Mode> {
        match self {
            ModeArg::Series => vec![Mode::Series],
            ModeArg::Symbolic => vec![Mode::Symbolic],
            ModeArg::Both => vec![Mode::Series, Mode::Symbolic],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the q-expansion of a named series (E4, E6, ..., delta, k2, z2, theta2_4, theta3_4).
    Expand {
        #[arg(long)]
        series: String,
    },
    /// Determinant of a Hankel minor: hankel:N, chi:N,M or minor:R1,R2,../C1,C2,..
    Det {
        #[arg(long)]
        spec: String,
        /// Zero pattern such as unless:6 or whenever:4,6.
        #[arg(long)]
        zero: Option<String>,
    },
    /// Verify cataloged identities (all, 1.5, ..., 2.24) or the elliptic checks.
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Reduce H_n to constant, Delta power, E4 factor and polynomial.
    Discover {
        #[arg(long)]
        n: usize,
    },
    /// Write a weight-W series (name or JSON file) in the E4, E6 basis.
    Reduce {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        series: String,
    },
    /// Constant-weight test and Hankel-minor recovery for a subscript matrix.
    Classify {
        /// Rows separated by ';', entries by ','.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Laurent coefficient (ns^2)_m as a polynomial in k^2.
    Jacobi {
        #[arg(long)]
        m: usize,
    },
}

struct Outcome {
    json: serde_json::Value,
    text: String,
    failed: bool,
}

impl Outcome {
    fn ok(value: impl Serialize) -> Result<Self> {
        let json = to_value(value)?;
        let text = serde_json::to_string_pretty(&json).expect("value serializes");
        Ok(Outcome { json, text, failed: false })
    }
}

fn to_value(value: impl Serialize) -> Result<serde_json::Value> {
    serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    if cli.order < 4 {
        return (EXIT_USAGE, format!("error: --order must be at least 4, got {}\n", cli.order));
    }
    match execute(&cli) {
        Ok(out) => {
            let mut s = match cli.output {
                Output::Json => serde_json::to_string(&out.json).expect("value serializes"),
                Output::Text => out.text,
            };
            s.push('\n');
            (if out.failed { EXIT_FAIL } else { EXIT_OK }, s)
        }
        Err(e) => (EXIT_USAGE, format!("error: {e}\n")),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let order = cli.order;
    match &cli.command {
        Command::Expand { series } => Outcome::ok(expand(series, order)?),
        Command::Det { spec, zero } => {
            let spec = parse_spec(spec)?;
            let zero = zero.as_deref().map(ZeroPattern::parse).transpose()?;
            let mut out = serde_json::Map::new();
            out.insert("spec".into(), to_value(&spec)?);
            out.insert("weight".into(), json!(spec.weight()));
            if let Some(z) = &zero {
                out.insert("zero".into(), to_value(z)?);
            }
            for mode in cli.mode.modes() {
                match mode {
                    Mode::Series => {
                        let d = det_series(&build(&spec, order, zero.as_ref())?)?;
                        out.insert("series".into(), to_value(&d)?);
                    }
                    Mode::Symbolic => {
                        let d = det(&build_symbolic(&spec, zero.as_ref())?)?;
                        out.insert("poly".into(), to_value(&d)?);
                    }
                }
            }
            Outcome::ok(serde_json::Value::Object(out))
        }
        Command::Verify { id, m } => {
            let reports = verify_reports(id, *m, order, cli.mode, cli.guard)?;
            // Informational results only stay out of the exit code in the full run.
            let failed = if id == "all" {
                reports.iter().any(VerificationReport::is_failure)
            } else {
                reports.iter().any(|r| !r.pass)
            };
            let text = reports.iter().fold(String::new(), |mut s, r| {
                let _ = writeln!(s, "{r}");
                s
            });
            Ok(Outcome {
                json: to_value(&reports)?,
                text: text.trim_end().to_string(),
                failed,
            })
        }
        Command::Discover { n } => {
            let d = discover(*n, order, cli.guard)?;
            let mut text = format!(
                "H_{n} = ({}) * Delta^{}{} * P,  P(X, Y) = {}",
                format_rational(&d.constant),
                n - 1,
                if d.e4_factor { " * E4" } else { "" },
                d.poly
            );
            if let Some(c) = &d.printed_constant {
                let _ = write!(text, "\nequivalently E4^{} Delta^{} = ({}) * H_{n}", d.e4_factor as u8, n - 1, format_rational(c));
            }
            let failed = !d.reconstructed;
            Ok(Outcome {
                json: to_value(&d)?,
                text,
                failed,
            })
        }
        Command::Reduce { weight, series } => {
            let s = load_series(series, order)?;
            let poly = series_to_poly(&s, *weight, cli.guard)?;
            let text = poly.to_string();
            Ok(Outcome {
                json: json!({ "poly": to_value(&poly)?, "weight": weight }),
                text,
                failed: false,
            })
        }
        Command::Classify { matrix } => Outcome::ok(classify(&parse_matrix(matrix)?)?),
        Command::Jacobi { m } => {
            if *m == 0 {
                return Err(Error::Parse("--m must be at least 1".into()));
            }
            let p = ns2(*m);
            Ok(Outcome {
                json: json!({ "m": m, "ns2": to_value(&p)? }),
                text: format!("(ns^2)_{m} = {}", kpoly_text(&p)),
                failed: false,
            })
        }
    }
}

fn kpoly_text(p: &crate::KPoly) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| match i {
            0 => format!("({c})"),
            1 => format!("({c})*k^2"),
            _ => format!("({c})*k^{}", 2 * i),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad index {x:?}")))
        })
        .collect()
}

fn parse_spec(s: &str) -> Result<MinorSpec> {
    let bad = || Error::Parse(format!("bad --spec {s:?}; expected hankel:N, chi:N,M or minor:R,../C,.."));
    let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
    match kind {
        "hankel" => match parse_indices(rest)?.as_slice() {
            [n] if *n >= 1 => Ok(hankel_spec(*n)),
            _ => Err(bad()),
        },
        "chi" => match parse_indices(rest)?.as_slice() {
            [n, m] if *n >= 1 => chi_spec(*n, *m),
            _ => Err(bad()),
        },
        "minor" => {
            let (rows, cols) = rest.split_once('/').ok_or_else(bad)?;
            MinorSpec::new(parse_indices(rows)?, parse_indices(cols)?)
        }
        _ => Err(bad()),
    }
}

fn cache_path(name: &str, order: usize) -> Option<PathBuf> {
    let dir = std::env::var_os("MODFORMS_CACHE_DIR")?;
    Some(Path::new(&dir).join(format!("{name}_{order}.json")))
}

/// Named series, read from and written to `MODFORMS_CACHE_DIR` when set.
fn expand(name: &str, order: usize) -> Result<QSeries> {
    let path = cache_path(name, order);
    if let Some(p) = &path {
        if let Ok(text) = std::fs::read_to_string(p) {
            if let Ok(s) = serde_json::from_str::<QSeries>(&text) {
                if s.order() == order {
                    return Ok(s);
                }
            }
        }
    }
    let (s, _) = named_series(name, order)?;
    if let Some(p) = &path {
        if let Ok(text) = serde_json::to_string(&s) {
            let _ = std::fs::write(p, text);
        }
    }
    Ok(s)
}

/// A series given by name or as a JSON file in the `expand` schema.
fn load_series(arg: &str, order: usize) -> Result<QSeries> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")));
    }
    expand(arg, order)
}

/// One unit of verification work.
#[derive(Clone, Debug)]
enum Check {
    Catalog(&'static str, Mode),
    Specialization(usize),
    DeltaParam,
    E2m(usize, Variant),
    Gauss(usize, Variant),
}

impl Check {
    fn run(&self, order: usize, guard: usize) -> Result<VerificationReport> {
        match *self {
            Check::Catalog(id, mode) => verify_identity(id, order, mode, guard),
            Check::Specialization(m) => verify_specialization(m, order),
            Check::DeltaParam => verify_delta_param(order),
            Check::E2m(m, v) => verify_e2m(m, order, v),
            Check::Gauss(m, v) => verify_gauss(m, order, v),
        }
    }
}

/// Range of `m` used for the elliptic checks when `--m` is not given.
const DEFAULT_M: std::ops::RangeInclusive<usize> = 2..=8;

fn elliptic_checks(id: &str, m: Option<usize>) -> Option<Vec<Check>> {
    let ms: Vec<usize> = match m {
        Some(m) => vec![m],
        None => DEFAULT_M.collect(),
    };
    let per_m = |f: fn(usize) -> Check| Some(ms.iter().map(|&m| f(m)).collect());
    match id {
        "3.10" => Some(vec![Check::Specialization(2)]),
        "3.11" => Some(vec![Check::Specialization(3)]),
        "3.13" => Some(vec![Check::DeltaParam]),
        "3.8:z2m" => per_m(|m| Check::E2m(m, Variant::Z2m)),
        "3.8:printed" => per_m(|m| Check::E2m(m, Variant::Printed)),
        "3.9:z2m" => per_m(|m| Check::Gauss(m, Variant::Z2m)),
        "3.9:printed" => per_m(|m| Check::Gauss(m, Variant::Printed)),
        _ => None,
    }
}

fn plan(id: &str, m: Option<usize>, mode: ModeArg) -> Result<Vec<Check>> {
    let catalog = |ids: &[&'static str]| -> Vec<Check> {
        ids.iter()
            .flat_map(|&id| mode.modes().into_iter().map(move |md| Check::Catalog(id, md)))
            .collect()
    };
    if id == "all" {
        let mut checks = catalog(&catalog_ids());
        for e in ["3.10", "3.11", "3.13", "3.8:z2m", "3.8:printed", "3.9:z2m", "3.9:printed"] {
            checks.extend(elliptic_checks(e, m).expect("known id"));
        }
        return Ok(checks);
    }
    if let Some(checks) = elliptic_checks(id, m) {
        return Ok(checks);
    }
    let ids = catalog_ids();
    let known = ids.iter().find(|&&k| k == id).ok_or_else(|| Error::UnknownId(id.to_string()))?;
    Ok(catalog(&[*known]))
}

/// Runs the planned checks in parallel; results keep plan order.
fn verify_reports(id: &str, m: Option<usize>, order: usize, mode: ModeArg, guard: usize) -> Result<Vec<VerificationReport>> {
    if m.is_some_and(|m| m < 2) {
        return Err(Error::Parse("--m must be at least 2".into()));
    }
    plan(id, m, mode)?
        .par_iter()
        .map(|c| c.run(order, guard))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        run(std::iter::once("ehankel").chain(args.iter().copied()))
    }

    #[test]
    fn expand_delta() {
        let (code, out) = call(&["expand", "--series", "delta", "--order", "5"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"coeffs":["0","1","-24","252","-1472"],"order":5,"var":"q"}"#);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["expand", "--series", "delta", "--bogus"]).0, 2);
        assert_eq!(call(&["expand", "--series", "delta", "--order", "3"]).0, 2);
        assert_eq!(call(&["expand", "--series", "E2", "--order", "8"]).0, 2);
        assert_eq!(call(&["verify", "--id", "9.9"]).0, 2);
        assert_eq!(call(&["det", "--spec", "chi:2,3"]).0, 2);
        assert_eq!(call(&["verify", "--id", "2.24", "--order", "10"]).0, 2);
    }

    #[test]
    fn verify_single_identity() {
        let (code, out) = call(&["verify", "--id", "2.9", "--order", "20", "--mode", "both"]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 2);
        assert_eq!(v[0]["constant"], "691/762048");
    }

    #[test]
    fn printed_variant_is_informational() {
        let (code, out) = call(&["verify", "--id", "3.8:printed", "--m", "2", "--order", "12"]);
        assert_eq!(code, EXIT_FAIL, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["pass"], false);
        assert_eq!(v[0]["informational"], true);
        assert_eq!(v[0]["first_mismatch"], 3);
    }

    #[test]
    fn det_and_classify() {
        let (code, out) = call(&["det", "--spec", "hankel:2", "--order", "6", "--mode", "both"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["series"]["coeffs"][1], "1728");
        assert_eq!(v["poly"].as_array().unwrap().len(), 2);
        let (code, out) = call(&["classify", "--matrix", "4,8;8,12"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["hankel_minor"]["rows"], json!([1, 3]));
        assert_eq!(call(&["det", "--spec", "minor:1,3/2,4", "--zero", "unless:6", "--order", "6"]).0, 0);
    }

    #[test]
    fn reduce_and_jacobi() {
        let (code, out) = call(&["reduce", "--weight", "12", "--series", "E12", "--order", "20"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["poly"][0]["c"], "441/691");
        let (code, out) = call(&["jacobi", "--m", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"m":2,"ns2":["2/15","-2/15","2/15"]}"#);
    }

    #[test]
    fn discover_text() {
        let (code, out) = call(&["discover", "--n", "3", "--order", "20", "--output", "text"]);
        assert_eq!(code, 0);
        assert!(out.contains("-691/746496000"), "{out}");
    }
}
