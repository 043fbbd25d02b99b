//! The `gwpt` command line: one subcommand per library operation, JSON in and
//! JSON out.
//!
//! Every invocation prints a single [`CommandResult`]. Exit status is 0 on
//! success, 1 for user errors (bad arguments, malformed JSON, violated
//! preconditions) and 2 when an internal invariant fails.

use std::fs;
use std::io::Read;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gwpt::arith::{QForm, TruncatedULaurent};
use gwpt::lattice::{IntegerMatrix, LatticeVector};
use gwpt::poset::{enumerate_4valent_curves, one_step_degenerations, smaller_stars, ConstraintCase};
use gwpt::series::{
    correspondence_check, fit_prefactor, glue_degeneration, linear_star_series, principal_pt_displayed,
    principal_series, GWSeries, PTSeries, PartitionVector, Side, SideSeries, StarDiscreteData,
};
use gwpt::stars::{multiplicity_and_normalize, ChowOneComplex, Star, StarEquivalence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(payload: Value, diagnostics: Vec<String>) -> Self {
        Self { status: Status::Ok, payload, diagnostics, exit_code: 0 }
    }

    fn failed(f: Failure) -> Self {
        let (code, msg) = match f {
            Failure::User(m) => (1, m),
            Failure::Internal(m) => (2, format!("internal invariant failure: {m}")),
        };
        Self { status: Status::Error, payload: Value::Null, diagnostics: vec![msg], exit_code: code }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("command results serialize")
    }
}

#[derive(Debug)]
enum Failure {
    User(String),
    Internal(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::User(e.to_string())
    }
}

type Run = Result<(Value, Vec<String>), Failure>;

#[derive(Parser, Debug)]
#[command(name = "gwpt", version, about = "Stars, degenerations and GW/PT series, with JSON input and output")]
struct Cli {
    /// Seed for the randomized self-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Operations on a single star.
    #[command(subcommand)]
    Star(StarCmd),
    /// Operations on a Chow 1-complex.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Degenerations and the order on stars.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Generating series.
    #[command(subcommand)]
    Series(SeriesCmd),
}

#[derive(Args, Debug)]
struct Input {
    /// JSON input file; standard input when absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum StarCmd {
    /// Moves a trivalent star to its normal shape.
    Normalize(Input),
    /// Whether the star is balanced.
    Balance(Input),
    /// Whether the star is visible.
    Visible(Input),
    /// Multiplicity data `n`, `m`, `N`.
    Multiplicity {
        /// Also recompute on this many seeded unimodular transforms.
        #[arg(long, default_value_t = 0)]
        verify: usize,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand, Debug)]
enum ComplexCmd {
    Stabilize(Input),
    Visible(Input),
    AsymptoticStar(Input),
}

#[derive(Subcommand, Debug)]
enum PosetCmd {
    /// Stable complexes with the input star as asymptotic star.
    Degenerations {
        #[arg(long, default_value_t = 3)]
        vertex_bound: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Stars below the input star.
    Smaller {
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        vertex_bound: usize,
        /// Identify stars up to integral linear maps as well.
        #[arg(long)]
        linear: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Rigid curves for the 4-valent star.
    Curves4v {
        #[arg(long = "n")]
        n: i64,
        #[arg(long)]
        case: ConstraintCase,
    },
}

#[derive(Subcommand, Debug)]
enum SeriesCmd {
    Principal {
        #[arg(long)]
        side: Side,
        #[arg(long)]
        mult: u64,
        #[arg(long, default_value_t = 12)]
        order: i64,
        /// The displayed PT form `q (1+q)^n` instead of `q (1 - (-q)^n)`.
        #[arg(long)]
        displayed: bool,
    },
    Linear {
        #[arg(long)]
        side: Side,
        #[arg(long = "d")]
        d: u64,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 12)]
        order: i64,
    },
    /// One term of the degeneration formula; input is a list of vertex series.
    Glue {
        #[arg(long)]
        side: Side,
        #[arg(long)]
        mu: PartitionVector,
        #[command(flatten)]
        input: Input,
    },
    /// Input `{"pt": .., "gw": ..}`.
    Check {
        #[arg(long = "d", allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        sigma: i64,
        #[arg(long, default_value_t = 24)]
        order: i64,
        #[command(flatten)]
        input: Input,
    },
    /// Input `{"pt": .., "gw": ..}`.
    Fit {
        #[arg(long, default_value_t = 24)]
        order: i64,
        #[command(flatten)]
        input: Input,
    },
    IsLaurentPoly(Input),
}

/// Parses `argv` (including the program name) and runs it. Help and version
/// requests come back as an error carrying clap's text.
pub fn run_command<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_stdin(argv, &mut std::io::stdin())
}

pub fn run_with_stdin<I, T>(argv: I, stdin: &mut dyn Read) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => return CommandResult::failed(Failure::User(e.to_string().trim_end().to_string())),
    };
    match catch_unwind(AssertUnwindSafe(|| dispatch(cli, stdin))) {
        Ok(Ok((payload, diagnostics))) => CommandResult::ok(payload, diagnostics),
        Ok(Err(f)) => CommandResult::failed(f),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            CommandResult::failed(Failure::Internal(msg))
        }
    }
}

/// Whether `argv` only asks for help or the version.
pub fn is_help_request<I, T>(argv: I) -> Option<String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::error::ErrorKind;
    match Cli::try_parse_from(argv) {
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) => {
            Some(e.to_string())
        }
        _ => None,
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<Value, Failure> {
    let text = match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::User(format!("cannot read {}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Failure::User(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| Failure::User(format!("malformed JSON: {e}")))
}

fn parse<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::User(format!("invalid {what}: {e}")))
}

/// A single item, or a list of them. Lists map to lists.
fn one_or_many<T, F>(v: Value, what: &str, mut f: F) -> Result<Value, Failure>
where
    T: for<'de> Deserialize<'de>,
    F: FnMut(T) -> Result<Value, Failure>,
{
    match v {
        Value::Array(items) => items.into_iter().map(|x| parse(x, what).and_then(&mut f)).collect::<Result<Vec<_>, _>>().map(Value::Array),
        other => parse(other, what).and_then(f),
    }
}

/// Complexes may also come wrapped in a degeneration catalog.
fn complexes(v: Value) -> Value {
    match v {
        Value::Object(mut m) if m.contains_key("complexes") && !m.contains_key("vertices") => m.remove("complexes").unwrap(),
        other => other,
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("library types serialize")
}

fn seeded_unimodular(rng: &mut ChaCha8Rng) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(3);
    for _ in 0..8 {
        let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
        if i != j {
            let mut e = IntegerMatrix::identity(3);
            e.set(i, j, rng.gen_range(-2i64..=2).into());
            m = e.mul(&m).expect("3x3 product");
        }
    }
    m
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PtInput {
    Text(String),
    Full(PTSeries),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GwInput {
    Text(String),
    Full(GWSeries),
}

impl PtInput {
    fn into_series(self) -> Result<PTSeries, Failure> {
        Ok(match self {
            Self::Text(s) => PTSeries::new(s.parse::<QForm>()?, StarDiscreteData::default()),
            Self::Full(p) => p,
        })
    }
}

impl GwInput {
    fn into_series(self) -> Result<GWSeries, Failure> {
        Ok(match self {
            Self::Text(s) => GWSeries { series: s.parse::<TruncatedULaurent>()?, data: StarDiscreteData::default() },
            Self::Full(g) => g,
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Pair {
    pt: PtInput,
    gw: GwInput,
}

/// A vertex series for gluing: bare text on the declared side, or a tagged object.
fn vertex_series(v: Value, side: Side) -> Result<SideSeries, Failure> {
    match v {
        Value::String(s) => Ok(match side {
            Side::Gw => SideSeries::Gw(GwInput::Text(s).into_series()?),
            Side::Pt => SideSeries::Pt(PtInput::Text(s).into_series()?),
        }),
        other => parse(other, "vertex series"),
    }
}

fn series_text(s: &SideSeries) -> Value {
    Value::String(s.to_string())
}

fn dispatch(cli: Cli, stdin: &mut dyn Read) -> Run {
    let seed = cli.seed;
    let mut notes = Vec::new();
    let payload = match cli.group {
        Group::Star(cmd) => match cmd {
            StarCmd::Normalize(input) => one_or_many(read_input(&input, stdin)?, "star", |s: Star| {
                let m = multiplicity_and_normalize(&s)?;
                notes.push(format!("transform {}", m.transform));
                if !m.rows_exact {
                    notes.push("weights are not of the form (n, mn, n); only the span is normalized".into());
                }
                Ok(to_value(&s.transform(&m.transform)?))
            })?,
            StarCmd::Balance(input) => {
                one_or_many(read_input(&input, stdin)?, "star", |s: Star| Ok(json!({ "balanced": s.is_balanced() })))?
            }
            StarCmd::Visible(input) => {
                one_or_many(read_input(&input, stdin)?, "star", |s: Star| Ok(json!({ "visible": s.is_visible() })))?
            }
            StarCmd::Multiplicity { verify, input } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let out = one_or_many(read_input(&input, stdin)?, "star", |s: Star| {
                    let m = multiplicity_and_normalize(&s)?;
                    for _ in 0..verify {
                        let moved = s.transform(&seeded_unimodular(&mut rng))?;
                        let again = multiplicity_and_normalize(&moved)?;
                        if (again.n, again.m, again.big_n) != (m.n, m.m, m.big_n) {
                            return Err(Failure::Internal(format!("multiplicity changed under a unimodular map: {moved}")));
                        }
                    }
                    Ok(json!({ "n": m.n, "m": m.m, "N": m.big_n }))
                })?;
                if verify > 0 {
                    notes.push(format!("invariant under {verify} seeded unimodular transforms (seed {seed})"));
                }
                out
            }
        },
        Group::Complex(cmd) => match cmd {
            ComplexCmd::Stabilize(input) => {
                one_or_many(complexes(read_input(&input, stdin)?), "complex", |c: ChowOneComplex| Ok(to_value(&c.stabilize()?)))?
            }
            ComplexCmd::Visible(input) => one_or_many(complexes(read_input(&input, stdin)?), "complex", |c: ChowOneComplex| {
                Ok(json!({ "visible": c.is_visible() }))
            })?,
            ComplexCmd::AsymptoticStar(input) => {
                one_or_many(complexes(read_input(&input, stdin)?), "complex", |c: ChowOneComplex| Ok(to_value(&c.asymptotic_star()?)))?
            }
        },
        Group::Poset(cmd) => match cmd {
            PosetCmd::Degenerations { vertex_bound, input } => {
                let s: Star = parse(read_input(&input, stdin)?, "star")?;
                let cat = one_step_degenerations(&s, vertex_bound)?;
                if let Some(bad) = cat.complexes.iter().find(|c| !c.is_visible()) {
                    return Err(Failure::Internal(format!("stable degeneration is not visible: {bad}")));
                }
                notes.push(format!("{} complexes", cat.complexes.len()));
                to_value(&cat)
            }
            PosetCmd::Smaller { depth, vertex_bound, linear, input } => {
                let s: Star = parse(read_input(&input, stdin)?, "star")?;
                let eq = if linear { StarEquivalence::Linear } else { StarEquivalence::Translation };
                let stars = smaller_stars(&s, depth, vertex_bound, eq)?;
                notes.push(format!("{} stars", stars.len()));
                to_value(&stars)
            }
            PosetCmd::Curves4v { n, case } => {
                let curves = enumerate_4valent_curves(n, case)?;
                notes.push(format!("{} complexes", curves.len()));
                to_value(&curves)
            }
        },
        Group::Series(cmd) => match cmd {
            SeriesCmd::Principal { side, mult, order, displayed } => {
                if displayed {
                    if side != Side::Pt {
                        return Err(Failure::User("--displayed only applies to --side pt".into()));
                    }
                    series_text(&SideSeries::Pt(principal_pt_displayed(mult)?))
                } else {
                    series_text(&principal_series(side, mult, order)?)
                }
            }
            SeriesCmd::Linear { side, d, ell, order } => series_text(&linear_star_series(side, d, ell, order)?),
            SeriesCmd::Glue { side, mu, input } => {
                let Value::Array(items) = read_input(&input, stdin)? else {
                    return Err(Failure::User("glue expects a JSON list of vertex series".into()));
                };
                let vertex = items.into_iter().map(|v| vertex_series(v, side)).collect::<Result<Vec<_>, _>>()?;
                let glued = glue_degeneration(side, &vertex, &mu)?;
                if let SideSeries::Pt(p) = &glued {
                    notes.push(format!("laurent polynomial: {}", p.form().is_laurent_polynomial()));
                }
                series_text(&glued)
            }
            SeriesCmd::Check { d, sigma, order, input } => {
                let pair: Pair = parse(read_input(&input, stdin)?, "series pair")?;
                to_value(&correspondence_check(&pair.pt.into_series()?, &pair.gw.into_series()?, d, sigma, order)?)
            }
            SeriesCmd::Fit { order, input } => {
                let pair: Pair = parse(read_input(&input, stdin)?, "series pair")?;
                let fit = fit_prefactor(&pair.pt.into_series()?, &pair.gw.into_series()?, order)?;
                if fit.is_none() {
                    notes.push("no unique prefactor".into());
                }
                to_value(&fit)
            }
            SeriesCmd::IsLaurentPoly(input) => {
                let pt = parse::<PtInput>(read_input(&input, stdin)?, "PT series")?.into_series()?;
                json!({ "laurent_polynomial": pt.form().is_laurent_polynomial(), "reduced": pt.form().to_string() })
            }
        },
    };
    Ok((payload, notes))
}

/// Direction vectors as JSON arrays, for building inputs in tests and scripts.
pub fn star_json(rays: &[([i64; 3], u64)]) -> Value {
    let rays: Vec<Value> = rays.iter().map(|(d, w)| json!({ "dir": to_value(&LatticeVector::from_i64(*d)), "weight": w })).collect();
    json!({ "rays": rays })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_kinds_map_to_exit_codes() {
        let user = CommandResult::failed(Failure::User("bad".into()));
        let internal = CommandResult::failed(Failure::Internal("broken".into()));
        assert_eq!((user.exit_code, internal.exit_code), (1, 2));
        assert!(internal.diagnostics[0].starts_with("internal invariant failure"));
        assert_eq!(user.to_json(), r#"{"status":"error","payload":null,"diagnostics":["bad"]}"#);
    }

    #[test]
    fn in_process_matches_the_binary_contract() {
        let r = run_with_stdin(["gwpt", "series", "principal", "--side", "pt", "--mult", "3"], &mut std::io::empty());
        assert_eq!(r.to_json(), r#"{"status":"ok","payload":"q + q^4","diagnostics":[]}"#);
        let r = run_with_stdin(["gwpt", "star", "balance"], &mut "[]".as_bytes());
        assert_eq!(r.payload, json!([]));
    }
}
