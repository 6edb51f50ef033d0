//! Command-line front end. [`run`] parses arguments and returns the exit
//! code with everything destined for stdout and stderr, so the binary is a
//! thin wrapper and tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid arguments or
//! input, 3 a series that did not stabilize under truncation.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::expansions::{coeff_matrix_padded, decompose_one_param, schur_expand_through, CoeffKind, ExpansionError};
use crate::grothendieck::{flagged_g, jacobi_trudi, Form, GrothError, JTRequest, Variant, DEFAULT_CUTOFF};
use crate::partitions::Partition;
use crate::polynomial::{poly_to_json, Poly, TruncSeries};
use crate::verify::{self, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSTABLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "kgroth", version, about = "Refined canonical Grothendieck polynomials")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate G_{λ/μ}, G_{λ⫽μ} or g_{λ/μ} in x1..xn.
    Compute(ComputeArgs),
    /// Schur or one-parameter expansions.
    Expand(ExpandArgs),
    /// A single expansion coefficient (I, Itilde, E, Etilde, D, Dtilde, b, B).
    Coeff(CoeffArgs),
    /// Run an identity suite over a box of shapes.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    #[value(name = "G")]
    G,
    #[value(name = "Gds")]
    Gds,
    #[value(name = "g")]
    Dual,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::G => Variant::G,
            VariantArg::Gds => Variant::Gds,
            VariantArg::Dual => Variant::Dual,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    H,
    E,
}

#[derive(Args, Debug)]
struct Output {
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Render α, β and subscripts with Unicode.
    #[arg(long)]
    unicode: bool,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    variant: VariantArg,
    #[arg(long, value_parser = parse_partition)]
    outer: Partition,
    #[arg(long, value_parser = parse_partition, default_value = "")]
    inner: Partition,
    #[arg(long, default_value_t = 1)]
    nvars: usize,
    #[arg(long, value_enum, default_value = "h")]
    form: FormArg,
    /// (α,β)-degree cutoff for G and G⫽; raised automatically until stable.
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    cutoff: u32,
    /// Lower row flags, e.g. 1,1 (G only; defaults to all 1).
    #[arg(long, value_parser = parse_list)]
    flag_r: Option<Flags>,
    /// Upper row flags, e.g. 2,3 (G only).
    #[arg(long, value_parser = parse_list)]
    flag_s: Option<Flags>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[command(subcommand)]
    kind: ExpandKind,
}

#[derive(Subcommand, Debug)]
enum ExpandKind {
    /// Expand in Schur polynomials s_ν(x1..xn).
    Schur {
        #[arg(long = "of")]
        variant: VariantArg,
        #[arg(long, value_parser = parse_partition)]
        outer: Partition,
        #[arg(long, value_parser = parse_partition, default_value = "")]
        inner: Partition,
        #[arg(long)]
        nvars: usize,
        /// Keep terms s_ν with |ν| at most this (defaults to nvars).
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: u32,
        #[arg(long)]
        text: bool,
        #[arg(long)]
        unicode: bool,
    },
    /// Expand in the one-parameter functions g_μ(β) or G_μ(β).
    OneParam {
        #[arg(long)]
        side: VariantArg,
        #[arg(long, value_parser = parse_partition)]
        outer: Partition,
        /// For G: include shapes with up to this many extra cells.
        #[arg(long, default_value_t = 2)]
        budget: usize,
        #[arg(long)]
        text: bool,
        #[arg(long)]
        unicode: bool,
    },
}

#[derive(Args, Debug)]
struct CoeffArgs {
    kind: String,
    /// Subscript shape.
    #[arg(long, value_parser = parse_partition)]
    lower: Partition,
    /// Superscript shape.
    #[arg(long, value_parser = parse_partition)]
    upper: Partition,
    /// Determinant size (defaults to the longest shape).
    #[arg(long)]
    pad: Option<usize>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: String,
    /// Shapes λ, μ range over the RxC box.
    #[arg(long = "box", value_parser = parse_box, default_value = "2x2")]
    bbox: (usize, usize),
    #[arg(long, default_value_t = 2)]
    nvars: usize,
    /// Total-degree truncation for series identities.
    #[arg(long, default_value_t = 4)]
    degree: u32,
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    cutoff: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check a seeded random sample of this many cases.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long)]
    no_stability: bool,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
struct Flags(Vec<usize>);

fn parse_list(s: &str) -> Result<Flags, String> {
    s.split(',')
        .enumerate()
        .map(|(i, t)| t.trim().parse::<usize>().map_err(|_| format!("invalid entry {:?} at position {i}", t.trim())))
        .collect::<Result<_, _>>()
        .map(Flags)
}

fn parse_box(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected RxC, got {s:?}"))?;
    let r = r.trim().parse().map_err(|_| format!("invalid row count {r:?}"))?;
    let c = c.trim().parse().map_err(|_| format!("invalid column count {c:?}"))?;
    Ok((r, c))
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Outcome {
        Outcome { code, stdout: String::new(), stderr: msg.into() + "\n" }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match cli.cmd {
        Cmd::Compute(a) => compute(a),
        Cmd::Expand(a) => expand(a),
        Cmd::Coeff(a) => coeff(a),
        Cmd::Verify(a) => run_verify(a),
    }
}

fn unstable(e: &GrothError) -> Option<u32> {
    match e {
        GrothError::Unstable { cutoff } => Some(*cutoff),
        _ => None,
    }
}

fn groth_failure(e: GrothError) -> Outcome {
    match unstable(&e) {
        Some(c) => Outcome::fail(EXIT_UNSTABLE, format!("error: series did not stabilize (last cutoff tried: {c})")),
        None => Outcome::fail(EXIT_USAGE, format!("error: {e}")),
    }
}

fn expansion_failure(e: ExpansionError) -> Outcome {
    match e {
        ExpansionError::Groth(g) => groth_failure(g),
        e => Outcome::fail(EXIT_USAGE, format!("error: {e}")),
    }
}

fn series_json(s: &TruncSeries) -> Value {
    json!({ "poly": poly_to_json(s.body()), "cutoff": s.cutoff(), "exact": s.is_exact() })
}

fn compute(a: ComputeArgs) -> Outcome {
    let variant = Variant::from(a.variant);
    let result = if a.flag_r.is_some() || a.flag_s.is_some() {
        if variant != Variant::G {
            return Outcome::fail(EXIT_USAGE, "error: row flags apply to G only");
        }
        let Some(Flags(s)) = a.flag_s else {
            return Outcome::fail(EXIT_USAGE, "error: --flag-s is required with --flag-r");
        };
        let r = a.flag_r.map_or_else(|| vec![1; s.len()], |f| f.0);
        flagged_g(&a.outer, &a.inner, &r, &s, Some(a.cutoff))
    } else {
        let form = match a.form {
            FormArg::H => Form::H,
            FormArg::E => Form::E,
        };
        jacobi_trudi(&JTRequest::new(a.outer, a.inner, a.nvars, variant).form(form).cutoff(a.cutoff))
    };
    match result {
        Ok(s) if a.out.json => Outcome::ok(format!("{}\n", series_json(&s))),
        Ok(s) => Outcome::ok(format!("{}\n", s.body().render(a.out.unicode))),
        Err(e) => groth_failure(e),
    }
}

fn map_json(terms: &BTreeMap<Partition, Poly>) -> Value {
    Value::Array(terms.iter().map(|(l, c)| json!({ "shape": l.parts(), "coeff": poly_to_json(c) })).collect())
}

fn map_text(terms: &BTreeMap<Partition, Poly>, unicode: bool) -> String {
    terms.iter().map(|(l, c)| format!("{l}: {}\n", c.render(unicode))).collect()
}

fn expand(a: ExpandArgs) -> Outcome {
    match a.kind {
        ExpandKind::Schur { variant, outer, inner, nvars, max_degree, cutoff, text, unicode } => {
            let req = JTRequest::new(outer, inner, nvars, variant.into()).cutoff(cutoff);
            let p = match jacobi_trudi(&req) {
                Ok(s) => s.into_body(),
                Err(e) => return groth_failure(e),
            };
            match schur_expand_through(&p, nvars, max_degree.unwrap_or(nvars as u32)) {
                Ok(se) if text => Outcome::ok(map_text(&se.terms, unicode)),
                Ok(se) => Outcome::ok(format!("{}\n", se.to_json())),
                Err(e) => expansion_failure(e),
            }
        }
        ExpandKind::OneParam { side, outer, budget, text, unicode } => {
            let side = Variant::from(side);
            if side == Variant::Gds {
                return Outcome::fail(EXIT_USAGE, "error: --side must be g or G");
            }
            match decompose_one_param(&outer, side, budget) {
                Ok(m) if text => Outcome::ok(map_text(&m, unicode)),
                Ok(m) => Outcome::ok(format!(
                    "{}\n",
                    json!({ "side": side.name(), "outer": outer.parts(), "terms": map_json(&m) })
                )),
                Err(e) => expansion_failure(e),
            }
        }
    }
}

fn coeff(a: CoeffArgs) -> Outcome {
    let Some(kind) = CoeffKind::parse(&a.kind) else {
        let names: Vec<&str> = CoeffKind::ALL.iter().map(|k| k.name()).collect();
        return Outcome::fail(EXIT_USAGE, format!("error: unknown coefficient {:?} (expected one of {})", a.kind, names.join(", ")));
    };
    let l = a.pad.unwrap_or_else(|| a.lower.len().max(a.upper.len()));
    match coeff_matrix_padded(kind, &a.lower, &a.upper, l) {
        Ok(p) if a.out.json => Outcome::ok(format!("{}\n", poly_to_json(&p))),
        Ok(p) => Outcome::ok(format!("{}\n", p.render(a.out.unicode))),
        Err(e) => expansion_failure(e),
    }
}

fn run_verify(a: VerifyArgs) -> Outcome {
    let Some(suite) = Suite::parse(&a.suite) else {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        return Outcome::fail(EXIT_USAGE, format!("error: unknown suite {:?} (expected one of {})", a.suite, names.join(", ")));
    };
    let opts = VerifyOptions {
        rows: a.bbox.0,
        cols: a.bbox.1,
        nvars: a.nvars,
        degree: a.degree,
        cutoff: a.cutoff,
        seed: a.seed,
        sample: a.sample,
        stability: !a.no_stability,
    };
    match verify::run(suite, &opts) {
        Ok(r) => {
            let stdout = format!("{}\n", serde_json::to_string(&r).expect("report serializes"));
            match r.minimal_failure() {
                None => Outcome::ok(stdout),
                Some(f) => Outcome {
                    code: EXIT_VERIFY_FAILED,
                    stdout,
                    stderr: format!(
                        "{} of {} cases failed; minimal counterexample: {} (n = {}, cutoff = {}): {}\n",
                        r.failures.len(),
                        r.cases,
                        f.case,
                        f.nvars,
                        f.cutoff,
                        f.detail
                    ),
                },
            }
        }
        Err(e) => match e.unstable_cutoff() {
            Some(c) => Outcome::fail(EXIT_UNSTABLE, format!("error: series did not stabilize (last cutoff tried: {c})")),
            None => Outcome::fail(EXIT_USAGE, format!("error: {e}")),
        },
    }
}
