//! `extcrystal`: build elements of the extended crystal, apply Kashiwara and
//! braid operators, run verification suites and export crystal graphs.
//!
//! Exit status: 0 on success, 1 when a verification suite finds a failure,
//! 2 on usage, parse or I/O errors.

mod dot;
mod element;
mod ops;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use extcrystal_core::labels::{fundamental_elements, gamma};
use extcrystal_core::sample::{random_ext, rng};
use extcrystal_core::{BraidWord, ExtElt, FoldedCrystal, FoldingDatum};
use serde_json::{json, Value};

use element::Ctx;
use ops::Op;

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(name = "extcrystal", version, about = "Extended crystals of finite type and their braid group action")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Args, Clone)]
struct TypeArg {
    /// Cartan type such as A2, D4 or E6; defaults to the element's own type.
    #[arg(long = "type", short = 't')]
    ty: Option<String>,
}

#[derive(Args, Clone)]
struct ElementArg {
    /// Element JSON, `@file`, or `-` for stdin; defaults to the highest element.
    #[arg(long, short = 'e')]
    element: Option<String>,
}

#[derive(Args, Clone)]
struct SampleArgs {
    /// Base seed for all randomness.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Maximal length of random operator words.
    #[arg(long, default_value_t = 12)]
    depth: usize,
    /// Position window `lo,hi` for random elements.
    #[arg(long, default_value = "-3,3", value_parser = parse_window, allow_hyphen_values = true)]
    window: (i64, i64),
}

#[derive(Subcommand)]
enum Command {
    /// Print an element in canonical JSON, optionally a random one.
    Elem {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        element: ElementArg,
        /// Draw a random element instead of reading one.
        #[arg(long)]
        random: bool,
        #[command(flatten)]
        sample: SampleArgs,
        /// Also report weight, depth and the one-line text form.
        #[arg(long)]
        info: bool,
    },
    /// Apply operators left to right: `F i k`, `E i k`, `D p`, `zeta`, `R i`, `R' i`.
    Apply {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        element: ElementArg,
        /// Operators; several may share one argument separated by `;`.
        ops: Vec<String>,
    },
    /// Apply a braid word such as "1 2 1'" (prime is inverse, rightmost letter first).
    Braid {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        element: ElementArg,
        word: String,
    },
    /// Run randomized verification suites.
    Verify {
        #[command(flatten)]
        ty: TypeArg,
        /// One of the suite names, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[command(flatten)]
        sample: SampleArgs,
        /// Diagram automorphism for the folding suite, e.g. "1:3,3:1".
        #[arg(long)]
        sigma: Option<String>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Braid orbit of the fundamental elements in A2 with their affine labels.
    Orbit {
        #[arg(long, default_value_t = 12)]
        count: usize,
        #[arg(long)]
        json: bool,
    },
    /// Describe a folding and apply folded operators to a σ-fixed element.
    Fold {
        #[command(flatten)]
        ty: TypeArg,
        /// Diagram automorphism as `i:j` pairs; omitted nodes are fixed.
        #[arg(long)]
        sigma: Option<String>,
        #[command(flatten)]
        element: ElementArg,
        /// Folded operators; node indices refer to orbits.
        ops: Vec<String>,
    },
    /// Export the crystal graph around 1 in Graphviz format.
    ExportDot {
        #[command(flatten)]
        ty: TypeArg,
        /// Maximal number of boxes.
        #[arg(long, alias = "radius", default_value_t = 2)]
        depth: i64,
        /// Position window `lo,hi`.
        #[arg(long, default_value = "0,1", value_parser = parse_window, allow_hyphen_values = true)]
        window: (i64, i64),
    },
    /// Affine label of an A2 element.
    Labels {
        #[command(flatten)]
        element: ElementArg,
        #[arg(long)]
        json: bool,
    },
}

fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected `lo,hi`")?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad bound `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Resolves the crystal from `--type` or the element's `type` field, and
/// parses the element (the highest one when absent).
fn load(ty: &TypeArg, element: &ElementArg) -> Result<(Ctx, ExtElt)> {
    let json = element.element.as_deref().map(element::read_source).transpose()?;
    let value = json.as_deref().map(element::parse_json).transpose()?;
    let name = match (&ty.ty, value.as_ref().and_then(element::type_of)) {
        (Some(t), _) => t.clone(),
        (None, Some(t)) => t.to_string(),
        (None, None) => bail!("no Cartan type: pass --type or include \"type\" in the element"),
    };
    let ctx = Ctx::new(&name)?;
    let b = match &value {
        Some(v) => ctx.parse_value(v)?,
        None => ExtElt::highest(),
    };
    Ok((ctx, b))
}

fn render_json(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    } else {
        v.to_string()
    }
}

enum Outcome {
    Done(String),
    Failed(String),
}

fn run(cli: Cli) -> Result<Outcome> {
    let pretty = |v: &Value| render_json(v, cli.pretty);
    let text = match cli.command {
        Command::Elem { ty, element, random, sample, info } => {
            let (ctx, mut b) = load(&ty, &element)?;
            if random {
                eprintln!("seed: {}", sample.seed);
                b = random_ext(&ctx.ext, &mut rng(sample.seed), sample.depth, sample.window);
            }
            let mut v = ctx.to_json(&b);
            if info {
                v = json!({
                    "element": v,
                    "text": ctx.to_text(&b),
                    "weight": ctx.ext.weight(&b).coords(),
                    "depth": ctx.ext.depth(&b),
                    "support": b.support().map(|(lo, hi)| vec![lo, hi]),
                });
            }
            pretty(&v)
        }
        Command::Apply { ty, element, ops } => {
            let (ctx, mut b) = load(&ty, &element)?;
            for op in Op::parse_list(&ops, ctx.rank())? {
                b = op.apply(&ctx.ext, &b);
            }
            pretty(&ctx.to_json(&b))
        }
        Command::Braid { ty, element, word } => {
            let (ctx, b) = load(&ty, &element)?;
            let w = BraidWord::parse(ctx.rank(), &word).with_context(|| format!("braid word `{word}`"))?;
            pretty(&ctx.to_json(&ctx.ext.braid_apply(&w, &b)))
        }
        Command::Verify { ty, suite, samples, sample, sigma, json } => {
            let name = ty.ty.ok_or_else(|| anyhow!("verify needs --type"))?;
            let ctx = Ctx::new(&name)?;
            let params =
                verify::Params { samples, seed: sample.seed, depth: sample.depth, window: sample.window, sigma };
            let suites: Vec<&str> = if suite == "all" {
                let ty = ctx.ext.cartan().cartan_type();
                verify::SUITES
                    .iter()
                    .copied()
                    .filter(|s| match *s {
                        "oracle-agreement" => ctx.bridge.is_some(),
                        "folding" => params.sigma.is_some() || verify::default_sigma(ty).is_some(),
                        _ => true,
                    })
                    .collect()
            } else {
                vec![suite.as_str()]
            };
            let reports = suites.iter().map(|s| verify::run(&ctx, s, &params)).collect::<Result<Vec<_>>>()?;
            let passed = reports.iter().all(verify::Report::passed);
            let out = if json {
                pretty(&json!({
                    "seed": params.seed,
                    "passed": passed,
                    "reports": reports.iter().map(verify::Report::json).collect::<Vec<_>>(),
                }))
            } else {
                let lines: Vec<String> = reports.iter().map(verify::Report::text).collect();
                format!("seed {}\n{}", params.seed, lines.join("\n"))
            };
            return finish(cli.out, if passed { Outcome::Done(out) } else { Outcome::Failed(out) });
        }
        Command::Orbit { count, json } => {
            let ctx = Ctx::new("A2")?;
            let br = ctx.bridge.as_ref().expect("A2 is type A");
            let elems = fundamental_elements(&ctx.ext, count)?;
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for (n, b) in elems.iter().enumerate() {
                let label = gamma(br, b)?;
                lines.push(format!("{:>3}  {:<24} {label}", n + 1, ctx.to_text(b)));
                rows.push(json!({ "element": ctx.to_json(b), "label": label.to_string() }));
            }
            if json {
                pretty(&Value::Array(rows))
            } else {
                lines.join("\n")
            }
        }
        Command::Fold { ty, sigma, element, ops } => {
            let (ctx, mut b) = load(&ty, &element)?;
            let t = ctx.ext.cartan().cartan_type();
            let sigma = match sigma.or_else(|| verify::default_sigma(t)) {
                Some(s) => s,
                None => bail!("type {t} has no default folding; pass --sigma"),
            };
            let fd = FoldingDatum::new(t, FoldingDatum::parse_sigma(t.rank(), &sigma)?)?;
            let fc = FoldedCrystal::new(fd);
            if !fc.is_fixed(&b) {
                bail!("element is not fixed by sigma {sigma}");
            }
            for op in Op::parse_list(&ops, fc.datum().rank())? {
                b = op.apply_folded(&fc, &b);
            }
            let fd = fc.datum();
            let n = fd.rank();
            let exponents: Vec<Vec<u32>> =
                (0..n).map(|a| (0..n).map(|c| if a == c { 1 } else { fd.braid_exponent(a, c) }).collect()).collect();
            let orbits: Vec<Vec<usize>> = fd.orbits().iter().map(|o| o.iter().map(|i| i + 1).collect()).collect();
            let sigma_text: Vec<String> =
                fd.sigma().iter().enumerate().map(|(i, j)| format!("{}:{}", i + 1, j + 1)).collect();
            pretty(&json!({
                "folding": {
                    "source": t.to_string(),
                    "sigma": sigma_text.join(","),
                    "orbits": orbits,
                    "matrix": fd.matrix(),
                    "braid_exponents": exponents,
                    "folded_type": fd.folded_type(),
                },
                "element": ctx.to_json(&b),
            }))
        }
        Command::ExportDot { ty, depth, window } => {
            let name = ty.ty.ok_or_else(|| anyhow!("export-dot needs --type"))?;
            let ctx = Ctx::new(&name)?;
            dot::render(&ctx, &dot::ball(&ctx, depth, window))
        }
        Command::Labels { element, json } => {
            let (ctx, b) = load(&TypeArg { ty: Some("A2".into()) }, &element)?;
            let br = ctx.bridge.as_ref().expect("A2 is type A");
            let label = gamma(br, &b)?;
            if json {
                let triples: Vec<(u8, i64, u64)> = label.triples();
                pretty(&json!({ "label": label.to_string(), "pairs": triples }))
            } else {
                label.to_string()
            }
        }
    };
    finish(cli.out, Outcome::Done(text))
}

fn finish(out: Option<PathBuf>, outcome: Outcome) -> Result<Outcome> {
    let (Outcome::Done(text) | Outcome::Failed(text)) = &outcome;
    match out {
        Some(path) => {
            std::fs::write(&path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?
        }
        None => println!("{text}"),
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Done(_)) => ExitCode::SUCCESS,
        Ok(Outcome::Failed(_)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
