//! Command-line front end. Every subcommand prints one JSON document.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::balance::{is_balanced, BalanceReport};
use crate::distance::{
    classical_distance_matrix, completion_max, completion_min, distance_matrices, is_distance_compatible,
    Classification, VertexOrder,
};
use crate::error::Error;
use crate::format::{parse_graph, serialize, ParsedGraph};
use crate::gain::UnitGain;
use crate::matrix::HermitianMatrix;
use crate::spectra::{eigenvalues_hermitian, SPECTRAL_TOLERANCE};
use crate::structure::{block_compatibilities, is_two_connected};
use crate::weighted::{sachs_coefficients, weighted_adjacency};

/// Overrides the spectral comparison tolerance.
pub const TOLERANCE_ENV: &str = "GAINSPEC_TOL";

#[derive(Parser, Debug)]
#[command(name = "gainspec", version, about = "Balance, distance and spectral analysis of complex unit gain graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Balance and anti-balance verdicts with certificates
    Balance { file: String },
    /// Gain distance matrices under a vertex order
    Distmat {
        file: String,
        /// standard | reverse | perm=<1-based comma separated permutation>
        #[arg(long, default_value = "standard")]
        order: String,
    },
    /// Distance compatibility verdict, witness and class
    Compat { file: String },
    /// Eigenvalues of the (weighted) adjacency or gain distance matrix
    Spectrum {
        file: String,
        #[arg(long)]
        distance: bool,
    },
    /// Characteristic polynomial coefficients from elementary subgraphs
    Sachs { file: String },
    /// Blocks, cut vertices and per-block compatibility
    Blocks { file: String },
    /// Complete graph carrying the auxiliary gains on non-edges
    Complete {
        file: String,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value = "standard")]
        order: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Max,
    Min,
}

/// What a run produced; `main` forwards it to the process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Loop(_)
        | Error::DuplicateEdge(..)
        | Error::NonUnitGain { .. }
        | Error::NonPositiveWeight(_)
        | Error::VertexOutOfRange { .. } => 2,
        Error::Precondition(_) | Error::Disconnected | Error::TooLarge { .. } | Error::PathExplosion { .. } => 3,
        _ => 1,
    }
}

/// Runs one command line (`args[0]` is the program name). `stdin` backs the file name `-`.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let tol = match tolerance() {
        Ok(t) => t,
        Err(m) => return Outcome::fail(2, m),
    };
    match execute(cli.command, tol, stdin) {
        Ok(out) => Outcome::ok(out),
        Err(Failure::Usage(m)) => Outcome::fail(2, m),
        Err(Failure::Io(m)) => Outcome::fail(1, m),
        Err(Failure::Lib(e)) => Outcome::fail(exit_code(&e), e),
    }
}

fn tolerance() -> Result<f64, String> {
    match std::env::var(TOLERANCE_ENV) {
        Err(_) => Ok(SPECTRAL_TOLERANCE),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(format!("{TOLERANCE_ENV}={s:?} is not a positive number")),
        },
    }
}

fn load(file: &str, stdin: &mut dyn Read) -> Result<ParsedGraph, Failure> {
    let mut text = String::new();
    if file == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::Io(format!("reading standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(file).map_err(|e| Failure::Io(format!("{file}: {e}")))?;
    }
    Ok(parse_graph(&text)?)
}

fn parse_order(spec: &str, n: usize) -> Result<VertexOrder, Failure> {
    match spec {
        "standard" => Ok(VertexOrder::standard(n)),
        "reverse" => Ok(VertexOrder::reverse(n)),
        _ => {
            let list = spec
                .strip_prefix("perm=")
                .ok_or_else(|| Failure::Usage(format!("unknown order {spec:?}")))?;
            let perm = list
                .split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Failure::Usage(format!("bad vertex {t:?} in permutation"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if perm.len() != n {
                return Err(Failure::Usage(format!("permutation has {} entries, graph has {n} vertices", perm.len())));
            }
            VertexOrder::from_perm(perm).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

// adding zero turns -0.0 into 0.0
fn real(x: f64) -> Value {
    json!(x + 0.0)
}

fn reals(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| real(x)).collect())
}

fn complex(z: Complex64) -> Value {
    json!([z.re + 0.0, z.im + 0.0])
}

fn gain(g: UnitGain) -> Value {
    complex(g.value())
}

/// Lower triangle written as the conjugate of the upper one, diagonal real.
fn matrix(m: &HermitianMatrix) -> Value {
    let n = m.order();
    let rows: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array(
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Less => complex(m.get(i, j)),
                        std::cmp::Ordering::Equal => complex(Complex64::new(m.get(i, i).re, 0.0)),
                        std::cmp::Ordering::Greater => complex(m.get(j, i).conj()),
                    })
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn one_based(vs: &[usize]) -> Value {
    json!(vs.iter().map(|v| v + 1).collect::<Vec<_>>())
}

fn execute(command: Command, tol: f64, stdin: &mut dyn Read) -> Result<String, Failure> {
    let value = match command {
        Command::Balance { file } => {
            let parsed = load(&file, stdin)?;
            let g = parsed.graph();
            let report = |r: BalanceReport| match r {
                BalanceReport::Balanced { switching } => {
                    (true, Value::Null, json!(switching.values().iter().map(|&z| gain(z)).collect::<Vec<_>>()))
                }
                BalanceReport::Unbalanced(c) => (
                    false,
                    json!({ "cycle": one_based(&c.cycle), "gain": gain(c.gain) }),
                    Value::Null,
                ),
            };
            let (balanced, certificate, switching) = report(is_balanced(g)?);
            let (antibalanced, anti_certificate, _) = report(is_balanced(&g.negated())?);
            json!({
                "balanced": balanced,
                "antibalanced": antibalanced,
                "certificate": certificate,
                "antibalance_certificate": anti_certificate,
                "switching": switching,
            })
        }
        Command::Distmat { file, order } => {
            let parsed = load(&file, stdin)?;
            let g = parsed.graph();
            let order = parse_order(&order, g.order())?;
            let dm = distance_matrices(g, &order)?;
            json!({
                "order": one_based(order.perm()),
                "dmax": matrix(&dm.dmax),
                "dmin": matrix(&dm.dmin),
                "classical": matrix(&classical_distance_matrix(g)?),
            })
        }
        Command::Compat { file } => {
            let parsed = load(&file, stdin)?;
            let g = parsed.graph();
            let compat = is_distance_compatible(g)?;
            let class = Classification::of(g)?;
            let (witness, witness_gains) = match &compat.witness {
                Some(w) => (
                    json!([w.s + 1, w.t + 1]),
                    json!(w.gains.iter().map(|&z| gain(z)).collect::<Vec<_>>()),
                ),
                None => (Value::Null, Value::Null),
            };
            json!({
                "compatible": compat.compatible,
                "witness": witness,
                "witness_gains": witness_gains,
                "class": class.class.to_string(),
                "balanced": class.balanced,
                "antibalanced": class.antibalanced,
                "geodetic": class.geodetic,
                "order_independent": class.order_independent,
                "distance_matrix": compat.matrix.as_ref().map(matrix).unwrap_or(Value::Null),
            })
        }
        Command::Spectrum { file, distance } => {
            let parsed = load(&file, stdin)?;
            let (kind, m) = if distance {
                let g = parsed.graph();
                ("distance_max", distance_matrices(g, &VertexOrder::standard(g.order()))?.dmax)
            } else {
                match &parsed {
                    ParsedGraph::Plain(g) => ("adjacency", g.adjacency()),
                    ParsedGraph::Weighted(wg) => ("weighted_adjacency", weighted_adjacency(wg)),
                }
            };
            let spec = eigenvalues_hermitian(&m)?;
            json!({
                "matrix": kind,
                "eigenvalues": reals(spec.values()),
                "spectral_radius": real(spec.spectral_radius()),
                "tolerance": tol,
            })
        }
        Command::Sachs { file } => {
            let parsed = load(&file, stdin)?;
            let expansion = sachs_coefficients(&parsed.weighted())?;
            json!({
                "coefficients": reals(&expansion.coefficients),
                "term_counts": expansion.term_counts(),
            })
        }
        Command::Blocks { file } => {
            let parsed = load(&file, stdin)?;
            let g = parsed.graph();
            let (dec, verdicts) = block_compatibilities(g)?;
            let blocks: Vec<Value> = dec
                .blocks
                .iter()
                .zip(&verdicts)
                .map(|(b, &c)| {
                    let (_, vertices) = g.edge_subgraph(b);
                    let edges: Vec<Value> = b
                        .iter()
                        .map(|&k| json!([g.edges()[k].u + 1, g.edges()[k].v + 1]))
                        .collect();
                    json!({ "vertices": one_based(&vertices), "edges": edges, "compatible": c })
                })
                .collect();
            json!({
                "blocks": blocks,
                "cut_vertices": one_based(&dec.cut_vertices),
                "two_connected": is_two_connected(g)?,
                "blockwise_compatible": verdicts.iter().all(|&c| c),
                "compatible": is_distance_compatible(g)?.compatible,
            })
        }
        Command::Complete { file, which, order } => {
            let parsed = load(&file, stdin)?;
            let g = parsed.graph();
            let order = parse_order(&order, g.order())?;
            let k = match which {
                Which::Max => completion_max(g, &order)?,
                Which::Min => completion_min(g, &order)?,
            };
            return Ok(serialize(&k));
        }
    };
    let mut out = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    out.push('\n');
    Ok(out)
}
