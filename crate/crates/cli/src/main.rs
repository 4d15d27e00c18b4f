use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mvideal::focal::{faugeras_matrix, joint_matrix, k_focal_ideal, k_focal_ideal_of, ma_matrix, rank_test_point};
use mvideal::multiview::{multiview_ideal, multiview_ideal_auto, verify, verify_all, Method, Outcome, TheoremId, VerifyOptions};
use mvideal::{Arrangement, Ideal, MonomialOrder, Polynomial, Rational, SymbolicMatrix, VarSet, VariableContext};

const SCHEMA: u32 = 1;

/// `println!` that tolerates a closed stdout, e.g. when piped into `head`.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "mvideal", version, about = "Exact ideals of multiview varieties")]
struct Cli {
    /// Monomial order used with --gb.
    #[arg(long, global = true, value_enum, default_value_t = Order::Degrevlex)]
    order: Order,
    /// Print the reduced Groebner basis instead of raw generators.
    #[arg(long, global = true)]
    gb: bool,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Degrevlex,
}

impl From<Order> for MonomialOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Lex => MonomialOrder::Lex,
            Order::Degrevlex => MonomialOrder::DegRevLex,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generators of the k-focal ideal.
    Focal {
        arrangement: PathBuf,
        #[arg(long)]
        k: usize,
        /// Restrict to one camera subset, 1-based, e.g. 1,2,3.
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<usize>>,
        /// Print minor counts instead of generators.
        #[arg(long)]
        counts: bool,
    },
    /// Dump a symbolic matrix.
    Matrix {
        arrangement: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
        /// Cameras of the joint matrix, 1-based (default all).
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<usize>>,
    },
    /// The multiview ideal.
    Multiview {
        arrangement: PathBuf,
        /// Default: focal_sum for distinct foci, elimination otherwise.
        #[arg(long)]
        method: Option<Method>,
    },
    /// Check a theorem on an arrangement.
    Verify {
        arrangement: PathBuf,
        /// A theorem id or `all`.
        #[arg(long)]
        thm: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        method: Option<Method>,
    },
    /// Rank test for a tuple of image points.
    CheckPoint {
        arrangement: PathBuf,
        /// E.g. '((1,2,3),(2,2,4))'.
        #[arg(long)]
        point: String,
    },
    /// Ideal operations on generator files.
    Ideal {
        #[command(subcommand)]
        op: IdealOp,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Joint,
    Faugeras,
    Ma,
}

#[derive(Args)]
struct Gens {
    /// Generator file: one polynomial per line, or a JSON list.
    file: PathBuf,
    /// Number of cameras (default: highest index in the file).
    #[arg(long)]
    cameras: Option<usize>,
}

#[derive(Subcommand)]
enum IdealOp {
    /// Is a polynomial in the ideal?
    Member {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        poly: String,
    },
    /// I : J, or I : m with --irrelevant.
    Colon {
        #[command(flatten)]
        gens: Gens,
        by: Option<PathBuf>,
        #[arg(long, conflicts_with = "by")]
        irrelevant: bool,
    },
    Intersect {
        #[command(flatten)]
        gens: Gens,
        other: PathBuf,
    },
    /// Eliminate the listed variables.
    Eliminate {
        #[command(flatten)]
        gens: Gens,
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
    },
    /// Set every z to 1.
    Dehom {
        #[command(flatten)]
        gens: Gens,
    },
    /// Reduced Groebner basis.
    Gb {
        #[command(flatten)]
        gens: Gens,
    },
}

/// Failure carrying its exit code.
struct Failure(u8, String);

impl<E: fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(2, e.to_string())
    }
}

type Run = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Run {
    match &cli.cmd {
        Cmd::Focal {
            arrangement,
            k,
            sigma,
            counts,
        } => focal(cli, &load(arrangement)?, *k, sigma.as_deref(), *counts),
        Cmd::Matrix { arrangement, which, sigma } => matrix(cli, &load(arrangement)?, *which, sigma.as_deref()),
        Cmd::Multiview { arrangement, method } => {
            let arr = load(arrangement)?;
            let ctx = arr.context()?;
            let m = match method {
                Some(m) => multiview_ideal(&arr, &ctx, *m)?,
                None => multiview_ideal_auto(&arr, &ctx)?,
            };
            let gens = if cli.gb { m.ideal.groebner(cli.order.into()).elements().to_vec() } else { m.ideal.minimal_generators() };
            emit(cli, json!({"method": m.method.to_string()}), &gens);
            Ok(0)
        }
        Cmd::Verify {
            arrangement,
            thm,
            seed,
            timings,
            method,
        } => verify_cmd(cli, &load(arrangement)?, thm, VerifyOptions { seed: *seed, timings: *timings, method: *method }),
        Cmd::CheckPoint { arrangement, point } => check_point(cli, &load(arrangement)?, point),
        Cmd::Ideal { op } => ideal(cli, op),
    }
}

fn load(path: &Path) -> Result<Arrangement, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    Ok(Arrangement::from_json(&text)?)
}

fn strings(gens: &[Polynomial]) -> Vec<String> {
    gens.iter().map(|g| g.canonical().to_string()).collect()
}

/// Prints generators one per line, or a JSON object with `extra` merged in.
fn emit(cli: &Cli, extra: Value, gens: &[Polynomial]) {
    if cli.json {
        let mut obj = json!({"schema": SCHEMA, "generators": strings(gens)});
        if let (Value::Object(o), Value::Object(e)) = (&mut obj, extra) {
            o.extend(e);
        }
        say!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
    } else {
        for g in strings(gens) {
            say!("{g}");
        }
    }
}

fn ideal_out(cli: &Cli, i: &Ideal) -> Vec<Polynomial> {
    if cli.gb {
        i.groebner(cli.order.into()).elements().to_vec()
    } else {
        i.generators().to_vec()
    }
}

fn zero_based(sigma: &[usize], n: usize) -> Result<Vec<usize>, Failure> {
    let mut out: Vec<usize> = Vec::new();
    for &s in sigma {
        if s == 0 || s > n || out.contains(&(s - 1)) {
            return Err(Failure(2, format!("invalid camera subset {sigma:?} for {n} cameras")));
        }
        out.push(s - 1);
    }
    out.sort_unstable();
    Ok(out)
}

fn focal(cli: &Cli, arr: &Arrangement, k: usize, sigma: Option<&[usize]>, counts: bool) -> Run {
    let ctx = arr.context()?;
    let h = match sigma {
        Some(s) => {
            let s = zero_based(s, arr.n())?;
            if s.len() != k {
                return Err(Failure(2, format!("--sigma has {} cameras but --k is {k}", s.len())));
            }
            k_focal_ideal_of(arr, &ctx, &s)?
        }
        None => k_focal_ideal(arr, &ctx, k)?,
    };
    if !counts {
        emit(cli, json!({"k": k}), &ideal_out(cli, &h.ideal));
        return Ok(0);
    }
    let mut by_distribution: BTreeMap<String, usize> = BTreeMap::new();
    let mut by_sigma: BTreeMap<String, usize> = BTreeMap::new();
    for g in &h.generators {
        let d: Vec<String> = g.distribution().iter().map(|c| c.to_string()).collect();
        *by_distribution.entry(format!("({})", d.join(","))).or_default() += 1;
        let s: Vec<String> = g.sigma.iter().map(|c| (c + 1).to_string()).collect();
        *by_sigma.entry(s.join(",")).or_default() += 1;
    }
    let nonzero = h.generators.len();
    if cli.json {
        let obj = json!({
            "schema": SCHEMA,
            "k": k,
            "candidates": h.candidates,
            "zero": h.zero,
            "nonzero": nonzero,
            "by_sigma": by_sigma,
            "by_distribution": by_distribution,
        });
        say!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
    } else {
        say!("candidates {}", h.candidates);
        say!("zero {}", h.zero);
        say!("nonzero {nonzero}");
        for (s, c) in &by_sigma {
            say!("sigma {s}: {c}");
        }
        for (d, c) in &by_distribution {
            say!("distribution {d}: {c}");
        }
    }
    Ok(0)
}

fn matrix(cli: &Cli, arr: &Arrangement, which: Which, sigma: Option<&[usize]>) -> Run {
    let ctx = arr.context()?;
    let m: SymbolicMatrix = match which {
        Which::Joint => {
            let s = match sigma {
                Some(s) => zero_based(s, arr.n())?,
                None => (0..arr.n()).collect(),
            };
            joint_matrix(arr, &ctx, &s)?.matrix
        }
        Which::Faugeras => faugeras_matrix(arr, &ctx)?,
        Which::Ma => ma_matrix(arr, &ctx)?,
    };
    let grid = m.to_strings();
    if cli.json {
        let obj = json!({"schema": SCHEMA, "rows": m.rows(), "cols": m.cols(), "entries": grid});
        say!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
    } else {
        for row in grid {
            say!("[{}]", row.join(", "));
        }
    }
    Ok(0)
}

fn verify_cmd(cli: &Cli, arr: &Arrangement, thm: &str, opts: VerifyOptions) -> Run {
    let all = thm == "all";
    let reports = if all {
        verify_all(arr, &opts)
    } else {
        let id: TheoremId = thm.parse()?;
        vec![verify(arr, id, &opts)]
    };
    if cli.json {
        let obj = json!({"schema": SCHEMA, "reports": reports});
        say!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
    } else {
        for r in &reports {
            say!("{}", r.render().trim_end());
        }
    }
    if reports.iter().any(|r| r.outcome == Outcome::Unexpected) {
        return Ok(1);
    }
    // Under `all`, theorems whose hypotheses fail are reported and skipped.
    if !all && reports.iter().any(|r| r.outcome == Outcome::PreconditionViolated) {
        return Ok(2);
    }
    Ok(0)
}

/// Parses `((1,2,3),(2,2,4))` into image points.
fn parse_points(s: &str) -> Result<Vec<Vec<Rational>>, Failure> {
    let bad = || Failure(2, format!("malformed point tuple `{s}`"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut inner = compact.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
    let single = format!("({inner})");
    if !inner.starts_with('(') {
        inner = &single;
    }
    let mut points = Vec::new();
    for part in inner.split("),") {
        let part = part.strip_prefix('(').ok_or_else(bad)?;
        let part = part.strip_suffix(')').unwrap_or(part);
        let coords: Vec<Rational> = part.split(',').map(str::parse).collect::<Result<_, _>>()?;
        points.push(coords);
    }
    Ok(points)
}

fn check_point(cli: &Cli, arr: &Arrangement, point: &str) -> Run {
    let pts = parse_points(point)?;
    let t = rank_test_point(arr, &pts)?;
    let kernel: Option<Vec<String>> = t.kernel.as_ref().map(|v| v.iter().map(|c| c.to_string()).collect());
    if cli.json {
        let obj = json!({"schema": SCHEMA, "member": t.member, "rank": t.rank, "kernel": kernel});
        say!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
    } else if t.member {
        say!("consistent image tuple");
        if let Some(k) = kernel {
            say!("kernel ({})", k.join(","));
        }
    } else {
        say!("not a consistent image tuple");
        say!("rank {}", t.rank);
    }
    Ok(0)
}

fn read_generators(path: &Path) -> Result<Vec<String>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return Ok(serde_json::from_str(trimmed)?);
    }
    if trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(trimmed)?;
        let gens = v.get("generators").cloned().ok_or_else(|| Failure(2, "JSON file has no `generators`".into()))?;
        return Ok(serde_json::from_value(gens)?);
    }
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

/// Highest camera index among the variable names in `text`.
fn cameras_in(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        let starts = matches!(b[i], b'x' | b'y' | b'z' | b'l') && (i == 0 || !b[i - 1].is_ascii_alphanumeric());
        if starts {
            let j = (i + 1..b.len()).find(|&j| !b[j].is_ascii_digit()).unwrap_or(b.len());
            if let Ok(v) = text[i + 1..j].parse::<usize>() {
                best = best.max(v);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

fn context_for(g: &Gens, texts: &[&[String]]) -> Result<Arc<VariableContext>, Failure> {
    let n = match g.cameras {
        Some(n) => n,
        None => texts.iter().flat_map(|t| t.iter()).map(|s| cameras_in(s)).max().unwrap_or(0),
    };
    Ok(VariableContext::new(n.max(1))?)
}

fn parse_ideal(ctx: &Arc<VariableContext>, gens: &[String]) -> Result<Ideal, Failure> {
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    Ok(Ideal::parse(ctx, &refs)?)
}

fn ideal(cli: &Cli, op: &IdealOp) -> Run {
    let (g, second) = match op {
        IdealOp::Colon { gens, by: Some(p), .. } => (gens, Some(read_generators(p)?)),
        IdealOp::Intersect { gens, other } => (gens, Some(read_generators(other)?)),
        IdealOp::Member { gens, .. }
        | IdealOp::Colon { gens, .. }
        | IdealOp::Eliminate { gens, .. }
        | IdealOp::Dehom { gens }
        | IdealOp::Gb { gens } => (gens, None),
    };
    let first = read_generators(&g.file)?;
    let mut texts: Vec<&[String]> = vec![&first];
    let poly_text;
    if let IdealOp::Member { poly, .. } = op {
        poly_text = vec![poly.clone()];
        texts.push(&poly_text);
    }
    if let Some(s) = &second {
        texts.push(s);
    }
    let ctx = context_for(g, &texts)?;
    let i = parse_ideal(&ctx, &first)?;
    let result = match op {
        IdealOp::Member { poly, .. } => {
            let f = Polynomial::parse(&ctx, poly)?;
            let member = i.member(&f)?;
            if cli.json {
                say!("{}", serde_json::to_string_pretty(&json!({"schema": SCHEMA, "member": member})).expect("serializable"));
            } else {
                say!("{member}");
            }
            return Ok(0);
        }
        IdealOp::Colon { irrelevant, .. } => match &second {
            Some(s) => i.colon(&parse_ideal(&ctx, s)?)?,
            None if *irrelevant => i.colon_irrelevant()?,
            None => return Err(Failure(2, "colon needs a second generator file or --irrelevant".into())),
        },
        IdealOp::Intersect { .. } => i.intersect(&parse_ideal(&ctx, second.as_ref().expect("read above"))?)?,
        IdealOp::Eliminate { vars, .. } => {
            let mut front = VarSet::empty();
            for v in vars {
                front.insert(ctx.parse_var(v.trim())?);
            }
            i.eliminate(front)
        }
        IdealOp::Dehom { .. } => i.dehomogenize(),
        IdealOp::Gb { .. } => {
            emit(cli, json!({}), i.groebner(cli.order.into()).elements());
            return Ok(0);
        }
    };
    emit(cli, json!({}), &ideal_out(cli, &result));
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_tuples() {
        let p = parse_points("((1,2,3), (2,2,4))").ok().unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[1][2], Rational::from_int(4));
        assert!(parse_points("(1,2,3)").ok().unwrap()[0].len() == 3);
        assert!(parse_points("1,2,3").is_err());
        assert_eq!(parse_points("((1/2,0,1))").ok().unwrap()[0][0], Rational::new(1, 2));
    }

    #[test]
    fn camera_count_from_names() {
        assert_eq!(cameras_in("x1*y12 − z3"), 12);
        assert_eq!(cameras_in("q0 + t"), 0);
        assert_eq!(cameras_in("l4*x2"), 4);
    }
}
