use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use qwreath::checks::{self, Budget, Status};
use qwreath::modules::{KmsVariant, TensorSpace, WreathModule};
use qwreath::qwp::{Algebra, Flavor, QwpElt, QwpMono};
use qwreath::schur::{
    expansion_to_json, perm_module_expand, schur_compose, schur_from_json, schur_to_json, theta_build,
    theta_decompose,
};
use qwreath::symgroup::all_perms;
use qwreath::{Error, Params};

#[derive(Parser, Debug)]
#[command(name = "qwreath", version, about = "Exact arithmetic in quantum wreath products of skew polynomial type")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    #[arg(long, global = true, default_value_t = 5)]
    q: u64,
    #[arg(long, global = true, default_value_t = 1)]
    n: u64,
    #[arg(long, global = true, default_value_t = 0)]
    k: u64,
    #[arg(long, global = true, default_value_t = 2)]
    d: usize,
    #[arg(long = "N", global = true, default_value_t = 1)]
    big_n: usize,
    /// Exponent `j` with `ξ = ζ_n^j`.
    #[arg(long, global = true, default_value_t = 1)]
    xi: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// JSON file whose keys override the flags above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Algebra flavor; defaults to the flavor recorded in the input, else the one the parameters select.
    #[arg(long, global = true, value_enum)]
    flavor: Option<FlavorArg>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FlavorArg {
    Skew,
    Yokonuma,
    AffineHecke,
    Coarse,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of an element.
    Nf { input: String },
    /// Product of two elements.
    Mul { left: String, right: String },
    /// Right action of an algebra element on a tensor-space or wreath-module vector.
    Act { vector: String, element: String },
    /// Build `θ_{A,P}`.
    SchurBuild {
        /// Matrix as JSON, e.g. `[[1,1],[2,0]]`.
        #[arg(long)]
        matrix: String,
        /// Base element `P`; defaults to 1.
        #[arg(long)]
        p: Option<String>,
    },
    /// Compose two Schur elements `f ∘ g`.
    SchurCompose { f: String, g: String },
    /// Permutation-module expansion of a Schur element, optionally with its θ decomposition.
    SchurExpand {
        input: String,
        #[arg(long)]
        decompose: bool,
    },
    /// Run named checks, or the default suite with `--all`.
    Verify {
        names: Vec<String>,
        #[arg(long)]
        all: bool,
        /// Write one JSON report per line to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print JSON reports instead of the summary table.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        exp_bound: Option<i32>,
    },
    /// Multiplication table over a basis window, as CSV.
    Table {
        /// Laurent exponents range over `[-window, window]` lattice steps.
        #[arg(long, default_value_t = 0)]
        window: i32,
        /// Include the torus generators `t_j` besides `1`.
        #[arg(long)]
        torus: bool,
    },
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    q: Option<u64>,
    n: Option<u64>,
    k: Option<u64>,
    d: Option<usize>,
    #[serde(rename = "N")]
    big_n: Option<usize>,
    xi_exp: Option<u64>,
    seed: Option<u64>,
    budget: Option<Budget>,
}

/// Resolved invocation settings.
struct Config {
    params: Params,
    seed: u64,
    budget: Budget,
    flavor: Option<FlavorArg>,
}

#[derive(Debug)]
enum Failure {
    Checks,
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn resolve(g: &GlobalArgs) -> Result<Config, Failure> {
    let file = match &g.config {
        None => ConfigFile::default(),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("config: {e}")))?
        }
    };
    let params = Params::new(
        file.q.unwrap_or(g.q),
        file.n.unwrap_or(g.n),
        file.k.unwrap_or(g.k),
        file.d.unwrap_or(g.d),
        file.big_n.unwrap_or(g.big_n),
    )?
    .with_xi_exp(file.xi_exp.unwrap_or(g.xi))?;
    Ok(Config { params, seed: file.seed.unwrap_or(g.seed), budget: file.budget.unwrap_or_default(), flavor: g.flavor })
}

/// Reads JSON from a file path, `-` for stdin, or an inline document.
fn read_json(arg: &str) -> Result<Value, Failure> {
    let text = if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(e.to_string()))?;
        s
    } else if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{arg}: {e}")))
}

fn algebra_for(cfg: &Config, doc: Option<&Value>) -> Result<Algebra, Failure> {
    let p = &cfg.params;
    let flavor = match cfg.flavor {
        Some(FlavorArg::Skew) => Flavor::Skew { n: p.n, k: p.k },
        Some(FlavorArg::Yokonuma) => Flavor::Yokonuma { k: p.k },
        Some(FlavorArg::AffineHecke) => Flavor::AffineHecke,
        Some(FlavorArg::Coarse) => Flavor::Coarse { step: p.n_bar() },
        None => match doc.and_then(|d| d.get("flavor")) {
            Some(f) => serde_json::from_value(f.clone()).map_err(|e| Failure::Input(format!("flavor: {e}")))?,
            None => return Ok(Algebra::from_params(p)?),
        },
    };
    Ok(Algebra::new(p, flavor)?)
}

fn emit(v: &Value) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, v).map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(out).map_err(|e| Failure::Input(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = resolve(&cli.global)?;
    match cli.command {
        Command::Nf { input } => {
            let doc = read_json(&input)?;
            let alg = algebra_for(&cfg, Some(&doc))?;
            emit(&alg.to_json(&alg.from_json(&doc)?))
        }
        Command::Mul { left, right } => {
            let (a, b) = (read_json(&left)?, read_json(&right)?);
            let alg = algebra_for(&cfg, Some(&a))?;
            let prod = alg.mul(&alg.from_json(&a)?, &alg.from_json(&b)?);
            emit(&alg.to_json(&prod))
        }
        Command::Act { vector, element } => {
            let (v, h) = (read_json(&vector)?, read_json(&element)?);
            let alg = algebra_for(&cfg, Some(&h))?;
            let h = alg.from_json(&h)?;
            if v.get("specht").is_some() {
                let (module, b) = WreathModule::from_json(&alg, &v)?;
                emit(&module.to_json(&module.act(&b, &h)))
            } else {
                let level = match v.get("level") {
                    Some(l) => l.as_i64().ok_or_else(|| Failure::Input(format!("level {l}")))?,
                    None => cfg.params.big_n as i64,
                };
                let variant = match v.get("variant").and_then(Value::as_str) {
                    None | Some("sign") => KmsVariant::Sign,
                    Some("trivial") => KmsVariant::Trivial,
                    Some(other) => return Err(Failure::Input(format!("variant {other:?}"))),
                };
                let space = TensorSpace::new(&alg, level, variant)?;
                emit(&space.to_json(&space.act(&space.from_json(&v)?, &h)))
            }
        }
        Command::SchurBuild { matrix, p } => {
            let alg = algebra_for(&cfg, None)?;
            let a: Vec<Vec<usize>> =
                serde_json::from_value(read_json(&matrix)?).map_err(|e| Failure::Input(format!("matrix: {e}")))?;
            let p = match p {
                Some(p) => alg.base_from_json(&read_json(&p)?)?,
                None => alg.base.one(),
            };
            emit(&schur_to_json(&alg, &theta_build(&alg, &a, &p)?))
        }
        Command::SchurCompose { f, g } => {
            let (fd, gd) = (read_json(&f)?, read_json(&g)?);
            let alg = algebra_for(&cfg, fd.get("value"))?;
            let c = schur_compose(&alg, &schur_from_json(&alg, &fd)?, &schur_from_json(&alg, &gd)?)?;
            emit(&schur_to_json(&alg, &c))
        }
        Command::SchurExpand { input, decompose } => {
            let doc = read_json(&input)?;
            let alg = algebra_for(&cfg, doc.get("value"))?;
            let s = schur_from_json(&alg, &doc)?;
            let exp = perm_module_expand(&alg, &s.target, &s.value)?;
            let mut out = json!({"lambda": s.target.0, "expansion": expansion_to_json(&alg, &exp)});
            if decompose {
                let terms: Vec<Value> = theta_decompose(&alg, &s)?
                    .iter()
                    .map(|t| json!({"A": t.matrix, "P": alg.base_to_json(&t.p), "c": alg.base_to_json(&t.c)}))
                    .collect();
                out["theta"] = Value::Array(terms);
            }
            emit(&out)
        }
        Command::Verify { names, all, report, json, samples, exp_bound } => {
            let mut budget = cfg.budget.clone();
            if let Some(s) = samples {
                budget.samples = s;
            }
            if let Some(b) = exp_bound {
                budget.exp_bound = b;
            }
            let jobs: Vec<(String, Params)> = if all {
                checks::default_jobs()
            } else if names.is_empty() {
                return Err(Failure::Input("name at least one check, or pass --all".into()));
            } else {
                names.iter().map(|n| (n.clone(), cfg.params.clone())).collect()
            };
            verify(&jobs, &budget, cfg.seed, report, json)
        }
        Command::Table { window, torus } => table(&cfg, window, torus),
    }
}

fn verify(jobs: &[(String, Params)], budget: &Budget, seed: u64, report: Option<PathBuf>, json: bool) -> Result<(), Failure> {
    let results = checks::run_suite(jobs, budget, seed);
    let mut lines = Vec::new();
    let mut failed = false;
    let mut stdout = io::stdout().lock();
    for r in results {
        let r = r?;
        failed |= r.status == Status::Fail;
        let line = r.to_json_line();
        if json {
            writeln!(stdout, "{line}").map_err(|e| Failure::Input(e.to_string()))?;
        } else {
            writeln!(stdout, "{}", checks::summary_line(&r)).map_err(|e| Failure::Input(e.to_string()))?;
            for note in &r.notes {
                writeln!(stdout, "    note: {note}").map_err(|e| Failure::Input(e.to_string()))?;
            }
        }
        lines.push(line);
    }
    if let Some(path) = report {
        let mut text = lines.join("\n");
        text.push('\n');
        fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    if failed {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}

fn table(cfg: &Config, window: i32, torus: bool) -> Result<(), Failure> {
    let alg = algebra_for(cfg, None)?;
    let d = alg.d();
    let base = &alg.base;
    let mut torus_part = vec![vec![0i64; d]];
    if torus && base.torus > 1 {
        for j in 0..d {
            let mut t = vec![0; d];
            t[j] = 1;
            torus_part.push(t);
        }
    }
    let mut lattice = vec![vec![]];
    for _ in 0..d {
        lattice = lattice
            .into_iter()
            .flat_map(|v: Vec<i32>| {
                (-window..=window).map(move |e| {
                    let mut w = v.clone();
                    w.push(e * base.step);
                    w
                })
            })
            .collect();
    }
    let mut basis: Vec<QwpElt> = Vec::new();
    for w in all_perms(d) {
        for t in &torus_part {
            for x in &lattice {
                basis.push(QwpElt::term(QwpMono { w: w.clone(), b: base.mono(t, x) }, alg.ring().one()));
            }
        }
    }
    let label = |e: &QwpElt| -> String {
        let (k, _) = e.iter().next().expect("basis element");
        json!({"w": k.w.one_line(), "t": k.b.t, "x": k.b.x}).to_string()
    };
    let mut out = csv::Writer::from_writer(io::stdout().lock());
    let io_err = |e: csv::Error| Failure::Input(e.to_string());
    out.write_record(["row_basis", "col_basis", "coeff_json"]).map_err(io_err)?;
    for r in &basis {
        for c in &basis {
            let prod = alg.mul(r, c);
            let terms = alg.to_json(&prod)["terms"].to_string();
            out.write_record([label(r), label(c), terms]).map_err(io_err)?;
        }
    }
    out.flush().map_err(|e| Failure::Input(e.to_string()))
}
