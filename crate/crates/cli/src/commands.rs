use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use kiteforge::finalg::enumerate_flw;
use kiteforge::kite::checks::{self, omega_check};
use kiteforge::kite::homs::{embed_check, triangle_identity_check};
use kiteforge::kite::pprod::powerlemma_check;
use kiteforge::kite::Sampler;
use kiteforge::terms::{eval, parse_equation, parse_term, vee_neg_substitute, Equation};
use kiteforge::variety::{self, kv_join, kv_leq, kv_meet, KiteVarietyPoint, LabelLattice};
use kiteforge::{AlgebraError, CheckReport, FinFLw, KiteAlgebra, KiteError, NormalFilter, TermError, VarietyError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Kite(#[from] KiteError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error("{0}")]
    Usage(String),
}

pub enum Outcome {
    Pass,
    Fail,
}

impl From<bool> for Outcome {
    fn from(pass: bool) -> Outcome {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// Exact checks on finite FL_w-algebras and generalized kites.
///
/// Exit status: 0 pass, 1 fail or counterexample, 2 input error.
#[derive(Debug, Parser)]
#[command(name = "kiteforge", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KiteCheck {
    Axioms,
    Gamma,
    Omega,
    Symmetry,
    Commutativity,
    Perfect,
    DoubleTilde,
    Triangle,
    Notkite,
    Powerlemma,
    Embed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VarietyOp {
    Join,
    Meet,
    Leq,
    Dim,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra file; fails if the tables are not an FL_w-algebra.
    Validate { file: PathBuf },
    /// Enumerate all FL_w-algebras of the given size up to isomorphism.
    Enumerate {
        size: usize,
        /// Directory receiving one JSON file per algebra.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List all normal filters with the subdirectly irreducible quotients.
    Filters { file: PathBuf },
    /// Normal filter generated by a normal filter and one more element.
    Closure {
        file: PathBuf,
        /// Comma-separated members of a normal filter.
        #[arg(long)]
        filter: String,
        #[arg(long)]
        adjoin: String,
    },
    /// Decide perfectness and print the split into filter and ideal.
    Perfect { file: PathBuf },
    /// Check the three identities characterizing perfectly generated algebras.
    Perfgen { file: PathBuf },
    /// Run a sampled check on a kite.
    KiteCheck {
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum)]
        check: KiteCheck,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Turn off the boundary probes that lead every sample run.
        #[arg(long)]
        no_probes: bool,
        /// Index-set size for the power check.
        #[arg(long, default_value_t = 2)]
        index_size: usize,
    },
    /// Evaluate a term in an algebra file or a kite.
    Term {
        /// Algebra JSON file or kite spec.
        target: String,
        #[arg(long)]
        term: String,
        /// `name=value`, repeatable.
        #[arg(long = "assign")]
        assign: Vec<String>,
    },
    /// Check an equation: exhaustively on an algebra file, by sampling on a kite.
    Identity {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        eq: String,
        /// Replace every variable `x` by `x ∨ x⁻` first.
        #[arg(long)]
        relativize: bool,
        /// Required for kites.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Operations in the lattice of kite-generated varieties.
    Variety {
        #[arg(value_enum)]
        op: VarietyOp,
        /// Two points (`BA` or `(label,n)`) for join, meet and leq.
        args: Vec<String>,
        /// Kite or B-cycle specs for `dim`, comma separated.
        #[arg(long)]
        specs: Option<String>,
        /// Label lattice JSON file; defaults to the chain Ab < All.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> Result<FinFLw, CliError> {
    Ok(FinFLw::from_json(&read(path)?)?)
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("json values serialize"));
}

fn emit_report(r: &CheckReport) -> Outcome {
    println!("{}", r.to_json());
    r.passed().into()
}

fn names(alg: &FinFLw, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| alg.element_name(x)).collect()
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Enumerate { size, out } => enumerate(size, out.as_deref()),
        Command::Filters { file } => filters(&file),
        Command::Closure { file, filter, adjoin } => closure(&file, &filter, &adjoin),
        Command::Perfect { file } => perfect(&file),
        Command::Perfgen { file } => perfgen(&file),
        Command::KiteCheck {
            spec,
            check,
            seed,
            samples,
            no_probes,
            index_size,
        } => {
            let sampler = if no_probes {
                Sampler::default().without_probes()
            } else {
                Sampler::default()
            };
            kite_check(&spec, check, seed, samples, sampler, index_size)
        }
        Command::Term { target, term, assign } => term_cmd(&target, &term, &assign),
        Command::Identity {
            spec,
            eq,
            relativize,
            seed,
            samples,
        } => identity(&spec, &eq, relativize, seed, samples),
        Command::Variety { op, args, specs, labels } => variety_cmd(op, &args, specs.as_deref(), labels.as_deref()),
    }
}

fn validate(file: &Path) -> Result<Outcome, CliError> {
    let text = read(file)?;
    let tables: kiteforge::finalg::Tables =
        serde_json::from_str(&text).map_err(|e| CliError::Algebra(AlgebraError::Json(e.to_string())))?;
    match FinFLw::validate(&tables) {
        Ok(a) => {
            emit(&json!({"valid": true, "size": a.size(), "commutative": a.is_commutative()}));
            Ok(Outcome::Pass)
        }
        Err(e) => {
            emit(&json!({"valid": false, "error": e.to_string()}));
            Ok(Outcome::Fail)
        }
    }
}

fn enumerate(size: usize, out: Option<&Path>) -> Result<Outcome, CliError> {
    let algs = enumerate_flw(size)?;
    if let Some(dir) = out {
        let io = |source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        };
        fs::create_dir_all(dir).map_err(io)?;
        for (i, a) in algs.iter().enumerate() {
            let path = dir.join(format!("flw{size}_{i:04}.json"));
            fs::write(&path, a.to_json() + "\n").map_err(|source| CliError::Io { path, source })?;
        }
    }
    let hashes: Vec<String> = algs.iter().map(|a| a.canonical_hash()).collect();
    emit(&json!({"size": size, "count": algs.len(), "hashes": hashes}));
    Ok(Outcome::Pass)
}

fn filters(file: &Path) -> Result<Outcome, CliError> {
    let a = load(file)?;
    let mut list = Vec::new();
    for f in a.all_normal_filters() {
        let q = a.quotient(&f)?;
        list.push(json!({
            "members": names(&a, f.members()),
            "quotient_size": q.size(),
            "quotient_si": q.size() > 1 && q.is_subdirectly_irreducible(),
        }));
    }
    emit(&json!({"size": a.size(), "subdirectly_irreducible": a.is_subdirectly_irreducible(), "filters": list}));
    Ok(Outcome::Pass)
}

fn parse_elements(a: &FinFLw, list: &str) -> Result<Vec<usize>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| a.element(s).map_err(CliError::from))
        .collect()
}

fn closure(file: &Path, filter: &str, adjoin: &str) -> Result<Outcome, CliError> {
    let a = load(file)?;
    let f = NormalFilter::new(&a, &parse_elements(&a, filter)?)?;
    let x = a.element(adjoin.trim())?;
    let g = a.filter_closure(&f, x)?;
    emit(&json!({
        "filter": names(&a, f.members()),
        "adjoin": a.element_name(x),
        "closure": names(&a, g.members()),
        "total": g.len() == a.size(),
    }));
    Ok(Outcome::Pass)
}

fn perfect(file: &Path) -> Result<Outcome, CliError> {
    let a = load(file)?;
    match a.is_perfect() {
        Ok(Some(split)) => {
            emit(&json!({
                "perfect": true,
                "filter": names(&a, split.filter.members()),
                "ideal": names(&a, &split.ideal),
            }));
            Ok(Outcome::Pass)
        }
        Ok(None) => {
            emit(&json!({"perfect": false}));
            Ok(Outcome::Fail)
        }
        Err(AlgebraError::TrivialAlgebra) => {
            emit(&json!({"perfect": false, "reason": "trivial algebra has no map onto 2"}));
            Ok(Outcome::Fail)
        }
        Err(e) => Err(e.into()),
    }
}

fn perfgen(file: &Path) -> Result<Outcome, CliError> {
    let a = load(file)?;
    let failures = a.perfgen_failures();
    let map = |m: &Option<Vec<usize>>| m.as_ref().map(|v| names(&a, v));
    let identities: Vec<Value> = failures
        .iter()
        .enumerate()
        .map(|(i, f)| match f {
            None => json!({"identity": i + 1, "holds": true}),
            Some(w) => json!({
                "identity": i + 1,
                "holds": false,
                "witness": {
                    "alpha": map(&w.alpha),
                    "beta": map(&w.beta),
                    "x": a.element_name(w.x),
                    "y": w.y.map(|y| a.element_name(y)),
                },
            }),
        })
        .collect();
    let holds = failures.iter().all(Option::is_none);
    emit(&json!({
        "holds": holds,
        "identities": identities,
        "si_quotients_perfect": a.si_quotients_perfect()?,
    }));
    Ok(holds.into())
}

fn kite_check(
    spec: &str,
    check: KiteCheck,
    seed: u64,
    samples: u64,
    sampler: Sampler,
    index_size: usize,
) -> Result<Outcome, CliError> {
    let k: KiteAlgebra = spec.parse()?;
    let origin = || k.origin().cloned().ok_or(CliError::Kite(KiteError::NoBCycle));
    let report = match check {
        KiteCheck::Axioms => checks::check_axioms(&k, sampler, seed, samples),
        KiteCheck::Gamma => checks::gamma_iso_check(&k, sampler, seed, samples),
        KiteCheck::Omega => omega_check(&k, sampler, seed, samples),
        KiteCheck::Symmetry => checks::symmetry_check(&k, sampler, seed, samples),
        KiteCheck::Commutativity => checks::commutativity_check(&k, sampler, seed, samples),
        KiteCheck::Perfect => checks::perfect_witness(&k, sampler, seed, samples),
        KiteCheck::DoubleTilde => checks::double_tilde_check(&k, sampler, seed, samples),
        KiteCheck::Notkite => checks::not_kite_identity_check(&k, sampler, seed, samples),
        KiteCheck::Triangle => {
            let o = origin()?;
            triangle_identity_check(&o.cycle, &o.base, sampler, seed, samples)
        }
        KiteCheck::Embed => {
            let o = origin()?;
            embed_check(&o.cycle, &o.base, sampler, seed, samples)
        }
        KiteCheck::Powerlemma => {
            let o = origin()?;
            if index_size == 0 {
                return Err(CliError::Usage("--index-size must be positive".into()));
            }
            powerlemma_check(&o.cycle, &o.base, index_size, sampler, seed, samples)
        }
    };
    Ok(emit_report(&report))
}

enum Target {
    Finite(FinFLw),
    Kite(KiteAlgebra),
}

fn target(text: &str) -> Result<Target, CliError> {
    let t = text.trim();
    if t.starts_with("kite") {
        Ok(Target::Kite(t.parse()?))
    } else {
        Ok(Target::Finite(load(Path::new(t))?))
    }
}

fn term_cmd(target_text: &str, term: &str, assign: &[String]) -> Result<Outcome, CliError> {
    let mut pairs = Vec::new();
    for a in assign {
        let (name, value) = a
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("assignment `{a}` is not name=value")))?;
        pairs.push((name.trim().to_string(), value.trim().to_string()));
    }
    let vars: Vec<&str> = pairs.iter().map(|(n, _)| n.as_str()).collect();
    let t = parse_term(term, &vars)?;
    let value = match target(target_text)? {
        Target::Finite(a) => {
            let env = pairs
                .iter()
                .map(|(n, v)| Ok((n.clone(), a.element(v)?)))
                .collect::<Result<BTreeMap<_, _>, CliError>>()?;
            a.element_name(eval(&t, &a, &env)?)
        }
        Target::Kite(k) => {
            let env = pairs
                .iter()
                .map(|(n, v)| Ok((n.clone(), k.parse_element(v)?)))
                .collect::<Result<BTreeMap<_, _>, CliError>>()?;
            eval(&t, &k, &env)?.to_string()
        }
    };
    emit(&json!({"term": t.to_string(), "value": value}));
    Ok(Outcome::Pass)
}

/// Variables of an equation in order of first appearance in the text.
fn equation_vars(text: &str) -> Vec<String> {
    const RESERVED: [&str; 5] = ["meet", "join", "mul", "under", "over"];
    let mut out: Vec<String> = Vec::new();
    let mut word = String::new();
    for c in text.chars().chain(std::iter::once(' ')) {
        if c.is_alphanumeric() || c == '_' {
            word.push(c);
        } else {
            let w = std::mem::take(&mut word);
            let starts_alpha = w.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_');
            if starts_alpha && !RESERVED.contains(&w.as_str()) && !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out
}

/// Exhaustive check over every assignment of a finite algebra.
fn identity_finite(a: &FinFLw, eq: &Equation, seed: u64) -> Result<CheckReport, CliError> {
    let vars: Vec<String> = eq.variables().into_iter().collect();
    let n = a.size() as u64;
    let total = n
        .checked_pow(vars.len() as u32)
        .filter(|&t| t <= 50_000_000)
        .ok_or_else(|| CliError::Usage("too many assignments for an exhaustive check".into()))?;
    for idx in 0..total {
        let mut rest = idx;
        let mut env = BTreeMap::new();
        for v in &vars {
            env.insert(v.clone(), (rest % n) as usize);
            rest /= n;
        }
        let (l, r) = (eval(&eq.lhs, a, &env)?, eval(&eq.rhs, a, &env)?);
        if l != r {
            let assignment: BTreeMap<&String, String> = env.iter().map(|(k, &v)| (k, a.element_name(v))).collect();
            return Ok(CheckReport::fail(
                "identity",
                total,
                seed,
                json!({
                    "index": idx,
                    "equation": eq.to_string(),
                    "assignment": assignment,
                    "lhs": a.element_name(l),
                    "rhs": a.element_name(r),
                }),
            ));
        }
    }
    Ok(CheckReport::pass("identity", total, seed))
}

fn identity(spec: &str, eq: &str, relativize: bool, seed: Option<u64>, samples: u64) -> Result<Outcome, CliError> {
    let vars = equation_vars(eq);
    let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let eq = parse_equation(eq, &var_refs)?;
    let report = match target(spec)? {
        Target::Finite(a) => {
            let eq = if relativize {
                Equation::new(vee_neg_substitute(&eq.lhs), vee_neg_substitute(&eq.rhs))
            } else {
                eq
            };
            identity_finite(&a, &eq, seed.unwrap_or(0))?
        }
        Target::Kite(k) => {
            let seed = seed.ok_or_else(|| CliError::Usage("--seed is required for sampled checks".into()))?;
            checks::identity_check(&k, &eq, relativize, Sampler::default(), seed, samples)
        }
    };
    Ok(emit_report(&report))
}

/// Splits a comma-separated spec list, keeping commas that belong to a
/// `cycles:` list or sit inside braces.
fn split_specs(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for (i, c) in text.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                let rest = text[i + 1..].trim_start();
                if rest.starts_with("zn:") || rest.starts_with("cycles:") || rest.starts_with("kite") {
                    out.push(std::mem::take(&mut cur));
                    continue;
                }
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur);
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn variety_cmd(op: VarietyOp, args: &[String], specs: Option<&str>, labels: Option<&Path>) -> Result<Outcome, CliError> {
    let lat = match labels {
        Some(p) => LabelLattice::from_json(&read(p)?)?,
        None => LabelLattice::default(),
    };
    if op == VarietyOp::Dim {
        let list = match (specs, args.is_empty()) {
            (Some(s), true) => split_specs(s),
            (None, false) => args.to_vec(),
            _ => return Err(CliError::Usage("dim takes --specs or positional specs".into())),
        };
        let d = variety::dim_of_kite_family(&list)?;
        emit(&json!({"op": "dim", "specs": list, "result": d.0}));
        return Ok(Outcome::Pass);
    }
    let [x, y] = args else {
        return Err(CliError::Usage("join, meet and leq take two points".into()));
    };
    let (p, q) = (KiteVarietyPoint::parse(x, &lat)?, KiteVarietyPoint::parse(y, &lat)?);
    let (name, result) = match op {
        VarietyOp::Join => ("join", json!(kv_join(p, q, &lat)?.display(&lat))),
        VarietyOp::Meet => ("meet", json!(kv_meet(p, q, &lat)?.display(&lat))),
        VarietyOp::Leq => ("leq", json!(kv_leq(p, q, &lat)?)),
        VarietyOp::Dim => unreachable!("handled above"),
    };
    emit(&json!({"op": name, "args": [p.display(&lat), q.display(&lat)], "result": result}));
    Ok(Outcome::Pass)
}
