//! The `lpa` command line.
//!
//! Every subcommand produces a [`Report`]. Exit codes: 0 ok, 1 a check failed
//! or a certificate was refused, 2 the input could not be used.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::af::{acyclic_structure, bratteli_diagram, level_algebra, zero_component_dim_check};
use crate::diagram::{certify_cstar_pullback, pullback_at_level, square_commutes};
use crate::files::{load_diagram, load_hom, read_text};
use crate::grading::Action;
use crate::graph::{Graph, GraphSpec};
use crate::hom::{level_analysis, AlgebraRef, Flag};
use crate::lpa::LaurentElement;
use crate::parse::parse_raw;
use crate::report::{digest, Format, Report, Status};
use crate::rewrite::RewriteOrder;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "lpa",
    version,
    about = "Exact computation in Leavitt path algebras"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct AlgebraArgs {
    /// Graph file.
    graph: PathBuf,
    /// Work in L(E)[t, t^-1] instead of L(E).
    #[arg(long)]
    laurent: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a graph file and classify its vertices.
    Validate { graph: PathBuf },
    /// Normal form of an expression.
    Reduce {
        #[command(flatten)]
        alg: AlgebraArgs,
        expr: String,
        /// Rewrite redexes in a random order drawn from this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Product of two expressions.
    Mul {
        #[command(flatten)]
        alg: AlgebraArgs,
        left: String,
        right: String,
    },
    /// Canonical basis monomials up to a weight.
    Basis {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        weight: usize,
        /// Restrict to one degree.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Homogeneous components of an expression.
    Grade {
        #[command(flatten)]
        alg: AlgebraArgs,
        expr: String,
    },
    /// Degree-zero expectation of an expression.
    Expect {
        #[command(flatten)]
        alg: AlgebraArgs,
        expr: String,
    },
    /// Level algebra of the degree-zero core with a brute-force dimension check.
    Afcore {
        graph: PathBuf,
        #[arg(long, default_value_t = 6)]
        levels: usize,
    },
    /// Bratteli data of the degree-zero core.
    Bratteli {
        graph: PathBuf,
        #[arg(long, default_value_t = 6)]
        levels: usize,
    },
    /// Check that a homomorphism file defines a *-homomorphism.
    Homcheck { hom: PathBuf },
    /// Injectivity and surjectivity of a homomorphism on weight truncations.
    Levelcheck {
        hom: PathBuf,
        #[arg(long, default_value_t = 6)]
        levels: usize,
    },
    /// Degreewise pullback check of a diagram at each level.
    Pullback {
        diagram: PathBuf,
        #[arg(long, default_value_t = 6)]
        levels: usize,
        /// Degree window |d| <= D (defaults to the level).
        #[arg(long)]
        degrees: Option<usize>,
    },
    /// Hypothesis certificate for the C*-completed square.
    Certify {
        diagram: PathBuf,
        #[arg(long, default_value_t = 6)]
        levels: usize,
        /// Use the trivial group instead of the gauge circle.
        #[arg(long)]
        trivial_action: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Reduce { .. } => "reduce",
            Command::Mul { .. } => "mul",
            Command::Basis { .. } => "basis",
            Command::Grade { .. } => "grade",
            Command::Expect { .. } => "expect",
            Command::Afcore { .. } => "afcore",
            Command::Bratteli { .. } => "bratteli",
            Command::Homcheck { .. } => "homcheck",
            Command::Levelcheck { .. } => "levelcheck",
            Command::Pullback { .. } => "pullback",
            Command::Certify { .. } => "certify",
        }
    }
}

/// Result of one invocation: rendered output and exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    pub report: Option<Report>,
}

fn color_enabled() -> bool {
    std::env::var("LPA_COLOR").is_ok_and(|v| v == "1")
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                    report: None,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                    report: None,
                }
            };
        }
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    let report = execute(&cli.command);
    Outcome {
        stdout: report.emit(format, color_enabled()),
        stderr: String::new(),
        code: report.exit_code(),
        report: Some(report),
    }
}

/// Input failure, reported with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Step = Result<(Status, String, Value), InputError>;

/// File inputs and literal arguments of a command.
fn inputs(cmd: &Command) -> (&Path, String) {
    match cmd {
        Command::Validate { graph } => (graph, String::new()),
        Command::Reduce { alg, expr, seed } => {
            (&alg.graph, format!("{}|{expr}|{seed:?}", alg.laurent))
        }
        Command::Mul { alg, left, right } => {
            (&alg.graph, format!("{}|{left}|{right}", alg.laurent))
        }
        Command::Basis {
            alg,
            weight,
            degree,
        } => (&alg.graph, format!("{}|{weight}|{degree:?}", alg.laurent)),
        Command::Grade { alg, expr } | Command::Expect { alg, expr } => {
            (&alg.graph, format!("{}|{expr}", alg.laurent))
        }
        Command::Afcore { graph, levels } | Command::Bratteli { graph, levels } => {
            (graph, levels.to_string())
        }
        Command::Homcheck { hom } => (hom, String::new()),
        Command::Levelcheck { hom, levels } => (hom, levels.to_string()),
        Command::Pullback {
            diagram,
            levels,
            degrees,
        } => (diagram, format!("{levels}|{degrees:?}")),
        Command::Certify {
            diagram,
            levels,
            trivial_action,
        } => (diagram, format!("{levels}|{trivial_action}")),
    }
}

/// Digest of the command name, input file contents and literal arguments.
/// Graph files referenced from hom and diagram files are not included.
fn inputs_digest(cmd: &Command) -> String {
    let (path, literals) = inputs(cmd);
    let contents = std::fs::read(path).unwrap_or_else(|_| path.display().to_string().into_bytes());
    digest([cmd.name().as_bytes(), &contents, literals.as_bytes()])
}

fn execute(cmd: &Command) -> Report {
    let name = cmd.name();
    let dig = inputs_digest(cmd);
    let step = match cmd {
        Command::Validate { graph } => validate(graph),
        Command::Reduce { alg, expr, seed } => reduce(alg, expr, *seed),
        Command::Mul { alg, left, right } => mul(alg, left, right),
        Command::Basis {
            alg,
            weight,
            degree,
        } => basis(alg, *weight, *degree),
        Command::Grade { alg, expr } => grade(alg, expr),
        Command::Expect { alg, expr } => expect(alg, expr),
        Command::Afcore { graph, levels } => afcore(graph, *levels),
        Command::Bratteli { graph, levels } => bratteli(graph, *levels),
        Command::Homcheck { hom } => homcheck(hom),
        Command::Levelcheck { hom, levels } => levelcheck(hom, *levels),
        Command::Pullback {
            diagram,
            levels,
            degrees,
        } => pullback(diagram, *levels, *degrees),
        Command::Certify {
            diagram,
            levels,
            trivial_action,
        } => certify(diagram, *levels, *trivial_action),
    };
    match step {
        Ok((status, summary, payload)) => Report::new(name, dig, status, summary, payload),
        Err(InputError(msg)) => Report::error(name, dig, msg),
    }
}

fn load_graph(path: &Path) -> Result<Arc<Graph>, InputError> {
    let text = read_text(path)?;
    Ok(Arc::new(GraphSpec::from_json(&text)?.validate()?))
}

fn algebra(args: &AlgebraArgs) -> Result<AlgebraRef, InputError> {
    let g = load_graph(&args.graph)?;
    Ok(if args.laurent {
        AlgebraRef::laurent(g)?
    } else {
        AlgebraRef::plain(g)
    })
}

fn parse_in(alg: &AlgebraRef, src: &str) -> Result<LaurentElement, InputError> {
    Ok(alg.parse(src)?)
}

fn ok(summary: String, payload: Value) -> Step {
    Ok((Status::Ok, summary, payload))
}

fn validate(path: &Path) -> Step {
    let g = load_graph(path)?;
    let payload = json!({
        "name": g.name(),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "kinds": g.classify_vertices(),
        "acyclic": g.is_acyclic(),
    });
    ok(
        format!(
            "valid graph with {} vertices and {} edges",
            g.vertex_count(),
            g.edge_count()
        ),
        payload,
    )
}

fn reduce(args: &AlgebraArgs, expr: &str, seed: Option<u64>) -> Step {
    let alg = algebra(args)?;
    let order = seed.map_or(RewriteOrder::Leftmost, RewriteOrder::Seeded);
    let x = parse_raw(alg.graph(), expr, alg.is_laurent())?.normalize(order);
    let nf = x.to_string();
    ok(
        nf.clone(),
        json!({"input": expr, "normal_form": nf, "terms": x.len(), "seed": seed}),
    )
}

fn mul(args: &AlgebraArgs, left: &str, right: &str) -> Step {
    let alg = algebra(args)?;
    let p = &parse_in(&alg, left)? * &parse_in(&alg, right)?;
    ok(
        p.to_string(),
        json!({"left": left, "right": right, "product": p.to_string()}),
    )
}

fn basis(args: &AlgebraArgs, weight: usize, degree: Option<i64>) -> Step {
    let alg = algebra(args)?;
    let g = alg.graph().clone();
    let monos = match degree {
        Some(d) => alg.basis_at_weight_degree(weight, d),
        None => alg.basis_at_weight(weight),
    };
    let names: Vec<String> = monos
        .iter()
        .map(|m| LaurentElement::from_monomial(g.clone(), m.clone()).to_string())
        .collect();
    ok(
        format!("{} basis monomials", names.len()),
        json!({"weight": weight, "degree": degree, "count": names.len(), "monomials": names}),
    )
}

fn parts(alg: &AlgebraRef, x: &LaurentElement) -> BTreeMap<i64, LaurentElement> {
    let mut out: BTreeMap<i64, Vec<_>> = BTreeMap::new();
    for (m, c) in x.terms() {
        out.entry(alg.degree(m))
            .or_default()
            .push((c.clone(), m.clone()));
    }
    out.into_iter()
        .map(|(d, t)| (d, LaurentElement::from_terms(x.graph().clone(), t)))
        .collect()
}

fn grade(args: &AlgebraArgs, expr: &str) -> Step {
    let alg = algebra(args)?;
    let x = parse_in(&alg, expr)?;
    let ps = parts(&alg, &x);
    let homogeneous = if ps.len() == 1 {
        ps.keys().next().copied()
    } else {
        None
    };
    let table: BTreeMap<String, String> = ps
        .iter()
        .map(|(d, p)| (d.to_string(), p.to_string()))
        .collect();
    let summary = match homogeneous {
        Some(d) => format!("homogeneous of degree {d}"),
        None if x.is_zero() => "zero".into(),
        None => format!("{} homogeneous parts", ps.len()),
    };
    ok(
        summary,
        json!({"input": expr, "parts": table, "homogeneous_degree": homogeneous}),
    )
}

fn expect(args: &AlgebraArgs, expr: &str) -> Step {
    let alg = algebra(args)?;
    let x = parse_in(&alg, expr)?;
    let e = parts(&alg, &x)
        .remove(&0)
        .unwrap_or_else(|| LaurentElement::zero(alg.graph().clone()));
    ok(
        e.to_string(),
        json!({"input": expr, "expectation": e.to_string()}),
    )
}

fn afcore(path: &Path, levels: usize) -> Step {
    let g = load_graph(path)?;
    let level = level_algebra(&g, levels);
    let check = zero_component_dim_check(&g, levels);
    let acyclic = acyclic_structure(&g).ok();
    let status = if check.matches {
        Status::Ok
    } else {
        Status::Failed
    };
    Ok((
        status,
        format!(
            "level {levels}: dim {} (brute force {})",
            check.formula, check.brute
        ),
        json!({"level": level, "dim_check": check, "acyclic_structure": acyclic}),
    ))
}

fn bratteli(path: &Path, levels: usize) -> Step {
    let g = load_graph(path)?;
    let b = bratteli_diagram(&g, levels.max(1));
    let status = if b.is_consistent() {
        Status::Ok
    } else {
        Status::Failed
    };
    let sizes: Vec<Vec<u128>> = b.levels.iter().map(|l| l.sizes()).collect();
    Ok((
        status,
        format!("{} levels, sizes {sizes:?}", b.levels.len()),
        b.to_json(),
    ))
}

fn flag(f: Flag) -> &'static str {
    match f {
        Flag::Unset => "unset",
        Flag::Verified => "verified",
        Flag::Failed => "failed",
    }
}

fn homcheck(path: &Path) -> Step {
    let h = load_hom(path)?;
    let wd = h.well_defined();
    let payload = json!({
        "domain": h.domain().describe(),
        "codomain": h.codomain().describe(),
        "images": h.image_table(),
        "well_defined": flag(wd),
        "graded": flag(h.graded()),
        "failed_relations": h.failed_relations(),
        "expansion_bound": h.expansion_bound(),
    });
    let (status, summary) = if wd == Flag::Verified {
        (
            Status::Ok,
            format!("well defined, graded: {}", flag(h.graded())),
        )
    } else {
        (
            Status::Failed,
            format!("{} relations fail", h.failed_relations().len()),
        )
    };
    Ok((status, summary, payload))
}

fn levelcheck(path: &Path, levels: usize) -> Step {
    let h = load_hom(path)?;
    if h.well_defined() != Flag::Verified {
        return Ok((
            Status::Failed,
            "not a *-homomorphism".into(),
            json!({"failed_relations": h.failed_relations()}),
        ));
    }
    let mut rows = Vec::new();
    for n in 0..=levels {
        let la = level_analysis(&h, n)?;
        rows.push(json!({
            "n": n, "bound": la.bound, "domain_dim": la.domain_basis.len(), "rank": la.rank,
            "injective": la.injective_at_n, "surjective": la.surjective_at_n,
        }));
    }
    let inj = rows.iter().all(|r| r["injective"] == true);
    let surj = rows.iter().all(|r| r["surjective"] == true);
    ok(
        format!("injective: {inj}, surjective: {surj} at levels <= {levels}"),
        json!({"levels": rows}),
    )
}

fn pullback(path: &Path, levels: usize, degrees: Option<usize>) -> Step {
    let dg = load_diagram(path)?;
    let mut records = Vec::new();
    let mut all = true;
    for n in 0..=levels {
        let lv = match pullback_at_level(&dg, n, degrees) {
            Ok(lv) => lv,
            Err(e) => {
                let commutes = square_commutes(&dg).ok();
                return Ok((Status::Failed, e.to_string(), json!({"commutes": commutes})));
            }
        };
        all &= lv.pass;
        records.push(serde_json::to_value(&lv).expect("plain data"));
    }
    let status = if all { Status::Ok } else { Status::Failed };
    let summary = if all {
        format!("pullback at levels <= {levels}")
    } else {
        "not a pullback".into()
    };
    Ok((status, summary, json!({"levels": records})))
}

fn certify(path: &Path, levels: usize, trivial: bool) -> Step {
    let dg = load_diagram(path)?;
    let action = if trivial {
        Action::Trivial
    } else {
        Action::Gauge
    };
    let cert = match certify_cstar_pullback(&dg, levels, action) {
        Ok(c) => c,
        Err(e) => return Ok((Status::Failed, format!("refused: {e}"), Value::Null)),
    };
    let status = if cert.verdict.is_certified() {
        Status::Ok
    } else {
        Status::Failed
    };
    Ok((
        status,
        cert.verdict.summary(),
        serde_json::to_value(&cert).expect("plain data"),
    ))
}
