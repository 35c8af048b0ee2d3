use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use hcone::cholesky::{membership_report, Side, Tolerances};
use hcone::chordal::{ChordalAlgebra, PatternMatrix};
use hcone::faces::minimal_face;
use hcone::matrixnorm::{self, MatrixNormElement};
use hcone::scalar::round_significant;
use hcone::talgebra::check_axioms;
use hcone::{BigradedElement, Error, Graph, IndexSet, Rational, Scalar, TAlgebra};
use serde_json::{json, Map, Value};

/// Homogeneous cones of chordal PSD patterns and matrix-norm cones:
/// factorization, faces, completion and facial reduction.
///
/// An ALGEBRA is either a graph JSON file or the three words
/// `matrixnorm M N`. Exit status: 0 on success, 1 on error (2 for usage
/// errors), 3 when a residual exceeds its tolerance.
#[derive(Parser, Debug)]
#[command(name = "hcone", version)]
struct Cli {
    /// Pivots up to this times max(1, trace) count as zero.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_zero: f64,
    /// Relative reconstruction tolerance.
    #[arg(long, global = true, default_value_t = 1e-7)]
    tol_rec: f64,
    /// Exact rational arithmetic instead of f64.
    #[arg(long, global = true)]
    exact: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Print one JSON document instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a graph is homogeneous chordal (trivially perfect).
    Recognize { graph: PathBuf },
    /// Print a trivially perfect elimination ordering.
    Order { graph: PathBuf },
    /// Proper triangular factor of a point: ALGEBRA MATRIX.
    Factor {
        #[arg(required = true, num_args = 2..=4, value_name = "ALGEBRA MATRIX")]
        inputs: Vec<String>,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// Certificate of the minimal face containing a point: ALGEBRA MATRIX.
    Face {
        #[arg(required = true, num_args = 2..=4, value_name = "ALGEBRA MATRIX")]
        inputs: Vec<String>,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// PSD completion of a partial matrix on a graph pattern.
    #[command(group(ArgGroup::new("mode").required(true).args(["max_rank", "max_det"])))]
    Complete {
        graph: PathBuf,
        matrix: PathBuf,
        #[arg(long)]
        max_rank: bool,
        #[arg(long)]
        max_det: bool,
    },
    /// Facial reduction of `{"point": P, "matrices": [A, ...]}`, where P
    /// lies in the relative interior of the face of the PSD pattern cone.
    Reduce {
        graph: PathBuf,
        instance: PathBuf,
        /// Map the matrices as constraint data, preserving inner products
        /// with points of the face.
        #[arg(long)]
        data: bool,
    },
    /// Check the T-algebra axioms on seeded random samples.
    CheckAxioms {
        #[arg(required = true, num_args = 1..=3, value_name = "ALGEBRA")]
        inputs: Vec<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SideArg {
    Primal,
    Dual,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Primal => Side::Primal,
            SideArg::Dual => Side::Dual,
        }
    }
}

/// Command output and whether every checked residual was within tolerance.
struct Report {
    body: Value,
    ok: bool,
}

impl Report {
    fn ok(body: Value) -> Self {
        Report { body, ok: true }
    }
}

enum Source {
    Graph(PathBuf),
    MatrixNorm(usize, usize),
}

/// Splits `inputs` into an algebra source and the remaining arguments.
fn split_source(inputs: &[String]) -> Result<(Source, &[String])> {
    match inputs.first().map(String::as_str) {
        Some("matrixnorm") => {
            ensure!(inputs.len() >= 3, "expected `matrixnorm M N`");
            let dim = |s: &str| s.parse::<usize>().with_context(|| format!("bad dimension {s:?}"));
            Ok((Source::MatrixNorm(dim(&inputs[1])?, dim(&inputs[2])?), &inputs[3..]))
        }
        Some(path) => Ok((Source::Graph(PathBuf::from(path)), &inputs[1..])),
        None => bail!("missing algebra"),
    }
}

fn one_file(rest: &[String]) -> Result<PathBuf> {
    match rest {
        [f] => Ok(PathBuf::from(f)),
        _ => bail!("expected exactly one matrix file after the algebra"),
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    serde_json::from_value(read_json(path)?).with_context(|| format!("reading a graph from {}", path.display()))
}

/// The algebra a command runs in, with conversions between its elements
/// and their JSON forms in user-facing labels.
enum Algebra<S> {
    Chordal(ChordalAlgebra<S>),
    Norm { alg: TAlgebra<S>, n: usize },
}

impl<S: Scalar> Algebra<S> {
    fn load(source: &Source) -> Result<Self> {
        Ok(match source {
            Source::Graph(p) => Algebra::Chordal(ChordalAlgebra::new(&read_graph(p)?)?),
            Source::MatrixNorm(m, n) => Algebra::Norm { alg: matrixnorm::build_instance(*m, *n)?, n: *n },
        })
    }

    fn alg(&self) -> &TAlgebra<S> {
        match self {
            Algebra::Chordal(ca) => ca.alg(),
            Algebra::Norm { alg, .. } => alg,
        }
    }

    /// The PSD pattern cone for graphs, the matrix-norm cone otherwise.
    fn default_side(&self) -> Side {
        match self {
            Algebra::Chordal(_) => Side::Dual,
            Algebra::Norm { .. } => Side::Primal,
        }
    }

    /// Pattern-matrix or matrix-norm JSON; bigraded `components` JSON is
    /// accepted for either.
    fn parse_point(&self, v: &Value) -> Result<BigradedElement<S>> {
        if v.get("components").is_some() {
            return Ok(BigradedElement::from_json(v, self.alg())?);
        }
        Ok(match self {
            Algebra::Chordal(ca) => ca.to_element(&PatternMatrix::from_json(v, ca.graph())?)?,
            Algebra::Norm { alg, n } => {
                let x = MatrixNormElement::<S>::from_json(v)?;
                ensure!(
                    x.m() + 1 == alg.rank() && x.n() == *n,
                    "matrix has blocks for ({}, {}) but the algebra is ({}, {n})",
                    x.m(),
                    x.n(),
                    alg.rank() - 1
                );
                x.to_element(alg)?
            }
        })
    }

    /// Dense row-major matrix for graphs, block form for matrix-norm.
    fn render(&self, e: &BigradedElement<S>) -> Value {
        match self {
            Algebra::Chordal(ca) => ca.element_to_dense(e).to_json(),
            Algebra::Norm { n, .. } => MatrixNormElement::from_element(e, *n).to_json(),
        }
    }

    /// 1-based labels (original vertex labels for graphs).
    fn labels(&self, s: IndexSet) -> Vec<usize> {
        match self {
            Algebra::Chordal(ca) => ca.to_original_set(s).labels(),
            Algebra::Norm { .. } => s.labels(),
        }
    }
}

fn num(v: f64) -> Value {
    json!(round_significant(v))
}

fn cmd_recognize(path: &Path) -> Result<Report> {
    let g = read_graph(path)?;
    Ok(Report::ok(match g.trivially_perfect_ordering() {
        Ok(ord) => json!({"homogeneous_chordal": true, "ordering": ord}),
        Err(Error::NotHomogeneousChordal { witness, kind }) => json!({
            "homogeneous_chordal": false,
            "witness": {"kind": kind.to_string(), "vertices": witness},
        }),
        Err(e) => return Err(e.into()),
    }))
}

fn cmd_order(path: &Path) -> Result<Report> {
    let ord = read_graph(path)?.trivially_perfect_ordering()?;
    Ok(Report::ok(serde_json::to_value(ord)?))
}

fn cmd_factor<S: Scalar>(inputs: &[String], side: Option<SideArg>, tol: &Tolerances) -> Result<Report> {
    let (source, rest) = split_source(inputs)?;
    let algebra = Algebra::<S>::load(&source)?;
    let x = algebra.parse_point(&read_json(&one_file(rest)?)?)?;
    let side = side.map_or(algebra.default_side(), Side::from);
    let report = membership_report(algebra.alg(), &x, side, tol)?;
    let factor = report.decomposition.factor(algebra.alg())?;
    Ok(Report {
        body: json!({
            "side": side,
            "t": algebra.render(factor.t.elem()),
            "zero_set": algebra.labels(factor.zero_set),
            "residual": num(report.residual),
        }),
        ok: report.membership.is_member(),
    })
}

fn cmd_face<S: Scalar>(inputs: &[String], side: Option<SideArg>, tol: &Tolerances) -> Result<Report> {
    let (source, rest) = split_source(inputs)?;
    let algebra = Algebra::<S>::load(&source)?;
    let x = algebra.parse_point(&read_json(&one_file(rest)?)?)?;
    let side = side.map_or(algebra.default_side(), Side::from);
    let cert = minimal_face(algebra.alg(), &x, side, tol)?;
    let r = &cert.residuals;
    let scale = S::max_of(S::one(), x.max_abs()).to_f64_lossy();
    let bound = if S::EXACT { 0.0 } else { tol.rec * scale };
    let ok = r.reconstruction <= tol.rec
        && [r.solve, r.canonical, r.exposing_inner, r.projection_idempotent].iter().all(|v| *v <= bound);
    let residuals = json!({
        "reconstruction": num(r.reconstruction),
        "solve": num(r.solve),
        "canonical": num(r.canonical),
        "exposing_inner": num(r.exposing_inner),
        "projection_idempotent": num(r.projection_idempotent),
    });
    Ok(Report {
        body: json!({
            "I": algebra.labels(cert.zero_set()),
            "u": algebra.render(cert.u.elem()),
            "v": algebra.render(&cert.projection),
            "exposing": algebra.render(&cert.exposing),
            "face_rank": cert.face_rank,
            "residuals": residuals,
        }),
        ok,
    })
}

fn cmd_complete<S: Scalar>(graph: &Path, matrix: &Path, max_det: bool, tol: &Tolerances) -> Result<Report> {
    let ca = ChordalAlgebra::<S>::new(&read_graph(graph)?)?;
    let x = PatternMatrix::<S>::from_json(&read_json(matrix)?, ca.graph())?;
    let (completion, extra) = if max_det {
        let c = ca.max_det_completion(&x, tol)?;
        let extra = json!({
            "inverse": c.inverse.to_json(),
            "determinant": c.determinant.to_json(),
            "certificate": num(c.certificate),
        });
        (c.completion, Some((extra, c.certificate)))
    } else {
        (ca.max_rank_completion(&x, tol)?, None)
    };
    let n = ca.n();
    let mut residual = S::zero();
    for i in 0..n {
        for j in 0..n {
            if i == j || ca.graph().has_edge(i + 1, j + 1) {
                residual = S::max_of(residual, (completion.w[(i, j)].clone() - x.value(i, j).clone()).abs());
            }
        }
    }
    let residual = residual.to_f64_lossy();
    let scale = S::max_of(S::one(), x.dense().max_abs()).to_f64_lossy();
    let bound = if S::EXACT { 0.0 } else { tol.rec * scale };
    let mut body = json!({"w": completion.w.to_json(), "rank": completion.rank, "residual": num(residual)});
    let mut ok = residual <= bound;
    if let Some((extra, certificate)) = extra {
        body.as_object_mut().expect("object").extend(extra.as_object().expect("object").clone());
        ok &= certificate <= bound;
    }
    Ok(Report { body, ok })
}

fn cmd_reduce<S: Scalar>(graph: &Path, instance: &Path, data: bool, tol: &Tolerances) -> Result<Report> {
    let ca = ChordalAlgebra::<S>::new(&read_graph(graph)?)?;
    let inst = read_json(instance)?;
    let point = inst.get("point").context("instance needs a \"point\"")?;
    let point = PatternMatrix::<S>::from_json(point, ca.graph())?;
    let matrices = inst
        .get("matrices")
        .and_then(Value::as_array)
        .context("instance needs a \"matrices\" array")?
        .iter()
        .map(|m| PatternMatrix::from_json(m, ca.graph()))
        .collect::<hcone::Result<Vec<_>>>()?;
    let cert = ca.minimal_face(&point, Side::Dual, tol)?;
    let red = if data { ca.congruence_reduce_data(&cert, &matrices)? } else { ca.congruence_reduce(&cert, &matrices)? };
    let bound = if S::EXACT { 0.0 } else { tol.rec * S::max_of(S::one(), point.dense().max_abs()).to_f64_lossy() };
    let r = &cert.residuals;
    let ok = r.reconstruction <= tol.rec && r.solve.max(r.canonical).max(r.exposing_inner) <= bound;
    Ok(Report {
        body: json!({
            "I": ca.to_original_set(cert.zero_set()).labels(),
            "kept": red.kept,
            "graph": red.subgraph,
            "matrices": red.matrices.iter().map(|m| m.matrix.to_json()).collect::<Vec<_>>(),
            "dropped_mass": red.matrices.iter().map(|m| num(m.dropped_mass)).collect::<Vec<_>>(),
            "certificate_residual": num(r.max()),
        }),
        ok,
    })
}

fn cmd_check_axioms<S: Scalar>(inputs: &[String], samples: usize, seed: u64, tol: &Tolerances) -> Result<Report> {
    let (source, rest) = split_source(inputs)?;
    ensure!(rest.is_empty(), "unexpected arguments after the algebra: {rest:?}");
    let algebra = Algebra::<S>::load(&source)?;
    let report = check_axioms(algebra.alg(), samples, seed, if S::EXACT { 0.0 } else { tol.rec });
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "axiom": e.axiom,
                "max_violation": num(e.max_violation),
                "witness": e.witness,
                "passed": e.passed,
            })
        })
        .collect();
    Ok(Report { ok: report.all_passed(), body: Value::Array(entries) })
}

fn run<S: Scalar>(cli: &Cli, tol: &Tolerances) -> Result<Report> {
    match &cli.command {
        Command::Recognize { graph } => cmd_recognize(graph),
        Command::Order { graph } => cmd_order(graph),
        Command::Factor { inputs, side } => cmd_factor::<S>(inputs, *side, tol),
        Command::Face { inputs, side } => cmd_face::<S>(inputs, *side, tol),
        Command::Complete { graph, matrix, max_det, .. } => cmd_complete::<S>(graph, matrix, *max_det, tol),
        Command::Reduce { graph, instance, data } => cmd_reduce::<S>(graph, instance, *data, tol),
        Command::CheckAxioms { inputs, samples } => cmd_check_axioms::<S>(inputs, *samples, cli.seed, tol),
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

/// `key: value` lines for objects, one line per element for arrays.
fn render_text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                out.push_str(&format!("{k}: {}\n", compact(v)));
            }
        }
        Value::Array(items) => {
            for item in items {
                let line = match item.as_object() {
                    Some(map) => fields(map),
                    None => compact(item),
                };
                out.push_str(&line);
                out.push('\n');
            }
        }
        other => {
            out.push_str(&compact(other));
            out.push('\n');
        }
    }
    out
}

fn fields(map: &Map<String, Value>) -> String {
    map.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = Tolerances { zero: cli.tol_zero, rec: cli.tol_rec };
    let result = if !(tol.zero > 0.0 && tol.rec > 0.0) {
        Err(anyhow::anyhow!("tolerances must be positive"))
    } else if cli.exact {
        run::<Rational>(&cli, &tol)
    } else {
        run::<f64>(&cli, &tol)
    };
    match result {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.body).expect("JSON values serialize"));
            } else {
                print!("{}", render_text(&report.body));
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("residual exceeds tolerance");
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
