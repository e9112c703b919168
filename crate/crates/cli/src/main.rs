//! `latalg`: check, represent and transform finite-dimensional lattice
//! algebras stored as JSON spec files.
//!
//! Reports go to stdout, diagnostics to stderr. Exit codes: 0 when every
//! requested check holds, 1 when a check fails or an operation rejects its
//! input on mathematical grounds, 2 when the input cannot be read or parsed.

mod report;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latalg::constructions::{self, GalleryName, IdealOptions};
use latalg::representation::{self, MartignonSolutions};
use latalg::sparse_seq::{self, SparseSeq, UnitPrefix};
use latalg::{algebra, format, lattice, sampling, scalar, AlgebraSpec, Element, Functional, Scalar};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Rejected(String),
}

impl From<latalg::Error> for CliError {
    fn from(e: latalg::Error) -> Self {
        match e {
            latalg::Error::InvalidInput(_) | latalg::Error::BadParameter(_) | latalg::Error::DimensionMismatch { .. } => {
                CliError::Input(e.to_string())
            }
            other => CliError::Rejected(other.to_string()),
        }
    }
}

type CliResult<T = bool> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "latalg", version, about = "Finite-dimensional lattice algebra workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Positive,
    Associative,
    Submultiplicative,
    Identity,
    IdentityNormOne,
    FAlgebra,
    AlmostFAlgebra,
    AmNorm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProductKind {
    Star,
    Ast,
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom battery on a spec file.
    Check {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Checks that decide the exit code.
        #[arg(long, value_delimiter = ',', default_values = ["positive", "associative", "submultiplicative", "f-algebra"])]
        require: Vec<Check>,
    },
    /// Represent an AM-algebra with unit as a pointwise algebra.
    Represent { path: PathBuf },
    /// Glue a constraint-defined subalgebra of R^m into a function algebra.
    Quotient { path: PathBuf },
    /// Build an alternative product on a unital spec.
    AltProduct {
        path: PathBuf,
        #[arg(long, value_enum)]
        kind: ProductKind,
        /// Point evaluation index for the left factor (star, 1-based).
        #[arg(long)]
        alpha: Option<usize>,
        /// Point evaluation index for the right factor (star, 1-based).
        #[arg(long)]
        beta: Option<usize>,
        /// Functional coefficients, comma separated (ast).
        #[arg(long)]
        phi: Option<String>,
        /// Element coordinates, comma separated (ast).
        #[arg(long)]
        x0: Option<String>,
        /// Write the new spec here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve for every positive product on R^n with identity (1, ..., 1).
    Martignon { n: usize },
    /// List or emit the built-in example specs.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
    /// Exercise approximate units and disjointness in finitely supported sequences.
    DemoSparse {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GalleryAction {
    List,
    /// Print the canonical spec file of a gallery entry.
    Emit {
        name: String,
        n: Option<usize>,
        #[arg(long)]
        weights: Option<String>,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: latalg::Error) -> CliError {
    match e {
        latalg::Error::InvalidInput(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => CliError::Input(format!("{}: {other}", path.display())),
    }
}

fn load_spec(path: &Path) -> CliResult<AlgebraSpec> {
    format::parse_spec(&read(path)?).map_err(|e| located(path, e))
}

fn rationals(arg: &str, what: &str) -> CliResult<Vec<Scalar>> {
    arg.split(',')
        .map(|s| scalar::parse_lenient(s.trim()).ok_or_else(|| CliError::Input(format!("{what}: cannot parse {s:?}"))))
        .collect()
}

fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("reports serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn check(path: &Path, seed: u64, require: &[Check]) -> CliResult {
    let a = load_spec(path)?;
    let r = algebra::check_axioms(&a);
    let am = lattice::is_am_norm(a.norm());
    let mut out = report::axioms(&r);
    out["am_norm"] = match &am {
        lattice::AmVerdict::Holds => json!({ "holds": true, "tag": "am_space_norm" }),
        lattice::AmVerdict::Fails { x, y } => json!({
            "holds": false,
            "tag": "am_space_norm",
            "witness": { "x": report::element(x), "y": report::element(y) },
        }),
    };
    out["am_classification"] = report::am_classification(&representation::classify_am_algebra(&a));
    if r.identity_norm_one && r.positive_product.holds() && r.associative.holds() {
        let opts = IdealOptions { seed, ..IdealOptions::default() };
        out["ideal"] = match constructions::ideal_ae(&a, &opts) {
            Ok(ideal) => report::ideal(&ideal),
            Err(e) => json!({ "tag": "order_unit_ideal_norm", "error": e.to_string() }),
        };
    }
    let f = r.f_classification.as_ref();
    let failed: Vec<String> = require
        .iter()
        .filter(|c| {
            !match c {
                Check::Positive => r.positive_product.holds(),
                Check::Associative => r.associative.holds(),
                Check::Submultiplicative => r.submultiplicative.holds(),
                Check::Identity => r.identity.is_some(),
                Check::IdentityNormOne => r.identity_norm_one,
                Check::FAlgebra => f.is_some_and(|f| f.f_algebra.holds()),
                Check::AlmostFAlgebra => f.is_some_and(|f| f.almost_f_algebra.holds()),
                Check::AmNorm => am.holds(),
            }
        })
        .filter_map(|c| c.to_possible_value().map(|v| v.get_name().to_owned()))
        .collect();
    out["required_failures"] = json!(failed);
    print(&out);
    for name in &failed {
        eprintln!("check failed: {name}");
    }
    Ok(failed.is_empty())
}

fn represent(path: &Path) -> CliResult {
    let a = load_spec(path)?;
    let classification = report::am_classification(&representation::classify_am_algebra(&a));
    let r = representation::represent_am_unit(&a)?;
    let target = AlgebraSpec::new(r.target_norm(), r.transported.clone())?;
    print(&json!({
        "tag": "am_algebra_representation",
        "scaling": r.scaling.iter().map(report::rational).collect::<Vec<_>>(),
        "pointwise": r.is_pointwise,
        "transported": report::spec(&target),
        "classification": classification,
    }));
    Ok(r.is_pointwise)
}

fn quotient(path: &Path) -> CliResult {
    let text = read(path)?;
    let cs = format::parse_constraints(&text).map_err(|e| located(path, e))?;
    let forced = representation::forced_zero_coordinates(&cs);
    if let Some(w) = representation::subalgebra_check(&cs).witness() {
        print(&json!({
            "subalgebra": false,
            "forced_zeros": report::indices(&forced),
            "witness": {
                "left": report::element(&w.left),
                "right": report::element(&w.right),
                "product": report::element(&w.product),
            },
        }));
        return Err(CliError::Rejected("the constraint set is not closed under products".into()));
    }
    let q = representation::quotient_representation(&cs)?;
    let mut out = report::quotient(&q);
    out["subalgebra"] = json!(true);
    out["forced_zeros"] = report::indices(&forced);
    print(&out);
    Ok(true)
}

fn index_arg(v: Option<usize>, name: &str, dim: usize) -> CliResult<usize> {
    match v {
        Some(i) if (1..=dim).contains(&i) => Ok(i - 1),
        Some(i) => Err(CliError::Input(format!("--{name} {i} is outside 1..={dim}"))),
        None => Err(CliError::Input(format!("--{name} is required for this kind"))),
    }
}

fn alt_product(
    path: &Path,
    kind: ProductKind,
    alpha: Option<usize>,
    beta: Option<usize>,
    phi: Option<&str>,
    x0: Option<&str>,
    out: Option<&Path>,
) -> CliResult {
    let a = load_spec(path)?;
    let d = a.dim();
    let (tensor, checks, mut body) = match kind {
        ProductKind::Star => {
            let s = constructions::star_product(&a, index_arg(alpha, "alpha", d)?, index_arg(beta, "beta", d)?)?;
            let body = json!({
                "kind": "star",
                "functionals_multiplicative": s.functionals_multiplicative,
                "differences": report::differences(&s.differences),
            });
            (s.tensor, s.checks, body)
        }
        ProductKind::Ast => {
            let phi = phi.ok_or_else(|| CliError::Input("--phi is required for ast".into()))?;
            let x0 = x0.ok_or_else(|| CliError::Input("--x0 is required for ast".into()))?;
            let phi = Functional::new(rationals(phi, "--phi")?);
            let x0 = Element::new(rationals(x0, "--x0")?);
            let p = constructions::ast_product(&a, &phi, &x0)?;
            let body = json!({
                "kind": "ast",
                "witness": {
                    "x": report::element(&p.witness.x),
                    "original_square": report::element(&p.witness.original_square),
                    "new_square": report::element(&p.witness.new_square),
                },
                "differences": report::differences(&p.differences),
            });
            (p.tensor, p.checks, body)
        }
    };
    let new = AlgebraSpec::new(a.norm().clone(), tensor)?;
    body["checks"] = report::checks(&checks);
    body["spec"] = report::spec(&new);
    if let Some(out) = out {
        std::fs::write(out, format::emit_spec(&new))
            .map_err(|e| CliError::Rejected(format!("{}: {e}", out.display())))?;
    }
    print(&body);
    Ok(checks.all_pass())
}

fn martignon(n: usize) -> CliResult {
    match representation::martignon_products(n)? {
        s if s.is_pointwise_singleton() => {
            println!("unique solution: pointwise");
            Ok(true)
        }
        MartignonSolutions::Empty => {
            println!("no solution");
            Ok(false)
        }
        MartignonSolutions::Unique(t) => {
            println!("unique solution: {t:?}");
            Ok(false)
        }
        MartignonSolutions::Undetermined { free } => {
            println!("undetermined: {free} free directions after elimination");
            Ok(false)
        }
    }
}

fn gallery(action: GalleryAction) -> CliResult {
    match action {
        GalleryAction::List => {
            for id in GalleryName::IDENTIFIERS {
                match id {
                    "pointwise" => println!("pointwise <n> [--weights w1,...,wn]"),
                    "twisted_linf2" => println!("twisted_linf2"),
                    other => println!("{other} <n>"),
                }
            }
            Ok(true)
        }
        GalleryAction::Emit { name, n, weights } => {
            let weights = weights.as_deref().map(|w| rationals(w, "--weights")).transpose()?;
            let spec = constructions::gallery(&GalleryName::parse(&name, n, weights)?)?;
            print!("{}", format::emit_spec(&spec));
            Ok(true)
        }
    }
}

fn demo_sparse(seed: u64) -> CliResult {
    let mut rng = sampling::rng(seed);
    let mut order_unit = Vec::new();
    let mut ok = true;
    for _ in 0..10 {
        let f = sampling::positive_sparse_functional(&mut rng, 5, 30, 9);
        let n = sparse_seq::approx_order_unit_witness(&f)?;
        let stable = (n.max(1)..n.max(1) + 5).all(|m| UnitPrefix::new(m).is_ok_and(|e| f.apply(&e.to_seq()) == f.norm()));
        ok &= stable;
        order_unit.push(json!({ "functional_norm": report::rational(&f.norm()), "from_n": n, "stable": stable }));
    }
    let mut identity = Vec::new();
    for _ in 0..10 {
        let x = sampling::sparse_seq(&mut rng, 5, 30, 9);
        let n = sparse_seq::approx_algebraic_identity_witness(&x);
        let j = sparse_seq::non_identity_witness(&x);
        let atom = SparseSeq::from_ints(&[(j, 1)]);
        let fails = sparse_seq::seq_ops(&x, &atom, sparse_seq::SeqOp::Mul) != atom;
        ok &= fails;
        identity.push(json!({ "support_end": x.max_support(), "from_n": n, "not_identity_at": j }));
    }
    let triples: Vec<_> = (0..10).map(|_| sampling::disjoint_sparse_triple(&mut rng, 12, 9)).collect();
    let f_algebra = sparse_seq::verify_f_algebra_sparse(&triples)?;
    ok &= f_algebra;
    print(&json!({
        "seed": seed,
        "approximate_order_unit": order_unit,
        "approximate_identity": identity,
        "f_algebra_samples": { "count": triples.len(), "holds": f_algebra },
    }));
    Ok(ok)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Check { path, seed, require } => check(&path, seed, &require),
        Command::Represent { path } => represent(&path),
        Command::Quotient { path } => quotient(&path),
        Command::AltProduct { path, kind, alpha, beta, phi, x0, out } => {
            alt_product(&path, kind, alpha, beta, phi.as_deref(), x0.as_deref(), out.as_deref())
        }
        Command::Martignon { n } => martignon(n),
        Command::Gallery { action } => gallery(action),
        Command::DemoSparse { seed } => demo_sparse(seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Rejected(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("invalid input: {msg}");
            ExitCode::from(2)
        }
    }
}
