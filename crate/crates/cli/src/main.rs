use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lrpkit::algebra::{Algebra, AlgebraSpec, Automorphism};
use lrpkit::bimodule::{dual, tensor, verify_zigzag, Bimodule, BimoduleJson, Side};
use lrpkit::cohomology::{aut_action_on_cohomology, ext_dims, hochschild_dims, holm_check};
use lrpkit::hopf::{check_gf_identity, functor_f, functor_g, gf_comparison};
use lrpkit::module::{Module, ModuleJson};
use lrpkit::varieties::{rank_variety, tensor_product_property_check};
use lrpkit::verify::verify_suite;
use lrpkit::FpMatrix;

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "lrpkit", version, about = "Bimodules over unipotent algebras on prime fields")]
struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    #[command(subcommand)]
    Module(ModuleCmd),
    #[command(subcommand)]
    Bimod(BimodCmd),
    #[command(subcommand)]
    Hopf(HopfCmd),
    #[command(subcommand)]
    Variety(VarietyCmd),
    #[command(subcommand)]
    Cohom(CohomCmd),
    /// Run the verification suite for A = k(Z/p)^n.
    Verify {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        n: usize,
        #[arg(short = 'd', long = "max-degree", default_value_t = 4)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// k(Z/p)^n in the truncated presentation k[w_1..w_n]/(w_i^p).
    ElementaryAbelian,
    /// k(Z/p)^n on the group basis.
    ElementaryAbelianGroup,
    /// k[w_1..w_n]/(w_i^{e_i}) with `--exponents`.
    Truncated,
    /// Abelian group algebra with `--orders`.
    Group,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Write an algebra descriptor.
    New {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(short)]
        p: u32,
        #[arg(short, default_value_t = 1)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        exponents: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        orders: Vec<u32>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Print basic invariants of an algebra.
    Info { a: PathBuf },
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Validate a module and print its invariants.
    Check { m: PathBuf },
    Syzygy {
        m: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BimodCmd {
    /// Test one-sided and two-sided projectivity.
    Lrp { b: PathBuf },
    Tensor {
        b: PathBuf,
        c: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    Dual {
        #[arg(long, value_enum)]
        side: SideArg,
        b: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// The twisted bimodule with actions pulled back along two automorphisms
    /// given by their matrices on the generators (identity when omitted).
    Twisted {
        a: PathBuf,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Check the triangle identities for both duals.
    Zigzag { b: PathBuf },
}

#[derive(Subcommand)]
enum HopfCmd {
    #[command(name = "F")]
    F {
        m: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    #[command(name = "G")]
    G {
        b: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Check that G F M is isomorphic to M.
    VerifyGf { m: PathBuf },
}

#[derive(Subcommand)]
enum VarietyCmd {
    Compute {
        m: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Tensor product property V(M ⊗ N) = V(M) ∩ V(N).
    Tpp { m: PathBuf, n: PathBuf },
}

#[derive(Subcommand)]
enum CohomCmd {
    Ext {
        m: PathBuf,
        n: PathBuf,
        #[arg(short = 'd', long = "max-degree", default_value_t = 6)]
        max_degree: usize,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    Hh {
        a: PathBuf,
        #[arg(short = 'd', long = "max-degree", default_value_t = 6)]
        max_degree: usize,
        /// Also compare with dim A times the group cohomology.
        #[arg(long)]
        holm: bool,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Matrix of the action of a linear automorphism on H^deg(A, k).
    Action {
        a: PathBuf,
        #[arg(long)]
        phi: String,
        #[arg(short = 'd', long = "degree", default_value_t = 1)]
        degree: usize,
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Replace an `"algebra": "file.json"` reference by the descriptor it names.
fn resolve_algebra_ref(mut v: Value, path: &Path) -> Result<Value> {
    if let Some(Value::String(r)) = v.get("algebra") {
        let base = path.parent().unwrap_or(Path::new("."));
        let spec = read_json(&base.join(r))?;
        v["algebra"] = spec;
    }
    Ok(v)
}

fn load_algebra(path: &Path) -> Result<Arc<Algebra>> {
    let spec: AlgebraSpec = serde_json::from_value(read_json(path)?)?;
    Ok(Algebra::from_spec(&spec)?)
}

fn load_module(path: &Path) -> Result<Module> {
    let v = resolve_algebra_ref(read_json(path)?, path)?;
    let json: ModuleJson = serde_json::from_value(v).with_context(|| format!("module format in {}", path.display()))?;
    Ok(Module::from_json(&json)?)
}

fn load_bimodule(path: &Path) -> Result<Arc<Bimodule>> {
    let v = resolve_algebra_ref(read_json(path)?, path)?;
    let json: BimoduleJson = serde_json::from_value(v).with_context(|| format!("bimodule format in {}", path.display()))?;
    Ok(Arc::new(Bimodule::from_json(&json)?))
}

fn emit<T: serde::Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

/// A square generator matrix, as `[[a,b],[c,d]]` rows, or a full matrix object.
fn parse_generator_matrix(alg: &Arc<Algebra>, s: &str) -> Result<Automorphism> {
    let v: Value = serde_json::from_str(s).context("automorphism matrix must be JSON")?;
    let f = alg.field();
    let m = if v.is_object() {
        serde_json::from_value::<FpMatrix>(v)?
    } else {
        let rows: Vec<Vec<i64>> = serde_json::from_value(v)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            bail!("automorphism matrix must be square");
        }
        let p = i64::from(alg.p());
        let data = rows.iter().flatten().map(|&x| x.rem_euclid(p) as u32).collect();
        FpMatrix::new(f, n, n, data)?
    };
    Ok(Automorphism::from_linear(alg, &m)?)
}

fn algebra_new(kind: Kind, p: u32, n: usize, exponents: Vec<u32>, orders: Vec<u32>) -> Result<Arc<Algebra>> {
    let a = match kind {
        Kind::ElementaryAbelian => Algebra::truncated(p, &vec![p; n])?,
        Kind::ElementaryAbelianGroup => Algebra::group(p, &vec![p; n])?,
        Kind::Truncated => {
            if exponents.is_empty() {
                bail!("--exponents is required for a truncated algebra");
            }
            Algebra::truncated(p, &exponents)?
        }
        Kind::Group => {
            if orders.is_empty() {
                bail!("--orders is required for a group algebra");
            }
            Algebra::group(p, &orders)?
        }
    };
    Ok(a)
}

fn run(cli: Cli) -> Result<bool> {
    let seed = cli.seed;
    match cli.command {
        Command::Algebra(AlgebraCmd::New {
            kind,
            p,
            n,
            exponents,
            orders,
            o,
        }) => emit(algebra_new(kind, p, n, exponents, orders)?.spec(), o.as_deref())?,
        Command::Algebra(AlgebraCmd::Info { a }) => {
            let a = load_algebra(&a)?;
            emit(
                &json!({
                    "p": a.p(),
                    "dim": a.dim(),
                    "generators": a.generator_names(),
                    "local": a.is_local(),
                    "unipotent": a.is_unipotent(),
                    "enveloping_unipotent": a.enveloping().is_unipotent(),
                }),
                None,
            )?;
        }
        Command::Module(ModuleCmd::Check { m }) => {
            let m = load_module(&m)?;
            emit(
                &json!({
                    "valid": true,
                    "dim": m.dim(),
                    "top_dim": m.top_dim(),
                    "projective": m.is_projective()?,
                }),
                None,
            )?;
        }
        Command::Module(ModuleCmd::Syzygy { m, o }) => {
            emit(&load_module(&m)?.syzygy()?.to_json(), o.as_deref())?;
        }
        Command::Bimod(BimodCmd::Lrp { b }) => {
            let b = load_bimodule(&b)?;
            emit(
                &json!({
                    "lrp": b.is_lrp()?,
                    "env_projective": b.is_env_projective()?,
                }),
                None,
            )?;
        }
        Command::Bimod(BimodCmd::Tensor { b, c, o }) => {
            let t = tensor(&load_bimodule(&b)?, &load_bimodule(&c)?)?;
            emit(&t.bimodule().to_json(), o.as_deref())?;
        }
        Command::Bimod(BimodCmd::Dual { side, b, o }) => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            emit(&dual(&*load_bimodule(&b)?, side)?.to_json(), o.as_deref())?;
        }
        Command::Bimod(BimodCmd::Twisted { a, alpha, beta, o }) => {
            let a = load_algebra(&a)?;
            let aut = |s: &Option<String>| match s {
                Some(s) => parse_generator_matrix(&a, s),
                None => Ok(Automorphism::identity(a.clone())),
            };
            emit(&Bimodule::twisted(&aut(&alpha)?, &aut(&beta)?)?.to_json(), o.as_deref())?;
        }
        Command::Bimod(BimodCmd::Zigzag { b }) => {
            let r = verify_zigzag(&load_bimodule(&b)?)?;
            emit(&json!({"left": r.left, "right": r.right, "passed": r.all()}), None)?;
            return Ok(r.all());
        }
        Command::Hopf(HopfCmd::F { m, o }) => emit(&functor_f(&load_module(&m)?)?.to_json(), o.as_deref())?,
        Command::Hopf(HopfCmd::G { b, o }) => {
            emit(&functor_g(&*load_bimodule(&b)?).module.to_json(), o.as_deref())?
        }
        Command::Hopf(HopfCmd::VerifyGf { m }) => {
            let m = load_module(&m)?;
            let (g, _) = gf_comparison(&m)?;
            let ok = check_gf_identity(&m, seed)?;
            emit(&json!({"dim": m.dim(), "gf_dim": g.module.dim(), "passed": ok}), None)?;
            return Ok(ok);
        }
        Command::Variety(VarietyCmd::Compute { m, o }) => emit(&rank_variety(&load_module(&m)?)?, o.as_deref())?,
        Command::Variety(VarietyCmd::Tpp { m, n }) => {
            let (m, n) = (load_module(&m)?, load_module(&n)?);
            let ok = tensor_product_property_check(&m, &n)?;
            emit(
                &json!({
                    "m": rank_variety(&m)?,
                    "n": rank_variety(&n)?,
                    "passed": ok,
                }),
                None,
            )?;
            return Ok(ok);
        }
        Command::Cohom(CohomCmd::Ext { m, n, max_degree, o }) => {
            emit(&ext_dims(&load_module(&m)?, &load_module(&n)?, max_degree)?, o.as_deref())?
        }
        Command::Cohom(CohomCmd::Hh {
            a,
            max_degree,
            holm,
            o,
        }) => {
            let a = load_algebra(&a)?;
            let dims = hochschild_dims(&a, max_degree)?;
            if holm {
                let ok = holm_check(&a, max_degree)?;
                emit(&json!({"dims": dims.dims, "holm": ok}), o.as_deref())?;
                return Ok(ok);
            }
            emit(&dims, o.as_deref())?;
        }
        Command::Cohom(CohomCmd::Action { a, phi, degree, o }) => {
            let a = load_algebra(&a)?;
            let psi = parse_generator_matrix(&a, &phi)?;
            let m = aut_action_on_cohomology(&psi, degree)?;
            emit(&json!({"degree": degree, "matrix": m}), o.as_deref())?;
        }
        Command::Verify {
            p,
            n,
            max_degree,
            format,
        } => {
            let report = verify_suite(p, n, max_degree, seed)?;
            match format {
                Format::Json => emit(&report, None)?,
                Format::Table => print!("{}", report.to_table()),
            }
            return Ok(report.passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
