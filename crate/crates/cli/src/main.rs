mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use systole_core::bundle::{bundle_invariants, CircleBundle};
use systole_core::filling::{
    check_91b, circle_homotopy_window, diameter_extrema_circle, fillrad_catalog,
    fillrad_upper_bound_seeded, CatalogSpace, SearchMode,
};
use systole_core::io::{self, LatticeInput};
use systole_core::lattice::{dual_basis, lll_reduce, lll_reduce_gram};
use systole_core::minima::{
    berge_martinet_invariant_sq, hermite_invariant_sq, is_critical, successive_minima,
};
use systole_core::rational::{format_rational, parse_rational};
use systole_core::systolic::{
    conformal_systole, pu_round_check, torus_codim1_systole_sq, torus_systole_sq,
    verify_conformal_52, verify_gromov_torus, verify_loewner, FlatTorus,
};
use systole_core::Error;

const EXIT_VALIDATION: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "systole",
    version,
    about = "Exact lattice invariants, systolic inequalities, filling radius and circle-bundle invariants"
)]
struct Cli {
    /// Relative tolerance for floating-point verdicts
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized searches
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice invariants
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Flat-torus systoles and systolic inequalities
    Torus {
        #[command(subcommand)]
        cmd: TorusCmd,
    },
    /// Filling radius formulas and bounds
    Filling {
        #[command(subcommand)]
        cmd: FillingCmd,
    },
    /// Invariants of the circle bundle over the torus with Euler number e
    Bundle {
        #[arg(long, allow_negative_numbers = true)]
        euler: i64,
    },
}

#[derive(Args)]
struct InputArg {
    /// Lattice JSON: {"dim": b, "basis": [...]} or {"dim": b, "gram": [...]}
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Successive minima with witnesses
    Minima {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Hermite invariant
    Hermite {
        #[command(flatten)]
        input: InputArg,
    },
    /// Berge-Martinet invariant
    Bm {
        #[command(flatten)]
        input: InputArg,
    },
    /// Dual lattice
    Dual {
        #[command(flatten)]
        input: InputArg,
    },
    /// LLL reduction
    Reduce {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value = "3/4")]
        delta: String,
    },
    /// Criticality against the known constants (ranks 1-4)
    Critical {
        #[command(flatten)]
        input: InputArg,
    },
}

#[derive(Subcommand)]
enum TorusCmd {
    VerifyLoewner {
        #[command(flatten)]
        input: InputArg,
    },
    VerifyGromov {
        #[command(flatten)]
        input: InputArg,
    },
    #[command(name = "verify-52")]
    Verify52 {
        #[command(flatten)]
        input: InputArg,
    },
    Systoles {
        #[command(flatten)]
        input: InputArg,
    },
    /// Round projective plane of curvature K
    PuRound {
        #[arg(long)]
        curvature: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceName {
    Circle,
    Sphere,
    Rp,
    Cp2,
    Cp3,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long, value_enum)]
    space: SpaceName,
    /// Circle length
    #[arg(long)]
    length: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    curvature: f64,
    /// Dimension of a sphere or real projective space
    #[arg(long, default_value_t = 2)]
    n: u32,
}

impl SpaceArgs {
    fn space(&self) -> Result<CatalogSpace, Error> {
        Ok(match self.space {
            SpaceName::Circle => CatalogSpace::Circle {
                length: self.length.ok_or_else(|| {
                    Error::InvalidParameters("--length is required for circle".into())
                })?,
            },
            SpaceName::Sphere => CatalogSpace::Sphere {
                n: self.n,
                curvature: self.curvature,
            },
            SpaceName::Rp => CatalogSpace::RealProjective {
                n: self.n,
                curvature: self.curvature,
            },
            SpaceName::Cp2 => CatalogSpace::ComplexProjective2 {
                curvature: self.curvature,
            },
            SpaceName::Cp3 => CatalogSpace::ComplexProjective3 {
                curvature: self.curvature,
            },
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Greedy,
}

#[derive(Subcommand)]
enum FillingCmd {
    Catalog {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Extremal diameters of the circle
    Extrema {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        length: f64,
    },
    /// Upper bound on a finite metric space {"n": .., "dist": [[..]]}
    Bound {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_subset: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
    },
    #[command(name = "check-91b")]
    Check91b {
        #[command(flatten)]
        space: SpaceArgs,
    },
}

enum Failure {
    Io(String),
    Validation(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Validation(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_lattice(arg: &InputArg) -> Result<LatticeInput, Failure> {
    Ok(io::parse_lattice(&read(&arg.input)?)?)
}

fn run_lattice(cmd: &LatticeCmd, tol: f64) -> Result<Value, Failure> {
    Ok(match cmd {
        LatticeCmd::Minima { input, k } => {
            let g = load_lattice(input)?.gram();
            let r = successive_minima(&g, k.unwrap_or(g.dim()))?;
            io::minima_json(&r, hermite_invariant_sq(&g)?.gamma_approx)
        }
        LatticeCmd::Hermite { input } => {
            let g = load_lattice(input)?.gram();
            let mut v = io::hermite_json(&hermite_invariant_sq(&g)?);
            v["critical"] = match is_critical(&g, tol) {
                Ok(c) => json!(c.critical),
                Err(Error::UnknownConstant(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            v
        }
        LatticeCmd::Bm { input } => {
            io::berge_martinet_json(&berge_martinet_invariant_sq(&load_lattice(input)?.gram())?)
        }
        LatticeCmd::Dual { input } => match load_lattice(input)? {
            LatticeInput::Basis(b) => io::basis_json(&dual_basis(&b)?),
            LatticeInput::Gram(g) => io::gram_json(&g.dual()),
        },
        LatticeCmd::Reduce { input, delta } => {
            let delta = parse_rational(delta)?;
            match load_lattice(input)? {
                LatticeInput::Basis(b) => {
                    let r = lll_reduce(&b, &delta)?;
                    let mut v = io::basis_json(&r.basis);
                    v["transform"] = json!(r.transform);
                    v
                }
                LatticeInput::Gram(g) => {
                    let r = lll_reduce_gram(&g, &delta)?;
                    let mut v = io::gram_json(&r.gram);
                    v["transform"] = json!(r.transform);
                    v
                }
            }
        }
        LatticeCmd::Critical { input } => {
            io::criticality_json(&is_critical(&load_lattice(input)?.gram(), tol)?)
        }
    })
}

fn run_torus(cmd: &TorusCmd, tol: f64) -> Result<Value, Failure> {
    let torus = |input: &InputArg| -> Result<FlatTorus, Failure> {
        Ok(FlatTorus::new(load_lattice(input)?.gram()))
    };
    Ok(match cmd {
        TorusCmd::VerifyLoewner { input } => io::inequality_json(&verify_loewner(&torus(input)?)?),
        TorusCmd::VerifyGromov { input } => {
            io::inequality_json(&verify_gromov_torus(&torus(input)?)?)
        }
        TorusCmd::Verify52 { input } => io::inequality_json(&verify_conformal_52(&torus(input)?)?),
        TorusCmd::Systoles { input } => {
            let t = torus(input)?;
            let conf = conformal_systole(&t)?;
            let codim1 = match torus_codim1_systole_sq(&t) {
                Ok(v) => json!(format_rational(&v)),
                Err(Error::DimensionTooSmall(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            json!({
                "dim": t.dim(),
                "systole_sq": format_rational(&torus_systole_sq(&t)?),
                "codim1_systole_sq": codim1,
                "conformal_systole": conf.value,
                "conformal_systole_power": format_rational(&conf.power_value()),
            })
        }
        TorusCmd::PuRound { curvature } => io::inequality_json(&pu_round_check(*curvature, tol)?),
    })
}

fn run_filling(cmd: &FillingCmd, seed: u64) -> Result<Value, Failure> {
    Ok(match cmd {
        FillingCmd::Catalog { space } => {
            let s = space.space()?;
            let v = fillrad_catalog(&s)?;
            json!({
                "space": s.name(),
                "fillrad": v.value,
                "exact": v.exact,
                "strict_lower_bound": v.strict_lower_bound,
                "d1": s.first_extremal_diameter()?,
            })
        }
        FillingCmd::Extrema { i, length } => {
            let mut v =
                json!({ "i": i, "length": length, "d_i": diameter_extrema_circle(*i, *length)? });
            if let Some(w) = circle_homotopy_window(*i, *length)? {
                v["homotopy_window"] =
                    json!({ "lower": w.lower, "upper": w.upper, "sphere_dim": w.sphere_dim });
            }
            v
        }
        FillingCmd::Bound {
            input,
            max_subset,
            mode,
        } => {
            let m = io::parse_metric_space(&read(input)?)?;
            let mode = match mode {
                ModeArg::Exhaustive => SearchMode::Exhaustive,
                ModeArg::Greedy => SearchMode::Greedy,
            };
            io::fillrad_bound_json(&fillrad_upper_bound_seeded(&m, *max_subset, mode, seed)?)
        }
        FillingCmd::Check91b { space } => io::inequality_json(&check_91b(&space.space()?)?),
    })
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(
            Error::InvalidParameters(format!("--tol must be positive, got {}", cli.tol)).into(),
        );
    }
    match &cli.command {
        Command::Lattice { cmd } => run_lattice(cmd, cli.tol),
        Command::Torus { cmd } => run_torus(cmd, cli.tol),
        Command::Filling { cmd } => run_filling(cmd, cli.seed),
        Command::Bundle { euler } => Ok(io::bundle_json(&bundle_invariants(&CircleBundle::new(
            *euler,
        )?)?)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                ),
                Format::Table => print!("{}", render::table(&v)),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Validation(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}
