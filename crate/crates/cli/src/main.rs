use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use octo_lattice::lattice::{random_dense, random_scattered, GridFile, Sampler};
use octo_lattice::suite::{self, FileInputs, InterpretationChoice, SuiteConfig, SuiteReport, Target};
use octo_lattice::{Composition, Direction, Error, HalfSpace, LatticeWindow};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;

/// Exact verification of discrete octonionic Stokes and factorization
/// identities on the lattice hZ^8.
#[derive(Parser)]
#[command(name = "octo-lattice", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an invariant suite.
    Verify {
        #[arg(value_enum)]
        target: TargetArg,
        #[command(flatten)]
        common: Common,
    },
    /// Compare associator probes with whole-lattice Stokes sums.
    ProbeAssociator {
        #[command(flatten)]
        common: Common,
        /// Draw real-valued inputs; every probe must vanish.
        #[arg(long)]
        real_only: bool,
        /// Move g far from f; every probe must vanish.
        #[arg(long)]
        disjoint: bool,
        /// Difference direction used in the probe.
        #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
        direction: DirectionArg,
    },
    /// Half-lattice comparison of lhs, telescope and both boundary readings.
    ReportHalfSpace {
        #[arg(value_enum)]
        side: SideArg,
        #[command(flatten)]
        common: Common,
    },
    /// Write a seeded random grid function in the JSON grid format.
    Generate {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        support: u32,
        /// Scattered point count; the whole window is filled when omitted.
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        h: f64,
        #[arg(long, default_value_t = 5)]
        amplitude: i64,
        #[arg(long)]
        real_only: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    #[arg(long, default_value_t = 1)]
    seed0: u64,
    /// Mesh width; anything but 1 switches to float mode.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    h: f64,
    /// Per-axis extent of the sampling window (at most 4).
    #[arg(long, default_value_t = 3)]
    support: u32,
    /// Scattered support points per function (at most 64).
    #[arg(long, default_value_t = 32)]
    points: usize,
    /// Fill the whole sampling window instead of scattering points.
    #[arg(long)]
    dense: bool,
    /// Coefficients are integers in [-amplitude, amplitude].
    #[arg(long, default_value_t = 5)]
    amplitude: i64,
    /// Residual bound; 0 is exact. Defaults to 0 at h = 1 and 1e-12 relative otherwise.
    #[arg(long, allow_negative_numbers = true)]
    tolerance: Option<f64>,
    #[arg(long, value_enum, default_value_t = ConventionArg::Flat)]
    convention: ConventionArg,
    #[arg(long, default_value_t = 1)]
    base_layer: i64,
    #[arg(long, value_enum, default_value_t = InterpretationArg::Both)]
    interpretation: InterpretationArg,
    /// Write the JSON report here; `-` writes it to stdout instead of the text report.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Grid file for f, replacing the seeded inputs.
    #[arg(long)]
    f: Option<PathBuf>,
    /// Grid file for g; defaults to f.
    #[arg(long, requires = "f")]
    g: Option<PathBuf>,
    /// Record wall-clock durations in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Algebra,
    Split,
    Factorization,
    StokesWhole,
    StokesUpper,
    StokesLower,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Nested,
    Flat,
}

#[derive(Clone, Copy, ValueEnum)]
enum InterpretationArg {
    I1,
    I2,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Forward,
    Backward,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Upper,
    Lower,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Target {
        match t {
            TargetArg::Algebra => Target::Algebra,
            TargetArg::Split => Target::Split,
            TargetArg::Factorization => Target::Factorization,
            TargetArg::StokesWhole => Target::StokesWhole,
            TargetArg::StokesUpper => Target::StokesUpper,
            TargetArg::StokesLower => Target::StokesLower,
            TargetArg::All => Target::All,
        }
    }
}

impl Common {
    fn config(&self) -> Result<SuiteConfig, Error> {
        let inputs = match &self.f {
            Some(f) => Some(FileInputs {
                f: GridFile::read(f)?,
                g: self.g.as_deref().map(GridFile::read).transpose()?,
            }),
            None => None,
        };
        if let Some(inp) = &inputs {
            if inp.f.h() != self.h || inp.g.as_ref().is_some_and(|g| g.h() != self.h) {
                return Err(Error::Config(format!(
                    "grid files must use the mesh width --h {}",
                    self.h
                )));
            }
        }
        Ok(SuiteConfig {
            seeds: self.seeds,
            seed0: self.seed0,
            h: self.h,
            support_extent: self.support,
            support_points: self.points,
            dense: self.dense,
            amplitude: self.amplitude,
            tolerance: self.tolerance,
            composition: match self.convention {
                ConventionArg::Nested => Composition::Nested,
                ConventionArg::Flat => Composition::Flat,
            },
            base_layer: self.base_layer,
            interpretation: match self.interpretation {
                InterpretationArg::I1 => InterpretationChoice::I1,
                InterpretationArg::I2 => InterpretationChoice::I2,
                InterpretationArg::Both => InterpretationChoice::Both,
            },
            timing: self.timing,
            inputs,
            ..SuiteConfig::default()
        })
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("octo-lattice: {e}");
    ExitCode::from(match e {
        Error::ResourceGuard(_) => EXIT_GUARD,
        _ => EXIT_USAGE,
    })
}

fn emit(report: &SuiteReport, json: Option<&PathBuf>) -> Result<(), Error> {
    match json {
        Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
        Some(p) => {
            std::fs::write(p, report.to_json())?;
            print!("{}", report.render_text());
        }
        None => print!("{}", report.render_text()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Option<SuiteReport>, Error> {
    let (report, json) = match cli.command {
        Command::Verify { target, common } => (suite::run(target.into(), &common.config()?)?, common.json),
        Command::ProbeAssociator {
            common,
            real_only,
            disjoint,
            direction,
        } => {
            let cfg = SuiteConfig {
                real_only,
                disjoint,
                probe_direction: match direction {
                    DirectionArg::Forward => Direction::Forward,
                    DirectionArg::Backward => Direction::Backward,
                },
                ..common.config()?
            };
            (suite::run_probe(&cfg)?, common.json)
        }
        Command::ReportHalfSpace { side, common } => {
            let side = match side {
                SideArg::Upper => HalfSpace::Upper,
                SideArg::Lower => HalfSpace::Lower,
            };
            (suite::run_half_space_report(&common.config()?, side)?, common.json)
        }
        Command::Generate {
            seed,
            support,
            points,
            h,
            amplitude,
            real_only,
            out,
        } => {
            generate(seed, support, points, h, amplitude, real_only, &out)?;
            return Ok(None);
        }
    };
    emit(&report, json.as_ref())?;
    Ok(Some(report))
}

fn generate(
    seed: u64,
    support: u32,
    points: Option<usize>,
    h: f64,
    amplitude: i64,
    real_only: bool,
    out: &Path,
) -> Result<(), Error> {
    if support == 0 || support > suite::MAX_EXTENT {
        return Err(Error::ResourceGuard(format!(
            "--support must be in 1..={}",
            suite::MAX_EXTENT
        )));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Config(format!("--h must be positive, got {h}")));
    }
    let window = LatticeWindow::cube(-(i64::from(support) - 1) / 2, support)?;
    let sampler = if real_only {
        Sampler::new(amplitude).real_only()
    } else {
        Sampler::new(amplitude)
    };
    let f = match points {
        Some(n) => random_scattered(seed, &window, n, sampler, h)?,
        None => random_dense(seed, &window, sampler, h),
    };
    GridFile::write(&f, out)?;
    println!("wrote {} points to {}", f.support_len(), out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Some(report)) if !report.pass => ExitCode::from(EXIT_VIOLATION),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
