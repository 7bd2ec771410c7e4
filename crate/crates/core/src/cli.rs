//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::basis::{Basis, BasisSpec};
use crate::bessel::{self, BoundaryCondition};
use crate::convolution::{self, Method};
use crate::error::{Error, Result};
use crate::io;
use crate::sampling::{self, DiskFunction};
use crate::spectra::{self, LatticeShells};

/// Environment variable naming the zero-table cache directory.
pub const CACHE_ENV: &str = "DISK_HARMONICS_CACHE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "disk-harmonics", version, about = "Fourier-Bessel analysis and zero-padded convolution on disks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bc {
    Zero,
    Derivative,
}

impl From<Bc> for BoundaryCondition {
    fn from(b: Bc) -> Self {
        match b {
            Bc::Zero => BoundaryCondition::ZeroValue,
            Bc::Derivative => BoundaryCondition::Derivative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnalyzeMethod {
    Direct,
    Spectral,
    Polar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvolveMethod {
    Direct,
    Spectral,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Boundary condition selecting the radial spectrum.
    #[arg(long, value_enum, default_value_t = Bc::Zero)]
    pub bc: Bc,
    /// Disk (window) radius.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Support radius of convolution inputs; must equal a/2.
    #[arg(long, default_value_t = 0.5)]
    pub b: f64,
    /// Largest angular order.
    #[arg(long = "M", default_value_t = 8)]
    pub max_angular: u32,
    /// Largest radial index.
    #[arg(long = "N", default_value_t = 8)]
    pub max_radial: u32,
    /// Lattice cutoff.
    #[arg(long = "K", default_value_t = 32)]
    pub cutoff: u32,
    /// Grid size per axis.
    #[arg(long = "G", default_value_t = 256)]
    pub grid: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a zero table as CSV.
    Zeros {
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Bc::Zero)]
        bc: Bc,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Raster to coefficient CSV.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = AnalyzeMethod::Direct)]
        method: AnalyzeMethod,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Coefficient CSV to raster CSV.
    Synth {
        #[arg(long)]
        input: PathBuf,
        /// Grid size; defaults to the one recorded in the coefficient header, else 256.
        #[arg(long = "G")]
        grid: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Convolve two rasters restricted to radius b = a/2.
    Convolve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        input2: PathBuf,
        #[arg(long, value_enum, default_value_t = ConvolveMethod::Spectral)]
        method: ConvolveMethod,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write the convolution sampled on the grid.
        #[arg(long)]
        spatial: Option<PathBuf>,
    },
    /// Compare the Plancherel identity with the grid norm.
    Plancherel {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rotation-invariant descriptor vector |C_{n,m}|.
    Descriptors {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Fit the spectral weight constants against the quadrature oracle.
    Calibrate {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

impl Common {
    fn spec(&self) -> Result<BasisSpec> {
        BasisSpec::new(
            self.a,
            self.bc.into(),
            self.max_angular,
            self.max_radial,
            self.cutoff,
        )
    }

    fn check_grid(&self) -> Result<()> {
        if self.grid < sampling::MIN_GRID {
            return Err(Error::invalid("G", format!("must be at least {}", sampling::MIN_GRID)));
        }
        if 2 * self.cutoff as usize >= self.grid {
            return Err(Error::Aliasing {
                cutoff: self.cutoff,
                grid: self.grid,
            });
        }
        Ok(())
    }

    fn check_half(&self) -> Result<()> {
        if (self.b - 0.5 * self.a).abs() > 1e-12 * self.a {
            return Err(Error::invalid(
                "b",
                format!("convolution needs b = a/2 = {}, got {}", 0.5 * self.a, self.b),
            ));
        }
        Ok(())
    }
}

/// Builds a basis, going through the zero-table cache when configured.
pub fn build_basis(spec: BasisSpec) -> Result<Basis> {
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => {
            let dir = PathBuf::from(dir);
            let tables = (0..=spec.max_angular)
                .map(|m| {
                    bessel::cached_zeros(&dir, m as i32, spec.max_radial as usize, spec.condition)
                })
                .collect::<Result<Vec<_>>>()?;
            Basis::from_tables(spec, tables)
        }
        _ => Basis::new(spec),
    }
}

fn emit(output: Option<&Path>, body: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, body).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => stdout.write_all(body).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn load(path: &Path, a: f64, support: f64, grid: usize) -> Result<DiskFunction> {
    let raster = io::read_raster(path)?;
    DiskFunction::from_raster(&raster, a, support, grid)
}

fn buffer<F: FnOnce(&mut Vec<u8>) -> std::io::Result<()>>(f: F) -> Vec<u8> {
    let mut out = Vec::new();
    f(&mut out).expect("writing to memory cannot fail");
    out
}

/// Runs one command, writing results to `stdout` unless an output path is given.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Zeros {
            m,
            count,
            bc,
            output,
        } => {
            let table = bessel::find_zeros(m.abs(), count, bc.into())?;
            let body = buffer(|w| bessel::write_zero_csv(w, std::slice::from_ref(&table)));
            emit(output.as_deref(), &body, stdout)
        }
        Command::Analyze {
            input,
            method,
            common,
            output,
        } => {
            common.check_grid()?;
            let basis = build_basis(common.spec()?)?;
            let f = load(&input, common.a, common.a, common.grid)?;
            let c = match method {
                AnalyzeMethod::Direct => spectra::analyze_direct(&f, &basis)?,
                AnalyzeMethod::Spectral => {
                    let t = sampling::square_fourier_coeff(&f, common.cutoff)?;
                    spectra::analyze_spectral(&t, &basis)?
                }
                AnalyzeMethod::Polar => {
                    let t = sampling::square_fourier_coeff(&f, common.cutoff)?;
                    let shells = LatticeShells::new(common.cutoff)?;
                    spectra::analyze_polar(&t, &shells, &basis)?
                }
            };
            let body = buffer(|w| io::write_coefficients(w, &c));
            emit(output.as_deref(), &body, stdout)
        }
        Command::Synth {
            input,
            grid,
            output,
        } => {
            let file = std::fs::File::open(&input).map_err(|source| Error::Io {
                path: input.display().to_string(),
                source,
            })?;
            let c = io::read_coefficients(std::io::BufReader::new(file))?;
            let grid = grid.or(c.grid()).unwrap_or(256);
            let basis = build_basis(*c.spec())?;
            let f = spectra::synthesize_grid(&c, &basis, grid)?;
            let body = buffer(|w| io::write_csv_matrix(w, &f.to_raster()));
            emit(output.as_deref(), &body, stdout)
        }
        Command::Convolve {
            input,
            input2,
            method,
            common,
            output,
            spatial,
        } => {
            common.check_half()?;
            common.check_grid()?;
            let basis = build_basis(common.spec()?)?;
            let f1 = load(&input, common.a, common.b, common.grid)?;
            let f2 = load(&input2, common.a, common.b, common.grid)?;
            let method = match method {
                ConvolveMethod::Direct => Method::Direct,
                ConvolveMethod::Spectral => Method::Spectral,
            };
            let result = convolution::convolve(&f1, &f2, &basis, method)?;
            let body = buffer(|w| io::write_coefficients(w, &result.coefficients));
            emit(output.as_deref(), &body, stdout)?;
            if let Some(path) = spatial {
                let field = match result.spatial {
                    Some(f) => f,
                    None => spectra::synthesize_grid(&result.coefficients, &basis, common.grid)?,
                };
                let body = buffer(|w| io::write_csv_matrix(w, &field.to_raster()));
                emit(Some(&path), &body, stdout)?;
            }
            Ok(())
        }
        Command::Plancherel {
            input,
            common,
            output,
        } => {
            common.check_half()?;
            common.check_grid()?;
            let basis = build_basis(common.spec()?)?;
            let f = load(&input, common.a, common.b, common.grid)?;
            let identity = convolution::plancherel_spectral(&f, &basis)?;
            let grid = f.norm_l2_squared();
            let rel = if grid == 0.0 {
                identity.abs()
            } else {
                (identity - grid).abs() / grid
            };
            let body = format!(
                "quantity,value\nidentity,{identity:.16e}\ngrid,{grid:.16e}\nrelative_error,{rel:.16e}\n"
            );
            emit(output.as_deref(), body.as_bytes(), stdout)
        }
        Command::Descriptors {
            input,
            common,
            output,
        } => {
            common.check_grid()?;
            let basis = build_basis(common.spec()?)?;
            let f = load(&input, common.a, common.a, common.grid)?;
            let c = spectra::analyze_direct(&f, &basis)?;
            let d = convolution::rotation_descriptors(&c);
            let mut body = String::from("n,m,value\n");
            for ((n, m, _), v) in c.iter().zip(d) {
                body.push_str(&format!("{n},{m},{v:.16e}\n"));
            }
            emit(output.as_deref(), body.as_bytes(), stdout)
        }
        Command::Calibrate { a, output } => {
            let mut body = String::from("bc,constant,frozen,residual,probes\n");
            for bc in BoundaryCondition::ALL {
                let cal = spectra::calibrate(bc, a)?;
                body.push_str(&format!(
                    "{},{:.16e},{:.16e},{:.16e},{}\n",
                    bc,
                    cal.constant,
                    spectra::weight_constant(bc),
                    cal.residual,
                    cal.probes
                ));
            }
            emit(output.as_deref(), body.as_bytes(), stdout)
        }
    }
}

/// Exit status for a library error: 3 for numerical guards, 2 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_numerical_guard() {
        EXIT_NUMERICAL
    } else {
        EXIT_INVALID
    }
}

/// Parses `args` and runs the command, returning the exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_INVALID;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    match run(cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
