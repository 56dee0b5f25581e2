//! Command-line front end for the gravent sweeps.

pub mod config;
pub mod output;
pub mod svg;
pub mod validate;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gravent::experiments::{figure_preset, find_entanglement_minima, frame_comparison, radial_invariance_check, run_sweep, SweepSpec};
use gravent::numeric::linspace;
use gravent::{spacetime, wigner, BellState, Error, QuadConfig};

use config::{SweepConfig, UsageError};

#[derive(Debug, Parser)]
#[command(name = "gravent", version, about = "Spin entanglement of orbiting particles around a charged black hole")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one of the six preset sweeps.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
        n: u8,
        #[arg(long = "stationary-phase")]
        stationary_phase: bool,
        #[arg(long = "quad-nodes")]
        quad_nodes: Option<usize>,
        /// Print the preset as a JSON config and exit.
        #[arg(long = "print-config")]
        print_config: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a custom sweep from a JSON config and/or flags.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        params: SweepConfig,
        #[arg(long = "print-config")]
        print_config: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Radii where the Wigner angle vanishes for every momentum.
    Zeros {
        #[arg(long, allow_negative_numbers = true)]
        xi2: f64,
    },
    /// Horizon radii.
    Horizons {
        #[arg(long, allow_negative_numbers = true)]
        xi2: f64,
    },
    /// Local minima of E along a radial sweep.
    Minima {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6), conflicts_with = "config")]
        figure: Option<u8>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        params: SweepConfig,
    },
    /// Check that radial free fall leaves the Bell states unchanged.
    RadialCheck {
        #[arg(long)]
        bell: Option<BellState>,
    },
    /// Tabulate the static and Kruskal Wigner rates against r.
    FrameCompare {
        #[arg(long = "r-min", default_value_t = 1.0)]
        r_min: f64,
        #[arg(long = "r-max", default_value_t = 10.0)]
        r_max: f64,
        #[arg(long, default_value_t = 19)]
        samples: usize,
        #[arg(long, default_value_t = 0.6, allow_negative_numbers = true)]
        q: f64,
        #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
        p: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the oracle-equivalence and invariant checks.
    Validate,
}

enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.0)
    }
}

fn trimmed(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

fn emit(text: &str, path: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn load_config(path: Option<&PathBuf>, flags: &SweepConfig) -> Result<SweepConfig, Failure> {
    let base = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("--config {}: {e}", p.display())))?;
            SweepConfig::from_json(&text)?
        }
        None => SweepConfig::default(),
    };
    Ok(base.overlay(flags))
}

fn render(spec: &SweepSpec, out: &OutputArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let rows = run_sweep(spec)?;
    let text = match out.format {
        Format::Csv => output::sweep_csv(spec, &rows),
        Format::Json => output::sweep_json(spec, &rows),
        Format::Svg => svg::emit_svg(
            &rows,
            &svg::Axes {
                title: format!("{} sweep, {}", spec.variable.name(), spec.bell),
                x_label: spec.variable.name().into(),
                y_label: "E".into(),
                metadata: output::config_json(spec),
            },
        )?,
    };
    emit(&text, out.output.as_ref(), stdout)
}

fn print_config(spec: &SweepSpec, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(&SweepConfig::from_spec(spec)).expect("config serialises");
    text.push('\n');
    emit(&text, None, stdout)
}

fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Figure {
            n,
            stationary_phase,
            quad_nodes,
            print_config: only_config,
            out,
        } => {
            let mut spec = figure_preset(n)?;
            spec.quad = match quad_nodes {
                Some(cap) => QuadConfig::with_node_cap(cap)?,
                None => QuadConfig::from_env()?,
            };
            spec.stationary_phase = stationary_phase;
            if only_config {
                return print_config(&spec, stdout);
            }
            render(&spec, &out, stdout)
        }
        Command::Sweep {
            config,
            params,
            print_config: only_config,
            out,
        } => {
            let spec = load_config(config.as_ref(), &params)?.resolve()??;
            if only_config {
                return print_config(&spec, stdout);
            }
            render(&spec, &out, stdout)
        }
        Command::Zeros { xi2 } => {
            spacetime::ChargedBlackHole::new(xi2)?;
            let zeros = wigner::theta_zeros(xi2);
            let text = if zeros.is_empty() {
                "none (no zeros for xi2 > 9/32)\n".to_string()
            } else {
                zeros.iter().map(|z| format!("{z:.6}\n")).collect()
            };
            emit(&text, None, stdout)
        }
        Command::Horizons { xi2 } => {
            spacetime::ChargedBlackHole::new(xi2)?;
            let hs = spacetime::horizons(xi2);
            let text = if hs.is_empty() {
                "{} (naked singularity)\n".to_string()
            } else {
                hs.iter().map(|&h| format!("{}\n", trimmed(h))).collect()
            };
            emit(&text, None, stdout)
        }
        Command::Minima { figure, config, params } => {
            let spec = match figure {
                Some(n) => figure_preset(n)?,
                None => load_config(config.as_ref(), &params)?.resolve()??,
            };
            let minima = find_entanglement_minima(&spec)?;
            let mut text = String::from("z,E\n");
            for m in minima {
                text.push_str(&format!("{:.6},{:.6}\n", m.x, m.e));
            }
            emit(&text, None, stdout)
        }
        Command::RadialCheck { bell } => {
            let states: Vec<BellState> = match bell {
                Some(b) => vec![b],
                None => BellState::ALL.to_vec(),
            };
            for b in states {
                let report = radial_invariance_check(b)?;
                emit(
                    &format!("PASS {b}: max deviation {:.1e}, rotation residual {:.1e}\n", report.max_deviation, report.rotation_residual),
                    None,
                    stdout,
                )?;
            }
            Ok(())
        }
        Command::FrameCompare {
            r_min,
            r_max,
            samples,
            q,
            p,
            output,
        } => {
            if !(r_min > 0.0 && r_max > r_min && samples >= 2) {
                return Err(Failure::Domain(Error::Domain(format!(
                    "need 0 < r-min < r-max and samples ≥ 2, got [{r_min}, {r_max}] with {samples}"
                ))));
            }
            let rows = frame_comparison(&linspace(r_min, r_max, samples), q, p);
            emit(&output::frame_csv(q, p, &rows), output.as_ref(), stdout)
        }
        Command::Validate => {
            let mut failed = Vec::new();
            for check in validate::run_all() {
                let line = match &check.outcome {
                    Ok(detail) => format!("PASS {}: {detail}\n", check.name),
                    Err(detail) => {
                        failed.push(check.name);
                        format!("FAIL {}: {detail}\n", check.name)
                    }
                };
                emit(&line, None, stdout)?;
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Domain(Error::Assertion(format!("failed: {}", failed.join(", ")))))
            }
        }
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "error: {}: {e}", e.kind());
            1
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}
