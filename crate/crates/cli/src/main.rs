use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use torus_cycles::error::{GeometryError, TraceError};
use torus_cycles::mode::Mode;
use torus_cycles::poly::scalar::parse_scalar;
use torus_cycles::report::{
    analyze, family_polynomial, parse_polynomial_file, polynomial_to_file, quadratic_report,
    stress, AnalysisOptions, InputError, ReportError, StressOptions,
};
use torus_cycles::switching::{Edge, EdgePoint};
use torus_cycles::verification::{
    crossings_to_csv, curve_to_csv, curves_to_svg, trace_with_outcome,
};

/// Crossing limit cycles of Hamiltonian fields on the flat torus.
#[derive(Debug, Parser)]
#[command(name = "torus-cycles", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Arithmetic regime for enumeration.
    #[arg(long, global = true, default_value = "exact")]
    mode: Mode,
    /// Torus distance under which a traced curve counts as closed.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol_closure: f64,
    /// Gradient norm below which tracing stops.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_grad_floor: f64,
    /// Crossings allowed before a trace is abandoned.
    #[arg(long, global = true, default_value_t = 8)]
    max_crossings: usize,
}

impl Common {
    fn analysis_options(&self) -> AnalysisOptions {
        let mut o = AnalysisOptions::with_mode(self.mode);
        o.verify.trace.closure_tol = self.tol_closure;
        o.verify.trace.grad_floor = self.tol_grad_floor;
        o.verify.trace.max_crossings = self.max_crossings;
        o
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate and verify every cycle type for a polynomial file.
    Analyze {
        input: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Skip tracing the candidates.
        #[arg(long)]
        no_trace: bool,
        /// Omit the timing field so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Closed-form criteria for a x² + b x y + c y².
    Quadratic {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Trace the level curve through a boundary point.
    Trace {
        input: PathBuf,
        /// bottom, top, left or right.
        #[arg(long)]
        edge: Edge,
        /// Edge coordinate in [0, 1]; fractions allowed.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Polyline CSV (segment_index,x,y).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Crossing log CSV.
        #[arg(long)]
        crossings: Option<PathBuf>,
        /// SVG of the square with the curve and seam markers.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Follow -X_H instead of X_H.
        #[arg(long)]
        reverse: bool,
    },
    /// Random sweep checking the per-type bounds.
    Stress {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Do not add the six-cycle cubic at degree 3.
        #[arg(long)]
        no_inject: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Emit the vertical-lines family polynomial for a given n.
    Family {
        #[arg(long)]
        n: u32,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

const EXIT_INPUT: u8 = 1;
const EXIT_GEOMETRY: u8 = 2;
const EXIT_BOUND: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(r) = cause.downcast_ref::<ReportError>() {
            return match r {
                ReportError::BoundViolation { .. } => EXIT_BOUND,
                _ => EXIT_INPUT,
            };
        }
        if cause.downcast_ref::<TraceError>().is_some()
            || cause.downcast_ref::<GeometryError>().is_some()
        {
            return EXIT_GEOMETRY;
        }
        if cause.downcast_ref::<InputError>().is_some() {
            return EXIT_INPUT;
        }
    }
    EXIT_INPUT
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_input(path: &Path) -> Result<torus_cycles::report::ParsedInput> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_polynomial_file(&text).map_err(ReportError::from)?)
}

fn run(cli: Cli) -> Result<()> {
    let common = &cli.common;
    match cli.command {
        Command::Analyze {
            input,
            out,
            no_trace,
            no_timing,
        } => {
            let parsed = read_input(&input)?;
            let mut opts = common.analysis_options();
            opts.trace = !no_trace;
            let report = analyze(&parsed.polynomial, parsed.label.as_deref(), &opts)?;
            let json = if no_timing {
                report.to_json_without_timing()?
            } else {
                report.to_json()?
            };
            write_output(out.as_deref(), &json)
        }
        Command::Quadratic { a, b, c, out } => {
            let parse = |s: &str| {
                parse_scalar(s)
                    .map_err(|e| ReportError::Input(InputError::InvariantViolation(e.to_string())))
            };
            let (a, b, c) = (parse(&a)?, parse(&b)?, parse(&c)?);
            let report = quadratic_report(&a, &b, &c, &common.analysis_options())?;
            write_output(
                out.as_deref(),
                &(serde_json::to_string_pretty(&report)? + "\n"),
            )
        }
        Command::Trace {
            input,
            edge,
            at,
            csv,
            crossings,
            svg,
            reverse,
        } => {
            let parsed = read_input(&input)?;
            let t = parse_scalar(&at)
                .map_err(|e| ReportError::Input(InputError::InvariantViolation(e.to_string())))?;
            let start = EdgePoint::exact(edge, t)?;
            let h = common.mode.prepare(&parsed.polynomial).to_float();
            let mut trace = common.analysis_options().verify.trace;
            trace.reverse = reverse;
            let (curve, err) = trace_with_outcome(&h, &start, &trace);
            if let Some(p) = &csv {
                fs::write(p, curve_to_csv(&curve))
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            if let Some(p) = &crossings {
                fs::write(p, crossings_to_csv(&curve))
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            if let Some(p) = &svg {
                fs::write(p, curves_to_svg(&[&curve], std::slice::from_ref(&start)))
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            let summary = serde_json::json!({
                "start": start,
                "closed": curve.closed,
                "word": curve.word,
                "raw_word": curve.raw_word,
                "level": curve.level,
                "closure_error": curve.closure_error,
                "max_level_drift": curve.max_level_drift,
                "min_grad": curve.min_grad,
                "points": curve.points().count(),
                "crossings": curve.crossings,
                "stop": curve.stop,
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
            match err {
                Some(e) => Err(e.into()),
                None => Ok(()),
            }
        }
        Command::Stress {
            degree,
            trials,
            seed,
            no_inject,
            out,
        } => {
            let mut opts = StressOptions::new(degree, trials, seed);
            opts.inject_example = !no_inject;
            opts.enumeration = common.analysis_options().enumeration;
            let summary = stress(&opts)?;
            write_output(
                out.as_deref(),
                &(serde_json::to_string_pretty(&summary)? + "\n"),
            )
        }
        Command::Family { n, out } => {
            if n < 2 {
                return Err(ReportError::Invariant(format!("n = {n} must be at least 2")).into());
            }
            let h = family_polynomial(n);
            let label = format!("vertical-lines n={n}");
            let file = polynomial_to_file(&h, Some(&label));
            write_output(
                out.as_deref(),
                &(serde_json::to_string_pretty(&file)? + "\n"),
            )
        }
    }
}
