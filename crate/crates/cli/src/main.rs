//! Command line front end for phkit-core.
//!
//! Every subcommand is a thin adapter: it parses files and flags, calls one
//! or two library functions, and serializes the result. Results go to
//! standard output or --out; diagnostics go to standard error. Exit codes:
//! 0 success, 1 validation failure (non-Hermitian input, not PT-symmetric,
//! unsupported cell, bad parameters), 2 I/O or parse failure.

use clap::{Parser, Subcommand, ValueEnum};
use phkit_core::{
    build_six_quadrics, classify, classify_level_set, classify_quadric, closed_form_basis,
    common_pseudo_hermitian, compose, det_form, extract_isosurface_points, io as pio, metric,
    relation_residual, sample_scalar_field, solve_metrics, symmetry_report, write_points_csv,
    Error, GridSpec, HermitianMetric, PauliForm, Tol,
};
use serde::Serialize;
use serde_json::{json, Value};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Classification and metric tools for 2x2 PT-symmetric matrices.
#[derive(Debug, Parser)]
#[command(name = "phkit", version, about, max_term_width = 100)]
struct Cli {
    /// Absolute tolerance for zero decisions (default 1e-12).
    #[arg(long, global = true)]
    atol: Option<f64>,

    /// Relative tolerance (default 1e-10); the PHKIT_TOLERANCE environment
    /// variable overrides the default when the flag is absent.
    #[arg(long, global = true)]
    rtol: Option<f64>,

    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sort a matrix into the PT partition and report its spectrum.
    Classify {
        /// JSON file with the matrix ("entries" or "pauli" schema).
        #[arg(long)]
        matrix: PathBuf,
    },

    /// All matrices compatible with a fixed Hermitian metric.
    Ensemble {
        /// JSON file with the Hermitian metric G.
        #[arg(long)]
        g: PathBuf,

        /// Fold the PT restriction into a singular-metric basis.
        #[arg(long)]
        pt_only: bool,

        /// Comma-separated coefficients (trace first) for one member.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Option<Vec<f64>>,

        /// Report the relation residual of every emitted matrix and fail
        /// when any exceeds tolerance.
        #[arg(long)]
        verify: bool,
    },

    /// The traceless matrix compatible with two non-proportional metrics.
    Common {
        /// JSON file with the first metric.
        #[arg(long)]
        g1: PathBuf,

        /// JSON file with the second metric.
        #[arg(long)]
        g2: PathBuf,
    },

    /// Determinant form of a metric's matrix family and one level set.
    Quadric {
        /// JSON file with the Hermitian metric G.
        #[arg(long)]
        g: PathBuf,

        /// Determinant level whose surface is classified.
        #[arg(long, allow_hyphen_values = true)]
        level: f64,

        /// Sample the level set and report the symmetry match fraction.
        #[arg(long, requires = "seed")]
        samples: Option<usize>,

        /// RNG seed for sampling; required with --samples, echoed in output.
        #[arg(long, requires = "samples")]
        seed: Option<u64>,
    },

    /// All metrics compatible with a fixed matrix, with the six surfaces.
    Inverse {
        /// JSON file with the PT-symmetric matrix H.
        #[arg(long)]
        h: PathBuf,

        /// Fixed half-trace of the metric.
        #[arg(long, allow_hyphen_values = true)]
        d: f64,
    },

    /// Isosurface point cloud of a quadric surface on a regular grid.
    Export {
        /// JSON file with the surface {"A", "b"?, "c"?}; the quadric
        /// command output and each entry of the inverse quadrics list
        /// parse directly.
        #[arg(long)]
        surface: PathBuf,

        /// Level whose isosurface is extracted.
        #[arg(long, allow_hyphen_values = true)]
        level: f64,

        /// Grid as min,max,res applied to all three axes.
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true,
              default_value = "-3,3,64")]
        grid: GridArg,

        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy)]
struct GridArg {
    min: f64,
    max: f64,
    res: usize,
}

fn parse_grid(s: &str) -> Result<GridArg, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [min, max, res] = parts.as_slice() else {
        return Err(format!("expected min,max,res, got {s:?}"));
    };
    Ok(GridArg {
        min: min.trim().parse().map_err(|e| format!("grid min: {e}"))?,
        max: max.trim().parse().map_err(|e| format!("grid max: {e}"))?,
        res: res
            .trim()
            .parse()
            .map_err(|e| format!("grid resolution: {e}"))?,
    })
}

/// A failure carrying the exit code its class maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let tol = resolve_tol(cli.atol, cli.rtol)?;
    match cli.command {
        Command::Classify { matrix } => {
            let p = pio::read_pauli(&read_file(&matrix)?)?;
            emit_json(&classify_json(&p, &tol), cli.out.as_deref())?;
            Ok(0)
        }
        Command::Ensemble {
            g,
            pt_only,
            params,
            verify,
        } => run_ensemble(&g, pt_only, params, verify, &tol, cli.out.as_deref()),
        Command::Common { g1, g2 } => {
            let ga = read_metric(&g1, &tol)?;
            let gb = read_metric(&g2, &tol)?;
            let p = common_pseudo_hermitian(&ga, &gb, &tol)?;
            let value = json!({
                "g1": metric_json(&ga),
                "g2": metric_json(&gb),
                "matrix": pio::pauli_to_json(&p),
                "cell": classify(&p, &tol).cell.name(),
                "residuals": [relation_residual(&p, &ga), relation_residual(&p, &gb)],
            });
            emit_json(&value, cli.out.as_deref())?;
            Ok(0)
        }
        Command::Quadric {
            g,
            level,
            samples,
            seed,
        } => run_quadric(&g, level, samples, seed, &tol, cli.out.as_deref()),
        Command::Inverse { h, d } => run_inverse(&h, d, &tol, cli.out.as_deref()),
        Command::Export {
            surface,
            level,
            grid,
            format,
        } => run_export(&surface, level, grid, format, cli.out.as_deref()),
    }
}

/// Flags win over the environment; the environment wins over the default.
fn resolve_tol(atol: Option<f64>, rtol: Option<f64>) -> Result<Tol, Failure> {
    let mut tol = Tol::DEFAULT;
    if let Some(a) = atol {
        tol.atol = a;
    }
    match rtol {
        Some(r) => tol.rtol = r,
        None => {
            if let Ok(text) = std::env::var("PHKIT_TOLERANCE") {
                tol.rtol = text.trim().parse().map_err(|e| {
                    Failure::io(format!("PHKIT_TOLERANCE {text:?} is not a number: {e}"))
                })?;
            }
        }
    }
    if !(tol.atol > 0.0 && tol.atol.is_finite() && tol.rtol > 0.0 && tol.rtol.is_finite()) {
        return Err(Failure::validation(format!(
            "tolerances must be positive and finite, got atol {} rtol {}",
            tol.atol, tol.rtol
        )));
    }
    Ok(tol)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn read_metric(path: &Path, tol: &Tol) -> Result<HermitianMetric, Failure> {
    let m = pio::read_matrix(&read_file(path)?)?;
    Ok(metric::from_matrix(&m, tol)?)
}

fn classify_json(p: &PauliForm, tol: &Tol) -> Value {
    let r = classify(p, tol);
    json!({
        "cell": r.cell.name(),
        "symmetry": r.symmetry.name(),
        "spectrum": r.spectrum.map(|s| s.name()),
        "diagonalizable": r.diagonalizable,
        "eigenvalues": {
            "minus": [r.eigenvalues.minus.re, r.eigenvalues.minus.im],
            "plus": [r.eigenvalues.plus.re, r.eigenvalues.plus.im],
        },
        "pauli": pio::pauli_to_json(p)["pauli"],
    })
}

fn metric_json(g: &HermitianMetric) -> Value {
    json!({
        "d": g.d,
        "gR": g.g_r,
        "cell": g.cell.name(),
        "singular": g.singular,
        "det": g.det(),
    })
}

fn run_ensemble(
    g_path: &Path,
    pt_only: bool,
    params: Option<Vec<f64>>,
    verify: bool,
    tol: &Tol,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let g = read_metric(g_path, tol)?;
    let mut basis = closed_form_basis(&g, tol)?;
    if pt_only {
        basis = basis.pt_restricted();
    }
    let matrices = basis.matrices();
    let cells = basis.member_cells(tol);
    let g_norm = g.matrix().norm();
    let mut worst: Option<(String, f64, f64)> = None;
    let mut check = |label: &str, p: &PauliForm| -> Option<f64> {
        if !verify {
            return None;
        }
        let residual = relation_residual(p, &g);
        let bound = tol.band(compose(p).norm() * g_norm);
        if residual > bound && worst.as_ref().is_none_or(|w| residual > w.1) {
            worst = Some((label.to_string(), residual, bound));
        }
        Some(residual)
    };

    let basis_json: Vec<Value> = matrices
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut entry = json!({
                "param": basis.param_names[i],
                "hR": m.hr,
                "hI": m.hi,
                "h0_im": m.h0_im,
                "cell": cells[i].name(),
            });
            if let Some(r) = check(basis.param_names[i], m) {
                entry["residual"] = json!(r);
            }
            entry
        })
        .collect();

    let member_json = match &params {
        Some(coeffs) => {
            let member = basis.generate(coeffs)?;
            let mut entry = json!({
                "params": coeffs,
                "matrix": pio::pauli_to_json(&member),
                "cell": classify(&member, tol).cell.name(),
            });
            if let Some(r) = check("member", &member) {
                entry["residual"] = json!(r);
            }
            Some(entry)
        }
        None => None,
    };

    let value = json!({
        "metric": metric_json(&g),
        "regime": basis.regime.name(),
        "dimension": basis.dim(),
        "trace_param": basis.trace_param,
        "basis": basis_json,
        "pt_constraint": basis.pt_constraint,
        "member": member_json,
        "verified": if verify { json!(worst.is_none()) } else { Value::Null },
    });
    emit_json(&value, out)?;
    match worst {
        Some((label, residual, bound)) => Err(Failure::validation(format!(
            "relation residual of {label} is {residual:.3e}, above tolerance {bound:.3e}"
        ))),
        None => Ok(0),
    }
}

fn run_quadric(
    g_path: &Path,
    level: f64,
    samples: Option<usize>,
    seed: Option<u64>,
    tol: &Tol,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let g = read_metric(g_path, tol)?;
    let basis = closed_form_basis(&g, tol)?.pt_restricted();
    let form = det_form(&basis)?;
    let class = classify_level_set(&form, level, tol);
    let mut value = json!({
        "metric": metric_json(&g),
        "param_names": form.param_names,
        "A": form.a,
        "eigenvalues": form.eigenvalues,
        "level": level,
        "class": class.name(),
    });
    if let (Some(n), Some(s)) = (samples, seed) {
        let report = symmetry_report(&basis, level, n, s, tol)?;
        value["samples"] = json!(report.samples);
        value["seed"] = json!(s);
        value["matching"] = json!(report.matching);
        value["symmetry_fraction"] = json!(report.fraction);
        value["expected_broken"] = json!(report.expected_broken);
    }
    emit_json(&value, out)?;
    Ok(0)
}

fn run_inverse(h_path: &Path, d: f64, tol: &Tol, out: Option<&Path>) -> Result<u8, Failure> {
    let p = pio::read_pauli(&read_file(h_path)?)?;
    let quadrics = build_six_quadrics(&p, d, tol)?;
    let quadrics_json: Vec<Value> = quadrics
        .iter()
        .map(|s| {
            let mut v = pio::surface_to_json(s);
            v["class"] = json!(classify_quadric(s, tol).name());
            v
        })
        .collect();
    let cell = classify(&p, tol).cell.name();

    let value = match solve_metrics(&p, d, tol) {
        Ok(solution) => {
            let singular_metrics: Vec<Value> = solution
                .singular_metrics(tol)?
                .iter()
                .map(metric_json)
                .collect();
            json!({
                "cell": cell,
                "d": d,
                "solution_dimension": solution.dimension,
                "basis": solution.basis.iter().map(metric_json).collect::<Vec<_>>(),
                "particular": solution.particular.as_ref().map(metric_json),
                "singular_points": solution.singular_points,
                "singular_metrics": singular_metrics,
                "quadrics": quadrics_json,
            })
        }
        Err(Error::NoSolution(message)) => json!({
            "cell": cell,
            "d": d,
            "solution_dimension": 0,
            "no_solution": true,
            "message": format!("no solution: {message}"),
            "basis": [],
            "particular": Value::Null,
            "singular_points": [],
            "singular_metrics": [],
            "quadrics": quadrics_json,
        }),
        Err(e) => return Err(e.into()),
    };
    emit_json(&value, out)?;
    Ok(0)
}

fn run_export(
    surface_path: &Path,
    level: f64,
    grid: GridArg,
    format: Format,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let surface = pio::read_surface(&read_file(surface_path)?)?;
    let spec = GridSpec::new([grid.min; 3], [grid.max; 3], [grid.res; 3])?;
    let field = sample_scalar_field(|v| surface.value(v), &spec)?;
    let points = extract_isosurface_points(&field, level);
    match format {
        Format::Csv => {
            let mut bytes = Vec::new();
            write_points_csv(&points, &mut bytes)
                .map_err(|e| Failure::io(format!("serializing points: {e}")))?;
            emit_bytes(&bytes, out)
        }
        Format::Json => {
            let value = json!({
                "surface": pio::surface_to_json(&surface),
                "level": level,
                "grid": {
                    "min": spec.min,
                    "max": spec.max,
                    "resolution": spec.resolution,
                },
                "count": points.len(),
                "points": points,
            });
            emit_json(&value, out)?;
            Ok(0)
        }
    }
}

/// Writes every float in scientific form with 17 significant digits, so
/// values round-trip through text exactly.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

fn render_json(value: &Value) -> Vec<u8> {
    let mut bytes = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut bytes, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    bytes.push(b'\n');
    bytes
}

fn emit_json(value: &Value, out: Option<&Path>) -> Result<(), Failure> {
    emit_bytes(&render_json(value), out).map(|_| ())
}

fn emit_bytes(bytes: &[u8], out: Option<&Path>) -> Result<u8, Failure> {
    match out {
        Some(path) => {
            fs::write(path, bytes).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::io(format!("stdout: {e}")))?;
        }
    }
    Ok(0)
}
