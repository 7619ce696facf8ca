//! `cbundle`: deterministic JSON reports on contact structures on circle
//! bundles.
//!
//! Exit codes: 0 on success, 1 when a check fails (a form with the wrong
//! contact sign, an invalid decomposition), 2 for usage and input errors.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use cbundle_core::classify::{self, BundleData, EnrollmentSpectrum};
use cbundle_core::formcalc::{self, ContactSign};
use cbundle_core::hyperbolic;
use cbundle_core::multicurve::{self, MulticurveClass, SurfaceDecomposition};

#[derive(Parser, Debug)]
#[command(name = "cbundle", version, about = "Contact structures on circle bundles: formulas, holonomy and model forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Existence, counting and bound formulas for a bundle (χ(S), e).
    Classify {
        #[arg(long = "chi-s", allow_hyphen_values = true)]
        chi_s: i64,
        #[arg(long, allow_hyphen_values = true)]
        euler: i64,
    },
    /// Translation number of the holonomy of the symmetric polygon of given area.
    Holonomy {
        #[arg(long)]
        genus: usize,
        /// Area, a number or an expression such as `4*pi`.
        #[arg(long)]
        area: String,
        #[arg(long, default_value_t = 100_000)]
        iters: usize,
    },
    /// Contact sign of each form in a form file (the model library by default).
    Forms {
        #[arg(long = "form-file")]
        form_file: Option<PathBuf>,
        /// Samples per axis.
        #[arg(long, default_value_t = formcalc::DEFAULT_GRID)]
        grid: usize,
    },
    /// Validation and tightness of a dividing set given by its complement.
    Multicurve {
        #[arg(long)]
        file: PathBuf,
        /// Compare isotopy classes with a second decomposition.
        #[arg(long)]
        compare: Option<PathBuf>,
        /// Euler number of the bundle, for the universal tightness verdict.
        #[arg(long, allow_hyphen_values = true)]
        euler: Option<i64>,
    },
    /// Number of index-n cyclic covering classes, by orbit enumeration.
    Covers {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        n: u64,
    },
    /// Vertices, angles and side pairings of the symmetric 4g-gon.
    Polygon {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        area: String,
    },
}

/// Failure modes, mapped to exit codes.
enum Failure {
    Usage { kind: &'static str, message: String },
}

impl Failure {
    fn usage(kind: &'static str, err: impl std::fmt::Display) -> Self {
        Failure::Usage {
            kind,
            message: err.to_string(),
        }
    }
}

/// A finished command: its outputs and whether every check passed.
struct Outcome {
    outputs: Value,
    passed: bool,
}

impl Outcome {
    fn ok(outputs: Value) -> Self {
        Outcome { outputs, passed: true }
    }
}

/// Rounds to 12 significant digits so reports are stable across platforms.
fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    json!(rounded)
}

/// Rationals are printed as `"p/q"` strings.
fn rational(r: impl std::fmt::Display) -> Value {
    Value::String(r.to_string())
}

fn parse_area(text: &str) -> Result<f64, Failure> {
    let expr = formcalc::parse_expr(text, &[], &HashMap::new()).map_err(|e| Failure::usage("area", e))?;
    expr.eval(&[], &[]).map_err(|e| Failure::usage("area", e))
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))
}

fn cmd_classify(chi_s: i64, euler: i64) -> Result<Outcome, Failure> {
    let b = BundleData::new(chi_s, euler).map_err(|e| Failure::usage("classify", e))?;
    let s = classify::summarize(b);
    let spectrum = match &s.enrollment_spectrum {
        Some(EnrollmentSpectrum::Finite(set)) => json!(set.iter().collect::<Vec<_>>()),
        Some(EnrollmentSpectrum::AllPositive) => json!("all"),
        None => Value::Null,
    };
    Ok(Outcome::ok(json!({
        "genus": b.genus(),
        "sphere": b.is_sphere(),
        "transverse_exists": s.transverse_exists,
        "flat_exists": s.flat_exists,
        "confoliation_bound": s.confoliation_ok,
        "tangent_degree": s.tangent_degree,
        "enrollment_spectrum": spectrum,
        "conjugacy_classes": s.conjugacy_classes,
        "vot_bound": s.vot_bound,
        "boundary_slope": s.boundary_slope.map(|bs| json!({
            "class": [bs.class.0, bs.class.1],
            "slope": rational(bs.slope),
        })),
        "whitney_class": s.whitney_class.map(|(a, b)| json!([a, b])),
        "sphere_enrollment": s.sphere_enrollment.map(rational),
    })))
}

fn cmd_holonomy(genus: usize, area: f64, iters: usize) -> Result<Outcome, Failure> {
    if iters == 0 {
        return Err(Failure::usage("holonomy", "--iters must be positive"));
    }
    let r = hyperbolic::holonomy(genus, area, iters).map_err(|e| Failure::usage("holonomy", e))?;
    let expected = r.area / (2.0 * PI);
    let rho = r.estimate.value;
    let trace = r.commutator.trace();
    let angle_trace = 2.0 * ((((4 * genus) as f64 - 2.0) * PI - r.area) / 2.0).cos().abs();
    let residual = (rho.abs() - expected).abs();
    Ok(Outcome {
        passed: residual <= r.estimate.error_bound + 1e-5,
        outputs: json!({
            "radius": num(r.polygon.radius()),
            "area": num(r.area),
            "interior_angle": num(r.polygon.interior_angle()),
            "side_length": num(r.polygon.side_lengths()[0]),
            "commutator": {
                "entries": r.commutator.entries().iter().map(|&x| num(x)).collect::<Vec<_>>(),
                "trace": num(trace),
                "abs_trace_expected": num(angle_trace),
                "kind": format!("{:?}", r.commutator.kind()),
            },
            "translation_number": num(rho),
            "error_bound": num(r.estimate.error_bound),
            "iterations": r.estimate.iterations,
            "area_over_2pi": num(expected),
            "residual": num(residual),
        }),
    })
}

fn cmd_polygon(genus: usize, area: f64) -> Result<Outcome, Failure> {
    let radius = hyperbolic::radius_for_area(genus, area).map_err(|e| Failure::usage("polygon", e))?;
    let poly = hyperbolic::build_symmetric_polygon(genus, radius).map_err(|e| Failure::usage("polygon", e))?;
    let pairings = hyperbolic::side_pairings(&poly).map_err(|e| Failure::usage("polygon", e))?;
    let commutator = hyperbolic::commutator_product(&pairings).map_err(|e| Failure::usage("polygon", e))?;
    Ok(Outcome::ok(json!({
        "radius": num(radius),
        "area": num(hyperbolic::polygon_area(&poly)),
        "max_area": num(hyperbolic::max_area(genus)),
        "interior_angle": num(poly.interior_angle()),
        "side_lengths": poly.side_lengths().into_iter().map(num).collect::<Vec<_>>(),
        "vertices": poly.vertices().iter().map(|v| json!([num(v.x()), num(v.y())])).collect::<Vec<_>>(),
        "pairings": pairings.iter().map(|p| json!({
            "entries": p.entries().iter().map(|&x| num(x)).collect::<Vec<_>>(),
            "kind": format!("{:?}", p.kind()),
        })).collect::<Vec<_>>(),
        "commutator_trace": num(commutator.trace()),
    })))
}

fn cmd_forms(form_file: Option<&PathBuf>, grid: usize) -> Result<Outcome, Failure> {
    if grid == 0 {
        return Err(Failure::usage("forms", "--grid must be positive"));
    }
    let forms: Vec<(String, formcalc::OneForm, Option<ContactSign>)> = match form_file {
        Some(path) => {
            let text = read(path)?;
            let file = formcalc::parse_form_file(&text).map_err(|e| {
                let message = match &e {
                    formcalc::FormError::Syntax { offset, .. } => {
                        let (line, col) = formcalc::line_col(&text, *offset);
                        format!("{}:{line}:{col}: {e}", path.display())
                    }
                    formcalc::FormError::UnknownVariable { name, offset: Some(offset) } => {
                        let (line, col) = formcalc::line_col(&text, *offset);
                        format!("{}:{line}:{col}: unknown variable '{name}'", path.display())
                    }
                    _ => e.to_string(),
                };
                Failure::usage("parse", message)
            })?;
            file.forms
                .into_iter()
                .enumerate()
                .map(|(i, f)| (f.name.unwrap_or_else(|| format!("form{}", i + 1)), f.form, f.expect))
                .collect()
        }
        None => formcalc::model_library()
            .into_iter()
            .filter(|e| e.form.dim() == 3)
            .map(|e| (e.name.to_string(), e.form, e.expected))
            .collect(),
    };
    let mut passed = true;
    let mut results = Vec::new();
    for (name, form, expected) in forms {
        let mut entry = Map::new();
        entry.insert("name".into(), json!(name));
        entry.insert("form".into(), json!(form.to_string()));
        entry.insert("chart".into(), json!(form.chart().names()));
        match formcalc::contact_sign(&form, &[grid]) {
            Ok(report) => {
                let ok = match expected {
                    Some(sign) => sign == report.sign,
                    None => report.sign != ContactSign::Mixed,
                };
                passed &= ok;
                entry.insert("sign".into(), json!(report.sign.as_str()));
                entry.insert("expected".into(), json!(expected.map(ContactSign::as_str)));
                entry.insert("ok".into(), json!(ok));
                entry.insert("min_abs".into(), num(report.min_abs));
                entry.insert("samples".into(), json!(report.samples));
                entry.insert("excluded".into(), json!(report.excluded));
                entry.insert(
                    "witnesses".into(),
                    json!(report
                        .witnesses
                        .iter()
                        .map(|w| w.iter().map(|&x| num(x)).collect::<Vec<_>>())
                        .collect::<Vec<_>>()),
                );
            }
            Err(e) => {
                passed = false;
                entry.insert("ok".into(), json!(false));
                entry.insert("error".into(), json!(e.to_string()));
            }
        }
        results.push(Value::Object(entry));
    }
    Ok(Outcome {
        outputs: json!({ "grid": grid, "forms": results, "all_ok": passed }),
        passed,
    })
}

fn decomposition_report(dec: &SurfaceDecomposition, euler: Option<i64>) -> (Value, bool) {
    let validation = dec.validate();
    let mut out = Map::new();
    out.insert("valid".into(), json!(validation.valid));
    out.insert("diagnostics".into(), json!(validation.diagnostics));
    out.insert("pieces".into(), json!(dec.pieces.len()));
    out.insert("curves".into(), json!(dec.curve_count()));
    out.insert("has_disk".into(), json!(dec.has_disk()));
    if validation.valid {
        let put = |out: &mut Map<String, Value>, key: &str, v: Result<Value, multicurve::MulticurveError>| {
            out.insert(key.into(), v.unwrap_or_else(|e| json!({ "error": e.to_string() })));
        };
        put(&mut out, "essential", multicurve::is_essential(dec).map(|b| json!(b)));
        put(
            &mut out,
            "convex_neighborhood_tight",
            multicurve::convex_neighborhood_tight(dec).map(|b| json!(b)),
        );
        if let Some(e) = euler {
            put(
                &mut out,
                "universal_tightness",
                multicurve::universal_tightness(dec, e).map(|t| json!(t.to_string())),
            );
        }
    }
    (Value::Object(out), validation.valid)
}

fn load_decomposition(path: &PathBuf) -> Result<SurfaceDecomposition, Failure> {
    let text = read(path)?;
    SurfaceDecomposition::parse(&text).map_err(|e| Failure::usage("parse", format!("{}: {e}", path.display())))
}

fn cmd_multicurve(file: &PathBuf, compare: Option<&PathBuf>, euler: Option<i64>) -> Result<Outcome, Failure> {
    let dec = load_decomposition(file)?;
    let (report, mut passed) = decomposition_report(&dec, euler);
    let mut outputs = json!({ "decomposition": report });
    if let Some(other_path) = compare {
        let other = load_decomposition(other_path)?;
        let (other_report, other_valid) = decomposition_report(&other, euler);
        passed &= other_valid;
        outputs["compare"] = other_report;
        if passed {
            let equal = multicurve::isotopy_equal(&MulticurveClass::new(dec), &MulticurveClass::new(other))
                .map_err(|e| Failure::usage("multicurve", e))?;
            outputs["equal"] = json!(equal);
        }
    }
    Ok(Outcome { outputs, passed })
}

fn cmd_covers(genus: u64, n: u64) -> Result<Outcome, Failure> {
    let orbits = classify::cohomology_orbit_count(genus, n).map_err(|e| Failure::usage("covers", e))?;
    let divisors = classify::divisor_count(n);
    Ok(Outcome {
        outputs: json!({
            "orbit_count": orbits,
            "divisor_count": divisors,
            "agree": orbits == divisors,
        }),
        passed: orbits == divisors,
    })
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Classify { chi_s, euler } => cmd_classify(*chi_s, *euler),
        Command::Holonomy { genus, area, iters } => cmd_holonomy(*genus, parse_area(area)?, *iters),
        Command::Forms { form_file, grid } => cmd_forms(form_file.as_ref(), *grid),
        Command::Multicurve { file, compare, euler } => cmd_multicurve(file, compare.as_ref(), *euler),
        Command::Covers { genus, n } => cmd_covers(*genus, *n),
        Command::Polygon { genus, area } => cmd_polygon(*genus, parse_area(area)?),
    }
}

fn describe(command: &Command) -> (&'static str, Value) {
    match command {
        Command::Classify { chi_s, euler } => ("classify", json!({ "chi_s": chi_s, "euler": euler })),
        Command::Holonomy { genus, area, iters } => {
            ("holonomy", json!({ "genus": genus, "area": area, "iters": iters }))
        }
        Command::Forms { form_file, grid } => (
            "forms",
            json!({ "form_file": form_file.as_ref().map(|p| p.display().to_string()), "grid": grid }),
        ),
        Command::Multicurve { file, compare, euler } => (
            "multicurve",
            json!({
                "file": file.display().to_string(),
                "compare": compare.as_ref().map(|p| p.display().to_string()),
                "euler": euler,
            }),
        ),
        Command::Covers { genus, n } => ("covers", json!({ "genus": genus, "n": n })),
        Command::Polygon { genus, area } => ("polygon", json!({ "genus": genus, "area": area })),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, inputs) = describe(&cli.command);
    let mut report = json!({ "command": name, "inputs": inputs });
    let code = match run(&cli.command) {
        Ok(outcome) => {
            report["outputs"] = outcome.outputs;
            if outcome.passed {
                0
            } else {
                eprintln!("cbundle {name}: check failed");
                1
            }
        }
        Err(Failure::Usage { kind, message }) => {
            eprintln!("cbundle {name}: {message}");
            report["error"] = json!({ "kind": kind, "message": message });
            2
        }
    };
    report["version"] = json!(env!("CARGO_PKG_VERSION"));
    report["deterministic"] = json!(true);
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    // A closed pipe (`cbundle ... | head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(code)
}
