use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use sliceq::calculus::{
    self, cullen_derivative, rotation_average, rotate_function, OperatorName,
    SliceDifferentialReport,
};
use sliceq::divisor::{divisor_of_poly, divisor_semiregular, Divisor};
use sliceq::jensen::jensen;
use sliceq::measure::{CircleRule, SphereMeasure};
use sliceq::quadrature::mean_value;
use sliceq::report::{CaseReport, FormulaReport, CSV_HEADER};
use sliceq::verify::{all_pass, run_suite, SuiteConfig};
use sliceq::{ImaginaryUnit, Quaternion, SemiRegular, SlicePolynomial, StemEvaluator};

/// Exit codes: 0 all checks pass, 1 input error, 2 check failure.
#[derive(Parser)]
#[command(name = "sliceq", version, about = "Quaternionic slice analysis toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureChoice {
    Octahedral6,
    Antipodal,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct CommonOpts {
    /// Seed for every randomized choice (measures, suite cases).
    #[arg(long)]
    seed: Option<u64>,
    /// Circle-rule node count (at least 8).
    #[arg(long)]
    nodes: Option<usize>,
    /// Sphere measure used by the integral formulas.
    #[arg(long, value_enum)]
    measure: Option<MeasureChoice>,
    /// Atom count n for the random symmetrized measure (2n points).
    #[arg(long)]
    measure_n: Option<usize>,
    /// Finite-difference step, in (0, 0.1].
    #[arg(long)]
    step_h: Option<f64>,
    /// Report format.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Plain-text key=value defaults; explicit flags win on conflict.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone)]
struct Settings {
    seed: u64,
    nodes: usize,
    measure: MeasureChoice,
    measure_n: usize,
    step_h: f64,
    format: OutputFormat,
    out: Option<PathBuf>,
}

impl CommonOpts {
    fn resolve(&self) -> Result<Settings> {
        let mut file: BTreeMap<String, String> = BTreeMap::new();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read config file {}", path.display()))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| {
                    anyhow!("config line {}: expected key=value, got {line:?}", lineno + 1)
                })?;
                file.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        let from_file = |key: &str| file.get(key).cloned();
        let seed = match self.seed {
            Some(s) => s,
            None => from_file("seed").map(|v| v.parse()).transpose()?.unwrap_or(42),
        };
        let nodes = match self.nodes {
            Some(n) => n,
            None => from_file("nodes").map(|v| v.parse()).transpose()?.unwrap_or(64),
        };
        if nodes < 8 {
            bail!("nodes must be at least 8, got {nodes}");
        }
        let step_h = match self.step_h {
            Some(h) => h,
            None => from_file("step_h").map(|v| v.parse()).transpose()?.unwrap_or(1e-4),
        };
        if !(step_h > 0.0 && step_h <= 0.1) {
            bail!("step_h must lie in (0, 0.1], got {step_h}");
        }
        let measure = match self.measure {
            Some(m) => m,
            None => match from_file("measure").as_deref() {
                Some("octahedral6") | None => MeasureChoice::Octahedral6,
                Some("antipodal") => MeasureChoice::Antipodal,
                Some("random") => MeasureChoice::Random,
                Some(other) => bail!("unknown measure {other:?} in config file"),
            },
        };
        let measure_n = match self.measure_n {
            Some(n) => n,
            None => from_file("measure_n").map(|v| v.parse()).transpose()?.unwrap_or(8),
        };
        let format = match self.format {
            Some(f) => f,
            None => match from_file("format").as_deref() {
                Some("csv") => OutputFormat::Csv,
                _ => OutputFormat::Json,
            },
        };
        Ok(Settings {
            seed,
            nodes,
            measure,
            measure_n,
            step_h,
            format,
            out: self.out.clone(),
        })
    }
}

impl Settings {
    fn sphere_measure(&self) -> SphereMeasure {
        match self.measure {
            MeasureChoice::Octahedral6 => SphereMeasure::octahedral6(),
            MeasureChoice::Antipodal => {
                SphereMeasure::antipodal_pair(sliceq::quaternion::sample_unit_imaginary(self.seed))
            }
            MeasureChoice::Random => SphereMeasure::random_symmetrized(self.measure_n, self.seed),
        }
    }

    fn emit(&self, body: String) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, body + "\n")
                .with_context(|| format!("cannot write report to {}", path.display()))?,
            None => println!("{body}"),
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a polynomial (or semi-regular) file at a point.
    Eval {
        input: PathBuf,
        /// Evaluation point as w,x,y,z.
        #[arg(long, value_parser = parse_quaternion)]
        at: Quaternion,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Check the mean value formula for a polynomial at one configuration.
    Mvf {
        input: PathBuf,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 0.3)]
        r: f64,
        /// Axis of the reconstruction slice as x,y,z.
        #[arg(long, value_parser = parse_unit)]
        axis: Option<ImaginaryUnit>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Check the Poisson formula for the real part of a real-coefficient polynomial.
    Poisson {
        input: PathBuf,
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Jensen report for a polynomial or semi-regular file.
    Jensen {
        input: PathBuf,
        #[arg(long)]
        rho: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Print the slice divisor of a polynomial or semi-regular file.
    Divisor {
        input: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Blaschke-factorize a semi-regular file over the ball of radius rho.
    Factor {
        input: PathBuf,
        #[arg(long)]
        rho: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Boundary-modulus table of one Blaschke factor, as CSV.
    Blaschke {
        /// Factor point as w,x,y,z.
        #[arg(long, value_parser = parse_quaternion)]
        a: Quaternion,
        #[arg(long)]
        rho: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Differential-operator reports for a polynomial at a point.
    Laplacian {
        input: PathBuf,
        #[arg(long, value_parser = parse_quaternion)]
        at: Quaternion,
        /// Also evaluate the finite-difference path.
        #[arg(long)]
        numeric: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Rotation-average a polynomial (optionally rotate by an axis first).
    Rotavg {
        input: PathBuf,
        /// Conjugation axis as x,y,z.
        #[arg(long, value_parser = parse_unit)]
        axis: Option<ImaginaryUnit>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the whole verification battery.
    Suite {
        /// Tolerance overrides, repeatable: --tol case=value.
        #[arg(long = "tol", value_parser = parse_tolerance)]
        tolerances: Vec<(String, f64)>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn parse_quaternion(s: &str) -> Result<Quaternion, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected w,x,y,z with four components, got {s:?}"));
    }
    let mut v = [0.0f64; 4];
    for (i, p) in parts.iter().enumerate() {
        v[i] = p.trim().parse().map_err(|e| format!("component {i}: {e}"))?;
    }
    Ok(Quaternion::new(v[0], v[1], v[2], v[3]))
}

fn parse_unit(s: &str) -> Result<ImaginaryUnit, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z with three components, got {s:?}"));
    }
    let mut v = [0.0f64; 3];
    for (i, p) in parts.iter().enumerate() {
        v[i] = p.trim().parse().map_err(|e| format!("component {i}: {e}"))?;
    }
    ImaginaryUnit::new(v[0], v[1], v[2]).map_err(|e| e.to_string())
}

fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected case=value, got {s:?}"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("tolerance value: {e}"))?;
    Ok((k.trim().to_string(), v))
}

/// Either a bare polynomial (JSON array of coefficient quadruples) or a
/// semi-regular pair `{"denom": [...], "numer": [...]}`.
enum InputFunction {
    Poly(SlicePolynomial),
    SemiRegular(SemiRegular),
}

impl InputFunction {
    fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read input file {}", path.display()))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .with_context(|| format!("{} is not valid JSON", path.display()))?;
        if value.is_array() {
            let poly: SlicePolynomial = serde_json::from_value(value).with_context(|| {
                format!("{}: expected an array of [w,x,y,z] quadruples", path.display())
            })?;
            Ok(InputFunction::Poly(poly))
        } else if value.is_object() {
            let sr: SemiRegular = serde_json::from_value(value).with_context(|| {
                format!(
                    "{}: expected an object {{\"denom\": [...], \"numer\": [...]}}",
                    path.display()
                )
            })?;
            Ok(InputFunction::SemiRegular(sr))
        } else {
            bail!("{}: expected a JSON array or object", path.display());
        }
    }

    fn into_semiregular(self) -> SemiRegular {
        match self {
            InputFunction::Poly(p) => SemiRegular::from_poly(p),
            InputFunction::SemiRegular(sr) => sr,
        }
    }

    fn poly(self, path: &Path) -> Result<SlicePolynomial> {
        match self {
            InputFunction::Poly(p) => Ok(p),
            InputFunction::SemiRegular(_) => {
                bail!("{}: this command needs a plain polynomial file", path.display())
            }
        }
    }
}

fn divisor_of(input: InputFunction) -> Result<Divisor> {
    let d = match input {
        InputFunction::Poly(p) => divisor_of_poly(&p)?,
        InputFunction::SemiRegular(sr) => divisor_semiregular(&sr)?,
    };
    Ok(d)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap would exit 2; input problems are exit 1 here
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(checks_pass) => {
            if checks_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Eval { input, at, common } => {
            let s = common.resolve()?;
            let value = match InputFunction::load(&input)? {
                InputFunction::Poly(p) => p.eval(&at),
                InputFunction::SemiRegular(sr) => sr.eval(&at).map_err(|e| anyhow!("{e}"))?,
            };
            s.emit(serde_json::to_string(&value)?)?;
            Ok(true)
        }
        Command::Mvf { input, a, b, r, axis, common } => {
            let s = common.resolve()?;
            let f = InputFunction::load(&input)?.poly(&input)?;
            let axis = axis.unwrap_or(sliceq::quaternion::UNIT_I);
            let mu = s.sphere_measure();
            let rule = CircleRule::new(s.nodes);
            let mv = mean_value(|p| Ok(f.eval(p)), a, b, axis, r, &mu, rule)
                .map_err(|e| anyhow!("{e}"))?;
            let direct = f.eval(&(Quaternion::from_real(a) + axis.as_quaternion().scale(b)));
            let abs_error = mv.reconstructed.dist(&direct);
            let report = FormulaReport {
                formula: "general mean value formula".into(),
                config: serde_json::json!({
                    "a": a, "b": b, "r": r, "nodes": s.nodes, "seed": s.seed,
                }),
                lhs: serde_json::to_value(mv.reconstructed)?,
                rhs: serde_json::to_value(direct)?,
                abs_error,
                pass: abs_error <= 1e-9,
            };
            let pass = report.pass;
            s.emit(serde_json::to_string_pretty(&report)?)?;
            Ok(pass)
        }
        Command::Poisson { input, a, radius, common } => {
            let s = common.resolve()?;
            let f = InputFunction::load(&input)?.poly(&input)?;
            if !f.is_real_coeff(1e-12) {
                bail!("{}: poisson needs a real-coefficient polynomial", input.display());
            }
            let mu = s.sphere_measure();
            let rule = CircleRule::new(s.nodes);
            let got = sliceq::quadrature::poisson(
                |p| Ok(f.eval(p).re()),
                a,
                radius,
                &mu,
                rule,
            )
            .map_err(|e| anyhow!("{e}"))?;
            let want = f.eval(&Quaternion::from_real(a)).re();
            let abs_error = (got - want).abs();
            let report = FormulaReport {
                formula: "poisson formula".into(),
                config: serde_json::json!({"a": a, "radius": radius, "nodes": s.nodes}),
                lhs: got.into(),
                rhs: want.into(),
                abs_error,
                pass: abs_error <= 1e-8,
            };
            let pass = report.pass;
            s.emit(serde_json::to_string_pretty(&report)?)?;
            Ok(pass)
        }
        Command::Jensen { input, rho, common } => {
            let s = common.resolve()?;
            let f = InputFunction::load(&input)?.into_semiregular();
            let mu = s.sphere_measure();
            let rule = CircleRule::new(s.nodes);
            let report = jensen(&f, rho, &mu, rule).map_err(|e| anyhow!("{e}"))?;
            let pass = report.gap >= -1e-8;
            s.emit(serde_json::to_string_pretty(&report)?)?;
            Ok(pass)
        }
        Command::Divisor { input, common } => {
            let s = common.resolve()?;
            let d = divisor_of(InputFunction::load(&input)?).map_err(|e| anyhow!("{e}"))?;
            s.emit(serde_json::to_string(&d)?)?;
            Ok(true)
        }
        Command::Factor { input, rho, common } => {
            let s = common.resolve()?;
            let f = InputFunction::load(&input)?.into_semiregular();
            let (f0, factors) = sliceq::blaschke::factorize(&f, rho).map_err(|e| anyhow!("{e}"))?;
            // reconstruction residual at a few deterministic interior points
            let mut residual = 0.0f64;
            for seed in 0..8 {
                let axis = sliceq::quaternion::sample_unit_imaginary(s.seed.wrapping_add(seed));
                let t = 0.31 * seed as f64;
                let p = Quaternion::from_real(0.55 * rho * t.cos())
                    + axis.as_quaternion().scale(0.55 * rho * t.sin());
                let got = sliceq::blaschke::eval_factorization(&f0, &factors, &p);
                if let (Ok(want), Ok(got)) = (f.eval(&p), got) {
                    residual = residual.max(got.dist(&want) / want.norm().max(1.0));
                }
            }
            let body = serde_json::json!({
                "f0": f0,
                "factors": factors,
                "reconstruction_residual": residual,
                "pass": residual <= 1e-8,
            });
            let pass = residual <= 1e-8;
            s.emit(serde_json::to_string_pretty(&body)?)?;
            Ok(pass)
        }
        Command::Blaschke { a, rho, common } => {
            let s = common.resolve()?;
            let factor =
                sliceq::blaschke::BlaschkeFactor::new(a, rho).map_err(|e| anyhow!("{e}"))?;
            let mut lines = vec!["theta,axis_x,axis_y,axis_z,modulus,defect".to_string()];
            let mut worst = 0.0f64;
            for k in 0..s.nodes {
                let theta = std::f64::consts::TAU * k as f64 / s.nodes as f64;
                let axis = sliceq::quaternion::sample_unit_imaginary(s.seed.wrapping_add(k as u64));
                let q = Quaternion::from_real(rho * theta.cos())
                    + axis.as_quaternion().scale(rho * theta.sin());
                let modulus = factor.eval(&q).map_err(|e| anyhow!("{e}"))?.norm();
                let defect = (modulus - 1.0).abs();
                worst = worst.max(defect);
                let [x, y, z] = axis.components();
                lines.push(format!("{theta},{x},{y},{z},{modulus},{defect}"));
            }
            s.emit(lines.join("\n"))?;
            Ok(worst <= 1e-9)
        }
        Command::Laplacian { input, at, numeric, common } => {
            let s = common.resolve()?;
            let f = InputFunction::load(&input)?.poly(&input)?;
            let stem = StemEvaluator::from_poly(&f);
            let h = s.step_h * (1.0 + at.norm());
            let mut reports = vec![
                SliceDifferentialReport::exact(OperatorName::Dstar, cullen_derivative(&f).eval(&at)),
                SliceDifferentialReport::exact(OperatorName::Dbarstar, sliceq::quaternion::ZERO),
                SliceDifferentialReport::exact(OperatorName::Lapstar, sliceq::quaternion::ZERO),
                SliceDifferentialReport::exact(OperatorName::Lapprime, sliceq::quaternion::ZERO),
                SliceDifferentialReport::exact(OperatorName::Lapsecond, sliceq::quaternion::ZERO),
                SliceDifferentialReport::exact(OperatorName::G, sliceq::quaternion::ZERO),
            ];
            if numeric {
                reports.push(SliceDifferentialReport::finite_difference(
                    OperatorName::Dstar,
                    calculus::dstar_numeric(&stem, &at, h).map_err(|e| anyhow!("{e}"))?,
                    h,
                ));
                reports.push(SliceDifferentialReport::finite_difference(
                    OperatorName::Dbarstar,
                    calculus::dbarstar_numeric(&stem, &at, h).map_err(|e| anyhow!("{e}"))?,
                    h,
                ));
                reports.push(SliceDifferentialReport::finite_difference(
                    OperatorName::G,
                    calculus::apply_g(|x| f.eval(&x), &at, h),
                    h,
                ));
            }
            s.emit(serde_json::to_string_pretty(&reports)?)?;
            Ok(true)
        }
        Command::Rotavg { input, axis, common } => {
            let s = common.resolve()?;
            let f = InputFunction::load(&input)?.poly(&input)?;
            let f = match axis {
                Some(w) => rotate_function(&w, &f),
                None => f,
            };
            s.emit(serde_json::to_string(&rotation_average(&f))?)?;
            Ok(true)
        }
        Command::Suite { tolerances, common } => {
            let s = common.resolve()?;
            let cfg = SuiteConfig {
                seed: s.seed,
                nodes: s.nodes,
                tolerance_overrides: tolerances.into_iter().collect(),
            };
            let reports = run_suite(&cfg);
            let pass = all_pass(&reports);
            let body = match s.format {
                OutputFormat::Json => serde_json::to_string_pretty(&reports)?,
                OutputFormat::Csv => {
                    let mut lines = vec![CSV_HEADER.to_string()];
                    lines.extend(reports.iter().map(CaseReport::csv_row));
                    lines.join("\n")
                }
            };
            s.emit(body)?;
            Ok(pass)
        }
    }
}
