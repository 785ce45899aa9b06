use airyspec::airy::{self, ZeroKind};
use airyspec::bounds;
use airyspec::export::csv_row;
use airyspec::galerkin::{self, GalerkinConfig, LeftBc};
use airyspec::halfline::{self, BcTag, HalfLineProblem};
use airyspec::roots::Rectangle;
use airyspec::semiclassical::{
    margin, residual_scaling, Domain, GridSpec, MarginReport, Model, PerpPoint, PlanarBc, Potential, PotentialModel,
    QuasimodeOptions, Tangential,
};
use airyspec::transmission;
use airyspec::{Complex64, Error};
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "airyspec", version, about = "Spectra of complex Airy operators")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON object whose keys mirror the long flags; explicit flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Airy function evaluation.
    #[command(subcommand)]
    Airy(AiryCmd),
    /// Real zeros of Ai or Ai'.
    Zeros {
        #[arg(long, value_enum)]
        kind: ZeroArg,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Half-line operator with Dirichlet, Neumann or Robin condition.
    #[command(subcommand)]
    Halfline(HalflineCmd),
    /// Whole-line operator with a transmission condition at 0.
    #[command(subcommand)]
    Transmission(TransmissionCmd),
    /// Galerkin discretization on [0, L].
    #[command(subcommand)]
    Galerkin(GalerkinCmd),
    /// Semiclassical margin of -h^2 Laplacian + iV on a planar domain.
    Margin(MarginArgs),
    /// Quasimode residuals.
    #[command(subcommand)]
    Quasimode(QuasimodeCmd),
    /// Laplace-type integral bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
}

#[derive(Subcommand, Debug)]
enum AiryCmd {
    /// Ai and Ai' at one point (JSON).
    Eval {
        /// RE,IM
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        z: (f64, f64),
    },
}

#[derive(Subcommand, Debug)]
enum HalflineCmd {
    /// n-th eigenvalue (JSON).
    Eig {
        #[arg(long, value_enum)]
        bc: BcArg,
        #[arg(long, default_value_t = 1.0)]
        j: f64,
        #[arg(long, default_value_t = 0.0)]
        kappa: f64,
        #[arg(short = 'n', long = "n", default_value_t = 1)]
        n: usize,
    },
    /// Robin branch over y in [0, ymax] at j = 1 (CSV).
    Trajectory {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        ymax: f64,
        #[arg(long, default_value_t = 500)]
        steps: usize,
    },
}

#[derive(Subcommand, Debug)]
enum TransmissionCmd {
    /// Transmission branch over y in [0, ymax] at j = 1 (CSV).
    Trajectory {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        ymax: f64,
        #[arg(long, default_value_t = 500)]
        steps: usize,
    },
    /// Argument-principle count of eigenvalues in a rectangle (JSON).
    Count {
        #[arg(long)]
        y: f64,
        /// re_min,re_max,im_min,im_max
        #[arg(long, value_parser = parse_rect, allow_hyphen_values = true)]
        rect: Rectangle,
    },
}

#[derive(Args, Debug, Clone)]
struct MatrixArgs {
    #[arg(long = "L", default_value_t = 10.0)]
    length: f64,
    #[arg(long = "N", default_value_t = 200)]
    size: usize,
    #[arg(long, default_value_t = 1.0)]
    j: f64,
    #[arg(long, value_enum, default_value_t = BcArg::R)]
    bc: BcArg,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
}

impl MatrixArgs {
    fn config(&self) -> GalerkinConfig {
        GalerkinConfig::new(self.length, self.size, self.j, left_bc(self.bc, self.kappa))
    }
}

#[derive(Subcommand, Debug)]
enum GalerkinCmd {
    /// Leftmost eigenvalue against the characteristic-equation value, over
    /// lists of j and kappa (CSV).
    Leftmost {
        #[arg(long = "L", default_value_t = 10.0)]
        length: f64,
        #[arg(long = "N", default_value_t = 200)]
        size: usize,
        #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "1")]
        j: Vec<f64>,
        #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "1")]
        kappa: Vec<f64>,
        #[arg(long, value_enum, default_value_t = BcArg::R)]
        bc: BcArg,
    },
    /// sup over nu of the resolvent norm on Re z = gamma (JSON).
    Resolvent {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        /// A,B
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        nu_range: (f64, f64),
        #[arg(long, default_value_t = 2048)]
        samples: usize,
    },
    /// Semigroup norms on [0, t-max] (CSV).
    Semigroup {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 61)]
        points: usize,
        /// Dirichlet problem on [-L/2, L/2] instead of the half-line model.
        #[arg(long)]
        surrogate: bool,
    },
}

#[derive(Args, Debug)]
struct DomainArgs {
    #[arg(long, value_enum, default_value_t = DomainArg::Disk)]
    domain: DomainArg,
    /// Disk radius.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value_t = 1.0)]
    inner: f64,
    #[arg(long, default_value_t = 2.0)]
    outer: f64,
    /// x1, x2, linear:C1,C2 or quadratic:A11,A12,A22,B1,B2,C0
    #[arg(long, value_parser = parse_potential, default_value = "x1")]
    potential: PotentialModel,
}

impl DomainArgs {
    fn domain(&self) -> Domain {
        match self.domain {
            DomainArg::Disk => Domain::Disk {
                center: [0.0, 0.0],
                radius: self.radius,
            },
            DomainArg::Annulus => Domain::Annulus {
                center: [0.0, 0.0],
                inner: self.inner,
                outer: self.outer,
            },
        }
    }
}

#[derive(Args, Debug)]
struct MarginArgs {
    #[command(flatten)]
    geometry: DomainArgs,
    #[arg(long, value_enum)]
    bc: PlanarArg,
    #[arg(long, default_value_t = 0.0)]
    kappa: f64,
}

#[derive(Subcommand, Debug)]
enum QuasimodeCmd {
    /// Relative residual of the boundary quasimode over a list of h.
    Residual {
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        h_list: Vec<f64>,
        #[command(flatten)]
        geometry: DomainArgs,
        #[arg(long, value_enum, default_value_t = PlanarArg::R)]
        bc: PlanarArg,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[arg(long, default_value_t = 0.4)]
        gamma: f64,
        #[arg(long, value_enum, default_value_t = TangentialArg::Oscillator)]
        tangential: TangentialArg,
        /// Drop the cutoff and cover the whole boundary collar.
        #[arg(long)]
        no_cutoff: bool,
        /// Double the grid in both directions.
        #[arg(long)]
        refine: bool,
        /// Index into the perp points; defaults to the candidate with the smallest V.
        #[arg(long)]
        point: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// The cubic Laplace integral against its closed-form bound.
    Laplace {
        /// Side of the log-spaced (alpha, beta) grid (CSV).
        #[arg(long, num_args = 0..=1, default_missing_value = "20")]
        grid: Option<usize>,
        #[arg(long, requires = "beta", conflicts_with_all = ["grid", "omega"])]
        alpha: Option<f64>,
        #[arg(long, requires = "alpha")]
        beta: Option<f64>,
        /// Ratio to the Laplace asymptotics at beta = omega, alpha = 1/12.
        #[arg(long, conflicts_with = "grid")]
        omega: Option<f64>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum ZeroArg {
    Ai,
    Aip,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum BcArg {
    #[value(alias = "dirichlet")]
    D,
    #[value(alias = "neumann")]
    N,
    #[value(alias = "robin")]
    R,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum PlanarArg {
    #[value(alias = "dirichlet")]
    D,
    #[value(alias = "neumann")]
    N,
    #[value(alias = "robin")]
    R,
    /// Transmission, Neumann outside (same as tn).
    T,
    Tn,
    Td,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum DomainArg {
    Disk,
    Annulus,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum TangentialArg {
    Oscillator,
    Quoted,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum Format {
    Json,
    Csv,
}

fn floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", v.len()));
    }
    Ok(v)
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let v = floats(s, 2)?;
    Ok((v[0], v[1]))
}

fn parse_rect(s: &str) -> Result<Rectangle, String> {
    let v = floats(s, 4)?;
    Ok(Rectangle::new(v[0], v[1], v[2], v[3]))
}

fn parse_potential(s: &str) -> Result<PotentialModel, String> {
    match s {
        "x1" => return Ok(PotentialModel::x1()),
        "x2" => return Ok(PotentialModel::Linear { c: [0.0, 1.0] }),
        _ => {}
    }
    match s.split_once(':') {
        Some(("linear", rest)) => {
            let v = floats(rest, 2)?;
            Ok(PotentialModel::Linear { c: [v[0], v[1]] })
        }
        Some(("quadratic", rest)) => {
            let v = floats(rest, 6)?;
            Ok(PotentialModel::Quadratic {
                a: [[v[0], v[1]], [v[1], v[2]]],
                b: [v[3], v[4]],
                c0: v[5],
            })
        }
        _ => Err(format!("unknown potential {s:?}")),
    }
}

fn left_bc(bc: BcArg, kappa: f64) -> LeftBc {
    match bc {
        BcArg::D => LeftBc::Dirichlet,
        BcArg::N => LeftBc::Neumann,
        BcArg::R => LeftBc::Robin(kappa),
    }
}

fn bc_tag(bc: BcArg) -> BcTag {
    match bc {
        BcArg::D => BcTag::Dirichlet,
        BcArg::N => BcTag::Neumann,
        BcArg::R => BcTag::Robin,
    }
}

fn planar(bc: PlanarArg) -> PlanarBc {
    match bc {
        PlanarArg::D => PlanarBc::Dirichlet,
        PlanarArg::N => PlanarBc::Neumann,
        PlanarArg::R => PlanarBc::Robin,
        PlanarArg::T | PlanarArg::Tn => PlanarBc::TransmissionNeumann,
        PlanarArg::Td => PlanarBc::TransmissionDirichlet,
    }
}

fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_else(|_| "null".into());
    s.push('\n');
    s
}

/// Failure after argument parsing: exit 1.
enum Failure {
    Compute(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    Ok(match &cli.command {
        Command::Airy(AiryCmd::Eval { z }) => {
            let z = Complex64::new(z.0, z.1);
            let p = airy::eval_pair(z)?;
            pretty(&json!({
                "z": complex(z),
                "ai": complex(p.ai),
                "ai_prime": complex(p.ai_prime),
                "method": p.method,
                "est_rel_error": p.est_rel_error,
            }))
        }
        Command::Zeros { kind, count } => {
            let (k, name) = match kind {
                ZeroArg::Ai => (ZeroKind::OfAi, "ai"),
                ZeroArg::Aip => (ZeroKind::OfAiPrime, "aip"),
            };
            let mut out = String::from("kind,index,value\n");
            for n in 1..=*count {
                let z = airy::real_zero(k, n)?;
                out.push_str(&format!("{name},{n},{}", csv_row(&[z.value])));
            }
            out
        }
        Command::Halfline(HalflineCmd::Eig { bc, j, kappa, n }) => {
            let problem = HalfLineProblem::new(*j, *kappa, bc_tag(*bc))?;
            let l = halfline::eigenvalue(&problem, *n)?;
            pretty(&json!({
                "bc": problem.bc,
                "j": j,
                "kappa": kappa,
                "n": n,
                "re": l.re,
                "im": l.im,
            }))
        }
        Command::Halfline(HalflineCmd::Trajectory { n, ymax, steps }) => halfline::trajectory(*n, *ymax, *steps)?.to_csv(),
        Command::Transmission(TransmissionCmd::Trajectory { n, ymax, steps }) => {
            transmission::pair_unit(*n, *ymax, *steps)?.to_csv()
        }
        Command::Transmission(TransmissionCmd::Count { y, rect }) => {
            let r = transmission::count_zeros(*y, *rect)?;
            pretty(&serde_json::to_value(r).unwrap_or(Value::Null))
        }
        Command::Galerkin(GalerkinCmd::Leftmost {
            length,
            size,
            j,
            kappa,
            bc,
        }) => {
            let kappas: Vec<f64> = if *bc == BcArg::R { kappa.clone() } else { vec![0.0] };
            let cases: Vec<(f64, f64)> = kappas.iter().flat_map(|&k| j.iter().map(move |&j| (k, j))).collect();
            let rows: Vec<Vec<f64>> = cases
                .par_iter()
                .map(|&(k, j)| -> airyspec::Result<Vec<f64>> {
                    let g = galerkin::leftmost(&GalerkinConfig::new(*length, *size, j, left_bc(*bc, k)))?;
                    // the characteristic equation needs j > 0
                    let c = if j > 0.0 {
                        halfline::eigenvalue(&HalfLineProblem::new(j, k, bc_tag(*bc))?, 1)?
                    } else {
                        Complex64::new(f64::NAN, f64::NAN)
                    };
                    Ok(vec![j, k, g.re, g.im, c.re, c.im])
                })
                .collect::<airyspec::Result<_>>()?;
            let mut out = String::from("j,kappa,re_galerkin,im_galerkin,re_characteristic,im_characteristic\n");
            for r in rows {
                out.push_str(&csv_row(&r));
            }
            out
        }
        Command::Galerkin(GalerkinCmd::Resolvent {
            matrix,
            gamma,
            nu_range,
            samples,
        }) => {
            let config = matrix.config();
            let m = galerkin::assemble(&config)?;
            let scan = galerkin::resolvent_scan(&m, *gamma, *nu_range, *samples)?;
            pretty(&json!({
                "config": config,
                "gamma": gamma,
                "nu_range": [nu_range.0, nu_range.1],
                "samples": samples,
                "sup_norm": scan.sup_norm,
                "argmax_nu": scan.argmax_nu,
            }))
        }
        Command::Galerkin(GalerkinCmd::Semigroup {
            matrix,
            t_max,
            points,
            surrogate,
        }) => {
            if *points < 2 {
                return Err(Error::InvalidInput("points must be at least 2".into()).into());
            }
            let config = if *surrogate {
                GalerkinConfig::whole_line_surrogate(matrix.length / 2.0, matrix.size, matrix.j)
            } else {
                matrix.config()
            };
            let m = galerkin::assemble(&config)?;
            let times: Vec<f64> = (0..*points).map(|k| t_max * k as f64 / (*points - 1) as f64).collect();
            let norms = galerkin::semigroup_norms(&m, &times)?;
            let mut out = String::from("t,norm\n");
            for (t, n) in times.iter().zip(&norms) {
                out.push_str(&csv_row(&[*t, *n]));
            }
            out
        }
        Command::Margin(args) => {
            let domain = args.geometry.domain();
            let report = margin(&domain, &args.geometry.potential, planar(args.bc), args.kappa)?;
            let mut v = report.to_json();
            if let Value::Object(map) = &mut v {
                map.insert("domain".into(), serde_json::to_value(domain).unwrap_or(Value::Null));
                map.insert(
                    "potential".into(),
                    serde_json::to_value(args.geometry.potential).unwrap_or(Value::Null),
                );
                map.insert("j_m".into(), json!(report.j_min()));
            }
            pretty(&v)
        }
        Command::Quasimode(QuasimodeCmd::Residual {
            h_list,
            geometry,
            bc,
            kappa,
            gamma,
            tangential,
            no_cutoff,
            refine,
            point,
            format,
        }) => {
            let domain = geometry.domain();
            let v = &geometry.potential;
            let report = margin(&domain, v, planar(*bc), *kappa)?;
            let (p, model) = pick_point(&report, v, *point)?;
            let grid = if *refine {
                GridSpec::default().refined()
            } else {
                GridSpec::default()
            };
            let options = QuasimodeOptions {
                gamma: *gamma,
                tangential: match tangential {
                    TangentialArg::Oscillator => Tangential::Oscillator,
                    TangentialArg::Quoted => Tangential::Quoted,
                },
                truncate: !no_cutoff,
                ..QuasimodeOptions::default()
            };
            let r = residual_scaling(&domain, &p, v, model, *kappa, h_list, &grid, &options)?;
            match format {
                Format::Csv => r.to_csv(),
                Format::Json => {
                    let mut out = r.to_json();
                    if let Value::Object(map) = &mut out {
                        map.insert("point".into(), serde_json::to_value(&p).unwrap_or(Value::Null));
                        map.insert("model".into(), serde_json::to_value(model).unwrap_or(Value::Null));
                    }
                    pretty(&out)
                }
            }
        }
        Command::Bounds(BoundsCmd::Laplace {
            grid,
            alpha,
            beta,
            omega,
        }) => match (alpha, beta, omega) {
            (Some(a), Some(b), _) => {
                let p = bounds::laplace_pair(*a, *b)?;
                pretty(&json!({
                    "alpha": a,
                    "beta": b,
                    "integral": p.integral(),
                    "bound": p.bound(),
                    "log_integral": p.log_integral,
                    "log_bound": p.log_bound,
                    "holds": p.holds(),
                }))
            }
            (_, _, Some(w)) => pretty(&json!({
                "omega": w,
                "ratio": bounds::laplace_asymptotic_ratio(*w)?,
            })),
            _ => bounds::grid_csv(&bounds::grid(grid.unwrap_or(20))?),
        },
    })
}

/// The perp point driving the quasimode: a margin minimizer for D/N/R, an
/// interface point for transmission; ties go to the smallest V.
fn pick_point(report: &MarginReport, v: &PotentialModel, index: Option<usize>) -> Result<(PerpPoint, Model), Failure> {
    if let Some(i) = index {
        let p = report
            .points
            .get(i)
            .ok_or_else(|| Error::InvalidInput(format!("point {i} of {}", report.points.len())))?;
        return Ok((p.point.clone(), p.model));
    }
    let candidates: Vec<usize> = if report.bc.is_transmission() {
        (0..report.points.len())
            .filter(|&i| report.points[i].model == Model::Transmission)
            .collect()
    } else {
        report.minimizers.clone()
    };
    let best = candidates
        .into_iter()
        .min_by(|&a, &b| {
            v.value(report.points[a].point.location)
                .total_cmp(&v.value(report.points[b].point.location))
        })
        .ok_or(Error::EmptyPerpSet)?;
    let p = &report.points[best];
    Ok((p.point.clone(), p.model))
}

/// Global flags that take a value.
const VALUE_FLAGS: [&str; 2] = ["--out", "--config"];

/// Expands a `--config` file into flag tokens placed after the subcommand
/// words and before the explicit flags, so the explicit ones win.
fn expand_config(args: Vec<String>) -> Result<Vec<String>, String> {
    let mut path = None;
    for (i, a) in args.iter().enumerate().skip(1) {
        if a == "--config" {
            path = Some(args.get(i + 1).cloned().ok_or("--config needs a value")?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("config {path}: {e}"))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("config {path}: {e}"))?;
    let Value::Object(map) = value else {
        return Err(format!("config {path}: expected a JSON object"));
    };

    // leading subcommand words, skipping global flags and their values
    let mut words = Vec::new();
    let mut rest = Vec::new();
    let mut i = 1;
    let mut in_words = true;
    while i < args.len() {
        let a = &args[i];
        if VALUE_FLAGS.contains(&a.as_str()) {
            rest.push(a.clone());
            if let Some(v) = args.get(i + 1) {
                rest.push(v.clone());
            }
            i += 2;
            continue;
        }
        if in_words && !a.starts_with('-') {
            words.push(a.clone());
        } else {
            in_words = false;
            rest.push(a.clone());
        }
        i += 1;
    }
    if words.is_empty() {
        match map.get("command") {
            Some(Value::String(s)) => words.extend(s.split_whitespace().map(String::from)),
            Some(Value::Array(a)) => words.extend(a.iter().map(scalar)),
            _ => {}
        }
    }

    let mut tokens = vec![args[0].clone()];
    tokens.extend(words);
    for (key, v) in &map {
        if key == "command" || key == "config" {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match v {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => tokens.push(flag),
            Value::Array(items) => {
                tokens.push(flag);
                tokens.push(items.iter().map(scalar).collect::<Vec<_>>().join(","));
            }
            other => {
                tokens.push(flag);
                tokens.push(scalar(other));
            }
        }
    }
    tokens.extend(rest);
    Ok(tokens)
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run(args: Vec<String>) -> i32 {
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let command = Cli::command().args_override_self(true);
    let cli = match command.try_get_matches_from(args).and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            // first paragraph of the clap message, on one line
            let text = e.to_string();
            let line: Vec<&str> = text
                .lines()
                .map(str::trim)
                .skip_while(|l| l.is_empty())
                .take_while(|l| !l.is_empty())
                .collect();
            eprintln!("{}", line.join(" "));
            return 2;
        }
    };
    let result = execute(&cli).and_then(|text| match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Compute(e)) => {
            eprintln!("{}: {e}", e.name());
            1
        }
        Err(Failure::Io(msg)) => {
            eprintln!("IoError: {msg}");
            1
        }
    }
}

fn main() {
    std::process::exit(run(std::env::args().collect()));
}
