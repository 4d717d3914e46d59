//! `anires`: tables, resummed curves and large-order diagnostics as CSV or JSON.

mod grid;
mod output;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anires::benderwu;
use anires::model::{self, z_column_delta, z_reference, ModelCoefficients};
use anires::qm::QmResummation;
use anires::rational::{self, Small};
use anires::series::{geometric_grid, local_exponent, CoefficientTable};
use anires::special::QuadratureSpec;
use anires::vpt::{vpt_energy, w_laurent, OmegaRule};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use grid::{parse_range, Range};
use output::{Format, Table};

#[derive(Parser, Debug)]
#[command(name = "anires", version, about = "Perturbative coefficients, Borel resummation and variational perturbation theory for the anisotropic quartic oscillator")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Relative quadrature tolerance
    #[arg(long, global = true, env = "ANIRES_QUAD_TOL")]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact model coefficients Z_kn (coefficient of g^k δ^n)
    ModelCoeffs {
        #[arg(long, default_value_t = 12)]
        kmax: usize,
        /// Significant digits of the decimal column
        #[arg(long, default_value_t = 40)]
        digits: usize,
    },
    /// Model integral Z(g, δ) by quadrature
    ModelEval {
        #[command(flatten)]
        points: Points,
    },
    /// Local large-order exponent of Z_k(δ) on a doubling grid of orders
    ModelCrossover {
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long, default_value_t = 4096)]
        kmax: usize,
        #[arg(long, default_value_t = 16)]
        kmin: usize,
    },
    /// Borel-resummed model integral against the quadrature reference
    ModelResum {
        #[command(flatten)]
        points: Points,
        #[arg(long = "orders", alias = "order", value_delimiter = ',', default_value = "8")]
        orders: Vec<usize>,
    },
    /// Rayleigh-Schrödinger coefficients E_kn of (g/4)^k (2δ)^n from the Bender-Wu recursion
    QmCoeffs {
        #[arg(long, default_value_t = 12)]
        kmax: usize,
        /// Write numerator/denominator/decimal columns instead of p/q strings
        #[arg(long)]
        exact_columns: bool,
    },
    /// Borel-resummed ground-state energy
    QmResum {
        #[command(flatten)]
        points: Points,
        #[arg(long = "orders", alias = "order", value_delimiter = ',', default_value = "6")]
        orders: Vec<usize>,
        /// Growth parameter in the g/4 variable, e.g. 3 or 7/2
        #[arg(long, default_value = "3")]
        sigma: Small,
        /// Variational order used as the baseline column (0 disables it)
        #[arg(long, default_value_t = 11)]
        baseline_order: usize,
        #[arg(long, value_enum, default_value_t = Rule::LowestEnergy)]
        rule: Rule,
    },
    /// Variational perturbation theory W_k at the chosen Ω_k
    Vpt {
        #[command(flatten)]
        points: Points,
        #[arg(long = "orders", alias = "order", value_delimiter = ',', default_value = "1,3,5,7,9,11")]
        orders: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Rule::LowestEnergy)]
        rule: Rule,
        /// Emit W_k(Ω) on a geometric Ω grid instead of the optimum
        #[arg(long)]
        curve: bool,
        #[arg(long, default_value_t = 0.5)]
        omega_min: f64,
        #[arg(long, default_value_t = 3.0)]
        omega_max: f64,
        #[arg(long, default_value_t = 201)]
        points_per_curve: usize,
    },
    /// Write the standard set of tables and curves into a directory
    Figures {
        #[arg(long, default_value = "figures")]
        out_dir: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
struct Points {
    /// Coupling g/4, comma-separated
    #[arg(long = "g4", value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "g")]
    g4: Vec<f64>,
    /// Raw coupling g, comma-separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    g: Vec<f64>,
    /// Anisotropy values, comma-separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    delta: Vec<f64>,
    /// Anisotropy range start:stop:step, inclusive
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    delta_range: Option<Range>,
}

impl Points {
    fn couplings(&self) -> Result<Vec<f64>> {
        let g4: Vec<f64> = if self.g.is_empty() { self.g4.clone() } else { self.g.iter().map(|g| g / 4.0).collect() };
        if g4.is_empty() {
            bail!("give at least one coupling with --g4 or --g");
        }
        if let Some(bad) = g4.iter().find(|g| !(**g > 0.0) || !g.is_finite()) {
            bail!("couplings must be positive and finite, got g/4 = {bad}");
        }
        Ok(g4)
    }

    fn deltas(&self) -> Result<Vec<f64>> {
        let mut d = self.delta.clone();
        if let Some(r) = &self.delta_range {
            d.extend(r.values());
        }
        if d.is_empty() {
            bail!("give --delta or --delta-range");
        }
        if let Some(bad) = d.iter().find(|x| !x.is_finite()) {
            bail!("anisotropy must be finite, got {bad}");
        }
        Ok(d)
    }

    fn grid(&self) -> Result<Vec<(f64, f64)>> {
        let (gs, ds) = (self.couplings()?, self.deltas()?);
        Ok(gs.iter().flat_map(|&g| ds.iter().map(move |&d| (g, d))).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Rule {
    LowestEnergy,
    SmallestOmega,
}

impl From<Rule> for OmegaRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::LowestEnergy => OmegaRule::LowestEnergy,
            Rule::SmallestOmega => OmegaRule::SmallestOmega,
        }
    }
}

/// Rows in request order plus the points that failed.
struct Report {
    table: Table,
    failures: Vec<String>,
}

impl Report {
    fn ok(table: Table) -> Self {
        Report { table, failures: Vec::new() }
    }
}

/// Evaluate `f` on every point in parallel; rows keep the order of `points`.
fn evaluate<P: Sync, F>(table: Table, points: &[P], label: impl Fn(&P) -> String, f: F) -> Report
where
    F: Fn(&P) -> anyhow::Result<Vec<Vec<Value>>> + Sync,
{
    let results: Vec<_> = points.par_iter().map(&f).collect();
    let mut report = Report::ok(table);
    for (p, r) in points.iter().zip(results) {
        match r {
            Ok(rows) => report.table.rows.extend(rows),
            Err(e) => report.failures.push(format!("{}: {e:#}", label(p))),
        }
    }
    report
}

fn quad(tol: Option<f64>) -> Result<QuadratureSpec> {
    let mut q = QuadratureSpec::default();
    if let Some(t) = tol {
        q.rel_tol = t;
    }
    q.validate()?;
    Ok(q)
}

fn rs_table(kmax: usize) -> CoefficientTable {
    benderwu::build(kmax).into_energy_series()
}

fn check_orders(orders: &[usize]) -> Result<usize> {
    orders.iter().copied().max().context("give at least one order")
}

fn coefficient_table(t: &CoefficientTable, digits: usize) -> Table {
    let mut out = Table::new(&["k", "n", "numerator", "denominator", "decimal"]);
    for (k, n, v) in t.iter() {
        out.rows.push(vec![
            json!(k),
            json!(n),
            json!(v.numer().to_string()),
            json!(v.denom().to_string()),
            json!(rational::to_decimal(v, digits)),
        ]);
    }
    out
}

fn model_coeffs(kmax: usize, digits: usize) -> Report {
    Report::ok(coefficient_table(&ModelCoefficients::build(kmax).table, digits).meta("convention", "Z_kn multiplies g^k delta^n"))
}

fn qm_coeffs(kmax: usize, exact_columns: bool) -> Report {
    let e = rs_table(kmax);
    let table = if exact_columns {
        coefficient_table(&e, 40)
    } else {
        let mut t = Table::new(&["k", "n", "E_kn"]);
        for (k, n, v) in e.iter() {
            t.rows.push(vec![json!(k), json!(n), json!(rational::to_fraction_string(v))]);
        }
        t
    };
    Report::ok(table.meta("convention", "E_kn multiplies (g/4)^k (2 delta)^n"))
}

fn model_eval(points: &Points, q: QuadratureSpec) -> Result<Report> {
    let grid = points.grid()?;
    let table = Table::new(&["g_over_4", "g", "delta", "z_reference", "error_estimate"]);
    Ok(evaluate(table, &grid, |&(g4, d)| format!("g/4={g4}, delta={d}"), |&(g4, d)| {
        let r = z_reference(4.0 * g4, d, &q)?;
        Ok(vec![vec![json!(g4), json!(4.0 * g4), json!(d), json!(r.value), json!(r.error_estimate)]])
    }))
}

fn model_crossover(delta: f64, kmin: usize, kmax: usize) -> Result<Report> {
    if kmax < 16 {
        bail!("kmax must be at least 16");
    }
    if kmin < 1 || 2 * kmin > kmax {
        bail!("need 1 <= kmin and 2 kmin <= kmax");
    }
    let column = z_column_delta(kmax, delta)?;
    let sigma = model::SIGMA as f64;
    let r = local_exponent(&column, sigma, &geometric_grid(kmin, kmax))?;
    let mut t = Table::new(&["k_lo", "k_hi", "k_mid", "f_lo", "f_hi", "beta_local"]);
    for i in 0..r.beta_local.len() {
        t.rows.push(vec![
            json!(r.k_grid[i]),
            json!(r.k_grid[i + 1]),
            json!(r.k_mid[i]),
            json!(r.f_values[i]),
            json!(r.f_values[i + 1]),
            json!(r.beta_local[i]),
        ]);
    }
    Ok(Report::ok(
        t.meta("delta", delta)
            .meta("sigma", sigma)
            .meta("threshold", r.threshold)
            .meta("k_cross", r.k_cross.map_or(Value::Null, |k| json!(k))),
    ))
}

fn model_resum(points: &Points, orders: &[usize], q: QuadratureSpec) -> Result<Report> {
    check_orders(orders)?;
    let grid = points.grid()?;
    let approx = orders
        .iter()
        .map(|&n| model::model_approximant(n, q))
        .collect::<anires::Result<Vec<_>>>()?;
    let table = Table::new(&["g_over_4", "g", "delta", "N", "Z_N", "z_reference", "abs_error"]);
    Ok(evaluate(table, &grid, |&(g4, d)| format!("g/4={g4}, delta={d}"), |&(g4, d)| {
        let g = 4.0 * g4;
        let z = z_reference(g, d, &q)?.value;
        approx
            .iter()
            .map(|a| {
                let v = a.resum(g, d)?;
                Ok(vec![json!(g4), json!(g), json!(d), json!(a.order()), json!(v), json!(z), json!((v - z).abs())])
            })
            .collect()
    }))
}

struct QmResumArgs<'a> {
    points: &'a Points,
    orders: &'a [usize],
    sigma: Small,
    baseline_order: usize,
    rule: OmegaRule,
}

fn qm_resum(a: &QmResumArgs, q: QuadratureSpec) -> Result<Report> {
    let top = check_orders(a.orders)?;
    let grid = a.points.grid()?;
    let e = rs_table(top.max(a.baseline_order));
    let resummed = a
        .orders
        .iter()
        .map(|&n| QmResummation::new(&e, n, a.sigma, q))
        .collect::<anires::Result<Vec<_>>>()?;
    let table = Table::new(&["g_over_4", "delta", "N", "sigma", "E_N", "baseline_k", "baseline", "rel_error"])
        .meta("convention", "sigma and couplings in the g/4 variable");
    let (sigma, base_k) = (a.sigma.to_string(), a.baseline_order);
    Ok(evaluate(table, &grid, |&(g4, d)| format!("g/4={g4}, delta={d}"), |&(g4, d)| {
        let base = if base_k > 0 { Some(vpt_energy(&e, base_k, g4, d, a.rule)?.w) } else { None };
        resummed
            .iter()
            .map(|r| {
                let v = r.energy(g4, d)?;
                Ok(vec![
                    json!(g4),
                    json!(d),
                    json!(r.approximant().order()),
                    json!(sigma),
                    json!(v),
                    base.map_or(Value::Null, |_| json!(base_k)),
                    base.map_or(Value::Null, |b| json!(b)),
                    base.map_or(Value::Null, |b| json!(((v - b) / b).abs())),
                ])
            })
            .collect()
    }))
}

fn vpt_table(points: &Points, orders: &[usize], rule: OmegaRule) -> Result<Report> {
    let top = check_orders(orders)?;
    let e = rs_table(top);
    let grid: Vec<(f64, f64, usize)> = points
        .grid()?
        .into_iter()
        .flat_map(|(g, d)| orders.iter().map(move |&k| (g, d, k)))
        .collect();
    let table = Table::new(&["k", "delta", "g_over_4", "omega_k", "W_k", "candidate_kind"]);
    Ok(evaluate(table, &grid, |&(g4, d, k)| format!("g/4={g4}, delta={d}, k={k}"), |&(g4, d, k)| {
        let r = vpt_energy(&e, k, g4, d, rule)?;
        if r.at_bracket_edge {
            bail!("a stationary point lies at the edge of the Omega bracket");
        }
        Ok(vec![vec![json!(k), json!(d), json!(g4), json!(r.omega), json!(r.w), json!(r.chosen_kind().to_string())]])
    }))
}

fn vpt_curves(points: &Points, orders: &[usize], lo: f64, hi: f64, n: usize) -> Result<Report> {
    if !(lo > 0.0 && hi > lo) {
        bail!("need 0 < omega_min < omega_max");
    }
    let e = rs_table(check_orders(orders)?);
    let grid: Vec<(f64, f64, usize)> = points
        .grid()?
        .into_iter()
        .flat_map(|(g, d)| orders.iter().map(move |&k| (g, d, k)))
        .collect();
    let table = Table::new(&["k", "delta", "g_over_4", "omega", "W"]);
    Ok(evaluate(table, &grid, |&(g4, d, k)| format!("g/4={g4}, delta={d}, k={k}"), |&(g4, d, k)| {
        let w = w_laurent(&e, k, g4, d)?;
        Ok(w.curve(lo, hi, n).into_iter().map(|(x, y)| vec![json!(k), json!(d), json!(g4), json!(x), json!(y)]).collect())
    }))
}

fn points(g4: &[f64], delta: Option<&[f64]>, range: Option<&str>) -> Points {
    Points {
        g4: g4.to_vec(),
        g: Vec::new(),
        delta: delta.map(<[f64]>::to_vec).unwrap_or_default(),
        delta_range: range.map(|r| parse_range(r).expect("static range")),
    }
}

type Job<'a> = Box<dyn Fn() -> Result<Report> + Sync + 'a>;

fn figures(dir: &Path, format: Format, q: QuadratureSpec) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let table2 = [-2.5, -1.5, -0.5, 0.5, 1.5];
    let jobs: Vec<(&str, Job)> = vec![
        ("model_coefficients", Box::new(|| Ok(model_coeffs(12, 40)))),
        ("rs_coefficients", Box::new(|| Ok(qm_coeffs(12, false)))),
        ("crossover_delta_1e-2", Box::new(|| model_crossover(1e-2, 16, 4096))),
        ("crossover_delta_1e-4", Box::new(|| model_crossover(1e-4, 16, 8192))),
        ("crossover_delta_1", Box::new(|| model_crossover(1.0, 16, 4096))),
        ("model_resum_g4_0.25", Box::new(move || model_resum(&points(&[0.25], None, Some("-1:1.5:0.05")), &[2, 4, 6, 8], q))),
        ("vpt_table", Box::new(move || vpt_table(&points(&[0.1, 1.0], Some(&table2), None), &[1, 3, 5, 7, 9, 11], OmegaRule::LowestEnergy))),
        ("vpt_w5_curves_g4_0.1", Box::new(move || vpt_curves(&points(&[0.1], Some(&table2), None), &[5], 0.5, 3.0, 201))),
    ];
    let qm_jobs: Vec<(String, f64, i64)> = vec![
        ("qm_resum_g4_0.1_sigma3".into(), 0.1, 3),
        ("qm_resum_g4_1_sigma3".into(), 1.0, 3),
        ("qm_resum_g4_0.1_sigma4".into(), 0.1, 4),
        ("qm_resum_g4_1_sigma4".into(), 1.0, 4),
    ];
    let mut failures = Vec::new();
    let mut write = |name: &str, report: Result<Report>| -> Result<()> {
        let report = report.with_context(|| name.to_string())?;
        let path = dir.join(format!("{name}.{ext}"));
        let mut out = BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?);
        report.table.write(&mut out, format)?;
        out.flush()?;
        failures.extend(report.failures.into_iter().map(|f| format!("{name}: {f}")));
        Ok(())
    };
    for (name, job) in &jobs {
        write(name, job())?;
    }
    for (name, g4, sigma) in qm_jobs {
        let p = points(&[g4], None, Some("-2.5:2:0.1"));
        let args = QmResumArgs {
            points: &p,
            orders: &[2, 4, 6, 8],
            sigma: Small::from_integer(sigma),
            baseline_order: 11,
            rule: OmegaRule::LowestEnergy,
        };
        write(&name, qm_resum(&args, q))?;
    }
    Ok(failures)
}

fn run(cli: Cli) -> Result<Vec<String>> {
    let q = quad(cli.tol)?;
    let report = match &cli.command {
        Command::ModelCoeffs { kmax, digits } => model_coeffs(*kmax, *digits),
        Command::ModelEval { points } => model_eval(points, q)?,
        Command::ModelCrossover { delta, kmax, kmin } => model_crossover(*delta, *kmin, *kmax)?,
        Command::ModelResum { points, orders } => model_resum(points, orders, q)?,
        Command::QmCoeffs { kmax, exact_columns } => qm_coeffs(*kmax, *exact_columns),
        Command::QmResum {
            points,
            orders,
            sigma,
            baseline_order,
            rule,
        } => {
            if *sigma <= Small::from_integer(0) {
                bail!("sigma must be positive");
            }
            let args = QmResumArgs {
                points,
                orders,
                sigma: *sigma,
                baseline_order: *baseline_order,
                rule: (*rule).into(),
            };
            qm_resum(&args, q)?
        }
        Command::Vpt {
            points,
            orders,
            rule,
            curve,
            omega_min,
            omega_max,
            points_per_curve,
        } => {
            if *curve {
                vpt_curves(points, orders, *omega_min, *omega_max, *points_per_curve)?
            } else {
                vpt_table(points, orders, (*rule).into())?
            }
        }
        Command::Figures { out_dir } => return figures(out_dir, cli.format, q),
    };
    match &cli.out {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
            report.table.write(&mut out, cli.format)?;
            out.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            report.table.write(&mut out, cli.format)?;
        }
    }
    Ok(report.failures)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("{} point(s) failed:", failures.len());
            for f in failures {
                eprintln!("  {f}");
            }
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
