//! Command-line front end: each subcommand reproduces one data set as CSV.

use std::f64::consts::{PI, TAU};
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use defect_walk::exact::{extract_bc, extract_konno_a, Dyadic, ExactQubit};
use defect_walk::observables::{
    bloch_scan, dispersion_series, linear_fit, linspace, position_distribution, survival_series, sweep_omega,
};
use defect_walk::theory::{localized_return_probability, total_overlap};
use defect_walk::{evolve, CoinKind, CoinSpec, Execution, Qubit};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Walk(#[from] defect_walk::Error),
    #[error("invalid angle `{0}` (expected e.g. 1.2, pi, 0.5pi)")]
    BadAngle(String),
    #[error("invalid grid `{0}` (expected count:lo:hi)")]
    BadGrid(String),
    #[error("{0}")]
    Precondition(String),
    #[error("row {row} has {got} cells, schema has {expected}")]
    SchemaMismatch { row: usize, expected: usize, got: usize },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Parse `1.25`, `pi`, `0.5pi`, `-2pi`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let t = s.trim();
    let bad = || CliError::BadAngle(s.to_string());
    let value = match t.strip_suffix("pi") {
        Some("") => PI,
        Some("-") => -PI,
        Some(k) => k.trim_end_matches('*').parse::<f64>().map_err(|_| bad())? * PI,
        None => t.parse::<f64>().map_err(|_| bad())?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// `count:lo:hi`, endpoints inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub count: usize,
    pub lo: f64,
    pub hi: f64,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        linspace(self.count, self.lo, self.hi)
    }
}

impl std::str::FromStr for GridSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [count, lo, hi] = parts.as_slice() else {
            return Err(CliError::BadGrid(s.to_string()));
        };
        let count: usize = count.parse().map_err(|_| CliError::BadGrid(s.to_string()))?;
        if count == 0 {
            return Err(CliError::BadGrid(s.to_string()));
        }
        Ok(GridSpec {
            count,
            lo: parse_angle(lo)?,
            hi: parse_angle(hi)?,
        })
    }
}

fn angle_arg(s: &str) -> std::result::Result<f64, String> {
    parse_angle(s).map_err(|e| e.to_string())
}

fn grid_arg(s: &str) -> std::result::Result<GridSpec, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn coin_arg(s: &str) -> std::result::Result<CoinKind, String> {
    s.parse().map_err(|e: defect_walk::Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "defect-walk",
    version,
    about = "Quantum walks with a single defect coin, with results written as CSV",
    after_help = "Commands and the data they reproduce:\n  \
        series-coefficients  A_n / B_n, C_n of P0(w, 4k) against the limit's cosine series\n  \
        limit-compare        P0(w, t) and delta = c(w) - P0 for several t (Konno defect)\n  \
        overlap-compare      P0(w, t) against the stationary-state overlap F(w) (phase defect)\n  \
        sweep-omega          localization profile P0(w) for any defect and qubit\n  \
        bloch-scan           P0 over initial qubits (alpha, beta) at fixed w\n  \
        evolve-distribution  position distribution P(j) at time t\n  \
        dispersion           mean position and standard deviation sigma(t)\n  \
        survival             survival probability SP(t) and SP/P0 at even t\n\n\
        Angles accept a `pi` suffix: 0.5pi, pi, 1.5pi. Grids are count:lo:hi, inclusive."
)]
pub struct Cli {
    /// Output CSV path; stdout when omitted.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Cap on worker threads for sweeps.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct WalkArgs {
    /// konno, wojcik, teles, hadamard or fourier.
    #[arg(long, default_value = "konno", value_parser = coin_arg)]
    pub coin: CoinKind,
    /// Defect strength w.
    #[arg(long, default_value = "0.5pi", value_parser = angle_arg, allow_hyphen_values = true)]
    pub omega: f64,
    /// Polar angle of the initial qubit, in [0, pi].
    #[arg(long, default_value = "0", value_parser = angle_arg, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Azimuth of the initial qubit, in [0, 2pi].
    #[arg(long, default_value = "0", value_parser = angle_arg, allow_hyphen_values = true)]
    pub beta: f64,
    /// Number of time steps.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Position distribution P(j) after --steps.
    EvolveDistribution(WalkArgs),
    /// Return probability P0 over a grid of w (columns omega,p0,c,delta).
    SweepOmega {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value = "256:0.1pi:1.9pi", value_parser = grid_arg)]
        grid: GridSpec,
    },
    /// Series coefficients of P0(w, t) for t a multiple of 4.
    SeriesCoefficients {
        #[command(flatten)]
        walk: WalkArgs,
        /// Exact Gaussian-integer engine; fractions written as n/2^d.
        #[arg(long)]
        exact: bool,
    },
    /// Konno defect: P0(w, t) against the limit c(w) for each t in --times.
    LimitCompare {
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
        times: Vec<usize>,
        #[arg(long, default_value = "256:0.1pi:1.9pi", value_parser = grid_arg)]
        grid: GridSpec,
    },
    /// Phase defect: P0 at t and t+2 against the stationary-state overlap.
    OverlapCompare {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value = "256:0.01pi:1.99pi", value_parser = grid_arg)]
        grid: GridSpec,
    },
    /// P0 over a grid of initial qubits.
    BlochScan {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value = "33:0:pi", value_parser = grid_arg)]
        alpha_grid: GridSpec,
        #[arg(long, default_value = "65:0:2pi", value_parser = grid_arg)]
        beta_grid: GridSpec,
    },
    /// Survival probability and SP/P0 at even t.
    Survival(WalkArgs),
    /// Mean position and dispersion sigma(t) for t = 0..=steps.
    Dispersion(WalkArgs),
}

/// One CSV field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

/// A header plus rows, checked against each other before writing.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }
}

/// UTF-8, comma separated, LF endings, floats with 17 significant digits.
pub fn write_csv_to<W: Write>(table: &Table, out: W) -> Result<()> {
    for (i, row) in table.rows.iter().enumerate() {
        if row.len() != table.header.len() {
            return Err(CliError::SchemaMismatch {
                row: i,
                expected: table.header.len(),
                got: row.len(),
            });
        }
    }
    let io_err = |e: csv::Error| CliError::Io {
        path: "<csv>".into(),
        source: io::Error::other(e),
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(&table.header).map_err(io_err)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render)).map_err(io_err)?;
    }
    w.flush().map_err(|e| CliError::Io {
        path: "<csv>".into(),
        source: e,
    })
}

/// Write to `path`, or stdout when `None`.
pub fn write_csv(table: &Table, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let with_path = |source| CliError::Io {
                path: p.display().to_string(),
                source,
            };
            let file = File::create(p).map_err(with_path)?;
            write_csv_to(table, io::BufWriter::new(file)).map_err(|e| match e {
                CliError::Io { source, .. } => with_path(source),
                other => other,
            })
        }
        None => write_csv_to(table, io::stdout().lock()),
    }
}

fn qubit(w: &WalkArgs) -> Result<Qubit> {
    Ok(Qubit::new(w.alpha, w.beta)?)
}

fn spec(w: &WalkArgs) -> Result<CoinSpec> {
    Ok(CoinSpec::preset(w.coin, w.omega)?.checked()?)
}

fn positive_steps(steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(CliError::Precondition("--steps must be at least 1".into()));
    }
    Ok(())
}

/// Run one subcommand and return its table.
pub fn run(command: &Command) -> Result<Table> {
    let exec = Execution::Parallel;
    match command {
        Command::EvolveDistribution(w) => {
            positive_steps(w.steps)?;
            let state = evolve(&qubit(w)?, &spec(w)?, w.steps)?;
            let mut t = Table::new(vec!["j", "p"]);
            for row in position_distribution(&state) {
                t.push(vec![Cell::Int(row.j), row.p.into()]);
            }
            Ok(t)
        }
        Command::SweepOmega { walk, grid } => {
            positive_steps(walk.steps)?;
            let rows = sweep_omega(walk.coin, &qubit(walk)?, walk.steps, &grid.points(), exec)?;
            let mut t = Table::new(vec!["omega", "p0", "c", "delta"]);
            for r in rows {
                t.push(vec![r.omega.into(), r.p0.into(), r.c.into(), r.delta.into()]);
            }
            Ok(t)
        }
        Command::SeriesCoefficients { walk, exact } => series_table(walk.coin, walk.steps, *exact),
        Command::LimitCompare { times, grid } => {
            if times.is_empty() || times.contains(&0) {
                return Err(CliError::Precondition("--times must list positive step counts".into()));
            }
            let mut t = Table::new(vec!["omega", "t", "p0", "c", "delta"]);
            for &steps in times {
                for r in sweep_omega(CoinKind::Konno, &Qubit::up(), steps, &grid.points(), exec)? {
                    t.push(vec![r.omega.into(), Cell::Int(steps as i64), r.p0.into(), r.c.into(), r.delta.into()]);
                }
            }
            Ok(t)
        }
        Command::OverlapCompare { walk, grid } => {
            positive_steps(walk.steps)?;
            let q = qubit(walk)?;
            let points = grid.points();
            if let Some(bad) = points.iter().find(|w| !(**w > 0.0 && **w < TAU)) {
                return Err(defect_walk::Error::OmegaOutOfRange(*bad).into());
            }
            let now = sweep_omega(CoinKind::Wojcik, &q, walk.steps, &points, exec)?;
            let next = sweep_omega(CoinKind::Wojcik, &q, walk.steps + 2, &points, exec)?;
            let mut t = Table::new(vec!["omega", "p0", "p0_next", "p0_mean", "overlap", "overlap_weighted"]);
            for (a, b) in now.iter().zip(&next) {
                t.push(vec![
                    a.omega.into(),
                    a.p0.into(),
                    b.p0.into(),
                    (0.5 * (a.p0 + b.p0)).into(),
                    total_overlap(a.omega, &q)?.into(),
                    localized_return_probability(a.omega, &q)?.into(),
                ]);
            }
            Ok(t)
        }
        Command::BlochScan {
            walk,
            alpha_grid,
            beta_grid,
        } => {
            positive_steps(walk.steps)?;
            let alphas = alpha_grid.points();
            let betas = beta_grid.points();
            for &a in &alphas {
                Qubit::new(a, 0.0)?;
            }
            let cells = bloch_scan(walk.coin, walk.omega, walk.steps, &alphas, &betas, exec)?;
            let mut t = Table::new(vec!["alpha", "beta", "p0"]);
            for c in cells {
                t.push(vec![c.alpha.into(), c.beta.into(), c.p0.into()]);
            }
            Ok(t)
        }
        Command::Survival(w) => {
            positive_steps(w.steps)?;
            let rows = survival_series(&spec(w)?, &qubit(w)?, w.steps)?;
            let mut t = Table::new(vec!["t", "p0", "sp", "ratio"]);
            for r in rows {
                t.push(vec![Cell::Int(r.t as i64), r.p0.into(), r.sp.into(), r.ratio.into()]);
            }
            Ok(t)
        }
        Command::Dispersion(w) => {
            positive_steps(w.steps)?;
            let rows = dispersion_series(&spec(w)?, &qubit(w)?, w.steps)?;
            let mut t = Table::new(vec!["t", "mean", "sigma"]);
            for r in &rows {
                t.push(vec![Cell::Int(r.t as i64), r.mean.into(), r.sigma.into()]);
            }
            if rows.len() > 20 {
                let tail = &rows[rows.len() / 10..];
                let xs: Vec<f64> = tail.iter().map(|r| r.t as f64).collect();
                let ys: Vec<f64> = tail.iter().map(|r| r.sigma).collect();
                let fit = linear_fit(&xs, &ys);
                eprintln!("sigma(t) slope {:.6}, R^2 {:.8}", fit.slope, fit.r_squared);
            }
            Ok(t)
        }
    }
}

fn dyadic_cells(d: Option<&Dyadic>) -> [Cell; 2] {
    match d {
        Some(d) => [Cell::Text(d.to_string()), Cell::Float(d.to_f64())],
        None => [Cell::Text("0/2^0".into()), Cell::Float(0.0)],
    }
}

fn series_table(kind: CoinKind, steps: usize, exact: bool) -> Result<Table> {
    if steps == 0 || !steps.is_multiple_of(4) {
        return Err(defect_walk::Error::NotMultipleOfFour(steps).into());
    }
    let n_max = steps as u64 / 2;
    match (kind, exact) {
        (CoinKind::Konno, true) => {
            let a = extract_konno_a(steps)?;
            let mut t = Table::new(vec!["n", "A_n", "A_n_decimal"]);
            for n in 0..n_max {
                let [f, d] = dyadic_cells(a.get(&n));
                t.push(vec![Cell::Int(n as i64), f, d]);
            }
            Ok(t)
        }
        (CoinKind::Wojcik | CoinKind::Teles, true) => {
            let bc = extract_bc(kind, steps)?;
            let (b, c) = (bc.b_coeffs(), bc.c_coeffs());
            let mut t = Table::new(vec!["n", "B_n", "B_n_decimal", "C_n", "C_n_decimal"]);
            for n in 0..n_max {
                let [bf, bd] = dyadic_cells(b.get(&n));
                let [cf, cd] = dyadic_cells(c.get(&n));
                t.push(vec![Cell::Int(n as i64), bf, bd, cf, cd]);
            }
            Ok(t)
        }
        (CoinKind::Konno, false) => {
            let samples = sampled_p0(kind, ExactQubit::Up, steps)?;
            let mut t = Table::new(vec!["n", "A_n", "A_n_decimal"]);
            for n in 0..n_max {
                t.push(vec![Cell::Int(n as i64), Cell::Empty, dft(&samples, n as usize).0.into()]);
            }
            Ok(t)
        }
        (CoinKind::Wojcik | CoinKind::Teles, false) => {
            // B from spin up, C from the (π/2, π/2) run of the phase defect
            let b = sampled_p0(CoinKind::Wojcik, ExactQubit::Up, steps)?;
            let c = sampled_p0(CoinKind::Wojcik, ExactQubit::PlusI, steps)?;
            let mut t = Table::new(vec!["n", "B_n", "B_n_decimal", "C_n", "C_n_decimal"]);
            for n in 0..n_max {
                let bn = dft(&b, n as usize).0;
                let cn = dft(&c, n as usize).1;
                t.push(vec![Cell::Int(n as i64), Cell::Empty, bn.into(), Cell::Empty, cn.into()]);
            }
            Ok(t)
        }
        (other, _) => Err(defect_walk::Error::UnsupportedCoinKind(other.name().to_string()).into()),
    }
}

/// P₀(ω, t) on 2t + 2 equispaced ω, enough to resolve a degree < t series.
fn sampled_p0(kind: CoinKind, q: ExactQubit, steps: usize) -> Result<Vec<f64>> {
    let m = 2 * steps + 2;
    let omegas: Vec<f64> = (0..m).map(|i| TAU * i as f64 / m as f64).collect();
    Ok(sweep_omega(kind, &q.qubit(), steps, &omegas, Execution::Parallel)?
        .into_iter()
        .map(|r| r.p0)
        .collect())
}

fn dft(values: &[f64], n: usize) -> (f64, f64) {
    let m = values.len() as f64;
    let (c, s) = values.iter().enumerate().fold((0.0, 0.0), |(c, s), (i, v)| {
        let w = TAU * i as f64 / m * n as f64;
        (c + v * w.cos(), s + v * w.sin())
    });
    if n == 0 {
        (c / m, 0.0)
    } else {
        (2.0 * c / m, 2.0 * s / m)
    }
}

/// Parse-free entry point used by `main` and the tests.
pub fn dispatch(cli: &Cli) -> Result<()> {
    let table = defect_walk::exec::with_threads(cli.threads, || run(&cli.command))?;
    write_csv(&table, cli.output.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("0.5pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_angle("-pi").unwrap(), -PI);
        assert_eq!(parse_angle("2*pi").unwrap(), TAU);
        assert_eq!(parse_angle(" 1.25 ").unwrap(), 1.25);
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("inf").is_err());
    }

    #[test]
    fn grids() {
        use std::f64::consts::FRAC_PI_2;
        let g: GridSpec = "3:0:pi".parse().unwrap();
        assert_eq!(g.points(), vec![0.0, FRAC_PI_2, PI]);
        assert!("0:0:1".parse::<GridSpec>().is_err());
        assert!("3:0".parse::<GridSpec>().is_err());
        assert!("x:0:1".parse::<GridSpec>().is_err());
    }

    #[test]
    fn csv_format() {
        let mut t = Table::new(vec!["n", "x", "frac", "opt"]);
        t.push(vec![Cell::Int(3), Cell::Float(0.1), Cell::Text("3/2^3".into()), Cell::Empty]);
        let mut buf = Vec::new();
        write_csv_to(&t, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,x,frac,opt\n3,1.0000000000000001e-1,3/2^3,\n");
    }

    #[test]
    fn empty_table_is_header_only() {
        let mut buf = Vec::new();
        write_csv_to(&Table::new(vec!["t", "p0"]), &mut buf).unwrap();
        assert_eq!(buf, b"t,p0\n");
    }

    #[test]
    fn schema_mismatch() {
        let mut t = Table::new(vec!["a", "b"]);
        t.push(vec![Cell::Int(1)]);
        assert!(matches!(
            write_csv_to(&t, Vec::new()),
            Err(CliError::SchemaMismatch { row: 0, expected: 2, got: 1 })
        ));
    }

    #[test]
    fn io_error_names_path() {
        let t = Table::new(vec!["a"]);
        let err = write_csv(&t, Some(Path::new("/nonexistent-dir/x.csv"))).unwrap_err();
        assert!(err.to_string().starts_with("/nonexistent-dir/x.csv"));
    }

    #[test]
    fn sampled_series_matches_exact() {
        let exact = series_table(CoinKind::Wojcik, 12, true).unwrap();
        let sampled = series_table(CoinKind::Wojcik, 12, false).unwrap();
        for (e, s) in exact.rows.iter().zip(&sampled.rows) {
            for col in [2, 4] {
                let (Cell::Float(a), Cell::Float(b)) = (&e[col], &s[col]) else { panic!() };
                assert!((a - b).abs() < 1e-12);
            }
        }
        assert!(series_table(CoinKind::Konno, 6, true).is_err());
        assert!(series_table(CoinKind::FourierDefect, 8, true).is_err());
    }
}
