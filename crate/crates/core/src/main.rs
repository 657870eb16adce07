use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qortho::exact::{fmt_rational, parse_rational};
use qortho::rootlab::ZeroTheorem;
use qortho::suite::config::RawPoint;
use qortho::suite::{default_point, run, SubSuite, SuiteConfig};
use qortho::{Error, Result};

#[derive(Parser)]
#[command(name = "qortho", version, about = "Exact checks for quasi-orthogonal basic hypergeometric polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Run one sub-suite.
    Verify { which: Which },
    /// Run every sub-suite.
    Suite,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Relations,
    Expansions,
    Quasi,
    Zeros,
    Interlace,
}

#[derive(Args)]
struct Opts {
    /// Base values, e.g. `1/2,2/3`; replaces every grid's list.
    #[arg(long, global = true, value_delimiter = ',')]
    q: Vec<String>,
    /// Drop degrees above this.
    #[arg(long, global = true)]
    n_max: Option<usize>,
    /// Degrees to run; replaces every grid's list.
    #[arg(long, global = true, value_delimiter = ',')]
    n: Vec<usize>,
    /// Quasi orders to run; replaces every grid's list.
    #[arg(long, global = true, value_delimiter = ',')]
    k: Vec<usize>,
    /// Keep only zero grids for this theorem id (T2_3, T2_4, T3_2, T3_3, T4_2).
    #[arg(long, global = true)]
    theorem: Option<String>,
    /// TOML grid file; the built-in acceptance grid otherwise.
    #[arg(long, global = true)]
    grid: Option<PathBuf>,
    #[arg(long, global = true)]
    tol_zero: Option<f64>,
    #[arg(long, global = true)]
    tol_nonzero: Option<f64>,
    /// Write one CSV of isolated zeros per theorem.
    #[arg(long, global = true)]
    emit_csv: bool,
    /// Directory for report.json and CSVs; the report goes to stdout otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    // single-point overrides; unset names take built-in defaults
    #[arg(long, global = true, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Option<String>,
}

impl Opts {
    /// One point from the overrides, or `None` when no override is set.
    fn point(&self) -> Result<Option<RawPoint>> {
        let given = [
            ("t", &self.t),
            ("u", &self.u),
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("alpha", &self.alpha),
        ];
        if given.iter().all(|(_, v)| v.is_none()) {
            return Ok(None);
        }
        let mut p: RawPoint = default_point()
            .into_iter()
            .map(|(k, v)| (k.to_string(), fmt_rational(&v)))
            .collect();
        for (name, v) in given {
            if let Some(s) = v {
                p.insert(name.to_string(), fmt_rational(&parse_rational(s)?));
            }
        }
        Ok(Some(p))
    }

    fn config(&self) -> Result<SuiteConfig> {
        let mut c = match &self.grid {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                SuiteConfig::from_toml(&text)?
            }
            None => SuiteConfig::default_grid(),
        };
        if !self.q.is_empty() {
            c.override_q(&self.q);
        }
        if !self.n.is_empty() {
            c.relations.iter_mut().for_each(|g| g.n = self.n.clone());
            c.expansions.iter_mut().for_each(|g| g.n = self.n.clone());
            c.quasi.iter_mut().for_each(|g| g.n = self.n.clone());
            c.zeros.iter_mut().for_each(|g| g.n = self.n.clone());
        }
        if !self.k.is_empty() {
            c.expansions.iter_mut().for_each(|g| g.k = self.k.clone());
            c.quasi.iter_mut().for_each(|g| g.k = self.k.clone());
        }
        if let Some(n_max) = self.n_max {
            c.cap_degree(n_max);
        }
        if let Some(id) = &self.theorem {
            let th = ZeroTheorem::parse(id)?;
            c.zeros.retain(|g| g.theorem == th);
        }
        if let Some(p) = self.point()? {
            c.relations.iter_mut().for_each(|g| g.points = vec![p.clone()]);
            c.expansions.iter_mut().for_each(|g| g.points = vec![p.clone()]);
            c.quasi.iter_mut().for_each(|g| g.points = vec![p.clone()]);
            c.zeros.iter_mut().for_each(|g| g.points = vec![p.clone()]);
            dedup(&mut c.relations);
            dedup(&mut c.expansions);
            dedup(&mut c.quasi);
            dedup(&mut c.zeros);
        }
        let mut tol = c.tolerances.unwrap_or(qortho::suite::config::ToleranceConfig {
            zero: None,
            nonzero: None,
            quadrature: None,
        });
        tol.zero = self.tol_zero.or(tol.zero);
        tol.nonzero = self.tol_nonzero.or(tol.nonzero);
        c.tolerances = Some(tol);
        Ok(c)
    }
}

/// Overrides can make grids identical; keep the first of each.
fn dedup<T: PartialEq>(v: &mut Vec<T>) {
    let mut out: Vec<T> = Vec::with_capacity(v.len());
    for g in v.drain(..) {
        if !out.contains(&g) {
            out.push(g);
        }
    }
    *v = out;
}

fn suites(cmd: &Command) -> Vec<SubSuite> {
    match cmd {
        Command::Suite => SubSuite::FULL.to_vec(),
        Command::Verify { which } => vec![match which {
            Which::Relations => SubSuite::Relations,
            Which::Expansions => SubSuite::Expansions,
            Which::Quasi => SubSuite::Quasi,
            Which::Zeros => SubSuite::Zeros,
            Which::Interlace => SubSuite::Interlace,
        }],
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.opts.config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let tol = config.tolerances();
    if !(tol.zero > 0.0 && tol.zero < tol.nonzero) {
        eprintln!("error: need 0 < tol-zero < tol-nonzero");
        return ExitCode::from(2);
    }
    let report = match run(&config, &suites(&cli.command), &tol, cli.opts.jobs) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    match &cli.opts.out {
        Some(dir) => match report.write_to(dir, cli.opts.emit_csv) {
            Ok(paths) => {
                for p in paths {
                    eprintln!("wrote {}", p.display());
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => {
            print!("{}", report.to_json());
            if cli.opts.emit_csv {
                if let Err(e) = report.write_csv(std::path::Path::new(".")) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
        }
    }
    let s = report.summary;
    eprintln!("{} checks, {} passed, {} failed", s.total, s.passed, s.failed);
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
