//! `hgcut`: exact and asymptotic cutsize distributions of balanced hypergraph
//! bipartitions for regular LDPC ensembles, and per-matrix encodability checks.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hgcut_core::asymptotics::{self, fmt_sig10, Degrees, RootSearch, VerdictRow};
use hgcut_core::distribution::{self, balanced_sizes, DEFAULT_TABLE_MAX_N};
use hgcut_core::encodability::{self, DEFAULT_ASSIGNMENT_CAP};
use hgcut_core::ensemble::{self, DEFAULT_SOCKET_CAP, RNG_DESCRIPTION};
use hgcut_core::oracle::{self, DEFAULT_VERTEX_CAP};
use hgcut_core::{alist, BinaryMatrix, EnsembleParams, Hypergraph, Partition, Ratio};

/// Relative output paths are resolved against this directory when set.
const OUT_DIR_ENV: &str = "HGCUT_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "hgcut", version, about)]
struct Cli {
    /// Seed for sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enumeration budget of the command: assignment count for `check`,
    /// socket count for `oracle --mode exhaustive` and `dist --check-oracle`,
    /// largest n for the exact table in `dist`.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Bisection tolerance for typical minimum cutsizes.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact cutsize distribution A(s, m1) (and B(s, eps) with --epsilon).
    Dist {
        #[arg(short)]
        n: usize,
        #[arg(short = 'g', long = "gamma")]
        gamma: usize,
        #[arg(short = 'd', long = "delta")]
        delta: usize,
        #[arg(short = 'e', long)]
        epsilon: Option<Ratio>,
        /// A-table CSV (stdout when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// B-table CSV (stdout when omitted).
        #[arg(long)]
        b_out: Option<PathBuf>,
        /// Drop cells with A = 0.
        #[arg(long)]
        skip_zeros: bool,
        /// Compare against exhaustive averaging over all socket permutations.
        #[arg(long)]
        check_oracle: bool,
    },
    /// Growth rate curve h(sigma, eps) on a sigma grid.
    Growth {
        #[arg(short = 'g', long = "gamma")]
        gamma: usize,
        #[arg(short = 'd', long = "delta")]
        delta: usize,
        #[arg(short = 'e', long, default_value_t = 0.0)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.001)]
        step: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Design rate against typical minimum cutsize for each (gamma, delta).
    Tables {
        #[arg(long = "gammas", value_delimiter = ',', required = true)]
        gammas: Vec<usize>,
        #[arg(long = "deltas", value_delimiter = ',', required = true)]
        deltas: Vec<usize>,
        #[arg(short = 'e', long, default_value_t = 0.0)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Sample one configuration-model instance and write it as alist.
    Sample {
        #[arg(short)]
        n: usize,
        #[arg(short = 'g', long = "gamma")]
        gamma: usize,
        #[arg(short = 'd', long = "delta")]
        delta: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Balance, cutsize and block-diagonal encodability of a matrix and
    /// partition, plus brute-force minimum cutsize and K_max.
    Check {
        alist: PathBuf,
        partition: PathBuf,
        #[arg(short = 'e', long, default_value = "0")]
        epsilon: Ratio,
        /// Part count for the minimum-cutsize search (default: the partition's).
        #[arg(short = 'k', long = "k")]
        k: Option<usize>,
        /// Exit with status 1 when the partition is not feasible.
        #[arg(long)]
        require_feasible: bool,
    },
    /// Brute-force ground truth for A(s, m1).
    Oracle {
        #[arg(short)]
        n: usize,
        #[arg(short = 'g', long = "gamma")]
        gamma: usize,
        #[arg(short = 'd', long = "delta")]
        delta: usize,
        #[arg(long, value_enum, default_value_t = OracleMode::Exhaustive)]
        mode: OracleMode,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Standard errors allowed in Monte-Carlo mode.
        #[arg(long, default_value_t = 4.0)]
        sigmas: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleMode {
    Exhaustive,
    Montecarlo,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            let p = resolve(p);
            fs::write(&p, text).with_context(|| format!("writing {}", p.display()))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("writing stdout"),
    }
}

fn params(n: usize, gamma: usize, delta: usize) -> Result<EnsembleParams> {
    let p = EnsembleParams::new(n, gamma, delta)?;
    if let Some(w) = p.warning() {
        eprintln!("warning: {w}");
    }
    Ok(p)
}

fn socket_cap(cli: &Cli) -> usize {
    cli.cap.map_or(DEFAULT_SOCKET_CAP, |c| c as usize)
}

/// Returns whether every requested check passed.
fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Dist {
            n,
            gamma,
            delta,
            epsilon,
            out,
            b_out,
            skip_zeros,
            check_oracle,
        } => {
            let p = params(*n, *gamma, *delta)?;
            let max_n = cli.cap.map_or(DEFAULT_TABLE_MAX_N, |c| c as usize);
            let table = distribution::full_table(&p, max_n)?;
            emit(out.as_deref(), &table.to_csv(*skip_zeros))?;
            let mut ok = true;
            match table.check_invariants() {
                Ok(()) => eprintln!(
                    "sum identity: total = 2^{} = {}, sum_s A(s, m1) = C({}, m1) for all m1: PASS",
                    p.m(),
                    table.total(),
                    p.m()
                ),
                Err(e) => {
                    eprintln!("sum identity: FAIL ({e})");
                    ok = false;
                }
            }
            if let Some(eps) = epsilon {
                match balanced_sizes(p.m(), *eps) {
                    Some(r) => eprintln!("balanced sizes m1 in [{}, {}]", r.start(), r.end()),
                    None if eps.is_zero() => {
                        eprintln!("no exactly balanced bipartition exists (m = {} is odd); B = 0", p.m())
                    }
                    None => eprintln!("no {eps}-balanced bipartition with non-empty parts; B = 0"),
                }
                if out.is_none() && b_out.is_none() {
                    println!();
                }
                emit(b_out.as_deref(), &table.balanced_csv(*eps))?;
            }
            if *check_oracle {
                let exact = oracle::exact_ensemble_average(&p, socket_cap(cli), DEFAULT_VERTEX_CAP)?;
                let pass = exact == table;
                eprintln!("oracle (exhaustive over {}! permutations): {}", p.xi(), if pass { "PASS" } else { "FAIL" });
                ok &= pass;
            }
            Ok(ok)
        }
        Command::Growth {
            gamma,
            delta,
            epsilon,
            step,
            out,
        } => {
            let degrees = Degrees::new(*gamma, *delta)?;
            let grid = asymptotics::sigma_grid(*step)?;
            let points = asymptotics::curve(degrees, *epsilon, &grid)?;
            emit(out.as_deref(), &asymptotics::curve_csv(&points))?;
            if let Some(peak) = points.iter().max_by(|a, b| a.value.total_cmp(&b.value)) {
                eprintln!("peak: h({}) = {}", fmt_sig10(peak.sigma), fmt_sig10(peak.value));
            }
            let search = RootSearch {
                tol: cli.tol,
                ..RootSearch::default()
            };
            match asymptotics::beta_star(*epsilon, degrees, search) {
                Ok(b) => eprintln!("zero crossing (beta*): {}", fmt_sig10(b)),
                Err(e) => eprintln!("zero crossing: n/a ({e})"),
            }
            Ok(true)
        }
        Command::Tables {
            gammas,
            deltas,
            epsilon,
            format,
        } => {
            let search = RootSearch {
                tol: cli.tol,
                ..RootSearch::default()
            };
            let mut rows = Vec::new();
            for &g in gammas {
                for &d in deltas {
                    rows.push(asymptotics::verdict(Degrees::new(g, d)?, *epsilon, search)?);
                }
            }
            print!("{}", render_rows(&rows, *format));
            Ok(true)
        }
        Command::Sample {
            n,
            gamma,
            delta,
            out,
        } => {
            let p = params(*n, *gamma, *delta)?;
            let h = ensemble::sample(&p, cli.seed);
            let mat = h.to_matrix();
            let path = resolve(out);
            fs::write(&path, alist::write_alist(&mat))
                .with_context(|| format!("writing {}", path.display()))?;
            let meta = format!(
                "n={}\ngamma={}\ndelta={}\nm={}\nseed={}\nrng={RNG_DESCRIPTION}\nmulti_edges_collapsed={}\n",
                p.n(),
                p.gamma(),
                p.delta(),
                p.m(),
                cli.seed,
                p.xi() - mat.nnz()
            );
            let meta_path = path.with_extension("meta");
            fs::write(&meta_path, &meta)
                .with_context(|| format!("writing {}", meta_path.display()))?;
            eprint!("{meta}");
            Ok(true)
        }
        Command::Check {
            alist: alist_path,
            partition: part_path,
            epsilon,
            k,
            require_feasible,
        } => check(cli, alist_path, part_path, *epsilon, *k, *require_feasible),
        Command::Oracle {
            n,
            gamma,
            delta,
            mode,
            samples,
            sigmas,
            out,
        } => {
            let p = params(*n, *gamma, *delta)?;
            let exact = distribution::full_table(&p, DEFAULT_TABLE_MAX_N)?;
            match mode {
                OracleMode::Exhaustive => {
                    let table =
                        oracle::exact_ensemble_average(&p, socket_cap(cli), DEFAULT_VERTEX_CAP)?;
                    emit(out.as_deref(), &table.to_csv(false))?;
                    let m1 = p.m() / 2;
                    let row: Vec<String> = (0..=p.n()).map(|s| table.get(s, m1).to_string()).collect();
                    eprintln!("A(s, m1={m1}) for s = 0..={}: {}", p.n(), row.join(" "));
                    let pass = table == exact;
                    eprintln!("{}", if pass { "EXACT MATCH" } else { "MISMATCH" });
                    Ok(pass)
                }
                OracleMode::Montecarlo => {
                    let mc = oracle::monte_carlo_average(&p, *samples, cli.seed, DEFAULT_VERTEX_CAP)?;
                    emit(out.as_deref(), &mc.to_csv())?;
                    let excursions = mc.excursions(&exact, *sigmas);
                    for (s, m1, z) in &excursions {
                        eprintln!("excursion: cell ({s}, {m1}) at {z:.2} standard errors");
                    }
                    let pass = excursions.len() <= 1;
                    eprintln!(
                        "monte carlo ({samples} samples, seed {}): {} cell(s) beyond {sigmas} standard errors: {}",
                        cli.seed,
                        excursions.len(),
                        if pass { "PASS" } else { "FAIL" }
                    );
                    Ok(pass)
                }
            }
        }
    }
}

fn render_rows(rows: &[VerdictRow], format: TableFormat) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str(VerdictRow::CSV_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&r.csv_line());
                out.push('\n');
            }
        }
        TableFormat::Table => {
            out.push_str("gamma delta  1-gamma/delta  beta*   satisfied\n");
            for r in rows {
                out.push_str(&format!(
                    "{:>5} {:>5}  {:>13.4}  {:.4}  {}\n",
                    r.gamma,
                    r.delta,
                    r.design_rate,
                    r.beta_star,
                    if r.satisfied { "yes" } else { "no" }
                ));
            }
        }
    }
    out
}

fn read_partition(path: &Path) -> Result<Partition> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut labels = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let label: usize = line.parse().map_err(|_| hgcut_core::Error::Parse {
            line: i + 1,
            message: format!("expected a part label, got {line:?}"),
        })?;
        if label == 0 {
            return Err(hgcut_core::Error::Parse {
                line: i + 1,
                message: "part labels are 1-based".into(),
            }
            .into());
        }
        labels.push(label);
    }
    Ok(Partition::from_one_based(&labels)?)
}

fn check(
    cli: &Cli,
    alist_path: &Path,
    part_path: &Path,
    epsilon: Ratio,
    k: Option<usize>,
    require_feasible: bool,
) -> Result<bool> {
    let text = fs::read_to_string(alist_path)
        .with_context(|| format!("reading {}", alist_path.display()))?;
    let mat: BinaryMatrix =
        alist::parse_alist(&text).with_context(|| format!("parsing {}", alist_path.display()))?;
    let p = read_partition(part_path).with_context(|| format!("parsing {}", part_path.display()))?;
    let verdict = encodability::check_block_diagonalizable(&mat, &p, epsilon)?;
    let (m, n) = (mat.rows(), mat.cols());
    let slack = n as i64 - m as i64;

    println!("matrix: {m} rows (vertices) x {n} columns (nets)");
    println!("partition: K = {}, part sizes {:?}", p.k(), p.part_sizes());
    println!("epsilon: {epsilon}");
    println!("balanced: {}", verdict.balanced);
    println!("cutsize: {}", verdict.cutsize);
    for (i, part) in verdict.per_part.iter().enumerate() {
        println!(
            "part {}: size {}, exclusive columns {}, rank {}",
            i + 1,
            part.size,
            part.exclusive_columns.len(),
            part.rank
        );
    }
    println!(
        "block-diagonalizable: {}",
        if verdict.feasible { "feasible" } else { "infeasible" }
    );
    if let Some(w) = &verdict.witness {
        let one_based = |v: &[usize]| v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ");
        println!("witness row order: {}", one_based(&w.row_order));
        println!("witness column order: {}", one_based(&w.col_order));
    }
    let consistent = !verdict.feasible || slack >= verdict.cutsize as i64;
    println!(
        "feasible => n - m >= cutsize: {}",
        if consistent { "consistent" } else { "VIOLATED" }
    );

    let cap = cli.cap.unwrap_or(DEFAULT_ASSIGNMENT_CAP);
    let search_k = k.unwrap_or(p.k());
    match Hypergraph::from_matrix(&mat) {
        Ok(h) => {
            match encodability::min_cutsize_bruteforce(&h, search_k, epsilon, cap) {
                Ok((min_cut, argmin)) => {
                    println!(
                        "min cutsize (K = {search_k}, brute force): {min_cut}, argmin labels {:?}",
                        argmin.to_one_based()
                    );
                    println!(
                        "necessary condition n - m >= min cutsize: {slack} >= {min_cut} {}",
                        if slack >= min_cut as i64 { "holds" } else { "fails" }
                    );
                }
                Err(e) => println!("min cutsize (K = {search_k}): skipped ({e})"),
            }
            match encodability::k_max(&mat, epsilon, cap) {
                Ok(kmax) => println!("K_max: {kmax}"),
                Err(e) => println!("K_max: skipped ({e})"),
            }
        }
        Err(e) => println!("min cutsize: skipped ({e})"),
    }
    Ok(consistent && (!require_feasible || verdict.feasible))
}
