//! Command-line toolkit for CSS-T code pairs from quasi-cyclic base
//! matrices.
//!
//! Subcommands: `construct` (expand a base matrix), `analyze` (code-level
//! report), `csst` (pair verification, maximal partner, degenerate
//! puncturing, definitional cross-check), `search` (seeded candidate
//! search), and `stabilizer` (block stabilizer matrix).
//!
//! Conventions: matrix files hold one '0'/'1' row per line and are always
//! read as generator matrices unless `--as-parity` is given; JSON reports go
//! to stdout and human-readable summaries to stderr; exit code 0 means
//! success/verified, 1 means verified-false, 2 means usage or parse errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use csstk::{
    classify_density, csst_definitional_check, expand_base, is_csst_pair, max_csst_partner,
    puncture_pair, stabilizer_matrix, BaseMatrix, BitMatrix, DefinitionalLimits, Error,
    LinearCode, OracleVerdict, SearchConfig, SearchMode, DEFAULT_WEIGHT_BUDGET,
};

mod report;
use report::{min_weight_fields, AnalyzeReport, CsstJson, PartnerReport, PuncturedReport};

#[derive(Parser)]
#[command(
    name = "csstk",
    version,
    about = "Construct, verify, and search CSS-T quantum code pairs over GF(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a quasi-cyclic base matrix into its binary block matrix
    Construct(ConstructArgs),
    /// Report length, dimension, weights, hull and square dimensions
    Analyze(AnalyzeArgs),
    /// Verify a CSS-T pair, or build the maximal partner of a single code
    Csst(CsstArgs),
    /// Search seeded random (or exhaustive) base matrices for CSS-T pairs
    Search(SearchArgs),
    /// Emit the stabilizer block matrix [[0, H1], [G2, 0]]
    Stabilizer(StabilizerArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// Circulant block size
    #[arg(long = "L")]
    block_size: usize,
    /// Base matrix, rows separated by ';', entries by ',', ∞ as -1 or inf
    #[arg(long, conflicts_with = "base_file")]
    base: Option<String>,
    /// File containing the base matrix string
    #[arg(long)]
    base_file: Option<PathBuf>,
    /// Write the expanded matrix here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Matrix file (generator by default)
    gen: PathBuf,
    /// Read the file as a parity-check matrix (code = its kernel)
    #[arg(long)]
    as_parity: bool,
    /// Codeword-enumeration budget for minimum-weight computation
    #[arg(long, default_value_t = DEFAULT_WEIGHT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct CsstArgs {
    /// Generator file of C1
    gen1: PathBuf,
    /// Generator file of C2 (omit with --max-partner)
    gen2: Option<PathBuf>,
    /// Take C2 = C1 ∩ (C1²)^⊥, the largest valid partner
    #[arg(long)]
    max_partner: bool,
    /// Cross-check with the brute-force definitional oracle
    #[arg(long)]
    definitional: bool,
    /// Puncture every coordinate where C2 is degenerated and re-verify
    #[arg(long)]
    puncture_degenerate: bool,
    /// Read input files as parity-check matrices
    #[arg(long)]
    as_parity: bool,
    /// Codeword-enumeration budget for distance computations
    #[arg(long, default_value_t = DEFAULT_WEIGHT_BUDGET)]
    budget: u64,
    /// Write the partner generator matrix here (with --max-partner)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Circulant block size
    #[arg(long = "L")]
    block_size: usize,
    /// Base matrix block rows
    #[arg(long)]
    m: usize,
    /// Base matrix block columns
    #[arg(long)]
    n: usize,
    /// Probability that a sampled entry is ∞
    #[arg(long, default_value_t = 0.5)]
    infinity_density: f64,
    /// Number of seeded random candidates
    #[arg(long, conflicts_with = "enumerate")]
    samples: Option<u64>,
    /// Visit every base matrix instead of sampling
    #[arg(long)]
    enumerate: bool,
    /// RNG seed; candidate i depends only on (seed, i)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep only candidates with logical dimension k1−k2 at least this
    #[arg(long = "min-k", default_value_t = 0)]
    min_logical_k: u64,
    /// Codeword-enumeration budget for distance computations
    #[arg(long, default_value_t = DEFAULT_WEIGHT_BUDGET)]
    budget: u64,
    /// Read expansions as parity-check matrices (C1 = kernel)
    #[arg(long)]
    as_parity: bool,
    /// Worker threads; the record stream is identical for any count
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Write JSON Lines here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StabilizerArgs {
    /// Generator file of C1
    gen1: PathBuf,
    /// Generator file of C2 (must satisfy C2 ⊆ C1)
    gen2: PathBuf,
    /// Read input files as parity-check matrices
    #[arg(long)]
    as_parity: bool,
    /// Write the stabilizer matrix here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Csst(args) => cmd_csst(args),
        Command::Search(args) => cmd_search(args),
        Command::Stabilizer(args) => cmd_stabilizer(args),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<ExitCode, String>;

fn read_code(path: &PathBuf, as_parity: bool) -> Result<LinearCode, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let m = BitMatrix::parse_text(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(if as_parity {
        LinearCode::from_parity_check(&m)
    } else {
        LinearCode::from_generator(&m)
    })
}

fn read_matrix(path: &PathBuf) -> Result<BitMatrix, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    BitMatrix::parse_text(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(output: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match output {
        Some(path) => {
            fs::write(path, content).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{content}");
            std::io::stdout().flush().map_err(|e| e.to_string())
        }
    }
}

fn cmd_construct(args: ConstructArgs) -> CmdResult {
    let base_text = match (&args.base, &args.base_file) {
        (Some(s), None) => s.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        _ => return Err("provide exactly one of --base or --base-file".into()),
    };
    let base = BaseMatrix::parse(args.block_size, &base_text).map_err(|e| e.to_string())?;
    let h = expand_base(&base);
    let code = LinearCode::from_generator(&h);
    write_output(&args.output, &h.to_text())?;
    eprintln!(
        "expanded {}x{} matrix, row space [{},{}]",
        h.rows(),
        h.cols(),
        code.n(),
        code.k()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_analyze(args: AnalyzeArgs) -> CmdResult {
    let input = read_matrix(&args.gen)?;
    let code = if args.as_parity {
        LinearCode::from_parity_check(&input)
    } else {
        LinearCode::from_generator(&input)
    };
    let profile = code.weight_profile(args.budget);
    let (min_weight, min_weight_exact) = min_weight_fields(profile.min_weight);
    let square = code.schur_square();
    let report = AnalyzeReport {
        n: code.n(),
        k: code.k(),
        min_weight,
        min_weight_exact,
        is_even: profile.is_even,
        is_self_orthogonal: profile.is_self_orthogonal,
        hull_dim: code.hull().k(),
        square_dim: square.k(),
        max_partner_dim: max_csst_partner(&code).k(),
        density: classify_density(&input),
    };
    println!("{}", serde_json::to_string(&report).expect("serializable"));
    eprintln!(
        "[{},{}] code, min weight {}, hull dim {}, square dim {}",
        report.n,
        report.k,
        report
            .min_weight
            .map_or_else(|| "not computed".into(), |w: usize| w.to_string()),
        report.hull_dim,
        report.square_dim
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_csst(args: CsstArgs) -> CmdResult {
    let c1 = read_code(&args.gen1, args.as_parity)?;
    let c2 = match (&args.gen2, args.max_partner) {
        (Some(path), false) => read_code(path, args.as_parity)?,
        (None, true) => max_csst_partner(&c1),
        (Some(_), true) => return Err("--max-partner conflicts with an explicit gen2 file".into()),
        (None, false) => return Err("provide a gen2 file or --max-partner".into()),
    };

    let report = is_csst_pair(&c1, &c2, args.budget).map_err(|e| e.to_string())?;
    let mut json = CsstJson::from_report(&report);

    if args.max_partner {
        json.partner = Some(PartnerReport {
            n: c2.n(),
            k: c2.k(),
            gen: (0..c2.k()).map(|r| c2.generator().row_text(r)).collect(),
        });
        if args.output.is_some() {
            write_output(&args.output, &c2.generator().to_text())?;
        }
    }

    if args.puncture_degenerate {
        json.punctured = Some(puncture_report(&c1, &c2, &report, args.budget));
    }

    if args.definitional {
        let verdict = csst_definitional_check(&c1, &c2, &DefinitionalLimits::default())
            .map_err(|e| e.to_string())?;
        let text = match verdict {
            OracleVerdict::True => "true",
            OracleVerdict::False => "false",
            OracleVerdict::Inconclusive => "inconclusive",
        };
        if verdict != OracleVerdict::Inconclusive {
            assert_eq!(
                verdict == OracleVerdict::True,
                report.is_pair,
                "definitional oracle disagrees with the algebraic verification"
            );
        }
        json.definitional = Some(text.into());
    }

    println!("{}", serde_json::to_string(&json).expect("serializable"));
    if report.is_pair {
        let p = report.params.expect("verified pair has parameters");
        eprintln!(
            "CSS-T pair verified: [[{},{},{}]]",
            p.n,
            p.k,
            p.d_lower
                .map_or_else(|| ">=? (not computed)".into(), |d| format!(">={d}"))
        );
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "not a CSS-T pair; witness row: {}",
            report.witness.as_deref().unwrap_or("(none)")
        );
        Ok(ExitCode::from(1))
    }
}

fn puncture_report(
    c1: &LinearCode,
    c2: &LinearCode,
    report: &csstk::CssTReport,
    budget: u64,
) -> PuncturedReport {
    if !report.is_pair {
        return PuncturedReport {
            removed: vec![],
            is_pair: false,
            params: None,
            error: Some("pair did not verify; puncturing theorem does not apply".into()),
        };
    }
    let coords = c2.zero_coordinates();
    if coords.len() == c2.n() {
        return PuncturedReport {
            removed: vec![],
            is_pair: report.is_pair,
            params: None,
            error: Some("C2 is the zero code; its support complement is everything".into()),
        };
    }
    match puncture_pair(c1, c2, &coords) {
        Ok((p1, p2)) => {
            let sub = is_csst_pair(&p1, &p2, budget).expect("lengths match");
            PuncturedReport {
                removed: coords,
                is_pair: sub.is_pair,
                params: sub.params,
                error: None,
            }
        }
        Err(e) => PuncturedReport {
            removed: coords,
            is_pair: false,
            params: None,
            error: Some(e.to_string()),
        },
    }
}

fn cmd_search(args: SearchArgs) -> CmdResult {
    let mode = if args.enumerate {
        SearchMode::Enumerate
    } else {
        match args.samples {
            Some(count) => SearchMode::Sample { count },
            None => return Err("provide --samples N or --enumerate".into()),
        }
    };
    let cfg = SearchConfig {
        block_size: args.block_size,
        block_rows: args.m,
        block_cols: args.n,
        infinity_density: args.infinity_density,
        mode,
        seed: args.seed,
        min_logical_k: args.min_logical_k as usize,
        distance_budget: args.budget,
        as_parity: args.as_parity,
        threads: args.threads,
    };

    let mut sink: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(
            fs::File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut io_error: Option<String> = None;
    let summary = csstk::run_search(&cfg, |record| {
        if io_error.is_none() {
            if let Err(e) = writeln!(sink, "{}", record.to_json_line()) {
                io_error = Some(e.to_string());
            }
        }
    })
    .map_err(|e| e.to_string())?;
    if let Some(e) = io_error {
        return Err(format!("cannot write records: {e}"));
    }
    writeln!(sink, "{}", summary.to_json_line()).map_err(|e| e.to_string())?;
    sink.flush().map_err(|e| e.to_string())?;
    eprintln!(
        "evaluated {} candidates, kept {}, best k {}, best d_lower {}",
        summary.evaluated,
        summary.kept,
        summary.best_k.map_or_else(|| "-".into(), |k| k.to_string()),
        summary
            .best_d_lower
            .map_or_else(|| "-".into(), |d| d.to_string())
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_stabilizer(args: StabilizerArgs) -> CmdResult {
    let c1 = read_code(&args.gen1, args.as_parity)?;
    let c2 = read_code(&args.gen2, args.as_parity)?;
    match stabilizer_matrix(&c1, &c2) {
        Ok(m) => {
            write_output(&args.output, &m.to_text())?;
            if m.rows() == 0 {
                eprintln!("warning: stabilizer has no generators (C1 is everything, C2 is zero)");
            } else {
                eprintln!(
                    "{}x{} stabilizer, max row weight {}",
                    m.rows(),
                    m.cols(),
                    m.max_row_weight()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::NotSubcode) => {
            eprintln!("verified false: C2 is not a subcode of C1");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.to_string()),
    }
}
