//! `mrap`: a.p. solutions of `ax² + by² + cz² = dxyz` from the command line.
//!
//! Exit status is 0 on success, 1 when a check finds a mismatch and 2 for
//! usage or input errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mrap_core::oracle::{brute_force_ap, HeightBound};
use mrap_core::scan::{
    imaginary_shortlist, scan, scan_with_cache, verify_tables, write_csv, write_json, ResultCache,
    ScanRow, ScanSpec,
};
use mrap_core::solver::has_nontrivial;
use mrap_core::{solve_ap, AlgInt, FieldDesc, MRInstance};

#[derive(Parser)]
#[command(name = "mrap", version, about = "Solutions in arithmetic progression of ax^2+by^2+cz^2 = dxyz")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every a.p. solution over Q or Q(sqrt(D)).
    Solve(InstanceArgs),
    /// Decide whether a nontrivial a.p. solution exists and which clause explains it.
    Exists(InstanceArgs),
    /// Solve a = b = c (or the given coefficients) over a (d, D) grid.
    Scan(ScanArgs),
    /// The long sweep 1 <= d <= 1000, 1 < disc <= 10000; resumable through --cache.
    FullScan(FullScanArgs),
    /// Finite list of (d, D) that can beat Q over imaginary quadratic fields.
    Shortlist(Coeffs),
    /// Check the solver against the built-in solution tables.
    VerifyPaper,
    /// Bounded brute force, compared with the solver up to the same height.
    Oracle {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        height: u64,
    },
}

#[derive(Args, Clone)]
struct Coeffs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    a: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    b: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    c: String,
}

#[derive(Args)]
struct InstanceArgs {
    #[command(flatten)]
    coeffs: Coeffs,
    /// Elements are written `u+v*a` with `a` the integral basis generator.
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    /// Radicand D of Q(sqrt(D)); omitted means Q.
    #[arg(long, allow_hyphen_values = true)]
    disc: Option<i64>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    /// Report file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// JSONL journal; finished rows are skipped on rerun.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    coeffs: Coeffs,
    #[arg(long, default_value_t = 1)]
    d_min: i64,
    #[arg(long)]
    d_max: i64,
    /// Field discriminant range.
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    disc_min: i64,
    #[arg(long, allow_hyphen_values = true)]
    disc_max: i64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct FullScanArgs {
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Mismatch,
    Usage(String),
}

impl From<mrap_core::Error> for Failure {
    fn from(e: mrap_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn rational_coeff(text: &str) -> Result<i64, Failure> {
    text.trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("scan coefficients must be rational integers, got {text:?}")))
}

impl InstanceArgs {
    fn instance(&self) -> Result<MRInstance, Failure> {
        let field = match self.disc {
            Some(d) => FieldDesc::new(d)?,
            None => FieldDesc::RATIONAL,
        };
        let p = |s: &str| AlgInt::parse(field, s);
        let c = &self.coeffs;
        Ok(MRInstance::new(p(&c.a)?, p(&c.b)?, p(&c.c)?, p(&self.d)?)?)
    }
}

fn terms_text(t: &mrap_core::APTriple) -> String {
    let [x, y, z] = t.terms();
    format!("({x}, {y}, {z})")
}

fn cmd_solve(args: &InstanceArgs) -> CmdResult {
    let inst = args.instance()?;
    let rep = solve_ap(&inst)?;
    let out = io::stdout();
    let mut out = out.lock();
    if args.json {
        let triples: Vec<_> = rep
            .triples
            .iter()
            .map(|t| serde_json::json!({ "triple": t.to_string(), "terms": terms_text(t) }))
            .collect();
        let doc = serde_json::json!({
            "instance": inst.to_string(),
            "omega_convention": inst.field().omega_convention(),
            "count": rep.triples.len(),
            "degenerate_fallback": rep.degenerate_fallback,
            "fallback_height": rep.fallback_height,
            "triples": triples,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
        return Ok(());
    }
    writeln!(out, "# {inst}; {}", inst.field().omega_convention())?;
    if let Some(h) = rep.fallback_height {
        writeln!(out, "# degenerate coefficients: brute force up to height {h}")?;
    }
    for t in &rep.triples {
        writeln!(out, "{t}\t{}", terms_text(t))?;
    }
    writeln!(out, "count {}", rep.triples.len())?;
    Ok(())
}

fn cmd_exists(args: &InstanceArgs) -> CmdResult {
    let inst = args.instance()?;
    let r = has_nontrivial(&inst)?;
    if args.json {
        let doc = serde_json::json!({
            "instance": inst.to_string(),
            "nontrivial": r.nontrivial,
            "clause_a": r.clause_a,
            "clause_b_printed": r.clause_b_printed,
            "clause_b_integral": r.clause_b_integral,
            "clause_b_disagrees": r.clause_b_disagrees(),
            "degenerate_fallback": r.degenerate_fallback,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        println!("{inst}: {}", r.nontrivial);
        println!("clause (a) d | a+b+c: {}", r.clause_a);
        println!("clause (b) divisibility: {}", r.clause_b_printed);
        println!("clause (b) integral point: {}", r.clause_b_integral);
        if r.clause_b_disagrees() {
            println!("note: the two forms of clause (b) disagree");
        }
    }
    Ok(())
}

fn emit(rows: &[ScanRow], output: &Output) -> CmdResult {
    let write = |w: &mut dyn Write| -> io::Result<()> {
        match output.format {
            Format::Csv => write_csv(rows, w),
            Format::Json => write_json(rows, w),
        }
    };
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write(&mut w)?;
            w.flush()?;
        }
        None => write(&mut io::stdout().lock())?,
    }
    Ok(())
}

fn run_scan(spec: &ScanSpec, output: &Output) -> CmdResult {
    let rows = match &output.cache {
        Some(path) => scan_with_cache(spec, &mut ResultCache::open(path)?)?,
        None => scan(spec)?,
    };
    emit(&rows, output)
}

fn cmd_scan(args: &ScanArgs) -> CmdResult {
    let c = &args.coeffs;
    let mut spec = ScanSpec::markoff(args.d_min, args.d_max, args.disc_min, args.disc_max);
    spec.a = rational_coeff(&c.a)?;
    spec.b = rational_coeff(&c.b)?;
    spec.c = rational_coeff(&c.c)?;
    run_scan(&spec, &args.output)
}

fn cmd_shortlist(c: &Coeffs) -> CmdResult {
    let s = imaginary_shortlist(rational_coeff(&c.a)?, rational_coeff(&c.b)?, rational_coeff(&c.c)?)?;
    println!("fields searched: {}", s.radicands.len());
    println!("candidates: {}", s.candidates.len());
    for (d, dd) in &s.candidates {
        println!("  d={d} D={dd}");
    }
    println!("solution set differs from Q:");
    for (d, dd) in &s.exceptions {
        println!("  d={d} D={dd}");
    }
    Ok(())
}

fn cmd_verify() -> CmdResult {
    let report = verify_tables();
    println!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn cmd_oracle(args: &InstanceArgs, height: u64) -> CmdResult {
    let inst = args.instance()?;
    let bound = HeightBound::new(height)?;
    let brute = brute_force_ap(&inst, bound);
    let limit = height.into();
    let solved: Vec<_> = solve_ap(&inst)?.triples.into_iter().filter(|t| t.height() <= limit).collect();
    println!("# {inst}; {}", inst.field().omega_convention());
    for t in &brute {
        println!("{t}\t{}", terms_text(t));
    }
    println!("count {}", brute.len());
    if brute == solved {
        println!("solver agrees up to height {height}");
        Ok(())
    } else {
        for t in brute.iter().filter(|t| !solved.contains(t)) {
            println!("oracle only: {t}");
        }
        for t in solved.iter().filter(|t| !brute.contains(t)) {
            println!("solver only: {t}");
        }
        Err(Failure::Mismatch)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Exists(a) => cmd_exists(a),
        Command::Scan(a) => cmd_scan(a),
        Command::FullScan(a) => run_scan(&ScanSpec::full(), &a.output),
        Command::Shortlist(c) => cmd_shortlist(c),
        Command::VerifyPaper => cmd_verify(),
        Command::Oracle { instance, height } => cmd_oracle(instance, *height),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
