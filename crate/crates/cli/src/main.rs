mod analyze;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use positroid::enumerate::{
    enumerate_pom_indicators, enumerate_positively_oriented, for_each_matroid,
};
use positroid::io::{chirotope_to_json, matroid_to_json};
use positroid::macp::{build_macphersonian_plus, build_macphersonian_plus_reoriented};
use positroid::poset::{Part, Poset};
use positroid::positroid::is_positroid;
use positroid::verify::{check_isomorphism, check_poset, soft_max_n, verify, Theorem, VerifyOptions};
use positroid::MAX_N;
use serde_json::{json, Value};

/// Matroids, oriented matroids and positroids: analysis, enumeration and
/// exhaustive verification.
#[derive(Parser)]
#[command(name = "positroid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report on a matroid, chirotope or matrix JSON file.
    Analyze { file: PathBuf },
    /// Run an exhaustive verification campaign.
    Verify {
        /// One of main-5.1, dasilva-5.2, noncrossing-3.7, closure-3.5,
        /// rotate-4.10, restrict-4.12, connected-4.13, poset-6.6,
        /// isomorphism-6.13.
        theorem: String,
        /// Largest ground set size.
        #[arg(long)]
        n: usize,
        /// Only this rank.
        #[arg(long)]
        k: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Corrupt the criterion under test (harness self-test).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Stream objects as JSON lines.
    Enumerate {
        kind: EnumKind,
        #[arg(long)]
        n: usize,
        /// Only this rank (default: every rank).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        count_only: bool,
        /// For poms: every positively orientable chirotope rather than one
        /// indicator per positroid.
        #[arg(long)]
        reoriented: bool,
    },
    /// Build the positive MacPhersonian with a bottom element.
    Poset {
        k: usize,
        n: usize,
        /// Run the graded/thin/Eulerian, order and Euler characteristic checks.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        export: Option<ExportFormat>,
        /// Export destination (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use every positively orientable chirotope as an element.
        #[arg(long)]
        reoriented: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Matroids,
    Positroids,
    Poms,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

/// Failures that map to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // A closed downstream pipe (e.g. `| head`) is not an input error.
        Err(InputError(msg)) if msg.contains("Broken pipe") => ExitCode::SUCCESS,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<bool, InputError> {
    match cmd {
        Command::Analyze { file } => {
            let text = fs::read_to_string(&file).map_err(|e| InputError(format!("{}: {e}", file.display())))?;
            let report = analyze::analyze_text(&text)?;
            print_json(&report)?;
            Ok(true)
        }
        Command::Verify { theorem, n, k, out, jobs, inject_fault } => {
            let theorem: Theorem = theorem.parse()?;
            check_n(n)?;
            let soft = soft_max_n();
            if n > soft {
                eprintln!("warning: n = {n} exceeds the soft bound {soft} (set POSITROID_MAX_N to raise it)");
            }
            let report = verify(theorem, VerifyOptions { n_max: n, k, jobs, inject_fault });
            let value = serde_json::to_value(&report)?;
            write_out(out.as_deref(), &(serde_json::to_string_pretty(&value)? + "\n"))?;
            Ok(report.pass)
        }
        Command::Enumerate { kind, n, k, count_only, reoriented } => {
            check_n(n)?;
            enumerate(kind, n, k, count_only, reoriented)?;
            Ok(true)
        }
        Command::Poset { k, n, check, export, out, reoriented } => {
            check_n(n)?;
            if k > n {
                return Err(InputError(format!("rank {k} exceeds n = {n}")));
            }
            poset(k, n, check, export, out.as_deref(), reoriented)
        }
    }
}

fn check_n(n: usize) -> Result<(), InputError> {
    if n > MAX_N {
        return Err(InputError(format!("n = {n} exceeds the supported maximum {MAX_N}")));
    }
    Ok(())
}

fn print_json(v: &Value) -> Result<(), InputError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), InputError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| InputError(format!("{}: {e}", p.display()))),
        None => {
            io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn enumerate(kind: EnumKind, n: usize, k: Option<usize>, count_only: bool, reoriented: bool) -> Result<(), InputError> {
    let ranks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut count = 0u64;
    let mut emit = |v: Value| -> io::Result<()> {
        count += 1;
        if count_only {
            Ok(())
        } else {
            writeln!(out, "{v}")
        }
    };
    for &k in &ranks {
        match kind {
            EnumKind::Matroids | EnumKind::Positroids => {
                let mut result = Ok(());
                for_each_matroid(n, k, |m| {
                    if result.is_ok() && (matches!(kind, EnumKind::Matroids) || is_positroid(&m).is_positroid) {
                        result = emit(matroid_to_json(&m));
                    }
                });
                result?;
            }
            EnumKind::Poms if reoriented => {
                for chi in enumerate_positively_oriented(n, k) {
                    emit(chirotope_to_json(&chi))?;
                }
            }
            EnumKind::Poms => {
                for (_, chi) in enumerate_pom_indicators(n, k) {
                    emit(chirotope_to_json(&chi))?;
                }
            }
        }
    }
    if count_only {
        let kind = match kind {
            EnumKind::Matroids => "matroids",
            EnumKind::Positroids => "positroids",
            EnumKind::Poms => "poms",
        };
        writeln!(out, "{}", json!({ "kind": kind, "n": n, "k": k, "reoriented": reoriented, "count": count }))?;
    }
    out.flush()?;
    Ok(())
}

fn poset(
    k: usize,
    n: usize,
    check: bool,
    export: Option<ExportFormat>,
    out: Option<&Path>,
    reoriented: bool,
) -> Result<bool, InputError> {
    let p: Poset = if reoriented {
        build_macphersonian_plus_reoriented(k, n).0
    } else {
        build_macphersonian_plus(k, n).poset
    };
    let mut pass = true;
    let summary = if check {
        let diagnostics = p.diagnostics();
        let failures = if reoriented {
            // No claim is made for this reading; report diagnostics only.
            Vec::new()
        } else {
            [check_poset(k, n, false), check_isomorphism(k, n, false)].into_iter().flatten().collect()
        };
        pass = failures.is_empty();
        let whole = p.order_complex_euler(Part::Whole)?;
        json!({
            "k": k,
            "n": n,
            "reoriented": reoriented,
            "elements": p.len(),
            "graded": diagnostics.graded,
            "thin": diagnostics.thin,
            "eulerian": diagnostics.eulerian,
            "rank_vector": diagnostics.rank_vector,
            "whole_reduced_euler": whole,
            "pass": pass,
            "failures": failures,
        })
    } else {
        json!({ "k": k, "n": n, "reoriented": reoriented, "elements": p.len() })
    };
    match export {
        None => print_json(&summary)?,
        Some(fmt) => {
            let name = format!("MacP+({k},{n})");
            let text = match fmt {
                ExportFormat::Dot => p.to_dot(&name),
                ExportFormat::Json => serde_json::to_string_pretty(&p.to_json())? + "\n",
            };
            if out.is_some() {
                write_out(out, &text)?;
                print_json(&summary)?;
            } else {
                write_out(None, &text)?;
                eprintln!("{summary}");
            }
        }
    }
    Ok(pass)
}
