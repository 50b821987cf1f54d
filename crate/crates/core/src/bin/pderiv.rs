use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pderiv::automaton::build_nfa;
use pderiv::bounds::{trace_metrics, Metrics};
use pderiv::corpus::{fuzz, CheckConfig, GenConfig};
use pderiv::monitor::MonitorSession;
use pderiv::oracle::lang_up_to;
use pderiv::partial::{closure, partial_derivatives_word};
use pderiv::{derive_word, Regex, Symbol, Trace};

/// Exit code for usage, input and I/O errors. 0..=2 are monitor verdicts.
const EXIT_ERROR: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "pderiv",
    version,
    about = "Derivatives and partial derivatives of regular expressions with shuffle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the derivative of EXPR by a word.
    Derive {
        expr: String,
        /// Symbols of the word; each argument may hold several, separated by spaces.
        word: Vec<String>,
    },
    /// Print the partial derivatives of EXPR by a word, one per line.
    Pderive { expr: String, word: Vec<String> },
    /// Print every partial derivative reachable from EXPR and their count.
    Closure { expr: String },
    /// Print height, size and the two increment budgets of EXPR.
    Bounds {
        /// Print a TSV table for every frontier member along WORD instead.
        #[arg(long)]
        trace: bool,
        expr: String,
        word: Vec<String>,
    },
    /// Print the partial-derivative NFA of EXPR as JSON.
    Nfa {
        expr: String,
        /// Emit Graphviz dot instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Print every word of the language of EXPR up to MAX_LEN, one per line.
    Oracle { expr: String, max_len: usize },
    /// Monitor a trace against the expression in SPEC_FILE.
    ///
    /// Exits with 0 on ACCEPTING, 1 on PENDING and 2 on VIOLATION.
    Monitor {
        spec_file: PathBuf,
        /// Trace file with whitespace-separated events; `-` or absent reads stdin.
        trace_file: Option<PathBuf>,
        /// Write end-of-trace statistics as JSON to this path.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Print `<index> <event> <verdict> <frontier-size>` after each event.
        #[arg(long)]
        step: bool,
    },
    /// Cross-check all engines and bounds on random expressions.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include the shuffle operator in generated expressions.
        #[arg(long)]
        shuffle: bool,
        #[arg(long, default_value_t = 15)]
        max_size: usize,
        #[arg(long, default_value_t = 3)]
        alphabet: usize,
        /// Longest word compared across engines.
        #[arg(long, default_value_t = 4)]
        word_len: usize,
    },
}

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

fn word_arg(parts: &[String]) -> pderiv::Result<Trace> {
    Trace::parse(&parts.join(" "))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(command: Command) -> CliResult<u8> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Derive { expr, word } => {
            let e = Regex::parse(&expr)?;
            writeln!(out, "{}", derive_word(&e, &word_arg(&word)?))?;
        }
        Command::Pderive { expr, word } => {
            let e = Regex::parse(&expr)?;
            let frontier = partial_derivatives_word(&e, &word_arg(&word)?);
            for d in frontier.sorted_by_text() {
                writeln!(out, "{d}")?;
            }
        }
        Command::Closure { expr } => {
            let e = Regex::parse(&expr)?;
            let states = closure(&e)?;
            let mut texts: Vec<String> = states.iter().map(Regex::to_string).collect();
            texts.sort();
            for t in &texts {
                writeln!(out, "{t}")?;
            }
            writeln!(out, "total: {}", texts.len())?;
        }
        Command::Bounds { trace, expr, word } => {
            let e = Regex::parse(&expr)?;
            if trace {
                writeln!(
                    out,
                    "step\tsymbol\theight\tsize\tdeltaMax\tetaMax\theightBudget\tsizeBudget\texpr"
                )?;
                for row in trace_metrics(&e, &word_arg(&word)?) {
                    let m = row.metrics;
                    let symbol = row.symbol.as_ref().map_or("-", Symbol::as_str);
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        row.step,
                        symbol,
                        m.height,
                        m.size,
                        m.delta_max,
                        m.eta_max,
                        m.height_budget(),
                        m.size_budget(),
                        row.expr
                    )?;
                }
            } else {
                if !word.is_empty() {
                    return Err("a word is only accepted together with --trace".into());
                }
                let m = Metrics::of(&e);
                writeln!(out, "height\t{}", m.height)?;
                writeln!(out, "size\t{}", m.size)?;
                writeln!(out, "deltaMax\t{}", m.delta_max)?;
                writeln!(out, "etaMax\t{}", m.eta_max)?;
            }
        }
        Command::Nfa { expr, dot } => {
            let nfa = build_nfa(&Regex::parse(&expr)?)?;
            if dot {
                write!(out, "{}", nfa.to_dot())?;
            } else {
                serde_json::to_writer(&mut out, &nfa.to_json())?;
                writeln!(out)?;
            }
        }
        Command::Oracle { expr, max_len } => {
            let lang = lang_up_to(&Regex::parse(&expr)?, max_len)?;
            for w in lang.sorted_words() {
                writeln!(out, "{w}")?;
            }
        }
        Command::Monitor {
            spec_file,
            trace_file,
            stats,
            step,
        } => {
            return monitor(
                &mut out,
                &spec_file,
                trace_file.as_deref(),
                stats.as_deref(),
                step,
            )
        }
        Command::Fuzz {
            count,
            seed,
            shuffle,
            max_size,
            alphabet,
            word_len,
        } => {
            if max_size == 0 || alphabet == 0 {
                return Err("--max-size and --alphabet must be positive".into());
            }
            let cfg = GenConfig {
                max_size,
                alphabet_size: alphabet,
                shuffle_enabled: shuffle,
                seed,
                ..GenConfig::default()
            };
            let check = CheckConfig {
                max_word_len: word_len,
                ..CheckConfig::default()
            };
            let report = fuzz(cfg, count, &check);
            writeln!(
                out,
                "checked {} expressions, {} failed",
                report.checked, report.failures
            )?;
            if let Some((e, failure)) = report.counterexample {
                writeln!(out, "counterexample: {e}")?;
                writeln!(out, "  {failure}")?;
                return Ok(1);
            }
            writeln!(out, "PASS")?;
        }
    }
    Ok(0)
}

fn monitor(
    out: &mut impl Write,
    spec_file: &std::path::Path,
    trace_file: Option<&std::path::Path>,
    stats: Option<&std::path::Path>,
    step: bool,
) -> CliResult<u8> {
    let spec_text = fs::read_to_string(spec_file)
        .map_err(|e| format!("cannot read {}: {e}", spec_file.display()))?;
    let spec = Regex::parse(&spec_text)?;
    let input: Box<dyn BufRead> = match trace_file {
        None => Box::new(BufReader::new(io::stdin())),
        Some(p) if p.as_os_str() == "-" => Box::new(BufReader::new(io::stdin())),
        Some(p) => Box::new(BufReader::new(
            fs::File::open(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?,
        )),
    };

    let mut session = MonitorSession::new(spec);
    for line in input.lines() {
        for token in line?.split_whitespace() {
            let event = Symbol::new(token)?;
            let verdict = session.step(&event);
            if step {
                writeln!(
                    out,
                    "{} {} {} {}",
                    session.events_seen(),
                    event,
                    verdict,
                    session.frontier().len()
                )?;
            }
        }
    }

    let verdict = session.current_verdict();
    writeln!(out, "{verdict}")?;
    if let Some(path) = stats {
        let json = serde_json::to_string_pretty(&session.stats())?;
        fs::write(path, json + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(verdict.exit_code() as u8)
}
