use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cabelt::afo::{check_safety, Safety};
use cabelt::report::{Report, Status};
use cabelt::suites::{run_suite, SuiteOptions, SUITES};
use cabelt::text::format_periodic;
use cabelt::wreath::{relation_suite, sample_behaviours, SuiteParams};
use cabelt::{Alphabet, Error, PeriodicConfig, Symbol};
use cabelt_cli::config::{SystemConfig, SystemKind};
use cabelt_cli::render::{diagram, render, Format};
use cabelt_cli::system::{parse_coords, System};

/// Reversible cellular automata for wreath-product embeddings, checked against group oracles.
#[derive(Parser)]
#[command(name = "cabelt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// System config file (TOML).
    #[arg(long)]
    config: Option<PathBuf>,
    /// One-line system selector such as `khat k=2` or `neumann even`.
    #[arg(long, conflicts_with = "config")]
    system: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a generator word to a tape and print the image.
    Apply {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: Option<String>,
        /// Tape as `period=n cells=[..]` or, for one-character symbol names, the names run together.
        #[arg(long)]
        input: Option<String>,
        /// All-zero input of this period when no input is given.
        #[arg(long)]
        period: Option<usize>,
    },
    /// Render the trajectory of a tape under a word.
    Spacetime {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        period: Option<usize>,
        /// text, svg or tikz.
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Run verification suites and print one key=value record per check.
    Verify {
        #[command(flatten)]
        source: Source,
        /// core, afo, belt, pointy, wreath, khat, neumann or all.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        period: Option<usize>,
        #[arg(long)]
        ball: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Belt suite: add a map with a wrong inverse (negative control).
        #[arg(long)]
        corrupt: bool,
    },
    /// Check that a word set is n0-safe.
    SafetyCheck {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Words as symbol indices, `;` between words: "1 0 1; 2".
        #[arg(long, conflicts_with = "config")]
        words: Option<String>,
        #[arg(long)]
        n0: Option<usize>,
        #[arg(long, default_value_t = 3)]
        alphabet: usize,
    },
    /// List the generator names of a system.
    ListGenerators {
        #[command(flatten)]
        source: Source,
    },
}

enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn load(source: &Source) -> Result<SystemConfig, Failure> {
    match (&source.config, &source.system) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            SystemConfig::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        (None, Some(sel)) => Ok(SystemConfig::from_selector(sel)?),
        (None, None) => Err(Failure::Usage("give --config <path> or --system <selector>".into())),
    }
}

fn input_tape(sys: &System, input: Option<&str>, period: Option<usize>) -> Result<PeriodicConfig, Failure> {
    match (input.or(sys.config.input.as_deref()), period) {
        (Some(text), _) => Ok(sys.parse_input(text)?),
        (None, Some(n)) if n > 0 => Ok(PeriodicConfig::zeros(sys.alphabet(), n)),
        _ => Err(Failure::Usage("no input tape: give --input or --period, or set input in the config".into())),
    }
}

fn word_text<'a>(sys: &'a System, word: Option<&'a str>) -> Result<&'a str, Failure> {
    word.or(sys.config.word.as_deref())
        .ok_or_else(|| Failure::Usage("no word: give --word or set word in the config".into()))
}

fn apply(source: &Source, word: Option<&str>, input: Option<&str>, period: Option<usize>) -> Outcome {
    let sys = System::build(load(source)?)?;
    let w = sys.parse_word(word_text(&sys, word)?)?;
    if let Some(o) = &sys.oracle {
        let k = sys.config.koracle.as_ref().unwrap();
        let text = input.ok_or_else(|| Failure::Usage("koracle needs --input a,b,...".into()))?;
        let x = parse_coords(text, k.k, k.n)?;
        let p = o.eval(&w)?;
        let y = cabelt::khat::KAbstract::decode(k.k, k.n, p.apply(cabelt::khat::KAbstract::encode(k.n, &x)));
        println!("{}", y.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
        return Ok(());
    }
    let x = input_tape(&sys, input, period)?;
    println!("{}", format_periodic(&sys.table.apply(&w, &x)?));
    Ok(())
}

fn spacetime(source: &Source, word: Option<&str>, input: Option<&str>, period: Option<usize>, format: Format) -> Outcome {
    let sys = System::build(load(source)?)?;
    if sys.oracle.is_some() {
        return Err(Failure::Usage("koracle has no tapes to draw".into()));
    }
    let w = sys.parse_word(word_text(&sys, word)?)?;
    let x = input_tape(&sys, input, period)?;
    print!("{}", render(&sys, &diagram(&sys, &w, &x)?, format));
    Ok(())
}

fn finish(report: &Report) -> Outcome {
    print!("{report}");
    let count = |s: Status| report.records.iter().filter(|r| r.status == s).count();
    let (pass, fail, open) = (count(Status::Pass), count(Status::Fail), count(Status::Inconclusive));
    eprintln!("{} checks: {pass} pass, {fail} fail, {open} inconclusive", report.records.len());
    if fail > 0 {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

fn verify(source: &Source, suite: Option<&str>, opts: SuiteOptions) -> Outcome {
    let cfg = match (&source.config, &source.system) {
        (None, None) => None,
        _ => Some(load(source)?),
    };
    let from_cfg = cfg.as_ref().and_then(|c| c.verify.clone()).unwrap_or_default();
    let opts = SuiteOptions {
        period: opts.period.or(from_cfg.period),
        ball: opts.ball.or(from_cfg.ball),
        k: opts.k.or(from_cfg.k).or(cfg.as_ref().and_then(|c| c.khat.as_ref().map(|s| s.k))),
        seed: opts.seed.or(from_cfg.seed),
        corrupt: opts.corrupt,
    };
    let name = suite
        .map(str::to_string)
        .or(from_cfg.suite)
        .or(cfg.as_ref().map(|c| c.system.default_suite().to_string()))
        .ok_or_else(|| Failure::Usage("give --suite, or a config to pick one".into()))?;
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name.as_str()] };
    let mut report = Report::new();
    for n in names {
        if !SUITES.contains(&n) {
            return Err(Failure::Usage(format!("unknown suite {n:?}; one of {} or all", SUITES.join(", "))));
        }
        let custom = cfg.as_ref().filter(|c| n == "wreath" && c.system == SystemKind::Zz2z && c.wreath.is_some());
        match custom {
            Some(c) => {
                let sys = System::build(c.clone())?;
                if let Some(p) = &sys.presentation {
                    let params = SuiteParams { max_period: opts.period.unwrap_or(3), ..Default::default() };
                    report.extend(relation_suite("wreath", &sys.table, p, &params, &[])?);
                }
                report.extend(sample_behaviours(&sys.table)?);
            }
            None => report.extend(run_suite(n, &opts)?),
        }
    }
    finish(&report)
}

fn parse_words(text: &str) -> Result<Vec<Vec<Symbol>>, Failure> {
    text.split(';')
        .map(|w| {
            w.split_whitespace()
                .map(|c| c.parse::<Symbol>().map_err(|_| Failure::Usage(format!("bad symbol {c:?}"))))
                .collect()
        })
        .collect()
}

fn safety(config: Option<&PathBuf>, words: Option<&str>, n0: Option<usize>, alphabet: usize) -> Outcome {
    let (a, words, n0) = match (config, words) {
        (Some(path), _) => {
            let cfg = load(&Source { config: Some(path.clone()), system: None })?;
            let s = cfg.afo.ok_or_else(|| Failure::Usage("safety-check needs an afo config".into()))?;
            let ws = s.words.iter().map(|w| w.iter().map(|&c| c as Symbol).collect()).collect();
            (Alphabet::numeric(s.alphabet)?, ws, n0.or(s.n0))
        }
        (None, Some(text)) => (Alphabet::numeric(alphabet)?, parse_words(text)?, n0),
        (None, None) => return Err(Failure::Usage("give --config or --words".into())),
    };
    let n0 = n0.ok_or_else(|| Failure::Usage("give --n0".into()))?;
    match check_safety(&a, &words, n0)? {
        Safety::Safe => {
            println!("safe n0={n0}");
            Ok(())
        }
        Safety::Unsafe(c) => {
            println!(
                "unsafe n0={n0} period={} tape={} placements=({},{})|({},{})",
                c.period,
                c.tape.iter().map(|&s| a.name(s)).collect::<Vec<_>>().join(""),
                c.first.0,
                c.first.1,
                c.second.0,
                c.second.1
            );
            Err(Failure::Check)
        }
    }
}

fn list(source: &Source) -> Outcome {
    let sys = System::build(load(source)?)?;
    println!("alphabet_size={}", sys.alphabet().size());
    for name in sys.table.names() {
        println!("generator={name}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Apply { source, word, input, period } => apply(source, word.as_deref(), input.as_deref(), *period),
        Command::Spacetime { source, word, input, period, format } => {
            spacetime(source, word.as_deref(), input.as_deref(), *period, *format)
        }
        Command::Verify { source, suite, period, ball, k, seed, corrupt } => verify(
            source,
            suite.as_deref(),
            SuiteOptions { period: *period, ball: *ball, k: *k, seed: *seed, corrupt: *corrupt },
        ),
        Command::SafetyCheck { config, words, n0, alphabet } => safety(config.as_ref(), words.as_deref(), *n0, *alphabet),
        Command::ListGenerators { source } => list(source),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
