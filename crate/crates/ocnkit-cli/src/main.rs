//! `ocnkit` command line: parse nets and machines, run analyses, emit JSON
//! verdicts, DOT graphs, and generated `.ocn`/`.lcm` artifacts.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict (membership
//! false, counterexample found, not uniformly determinizable), 2
//! inconclusive, 64 usage error, 65 malformed input, 66 unreadable file.

use std::fmt::Display;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use ocnkit::*;

const EXIT_TRUE: i32 = 0;
const EXIT_FALSE: i32 = 1;
const EXIT_INCONCLUSIVE: i32 = 2;
const EXIT_USAGE: i32 = 64;
const EXIT_DATA: i32 = 65;
const EXIT_NOINPUT: i32 = 66;

#[derive(Parser)]
#[command(name = "ocnkit", version, about = "One-counter net toolkit")]
struct Cli {
    /// Output format; `dot` is valid where the output is a net.
    #[arg(long, global = true, env = "OCNKIT_FORMAT", default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct AnalysisOpts {
    /// Exact computation horizon (word lengths 0..=horizon).
    #[arg(long, default_value_t = 64)]
    horizon: usize,
    /// Evidence required before a periodic tail is reported.
    #[arg(long, default_value_t = 16)]
    confirm_window: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Test membership of a word at one initial counter.
    Member {
        ocn: PathBuf,
        #[arg(long)]
        counter: u64,
        /// Whitespace-separated symbol tokens; empty for the empty word.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Compute the minimal counter relation of a unary net.
    Mcr {
        ocn: PathBuf,
        #[command(flatten)]
        opts: AnalysisOpts,
    },
    /// Decide uniform determinizability of a unary net.
    UniformDet {
        ocn: PathBuf,
        #[command(flatten)]
        opts: AnalysisOpts,
    },
    /// Synthesize the equivalent deterministic net, when one exists.
    Synth {
        ocn: PathBuf,
        #[command(flatten)]
        opts: AnalysisOpts,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Express a unary net's language at a fixed counter as a regex.
    Regularize {
        ocn: PathBuf,
        #[arg(long)]
        counter: u64,
        #[command(flatten)]
        opts: AnalysisOpts,
    },
    /// Exhaustively compare two nets on all words up to a length.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value = "uniform")]
        mode: ModeArg,
        /// The fixed counter, or the cap for uniform mode.
        #[arg(long, default_value_t = 25)]
        counter: u64,
        #[arg(long, default_value_t = 100)]
        max_len: usize,
    },
    /// Generate a construction.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Bounded reachability closure of a lossy counter machine.
    LcmReach {
        lcm: PathBuf,
        #[arg(long)]
        location: String,
        /// Initial counter values, whitespace-separated (defaults to zeros).
        #[arg(long)]
        counters: Option<String>,
        #[arg(long, default_value_t = 5)]
        cap: u64,
    },
    /// Render a net as a Graphviz DOT graph.
    Dot {
        ocn: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Fixed,
    Uniform,
}

#[derive(Subcommand)]
enum GenCommand {
    /// One of the fixed separation gadgets A, B, C.
    Gadget {
        name: GadgetName,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Wrapper separating counter 0 from all positive counters.
    WrapForall {
        ocn: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Wrapper used by the uniform hardness argument.
    WrapUniformLb {
        ocn: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The machine-to-net reduction (complement of legal run encodings).
    LcmOcn {
        lcm: PathBuf,
        #[arg(long)]
        start: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Deterministic acceptor of bounded legal run encodings.
    FrDfa {
        lcm: PathBuf,
        #[arg(long)]
        start: String,
        #[arg(long)]
        bound: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The ill-formed-word checker alone.
    Flow {
        lcm: PathBuf,
        #[arg(long)]
        start: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rebase a machine so reachability starts from an all-zero configuration.
    ZeroFr {
        lcm: PathBuf,
        #[arg(long)]
        location: String,
        /// Initial counter values, whitespace-separated.
        #[arg(long)]
        counters: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

type CliResult = Result<i32, Failure>;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    std::process::exit(0);
                }
                _ => EXIT_USAGE,
            };
            eprint!("{e}");
            std::process::exit(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_NOINPUT, format!("{}: {e}", path.display())))
}

fn load_ocn(path: &PathBuf) -> Result<Ocn, Failure> {
    let text = read_file(path)?;
    Ocn::parse(&text).map_err(|e| fail(EXIT_DATA, format!("{}: {e}", path.display())))
}

fn load_lcm(path: &PathBuf) -> Result<Lcm, Failure> {
    let text = read_file(path)?;
    Lcm::parse(&text).map_err(|e| fail(EXIT_DATA, format!("{}: {e}", path.display())))
}

fn data_err(e: impl Display) -> Failure {
    fail(EXIT_DATA, e)
}

fn parse_counters(lcm: &Lcm, text: Option<&str>) -> Result<Vec<u64>, Failure> {
    match text {
        None => Ok(vec![0; lcm.counters().len()]),
        Some(text) => {
            let values: Result<Vec<u64>, _> =
                text.split_whitespace().map(str::parse::<u64>).collect();
            let values = values.map_err(|e| fail(EXIT_DATA, format!("bad counter value: {e}")))?;
            if values.len() != lcm.counters().len() {
                return Err(fail(
                    EXIT_DATA,
                    format!(
                        "{} counter values given, machine has {}",
                        values.len(),
                        lcm.counters().len()
                    ),
                ));
            }
            Ok(values)
        }
    }
}

/// Writes `.ocn` text (or DOT) to the output path or stdout.
fn emit_ocn(ocn: &Ocn, format: Format, output: Option<&PathBuf>) -> CliResult {
    let rendered = match format {
        Format::Dot => export_dot(ocn),
        Format::Json => {
            serde_json::to_string_pretty(&serde_json::json!({ "ocn": ocn.to_text() })).unwrap()
                + "\n"
        }
        Format::Text => ocn.to_text(),
    };
    write_out(&rendered, output)
}

fn write_out(rendered: &str, output: Option<&PathBuf>) -> CliResult {
    match output {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| fail(EXIT_NOINPUT, format!("{}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(EXIT_TRUE)
}

fn reject_dot(format: Format) -> Result<(), Failure> {
    if format == Format::Dot {
        return Err(fail(
            EXIT_USAGE,
            "`--format dot` applies only to net output",
        ));
    }
    Ok(())
}

fn dispatch(cli: Cli) -> CliResult {
    match cli.command {
        Command::Member { ocn, counter, word } => {
            reject_dot(cli.format)?;
            let net = load_ocn(&ocn)?;
            let word = Word::parse(&word);
            let accepted = net.accepts(&word, counter).map_err(data_err)?;
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "word": word.to_string(),
                        "counter": counter,
                        "accepted": accepted,
                    })
                ),
                _ => println!("{accepted}"),
            }
            Ok(if accepted { EXIT_TRUE } else { EXIT_FALSE })
        }
        Command::Mcr { ocn, opts } => {
            reject_dot(cli.format)?;
            let net = load_ocn(&ocn)?;
            let relation = mcr(&net, opts.horizon, opts.confirm_window).map_err(data_err)?;
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&relation).unwrap())
                }
                _ => {
                    println!("horizon: {}", relation.horizon);
                    let entries: Vec<String> = relation
                        .prefix
                        .iter()
                        .map(|e| e.map_or("-".to_owned(), |c| c.to_string()))
                        .collect();
                    println!("prefix: {}", entries.join(" "));
                    match relation.tail {
                        Some(t) => println!(
                            "tail: N={} k={} d={} (confirmed over {} shifts)",
                            t.start, t.period, t.delta, relation.confirmed_window
                        ),
                        None => println!("tail: none detected"),
                    }
                }
            }
            Ok(EXIT_TRUE)
        }
        Command::UniformDet { ocn, opts } => {
            reject_dot(cli.format)?;
            let net = load_ocn(&ocn)?;
            let verdict =
                decide_uniform_det(&net, opts.horizon, opts.confirm_window).map_err(data_err)?;
            if cli.format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
            } else {
                match &verdict {
                    Verdict::UniformDet {
                        docn,
                        verified_horizon,
                    } => {
                        println!(
                            "verdict: uniform-det (verified for lengths <= {verified_horizon})"
                        );
                        print!("{}", docn.to_text());
                    }
                    Verdict::NotUniformDet { witness } => {
                        println!("verdict: not-uniform-det");
                        println!(
                            "witness: length {} needs counter {}, longer length {} needs only {}",
                            witness.first.0, witness.first.1, witness.second.0, witness.second.1
                        );
                    }
                    Verdict::Inconclusive { reason } => {
                        println!("verdict: inconclusive");
                        println!("reason: {reason}");
                    }
                }
            }
            Ok(match verdict {
                Verdict::UniformDet { .. } => EXIT_TRUE,
                Verdict::NotUniformDet { .. } => EXIT_FALSE,
                Verdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
            })
        }
        Command::Synth { ocn, opts, output } => {
            let net = load_ocn(&ocn)?;
            let verdict =
                decide_uniform_det(&net, opts.horizon, opts.confirm_window).map_err(data_err)?;
            match verdict {
                Verdict::UniformDet { docn, .. } => emit_ocn(&docn, cli.format, output.as_ref()),
                Verdict::NotUniformDet { witness } => {
                    eprintln!(
                        "not uniformly determinizable: length {} needs counter {}, longer length {} needs only {}",
                        witness.first.0, witness.first.1, witness.second.0, witness.second.1
                    );
                    Ok(EXIT_FALSE)
                }
                Verdict::Inconclusive { reason } => {
                    eprintln!("inconclusive: {reason}");
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::Regularize { ocn, counter, opts } => {
            reject_dot(cli.format)?;
            let net = load_ocn(&ocn)?;
            let lang = unary_language_dfa(&net, counter, opts.horizon, opts.confirm_window)
                .map_err(data_err)?;
            if cli.format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&lang).unwrap());
            } else {
                println!("regex: {}", lang.regex);
                let comps: Vec<String> = lang
                    .set
                    .components
                    .iter()
                    .map(|(c, p)| format!("({c},{p})"))
                    .collect();
                println!("components: {}", comps.join(" "));
                if lang.exact {
                    println!("exact: yes");
                } else {
                    println!("exact: only up to length {}", lang.horizon);
                }
            }
            Ok(if lang.exact {
                EXIT_TRUE
            } else {
                EXIT_INCONCLUSIVE
            })
        }
        Command::Equiv {
            left,
            right,
            mode,
            counter,
            max_len,
        } => {
            reject_dot(cli.format)?;
            let a = load_ocn(&left)?;
            let b = load_ocn(&right)?;
            let mode = match mode {
                ModeArg::Fixed => EquivMode::Fixed(counter),
                ModeArg::Uniform => EquivMode::UniformUpTo(counter),
            };
            let report = bounded_equiv(&a, &b, mode, max_len).map_err(data_err)?;
            match &report {
                EquivReport::Agree { words_checked } => {
                    if cli.format == Format::Json {
                        println!(
                            "{}",
                            serde_json::json!({"agree": true, "words_checked": words_checked})
                        );
                    } else {
                        println!("agree ({words_checked} words checked)");
                    }
                    Ok(EXIT_TRUE)
                }
                EquivReport::Counterexample {
                    word,
                    counter,
                    left,
                    right,
                } => {
                    if cli.format == Format::Json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "agree": false,
                                "word": word.to_string(),
                                "counter": counter,
                                "left": left,
                                "right": right,
                            })
                        );
                    } else {
                        println!(
                            "counterexample: word `{word}` at counter {counter}: left={left}, right={right}"
                        );
                    }
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Gen(gen) => run_gen(gen, cli.format),
        Command::LcmReach {
            lcm,
            location,
            counters,
            cap,
        } => {
            reject_dot(cli.format)?;
            let machine = load_lcm(&lcm)?;
            let values = parse_counters(&machine, counters.as_deref())?;
            let init = LcmConfig::new(location, values);
            let reach = lcm_reach(&machine, &init, cap).map_err(data_err)?;
            if cli.format == Format::Json {
                let configs: Vec<serde_json::Value> = reach
                    .configs
                    .iter()
                    .map(|c| serde_json::json!({"location": c.location, "counters": c.counters}))
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "configs": configs,
                        "count": reach.configs.len(),
                        "saturated": reach.saturated,
                    })
                );
            } else {
                for config in &reach.configs {
                    println!("{config}");
                }
                println!("count: {}", reach.configs.len());
                println!("saturated: {}", reach.saturated);
            }
            Ok(EXIT_TRUE)
        }
        Command::Dot { ocn, output } => {
            let net = load_ocn(&ocn)?;
            write_out(&export_dot(&net), output.as_ref())
        }
    }
}

fn run_gen(gen: GenCommand, format: Format) -> CliResult {
    match gen {
        GenCommand::Gadget { name, output } => emit_ocn(&gadget(name), format, output.as_ref()),
        GenCommand::WrapForall { ocn, output } => {
            let net = load_ocn(&ocn)?;
            emit_ocn(
                &wrap_forall(&net).map_err(data_err)?,
                format,
                output.as_ref(),
            )
        }
        GenCommand::WrapUniformLb { ocn, output } => {
            let net = load_ocn(&ocn)?;
            emit_ocn(
                &wrap_uniform_lb(&net).map_err(data_err)?,
                format,
                output.as_ref(),
            )
        }
        GenCommand::LcmOcn { lcm, start, output } => {
            let machine = load_lcm(&lcm)?;
            emit_ocn(
                &lcm_to_ocn(&machine, &start).map_err(data_err)?,
                format,
                output.as_ref(),
            )
        }
        GenCommand::FrDfa {
            lcm,
            start,
            bound,
            output,
        } => {
            let machine = load_lcm(&lcm)?;
            emit_ocn(
                &finite_reach_dfa(&machine, &start, bound).map_err(data_err)?,
                format,
                output.as_ref(),
            )
        }
        GenCommand::Flow { lcm, start, output } => {
            let machine = load_lcm(&lcm)?;
            emit_ocn(
                &flow_violation_ocn(&machine, &start).map_err(data_err)?,
                format,
                output.as_ref(),
            )
        }
        GenCommand::ZeroFr {
            lcm,
            location,
            counters,
            output,
        } => {
            let machine = load_lcm(&lcm)?;
            let values = parse_counters(&machine, Some(&counters))?;
            let init = LcmConfig::new(location, values);
            let (extended, start) = zero_fr_reduction(&machine, &init).map_err(data_err)?;
            let rendered = match format {
                Format::Json => {
                    serde_json::to_string_pretty(
                        &serde_json::json!({"lcm": extended.to_text(), "start": start}),
                    )
                    .unwrap()
                        + "\n"
                }
                _ => format!("; start: {start}\n{}", extended.to_text()),
            };
            write_out(&rendered, output.as_ref())
        }
    }
}
