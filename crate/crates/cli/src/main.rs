//! Command-line front end: solve, verify and convert labeled-graph
//! instances. Exit codes: 0 for yes/valid, 1 for no/invalid, 2 for usage
//! errors (bad files, bad flags, guard violations).

use gfvs_cli::{format, gen};

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gfvs::encode::apply_forbidden_gadget;
use gfvs::solver::{solve, verify, Verification};
use gfvs::GfvsInstance;
use rand::SeedableRng;

use format::{CliError, CliResult, SourceKind};

#[derive(Parser)]
#[command(name = "gfvs", version, about = "Group feedback vertex set solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a labeled instance file
    Solve { file: PathBuf },
    /// Solve by exhaustive search (reference oracle, small instances only)
    Brute { file: PathBuf },
    /// Check a candidate solution against an instance
    Verify {
        file: PathBuf,
        /// Comma-separated vertex ids, e.g. --solution 0,2,5
        #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "")]
        solution: Vec<String>,
    },
    /// Solve an unlabeled multiway cut input
    SolveMwc { file: PathBuf },
    /// Encode a classical problem as a labeled instance (to stdout)
    Convert {
        #[arg(long, value_enum)]
        from: FromKind,
        file: PathBuf,
    },
    /// Generate and solve seeded random instances
    Bench {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        count: usize,
        /// Group descriptor as in instance files, e.g. "cyclic 3"
        #[arg(long, default_value = "bitvec 2")]
        group: String,
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = 60)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FromKind {
    Fvs,
    Oct,
    Mwc,
    Esfvs,
}

impl From<FromKind> for SourceKind {
    fn from(kind: FromKind) -> SourceKind {
        match kind {
            FromKind::Fvs => SourceKind::Fvs,
            FromKind::Oct => SourceKind::Oct,
            FromKind::Mwc => SourceKind::Mwc,
            FromKind::Esfvs => SourceKind::Esfvs,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok((code, output)) => {
            print!("{output}");
            std::process::exit(code);
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(2);
        }
    }
}

fn set_text(xs: &[usize]) -> String {
    let ids: Vec<String> = xs.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", ids.join(","))
}

fn load_instance(file: &PathBuf) -> CliResult<GfvsInstance> {
    let raw = format::parse_raw(&std::fs::read_to_string(file)?)?;
    let (inst, forbidden) = format::to_gfvs(&raw)?;
    if forbidden.is_empty() {
        Ok(inst)
    } else {
        // Protected vertices keep their ids; the gadget only appends.
        Ok(apply_forbidden_gadget(&inst, &forbidden)?)
    }
}

fn dispatch(command: Command) -> CliResult<(i32, String)> {
    match command {
        Command::Solve { file } => {
            let inst = load_instance(&file)?;
            Ok(report_solution(inst.k, solve(&inst)))
        }
        Command::Brute { file } => {
            let inst = load_instance(&file)?;
            Ok(report_solution(inst.k, gfvs::brute::brute_gfvs(&inst)?))
        }
        Command::Verify { file, solution } => {
            let inst = load_instance(&file)?;
            let xs = parse_solution(&solution, &inst)?;
            let oracle = inst.graph.oracle().clone();
            Ok(match verify(&inst, &xs) {
                Verification::Valid => {
                    (0, format!("VALID k={} |X|={}\n", inst.k, xs.len()))
                }
                Verification::OverBudget { size, budget } => {
                    (1, format!("INVALID |X|={size} exceeds k={budget}\n"))
                }
                Verification::NonNull(w) => (
                    1,
                    format!(
                        "INVALID\nwitness cycle={} value={}\n",
                        set_text(&w.cycle),
                        oracle.format_element(&w.value)
                    ),
                ),
            })
        }
        Command::SolveMwc { file } => {
            let raw = format::parse_raw(&std::fs::read_to_string(&file)?)?;
            let inst = format::to_mwc(&raw)?;
            Ok(report_solution(inst.k, gfvs::mwc::solve_mwc(&inst)))
        }
        Command::Convert { from, file } => {
            let raw = format::parse_raw(&std::fs::read_to_string(&file)?)?;
            let enc = format::convert_source(&raw, from.into())?;
            Ok((0, format::write_gfvs(&enc)))
        }
        Command::Bench { seed, count, group, n, m, k } => bench(seed, count, &group, n, m, k),
    }
}

fn report_solution(k: usize, answer: Option<Vec<usize>>) -> (i32, String) {
    match answer {
        Some(xs) => (0, format!("YES k={k} |X|={} X={}\n", xs.len(), set_text(&xs))),
        None => (1, "NO\n".to_string()),
    }
}

fn parse_solution(tokens: &[String], inst: &GfvsInstance) -> CliResult<Vec<usize>> {
    let mut xs = Vec::new();
    for tok in tokens.iter().filter(|t| !t.is_empty()) {
        let v: usize = tok
            .parse()
            .map_err(|_| CliError::Usage(format!("bad solution vertex {tok:?}")))?;
        if !inst.graph.is_alive(v) {
            return Err(CliError::Usage(format!("solution vertex {v} out of range")));
        }
        xs.push(v);
    }
    Ok(xs)
}

fn bench(seed: u64, count: usize, group: &str, n: usize, m: usize, k: usize) -> CliResult<(i32, String)> {
    let tokens: Vec<&str> = group.split_whitespace().collect();
    let spec = format::parse_group_spec(&tokens).map_err(CliError::Usage)?;
    let oracle = gfvs::GroupOracle::from_spec(spec);
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    let total = Instant::now();
    for i in 0..count {
        let inst = gen::random_instance(&mut r, &oracle, n, m, k);
        let edges = inst.graph.arc_count() / 2;
        let start = Instant::now();
        let answer = solve(&inst);
        let elapsed = start.elapsed();
        // Timing goes to stderr so stdout stays byte-stable across runs.
        eprintln!("instance {i}: {:.1} ms", elapsed.as_secs_f64() * 1e3);
        match answer {
            Some(xs) => {
                debug_assert!(verify(&inst, &xs).is_valid());
                out.push_str(&format!(
                    "instance {i}: n={n} m={edges} k={k} YES |X|={}\n",
                    xs.len()
                ));
            }
            None => out.push_str(&format!("instance {i}: n={n} m={edges} k={k} NO\n")),
        }
    }
    eprintln!("total: {:.1} ms", total.elapsed().as_secs_f64() * 1e3);
    Ok((0, out))
}
