use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use kanren::batch::with_search_stack;
use kanren::scheme::{eval_det, parse_sexpr, print_sexpr, quineso};
use kanren::suites::{run_suite, Suite};

#[derive(Parser)]
#[command(name = "kanren", version, about = "Relational programming workloads")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time a benchmark suite; prints CSV rows and a median row.
    Bench {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        reps: u32,
    },
    /// Synthesize and print verified quines, one per line.
    Quines {
        #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Give up after this many search steps.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Evaluate a closed program and print its value.
    Eval { program: String },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: kanren::suites::UnknownSuite| e.to_string())
}

struct BenchResult {
    suite: Suite,
    wall_ms: f64,
    count: usize,
    verified: bool,
}

fn bench(suite: Suite, reps: u32) -> ExitCode {
    println!("suite,rep,wall_ms,count,verified");
    let mut rows = Vec::new();
    for rep in 1..=reps {
        let start = Instant::now();
        let outcome = with_search_stack(move || run_suite(suite));
        let row = BenchResult {
            suite,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
            count: outcome.count,
            verified: outcome.verified,
        };
        println!(
            "{},{},{:.3},{},{}",
            row.suite, rep, row.wall_ms, row.count, row.verified
        );
        rows.push(row);
    }
    let mut times: Vec<f64> = rows.iter().map(|r| r.wall_ms).collect();
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    let median = if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2.0
    };
    let verified = rows.iter().all(|r| r.verified);
    println!("{},median,{:.3},{},{}", suite, median, rows[0].count, verified);
    if verified {
        ExitCode::SUCCESS
    } else {
        eprintln!("{suite}: verification failed");
        ExitCode::from(1)
    }
}

fn quines(n: u32, budget: Option<u64>) -> ExitCode {
    let result = with_search_stack(move || quineso(n as usize, budget));
    for (q, ok) in result.found.iter().zip(&result.verified) {
        if !ok {
            eprintln!("synthesized program failed verification: {q}");
            return ExitCode::from(1);
        }
        println!("{}", print_sexpr(q));
    }
    if result.found.len() < n as usize {
        eprintln!(
            "search stopped after {} steps with {} of {} quines",
            result.steps,
            result.found.len(),
            n
        );
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

fn eval(program: &str) -> ExitCode {
    let expr = match parse_sexpr(program) {
        Ok(expr) => expr,
        Err(err) => {
            eprintln!("{err}");
            return ExitCode::from(2);
        }
    };
    match with_search_stack(move || eval_det(&expr)) {
        Some(value) => {
            println!("{value}");
            ExitCode::SUCCESS
        }
        None => {
            println!("stuck");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Bench { suite, reps } => bench(suite, reps),
        Command::Quines { n, budget } => quines(n, budget),
        Command::Eval { program } => eval(&program),
    }
}
