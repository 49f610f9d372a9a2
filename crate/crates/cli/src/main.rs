//! `tritmul`: multiply, tabulate and cross-check characteristic-3 arithmetic.
//!
//! Exit status: 0 on success, 1 when a verification finds a mismatch, 2 on
//! usage, parse or I/O errors.

mod ops;
mod vectors;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tritmul::lfsr::{LfsrConfig, TABLE_DIGITS};
use tritmul::pipeline::build_schedule;
use tritmul::tower::{fp6_mul_15, fp6_mul_18, fp6_mul_schoolbook, fp6_mul_schoolbook_flat};
use tritmul::{Fp6Element, MulCounter};

use ops::{multiply, parse_value, random_value, Field, Method};

#[derive(Parser, Debug)]
#[command(name = "tritmul", version, about = "Characteristic-3 field multiplication toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply two elements given in canonical text form.
    Mul {
        #[arg(long, value_enum)]
        field: Field,
        /// schoolbook, lfsr:D, karatsuba (fp2), karatsuba18, new15, appendix, pipeline
        #[arg(long, default_value = "schoolbook")]
        method: Method,
        /// Digit size for `--method lfsr`.
        #[arg(long)]
        digit: Option<usize>,
        a: String,
        b: String,
    },
    /// Cycle counts and gate counts of the LFSR multiplier per digit size.
    Table {
        #[arg(long, value_delimiter = ',', default_values_t = TABLE_DIGITS)]
        digit: Vec<usize>,
    },
    /// Generate line-delimited test vectors.
    Vectors {
        /// Restrict to one field; otherwise the three fields alternate.
        #[arg(long, value_enum)]
        field: Option<Field>,
        #[arg(long, default_value_t = 30)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute a vector file with every method.
    Verify { file: PathBuf },
    /// Base multiplications counted per sextic-extension product.
    Counts {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Median wall-clock time per multiplication (informational).
    Bench {
        #[arg(long, value_enum)]
        field: Option<Field>,
        #[arg(long)]
        method: Option<Method>,
        #[arg(long)]
        digit: Option<usize>,
        /// Multiplications per repetition.
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn cmd_mul(field: Field, method: Method, digit: Option<usize>, a: &str, b: &str) -> Outcome {
    let method = method.with_digit(digit).map_err(usage)?;
    if !method.supports(field) {
        return Err(usage(format!("method {method} does not apply to {field}")));
    }
    let a = parse_value(field, "a", a).map_err(usage)?;
    let b = parse_value(field, "b", b).map_err(usage)?;
    println!("{}", multiply(method, &a, &b).map_err(usage)?);
    Ok(())
}

fn cmd_table(digits: &[usize]) -> Outcome {
    let configs = digits
        .iter()
        .map(|&d| LfsrConfig::with_table_method(d).map_err(|e| usage(format!("--digit: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    println!(
        "{:>3}  {:<8} {:>6} {:>9} {:>9} {:>12}",
        "D", "method", "cycles", "mul", "add", "gate*cycles"
    );
    for cfg in configs {
        let c = cfg.cost_report();
        println!(
            "{:>3}  {:<8} {:>6} {:>9} {:>9} {:>12}",
            c.digit,
            c.method,
            c.cycles,
            c.mul_gates,
            c.add_gates,
            c.gate_cycles()
        );
    }
    Ok(())
}

fn cmd_vectors(field: Option<Field>, count: usize, seed: u64, out: Option<PathBuf>) -> Outcome {
    if count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let text = vectors::to_lines(&vectors::generate(field, count, seed));
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_verify(file: &PathBuf) -> Outcome {
    let text = fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let report = vectors::verify(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    print!("{}", report.render());
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "{} of {} records failed",
            report.failures.len(),
            report.records
        )))
    }
}

fn cmd_counts(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = Fp6Element::random_from(&mut rng);
    let b = Fp6Element::random_from(&mut rng);
    let reference = fp6_mul_schoolbook_flat(&a, &b, &mut MulCounter::new());

    let mut rows: Vec<(&str, u64)> = Vec::new();
    let mut run = |name, f: &dyn Fn(&mut MulCounter) -> Fp6Element| -> Outcome {
        let mut ctr = MulCounter::new();
        if f(&mut ctr) != reference {
            return Err(Failure::Mismatch(format!("{name}: product differs from the reference")));
        }
        rows.push((name, ctr.base_muls()));
        Ok(())
    };
    run("schoolbook (flat)", &|c| fp6_mul_schoolbook_flat(&a, &b, c))?;
    run("schoolbook (nested)", &|c| fp6_mul_schoolbook(&a, &b, c))?;
    run("karatsuba18", &|c| fp6_mul_18(&a, &b, c))?;
    run("new15", &|c| fp6_mul_15(&a, &b, c).0)?;
    run("pipeline", &|c| build_schedule().execute_counted(&a, &b, c).result)?;

    for (name, n) in &rows {
        println!("{name:<20} {n:>3}");
    }
    let k18 = rows.iter().find(|r| r.0 == "karatsuba18").map_or(0, |r| r.1);
    let n15 = rows.iter().find(|r| r.0 == "new15").map_or(0, |r| r.1);
    let ratio = n15 as f64 / k18 as f64;
    println!(
        "ratio new15/karatsuba18 = {n15}/{k18} = {ratio:.3} (saving {:.1}%)",
        100.0 * (1.0 - ratio)
    );
    Ok(())
}

fn cmd_bench(field: Option<Field>, method: Option<Method>, digit: Option<usize>, count: usize, seed: u64) -> Outcome {
    const REPS: usize = 5;
    if count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let fields: Vec<Field> = field.map_or(Field::ALL.to_vec(), |f| vec![f]);
    println!("timings are wall-clock medians over {REPS} repetitions of {count} products (informational)");
    for f in fields {
        let methods = match method {
            Some(m) => {
                let m = m.with_digit(digit).map_err(usage)?;
                if !m.supports(f) {
                    return Err(usage(format!("method {m} does not apply to {f}")));
                }
                vec![m]
            }
            None => f.methods(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<_> = (0..count)
            .map(|_| (random_value(f, &mut rng), random_value(f, &mut rng)))
            .collect();
        for m in methods {
            let mut times: Vec<f64> = (0..REPS)
                .map(|_| {
                    let start = Instant::now();
                    for (a, b) in &pairs {
                        std::hint::black_box(multiply(m, a, b).expect("method checked"));
                    }
                    start.elapsed().as_secs_f64() * 1e6 / count as f64
                })
                .collect();
            times.sort_by(f64::total_cmp);
            println!(
                "{:<5} {:<12} {:>10.2} us/mul",
                f.to_string(),
                m.to_string(),
                times[REPS / 2]
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Mul {
            field,
            method,
            digit,
            a,
            b,
        } => cmd_mul(field, method, digit, &a, &b),
        Command::Table { digit } => cmd_table(&digit),
        Command::Vectors {
            field,
            count,
            seed,
            out,
        } => cmd_vectors(field, count, seed, out),
        Command::Verify { file } => cmd_verify(&file),
        Command::Counts { seed } => cmd_counts(seed),
        Command::Bench {
            field,
            method,
            digit,
            count,
            seed,
        } => cmd_bench(field, method, digit, count, seed),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
