//! Command-line front end. [`run`] returns the exit code and the text to print.
//!
//! Exit codes: 0 success, 1 invalid or failed, 2 usage or syntax error,
//! 3 outside the supported fragment.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand};

use crate::checker::{CheckError, Checker, Denotation, Env, Validity};
use crate::lang::{parse_expr, parse_formula, parse_program, Expr, LangError};
use crate::qframe::{format_state, parse_state, Frame, Ray, Subspace};
use crate::protocols::{run_target, DEFAULT_SEED, TARGETS};
use crate::regions::Region;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lqp", version, about = "Exact model checker for a dynamic logic of quantum programs")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula or program and print it in canonical form.
    Parse { expr: String },
    /// Decide validity over an n-qubit frame.
    Valid {
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        /// `var=@file` or `var=span:@f1,@f2,...`
        #[arg(short = 'b', long = "bind", value_name = "BINDING")]
        bind: Vec<String>,
        formula: String,
    },
    /// Decide whether a state satisfies a formula.
    Holds {
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        #[arg(long, value_name = "FILE")]
        state: String,
        #[arg(short = 'b', long = "bind", value_name = "BINDING")]
        bind: Vec<String>,
        formula: String,
    },
    /// Print the branch matrices of a program.
    Denote {
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        program: String,
    },
    /// Run a verification target.
    Verify {
        /// teleportation, qss, lemmas, axioms, frame, tables, coherence or all
        target: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// One line per instance instead of the summary.
        #[arg(long)]
        machine: bool,
        /// Include wall-clock times.
        #[arg(long)]
        timing: bool,
    },
    /// Print the region denoted by a formula.
    Eval {
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        #[arg(short = 'b', long = "bind", value_name = "BINDING")]
        bind: Vec<String>,
        formula: String,
    },
}

struct Failure(i32, String);

impl From<LangError> for Failure {
    fn from(e: LangError) -> Self {
        Failure(EXIT_USAGE, format!("error: {e}"))
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        let code = match &e {
            e if e.is_unsupported() => EXIT_UNSUPPORTED,
            CheckError::Disagreement(_) => EXIT_FAIL,
            CheckError::Region(_) => EXIT_UNSUPPORTED,
            _ => EXIT_USAGE,
        };
        Failure(code, format!("error: {e}"))
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, format!("error: {}", msg.into()))
}

fn read_state(path: &str, n: usize) -> Result<Ray, Failure> {
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    let (k, s) = parse_state(&text).map_err(|e| usage(format!("{path}: {e}")))?;
    if k != n {
        return Err(usage(format!("{path} is a {k}-qubit state, expected n={n}")));
    }
    Ok(s)
}

fn bind(env: &mut Env, spec: &str) -> Result<(), Failure> {
    let frame = env.frame;
    let (var, val) = spec.split_once('=').ok_or_else(|| usage(format!("binding `{spec}` is not var=value")))?;
    if !crate::lang::is_variable_name(var) {
        return Err(usage(format!("`{var}` is not a variable name")));
    }
    let files: Vec<&str> = match val.strip_prefix("span:") {
        Some(list) => list.split(',').collect(),
        None => vec![val],
    };
    let mut vecs = Vec::new();
    for f in files {
        let path = f.strip_prefix('@').ok_or_else(|| usage(format!("expected @file in `{spec}`")))?;
        vecs.push(read_state(path, frame.n)?.amplitudes().to_vec());
    }
    env.bind(var, Region::from_subspace(frame, Subspace::span(frame.dim(), &vecs)));
    Ok(())
}

fn frame(n: usize) -> Result<Frame, Failure> {
    if !(1..=8).contains(&n) {
        return Err(usage(format!("n={n} is outside 1..=8")));
    }
    Ok(Frame::new(n))
}

fn env_with(n: usize, binds: &[String]) -> Result<Env, Failure> {
    let mut env = Env::new(frame(n)?);
    for b in binds {
        bind(&mut env, b)?;
    }
    Ok(env)
}

fn execute(cmd: Command) -> Result<(i32, String), Failure> {
    match cmd {
        Command::Parse { expr } => {
            let text = match parse_expr(&expr)? {
                Expr::Formula(f) => format!("formula: {f}\n"),
                Expr::Program(p) => format!("program: {p}\n"),
            };
            Ok((EXIT_OK, text))
        }
        Command::Valid { n, bind, formula } => {
            let env = env_with(n, &bind)?;
            let ck = Checker::new(&env);
            let core = ck.desugar(&parse_formula(&formula)?)?;
            Ok(match ck.check_valid(&core)? {
                Validity::Valid => (EXIT_OK, "VALID\n".into()),
                Validity::Counterexample(w) => (EXIT_FAIL, format!("COUNTEREXAMPLE:\n{}", format_state(&w))),
            })
        }
        Command::Holds { n, state, bind, formula } => {
            let env = env_with(n, &bind)?;
            let s = read_state(&state, n)?;
            let ck = Checker::new(&env);
            let core = ck.desugar(&parse_formula(&formula)?)?;
            Ok(if ck.holds(&s, &core)? {
                (EXIT_OK, "TRUE\n".into())
            } else {
                (EXIT_FAIL, "FALSE\n".into())
            })
        }
        Command::Denote { n, program } => {
            let env = Env::new(frame(n)?);
            let ck = Checker::new(&env);
            let p = crate::lang::desugar_program(n, &parse_program(&program)?)?;
            let mut out = String::new();
            match ck.denote_program(&p)? {
                Denotation::LocalTrivial(qs) => {
                    let _ = writeln!(out, "trivial local action on {qs:?}");
                }
                Denotation::Action(act) => {
                    for (k, b) in act.branches.iter().enumerate() {
                        let _ = writeln!(out, "branch {}:", k + 1);
                        out.push_str(&b.matrix.to_string());
                    }
                }
            }
            Ok((EXIT_OK, out))
        }
        Command::Verify { target, seed, machine, timing } => {
            let names: Vec<&str> = if target == "all" {
                TARGETS.to_vec()
            } else if TARGETS.contains(&target.as_str()) {
                vec![target.as_str()]
            } else {
                return Err(usage(format!("unknown target `{target}`; expected one of {} or all", TARGETS.join(", "))));
            };
            let mut out = String::new();
            let mut ok = true;
            for name in names {
                let r = run_target(name, seed).expect("known target");
                ok &= r.pass();
                if machine {
                    out.push_str(&r.machine());
                } else if target == "all" {
                    let _ = write!(out, "{name}: {}", r.render(timing));
                } else {
                    out.push_str(&r.render(timing));
                }
            }
            Ok((if ok { EXIT_OK } else { EXIT_FAIL }, out))
        }
        Command::Eval { n, bind, formula } => {
            let env = env_with(n, &bind)?;
            let ck = Checker::new(&env);
            let core = ck.desugar(&parse_formula(&formula)?)?;
            Ok((EXIT_OK, ck.eval(&core)?.to_string()))
        }
    }
}

/// Runs the command line `args` (without the program name).
pub fn run(args: &[String]) -> (i32, String) {
    let argv = std::iter::once("lqp".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match execute(cli.cmd) {
        Ok(r) => r,
        Err(Failure(code, msg)) => (code, format!("{msg}\n")),
    }
}
