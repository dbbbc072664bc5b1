//! Bridge to an external SAT solver speaking the competition I/O format.

use std::io::{Read, Write};
use std::os::unix::process::CommandExt;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use super::dpll::SolveOutcome;
use crate::encode::CnfFormula;
use crate::error::{Error, Result};

/// Environment variable naming the default external solver command.
pub const SOLVER_ENV: &str = "HYPERVIS_SAT_SOLVER";

/// A shell command template. `{cnf}` is replaced by the DIMACS file path;
/// without a placeholder the path is appended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalSolver {
    pub command: String,
    pub timeout: Option<Duration>,
}

impl ExternalSolver {
    pub fn new(command: impl Into<String>) -> Self {
        ExternalSolver {
            command: command.into(),
            timeout: None,
        }
    }

    pub fn with_timeout(mut self, t: Duration) -> Self {
        self.timeout = Some(t);
        self
    }

    pub fn from_env() -> Option<Self> {
        std::env::var(SOLVER_ENV)
            .ok()
            .filter(|c| !c.trim().is_empty())
            .map(ExternalSolver::new)
    }

    fn command_line(&self, path: &str) -> String {
        if self.command.contains("{cnf}") {
            self.command.replace("{cnf}", path)
        } else {
            format!("{} {}", self.command, path)
        }
    }

    pub fn solve(&self, formula: &CnfFormula) -> Result<SolveOutcome> {
        let mut file = tempfile::Builder::new()
            .prefix("hypervis-")
            .suffix(".cnf")
            .tempfile()?;
        file.write_all(formula.to_dimacs().as_bytes())?;
        file.flush()?;
        let path = file.path().to_string_lossy().into_owned();
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(self.command_line(&path))
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .process_group(0)
            .spawn()?;
        let mut stdout = child.stdout.take().expect("stdout is piped");
        let reader = std::thread::spawn(move || {
            let mut s = String::new();
            stdout.read_to_string(&mut s).map(|_| s)
        });
        let start = Instant::now();
        let status = loop {
            if let Some(st) = child.try_wait()? {
                break Some(st);
            }
            if self.timeout.is_some_and(|t| start.elapsed() >= t) {
                // the solver may have forked; take down the whole group
                let _ = Command::new("kill")
                    .args(["-KILL", "--", &format!("-{}", child.id())])
                    .status();
                let _ = child.kill();
                let _ = child.wait();
                break None;
            }
            std::thread::sleep(Duration::from_millis(5));
        };
        let output = reader
            .join()
            .map_err(|_| Error::Solver("output reader panicked".into()))??;
        let Some(status) = status else {
            return Ok(SolveOutcome::Unknown);
        };
        match status.code() {
            Some(0 | 10 | 20) => {}
            _ => return Ok(SolveOutcome::Unknown),
        }
        let outcome = parse_solver_output(formula, &output)?;
        match (status.code(), &outcome) {
            (Some(10), SolveOutcome::Unsat) | (Some(20), SolveOutcome::Sat(_)) => {
                Err(Error::Solver(format!(
                    "exit code {:?} contradicts the status line",
                    status.code()
                )))
            }
            _ => Ok(outcome),
        }
    }
}

/// Run `command` on `formula`.
pub fn external_solve(formula: &CnfFormula, command: &str) -> Result<SolveOutcome> {
    ExternalSolver::new(command).solve(formula)
}

/// Parse `s` / `v` lines and validate any model against `formula`.
/// Variables absent from the `v` lines default to false.
pub fn parse_solver_output(formula: &CnfFormula, text: &str) -> Result<SolveOutcome> {
    let mut status = None;
    let mut lits = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            if status.is_some() {
                return Err(Error::Solver("more than one status line".into()));
            }
            status = Some(match rest.trim() {
                "SATISFIABLE" => 10,
                "UNSATISFIABLE" => 20,
                "UNKNOWN" | "INDETERMINATE" => 0,
                other => return Err(Error::Solver(format!("unrecognised status {other:?}"))),
            });
        } else if let Some(rest) = line.strip_prefix('v') {
            for tok in rest.split_whitespace() {
                let l: i64 = tok
                    .parse()
                    .map_err(|_| Error::Solver(format!("bad literal {tok:?} in value line")))?;
                lits.push(l);
            }
        }
    }
    match status {
        None => Err(Error::Solver("no status line in solver output".into())),
        Some(0) => Ok(SolveOutcome::Unknown),
        Some(20) => Ok(SolveOutcome::Unsat),
        Some(_) => {
            let n = formula.num_vars() as u64;
            let mut model = vec![false; n as usize];
            for l in lits {
                if l == 0 {
                    continue;
                }
                if l.unsigned_abs() > n {
                    return Err(Error::Solver(format!("literal {l} exceeds {n} variables")));
                }
                model[l.unsigned_abs() as usize - 1] = l > 0;
            }
            formula.check_assignment(&model)?;
            Ok(SolveOutcome::Sat(model))
        }
    }
}
