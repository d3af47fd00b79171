//! External SMT solver run as a child process, one script per call.

use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Environment variable overriding the solver command line.
pub const SOLVER_ENV: &str = "FOAUT_SOLVER";
pub const DEFAULT_SOLVER: &str = "z3 -in";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverVerdict {
    /// Satisfiable, with the raw text printed after `sat`.
    Sat(String),
    Unsat,
    Unknown(String),
    SolverError(String),
}

#[derive(Clone, Debug)]
pub struct Solver {
    command: Vec<String>,
    timeout: Duration,
}

impl Solver {
    pub fn new(command: &str, timeout: Duration) -> Result<Solver> {
        let command: Vec<String> = command.split_whitespace().map(str::to_string).collect();
        if command.is_empty() {
            return Err(Error::Solver("empty solver command".into()));
        }
        Ok(Solver { command, timeout })
    }

    /// `$FOAUT_SOLVER` if set, `z3 -in` otherwise.
    pub fn from_env(timeout: Duration) -> Result<Solver> {
        let cmd = std::env::var(SOLVER_ENV).unwrap_or_else(|_| DEFAULT_SOLVER.to_string());
        Solver::new(&cmd, timeout)
    }

    pub fn command(&self) -> String {
        self.command.join(" ")
    }

    pub fn timeout(&self) -> Duration {
        self.timeout
    }

    pub fn solve(&self, script: &str) -> Result<SolverVerdict> {
        let mut child = Command::new(&self.command[0])
            .args(&self.command[1..])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|e| Error::Solver(format!("cannot start `{}`: {e}", self.command())))?;
        let mut stdin = child.stdin.take().expect("piped");
        let script = script.to_string();
        let writer = thread::spawn(move || stdin.write_all(script.as_bytes()));
        let mut stdout = child.stdout.take().expect("piped");
        let mut stderr = child.stderr.take().expect("piped");
        let reader = thread::spawn(move || {
            let mut s = String::new();
            stdout.read_to_string(&mut s).map(|_| s)
        });
        let err_reader = thread::spawn(move || {
            let mut s = String::new();
            let _ = stderr.read_to_string(&mut s);
            s
        });
        let deadline = Instant::now() + self.timeout;
        loop {
            if child.try_wait()?.is_some() {
                break;
            }
            if Instant::now() >= deadline {
                let _ = child.kill();
                let _ = child.wait();
                return Ok(SolverVerdict::Unknown("timeout".into()));
            }
            thread::sleep(Duration::from_millis(2));
        }
        let _ = writer.join();
        let out = reader
            .join()
            .map_err(|_| Error::Solver("output reader panicked".into()))??;
        let err = err_reader.join().unwrap_or_default();
        Ok(parse_output(&out, &err))
    }
}

fn parse_output(out: &str, err: &str) -> SolverVerdict {
    let mut lines = out.lines().skip_while(|l| l.trim().is_empty());
    let first = lines.next().map(str::trim).unwrap_or("");
    let rest: String = lines.collect::<Vec<_>>().join("\n");
    match first {
        "sat" => SolverVerdict::Sat(rest),
        "unsat" => SolverVerdict::Unsat,
        "unknown" => SolverVerdict::Unknown("solver returned unknown".into()),
        _ => SolverVerdict::SolverError(format!("{out}{err}").trim().to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn output_classification() {
        assert_eq!(parse_output("sat\n(\n)\n", ""), SolverVerdict::Sat("(\n)".into()));
        assert_eq!(
            parse_output("unsat\n(error \"model is not available\")\n", ""),
            SolverVerdict::Unsat
        );
        assert!(matches!(parse_output("unknown\n", ""), SolverVerdict::Unknown(_)));
        assert!(matches!(parse_output("(error \"x\")\n", ""), SolverVerdict::SolverError(_)));
    }

    #[test]
    fn missing_binary_is_an_error() {
        let s = Solver::new("/nonexistent/solver", Duration::from_secs(1)).unwrap();
        assert!(matches!(s.solve("(check-sat)"), Err(Error::Solver(_))));
    }
}
