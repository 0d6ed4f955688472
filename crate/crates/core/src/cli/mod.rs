//! Command-line front end: reads an instance, runs one command and prints a
//! JSON document tagged `mfwork-output v1`.
//!
//! Exit codes: 0 success, 1 mathematical negative (not valid, not
//! contractible, not perfect, a failed verification), 2 input error,
//! 3 resource bound exhausted (degree limit, syzygy or resolution bound,
//! no verdict within the step or depth bound).

mod commands;
mod format;

use std::io::Read;

use clap::Parser;
use serde_json::{json, Value};

pub use commands::{run, Command, Limits, Outcome, Status};
pub use format::{coherent_of, parse_instance, Base, Instance, Object, INSTANCE_TAG};

use crate::error::{Error, Result};

pub const OUTPUT_TAG: &str = "mfwork-output v1";

#[derive(Debug, Parser)]
#[command(name = "mfwork", version, about = "Matrix factorizations and singularity categories")]
pub struct Args {
    pub command: Command,
    /// Instance file, or `-` for stdin.
    pub file: String,
    /// Names of the objects the command acts on.
    pub names: Vec<String>,
    /// Bound on the sugar degree of S-pairs in Gröbner computations.
    #[arg(long, default_value_t = 40)]
    pub max_degree: u32,
    /// Highest syzygy tried by `stabilize`.
    #[arg(long, default_value_t = 8)]
    pub max_syzygy: usize,
    /// Length bound for `resolve` and `perfect`.
    #[arg(long, default_value_t = 12)]
    pub max_resolution: usize,
    /// Step bound for `verify-periodicity`.
    #[arg(long, default_value_t = 3)]
    pub steps: usize,
    /// Depth bound for `relative-perfect`.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Print a plain-text rendering instead of JSON.
    #[arg(long)]
    pub text: bool,
}

impl Args {
    pub fn limits(&self) -> Limits {
        Limits {
            max_degree: self.max_degree,
            max_syzygy: self.max_syzygy,
            max_resolution: self.max_resolution,
            steps: self.steps,
            depth: self.depth,
        }
    }
}

/// Parses `text`, runs `cmd` under the degree limit and folds errors into
/// the status.
pub fn execute(cmd: Command, text: &str, names: &[String], limits: &Limits) -> (Status, Value) {
    let outcome = crate::groebner::with_degree_limit(Some(limits.max_degree), || {
        let inst = parse_instance(text)?;
        run(cmd, &inst, names, limits)
    });
    let mut doc = json!({ "format": OUTPUT_TAG, "command": cmd.name() });
    let status = match outcome {
        Ok(o) => {
            doc["result"] = o.result;
            if let Some(inst) = o.emitted {
                doc["instance"] = Value::from(inst.to_text());
            }
            o.status
        }
        Err(e) => {
            doc["error"] = Value::from(e.to_string());
            Status::of_error(&e)
        }
    };
    doc["status"] = Value::from(status.name());
    doc["exit"] = Value::from(status.exit_code());
    (status, doc)
}

fn read_input(file: &str) -> Result<String> {
    let mut text = String::new();
    let read = if file == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| text = t)
    };
    read.map_err(|e| Error::InvalidInput(format!("cannot read {file}: {e}")))?;
    Ok(text)
}

/// Plain rendering: status line, result fields, then the emitted instance.
pub fn render_text(doc: &Value) -> String {
    let mut out = format!("{} {}: {}\n", doc["format"].as_str().unwrap_or(""), doc["command"].as_str().unwrap_or(""), doc["status"].as_str().unwrap_or(""));
    if let Some(e) = doc["error"].as_str() {
        out.push_str(&format!("error: {e}\n"));
    }
    if let Some(r) = doc["result"].as_object() {
        for (k, v) in r {
            out.push_str(&format!("{k}: {v}\n"));
        }
    }
    if let Some(i) = doc["instance"].as_str() {
        out.push_str(i);
    }
    out
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with(args: Args) -> i32 {
    let limits = args.limits();
    let (status, doc) = match read_input(&args.file) {
        Ok(text) => execute(args.command, &text, &args.names, &limits),
        Err(e) => {
            let doc = json!({
                "format": OUTPUT_TAG,
                "command": args.command.name(),
                "error": e.to_string(),
                "status": Status::InputError.name(),
                "exit": Status::InputError.exit_code(),
            });
            (Status::InputError, doc)
        }
    };
    let body = if args.text { render_text(&doc) } else { serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n" };
    // A closed pipe downstream is not an error of ours.
    let _ = std::io::Write::write_all(&mut std::io::stdout().lock(), body.as_bytes());
    if let Some(e) = doc["error"].as_str() {
        eprintln!("mfwork: {e}");
    }
    status.exit_code()
}
