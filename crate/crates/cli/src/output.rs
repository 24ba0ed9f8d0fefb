use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{self, Write as _};

use mquasi::{MultaryOperation, Symbol};
use serde_json::{json, Value};

/// `{1, 2}`.
pub fn set(s: &BTreeSet<Symbol>) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn tuple(t: &[Symbol]) -> String {
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn label(op: &MultaryOperation) -> Option<String> {
    op.canonical_index().ok().map(|i| i.label())
}

pub fn op_json(op: &MultaryOperation) -> Value {
    json!({
        "arity": op.arity(),
        "order": op.order(),
        "label": label(op),
        "entries": op.one_based_entries(),
    })
}

pub fn op_text(op: &MultaryOperation) -> String {
    let mut out = String::new();
    if let Some(l) = label(op) {
        let _ = writeln!(out, "# {l}");
    }
    let _ = write!(out, "{op}");
    out
}

pub fn emit(json_mode: bool, value: Value, human: impl FnOnce() -> String) {
    let text = if json_mode {
        serde_json::to_string_pretty(&value).expect("serializable report") + "\n"
    } else {
        human()
    };
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
