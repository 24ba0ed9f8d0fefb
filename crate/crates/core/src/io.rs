//! Text format for operation tables, permutation parsing and built-in tables.
//!
//! ```text
//! # optional comment lines
//! m n
//! <n^m entries, 1-based, flat order with a_1 most significant>
//! ```

use crate::error::{Error, Result};
use crate::hypercube::{table_len, MultaryOperation, OperationIndex, Symbol};
use crate::transforms::Permutation;

fn is_comment(line: &str) -> bool {
    line.trim_start().starts_with('#')
}

/// Whitespace-separated tokens with their 1-based line and column.
fn tokens(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !is_comment(line))
        .flat_map(|(ln, line)| {
            let mut out = Vec::new();
            let mut start = None;
            for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
                match (c.is_whitespace(), start) {
                    (false, None) => start = Some(i),
                    (true, Some(s)) => {
                        out.push((ln + 1, line[..s].chars().count() + 1, &line[s..i]));
                        start = None;
                    }
                    _ => {}
                }
            }
            out
        })
}

fn number(line: usize, column: usize, token: &str, what: &str) -> Result<usize> {
    if !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::syntax(line, column, format!("expected {what}, found `{token}`")));
    }
    token
        .parse()
        .map_err(|_| Error::syntax(line, column, format!("{what} `{token}` is too large")))
}

pub fn parse_operation_file(text: &str) -> Result<MultaryOperation> {
    let mut toks = tokens(text);
    let header_line = text
        .lines()
        .position(|l| !is_comment(l) && !l.trim().is_empty())
        .map_or(1, |i| i + 1);
    let (arity, order) = match (toks.next(), toks.next()) {
        (Some((l1, c1, a)), Some((l2, c2, b))) if l1 == header_line && l2 == header_line => {
            (number(l1, c1, a, "an arity")?, number(l2, c2, b, "an order")?)
        }
        (Some((l, c, _)), _) => {
            return Err(Error::syntax(l, c, "header must be `m n` on one line"));
        }
        (None, _) => return Err(Error::syntax(1, 1, "missing `m n` header")),
    };
    let len = table_len(arity, order)?;
    let mut table = Vec::with_capacity(len);
    let mut found = 0usize;
    for (line, column, tok) in toks {
        if line == header_line {
            return Err(Error::syntax(line, column, "header must contain exactly `m n`"));
        }
        let v = number(line, column, tok, "a symbol")?;
        found += 1;
        if found > len {
            continue;
        }
        match Symbol::from_one_based(v).filter(|s| s.index() < order) {
            Some(s) => table.push(s),
            None => return Err(Error::SymbolOutOfRange { symbol: v, order }),
        }
    }
    if found != len {
        return Err(Error::LengthMismatch { expected: len, found });
    }
    MultaryOperation::from_table(arity, order, table)
}

/// Header, then `n^(m-1)` lines of `n` entries.
pub fn write_operation_file(op: &MultaryOperation) -> String {
    format!("{} {}\n{op}", op.arity(), op.order())
}

/// One-line images `2 3 1 4 5` or cycles `(2 3 5)(1 4)`; fixed points may
/// be left out of the cycle form, and `(235)` is read digit by digit when
/// the degree is below ten.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation> {
    let trimmed = text.trim();
    if !trimmed.starts_with('(') {
        let images = trimmed
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::syntax(1, text.find(t).unwrap_or(0) + 1, format!("bad image `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if images.len() != degree {
            return Err(Error::LengthMismatch {
                expected: degree,
                found: images.len(),
            });
        }
        return Permutation::from_one_based(&images);
    }
    let mut cycles = Vec::new();
    let mut rest = trimmed;
    while !rest.is_empty() {
        let offset = text.len() - rest.len();
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::syntax(1, offset + 1, "expected `(`"))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::syntax(1, offset + 1, "unclosed cycle"))?;
        let inner = &body[..close];
        let parts: Vec<&str> = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let compact = parts.len() == 1 && parts[0].len() > 1 && degree < 10;
        let cycle = if compact {
            parts[0]
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<Vec<_>>>()
        } else {
            parts.iter().map(|t| t.parse().ok()).collect()
        }
        .ok_or_else(|| Error::syntax(1, offset + 2, format!("bad cycle `({inner})`")))?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles)
}

const EXAMPLE_2_1_F: [usize; 27] = [
    1, 2, 3, 2, 1, 3, 3, 2, 1, //
    2, 1, 3, 1, 2, 3, 1, 3, 3, //
    3, 2, 1, 1, 3, 3, 1, 2, 1,
];

const EXAMPLE_2_1_G: [usize; 27] = [
    2, 1, 3, 2, 1, 3, 2, 2, 1, //
    2, 1, 3, 1, 2, 3, 1, 3, 3, //
    3, 2, 1, 1, 3, 3, 1, 2, 2,
];

const SECTION_3_STAR: [usize; 9] = [1, 2, 3, 1, 2, 3, 1, 1, 1];
const SECTION_3_CIRC: [usize; 9] = [1, 2, 1, 2, 2, 1, 1, 2, 2];

const EXAMPLE_5_2_STAR: [usize; 25] = [
    1, 5, 4, 3, 2, //
    3, 2, 1, 5, 4, //
    5, 4, 3, 2, 1, //
    2, 1, 5, 4, 3, //
    4, 3, 2, 1, 5,
];

const EXAMPLE_5_2_CIRC: [usize; 25] = [
    1, 2, 3, 4, 5, //
    1, 2, 3, 4, 5, //
    1, 2, 3, 4, 5, //
    1, 2, 3, 4, 5, //
    1, 2, 3, 4, 5,
];

const EXAMPLE_5_2_AST: [usize; 25] = [
    1, 4, 2, 5, 3, //
    4, 2, 5, 3, 1, //
    2, 5, 3, 1, 4, //
    5, 3, 1, 4, 2, //
    3, 1, 4, 2, 5,
];

const EXAMPLE_5_2_BULLET: [usize; 25] = [
    1, 3, 2, 5, 4, //
    4, 2, 5, 1, 3, //
    5, 4, 3, 2, 1, //
    3, 5, 1, 4, 2, //
    2, 1, 4, 3, 5,
];

const FIXED_TABLES: [(&str, usize, usize, &[usize]); 12] = [
    ("example-2.1-f", 3, 3, &EXAMPLE_2_1_F),
    ("example-2.1-g", 3, 3, &EXAMPLE_2_1_G),
    ("example-3.3-star", 2, 3, &SECTION_3_STAR),
    ("example-3.3-circ", 2, 3, &SECTION_3_CIRC),
    ("example-5.2-star", 2, 5, &EXAMPLE_5_2_STAR),
    ("example-5.2-circ", 2, 5, &EXAMPLE_5_2_CIRC),
    ("example-5.2-ast", 2, 5, &EXAMPLE_5_2_AST),
    ("example-5.2-bullet", 2, 5, &EXAMPLE_5_2_BULLET),
    ("z2", 2, 2, &[1, 2, 2, 1]),
    ("z3", 2, 3, &[1, 2, 3, 2, 3, 1, 3, 1, 2]),
    ("proj1", 2, 2, &[1, 1, 2, 2]),
    ("proj2", 2, 2, &[1, 2, 1, 2]),
];

/// Every fixture name, in a stable order.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = FIXED_TABLES.iter().map(|t| t.0.to_string()).collect();
    names.extend((1..=16).map(|k| format!("example-5.1-g{k}")));
    names
}

pub fn load_fixture(name: &str) -> Result<MultaryOperation> {
    if let Some((_, m, n, entries)) = FIXED_TABLES.iter().find(|t| t.0 == name) {
        return MultaryOperation::from_one_based(*m, *n, entries);
    }
    let k = name
        .strip_prefix("example-5.1-g")
        .and_then(|k| k.parse::<u128>().ok())
        .filter(|k| (1..=16).contains(k))
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    MultaryOperation::from_index(2, 2, OperationIndex(k - 1))
}
