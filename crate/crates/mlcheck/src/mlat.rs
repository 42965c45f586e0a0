//! The `mlat 1` text format.
//!
//! ```text
//! mlat 1
//! elements 3
//! names 0 m 1
//! order
//! 0 1
//! 1 2
//! mul
//! 0 0 0
//! 0 0 1
//! 0 1 2
//! ```
//!
//! `#` starts a comment. `order` lists generating pairs `i j` (`i <= j`);
//! `mul` is followed by one row of indices per element.

use std::fmt::Write as _;
use std::path::Path;

use mlcheck_core::{Lattice, LatticeSpec, ValidationReport};

#[derive(Debug, thiserror::Error)]
pub enum MlatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid lattice: {0}")]
    Invalid(ValidationReport),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn syntax(line: usize, message: impl Into<String>) -> MlatError {
    MlatError::Syntax {
        line,
        message: message.into(),
    }
}

#[derive(PartialEq)]
enum Section {
    Header,
    Order,
    Mul,
}

fn parse_index(tok: &str, line: usize) -> Result<usize, MlatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected an element index, found `{tok}`")))
}

/// Parses the text without validating the lattice axioms.
pub fn parse_spec(text: &str) -> Result<LatticeSpec, MlatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, "mlat 1")) => {}
        Some((n, other)) => return Err(syntax(n, format!("expected `mlat 1`, found `{other}`"))),
        None => return Err(syntax(1, "empty file")),
    }
    let size = match lines.next() {
        Some((n, l)) => match l.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["elements", k] => parse_index(k, n)?,
            _ => return Err(syntax(n, "expected `elements <n>`")),
        },
        None => return Err(syntax(2, "missing `elements` line")),
    };

    let mut names = None;
    let mut order = Vec::new();
    let mut mul: Vec<Vec<usize>> = Vec::new();
    let mut section = Section::Header;
    let mut seen_order = false;
    let mut seen_mul = false;
    for (n, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "names" if section == Section::Header => {
                if toks.len() != size + 1 {
                    return Err(syntax(n, format!("expected {size} names, found {}", toks.len() - 1)));
                }
                names = Some(toks[1..].iter().map(|s| s.to_string()).collect());
            }
            "order" if toks.len() == 1 && !seen_order => {
                section = Section::Order;
                seen_order = true;
            }
            "mul" if toks.len() == 1 && !seen_mul => {
                section = Section::Mul;
                seen_mul = true;
            }
            _ => match section {
                Section::Header => return Err(syntax(n, format!("unexpected `{l}`"))),
                Section::Order => match toks.as_slice() {
                    [i, j] => order.push((parse_index(i, n)?, parse_index(j, n)?)),
                    _ => return Err(syntax(n, "expected an order pair `i j`")),
                },
                Section::Mul => {
                    if toks.len() != size {
                        return Err(syntax(n, format!("expected {size} entries, found {}", toks.len())));
                    }
                    let row = toks.iter().map(|t| parse_index(t, n)).collect::<Result<_, _>>()?;
                    mul.push(row);
                }
            },
        }
    }
    if !seen_mul {
        return Err(syntax(0, "missing `mul` section"));
    }
    if mul.len() != size {
        return Err(syntax(0, format!("expected {size} rows of `mul`, found {}", mul.len())));
    }
    Ok(LatticeSpec {
        size,
        order,
        mul,
        names,
    })
}

pub fn parse(text: &str, cap: usize) -> Result<Lattice, MlatError> {
    let spec = parse_spec(text)?;
    Lattice::validate_with_cap(&spec, cap).map_err(MlatError::Invalid)
}

pub fn read(path: &Path, cap: usize) -> Result<Lattice, MlatError> {
    let text = std::fs::read_to_string(path).map_err(|source| MlatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text, cap)
}

/// Writes the covering relation as the order section.
pub fn write(l: &Lattice) -> String {
    let n = l.size();
    let mut out = String::new();
    writeln!(out, "mlat 1").unwrap();
    writeln!(out, "elements {n}").unwrap();
    if let Some(names) = l.names() {
        writeln!(out, "names {}", names.join(" ")).unwrap();
    }
    writeln!(out, "order").unwrap();
    for a in l.elements() {
        for b in l.upper_covers(a) {
            writeln!(out, "{a} {b}").unwrap();
        }
    }
    writeln!(out, "mul").unwrap();
    for a in l.elements() {
        let row: Vec<String> = l.elements().map(|b| l.mul(a, b).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn write_file(l: &Lattice, path: &Path) -> Result<(), MlatError> {
    std::fs::write(path, write(l)).map_err(|source| MlatError::Io {
        path: path.display().to_string(),
        source,
    })
}
