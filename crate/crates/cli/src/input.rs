//! Ideal files.
//!
//! ```text
//! # comment
//! ring x, y, z, w
//! option budget-cones = 500
//! x*y + x*w - y*w
//! x*z - w^2
//! ```
//!
//! One generator per line; a trailing `;` or `,` is ignored.

use std::path::{Path, PathBuf};

use nndtoric::groebner::{Budget, Ideal};
use nndtoric::poly::{parse_polynomial_at, Polynomial, Printer};
use nndtoric::Error;

use crate::CliError;

/// Settings an ideal file may carry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileOptions {
    pub budget_cones: Option<usize>,
    pub budget_steps: Option<u64>,
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealFile {
    pub variables: Vec<String>,
    pub generators: Vec<Polynomial>,
    pub options: FileOptions,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Column (1-based) of the byte offset `at` in `line`.
fn column_of(line: &str, at: usize) -> usize {
    line[..at].chars().count() + 1
}

fn parse_ring(line: &str, rest_at: usize, lineno: usize) -> Result<Vec<String>, Error> {
    let mut vars: Vec<String> = Vec::new();
    let mut offset = rest_at;
    for piece in line[rest_at..].split(',') {
        let name = piece.trim();
        let at = offset + piece.find(|c: char| !c.is_whitespace()).unwrap_or(0);
        if !is_identifier(name) {
            return Err(parse_error(
                lineno,
                column_of(line, at),
                format!("invalid variable name '{name}'"),
            ));
        }
        if vars.iter().any(|v| v == name) {
            return Err(parse_error(
                lineno,
                column_of(line, at),
                format!("duplicate variable '{name}'"),
            ));
        }
        vars.push(name.to_string());
        offset += piece.len() + 1;
    }
    Ok(vars)
}

fn parse_option(
    line: &str,
    rest_at: usize,
    lineno: usize,
    options: &mut FileOptions,
) -> Result<(), Error> {
    let rest = &line[rest_at..];
    let (key, value) = rest.split_once('=').ok_or_else(|| {
        parse_error(
            lineno,
            column_of(line, rest_at),
            "expected 'option key = value'",
        )
    })?;
    let value_at = rest_at + key.len() + 1;
    let key_at = rest_at + key.len() - key.trim_start().len();
    let (key, value) = (key.trim(), value.trim());
    let bad = |what: &str| {
        parse_error(
            lineno,
            column_of(line, value_at),
            format!("{what}: '{value}'"),
        )
    };
    match key {
        "budget-cones" => {
            let v: usize = value
                .parse()
                .map_err(|_| bad("expected a positive integer"))?;
            if v == 0 {
                return Err(bad("budget must be positive"));
            }
            options.budget_cones = Some(v);
        }
        "budget-steps" => {
            let v: u64 = value
                .parse()
                .map_err(|_| bad("expected a positive integer"))?;
            if v == 0 {
                return Err(bad("budget must be positive"));
            }
            options.budget_steps = Some(v);
        }
        "out" => options.out = Some(PathBuf::from(value)),
        _ => {
            return Err(parse_error(
                lineno,
                column_of(line, key_at),
                format!("unknown option '{key}'"),
            ))
        }
    }
    Ok(())
}

/// Parses the text of an ideal file.
pub fn parse_ideal_text(text: &str) -> Result<IdealFile, Error> {
    let mut variables: Option<Vec<String>> = None;
    let mut generators = Vec::new();
    let mut options = FileOptions::default();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim_end().trim_end_matches([';', ',']);
        let start = trimmed.len() - trimmed.trim_start().len();
        let content = trimmed.trim_start();
        if content.is_empty() {
            continue;
        }
        let word = content.split_whitespace().next().unwrap_or("");
        match word {
            "ring" => {
                if variables.is_some() {
                    return Err(parse_error(lineno, start + 1, "second ring declaration"));
                }
                variables = Some(parse_ring(trimmed, start + word.len(), lineno)?);
            }
            "option" => parse_option(trimmed, start + word.len(), lineno, &mut options)?,
            _ => {
                let vars = variables.as_ref().ok_or_else(|| {
                    parse_error(lineno, start + 1, "generator before the ring declaration")
                })?;
                let names: Vec<&str> = vars.iter().map(String::as_str).collect();
                let column = column_of(trimmed, start);
                generators.push(parse_polynomial_at(content, &names, lineno, column)?);
            }
        }
    }
    let variables = variables.ok_or_else(|| parse_error(1, 1, "missing 'ring' declaration"))?;
    if generators.is_empty() {
        return Err(parse_error(last_line, 1, "no generators"));
    }
    Ok(IdealFile {
        variables,
        generators,
        options,
    })
}

/// Reads and parses an ideal file.
pub fn parse_ideal_file(path: &Path) -> Result<IdealFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_ideal_text(&text)?)
}

impl IdealFile {
    pub fn printer(&self) -> Printer {
        Printer::new(&self.variables)
    }

    pub fn ideal(&self, budget: Budget) -> Result<Ideal, Error> {
        Ok(Ideal::new(self.variables.len(), self.generators.clone())?.with_budget(budget))
    }

    /// Text that parses back to the same file (options other than budgets included).
    pub fn to_text(&self) -> String {
        let printer = self.printer();
        let mut out = format!("ring {}\n", self.variables.join(", "));
        if let Some(c) = self.options.budget_cones {
            out.push_str(&format!("option budget-cones = {c}\n"));
        }
        if let Some(s) = self.options.budget_steps {
            out.push_str(&format!("option budget-steps = {s}\n"));
        }
        if let Some(p) = &self.options.out {
            out.push_str(&format!("option out = {}\n", p.display()));
        }
        for g in &self.generators {
            out.push_str(&printer.print(g));
            out.push('\n');
        }
        out
    }
}
