//! DIMACS CNF reader and writer.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cnf::{Clause, CnfError, CnfFormula, Literal, Var};

/// Longest accepted input line, in bytes.
pub const MAX_LINE_BYTES: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: input is not valid UTF-8")]
    Encoding { line: usize },
    #[error("line {line}: line exceeds {MAX_LINE_BYTES} bytes")]
    LineTooLong { line: usize },
    #[error("line {line}: malformed header: {reason}")]
    Header { line: usize, reason: String },
    #[error("line {line}: missing `p cnf` header before clauses")]
    MissingHeader { line: usize },
    #[error("line {line}: cannot parse literal `{token}`")]
    BadLiteral { line: usize, token: String },
    #[error("line {line}: literal {literal} out of range (header declares {declared} variables)")]
    OutOfRange {
        line: usize,
        literal: i64,
        declared: Var,
    },
    #[error("line {line}: clause is not terminated by 0")]
    MissingTerminator { line: usize },
    #[error("line {line}: tautological clause on variable {var} (strict mode)")]
    Tautology { line: usize, var: Var },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimacsWarning {
    /// A clause containing `x` and `¬x` was dropped.
    TautologyDropped { line: usize, var: Var },
    /// The header clause count differs from the number of clauses read.
    ClauseCountMismatch { declared: usize, found: usize },
}

impl std::fmt::Display for DimacsWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimacsWarning::TautologyDropped { line, var } => {
                write!(f, "line {line}: dropped tautological clause on variable {var}")
            }
            DimacsWarning::ClauseCountMismatch { declared, found } => {
                write!(f, "header declares {declared} clauses, found {found}")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParsedCnf {
    pub formula: CnfFormula,
    pub warnings: Vec<DimacsWarning>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DimacsOptions {
    /// Reject tautological clauses instead of dropping them.
    pub strict: bool,
}

pub fn parse_dimacs(input: &[u8]) -> Result<ParsedCnf, DimacsError> {
    parse_dimacs_with(input, DimacsOptions::default())
}

pub fn parse_dimacs_with(input: &[u8], options: DimacsOptions) -> Result<ParsedCnf, DimacsError> {
    let mut header: Option<(Var, usize)> = None;
    let mut clauses = Vec::new();
    let mut warnings = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut clause_start = 0;
    let mut raw_count = 0usize;
    let mut last_line = 0;

    for (idx, raw) in input.split(|&b| b == b'\n').enumerate() {
        let line = idx + 1;
        last_line = line;
        if raw.len() > MAX_LINE_BYTES {
            return Err(DimacsError::LineTooLong { line });
        }
        let text = std::str::from_utf8(raw).map_err(|_| DimacsError::Encoding { line })?;
        let text = text.trim();
        if text.is_empty() || text.starts_with('c') {
            continue;
        }
        if text.starts_with('%') {
            // end-of-data marker used by some benchmark sets
            break;
        }
        if text.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::Header {
                    line,
                    reason: "duplicate header".into(),
                });
            }
            header = Some(parse_header(text, line)?);
            continue;
        }
        let Some((declared, _)) = header else {
            return Err(DimacsError::MissingHeader { line });
        };
        for token in text.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| DimacsError::BadLiteral {
                line,
                token: token.to_string(),
            })?;
            if value == 0 {
                raw_count += 1;
                match Clause::new(std::mem::take(&mut current)) {
                    Ok(c) => clauses.push(c),
                    Err(CnfError::Tautology(var)) if !options.strict => {
                        warnings.push(DimacsWarning::TautologyDropped {
                            line: clause_start.max(1),
                            var,
                        });
                    }
                    Err(CnfError::Tautology(var)) => {
                        return Err(DimacsError::Tautology {
                            line: clause_start.max(1),
                            var,
                        })
                    }
                    Err(_) => unreachable!("literals are validated on read"),
                }
                continue;
            }
            if value.unsigned_abs() > u64::from(declared) {
                return Err(DimacsError::OutOfRange {
                    line,
                    literal: value,
                    declared,
                });
            }
            if current.is_empty() {
                clause_start = line;
            }
            current.push(Literal::from_dimacs(value).expect("nonzero and in range"));
        }
    }

    if !current.is_empty() {
        return Err(DimacsError::MissingTerminator { line: last_line });
    }
    let Some((declared, declared_clauses)) = header else {
        return Err(DimacsError::Header {
            line: last_line.max(1),
            reason: "no `p cnf` header found".into(),
        });
    };
    if raw_count != declared_clauses {
        warnings.push(DimacsWarning::ClauseCountMismatch {
            declared: declared_clauses,
            found: raw_count,
        });
    }
    Ok(ParsedCnf {
        formula: CnfFormula::new(clauses).with_declared_vars(declared),
        warnings,
    })
}

fn parse_header(text: &str, line: usize) -> Result<(Var, usize), DimacsError> {
    let bad = |reason: &str| DimacsError::Header {
        line,
        reason: reason.to_string(),
    };
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
        return Err(bad("expected `p cnf <vars> <clauses>`"));
    }
    let vars: Var = parts[2].parse().map_err(|_| bad("variable count is not a number"))?;
    let clauses: usize = parts[3].parse().map_err(|_| bad("clause count is not a number"))?;
    Ok((vars, clauses))
}

/// Canonical DIMACS text: header, then one clause per line with literals in
/// variable order.
pub fn write_dimacs(formula: &CnfFormula) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", formula.declared_vars(), formula.len());
    for c in formula.clauses() {
        for l in c.literals() {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}
