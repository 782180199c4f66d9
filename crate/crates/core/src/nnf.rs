//! Text format for circuits.
//!
//! ```text
//! nnf <gates> <edges> <vars>
//! L <signed literal> | T | F | A <c> <i1> … <ic> | O <c> <i1> … <ic> | D <x> <hi> <lo>
//! ```
//!
//! Gate `i` is on the `i`-th gate line. Children precede their parents and
//! the last gate is the output. A decision line counts two edges. Lines
//! starting with `c` are comments.

use std::fmt::Write as _;

use thiserror::Error;

use crate::circuit::{CircuitError, Gate, NnfCircuit};
use crate::cnf::{Literal, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NnfError {
    #[error("input is not valid UTF-8")]
    Encoding,
    #[error("line {line}: malformed header: {reason}")]
    Header { line: usize, reason: String },
    #[error("line {line}: malformed gate: {reason}")]
    Gate { line: usize, reason: String },
    #[error("line {line}: gate {gate} refers to {child}, which is not an earlier gate")]
    ForwardChild { line: usize, gate: usize, child: usize },
    #[error("line {line}: variable {var} exceeds the declared {declared}")]
    VariableOutOfRange { line: usize, var: Var, declared: Var },
    #[error("header declares {declared} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        declared: usize,
        found: usize,
    },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

pub fn read_nnf(input: &[u8]) -> Result<NnfCircuit, NnfError> {
    let text = std::str::from_utf8(input).map_err(|_| NnfError::Encoding)?;
    let mut header: Option<(usize, usize, Var)> = None;
    let mut gates: Vec<Gate> = Vec::new();
    let mut edges = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let Some((declared_gates, _, declared_vars)) = header else {
            header = Some(parse_header(&tokens, line)?);
            continue;
        };
        let gate_err = |reason: &str| NnfError::Gate {
            line,
            reason: reason.to_string(),
        };
        if gates.len() == declared_gates {
            return Err(NnfError::CountMismatch {
                what: "gates",
                declared: declared_gates,
                found: gates.len() + 1,
            });
        }
        let id = gates.len();
        let numbers = |ts: &[&str]| -> Result<Vec<usize>, NnfError> {
            ts.iter()
                .map(|t| t.parse::<usize>().map_err(|_| gate_err(&format!("`{t}` is not an index"))))
                .collect()
        };
        let child = |c: usize| {
            if c >= id {
                Err(NnfError::ForwardChild {
                    line,
                    gate: id,
                    child: c,
                })
            } else {
                Ok(c)
            }
        };
        let var_in_range = |v: Var| {
            if v == 0 || v > declared_vars {
                Err(NnfError::VariableOutOfRange {
                    line,
                    var: v,
                    declared: declared_vars,
                })
            } else {
                Ok(v)
            }
        };
        let gate = match tokens[0] {
            "T" | "F" if tokens.len() == 1 => {
                if tokens[0] == "T" {
                    Gate::True
                } else {
                    Gate::False
                }
            }
            "L" if tokens.len() == 2 => {
                let value: i64 = tokens[1]
                    .parse()
                    .map_err(|_| gate_err("literal is not an integer"))?;
                let lit = Literal::from_dimacs(value).map_err(|_| gate_err("literal 0"))?;
                var_in_range(lit.var())?;
                Gate::Lit(lit)
            }
            "A" | "O" if tokens.len() >= 2 => {
                let nums = numbers(&tokens[1..])?;
                if nums[0] != nums.len() - 1 {
                    return Err(gate_err("fanin does not match the number of children"));
                }
                let children = nums[1..].iter().map(|&c| child(c)).collect::<Result<Vec<_>, _>>()?;
                edges += children.len();
                if tokens[0] == "A" {
                    Gate::And(children)
                } else {
                    Gate::Or(children)
                }
            }
            "D" if tokens.len() == 4 => {
                let nums = numbers(&tokens[1..])?;
                let var = var_in_range(Var::try_from(nums[0]).map_err(|_| gate_err("variable too large"))?)?;
                edges += 2;
                Gate::Decision {
                    var,
                    hi: child(nums[1])?,
                    lo: child(nums[2])?,
                }
            }
            other => return Err(gate_err(&format!("unexpected `{other}` with {} operands", tokens.len() - 1))),
        };
        gates.push(gate);
    }
    let Some((declared_gates, declared_edges, declared_vars)) = header else {
        return Err(NnfError::Header {
            line: 1,
            reason: "no `nnf` header found".into(),
        });
    };
    if gates.len() != declared_gates {
        return Err(NnfError::CountMismatch {
            what: "gates",
            declared: declared_gates,
            found: gates.len(),
        });
    }
    if edges != declared_edges {
        return Err(NnfError::CountMismatch {
            what: "edges",
            declared: declared_edges,
            found: edges,
        });
    }
    Ok(NnfCircuit::new(gates, declared_vars)?)
}

fn parse_header(tokens: &[&str], line: usize) -> Result<(usize, usize, Var), NnfError> {
    let bad = |reason: &str| NnfError::Header {
        line,
        reason: reason.to_string(),
    };
    if tokens.len() != 4 || tokens[0] != "nnf" {
        return Err(bad("expected `nnf <gates> <edges> <vars>`"));
    }
    let g = tokens[1].parse().map_err(|_| bad("gate count is not a number"))?;
    let e = tokens[2].parse().map_err(|_| bad("edge count is not a number"))?;
    let v = tokens[3].parse().map_err(|_| bad("variable count is not a number"))?;
    Ok((g, e, v))
}

pub fn write_nnf(circuit: &NnfCircuit) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "nnf {} {} {}",
        circuit.gate_count(),
        circuit.edge_count(),
        circuit.num_vars()
    );
    for g in circuit.gates() {
        let _ = match g {
            Gate::Lit(l) => writeln!(out, "L {}", l.to_dimacs()),
            Gate::True => writeln!(out, "T"),
            Gate::False => writeln!(out, "F"),
            Gate::And(cs) | Gate::Or(cs) => {
                let tag = if matches!(g, Gate::And(_)) { 'A' } else { 'O' };
                let _ = write!(out, "{tag} {}", cs.len());
                for c in cs {
                    let _ = write!(out, " {c}");
                }
                writeln!(out)
            }
            Gate::Decision { var, hi, lo } => writeln!(out, "D {var} {hi} {lo}"),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::guarded_or_circuit;

    #[test]
    fn single_literal() {
        let c = read_nnf(b"nnf 1 0 1\nL 1").unwrap();
        assert_eq!(c.gates(), &[Gate::Lit(Literal::pos(1))]);
        assert_eq!(write_nnf(&c), "nnf 1 0 1\nL 1\n");
    }

    #[test]
    fn decision_line() {
        let text = "nnf 5 2 3\nL 1\nT\nF\nL -2\nD 3 3 2\n";
        let c = read_nnf(text.as_bytes()).unwrap();
        assert_eq!(c.gate(4), &Gate::Decision { var: 3, hi: 3, lo: 2 });
        assert_eq!(write_nnf(&c), text);
    }

    #[test]
    fn round_trip_guarded_or() {
        let c = guarded_or_circuit();
        let text = write_nnf(&c);
        assert_eq!(read_nnf(text.as_bytes()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(read_nnf(b"nnf 1 0\nL 1\n"), Err(NnfError::Header { .. })));
        assert!(matches!(
            read_nnf(b"nnf 2 1 1\nL 1\nA 1 1\n"),
            Err(NnfError::ForwardChild { gate: 1, child: 1, .. })
        ));
        assert!(matches!(
            read_nnf(b"nnf 2 1 1\nL 1\nA 1 7\n"),
            Err(NnfError::ForwardChild { child: 7, .. })
        ));
        assert!(matches!(
            read_nnf(b"nnf 1 0 1\nL 2\n"),
            Err(NnfError::VariableOutOfRange { var: 2, .. })
        ));
        assert!(matches!(
            read_nnf(b"nnf 2 0 1\nL 1\n"),
            Err(NnfError::CountMismatch { what: "gates", .. })
        ));
        assert!(matches!(
            read_nnf(b"nnf 2 5 1\nL 1\nO 1 0\n"),
            Err(NnfError::CountMismatch { what: "edges", .. })
        ));
        assert!(matches!(read_nnf(b"nnf 1 0 1\nA 2 0\n"), Err(NnfError::Gate { .. })));
        assert!(matches!(read_nnf(b"nnf 1 0 1\nX\n"), Err(NnfError::Gate { .. })));
        assert!(matches!(read_nnf(b""), Err(NnfError::Header { .. })));
    }
}
