//! DIMACS CNF ingestion.

use super::{Clause, ClauseSet, Literal};

/// A parse failure, with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct DimacsError {
    pub line: usize,
    pub message: String,
}

impl DimacsError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        DimacsError { line, message: message.into() }
    }
}

/// Parse DIMACS CNF text.
///
/// Comment lines start with `c`; the `p cnf V C` header declares the
/// variable and clause counts; clauses are whitespace-separated nonzero
/// integers terminated by `0`, and may span lines. DIMACS variable `k`
/// (1-based) becomes internal variable `k - 1`; negative integers carry
/// negative polarity. The declared clause count must match exactly.
pub fn parse_dimacs(text: &str) -> Result<ClauseSet, DimacsError> {
    let mut var_count: Option<usize> = None;
    let mut declared_clauses = 0usize;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Clause = Vec::new();
    let mut open_clause_line = 0usize;
    let mut last_line = 0usize;

    for (ix, raw) in text.lines().enumerate() {
        let line_no = ix + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if var_count.is_some() {
                return Err(DimacsError::new(line_no, "duplicate header"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(DimacsError::new(line_no, "malformed header, expected `p cnf V C`"));
            }
            let v = fields[2]
                .parse::<usize>()
                .map_err(|_| DimacsError::new(line_no, "malformed variable count in header"))?;
            let c = fields[3]
                .parse::<usize>()
                .map_err(|_| DimacsError::new(line_no, "malformed clause count in header"))?;
            var_count = Some(v);
            declared_clauses = c;
            continue;
        }
        let v = match var_count {
            Some(v) => v,
            None => return Err(DimacsError::new(line_no, "clause before `p cnf` header")),
        };
        for tok in line.split_whitespace() {
            if tok == "-0" {
                return Err(DimacsError::new(line_no, "literal `-0` is not valid"));
            }
            let n = tok.parse::<i64>().map_err(|_| {
                DimacsError::new(line_no, format!("invalid literal token `{tok}`"))
            })?;
            if n == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                let var = n.unsigned_abs() as usize - 1;
                if var >= v {
                    return Err(DimacsError::new(
                        line_no,
                        format!("variable {} out of range (declared {v})", n.unsigned_abs()),
                    ));
                }
                if current.is_empty() {
                    open_clause_line = line_no;
                }
                current.push(if n > 0 { Literal::positive(var) } else { Literal::negative(var) });
            }
        }
    }

    let v = match var_count {
        Some(v) => v,
        None => return Err(DimacsError::new(last_line.max(1), "missing `p cnf` header")),
    };
    if !current.is_empty() {
        return Err(DimacsError::new(open_clause_line, "clause not terminated by 0"));
    }
    if clauses.len() != declared_clauses {
        return Err(DimacsError::new(
            last_line.max(1),
            format!("clause count mismatch: header declares {declared_clauses}, found {}", clauses.len()),
        ));
    }
    Ok(ClauseSet::new(v, clauses))
}
