//! CNF formulas, a DIMACS reader and an exhaustive satisfiability check.

use std::fmt;

use rand::seq::index::sample;
use rand::Rng;
use thiserror::Error;

use super::GuardError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn new(var: usize, positive: bool) -> Self {
        Literal { var, positive }
    }

    /// From a DIMACS integer: `3` is `x3`, `-3` is `¬x3`.
    pub fn from_dimacs(x: i64) -> Self {
        Literal::new(x.unsigned_abs() as usize, x > 0)
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("a formula needs at least one variable")]
    NoVariables,
    #[error("clause {clause} is empty")]
    EmptyClause { clause: usize },
    #[error("clause {clause} has more than three literals")]
    ClauseTooLong { clause: usize },
    #[error("clause {clause} mentions variable {var} outside 1..={variables}")]
    VariableOutOfRange {
        clause: usize,
        var: usize,
        variables: usize,
    },
    #[error("clause {clause} mentions variable {var} twice")]
    RepeatedVariable { clause: usize, var: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header announces {expected} clauses but {found} were read")]
    ClauseCount { expected: usize, found: usize },
}

/// A CNF formula with clauses of at most three literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    variables: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(variables: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, CnfError> {
        if variables == 0 {
            return Err(CnfError::NoVariables);
        }
        for (j, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(CnfError::EmptyClause { clause: j });
            }
            if clause.len() > 3 {
                return Err(CnfError::ClauseTooLong { clause: j });
            }
            for (k, lit) in clause.iter().enumerate() {
                if lit.var == 0 || lit.var > variables {
                    return Err(CnfError::VariableOutOfRange {
                        clause: j,
                        var: lit.var,
                        variables,
                    });
                }
                if clause[..k].iter().any(|o| o.var == lit.var) {
                    return Err(CnfError::RepeatedVariable {
                        clause: j,
                        var: lit.var,
                    });
                }
            }
        }
        Ok(CnfFormula { variables, clauses })
    }

    /// Shorthand over DIMACS integers.
    pub fn from_ints(variables: usize, clauses: &[&[i64]]) -> Result<Self, CnfError> {
        Self::new(
            variables,
            clauses
                .iter()
                .map(|c| c.iter().map(|&x| Literal::from_dimacs(x)).collect())
                .collect(),
        )
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|lit| assignment[lit.var - 1] == lit.positive))
    }

    /// A random formula with `clauses` clauses of `min(3, variables)` distinct
    /// variables each, with independent uniform polarities.
    pub fn random(rng: &mut impl Rng, variables: usize, clauses: usize) -> Self {
        let width = variables.min(3);
        let clauses = (0..clauses)
            .map(|_| {
                let mut vars: Vec<usize> = sample(rng, variables, width)
                    .into_iter()
                    .map(|v| v + 1)
                    .collect();
                vars.sort_unstable();
                vars.into_iter()
                    .map(|v| Literal::new(v, rng.gen()))
                    .collect()
            })
            .collect();
        CnfFormula::new(variables, clauses).expect("random clauses are well formed")
    }

    pub fn to_dimacs(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.variables, self.clauses.len())?;
        for clause in &self.clauses {
            for lit in clause {
                write!(f, "{} ", lit.to_dimacs())?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

/// Reads DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>` header,
/// then signed integers where `0` closes a clause.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match toks.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            let Some(h) = parsed else {
                return Err(CnfError::Syntax {
                    line,
                    message: format!("bad header `{trimmed}`"),
                });
            };
            if header.replace(h).is_some() {
                return Err(CnfError::Syntax {
                    line,
                    message: "duplicate header".into(),
                });
            }
            continue;
        }
        if header.is_none() {
            return Err(CnfError::Syntax {
                line,
                message: "clause before the `p cnf` header".into(),
            });
        }
        for tok in trimmed.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| CnfError::Syntax {
                line,
                message: format!("expected an integer, got `{tok}`"),
            })?;
            if x == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(Literal::from_dimacs(x));
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let Some((variables, expected)) = header else {
        return Err(CnfError::Syntax {
            line: 0,
            message: "missing `p cnf` header".into(),
        });
    };
    if clauses.len() != expected {
        return Err(CnfError::ClauseCount {
            expected,
            found: clauses.len(),
        });
    }
    CnfFormula::new(variables, clauses)
}

pub const DEFAULT_MAX_SAT_VARIABLES: usize = 20;

/// The first satisfying assignment in lexicographic order (`x1` most
/// significant, false before true), or `None` if unsatisfiable.
pub fn sat_brute(phi: &CnfFormula) -> Result<Option<Vec<bool>>, GuardError> {
    sat_brute_guarded(phi, DEFAULT_MAX_SAT_VARIABLES)
}

pub fn sat_brute_guarded(
    phi: &CnfFormula,
    max_variables: usize,
) -> Result<Option<Vec<bool>>, GuardError> {
    let l = phi.variables();
    if l > max_variables {
        return Err(GuardError {
            what: "variables",
            limit: max_variables,
            actual: l,
        });
    }
    let mut assignment = vec![false; l];
    for mask in 0u64..(1u64 << l) {
        for (i, value) in assignment.iter_mut().enumerate() {
            *value = mask >> (l - 1 - i) & 1 == 1;
        }
        if phi.is_satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sat_examples() {
        let one = CnfFormula::from_ints(1, &[&[1]]).unwrap();
        assert_eq!(sat_brute(&one).unwrap(), Some(vec![true]));
        let contra = CnfFormula::from_ints(1, &[&[1], &[-1]]).unwrap();
        assert_eq!(sat_brute(&contra).unwrap(), None);
        let phi = CnfFormula::from_ints(3, &[&[1, 2, -3]]).unwrap();
        assert_eq!(sat_brute(&phi).unwrap(), Some(vec![false, false, false]));
        let phi = CnfFormula::from_ints(2, &[&[1], &[2]]).unwrap();
        assert_eq!(sat_brute(&phi).unwrap(), Some(vec![true, true]));
    }

    #[test]
    fn lexicographic_order_puts_x1_first() {
        // x3 alone is satisfied by 001 before 100
        let phi = CnfFormula::from_ints(3, &[&[3]]).unwrap();
        assert_eq!(sat_brute(&phi).unwrap(), Some(vec![false, false, true]));
    }

    #[test]
    fn guard_refuses_large_formulas() {
        let phi = CnfFormula::from_ints(21, &[&[1]]).unwrap();
        assert!(sat_brute(&phi).is_err());
    }

    #[test]
    fn invalid_formulas_are_rejected() {
        assert_eq!(CnfFormula::from_ints(0, &[]), Err(CnfError::NoVariables));
        assert!(matches!(
            CnfFormula::from_ints(2, &[&[1, -1]]),
            Err(CnfError::RepeatedVariable { .. })
        ));
        assert!(matches!(
            CnfFormula::from_ints(2, &[&[3]]),
            Err(CnfError::VariableOutOfRange { .. })
        ));
        assert!(matches!(
            CnfFormula::from_ints(2, &[&[]]),
            Err(CnfError::EmptyClause { .. })
        ));
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c demo\np cnf 3 2\n1 -2\n 3 0\n-1 0\n";
        let phi = parse_dimacs(text).unwrap();
        assert_eq!(phi.clauses().len(), 2);
        assert_eq!(phi.clauses()[0].len(), 3);
        assert_eq!(parse_dimacs(&phi.to_dimacs()).unwrap(), phi);
        assert!(matches!(
            parse_dimacs("p cnf 2 2\n1 0\n"),
            Err(CnfError::ClauseCount {
                expected: 2,
                found: 1
            })
        ));
        assert!(parse_dimacs("1 2 0\n").is_err());
    }

    #[test]
    fn random_formulas_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for l in 1..=4 {
            let phi = CnfFormula::random(&mut rng, l, 3);
            assert!(phi.clauses().iter().all(|c| c.len() == l.min(3)));
        }
    }
}
