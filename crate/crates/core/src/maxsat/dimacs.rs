use super::formula::{CnfFormula, FormulaError, Literal};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("no `p cnf` problem line")]
    MissingProblemLine,
    #[error("second problem line")]
    DuplicateProblemLine,
    #[error("malformed problem line `{0}`")]
    BadProblemLine(String),
    #[error("weighted instances (`p wcnf`) are not supported")]
    Weighted,
    #[error("clause data before the problem line")]
    ClauseBeforeProblemLine,
    #[error("invalid token `{0}`")]
    InvalidToken(String),
    #[error("literal {literal} out of range for {num_vars} variables")]
    LiteralOutOfRange { literal: i64, num_vars: usize },
    #[error("empty clause")]
    EmptyClause,
    #[error("final clause is not terminated by 0")]
    UnterminatedClause,
    #[error("problem line declares {declared} clauses, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parses DIMACS CNF: `c` comments, one `p cnf <vars> <clauses>` line, then
/// zero-terminated clauses that may span or share lines. A line starting
/// with `%` ends the clause section.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, ParseErrorKind::DuplicateProblemLine));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["p", "wcnf", ..] => return Err(err(line_no, ParseErrorKind::Weighted)),
                ["p", "cnf", vars, count] => {
                    let parsed = vars.parse::<usize>().ok().zip(count.parse::<usize>().ok());
                    header = Some(parsed.ok_or_else(|| err(line_no, ParseErrorKind::BadProblemLine(line.into())))?);
                }
                _ => return Err(err(line_no, ParseErrorKind::BadProblemLine(line.into()))),
            }
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(err(line_no, ParseErrorKind::ClauseBeforeProblemLine));
        };
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| err(line_no, ParseErrorKind::InvalidToken(token.into())))?;
            if value == 0 {
                if current.is_empty() {
                    return Err(err(line_no, ParseErrorKind::EmptyClause));
                }
                clauses.push(std::mem::take(&mut current));
            } else if value.unsigned_abs() as usize > num_vars {
                return Err(err(line_no, ParseErrorKind::LiteralOutOfRange { literal: value, num_vars }));
            } else {
                current.push(value as Literal);
            }
        }
    }

    let (num_vars, declared) = header.ok_or_else(|| err(last_line.max(1), ParseErrorKind::MissingProblemLine))?;
    if !current.is_empty() {
        return Err(err(last_line, ParseErrorKind::UnterminatedClause));
    }
    if clauses.len() != declared {
        return Err(err(last_line, ParseErrorKind::ClauseCountMismatch { declared, found: clauses.len() }));
    }
    CnfFormula::new(num_vars, clauses).map_err(|e| match e {
        FormulaError::EmptyClause(_) => err(last_line, ParseErrorKind::EmptyClause),
        FormulaError::LiteralOutOfRange { literal, num_vars, .. } => {
            err(last_line, ParseErrorKind::LiteralOutOfRange { literal: literal as i64, num_vars })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxsat::{random_kcnf, unsat_count, Assignment};
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn kind(text: &str) -> ParseErrorKind {
        parse_dimacs(text).unwrap_err().kind
    }

    #[test]
    fn minimal_instance() {
        let f = parse_dimacs("p cnf 2 1\n1 -2 0\n").unwrap();
        assert_eq!(f.num_vars(), 2);
        assert_eq!(f.clauses(), &[vec![1, -2]]);
    }

    #[test]
    fn contradictory_pair() {
        let f = parse_dimacs("c comment\np cnf 1 2\n1 0\n-1 0\n").unwrap();
        assert_eq!(f.num_clauses(), 2);
        for bits in 0..2 {
            assert_eq!(unsat_count(&f, &Assignment::from_bits(1, bits)), 1);
        }
    }

    #[test]
    fn clauses_span_lines_and_share_them() {
        let f = parse_dimacs("p cnf 3 3\n1 2\n 3 0 -1 0\n\n2 0\n%\n0\n").unwrap();
        assert_eq!(f.clauses(), &[vec![1, 2, 3], vec![-1], vec![2]]);
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(kind("p cnf 2 2\n1 0\n"), ParseErrorKind::ClauseCountMismatch { declared: 2, found: 1 });
        assert_eq!(kind("c nothing\n"), ParseErrorKind::MissingProblemLine);
        assert_eq!(kind(""), ParseErrorKind::MissingProblemLine);
        assert_eq!(kind("p cnf 1 1\np cnf 1 1\n1 0\n"), ParseErrorKind::DuplicateProblemLine);
        assert_eq!(kind("p cnf 2 1\n1 3 0\n"), ParseErrorKind::LiteralOutOfRange { literal: 3, num_vars: 2 });
        assert_eq!(kind("p cnf 2 1\n1 2\n"), ParseErrorKind::UnterminatedClause);
        assert_eq!(kind("p wcnf 2 1\n1 1 0\n"), ParseErrorKind::Weighted);
        assert_eq!(kind("p cnf 2 1\n1 x 0\n"), ParseErrorKind::InvalidToken("x".into()));
        assert_eq!(kind("p cnf 2 1\n0\n"), ParseErrorKind::EmptyClause);
        assert_eq!(kind("1 0\np cnf 2 1\n"), ParseErrorKind::ClauseBeforeProblemLine);
        assert!(matches!(kind("p cnf two 1\n"), ParseErrorKind::BadProblemLine(_)));
        assert_eq!(parse_dimacs("p cnf 2 1\n\n1 3 0\n").unwrap_err().line, 3);
    }

    proptest! {
        #[test]
        fn serialize_round_trip(seed in any::<u64>(), n in 1usize..30, k in 1usize..4, m in 1usize..80) {
            let mut rng = rand_pcg::Pcg64Mcg::seed_from_u64(seed);
            let f = random_kcnf(n, k.min(n), m, &mut rng);
            prop_assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
        }

        #[test]
        fn clause_order_does_not_matter(seed in any::<u64>(), bits in any::<u64>()) {
            let mut rng = rand_pcg::Pcg64Mcg::seed_from_u64(seed);
            let f = random_kcnf(10, 3, 40, &mut rng);
            let mut reversed = f.clauses().to_vec();
            reversed.reverse();
            let g = crate::maxsat::CnfFormula::new(10, reversed).unwrap();
            let a = Assignment::from_bits(10, bits);
            prop_assert_eq!(unsat_count(&f, &a), unsat_count(&g, &a));
        }
    }
}
