use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Signed, 1-based variable index. Never zero.
pub type Literal = i32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrence {
    pub clause: u32,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("literal {literal} in clause {clause} is out of range for {num_vars} variables")]
    LiteralOutOfRange { clause: usize, literal: Literal, num_vars: usize },
}

/// A CNF formula with duplicate literals collapsed and an occurrence index
/// over its non-tautological clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
    tautology: Vec<bool>,
    occurrences: Vec<Vec<Occurrence>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, FormulaError> {
        let mut normalized = Vec::with_capacity(clauses.len());
        let mut tautology = Vec::with_capacity(clauses.len());
        let mut occurrences = vec![Vec::new(); num_vars];
        for (id, clause) in clauses.into_iter().enumerate() {
            if clause.is_empty() {
                return Err(FormulaError::EmptyClause(id));
            }
            let mut lits: Vec<Literal> = Vec::with_capacity(clause.len());
            for lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(FormulaError::LiteralOutOfRange { clause: id, literal: lit, num_vars });
                }
                if !lits.contains(&lit) {
                    lits.push(lit);
                }
            }
            let taut = lits.iter().any(|l| lits.contains(&-l));
            if !taut {
                for &lit in &lits {
                    occurrences[lit.unsigned_abs() as usize - 1].push(Occurrence { clause: id as u32, positive: lit > 0 });
                }
            }
            normalized.push(lits);
            tautology.push(taut);
        }
        Ok(Self { num_vars, clauses: normalized, tautology, occurrences })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn is_tautology(&self, clause: usize) -> bool {
        self.tautology[clause]
    }

    /// Occurrences of 1-based variable `var`, tautologies excluded.
    pub fn occurrences(&self, var: usize) -> &[Occurrence] {
        &self.occurrences[var - 1]
    }

    pub fn max_clause_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn clause_satisfied(&self, clause: usize, a: &Assignment) -> bool {
        self.tautology[clause] || self.clauses[clause].iter().any(|&l| a.literal_true(l))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Clauses of `f` with no true literal under `a`.
pub fn unsat_count(f: &CnfFormula, a: &Assignment) -> usize {
    (0..f.num_clauses()).filter(|&c| !f.clause_satisfied(c, a)).count()
}

/// Truth values for variables `1..=n`; bit `v-1` holds variable `v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Assignment {
    num_vars: usize,
    words: Vec<u64>,
}

impl Assignment {
    pub fn all_false(num_vars: usize) -> Self {
        Self { num_vars, words: vec![0; num_vars.div_ceil(64)] }
    }

    pub fn from_bits(num_vars: usize, bits: u64) -> Self {
        let mut a = Self::all_false(num_vars);
        for v in 0..num_vars.min(64) {
            if (bits >> v) & 1 == 1 {
                a.flip(v + 1);
            }
        }
        a
    }

    pub fn from_bools(values: &[bool]) -> Self {
        let mut a = Self::all_false(values.len());
        for (i, &b) in values.iter().enumerate() {
            if b {
                a.flip(i + 1);
            }
        }
        a
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn get(&self, var: usize) -> bool {
        let i = var - 1;
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn flip(&mut self, var: usize) {
        let i = var - 1;
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn literal_true(&self, lit: Literal) -> bool {
        self.get(lit.unsigned_abs() as usize) == (lit > 0)
    }

    /// Low 64 variables packed as an integer.
    pub fn low_bits(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    /// Signed literal per variable, as printed on a `v` line.
    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        (1..=self.num_vars).map(|v| if self.get(v) { v as Literal } else { -(v as Literal) })
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for lit in self.literals() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{lit}")?;
            first = false;
        }
        Ok(())
    }
}
