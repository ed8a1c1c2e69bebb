use super::formula::{Assignment, CnfFormula, Literal};
use rand::seq::index::sample;
use rand::Rng;

fn random_clause<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<Literal> {
    sample(rng, n, k)
        .into_iter()
        .map(|v| {
            let var = (v + 1) as Literal;
            if rng.random() { var } else { -var }
        })
        .collect()
}

/// `m` clauses over `k` distinct variables each, uniform signs.
pub fn random_kcnf<R: Rng + ?Sized>(n: usize, k: usize, m: usize, rng: &mut R) -> CnfFormula {
    assert!(k >= 1 && k <= n, "clause width {k} needs 1..={n} variables");
    let clauses = (0..m).map(|_| random_clause(n, k, rng)).collect();
    CnfFormula::new(n, clauses).expect("generated literals are in range")
}

/// Like [`random_kcnf`] but every clause is satisfied by a hidden assignment,
/// which is returned alongside.
pub fn planted_kcnf<R: Rng + ?Sized>(n: usize, k: usize, m: usize, rng: &mut R) -> (CnfFormula, Assignment) {
    assert!(k >= 1 && k <= n, "clause width {k} needs 1..={n} variables");
    let hidden = Assignment::from_bools(&(0..n).map(|_| rng.random()).collect::<Vec<_>>());
    let mut clauses = Vec::with_capacity(m);
    while clauses.len() < m {
        let clause = random_clause(n, k, rng);
        if clause.iter().any(|&l| hidden.literal_true(l)) {
            clauses.push(clause);
        }
    }
    (CnfFormula::new(n, clauses).expect("generated literals are in range"), hidden)
}

/// Satisfiable 2-SAT chain: clauses on `(i, i+1)` and `(n, 1)` signed so a
/// hidden assignment satisfies each, plus one extra random clause per link
/// also satisfied by it.
pub fn chain_2sat<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (CnfFormula, Assignment) {
    assert!(n >= 2);
    let hidden = Assignment::from_bools(&(0..n).map(|_| rng.random()).collect::<Vec<_>>());
    let truthful = |v: usize| if hidden.get(v) { v as Literal } else { -(v as Literal) };
    let mut clauses = Vec::with_capacity(2 * n);
    for i in 1..=n {
        let j = i % n + 1;
        // one literal agrees with the hidden assignment, the other is random
        let other = if rng.random() { j as Literal } else { -(j as Literal) };
        clauses.push(vec![truthful(i), other]);
        let first = if rng.random() { i as Literal } else { -(i as Literal) };
        clauses.push(vec![first, truthful(j)]);
    }
    (CnfFormula::new(n, clauses).expect("generated literals are in range"), hidden)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxsat::unsat_count;
    use rand::SeedableRng;

    #[test]
    fn generators_respect_shape() {
        let mut rng = rand_pcg::Pcg64Mcg::seed_from_u64(1);
        let f = random_kcnf(20, 3, 85, &mut rng);
        assert_eq!(f.num_clauses(), 85);
        assert!(f.clauses().iter().all(|c| c.len() == 3));
        let (f, hidden) = planted_kcnf(20, 3, 85, &mut rng);
        assert_eq!(unsat_count(&f, &hidden), 0);
        let (f, hidden) = chain_2sat(20, &mut rng);
        assert_eq!(unsat_count(&f, &hidden), 0);
        assert_eq!(f.num_clauses(), 40);
    }
}
