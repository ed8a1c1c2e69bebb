use super::formula::{Assignment, CnfFormula};

/// An assignment plus, per clause, how many of its literals are true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseState {
    assignment: Assignment,
    true_literals: Vec<u32>,
    unsat: usize,
}

impl ClauseState {
    pub fn new(f: &CnfFormula, assignment: Assignment) -> Self {
        let mut true_literals = vec![0u32; f.num_clauses()];
        for var in 1..=f.num_vars() {
            let value = assignment.get(var);
            for occ in f.occurrences(var) {
                if occ.positive == value {
                    true_literals[occ.clause as usize] += 1;
                }
            }
        }
        let unsat = true_literals
            .iter()
            .enumerate()
            .filter(|&(c, &k)| k == 0 && !f.is_tautology(c))
            .count();
        Self { assignment, true_literals, unsat }
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn unsat(&self) -> usize {
        self.unsat
    }

    /// Flips `var` and returns the change in the number of violated clauses.
    /// Cost is linear in the variable's occurrence list.
    pub fn flip(&mut self, f: &CnfFormula, var: usize) -> i64 {
        let becomes = !self.assignment.get(var);
        self.assignment.flip(var);
        let mut delta = 0i64;
        for occ in f.occurrences(var) {
            let count = &mut self.true_literals[occ.clause as usize];
            if occ.positive == becomes {
                if *count == 0 {
                    delta -= 1;
                }
                *count += 1;
            } else {
                *count -= 1;
                if *count == 0 {
                    delta += 1;
                }
            }
        }
        self.unsat = (self.unsat as i64 + delta) as usize;
        delta
    }
}

pub fn delta_unsat_on_flip(f: &CnfFormula, state: &mut ClauseState, var: usize) -> i64 {
    state.flip(f, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxsat::{random_kcnf, unsat_count};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn unused_variable_flip_is_free() {
        let f = CnfFormula::new(3, vec![vec![1, 2]]).unwrap();
        let mut st = ClauseState::new(&f, Assignment::all_false(3));
        assert_eq!(delta_unsat_on_flip(&f, &mut st, 3), 0);
    }

    #[test]
    fn single_unit_clause() {
        let f = CnfFormula::new(1, vec![vec![1]]).unwrap();
        let mut st = ClauseState::new(&f, Assignment::all_false(1));
        assert_eq!(st.unsat(), 1);
        assert_eq!(delta_unsat_on_flip(&f, &mut st, 1), -1);
        assert_eq!(st.unsat(), 0);
    }

    #[test]
    fn delta_matches_full_recount() {
        let mut rng = rand_pcg::Pcg64Mcg::seed_from_u64(2024);
        let mut flips = 0;
        while flips < 10_000 {
            let n = rng.random_range(2..=16usize);
            let k = rng.random_range(1..=3usize).min(n);
            let f = random_kcnf(n, k, rng.random_range(1..=5 * n), &mut rng);
            let bools: Vec<bool> = (0..n).map(|_| rng.random()).collect();
            let mut st = ClauseState::new(&f, Assignment::from_bools(&bools));
            for _ in 0..200 {
                let before = unsat_count(&f, st.assignment());
                let var = rng.random_range(1..=n);
                let delta = delta_unsat_on_flip(&f, &mut st, var);
                let after = unsat_count(&f, st.assignment());
                assert_eq!(delta, after as i64 - before as i64);
                assert_eq!(st.unsat(), after);
                flips += 1;
            }
        }
    }

    proptest! {
        #[test]
        fn cache_survives_any_flip_sequence(seed in any::<u64>(), flips in proptest::collection::vec(1usize..=12, 0..100)) {
            let mut rng = rand_pcg::Pcg64Mcg::seed_from_u64(seed);
            let mut clauses = random_kcnf(12, 3, 40, &mut rng).clauses().to_vec();
            clauses.push(vec![4, -4, 5]);
            let f = CnfFormula::new(12, clauses).unwrap();
            let mut st = ClauseState::new(&f, Assignment::from_bits(12, seed));
            for v in flips {
                st.flip(&f, v);
            }
            let fresh = ClauseState::new(&f, st.assignment().clone());
            prop_assert_eq!(st.unsat(), unsat_count(&f, st.assignment()));
            prop_assert_eq!(&st, &fresh);
        }
    }
}
