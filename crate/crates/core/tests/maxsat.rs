use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;
use ssmc_core::maxsat::{
    exhaustive_minimum, parse_dimacs, planted_kcnf, solve_maxsat, unsat_count, Assignment, CnfFormula, SolveConfig,
};

/// Clause scan straight from the literal lists.
fn naive_unsat(f: &CnfFormula, bits: u64) -> usize {
    f.clauses()
        .iter()
        .filter(|c| {
            !c.iter().any(|&l| {
                let value = bits >> (l.unsigned_abs() - 1) & 1 == 1;
                if l > 0 { value } else { !value }
            })
        })
        .count()
}

#[test]
fn unsat_count_matches_rescan() {
    let mut rng = Pcg64Mcg::seed_from_u64(8);
    for _ in 0..10 {
        let n = rng.random_range(2..=16);
        let m = rng.random_range(1..60);
        let clauses: Vec<Vec<i32>> = (0..m)
            .map(|_| {
                (0..rng.random_range(1..=4))
                    .map(|_| {
                        let v = rng.random_range(1..=n) as i32;
                        if rng.random() { v } else { -v }
                    })
                    .collect()
            })
            .collect();
        let f = CnfFormula::new(n, clauses).unwrap();
        for _ in 0..1000 {
            let bits = rng.random_range(0..1u64 << n);
            assert_eq!(unsat_count(&f, &Assignment::from_bits(n, bits)), naive_unsat(&f, bits));
        }
    }
}

#[test]
fn planted_two_sat_at_twenty_matches_brute_force() {
    let mut found = 0;
    for i in 0..20u64 {
        let mut rng = Pcg64Mcg::seed_from_u64(100 + i);
        let (f, hidden) = planted_kcnf(20, 2, 60, &mut rng);
        assert_eq!(unsat_count(&f, &hidden), 0);
        let (best, _) = exhaustive_minimum(&f).unwrap();
        assert_eq!(best, 0);
        let out = solve_maxsat(&f, &SolveConfig { seed: i, ..SolveConfig::default() }).unwrap();
        found += usize::from(out.unsat == best);
    }
    assert!(found >= 16, "{found}/20");
}

#[test]
fn identical_unit_clauses() {
    let f = parse_dimacs("p cnf 3 4\n1 0\n1 0\n1 0\n1 0\n").unwrap();
    let out = solve_maxsat(&f, &SolveConfig { seed: 3, steps: Some(300), ..SolveConfig::default() }).unwrap();
    assert_eq!(out.unsat, 0);
    assert!(out.assignment.get(1));
}
