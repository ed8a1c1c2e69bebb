use super::formula::CnfFormula;

pub const MAX_EXHAUSTIVE_VARS: usize = 26;

/// Minimum number of violated clauses over all `2^n` assignments, with a
/// minimizing assignment packed as bits. Each clause is reduced to a pair of
/// literal masks, so this shares no code with the incremental cache.
pub fn exhaustive_minimum(f: &CnfFormula) -> Option<(usize, u64)> {
    let n = f.num_vars();
    if n > MAX_EXHAUSTIVE_VARS {
        return None;
    }
    let masks: Vec<(u64, u64)> = (0..f.num_clauses())
        .filter(|&c| !f.is_tautology(c))
        .map(|c| {
            f.clauses()[c].iter().fold((0u64, 0u64), |(pos, neg), &lit| {
                let bit = 1u64 << (lit.unsigned_abs() - 1);
                if lit > 0 { (pos | bit, neg) } else { (pos, neg | bit) }
            })
        })
        .collect();
    let mut best = (usize::MAX, 0u64);
    for bits in 0..(1u64 << n) {
        let mut unsat = 0;
        for &(pos, neg) in &masks {
            if bits & pos == 0 && !bits & neg == 0 {
                unsat += 1;
                if unsat >= best.0 {
                    break;
                }
            }
        }
        if unsat < best.0 {
            best = (unsat, bits);
            if unsat == 0 {
                break;
            }
        }
    }
    Some(best)
}
