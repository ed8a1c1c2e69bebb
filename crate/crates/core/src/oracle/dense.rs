use super::block::Example;
use super::OracleError;
use nalgebra::DMatrix;

/// Largest `n` for which a full `2^n x 2^n` matrix is built.
pub const MAX_DENSE_QUBITS: u32 = 12;

/// Full Hamiltonian on `2^n` basis states, for cross-checking the block
/// reduction at small `n`.
pub fn dense_hamiltonian(n: u32, s: f64, example: Example, b_const: f64, c_const: f64) -> Result<DMatrix<f64>, OracleError> {
    if n > MAX_DENSE_QUBITS {
        return Err(OracleError::TooLarge(n));
    }
    if n == 0 {
        return Err(OracleError::InvalidParameter("n must be positive".into()));
    }
    let dim = 1usize << n;
    let nf = n as f64;
    let (b, c) = example.coefficients(s, b_const, c_const);
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for x in 0..dim {
        h[(x, x)] = 1.0 + b * x.count_ones() as f64 / nf;
        for k in 0..n {
            h[(x, x ^ (1 << k))] = -1.0 / nf;
        }
    }
    h[(0, 0)] -= c;
    Ok(h)
}

/// Ascending eigenvalues, first `count` of them.
pub fn dense_lowest_eigenvalues(h: &DMatrix<f64>, count: usize) -> Vec<f64> {
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev.truncate(count);
    ev
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::b_constant;
    use crate::oracle::{build_symmetric_block, ground_pair};
    use nalgebra::SymmetricEigen;

    #[test]
    fn refuses_large_n() {
        assert_eq!(dense_hamiltonian(13, 0.5, Example::Ramp, 1.0, 0.0).unwrap_err(), OracleError::TooLarge(13));
    }

    #[test]
    fn laplacian_part_and_symmetry() {
        let h = dense_hamiltonian(5, 0.0, Example::Ramp, 1.0, 0.0).unwrap();
        for row in h.row_iter() {
            assert!(row.sum().abs() < 1e-14);
        }
        let h = dense_hamiltonian(5, 0.7, Example::Spike, b_constant(5), 2.0).unwrap();
        assert_eq!(h, h.transpose());
        assert!(h.iter().enumerate().all(|(i, &x)| i % 33 == 0 || x <= 0.0));
    }

    #[test]
    fn ground_vector_depends_on_weight_only() {
        let h = dense_hamiltonian(6, 0.8, Example::Spike, b_constant(6), 2.0).unwrap();
        let eig = SymmetricEigen::new(h);
        let k = (0..64).min_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b])).unwrap();
        let v = eig.eigenvectors.column(k);
        for x in 0..64usize {
            let rep = (1usize << x.count_ones()) - 1;
            assert!((v[x] - v[rep]).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn block_matches_full_spectrum() {
        for n in [3u32, 6, 9] {
            for ex in [Example::Ramp, Example::Spike] {
                for s in [0.0, 0.25, 0.5, 0.8, 1.0] {
                    let b = b_constant(n);
                    let dense = dense_lowest_eigenvalues(&dense_hamiltonian(n, s, ex, b, 2.0).unwrap(), 2);
                    let g = ground_pair(&build_symmetric_block(n, s, b, 2.0, ex)).unwrap();
                    assert!((dense[0] - g.e0).abs() < 1e-10, "n={n} s={s} {ex:?}");
                    assert!((dense[1] - g.e1).abs() < 1e-10, "n={n} s={s} {ex:?}");
                }
            }
        }
    }
}
