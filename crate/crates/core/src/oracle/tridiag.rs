//! Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for single
//! eigenvalues and a twisted factorization for the matching eigenvector.

use super::OracleError;

const MAX_BISECTIONS: usize = 300;

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let tiny = f64::MIN_POSITIVE.sqrt();
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] / q };
        q = diag[i] - x - coupling;
        if q == 0.0 {
            q = -tiny;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

pub(crate) fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    (0..n).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        (lo.min(diag[i] - left - right), hi.max(diag[i] + left + right))
    })
}

/// The `index`-th smallest eigenvalue (0-based) to full double precision.
pub fn kth_eigenvalue(diag: &[f64], off: &[f64], index: usize) -> Result<f64, OracleError> {
    assert!(index < diag.len(), "eigenvalue {index} of a {}x{} matrix", diag.len(), diag.len());
    let (mut lo, mut hi) = gershgorin(diag, off);
    let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
    lo -= pad;
    hi += pad;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            return Ok(mid.clamp(lo, hi));
        }
        if sturm_count(diag, off, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(OracleError::NonConvergence { index, iterations: MAX_BISECTIONS, lo, hi })
}

/// Eigenvector for eigenvalue `lambda` as `(ln|z_i|, sign z_i)`, unnormalized.
///
/// Solves `(T - lambda) z = gamma_k e_k` with the twist index `k` chosen
/// where `|gamma_k|` is smallest, combining a top-down and a bottom-up
/// factorization. The components are products of pivot ratios, so their
/// logarithms are accumulated directly.
pub fn log_eigenvector(diag: &[f64], off: &[f64], lambda: f64) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let (lo, hi) = gershgorin(diag, off);
    let tiny = f64::EPSILON * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    let guard = |x: f64| if x == 0.0 { tiny } else { x };

    let shifted: Vec<f64> = diag.iter().map(|d| d - lambda).collect();
    let mut top = vec![0.0; n];
    top[0] = guard(shifted[0]);
    for i in 1..n {
        top[i] = guard(shifted[i] - off[i - 1] * off[i - 1] / top[i - 1]);
    }
    let mut bottom = vec![0.0; n];
    bottom[n - 1] = guard(shifted[n - 1]);
    for i in (0..n - 1).rev() {
        bottom[i] = guard(shifted[i] - off[i] * off[i] / bottom[i + 1]);
    }
    let twist = (0..n)
        .min_by(|&a, &b| {
            let ga = (top[a] + bottom[a] - shifted[a]).abs();
            let gb = (top[b] + bottom[b] - shifted[b]).abs();
            ga.total_cmp(&gb)
        })
        .unwrap_or(0);

    let mut log_abs = vec![0.0; n];
    let mut sign = vec![1.0; n];
    for i in (0..twist).rev() {
        let ratio = -off[i] / top[i];
        log_abs[i] = log_abs[i + 1] + ratio.abs().ln();
        sign[i] = sign[i + 1] * ratio.signum();
    }
    for i in twist + 1..n {
        let ratio = -off[i - 1] / bottom[i];
        log_abs[i] = log_abs[i - 1] + ratio.abs().ln();
        sign[i] = sign[i - 1] * ratio.signum();
    }
    (log_abs, sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_on_2x2() {
        // [[1, -1], [-1, 3]] has eigenvalues 2 -+ sqrt(2)
        let (d, e) = ([1.0, 3.0], [-1.0]);
        assert_eq!(sturm_count(&d, &e, 0.0), 0);
        assert_eq!(sturm_count(&d, &e, 1.0), 1);
        assert_eq!(sturm_count(&d, &e, 4.0), 2);
        assert!((kth_eigenvalue(&d, &e, 0).unwrap() - (2.0 - 2f64.sqrt())).abs() < 1e-15);
        assert!((kth_eigenvalue(&d, &e, 1).unwrap() - (2.0 + 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn free_chain_spectrum_and_vector() {
        // d = 0, e = -1: eigenvalues -2 cos(k pi / (n+1)), ground vector sin(i pi/(n+1))
        let n = 60;
        let d = vec![0.0; n];
        let e = vec![-1.0; n - 1];
        let h = std::f64::consts::PI / (n as f64 + 1.0);
        for k in 0..3 {
            let exact = -2.0 * ((k + 1) as f64 * h).cos();
            assert!((kth_eigenvalue(&d, &e, k).unwrap() - exact).abs() < 1e-14);
        }
        let lambda = kth_eigenvalue(&d, &e, 0).unwrap();
        let (la, sign) = log_eigenvector(&d, &e, lambda);
        let z: Vec<f64> = la.iter().zip(&sign).map(|(l, s)| s * l.exp()).collect();
        let ratio = z[0] / (h).sin();
        for (i, zi) in z.iter().enumerate() {
            assert!((zi / ((i + 1) as f64 * h).sin() - ratio).abs() < 1e-10 * ratio.abs());
        }
    }

    #[test]
    fn excited_vector_has_a_sign_change() {
        let n = 20;
        let d = vec![0.0; n];
        let e = vec![-1.0; n - 1];
        let lambda = kth_eigenvalue(&d, &e, 1).unwrap();
        let (_, sign) = log_eigenvector(&d, &e, lambda);
        let changes = sign.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(changes, 1);
    }
}
