use super::graph::VertexId;
use super::schedule::{example1_b, example1_c};

/// Spike depth used when none is given.
pub const DEFAULT_SPIKE: f64 = 2.0;

/// Diagonal potentials over search-graph vertices.
#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    /// `W|x> = |x| |x>`.
    HammingWeight,
    /// Hamming weight with a well at `0...0` that deepens after `s = 1/2`.
    /// Evaluates to `(b(s)/n)|x| - c(s)[x = 0]`.
    Spiked { n: u32, b_const: f64, c_const: f64 },
    /// One value per vertex, indexed by `VertexId`.
    Table(Vec<f64>),
}

impl Potential {
    pub fn spiked(n: u32, c_const: f64) -> Self {
        Potential::Spiked { n, b_const: b_constant(n), c_const }
    }

    pub fn value(&self, v: VertexId, s: f64) -> f64 {
        match self {
            Potential::HammingWeight => hamming_potential(v) as f64,
            Potential::Spiked { n, b_const, c_const } => spiked_potential(v, s, *n, *b_const, *c_const),
            Potential::Table(values) => values[v.0 as usize],
        }
    }
}

pub fn hamming_potential(v: VertexId) -> u32 {
    v.weight()
}

pub fn spiked_potential(v: VertexId, s: f64, n: u32, b_const: f64, c_const: f64) -> f64 {
    let ramp = example1_b(s, b_const) * v.weight() as f64 / n as f64;
    if v.0 == 0 {
        ramp - example1_c(s, c_const)
    } else {
        ramp
    }
}

/// Field strength for which the single-qubit ground state at `s = 1` has
/// `cos(theta/2) = 1 - 1/(4n)`, i.e. `b = 2 / tan(2 arccos(1 - 1/(4n)))`.
///
/// Evaluated through `cos(2x) = 2q^2 - 1`, `sin(2x) = 2q sqrt(1 - q^2)` with
/// `1 - q^2 = (1 - q)(1 + q)` so large `n` keeps full precision.
pub fn b_constant(n: u32) -> f64 {
    let eps = 1.0 / (4.0 * n as f64);
    let q = 1.0 - eps;
    let one_minus_q2 = eps * (2.0 - eps);
    (2.0 * q * q - 1.0) / (q * one_minus_q2.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_values() {
        assert_eq!(hamming_potential(VertexId(0)), 0);
        assert_eq!(hamming_potential(VertexId((1 << 7) - 1)), 7);
        assert_eq!(hamming_potential(VertexId(0b0110)), 2);
    }

    #[test]
    fn spiked_values() {
        let b = b_constant(10);
        assert_eq!(spiked_potential(VertexId(0), 1.0, 10, b, 2.0), -2.0);
        let v = VertexId(0b1011);
        assert!((spiked_potential(v, 0.5, 10, b, 2.0) - 3.0 * b / 10.0).abs() < 1e-15);
        for x in [0u64, 1, 0b111, 1023] {
            assert_eq!(spiked_potential(VertexId(x), 0.0, 10, b, 2.0), 0.0);
        }
    }

    #[test]
    fn spike_at_half_is_hamming_ramp_at_full_strength() {
        let n = 12;
        let b = b_constant(n);
        for x in 0..(1u64 << n) {
            let v = VertexId(x);
            let ex0 = b * v.weight() as f64 / n as f64;
            assert_eq!(spiked_potential(v, 0.5, n, b, 2.0), ex0);
        }
    }

    #[test]
    fn b_constant_n1_exact() {
        // cos(2x) = 1/8 and sin(2x) = sqrt(63)/8 for cos x = 3/4.
        let exact = 2.0 / 63f64.sqrt();
        assert!((b_constant(1) - exact).abs() < 1e-15);
        let naive = 2.0 / (2.0 * 0.75f64.acos()).tan();
        assert!((b_constant(1) - naive).abs() < 1e-14);
        let theta = (2.0 / b_constant(1)).atan();
        assert!(((theta / 2.0).cos() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn b_constant_round_trip() {
        for n in [2u32, 10, 100] {
            let theta = (2.0 / b_constant(n)).atan();
            let target = 1.0 - 1.0 / (4.0 * n as f64);
            assert!(((theta / 2.0).cos() - target).abs() < 1e-12, "n={n}");
            let naive = 2.0 / (2.0 * target.acos()).tan();
            assert!((b_constant(n) / naive - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn b_constant_grows_like_sqrt_2n() {
        // theta = sqrt(2/n) to leading order, so b = 2/tan(theta) ~ sqrt(2n).
        let n = 10_000u32;
        let ratio = b_constant(n) / (2.0 * n as f64).sqrt();
        assert!((ratio - 1.0).abs() < 1e-3, "ratio {ratio}");
    }
}
