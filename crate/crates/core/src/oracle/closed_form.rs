use crate::model::b_constant;
use serde::Serialize;

/// Closed forms for `H0(s)`, whose ground state is the product state
/// `(cos(theta/2)|0> + sin(theta/2)|1>)^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedForm0 {
    pub n: u32,
    pub s: f64,
    pub b: f64,
    /// `arctan(2 / (s b))`, `pi/2` at `s = 0`.
    pub theta: f64,
    /// `(1 + sb/2) - sqrt(1 + (sb/2)^2)`.
    pub e0: f64,
    /// `(2/n) sqrt(1 + (sb/2)^2)`.
    pub gap: f64,
    /// `cos(theta/2)^(2n)`.
    pub p2_zero: f64,
    /// `ln [sin(theta/2) + cos(theta/2)]^n`.
    pub log_z: f64,
    /// `cos(theta/2)^n / Z`.
    pub p1_zero: f64,
}

pub fn closed_form_example0(n: u32, s: f64) -> ClosedForm0 {
    let b = b_constant(n);
    let half_field = s * b / 2.0;
    let theta = if s * b > 0.0 { (2.0 / (s * b)).atan() } else { std::f64::consts::FRAC_PI_2 };
    let (sin, cos) = (theta / 2.0).sin_cos();
    let nf = n as f64;
    let radius = half_field.hypot(1.0);
    let log_z = nf * (sin + cos).ln();
    ClosedForm0 {
        n,
        s,
        b,
        theta,
        e0: (1.0 + half_field) - radius,
        gap: 2.0 / nf * radius,
        p2_zero: (2.0 * nf * cos.ln()).exp(),
        log_z,
        p1_zero: (nf * cos.ln() - log_z).exp(),
    }
}
