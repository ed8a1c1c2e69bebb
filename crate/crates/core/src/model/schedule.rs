use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScheduleError {
    #[error("schedule needs at least one step")]
    NoSteps,
    #[error("coefficient {name}({s}) = {value} is negative")]
    Negative { name: &'static str, s: f64, value: f64 },
    #[error("knots must start at s=0, end at s=1 and increase strictly")]
    BadKnots,
    #[error("grid point {0} lies outside [0, 1]")]
    GridOutOfRange(f64),
    #[error("custom grid has {found} points for {steps} steps")]
    GridLength { steps: usize, found: usize },
}

/// Coefficients of `H(s) = a(s) L + b(s) W - c(s) P` at one knot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Knot {
    pub s: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScheduleKind {
    /// `a(s) = 1 - s`, `b(s) = s`, `c(s) = 0`.
    Linear,
    /// `H(s) = (1/n)[L + b(s) W] - c(s) P` with the Hamming ramp up to
    /// `s = 1/2` and a deepening spike afterwards. `a(s) = 1` here refers to
    /// the bracketed `L`.
    Example1 { n: u32, b_const: f64, c_const: f64 },
    /// Linear interpolation between knots.
    Piecewise { knots: Vec<Knot> },
}

/// Where each step sits in `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "grid", content = "points", rename_all = "snake_case")]
pub enum Grid {
    /// `s = t / T` for `t = 1..=T`.
    Uniform,
    /// Every step at the same `s`.
    Fixed(f64),
    /// Explicit `s` per step.
    Custom(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub kind: ScheduleKind,
    pub steps: usize,
    pub grid: Grid,
}

pub(crate) fn example1_b(s: f64, b_const: f64) -> f64 {
    if s <= 0.5 {
        2.0 * s * b_const
    } else {
        b_const
    }
}

pub(crate) fn example1_c(s: f64, c_const: f64) -> f64 {
    if s <= 0.5 {
        0.0
    } else {
        (2.0 * s - 1.0) * c_const
    }
}

impl Schedule {
    pub fn linear(steps: usize) -> Result<Self, ScheduleError> {
        Self::new(ScheduleKind::Linear, steps, Grid::Uniform)
    }

    pub fn example1(n: u32, b_const: f64, c_const: f64, steps: usize) -> Result<Self, ScheduleError> {
        Self::new(ScheduleKind::Example1 { n, b_const, c_const }, steps, Grid::Uniform)
    }

    /// Constant `a`, `b` for every `s`.
    pub fn constant(a: f64, b: f64, steps: usize) -> Result<Self, ScheduleError> {
        let knots = vec![Knot { s: 0.0, a, b, c: 0.0 }, Knot { s: 1.0, a, b, c: 0.0 }];
        Self::new(ScheduleKind::Piecewise { knots }, steps, Grid::Uniform)
    }

    pub fn new(kind: ScheduleKind, steps: usize, grid: Grid) -> Result<Self, ScheduleError> {
        if steps == 0 {
            return Err(ScheduleError::NoSteps);
        }
        if let ScheduleKind::Piecewise { knots } = &kind {
            let ordered = knots.windows(2).all(|w| w[0].s < w[1].s);
            if knots.len() < 2 || !ordered || knots[0].s != 0.0 || knots[knots.len() - 1].s != 1.0 {
                return Err(ScheduleError::BadKnots);
            }
            for k in knots {
                for (name, value) in [("a", k.a), ("b", k.b), ("c", k.c)] {
                    if value < 0.0 {
                        return Err(ScheduleError::Negative { name, s: k.s, value });
                    }
                }
            }
        }
        if let ScheduleKind::Example1 { b_const, c_const, .. } = &kind {
            for (name, value) in [("b", *b_const), ("c", *c_const)] {
                if value < 0.0 {
                    return Err(ScheduleError::Negative { name, s: 1.0, value });
                }
            }
        }
        match &grid {
            Grid::Fixed(s) if !(0.0..=1.0).contains(s) => return Err(ScheduleError::GridOutOfRange(*s)),
            Grid::Custom(points) => {
                if points.len() != steps {
                    return Err(ScheduleError::GridLength { steps, found: points.len() });
                }
                if let Some(bad) = points.iter().find(|s| !(0.0..=1.0).contains(*s)) {
                    return Err(ScheduleError::GridOutOfRange(*bad));
                }
            }
            _ => {}
        }
        Ok(Self { kind, steps, grid })
    }

    pub fn with_grid(self, grid: Grid) -> Result<Self, ScheduleError> {
        Self::new(self.kind, self.steps, grid)
    }

    /// Schedule parameter at step `t` (1-based).
    pub fn s_at(&self, t: usize) -> f64 {
        match &self.grid {
            Grid::Uniform => t as f64 / self.steps as f64,
            Grid::Fixed(s) => *s,
            Grid::Custom(points) => points[t - 1],
        }
    }

    pub fn a(&self, s: f64) -> f64 {
        match &self.kind {
            ScheduleKind::Linear => 1.0 - s,
            ScheduleKind::Example1 { .. } => 1.0,
            ScheduleKind::Piecewise { knots } => interpolate(knots, s, |k| k.a),
        }
    }

    pub fn b(&self, s: f64) -> f64 {
        match &self.kind {
            ScheduleKind::Linear => s,
            ScheduleKind::Example1 { b_const, .. } => example1_b(s, *b_const),
            ScheduleKind::Piecewise { knots } => interpolate(knots, s, |k| k.b),
        }
    }

    pub fn c(&self, s: f64) -> f64 {
        match &self.kind {
            ScheduleKind::Linear => 0.0,
            ScheduleKind::Example1 { c_const, .. } => example1_c(s, *c_const),
            ScheduleKind::Piecewise { knots } => interpolate(knots, s, |k| k.c),
        }
    }

    /// `(hop, weight)` as the walker process consumes them: each neighbor is
    /// reached with probability `hop * dt` and the potential enters with
    /// factor `weight`.
    ///
    /// For `Example1` the Laplacian carries a fixed `1/n` and the potential
    /// (see [`Potential::Spiked`](super::Potential::Spiked)) already folds in
    /// `b(s)/n` and `c(s)`, so the pair is `(1/n, 1)`.
    pub fn engine_rates(&self, s: f64) -> (f64, f64) {
        match &self.kind {
            ScheduleKind::Example1 { n, .. } => (1.0 / *n as f64, 1.0),
            _ => (self.a(s), self.b(s)),
        }
    }
}

fn interpolate(knots: &[Knot], s: f64, field: impl Fn(&Knot) -> f64) -> f64 {
    let s = s.clamp(0.0, 1.0);
    let i = knots.partition_point(|k| k.s <= s).clamp(1, knots.len() - 1);
    let (lo, hi) = (&knots[i - 1], &knots[i]);
    let t = (s - lo.s) / (hi.s - lo.s);
    field(lo) + t * (field(hi) - field(lo))
}
