use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::coin::CoinSpec;
use super::qubit::Qubit;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Spinor amplitudes over the window [-horizon, horizon] at time `t`.
///
/// Storage is dense and sized once from the horizon. Sites outside the
/// light cone, or on the wrong sublattice, are never written and stay
/// exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    t: usize,
    horizon: usize,
    up: Vec<Complex64>,
    down: Vec<Complex64>,
}

impl WalkState {
    /// Qubit placed at the origin, t = 0.
    pub fn new(qubit: &Qubit, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidHorizon);
        }
        let width = 2 * horizon + 1;
        let mut up = vec![ZERO; width];
        let mut down = vec![ZERO; width];
        let (a, b) = qubit.amplitudes();
        up[horizon] = a;
        down[horizon] = b;
        Ok(WalkState { t: 0, horizon, up, down })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    fn index(&self, j: i64) -> Option<usize> {
        let i = j + self.horizon as i64;
        (i >= 0 && (i as usize) < self.up.len()).then_some(i as usize)
    }

    /// a(j, t); zero outside the window.
    pub fn up(&self, j: i64) -> Complex64 {
        self.index(j).map_or(ZERO, |i| self.up[i])
    }

    /// b(j, t); zero outside the window.
    pub fn down(&self, j: i64) -> Complex64 {
        self.index(j).map_or(ZERO, |i| self.down[i])
    }

    pub fn spinor(&self, j: i64) -> (Complex64, Complex64) {
        (self.up(j), self.down(j))
    }

    pub fn site_probability(&self, j: i64) -> f64 {
        self.up(j).norm_sqr() + self.down(j).norm_sqr()
    }

    /// Sites in the window paired with (a, b), from -horizon upward.
    pub fn sites(&self) -> impl Iterator<Item = (i64, Complex64, Complex64)> + '_ {
        let h = self.horizon as i64;
        self.up
            .iter()
            .zip(&self.down)
            .enumerate()
            .map(move |(i, (a, b))| (i as i64 - h, *a, *b))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up
            .iter()
            .zip(&self.down)
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .sum()
    }

    /// One application of coin-then-shift, in place.
    pub fn advance(&mut self, spec: &CoinSpec) -> Result<()> {
        if self.t >= self.horizon {
            return Err(Error::HorizonExceeded {
                requested: self.t + 1,
                horizon: self.horizon,
            });
        }
        let spec = spec.checked()?;
        let d = spec.defect_matrix();
        let r = FRAC_1_SQRT_2;
        let h = self.horizon as i64;
        let t = self.t as i64;

        let mut up = vec![ZERO; self.up.len()];
        let mut down = vec![ZERO; self.down.len()];
        // occupied sites at time t: j = -t, -t+2, ..., t
        for j in (-t..=t).step_by(2) {
            let src = (j + h) as usize;
            let (a, b) = (self.up[src], self.down[src]);
            let (na, nb) = if j == spec.defect_site {
                (d[0][0] * a + d[0][1] * b, d[1][0] * a + d[1][1] * b)
            } else {
                ((a + b) * r, (a - b) * r)
            };
            // spin up moves right, spin down moves left
            up[src + 1] = na;
            down[src - 1] = nb;
        }
        self.up = up;
        self.down = down;
        self.t += 1;
        Ok(())
    }

    /// Returns the next state, leaving `self` untouched.
    pub fn step(&self, spec: &CoinSpec) -> Result<WalkState> {
        let mut next = self.clone();
        next.advance(spec)?;
        Ok(next)
    }
}

/// `steps` applications of the walk operator starting from `qubit` at the origin.
pub fn evolve(qubit: &Qubit, spec: &CoinSpec, steps: usize) -> Result<WalkState> {
    let mut state = WalkState::new(qubit, steps.max(1))?;
    for _ in 0..steps {
        state.advance(spec)?;
    }
    Ok(state)
}

/// Evolve for `steps`, calling `visit` on the state after every step
/// (t = 1..=steps) and once before the first (t = 0).
pub fn evolve_with<F>(qubit: &Qubit, spec: &CoinSpec, steps: usize, mut visit: F) -> Result<WalkState>
where
    F: FnMut(&WalkState),
{
    let mut state = WalkState::new(qubit, steps.max(1))?;
    visit(&state);
    for _ in 0..steps {
        state.advance(spec)?;
        visit(&state);
    }
    Ok(state)
}
