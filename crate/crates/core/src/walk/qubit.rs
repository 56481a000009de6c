use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Initial internal state cos(α/2)|↑⟩ + e^{iβ} sin(α/2)|↓⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qubit {
    alpha: f64,
    beta: f64,
}

impl Qubit {
    /// `alpha` must lie in [0, π] and `beta` in [0, 2π].
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        check_range("alpha", alpha, 0.0, PI)?;
        check_range("beta", beta, 0.0, TAU)?;
        Ok(Qubit { alpha, beta })
    }

    /// Spin up, the north pole.
    pub fn up() -> Self {
        Qubit { alpha: 0.0, beta: 0.0 }
    }

    /// Constructor without range checks, for β values that have been shifted
    /// past 2π (e.g. β + ω bookkeeping).
    pub fn unchecked(alpha: f64, beta: f64) -> Self {
        Qubit { alpha, beta }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn up_amplitude(&self) -> Complex64 {
        Complex64::new((self.alpha / 2.0).cos(), 0.0)
    }

    pub fn down_amplitude(&self) -> Complex64 {
        Complex64::from_polar((self.alpha / 2.0).sin(), self.beta)
    }

    pub fn amplitudes(&self) -> (Complex64, Complex64) {
        (self.up_amplitude(), self.down_amplitude())
    }
}

fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if !value.is_finite() || value < lo || value > hi {
        return Err(Error::AngleOutOfRange { name, value, lo, hi });
    }
    Ok(())
}
