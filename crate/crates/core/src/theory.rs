//! Closed-form reference quantities: the Konno limit and its cosine series,
//! the t = 4 return probabilities, and the stationary states of the
//! phase-defect walk with their overlaps.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::walk::{CoinKind, Qubit};

/// Panels for composite Simpson on [0, 2π].
pub const SIMPSON_PANELS: usize = 1 << 14;

/// Konno's limit of P₀(ω, 2n): ((2 − 2cos ω)/(3 − 2cos ω))².
pub fn konno_limit(omega: f64) -> f64 {
    let c = omega.cos();
    let r = (2.0 - 2.0 * c) / (3.0 - 2.0 * c);
    r * r
}

/// Cosine coefficients of `konno_limit` for n ≤ 3, in closed form.
pub fn fc_closed_form(n: usize) -> Option<f64> {
    let r = 5.0 * 5f64.sqrt();
    match n {
        0 => Some(1.0 - 7.0 / r),
        1 => Some(2.0 - 26.0 / r),
        2 => Some(7.0 - 79.0 / r),
        3 => Some(22.0 - 246.0 / r),
        _ => None,
    }
}

/// n-th cosine coefficient of `konno_limit` by composite Simpson.
/// The n = 0 term carries 1/(2π), the rest 1/π.
pub fn fc_quadrature(n: usize) -> f64 {
    let norm = if n == 0 { TAU } else { PI };
    simpson(|w| konno_limit(w) * (n as f64 * w).cos(), 0.0, TAU, SIMPSON_PANELS) / norm
}

/// Coefficients 0..=n_max: closed forms up to n = 3, quadrature beyond.
pub fn fc_coefficients(n_max: usize) -> Vec<f64> {
    (0..=n_max)
        .map(|n| fc_closed_form(n).unwrap_or_else(|| fc_quadrature(n)))
        .collect()
}

fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    let panels = panels + panels % 2;
    let h = (hi - lo) / panels as f64;
    let inner: f64 = (1..panels)
        .map(|i| {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            w * f(lo + i as f64 * h)
        })
        .sum();
    (f(lo) + f(hi) + inner) * h / 3.0
}

/// P₀(ω, 4) in closed form. Konno ignores the qubit; Wójcik and Teles pick
/// up a sin α sin β (resp. sin α sin(β + ω)) term.
pub fn p0_t4_closed(kind: CoinKind, omega: f64, alpha: f64, beta: f64) -> f64 {
    let base = |w: f64| 0.375 - 0.25 * w.cos();
    match kind {
        CoinKind::Konno => base(omega),
        CoinKind::HadamardDefectless => base(0.0),
        CoinKind::Wojcik => base(omega) - 0.25 * alpha.sin() * beta.sin() * omega.sin(),
        CoinKind::Teles => base(omega) - 0.25 * alpha.sin() * (beta + omega).sin() * omega.sin(),
        CoinKind::FourierDefect => p0_t4_closed(CoinKind::Teles, FRAC_PI_2, alpha, beta),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Origin spinor of a trapped state of the e^{iω}H defect walk,
/// proportional to (1, ∓i).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryState {
    pub branch: Branch,
    pub omega: f64,
    pub components: [Complex64; 2],
}

impl StationaryState {
    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum()
    }

    /// |⟨Φ|ψ⟩|².
    pub fn overlap(&self, qubit: &Qubit) -> f64 {
        let (a, b) = qubit.amplitudes();
        (self.components[0].conj() * a + self.components[1].conj() * b).norm_sqr()
    }
}

/// 1/2 + 1/(4cos ω ∓ 4sin ω − 6). Negative outside the branch's region of
/// existence.
pub fn stationary_amplitude_sqr(omega: f64, branch: Branch) -> f64 {
    0.5 + 1.0 / (4.0 * omega.cos() - branch.sign() * 4.0 * omega.sin() - 6.0)
}

/// The branch's origin spinor. Outside its region (amplitude² < 0) the
/// state is taken as zero.
pub fn stationary_state(omega: f64, branch: Branch) -> StationaryState {
    let amp = stationary_amplitude_sqr(omega, branch).max(0.0).sqrt();
    let s = branch.sign();
    StationaryState {
        branch,
        omega,
        components: [Complex64::new(amp, 0.0), Complex64::new(0.0, -s * amp)],
    }
}

/// Branches present at ω: Φ₊ on (0, π/2], both on (π/2, 3π/2), Φ₋ on [3π/2, 2π).
pub fn active_branches(omega: f64) -> Result<&'static [Branch]> {
    if !(omega > 0.0 && omega < TAU) {
        return Err(Error::OmegaOutOfRange(omega));
    }
    Ok(if omega <= FRAC_PI_2 {
        &[Branch::Plus]
    } else if omega < 3.0 * FRAC_PI_2 {
        &[Branch::Plus, Branch::Minus]
    } else {
        &[Branch::Minus]
    })
}

/// F(ω) = Σ |⟨Φ±|ψ_C⟩|² over the active branches.
pub fn total_overlap(omega: f64, qubit: &Qubit) -> Result<f64> {
    Ok(active_branches(omega)?
        .iter()
        .map(|&b| stationary_state(omega, b).overlap(qubit))
        .sum())
}

/// Σ |⟨Φ±|ψ_C⟩|² ‖Φ±‖² over the active branches: each trapped component's
/// weight in the initial state times its own probability at the origin.
/// This is the t → ∞ value of P₀ for the phase-defect walk.
pub fn localized_return_probability(omega: f64, qubit: &Qubit) -> Result<f64> {
    Ok(active_branches(omega)?
        .iter()
        .map(|&b| {
            let phi = stationary_state(omega, b);
            phi.overlap(qubit) * phi.norm_sqr()
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_values() {
        assert_eq!(konno_limit(0.0), 0.0);
        assert!((konno_limit(FRAC_PI_2) - 4.0 / 9.0).abs() < 1e-15);
        assert!((konno_limit(PI) - 0.64).abs() < 1e-15);
        for i in 0..=1000 {
            let c = konno_limit(TAU * i as f64 / 1000.0);
            assert!((0.0..=0.64 + 1e-15).contains(&c));
        }
    }

    #[test]
    fn closed_form_values() {
        assert!((fc_closed_form(0).unwrap() - 0.3739009663).abs() < 1e-9);
        assert!((fc_closed_form(1).unwrap() + 0.3255106966).abs() < 1e-9);
        assert_eq!(fc_closed_form(4), None);
        let v = fc_coefficients(6);
        assert_eq!(v.len(), 7);
        assert_eq!(v[2], fc_closed_form(2).unwrap());
    }

    #[test]
    fn t4_formulas() {
        assert!((p0_t4_closed(CoinKind::Konno, PI, 0.3, 0.2) - 0.625).abs() < 1e-15);
        assert!((p0_t4_closed(CoinKind::Wojcik, FRAC_PI_2, FRAC_PI_2, FRAC_PI_2) - 0.125).abs() < 1e-15);
        assert!((p0_t4_closed(CoinKind::Teles, FRAC_PI_2, FRAC_PI_2, PI) - 0.625).abs() < 1e-15);
        assert!((p0_t4_closed(CoinKind::HadamardDefectless, 1.0, 0.0, 0.0) - 0.125).abs() < 1e-15);
    }

    #[test]
    fn stationary_examples() {
        for w in [FRAC_PI_2, PI] {
            let s = stationary_state(w, Branch::Plus);
            let a = (0.4f64).sqrt();
            assert!((s.components[0] - Complex64::new(a, 0.0)).norm() < 1e-15);
            assert!((s.components[1] - Complex64::new(0.0, -a)).norm() < 1e-15);
            assert!((s.norm_sqr() - 0.8).abs() < 1e-15);
        }
        let m = stationary_state(PI, Branch::Minus);
        assert!((m.components[1] - Complex64::new(0.0, 0.4f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn stationary_norm_in_unit_interval_on_active_region() {
        for i in 0..512 {
            let w = TAU * (i as f64 + 0.5) / 512.0;
            for &b in active_branches(w).unwrap() {
                let n = stationary_state(w, b).norm_sqr();
                assert!(n > 0.0 && n < 1.0, "{w} {b:?} {n}");
            }
        }
    }

    #[test]
    fn overlap_examples() {
        assert!((total_overlap(FRAC_PI_2, &Qubit::up()).unwrap() - 0.4).abs() < 1e-12);
        let q = Qubit::new(FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!(total_overlap(FRAC_PI_2, &q).unwrap().abs() < 1e-15);
        for q in [Qubit::up(), q, Qubit::new(2.0, 5.0).unwrap()] {
            assert!(total_overlap(1e-9, &q).unwrap() < 1e-8);
            assert!(total_overlap(TAU - 1e-9, &q).unwrap() < 1e-8);
        }
        assert!(matches!(total_overlap(0.0, &Qubit::up()), Err(Error::OmegaOutOfRange(_))));
        assert!(matches!(total_overlap(TAU, &Qubit::up()), Err(Error::OmegaOutOfRange(_))));
    }

    #[test]
    fn branch_boundaries_follow_half_open_intervals() {
        assert_eq!(active_branches(FRAC_PI_2).unwrap(), &[Branch::Plus]);
        assert_eq!(active_branches(3.0 * FRAC_PI_2).unwrap(), &[Branch::Minus]);
        assert_eq!(active_branches(PI).unwrap().len(), 2);
    }

    #[test]
    fn overlap_in_unit_interval() {
        for i in 1..200 {
            let w = TAU * i as f64 / 200.0;
            for (a, b) in [(0.0, 0.0), (0.7, 2.0), (PI, 1.0), (FRAC_PI_2, 4.0)] {
                let f = total_overlap(w, &Qubit::new(a, b).unwrap()).unwrap();
                assert!((0.0..=1.0).contains(&f));
            }
        }
    }
}
