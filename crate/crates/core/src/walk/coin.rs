use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on the phase congruence that makes the defect coin unitary.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Row-major 2×2 complex matrix.
pub type CoinMatrix = [[Complex64; 2]; 2];

/// Named defect families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoinKind {
    /// Relative phase ±ω on the off-diagonal entries; localization independent of the qubit.
    Konno,
    /// Global phase e^{iω} on the Hadamard coin.
    Wojcik,
    /// D·H·D with D = diag(1, e^{iω}); a Fourier coin at ω = π/2.
    Teles,
    /// Plain Hadamard everywhere.
    HadamardDefectless,
    /// `Teles` pinned at ω = π/2.
    FourierDefect,
}

impl CoinKind {
    pub const ALL: [CoinKind; 5] = [
        CoinKind::Konno,
        CoinKind::Wojcik,
        CoinKind::Teles,
        CoinKind::HadamardDefectless,
        CoinKind::FourierDefect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoinKind::Konno => "konno",
            CoinKind::Wojcik => "wojcik",
            CoinKind::Teles => "teles",
            CoinKind::HadamardDefectless => "hadamard",
            CoinKind::FourierDefect => "fourier",
        }
    }

    /// Integer exponents (k_uu, k_ud, k_du, k_dd) with each phase = k·ω.
    /// `None` for kinds that pin ω.
    pub fn exponents(self) -> Option<[i64; 4]> {
        match self {
            CoinKind::Konno => Some([0, 1, -1, 0]),
            CoinKind::Wojcik => Some([1, 1, 1, 1]),
            CoinKind::Teles => Some([0, 1, 1, 2]),
            CoinKind::HadamardDefectless => Some([0, 0, 0, 0]),
            CoinKind::FourierDefect => None,
        }
    }
}

impl fmt::Display for CoinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoinKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "konno" => Ok(CoinKind::Konno),
            "wojcik" => Ok(CoinKind::Wojcik),
            "teles" => Ok(CoinKind::Teles),
            "hadamard" | "hadamard_defectless" | "hadamard-defectless" => Ok(CoinKind::HadamardDefectless),
            "fourier" | "fourier_defect" | "fourier-defect" => Ok(CoinKind::FourierDefect),
            _ => Err(Error::UnknownCoin(s.to_string())),
        }
    }
}

/// Four defect phases plus the site where they apply. Every other site
/// carries the Hadamard coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinSpec {
    pub w_uu: f64,
    pub w_ud: f64,
    pub w_du: f64,
    pub w_dd: f64,
    pub defect_site: i64,
}

/// Returned when the phase congruence fails; carries the residual reduced to [0, π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinViolation {
    pub residual: f64,
}

impl CoinSpec {
    pub fn new(w_uu: f64, w_ud: f64, w_du: f64, w_dd: f64) -> Self {
        CoinSpec {
            w_uu,
            w_ud,
            w_du,
            w_dd,
            defect_site: 0,
        }
    }

    pub fn hadamard() -> Self {
        CoinSpec::new(0.0, 0.0, 0.0, 0.0)
    }

    pub fn preset(kind: CoinKind, omega: f64) -> Result<Self> {
        if !omega.is_finite() && kind != CoinKind::HadamardDefectless {
            return Err(Error::NonFinite(omega));
        }
        let w = omega;
        Ok(match kind {
            CoinKind::Konno => CoinSpec::new(0.0, w, -w, 0.0),
            CoinKind::Wojcik => CoinSpec::new(w, w, w, w),
            CoinKind::Teles => CoinSpec::new(0.0, w, w, 2.0 * w),
            CoinKind::HadamardDefectless => CoinSpec::hadamard(),
            CoinKind::FourierDefect => CoinSpec::new(0.0, FRAC_PI_2, FRAC_PI_2, PI),
        })
    }

    pub fn with_defect_site(mut self, site: i64) -> Self {
        self.defect_site = site;
        self
    }

    pub fn phases(&self) -> [f64; 4] {
        [self.w_uu, self.w_ud, self.w_du, self.w_dd]
    }

    /// Checks w_uu + w_dd ≡ w_ud + w_du (mod 2π), the row-orthogonality
    /// condition of the defect matrix.
    pub fn validate(&self) -> std::result::Result<(), CoinViolation> {
        let phases = self.phases();
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(CoinViolation { residual: f64::NAN });
        }
        let diff = (self.w_uu + self.w_dd) - (self.w_ud + self.w_du);
        let residual = wrap_to_pi(diff).abs();
        if residual <= UNITARITY_TOL {
            Ok(())
        } else {
            Err(CoinViolation { residual })
        }
    }

    pub fn checked(self) -> Result<Self> {
        self.validate()
            .map_err(|v| Error::NonUnitaryCoin { residual: v.residual })?;
        Ok(self)
    }

    /// Coin matrix at the defect site, including the 1/√2 factor.
    pub fn defect_matrix(&self) -> CoinMatrix {
        let r = FRAC_1_SQRT_2;
        let e = |w: f64| Complex64::from_polar(r, w);
        [[e(self.w_uu), e(self.w_ud)], [e(self.w_du), -e(self.w_dd)]]
    }

    /// Coin matrix at site `j`: the defect matrix at `defect_site`, Hadamard elsewhere.
    pub fn matrix_at(&self, j: i64) -> Result<CoinMatrix> {
        self.validate()
            .map_err(|v| Error::NonUnitaryCoin { residual: v.residual })?;
        Ok(if j == self.defect_site {
            self.defect_matrix()
        } else {
            hadamard_matrix()
        })
    }
}

pub fn hadamard_matrix() -> CoinMatrix {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

/// Reduce an angle to (-π, π].
fn wrap_to_pi(x: f64) -> f64 {
    let mut r = x.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    r
}

#[cfg(test)]
pub(crate) fn unitarity_defect(m: &CoinMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for k in 0..2 {
            let s: Complex64 = (0..2).map(|l| m[i][l] * m[k][l].conj()).sum();
            let target = if i == k { 1.0 } else { 0.0 };
            worst = worst.max((s - target).norm());
        }
    }
    worst
}
