use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::laurent::{gaussian, GaussianInt, LaurentPoly};
use super::series::{Dyadic, TrigSeries};
use crate::error::{Error, Result};
use crate::walk::{CoinKind, Qubit};

/// Default bound on exact evolutions.
pub const DEFAULT_EXACT_HORIZON: usize = 64;

/// The initial qubits whose amplitudes are Gaussian integers over a power of √2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExactQubit {
    /// (0, 0)
    Up,
    /// (π/2, 0)
    Plus,
    /// (π/2, π/2)
    PlusI,
    /// (π/2, π)
    Minus,
    /// (π/2, 3π/2)
    MinusI,
}

impl ExactQubit {
    pub const ALL: [ExactQubit; 5] = [
        ExactQubit::Up,
        ExactQubit::Plus,
        ExactQubit::PlusI,
        ExactQubit::Minus,
        ExactQubit::MinusI,
    ];

    pub fn angles(self) -> (f64, f64) {
        match self {
            ExactQubit::Up => (0.0, 0.0),
            ExactQubit::Plus => (FRAC_PI_2, 0.0),
            ExactQubit::PlusI => (FRAC_PI_2, FRAC_PI_2),
            ExactQubit::Minus => (FRAC_PI_2, PI),
            ExactQubit::MinusI => (FRAC_PI_2, 3.0 * FRAC_PI_2),
        }
    }

    pub fn qubit(self) -> Qubit {
        let (a, b) = self.angles();
        Qubit::unchecked(a, b)
    }

    /// Match (α, β) against the supported set to within 1e-12.
    pub fn from_angles(alpha: f64, beta: f64) -> Result<Self> {
        let near = |x: f64, y: f64| (x - y).abs() <= 1e-12;
        if near(alpha, 0.0) {
            return Ok(ExactQubit::Up);
        }
        ExactQubit::ALL
            .into_iter()
            .find(|q| {
                let (a, b) = q.angles();
                near(alpha, a) && (near(beta, b) || (b == 0.0 && near(beta, 2.0 * PI)))
            })
            .ok_or(Error::UnsupportedQubit { alpha, beta })
    }

    /// (sin α, sin β, cos β) as integers.
    pub fn trig_signs(self) -> (i64, i64, i64) {
        match self {
            ExactQubit::Up => (0, 0, 1),
            ExactQubit::Plus => (1, 0, 1),
            ExactQubit::PlusI => (1, 1, 0),
            ExactQubit::Minus => (1, 0, -1),
            ExactQubit::MinusI => (1, -1, 0),
        }
    }

    /// Gaussian-integer amplitudes and the √2 exponent s: amplitude = value / √2^s.
    fn numerators(self) -> (GaussianInt, GaussianInt, u32) {
        match self {
            ExactQubit::Up => (gaussian(1, 0), gaussian(0, 0), 0),
            ExactQubit::Plus => (gaussian(1, 0), gaussian(1, 0), 1),
            ExactQubit::PlusI => (gaussian(1, 0), gaussian(0, 1), 1),
            ExactQubit::Minus => (gaussian(1, 0), gaussian(-1, 0), 1),
            ExactQubit::MinusI => (gaussian(1, 0), gaussian(0, -1), 1),
        }
    }
}

/// Integer phase exponents (k_uu, k_ud, k_du, k_dd): the defect phases are k·ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseExponents([i64; 4]);

impl PhaseExponents {
    /// Requires k_uu + k_dd = k_ud + k_du so the coin is unitary for every ω.
    pub fn new(uu: i64, ud: i64, du: i64, dd: i64) -> Result<Self> {
        if uu + dd != ud + du {
            return Err(Error::NonUnitaryExponents(uu, ud, du, dd));
        }
        Ok(PhaseExponents([uu, ud, du, dd]))
    }

    pub fn for_kind(kind: CoinKind) -> Result<Self> {
        let [uu, ud, du, dd] = kind
            .exponents()
            .ok_or_else(|| Error::UnsupportedCoinKind(kind.name().to_string()))?;
        PhaseExponents::new(uu, ud, du, dd)
    }

    pub fn get(&self) -> [i64; 4] {
        self.0
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|k| k.abs()).max().unwrap_or(0)
    }
}

/// Walk amplitudes as exact Laurent polynomials in z = e^{iω}.
///
/// The physical amplitude at site j is `poly_j(e^{iω}) / √2^(t + s)`, where
/// s is 1 for the equatorial qubits and 0 for spin up. The defect sits at
/// the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactState {
    t: usize,
    s: u32,
    horizon: usize,
    exps: PhaseExponents,
    up: Vec<LaurentPoly>,
    down: Vec<LaurentPoly>,
}

impl ExactState {
    pub fn new(qubit: ExactQubit, exps: PhaseExponents, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidHorizon);
        }
        let width = 2 * horizon + 1;
        let mut up = vec![LaurentPoly::zero(); width];
        let mut down = vec![LaurentPoly::zero(); width];
        let (a, b, s) = qubit.numerators();
        up[horizon] = LaurentPoly::constant(a);
        down[horizon] = LaurentPoly::constant(b);
        Ok(ExactState {
            t: 0,
            s,
            horizon,
            exps,
            up,
            down,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Total √2 exponent t + s.
    pub fn scale_exp(&self) -> u32 {
        self.t as u32 + self.s
    }

    fn index(&self, j: i64) -> Option<usize> {
        let i = j + self.horizon as i64;
        (i >= 0 && (i as usize) < self.up.len()).then_some(i as usize)
    }

    pub fn up(&self, j: i64) -> LaurentPoly {
        self.index(j).map(|i| self.up[i].clone()).unwrap_or_default()
    }

    pub fn down(&self, j: i64) -> LaurentPoly {
        self.index(j).map(|i| self.down[i].clone()).unwrap_or_default()
    }

    pub fn advance(&mut self) -> Result<()> {
        if self.t >= self.horizon {
            return Err(Error::HorizonExceeded {
                requested: self.t + 1,
                horizon: self.horizon,
            });
        }
        let [uu, ud, du, dd] = self.exps.get();
        let h = self.horizon as i64;
        let t = self.t as i64;
        let mut up = vec![LaurentPoly::zero(); self.up.len()];
        let mut down = vec![LaurentPoly::zero(); self.down.len()];
        for j in (-t..=t).step_by(2) {
            let src = (j + h) as usize;
            let (a, b) = (&self.up[src], &self.down[src]);
            let (na, nb) = if j == 0 {
                (&a.shift(uu) + &b.shift(ud), &a.shift(du) - &b.shift(dd))
            } else {
                (a + b, a - b)
            };
            up[src + 1] = na;
            down[src - 1] = nb;
        }
        self.up = up;
        self.down = down;
        self.t += 1;
        Ok(())
    }

    /// Float amplitudes (a(j,t), b(j,t)) at the given ω.
    pub fn project(&self, j: i64, omega: f64) -> (Complex64, Complex64) {
        let scale = 2f64.powf(-(self.scale_exp() as f64) / 2.0);
        (self.up(j).eval(omega) * scale, self.down(j).eval(omega) * scale)
    }

    /// Σ_j |a_j|² + |b_j|² as a Laurent polynomial (times 2^(t+s)).
    pub fn norm_poly(&self) -> LaurentPoly {
        self.up
            .iter()
            .chain(&self.down)
            .filter(|p| !p.is_zero())
            .fold(LaurentPoly::zero(), |acc, p| &acc + &(p * &p.conj_reflect()))
    }

    /// Largest |exponent| over every site polynomial.
    pub fn max_abs_exponent(&self) -> i64 {
        self.up
            .iter()
            .chain(&self.down)
            .map(LaurentPoly::max_abs_exponent)
            .max()
            .unwrap_or(0)
    }

    /// P₀(ω, t) as an exact trigonometric series.
    pub fn return_series(&self) -> Result<TrigSeries> {
        let a = &self.up[self.horizon];
        let b = &self.down[self.horizon];
        let p = &(a * &a.conj_reflect()) + &(b * &b.conj_reflect());
        TrigSeries::from_laurent(&p, self.scale_exp())
    }
}

/// Exact evolution for `t ≤ DEFAULT_EXACT_HORIZON` steps.
pub fn exact_evolve(qubit: ExactQubit, exps: PhaseExponents, t: usize) -> Result<ExactState> {
    if t > DEFAULT_EXACT_HORIZON {
        return Err(Error::HorizonExceeded {
            requested: t,
            horizon: DEFAULT_EXACT_HORIZON,
        });
    }
    let mut state = ExactState::new(qubit, exps, t.max(1))?;
    for _ in 0..t {
        state.advance()?;
    }
    Ok(state)
}

/// P₀ series at every t in `times` (ascending) from one evolution.
pub fn return_series_at(qubit: ExactQubit, exps: PhaseExponents, times: &[usize]) -> Result<Vec<TrigSeries>> {
    let last = times.iter().copied().max().unwrap_or(0);
    let mut state = ExactState::new(qubit, exps, last.max(1))?;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        while state.t() < t {
            state.advance()?;
        }
        out.push(state.return_series()?);
    }
    Ok(out)
}

fn check_multiple_of_four(t: usize) -> Result<()> {
    if t == 0 || !t.is_multiple_of(4) {
        return Err(Error::NotMultipleOfFour(t));
    }
    Ok(())
}

/// Coefficients A_n of P₀(ω, t) = Σ A_n cos(nω) for the Konno defect.
pub fn extract_konno_a(t: usize) -> Result<BTreeMap<u64, Dyadic>> {
    check_multiple_of_four(t)?;
    let series = exact_evolve(ExactQubit::Up, PhaseExponents::for_kind(CoinKind::Konno)?, t)?.return_series()?;
    if series.has_sin_terms() {
        return Err(Error::SeriesDefect(format!("Konno series at t = {t} has sine terms: {series}")));
    }
    Ok(series
        .cos_numerators()
        .keys()
        .map(|&n| (n, series.cos_coeff(n)))
        .collect())
}

/// The qubit-independent part B(ω) = Σ B_n cos(nω) and the qubit-coupled
/// part S(ω) = Σ C_n sin(nω) of the phase-defect return probability.
#[derive(Debug, Clone, PartialEq)]
pub struct BcSeries {
    pub t: usize,
    pub b: TrigSeries,
    pub s: TrigSeries,
}

impl BcSeries {
    pub fn b_coeffs(&self) -> BTreeMap<u64, Dyadic> {
        self.b.cos_numerators().keys().map(|&n| (n, self.b.cos_coeff(n))).collect()
    }

    pub fn c_coeffs(&self) -> BTreeMap<u64, Dyadic> {
        self.s.sin_numerators().keys().map(|&n| (n, self.s.sin_coeff(n))).collect()
    }

    /// B + sin α sin β · S for the phase defect;
    /// B + sin α sin(β + ω) · S for the Teles defect, expanded with
    /// sin(β + ω) = sin β cos ω + cos β sin ω.
    pub fn predicted(&self, kind: CoinKind, qubit: ExactQubit) -> Result<TrigSeries> {
        let (sin_a, sin_b, cos_b) = qubit.trig_signs();
        let coupling = match kind {
            CoinKind::Wojcik => TrigSeries::constant(Dyadic::from_ratio(sin_b, 0)),
            CoinKind::Teles => TrigSeries::cos(1)
                .scale(sin_b)
                .add(&TrigSeries::sin(1).scale(cos_b)),
            other => return Err(Error::UnsupportedCoinKind(other.name().to_string())),
        };
        Ok(self.b.add(&coupling.mul(&self.s).scale(sin_a)))
    }
}

/// B_n and C_n for the Wójcik or Teles defect at t = 4k.
///
/// B comes from the spin-up run of the phase defect (sin α = 0), S from the
/// (π/2, π/2) run minus B. Every supported qubit's series for `kind` is then
/// checked against [`BcSeries::predicted`]; any mismatch is a defect.
pub fn extract_bc(kind: CoinKind, t: usize) -> Result<BcSeries> {
    check_multiple_of_four(t)?;
    if !matches!(kind, CoinKind::Wojcik | CoinKind::Teles) {
        return Err(Error::UnsupportedCoinKind(kind.name().to_string()));
    }
    let wojcik = PhaseExponents::for_kind(CoinKind::Wojcik)?;
    let b = exact_evolve(ExactQubit::Up, wojcik, t)?.return_series()?;
    if b.has_sin_terms() {
        return Err(Error::SeriesDefect(format!("spin-up series has sine terms: {b}")));
    }
    let s = exact_evolve(ExactQubit::PlusI, wojcik, t)?.return_series()?.sub(&b);
    if s.has_cos_terms() {
        return Err(Error::SeriesDefect(format!("qubit-coupled part has cosine terms: {s}")));
    }
    let bc = BcSeries { t, b, s };
    let exps = PhaseExponents::for_kind(kind)?;
    for q in ExactQubit::ALL {
        let raw = exact_evolve(q, exps, t)?.return_series()?;
        let predicted = bc.predicted(kind, q)?;
        if raw != predicted {
            return Err(Error::SeriesDefect(format!(
                "{kind} series for {q:?} at t = {t} is {raw}, expected {predicted}"
            )));
        }
    }
    Ok(bc)
}
