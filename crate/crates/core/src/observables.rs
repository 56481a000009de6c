//! Measured quantities on walk states and parameter sweeps over ω and the
//! Bloch sphere.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::exec::{try_map_ordered, Execution};
use crate::theory::konno_limit;
use crate::walk::{evolve, evolve_with, CoinKind, CoinSpec, Qubit, WalkState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionRow {
    pub j: i64,
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub omega: f64,
    pub t: usize,
    pub p0: f64,
    /// Konno's asymptotic limit, filled for the Konno family only.
    pub c: Option<f64>,
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochCell {
    pub alpha: f64,
    pub beta: f64,
    pub p0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalRow {
    pub t: usize,
    pub p0: f64,
    pub sp: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionRow {
    pub t: usize,
    pub mean: f64,
    pub sigma: f64,
}

/// P₀ = |a(0,t)|² + |b(0,t)|².
pub fn return_probability(state: &WalkState) -> f64 {
    state.site_probability(0)
}

/// One row per site in [-t, t].
pub fn position_distribution(state: &WalkState) -> Vec<DistributionRow> {
    let t = state.t() as i64;
    (-t..=t)
        .map(|j| DistributionRow {
            j,
            p: state.site_probability(j),
        })
        .collect()
}

pub fn moments(state: &WalkState) -> Moments {
    moments_of(&position_distribution(state))
}

pub fn moments_of(rows: &[DistributionRow]) -> Moments {
    let (m1, m2) = rows.iter().fold((0.0, 0.0), |(m1, m2), r| {
        let j = r.j as f64;
        (m1 + j * r.p, m2 + j * j * r.p)
    });
    Moments {
        mean: m1,
        sigma: (m2 - m1 * m1).max(0.0).sqrt(),
    }
}

/// |⟨Ψ₀(t)|ψ_C⟩|² with Ψ₀(t) the (unnormalized) spinor at the origin.
pub fn survival_probability(state: &WalkState, qubit: &Qubit) -> f64 {
    let (a, b) = state.spinor(0);
    let (qa, qb) = qubit.amplitudes();
    (a.conj() * qa + b.conj() * qb).norm_sqr()
}

/// Per-side argmax of the distribution, skipping |j| < t/4 where the
/// localization spike sits. `t` is taken as the largest |j| in `rows`.
/// Ties go to the site closer to the origin.
pub fn outer_peaks(rows: &[DistributionRow]) -> Result<(i64, i64)> {
    let t = rows.iter().map(|r| r.j.unsigned_abs()).max().unwrap_or(0);
    if t < 10 {
        return Err(Error::DistributionTooShort(t as usize));
    }
    let cutoff = t as f64 / 4.0;
    let side = |sign: i64, name: &'static str| -> Result<i64> {
        let mut candidates: Vec<&DistributionRow> = rows
            .iter()
            .filter(|r| r.j.signum() == sign && (r.j.abs() as f64) >= cutoff)
            .collect();
        candidates.sort_by_key(|r| r.j.abs());
        let best = candidates
            .iter()
            .fold(None::<&DistributionRow>, |best, r| match best {
                Some(b) if b.p >= r.p => Some(b),
                _ => Some(r),
            })
            .ok_or(Error::FlatDistribution { side: name })?;
        let lowest = candidates.iter().map(|r| r.p).fold(f64::INFINITY, f64::min);
        if best.p <= lowest {
            return Err(Error::FlatDistribution { side: name });
        }
        Ok(best.j)
    };
    Ok((side(-1, "left")?, side(1, "right")?))
}

/// P₀ for the given family at each ω of the grid; rows come back in grid order.
pub fn sweep_omega(
    kind: CoinKind,
    qubit: &Qubit,
    t: usize,
    grid: &[f64],
    exec: Execution,
) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    try_map_ordered(grid, exec, |&omega| {
        let spec = CoinSpec::preset(kind, omega)?;
        let p0 = return_probability(&evolve(qubit, &spec, t)?);
        let c = (kind == CoinKind::Konno).then(|| konno_limit(omega));
        Ok(SweepRow {
            omega,
            t,
            p0,
            c,
            delta: c.map(|c| c - p0),
        })
    })
}

/// P₀(ω, t) for every (α, β) pair; α is the outer index.
pub fn bloch_scan(
    kind: CoinKind,
    omega: f64,
    t: usize,
    alpha_grid: &[f64],
    beta_grid: &[f64],
    exec: Execution,
) -> Result<Vec<BlochCell>> {
    if alpha_grid.is_empty() || beta_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let spec = CoinSpec::preset(kind, omega)?.checked()?;
    let cells: Vec<(f64, f64)> = alpha_grid
        .iter()
        .flat_map(|&a| beta_grid.iter().map(move |&b| (a, b)))
        .collect();
    try_map_ordered(&cells, exec, |&(alpha, beta)| {
        let q = Qubit::unchecked(alpha, beta);
        let p0 = return_probability(&evolve(&q, &spec, t)?);
        Ok(BlochCell { alpha, beta, p0 })
    })
}

/// Midpoint nodes for a uniform-measure average over the sphere.
pub fn bloch_midpoint_grid(n_alpha: usize, n_beta: usize) -> (Vec<f64>, Vec<f64>) {
    let alphas = (0..n_alpha).map(|i| (i as f64 + 0.5) * PI / n_alpha as f64).collect();
    let betas = (0..n_beta).map(|k| (k as f64 + 0.5) * TAU / n_beta as f64).collect();
    (alphas, betas)
}

/// Average of P₀ over the sphere with measure sin α dα dβ / 4π, midpoint rule.
pub fn bloch_average(
    kind: CoinKind,
    omega: f64,
    t: usize,
    n_alpha: usize,
    n_beta: usize,
    exec: Execution,
) -> Result<f64> {
    let (alphas, betas) = bloch_midpoint_grid(n_alpha, n_beta);
    let cells = bloch_scan(kind, omega, t, &alphas, &betas, exec)?;
    let (num, den) = cells.iter().fold((0.0, 0.0), |(n, d), c| {
        let w = c.alpha.sin();
        (n + w * c.p0, d + w)
    });
    Ok(num / den)
}

/// P₀, SP and SP/P₀ at every even t in 0..=steps. Odd t (P₀ = 0) is skipped.
pub fn survival_series(spec: &CoinSpec, qubit: &Qubit, steps: usize) -> Result<Vec<SurvivalRow>> {
    let mut rows = Vec::with_capacity(steps / 2 + 1);
    evolve_with(qubit, spec, steps, |s| {
        if s.t().is_multiple_of(2) {
            let p0 = return_probability(s);
            let sp = survival_probability(s, qubit);
            rows.push(SurvivalRow {
                t: s.t(),
                p0,
                sp,
                ratio: sp / p0,
            });
        }
    })?;
    Ok(rows)
}

/// ⟨j⟩ and σ at every t in 0..=steps.
pub fn dispersion_series(spec: &CoinSpec, qubit: &Qubit, steps: usize) -> Result<Vec<DispersionRow>> {
    let mut rows = Vec::with_capacity(steps + 1);
    evolve_with(qubit, spec, steps, |s| {
        let m = moments(s);
        rows.push(DispersionRow {
            t: s.t(),
            mean: m.mean,
            sigma: m.sigma,
        });
    })?;
    Ok(rows)
}

/// P₀ at every t in 0..=steps.
pub fn return_series(spec: &CoinSpec, qubit: &Qubit, steps: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(steps + 1);
    evolve_with(qubit, spec, steps, |s| out.push(return_probability(s)))?;
    Ok(out)
}

/// |P₀(4k) - P₀(4k+2)| for k = 1..=k_max.
pub fn period_two_gaps(spec: &CoinSpec, qubit: &Qubit, k_max: usize) -> Result<Vec<(usize, f64)>> {
    let p = return_series(spec, qubit, 4 * k_max + 2)?;
    Ok((1..=k_max).map(|k| (4 * k, (p[4 * k] - p[4 * k + 2]).abs())).collect())
}

/// Ordinary least-squares line through (x, y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (sxy, sxx, syy) = xs.iter().zip(ys).fold((0.0, 0.0, 0.0), |(sxy, sxx, syy), (x, y)| {
        let (dx, dy) = (x - mx, y - my);
        (sxy + dx * dy, sxx + dx * dx, syy + dy * dy)
    });
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    LinearFit {
        slope,
        intercept,
        r_squared: 1.0 - ss_res / syy,
    }
}

/// `count` evenly spaced points on [lo, hi], endpoints included.
pub fn linspace(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn fourier() -> CoinSpec {
        CoinSpec::preset(CoinKind::FourierDefect, 0.0).unwrap()
    }

    #[test]
    fn trivial_t0() {
        let q = Qubit::new(1.0, 2.0).unwrap();
        let s = WalkState::new(&q, 4).unwrap();
        assert!((return_probability(&s) - 1.0).abs() < 1e-15);
        assert_eq!(position_distribution(&s).len(), 1);
        assert_eq!(moments(&s), Moments { mean: 0.0, sigma: 0.0 });
        assert!((survival_probability(&s, &q) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn odd_steps_never_return() {
        let spec = CoinSpec::preset(CoinKind::Teles, 1.2).unwrap();
        let p = return_series(&spec, &Qubit::new(0.4, 0.9).unwrap(), 41).unwrap();
        assert!(p.iter().skip(1).step_by(2).all(|&x| x == 0.0));
    }

    #[test]
    fn konno_t20_quarter_turn() {
        let spec = CoinSpec::preset(CoinKind::Konno, FRAC_PI_2).unwrap();
        for q in [Qubit::up(), Qubit::new(2.0, 5.0).unwrap()] {
            let p = return_probability(&evolve(&q, &spec, 20).unwrap());
            assert!((p - 0.458).abs() <= 1e-3, "{p}");
        }
    }

    #[test]
    fn symmetric_distributions() {
        let cases = [
            (CoinSpec::hadamard(), Qubit::new(FRAC_PI_2, FRAC_PI_2).unwrap()),
            (fourier(), Qubit::new(FRAC_PI_2, PI).unwrap()),
        ];
        for (spec, q) in cases {
            let s = evolve(&q, &spec, 100).unwrap();
            let d = position_distribution(&s);
            assert_eq!(d.len(), 201);
            assert!((d.iter().map(|r| r.p).sum::<f64>() - 1.0).abs() < 1e-10);
            for (l, r) in d.iter().zip(d.iter().rev()) {
                assert!((l.p - r.p).abs() <= 1e-10);
            }
            assert!(moments(&s).mean.abs() <= 1e-8);
        }
        // spike at the origin for the defect walk
        let s = evolve(&Qubit::new(FRAC_PI_2, PI).unwrap(), &fourier(), 100).unwrap();
        let d = position_distribution(&s);
        let top = d.iter().max_by(|a, b| a.p.total_cmp(&b.p)).unwrap();
        assert_eq!(top.j, 0);
    }

    #[test]
    fn peaks_near_ballistic_front() {
        let target = 100.0 / 2f64.sqrt();
        for (spec, q) in [
            (fourier(), Qubit::new(FRAC_PI_2, PI).unwrap()),
            (CoinSpec::hadamard(), Qubit::new(FRAC_PI_2, FRAC_PI_2).unwrap()),
        ] {
            let d = position_distribution(&evolve(&q, &spec, 100).unwrap());
            let (l, r) = outer_peaks(&d).unwrap();
            assert!((l as f64 + target).abs() <= 5.0, "{l}");
            assert!((r as f64 - target).abs() <= 5.0, "{r}");
        }
    }

    #[test]
    fn peaks_mirror() {
        let spec = CoinSpec::hadamard();
        let d = position_distribution(&evolve(&Qubit::up(), &spec, 60).unwrap());
        let (l, r) = outer_peaks(&d).unwrap();
        let mirrored: Vec<_> = d.iter().rev().map(|row| DistributionRow { j: -row.j, p: row.p }).collect();
        assert_eq!(outer_peaks(&mirrored).unwrap(), (-r, -l));
    }

    #[test]
    fn peaks_errors() {
        let flat: Vec<_> = (-20..=20).map(|j| DistributionRow { j, p: 1.0 / 41.0 }).collect();
        assert!(matches!(outer_peaks(&flat), Err(Error::FlatDistribution { .. })));
        let short: Vec<_> = (-3..=3).map(|j| DistributionRow { j, p: 0.1 }).collect();
        assert!(matches!(outer_peaks(&short), Err(Error::DistributionTooShort(3))));
    }

    #[test]
    fn survival_bounded_by_return() {
        let spec = CoinSpec::preset(CoinKind::Wojcik, 2.2).unwrap();
        let q = Qubit::new(0.8, 4.0).unwrap();
        evolve_with(&q, &spec, 300, |s| {
            assert!(survival_probability(s, &q) <= return_probability(s) + 1e-15);
        })
        .unwrap();
    }

    #[test]
    fn survival_ratio_one_for_real_equator() {
        for q in [Qubit::new(FRAC_PI_2, PI).unwrap(), Qubit::new(FRAC_PI_2, 0.0).unwrap()] {
            let rows = survival_series(&fourier(), &q, 200).unwrap();
            assert!(rows.iter().skip(1).all(|r| (r.ratio - 1.0).abs() <= 1e-9));
            assert!(rows.iter().all(|r| r.t % 2 == 0));
        }
    }

    #[test]
    fn ballistic_sigma() {
        let rows = dispersion_series(&fourier(), &Qubit::new(FRAC_PI_2, PI).unwrap(), 1000).unwrap();
        let ratios: Vec<f64> = rows[100..].iter().map(|r| r.sigma / r.t as f64).collect();
        let (lo, hi) = ratios.iter().fold((f64::MAX, f64::MIN), |(l, h), &x| (l.min(x), h.max(x)));
        assert!((hi - lo) / lo < 0.02);
    }

    #[test]
    fn sweeps_deterministic_and_ordered() {
        let grid = linspace(17, 0.1 * PI, 1.9 * PI);
        let q = Qubit::new(0.3, 1.0).unwrap();
        let a = sweep_omega(CoinKind::Wojcik, &q, 60, &grid, Execution::Parallel).unwrap();
        let b = sweep_omega(CoinKind::Wojcik, &q, 60, &grid, Execution::Sequential).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().zip(&grid).all(|(r, w)| r.omega == *w && r.c.is_none()));
        assert!(matches!(
            sweep_omega(CoinKind::Konno, &q, 10, &[], Execution::Parallel),
            Err(Error::EmptyGrid)
        ));
    }

    #[test]
    fn konno_sweep_carries_limit() {
        let rows = sweep_omega(CoinKind::Konno, &Qubit::up(), 100, &linspace(32, 0.1 * PI, 1.9 * PI), Execution::Parallel)
            .unwrap();
        for r in rows {
            assert!(r.delta.unwrap().abs() <= 1e-2);
        }
    }

    #[test]
    fn teles_equator_profile_beats_pole() {
        let grid = linspace(181, 0.05 * PI, 1.95 * PI);
        let best = |q: Qubit| {
            sweep_omega(CoinKind::Teles, &q, 1000, &grid, Execution::Parallel)
                .unwrap()
                .iter()
                .map(|r| r.p0)
                .fold(0.0, f64::max)
        };
        assert!(best(Qubit::new(FRAC_PI_2, PI).unwrap()) > best(Qubit::up()));
    }

    #[test]
    fn bloch_scan_shape() {
        let alphas = [0.0, 1.0];
        let betas = [0.0, 1.0, 2.0, 6.0];
        let cells = bloch_scan(CoinKind::Wojcik, 1.1, 40, &alphas, &betas, Execution::Parallel).unwrap();
        assert_eq!(cells.len(), 8);
        assert_eq!((cells[5].alpha, cells[5].beta), (1.0, 1.0));
        // β is a pure phase at the pole
        assert!(cells[..4].iter().all(|c| (c.p0 - cells[0].p0).abs() <= 1e-12));
        let konno = bloch_scan(CoinKind::Konno, 2.0, 40, &alphas, &betas, Execution::Sequential).unwrap();
        assert!(konno.iter().all(|c| (c.p0 - konno[0].p0).abs() <= 1e-12));
    }

    #[test]
    fn linear_fit_exact_line() {
        let xs: Vec<f64> = (0..10).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x - 1.0).collect();
        let fit = linear_fit(&xs, &ys);
        assert!((fit.slope - 3.0).abs() < 1e-12 && (fit.intercept + 1.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(linspace(3, 0.0, 1.0), vec![0.0, 0.5, 1.0]);
    }
}
