use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{to_f64, GaussianInt, LaurentPoly};
use crate::error::{Error, Result};

/// Exact value num / 2^exp, kept with `num` odd unless `exp` is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_ratio(num: i64, exp: u32) -> Self {
        Dyadic::new(BigInt::from(num), exp)
    }

    pub fn zero() -> Self {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num.is_even() {
            self.num >>= 1;
            self.exp -= 1;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.num) * 2f64.powi(-(self.exp as i32))
    }
}

impl fmt::Display for Dyadic {
    /// `num/2^exp`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

/// Exact trigonometric polynomial
/// (Σ_{n≥0} cos_n cos(nω) + Σ_{n≥1} sin_n sin(nω)) / 2^d
/// with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrigSeries {
    denom_exp: u32,
    cos: BTreeMap<u64, BigInt>,
    sin: BTreeMap<u64, BigInt>,
}

impl TrigSeries {
    pub fn zero() -> Self {
        TrigSeries::default()
    }

    pub fn constant(value: Dyadic) -> Self {
        let mut s = TrigSeries {
            denom_exp: value.exp,
            ..Default::default()
        };
        s.cos.insert(0, value.num);
        s.normalize();
        s
    }

    /// cos(nω).
    pub fn cos(n: u64) -> Self {
        let mut s = TrigSeries::zero();
        s.cos.insert(n, BigInt::one());
        s
    }

    /// sin(nω); zero for n = 0.
    pub fn sin(n: u64) -> Self {
        let mut s = TrigSeries::zero();
        if n > 0 {
            s.sin.insert(n, BigInt::one());
        }
        s
    }

    /// Real trigonometric form of `poly / 2^denom_exp` with z = e^{iω}.
    ///
    /// Fails unless the polynomial is real on the unit circle, i.e. its
    /// constant term is real and c₋ₙ = conj(cₙ).
    pub fn from_laurent(poly: &LaurentPoly, denom_exp: u32) -> Result<Self> {
        let mut s = TrigSeries {
            denom_exp,
            ..Default::default()
        };
        for (e, c) in poly.terms() {
            let mirror = poly.coeff(-e);
            if mirror != c.conj() {
                return Err(Error::SeriesDefect(format!(
                    "coefficient of z^{e} is {c} but z^{} carries {mirror}",
                    -e
                )));
            }
            match e.cmp(&0) {
                std::cmp::Ordering::Equal => {
                    s.cos.insert(0, c.re.clone());
                }
                std::cmp::Ordering::Greater => {
                    // c zⁿ + c̄ z⁻ⁿ = 2 Re(c) cos nω - 2 Im(c) sin nω
                    s.cos.insert(e as u64, &c.re * BigInt::from(2));
                    s.sin.insert(e as u64, -(&c.im * BigInt::from(2)));
                }
                std::cmp::Ordering::Less => {}
            }
        }
        s.normalize();
        Ok(s)
    }

    /// Laurent form: returns (poly, e) with self = poly / 2^e.
    pub fn to_laurent(&self) -> (LaurentPoly, u32) {
        let mut terms = Vec::new();
        for (n, c) in &self.cos {
            if *n == 0 {
                terms.push((0i64, GaussianInt::new(c * BigInt::from(2), BigInt::zero())));
            } else {
                let n = *n as i64;
                terms.push((n, GaussianInt::new(c.clone(), BigInt::zero())));
                terms.push((-n, GaussianInt::new(c.clone(), BigInt::zero())));
            }
        }
        for (n, s) in &self.sin {
            // s sin nω = -i s/2 zⁿ + i s/2 z⁻ⁿ
            let n = *n as i64;
            terms.push((n, GaussianInt::new(BigInt::zero(), -s.clone())));
            terms.push((-n, GaussianInt::new(BigInt::zero(), s.clone())));
        }
        (LaurentPoly::from_terms(terms), self.denom_exp + 1)
    }

    fn normalize(&mut self) {
        self.cos.retain(|_, c| !c.is_zero());
        self.sin.retain(|n, c| *n > 0 && !c.is_zero());
        if self.cos.is_empty() && self.sin.is_empty() {
            self.denom_exp = 0;
            return;
        }
        while self.denom_exp > 0 && self.cos.values().chain(self.sin.values()).all(|c| c.is_even()) {
            for c in self.cos.values_mut().chain(self.sin.values_mut()) {
                *c >>= 1;
            }
            self.denom_exp -= 1;
        }
    }

    fn rescaled(&self, denom_exp: u32) -> (BTreeMap<u64, BigInt>, BTreeMap<u64, BigInt>) {
        let k = denom_exp - self.denom_exp;
        let up = |m: &BTreeMap<u64, BigInt>| m.iter().map(|(n, c)| (*n, c << k)).collect();
        (up(&self.cos), up(&self.sin))
    }

    pub fn add(&self, other: &TrigSeries) -> TrigSeries {
        let d = self.denom_exp.max(other.denom_exp);
        let (mut cos, mut sin) = self.rescaled(d);
        let (oc, os) = other.rescaled(d);
        for (n, c) in oc {
            *cos.entry(n).or_insert_with(BigInt::zero) += c;
        }
        for (n, s) in os {
            *sin.entry(n).or_insert_with(BigInt::zero) += s;
        }
        let mut out = TrigSeries { denom_exp: d, cos, sin };
        out.normalize();
        out
    }

    pub fn neg(&self) -> TrigSeries {
        TrigSeries {
            denom_exp: self.denom_exp,
            cos: self.cos.iter().map(|(n, c)| (*n, -c)).collect(),
            sin: self.sin.iter().map(|(n, c)| (*n, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &TrigSeries) -> TrigSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: i64) -> TrigSeries {
        let f = BigInt::from(factor);
        let mut out = TrigSeries {
            denom_exp: self.denom_exp,
            cos: self.cos.iter().map(|(n, c)| (*n, c * &f)).collect(),
            sin: self.sin.iter().map(|(n, c)| (*n, c * &f)).collect(),
        };
        out.normalize();
        out
    }

    /// Product, re-expanded in the cos/sin basis.
    pub fn mul(&self, other: &TrigSeries) -> TrigSeries {
        let (p, dp) = self.to_laurent();
        let (q, dq) = other.to_laurent();
        TrigSeries::from_laurent(&(&p * &q), dp + dq).expect("product of real series is real")
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn cos_coeff(&self, n: u64) -> Dyadic {
        self.cos
            .get(&n)
            .map_or_else(Dyadic::zero, |c| Dyadic::new(c.clone(), self.denom_exp))
    }

    pub fn sin_coeff(&self, n: u64) -> Dyadic {
        self.sin
            .get(&n)
            .map_or_else(Dyadic::zero, |c| Dyadic::new(c.clone(), self.denom_exp))
    }

    /// Raw integer numerators over 2^d.
    pub fn cos_numerators(&self) -> &BTreeMap<u64, BigInt> {
        &self.cos
    }

    pub fn sin_numerators(&self) -> &BTreeMap<u64, BigInt> {
        &self.sin
    }

    pub fn has_sin_terms(&self) -> bool {
        !self.sin.is_empty()
    }

    pub fn has_cos_terms(&self) -> bool {
        !self.cos.is_empty()
    }

    pub fn degree(&self) -> u64 {
        let c = self.cos.keys().next_back().copied().unwrap_or(0);
        let s = self.sin.keys().next_back().copied().unwrap_or(0);
        c.max(s)
    }

    /// Cos-part only.
    pub fn cos_part(&self) -> TrigSeries {
        let mut out = TrigSeries {
            denom_exp: self.denom_exp,
            cos: self.cos.clone(),
            sin: BTreeMap::new(),
        };
        out.normalize();
        out
    }

    pub fn eval(&self, omega: f64) -> f64 {
        self.eval_partial(omega, u64::MAX)
    }

    /// Sum of the terms with n ≤ n_max.
    pub fn eval_partial(&self, omega: f64, n_max: u64) -> f64 {
        let c: f64 = self
            .cos
            .range(..=n_max)
            .map(|(n, c)| to_f64(c) * (*n as f64 * omega).cos())
            .sum();
        let s: f64 = self
            .sin
            .range(..=n_max)
            .map(|(n, c)| to_f64(c) * (*n as f64 * omega).sin())
            .sum();
        (c + s) * 2f64.powi(-(self.denom_exp as i32))
    }

    pub fn is_nonnegative_sample(&self, samples: usize) -> bool {
        (0..samples).all(|i| self.eval(std::f64::consts::TAU * i as f64 / samples as f64) >= -1e-12)
    }
}

impl fmt::Display for TrigSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: &BigInt, label: String| -> fmt::Result {
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{sign}{}/2^{}{label}", c.abs(), self.denom_exp)
        };
        for (n, c) in &self.cos {
            let label = if *n == 0 { String::new() } else { format!(" cos({n}w)") };
            term(f, c, label)?;
        }
        for (n, c) in &self.sin {
            term(f, c, format!(" sin({n}w)"))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
