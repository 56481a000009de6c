use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{ToPrimitive, Zero};

/// Complex number with arbitrary-precision integer parts.
pub type GaussianInt = Complex<BigInt>;

pub fn gaussian(re: i64, im: i64) -> GaussianInt {
    Complex::new(BigInt::from(re), BigInt::from(im))
}

/// Finite sum Σ c_n zⁿ over n ∈ ℤ with Gaussian-integer coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, GaussianInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(exp: i64, coeff: GaussianInt) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn constant(coeff: GaussianInt) -> Self {
        LaurentPoly::monomial(0, coeff)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, GaussianInt)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> GaussianInt {
        self.terms.get(&exp).cloned().unwrap_or_else(GaussianInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Largest |n| with a nonzero coefficient, or 0 for the zero polynomial.
    pub fn max_abs_exponent(&self) -> i64 {
        let lo = self.terms.keys().next().copied().unwrap_or(0);
        let hi = self.terms.keys().next_back().copied().unwrap_or(0);
        lo.abs().max(hi.abs())
    }

    fn add_term(&mut self, exp: i64, coeff: GaussianInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(GaussianInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &GaussianInt) -> Self {
        if factor.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    /// Conjugate every coefficient and negate every exponent. On |z| = 1
    /// this is the complex conjugate of the polynomial's value, so
    /// `p * p.conj_reflect()` is |p(e^{iω})|².
    pub fn conj_reflect(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.conj())).collect(),
        }
    }

    /// Value at z = e^{iω}.
    pub fn eval(&self, omega: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let c = Complex64::new(to_f64(&c.re), to_f64(&c.im));
                c * Complex64::from_polar(1.0, *e as f64 * omega)
            })
            .sum()
    }
}

pub(crate) fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, re, im)| (e, gaussian(re, im))))
    }

    #[test]
    fn hand_product() {
        // (1 + i z)(1 - i z⁻¹) = 2 + i z - i z⁻¹
        let p = poly(&[(0, 1, 0), (1, 0, 1)]);
        let q = poly(&[(0, 1, 0), (-1, 0, -1)]);
        assert_eq!(&p * &q, poly(&[(0, 2, 0), (1, 0, 1), (-1, 0, -1)]));
    }

    #[test]
    fn zero_identity_and_pruning() {
        let p = poly(&[(3, 2, -1), (-2, 0, 5)]);
        assert_eq!(&p + &LaurentPoly::zero(), p);
        assert!((&p - &p).is_zero());
        assert_eq!(poly(&[(1, 0, 0)]).len(), 0);
        assert_eq!(p.max_abs_exponent(), 3);
    }

    #[test]
    fn conj_reflect_examples() {
        assert_eq!(poly(&[(1, 0, 1)]).conj_reflect(), poly(&[(-1, 0, -1)]));
        let sym = poly(&[(0, 3, 0), (2, 1, 0), (-2, 1, 0)]);
        assert_eq!(sym.conj_reflect(), sym);
    }

    #[test]
    fn modulus_square_is_real_nonnegative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let p = poly(&[(-3, 2, -1), (0, 1, 4), (1, -5, 0), (4, 0, 3)]);
        let sq = &p * &p.conj_reflect();
        for _ in 0..16 {
            let w: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let v = sq.eval(w);
            assert!(v.im.abs() < 1e-10);
            assert!(v.re >= 0.0);
            assert!((v.re - p.eval(w).norm_sqr()).abs() < 1e-9);
        }
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..6, -20i64..20, -20i64..20), 0..8).prop_map(|v| poly(&v))
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn eval_is_a_homomorphism(p in arb_poly(), q in arb_poly(), w in 0.0f64..6.3) {
            let lhs = (&p * &q).eval(w);
            let rhs = p.eval(w) * q.eval(w);
            prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
            prop_assert!((p.conj_reflect().eval(w) - p.eval(w).conj()).norm() <= 1e-9);
        }
    }
}
