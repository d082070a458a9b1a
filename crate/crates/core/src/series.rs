//! Truncated power series arithmetic.
//!
//! A [`Series`] holds the first `len` Taylor coefficients of a function about
//! some expansion point. Products are truncated Cauchy products, quotients use
//! the usual division recurrence, and `sin`/`cos`/`sinh`/`cosh` of a series use
//! the coupled first-order recurrences obtained from differentiating the
//! composition.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::real::{Analytic, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Real> Series<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        Self { coeffs }
    }

    /// The identity function `t0 + ξ` expanded about `ξ = 0`.
    pub fn variable(t0: T, len: usize) -> Self {
        let mut coeffs = vec![T::zero(); len.max(1)];
        coeffs[0] = t0;
        if len > 1 {
            coeffs[1] = T::one();
        }
        Self { coeffs }
    }

    pub fn constant_series(c: T, len: usize) -> Self {
        let mut coeffs = vec![T::zero(); len.max(1)];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).copied().unwrap_or_else(T::zero)
    }

    /// k-th derivative at the expansion point.
    pub fn derivative_at_origin(&self, k: usize) -> T {
        let mut factorial = T::one();
        for j in 2..=k {
            factorial = factorial * T::lit(j as f64);
        }
        self.coeff(k) * factorial
    }

    /// Value of the truncated polynomial at offset `xi`.
    pub fn eval(&self, xi: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * xi + c)
    }

    fn zip_len(&self, other: &Self) -> usize {
        self.len().min(other.len())
    }

    fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&c| f(c)).collect() }
    }

    /// Returns (sin(a·s), cos(a·s)) or (sinh(a·s), cosh(a·s)).
    fn trig_pair(&self, a: T, hyperbolic: bool) -> (Self, Self) {
        let n = self.len();
        let u: Vec<T> = self.coeffs.iter().map(|&c| a * c).collect();
        let mut s = vec![T::zero(); n];
        let mut c = vec![T::zero(); n];
        if hyperbolic {
            s[0] = u[0].sinh();
            c[0] = u[0].cosh();
        } else {
            s[0] = u[0].sin();
            c[0] = u[0].cos();
        }
        for k in 1..n {
            let mut sk = T::zero();
            let mut ck = T::zero();
            for j in 1..=k {
                let w = T::lit(j as f64) * u[j];
                sk = sk + w * c[k - j];
                ck = ck + w * s[k - j];
            }
            let inv_k = T::one() / T::lit(k as f64);
            s[k] = sk * inv_k;
            c[k] = if hyperbolic { ck * inv_k } else { -ck * inv_k };
        }
        (Self { coeffs: s }, Self { coeffs: c })
    }
}

impl<T: Real> Add for Series<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.zip_len(&rhs);
        Self { coeffs: (0..n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect() }
    }
}

impl<T: Real> Sub for Series<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let n = self.zip_len(&rhs);
        Self { coeffs: (0..n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect() }
    }
}

impl<T: Real> Mul for Series<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let n = self.zip_len(&rhs);
        let coeffs = (0..n)
            .map(|k| (0..=k).fold(T::zero(), |acc, j| acc + self.coeffs[j] * rhs.coeffs[k - j]))
            .collect();
        Self { coeffs }
    }
}

impl<T: Real> Div for Series<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = self.zip_len(&rhs);
        let b0 = rhs.coeffs[0];
        let mut q = vec![T::zero(); n];
        for k in 0..n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc = acc - rhs.coeffs[j] * q[k - j];
            }
            q[k] = acc / b0;
        }
        Self { coeffs: q }
    }
}

impl<T: Real> Neg for Series<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|c| -c)
    }
}

impl<T: Real> Add<T> for Series<T> {
    type Output = Self;
    fn add(mut self, rhs: T) -> Self {
        self.coeffs[0] = self.coeffs[0] + rhs;
        self
    }
}

impl<T: Real> Sub<T> for Series<T> {
    type Output = Self;
    fn sub(mut self, rhs: T) -> Self {
        self.coeffs[0] = self.coeffs[0] - rhs;
        self
    }
}

impl<T: Real> Mul<T> for Series<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        self.map(|c| c * rhs)
    }
}

impl<T: Real> Div<T> for Series<T> {
    type Output = Self;
    fn div(self, rhs: T) -> Self {
        self.map(|c| c / rhs)
    }
}

impl<T: Real> Analytic<T> for Series<T> {
    fn sin_of(&self, a: T) -> Self {
        self.trig_pair(a, false).0
    }
    fn cos_of(&self, a: T) -> Self {
        self.trig_pair(a, false).1
    }
    fn sinh_of(&self, a: T) -> Self {
        self.trig_pair(a, true).0
    }
    fn cosh_of(&self, a: T) -> Self {
        self.trig_pair(a, true).1
    }
    fn recip(&self) -> Self {
        Self::constant_series(T::one(), self.len()) / self.clone()
    }
    fn constant(&self, c: T) -> Self {
        Self::constant_series(c, self.len())
    }
}
