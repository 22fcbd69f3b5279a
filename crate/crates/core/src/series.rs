//! Truncated formal power series with exact rational coefficients.
//!
//! A `PowerSeries` of order N stores exactly the N+1 coefficients of
//! x^0 .. x^N. Binary operations truncate to the smaller order of the two
//! operands, so the order of a result is always an honest claim about which
//! coefficients are known. Series-level equality in the mathematical sense
//! (agreement up to the smaller truncation order) is [`PowerSeries::agrees_with`];
//! `PartialEq` is plain structural equality.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("cannot invert a series whose constant term is zero")]
    ZeroConstantTerm,
    #[error("the defining equation has no unique power-series solution")]
    NotContractive,
}

/// A formal power series truncated at order N (coefficients of x^0 .. x^N).
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// The zero series at the given truncation order.
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    /// The constant series 1 at the given truncation order.
    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(value: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    /// The series x (truncated away entirely if `order == 0`).
    pub fn x(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    /// c·x^k; coefficients beyond the truncation order are dropped.
    pub fn monomial(coeff: Rational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = coeff;
        }
        s
    }

    /// Build from explicit coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector (a series always has at least a constant term).
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least order 0");
        PowerSeries { coeffs }
    }

    /// Convenience constructor for integer coefficient lists.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&n| Rational::from_int(n)).collect())
    }

    /// Truncation order N: coefficients 0..=N are meaningful.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of x^k.
    ///
    /// Panics if `k` exceeds the truncation order: that coefficient is unknown.
    pub fn coeff(&self, k: usize) -> &Rational {
        assert!(
            k <= self.order(),
            "coefficient of x^{k} requested from a series truncated at order {}",
            self.order()
        );
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Coefficient-wise equality up to the smaller of the two truncation orders.
    pub fn agrees_with(&self, other: &PowerSeries) -> bool {
        let n = self.order().min(other.order());
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    /// Coefficient-wise equality through x^n; false if either series is shorter.
    pub fn eq_through(&self, other: &PowerSeries, n: usize) -> bool {
        if self.order() < n || other.order() < n {
            return false;
        }
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    /// Restrict to a smaller truncation order.
    ///
    /// Panics if `order` exceeds the current order (those coefficients are unknown).
    pub fn truncated(&self, order: usize) -> PowerSeries {
        assert!(
            order <= self.order(),
            "cannot extend a series truncated at order {} to order {order}",
            self.order()
        );
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Coefficient-wise sum at order min(order(self), order(other)).
    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        }
    }

    pub fn neg(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Cauchy product at order min(order(self), order(other)).
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        PowerSeries { coeffs }
    }

    /// Multiplicative inverse through the truncation order.
    pub fn inv(&self) -> Result<PowerSeries, SeriesError> {
        let c0 = self.constant_term();
        let inv0 = c0.recip().ok_or(SeriesError::ZeroConstantTerm)?;
        let n = self.order();
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[0] = inv0.clone();
        // c[k] = -1/a0 * sum_{i=1..=k} a[i] c[k-i]
        for k in 1..=n {
            let mut sum = Rational::zero();
            for i in 1..=k {
                if self.coeffs[i].is_zero() || coeffs[k - i].is_zero() {
                    continue;
                }
                sum = sum + &self.coeffs[i] * &coeffs[k - i];
            }
            coeffs[k] = -(&inv0 * &sum);
        }
        Ok(PowerSeries { coeffs })
    }

    /// Integer power by repeated squaring; exponent 0 gives the constant 1.
    pub fn pow(&self, exp: u32) -> PowerSeries {
        let mut result = PowerSeries::one(self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiply by x^k, keeping the same truncation order.
    pub fn mul_x_pow(&self, k: usize) -> PowerSeries {
        let n = self.order();
        let mut coeffs = vec![Rational::zero(); n + 1];
        if k <= n {
            coeffs[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        PowerSeries { coeffs }
    }

    /// Divide by x^k. Returns `None` unless the first `k` coefficients vanish;
    /// the order drops by `k`.
    pub fn div_x_pow(&self, k: usize) -> Option<PowerSeries> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(PowerSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] + O(x^{})", self.order() + 1)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::add(self, rhs)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::sub(self, rhs)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::mul(self, rhs)
    }
}

/// Solve G = map(G) for the unique power series fixed point through `order`.
///
/// The map must gain at least one order of x-adic agreement per application.
/// Iteration starts from the zero series and runs `order + 2` times; the last
/// two iterates must agree through `order`. Because stabilization alone cannot
/// distinguish a genuine contraction from a map that merely holds the zero
/// series fixed (`G -> G` stabilizes instantly but has no unique solution),
/// the candidate is then probed for competing fixed points at two offsets:
/// candidate + 1 and candidate + x^order. If either probe is also fixed
/// through `order`, the solution is not unique and `NotContractive` is
/// returned. A map application that fails on a probe just disqualifies that
/// probe as a fixed point.
pub fn fixed_point_solve<E, F>(mut map: F, order: usize) -> Result<PowerSeries, E>
where
    E: From<SeriesError>,
    F: FnMut(&PowerSeries) -> Result<PowerSeries, E>,
{
    let mut prev = PowerSeries::zero(order);
    let mut cur = PowerSeries::zero(order);
    for _ in 0..order + 2 {
        let next = map(&cur)?;
        assert!(
            next.order() >= order,
            "fixed-point map shortened the series from order {order} to {}",
            next.order()
        );
        prev = cur;
        cur = next.truncated(order);
    }
    if !cur.eq_through(&prev, order) {
        return Err(SeriesError::NotContractive.into());
    }
    for probe in [
        PowerSeries::one(order),
        PowerSeries::monomial(Rational::one(), order, order),
    ] {
        let shifted = cur.add(&probe);
        if let Ok(image) = map(&shifted) {
            if image.eq_through(&shifted, order) {
                return Err(SeriesError::NotContractive.into());
            }
        }
    }
    Ok(cur)
}
