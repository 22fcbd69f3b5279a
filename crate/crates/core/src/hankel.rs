//! Hankel matrices and exact determinants.
//!
//! The production determinant is fraction-free Bareiss elimination on an
//! integer-scaled copy of the matrix; the oracle is cofactor expansion,
//! capped at size 7. Hankel transforms can also be read off a tau orbit via
//! the product formula H_n = prod_{i<n} a_i^(n-i), which gives an independent
//! second route to the same values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cf::{tau_orbit, CFParams};
use crate::rational::Rational;
use crate::series::PowerSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HankelError {
    #[error("series order {got} is too small: need at least {needed} coefficients past x^0")]
    InsufficientOrder { needed: usize, got: usize },
    #[error("naive determinant is capped at size {max}, got {size}")]
    TooLarge { size: usize, max: usize },
    #[error("the leading coefficient a must be nonzero")]
    ZeroLeadingCoefficient,
}

/// A square matrix of exact rationals. Size 0 is the empty matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    size: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        RationalMatrix { size, entries }
    }

    /// Build from rows; panics unless the grid is square.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let size = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == size),
            "matrix rows must all have length {size}"
        );
        RationalMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.size + j]
    }

    /// Multiply one row by a scalar (used by scaling tests).
    pub fn scale_row(&mut self, i: usize, factor: &Rational) {
        for j in 0..self.size {
            self.entries[i * self.size + j] = &self.entries[i * self.size + j] * factor;
        }
    }
}

/// The n-by-n Hankel matrix of a series: entry (i, j) is the coefficient of
/// x^(i+j). Needs the series known through order 2n-2; n = 0 is the empty
/// matrix.
pub fn hankel_matrix(s: &PowerSeries, n: usize) -> Result<RationalMatrix, HankelError> {
    if n > 0 {
        let needed = 2 * n - 2;
        if s.order() < needed {
            return Err(HankelError::InsufficientOrder {
                needed,
                got: s.order(),
            });
        }
    }
    Ok(RationalMatrix::from_fn(n, |i, j| s.coeff(i + j).clone()))
}

/// Exact determinant by fraction-free Bareiss elimination.
///
/// Each row is first scaled by the lcm of its denominators so the elimination
/// runs over integers with exact divisions; the scaling product is divided
/// out at the end. The empty matrix has determinant 1.
pub fn det_bareiss(m: &RationalMatrix) -> Rational {
    let n = m.size();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut work: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row_lcm = BigInt::one();
        for j in 0..n {
            row_lcm = row_lcm.lcm(m.get(i, j).denom());
        }
        let row = (0..n)
            .map(|j| {
                let entry = m.get(i, j);
                entry.numer() * (&row_lcm / entry.denom())
            })
            .collect();
        scale *= &row_lcm;
        work.push(row);
    }

    let mut sign = false;
    let mut prev_pivot = BigInt::one();
    for k in 0..n - 1 {
        if work[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !work[r][k].is_zero()) else {
                return Rational::zero();
            };
            work.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                // Fraction-free update: division by the previous pivot is exact.
                let num = &work[i][j] * &work[k][k] - &work[i][k] * &work[k][j];
                work[i][j] = num / &prev_pivot;
            }
            work[i][k] = BigInt::zero();
        }
        prev_pivot = work[k][k].clone();
    }
    let mut det_int = work[n - 1][n - 1].clone();
    if sign {
        det_int = -det_int;
    }
    Rational::new(det_int, scale)
}

/// Determinant by cofactor expansion along the first row. Oracle only:
/// factorial cost, capped at size 7.
pub fn det_naive(m: &RationalMatrix) -> Result<Rational, HankelError> {
    const MAX: usize = 7;
    if m.size() > MAX {
        return Err(HankelError::TooLarge {
            size: m.size(),
            max: MAX,
        });
    }
    Ok(det_naive_inner(m))
}

fn det_naive_inner(m: &RationalMatrix) -> Rational {
    let n = m.size();
    if n == 0 {
        return Rational::one();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut det = Rational::zero();
    for col in 0..n {
        if m.get(0, col).is_zero() {
            continue;
        }
        let minor = RationalMatrix::from_fn(n - 1, |i, j| {
            m.get(i + 1, if j < col { j } else { j + 1 }).clone()
        });
        let term = m.get(0, col) * &det_naive_inner(&minor);
        det = if col % 2 == 0 { det + term } else { det - term };
    }
    det
}

/// The Hankel transform H_0, ..., H_nmax of a series, H_0 = 1, computed with
/// [`det_bareiss`]. Needs the series known through order 2*nmax - 2.
pub fn hankel_transform(s: &PowerSeries, n_max: usize) -> Result<Vec<Rational>, HankelError> {
    if n_max > 0 {
        let needed = 2 * n_max - 2;
        if s.order() < needed {
            return Err(HankelError::InsufficientOrder {
                needed,
                got: s.order(),
            });
        }
    }
    (0..=n_max)
        .map(|n| Ok(det_bareiss(&hankel_matrix(s, n)?)))
        .collect()
}

/// A Hankel transform computed from a tau orbit, possibly cut short by a
/// breakdown. On breakdown at step m only H_0..H_m are available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitHankel {
    pub values: Vec<Rational>,
    pub breakdown: Option<usize>,
}

/// Hankel transform via the orbit product formula H_n = prod_{i<n} a_i^(n-i).
///
/// This route never computes a determinant; it agrees with
/// [`hankel_transform`] of the corresponding series everywhere both are
/// defined.
pub fn hankel_via_orbit(p: &CFParams, n_max: usize) -> Result<OrbitHankel, HankelError> {
    if p.a.is_zero() {
        return Err(HankelError::ZeroLeadingCoefficient);
    }
    let orbit = tau_orbit(p, n_max);
    let mut values = vec![Rational::one()];
    let mut prefix = Rational::one(); // a_0 a_1 ... a_{n-1}
    for n in 1..=n_max.min(orbit.len()) {
        // H_n = H_{n-1} * (a_0 a_1 ... a_{n-1})
        prefix = &prefix * &orbit.steps()[n - 1].a;
        let next = values.last().expect("H_0 present") * &prefix;
        values.push(next);
    }
    Ok(OrbitHankel {
        values,
        breakdown: orbit.breakdown(),
    })
}
