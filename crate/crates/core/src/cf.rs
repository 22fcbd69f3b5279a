//! The canonical quadratic continued-fraction form, the quadratic
//! transformation tau with its six-parameter recursion, orbit generation,
//! canonical-form fitting, and the Somos-4 certificate machinery.
//!
//! The canonical form is
//!
//! ```text
//! F(x) = (a + b x) / (1 + c x + d x^2 + x^2 (e + f x) F(x))
//! ```
//!
//! For `a != 0` the transformation tau maps one such form to another while
//! shifting the Hankel transform: H_n(F) = a^n H_{n-1}(tau(F)). Iterating tau
//! yields an orbit whose leading coefficients determine every Hankel
//! determinant as H_n = prod_{i<n} a_i^(n-i).

use thiserror::Error;

use crate::rational::Rational;
use crate::series::{fixed_point_solve, PowerSeries, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CfError {
    #[error("the leading coefficient a must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("the parameter tuple is not in Somos-certificate form (requires e = -1)")]
    WrongForm,
    #[error("orbit index {index} is outside the available steps 0..{len}")]
    IndexOutOfOrbit { index: usize, len: usize },
    #[error("orbit value a_{index} is zero and appears as a divisor")]
    ZeroDivisor { index: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The six parameters (a, b, c, d, e, f) of the canonical quadratic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
    pub f: Rational,
}

impl CFParams {
    pub fn new(
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
        e: Rational,
        f: Rational,
    ) -> Self {
        CFParams { a, b, c, d, e, f }
    }

    /// Integer shorthand, mostly for tests: `CFParams::from_ints([1, -1, -2, -1, -1, 1])`.
    pub fn from_ints(v: [i64; 6]) -> Self {
        CFParams {
            a: Rational::from_int(v[0]),
            b: Rational::from_int(v[1]),
            c: Rational::from_int(v[2]),
            d: Rational::from_int(v[3]),
            e: Rational::from_int(v[4]),
            f: Rational::from_int(v[5]),
        }
    }
}

/// The orbit of a parameter tuple under tau.
///
/// Step n holds (a_n, b_n, c_n, d_n, e_n, f_n). Every stored step has
/// a_n != 0: the orbit stops *before* a step with zero leading coefficient
/// and records that index in `breakdown`. Breakdown is data, not an error —
/// it corresponds to a vanishing Hankel determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauOrbit {
    steps: Vec<CFParams>,
    breakdown: Option<usize>,
}

impl TauOrbit {
    pub fn steps(&self) -> &[CFParams] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step(&self, n: usize) -> Option<&CFParams> {
        self.steps.get(n)
    }

    /// Index of the first zero leading coefficient, if the orbit stopped early.
    pub fn breakdown(&self) -> Option<usize> {
        self.breakdown
    }

    fn require_step(&self, n: usize) -> Result<&CFParams, CfError> {
        self.steps.get(n).ok_or(CfError::IndexOutOfOrbit {
            index: n,
            len: self.steps.len(),
        })
    }
}

/// The (alpha, beta) Somos-4 certificate of a parameter tuple with e = -1,
/// together with the derived first-step values a_1 and f_1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SomosCertificate {
    pub alpha: Rational,
    pub beta: Rational,
    pub a1: Rational,
    pub f1: Rational,
}

/// The unique power-series solution of the canonical defining equation,
/// truncated at `order`. Its constant term equals `a`.
///
/// The defining map is contractive for every parameter tuple because the
/// F-dependence enters through an x^2 factor, so the fixed-point solver
/// cannot legitimately fail here.
pub fn series_from_cf(p: &CFParams, order: usize) -> Result<PowerSeries, CfError> {
    let numer = {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = p.a.clone();
        if order >= 1 {
            coeffs[1] = p.b.clone();
        }
        PowerSeries::from_coeffs(coeffs)
    };
    let cx = PowerSeries::monomial(p.c.clone(), 1, order);
    let dx2 = PowerSeries::monomial(p.d.clone(), 2, order);
    let ef = {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = p.e.clone();
        if order >= 1 {
            coeffs[1] = p.f.clone();
        }
        PowerSeries::from_coeffs(coeffs)
    };
    fixed_point_solve(
        |cur: &PowerSeries| -> Result<PowerSeries, CfError> {
            let tail = ef.mul(cur).mul_x_pow(2);
            let denom = PowerSeries::one(order).add(&cx).add(&dx2).add(&tail);
            Ok(numer.mul(&denom.inv()?))
        },
        order,
    )
}

/// One application of the quadratic transformation.
///
/// The image always has e' = -1, c' = c and f' = -b/a.
pub fn tau_transform(p: &CFParams) -> Result<CFParams, CfError> {
    if p.a.is_zero() {
        return Err(CfError::ZeroLeadingCoefficient);
    }
    let (a, b, c, d, e, f) = (&p.a, &p.b, &p.c, &p.d, &p.e, &p.f);
    let a2 = a * a;
    let a3 = &a2 * a;
    let a4 = &a3 * a;
    let b2 = b * b;
    let b3 = &b2 * b;

    // a' = -(a^3 e + a^2 d - a b c + b^2) / a^2
    let a_next = -(&(&(&(&a3 * e) + &(&a2 * d)) - &(&(a * b) * c)) + &b2) / &a2;
    // b' = -(a^4 f + c a^3 d - a^2 c^2 b + 2 a c b^2 - a^2 b d - b^3) / a^3
    let b_next = {
        let t1 = &a4 * f;
        let t2 = &(c * &a3) * d;
        let t3 = &(&a2 * &(c * c)) * b;
        let t4 = &(&(Rational::from_int(2) * a) * c) * &b2;
        let t5 = &(&a2 * b) * d;
        -(&(&(&(&(&t1 + &t2) - &t3) + &t4) - &t5) - &b3) / &a3
    };
    // d' = -(a^2 d - 2 a b c + 2 b^2) / a^2
    let d_next = {
        let t1 = &a2 * d;
        let t2 = &(&(Rational::from_int(2) * a) * b) * c;
        let t3 = Rational::from_int(2) * &b2;
        -(&(&t1 - &t2) + &t3) / &a2
    };
    Ok(CFParams {
        a: a_next,
        b: b_next,
        c: c.clone(),
        d: d_next,
        e: Rational::from_int(-1),
        f: -(b / a),
    })
}

/// Iterate tau for up to `k` steps, producing up to k+1 parameter tuples.
///
/// If some leading coefficient a_n vanishes the orbit stops with that index
/// recorded; a starting tuple with a = 0 yields an empty orbit broken at 0.
pub fn tau_orbit(p: &CFParams, k: usize) -> TauOrbit {
    let mut steps = Vec::with_capacity(k + 1);
    let mut breakdown = None;
    if p.a.is_zero() {
        return TauOrbit {
            steps,
            breakdown: Some(0),
        };
    }
    steps.push(p.clone());
    while steps.len() <= k {
        let next = tau_transform(steps.last().expect("orbit is nonempty"))
            .expect("stored orbit steps have nonzero leading coefficient");
        if next.a.is_zero() {
            breakdown = Some(steps.len());
            break;
        }
        steps.push(next);
    }
    TauOrbit { steps, breakdown }
}

/// Result of [`fit_canonical_cf`]: a parameter tuple reproducing the series,
/// plus whether the defining linear system pinned it down uniquely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalFit {
    pub params: CFParams,
    pub unique: bool,
}

/// Recover a canonical parameter tuple from a truncated series, if one exists.
///
/// The defining equation, cleared of its denominator, reads
///
/// ```text
/// s(x) (1 + c x + d x^2) + x^2 (e + f x) s(x)^2 = a + b x
/// ```
///
/// Orders x^0 and x^1 force a and (given c) b; orders x^2..x^5 give a linear
/// 4x4 system for (c, d, e, f), solved by eliminating in that fixed column
/// order with free variables set to zero. Every remaining order through the
/// truncation order is then verified exactly; any mismatch means the series
/// is not of canonical quadratic type and `None` is returned. Supplying at
/// least order 9 is recommended so the verification has real teeth.
pub fn fit_canonical_cf(s: &PowerSeries) -> Option<CanonicalFit> {
    let order = s.order();
    let sq = s.mul(s);
    let coeff = |k: usize| -> Rational {
        if k <= order {
            s.coeff(k).clone()
        } else {
            Rational::zero()
        }
    };
    let sq_coeff = |k: i64| -> Rational {
        if (0..=order as i64).contains(&k) {
            sq.coeff(k as usize).clone()
        } else {
            Rational::zero()
        }
    };

    // Rows for orders k = 2..=min(5, order):
    //   s_{k-1} c + s_{k-2} d + q_{k-2} e + q_{k-3} f = -s_k
    let mut rows: Vec<[Rational; 5]> = Vec::new();
    for k in 2..=order.min(5) {
        rows.push([
            coeff(k - 1),
            coeff(k - 2),
            sq_coeff(k as i64 - 2),
            sq_coeff(k as i64 - 3),
            -coeff(k),
        ]);
    }
    let (solution, unique) = solve_linear(rows)?;
    let [c, d, e, f] = solution;

    let a = coeff(0);
    let b = if order >= 1 {
        coeff(1) + &c * &coeff(0)
    } else {
        Rational::zero()
    };

    // Verify every order 2..=order(s) against the cleared-denominator equation.
    for k in 2..=order {
        let lhs = coeff(k)
            + &c * &coeff(k - 1)
            + &d * &coeff(k - 2)
            + &e * &sq_coeff(k as i64 - 2)
            + &f * &sq_coeff(k as i64 - 3);
        if !lhs.is_zero() {
            return None;
        }
    }

    Some(CanonicalFit {
        params: CFParams::new(a, b, c, d, e, f),
        unique,
    })
}

/// Gaussian elimination over the rationals with fixed column order and zero
/// free variables. Returns `None` when the system is inconsistent; the flag
/// is false when the solution space has positive dimension.
fn solve_linear(mut rows: Vec<[Rational; 5]>) -> Option<([Rational; 4], bool)> {
    let mut pivot_row_of_col: [Option<usize>; 4] = [None, None, None, None];
    let mut next_row = 0;
    for col in 0..4 {
        let Some(pivot) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, pivot);
        let inv = rows[next_row][col].recip().expect("pivot is nonzero");
        for entry in rows[next_row][col..].iter_mut() {
            *entry = &*entry * &inv;
        }
        let pivot_row = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (entry, pivot_entry) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *entry = &*entry - &(&factor * pivot_entry);
                }
            }
        }
        pivot_row_of_col[col] = Some(next_row);
        next_row += 1;
    }
    // Any leftover row must have reduced to 0 = 0.
    if rows[next_row..].iter().any(|row| !row[4].is_zero()) {
        return None;
    }
    let rank = next_row;
    let mut solution = [
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
    ];
    for col in 0..4 {
        if let Some(r) = pivot_row_of_col[col] {
            // Free columns are zero, so the pivot value is just the rhs.
            solution[col] = rows[r][4].clone();
        }
    }
    Some((solution, rank == 4))
}

/// The Somos-4 certificate of a tuple with e = -1 and a != 0:
///
/// ```text
/// f_1   = -b/a
/// a_1   = a - d + (b/a)(c - b/a)
/// alpha = a^2 (c + f_0 + f_1)^2
/// beta  = -(c + f_0 + f_1)^2 a^3 - a_1 ((f_0 - f_1)(c + f_0 + f_1) - a_1) a^2
/// ```
///
/// a_1 and f_1 are cross-checked against the recursion route through
/// [`tau_transform`]; a disagreement would mean a transcription error in one
/// of the two code paths and panics.
pub fn somos_certificate(p: &CFParams) -> Result<SomosCertificate, CfError> {
    if p.e != Rational::from_int(-1) {
        return Err(CfError::WrongForm);
    }
    if p.a.is_zero() {
        return Err(CfError::ZeroLeadingCoefficient);
    }
    let (a, b, c, d, f0) = (&p.a, &p.b, &p.c, &p.d, &p.f);
    let b_over_a = b / a;
    let f1 = -&b_over_a;
    let a1 = &(a - d) + &(&b_over_a * &(c - &b_over_a));
    let k = &(c + f0) + &f1;
    let k2 = &k * &k;
    let a2 = a * a;
    let a3 = &a2 * a;
    let alpha = &a2 * &k2;
    let beta = {
        let inner = &(&(f0 - &f1) * &k) - &a1;
        -(&(&k2 * &a3)) - &(&(&a1 * &inner) * &a2)
    };

    let via_tau = tau_transform(p)?;
    assert_eq!(
        via_tau.a, a1,
        "certificate a_1 disagrees with the recursion value"
    );
    assert_eq!(
        via_tau.f, f1,
        "certificate f_1 disagrees with the recursion value"
    );

    Ok(SomosCertificate {
        alpha,
        beta,
        a1,
        f1,
    })
}

/// Residual of the orbit product-sum relation at index n:
///
/// ```text
/// a_{n+2} a_{n+1} + a_{n+1} a_n
///   - [ 2 a_0 a_1 + a_0 (2 f_1 + c)(f_0 + c + f_1) - a_0^2 (f_0 + c + f_1)^2 / a_{n+1} ]
/// ```
///
/// Requires orbit steps n, n+1 and n+2.
pub fn product_sum_residual(
    orbit: &TauOrbit,
    cert: &SomosCertificate,
    n: usize,
) -> Result<Rational, CfError> {
    let step0 = orbit.require_step(0)?;
    let an = &orbit.require_step(n)?.a;
    let an1 = &orbit.require_step(n + 1)?.a;
    let an2 = &orbit.require_step(n + 2)?.a;
    if an1.is_zero() {
        return Err(CfError::ZeroDivisor { index: n + 1 });
    }
    let (a0, c, f0) = (&step0.a, &step0.c, &step0.f);
    let k = &(f0 + c) + &cert.f1;
    let lhs = &(an2 * an1) + &(an1 * an);
    let rhs = {
        let t1 = &(Rational::from_int(2) * a0) * &cert.a1;
        let t2 = &(a0 * &(&(Rational::from_int(2) * &cert.f1) + c)) * &k;
        let t3 = &(&(a0 * a0) * &(&k * &k)) / an1;
        &(&t1 + &t2) - &t3
    };
    Ok(&lhs - &rhs)
}

/// Residual of the leading-coefficient Somos relation at index n:
/// `a_n a_{n-1} a_{n-2} - alpha - beta / a_{n-1}`.
///
/// Requires orbit steps n-2, n-1 and n.
pub fn orbit_somos_residual(
    orbit: &TauOrbit,
    alpha: &Rational,
    beta: &Rational,
    n: usize,
) -> Result<Rational, CfError> {
    if n < 2 {
        return Err(CfError::IndexOutOfOrbit {
            index: n,
            len: orbit.len(),
        });
    }
    let an = &orbit.require_step(n)?.a;
    let an1 = &orbit.require_step(n - 1)?.a;
    let an2 = &orbit.require_step(n - 2)?.a;
    if an1.is_zero() {
        return Err(CfError::ZeroDivisor { index: n - 1 });
    }
    Ok(&(&(&(an * an1) * an2) - alpha) - &(beta / an1))
}

/// The induction residual T(n) whose vanishing certifies the Somos relation:
///
/// ```text
/// T(n) = -(c+f0+f1)^2 a0^2 a_{n-1}
///        + (c^2 + c f0 + 3 c f1 + 2 f0 f1 + 2 f1^2 + 2 a1) a_n a_{n-1} a0
///        - a_{n-1}^2 a_n^2 - (c+f0+f1)^2 a0^2 a_n - beta
/// ```
///
/// Requires orbit steps n-1 and n (so n >= 1).
pub fn induction_residual(
    orbit: &TauOrbit,
    cert: &SomosCertificate,
    n: usize,
) -> Result<Rational, CfError> {
    if n < 1 {
        return Err(CfError::IndexOutOfOrbit {
            index: n,
            len: orbit.len(),
        });
    }
    let step0 = orbit.require_step(0)?;
    let an = &orbit.require_step(n)?.a;
    let an1 = &orbit.require_step(n - 1)?.a;
    let (a0, c, f0) = (&step0.a, &step0.c, &step0.f);
    let (a1, f1) = (&cert.a1, &cert.f1);
    let k = &(&(c + f0) + f1);
    let k2a02 = &(k * k) * &(a0 * a0);
    // c^2 + c f0 + 3 c f1 + 2 f0 f1 + 2 f1^2 + 2 a1
    let m = {
        let t = &(&(c * c) + &(c * f0)) + &(&(Rational::from_int(3) * c) * f1);
        let u = &(&(Rational::from_int(2) * f0) * f1) + &(&(Rational::from_int(2) * f1) * f1);
        &(&t + &u) + &(Rational::from_int(2) * a1)
    };
    let term1 = -(&(&k2a02 * an1));
    let term2 = &(&(&m * an) * an1) * a0;
    let term3 = &(&(an1 * an1) * an) * an;
    let term4 = &k2a02 * an;
    Ok(&(&(&(&term1 + &term2) - &term3) - &term4) - &cert.beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn series_from_constant_forms() {
        let s = series_from_cf(&CFParams::from_ints([1, 0, 0, 0, 0, 0]), 5).unwrap();
        assert_eq!(s, PowerSeries::from_ints(&[1, 0, 0, 0, 0, 0]));
        let s = series_from_cf(&CFParams::from_ints([2, 0, 0, 0, 0, 0]), 5).unwrap();
        assert_eq!(s, PowerSeries::from_ints(&[2, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn series_constant_term_is_a() {
        let p = CFParams::new(
            rat(3, 2),
            rat(-1, 3),
            rat(2, 1),
            rat(-5, 2),
            rat(1, 4),
            rat(-2, 3),
        );
        let s = series_from_cf(&p, 8).unwrap();
        assert_eq!(s.constant_term(), &rat(3, 2));
    }

    #[test]
    fn tau_on_conjecture_two_form() {
        let p = CFParams::from_ints([1, -1, -2, -1, -1, 1]);
        let image = tau_transform(&p).unwrap();
        assert_eq!(image, CFParams::from_ints([3, -3, -2, 3, -1, 1]));
    }

    #[test]
    fn tau_fixed_point() {
        let p = CFParams::from_ints([1, 0, 0, 0, -1, 0]);
        assert_eq!(tau_transform(&p).unwrap(), p);
    }

    #[test]
    fn tau_rejects_zero_leading_coefficient() {
        let p = CFParams::from_ints([0, 1, 2, 3, 4, 5]);
        assert_eq!(
            tau_transform(&p).unwrap_err(),
            CfError::ZeroLeadingCoefficient
        );
    }

    #[test]
    fn tau_image_structure() {
        // e' = -1, c' = c, f' = -b/a for any admissible tuple.
        let p = CFParams::new(
            rat(2, 3),
            rat(5, 2),
            rat(-1, 4),
            rat(3, 1),
            rat(7, 5),
            rat(-2, 1),
        );
        let image = tau_transform(&p).unwrap();
        assert_eq!(image.e, Rational::from_int(-1));
        assert_eq!(image.c, p.c);
        assert_eq!(image.f, -(&p.b / &p.a));
    }

    #[test]
    fn orbit_of_fixed_point() {
        let p = CFParams::from_ints([1, 0, 0, 0, -1, 0]);
        let orbit = tau_orbit(&p, 5);
        assert_eq!(orbit.len(), 6);
        assert!(orbit.breakdown().is_none());
        assert!(orbit.steps().iter().all(|q| *q == p));
    }

    #[test]
    fn orbit_first_step() {
        let orbit = tau_orbit(&CFParams::from_ints([1, -1, -2, -1, -1, 1]), 4);
        assert_eq!(
            orbit.step(1).unwrap(),
            &CFParams::from_ints([3, -3, -2, 3, -1, 1])
        );
        assert_eq!(orbit.len(), 5);
    }

    #[test]
    fn orbit_breakdown_at_zero_start() {
        let orbit = tau_orbit(&CFParams::from_ints([0, 1, 1, 1, 1, 1]), 4);
        assert!(orbit.is_empty());
        assert_eq!(orbit.breakdown(), Some(0));
    }

    #[test]
    fn certificate_for_conjecture_two_orbit() {
        let cert = somos_certificate(&CFParams::from_ints([3, -3, -2, 3, -1, 1])).unwrap();
        assert_eq!(cert.alpha, Rational::zero());
        assert_eq!(cert.beta, Rational::from_int(9));
        assert_eq!(cert.a1, Rational::from_int(1));
        assert_eq!(cert.f1, Rational::from_int(1));
    }

    #[test]
    fn certificate_for_conjecture_three_orbit() {
        let cert = somos_certificate(&CFParams::from_ints([3, -2, -2, 3, -1, 1])).unwrap();
        assert_eq!(cert.f1, rat(2, 3));
        assert_eq!(cert.a1, rat(8, 9));
        assert_eq!(cert.alpha, Rational::from_int(1));
        assert_eq!(cert.beta, Rational::from_int(5));
    }

    #[test]
    fn certificate_requires_e_minus_one() {
        assert_eq!(
            somos_certificate(&CFParams::from_ints([1, 0, 0, 0, 0, 0])).unwrap_err(),
            CfError::WrongForm
        );
    }

    #[test]
    fn product_sum_residual_on_constant_orbit() {
        let p = CFParams::from_ints([1, 0, 0, 0, -1, 0]);
        let orbit = tau_orbit(&p, 8);
        let cert = somos_certificate(&p).unwrap();
        for n in 0..=6 {
            assert_eq!(
                product_sum_residual(&orbit, &cert, n).unwrap(),
                Rational::zero()
            );
        }
    }

    #[test]
    fn product_sum_residual_on_conjecture_four_orbit() {
        // Orbit of the transformed conjecture-4 form at r = s = 1.
        let p = tau_transform(&CFParams::from_ints([1, -1, -2, -1, -1, -1])).unwrap();
        assert_eq!(p, CFParams::from_ints([3, -1, -2, 3, -1, 1]));
        let orbit = tau_orbit(&p, 8);
        assert!(orbit.breakdown().is_none());
        let cert = somos_certificate(&p).unwrap();
        for n in 0..=6 {
            assert_eq!(
                product_sum_residual(&orbit, &cert, n).unwrap(),
                Rational::zero()
            );
        }
    }

    #[test]
    fn somos_residual_on_constant_orbit() {
        let p = CFParams::from_ints([1, 0, 0, 0, -1, 0]);
        let orbit = tau_orbit(&p, 8);
        let cert = somos_certificate(&p).unwrap();
        assert_eq!(cert.alpha, Rational::zero());
        assert_eq!(cert.beta, Rational::one());
        for n in 2..=8 {
            assert_eq!(
                orbit_somos_residual(&orbit, &cert.alpha, &cert.beta, n).unwrap(),
                Rational::zero()
            );
        }
    }

    #[test]
    fn somos_residual_on_conjecture_two_orbit() {
        let p = CFParams::from_ints([3, -3, -2, 3, -1, 1]);
        let orbit = tau_orbit(&p, 8);
        for n in 3..=8 {
            assert_eq!(
                orbit_somos_residual(&orbit, &Rational::zero(), &Rational::from_int(9), n).unwrap(),
                Rational::zero()
            );
        }
    }

    #[test]
    fn somos_residual_index_bounds() {
        let orbit = tau_orbit(&CFParams::from_ints([1, 0, 0, 0, -1, 0]), 8);
        assert!(matches!(
            orbit_somos_residual(&orbit, &Rational::zero(), &Rational::one(), 1),
            Err(CfError::IndexOutOfOrbit { .. })
        ));
    }

    #[test]
    fn t_residual_vanishes() {
        for p in [
            CFParams::from_ints([1, 0, 0, 0, -1, 0]),
            CFParams::from_ints([3, -2, -2, 3, -1, 1]),
            tau_transform(&CFParams::new(
                Rational::one(),
                Rational::from_int(-1),
                rat(-3, 1),
                rat(-2, 1),
                rat(-1, 1),
                rat(-3, 1),
            ))
            .unwrap(),
        ] {
            let orbit = tau_orbit(&p, 9);
            assert!(orbit.breakdown().is_none(), "test orbit broke down");
            let cert = somos_certificate(&p).unwrap();
            for n in 1..=8 {
                assert_eq!(
                    induction_residual(&orbit, &cert, n).unwrap(),
                    Rational::zero(),
                    "T({n}) != 0 for {p:?}"
                );
            }
        }
    }

    #[test]
    fn fit_geometric_series() {
        let s = PowerSeries::from_ints(&[1; 12]);
        let fit = fit_canonical_cf(&s).unwrap();
        assert_eq!(fit.params, CFParams::from_ints([1, 0, -1, 0, 0, 0]));
        assert!(!fit.unique);
        let back = series_from_cf(&fit.params, 12).unwrap();
        assert!(back.agrees_with(&s));
    }

    #[test]
    fn fit_round_trips_a_generic_tuple() {
        let p = CFParams::new(
            rat(2, 1),
            rat(-1, 2),
            rat(1, 3),
            rat(-2, 1),
            rat(3, 2),
            rat(1, 1),
        );
        let s = series_from_cf(&p, 12).unwrap();
        let fit = fit_canonical_cf(&s).unwrap();
        let back = series_from_cf(&fit.params, 12).unwrap();
        assert!(back.agrees_with(&s));
        if fit.unique {
            assert_eq!(fit.params, p);
        }
    }

    #[test]
    fn fit_rejects_generic_series() {
        // Independently chosen coefficients are not quadratic-algebraic.
        let s = PowerSeries::from_ints(&[1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7]);
        assert!(fit_canonical_cf(&s).is_none());
    }
}
