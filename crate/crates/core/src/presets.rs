//! Built-in conjecture presets.
//!
//! Each preset bundles a generating function given by a self-referential
//! expression, the closed-form canonical parameter tuple obtained by clearing
//! its (1-x) denominators, and the closed-form (alpha, beta) its Hankel
//! transform is conjectured to satisfy. The canonical tuple is *validated at
//! runtime* against the evaluated expression, so a transcription slip in the
//! hand algebra fails loudly instead of silently skewing results.
//!
//! `SomosSeed` is the classical instance: y solves y = z - z^3 + y^2, and
//! Q(z) = (y - z)/z^2 has the ordinary Somos-4 numbers as its Hankel
//! transform, i.e. (alpha, beta) = (1, 1).

use std::fmt;
use std::str::FromStr;

use crate::cf::CFParams;
use crate::gf::Bindings;
use crate::rational::Rational;
use crate::series::{fixed_point_solve, PowerSeries, SeriesError};
use crate::somos::Somos4Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresetId {
    Conj2,
    Conj3,
    Conj4,
    Conj5,
    SomosSeed,
}

pub const ALL_PRESETS: [PresetId; 5] = [
    PresetId::Conj2,
    PresetId::Conj3,
    PresetId::Conj4,
    PresetId::Conj5,
    PresetId::SomosSeed,
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresetError {
    #[error("unknown preset '{0}' (expected conj2, conj3, conj4, conj5 or somos)")]
    Unknown(String),
    #[error("preset parameter '{0}' is not bound")]
    MissingParam(String),
    #[error("the seed-series coefficients did not match their defining equation")]
    SeedSeriesMismatch,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl PresetId {
    pub fn as_str(self) -> &'static str {
        match self {
            PresetId::Conj2 => "conj2",
            PresetId::Conj3 => "conj3",
            PresetId::Conj4 => "conj4",
            PresetId::Conj5 => "conj5",
            PresetId::SomosSeed => "somos_seed",
        }
    }

    /// The expression-language source of the generating function. Empty for
    /// `SomosSeed`, whose series is built from its defining equation instead.
    pub fn expr_text(self) -> &'static str {
        match self {
            PresetId::Conj2 => "1/(1 - x*(1+r*x)/(1-x) - s*x^2*G)",
            PresetId::Conj3 => "1/(1 - x*(1+r*x)/(1-x) - s*x^2/(1-x)*G)",
            PresetId::Conj4 => "1/(1 - x*(1+r*x)/(1-x) - x^2*(1+s*x)/(1-x)*G)",
            PresetId::Conj5 => "1/(1 - v*x*(1+r*x)/(1-x) - w*x^2*(1+s*x)/(1-x)*G)",
            PresetId::SomosSeed => "",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            PresetId::Conj2 | PresetId::Conj3 | PresetId::Conj4 => &["r", "s"],
            PresetId::Conj5 => &["r", "s", "v", "w"],
            PresetId::SomosSeed => &[],
        }
    }

    /// The conjectured (alpha, beta) for this preset's Hankel transform.
    pub fn expected_params(self, env: &Bindings) -> Result<Somos4Params, PresetError> {
        let get = |name: &str| -> Result<Rational, PresetError> {
            env.get(name)
                .cloned()
                .ok_or_else(|| PresetError::MissingParam(name.to_string()))
        };
        let two = Rational::from_int(2);
        let three = Rational::from_int(3);
        match self {
            PresetId::Conj2 => {
                let (r, s) = (get("r")?, get("s")?);
                // (0, s^2 (r + s + 1)^2)
                let base = &(&r + &s) + &Rational::one();
                Ok(Somos4Params::new(
                    Rational::zero(),
                    &s.pow(2) * &base.pow(2),
                ))
            }
            PresetId::Conj3 => {
                let (r, s) = (get("r")?, get("s")?);
                // (s^2, s^2 (r + (r + s)^2))
                let alpha = s.pow(2);
                let beta = &alpha * &(&r + &(&r + &s).pow(2));
                Ok(Somos4Params::new(alpha, beta))
            }
            PresetId::Conj4 => {
                let (r, s) = (get("r")?, get("s")?);
                // ((s + 1)^2, 1 + r^2 - 6s - 3s^2 - r(s^2 + 2s - 3))
                let alpha = (&s + &Rational::one()).pow(2);
                let beta = {
                    let head = &(&Rational::one() + &r.pow(2)) - &(&Rational::from_int(6) * &s);
                    let mid = &head - &(&three * &s.pow(2));
                    let tail = &(&s.pow(2) + &(&two * &s)) - &three;
                    &mid - &(&r * &tail)
                };
                Ok(Somos4Params::new(alpha, beta))
            }
            PresetId::Conj5 => {
                let (r, s) = (get("r")?, get("s")?);
                let (v, w) = (get("v")?, get("w")?);
                // alpha = (s + v)^2 w^2
                let alpha = &(&s + &v).pow(2) * &w.pow(2);
                // beta = w^2 ( r^2 v^2 + w (w + v - v^2) + r v (v + 2w)
                //              - s^2 (v (r + 1) + 2w)
                //              - s ((r + 1) v^2 + w + v (r + 1 + 3w)) )
                let r1 = &r + &Rational::one();
                let t1 = &r.pow(2) * &v.pow(2);
                let t2 = &w * &(&(&w + &v) - &v.pow(2));
                let t3 = &(&r * &v) * &(&v + &(&two * &w));
                let t4 = &s.pow(2) * &(&(&v * &r1) + &(&two * &w));
                let t5 = &s * &(&(&(&r1 * &v.pow(2)) + &w) + &(&v * &(&r1 + &(&three * &w))));
                let inner = &(&(&(&t1 + &t2) + &t3) - &t4) - &t5;
                Ok(Somos4Params::new(alpha, &w.pow(2) * &inner))
            }
            PresetId::SomosSeed => Ok(Somos4Params::new(Rational::one(), Rational::one())),
        }
    }

    /// The canonical parameter tuple of the preset's generating function,
    /// obtained once by clearing the (1-x) denominators of the defining
    /// equation. The leading numerator is (1 - x) for every preset, so a = 1
    /// and b = -1 throughout.
    pub fn canonical(self, env: &Bindings) -> Result<CFParams, PresetError> {
        let get = |name: &str| -> Result<Rational, PresetError> {
            env.get(name)
                .cloned()
                .ok_or_else(|| PresetError::MissingParam(name.to_string()))
        };
        let one = Rational::one();
        let neg = |q: &Rational| -q;
        match self {
            PresetId::Conj2 => {
                let (r, s) = (get("r")?, get("s")?);
                Ok(CFParams::new(
                    one.clone(),
                    -one,
                    Rational::from_int(-2),
                    neg(&r),
                    neg(&s),
                    s,
                ))
            }
            PresetId::Conj3 => {
                let (r, s) = (get("r")?, get("s")?);
                Ok(CFParams::new(
                    one.clone(),
                    -one,
                    Rational::from_int(-2),
                    neg(&r),
                    neg(&s),
                    Rational::zero(),
                ))
            }
            PresetId::Conj4 => {
                let (r, s) = (get("r")?, get("s")?);
                Ok(CFParams::new(
                    one.clone(),
                    -one,
                    Rational::from_int(-2),
                    neg(&r),
                    Rational::from_int(-1),
                    neg(&s),
                ))
            }
            PresetId::Conj5 => {
                let (r, s) = (get("r")?, get("s")?);
                let (v, w) = (get("v")?, get("w")?);
                Ok(CFParams::new(
                    one.clone(),
                    -one.clone(),
                    neg(&(&one + &v)),
                    neg(&(&r * &v)),
                    neg(&w),
                    neg(&(&w * &s)),
                ))
            }
            PresetId::SomosSeed => Ok(CFParams::from_ints([1, -1, -2, 0, -1, 0])),
        }
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetId {
    type Err = PresetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "conj2" => Ok(PresetId::Conj2),
            "conj3" => Ok(PresetId::Conj3),
            "conj4" => Ok(PresetId::Conj4),
            "conj5" => Ok(PresetId::Conj5),
            "somos" | "somos_seed" => Ok(PresetId::SomosSeed),
            other => Err(PresetError::Unknown(other.to_string())),
        }
    }
}

/// Solve y = z - z^3 + y^2 and return Q(z) = (y - z)/z^2 at the given order.
///
/// The first six coefficients of y are asserted against their known values
/// 1, 1, 1, 3, 8, 23 as a sanity gate before anything downstream runs.
pub fn somos_seed_series(order: usize) -> Result<PowerSeries, PresetError> {
    let y_order = order + 2;
    let y = fixed_point_solve(
        |cur: &PowerSeries| -> Result<PowerSeries, SeriesError> {
            let z = PowerSeries::x(y_order);
            let z3 = PowerSeries::monomial(Rational::one(), 3, y_order);
            Ok(z.sub(&z3).add(&cur.mul(cur)))
        },
        y_order,
    )?;
    if y_order >= 6 {
        let expected = [1, 1, 1, 3, 8, 23];
        for (k, &value) in expected.iter().enumerate() {
            if y.coeff(k + 1) != &Rational::from_int(value) {
                return Err(PresetError::SeedSeriesMismatch);
            }
        }
    }
    let shifted = y.sub(&PowerSeries::x(y_order));
    shifted.div_x_pow(2).ok_or(PresetError::SeedSeriesMismatch)
}
