//! (alpha, beta) Somos-4 sequences: generation, residual checking and
//! parameter fitting.
//!
//! A sequence is (alpha, beta) Somos-4 when
//!
//! ```text
//! s_n s_{n-4} = alpha s_{n-1} s_{n-3} + beta s_{n-2}^2
//! ```
//!
//! All checking uses this division-free form so zero terms are handled
//! without special cases; the quotient form is used only for generation,
//! where a zero s_{n-4} stops the sequence with a breakdown marker.

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SomosError {
    #[error("sequence has {got} terms but at least {needed} are required")]
    TooShort { needed: usize, got: usize },
}

/// The recurrence parameters. Any rational pair is legal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Somos4Params {
    pub alpha: Rational,
    pub beta: Rational,
}

impl Somos4Params {
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        Somos4Params { alpha, beta }
    }

    pub fn from_ints(alpha: i64, beta: i64) -> Self {
        Somos4Params {
            alpha: Rational::from_int(alpha),
            beta: Rational::from_int(beta),
        }
    }
}

/// A generated sequence, possibly cut short when a zero reaches the
/// s_{n-4} slot of the recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SomosSequence {
    pub values: Vec<Rational>,
    pub breakdown: Option<usize>,
}

/// Extend a four-term seed through index `n_max` by the quotient recurrence
/// s_n = (alpha s_{n-1} s_{n-3} + beta s_{n-2}^2) / s_{n-4}.
pub fn somos4_generate(p: &Somos4Params, seed: [Rational; 4], n_max: usize) -> SomosSequence {
    let mut values: Vec<Rational> = seed.into_iter().take(n_max + 1).collect();
    let mut breakdown = None;
    for n in values.len()..=n_max {
        let divisor = &values[n - 4];
        if divisor.is_zero() {
            breakdown = Some(n);
            break;
        }
        let numer = &(&p.alpha * &(&values[n - 1] * &values[n - 3]))
            + &(&p.beta * &(&values[n - 2] * &values[n - 2]));
        values.push(&numer / divisor);
    }
    SomosSequence { values, breakdown }
}

/// Division-free residuals s_n s_{n-4} - alpha s_{n-1} s_{n-3} - beta s_{n-2}^2
/// for n = 4 .. len-1. Needs at least 5 terms.
pub fn somos4_residuals(seq: &[Rational], p: &Somos4Params) -> Result<Vec<Rational>, SomosError> {
    if seq.len() < 5 {
        return Err(SomosError::TooShort {
            needed: 5,
            got: seq.len(),
        });
    }
    Ok((4..seq.len())
        .map(|n| {
            &(&(&seq[n] * &seq[n - 4]) - &(&p.alpha * &(&seq[n - 1] * &seq[n - 3])))
                - &(&p.beta * &(&seq[n - 2] * &seq[n - 2]))
        })
        .collect())
}

/// Result of [`somos4_fit`]. `degenerate` is set when the sequence does not
/// pin (alpha, beta) down uniquely; the returned pair is then one valid
/// representative chosen deterministically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SomosFit {
    pub params: Somos4Params,
    pub degenerate: bool,
}

/// Fit (alpha, beta) to a sequence, exactly.
///
/// Each window n contributes a row (x, y, z) = (s_{n-1} s_{n-3}, s_{n-2}^2,
/// s_n s_{n-4}) of the linear condition alpha x + beta y = z. The first two
/// independent rows determine the parameters, and every remaining row is
/// verified; inconsistent rows yield `None`. A rank-deficient row space
/// yields a deterministic representative with the degeneracy flag set:
/// for a spanning row with x != 0 the representative is (z/x, 0), otherwise
/// (0, z/y); a fully zero row space gives (0, 0). Callers should supply at
/// least 8 terms — shorter sequences do not have enough windows to
/// distinguish a genuine fit from noise, and fewer than 8 terms returns
/// `None` outright.
pub fn somos4_fit(seq: &[Rational]) -> Option<SomosFit> {
    if seq.len() < 8 {
        return None;
    }
    let rows: Vec<[Rational; 3]> = (4..seq.len())
        .map(|n| {
            [
                &seq[n - 1] * &seq[n - 3],
                &seq[n - 2] * &seq[n - 2],
                &seq[n] * &seq[n - 4],
            ]
        })
        .collect();

    let verify = |alpha: &Rational, beta: &Rational| -> bool {
        rows.iter()
            .all(|[x, y, z]| &(&(alpha * x) + &(beta * y)) - z == Rational::zero())
    };

    // First row with a nonzero coefficient part.
    let Some(first) = rows
        .iter()
        .position(|[x, y, _]| !x.is_zero() || !y.is_zero())
    else {
        // Every row is (0, 0, z); consistent only if all z vanish.
        if rows.iter().any(|[_, _, z]| !z.is_zero()) {
            return None;
        }
        return Some(SomosFit {
            params: Somos4Params::new(Rational::zero(), Rational::zero()),
            degenerate: true,
        });
    };
    let [x1, y1, z1] = rows[first].clone();

    // Second row independent of the first, if any.
    let second = rows.iter().enumerate().skip(first + 1).find_map(|(i, r)| {
        let det = &(&x1 * &r[1]) - &(&y1 * &r[0]);
        (!det.is_zero()).then_some((i, det))
    });

    match second {
        Some((i, det)) => {
            let [x2, y2, z2] = rows[i].clone();
            // Cramer's rule on the 2x2 system.
            let alpha = &(&(&z1 * &y2) - &(&z2 * &y1)) / &det;
            let beta = &(&(&x1 * &z2) - &(&x2 * &z1)) / &det;
            verify(&alpha, &beta).then_some(SomosFit {
                params: Somos4Params::new(alpha, beta),
                degenerate: false,
            })
        }
        None => {
            // Rank-1 row space: pick the canonical representative.
            let (alpha, beta) = if !x1.is_zero() {
                (&z1 / &x1, Rational::zero())
            } else {
                (Rational::zero(), &z1 / &y1)
            };
            verify(&alpha, &beta).then_some(SomosFit {
                params: Somos4Params::new(alpha, beta),
                degenerate: true,
            })
        }
    }
}
