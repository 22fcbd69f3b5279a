//! Structured verification reports with deterministic JSON, CSV and text
//! rendering.
//!
//! JSON key order is fixed (it follows struct declaration order) and
//! rationals are serialized as canonical `"p/q"` strings, so identical
//! inputs produce byte-identical output. Residual vectors start at fixed
//! indices: `somos` at n = 4, `eq8` at n = 0, `eq10` at n = 2 and `tn` at
//! n = 1.

use std::fmt::Write as _;

use serde::Serialize;

use crate::gf::Bindings;
use crate::rational::Rational;

/// The four residual families checked by a verification run.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ResidualSet {
    /// s_n s_{n-4} - alpha s_{n-1} s_{n-3} - beta s_{n-2}^2 over the Hankel
    /// transform of g, for n = 4..=nmax.
    pub somos: Vec<Rational>,
    /// Orbit product-sum residuals, n = 0.. (capped by orbit length).
    pub eq8: Vec<Rational>,
    /// Leading-coefficient Somos residuals, n = 2.. (asserted from n = 3).
    pub eq10: Vec<Rational>,
    /// Induction residuals T(n), n = 1...
    pub tn: Vec<Rational>,
}

impl ResidualSet {
    pub fn somos_ok(&self) -> bool {
        self.somos.iter().all(Rational::is_zero)
    }

    pub fn eq8_ok(&self) -> bool {
        self.eq8.iter().all(Rational::is_zero)
    }

    /// Zero from the asserted index n = 3 on (the n = 2 value is reported
    /// but not asserted).
    pub fn eq10_ok_from_3(&self) -> bool {
        self.eq10.iter().skip(1).all(Rational::is_zero)
    }

    pub fn tn_ok(&self) -> bool {
        self.tn.iter().all(Rational::is_zero)
    }
}

/// Outcome of one verification pipeline run.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub preset: String,
    pub bindings: Bindings,
    pub nmax: usize,
    pub hankel_g: Vec<Rational>,
    pub hankel_g0: Vec<Rational>,
    pub alpha: Rational,
    pub beta: Rational,
    pub a1: Rational,
    pub f1: Rational,
    pub fitted_alpha: Option<Rational>,
    pub fitted_beta: Option<Rational>,
    pub fit_degenerate: bool,
    pub residuals: ResidualSet,
    /// Smallest reported index from which the eq10 residuals vanish onward.
    pub eq10_first_index: Option<usize>,
    pub lemma2_shift_ok: bool,
    pub breakdown_index: Option<usize>,
    pub pass: bool,
    pub offset_note: String,
}

fn join_human(values: &[Rational]) -> String {
    values
        .iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn residual_line(name: &str, start: usize, values: &[Rational]) -> String {
    if values.is_empty() {
        return format!("residuals {name}: none computed");
    }
    let end = start + values.len() - 1;
    if values.iter().all(Rational::is_zero) {
        format!("residuals {name}: all zero (n = {start}..{end})")
    } else {
        format!(
            "residuals {name}: n = {start}..{end}: {}",
            join_human(values)
        )
    }
}

impl VerificationReport {
    /// Deterministic pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// One CSV row per n with columns (n, H_n, somos_residual); the residual
    /// column is empty for n < 4. Values are canonical `p/q` strings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,h_n,somos_residual\n");
        for (n, h) in self.hankel_g.iter().enumerate() {
            let residual = if n >= 4 {
                self.residuals
                    .somos
                    .get(n - 4)
                    .map(Rational::canonical_string)
                    .unwrap_or_default()
            } else {
                String::new()
            };
            let _ = writeln!(out, "{n},{},{residual}", h.canonical_string());
        }
        out
    }

    /// Human-readable multi-line summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "preset: {}", self.preset);
        let env = self
            .bindings
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(
            out,
            "bindings: {}",
            if env.is_empty() { "(none)" } else { &env }
        );
        let _ = writeln!(out, "nmax: {}", self.nmax);
        let _ = writeln!(out, "hankel(g):  {}", join_human(&self.hankel_g));
        let _ = writeln!(out, "hankel(g0): {}", join_human(&self.hankel_g0));
        let _ = writeln!(
            out,
            "certificate: alpha = {}, beta = {}, a1 = {}, f1 = {}",
            self.alpha, self.beta, self.a1, self.f1
        );
        match (&self.fitted_alpha, &self.fitted_beta) {
            (Some(alpha), Some(beta)) => {
                let kind = if self.fit_degenerate {
                    "degenerate"
                } else {
                    "unique"
                };
                let _ = writeln!(out, "fitted: alpha = {alpha}, beta = {beta} ({kind})");
            }
            _ => {
                let _ = writeln!(out, "fitted: none");
            }
        }
        let _ = writeln!(out, "{}", residual_line("somos", 4, &self.residuals.somos));
        let _ = writeln!(out, "{}", residual_line("eq8", 0, &self.residuals.eq8));
        let _ = writeln!(out, "{}", residual_line("eq10", 2, &self.residuals.eq10));
        let _ = writeln!(out, "{}", residual_line("tn", 1, &self.residuals.tn));
        let _ = writeln!(
            out,
            "eq10 holds from index: {}",
            self.eq10_first_index
                .map(|n| n.to_string())
                .unwrap_or_else(|| "n/a".to_string())
        );
        let _ = writeln!(
            out,
            "index-shift identity: {}",
            if self.lemma2_shift_ok { "ok" } else { "FAILED" }
        );
        let _ = writeln!(
            out,
            "breakdown: {}",
            self.breakdown_index
                .map(|n| format!("at orbit step {n}"))
                .unwrap_or_else(|| "none".to_string())
        );
        let _ = writeln!(out, "offsets: {}", self.offset_note);
        let _ = writeln!(out, "pass: {}", self.pass);
        out
    }
}
