use serde::Serialize;

use crate::ext::ExtReal;
use crate::point::Point;

/// Default absolute slack for inequality verdicts.
pub const DEFAULT_TOLERANCE: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Undetermined,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Undetermined => "undetermined",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a report compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `lhs <= rhs`.
    Inequality,
    /// `lhs < +inf`; `rhs` is unused and reported as `+inf`.
    FiniteAbove,
    /// `lhs > -inf`; `rhs` is unused and reported as `-inf`.
    FiniteBelow,
    /// `|lhs - rhs| <= tolerance`.
    Residual,
}

/// The sharper intermediate bound with the auxiliary radius.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TightBound {
    pub r_star: f64,
    pub rhs: ExtReal,
    pub margin: Option<ExtReal>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub kind: CheckKind,
    pub lhs: ExtReal,
    pub rhs: ExtReal,
    /// `rhs - lhs` when defined.
    pub margin: Option<ExtReal>,
    /// `lhs - rhs` for inequalities, `|lhs - rhs|` for residual checks.
    pub residual: f64,
    pub tolerance: f64,
    /// Combined quadrature error bound of both sides.
    pub quad_error: f64,
    pub verdict: Verdict,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax: Option<Point>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight: Option<TightBound>,
}

/// Numbers that enter a verdict.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Sides {
    pub lhs: ExtReal,
    pub rhs: ExtReal,
    pub error: f64,
    pub converged: bool,
}

pub(crate) fn margin(lhs: ExtReal, rhs: ExtReal) -> Option<ExtReal> {
    rhs.checked_add(-lhs)
}

/// `lhs <= rhs` up to `tol`. Holds only when it survives the quadrature
/// error, fails only when the violation does.
pub(crate) fn inequality_verdict(s: &Sides, tol: f64, diagnostics: &mut Vec<String>) -> Verdict {
    if s.rhs.is_pos_inf() {
        if s.lhs.is_pos_inf() {
            diagnostics.push("both sides are +inf".into());
        }
        return Verdict::Holds;
    }
    if s.lhs.is_pos_inf() {
        return Verdict::Fails;
    }
    if s.lhs.is_neg_inf() {
        return Verdict::Holds;
    }
    if s.rhs.is_neg_inf() {
        return Verdict::Fails;
    }
    let m = s.rhs.get() - s.lhs.get();
    if m + s.error < -tol {
        return Verdict::Fails;
    }
    if !s.converged {
        diagnostics.push("quadrature did not converge".into());
        return Verdict::Undetermined;
    }
    if m - s.error >= -tol {
        Verdict::Holds
    } else {
        diagnostics.push(format!("margin {m:e} is within the quadrature error {:e}", s.error));
        Verdict::Undetermined
    }
}

pub(crate) fn finiteness_verdict(value: ExtReal, converged: bool, diagnostics: &mut Vec<String>) -> Verdict {
    if !value.is_finite() {
        Verdict::Fails
    } else if !converged {
        diagnostics.push("quadrature did not converge".into());
        Verdict::Undetermined
    } else {
        Verdict::Holds
    }
}

impl CheckReport {
    pub(crate) fn inequality(name: impl Into<String>, s: Sides, tol: f64, mut diagnostics: Vec<String>) -> Self {
        let verdict = inequality_verdict(&s, tol, &mut diagnostics);
        let residual = match (s.lhs.finite(), s.rhs.finite()) {
            (Some(l), Some(r)) => l - r,
            _ => f64::NAN,
        };
        CheckReport {
            name: name.into(),
            kind: CheckKind::Inequality,
            lhs: s.lhs,
            rhs: s.rhs,
            margin: margin(s.lhs, s.rhs),
            residual,
            tolerance: tol,
            quad_error: s.error,
            verdict,
            diagnostics,
            grid: None,
            argmax: None,
            tight: None,
        }
    }

    pub(crate) fn finiteness(
        name: impl Into<String>,
        kind: CheckKind,
        value: ExtReal,
        error: f64,
        converged: bool,
        mut diagnostics: Vec<String>,
    ) -> Self {
        let verdict = finiteness_verdict(value, converged, &mut diagnostics);
        let (lhs, rhs) = match kind {
            CheckKind::FiniteBelow => (value, ExtReal::NEG_INFINITY),
            _ => (value, ExtReal::INFINITY),
        };
        CheckReport {
            name: name.into(),
            kind,
            lhs,
            rhs,
            margin: None,
            residual: f64::NAN,
            tolerance: 0.0,
            quad_error: error,
            verdict,
            diagnostics,
            grid: None,
            argmax: None,
            tight: None,
        }
    }

    pub(crate) fn residual(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        error: f64,
        converged: bool,
        tol: f64,
        mut diagnostics: Vec<String>,
    ) -> Self {
        let res = (lhs - rhs).abs();
        let verdict = if !res.is_finite() || res - error > tol {
            Verdict::Fails
        } else if !converged {
            diagnostics.push("quadrature did not converge".into());
            Verdict::Undetermined
        } else if res + error <= tol || res <= tol {
            Verdict::Holds
        } else {
            Verdict::Undetermined
        };
        let lhs = ExtReal::new(lhs).unwrap_or(ExtReal::INFINITY);
        let rhs = ExtReal::new(rhs).unwrap_or(ExtReal::INFINITY);
        CheckReport {
            name: name.into(),
            kind: CheckKind::Residual,
            lhs,
            rhs,
            margin: margin(lhs, rhs),
            residual: res,
            tolerance: tol,
            quad_error: error,
            verdict,
            diagnostics,
            grid: None,
            argmax: None,
            tight: None,
        }
    }

    pub(crate) fn with_grid(mut self, resolution: usize, argmax: Option<Point>) -> Self {
        self.grid = Some(resolution);
        self.argmax = argmax;
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }
}
