//! Symbolic differential 1-forms on coordinate charts.
//!
//! Forms are written in a small surface syntax (`dz - y*dx`), parsed into
//! expression trees, differentiated symbolically and checked numerically:
//! the contact condition `α ∧ dα ≠ 0`, pullbacks along explicit maps, and
//! the characteristic slope of the model form `(1 − r⁴)dz + r²dθ`.

pub mod chart;
pub mod expr;
pub mod forms;
pub mod library;
pub mod parse;

use thiserror::Error;

pub use chart::{Chart, Exclusion, DEFAULT_EXCLUSION_EPSILON};
pub use expr::{Compiled, Expr};
pub use forms::{
    characteristic_slope_on_torus, contact_coefficient, contact_sign, exterior_derivative, forms_equal,
    kernel_match, max_form_difference, pullback, r_of_slope, zeta_slope, ChartMap, ContactReport, KernelMatch,
    OneForm, SlopeRadius, SlopeReport, TorusCoords, TwoForm, CONTACT_TOLERANCE, DEFAULT_GRID,
};
pub use library::{hopf_invariance_check, model_library, HopfReport, LibraryEntry};
pub use parse::{line_col, parse_expr, parse_form, parse_form_file, FormFile, NamedForm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable '{name}'{}", offset.map(|o| format!(" at offset {o}")).unwrap_or_default())]
    UnknownVariable { name: String, offset: Option<usize> },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("non-finite value at {point:?}")]
    NonFinite { point: Vec<f64> },
    #[error("kernel is tangent to the fibre direction on the torus r = {r}")]
    DegenerateKernel { r: f64 },
    #[error("slope {p}/{q} is not attained by r^2/(r^4 - 1) for r > 0, r != 1")]
    SlopeOutOfRange { p: i64, q: i64 },
    #[error("slope {p}/{q} must be written with coprime p, q and q > 0")]
    InvalidSlope { p: i64, q: i64 },
    #[error("no sample point survived the exclusions")]
    EmptySample,
}

/// Sign of `α ∧ dα` against the chart orientation `dx₁ ∧ dx₂ ∧ dx₃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContactSign {
    Positive,
    Negative,
    Mixed,
}

impl ContactSign {
    pub fn as_str(self) -> &'static str {
        match self {
            ContactSign::Positive => "positive",
            ContactSign::Negative => "negative",
            ContactSign::Mixed => "mixed",
        }
    }
}

impl std::fmt::Display for ContactSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
