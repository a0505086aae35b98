//! Exact computations around positive-scalar-curvature metrics on flip-spun
//! lens spaces.
//!
//! The crate has two halves that share the exact-arithmetic substrate:
//!
//! * [`cyclotomic`] and [`lens`] compute rho invariants of lens spaces and the
//!   Pin^c eta invariants of the flip-spun lens spaces `X(p)`, and decide
//!   whether two of the metrics `g_{p,q}`, `g_{p,q'}` can be told apart by them.
//! * [`lattice`] and [`wallcross`] model the intersection-form bookkeeping of
//!   the 1-parameter Seiberg–Witten invariant `SW_tot` of a diffeomorphism:
//!   sphere reflections on `H_2(CP² # 2 CP²-bar)`, period points in the
//!   hyperbolic plane, signed wall crossings along orbits, and Kreck's
//!   metabolizer criterion.
//!
//! All decisions are made in exact rational arithmetic. Floating point only
//! appears in approximate renderings and in the disc-model projection used for
//! figures.

pub mod cyclotomic;
pub mod lattice;
pub mod lens;
mod linalg;
pub mod rational;
pub mod scenario;
pub mod wallcross;

pub use rational::ExactRational;

use std::sync::OnceLock;

/// Resource ceilings for brute-force computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest cyclotomic order `n` an eta computation may work in.
    pub max_field_order: u32,
    /// Node budget for the bounded metabolizer search.
    pub search_budget: u64,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        max_field_order: 100,
        search_budget: 2_000_000,
    };

    pub const MAX_ORDER_VAR: &'static str = "PSC_MODULI_MAX_ORDER";
    pub const SEARCH_BUDGET_VAR: &'static str = "PSC_MODULI_SEARCH_BUDGET";

    /// Defaults overridden by `PSC_MODULI_MAX_ORDER` and
    /// `PSC_MODULI_SEARCH_BUDGET` when set to valid integers.
    pub fn from_env() -> Limits {
        let mut l = Limits::DEFAULT;
        if let Some(v) = std::env::var(Self::MAX_ORDER_VAR)
            .ok()
            .and_then(|s| s.parse().ok())
        {
            l.max_field_order = v;
        }
        if let Some(v) = std::env::var(Self::SEARCH_BUDGET_VAR)
            .ok()
            .and_then(|s| s.parse().ok())
        {
            l.search_budget = v;
        }
        l
    }

    /// Process-wide limits, read from the environment on first use.
    pub fn global() -> &'static Limits {
        static LIMITS: OnceLock<Limits> = OnceLock::new();
        LIMITS.get_or_init(Limits::from_env)
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::DEFAULT
    }
}
