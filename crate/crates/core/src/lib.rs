//! Exact continued fraction expansions of real quadratic orders and of
//! quadratic function fields over the rationals, together with the
//! parameterized discriminant families ("creepers") whose expansion tables
//! this crate reproduces and verifies.
//!
//! The integer engine lives in [`surd`], units and regulators in [`units`],
//! the family registry in [`families`], the polynomial engine in
//! [`ratpoly`], [`series`] and [`funfield`], and table replay in
//! [`fixture`].

pub mod arith;
pub mod error;
pub mod exec;
pub mod families;
pub mod fixture;
pub mod funfield;
pub mod ratpoly;
pub mod series;
pub mod surd;
pub mod symmetry;
pub mod units;

pub use error::{Error, Result};
pub use exec::Exec;
pub use families::{
    discriminant, factor_pattern, family, registry, scan_periods, FactorPattern, FamilySpec, PowerTerm, ScanRow,
};
pub use fixture::{
    parse_fixture, verify, Cell, Column, Computed, FactorBase, FactorExpr, FixtureKind, FixtureRow, FixtureTable,
    Mismatch, VerifyReport, VerifyStatus,
};
pub use funfield::{ff_expand, series_floor, PolyExpansion, PolyRecord};
pub use ratpoly::{RatPoly, Rational};
pub use series::{sqrt_series, SqrtSeries};
pub use surd::{expand, isqrt, seed, step, Expansion, ExpansionRecord, Radicand, SeedMode, SurdState};
pub use symmetry::{detect_symmetry, SymmetryReport};
pub use units::{
    continuants, convergents, fundamental_unit, regulator, Convergent, FundamentalUnit, Regulator, UnitForm,
};

/// Default step budget for integer and polynomial expansions.
pub const DEFAULT_MAX_STEPS: usize = 1_000_000;
