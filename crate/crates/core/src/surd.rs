//! Continued fraction expansion of quadratic irrationals `(P + sqrt N) / Q`
//! over arbitrary-precision integers.
//!
//! Every state satisfies `Q | N - P^2`, so the whole recurrence stays
//! integral:
//!
//! ```text
//! a_h     = floor((P_h + floor(sqrt N)) / Q_h)
//! P_{h+1} = a_h Q_h - P_h
//! Q_{h+1} = (N - P_{h+1}^2) / Q_h
//! ```
//!
//! Discriminants `D = 1 (mod 4)` are seeded at `(1 + sqrt D) / 2`, i.e.
//! `(P, Q) = (1, 2)` against `N = D`. Printed tables for those orders use
//! the halved coordinates `((P - 1) / 2, Q / 2)`; see
//! [`Expansion::display_records`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, exact_div, floor_div};
use crate::error::{Error, Result};

pub use crate::arith::isqrt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedMode {
    /// Standard generator of the quadratic order of discriminant `D`.
    Order,
    /// Plain `sqrt D` for any nonsquare `D`.
    Raw,
}

impl std::str::FromStr for SeedMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "order" => Ok(SeedMode::Order),
            "raw" => Ok(SeedMode::Raw),
            _ => Err(Error::Domain(format!("unknown seed mode `{s}`"))),
        }
    }
}

/// The nonsquare number under the root, with its cached integer square root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Radicand {
    n: BigInt,
    isqrt_n: BigInt,
    source_d: BigInt,
}

impl Radicand {
    pub fn new(n: BigInt, source_d: BigInt) -> Result<Self> {
        if !n.is_positive() {
            return Err(Error::Domain(format!("radicand must be positive, got {n}")));
        }
        if source_d != n && source_d != &n * 4u32 {
            return Err(Error::Domain(format!("{source_d} is neither N nor 4N for N = {n}")));
        }
        let isqrt_n = isqrt(&n)?;
        if &isqrt_n * &isqrt_n == n {
            return Err(Error::RationalSurd(n.to_string()));
        }
        Ok(Radicand { n, isqrt_n, source_d })
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn isqrt_n(&self) -> &BigInt {
        &self.isqrt_n
    }

    pub fn source_d(&self) -> &BigInt {
        &self.source_d
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdState {
    pub p: BigInt,
    pub q: BigInt,
    pub h: usize,
}

impl SurdState {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, h: usize) -> Self {
        SurdState { p: p.into(), q: q.into(), h }
    }

    pub fn is_admissible(&self, radicand: &Radicand) -> bool {
        !self.q.is_zero() && (radicand.n() - &self.p * &self.p).is_multiple_of(&self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionRecord {
    pub h: usize,
    pub a: BigInt,
    pub p: BigInt,
    pub q: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub radicand: Radicand,
    pub seed_mode: SeedMode,
    pub records: Vec<ExpansionRecord>,
    pub period: Option<usize>,
    pub truncated: bool,
}

impl Expansion {
    /// True when the seed was `(1 + sqrt D) / 2`.
    pub fn is_half_integral(&self) -> bool {
        self.seed_mode == SeedMode::Order && self.radicand.source_d() == self.radicand.n()
    }

    /// `(P_{l+1}, Q_{l+1})`, the state following the closing row, which
    /// equals `(P_1, Q_1)` for a periodic expansion.
    pub fn next_state(&self) -> Option<(BigInt, BigInt)> {
        let last = self.records.last()?;
        let p = &last.a * &last.q - &last.p;
        let q = (self.radicand.n() - &p * &p) / &last.q;
        Some((p, q))
    }

    /// Rows in the coordinates the printed tables use: unchanged for
    /// `sqrt N`, and `((P - 1) / 2, Q / 2)` for the `(1 + sqrt D) / 2` seed.
    pub fn display_records(&self) -> Vec<ExpansionRecord> {
        if !self.is_half_integral() {
            return self.records.clone();
        }
        self.records
            .iter()
            .map(|r| ExpansionRecord { h: r.h, a: r.a.clone(), p: (&r.p - 1u32) >> 1, q: &r.q >> 1 })
            .collect()
    }
}

/// Initial radicand and state for a discriminant.
pub fn seed(d: &BigInt, mode: SeedMode) -> Result<(Radicand, SurdState)> {
    if !d.is_positive() {
        return Err(Error::Domain(format!("discriminant must be positive, got {d}")));
    }
    if arith::exact_sqrt(d).is_some() {
        return Err(Error::RationalSurd(d.to_string()));
    }
    match mode {
        SeedMode::Raw => Ok((Radicand::new(d.clone(), d.clone())?, SurdState::new(0, 1, 0))),
        SeedMode::Order => {
            let r = d.mod_floor(&BigInt::from(4u32));
            if r.is_zero() {
                let n = d >> 2;
                Ok((Radicand::new(n, d.clone())?, SurdState::new(0, 1, 0)))
            } else if r.is_one() {
                Ok((Radicand::new(d.clone(), d.clone())?, SurdState::new(1, 2, 0)))
            } else {
                Err(Error::NotDiscriminant(d.to_string()))
            }
        }
    }
}

/// One step of the recurrence: the partial quotient and the next state.
pub fn step(state: &SurdState, radicand: &Radicand) -> Result<(BigInt, SurdState)> {
    if state.q.is_zero() {
        return Err(Error::Invariant { h: state.h, detail: "Q = 0".into() });
    }
    let top = &state.p + radicand.isqrt_n();
    let a = if state.q.is_positive() { floor_div(&top, &state.q) } else { floor_div(&(top + 1u32), &state.q) };
    let p = &a * &state.q - &state.p;
    let q = exact_div(&(radicand.n() - &p * &p), &state.q)
        .ok_or_else(|| Error::Invariant { h: state.h, detail: format!("Q = {} does not divide N - P^2", state.q) })?;
    Ok((a, SurdState { p, q, h: state.h + 1 }))
}

/// Expands until `(P, Q)` returns to `(P_1, Q_1)` or `max_steps` rows exist.
pub fn expand(d: &BigInt, mode: SeedMode, max_steps: usize) -> Result<Expansion> {
    let (radicand, state) = seed(d, mode)?;
    expand_from(radicand, mode, state, max_steps)
}

pub(crate) fn expand_from(
    radicand: Radicand,
    seed_mode: SeedMode,
    mut state: SurdState,
    max_steps: usize,
) -> Result<Expansion> {
    if max_steps == 0 {
        return Err(Error::Domain("max_steps must be positive".into()));
    }
    let mut records = Vec::new();
    let mut first: Option<(BigInt, BigInt)> = None;
    let mut period = None;
    while records.len() < max_steps {
        let (a, next) = step(&state, &radicand)?;
        records.push(ExpansionRecord { h: state.h, a, p: state.p, q: state.q });
        match &first {
            None => first = Some((next.p.clone(), next.q.clone())),
            Some((p1, q1)) if *p1 == next.p && *q1 == next.q => {
                period = Some(next.h - 1);
                break;
            }
            Some(_) => {}
        }
        state = next;
    }
    let truncated = period.is_none();
    Ok(Expansion { radicand, seed_mode, records, period, truncated })
}
