//! Mirror structure of a detected period.
//!
//! For a period of length `l` the interior partial quotients
//! `a_1 .. a_{l-1}` read the same reversed, `Q_h = Q_{l-h}` for
//! `1 <= h <= l-1` and `P_h = P_{l+1-h}` for `1 <= h <= l`.

use crate::error::{Error, Result};

/// Where the mirror axis of a period sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row(usize),
    Between(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub period: usize,
    pub palindrome: bool,
    pub q_mirror: bool,
    pub p_mirror: bool,
    pub axis: Axis,
}

impl SymmetryReport {
    pub fn is_symmetric(&self) -> bool {
        self.palindrome && self.q_mirror && self.p_mirror
    }
}

/// A periodic table of `(a, P, Q)` rows, integer or polynomial.
pub trait MirrorTable {
    type Cell: PartialEq;

    fn period(&self) -> Option<usize>;
    fn row_count(&self) -> usize;
    fn cells(&self, h: usize) -> (&Self::Cell, &Self::Cell, &Self::Cell);
}

impl MirrorTable for crate::surd::Expansion {
    type Cell = num_bigint::BigInt;

    fn period(&self) -> Option<usize> {
        self.period
    }

    fn row_count(&self) -> usize {
        self.records.len()
    }

    fn cells(&self, h: usize) -> (&Self::Cell, &Self::Cell, &Self::Cell) {
        let r = &self.records[h];
        (&r.a, &r.p, &r.q)
    }
}

impl MirrorTable for crate::funfield::PolyExpansion {
    type Cell = crate::ratpoly::RatPoly;

    fn period(&self) -> Option<usize> {
        self.period
    }

    fn row_count(&self) -> usize {
        self.records.len()
    }

    fn cells(&self, h: usize) -> (&Self::Cell, &Self::Cell, &Self::Cell) {
        let r = &self.records[h];
        (&r.a, &r.p, &r.q)
    }
}

pub fn detect_symmetry<T: MirrorTable>(table: &T) -> Result<SymmetryReport> {
    let period = table.period().ok_or(Error::NoPeriod { steps: table.row_count() })?;
    if table.row_count() <= period {
        return Err(Error::NoPeriod { steps: table.row_count() });
    }
    let a = |h| table.cells(h).0;
    let p = |h| table.cells(h).1;
    let q = |h| table.cells(h).2;
    let palindrome = (1..period).all(|h| a(h) == a(period - h));
    let q_mirror = (1..period).all(|h| q(h) == q(period - h));
    let p_mirror = (1..=period).all(|h| p(h) == p(period + 1 - h));
    let axis = if period % 2 == 0 { Axis::Row(period / 2) } else { Axis::Between(period / 2, period / 2 + 1) };
    Ok(SymmetryReport { period, palindrome, q_mirror, p_mirror, axis })
}
