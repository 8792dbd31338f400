//! Continued fraction expansion of `sqrt D(X)` for even-degree `D` over the
//! rationals.
//!
//! The recurrence mirrors the integer one with "polynomial part" in place
//! of floor: `a_h` is the polynomial part of `(P_h + sqrt D) / Q_h`,
//! `P_{h+1} = a_h Q_h - P_h` and `Q_{h+1} = (D - P_{h+1}^2) / Q_h`.

use crate::error::{Error, Result};
use crate::ratpoly::{RatPoly, Rational};
use crate::series::{sqrt_series, SqrtSeries};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRecord {
    pub h: usize,
    pub a: RatPoly,
    pub p: RatPoly,
    pub q: RatPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExpansion {
    pub d: RatPoly,
    pub records: Vec<PolyRecord>,
    pub period: Option<usize>,
    /// First `h >= 1` where `Q_h` is a constant other than 1.
    pub quasi_marker: Option<(usize, Rational)>,
    pub truncated: bool,
    /// Depth of the `sqrt D` series used for the partial quotients.
    pub series_depth: usize,
}

/// Polynomial part of `(p + sqrt D) / q` from the truncated series.
///
/// The truncated tail only perturbs terms below `X^-k`, which after
/// division by `q` (degree >= 0) stay below `X^0`, so the result is exact
/// for any depth.
pub fn series_floor(p: &RatPoly, s: &SqrtSeries, q: &RatPoly) -> Result<RatPoly> {
    let k = s.k;
    let shift = RatPoly::monomial(Rational::from_integer(1.into()), k);
    let mut num = &(p + &s.poly_part) * &shift;
    let tail: Vec<Rational> = (0..k).map(|j| s.tail[k - 1 - j].clone()).collect();
    num = &num + &RatPoly::new(tail);
    let (quot, _) = num.divmod(&(q * &shift))?;
    Ok(quot)
}

pub fn ff_expand(d: &RatPoly, max_steps: usize) -> Result<PolyExpansion> {
    if max_steps == 0 {
        return Err(Error::Domain("max_steps must be positive".into()));
    }
    let deg = d.degree().unwrap_or(0);
    let half = deg / 2;
    let depth = 4 * half + 4;
    let series = sqrt_series(d, depth)?;
    if &(&series.poly_part * &series.poly_part) == d {
        return Err(Error::RationalSurd(d.to_string()));
    }

    let mut records: Vec<PolyRecord> = Vec::new();
    let mut first: Option<(RatPoly, RatPoly)> = None;
    let mut period = None;
    let mut quasi_marker = None;
    let (mut p, mut q) = (RatPoly::zero(), RatPoly::one());
    while records.len() < max_steps {
        let h = records.len();
        if h >= 1 && quasi_marker.is_none() {
            if let Some(c) = q.as_constant() {
                if *c != Rational::from_integer(1.into()) {
                    quasi_marker = Some((h, c.clone()));
                }
            }
        }
        let a = series_floor(&p, &series, &q)?;
        let next_p = &(&a * &q) - &p;
        let next_q = (d - &(&next_p * &next_p))
            .exact_div(&q)
            .ok_or_else(|| Error::Invariant { h, detail: format!("Q = {q} does not divide D - P^2") })?;
        records.push(PolyRecord { h, a, p, q });
        match &first {
            None => first = Some((next_p.clone(), next_q.clone())),
            Some((p1, q1)) if *p1 == next_p && *q1 == next_q => {
                period = Some(h);
                break;
            }
            Some(_) => {}
        }
        p = next_p;
        q = next_q;
    }
    Ok(PolyExpansion { d: d.clone(), records, truncated: period.is_none(), period, quasi_marker, series_depth: depth })
}
