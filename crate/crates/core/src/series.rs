//! Square roots of even-degree polynomials as Laurent series at infinity.
//!
//! With `t = 1/X`, `D(X) = X^{2d} E(t)` where `E(0)` is the leading
//! coefficient. Newton's iteration `y <- (y + E / y) / 2` on power series
//! in `t`, doubling the precision each round, gives `sqrt E`, and
//! `sqrt D = X^d sqrt E(1/X)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{RatPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtSeries {
    /// Terms of degree `0..=d`.
    pub poly_part: RatPoly,
    /// Coefficients of `X^-1, X^-2, .., X^-k`.
    pub tail: Vec<Rational>,
    pub k: usize,
}

impl SqrtSeries {
    pub fn half_degree(&self) -> usize {
        self.poly_part.degree().unwrap_or(0)
    }

    /// Coefficient of `X^e` for `-k <= e <= d`.
    pub fn coeff(&self, e: i64) -> Rational {
        if e >= 0 {
            self.poly_part.coeff(e as usize)
        } else {
            self.tail.get((-e - 1) as usize).cloned().unwrap_or_else(Rational::zero)
        }
    }
}

fn rational_sqrt(c: &Rational) -> Option<Rational> {
    if c.is_negative() {
        return None;
    }
    let exact = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Rational::new(exact(c.numer())?, exact(c.denom())?))
}

/// Truncated product of two power series.
fn mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `1 / a` modulo `t^len` by Newton: `z <- z (2 - a z)`.
fn inverse_trunc(a: &[Rational], len: usize) -> Vec<Rational> {
    let mut z = vec![a[0].recip()];
    let mut prec = 1;
    while prec < len {
        prec = (prec * 2).min(len);
        let az = mul_trunc(a, &z, prec);
        let mut two_minus: Vec<Rational> = az.into_iter().map(|c| -c).collect();
        two_minus[0] += Rational::from_integer(2.into());
        z = mul_trunc(&z, &two_minus, prec);
    }
    z
}

/// `sqrt E` modulo `t^len`.
fn sqrt_trunc(e: &[Rational], len: usize) -> Result<Vec<Rational>> {
    let c0 = rational_sqrt(&e[0])
        .ok_or_else(|| Error::NotRealQuadratic(format!("leading coefficient {} is not a square", e[0])))?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut y = vec![c0];
    let mut prec = 1;
    while prec < len {
        prec = (prec * 2).min(len);
        let inv = inverse_trunc(&y, prec);
        let quot = mul_trunc(e, &inv, prec);
        y.resize(prec, Rational::zero());
        y = y.iter().zip(&quot).map(|(a, b)| (a + b) * &half).collect();
    }
    Ok(y)
}

/// `sqrt D` through `X^-k`.
pub fn sqrt_series(d: &RatPoly, k: usize) -> Result<SqrtSeries> {
    let deg = d.degree().ok_or_else(|| Error::NotRealQuadratic("zero polynomial".into()))?;
    if deg % 2 == 1 {
        return Err(Error::NotRealQuadratic(format!("odd degree {deg}")));
    }
    let half = deg / 2;
    let e: Vec<Rational> = (0..=deg).map(|i| d.coeff(deg - i)).collect();
    let y = sqrt_trunc(&e, half + k + 1)?;
    let poly_part = RatPoly::new((0..=half).map(|i| y[half - i].clone()).collect());
    let tail = y[half + 1..].to_vec();
    Ok(SqrtSeries { poly_part, tail, k })
}
