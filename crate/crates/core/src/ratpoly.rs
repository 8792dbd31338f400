//! Dense polynomials over exact rationals.
//!
//! The canonical text form lists terms by descending degree as `c*X^e`,
//! with `c` written `p` or `p/q`, `X` for `e = 1`, a bare constant for
//! `e = 0`, a coefficient of 1 omitted and ` + ` / ` - ` between terms:
//! `2*X^3 - X^2 - 2`, `1/4*X + 1/8`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        RatPoly::new(vec![c])
    }

    pub fn one() -> Self {
        RatPoly::constant(Rational::one())
    }

    /// `c X^e`
    pub fn monomial(c: Rational, e: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = c;
        RatPoly::new(coeffs)
    }

    pub fn from_ints(ascending: &[i64]) -> Self {
        RatPoly::new(ascending.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// The value when this is a nonzero constant.
    pub fn as_constant(&self) -> Option<&Rational> {
        (self.coeffs.len() == 1).then(|| &self.coeffs[0])
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Largest `|num| * den` over the coefficients.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.numer().abs() * c.denom()).max().unwrap_or_else(BigInt::zero)
    }

    /// `(q, r)` with `self = q g + r` and `deg r < deg g`.
    pub fn divmod(&self, g: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let gd = g.degree().ok_or(Error::ZeroDivisor)?;
        let lead = g.coeffs[gd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= gd {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - gd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + gd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[k + j] -= &c * gc;
            }
            quot[k] = c;
        }
        rem.truncate(gd);
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    pub fn exact_div(&self, g: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.divmod(g).ok()?;
        r.is_zero().then_some(q)
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match e {
                0 => fmt_rational(&mag),
                _ => {
                    let x = if e == 1 { "X".to_string() } else { format!("X^{e}") };
                    if mag.is_one() {
                        x
                    } else {
                        format!("{}*{x}", fmt_rational(&mag))
                    }
                }
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => f.write_str(&body)?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for RatPoly {
    type Err = Error;

    /// Accepts the canonical form and loose variants of it (`2X^3`, `x`, no spaces).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |detail: String| Error::parse(0, detail);
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(bad("empty polynomial".into()));
        }
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut i = 0;
        let digits = |i: &mut usize| -> Option<BigInt> {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            (*i > start).then(|| chars[start..*i].iter().collect::<String>().parse().unwrap())
        };
        while i < chars.len() {
            let mut sign = Rational::one();
            match chars[i] {
                '+' => i += 1,
                '-' => {
                    sign = -sign;
                    i += 1;
                }
                _ if i > 0 => return Err(bad(format!("expected + or - at `{s}`"))),
                _ => {}
            }
            let mut c = match digits(&mut i) {
                Some(num) => {
                    if i < chars.len() && chars[i] == '/' {
                        i += 1;
                        let den = digits(&mut i).ok_or_else(|| bad(format!("missing denominator in `{s}`")))?;
                        if den.is_zero() {
                            return Err(bad(format!("zero denominator in `{s}`")));
                        }
                        Rational::new(num, den)
                    } else {
                        Rational::from_integer(num)
                    }
                }
                None => Rational::one(),
            };
            let had_coeff = i > 0 && chars[i - 1].is_ascii_digit();
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            let mut e = 0usize;
            if i < chars.len() && (chars[i] == 'X' || chars[i] == 'x') {
                i += 1;
                e = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let exp = digits(&mut i).ok_or_else(|| bad(format!("missing exponent in `{s}`")))?;
                    e = exp.try_into().map_err(|_| bad(format!("exponent too large in `{s}`")))?;
                }
            } else if !had_coeff {
                return Err(bad(format!("unexpected character in `{s}`")));
            }
            c *= sign;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] += c;
        }
        Ok(RatPoly::new(coeffs))
    }
}
