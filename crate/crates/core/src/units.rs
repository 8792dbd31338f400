//! Convergents, the fundamental unit read off a period, and the regulator.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::surd::Expansion;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
    pub h: usize,
}

/// `p_h / q_h` for every recorded partial quotient.
pub fn convergents(e: &Expansion) -> Vec<Convergent> {
    let a: Vec<BigInt> = e.records.iter().map(|r| r.a.clone()).collect();
    continuants(&a)
}

/// Convergents of an arbitrary sequence of partial quotients.
pub fn continuants(a: &[BigInt]) -> Vec<Convergent> {
    let (mut p2, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
    a.iter()
        .enumerate()
        .map(|(h, a)| {
            let p = a * &p1 + &p2;
            let q = a * &q1 + &q2;
            p2 = std::mem::replace(&mut p1, p.clone());
            q2 = std::mem::replace(&mut q1, q.clone());
            Convergent { p, q, h }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitForm {
    /// `u + v sqrt N`
    Integral,
    /// `(u + v sqrt D) / 2`
    HalfIntegral,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub u: BigInt,
    pub v: BigInt,
    pub norm: i8,
    pub form: UnitForm,
    /// `N` for the integral form, `D` for the half-integral one.
    pub radicand: BigInt,
}

impl FundamentalUnit {
    /// `u^2 - radicand v^2`, which is `norm` or `4 norm` depending on the form.
    pub fn norm_form_value(&self) -> BigInt {
        &self.u * &self.u - &self.radicand * &self.v * &self.v
    }

    pub fn norm_holds(&self) -> bool {
        let scale = match self.form {
            UnitForm::Integral => 1,
            UnitForm::HalfIntegral => 4,
        };
        self.norm_form_value() == BigInt::from(scale * i32::from(self.norm))
    }

    /// `floor(eps * 2^bits)`.
    fn fixed_point(&self, bits: u64) -> BigUint {
        let scaled_u = self.u.magnitude() << bits;
        let rad: BigUint = (self.radicand.magnitude() * self.v.magnitude() * self.v.magnitude()) << (2 * bits);
        let sum = scaled_u + rad.sqrt();
        match self.form {
            UnitForm::Integral => sum,
            UnitForm::HalfIntegral => sum >> 1u32,
        }
    }
}

pub fn fundamental_unit(e: &Expansion) -> Result<FundamentalUnit> {
    let period = e.period.ok_or(Error::NoPeriod { steps: e.records.len() })?;
    let conv = convergents(e);
    let c = &conv[period - 1];
    let (u, v, form, radicand) = if e.is_half_integral() {
        let u = &c.p * 2u32 - &c.q;
        let v = c.q.clone();
        let even = |x: &BigInt| (x % 2u32).is_zero();
        if even(&u) && even(&v) {
            (u >> 1, v >> 1, UnitForm::Integral, e.radicand.n().clone())
        } else {
            (u, v, UnitForm::HalfIntegral, e.radicand.n().clone())
        }
    } else {
        (c.p.clone(), c.q.clone(), UnitForm::Integral, e.radicand.n().clone())
    };
    let mut unit = FundamentalUnit { u, v, norm: 1, form, radicand };
    let value = unit.norm_form_value();
    let scale = if form == UnitForm::HalfIntegral { 4 } else { 1 };
    unit.norm = if value == BigInt::from(scale) {
        1
    } else if value == BigInt::from(-scale) {
        -1
    } else {
        return Err(Error::Invariant { h: period, detail: format!("norm form evaluates to {value}, not +-{scale}") });
    };
    Ok(unit)
}

/// `ln eps` held as a fixed-point binary fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regulator {
    mantissa: BigInt,
    frac_bits: u64,
    pub precision_bits: u32,
}

impl Regulator {
    pub fn value(&self) -> f64 {
        let shift = self.frac_bits.saturating_sub(60);
        let top = (&self.mantissa >> shift).to_f64().unwrap_or(f64::INFINITY);
        top / 2f64.powi((self.frac_bits - shift) as i32)
    }

    /// Truncated decimal expansion with `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scaled: BigInt = (&self.mantissa * BigInt::from(10u32).pow(digits as u32)) >> self.frac_bits;
        let s = scaled.to_string();
        if digits == 0 {
            return s;
        }
        let s = format!("{s:0>width$}", width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        format!("{int}.{frac}")
    }
}

/// Natural logarithm of the fundamental unit, evaluated from the exact unit.
pub fn regulator(e: &Expansion, precision_bits: u32) -> Result<Regulator> {
    if precision_bits < 32 {
        return Err(Error::Domain(format!("precision_bits must be >= 32, got {precision_bits}")));
    }
    let unit = fundamental_unit(e)?;
    // ln eps > 0.48, so absolute error 2^-bits is well inside the relative bound
    let bits = u64::from(precision_bits) + 64;
    let mantissa = ln_fixed(&unit.fixed_point(bits), bits);
    if !mantissa.is_positive() {
        return Err(Error::Invariant { h: 0, detail: "regulator is not positive".into() });
    }
    Ok(Regulator { mantissa, frac_bits: bits, precision_bits })
}

/// `atanh(z)` for a fixed-point `0 <= z < 1/2`.
fn atanh_fixed(z: &BigInt, bits: u64) -> BigInt {
    let z2 = (z * z) >> bits;
    let mut power = z.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    loop {
        let term = &power / k;
        if term.is_zero() {
            return sum;
        }
        sum += term;
        power = (power * &z2) >> bits;
        k += 2;
    }
}

/// `ln x` for a fixed-point `x >= 1` via `x = 2^e m`, `ln m = 2 atanh((m-1)/(m+1))`.
fn ln_fixed(x: &BigUint, bits: u64) -> BigInt {
    let one = BigInt::one() << bits;
    let x = BigInt::from(x.clone());
    let exp = x.bits() as i64 - 1 - bits as i64;
    let m = if exp >= 0 { &x >> exp as u64 } else { &x << (-exp) as u64 };
    let z = ((&m - &one) << bits) / (&m + &one);
    let ln_m = atanh_fixed(&z, bits) * 2u32;
    let ln2 = atanh_fixed(&(&one / 3u32), bits) * 2u32;
    ln2 * exp + ln_m
}
