//! Registry of the parameterized discriminant families `D_n = S(n)^2 + T(n)`
//! and helpers for reading the factor structure of their `Q_h` columns.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{exact_sqrt, strip_factor};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::surd::{expand, SeedMode};

/// `c * x^(alpha n + beta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerTerm {
    pub c: i64,
    pub alpha: u32,
    pub beta: i32,
}

impl PowerTerm {
    pub const fn new(c: i64, alpha: u32, beta: i32) -> Self {
        PowerTerm { c, alpha, beta }
    }

    pub fn exponent(&self, n: u32) -> Option<u32> {
        let e = i64::from(self.alpha) * i64::from(n) + i64::from(self.beta);
        u32::try_from(e).ok()
    }

    pub fn eval(&self, x: &BigInt, n: u32) -> Option<BigInt> {
        Some(BigInt::from(self.c) * x.pow(self.exponent(n)?))
    }
}

/// A sum of power terms plus an integer constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSum {
    pub terms: Vec<PowerTerm>,
    pub constant: i64,
}

impl TermSum {
    pub fn eval(&self, x: &BigInt, n: u32) -> Option<BigInt> {
        self.terms.iter().try_fold(BigInt::from(self.constant), |acc, t| Some(acc + t.eval(x, n)?))
    }
}

/// `n = residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Congruence {
    pub modulus: u32,
    pub residue: u32,
}

impl Congruence {
    pub fn admits(&self, n: u32) -> bool {
        n % self.modulus == self.residue
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: &'static str,
    pub x: u64,
    pub s: TermSum,
    pub t: TermSum,
    /// Primes expected in the `Q_h` factor patterns.
    pub primes: Vec<u64>,
    /// Allowed `f` for expanding `D / f^2`; always contains 1.
    pub square_divisors: Vec<u64>,
    pub n_constraint: Option<Congruence>,
    /// The parameter the printed table uses.
    pub table_n: u32,
    /// The heading formula as printed.
    pub formula: &'static str,
}

impl FamilySpec {
    pub fn base(&self) -> BigInt {
        BigInt::from(self.x)
    }

    pub fn primes_big(&self) -> Vec<BigUint> {
        self.primes.iter().map(|&p| BigUint::from(p)).collect()
    }
}

fn terms(list: &[(i64, u32, i32)], constant: i64) -> TermSum {
    TermSum { terms: list.iter().map(|&(c, a, b)| PowerTerm::new(c, a, b)).collect(), constant }
}

/// The built-in families, one per printed table heading.
pub fn registry() -> Vec<FamilySpec> {
    let fam = |name, x, s, t, primes: &[u64], formula, table_n| FamilySpec {
        name,
        x,
        s,
        t,
        primes: primes.to_vec(),
        square_divisors: vec![1],
        n_constraint: None,
        table_n,
        formula,
    };
    let mut ml11 = fam(
        "ml-11",
        11,
        terms(&[(4, 1, 0)], 844),
        terms(&[(48, 1, 0)], 0),
        &[2, 3, 7, 11],
        "(4*11^n + 7*11^2 - 3)^2 + 4*4*3*11^n",
        15,
    );
    ml11.n_constraint = Some(Congruence { modulus: 12, residue: 3 });
    // x = 1319011 = 41 * 53 * 607 is composite; its prime factors stand in for it
    let mut sq = fam(
        "sq-1319011",
        1_319_011,
        terms(&[(1018, 1, 0)], 65_290_957),
        terms(&[(356_300, 1, 0)], 0),
        &[3, 5, 7, 11, 41, 53, 509, 607],
        "(2*509*1319011^n + (3^2*11*1319011 - 5^2*7)/2)^2 + 4*509*5^2*7*1319011^n",
        8,
    );
    sq.square_divisors = vec![1, 15];
    vec![
        fam(
            "easy-kreeper-67",
            67,
            terms(&[(14, 1, 0)], 8),
            terms(&[(88, 1, 0)], 0),
            &[2, 11, 67],
            "(7*2*67^n + (67-11)/7)^2 + 4*2*11*67^n",
            6,
        ),
        fam(
            "lkreeper-43",
            43,
            terms(&[(10, 1, 0)], 39_750),
            terms(&[(140, 1, 0)], 0),
            &[2, 5, 7, 43],
            "(2*5*43^n + (43^3-7)/2)^2 + 4*5*7*43^n",
            11,
        ),
        fam(
            "negl-131",
            131,
            terms(&[(77, 1, 0)], 14),
            terms(&[(-644, 1, 0)], 0),
            &[7, 23, 131],
            "(11*7*131^n + (131-(-23))/11)^2 + 4*7*(-23)*131^n",
            6,
        ),
        fam(
            "ml-2",
            2,
            terms(&[(1, 1, 0)], -31),
            terms(&[(44, 1, 0)], 0),
            &[2, 5, 11],
            "(2^n - 5*2^2 - 11)^2 + 4*11*2^n",
            26,
        ),
        ml11,
        sq,
        fam(
            "higher-3a",
            3,
            terms(&[(1, 2, 2), (1, 1, 2), (1, 1, 0)], -1),
            terms(&[(4, 1, 0)], 0),
            &[3],
            "(3^(2n+2) + 3^(n+2) + 3^n - 1)^2 + 4*3^n",
            14,
        ),
        fam(
            "higher-3b",
            3,
            terms(&[(1, 2, 3), (-31, 1, 0)], 10),
            terms(&[(40, 1, 0)], 0),
            &[2, 3, 5],
            "(3^(2n+3) - 31*3^n + 10)^2 + 40*3^n",
            21,
        ),
    ]
}

pub fn family(name: &str) -> Result<FamilySpec> {
    registry().into_iter().find(|f| f.name == name).ok_or_else(|| Error::UnknownFamily(name.to_string()))
}

/// Exact `D_n / f^2` for a family member.
pub fn discriminant(f: &FamilySpec, n: u32, square_divisor: u64) -> Result<BigInt> {
    let err = |detail: String| Error::Family { family: f.name.to_string(), detail };
    if let Some(c) = f.n_constraint {
        if !c.admits(n) {
            return Err(err(format!("n = {n} violates n = {} (mod {})", c.residue, c.modulus)));
        }
    }
    if !f.square_divisors.contains(&square_divisor) {
        return Err(err(format!("square divisor {square_divisor} is not offered")));
    }
    let x = f.base();
    let negative_exponent = || err(format!("negative exponent at n = {n}"));
    let s = f.s.eval(&x, n).ok_or_else(negative_exponent)?;
    let t = f.t.eval(&x, n).ok_or_else(negative_exponent)?;
    let d = &s * &s + t;
    if !d.is_positive() {
        return Err(err(format!("D_{n} = {d} is not positive")));
    }
    let f2 = BigInt::from(square_divisor).pow(2);
    let (d, r) = d.div_rem(&f2);
    if !r.is_zero() {
        return Err(err(format!("{square_divisor}^2 does not divide D_{n}")));
    }
    if exact_sqrt(&d).is_some() {
        return Err(Error::RationalSurd(d.to_string()));
    }
    Ok(d)
}

/// `Q = cofactor * prod p^e` over a fixed prime set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPattern {
    pub cofactor: BigUint,
    pub exponents: BTreeMap<u64, u32>,
}

impl FactorPattern {
    pub fn is_pure(&self) -> bool {
        self.cofactor.is_one()
    }

    pub fn reconstruct(&self) -> BigUint {
        self.exponents.iter().fold(self.cofactor.clone(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }
}

/// Canonical text like `2*11*67^4`; the cofactor, when not 1, leads.
impl fmt::Display for FactorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.cofactor.is_one() || self.exponents.is_empty() {
            parts.push(self.cofactor.to_string());
        }
        for (p, e) in &self.exponents {
            parts.push(if *e == 1 { p.to_string() } else { format!("{p}^{e}") });
        }
        write!(f, "{}", parts.join("*"))
    }
}

pub fn factor_pattern(q: &BigUint, primes: &[u64]) -> FactorPattern {
    let mut cofactor = q.clone();
    let mut exponents = BTreeMap::new();
    for &p in primes {
        let e = strip_factor(&mut cofactor, &BigUint::from(p));
        if e > 0 {
            exponents.insert(p, e);
        }
    }
    FactorPattern { cofactor, exponents }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome {
    pub period: Option<usize>,
    pub rows: usize,
    /// Rows `h >= 1` whose displayed `Q_h` factors entirely over the family primes.
    pub pure_rows: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub n: u32,
    pub outcome: Result<ScanOutcome>,
}

pub fn scan_one(f: &FamilySpec, n: u32, max_steps: usize) -> Result<ScanOutcome> {
    let d = discriminant(f, n, 1)?;
    let e = expand(&d, SeedMode::Order, max_steps)?;
    let pure_rows =
        e.display_records().iter().skip(1).filter(|r| factor_pattern(r.q.magnitude(), &f.primes).is_pure()).count();
    Ok(ScanOutcome { period: e.period, rows: e.records.len(), pure_rows })
}

/// Period (or truncation) for each `n` in `n_from..=n_to`, ascending.
pub fn scan_periods(f: &FamilySpec, n_from: u32, n_to: u32, max_steps: usize, exec: Exec) -> Vec<ScanRow> {
    let ns: Vec<u32> = (n_from..=n_to).collect();
    exec.map(ns, |n| ScanRow { n, outcome: scan_one(f, n, max_steps) })
}
