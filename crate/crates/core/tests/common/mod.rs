#![allow(dead_code)]

use std::path::PathBuf;

use creepers::{
    discriminant, expand, family, ff_expand, parse_fixture, verify, Expansion, FixtureTable, PolyExpansion, RatPoly,
    SeedMode, VerifyReport, DEFAULT_MAX_STEPS,
};

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn load(file: &str) -> FixtureTable {
    let path = fixtures_dir().join(file);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_fixture(&text).unwrap_or_else(|e| panic!("{file}: {e}"))
}

pub fn leprevost() -> RatPoly {
    let g = RatPoly::from_ints(&[2, -4, 1, 2]);
    let x_minus_1 = RatPoly::from_ints(&[-1, 1]);
    let x3 = RatPoly::from_ints(&[0, 0, 0, 8]);
    &(&g * &g) - &(&x3 * &(&x_minus_1 * &x_minus_1))
}

pub fn elkies() -> RatPoly {
    "X^6 - 2*X^5 - 4*X^4 + 2*X^3 + 37/4*X^2 - 15/2*X + 9/4".parse().unwrap()
}

pub fn ffkreeper() -> RatPoly {
    RatPoly::from_ints(&[1, 4, 6, 6, 5, 2, 1, 0, 0, 2, 0, 2, 2, 0, 0, 0, 0, 0, 1])
}

pub enum Source {
    Family { name: &'static str, n: u32, div: u64, primes: Vec<u64> },
    Poly(RatPoly),
}

pub struct Case {
    pub file: &'static str,
    pub source: Source,
}

fn fam(file: &'static str, name: &'static str, n: u32, div: u64) -> Case {
    let primes = family(name).unwrap().primes;
    Case { file, source: Source::Family { name, n, div, primes } }
}

pub fn cases() -> Vec<Case> {
    vec![
        fam("easy-kreeper-67.n6.tsv", "easy-kreeper-67", 6, 1),
        fam("lkreeper-43.n11.tsv", "lkreeper-43", 11, 1),
        fam("negl-131.n6.tsv", "negl-131", 6, 1),
        fam("ml-2.n26.tsv", "ml-2", 26, 1),
        fam("ml-11.n15.tsv", "ml-11", 15, 1),
        fam("sq-1319011.n8.tsv", "sq-1319011", 8, 1),
        fam("sq-1319011-div15.n8.tsv", "sq-1319011", 8, 15),
        fam("higher-3a.n14.tsv", "higher-3a", 14, 1),
        Case { file: "sleeper-leprevost.tsv", source: Source::Poly(leprevost()) },
        Case { file: "sleeper-elkies.tsv", source: Source::Poly(elkies()) },
        Case { file: "ffkreeper.n9.tsv", source: Source::Poly(ffkreeper()) },
    ]
}

pub enum Run {
    Integer(Expansion),
    Polynomial(PolyExpansion),
}

pub fn run(case: &Case) -> (Run, VerifyReport) {
    let fixture = load(case.file);
    match &case.source {
        Source::Family { name, n, div, primes } => {
            let d = discriminant(&family(name).unwrap(), *n, *div).unwrap();
            let e = expand(&d, SeedMode::Order, DEFAULT_MAX_STEPS).unwrap();
            let r = verify(&e, &fixture, Some(primes)).unwrap();
            (Run::Integer(e), r)
        }
        Source::Poly(d) => {
            let steps = if fixture.prefix_only { fixture.rows.len() } else { 10_000 };
            let e = ff_expand(d, steps).unwrap();
            let r = verify(&e, &fixture, None).unwrap();
            (Run::Polynomial(e), r)
        }
    }
}

pub mod props {
    use num_bigint::BigInt;
    use num_traits::{One, ToPrimitive};

    use creepers::{
        continuants, detect_symmetry, expand, fundamental_unit, regulator, Expansion, PolyExpansion, SeedMode,
    };

    pub fn nonsquares(limit: u64) -> impl Iterator<Item = u64> {
        (2..limit).filter(|n| {
            let r = bisect_isqrt(*n as u128) as u64;
            r * r != *n
        })
    }

    pub fn bisect_isqrt(n: u128) -> u128 {
        let (mut lo, mut hi) = (0u128, n.min(u64::MAX as u128) + 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if mid * mid <= n {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Textbook recurrence on machine integers; returns (a_0..a_l, l).
    pub fn naive(n: u64) -> (Vec<i128>, usize) {
        let n = n as i128;
        let (mut p, mut q) = (0i128, 1i128);
        let mut a = Vec::new();
        let mut first = None;
        loop {
            let r = bisect_isqrt(n as u128) as i128;
            let ah = (p + r) / q;
            a.push(ah);
            p = ah * q - p;
            q = (n - p * p) / q;
            match first {
                None => first = Some((p, q)),
                Some(f) if f == (p, q) => {
                    let period = a.len() - 1;
                    return (a, period);
                }
                Some(_) => {}
            }
        }
    }

    pub fn oracle_equivalence(limit: u64) -> Result<usize, String> {
        let mut count = 0;
        for n in nonsquares(limit) {
            let (a, period) = naive(n);
            let e = expand(&BigInt::from(n), SeedMode::Raw, 100_000).map_err(|e| e.to_string())?;
            let got: Vec<i128> = e.records.iter().map(|r| r.a.to_i128().unwrap()).collect();
            if e.period != Some(period) || got != a {
                return Err(format!("N = {n}: naive period {period}, engine {:?}", e.period));
            }
            count += 1;
        }
        Ok(count)
    }

    pub fn step_identity(e: &Expansion) -> Result<usize, String> {
        let n = e.radicand.n();
        for w in e.records.windows(2) {
            let (r, s) = (&w[0], &w[1]);
            if &(&r.q * &s.q + &s.p * &s.p) != n {
                return Err(format!("Q_h Q_h+1 + P_h+1^2 != N at h = {}", r.h));
            }
        }
        Ok(e.records.len().saturating_sub(1))
    }

    pub fn poly_step_identity(e: &PolyExpansion) -> Result<usize, String> {
        for w in e.records.windows(2) {
            let (r, s) = (&w[0], &w[1]);
            if &(&r.q * &s.q) + &(&s.p * &s.p) != e.d {
                return Err(format!("Q_h Q_h+1 + P_h+1^2 != D at h = {}", r.h));
            }
        }
        Ok(e.records.len().saturating_sub(1))
    }

    pub fn symmetric(e: &Expansion) -> Result<(), String> {
        let s = detect_symmetry(e).map_err(|e| e.to_string())?;
        s.is_symmetric().then_some(()).ok_or_else(|| format!("{s:?}"))
    }

    pub fn pell(e: &Expansion) -> Result<(), String> {
        let u = fundamental_unit(e).map_err(|e| e.to_string())?;
        u.norm_holds().then_some(()).ok_or_else(|| format!("norm fails: {u:?}"))
    }

    /// `sum ln((P_h + sqrt N) / Q_h)` over one period, in f64.
    pub fn log_sum(e: &Expansion) -> f64 {
        let l = e.period.expect("periodic");
        let root = e.radicand.n().to_f64().unwrap().sqrt();
        e.records[1..=l].iter().map(|r| ((r.p.to_f64().unwrap() + root) / r.q.to_f64().unwrap()).ln()).sum()
    }

    pub fn regulator_agrees(e: &Expansion) -> Result<f64, String> {
        let fixed = regulator(e, 128).map_err(|e| e.to_string())?.value();
        let float = log_sum(e);
        let rel = ((fixed - float) / float).abs();
        (rel < 1e-9).then_some(rel).ok_or_else(|| format!("fixed {fixed} vs float {float}"))
    }

    pub fn determinant(a: &[BigInt]) -> Result<(), String> {
        let c = continuants(a);
        for w in c.windows(2) {
            let d = &w[1].p * &w[0].q - &w[0].p * &w[1].q;
            let want = if w[1].h % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            if d != want {
                return Err(format!("determinant {d} at h = {}", w[1].h));
            }
        }
        Ok(())
    }
}
