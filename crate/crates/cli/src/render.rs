//! Text output. Every table is a valid fixture, so it can be fed back to `verify`.

use std::fmt::Write;

use creepers::{factor_pattern, fundamental_unit, regulator, Expansion, FamilySpec, PolyExpansion, UnitForm};

const REGULATOR_BITS: u32 = 128;
const REGULATOR_DIGITS: usize = 30;

fn header(out: &mut String, id: &str, kind: &str, truncated: bool, columns: &str) {
    writeln!(out, "#id={id}\n#kind={kind}\n#prefix={truncated}\n#columns={columns}").unwrap();
}

pub fn expansion(id: &str, e: &Expansion, primes: Option<&[u64]>) -> String {
    let mut out = String::new();
    let columns = if primes.is_some() { "h,a,P,Q,factors" } else { "h,a,P,Q" };
    header(&mut out, id, "integer", e.period.is_none(), columns);
    for r in e.display_records() {
        write!(out, "{}\t{}\t{}\t{}", r.h, r.a, r.p, r.q).unwrap();
        if let Some(ps) = primes {
            write!(out, "\t{}", factor_pattern(r.q.magnitude(), ps)).unwrap();
        }
        out.push('\n');
    }
    match e.period {
        Some(l) => {
            writeln!(out, "## period={l}").unwrap();
            if let Ok(u) = fundamental_unit(e) {
                let norm = if u.norm > 0 { "+1" } else { "-1" };
                writeln!(out, "## unit-norm={norm}").unwrap();
                let shape = match u.form {
                    UnitForm::Integral => format!("{} + {}*sqrt({})", u.u, u.v, u.radicand),
                    UnitForm::HalfIntegral => format!("({} + {}*sqrt({}))/2", u.u, u.v, u.radicand),
                };
                writeln!(out, "## unit={shape}").unwrap();
            }
            if let Ok(r) = regulator(e, REGULATOR_BITS) {
                writeln!(out, "## regulator={}", r.to_decimal(REGULATOR_DIGITS)).unwrap();
            }
        }
        None => writeln!(out, "## truncated after {} rows", e.records.len()).unwrap(),
    }
    out
}

pub fn poly_expansion(id: &str, e: &PolyExpansion) -> String {
    let mut out = String::new();
    header(&mut out, id, "polynomial", e.period.is_none(), "h,a,P,Q");
    for r in &e.records {
        writeln!(out, "{}\t{}\t{}\t{}", r.h, r.a, r.p, r.q).unwrap();
    }
    if let Some((h, c)) = &e.quasi_marker {
        writeln!(out, "## quasi-period={h} constant={c}").unwrap();
    }
    match e.period {
        Some(l) => writeln!(out, "## period={l}").unwrap(),
        None => writeln!(out, "## truncated after {} rows", e.records.len()).unwrap(),
    }
    out
}

pub fn registry(families: &[FamilySpec]) -> String {
    let mut out = String::from("#name\tD_n\tprimes\ttable_n\tsquare_divisors\tn_constraint\n");
    for f in families {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let constraint =
            f.n_constraint.map(|c| format!("n = {} mod {}", c.residue, c.modulus)).unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            f.name,
            f.formula,
            join(&f.primes),
            f.table_n,
            join(&f.square_divisors),
            constraint
        )
        .unwrap();
    }
    out
}
