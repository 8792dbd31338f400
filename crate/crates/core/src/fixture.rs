//! Transcribed expansion tables and an exact comparator.
//!
//! Format (UTF-8, line oriented):
//!
//! ```text
//! #id=easy-kreeper-67.n6
//! #kind=integer
//! #prefix=false
//! #x=1319011                 (any other `#name=<integer>` declares a symbol)
//! #columns=h,a,P,Q,factors
//! ## free-form comment
//! 4<TAB>1718341045<TAB>633208674978<TAB>737<TAB>11*67
//! ```
//!
//! Empty fields are absent cells. Polynomial cells use the canonical
//! polynomial text of [`RatPoly`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::families::factor_pattern;
use crate::funfield::PolyExpansion;
use crate::ratpoly::RatPoly;
use crate::surd::Expansion;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureKind {
    Integer,
    Polynomial,
}

impl FixtureKind {
    fn name(self) -> &'static str {
        match self {
            FixtureKind::Integer => "integer",
            FixtureKind::Polynomial => "polynomial",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    H,
    A,
    P,
    Q,
    Factors,
}

impl Column {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "h" => Column::H,
            "a" => Column::A,
            "P" => Column::P,
            "Q" => Column::Q,
            "factors" => Column::Factors,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Column::H => "h",
            Column::A => "a",
            Column::P => "P",
            Column::Q => "Q",
            Column::Factors => "factors",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Int(BigInt),
    Poly(RatPoly),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(n) => write!(f, "{n}"),
            Cell::Poly(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorBase {
    Int(BigUint),
    Symbol(String),
}

/// A product like `3^2*11*5^2*7*x`, kept in the order written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorExpr {
    pub factors: Vec<(FactorBase, u32)>,
}

impl FactorExpr {
    /// Parses canonical `2*67^5` as well as printed forms such as
    /// `(2)(67)^5`, `5\cdot 43^8`, `(3^2 11)(5^2 7)x^7` or `3^{14}J`.
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let s = s.replace("\\cdot", " ");
        let chars: Vec<char> = s.chars().collect();
        let mut factors: Vec<(FactorBase, u32)> = Vec::new();
        let mut group_start: Option<usize> = None;
        let mut last_group: Option<(usize, usize)> = None;
        let mut i = 0;
        let read_number = |i: &mut usize| -> Option<String> {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            (*i > start).then(|| chars[start..*i].iter().collect())
        };
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | '\t' | '$' | ',' | '*' | '{' | '}' => i += 1,
                '(' => {
                    if group_start.is_some() {
                        return Err(format!("nested parentheses in `{s}`"));
                    }
                    group_start = Some(factors.len());
                    last_group = None;
                    i += 1;
                }
                ')' => {
                    let start = group_start.take().ok_or_else(|| format!("unbalanced `)` in `{s}`"))?;
                    last_group = Some((start, factors.len()));
                    i += 1;
                }
                '^' => {
                    i += 1;
                    while i < chars.len() && (chars[i] == '{' || chars[i] == ' ') {
                        i += 1;
                    }
                    let e: u32 = read_number(&mut i)
                        .and_then(|n| n.parse().ok())
                        .ok_or_else(|| format!("bad exponent in `{s}`"))?;
                    if i < chars.len() && chars[i] == '}' {
                        i += 1;
                    }
                    match last_group.take() {
                        Some((a, b)) => factors[a..b].iter_mut().for_each(|f| f.1 *= e),
                        None => {
                            let f = factors.last_mut().ok_or_else(|| format!("dangling exponent in `{s}`"))?;
                            f.1 *= e;
                        }
                    }
                }
                d if d.is_ascii_digit() => {
                    let n = read_number(&mut i).unwrap_or_default();
                    factors.push((FactorBase::Int(n.parse().map_err(|_| format!("bad integer in `{s}`"))?), 1));
                    last_group = None;
                }
                l if l.is_ascii_alphabetic() => {
                    factors.push((FactorBase::Symbol(l.to_string()), 1));
                    last_group = None;
                    i += 1;
                }
                other => return Err(format!("unexpected `{other}` in `{s}`")),
            }
        }
        if group_start.is_some() {
            return Err(format!("unbalanced `(` in `{s}`"));
        }
        if factors.is_empty() {
            return Err(format!("empty factor expression `{s}`"));
        }
        Ok(FactorExpr { factors })
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.factors.iter().filter_map(|(b, _)| match b {
            FactorBase::Symbol(s) => Some(s.as_str()),
            FactorBase::Int(_) => None,
        })
    }

    pub fn evaluate(&self, symbols: &BTreeMap<String, BigUint>) -> Option<BigUint> {
        self.factors.iter().try_fold(BigUint::from(1u32), |acc, (b, e)| {
            let base = match b {
                FactorBase::Int(n) => n.clone(),
                FactorBase::Symbol(s) => symbols.get(s)?.clone(),
            };
            Some(acc * base.pow(*e))
        })
    }
}

impl fmt::Display for FactorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (b, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            match b {
                FactorBase::Int(n) => write!(f, "{n}")?,
                FactorBase::Symbol(s) => f.write_str(s)?,
            }
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureRow {
    pub h: usize,
    pub a: Option<Cell>,
    pub p: Option<Cell>,
    pub q: Option<Cell>,
    pub factors: Option<FactorExpr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureTable {
    pub id: String,
    pub kind: FixtureKind,
    pub columns: Vec<Column>,
    pub rows: Vec<FixtureRow>,
    pub prefix_only: bool,
    pub symbols: BTreeMap<String, BigUint>,
    pub comments: Vec<String>,
}

impl FixtureTable {
    pub fn row(&self, h: usize) -> Option<&FixtureRow> {
        self.rows.binary_search_by_key(&h, |r| r.h).ok().map(|i| &self.rows[i])
    }

    pub fn last_h(&self) -> Option<usize> {
        self.rows.last().map(|r| r.h)
    }

    /// Text form accepted by [`parse_fixture`].
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("#id={}\n#kind={}\n#prefix={}\n", self.id, self.kind.name(), self.prefix_only));
        for (k, v) in &self.symbols {
            out.push_str(&format!("#{k}={v}\n"));
        }
        let cols: Vec<_> = self.columns.iter().map(|c| c.name()).collect();
        out.push_str(&format!("#columns={}\n", cols.join(",")));
        for c in &self.comments {
            out.push_str(&format!("## {c}\n"));
        }
        for r in &self.rows {
            let fields: Vec<String> = self
                .columns
                .iter()
                .map(|c| match c {
                    Column::H => r.h.to_string(),
                    Column::A => r.a.as_ref().map(Cell::to_string).unwrap_or_default(),
                    Column::P => r.p.as_ref().map(Cell::to_string).unwrap_or_default(),
                    Column::Q => r.q.as_ref().map(Cell::to_string).unwrap_or_default(),
                    Column::Factors => r.factors.as_ref().map(FactorExpr::to_string).unwrap_or_default(),
                })
                .collect();
            out.push_str(fields.join("\t").trim_end_matches('\t'));
            out.push('\n');
        }
        out
    }
}

pub fn parse_fixture(text: &str) -> Result<FixtureTable> {
    let mut id = None;
    let mut kind = None;
    let mut columns: Option<Vec<Column>> = None;
    let mut prefix_only = false;
    let mut symbols = BTreeMap::new();
    let mut comments = Vec::new();
    let mut raw_rows: Vec<(usize, &str)> = Vec::new();

    for (idx, line) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = line.trim_end_matches('\r');
        if let Some(c) = line.strip_prefix("##") {
            comments.push(c.trim().to_string());
        } else if let Some(h) = line.strip_prefix('#') {
            if !raw_rows.is_empty() {
                return Err(Error::parse(ln, "header after data rows"));
            }
            let (k, v) = h.split_once('=').ok_or_else(|| Error::parse(ln, format!("malformed header `{line}`")))?;
            match k {
                "id" => id = Some(v.to_string()),
                "kind" => {
                    kind = Some(match v {
                        "integer" => FixtureKind::Integer,
                        "polynomial" => FixtureKind::Polynomial,
                        _ => return Err(Error::parse(ln, format!("unknown kind `{v}`"))),
                    })
                }
                "prefix" => prefix_only = v.parse().map_err(|_| Error::parse(ln, format!("bad prefix flag `{v}`")))?,
                "columns" => {
                    let cols = v
                        .split(',')
                        .map(|c| {
                            Column::parse(c.trim()).ok_or_else(|| Error::parse(ln, format!("unknown column `{c}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if cols.first() != Some(&Column::H) {
                        return Err(Error::parse(ln, "first column must be h"));
                    }
                    columns = Some(cols);
                }
                sym => {
                    let value: BigUint = v.parse().map_err(|_| Error::parse(ln, format!("unknown header `{sym}`")))?;
                    symbols.insert(sym.to_string(), value);
                }
            }
        } else if !line.trim().is_empty() {
            raw_rows.push((ln, line));
        }
    }

    let id = id.ok_or_else(|| Error::parse(0, "missing #id header"))?;
    let kind = kind.ok_or_else(|| Error::parse(0, "missing #kind header"))?;
    let columns = columns.ok_or_else(|| Error::parse(0, "missing #columns header"))?;

    let mut rows: Vec<FixtureRow> = Vec::with_capacity(raw_rows.len());
    for (ln, line) in raw_rows {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() > columns.len() {
            return Err(Error::parse(ln, format!("{} fields for {} columns", fields.len(), columns.len())));
        }
        let mut row = FixtureRow { h: 0, a: None, p: None, q: None, factors: None };
        for (col, field) in columns.iter().zip(fields.iter().map(|f| f.trim())) {
            if field.is_empty() {
                if *col == Column::H {
                    return Err(Error::parse(ln, "missing h"));
                }
                continue;
            }
            let cell = |f: &str| -> Result<Cell> {
                match kind {
                    FixtureKind::Integer => {
                        f.parse::<BigInt>().map(Cell::Int).map_err(|_| Error::parse(ln, format!("bad integer `{f}`")))
                    }
                    FixtureKind::Polynomial => f
                        .parse::<RatPoly>()
                        .map(Cell::Poly)
                        .map_err(|_| Error::parse(ln, format!("bad polynomial `{f}`"))),
                }
            };
            match col {
                Column::H => row.h = field.parse().map_err(|_| Error::parse(ln, format!("bad h `{field}`")))?,
                Column::A => row.a = Some(cell(field)?),
                Column::P => row.p = Some(cell(field)?),
                Column::Q => row.q = Some(cell(field)?),
                Column::Factors => {
                    let expr = FactorExpr::parse(field).map_err(|e| Error::parse(ln, e))?;
                    if let Some(s) = expr.symbols().find(|s| !symbols.contains_key(*s)) {
                        return Err(Error::parse(ln, format!("undeclared symbol `{s}`")));
                    }
                    row.factors = Some(expr);
                }
            }
        }
        let expected_h = rows.last().map_or(0, |r| r.h + 1);
        if rows.is_empty() && row.h != 0 {
            return Err(Error::parse(ln, "first row must be h = 0"));
        }
        if row.h < expected_h {
            return Err(Error::parse(ln, format!("h = {} is not increasing", row.h)));
        }
        if row.a.is_none() && row.p.is_none() && row.q.is_none() {
            return Err(Error::parse(ln, "row has none of a, P, Q"));
        }
        rows.push(row);
    }
    Ok(FixtureTable { id, kind, columns, rows, prefix_only, symbols, comments })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyStatus {
    Exact,
    PrefixExact,
    Mismatch,
}

impl fmt::Display for VerifyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyStatus::Exact => "exact",
            VerifyStatus::PrefixExact => "prefix-exact",
            VerifyStatus::Mismatch => "mismatch",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub h: usize,
    pub column: &'static str,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub fixture_id: String,
    pub rows_checked: usize,
    pub cells_matched: usize,
    pub mismatches: Vec<Mismatch>,
    pub skipped_cells: usize,
    pub status: VerifyStatus,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fixture={}", self.fixture_id)?;
        writeln!(f, "rows_checked={}", self.rows_checked)?;
        writeln!(f, "cells_matched={}", self.cells_matched)?;
        writeln!(f, "skipped_cells={}", self.skipped_cells)?;
        for m in &self.mismatches {
            writeln!(f, "mismatch\t{}\t{}\t{}\t{}", m.h, m.column, m.expected, m.computed)?;
        }
        write!(f, "status={}", self.status)
    }
}

/// What a fixture is compared against.
#[derive(Debug, Clone, Copy)]
pub enum Computed<'a> {
    Integer(&'a Expansion),
    Polynomial(&'a PolyExpansion),
}

impl<'a> From<&'a Expansion> for Computed<'a> {
    fn from(e: &'a Expansion) -> Self {
        Computed::Integer(e)
    }
}

impl<'a> From<&'a PolyExpansion> for Computed<'a> {
    fn from(e: &'a PolyExpansion) -> Self {
        Computed::Polynomial(e)
    }
}

/// Integer rows are compared in display coordinates
/// ([`Expansion::display_records`]). Factor cells are compared on their
/// exponents over `primes` when given, otherwise by value.
pub fn verify<'a>(
    computed: impl Into<Computed<'a>>,
    fixture: &FixtureTable,
    primes: Option<&[u64]>,
) -> Result<VerifyReport> {
    let computed = computed.into();
    let rows: Vec<(Cell, Cell, Cell)> = match (computed, fixture.kind) {
        (Computed::Integer(e), FixtureKind::Integer) => {
            e.display_records().into_iter().map(|r| (Cell::Int(r.a), Cell::Int(r.p), Cell::Int(r.q))).collect()
        }
        (Computed::Polynomial(e), FixtureKind::Polynomial) => e
            .records
            .iter()
            .map(|r| (Cell::Poly(r.a.clone()), Cell::Poly(r.p.clone()), Cell::Poly(r.q.clone())))
            .collect(),
        (Computed::Integer(_), k) => return Err(Error::KindMismatch { fixture: k.name(), computed: "integer" }),
        (Computed::Polynomial(_), k) => return Err(Error::KindMismatch { fixture: k.name(), computed: "polynomial" }),
    };
    let period = match computed {
        Computed::Integer(e) => e.period,
        Computed::Polynomial(e) => e.period,
    };

    let mut report = VerifyReport {
        fixture_id: fixture.id.clone(),
        rows_checked: 0,
        cells_matched: 0,
        mismatches: Vec::new(),
        skipped_cells: 0,
        status: VerifyStatus::Exact,
    };
    let data_columns = fixture.columns.iter().filter(|c| **c != Column::H).count();
    for row in &fixture.rows {
        let Some((a, p, q)) = rows.get(row.h) else {
            report.mismatches.push(Mismatch {
                h: row.h,
                column: "row",
                expected: "present".into(),
                computed: format!("expansion has {} rows", rows.len()),
            });
            continue;
        };
        report.rows_checked += 1;
        let mut present = 0;
        for (column, want, got) in [("a", &row.a, a), ("P", &row.p, p), ("Q", &row.q, q)] {
            if let Some(want) = want {
                present += 1;
                if want == got {
                    report.cells_matched += 1;
                } else {
                    report.mismatches.push(Mismatch {
                        h: row.h,
                        column,
                        expected: want.to_string(),
                        computed: got.to_string(),
                    });
                }
            }
        }
        if let (Some(expr), Cell::Int(q)) = (&row.factors, q) {
            present += 1;
            let value = expr.evaluate(&fixture.symbols).unwrap_or_default();
            let q = q.magnitude();
            let (ok, shown) = match primes {
                Some(ps) => {
                    let got = factor_pattern(q, ps);
                    (factor_pattern(&value, ps).exponents == got.exponents, got.to_string())
                }
                None => (&value == q, q.to_string()),
            };
            if ok && !q.is_zero() {
                report.cells_matched += 1;
            } else {
                report.mismatches.push(Mismatch {
                    h: row.h,
                    column: "factors",
                    expected: expr.to_string(),
                    computed: shown,
                });
            }
        }
        report.skipped_cells += data_columns.saturating_sub(present);
    }
    if !fixture.prefix_only {
        let last = fixture.last_h();
        if period != last {
            report.mismatches.push(Mismatch {
                h: last.unwrap_or(0),
                column: "period",
                expected: format!("{last:?}"),
                computed: format!("{period:?}"),
            });
        }
    }
    report.status = match (report.mismatches.is_empty(), fixture.prefix_only) {
        (false, _) => VerifyStatus::Mismatch,
        (true, false) => VerifyStatus::Exact,
        (true, true) => VerifyStatus::PrefixExact,
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::{expand, SeedMode};

    const SMALL: &str = "#id=sqrt7\n#kind=integer\n#prefix=false\n#columns=h,a,P,Q,factors\n\
0\t2\t0\t1\n1\t1\t2\t3\t3\n2\t1\t1\t2\t2\n3\t1\t1\t3\n4\t4\t2\t1\n";

    #[test]
    fn factor_expr_accepts_printed_forms() {
        let cases = [
            ("(2)(67)^5", "2*67^5"),
            ("5\\cdot 43^8", "5*43^8"),
            ("5,\\cdot 43^8", "5*43^8"),
            ("(3^2 11)(5^2 7)x^7", "3^2*11*5^2*7*x^7"),
            ("(3 5)^2 x", "3^2*5^2*x"),
            ("3^{14}J", "3^14*J"),
            ("2*67^5", "2*67^5"),
        ];
        for (input, canon) in cases {
            assert_eq!(FactorExpr::parse(input).unwrap().to_string(), canon, "{input}");
        }
        for bad in ["", "^2", "(3", "3)", "3 ? 5", "((3))"] {
            assert!(FactorExpr::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn factor_expr_evaluates_with_symbols() {
        let e = FactorExpr::parse("3^2*J").unwrap();
        let mut syms = BTreeMap::new();
        assert_eq!(e.evaluate(&syms), None);
        syms.insert("J".to_string(), BigUint::from(4782970u32));
        assert_eq!(e.evaluate(&syms), Some(BigUint::from(43046730u32)));
    }

    #[test]
    fn parse_and_verify_small_table() {
        let t = parse_fixture(SMALL).unwrap();
        assert_eq!(t.rows.len(), 5);
        assert_eq!(t.row(2).unwrap().q, Some(Cell::Int(2.into())));
        let e = expand(&BigInt::from(7), SeedMode::Raw, 100).unwrap();
        let r = verify(&e, &t, None).unwrap();
        assert_eq!(r.status, VerifyStatus::Exact, "{r}");
        assert_eq!(r.cells_matched, 5 * 3 + 2);
        assert_eq!(r.skipped_cells, 3);
    }

    #[test]
    fn verify_reports_cell_and_period_mismatches() {
        let t = parse_fixture(&SMALL.replace("2\t1\t1\t2\t2", "2\t1\t1\t2\t5")).unwrap();
        let e = expand(&BigInt::from(7), SeedMode::Raw, 100).unwrap();
        let r = verify(&e, &t, None).unwrap();
        assert_eq!(r.status, VerifyStatus::Mismatch);
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!(r.mismatches[0].column, "factors");

        let e = expand(&BigInt::from(7), SeedMode::Raw, 3).unwrap();
        let r = verify(&e, &t, None).unwrap();
        assert!(r.mismatches.iter().any(|m| m.column == "row"));
        assert!(r.mismatches.iter().any(|m| m.column == "period"));
    }

    #[test]
    fn prefix_tables_do_not_require_closure() {
        let text = SMALL.replace("#prefix=false", "#prefix=true");
        let t = parse_fixture(&text).unwrap();
        let e = expand(&BigInt::from(7), SeedMode::Raw, 100).unwrap();
        assert_eq!(verify(&e, &t, None).unwrap().status, VerifyStatus::PrefixExact);
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let t = parse_fixture(SMALL).unwrap();
        let pe = crate::funfield::ff_expand(&RatPoly::from_ints(&[2, 0, 1]), 10).unwrap();
        assert!(matches!(verify(&pe, &t, None), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            (SMALL.replace("0\t2\t0\t1\n", "1\t2\t0\t1\n"), 5),
            (SMALL.replace("3\t1\t1\t3", "2\t1\t1\t3"), 8),
            (SMALL.replace("1\t1\t2\t3\t3", "1\t1\t2\tz\t3"), 6),
            (SMALL.replace("1\t1\t2\t3\t3", "1\t1\t2\t3\t3*y"), 6),
            (SMALL.replace("1\t1\t2\t3\t3", "1\t1\t2\t3\t3\t9"), 6),
            (SMALL.replace("#kind=integer", "#kind=real"), 2),
            (SMALL.replace("#prefix=false", "#prefix=maybe"), 3),
            (SMALL.replace("h,a,P,Q,factors", "h,a,R"), 4),
            (format!("{SMALL}#late=1\n"), 10),
        ];
        for (text, line) in cases {
            match parse_fixture(&text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("expected parse error, got {other:?}"),
            }
        }
        assert!(parse_fixture("#kind=integer\n#columns=h,a\n0\t1\n").is_err());
    }

    #[test]
    fn polynomial_round_trip() {
        let text =
            "#id=p\n#kind=polynomial\n#prefix=true\n#columns=h,a,P,Q\n## note\n0\tX + 1/2\t0\t1\n1\t-2/3*X^2\t\t\n";
        let t = parse_fixture(text).unwrap();
        assert_eq!(t.comments, vec!["note".to_string()]);
        assert_eq!(parse_fixture(&t.serialize()).unwrap(), t);
    }
}
