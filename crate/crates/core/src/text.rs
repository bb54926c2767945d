//! Text forms shared by the CLI and test fixtures.
//!
//! * Rationals: `p/q`, with `/q` omitted when `q = 1` (`13/4`, `9`, `-1`).
//! * Series: an optional `# kind: ordinary|exponential` header (exponential
//!   if absent), then one `index<TAB>value` line per ordinary coefficient.
//! * Integer EGF lists: one integer per line, read as `e(1), e(2), …` with
//!   `e(0) = 0`. Lines starting with `#` and blank lines are ignored.
//! * Composita tables: CSV with header `n,k,value`.

use std::fmt::Write;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::{CompositaTable, Error, ExactRational, Result, Series, SeriesKind};

pub fn format_rational(value: &ExactRational) -> String {
    value.to_string()
}

pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(ExactRational::new(num, den))
}

pub(crate) mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(
        value: &ExactRational,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        value.to_string().serialize(s)
    }
}

pub(crate) fn bigint_str<S: Serializer>(
    value: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    value.to_string().serialize(s)
}

pub fn write_series(series: &Series) -> String {
    let mut out = format!("# kind: {}\n", series.kind());
    for (n, c) in series.coeffs().iter().enumerate() {
        writeln!(out, "{n}\t{c}").unwrap();
    }
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Parses either the series form or an integer EGF list, whichever the
/// text is in.
pub fn parse_series(text: &str) -> Result<Series> {
    if content_lines(text).any(|(_, l)| l.contains('\t')) {
        parse_series_form(text)
    } else {
        parse_integer_egf(text)
    }
}

fn parse_series_form(text: &str) -> Result<Series> {
    let mut kind = SeriesKind::Exponential;
    for line in text.lines() {
        if let Some(rest) = line.trim().strip_prefix('#') {
            if let Some(k) = rest.trim().strip_prefix("kind:") {
                kind = match k.trim() {
                    "ordinary" => SeriesKind::Ordinary,
                    "exponential" => SeriesKind::Exponential,
                    other => return Err(Error::Parse(format!("unknown series kind `{other}`"))),
                };
            }
        }
    }
    let mut coeffs = Vec::new();
    for (lineno, line) in content_lines(text) {
        let (idx, value) = line
            .split_once('\t')
            .ok_or_else(|| Error::Parse(format!("line {lineno}: expected `index<TAB>value`")))?;
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("line {lineno}: bad index `{idx}`")))?;
        if idx != coeffs.len() {
            return Err(Error::Parse(format!(
                "line {lineno}: expected index {}, found {idx}",
                coeffs.len()
            )));
        }
        coeffs.push(parse_rational(value)?);
    }
    Series::new(coeffs, kind)
}

fn parse_integer_egf(text: &str) -> Result<Series> {
    let mut egf = vec![BigInt::from(0)];
    for (lineno, line) in content_lines(text) {
        let v: BigInt = line.trim().parse().map_err(|_| {
            Error::Parse(format!(
                "line {lineno}: expected an integer, found `{}`",
                line.trim()
            ))
        })?;
        egf.push(v);
    }
    if egf.len() == 1 {
        return Err(Error::Parse("no coefficients found".into()));
    }
    Series::from_egf(egf)
}

pub fn composita_csv(table: &CompositaTable) -> String {
    let mut out = String::from("n,k,value\n");
    for (n, k, v) in table.iter() {
        writeln!(out, "{n},{k},{v}").unwrap();
    }
    out
}

/// One row per `n`, entries right-aligned in columns.
pub fn composita_aligned(table: &CompositaTable) -> String {
    let cells: Vec<Vec<String>> = (1..=table.order())
        .map(|n| {
            table
                .row(n)
                .unwrap()
                .iter()
                .map(ToString::to_string)
                .collect()
        })
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for (i, row) in cells.iter().enumerate() {
        write!(out, "{:>3} |", i + 1).unwrap();
        for c in row {
            write!(out, " {c:>width$}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn composita_jsonl(table: &CompositaTable) -> String {
    let mut out = String::new();
    for (n, k, v) in table.iter() {
        let rec = serde_json::json!({ "n": n, "k": k, "value": v.to_string() });
        writeln!(out, "{rec}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::Builtin;
    use crate::composita::composita_by_power;

    #[test]
    fn rational_text_form() {
        let r = |n: i64, d: i64| ExactRational::new(n.into(), d.into());
        assert_eq!(format_rational(&r(13, 4)), "13/4");
        assert_eq!(format_rational(&r(18, 2)), "9");
        assert_eq!(format_rational(&r(-1, 1)), "-1");
        assert_eq!(format_rational(&r(0, 5)), "0");
        assert_eq!(format_rational(&r(3, -6)), "-1/2");
        assert_eq!(parse_rational("13/4").unwrap(), r(13, 4));
        assert_eq!(parse_rational("-6/4").unwrap(), r(-3, 2));
        assert_eq!(parse_rational(" 9 ").unwrap(), r(9, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn series_round_trip() {
        for b in Builtin::ALL {
            let s = b.series(9);
            assert_eq!(parse_series(&write_series(&s)).unwrap(), s, "{b}");
        }
    }

    #[test]
    fn integer_egf_list() {
        let s = parse_series("# sin\n1\n0\n-1\n\n0\n1\n").unwrap();
        assert_eq!(s, Builtin::Sin.series(5));
        assert!(parse_series("1\n1/2\n").is_err());
        assert!(parse_series("# nothing\n").is_err());
    }

    #[test]
    fn series_form_errors() {
        assert!(parse_series("0\t0\n2\t1\n").is_err());
        assert!(parse_series("# kind: weird\n0\t1\n").is_err());
        let s = parse_series("# kind: ordinary\n0\t1\n1\t1/2\n").unwrap();
        assert_eq!(s.kind(), SeriesKind::Ordinary);
    }

    #[test]
    fn composita_csv_layout() {
        let t = composita_by_power(&Builtin::Expm1.series(3)).unwrap();
        assert_eq!(
            composita_csv(&t),
            "n,k,value\n1,1,1\n2,1,1/2\n2,2,1\n3,1,1/6\n3,2,1\n3,3,1\n"
        );
        assert_eq!(composita_jsonl(&t).lines().count(), 6);
        assert_eq!(composita_aligned(&t).lines().count(), 3);
    }
}
