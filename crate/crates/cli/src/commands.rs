use std::fmt::{self, Display, Write as _};
use std::io::Write as _;
use std::path::Path;

use composita_core::composita::composita_by_power;
use composita_core::composition::{compose_egf_egf, compose_ogf_egf};
use composita_core::congruence::{
    named_family, scan_with, CongruenceFamily, Corollary1Sum, Corollary1ViaG, GeneralPrime,
    Theorem2,
};
use composita_core::numbers::{SequenceCache, SequenceFamily};
use composita_core::text;
use composita_core::{Builtin, Error, Execution, Series, SeriesKind};

use crate::Format;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(String, std::io::Error),
    Bound { requested: usize, limit: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Bound { .. } | CliError::Core(Error::BoundExceeded { .. }) => 2,
            _ => 1,
        }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Bound { requested, limit } => write!(
                f,
                "requested {requested} exceeds the maximum order {limit} (set {} to raise it)",
                crate::MAX_ORDER_ENV
            ),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub struct Context {
    pub format: Option<Format>,
    pub max_order: usize,
}

impl Context {
    fn check_cap(&self, requested: usize) -> Result<(), CliError> {
        if requested > self.max_order {
            Err(CliError::Bound {
                requested,
                limit: self.max_order,
            })
        } else {
            Ok(())
        }
    }
}

pub fn emit(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io("stdout".into(), e))
        }
    }
}

/// A built-in name, or else a path to a coefficient file.
fn resolve_series(spec: &str, order: usize) -> Result<Series, CliError> {
    if let Ok(b) = spec.parse::<Builtin>() {
        return Ok(b.series(order));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "unknown series `{spec}`: not a built-in ({}) and no such file",
            Builtin::ALL.map(Builtin::name).join(", ")
        )));
    }
    let content = std::fs::read_to_string(path).map_err(|e| CliError::Io(spec.into(), e))?;
    let series = text::parse_series(&content)?;
    if series.order() < order {
        return Err(CliError::Usage(format!(
            "{spec} has coefficients up to order {}, but order {order} was requested",
            series.order()
        )));
    }
    Ok(series.truncate(order))
}

fn render_values<T: Display>(format: Format, values: &[T]) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            for v in values {
                writeln!(out, "{v}").unwrap();
            }
        }
        Format::Csv => {
            out.push_str("n,value\n");
            for (n, v) in values.iter().enumerate() {
                writeln!(out, "{n},{v}").unwrap();
            }
        }
        Format::Jsonl => {
            for (n, v) in values.iter().enumerate() {
                let rec = serde_json::json!({ "n": n, "value": v.to_string() });
                writeln!(out, "{rec}").unwrap();
            }
        }
    }
    out
}

pub fn composita(ctx: &Context, spec: &str, order: usize) -> Result<String, CliError> {
    ctx.check_cap(order)?;
    let table = composita_by_power(&resolve_series(spec, order)?)?;
    Ok(match ctx.format.unwrap_or(Format::Csv) {
        Format::Csv => text::composita_csv(&table),
        Format::Text => text::composita_aligned(&table),
        Format::Jsonl => text::composita_jsonl(&table),
    })
}

pub fn compose(ctx: &Context, outer: &str, inner: &str, order: usize) -> Result<String, CliError> {
    ctx.check_cap(order)?;
    let outer = resolve_series(outer, order)?;
    let inner = resolve_series(inner, order)?;
    let g = match outer.kind() {
        SeriesKind::Exponential => compose_egf_egf(&outer, &inner)?,
        SeriesKind::Ordinary => compose_ogf_egf(&outer, &inner)?,
    };
    Ok(render_values(
        ctx.format.unwrap_or(Format::Text),
        &g.egf_coefficients(),
    ))
}

fn need<'a>(arg: Option<&'a str>, family: &str, flag: &str) -> Result<&'a str, CliError> {
    arg.ok_or_else(|| CliError::Usage(format!("family `{family}` needs --{flag}")))
}

fn build_family(
    name: &str,
    to: usize,
    outer: Option<&str>,
    inner: Option<&str>,
) -> Result<Box<dyn CongruenceFamily>, CliError> {
    let exec = Execution::default();
    Ok(match name {
        "corollary1" => {
            let i = need(inner, name, "inner")?;
            Box::new(Corollary1Sum::new(i, &resolve_series(i, to)?, exec)?)
        }
        "corollary1_via_g" => {
            let i = need(inner, name, "inner")?;
            Box::new(Corollary1ViaG::new(i, &resolve_series(i, to)?, exec)?)
        }
        "general" | "theorem2" => {
            let (o, i) = (need(outer, name, "outer")?, need(inner, name, "inner")?);
            let label = format!("{o}({i})");
            let (os, is) = (resolve_series(o, to)?, resolve_series(i, to)?);
            if name == "general" {
                Box::new(GeneralPrime::new(&label, &os, &is, exec)?)
            } else {
                Box::new(Theorem2::new(&label, &os, &is, exec)?)
            }
        }
        other => named_family(other, to, exec)?,
    })
}

pub fn scan(
    ctx: &Context,
    family: &str,
    from: usize,
    to: usize,
    outer: Option<&str>,
    inner: Option<&str>,
) -> Result<String, CliError> {
    if from > to {
        return Err(CliError::Usage(format!(
            "--from {from} is larger than --to {to}"
        )));
    }
    ctx.check_cap(to)?;
    let fam = build_family(family, to, outer, inner)?;
    let result = scan_with(fam.as_ref(), from..=to, Execution::default())?;
    let mut out = String::new();
    match ctx.format.unwrap_or(Format::Jsonl) {
        Format::Jsonl => {
            for r in &result.reports {
                writeln!(out, "{}", serde_json::to_string(r).unwrap()).unwrap();
            }
            for c in &result.certificates {
                writeln!(out, "{}", serde_json::json!({ "certificate": c })).unwrap();
            }
            let summary = serde_json::json!({
                "summary": {
                    "family": fam.name(),
                    "from": from,
                    "to": to,
                    "reports": result.reports.len(),
                    "witnesses": result.certificates.len(),
                }
            });
            writeln!(out, "{summary}").unwrap();
        }
        Format::Csv => {
            out.push_str("family,n,value,is_integer,verdict\n");
            for r in &result.reports {
                let verdict = serde_json::to_value(r.verdict).unwrap();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.family,
                    r.n,
                    r.value,
                    r.is_integer,
                    verdict.as_str().unwrap()
                )
                .unwrap();
            }
        }
        Format::Text => {
            writeln!(out, "# family: {}", fam.name()).unwrap();
            for r in &result.reports {
                let mark = if r.is_integer { "integer" } else { "WITNESS" };
                let degenerate = if r.degenerate { "\tdegenerate" } else { "" };
                writeln!(out, "{}\t{}\t{mark}{degenerate}", r.n, r.value).unwrap();
            }
            let ns: Vec<String> = result
                .certificates
                .iter()
                .map(|c| c.n.to_string())
                .collect();
            writeln!(
                out,
                "# reports: {}, witnesses: {} [{}]",
                result.reports.len(),
                ns.len(),
                ns.join(" ")
            )
            .unwrap();
        }
    }
    Ok(out)
}

pub fn seq(ctx: &Context, name: &str, count: usize) -> Result<String, CliError> {
    ctx.check_cap(count)?;
    let last = count.saturating_sub(1);
    let values: Vec<String> = match name {
        "bell" => terms(SequenceFamily::Bell, last, count),
        "euler_zigzag" => terms(SequenceFamily::EulerZigzag, last, count),
        "stirling2_row" => row(SequenceFamily::Stirling2, count),
        "stirling1_row" => row(SequenceFamily::Stirling1Unsigned, count),
        "a001680_style" => exp_of(Builtin::Poly3, last, count)?,
        "a000246_style" => exp_of(Builtin::Artanh, last, count)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown sequence `{other}` (bell, euler_zigzag, stirling2_row, stirling1_row, a001680_style, a000246_style)"
            )))
        }
    };
    Ok(render_values(ctx.format.unwrap_or(Format::Text), &values))
}

fn terms(family: SequenceFamily, last: usize, count: usize) -> Vec<String> {
    let cache = SequenceCache::up_to(family, last);
    cache
        .terms()
        .iter()
        .take(count)
        .map(ToString::to_string)
        .collect()
}

fn row(family: SequenceFamily, n: usize) -> Vec<String> {
    let cache = SequenceCache::up_to(family, n);
    cache
        .row(n)
        .unwrap()
        .iter()
        .map(ToString::to_string)
        .collect()
}

fn exp_of(inner: Builtin, last: usize, count: usize) -> Result<Vec<String>, CliError> {
    let g = compose_egf_egf(&Builtin::Exp.series(last), &inner.series(last))?;
    Ok(g.integer_egf_coefficients()?
        .iter()
        .take(count)
        .map(ToString::to_string)
        .collect())
}

pub fn series(ctx: &Context, name: &str, order: usize) -> Result<String, CliError> {
    ctx.check_cap(order)?;
    if let Some(f) = ctx.format.filter(|f| *f != Format::Text) {
        return Err(CliError::Usage(format!(
            "series output has a single text form; --format {f:?} is not supported"
        )));
    }
    Ok(text::write_series(&resolve_series(name, order)?))
}
