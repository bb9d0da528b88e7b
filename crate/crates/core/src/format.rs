//! Plain-text file formats.
//!
//! Algebra:
//!
//! ```text
//! dim 2; field gaussian-rational
//! kind associative          # optional
//! label A1                  # optional
//! 1 1 1 1
//! 2 2 2 1
//! ```
//!
//! One `i j k <scalar>` line per nonzero constant `C_ij^k`, 1-based; omitted
//! triples are zero. Operator: `dim n` followed by `n` rows of `n` scalars,
//! row `i` holding the coordinates of `R(e_i)`. A family is an operator
//! followed by any number of `relation: <poly>`, `exclude: <poly>` and
//! `targets: <label> ...` lines. `#` starts a comment everywhere.

use crate::algebra::{Algebra, AlgebraKind};
use crate::error::FormatError;
use crate::exactnum::{parse_poly, parse_scalar, Scalar};
use crate::operators::{Operator, OperatorFamily};

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((k + 1, l))
    })
}

fn parse_dim(line: usize, field: &str) -> Result<usize, FormatError> {
    let rest = field
        .strip_prefix("dim")
        .ok_or_else(|| syntax(line, "expected `dim n`"))?;
    let n: usize = rest
        .trim()
        .parse()
        .map_err(|_| syntax(line, format!("bad dimension \"{}\"", rest.trim())))?;
    if n == 0 {
        return Err(syntax(line, "dimension must be positive"));
    }
    Ok(n)
}

fn scalar_at(line: usize, text: &str) -> Result<Scalar, FormatError> {
    parse_scalar(text).map_err(|e| syntax(line, e.to_string()))
}

pub fn parse_algebra(text: &str) -> Result<Algebra, FormatError> {
    let mut lines = content_lines(text);
    let (l0, header) = lines.next().ok_or_else(|| syntax(1, "empty algebra file"))?;
    let mut parts = header.split(';').map(str::trim);
    let n = parse_dim(l0, parts.next().unwrap_or(""))?;
    match parts.next() {
        Some("field gaussian-rational") | None => {}
        Some(other) => return Err(syntax(l0, format!("unsupported field \"{}\"", other))),
    }
    let mut entries = Vec::new();
    let mut label = None;
    let mut kind = AlgebraKind::Unchecked;
    for (ln, line) in lines {
        if let Some(k) = line.strip_prefix("kind") {
            kind = k.trim().parse().map_err(|e: String| syntax(ln, e))?;
            continue;
        }
        if let Some(l) = line.strip_prefix("label") {
            label = Some(l.trim().to_string());
            continue;
        }
        let mut it = line.splitn(4, char::is_whitespace);
        let mut index = || -> Result<usize, FormatError> {
            let t = it.next().ok_or_else(|| syntax(ln, "expected `i j k <scalar>`"))?;
            let v: usize = t.parse().map_err(|_| syntax(ln, format!("bad index \"{}\"", t)))?;
            if v == 0 || v > n {
                return Err(syntax(ln, format!("index {} out of range 1..={}", v, n)));
            }
            Ok(v - 1)
        };
        let (i, j, k) = (index()?, index()?, index()?);
        let c = it.next().ok_or_else(|| syntax(ln, "missing structure constant"))?;
        entries.push((i, j, k, scalar_at(ln, c.trim())?));
    }
    let mut a = Algebra::from_entries(n, entries)?.with_kind(kind);
    if let Some(l) = label {
        a = a.with_label(l);
    }
    Ok(a)
}

pub fn write_algebra(a: &Algebra) -> String {
    let mut out = format!("dim {}; field gaussian-rational\n", a.dim());
    if a.kind() != AlgebraKind::Unchecked {
        out.push_str(&format!("kind {}\n", a.kind()));
    }
    if let Some(l) = a.label() {
        out.push_str(&format!("label {}\n", l));
    }
    for (i, j, k, c) in a.nonzero_constants() {
        out.push_str(&format!("{} {} {} {}\n", i + 1, j + 1, k + 1, c));
    }
    out
}

fn parse_rows<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<(Operator, usize), FormatError> {
    let (l0, header) = lines.next().ok_or_else(|| syntax(1, "empty operator"))?;
    let n = parse_dim(l0, header)?;
    let mut rows = Vec::with_capacity(n);
    let mut last = l0;
    for _ in 0..n {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| syntax(last + 1, format!("expected {} rows", n)))?;
        let row = line
            .split_whitespace()
            .map(|t| scalar_at(ln, t))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(syntax(ln, format!("row has {} entries, expected {}", row.len(), n)));
        }
        rows.push(row);
        last = ln;
    }
    Ok((Operator::from_rows(rows)?, last))
}

pub fn parse_operator(text: &str) -> Result<Operator, FormatError> {
    let mut lines = content_lines(text);
    let (op, _) = parse_rows(&mut lines)?;
    if let Some((ln, _)) = lines.next() {
        return Err(syntax(ln, "trailing content after operator rows"));
    }
    Ok(op)
}

pub fn write_operator(r: &Operator) -> String {
    let mut out = format!("dim {}\n", r.dim());
    for row in r.rows() {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_family(name: &str, text: &str) -> Result<OperatorFamily, FormatError> {
    let mut lines = content_lines(text);
    let (op, _) = parse_rows(&mut lines)?;
    let mut f = OperatorFamily::new(name, op);
    for (ln, line) in lines {
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| syntax(ln, "expected `relation:`, `exclude:` or `targets:`"))?;
        let poly = || parse_poly(value.trim()).map_err(|e| syntax(ln, e.to_string()));
        match key.trim() {
            "relation" => f.relations.push(poly()?),
            "exclude" => f.exclusions.push(poly()?),
            "targets" => f.targets.extend(value.split_whitespace().map(String::from)),
            other => return Err(syntax(ln, format!("unknown key \"{}\"", other))),
        }
    }
    Ok(f)
}

pub fn write_family(f: &OperatorFamily) -> String {
    let mut out = write_operator(&f.operator);
    for r in &f.relations {
        out.push_str(&format!("relation: {}\n", r));
    }
    for e in &f.exclusions {
        out.push_str(&format!("exclude: {}\n", e));
    }
    if !f.targets.is_empty() {
        out.push_str(&format!("targets: {}\n", f.targets.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_round_trip() {
        let text = "dim 2; field gaussian-rational\n# B5\n1 2 1 l\n2 1 1 l-1\n2 2 1 1\n2 2 2 l\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.constant(1, 0, 0), &parse_scalar("l-1").unwrap());
        assert_eq!(parse_algebra(&write_algebra(&a)).unwrap(), a);
        let tagged = parse_algebra("dim 1\nkind associative\nlabel D1\n1 1 1 1").unwrap();
        assert_eq!(tagged.kind(), AlgebraKind::Associative);
        assert_eq!(tagged.label(), Some("D1"));
    }

    #[test]
    fn algebra_errors_carry_lines() {
        let err = parse_algebra("dim 2\n1 1 3 1\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: index 3 out of range 1..=2");
        assert!(parse_algebra("dim 2; field reals\n").is_err());
        assert!(parse_algebra("dim x\n").is_err());
        assert!(parse_algebra("dim 2\n1 1 1\n").is_err());
    }

    #[test]
    fn family_round_trip() {
        let text = "dim 2\nr11 r12\nr21 1-r11\nrelation: r11^2-r11+r12*r21\nexclude: r12\ntargets: A1\n";
        let f = parse_family("B1.gen", text).unwrap();
        assert_eq!(f.relations.len(), 1);
        assert_eq!(f.exclusions, vec![parse_poly("r12").unwrap()]);
        assert_eq!(f.targets, vec!["A1".to_string()]);
        assert_eq!(parse_family("B1.gen", &write_family(&f)).unwrap(), f);
        let op = parse_operator("dim 2\nr11 r12\n0 r11^2/(2*r11-1)\n").unwrap();
        assert_eq!(parse_operator(&write_operator(&op)).unwrap(), op);
        assert!(parse_operator("dim 2\n1 0\n").is_err());
        assert!(parse_operator("dim 2\n1 0\n0\n").is_err());
        assert!(parse_family("x", "dim 1\n1\nfoo: 1\n").is_err());
    }
}
