//! `%%DyadicCoordinate` text format: a header `%%DyadicCoordinate <dim> <nnz>`
//! followed by one `<row> <col> <numerator> <exponent>` line per nonzero,
//! 1-based, row-major order. Values are `numerator / 2^exponent` in
//! canonical form, so a write/read cycle is bit-exact.

use std::io::{BufRead, Write};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::operator::DyadicOperator;

const HEADER: &str = "%%DyadicCoordinate";

pub fn write_coordinate<W: Write>(m: &DyadicOperator, mut out: W) -> Result<()> {
    let n = m.dim();
    let nnz = m.data().iter().filter(|v| !v.is_zero()).count();
    writeln!(out, "{HEADER} {n} {nnz}")?;
    for (idx, v) in m.data().iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        writeln!(
            out,
            "{} {} {} {}",
            idx / n + 1,
            idx % n + 1,
            v.numerator(),
            v.exponent()
        )?;
    }
    out.flush()?;
    Ok(())
}

pub fn to_coordinate_string(m: &DyadicOperator) -> String {
    let mut buf = Vec::new();
    write_coordinate(m, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

pub fn read_coordinate<R: BufRead>(input: R) -> Result<DyadicOperator> {
    let mut lines = input
        .lines()
        .enumerate()
        .filter(|(_, l)| l.as_ref().map(|s| !s.trim().is_empty()).unwrap_or(true));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty DyadicCoordinate input".into()))?;
    let header = header?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some(HEADER) {
        return Err(Error::Parse(format!("missing {HEADER} header")));
    }
    let parse_usize = |s: Option<&str>, what: &str| -> Result<usize> {
        s.and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad {what} in header")))
    };
    let dim = parse_usize(fields.next(), "dimension")?;
    let nnz = parse_usize(fields.next(), "nonzero count")?;

    let mut data = vec![Dyadic::ZERO; dim * dim];
    let mut seen = 0usize;
    for (lineno, line) in lines {
        let line = line?;
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(bad("expected `<row> <col> <numerator> <exponent>`"));
        }
        let row: usize = parts[0].parse().map_err(|_| bad("bad row"))?;
        let col: usize = parts[1].parse().map_err(|_| bad("bad column"))?;
        let num: i64 = parts[2].parse().map_err(|_| bad("bad numerator"))?;
        let exp: u32 = parts[3].parse().map_err(|_| bad("bad exponent"))?;
        if row == 0 || col == 0 || row > dim || col > dim {
            return Err(bad("index out of range"));
        }
        let slot = &mut data[(row - 1) * dim + col - 1];
        if !slot.is_zero() {
            return Err(bad("duplicate entry"));
        }
        *slot = Dyadic::new(num, exp);
        if slot.is_zero() {
            return Err(bad("explicit zero entry"));
        }
        seen += 1;
    }
    if seen != nnz {
        return Err(Error::Parse(format!("header declares {nnz} nonzeros, found {seen}")));
    }
    DyadicOperator::from_row_major(data)
}

pub fn from_coordinate_str(s: &str) -> Result<DyadicOperator> {
    read_coordinate(s.as_bytes())
}
