//! Text dump of the full matrix family.
//!
//! Line-oriented: a version tag, the parameters, field and α, then each
//! matrix as a `matrix <name> <rows> <cols>` header followed by row lines of
//! `a+b*w` entries. Writing is deterministic and parsing validates the
//! family against a rebuild, so the format round-trips bit-exactly.

use std::fmt::Write as _;

use windfec_core::construction::{derive_params, CodeParams, CodeTables};
use windfec_core::gf::{ExtElem, QuadExtField};
use windfec_core::linalg::FieldMatrix;

use crate::FormatError;

const TAG: &str = "windfec-tables v1";

const MATRICES: [&str; 7] = [
    "base-mds",
    "spreading",
    "spreading-inv",
    "banded",
    "generator",
    "systematic",
    "parity-check",
];

fn write_matrix(out: &mut String, name: &str, m: &FieldMatrix) {
    writeln!(out, "matrix {name} {} {}", m.rows(), m.cols()).unwrap();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|e| e.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
}

/// Serialize the family. The output parses back to an equal `CodeTables`.
pub fn write_tables(tables: &CodeTables) -> String {
    let p = tables.params();
    let mut out = String::new();
    writeln!(out, "{TAG}").unwrap();
    writeln!(out, "T {}", p.delay()).unwrap();
    writeln!(out, "B {}", p.max_burst()).unwrap();
    writeln!(out, "N {}", p.max_isolated()).unwrap();
    writeln!(out, "W {}", p.window()).unwrap();
    writeln!(out, "p {}", tables.field().prime()).unwrap();
    writeln!(out, "r {}", tables.field().nonresidue()).unwrap();
    writeln!(out, "alpha {}", tables.alpha()).unwrap();
    let family = [
        tables.base_mds(),
        tables.spreading(),
        tables.spreading_inv(),
        tables.banded(),
        tables.generator(),
        tables.systematic(),
        tables.parity_check(),
    ];
    for (name, m) in MATRICES.iter().zip(family) {
        write_matrix(&mut out, name, m);
    }
    out
}

/// Cursor over lines that remembers the byte offset of the current line.
struct Lines<'a> {
    rest: &'a str,
    offset: u64,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self { rest: text, offset: 0 }
    }

    fn next(&mut self) -> Option<(u64, &'a str)> {
        if self.rest.is_empty() {
            return None;
        }
        let at = self.offset;
        let (line, rest, consumed) = match self.rest.find('\n') {
            Some(i) => (&self.rest[..i], &self.rest[i + 1..], i + 1),
            None => (self.rest, "", self.rest.len()),
        };
        self.rest = rest;
        self.offset += consumed as u64;
        Some((at, line))
    }

    fn expect(&mut self, what: &str) -> Result<(u64, &'a str), FormatError> {
        self.next()
            .ok_or_else(|| FormatError::new(self.offset, format!("unexpected end of file, expected {what}")))
    }
}

fn parse_scalar(lines: &mut Lines, key: &str) -> Result<u64, FormatError> {
    let (at, line) = lines.expect(&format!("`{key} <value>`"))?;
    let mut it = line.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(k), Some(v), None) if k == key => v
            .parse()
            .map_err(|_| FormatError::new(at, format!("bad value for {key}: {v}"))),
        _ => Err(FormatError::new(at, format!("expected `{key} <value>`, got `{line}`"))),
    }
}

fn parse_matrix(
    lines: &mut Lines,
    field: QuadExtField,
    name: &str,
) -> Result<FieldMatrix, FormatError> {
    let (at, line) = lines.expect("matrix header")?;
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "matrix" || parts[1] != name {
        return Err(FormatError::new(at, format!("expected `matrix {name} <rows> <cols>`, got `{line}`")));
    }
    let rows: usize = parts[2]
        .parse()
        .map_err(|_| FormatError::new(at, "bad row count"))?;
    let cols: usize = parts[3]
        .parse()
        .map_err(|_| FormatError::new(at, "bad column count"))?;
    let mut data: Vec<Vec<ExtElem>> = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (at, line) = lines.expect("matrix row")?;
        let entries: Result<Vec<ExtElem>, FormatError> = line
            .split_whitespace()
            .map(|tok| {
                field
                    .parse_elem(tok)
                    .map_err(|e| FormatError::new(at, format!("bad entry `{tok}`: {e}")))
            })
            .collect();
        let entries = entries?;
        if entries.len() != cols {
            return Err(FormatError::new(
                at,
                format!("row has {} entries, expected {cols}", entries.len()),
            ));
        }
        data.push(entries);
    }
    FieldMatrix::from_rows(field, data).map_err(|e| FormatError::new(at, e.to_string()))
}

/// Parse a dump, validating both the field description and the matrix
/// family itself (a tampered file is rejected, not trusted).
pub fn parse_tables(text: &str) -> Result<CodeTables, FormatError> {
    let mut lines = Lines::new(text);
    let (at, tag) = lines.expect("format tag")?;
    if tag != TAG {
        return Err(FormatError::new(at, format!("expected `{TAG}`, got `{tag}`")));
    }
    let t = parse_scalar(&mut lines, "T")? as usize;
    let b = parse_scalar(&mut lines, "B")? as usize;
    let n = parse_scalar(&mut lines, "N")? as usize;
    let w = parse_scalar(&mut lines, "W")? as usize;
    let params: CodeParams = derive_params(t, b, n, Some(w))
        .map_err(|e| FormatError::new(0, e.to_string()))?;
    let p = parse_scalar(&mut lines, "p")? as u32;
    if p != params.prime() {
        return Err(FormatError::new(
            0,
            format!("stored prime {p} does not match derived prime {}", params.prime()),
        ));
    }
    let r = parse_scalar(&mut lines, "r")? as u32;
    let field = QuadExtField::from_parts(p, r).map_err(|e| FormatError::new(0, e.to_string()))?;
    let (at, line) = lines.expect("alpha")?;
    let alpha = match line.strip_prefix("alpha ") {
        Some(tok) => field
            .parse_elem(tok.trim())
            .map_err(|e| FormatError::new(at, format!("bad alpha: {e}")))?,
        None => return Err(FormatError::new(at, format!("expected `alpha <elem>`, got `{line}`"))),
    };
    let mut family = Vec::with_capacity(MATRICES.len());
    for name in MATRICES {
        family.push(parse_matrix(&mut lines, field, name)?);
    }
    let mut it = family.into_iter();
    let tables = CodeTables::from_parts(
        params,
        field,
        alpha,
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    )
    .ok_or_else(|| FormatError::new(0, "matrix family fails its defining identities"))?;
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use windfec_core::construction::derive_params;

    #[test]
    fn round_trip_is_bit_exact() {
        for (t, b, n) in [(6, 4, 3), (1, 1, 1), (5, 3, 2)] {
            let tables = CodeTables::build(derive_params(t, b, n, None).unwrap());
            let text = write_tables(&tables);
            let parsed = parse_tables(&text).unwrap();
            assert_eq!(parsed, tables);
            assert_eq!(write_tables(&parsed), text);
        }
    }

    #[test]
    fn tampered_dump_is_rejected_with_offset() {
        let tables = CodeTables::build(derive_params(6, 4, 3, None).unwrap());
        let text = write_tables(&tables);
        // flip one generator entry: identities no longer hold
        let broken = text.replacen("matrix generator 4 8\n1+0*w", "matrix generator 4 8\n2+0*w", 1);
        assert_ne!(text, broken);
        assert!(parse_tables(&broken).is_err());
        // syntactically malformed line points at its byte offset
        let truncated = &text[..text.len() / 2];
        let err = parse_tables(truncated).unwrap_err();
        assert!(err.offset > 0);
    }
}
