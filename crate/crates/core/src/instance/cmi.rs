//! The line-oriented CMI instance format.

use super::{Bridge, GridVertex, HostInstance, InstanceError};
use crate::color::{ColorSet, MAX_COLORS};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch == ' ' || ch == '\t' {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], col: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], col: s + 1 });
    }
    out
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> InstanceError {
    InstanceError::Syntax { line, col, msg: msg.into() }
}

fn parse_usize(tok: &Token<'_>, line: usize) -> Result<usize, InstanceError> {
    if tok.text.is_empty() || !tok.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, tok.col, format!("expected a non-negative integer, found `{}`", tok.text)));
    }
    tok.text.parse().map_err(|_| syntax(line, tok.col, "integer too large"))
}

fn parse_colors(tok: &Token<'_>, line: usize, q: usize) -> Result<ColorSet, InstanceError> {
    let inner = tok
        .text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| syntax(line, tok.col, format!("expected a color set `{{..}}`, found `{}`", tok.text)))?;
    let mut set = ColorSet::empty();
    if inner.is_empty() {
        return Ok(set);
    }
    let mut prev = 0;
    let mut offset = 1;
    for part in inner.split(',') {
        let col = tok.col + offset;
        offset += part.len() + 1;
        let c = parse_usize(&Token { text: part, col }, line)?;
        if c <= prev {
            return Err(syntax(line, col, "colors must be strictly increasing"));
        }
        if c == 0 || c > q {
            return Err(InstanceError::ColorOutOfRange { line, color: c, q });
        }
        set.insert(c);
        prev = c;
    }
    Ok(set)
}

fn expect_arity(toks: &[Token<'_>], n: usize, line: usize, what: &str) -> Result<(), InstanceError> {
    if toks.len() != n {
        let col = toks.get(n).map_or(toks.last().map_or(1, |t| t.col + t.text.len()), |t| t.col);
        return Err(syntax(line, col, format!("`{what}` expects {} arguments", n - 1)));
    }
    Ok(())
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.bytes().all(|b| b.is_ascii_alphanumeric() || b"_.-".contains(&b))
}

/// Parses CMI text. Blank lines and lines starting with `#` are ignored.
pub fn parse_instance(text: &str) -> Result<HostInstance, InstanceError> {
    let mut header_seen = false;
    let mut dims: Option<(usize, usize, usize)> = None;
    let mut vertex_colors = BTreeMap::new();
    let mut bridges = Vec::new();
    let mut ids = BTreeSet::new();
    let mut last_line = 0;
    for (k, raw) in text.split('\n').enumerate() {
        let line = k + 1;
        last_line = line;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if raw.trim_start().starts_with('#') {
            continue;
        }
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        if !header_seen {
            if head.text != "cmi" {
                return Err(syntax(line, head.col, "expected header `cmi 1`"));
            }
            expect_arity(&toks, 2, line, "cmi")?;
            if toks[1].text != "1" {
                return Err(syntax(line, toks[1].col, format!("unsupported version `{}`", toks[1].text)));
            }
            header_seen = true;
            continue;
        }
        let Some((d_r, d_c, q)) = dims else {
            if head.text != "dims" {
                return Err(syntax(line, head.col, "expected `dims <d_r> <d_c> <q>`"));
            }
            expect_arity(&toks, 4, line, "dims")?;
            let d_r = parse_usize(&toks[1], line)?;
            let d_c = parse_usize(&toks[2], line)?;
            let q = parse_usize(&toks[3], line)?;
            if q > MAX_COLORS {
                return Err(InstanceError::TooManyColors(q));
            }
            if d_r < 2 || d_c < 2 {
                return Err(InstanceError::BadDims(d_r, d_c));
            }
            dims = Some((d_r, d_c, q));
            continue;
        };
        match head.text {
            "vertexcolor" => {
                expect_arity(&toks, 4, line, "vertexcolor")?;
                let row = parse_usize(&toks[1], line)?;
                let col = parse_usize(&toks[2], line)?;
                if row >= d_r || col >= d_c {
                    return Err(InstanceError::CoordinateOutOfRange { line, row, col });
                }
                let set = parse_colors(&toks[3], line, q)?;
                if vertex_colors.insert(GridVertex::new(row, col), set).is_some() {
                    return Err(InstanceError::DuplicateVertex { line, row, col });
                }
            }
            "bridge" => {
                expect_arity(&toks, 5, line, "bridge")?;
                let id = toks[1].text;
                if !valid_id(id) {
                    return Err(syntax(line, toks[1].col, format!("invalid bridge id `{id}`")));
                }
                let row = parse_usize(&toks[2], line)?;
                let col = parse_usize(&toks[3], line)?;
                if row + 1 >= d_r || col + 1 >= d_c {
                    return Err(InstanceError::CoordinateOutOfRange { line, row, col });
                }
                let colors = parse_colors(&toks[4], line, q)?;
                if !ids.insert(id.to_string()) {
                    return Err(InstanceError::DuplicateBridge { line, id: id.to_string() });
                }
                bridges.push(Bridge { id: id.to_string(), face: (row, col), colors });
            }
            other => return Err(syntax(line, head.col, format!("unknown record `{other}`"))),
        }
    }
    let Some((d_r, d_c, q)) = dims else {
        let msg = if header_seen { "missing `dims` line" } else { "missing header `cmi 1`" };
        return Err(syntax(last_line, 1, msg));
    };
    HostInstance::new(d_r, d_c, q, vertex_colors, bridges)
}

/// Canonical serialization: header, dims, vertex colors in row-major order,
/// then bridges sorted by id.
pub fn write_instance(inst: &HostInstance) -> String {
    let mut out = String::new();
    out.push_str("cmi 1\n");
    let _ = writeln!(out, "dims {} {} {}", inst.d_r(), inst.d_c(), inst.q());
    for (v, set) in inst.vertex_colors() {
        let _ = writeln!(out, "vertexcolor {} {} {}", v.row, v.col, set);
    }
    for b in inst.bridges() {
        let _ = writeln!(out, "bridge {} {} {} {}", b.id, b.face.0, b.face.1, b.colors);
    }
    out
}
