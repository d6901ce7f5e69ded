//! Edge-list and digraph6 text formats.
//!
//! Edge-list: the first line holds the decimal order `n`; each further
//! nonempty line holds one arc `u v` with 0-based endpoints. Output always
//! lists arcs in lexicographic order and terminates every line with LF.
//!
//! digraph6: `&`, then the order as one byte `n + 63`, then the `n * n`
//! adjacency matrix in row-major order packed six bits per byte (most
//! significant first, zero padded), each byte offset by 63. The
//! `>>digraph6<<` header is accepted on input and never written.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::digraph::{Digraph, MAX_VERTICES};
use crate::error::{Error, Result};

const DIGRAPH6_HEADER: &str = ">>digraph6<<";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Digraph6,
}

impl Format {
    /// Guesses the format from the first non-blank character.
    pub fn sniff(text: &str) -> Format {
        match text.trim_start().as_bytes().first() {
            Some(b'&') | Some(b'>') => Format::Digraph6,
            _ => Format::EdgeList,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(Format::EdgeList),
            "digraph6" | "d6" => Ok(Format::Digraph6),
            other => Err(format!("unknown format `{other}` (expected edge-list or digraph6)")),
        }
    }
}

pub fn parse_digraph(text: &str, format: Format) -> Result<Digraph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Digraph6 => parse_digraph6(text),
    }
}

pub fn serialize_digraph(d: &Digraph, format: Format) -> String {
    match format {
        Format::EdgeList => to_edge_list(d),
        Format::Digraph6 => to_digraph6(d),
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing vertex count"))?;
    let n: usize = header
        .parse()
        .map_err(|_| parse_error(1, format!("expected vertex count, found `{header}`")))?;
    if n == 0 || n > MAX_VERTICES {
        return Err(parse_error(
            1,
            format!("vertex count {n} outside 1..={MAX_VERTICES}"),
        ));
    }
    let mut d = Digraph::empty(n)?;
    for (lineno, line) in lines {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut endpoint = |what: &str| -> Result<usize> {
            let tok = fields
                .next()
                .ok_or_else(|| parse_error(lineno, format!("missing {what}")))?;
            let v: usize = tok
                .parse()
                .map_err(|_| parse_error(lineno, format!("bad {what} `{tok}`")))?;
            if v >= n {
                return Err(parse_error(
                    lineno,
                    format!("vertex {v} out of range (n = {n})"),
                ));
            }
            Ok(v)
        };
        let u = endpoint("tail")?;
        let v = endpoint("head")?;
        if fields.next().is_some() {
            return Err(parse_error(lineno, "trailing fields after arc"));
        }
        if u == v {
            return Err(parse_error(lineno, format!("loop at vertex {u}")));
        }
        d.add_arc(u, v)?;
    }
    Ok(d)
}

fn to_edge_list(d: &Digraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", d.order());
    for (u, v) in d.arcs() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

fn parse_digraph6(text: &str) -> Result<Digraph> {
    let mut body = text.trim();
    if let Some(rest) = body.strip_prefix(DIGRAPH6_HEADER) {
        body = rest;
    }
    let bytes = body
        .strip_prefix('&')
        .ok_or_else(|| parse_error(1, "digraph6 string must start with `&`"))?
        .as_bytes();
    let (&size, data) = bytes
        .split_first()
        .ok_or_else(|| parse_error(1, "missing order byte"))?;
    if !(63..=126).contains(&size) {
        return Err(parse_error(1, format!("invalid order byte {size}")));
    }
    if size == 126 {
        return Err(parse_error(
            1,
            format!("orders above {MAX_VERTICES} are not supported"),
        ));
    }
    let n = (size - 63) as usize;
    if n == 0 {
        return Err(parse_error(1, "digraph6 order 0 is not supported"));
    }
    let needed = (n * n).div_ceil(6);
    if data.len() != needed {
        return Err(parse_error(
            1,
            format!("expected {needed} data bytes for order {n}, found {}", data.len()),
        ));
    }
    let mut rows = vec![0u64; n];
    for (k, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_error(1, format!("invalid data byte {b}")));
        }
        let chunk = b - 63;
        for bit in 0..6 {
            if chunk >> (5 - bit) & 1 == 0 {
                continue;
            }
            let idx = 6 * k + bit;
            if idx >= n * n {
                return Err(parse_error(1, "nonzero padding bits"));
            }
            let (u, v) = (idx / n, idx % n);
            if u == v {
                return Err(parse_error(1, format!("loop at vertex {u}")));
            }
            rows[u] |= 1u64 << v;
        }
    }
    Digraph::from_rows(&rows)
}

fn to_digraph6(d: &Digraph) -> String {
    let n = d.order();
    let mut s = String::with_capacity(2 + (n * n).div_ceil(6));
    s.push('&');
    s.push((n as u8 + 63) as char);
    let mut chunk = 0u8;
    let mut filled = 0;
    for u in 0..n {
        for v in 0..n {
            chunk = chunk << 1 | d.has_arc(u, v) as u8;
            filled += 1;
            if filled == 6 {
                s.push((chunk + 63) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        s.push(((chunk << (6 - filled)) + 63) as char);
    }
    s
}
