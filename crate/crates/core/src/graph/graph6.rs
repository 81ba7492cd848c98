//! graph6 codec for graphs with at most 62 vertices.
//!
//! Byte 0 is `n + 63`; the upper triangle follows column by column, `x(0,1),
//! x(0,2), x(1,2), x(0,3), ...`, packed big-endian into 6-bit groups, each
//! offset by 63 and zero padded.

use super::{bit, Graph};
use crate::error::{Error, Result};

pub const GRAPH6_MAX_ORDER: usize = 62;

pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::Graph6(format!("n = {n} needs the long header (n > 62)")));
    }
    let nbits = n * (n - 1) / 2;
    let mut out = String::with_capacity(1 + nbits.div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((group + 63) as char);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((group << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let Some(&head) = bytes.first() else {
        return Err(Error::Graph6("empty input".into()));
    };
    if !(63..=126).contains(&head) {
        return Err(Error::Graph6(format!("bad header byte {head}")));
    }
    let n = (head - 63) as usize;
    if n == 0 {
        return Err(Error::Graph6("graphs must have at least one vertex".into()));
    }
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::Graph6("orders above 62 are not supported".into()));
    }
    let nbits = n * (n - 1) / 2;
    let body = &bytes[1..];
    if body.len() != nbits.div_ceil(6) {
        return Err(Error::Graph6(format!(
            "expected {} data bytes for n = {n}, found {}",
            nbits.div_ceil(6),
            body.len()
        )));
    }
    let mut adj = vec![0u64; n];
    let mut pos = 0usize;
    for (idx, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!("bad data byte {b} at offset {}", idx + 1)));
        }
        let v = b - 63;
        for shift in (0..6).rev() {
            let set = (v >> shift) & 1 == 1;
            if pos < nbits {
                if set {
                    let (i, j) = pair_at(pos);
                    adj[i] |= bit(j);
                    adj[j] |= bit(i);
                }
            } else if set {
                return Err(Error::Graph6("nonzero padding bits".into()));
            }
            pos += 1;
        }
    }
    Ok(Graph::from_rows_unchecked(adj))
}

/// Inverse of the column-major position `j(j-1)/2 + i`.
fn pair_at(pos: usize) -> (usize, usize) {
    let mut j = 1;
    while j * (j + 1) / 2 <= pos {
        j += 1;
    }
    (pos - j * (j - 1) / 2, j)
}
