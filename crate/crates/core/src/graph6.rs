//! graph6 short form (orders 1..=62).
//!
//! One header byte `63 + n`, then the upper triangle of the adjacency matrix in
//! column-major order `x(0,1), x(0,2), x(1,2), x(0,3), ...`, packed six bits per
//! byte (most significant first), zero padded, each byte offset by 63.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const GRAPH6_MAX_ORDER: usize = 62;

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

/// Decodes a single graph6 line. A trailing newline and the optional
/// `>>graph6<<` prefix are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let text = text.strip_suffix('\r').unwrap_or(text);
    let (skip, body) = match text.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, text),
    };
    let bytes = body.as_bytes();
    let Some(&head) = bytes.first() else {
        return Err(parse_err(skip, "empty graph6 string"));
    };
    if head == 126 {
        return Err(Error::Capability { what: "graph6 short form", limit: GRAPH6_MAX_ORDER, n: 63 });
    }
    if !(64..=125).contains(&head) {
        return Err(parse_err(skip, format!("bad header byte 0x{head:02x}")));
    }
    let n = (head - 63) as usize;
    let pairs = n * (n - 1) / 2;
    let needed = pairs.div_ceil(6);
    let data = &bytes[1..];
    if data.len() < needed {
        return Err(parse_err(skip + 1 + data.len(), format!("truncated body: expected {needed} bytes, found {}", data.len())));
    }
    if data.len() > needed {
        return Err(parse_err(skip + 1 + needed, "trailing bytes after graph6 body"));
    }
    let mut g = Graph::empty(n)?;
    let mut bit = 0;
    for (k, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(skip + 1 + k, format!("byte 0x{b:02x} outside the graph6 range")));
        }
        let sextet = b - 63;
        for shift in (0..6).rev() {
            if sextet >> shift & 1 == 1 {
                if bit >= pairs {
                    return Err(parse_err(skip + 1 + k, "nonzero padding bit"));
                }
                let (i, j) = pair_of_index(bit);
                g.set_edge(i, j);
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Column-major position of bit index `k` in the upper triangle.
fn pair_of_index(k: usize) -> (usize, usize) {
    let mut j = 1;
    while j * (j + 1) / 2 <= k {
        j += 1;
    }
    (k - j * (j - 1) / 2, j)
}

/// Encodes a graph as a graph6 string without header or newline.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::Capability { what: "graph6 short form", limit: GRAPH6_MAX_ORDER, n });
    }
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push(63 + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Reads graph6 lines, skipping blank lines. Items carry 1-based line numbers.
pub fn read_graph6<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, Graph)>> {
    reader.lines().enumerate().filter_map(|(idx, line)| {
        let line_no = idx + 1;
        match line {
            Err(e) => Some(Err(Error::from(e))),
            Ok(l) => {
                let l = l.trim_end_matches('\r');
                if l.trim().is_empty() {
                    None
                } else {
                    Some(parse_graph6(l).map(|g| (line_no, g)).map_err(|e| match e {
                        Error::Parse { offset, message } => {
                            Error::Parse { offset, message: format!("line {line_no}: {message}") }
                        }
                        other => other,
                    }))
                }
            }
        }
    })
}
