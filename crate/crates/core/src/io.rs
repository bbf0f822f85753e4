//! Text formats: a plain edge list and short-form graph6.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parses `"n m"` followed by `m` lines of `"u v"` (0-based vertices).
///
/// Blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines.next().ok_or(Error::Malformed {
        line: 1,
        msg: "missing \"n m\" header".into(),
    })?;
    let [n, m] = parse_pair(line, header)?;
    let mut g = Graph::empty(n).map_err(|_| Error::Malformed {
        line,
        msg: "graph needs at least one vertex".into(),
    })?;

    let mut seen = 0;
    for (line, text) in lines {
        if seen == m {
            return Err(Error::Malformed {
                line,
                msg: format!("more than the {m} declared edges"),
            });
        }
        let [u, v] = parse_pair(line, text)?;
        g.insert_edge(u, v)?;
        seen += 1;
    }
    if seen < m {
        return Err(Error::Malformed {
            line: text.lines().count(),
            msg: format!("expected {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let bad = |msg: String| Error::Malformed { line, msg };
    if fields.len() != 2 {
        return Err(bad(format!("expected two integers, got {text:?}")));
    }
    let mut out = [0; 2];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f
            .parse()
            .map_err(|_| bad(format!("not a non-negative integer: {f:?}")))?;
    }
    Ok(out)
}

const G6_OFFSET: u8 = 63;
/// Largest order representable by the one-byte size prefix.
pub const G6_MAX_ORDER: usize = 62;

/// Decodes a short-form graph6 string. Surrounding whitespace is ignored.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let bytes = line.trim().as_bytes();
    let (&first, payload) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6Payload("empty string".into()))?;
    let value = |offset: usize, b: u8| -> Result<u8> {
        if (63..=126).contains(&b) {
            Ok(b - G6_OFFSET)
        } else {
            Err(Error::Graph6Char {
                offset,
                ch: b as char,
            })
        }
    };
    let n = value(0, first)? as usize;
    if n == G6_MAX_ORDER + 1 {
        return Err(Error::Graph6TooLarge(n));
    }
    if n == 0 {
        return Err(Error::Graph6Payload("graph has no vertices".into()));
    }

    let bits = n * (n - 1) / 2;
    let want = bits.div_ceil(6);
    if payload.len() < want {
        return Err(Error::Graph6Payload(format!(
            "truncated: {} payload bytes, expected {want}",
            payload.len()
        )));
    }
    if payload.len() > want {
        return Err(Error::Graph6Payload(format!(
            "{} trailing bytes after payload",
            payload.len() - want
        )));
    }
    let sextets = payload
        .iter()
        .enumerate()
        .map(|(i, &b)| value(i + 1, b))
        .collect::<Result<Vec<u8>>>()?;
    let bit = |k: usize| sextets[k / 6] >> (5 - k % 6) & 1 == 1;
    if (bits..want * 6).any(bit) {
        return Err(Error::Graph6Payload("nonzero padding bits".into()));
    }

    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                g.insert_edge(u, v)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encodes a graph on at most 62 vertices as short-form graph6.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > G6_MAX_ORDER {
        return Err(Error::Graph6TooLarge(n));
    }
    let bits = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(1 + bits.div_ceil(6));
    out.push(n as u8 + G6_OFFSET);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + G6_OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + G6_OFFSET);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
