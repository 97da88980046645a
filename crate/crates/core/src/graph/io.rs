//! graph6 and plain edge-list text formats.

use super::{Builder, Graph, GraphError, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

/// Parses one graph6 record. Trailing whitespace and the optional
/// `>>graph6<<` header are accepted; padding bits must be zero.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let bytes = text.trim_end().as_bytes();
    let start = if bytes.starts_with(HEADER.as_bytes()) {
        HEADER.len()
    } else {
        0
    };
    let (n, body_start) = parse_order(bytes, start)?;
    if n == 0 {
        return Err(GraphError::parse(
            start,
            "graph must have at least one vertex",
        ));
    }
    if n > MAX_ORDER {
        return Err(GraphError::TooLarge { n, cap: MAX_ORDER });
    }

    let nbits = n * (n - 1) / 2;
    let body = &bytes[body_start..];
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        let offset = body_start + body.len().min(expected);
        return Err(GraphError::parse(
            offset,
            format!(
                "expected {expected} adjacency bytes for n = {n}, found {}",
                body.len()
            ),
        ));
    }
    let mut groups = Vec::with_capacity(expected);
    for (i, &c) in body.iter().enumerate() {
        if !(63..=126).contains(&c) {
            return Err(GraphError::parse(
                body_start + i,
                format!("byte {c} outside 63..=126"),
            ));
        }
        groups.push(c - 63);
    }
    let bit = |idx: usize| groups[idx / 6] >> (5 - idx % 6) & 1 == 1;
    for idx in nbits..expected * 6 {
        if bit(idx) {
            return Err(GraphError::parse(
                body_start + idx / 6,
                "non-zero padding bits",
            ));
        }
    }

    let mut b = Builder::new(n)?;
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(idx) {
                b.add_edge(u, v)?;
            }
            idx += 1;
        }
    }
    Ok(b.finish())
}

fn parse_order(bytes: &[u8], start: usize) -> Result<(usize, usize), GraphError> {
    let check = |i: usize| -> Result<usize, GraphError> {
        match bytes.get(i) {
            None => Err(GraphError::parse(
                i,
                "unexpected end of input in the order header",
            )),
            Some(&c) if (63..=126).contains(&c) => Ok((c - 63) as usize),
            Some(&c) => Err(GraphError::parse(i, format!("byte {c} outside 63..=126"))),
        }
    };
    let first = check(start)?;
    if first < 63 {
        return Ok((first, start + 1));
    }
    let (width, from) = if check(start + 1)? == 63 {
        (6, start + 2)
    } else {
        (3, start + 1)
    };
    let mut n = 0usize;
    for i in 0..width {
        n = (n << 6) | check(from + i)?;
    }
    let min = if width == 3 { 63 } else { 258_048 };
    if n < min {
        return Err(GraphError::parse(
            start,
            format!("n = {n} must use the shorter order header"),
        ));
    }
    Ok((n, from + width))
}

/// Encodes `g` as graph6 without header or trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Parses the edge-list format: a first line `n m` followed by `m` lines
/// `u v` (0-indexed). Anything after `#` on a line is ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let content = raw.split('#').next().unwrap_or("");
        if !content.trim().is_empty() {
            lines.push((offset, content));
        }
        offset += raw.len();
    }
    let Some(&(head_off, head)) = lines.first() else {
        return Err(GraphError::parse(0, "missing `n m` header line"));
    };
    let [n, m] = parse_pair(head, head_off)?;
    let body = &lines[1..];
    if body.len() != m {
        let at = body.get(m).map_or(text.len(), |l| l.0);
        return Err(GraphError::parse(
            at,
            format!("header announces {m} edges, found {}", body.len()),
        ));
    }
    let mut b = Builder::new(n)?;
    for &(off, line) in body {
        let [u, v] = parse_pair(line, off)?;
        b.add_edge(u, v)?;
    }
    Ok(b.finish())
}

fn parse_pair(line: &str, offset: usize) -> Result<[usize; 2], GraphError> {
    let mut fields = line.split_whitespace();
    let mut out = [0usize; 2];
    for slot in &mut out {
        let tok = fields
            .next()
            .ok_or_else(|| GraphError::parse(offset, "expected two integers"))?;
        *slot = tok.parse().map_err(|_| {
            GraphError::parse(offset, format!("`{tok}` is not a non-negative integer"))
        })?;
    }
    if fields.next().is_some() {
        return Err(GraphError::parse(
            offset,
            "trailing tokens after two integers",
        ));
    }
    Ok(out)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, path};

    #[test]
    fn decode_small_examples() {
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.n(), k2.m()), (2, 1));

        let k1 = parse_graph6("@").unwrap();
        assert_eq!((k1.n(), k1.m()), (1, 0));

        // bits 000000 111100: vertex 4 adjacent to 0..4
        let star = parse_graph6("D?{").unwrap();
        assert_eq!(star.n(), 5);
        assert_eq!(star.degrees(), vec![1, 1, 1, 1, 4]);
        assert_eq!(to_graph6(&star), "D?{");
    }

    #[test]
    fn header_and_whitespace() {
        let g = parse_graph6(">>graph6<<A_\n").unwrap();
        assert_eq!(g, complete(2).unwrap());
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        assert!(matches!(
            parse_graph6(""),
            Err(GraphError::ParseError { offset: 0, .. })
        ));
        assert!(matches!(
            parse_graph6("D?"),
            Err(GraphError::ParseError { offset: 2, .. })
        ));
        assert!(matches!(
            parse_graph6("D?{?"),
            Err(GraphError::ParseError { offset: 3, .. })
        ));
        assert!(matches!(
            parse_graph6("D?\x1f"),
            Err(GraphError::ParseError { offset: 2, .. })
        ));
        // K2 with a stray padding bit
        assert!(matches!(
            parse_graph6("A`"),
            Err(GraphError::ParseError { offset: 1, .. })
        ));
        assert!(matches!(
            parse_graph6("?"),
            Err(GraphError::ParseError { .. })
        ));
        assert!(matches!(
            parse_graph6("~??B"),
            Err(GraphError::ParseError { offset: 0, .. })
        ));
    }

    #[test]
    fn long_order_header() {
        let g = path(70).unwrap();
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 69]);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn known_encodings() {
        // bit layouts packed by hand
        assert_eq!(to_graph6(&complete(4).unwrap()), "C~");
        assert_eq!(to_graph6(&cycle(5).unwrap()), "Dhc");
        assert_eq!(to_graph6(&path(3).unwrap()), "Bg");
    }

    #[test]
    fn edge_list_roundtrip_and_comments() {
        let text = "# a 4-cycle\n4 4\n0 1\n1 2 # middle\n\n2 3\n3 0\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g, cycle(4).unwrap());
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        let k = complete_bipartite(2, 2).unwrap();
        assert_eq!(parse_edge_list(&to_edge_list(&k)).unwrap(), k);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            parse_edge_list(""),
            Err(GraphError::ParseError { offset: 0, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n"),
            Err(GraphError::ParseError { .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 x\n"),
            Err(GraphError::ParseError { offset: 4, .. })
        ));
        assert_eq!(
            parse_edge_list("3 1\n1 1\n"),
            Err(GraphError::InvalidEdge(1))
        );
        assert_eq!(
            parse_edge_list("3 1\n0 5\n"),
            Err(GraphError::IndexOutOfRange { index: 5, n: 3 })
        );
    }
}
