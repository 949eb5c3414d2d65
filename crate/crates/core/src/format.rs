//! Text encodings: graph6 and a 1-based edge list.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

const HEADER: &[u8] = b">>graph6<<";

/// Edge lists start with a digit; graph6 never does.
pub fn sniff(payload: &[u8]) -> GraphFormat {
    match payload.iter().find(|b| !b.is_ascii_whitespace()) {
        Some(b) if b.is_ascii_digit() => GraphFormat::EdgeList,
        _ => GraphFormat::Graph6,
    }
}

pub fn parse_graph_text(format: GraphFormat, payload: &[u8]) -> Result<Graph> {
    match format {
        GraphFormat::Graph6 => parse_graph6(payload),
        GraphFormat::EdgeList => parse_edge_list(payload),
    }
}

fn malformed(position: usize, detail: impl Into<String>) -> Error {
    Error::MalformedPayload {
        position,
        detail: detail.into(),
    }
}

pub fn parse_graph6(payload: &[u8]) -> Result<Graph> {
    let mut start = payload
        .iter()
        .position(|b| !b.is_ascii_whitespace())
        .ok_or_else(|| malformed(payload.len(), "empty graph6 payload"))?;
    if payload[start..].starts_with(HEADER) {
        start += HEADER.len();
    }
    let end = payload[start..]
        .iter()
        .position(|b| b.is_ascii_whitespace())
        .map_or(payload.len(), |p| start + p);
    if let Some(p) = payload[end..].iter().position(|b| !b.is_ascii_whitespace()) {
        return Err(malformed(end + p, "trailing data after graph6 string"));
    }
    let body = &payload[start..end];
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(malformed(start + i, format!("byte {b:#04x} outside graph6 range")));
        }
    }
    let (n, used) = match body {
        [] => return Err(malformed(start, "missing size")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(malformed(start + 2, "truncated 36-bit size"));
            }
            (chunks(&rest[..6]), 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(malformed(start + 1, "truncated 18-bit size"));
            }
            (chunks(&rest[..3]), 4)
        }
        [b, ..] => (u64::from(b - 63), 1),
    };
    let n = usize::try_from(n).unwrap_or(usize::MAX);
    if n > MAX_VERTICES {
        return Err(Error::SizeCapExceeded {
            n,
            cap: MAX_VERTICES,
        });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let data = &body[used..];
    if data.len() != need {
        return Err(malformed(
            start + used + data.len().min(need),
            format!("expected {need} data bytes for {n} vertices, found {}", data.len()),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    if let Some(&last) = data.last() {
        let pad = need * 6 - bits;
        if (last - 63) & ((1u8 << pad) - 1) != 0 {
            return Err(malformed(start + used + need - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

fn chunks(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0u64, |acc, &b| acc << 6 | u64::from(b - 63))
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// `"n m"` followed by `m` lines `"u v"` with 1-based labels.
pub fn parse_edge_list(payload: &[u8]) -> Result<Graph> {
    let text = std::str::from_utf8(payload)
        .map_err(|e| malformed(e.valid_up_to(), "payload is not UTF-8"))?;
    let mut tokens = Tokens::new(text);
    let n = tokens.number("vertex count")?;
    let m = tokens.number("edge count")?;
    if n > MAX_VERTICES {
        return Err(Error::SizeCapExceeded {
            n,
            cap: MAX_VERTICES,
        });
    }
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (pos, u) = tokens.labelled("edge endpoint")?;
        let (_, v) = tokens.labelled("edge endpoint")?;
        if u == 0 || v == 0 {
            return Err(malformed(pos, "labels are 1-based"));
        }
        edges.push((u - 1, v - 1));
    }
    if let Some((pos, _)) = tokens.next() {
        return Err(malformed(pos, format!("more than the declared {m} edges")));
    }
    Graph::from_edges(n, edges)
}

struct Tokens<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        Tokens { text, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let rest = &self.text[self.pos..];
        let skip = rest.find(|c: char| !c.is_whitespace())?;
        let start = self.pos + skip;
        let len = self.text[start..]
            .find(char::is_whitespace)
            .unwrap_or(self.text.len() - start);
        self.pos = start + len;
        Some((start, &self.text[start..start + len]))
    }

    fn labelled(&mut self, what: &str) -> Result<(usize, usize)> {
        let end = self.text.len();
        let (pos, tok) = self
            .next()
            .ok_or_else(|| malformed(end, format!("missing {what}")))?;
        tok.parse::<usize>()
            .map(|v| (pos, v))
            .map_err(|_| malformed(pos, format!("invalid {what} `{tok}`")))
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.labelled(what).map(|(_, v)| v)
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_halfgraph, make_path, make_q};

    #[test]
    fn edge_list_examples() {
        let g = parse_edge_list(b"4 3\n1 2\n2 3\n3 4").unwrap();
        assert_eq!(g, make_path(4));
        assert_eq!(
            parse_edge_list(b"2 1\n1 3"),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert!(matches!(parse_edge_list(b"3 2\n1 2"), Err(Error::MalformedPayload { .. })));
        assert!(matches!(parse_edge_list(b"3 1\n1 x"), Err(Error::MalformedPayload { position: 6, .. })));
        assert!(matches!(parse_edge_list(b"3 1\n0 1"), Err(Error::MalformedPayload { .. })));
        assert_eq!(parse_edge_list(b"2 1\n1 1"), Err(Error::LoopEdge(0)));
    }

    #[test]
    fn graph6_examples() {
        let g = parse_graph6(b"B?").unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 0));
        // P_4: pairs (0,1),(0,2),(1,2),(0,3),(1,3),(2,3) -> 1 0 1 0 0 1
        assert_eq!(to_graph6(&make_path(4)), "Ch");
        assert_eq!(parse_graph6(b">>graph6<<Ch\n").unwrap(), make_path(4));
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert!(matches!(parse_graph6(b"Bx"), Err(Error::MalformedPayload { .. })));
        assert!(matches!(parse_graph6(b"C"), Err(Error::MalformedPayload { .. })));
        assert!(matches!(parse_graph6(b"C\x01"), Err(Error::MalformedPayload { position: 1, .. })));
    }

    #[test]
    fn long_size_form() {
        let g = Graph::from_fn(64, |u, v| (u + v) % 3 == 0);
        let text = to_graph6(&g);
        assert!(text.starts_with('~'));
        assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn round_trips() {
        let mut graphs = vec![make_halfgraph(12).unwrap(), Graph::complete(7), Graph::empty(1)];
        for n in 4..20 {
            graphs.push(make_path(n));
            graphs.push(make_q(n).unwrap().complement());
        }
        for g in graphs {
            assert_eq!(parse_graph6(to_graph6(&g).as_bytes()).unwrap(), g);
            assert_eq!(parse_edge_list(to_edge_list(&g).as_bytes()).unwrap(), g);
        }
    }

    #[test]
    fn sniffing() {
        assert_eq!(sniff(b"  4 3\n"), GraphFormat::EdgeList);
        assert_eq!(sniff(b"Ch"), GraphFormat::Graph6);
        assert_eq!(sniff(b">>graph6<<Ch"), GraphFormat::Graph6);
    }
}
