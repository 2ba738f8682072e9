use thiserror::Error;

use super::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed token {token:?}")]
    Token { line: usize, token: String },
    #[error("line {line}: expected two vertex ids, found {found}")]
    Arity { line: usize, found: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} out of range for declared order {n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: header `n <k>` must precede all edges")]
    LateHeader { line: usize },
    #[error("graph6: invalid character {0:?}")]
    InvalidChar(char),
    #[error("graph6: truncated input")]
    Truncated,
    #[error("graph6: {0} trailing bytes")]
    Trailing(usize),
    #[error("graph6: order {0} exceeds supported maximum")]
    TooLarge(usize),
}

/// Input encodings accepted by [`parse_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl GraphFormat {
    /// graph6 bytes all lie in `63..=126`, so any digit or space means edge list.
    pub fn detect(text: &str) -> GraphFormat {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'));
        match first {
            Some(l) => {
                let l = l.strip_prefix(">>graph6<<").unwrap_or(l);
                if l.bytes().all(|b| (63..=126).contains(&b)) {
                    GraphFormat::Graph6
                } else {
                    GraphFormat::EdgeList
                }
            }
            None => GraphFormat::EdgeList,
        }
    }
}

pub fn parse_graph(text: &str, format: Option<GraphFormat>) -> Result<Graph, ParseError> {
    match format.unwrap_or_else(|| GraphFormat::detect(text)) {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .unwrap_or("");
            parse_graph6(line)
        }
    }
}

/// Parses whitespace-separated `u v` lines. An optional `n <k>` header fixes the
/// order; otherwise it is one more than the largest id. `#` starts a comment line.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = l.split_whitespace().collect();
        if tokens[0] == "n" {
            if declared.is_some() || !edges.is_empty() {
                return Err(ParseError::LateHeader { line });
            }
            if tokens.len() != 2 {
                return Err(ParseError::Arity { line, found: tokens.len() - 1 });
            }
            declared = Some(parse_id(tokens[1], line)?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(ParseError::Arity { line, found: tokens.len() });
        }
        let u = parse_id(tokens[0], line)?;
        let v = parse_id(tokens[1], line)?;
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if let Some(n) = declared {
            if let Some(&vertex) = [u, v].iter().find(|&&x| x >= n) {
                return Err(ParseError::OutOfRange { line, vertex, n });
            }
        }
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    let mut g = Graph::empty(n);
    for (u, v) in edges {
        g.add_edge(u, v).expect("edges validated above");
    }
    Ok(g)
}

fn parse_id(token: &str, line: usize) -> Result<usize, ParseError> {
    token.parse::<usize>().map_err(|_| ParseError::Token {
        line,
        token: token.to_string(),
    })
}

const MAX_GRAPH6_ORDER: usize = (1 << 36) - 1;

fn push_order(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
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
}

/// Encodes `g` in graph6: the order, then the upper triangle column by column,
/// six bits per byte, most significant first.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_order(&mut out, n);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(ParseError::InvalidChar(b as char));
    }
    let field = |range: std::ops::Range<usize>| -> Result<usize, ParseError> {
        let chunk = bytes.get(range).ok_or(ParseError::Truncated)?;
        Ok(chunk.iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize))
    };
    let (n, body) = match bytes {
        [] => return Err(ParseError::Truncated),
        [126, 126, ..] => (field(2..8)?, 8),
        [126, ..] => (field(1..4)?, 4),
        [b, ..] => ((b - 63) as usize, 1),
    };
    if n > MAX_GRAPH6_ORDER {
        return Err(ParseError::TooLarge(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    let data = &bytes[body..];
    if data.len() < need {
        return Err(ParseError::Truncated);
    }
    if data.len() > need {
        return Err(ParseError::Trailing(data.len() - need));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).expect("graph6 edge is valid");
            }
            k += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_examples() {
        assert_eq!(parse_edge_list("0 1\n1 2").unwrap(), Graph::path(3));
        assert_eq!(parse_edge_list("n 4\n0 1\n0 2\n0 3").unwrap(), Graph::star(3));
        assert_eq!(
            parse_edge_list("0 0"),
            Err(ParseError::SelfLoop { line: 1, vertex: 0 })
        );
    }

    #[test]
    fn edge_list_comments_header_and_errors() {
        let g = parse_edge_list("# a path\nn 5\n\n0 1\n1 0\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(
            parse_edge_list("n 2\n0 2"),
            Err(ParseError::OutOfRange { line: 2, vertex: 2, n: 2 })
        );
        assert!(matches!(parse_edge_list("0 x"), Err(ParseError::Token { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1 2"), Err(ParseError::Arity { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1\nn 3"), Err(ParseError::LateHeader { line: 2 })));
        assert_eq!(parse_edge_list("").unwrap().n(), 0);
    }

    #[test]
    fn graph6_examples() {
        assert_eq!(emit_graph6(&Graph::path(2)), "A_");
        let k13 = Graph::star(3);
        assert_eq!(parse_graph6(&emit_graph6(&k13)).unwrap(), k13);
        assert_eq!(parse_graph6("~~"), Err(ParseError::Truncated));
        assert_eq!(parse_graph6("A x"), Err(ParseError::InvalidChar(' ')));
        assert_eq!(parse_graph6("A__"), Err(ParseError::Trailing(1)));
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn graph6_large_orders() {
        for n in [62, 63, 100] {
            let g = Graph::path(n);
            let s = emit_graph6(&g);
            assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }

    #[test]
    fn format_detection() {
        assert_eq!(GraphFormat::detect("A_\n"), GraphFormat::Graph6);
        assert_eq!(GraphFormat::detect("# c\n0 1\n"), GraphFormat::EdgeList);
        assert_eq!(GraphFormat::detect("n 3\n"), GraphFormat::EdgeList);
        assert_eq!(parse_graph("# c\nCs\n", None).unwrap(), Graph::star(3));
    }
}
