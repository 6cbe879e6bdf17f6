//! Text encodings for graphs: edge lists, graph6, JSON and (write-only) DOT.
//!
//! Edge lists hold one `u v` pair per line with 1-based ids; `#` starts a
//! comment. The order is the largest id seen unless a `# order N` line says
//! otherwise, which the writer emits only when trailing vertices are isolated.
//! JSON is `{"n":N,"edges":[[u,v],...]}` with `u < v` and edges sorted.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
    Json,
    Dot,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" | "edge-list" | "edgelist" => Ok(GraphFormat::EdgeList),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "json" => Ok(GraphFormat::Json),
            "dot" => Ok(GraphFormat::Dot),
            other => Err(Error::Argument(format!("unknown graph format `{other}`"))),
        }
    }
}

impl GraphFormat {
    /// Guesses a format from a file name; anything unrecognised is an edge list.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => GraphFormat::Json,
            Some("g6") | Some("graph6") => GraphFormat::Graph6,
            Some("dot") | Some("gv") => GraphFormat::Dot,
            _ => GraphFormat::EdgeList,
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::Json => parse_json(text),
        GraphFormat::Dot => Err(Error::Argument("DOT input is not supported".into())),
    }
}

pub fn serialize_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => write_edge_list(g),
        GraphFormat::Graph6 => write_graph6(g),
        GraphFormat::Json => write_json(g),
        GraphFormat::Dot => write_dot(g),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let (body, comment) = match raw.find('#') {
            Some(pos) => (&raw[..pos], Some((&raw[pos + 1..], pos + 1))),
            None => (raw, None),
        };
        if let Some((comment, offset)) = comment {
            let mut words = comment.split_whitespace();
            if words.next() == Some("order") {
                let value = words
                    .next()
                    .ok_or_else(|| Error::parse(line_no, offset + 1, "`# order` needs a value"))?;
                declared = Some(value.parse().map_err(|_| {
                    Error::parse(line_no, offset + 1, format!("bad order `{value}`"))
                })?);
            }
        }
        let tokens = tokens_with_columns(body);
        match tokens.as_slice() {
            [] => continue,
            [(u, cu), (v, cv)] => {
                let u = parse_vertex(u, line_no, *cu)?;
                let v = parse_vertex(v, line_no, *cv)?;
                if u == v {
                    return Err(Error::parse(line_no, *cu, format!("self-loop at vertex {u}")));
                }
                edges.push((u, v));
            }
            [(_, c), ..] => {
                return Err(Error::parse(line_no, *c, "expected exactly two vertex ids"));
            }
        }
    }
    let max_id = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < max_id => {
            return Err(Error::parse(
                1,
                1,
                format!("declared order {n} is below vertex id {max_id}"),
            ))
        }
        Some(n) => n,
        None => max_id,
    };
    Graph::from_edges(n, edges)
}

fn tokens_with_columns(line: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((&line[s..i], s + 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((&line[s..], s + 1));
    }
    out
}

fn parse_vertex(token: &str, line: usize, column: usize) -> Result<usize> {
    match token.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(Error::parse(line, column, format!("`{token}` is not a positive vertex id"))),
    }
}

fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let max_id = edges.iter().map(|&(_, v)| v).max().unwrap_or(0);
    let mut out = String::new();
    if max_id < g.order() {
        let _ = writeln!(out, "# order {}", g.order());
    }
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

fn parse_json(text: &str) -> Result<Graph> {
    let parsed: JsonGraph = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    Graph::from_edges(parsed.n, parsed.edges.into_iter().map(|[u, v]| (u, v)))
        .map_err(|e| Error::parse(1, 1, e.to_string()))
}

fn write_json(g: &Graph) -> String {
    let doc = JsonGraph {
        n: g.order(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&doc).expect("graph JSON is always serializable")
}

fn write_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 1..=g.order() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

const G6_HEADER: &str = ">>graph6<<";

fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (body, base) = match line.strip_prefix(G6_HEADER) {
        Some(rest) => (rest.as_bytes(), G6_HEADER.len()),
        None => (line.as_bytes(), 0),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(1, base + i + 1, format!("byte {b} outside graph6 range")));
        }
    }
    let sixes = |range: std::ops::Range<usize>| -> Result<usize> {
        if range.end > body.len() {
            return Err(Error::parse(1, base + body.len() + 1, "truncated graph6 header"));
        }
        Ok(body[range].iter().fold(0, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    let (n, start) = match body.first() {
        None => return Err(Error::parse(1, base + 1, "empty graph6 string")),
        Some(&126) if body.get(1) == Some(&126) => (sixes(2..8)?, 8),
        Some(&126) => (sixes(1..4)?, 4),
        Some(&b) => ((b - 63) as usize, 1),
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let data = &body[start..];
    if data.len() != bits_needed.div_ceil(6) {
        return Err(Error::parse(
            1,
            base + start + 1,
            format!("expected {} data bytes for n = {n}, found {}", bits_needed.div_ceil(6), data.len()),
        ));
    }
    let mut g = Graph::null(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                g.link(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    let push_sixes = |out: &mut Vec<u8>, value: usize, count: usize| {
        for s in (0..count).rev() {
            out.push(((value >> (6 * s)) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push_sixes(&mut out, n, 3);
    } else {
        out.extend([126, 126]);
        push_sixes(&mut out, n, 6);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i + 1, j + 1) as u8;
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
    out.push(b'\n');
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_list_path() {
        let g = parse_graph("1 2\n2 3", GraphFormat::EdgeList).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edges(), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn edge_list_comments_and_order() {
        let g = parse_graph("# a comment\n# order 5\n1 2 # trailing\n\n", GraphFormat::EdgeList)
            .unwrap();
        assert_eq!((g.order(), g.edge_count()), (5, 1));
        assert_eq!(write_edge_list(&g), "# order 5\n1 2\n");
    }

    #[test]
    fn k4_edge_list_has_six_lines() {
        let text = serialize_graph(&Graph::complete(4), GraphFormat::EdgeList);
        assert_eq!(text.lines().count(), 6);
        assert!(text.starts_with("1 2\n1 3\n"));
    }

    #[test]
    fn edge_list_errors_carry_positions() {
        let err = parse_graph("1 2\n3  x\n", GraphFormat::EdgeList).unwrap_err();
        assert_eq!(err, Error::parse(2, 4, "`x` is not a positive vertex id"));
        let err = parse_graph("1 2 3", GraphFormat::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, .. }));
        let err = parse_graph("\n 4 4", GraphFormat::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 2, .. }));
        let err = parse_graph("0 1", GraphFormat::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, .. }));
        assert!(parse_graph("# order 2\n1 3", GraphFormat::EdgeList).is_err());
    }

    #[test]
    fn json_is_sorted_and_compact() {
        let g = Graph::from_edges(4, [(3, 1), (2, 1), (4, 3)]).unwrap();
        assert_eq!(
            serialize_graph(&g, GraphFormat::Json),
            r#"{"n":4,"edges":[[1,2],[1,3],[3,4]]}"#
        );
        assert!(matches!(
            parse_graph("{\"n\": 2,\n \"edges\": [[1, 3]]}", GraphFormat::Json),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_graph("{\"n\": 2,\n \"edges\": [[1, ]]}", GraphFormat::Json),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn graph6_known_strings() {
        // Reference strings produced by networkx.
        assert_eq!(serialize_graph(&Graph::complete(4), GraphFormat::Graph6), "C~\n");
        let p = Graph::from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert_eq!(serialize_graph(&p, GraphFormat::Graph6), "DhC\n");
        assert_eq!(parse_graph(">>graph6<<C~", GraphFormat::Graph6).unwrap(), Graph::complete(4));
        assert!(matches!(parse_graph("C~~", GraphFormat::Graph6), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("C\u{7f}", GraphFormat::Graph6), Err(Error::Parse { column: 2, .. })));
    }

    #[test]
    fn graph6_large_order() {
        let g = Graph::cycle(100).unwrap();
        let text = serialize_graph(&g, GraphFormat::Graph6);
        assert_eq!(text.as_bytes()[0], 126);
        assert_eq!(parse_graph(&text, GraphFormat::Graph6).unwrap(), g);
    }

    #[test]
    fn dot_is_write_only() {
        let dot = serialize_graph(&Graph::complete(2), GraphFormat::Dot);
        assert_eq!(dot, "graph G {\n  1;\n  2;\n  1 -- 2;\n}\n");
        assert!(parse_graph(&dot, GraphFormat::Dot).is_err());
    }

    proptest! {
        #[test]
        fn round_trips(n in 0usize..80, seed in any::<u64>()) {
            let mut state = seed | 1;
            let g = Graph::from_fn(n, |_, _| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state & 3 == 0
            });
            for format in [GraphFormat::EdgeList, GraphFormat::Graph6, GraphFormat::Json] {
                let text = serialize_graph(&g, format);
                prop_assert_eq!(&parse_graph(&text, format).unwrap(), &g);
            }
        }
    }
}
