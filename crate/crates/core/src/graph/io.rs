use std::fmt::Write as _;

use super::SimpleGraph;
use crate::error::{Error, Result};

/// Parses the edge-list format: a header line `n m`, then `m` lines `u v`.
/// Lines starting with `#` and blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing header line \"n m\"".into(),
    })?;
    let [n, m] = two_numbers(hline, header)?;

    let mut seen = std::collections::BTreeSet::new();
    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines.by_ref() {
        let [u, v] = two_numbers(line, body)?;
        let fail = |message: String| Err(Error::Parse { line, message });
        if u >= n || v >= n {
            return fail(format!("vertex index out of range 0..{n}"));
        }
        if u == v {
            return fail(format!("loop at vertex {u}"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return fail(format!("duplicate edge {u} {v}"));
        }
        if edges.len() == m {
            return fail(format!("more than the {m} declared edges"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hline,
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    SimpleGraph::new(n, edges)
}

fn two_numbers(line: usize, body: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line,
            message: format!("expected a nonnegative integer, found {s:?}"),
        })
    };
    match fields.as_slice() {
        [a, b] => Ok([parse(a)?, parse(b)?]),
        _ => Err(Error::Parse {
            line,
            message: format!("expected two fields, found {}", fields.len()),
        }),
    }
}

/// Writes the edge-list format with edges in lexicographic order.
pub fn serialize_graph(g: &SimpleGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_empty() {
        let t = parse_graph("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(t.edges(), &[(0, 1), (0, 2), (1, 2)]);
        let e = parse_graph("2 0").unwrap();
        assert_eq!(e.vertex_count(), 2);
        assert_eq!(e.edge_count(), 0);
    }

    #[test]
    fn comments_are_skipped() {
        let g = parse_graph("# a path\n3 2\n# first edge\n0 1\n\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("2 1\n0 0", 2),
            ("2 1\n0 5", 2),
            ("3 2\n0 1\n1 0", 3),
            ("3 1\n0 x", 2),
            ("3 2\n0 1", 1),
            ("3\n", 1),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }
}
