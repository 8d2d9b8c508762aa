//! Plain-text instance formats.
//!
//! Graph: header `n m`, then `m` lines `u v`.
//! Hypergraph: header `r n m`, then `m` lines of `r` vertices.
//! Tournament: header `n`, then `n` rows of 0/1 with `row[u][v] = 1` iff
//! `u → v`; rows are written space-separated, and compact `0110` rows are
//! also accepted.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, UniformHypergraph};
use crate::tournament::Tournament;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| tok.parse::<usize>().map_err(|e| Error::input(format!("line {line_no}: `{tok}`: {e}"))))
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (no, header) = lines.next().ok_or_else(|| Error::input("empty graph file"))?;
    let head = numbers(no, header)?;
    let [n, m] = head[..] else { return Err(Error::input(format!("line {no}: expected `n m`"))) };
    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines {
        let nums = numbers(no, line)?;
        let [u, v] = nums[..] else { return Err(Error::input(format!("line {no}: expected `u v`"))) };
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::input(format!("header declares {m} edges, found {}", edges.len())));
    }
    let g = Graph::from_edges(n, edges)?;
    if g.edge_count() != m {
        return Err(Error::input("duplicate edges in graph file"));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        writeln!(out, "{u} {v}").expect("string write");
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<UniformHypergraph> {
    let mut lines = content_lines(text);
    let (no, header) = lines.next().ok_or_else(|| Error::input("empty hypergraph file"))?;
    let head = numbers(no, header)?;
    let [r, n, m] = head[..] else { return Err(Error::input(format!("line {no}: expected `r n m`"))) };
    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines {
        let e = numbers(no, line)?;
        if e.len() != r {
            return Err(Error::input(format!("line {no}: expected {r} vertices")));
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(Error::input(format!("header declares {m} edges, found {}", edges.len())));
    }
    UniformHypergraph::new(r, n, edges)
}

pub fn write_hypergraph(h: &UniformHypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.r(), h.n(), h.edge_count());
    for e in h.edges() {
        let parts: Vec<String> = e.iter().map(usize::to_string).collect();
        writeln!(out, "{}", parts.join(" ")).expect("string write");
    }
    out
}

pub fn parse_tournament(text: &str) -> Result<Tournament> {
    let mut lines = content_lines(text);
    let (no, header) = lines.next().ok_or_else(|| Error::input("empty tournament file"))?;
    let head = numbers(no, header)?;
    let [n] = head[..] else { return Err(Error::input(format!("line {no}: expected `n`"))) };
    let mut rows = Vec::with_capacity(n);
    for (no, line) in lines {
        let compact: String = line.split_whitespace().collect();
        let row = compact
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::input(format!("line {no}: tournament rows hold only 0 and 1"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        if row.len() != n {
            return Err(Error::input(format!("line {no}: expected {n} entries")));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::input(format!("expected {n} rows, found {}", rows.len())));
    }
    Tournament::from_matrix(&rows)
}

pub fn write_tournament(t: &Tournament) -> String {
    let mut out = format!("{}\n", t.n());
    for row in t.to_matrix() {
        let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        writeln!(out, "{}", cells.join(" ")).expect("string write");
    }
    out
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::petersen;

    #[test]
    fn graph_round_trip() {
        let g = petersen();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        assert_eq!(parse_graph("# comment\n3 1\n\n0 2\n").unwrap().edge_count(), 1);
        assert!(parse_graph("3 2\n0 1\n").is_err());
        assert!(parse_graph("3 1\n0 3\n").is_err());
        assert!(parse_graph("3 2\n0 1\n1 0\n").is_err());
    }

    #[test]
    fn hypergraph_round_trip() {
        let h = UniformHypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        assert_eq!(parse_hypergraph(&write_hypergraph(&h)).unwrap(), h);
        assert!(parse_hypergraph("3 5 1\n0 1\n").is_err());
    }

    #[test]
    fn tournament_round_trip() {
        let t = Tournament::cyclic_triangle();
        let text = write_tournament(&t);
        assert_eq!(text, "3\n0 1 0\n0 0 1\n1 0 0\n");
        assert_eq!(parse_tournament(&text).unwrap(), t);
        assert_eq!(parse_tournament("3\n010\n001\n100\n").unwrap(), t);
        assert!(parse_tournament("2\n01\n01\n").is_err());
    }
}
