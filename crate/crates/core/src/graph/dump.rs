//! Plain-text edge lists: a header line `n_vertices n_edges`, then one
//! `u v` line per edge with `u < v`.

use std::io::{BufRead, Write};

use super::AdjacencyGraph;
use crate::{Error, Result};

pub fn write_edge_list<W: Write>(g: &AdjacencyGraph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.order(), g.edge_count())?;
    for u in 0..g.order() {
        for &v in g.neighbors(u) {
            if (v as usize) > u {
                writeln!(out, "{u} {v}")?;
            }
        }
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<AdjacencyGraph> {
    let mut lines = input.lines().enumerate();
    let parse_pair = |line: usize, text: &str| -> Result<(usize, usize)> {
        let mut it = text.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(Error::Parse {
                line,
                msg: format!("expected two integers, got {text:?}"),
            }),
        }
    };
    let (n, m) = match lines.next() {
        Some((i, l)) => parse_pair(i + 1, &l?)?,
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "missing header".into(),
            })
        }
    };
    let mut edges = Vec::with_capacity(m);
    for (i, l) in lines {
        let l = l?;
        if l.trim().is_empty() {
            continue;
        }
        edges.push(parse_pair(i + 1, &l)?);
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    AdjacencyGraph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_hamming_power_graph;

    #[test]
    fn round_trip() {
        let g = build_hamming_power_graph(4, 2).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("16 80\n"));
        let back = read_edge_list(&buf[..]).unwrap();
        assert_eq!(back.order(), 16);
        assert_eq!(back.edge_count(), 80);
        for u in 0..16 {
            assert_eq!(back.neighbors(u), g.neighbors(u));
        }
    }

    #[test]
    fn rejects_bad_counts() {
        assert!(read_edge_list(&b"3 2\n0 1\n"[..]).is_err());
        assert!(read_edge_list(&b"3 1\n0 x\n"[..]).is_err());
    }
}
