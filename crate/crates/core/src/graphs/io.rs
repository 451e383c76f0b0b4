//! Edge-list text format.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! n m
//! u v        (m lines, 0 <= u < v < n)
//! ```

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn two_numbers(line_no: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(line_no, format!("expected two integers, got {line:?}")))?;
        tok.parse()
            .map_err(|_| parse_err(line_no, format!("not a nonnegative integer: {tok:?}")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(parse_err(line_no, format!("trailing tokens in {line:?}")));
    }
    Ok(pair)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header line \"n m\""))?;
    let (n, m) = two_numbers(header_line, header)?;
    let mut g = Graph::new(n);
    let mut seen = 0;
    for (line_no, line) in lines {
        let (u, v) = two_numbers(line_no, line)?;
        if u >= n || v >= n {
            return Err(parse_err(line_no, format!("vertex out of range 0..{n} in edge {u} {v}")));
        }
        if u == v {
            return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
        }
        if u > v {
            return Err(parse_err(line_no, format!("edge {u} {v} must be written with u < v")));
        }
        if g.has_edge(u, v) {
            return Err(parse_err(line_no, format!("duplicate edge {u} {v}")));
        }
        g.try_add_edge(u, v)?;
        seen += 1;
        if seen > m {
            return Err(parse_err(line_no, format!("more than the declared {m} edges")));
        }
    }
    if seen != m {
        return Err(parse_err(header_line, format!("header declares {m} edges, found {seen}")));
    }
    Ok(g)
}

pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
