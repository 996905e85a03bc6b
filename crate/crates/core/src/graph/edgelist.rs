//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! n m
//! u v        (m lines, 0-based endpoints)
//! ```
//!
//! Text after `#` on any line is ignored. Loops, out-of-range endpoints,
//! repeated pairs and a line count different from `m` are rejected.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{Builder, Graph};
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn two_numbers(s: &str, line: usize) -> Result<(u64, u64)> {
    let mut it = s.split_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return Err(parse_err(line, format!("expected two integers, got {s:?}")));
    };
    let a = a
        .parse()
        .map_err(|_| parse_err(line, format!("not an integer: {a:?}")))?;
    let b = b
        .parse()
        .map_err(|_| parse_err(line, format!("not an integer: {b:?}")))?;
    Ok((a, b))
}

pub fn read_edge_list<R: Read>(reader: R) -> Result<Graph> {
    let mut header: Option<(usize, u64)> = None;
    let mut builder: Option<Builder> = None;
    let mut seen = HashSet::new();
    let mut count = 0u64;
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (a, b) = two_numbers(body, lineno)?;
        match header {
            None => {
                let n = a as usize;
                let max = (n as u64) * (n as u64).saturating_sub(1) / 2;
                if b > max {
                    return Err(parse_err(
                        lineno,
                        format!("m = {b} exceeds C({n},2) = {max}"),
                    ));
                }
                header = Some((n, b));
                builder = Some(Builder::new(n));
            }
            Some((n, m)) => {
                let (u, v) = (a as usize, b as usize);
                if u >= n || v >= n {
                    return Err(parse_err(
                        lineno,
                        format!("endpoint out of range in {u} {v} (n = {n})"),
                    ));
                }
                if u == v {
                    return Err(parse_err(lineno, format!("self-loop at vertex {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(lineno, format!("repeated edge {u} {v}")));
                }
                count += 1;
                if count > m {
                    return Err(parse_err(
                        lineno,
                        format!("more than the declared {m} edges"),
                    ));
                }
                if let Some(bld) = builder.as_mut() {
                    bld.add(u, v);
                }
            }
        }
    }
    let Some((_, m)) = header else {
        return Err(parse_err(0, "missing `n m` header"));
    };
    if count != m {
        return Err(parse_err(0, format!("declared {m} edges, found {count}")));
    }
    Ok(builder.expect("header sets builder").finish())
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

pub fn read_edge_list_file(path: &Path) -> Result<Graph> {
    let f = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_edge_list(f).map_err(|e| match e {
        Error::Stream(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    })
}

pub fn write_edge_list_file(g: &Graph, path: &Path) -> Result<()> {
    let wrap = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let f = File::create(path).map_err(wrap)?;
    write_edge_list(g, BufWriter::new(f)).map_err(wrap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_gnp, Seed};

    #[test]
    fn reads_with_comments() {
        let text = "# a 5-cycle\n5 5\n0 1\n1 2 # inline\n\n2 3\n3 4\n4 0\n";
        let g = read_edge_list(text.as_bytes()).unwrap();
        assert_eq!(g, Graph::cycle(5));
    }

    #[test]
    fn round_trip() {
        let g = gen_gnp(17, 0.4, Seed(11)).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert_eq!(read_edge_list(buf.as_slice()).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        for (text, needle) in [
            ("3 1\n1 1\n", "self-loop"),
            ("3 1\n0 3\n", "out of range"),
            ("3 2\n0 1\n", "declared 2"),
            ("3 1\n0 1\n1 2\n", "more than"),
            ("3 2\n0 1\n1 0\n", "repeated"),
            ("3 9\n", "exceeds"),
            ("3\n", "two integers"),
            ("", "header"),
            ("3 1\n0 x\n", "not an integer"),
        ] {
            let err = read_edge_list(text.as_bytes()).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?}: {err}");
        }
    }
}
