//! Text format:
//!
//! ```text
//! CCC <vertex_count>
//! c <offset>
//! e <p> <q> <cost>
//! t <p> <q> <r> <cost>
//! ```
//!
//! `#` starts a comment. Vertices are 0-based.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use super::{edge_key, triple_key, Instance};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut vertex_count: Option<usize> = None;
    let mut offset: Option<f64> = None;
    let mut edges = Vec::new();
    let mut seen_edges = HashSet::new();
    let mut triples = Vec::new();
    let mut seen_triples = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = content.split_whitespace();
        let Some(tag) = toks.next() else { continue };

        let n = match (tag, vertex_count) {
            ("CCC", None) => {
                let n: usize = number(toks.next(), line, "vertex count")?;
                if n == 0 {
                    return Err(parse_err(line, "vertex count must be positive"));
                }
                vertex_count = Some(n);
                if toks.next().is_some() {
                    return Err(parse_err(line, "trailing tokens"));
                }
                continue;
            }
            ("CCC", Some(_)) => return Err(parse_err(line, "repeated header")),
            (_, None) => return Err(parse_err(line, "expected header 'CCC <vertex_count>'")),
            (_, Some(n)) => n,
        };
        let vertex = |tok: Option<&str>| -> Result<usize> {
            let v: usize = number(tok, line, "vertex")?;
            if v >= n {
                return Err(parse_err(line, format!("vertex {v} out of range 0..{n}")));
            }
            Ok(v)
        };

        match tag {
            "c" => {
                if offset.is_some() {
                    return Err(parse_err(line, "repeated offset"));
                }
                offset = Some(number(toks.next(), line, "offset")?);
            }
            "e" => {
                let p = vertex(toks.next())?;
                let q = vertex(toks.next())?;
                let c: f64 = number(toks.next(), line, "cost")?;
                if p == q {
                    return Err(parse_err(line, format!("self-loop on vertex {p}")));
                }
                if !seen_edges.insert(edge_key(p, q)) {
                    return Err(parse_err(line, format!("duplicate edge {p}-{q}")));
                }
                edges.push((p, q, c));
            }
            "t" => {
                let p = vertex(toks.next())?;
                let q = vertex(toks.next())?;
                let r = vertex(toks.next())?;
                let c: f64 = number(toks.next(), line, "cost")?;
                let key = triple_key(p, q, r);
                if key[0] == key[1] || key[1] == key[2] {
                    return Err(parse_err(line, "triple has repeated vertices"));
                }
                if !seen_triples.insert(key) {
                    return Err(parse_err(line, format!("duplicate triple {p}-{q}-{r}")));
                }
                triples.push((line, p, q, r, c));
            }
            other => return Err(parse_err(line, format!("unknown record '{other}'"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }

    let n = vertex_count.ok_or_else(|| parse_err(1, "missing header 'CCC <vertex_count>'"))?;
    for &(line, p, q, r, _) in &triples {
        for (a, b) in [(p, q), (p, r), (q, r)] {
            if !seen_edges.contains(&edge_key(a, b)) {
                return Err(parse_err(
                    line,
                    format!("triple {p}-{q}-{r} is not a 3-clique: edge {a}-{b} missing"),
                ));
            }
        }
    }
    Instance::new(
        n,
        edges,
        triples.into_iter().map(|(_, p, q, r, c)| (p, q, r, c)),
        offset.unwrap_or(0.0),
    )
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "CCC {}", inst.vertex_count()).unwrap();
    writeln!(out, "c {}", inst.offset()).unwrap();
    for (&(p, q), c) in inst.edges().iter().zip(inst.edge_costs()) {
        writeln!(out, "e {p} {q} {c}").unwrap();
    }
    for (&[p, q, r], c) in inst.triples().iter().zip(inst.triple_costs()) {
        writeln!(out, "t {p} {q} {r} {c}").unwrap();
    }
    out
}

pub fn read_instance_file(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

pub fn write_instance_file(inst: &Instance, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, write_instance(inst)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
