use super::{RotationTailedGraph, Slot};
use crate::error::{Error, Result};

/// Parses the line format
///
/// ```text
/// # comment
/// vertex <id> : <n1> <n2> ... <nk>
/// ```
///
/// where `*` marks the tail slot. Vertex indices follow declaration order.
pub fn parse_rotation_graph(text: &str) -> Result<RotationTailedGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut raw: Vec<(usize, Vec<String>)> = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: &str| Error::Parse {
            line: lineno,
            message: message.to_string(),
        };
        let rest = line
            .strip_prefix("vertex")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| parse_err("expected `vertex <id> : <neighbors>`"))?;
        let (id, neighbors) = rest
            .split_once(':')
            .ok_or_else(|| parse_err("missing `:` after vertex id"))?;
        let id = id.trim();
        if id.is_empty() || id.contains(char::is_whitespace) {
            return Err(parse_err("vertex id must be a single token"));
        }
        if id == "*" {
            return Err(parse_err("`*` is reserved for the tail slot"));
        }
        if labels.iter().any(|l| l == id) {
            return Err(parse_err(&format!("vertex {id} declared twice")));
        }
        labels.push(id.to_string());
        raw.push((lineno, neighbors.split_whitespace().map(str::to_string).collect()));
    }

    let mut rotation = Vec::with_capacity(raw.len());
    for (u, (lineno, tokens)) in raw.into_iter().enumerate() {
        let mut rot = Vec::with_capacity(tokens.len());
        for t in tokens {
            if t == "*" {
                rot.push(Slot::Tail);
            } else {
                let v = labels.iter().position(|l| *l == t).ok_or_else(|| {
                    Error::Validation(format!(
                        "line {lineno}: vertex {} lists undeclared neighbor {t}",
                        labels[u]
                    ))
                })?;
                rot.push(Slot::Vertex(v));
            }
        }
        rotation.push(rot);
    }
    RotationTailedGraph::new(labels, rotation)
}
