//! Line-oriented text formats for instances and colorings.
//!
//! ```text
//! # comment
//! scc 1
//! colors 2
//! vertices 3
//! arc 0 1 0 0
//! arc 1 2 1 0
//! ```

use std::fmt::Write as _;

use crate::conflict::{Coloring, ConflictInstance};
use crate::error::{Error, Result};
use crate::{Color, Vertex};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        (!line.is_empty() && !line.starts_with('#'))
            .then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn number(line: usize, field: &str, what: &str) -> Result<usize> {
    field.parse().map_err(|_| {
        parse_err(
            line,
            format!("{what} must be a non-negative integer, got `{field}`"),
        )
    })
}

fn keyed(line: usize, fields: &[&str], key: &str) -> Result<usize> {
    match fields {
        [k, value] if *k == key => number(line, value, key),
        _ => Err(parse_err(
            line,
            format!("expected `{key} <n>`, got `{}`", fields.join(" ")),
        )),
    }
}

/// Parses an instance file. Arcs are sorted into canonical order and the
/// result is normalized; arc directions are kept as written.
pub fn parse_instance(text: &str) -> Result<ConflictInstance> {
    let mut lines = content_lines(text);
    let eof = text.lines().count() + 1;

    let (line, fields) = lines
        .next()
        .ok_or_else(|| parse_err(eof, "missing `scc 1` header"))?;
    if fields != ["scc", "1"] {
        return Err(parse_err(
            line,
            format!("expected header `scc 1`, got `{}`", fields.join(" ")),
        ));
    }
    let (line, fields) = lines
        .next()
        .ok_or_else(|| parse_err(eof, "missing `colors` line"))?;
    let k = keyed(line, &fields, "colors")?;
    let (line, fields) = lines
        .next()
        .ok_or_else(|| parse_err(eof, "missing `vertices` line"))?;
    let n = keyed(line, &fields, "vertices")?;

    let mut arcs: Vec<(Vertex, Vertex, Color, Color)> = Vec::new();
    for (line, fields) in lines {
        let [tag, u, v, ct, ch] = fields[..] else {
            return Err(parse_err(
                line,
                format!(
                    "expected `arc u v c_tail c_head`, got `{}`",
                    fields.join(" ")
                ),
            ));
        };
        if tag != "arc" {
            return Err(parse_err(line, format!("unknown record `{tag}`")));
        }
        let (u, v) = (number(line, u, "vertex")?, number(line, v, "vertex")?);
        let (ct, ch) = (number(line, ct, "color")?, number(line, ch, "color")?);
        if u == v {
            return Err(parse_err(line, format!("loop arc at vertex {u}")));
        }
        if let Some(&bad) = [u, v].iter().find(|&&x| x >= n) {
            return Err(parse_err(
                line,
                format!("vertex {bad} out of range for {n} vertices"),
            ));
        }
        if let Some(&bad) = [ct, ch].iter().find(|&&c| c >= k) {
            return Err(parse_err(
                line,
                format!("color {bad} out of range for {k} colors"),
            ));
        }
        arcs.push((u, v, ct, ch));
    }
    arcs.sort_unstable();
    Ok(ConflictInstance::from_arcs(n, k, arcs)?.normalize())
}

/// Canonical serialization: header, then arcs sorted by
/// `(tail, head, c_tail, c_head)`.
pub fn emit_instance(inst: &ConflictInstance) -> String {
    let mut arcs: Vec<_> = inst
        .arcs()
        .map(|a| (a.tail, a.head, a.c_tail, a.c_head))
        .collect();
    arcs.sort_unstable();
    let mut out = format!(
        "scc 1\ncolors {}\nvertices {}\n",
        inst.k(),
        inst.vertex_count()
    );
    for (u, v, ct, ch) in arcs {
        writeln!(out, "arc {u} {v} {ct} {ch}").expect("writing to a String");
    }
    out
}

/// Parses `v <vertex> <color>` lines; every vertex of `0..n` exactly once.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring> {
    let mut colors: Vec<Option<Color>> = vec![None; n];
    for (line, fields) in content_lines(text) {
        let ["v", v, c] = fields[..] else {
            return Err(parse_err(
                line,
                format!("expected `v <vertex> <color>`, got `{}`", fields.join(" ")),
            ));
        };
        let v = number(line, v, "vertex")?;
        let c = number(line, c, "color")?;
        let slot = colors
            .get_mut(v)
            .ok_or_else(|| parse_err(line, format!("vertex {v} out of range for {n} vertices")))?;
        if slot.replace(c).is_some() {
            return Err(parse_err(line, format!("vertex {v} colored twice")));
        }
    }
    if let Some(missing) = colors.iter().position(Option::is_none) {
        return Err(parse_err(
            text.lines().count() + 1,
            format!("vertex {missing} has no color"),
        ));
    }
    Ok(Coloring(colors.into_iter().flatten().collect()))
}

pub fn emit_coloring(col: &Coloring) -> String {
    let mut out = String::new();
    for (v, c) in col.as_slice().iter().enumerate() {
        writeln!(out, "v {v} {c}").expect("writing to a String");
    }
    out
}
