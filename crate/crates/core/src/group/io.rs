//! Plain-text group files.
//!
//! ```text
//! perm 4
//! # generators in cycle notation on 1..n
//! (1 2)(3 4)
//! (1 3)(2 4)
//! ```
//!
//! or `cayley <n>` followed by n rows of n 1-based element numbers.

use std::path::Path;

use super::Group;
use crate::error::{GrcError, Result};

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

fn parse_cycles(line: &str, n: usize) -> Result<Vec<u16>> {
    let bad = |msg: &str| GrcError::Parse(format!("{msg} in `{line}`"));
    let mut perm: Vec<u16> = (0..n as u16).collect();
    let mut rest = line.trim();
    if rest == "()" {
        return Ok(perm);
    }
    let mut touched = vec![false; n];
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let body = &body[..body_end - 1];
        let pts: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad("bad point")))
            .collect::<Result<_>>()?;
        for &p in &pts {
            if p == 0 || p > n {
                return Err(bad("point out of range"));
            }
            if touched[p - 1] {
                return Err(bad("point repeated"));
            }
            touched[p - 1] = true;
        }
        // cycles act right to left, as in the product of disjoint cycles
        for w in 0..pts.len() {
            perm[pts[w] - 1] = (pts[(w + 1) % pts.len()] - 1) as u16;
        }
        rest = rest[body_end + 1..].trim_start();
    }
    Ok(perm)
}

/// Parses a group description from text.
pub fn parse_group(text: &str, name: &str) -> Result<Group> {
    let mut lines = content_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| GrcError::Parse("empty group file".into()))?;
    let (kind, n) = header
        .split_once(char::is_whitespace)
        .ok_or_else(|| GrcError::Parse(format!("bad header `{header}`")))?;
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| GrcError::Parse(format!("bad size in header `{header}`")))?;
    if n == 0 || n > u16::MAX as usize {
        return Err(GrcError::Parse(format!("size {n} out of range")));
    }
    match kind {
        "perm" => {
            let gens: Vec<(String, Vec<u16>)> = lines
                .enumerate()
                .map(|(i, l)| Ok((format!("p{}", i + 1), parse_cycles(l, n)?)))
                .collect::<Result<_>>()?;
            Group::generate(
                name,
                (0..n as u16).collect(),
                gens,
                |a: &Vec<u16>, b: &Vec<u16>| b.iter().map(|&x| a[x as usize]).collect(),
            )
        }
        "cayley" => {
            let rows: Vec<Vec<usize>> = lines
                .map(|l| {
                    l.split_whitespace()
                        .map(|t| match t.parse::<usize>() {
                            Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                            _ => Err(GrcError::Parse(format!("bad table entry `{t}`"))),
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(GrcError::Parse(format!("cayley table must be {n}x{n}")));
            }
            cayley_group(name, &rows)
        }
        other => Err(GrcError::Parse(format!("unknown group file kind `{other}`"))),
    }
}

fn cayley_group(name: &str, rows: &[Vec<usize>]) -> Result<Group> {
    let n = rows.len();
    let mul = |a: usize, b: usize| rows[a][b];
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
        .ok_or_else(|| GrcError::Parse("cayley table has no identity".into()))?;
    for a in 0..n {
        let mut seen = vec![false; n];
        for b in 0..n {
            if std::mem::replace(&mut seen[mul(a, b)], true) {
                return Err(GrcError::Parse("cayley table is not a Latin square".into()));
            }
        }
        // exhaustive below 256 elements, a fixed stride sample above
        let step = if n <= 256 { 1 } else { n / 61 + 1 };
        for b in (0..n).step_by(step) {
            for c in (0..n).step_by(step) {
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(GrcError::Parse("cayley table is not associative".into()));
                }
            }
        }
    }
    // greedy generating set: repeatedly add the first element not yet reached
    let mut reached = vec![false; n];
    reached[identity] = true;
    let mut gens: Vec<(String, usize)> = Vec::new();
    while let Some(g) = (0..n).find(|&x| !reached[x]) {
        gens.push((format!("p{}", gens.len() + 1), g));
        let mut members = vec![identity];
        reached = vec![false; n];
        reached[identity] = true;
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for (_, s) in &gens {
                let y = mul(x, *s);
                if !reached[y] {
                    reached[y] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
    }
    Group::generate(name, identity, gens, |&a, &b| mul(a, b))
}

/// Reads a group file.
pub fn load_group(path: &Path) -> Result<Group> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("G")
        .to_string();
    parse_group(&text, &name)
}
