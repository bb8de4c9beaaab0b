//! Plain-text group definitions.
//!
//! ```text
//! degree 4
//! # generators: one per line, as 1-based image lists or in cycle notation
//! 2 1 3 4
//! (1 2 3 4)
//! subgroup V4
//! (1 2)(3 4)
//! (1 3)(2 4)
//! ```

use super::perm::Perm;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub subgroups: Vec<(String, Vec<Perm>)>,
}

impl GroupFile {
    pub fn subgroup(&self, name: &str) -> Option<&[Perm]> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g.as_slice())
    }
}

pub fn parse(text: &str) -> Result<GroupFile> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    let mut subgroups: Vec<(String, Vec<Perm>)> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let Some(n) = degree else {
            let mut parts = line.split_whitespace();
            if parts.next() != Some("degree") {
                return Err(err(line_no, "expected `degree N`".into()));
            }
            let n = parts
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| n > 0)
                .ok_or_else(|| err(line_no, "degree must be a positive integer".into()))?;
            if parts.next().is_some() {
                return Err(err(line_no, "trailing text after degree".into()));
            }
            degree = Some(n);
            continue;
        };
        if let Some(rest) = line.strip_prefix("subgroup") {
            let name = rest.trim();
            if name.is_empty()
                || name.contains(char::is_whitespace)
                || !rest.starts_with(char::is_whitespace)
            {
                return Err(err(line_no, "expected `subgroup NAME`".into()));
            }
            if subgroups.iter().any(|(s, _)| s == name) {
                return Err(err(line_no, format!("subgroup `{name}` defined twice")));
            }
            subgroups.push((name.to_string(), Vec::new()));
            continue;
        }
        let perm = if line.starts_with('(') {
            Perm::parse_cycles(n, line)
        } else {
            let images: std::result::Result<Vec<usize>, _> =
                line.split_whitespace().map(str::parse).collect();
            let images =
                images.map_err(|_| err(line_no, "generator entries must be integers".into()))?;
            if images.len() != n {
                return Err(err(
                    line_no,
                    format!("expected {n} images, found {}", images.len()),
                ));
            }
            Perm::from_one_based(&images)
        }
        .map_err(|e| err(line_no, e.to_string()))?;
        match subgroups.last_mut() {
            Some((_, gens)) => gens.push(perm),
            None => generators.push(perm),
        }
    }
    let degree = degree.ok_or_else(|| err(last_line.max(1), "missing `degree N` line".into()))?;
    Ok(GroupFile {
        degree,
        generators,
        subgroups,
    })
}
