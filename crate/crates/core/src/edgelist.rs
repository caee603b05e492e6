//! Edge-list ingestion and seeded synthetic graphs.
//!
//! Accepted format: one whitespace-separated `u v` pair per line; blank
//! lines and lines starting with `%` or `#` are skipped; anything after the
//! second field is ignored (weights, timestamps). With `header` set, the
//! first data line gives the node count (further fields ignored).

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest node id accepted from a file.
pub const MAX_NODE_ID: usize = 1 << 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeListOptions {
    pub one_based: bool,
    pub header: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl LoadStats {
    pub fn warnings(&self) -> usize {
        self.self_loops + self.duplicates
    }
}

pub fn load_edge_list(path: impl AsRef<Path>, options: EdgeListOptions) -> Result<(Graph, LoadStats)> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text, options).map_err(|e| match e {
        Error::Parse { line, message, .. } => Error::Parse { path: path.into(), line, message },
        other => other,
    })
}

pub fn parse_edge_list(text: &str, options: EdgeListOptions) -> Result<(Graph, LoadStats)> {
    let err = |line: usize, message: String| Error::Parse { path: "<input>".into(), line, message };
    let mut declared = None;
    let mut pairs = Vec::new();
    let mut header_pending = options.header;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut next_id = |what: &str| -> Result<usize> {
            let field = fields.next().ok_or_else(|| err(line_no, format!("missing {what}")))?;
            field.parse::<usize>().map_err(|_| err(line_no, format!("bad {what} {field:?}")))
        };
        if header_pending {
            declared = Some(next_id("node count")?);
            header_pending = false;
            continue;
        }
        let (u, v) = (next_id("source node")?, next_id("target node")?);
        let shift = |x: usize| -> Result<usize> {
            let id = if options.one_based {
                x.checked_sub(1).ok_or_else(|| err(line_no, "node 0 in a 1-based file".into()))?
            } else {
                x
            };
            if id >= MAX_NODE_ID || declared.is_some_and(|n| id >= n) {
                return Err(err(line_no, format!("node id {x} out of range")));
            }
            Ok(id)
        };
        pairs.push((shift(u)?, shift(v)?));
    }

    let node_count = declared
        .unwrap_or_else(|| pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    let mut stats = LoadStats::default();
    let mut seen = BTreeSet::new();
    let mut g = Graph::new(node_count);
    for (u, v) in pairs {
        if u == v {
            stats.self_loops += 1;
        } else if !seen.insert((u.min(v), u.max(v))) {
            stats.duplicates += 1;
        } else {
            g.add_edge(u, v)?;
        }
    }
    if stats.warnings() > 0 {
        log::warn!(
            "dropped {} self-loop(s) and {} duplicate edge(s)",
            stats.self_loops,
            stats.duplicates
        );
    }
    Ok((g, stats))
}

/// `G(n, p)`: every pair present independently with probability `density`,
/// drawn in lexicographic pair order.
pub fn generate_synthetic(node_count: usize, density: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::invalid(format!("density {density} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(node_count);
    for a in 0..node_count {
        for b in a + 1..node_count {
            if rng.gen_bool(density) {
                g.add_edge(a, b)?;
            }
        }
    }
    Ok(g)
}
