//! Sparse random-graph generation, storage, I/O, and component labeling.

use std::collections::HashSet;
use std::collections::VecDeque;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::Rng;

use crate::rng::stream_rng;
use crate::{Error, Result};

/// Immutable undirected simple graph with compressed adjacency.
///
/// Vertices are `0..n`. Each edge is stored once per direction; per-vertex
/// neighbor lists are sorted, which keeps BFS cache-friendly and makes the
/// representation canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    m: usize,
}

impl Graph {
    /// Builds a graph from undirected edges given as `(u, v)` with `u < v < n`.
    ///
    /// Rejects self-loops, out-of-range endpoints, and parallel edges.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        if n > u32::MAX as usize {
            return Err(Error::Parameter(format!("n = {n} exceeds u32 vertex ids")));
        }
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            if u >= v {
                return Err(Error::Parameter(format!(
                    "edge ({u}, {v}) is not in canonical u < v form"
                )));
            }
            if (v as usize) >= n {
                return Err(Error::Parameter(format!(
                    "edge ({u}, {v}) has endpoint outside 0..{n}"
                )));
            }
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        for v in 0..n {
            offsets.push(offsets[v] + deg[v]);
        }
        let mut neighbors = vec![0u32; 2 * edges.len()];
        let mut cursor = offsets.clone();
        for &(u, v) in edges {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..n {
            let slice = &mut neighbors[offsets[v]..offsets[v + 1]];
            slice.sort_unstable();
            if slice.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parameter(format!("parallel edge at vertex {v}")));
            }
        }
        Ok(Graph {
            offsets,
            neighbors,
            m: edges.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    /// Iterates each undirected edge once, as `(u, v)` with `u < v`,
    /// ascending in `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n() as u32)
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Structural self-check: symmetric adjacency, sorted lists, no loops or
    /// parallel edges, degree sum = 2m.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        if self.neighbors.len() != 2 * self.m {
            return Err(Error::Contract("degree sum != 2m".into()));
        }
        for v in 0..n as u32 {
            let adj = self.neighbors(v);
            if adj.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Contract(format!("adjacency of {v} not strictly sorted")));
            }
            for &u in adj {
                if u == v {
                    return Err(Error::Contract(format!("self-loop at {v}")));
                }
                if (u as usize) >= n {
                    return Err(Error::Contract(format!("neighbor {u} out of range")));
                }
                if self.neighbors(u).binary_search(&v).is_err() {
                    return Err(Error::Contract(format!("edge ({v}, {u}) not symmetric")));
                }
            }
        }
        Ok(())
    }
}

/// Samples G(n, p) with p = lambda/n by geometric skips over the linearized
/// pair index, O(n + m) expected time.
///
/// Identical `(n, lambda, seed)` always produce the identical graph.
pub fn sample_gnp(n: usize, lambda: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Graph::from_edges(0, &[]);
    }
    let p = lambda / n as f64;
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::Parameter(format!(
            "edge probability lambda/n = {p} outside [0, 1]"
        )));
    }
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity((lambda.max(0.0) * n as f64 / 2.0) as usize + 16);
    if p == 0.0 {
        return Graph::from_edges(n, &edges);
    }
    if p == 1.0 {
        for v in 1..n as u32 {
            for u in 0..v {
                edges.push((u, v));
            }
        }
        return Graph::from_edges(n, &edges);
    }
    let mut rng = stream_rng(seed, 0);
    let ln_q = (1.0 - p).ln();
    // Walk pairs (w, v), w < v, in v-major order, advancing by geometric
    // skip lengths; each pair is hit independently with probability p.
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / ln_q).floor() as i64;
        w += 1 + skip;
        while v < n && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as u32, v as u32));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Samples G(n, m): a uniformly random simple graph with exactly `m` edges,
/// by rejection over pair indices.
pub fn sample_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let max_pairs = if n < 2 { 0 } else { n as u64 * (n as u64 - 1) / 2 };
    if m as u64 > max_pairs {
        return Err(Error::Parameter(format!(
            "m = {m} exceeds C({n}, 2) = {max_pairs}"
        )));
    }
    let mut rng = stream_rng(seed, 0);
    let mut chosen: HashSet<u64> = HashSet::with_capacity(m * 2);
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m);
    while edges.len() < m {
        let a = rng.random_range(0..n as u32);
        let b = rng.random_range(0..n as u32);
        if a == b {
            continue;
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        let key = u as u64 * n as u64 + v as u64;
        if chosen.insert(key) {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Connected-component labeling.
///
/// Labels are assigned in ascending order of the lowest vertex id in each
/// component, so the labeling is canonical for a given graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    /// Component label per vertex.
    pub labels: Vec<u32>,
    /// Size of each component, indexed by label.
    pub sizes: Vec<usize>,
    /// Label of a largest component (ties broken by lowest label);
    /// `None` only for the empty graph.
    pub largest: Option<usize>,
}

impl ComponentLabeling {
    /// Vertex sets per component, indexed by label; each set ascending.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.sizes.len()];
        for (c, size) in self.sizes.iter().enumerate() {
            out[c].reserve(*size);
        }
        for (v, &label) in self.labels.iter().enumerate() {
            out[label as usize].push(v as u32);
        }
        out
    }

    /// Component sizes sorted descending (C1, C2, ...).
    pub fn sizes_descending(&self) -> Vec<usize> {
        let mut s = self.sizes.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }
}

/// BFS component labeling, O(n + m).
pub fn components(g: &Graph) -> ComponentLabeling {
    let n = g.n();
    const UNSET: u32 = u32::MAX;
    let mut labels = vec![UNSET; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for root in 0..n as u32 {
        if labels[root as usize] != UNSET {
            continue;
        }
        let label = sizes.len() as u32;
        let mut size = 0usize;
        labels[root as usize] = label;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &u in g.neighbors(v) {
                if labels[u as usize] == UNSET {
                    labels[u as usize] = label;
                    queue.push_back(u);
                }
            }
        }
        sizes.push(size);
    }
    let largest = sizes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(i, _)| i);
    ComponentLabeling {
        labels,
        sizes,
        largest,
    }
}

/// Writes the edge-list text format: first line `n m`, then one `u v` line
/// per edge with `u < v`, ASCII decimal, newline-terminated.
pub fn write_edge_list<W: Write>(g: &Graph, writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    writeln!(w, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the edge-list text format; errors carry 1-based line numbers.
pub fn read_edge_list<R: Read>(reader: R) -> Result<Graph> {
    let mut lines = BufReader::new(reader).lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty file, expected header \"n m\"".into(),
            })
        }
    };
    let mut it = header.split_ascii_whitespace();
    let parse_usize = |tok: Option<&str>, what: &str| -> Result<usize> {
        tok.ok_or_else(|| Error::Parse {
            line: 1,
            msg: format!("missing {what} in header"),
        })?
        .parse::<usize>()
        .map_err(|_| Error::Parse {
            line: 1,
            msg: format!("invalid {what} in header"),
        })
    };
    let n = parse_usize(it.next(), "vertex count")?;
    let m = parse_usize(it.next(), "edge count")?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: 1,
            msg: "trailing tokens in header".into(),
        });
    }
    let mut edges = Vec::with_capacity(m);
    let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(m * 2);
    for lineno in 2..2 + m {
        let line = match lines.next() {
            Some(line) => line?,
            None => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected {m} edge lines, file ended early"),
                })
            }
        };
        let mut it = line.split_ascii_whitespace();
        let u: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse {
                line: lineno,
                msg: "malformed edge line".into(),
            })?;
        let v: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse {
                line: lineno,
                msg: "malformed edge line".into(),
            })?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                msg: "trailing tokens on edge line".into(),
            });
        }
        if u >= v {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("edge ({u}, {v}) must satisfy u < v"),
            });
        }
        if v as usize >= n {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("vertex out of range: {v} >= {n}"),
            });
        }
        if !seen.insert((u, v)) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("duplicate edge ({u}, {v})"),
            });
        }
        edges.push((u, v));
    }
    for line in lines {
        let line = line?;
        if !line.trim().is_empty() {
            return Err(Error::Parse {
                line: 2 + m,
                msg: "trailing content after last edge".into(),
            });
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn save_edge_list<P: AsRef<Path>>(g: &Graph, path: P) -> Result<()> {
    write_edge_list(g, File::create(path)?)
}

pub fn load_edge_list<P: AsRef<Path>>(path: P) -> Result<Graph> {
    read_edge_list(File::open(path)?)
}
