//! Exact diameter of large sparse graphs: BFS distances, a fringe-pruning
//! (iFUB-style) component diameter with a double-sweep lower bound, and an
//! all-sources fallback for small components.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{components, Graph};
use crate::{Error, Result};

/// Sentinel distance for unreachable vertices.
pub const INFINITE: u32 = u32::MAX;

/// Components at or below this size skip iFUB and run all-sources BFS.
pub const ALL_BFS_THRESHOLD: usize = 256;

/// Which component-diameter algorithm a report was produced with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    /// Double sweep + descending-level eccentricity scan; exact, usually a
    /// small number of BFS passes. Falls back to all-sources BFS on
    /// components of at most [`ALL_BFS_THRESHOLD`] vertices.
    Ifub,
    /// All-sources BFS everywhere.
    AllBfs,
}

/// Exact diameter of a graph with per-component detail.
#[derive(Clone, Debug, Serialize)]
pub struct DiameterReport {
    /// Largest finite distance; 0 for graphs with no edges.
    pub diameter: u32,
    /// A pair realizing the diameter (`None` only for the empty graph).
    pub witness: Option<(u32, u32)>,
    /// (size, diameter) per component, in component-label order.
    pub per_component: Vec<(usize, u32)>,
    pub algorithm: Algorithm,
    /// Number of BFS passes performed (telemetry).
    pub bfs_count: usize,
}

/// Reusable BFS scratch so repeated traversals do not reallocate or clear
/// whole n-sized arrays.
struct BfsScratch {
    dist: Vec<u32>,
    order: Vec<u32>,
}

impl BfsScratch {
    fn new(n: usize) -> Self {
        BfsScratch {
            dist: vec![INFINITE; n],
            order: Vec::new(),
        }
    }

    /// BFS from `source`; returns (eccentricity, farthest vertex with the
    /// lowest id). Distances stay valid in `dist` until `reset` is called.
    fn run(&mut self, g: &Graph, source: u32) -> (u32, u32) {
        self.order.clear();
        self.dist[source as usize] = 0;
        self.order.push(source);
        let mut head = 0usize;
        let mut ecc = 0u32;
        let mut far = source;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            let dv = self.dist[v as usize];
            if dv > ecc || (dv == ecc && v < far) {
                ecc = dv;
                far = v;
            }
            for &u in g.neighbors(v) {
                if self.dist[u as usize] == INFINITE {
                    self.dist[u as usize] = dv + 1;
                    self.order.push(u);
                }
            }
        }
        (ecc, far)
    }

    fn reset(&mut self) {
        for &v in &self.order {
            self.dist[v as usize] = INFINITE;
        }
        self.order.clear();
    }
}

/// BFS distances from `source`; unreachable vertices are [`INFINITE`].
pub fn sssp_distances(g: &Graph, source: u32) -> Result<Vec<u32>> {
    if source as usize >= g.n() {
        return Err(Error::Parameter(format!(
            "source {source} out of range for n = {}",
            g.n()
        )));
    }
    let mut dist = vec![INFINITE; g.n()];
    let mut queue = VecDeque::new();
    dist[source as usize] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v as usize];
        for &u in g.neighbors(v) {
            if dist[u as usize] == INFINITE {
                dist[u as usize] = dv + 1;
                queue.push_back(u);
            }
        }
    }
    Ok(dist)
}

/// Larger (diameter, witness) candidate, with deterministic tie-breaking on
/// the lexicographically smallest witness pair.
fn better(a: (u32, (u32, u32)), b: (u32, (u32, u32))) -> (u32, (u32, u32)) {
    if (b.0, std::cmp::Reverse(b.1)) > (a.0, std::cmp::Reverse(a.1)) {
        b
    } else {
        a
    }
}

fn canonical_pair(a: u32, b: u32) -> (u32, u32) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// All-sources BFS diameter of one connected component, parallel over
/// sources with an associative, deterministic max-reduction.
fn all_bfs_diameter(g: &Graph, comp: &[u32]) -> (u32, (u32, u32), usize) {
    let best = comp
        .par_iter()
        .map_init(
            || BfsScratch::new(g.n()),
            |scratch, &v| {
                let (ecc, far) = scratch.run(g, v);
                scratch.reset();
                (ecc, canonical_pair(v, far))
            },
        )
        .reduce(|| (0u32, (u32::MAX, u32::MAX)), better);
    (best.0, best.1, comp.len())
}

/// iFUB-style exact diameter of one connected component.
///
/// Double sweep: BFS from the lowest-id vertex to find a far vertex `a`,
/// BFS from `a` to find `b` (lower-bounding the diameter), root at the
/// midpoint of the a-b path. Then scan root levels downward, computing true
/// eccentricities; any vertex in levels <= i pairs at distance <= 2i, so the
/// scan stops as soon as the lower bound reaches 2i.
fn ifub_diameter(g: &Graph, comp: &[u32]) -> (u32, (u32, u32), usize) {
    let mut scratch = BfsScratch::new(g.n());
    let mut bfs_count = 0usize;

    let start = comp[0];
    let (_, a) = scratch.run(g, start);
    scratch.reset();
    bfs_count += 1;

    // BFS from a with parents to extract the a-b midpoint.
    let mut parent: Vec<u32> = vec![u32::MAX; g.n()];
    scratch.order.clear();
    scratch.dist[a as usize] = 0;
    scratch.order.push(a);
    let mut head = 0usize;
    let mut ecc_a = 0u32;
    let mut b = a;
    while head < scratch.order.len() {
        let v = scratch.order[head];
        head += 1;
        let dv = scratch.dist[v as usize];
        if dv > ecc_a || (dv == ecc_a && v < b) {
            ecc_a = dv;
            b = v;
        }
        for &u in g.neighbors(v) {
            if scratch.dist[u as usize] == INFINITE {
                scratch.dist[u as usize] = dv + 1;
                parent[u as usize] = v;
                scratch.order.push(u);
            }
        }
    }
    bfs_count += 1;
    let mut lb = ecc_a;
    let mut witness = canonical_pair(a, b);
    let mut mid = b;
    for _ in 0..(ecc_a / 2) {
        mid = parent[mid as usize];
    }
    scratch.reset();

    // Root BFS: level structure from the midpoint.
    let (height, far) = scratch.run(g, mid);
    bfs_count += 1;
    (lb, witness) = better((lb, witness), (height, canonical_pair(mid, far)));
    let mut levels: Vec<Vec<u32>> = vec![Vec::new(); height as usize + 1];
    for &v in &scratch.order {
        levels[scratch.dist[v as usize] as usize].push(v);
    }
    scratch.reset();
    for level in &mut levels {
        level.sort_unstable();
    }

    // Descending-level eccentricity scan.
    let mut eff = BfsScratch::new(g.n());
    'outer: for i in (1..=height as usize).rev() {
        if lb >= 2 * i as u32 {
            break;
        }
        for &v in &levels[i] {
            let (ecc, far) = eff.run(g, v);
            eff.reset();
            bfs_count += 1;
            (lb, witness) = better((lb, witness), (ecc, canonical_pair(v, far)));
            if lb >= 2 * i as u32 {
                break 'outer;
            }
        }
    }
    (lb, witness, bfs_count)
}

/// Exact diameter of one connected component given its vertex set.
///
/// Errors if the vertices do not form a single connected component.
pub fn component_diameter(g: &Graph, comp: &[u32]) -> Result<(u32, (u32, u32))> {
    let (d, w, _) = component_diameter_counted(g, comp, Algorithm::Ifub)?;
    Ok((d, w))
}

fn component_diameter_counted(
    g: &Graph,
    comp: &[u32],
    algorithm: Algorithm,
) -> Result<(u32, (u32, u32), usize)> {
    if comp.is_empty() {
        return Err(Error::Contract("empty vertex set".into()));
    }
    for &v in comp {
        if v as usize >= g.n() {
            return Err(Error::Contract(format!("vertex {v} out of range")));
        }
    }
    // Connectivity check: one BFS from comp[0] must reach exactly comp.
    let dist = sssp_distances(g, comp[0])?;
    let reached = dist.iter().filter(|&&d| d != INFINITE).count();
    if reached != comp.len() || comp.iter().any(|&v| dist[v as usize] == INFINITE) {
        return Err(Error::Contract(
            "vertex set is not a single connected component".into(),
        ));
    }
    let (d, w, extra) = match algorithm {
        Algorithm::AllBfs => all_bfs_diameter(g, comp),
        Algorithm::Ifub => {
            if comp.len() <= ALL_BFS_THRESHOLD {
                all_bfs_diameter(g, comp)
            } else {
                ifub_diameter(g, comp)
            }
        }
    };
    Ok((d, w, extra + 1))
}

/// Exact diameter of the whole graph: the maximum over components of the
/// component diameter. Edgeless graphs have diameter 0 (only d(x, x) = 0 is
/// finite).
pub fn graph_diameter(g: &Graph) -> DiameterReport {
    graph_diameter_with(g, Algorithm::Ifub)
}

pub fn graph_diameter_with(g: &Graph, algorithm: Algorithm) -> DiameterReport {
    let labeling = components(g);
    let members = labeling.members();
    let mut per_component = Vec::with_capacity(members.len());
    let mut best: Option<(u32, (u32, u32))> = None;
    let mut bfs_count = 0usize;
    for comp in &members {
        if comp.len() == 1 {
            per_component.push((1, 0));
            if best.is_none() {
                best = Some((0, (comp[0], comp[0])));
            }
            continue;
        }
        let (d, w, passes) = component_diameter_counted(g, comp, algorithm)
            .expect("component labeling produced a connected set");
        bfs_count += passes;
        per_component.push((comp.len(), d));
        best = Some(match best {
            None => (d, w),
            Some(cur) => better(cur, (d, w)),
        });
    }
    DiameterReport {
        diameter: best.map(|(d, _)| d).unwrap_or(0),
        witness: best.map(|(_, w)| w),
        per_component,
        algorithm,
        bfs_count,
    }
}
