//! 2-core extraction, kernel construction, and attached-tree statistics:
//! the structural objects behind the tree term of the diameter.

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::{Error, Result};

/// The 2-core: the maximal subgraph with minimum degree 2.
#[derive(Clone, Debug)]
pub struct TwoCore {
    /// Membership flag per vertex of the original graph.
    pub members: Vec<bool>,
    /// The induced subgraph on the members, relabeled 0..core_n in ascending
    /// original-id order.
    pub graph: Graph,
    /// Core id -> original vertex id.
    pub vertex_map: Vec<u32>,
    /// Original vertex id -> core id, or `u32::MAX` for non-members.
    pub core_index: Vec<u32>,
}

/// One contracted chain of the kernel multigraph. Endpoints are original
/// vertex ids of degree >= 3 in the core (`u <= v`; `u == v` for loops);
/// `chain_len` is the number of core edges on the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelEdge {
    pub u: u32,
    pub v: u32,
    pub chain_len: usize,
}

/// The kernel: the multigraph obtained from the 2-core by suppressing
/// degree-2 vertices. Cycles containing no degree->=3 vertex cannot be
/// attached to any kernel vertex and are reported separately.
#[derive(Clone, Debug, Default)]
pub struct Kernel {
    /// Original ids of the kernel vertices (core vertices of degree >= 3),
    /// ascending.
    pub vertices: Vec<u32>,
    /// Multigraph edges with chain lengths; parallel edges and loops allowed.
    pub edges: Vec<KernelEdge>,
    /// Lengths of the isolated 2-core cycles.
    pub cycle_lengths: Vec<usize>,
}

impl Kernel {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn isolated_cycles(&self) -> usize {
        self.cycle_lengths.len()
    }
}

/// A tree hanging off the 2-core, rooted at a core vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachedTree {
    /// Original id of the core vertex the tree hangs from.
    pub root: u32,
    /// Number of non-core vertices in the tree.
    pub size: usize,
    /// Maximum distance from the root to a tree vertex (root at distance 0).
    pub height: u32,
}

/// Iterative peeling of degree-<=1 vertices to a fixed point, O(n + m).
/// Queue processed in ascending id order for reproducibility.
pub fn two_core(g: &Graph) -> TwoCore {
    let n = g.n();
    let mut deg: Vec<u32> = (0..n as u32).map(|v| g.degree(v) as u32).collect();
    let mut removed = vec![false; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if deg[v] <= 1 {
            removed[v] = true;
            queue.push_back(v as u32);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if !removed[u as usize] {
                deg[u as usize] -= 1;
                if deg[u as usize] <= 1 {
                    removed[u as usize] = true;
                    queue.push_back(u);
                }
            }
        }
    }

    let members: Vec<bool> = removed.iter().map(|&r| !r).collect();
    let mut vertex_map = Vec::new();
    let mut core_index = vec![u32::MAX; n];
    for v in 0..n {
        if members[v] {
            core_index[v] = vertex_map.len() as u32;
            vertex_map.push(v as u32);
        }
    }
    let mut edges = Vec::new();
    for &v in &vertex_map {
        for &u in g.neighbors(v) {
            if u > v && members[u as usize] {
                edges.push((core_index[v as usize], core_index[u as usize]));
            }
        }
    }
    let graph = Graph::from_edges(vertex_map.len(), &edges)
        .expect("induced subgraph of a simple graph is simple");
    TwoCore {
        members,
        graph,
        vertex_map,
        core_index,
    }
}

/// Contracts maximal chains of degree-2 core vertices into kernel edges.
pub fn kernel(core: &TwoCore) -> Kernel {
    let cg = &core.graph;
    let cn = cg.n();
    // Incidence lists with edge ids so each chain is walked exactly once.
    let mut inc: Vec<Vec<(u32, u32)>> = vec![Vec::new(); cn];
    for (eid, (u, v)) in cg.edges().enumerate() {
        inc[u as usize].push((v, eid as u32));
        inc[v as usize].push((u, eid as u32));
    }
    let mut used = vec![false; cg.m()];
    let mut kernel = Kernel::default();

    let is_kernel = |v: usize| inc[v].len() >= 3;
    for v in 0..cn {
        if is_kernel(v) {
            kernel.vertices.push(core.vertex_map[v]);
        }
    }

    // Chains between kernel vertices (including loops back to the start).
    for v in 0..cn {
        if !is_kernel(v) {
            continue;
        }
        for slot in 0..inc[v].len() {
            let (first, e0) = inc[v][slot];
            if used[e0 as usize] {
                continue;
            }
            used[e0 as usize] = true;
            let mut incoming = e0;
            let mut cur = first;
            let mut len = 1usize;
            while inc[cur as usize].len() == 2 {
                let (a, ea) = inc[cur as usize][0];
                let (b, eb) = inc[cur as usize][1];
                let (next, en) = if ea == incoming { (b, eb) } else { (a, ea) };
                used[en as usize] = true;
                incoming = en;
                cur = next;
                len += 1;
            }
            let (u_orig, v_orig) = {
                let a = core.vertex_map[v];
                let b = core.vertex_map[cur as usize];
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            };
            kernel.edges.push(KernelEdge {
                u: u_orig,
                v: v_orig,
                chain_len: len,
            });
        }
    }

    // Remaining unused edges lie on cycles of degree-2 vertices.
    for v in 0..cn as u32 {
        if inc[v as usize].len() != 2 {
            continue;
        }
        let (first, e0) = inc[v as usize][0];
        if used[e0 as usize] {
            continue;
        }
        used[e0 as usize] = true;
        let mut incoming = e0;
        let mut cur = first;
        let mut len = 1usize;
        while cur != v {
            let (a, ea) = inc[cur as usize][0];
            let (b, eb) = inc[cur as usize][1];
            let (next, en) = if ea == incoming { (b, eb) } else { (a, ea) };
            used[en as usize] = true;
            incoming = en;
            cur = next;
            len += 1;
        }
        kernel.cycle_lengths.push(len);
    }

    kernel
}

/// The forests of non-core vertices grouped into trees rooted at core
/// vertices; sizes and exact heights.
///
/// Tree components with no core vertex at all are not attached to anything
/// and do not appear.
pub fn attached_trees(g: &Graph, core: &TwoCore) -> Result<Vec<AttachedTree>> {
    if core.members.len() != g.n() {
        return Err(Error::Contract(
            "core was not computed from this graph (vertex count mismatch)".into(),
        ));
    }
    let n = g.n();
    const UNSEEN: u32 = u32::MAX;
    let mut root = vec![UNSEEN; n];
    let mut depth = vec![0u32; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if core.members[v] {
            root[v] = v as u32;
            queue.push_back(v as u32);
        }
    }
    // Accumulators keyed by core root, created lazily in discovery order.
    let mut sizes: Vec<(u32, usize, u32)> = Vec::new(); // (root, size, height)
    let mut slot = vec![u32::MAX; n];
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if core.members[u as usize] || root[u as usize] != UNSEEN {
                continue;
            }
            let r = root[v as usize];
            root[u as usize] = r;
            depth[u as usize] = depth[v as usize] + 1;
            let s = if slot[r as usize] == u32::MAX {
                slot[r as usize] = sizes.len() as u32;
                sizes.push((r, 0, 0));
                slot[r as usize]
            } else {
                slot[r as usize]
            };
            let entry = &mut sizes[s as usize];
            entry.1 += 1;
            entry.2 = entry.2.max(depth[u as usize]);
            queue.push_back(u);
        }
    }
    let mut trees: Vec<AttachedTree> = sizes
        .into_iter()
        .map(|(root, size, height)| AttachedTree { root, size, height })
        .collect();
    trees.sort_unstable_by_key(|t| t.root);
    Ok(trees)
}
