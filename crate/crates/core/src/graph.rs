//! The distance-constraint graph over workspaces.
//!
//! Nodes are workspace ids; an edge joins every pair of workspaces
//! strictly closer than the social distance `d`, weighted by that
//! distance. A pair exactly at `d` is safe. All workspaces appear as
//! nodes, so isolated (always allocatable) workspaces survive into the
//! solvers as singleton components.
//!
//! Everything here is deterministic: node order, component order, BFS
//! traversal and spanning trees are all fixed by ascending id.

use crate::ingest::Floorplan;
use crate::par;
use serde::Serialize;
use std::collections::BTreeMap;

/// Weighted conflict graph for one social distance.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintGraph {
    d: f64,
    /// Node ids in ascending order; a node's index is its handle.
    ids: Vec<String>,
    /// Adjacency lists in ascending neighbor order, with edge weights.
    adj: Vec<Vec<(u32, f64)>>,
    /// Edges as (i, k, w) with i < k, sorted lexicographically.
    edges: Vec<(u32, u32, f64)>,
}

/// Fundamental cycles of a spanning forest; odd members certify that
/// the graph is not bipartite.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleBasis {
    pub cycles: Vec<Vec<String>>,
}

impl CycleBasis {
    /// Cycles with an odd number of nodes.
    pub fn odd_cycles(&self) -> Vec<Vec<String>> {
        self.cycles
            .iter()
            .filter(|c| c.len() % 2 == 1)
            .cloned()
            .collect()
    }
}

/// A valid two-coloring: no edge inside `u` or inside `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bicoloring {
    pub u: Vec<String>,
    pub v: Vec<String>,
}

/// Witness returned when a graph is not bipartite: one odd cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct OddCycle(pub Vec<String>);

impl ConstraintGraph {
    /// Builds the constraint graph for floorplan `fp` at social
    /// distance `d`. Uses spatial bucketing (and the `parallel` feature
    /// when enabled); the result always equals the brute-force
    /// all-pairs construction.
    pub fn build(fp: &Floorplan, d: f64) -> Self {
        Self::build_inner(fp, d, true)
    }

    /// Sequential all-pairs construction. Primarily a baseline for
    /// benchmarks and equivalence tests.
    pub fn build_seq(fp: &Floorplan, d: f64) -> Self {
        Self::build_inner(fp, d, false)
    }

    fn build_inner(fp: &Floorplan, d: f64, bucketed: bool) -> Self {
        assert!(d > 0.0, "social distance must be positive");
        let mut order: Vec<usize> = (0..fp.workspaces.len()).collect();
        order.sort_by(|&a, &b| fp.workspaces[a].id.cmp(&fp.workspaces[b].id));
        let ids: Vec<String> = order.iter().map(|&i| fp.workspaces[i].id.clone()).collect();
        let centroids: Vec<_> = order.iter().map(|&i| fp.workspaces[i].centroid).collect();

        let n = ids.len();
        let per_node: Vec<Vec<(u32, f64)>> = if bucketed && n > 64 {
            // Hash points into cells of side d; any conflicting pair
            // lives in the same or an adjacent cell.
            let cell = |p: &crate::geometry::Point| {
                ((p.x / d).floor() as i64, (p.y / d).floor() as i64)
            };
            let mut buckets: BTreeMap<(i64, i64), Vec<u32>> = BTreeMap::new();
            for (i, p) in centroids.iter().enumerate() {
                buckets.entry(cell(p)).or_default().push(i as u32);
            }
            par::map_range(n, |i| {
                let p = &centroids[i];
                let (cx, cy) = cell(p);
                let mut found = Vec::new();
                for ox in -1..=1 {
                    for oy in -1..=1 {
                        if let Some(members) = buckets.get(&(cx + ox, cy + oy)) {
                            for &k in members {
                                if (k as usize) > i {
                                    let w = p.distance(&centroids[k as usize]);
                                    if w < d {
                                        found.push((k, w));
                                    }
                                }
                            }
                        }
                    }
                }
                found.sort_by(|a, b| a.0.cmp(&b.0));
                found
            })
        } else {
            (0..n)
                .map(|i| {
                    (i + 1..n)
                        .filter_map(|k| {
                            let w = centroids[i].distance(&centroids[k]);
                            (w < d).then_some((k as u32, w))
                        })
                        .collect()
                })
                .collect()
        };

        let mut edges = Vec::new();
        for (i, list) in per_node.iter().enumerate() {
            for &(k, w) in list {
                edges.push((i as u32, k, w));
            }
        }
        Self::from_indexed(d, ids, edges)
    }

    /// Builds a graph directly from ids and weighted id pairs. Intended
    /// for fixtures and debug imports; panics on contract violations
    /// (unknown endpoint, self loop, weight >= d).
    pub fn from_edges(d: f64, ids: &[&str], edges: &[(&str, &str, f64)]) -> Self {
        let mut sorted: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len(), "duplicate node id");
        let index: BTreeMap<&str, u32> = sorted
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u32))
            .collect();
        let mut indexed = Vec::with_capacity(edges.len());
        for &(a, b, w) in edges {
            let (ia, ib) = (index[a], index[b]);
            assert!(ia != ib, "self loop on {a}");
            assert!(w < d, "edge weight {w} not under social distance {d}");
            indexed.push((ia.min(ib), ia.max(ib), w));
        }
        indexed.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        Self::from_indexed(d, sorted, indexed)
    }

    fn from_indexed(d: f64, ids: Vec<String>, edges: Vec<(u32, u32, f64)>) -> Self {
        let mut adj = vec![Vec::new(); ids.len()];
        for &(i, k, w) in &edges {
            adj[i as usize].push((k, w));
            adj[k as usize].push((i, w));
        }
        for list in &mut adj {
            list.sort_by(|a, b| a.0.cmp(&b.0));
        }
        Self { d, ids, adj, edges }
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, idx: usize) -> &str {
        &self.ids[idx]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|x| x.as_str().cmp(id)).ok()
    }

    pub fn neighbors(&self, idx: usize) -> &[(u32, f64)] {
        &self.adj[idx]
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.adj[idx].len()
    }

    pub fn edges(&self) -> &[(u32, u32, f64)] {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, k: usize) -> bool {
        self.adj[i].binary_search_by(|&(n, _)| n.cmp(&(k as u32))).is_ok()
    }

    /// Splits into connected components, each a self-contained graph.
    /// Components are ordered by their smallest contained id; isolated
    /// nodes become singleton components.
    pub fn components(&self) -> Vec<ConstraintGraph> {
        let n = self.node_count();
        let mut component = vec![usize::MAX; n];
        let mut count = 0;
        for root in 0..n {
            if component[root] != usize::MAX {
                continue;
            }
            let label = count;
            count += 1;
            let mut queue = std::collections::VecDeque::from([root]);
            component[root] = label;
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adj[u] {
                    if component[v as usize] == usize::MAX {
                        component[v as usize] = label;
                        queue.push_back(v as usize);
                    }
                }
            }
        }
        // Scanning roots in ascending index order already yields labels
        // ordered by smallest contained id.
        let mut members = vec![Vec::new(); count];
        for (idx, &label) in component.iter().enumerate() {
            members[label].push(idx);
        }
        members
            .into_iter()
            .map(|nodes| self.subgraph(&nodes))
            .collect()
    }

    /// Induced subgraph on `nodes` (ascending node indices).
    pub fn subgraph(&self, nodes: &[usize]) -> ConstraintGraph {
        let mut remap = vec![u32::MAX; self.node_count()];
        for (new, &old) in nodes.iter().enumerate() {
            remap[old] = new as u32;
        }
        let ids = nodes.iter().map(|&i| self.ids[i].clone()).collect();
        let mut edges = Vec::new();
        for &(i, k, w) in &self.edges {
            let (ri, rk) = (remap[i as usize], remap[k as usize]);
            if ri != u32::MAX && rk != u32::MAX {
                edges.push((ri, rk, w));
            }
        }
        ConstraintGraph::from_indexed(self.d, ids, edges)
    }

    /// Returns the graph with the given node ids removed.
    pub fn without_ids(&self, removed: &[String]) -> ConstraintGraph {
        let keep: Vec<usize> = (0..self.node_count())
            .filter(|&i| !removed.contains(&self.ids[i]))
            .collect();
        self.subgraph(&keep)
    }

    /// BFS spanning forest; returns (parent, depth, order) where roots
    /// have parent == own index. Deterministic: roots and neighbors are
    /// visited in ascending order.
    fn spanning_forest(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.node_count();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for root in 0..n {
            if parent[root] != usize::MAX {
                continue;
            }
            parent[root] = root;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adj[u] {
                    let v = v as usize;
                    if parent[v] == usize::MAX {
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        (parent, depth)
    }

    /// The cycle joining tree paths of a non-tree edge (u, v):
    /// `[u, .., lca, .., v]`, closed by the edge itself.
    fn fundamental_cycle(
        &self,
        parent: &[usize],
        depth: &[usize],
        u: usize,
        v: usize,
    ) -> Vec<String> {
        let (mut a, mut b) = (u, v);
        let mut up_a = vec![a];
        let mut up_b = vec![b];
        while depth[a] > depth[b] {
            a = parent[a];
            up_a.push(a);
        }
        while depth[b] > depth[a] {
            b = parent[b];
            up_b.push(b);
        }
        while a != b {
            a = parent[a];
            b = parent[b];
            up_a.push(a);
            up_b.push(b);
        }
        // up_a ends at the lca; append the b-side path in reverse,
        // excluding the shared lca.
        up_b.pop();
        up_a.extend(up_b.into_iter().rev());
        up_a.into_iter().map(|i| self.ids[i].clone()).collect()
    }

    /// Fundamental cycles of the BFS spanning forest. The basis size is
    /// always |E| - |V| + (number of components).
    pub fn cycle_basis(&self) -> CycleBasis {
        let (parent, depth) = self.spanning_forest();
        let mut cycles = Vec::new();
        for &(i, k, _) in &self.edges {
            let (u, v) = (i as usize, k as usize);
            if parent[u] == v || parent[v] == u {
                continue; // tree edge
            }
            cycles.push(self.fundamental_cycle(&parent, &depth, u, v));
        }
        CycleBasis { cycles }
    }

    /// Breadth-first two-coloring from each component's smallest id.
    /// On failure returns a witness odd cycle as a value.
    pub fn bicolor(&self) -> Result<Bicoloring, OddCycle> {
        let n = self.node_count();
        let (parent, depth) = self.spanning_forest();
        // BFS layers two-color the forest; any edge within a layer
        // parity closes an odd cycle.
        for &(i, k, _) in &self.edges {
            let (u, v) = (i as usize, k as usize);
            if depth[u] % 2 == depth[v] % 2 {
                return Err(OddCycle(self.fundamental_cycle(&parent, &depth, u, v)));
            }
        }
        let mut coloring = Bicoloring {
            u: Vec::new(),
            v: Vec::new(),
        };
        for idx in 0..n {
            if depth[idx] % 2 == 0 {
                coloring.u.push(self.ids[idx].clone());
            } else {
                coloring.v.push(self.ids[idx].clone());
            }
        }
        Ok(coloring)
    }

    /// Debug export: `{d, nodes, edges: [[i, k, w]]}`.
    pub fn to_debug_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            d: f64,
            nodes: &'a [String],
            edges: Vec<(&'a str, &'a str, f64)>,
        }
        let doc = Doc {
            d: self.d,
            nodes: &self.ids,
            edges: self
                .edges
                .iter()
                .map(|&(i, k, w)| (self.ids[i as usize].as_str(), self.ids[k as usize].as_str(), w))
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("graph serialization");
        out.push('\n');
        out
    }
}
