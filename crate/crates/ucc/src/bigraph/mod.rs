//! Bipartite graphs with bitset adjacency in both directions, exact
//! enumeration of maximal stable sets, and rare-vertex detection.
//!
//! Graphs are immutable after construction and safe to share across
//! threads. Counts are exposed as arbitrary-precision integers so that
//! products over components can never overflow silently; enumeration
//! itself is capped and its counts fit in `u64`.

mod enumerate;
pub mod format;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;

pub use enumerate::{enumerate_mss_brute, StableSet, StableSetCollection};

/// Arbitrary-precision count of maximal stable sets.
pub type MssCount = num_bigint::BigUint;

/// Default cap on `nX + nY` for enumeration.
pub const VERTEX_CAP_DEFAULT: usize = 64;
/// Default cap on the number of enumerated maximal stable sets.
pub const MSS_CAP_DEFAULT: usize = 1 << 24;

/// Enumeration limits; both default caps can be raised by callers.
#[derive(Debug, Clone, Copy)]
pub struct EnumCaps {
    pub max_vertices: usize,
    pub max_sets: usize,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            max_vertices: VERTEX_CAP_DEFAULT,
            max_sets: MSS_CAP_DEFAULT,
        }
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("{side:?} index {index} out of range for class size {size}")]
    IndexOutOfRange { side: Side, index: usize, size: usize },
    #[error("graph has {vertices} vertices, above the enumeration cap {cap}")]
    VertexCapExceeded { vertices: usize, cap: usize },
    #[error("enumeration exceeded the cap of {cap} maximal stable sets")]
    OutputCapExceeded { cap: usize },
    #[error("constraint includes and excludes {vertex:?}")]
    ConstraintConflict { vertex: VertexRef },
}

impl GraphError {
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            GraphError::VertexCapExceeded { .. } | GraphError::OutputCapExceeded { .. }
        )
    }
}

/// Bipartite class tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// A vertex identified by class and 0-based index within the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexRef {
    pub side: Side,
    pub index: usize,
}

impl VertexRef {
    pub fn x(index: usize) -> Self {
        VertexRef { side: Side::X, index }
    }

    pub fn y(index: usize) -> Self {
        VertexRef { side: Side::Y, index }
    }
}

impl std::fmt::Display for VertexRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.side {
            Side::X => write!(f, "x{}", self.index),
            Side::Y => write!(f, "y{}", self.index),
        }
    }
}

/// Outcome of the graph form of the conjecture on one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FranklVerdict {
    /// Both classes contain a rare vertex.
    Holds,
    /// Some class has no rare vertex: a counterexample candidate.
    Fails,
    /// The graph has no edge; the conjecture does not apply.
    NoEdges,
}

/// Include/exclude constraint on maximal stable sets.
#[derive(Debug, Clone, Default)]
pub struct CountConstraint {
    pub include: Vec<VertexRef>,
    pub exclude: Vec<VertexRef>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_x: usize,
    n_y: usize,
    adj_xy: Vec<BitSet>,
    adj_yx: Vec<BitSet>,
}

impl BipartiteGraph {
    /// Edgeless graph with the given class sizes.
    pub fn new(n_x: usize, n_y: usize) -> Self {
        BipartiteGraph {
            n_x,
            n_y,
            adj_xy: vec![BitSet::new(n_y); n_x],
            adj_yx: vec![BitSet::new(n_x); n_y],
        }
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edges(
        n_x: usize,
        n_y: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let mut g = BipartiteGraph::new(n_x, n_y);
        for &(x, y) in edges {
            g.add_edge(x, y)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, x: usize, y: usize) -> Result<(), GraphError> {
        if x >= self.n_x {
            return Err(GraphError::IndexOutOfRange {
                side: Side::X,
                index: x,
                size: self.n_x,
            });
        }
        if y >= self.n_y {
            return Err(GraphError::IndexOutOfRange {
                side: Side::Y,
                index: y,
                size: self.n_y,
            });
        }
        self.adj_xy[x].insert(y);
        self.adj_yx[y].insert(x);
        Ok(())
    }

    #[inline]
    pub fn n_x(&self) -> usize {
        self.n_x
    }

    #[inline]
    pub fn n_y(&self) -> usize {
        self.n_y
    }

    #[inline]
    pub fn total_vertices(&self) -> usize {
        self.n_x + self.n_y
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.n_x && y < self.n_y && self.adj_xy[x].contains(y)
    }

    pub fn has_any_edge(&self) -> bool {
        self.adj_xy.iter().any(|row| !row.is_empty())
    }

    pub fn edge_count(&self) -> usize {
        self.adj_xy.iter().map(|row| row.count()).sum()
    }

    /// Edges sorted by (x, y).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for x in 0..self.n_x {
            for y in self.adj_xy[x].ones() {
                out.push((x, y));
            }
        }
        out
    }

    /// Neighbor bitset of an X vertex (over Y indices).
    pub fn neighbors_of_x(&self, x: usize) -> &BitSet {
        &self.adj_xy[x]
    }

    /// Neighbor bitset of a Y vertex (over X indices).
    pub fn neighbors_of_y(&self, y: usize) -> &BitSet {
        &self.adj_yx[y]
    }

    pub fn check_vertex(&self, v: VertexRef) -> Result<(), GraphError> {
        let size = match v.side {
            Side::X => self.n_x,
            Side::Y => self.n_y,
        };
        if v.index >= size {
            return Err(GraphError::IndexOutOfRange {
                side: v.side,
                index: v.index,
                size,
            });
        }
        Ok(())
    }

    pub fn degree(&self, v: VertexRef) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(match v.side {
            Side::X => self.adj_xy[v.index].count(),
            Side::Y => self.adj_yx[v.index].count(),
        })
    }

    pub fn is_pendant(&self, v: VertexRef) -> Result<bool, GraphError> {
        Ok(self.degree(v)? == 1)
    }

    /// Neighbors of `v` as a bitset over the opposite class.
    pub fn neighbors(&self, v: VertexRef) -> Result<BitSet, GraphError> {
        self.check_vertex(v)?;
        Ok(match v.side {
            Side::X => self.adj_xy[v.index].clone(),
            Side::Y => self.adj_yx[v.index].clone(),
        })
    }

    /// All degree-1 vertices, X class first, ascending.
    pub fn pendant_vertices(&self) -> Vec<VertexRef> {
        let mut out = Vec::new();
        for x in 0..self.n_x {
            if self.adj_xy[x].count() == 1 {
                out.push(VertexRef::x(x));
            }
        }
        for y in 0..self.n_y {
            if self.adj_yx[y].count() == 1 {
                out.push(VertexRef::y(y));
            }
        }
        out
    }

    /// Swaps the two classes.
    pub fn flip(&self) -> BipartiteGraph {
        BipartiteGraph {
            n_x: self.n_y,
            n_y: self.n_x,
            adj_xy: self.adj_yx.clone(),
            adj_yx: self.adj_xy.clone(),
        }
    }

    /// True when the mirror adjacency arrays are transposes; useful in
    /// tests and after deserialization.
    pub fn mirror_consistent(&self) -> bool {
        for x in 0..self.n_x {
            for y in self.adj_xy[x].ones() {
                if !self.adj_yx[y].contains(x) {
                    return false;
                }
            }
        }
        for y in 0..self.n_y {
            for x in self.adj_yx[y].ones() {
                if !self.adj_xy[x].contains(y) {
                    return false;
                }
            }
        }
        true
    }

    /// Enumerates all maximal stable sets with default caps.
    pub fn enumerate_mss(&self) -> Result<StableSetCollection, GraphError> {
        self.enumerate_mss_capped(&EnumCaps::default())
    }

    pub fn enumerate_mss_capped(
        &self,
        caps: &EnumCaps,
    ) -> Result<StableSetCollection, GraphError> {
        enumerate::enumerate_mss(self, caps)
    }

    /// Number of maximal stable sets.
    pub fn w_total(&self) -> Result<MssCount, GraphError> {
        Ok(MssCount::from(self.enumerate_mss()?.len()))
    }

    /// Number of maximal stable sets containing `v`.
    pub fn w_of(&self, v: VertexRef) -> Result<MssCount, GraphError> {
        self.check_vertex(v)?;
        Ok(MssCount::from(self.enumerate_mss()?.w_of_u64(v)))
    }

    /// Number of maximal stable sets of this graph (maximality taken
    /// here, not in any subgraph) containing everything in `include`
    /// and nothing in `exclude`.
    pub fn w_constrained(&self, c: &CountConstraint) -> Result<MssCount, GraphError> {
        for v in &c.include {
            self.check_vertex(*v)?;
            if c.exclude.contains(v) {
                return Err(GraphError::ConstraintConflict { vertex: *v });
            }
        }
        for v in &c.exclude {
            self.check_vertex(*v)?;
        }
        let coll = self.enumerate_mss()?;
        let include_x = BitSet::from_indices(
            self.n_x,
            c.include.iter().filter(|v| v.side == Side::X).map(|v| v.index),
        );
        let include_y = BitSet::from_indices(
            self.n_y,
            c.include.iter().filter(|v| v.side == Side::Y).map(|v| v.index),
        );
        let exclude_x = BitSet::from_indices(
            self.n_x,
            c.exclude.iter().filter(|v| v.side == Side::X).map(|v| v.index),
        );
        let exclude_y = BitSet::from_indices(
            self.n_y,
            c.exclude.iter().filter(|v| v.side == Side::Y).map(|v| v.index),
        );
        Ok(MssCount::from(coll.count_matching(
            &include_x, &include_y, &exclude_x, &exclude_y,
        )))
    }

    /// Inclusive rareness: `2·w(v) <= w`. For even `w` a vertex can sit
    /// exactly on the threshold and is counted rare; the complementary
    /// abundance threshold is inclusive as well, so ties satisfy both.
    pub fn is_rare(&self, v: VertexRef) -> Result<bool, GraphError> {
        self.check_vertex(v)?;
        let coll = self.enumerate_mss()?;
        Ok(2 * coll.w_of_u64(v) <= coll.len() as u64)
    }

    /// Ascending rare-vertex index lists for the X and Y classes.
    pub fn rare_by_class(&self) -> Result<(Vec<usize>, Vec<usize>), GraphError> {
        let coll = self.enumerate_mss()?;
        Ok(rare_by_class_from(&coll))
    }

    /// Graph form of the conjecture: both classes must own a rare vertex.
    pub fn frankl_verdict(&self) -> Result<FranklVerdict, GraphError> {
        if !self.has_any_edge() {
            return Ok(FranklVerdict::NoEdges);
        }
        let (rx, ry) = self.rare_by_class()?;
        if rx.is_empty() || ry.is_empty() {
            Ok(FranklVerdict::Fails)
        } else {
            Ok(FranklVerdict::Holds)
        }
    }

    /// Connected components with their index remappings, in order of
    /// smallest contained vertex (X class scanned first). Isolated
    /// vertices form singleton components.
    pub fn components(&self) -> Vec<Subgraph> {
        let mut seen_x = vec![false; self.n_x];
        let mut seen_y = vec![false; self.n_y];
        let mut out = Vec::new();

        let mut queue: Vec<VertexRef> = Vec::new();
        let starts = (0..self.n_x)
            .map(VertexRef::x)
            .chain((0..self.n_y).map(VertexRef::y));
        for start in starts {
            let visited = match start.side {
                Side::X => &mut seen_x,
                Side::Y => &mut seen_y,
            };
            if visited[start.index] {
                continue;
            }
            visited[start.index] = true;
            queue.clear();
            queue.push(start);
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                match v.side {
                    Side::X => {
                        xs.push(v.index);
                        for y in self.adj_xy[v.index].ones() {
                            if !seen_y[y] {
                                seen_y[y] = true;
                                queue.push(VertexRef::y(y));
                            }
                        }
                    }
                    Side::Y => {
                        ys.push(v.index);
                        for x in self.adj_yx[v.index].ones() {
                            if !seen_x[x] {
                                seen_x[x] = true;
                                queue.push(VertexRef::x(x));
                            }
                        }
                    }
                }
            }
            xs.sort_unstable();
            ys.sort_unstable();
            out.push(self.subgraph_of(&xs, &ys));
        }
        out
    }

    /// Product of the component MSS counts; must equal `w_total`.
    pub fn w_via_components(&self) -> Result<MssCount, GraphError> {
        self.w_via_components_capped(&EnumCaps::default())
    }

    pub fn w_via_components_capped(&self, caps: &EnumCaps) -> Result<MssCount, GraphError> {
        let mut product = MssCount::from(1u32);
        for comp in self.components() {
            let w = comp.graph.enumerate_mss_capped(caps)?.len();
            product *= MssCount::from(w);
        }
        Ok(product)
    }

    /// Induced subgraph on the given (sorted, deduped) vertex index
    /// lists, with parent maps recorded.
    pub fn subgraph_of(&self, xs: &[usize], ys: &[usize]) -> Subgraph {
        let mut from_parent_x = vec![None; self.n_x];
        for (local, &parent) in xs.iter().enumerate() {
            from_parent_x[parent] = Some(local);
        }
        let mut from_parent_y = vec![None; self.n_y];
        for (local, &parent) in ys.iter().enumerate() {
            from_parent_y[parent] = Some(local);
        }
        let mut graph = BipartiteGraph::new(xs.len(), ys.len());
        for (lx, &px) in xs.iter().enumerate() {
            for py in self.adj_xy[px].ones() {
                if let Some(ly) = from_parent_y[py] {
                    graph.adj_xy[lx].insert(ly);
                    graph.adj_yx[ly].insert(lx);
                }
            }
        }
        Subgraph {
            graph,
            to_parent_x: xs.to_vec(),
            to_parent_y: ys.to_vec(),
            from_parent_x,
            from_parent_y,
        }
    }

    /// Subgraph on the endpoints of `edges` only, keeping just those
    /// edges. Every edge must exist in the graph.
    pub fn edge_subgraph(&self, edges: &[(usize, usize)]) -> Subgraph {
        let mut xs: Vec<usize> = Vec::new();
        let mut ys: Vec<usize> = Vec::new();
        for &(x, y) in edges {
            assert!(self.has_edge(x, y), "edge ({x},{y}) not in graph");
            xs.push(x);
            ys.push(y);
        }
        xs.sort_unstable();
        xs.dedup();
        ys.sort_unstable();
        ys.dedup();

        let mut from_parent_x = vec![None; self.n_x];
        for (local, &parent) in xs.iter().enumerate() {
            from_parent_x[parent] = Some(local);
        }
        let mut from_parent_y = vec![None; self.n_y];
        for (local, &parent) in ys.iter().enumerate() {
            from_parent_y[parent] = Some(local);
        }
        let mut graph = BipartiteGraph::new(xs.len(), ys.len());
        for &(x, y) in edges {
            let lx = from_parent_x[x].unwrap();
            let ly = from_parent_y[y].unwrap();
            graph.adj_xy[lx].insert(ly);
            graph.adj_yx[ly].insert(lx);
        }
        Subgraph {
            graph,
            to_parent_x: xs,
            to_parent_y: ys,
            from_parent_x,
            from_parent_y,
        }
    }

    /// Vertex deletion: all vertices except `removed` survive, even if
    /// they become isolated.
    pub fn delete_vertices(&self, removed: &[VertexRef]) -> Subgraph {
        let mut keep_x: Vec<usize> = (0..self.n_x).collect();
        let mut keep_y: Vec<usize> = (0..self.n_y).collect();
        for v in removed {
            match v.side {
                Side::X => keep_x.retain(|&i| i != v.index),
                Side::Y => keep_y.retain(|&i| i != v.index),
            }
        }
        self.subgraph_of(&keep_x, &keep_y)
    }
}

pub(crate) fn rare_by_class_from(coll: &StableSetCollection) -> (Vec<usize>, Vec<usize>) {
    let w = coll.len() as u64;
    let rx = (0..coll.n_x())
        .filter(|&i| 2 * coll.w_of_u64(VertexRef::x(i)) <= w)
        .collect();
    let ry = (0..coll.n_y())
        .filter(|&i| 2 * coll.w_of_u64(VertexRef::y(i)) <= w)
        .collect();
    (rx, ry)
}

/// A subgraph together with maps between its local vertex indices and
/// the parent graph's.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: BipartiteGraph,
    pub to_parent_x: Vec<usize>,
    pub to_parent_y: Vec<usize>,
    from_parent_x: Vec<Option<usize>>,
    from_parent_y: Vec<Option<usize>>,
}

impl Subgraph {
    pub fn to_parent(&self, v: VertexRef) -> VertexRef {
        match v.side {
            Side::X => VertexRef::x(self.to_parent_x[v.index]),
            Side::Y => VertexRef::y(self.to_parent_y[v.index]),
        }
    }

    pub fn from_parent(&self, v: VertexRef) -> Option<VertexRef> {
        match v.side {
            Side::X => self.from_parent_x.get(v.index).copied().flatten().map(VertexRef::x),
            Side::Y => self.from_parent_y.get(v.index).copied().flatten().map(VertexRef::y),
        }
    }

    pub fn contains_parent(&self, v: VertexRef) -> bool {
        self.from_parent(v).is_some()
    }

    pub fn parent_vertices(&self) -> Vec<VertexRef> {
        self.to_parent_x
            .iter()
            .map(|&i| VertexRef::x(i))
            .chain(self.to_parent_y.iter().map(|&i| VertexRef::y(i)))
            .collect()
    }

    /// Enumerates the subgraph's MSS and lifts each set into the parent
    /// vertex space (`parent_n_x` / `parent_n_y` wide bitsets).
    pub fn mss_in_parent_space(
        &self,
        caps: &EnumCaps,
        parent_n_x: usize,
        parent_n_y: usize,
    ) -> Result<Vec<StableSet>, GraphError> {
        let coll = self.graph.enumerate_mss_capped(caps)?;
        Ok(coll
            .sets()
            .iter()
            .map(|s| StableSet {
                x: BitSet::from_indices(parent_n_x, s.x.ones().map(|i| self.to_parent_x[i])),
                y: BitSet::from_indices(parent_n_y, s.y.ones().map(|i| self.to_parent_y[i])),
            })
            .collect())
    }
}
