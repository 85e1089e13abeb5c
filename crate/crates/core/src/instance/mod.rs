//! Instances of cubic correlation clustering, feasible edge labelings and
//! the partitions they encode.
//!
//! Vertices are dense indices `0..n`. Edges are stored as `(p, q)` with
//! `p < q` and triples as `[p, q, r]` with `p < q < r`; both lists are kept
//! in ascending lexicographic order, and edge/triple ids are positions in
//! these lists.

mod io;
mod multicut;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graphalg::DisjointSets;

pub use io::{parse_instance, read_instance_file, write_instance, write_instance_file};
pub use multicut::{to_cubic_multicut, write_multicut, MulticutInstance};

/// Positive part `max(0, r)`.
#[inline]
pub fn pos(r: f64) -> f64 {
    if r > 0.0 {
        r
    } else {
        0.0
    }
}

/// Negative part `max(0, -r)`.
#[inline]
pub fn neg(r: f64) -> f64 {
    if r < 0.0 {
        -r
    } else {
        0.0
    }
}

#[inline]
pub(crate) fn edge_key(p: usize, q: usize) -> (usize, usize) {
    if p < q {
        (p, q)
    } else {
        (q, p)
    }
}

#[inline]
pub(crate) fn triple_key(p: usize, q: usize, r: usize) -> [usize; 3] {
    let mut t = [p, q, r];
    t.sort_unstable();
    t
}

#[derive(Debug, Clone)]
pub struct Instance {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    edge_costs: Vec<f64>,
    triples: Vec<[usize; 3]>,
    triple_costs: Vec<f64>,
    offset: f64,
    edge_index: HashMap<(usize, usize), usize>,
    triple_index: HashMap<[usize; 3], usize>,
    // (neighbor, edge id), ascending by neighbor
    adjacency: Vec<Vec<(usize, usize)>>,
    // triple ids containing each edge, ascending
    edge_triples: Vec<Vec<usize>>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges == other.edges
            && self.edge_costs == other.edge_costs
            && self.triples == other.triples
            && self.triple_costs == other.triple_costs
            && self.offset == other.offset
    }
}

impl Instance {
    /// Builds an instance from unordered edge and triple lists.
    ///
    /// Rejects out-of-range vertices, self-loops, duplicates and triples
    /// that are not 3-cliques of the edge set.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
        triples: impl IntoIterator<Item = (usize, usize, usize, f64)>,
        offset: f64,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::EmptyVertexSet);
        }
        let check = |v: usize| {
            if v < vertex_count {
                Ok(())
            } else {
                Err(Error::InvalidVertex {
                    vertex: v,
                    count: vertex_count,
                })
            }
        };

        let mut edge_list: Vec<((usize, usize), f64)> = Vec::new();
        for (p, q, c) in edges {
            check(p)?;
            check(q)?;
            if p == q {
                return Err(Error::SelfLoop(p));
            }
            edge_list.push((edge_key(p, q), c));
        }
        edge_list.sort_by(|a, b| a.0.cmp(&b.0));
        for w in edge_list.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateEdge(w[0].0 .0, w[0].0 .1));
            }
        }

        let mut triple_list: Vec<([usize; 3], f64)> = Vec::new();
        for (p, q, r, c) in triples {
            check(p)?;
            check(q)?;
            check(r)?;
            let t = triple_key(p, q, r);
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::DegenerateTriple([p, q, r]));
            }
            triple_list.push((t, c));
        }
        triple_list.sort_by(|a, b| a.0.cmp(&b.0));
        for w in triple_list.windows(2) {
            if w[0].0 == w[1].0 {
                let t = w[0].0;
                return Err(Error::DuplicateTriple(t[0], t[1], t[2]));
            }
        }

        let edges: Vec<(usize, usize)> = edge_list.iter().map(|e| e.0).collect();
        let edge_costs: Vec<f64> = edge_list.iter().map(|e| e.1).collect();
        let edge_index: HashMap<(usize, usize), usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

        let mut adjacency = vec![Vec::new(); vertex_count];
        for (id, &(p, q)) in edges.iter().enumerate() {
            adjacency[p].push((q, id));
            adjacency[q].push((p, id));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let mut edge_triples = vec![Vec::new(); edges.len()];
        for (id, &(t, _)) in triple_list.iter().enumerate() {
            let [p, q, r] = t;
            for (a, b) in [(p, q), (p, r), (q, r)] {
                match edge_index.get(&(a, b)) {
                    Some(&e) => edge_triples[e].push(id),
                    None => return Err(Error::TripleNotClique(p, q, r, a, b)),
                }
            }
        }

        let triples: Vec<[usize; 3]> = triple_list.iter().map(|t| t.0).collect();
        let triple_costs = triple_list.iter().map(|t| t.1).collect();
        let triple_index = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();

        Ok(Instance {
            vertex_count,
            edges,
            edge_costs,
            triples,
            triple_costs,
            offset,
            edge_index,
            triple_index,
            adjacency,
            edge_triples,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triple_count(&self) -> usize {
        self.triples.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_costs(&self) -> &[f64] {
        &self.edge_costs
    }

    pub fn edge_cost(&self, e: usize) -> f64 {
        self.edge_costs[e]
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn triple(&self, t: usize) -> [usize; 3] {
        self.triples[t]
    }

    pub fn triple_costs(&self) -> &[f64] {
        &self.triple_costs
    }

    pub fn triple_cost(&self, t: usize) -> f64 {
        self.triple_costs[t]
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn edge_id(&self, p: usize, q: usize) -> Option<usize> {
        self.edge_index.get(&edge_key(p, q)).copied()
    }

    pub fn triple_id(&self, p: usize, q: usize, r: usize) -> Option<usize> {
        self.triple_index.get(&triple_key(p, q, r)).copied()
    }

    /// `(neighbor, edge id)` pairs of `v`, ascending by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Ids of the triples containing edge `e`.
    pub fn triples_of_edge(&self, e: usize) -> &[usize] {
        &self.edge_triples[e]
    }

    /// Vertex of triple `t` that is not an endpoint of edge `e`.
    pub fn third_vertex(&self, t: usize, e: usize) -> usize {
        let (p, q) = self.edges[e];
        let tri = self.triples[t];
        tri.into_iter().find(|&v| v != p && v != q).expect("edge not in triple")
    }

    /// The three edge ids of triple `t` in the order `pq, pr, qr`.
    pub fn triple_edges(&self, t: usize) -> [usize; 3] {
        let [p, q, r] = self.triples[t];
        [
            self.edge_index[&(p, q)],
            self.edge_index[&(p, r)],
            self.edge_index[&(q, r)],
        ]
    }

    /// Maximum vertex degree.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Maximum number of triples sharing one edge.
    pub fn max_triple_degree(&self) -> usize {
        self.edge_triples.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Same structure with the constant replaced.
    pub fn with_offset(&self, offset: f64) -> Self {
        let mut out = self.clone();
        out.offset = offset;
        out
    }

    /// Subinstance induced by `vertices`; vertex `vertices[k]` becomes `k`.
    /// The constant is set to 0.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut local = vec![usize::MAX; self.vertex_count];
        for (k, &v) in vertices.iter().enumerate() {
            if v >= self.vertex_count {
                return Err(Error::InvalidVertex {
                    vertex: v,
                    count: self.vertex_count,
                });
            }
            if local[v] != usize::MAX {
                return Err(Error::OverlappingSets(v));
            }
            local[v] = k;
        }
        let edges = self
            .edges
            .iter()
            .zip(&self.edge_costs)
            .filter(|(&(p, q), _)| local[p] != usize::MAX && local[q] != usize::MAX)
            .map(|(&(p, q), &c)| (local[p], local[q], c));
        let triples = self
            .triples
            .iter()
            .zip(&self.triple_costs)
            .filter(|(t, _)| t.iter().all(|&v| local[v] != usize::MAX))
            .map(|(t, &c)| (local[t[0]], local[t[1]], local[t[2]], c));
        Instance::new(vertices.len(), edges, triples, 0.0)
    }

    fn check_labeling(&self, x: &EdgeLabeling) -> Result<()> {
        if x.len() != self.edges.len() {
            return Err(Error::DimensionMismatch {
                expected: self.edges.len(),
                actual: x.len(),
            });
        }
        Ok(())
    }

    /// Whether `x` satisfies every cycle inequality, i.e. the 1-labeled
    /// edges are transitively closed within the graph.
    pub fn is_feasible(&self, x: &EdgeLabeling) -> Result<bool> {
        self.check_labeling(x)?;
        Ok(self.feasible_unchecked(x))
    }

    pub(crate) fn feasible_unchecked(&self, x: &EdgeLabeling) -> bool {
        let mut sets = DisjointSets::new(self.vertex_count);
        for (e, &(p, q)) in self.edges.iter().enumerate() {
            if x.get(e) {
                sets.union(p, q);
            }
        }
        self.edges
            .iter()
            .enumerate()
            .all(|(e, &(p, q))| x.get(e) || !sets.same(p, q))
    }

    /// `c_∅ + Σ c_pq x_pq + Σ c_pqr x_pq x_pr x_qr` for a feasible labeling.
    pub fn objective(&self, x: &EdgeLabeling) -> Result<f64> {
        self.check_labeling(x)?;
        if !self.feasible_unchecked(x) {
            return Err(Error::InfeasibleLabeling);
        }
        Ok(self.objective_unchecked(x))
    }

    pub(crate) fn objective_unchecked(&self, x: &EdgeLabeling) -> f64 {
        let mut total = self.offset;
        for (e, &c) in self.edge_costs.iter().enumerate() {
            if x.get(e) {
                total += c;
            }
        }
        for (t, &c) in self.triple_costs.iter().enumerate() {
            let [a, b, d] = self.triple_edges(t);
            if x.get(a) && x.get(b) && x.get(d) {
                total += c;
            }
        }
        total
    }

    /// Objective written as set sums over the blocks of a partition.
    pub fn partition_objective(&self, partition: &Partition) -> f64 {
        let mut total = self.offset;
        for block in partition.blocks() {
            for (a, &p) in block.iter().enumerate() {
                for (b, &q) in block.iter().enumerate().skip(a + 1) {
                    if let Some(e) = self.edge_id(p, q) {
                        total += self.edge_costs[e];
                    }
                    for &r in &block[b + 1..] {
                        if let Some(t) = self.triple_id(p, q, r) {
                            total += self.triple_costs[t];
                        }
                    }
                }
            }
        }
        total
    }

    /// Labeling with `x_pq = 1` iff `p` and `q` share a block. Blocks must be connected.
    pub fn labeling_from_partition(&self, partition: &Partition) -> Result<EdgeLabeling> {
        let block_of = partition.assignment(self.vertex_count)?;
        let mut sets = DisjointSets::new(self.vertex_count);
        let mut x = EdgeLabeling::zeros(self.edges.len());
        for (e, &(p, q)) in self.edges.iter().enumerate() {
            if block_of[p] == block_of[q] {
                x.set(e, true);
                sets.union(p, q);
            }
        }
        for block in partition.blocks() {
            if block.iter().any(|&v| sets.set_size(v) != block.len()) {
                return Err(Error::DisconnectedBlock(block.clone()));
            }
        }
        Ok(x)
    }

    /// Inverse of [`Instance::labeling_from_partition`]: the components of the 1-labeled subgraph.
    pub fn partition_from_labeling(&self, x: &EdgeLabeling) -> Result<Partition> {
        if !self.is_feasible(x)? {
            return Err(Error::InfeasibleLabeling);
        }
        let mut sets = DisjointSets::new(self.vertex_count);
        for (e, &(p, q)) in self.edges.iter().enumerate() {
            if x.get(e) {
                sets.union(p, q);
            }
        }
        Ok(Partition::from_assignment(&sets.labels()))
    }

    /// Edges with one endpoint in `u` and the other in `w`: δ(U, U').
    pub fn boundary_edges(&self, u: &[usize], w: &[usize]) -> Result<Vec<usize>> {
        let mut side = vec![0u8; self.vertex_count];
        for &v in u {
            self.check_vertex(v)?;
            side[v] = 1;
        }
        for &v in w {
            self.check_vertex(v)?;
            if side[v] == 1 {
                return Err(Error::OverlappingSets(v));
            }
            side[v] = 2;
        }
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(p, q))| side[p] | side[q] == 3)
            .map(|(e, _)| e)
            .collect())
    }

    /// δ(U): edges with exactly one endpoint in `u`.
    pub fn cut_edges(&self, u: &[usize]) -> Result<Vec<usize>> {
        let mut inside = vec![false; self.vertex_count];
        for &v in u {
            self.check_vertex(v)?;
            inside[v] = true;
        }
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(p, q))| inside[p] != inside[q])
            .map(|(e, _)| e)
            .collect())
    }

    /// T_{E'}: ids of triples containing at least one edge of `edge_set`, ascending.
    pub fn triples_cut_by(&self, edge_set: &[usize]) -> Vec<usize> {
        let mut hit = vec![false; self.triples.len()];
        for &e in edge_set {
            for &t in &self.edge_triples[e] {
                hit[t] = true;
            }
        }
        (0..self.triples.len()).filter(|&t| hit[t]).collect()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                count: self.vertex_count,
            })
        }
    }
}

/// One binary value per edge (canonical edge order); 1 = same cluster.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeLabeling(Vec<bool>);

impl EdgeLabeling {
    pub fn zeros(len: usize) -> Self {
        EdgeLabeling(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        EdgeLabeling(vec![true; len])
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        EdgeLabeling(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, e: usize) -> bool {
        self.0[e]
    }

    #[inline]
    pub fn set(&mut self, e: usize, value: bool) {
        self.0[e] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    /// `true` where `self >= other` holds componentwise.
    pub fn dominates(&self, other: &EdgeLabeling) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a || !b)
    }
}

impl From<Vec<bool>> for EdgeLabeling {
    fn from(v: Vec<bool>) -> Self {
        EdgeLabeling(v)
    }
}

impl std::fmt::Display for EdgeLabeling {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Family of disjoint nonempty vertex sets, kept canonical: each block
/// ascending, blocks ordered by smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Self {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        Partition { blocks }
    }

    /// Blocks from a block label per vertex.
    pub fn from_assignment(labels: &[usize]) -> Self {
        Partition::new(crate::graphalg::groups_from_labels(labels))
    }

    pub fn singletons(n: usize) -> Self {
        Partition::new((0..n).map(|v| vec![v]).collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block index per vertex; fails unless the blocks cover `0..n` exactly once.
    pub fn assignment(&self, n: usize) -> Result<Vec<usize>> {
        let mut out = vec![usize::MAX; n];
        for (k, block) in self.blocks.iter().enumerate() {
            for &v in block {
                if v >= n || out[v] != usize::MAX {
                    return Err(Error::NotAPartition);
                }
                out[v] = k;
            }
        }
        if out.contains(&usize::MAX) {
            return Err(Error::NotAPartition);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Instance {
        Instance::new(
            3,
            [(0, 1, -2.0), (0, 2, -2.0), (1, 2, -2.0)],
            [(0, 1, 2, 5.0)],
            0.0,
        )
        .unwrap()
    }

    fn triangle() -> Instance {
        Instance::new(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)], [], 0.0).unwrap()
    }

    #[test]
    fn builds_worked_example() {
        let inst = example();
        assert_eq!(inst.edge_count(), 3);
        assert_eq!(inst.triple_count(), 1);
        assert_eq!(inst.triples_of_edge(0), &[0]);
        assert_eq!(inst.neighbors(0), &[(1, 0), (2, 1)]);
    }

    #[test]
    fn rejects_non_clique_triple() {
        let err = Instance::new(3, [(0, 1, 1.0)], [(0, 1, 2, 1.0)], 0.0).unwrap_err();
        assert!(matches!(err, Error::TripleNotClique(0, 1, 2, _, _)));
    }

    #[test]
    fn rejects_duplicates() {
        let err = Instance::new(3, [(0, 1, 1.0), (1, 0, 2.0)], [], 0.0).unwrap_err();
        assert_eq!(err, Error::DuplicateEdge(0, 1));
        let err = Instance::new(
            3,
            [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)],
            [(0, 1, 2, 1.0), (2, 1, 0, 1.0)],
            0.0,
        )
        .unwrap_err();
        assert_eq!(err, Error::DuplicateTriple(0, 1, 2));
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert_eq!(
            Instance::new(2, [(1, 1, 0.0)], [], 0.0).unwrap_err(),
            Error::SelfLoop(1)
        );
        assert!(matches!(
            Instance::new(2, [(0, 2, 0.0)], [], 0.0).unwrap_err(),
            Error::InvalidVertex { vertex: 2, .. }
        ));
    }

    #[test]
    fn trivial_instance() {
        let inst = Instance::new(1, [], [], 0.0).unwrap();
        assert_eq!(inst.objective(&EdgeLabeling::zeros(0)).unwrap(), 0.0);
    }

    #[test]
    fn worked_example_objectives() {
        let inst = example();
        assert_eq!(inst.objective(&EdgeLabeling::ones(3)).unwrap(), -1.0);
        assert_eq!(
            inst.objective(&EdgeLabeling::from_bits(&[1, 0, 0])).unwrap(),
            -2.0
        );
        assert_eq!(inst.objective(&EdgeLabeling::zeros(3)).unwrap(), 0.0);
    }

    #[test]
    fn objective_errors() {
        let inst = example();
        assert!(matches!(
            inst.objective(&EdgeLabeling::zeros(2)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            inst.objective(&EdgeLabeling::from_bits(&[1, 1, 0])),
            Err(Error::InfeasibleLabeling)
        );
    }

    #[test]
    fn feasibility_on_triangle() {
        let inst = triangle();
        assert!(!inst.is_feasible(&EdgeLabeling::from_bits(&[1, 1, 0])).unwrap());
        assert!(inst.is_feasible(&EdgeLabeling::ones(3)).unwrap());
    }

    #[test]
    fn tree_labelings_are_all_feasible() {
        let inst = Instance::new(4, [(0, 1, 0.0), (1, 2, 0.0), (1, 3, 0.0)], [], 0.0).unwrap();
        for mask in 0..8u8 {
            let bits: Vec<u8> = (0..3).map(|k| (mask >> k) & 1).collect();
            assert!(inst.is_feasible(&EdgeLabeling::from_bits(&bits)).unwrap());
        }
    }

    #[test]
    fn partition_labeling_maps() {
        let inst = triangle();
        let p = Partition::new(vec![vec![0, 1], vec![2]]);
        let x = inst.labeling_from_partition(&p).unwrap();
        assert_eq!(x, EdgeLabeling::from_bits(&[1, 0, 0]));
        assert_eq!(inst.partition_from_labeling(&x).unwrap(), p);
        let x0 = inst.labeling_from_partition(&Partition::singletons(3)).unwrap();
        assert_eq!(x0, EdgeLabeling::zeros(3));
    }

    #[test]
    fn disconnected_block_rejected() {
        let path = Instance::new(3, [(0, 1, 0.0), (1, 2, 0.0)], [], 0.0).unwrap();
        let p = Partition::new(vec![vec![0, 2], vec![1]]);
        assert_eq!(
            path.labeling_from_partition(&p),
            Err(Error::DisconnectedBlock(vec![0, 2]))
        );
    }

    #[test]
    fn boundary_notation() {
        let inst = example();
        assert_eq!(inst.cut_edges(&[0]).unwrap(), vec![0, 1]);
        assert_eq!(inst.triples_cut_by(&[0, 1]), vec![0]);
        assert_eq!(inst.boundary_edges(&[0, 1], &[2]).unwrap(), vec![1, 2]);
        assert_eq!(
            inst.boundary_edges(&[0, 1], &[1]),
            Err(Error::OverlappingSets(1))
        );
        assert_eq!(pos(-2.0), 0.0);
        assert_eq!(neg(-2.0), 2.0);
        assert_eq!(neg(3.0), 0.0);
    }

    #[test]
    fn induced_subinstance() {
        let inst = example();
        let sub = inst.induced(&[0, 2]).unwrap();
        assert_eq!(sub.edges(), &[(0, 1)]);
        assert_eq!(sub.triple_count(), 0);
    }
}
