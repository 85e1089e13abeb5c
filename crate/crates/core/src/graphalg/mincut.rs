//! Global minimum cut of an undirected graph with nonnegative weights
//! (Stoer–Wagner, dense O(n^3) variant).

use crate::error::{Error, Result};
use crate::graphalg::disjoint_sets::connected_components;

/// Undirected graph with nonnegative edge weights. Parallel edges add up.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    pub fn new(vertex_count: usize) -> Self {
        WeightedGraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: f64) -> Result<()> {
        if !(weight >= 0.0) {
            return Err(Error::NegativeCapacity(weight));
        }
        for x in [u, v] {
            if x >= self.vertex_count {
                return Err(Error::InvalidVertex {
                    vertex: x,
                    count: self.vertex_count,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.edges.push((u, v, weight));
        Ok(())
    }

    /// Total weight of edges with exactly one endpoint in `side`.
    pub fn cut_weight(&self, side: &[bool]) -> f64 {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| side[u] != side[v])
            .map(|&(_, _, w)| w)
            .sum()
    }
}

/// Returns the minimum cut value and one side of a minimizing cut.
///
/// A disconnected graph yields value 0 with the component of vertex 0 as witness.
pub fn global_min_cut(graph: &WeightedGraph) -> Result<(f64, Vec<usize>)> {
    let n = graph.vertex_count;
    if n < 2 {
        return Err(Error::TooFewVertices);
    }
    let labels = connected_components(n, graph.edges.iter().map(|&(u, v, _)| (u, v)));
    if labels.iter().any(|&l| l != 0) {
        let side = (0..n).filter(|&v| labels[v] == 0).collect();
        return Ok((0.0, side));
    }

    let mut w = vec![vec![0.0f64; n]; n];
    for &(u, v, x) in &graph.edges {
        w[u][v] += x;
        w[v][u] += x;
    }
    // members[v]: original vertices merged into super-vertex v
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best = f64::INFINITY;
    let mut best_side = Vec::new();

    while alive.len() > 1 {
        let mut in_a = vec![false; n];
        let mut key = vec![0.0f64; n];
        let mut prev = alive[0];
        let mut last = alive[0];
        in_a[last] = true;
        for &v in &alive {
            key[v] = w[last][v];
        }
        for _ in 1..alive.len() {
            let mut pick = usize::MAX;
            for &v in &alive {
                if !in_a[v] && (pick == usize::MAX || key[v] > key[pick]) {
                    pick = v;
                }
            }
            prev = last;
            last = pick;
            in_a[pick] = true;
            for &v in &alive {
                if !in_a[v] {
                    key[v] += w[pick][v];
                }
            }
        }
        let phase_cut = key[last];
        if phase_cut < best {
            best = phase_cut;
            best_side = members[last].clone();
        }
        // merge `last` into `prev`
        let moved = std::mem::take(&mut members[last]);
        members[prev].extend(moved);
        for &v in &alive {
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        w[prev][prev] = 0.0;
        alive.retain(|&v| v != last);
    }
    best_side.sort_unstable();
    Ok((best, best_side))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertices() {
        let mut g = WeightedGraph::new(2);
        g.add_edge(0, 1, 4.0).unwrap();
        let (v, side) = global_min_cut(&g).unwrap();
        assert_eq!(v, 4.0);
        assert_eq!(side.len(), 1);
    }

    #[test]
    fn weighted_triangle() {
        let mut g = WeightedGraph::new(3);
        g.add_edge(0, 1, 1.0).unwrap();
        g.add_edge(0, 2, 2.0).unwrap();
        g.add_edge(1, 2, 3.0).unwrap();
        let (v, side) = global_min_cut(&g).unwrap();
        assert_eq!(v, 3.0);
        assert!(side == vec![0] || side == vec![1, 2]);
    }

    #[test]
    fn unit_four_cycle() {
        let mut g = WeightedGraph::new(4);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            g.add_edge(u, v, 1.0).unwrap();
        }
        assert_eq!(global_min_cut(&g).unwrap().0, 2.0);
    }

    #[test]
    fn disconnected_is_zero() {
        let mut g = WeightedGraph::new(4);
        g.add_edge(0, 1, 5.0).unwrap();
        g.add_edge(2, 3, 5.0).unwrap();
        assert_eq!(global_min_cut(&g).unwrap(), (0.0, vec![0, 1]));
    }

    #[test]
    fn too_small() {
        assert_eq!(global_min_cut(&WeightedGraph::new(1)), Err(Error::TooFewVertices));
    }
}
