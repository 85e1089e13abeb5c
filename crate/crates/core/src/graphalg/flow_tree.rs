//! All-pairs minimum cut values of an undirected graph from n - 1 max-flow
//! computations (Gusfield's flow-equivalent tree).

use crate::error::Result;
use crate::graphalg::maxflow::{max_flow_min_cut, FlowNetwork};
use crate::graphalg::mincut::WeightedGraph;

/// `values[u * n + v]` is the minimum weight of a cut separating `u` and `v`.
#[derive(Debug, Clone)]
pub struct PairwiseCuts {
    n: usize,
    values: Vec<f64>,
}

impl PairwiseCuts {
    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.values[u * self.n + v]
    }
}

pub fn pairwise_min_cuts(graph: &WeightedGraph) -> Result<PairwiseCuts> {
    let n = graph.vertex_count();
    let mut parent = vec![0usize; n];
    let mut weight = vec![f64::INFINITY; n];
    for s in 1..n {
        let t = parent[s];
        let mut net = FlowNetwork::new(n, s, t);
        for &(u, v, w) in graph.edges() {
            net.add_arc(u, v, w)?;
            net.add_arc(v, u, w)?;
        }
        let cut = max_flow_min_cut(&net)?;
        weight[s] = cut.value;
        for i in s + 1..n {
            if cut.source_side[i] && parent[i] == t {
                parent[i] = s;
            }
        }
    }

    // tree adjacency, then the minimum edge on every tree path
    let mut adj = vec![Vec::new(); n];
    for s in 1..n {
        adj[s].push((parent[s], weight[s]));
        adj[parent[s]].push((s, weight[s]));
    }
    let mut values = vec![f64::INFINITY; n * n];
    for root in 0..n {
        let mut stack = vec![root];
        let mut seen = vec![false; n];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            for &(v, w) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    values[root * n + v] = values[root * n + u].min(w);
                    stack.push(v);
                }
            }
        }
    }
    Ok(PairwiseCuts { n, values })
}
