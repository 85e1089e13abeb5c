//! Maximum flow / minimum st-cut by push-relabel with FIFO active-node
//! selection and the gap heuristic.
//!
//! The solver runs a single phase that also returns surplus preflow to the
//! source, so on termination the preflow is a proper flow and the set of
//! nodes reachable from `s` in the residual network is the minimal
//! source side of a minimum cut.
//!
//! Capacities and excesses at or below `1e-12` times the total capacity
//! count as zero. Rounding can otherwise strand a tiny excess on a node
//! with no residual arc left, and discharging it would never finish.
//! Integer and half-integer capacities never round, so for them the result
//! is exact.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Directed network with nonnegative arc capacities and designated terminals.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    node_count: usize,
    source: usize,
    sink: usize,
    arcs: Vec<(usize, usize, f64)>,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        FlowNetwork {
            node_count,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[(usize, usize, f64)] {
        &self.arcs
    }

    /// Adds arc `from -> to`. Parallel arcs are allowed; zero-capacity arcs are dropped.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: f64) -> Result<()> {
        if !(capacity >= 0.0) {
            return Err(Error::NegativeCapacity(capacity));
        }
        for v in [from, to] {
            if v >= self.node_count {
                return Err(Error::InvalidVertex {
                    vertex: v,
                    count: self.node_count,
                });
            }
        }
        if capacity > 0.0 && from != to {
            self.arcs.push((from, to, capacity));
        }
        Ok(())
    }

    /// Capacity of the cut `(side, complement)` where `side[v]` marks the source side.
    pub fn cut_capacity(&self, side: &[bool]) -> f64 {
        self.arcs
            .iter()
            .filter(|&&(u, v, _)| side[u] && !side[v])
            .map(|&(_, _, c)| c)
            .sum()
    }
}

/// Result of a max-flow computation.
#[derive(Debug, Clone, PartialEq)]
pub struct MinCut {
    pub value: f64,
    /// `true` for nodes on the source side (residual-reachable from `s`).
    pub source_side: Vec<bool>,
}

impl MinCut {
    pub fn source_nodes(&self) -> Vec<usize> {
        (0..self.source_side.len())
            .filter(|&v| self.source_side[v])
            .collect()
    }
}

struct Residual {
    // adjacency in CSR form over arc ids; arc `a` and `a ^ 1` are mutual reverses
    start: Vec<usize>,
    arc_ids: Vec<usize>,
    head: Vec<usize>,
    cap: Vec<f64>,
}

impl Residual {
    fn build(net: &FlowNetwork) -> Self {
        let n = net.node_count;
        let m = net.arcs.len();
        let mut head = Vec::with_capacity(2 * m);
        let mut cap = Vec::with_capacity(2 * m);
        let mut degree = vec![0usize; n + 1];
        for &(u, v, c) in &net.arcs {
            head.push(v);
            cap.push(c);
            head.push(u);
            cap.push(0.0);
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut start = vec![0usize; n + 1];
        for v in 0..n {
            start[v + 1] = start[v] + degree[v];
        }
        let mut fill = start.clone();
        let mut arc_ids = vec![0usize; 2 * m];
        for (k, &(u, v, _)) in net.arcs.iter().enumerate() {
            arc_ids[fill[u]] = 2 * k;
            fill[u] += 1;
            arc_ids[fill[v]] = 2 * k + 1;
            fill[v] += 1;
        }
        Residual {
            start,
            arc_ids,
            head,
            cap,
        }
    }

    fn arcs_of(&self, v: usize) -> &[usize] {
        &self.arc_ids[self.start[v]..self.start[v + 1]]
    }
}

/// Computes a maximum flow and the minimal minimum st-cut.
pub fn max_flow_min_cut(net: &FlowNetwork) -> Result<MinCut> {
    let n = net.node_count;
    let (s, t) = (net.source, net.sink);
    if s >= n || t >= n {
        return Err(Error::InvalidVertex {
            vertex: s.max(t),
            count: n,
        });
    }
    if s == t {
        return Err(Error::SourceEqualsSink);
    }

    let mut res = Residual::build(net);
    let eps = 1e-12 * net.arcs.iter().map(|a| a.2).sum::<f64>();
    let mut height = vec![0usize; n];
    let mut excess = vec![0.0f64; n];
    let mut current = vec![0usize; n];
    // count[h] = number of nodes at height h (heights stay below 2n)
    let mut count = vec![0usize; 2 * n + 1];
    let mut queue = VecDeque::new();
    let mut queued = vec![false; n];

    height[s] = n;
    count[0] = n - 1;
    count[n] = 1;

    for k in res.start[s]..res.start[s + 1] {
        let a = res.arc_ids[k];
        let c = res.cap[a];
        if c > eps {
            let v = res.head[a];
            res.cap[a] = 0.0;
            res.cap[a ^ 1] += c;
            excess[v] += c;
            excess[s] -= c;
            if v != t && v != s && !queued[v] {
                queued[v] = true;
                queue.push_back(v);
            }
        }
    }

    while let Some(u) = queue.pop_front() {
        queued[u] = false;
        // discharge u
        while excess[u] > eps {
            let arcs = res.arcs_of(u);
            if current[u] < arcs.len() {
                let a = arcs[current[u]];
                let v = res.head[a];
                if res.cap[a] > eps && height[u] == height[v] + 1 {
                    let delta = if excess[u] < res.cap[a] {
                        excess[u]
                    } else {
                        res.cap[a]
                    };
                    res.cap[a] -= delta;
                    res.cap[a ^ 1] += delta;
                    excess[u] -= delta;
                    excess[v] += delta;
                    if v != s && v != t && !queued[v] {
                        queued[v] = true;
                        queue.push_back(v);
                    }
                } else {
                    current[u] += 1;
                }
                continue;
            }

            // relabel
            let old = height[u];
            let mut lowest = usize::MAX;
            for &a in res.arcs_of(u) {
                if res.cap[a] > eps {
                    lowest = lowest.min(height[res.head[a]]);
                }
            }
            if lowest >= 2 * n - 1 {
                // rounding residue with nowhere to go
                excess[u] = 0.0;
                break;
            }
            let new = lowest + 1;
            count[old] -= 1;
            height[u] = new;
            count[new] += 1;
            current[u] = 0;

            if count[old] == 0 && old < n {
                // gap: nothing at `old` can reach the sink any more
                for v in 0..n {
                    if v != s && height[v] > old && height[v] < n {
                        count[height[v]] -= 1;
                        height[v] = n + 1;
                        count[n + 1] += 1;
                        current[v] = 0;
                    }
                }
            }
        }
    }

    let mut side = vec![false; n];
    side[s] = true;
    let mut bfs = VecDeque::from([s]);
    while let Some(u) = bfs.pop_front() {
        for &a in res.arcs_of(u) {
            let v = res.head[a];
            if res.cap[a] > eps && !side[v] {
                side[v] = true;
                bfs.push_back(v);
            }
        }
    }
    debug_assert!(!side[t], "sink reachable after max flow");

    let value = net.cut_capacity(&side);
    debug_assert!(
        (value - excess[t]).abs() <= 1e-9 * (1.0 + value.abs()) + 2.0 * n as f64 * eps,
        "flow {} differs from cut {}",
        excess[t],
        value
    );
    Ok(MinCut {
        value,
        source_side: side,
    })
}
