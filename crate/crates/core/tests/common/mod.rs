//! Reference helpers shared by the integration tests. The brute force here
//! works on vertex partitions and block sums, independently of the
//! labeling enumerator in the library.
#![allow(dead_code)]

use std::collections::VecDeque;

use cubic_persistency::oracle::Fixations;
use cubic_persistency::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random instance: each pair is an edge with probability `density`, every
/// 3-clique is a triple, costs are integers in `[-range, range]`.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, density: f64, range: i32) -> Instance {
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            if rng.random_bool(density) {
                adj[p][q] = true;
                adj[q][p] = true;
                edges.push((p, q, rng.random_range(-range..=range) as f64));
            }
        }
    }
    let mut triples = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                if adj[p][q] && adj[p][r] && adj[q][r] {
                    triples.push((p, q, r, rng.random_range(-range..=range) as f64));
                }
            }
        }
    }
    Instance::new(n, edges, triples, 0.0).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn block_connected(inst: &Instance, block: &[usize], label: &[usize]) -> bool {
    let id = label[block[0]];
    let mut seen = vec![false; inst.vertex_count()];
    seen[block[0]] = true;
    let mut queue = VecDeque::from([block[0]]);
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &(w, _) in inst.neighbors(u) {
            if label[w] == id && !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == block.len()
}

/// Every clustering as a block label per vertex, built by inserting the
/// vertices one at a time into an existing block or a new one.
pub fn clusterings(inst: &Instance) -> Vec<Vec<usize>> {
    let n = inst.vertex_count();
    let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for v in 0..n {
        let mut next = Vec::new();
        for blocks in &partial {
            for b in 0..blocks.len() {
                let mut nb = blocks.clone();
                nb[b].push(v);
                next.push(nb);
            }
            let mut nb = blocks.clone();
            nb.push(vec![v]);
            next.push(nb);
        }
        partial = next;
    }
    partial
        .into_iter()
        .filter_map(|blocks| {
            let mut label = vec![0; n];
            for (b, block) in blocks.iter().enumerate() {
                for &v in block {
                    label[v] = b;
                }
            }
            blocks
                .iter()
                .all(|b| block_connected(inst, b, &label))
                .then_some(label)
        })
        .collect()
}

/// Offset plus the costs of all edges and triples lying inside one block.
pub fn block_sum(inst: &Instance, label: &[usize]) -> f64 {
    let mut total = inst.offset();
    for (&(p, q), &c) in inst.edges().iter().zip(inst.edge_costs()) {
        if label[p] == label[q] {
            total += c;
        }
    }
    for (&[p, q, r], &c) in inst.triples().iter().zip(inst.triple_costs()) {
        if label[p] == label[q] && label[q] == label[r] {
            total += c;
        }
    }
    total
}

pub struct Reference {
    pub clusterings: Vec<Vec<usize>>,
    pub values: Vec<f64>,
    pub minimum: f64,
}

impl Reference {
    pub fn new(inst: &Instance) -> Self {
        let clusterings = clusterings(inst);
        let values: Vec<f64> = clusterings.iter().map(|l| block_sum(inst, l)).collect();
        let minimum = values.iter().copied().fold(f64::INFINITY, f64::min);
        Reference { clusterings, values, minimum }
    }

    pub fn meets(inst: &Instance, label: &[usize], fix: &Fixations) -> bool {
        let same = |e: usize| {
            let (p, q) = inst.edge(e);
            label[p] == label[q]
        };
        let joined = |t: usize| {
            let [p, q, r] = inst.triple(t);
            label[p] == label[q] && label[q] == label[r]
        };
        fix.edges.iter().all(|&(e, v)| same(e) == v)
            && fix.triples_zero.iter().all(|&t| !joined(t))
            && fix.triples_one.iter().all(|&t| joined(t))
    }

    pub fn constrained_minimum(&self, inst: &Instance, fix: &Fixations) -> Option<f64> {
        self.clusterings
            .iter()
            .zip(&self.values)
            .filter(|(l, _)| Self::meets(inst, l, fix))
            .map(|(_, &v)| v)
            .reduce(f64::min)
    }

    /// Some optimal clustering satisfies the fixations (integer costs, so
    /// the comparison is exact).
    pub fn persistent(&self, inst: &Instance, fix: &Fixations) -> bool {
        self.constrained_minimum(inst, fix) == Some(self.minimum)
    }
}

/// Weight of the edges and triples cut by the vertex set `inside`.
pub fn cut_value(inst: &Instance, ew: &[f64], tw: &[f64], inside: &[bool]) -> f64 {
    let mut total = 0.0;
    for (&(p, q), &w) in inst.edges().iter().zip(ew) {
        if inside[p] != inside[q] {
            total += w;
        }
    }
    for (&[p, q, r], &w) in inst.triples().iter().zip(tw) {
        if !(inside[p] == inside[q] && inside[q] == inside[r]) {
            total += w;
        }
    }
    total
}

/// Minimum cut over every `U ∋ source` avoiding `forbidden`, by listing subsets.
pub fn brute_min_cut(inst: &Instance, ew: &[f64], tw: &[f64], source: usize, forbidden: &[usize]) -> f64 {
    let n = inst.vertex_count();
    let mut best = f64::INFINITY;
    for mask in 0..1u32 << n {
        let inside: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        if inside[source] && !forbidden.iter().any(|&f| inside[f]) {
            best = best.min(cut_value(inst, ew, tw, &inside));
        }
    }
    best
}
