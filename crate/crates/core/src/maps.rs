//! Elementary cut/join maps on feasible labelings and edge contraction.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graphalg::DisjointSets;
use crate::instance::{edge_key, triple_key, EdgeLabeling, Instance};

fn membership(inst: &Instance, u: &[usize]) -> Result<Vec<bool>> {
    let n = inst.vertex_count();
    let mut inside = vec![false; n];
    for &v in u {
        if v >= n {
            return Err(Error::InvalidVertex { vertex: v, count: n });
        }
        inside[v] = true;
    }
    Ok(inside)
}

/// σ_δ(U): zeroes every edge with exactly one endpoint in `u`.
pub fn cut_map(inst: &Instance, x: &EdgeLabeling, u: &[usize]) -> Result<EdgeLabeling> {
    check_dim(inst, x)?;
    let inside = membership(inst, u)?;
    let mut out = x.clone();
    for (e, &(p, q)) in inst.edges().iter().enumerate() {
        if inside[p] != inside[q] {
            out.set(e, false);
        }
    }
    Ok(out)
}

/// σ_U: sets `x_pq = 1` whenever `p` and `q` are linked by a path of edges
/// that are 1-labeled or lie inside `u`.
pub fn join_map(inst: &Instance, x: &EdgeLabeling, u: &[usize]) -> Result<EdgeLabeling> {
    check_dim(inst, x)?;
    let inside = membership(inst, u)?;
    let mut sets = DisjointSets::new(inst.vertex_count());
    for (e, &(p, q)) in inst.edges().iter().enumerate() {
        if x.get(e) || (inside[p] && inside[q]) {
            sets.union(p, q);
        }
    }
    let mut out = x.clone();
    for (e, &(p, q)) in inst.edges().iter().enumerate() {
        if sets.same(p, q) {
            out.set(e, true);
        }
    }
    Ok(out)
}

fn check_dim(inst: &Instance, x: &EdgeLabeling) -> Result<()> {
    if x.len() != inst.edge_count() {
        return Err(Error::DimensionMismatch {
            expected: inst.edge_count(),
            actual: x.len(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct ContractionResult {
    pub instance: Instance,
    /// New index of every old vertex.
    pub vertex_map: Vec<usize>,
    /// Contracted pair `(kept, removed)`, `kept < removed`.
    pub pair: (usize, usize),
}

/// Merges the endpoints of edge `pq` into the smaller one, assuming
/// `x_pq = 1`. Parallel edges and triples add up, a triple `r p q` turns
/// into extra cost on `r p`, and `c_pq` moves into the offset. Vertices
/// above the removed one shift down by one.
pub fn contract_edge(inst: &Instance, p: usize, q: usize) -> Result<ContractionResult> {
    let e = inst.edge_id(p, q).ok_or(Error::NotAnEdge(p, q))?;
    let (a, b) = inst.edge(e);
    let n = inst.vertex_count();
    let vertex_map: Vec<usize> = (0..n)
        .map(|v| match v.cmp(&b) {
            std::cmp::Ordering::Less => v,
            std::cmp::Ordering::Equal => a,
            std::cmp::Ordering::Greater => v - 1,
        })
        .collect();
    let m = |v: usize| vertex_map[v];

    let mut edges: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (id, &(u, v)) in inst.edges().iter().enumerate() {
        if id != e {
            *edges.entry(edge_key(m(u), m(v))).or_insert(0.0) += inst.edge_cost(id);
        }
    }
    let mut triples: BTreeMap<[usize; 3], f64> = BTreeMap::new();
    for (id, &[u, v, w]) in inst.triples().iter().enumerate() {
        let c = inst.triple_cost(id);
        let has_a = u == a || v == a || w == a;
        let has_b = u == b || v == b || w == b;
        if has_a && has_b {
            let r = [u, v, w].into_iter().find(|&z| z != a && z != b).unwrap();
            *edges.get_mut(&edge_key(m(r), a)).expect("contracted edge exists") += c;
        } else {
            *triples.entry(triple_key(m(u), m(v), m(w))).or_insert(0.0) += c;
        }
    }
    let instance = Instance::new(
        n - 1,
        edges.into_iter().map(|((u, v), c)| (u, v, c)),
        triples.into_iter().map(|([u, v, w], c)| (u, v, w, c)),
        inst.offset() + inst.edge_cost(e),
    )?;
    Ok(ContractionResult {
        instance,
        vertex_map,
        pair: (a, b),
    })
}
