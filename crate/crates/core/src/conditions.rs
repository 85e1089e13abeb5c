//! Partial optimality conditions and their decision procedures.
//!
//! Each checker returns a [`Certificate`] when its inequality holds.
//! Inequalities are read as `LHS ≥ RHS`; the configured slack is subtracted
//! from the LHS and `margin = LHS − slack − RHS`. Checkers that may try
//! several apexes or target edges of one triple report the option with the
//! largest margin, ties going to the first in canonical order.

use std::cell::OnceCell;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graphalg::{
    connected_components, global_min_cut, groups_from_labels, pairwise_min_cuts, PairwiseCuts, WeightedGraph,
};
use crate::instance::{neg, pos, Instance};
use crate::oracle::Fixations;
use crate::reductions::{fold_triples_into_edges, min_constrained_cut_folded};

/// The individual conditions, named as in event logs and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    Separation,
    SubsetJoin,
    EdgeJoin,
    TriangleEdgeJoin,
    EdgeSubgraphJoin,
    TripletSubgraphJoin,
    TripletJoin,
    EdgeCut,
    TripletCut,
}

impl Condition {
    pub const ALL: [Condition; 9] = [
        Condition::Separation,
        Condition::SubsetJoin,
        Condition::EdgeJoin,
        Condition::TriangleEdgeJoin,
        Condition::EdgeSubgraphJoin,
        Condition::TripletSubgraphJoin,
        Condition::TripletJoin,
        Condition::EdgeCut,
        Condition::TripletCut,
    ];

    /// Join conditions in the order they are tried.
    pub const JOIN_ORDER: [Condition; 6] = [
        Condition::SubsetJoin,
        Condition::EdgeJoin,
        Condition::TriangleEdgeJoin,
        Condition::EdgeSubgraphJoin,
        Condition::TripletSubgraphJoin,
        Condition::TripletJoin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Separation => "separation",
            Condition::SubsetJoin => "subset_join",
            Condition::EdgeJoin => "edge_join",
            Condition::TriangleEdgeJoin => "triangle_edge_join",
            Condition::EdgeSubgraphJoin => "edge_subgraph_join",
            Condition::TripletSubgraphJoin => "triplet_subgraph_join",
            Condition::TripletJoin => "triplet_join",
            Condition::EdgeCut => "edge_cut",
            Condition::TripletCut => "triplet_cut",
        }
    }

    pub fn is_join(self) -> bool {
        Condition::JOIN_ORDER.contains(&self)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Condition::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown condition '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    EdgeFixed0,
    TripleCut,
    EdgeFixed1,
    TripleJoined,
    SubsetJoined,
    Separation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub condition: Condition,
    pub kind: CertificateKind,
    /// Edge `[p, q]`, triple `[p, q, r]` (ascending), or a vertex set.
    pub target: Vec<usize>,
    /// Witness vertex sets (`U`, `U'`), or the groups of a separation.
    pub witnesses: Vec<Vec<usize>>,
    pub margin: f64,
}

impl Certificate {
    /// Constraints the certificate places on some optimal labeling of `inst`.
    pub fn fixations(&self, inst: &Instance) -> Fixations {
        let mut fix = Fixations::default();
        let edge = |t: &[usize]| inst.edge_id(t[0], t[1]).expect("certified edge");
        let triple = |t: &[usize]| inst.triple_id(t[0], t[1], t[2]).expect("certified triple");
        match self.kind {
            CertificateKind::EdgeFixed0 => fix.edges.push((edge(&self.target), false)),
            CertificateKind::EdgeFixed1 => fix.edges.push((edge(&self.target), true)),
            CertificateKind::TripleCut => fix.triples_zero.push(triple(&self.target)),
            CertificateKind::TripleJoined => fix.triples_one.push(triple(&self.target)),
            CertificateKind::SubsetJoined => {
                let mut inside = vec![false; inst.vertex_count()];
                for &v in &self.target {
                    inside[v] = true;
                }
                for (e, &(p, q)) in inst.edges().iter().enumerate() {
                    if inside[p] && inside[q] {
                        fix.edges.push((e, true));
                    }
                }
            }
            CertificateKind::Separation => {
                let mut group = vec![0; inst.vertex_count()];
                for (g, members) in self.witnesses.iter().enumerate() {
                    for &v in members {
                        group[v] = g;
                    }
                }
                for (e, &(p, q)) in inst.edges().iter().enumerate() {
                    if group[p] != group[q] {
                        fix.edges.push((e, false));
                    }
                }
            }
        }
        fix
    }
}

/// Result of the separation test: the groups always, a certificate only
/// when there is more than one group.
#[derive(Debug, Clone, PartialEq)]
pub struct Separation {
    pub groups: Vec<Vec<usize>>,
    pub certificate: Option<Certificate>,
}

/// Per-instance precomputation shared by all checkers.
pub struct Checker<'a> {
    inst: &'a Instance,
    slack: f64,
    neg_edge: Vec<f64>,
    neg_triple: Vec<f64>,
    folded_neg: Vec<f64>,
    folded_abs: Vec<f64>,
    // the folded weights as dense vertex-by-vertex matrices, 0 for non-edges
    dense_neg: Vec<f64>,
    dense_abs: Vec<f64>,
    cuts_neg: OnceCell<PairwiseCuts>,
    cuts_abs: OnceCell<PairwiseCuts>,
    positive_total: f64,
}

#[derive(Clone, Copy)]
enum Weights {
    Neg,
    Abs,
}

fn better(best: &Option<Certificate>, margin: f64) -> bool {
    best.as_ref().is_none_or(|b| margin > b.margin)
}

/// Negative parts of the costs on the boundary of a small vertex set.
struct Boundary {
    /// Σ c^- over δ(S).
    edges: f64,
    /// Σ c^- over triples with exactly one vertex in S and an edge in δ(S).
    one_inside: f64,
    /// Σ c^- over triples with exactly two vertices in S.
    two_inside: f64,
}

impl<'a> Checker<'a> {
    pub fn new(inst: &'a Instance, slack: f64) -> Self {
        let neg_edge: Vec<f64> = inst.edge_costs().iter().map(|&c| neg(c)).collect();
        let neg_triple: Vec<f64> = inst.triple_costs().iter().map(|&c| neg(c)).collect();
        let abs_edge: Vec<f64> = inst.edge_costs().iter().map(|c| c.abs()).collect();
        let abs_triple: Vec<f64> = inst.triple_costs().iter().map(|c| c.abs()).collect();
        let folded_neg = fold_triples_into_edges(inst, &neg_edge, &neg_triple).expect("dimensions");
        let folded_abs = fold_triples_into_edges(inst, &abs_edge, &abs_triple).expect("dimensions");
        let n = inst.vertex_count();
        let mut dense_neg = vec![0.0; n * n];
        let mut dense_abs = vec![0.0; n * n];
        for (e, &(p, q)) in inst.edges().iter().enumerate() {
            for (m, w) in [(&mut dense_neg, folded_neg[e]), (&mut dense_abs, folded_abs[e])] {
                m[p * n + q] = w;
                m[q * n + p] = w;
            }
        }
        let positive_total = inst
            .edge_costs()
            .iter()
            .chain(inst.triple_costs())
            .map(|&c| pos(c))
            .sum();
        Checker {
            inst,
            slack,
            neg_edge,
            neg_triple,
            folded_neg,
            folded_abs,
            dense_neg,
            dense_abs,
            cuts_neg: OnceCell::new(),
            cuts_abs: OnceCell::new(),
            positive_total,
        }
    }

    pub fn instance(&self) -> &Instance {
        self.inst
    }

    pub fn slack(&self) -> f64 {
        self.slack
    }

    fn edge(&self, p: usize, q: usize) -> usize {
        self.inst.edge_id(p, q).expect("edge of a triple")
    }

    fn sum_triples_of(&self, e: usize, w: &[f64]) -> f64 {
        self.inst.triples_of_edge(e).iter().map(|&t| w[t]).sum()
    }

    /// Σ w over triples containing `e1` or `e2`, where `t` is the only triple containing both.
    fn sum_triples_of_pair(&self, e1: usize, e2: usize, t: usize, w: &[f64]) -> f64 {
        self.sum_triples_of(e1, w) + self.sum_triples_of(e2, w) - w[t]
    }

    /// Lower bound on the constrained cut: every other vertex `r` cuts
    /// either its edge to `source` or its edges to `forbidden`.
    fn star_bound(&self, dense: &[f64], source: usize, forbidden: &[usize]) -> f64 {
        let n = self.inst.vertex_count();
        let row = |v: usize| &dense[v * n..(v + 1) * n];
        let s = row(source);
        let mut bound: f64 = forbidden.iter().map(|&f| s[f]).sum();
        for r in 0..n {
            if r == source || forbidden.contains(&r) {
                continue;
            }
            let away: f64 = forbidden.iter().map(|&f| row(f)[r]).sum();
            bound += s[r].min(away);
        }
        bound
    }

    fn pairwise(&self, w: Weights) -> &PairwiseCuts {
        let (cell, folded) = match w {
            Weights::Neg => (&self.cuts_neg, &self.folded_neg),
            Weights::Abs => (&self.cuts_abs, &self.folded_abs),
        };
        cell.get_or_init(|| {
            let mut g = WeightedGraph::new(self.inst.vertex_count());
            for (&(p, q), &x) in self.inst.edges().iter().zip(folded) {
                if x > 0.0 {
                    g.add_edge(p, q, x).expect("nonnegative weight");
                }
            }
            pairwise_min_cuts(&g).expect("valid network")
        })
    }

    /// True when `lhs` is below a lower bound on the cut separating `source`
    /// from `forbidden`: the star bound, or the cut separating `source` from a
    /// single forbidden vertex. Bounds are lowered by a rounding margin so that
    /// pruning never drops a candidate the exact computation would accept.
    fn pruned(&self, lhs: f64, w: Weights, source: usize, forbidden: &[usize]) -> bool {
        let below = |b: f64| lhs < b - 1e-9 * (1.0 + b.abs());
        let dense = match w {
            Weights::Neg => &self.dense_neg,
            Weights::Abs => &self.dense_abs,
        };
        if below(self.star_bound(dense, source, forbidden)) {
            return true;
        }
        let cuts = self.pairwise(w);
        forbidden.iter().any(|&f| below(cuts.get(source, f)))
    }

    fn boundary(&self, set: &[usize]) -> Boundary {
        let inside = |v: usize| set.contains(&v);
        let mut b = Boundary {
            edges: 0.0,
            one_inside: 0.0,
            two_inside: 0.0,
        };
        for &v in set {
            for &(u, e) in self.inst.neighbors(v) {
                if inside(u) {
                    continue;
                }
                b.edges += self.neg_edge[e];
                for &t in self.inst.triples_of_edge(e) {
                    let w = self.inst.third_vertex(t, e);
                    if inside(w) {
                        // {v, w, u} is met from both v and w
                        if v < w {
                            b.two_inside += self.neg_triple[t];
                        }
                    } else if u < w {
                        // {v, u, w} is met through vu and vw
                        b.one_inside += self.neg_triple[t];
                    }
                }
            }
        }
        b
    }

    /// Components of the subgraph of edges with negative cost or lying in a
    /// triple with negative cost. Every edge between components is fixed to 0.
    pub fn subset_separation(&self) -> Separation {
        let inst = self.inst;
        let threshold = self.slack;
        let mut linked = vec![false; inst.edge_count()];
        for (e, &c) in inst.edge_costs().iter().enumerate() {
            if c < threshold {
                linked[e] = true;
            }
        }
        for (t, &c) in inst.triple_costs().iter().enumerate() {
            if c < threshold {
                for e in inst.triple_edges(t) {
                    linked[e] = true;
                }
            }
        }
        let labels = connected_components(
            inst.vertex_count(),
            inst.edges()
                .iter()
                .enumerate()
                .filter(|(e, _)| linked[*e])
                .map(|(_, &pq)| pq),
        );
        let groups = groups_from_labels(&labels);
        let certificate = (groups.len() > 1).then(|| {
            let mut margin = f64::INFINITY;
            for (e, &(p, q)) in inst.edges().iter().enumerate() {
                if labels[p] != labels[q] {
                    margin = margin.min(inst.edge_cost(e) - threshold);
                    for &t in inst.triples_of_edge(e) {
                        margin = margin.min(inst.triple_cost(t) - threshold);
                    }
                }
            }
            Certificate {
                condition: Condition::Separation,
                kind: CertificateKind::Separation,
                target: (0..inst.vertex_count()).collect(),
                witnesses: groups.clone(),
                margin: if margin.is_finite() { margin } else { 0.0 },
            }
        });
        Separation {
            groups,
            certificate,
        }
    }

    /// `c_ij^+ ≥ min_U Σ_{T_δ(U)} c^- + Σ_{δ(U)} c^-` over `i ∈ U ∌ j`.
    pub fn edge_cut(&self, e: usize) -> Result<Option<Certificate>> {
        let (i, j) = self.inst.edge(e);
        let lhs = pos(self.inst.edge_cost(e)) - self.slack;
        if self.pruned(lhs, Weights::Neg, i, &[j]) {
            return Ok(None);
        }
        let (rhs, u) = min_constrained_cut_folded(self.inst, &self.folded_neg, i, &[j])?;
        let margin = lhs - rhs;
        Ok((margin >= 0.0).then(|| Certificate {
            condition: Condition::EdgeCut,
            kind: CertificateKind::EdgeFixed0,
            target: vec![i, j],
            witnesses: vec![u],
            margin,
        }))
    }

    /// Some apex `i` with `c_ijk^+ + c_ij^+ + c_ik^+ ≥` the `c^-` cut separating `i` from `{j, k}`.
    pub fn triplet_cut(&self, t: usize) -> Result<Option<Certificate>> {
        let tri = self.inst.triple(t);
        let ct = pos(self.inst.triple_cost(t));
        let mut best: Option<Certificate> = None;
        for a in 0..3 {
            let i = tri[a];
            let (j, k) = (tri[(a + 1) % 3], tri[(a + 2) % 3]);
            let (eij, eik) = (self.edge(i, j), self.edge(i, k));
            let lhs = ct + pos(self.inst.edge_cost(eij)) + pos(self.inst.edge_cost(eik)) - self.slack;
            if self.pruned(lhs, Weights::Neg, i, &[j, k]) {
                continue;
            }
            let (rhs, u) = min_constrained_cut_folded(self.inst, &self.folded_neg, i, &[j, k])?;
            let margin = lhs - rhs;
            if margin >= 0.0 && better(&best, margin) {
                best = Some(Certificate {
                    condition: Condition::TripletCut,
                    kind: CertificateKind::TripleCut,
                    target: tri.to_vec(),
                    witnesses: vec![u],
                    margin,
                });
            }
        }
        Ok(best)
    }

    /// `2c_ij^- + Σ_{T_ij} c^- ≥ min_U Σ_{T_δ(U)} |c| + Σ_{δ(U)} |c|` over `i ∈ U ∌ j`.
    pub fn edge_join(&self, e: usize) -> Result<Option<Certificate>> {
        let (i, j) = self.inst.edge(e);
        let lhs = 2.0 * self.neg_edge[e] + self.sum_triples_of(e, &self.neg_triple) - self.slack;
        if self.pruned(lhs, Weights::Abs, i, &[j]) {
            return Ok(None);
        }
        let (rhs, u) = min_constrained_cut_folded(self.inst, &self.folded_abs, i, &[j])?;
        let margin = lhs - rhs;
        Ok((margin >= 0.0).then(|| Certificate {
            condition: Condition::EdgeJoin,
            kind: CertificateKind::EdgeFixed1,
            target: vec![i, j],
            witnesses: vec![u],
            margin,
        }))
    }

    /// Product `x_ij x_ik x_jk = 1` for some apex `i`.
    pub fn triplet_join(&self, t: usize) -> Result<Option<Certificate>> {
        let tri = self.inst.triple(t);
        let mut best: Option<Certificate> = None;
        for a in 0..3 {
            let i = tri[a];
            let (j, k) = (tri[(a + 1) % 3], tri[(a + 2) % 3]);
            let (eij, eik, ejk) = (self.edge(i, j), self.edge(i, k), self.edge(j, k));
            let (cij, cik, cjk) = (
                self.inst.edge_cost(eij),
                self.inst.edge_cost(eik),
                self.inst.edge_cost(ejk),
            );
            let lhs = 2.0 * self.neg_triple[t]
                + 2.0 * neg(cij)
                + 2.0 * neg(cik)
                + neg(cjk)
                - self.positive_total
                + 0f64.min(cij).min(cik).min(cjk)
                - self.slack;
            if self.pruned(lhs, Weights::Neg, i, &[j, k]) {
                continue;
            }
            let (rhs, u) = min_constrained_cut_folded(self.inst, &self.folded_neg, i, &[j, k])?;
            let margin = lhs - rhs;
            if margin >= 0.0 && better(&best, margin) {
                best = Some(Certificate {
                    condition: Condition::TripletJoin,
                    kind: CertificateKind::TripleJoined,
                    target: tri.to_vec(),
                    witnesses: vec![u],
                    margin,
                });
            }
        }
        Ok(best)
    }

    /// `x_ik = 1` for an edge `ik` of the triple; `j` is the remaining vertex.
    pub fn triangle_edge_join(&self, t: usize) -> Result<Option<Certificate>> {
        let tri = self.inst.triple(t);
        let c_t = self.inst.triple_cost(t);
        let mut boundary: Option<f64> = None;
        let mut best: Option<Certificate> = None;
        for a in 0..3 {
            // middle vertex j, target edge ik with i < k
            let j = tri[a];
            let (i, k) = (tri[(a + 1) % 3].min(tri[(a + 2) % 3]), tri[(a + 1) % 3].max(tri[(a + 2) % 3]));
            let (eij, eik, ejk) = (self.edge(i, j), self.edge(i, k), self.edge(j, k));

            let sum = c_t + self.inst.edge_cost(eij) + self.inst.edge_cost(eik) + self.inst.edge_cost(ejk);
            // the boundary term only lowers m3
            if -sum - self.slack < 0.0 {
                continue;
            }
            let b = *boundary.get_or_insert_with(|| {
                let b = self.boundary(&tri);
                b.edges + b.one_inside
            });
            let m3 = -sum - b - self.slack;
            if m3 < 0.0 {
                continue;
            }

            let lhs1 = self.neg_triple[t]
                + 2.0 * self.neg_edge[eij]
                + 2.0 * self.neg_edge[eik]
                + self.sum_triples_of_pair(eij, eik, t, &self.neg_triple)
                - self.slack;
            let lhs2 = self.neg_triple[t]
                + 2.0 * self.neg_edge[ejk]
                + 2.0 * self.neg_edge[eik]
                + self.sum_triples_of_pair(ejk, eik, t, &self.neg_triple)
                - self.slack;
            if self.pruned(lhs1, Weights::Abs, i, &[j, k])
                || self.pruned(lhs2, Weights::Abs, k, &[i, j])
            {
                continue;
            }
            let (rhs1, u1) = min_constrained_cut_folded(self.inst, &self.folded_abs, i, &[j, k])?;
            let m1 = lhs1 - rhs1;
            if m1 < 0.0 {
                continue;
            }
            let (rhs2, u2) = min_constrained_cut_folded(self.inst, &self.folded_abs, k, &[i, j])?;
            let m2 = lhs2 - rhs2;
            if m2 < 0.0 {
                continue;
            }
            let margin = m1.min(m2).min(m3);
            if better(&best, margin) {
                best = Some(Certificate {
                    condition: Condition::TriangleEdgeJoin,
                    kind: CertificateKind::EdgeFixed1,
                    target: vec![i, k],
                    witnesses: vec![u1, u2],
                    margin,
                });
            }
        }
        Ok(best)
    }

    /// `c_ij ≤ Σ_{δ(ij) ∩ E^-} c + Σ_{T_δ(ij) ∩ T^-} c`.
    pub fn edge_subgraph_join(&self, e: usize) -> Option<Certificate> {
        let (i, j) = self.inst.edge(e);
        if self.inst.edge_cost(e) > -self.slack {
            return None;
        }
        let b = self.boundary(&[i, j]);
        let rhs = -(b.edges + b.one_inside + b.two_inside);
        let margin = rhs - self.inst.edge_cost(e) - self.slack;
        (margin >= 0.0).then(|| Certificate {
            condition: Condition::EdgeSubgraphJoin,
            kind: CertificateKind::EdgeFixed1,
            target: vec![i, j],
            witnesses: vec![],
            margin,
        })
    }

    /// The seven inequalities certifying `x_ik = 1` for an edge `ik` of the triple.
    pub fn triplet_subgraph_join(&self, t: usize) -> Option<Certificate> {
        let tri = self.inst.triple(t);
        let c_t = self.inst.triple_cost(t);
        let mut bound: Option<f64> = None;
        let mut best: Option<Certificate> = None;
        for a in 0..3 {
            let j = tri[a];
            let (i, k) = (tri[(a + 1) % 3].min(tri[(a + 2) % 3]), tri[(a + 1) % 3].max(tri[(a + 2) % 3]));
            let cij = self.inst.edge_cost(self.edge(i, j));
            let cik = self.inst.edge_cost(self.edge(i, k));
            let cjk = self.inst.edge_cost(self.edge(j, k));
            // each entry is `rhs - lhs` of an inequality `lhs ≤ rhs`
            let local = [
                -(cij + cik),
                -(cij + cjk),
                -(cik + cjk),
                -(cij + cik + cjk),
                -(cij + cik + cjk + 0.5 * c_t),
                -(cij + cik + c_t),
                -(cjk + cik + c_t),
            ];
            // the boundary bound only lowers the last two entries
            if local.iter().any(|&m| m < self.slack) {
                continue;
            }
            let b = *bound.get_or_insert_with(|| {
                let b = self.boundary(&tri);
                b.edges + b.one_inside + b.two_inside
            });
            let slacks = [&local[..5], &[local[5] - b, local[6] - b]].concat();
            let margin = slacks.into_iter().fold(f64::INFINITY, f64::min) - self.slack;
            if margin >= 0.0 && better(&best, margin) {
                best = Some(Certificate {
                    condition: Condition::TripletSubgraphJoin,
                    kind: CertificateKind::EdgeFixed1,
                    target: vec![i, k],
                    witnesses: vec![],
                    margin,
                });
            }
        }
        best
    }

    /// Grows a vertex set from edge `e` through adjacent vertices, keeping
    /// every internal edge and triple cost nonpositive.
    pub fn grow_subset(&self, e: usize) -> Vec<usize> {
        let inst = self.inst;
        let (i, j) = inst.edge(e);
        let mut inside = vec![false; inst.vertex_count()];
        inside[i] = true;
        inside[j] = true;
        let mut members = vec![i, j];
        loop {
            let mut grew = false;
            for v in 0..inst.vertex_count() {
                if inside[v] || !self.can_join(v, &inside) {
                    continue;
                }
                inside[v] = true;
                members.push(v);
                grew = true;
            }
            if !grew {
                break;
            }
        }
        members.sort_unstable();
        members
    }

    fn can_join(&self, v: usize, inside: &[bool]) -> bool {
        let mut adjacent = false;
        for &(u, e) in self.inst.neighbors(v) {
            if !inside[u] {
                continue;
            }
            adjacent = true;
            if self.inst.edge_cost(e) > 0.0 {
                return false;
            }
            for &t in self.inst.triples_of_edge(e) {
                let w = self.inst.third_vertex(t, e);
                if inside[w] && self.inst.triple_cost(t) > 0.0 {
                    return false;
                }
            }
        }
        adjacent
    }

    /// Tests the all-pairs subset join inequality for a given set `vh`.
    pub fn subset_join_candidate(&self, vh: &[usize]) -> Result<Option<Certificate>> {
        let inst = self.inst;
        let n = inst.vertex_count();
        let mut local = vec![usize::MAX; n];
        for (k, &v) in vh.iter().enumerate() {
            local[v] = k;
        }
        let internal = |e: usize| {
            let (p, q) = inst.edge(e);
            local[p] != usize::MAX && local[q] != usize::MAX
        };
        // internal costs must be nonpositive
        let mut weights = vec![0.0; inst.edge_count()];
        for e in 0..inst.edge_count() {
            if internal(e) {
                if inst.edge_cost(e) > 0.0 {
                    return Ok(None);
                }
                weights[e] = -inst.edge_cost(e);
            }
        }
        for t in 0..inst.triple_count() {
            if inst.triple(t).iter().all(|&v| local[v] != usize::MAX) {
                let c = inst.triple_cost(t);
                if c > 0.0 {
                    return Ok(None);
                }
                for e in inst.triple_edges(t) {
                    weights[e] -= 0.5 * c;
                }
            }
        }
        let mut graph = WeightedGraph::new(vh.len());
        for e in 0..inst.edge_count() {
            if internal(e) {
                let (p, q) = inst.edge(e);
                graph.add_edge(local[p], local[q], weights[e])?;
            }
        }
        let (cut, side) = global_min_cut(&graph)?;

        let mut outer: HashSet<usize> = HashSet::new();
        let mut boundary = 0.0;
        for &v in vh {
            for &(u, e) in inst.neighbors(v) {
                if local[u] != usize::MAX {
                    continue;
                }
                boundary += self.neg_edge[e];
                for &t in inst.triples_of_edge(e) {
                    if outer.insert(t) {
                        boundary += self.neg_triple[t];
                    }
                }
            }
        }
        let margin = cut - self.slack - boundary;
        Ok((margin >= 0.0).then(|| Certificate {
            condition: Condition::SubsetJoin,
            kind: CertificateKind::SubsetJoined,
            target: vh.to_vec(),
            witnesses: vec![side.iter().map(|&k| vh[k]).collect()],
            margin,
        }))
    }

    /// First grown candidate, seeded by nonpositive edges in canonical
    /// order, that passes [`Checker::subset_join_candidate`].
    pub fn subset_join(&self) -> Result<Option<Certificate>> {
        let mut tried: HashSet<Vec<usize>> = HashSet::new();
        for e in 0..self.inst.edge_count() {
            if self.inst.edge_cost(e) > 0.0 {
                continue;
            }
            let vh = self.grow_subset(e);
            if !tried.insert(vh.clone()) {
                continue;
            }
            if let Some(cert) = self.subset_join_candidate(&vh)? {
                return Ok(Some(cert));
            }
        }
        Ok(None)
    }
}

fn edge_of(inst: &Instance, p: usize, q: usize) -> Result<usize> {
    inst.edge_id(p, q).ok_or(Error::NotAnEdge(p, q))
}

fn triple_of(inst: &Instance, p: usize, q: usize, r: usize) -> Result<usize> {
    inst.triple_id(p, q, r).ok_or(Error::NotATriple(p, q, r))
}

pub fn check_subset_separation(inst: &Instance) -> Separation {
    Checker::new(inst, 0.0).subset_separation()
}

pub fn check_edge_cut(inst: &Instance, i: usize, j: usize) -> Result<Option<Certificate>> {
    Checker::new(inst, 0.0).edge_cut(edge_of(inst, i, j)?)
}

pub fn check_triplet_cut(inst: &Instance, i: usize, j: usize, k: usize) -> Result<Option<Certificate>> {
    Checker::new(inst, 0.0).triplet_cut(triple_of(inst, i, j, k)?)
}

pub fn check_edge_join(inst: &Instance, i: usize, j: usize) -> Result<Option<Certificate>> {
    Checker::new(inst, 0.0).edge_join(edge_of(inst, i, j)?)
}

pub fn check_triplet_join(inst: &Instance, i: usize, j: usize, k: usize) -> Result<Option<Certificate>> {
    Checker::new(inst, 0.0).triplet_join(triple_of(inst, i, j, k)?)
}

pub fn check_triangle_edge_join(
    inst: &Instance,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Option<Certificate>> {
    Checker::new(inst, 0.0).triangle_edge_join(triple_of(inst, i, j, k)?)
}

pub fn check_edge_subgraph_join(inst: &Instance, i: usize, j: usize) -> Result<Option<Certificate>> {
    Ok(Checker::new(inst, 0.0).edge_subgraph_join(edge_of(inst, i, j)?))
}

pub fn check_triplet_subgraph_join(
    inst: &Instance,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Option<Certificate>> {
    Ok(Checker::new(inst, 0.0).triplet_subgraph_join(triple_of(inst, i, j, k)?))
}

pub fn find_subset_join(inst: &Instance) -> Result<Option<Certificate>> {
    Checker::new(inst, 0.0).subset_join()
}
