//! Brute-force reference solver for small instances.
//!
//! Feasible labelings are produced from restricted growth strings (one per
//! set partition) filtered to partitions whose blocks are connected.

use crate::error::{Error, Result};
use crate::graphalg::DisjointSets;
use crate::instance::{EdgeLabeling, Instance};

pub const ENUMERATION_BOUND: usize = 12;

const ABS_TOLERANCE: f64 = 1e-9;

/// Constraints a persistency certificate imposes on an optimal solution.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Fixations {
    /// `(edge id, value)`.
    pub edges: Vec<(usize, bool)>,
    /// Triples whose product `x_pq x_pr x_qr` must be 0.
    pub triples_zero: Vec<usize>,
    /// Triples whose product must be 1.
    pub triples_one: Vec<usize>,
}

impl Fixations {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.triples_zero.is_empty() && self.triples_one.is_empty()
    }

    pub fn extend(&mut self, other: &Fixations) {
        self.edges.extend_from_slice(&other.edges);
        self.triples_zero.extend_from_slice(&other.triples_zero);
        self.triples_one.extend_from_slice(&other.triples_one);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    pub minimum: f64,
    pub argmins: Vec<EdgeLabeling>,
}

/// Every feasible labeling of an instance with its objective, packed as bit
/// masks over the edges.
#[derive(Debug, Clone)]
pub struct ExactSolver {
    edge_count: usize,
    triple_masks: Vec<u128>,
    masks: Vec<u128>,
    objectives: Vec<f64>,
    minimum: f64,
    exact: bool,
}

fn mask_to_labeling(mask: u128, len: usize) -> EdgeLabeling {
    EdgeLabeling::from((0..len).map(|e| mask >> e & 1 == 1).collect::<Vec<_>>())
}

fn check_bound(inst: &Instance) -> Result<()> {
    if inst.vertex_count() > ENUMERATION_BOUND {
        return Err(Error::EnumerationBound {
            vertices: inst.vertex_count(),
            bound: ENUMERATION_BOUND,
        });
    }
    Ok(())
}

/// Calls `visit` with the edge mask of every feasible labeling.
fn for_each_feasible_mask(inst: &Instance, mut visit: impl FnMut(u128)) {
    let n = inst.vertex_count();
    let mut labels = vec![0usize; n];
    // restricted growth string: labels[0] = 0, labels[k] <= 1 + max(labels[..k])
    fn rec(
        inst: &Instance,
        k: usize,
        blocks: usize,
        labels: &mut Vec<usize>,
        visit: &mut dyn FnMut(u128),
    ) {
        let n = inst.vertex_count();
        if k == n {
            let mut sets = DisjointSets::new(n);
            let mut mask = 0u128;
            let mut merged = 0;
            for (e, &(p, q)) in inst.edges().iter().enumerate() {
                if labels[p] == labels[q] {
                    mask |= 1 << e;
                    if sets.union(p, q) {
                        merged += 1;
                    }
                }
            }
            // blocks are connected iff the 1-edges leave exactly `blocks` components
            if n - merged == blocks {
                visit(mask);
            }
            return;
        }
        for l in 0..=blocks {
            labels[k] = l;
            rec(inst, k + 1, blocks.max(l + 1), labels, visit);
        }
    }
    rec(inst, 1, 1, &mut labels, &mut visit);
}

/// Every feasible labeling exactly once.
pub fn enumerate_feasible(inst: &Instance) -> Result<Vec<EdgeLabeling>> {
    check_bound(inst)?;
    let mut out = Vec::new();
    for_each_feasible_mask(inst, |m| out.push(mask_to_labeling(m, inst.edge_count())));
    Ok(out)
}

pub fn solve_exact(inst: &Instance) -> Result<ExactResult> {
    let solver = ExactSolver::new(inst)?;
    Ok(ExactResult {
        minimum: solver.minimum(),
        argmins: solver.argmins(),
    })
}

/// Whether some optimal labeling satisfies every fixation.
pub fn verify_persistency(inst: &Instance, fixations: &Fixations) -> Result<bool> {
    Ok(ExactSolver::new(inst)?.verify(fixations))
}

impl ExactSolver {
    pub fn new(inst: &Instance) -> Result<Self> {
        check_bound(inst)?;
        let triple_masks = (0..inst.triple_count())
            .map(|t| inst.triple_edges(t).iter().fold(0u128, |m, &e| m | 1 << e))
            .collect::<Vec<_>>();
        let mut masks = Vec::new();
        for_each_feasible_mask(inst, |m| masks.push(m));
        let objectives: Vec<f64> = masks
            .iter()
            .map(|&m| {
                let mut total = inst.offset();
                for (e, &c) in inst.edge_costs().iter().enumerate() {
                    if m >> e & 1 == 1 {
                        total += c;
                    }
                }
                for (t, &c) in inst.triple_costs().iter().enumerate() {
                    if m & triple_masks[t] == triple_masks[t] {
                        total += c;
                    }
                }
                total
            })
            .collect();
        let minimum = objectives.iter().copied().fold(f64::INFINITY, f64::min);
        let exact = std::iter::once(inst.offset())
            .chain(inst.edge_costs().iter().copied())
            .chain(inst.triple_costs().iter().copied())
            .all(|c| c.fract() == 0.0);
        Ok(ExactSolver {
            edge_count: inst.edge_count(),
            triple_masks,
            masks,
            objectives,
            minimum,
            exact,
        })
    }

    pub fn minimum(&self) -> f64 {
        self.minimum
    }

    /// Number of feasible labelings.
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// True when all costs are integers, so comparisons are exact.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn same_value(&self, a: f64, b: f64) -> bool {
        if self.exact {
            a == b
        } else {
            (a - b).abs() <= ABS_TOLERANCE
        }
    }

    pub fn argmins(&self) -> Vec<EdgeLabeling> {
        self.masks
            .iter()
            .zip(&self.objectives)
            .filter(|(_, &v)| self.same_value(v, self.minimum))
            .map(|(&m, _)| mask_to_labeling(m, self.edge_count))
            .collect()
    }

    /// All feasible labelings with their objectives.
    pub fn labelings(&self) -> impl Iterator<Item = (EdgeLabeling, f64)> + '_ {
        self.masks
            .iter()
            .zip(&self.objectives)
            .map(|(&m, &v)| (mask_to_labeling(m, self.edge_count), v))
    }

    fn satisfies(&self, mask: u128, fix: &Fixations) -> bool {
        fix.edges.iter().all(|&(e, v)| (mask >> e & 1 == 1) == v)
            && fix
                .triples_zero
                .iter()
                .all(|&t| mask & self.triple_masks[t] != self.triple_masks[t])
            && fix
                .triples_one
                .iter()
                .all(|&t| mask & self.triple_masks[t] == self.triple_masks[t])
    }

    /// Minimum over feasible labelings meeting the fixations, if any exist.
    pub fn constrained_minimum(&self, fix: &Fixations) -> Option<f64> {
        self.masks
            .iter()
            .zip(&self.objectives)
            .filter(|(&m, _)| self.satisfies(m, fix))
            .map(|(_, &v)| v)
            .reduce(f64::min)
    }

    pub fn verify(&self, fix: &Fixations) -> bool {
        self.constrained_minimum(fix)
            .is_some_and(|v| self.same_value(v, self.minimum))
    }
}
