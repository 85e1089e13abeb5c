//! Cubic multicut view. Variables are cut indicators `z = 1 − x` on edges
//! and `y = 1 − x_pq x_pr x_qr` on triples, and
//! `φ_CCP(x) = C − φ_CMCP(z, y)` with
//! `φ_CMCP(z, y) = c_∅ + Σ c_pq z_pq + Σ c_pqr y_pqr`.

use std::fmt::Write as _;

use super::{EdgeLabeling, Instance};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MulticutInstance {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub z_costs: Vec<f64>,
    pub triples: Vec<[usize; 3]>,
    pub y_costs: Vec<f64>,
    /// Constant inside the multicut objective.
    pub offset: f64,
    /// `C = Σ c_T + Σ c_E + 2 c_∅`.
    pub constant: f64,
}

pub fn to_cubic_multicut(inst: &Instance) -> MulticutInstance {
    let sum_e: f64 = inst.edge_costs().iter().sum();
    let sum_t: f64 = inst.triple_costs().iter().sum();
    MulticutInstance {
        vertex_count: inst.vertex_count(),
        edges: inst.edges().to_vec(),
        z_costs: inst.edge_costs().to_vec(),
        triples: inst.triples().to_vec(),
        y_costs: inst.triple_costs().to_vec(),
        offset: inst.offset(),
        constant: sum_t + sum_e + 2.0 * inst.offset(),
    }
}

impl MulticutInstance {
    /// Image `(z, y)` of a clustering labeling.
    pub fn image(&self, inst: &Instance, x: &EdgeLabeling) -> Result<(Vec<bool>, Vec<bool>)> {
        if x.len() != self.edges.len() {
            return Err(Error::DimensionMismatch {
                expected: self.edges.len(),
                actual: x.len(),
            });
        }
        let z = x.values().iter().map(|&b| !b).collect();
        let y = (0..inst.triple_count())
            .map(|t| !inst.triple_edges(t).iter().all(|&e| x.get(e)))
            .collect();
        Ok((z, y))
    }

    pub fn objective(&self, z: &[bool], y: &[bool]) -> Result<f64> {
        if z.len() != self.z_costs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.z_costs.len(),
                actual: z.len(),
            });
        }
        if y.len() != self.y_costs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.y_costs.len(),
                actual: y.len(),
            });
        }
        let mut total = self.offset;
        for (&b, &c) in z.iter().zip(&self.z_costs) {
            if b {
                total += c;
            }
        }
        for (&b, &c) in y.iter().zip(&self.y_costs) {
            if b {
                total += c;
            }
        }
        Ok(total)
    }
}

/// `CMC <n>`, `C <constant>`, `c <offset>`, then `z p q v` and `y p q r v` lines.
pub fn write_multicut(mc: &MulticutInstance) -> String {
    let mut out = String::new();
    writeln!(out, "CMC {}", mc.vertex_count).unwrap();
    writeln!(out, "C {}", mc.constant).unwrap();
    writeln!(out, "c {}", mc.offset).unwrap();
    for (&(p, q), c) in mc.edges.iter().zip(&mc.z_costs) {
        writeln!(out, "z {p} {q} {c}").unwrap();
    }
    for (&[p, q, r], c) in mc.triples.iter().zip(&mc.y_costs) {
        writeln!(out, "y {p} {q} {r} {c}").unwrap();
    }
    out
}
