//! Constrained minimum cuts on instances with pair and triple weights.
//!
//! The search `min Σ_{T_δ(U)} w_pqr + Σ_{δ(U)} w_pq` over `U ∋ i` with
//! `U ∩ V_0 = ∅` is solved in three steps: triple weights are folded onto
//! their edges, the cut function is written as a quadratic pseudo-boolean
//! function of `y_p = [p ∈ U]`, and that function is minimized as an st-cut.

use crate::error::{Error, Result};
use crate::graphalg::{max_flow_min_cut, FlowNetwork};
use crate::instance::Instance;

/// `c'_pq = c_pq + ½ Σ_r c_pqr`. Cut values under `c'` equal the combined
/// pair and triple cut values, since a cut triple always has exactly two
/// of its edges in the cut.
pub fn fold_triples_into_edges(
    inst: &Instance,
    edge_weights: &[f64],
    triple_weights: &[f64],
) -> Result<Vec<f64>> {
    check_len(inst.edge_count(), edge_weights.len())?;
    check_len(inst.triple_count(), triple_weights.len())?;
    let mut folded = edge_weights.to_vec();
    for (t, &w) in triple_weights.iter().enumerate() {
        if w != 0.0 {
            for e in inst.triple_edges(t) {
                folded[e] += 0.5 * w;
            }
        }
    }
    Ok(folded)
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}

/// `constant + Σ linear_p y_p + Σ c_pq y_p y_q` over binary `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Qubo {
    /// Original vertex of each variable.
    pub variables: Vec<usize>,
    pub linear: Vec<f64>,
    /// `(a, b, c)` with variable indices `a < b`, one entry per pair.
    pub quadratic: Vec<(usize, usize, f64)>,
    pub constant: f64,
}

impl Qubo {
    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn evaluate(&self, y: &[bool]) -> f64 {
        let mut total = self.constant;
        for (k, &c) in self.linear.iter().enumerate() {
            if y[k] {
                total += c;
            }
        }
        for &(a, b, c) in &self.quadratic {
            if y[a] && y[b] {
                total += c;
            }
        }
        total
    }
}

/// Writes the cut value of `U = {source} ∪ {p : y_p = 1}` as a Qubo over the
/// vertices outside `forbidden ∪ {source}`.
pub fn cut_problem_to_qubo(
    inst: &Instance,
    edge_weights: &[f64],
    source: usize,
    forbidden: &[usize],
) -> Result<Qubo> {
    check_len(inst.edge_count(), edge_weights.len())?;
    let n = inst.vertex_count();
    // 0 = free, 1 = source, 2 = forbidden
    let mut role = vec![0u8; n];
    for &v in forbidden {
        if v >= n {
            return Err(Error::InvalidVertex { vertex: v, count: n });
        }
        role[v] = 2;
    }
    if source >= n {
        return Err(Error::InvalidVertex {
            vertex: source,
            count: n,
        });
    }
    if role[source] == 2 {
        return Err(Error::SourceForbidden(source));
    }
    role[source] = 1;

    let mut index = vec![usize::MAX; n];
    let mut variables = Vec::new();
    for v in 0..n {
        if role[v] == 0 {
            index[v] = variables.len();
            variables.push(v);
        }
    }
    let mut linear = vec![0.0; variables.len()];
    let mut quadratic = Vec::new();
    let mut constant = 0.0;
    for (e, &(p, q)) in inst.edges().iter().enumerate() {
        let w = edge_weights[e];
        match (role[p], role[q]) {
            (0, 0) => {
                linear[index[p]] += w;
                linear[index[q]] += w;
                quadratic.push((index[p], index[q], -2.0 * w));
            }
            (0, 1) => {
                linear[index[p]] -= w;
                constant += w;
            }
            (1, 0) => {
                linear[index[q]] -= w;
                constant += w;
            }
            (0, 2) => linear[index[p]] += w,
            (2, 0) => linear[index[q]] += w,
            (1, 2) | (2, 1) => constant += w,
            _ => {}
        }
    }
    Ok(Qubo {
        variables,
        linear,
        quadratic,
        constant,
    })
}

/// St-network whose minimum cut plus the returned constant equals the Qubo
/// minimum. Node `k < qubo.len()` is variable `k`; `s` and `t` follow.
/// The variable is 1 iff its node is on the source side.
pub fn qubo_to_flow(qubo: &Qubo) -> Result<(FlowNetwork, f64)> {
    let k = qubo.len();
    let (s, t) = (k, k + 1);
    let mut unary = qubo.linear.clone();
    for &(a, b, c) in &qubo.quadratic {
        if c > 0.0 {
            return Err(Error::NonSubmodular {
                p: qubo.variables[a],
                q: qubo.variables[b],
                coefficient: c,
            });
        }
        unary[a] += 0.5 * c;
        unary[b] += 0.5 * c;
    }
    let mut net = FlowNetwork::new(k + 2, s, t);
    let mut constant = qubo.constant;
    for &(a, b, c) in &qubo.quadratic {
        net.add_arc(a, b, -0.5 * c)?;
        net.add_arc(b, a, -0.5 * c)?;
    }
    for (p, &u) in unary.iter().enumerate() {
        if u > 0.0 {
            net.add_arc(p, t, u)?;
        } else if u < 0.0 {
            net.add_arc(s, p, -u)?;
            constant += u;
        }
    }
    Ok((net, constant))
}

/// Minimizes a Qubo with nonpositive quadratic terms. Among minimizers the
/// one with the fewest ones (residual-reachable side) is returned.
pub fn minimize_submodular_qubo(qubo: &Qubo) -> Result<(f64, Vec<bool>)> {
    let (net, constant) = qubo_to_flow(qubo)?;
    let cut = max_flow_min_cut(&net)?;
    let y = cut.source_side[..qubo.len()].to_vec();
    Ok((cut.value + constant, y))
}

/// Exact `min Σ_{T_δ(U)} w_pqr + Σ_{δ(U)} w_pq` over `U ∋ source`,
/// `U ∩ forbidden = ∅`. Weights must be nonnegative. Returns the value and
/// the minimal minimizing `U`, ascending.
pub fn min_constrained_cut(
    inst: &Instance,
    edge_weights: &[f64],
    triple_weights: &[f64],
    source: usize,
    forbidden: &[usize],
) -> Result<(f64, Vec<usize>)> {
    if let Some(&w) = edge_weights
        .iter()
        .chain(triple_weights)
        .find(|&&w| !(w >= 0.0))
    {
        return Err(Error::NegativeCapacity(w));
    }
    let folded = fold_triples_into_edges(inst, edge_weights, triple_weights)?;
    min_constrained_cut_folded(inst, &folded, source, forbidden)
}

/// As [`min_constrained_cut`] with triple weights already folded in.
pub fn min_constrained_cut_folded(
    inst: &Instance,
    folded: &[f64],
    source: usize,
    forbidden: &[usize],
) -> Result<(f64, Vec<usize>)> {
    let qubo = cut_problem_to_qubo(inst, folded, source, forbidden)?;
    let (value, y) = minimize_submodular_qubo(&qubo)?;
    let mut side: Vec<usize> = qubo
        .variables
        .iter()
        .zip(&y)
        .filter(|(_, &b)| b)
        .map(|(&v, _)| v)
        .collect();
    side.push(source);
    side.sort_unstable();
    Ok((value, side))
}
