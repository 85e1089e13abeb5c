//! Seeded synthetic instances: a planted partition with Gaussian costs and
//! equilateral triangles hidden in a noisy point cloud.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64(seed)`.
//! Stream 0 draws the topology (and point coordinates), stream 1 the costs,
//! so one topology can carry several cost draws.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::graphalg::DisjointSets;
use crate::instance::{Instance, Partition};

pub const SIGMA_0: f64 = 0.1;
pub const SIGMA_1: f64 = 0.4;

const TOPOLOGY_STREAM: u64 = 0;
const COST_STREAM: u64 = 1;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionConfig {
    /// The graph has `8n` vertices.
    pub n: usize,
    pub p_e: f64,
    pub alpha: f64,
    pub beta: f64,
    pub seed: u64,
}

impl PartitionConfig {
    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} = {v} outside [0, 1]")))
            }
        };
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be positive".into()));
        }
        unit("p_E", self.p_e)?;
        unit("alpha", self.alpha)?;
        unit("beta", self.beta)
    }

    pub fn sigma(&self) -> f64 {
        SIGMA_0 + self.alpha * (SIGMA_1 - SIGMA_0)
    }
}

/// Block sizes n, 2n, 2n, 3n.
pub fn planted_blocks(n: usize) -> Vec<Vec<usize>> {
    let bounds = [0, n, 3 * n, 5 * n, 8 * n];
    bounds.windows(2).map(|w| (w[0]..w[1]).collect()).collect()
}

/// All 3-cliques of the graph given by an adjacency matrix, sorted.
fn three_cliques(adj: &[Vec<bool>]) -> Vec<[usize; 3]> {
    let n = adj.len();
    let mut out = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            if !adj[p][q] {
                continue;
            }
            for r in q + 1..n {
                if adj[p][r] && adj[q][r] {
                    out.push([p, q, r]);
                }
            }
        }
    }
    out
}

fn edges_of(adj: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = adj.len();
    (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .filter(|&(p, q)| adj[p][q])
        .collect()
}

pub fn gen_partition(config: &PartitionConfig) -> Result<(Instance, Partition)> {
    config.validate()?;
    let blocks = planted_blocks(config.n);
    let nv = 8 * config.n;
    let mut block_of = vec![0; nv];
    for (b, vs) in blocks.iter().enumerate() {
        for &v in vs {
            block_of[v] = b;
        }
    }

    let mut topo = rng(config.seed, TOPOLOGY_STREAM);
    let mut adj = vec![vec![false; nv]; nv];
    for p in 0..nv {
        for q in p + 1..nv {
            if topo.random_bool(config.p_e) {
                adj[p][q] = true;
                adj[q][p] = true;
            }
        }
    }
    // connect every block by adding the pairs not yet path-connected inside it
    for vs in &blocks {
        let mut sets = DisjointSets::new(nv);
        for &p in vs {
            for &q in vs {
                if p < q && adj[p][q] {
                    sets.union(p, q);
                }
            }
        }
        for &p in vs {
            for &q in vs {
                if p < q && !sets.same(p, q) {
                    adj[p][q] = true;
                    adj[q][p] = true;
                    sets.union(p, q);
                }
            }
        }
    }

    let edges = edges_of(&adj);
    let triples = three_cliques(&adj);
    let mut costs = rng(config.seed, COST_STREAM);
    let sigma = config.sigma();
    let same = Normal::new(-1.0 + config.alpha, sigma).expect("positive deviation");
    let diff = Normal::new(1.0 - config.alpha, sigma).expect("positive deviation");
    let mut draw = |inside: bool, scale: f64| {
        let c = if inside { same.sample(&mut costs) } else { diff.sample(&mut costs) };
        // scaling by 0 must give +0 so that files print "0"
        c * scale + 0.0
    };
    let edge_costs: Vec<_> = edges
        .iter()
        .map(|&(p, q)| (p, q, draw(block_of[p] == block_of[q], 1.0 - config.beta)))
        .collect();
    let triple_costs: Vec<_> = triples
        .iter()
        .map(|&[p, q, r]| {
            let inside = block_of[p] == block_of[q] && block_of[q] == block_of[r];
            (p, q, r, draw(inside, config.beta))
        })
        .collect();
    let inst = Instance::new(nv, edge_costs, triple_costs, 0.0)?;
    Ok((inst, Partition::new(blocks)))
}

pub type Point = [f64; 2];

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricConfig {
    /// Points drawn around each triangle vertex.
    pub m: usize,
    pub sigma: f64,
    /// Nearest and farthest neighbors per point; `None` gives a complete graph.
    pub k: Option<usize>,
    pub triangle_vertices: [Point; 9],
    pub seed: u64,
}

impl GeometricConfig {
    pub fn new(m: usize, sigma: f64, k: Option<usize>, seed: u64) -> Self {
        GeometricConfig {
            m,
            sigma,
            k,
            triangle_vertices: default_triangle_vertices(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidConfig("m must be positive".into()));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidConfig(format!("sigma = {} must be positive", self.sigma)));
        }
        if self.k == Some(0) {
            return Err(Error::InvalidConfig("k must be positive".into()));
        }
        Ok(())
    }
}

/// Three unit-side equilateral triangles, centered at (0,0), (3,0) and
/// (6,1), rotated by 0, 20 and 45 degrees. The centers are far from
/// equilateral themselves, so triples across triangles are not rewarded.
pub fn default_triangle_vertices() -> [Point; 9] {
    let centers = [[0.0, 0.0], [3.0, 0.0], [6.0, 1.0]];
    let rotations = [0.0, PI / 9.0, PI / 4.0];
    let radius = 1.0 / 3f64.sqrt();
    let mut out = [[0.0; 2]; 9];
    for t in 0..3 {
        for j in 0..3 {
            let a = rotations[t] + 2.0 * PI * j as f64 / 3.0;
            out[3 * t + j] = [
                centers[t][0] + radius * a.cos(),
                centers[t][1] + radius * a.sin(),
            ];
        }
    }
    out
}

fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Cost of putting three points in one cluster.
pub fn triple_cost_geometric(a: Point, b: Point, c: Point, sigma: f64) -> f64 {
    let (ab, ac, bc) = (dist(a, b), dist(a, c), dist(b, c));
    let d_max = ab.max(ac).max(bc);
    let d_min = ab.min(ac).min(bc);
    let close = 4.0 * sigma;
    if d_max <= close {
        return -1.0 + d_max / close;
    }
    if d_min <= close {
        return 0.0;
    }
    // angle opposite side x, from the law of cosines
    let angle = |x: f64, y: f64, z: f64| ((y * y + z * z - x * x) / (2.0 * y * z)).clamp(-1.0, 1.0).acos();
    let delta = [angle(bc, ab, ac), angle(ac, ab, bc), angle(ab, ac, bc)]
        .iter()
        .map(|phi| (phi - PI / 3.0).abs())
        .sum::<f64>();
    if delta <= PI / 6.0 {
        -1.0 + 6.0 * delta / PI
    } else {
        6.0 / 7.0 * (delta - PI / 6.0) / PI
    }
}

/// Point `v * m + j` is the `j`-th point drawn around triangle vertex `v`.
pub fn gen_geometric(config: &GeometricConfig) -> Result<(Instance, Vec<Point>)> {
    config.validate()?;
    let m = config.m;
    let nv = 9 * m;
    let mut topo = rng(config.seed, TOPOLOGY_STREAM);
    let noise = Normal::new(0.0, config.sigma).expect("positive deviation");
    let mut points = Vec::with_capacity(nv);
    for v in 0..9 {
        let center = config.triangle_vertices[v];
        for _ in 0..m {
            let dx = noise.sample(&mut topo);
            let dy = noise.sample(&mut topo);
            points.push([center[0] + dx, center[1] + dy]);
        }
    }
    let triangle = |p: usize| p / m / 3;

    let mut adj = vec![vec![false; nv]; nv];
    let mut link = |p: usize, q: usize| {
        adj[p][q] = true;
        adj[q][p] = true;
    };
    match config.k {
        Some(k) if k < nv - 1 => {
            for p in 0..nv {
                for q in p + 1..nv {
                    if triangle(p) == triangle(q) {
                        link(p, q);
                    }
                }
            }
            for p in 0..nv {
                let mut others: Vec<(f64, usize)> = (0..nv)
                    .filter(|&q| q != p)
                    .map(|q| (dist(points[p], points[q]), q))
                    .collect();
                others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                for &(_, q) in &others[..k] {
                    link(p, q);
                }
                others.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
                for &(_, q) in &others[..k] {
                    link(p, q);
                }
            }
        }
        _ => {
            for p in 0..nv {
                for q in p + 1..nv {
                    link(p, q);
                }
            }
        }
    }

    let edges = edges_of(&adj).into_iter().map(|(p, q)| (p, q, 0.0));
    let triples: Vec<_> = three_cliques(&adj)
        .into_iter()
        .map(|[p, q, r]| {
            let c = triple_cost_geometric(points[p], points[q], points[r], config.sigma);
            (p, q, r, c + 0.0)
        })
        .collect();
    let inst = Instance::new(nv, edges, triples, 0.0)?;
    Ok((inst, points))
}

/// Random instance with integer costs in `[-range, range]`, each pair an edge
/// with probability `density` and a triple on every 3-clique.
pub fn random_integer_instance(n: usize, density: f64, range: i32, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    if !(0.0..=1.0).contains(&density) || range < 0 {
        return Err(Error::InvalidConfig(format!(
            "density {density} or range {range} out of bounds"
        )));
    }
    let mut topo = rng(seed, TOPOLOGY_STREAM);
    let mut adj = vec![vec![false; n]; n];
    for p in 0..n {
        for q in p + 1..n {
            if topo.random_bool(density) {
                adj[p][q] = true;
                adj[q][p] = true;
            }
        }
    }
    let mut costs = rng(seed, COST_STREAM);
    let mut draw = || costs.random_range(-range..=range) as f64;
    let edges: Vec<_> = edges_of(&adj).into_iter().map(|(p, q)| (p, q, draw())).collect();
    let triples: Vec<_> = three_cliques(&adj)
        .into_iter()
        .map(|[p, q, r]| (p, q, r, draw()))
        .collect();
    Instance::new(n, edges, triples, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphalg::connected_components;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn partition_sizes() {
        let cfg = PartitionConfig { n: 1, p_e: 0.3, alpha: 0.2, beta: 0.5, seed: 4 };
        let (inst, part) = gen_partition(&cfg).unwrap();
        assert_eq!(inst.vertex_count(), 8);
        let sizes: Vec<_> = part.blocks().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 2, 3]);

        let cfg = PartitionConfig { n: 7, p_e: 1.0, ..cfg };
        let (inst, _) = gen_partition(&cfg).unwrap();
        assert_eq!((inst.vertex_count(), inst.edge_count()), (56, 1540));
        assert_eq!(inst.triple_count(), binom(56, 3));
    }

    #[test]
    fn blocks_are_connected_after_repair() {
        for seed in 0..20 {
            let cfg = PartitionConfig { n: 2, p_e: 0.05, alpha: 0.5, beta: 0.5, seed };
            let (inst, part) = gen_partition(&cfg).unwrap();
            for b in part.blocks() {
                let sub = inst.induced(b).unwrap();
                let labels = connected_components(sub.vertex_count(), sub.edges().iter().copied());
                assert!(labels.iter().all(|&l| l == labels[0]));
            }
        }
    }

    #[test]
    fn beta_weights() {
        let cfg = PartitionConfig { n: 1, p_e: 1.0, alpha: 0.4, beta: 1.0, seed: 9 };
        let (inst, _) = gen_partition(&cfg).unwrap();
        assert!(inst.edge_costs().iter().all(|&c| c == 0.0 && c.is_sign_positive()));
        let (inst, _) = gen_partition(&PartitionConfig { beta: 0.0, ..cfg }).unwrap();
        assert!(inst.triple_costs().iter().all(|&c| c == 0.0));
    }

    #[test]
    fn same_topology_for_any_costs() {
        let a = PartitionConfig { n: 2, p_e: 0.4, alpha: 0.1, beta: 0.5, seed: 3 };
        let b = PartitionConfig { alpha: 0.9, ..a };
        let (ia, _) = gen_partition(&a).unwrap();
        let (ib, _) = gen_partition(&b).unwrap();
        assert_eq!(ia.edges(), ib.edges());
        assert_eq!(gen_partition(&a).unwrap().0, ia);
    }

    #[test]
    fn rejects_bad_parameters() {
        let cfg = PartitionConfig { n: 1, p_e: 1.5, alpha: 0.0, beta: 0.0, seed: 0 };
        assert!(gen_partition(&cfg).is_err());
        assert!(gen_geometric(&GeometricConfig::new(2, 0.0, None, 0)).is_err());
    }

    #[test]
    fn geometric_costs() {
        let s = 0.1;
        assert!((triple_cost_geometric([0.0, 0.0], [0.2, 0.0], [0.1, 0.05], s) + 0.5).abs() < 1e-12);
        let h = 3f64.sqrt() / 2.0;
        assert!((triple_cost_geometric([0.0, 0.0], [1.0, 0.0], [0.5, h], s) + 1.0).abs() < 1e-12);
        // right isosceles: angles 90, 45, 45 give delta = pi/3
        let c = triple_cost_geometric([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], s);
        assert!((c - 1.0 / 7.0).abs() < 1e-12);
        assert_eq!(triple_cost_geometric([0.0, 0.0], [0.1, 0.0], [5.0, 0.0], s), 0.0);
        assert_eq!(triple_cost_geometric([0.0, 0.0], [0.0, 0.0], [5.0, 0.0], s), 0.0);
    }

    #[test]
    fn geometric_sizes() {
        let (inst, pts) = gen_geometric(&GeometricConfig::new(7, 0.1, None, 1)).unwrap();
        assert_eq!((inst.vertex_count(), inst.edge_count(), pts.len()), (63, 1953, 63));
        assert_eq!(inst.triple_count(), binom(63, 3));
        assert!(inst.edge_costs().iter().all(|&c| c == 0.0));
        let (inst, _) = gen_geometric(&GeometricConfig::new(11, 0.1, Some(5), 1)).unwrap();
        assert_eq!(inst.vertex_count(), 99);
        // same-triangle pairs are always present
        assert!(inst.edge_count() >= 3 * binom(33, 2));
    }

    #[test]
    fn default_layout_is_unit_sided() {
        let v = default_triangle_vertices();
        for t in 0..3 {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                assert!((dist(v[3 * t + a], v[3 * t + b]) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn random_instance_is_deterministic() {
        let a = random_integer_instance(6, 0.7, 3, 11).unwrap();
        assert_eq!(a, random_integer_instance(6, 0.7, 3, 11).unwrap());
        assert!(a.edge_costs().iter().all(|c| c.fract() == 0.0 && c.abs() <= 3.0));
    }
}
