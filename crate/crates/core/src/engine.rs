//! Recursive application of the conditions.
//!
//! Each work item is a sub-instance whose vertices stand for groups of
//! original vertices. The loop separates it into components, contracts as
//! soon as a join condition fires, and otherwise records all cut
//! certificates at once and stops. Every certificate is translated to
//! original edges and triples when it is recorded.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::conditions::{Certificate, CertificateKind, Checker, Condition};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::maps::contract_edge;
use crate::oracle::{ExactSolver, Fixations};

#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    pub enabled: BTreeSet<Condition>,
    pub slack: f64,
    pub join_order: Vec<Condition>,
    pub time_limit: Option<Duration>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            enabled: Condition::ALL.into_iter().collect(),
            slack: 0.0,
            join_order: Condition::JOIN_ORDER.to_vec(),
            time_limit: None,
        }
    }
}

impl EngineConfig {
    /// Configuration with only the listed conditions enabled.
    pub fn only(conditions: &[Condition]) -> Self {
        EngineConfig {
            enabled: conditions.iter().copied().collect(),
            ..Default::default()
        }
    }

    pub fn is_enabled(&self, c: Condition) -> bool {
        self.enabled.contains(&c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.slack >= 0.0) {
            return Err(Error::InvalidConfig(format!("slack {} must be nonnegative", self.slack)));
        }
        if let Some(c) = self.join_order.iter().find(|c| !c.is_join()) {
            return Err(Error::InvalidConfig(format!("{c} is not a join condition")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeStatus {
    Free,
    Fixed0,
    Fixed1,
}

/// One applied certificate in original vertex labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub condition: Condition,
    /// Representative original vertex of every target vertex.
    pub target: Vec<usize>,
    pub witnesses: Vec<Vec<usize>>,
    pub margin: f64,
}

impl Event {
    /// `<condition> <target> <witness> <margin>`.
    pub fn to_line(&self) -> String {
        let join = |v: &[usize], sep: &str| {
            v.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
        };
        let witness = if self.witnesses.iter().all(Vec::is_empty) {
            "-".to_string()
        } else {
            self.witnesses
                .iter()
                .map(|w| join(w, ","))
                .collect::<Vec<_>>()
                .join(";")
        };
        format!(
            "{} {} {} {}",
            self.condition,
            join(&self.target, "-"),
            witness,
            self.margin
        )
    }
}

/// A remaining sub-instance; local vertex `v` stands for `groups[v]`.
#[derive(Debug, Clone)]
pub struct ReducedComponent {
    pub instance: Instance,
    pub groups: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct PersistencyState {
    pub original: Instance,
    /// Smallest original vertex of the merged group of every vertex.
    pub representative: Vec<usize>,
    pub edge_status: Vec<EdgeStatus>,
    pub triples_zero: BTreeSet<usize>,
    pub triples_one: BTreeSet<usize>,
    /// Final component of every original vertex.
    pub component: Vec<usize>,
    /// Constants of components that were split off by separation.
    pub offset: f64,
    pub events: Vec<Event>,
    pub timed_out: bool,
    pub components: Vec<ReducedComponent>,
    pub runtime: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub fixed_edge_fraction: f64,
    pub fixed_triple_fraction: f64,
    pub runtime: Duration,
}

impl PersistencyState {
    fn new(original: &Instance) -> Self {
        let n = original.vertex_count();
        PersistencyState {
            original: original.clone(),
            representative: (0..n).collect(),
            edge_status: vec![EdgeStatus::Free; original.edge_count()],
            triples_zero: BTreeSet::new(),
            triples_one: BTreeSet::new(),
            component: vec![0; n],
            offset: 0.0,
            events: Vec::new(),
            timed_out: false,
            components: Vec::new(),
            runtime: Duration::ZERO,
        }
    }

    /// State with no certificates, for hand-built fixations in tests.
    pub fn empty(original: &Instance) -> Self {
        let mut s = PersistencyState::new(original);
        s.components.push(ReducedComponent {
            instance: original.clone(),
            groups: (0..original.vertex_count()).map(|v| vec![v]).collect(),
        });
        s
    }

    pub fn fixations(&self) -> Fixations {
        Fixations {
            edges: self
                .edge_status
                .iter()
                .enumerate()
                .filter_map(|(e, s)| match s {
                    EdgeStatus::Free => None,
                    EdgeStatus::Fixed0 => Some((e, false)),
                    EdgeStatus::Fixed1 => Some((e, true)),
                })
                .collect(),
            triples_zero: self.triples_zero.iter().copied().collect(),
            triples_one: self.triples_one.iter().copied().collect(),
        }
    }

    pub fn set_edge(&mut self, e: usize, status: EdgeStatus) {
        debug_assert!(
            self.edge_status[e] == EdgeStatus::Free || self.edge_status[e] == status,
            "edge {:?} fixed both ways",
            self.original.edge(e)
        );
        self.edge_status[e] = status;
    }

    pub fn event_log(&self) -> String {
        let mut out = String::new();
        for ev in &self.events {
            writeln!(out, "{}", ev.to_line()).unwrap();
        }
        out
    }

    /// Disjoint union of the remaining components, with the accumulated
    /// offset, and the original vertex group of each of its vertices.
    pub fn reduced_instance(&self) -> Result<(Instance, Vec<Vec<usize>>)> {
        let mut edges = Vec::new();
        let mut triples = Vec::new();
        let mut groups = Vec::new();
        let mut offset = self.offset;
        for comp in &self.components {
            let base = groups.len();
            let inst = &comp.instance;
            for (&(p, q), &c) in inst.edges().iter().zip(inst.edge_costs()) {
                edges.push((base + p, base + q, c));
            }
            for (&[p, q, r], &c) in inst.triples().iter().zip(inst.triple_costs()) {
                triples.push((base + p, base + q, base + r, c));
            }
            offset += inst.offset();
            groups.extend(comp.groups.iter().cloned());
        }
        Ok((Instance::new(groups.len(), edges, triples, offset)?, groups))
    }

    pub fn stats(&self) -> Stats {
        let m = self.original.edge_count();
        let fixed_edges = self
            .edge_status
            .iter()
            .filter(|&&s| s != EdgeStatus::Free)
            .count();
        let fixed_edge_fraction = if m == 0 {
            1.0
        } else {
            fixed_edges as f64 / m as f64
        };
        let t_count = self.original.triple_count();
        let fixed_triples = (0..t_count)
            .filter(|t| {
                self.triples_zero.contains(t)
                    || self.triples_one.contains(t)
                    || self
                        .original
                        .triple_edges(*t)
                        .iter()
                        .all(|&e| self.edge_status[e] != EdgeStatus::Free)
            })
            .count();
        let fixed_triple_fraction = if t_count == 0 {
            1.0
        } else {
            fixed_triples as f64 / t_count as f64
        };
        Stats {
            fixed_edge_fraction,
            fixed_triple_fraction,
            runtime: self.runtime,
        }
    }
}

/// Whether the best labeling meeting every recorded fixation is optimal.
/// Uses exhaustive enumeration, so the instance must be small.
pub fn verify(state: &PersistencyState) -> Result<bool> {
    Ok(ExactSolver::new(&state.original)?.verify(&state.fixations()))
}

struct WorkItem {
    instance: Instance,
    groups: Vec<Vec<usize>>,
}

struct Run<'c> {
    config: &'c EngineConfig,
    state: PersistencyState,
    deadline: Option<Instant>,
    // local index per original vertex for the item being processed
    local: Vec<usize>,
}

impl Run<'_> {
    fn expired(&mut self) -> bool {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.state.timed_out = true;
            }
        }
        self.state.timed_out
    }

    fn set_local(&mut self, groups: &[Vec<usize>]) {
        for (v, g) in groups.iter().enumerate() {
            for &o in g {
                self.local[o] = v;
            }
        }
    }

    /// Applies `status` to every original edge between `groups[p]` and `groups[q]`.
    fn fix_between(&mut self, groups: &[Vec<usize>], p: usize, q: usize, status: EdgeStatus) {
        for &a in &groups[p] {
            for &b in &groups[q] {
                if let Some(e) = self.state.original.edge_id(a, b) {
                    self.state.set_edge(e, status);
                }
            }
        }
    }

    /// Original triples with one vertex in each of the three groups.
    fn triples_across(&self, groups: &[Vec<usize>], p: usize, q: usize, r: usize) -> Vec<usize> {
        let orig = &self.state.original;
        let mut out = Vec::new();
        for &a in &groups[p] {
            for &b in &groups[q] {
                if let Some(e) = orig.edge_id(a, b) {
                    for &t in orig.triples_of_edge(e) {
                        if self.local[orig.third_vertex(t, e)] == r {
                            out.push(t);
                        }
                    }
                }
            }
        }
        out
    }

    fn record(&mut self, inst: &Instance, groups: &[Vec<usize>], cert: &Certificate) {
        let rep = |v: usize| groups[v][0];
        self.state.events.push(Event {
            condition: cert.condition,
            target: match cert.kind {
                CertificateKind::Separation => Vec::new(),
                _ => cert.target.iter().map(|&v| rep(v)).collect(),
            },
            witnesses: cert
                .witnesses
                .iter()
                .map(|w| w.iter().map(|&v| rep(v)).collect())
                .collect(),
            margin: cert.margin,
        });
        let t = &cert.target;
        match cert.kind {
            CertificateKind::EdgeFixed0 => self.fix_between(groups, t[0], t[1], EdgeStatus::Fixed0),
            CertificateKind::EdgeFixed1 => self.fix_between(groups, t[0], t[1], EdgeStatus::Fixed1),
            CertificateKind::TripleCut => {
                let ts = self.triples_across(groups, t[0], t[1], t[2]);
                self.state.triples_zero.extend(ts);
            }
            CertificateKind::TripleJoined => {
                let ts = self.triples_across(groups, t[0], t[1], t[2]);
                self.state.triples_one.extend(ts);
                for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                    self.fix_between(groups, a, b, EdgeStatus::Fixed1);
                }
            }
            CertificateKind::SubsetJoined => {
                for (a, &p) in t.iter().enumerate() {
                    for &q in &t[a + 1..] {
                        self.fix_between(groups, p, q, EdgeStatus::Fixed1);
                    }
                }
            }
            CertificateKind::Separation => {
                let mut group_of = vec![0; inst.vertex_count()];
                for (g, members) in cert.witnesses.iter().enumerate() {
                    for &v in members {
                        group_of[v] = g;
                    }
                }
                for &(p, q) in inst.edges() {
                    if group_of[p] != group_of[q] {
                        self.fix_between(groups, p, q, EdgeStatus::Fixed0);
                    }
                }
            }
        }
    }

    /// Contracts the local edges in order, following the renumbering.
    fn contract(&self, item: WorkItem, pairs: &[(usize, usize)]) -> Result<WorkItem> {
        let WorkItem {
            mut instance,
            mut groups,
        } = item;
        let mut current: Vec<usize> = (0..instance.vertex_count()).collect();
        for &(p, q) in pairs {
            let r = contract_edge(&instance, current[p], current[q])?;
            let mut merged = vec![Vec::new(); r.instance.vertex_count()];
            for (v, g) in groups.into_iter().enumerate() {
                merged[r.vertex_map[v]].extend(g);
            }
            for g in &mut merged {
                g.sort_unstable();
            }
            for c in &mut current {
                *c = r.vertex_map[*c];
            }
            groups = merged;
            instance = r.instance;
        }
        Ok(WorkItem { instance, groups })
    }

    fn find_join(&mut self, checker: &Checker) -> Result<Option<Certificate>> {
        let inst = checker.instance();
        for &cond in &self.config.join_order {
            if !self.config.is_enabled(cond) {
                continue;
            }
            let found = match cond {
                Condition::SubsetJoin => checker.subset_join()?,
                Condition::EdgeJoin => self.scan(inst.edge_count(), |e| checker.edge_join(e))?,
                Condition::TriangleEdgeJoin => {
                    self.scan(inst.triple_count(), |t| checker.triangle_edge_join(t))?
                }
                Condition::EdgeSubgraphJoin => {
                    self.scan(inst.edge_count(), |e| Ok(checker.edge_subgraph_join(e)))?
                }
                Condition::TripletSubgraphJoin => {
                    self.scan(inst.triple_count(), |t| Ok(checker.triplet_subgraph_join(t)))?
                }
                Condition::TripletJoin => {
                    self.scan(inst.triple_count(), |t| checker.triplet_join(t))?
                }
                _ => None,
            };
            if found.is_some() || self.state.timed_out {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn scan(
        &mut self,
        count: usize,
        mut check: impl FnMut(usize) -> Result<Option<Certificate>>,
    ) -> Result<Option<Certificate>> {
        for id in 0..count {
            if id % 64 == 0 && self.expired() {
                return Ok(None);
            }
            if let Some(c) = check(id)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    fn process(&mut self, mut item: WorkItem, stack: &mut Vec<WorkItem>) -> Result<()> {
        loop {
            self.set_local(&item.groups);
            if item.instance.edge_count() == 0 || self.expired() {
                break;
            }
            let checker = Checker::new(&item.instance, self.config.slack);

            if self.config.is_enabled(Condition::Separation) {
                let sep = checker.subset_separation();
                if let Some(cert) = &sep.certificate {
                    self.record(&item.instance, &item.groups, cert);
                    self.state.offset += item.instance.offset();
                    for g in sep.groups.iter().rev() {
                        stack.push(WorkItem {
                            instance: item.instance.induced(g)?,
                            groups: g.iter().map(|&v| item.groups[v].clone()).collect(),
                        });
                    }
                    return Ok(());
                }
            }

            if let Some(cert) = self.find_join(&checker)? {
                self.record(&item.instance, &item.groups, &cert);
                let t = &cert.target;
                let pairs: Vec<(usize, usize)> = match cert.kind {
                    CertificateKind::EdgeFixed1 => vec![(t[0], t[1])],
                    CertificateKind::TripleJoined => vec![(t[0], t[1]), (t[0], t[2])],
                    CertificateKind::SubsetJoined => spanning_tree(&item.instance, t),
                    _ => unreachable!("join certificate"),
                };
                drop(checker);
                item = self.contract(item, &pairs)?;
                continue;
            }
            if self.state.timed_out {
                break;
            }

            let mut cuts = Vec::new();
            if self.config.is_enabled(Condition::EdgeCut) {
                for e in 0..item.instance.edge_count() {
                    if e % 64 == 0 && self.expired() {
                        break;
                    }
                    if let Some(c) = checker.edge_cut(e)? {
                        cuts.push(c);
                    }
                }
            }
            if self.config.is_enabled(Condition::TripletCut) {
                for t in 0..item.instance.triple_count() {
                    if t % 64 == 0 && self.expired() {
                        break;
                    }
                    if let Some(c) = checker.triplet_cut(t)? {
                        cuts.push(c);
                    }
                }
            }
            drop(checker);
            for c in &cuts {
                self.record(&item.instance, &item.groups, c);
            }
            break;
        }
        self.state.components.push(ReducedComponent {
            instance: item.instance,
            groups: item.groups,
        });
        Ok(())
    }
}

/// BFS tree over the edges inside `vertices`, rooted at the smallest one.
fn spanning_tree(inst: &Instance, vertices: &[usize]) -> Vec<(usize, usize)> {
    let mut inside = vec![false; inst.vertex_count()];
    for &v in vertices {
        inside[v] = true;
    }
    let root = *vertices.iter().min().expect("nonempty set");
    let mut seen = vec![false; inst.vertex_count()];
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut tree = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &(w, _) in inst.neighbors(u) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                tree.push((u, w));
                queue.push_back(w);
            }
        }
    }
    tree
}

/// Applies the enabled conditions until no join fires, then records the
/// cut certificates of the remaining components.
pub fn reduce(inst: &Instance, config: &EngineConfig) -> Result<PersistencyState> {
    config.validate()?;
    let start = Instant::now();
    let mut run = Run {
        config,
        state: PersistencyState::new(inst),
        deadline: config.time_limit.map(|d| start + d),
        local: vec![0; inst.vertex_count()],
    };
    let mut stack = vec![WorkItem {
        instance: inst.clone(),
        groups: (0..inst.vertex_count()).map(|v| vec![v]).collect(),
    }];
    while let Some(item) = stack.pop() {
        if run.state.timed_out {
            run.state.components.push(ReducedComponent {
                instance: item.instance,
                groups: item.groups,
            });
            continue;
        }
        run.process(item, &mut stack)?;
    }

    let mut state = run.state;
    state.components.sort_by_key(|c| c.groups[0][0]);
    for (k, comp) in state.components.iter().enumerate() {
        for g in &comp.groups {
            for &v in g {
                state.component[v] = k;
                state.representative[v] = g[0];
            }
        }
    }
    state.runtime = start.elapsed();
    Ok(state)
}
