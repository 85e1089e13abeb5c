mod common;

use common::{brute_min_cut, random_instance, rng, Reference};
use cubic_persistency::conditions::*;
use cubic_persistency::instance::{neg, pos};
use cubic_persistency::Instance;

fn inst(n: usize, edges: &[(usize, usize, f64)], triples: &[(usize, usize, usize, f64)]) -> Instance {
    Instance::new(n, edges.iter().copied(), triples.iter().copied(), 0.0).unwrap()
}

fn worked_example() -> Instance {
    inst(3, &[(0, 1, -2.0), (0, 2, -2.0), (1, 2, -2.0)], &[(0, 1, 2, 5.0)])
}

fn negative_triangle(triple: f64) -> Instance {
    inst(3, &[(0, 1, -1.0), (0, 2, -1.0), (1, 2, -1.0)], &[(0, 1, 2, triple)])
}

fn assert_persistent(i: &Instance, cert: &Certificate) {
    let r = Reference::new(i);
    assert!(r.persistent(i, &cert.fixations(i)), "{cert:?}");
}

fn brute_cut(i: &Instance, ew: impl Fn(f64) -> f64, tw: impl Fn(f64) -> f64, s: usize, forbidden: &[usize]) -> f64 {
    let ew: Vec<f64> = i.edge_costs().iter().map(|&c| ew(c)).collect();
    let tw: Vec<f64> = i.triple_costs().iter().map(|&c| tw(c)).collect();
    brute_min_cut(i, &ew, &tw, s, forbidden)
}

#[test]
fn separation_examples() {
    let i = inst(4, &[(0, 1, -1.0), (2, 3, -1.0), (0, 2, 2.0)], &[]);
    let sep = check_subset_separation(&i);
    assert_eq!(sep.groups, vec![vec![0, 1], vec![2, 3]]);
    let cert = sep.certificate.unwrap();
    assert_eq!(cert.fixations(&i).edges, vec![(i.edge_id(0, 2).unwrap(), false)]);
    assert_persistent(&i, &cert);

    let sep = check_subset_separation(&negative_triangle(-1.0));
    assert_eq!(sep.groups.len(), 1);
    assert!(sep.certificate.is_none());

    let i = inst(3, &[(0, 1, 1.0), (1, 2, 0.0)], &[]);
    let sep = check_subset_separation(&i);
    assert_eq!(sep.groups, vec![vec![0], vec![1], vec![2]]);
    assert_eq!(sep.certificate.unwrap().fixations(&i).edges.len(), 2);
}

#[test]
fn edge_cut_examples() {
    let i = inst(3, &[(0, 1, 3.0), (0, 2, -1.0), (1, 2, -1.0)], &[]);
    let cert = check_edge_cut(&i, 0, 1).unwrap().unwrap();
    assert_eq!(cert.margin, 2.0);
    assert_eq!(Reference::new(&i).minimum, -1.0);
    assert_persistent(&i, &cert);

    assert!(check_edge_cut(&worked_example(), 0, 1).unwrap().is_none());
    assert_eq!(brute_cut(&worked_example(), neg, neg, 0, &[1]), 4.0);

    let i = inst(2, &[(0, 1, 2.5)], &[]);
    assert_eq!(check_edge_cut(&i, 0, 1).unwrap().unwrap().margin, 2.5);
}

#[test]
fn triplet_cut_examples() {
    let ex = worked_example();
    let cert = check_triplet_cut(&ex, 0, 1, 2).unwrap().unwrap();
    assert_eq!(cert.margin, 5.0 - brute_cut(&ex, neg, neg, 0, &[1, 2]));
    assert_eq!(cert.margin, 1.0);
    assert_persistent(&ex, &cert);

    assert!(check_triplet_cut(&negative_triangle(-1.0), 0, 1, 2).unwrap().is_none());

    let i = negative_triangle(100.0);
    let cert = check_triplet_cut(&i, 0, 1, 2).unwrap().unwrap();
    assert_eq!(cert.witnesses, vec![vec![0]]);
    assert_eq!(cert.margin, 98.0);
}

#[test]
fn edge_join_examples() {
    let i = inst(3, &[(0, 1, -5.0), (0, 2, 1.0), (1, 2, -1.0)], &[]);
    let cert = check_edge_join(&i, 0, 1).unwrap().unwrap();
    assert_eq!(brute_cut(&i, f64::abs, f64::abs, 0, &[1]), 6.0);
    assert_eq!(cert.margin, 4.0);
    assert_eq!(Reference::new(&i).minimum, -5.0);
    assert_persistent(&i, &cert);

    let ex = worked_example();
    assert!(check_edge_join(&ex, 0, 1).unwrap().is_none());
    assert_eq!(brute_cut(&ex, f64::abs, f64::abs, 0, &[1]), 9.0);

    let i = inst(2, &[(0, 1, -1.0)], &[]);
    assert_eq!(check_edge_join(&i, 0, 1).unwrap().unwrap().margin, 1.0);
}

#[test]
fn triplet_join_examples() {
    let i = negative_triangle(-1.0);
    let cert = check_triplet_join(&i, 0, 1, 2).unwrap().unwrap();
    assert_eq!(brute_cut(&i, neg, neg, 0, &[1, 2]), 3.0);
    assert_eq!(cert.margin, 6.0 - 3.0);
    assert_eq!(Reference::new(&i).minimum, -4.0);
    assert_persistent(&i, &cert);

    assert!(check_triplet_join(&worked_example(), 0, 1, 2).unwrap().is_none());

    let i = inst(
        5,
        &[(0, 1, -1.0), (0, 2, -1.0), (1, 2, -1.0), (3, 4, 100.0)],
        &[(0, 1, 2, -1.0)],
    );
    assert!(check_triplet_join(&i, 0, 1, 2).unwrap().is_none());
}

#[test]
fn triangle_edge_join_examples() {
    let i = negative_triangle(-1.0);
    let cert = check_triangle_edge_join(&i, 0, 1, 2).unwrap().unwrap();
    assert_eq!(cert.kind, CertificateKind::EdgeFixed1);
    assert_eq!(cert.margin, 3.0);
    assert_persistent(&i, &cert);

    let ex = worked_example();
    assert!(check_triangle_edge_join(&ex, 0, 1, 2).unwrap().is_none());

    assert!(check_triangle_edge_join(&negative_triangle(10.0), 0, 1, 2).unwrap().is_none());
}

#[test]
fn edge_subgraph_examples() {
    let i = inst(3, &[(0, 1, -1.0), (0, 2, -1.0)], &[]);
    let cert = check_edge_subgraph_join(&i, 0, 1).unwrap().unwrap();
    assert_eq!(cert.margin, 0.0);
    assert_eq!(Reference::new(&i).minimum, -2.0);
    assert_persistent(&i, &cert);

    let i = inst(2, &[(0, 1, -1.0)], &[]);
    assert_eq!(check_edge_subgraph_join(&i, 0, 1).unwrap().unwrap().margin, 1.0);
    let i = inst(2, &[(0, 1, 1.0)], &[]);
    assert!(check_edge_subgraph_join(&i, 0, 1).unwrap().is_none());
}

#[test]
fn triplet_subgraph_examples() {
    let i = negative_triangle(0.0);
    let cert = check_triplet_subgraph_join(&i, 0, 1, 2).unwrap().unwrap();
    assert_eq!(Reference::new(&i).minimum, -3.0);
    assert_persistent(&i, &cert);

    let i = inst(3, &[(0, 1, 3.0), (0, 2, -1.0), (1, 2, -1.0)], &[(0, 1, 2, 0.0)]);
    assert!(check_triplet_subgraph_join(&i, 0, 1, 2).unwrap().is_none());

    let i = negative_triangle(-1.0);
    let cert = check_triplet_subgraph_join(&i, 0, 1, 2).unwrap().unwrap();
    assert_persistent(&i, &cert);
}

#[test]
fn subset_join_examples() {
    let i = negative_triangle(-1.0);
    let cert = find_subset_join(&i).unwrap().unwrap();
    assert_eq!(cert.target, vec![0, 1, 2]);
    // folded weights 1.5 on every edge, cheapest cut isolates one vertex
    assert_eq!(cert.margin, 3.0);
    assert_persistent(&i, &cert);

    assert!(find_subset_join(&worked_example()).unwrap().is_none());
    let i = inst(3, &[(0, 1, 1.0), (1, 2, 2.0)], &[]);
    assert!(find_subset_join(&i).unwrap().is_none());
}

/// Certificates of every candidate-based checker, keyed by the candidate.
fn candidates(ch: &Checker, i: &Instance) -> Vec<(String, Option<Certificate>)> {
    let mut out = Vec::new();
    for e in 0..i.edge_count() {
        out.push((format!("edge_cut {e}"), ch.edge_cut(e).unwrap()));
        out.push((format!("edge_join {e}"), ch.edge_join(e).unwrap()));
        out.push((format!("edge_subgraph {e}"), ch.edge_subgraph_join(e)));
        out.push((format!("subset_join {e}"), ch.subset_join_candidate(&ch.grow_subset(e)).unwrap()));
    }
    for t in 0..i.triple_count() {
        out.push((format!("triplet_cut {t}"), ch.triplet_cut(t).unwrap()));
        out.push((format!("triplet_join {t}"), ch.triplet_join(t).unwrap()));
        out.push((format!("triangle_edge {t}"), ch.triangle_edge_join(t).unwrap()));
        out.push((format!("triplet_subgraph {t}"), ch.triplet_subgraph_join(t)));
    }
    out
}

#[test]
fn margins_are_tight() {
    let mut checked = 0;
    for seed in 0..300 {
        let mut r = rng(1000 + seed);
        let i = random_instance(&mut r, 3 + (seed % 5) as usize, 0.8, 3);
        let base = Checker::new(&i, 0.0);
        for (name, cert) in candidates(&base, &i) {
            let Some(cert) = cert else { continue };
            assert!(cert.margin >= 0.0);
            // with the slack equal to the margin the inequality still holds,
            // one unit more and it fails
            let at = Checker::new(&i, cert.margin);
            let past = Checker::new(&i, cert.margin + 1.0);
            let find = |ch: &Checker| {
                candidates(ch, &i)
                    .into_iter()
                    .find(|(n, _)| *n == name)
                    .and_then(|(_, c)| c)
            };
            let again = find(&at).unwrap_or_else(|| panic!("seed {seed} {name} lost at its margin"));
            assert_eq!(again.margin, 0.0, "seed {seed} {name}");
            assert!(find(&past).is_none(), "seed {seed} {name} survives margin + 1");
            checked += 1;
        }
    }
    assert!(checked > 500, "only {checked} certificates checked");
}

#[test]
fn linear_conditions_without_triples() {
    // direct versions of the edge conditions for pairwise costs only
    for seed in 0..200 {
        let mut r = rng(5000 + seed);
        let mut i = random_instance(&mut r, 3 + (seed % 5) as usize, 0.7, 4);
        if i.triple_count() > 0 {
            let edges: Vec<_> = i.edges().iter().zip(i.edge_costs()).map(|(&(p, q), &c)| (p, q, c)).collect();
            i = Instance::new(i.vertex_count(), edges, [], 0.0).unwrap();
        }
        for (e, &(p, q)) in i.edges().iter().enumerate() {
            let c = i.edge_cost(e);
            let cut_margin = pos(c) - brute_cut(&i, neg, neg, p, &[q]);
            let got = check_edge_cut(&i, p, q).unwrap();
            assert_eq!(got.map(|x| x.margin), (cut_margin >= 0.0).then_some(cut_margin), "seed {seed} cut {e}");

            let join_margin = 2.0 * neg(c) - brute_cut(&i, f64::abs, f64::abs, p, &[q]);
            let got = check_edge_join(&i, p, q).unwrap();
            assert_eq!(got.map(|x| x.margin), (join_margin >= 0.0).then_some(join_margin), "seed {seed} join {e}");
        }
    }
}

#[test]
fn certificates_respect_witness_structure() {
    for seed in 0..200 {
        let mut r = rng(9000 + seed);
        let i = random_instance(&mut r, 4 + (seed % 4) as usize, 0.8, 3);
        let ch = Checker::new(&i, 0.0);
        for (_, cert) in candidates(&ch, &i) {
            let Some(cert) = cert else { continue };
            match cert.condition {
                Condition::EdgeCut | Condition::EdgeJoin => {
                    let u = &cert.witnesses[0];
                    assert!(u.contains(&cert.target[0]) && !u.contains(&cert.target[1]));
                }
                Condition::TripletCut | Condition::TripletJoin => {
                    // the apex is the only target vertex in U
                    let u = &cert.witnesses[0];
                    assert_eq!(cert.target.iter().filter(|v| u.contains(v)).count(), 1);
                }
                _ => {}
            }
        }
    }
}
