//! Worked examples on the named graphs, checked against brute force where a
//! value is computed rather than quoted.

use std::collections::BTreeSet;

use interval6::bigraph::{BipartiteMultigraph, Part, VertexId};
use interval6::checker::{check_full_3regular, check_proper_path_factor, SubgraphCertificate};
use interval6::coloring::{color_from_factor, color_summary};
use interval6::generators::{claw_triple_graph, eight_triples_graph, k34, subset_graph_6};
use interval6::oracle::{oracle_full_3regular, oracle_path_factor};
use interval6::pathfactor::{
    build_pgraph, build_q, find_y_cover, p7_factor_via_24, pgraph_violation, search_full_3regular,
    search_proper_path_factor, two_color_pgraph, PEdgeKind, SearchConfig,
};
use interval6::transversal::{build_f, three_color_certificate};

/// Brute force: does some set of Y-vertices have pairwise disjoint
/// neighborhoods covering X?
fn brute_y_cover_exists(g: &BipartiteMultigraph) -> bool {
    let k = g.x_count() / 4;
    let nbrs: Vec<BTreeSet<usize>> = (0..g.y_count())
        .map(|y| g.neighbors(VertexId::y(y)).iter().map(|v| v.index).collect())
        .collect();
    fn go(nbrs: &[BTreeSet<usize>], from: usize, left: usize, covered: &mut BTreeSet<usize>) -> bool {
        if left == 0 {
            return true;
        }
        (from..nbrs.len()).any(|y| {
            if nbrs[y].len() != 4 || !nbrs[y].is_disjoint(covered) {
                return false;
            }
            covered.extend(&nbrs[y]);
            let ok = go(nbrs, y + 1, left - 1, covered);
            nbrs[y].iter().for_each(|x| {
                covered.remove(x);
            });
            ok
        })
    }
    go(&nbrs, 0, k, &mut BTreeSet::new())
}

#[test]
fn k34_basics() {
    let g = k34();
    assert!(g.is_biregular(3, 4));
    assert!(!g.is_biregular(4, 3));
    assert!(g.is_simple());
    assert_eq!(g.components().len(), 1);
    assert!(g.is_two_edge_connected());
}

#[test]
fn triple_edge_and_claw_are_not_simple() {
    let g = BipartiteMultigraph::build(1, 1, &[(0, 0); 3]).unwrap();
    assert!(!g.is_simple());
    assert_eq!(g.degree(VertexId::x(0)), 3);
    assert!(!claw_triple_graph().is_simple());
}

#[test]
fn disjoint_k34_pair_has_two_components() {
    let one = k34();
    let mut pairs = one.edge_pairs().to_vec();
    pairs.extend(one.edge_pairs().iter().map(|&(x, y)| (x + 4, y + 3)));
    let g = BipartiteMultigraph::build(8, 6, &pairs).unwrap();
    let comps = g.components();
    assert_eq!(comps.len(), 2);
    assert!(!g.is_two_edge_connected());
}

#[test]
fn tree_is_not_two_edge_connected() {
    let g = BipartiteMultigraph::build(2, 2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
    assert!(!g.is_two_edge_connected());
}

#[test]
fn full_3regular_on_k34_by_deletion() {
    let g = k34();
    for deleted in 0..4 {
        let cert = SubgraphCertificate::new(g.edge_ids().filter(|e| g.edge_pairs()[e.0].0 != deleted));
        assert!(check_full_3regular(&g, &cert));
    }
    assert!(!check_full_3regular(&g, &SubgraphCertificate::new([])));
    let claw = claw_triple_graph();
    let nine = SubgraphCertificate::new(claw.edge_ids().filter(|e| claw.edge_pairs()[e.0].0 != 0));
    assert!(check_full_3regular(&claw, &nine));
}

#[test]
fn full_3regular_search_matches_oracle() {
    let cases = [
        ("K_{3,4}", k34(), true),
        ("subset graph", subset_graph_6().0, false),
        ("eight triples", eight_triples_graph(), false),
        ("claw", claw_triple_graph(), true),
    ];
    for (name, g, expect) in cases {
        let search = search_full_3regular(&g, &SearchConfig::unbounded()).unwrap().outcome;
        assert!(!search.is_unknown(), "{name}");
        assert_eq!(search.is_found(), expect, "{name}");
        assert_eq!(oracle_full_3regular(&g).is_some(), expect, "{name}");
        if let Some(cert) = search.found() {
            assert!(check_full_3regular(&g, &cert), "{name}");
        }
    }
}

#[test]
fn k34_q_has_six_edges() {
    let g = k34();
    let f = p7_factor_via_24(&g).unwrap().unwrap();
    let q = build_q(&g, &f).unwrap();
    assert_eq!(q.edge_count(), 6);
    // Q-degrees from scratch: 4 - d_P(y), 3 - d_P(x)
    let on: BTreeSet<_> = f.edge_set();
    for v in g.vertices() {
        let dq = g.incident(v).iter().filter(|e| !on.contains(e)).count();
        let want = match v.part {
            Part::Y => 2,
            Part::X if v == f.paths[0].first() || v == f.paths[0].last() => 2,
            Part::X => 1,
        };
        assert_eq!(dq, want, "{v}");
    }
}

#[test]
fn subset_graph_q_and_pgraph() {
    let (g, f) = subset_graph_6();
    let q = build_q(&g, &f).unwrap();
    let mut qdeg = vec![0; g.y_count()];
    for p in q.cycles.iter().chain(&q.q_paths) {
        for e in &p.edges {
            qdeg[g.edge_pairs()[e.0].1] += 1;
        }
    }
    assert!(qdeg.iter().all(|&d| d == 2));

    let pg = build_pgraph(&g, &f).unwrap();
    assert_eq!(pgraph_violation(&pg), None);
    // counted directly: one (a)-edge per length-6 path, one (c)-edge per
    // Q-path, and Q-paths end at the 10 internal X-vertices
    let internal = f.paths.iter().map(|p| p.vertices.len() / 2 - 1).sum::<usize>();
    assert_eq!(internal, 10);
    assert_eq!(pg.vertices.len(), 10);
    let count = |k| pg.edges.iter().filter(|e| e.kind == k).count();
    assert_eq!(count(PEdgeKind::A), 5);
    assert_eq!(count(PEdgeKind::C), 5);
    assert_eq!(count(PEdgeKind::B), 0);
    let tone = two_color_pgraph(&pg).unwrap();
    assert!(pg.edges.iter().all(|e| tone[&e.u] != tone[&e.v]));
}

#[test]
fn y_cover_matches_brute_force() {
    let graphs = [
        k34(),
        subset_graph_6().0,
        eight_triples_graph(),
        claw_triple_graph(),
    ];
    for g in &graphs {
        assert_eq!(find_y_cover(g).unwrap().is_some(), brute_y_cover_exists(g));
    }
    assert_eq!(find_y_cover(&k34()).unwrap().map(|c| c.len()), Some(1));
}

/// Two 2-subsets of {1..6} that share an element lie in a common 3-set, so
/// disjoint neighborhoods need disjoint pairs, and there are at most three.
#[test]
fn subset_graph_has_no_y_cover() {
    let (g, _) = subset_graph_6();
    assert!(!brute_y_cover_exists(&g));
    assert_eq!(find_y_cover(&g).unwrap(), None);
    assert_eq!(p7_factor_via_24(&g).unwrap(), None);
}

#[test]
fn path_factor_existence_on_named_graphs() {
    let cases = [
        ("K_{3,4}", k34(), true),
        ("subset graph", subset_graph_6().0, true),
        ("eight triples", eight_triples_graph(), true),
        ("claw", claw_triple_graph(), false),
    ];
    for (name, g, expect) in cases {
        let search = search_proper_path_factor(&g, &SearchConfig::unbounded()).outcome;
        assert_eq!(search.is_found(), expect, "{name}");
        let oracle = oracle_path_factor(&g);
        assert_eq!(oracle.is_some(), expect, "{name}");
        if let Some(f) = oracle {
            assert!(check_proper_path_factor(&g, &f).unwrap(), "{name}");
            color_from_factor(&g, &f).unwrap();
        }
    }
}

#[test]
fn k34_coloring_summary() {
    let g = k34();
    let f = search_proper_path_factor(&g, &SearchConfig::default()).outcome.found().unwrap();
    let c = color_from_factor(&g, &f).unwrap();
    let allowed_y: [&[u32]; 3] = [&[1, 2, 3, 4], &[2, 3, 4, 5], &[3, 4, 5, 6]];
    for r in color_summary(&g, &c) {
        assert!(r.is_interval());
        match r.vertex.part {
            Part::X => assert_eq!(r.colors.len(), 3),
            Part::Y => assert!(allowed_y.contains(&r.colors.as_slice()), "{r:?}"),
        }
    }
}

#[test]
fn f_of_k34_and_claw() {
    for g in [k34(), claw_triple_graph()] {
        let cert = oracle_full_3regular(&g).unwrap();
        let coloring = three_color_certificate(&g, &cert).unwrap();
        let frame = build_f(&g, &cert, &coloring).unwrap();
        assert_eq!(frame.triples.len(), 1);
        assert_eq!(frame.f.vertex_count(), 3);
        for y in 0..3 {
            assert_eq!(frame.f.degree(y), 2);
        }
    }
}

#[test]
fn claw_f_is_three_loops() {
    let g = claw_triple_graph();
    let cert = oracle_full_3regular(&g).unwrap();
    let frame = build_f(&g, &cert, &three_color_certificate(&g, &cert).unwrap()).unwrap();
    assert!((0..3).all(|y| frame.f.succ(y) == y));
}
