//! Exact reference values through the public API.

use expodom::arith::{coeff, pow_half, rational, to_rational, Dyadic, ExtDyadic};
use expodom::family::{
    apply_op, generate_family, op1_applicable, op2_applicable, op3_applicable, recognize, tau, Op,
};
use expodom::graph::{
    bfs_distances, canonical_code, degree_partition, diameter, emit_graph6, enumerate_subcubic_trees, parse_edge_list,
    parse_graph6, ExtNat, Graph, ParseError, VertexSet,
};
use expodom::harness::{
    fixture_f1, fixture_f1_middles, fixture_f2, integrality_gap, fixtures::F2_POROUS_WITNESS,
};
use expodom::lp::{
    bound_diameter, bound_order_degree, bound_subcubic_order, build_porous_lp, canonical_tree_solution,
    fractional_porous_number, max_form_bound,
};
use expodom::solve::{
    all_minimum_porous_sets, domination_number, domination_with_forced_vertex, exponential_domination_number,
    porous_exponential_domination_number, restricted_domination_number,
};
use expodom::weight::{blocked_distance, is_exponential_dominating, is_porous_exponential_dominating, weight_profile};

fn set(n: usize, ids: &[usize]) -> VertexSet {
    VertexSet::from_iter_in(n, ids.iter().copied())
}

fn fin(d: u32) -> ExtNat {
    ExtNat::Finite(d)
}

#[test]
fn parsing() {
    assert_eq!(parse_edge_list("0 1\n1 2").unwrap(), Graph::path(3));
    assert_eq!(parse_edge_list("n 4\n0 1\n0 2\n0 3").unwrap(), Graph::star(3));
    assert!(matches!(parse_edge_list("0 0"), Err(ParseError::SelfLoop { .. })));
    assert_eq!(emit_graph6(&Graph::path(2)), "A_");
    assert_eq!(parse_graph6(&emit_graph6(&Graph::star(3))).unwrap(), Graph::star(3));
    assert_eq!(parse_graph6("~~"), Err(ParseError::Truncated));
}

#[test]
fn distances_and_shape() {
    assert_eq!(bfs_distances(&Graph::path(3), 0), vec![fin(0), fin(1), fin(2)]);
    assert_eq!(bfs_distances(&Graph::star(3), 0), vec![fin(0), fin(1), fin(1), fin(1)]);
    let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert_eq!(bfs_distances(&two_edges, 0), vec![fin(0), fin(1), ExtNat::Infinite, ExtNat::Infinite]);
    assert_eq!(diameter(&Graph::path(5)), fin(4));
    assert_eq!(diameter(&Graph::star(3)), fin(2));
    assert_eq!(diameter(&fixture_f2()), fin(6));
    let p = degree_partition(&Graph::path(4)).unwrap();
    assert_eq!((p.ends.to_vec(), p.twos.to_vec(), p.threes.to_vec()), (vec![0, 3], vec![1, 2], vec![]));
    let p = degree_partition(&Graph::star(3)).unwrap();
    assert_eq!((p.ends.to_vec(), p.twos.len(), p.threes.to_vec()), (vec![1, 2, 3], 0, vec![0]));
    assert!(!Graph::cycle(4).is_subcubic_tree());
    assert!(!Graph::star(4).is_subcubic_tree());
    assert!(Graph::path(1).is_subcubic_tree());
}

#[test]
fn canonical_codes_and_counts() {
    let p4 = Graph::path(4);
    assert_eq!(canonical_code(&p4), canonical_code(&p4.relabel(&[2, 0, 3, 1])));
    assert_ne!(canonical_code(&p4), canonical_code(&Graph::star(3)));
    assert_ne!(canonical_code(&fixture_f1(1)), canonical_code(&Graph::path(7)));
    let counts: Vec<usize> = (1..=14).map(|n| enumerate_subcubic_trees(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 1, 2, 2, 4, 6, 11, 18, 37, 66, 135, 265, 552]);
}

#[test]
fn weights() {
    assert_eq!(pow_half(fin(0)), Dyadic::one());
    assert_eq!(pow_half(fin(3)), Dyadic::pow2(-3));
    assert_eq!(pow_half(ExtNat::Infinite), Dyadic::zero());
    assert_eq!(coeff(fin(0)), Dyadic::from_int(2));
    assert_eq!(coeff(fin(1)), Dyadic::one());
    assert_eq!(coeff(ExtNat::Infinite), Dyadic::zero());
    assert_eq!(to_rational(&Dyadic::pow2(-3)), rational(1, 8));
    assert_eq!(to_rational(&Dyadic::from_int(2)), rational(2, 1));
    assert_eq!(to_rational(&Dyadic::new(-3, -2)), rational(-3, 4));

    let p4 = Graph::path(4);
    let d = set(4, &[1, 3]);
    assert_eq!(blocked_distance(&p4, &d, 0, 3), Ok(ExtNat::Infinite));
    assert_eq!(blocked_distance(&p4, &d, 0, 1), Ok(fin(1)));
    assert_eq!(blocked_distance(&p4, &d, 3, 3), Ok(fin(0)));
    let w = weight_profile(&p4, &d);
    assert_eq!(w.blocked[0].to_rational(), rational(1, 1));
    assert_eq!(w.porous[0].to_rational(), rational(5, 4));

    let spider = fixture_f1(1);
    let mids = set(7, &fixture_f1_middles(1));
    let w = weight_profile(&spider, &mids);
    assert_eq!(w.blocked[0], Dyadic::from_int(3));
    assert!([2, 4, 6].iter().all(|&leaf| w.blocked[leaf] == Dyadic::one()));
    assert!(mids.iter().all(|u| w.blocked[u] == Dyadic::from_int(2)));
    assert!(is_exponential_dominating(&spider, &mids));
    assert!(is_exponential_dominating(&Graph::star(3), &set(4, &[0])));
    assert!(!is_exponential_dominating(&p4, &set(4, &[1])));
    assert!(is_porous_exponential_dominating(&fixture_f2(), &set(22, &F2_POROUS_WITNESS)));
    assert!(!is_porous_exponential_dominating(&p4, &VertexSet::new(4)));
}

#[test]
fn solver_values() {
    assert_eq!(domination_number(&Graph::path(3)).value, 1);
    assert_eq!(domination_number(&Graph::star(3)).value, 1);
    assert_eq!(domination_number(&fixture_f1(1)).value, 3);
    assert_eq!(restricted_domination_number(&Graph::path(1), &VertexSet::new(1)).value, 0);
    assert_eq!(restricted_domination_number(&Graph::path(3), &VertexSet::full(3)).value, 1);
    assert_eq!(restricted_domination_number(&Graph::path(4), &set(4, &[1, 2, 3])).value, 1);
    assert_eq!(domination_with_forced_vertex(&Graph::path(3), 1), 1);
    assert_eq!(domination_with_forced_vertex(&Graph::path(3), 0), 2);
    assert_eq!(domination_with_forced_vertex(&Graph::star(3), 1), 2);
    assert_eq!(exponential_domination_number(&Graph::star(3)).value, 1);
    assert_eq!(exponential_domination_number(&fixture_f1(2)).value, 4);
    assert_eq!(exponential_domination_number(&Graph::path(4)).value, 2);
    assert_eq!(porous_exponential_domination_number(&fixture_f2()).value, 4);
    assert_eq!(porous_exponential_domination_number(&Graph::star(3)).value, 1);
    assert_eq!(porous_exponential_domination_number(&fixture_f1(1)).value, 3);
    assert!(all_minimum_porous_sets(&Graph::star(3)).contains(&set(4, &[0])));
    assert_eq!(all_minimum_porous_sets(&Graph::path(2)), vec![set(2, &[0]), set(2, &[1])]);
    assert!(all_minimum_porous_sets(&fixture_f2()).contains(&set(22, &F2_POROUS_WITNESS)));
}

#[test]
fn lp_values() {
    let rows = |g: &Graph| build_porous_lp(g).rows;
    assert_eq!(rows(&Graph::path(1)), vec![vec![rational(2, 1)]]);
    assert_eq!(
        rows(&Graph::path(2)),
        vec![vec![rational(2, 1), rational(1, 1)], vec![rational(1, 1), rational(2, 1)]]
    );
    assert_eq!(fractional_porous_number(&Graph::path(1)), rational(1, 2));
    assert_eq!(fractional_porous_number(&Graph::star(3)), rational(1, 1));
    assert_eq!(fractional_porous_number(&Graph::cycle(4)), rational(8, 9));
    assert_eq!(fractional_porous_number(&Graph::path(10)), rational(2, 1));
    assert_eq!(fractional_porous_number(&fixture_f2()), rational(4, 1));
    let c = canonical_tree_solution(&Graph::path(2)).unwrap();
    assert_eq!(c.primal, vec![rational(1, 3), rational(1, 3)]);
    assert_eq!(c.objective, rational(2, 3));
}

#[test]
fn bounds() {
    assert_eq!(bound_diameter(3), rational(1, 1));
    assert_eq!(bound_diameter(0), rational(1, 2));
    assert_eq!(bound_diameter(9), rational(2, 1));
    assert_eq!(bound_order_degree(8, 3, 2), Ok(rational(1, 1)));
    assert_eq!(bound_order_degree(5, 4, 1), Ok(rational(5, 6)));
    assert_eq!(bound_order_degree(22, 3, 6), Ok(rational(11, 10)));
    assert!(bound_order_degree(22, 2, 6).is_err());
    assert_eq!(bound_subcubic_order(1), 0.5);
    // (√(1633)/6 + 7/6)/6
    assert!((bound_subcubic_order(22) - 1.316_955_408_398_708_5).abs() < 1e-9);
    assert_eq!(max_form_bound(22, 6), rational(3, 2));
    for n in 1..=12 {
        assert!(rational(n as i64 + 2, 6) >= rational((bound_subcubic_order(n) * 1e9).floor() as i64, 1_000_000_000));
    }
}

#[test]
fn tau_and_operations() {
    let v = |g: &Graph, x| tau(g, x).unwrap().value;
    assert_eq!(v(&Graph::path(1), 0), ExtDyadic::Finite(Dyadic::one()));
    assert_eq!(v(&Graph::path(2), 0), ExtDyadic::Finite(Dyadic::from_int(2)));
    assert_eq!(v(&Graph::path(3), 1), ExtDyadic::Finite(Dyadic::from_int(2)));
    assert_eq!(v(&Graph::path(3), 0), ExtDyadic::Finite(Dyadic::from_int(4)));

    let (p1, p2, p3) = (Graph::path(1), Graph::path(2), Graph::path(3));
    assert_eq!(op1_applicable(&p1, 0), Ok(true));
    assert_eq!(op1_applicable(&p3, 1), Ok(true));
    assert_eq!(op1_applicable(&p3, 0), Ok(false));
    assert_eq!(op2_applicable(&p1, 0), Ok(true));
    assert_eq!(op2_applicable(&p2, 1), Ok(true));
    assert_eq!(op3_applicable(&p1, 0), Ok(true));
    assert_eq!(op3_applicable(&p2, 0), Ok(true));
    let grown3 = apply_op(&p1, Op::Two, 0).unwrap();
    assert_eq!(grown3, p3);
    assert_eq!(domination_number(&grown3).value, exponential_domination_number(&grown3).value);
    let grown4 = apply_op(&p1, Op::Three, 0).unwrap();
    assert_eq!(grown4, Graph::path(4));
    assert_eq!(domination_number(&grown4).value, 2);
    assert_eq!(exponential_domination_number(&grown4).value, 2);
    assert_eq!(apply_op(&p1, Op::One, 0).unwrap(), p2);
}

#[test]
fn family_membership() {
    let codes = |gs: Vec<Graph>| gs.iter().map(|g| canonical_code(g).unwrap()).collect::<Vec<_>>();
    let f3 = codes(generate_family(3));
    assert_eq!(f3, codes(vec![Graph::path(1), Graph::path(2), Graph::path(3)]));
    let f4 = codes(generate_family(4));
    assert!(f4.contains(&canonical_code(&Graph::star(3)).unwrap()));
    assert!(f4.contains(&canonical_code(&Graph::path(4)).unwrap()));
    for g in generate_family(9) {
        assert_eq!(domination_number(&g).value, exponential_domination_number(&g).value, "{g:?}");
    }
    let star = recognize(&Graph::star(3)).unwrap().unwrap();
    assert_eq!(star.steps.iter().map(|s| s.op).collect::<Vec<_>>(), vec![Op::One; 3]);
    let p4 = recognize(&Graph::path(4)).unwrap().unwrap();
    assert_eq!(canonical_code(&p4.replay().unwrap()), canonical_code(&Graph::path(4)));
    let spider = fixture_f1(1);
    let member = recognize(&spider).unwrap().is_some();
    assert_eq!(
        member,
        domination_number(&spider).value == exponential_domination_number(&spider).value
    );
    assert!(recognize(&Graph::cycle(5)).is_err());
}

#[test]
fn fixture_ratios() {
    for k in 1..=2 {
        assert_eq!(integrality_gap(&fixture_f1(k)), rational(2, 1), "k={k}");
        let t = fixture_f1(k);
        assert_eq!(
            porous_exponential_domination_number(&t).value,
            exponential_domination_number(&t).value
        );
    }
    let t = fixture_f1(3);
    assert_ne!(
        porous_exponential_domination_number(&t).value,
        exponential_domination_number(&t).value
    );
}
