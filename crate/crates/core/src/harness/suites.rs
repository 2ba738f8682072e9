use std::collections::HashSet;
use std::time::Instant;

use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use super::fixtures::{fixture_f2, full_binary_tree};
use super::report::{Report, Suite, Violation};
use crate::arith::{rational, Dyadic, Rational};
use crate::family::FamilyContext;
use crate::graph::{
    canonical_code, degree_partition, diameter, distance_matrix, emit_graph6, enumerate_subcubic_trees,
    parse_graph6, prufer, ExtNat, Graph, VertexSet,
};
use crate::lp::{
    bound_diameter, bound_order_degree, bound_subcubic_order, build_porous_lp, canonical_tree_solution,
    max_form_bound, solve_exact,
};
use crate::par::{self, Exec};
use crate::solve::{
    all_minimum_porous_sets, domination_number, dominates, exponential_domination_number,
    porous_exponential_domination_number, DomCertificate,
};
use crate::weight::{blocked_weights, is_exponential_dominating, is_porous_exponential_dominating, weight_profile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("unknown conjecture {0} (expected 1 or 2)")]
    UnknownConjecture(u8),
    #[error("n_max must be at least 1")]
    EmptyRange,
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub n_max: usize,
    /// Largest cycle for suites that include cycles; defaults to `n_max`.
    pub cycle_max: Option<usize>,
    /// Number of random pairs for the subtree monotonicity suite.
    pub samples: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl SuiteParams {
    pub fn new(n_max: usize) -> Self {
        SuiteParams {
            n_max,
            cycle_max: None,
            samples: 500,
            seed: 0x5eed,
            exec: Exec::default(),
        }
    }

    pub fn with_cycles(mut self, cycle_max: usize) -> Self {
        self.cycle_max = Some(cycle_max);
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}

/// All subcubic trees of order `1..=n_max`, by order then canonical code.
pub fn trees_up_to(n_max: usize) -> Vec<Graph> {
    (1..=n_max).flat_map(enumerate_subcubic_trees).collect()
}

fn corpus(suite: Suite, p: &SuiteParams) -> Vec<Graph> {
    let mut graphs = trees_up_to(p.n_max);
    if suite.uses_cycles() {
        graphs.extend((3..=p.cycle_max.unwrap_or(p.n_max)).map(Graph::cycle));
    }
    graphs
}

fn is_k13(g: &Graph) -> bool {
    g.n() == 4 && g.is_tree() && g.max_degree() == 3
}

fn same_tree(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && canonical_code(a).ok() == canonical_code(b).ok()
}

/// LP optimum, recording a violation unless the solution certifies itself.
fn lp_checked(g: &Graph, g6: &str, out: &mut Vec<Violation>) -> Rational {
    let model = build_porous_lp(g);
    let sol = solve_exact(&model).expect("porous model is well formed");
    if !sol.certifies(&model) {
        out.push(Violation::new(
            g6,
            "primal and dual feasible with equal objectives",
            format!("status {:?}, objective {}", sol.status, sol.objective),
        ));
    }
    sol.objective
}

fn witness_checked(g: &Graph, g6: &str, cert: &DomCertificate, out: &mut Vec<Violation>) {
    use crate::solve::Parameter::*;
    let independent = match cert.parameter {
        Domination => dominates(g, &cert.witness, &VertexSet::full(g.n())),
        Exponential => is_exponential_dominating(g, &cert.witness),
        PorousExponential => is_porous_exponential_dominating(g, &cert.witness),
        RestrictedDomination => true,
    };
    if !(cert.verified() && independent && cert.witness.len() == cert.value) {
        out.push(Violation::new(
            g6,
            format!("{:?} witness of order {} re-validates", cert.parameter, cert.value),
            format!("witness {:?} rejected", cert.witness.to_vec()),
        ));
    }
}

fn check_chain(g: &Graph, g6: &str, out: &mut Vec<Violation>) {
    let lp = lp_checked(g, g6, out);
    let ges = porous_exponential_domination_number(g);
    let ge = exponential_domination_number(g);
    let gamma = domination_number(g);
    for c in [&ges, &ge, &gamma] {
        witness_checked(g, g6, c, out);
    }
    let (a, b, c) = (ges.value, ge.value, gamma.value);
    if !(lp <= int(a) && a <= b && b <= c) {
        out.push(Violation::new(
            g6,
            "gamma_ef* <= gamma_e* <= gamma_e <= gamma",
            format!("{lp} , {a} , {b} , {c}"),
        ));
    }
}

fn int(v: usize) -> Rational {
    Rational::from_integer((v as i64).into())
}

fn check_theorem2(g: &Graph, g6: &str, out: &mut Vec<Violation>) {
    let lp = lp_checked(g, g6, out);
    let expected = rational(g.n() as i64 + 2, 6);
    if lp != expected {
        out.push(Violation::new(g6, format!("gamma_ef* = {expected}"), format!("{lp}")));
    }
    match canonical_tree_solution(g) {
        Ok(c) if c.objective == lp && c.all_tight && c.primal_feasible && c.dual_feasible => {}
        Ok(c) => out.push(Violation::new(
            g6,
            format!("closed-form certificate with value {lp}, all rows tight"),
            format!(
                "value {}, tight {}, primal {}, dual {}",
                c.objective, c.all_tight, c.primal_feasible, c.dual_feasible
            ),
        )),
        Err(e) => out.push(Violation::new(g6, "closed-form certificate", e.to_string())),
    }
}

fn check_corollary1(g: &Graph, g6: &str, out: &mut Vec<Violation>) {
    let lp = lp_checked(g, g6, out);
    let ge = exponential_domination_number(g);
    witness_checked(g, g6, &ge, out);
    if int(ge.value) > &lp * rational(2, 1) {
        out.push(Violation::new(g6, format!("gamma_e <= 2 * {lp}"), ge.value.to_string()));
    }
}

/// Conditions (i)-(iv) on trees where the porous parameter meets its LP value above 1.
fn check_theorem3(g: &Graph, g6: &str, out: &mut Vec<Violation>) {
    let lp = lp_checked(g, g6, out);
    let ges = porous_exponential_domination_number(g).value;
    if int(ges) != lp || lp <= Rational::one() {
        return;
    }
    let parts = degree_partition(g).expect("subcubic");
    let (v1, v2, v3) = (&parts.ends, &parts.twos, &parts.threes);
    let low: Vec<usize> = v1.iter().chain(v2.iter()).collect();
    let one = Dyadic::one();
    for d in all_minimum_porous_sets(g) {
        let w = weight_profile(g, &d).porous;
        if let Some(&u) = low.iter().find(|&&u| w[u] != one) {
            out.push(Violation::new(
                g6,
                format!("(i) porous weight 1 at {u} for D = {:?}", d.to_vec()),
                w[u].to_string(),
            ));
        }
        let nbrs_ok = low.iter().flat_map(|&u| g.neighbors(u).iter()).all(|&x| v3.contains(x) && !d.contains(x));
        if !d.is_subset(v3) || !nbrs_ok {
            out.push(Violation::new(
                g6,
                format!("(ii) D inside V3 and N(V1 u V2) inside V3 - D for D = {:?}", d.to_vec()),
                "violated",
            ));
        }
    }
    let dist = distance_matrix(g);
    let at = |a: usize, b: usize| dist[a][b].finite().unwrap_or(u32::MAX);
    if let Some((u, w)) = v1.iter().flat_map(|u| v2.iter().map(move |w| (u, w))).find(|&(u, w)| at(u, w) == 2) {
        out.push(Violation::new(g6, "(iii) no endvertex at distance 2 from a degree-2 vertex", format!("{u}, {w}")));
    }
    for u1 in v1.iter() {
        for u2 in v1.iter().filter(|&u2| u2 != u1 && at(u1, u2) == 2) {
            if let Some(v) = v2.iter().find(|&v| matches!(at(u1, v), 3 | 4)) {
                out.push(Violation::new(
                    g6,
                    "(iv) no endvertex pair at distance 2 with a degree-2 vertex at distance 3 or 4",
                    format!("{u1}, {u2}, {v}"),
                ));
            }
        }
    }
}

fn check_theorem4(g: &Graph, g6: &str, out: &mut Vec<Violation>) {
    let lp = lp_checked(g, g6, out);
    let ge = exponential_domination_number(g).value;
    let hit = int(ge) == lp;
    if hit != is_k13(g) {
        out.push(Violation::new(
            g6,
            format!("gamma_e = gamma_ef* exactly for K_1,3 (is K_1,3: {})", is_k13(g)),
            format!("gamma_e {ge}, gamma_ef* {lp}"),
        ));
    }
}

fn finite_diameter(g: &Graph) -> Option<u32> {
    match diameter(g) {
        ExtNat::Finite(d) => Some(d),
        ExtNat::Infinite => None,
    }
}

fn check_theorem5(g: &Graph, g6: &str, out: &mut Vec<Violation>) {
    let lp = lp_checked(g, g6, out);
    let Some(d) = finite_diameter(g) else { return };
    let b = bound_diameter(d);
    if lp < b {
        out.push(Violation::new(g6, format!(">= (d+3)/6 = {b}"), lp.to_string()));
    }
    if d >= 1 {
        let b = bound_order_degree(g.n(), 3, d).expect("degree 3, d >= 1");
        if lp < b {
            out.push(Violation::new(g6, format!(">= n/(2+3d) = {b}"), lp.to_string()));
        }
    }
}

fn check_corollary2(g: &Graph, g6: &str, out: &mut Vec<Violation>) {
    let lp = lp_checked(g, g6, out);
    let Some(d) = finite_diameter(g) else { return };
    let exact = max_form_bound(g.n(), d);
    if lp < exact {
        out.push(Violation::new(g6, format!(">= max form {exact}"), lp.to_string()));
    }
    let float = bound_subcubic_order(g.n());
    let lpf = lp.to_f64().unwrap_or(f64::NAN);
    if lpf + 1e-9 < float {
        out.push(Violation::new(g6, format!(">= {float:.12}"), format!("{lpf:.12}")));
    }
}

fn check_lemma1(g: &Graph, g6: &str, out: &mut Vec<Violation>) {
    let two = Dyadic::from_int(2);
    let n = g.n();
    let low: Vec<usize> = (0..n).filter(|&u| g.degree(u) <= 2).collect();
    for k in 0..=3.min(n) {
        for_each_k_subset(n, k, |s| {
            let d = VertexSet::from_iter_in(n, s.iter().copied());
            let w = blocked_weights(g, &d);
            if let Some(&u) = low.iter().find(|&&u| w[u] > two) {
                out.push(Violation::new(g6, format!("w({u}) <= 2 for D = {s:?}"), w[u].to_string()));
            }
        });
    }
}

fn for_each_k_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(p) = (0..k).rev().find(|&p| idx[p] != p + n - k) else {
            return;
        };
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Equality case: the root of a full binary tree whose leaves form `D` has weight exactly 2,
/// and dropping any leaf from `D` breaks equality.
pub fn lemma1_equality_violations(max_depth: u32) -> Vec<Violation> {
    let mut out = Vec::new();
    for depth in 1..=max_depth {
        let t = full_binary_tree(depth);
        let g6 = emit_graph6(&t);
        let first_leaf = (1usize << depth) - 1;
        let leaves: Vec<usize> = (first_leaf..t.n()).collect();
        let w = blocked_weights(&t, &VertexSet::from_iter_in(t.n(), leaves.iter().copied()))[0].clone();
        if w != Dyadic::from_int(2) {
            out.push(Violation::new(&g6, "root weight 2 with D = leaves", w.to_string()));
        }
        let partial = blocked_weights(&t, &VertexSet::from_iter_in(t.n(), leaves[1..].iter().copied()))[0].clone();
        if partial >= Dyadic::from_int(2) {
            out.push(Violation::new(&g6, "root weight below 2 with one leaf dropped", partial.to_string()));
        }
    }
    out
}

fn check_theorem1(ctx: &FamilyContext, g: &Graph, g6: &str, out: &mut Vec<Violation>) {
    let gamma = domination_number(g).value;
    let ge = exponential_domination_number(g).value;
    let trace = match ctx.recognize(g) {
        Ok(t) => t,
        Err(e) => {
            out.push(Violation::new(g6, "recognizable input", e.to_string()));
            return;
        }
    };
    if trace.is_some() != (gamma == ge) {
        out.push(Violation::new(
            g6,
            format!("member iff gamma = gamma_e ({gamma} vs {ge})"),
            format!("member: {}", trace.is_some()),
        ));
    }
    if let Some(tr) = trace {
        match tr.replay_with(ctx) {
            Ok(back) if same_tree(&back, g) => {}
            Ok(back) => out.push(Violation::new(g6, "trace replays to the input", emit_graph6(&back))),
            Err(e) => out.push(Violation::new(g6, "trace replays to the input", e.to_string())),
        }
    }
}

/// Subtree monotonicity for one pair.
fn check_subtree(t: &Graph, sub: &Graph, g6: &str, out: &mut Vec<Violation>) {
    let big = exponential_domination_number(t).value;
    let small = exponential_domination_number(sub).value;
    if small > big {
        out.push(Violation::new(
            g6,
            format!("gamma_e(T') <= {big} for T' = {}", emit_graph6(sub)),
            format!("gamma_e(T') = {small}"),
        ));
    }
}

fn leaf_deletions(t: &Graph) -> Vec<Graph> {
    if t.n() < 2 {
        return Vec::new();
    }
    (0..t.n()).filter(|&v| t.degree(v) == 1).map(|v| t.remove_vertices(&[v]).0).collect()
}

fn check_enum_count(n: usize, g6: &str, out: &mut Vec<Violation>) {
    let trees: Vec<Graph> = enumerate_subcubic_trees(n).collect();
    let expected = prufer::count_subcubic_trees(n);
    if trees.len() != expected {
        out.push(Violation::new(g6, format!("{expected} trees of order {n}"), trees.len().to_string()));
    }
    let codes: HashSet<Vec<u8>> = trees.iter().filter_map(|t| canonical_code(t).ok()).collect();
    if codes.len() != trees.len() || !trees.iter().all(|t| t.n() == n && t.is_subcubic_tree()) {
        out.push(Violation::new(g6, "pairwise non-isomorphic subcubic trees", format!("{} distinct", codes.len())));
    }
}

/// Per-graph checks of a suite. For the subtree suite the subtrees are the
/// single leaf deletions; for the count suite only the order of `g` matters.
pub fn check_graph(suite: Suite, g: &Graph) -> Vec<Violation> {
    check_graph_with(suite, g, &FamilyContext::new())
}

fn check_graph_with(suite: Suite, g: &Graph, ctx: &FamilyContext) -> Vec<Violation> {
    let g6 = emit_graph6(g);
    let mut out = Vec::new();
    match suite {
        Suite::Chain => check_chain(g, &g6, &mut out),
        Suite::Theorem2 => check_theorem2(g, &g6, &mut out),
        Suite::Corollary1 => check_corollary1(g, &g6, &mut out),
        Suite::Theorem3 => check_theorem3(g, &g6, &mut out),
        Suite::Theorem4 => check_theorem4(g, &g6, &mut out),
        Suite::Theorem5 => check_theorem5(g, &g6, &mut out),
        Suite::Corollary2 => check_corollary2(g, &g6, &mut out),
        Suite::Lemma1 => check_lemma1(g, &g6, &mut out),
        Suite::Lemma2 => {
            for sub in leaf_deletions(g) {
                check_subtree(g, &sub, &g6, &mut out);
            }
        }
        Suite::Theorem1Equiv => check_theorem1(ctx, g, &g6, &mut out),
        Suite::EnumCount => check_enum_count(g.n(), &g6, &mut out),
    }
    out
}

/// Re-runs the check behind a reported violation from its graph6 string alone.
pub fn recheck(suite: Suite, v: &Violation) -> bool {
    let Ok(g) = parse_graph6(&v.graph6) else {
        return false;
    };
    let again = match suite {
        Suite::Lemma2 => {
            let Some(sub) = v
                .expected
                .rsplit_once("T' = ")
                .and_then(|(_, s)| parse_graph6(s).ok())
            else {
                return false;
            };
            let mut out = Vec::new();
            check_subtree(&g, &sub, &v.graph6, &mut out);
            out
        }
        _ => check_graph(suite, &g),
    };
    again.contains(v)
}

fn lemma2_pairs(p: &SuiteParams) -> Vec<(Graph, Graph)> {
    let trees: Vec<Graph> = trees_up_to(p.n_max).into_iter().filter(|t| t.n() >= 2).collect();
    if trees.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    (0..p.samples)
        .map(|_| {
            let t = trees.choose(&mut rng).unwrap().clone();
            let removals = rng.gen_range(1..t.n());
            let mut sub = t.clone();
            for _ in 0..removals {
                let leaves: Vec<usize> = (0..sub.n()).filter(|&v| sub.degree(v) <= 1).collect();
                let &leaf = leaves.choose(&mut rng).unwrap();
                sub = sub.remove_vertices(&[leaf]).0;
            }
            (t, sub)
        })
        .collect()
}

fn finish(suite: String, params: serde_json::Value, checked: usize, nested: Vec<Vec<Violation>>, start: Instant) -> Report {
    let mut violations: Vec<Violation> = nested.into_iter().flatten().collect();
    violations.sort();
    violations.dedup();
    Report {
        suite,
        params,
        checked,
        violations,
        ms: start.elapsed().as_millis() as u64,
    }
}

pub fn run_suite(suite: Suite, p: &SuiteParams) -> Report {
    let start = Instant::now();
    let mut params = json!({ "n_max": p.n_max });
    if suite.uses_cycles() {
        params["cycle_max"] = json!(p.cycle_max.unwrap_or(p.n_max));
    }
    match suite {
        Suite::Lemma2 => {
            params["samples"] = json!(p.samples);
            params["seed"] = json!(p.seed);
            let pairs = lemma2_pairs(p);
            let nested = par::map(p.exec, &pairs, |(t, sub)| {
                let mut out = Vec::new();
                check_subtree(t, sub, &emit_graph6(t), &mut out);
                out
            });
            finish(suite.to_string(), params, pairs.len(), nested, start)
        }
        Suite::EnumCount => {
            let orders: Vec<usize> = (1..=p.n_max).collect();
            let nested = par::map(p.exec, &orders, |&n| {
                let mut out = Vec::new();
                check_enum_count(n, &emit_graph6(&Graph::empty(n)), &mut out);
                out
            });
            finish(suite.to_string(), params, orders.len(), nested, start)
        }
        _ => {
            let graphs = corpus(suite, p);
            let ctx = FamilyContext::new();
            let mut nested = par::map(p.exec, &graphs, |g| check_graph_with(suite, g, &ctx));
            let mut checked = graphs.len();
            if suite == Suite::Lemma1 {
                params["binary_depth_max"] = json!(5);
                nested.push(lemma1_equality_violations(5));
                checked += 5;
            }
            finish(suite.to_string(), params, checked, nested, start)
        }
    }
}

/// Trees of order `<= n_max` with `γ_e = γ*_{e,f}`.
pub fn theorem4_hits(n_max: usize, exec: Exec) -> Vec<Graph> {
    let trees = trees_up_to(n_max);
    let hits = par::map(exec, &trees, |t| {
        int(exponential_domination_number(t).value) == crate::lp::fractional_porous_number(t)
    });
    trees.into_iter().zip(hits).filter_map(|(t, h)| h.then_some(t)).collect()
}

/// A finding for one tree, if it contradicts the conjecture.
pub fn conjecture_finding(conjecture: u8, t: &Graph) -> Result<Option<Violation>, HarnessError> {
    let g6 = emit_graph6(t);
    match conjecture {
        1 => {
            let ge = exponential_domination_number(t).value;
            let ges = porous_exponential_domination_number(t).value;
            Ok((2 * ge > 3 * ges).then(|| {
                Violation::new(g6, format!("gamma_e <= 3/2 * {ges}"), ge.to_string())
            }))
        }
        2 => {
            let ges = porous_exponential_domination_number(t).value;
            let lp = crate::lp::fractional_porous_number(t);
            let exception = is_k13(t) || same_tree(t, &fixture_f2());
            Ok((int(ges) == lp && !exception).then(|| {
                Violation::new(g6, "gamma_e* = gamma_ef* only for K_1,3 and the 22-vertex tree", format!("{ges} = {lp}"))
            }))
        }
        other => Err(HarnessError::UnknownConjecture(other)),
    }
}

/// Trees of the scanned family where `γ*_e = γ*_{e,f}`, exceptions included.
pub fn conjecture2_equality(t: &Graph) -> bool {
    int(porous_exponential_domination_number(t).value) == crate::lp::fractional_porous_number(t)
}

/// Exhaustive scan; findings are reported in `violations` but are not failures.
pub fn search_counterexample(conjecture: u8, n_max: usize, exec: Exec) -> Result<Report, HarnessError> {
    if !(1..=2).contains(&conjecture) {
        return Err(HarnessError::UnknownConjecture(conjecture));
    }
    if n_max == 0 {
        return Err(HarnessError::EmptyRange);
    }
    let start = Instant::now();
    let trees = trees_up_to(n_max);
    let nested = par::map(exec, &trees, |t| {
        conjecture_finding(conjecture, t).expect("id checked").into_iter().collect()
    });
    Ok(finish(format!("conjecture{conjecture}"), json!({ "n_max": n_max }), trees.len(), nested, start))
}

/// `γ_e / γ*_e`, the ratio bounded in the first conjecture.
pub fn conjecture1_ratio(t: &Graph) -> Rational {
    let ges = porous_exponential_domination_number(t).value;
    if ges == 0 {
        return Rational::zero();
    }
    rational(exponential_domination_number(t).value as i64, ges as i64)
}

/// `γ*_e / γ*_{e,f}`, the integrality gap of the porous program.
pub fn integrality_gap(t: &Graph) -> Rational {
    let lp = crate::lp::fractional_porous_number(t);
    if lp.is_zero() {
        return Rational::zero();
    }
    int(porous_exponential_domination_number(t).value) / lp
}
