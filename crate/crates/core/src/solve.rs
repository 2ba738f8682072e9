//! Exact optimum search for γ, γ(G,X), forced-vertex domination, γ_e and γ_e*.
//!
//! All searches deepen on the set size and enumerate candidate sets in
//! lexicographic order, so the first hit at the optimal level is the
//! lexicographically smallest witness of that component.

use std::ops::{AddAssign, SubAssign};

use serde::Serialize;

use crate::arith::{ceil_to_usize, coeff, Dyadic};
use crate::graph::{bfs_avoiding, distance_matrix, ExtNat, Graph, VertexSet};
use crate::lp::fractional_porous_number;
use crate::weight::{weight_profile, WeightProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    Domination,
    RestrictedDomination,
    Exponential,
    PorousExponential,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCheck {
    Domination { dominated: bool },
    Weights(WeightProfile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomCertificate {
    pub parameter: Parameter,
    pub value: usize,
    pub witness: VertexSet,
    pub check: WitnessCheck,
}

impl DomCertificate {
    /// Whether the attached check confirms the witness.
    pub fn verified(&self) -> bool {
        match (&self.parameter, &self.check) {
            (_, WitnessCheck::Domination { dominated }) => *dominated,
            (Parameter::Exponential, WitnessCheck::Weights(p)) => p.is_exponential_dominating(),
            (Parameter::PorousExponential, WitnessCheck::Weights(p)) => p.is_porous_exponential_dominating(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Start the γ_e / γ_e* searches at the ceiling of the LP optimum instead of 1.
    pub lp_lower_bound: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { lp_lower_bound: true }
    }
}

/// Every vertex of `targets ∖ d` has a neighbor in `d`.
pub fn dominates(g: &Graph, d: &VertexSet, targets: &VertexSet) -> bool {
    targets
        .iter()
        .all(|u| d.contains(u) || g.neighbors(u).iter().any(|&w| d.contains(w)))
}

fn per_component(g: &Graph, mut solve: impl FnMut(&Graph, &[usize]) -> Vec<usize>) -> VertexSet {
    let mut witness = VertexSet::new(g.n());
    for comp in g.components() {
        let sub = g.induced(&comp);
        for local in solve(&sub, &comp) {
            witness.insert(comp[local]);
        }
    }
    witness
}

pub fn domination_number(g: &Graph) -> DomCertificate {
    restricted_domination_number(g, &VertexSet::full(g.n()))
}

/// γ(G, X): smallest `D` such that every vertex of `X ∖ D` has a neighbor in `D`.
pub fn restricted_domination_number(g: &Graph, x: &VertexSet) -> DomCertificate {
    let witness = per_component(g, |sub, comp| {
        let targets: Vec<bool> = comp.iter().map(|&v| x.contains(v)).collect();
        DomSearch::new(sub, targets, None).minimum()
    });
    let full = VertexSet::full(g.n());
    let parameter = if x == &full {
        Parameter::Domination
    } else {
        Parameter::RestrictedDomination
    };
    DomCertificate {
        parameter,
        value: witness.len(),
        check: WitnessCheck::Domination {
            dominated: dominates(g, &witness, x),
        },
        witness,
    }
}

/// Minimum order of a dominating set containing `x`.
pub fn domination_with_forced_vertex(g: &Graph, x: usize) -> usize {
    assert!(x < g.n(), "vertex {x} out of range");
    let witness = per_component(g, |sub, comp| {
        let forced = comp.iter().position(|&v| v == x);
        DomSearch::new(sub, vec![true; sub.n()], forced).minimum()
    });
    debug_assert!(witness.contains(x) && dominates(g, &witness, &VertexSet::full(g.n())));
    witness.len()
}

pub fn exponential_domination_number(g: &Graph) -> DomCertificate {
    exponential_domination_number_with(g, SolveOptions::default())
}

pub fn exponential_domination_number_with(g: &Graph, opts: SolveOptions) -> DomCertificate {
    exp_certificate(g, Kind::Blocked, opts)
}

pub fn porous_exponential_domination_number(g: &Graph) -> DomCertificate {
    porous_exponential_domination_number_with(g, SolveOptions::default())
}

pub fn porous_exponential_domination_number_with(g: &Graph, opts: SolveOptions) -> DomCertificate {
    exp_certificate(g, Kind::Porous, opts)
}

fn exp_certificate(g: &Graph, kind: Kind, opts: SolveOptions) -> DomCertificate {
    let witness = per_component(g, |sub, _| {
        let lb = if opts.lp_lower_bound {
            ceil_to_usize(&fractional_porous_number(sub)).max(1)
        } else {
            1
        };
        (lb..=sub.n())
            .find_map(|k| exp_search(sub, kind, k, false).into_iter().next())
            .expect("the full vertex set dominates")
    });
    let profile = weight_profile(g, &witness);
    DomCertificate {
        parameter: match kind {
            Kind::Blocked => Parameter::Exponential,
            Kind::Porous => Parameter::PorousExponential,
        },
        value: witness.len(),
        witness,
        check: WitnessCheck::Weights(profile),
    }
}

/// Every porous exponential dominating set of minimum order, in lexicographic order.
pub fn all_minimum_porous_sets(g: &Graph) -> Vec<VertexSet> {
    let k = porous_exponential_domination_number(g).value;
    all_porous_sets_of_size(g, k)
}

pub(crate) fn all_porous_sets_of_size(g: &Graph, k: usize) -> Vec<VertexSet> {
    exp_search(g, Kind::Porous, k, true)
        .into_iter()
        .map(|s| VertexSet::from_iter_in(g.n(), s))
        .collect()
}

/// Whether some set of size `k` exponentially dominates `g`.
pub fn has_exponential_dominating_set_of_size(g: &Graph, k: usize) -> bool {
    !exp_search(g, Kind::Blocked, k, false).is_empty()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Blocked,
    Porous,
}

/// Fixed-point weights fit in `u128` with scale `2^n` up to this order.
const FIXED_POINT_MAX_ORDER: usize = 100;

fn exp_search(g: &Graph, kind: Kind, k: usize, all: bool) -> Vec<Vec<usize>> {
    if k > g.n() {
        return Vec::new();
    }
    if g.n() <= FIXED_POINT_MAX_ORDER {
        ExpSearch::<Fixed>::new(g, kind).run(k, all)
    } else {
        ExpSearch::<Dyadic>::new(g, kind).run(k, all)
    }
}

/// Exact weight arithmetic used inside the search loops.
trait SearchWeight: Clone + Ord + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self> {
    fn zero() -> Self;
    fn one(n: usize) -> Self;
    fn coeff(n: usize, d: ExtNat) -> Self;
    fn times(&self, k: usize) -> Self;
}

/// A dyadic weight scaled by `2^n`, exact for graphs of order at most
/// [`FIXED_POINT_MAX_ORDER`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Fixed(u128);

impl AddAssign<&Fixed> for Fixed {
    fn add_assign(&mut self, rhs: &Fixed) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Fixed> for Fixed {
    fn sub_assign(&mut self, rhs: &Fixed) {
        self.0 -= rhs.0;
    }
}

impl SearchWeight for Fixed {
    fn zero() -> Self {
        Fixed(0)
    }
    fn one(n: usize) -> Self {
        Fixed(1 << n)
    }
    fn coeff(n: usize, d: ExtNat) -> Self {
        match d {
            ExtNat::Finite(d) => Fixed(1 << (n + 1 - d as usize)),
            ExtNat::Infinite => Fixed(0),
        }
    }
    fn times(&self, k: usize) -> Self {
        Fixed(self.0 * k as u128)
    }
}

impl SearchWeight for Dyadic {
    fn zero() -> Self {
        Dyadic::zero()
    }
    fn one(_: usize) -> Self {
        Dyadic::one()
    }
    fn coeff(_: usize, d: ExtNat) -> Self {
        coeff(d)
    }
    fn times(&self, k: usize) -> Self {
        self * &Dyadic::from_int(k as i64)
    }
}

struct ExpSearch<'g, W> {
    g: &'g Graph,
    kind: Kind,
    one: W,
    /// `coef[u][v]`: porous influence of dominator `v` at `u`.
    coef: Vec<Vec<W>>,
    /// `suffix_max[u][s]`: largest `coef[u][v]` over `v >= s`.
    suffix_max: Vec<Vec<W>>,
}

impl<'g, W: SearchWeight> ExpSearch<'g, W> {
    fn new(g: &'g Graph, kind: Kind) -> Self {
        let n = g.n();
        let dist = distance_matrix(g);
        let coef: Vec<Vec<W>> = dist
            .iter()
            .map(|row| row.iter().map(|&d| W::coeff(n, d)).collect())
            .collect();
        let suffix_max = coef
            .iter()
            .map(|row| {
                let mut out = vec![W::zero(); n + 1];
                for s in (0..n).rev() {
                    out[s] = row[s].clone().max(out[s + 1].clone());
                }
                out
            })
            .collect();
        ExpSearch {
            g,
            kind,
            one: W::one(n),
            coef,
            suffix_max,
        }
    }

    fn run(&self, k: usize, all: bool) -> Vec<Vec<usize>> {
        let mut state = State {
            chosen: Vec::with_capacity(k),
            porous: vec![W::zero(); self.g.n()],
            out: Vec::new(),
            all,
        };
        self.dfs(0, k, &mut state);
        state.out
    }

    /// Returns `true` once the search may stop.
    fn dfs(&self, start: usize, remaining: usize, st: &mut State<W>) -> bool {
        let n = self.g.n();
        if remaining == 0 {
            if self.accepts(st) {
                st.out.push(st.chosen.clone());
                return !st.all;
            }
            return false;
        }
        // blocked weight never exceeds porous weight, so this bound prunes both kinds
        for u in 0..n {
            let mut best = self.suffix_max[u][start].times(remaining);
            best += &st.porous[u];
            if best < self.one {
                return false;
            }
        }
        for v in start..=n - remaining {
            st.chosen.push(v);
            for u in 0..n {
                st.porous[u] += &self.coef[u][v];
            }
            let stop = self.dfs(v + 1, remaining - 1, st);
            for u in 0..n {
                st.porous[u] -= &self.coef[u][v];
            }
            st.chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }

    fn accepts(&self, st: &State<W>) -> bool {
        if st.porous.iter().any(|w| *w < self.one) {
            return false;
        }
        match self.kind {
            Kind::Porous => true,
            Kind::Blocked => {
                let n = self.g.n();
                let mut in_set = vec![false; n];
                for &v in &st.chosen {
                    in_set[v] = true;
                }
                let mut blocked = vec![W::zero(); n];
                for &v in &st.chosen {
                    let dist = bfs_avoiding(self.g, v, |w| in_set[w]);
                    for (u, d) in dist.into_iter().enumerate() {
                        if !in_set[u] || u == v {
                            blocked[u] += &W::coeff(n, d);
                        }
                    }
                }
                blocked.iter().all(|w| *w >= self.one)
            }
        }
    }
}

struct State<W> {
    chosen: Vec<usize>,
    porous: Vec<W>,
    out: Vec<Vec<usize>>,
    all: bool,
}

/// Branch-and-bound over candidate sets for (restricted, forced) domination.
struct DomSearch<'g> {
    g: &'g Graph,
    targets: Vec<bool>,
    forced: Option<usize>,
    candidates: Vec<usize>,
    /// Largest candidate position in the closed neighborhood of each vertex.
    last_position: Vec<Option<usize>>,
    max_closed: usize,
}

impl<'g> DomSearch<'g> {
    fn new(g: &'g Graph, targets: Vec<bool>, forced: Option<usize>) -> Self {
        let candidates: Vec<usize> = (0..g.n()).filter(|&v| Some(v) != forced).collect();
        let mut position = vec![None; g.n()];
        for (i, &v) in candidates.iter().enumerate() {
            position[v] = Some(i);
        }
        let last_position = (0..g.n())
            .map(|u| {
                std::iter::once(u)
                    .chain(g.neighbors(u).iter().copied())
                    .filter_map(|w| position[w])
                    .max()
            })
            .collect();
        DomSearch {
            g,
            targets,
            forced,
            candidates,
            last_position,
            max_closed: g.max_degree() + 1,
        }
    }

    fn cover(&self, v: usize, count: &mut [usize], delta: isize) {
        for w in std::iter::once(v).chain(self.g.neighbors(v).iter().copied()) {
            count[w] = (count[w] as isize + delta) as usize;
        }
    }

    fn undominated(&self, count: &[usize]) -> usize {
        (0..self.g.n()).filter(|&u| self.targets[u] && count[u] == 0).count()
    }

    fn greedy_size(&self) -> usize {
        let mut count = vec![0; self.g.n()];
        let mut size = 0;
        if let Some(x) = self.forced {
            self.cover(x, &mut count, 1);
            size += 1;
        }
        while self.undominated(&count) > 0 {
            let gain = |v: usize| {
                std::iter::once(v)
                    .chain(self.g.neighbors(v).iter().copied())
                    .filter(|&w| self.targets[w] && count[w] == 0)
                    .count()
            };
            let best = (0..self.g.n()).max_by_key(|&v| (gain(v), std::cmp::Reverse(v))).expect("nonempty");
            self.cover(best, &mut count, 1);
            size += 1;
        }
        size
    }

    /// Local ids of a lexicographically first minimum set.
    fn minimum(&self) -> Vec<usize> {
        let fixed = self.forced.is_some() as usize;
        let mut count = vec![0; self.g.n()];
        if let Some(x) = self.forced {
            self.cover(x, &mut count, 1);
        }
        let lower = self.undominated(&count).div_ceil(self.max_closed) + fixed;
        let upper = self.greedy_size();
        for k in lower..=upper {
            let mut chosen: Vec<usize> = self.forced.into_iter().collect();
            if self.dfs(0, k - fixed, &mut count, &mut chosen) {
                chosen.sort_unstable();
                return chosen;
            }
        }
        unreachable!("greedy solution has size {upper}")
    }

    fn dfs(&self, start: usize, remaining: usize, count: &mut [usize], chosen: &mut Vec<usize>) -> bool {
        let open = self.undominated(count);
        if open == 0 {
            // a smaller set already dominates, so it was found on an earlier level
            return remaining == 0;
        }
        if remaining == 0 || open > remaining * self.max_closed {
            return false;
        }
        for u in 0..self.g.n() {
            if self.targets[u] && count[u] == 0 && self.last_position[u].is_none_or(|p| p < start) {
                return false;
            }
        }
        for i in start..self.candidates.len() {
            if self.candidates.len() - i < remaining {
                break;
            }
            let v = self.candidates[i];
            self.cover(v, count, 1);
            chosen.push(v);
            if self.dfs(i + 1, remaining - 1, count, chosen) {
                self.cover(v, count, -1);
                return true;
            }
            chosen.pop();
            self.cover(v, count, -1);
        }
        false
    }
}
