//! Diamond closure, the longest-path generating set `F_{u,v}`, exact
//! minimum generating sets and supporting chains.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::bruhat::{BruhatError, BruhatGraph, Interval};
use crate::coxeter::{CoxeterSystem, Element, Root, Side};
use crate::order::{divergence_index, s_gamma, OrderError, Path, PathFinder, ReflectionOrder};
use crate::polynomials::KlEngine;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiamondError {
    #[error("order is not Deodhar with respect to {v}")]
    NotDeodhar { v: String },
    #[error("d drops along the first edge; no supporting chain is needed")]
    WrongBranch,
    #[error("supporting chain construction failed: {0}")]
    ConstructionFailed(String),
    #[error("search budget of {nodes} nodes exhausted; minimum lies in [{lower}, {upper}]")]
    Budget {
        lower: usize,
        upper: usize,
        nodes: u64,
    },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Bruhat(#[from] BruhatError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Any 4-cycle of the undirected Bruhat graph.
    Strict,
    /// Only the diamonds of length-2 subintervals.
    Weak,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Strict => "strict",
            Mode::Weak => "weak",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict" => Ok(Mode::Strict),
            "weak" => Ok(Mode::Weak),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// A subset of the edges of one Bruhat graph, as a bitset over edge indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    bits: Vec<u64>,
    universe: usize,
}

impl EdgeSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            bits: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for k in 0..universe {
            set.insert(k);
        }
        set
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for k in indices {
            set.insert(k);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Returns whether `k` was newly inserted.
    pub fn insert(&mut self, k: usize) -> bool {
        assert!(k < self.universe, "edge {k} out of range");
        let (w, b) = (k / 64, 1u64 << (k % 64));
        let fresh = self.bits[w] & b == 0;
        self.bits[w] |= b;
        fresh
    }

    pub fn remove(&mut self, k: usize) {
        self.bits[k / 64] &= !(1u64 << (k % 64));
    }

    pub fn contains(&self, k: usize) -> bool {
        k < self.universe && self.bits[k / 64] & (1u64 << (k % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(|&k| self.contains(k))
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect(),
            universe: self.universe,
        }
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & !b).collect(),
            universe: self.universe,
        }
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct CycleIndex {
    cycles: Vec<[usize; 4]>,
    by_edge: Vec<Vec<usize>>,
}

impl CycleIndex {
    fn new(edge_count: usize, cycles: Vec<[usize; 4]>) -> Self {
        let mut by_edge = vec![Vec::new(); edge_count];
        for (c, cycle) in cycles.iter().enumerate() {
            for &k in cycle {
                by_edge[k].push(c);
            }
        }
        Self { cycles, by_edge }
    }
}

/// One firing of the closure rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub cycle: [usize; 4],
    pub added: Vec<usize>,
}

/// A Bruhat graph with its 4-cycles indexed by edge, for both modes.
pub struct DiamondGraph {
    graph: BruhatGraph,
    strict: CycleIndex,
    weak: CycleIndex,
}

impl DiamondGraph {
    pub fn new(graph: BruhatGraph) -> Self {
        let m = graph.edge_count();
        let strict = CycleIndex::new(m, graph.four_cycles());
        let weak = CycleIndex::new(m, graph.diamond_cycles());
        Self {
            graph,
            strict,
            weak,
        }
    }

    pub fn from_interval(interval: Interval) -> Result<Self, BruhatError> {
        Ok(Self::new(BruhatGraph::new(interval)?))
    }

    pub fn graph(&self) -> &BruhatGraph {
        &self.graph
    }

    pub fn interval(&self) -> &Interval {
        self.graph.interval()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn cycles(&self, mode: Mode) -> &[[usize; 4]] {
        &self.index(mode).cycles
    }

    fn index(&self, mode: Mode) -> &CycleIndex {
        match mode {
            Mode::Strict => &self.strict,
            Mode::Weak => &self.weak,
        }
    }

    pub fn empty_set(&self) -> EdgeSet {
        EdgeSet::empty(self.edge_count())
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count())
    }

    /// Edges with both endpoints in `[lo, hi]` (interval positions).
    pub fn edges_within(&self, lo: usize, hi: usize) -> EdgeSet {
        let interval = self.interval();
        let inside = |x: usize| interval.leq(lo, x) && interval.leq(x, hi);
        EdgeSet::from_indices(
            self.edge_count(),
            self.graph
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| inside(e.lo) && inside(e.hi))
                .map(|(k, _)| k),
        )
    }

    /// Edges of length 1.
    pub fn cover_edges(&self) -> EdgeSet {
        EdgeSet::from_indices(
            self.edge_count(),
            self.graph
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.length == 1)
                .map(|(k, _)| k),
        )
    }

    /// Edges of a saturated chain given by interval positions.
    pub fn chain_edges(&self, chain: &[usize]) -> EdgeSet {
        EdgeSet::from_indices(
            self.edge_count(),
            chain.windows(2).map(|w| {
                self.graph
                    .edge_between(w[0], w[1])
                    .expect("consecutive chain elements are joined")
            }),
        )
    }

    fn run(
        &self,
        set: &mut EdgeSet,
        queue: &mut VecDeque<usize>,
        mode: Mode,
        mut trace: Option<&mut Vec<TraceStep>>,
    ) {
        let index = self.index(mode);
        while let Some(k) = queue.pop_front() {
            for &c in &index.by_edge[k] {
                let cycle = index.cycles[c];
                let fires = (0..4).any(|i| set.contains(cycle[i]) && set.contains(cycle[(i + 1) % 4]));
                if !fires {
                    continue;
                }
                let mut added = Vec::new();
                for &e in &cycle {
                    if set.insert(e) {
                        added.push(e);
                        queue.push_back(e);
                    }
                }
                if let (Some(t), false) = (trace.as_deref_mut(), added.is_empty()) {
                    t.push(TraceStep { cycle, added });
                }
            }
        }
    }

    pub fn closure(&self, set: &EdgeSet, mode: Mode) -> EdgeSet {
        let mut out = set.clone();
        let mut queue: VecDeque<usize> = set.iter().collect();
        self.run(&mut out, &mut queue, mode, None);
        out
    }

    /// Closure of `closed ∪ {k}` where `closed` is already closed.
    pub fn extend_closure(&self, closed: &EdgeSet, k: usize, mode: Mode) -> EdgeSet {
        let mut out = closed.clone();
        if out.insert(k) {
            let mut queue = VecDeque::from([k]);
            self.run(&mut out, &mut queue, mode, None);
        }
        out
    }

    /// The closure run step by step; the added edges partition
    /// `closure \ set`.
    pub fn closure_trace(&self, set: &EdgeSet, mode: Mode) -> Vec<TraceStep> {
        let mut out = set.clone();
        let mut queue: VecDeque<usize> = set.iter().collect();
        let mut trace = Vec::new();
        self.run(&mut out, &mut queue, mode, Some(&mut trace));
        trace
    }

    /// The edges a generating set must reach: all of them in strict mode,
    /// the cover edges in weak mode. Length-2 diamonds consist of cover
    /// edges only, so no weak closure ever contains a long edge.
    pub fn target(&self, mode: Mode) -> EdgeSet {
        match mode {
            Mode::Strict => self.all_edges(),
            Mode::Weak => self.cover_edges(),
        }
    }

    pub fn is_generating(&self, set: &EdgeSet, mode: Mode) -> bool {
        self.target(mode).is_subset(&self.closure(set, mode))
    }

    /// Exact minimum size of a generating set, by iterative deepening from
    /// `options.lower_bound`.
    pub fn g_min(&self, mode: Mode, options: &GMinOptions) -> Result<GMin, DiamondError> {
        let m = self.edge_count();
        let target = self.target(mode);
        let allowed = if options.restrict_len1 || mode == Mode::Weak {
            self.cover_edges()
        } else {
            self.all_edges()
        };
        let length = self.interval().length();
        if length <= 1 {
            return Ok(GMin {
                size: allowed.len(),
                certificate: allowed,
                nodes: 0,
            });
        }
        let mut upper: EdgeSet = allowed.clone();
        let mut candidates_for_upper = options.upper_hints.clone();
        if let Some(chain) = self.interval().maximal_chains().next() {
            candidates_for_upper.push(self.chain_edges(&chain));
        }
        for hint in candidates_for_upper {
            if hint.len() < upper.len() && hint.is_subset(&allowed) && self.is_generating(&hint, mode)
            {
                upper = hint;
            }
        }
        if !self.is_generating(&upper, mode) {
            return Err(DiamondError::ConstructionFailed(
                "the allowed edges do not generate".into(),
            ));
        }
        let mut candidates: Vec<usize> = allowed.iter().collect();
        let edges = self.graph.edges();
        candidates.sort_by(|&a, &b| edges[b].length.cmp(&edges[a].length).then(a.cmp(&b)));
        let mut nodes = 0u64;
        for k in options.lower_bound..upper.len() {
            let mut chosen = Vec::with_capacity(k);
            let found = self.search(
                &candidates,
                0,
                k,
                &EdgeSet::empty(m),
                &target,
                &mut chosen,
                mode,
                &mut nodes,
                options.node_budget,
            );
            match found {
                Some(true) => {
                    return Ok(GMin {
                        size: k,
                        certificate: EdgeSet::from_indices(m, chosen),
                        nodes,
                    })
                }
                Some(false) => {}
                None => {
                    return Err(DiamondError::Budget {
                        lower: k,
                        upper: upper.len(),
                        nodes,
                    })
                }
            }
        }
        Ok(GMin {
            size: upper.len(),
            certificate: upper,
            nodes,
        })
    }

    /// Looks for `k` more edges from `candidates[start..]` making `closed`
    /// generate. `None` means the budget ran out.
    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        candidates: &[usize],
        start: usize,
        k: usize,
        closed: &EdgeSet,
        target: &EdgeSet,
        chosen: &mut Vec<usize>,
        mode: Mode,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        if k == 0 {
            return Some(target.is_subset(closed));
        }
        for i in start..candidates.len() {
            if candidates.len() - i < k {
                break;
            }
            let e = candidates[i];
            // an edge already in the closure adds nothing
            if closed.contains(e) {
                continue;
            }
            let next = self.extend_closure(closed, e, mode);
            chosen.push(e);
            if self.search(candidates, i + 1, k - 1, &next, target, chosen, mode, nodes, budget)? {
                return Some(true);
            }
            chosen.pop();
        }
        Some(false)
    }
}

#[derive(Debug, Clone)]
pub struct GMinOptions {
    pub restrict_len1: bool,
    /// Sizes below this are not searched.
    pub lower_bound: usize,
    /// Known generating sets; the smallest valid one bounds the search.
    pub upper_hints: Vec<EdgeSet>,
    pub node_budget: u64,
}

impl Default for GMinOptions {
    fn default() -> Self {
        Self {
            restrict_len1: false,
            lower_bound: 0,
            upper_hints: Vec::new(),
            node_budget: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMin {
    pub size: usize,
    pub certificate: EdgeSet,
    pub nodes: u64,
}

/// Whether `N(v)` is an initial section of `order` on the roots that matter
/// for `graph`.
pub fn check_deodhar(
    sys: &CoxeterSystem,
    graph: &BruhatGraph,
    order: &ReflectionOrder,
) -> Result<(), DiamondError> {
    let v = graph.interval().v();
    let section: BTreeSet<Root> = sys.inversion_set(v);
    if order.is_initial_section(&section, &graph.labels())? {
        Ok(())
    } else {
        Err(DiamondError::NotDeodhar {
            v: v.word_string(),
        })
    }
}

/// `F_{u,v}` together with the data it is read off from.
#[derive(Debug, Clone)]
pub struct FSet {
    pub longest: Path,
    /// `d_{x_i, v}` along the longest path.
    pub d_values: Vec<usize>,
    pub edges: EdgeSet,
}

/// Edges `(x_i, x_{i+1})` of the longest path with `d_{x_i,v} = d_{x_{i+1},v} + 1`.
pub fn f_uv(
    engine: &KlEngine,
    dg: &DiamondGraph,
    order: &ReflectionOrder,
) -> Result<FSet, DiamondError> {
    check_deodhar(engine.system(), dg.graph(), order)?;
    let finder = PathFinder::new(dg.graph(), order)?;
    let longest = finder.longest_path()?;
    let v = dg.interval().v();
    let d_values: Vec<usize> = longest
        .vertices
        .iter()
        .map(|x| engine.d_invariant(x, v))
        .collect();
    let edges = EdgeSet::from_indices(
        dg.edge_count(),
        (0..longest.len())
            .filter(|&i| d_values[i] == d_values[i + 1] + 1)
            .map(|i| {
                dg.graph()
                    .edge_between(longest.positions[i], longest.positions[i + 1])
                    .expect("path step is an edge")
            }),
    );
    Ok(FSet {
        longest,
        d_values,
        edges,
    })
}

/// A saturated chain supporting the first edge of the longest path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportingChain {
    /// Bottom to top.
    pub elements: Vec<Element>,
    /// For each element, a vertex of the second-length path it covers.
    pub witnesses: Vec<Element>,
    /// The second-length path diverging at `u`.
    pub path: Path,
    /// The unique length-3 edge `y → z` of `path`.
    pub y: Element,
    pub z: Element,
}

fn covers(x: &Element, y: &Element, sys: &CoxeterSystem) -> bool {
    x.length() == y.length() + 1 && sys.bruhat_leq(y, x)
}

fn fail(detail: impl Into<String>) -> DiamondError {
    DiamondError::ConstructionFailed(detail.into())
}

/// The unique second-length path diverging at `u`, and the index of its
/// unique length-3 edge.
fn diverging_path(finder: &PathFinder, longest: &Path) -> Result<(Path, usize), DiamondError> {
    let mut diverging: Vec<Path> = finder
        .second_length_paths()
        .into_iter()
        .filter(|p| divergence_index(p, longest) == Some(0))
        .collect();
    if diverging.len() != 1 {
        return Err(fail(format!(
            "expected one second-length path diverging at u, found {}",
            diverging.len()
        )));
    }
    let path = diverging.pop().unwrap();
    let long: Vec<usize> = (0..path.len()).filter(|&i| path.lengths[i] == 3).collect();
    if long.len() != 1 || path.lengths.iter().any(|&l| l != 1 && l != 3) {
        return Err(fail(format!(
            "second-length path has edge lengths {:?}; expected exactly one 3",
            path.lengths
        )));
    }
    Ok((path, long[0]))
}

/// Builds a supporting chain following the induction on `ℓ(v)`.
pub fn supporting_chain(
    engine: &KlEngine,
    dg: &DiamondGraph,
    order: &ReflectionOrder,
) -> Result<SupportingChain, DiamondError> {
    let sys = engine.system();
    check_deodhar(sys, dg.graph(), order)?;
    let finder = PathFinder::new(dg.graph(), order)?;
    let longest = finder.longest_path()?;
    if longest.is_empty() {
        return Err(DiamondError::WrongBranch);
    }
    let v = dg.interval().v();
    let (u, x1) = (&longest.vertices[0], &longest.vertices[1]);
    let (du, dx1) = (engine.d_invariant(u, v), engine.d_invariant(x1, v));
    if du == dx1 + 1 {
        return Err(DiamondError::WrongBranch);
    }
    if du != dx1 {
        return Err(fail(format!("d drops from {du} to {dx1} along the first edge")));
    }
    let (path, j) = diverging_path(&finder, &longest)?;
    let elements = chain_rec(sys, order, &longest, &path, j)?;
    let chain = SupportingChain {
        witnesses: Vec::new(),
        y: path.vertices[j].clone(),
        z: path.vertices[j + 1].clone(),
        path,
        elements,
    };
    let chain = verify_supporting_chain(sys, dg, &longest, chain)?;
    let x1_pos = longest.positions[1];
    let upper = dg.closure(&dg.edges_within(x1_pos, dg.interval().top()), Mode::Strict);
    let first = dg
        .graph()
        .edge_between(longest.positions[0], x1_pos)
        .expect("first step is an edge");
    if !upper.contains(first) {
        return Err(fail("(u, x1) is not in the closure of the edges above x1"));
    }
    Ok(chain)
}

fn chain_rec(
    sys: &CoxeterSystem,
    order: &ReflectionOrder,
    longest: &Path,
    path: &Path,
    j: usize,
) -> Result<Vec<Element>, DiamondError> {
    let s = order.minimal_simple()?;
    let u = &path.vertices[0];
    let ys = &path.vertices[..=j];
    let translate = |xs: &[Element]| -> Vec<Element> {
        xs.iter().map(|x| sys.mul_gen(x, s, Side::Left)).collect()
    };
    if !u.has_descent(s, Side::Left) {
        return Ok(translate(ys));
    }
    let s_longest = s_gamma(order, longest, s)?;
    let s_path = s_gamma(order, path, s)?;
    let conjugate = order.upper_s_conjugate(s);
    let interval = Interval::new(sys, &s_longest.vertices[0], s_longest.vertices.last().unwrap())?;
    let graph = BruhatGraph::new(interval)?;
    let finder = PathFinder::new(&graph, &conjugate)?;
    let sub_longest = finder.longest_path()?;
    if sub_longest.vertices != s_longest.vertices {
        return Err(fail("s-translate of the longest path is not longest"));
    }
    let (sub_path, sub_j) = diverging_path(&finder, &sub_longest)?;
    if sub_path.vertices != s_path.vertices {
        return Err(fail("s-translate of the diverging path is not the diverging path"));
    }
    let inner = chain_rec(sys, &conjugate, &sub_longest, &sub_path, sub_j)?;
    let mut chain = translate(&inner);
    let y = &path.vertices[j];
    if !y.has_descent(s, Side::Left) {
        let down = ys
            .iter()
            .rposition(|w| w.has_descent(s, Side::Left))
            .expect("u has s as a left descent");
        chain.extend(translate(&ys[down + 1..]));
    }
    Ok(chain)
}

fn verify_supporting_chain(
    sys: &CoxeterSystem,
    dg: &DiamondGraph,
    longest: &Path,
    mut chain: SupportingChain,
) -> Result<SupportingChain, DiamondError> {
    let c = &chain.elements;
    if c.is_empty() {
        return Err(fail("empty chain"));
    }
    if c.iter().any(|x| dg.interval().index_of(x).is_none()) {
        return Err(fail("chain leaves the interval"));
    }
    if c.windows(2).any(|w| !covers(&w[1], &w[0], sys)) {
        return Err(fail("chain is not saturated"));
    }
    if c.iter().any(|x| chain.path.contains(x)) {
        return Err(fail("chain meets the second-length path"));
    }
    if c[0] != longest.vertices[1] {
        return Err(fail("chain does not start at x1"));
    }
    let top = c.last().unwrap();
    if !covers(top, &chain.y, sys) || !sys.bruhat_leq(top, &chain.z) {
        return Err(fail("chain maximum is not an atom of [y, z]"));
    }
    let mut witnesses = Vec::with_capacity(c.len());
    for x in c {
        let w = chain
            .path
            .vertices
            .iter()
            .find(|w| covers(x, w, sys))
            .ok_or_else(|| fail(format!("{x} covers no vertex of the path")))?;
        witnesses.push(w.clone());
    }
    chain.witnesses = witnesses;
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    fn dg(sys: &CoxeterSystem, u: &str, v: &str) -> DiamondGraph {
        let i = Interval::new(sys, &sys.parse_word(u).unwrap(), &sys.parse_word(v).unwrap())
            .unwrap();
        DiamondGraph::from_interval(i).unwrap()
    }

    #[test]
    fn edge_set_algebra() {
        let mut a = EdgeSet::empty(70);
        assert!(a.insert(3));
        assert!(!a.insert(3));
        a.insert(68);
        let b = EdgeSet::from_indices(70, [3, 5]);
        assert_eq!(a.union(&b).iter().collect::<Vec<_>>(), vec![3, 5, 68]);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![68]);
        assert!(!b.is_subset(&a));
        assert!(EdgeSet::from_indices(70, [3]).is_subset(&a));
        a.remove(3);
        assert_eq!(a.len(), 1);
        assert!(EdgeSet::full(70).is_full());
    }

    #[test]
    fn diamond_needs_two_edges() {
        let sys = CoxeterSystem::new(CoxeterMatrix::type_a(2));
        let d = dg(&sys, "e", "1 2");
        assert_eq!(d.edge_count(), 4);
        for k in 0..4 {
            assert!(!d.is_generating(&EdgeSet::from_indices(4, [k]), Mode::Strict));
        }
        let g = d.g_min(Mode::Strict, &GMinOptions::default()).unwrap();
        assert_eq!(g.size, 2);
        assert!(d.is_generating(&g.certificate, Mode::Strict));
        let chain = d.interval().maximal_chains().next().unwrap();
        let trace = d.closure_trace(&d.chain_edges(&chain), Mode::Strict);
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].added.len(), 2);
        assert!(d.closure_trace(&d.all_edges(), Mode::Strict).is_empty());
        assert!(d.closure(&d.empty_set(), Mode::Weak).is_empty());
    }

    #[test]
    fn weak_mode_never_reaches_long_edges() {
        let sys = CoxeterSystem::new(CoxeterMatrix::type_a(2));
        let d = dg(&sys, "e", "1 2 1");
        assert_eq!(d.edge_count(), 9);
        let weak = d.closure(&d.cover_edges(), Mode::Weak);
        assert_eq!(weak, d.cover_edges());
        assert!(d.is_generating(&d.cover_edges(), Mode::Weak));
        assert!(d.is_generating(&d.cover_edges(), Mode::Strict));
        let g = d.g_min(Mode::Weak, &GMinOptions::default()).unwrap();
        assert_eq!(g.size, 2);
        assert!(g.certificate.is_subset(&d.cover_edges()));
    }

    #[test]
    fn f_and_chain_in_s4() {
        let sys = CoxeterSystem::new(CoxeterMatrix::type_a(3));
        let engine = KlEngine::new(&sys);
        let v = sys.parse_word("1 2 3 2 1").unwrap();
        let d = dg(&sys, "e", "1 2 3 2 1");
        let order = ReflectionOrder::deodhar(&sys, &v, 0);
        let f = f_uv(&engine, &d, &order).unwrap();
        assert_eq!(f.edges.len(), 3);
        assert!(d.is_generating(&f.edges, Mode::Strict));
        let trace = d.closure_trace(&f.edges, Mode::Strict);
        let added: usize = trace.iter().map(|t| t.added.len()).sum();
        assert_eq!(added, d.edge_count() - 3);

        let bad = ReflectionOrder::deodhar(&sys, &sys.parse_word("2").unwrap(), 0);
        assert!(matches!(
            f_uv(&engine, &d, &bad),
            Err(DiamondError::NotDeodhar { .. })
        ));
    }

    #[test]
    fn chain_branches() {
        let sys = CoxeterSystem::new(CoxeterMatrix::type_a(2));
        let engine = KlEngine::new(&sys);
        let d = dg(&sys, "e", "1");
        let order = ReflectionOrder::deodhar(&sys, &sys.parse_word("1").unwrap(), 0);
        assert!(matches!(
            supporting_chain(&engine, &d, &order),
            Err(DiamondError::WrongBranch)
        ));
    }
}
