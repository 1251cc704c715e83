//! Computable reflection orders and increasing paths in Bruhat graphs.
//!
//! A ratio-key order carries a list of functional pairs `(e_i, d_i)` with
//! every `d_i` strictly positive. Roots are compared by the keys
//! `⟨e_i, β⟩ / ⟨d_i, β⟩`, lexicographically over `i`. A positive combination
//! of two roots has a key that is a mediant of theirs, which gives the
//! betweenness axiom level by level.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bruhat::BruhatGraph;
use crate::coxeter::{CoxeterSystem, Element, Gen, Root, Side};

/// Base of the default generic functional `(1, M, M², …)`.
pub const GENERIC_BASE: i64 = 1_000_000;
const TIE_BREAK_LEVELS: usize = 2;
const RANDOM_RANGE: i64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("reflection order cannot separate {a} and {b}")]
    TieUnresolved { a: Root, b: Root },
    #[error("cannot compare {0} with itself")]
    SameRoot(Root),
    #[error("{0} is not a positive root")]
    NotPositive(Root),
    #[error("order is not antisymmetric on {a} and {b}")]
    NotAntisymmetric { a: Root, b: Root },
    #[error("{count} increasing paths have maximal length")]
    MultipleLongest { count: usize },
    #[error("no increasing path of maximal length")]
    NoLongest,
    #[error("longest increasing path is not the lex-minimal one")]
    NotLexMinimal,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

#[derive(Debug, Clone)]
struct Level {
    e: Vec<BigInt>,
    d: Vec<BigInt>,
}

impl Level {
    fn pair(&self, root: &Root) -> (BigInt, BigInt) {
        let dot = |f: &[BigInt]| -> BigInt {
            f.iter()
                .zip(root.coords())
                .map(|(a, &b)| a * BigInt::from(b))
                .sum()
        };
        (dot(&self.e), dot(&self.d))
    }

    fn compare(&self, a: &Root, b: &Root) -> Ordering {
        let (ea, da) = self.pair(a);
        let (eb, db) = self.pair(b);
        (ea * db).cmp(&(eb * da))
    }
}

enum OrderKind {
    Ratio(Vec<Level>),
    UpperConjugate { base: ReflectionOrder, s: Gen },
}

/// A reflection order, either ratio-keyed or the upper `s`-conjugate of
/// another order. Cheap to clone.
#[derive(Clone)]
pub struct ReflectionOrder {
    sys: CoxeterSystem,
    kind: Arc<OrderKind>,
}

impl fmt::Debug for ReflectionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.kind {
            OrderKind::Ratio(levels) => write!(f, "RatioOrder({} levels)", levels.len()),
            OrderKind::UpperConjugate { base, s } => write!(f, "{base:?}^s{}", s + 1),
        }
    }
}

fn generic_base(rank: usize) -> Vec<BigInt> {
    let m = BigInt::from(GENERIC_BASE);
    (0..rank).map(|i| m.pow(i as u32)).collect()
}

fn random_positive(rng: &mut ChaCha8Rng, rank: usize) -> Vec<BigInt> {
    (0..rank)
        .map(|_| BigInt::from(rng.gen_range(1..=RANDOM_RANGE)))
        .collect()
}

fn random_signed(rng: &mut ChaCha8Rng, rank: usize) -> Vec<BigInt> {
    (0..rank)
        .map(|_| BigInt::from(rng.gen_range(-RANDOM_RANGE..=RANDOM_RANGE)))
        .collect()
}

/// `Mᵀ f`, so that `⟨Mᵀ f, β⟩ = ⟨f, Mβ⟩`.
fn pull_back(w: &Element, f: &[BigInt]) -> Vec<BigInt> {
    let m = w.action();
    (0..m.dim())
        .map(|j| {
            (0..m.dim())
                .map(|i| &f[i] * BigInt::from(m.get(i, j)))
                .sum()
        })
        .collect()
}

impl ReflectionOrder {
    /// An order with `N(v)` as an initial section: the primary key is
    /// `⟨d, v⁻¹β⟩ / ⟨d, β⟩`, negative exactly on `N(v)`.
    pub fn deodhar(sys: &CoxeterSystem, v: &Element, seed: u64) -> Self {
        let v_inv = sys.inverse(v);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = generic_base(sys.rank());
        let mut levels = vec![Level {
            e: pull_back(&v_inv, &base),
            d: base,
        }];
        for _ in 0..TIE_BREAK_LEVELS {
            levels.push(Level {
                e: random_signed(&mut rng, sys.rank()),
                d: random_positive(&mut rng, sys.rank()),
            });
        }
        Self::from_levels(sys, levels)
    }

    /// The Deodhar order for the identity: every primary key is 1, so the
    /// tie-break levels decide.
    pub fn default_order(sys: &CoxeterSystem, seed: u64) -> Self {
        Self::deodhar(sys, &sys.identity(), seed)
    }

    /// A pseudo-random ratio-key order.
    pub fn random(sys: &CoxeterSystem, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let levels = (0..=TIE_BREAK_LEVELS)
            .map(|_| Level {
                e: random_signed(&mut rng, sys.rank()),
                d: random_positive(&mut rng, sys.rank()),
            })
            .collect();
        Self::from_levels(sys, levels)
    }

    fn from_levels(sys: &CoxeterSystem, levels: Vec<Level>) -> Self {
        Self {
            sys: sys.clone(),
            kind: Arc::new(OrderKind::Ratio(levels)),
        }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    /// Numerator and (positive) denominator of the primary key of a ratio
    /// order; `None` for conjugated orders.
    pub fn primary_key(&self, root: &Root) -> Option<(BigInt, BigInt)> {
        match &*self.kind {
            OrderKind::Ratio(levels) => Some(levels[0].pair(root)),
            OrderKind::UpperConjugate { .. } => None,
        }
    }

    pub fn upper_s_conjugate(&self, s: Gen) -> Self {
        Self {
            sys: self.sys.clone(),
            kind: Arc::new(OrderKind::UpperConjugate {
                base: self.clone(),
                s,
            }),
        }
    }

    pub fn compare(&self, a: &Root, b: &Root) -> Result<Ordering, OrderError> {
        for r in [a, b] {
            if !r.is_positive() {
                return Err(OrderError::NotPositive(r.clone()));
            }
        }
        if a == b {
            return Err(OrderError::SameRoot(a.clone()));
        }
        self.compare_distinct(a, b)
    }

    /// Whether `a ≺ b`.
    pub fn precedes(&self, a: &Root, b: &Root) -> Result<bool, OrderError> {
        Ok(self.compare(a, b)? == Ordering::Less)
    }

    fn compare_distinct(&self, a: &Root, b: &Root) -> Result<Ordering, OrderError> {
        match &*self.kind {
            OrderKind::Ratio(levels) => levels
                .iter()
                .map(|level| level.compare(a, b))
                .find(|o| o.is_ne())
                .ok_or_else(|| OrderError::TieUnresolved {
                    a: a.clone(),
                    b: b.clone(),
                }),
            OrderKind::UpperConjugate { base, s } => {
                let alpha_s = Root::simple(self.sys.rank(), *s);
                if *b == alpha_s {
                    return Ok(Ordering::Less);
                }
                if *a == alpha_s {
                    return Ok(Ordering::Greater);
                }
                let a_low = base.compare_distinct(a, &alpha_s)?.is_lt();
                let b_low = base.compare_distinct(b, &alpha_s)?.is_lt();
                match (a_low, b_low) {
                    (true, true) => base.compare_distinct(a, b),
                    (true, false) => Ok(Ordering::Less),
                    (false, true) => Ok(Ordering::Greater),
                    (false, false) => {
                        let sa = self.reflect_root(*s, a);
                        let sb = self.reflect_root(*s, b);
                        base.compare_distinct(&sa, &sb)
                    }
                }
            }
        }
    }

    fn reflect_root(&self, s: Gen, root: &Root) -> Root {
        Root::new(self.sys.reflect(s, root.coords())).expect("reflection of a root is a root")
    }

    /// The simple root preceding all other simple roots, which is the
    /// minimum of the whole order.
    pub fn minimal_simple(&self) -> Result<Gen, OrderError> {
        let n = self.sys.rank();
        let mut best = 0;
        for t in 1..n {
            if self
                .compare_distinct(&Root::simple(n, t), &Root::simple(n, best))?
                .is_lt()
            {
                best = t;
            }
        }
        Ok(best)
    }

    /// Sorts `roots` and checks antisymmetry and totality on every pair.
    pub fn rank(&self, roots: &[Root]) -> Result<RootRanking, OrderError> {
        let mut sorted: Vec<Root> = roots.to_vec();
        sorted.sort();
        sorted.dedup();
        for r in &sorted {
            if !r.is_positive() {
                return Err(OrderError::NotPositive(r.clone()));
            }
        }
        let n = sorted.len();
        let mut wins = vec![0usize; n];
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.compare_distinct(&sorted[i], &sorted[j])?;
                let ji = self.compare_distinct(&sorted[j], &sorted[i])?;
                if ij != ji.reverse() {
                    return Err(OrderError::NotAntisymmetric {
                        a: sorted[i].clone(),
                        b: sorted[j].clone(),
                    });
                }
                if ij.is_lt() {
                    wins[j] += 1;
                } else {
                    wins[i] += 1;
                }
            }
        }
        // in a total order, the number of predecessors is the position
        let mut by_rank: Vec<Option<Root>> = vec![None; n];
        for (root, &w) in sorted.iter().zip(&wins) {
            if by_rank[w].replace(root.clone()).is_some() {
                return Err(OrderError::PreconditionViolated(
                    "order is not transitive on the compared roots".into(),
                ));
            }
        }
        let sorted: Vec<Root> = by_rank.into_iter().map(Option::unwrap).collect();
        let ranks = sorted
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        Ok(RootRanking { sorted, ranks })
    }

    /// Whether `section` precedes every root of `others` outside it.
    pub fn is_initial_section(
        &self,
        section: &BTreeSet<Root>,
        others: &[Root],
    ) -> Result<bool, OrderError> {
        let mut all: Vec<Root> = section.iter().cloned().collect();
        all.extend(others.iter().cloned());
        let ranking = self.rank(&all)?;
        let first_outside = ranking
            .sorted()
            .iter()
            .position(|r| !section.contains(r))
            .unwrap_or(ranking.len());
        Ok(ranking.sorted()[first_outside..]
            .iter()
            .all(|r| !section.contains(r)))
    }
}

/// A reflection order evaluated on a finite root set.
#[derive(Debug, Clone)]
pub struct RootRanking {
    sorted: Vec<Root>,
    ranks: HashMap<Root, usize>,
}

impl RootRanking {
    pub fn sorted(&self) -> &[Root] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn rank_of(&self, root: &Root) -> Option<usize> {
        self.ranks.get(root).copied()
    }
}

/// Builds an order from `seed` and ranks `roots`; on an unresolved tie the
/// order is rebuilt once from a derived seed.
pub fn rank_with_reseed(
    build: impl Fn(u64) -> ReflectionOrder,
    seed: u64,
    roots: &[Root],
) -> Result<(ReflectionOrder, RootRanking), OrderError> {
    let order = build(seed);
    match order.rank(roots) {
        Ok(ranking) => Ok((order, ranking)),
        Err(OrderError::TieUnresolved { .. }) => {
            let order = build(seed ^ 0x9e37_79b9_7f4a_7c15);
            let ranking = order.rank(roots)?;
            Ok((order, ranking))
        }
        Err(e) => Err(e),
    }
}

/// An increasing path `x₀ → x₁ → ⋯ → x_k` of a Bruhat graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    /// Vertex positions in the interval.
    pub positions: Vec<usize>,
    pub vertices: Vec<Element>,
    pub labels: Vec<Root>,
    pub lengths: Vec<usize>,
}

impl Path {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.vertices.contains(x)
    }

    /// `len=<k>; labels=<β₁|β₂|...>; vertices=<w₀|w₁|...>`
    pub fn dump_line(&self) -> String {
        let labels: Vec<String> = self.labels.iter().map(Root::to_string).collect();
        let vertices: Vec<String> = self.vertices.iter().map(Element::word_string).collect();
        format!(
            "len={}; labels={}; vertices={}",
            self.len(),
            labels.join("|"),
            vertices.join("|")
        )
    }
}

/// Increasing-path enumeration on one graph under one order.
pub struct PathFinder<'g> {
    graph: &'g BruhatGraph,
    order: ReflectionOrder,
    ranking: RootRanking,
    edge_rank: Vec<usize>,
    /// Outgoing edges of each vertex, by increasing label.
    sorted_out: Vec<Vec<usize>>,
}

impl<'g> PathFinder<'g> {
    pub fn new(graph: &'g BruhatGraph, order: &ReflectionOrder) -> Result<Self, OrderError> {
        let ranking = order.rank(&graph.labels())?;
        Ok(Self::with_ranking(graph, order, ranking))
    }

    /// Uses a ranking that already covers every label of `graph`.
    pub fn with_ranking(
        graph: &'g BruhatGraph,
        order: &ReflectionOrder,
        ranking: RootRanking,
    ) -> Self {
        let edge_rank: Vec<usize> = graph
            .edges()
            .iter()
            .map(|e| ranking.rank_of(&e.label).expect("label is ranked"))
            .collect();
        let sorted_out = (0..graph.interval().len())
            .map(|x| {
                let mut out = graph.outgoing_edges(x).to_vec();
                out.sort_by_key(|&k| edge_rank[k]);
                out
            })
            .collect();
        Self {
            graph,
            order: order.clone(),
            ranking,
            edge_rank,
            sorted_out,
        }
    }

    pub fn graph(&self) -> &BruhatGraph {
        self.graph
    }

    pub fn order(&self) -> &ReflectionOrder {
        &self.order
    }

    pub fn ranking(&self) -> &RootRanking {
        &self.ranking
    }

    fn build_path(&self, edges: &[usize]) -> Path {
        let interval = self.graph.interval();
        let mut positions = vec![interval.bottom()];
        positions.extend(edges.iter().map(|&k| self.graph.edge(k).hi));
        Path {
            vertices: positions.iter().map(|&i| interval.element(i).clone()).collect(),
            positions,
            labels: edges.iter().map(|&k| self.graph.edge(k).label.clone()).collect(),
            lengths: edges.iter().map(|&k| self.graph.edge(k).length).collect(),
        }
    }

    /// Increasing paths from bottom to top whose excess
    /// `Σ (ℓ(edge) − 1) = ℓ(u,v) − ℓ(γ)` is at most `max_excess`, in
    /// lexicographic order of label sequences.
    pub fn paths_with_excess(&self, max_excess: Option<usize>) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        let mut dead = HashSet::new();
        self.dfs(
            self.graph.interval().bottom(),
            None,
            max_excess.unwrap_or(usize::MAX),
            &mut stack,
            &mut dead,
            &mut |edges| {
                out.push(self.build_path(edges));
                true
            },
        );
        out
    }

    /// Returns whether some completion was reported. `visit` returns false
    /// to stop the search.
    fn dfs(
        &self,
        x: usize,
        last: Option<usize>,
        budget: usize,
        stack: &mut Vec<usize>,
        dead: &mut HashSet<(usize, Option<usize>, usize)>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Option<bool> {
        if x == self.graph.interval().top() {
            return if visit(stack) { Some(true) } else { None };
        }
        if dead.contains(&(x, last, budget)) {
            return Some(false);
        }
        let mut found = false;
        for &k in &self.sorted_out[x] {
            if last.is_some_and(|r| self.edge_rank[k] <= r) {
                continue;
            }
            let excess = self.graph.edge(k).length - 1;
            if excess > budget {
                continue;
            }
            stack.push(k);
            let hit = self.dfs(
                self.graph.edge(k).hi,
                Some(self.edge_rank[k]),
                budget - excess,
                stack,
                dead,
                visit,
            );
            stack.pop();
            found |= hit?;
        }
        if !found {
            dead.insert((x, last, budget));
        }
        Some(found)
    }

    pub fn increasing_paths(&self) -> Vec<Path> {
        self.paths_with_excess(None)
    }

    /// Coefficients of `Σ q^{ℓ(γ)}` over all increasing paths.
    pub fn length_generating_function(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.graph.interval().length() + 1];
        for p in self.increasing_paths() {
            counts[p.len()] += 1;
        }
        counts
    }

    /// The lexicographically least label sequence among increasing paths.
    pub fn lex_minimal_path(&self) -> Option<Path> {
        let mut first = None;
        let mut stack = Vec::new();
        let mut dead = HashSet::new();
        self.dfs(
            self.graph.interval().bottom(),
            None,
            usize::MAX,
            &mut stack,
            &mut dead,
            &mut |edges| {
                first = Some(self.build_path(edges));
                false
            },
        );
        first
    }

    /// The unique increasing path of length `ℓ(u,v)`, checked to be the
    /// lex-minimal increasing path.
    pub fn longest_path(&self) -> Result<Path, OrderError> {
        let mut found = self.paths_with_excess(Some(0));
        match found.len() {
            0 => Err(OrderError::NoLongest),
            1 => {
                let path = found.pop().unwrap();
                if self.lex_minimal_path().as_ref() != Some(&path) {
                    return Err(OrderError::NotLexMinimal);
                }
                Ok(path)
            }
            count => Err(OrderError::MultipleLongest { count }),
        }
    }

    /// Increasing paths of length `ℓ(u,v) − 2`.
    pub fn second_length_paths(&self) -> Vec<Path> {
        let length = self.graph.interval().length();
        self.paths_with_excess(Some(2))
            .into_iter()
            .filter(|p| p.len() + 2 == length)
            .collect()
    }
}

/// The index `i` such that `x₀, …, x_i` of `longest` lie on `path` and
/// `x_{i+1}` does not.
pub fn divergence_index(path: &Path, longest: &Path) -> Option<usize> {
    for i in 0..longest.positions.len().saturating_sub(1) {
        if !path.positions.contains(&longest.positions[i]) {
            return None;
        }
        if !path.positions.contains(&longest.positions[i + 1]) {
            return Some(i);
        }
    }
    None
}

/// The vertex of `longest` at which `path` diverges.
pub fn divergence_vertex(path: &Path, longest: &Path) -> Option<Element> {
    divergence_index(path, longest).map(|i| longest.vertices[i].clone())
}

/// The left translate `sγ`, checked to be a Bruhat path that increases
/// under the upper `s`-conjugate of `order`. Positions are left empty since
/// the translate lives in another interval.
pub fn s_gamma(order: &ReflectionOrder, path: &Path, s: Gen) -> Result<Path, OrderError> {
    let sys = order.system();
    if order.minimal_simple()? != s {
        return Err(OrderError::PreconditionViolated(format!(
            "alpha_{} is not the minimal root",
            s + 1
        )));
    }
    let su = sys.mul_gen(&path.vertices[0], s, Side::Left);
    if path.contains(&su) {
        return Err(OrderError::PreconditionViolated(format!(
            "s{} u = {} lies on the path",
            s + 1,
            su
        )));
    }
    let vertices: Vec<Element> = path
        .vertices
        .iter()
        .map(|x| sys.mul_gen(x, s, Side::Left))
        .collect();
    let labels: Vec<Root> = path.labels.iter().map(|b| order.reflect_root(s, b)).collect();
    let conjugate = order.upper_s_conjugate(s);
    let mut lengths = Vec::with_capacity(labels.len());
    for (i, label) in labels.iter().enumerate() {
        let (x, y) = (&vertices[i], &vertices[i + 1]);
        if !label.is_positive() || y.length() <= x.length() {
            return Err(OrderError::PreconditionViolated(format!(
                "translated step {x} -> {y} does not go up"
            )));
        }
        let t = sys.mul(y, &sys.inverse(x));
        if sys.reflection_data(&t).as_ref() != Some(label) {
            return Err(OrderError::PreconditionViolated(format!(
                "translated step {x} -> {y} is not labeled {label}"
            )));
        }
        if i > 0 && !conjugate.precedes(&labels[i - 1], label)? {
            return Err(OrderError::PreconditionViolated(format!(
                "translated labels {} and {label} are not increasing",
                labels[i - 1]
            )));
        }
        lengths.push(y.length() - x.length());
    }
    Ok(Path {
        positions: Vec::new(),
        vertices,
        labels,
        lengths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::Interval;
    use crate::coxeter::CoxeterMatrix;
    use num_traits::Signed;

    fn sys(n: usize) -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::type_a(n))
    }

    fn root(c: &[i64]) -> Root {
        Root::new(c.to_vec()).unwrap()
    }

    fn graph(sys: &CoxeterSystem, u: &str, v: &str) -> BruhatGraph {
        let i = Interval::new(sys, &sys.parse_word(u).unwrap(), &sys.parse_word(v).unwrap())
            .unwrap();
        BruhatGraph::new(i).unwrap()
    }

    #[test]
    fn deodhar_initial_sections() {
        let a2 = sys(2);
        let order = ReflectionOrder::deodhar(&a2, &a2.identity(), 1);
        for r in a2.positive_roots(10).unwrap() {
            assert!(order.primary_key(&r).unwrap().0.is_positive());
        }
        let s1 = a2.parse_word("1").unwrap();
        let order = ReflectionOrder::deodhar(&a2, &s1, 1);
        let negative: Vec<Root> = a2
            .positive_roots(10)
            .unwrap()
            .into_iter()
            .filter(|r| order.primary_key(r).unwrap().0.is_negative())
            .collect();
        assert_eq!(negative, vec![Root::simple(2, 0)]);
        assert_eq!(order.minimal_simple().unwrap(), 0);

        let a3 = sys(3);
        let v = a3.parse_word("1 2 3 2 1").unwrap();
        let order = ReflectionOrder::deodhar(&a3, &v, 1);
        let roots = a3.positive_roots(100).unwrap();
        let ranking = order.rank(&roots).unwrap();
        let inversions = a3.inversion_set(&v);
        assert_eq!(inversions.len(), 5);
        assert!(ranking.sorted()[..5].iter().all(|r| inversions.contains(r)));
        assert!(order.is_initial_section(&inversions, &roots).unwrap());
    }

    #[test]
    fn mediant_betweenness() {
        let a2 = sys(2);
        let order = ReflectionOrder::default_order(&a2, 3);
        let (a, b, g) = (root(&[1, 0]), root(&[0, 1]), root(&[1, 1]));
        let ab = order.compare(&a, &b).unwrap();
        assert_eq!(order.compare(&a, &g).unwrap(), ab);
        assert_eq!(order.compare(&g, &b).unwrap(), ab);
        assert!(matches!(order.compare(&a, &a), Err(OrderError::SameRoot(_))));
        assert!(matches!(
            order.compare(&a.negated(), &b),
            Err(OrderError::NotPositive(_))
        ));
    }

    #[test]
    fn upper_conjugate_case_table() {
        let a2 = sys(2);
        // α1 ≺ α1+α2 ≺ α2
        let order = ReflectionOrder::deodhar(&a2, &a2.parse_word("1").unwrap(), 0);
        let (a1, a12, a2r) = (root(&[1, 0]), root(&[1, 1]), root(&[0, 1]));
        assert!(order.precedes(&a1, &a12).unwrap());
        assert!(order.precedes(&a12, &a2r).unwrap());
        let conj = order.upper_s_conjugate(0);
        // α2 ≺ α1+α2 ≺ α1
        assert!(conj.precedes(&a2r, &a12).unwrap());
        assert!(conj.precedes(&a12, &a1).unwrap());
        assert!(conj.precedes(&a2r, &a1).unwrap());
        assert!(!conj.precedes(&a1, &a2r).unwrap());
    }

    #[test]
    fn paths_in_a2() {
        let a2 = sys(2);
        let v = a2.parse_word("1 2 1").unwrap();
        let g = graph(&a2, "e", "1 2 1");
        let order = ReflectionOrder::deodhar(&a2, &v, 5);
        let finder = PathFinder::new(&g, &order).unwrap();
        assert_eq!(finder.length_generating_function(), vec![0, 1, 0, 1]);
        let longest = finder.longest_path().unwrap();
        assert_eq!(longest.len(), 3);
        let second = finder.second_length_paths();
        assert_eq!(second.len(), 1);
        assert_eq!(second[0].lengths, vec![3]);
        assert_eq!(divergence_index(&second[0], &longest), Some(0));
        assert!(second[0].dump_line().starts_with("len=1; labels=1,1; vertices=e|"));

        let point = graph(&a2, "2", "2");
        let finder = PathFinder::new(&point, &order).unwrap();
        let paths = finder.increasing_paths();
        assert_eq!(paths.len(), 1);
        assert!(paths[0].is_empty());
    }

    #[test]
    fn s_gamma_translates() {
        let a2 = sys(2);
        // α1 minimal
        let order = ReflectionOrder::deodhar(&a2, &a2.parse_word("1").unwrap(), 0);
        let g = graph(&a2, "2", "2 1");
        let finder = PathFinder::new(&g, &order).unwrap();
        let path = finder.longest_path().unwrap();
        let moved = s_gamma(&order, &path, 0).unwrap();
        assert_eq!(moved.vertices[0], a2.parse_word("1 2").unwrap());
        assert_eq!(moved.vertices[1], a2.parse_word("1 2 1").unwrap());

        let g = graph(&a2, "e", "1 2");
        let finder = PathFinder::new(&g, &order).unwrap();
        let path = finder.longest_path().unwrap();
        assert!(path.contains(&a2.parse_word("1").unwrap()));
        assert!(matches!(
            s_gamma(&order, &path, 0),
            Err(OrderError::PreconditionViolated(_))
        ));
    }
}
