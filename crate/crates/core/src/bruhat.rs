//! Bruhat intervals and their root-labeled Bruhat graphs.

use std::collections::{HashMap, HashSet};

use crate::coxeter::{CoxeterSystem, Element, Root, Side};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BruhatError {
    #[error("{u} is not below {v} in Bruhat order")]
    NotComparable { u: String, v: String },
    #[error("inconsistent Bruhat graph: {0}")]
    Inconsistent(String),
}

/// All `x ≤ v`, as the distinct products of subwords of the canonical
/// reduced word of `v`.
pub fn lower_set(sys: &CoxeterSystem, v: &Element) -> Vec<Element> {
    let mut seen: HashSet<Element> = HashSet::from([sys.identity()]);
    let mut all = vec![sys.identity()];
    for &s in v.word() {
        let extended: Vec<Element> = all
            .iter()
            .map(|x| sys.mul_gen(x, s, Side::Right))
            .filter(|xs| !seen.contains(xs))
            .collect();
        for xs in extended {
            if seen.insert(xs.clone()) {
                all.push(xs);
            }
        }
    }
    all.sort();
    all
}

/// The interval `[u, v]` as a graded poset.
///
/// Elements are stored in ShortLex order of their canonical words, so index
/// 0 is `u` and the last index is `v`.
#[derive(Clone)]
pub struct Interval {
    sys: CoxeterSystem,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Interval[{}, {}]", self.u(), self.v())
    }
}

impl Interval {
    pub fn new(sys: &CoxeterSystem, u: &Element, v: &Element) -> Result<Self, BruhatError> {
        if !sys.bruhat_leq(u, v) {
            return Err(BruhatError::NotComparable {
                u: u.word_string(),
                v: v.word_string(),
            });
        }
        let elements: Vec<Element> = lower_set(sys, v)
            .into_iter()
            .filter(|x| sys.bruhat_leq(u, x))
            .collect();
        Ok(Self::from_elements(sys, elements))
    }

    /// Builds the cover relation on an already-collected, ShortLex-sorted set.
    fn from_elements(sys: &CoxeterSystem, elements: Vec<Element>) -> Self {
        let n = elements.len();
        let index: HashMap<Element, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = (&elements[i], &elements[j]);
                if y.length() == x.length() + 1 && sys.bruhat_leq(x, y) {
                    up[i].push(j);
                    down[j].push(i);
                }
            }
        }
        Self {
            sys: sys.clone(),
            elements,
            index,
            up,
            down,
        }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn u(&self) -> &Element {
        &self.elements[0]
    }

    pub fn v(&self) -> &Element {
        self.elements.last().expect("interval is nonempty")
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `ℓ(u, v)`
    pub fn length(&self) -> usize {
        self.v().length() - self.u().length()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// `ℓ(x) − ℓ(u)`
    pub fn rank(&self, i: usize) -> usize {
        self.elements[i].length() - self.u().length()
    }

    pub fn covers_up(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn covers_down(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.up[i].iter().map(move |&j| (i, j)))
            .collect()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.sys.bruhat_leq(&self.elements[i], &self.elements[j])
    }

    /// `[x, y]` for interval indices `x ≤ y`, reusing this interval's elements.
    pub fn subinterval(&self, lo: usize, hi: usize) -> Result<Interval, BruhatError> {
        let (x, y) = (&self.elements[lo], &self.elements[hi]);
        if !self.sys.bruhat_leq(x, y) {
            return Err(BruhatError::NotComparable {
                u: x.word_string(),
                v: y.word_string(),
            });
        }
        let elements = self
            .elements
            .iter()
            .filter(|z| self.sys.bruhat_leq(x, z) && self.sys.bruhat_leq(z, y))
            .cloned()
            .collect();
        Ok(Self::from_elements(&self.sys, elements))
    }

    /// Rank-2 subintervals `[x, y]` with their two middle elements.
    pub fn length2_quadruples(&self) -> Vec<Quadruple> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            let mut tops: Vec<usize> = self.up[x]
                .iter()
                .flat_map(|&m| self.up[m].iter().copied())
                .collect();
            tops.sort_unstable();
            tops.dedup();
            for y in tops {
                let middles: Vec<usize> = self.up[x]
                    .iter()
                    .copied()
                    .filter(|m| self.down[y].contains(m))
                    .collect();
                out.push(Quadruple {
                    bottom: x,
                    top: y,
                    middles,
                });
            }
        }
        out
    }

    /// Saturated chains from `u` to `v`, lazily.
    pub fn maximal_chains(&self) -> MaximalChains<'_> {
        MaximalChains {
            interval: self,
            stack: vec![(self.bottom(), 0)],
        }
    }
}

/// A length-2 subinterval; `middles` has exactly two entries in a Bruhat
/// interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadruple {
    pub bottom: usize,
    pub top: usize,
    pub middles: Vec<usize>,
}

impl Quadruple {
    /// The four cover edges in cyclic order, as `(lower, upper)` pairs.
    pub fn cycle_edges(&self) -> [(usize, usize); 4] {
        let (a, b) = (self.middles[0], self.middles[1]);
        [(self.bottom, a), (a, self.top), (b, self.top), (self.bottom, b)]
    }
}

pub struct MaximalChains<'a> {
    interval: &'a Interval,
    stack: Vec<(usize, usize)>,
}

impl Iterator for MaximalChains<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let top = self.interval.top();
        loop {
            let &(node, next_child) = self.stack.last()?;
            if node == top {
                let chain = self.stack.iter().map(|&(x, _)| x).collect();
                self.stack.pop();
                return Some(chain);
            }
            let children = self.interval.covers_up(node);
            if next_child < children.len() {
                self.stack.last_mut().unwrap().1 += 1;
                self.stack.push((children[next_child], 0));
            } else {
                self.stack.pop();
            }
        }
    }
}

/// A directed edge `lo → hi` of the Bruhat graph with `t_label · lo = hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub lo: usize,
    pub hi: usize,
    pub label: Root,
    pub length: usize,
}

/// The Bruhat graph `Γ_{u,v}`; edge indices double as the undirected edge
/// set `E_{u,v}`.
#[derive(Clone)]
pub struct BruhatGraph {
    interval: Interval,
    edges: Vec<Edge>,
    lookup: HashMap<(usize, usize), usize>,
    incident: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
}

impl std::fmt::Debug for BruhatGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "BruhatGraph[{}, {}]({} edges)",
            self.interval.u(),
            self.interval.v(),
            self.edges.len()
        )
    }
}

impl BruhatGraph {
    pub fn new(interval: Interval) -> Result<Self, BruhatError> {
        let sys = interval.system().clone();
        let n = interval.len();
        let mut edges = Vec::new();
        for i in 0..n {
            let x = interval.element(i);
            for j in i + 1..n {
                let y = interval.element(j);
                if y.length() <= x.length() || (y.length() - x.length()).is_multiple_of(2) {
                    continue;
                }
                let t = sys.mul(y, &sys.inverse(x));
                if let Some(label) = sys.reflection_data(&t) {
                    if t.apply(label.coords()) != label.negated().coords() {
                        return Err(BruhatError::Inconsistent(format!(
                            "label {label} is not negated by {t}"
                        )));
                    }
                    edges.push(Edge {
                        lo: i,
                        hi: j,
                        label,
                        length: y.length() - x.length(),
                    });
                }
            }
        }
        let mut lookup = HashMap::new();
        let mut incident = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            lookup.insert((e.lo, e.hi), k);
            incident[e.lo].push(k);
            incident[e.hi].push(k);
            outgoing[e.lo].push(k);
        }
        let graph = Self {
            interval,
            edges,
            lookup,
            incident,
            outgoing,
        };
        graph.check_covers()?;
        Ok(graph)
    }

    pub fn from_elements(
        sys: &CoxeterSystem,
        u: &Element,
        v: &Element,
    ) -> Result<Self, BruhatError> {
        Self::new(Interval::new(sys, u, v)?)
    }

    fn check_covers(&self) -> Result<(), BruhatError> {
        let mut unit: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|e| e.length == 1)
            .map(|e| (e.lo, e.hi))
            .collect();
        unit.sort_unstable();
        let mut covers = self.interval.cover_pairs();
        covers.sort_unstable();
        if unit != covers {
            return Err(BruhatError::Inconsistent(format!(
                "{} length-1 edges but {} cover relations in {:?}",
                unit.len(),
                covers.len(),
                self.interval
            )));
        }
        Ok(())
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &Edge {
        &self.edges[k]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge index for the unordered vertex pair, if adjacent.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.lookup.get(&key).copied()
    }

    pub fn incident_edges(&self, x: usize) -> &[usize] {
        &self.incident[x]
    }

    pub fn outgoing_edges(&self, x: usize) -> &[usize] {
        &self.outgoing[x]
    }

    /// Distinct labels, sorted by coordinates.
    pub fn labels(&self) -> Vec<Root> {
        let mut labels: Vec<Root> = self.edges.iter().map(|e| e.label.clone()).collect();
        labels.sort();
        labels.dedup();
        labels
    }

    fn neighbours(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[x].iter().map(move |&k| {
            let e = &self.edges[k];
            if e.lo == x {
                e.hi
            } else {
                e.lo
            }
        })
    }

    /// Every simple 4-cycle of the undirected graph, once each, as four edge
    /// indices in cyclic order.
    pub fn four_cycles(&self) -> Vec<[usize; 4]> {
        let n = self.interval.len();
        let mut cycles = Vec::new();
        for a in 0..n {
            let mut higher: Vec<usize> = self.neighbours(a).filter(|&b| b > a).collect();
            higher.sort_unstable();
            for (p, &b) in higher.iter().enumerate() {
                for &d in &higher[p + 1..] {
                    let mut opposite: Vec<usize> = self
                        .neighbours(b)
                        .filter(|&c| c > a && c != d && self.edge_between(c, d).is_some())
                        .collect();
                    opposite.sort_unstable();
                    for c in opposite {
                        cycles.push([
                            self.edge_between(a, b).unwrap(),
                            self.edge_between(b, c).unwrap(),
                            self.edge_between(c, d).unwrap(),
                            self.edge_between(d, a).unwrap(),
                        ]);
                    }
                }
            }
        }
        cycles
    }

    /// The length-2 subinterval diamonds as edge-index 4-cycles.
    pub fn diamond_cycles(&self) -> Vec<[usize; 4]> {
        self.interval
            .length2_quadruples()
            .iter()
            .map(|q| {
                q.cycle_edges()
                    .map(|(a, b)| self.edge_between(a, b).expect("cover is an edge"))
            })
            .collect()
    }
}
