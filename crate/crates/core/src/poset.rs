//! Canonical labeling and isomorphism of finite graded posets.
//!
//! Colors are refined by rank and cover degrees to a stable partition, then
//! cells are individualized by backtracking; the lexicographically least
//! cover encoding over all leaves is the canonical form.

use crate::bruhat::{BruhatGraph, Interval};

/// A finite poset given by its cover relation and rank function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    rank: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl Poset {
    /// Builds a poset from cover pairs `(lower, upper)`. Ranks are longest
    /// chain lengths from below, which is the rank function when graded.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Self {
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in covers {
            up[a].push(b);
            down[b].push(a);
        }
        let mut rank = vec![0usize; n];
        let mut indegree: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
        while let Some(x) = queue.pop() {
            for &y in &up[x] {
                rank[y] = rank[y].max(rank[x] + 1);
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    queue.push(y);
                }
            }
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_unstable();
        }
        Self { rank, up, down }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.up[a].binary_search(&b).is_ok()
    }

    pub fn cover_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// Same poset with vertex `i` renamed to `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Poset {
        let covers: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|a| self.up[a].iter().map(move |&b| (perm[a], perm[b])))
            .collect();
        Poset::from_covers(self.len(), &covers)
    }

    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut classes = count_classes(&colors);
        loop {
            let signatures: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..self.len())
                .map(|x| {
                    let mut ups: Vec<u32> = self.up[x].iter().map(|&y| colors[y]).collect();
                    let mut downs: Vec<u32> = self.down[x].iter().map(|&y| colors[y]).collect();
                    ups.sort_unstable();
                    downs.sort_unstable();
                    (colors[x], ups, downs)
                })
                .collect();
            colors = rename(&signatures);
            let now = count_classes(&colors);
            if now == classes {
                return colors;
            }
            classes = now;
        }
    }

    fn encode(&self, position: &[u32]) -> Vec<u32> {
        let n = self.len();
        let mut by_position = vec![0usize; n];
        for (x, &p) in position.iter().enumerate() {
            by_position[p as usize] = x;
        }
        let mut code = Vec::with_capacity(1 + n + 2 * self.cover_count());
        code.push(n as u32);
        code.extend(by_position.iter().map(|&x| self.rank[x] as u32));
        let mut covers: Vec<(u32, u32)> = (0..n)
            .flat_map(|a| self.up[a].iter().map(move |&b| (position[a], position[b])))
            .collect();
        covers.sort_unstable();
        for (a, b) in covers {
            code.push(a);
            code.push(b);
        }
        code
    }

    fn search(&self, colors: Vec<u32>, best: &mut Option<(Vec<u32>, Vec<u32>)>) {
        let n = self.len();
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
            let code = self.encode(&colors);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, colors));
            }
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&x| colors[x] as usize == target).collect();
        for &chosen in &cell {
            let split: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(x, &c)| 2 * c + (x != chosen) as u32)
                .collect();
            self.search(self.refine(split), best);
        }
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut seen = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Replaces each signature by its rank among the distinct signatures.
fn rename<T: Ord + Clone>(signatures: &[T]) -> Vec<u32> {
    let mut distinct = signatures.to_vec();
    distinct.sort();
    distinct.dedup();
    signatures
        .iter()
        .map(|s| distinct.binary_search(s).unwrap() as u32)
        .collect()
}

impl From<&Interval> for Poset {
    fn from(interval: &Interval) -> Self {
        Poset::from_covers(interval.len(), &interval.cover_pairs())
    }
}

/// Isomorphism-invariant byte string plus the labeling that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetCertificate {
    form: Vec<u8>,
    /// Vertex `x` sits at canonical position `labeling[x]`.
    labeling: Vec<usize>,
}

impl PosetCertificate {
    pub fn form(&self) -> &[u8] {
        &self.form
    }

    pub fn labeling(&self) -> &[usize] {
        &self.labeling
    }
}

pub fn canonical_form(poset: &Poset) -> PosetCertificate {
    let initial: Vec<(usize, usize, usize)> = (0..poset.len())
        .map(|x| (poset.rank[x], poset.down[x].len(), poset.up[x].len()))
        .collect();
    let colors = poset.refine(rename(&initial));
    let mut best = None;
    poset.search(colors, &mut best);
    let (code, position) = best.unwrap_or_default();
    let form = code.iter().flat_map(|c| c.to_le_bytes()).collect();
    PosetCertificate {
        form,
        labeling: position.iter().map(|&p| p as usize).collect(),
    }
}

pub fn interval_canonical_form(interval: &Interval) -> PosetCertificate {
    canonical_form(&Poset::from(interval))
}

/// An order isomorphism `a → b` (as `map[x_in_a] = y_in_b`), verified cover
/// by cover, or `None`.
pub fn isomorphism(a: &Poset, b: &Poset) -> Option<Vec<usize>> {
    isomorphism_with(a, &canonical_form(a), b, &canonical_form(b))
}

/// Like [`isomorphism`] with precomputed certificates.
pub fn isomorphism_with(
    a: &Poset,
    cert_a: &PosetCertificate,
    b: &Poset,
    cert_b: &PosetCertificate,
) -> Option<Vec<usize>> {
    if cert_a.form != cert_b.form || a.len() != b.len() {
        return None;
    }
    let mut at_position = vec![0usize; b.len()];
    for (y, &p) in cert_b.labeling.iter().enumerate() {
        at_position[p] = y;
    }
    let map: Vec<usize> = cert_a.labeling.iter().map(|&p| at_position[p]).collect();
    verify_isomorphism(a, b, &map).then_some(map)
}

/// Checks that `map` is a bijection carrying covers exactly onto covers.
pub fn verify_isomorphism(a: &Poset, b: &Poset, map: &[usize]) -> bool {
    if a.len() != b.len() || map.len() != a.len() || a.cover_count() != b.cover_count() {
        return false;
    }
    let mut hit = vec![false; b.len()];
    for &y in map {
        if y >= b.len() || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    (0..a.len()).all(|x| a.up[x].iter().all(|&y| b.is_cover(map[x], map[y])))
}

pub fn poset_isomorphic(a: &Interval, b: &Interval) -> Option<Vec<usize>> {
    isomorphism(&Poset::from(a), &Poset::from(b))
}

/// Whether a vertex bijection between two intervals also carries the
/// directed Bruhat graph of one exactly onto the other.
pub fn is_digraph_isomorphism(a: &BruhatGraph, b: &BruhatGraph, map: &[usize]) -> bool {
    a.edge_count() == b.edge_count()
        && a.edges().iter().all(|e| {
            b.edge_between(map[e.lo], map[e.hi])
                .is_some_and(|k| b.edge(k).lo == map[e.lo])
        })
}
