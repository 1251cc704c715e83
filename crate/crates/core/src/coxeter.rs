//! Coxeter systems realized through an exact integer reflection representation.
//!
//! Only crystallographic bond labels (2, 3, 4, 6 and infinity) are accepted, so
//! every generator acts on the simple-root lattice by an integer matrix and all
//! group arithmetic is exact. Elements are identified by their matrices; the
//! representation is faithful.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::Path;
use std::sync::Arc;

use dashmap::DashMap;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Index of a simple generator, `0..rank`.
pub type Gen = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("coxeter matrix is empty")]
    Empty,
    #[error("coxeter matrix shape error at row {row}, column {col}: {detail}")]
    MatrixShape {
        row: usize,
        col: usize,
        detail: String,
    },
    #[error("bad coxeter matrix entry {value} at row {row}, column {col}: {detail}")]
    BadEntry {
        row: usize,
        col: usize,
        value: i64,
        detail: &'static str,
    },
    #[error("generator index {index} out of range for rank {rank}")]
    UnknownGenerator { index: usize, rank: usize },
    #[error("cannot parse word {word:?}: {detail}")]
    BadWord { word: String, detail: String },
    #[error("system file parse error at line {line}, column {column}: {detail}")]
    Parse {
        line: usize,
        column: usize,
        detail: String,
    },
    #[error("cannot read system file {path}: {detail}")]
    Io { path: String, detail: String },
    #[error("group enumeration exceeded {cap} elements")]
    TooLarge { cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("zero vector is not a root")]
    Zero,
    #[error("vector with mixed signs is not a root")]
    MixedSign,
    #[error("root coordinates must be coprime")]
    NotPrimitive,
}

/// Symmetric Coxeter matrix; `0` encodes an infinite bond.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    entries: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct SystemFile {
    rank: usize,
    coxeter_matrix: Vec<Vec<i64>>,
}

impl CoxeterMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, CoxeterError> {
        let rank = rows.len();
        if rank == 0 {
            return Err(CoxeterError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != rank {
                return Err(CoxeterError::MatrixShape {
                    row,
                    col: r.len().min(rank),
                    detail: format!("expected {rank} entries, found {}", r.len()),
                });
            }
        }
        let mut entries = vec![vec![0u32; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                let value = rows[i][j];
                if i == j {
                    if value != 1 {
                        return Err(CoxeterError::BadEntry {
                            row: i,
                            col: j,
                            value,
                            detail: "diagonal entries must be 1",
                        });
                    }
                } else if !matches!(value, 0 | 2 | 3 | 4 | 6) {
                    return Err(CoxeterError::BadEntry {
                        row: i,
                        col: j,
                        value,
                        detail: "off-diagonal entries must be 2, 3, 4, 6 or 0 (infinity)",
                    });
                }
                entries[i][j] = value as u32;
            }
        }
        for i in 0..rank {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(CoxeterError::MatrixShape {
                        row: j,
                        col: i,
                        detail: format!("not symmetric ({} vs {})", rows[j][i], rows[i][j]),
                    });
                }
            }
        }
        Ok(Self { entries })
    }

    /// Type `A_n`: the symmetric group on `n + 1` letters.
    pub fn type_a(n: usize) -> Self {
        Self::path(n, |_| 3)
    }

    /// Type `B_n`, with the double bond between the last two generators.
    pub fn type_b(n: usize) -> Self {
        Self::path(n, |i| if i + 2 == n { 4 } else { 3 })
    }

    /// Dihedral group `I_2(m)` (`m = 0` for the infinite dihedral group).
    pub fn dihedral(m: u32) -> Self {
        Self {
            entries: vec![vec![1, m], vec![m, 1]],
        }
    }

    /// Affine `A_1`, the infinite dihedral group.
    pub fn affine_a1() -> Self {
        Self::dihedral(0)
    }

    fn path(n: usize, bond: impl Fn(usize) -> u32) -> Self {
        let mut entries = vec![vec![2u32; n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1;
        }
        for i in 0..n.saturating_sub(1) {
            entries[i][i + 1] = bond(i);
            entries[i + 1][i] = bond(i);
        }
        Self { entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `m(s,t)`, with `None` for an infinite bond.
    pub fn order(&self, s: Gen, t: Gen) -> Option<u32> {
        match self.entries[s][t] {
            0 => None,
            m => Some(m),
        }
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect()
    }

    /// Parses `{"rank": n, "coxeter_matrix": [[...]]}`.
    pub fn from_json(text: &str) -> Result<Self, CoxeterError> {
        let file: SystemFile = serde_json::from_str(text).map_err(|e| CoxeterError::Parse {
            line: e.line(),
            column: e.column(),
            detail: e.to_string(),
        })?;
        if file.coxeter_matrix.len() != file.rank {
            return Err(CoxeterError::MatrixShape {
                row: file.coxeter_matrix.len(),
                col: 0,
                detail: format!(
                    "rank is {} but the matrix has {} rows",
                    file.rank,
                    file.coxeter_matrix.len()
                ),
            });
        }
        Self::new(file.coxeter_matrix)
    }

    pub fn from_file(path: &Path) -> Result<Self, CoxeterError> {
        let text = std::fs::read_to_string(path).map_err(|e| CoxeterError::Io {
            path: path.display().to_string(),
            detail: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SystemFile {
            rank: self.rank(),
            coxeter_matrix: self.rows(),
        })
        .expect("system file serializes")
    }
}

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.n + col]
    }

    pub fn column(&self, col: usize) -> Vec<i64> {
        (0..self.n).map(|r| self.get(r, col)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == (i == j) as i64))
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<i128>> = self
            .data
            .chunks(self.n)
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            for r in rank + 1..rows.len() {
                if rows[r][col] != 0 {
                    let (a, b) = (rows[rank][col], rows[r][col]);
                    for c in col..self.n {
                        rows[r][c] = rows[r][c] * a - rows[rank][c] * b;
                    }
                    let g = rows[r].iter().fold(0i128, |g, &x| g.gcd(&x));
                    if g > 1 {
                        rows[r].iter_mut().for_each(|x| *x /= g);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n)).finish()
    }
}

/// A root in the simple-root basis. Roots are sign-coherent and primitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn new(coords: Vec<i64>) -> Result<Self, RootError> {
        if coords.iter().all(|&c| c == 0) {
            return Err(RootError::Zero);
        }
        if coords.iter().any(|&c| c > 0) && coords.iter().any(|&c| c < 0) {
            return Err(RootError::MixedSign);
        }
        if coords.iter().fold(0i64, |g, &c| g.gcd(&c)) != 1 {
            return Err(RootError::NotPrimitive);
        }
        Ok(Self(coords))
    }

    pub fn simple(rank: usize, s: Gen) -> Self {
        let mut coords = vec![0; rank];
        coords[s] = 1;
        Self(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn negated(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    /// The positive root among `±self`.
    pub fn positive(&self) -> Root {
        if self.is_positive() {
            self.clone()
        } else {
            self.negated()
        }
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn simple_index(&self) -> Option<Gen> {
        let mut nonzero = self.0.iter().enumerate().filter(|(_, &c)| c != 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((i, 1)), None) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

fn is_negative_vector(v: &[i64]) -> bool {
    v.iter().any(|&c| c < 0)
}

struct ElementData {
    action: IntMatrix,
    inverse: IntMatrix,
    word: Vec<Gen>,
}

/// A group element: its matrix on the root lattice, the inverse matrix and the
/// ShortLex-least reduced word.
///
/// Equality and hashing use the matrix; ordering is ShortLex on the canonical
/// word, which is consistent with equality.
#[derive(Clone)]
pub struct Element(Arc<ElementData>);

impl Element {
    pub fn length(&self) -> usize {
        self.0.word.len()
    }

    /// ShortLex-least reduced word (0-based generator indices).
    pub fn word(&self) -> &[Gen] {
        &self.0.word
    }

    pub fn action(&self) -> &IntMatrix {
        &self.0.action
    }

    pub fn inverse_action(&self) -> &IntMatrix {
        &self.0.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.0.word.is_empty()
    }

    /// Whether `s` shortens `w` when multiplied on the given side.
    pub fn has_descent(&self, s: Gen, side: Side) -> bool {
        let m = match side {
            Side::Right => &self.0.action,
            Side::Left => &self.0.inverse,
        };
        (0..m.dim()).any(|r| m.get(r, s) < 0)
    }

    pub fn descents(&self, side: Side) -> Vec<Gen> {
        (0..self.0.action.dim())
            .filter(|&s| self.has_descent(s, side))
            .collect()
    }

    /// `w(β)` in simple-root coordinates.
    pub fn apply(&self, coords: &[i64]) -> Vec<i64> {
        self.0.action.apply(coords)
    }

    /// 1-based word, space separated; `e` for the identity.
    pub fn word_string(&self) -> String {
        format_word(&self.0.word)
    }
}

/// Formats a 0-based word the way the command line reads it.
pub fn format_word(word: &[Gen]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter()
            .map(|s| (s + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.action == other.0.action
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.action.hash(state)
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.word().cmp(other.word()))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self.word_string())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

struct SystemInner {
    matrix: CoxeterMatrix,
    cartan: Vec<Vec<i64>>,
    generators: Vec<IntMatrix>,
    identity: Element,
    leq_memo: DashMap<(Element, Element), bool>,
}

/// A Coxeter system with its integer reflection representation.
///
/// Cheap to clone; clones share the Bruhat-order memo.
#[derive(Clone)]
pub struct CoxeterSystem(Arc<SystemInner>);

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("matrix", &self.0.matrix.entries)
            .finish()
    }
}

impl PartialEq for CoxeterSystem {
    fn eq(&self, other: &Self) -> bool {
        self.0.matrix == other.0.matrix
    }
}

/// Cartan pair `(A(s,t), A(t,s))` for `s < t`.
fn cartan_pair(m: Option<u32>) -> (i64, i64) {
    match m {
        Some(2) => (0, 0),
        Some(3) => (-1, -1),
        Some(4) => (-1, -2),
        Some(6) => (-1, -3),
        None => (-2, -2),
        Some(other) => unreachable!("non-crystallographic bond {other}"),
    }
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let n = matrix.rank();
        let mut cartan = vec![vec![0i64; n]; n];
        for s in 0..n {
            cartan[s][s] = 2;
            for t in s + 1..n {
                let (a, b) = cartan_pair(matrix.order(s, t));
                cartan[s][t] = a;
                cartan[t][s] = b;
            }
        }
        // sigma_s(alpha_t) = alpha_t - A(s,t) alpha_s: identity except row s.
        let generators = (0..n)
            .map(|s| {
                let mut rows = IntMatrix::identity(n).rows();
                for t in 0..n {
                    rows[s][t] = (s == t) as i64 - cartan[s][t];
                }
                IntMatrix::from_rows(&rows)
            })
            .collect();
        let identity = Element(Arc::new(ElementData {
            action: IntMatrix::identity(n),
            inverse: IntMatrix::identity(n),
            word: Vec::new(),
        }));
        Self(Arc::new(SystemInner {
            matrix,
            cartan,
            generators,
            identity,
            leq_memo: DashMap::new(),
        }))
    }

    pub fn rank(&self) -> usize {
        self.0.matrix.rank()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.0.matrix
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.0.cartan
    }

    pub fn generator_matrix(&self, s: Gen) -> &IntMatrix {
        &self.0.generators[s]
    }

    pub fn identity(&self) -> Element {
        self.0.identity.clone()
    }

    pub fn generator(&self, s: Gen) -> Element {
        self.mul_gen(&self.identity(), s, Side::Right)
    }

    /// Evaluates an arbitrary (not necessarily reduced) 0-based word.
    pub fn element(&self, word: &[Gen]) -> Result<Element, CoxeterError> {
        let rank = self.rank();
        if let Some(&index) = word.iter().find(|&&s| s >= rank) {
            return Err(CoxeterError::UnknownGenerator { index, rank });
        }
        let mut action = IntMatrix::identity(rank);
        let mut inverse = IntMatrix::identity(rank);
        for &s in word {
            action = action.mul(&self.0.generators[s]);
            inverse = self.0.generators[s].mul(&inverse);
        }
        Ok(self.from_matrices(action, inverse))
    }

    /// Parses a 1-based, whitespace- or comma-separated word; `e` or an empty
    /// string is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Element, CoxeterError> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "e" {
            return Ok(self.identity());
        }
        let mut word = Vec::new();
        for token in trimmed.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let index: usize = token.parse().map_err(|_| CoxeterError::BadWord {
                word: text.to_string(),
                detail: format!("{token:?} is not a generator index"),
            })?;
            if index == 0 || index > self.rank() {
                return Err(CoxeterError::BadWord {
                    word: text.to_string(),
                    detail: format!("generator {index} outside 1..={}", self.rank()),
                });
            }
            word.push(index - 1);
        }
        self.element(&word)
    }

    fn from_matrices(&self, action: IntMatrix, inverse: IntMatrix) -> Element {
        // Strip the smallest left descent until the identity is reached.
        let n = self.rank();
        let mut rest = inverse.clone();
        let mut word = Vec::new();
        while let Some(s) = (0..n).find(|&s| (0..n).any(|r| rest.get(r, s) < 0)) {
            word.push(s);
            rest = rest.mul(&self.0.generators[s]);
        }
        debug_assert!(rest.is_identity());
        Element(Arc::new(ElementData {
            action,
            inverse,
            word,
        }))
    }

    pub fn mul_gen(&self, w: &Element, s: Gen, side: Side) -> Element {
        let g = &self.0.generators[s];
        let (action, inverse) = match side {
            Side::Right => (w.action().mul(g), g.mul(w.inverse_action())),
            Side::Left => (g.mul(w.action()), w.inverse_action().mul(g)),
        };
        self.from_matrices(action, inverse)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.from_matrices(
            a.action().mul(b.action()),
            b.inverse_action().mul(a.inverse_action()),
        )
    }

    pub fn inverse(&self, w: &Element) -> Element {
        self.from_matrices(w.inverse_action().clone(), w.action().clone())
    }

    pub fn length(&self, w: &Element) -> usize {
        w.length()
    }

    pub fn descents(&self, w: &Element, side: Side) -> Vec<Gen> {
        w.descents(side)
    }

    /// `σ_s(β)`.
    pub fn reflect(&self, s: Gen, coords: &[i64]) -> Vec<i64> {
        self.0.generators[s].apply(coords)
    }

    /// Bruhat order, by descending along the smallest left descent of `v`.
    pub fn bruhat_leq(&self, u: &Element, v: &Element) -> bool {
        match u.length().cmp(&v.length()) {
            Ordering::Greater => return false,
            Ordering::Equal => return u == v,
            Ordering::Less => {}
        }
        if u.is_identity() {
            return true;
        }
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.0.leq_memo.get(&key) {
            return *hit;
        }
        let s = v.word()[0];
        let sv = self.mul_gen(v, s, Side::Left);
        let result = if u.has_descent(s, Side::Left) {
            let su = self.mul_gen(u, s, Side::Left);
            self.bruhat_leq(&su, &sv)
        } else {
            self.bruhat_leq(u, &sv)
        };
        self.0.leq_memo.insert(key, result);
        result
    }

    /// Inversion roots `w α_s` collected along the canonical word, in order.
    pub fn inversion_sequence(&self, w: &Element) -> Vec<Root> {
        let mut prefix = self.identity();
        let mut roots = Vec::with_capacity(w.length());
        for &s in w.word() {
            let beta = prefix.apply(Root::simple(self.rank(), s).coords());
            roots.push(Root(beta));
            prefix = self.mul_gen(&prefix, s, Side::Right);
        }
        roots
    }

    /// `N(w) = {β > 0 : w⁻¹β < 0}`.
    pub fn inversion_set(&self, w: &Element) -> BTreeSet<Root> {
        self.inversion_sequence(w).into_iter().collect()
    }

    /// If `w` is a reflection `t_β`, returns `β`.
    pub fn reflection_data(&self, w: &Element) -> Option<Root> {
        if w.length().is_multiple_of(2) {
            return None;
        }
        let m = w.action();
        if !m.mul(m).is_identity() {
            return None;
        }
        let n = self.rank();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j) - (i == j) as i64).collect())
            .collect();
        let shifted = IntMatrix::from_rows(&rows);
        if shifted.rank() != 1 {
            return None;
        }
        let column = (0..n)
            .map(|c| shifted.column(c))
            .find(|c| c.iter().any(|&x| x != 0))?;
        let g = column.iter().fold(0i64, |g, &x| g.gcd(&x));
        let mut coords: Vec<i64> = column.iter().map(|x| x / g).collect();
        if is_negative_vector(&coords) {
            coords.iter_mut().for_each(|x| *x = -*x);
        }
        let root = Root::new(coords).ok()?;
        let image = m.apply(root.coords());
        (image == root.negated().0).then_some(root)
    }

    /// Elements of length at most `max_length`, in ShortLex order.
    pub fn elements_up_to_length(&self, max_length: usize) -> Vec<Element> {
        let mut all = vec![self.identity()];
        let mut layer = vec![self.identity()];
        for _ in 0..max_length {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for w in &layer {
                for s in 0..self.rank() {
                    if !w.has_descent(s, Side::Right) {
                        let ws = self.mul_gen(w, s, Side::Right);
                        if seen.insert(ws.clone()) {
                            next.push(ws);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort();
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    /// Every element of a finite group, or `TooLarge` once `cap` is exceeded.
    pub fn enumerate_finite(&self, cap: usize) -> Result<Vec<Element>, CoxeterError> {
        // |W| > |Φ⁺|, and counting roots is cheap, so infinite groups fail here
        self.positive_roots(cap)?;
        let mut all = vec![self.identity()];
        let mut layer = vec![self.identity()];
        while !layer.is_empty() {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for w in &layer {
                for s in 0..self.rank() {
                    if !w.has_descent(s, Side::Right) {
                        let ws = self.mul_gen(w, s, Side::Right);
                        if seen.insert(ws.clone()) {
                            next.push(ws);
                        }
                    }
                }
            }
            next.sort();
            all.extend(next.iter().cloned());
            if all.len() > cap {
                return Err(CoxeterError::TooLarge { cap });
            }
            layer = next;
        }
        Ok(all)
    }

    /// All positive roots of a finite system, or `TooLarge` past `cap`.
    pub fn positive_roots(&self, cap: usize) -> Result<Vec<Root>, CoxeterError> {
        let n = self.rank();
        let mut found: BTreeSet<Root> = (0..n).map(|s| Root::simple(n, s)).collect();
        let mut frontier: Vec<Root> = found.iter().cloned().collect();
        while let Some(beta) = frontier.pop() {
            for s in 0..n {
                let image = Root(self.reflect(s, beta.coords()));
                if image.is_positive() && !found.contains(&image) {
                    if found.len() >= cap {
                        return Err(CoxeterError::TooLarge { cap });
                    }
                    found.insert(image.clone());
                    frontier.push(image);
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    /// Number of positive roots sent negative by `w⁻¹`, counted over an
    /// explicit list of positive roots.
    pub fn count_inversions_among(&self, w: &Element, positive_roots: &[Root]) -> usize {
        positive_roots
            .iter()
            .filter(|beta| is_negative_vector(&w.inverse_action().apply(beta.coords())))
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::type_a(n))
    }

    fn word(sys: &CoxeterSystem, text: &str) -> Element {
        sys.parse_word(text).unwrap()
    }

    #[test]
    fn a2_has_six_elements() {
        let sys = a(2);
        let all = sys.elements_up_to_length(3);
        assert_eq!(all.len(), 6);
        assert_eq!(sys.enumerate_finite(100).unwrap().len(), 6);
    }

    #[test]
    fn infinite_dihedral_growth() {
        let sys = CoxeterSystem::new(CoxeterMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap());
        for k in 0..8 {
            assert_eq!(sys.elements_up_to_length(k).len(), 2 * k + 1);
        }
        assert!(sys.enumerate_finite(200).is_err());
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(
            CoxeterMatrix::new(vec![vec![1, 3], vec![2, 1]]),
            Err(CoxeterError::BadEntry { .. } | CoxeterError::MatrixShape { .. })
        ));
        assert!(matches!(
            CoxeterMatrix::new(vec![vec![1, 5], vec![5, 1]]),
            Err(CoxeterError::BadEntry { row: 0, col: 1, value: 5, .. })
        ));
        assert!(matches!(
            CoxeterMatrix::new(vec![vec![1, 3, 2], vec![3, 1]]),
            Err(CoxeterError::MatrixShape { .. })
        ));
        assert!(matches!(
            CoxeterMatrix::new(vec![vec![2, 3], vec![3, 1]]),
            Err(CoxeterError::BadEntry { row: 0, col: 0, .. })
        ));
    }

    #[test]
    fn json_errors_cite_position() {
        let err = CoxeterMatrix::from_json("{\"rank\": 2,\n \"coxeter_matrix\": [[1,3],[3,1]").unwrap_err();
        assert!(matches!(err, CoxeterError::Parse { line: 2, .. }), "{err:?}");
        let err = CoxeterMatrix::from_json(r#"{"rank": 2, "coxeter_matrix": [[1,3],[7,1]]}"#)
            .unwrap_err();
        assert!(matches!(err, CoxeterError::BadEntry { row: 1, col: 0, value: 7, .. }), "{err:?}");
        let ok = CoxeterMatrix::from_json(r#"{"rank": 2, "coxeter_matrix": [[1,0],[0,1]]}"#).unwrap();
        assert_eq!(ok, CoxeterMatrix::affine_a1());
        assert_eq!(CoxeterMatrix::from_json(&ok.to_json()).unwrap(), ok);
    }

    #[test]
    fn generators_satisfy_relations() {
        for m in [2u32, 3, 4, 6, 0] {
            let sys = CoxeterSystem::new(CoxeterMatrix::dihedral(m));
            let (g0, g1) = (sys.generator_matrix(0), sys.generator_matrix(1));
            assert!(g0.mul(g0).is_identity());
            assert!(g1.mul(g1).is_identity());
            let rot = g0.mul(g1);
            let mut power = IntMatrix::identity(2);
            for k in 1..=12u32 {
                power = power.mul(&rot);
                assert_eq!(power.is_identity(), m != 0 && k % m == 0, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn mul_gen_changes_length_by_one() {
        let sys = a(2);
        let e = sys.identity();
        let s1 = sys.mul_gen(&e, 0, Side::Right);
        assert_eq!(s1.length(), 1);
        assert!(sys.mul_gen(&s1, 0, Side::Right).is_identity());
        let s1s2 = word(&sys, "1 2");
        let top = sys.mul_gen(&s1s2, 0, Side::Right);
        assert_eq!(top.length(), 3);
        assert_eq!(top, word(&sys, "2 1 2"));
        assert_eq!(top.word(), &[0, 1, 0]);
    }

    #[test]
    fn descents_in_a2() {
        let sys = a(2);
        assert!(sys.identity().descents(Side::Right).is_empty());
        assert_eq!(word(&sys, "1 2").descents(Side::Right), vec![1]);
        assert_eq!(word(&sys, "1 2").descents(Side::Left), vec![0]);
        assert_eq!(word(&sys, "1 2 1").descents(Side::Left), vec![0, 1]);
    }

    #[test]
    fn canonical_word_is_shortlex_least() {
        let sys = a(3);
        // s3 s1 = s1 s3
        assert_eq!(word(&sys, "3 1").word(), &[0, 2]);
        assert_eq!(word(&sys, "2 1 2").word(), &[0, 1, 0]);
        assert_eq!(word(&sys, "1 1 2 2 3").word(), &[2]);
    }

    #[test]
    fn bruhat_examples() {
        let sys = a(2);
        let all = sys.enumerate_finite(10).unwrap();
        for v in &all {
            assert!(sys.bruhat_leq(&sys.identity(), v));
        }
        assert!(!sys.bruhat_leq(&word(&sys, "1"), &word(&sys, "2")));
        let s4 = a(3);
        assert!(s4.bruhat_leq(&word(&s4, "2"), &word(&s4, "1 2 3 2 1")));
        assert!(!s4.bruhat_leq(&word(&s4, "1 3"), &word(&s4, "2 1 2")));
    }

    #[test]
    fn inversion_sets() {
        let sys = a(2);
        assert!(sys.inversion_set(&sys.identity()).is_empty());
        let n = sys.inversion_set(&word(&sys, "1"));
        assert_eq!(n.into_iter().collect::<Vec<_>>(), vec![Root::simple(2, 0)]);
        let n = sys.inversion_set(&word(&sys, "1 2"));
        let expected: BTreeSet<Root> = [Root(vec![1, 0]), Root(vec![1, 1])].into();
        assert_eq!(n, expected);
    }

    #[test]
    fn reflection_detection() {
        let sys = a(2);
        assert_eq!(sys.reflection_data(&word(&sys, "2")), Some(Root(vec![0, 1])));
        assert_eq!(sys.reflection_data(&word(&sys, "1 2 1")), Some(Root(vec![1, 1])));
        assert_eq!(sys.reflection_data(&word(&sys, "1 2")), None);
        assert_eq!(sys.reflection_data(&sys.identity()), None);
        let affine = CoxeterSystem::new(CoxeterMatrix::affine_a1());
        // translations fix δ but are not involutions
        assert_eq!(affine.reflection_data(&word(&affine, "1 2")), None);
        assert_eq!(affine.reflection_data(&word(&affine, "1 2 1")), Some(Root(vec![2, 1])));
    }

    #[test]
    fn root_validation() {
        assert_eq!(Root::new(vec![0, 0]), Err(RootError::Zero));
        assert_eq!(Root::new(vec![1, -1]), Err(RootError::MixedSign));
        assert_eq!(Root::new(vec![2, 2]), Err(RootError::NotPrimitive));
        assert!(Root::new(vec![-1, -2]).is_ok());
        assert_eq!(Root::new(vec![1, 2]).unwrap().to_string(), "1,2");
    }

    #[test]
    fn b3_and_positive_roots() {
        let sys = CoxeterSystem::new(CoxeterMatrix::type_b(3));
        assert_eq!(sys.enumerate_finite(1000).unwrap().len(), 48);
        assert_eq!(sys.positive_roots(100).unwrap().len(), 9);
        assert_eq!(a(3).positive_roots(100).unwrap().len(), 6);
        let g2 = CoxeterSystem::new(CoxeterMatrix::dihedral(6));
        assert_eq!(g2.enumerate_finite(100).unwrap().len(), 12);
        assert_eq!(g2.positive_roots(100).unwrap().len(), 6);
    }

    #[test]
    fn word_parsing() {
        let sys = a(3);
        assert!(sys.parse_word("e").unwrap().is_identity());
        assert!(sys.parse_word("").unwrap().is_identity());
        assert!(sys.parse_word("4").is_err());
        assert!(sys.parse_word("0").is_err());
        assert!(sys.parse_word("x").is_err());
        assert_eq!(sys.parse_word("1,2").unwrap().word_string(), "1 2");
    }
}
