//! Kazhdan–Lusztig R-, R̃- and P-polynomials and the d-invariant.
//!
//! Everything is memoized in a [`PolyCache`] keyed by canonical reduced
//! words, which can be written to and read back from disk.

use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bruhat::lower_set;
use crate::coxeter::{CoxeterSystem, Element, Gen, Side};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("R~ back-substitution failed for [{u}, {v}]: {detail}")]
    SubstitutionMismatch {
        u: String,
        v: String,
        detail: String,
    },
    #[error("P-polynomial recursion inconsistent for [{u}, {v}]: {detail}")]
    DegreeViolation {
        u: String,
        v: String,
        detail: String,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("not a polynomial cache file")]
    BadMagic,
    #[error("unsupported cache version {0}")]
    Version(u32),
    #[error("cache checksum mismatch")]
    Checksum,
    #[error("cache file truncated or malformed")]
    Malformed,
    #[error("cache was written for a different Coxeter system")]
    SystemMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PolyKind {
    R,
    Rt,
    P,
}

impl PolyKind {
    pub fn name(self) -> &'static str {
        match self {
            PolyKind::R => "R",
            PolyKind::Rt => "Rt",
            PolyKind::P => "P",
        }
    }

    fn tag(self) -> u8 {
        self as u8
    }

    fn from_tag(tag: u8) -> Option<Self> {
        [PolyKind::R, PolyKind::Rt, PolyKind::P]
            .into_iter()
            .find(|k| k.tag() == tag)
    }
}

type CacheKey = (PolyKind, Vec<Gen>, Vec<Gen>);

const MAGIC: &[u8; 4] = b"BKLC";
const VERSION: u32 = 1;

/// Polynomial memo, keyed by `(kind, u word, v word)`.
#[derive(Default)]
pub struct PolyCache {
    map: DashMap<CacheKey, IntPoly>,
}

impl PolyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, kind: PolyKind, u: &Element, v: &Element) -> Option<IntPoly> {
        self.map
            .get(&(kind, u.word().to_vec(), v.word().to_vec()))
            .map(|p| p.clone())
    }

    pub fn insert(&self, kind: PolyKind, u: &Element, v: &Element, poly: IntPoly) {
        self.map.insert((kind, u.word().to_vec(), v.word().to_vec()), poly);
    }

    fn sorted_entries(&self) -> Vec<(CacheKey, IntPoly)> {
        let mut entries: Vec<(CacheKey, IntPoly)> = self
            .map
            .iter()
            .map(|e| (e.key().clone(), e.value().clone()))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        entries
    }

    /// Versioned, length-prefixed binary snapshot followed by a SHA-256 of
    /// everything before it.
    pub fn to_bytes(&self, sys: &CoxeterSystem) -> Vec<u8> {
        let mut body = Vec::new();
        body.extend_from_slice(MAGIC);
        body.extend_from_slice(&VERSION.to_le_bytes());
        put_bytes(&mut body, sys.matrix().to_json().as_bytes());
        let entries = self.sorted_entries();
        body.extend_from_slice(&(entries.len() as u64).to_le_bytes());
        for ((kind, u, v), poly) in entries {
            body.push(kind.tag());
            put_bytes(&mut body, &u.iter().map(|&s| s as u8).collect::<Vec<_>>());
            put_bytes(&mut body, &v.iter().map(|&s| s as u8).collect::<Vec<_>>());
            body.extend_from_slice(&(poly.coeffs().len() as u32).to_le_bytes());
            for c in poly.coeffs() {
                put_bytes(&mut body, &c.to_signed_bytes_le());
            }
        }
        let digest = Sha256::digest(&body);
        body.extend_from_slice(&digest);
        body
    }

    pub fn from_bytes(bytes: &[u8], sys: &CoxeterSystem) -> Result<Self, CacheError> {
        if bytes.len() < 4 || &bytes[..4] != MAGIC {
            return Err(CacheError::BadMagic);
        }
        if bytes.len() < 4 + 4 + 32 {
            return Err(CacheError::Malformed);
        }
        let (body, digest) = bytes.split_at(bytes.len() - 32);
        if Sha256::digest(body).as_slice() != digest {
            return Err(CacheError::Checksum);
        }
        let mut r = Reader { bytes: body, pos: 4 };
        let version = r.u32()?;
        if version != VERSION {
            return Err(CacheError::Version(version));
        }
        if r.bytes()? != sys.matrix().to_json().as_bytes() {
            return Err(CacheError::SystemMismatch);
        }
        let count = r.u64()?;
        let cache = PolyCache::new();
        for _ in 0..count {
            let kind = PolyKind::from_tag(r.u8()?).ok_or(CacheError::Malformed)?;
            let u: Vec<Gen> = r.bytes()?.iter().map(|&s| s as Gen).collect();
            let v: Vec<Gen> = r.bytes()?.iter().map(|&s| s as Gen).collect();
            let n = r.u32()? as usize;
            let mut coeffs = Vec::with_capacity(n);
            for _ in 0..n {
                coeffs.push(BigInt::from_signed_bytes_le(r.bytes()?));
            }
            cache.map.insert((kind, u, v), IntPoly::from_coeffs(coeffs));
        }
        if r.pos != body.len() {
            return Err(CacheError::Malformed);
        }
        Ok(cache)
    }

    pub fn save(&self, sys: &CoxeterSystem, path: &Path) -> Result<(), CacheError> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(&self.to_bytes(sys))?;
        Ok(())
    }

    pub fn load(sys: &CoxeterSystem, path: &Path) -> Result<Self, CacheError> {
        let mut bytes = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes, sys)
    }
}

fn put_bytes(out: &mut Vec<u8>, data: &[u8]) {
    out.extend_from_slice(&(data.len() as u32).to_le_bytes());
    out.extend_from_slice(data);
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], CacheError> {
        let end = self.pos.checked_add(n).ok_or(CacheError::Malformed)?;
        let slice = self.bytes.get(self.pos..end).ok_or(CacheError::Malformed)?;
        self.pos = end;
        Ok(slice)
    }

    fn u8(&mut self) -> Result<u8, CacheError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, CacheError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, CacheError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn bytes(&mut self) -> Result<&'a [u8], CacheError> {
        let n = self.u32()? as usize;
        self.take(n)
    }
}

/// Recovers `R̃` from `R` via `R(q) = q^{ℓ/2} R̃(q^{1/2} − q^{−1/2})`.
///
/// Writing `R̃ = Σ c_{ℓ−2j} q^{ℓ−2j}`, the substitution turns the term for
/// `j` into `c_{ℓ−2j} q^j (q − 1)^{ℓ−2j}`, whose top degree is `ℓ − j`, so
/// the coefficients are peeled off from the top.
pub fn rtilde_from_r(r: &IntPoly, length: usize) -> Result<IntPoly, String> {
    let q_minus_one = IntPoly::from_i64s(&[-1, 1]);
    let mut rest = r.clone();
    let mut coeffs = vec![BigInt::zero(); length + 1];
    for j in 0..=length / 2 {
        let k = length - 2 * j;
        let c = rest.coeff((length - j) as i64);
        if c.is_zero() {
            continue;
        }
        let term = q_minus_one.pow(k as u32).shift(j).scale(&c);
        rest = &rest - &term;
        coeffs[k] = c;
    }
    if !rest.is_zero() {
        return Err(format!("remainder {rest} after peeling {r}"));
    }
    let rt = IntPoly::from_coeffs(coeffs);
    if !rt.has_nonnegative_coeffs() {
        return Err(format!("negative coefficient in {rt}"));
    }
    let back = substitute_rtilde(&rt, length)?;
    if &back != r {
        return Err(format!("re-substitution gives {back}, expected {r}"));
    }
    Ok(rt)
}

/// `q^{ℓ/2} f(q^{1/2} − q^{−1/2})`, evaluated in `ℤ[t, t⁻¹]` with `t² = q`.
///
/// `t^ℓ (t − t⁻¹)^k = t^{ℓ−k} (t² − 1)^k`, so each term is a genuine
/// polynomial in `t`; the result must only involve even powers of `t`.
pub fn substitute_rtilde(f: &IntPoly, length: usize) -> Result<IntPoly, String> {
    let t_sq_minus_one = IntPoly::from_i64s(&[-1, 0, 1]);
    let mut in_t = IntPoly::zero();
    for k in f.support() {
        if k > length {
            return Err(format!("degree {k} exceeds length {length}"));
        }
        let term = t_sq_minus_one
            .pow(k as u32)
            .shift(length - k)
            .scale(&f.coeff(k as i64));
        in_t = &in_t + &term;
    }
    if in_t.coeffs().iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return Err(format!("odd powers of q^(1/2) survive in {in_t}"));
    }
    Ok(IntPoly::from_coeffs(
        in_t.coeffs().iter().step_by(2).cloned().collect(),
    ))
}

/// The four coefficient identities relating `d` to `P`, `R` and `R̃`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DIncarnations {
    pub length: usize,
    /// d from the descent recurrence.
    pub d: usize,
    pub p_coeff_q: i64,
    pub coatoms: usize,
    pub r_coeff_top_minus_one: i64,
    pub r_coeff_q: i64,
    pub rt_coeff_top_minus_two: i64,
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d_identity: bool,
}

impl DIncarnations {
    pub fn all_hold(&self) -> bool {
        self.a && self.b && self.c && self.d_identity
    }
}

/// Memoized polynomial computations over one Coxeter system.
#[derive(Clone)]
pub struct KlEngine {
    sys: CoxeterSystem,
    cache: Arc<PolyCache>,
    lower: Arc<DashMap<Element, Arc<Vec<Element>>>>,
}

impl KlEngine {
    pub fn new(sys: &CoxeterSystem) -> Self {
        Self::with_cache(sys, PolyCache::new())
    }

    pub fn with_cache(sys: &CoxeterSystem, cache: PolyCache) -> Self {
        Self {
            sys: sys.clone(),
            cache: Arc::new(cache),
            lower: Arc::new(DashMap::new()),
        }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn cache(&self) -> &PolyCache {
        &self.cache
    }

    /// `[e, v]`, cached per `v`.
    pub fn lower_set(&self, v: &Element) -> Arc<Vec<Element>> {
        if let Some(hit) = self.lower.get(v) {
            return hit.clone();
        }
        let set = Arc::new(lower_set(&self.sys, v));
        self.lower.insert(v.clone(), set.clone());
        set
    }

    pub fn r_poly(&self, u: &Element, v: &Element) -> IntPoly {
        if !self.sys.bruhat_leq(u, v) {
            return IntPoly::zero();
        }
        if u == v {
            return IntPoly::one();
        }
        if let Some(hit) = self.cache.get(PolyKind::R, u, v) {
            return hit;
        }
        let s = v.word()[0];
        let sv = self.sys.mul_gen(v, s, Side::Left);
        let su = self.sys.mul_gen(u, s, Side::Left);
        let r = if u.has_descent(s, Side::Left) {
            self.r_poly(&su, &sv)
        } else {
            let q_minus_one = IntPoly::from_i64s(&[-1, 1]);
            &(&q_minus_one * &self.r_poly(u, &sv)) + &self.r_poly(&su, &sv).shift(1)
        };
        self.cache.insert(PolyKind::R, u, v, r.clone());
        r
    }

    pub fn rtilde_poly(&self, u: &Element, v: &Element) -> Result<IntPoly, PolyError> {
        if !self.sys.bruhat_leq(u, v) {
            return Ok(IntPoly::zero());
        }
        if let Some(hit) = self.cache.get(PolyKind::Rt, u, v) {
            return Ok(hit);
        }
        let length = v.length() - u.length();
        let rt = rtilde_from_r(&self.r_poly(u, v), length).map_err(|detail| {
            PolyError::SubstitutionMismatch {
                u: u.word_string(),
                v: v.word_string(),
                detail,
            }
        })?;
        self.cache.insert(PolyKind::Rt, u, v, rt.clone());
        Ok(rt)
    }

    /// Solves `q^ℓ P(q⁻¹) − P(q) = Σ_{x ∈ (u,v]} R_{u,x} P_{x,v}` using
    /// `deg P < ℓ/2`.
    pub fn kl_poly(&self, u: &Element, v: &Element) -> Result<IntPoly, PolyError> {
        if !self.sys.bruhat_leq(u, v) {
            return Ok(IntPoly::zero());
        }
        if u == v {
            return Ok(IntPoly::one());
        }
        if let Some(hit) = self.cache.get(PolyKind::P, u, v) {
            return Ok(hit);
        }
        let length = v.length() - u.length();
        let mut rhs = IntPoly::zero();
        for x in self.lower_set(v).iter() {
            if x != u && self.sys.bruhat_leq(u, x) {
                rhs = &rhs + &(&self.r_poly(u, x) * &self.kl_poly(x, v)?);
            }
        }
        let coeffs: Vec<BigInt> = (0..length.div_ceil(2))
            .map(|j| rhs.coeff((length - j) as i64))
            .collect();
        let p = IntPoly::from_coeffs(coeffs);
        let violation = |detail: String| PolyError::DegreeViolation {
            u: u.word_string(),
            v: v.word_string(),
            detail,
        };
        if length.is_multiple_of(2) && !rhs.coeff((length / 2) as i64).is_zero() {
            return Err(violation(format!("middle coefficient of {rhs} is nonzero")));
        }
        if &p.reverse(length) - &p != rhs {
            return Err(violation(format!("{p} does not solve the recursion for {rhs}")));
        }
        if !p.coeff(0).is_one() {
            return Err(violation(format!("constant term of {p} is not 1")));
        }
        self.cache.insert(PolyKind::P, u, v, p.clone());
        Ok(p)
    }

    pub fn poly(&self, kind: PolyKind, u: &Element, v: &Element) -> Result<IntPoly, PolyError> {
        match kind {
            PolyKind::R => Ok(self.r_poly(u, v)),
            PolyKind::Rt => self.rtilde_poly(u, v),
            PolyKind::P => self.kl_poly(u, v),
        }
    }

    /// `d_{u,v} = −[q^{ℓ(u,v)−1}] R_{u,v}`.
    pub fn d_invariant(&self, u: &Element, v: &Element) -> usize {
        let length = v.length() as i64 - u.length() as i64;
        let c = -self.r_poly(u, v).coeff(length - 1);
        assert!(!c.is_negative(), "negative d-invariant for [{u}, {v}]");
        c.to_usize().expect("d fits in usize")
    }

    /// d by the descent recurrence, always descending along the smallest left
    /// descent of `v`.
    pub fn d_via_recurrence(&self, u: &Element, v: &Element) -> usize {
        if u == v {
            return 0;
        }
        self.d_step(u, v, v.word()[0])
    }

    /// One recurrence step along the left descent `s` of `v`, then the
    /// default route below.
    pub fn d_step(&self, u: &Element, v: &Element, s: Gen) -> usize {
        assert!(v.has_descent(s, Side::Left), "{s} is not a left descent of {v}");
        let sv = self.sys.mul_gen(v, s, Side::Left);
        let su = self.sys.mul_gen(u, s, Side::Left);
        if u.has_descent(s, Side::Left) {
            self.d_via_recurrence(&su, &sv)
        } else if !self.sys.bruhat_leq(&su, &sv) {
            self.d_via_recurrence(u, &sv) + 1
        } else {
            self.d_via_recurrence(u, &sv)
        }
    }

    /// Elements of `[u, v]` covered by `v`.
    pub fn coatom_count(&self, u: &Element, v: &Element) -> usize {
        self.lower_set(v)
            .iter()
            .filter(|c| c.length() + 1 == v.length() && self.sys.bruhat_leq(u, c))
            .count()
    }

    pub fn d_incarnations_report(
        &self,
        u: &Element,
        v: &Element,
    ) -> Result<DIncarnations, PolyError> {
        let length = v.length() - u.length();
        let l = length as i64;
        let d = self.d_via_recurrence(u, v);
        let di = d as i64;
        let r = self.r_poly(u, v);
        let p = self.kl_poly(u, v)?;
        let rt = self.rtilde_poly(u, v)?;
        let small = |c: BigInt| c.to_i64().expect("coefficient fits in i64");
        let p_coeff_q = small(p.coeff(1));
        let coatoms = self.coatom_count(u, v);
        let r_coeff_top_minus_one = small(r.coeff(l - 1));
        let r_coeff_q = small(r.coeff(1));
        let rt_coeff_top_minus_two = small(rt.coeff(l - 2));
        let sign = if (l - 1).rem_euclid(2) == 0 { 1 } else { -1 };
        Ok(DIncarnations {
            length,
            d,
            p_coeff_q,
            coatoms,
            r_coeff_top_minus_one,
            r_coeff_q,
            rt_coeff_top_minus_two,
            a: p_coeff_q == coatoms as i64 - di,
            b: r_coeff_top_minus_one == -di,
            c: r_coeff_q == sign * di,
            d_identity: rt_coeff_top_minus_two == l - di,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    fn engine(m: CoxeterMatrix) -> KlEngine {
        KlEngine::new(&CoxeterSystem::new(m))
    }

    fn el(e: &KlEngine, w: &str) -> Element {
        e.system().parse_word(w).unwrap()
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn r_polynomial_examples() {
        let e = engine(CoxeterMatrix::type_a(2));
        let id = e.system().identity();
        assert_eq!(e.r_poly(&id, &id), IntPoly::one());
        assert_eq!(e.r_poly(&el(&e, "1"), &el(&e, "2")), IntPoly::zero());
        assert_eq!(e.r_poly(&id, &el(&e, "1")), p(&[-1, 1]));
        assert_eq!(e.r_poly(&id, &el(&e, "1 2")), p(&[1, -2, 1]));
        // (q-1)^3 + q(q-1)
        assert_eq!(e.r_poly(&id, &el(&e, "1 2 1")), p(&[-1, 2, -2, 1]));
    }

    #[test]
    fn rtilde_examples() {
        let e = engine(CoxeterMatrix::type_a(2));
        let id = e.system().identity();
        assert_eq!(e.rtilde_poly(&id, &el(&e, "1")).unwrap(), p(&[0, 1]));
        assert_eq!(e.rtilde_poly(&id, &el(&e, "1 2")).unwrap(), p(&[0, 0, 1]));
        assert_eq!(e.rtilde_poly(&id, &el(&e, "1 2 1")).unwrap(), p(&[0, 1, 0, 1]));
    }

    #[test]
    fn back_substitution_rejects_non_images() {
        // q^2 is not q * Rt(q^(1/2) - q^(-1/2)) for any Rt with parity 1
        assert!(rtilde_from_r(&p(&[0, 0, 1]), 1).is_err());
        assert!(rtilde_from_r(&p(&[0, 1]), 1).is_err());
        assert_eq!(rtilde_from_r(&p(&[-1, 1]), 1).unwrap(), p(&[0, 1]));
        assert_eq!(substitute_rtilde(&p(&[0, 1, 0, 1]), 3).unwrap(), p(&[-1, 2, -2, 1]));
        assert!(substitute_rtilde(&p(&[0, 0, 1]), 1).is_err());
    }

    #[test]
    fn kl_examples() {
        let e = engine(CoxeterMatrix::type_a(3));
        let id = e.system().identity();
        assert_eq!(e.kl_poly(&id, &id).unwrap(), IntPoly::one());
        assert_eq!(e.kl_poly(&id, &el(&e, "1 2")).unwrap(), IntPoly::one());
        assert_eq!(
            e.kl_poly(&el(&e, "2"), &el(&e, "2 1 3 2")).unwrap(),
            p(&[1, 1])
        );
        assert_eq!(e.kl_poly(&id, &el(&e, "2 1 3 2")).unwrap(), p(&[1, 1]));
        assert_eq!(e.kl_poly(&el(&e, "1"), &el(&e, "2")).unwrap(), IntPoly::zero());
    }

    #[test]
    fn d_examples() {
        let e = engine(CoxeterMatrix::type_a(3));
        let id = e.system().identity();
        let v = el(&e, "1 2 3 2 1");
        assert_eq!(e.d_invariant(&id, &el(&e, "1")), 1);
        assert_eq!(e.d_via_recurrence(&id, &el(&e, "1")), 1);
        assert_eq!(e.d_invariant(&id, &v), 3);
        assert_eq!(e.d_invariant(&el(&e, "2"), &v), 4);
        assert_eq!(e.d_via_recurrence(&id, &v), 3);
        assert_eq!(e.d_via_recurrence(&el(&e, "2"), &v), 4);
        assert_eq!(e.d_invariant(&v, &v), 0);
    }

    #[test]
    fn d_routes_agree_on_a2() {
        let e = engine(CoxeterMatrix::type_a(2));
        let all = e.system().enumerate_finite(10).unwrap();
        for u in &all {
            for v in &all {
                if e.system().bruhat_leq(u, v) {
                    assert_eq!(e.d_invariant(u, v), e.d_via_recurrence(u, v), "[{u}, {v}]");
                }
            }
        }
    }

    #[test]
    fn incarnations() {
        let e = engine(CoxeterMatrix::type_a(3));
        let id = e.system().identity();
        let rep = e.d_incarnations_report(&id, &el(&e, "1")).unwrap();
        assert_eq!((rep.p_coeff_q, rep.coatoms, rep.d), (0, 1, 1));
        assert!(rep.all_hold());
        let rep = e.d_incarnations_report(&id, &el(&e, "1 2 3 2 1")).unwrap();
        assert_eq!(rep.d, 3);
        assert_eq!(rep.p_coeff_q, rep.coatoms as i64 - 3);
        assert!(rep.all_hold());
    }

    #[test]
    fn cache_roundtrip_and_corruption() {
        let e = engine(CoxeterMatrix::type_b(3));
        let id = e.system().identity();
        let top = el(&e, "1 2 3 2 1 2 3 2 3");
        e.kl_poly(&id, &top).unwrap();
        e.rtilde_poly(&id, &top).unwrap();
        let bytes = e.cache().to_bytes(e.system());
        let loaded = PolyCache::from_bytes(&bytes, e.system()).unwrap();
        assert_eq!(loaded.len(), e.cache().len());
        assert_eq!(loaded.to_bytes(e.system()), bytes);
        let fresh = KlEngine::new(e.system());
        assert_eq!(
            loaded.get(PolyKind::P, &id, &top).unwrap(),
            fresh.kl_poly(&id, &top).unwrap()
        );

        let mut corrupt = bytes.clone();
        corrupt[20] ^= 0x40;
        assert!(matches!(
            PolyCache::from_bytes(&corrupt, e.system()),
            Err(CacheError::Checksum)
        ));
        assert!(matches!(
            PolyCache::from_bytes(b"nope", e.system()),
            Err(CacheError::BadMagic)
        ));
        let other = CoxeterSystem::new(CoxeterMatrix::type_a(3));
        assert!(matches!(
            PolyCache::from_bytes(&bytes, &other),
            Err(CacheError::SystemMismatch)
        ));
    }
}
