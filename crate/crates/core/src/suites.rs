//! Exhaustive verification suites over a corpus of intervals.
//!
//! Each suite checks one family of identities on every item it is given and
//! reports how many checks ran and the first failure in corpus order.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bruhat::{BruhatGraph, Interval};
use crate::corpus::SystemCtx;
use crate::coxeter::{Element, Root, Side};
use crate::diamond::{
    f_uv, supporting_chain, DiamondError, DiamondGraph, EdgeSet, GMinOptions, Mode,
};
use crate::order::{rank_with_reseed, s_gamma, PathFinder, ReflectionOrder, RootRanking};
use crate::poly::IntPoly;
use crate::polynomials::{PolyCache, PolyKind};
use crate::poset::{canonical_form, is_digraph_isomorphism, isomorphism_with, Poset, PosetCertificate};

/// Seeds of the random orders used next to the Deodhar order.
pub const RANDOM_ORDER_SEEDS: [u64; 4] = [11, 22, 33, 44];
/// Seed for every Deodhar order.
pub const DEODHAR_SEED: u64 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs `check` on every item in parallel; `Ok(n)` means `n` checks passed.
pub fn run_suite<T: Sync>(
    name: &str,
    items: &[T],
    check: impl Fn(&T) -> Result<usize, String> + Sync,
) -> SuiteReport {
    let start = Instant::now();
    let results: Vec<Result<usize, String>> = items.par_iter().map(&check).collect();
    let checked = results.iter().map(|r| *r.as_ref().unwrap_or(&1)).sum();
    let failures = results.iter().filter(|r| r.is_err()).count();
    let first_failure = results.into_iter().find_map(Result::err);
    SuiteReport {
        name: name.to_string(),
        checked,
        failures,
        first_failure,
        millis: start.elapsed().as_millis(),
    }
}

fn describe(ctx: &SystemCtx, u: &Element, v: &Element) -> String {
    format!("{} [{}, {}]", ctx.name, u.word_string(), v.word_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn diamond_graph(ctx: &SystemCtx, u: &Element, v: &Element) -> Result<DiamondGraph, String> {
    let interval = Interval::new(&ctx.sys, u, v).map_err(|e| e.to_string())?;
    DiamondGraph::from_interval(interval).map_err(|e| e.to_string())
}

/// The Deodhar order for `v`, reseeded once if it ties on `graph`'s labels.
pub fn deodhar_for(
    ctx: &SystemCtx,
    v: &Element,
    graph: &BruhatGraph,
) -> Result<(ReflectionOrder, RootRanking), String> {
    let mut roots = graph.labels();
    roots.extend(ctx.sys.inversion_set(v));
    rank_with_reseed(|seed| ReflectionOrder::deodhar(&ctx.sys, v, seed), DEODHAR_SEED, &roots)
        .map_err(|e| e.to_string())
}

/// The Deodhar order for `v` followed by the seeded random orders.
pub fn test_orders(
    ctx: &SystemCtx,
    v: &Element,
    graph: &BruhatGraph,
) -> Result<Vec<(String, ReflectionOrder)>, String> {
    let mut orders = vec![("deodhar".to_string(), deodhar_for(ctx, v, graph)?.0)];
    for seed in RANDOM_ORDER_SEEDS {
        let (order, _) = rank_with_reseed(
            |s| ReflectionOrder::random(&ctx.sys, s),
            seed,
            &graph.labels(),
        )
        .map_err(|e| e.to_string())?;
        orders.push((format!("random({seed})"), order));
    }
    Ok(orders)
}

/// `d_{e,v} = 3` and `d_{s₂,v} = 4` for `v = s₁s₂s₃s₂s₁` in `S₄` (`ctx` must be `A3`).
pub fn known_d_values(ctx: &SystemCtx) -> SuiteReport {
    run_suite("known-d-values", &[()], |_| {
        let v = ctx.parse("1 2 3 2 1").map_err(|e| e.to_string())?;
        let e = ctx.sys.identity();
        let s2 = ctx.parse("2").map_err(|e| e.to_string())?;
        let eng = &ctx.engine;
        let got = [
            eng.d_invariant(&e, &v),
            eng.d_via_recurrence(&e, &v),
            eng.d_invariant(&s2, &v),
            eng.d_via_recurrence(&s2, &v),
        ];
        ensure(got == [3, 3, 4, 4], || format!("d values {got:?}, expected [3, 3, 4, 4]"))?;
        Ok(4)
    })
}

/// An order with `α₂` minimal sends the longest path of `[e, s₁s₂s₃s₂s₁]`
/// through `s₂`, where `d` increases.
pub fn non_deodhar_counterexample(ctx: &SystemCtx) -> SuiteReport {
    run_suite("non-deodhar-counterexample", &[()], |_| {
        let v = ctx.parse("1 2 3 2 1").map_err(|e| e.to_string())?;
        let u = ctx.sys.identity();
        let s2 = ctx.parse("2").map_err(|e| e.to_string())?;
        let dg = diamond_graph(ctx, &u, &v)?;
        let order = ReflectionOrder::deodhar(&ctx.sys, &s2, DEODHAR_SEED);
        ensure(order.minimal_simple().ok() == Some(1), || "alpha_2 is not minimal".into())?;
        let finder = PathFinder::new(dg.graph(), &order).map_err(|e| e.to_string())?;
        let longest = finder.longest_path().map_err(|e| e.to_string())?;
        ensure(longest.vertices[1] == s2, || {
            format!("first step goes to {}, not s2", longest.vertices[1])
        })?;
        let diff = ctx.engine.d_invariant(&u, &v) as i64
            - ctx.engine.d_invariant(&longest.vertices[1], &v) as i64;
        ensure(diff == -1, || format!("d_(u,v) - d_(x1,v) = {diff}, expected -1"))?;
        let diverging = finder
            .second_length_paths()
            .iter()
            .filter(|p| crate::order::divergence_index(p, &longest) == Some(0))
            .count() as i64;
        ensure(diverging == 1 - diff, || {
            format!("{diverging} paths diverge at u, expected {}", 1 - diff)
        })?;
        Ok(3)
    })
}

/// `d` from `R` agrees with the descent recurrence along every left descent.
pub fn d_routes(ctx: &SystemCtx, pairs: &[(Element, Element)]) -> SuiteReport {
    run_suite(&format!("d-routes/{}", ctx.name), pairs, |(u, v)| {
        let eng = &ctx.engine;
        let d = eng.d_invariant(u, v);
        let mut checks = 1;
        ensure(eng.d_via_recurrence(u, v) == d, || {
            format!("{}: recurrence disagrees with R", describe(ctx, u, v))
        })?;
        if u != v {
            for s in v.descents(Side::Left) {
                checks += 1;
                ensure(eng.d_step(u, v, s) == d, || {
                    format!("{}: recurrence along s{} gives another d", describe(ctx, u, v), s + 1)
                })?;
            }
        }
        Ok(checks)
    })
}

/// The four coefficient identities for `d`.
pub fn d_incarnations(ctx: &SystemCtx, pairs: &[(Element, Element)]) -> SuiteReport {
    run_suite(&format!("d-incarnations/{}", ctx.name), pairs, |(u, v)| {
        let rep = ctx.engine.d_incarnations_report(u, v).map_err(|e| e.to_string())?;
        ensure(rep.all_hold(), || format!("{}: {rep:?}", describe(ctx, u, v)))?;
        Ok(4)
    })
}

/// `Σ q^{ℓ(γ)}` over increasing paths equals `R̃` for the Deodhar order and
/// every random order; the longest path is unique and lex-minimal; the
/// second-length paths are counted by `[q^{ℓ−2}] R̃`.
pub fn increasing_paths(ctx: &SystemCtx, pairs: &[(Element, Element)]) -> SuiteReport {
    run_suite(&format!("increasing-paths/{}", ctx.name), pairs, |(u, v)| {
        let dg = diamond_graph(ctx, u, v)?;
        let rt = ctx.engine.rtilde_poly(u, v).map_err(|e| e.to_string())?;
        let length = v.length() - u.length();
        let mut checks = 0;
        for (name, order) in test_orders(ctx, v, dg.graph())? {
            let finder = PathFinder::new(dg.graph(), &order).map_err(|e| e.to_string())?;
            let counts = finder.length_generating_function();
            let from_paths =
                IntPoly::from_coeffs(counts.iter().map(|&c| BigInt::from(c)).collect());
            ensure(from_paths == rt, || {
                format!("{} under {name}: paths give {from_paths}, R~ = {rt}", describe(ctx, u, v))
            })?;
            finder
                .longest_path()
                .map_err(|e| format!("{} under {name}: {e}", describe(ctx, u, v)))?;
            if length >= 2 {
                let second = finder.second_length_paths().len();
                ensure(BigInt::from(second) == rt.coeff(length as i64 - 2), || {
                    format!("{} under {name}: {second} second-length paths", describe(ctx, u, v))
                })?;
            }
            checks += 3;
        }
        Ok(checks)
    })
}

/// The longest path is unique and lex-minimal and the second-length paths
/// are counted by `[q^{ℓ−2}] R̃`, under every test order, without
/// enumerating all increasing paths.
pub fn longest_paths(ctx: &SystemCtx, pairs: &[(Element, Element)]) -> SuiteReport {
    run_suite(&format!("longest-paths/{}", ctx.name), pairs, |(u, v)| {
        let dg = diamond_graph(ctx, u, v)?;
        let rt = ctx.engine.rtilde_poly(u, v).map_err(|e| e.to_string())?;
        let length = v.length() - u.length();
        let mut checks = 0;
        for (name, order) in test_orders(ctx, v, dg.graph())? {
            let finder = PathFinder::new(dg.graph(), &order).map_err(|e| e.to_string())?;
            finder
                .longest_path()
                .map_err(|e| format!("{} under {name}: {e}", describe(ctx, u, v)))?;
            if length >= 2 {
                let second = finder.second_length_paths().len();
                ensure(BigInt::from(second) == rt.coeff(length as i64 - 2), || {
                    format!("{} under {name}: {second} second-length paths", describe(ctx, u, v))
                })?;
            }
            checks += 2;
        }
        Ok(checks)
    })
}

/// Along the longest path of a Deodhar order `d_{x_i,v}` never increases,
/// and `d_{x₁,v} − d_{u,v} + 1` second-length paths diverge at `u`.
pub fn divergence(ctx: &SystemCtx, pairs: &[(Element, Element)]) -> SuiteReport {
    run_suite(&format!("divergence/{}", ctx.name), pairs, |(u, v)| {
        if u == v {
            return Ok(0);
        }
        let dg = diamond_graph(ctx, u, v)?;
        let (order, ranking) = deodhar_for(ctx, v, dg.graph())?;
        let finder = PathFinder::with_ranking(dg.graph(), &order, ranking);
        let longest = finder.longest_path().map_err(|e| e.to_string())?;
        let d: Vec<i64> = longest
            .vertices
            .iter()
            .map(|x| ctx.engine.d_invariant(x, v) as i64)
            .collect();
        ensure(d.windows(2).all(|w| w[0] >= w[1]), || {
            format!("{}: d increases along the longest path: {d:?}", describe(ctx, u, v))
        })?;
        let diverging = finder
            .second_length_paths()
            .iter()
            .filter(|p| crate::order::divergence_index(p, &longest) == Some(0))
            .count() as i64;
        ensure(diverging == d[1] - d[0] + 1, || {
            format!(
                "{}: {diverging} paths diverge at u, expected {}",
                describe(ctx, u, v),
                d[1] - d[0] + 1
            )
        })?;
        Ok(2)
    })
}

/// `s`-translates of longest paths avoiding `su` are longest paths of
/// `[su, sv]` under the upper `s`-conjugate.
pub fn s_translates(ctx: &SystemCtx, pairs: &[(Element, Element)]) -> SuiteReport {
    run_suite(&format!("s-translates/{}", ctx.name), pairs, |(u, v)| {
        if u == v {
            return Ok(0);
        }
        let dg = diamond_graph(ctx, u, v)?;
        let (order, ranking) = deodhar_for(ctx, v, dg.graph())?;
        let finder = PathFinder::with_ranking(dg.graph(), &order, ranking);
        let longest = finder.longest_path().map_err(|e| e.to_string())?;
        let s = order.minimal_simple().map_err(|e| e.to_string())?;
        let su = ctx.sys.mul_gen(u, s, Side::Left);
        if longest.contains(&su) {
            return Ok(0);
        }
        let moved = s_gamma(&order, &longest, s)
            .map_err(|e| format!("{}: {e}", describe(ctx, u, v)))?;
        let sv = ctx.sys.mul_gen(v, s, Side::Left);
        let sdg = diamond_graph(ctx, &su, &sv)?;
        let conj = order.upper_s_conjugate(s);
        let sfinder = PathFinder::new(sdg.graph(), &conj).map_err(|e| e.to_string())?;
        let target = sfinder.longest_path().map_err(|e| e.to_string())?;
        ensure(target.vertices == moved.vertices && target.labels == moved.labels, || {
            format!("{}: translate is not the longest path of [su, sv]", describe(ctx, u, v))
        })?;
        Ok(1)
    })
}

/// `d = |F_{u,v}| = g_min(strict)`, with `F_{u,v}` generating; for short
/// intervals the minimum is also searched from zero.
pub fn d_equals_g(
    ctx: &SystemCtx,
    pairs: &[(Element, Element)],
    exhaustive_up_to: usize,
) -> SuiteReport {
    run_suite(&format!("d-equals-g/{}", ctx.name), pairs, |(u, v)| {
        let dg = diamond_graph(ctx, u, v)?;
        let d = ctx.engine.d_invariant(u, v);
        let (order, _) = deodhar_for(ctx, v, dg.graph())?;
        let f = f_uv(&ctx.engine, &dg, &order).map_err(|e| e.to_string())?;
        let here = || describe(ctx, u, v);
        ensure(f.edges.len() == d, || format!("{}: |F| = {}, d = {d}", here(), f.edges.len()))?;
        ensure(dg.is_generating(&f.edges, Mode::Strict), || {
            format!("{}: F does not generate", here())
        })?;
        let options = GMinOptions {
            lower_bound: d,
            upper_hints: vec![f.edges.clone()],
            ..GMinOptions::default()
        };
        let g = dg.g_min(Mode::Strict, &options).map_err(|e| e.to_string())?;
        ensure(g.size == d && dg.is_generating(&g.certificate, Mode::Strict), || {
            format!("{}: g = {}, d = {d}", here(), g.size)
        })?;
        let mut checks = 3;
        if v.length() - u.length() <= exhaustive_up_to {
            let g0 = dg
                .g_min(Mode::Strict, &GMinOptions::default())
                .map_err(|e| e.to_string())?;
            ensure(g0.size == d, || {
                format!("{}: unseeded search finds g = {}, d = {d}", here(), g0.size)
            })?;
            checks += 1;
        }
        Ok(checks)
    })
}

/// `g = g′ = g″ = d`, each searched from zero.
pub fn g_variants(ctx: &SystemCtx, pairs: &[(Element, Element)]) -> SuiteReport {
    run_suite(&format!("g-variants/{}", ctx.name), pairs, |(u, v)| {
        let dg = diamond_graph(ctx, u, v)?;
        let d = ctx.engine.d_invariant(u, v);
        let variants = [
            ("g", Mode::Strict, false),
            ("g'", Mode::Strict, true),
            ("g''", Mode::Weak, false),
        ];
        for (name, mode, restrict_len1) in variants {
            let options = GMinOptions {
                restrict_len1,
                ..GMinOptions::default()
            };
            let g = dg.g_min(mode, &options).map_err(|e| e.to_string())?;
            ensure(g.size == d, || {
                format!("{}: {name} = {}, d = {d}", describe(ctx, u, v), g.size)
            })?;
        }
        Ok(3)
    })
}

/// Supporting chains exist and certify the first edge whenever `d` does not
/// drop along it.
pub fn supporting_chains(ctx: &SystemCtx, pairs: &[(Element, Element)]) -> SuiteReport {
    run_suite(&format!("supporting-chains/{}", ctx.name), pairs, |(u, v)| {
        if u == v {
            return Ok(0);
        }
        let dg = diamond_graph(ctx, u, v)?;
        let (order, _) = deodhar_for(ctx, v, dg.graph())?;
        match supporting_chain(&ctx.engine, &dg, &order) {
            Ok(_) => Ok(1),
            Err(DiamondError::WrongBranch) => Ok(0),
            Err(e) => Err(format!("{}: {e}", describe(ctx, u, v))),
        }
    })
}

/// Closure is extensive, monotone and idempotent, strict closure contains
/// weak closure, and maximal chains generate.
pub fn closure_laws(
    ctx: &SystemCtx,
    pairs: &[(Element, Element)],
    seeds_per_graph: u64,
) -> SuiteReport {
    run_suite(&format!("closure-laws/{}", ctx.name), pairs, |(u, v)| {
        let dg = diamond_graph(ctx, u, v)?;
        let m = dg.edge_count();
        let here = || describe(ctx, u, v);
        let mut checks = 0;
        for seed in 0..seeds_per_graph {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p: f64 = rng.gen_range(0.05..0.5);
            let f = EdgeSet::from_indices(m, (0..m).filter(|_| rng.gen_bool(p)));
            let g = f.union(&EdgeSet::from_indices(m, (0..m).filter(|_| rng.gen_bool(0.2))));
            let mut strict = None;
            for mode in [Mode::Strict, Mode::Weak] {
                let cf = dg.closure(&f, mode);
                ensure(f.is_subset(&cf), || format!("{}: not extensive (seed {seed})", here()))?;
                ensure(dg.closure(&cf, mode) == cf, || {
                    format!("{}: not idempotent (seed {seed})", here())
                })?;
                ensure(cf.is_subset(&dg.closure(&g, mode)), || {
                    format!("{}: not monotone (seed {seed})", here())
                })?;
                let trace = dg.closure_trace(&f, mode);
                let mut replay = f.clone();
                for step in &trace {
                    for &k in &step.added {
                        ensure(replay.insert(k), || format!("{}: trace re-adds {k}", here()))?;
                    }
                }
                ensure(replay == cf, || format!("{}: trace does not replay", here()))?;
                match strict.take() {
                    None => strict = Some(cf),
                    Some(s) => ensure(cf.is_subset(&s), || {
                        format!("{}: weak closure exceeds strict (seed {seed})", here())
                    })?,
                }
                checks += 4;
            }
        }
        if let Some(chain) = dg.interval().maximal_chains().next() {
            ensure(dg.is_generating(&dg.chain_edges(&chain), Mode::Strict), || {
                format!("{}: maximal chain does not generate", here())
            })?;
            checks += 1;
        }
        ensure(!dg.is_generating(&dg.empty_set(), Mode::Strict) || m == 0, || {
            format!("{}: empty set generates", here())
        })?;
        Ok(checks + 1)
    })
}

/// `γ = aα + bβ` with `a, b > 0`, decided exactly.
fn in_open_cone(alpha: &Root, beta: &Root, gamma: &Root) -> bool {
    let (a, b, g) = (alpha.coords(), beta.coords(), gamma.coords());
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = a[i] * b[j] - a[j] * b[i];
            if det == 0 {
                continue;
            }
            let x = g[i] * b[j] - g[j] * b[i];
            let y = a[i] * g[j] - a[j] * g[i];
            let positive = x.signum() == det.signum() && y.signum() == det.signum();
            return positive && (0..n).all(|k| g[k] * det == x * a[k] + y * b[k]);
        }
    }
    false
}

/// Betweenness on every rank-2 cone triple of positive roots, for the
/// Deodhar orders of all elements up to `max_v_length` and the random
/// orders. Finite systems only.
pub fn order_axiom(ctx: &SystemCtx, max_v_length: usize) -> SuiteReport {
    let roots = match ctx.sys.positive_roots(10_000) {
        Ok(r) => r,
        Err(e) => {
            return SuiteReport {
                name: format!("order-axiom/{}", ctx.name),
                checked: 0,
                failures: 1,
                first_failure: Some(e.to_string()),
                millis: 0,
            }
        }
    };
    let mut triples = Vec::new();
    for (i, a) in roots.iter().enumerate() {
        for (j, b) in roots.iter().enumerate() {
            for (k, g) in roots.iter().enumerate() {
                if i != j && k != i && k != j && in_open_cone(a, b, g) {
                    triples.push((i, j, k));
                }
            }
        }
    }
    let mut orders: Vec<(String, ReflectionOrder)> = ctx
        .elements
        .iter()
        .filter(|v| v.length() <= max_v_length)
        .map(|v| {
            (
                format!("deodhar({})", v.word_string()),
                ReflectionOrder::deodhar(&ctx.sys, v, DEODHAR_SEED),
            )
        })
        .collect();
    for seed in RANDOM_ORDER_SEEDS.iter().chain(&[55]) {
        orders.push((format!("random({seed})"), ReflectionOrder::random(&ctx.sys, *seed)));
    }
    run_suite(&format!("order-axiom/{}", ctx.name), &orders, |(name, order)| {
        let ranking = order.rank(&roots).map_err(|e| format!("{name}: {e}"))?;
        let r = |x: usize| ranking.rank_of(&roots[x]).unwrap();
        for &(a, b, g) in &triples {
            let between = (r(a) < r(g) && r(g) < r(b)) || (r(b) < r(g) && r(g) < r(a));
            ensure(between, || {
                format!("{name}: {} is not between {} and {}", roots[g], roots[a], roots[b])
            })?;
        }
        if let Some(v) = name.strip_prefix("deodhar(").and_then(|s| s.strip_suffix(')')) {
            let v = ctx.parse(v).map_err(|e| e.to_string())?;
            let section = ctx.sys.inversion_set(&v);
            ensure(order.is_initial_section(&section, &roots).unwrap_or(false), || {
                format!("{name}: N(v) is not an initial section")
            })?;
        }
        Ok(triples.len() + 1)
    })
}

/// Cached polynomials survive a byte round trip and equal fresh ones.
pub fn cache_roundtrip(ctx: &SystemCtx, pairs: &[(Element, Element)]) -> SuiteReport {
    let bytes = ctx.engine.cache().to_bytes(&ctx.sys);
    let loaded = PolyCache::from_bytes(&bytes, &ctx.sys);
    let fresh = crate::polynomials::KlEngine::new(&ctx.sys);
    run_suite(&format!("cache-roundtrip/{}", ctx.name), pairs, |(u, v)| {
        let loaded = loaded.as_ref().map_err(|e| e.to_string())?;
        let mut checks = 0;
        for kind in [PolyKind::R, PolyKind::Rt, PolyKind::P] {
            if let Some(hit) = loaded.get(kind, u, v) {
                let again = fresh.poly(kind, u, v).map_err(|e| e.to_string())?;
                ensure(hit == again, || {
                    format!("{}: cached {} differs", describe(ctx, u, v), kind.name())
                })?;
                checks += 1;
            }
        }
        Ok(checks)
    })
}

/// A corpus interval with its data for classification.
#[derive(Debug, Clone, Serialize)]
pub struct IntervalRef {
    pub system: String,
    pub u: String,
    pub v: String,
    pub length: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceClass {
    /// Hex digest of the canonical form.
    pub form: String,
    pub size: usize,
    pub length: usize,
    pub members: Vec<IntervalRef>,
    pub p: String,
    pub r: String,
    pub rt: String,
    pub mismatch: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub max_length: usize,
    pub intervals: usize,
    pub classes: Vec<InvarianceClass>,
    pub cross_system_classes: usize,
    pub mismatches: usize,
}

struct Member {
    ctx: usize,
    u: Element,
    v: Element,
    poset: Poset,
    cert: PosetCertificate,
}

fn form_digest(form: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    Sha256::digest(form)
        .iter()
        .take(12)
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Classifies intervals by poset isomorphism. Within a class, intervals of
/// length at most `full_up_to` must share `P`, `R` and `R̃`; every class
/// must share the four coefficients `[q]P`, `[q]R`, `[q^{ℓ−1}]R` and
/// `[q^{ℓ−2}]R̃`; every class representative map must also carry Bruhat
/// graphs onto each other.
pub fn invariance(
    ctxs: &[&SystemCtx],
    pairs: &[Vec<(Element, Element)>],
    full_up_to: usize,
) -> (InvarianceReport, Vec<SuiteReport>) {
    let start = Instant::now();
    let members: Vec<Member> = ctxs
        .iter()
        .enumerate()
        .flat_map(|(c, ctx)| pairs[c].iter().map(move |(u, v)| (c, ctx, u, v)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(c, ctx, u, v)| {
            let interval = Interval::new(&ctx.sys, u, v).expect("corpus pairs are comparable");
            let poset = Poset::from(&interval);
            let cert = canonical_form(&poset);
            Member {
                ctx: c,
                u: u.clone(),
                v: v.clone(),
                poset,
                cert,
            }
        })
        .collect();
    let mut by_form: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for (i, m) in members.iter().enumerate() {
        by_form.entry(m.cert.form().to_vec()).or_default().push(i);
    }
    let groups: Vec<Vec<usize>> = by_form.into_values().collect();

    let polys = |m: &Member| -> Result<[IntPoly; 3], String> {
        let eng = &ctxs[m.ctx].engine;
        Ok([
            eng.kl_poly(&m.u, &m.v).map_err(|e| e.to_string())?,
            eng.r_poly(&m.u, &m.v),
            eng.rtilde_poly(&m.u, &m.v).map_err(|e| e.to_string())?,
        ])
    };
    let name = |m: &Member| describe(ctxs[m.ctx], &m.u, &m.v);

    struct Checked {
        class: InvarianceClass,
        full: Result<usize, String>,
        coeffs: Result<usize, String>,
        dyer: Result<usize, String>,
    }
    let checked: Vec<Checked> = groups
        .par_iter()
        .map(|group| {
            let first = &members[group[0]];
            let length = first.v.length() - first.u.length();
            let base = polys(first);
            let mut full = Ok(0);
            let mut coeffs = Ok(0);
            let mut dyer = Ok(0);
            let mut mismatch = None;
            let coefficient_tuple = |p: &[IntPoly; 3]| {
                let l = length as i64;
                [p[0].coeff(1), p[1].coeff(1), p[1].coeff(l - 1), p[2].coeff(l - 2)]
            };
            let first_graph = Interval::new(&ctxs[first.ctx].sys, &first.u, &first.v)
                .and_then(BruhatGraph::new)
                .map_err(|e| e.to_string());
            for &i in &group[1..] {
                let m = &members[i];
                let result = (|| -> Result<(), String> {
                    let map = isomorphism_with(&first.poset, &first.cert, &m.poset, &m.cert)
                        .ok_or_else(|| format!("{} and {}: equal forms but no isomorphism", name(first), name(m)))?;
                    let base = base.as_ref().map_err(Clone::clone)?;
                    let other = polys(m)?;
                    if coefficient_tuple(base) != coefficient_tuple(&other) {
                        let msg = format!("{} vs {}: coefficients differ", name(first), name(m));
                        mismatch.get_or_insert(msg.clone());
                        coeffs = Err(msg);
                    } else if let Ok(n) = &mut coeffs {
                        *n += 4;
                    }
                    if length <= full_up_to {
                        if base != &other {
                            let msg = format!("{} vs {}: polynomials differ", name(first), name(m));
                            mismatch.get_or_insert(msg.clone());
                            full = Err(msg);
                        } else if let Ok(n) = &mut full {
                            *n += 3;
                        }
                    }
                    let g1 = first_graph.as_ref().map_err(Clone::clone)?;
                    let g2 = Interval::new(&ctxs[m.ctx].sys, &m.u, &m.v)
                        .and_then(BruhatGraph::new)
                        .map_err(|e| e.to_string())?;
                    if !is_digraph_isomorphism(g1, &g2, &map) {
                        let msg = format!("{} vs {}: Bruhat graphs differ", name(first), name(m));
                        dyer = Err(msg);
                    } else if let Ok(n) = &mut dyer {
                        *n += 1;
                    }
                    Ok(())
                })();
                if let Err(e) = result {
                    mismatch.get_or_insert(e.clone());
                    full = Err(e);
                }
            }
            let (p, r, rt) = match &base {
                Ok([p, r, rt]) => (p.to_string(), r.to_string(), rt.to_string()),
                Err(e) => (e.clone(), String::new(), String::new()),
            };
            let class = InvarianceClass {
                form: form_digest(first.cert.form()),
                size: first.poset.len(),
                length,
                members: group
                    .iter()
                    .map(|&i| {
                        let m = &members[i];
                        IntervalRef {
                            system: ctxs[m.ctx].name.clone(),
                            u: m.u.word_string(),
                            v: m.v.word_string(),
                            length,
                        }
                    })
                    .collect(),
                p,
                r,
                rt,
                mismatch,
            };
            Checked {
                class,
                full,
                coeffs,
                dyer,
            }
        })
        .collect();

    let millis = start.elapsed().as_millis();
    let mut reports = Vec::new();
    let mut summarize = |name: &str, pick: &dyn Fn(&Checked) -> &Result<usize, String>| {
        let results: Vec<&Result<usize, String>> = checked.iter().map(pick).collect();
        reports.push(SuiteReport {
            name: name.to_string(),
            checked: results.iter().map(|r| *r.as_ref().unwrap_or(&1)).sum(),
            failures: results.iter().filter(|r| r.is_err()).count(),
            first_failure: results.iter().find_map(|r| r.as_ref().err().cloned()),
            millis,
        });
    };
    summarize("invariance-polynomials", &|c| &c.full);
    summarize("invariance-coefficients", &|c| &c.coeffs);
    summarize("invariance-bruhat-graph", &|c| &c.dyer);

    let classes: Vec<InvarianceClass> = checked.into_iter().map(|c| c.class).collect();
    let cross_system_classes = classes
        .iter()
        .filter(|c| c.members.iter().map(|m| &m.system).collect::<BTreeSet<_>>().len() > 1)
        .count();
    let report = InvarianceReport {
        max_length: pairs
            .iter()
            .flatten()
            .map(|(u, v)| v.length() - u.length())
            .max()
            .unwrap_or(0),
        intervals: members.len(),
        mismatches: classes.iter().filter(|c| c.mismatch.is_some()).count(),
        cross_system_classes,
        classes,
    };
    (report, reports)
}
