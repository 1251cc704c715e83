//! Acceptance criteria 1–9, one PASS/FAIL line each.
//!
//! Runs as a plain binary so the summary lines are always printed.

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bruhat_kl::corpus::SystemCtx;
use bruhat_kl::diamond::{f_uv, DiamondGraph, EdgeSet, Mode};
use bruhat_kl::suites::{self, SuiteReport};
use bruhat_kl::{BruhatGraph, Element, Interval, IntPoly, Side};

struct Outcome {
    checks: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn absorb(&mut self, report: SuiteReport) {
        self.checks += report.checked;
        if let Some(f) = report.first_failure {
            self.failures
                .push(format!("{} ({} failures): {f}", report.name, report.failures));
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }
}

/// Bruhat order by the subword property: all products of subwords of a
/// reduced word of `v`.
struct SubwordOracle {
    below: HashMap<Element, HashSet<Element>>,
}

impl SubwordOracle {
    fn new(ctx: &SystemCtx) -> Self {
        let mut below = HashMap::new();
        for v in &ctx.elements {
            let word = v.word();
            let mut products = HashSet::new();
            for mask in 0u32..(1 << word.len()) {
                let mut x = ctx.sys.identity();
                for (i, &s) in word.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        x = ctx.sys.mul_gen(&x, s, Side::Right);
                    }
                }
                products.insert(x);
            }
            below.insert(v.clone(), products);
        }
        Self { below }
    }

    fn leq(&self, u: &Element, v: &Element) -> bool {
        self.below[v].contains(u)
    }
}

/// `R̃` by its own descent recursion: with `s` a left descent of `v`,
/// `R̃_{u,v} = R̃_{su,sv}` if `su < u` and `q R̃_{u,sv} + R̃_{su,sv}` otherwise.
fn rtilde_oracle(
    ctx: &SystemCtx,
    order: &SubwordOracle,
    memo: &mut HashMap<(Element, Element), IntPoly>,
    u: &Element,
    v: &Element,
) -> IntPoly {
    if !order.leq(u, v) {
        return IntPoly::zero();
    }
    if u == v {
        return IntPoly::one();
    }
    if let Some(hit) = memo.get(&(u.clone(), v.clone())) {
        return hit.clone();
    }
    let s = *v.word().last().unwrap();
    // right-handed version of the recursion, independent of the library's
    // left-descent choice
    let vs = ctx.sys.mul_gen(v, s, Side::Right);
    let us = ctx.sys.mul_gen(u, s, Side::Right);
    let result = if u.has_descent(s, Side::Right) {
        rtilde_oracle(ctx, order, memo, &us, &vs)
    } else {
        &rtilde_oracle(ctx, order, memo, u, &vs).shift(1) + &rtilde_oracle(ctx, order, memo, &us, &vs)
    };
    memo.insert((u.clone(), v.clone()), result.clone());
    result
}

/// All 4-cycles by brute force over vertex quadruples.
fn naive_cycles(g: &BruhatGraph) -> Vec<[usize; 4]> {
    let n = g.interval().len();
    let e = |a: usize, b: usize| g.edge_between(a, b);
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for [p, q, r, s] in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        if let (Some(x), Some(y), Some(z), Some(w)) = (e(p, q), e(q, r), e(r, s), e(s, p)) {
                            out.push([x, y, z, w]);
                        }
                    }
                }
            }
        }
    }
    out
}

fn naive_closure(cycles: &[[usize; 4]], set: &HashSet<usize>) -> HashSet<usize> {
    let mut set = set.clone();
    loop {
        let before = set.len();
        for c in cycles {
            if (0..4).any(|i| set.contains(&c[i]) && set.contains(&c[(i + 1) % 4])) {
                set.extend(c.iter().copied());
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Whether some `k`-subset of `0..m` generates under the naive closure.
fn naive_some_generating(cycles: &[[usize; 4]], m: usize, k: usize) -> bool {
    fn rec(cycles: &[[usize; 4]], m: usize, k: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            let set: HashSet<usize> = chosen.iter().copied().collect();
            return naive_closure(cycles, &set).len() == m;
        }
        for i in start..m {
            chosen.push(i);
            if rec(cycles, m, k, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    k <= m && rec(cycles, m, k, 0, &mut Vec::new())
}

struct Corpus {
    a3: SystemCtx,
    b3: SystemCtx,
    affine: SystemCtx,
    a3_all: Vec<(Element, Element)>,
    b3_all: Vec<(Element, Element)>,
    b3_upto6: Vec<(Element, Element)>,
    affine_all: Vec<(Element, Element)>,
}

fn length(pair: &(Element, Element)) -> usize {
    pair.1.length() - pair.0.length()
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let a3 = SystemCtx::builtin("A3", None).unwrap();
    out.absorb(suites::known_d_values(&a3));
    let elapsed = start.elapsed();
    out.check(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}, limit 1 s")
    });
    out
}

fn criterion_2(c: &Corpus) -> Outcome {
    let mut out = Outcome::new();
    out.absorb(suites::d_equals_g(&c.a3, &c.a3_all, 4));
    out.absorb(suites::d_equals_g(&c.b3, &c.b3_upto6, 4));
    out.absorb(suites::supporting_chains(&c.a3, &c.a3_all));
    out.absorb(suites::supporting_chains(&c.b3, &c.b3_upto6));
    out.absorb(suites::s_translates(&c.a3, &c.a3_all));
    out.absorb(suites::s_translates(&c.b3, &c.b3_upto6));
    // independent closure: F generates and nothing smaller than d does
    for (ctx, pairs) in [(&c.a3, &c.a3_all), (&c.b3, &c.b3_upto6)] {
        for pair @ (u, v) in pairs.iter() {
            let interval = Interval::new(&ctx.sys, u, v).unwrap();
            let dg = DiamondGraph::from_interval(interval).unwrap();
            let cycles = naive_cycles(dg.graph());
            let m = dg.edge_count();
            let d = ctx.engine.d_invariant(u, v);
            let (order, _) = suites::deodhar_for(ctx, v, dg.graph()).unwrap();
            let f = f_uv(&ctx.engine, &dg, &order).unwrap();
            let fset: HashSet<usize> = f.edges.iter().collect();
            out.check(naive_closure(&cycles, &fset).len() == m, || {
                format!("{} [{u}, {v}]: F does not generate under the naive closure", ctx.name)
            });
            if length(pair) <= 4 && d > 0 {
                out.check(!naive_some_generating(&cycles, m, d - 1), || {
                    format!("{} [{u}, {v}]: a set of size {} generates", ctx.name, d - 1)
                });
            }
        }
    }
    out
}

fn criterion_3(c: &Corpus) -> Outcome {
    let mut out = Outcome::new();
    out.absorb(suites::increasing_paths(&c.a3, &c.a3_all));
    let oracle = SubwordOracle::new(&c.a3);
    let mut memo = HashMap::new();
    for (u, v) in &c.a3_all {
        let expected = rtilde_oracle(&c.a3, &oracle, &mut memo, u, v);
        let got = c.a3.engine.rtilde_poly(u, v).unwrap();
        out.check(expected == got, || {
            format!("A3 [{u}, {v}]: back-substitution gives {got}, recursion gives {expected}")
        });
    }
    out
}

fn criterion_4(c: &Corpus) -> Outcome {
    let mut out = Outcome::new();
    out.absorb(suites::divergence(&c.a3, &c.a3_all));
    out.absorb(suites::divergence(&c.b3, &c.b3_all));
    out.absorb(suites::non_deodhar_counterexample(&c.a3));
    out
}

fn criteria_5_6(c: &Corpus) -> (Outcome, Outcome) {
    let (report, reports) = suites::invariance(
        &[&c.a3, &c.b3, &c.affine],
        &[c.a3_all.clone(), c.b3_all.clone(), c.affine_all.clone()],
        6,
    );
    let mut five = Outcome::new();
    let mut six = Outcome::new();
    for r in reports {
        if r.name == "invariance-coefficients" {
            six.absorb(r);
        } else {
            five.absorb(r);
        }
    }
    let total = c.a3_all.len() + c.b3_all.len() + c.affine_all.len();
    let listed: usize = report.classes.iter().map(|k| k.members.len()).sum();
    five.check(listed == total && report.intervals == total, || {
        format!("{listed} classified intervals, expected {total}")
    });
    five.check(report.mismatches == 0, || format!("{} mismatching classes", report.mismatches));
    let diamonds: Vec<_> = report
        .classes
        .iter()
        .filter(|k| k.length == 2 && k.members.iter().any(|m| m.system != "A1~"))
        .collect();
    five.check(diamonds.len() == 1 && diamonds[0].p == "1", || {
        format!("length-2 intervals of A3 and B3 fall into {} classes", diamonds.len())
    });
    let mixed = report.classes.iter().any(|k| {
        k.members.iter().any(|m| m.system == "A3") && k.members.iter().any(|m| m.system == "B3")
    });
    five.check(mixed, || "no class mixes A3 and B3".into());
    (five, six)
}

fn criterion_7(c: &Corpus) -> Outcome {
    let mut out = Outcome::new();
    out.absorb(suites::d_incarnations(&c.a3, &c.a3_all));
    out.absorb(suites::d_incarnations(&c.b3, &c.b3_all));
    out.absorb(suites::d_incarnations(&c.affine, &c.affine_all));
    out.absorb(suites::d_routes(&c.a3, &c.a3_all));
    out.absorb(suites::d_routes(&c.b3, &c.b3_all));
    out.absorb(suites::d_routes(&c.affine, &c.affine_all));
    out
}

fn criterion_8(c: &Corpus) -> Outcome {
    let mut out = Outcome::new();
    let short: Vec<_> = c.a3_all.iter().filter(|p| length(p) <= 5).cloned().collect();
    out.absorb(suites::g_variants(&c.a3, &short));
    out
}

fn criterion_9(c: &Corpus) -> Outcome {
    let mut out = Outcome::new();
    out.absorb(suites::closure_laws(&c.a3, &c.a3_all, 200));
    out.absorb(suites::closure_laws(&c.b3, &c.b3_all, 200));
    out.absorb(suites::closure_laws(&c.affine, &c.affine_all, 200));
    out.absorb(suites::order_axiom(&c.a3, 6));
    out.absorb(suites::order_axiom(&c.b3, 6));
    out.absorb(suites::longest_paths(&c.a3, &c.a3_all));
    out.absorb(suites::longest_paths(&c.b3, &c.b3_all));
    out.absorb(suites::longest_paths(&c.affine, &c.affine_all));
    // weak closure never exceeds strict closure on the maximal-chain seed
    for (ctx, pairs) in [(&c.a3, &c.a3_all), (&c.affine, &c.affine_all)] {
        for (u, v) in pairs.iter() {
            let dg = DiamondGraph::from_interval(Interval::new(&ctx.sys, u, v).unwrap()).unwrap();
            if let Some(chain) = dg.interval().maximal_chains().next() {
                let seed: EdgeSet = dg.chain_edges(&chain);
                let weak = dg.closure(&seed, Mode::Weak);
                out.check(weak.is_subset(&dg.closure(&seed, Mode::Strict)), || {
                    format!("{} [{u}, {v}]: weak closure exceeds strict", ctx.name)
                });
            }
        }
    }
    out
}

fn report(id: &str, title: &str, start: Instant, outcome: &Outcome) -> bool {
    let ok = outcome.failures.is_empty();
    println!(
        "criterion {id}: {} - {title} ({} checks, {:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        outcome.checks,
        start.elapsed().as_secs_f64()
    );
    for f in &outcome.failures {
        println!("    {f}");
    }
    ok
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    if filter.iter().any(|f| !"acceptance".contains(f.as_str())) {
        return ExitCode::SUCCESS;
    }

    let mut ok = true;
    let start = Instant::now();
    ok &= report("1", "d_{e,v} = 3 and d_{s2,v} = 4 in S4 by both routes", start, &criterion_1());

    let a3 = SystemCtx::builtin("A3", None).unwrap();
    let b3 = SystemCtx::builtin("B3", None).unwrap();
    let affine = SystemCtx::builtin("A1~", Some(8)).unwrap();
    let corpus = Corpus {
        a3_all: a3.intervals(None),
        b3_all: b3.intervals(None),
        b3_upto6: b3.intervals(Some(6)),
        affine_all: affine.intervals(None),
        a3,
        b3,
        affine,
    };

    let start = Instant::now();
    ok &= report("2", "d = |F| = g on A3 and B3 (l <= 6); no smaller generating set for l <= 4", start, &criterion_2(&corpus));
    let start = Instant::now();
    ok &= report("3", "increasing paths sum to R~ on A3 under 5 orders", start, &criterion_3(&corpus));
    let start = Instant::now();
    ok &= report("4", "divergence count and monotone d under Deodhar orders; non-Deodhar counterexample", start, &criterion_4(&corpus));
    let start = Instant::now();
    let (five, six) = criteria_5_6(&corpus);
    ok &= report("5", "isomorphic intervals of length <= 6 share P, R, R~", start, &five);
    ok &= report("6", "isomorphic intervals share the four coefficients", start, &six);
    let start = Instant::now();
    ok &= report("7", "coefficient identities (a)-(d) for d", start, &criterion_7(&corpus));
    let start = Instant::now();
    ok &= report("8", "g = g' = g'' = d on S4 intervals of length <= 5", start, &criterion_8(&corpus));
    let start = Instant::now();
    ok &= report("9", "closure laws, order axiom, unique longest paths", start, &criterion_9(&corpus));

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
