use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;

use bruhat_kl::corpus::SystemCtx;
use bruhat_kl::diamond::{DiamondGraph, EdgeSet, Mode};
use bruhat_kl::{Element, Interval, IntPoly, Side};

fn b3() -> &'static SystemCtx {
    static CTX: OnceLock<SystemCtx> = OnceLock::new();
    CTX.get_or_init(|| SystemCtx::builtin("B3", None).unwrap())
}

fn below_by_subwords(ctx: &SystemCtx, v: &Element) -> HashSet<Element> {
    let word = v.word();
    (0u32..1 << word.len())
        .map(|mask| {
            word.iter().enumerate().fold(ctx.sys.identity(), |x, (i, &s)| {
                if mask & (1 << i) != 0 {
                    ctx.sys.mul_gen(&x, s, Side::Right)
                } else {
                    x
                }
            })
        })
        .collect()
}

fn pair(ctx: &SystemCtx, i: usize, j: usize) -> Option<(Element, Element)> {
    let (u, v) = (&ctx.elements[i % ctx.elements.len()], &ctx.elements[j % ctx.elements.len()]);
    ctx.sys.bruhat_leq(u, v).then(|| (u.clone(), v.clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bruhat_order_is_the_subword_order(i in 0usize..48, j in 0usize..48) {
        let ctx = b3();
        let (u, v) = (&ctx.elements[i], &ctx.elements[j]);
        prop_assert_eq!(ctx.sys.bruhat_leq(u, v), below_by_subwords(ctx, v).contains(u));
    }

    #[test]
    fn multiplication_respects_lengths(i in 0usize..48, j in 0usize..48) {
        let ctx = b3();
        let (a, b) = (&ctx.elements[i], &ctx.elements[j]);
        let ab = ctx.sys.mul(a, b);
        prop_assert!(ab.length() <= a.length() + b.length());
        prop_assert_eq!(ab.length() % 2, (a.length() + b.length()) % 2);
        prop_assert_eq!(ctx.sys.inverse(a).length(), a.length());
        prop_assert!(ctx.sys.mul(a, &ctx.sys.inverse(a)).is_identity());
    }

    #[test]
    fn polynomial_shapes(i in 0usize..48, j in 0usize..48) {
        let ctx = b3();
        let Some((u, v)) = pair(ctx, i, j) else { return Ok(()) };
        let l = v.length() - u.length();
        let r = ctx.engine.r_poly(&u, &v);
        // q^l R(1/q) = (-1)^l R(q)
        let sign = BigInt::from(if l % 2 == 0 { 1 } else { -1 });
        prop_assert_eq!(r.reverse(l), r.scale(&sign));
        let rt = ctx.engine.rtilde_poly(&u, &v).unwrap();
        prop_assert!(rt.is_monic() && rt.has_nonnegative_coeffs());
        prop_assert_eq!(rt.degree(), Some(l));
        prop_assert!(rt.support().all(|k| k % 2 == l % 2));
        let p = ctx.engine.kl_poly(&u, &v).unwrap();
        prop_assert_eq!(p.coeff(0), BigInt::from(1));
        if l > 0 {
            prop_assert!(2 * p.degree().unwrap() < l);
        }
        prop_assert!(p.has_nonnegative_coeffs());
    }

    #[test]
    fn inversion_preserves_polynomials(i in 0usize..48, j in 0usize..48) {
        let ctx = b3();
        let Some((u, v)) = pair(ctx, i, j) else { return Ok(()) };
        let (ui, vi) = (ctx.sys.inverse(&u), ctx.sys.inverse(&v));
        prop_assert_eq!(ctx.engine.r_poly(&u, &v), ctx.engine.r_poly(&ui, &vi));
        prop_assert_eq!(ctx.engine.kl_poly(&u, &v).unwrap(), ctx.engine.kl_poly(&ui, &vi).unwrap());
    }

    #[test]
    fn d_routes_agree(i in 0usize..48, j in 0usize..48) {
        let ctx = b3();
        let Some((u, v)) = pair(ctx, i, j) else { return Ok(()) };
        prop_assert_eq!(ctx.engine.d_invariant(&u, &v), ctx.engine.d_via_recurrence(&u, &v));
        prop_assert!(ctx.engine.d_incarnations_report(&u, &v).unwrap().all_hold());
    }

    #[test]
    fn closure_is_a_closure_operator(
        i in 0usize..48,
        j in 0usize..48,
        picks in proptest::collection::vec(any::<u16>(), 0..12),
        extra in proptest::collection::vec(any::<u16>(), 0..6),
        weak in any::<bool>(),
    ) {
        let ctx = b3();
        let Some((u, v)) = pair(ctx, i, j) else { return Ok(()) };
        let dg = DiamondGraph::from_interval(Interval::new(&ctx.sys, &u, &v).unwrap()).unwrap();
        let m = dg.edge_count();
        if m == 0 {
            return Ok(());
        }
        let mode = if weak { Mode::Weak } else { Mode::Strict };
        let f = EdgeSet::from_indices(m, picks.iter().map(|&k| k as usize % m));
        let g = f.union(&EdgeSet::from_indices(m, extra.iter().map(|&k| k as usize % m)));
        let cf = dg.closure(&f, mode);
        prop_assert!(f.is_subset(&cf));
        prop_assert_eq!(&dg.closure(&cf, mode), &cf);
        prop_assert!(cf.is_subset(&dg.closure(&g, mode)));
        prop_assert!(dg.closure(&f, Mode::Weak).is_subset(&dg.closure(&f, Mode::Strict)));
    }
}

#[test]
fn trivial_polynomials() {
    let ctx = b3();
    let s = ctx.parse("2").unwrap();
    let e = ctx.sys.identity();
    assert_eq!(ctx.engine.r_poly(&e, &s), IntPoly::from_i64s(&[-1, 1]));
    assert_eq!(ctx.engine.rtilde_poly(&e, &s).unwrap(), IntPoly::q());
    assert_eq!(ctx.engine.kl_poly(&e, &s).unwrap(), IntPoly::one());
}
