//! Property tests: transform inverses, basis-change round trips, field
//! axioms, and the cross-solver equivalence invariant.

mod common;

use common::{corrupted_instance, random_pattern};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rsfd_core::codec::{corrupt, CodeParams, Codeword};
use rsfd_core::gf::FieldCtx;
use rsfd_core::solvers::{self, SolveMode};
use rsfd_core::{Gf, LchPoly, MonoPoly, OpCounter, RsContext, XbarCtx};

fn arb_gf() -> impl Strategy<Value = Gf> {
    (0u16..256).prop_map(Gf)
}

proptest! {
    #[test]
    fn fft_ifft_roundtrip(
        k in 0usize..=6,
        seed in any::<u64>(),
        beta_idx in 0usize..256,
    ) {
        let xctx = XbarCtx::new(FieldCtx::gf256());
        let mut rng = StdRng::seed_from_u64(seed);
        let coeffs: Vec<Gf> = (0..1usize << k).map(|_| Gf(rng.gen_range(0..256))).collect();
        let poly = LchPoly(coeffs);
        let beta = xctx.field().omega(beta_idx).unwrap();
        let mut ctr = OpCounter::new();
        let evals = xctx.fft(&poly, k, beta, &mut ctr).unwrap();
        let back = xctx.ifft(&evals, k, beta, &mut ctr).unwrap();
        prop_assert_eq!(back, poly);
    }

    #[test]
    fn mono_lch_roundtrip(coeffs in proptest::collection::vec(arb_gf(), 1..=32)) {
        let xctx = XbarCtx::new(FieldCtx::gf256());
        let mats = xctx.basis_matrices(32);
        let mut ctr = OpCounter::new();
        let p = MonoPoly(coeffs);
        let lch = xctx.mono_to_lch(&mats, &p, &mut ctr).unwrap();
        let back = xctx.lch_to_mono(&mats, &lch, &mut ctr).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn field_distributes_and_associates(a in arb_gf(), b in arb_gf(), c in arb_gf()) {
        let f = FieldCtx::gf256();
        let mut ctr = OpCounter::new();
        let left = f.mul(f.mul(a, b, &mut ctr), c, &mut ctr);
        let right = f.mul(a, f.mul(b, c, &mut ctr), &mut ctr);
        prop_assert_eq!(left, right);
        let left = f.mul(a, b ^ c, &mut ctr);
        let right = f.mul(a, b, &mut ctr) ^ f.mul(a, c, &mut ctr);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn subspace_is_linear(j in 0usize..=8, a in arb_gf(), b in arb_gf()) {
        let f = FieldCtx::gf256();
        let mut ctr = OpCounter::new();
        let lhs = f.subspace_eval(j, a ^ b, &mut ctr);
        let rhs = f.subspace_eval(j, a, &mut ctr) ^ f.subspace_eval(j, b, &mut ctr);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn encode_then_decode_is_identity(seed in any::<u64>(), e in 0usize..=4) {
        // small but full-pipeline round trip on the toy code
        let ctx = RsContext::new(CodeParams::new(4, 3).unwrap()).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let mut ctr = OpCounter::new();
        let data: Vec<Gf> = (0..8).map(|_| Gf(rng.gen_range(0..16))).collect();
        let cw = ctx.encode(&data, &mut ctr).unwrap();
        let received = if e == 0 {
            cw.symbols.clone()
        } else {
            let pat = random_pattern(&mut rng, ctx.params(), e);
            corrupt(ctx.params(), &cw, &pat, false).unwrap()
        };
        let r1 = ctx.decode_first(&received).unwrap();
        let r2 = ctx.decode_second(&received).unwrap();
        prop_assert_eq!(&r1.codeword, &cw.symbols);
        prop_assert_eq!(&r2.codeword, &cw.symbols);
    }
}

/// Root sets of every solver agree with each other and with the injected
/// pattern: the reference solver in all three termination modes, and the
/// zero positions of the frequency-domain evaluations extended over the
/// whole domain.
#[test]
fn solver_equivalence_500_patterns_per_set() {
    for (ctx, seed) in [
        (RsContext::new(CodeParams::rs256_224()).unwrap(), 501u64),
        (RsContext::new(CodeParams::rs128_96()).unwrap(), 502u64),
    ] {
        let params = ctx.params().clone();
        let f = ctx.field();
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..500 {
            let e = rng.gen_range(1..=params.t);
            let zero = Codeword { symbols: vec![Gf::ZERO; params.n] };
            let pat = random_pattern(&mut rng, &params, e);
            let received = corrupt(&params, &zero, &pat, false).unwrap();
            let mut ctr = OpCounter::new();
            let synd = ctx.syndrome_bundle(&received, &mut ctr).unwrap().s_evals;
            let expected: Vec<usize> = pat.entries.iter().map(|&(i, _)| i).collect();

            for mode in [SolveMode::Full2t, SolveMode::TPlusE, SolveMode::TwoE] {
                let out = solvers::ma_solve(f, params.t, &synd, mode, &mut ctr).unwrap();
                let roots: Vec<usize> = (0..params.n)
                    .filter(|&i| {
                        out.lambda.eval(f, f.omega(i).unwrap(), &mut ctr).is_zero()
                    })
                    .collect();
                assert_eq!(roots, expected, "mode {mode:?}");
            }

            // interpolate the frequency-domain solver's locator and collect
            // its zero set over the whole domain via direct evaluation
            let out = solvers::ifdma_solve(f, params.t, &synd, &mut ctr).unwrap();
            let lam_lch = ctx
                .xbar()
                .extended_ifft(&out.evals, params.mu as usize - 1, Gf::ZERO, &mut ctr)
                .unwrap();
            let zeros: Vec<usize> = (0..params.n)
                .filter(|&i| {
                    ctx.xbar()
                        .eval_lch_at(&lam_lch.0, f.omega(i).unwrap(), &mut ctr)
                        .is_zero()
                })
                .collect();
            assert_eq!(zeros, expected, "frequency-domain zero set");
        }
    }
}

/// The standing assumption that errors sit at positions >= 2t is load
/// bearing: corrupting a parity-region position (with the unsafe override)
/// must never be silently mis-decoded into the original codeword.
#[test]
fn low_position_corruption_is_not_silently_accepted() {
    let ctx = RsContext::new(CodeParams::rs256_224()).unwrap();
    let params = ctx.params().clone();
    let mut rng = StdRng::seed_from_u64(503);
    let mut ctr = OpCounter::new();
    let mut outcomes = (0usize, 0usize); // (rejected, decoded-to-other)
    for _ in 0..50 {
        let data: Vec<Gf> = (0..params.k).map(|_| Gf(rng.gen_range(0..256))).collect();
        let cw = ctx.encode(&data, &mut ctr).unwrap();
        let pat = rsfd_core::codec::ErrorPattern::new(
            vec![(rng.gen_range(0..2 * params.t), Gf(rng.gen_range(1..256)))],
            params.n,
        )
        .unwrap();
        let received = corrupt(&params, &cw, &pat, true).unwrap();
        match ctx.decode_first(&received) {
            Err(_) => outcomes.0 += 1,
            Ok(res) => {
                // a decode may land on some codeword, but never by treating
                // the low position as the error location
                assert!(res
                    .error_pattern
                    .entries
                    .iter()
                    .all(|&(i, _)| i >= 2 * params.t));
                outcomes.1 += 1;
            }
        }
    }
    assert!(outcomes.0 > 0, "expected at least some rejections, got {outcomes:?}");
}

/// Decode counters depend only on (params, e), never on error values or
/// positions, for the first pipeline.
#[test]
fn first_decode_count_determinism() {
    let ctx = RsContext::new(CodeParams::rs256_224()).unwrap();
    let mut rng = StdRng::seed_from_u64(504);
    for e in [1usize, 5, 11] {
        let mut seen = None;
        for _ in 0..5 {
            let (_, _, received) = corrupted_instance(&ctx, &mut rng, e);
            let res = ctx.decode_first(&received).unwrap();
            match &seen {
                None => seen = Some(res.counters),
                Some(prev) => assert_eq!(*prev, res.counters, "e={e}"),
            }
        }
    }
}
