//! The `selftest` command: exhaustive sweep of the (16, 8) toy code plus
//! spot checks of the solver invariants, printing one line per check.

use rand_core::{RngCore, SeedableRng};

use rsfd_core::codec::{corrupt, CodeParams, ErrorPattern};
use rsfd_core::solvers::{self, SiOutcome};
use rsfd_core::{Gf, LchPoly, OpCounter, RsContext};

type Check = Result<String, String>;

pub fn run() -> Result<(), String> {
    let checks: [(&str, fn() -> Check); 5] = [
        ("toy-code exhaustive sweep", toy_sweep),
        ("transform round trips", transforms),
        ("solver count formulas", count_formulas),
        ("error-count probe", probe),
        ("locator synthesis bound", esbm_bound),
    ];
    let mut failed = false;
    for (name, check) in checks {
        match check() {
            Ok(detail) => println!("ok   {name}: {detail}"),
            Err(msg) => {
                println!("FAIL {name}: {msg}");
                failed = true;
            }
        }
    }
    if failed {
        Err("selftest failed".into())
    } else {
        Ok(())
    }
}

fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

fn toy_sweep() -> Check {
    let ctx = RsContext::new(CodeParams::new(4, 3).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let params = ctx.params().clone();
    let mut rng = rng(1);
    let mut ctr = OpCounter::new();
    let mut cases = 0usize;
    for mask in 0u32..256 {
        let e = mask.count_ones() as usize;
        if e > params.t {
            continue;
        }
        let data: Vec<Gf> = (0..params.k).map(|_| Gf((rng.next_u32() % 16) as u16)).collect();
        let cw = ctx.encode(&data, &mut ctr).map_err(|e| e.to_string())?;
        let entries: Vec<(usize, Gf)> = (0..8)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (8 + b as usize, Gf((1 + rng.next_u32() % 15) as u16)))
            .collect();
        let pat = ErrorPattern::new(entries, params.n).map_err(|e| e.to_string())?;
        let received = corrupt(&params, &cw, &pat, false).map_err(|e| e.to_string())?;
        for (which, res) in [
            ("first", ctx.decode_first(&received)),
            ("second", ctx.decode_second(&received)),
        ] {
            let res = res.map_err(|e| format!("mask {mask:#04x} {which}: {e}"))?;
            if res.codeword != cw.symbols {
                return Err(format!("mask {mask:#04x} {which}: wrong codeword"));
            }
        }
        cases += 1;
    }
    Ok(format!("{cases} patterns, both decoders"))
}

fn transforms() -> Check {
    let ctx = RsContext::new(CodeParams::rs256_224()).map_err(|e| e.to_string())?;
    let x = ctx.xbar();
    let f = ctx.field();
    let mut rng = rng(2);
    let mut ctr = OpCounter::new();
    let mut cases = 0usize;
    for k in 0..=6usize {
        for _ in 0..25 {
            let poly =
                LchPoly((0..1usize << k).map(|_| Gf((rng.next_u32() % 256) as u16)).collect());
            let beta = f.omega((rng.next_u32() % 256) as usize).unwrap();
            let evals = x.fft(&poly, k, beta, &mut ctr).map_err(|e| e.to_string())?;
            let back = x.ifft(&evals, k, beta, &mut ctr).map_err(|e| e.to_string())?;
            if back != poly {
                return Err(format!("round trip failed at k={k}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} forward/inverse pairs"))
}

fn count_formulas() -> Check {
    for params in [CodeParams::rs256_224(), CodeParams::rs128_96()] {
        let label = format!("({}, {})", params.n, params.k);
        let ctx = RsContext::new(params).map_err(|e| e.to_string())?;
        let t = ctx.params().t;
        for e in [1usize, t / 2, t] {
            let synd = probe_syndromes(&ctx, e)?;
            let mut ctr = OpCounter::new();
            solvers::ifdma_solve(ctx.field(), t, &synd, &mut ctr).map_err(|e| e.to_string())?;
            let (te, tt) = (e as u64, t as u64);
            if ctr.mul != 18 * te * tt - 6 * te * te + 3 * te
                || ctr.add != 12 * te * tt - 4 * te * te + 2 * te
            {
                return Err(format!("{label} e={e}: counts off the closed form"));
            }
        }
    }
    Ok("18et-6e^2+3e and 12et-4e^2+2e hold at both parameter sets".into())
}

fn probe() -> Check {
    let ctx = RsContext::new(CodeParams::rs256_224()).map_err(|e| e.to_string())?;
    let mut ctr = OpCounter::new();
    let synd = probe_syndromes(&ctx, 5)?;
    match solvers::si_fdma(ctx.field(), 16, &synd, &mut ctr).map_err(|e| e.to_string())? {
        SiOutcome::Count { errors: 5, steps: 10 } => {}
        _ => return Err("expected a 10-step decision for 5 errors".into()),
    }
    let synd = probe_syndromes(&ctx, 12)?;
    match solvers::si_fdma(ctx.field(), 16, &synd, &mut ctr).map_err(|e| e.to_string())? {
        SiOutcome::Exhausted(_) => {}
        _ => return Err("expected no decision for 12 errors".into()),
    }
    Ok("decides 2e < t0+1, stays silent beyond".into())
}

fn esbm_bound() -> Check {
    let ctx = RsContext::new(CodeParams::rs256_224()).map_err(|e| e.to_string())?;
    let mut ctr = OpCounter::new();
    for e in 1..=8usize {
        let synd = probe_syndromes(&ctx, e)?;
        let power = ctx.power_syndromes(&synd, 2 * e, &mut ctr).map_err(|e| e.to_string())?;
        let mut c = OpCounter::new();
        solvers::s_esbm(ctx.field(), e, &power, &mut c).map_err(|e| e.to_string())?;
        if c.mul > (2 * e * e - 1) as u64 {
            return Err(format!("e={e}: {} multiplications exceed 2e^2-1", c.mul));
        }
    }
    Ok("2e^2 - 1 respected for e = 1..=8".into())
}

fn probe_syndromes(ctx: &RsContext, e: usize) -> Result<Vec<Gf>, String> {
    let params = ctx.params();
    let mut rng = rng(3 + e as u64);
    let mut entries: Vec<(usize, Gf)> = Vec::new();
    while entries.len() < e {
        let idx = 2 * params.t + (rng.next_u32() as usize) % (params.n - 2 * params.t);
        if entries.iter().any(|&(i, _)| i == idx) {
            continue;
        }
        entries.push((idx, Gf((1 + rng.next_u32() as usize % (params.n - 1)) as u16)));
    }
    let pat = ErrorPattern::new(entries, params.n).map_err(|e| e.to_string())?;
    let zero = rsfd_core::Codeword { symbols: vec![Gf::ZERO; params.n] };
    let received = corrupt(params, &zero, &pat, false).map_err(|e| e.to_string())?;
    let mut ctr = OpCounter::new();
    Ok(ctx.syndrome_bundle(&received, &mut ctr).map_err(|e| e.to_string())?.s_evals)
}
