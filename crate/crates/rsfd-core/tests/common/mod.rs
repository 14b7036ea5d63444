//! Shared helpers for the integration suites.

use rand::rngs::StdRng;
use rand::Rng;

use rsfd_core::codec::{corrupt, CodeParams, Codeword, ErrorPattern};
use rsfd_core::{Gf, OpCounter, RsContext};

pub fn random_data(rng: &mut StdRng, len: usize, field_size: usize) -> Vec<Gf> {
    (0..len).map(|_| Gf(rng.gen_range(0..field_size) as u16)).collect()
}

/// Distinct positions in [2t, n) with nonzero values.
pub fn random_pattern(rng: &mut StdRng, params: &CodeParams, e: usize) -> ErrorPattern {
    let mut entries: Vec<(usize, Gf)> = Vec::with_capacity(e);
    while entries.len() < e {
        let idx = rng.gen_range(2 * params.t..params.n);
        if entries.iter().any(|&(i, _)| i == idx) {
            continue;
        }
        entries.push((idx, Gf(rng.gen_range(1..params.n) as u16)));
    }
    ErrorPattern::new(entries, params.n).unwrap()
}

/// A random codeword together with an e-error corruption of it.
pub fn corrupted_instance(
    ctx: &RsContext,
    rng: &mut StdRng,
    e: usize,
) -> (Codeword, ErrorPattern, Vec<Gf>) {
    let params = ctx.params();
    let mut ctr = OpCounter::new();
    let data = random_data(rng, params.data_len(), params.n);
    let cw = ctx.encode(&data, &mut ctr).unwrap();
    let pat = random_pattern(rng, params, e);
    let received = corrupt(params, &cw, &pat, false).unwrap();
    (cw, pat, received)
}

/// Corruption of the zero codeword, syndromes only.
pub fn syndromes_for_pattern(ctx: &RsContext, rng: &mut StdRng, e: usize) -> Vec<Gf> {
    let params = ctx.params();
    let zero = Codeword { symbols: vec![Gf::ZERO; params.n] };
    let pat = random_pattern(rng, params, e);
    let received = corrupt(params, &zero, &pat, false).unwrap();
    let mut ctr = OpCounter::new();
    ctx.syndrome_bundle(&received, &mut ctr).unwrap().s_evals
}
