//! The two end-to-end decoding pipelines and their shared primitives.
//!
//! Pipeline one: interpolation syndromes -> frequency-domain solver ->
//! extended inverse transform for the locator and evaluator -> blocked
//! root search -> error values.
//!
//! Pipeline two: interpolation syndromes -> error-count probe -> power
//! syndromes -> shortened Berlekamp-Massey for the reciprocal-root locator
//! -> blocked root search at the smallest covering transform size ->
//! error values. When the probe cannot decide (2e > t0 + 1) the pipeline
//! falls back to the first tail, reusing the probe's triangle so the total
//! cost equals a fresh first-pipeline run.

use alloc::vec;
use alloc::vec::Vec;

use crate::codec::{self, CodeParams, Codeword, ErrorPattern, ShortenedSolver};
use crate::error::{Error, Result};
use crate::gf::{invert_matrix, FieldCtx, Gf, OpCounter};
use crate::lch::{BasisMatrices, LchPoly, MonoPoly, XbarCtx};
use crate::solvers::{self, IfdmaOutcome, SiOutcome};

/// Default irreducible reduction polynomials per extension degree.
const DEFAULT_POLYS: [u32; 17] = [
    0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// Which pipeline produced a decode result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeAlgorithm {
    First,
    Second,
    SecondFellBackToFirst,
}

/// A successful repair: the codeword, the error pattern that was removed,
/// and the field-operation tally of the whole decode.
#[derive(Debug, Clone)]
pub struct DecodeResult {
    pub codeword: Vec<Gf>,
    pub error_pattern: ErrorPattern,
    pub algorithm: DecodeAlgorithm,
    pub counters: OpCounter,
    /// Iterations spent in the key-equation solver (2e on the main paths).
    pub solver_steps: usize,
}

/// Interpolation-style syndromes: the syndrome polynomial under the LCH
/// basis and its evaluations at omega_0..omega_{2t-1}.
#[derive(Debug, Clone)]
pub struct SyndromeBundle {
    pub s_lch: LchPoly,
    pub s_evals: Vec<Gf>,
}

impl SyndromeBundle {
    pub fn is_zero(&self) -> bool {
        self.s_evals.iter().all(|v| v.is_zero())
    }
}

/// Everything needed to encode and decode one code: the field, the LCH
/// tables, the change-of-basis matrices up to size t+1, and the fixed
/// linear map taking interpolation syndromes to power syndromes.
pub struct RsContext {
    params: CodeParams,
    xbar: XbarCtx,
    mats: BasisMatrices,
    /// powsyn[i] . s_evals = S_i; both syndrome families span the dual
    /// code, so the change of view is one fixed (2t x 2t) matrix.
    powsyn: Vec<Vec<Gf>>,
    shortened: Option<ShortenedSolver>,
}

impl RsContext {
    /// Build a context with the default reduction polynomial for the
    /// parameter's extension degree.
    pub fn new(params: CodeParams) -> Result<RsContext> {
        let field = FieldCtx::new(params.m, DEFAULT_POLYS[params.m as usize])?;
        Self::with_field(params, field)
    }

    pub fn with_field(params: CodeParams, field: FieldCtx) -> Result<RsContext> {
        if field.m() != params.m {
            return Err(Error::MalformedInput("field degree disagrees with parameters"));
        }
        let xbar = XbarCtx::new(field);
        let mats = xbar.basis_matrices(params.t + 1);

        // Power-syndrome view: unit words at positions 0..2t-1 have
        // linearly independent interpolation syndromes (no codeword has
        // weight <= 2t), so expressing each Vandermonde row in that basis
        // pins down the whole map.
        let f = xbar.field();
        let two_t = params.t_cap;
        let mut scratch = OpCounter::new();
        let mut a = vec![vec![Gf::ZERO; two_t]; two_t];
        for j in 0..two_t {
            let mut unit = vec![Gf::ZERO; params.n];
            unit[j] = Gf::ONE;
            let bundle = syndrome_bundle_raw(&xbar, &params, &unit, &mut scratch)?;
            for i in 0..two_t {
                a[i][j] = bundle.s_evals[i];
            }
        }
        let a_inv = invert_matrix(f, a)?;
        let mut b = vec![vec![Gf::ZERO; two_t]; two_t];
        for (j, row) in (0..two_t).map(|j| f.om(j)).enumerate() {
            let mut pw = Gf::ONE;
            for i in 0..two_t {
                b[i][j] = pw;
                pw = f.mul_nocount(pw, row);
            }
        }
        let mut powsyn = vec![vec![Gf::ZERO; two_t]; two_t];
        for i in 0..two_t {
            for j in 0..two_t {
                let mut acc = Gf::ZERO;
                for l in 0..two_t {
                    acc = acc ^ f.mul_nocount(b[i][l], a_inv[l][j]);
                }
                powsyn[i][j] = acc;
            }
        }

        let shortened = match params.shortened {
            Some(_) => Some(ShortenedSolver::new(&xbar, &params)?),
            None => None,
        };
        Ok(RsContext { params, xbar, mats, powsyn, shortened })
    }

    #[inline]
    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    #[inline]
    pub fn field(&self) -> &FieldCtx {
        self.xbar.field()
    }

    #[inline]
    pub fn xbar(&self) -> &XbarCtx {
        &self.xbar
    }

    pub fn encode(&self, data: &[Gf], ctr: &mut OpCounter) -> Result<Codeword> {
        match &self.shortened {
            Some(solver) => solver.encode(&self.xbar, &self.params, data, ctr),
            None => codec::encode_systematic(&self.xbar, &self.params, data, ctr),
        }
    }

    /// Syndrome polynomial and its 2t evaluations.
    pub fn syndrome_bundle(&self, received: &[Gf], ctr: &mut OpCounter) -> Result<SyndromeBundle> {
        syndrome_bundle_raw(&self.xbar, &self.params, received, ctr)
    }

    /// Power syndromes S_0..S_{count-1} from the interpolation syndromes,
    /// via the precomputed dual-basis change.
    pub fn power_syndromes(
        &self,
        s_evals: &[Gf],
        count: usize,
        ctr: &mut OpCounter,
    ) -> Result<Vec<Gf>> {
        let two_t = self.params.t_cap;
        if count > two_t {
            return Err(Error::CountOutOfRange { count, limit: two_t });
        }
        if s_evals.len() != two_t {
            return Err(Error::LengthMismatch { expected: two_t, got: s_evals.len() });
        }
        let f = self.field();
        let mut out = Vec::with_capacity(count);
        for row in self.powsyn.iter().take(count) {
            let mut acc = Gf::ZERO;
            for (&mc, &sv) in row.iter().zip(s_evals.iter()) {
                acc = f.add(acc, f.mul(mc, sv, ctr), ctr);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Direct power syndromes straight from the received word. This is the
    /// independent route kept for cross-checking [`Self::power_syndromes`];
    /// it costs (count-1) multiplications per word position.
    pub fn power_syndromes_direct(
        &self,
        received: &[Gf],
        count: usize,
        ctr: &mut OpCounter,
    ) -> Result<Vec<Gf>> {
        if count > self.params.t_cap {
            return Err(Error::CountOutOfRange { count, limit: self.params.t_cap });
        }
        if received.len() != self.params.n {
            return Err(Error::LengthMismatch { expected: self.params.n, got: received.len() });
        }
        Ok(codec::vandermonde_sums(self.field(), received, count, ctr))
    }

    /// Evaluate an LCH polynomial over the whole domain in blocks of
    /// 2^block_log and return every index where it vanishes.
    pub fn chien_block_search(
        &self,
        poly: &LchPoly,
        block_log: usize,
        ctr: &mut OpCounter,
    ) -> Result<Vec<usize>> {
        let bs = 1usize << block_log;
        if poly.0.len() > bs {
            return Err(Error::LengthMismatch { expected: bs, got: poly.0.len() });
        }
        let f = self.field();
        let padded = poly.padded(bs);
        let mut roots = Vec::new();
        let mut buf = vec![Gf::ZERO; bs];
        for blk in 0..(self.params.n / bs) {
            buf.copy_from_slice(&padded);
            self.xbar.fft_into(&mut buf, block_log, f.om(blk * bs), ctr);
            for (off, v) in buf.iter().enumerate() {
                if v.is_zero() {
                    roots.push(blk * bs + off);
                }
            }
        }
        Ok(roots)
    }

    /// Error values by the evaluator/derivative quotient
    /// `z(w_l) / (s_mu(w_l) * lambda'(w_l))` at each error location. Both a
    /// common scalar on (z, lambda) and the derivative's scalar cancel.
    pub fn forney_values(
        &self,
        z_lch: &[Gf],
        lambda_mono: &MonoPoly,
        roots: &[usize],
        ctr: &mut OpCounter,
    ) -> Result<Vec<Gf>> {
        if roots.is_empty() {
            return Err(Error::MalformedInput("no error locations"));
        }
        let f = self.field();
        let deriv = lambda_mono.derivative();
        let mu = self.params.mu as usize;
        let mut out = Vec::with_capacity(roots.len());
        for &idx in roots {
            let pt = f.om(idx);
            let num = self.xbar.eval_lch_at(z_lch, pt, ctr);
            let den = f.mul(
                f.subspace_eval(mu, pt, ctr),
                deriv.eval(f, pt, ctr),
                ctr,
            );
            if den.is_zero() {
                return Err(Error::ZeroDenominator { index: idx });
            }
            let dinv = f.inv(den, ctr)?;
            out.push(f.mul(num, dinv, ctr));
        }
        Ok(out)
    }

    /// First decoding pipeline.
    pub fn decode_first(&self, received: &[Gf]) -> Result<DecodeResult> {
        let mut ctr = OpCounter::new();
        let bundle = self.syndrome_bundle(received, &mut ctr)?;
        if bundle.is_zero() {
            return Ok(self.clean_result(received, DecodeAlgorithm::First, ctr));
        }
        let sol = solvers::ifdma_solve(self.field(), self.params.t, &bundle.s_evals, &mut ctr)?;
        self.first_tail(received, &bundle, sol, DecodeAlgorithm::First, ctr)
    }

    /// Second decoding pipeline: probe the error count first, then build
    /// the locator from power syndromes. Falls back to the first tail when
    /// the probe is inconclusive.
    pub fn decode_second(&self, received: &[Gf]) -> Result<DecodeResult> {
        let mut ctr = OpCounter::new();
        let bundle = self.syndrome_bundle(received, &mut ctr)?;
        if bundle.is_zero() {
            return Ok(self.clean_result(received, DecodeAlgorithm::Second, ctr));
        }
        let t0 = self.params.t0;
        let probe = solvers::si_fdma(self.field(), t0, &bundle.s_evals, &mut ctr)?;
        let (e, steps) = match probe {
            SiOutcome::Exhausted(triangle) => {
                let sol = solvers::ifdma_resume(
                    self.field(),
                    self.params.t,
                    &bundle.s_evals,
                    &triangle,
                    &mut ctr,
                )?;
                return self.first_tail(
                    received,
                    &bundle,
                    sol,
                    DecodeAlgorithm::SecondFellBackToFirst,
                    ctr,
                );
            }
            SiOutcome::Count { errors, steps } => (errors, steps),
        };
        if e == 0 {
            // nonzero syndromes cannot come from zero errors
            return Err(Error::Undecodable { stage: "error-count probe" });
        }

        let f = self.field();
        let power = self.power_syndromes(&bundle.s_evals, 2 * e, &mut ctr)?;
        let sigma = solvers::s_esbm(f, e, &power, &mut ctr)?;
        let sigma_lch = self.xbar.mono_to_lch(&self.mats, &sigma, &mut ctr)?;

        // smallest transform size covering the locator
        let s_log = usize::BITS as usize - e.leading_zeros() as usize;
        let big_r = 1usize << s_log;
        let sigma_roots = self.chien_block_search(&sigma_lch, s_log, &mut ctr)?;
        if sigma_roots.len() != e {
            return Err(Error::InconsistentCount { expected: e, found: sigma_roots.len() });
        }
        // sigma's roots are the reciprocals of the error-position elements
        let mut positions = Vec::with_capacity(e);
        for idx in sigma_roots {
            let root = f.om(idx);
            let loc = f.inv(root, &mut ctr)?;
            positions.push(f.omega_index(loc));
        }
        positions.sort_unstable();

        let mut lambda = MonoPoly(vec![Gf::ONE]);
        for &pos in &positions {
            lambda.mul_monic_linear(f, f.om(pos), &mut ctr);
        }
        let lambda_lch = self.xbar.mono_to_lch(&self.mats, &lambda, &mut ctr)?;
        let lam_evals =
            self.xbar.fft(&LchPoly(lambda_lch.padded(big_r)), s_log, Gf::ZERO, &mut ctr)?;
        let mut z_evals = Vec::with_capacity(big_r);
        for i in 0..big_r {
            z_evals.push(f.mul(bundle.s_evals[i], lam_evals[i], &mut ctr));
        }
        let z_lch = self.xbar.ifft(&z_evals, s_log, Gf::ZERO, &mut ctr)?;
        let z_trim = self.trim_evaluator(&z_lch, e)?;

        let values = self.forney_values(&z_trim, &lambda, &positions, &mut ctr)?;
        self.finish(received, &positions, &values, DecodeAlgorithm::Second, ctr, steps)
    }

    /// Shared tail of the first pipeline: interpolate locator and
    /// evaluator from the solver's t+1 evaluations, search roots over the
    /// full domain, apply the error values.
    fn first_tail(
        &self,
        received: &[Gf],
        bundle: &SyndromeBundle,
        sol: IfdmaOutcome,
        algorithm: DecodeAlgorithm,
        mut ctr: OpCounter,
    ) -> Result<DecodeResult> {
        let f = self.field();
        let e = sol.errors;
        if e == 0 || e > self.params.t {
            return Err(Error::Undecodable { stage: "inferred error count" });
        }
        let t = self.params.t;
        let mu = self.params.mu as usize;
        let mut z_evals = Vec::with_capacity(t + 1);
        for i in 0..=t {
            z_evals.push(f.mul(bundle.s_evals[i], sol.evals[i], &mut ctr));
        }
        let lambda_lch = self.xbar.extended_ifft(&sol.evals, mu - 1, Gf::ZERO, &mut ctr)?;
        let z_lch = self.xbar.extended_ifft(&z_evals, mu - 1, Gf::ZERO, &mut ctr)?;

        // the locator must have degree exactly e under the LCH basis too
        if lambda_lch.0[e + 1..].iter().any(|c| !c.is_zero()) || lambda_lch.0[e].is_zero() {
            return Err(Error::Undecodable { stage: "locator degree" });
        }
        let lambda_trim = LchPoly(lambda_lch.0[..=e].to_vec());
        let roots = self.chien_block_search(&LchPoly(lambda_lch.0), mu, &mut ctr)?;
        if roots.len() != e {
            return Err(Error::Undecodable { stage: "root count" });
        }
        let lambda_mono = self.xbar.lch_to_mono(&self.mats, &lambda_trim, &mut ctr)?;
        let z_trim = self.trim_evaluator(&z_lch, e)?;
        let values = self.forney_values(&z_trim, &lambda_mono, &roots, &mut ctr)?;
        self.finish(received, &roots, &values, algorithm, ctr, sol.steps)
    }

    /// deg(z) < deg(lambda) = e: keep the first e coefficients, verify the
    /// rest are zero.
    fn trim_evaluator(&self, z: &LchPoly, e: usize) -> Result<Vec<Gf>> {
        if z.0[e..].iter().any(|c| !c.is_zero()) {
            return Err(Error::Undecodable { stage: "evaluator degree" });
        }
        Ok(z.0[..e].to_vec())
    }

    fn clean_result(
        &self,
        received: &[Gf],
        algorithm: DecodeAlgorithm,
        ctr: OpCounter,
    ) -> DecodeResult {
        DecodeResult {
            codeword: received.to_vec(),
            error_pattern: ErrorPattern::default(),
            algorithm,
            counters: ctr,
            solver_steps: 0,
        }
    }

    fn finish(
        &self,
        received: &[Gf],
        positions: &[usize],
        values: &[Gf],
        algorithm: DecodeAlgorithm,
        mut ctr: OpCounter,
        solver_steps: usize,
    ) -> Result<DecodeResult> {
        let f = self.field();
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::Undecodable { stage: "zero error magnitude" });
        }
        let mut repaired = received.to_vec();
        for (&pos, &val) in positions.iter().zip(values.iter()) {
            repaired[pos] = f.add(repaired[pos], val, &mut ctr);
        }
        if !codec::parity_check(f, &self.params, &repaired)? {
            return Err(Error::Undecodable { stage: "parity check after repair" });
        }
        let entries: Vec<(usize, Gf)> =
            positions.iter().copied().zip(values.iter().copied()).collect();
        let error_pattern = ErrorPattern::new(entries, self.params.n)?;
        Ok(DecodeResult {
            codeword: repaired,
            error_pattern,
            algorithm,
            counters: ctr,
            solver_steps,
        })
    }
}

/// Syndrome computation at full length: sum the per-coset inverse
/// transforms of every block, normalize by p_{n - 2t} (one inversion plus
/// 2t multiplications), then evaluate on the first coset.
fn syndrome_bundle_raw(
    xbar: &XbarCtx,
    params: &CodeParams,
    received: &[Gf],
    ctr: &mut OpCounter,
) -> Result<SyndromeBundle> {
    if received.len() != params.n {
        return Err(Error::LengthMismatch { expected: params.n, got: received.len() });
    }
    let f = xbar.field();
    let t_cap = params.t_cap;
    let mu = params.mu as usize;
    let mut acc = vec![Gf::ZERO; t_cap];
    for b in 0..params.block_count {
        let part = xbar.ifft(&received[b * t_cap..(b + 1) * t_cap], mu, f.om(b * t_cap), ctr)?;
        for (a, &p) in acc.iter_mut().zip(part.0.iter()) {
            *a = f.add(*a, p, ctr);
        }
    }
    let norm = f.inv(xbar.p(params.n - t_cap), ctr)?;
    for a in acc.iter_mut() {
        *a = f.mul(*a, norm, ctr);
    }
    let s_lch = LchPoly(acc);
    let s_evals = xbar.fft(&s_lch, mu, Gf::ZERO, ctr)?;
    Ok(SyndromeBundle { s_lch, s_evals })
}
