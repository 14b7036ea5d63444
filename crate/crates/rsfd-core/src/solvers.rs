//! Key-equation solvers.
//!
//! All four solvers process the interpolation-style syndromes with the same
//! 2x2 update step: at iteration r the pair sequences (d_i, g_i) are hit by
//!
//! ```text
//! psi_r(omega_i) = | g_r  d_r |         or  | g_r        d_r |
//!                  | 0    omega_i-omega_r |     | omega_i-omega_r  0 |
//! ```
//!
//! choosing the left form when `d_r = 0` or (`R0 > R1` and `g_r != 0`).
//! Applying one matrix to one pair costs exactly three multiplications and
//! two additions, which is where the closed-form counts of the
//! frequency-domain solver come from.
//!
//! * [`ma_solve`] keeps the four polynomials of the classic modular
//!   approach and supports three termination modes.
//! * [`ifdma_solve`] tracks only the t+1 locator evaluations and stops as
//!   soon as every remaining discrepancy is zero, which happens after
//!   exactly 2e steps for an e-error syndrome sequence.
//! * [`si_fdma`] runs the same iteration on a truncated window of t0+1
//!   syndromes and reports only the error count; when it cannot, the
//!   partially computed triangle is handed back so a follow-up
//!   [`ifdma_resume`] pays nothing twice.
//! * [`s_esbm`] synthesizes the reciprocal-root locator from 2e power
//!   syndromes in 2e Berlekamp-Massey iterations, at most 2e^2 - 1
//!   multiplications.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Gf, OpCounter};
use crate::lch::MonoPoly;

/// One recorded iteration of the discrepancy update, enough to replay the
/// matrix on sequences the original run never touched.
#[derive(Debug, Clone, Copy)]
pub struct StepRecord {
    g: Gf,
    d: Gf,
    /// True when the degree-preserving branch was taken.
    keep: bool,
}

/// Shared discrepancy state of the MA-family iterations.
struct MaCore {
    d: Vec<Gf>,
    g: Vec<Gf>,
    r0: usize,
    r1: usize,
}

impl MaCore {
    fn init(syndromes: &[Gf]) -> MaCore {
        // d_i = -s(omega_i) = s(omega_i) in characteristic 2
        MaCore {
            d: syndromes.to_vec(),
            g: vec![Gf::ONE; syndromes.len()],
            r0: 0,
            r1: 1,
        }
    }

    #[inline]
    fn even(&self) -> usize {
        if self.r0 % 2 == 0 {
            self.r0
        } else {
            self.r1
        }
    }

    /// True iff d_i = 0 for every i in `from..self.d.len()`.
    fn tail_zero(&self, from: usize) -> bool {
        self.d[from..].iter().all(|v| v.is_zero())
    }

    /// Perform iteration r: decide the branch, update (d_i, g_i) for
    /// i in r+1..hi, and advance (R0, R1).
    fn step(&mut self, field: &FieldCtx, r: usize, hi: usize, ctr: &mut OpCounter) -> StepRecord {
        let dr = self.d[r];
        let gr = self.g[r];
        debug_assert!(!(dr.is_zero() && gr.is_zero()), "d_r and g_r both zero at r={r}");
        let keep = dr.is_zero() || (self.r0 > self.r1 && !gr.is_zero());
        let rec = StepRecord { g: gr, d: dr, keep };
        let omega_r = field.om(r);
        apply_record(field, &rec, omega_r, &mut self.d, &mut self.g, r + 1, hi, ctr);
        let before_even = self.even();
        if keep {
            self.r1 += 2;
        } else {
            let (a, b) = (self.r1, self.r0 + 2);
            self.r0 = a;
            self.r1 = b;
        }
        debug_assert_eq!(self.r0 + self.r1, 2 * (r + 1) + 1);
        debug_assert!(self.even() >= before_even);
        rec
    }
}

/// Apply one recorded matrix to the pair sequences (a_i, b_i) for indices
/// `lo..hi`: three counted multiplications and two counted additions per
/// index.
fn apply_record(
    field: &FieldCtx,
    rec: &StepRecord,
    omega_r: Gf,
    a: &mut [Gf],
    b: &mut [Gf],
    lo: usize,
    hi: usize,
    ctr: &mut OpCounter,
) {
    for i in lo..hi {
        let factor = field.add(field.om(i), omega_r, ctr);
        let na = field.add(
            field.mul(rec.g, a[i], ctr),
            field.mul(rec.d, b[i], ctr),
            ctr,
        );
        let nb = field.mul(factor, if rec.keep { b[i] } else { a[i] }, ctr);
        a[i] = na;
        b[i] = nb;
    }
}

/// Result of the frequency-domain solver: a nonzero scalar multiple of the
/// error locator evaluated at omega_0..omega_t.
#[derive(Debug, Clone)]
pub struct IfdmaOutcome {
    pub evals: Vec<Gf>,
    /// Iterations performed; exactly 2e for an e-error syndrome sequence.
    pub steps: usize,
    /// Inferred error count R0/2.
    pub errors: usize,
    pub r0: usize,
    pub r1: usize,
}

/// Solve for the locator evaluations from all 2t syndromes, stopping as
/// soon as the remaining discrepancies vanish.
pub fn ifdma_solve(
    field: &FieldCtx,
    t: usize,
    syndromes: &[Gf],
    ctr: &mut OpCounter,
) -> Result<IfdmaOutcome> {
    if syndromes.len() != 2 * t {
        return Err(Error::LengthMismatch { expected: 2 * t, got: syndromes.len() });
    }
    let mut core = MaCore::init(syndromes);
    let mut w = vec![Gf::ONE; t + 1];
    let mut v = vec![Gf::ZERO; t + 1];
    run_ifdma(field, t, &mut core, &mut w, &mut v, 0, ctr)
}

/// Continue a truncated probe run. The triangle already carries the final
/// (d_i, g_i) for i <= t0 and the per-step matrices, so only the sequences
/// the probe never touched get replayed before the iteration resumes at
/// step t0.
pub fn ifdma_resume(
    field: &FieldCtx,
    t: usize,
    syndromes: &[Gf],
    triangle: &SiTriangle,
    ctr: &mut OpCounter,
) -> Result<IfdmaOutcome> {
    if syndromes.len() != 2 * t {
        return Err(Error::LengthMismatch { expected: 2 * t, got: syndromes.len() });
    }
    let t0 = triangle.t0;
    if t0 + 1 > 2 * t || triangle.d.len() != 2 * t {
        return Err(Error::MalformedInput("probe state disagrees with the syndrome count"));
    }
    let mut core = MaCore::init(syndromes);
    core.d.copy_from_slice(&triangle.d);
    core.g.copy_from_slice(&triangle.g);
    core.r0 = triangle.r0;
    core.r1 = triangle.r1;
    let mut w = vec![Gf::ONE; t + 1];
    let mut v = vec![Gf::ZERO; t + 1];
    for (r, rec) in triangle.steps.iter().enumerate() {
        let omega_r = field.om(r);
        if r >= triangle.ext_applied {
            let n = core.d.len();
            apply_record(field, rec, omega_r, &mut core.d, &mut core.g, t0 + 1, n, ctr);
        }
        apply_record(field, rec, omega_r, &mut w, &mut v, 0, t + 1, ctr);
    }
    run_ifdma(field, t, &mut core, &mut w, &mut v, triangle.steps.len(), ctr)
}

fn run_ifdma(
    field: &FieldCtx,
    t: usize,
    core: &mut MaCore,
    w: &mut Vec<Gf>,
    v: &mut Vec<Gf>,
    start: usize,
    ctr: &mut OpCounter,
) -> Result<IfdmaOutcome> {
    let n = core.d.len();
    for r in start..2 * t {
        if core.tail_zero(r) {
            return Ok(IfdmaOutcome {
                evals: core_take(w),
                steps: r,
                errors: core.r0 / 2,
                r0: core.r0,
                r1: core.r1,
            });
        }
        let rec = core.step(field, r, n, ctr);
        apply_record(field, &rec, field.om(r), w, v, 0, t + 1, ctr);
    }
    if core.r0 < core.r1 {
        Ok(IfdmaOutcome {
            evals: core_take(w),
            steps: 2 * t,
            errors: core.r0 / 2,
            r0: core.r0,
            r1: core.r1,
        })
    } else {
        Err(Error::Undecodable { stage: "key-equation solver exhausted its budget" })
    }
}

fn core_take(w: &mut Vec<Gf>) -> Vec<Gf> {
    core::mem::take(w)
}

/// Outcome of the truncated error-count probe.
pub enum SiOutcome {
    /// The probe terminated after exactly 2e iterations.
    Count { errors: usize, steps: usize },
    /// No decision was possible (2e > t0 + 1); the computed triangle is
    /// returned so the full solver can reuse it.
    Exhausted(SiTriangle),
}

/// Working state left behind by an exhausted probe.
pub struct SiTriangle {
    pub t0: usize,
    steps: Vec<StepRecord>,
    /// How many recorded steps have already been applied to the sequences
    /// beyond the probe window (nonzero only when a tentative decision was
    /// refuted mid-run).
    ext_applied: usize,
    d: Vec<Gf>,
    g: Vec<Gf>,
    r0: usize,
    r1: usize,
}

/// Determine the number of errors by iterating over the window of t0+1
/// syndromes only; t0 must be even. Returns the count after exactly 2e
/// iterations whenever 2e < t0 + 1, and no value when 2e > t0 + 1.
///
/// A zero discrepancy tail inside the window does not by itself prove
/// termination: when the true error count exceeds t0/2 the last window
/// check degenerates to a single field value and false-accepts with
/// probability about 1/2^m. The probe therefore receives the full
/// syndrome slice and, on a tentative decision, replays its recorded
/// steps onto the out-of-window sequences to confirm the whole tail is
/// zero. Confirmation performs exactly the updates the truncation skipped
/// and nothing twice, so a probe plus [`ifdma_resume`] still costs
/// precisely one fresh [`ifdma_solve`], and a confirmed count is exact for
/// every e <= t.
pub fn si_fdma(
    field: &FieldCtx,
    t0: usize,
    syndromes: &[Gf],
    ctr: &mut OpCounter,
) -> Result<SiOutcome> {
    if t0 % 2 != 0 {
        return Err(Error::OddT0 { t0 });
    }
    if syndromes.len() < t0 + 1 {
        return Err(Error::LengthMismatch { expected: t0 + 1, got: syndromes.len() });
    }
    let n = syndromes.len();
    let mut core = MaCore::init(syndromes);
    let mut steps: Vec<StepRecord> = Vec::with_capacity(t0);
    let mut ext_applied = 0usize;
    for r in 0..=t0 {
        if core.d[r..=t0].iter().all(|v| v.is_zero()) {
            // tentative decision; bring the out-of-window sequences up to
            // step r and check the rest of the tail
            for (s, rec) in steps.iter().enumerate().take(r).skip(ext_applied) {
                apply_record(field, rec, field.om(s), &mut core.d, &mut core.g, t0 + 1, n, ctr);
            }
            ext_applied = ext_applied.max(r);
            if core.d[t0 + 1..].iter().all(|v| v.is_zero()) {
                return Ok(SiOutcome::Count { errors: core.r0 / 2, steps: r });
            }
        }
        if r < t0 {
            steps.push(core.step(field, r, t0 + 1, ctr));
        }
    }
    Ok(SiOutcome::Exhausted(SiTriangle {
        t0,
        steps,
        ext_applied,
        d: core.d,
        g: core.g,
        r0: core.r0,
        r1: core.r1,
    }))
}

/// Termination mode for the reference polynomial solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    /// All 2t iterations, output pair selected by comparing R0 and R1.
    Full2t,
    /// Stop once R1 reaches 2t + 1 (at most t + e iterations).
    TPlusE,
    /// Stop once every remaining discrepancy is zero (exactly 2e
    /// iterations).
    TwoE,
}

#[derive(Debug, Clone)]
pub struct MaOutcome {
    pub lambda: MonoPoly,
    pub z: MonoPoly,
    pub steps: usize,
}

/// The classic modular approach on full polynomials. Slower than the
/// frequency-domain solver; kept as the reference implementation all other
/// solvers are checked against.
pub fn ma_solve(
    field: &FieldCtx,
    t: usize,
    syndromes: &[Gf],
    mode: SolveMode,
    ctr: &mut OpCounter,
) -> Result<MaOutcome> {
    if syndromes.len() != 2 * t {
        return Err(Error::MalformedInput("syndrome sequence must have length 2t"));
    }
    let mut core = MaCore::init(syndromes);
    let mut w = vec![Gf::ONE];
    let mut n = vec![Gf::ZERO];
    let mut v = vec![Gf::ZERO];
    let mut m = vec![Gf::ONE];

    for r in 0..2 * t {
        if mode == SolveMode::TwoE && core.tail_zero(r) {
            return Ok(MaOutcome { lambda: MonoPoly(w), z: MonoPoly(n), steps: r });
        }
        let rec = core.step(field, r, 2 * t, ctr);
        let omega_r = field.om(r);
        let nw = poly_combine(field, &rec, &w, &v, ctr);
        let nn = poly_combine(field, &rec, &n, &m, ctr);
        let (nv, nm) = if rec.keep {
            (poly_shift_root(field, &v, omega_r, ctr), poly_shift_root(field, &m, omega_r, ctr))
        } else {
            (poly_shift_root(field, &w, omega_r, ctr), poly_shift_root(field, &n, omega_r, ctr))
        };
        w = nw;
        n = nn;
        v = nv;
        m = nm;
        if mode == SolveMode::TPlusE && core.r1 == 2 * t + 1 {
            return Ok(MaOutcome { lambda: MonoPoly(w), z: MonoPoly(n), steps: r + 1 });
        }
    }
    if core.r0 < core.r1 {
        Ok(MaOutcome { lambda: MonoPoly(w), z: MonoPoly(n), steps: 2 * t })
    } else {
        Ok(MaOutcome { lambda: MonoPoly(v), z: MonoPoly(m), steps: 2 * t })
    }
}

/// g_r * a + d_r * b on coefficient vectors.
fn poly_combine(
    field: &FieldCtx,
    rec: &StepRecord,
    a: &[Gf],
    b: &[Gf],
    ctr: &mut OpCounter,
) -> Vec<Gf> {
    let len = a.len().max(b.len());
    let mut out = vec![Gf::ZERO; len];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut acc = Gf::ZERO;
        if i < a.len() {
            acc = field.mul(rec.g, a[i], ctr);
        }
        if i < b.len() {
            acc = field.add(acc, field.mul(rec.d, b[i], ctr), ctr);
        }
        *slot = acc;
    }
    out
}

/// (x + omega_r) * p.
fn poly_shift_root(field: &FieldCtx, p: &[Gf], omega_r: Gf, ctr: &mut OpCounter) -> Vec<Gf> {
    let mut out = vec![Gf::ZERO; p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i + 1] = out[i + 1] ^ c;
        out[i] = field.add(out[i], field.mul(omega_r, c, ctr), ctr);
    }
    out
}

/// Shortened early-stopped Berlekamp-Massey: with the error count e known,
/// 2e iterations over the power syndromes S_0..S_{2e-1} yield the
/// reciprocal-root locator sigma with sigma(0) = 1.
///
/// The first two iterations collapse to `sigma_1 = S_1 / S_0` whenever S_0
/// is nonzero, and the very first correction never pays for a division by
/// the initial D = 1; together with the structural constant terms of sigma
/// and its shadow this keeps the multiplication count at or below
/// 2e^2 - 1.
pub fn s_esbm(field: &FieldCtx, e: usize, syndromes: &[Gf], ctr: &mut OpCounter) -> Result<MonoPoly> {
    if e == 0 {
        return Err(Error::MalformedInput("error count must be positive"));
    }
    if syndromes.len() != 2 * e {
        return Err(Error::LengthMismatch { expected: 2 * e, got: syndromes.len() });
    }
    let s = syndromes;
    let mut lam: Vec<Gf> = vec![Gf::ONE];
    let mut shadow: Vec<Gf> = vec![Gf::ONE];
    let mut len = 0usize; // register length L
    let mut last_change = 0usize;
    let mut d_inv = Gf::ONE;
    let mut d_initial = true;
    let mut r_start = 1usize;

    if !s[0].is_zero() {
        // iterations 1 and 2 fused: lambda = (1, S_1/S_0)
        d_inv = field.inv(s[0], ctr)?;
        let c1 = field.mul(s[1], d_inv, ctr);
        lam = vec![Gf::ONE, c1];
        len = 1;
        last_change = 1;
        d_initial = false;
        r_start = 3;
    }

    for r in r_start..=2 * e {
        // discrepancy over the current window; lambda[0] = 1 never pays
        let mut delta = s[r - 1];
        for i in 1..=len {
            delta = field.add(delta, field.mul(lam[i], s[r - 1 - i], ctr), ctr);
        }
        if delta.is_zero() {
            continue;
        }
        let coef = if d_initial { delta } else { field.mul(delta, d_inv, ctr) };
        let shift = r - last_change;
        if 2 * len < r {
            let stash = lam.clone();
            sub_scaled_shifted(field, &mut lam, coef, &shadow, shift, ctr);
            shadow = stash;
            d_inv = field.inv(delta, ctr)?;
            d_initial = false;
            len = r - len;
            last_change = r;
        } else {
            sub_scaled_shifted(field, &mut lam, coef, &shadow, shift, ctr);
        }
    }

    if len != e {
        return Err(Error::DegenerateInput(
            "register length disagrees with the declared error count",
        ));
    }
    if lam.len() > e + 1 && lam[e + 1..].iter().any(|c| !c.is_zero()) {
        return Err(Error::DegenerateInput("locator degree exceeds the declared error count"));
    }
    lam.resize(e + 1, Gf::ZERO);
    Ok(MonoPoly(lam))
}

/// lam += coef * x^shift * b, where b[0] = 1 structurally.
fn sub_scaled_shifted(
    field: &FieldCtx,
    lam: &mut Vec<Gf>,
    coef: Gf,
    b: &[Gf],
    shift: usize,
    ctr: &mut OpCounter,
) {
    debug_assert_eq!(b[0], Gf::ONE);
    let need = shift + b.len();
    if lam.len() < need {
        lam.resize(need, Gf::ZERO);
    }
    lam[shift] = field.add(lam[shift], coef, ctr);
    for (i, &bc) in b.iter().enumerate().skip(1) {
        let t = field.mul(coef, bc, ctr);
        lam[shift + i] = field.add(lam[shift + i], t, ctr);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{corrupt, encode_systematic, CodeParams, Codeword, ErrorPattern};
    use crate::lch::XbarCtx;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn setup() -> (XbarCtx, CodeParams) {
        (XbarCtx::new(FieldCtx::gf256()), CodeParams::rs256_224())
    }

    /// Syndrome evaluations of a received word, test-local path.
    fn syndromes(x: &XbarCtx, p: &CodeParams, received: &[Gf]) -> Vec<Gf> {
        let f = x.field();
        let mut c = OpCounter::new();
        let t = p.t_cap;
        let mut acc = vec![Gf::ZERO; t];
        for b in 0..p.block_count {
            let part = x
                .ifft(&received[b * t..(b + 1) * t], p.mu as usize, f.om(b * t), &mut c)
                .unwrap();
            for (a, &v) in acc.iter_mut().zip(part.0.iter()) {
                *a = *a ^ v;
            }
        }
        let pinv = f.inv_nocount(x.p(p.n - t)).unwrap();
        for a in acc.iter_mut() {
            *a = f.mul_nocount(*a, pinv);
        }
        x.fft(&crate::lch::LchPoly(acc), p.mu as usize, Gf::ZERO, &mut c).unwrap()
    }

    fn random_pattern(rng: &mut StdRng, p: &CodeParams, e: usize) -> ErrorPattern {
        let mut entries = Vec::new();
        let mut used = vec![false; p.n];
        while entries.len() < e {
            let idx = rng.gen_range(2 * p.t..p.n);
            if used[idx] {
                continue;
            }
            used[idx] = true;
            entries.push((idx, Gf(rng.gen_range(1..p.n) as u16)));
        }
        ErrorPattern::new(entries, p.n).unwrap()
    }

    fn received_for(x: &XbarCtx, p: &CodeParams, rng: &mut StdRng, e: usize) -> (Vec<Gf>, ErrorPattern) {
        let zero = Codeword { symbols: vec![Gf::ZERO; p.n] };
        let pat = random_pattern(rng, p, e);
        (corrupt(p, &zero, &pat, false).unwrap(), pat)
    }

    fn roots_over_domain(f: &FieldCtx, poly: &MonoPoly) -> Vec<usize> {
        let mut c = OpCounter::new();
        (0..f.size())
            .filter(|&i| poly.eval(f, f.om(i), &mut c).is_zero())
            .collect()
    }

    #[test]
    fn ifdma_zero_syndromes() {
        let f = FieldCtx::gf256();
        let mut c = OpCounter::new();
        let out = ifdma_solve(&f, 16, &vec![Gf::ZERO; 32], &mut c).unwrap();
        assert_eq!(out.steps, 0);
        assert_eq!(out.errors, 0);
        assert!(out.evals.iter().all(|&v| v == out.evals[0] && !v.is_zero()));
        assert_eq!(c.mul, 0);
    }

    #[test]
    fn ifdma_terminates_after_2e_steps_with_exact_counts() {
        let (x, p) = setup();
        let f = x.field();
        let mut rng = StdRng::seed_from_u64(20);
        for e in 1..=p.t {
            let (received, _) = received_for(&x, &p, &mut rng, e);
            let synd = syndromes(&x, &p, &received);
            let mut c = OpCounter::new();
            let out = ifdma_solve(f, p.t, &synd, &mut c).unwrap();
            assert_eq!(out.steps, 2 * e);
            assert_eq!(out.errors, e);
            assert_eq!((out.r0, out.r1), (2 * e, 2 * e + 1));
            let (te, tt) = (e as u64, p.t as u64);
            assert_eq!(c.mul, 18 * te * tt - 6 * te * te + 3 * te, "e={e}");
            assert_eq!(c.add, 12 * te * tt - 4 * te * te + 2 * te, "e={e}");
        }
    }

    #[test]
    fn ifdma_matches_table_values() {
        let (x, p) = setup();
        let mut rng = StdRng::seed_from_u64(21);
        let expected = [285u64, 558, 819, 1068, 1305, 1530, 1743, 1944, 2133, 2310];
        for (e, &want) in (1..=10).zip(expected.iter()) {
            let (received, _) = received_for(&x, &p, &mut rng, e);
            let synd = syndromes(&x, &p, &received);
            let mut c = OpCounter::new();
            ifdma_solve(x.field(), p.t, &synd, &mut c).unwrap();
            assert_eq!(c.mul, want, "e={e}");
        }
    }

    #[test]
    fn ifdma_evals_are_scalar_multiple_of_locator() {
        let (x, p) = setup();
        let f = x.field();
        let mut rng = StdRng::seed_from_u64(22);
        for e in [1usize, 4, 16] {
            let (received, pat) = received_for(&x, &p, &mut rng, e);
            let synd = syndromes(&x, &p, &received);
            let mut c = OpCounter::new();
            let out = ifdma_solve(f, p.t, &synd, &mut c).unwrap();
            // true monic locator
            let mut lam = MonoPoly(vec![Gf::ONE]);
            for &(idx, _) in &pat.entries {
                lam.mul_monic_linear(f, f.om(idx), &mut c);
            }
            // ratio must be one nonzero constant across all t+1 points
            let mut ratio = None;
            for (i, &have) in out.evals.iter().enumerate() {
                let want = lam.eval(f, f.om(i), &mut c);
                assert_eq!(want.is_zero(), have.is_zero());
                if !want.is_zero() {
                    let r = f.mul_nocount(have, f.inv_nocount(want).unwrap());
                    match ratio {
                        None => ratio = Some(r),
                        Some(prev) => assert_eq!(prev, r),
                    }
                }
            }
            assert!(!ratio.unwrap().is_zero());
        }
    }

    #[test]
    fn ma_modes_agree_on_root_sets() {
        let (x, p) = setup();
        let f = x.field();
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..40 {
            let e = rng.gen_range(1..=p.t);
            let (received, pat) = received_for(&x, &p, &mut rng, e);
            let synd = syndromes(&x, &p, &received);
            let expect: Vec<usize> = pat.entries.iter().map(|&(i, _)| i).collect();

            let mut c = OpCounter::new();
            let full = ma_solve(f, p.t, &synd, SolveMode::Full2t, &mut c).unwrap();
            let tpe = ma_solve(f, p.t, &synd, SolveMode::TPlusE, &mut c).unwrap();
            let two = ma_solve(f, p.t, &synd, SolveMode::TwoE, &mut c).unwrap();
            assert_eq!(full.steps, 2 * p.t);
            assert!(tpe.steps <= p.t + e, "t+e mode took {} steps", tpe.steps);
            assert_eq!(two.steps, 2 * e);
            for out in [&full, &tpe, &two] {
                assert_eq!(roots_over_domain(f, &out.lambda), expect);
            }
            // the frequency-domain evaluations vanish exactly on the roots
            let ifd = ifdma_solve(f, p.t, &synd, &mut c).unwrap();
            for (i, &v) in ifd.evals.iter().enumerate() {
                assert_eq!(v.is_zero(), expect.contains(&i));
            }
        }
    }

    #[test]
    fn ma_zero_syndromes() {
        let f = FieldCtx::gf256();
        let mut c = OpCounter::new();
        let out = ma_solve(&f, 16, &vec![Gf::ZERO; 32], SolveMode::TwoE, &mut c).unwrap();
        assert_eq!(out.steps, 0);
        assert_eq!(out.lambda.degree(), Some(0));
        assert!(out.z.degree().is_none());
    }

    #[test]
    fn ma_reference_single_error_brute_force() {
        let (x, p) = setup();
        let f = x.field();
        // single error at index 2t with value 1
        let zero = Codeword { symbols: vec![Gf::ZERO; p.n] };
        let pat = ErrorPattern::new(vec![(2 * p.t, Gf::ONE)], p.n).unwrap();
        let received = corrupt(&p, &zero, &pat, false).unwrap();
        let synd = syndromes(&x, &p, &received);

        // brute force over all single-error hypotheses
        let mut matches = Vec::new();
        for pos in 2 * p.t..p.n {
            for val in 1..=3u16 {
                let hyp = ErrorPattern::new(vec![(pos, Gf(val))], p.n).unwrap();
                let r = corrupt(&p, &zero, &hyp, false).unwrap();
                if syndromes(&x, &p, &r) == synd {
                    matches.push((pos, val));
                }
            }
        }
        assert_eq!(matches, vec![(2 * p.t, 1)]);

        let mut c = OpCounter::new();
        let out = ma_solve(f, p.t, &synd, SolveMode::Full2t, &mut c).unwrap();
        assert_eq!(roots_over_domain(f, &out.lambda), vec![2 * p.t]);
    }

    #[test]
    fn si_fdma_zero_and_small_counts() {
        let (x, p) = setup();
        let f = x.field();
        let mut c = OpCounter::new();
        match si_fdma(f, 16, &vec![Gf::ZERO; 17], &mut c).unwrap() {
            SiOutcome::Count { errors, steps } => {
                assert_eq!(errors, 0);
                assert_eq!(steps, 0);
            }
            _ => panic!("expected a count"),
        }
        let mut rng = StdRng::seed_from_u64(24);
        let (received, _) = received_for(&x, &p, &mut rng, 5);
        let synd = syndromes(&x, &p, &received);
        match si_fdma(f, 16, &synd, &mut c).unwrap() {
            SiOutcome::Count { errors, steps } => {
                assert_eq!(errors, 5);
                assert_eq!(steps, 10);
            }
            _ => panic!("expected a count for e=5"),
        }
    }

    #[test]
    fn si_fdma_exhausts_for_large_counts() {
        let (x, p) = setup();
        let f = x.field();
        let mut rng = StdRng::seed_from_u64(25);
        let (received, _) = received_for(&x, &p, &mut rng, 12);
        let synd = syndromes(&x, &p, &received);
        let mut c = OpCounter::new();
        match si_fdma(f, 16, &synd, &mut c).unwrap() {
            SiOutcome::Exhausted(tri) => {
                assert_eq!(tri.t0, 16);
                assert_eq!(tri.steps.len(), 16);
            }
            _ => panic!("expected no decision for e=12"),
        }
        assert!(si_fdma(f, 15, &synd, &mut c).is_err());
    }

    #[test]
    fn resume_reproduces_fresh_run_and_cost() {
        let (x, p) = setup();
        let f = x.field();
        let mut rng = StdRng::seed_from_u64(26);
        for e in [9usize, 12, 16] {
            let (received, _) = received_for(&x, &p, &mut rng, e);
            let synd = syndromes(&x, &p, &received);

            let mut c_fresh = OpCounter::new();
            let fresh = ifdma_solve(f, p.t, &synd, &mut c_fresh).unwrap();

            let mut c_split = OpCounter::new();
            let tri = match si_fdma(f, p.t0, &synd, &mut c_split).unwrap() {
                SiOutcome::Exhausted(tri) => tri,
                _ => panic!("e={e} should exhaust the probe"),
            };
            let resumed = ifdma_resume(f, p.t, &synd, &tri, &mut c_split).unwrap();

            assert_eq!(resumed.evals, fresh.evals);
            assert_eq!(resumed.steps, fresh.steps);
            assert_eq!(c_split, c_fresh, "probe + resume must cost exactly a fresh run");
        }
    }

    #[test]
    fn esbm_single_error_closed_form() {
        let f = FieldCtx::gf256();
        let mut c = OpCounter::new();
        let (beta, delta) = (Gf(0x47), Gf(0x99));
        let s = [delta, f.mul_nocount(beta, delta)];
        let sigma = s_esbm(&f, 1, &s, &mut c).unwrap();
        assert_eq!(sigma.0, vec![Gf::ONE, beta]);
        assert_eq!(c.mul, 1);
        assert_eq!(c.inv, 1);
    }

    #[test]
    fn esbm_matches_gaussian_elimination() {
        let f = FieldCtx::gf256();
        let mut rng = StdRng::seed_from_u64(27);
        let mut c = OpCounter::new();
        for e in 1..=8usize {
            // distinct nonzero beta_j and nonzero delta_j
            let mut betas: Vec<Gf> = Vec::new();
            while betas.len() < e {
                let b = Gf(rng.gen_range(1..256) as u16);
                if !betas.contains(&b) {
                    betas.push(b);
                }
            }
            let deltas: Vec<Gf> = (0..e).map(|_| Gf(rng.gen_range(1..256) as u16)).collect();
            let mut s = vec![Gf::ZERO; 2 * e];
            for (b, d) in betas.iter().zip(deltas.iter()) {
                let mut pw = *d;
                for slot in s.iter_mut() {
                    *slot = *slot ^ pw;
                    pw = f.mul_nocount(pw, *b);
                }
            }
            let sigma = s_esbm(&f, e, &s, &mut c).unwrap();

            // dense solve of the Hankel system for (-sigma_e .. -sigma_1)
            let mut a: Vec<Vec<Gf>> =
                (0..e).map(|r| (0..e).map(|cc| s[r + cc]).collect()).collect();
            let mut rhs: Vec<Gf> = (0..e).map(|r| s[e + r]).collect();
            for col in 0..e {
                let piv = (col..e).find(|&r| !a[r][col].is_zero()).expect("invertible");
                a.swap(col, piv);
                rhs.swap(col, piv);
                let pinv = f.inv_nocount(a[col][col]).unwrap();
                for x in a[col].iter_mut() {
                    *x = f.mul_nocount(*x, pinv);
                }
                rhs[col] = f.mul_nocount(rhs[col], pinv);
                for r in 0..e {
                    if r != col && !a[r][col].is_zero() {
                        let factor = a[r][col];
                        for cc in 0..e {
                            let t = f.mul_nocount(factor, a[col][cc]);
                            a[r][cc] = a[r][cc] ^ t;
                        }
                        rhs[r] = rhs[r] ^ f.mul_nocount(factor, rhs[col]);
                    }
                }
            }
            // solution vector is (sigma_e, ..., sigma_1) up to sign (= itself)
            for i in 0..e {
                assert_eq!(sigma.0[e - i], rhs[i], "e={e} coefficient {i}");
            }

            // residual: sum_l sigma_l S_{j+e-l} = 0 for all windows
            for j in 0..e {
                let mut acc = Gf::ZERO;
                for l in 0..=e {
                    acc = acc ^ f.mul_nocount(sigma.0[l], s[j + e - l]);
                }
                assert_eq!(acc, Gf::ZERO);
            }
        }
    }

    #[test]
    fn esbm_multiplication_bound() {
        let f = FieldCtx::gf256();
        let mut rng = StdRng::seed_from_u64(28);
        for e in 1..=8usize {
            for _ in 0..50 {
                let mut betas: Vec<Gf> = Vec::new();
                while betas.len() < e {
                    let b = Gf(rng.gen_range(1..256) as u16);
                    if !betas.contains(&b) {
                        betas.push(b);
                    }
                }
                let mut s = vec![Gf::ZERO; 2 * e];
                for &b in &betas {
                    let mut pw = Gf(rng.gen_range(1..256) as u16);
                    for slot in s.iter_mut() {
                        *slot = *slot ^ pw;
                        pw = f.mul_nocount(pw, b);
                    }
                }
                let mut c = OpCounter::new();
                s_esbm(&f, e, &s, &mut c).unwrap();
                assert!(
                    c.mul <= (2 * e * e - 1) as u64,
                    "e={e}: {} muls exceeds 2e^2-1",
                    c.mul
                );
            }
        }
    }

    #[test]
    fn esbm_rejects_inconsistent_counts() {
        let f = FieldCtx::gf256();
        let mut c = OpCounter::new();
        // one genuine error described as two
        let s = [Gf(0x11), Gf(0x22), Gf(0x44), Gf(0x88)];
        let beta = Gf(0x02);
        let mut seq = vec![Gf::ZERO; 4];
        let mut pw = Gf(0x33);
        for slot in seq.iter_mut() {
            *slot = pw;
            pw = f.mul_nocount(pw, beta);
        }
        assert!(matches!(s_esbm(&f, 2, &seq, &mut c), Err(Error::DegenerateInput(_))));
        let _ = s;
        assert!(s_esbm(&f, 0, &[], &mut c).is_err());
    }
}
