//! Code parameters, systematic encoding, corruption injection, and the
//! Vandermonde parity check.
//!
//! The engine always works at the full length n = 2^m. A codeword is viewed
//! as 2^(m-mu) blocks of 2^mu symbols; block sums of per-coset inverse
//! transforms vanish exactly on codewords, which is what both the encoder
//! and the syndrome computation exploit. A shortened view pins a prefix of
//! positions to zero and re-solves the parity so that everything
//! transmitted lives at indices >= 2t.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Gf, OpCounter};
use crate::lch::XbarCtx;

/// Parameters of an (n = 2^m, k = 2^m - 2^mu) code with error-correction
/// capability t = 2^(mu-1), plus the error-count probe bound t0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    pub m: u32,
    pub mu: u32,
    /// Full engine length 2^m.
    pub n: usize,
    /// Dimension n - 2^mu.
    pub k: usize,
    /// Error-correction capability 2^(mu-1).
    pub t: usize,
    /// Redundancy n - k = 2^mu.
    pub t_cap: usize,
    /// Even probe bound for the error-count solver, t0 < 2t.
    pub t0: usize,
    pub block_count: usize,
    /// Shortened view length, when the code is shortened.
    pub shortened: Option<usize>,
}

impl CodeParams {
    pub fn new(m: u32, mu: u32) -> Result<CodeParams> {
        if mu < 2 {
            return Err(Error::MalformedInput("mu must be at least 2"));
        }
        if mu >= m || m > 16 {
            return Err(Error::MalformedInput("need 2 <= mu < m <= 16"));
        }
        let n = 1usize << m;
        let t_cap = 1usize << mu;
        let t = t_cap / 2;
        Ok(CodeParams {
            m,
            mu,
            n,
            k: n - t_cap,
            t,
            t_cap,
            t0: t,
            block_count: 1usize << (m - mu),
            shortened: None,
        })
    }

    /// Override the probe bound; must be even and below 2t.
    pub fn with_t0(mut self, t0: usize) -> Result<CodeParams> {
        if t0 % 2 != 0 {
            return Err(Error::OddT0 { t0 });
        }
        if t0 == 0 || t0 >= 2 * self.t {
            return Err(Error::MalformedInput("t0 must satisfy 0 < t0 < 2t"));
        }
        self.t0 = t0;
        Ok(self)
    }

    /// Shortened view of length `n_short`: the first `2^m - n_short`
    /// positions are pinned to zero, so every live symbol sits at an index
    /// of at least 2t.
    pub fn with_shortened(mut self, n_short: usize) -> Result<CodeParams> {
        let pinned = self.n.checked_sub(n_short).ok_or(Error::MalformedInput(
            "shortened length exceeds the engine length",
        ))?;
        if pinned < 2 * self.t {
            return Err(Error::MalformedInput("shortening must pin at least 2t positions"));
        }
        if n_short <= self.t_cap {
            return Err(Error::MalformedInput("shortened length leaves no data symbols"));
        }
        self.shortened = Some(n_short);
        Ok(self)
    }

    /// Number of data symbols accepted by the encoder.
    pub fn data_len(&self) -> usize {
        match self.shortened {
            Some(ns) => ns - self.t_cap,
            None => self.k,
        }
    }

    /// First engine index that carries transmitted symbols.
    pub fn live_start(&self) -> usize {
        match self.shortened {
            Some(ns) => self.n - ns,
            None => 0,
        }
    }

    /// The paper-scale default (256, 224) code: m = 8, mu = 5.
    pub fn rs256_224() -> CodeParams {
        CodeParams::new(8, 5).unwrap()
    }

    /// The (128, 96) code: m = 7, mu = 5.
    pub fn rs128_96() -> CodeParams {
        CodeParams::new(7, 5).unwrap()
    }
}

/// A full-length codeword, blocks of 2^mu symbols each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub symbols: Vec<Gf>,
}

impl Codeword {
    pub fn block<'a>(&'a self, params: &CodeParams, i: usize) -> &'a [Gf] {
        let t = params.t_cap;
        &self.symbols[i * t..(i + 1) * t]
    }
}

/// A set of error positions and nonzero values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ErrorPattern {
    pub entries: Vec<(usize, Gf)>,
}

impl ErrorPattern {
    /// Build a pattern from (index, value) pairs; indices must be distinct
    /// and in range, values nonzero. Entries are kept sorted by index.
    pub fn new(mut entries: Vec<(usize, Gf)>, n: usize) -> Result<ErrorPattern> {
        entries.sort_by_key(|e| e.0);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::MalformedInput("duplicate error position"));
            }
        }
        for &(i, v) in &entries {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, limit: n });
            }
            if v.is_zero() {
                return Err(Error::MalformedInput("error value must be nonzero"));
            }
        }
        Ok(ErrorPattern { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Systematic encoding at full length: data fills blocks F_2..F_B, and the
/// parity block is the coset-0 transform of the summed per-block inverse
/// transforms, so that all block IFFTs add to zero.
pub fn encode_systematic(
    xctx: &XbarCtx,
    params: &CodeParams,
    data: &[Gf],
    ctr: &mut OpCounter,
) -> Result<Codeword> {
    if params.shortened.is_some() {
        return Err(Error::MalformedInput(
            "shortened parameters need the shortened encoder",
        ));
    }
    if data.len() != params.k {
        return Err(Error::LengthMismatch { expected: params.k, got: data.len() });
    }
    let f = xctx.field();
    let t = params.t_cap;
    let mu = params.mu as usize;
    let mut acc = vec![Gf::ZERO; t];
    for b in 1..params.block_count {
        let beta = f.om(b * t);
        let block = &data[(b - 1) * t..b * t];
        let part = xctx.ifft(block, mu, beta, ctr)?;
        for (a, &p) in acc.iter_mut().zip(part.0.iter()) {
            *a = f.add(*a, p, ctr);
        }
    }
    let mut parity = acc;
    xctx.fft_into(&mut parity, mu, Gf::ZERO, ctr);

    let mut symbols = Vec::with_capacity(params.n);
    symbols.extend_from_slice(&parity);
    symbols.extend_from_slice(data);
    Ok(Codeword { symbols })
}

/// Precomputed solver for shortened systematic encoding. With the first
/// `2^m - n_short` positions pinned to zero, the parity block of the full
/// code must vanish; the 2t live symbols right after the pinned prefix are
/// solved to make that happen.
pub struct ShortenedSolver {
    /// Inverse of the map from the live parity positions to the would-be
    /// parity block.
    inv: Vec<Vec<Gf>>,
}

impl ShortenedSolver {
    pub fn new(xctx: &XbarCtx, params: &CodeParams) -> Result<ShortenedSolver> {
        let ns = params
            .shortened
            .ok_or(Error::MalformedInput("parameters are not shortened"))?;
        let f = xctx.field();
        let t = params.t_cap;
        let start = params.n - ns;
        let mut scratch = OpCounter::new();

        // would-be parity of a unit vector at each live parity position
        let mut cols: Vec<Vec<Gf>> = Vec::with_capacity(t);
        let full = CodeParams::new(params.m, params.mu)?;
        for j in 0..t {
            let mut data = vec![Gf::ZERO; full.k];
            data[start + j - t] = Gf::ONE;
            let cw = encode_systematic(xctx, &full, &data, &mut scratch)?;
            cols.push(cw.symbols[..t].to_vec());
        }
        let a: Vec<Vec<Gf>> = (0..t).map(|r| (0..t).map(|c| cols[c][r]).collect()).collect();
        let inv = crate::gf::invert_matrix(f, a)?;
        Ok(ShortenedSolver { inv })
    }

    /// Systematic shortened encoding: data occupies the tail, the solved
    /// parity the 2t positions before it, and everything earlier is zero.
    pub fn encode(
        &self,
        xctx: &XbarCtx,
        params: &CodeParams,
        data: &[Gf],
        ctr: &mut OpCounter,
    ) -> Result<Codeword> {
        let want = params.data_len();
        if data.len() != want {
            return Err(Error::LengthMismatch { expected: want, got: data.len() });
        }
        let f = xctx.field();
        let t = params.t_cap;
        let start = params.live_start();
        let full = CodeParams::new(params.m, params.mu)?;
        // mother data index = engine position - t_cap; the data tail begins
        // at engine position start + t_cap
        let mut mother_data = vec![Gf::ZERO; full.k];
        mother_data[start..].copy_from_slice(data);
        let would_be = encode_systematic(xctx, &full, &mother_data, ctr)?;
        let target = &would_be.symbols[..t];

        let mut parity = vec![Gf::ZERO; t];
        for (r, row) in self.inv.iter().enumerate() {
            let mut acc = Gf::ZERO;
            for (c, &mc) in row.iter().enumerate() {
                acc = f.add(acc, f.mul(mc, target[c], ctr), ctr);
            }
            parity[r] = acc;
        }

        let mut symbols = vec![Gf::ZERO; params.n];
        symbols[start..start + t].copy_from_slice(&parity);
        symbols[start + t..].copy_from_slice(data);
        Ok(Codeword { symbols })
    }
}

/// Apply an error pattern: `received[i] = symbols[i] ^ e_i`. Positions
/// below 2t violate the decoder's standing assumption and are rejected
/// unless `allow_low_positions` is set.
pub fn corrupt(
    params: &CodeParams,
    codeword: &Codeword,
    pattern: &ErrorPattern,
    allow_low_positions: bool,
) -> Result<Vec<Gf>> {
    if codeword.symbols.len() != params.n {
        return Err(Error::LengthMismatch { expected: params.n, got: codeword.symbols.len() });
    }
    let min = 2 * params.t;
    let mut out = codeword.symbols.clone();
    for &(i, v) in &pattern.entries {
        if i >= params.n {
            return Err(Error::IndexOutOfRange { index: i, limit: params.n });
        }
        if i < min && !allow_low_positions {
            return Err(Error::IndexViolation { index: i, min });
        }
        out[i] ^= v;
    }
    Ok(out)
}

/// The first `count` power sums `sum_j word_j * omega_j^i`, computed
/// column-wise; this is the direct route through the Vandermonde
/// parity-check matrix.
pub(crate) fn vandermonde_sums(
    field: &FieldCtx,
    word: &[Gf],
    count: usize,
    ctr: &mut OpCounter,
) -> Vec<Gf> {
    let mut sums = vec![Gf::ZERO; count];
    for (j, &w) in word.iter().enumerate() {
        let om = field.om(j);
        let mut term = w;
        sums[0] = field.add(sums[0], term, ctr);
        for s in sums.iter_mut().skip(1) {
            term = field.mul(term, om, ctr);
            *s = field.add(*s, term, ctr);
        }
    }
    sums
}

/// True iff the word lies in the code: all n - k rows of the Vandermonde
/// parity-check matrix annihilate it.
pub fn parity_check(field: &FieldCtx, params: &CodeParams, word: &[Gf]) -> Result<bool> {
    if word.len() != params.n {
        return Err(Error::LengthMismatch { expected: params.n, got: word.len() });
    }
    let mut scratch = OpCounter::new();
    let sums = vandermonde_sums(field, word, params.t_cap, &mut scratch);
    Ok(sums.iter().all(|s| s.is_zero()))
}
