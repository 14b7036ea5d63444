//! Instrumented arithmetic over GF(2^m), 2 <= m <= 16.
//!
//! Elements are m-bit values interpreted as coordinates over a configurable
//! GF(2)-basis `{v_0, ..., v_{m-1}}`. Addition is XOR; multiplication goes
//! through log/antilog tables built at construction time. Every public
//! arithmetic operation takes an [`OpCounter`] so callers can account for
//! field work exactly: one counter tick per multiplication, addition, or
//! inversion actually performed. Multiplications that never happen because a
//! formula carries a structural constant 0 or 1 are neither performed nor
//! counted; multiplications whose operands merely *happen* to be 0 or 1 at
//! run time are both performed and counted.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An element of GF(2^m), stored as an m-bit value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf(pub u16);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl core::ops::BitXor for Gf {
    type Output = Gf;
    /// Uncounted XOR, for bookkeeping outside instrumented scopes.
    #[inline]
    fn bitxor(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

impl core::ops::BitXorAssign for Gf {
    #[inline]
    fn bitxor_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

impl core::fmt::Display for Gf {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Per-invocation tally of field operations.
///
/// A counter belongs to exactly one running operation; never share one
/// across concurrently executing scopes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub mul: u64,
    pub add: u64,
    pub inv: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fold another counter into this one.
    pub fn absorb(&mut self, other: &OpCounter) {
        self.mul += other.mul;
        self.add += other.add;
        self.inv += other.inv;
    }
}

/// Carry-less multiplication of two GF(2)[x] polynomials followed by
/// reduction; only used while building the tables.
fn clmul_reduce(a: u32, b: u32, poly: u32, m: u32) -> u16 {
    let mut acc: u32 = 0;
    for bit in 0..m {
        if (b >> bit) & 1 == 1 {
            acc ^= a << bit;
        }
    }
    // reduce modulo the (m+1)-bit polynomial
    for bit in (m..2 * m).rev() {
        if (acc >> bit) & 1 == 1 {
            acc ^= poly << (bit - m);
        }
    }
    acc as u16
}

/// Degree of a nonzero GF(2)[x] polynomial given as a bitmask.
fn poly_degree(p: u32) -> u32 {
    31 - p.leading_zeros()
}

/// Remainder of GF(2)[x] division.
fn poly_mod(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Trial division up to degree m/2 over GF(2).
fn is_irreducible(poly: u32, m: u32) -> bool {
    if poly >> m != 1 {
        return false;
    }
    if poly & 1 == 0 {
        // divisible by x
        return false;
    }
    for d in 1..=(m / 2) {
        for low in 0..(1u32 << d) {
            let divisor = (1u32 << d) | low;
            if poly_mod(poly, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Field context: reduction polynomial, basis, and the precomputed tables
/// everything else leans on. Immutable after construction; share freely.
pub struct FieldCtx {
    m: u32,
    reduction_poly: u32,
    basis: Vec<Gf>,
    /// log[a] for a != 0, base the discovered generator.
    log: Vec<u16>,
    /// exp[i] = g^i for i in 0..2*order, so products need no modular fold.
    exp: Vec<Gf>,
    order: u32,
    /// s_j(v_j) for j = 0..m-1, and their inverses.
    norms: Vec<Gf>,
    norms_inv: Vec<Gf>,
    /// Rows of the inverse basis matrix: bit j of the index is the parity of
    /// `index_rows[j] & element`.
    index_rows: Vec<u16>,
    /// True when omega is the identity bit-reinterpretation.
    identity_basis: bool,
}

impl FieldCtx {
    /// Field with the default power basis v_j = x^j mod `reduction_poly`.
    pub fn new(m: u32, reduction_poly: u32) -> Result<FieldCtx> {
        if !(2..=16).contains(&m) {
            return Err(Error::MalformedInput("extension degree m must be in 2..=16"));
        }
        let basis = (0..m).map(|j| Gf(1u16 << j)).collect();
        Self::with_basis(m, reduction_poly, basis)
    }

    /// The paper-scale default: GF(2^8) with x^8 + x^4 + x^3 + x^2 + 1.
    pub fn gf256() -> FieldCtx {
        Self::new(8, 0x11D).expect("default GF(2^8) parameters are valid")
    }

    /// GF(2^7) with x^7 + x + 1.
    pub fn gf128() -> FieldCtx {
        Self::new(7, 0x83).expect("default GF(2^7) parameters are valid")
    }

    /// Field over an explicit basis (must be linearly independent).
    pub fn with_basis(m: u32, reduction_poly: u32, basis: Vec<Gf>) -> Result<FieldCtx> {
        if !(2..=16).contains(&m) {
            return Err(Error::MalformedInput("extension degree m must be in 2..=16"));
        }
        if !is_irreducible(reduction_poly, m) {
            return Err(Error::MalformedInput("reduction polynomial is not irreducible"));
        }
        if basis.len() != m as usize {
            return Err(Error::LengthMismatch { expected: m as usize, got: basis.len() });
        }
        let order = (1u32 << m) - 1;

        // Find a multiplicative generator; x itself works only for
        // primitive reduction polynomials.
        let factors = prime_factors(order);
        let pow = |base: u16, mut e: u32| -> u16 {
            let mut acc: u16 = 1;
            let mut b = base;
            while e > 0 {
                if e & 1 == 1 {
                    acc = clmul_reduce(acc as u32, b as u32, reduction_poly, m);
                }
                b = clmul_reduce(b as u32, b as u32, reduction_poly, m);
                e >>= 1;
            }
            acc
        };
        let mut generator = 0u16;
        for cand in 2..(1u16 << m) {
            if factors.iter().all(|&p| pow(cand, order / p) != 1) {
                generator = cand;
                break;
            }
        }
        debug_assert!(generator != 0);

        let mut exp = vec![Gf::ZERO; 2 * order as usize];
        let mut log = vec![0u16; 1usize << m];
        let mut acc: u16 = 1;
        for i in 0..order as usize {
            exp[i] = Gf(acc);
            exp[i + order as usize] = Gf(acc);
            log[acc as usize] = i as u16;
            acc = clmul_reduce(acc as u32, generator as u32, reduction_poly, m);
        }
        if acc != 1 {
            return Err(Error::MalformedInput("generator search failed"));
        }

        // Check basis independence and build the inverse bit-matrix by
        // Gauss-Jordan elimination on (basis | identity).
        let mut rows: Vec<(u16, u16)> =
            basis.iter().enumerate().map(|(j, v)| (v.0, 1u16 << j)).collect();
        let mut index_rows = vec![0u16; m as usize];
        let mut used = vec![false; m as usize];
        for col in 0..m as usize {
            let pivot = (0..m as usize)
                .find(|&r| !used[r] && (rows[r].0 >> col) & 1 == 1)
                .ok_or(Error::MalformedInput("basis elements are linearly dependent"))?;
            used[pivot] = true;
            let (pv, pi) = rows[pivot];
            for r in 0..m as usize {
                if r != pivot && (rows[r].0 >> col) & 1 == 1 {
                    rows[r].0 ^= pv;
                    rows[r].1 ^= pi;
                }
            }
        }
        // Ascending-column Gauss-Jordan leaves each pivot row as a unit
        // vector; its combination mask expresses that unit in basis
        // elements: e_c = sum over mask_c of v_s. Writing an element in
        // unit bits and regrouping gives the coordinate functionals as the
        // transpose: i_s = parity over c of elem_c & mask_c[s].
        let mut unit_masks = vec![0u16; m as usize];
        for col in 0..m as usize {
            let row = (0..m as usize)
                .find(|&r| rows[r].0 == 1u16 << col)
                .ok_or(Error::MalformedInput("basis elements are linearly dependent"))?;
            unit_masks[col] = rows[row].1;
        }
        for s in 0..m as usize {
            for (c, &mask) in unit_masks.iter().enumerate() {
                index_rows[s] |= ((mask >> s) & 1) << c;
            }
        }

        let identity_basis = basis.iter().enumerate().all(|(j, v)| v.0 == 1u16 << j);

        let mut ctx = FieldCtx {
            m,
            reduction_poly,
            basis,
            log,
            exp,
            order,
            norms: Vec::new(),
            norms_inv: Vec::new(),
            index_rows,
            identity_basis,
        };

        // Subspace-polynomial norms s_j(v_j), bootstrapped level by level.
        let mut norms: Vec<Gf> = Vec::with_capacity(m as usize);
        for j in 0..m as usize {
            let mut y = ctx.basis[j];
            for &norm in norms.iter() {
                let t = y ^ norm;
                y = ctx.mul_nocount(y, t);
            }
            if y.is_zero() {
                return Err(Error::MalformedInput("subspace norm vanished; basis is degenerate"));
            }
            norms.push(y);
        }
        ctx.norms_inv = norms.iter().map(|&x| ctx.inv_nocount(x).unwrap()).collect();
        ctx.norms = norms;
        Ok(ctx)
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of field elements, 2^m.
    #[inline]
    pub fn size(&self) -> usize {
        1usize << self.m
    }

    #[inline]
    pub fn reduction_poly(&self) -> u32 {
        self.reduction_poly
    }

    #[inline]
    pub fn basis(&self) -> &[Gf] {
        &self.basis
    }

    /// s_j(v_j), the normalizing constants of the subspace polynomials.
    #[inline]
    pub fn norm(&self, j: usize) -> Gf {
        self.norms[j]
    }

    #[inline]
    pub(crate) fn norm_inv(&self, j: usize) -> Gf {
        self.norms_inv[j]
    }

    /// Counted addition (XOR).
    #[inline]
    pub fn add(&self, a: Gf, b: Gf, ctr: &mut OpCounter) -> Gf {
        ctr.add += 1;
        a ^ b
    }

    /// Counted multiplication.
    #[inline]
    pub fn mul(&self, a: Gf, b: Gf, ctr: &mut OpCounter) -> Gf {
        ctr.mul += 1;
        self.mul_nocount(a, b)
    }

    #[inline]
    pub(crate) fn mul_nocount(&self, a: Gf, b: Gf) -> Gf {
        if a.is_zero() || b.is_zero() {
            return Gf::ZERO;
        }
        self.exp[self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize]
    }

    /// Counted inversion. Inversions are tallied separately from
    /// multiplications.
    #[inline]
    pub fn inv(&self, a: Gf, ctr: &mut OpCounter) -> Result<Gf> {
        ctr.inv += 1;
        self.inv_nocount(a).ok_or(Error::ZeroInversion)
    }

    #[inline]
    pub(crate) fn inv_nocount(&self, a: Gf) -> Option<Gf> {
        if a.is_zero() {
            return None;
        }
        Some(self.exp[(self.order - self.log[a.0 as usize] as u32) as usize])
    }

    /// The i-th enumeration element: omega_i = sum of basis elements
    /// selected by the bits of i.
    pub fn omega(&self, i: usize) -> Result<Gf> {
        if i >= self.size() {
            return Err(Error::IndexOutOfRange { index: i, limit: self.size() });
        }
        Ok(self.om(i))
    }

    #[inline]
    pub(crate) fn om(&self, i: usize) -> Gf {
        debug_assert!(i < self.size());
        if self.identity_basis {
            return Gf(i as u16);
        }
        let mut acc = Gf::ZERO;
        let mut bits = i;
        let mut j = 0;
        while bits != 0 {
            if bits & 1 == 1 {
                acc ^= self.basis[j];
            }
            bits >>= 1;
            j += 1;
        }
        acc
    }

    /// Inverse of [`FieldCtx::omega`].
    pub fn omega_index(&self, x: Gf) -> usize {
        if self.identity_basis {
            return x.0 as usize;
        }
        let mut idx = 0usize;
        for (j, &row) in self.index_rows.iter().enumerate() {
            idx |= (((row & x.0).count_ones() & 1) as usize) << j;
        }
        idx
    }

    /// Value of the degree-2^j subspace polynomial
    /// s_j(x) = prod_{i<2^j} (x - omega_i), via the linearized recurrence
    /// s_{j+1}(x) = s_j(x) * (s_j(x) + s_j(v_j)).
    pub fn subspace_eval(&self, j: usize, x: Gf, ctr: &mut OpCounter) -> Gf {
        debug_assert!(j <= self.m as usize);
        let mut y = x;
        for lvl in 0..j {
            let t = self.add(y, self.norms[lvl], ctr);
            y = self.mul(y, t, ctr);
        }
        y
    }
}

/// Gauss-Jordan inversion over the field; uncounted construction-time
/// helper shared by the table builders.
pub(crate) fn invert_matrix(field: &FieldCtx, mut a: Vec<Vec<Gf>>) -> Result<Vec<Vec<Gf>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Gf>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { Gf::ONE } else { Gf::ZERO }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::MalformedInput("singular matrix"))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let piv_inv = field.inv_nocount(a[col][col]).unwrap();
        for c in 0..n {
            a[col][c] = field.mul_nocount(a[col][c], piv_inv);
            inv[col][c] = field.mul_nocount(inv[col][c], piv_inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col];
                for c in 0..n {
                    let ta = field.mul_nocount(factor, a[col][c]);
                    a[r][c] = a[r][c] ^ ta;
                    let ti = field.mul_nocount(factor, inv[col][c]);
                    inv[r][c] = inv[r][c] ^ ti;
                }
            }
        }
    }
    Ok(inv)
}
