//! Finite fields `GF(p^m)`, matrices over them, and enumerated small matrix
//! groups.
//!
//! This is the substrate for the character-table oracle: field arithmetic by
//! precomputed tables (`q ≤ 64`), dense matrix arithmetic, enumeration of
//! `GL_n`/`SL_n`/permutation groups with canonical element encodings,
//! transvections and their conjugacy class, conjugacy classes by orbit
//! closure, and subspace/flag enumeration for brute-force counts.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::qseries::{check_prime_power, gl_order};

/// Default cap on enumerated group orders.
pub const DEFAULT_GROUP_CAP: usize = 200_000;
/// Default cap on the field size.
pub const DEFAULT_FIELD_CAP: u64 = 64;

/// The finite field `GF(p^m)`, `q = p^m ≤ 64`.
///
/// Elements are indices `0..q` encoding polynomials over `F_p` digit-wise:
/// the element `Σ c_i x^i` is the index `Σ c_i p^i`; `0` and `1` are the
/// additive and multiplicative identities. All arithmetic is table-driven.
#[derive(Clone, Debug)]
pub struct FqField {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    /// Coefficients (length `m+1`, monic) of the irreducible modulus; for
    /// `m = 1` this is `[0, 1]` (the polynomial `x`), meaning plain `F_p`.
    pub modulus: Vec<u64>,
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
    neg: Vec<u8>,
    /// A fixed multiplicative generator.
    generator: u8,
    /// Discrete log base `generator`: `dlog[g^k] = k`; `dlog[0]` unused.
    dlog: Vec<u32>,
}

/// Multiplies two polynomial-coded elements directly (used only during table
/// construction).
fn poly_mul_mod(a: u64, b: u64, p: u64, m: u32, modulus: &[u64]) -> u64 {
    let digits = |mut v: u64| -> Vec<u64> {
        let mut d = vec![0u64; 2 * m as usize];
        for x in d.iter_mut() {
            *x = v % p;
            v /= p;
        }
        d
    };
    let da = digits(a);
    let db = digits(b);
    let mut prod = vec![0u64; 2 * m as usize + 1];
    for (i, &x) in da.iter().enumerate().take(m as usize) {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate().take(m as usize) {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // Reduce modulo the monic modulus.
    for d in (m as usize..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (k, &mc) in modulus.iter().enumerate().take(m as usize) {
            // x^d ≡ -Σ mc·x^{d-m+k}
            let idx = d - m as usize + k;
            prod[idx] = (prod[idx] + (p - mc % p) % p * c) % p;
        }
    }
    prod
        .iter()
        .take(m as usize)
        .rev()
        .fold(0u64, |acc, &c| acc * p + c)
}

fn is_irreducible(coeffs: &[u64], p: u64) -> bool {
    // Trial division by all monic polynomials of degree 1..deg/2.
    let deg = coeffs.len() - 1;
    for d in 1..=deg / 2 {
        // Iterate monic polys of degree d: d free coefficients.
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = vec![0u64; d + 1];
            let mut v = idx;
            for c in div.iter_mut().take(d) {
                *c = v % p;
                v /= p;
            }
            div[d] = 1;
            // Polynomial remainder of coeffs by div.
            let mut rem: Vec<u64> = coeffs.to_vec();
            for k in (d..rem.len()).rev() {
                let c = rem[k];
                if c == 0 {
                    continue;
                }
                rem[k] = 0;
                for (j, &dc) in div.iter().enumerate().take(d) {
                    let idx2 = k - d + j;
                    rem[idx2] = (rem[idx2] + (p - dc * c % p) % p) % p;
                }
            }
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FqField {
    /// Builds `GF(q)` for a prime power `q ≤ 64`, choosing the
    /// lexicographically smallest irreducible monic modulus.
    pub fn new(q: u64) -> Result<Self> {
        Self::with_cap(q, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(q: u64, cap: u64) -> Result<Self> {
        if q > cap {
            return Err(Error::limit(format!("field size {q} exceeds cap {cap}")));
        }
        let (p, m) = check_prime_power(q)?;
        let modulus: Vec<u64> = if m == 1 {
            vec![0, 1]
        } else {
            // Lexicographically smallest (by constant-first coefficient
            // tuple) irreducible monic polynomial of degree m.
            let mut found = None;
            'outer: for idx in 0..p.pow(m) {
                let mut coeffs = vec![0u64; m as usize + 1];
                let mut v = idx;
                for c in coeffs.iter_mut().take(m as usize) {
                    *c = v % p;
                    v /= p;
                }
                coeffs[m as usize] = 1;
                if coeffs[0] == 0 {
                    continue; // divisible by x
                }
                if is_irreducible(&coeffs, p) {
                    found = Some(coeffs);
                    break 'outer;
                }
            }
            found.ok_or_else(|| Error::internal("no irreducible modulus found"))?
        };
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..q {
            for b in 0..q {
                // Digit-wise addition mod p.
                let (mut x, mut y, mut pw, mut s) = (a, b, 1u64, 0u64);
                for _ in 0..m {
                    s += (x % p + y % p) % p * pw;
                    x /= p;
                    y /= p;
                    pw *= p;
                }
                add[(a * q + b) as usize] = s as u8;
                mul[(a * q + b) as usize] = poly_mul_mod(a, b, p, m, &modulus) as u8;
            }
        }
        for a in 0..q {
            // Negation: digit-wise p-complement.
            let (mut x, mut pw, mut s) = (a, 1u64, 0u64);
            for _ in 0..m {
                s += (p - x % p) % p * pw;
                x /= p;
                pw *= p;
            }
            neg[a as usize] = s as u8;
        }
        for a in 1..q {
            for b in 1..q {
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u8;
                    break;
                }
            }
            if inv[a as usize] == 0 {
                return Err(Error::internal("field element without inverse"));
            }
        }
        // Multiplicative generator and discrete logs.
        let mut generator = 0u8;
        let mut dlog = vec![0u32; qs];
        'gen: for g in 2..q.max(3) {
            if q == 2 {
                generator = 1;
                break;
            }
            let g = g % q;
            if g < 1 {
                continue;
            }
            let mut seen = vec![false; qs];
            let mut x = 1u64;
            let mut ord = 0u32;
            loop {
                if seen[x as usize] {
                    break;
                }
                seen[x as usize] = true;
                ord += 1;
                x = mul[(x * q + g) as usize] as u64;
                if x == 1 {
                    break;
                }
            }
            if ord as u64 == q - 1 {
                generator = g as u8;
                let mut x = 1u64;
                for k in 0..(q - 1) {
                    dlog[x as usize] = k as u32;
                    x = mul[(x * q + g) as usize] as u64;
                }
                break 'gen;
            }
        }
        if generator == 0 && q > 2 {
            return Err(Error::internal("no multiplicative generator found"));
        }
        Ok(FqField {
            p,
            m,
            q,
            modulus,
            add,
            mul,
            inv,
            neg,
            generator,
            dlog,
        })
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }
    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
    /// A fixed generator of the multiplicative group.
    pub fn generator(&self) -> u8 {
        self.generator
    }
    /// Discrete log base [`FqField::generator`]; `a` must be nonzero.
    pub fn dlog(&self, a: u8) -> u32 {
        debug_assert!(a != 0);
        self.dlog[a as usize]
    }
    /// All nonzero elements.
    pub fn units(&self) -> impl Iterator<Item = u8> + '_ {
        (1..self.q).map(|x| x as u8)
    }
}

/// A square matrix over a finite field; entries row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixFq {
    pub n: usize,
    pub entries: Vec<u8>,
}

impl MatrixFq {
    pub fn zero(n: usize) -> Self {
        MatrixFq {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mat_mul(&self, f: &FqField, other: &MatrixFq) -> MatrixFq {
        let n = self.n;
        debug_assert_eq!(n, other.n);
        let mut out = MatrixFq::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, b)));
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, f: &FqField, v: &[u8]) -> Vec<u8> {
        let n = self.n;
        let mut out = vec![0u8; n];
        for i in 0..n {
            let mut acc = 0u8;
            for (j, &x) in v.iter().enumerate() {
                if x != 0 {
                    acc = f.add(acc, f.mul(self.get(i, j), x));
                }
            }
            out[i] = acc;
        }
        out
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, f: &FqField) -> u8 {
        let n = self.n;
        let mut a = self.clone();
        let mut det = 1u8;
        for col in 0..n {
            let piv = (col..n).find(|&r| a.get(r, col) != 0);
            let piv = match piv {
                Some(p) => p,
                None => return 0,
            };
            if piv != col {
                for j in 0..n {
                    let tmp = a.get(col, j);
                    a.set(col, j, a.get(piv, j));
                    a.set(piv, j, tmp);
                }
                det = f.neg(det);
            }
            let pv = a.get(col, col);
            det = f.mul(det, pv);
            let pv_inv = f.inv(pv);
            for r in (col + 1)..n {
                let factor = f.mul(a.get(r, col), pv_inv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(a.get(r, j), f.mul(factor, a.get(col, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self, f: &FqField) -> usize {
        let n = self.n;
        let mut a = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            let piv = (row..n).find(|&r| a.get(r, col) != 0);
            let piv = match piv {
                Some(p) => p,
                None => continue,
            };
            for j in 0..n {
                let tmp = a.get(row, j);
                a.set(row, j, a.get(piv, j));
                a.set(piv, j, tmp);
            }
            let pv_inv = f.inv(a.get(row, col));
            for r in (row + 1)..n {
                let factor = f.mul(a.get(r, col), pv_inv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(a.get(r, j), f.mul(factor, a.get(row, j)));
                    a.set(r, j, v);
                }
            }
            rank += 1;
            row += 1;
            if row == n {
                break;
            }
        }
        rank
    }

    /// Inverse by Gauss–Jordan; `None` for singular matrices.
    pub fn inverse(&self, f: &FqField) -> Option<MatrixFq> {
        let n = self.n;
        let mut a = self.clone();
        let mut b = MatrixFq::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| a.get(r, col) != 0)?;
            if piv != col {
                for j in 0..n {
                    let t = a.get(col, j);
                    a.set(col, j, a.get(piv, j));
                    a.set(piv, j, t);
                    let t = b.get(col, j);
                    b.set(col, j, b.get(piv, j));
                    b.set(piv, j, t);
                }
            }
            let pv_inv = f.inv(a.get(col, col));
            for j in 0..n {
                a.set(col, j, f.mul(a.get(col, j), pv_inv));
                b.set(col, j, f.mul(b.get(col, j), pv_inv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(a.get(r, j), f.mul(factor, a.get(col, j)));
                    a.set(r, j, v);
                    let v = f.sub(b.get(r, j), f.mul(factor, b.get(col, j)));
                    b.set(r, j, v);
                }
            }
        }
        Some(b)
    }

    /// `g − I`.
    pub fn minus_identity(&self, f: &FqField) -> MatrixFq {
        let mut a = self.clone();
        for i in 0..self.n {
            let v = f.sub(a.get(i, i), 1);
            a.set(i, i, v);
        }
        a
    }

    /// `dim ker(g − I)`.
    pub fn fixed_space_dim(&self, f: &FqField) -> usize {
        self.n - self.minus_identity(f).rank(f)
    }

    /// Whether the first `k` standard basis vectors are fixed pointwise
    /// (columns `0..k` equal the identity's).
    pub fn fixes_first_k_coords(&self, k: usize) -> bool {
        for j in 0..k {
            for i in 0..self.n {
                let expect = u8::from(i == j);
                if self.get(i, j) != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant of the lower-right `(n−k)×(n−k)` block.
    pub fn lower_right_det(&self, f: &FqField, k: usize) -> u8 {
        let m = self.n - k;
        let mut b = MatrixFq::zero(m);
        for i in 0..m {
            for j in 0..m {
                b.set(i, j, self.get(k + i, k + j));
            }
        }
        b.det(f)
    }

    /// Canonical encoding: entries in row-major order, packed as base-`q`
    /// digits of a little-endian integer of fixed byte width per `(n, q)`.
    pub fn encode(&self, f: &FqField) -> Vec<u8> {
        encode_entries(&self.entries, f.q)
    }

    pub fn decode(f: &FqField, n: usize, bytes: &[u8]) -> MatrixFq {
        MatrixFq {
            n,
            entries: decode_entries(bytes, f.q, n * n),
        }
    }
}

/// Bits needed per entry for field size `q`.
fn bits_per_entry(q: u64) -> u32 {
    64 - (q - 1).leading_zeros()
}

/// Fixed encoded width in bytes for `count` entries over field size `q`.
pub fn encoded_width(q: u64, count: usize) -> usize {
    ((bits_per_entry(q) as usize * count) + 7) / 8
}

fn encode_entries(entries: &[u8], q: u64) -> Vec<u8> {
    let bits = bits_per_entry(q) as usize;
    let mut out = vec![0u8; encoded_width(q, entries.len())];
    let mut pos = 0usize;
    for &e in entries {
        for b in 0..bits {
            if (e >> b) & 1 == 1 {
                out[pos / 8] |= 1 << (pos % 8);
            }
            pos += 1;
        }
    }
    out
}

fn decode_entries(bytes: &[u8], q: u64, count: usize) -> Vec<u8> {
    let bits = bits_per_entry(q) as usize;
    let mut out = vec![0u8; count];
    let mut pos = 0usize;
    for e in out.iter_mut() {
        for b in 0..bits {
            if (bytes[pos / 8] >> (pos % 8)) & 1 == 1 {
                *e |= 1 << b;
            }
            pos += 1;
        }
    }
    out
}

/// The standard transvection: identity plus a single 1 in position (1,2).
pub fn transvection(n: usize, field: &FqField) -> Result<MatrixFq> {
    if n < 2 {
        return Err(Error::invalid("transvection requires n ≥ 2"));
    }
    let mut t = MatrixFq::identity(n);
    t.set(0, 1, 1);
    let _ = field;
    Ok(t)
}

/// All elements of the conjugacy class of the standard transvection:
/// matrices `I + v·wᵀ` with `v ≠ 0`, `w ≠ 0`, `wᵀv = 0`. The count is
/// `(q^n−1)(q^{n−1}−1)/(q−1)`.
pub fn enumerate_transvections(n: usize, field: &FqField) -> Result<Vec<MatrixFq>> {
    if n < 2 {
        return Err(Error::invalid("transvections require n ≥ 2"));
    }
    let q = field.q;
    let expected = (q.pow(n as u32) - 1) * (q.pow(n as u32 - 1) - 1) / (q - 1);
    if expected as usize > 4_000_000 {
        return Err(Error::limit(format!(
            "transvection class of size {expected} exceeds enumeration cap"
        )));
    }
    let mut out = Vec::with_capacity(expected as usize);
    // v over projective representatives (first nonzero coordinate = 1).
    let mut v = vec![0u8; n];
    loop {
        if let Some(first) = v.iter().position(|&x| x != 0) {
            if v[first] == 1 {
                // all w ≠ 0 with wᵀ v = 0
                let mut w = vec![0u8; n];
                'wloop: loop {
                    if w.iter().any(|&x| x != 0) {
                        let mut dot = 0u8;
                        for i in 0..n {
                            dot = field.add(dot, field.mul(w[i], v[i]));
                        }
                        if dot == 0 {
                            let mut g = MatrixFq::identity(n);
                            for i in 0..n {
                                if v[i] == 0 {
                                    continue;
                                }
                                for j in 0..n {
                                    if w[j] == 0 {
                                        continue;
                                    }
                                    let cur = g.get(i, j);
                                    g.set(i, j, field.add(cur, field.mul(v[i], w[j])));
                                }
                            }
                            out.push(g);
                        }
                    }
                    // increment w
                    for x in w.iter_mut() {
                        *x += 1;
                        if (*x as u64) < q {
                            continue 'wloop;
                        }
                        *x = 0;
                    }
                    break;
                }
            }
        }
        // increment v
        let mut carried = true;
        for x in v.iter_mut() {
            *x += 1;
            if (*x as u64) < q {
                carried = false;
                break;
            }
            *x = 0;
        }
        if carried {
            break;
        }
    }
    if out.len() != expected as usize {
        return Err(Error::internal("transvection class count mismatch"));
    }
    out.sort_by(|a, b| a.encode(field).cmp(&b.encode(field)));
    Ok(out)
}

/// Which family a [`GroupTable`] enumerates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupKind {
    Gl,
    Sl,
    /// The symmetric group `S_n` realized as permutation matrices (the field
    /// is taken to be `F_2`).
    Sym,
}

impl GroupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupKind::Gl => "GL",
            GroupKind::Sl => "SL",
            GroupKind::Sym => "Sym",
        }
    }
}

/// An enumerated matrix group with canonical, sorted element encodings.
pub struct GroupTable {
    pub kind: GroupKind,
    pub n: usize,
    pub field: FqField,
    /// Concatenated row-major entries, stride `n²`, in encoding-sorted order.
    mats: Vec<u8>,
    /// Sorted canonical encodings, stride [`GroupTable::enc_width`].
    encodings: Vec<u8>,
    enc_width: usize,
}

impl GroupTable {
    /// Enumerates `GL_n`, `SL_n`, or `S_n` over the given field under the
    /// default order cap.
    pub fn enumerate(kind: GroupKind, n: usize, field: &FqField) -> Result<GroupTable> {
        Self::enumerate_with_cap(kind, n, field, DEFAULT_GROUP_CAP)
    }

    pub fn enumerate_with_cap(
        kind: GroupKind,
        n: usize,
        field: &FqField,
        cap: usize,
    ) -> Result<GroupTable> {
        let order: BigInt = match kind {
            GroupKind::Gl => gl_order(n)?.evaluate(field.q)?,
            GroupKind::Sl => crate::qseries::sl_order(n)?.evaluate(field.q)?,
            GroupKind::Sym => (1..=n).fold(BigInt::one(), |a, k| a * k),
        };
        if order > BigInt::from(cap) {
            return Err(Error::limit(format!(
                "group order {order} exceeds group cap {cap}"
            )));
        }
        let mut mats: Vec<MatrixFq> = Vec::new();
        match kind {
            GroupKind::Sym => {
                if field.q != 2 {
                    return Err(Error::invalid("Sym tables use F_2 permutation matrices"));
                }
                let mut perm: Vec<usize> = (0..n).collect();
                permutations(&mut perm, 0, &mut |p| {
                    let mut m = MatrixFq::zero(n);
                    for (i, &pi) in p.iter().enumerate() {
                        m.set(pi, i, 1);
                    }
                    mats.push(m);
                });
            }
            GroupKind::Gl | GroupKind::Sl => {
                // Build invertible matrices row by row, each new row outside
                // the span of the previous rows.
                let mut rows: Vec<Vec<u8>> = Vec::new();
                enumerate_invertible(field, n, &mut rows, &mut |m| {
                    if kind == GroupKind::Gl || m.det(field) == 1 {
                        mats.push(m.clone());
                    }
                });
            }
        }
        if BigInt::from(mats.len()) != order {
            return Err(Error::internal("group enumeration count mismatch"));
        }
        let enc_width = encoded_width(field.q, n * n);
        let mut pairs: Vec<(Vec<u8>, MatrixFq)> =
            mats.into_iter().map(|m| (m.encode(field), m)).collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        pairs.dedup_by(|a, b| a.0 == b.0);
        if BigInt::from(pairs.len()) != order {
            return Err(Error::internal("duplicate elements in enumeration"));
        }
        let mut mats_flat = Vec::with_capacity(pairs.len() * n * n);
        let mut encodings = Vec::with_capacity(pairs.len() * enc_width);
        for (e, m) in &pairs {
            encodings.extend_from_slice(e);
            mats_flat.extend_from_slice(&m.entries);
        }
        Ok(GroupTable {
            kind,
            n,
            field: field.clone(),
            mats: mats_flat,
            encodings,
            enc_width,
        })
    }

    /// Reconstructs a table from cached parts (used by the disk cache).
    pub fn from_sorted_encodings(
        kind: GroupKind,
        n: usize,
        field: FqField,
        encodings: Vec<u8>,
    ) -> Result<GroupTable> {
        let enc_width = encoded_width(field.q, n * n);
        if enc_width == 0 || encodings.len() % enc_width != 0 {
            return Err(Error::invalid("bad encoding blob length"));
        }
        let count = encodings.len() / enc_width;
        let mut mats = Vec::with_capacity(count * n * n);
        for i in 0..count {
            let bytes = &encodings[i * enc_width..(i + 1) * enc_width];
            mats.extend_from_slice(&decode_entries(bytes, field.q, n * n));
        }
        Ok(GroupTable {
            kind,
            n,
            field,
            mats,
            encodings,
            enc_width,
        })
    }

    pub fn len(&self) -> usize {
        if self.enc_width == 0 {
            0
        } else {
            self.encodings.len() / self.enc_width
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn enc_width(&self) -> usize {
        self.enc_width
    }

    pub fn encoding(&self, ord: usize) -> &[u8] {
        &self.encodings[ord * self.enc_width..(ord + 1) * self.enc_width]
    }

    pub fn encodings_blob(&self) -> &[u8] {
        &self.encodings
    }

    /// The matrix at a given ordinal.
    pub fn matrix(&self, ord: usize) -> MatrixFq {
        let nn = self.n * self.n;
        MatrixFq {
            n: self.n,
            entries: self.mats[ord * nn..(ord + 1) * nn].to_vec(),
        }
    }

    #[inline]
    pub fn entries(&self, ord: usize) -> &[u8] {
        let nn = self.n * self.n;
        &self.mats[ord * nn..(ord + 1) * nn]
    }

    /// Ordinal of a matrix; `None` if not a member.
    pub fn index_of(&self, m: &MatrixFq) -> Option<usize> {
        let enc = m.encode(&self.field);
        self.index_of_encoding(&enc)
    }

    pub fn index_of_encoding(&self, enc: &[u8]) -> Option<usize> {
        let count = self.len();
        let (mut lo, mut hi) = (0usize, count);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.encoding(mid).cmp(enc) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Ordinal of the identity.
    pub fn identity_ord(&self) -> usize {
        self.index_of(&MatrixFq::identity(self.n))
            .expect("identity is a member")
    }

    /// Product of two elements by ordinal.
    pub fn mul_ord(&self, a: usize, b: usize) -> usize {
        let prod = self.matrix(a).mat_mul(&self.field, &self.matrix(b));
        self.index_of(&prod).expect("closed under products")
    }

    /// Inverse of an element by ordinal.
    pub fn inv_ord(&self, a: usize) -> usize {
        let inv = self
            .matrix(a)
            .inverse(&self.field)
            .expect("members are invertible");
        self.index_of(&inv).expect("closed under inverses")
    }

    /// A small generating set used for conjugacy orbit closure.
    pub fn conjugation_generators(&self) -> Vec<MatrixFq> {
        let n = self.n;
        let f = &self.field;
        let mut gens = Vec::new();
        match self.kind {
            GroupKind::Sym => {
                if n >= 2 {
                    let mut t = MatrixFq::identity(n);
                    t.set(0, 0, 0);
                    t.set(1, 1, 0);
                    t.set(0, 1, 1);
                    t.set(1, 0, 1);
                    gens.push(t);
                    let mut c = MatrixFq::zero(n);
                    for i in 0..n {
                        c.set((i + 1) % n, i, 1);
                    }
                    gens.push(c);
                }
            }
            GroupKind::Gl | GroupKind::Sl => {
                // Elementary transvections E_{ij}(g^t) for an F_p-basis of
                // F_q generate SL_n; a primitive diagonal extends to GL_n.
                let g = f.generator();
                for i in 0..n {
                    for j in 0..n {
                        if i == j {
                            continue;
                        }
                        let mut c = 1u8;
                        for _ in 0..f.m {
                            let mut e = MatrixFq::identity(n);
                            e.set(i, j, c);
                            gens.push(e);
                            c = f.mul(c, g);
                        }
                    }
                }
                if self.kind == GroupKind::Gl && f.q > 2 {
                    let mut d = MatrixFq::identity(n);
                    d.set(0, 0, g);
                    gens.push(d);
                }
            }
        }
        gens
    }
}

/// Conjugacy-class partition of a [`GroupTable`].
pub struct ConjugacyClasses {
    /// Class index of each ordinal.
    pub class_of: Vec<u32>,
    /// Minimal-ordinal representative of each class; class 0 is the
    /// identity class, the rest ascend by representative ordinal.
    pub reps: Vec<u32>,
    pub sizes: Vec<usize>,
    /// Member ordinals per class, ascending.
    pub elements: Vec<Vec<u32>>,
}

impl ConjugacyClasses {
    /// Default class-count cap (the Dixon solver refuses larger tables).
    pub const DEFAULT_CLASS_CAP: usize = 400;

    /// Computes the classes by orbit closure under conjugation by the
    /// table's generating set.
    pub fn compute(table: &GroupTable) -> Result<ConjugacyClasses> {
        Self::compute_with_cap(table, Self::DEFAULT_CLASS_CAP)
    }

    pub fn compute_with_cap(table: &GroupTable, cap: usize) -> Result<ConjugacyClasses> {
        let count = table.len();
        let gens = table.conjugation_generators();
        let gen_pairs: Vec<(MatrixFq, MatrixFq)> = gens
            .iter()
            .map(|g| {
                let gi = g.inverse(&table.field).expect("generators invertible");
                (g.clone(), gi)
            })
            .collect();
        let mut class_of = vec![u32::MAX; count];
        let mut reps: Vec<u32> = Vec::new();
        let mut elements: Vec<Vec<u32>> = Vec::new();
        for start in 0..count {
            if class_of[start] != u32::MAX {
                continue;
            }
            let cls = reps.len() as u32;
            if reps.len() + 1 > cap {
                return Err(Error::limit(format!("class count exceeds cap {cap}")));
            }
            reps.push(start as u32);
            let mut members = vec![start as u32];
            class_of[start] = cls;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let mx = table.matrix(x);
                for (g, gi) in &gen_pairs {
                    let y = g.mat_mul(&table.field, &mx).mat_mul(&table.field, gi);
                    let yo = table.index_of(&y).ok_or_else(|| {
                        Error::internal("conjugate escaped the group table")
                    })?;
                    if class_of[yo] == u32::MAX {
                        class_of[yo] = cls;
                        members.push(yo as u32);
                        stack.push(yo);
                    }
                }
            }
            members.sort_unstable();
            elements.push(members);
        }
        // Put the identity class first; keep others in representative order.
        let id_cls = class_of[table.identity_ord()] as usize;
        if id_cls != 0 {
            reps.swap(0, id_cls);
            elements.swap(0, id_cls);
            for c in class_of.iter_mut() {
                if *c as usize == id_cls {
                    *c = 0;
                } else if *c == 0 {
                    *c = id_cls as u32;
                }
            }
        }
        let sizes = elements.iter().map(|e| e.len()).collect();
        Ok(ConjugacyClasses {
            class_of,
            reps,
            sizes,
            elements,
        })
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }
}

fn permutations(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permutations(perm, k + 1, visit);
        perm.swap(k, i);
    }
    // Restore order for determinism of the outer loop.
    perm[k..].sort_unstable();
}

fn enumerate_invertible(
    field: &FqField,
    n: usize,
    rows: &mut Vec<Vec<u8>>,
    visit: &mut impl FnMut(&MatrixFq),
) {
    if rows.len() == n {
        let mut m = MatrixFq::zero(n);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        visit(&m);
        return;
    }
    // Echelon basis of the span of current rows, for membership tests.
    let span = Subspace::from_vectors(field, n, rows);
    let q = field.q;
    let mut v = vec![0u8; n];
    'next: loop {
        if v.iter().any(|&x| x != 0) && !span.contains_vector(field, &v) {
            rows.push(v.clone());
            enumerate_invertible(field, n, rows, visit);
            rows.pop();
        }
        for x in v.iter_mut() {
            *x += 1;
            if (*x as u64) < q {
                continue 'next;
            }
            *x = 0;
        }
        break;
    }
}

/// A subspace of `F_q^n` in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub n: usize,
    /// RREF basis rows; empty for the zero subspace.
    pub basis: Vec<Vec<u8>>,
    /// Pivot column of each basis row.
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Builds the row space of arbitrary vectors.
    pub fn from_vectors(field: &FqField, n: usize, vecs: &[Vec<u8>]) -> Subspace {
        let mut s = Subspace {
            n,
            basis: Vec::new(),
            pivots: Vec::new(),
        };
        for v in vecs {
            s.insert(field, v.clone());
        }
        s
    }

    /// Inserts a vector, keeping RREF; returns whether the dimension grew.
    pub fn insert(&mut self, field: &FqField, mut v: Vec<u8>) -> bool {
        for (row, &piv) in self.basis.iter().zip(&self.pivots) {
            if v[piv] != 0 {
                let c = v[piv];
                for j in 0..self.n {
                    v[j] = field.sub(v[j], field.mul(c, row[j]));
                }
            }
        }
        let piv = match v.iter().position(|&x| x != 0) {
            Some(p) => p,
            None => return false,
        };
        let inv = field.inv(v[piv]);
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
        // Eliminate the new pivot from existing rows, then insert sorted.
        for row in self.basis.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for j in 0..self.n {
                    row[j] = field.sub(row[j], field.mul(c, v[j]));
                }
            }
        }
        let at = self
            .pivots
            .iter()
            .position(|&p| p > piv)
            .unwrap_or(self.pivots.len());
        self.basis.insert(at, v);
        self.pivots.insert(at, piv);
        true
    }

    pub fn contains_vector(&self, field: &FqField, v: &[u8]) -> bool {
        let mut v = v.to_vec();
        for (row, &piv) in self.basis.iter().zip(&self.pivots) {
            if v[piv] != 0 {
                let c = v[piv];
                for j in 0..self.n {
                    v[j] = field.sub(v[j], field.mul(c, row[j]));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, field: &FqField, other: &Subspace) -> bool {
        other
            .basis
            .iter()
            .all(|v| self.contains_vector(field, v))
    }

    /// Whether `m · V = V`.
    pub fn is_invariant_under(&self, field: &FqField, m: &MatrixFq) -> bool {
        self.basis
            .iter()
            .all(|v| self.contains_vector(field, &m.apply(field, v)))
    }
}

/// All `k`-dimensional subspaces of `F_q^n`, enumerated as RREF matrices.
pub struct SubspaceSet {
    subspaces: Vec<Subspace>,
}

impl SubspaceSet {
    pub fn enumerate(field: &FqField, n: usize, k: usize) -> SubspaceSet {
        let mut subspaces = Vec::new();
        if k > n {
            return SubspaceSet { subspaces };
        }
        // Choose pivot columns, then fill free entries: entry (i, j) is free
        // iff j > pivot_i and j is not a pivot column.
        let mut pivots: Vec<usize> = Vec::new();
        fn choose(
            field: &FqField,
            n: usize,
            k: usize,
            start: usize,
            pivots: &mut Vec<usize>,
            out: &mut Vec<Subspace>,
        ) {
            if pivots.len() == k {
                fill(field, n, pivots, out);
                return;
            }
            for c in start..n {
                pivots.push(c);
                choose(field, n, k, c + 1, pivots, out);
                pivots.pop();
            }
        }
        fn fill(field: &FqField, n: usize, pivots: &[usize], out: &mut Vec<Subspace>) {
            let k = pivots.len();
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pivots = pivots.to_vec();
                    (0..n).filter_map(move |j| {
                        (j > pivots[i] && !pivots.contains(&j)).then_some((i, j))
                    })
                })
                .collect();
            let q = field.q;
            let mut values = vec![0u8; free.len()];
            'next: loop {
                let mut basis = vec![vec![0u8; n]; k];
                for (i, &p) in pivots.iter().enumerate() {
                    basis[i][p] = 1;
                }
                for (&(i, j), &v) in free.iter().zip(&values) {
                    basis[i][j] = v;
                }
                out.push(Subspace {
                    n,
                    basis,
                    pivots: pivots.to_vec(),
                });
                for x in values.iter_mut() {
                    *x += 1;
                    if (*x as u64) < q {
                        continue 'next;
                    }
                    *x = 0;
                }
                break;
            }
        }
        choose(field, n, k, 0, &mut pivots, &mut subspaces);
        SubspaceSet { subspaces }
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subspace> {
        self.subspaces.iter()
    }
}

/// Counts elements by fixed-space dimension; index `d` holds the number of
/// group elements `g` with `dim ker(g−I) = d`.
pub fn fixed_space_histogram(table: &GroupTable) -> Vec<usize> {
    let mut hist = vec![0usize; table.n + 1];
    for ord in 0..table.len() {
        let d = table.matrix(ord).fixed_space_dim(&table.field);
        hist[d] += 1;
    }
    hist
}

/// Orders of all class representatives and their least common multiple
/// (the exponent of the group).
pub fn group_exponent(table: &GroupTable, classes: &ConjugacyClasses) -> u64 {
    let mut exponent = 1u64;
    for &rep in &classes.reps {
        let mut x = rep as usize;
        let id = table.identity_ord();
        let mut ord = 1u64;
        while x != id {
            x = table.mul_ord(x, rep as usize);
            ord += 1;
        }
        exponent = num_integer::lcm(exponent, ord);
    }
    exponent
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_axioms_gf4_gf8_gf9() {
        for q in [4u64, 8, 9] {
            let f = FqField::new(q).unwrap();
            for a in 0..q as u8 {
                for b in 0..q as u8 {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q as u8 {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
            // Generator has full multiplicative order.
            let g = f.generator();
            let mut x = 1u8;
            for k in 0..(q - 1) {
                assert_eq!(f.dlog(x), k as u32);
                x = f.mul(x, g);
            }
            assert_eq!(x, 1);
        }
    }

    #[test]
    fn transvection_properties() {
        for (n, q) in [(2usize, 3u64), (3, 2), (3, 3), (4, 2)] {
            let f = FqField::new(q).unwrap();
            let t = transvection(n, &f).unwrap();
            assert_eq!(t.det(&f), 1);
            let ti = t.minus_identity(&f);
            assert_eq!(ti.rank(&f), 1);
            assert!(ti.mat_mul(&f, &ti).entries.iter().all(|&x| x == 0));
            assert_eq!(t.fixed_space_dim(&f), n - 1);
        }
        let f = FqField::new(3).unwrap();
        assert!(transvection(1, &f).is_err());
        // Explicit matrices.
        let t = transvection(2, &f).unwrap();
        assert_eq!(t.entries, vec![1, 1, 0, 1]);
    }

    #[test]
    fn transvection_class_counts() {
        // (2, F_3) → 8 elements; (3, F_2) → 21.
        let f3 = FqField::new(3).unwrap();
        let c = enumerate_transvections(2, &f3).unwrap();
        assert_eq!(c.len(), 8);
        let f2 = FqField::new(2).unwrap();
        let c = enumerate_transvections(3, &f2).unwrap();
        assert_eq!(c.len(), 21);
        for g in &c {
            assert_eq!(g.det(&f2), 1);
            let gi = g.minus_identity(&f2);
            assert_eq!(gi.rank(&f2), 1);
            assert!(gi.mat_mul(&f2, &gi).entries.iter().all(|&x| x == 0));
        }
        // Leading term of the count is q^{2n−2}: check the exact formula.
        for (n, q) in [(2u32, 3u64), (3, 2), (3, 3)] {
            let f = FqField::new(q).unwrap();
            let c = enumerate_transvections(n as usize, &f).unwrap();
            let expected = (q.pow(n) - 1) * (q.pow(n - 1) - 1) / (q - 1);
            assert_eq!(c.len() as u64, expected);
        }
    }

    #[test]
    fn group_orders() {
        let f3 = FqField::new(3).unwrap();
        let gl23 = GroupTable::enumerate(GroupKind::Gl, 2, &f3).unwrap();
        assert_eq!(gl23.len(), 48);
        let f2 = FqField::new(2).unwrap();
        let sl32 = GroupTable::enumerate(GroupKind::Sl, 3, &f2).unwrap();
        assert_eq!(sl32.len(), 168);
        let s4 = GroupTable::enumerate(GroupKind::Sym, 4, &f2).unwrap();
        assert_eq!(s4.len(), 24);
    }

    #[test]
    fn group_closure_random_pairs() {
        let f3 = FqField::new(3).unwrap();
        let g = GroupTable::enumerate(GroupKind::Sl, 2, &f3).unwrap();
        let n = g.len();
        // Deterministic pseudo-random pair sample.
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..1000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (state >> 33) as usize % n;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = (state >> 33) as usize % n;
            let _ = g.mul_ord(a, b); // panics if not present
        }
        // Inverses present.
        for a in 0..n {
            let ai = g.inv_ord(a);
            assert_eq!(g.mul_ord(a, ai), g.identity_ord());
        }
    }

    #[test]
    fn conjugacy_partition() {
        let f2 = FqField::new(2).unwrap();
        let g = GroupTable::enumerate(GroupKind::Sl, 3, &f2).unwrap();
        let cls = ConjugacyClasses::compute(&g).unwrap();
        // GL_3(F_2) has 6 conjugacy classes: 1, 21 (transvections), 42, 56, 24, 24.
        assert_eq!(cls.class_count(), 6);
        let total: usize = cls.sizes.iter().sum();
        assert_eq!(total, 168);
        assert_eq!(cls.sizes[0], 1);
        let mut sizes = cls.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 21, 24, 24, 42, 56]);
        // Partition property: class_of consistent with elements lists.
        for (c, members) in cls.elements.iter().enumerate() {
            for &m in members {
                assert_eq!(cls.class_of[m as usize] as usize, c);
            }
        }
        // The transvection's class has the right size.
        let t = transvection(3, &f2).unwrap();
        let t_ord = g.index_of(&t).unwrap();
        assert_eq!(cls.sizes[cls.class_of[t_ord] as usize], 21);
    }

    #[test]
    fn exponent_and_classes_s4() {
        let f2 = FqField::new(2).unwrap();
        let s4 = GroupTable::enumerate(GroupKind::Sym, 4, &f2).unwrap();
        let cls = ConjugacyClasses::compute(&s4).unwrap();
        assert_eq!(cls.class_count(), 5);
        let mut sizes = cls.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(group_exponent(&s4, &cls), 12);
    }

    #[test]
    fn subspace_counts_match_gauss_binomial() {
        use crate::qseries::gauss_binomial;
        for n in 1..=5usize {
            for k in 0..=n.min(3) {
                for q in [2u64, 3, 4, 5] {
                    if q.pow(n as u32) > 700 {
                        continue;
                    }
                    let f = FqField::new(q).unwrap();
                    let s = SubspaceSet::enumerate(&f, n, k);
                    assert_eq!(
                        BigInt::from(s.len()),
                        gauss_binomial(n, k).evaluate(q).unwrap(),
                        "n={n} k={k} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn fixed_space_mass() {
        // Fraction of fixed-point-free elements is positive; complement is
        // 1 − O(1/q). Exact values recorded for the two walk oracle groups.
        let f2 = FqField::new(2).unwrap();
        let sl32 = GroupTable::enumerate(GroupKind::Sl, 3, &f2).unwrap();
        let h = fixed_space_histogram(&sl32);
        assert!(h[0] > 0);
        assert_eq!(h.iter().sum::<usize>(), 168);
        // Exactly the two order-7 classes act without eigenvalue 1 here.
        assert_eq!(h[0], 48);

        let f3 = FqField::new(3).unwrap();
        let sl33 = GroupTable::enumerate(GroupKind::Sl, 3, &f3).unwrap();
        let h = fixed_space_histogram(&sl33);
        assert!(h[0] > 0);
        assert_eq!(h.iter().sum::<usize>(), 5616);
    }

    #[test]
    fn encoding_roundtrip_sizes() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = FqField::new(q).unwrap();
            for n in 1..=3usize {
                let mut m = MatrixFq::identity(n);
                if n >= 2 {
                    m.set(0, 1, (q - 1) as u8);
                }
                let enc = m.encode(&f);
                assert_eq!(enc.len(), encoded_width(q, n * n));
                assert_eq!(MatrixFq::decode(&f, n, &enc), m);
            }
        }
    }

    proptest! {
        #[test]
        fn rank_subadditivity_products_of_transvections(l in 1usize..5, seed in any::<u64>()) {
            // fixed_space_dim(product of l transvections) ≥ n − l.
            let f = FqField::new(3).unwrap();
            let n = 3;
            let class = enumerate_transvections(n, &f).unwrap();
            let mut state = seed | 1;
            let mut prod = MatrixFq::identity(n);
            for _ in 0..l {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let c = &class[(state >> 33) as usize % class.len()];
                prod = prod.mat_mul(&f, c);
            }
            prop_assert!(prod.fixed_space_dim(&f) + l >= n);
        }
    }
}
