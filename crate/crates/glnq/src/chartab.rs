//! Exact character tables of the enumerated groups, tensor-rank analysis,
//! and restriction from `GL_n` to `SL_n`.
//!
//! The table engine is the classical Dixon–Schneider method: the class-algebra
//! structure constants are diagonalized over a prime field `F_ℓ` with
//! `ℓ ≡ 1 (mod exponent(G))`, dimensions are recovered from the modular
//! orthogonality relation, and character values are lifted to exact cyclotomic
//! integers by a discrete Fourier transform of the modular power map. Every
//! table is verified against exact Schur orthogonality before being returned.
//!
//! On top of the tables sit: the `k`-fold matrix-space permutation character
//! `g ↦ q^{k·dim ker(g−I)}`, the three tensor-rank notions (first occurrence
//! in a tensor power, its determinant-twist minimization, and the
//! fixed-subspace stabilizer criterion), the tensor-power filtration check,
//! Clifford-style restriction reports `GL_n → SL_n`, and the symmetric-group
//! oracle (Young permutation modules, Specht labels, induced-product
//! decompositions) realized with the same engine on permutation matrices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matgroup::{ConjugacyClasses, FqField, GroupKind, GroupTable, MatrixFq, SubspaceSet};
use crate::partitions::Partition;
use crate::qseries::cyclotomic_polynomial;

// ---------------------------------------------------------------------------
// Cyclotomic integers
// ---------------------------------------------------------------------------

/// An element of `Z[ζ_e]`, stored as a sparse integer combination of powers
/// of `ζ_e`. The representation is not canonical; equality and integrality
/// tests go through reduction modulo the `e`-th cyclotomic polynomial in the
/// owning [`CycRing`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cyc {
    /// Exponent (mod the ring order) → integer coefficient; zero
    /// coefficients are never stored.
    pub terms: BTreeMap<u32, i128>,
}

impl Cyc {
    pub fn is_trivially_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The ring `Z[ζ_e]` for a fixed root-of-unity order `e`; owns the reduction
/// polynomial used for exactness checks.
#[derive(Clone, Debug)]
pub struct CycRing {
    pub order: u32,
    /// Coefficients of the `order`-th cyclotomic polynomial (monic).
    phi: Vec<BigInt>,
}

impl CycRing {
    pub fn new(order: u32) -> Result<CycRing> {
        if order == 0 {
            return Err(Error::invalid("root-of-unity order must be positive"));
        }
        if order > 10_000 {
            return Err(Error::limit(format!(
                "root-of-unity order {order} exceeds the cyclotomic cap"
            )));
        }
        let p = cyclotomic_polynomial(order as usize);
        let deg = p.degree().unwrap_or(0);
        let phi = (0..=deg).map(|i| p.coeff(i)).collect();
        Ok(CycRing { order, phi })
    }

    pub fn zero(&self) -> Cyc {
        Cyc::default()
    }

    pub fn from_int(&self, v: i128) -> Cyc {
        let mut terms = BTreeMap::new();
        if v != 0 {
            terms.insert(0, v);
        }
        Cyc { terms }
    }

    /// `ζ^k` with any integer exponent.
    pub fn root(&self, k: i64) -> Cyc {
        let e = self.order as i64;
        let k = ((k % e) + e) % e;
        let mut terms = BTreeMap::new();
        terms.insert(k as u32, 1);
        Cyc { terms }
    }

    fn add_term(terms: &mut BTreeMap<u32, i128>, e: u32, c: i128) {
        if c == 0 {
            return;
        }
        let slot = terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            terms.remove(&e);
        }
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let mut terms = a.terms.clone();
        for (&e, &c) in &b.terms {
            Self::add_term(&mut terms, e, c);
        }
        Cyc { terms }
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let mut terms = a.terms.clone();
        for (&e, &c) in &b.terms {
            Self::add_term(&mut terms, e, -c);
        }
        Cyc { terms }
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let mut terms = BTreeMap::new();
        for (&ea, &ca) in &a.terms {
            for (&eb, &cb) in &b.terms {
                let e = (ea + eb) % self.order;
                Self::add_term(&mut terms, e, ca * cb);
            }
        }
        Cyc { terms }
    }

    pub fn scale(&self, a: &Cyc, s: i128) -> Cyc {
        if s == 0 {
            return self.zero();
        }
        Cyc {
            terms: a.terms.iter().map(|(&e, &c)| (e, c * s)).collect(),
        }
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self, a: &Cyc) -> Cyc {
        let mut terms = BTreeMap::new();
        for (&e, &c) in &a.terms {
            let e2 = (self.order - e % self.order) % self.order;
            Self::add_term(&mut terms, e2, c);
        }
        Cyc { terms }
    }

    pub fn pow(&self, a: &Cyc, k: usize) -> Cyc {
        let mut acc = self.from_int(1);
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Remainder of the dense coefficient vector modulo the cyclotomic
    /// polynomial; result has length `deg Φ`.
    fn rem_by_phi(&self, mut dense: Vec<BigInt>) -> Vec<BigInt> {
        let deg = self.phi.len() - 1;
        if dense.len() < deg + 1 {
            dense.resize(deg.max(1), BigInt::zero());
            return dense;
        }
        for d in (deg..dense.len()).rev() {
            if dense[d].is_zero() {
                continue;
            }
            let c = core::mem::replace(&mut dense[d], BigInt::zero());
            for (k, pc) in self.phi.iter().enumerate().take(deg) {
                let delta = &c * pc;
                dense[d - deg + k] -= delta;
            }
        }
        dense.truncate(deg.max(1));
        dense
    }

    fn to_dense(&self, a: &Cyc) -> Vec<BigInt> {
        let mut dense = vec![BigInt::zero(); self.order as usize];
        for (&e, &c) in &a.terms {
            dense[(e % self.order) as usize] += BigInt::from(c);
        }
        dense
    }

    pub fn is_zero(&self, a: &Cyc) -> bool {
        if a.terms.is_empty() {
            return true;
        }
        self.rem_by_phi(self.to_dense(a)).iter().all(BigInt::is_zero)
    }

    pub fn equal(&self, a: &Cyc, b: &Cyc) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    /// The value as a rational integer, when it is one.
    pub fn to_integer(&self, a: &Cyc) -> Option<BigInt> {
        let red = self.rem_by_phi(self.to_dense(a));
        if red.iter().skip(1).all(BigInt::is_zero) {
            Some(red[0].clone())
        } else {
            None
        }
    }

    /// Same integrality test for a dense `BigInt` coefficient vector.
    pub fn dense_to_integer(&self, dense: Vec<BigInt>) -> Option<BigInt> {
        let red = self.rem_by_phi(dense);
        if red.iter().skip(1).all(BigInt::is_zero) {
            Some(red[0].clone())
        } else {
            None
        }
    }

    /// Reduces a dense rational coefficient vector modulo `Φ`, returning the
    /// value when it is rational.
    pub fn dense_to_rational(&self, mut dense: Vec<BigRational>) -> Option<BigRational> {
        let deg = self.phi.len() - 1;
        if dense.len() >= deg + 1 {
            for d in (deg..dense.len()).rev() {
                if dense[d].is_zero() {
                    continue;
                }
                let c = core::mem::replace(&mut dense[d], BigRational::zero());
                for (k, pc) in self.phi.iter().enumerate().take(deg) {
                    let delta = &c * BigRational::from(pc.clone());
                    dense[d - deg + k] -= delta;
                }
            }
            dense.truncate(deg.max(1));
        }
        if dense.iter().skip(1).all(BigRational::is_zero) {
            Some(dense.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// Embeds into a ring whose order is a multiple of this one's.
    pub fn embed(&self, a: &Cyc, target: &CycRing) -> Result<Cyc> {
        if target.order % self.order != 0 {
            return Err(Error::invalid("embedding requires a divisible order"));
        }
        let factor = target.order / self.order;
        Ok(Cyc {
            terms: a
                .terms
                .iter()
                .map(|(&e, &c)| ((e % self.order) * factor, c))
                .collect(),
        })
    }

    /// Numerical value as a complex number (for bound curves only; all
    /// equality logic is exact).
    pub fn to_complex(&self, a: &Cyc) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        let e = self.order as f64;
        for (&t, &c) in &a.terms {
            let theta = 2.0 * core::f64::consts::PI * (t as f64) / e;
            re += c as f64 * libm::cos(theta);
            im += c as f64 * libm::sin(theta);
        }
        (re, im)
    }
}

// ---------------------------------------------------------------------------
// Modular arithmetic helpers
// ---------------------------------------------------------------------------

#[inline]
fn mod_mul(a: u64, b: u64, l: u64) -> u64 {
    ((a as u128 * b as u128) % l as u128) as u64
}

fn mod_pow(mut b: u64, mut e: u64, l: u64) -> u64 {
    let mut acc = 1u64;
    b %= l;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, b, l);
        }
        b = mod_mul(b, b, l);
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, l: u64) -> u64 {
    mod_pow(a, l - 2, l)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn isqrt(n: u64) -> u64 {
    let mut r = libm::sqrt(n as f64) as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Smallest primitive root modulo a prime `l`.
fn primitive_root(l: u64) -> Result<u64> {
    let mut factors = Vec::new();
    let mut m = l - 1;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    'cand: for g in 2..l {
        for &f in &factors {
            if mod_pow(g, (l - 1) / f, l) == 1 {
                continue 'cand;
            }
        }
        return Ok(g);
    }
    Err(Error::internal("no primitive root found"))
}

/// Reduced row echelon form of `rows` over `F_l`; returns (rref rows, pivot
/// columns). Zero rows are dropped.
fn rref(mut rows: Vec<Vec<u64>>, l: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let piv = (rank..rows.len()).find(|&r| rows[r][col] % l != 0);
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        rows.swap(rank, piv);
        let inv = mod_inv(rows[rank][col] % l, l);
        for x in rows[rank].iter_mut() {
            *x = mod_mul(*x, inv, l);
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col];
            for c in 0..cols {
                let sub = mod_mul(factor, rows[rank][c], l);
                rows[r][c] = (rows[r][c] + l - sub) % l;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Basis of the right nullspace of the square matrix `m` (row-major) over
/// `F_l`, returned as rref-style rows.
fn nullspace(m: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let s = m.len();
    let (r, pivots) = rref(m.to_vec(), l);
    let mut basis = Vec::new();
    let is_pivot = |c: usize| pivots.contains(&c);
    for free in 0..s {
        if is_pivot(free) {
            continue;
        }
        let mut v = vec![0u64; s];
        v[free] = 1;
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = (l - row[free] % l) % l;
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Character tables
// ---------------------------------------------------------------------------

/// An exact character table.
///
/// Classes are indexed as in the owning [`ConjugacyClasses`] (identity class
/// first). Irreps are sorted by `(dimension, lexicographic value vector)`.
pub struct CharacterTable {
    pub ring: CycRing,
    /// Exponent of the group (the root-of-unity order of `ring`).
    pub exponent: u64,
    /// Ordinal of a representative of each class.
    pub class_reps: Vec<u32>,
    pub class_sizes: Vec<usize>,
    pub dims: Vec<u64>,
    /// `values[irrep][class]`.
    pub values: Vec<Vec<Cyc>>,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn irrep_count(&self) -> usize {
        self.dims.len()
    }

    pub fn group_order(&self) -> u64 {
        self.class_sizes.iter().map(|&s| s as u64).sum()
    }

    pub fn value(&self, irrep: usize, class: usize) -> &Cyc {
        &self.values[irrep][class]
    }

    /// Index of the (unique) trivial character.
    pub fn trivial_irrep(&self) -> usize {
        let one = self.ring.from_int(1);
        for i in 0..self.irrep_count() {
            if self.dims[i] == 1 && self.values[i].iter().all(|v| self.ring.equal(v, &one)) {
                return i;
            }
        }
        unreachable!("every table contains the trivial character")
    }
}

/// Verifies exact row orthogonality `Σ_C |C| χ_i(C) conj(χ_j(C)) = |G| δ_ij`
/// for every pair of rows.
pub fn verify_orthogonality(ct: &CharacterTable) -> Result<()> {
    let order = BigInt::from(ct.group_order());
    for i in 0..ct.irrep_count() {
        for j in i..ct.irrep_count() {
            let mut acc = ct.ring.zero();
            for c in 0..ct.class_count() {
                let prod = ct
                    .ring
                    .mul(ct.value(i, c), &ct.ring.conj(ct.value(j, c)));
                acc = ct.ring.add(&acc, &ct.ring.scale(&prod, ct.class_sizes[c] as i128));
            }
            let val = ct.ring.to_integer(&acc).ok_or_else(|| {
                Error::internal("orthogonality sum is not a rational integer")
            })?;
            let expected = if i == j { order.clone() } else { BigInt::zero() };
            if val != expected {
                return Err(Error::internal(format!(
                    "orthogonality failed for rows {i}, {j}: got {val}"
                )));
            }
        }
    }
    Ok(())
}

/// Computes the exact character table of an enumerated group by the
/// Dixon–Schneider method.
pub fn character_table(table: &GroupTable, classes: &ConjugacyClasses) -> Result<CharacterTable> {
    let r = classes.class_count();
    if r > ConjugacyClasses::DEFAULT_CLASS_CAP {
        return Err(Error::limit(format!(
            "class count {r} exceeds cap {}",
            ConjugacyClasses::DEFAULT_CLASS_CAP
        )));
    }
    let order = table.len() as u64;
    let class_reps = classes.reps.clone();
    let class_sizes = classes.sizes.clone();
    if r == 1 {
        // The trivial group.
        let ring = CycRing::new(1)?;
        let values = vec![vec![ring.from_int(1)]];
        return Ok(CharacterTable {
            ring,
            exponent: 1,
            class_reps,
            class_sizes,
            dims: vec![1],
            values,
        });
    }
    let e = crate::matgroup::group_exponent(table, classes);
    let ring = CycRing::new(e as u32)?;

    // Modular prime: l ≡ 1 (mod e), l > 2√|G| (so dimensions and lifted
    // multiplicities are determined uniquely).
    let mut l = 0u64;
    let mut k = 1u64;
    loop {
        let cand = k * e + 1;
        if cand > 2 * isqrt(order) + 1 && is_prime(cand) {
            l = cand;
            break;
        }
        k += 1;
        if k > 1_000_000 {
            break;
        }
    }
    if l == 0 {
        return Err(Error::internal("modular prime search failed"));
    }

    // Inverse-class map.
    let jstar: Vec<usize> = (0..r)
        .map(|j| classes.class_of[table.inv_ord(class_reps[j] as usize)] as usize)
        .collect();

    // Split the class algebra into one-dimensional common eigenspaces,
    // computing class matrices lazily.
    let mut spaces: Vec<Vec<Vec<u64>>> = {
        let mut id = vec![vec![0u64; r]; r];
        for (t, row) in id.iter_mut().enumerate() {
            row[t] = 1;
        }
        vec![id]
    };
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        // Class matrix A_i: A[j][k] = #{x in C_i : x^{-1} g_k in C_j}.
        let mut a = vec![vec![0u64; r]; r];
        for &x in &classes.elements[i] {
            let xinv = table
                .matrix(x as usize)
                .inverse(&table.field)
                .ok_or_else(|| Error::internal("class element not invertible"))?;
            for (kk, &rep) in class_reps.iter().enumerate() {
                let y = xinv.mat_mul(&table.field, &table.matrix(rep as usize));
                let yo = table
                    .index_of(&y)
                    .ok_or_else(|| Error::internal("product escaped the group"))?;
                a[classes.class_of[yo] as usize][kk] += 1;
            }
        }
        let mut next = Vec::new();
        for basis in spaces.drain(..) {
            let s = basis.len();
            if s == 1 {
                next.push(basis);
                continue;
            }
            // Restricted matrix R with A·b_t = Σ_u R[u][t] b_u, read off the
            // rref pivots of the basis.
            let (basis, pivots) = rref(basis, l);
            let s = basis.len();
            let mut rmat = vec![vec![0u64; s]; s];
            for t in 0..s {
                let mut w = vec![0u64; r];
                for (j, wj) in w.iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for kk in 0..r {
                        acc = (acc + mod_mul(a[j][kk] % l, basis[t][kk], l)) % l;
                    }
                    *wj = acc;
                }
                // Coordinates from pivot entries, then verify the residual.
                let coords: Vec<u64> = pivots.iter().map(|&p| w[p]).collect();
                for (j, &wj) in w.iter().enumerate() {
                    let mut rec = 0u64;
                    for (u, row) in basis.iter().enumerate() {
                        rec = (rec + mod_mul(coords[u], row[j], l)) % l;
                    }
                    if rec != wj {
                        return Err(Error::internal(
                            "class matrix does not preserve an eigenspace",
                        ));
                    }
                }
                for (u, &c) in coords.iter().enumerate() {
                    rmat[u][t] = c;
                }
            }
            let mut split_total = 0usize;
            for lam in 0..l {
                let mut shifted = rmat.clone();
                for (t, row) in shifted.iter_mut().enumerate() {
                    row[t] = (row[t] + l - lam) % l;
                }
                let ns = nullspace(&shifted, l);
                if ns.is_empty() {
                    continue;
                }
                // Map back to ambient coordinates.
                let ambient: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|v| {
                        let mut w = vec![0u64; r];
                        for (u, &c) in v.iter().enumerate() {
                            for (j, wj) in w.iter_mut().enumerate() {
                                *wj = (*wj + mod_mul(c, basis[u][j], l)) % l;
                            }
                        }
                        w
                    })
                    .collect();
                split_total += ambient.len();
                let (amb, _) = rref(ambient, l);
                next.push(amb);
                if split_total == s {
                    break;
                }
            }
            if split_total != s {
                return Err(Error::internal("eigenspace splitting lost dimensions"));
            }
        }
        spaces = next;
    }
    if !spaces.iter().all(|s| s.len() == 1) || spaces.len() != r {
        return Err(Error::internal(
            "class algebra did not split into one-dimensional eigenspaces",
        ));
    }

    // Modular characters and dimensions from each eigenvector.
    let inv_sizes: Vec<u64> = class_sizes.iter().map(|&n| mod_inv(n as u64 % l, l)).collect();
    let mut modular: Vec<(u64, Vec<u64>)> = Vec::new(); // (dim, χ_l per class)
    for sp in &spaces {
        let mut v = sp[0].clone();
        if v[0] == 0 {
            return Err(Error::internal("eigenvector vanishes at the identity class"));
        }
        let scale = mod_inv(v[0], l);
        for x in v.iter_mut() {
            *x = mod_mul(*x, scale, l);
        }
        // d² · Σ_i v_i v_{i*} / n_i ≡ |G|.
        let mut c = 0u64;
        for i in 0..r {
            let t = mod_mul(mod_mul(v[i], v[jstar[i]], l), inv_sizes[i], l);
            c = (c + t) % l;
        }
        let target = order % l;
        let mut dim = 0u64;
        for d in 1..=isqrt(order) {
            if mod_mul(mod_mul(d % l, d % l, l), c, l) == target {
                if dim != 0 {
                    return Err(Error::internal("ambiguous dimension recovery"));
                }
                dim = d;
            }
        }
        if dim == 0 {
            return Err(Error::internal("dimension recovery failed"));
        }
        let chi: Vec<u64> = (0..r)
            .map(|i| mod_mul(mod_mul(dim % l, v[i], l), inv_sizes[i], l))
            .collect();
        modular.push((dim, chi));
    }

    // Power maps: class of g_j^s for s in 0..e.
    let id = table.identity_ord();
    let mut power_class = vec![vec![0usize; e as usize]; r];
    for j in 0..r {
        let mut x = id;
        for s in 0..e as usize {
            power_class[j][s] = classes.class_of[x] as usize;
            x = table.mul_ord(x, class_reps[j] as usize);
        }
    }

    // Lift to cyclotomic values by inverse DFT of the modular power map.
    let w = primitive_root(l)?;
    let z = mod_pow(w, (l - 1) / e, l);
    let mut zpow = vec![0u64; e as usize];
    let mut acc = 1u64;
    for zp in zpow.iter_mut() {
        *zp = acc;
        acc = mod_mul(acc, z, l);
    }
    let e_inv = mod_inv(e % l, l);
    let mut rows: Vec<(u64, Vec<Cyc>)> = Vec::new();
    for (dim, chi) in &modular {
        let mut vals = Vec::with_capacity(r);
        for j in 0..r {
            let mut terms = BTreeMap::new();
            for t in 0..e as usize {
                let mut s_acc = 0u64;
                for s in 0..e as usize {
                    // z^{-ts} = z^{e - (ts mod e)}
                    let idx = (e as usize - (t * s) % e as usize) % e as usize;
                    s_acc = (s_acc + mod_mul(chi[power_class[j][s]], zpow[idx], l)) % l;
                }
                let m = mod_mul(s_acc, e_inv, l);
                if m == 0 {
                    continue;
                }
                if m > *dim {
                    return Err(Error::internal(
                        "lifted eigenvalue multiplicity out of range",
                    ));
                }
                terms.insert(t as u32, m as i128);
            }
            vals.push(Cyc { terms });
        }
        rows.push((*dim, vals));
    }

    // Deterministic order: by dimension, then lexicographic value vector.
    rows.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            for (x, y) in a.1.iter().zip(&b.1) {
                match x.terms.cmp(&y.terms) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            Ordering::Equal
        })
    });
    let dims: Vec<u64> = rows.iter().map(|(d, _)| *d).collect();
    let values: Vec<Vec<Cyc>> = rows.into_iter().map(|(_, v)| v).collect();

    let ct = CharacterTable {
        ring,
        exponent: e,
        class_reps,
        class_sizes,
        dims,
        values,
    };
    // Sanity: dimension sum, identity column, exact orthogonality.
    let sq: u64 = ct.dims.iter().map(|&d| d * d).sum();
    if sq != order {
        return Err(Error::internal("dimension squares do not sum to |G|"));
    }
    for i in 0..ct.irrep_count() {
        let d = ct.ring.from_int(ct.dims[i] as i128);
        if !ct.ring.equal(ct.value(i, 0), &d) {
            return Err(Error::internal("identity column disagrees with dimensions"));
        }
    }
    verify_orthogonality(&ct)?;
    Ok(ct)
}

// ---------------------------------------------------------------------------
// Group bundle
// ---------------------------------------------------------------------------

/// A group together with its class data and exact character table.
pub struct GroupData {
    pub table: GroupTable,
    pub classes: ConjugacyClasses,
    pub chars: CharacterTable,
}

impl GroupData {
    pub fn new(kind: GroupKind, n: usize, q: u64) -> Result<GroupData> {
        let field = FqField::new(q)?;
        let table = GroupTable::enumerate(kind, n, &field)?;
        let classes = ConjugacyClasses::compute(&table)?;
        let chars = character_table(&table, &classes)?;
        Ok(GroupData {
            table,
            classes,
            chars,
        })
    }

    pub fn order(&self) -> u64 {
        self.table.len() as u64
    }

    /// Class index of the standard transvection.
    pub fn transvection_class(&self) -> Result<usize> {
        let t = crate::matgroup::transvection(self.table.n, &self.table.field)?;
        let ord = self
            .table
            .index_of(&t)
            .ok_or_else(|| Error::invalid("transvection not a member of this group"))?;
        Ok(self.classes.class_of[ord] as usize)
    }

    /// `dim ker(g−I)` per class.
    pub fn class_fixed_dims(&self) -> Vec<usize> {
        self.classes
            .reps
            .iter()
            .map(|&rep| self.table.matrix(rep as usize).fixed_space_dim(&self.table.field))
            .collect()
    }

    /// Discrete log of `det` per class (zero for determinant one).
    pub fn class_det_dlogs(&self) -> Vec<u32> {
        self.classes
            .reps
            .iter()
            .map(|&rep| {
                let d = self.table.matrix(rep as usize).det(&self.table.field);
                if self.table.field.q == 2 {
                    0
                } else {
                    self.table.field.dlog(d)
                }
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Tensor rank
// ---------------------------------------------------------------------------

/// Character value of the `k`-fold tensor power of the matrix-space
/// representation: `q^{k · dim ker(g−I)}`.
pub fn omega_tensor_character(field: &FqField, g: &MatrixFq, k: usize) -> BigInt {
    BigInt::from(field.q).pow((k * g.fixed_space_dim(field)) as u32)
}

/// Exact multiplicity `⟨class_fn, χ_irrep⟩` of an irreducible inside an
/// arbitrary exact class function.
pub fn multiplicity(ct: &CharacterTable, class_fn: &[Cyc], irrep: usize) -> Result<BigInt> {
    let mut acc = ct.ring.zero();
    for c in 0..ct.class_count() {
        let prod = ct
            .ring
            .mul(&class_fn[c], &ct.ring.conj(ct.value(irrep, c)));
        acc = ct.ring.add(&acc, &ct.ring.scale(&prod, ct.class_sizes[c] as i128));
    }
    let total = ct
        .ring
        .to_integer(&acc)
        .ok_or_else(|| Error::internal("inner product is not a rational integer"))?;
    let order = BigInt::from(ct.group_order());
    let (quot, rem) = num_integer::Integer::div_rem(&total, &order);
    if !rem.is_zero() {
        return Err(Error::internal("inner product is not an integer multiple of |G|"));
    }
    if quot.is_negative() {
        return Err(Error::internal("negative multiplicity"));
    }
    Ok(quot)
}

/// Minimum `k ≤ n` such that the class function occurs in the `k`-th tensor
/// power of the matrix-space representation.
pub fn min_tensor_power_containing(gd: &GroupData, class_fn: &[Cyc]) -> Result<usize> {
    let n = gd.table.n;
    let q = gd.table.field.q;
    let fixed = gd.class_fixed_dims();
    let ct = &gd.chars;
    for k in 0..=n {
        // Inner product with g ↦ q^{k·fixdim(g)} accumulated densely so the
        // weights can exceed machine range without issue.
        let mut dense = vec![BigInt::zero(); ct.ring.order as usize];
        for c in 0..ct.class_count() {
            let weight = BigInt::from(ct.class_sizes[c]) * BigInt::from(q).pow((k * fixed[c]) as u32);
            for (&t, &m) in &ct.ring.conj(&class_fn[c]).terms {
                dense[(t % ct.ring.order) as usize] += &weight * BigInt::from(m);
            }
        }
        let total = ct
            .ring
            .dense_to_integer(dense)
            .ok_or_else(|| Error::internal("tensor-power inner product not rational"))?;
        let order = BigInt::from(ct.group_order());
        let (quot, rem) = num_integer::Integer::div_rem(&total, &order);
        if !rem.is_zero() {
            return Err(Error::internal("tensor-power inner product not integral"));
        }
        if quot.is_positive() {
            return Ok(k);
        }
        if quot.is_negative() {
            return Err(Error::internal("negative tensor-power multiplicity"));
        }
    }
    Err(Error::internal(
        "irreducible missing from the full tensor power",
    ))
}

/// Strict tensor rank of an irrep: first tensor power of the matrix-space
/// representation containing it.
pub fn strict_rank(gd: &GroupData, irrep: usize) -> Result<usize> {
    min_tensor_power_containing(gd, &gd.chars.values[irrep])
}

/// Determinant-twist characters available for rank minimization: for `GL`
/// these are the `q−1` powers of a fixed linear character of the determinant;
/// for `SL` (and `Sym`) only the identity twist.
fn twist_count(gd: &GroupData) -> usize {
    match gd.table.kind {
        GroupKind::Gl => (gd.table.field.q - 1) as usize,
        GroupKind::Sl | GroupKind::Sym => 1,
    }
}

fn twisted_values(gd: &GroupData, irrep: usize, t: usize) -> Result<Vec<Cyc>> {
    let ct = &gd.chars;
    let q = gd.table.field.q;
    if t == 0 {
        return Ok(ct.values[irrep].clone());
    }
    if ct.ring.order % (q - 1) as u32 != 0 {
        return Err(Error::internal("group exponent not divisible by q−1"));
    }
    let step = ct.ring.order / (q - 1) as u32;
    let dlogs = gd.class_det_dlogs();
    Ok((0..ct.class_count())
        .map(|c| {
            let tw = ct.ring.root((step as i64) * (t as i64) * (dlogs[c] as i64));
            ct.ring.mul(ct.value(irrep, c), &tw)
        })
        .collect())
}

/// Tensor rank: the strict rank minimized over determinant twists.
pub fn rank(gd: &GroupData, irrep: usize) -> Result<usize> {
    let mut best = usize::MAX;
    for t in 0..twist_count(gd) {
        let vals = twisted_values(gd, irrep, t)?;
        best = best.min(min_tensor_power_containing(gd, &vals)?);
    }
    Ok(best)
}

/// Per-class counts `cnt[c][k]` of elements in class `c` that fix the first
/// `k` standard basis vectors pointwise.
fn stabilizer_counts(gd: &GroupData) -> Vec<Vec<i128>> {
    let n = gd.table.n;
    let r = gd.classes.class_count();
    let mut cnt = vec![vec![0i128; n + 1]; r];
    for ord in 0..gd.table.len() {
        let m = gd.table.matrix(ord);
        let mut lead = 0usize;
        while lead < n && m.fixes_first_k_coords(lead + 1) {
            lead += 1;
        }
        let c = gd.classes.class_of[ord] as usize;
        for k in 0..=lead {
            cnt[c][k] += 1;
        }
    }
    cnt
}

/// Strict rank via the stabilizer subgroups `H_k` (invariant-vector
/// criterion): the first `k` with a nonzero character sum over `H_k`.
pub fn rank_via_hk(gd: &GroupData, irrep: usize) -> Result<usize> {
    let counts = stabilizer_counts(gd);
    let ct = &gd.chars;
    for k in 0..=gd.table.n {
        let mut acc = ct.ring.zero();
        for c in 0..ct.class_count() {
            acc = ct
                .ring
                .add(&acc, &ct.ring.scale(ct.value(irrep, c), counts[c][k]));
        }
        if !ct.ring.is_zero(&acc) {
            return Ok(k);
        }
    }
    Err(Error::internal("no stabilizer subgroup sees this irrep"))
}

/// Tensor rank via `H_k` (eigenvector criterion): the first `k` admitting a
/// nonzero character sum against some linear character of `H_k` factoring
/// through the determinant of the complementary block.
pub fn rank_via_hk_eigen(gd: &GroupData, irrep: usize) -> Result<usize> {
    let counts = stabilizer_counts(gd);
    let ct = &gd.chars;
    let q = gd.table.field.q;
    let twists = twist_count(gd);
    let dlogs = gd.class_det_dlogs();
    let step = if twists > 1 {
        if ct.ring.order % (q - 1) as u32 != 0 {
            return Err(Error::internal("group exponent not divisible by q−1"));
        }
        ct.ring.order / (q - 1) as u32
    } else {
        0
    };
    for k in 0..=gd.table.n {
        for t in 0..twists {
            let mut acc = ct.ring.zero();
            for c in 0..ct.class_count() {
                // For h fixing the first k coordinates, det of the
                // lower-right block equals det h, so the twist only sees the
                // class determinant.
                let mut v = ct.ring.scale(ct.value(irrep, c), counts[c][k]);
                if t > 0 {
                    let tw = ct
                        .ring
                        .root(-((step as i64) * (t as i64) * (dlogs[c] as i64)));
                    v = ct.ring.mul(&v, &tw);
                }
                acc = ct.ring.add(&acc, &v);
            }
            if !ct.ring.is_zero(&acc) {
                return Ok(k);
            }
        }
    }
    Err(Error::internal("no stabilizer subgroup sees this irrep"))
}

/// Per-irrep rank summary.
#[derive(Clone, Debug)]
pub struct RankEntry {
    pub dim: u64,
    pub strict_rank: usize,
    pub rank: usize,
    pub rank_via_hk: usize,
    pub rank_via_hk_eigen: usize,
    pub char_at_t: Cyc,
}

pub struct RankReport {
    pub entries: Vec<RankEntry>,
}

/// Computes all four rank quantities and the transvection character value
/// for every irrep.
pub fn rank_report(gd: &GroupData) -> Result<RankReport> {
    let t_class = gd.transvection_class()?;
    let mut entries = Vec::new();
    for i in 0..gd.chars.irrep_count() {
        entries.push(RankEntry {
            dim: gd.chars.dims[i],
            strict_rank: strict_rank(gd, i)?,
            rank: rank(gd, i)?,
            rank_via_hk: rank_via_hk(gd, i)?,
            rank_via_hk_eigen: rank_via_hk_eigen(gd, i)?,
            char_at_t: gd.chars.value(i, t_class).clone(),
        });
    }
    Ok(RankReport { entries })
}

/// Exact character ratio `χ(T)/dim` for an irrep whose transvection value is
/// rational (always the case for `n ≥ 3`, and for `GL_2`).
pub fn character_ratio_at_transvection(gd: &GroupData, irrep: usize) -> Result<BigRational> {
    let t_class = gd.transvection_class()?;
    let v = gd
        .chars
        .ring
        .to_integer(gd.chars.value(irrep, t_class))
        .ok_or_else(|| Error::unsupported("transvection character value is irrational"))?;
    Ok(BigRational::new(v, BigInt::from(gd.chars.dims[irrep])))
}

/// Result of checking the tensor-power filtration
/// `Ĝ(ω) ⊊ Ĝ(ω^{⊗2}) ⊊ … = Ĝ`.
#[derive(Clone, Debug)]
pub struct FiltrationReport {
    /// `stage_counts[k−1]` = number of irreps of strict rank ≤ k.
    pub stage_counts: Vec<usize>,
    pub strictly_increasing: bool,
    pub exhaustive: bool,
}

pub fn filtration_check(gd: &GroupData) -> Result<FiltrationReport> {
    let n = gd.table.n;
    let mut ranks = Vec::new();
    for i in 0..gd.chars.irrep_count() {
        ranks.push(strict_rank(gd, i)?);
    }
    let stage_counts: Vec<usize> = (1..=n)
        .map(|k| ranks.iter().filter(|&&r| r <= k).count())
        .collect();
    let strictly_increasing = stage_counts.windows(2).all(|w| w[0] < w[1]);
    let exhaustive = *stage_counts.last().unwrap() == gd.chars.irrep_count();
    Ok(FiltrationReport {
        stage_counts,
        strictly_increasing,
        exhaustive,
    })
}

// ---------------------------------------------------------------------------
// Restriction GL → SL
// ---------------------------------------------------------------------------

/// Restriction analysis of a `GL_n(F_q)` table to the matching `SL_n(F_q)`.
#[derive(Clone, Debug)]
pub struct RestrictionReport {
    /// Per GL irrep: `(SL irrep index, multiplicity)` constituents.
    pub constituents: Vec<Vec<(usize, u64)>>,
    /// All multiplicities are 0 or 1.
    pub multiplicity_free: bool,
    /// GL irreps with equal restriction spectra differ by a determinant
    /// twist.
    pub twist_equivalence: bool,
    /// Each restriction has exactly as many constituents as the order of the
    /// twist stabilizer of the irrep; in particular it is irreducible iff no
    /// nontrivial twist fixes the irrep.
    pub twist_criterion: bool,
    /// Every SL irrep appears, and its fiber of GL irreps is a single orbit
    /// of the twist action of the expected size.
    pub fibers_single_orbit: bool,
    /// `(reducible restrictions, total GL irreps)` — logged, not asserted.
    pub reducible: (usize, usize),
}

pub fn restrict_to_sl(gl: &GroupData, sl: &GroupData) -> Result<RestrictionReport> {
    if gl.table.kind != GroupKind::Gl || sl.table.kind != GroupKind::Sl {
        return Err(Error::invalid("restriction expects a GL table and an SL table"));
    }
    if gl.table.n != sl.table.n || gl.table.field.q != sl.table.field.q {
        return Err(Error::invalid("restriction requires matching n and q"));
    }
    let q = gl.table.field.q;
    // SL element orders divide GL element orders, so the SL values embed
    // into the GL cyclotomic ring.
    if gl.chars.ring.order % sl.chars.ring.order != 0 {
        return Err(Error::internal("SL exponent does not divide GL exponent"));
    }
    let ring = &gl.chars.ring;
    // Map each SL class into its GL class.
    let sl_to_gl: Vec<usize> = sl
        .classes
        .reps
        .iter()
        .map(|&rep| {
            let m = sl.table.matrix(rep as usize);
            let ord = gl
                .table
                .index_of(&m)
                .ok_or_else(|| Error::internal("SL element missing from GL table"))?;
            Ok(gl.classes.class_of[ord] as usize)
        })
        .collect::<Result<_>>()?;
    let sl_order = BigInt::from(sl.order());

    // Embedded SL character values on SL classes.
    let sl_values: Vec<Vec<Cyc>> = (0..sl.chars.irrep_count())
        .map(|s| {
            (0..sl.chars.class_count())
                .map(|c| sl.chars.ring.embed(sl.chars.value(s, c), ring))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;

    let mut constituents: Vec<Vec<(usize, u64)>> = Vec::new();
    let mut multiplicity_free = true;
    for i in 0..gl.chars.irrep_count() {
        let mut list = Vec::new();
        for (s, svals) in sl_values.iter().enumerate() {
            let mut acc = ring.zero();
            for c in 0..sl.chars.class_count() {
                let prod = ring.mul(
                    gl.chars.value(i, sl_to_gl[c]),
                    &ring.conj(&svals[c]),
                );
                acc = ring.add(&acc, &ring.scale(&prod, sl.chars.class_sizes[c] as i128));
            }
            let total = ring
                .to_integer(&acc)
                .ok_or_else(|| Error::internal("restriction inner product not rational"))?;
            let (quot, rem) = num_integer::Integer::div_rem(&total, &sl_order);
            if !rem.is_zero() || quot.is_negative() {
                return Err(Error::internal("restriction multiplicity not a nonnegative integer"));
            }
            if quot.is_positive() {
                let m = quot.to_u64().ok_or_else(|| Error::internal("multiplicity overflow"))?;
                if m > 1 {
                    multiplicity_free = false;
                }
                list.push((s, m));
            }
        }
        // Dimension bookkeeping.
        let dim_sum: u64 = list.iter().map(|&(s, m)| sl.chars.dims[s] * m).sum();
        if dim_sum != gl.chars.dims[i] {
            return Err(Error::internal("restriction dimensions do not add up"));
        }
        constituents.push(list);
    }

    // Twist action of the q−1 determinant characters on GL irreps.
    let twists = (q - 1) as usize;
    let mut twist_of: Vec<Vec<usize>> = Vec::new(); // twist_of[i][t] = irrep index of χ_i·λ_t
    for i in 0..gl.chars.irrep_count() {
        let mut row = Vec::with_capacity(twists);
        for t in 0..twists {
            let vals = twisted_values(gl, i, t)?;
            let mut found = None;
            for j in 0..gl.chars.irrep_count() {
                if gl.chars.dims[j] != gl.chars.dims[i] {
                    continue;
                }
                if (0..gl.chars.class_count())
                    .all(|c| ring.equal(&vals[c], gl.chars.value(j, c)))
                {
                    found = Some(j);
                    break;
                }
            }
            row.push(found.ok_or_else(|| Error::internal("twist left the irrep set"))?);
        }
        twist_of.push(row);
    }

    let stab_size = |i: usize| twist_of[i].iter().filter(|&&j| j == i).count();
    let mut twist_criterion = true;
    for i in 0..gl.chars.irrep_count() {
        if constituents[i].len() != stab_size(i) {
            twist_criterion = false;
        }
    }

    // Equal spectra ⇒ twist-equivalent.
    let mut twist_equivalence = true;
    let spectrum = |i: usize| -> Vec<(usize, u64)> { constituents[i].clone() };
    for i in 0..gl.chars.irrep_count() {
        for j in (i + 1)..gl.chars.irrep_count() {
            if spectrum(i) == spectrum(j) && !twist_of[i].contains(&j) {
                twist_equivalence = false;
            }
        }
    }

    // Fibers: each SL irrep's set of GL irreps above it is one twist orbit
    // with orbit size · stabilizer size = q−1.
    let mut fibers_single_orbit = true;
    for s in 0..sl.chars.irrep_count() {
        let fiber: Vec<usize> = (0..gl.chars.irrep_count())
            .filter(|&i| constituents[i].iter().any(|&(t, _)| t == s))
            .collect();
        if fiber.is_empty() {
            fibers_single_orbit = false;
            continue;
        }
        let base = fiber[0];
        let orbit: Vec<usize> = twist_of[base].clone();
        if !fiber.iter().all(|i| orbit.contains(i)) {
            fibers_single_orbit = false;
        }
        if fiber.len() * stab_size(base) != twists {
            fibers_single_orbit = false;
        }
    }

    let reducible = (
        constituents.iter().filter(|l| l.len() > 1).count(),
        gl.chars.irrep_count(),
    );
    Ok(RestrictionReport {
        constituents,
        multiplicity_free,
        twist_equivalence,
        twist_criterion,
        fibers_single_orbit,
        reducible,
    })
}

// ---------------------------------------------------------------------------
// Symmetric-group oracle
// ---------------------------------------------------------------------------

/// Cycle type of a permutation matrix.
pub fn perm_cycle_type(m: &MatrixFq) -> Result<Partition> {
    let n = m.n;
    let mut image = vec![0usize; n];
    for j in 0..n {
        let mut hit = None;
        for i in 0..n {
            if m.get(i, j) != 0 {
                if hit.is_some() || m.get(i, j) != 1 {
                    return Err(Error::invalid("not a permutation matrix"));
                }
                hit = Some(i);
            }
        }
        image[j] = hit.ok_or_else(|| Error::invalid("not a permutation matrix"))?;
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = image[x];
        }
        cycles.push(len);
    }
    cycles.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(cycles)
}

/// `|S_n| / |centralizer|` for a cycle type: the class size `n!/z_t`.
fn class_size_of_type(t: &Partition) -> u64 {
    let n = t.weight();
    let mut fact = 1u64;
    for k in 1..=n as u64 {
        fact *= k;
    }
    let mut z = 1u64;
    let mut mult: BTreeMap<usize, u64> = BTreeMap::new();
    for &p in t.parts() {
        *mult.entry(p).or_insert(0) += 1;
    }
    for (l, m) in mult {
        for _ in 0..m {
            z *= l as u64;
        }
        for k in 1..=m {
            z *= k;
        }
    }
    fact / z
}

/// The symmetric group `S_n` (as permutation matrices) with its exact table,
/// class cycle types, integer character values, and Specht labels.
pub struct SymOracle {
    pub n: usize,
    pub data: GroupData,
    pub cycle_types: Vec<Partition>,
    /// `int_values[irrep][class]` — symmetric-group characters are rational.
    pub int_values: Vec<Vec<BigInt>>,
    type_to_class: BTreeMap<Vec<usize>, usize>,
    /// For each partition of `n` in canonical order, the irrep index of the
    /// corresponding Specht label.
    specht: Vec<(Partition, usize)>,
}

impl SymOracle {
    pub fn new(n: usize) -> Result<SymOracle> {
        let data = GroupData::new(GroupKind::Sym, n, 2)?;
        let cycle_types: Vec<Partition> = data
            .classes
            .reps
            .iter()
            .map(|&r| perm_cycle_type(&data.table.matrix(r as usize)))
            .collect::<Result<_>>()?;
        let mut type_to_class = BTreeMap::new();
        for (c, t) in cycle_types.iter().enumerate() {
            type_to_class.insert(t.parts().to_vec(), c);
        }
        let int_values: Vec<Vec<BigInt>> = (0..data.chars.irrep_count())
            .map(|i| {
                (0..data.chars.class_count())
                    .map(|c| {
                        data.chars.ring.to_integer(data.chars.value(i, c)).ok_or_else(
                            || Error::internal("symmetric-group character not rational"),
                        )
                    })
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let mut oracle = SymOracle {
            n,
            data,
            cycle_types,
            int_values,
            type_to_class,
            specht: Vec::new(),
        };
        oracle.label_irreps()?;
        Ok(oracle)
    }

    pub fn class_of_type(&self, t: &Partition) -> Result<usize> {
        self.type_to_class
            .get(t.parts())
            .copied()
            .ok_or_else(|| Error::invalid("unknown cycle type"))
    }

    /// Character of the permutation module on ordered set partitions with
    /// block sizes `d` (the Young module), per class.
    pub fn young_character(&self, d: &Partition) -> Result<Vec<BigInt>> {
        if d.weight() != self.n {
            return Err(Error::invalid("block sizes must sum to n"));
        }
        let mut out = Vec::with_capacity(self.cycle_types.len());
        for t in &self.cycle_types {
            let mut caps: Vec<usize> = d.parts().to_vec();
            out.push(BigInt::from(count_fillings(t.parts(), &mut caps)));
        }
        Ok(out)
    }

    /// Multiplicity of each irrep inside the Young module for `d`.
    pub fn young_multiplicities(&self, d: &Partition) -> Result<Vec<BigInt>> {
        let chi = self.young_character(d)?;
        let order = BigInt::from(self.data.order());
        let mut mults = Vec::new();
        for i in 0..self.data.chars.irrep_count() {
            let mut total = BigInt::zero();
            for c in 0..self.data.chars.class_count() {
                total += BigInt::from(self.data.chars.class_sizes[c])
                    * &chi[c]
                    * &self.int_values[i][c];
            }
            let (quot, rem) = num_integer::Integer::div_rem(&total, &order);
            if !rem.is_zero() || quot.is_negative() {
                return Err(Error::internal("Young multiplicity not a nonnegative integer"));
            }
            mults.push(quot);
        }
        Ok(mults)
    }

    /// Labels each irrep by its partition: the label of `d` is the unique
    /// constituent of the Young module for `d` absent from every Young
    /// module of a strictly dominating shape.
    fn label_irreps(&mut self) -> Result<()> {
        let shapes = Partition::all_of_weight(self.n);
        let mut supports: Vec<Vec<bool>> = Vec::new();
        for d in &shapes {
            let mults = self.young_multiplicities(d)?;
            supports.push(mults.iter().map(|m| m.is_positive()).collect());
        }
        for (di, d) in shapes.iter().enumerate() {
            let mut candidates: Vec<usize> = (0..self.data.chars.irrep_count())
                .filter(|&i| supports[di][i])
                .collect();
            for (dj, dprime) in shapes.iter().enumerate() {
                if dprime.strictly_dominates(d) {
                    candidates.retain(|&i| !supports[dj][i]);
                }
            }
            if candidates.len() != 1 {
                return Err(Error::internal(format!(
                    "Specht labeling not unique for {d}"
                )));
            }
            self.specht.push((d.clone(), candidates[0]));
        }
        Ok(())
    }

    /// Irrep index carrying the given partition label.
    pub fn specht_index(&self, d: &Partition) -> Result<usize> {
        self.specht
            .iter()
            .find(|(p, _)| p == d)
            .map(|&(_, i)| i)
            .ok_or_else(|| Error::invalid("not a partition of n"))
    }

    /// Character value of the labeled irrep at a cycle type.
    pub fn value_at_type(&self, irrep: usize, t: &Partition) -> Result<BigInt> {
        Ok(self.int_values[irrep][self.class_of_type(t)?].clone())
    }
}

fn count_fillings(cycles: &[usize], caps: &mut Vec<usize>) -> u64 {
    match cycles.first() {
        None => 1,
        Some(&c) => {
            let rest = &cycles[1..];
            let mut total = 0u64;
            for b in 0..caps.len() {
                if caps[b] >= c {
                    caps[b] -= c;
                    total += count_fillings(rest, caps);
                    caps[b] += c;
                }
            }
            total
        }
    }
}

/// Exact decomposition of `Ind_{S_k × S_{n−k}}^{S_n}(σ_d ⊗ 1)` into labeled
/// irreps of `S_n`, computed by Frobenius reciprocity from the two tables.
pub fn induced_pieri_decomposition(
    big: &SymOracle,
    small: &SymOracle,
    d: &Partition,
) -> Result<Vec<(Partition, u64)>> {
    let n = big.n;
    let k = small.n;
    if d.weight() != k || k > n {
        return Err(Error::invalid("shape must be a partition of k ≤ n"));
    }
    let m = n - k;
    let sigma_d = small.specht_index(d)?;
    let m_types = Partition::all_of_weight(m);
    // |S_k|·|S_{n−k}|
    let mut denom = BigInt::from(1u32);
    for j in 1..=k as u64 {
        denom *= BigInt::from(j);
    }
    for j in 1..=m as u64 {
        denom *= BigInt::from(j);
    }
    let mut out = Vec::new();
    for (e, &irrep_e) in big.specht.iter().map(|(p, i)| (p, i)).collect::<Vec<_>>() {
        let mut total = BigInt::zero();
        for (ca, ta) in small.cycle_types.iter().enumerate() {
            let size_a = BigInt::from(small.data.chars.class_sizes[ca]);
            let chi_a = &small.int_values[sigma_d][ca];
            for tb in &m_types {
                let size_b = BigInt::from(class_size_of_type(tb));
                let mut combined: Vec<usize> =
                    ta.parts().iter().chain(tb.parts().iter()).copied().collect();
                combined.sort_unstable_by(|a, b| b.cmp(a));
                let combined = Partition::new(combined)?;
                let chi_e = big.value_at_type(irrep_e, &combined)?;
                total += &size_a * &size_b * chi_a * chi_e;
            }
        }
        let (quot, rem) = num_integer::Integer::div_rem(&total, &denom);
        if !rem.is_zero() || quot.is_negative() {
            return Err(Error::internal("induced multiplicity not a nonnegative integer"));
        }
        if quot.is_positive() {
            let mult = quot
                .to_u64()
                .ok_or_else(|| Error::internal("induced multiplicity overflow"))?;
            out.push((e.clone(), mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Flag-module oracle for GL
// ---------------------------------------------------------------------------

/// Number of complete invariant-subspace chains of jump type `d` fixed by
/// each class representative (the flag permutation character), brute force.
pub fn flag_fixed_counts(gd: &GroupData, d: &Partition) -> Result<Vec<BigInt>> {
    let n = gd.table.n;
    if d.weight() != n {
        return Err(Error::invalid("jump type must be a partition of n"));
    }
    let field = &gd.table.field;
    // Cumulative dimensions of the proper chain members.
    let mut cum = Vec::new();
    let mut acc = 0usize;
    for &p in d.parts() {
        acc += p;
        if acc < n {
            cum.push(acc);
        }
    }
    let levels: Vec<SubspaceSet> = cum
        .iter()
        .map(|&c| SubspaceSet::enumerate(field, n, c))
        .collect();
    let mut out = Vec::with_capacity(gd.classes.class_count());
    for &rep in &gd.classes.reps {
        let g = gd.table.matrix(rep as usize);
        fn rec(
            field: &FqField,
            g: &MatrixFq,
            levels: &[SubspaceSet],
            prev: Option<&crate::matgroup::Subspace>,
            count: &mut u64,
        ) {
            match levels.first() {
                None => *count += 1,
                Some(set) => {
                    for s in set.iter() {
                        if let Some(p) = prev {
                            if !s.contains_subspace(field, p) {
                                continue;
                            }
                        }
                        if s.is_invariant_under(field, g) {
                            rec(field, g, &levels[1..], Some(s), count);
                        }
                    }
                }
            }
        }
        let mut count = 0u64;
        rec(field, &g, &levels, None, &mut count);
        out.push(BigInt::from(count));
    }
    Ok(out)
}

/// Constituents of the flag permutation module of jump type `d`, and the
/// index of its dominance-distinguished constituent: the unique irrep in the
/// module that is absent from every module of a strictly dominating type.
pub fn flag_module_constituents(
    gd: &GroupData,
    d: &Partition,
) -> Result<(usize, Vec<(usize, BigInt)>)> {
    let ring = &gd.chars.ring;
    let flag_support = |shape: &Partition| -> Result<Vec<BigInt>> {
        let counts = flag_fixed_counts(gd, shape)?;
        let class_fn: Vec<Cyc> = counts
            .iter()
            .map(|c| {
                ring.from_int(c.to_i128().expect("flag count fits in machine range"))
            })
            .collect();
        (0..gd.chars.irrep_count())
            .map(|i| multiplicity(&gd.chars, &class_fn, i))
            .collect()
    };
    let own = flag_support(d)?;
    let mut candidates: Vec<usize> = (0..gd.chars.irrep_count())
        .filter(|&i| own[i].is_positive())
        .collect();
    for dprime in Partition::all_of_weight(d.weight()) {
        if dprime.strictly_dominates(d) {
            let sup = flag_support(&dprime)?;
            candidates.retain(|&i| !sup[i].is_positive());
        }
    }
    if candidates.len() != 1 {
        return Err(Error::internal(format!(
            "flag-module distinguished constituent not unique for {d}"
        )));
    }
    let constituents: Vec<(usize, BigInt)> = own
        .into_iter()
        .enumerate()
        .filter(|(_, m)| m.is_positive())
        .collect();
    Ok((candidates[0], constituents))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::pieri_expand;
    use num_traits::One;

    #[test]
    fn gl1_tables() {
        for q in [2u64, 3, 4, 5] {
            let gd = GroupData::new(GroupKind::Gl, 1, q).unwrap();
            assert_eq!(gd.chars.irrep_count(), (q - 1) as usize);
            assert!(gd.chars.dims.iter().all(|&d| d == 1));
        }
        // The filtration for GL_1 ends at all q−1 characters in one stage.
        let gd = GroupData::new(GroupKind::Gl, 1, 5).unwrap();
        let f = filtration_check(&gd).unwrap();
        assert_eq!(f.stage_counts, vec![4]);
        assert!(f.exhaustive);
    }

    #[test]
    fn sl2_f3_table() {
        let gd = GroupData::new(GroupKind::Sl, 2, 3).unwrap();
        assert_eq!(gd.chars.irrep_count(), 7);
        let mut dims = gd.chars.dims.clone();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(gd.chars.dims.iter().map(|d| d * d).sum::<u64>(), 24);
        verify_orthogonality(&gd.chars).unwrap();
        // Rank agreement between the tensor-power and stabilizer criteria.
        for i in 0..7 {
            assert_eq!(strict_rank(&gd, i).unwrap(), rank_via_hk(&gd, i).unwrap());
        }
    }

    #[test]
    fn gl3_f2_table_and_cuspidals() {
        let gd = GroupData::new(GroupKind::Gl, 3, 2).unwrap();
        let mut dims = gd.chars.dims.clone();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 3, 3, 6, 7, 8]);
        // The two dim-3 irreps are the cuspidals: rank 3 and ratio −1/3.
        for i in 0..gd.chars.irrep_count() {
            if gd.chars.dims[i] == 3 {
                assert_eq!(strict_rank(&gd, i).unwrap(), 3);
                let ratio = character_ratio_at_transvection(&gd, i).unwrap();
                assert_eq!(ratio, BigRational::new(BigInt::from(-1), BigInt::from(3)));
            }
        }
    }

    #[test]
    fn gl2_f3_rank_partition() {
        let gd = GroupData::new(GroupKind::Gl, 2, 3).unwrap();
        assert_eq!(gd.chars.irrep_count(), 8);
        let report = rank_report(&gd).unwrap();
        let mut by_rank: Vec<Vec<u64>> = vec![Vec::new(); 3];
        for e in &report.entries {
            assert_eq!(e.strict_rank, e.rank_via_hk);
            assert_eq!(e.rank, e.rank_via_hk_eigen);
            assert!(e.rank <= e.strict_rank);
            by_rank[e.rank].push(e.dim);
        }
        for v in by_rank.iter_mut() {
            v.sort_unstable();
        }
        // Linear characters / principal-series family / cuspidals.
        assert_eq!(by_rank[0], vec![1, 1]);
        assert_eq!(by_rank[1], vec![3, 3, 4]);
        assert_eq!(by_rank[2], vec![2, 2, 2]);
        // The rank-1 full-dimension irrep: dim (q²−1)/(q−1)=4, χ(T)/dim = 1/4.
        for e in &report.entries {
            if e.dim == 4 {
                let v = gd.chars.ring.to_integer(&e.char_at_t).unwrap();
                assert_eq!(v, BigInt::one());
            }
        }
        // Filtration strictness: the first stage holds the trivial
        // character, the untwisted Steinberg, and the principal series.
        let f = filtration_check(&gd).unwrap();
        assert_eq!(f.stage_counts, vec![3, 8]);
        assert!(f.strictly_increasing && f.exhaustive);
    }

    #[test]
    fn omega_character_examples() {
        let f = FqField::new(3).unwrap();
        let id = MatrixFq::identity(2);
        assert_eq!(omega_tensor_character(&f, &id, 1), BigInt::from(9));
        assert_eq!(omega_tensor_character(&f, &id, 0), BigInt::one());
        let t = crate::matgroup::transvection(2, &f).unwrap();
        assert_eq!(omega_tensor_character(&f, &t, 1), BigInt::from(3));
    }

    #[test]
    fn restriction_gl2_f3_to_sl2_f3() {
        let gl = GroupData::new(GroupKind::Gl, 2, 3).unwrap();
        let sl = GroupData::new(GroupKind::Sl, 2, 3).unwrap();
        let rep = restrict_to_sl(&gl, &sl).unwrap();
        assert!(rep.multiplicity_free);
        assert!(rep.twist_equivalence);
        assert!(rep.twist_criterion);
        assert!(rep.fibers_single_orbit);
        // Split restrictions have piece dimensions (q±1)/2 ∈ {1, 2}.
        for (i, list) in rep.constituents.iter().enumerate() {
            if list.len() > 1 {
                assert_eq!(list.len(), 2);
                let d0 = sl.chars.dims[list[0].0];
                let d1 = sl.chars.dims[list[1].0];
                assert_eq!(d0, d1);
                assert_eq!(d0 * 2, gl.chars.dims[i]);
                assert!(d0 == 1 || d0 == 2);
            }
        }
        // Exactly two GL irreps split: one principal series (dim 4) and one
        // cuspidal (dim 2).
        let split_dims: Vec<u64> = rep
            .constituents
            .iter()
            .enumerate()
            .filter(|(_, l)| l.len() > 1)
            .map(|(i, _)| gl.chars.dims[i])
            .collect();
        let mut split_dims = split_dims;
        split_dims.sort_unstable();
        assert_eq!(split_dims, vec![2, 4]);
    }

    #[test]
    fn sym_oracle_kostka_cross_check() {
        // Young-module multiplicities equal Kostka numbers computed by
        // independent tableau enumeration.
        for n in 2..=5usize {
            let oracle = SymOracle::new(n).unwrap();
            for d in Partition::all_of_weight(n) {
                let mults = oracle.young_multiplicities(&d).unwrap();
                for e in Partition::all_of_weight(n) {
                    let idx = oracle.specht_index(&e).unwrap();
                    let expected = crate::partitions::kostka(&e, &d).unwrap();
                    assert_eq!(mults[idx], expected, "n={n} d={d} e={e}");
                }
            }
        }
    }

    #[test]
    fn sym_specht_dims_s4() {
        let oracle = SymOracle::new(4).unwrap();
        let expect = [
            (vec![4usize], 1u64),
            (vec![3, 1], 3),
            (vec![2, 2], 2),
            (vec![2, 1, 1], 3),
            (vec![1, 1, 1, 1], 1),
        ];
        for (parts, dim) in expect {
            let p = Partition::new(parts).unwrap();
            let i = oracle.specht_index(&p).unwrap();
            assert_eq!(oracle.data.chars.dims[i], dim, "{p}");
        }
    }

    #[test]
    fn pieri_matches_induced_decomposition_to_n5() {
        let oracles: Vec<SymOracle> = (1..=5).map(|n| SymOracle::new(n).unwrap()).collect();
        for n in 2..=5usize {
            for k in 1..n {
                let big = &oracles[n - 1];
                let small = &oracles[k - 1];
                for d in Partition::all_of_weight(k) {
                    let induced = induced_pieri_decomposition(big, small, &d).unwrap();
                    let expanded = pieri_expand(&d, n - k);
                    // The induced module is multiplicity free with support
                    // exactly the expansion.
                    let got: Vec<Partition> = induced
                        .iter()
                        .map(|(p, m)| {
                            assert_eq!(*m, 1, "multiplicity free");
                            p.clone()
                        })
                        .collect();
                    assert_eq!(got, expanded, "n={n} k={k} d={d}");
                }
            }
        }
    }

    #[test]
    fn flag_oracle_matches_sps_gl2_f3() {
        let gd = GroupData::new(GroupKind::Gl, 2, 3).unwrap();
        let t_class = gd.transvection_class().unwrap();
        for d in Partition::all_of_weight(2) {
            let (idx, _) = flag_module_constituents(&gd, &d).unwrap();
            let rep = crate::sps::sps_rep(&d).unwrap();
            let dim = rep.dim.evaluate(3).unwrap();
            let chi_t = rep.char_at_t.evaluate(3).unwrap();
            assert_eq!(BigInt::from(gd.chars.dims[idx]), dim, "{d}");
            let got = gd.chars.ring.to_integer(gd.chars.value(idx, t_class)).unwrap();
            assert_eq!(got, chi_t, "{d}");
        }
    }

    #[test]
    fn flag_oracle_matches_sps_gl3_f2() {
        let gd = GroupData::new(GroupKind::Gl, 3, 2).unwrap();
        let t_class = gd.transvection_class().unwrap();
        for d in Partition::all_of_weight(3) {
            let (idx, _) = flag_module_constituents(&gd, &d).unwrap();
            let rep = crate::sps::sps_rep(&d).unwrap();
            let dim = rep.dim.evaluate(2).unwrap();
            let chi_t = rep.char_at_t.evaluate(2).unwrap();
            assert_eq!(BigInt::from(gd.chars.dims[idx]), dim, "{d}");
            let got = gd.chars.ring.to_integer(gd.chars.value(idx, t_class)).unwrap();
            assert_eq!(got, chi_t, "{d}");
        }
    }

    #[test]
    fn cyc_ring_basics() {
        let ring = CycRing::new(12).unwrap();
        // ζ^4 + ζ^8 + 1 = 0 (sum over cube roots of unity).
        let s = ring.add(
            &ring.add(&ring.root(4), &ring.root(8)),
            &ring.from_int(1),
        );
        assert!(ring.is_zero(&s));
        // ζ^3 = i is not rational; ζ^6 = −1 is.
        assert!(ring.to_integer(&ring.root(3)).is_none());
        assert_eq!(ring.to_integer(&ring.root(6)), Some(BigInt::from(-1)));
        // conj(ζ)·ζ = 1.
        let z = ring.root(1);
        assert_eq!(ring.to_integer(&ring.mul(&z, &ring.conj(&z))), Some(BigInt::one()));
        // Embedding into order 24 preserves values.
        let big = CycRing::new(24).unwrap();
        let e = ring.embed(&ring.root(6), &big).unwrap();
        assert_eq!(big.to_integer(&e), Some(BigInt::from(-1)));
    }
}
