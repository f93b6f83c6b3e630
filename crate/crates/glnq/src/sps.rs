//! Spherical principal series: exact dimensions and transvection characters.
//!
//! The induced module `I_D` is the permutation representation on flags of
//! type `D`; its dimension is a Gaussian multinomial and its transvection
//! character is the number of `T`-invariant flags, computed here in closed
//! form. The irreducible `ρ_D` is recovered through the inverse Kostka
//! matrix: both its dimension and its transvection character are the
//! corresponding integer combinations of induced data.
//!
//! The closed form partitions `T`-invariant flags by how each subspace sits
//! relative to the hyperplane `K = ker(T−I)` and the line `L = im(T−I) ⊆ K`:
//! a subspace is `T`-invariant iff it is contained in `K` or contains `L`.
//! Walking up the flag, the possible states are
//!
//! 1. `V ⊆ K`, `L ⊄ V`;
//! 2. `V ⊆ K`, `L ⊆ V`;
//! 3. `V ⊄ K`, `L ⊆ V`;
//!
//! and the transition counts between consecutive flag steps are Gaussian
//! binomials of quotient dimensions. Brute-force flag enumeration (see the
//! tests and the acceptance suite) cross-validates the closed form for all
//! partitions of `n ≤ 4` at `q ∈ {2,3}`.

use alloc::format;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{transition_matrix_with_cap, Partition, DEFAULT_WEIGHT_CAP};
use crate::qseries::{gauss_binomial, q_multinomial, QPoly};

/// A spherical principal series representation `ρ_D` with cached exact data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpsRep {
    pub diagram: Partition,
    /// Exact dimension polynomial in `q`.
    pub dim: QPoly,
    /// Exact transvection character polynomial in `q`.
    pub char_at_t: QPoly,
}

/// `dim I_D` — the flag count of type `d`, as an exact polynomial.
pub fn dim_induced(d: &Partition) -> QPoly {
    q_multinomial(d)
}

/// Gaussian binomial with signed arguments; zero outside `0 ≤ k ≤ n`.
fn gb(n: isize, k: isize) -> QPoly {
    if k < 0 || n < 0 || k > n {
        QPoly::zero()
    } else {
        gauss_binomial(n as usize, k as usize)
    }
}

/// Exact count of flags of type `d` in `F_q^n` invariant under the standard
/// transvection; this is `χ_{I_d}(T)`.
pub fn fixed_flags(d: &Partition) -> Result<QPoly> {
    let n = d.weight() as isize;
    if n < 2 {
        return Err(Error::invalid("fixed_flags requires weight ≥ 2"));
    }
    // DP over the flag chain; states as in the module docs. The initial
    // subspace 0 is in state 1; the final space F_q^n is in state 3.
    let mut s1 = QPoly::one();
    let mut s2 = QPoly::zero();
    let mut s3 = QPoly::zero();
    let mut c = 0isize; // current dimension
    for &step in d.parts() {
        let dd = step as isize;
        let n1 = &(&s1 * &(&gb(n - 1 - c, dd) - &gb(n - 2 - c, dd - 1))) + &QPoly::zero();
        let n2 = &(&s1 * &gb(n - 2 - c, dd - 1)) + &(&s2 * &gb(n - 1 - c, dd));
        let n3_from1 = &s1 * &(&gb(n - 1 - c, dd - 1) - &gb(n - 2 - c, dd - 1));
        let n3_from2 = &s2 * &(&gb(n - c, dd) - &gb(n - 1 - c, dd));
        let n3_from3 = &s3 * &gb(n - c, dd);
        let n3 = &(&n3_from1 + &n3_from2) + &n3_from3;
        s1 = n1;
        s2 = n2;
        s3 = n3;
        c += dd;
    }
    debug_assert!(s1.is_zero() && s2.is_zero());
    Ok(s3)
}

/// Brute-force count of `T`-invariant flags of type `d` at a concrete prime
/// power, by explicit enumeration over `F_q^n`. Exposed for cross-validation;
/// feasible only for small `n`, `q`.
pub fn fixed_flags_brute_force(d: &Partition, q: u64) -> Result<BigInt> {
    use crate::matgroup::{FqField, SubspaceSet};
    let n = d.weight();
    if n < 2 {
        return Err(Error::invalid("fixed_flags requires weight ≥ 2"));
    }
    let field = FqField::new(q)?;
    let t = crate::matgroup::transvection(n, &field)?;
    let mut count = BigInt::zero();
    // Recursive chain enumeration: at each step pick a T-invariant extension.
    // We enumerate all subspaces of each needed dimension once.
    let dims: Vec<usize> = {
        let mut acc = 0;
        d.parts()
            .iter()
            .map(|&p| {
                acc += p;
                acc
            })
            .collect()
    };
    let sets: Vec<SubspaceSet> = dims
        .iter()
        .map(|&k| SubspaceSet::enumerate(&field, n, k))
        .collect();
    fn rec(
        field: &FqField,
        t: &crate::matgroup::MatrixFq,
        sets: &[SubspaceSet],
        level: usize,
        prev: Option<&crate::matgroup::Subspace>,
        count: &mut BigInt,
    ) {
        if level == sets.len() {
            *count += 1;
            return;
        }
        for s in sets[level].iter() {
            if let Some(p) = prev {
                if !s.contains_subspace(field, p) {
                    continue;
                }
            }
            if s.is_invariant_under(field, t) {
                rec(field, t, sets, level + 1, Some(s), count);
            }
        }
    }
    rec(&field, &t, &sets, 0, None, &mut count);
    Ok(count)
}

/// Computes `ρ_d` (dimension and transvection character) through the inverse
/// Kostka matrix under the default weight cap.
pub fn sps_rep(d: &Partition) -> Result<SpsRep> {
    sps_rep_with_cap(d, DEFAULT_WEIGHT_CAP)
}

/// As [`sps_rep`] with an explicit weight cap.
///
/// Convention for tiny weights: for `n ∈ {0, 1}` there is no transvection;
/// `ρ_D` is the trivial/identity-block representation with `dim = 1` and
/// `char_at_t = 1` (the value at the identity), which is what the induced
/// character formula needs from a size-≤1 block.
pub fn sps_rep_with_cap(d: &Partition, cap: usize) -> Result<SpsRep> {
    let n = d.weight();
    if n <= 1 {
        return Ok(SpsRep {
            diagram: d.clone(),
            dim: QPoly::one(),
            char_at_t: QPoly::one(),
        });
    }
    let t = transition_matrix_with_cap(n, cap)?;
    let j = t
        .index_of(d)
        .ok_or_else(|| Error::internal("partition missing from transition matrix"))?;
    let mut dim = QPoly::zero();
    let mut char_at_t = QPoly::zero();
    for (i, dp) in t.partitions.iter().enumerate() {
        let coeff = &t.m[i][j];
        if coeff.is_zero() {
            continue;
        }
        dim = &dim + &dim_induced(dp).scale(coeff);
        char_at_t = &char_at_t + &fixed_flags(dp)?.scale(coeff);
    }
    Ok(SpsRep {
        diagram: d.clone(),
        dim,
        char_at_t,
    })
}

/// All `ρ_D` for partitions of weight `n`, sharing one transition matrix.
pub fn sps_reps_of_weight(n: usize, cap: usize) -> Result<Vec<SpsRep>> {
    if n <= 1 {
        return Partition::all_of_weight(n)
            .iter()
            .map(|d| sps_rep_with_cap(d, cap))
            .collect();
    }
    let t = transition_matrix_with_cap(n, cap)?;
    let induced: Vec<QPoly> = t.partitions.iter().map(dim_induced).collect();
    let fixed: Vec<QPoly> = t
        .partitions
        .iter()
        .map(fixed_flags)
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(t.partitions.len());
    for (j, d) in t.partitions.iter().enumerate() {
        let mut dim = QPoly::zero();
        let mut char_at_t = QPoly::zero();
        for i in 0..t.partitions.len() {
            let coeff = &t.m[i][j];
            if coeff.is_zero() {
                continue;
            }
            dim = &dim + &induced[i].scale(coeff);
            char_at_t = &char_at_t + &fixed[i].scale(coeff);
        }
        out.push(SpsRep {
            diagram: d.clone(),
            dim,
            char_at_t,
        });
    }
    Ok(out)
}

/// Character-ratio data for `ρ_d` at the transvection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrSps {
    /// Exact ratio `χ(T)/dim` at the supplied `q`.
    pub exact: BigRational,
    /// Leading estimate `(c, e)` with `χ(T)/dim = c/q^e + o(…)`;
    /// `None` when the character vanishes identically.
    pub leading: Option<(BigInt, usize)>,
}

/// Exact and leading character ratio of `ρ_d` at the transvection.
pub fn cr_sps(d: &Partition, q: u64) -> Result<CrSps> {
    let rep = sps_rep(d)?;
    cr_of_rep(&rep, q)
}

/// As [`cr_sps`] from an already-computed [`SpsRep`].
pub fn cr_of_rep(rep: &SpsRep, q: u64) -> Result<CrSps> {
    let dim_q = rep.dim.evaluate(q)?;
    if dim_q <= BigInt::zero() {
        return Err(Error::internal("SPS dimension must be positive"));
    }
    let chi_q = rep.char_at_t.evaluate(q)?;
    let exact = BigRational::new(chi_q, dim_q);
    let leading = rep.char_at_t.leading().map(|chi_lt| {
        let dim_lt = rep.dim.leading().expect("nonzero dimension");
        debug_assert!(dim_lt.coeff.is_one(), "SPS dimension is monic");
        (chi_lt.coeff, dim_lt.degree - chi_lt.degree)
    });
    Ok(CrSps { exact, leading })
}

/// Relative order of transvection characters of induced modules for a
/// strictly dominating pair (`d′` strictly dominates `d`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InducedCrOrder {
    /// `deg χ_{I_{d′}}(T) < deg χ_{I_d}(T)`.
    StrictlySmallerOrder,
    /// Equal degrees.
    SameOrder,
    /// Larger degree (never produced by the theory; reported for honesty).
    LargerOrder,
}

/// Compares the order of magnitude of `χ_{I_{d′}}(T)` against `χ_{I_d}(T)`
/// (equivalently of the ratios relative to the common `dim I_d` scale).
pub fn cr_induced_relative(d: &Partition, dprime: &Partition) -> Result<InducedCrOrder> {
    if !dprime.strictly_dominates(d) {
        return Err(Error::invalid(format!(
            "cr_induced_relative requires {dprime} to strictly dominate {d}"
        )));
    }
    let a = fixed_flags(dprime)?;
    let b = fixed_flags(d)?;
    let da = a.degree().map(|x| x as isize).unwrap_or(isize::MIN);
    let db = b.degree().map(|x| x as isize).unwrap_or(isize::MIN);
    Ok(match da.cmp(&db) {
        core::cmp::Ordering::Less => InducedCrOrder::StrictlySmallerOrder,
        core::cmp::Ordering::Equal => InducedCrOrder::SameOrder,
        core::cmp::Ordering::Greater => InducedCrOrder::LargerOrder,
    })
}
