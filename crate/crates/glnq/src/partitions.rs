//! Integer partitions and Young-diagram combinatorics.
//!
//! Provides the dominance order, horizontal strips ("skew rows"), the Pieri
//! expansion, Kostka numbers by semistandard-tableau counting, and the
//! unitriangular Kostka matrix together with its integer inverse — the
//! transition data shared by the symmetric groups and the spherical
//! principal series of `GL_n(F_q)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default cap on partition weights for whole-weight enumerations.
pub const DEFAULT_WEIGHT_CAP: usize = 20;

/// An integer partition: weakly decreasing positive parts.
///
/// The empty partition (weight 0) is valid.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Outcome of a dominance comparison between same-weight partitions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DominanceRelation {
    StrictlyDominates,
    Equal,
    StrictlyDominated,
    Incomparable,
}

impl Partition {
    /// Validates weak decrease and positivity.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::invalid("partition parts must be weakly decreasing"));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part at `i` (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Longest (first) row, or 0 for the empty partition.
    pub fn first_row(&self) -> usize {
        self.part(0)
    }

    /// Multiplicity of the largest part (`m_{d_1}`), or 0 for the empty
    /// partition.
    pub fn largest_part_multiplicity(&self) -> usize {
        if self.parts.is_empty() {
            return 0;
        }
        self.parts.iter().filter(|&&p| p == self.parts[0]).count()
    }

    /// Column heights (the conjugate partition).
    pub fn conjugate(&self) -> Partition {
        let cols = self.first_row();
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    /// Dominance comparison per prefix sums; errors on weight mismatch.
    pub fn compare_dominance(&self, other: &Partition) -> Result<DominanceRelation> {
        if self.weight() != other.weight() {
            return Err(Error::invalid(format!(
                "dominance comparison requires equal weights ({} vs {})",
                self.weight(),
                other.weight()
            )));
        }
        let rows = self.len().max(other.len());
        let (mut sa, mut sb) = (0usize, 0usize);
        let (mut ge, mut le) = (true, true);
        for i in 0..rows {
            sa += self.part(i);
            sb += other.part(i);
            if sa < sb {
                ge = false;
            }
            if sa > sb {
                le = false;
            }
        }
        Ok(match (ge, le) {
            (true, true) => DominanceRelation::Equal,
            (true, false) => DominanceRelation::StrictlyDominates,
            (false, true) => DominanceRelation::StrictlyDominated,
            (false, false) => DominanceRelation::Incomparable,
        })
    }

    /// True iff `self` strictly dominates `other` (same weight assumed valid).
    pub fn strictly_dominates(&self, other: &Partition) -> bool {
        matches!(
            self.compare_dominance(other),
            Ok(DominanceRelation::StrictlyDominates)
        )
    }

    /// Canonical emission order: descending through the dominance order,
    /// with incomparable diagrams tie-broken reverse-lexicographically.
    /// Concretely this is descending lexicographic comparison of the part
    /// sequences, which linearly extends dominance for equal weights.
    pub fn canonical_cmp(&self, other: &Partition) -> Ordering {
        let rows = self.len().max(other.len());
        for i in 0..rows {
            match self.part(i).cmp(&other.part(i)) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }

    /// Whether `self` contains `other` box-wise.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// All partitions of weight `n`, in canonical order.
    pub fn all_of_weight(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            // Descending first part ⇒ output is already in canonical
            // (descending lexicographic) order.
            for p in (1..=remaining.min(max)).rev() {
                cur.push(p);
                rec(remaining - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }
}

impl core::fmt::Display for Partition {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// True iff `big ⊇ small` and `big − small` is a skew row (horizontal
/// strip): no column gains more than one box.
pub fn is_skew_row(big: &Partition, small: &Partition) -> bool {
    if !big.contains(small) {
        return false;
    }
    // No two added boxes share a column ⟺ big_i ≤ small_{i−1} for i ≥ 2
    // (1-based), i.e. each row of `big` below the first fits above the
    // previous row of `small`.
    (1..big.len()).all(|i| big.part(i) <= small.part(i - 1))
}

/// All partitions `D̃` of weight `d.weight + m` with `D̃ ⊇ d` and `D̃ − d` a
/// skew row; multiplicity-free, in canonical order.
pub fn pieri_expand(d: &Partition, m: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let rows = d.len();
    let mut cur: Vec<usize> = Vec::new();
    // Choose row lengths top-down; row i may grow up to the length of row
    // i−1 of `d` (unbounded for the first row), plus optionally one new row.
    fn rec(d: &Partition, rows: usize, i: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == rows + 1 {
            if budget == 0 {
                out.push(Partition::new(cur.clone()).expect("rows weakly decreasing by construction"));
            }
            return;
        }
        let base = d.part(i);
        let hi = if i == 0 {
            base + budget
        } else {
            // Horizontal-strip cap and weak decrease.
            d.part(i - 1).min(cur[i - 1]).min(base + budget)
        };
        if i == rows {
            // Optional new bottom row (length 0 allowed = no new row).
            for len in (0..=hi).rev() {
                if len <= budget && (len > 0 || budget == 0) {
                    if len > 0 {
                        cur.push(len);
                        rec(d, rows, i + 1, budget - len, cur, out);
                        cur.pop();
                    } else {
                        rec(d, rows, i + 1, budget, cur, out);
                    }
                }
            }
        } else {
            for len in (base..=hi).rev() {
                if len - base <= budget {
                    cur.push(len);
                    rec(d, rows, i + 1, budget - (len - base), cur, out);
                    cur.pop();
                }
            }
        }
    }
    rec(d, rows, 0, m, &mut cur, &mut out);
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    out
}

/// Kostka number `K_{e,d}`: the number of semistandard tableaux of shape `e`
/// and content `d`, equivalently the multiplicity of the irreducible `σ_e`
/// in the Young module `Y_d`. Zero unless `e` dominates-or-equals `d`.
pub fn kostka(e: &Partition, d: &Partition) -> Result<BigInt> {
    if e.weight() != d.weight() {
        return Err(Error::invalid("kostka requires equal weights"));
    }
    // A SSYT of shape e and content d is a chain ∅ = μ_0 ⊆ … ⊆ μ_s = e where
    // each μ_t − μ_{t−1} is a horizontal strip of size d_t.
    let mut counts: BTreeMap<Partition, BigInt> = BTreeMap::new();
    counts.insert(Partition::empty(), BigInt::one());
    for &dt in d.parts() {
        let mut next: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for (p, c) in &counts {
            for grown in pieri_expand(p, dt) {
                if e.contains(&grown) {
                    *next.entry(grown).or_insert_with(BigInt::zero) += c;
                }
            }
        }
        counts = next;
    }
    Ok(counts.remove(e).unwrap_or_else(BigInt::zero))
}

/// The Kostka matrix `K` over all partitions of `n` (canonical order) and
/// its exact integer inverse `M`, so that `ρ_D = Σ_{D′} M[D′][D] · I_{D′}`.
pub struct TransitionMatrix {
    /// Partitions of `n` in canonical order; indexes the matrices.
    pub partitions: Vec<Partition>,
    /// `k[i][j]` = multiplicity of the `i`-th label inside the `j`-th
    /// induced/Young module; unitriangular for the canonical order.
    pub k: Vec<Vec<BigInt>>,
    /// Exact inverse of `k`.
    pub m: Vec<Vec<BigInt>>,
}

impl TransitionMatrix {
    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|x| x == p)
    }
}

/// Computes [`TransitionMatrix`] for weight `n` under the default cap.
pub fn transition_matrix(n: usize) -> Result<TransitionMatrix> {
    transition_matrix_with_cap(n, DEFAULT_WEIGHT_CAP)
}

/// Computes [`TransitionMatrix`] for weight `n`, refusing weights above
/// `cap` (partition counts explode past ~20).
pub fn transition_matrix_with_cap(n: usize, cap: usize) -> Result<TransitionMatrix> {
    if n == 0 {
        return Err(Error::invalid("transition_matrix requires n ≥ 1"));
    }
    if n > cap {
        return Err(Error::limit(format!(
            "partition weight {n} exceeds cap {cap}"
        )));
    }
    let partitions = Partition::all_of_weight(n);
    let r = partitions.len();
    let mut k = alloc::vec![alloc::vec![BigInt::zero(); r]; r];
    for (i, e) in partitions.iter().enumerate() {
        for (j, d) in partitions.iter().enumerate() {
            k[i][j] = kostka(e, d)?;
        }
    }
    // K is unitriangular (upper triangular, unit diagonal) in the canonical
    // order; invert by back-substitution.
    let mut m = alloc::vec![alloc::vec![BigInt::zero(); r]; r];
    for j in 0..r {
        // Solve K·x = e_j column-wise from the bottom up.
        let mut x = alloc::vec![BigInt::zero(); r];
        for i in (0..r).rev() {
            let mut rhs = if i == j { BigInt::one() } else { BigInt::zero() };
            for (t, xt) in x.iter().enumerate().skip(i + 1) {
                rhs -= &k[i][t] * xt;
            }
            debug_assert!(k[i][i].is_one());
            x[i] = rhs;
        }
        for i in 0..r {
            m[i][j] = x[i].clone();
        }
    }
    Ok(TransitionMatrix { partitions, k, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dominance_examples() {
        use DominanceRelation::*;
        assert_eq!(p(&[2, 2]).compare_dominance(&p(&[2, 1, 1])).unwrap(), StrictlyDominates);
        assert_eq!(p(&[3, 1]).compare_dominance(&p(&[3, 1])).unwrap(), Equal);
        assert_eq!(
            p(&[3, 1, 1, 1]).compare_dominance(&p(&[2, 2, 2])).unwrap(),
            Incomparable
        );
        assert!(p(&[2, 1]).compare_dominance(&p(&[2, 2])).is_err());
    }

    #[test]
    fn skew_row_examples() {
        assert!(is_skew_row(&p(&[2, 1]), &p(&[1, 1])));
        assert!(is_skew_row(&p(&[2]), &p(&[1])));
        // Two boxes added in one column is not a skew row.
        assert!(!is_skew_row(&p(&[2, 2]), &p(&[1, 1])));
        // Containment failure returns false.
        assert!(!is_skew_row(&p(&[2]), &p(&[1, 1, 1])));
        // {3,3}/{3,1} adds two boxes in row 2, columns 2 and 3 — distinct
        // columns, hence a genuine skew row (the S_n induction oracle agrees:
        // σ_{3,3} occurs in Ind(σ_{3,1} ⊗ 1) with multiplicity one).
        assert!(is_skew_row(&p(&[3, 3]), &p(&[3, 1])));
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_expand(&p(&[1]), 1), alloc::vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(pieri_expand(&Partition::empty(), 3), alloc::vec![p(&[3])]);
        // {1,1} + 2 boxes: {2,2} is forbidden (two boxes in column 2).
        assert_eq!(
            pieri_expand(&p(&[1, 1]), 2),
            alloc::vec![p(&[3, 1]), p(&[2, 1, 1])]
        );
        // Zero boxes: identity.
        assert_eq!(pieri_expand(&p(&[2, 1]), 0), alloc::vec![p(&[2, 1])]);
    }

    #[test]
    fn kostka_examples() {
        let one = BigInt::from(1);
        assert_eq!(kostka(&p(&[2]), &p(&[1, 1])).unwrap(), one);
        assert_eq!(kostka(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(kostka(&p(&[1, 1]), &p(&[2])).unwrap(), BigInt::from(0));
        assert!(kostka(&p(&[2]), &p(&[1])).is_err());
        // Diagonal is 1; positivity implies dominance.
        for n in 1..=6 {
            let parts = Partition::all_of_weight(n);
            for e in &parts {
                assert_eq!(kostka(e, e).unwrap(), one);
                for d in &parts {
                    if kostka(e, d).unwrap() > BigInt::from(0) {
                        assert!(matches!(
                            e.compare_dominance(d).unwrap(),
                            DominanceRelation::StrictlyDominates | DominanceRelation::Equal
                        ));
                    }
                }
            }
        }
    }

    #[test]
    fn transition_matrix_small() {
        let t = transition_matrix(2).unwrap();
        assert_eq!(t.partitions, alloc::vec![p(&[2]), p(&[1, 1])]);
        let b = |x: i64| BigInt::from(x);
        assert_eq!(t.k, alloc::vec![alloc::vec![b(1), b(1)], alloc::vec![b(0), b(1)]]);
        assert_eq!(t.m, alloc::vec![alloc::vec![b(1), b(-1)], alloc::vec![b(0), b(1)]]);

        let t1 = transition_matrix(1).unwrap();
        assert_eq!(t1.k, alloc::vec![alloc::vec![b(1)]]);

        // n=3: ρ_{1,1,1} = I_{1,1,1} − 2·I_{2,1} + I_{3}.
        let t3 = transition_matrix(3).unwrap();
        let j = t3.index_of(&p(&[1, 1, 1])).unwrap();
        assert_eq!(t3.m[t3.index_of(&p(&[3])).unwrap()][j], b(1));
        assert_eq!(t3.m[t3.index_of(&p(&[2, 1])).unwrap()][j], b(-2));
        assert_eq!(t3.m[j][j], b(1));

        assert!(transition_matrix(21).is_err());
    }

    #[test]
    fn k_times_m_is_identity_up_to_10() {
        for n in 1..=10 {
            let t = transition_matrix(n).unwrap();
            let r = t.partitions.len();
            for i in 0..r {
                for j in 0..r {
                    let mut acc = BigInt::from(0);
                    for l in 0..r {
                        acc += &t.k[i][l] * &t.m[l][j];
                    }
                    let expect = BigInt::from(u32::from(i == j));
                    assert_eq!(acc, expect, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn pieri_members_pass_skew_row() {
        for n in 0..=6 {
            for d in Partition::all_of_weight(n) {
                for m in 0..=4 {
                    let out = pieri_expand(&d, m);
                    // Duplicate-free.
                    let mut sorted = out.clone();
                    sorted.dedup();
                    assert_eq!(sorted.len(), out.len());
                    for big in &out {
                        assert_eq!(big.weight(), n + m);
                        assert!(is_skew_row(big, &d));
                    }
                    // Completeness: brute-force filter over all partitions.
                    let brute: Vec<_> = Partition::all_of_weight(n + m)
                        .into_iter()
                        .filter(|big| is_skew_row(big, &d))
                        .collect();
                    assert_eq!(out, brute);
                }
            }
        }
    }

    #[test]
    fn canonical_order_extends_dominance() {
        for n in 1..=8 {
            let parts = Partition::all_of_weight(n);
            for (i, a) in parts.iter().enumerate() {
                for b in parts.iter().skip(i + 1) {
                    assert_eq!(a.canonical_cmp(b), core::cmp::Ordering::Less);
                    assert!(!b.strictly_dominates(a));
                }
            }
        }
    }

    fn arb_partition(max_weight: usize) -> impl Strategy<Value = Partition> {
        (0..=max_weight).prop_flat_map(move |w| {
            let all = Partition::all_of_weight(w);
            let len = all.len();
            (0..len.max(1)).prop_map(move |i| all[i.min(len.saturating_sub(1))].clone())
        })
    }

    proptest! {
        #[test]
        fn dominance_partial_order(w in 1usize..8, seed in any::<u64>()) {
            // Transitivity and antisymmetry over random same-weight triples.
            let parts = Partition::all_of_weight(w);
            let n = parts.len();
            let idx = |s: u64| (s as usize) % n;
            let (a, b, c) = (&parts[idx(seed)], &parts[idx(seed / 7 + 1)], &parts[idx(seed / 13 + 2)]);
            use DominanceRelation::*;
            let ge = |x: &Partition, y: &Partition| {
                matches!(x.compare_dominance(y).unwrap(), StrictlyDominates | Equal)
            };
            if ge(a, b) && ge(b, c) {
                prop_assert!(ge(a, c));
            }
            if ge(a, b) && ge(b, a) {
                prop_assert_eq!(a.compare_dominance(b).unwrap(), Equal);
            }
        }

        #[test]
        fn conjugate_involution(pp in arb_partition(10)) {
            prop_assert_eq!(pp.conjugate().conjugate(), pp);
        }
    }
}
