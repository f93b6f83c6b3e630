//! Exact integer-coefficient polynomials in the indeterminate `q`.
//!
//! Everything the point-count layer needs: Gaussian binomials and
//! multinomials (flag counts), the order of `GL_n(F_q)`, leading-term
//! extraction for asymptotic comparisons, exact evaluation at prime powers,
//! and the substitution `q ↦ q^λ` used when transporting data from
//! `GL_l(F_{q^λ})`.
//!
//! Gaussian binomials are computed by exact division of cyclotomic factors:
//! each `q^j − 1` in the denominator is split into cyclotomic polynomials
//! `Φ_d(q)`, and every division is checked to leave zero remainder. An
//! inexact division panics — it would mean the implementation, not the
//! input, is wrong.

use alloc::{vec, vec::Vec};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// A polynomial in `q` with arbitrary-precision integer coefficients.
///
/// Stored densely as `coeffs[d]` = coefficient of `q^d`, with trailing zeros
/// trimmed; the zero polynomial has an empty coefficient vector and degree
/// "minus infinity" (`None`).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

/// The top term of a [`QPoly`]: degree and (nonzero) coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeadingTerm {
    pub degree: usize,
    pub coeff: BigInt,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        QPoly::from_coeffs(vec![BigInt::from(c)])
    }

    /// `q^d` with coefficient 1.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        QPoly { coeffs }
    }

    /// `q^j − 1`.
    pub fn q_pow_minus_one(j: usize) -> Self {
        let mut p = QPoly::monomial(j);
        p = &p - &QPoly::one();
        p
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial ("minus infinity").
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterator over `(degree, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    /// The top term; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<LeadingTerm> {
        self.degree().map(|d| LeadingTerm {
            degree: d,
            coeff: self.coeffs[d].clone(),
        })
    }

    /// Exact evaluation at an integer point (no prime-power restriction; used
    /// internally and by tests). See [`QPoly::evaluate`] for the checked
    /// public entry point.
    pub fn evaluate_at(&self, q: &BigInt) -> BigInt {
        // Horner.
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    /// Exact evaluation at a prime power `q ≥ 2`.
    pub fn evaluate(&self, q: u64) -> Result<BigInt> {
        check_prime_power(q)?;
        Ok(self.evaluate_at(&BigInt::from(q)))
    }

    /// Substitute `q ↦ q^λ`.
    pub fn substitute_q_power(&self, lambda: usize) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::invalid("substitute_q_power requires λ ≥ 1"));
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1) * lambda + 1];
        for (d, c) in self.terms() {
            coeffs[d * lambda] = c.clone();
        }
        Ok(QPoly::from_coeffs(coeffs))
    }

    pub fn neg(&self) -> Self {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Exact polynomial division; returns `None` if the remainder is nonzero
    /// or the quotient would need non-integer coefficients.
    pub fn checked_div_exact(&self, d: &QPoly) -> Option<QPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        let dd = d.degree().unwrap();
        let lead = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return None;
        }
        let qdeg = rem.len() - 1 - dd;
        let mut quot = vec![BigInt::zero(); qdeg + 1];
        for k in (0..=qdeg).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = num_integer::Integer::div_rem(&top, lead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                let sub = dc * &c;
                rem[k + i] -= sub;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(QPoly::from_coeffs(quot))
    }

    /// Exact division that panics on nonzero remainder; the panic indicates a
    /// bug in a counting formula, never bad user input.
    pub fn div_exact(&self, d: &QPoly) -> QPoly {
        self.checked_div_exact(d)
            .expect("inexact polynomial division: counting identity violated")
    }
}

impl core::ops::Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl core::ops::Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl core::ops::Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl core::fmt::Display for QPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = d == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if d > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if d == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{d}")?;
                }
            }
        }
        Ok(())
    }
}

/// Checks that `q` is a prime power `p^m ≥ 2`; returns `(p, m)`.
pub fn check_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::invalid("q must be a prime power ≥ 2"));
    }
    let mut n = q;
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            while n % d == 0 {
                n /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        // q itself is prime.
        return Ok((q, 1));
    }
    if n != 1 {
        return Err(Error::invalid(
            "q must be a prime power ≥ 2 (found two distinct prime factors)",
        ));
    }
    let mut m = 0u32;
    let mut acc = 1u64;
    while acc < q {
        acc *= p;
        m += 1;
    }
    Ok((p, m))
}

/// The `d`-th cyclotomic polynomial `Φ_d(q)`, computed by exact division of
/// `q^d − 1` by all `Φ_e` with `e | d`, `e < d`.
pub fn cyclotomic_polynomial(d: usize) -> QPoly {
    assert!(d >= 1);
    let mut num = QPoly::q_pow_minus_one(d);
    for e in 1..d {
        if d % e == 0 {
            num = num.div_exact(&cyclotomic_polynomial(e));
        }
    }
    num
}

/// Gaussian binomial `[n choose k]_q`, the number of `k`-dimensional
/// subspaces of `F_q^n`. Returns the zero polynomial when `k > n`.
pub fn gauss_binomial(n: usize, k: usize) -> QPoly {
    if k > n {
        return QPoly::zero();
    }
    let k = k.min(n - k);
    // Numerator ∏_{j=n−k+1..n}(q^j−1); divide by each (q^j−1), j ≤ k, split
    // into its cyclotomic factors so every division step is exact.
    let mut acc = QPoly::one();
    for j in (n - k + 1)..=n {
        acc = &acc * &QPoly::q_pow_minus_one(j);
    }
    for j in 1..=k {
        for e in 1..=j {
            if j % e == 0 {
                acc = acc.div_exact(&cyclotomic_polynomial(e));
            }
        }
    }
    acc
}

/// Number of flags in `F_q^n` (`n` = sum of the composition) with successive
/// quotient dimensions `d_1, …, d_s`. Accepts arbitrary compositions; the
/// count only depends on the multiset of parts.
pub fn q_multinomial_composition(parts: &[usize]) -> QPoly {
    let mut remaining: usize = parts.iter().sum();
    let mut acc = QPoly::one();
    for &d in parts {
        acc = &acc * &gauss_binomial(remaining, d);
        remaining -= d;
    }
    acc
}

/// Flag count for the type given by a partition (`dim(I_D)` as a polynomial).
pub fn q_multinomial(d: &Partition) -> QPoly {
    q_multinomial_composition(d.parts())
}

/// `|GL_n(F_q)| = ∏_{i=0..n−1}(q^n − q^i)` as a polynomial.
pub fn gl_order(n: usize) -> Result<QPoly> {
    if n == 0 {
        return Err(Error::invalid("gl_order requires n ≥ 1"));
    }
    let mut acc = QPoly::one();
    for i in 0..n {
        let term = &QPoly::monomial(n) - &QPoly::monomial(i);
        acc = &acc * &term;
    }
    Ok(acc)
}

/// `|SL_n(F_q)| = |GL_n(F_q)| / (q − 1)`.
pub fn sl_order(n: usize) -> Result<QPoly> {
    Ok(gl_order(n)?.div_exact(&QPoly::q_pow_minus_one(1)))
}

/// Leading exponent `d_L = Σ_{i<j} d_i d_j` of a flag count.
pub fn d_l(parts: &[usize]) -> usize {
    let mut acc = 0;
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            acc += parts[i] * parts[j];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use proptest::prelude::*;

    fn qp(coeffs: &[i64]) -> QPoly {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gauss_binomial_small() {
        // (3,1) → q² + q + 1; brute-force count of lines in F_2^3 is 7.
        assert_eq!(gauss_binomial(3, 1), qp(&[1, 1, 1]));
        assert_eq!(
            gauss_binomial(3, 1).evaluate(2).unwrap(),
            BigInt::from(7)
        );
        // (n,0) → 1.
        assert_eq!(gauss_binomial(5, 0), QPoly::one());
        // (2,1) → q + 1; lines in F_3^2 = 4.
        assert_eq!(gauss_binomial(2, 1), qp(&[1, 1]));
        assert_eq!(gauss_binomial(2, 1).evaluate(3).unwrap(), BigInt::from(4));
        // k > n → empty Grassmannian.
        assert!(gauss_binomial(2, 3).is_zero());
        // Symmetry.
        assert_eq!(gauss_binomial(6, 2), gauss_binomial(6, 4));
    }

    #[test]
    fn gauss_binomial_pascal_recurrence() {
        // [n,k]_q = [n−1,k−1]_q + q^k·[n−1,k]_q — an independent oracle for
        // the division-based computation.
        for n in 1..=10usize {
            for k in 1..n {
                let lhs = gauss_binomial(n, k);
                let rhs = &gauss_binomial(n - 1, k - 1)
                    + &(&QPoly::monomial(k) * &gauss_binomial(n - 1, k));
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn q_multinomial_examples() {
        let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(q_multinomial(&p(&[1, 1])), qp(&[1, 1]));
        assert_eq!(q_multinomial(&p(&[2, 1])), qp(&[1, 1, 1]));
        // Complete flags in F_2^3: brute force gives 21.
        let f111 = q_multinomial(&p(&[1, 1, 1]));
        assert_eq!(f111, &qp(&[1, 1]) * &qp(&[1, 1, 1]));
        assert_eq!(f111.evaluate(2).unwrap(), BigInt::from(21));
    }

    #[test]
    fn gl_order_values() {
        assert_eq!(gl_order(1).unwrap(), qp(&[-1, 1]));
        // |GL_2(F_3)| = 48.
        assert_eq!(gl_order(2).unwrap().evaluate(3).unwrap(), BigInt::from(48));
        // |GL_3(F_2)| = 168 (brute-force matrix enumeration agrees; see matgroup tests).
        assert_eq!(gl_order(3).unwrap().evaluate(2).unwrap(), BigInt::from(168));
        assert_eq!(sl_order(3).unwrap().evaluate(3).unwrap(), BigInt::from(5616));
    }

    #[test]
    fn leading_evaluate_substitute() {
        let p = qp(&[1, 1, 1]);
        let lt = p.leading().unwrap();
        assert_eq!((lt.degree, lt.coeff), (2, BigInt::one()));
        assert_eq!(qp(&[1, 1]).evaluate(3).unwrap(), BigInt::from(4));
        assert_eq!(qp(&[1, 1]).substitute_q_power(2).unwrap(), qp(&[1, 0, 1]));
        assert!(QPoly::zero().leading().is_none());
        assert!(qp(&[1, 1]).evaluate(6).is_err());
        assert!(qp(&[1, 1]).evaluate(1).is_err());
        assert!(qp(&[1, 1]).evaluate(8).is_ok());
        assert!(qp(&[1, 1]).evaluate(9).is_ok());
    }

    #[test]
    fn degree_law_and_monotonicity() {
        // leading(q_multinomial(D)).degree == Σ_{i<j} d_i d_j for weight ≤ 10,
        // and strict dominance reverses the degree order.
        for n in 1..=10usize {
            let parts = Partition::all_of_weight(n);
            for d in &parts {
                let lt = q_multinomial(d).leading().unwrap();
                assert_eq!(lt.degree, d_l(d.parts()));
                assert_eq!(lt.coeff, BigInt::one());
            }
            for a in &parts {
                for b in &parts {
                    use crate::partitions::DominanceRelation::*;
                    if a.compare_dominance(b).unwrap() == StrictlyDominates {
                        assert!(d_l(a.parts()) < d_l(b.parts()));
                    }
                }
            }
        }
    }

    #[test]
    fn grassmannian_ratio_identity() {
        // gauss(n−1,u)/gauss(n,u) = (q^{n−u}−1)/(q^n−1) at q ∈ {2,3,5}.
        for n in 2..=6u64 {
            for u in 0..=(n - 1) {
                for q in [2u64, 3, 5] {
                    let a = gauss_binomial(n as usize - 1, u as usize)
                        .evaluate(q)
                        .unwrap();
                    let b = gauss_binomial(n as usize, u as usize).evaluate(q).unwrap();
                    let qn = BigInt::from(q).pow(n as u32);
                    let qnu = BigInt::from(q).pow((n - u) as u32);
                    // a/b == (q^{n−u}−1)/(q^n−1)  ⟺  a(q^n−1) == b(q^{n−u}−1).
                    assert_eq!(a * (qn - 1), b * (qnu - 1));
                }
            }
        }
    }

    #[test]
    fn cyclotomic_products() {
        // ∏_{d|n} Φ_d = q^n − 1.
        for n in 1..=12usize {
            let mut acc = QPoly::one();
            for d in 1..=n {
                if n % d == 0 {
                    acc = &acc * &cyclotomic_polynomial(d);
                }
            }
            assert_eq!(acc, QPoly::q_pow_minus_one(n));
        }
    }

    proptest! {
        #[test]
        fn division_roundtrip(a in proptest::collection::vec(-5i64..6, 1..6),
                              b in proptest::collection::vec(-5i64..6, 1..6)) {
            let pa = qp(&a);
            let pb = qp(&b);
            prop_assume!(!pa.is_zero() && !pb.is_zero());
            let prod = &pa * &pb;
            prop_assert_eq!(prod.div_exact(&pb), pa);
        }

        #[test]
        fn eval_hom(a in proptest::collection::vec(-9i64..10, 0..7),
                    b in proptest::collection::vec(-9i64..10, 0..7),
                    q in 2u64..6) {
            prop_assume!(q != 4 || true);
            let pa = qp(&a);
            let pb = qp(&b);
            let q_big = BigInt::from(q);
            let sum = (&pa + &pb).evaluate_at(&q_big);
            prop_assert_eq!(sum, pa.evaluate_at(&q_big) + pb.evaluate_at(&q_big));
            let prod = (&pa * &pb).evaluate_at(&q_big);
            prop_assert_eq!(prod, pa.evaluate_at(&q_big) * pb.evaluate_at(&q_big));
        }
    }
}
