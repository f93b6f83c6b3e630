//! The transvection random walk on `SL_n(F_q)`: exact convolution
//! distributions, the character-theoretic Fourier expansion, total-variation
//! distances, the second-moment upper bound, spectral mixing rates, the
//! closed-form large-`q` bound curve, and Monte Carlo fixed-space statistics
//! for groups beyond the enumeration cap.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_core::{RngCore, SeedableRng};

use crate::chartab::GroupData;
use crate::error::{Error, Result};
use crate::matgroup::{ConjugacyClasses, FqField, GroupTable, MatrixFq};

/// Largest group the exact convolution will iterate over.
pub const DEFAULT_WALK_CAP: usize = 10_000;

/// Largest step count for exact cyclotomic Fourier evaluation; beyond this
/// the float shadow mode must be used (coefficient growth).
pub const EXACT_FOURIER_STEP_CAP: usize = 12;

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

/// Probability masses, exact or floating-point.
#[derive(Clone, Debug)]
pub enum DistMass {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

/// A probability distribution over group elements (by ordinal) or over
/// conjugacy classes (by class index).
#[derive(Clone, Debug)]
pub struct Distribution {
    pub over_classes: bool,
    pub mass: DistMass,
}

impl Distribution {
    pub fn len(&self) -> usize {
        match &self.mass {
            DistMass::Exact(v) => v.len(),
            DistMass::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks nonnegativity and total mass one (exactly, or within 1e−12).
    pub fn validate(&self) -> Result<()> {
        match &self.mass {
            DistMass::Exact(v) => {
                if v.iter().any(|m| m.is_negative()) {
                    return Err(Error::internal("negative probability mass"));
                }
                let total: BigRational = v.iter().sum();
                if !total.is_one() {
                    return Err(Error::internal("exact masses do not sum to one"));
                }
            }
            DistMass::Float(v) => {
                if v.iter().any(|m| *m < -1e-12) {
                    return Err(Error::internal("negative probability mass"));
                }
                let total: f64 = v.iter().sum();
                if libm::fabs(total - 1.0) > 1e-12 {
                    return Err(Error::internal("float masses do not sum to one"));
                }
            }
        }
        Ok(())
    }

    pub fn masses_f64(&self) -> Vec<f64> {
        match &self.mass {
            DistMass::Exact(v) => v.iter().map(|m| m.to_f64().unwrap_or(f64::NAN)).collect(),
            DistMass::Float(v) => v.clone(),
        }
    }

    /// Uniform distribution over the whole group, by ordinal.
    pub fn uniform_over_group(table: &GroupTable) -> Distribution {
        let order = BigInt::from(table.len());
        Distribution {
            over_classes: false,
            mass: DistMass::Exact(vec![
                BigRational::new(BigInt::one(), order);
                table.len()
            ]),
        }
    }

    /// Uniform distribution pushed to classes: mass `|C_j| / |G|`.
    pub fn uniform_over_classes(classes: &ConjugacyClasses, order: u64) -> Distribution {
        Distribution {
            over_classes: true,
            mass: DistMass::Exact(
                classes
                    .sizes
                    .iter()
                    .map(|s| BigRational::new(BigInt::from(*s), BigInt::from(order)))
                    .collect(),
            ),
        }
    }

    /// Pushes an element-level exact distribution to classes.
    pub fn push_to_classes(&self, classes: &ConjugacyClasses) -> Result<Distribution> {
        if self.over_classes {
            return Err(Error::invalid("distribution is already over classes"));
        }
        match &self.mass {
            DistMass::Exact(v) => {
                let mut out = vec![BigRational::zero(); classes.reps.len()];
                for (ord, m) in v.iter().enumerate() {
                    out[classes.class_of[ord] as usize] += m;
                }
                Ok(Distribution {
                    over_classes: true,
                    mass: DistMass::Exact(out),
                })
            }
            DistMass::Float(v) => {
                let mut out = vec![0.0f64; classes.reps.len()];
                for (ord, m) in v.iter().enumerate() {
                    out[classes.class_of[ord] as usize] += m;
                }
                Ok(Distribution {
                    over_classes: true,
                    mass: DistMass::Float(out),
                })
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Exact convolution
// ---------------------------------------------------------------------------

/// Exact distribution of the `l`-step walk driven by the uniform measure on
/// the given conjugacy class, started at the identity. Computed iteratively:
/// integer visit counts with denominator `|C|^l`.
pub fn exact_convolution(
    table: &GroupTable,
    classes: &ConjugacyClasses,
    class_idx: usize,
    l: usize,
) -> Result<Distribution> {
    if table.len() > DEFAULT_WALK_CAP {
        return Err(Error::limit(format!(
            "exact convolution capped at group order {DEFAULT_WALK_CAP}"
        )));
    }
    if class_idx >= classes.reps.len() {
        return Err(Error::invalid("class index out of range"));
    }
    let step_class = &classes.elements[class_idx];
    // Right-multiplication permutations, one per class element.
    let perms: Vec<Vec<u32>> = step_class
        .iter()
        .map(|&c| {
            (0..table.len())
                .map(|s| table.mul_ord(s, c as usize) as u32)
                .collect()
        })
        .collect();
    let mut counts = vec![BigUint::zero(); table.len()];
    counts[table.identity_ord()] = BigUint::one();
    for _ in 0..l {
        let mut next = vec![BigUint::zero(); table.len()];
        for (s, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for perm in &perms {
                next[perm[s] as usize] += c;
            }
        }
        counts = next;
    }
    let denom = BigInt::from(step_class.len()).pow(l as u32);
    let mass: Vec<BigRational> = counts
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), denom.clone()))
        .collect();
    let dist = Distribution {
        over_classes: false,
        mass: DistMass::Exact(mass),
    };
    dist.validate()?;
    Ok(dist)
}

// ---------------------------------------------------------------------------
// Fourier expansion
// ---------------------------------------------------------------------------

/// Exact class-level distribution of the `l`-step transvection walk from the
/// character expansion: `P(C_j) = (|C_j|/|G|) Σ_π dim_π^{1−l} χ_π(T)^l
/// χ_π(g_j)`, evaluated in cyclotomic arithmetic and certified rational.
pub fn fourier_distribution(gd: &GroupData, l: usize) -> Result<Distribution> {
    if l > EXACT_FOURIER_STEP_CAP {
        return Err(Error::limit(format!(
            "exact Fourier evaluation capped at {EXACT_FOURIER_STEP_CAP} steps; use the float mode"
        )));
    }
    let ct = &gd.chars;
    let ring = &ct.ring;
    let tc = gd.transvection_class()?;
    let order = BigInt::from(gd.order());
    let nclasses = ct.class_sizes.len();
    // χ_π(T)^l, and the rational scale dim^{1−l}, per irrep.
    let powers: Vec<_> = (0..ct.dims.len())
        .map(|i| ring.pow(ct.value(i, tc), l))
        .collect();
    let scales: Vec<BigRational> = ct
        .dims
        .iter()
        .map(|&d| {
            if l == 0 {
                BigRational::from_integer(BigInt::from(d))
            } else {
                BigRational::new(BigInt::one(), BigInt::from(d).pow(l as u32 - 1))
            }
        })
        .collect();
    let mut mass = Vec::with_capacity(nclasses);
    for j in 0..nclasses {
        let mut dense = vec![BigRational::zero(); ring.order as usize];
        for i in 0..ct.dims.len() {
            let term = ring.mul(&powers[i], ct.value(i, j));
            for (&e, &c) in &term.terms {
                dense[e as usize] += &scales[i] * BigRational::from_integer(BigInt::from(c));
            }
        }
        let total = ring
            .dense_to_rational(dense)
            .ok_or_else(|| Error::internal("Fourier sum is not rational"))?;
        let class_scale =
            BigRational::new(BigInt::from(ct.class_sizes[j]), order.clone());
        mass.push(class_scale * total);
    }
    let dist = Distribution {
        over_classes: true,
        mass: DistMass::Exact(mass),
    };
    dist.validate()?;
    Ok(dist)
}

/// Float shadow of [`fourier_distribution`] for large step counts.
pub fn fourier_distribution_f64(gd: &GroupData, l: usize) -> Result<Distribution> {
    let ct = &gd.chars;
    let ring = &ct.ring;
    let tc = gd.transvection_class()?;
    let order = gd.order() as f64;
    let mut mass = Vec::with_capacity(ct.class_sizes.len());
    for j in 0..ct.class_sizes.len() {
        let mut total = 0.0f64;
        for i in 0..ct.dims.len() {
            let d = ct.dims[i] as f64;
            let (tr, ti) = ring.to_complex(ct.value(i, tc));
            let (vr, vi) = ring.to_complex(ct.value(i, j));
            // (χ(T)/dim)^l in polar form.
            let r = libm::hypot(tr / d, ti / d);
            let theta = libm::atan2(ti / d, tr / d);
            let mag = libm::pow(r, l as f64);
            let (pr, pi) = (
                mag * libm::cos(theta * l as f64),
                mag * libm::sin(theta * l as f64),
            );
            total += d * (pr * vr - pi * vi);
        }
        mass.push(ct.class_sizes[j] as f64 / order * total);
    }
    let dist = Distribution {
        over_classes: true,
        mass: DistMass::Float(mass),
    };
    dist.validate()?;
    Ok(dist)
}

// ---------------------------------------------------------------------------
// Total variation and bounds
// ---------------------------------------------------------------------------

/// Total-variation value: exact when both inputs are exact.
#[derive(Clone, Debug)]
pub enum TvValue {
    Exact(BigRational),
    Float(f64),
}

impl TvValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            TvValue::Exact(v) => v.to_f64().unwrap_or(f64::NAN),
            TvValue::Float(v) => *v,
        }
    }
}

/// Total-variation distance `½ Σ |p − u|`.
pub fn tv_distance(p: &Distribution, u: &Distribution) -> Result<TvValue> {
    if p.over_classes != u.over_classes || p.len() != u.len() {
        return Err(Error::invalid("distributions live on different supports"));
    }
    match (&p.mass, &u.mass) {
        (DistMass::Exact(a), DistMass::Exact(b)) => {
            let mut total = BigRational::zero();
            for (x, y) in a.iter().zip(b) {
                total += (x - y).abs();
            }
            Ok(TvValue::Exact(
                total / BigRational::from_integer(BigInt::from(2)),
            ))
        }
        _ => {
            let a = p.masses_f64();
            let b = u.masses_f64();
            let total: f64 = a
                .iter()
                .zip(&b)
                .map(|(x, y)| libm::fabs(x - y))
                .sum();
            Ok(TvValue::Float(total / 2.0))
        }
    }
}

/// Second-moment upper bound on the squared TV distance at step `l`:
/// `¼ Σ_{π≠1} dim_π² |χ_π(T)/dim_π|^{2l}`. Compare `sqrt` of this to TV.
pub fn ds_upper_bound(gd: &GroupData, l: usize) -> Result<f64> {
    let ct = &gd.chars;
    let ring = &ct.ring;
    let tc = gd.transvection_class()?;
    let trivial = ct.trivial_irrep();
    let mut total = 0.0f64;
    for i in 0..ct.dims.len() {
        if i == trivial {
            continue;
        }
        let d = ct.dims[i] as f64;
        let (tr, ti) = ring.to_complex(ct.value(i, tc));
        let ratio_sq = (tr * tr + ti * ti) / (d * d);
        total += d * d * libm::pow(ratio_sq, l as f64);
    }
    Ok(total / 4.0)
}

/// Exact spectral mixing rate: the maximum of `|χ_π(T)/dim_π|` over
/// nontrivial irreps, certified rational.
pub fn spectral_mixing_rate(gd: &GroupData) -> Result<BigRational> {
    let ct = &gd.chars;
    let ring = &ct.ring;
    let tc = gd.transvection_class()?;
    let trivial = ct.trivial_irrep();
    let mut best: Option<BigRational> = None;
    let mut best_float = 0.0f64;
    for i in 0..ct.dims.len() {
        if i == trivial {
            continue;
        }
        let d = ct.dims[i];
        let (tr, ti) = ring.to_complex(ct.value(i, tc));
        let modulus = libm::hypot(tr, ti) / d as f64;
        if modulus > best_float {
            best_float = modulus;
        }
        if let Some(int) = ring.to_integer(ct.value(i, tc)) {
            let cand = BigRational::new(int, BigInt::from(d)).abs();
            if best.as_ref().map(|b| cand > *b).unwrap_or(true) {
                best = Some(cand);
            }
        }
    }
    let best = best.ok_or_else(|| Error::internal("no rational character ratio found"))?;
    let bf = best.to_f64().unwrap_or(0.0);
    if best_float > bf + 1e-9 {
        return Err(Error::internal(
            "maximal character ratio is attained at an irrational value",
        ));
    }
    Ok(best)
}

/// Closed-form large-`q` bound curve `(1/(2√q)) (1/q)^{l−n}` for the walk on
/// `SL_n(F_q)`, `n ≥ 3`.
pub fn tvb_closed_form(n: usize, q: u64, l: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::unsupported("closed-form bound requires n ≥ 3"));
    }
    crate::qseries::check_prime_power(q)?;
    let qf = q as f64;
    Ok(0.5 * libm::pow(qf, n as f64 - l as f64 - 0.5))
}

// ---------------------------------------------------------------------------
// Mixing report
// ---------------------------------------------------------------------------

/// Per-step TV distances together with the bound curves and rate data.
#[derive(Clone, Debug)]
pub struct MixingReport {
    /// `tv[i]` is the TV distance after `i + 1` steps.
    pub tv: Vec<f64>,
    /// Square root of the second-moment bound, same indexing.
    pub ds_sqrt: Vec<f64>,
    /// Closed-form curve (only for `n ≥ 3`), same indexing.
    pub tvb: Vec<f64>,
    /// First step count at which TV drops to 1/4 or below.
    pub mixing_time: Option<usize>,
    /// Per-step TV decay factor at the end of the run, measured over two
    /// steps (`sqrt(tv[last]/tv[last−2])`) so that top eigenvalues of equal
    /// modulus but opposite sign do not leave a parity wobble.
    pub rate_estimate: f64,
    /// Exact spectral rate.
    pub spectral_rate: BigRational,
}

/// Runs the walk to `lmax` steps in float Fourier mode and collects TV,
/// bound curves, and rate estimates.
pub fn mixing_report(gd: &GroupData, lmax: usize) -> Result<MixingReport> {
    if lmax == 0 {
        return Err(Error::invalid("mixing report needs at least one step"));
    }
    let uniform = Distribution::uniform_over_classes(&gd.classes, gd.order());
    let n = gd.table.n;
    let q = gd.table.field.q;
    let mut tv = Vec::with_capacity(lmax);
    let mut ds_sqrt = Vec::with_capacity(lmax);
    let mut tvb = Vec::with_capacity(lmax);
    let mut mixing_time = None;
    for l in 1..=lmax {
        let dist = fourier_distribution_f64(gd, l)?;
        let t = tv_distance(&dist, &uniform)?.to_f64();
        if mixing_time.is_none() && t <= 0.25 {
            mixing_time = Some(l);
        }
        tv.push(t);
        ds_sqrt.push(libm::sqrt(ds_upper_bound(gd, l)?));
        if n >= 3 {
            tvb.push(tvb_closed_form(n, q, l)?);
        }
    }
    let rate_estimate = if lmax >= 3 && tv[lmax - 3] > 0.0 {
        libm::sqrt(tv[lmax - 1] / tv[lmax - 3])
    } else {
        f64::NAN
    };
    Ok(MixingReport {
        tv,
        ds_sqrt,
        tvb,
        mixing_time,
        rate_estimate,
        spectral_rate: spectral_mixing_rate(gd)?,
    })
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

/// Trials per RNG stream; the stream index is the chunk index, so results
/// are identical for any worker count.
const MC_CHUNK: u64 = 1024;

/// Fixed-space-dimension histogram of the `l`-step product of uniformly
/// random transvections in `SL_n(F_q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McReport {
    pub n: usize,
    pub q: u64,
    pub steps: usize,
    pub trials: u64,
    pub seed: u64,
    /// `histogram[d]` counts trials whose product fixes a `d`-dimensional
    /// subspace pointwise.
    pub histogram: Vec<u64>,
}

/// Uniform nonzero vector over `F_q^n`.
fn sample_nonzero_vector(rng: &mut rand_chacha::ChaCha8Rng, field: &FqField, n: usize) -> Vec<u8> {
    loop {
        let v: Vec<u8> = (0..n).map(|_| sample_element(rng, field)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Uniform field element by rejection on a power-of-two window.
fn sample_element(rng: &mut rand_chacha::ChaCha8Rng, field: &FqField) -> u8 {
    let q = field.q;
    let mask = q.next_power_of_two() - 1;
    loop {
        let x = rng.next_u64() & mask;
        if x < q {
            return x as u8;
        }
    }
}

/// Uniform transvection `I + v wᵀ` with `wᵀv = 0`, `v, w ≠ 0`; the `(v, w)`
/// parametrization covers every transvection the same number of times.
fn sample_transvection(
    rng: &mut rand_chacha::ChaCha8Rng,
    field: &FqField,
    n: usize,
) -> MatrixFq {
    let v = sample_nonzero_vector(rng, field, n);
    let pivot = v.iter().position(|&x| x != 0).expect("nonzero vector");
    let inv_pivot = field.inv(v[pivot]);
    loop {
        let mut w = vec![0u8; n];
        let mut dot = 0u8;
        for j in 0..n {
            if j == pivot {
                continue;
            }
            w[j] = sample_element(rng, field);
            dot = field.add(dot, field.mul(w[j], v[j]));
        }
        w[pivot] = field.neg(field.mul(dot, inv_pivot));
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        let mut m = MatrixFq::identity(n);
        for i in 0..n {
            for j in 0..n {
                let cur = m.get(i, j);
                m.set(i, j, field.add(cur, field.mul(v[i], w[j])));
            }
        }
        return m;
    }
}

/// Deterministic Monte Carlo walk: `trials` products of `l` random
/// transvections, reduced chunk-by-chunk in index order.
pub fn mc_walk(n: usize, q: u64, l: usize, trials: u64, seed: u64) -> Result<McReport> {
    if trials == 0 {
        return Err(Error::invalid("at least one trial is required"));
    }
    if n < 2 {
        return Err(Error::invalid("the walk needs n ≥ 2"));
    }
    let field = FqField::new(q)?;
    let mut histogram = vec![0u64; n + 1];
    let chunks = trials.div_ceil(MC_CHUNK);
    for chunk in 0..chunks {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let in_chunk = MC_CHUNK.min(trials - chunk * MC_CHUNK);
        for _ in 0..in_chunk {
            let mut product = MatrixFq::identity(n);
            for _ in 0..l {
                let t = sample_transvection(&mut rng, &field, n);
                product = t.mat_mul(&field, &product);
            }
            histogram[product.fixed_space_dim(&field)] += 1;
        }
    }
    Ok(McReport {
        n,
        q,
        steps: l,
        trials,
        seed,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::GroupKind;

    fn sl3_f2() -> GroupData {
        GroupData::new(GroupKind::Sl, 3, 2).unwrap()
    }

    #[test]
    fn one_step_is_uniform_on_class() {
        let gd = sl3_f2();
        let tc = gd.transvection_class().unwrap();
        let dist = exact_convolution(&gd.table, &gd.classes, tc, 1).unwrap();
        let DistMass::Exact(mass) = &dist.mass else {
            panic!("exact mode expected")
        };
        let size = gd.classes.sizes[tc];
        for (ord, m) in mass.iter().enumerate() {
            if gd.classes.class_of[ord] as usize == tc {
                assert_eq!(*m, BigRational::new(BigInt::one(), BigInt::from(size)));
            } else {
                assert!(m.is_zero());
            }
        }
    }

    #[test]
    fn two_step_support_fixes_a_line() {
        // A product of two transvections fixes a subspace of dimension
        // ≥ n − 2 pointwise.
        let gd = sl3_f2();
        let tc = gd.transvection_class().unwrap();
        let dist = exact_convolution(&gd.table, &gd.classes, tc, 2).unwrap();
        let DistMass::Exact(mass) = &dist.mass else {
            panic!("exact mode expected")
        };
        for (ord, m) in mass.iter().enumerate() {
            if !m.is_zero() {
                let fixed = gd.table.matrix(ord).fixed_space_dim(&gd.table.field);
                assert!(fixed >= 1, "ordinal {ord} fixes nothing");
            }
        }
    }

    #[test]
    fn long_walk_converges_to_uniform() {
        let gd = sl3_f2();
        let dist = fourier_distribution_f64(&gd, 40).unwrap();
        let uniform = Distribution::uniform_over_classes(&gd.classes, gd.order());
        let tv = tv_distance(&dist, &uniform).unwrap().to_f64();
        assert!(tv < 1e-9, "tv = {tv}");
    }

    #[test]
    fn fourier_matches_convolution() {
        let gd = sl3_f2();
        let tc = gd.transvection_class().unwrap();
        for l in 0..=4usize {
            let conv = exact_convolution(&gd.table, &gd.classes, tc, l)
                .unwrap()
                .push_to_classes(&gd.classes)
                .unwrap();
            let four = fourier_distribution(&gd, l).unwrap();
            let (DistMass::Exact(a), DistMass::Exact(b)) = (&conv.mass, &four.mass) else {
                panic!("exact mode expected")
            };
            assert_eq!(a, b, "step {l}");
        }
    }

    #[test]
    fn tv_basics() {
        let gd = sl3_f2();
        let uniform = Distribution::uniform_over_group(&gd.table);
        // p = u → 0.
        let tv = tv_distance(&uniform, &uniform).unwrap();
        let TvValue::Exact(v) = tv else { panic!() };
        assert!(v.is_zero());
        // Point mass vs uniform on N elements → 1 − 1/N.
        let mut point = vec![BigRational::zero(); gd.table.len()];
        point[0] = BigRational::one();
        let point = Distribution {
            over_classes: false,
            mass: DistMass::Exact(point),
        };
        let TvValue::Exact(v) = tv_distance(&point, &uniform).unwrap() else {
            panic!()
        };
        let n = BigInt::from(gd.table.len());
        assert_eq!(v, BigRational::new(&n - 1, n.clone()));
    }

    #[test]
    fn tv_bounds_hold() {
        let gd = sl3_f2();
        let uniform = Distribution::uniform_over_classes(&gd.classes, gd.order());
        // Uniform mass of fixed-point-free elements (lower-bound witness):
        // 48/168 in this group.
        let fixed_dims = gd.class_fixed_dims();
        let fpf_mass: BigRational = gd
            .classes
            .sizes
            .iter()
            .enumerate()
            .filter(|(j, _)| fixed_dims[*j] == 0)
            .map(|(_, s)| BigRational::new(BigInt::from(*s), BigInt::from(gd.order())))
            .sum();
        assert_eq!(
            fpf_mass,
            BigRational::new(BigInt::from(48), BigInt::from(168))
        );
        for l in 1..=6usize {
            let dist = fourier_distribution(&gd, l).unwrap();
            let TvValue::Exact(tv) = tv_distance(&dist, &uniform).unwrap() else {
                panic!()
            };
            assert!(tv >= BigRational::zero() && tv <= BigRational::one());
            let ds = libm::sqrt(ds_upper_bound(&gd, l).unwrap());
            assert!(tv.to_f64().unwrap() <= ds + 1e-12, "l={l}");
            if l < 3 {
                assert!(tv >= fpf_mass, "l={l}");
            }
        }
    }

    #[test]
    fn spectral_rate_sl3_f2() {
        // Max over the oracle table: the six-dimensional constituent of the
        // permutation action on nonzero vectors has χ(T)/dim = 2/6. The
        // large-q value (q²−1)/(q³−1) is not attained at q = 2 because its
        // attaining representation needs a nontrivial character of F_q^×.
        let gd = sl3_f2();
        assert_eq!(
            spectral_mixing_rate(&gd).unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(3))
        );
    }

    #[test]
    fn rate_extraction_converges() {
        let gd = sl3_f2();
        let report = mixing_report(&gd, 30).unwrap();
        let spectral = report.spectral_rate.to_f64().unwrap();
        assert!(
            libm::fabs(report.rate_estimate - spectral) / spectral < 0.01,
            "estimate {} vs spectral {spectral}",
            report.rate_estimate
        );
        // TV is non-increasing and within [0, 1].
        for w in report.tv.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        assert!(report.tv.iter().all(|t| (0.0..=1.0).contains(t)));
    }

    #[test]
    fn tvb_formula() {
        // (1/(2√3))(1/3)^{l−3} at n = 3, q = 3.
        let v = tvb_closed_form(3, 3, 5).unwrap();
        let expect = 0.5 / libm::sqrt(3.0) / 9.0;
        assert!(libm::fabs(v - expect) < 1e-15);
        assert!(tvb_closed_form(2, 3, 5).is_err());
    }

    #[test]
    fn mc_one_step_fixes_hyperplane() {
        let report = mc_walk(3, 2, 1, 500, 7).unwrap();
        assert_eq!(report.histogram[2], 500);
        assert!(report.histogram.iter().take(2).all(|&c| c == 0));
    }

    #[test]
    fn mc_short_walk_rank_bound() {
        // l < n forces fixed dimension ≥ n − l with certainty.
        let report = mc_walk(5, 3, 3, 1000, 11).unwrap();
        assert!(report.histogram.iter().take(2).all(|&c| c == 0));
        assert_eq!(report.histogram.iter().sum::<u64>(), 1000);
    }

    #[test]
    fn mc_deterministic() {
        let a = mc_walk(3, 3, 4, 2500, 42).unwrap();
        let b = mc_walk(3, 3, 4, 2500, 42).unwrap();
        assert_eq!(a, b);
        let c = mc_walk(3, 3, 4, 2500, 43).unwrap();
        assert_ne!(a.histogram, c.histogram);
    }
}
