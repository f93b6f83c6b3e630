//! The acceptance suite: eight verification criteria combining the symbolic
//! formulas with exact small-group oracles. Shared between the `verify`
//! subcommand and the integration test target.

use std::collections::BTreeMap;
use std::path::Path;
use std::rc::Rc;

use glnq::chartab::{
    induced_pieri_decomposition, rank_report, restrict_to_sl, verify_orthogonality,
    character_ratio_at_transvection, GroupData, SymOracle,
};
use glnq::matgroup::GroupKind;
use glnq::partitions::{pieri_expand, transition_matrix, Partition};
use glnq::pcf::{cr_at_t, dim_bounds, enumerate_irreps, eta, rank_counts, PcfIrrep};
use glnq::qseries::QPoly;
use glnq::sps::{fixed_flags, fixed_flags_brute_force};
use glnq::walk::{
    ds_upper_bound, exact_convolution, fourier_distribution, fourier_distribution_f64,
    spectral_mixing_rate, tv_distance, tvb_closed_form, DistMass, Distribution, TvValue,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Outcome of one acceptance criterion: `Ok(summary)` or `Err(reason)`.
pub struct Criterion {
    pub index: usize,
    pub name: &'static str,
    pub outcome: Result<String, String>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn line(&self) -> String {
        match &self.outcome {
            Ok(msg) => format!("criterion {} ({}): PASS — {msg}", self.index, self.name),
            Err(msg) => format!("criterion {} ({}): FAIL — {msg}", self.index, self.name),
        }
    }
}

/// Lazily-loaded oracle groups shared across criteria.
struct Ctx<'a> {
    cache_dir: &'a Path,
    groups: BTreeMap<(&'static str, usize, u64), Rc<GroupData>>,
}

impl<'a> Ctx<'a> {
    fn group(&mut self, kind: GroupKind, n: usize, q: u64) -> Result<Rc<GroupData>, String> {
        let key = (kind.as_str(), n, q);
        if !self.groups.contains_key(&key) {
            let gd = crate::cache::load_group_data(self.cache_dir, kind, n, q)
                .map_err(|e| format!("loading {}_{n}({q}): {e}", kind.as_str()))?;
            self.groups.insert(key, Rc::new(gd));
        }
        Ok(Rc::clone(self.groups.get(&key).expect("just inserted")))
    }
}

/// Runs all eight criteria, printing progress to standard error.
pub fn run_all(cache_dir: &Path) -> Vec<Criterion> {
    let mut ctx = Ctx {
        cache_dir,
        groups: BTreeMap::new(),
    };
    let checks: Vec<(
        usize,
        &'static str,
        fn(&mut Ctx) -> Result<String, String>,
    )> = vec![
        (1, "exact formulas", c1_exact_formulas),
        (2, "oracle equivalence", c2_oracle_equivalence),
        (3, "Pieri/Kostka", c3_pieri_kostka),
        (4, "fixed flags", c4_fixed_flags),
        (5, "walk", c5_walk),
        (6, "eta", c6_eta),
        (7, "counting", c7_counting),
        (8, "restriction", c8_restriction),
    ];
    let mut out = Vec::new();
    for (index, name, f) in checks {
        eprintln!("verify: running criterion {index} ({name})…");
        out.push(Criterion {
            index,
            name,
            outcome: f(&mut ctx),
        });
    }
    out
}

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).expect("valid partition")
}

// ---------------------------------------------------------------------------
// 1. Exact-formula suite
// ---------------------------------------------------------------------------

fn c1_exact_formulas(_ctx: &mut Ctx) -> Result<String, String> {
    for n in 2..=8usize {
        for k in 1..n {
            // Hook {n−k, 1^k}: leading q^{k(n−k)+k(k−1)/2}.
            let mut hook = vec![n - k];
            hook.extend(std::iter::repeat(1).take(k));
            let lead = PcfIrrep::from_shape(part(&hook))
                .dim()
                .and_then(|d| {
                    d.leading()
                        .ok_or_else(|| glnq::Error::internal("zero dim"))
                })
                .map_err(|e| e.to_string())?;
            if lead.degree != k * (n - k) + k * (k - 1) / 2 || !lead.coeff.is_one() {
                return Err(format!("hook dimension leading term wrong at n={n}, k={k}"));
            }
            // Two-row {n−k, k}: leading q^{k(n−k)}.
            if k <= n - k {
                let lead = PcfIrrep::from_shape(part(&[n - k, k]))
                    .dim()
                    .map_err(|e| e.to_string())?
                    .leading()
                    .ok_or("zero dimension")?;
                if lead.degree != k * (n - k) || !lead.coeff.is_one() {
                    return Err(format!("two-row dimension wrong at n={n}, k={k}"));
                }
            }
            // Three-row {n−k, n−k, 2k−n}: leading q^{(n−k)(3k−n)}.
            if 2 * k >= n && 3 * k <= 2 * n {
                let mut rows = vec![n - k, n - k];
                if 2 * k > n {
                    rows.push(2 * k - n);
                }
                let lead = PcfIrrep::from_shape(part(&rows))
                    .dim()
                    .map_err(|e| e.to_string())?
                    .leading()
                    .ok_or("zero dimension")?;
                if lead.degree != (n - k) * (3 * k - n) || !lead.coeff.is_one() {
                    return Err(format!("three-row dimension wrong at n={n}, k={k}"));
                }
            }
        }
        // Ratio branch table over all pure shapes: exponent = tensor rank for
        // k ≤ n−1, constant exactly 1 below n/2.
        for shape in Partition::all_of_weight(n) {
            let r = PcfIrrep::from_shape(shape.clone());
            let k = r.strict_tensor_rank();
            if k == 0 {
                continue;
            }
            let cr = cr_at_t(&r).map_err(|e| e.to_string())?;
            if let Some(lead) = cr.leading {
                if lead.exponent != k {
                    return Err(format!("ratio exponent {} ≠ rank {k} for {shape}", lead.exponent));
                }
                if 2 * k < n && !lead.constant.is_one() {
                    return Err(format!("ratio constant not 1 for low-rank {shape}"));
                }
            }
        }
        // Rank-n ratio: exactly −1/(q^{n−1}−1) as a polynomial identity.
        let witness = dim_bounds(n, n).map_err(|e| e.to_string())?.lower_witness;
        let cr = cr_at_t(&witness).map_err(|e| e.to_string())?;
        let lhs = &cr.char_at_t * &QPoly::q_pow_minus_one(n - 1);
        if lhs != cr.dim.neg() {
            return Err(format!("rank-{n} ratio is not −1/(q^{}−1)", n - 1));
        }
    }
    Ok("dimension leading terms and ratio branch table verified symbolically for n = 2..8".into())
}

// ---------------------------------------------------------------------------
// 2. Oracle equivalence
// ---------------------------------------------------------------------------

/// `(dim, χ(T))` multiset of a character table, with `rank` values attached.
fn oracle_spectrum(gd: &GroupData) -> Result<BTreeMap<(u64, BigInt), Vec<usize>>, String> {
    let report = rank_report(gd).map_err(|e| e.to_string())?;
    let mut out: BTreeMap<(u64, BigInt), Vec<usize>> = BTreeMap::new();
    for e in &report.entries {
        let v = gd
            .chars
            .ring
            .to_integer(&e.char_at_t)
            .ok_or("irrational transvection character value")?;
        out.entry((e.dim, v)).or_default().push(e.rank);
    }
    for ranks in out.values_mut() {
        ranks.sort_unstable();
    }
    Ok(out)
}

fn model_spectrum(n: usize, q: u64) -> Result<BTreeMap<(u64, BigInt), Vec<usize>>, String> {
    let mut out: BTreeMap<(u64, BigInt), Vec<usize>> = BTreeMap::new();
    for r in enumerate_irreps(n, q).map_err(|e| e.to_string())? {
        let dim = r
            .dim()
            .and_then(|d| d.evaluate(q))
            .map_err(|e| e.to_string())?
            .to_u64()
            .ok_or("dimension overflow")?;
        let chi = r
            .char_at_t()
            .and_then(|c| c.evaluate(q))
            .map_err(|e| e.to_string())?;
        out.entry((dim, chi)).or_default().push(r.tensor_rank());
    }
    for ranks in out.values_mut() {
        ranks.sort_unstable();
    }
    Ok(out)
}

fn check_gl_against_model(gd: &GroupData, n: usize, q: u64) -> Result<(), String> {
    let oracle = oracle_spectrum(gd)?;
    let model = model_spectrum(n, q)?;
    if oracle != model {
        return Err(format!(
            "GL_{n}(F_{q}) (dim, χ(T), rank) data disagrees with the parametrized model: oracle {oracle:?} vs model {model:?}"
        ));
    }
    Ok(())
}

fn c2_oracle_equivalence(ctx: &mut Ctx) -> Result<String, String> {
    // Orthogonality + strict_rank == rank_via_Hk on all five oracle groups.
    let specs = [
        (GroupKind::Gl, 2usize, 3u64),
        (GroupKind::Gl, 2, 5),
        (GroupKind::Sl, 2, 3),
        (GroupKind::Gl, 3, 2),
        (GroupKind::Sl, 3, 3),
    ];
    for (kind, n, q) in specs {
        let gd = ctx.group(kind, n, q)?;
        verify_orthogonality(&gd.chars).map_err(|e| e.to_string())?;
        let report = rank_report(&gd).map_err(|e| e.to_string())?;
        for (i, e) in report.entries.iter().enumerate() {
            if e.strict_rank != e.rank_via_hk {
                return Err(format!(
                    "{}_{n}(F_{q}) irrep {i}: strict rank {} ≠ invariant-vector rank {}",
                    kind.as_str(),
                    e.strict_rank,
                    e.rank_via_hk
                ));
            }
        }
    }
    // GL tables match the parametrized model bijectively on (dim, χ(T)) and
    // tensor rank.
    for (n, q) in [(2usize, 3u64), (2, 5), (3, 2)] {
        let gd = ctx.group(GroupKind::Gl, n, q)?;
        check_gl_against_model(&gd, n, q)?;
    }
    // SL tables are tied to the model through exact restriction from the
    // matching GL table (checked in full by criterion 8); here confirm the
    // dimension bookkeeping closes.
    for (n, q) in [(2usize, 3u64), (3, 3)] {
        let gl = ctx.group(GroupKind::Gl, n, q)?;
        let sl = ctx.group(GroupKind::Sl, n, q)?;
        check_gl_against_model(&gl, n, q)?;
        let rep = restrict_to_sl(&gl, &sl).map_err(|e| e.to_string())?;
        for (i, cons) in rep.constituents.iter().enumerate() {
            let total: u64 = cons.iter().map(|&(s, m)| m * sl.chars.dims[s]).sum();
            if total != gl.chars.dims[i] {
                return Err(format!(
                    "restriction of GL_{n}(F_{q}) irrep {i} loses dimension"
                ));
            }
        }
    }
    // GL_2 rank partition: characters / principal series / cuspidals.
    for q in [3u64, 5] {
        let gd = ctx.group(GroupKind::Gl, 2, q)?;
        let report = rank_report(&gd).map_err(|e| e.to_string())?;
        let mut by_rank: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
        for e in &report.entries {
            by_rank.entry(e.rank).or_default().push(e.dim);
        }
        for dims in by_rank.values_mut() {
            dims.sort_unstable();
        }
        let chars = vec![1u64; (q - 1) as usize];
        let mut ps: Vec<u64> = std::iter::repeat(q)
            .take((q - 1) as usize)
            .chain(std::iter::repeat(q + 1).take(((q - 1) * (q - 2) / 2) as usize))
            .collect();
        ps.sort_unstable();
        let cusp = vec![q - 1; (q * (q - 1) / 2) as usize];
        let expect: BTreeMap<usize, Vec<u64>> =
            [(0usize, chars), (1, ps), (2, cusp)].into_iter().collect();
        if by_rank != expect {
            return Err(format!(
                "GL_2(F_{q}) rank partition {by_rank:?} ≠ expected {expect:?}"
            ));
        }
    }
    // GL_3(F_2) cuspidals: ratio exactly −1/3.
    let gd = ctx.group(GroupKind::Gl, 3, 2)?;
    let third = BigRational::new(BigInt::from(-1), BigInt::from(3));
    for i in 0..gd.chars.dims.len() {
        if gd.chars.dims[i] == 3 {
            let r = character_ratio_at_transvection(&gd, i).map_err(|e| e.to_string())?;
            if r != third {
                return Err(format!("GL_3(F_2) cuspidal ratio {r} ≠ −1/3"));
            }
        }
    }
    Ok(
        "five oracle tables orthogonal; GL tables match the model on (dim, χ(T), rank); \
         SL tables close under exact restriction; GL_2 rank partition and GL_3(F_2) \
         cuspidal ratios exact"
            .into(),
    )
}

// ---------------------------------------------------------------------------
// 3. Pieri / Kostka
// ---------------------------------------------------------------------------

fn c3_pieri_kostka(_ctx: &mut Ctx) -> Result<String, String> {
    let oracles: Result<Vec<SymOracle>, _> = (1..=6usize).map(SymOracle::new).collect();
    let oracles = oracles.map_err(|e| e.to_string())?;
    for n in 1..=6usize {
        for k in 1..=n {
            let big = &oracles[n - 1];
            let small = &oracles[k - 1];
            for d in Partition::all_of_weight(k) {
                let dec = induced_pieri_decomposition(big, small, &d)
                    .map_err(|e| e.to_string())?;
                if dec.iter().any(|&(_, m)| m != 1) {
                    return Err(format!("induced decomposition of {d} in S_{n} not multiplicity-free"));
                }
                let got: Vec<&Partition> = dec.iter().map(|(p, _)| p).collect();
                let mut want = pieri_expand(&d, n - k);
                want.sort_by(|a, b| a.canonical_cmp(b));
                if got.len() != want.len() || got.iter().zip(&want).any(|(a, b)| **a != *b) {
                    return Err(format!(
                        "row-strip expansion of {d} by {} disagrees with the S_{n} oracle",
                        n - k
                    ));
                }
            }
        }
    }
    // K · M = identity for n ≤ 10.
    for n in 1..=10usize {
        let t = transition_matrix(n).map_err(|e| e.to_string())?;
        let dim = t.partitions.len();
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = BigInt::zero();
                for l in 0..dim {
                    acc += &t.k[i][l] * &t.m[l][j];
                }
                let want = if i == j { BigInt::one() } else { BigInt::zero() };
                if acc != want {
                    return Err(format!("K·M ≠ I at weight {n}, entry ({i},{j})"));
                }
            }
        }
    }
    Ok("row-strip expansions match the symmetric-group oracle to n = 6; K·M = I to n = 10".into())
}

// ---------------------------------------------------------------------------
// 4. Fixed flags
// ---------------------------------------------------------------------------

fn c4_fixed_flags(_ctx: &mut Ctx) -> Result<String, String> {
    let mut logged = Vec::new();
    for n in 2..=4usize {
        for d in Partition::all_of_weight(n) {
            let poly = fixed_flags(&d).map_err(|e| e.to_string())?;
            for q in [2u64, 3] {
                let brute = fixed_flags_brute_force(&d, q).map_err(|e| e.to_string())?;
                let fast = poly.evaluate(q).map_err(|e| e.to_string())?;
                if fast != brute {
                    return Err(format!(
                        "invariant flag count for {d} at q={q}: closed form {fast} ≠ brute force {brute}"
                    ));
                }
            }
        }
    }
    for n in 2..=6usize {
        for d in Partition::all_of_weight(n) {
            let poly = fixed_flags(&d).map_err(|e| e.to_string())?;
            let lead = poly.leading().ok_or("zero flag polynomial")?;
            if d.first_row() >= 2 {
                let m = BigInt::from(d.largest_part_multiplicity());
                if lead.coeff != m {
                    return Err(format!(
                        "leading coefficient {} ≠ multiplicity {m} for {d}",
                        lead.coeff
                    ));
                }
            } else {
                // Complete flags: exact value logged, not asserted.
                logged.push(format!("{d}: leading {}·q^{}", lead.coeff, lead.degree));
            }
        }
    }
    Ok(format!(
        "closed form equals brute force for n = 2..4, q ∈ {{2,3}}; leading coefficients match multiplicities; complete-flag cases logged: {}",
        logged.join(", ")
    ))
}

// ---------------------------------------------------------------------------
// 5. Walk
// ---------------------------------------------------------------------------

fn c5_walk(ctx: &mut Ctx) -> Result<String, String> {
    for q in [2u64, 3] {
        let gd = ctx.group(GroupKind::Sl, 3, q)?;
        let uniform = Distribution::uniform_over_classes(&gd.classes, gd.order());
        let tc = gd.transvection_class().map_err(|e| e.to_string())?;
        // Uniform mass of fixed-point-free elements.
        let fixed = gd.class_fixed_dims();
        let fpf: BigRational = gd
            .classes
            .sizes
            .iter()
            .enumerate()
            .filter(|(j, _)| fixed[*j] == 0)
            .map(|(_, s)| BigRational::new(BigInt::from(*s), BigInt::from(gd.order())))
            .sum();
        for l in 1..=6usize {
            let conv = exact_convolution(&gd.table, &gd.classes, tc, l)
                .and_then(|d| d.push_to_classes(&gd.classes))
                .map_err(|e| e.to_string())?;
            let four = fourier_distribution(&gd, l).map_err(|e| e.to_string())?;
            let (DistMass::Exact(a), DistMass::Exact(b)) = (&conv.mass, &four.mass) else {
                return Err("expected exact distributions".into());
            };
            if a != b {
                return Err(format!(
                    "Fourier and convolution distributions disagree on SL_3(F_{q}) at l={l}"
                ));
            }
            let TvValue::Exact(tv) = tv_distance(&four, &uniform).map_err(|e| e.to_string())?
            else {
                return Err("expected exact TV".into());
            };
            let bound = libm::sqrt(ds_upper_bound(&gd, l).map_err(|e| e.to_string())?);
            let tvf = tv.to_f64().ok_or("TV not representable")?;
            if tvf > bound + 1e-12 {
                return Err(format!("TV {tvf} exceeds bound {bound} on SL_3(F_{q}) at l={l}"));
            }
            if l < 3 && tv < fpf {
                return Err(format!(
                    "TV below fixed-point-free mass on SL_3(F_{q}) at l={l}"
                ));
            }
        }
    }
    // Spectral rates, exactly.
    let r3 = {
        let gd = ctx.group(GroupKind::Sl, 3, 3)?;
        spectral_mixing_rate(&gd).map_err(|e| e.to_string())?
    };
    if r3 != BigRational::new(BigInt::from(4), BigInt::from(13)) {
        return Err(format!("SL_3(F_3) spectral rate {r3} ≠ 4/13 = (q²−1)/(q³−1)"));
    }
    let r2 = {
        let gd = ctx.group(GroupKind::Sl, 3, 2)?;
        spectral_mixing_rate(&gd).map_err(|e| e.to_string())?
    };
    if r2 != BigRational::new(BigInt::from(1), BigInt::from(3)) {
        return Err(format!("SL_3(F_2) spectral rate {r2} ≠ oracle value 1/3"));
    }
    // Closed-form curve bounds TV for l ≥ n + 2 at q = 3.
    {
        let gd = ctx.group(GroupKind::Sl, 3, 3)?;
        let uniform = Distribution::uniform_over_classes(&gd.classes, gd.order());
        for l in 5..=9usize {
            let dist = fourier_distribution_f64(&gd, l).map_err(|e| e.to_string())?;
            let tv = tv_distance(&dist, &uniform).map_err(|e| e.to_string())?.to_f64();
            let curve = tvb_closed_form(3, 3, l).map_err(|e| e.to_string())?;
            if tv > curve + 1e-12 {
                return Err(format!("TV {tv} above closed-form curve {curve} at l={l}"));
            }
        }
    }
    Ok(
        "Fourier == convolution exactly to l = 6 on both groups; TV within bounds; \
         spectral rate 4/13 at q=3 matches (q²−1)/(q³−1); at q=2 the oracle-exact rate \
         is 1/3 (the large-q value 3/7 is unattained — F_2^× has no nontrivial character); \
         closed-form curve bounds TV for l ≥ 5 at q=3"
            .into(),
    )
}

// ---------------------------------------------------------------------------
// 6. Eta
// ---------------------------------------------------------------------------

fn c6_eta(_ctx: &mut Ctx) -> Result<String, String> {
    let mut images: BTreeMap<usize, Vec<PcfIrrep>> = BTreeMap::new();
    for k in 0..=8usize {
        for shape in Partition::all_of_weight(k) {
            let tau = PcfIrrep::from_shape(shape);
            for n in k..=8 {
                let ok = tau.strict_tensor_rank() + n >= 2 * k;
                match eta(&tau, n) {
                    Ok(image) => {
                        if !ok {
                            return Err("eta accepted a rank-deficient input".into());
                        }
                        if image.strict_tensor_corank() != n - k {
                            return Err(format!(
                                "eta image has wrong strict co-rank at k={k}, n={n}"
                            ));
                        }
                        images.entry(n).or_default().push(image);
                    }
                    Err(_) if !ok => {}
                    Err(e) => return Err(format!("eta failed on a valid input: {e}")),
                }
            }
        }
    }
    for (n, v) in &images {
        let mut sorted = v.clone();
        sorted.sort();
        let before = sorted.len();
        sorted.dedup();
        if sorted.len() != before {
            return Err(format!("eta is not injective into GL_{n}"));
        }
    }
    // GL_1 → GL_n image dimensions: (q^n − 1)/(q − 1) and (q^n − q)/(q − 1).
    for n in 2..=8usize {
        let chi = PcfIrrep::new(
            1,
            vec![],
            vec![glnq::pcf::SplitEntry {
                chi: 1,
                shape: part(&[1]),
            }],
            Partition::empty(),
        )
        .map_err(|e| e.to_string())?;
        let lifted = eta(&chi, n).map_err(|e| e.to_string())?;
        let dim = lifted.dim().map_err(|e| e.to_string())?;
        if &dim * &QPoly::q_pow_minus_one(1) != QPoly::q_pow_minus_one(n) {
            return Err(format!("character lift to GL_{n} has wrong dimension"));
        }
        let triv = PcfIrrep::trivial(1);
        let lifted = eta(&triv, n).map_err(|e| e.to_string())?;
        let dim = lifted.dim().map_err(|e| e.to_string())?;
        let want = &QPoly::monomial(1) * &QPoly::q_pow_minus_one(n - 1);
        if &dim * &QPoly::q_pow_minus_one(1) != want {
            return Err(format!("trivial lift to GL_{n} has wrong dimension"));
        }
    }
    Ok("eta injective and rank-correct for k ≤ n ≤ 8; GL_1 image dimensions exact".into())
}

// ---------------------------------------------------------------------------
// 7. Counting
// ---------------------------------------------------------------------------

fn c7_counting(ctx: &mut Ctx) -> Result<String, String> {
    let cases = [(2usize, 2u64), (2, 3), (2, 5), (3, 2)];
    for (n, q) in cases {
        let oracle = {
            let gd = ctx.group(GroupKind::Gl, n, q)?;
            let report = rank_report(&gd).map_err(|e| e.to_string())?;
            let mut counts = vec![0u64; n + 1];
            for e in &report.entries {
                counts[e.rank] += 1;
            }
            counts
        };
        let model = rank_counts(n, q).map_err(|e| e.to_string())?;
        if oracle != model {
            return Err(format!(
                "rank census of GL_{n}(F_{q}): oracle {oracle:?} ≠ model {model:?}"
            ));
        }
    }
    // (n,k) = (3,1): the census is (q−1)² = q² − 2q + 1, leading q^{k+1},
    // confirmed against the oracle at q ∈ {2,3}.
    for q in [2u64, 3] {
        let oracle = {
            let gd = ctx.group(GroupKind::Gl, 3, q)?;
            let report = rank_report(&gd).map_err(|e| e.to_string())?;
            report.entries.iter().filter(|e| e.rank == 1).count() as u64
        };
        if oracle != (q - 1) * (q - 1) {
            return Err(format!(
                "GL_3(F_{q}) rank-1 census {oracle} ≠ (q−1)² = {}",
                (q - 1) * (q - 1)
            ));
        }
        let model = rank_counts(3, q).map_err(|e| e.to_string())?[1];
        if model != oracle {
            return Err(format!("model rank-1 census {model} ≠ oracle {oracle} at q={q}"));
        }
    }
    Ok(
        "rank censuses agree between oracle tables and the model for GL_2 (q = 2,3,5) and \
         GL_3 (q = 2); rank-1 census (q−1)² with leading q² confirmed at q = 2,3"
            .into(),
    )
}

// ---------------------------------------------------------------------------
// 8. Restriction
// ---------------------------------------------------------------------------

fn c8_restriction(ctx: &mut Ctx) -> Result<String, String> {
    for (n, q) in [(2usize, 3u64), (3, 3)] {
        let gl = ctx.group(GroupKind::Gl, n, q)?;
        let sl = ctx.group(GroupKind::Sl, n, q)?;
        let rep = restrict_to_sl(&gl, &sl).map_err(|e| e.to_string())?;
        if !rep.multiplicity_free {
            return Err(format!("restriction GL_{n}(F_{q}) → SL not multiplicity-free"));
        }
        if !rep.twist_equivalence {
            return Err(format!(
                "equal restriction spectra not twist-equivalent for GL_{n}(F_{q})"
            ));
        }
        if !rep.twist_criterion {
            return Err(format!(
                "twist-fixed irreducibility criterion fails for GL_{n}(F_{q})"
            ));
        }
        if !rep.fibers_single_orbit {
            return Err(format!(
                "restriction fibers are not single twist orbits for GL_{n}(F_{q})"
            ));
        }
    }
    Ok(
        "GL_2(F_3) → SL_2(F_3) and GL_3(F_3) → SL_3(F_3): multiplicity-free, twist-equivalent \
         spectra, twist-fixed criterion, single-orbit fibers — all by exact inner products"
            .into(),
    )
}
