//! Core logic of each subcommand, producing JSON and CSV artifacts.

use std::path::Path;

use glnq::chartab::{rank_report, GroupData};
use glnq::error::{Error, Result};
use glnq::matgroup::GroupKind;
use glnq::partitions::{pieri_expand, Partition};
use glnq::pcf::{
    count_leading, cr_at_t, dim_bounds, enumerate_irreps, eta, rank_counts,
    sl_character_ratio_transfer, CountCoefficient, GroupFamily, PcfIrrep,
};
use glnq::qseries::d_l;
use glnq::sps::{cr_of_rep, sps_reps_of_weight};
use glnq::walk::{
    exact_convolution, fourier_distribution, mc_walk, mixing_report, tv_distance, DistMass,
    Distribution, TvValue,
};
use serde_json::{json, Value};

use crate::fmt::{irrep_json, partition_json, poly_json, poly_string, rational_string};

/// A finished artifact: structured JSON, and an optional CSV rendering.
pub struct Artifact {
    pub json: Value,
    pub csv: Option<String>,
}

fn schema(mut v: Value) -> Value {
    if let Some(obj) = v.as_object_mut() {
        obj.insert("schema".into(), json!("1"));
    }
    v
}

// ---------------------------------------------------------------------------
// dims
// ---------------------------------------------------------------------------

/// Dimension-degree window for every tensor rank `k ≤ n`, with witnesses.
pub fn dims(n: usize) -> Result<Artifact> {
    let mut rows = Vec::new();
    let mut csv = String::from("k,lower_exponent,upper_exponent,lower_witness_dim,upper_witness_dim\n");
    for k in 0..=n {
        let b = dim_bounds(n, k)?;
        let lower_dim = b.lower_witness.dim()?;
        let upper_dim = b.upper_witness.dim()?;
        csv.push_str(&format!(
            "{k},{},{},{},{}\n",
            b.lower_exponent,
            b.upper_exponent,
            poly_string(&lower_dim),
            poly_string(&upper_dim)
        ));
        rows.push(json!({
            "k": k,
            "lower_exponent": b.lower_exponent,
            "upper_exponent": b.upper_exponent,
            "lower_witness": irrep_json(&b.lower_witness),
            "upper_witness": irrep_json(&b.upper_witness),
            "lower_witness_dim": poly_json(&lower_dim),
            "upper_witness_dim": poly_json(&upper_dim),
        }));
    }
    Ok(Artifact {
        json: schema(json!({ "n": n, "rows": rows })),
        csv: Some(csv),
    })
}

// ---------------------------------------------------------------------------
// ratios
// ---------------------------------------------------------------------------

/// Predicted character-ratio leading terms per tensor rank, on the
/// smallest-dimension witness of each rank.
pub fn ratios(n: usize, q: u64, group: GroupFamily) -> Result<Artifact> {
    let mut rows = Vec::new();
    let mut csv = String::from("k,constant,exponent,exact_ratio\n");
    for k in 0..=n {
        let b = dim_bounds(n, k)?;
        let cr = match group {
            GroupFamily::Gl => cr_at_t(&b.lower_witness)?,
            GroupFamily::Sl => sl_character_ratio_transfer(&b.lower_witness)?,
        };
        let exact = cr.exact_ratio_at(q)?;
        let (constant, exponent) = cr
            .leading
            .as_ref()
            .map(|l| (l.constant.to_string(), json!(l.exponent)))
            .unwrap_or_else(|| ("0".into(), Value::Null));
        csv.push_str(&format!(
            "{k},{constant},{exponent},{}\n",
            rational_string(&exact)
        ));
        rows.push(json!({
            "k": k,
            "constant": constant,
            "exponent": exponent,
            "exact_ratio": rational_string(&exact),
            "witness": irrep_json(&b.lower_witness),
        }));
    }
    Ok(Artifact {
        json: schema(json!({ "n": n, "q": q, "rows": rows })),
        csv: Some(csv),
    })
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

/// Leading term of the rank-`k` census, plus exact enumeration when a small
/// concrete `q` is supplied.
pub fn count(n: usize, k: usize, family: GroupFamily, q: Option<u64>) -> Result<Artifact> {
    let lead = count_leading(n, k, family)?;
    let coefficient = match &lead.coefficient {
        CountCoefficient::One => json!(1),
        CountCoefficient::SymbolicUnitInterval { index } => json!(format!("c_{index} in (0,1)")),
    };
    let exact = match (q, family) {
        (Some(q), GroupFamily::Gl) => {
            let counts = rank_counts(n, q)?;
            json!({ "q": q, "count": counts.get(k).copied().unwrap_or(0) })
        }
        _ => Value::Null,
    };
    Ok(Artifact {
        json: schema(json!({
            "n": n,
            "k": k,
            "group": match family { GroupFamily::Gl => "GL", GroupFamily::Sl => "SL" },
            "leading_coefficient": coefficient,
            "leading_exponent": lead.exponent,
            "exact": exact,
        })),
        csv: None,
    })
}

// ---------------------------------------------------------------------------
// eta / pieri
// ---------------------------------------------------------------------------

pub fn eta_cmd(tau: &PcfIrrep, n: usize) -> Result<Artifact> {
    let image = eta(tau, n)?;
    let dim = image.dim()?;
    Ok(Artifact {
        json: schema(json!({
            "tau": irrep_json(tau),
            "n": n,
            "image": irrep_json(&image),
            "image_dim": poly_json(&dim),
            "strict_tensor_rank": image.strict_tensor_rank(),
        })),
        csv: None,
    })
}

pub fn pieri(shape: &Partition, boxes: usize) -> Result<Artifact> {
    let members = pieri_expand(shape, boxes);
    let mut csv = String::from("member\n");
    for m in &members {
        csv.push_str(&format!("\"{m}\"\n"));
    }
    Ok(Artifact {
        json: schema(json!({
            "shape": partition_json(shape),
            "boxes": boxes,
            "members": members.iter().map(partition_json).collect::<Vec<_>>(),
        })),
        csv: Some(csv),
    })
}

// ---------------------------------------------------------------------------
// sps
// ---------------------------------------------------------------------------

/// Table of all shape representations of `GL_n`: one CSV row per partition
/// with dimension and transvection-character polynomials and the ratio
/// leading term at the supplied `q`.
pub fn sps(n: usize, q: u64) -> Result<Artifact> {
    let reps = sps_reps_of_weight(n, glnq::partitions::DEFAULT_WEIGHT_CAP)?;
    let mut rows = Vec::new();
    let mut csv = String::from("partition,d_L,dim,char_at_t,c_D,exponent\n");
    for rep in &reps {
        let cr = cr_of_rep(rep, q)?;
        let (c_d, exponent) = cr
            .leading
            .as_ref()
            .map(|(c, e)| (c.to_string(), json!(e)))
            .unwrap_or_else(|| ("0".into(), Value::Null));
        let dl = d_l(rep.diagram.parts());
        csv.push_str(&format!(
            "\"{}\",{dl},{},{},{c_d},{exponent}\n",
            rep.diagram,
            poly_string(&rep.dim),
            poly_string(&rep.char_at_t)
        ));
        rows.push(json!({
            "partition": partition_json(&rep.diagram),
            "d_L": dl,
            "dim": poly_json(&rep.dim),
            "char_at_t": poly_json(&rep.char_at_t),
            "c_D": c_d,
            "exponent": exponent,
            "exact_ratio": rational_string(&cr.exact),
        }));
    }
    Ok(Artifact {
        json: schema(json!({ "n": n, "q": q, "rows": rows })),
        csv: Some(csv),
    })
}

// ---------------------------------------------------------------------------
// chartab
// ---------------------------------------------------------------------------

pub fn parse_group_kind(s: &str) -> Result<GroupKind> {
    match s.to_uppercase().as_str() {
        "GL" => Ok(GroupKind::Gl),
        "SL" => Ok(GroupKind::Sl),
        "SYM" => Ok(GroupKind::Sym),
        _ => Err(Error::invalid(format!("unknown group kind '{s}'"))),
    }
}

/// Character table plus the rank report, via the disk cache.
pub fn chartab(cache_dir: &Path, kind: GroupKind, n: usize, q: u64) -> Result<Artifact> {
    let gd = crate::cache::load_group_data(cache_dir, kind, n, q)?;
    let report = rank_report(&gd)?;
    let tclass = gd.transvection_class().ok();
    let values: Vec<Vec<String>> = (0..gd.chars.irrep_count())
        .map(|i| {
            (0..gd.chars.class_count())
                .map(|j| cyc_string(&gd, i, j))
                .collect()
        })
        .collect();
    let mut csv = String::from("dim,strict_rank,rank,rank_via_hk,char_at_t\n");
    for e in &report.entries {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            e.dim,
            e.strict_rank,
            e.rank,
            e.rank_via_hk,
            cyc_terms_string(&e.char_at_t)
        ));
    }
    Ok(Artifact {
        json: schema(json!({
            "group": gd.table.kind.as_str(),
            "n": n,
            "q": q,
            "order": gd.order(),
            "class_sizes": gd.chars.class_sizes,
            "class_fixed_dims": gd.class_fixed_dims(),
            "transvection_class": tclass,
            "dims": gd.chars.dims,
            "values": values,
            "ranks": report.entries.iter().map(|e| json!({
                "dim": e.dim,
                "strict_rank": e.strict_rank,
                "rank": e.rank,
                "rank_via_hk": e.rank_via_hk,
                "rank_via_hk_eigen": e.rank_via_hk_eigen,
            })).collect::<Vec<_>>(),
        })),
        csv: Some(csv),
    })
}

fn cyc_string(gd: &GroupData, irrep: usize, class: usize) -> String {
    cyc_terms_string(gd.chars.value(irrep, class))
}

/// Renders a cyclotomic integer as `c` when rational, else `c*z^e + …` with
/// `z` the primitive root of the table's order.
fn cyc_terms_string(c: &glnq::chartab::Cyc) -> String {
    if c.terms.is_empty() {
        return "0".into();
    }
    if c.terms.len() == 1 {
        if let Some((&0, &v)) = c.terms.iter().next().map(|(e, v)| (e, v)) {
            return v.to_string();
        }
    }
    c.terms
        .iter()
        .map(|(&e, &v)| {
            if e == 0 {
                v.to_string()
            } else {
                format!("{v}*z^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

// ---------------------------------------------------------------------------
// walk
// ---------------------------------------------------------------------------

pub enum WalkMode {
    Exact,
    Fourier,
    Mc,
}

pub fn parse_walk_mode(s: &str) -> Result<WalkMode> {
    match s {
        "exact" => Ok(WalkMode::Exact),
        "fourier" => Ok(WalkMode::Fourier),
        "mc" => Ok(WalkMode::Mc),
        _ => Err(Error::invalid(format!("unknown walk mode '{s}'"))),
    }
}

/// Runs the transvection walk and emits per-step TV distances, bound curves,
/// and (in Monte Carlo mode) the fixed-space histogram.
pub fn walk(
    cache_dir: &Path,
    kind: GroupKind,
    n: usize,
    q: u64,
    steps: usize,
    mode: WalkMode,
    trials: u64,
    seed: u64,
) -> Result<Artifact> {
    if steps == 0 {
        return Err(Error::invalid("--steps must be positive"));
    }
    match mode {
        WalkMode::Mc => {
            let report = mc_walk(n, q, steps, trials, seed)?;
            let mut csv = String::from("fixed_space_dim,count\n");
            for (d, c) in report.histogram.iter().enumerate() {
                csv.push_str(&format!("{d},{c}\n"));
            }
            Ok(Artifact {
                json: schema(json!({
                    "mode": "mc",
                    "n": n,
                    "q": q,
                    "steps": steps,
                    "trials": trials,
                    "seed": seed,
                    "histogram": report.histogram,
                })),
                csv: Some(csv),
            })
        }
        WalkMode::Exact | WalkMode::Fourier => {
            let gd = crate::cache::load_group_data(cache_dir, kind, n, q)?;
            let uniform = Distribution::uniform_over_classes(&gd.classes, gd.order());
            let report = mixing_report(&gd, steps)?;
            let mut rows = Vec::new();
            let mut csv = String::from("l,tv,ds_sqrt,tvb\n");
            for l in 1..=steps {
                let dist = match mode {
                    WalkMode::Exact => {
                        let tc = gd.transvection_class()?;
                        exact_convolution(&gd.table, &gd.classes, tc, l)?
                            .push_to_classes(&gd.classes)?
                    }
                    _ => fourier_distribution(&gd, l)?,
                };
                let tv = tv_distance(&dist, &uniform)?;
                let tv_exact = match &tv {
                    TvValue::Exact(v) => Some(rational_string(v)),
                    TvValue::Float(_) => None,
                };
                let tvb = report.tvb.get(l - 1).copied();
                csv.push_str(&format!(
                    "{l},{},{},{}\n",
                    tv.to_f64(),
                    report.ds_sqrt[l - 1],
                    tvb.map(|x| x.to_string()).unwrap_or_default()
                ));
                let mass_json = match &dist.mass {
                    DistMass::Exact(v) => {
                        json!(v.iter().map(rational_string).collect::<Vec<_>>())
                    }
                    DistMass::Float(v) => json!(v),
                };
                rows.push(json!({
                    "l": l,
                    "tv": tv.to_f64(),
                    "tv_exact": tv_exact,
                    "ds_sqrt": report.ds_sqrt[l - 1],
                    "tvb": tvb,
                    "class_masses": mass_json,
                }));
            }
            Ok(Artifact {
                json: schema(json!({
                    "mode": match mode { WalkMode::Exact => "exact", _ => "fourier" },
                    "group": gd.table.kind.as_str(),
                    "n": n,
                    "q": q,
                    "steps": steps,
                    "spectral_rate": rational_string(&report.spectral_rate),
                    "rate_estimate": report.rate_estimate,
                    "mixing_time": report.mixing_time,
                    "rows": rows,
                })),
                csv: Some(csv),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// enumeration helper shared with `count`
// ---------------------------------------------------------------------------

/// All representation data of `GL_n(F_q)` with dimensions at `q` — exposed
/// for the `count` subcommand's `--list` mode.
pub fn enumerate(n: usize, q: u64) -> Result<Artifact> {
    let irreps = enumerate_irreps(n, q)?;
    let rows: Result<Vec<Value>> = irreps
        .iter()
        .map(|r| {
            Ok(json!({
                "datum": irrep_json(r),
                "dim": r.dim()?.evaluate(q)?.to_string(),
                "tensor_rank": r.tensor_rank(),
                "strict_tensor_rank": r.strict_tensor_rank(),
            }))
        })
        .collect();
    Ok(Artifact {
        json: schema(json!({ "n": n, "q": q, "irreps": rows? })),
        csv: None,
    })
}
