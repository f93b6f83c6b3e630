//! Text and JSON renderings of the core algebraic types, plus the JSON
//! parser for representation data supplied on the command line.

use glnq::error::{Error, Result};
use glnq::partitions::Partition;
use glnq::pcf::{CuspidalSlot, PcfIrrep, SplitEntry, UnsplitEntry};
use glnq::qseries::QPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::{json, Value};

/// Human-readable polynomial string, highest degree first (e.g.
/// `q^3 - 2*q + 1`); `0` for the zero polynomial.
pub fn poly_string(p: &QPoly) -> String {
    let mut terms: Vec<(usize, BigInt)> = p.terms().map(|(d, c)| (d, c.clone())).collect();
    if terms.is_empty() {
        return "0".into();
    }
    terms.reverse();
    let mut out = String::new();
    for (i, (d, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let show_coeff = !mag.is_one() || *d == 0;
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        if *d > 0 {
            if show_coeff {
                out.push('*');
            }
            out.push('q');
            if *d > 1 {
                out.push_str(&format!("^{d}"));
            }
        }
    }
    out
}

/// JSON rendering of a polynomial: coefficient strings, constant term first.
pub fn poly_json(p: &QPoly) -> Value {
    let deg = p.degree().map(|d| d + 1).unwrap_or(0);
    let coeffs: Vec<String> = (0..deg).map(|d| p.coeff(d).to_string()).collect();
    json!({ "coeffs": coeffs, "text": poly_string(p) })
}

pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn partition_json(p: &Partition) -> Value {
    Value::Array(
        p.parts()
            .iter()
            .map(|&x| Value::Number(x.into()))
            .collect(),
    )
}

pub fn irrep_json(r: &PcfIrrep) -> Value {
    json!({
        "n": r.n,
        "unsplit": r.unsplit.iter().map(|e| json!({
            "size": e.slot.size,
            "label": e.slot.label,
            "mult": e.multiplicity,
            "shape": partition_json(&e.shape),
        })).collect::<Vec<_>>(),
        "split": r.split.iter().map(|e| json!({
            "chi": e.chi,
            "shape": partition_json(&e.shape),
        })).collect::<Vec<_>>(),
        "trivial_shape": partition_json(&r.trivial_shape),
    })
}

fn parse_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::invalid(format!("expected a nonnegative integer for {what}")))
}

fn parse_partition(v: &Value, what: &str) -> Result<Partition> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::invalid(format!("expected an array of parts for {what}")))?;
    let parts: Result<Vec<usize>> = arr.iter().map(|x| parse_usize(x, what)).collect();
    Partition::new(parts?)
}

/// Parses the representation-datum JSON (the inverse of [`irrep_json`]).
pub fn parse_irrep(v: &Value) -> Result<PcfIrrep> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::invalid("representation datum must be a JSON object"))?;
    let n = parse_usize(
        obj.get("n")
            .ok_or_else(|| Error::invalid("missing field 'n'"))?,
        "n",
    )?;
    let mut unsplit = Vec::new();
    if let Some(entries) = obj.get("unsplit") {
        for e in entries
            .as_array()
            .ok_or_else(|| Error::invalid("'unsplit' must be an array"))?
        {
            let size = parse_usize(
                e.get("size")
                    .ok_or_else(|| Error::invalid("unsplit entry missing 'size'"))?,
                "size",
            )?;
            let label = e
                .get("label")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::invalid("unsplit entry missing 'label'"))?
                .to_string();
            let mult = parse_usize(
                e.get("mult")
                    .ok_or_else(|| Error::invalid("unsplit entry missing 'mult'"))?,
                "mult",
            )?;
            let shape = parse_partition(
                e.get("shape")
                    .ok_or_else(|| Error::invalid("unsplit entry missing 'shape'"))?,
                "shape",
            )?;
            unsplit.push(UnsplitEntry {
                slot: CuspidalSlot { size, label },
                multiplicity: mult,
                shape,
            });
        }
    }
    let mut split = Vec::new();
    if let Some(entries) = obj.get("split") {
        for e in entries
            .as_array()
            .ok_or_else(|| Error::invalid("'split' must be an array"))?
        {
            let chi = parse_usize(
                e.get("chi")
                    .ok_or_else(|| Error::invalid("split entry missing 'chi'"))?,
                "chi",
            )?;
            let shape = parse_partition(
                e.get("shape")
                    .ok_or_else(|| Error::invalid("split entry missing 'shape'"))?,
                "shape",
            )?;
            split.push(SplitEntry { chi, shape });
        }
    }
    let trivial_shape = match obj.get("trivial_shape") {
        Some(v) => parse_partition(v, "trivial_shape")?,
        None => Partition::empty(),
    };
    PcfIrrep::new(n, unsplit, split, trivial_shape)
}

/// Parses a comma-separated partition such as `3,2,1` (empty string → empty
/// partition).
pub fn parse_partition_arg(s: &str) -> Result<Partition> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    let parts: core::result::Result<Vec<usize>, _> =
        s.split(',').map(|t| t.trim().parse::<usize>()).collect();
    Partition::new(parts.map_err(|_| Error::invalid(format!("bad partition '{s}'")))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_rendering() {
        let p = QPoly::from_coeffs(vec![BigInt::from(1), BigInt::from(-2), BigInt::from(1)]);
        assert_eq!(poly_string(&p), "q^2 - 2*q + 1");
        assert_eq!(poly_string(&QPoly::zero()), "0");
        assert_eq!(poly_string(&QPoly::monomial(1)), "q");
    }

    #[test]
    fn irrep_roundtrip() {
        let tau = PcfIrrep::new(
            4,
            vec![UnsplitEntry {
                slot: CuspidalSlot {
                    size: 2,
                    label: "c2.0".into(),
                },
                multiplicity: 1,
                shape: Partition::new(vec![1]).unwrap(),
            }],
            vec![SplitEntry {
                chi: 1,
                shape: Partition::new(vec![1]).unwrap(),
            }],
            Partition::new(vec![1]).unwrap(),
        )
        .unwrap();
        let round = parse_irrep(&irrep_json(&tau)).unwrap();
        assert_eq!(round, tau);
    }
}
