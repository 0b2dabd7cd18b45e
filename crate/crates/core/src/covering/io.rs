//! JSON covering files.
//!
//! ```json
//! {"group": {"p": 3, "exponents": [1]}, "kind": "kummer", "f": [[0, 1]]}
//! {"group": {"p": 2, "exponents": [1]}, "kind": "cocycle", "entries": [[1, 1, [0, 1]]]}
//! ```
//!
//! Polynomials may be written as `{"p": .., "coeffs": [..]}` or as a bare
//! coefficient array (lowest degree first) in the group's characteristic.
//! Rational functions are `{"num": .., "den": ..}` or a polynomial. Group
//! elements are residue arrays or canonical indices. Cocycle entries not listed
//! default to 1 and are filled in by symmetry; `twist` and `infinity_degrees`
//! are lists of `[element, value]` pairs (unlisted twist values are 1) or full
//! arrays indexed by canonical order.

use serde_json::Value;

use super::{Cocycle, Covering, KummerData};
use crate::arith::{Poly, RatFun};
use crate::error::{Error, Result};
use crate::pgroup::{GElt, PGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringFile {
    pub covering: Covering,
    pub infinity_degrees: Option<Vec<i64>>,
    pub g_x: i64,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

impl CoveringFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| bad("covering file must be an object"))?;
        let group: PGroup = serde_json::from_value(
            obj.get("group").cloned().ok_or_else(|| bad("missing \"group\""))?,
        )
        .map_err(|e| bad(format!("group: {e}")))?;
        let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| bad("missing \"kind\""))?;
        let covering = match kind {
            "kummer" => {
                let f = obj
                    .get("f")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("kummer covering needs an \"f\" array"))?
                    .iter()
                    .map(|x| parse_poly(x, group.p()))
                    .collect::<Result<Vec<_>>>()?;
                let twist = match obj.get("twist") {
                    None | Some(Value::Null) => None,
                    Some(t) => Some(parse_elt_map(t, &group, RatFun::one(group.p()), |x| {
                        parse_ratfun(x, group.p())
                    })?),
                };
                Covering::Kummer(KummerData::new(&group, f, twist)?)
            }
            "cocycle" => {
                let entries = obj
                    .get("entries")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("cocycle covering needs an \"entries\" array"))?;
                Covering::Cocycle(parse_entries(entries, &group)?)
            }
            other => return Err(bad(format!("unknown covering kind {other:?}"))),
        };
        let infinity_degrees = match obj.get("infinity_degrees") {
            None | Some(Value::Null) => None,
            Some(d) => Some(parse_elt_map(d, &group, 0i64, |x| {
                x.as_i64().ok_or_else(|| bad("infinity degrees must be integers"))
            })?),
        };
        let g_x = match obj.get("g_X") {
            None | Some(Value::Null) => 0,
            Some(x) => x.as_i64().filter(|&g| g >= 0).ok_or_else(|| bad("g_X must be a non-negative integer"))?,
        };
        Ok(CoveringFile {
            covering,
            infinity_degrees,
            g_x,
        })
    }
}

pub fn parse_poly(v: &Value, p: u32) -> Result<Poly> {
    let (p_given, coeffs) = match v {
        Value::Array(_) => (p, v),
        Value::Object(o) => {
            let q = o
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("polynomial object needs \"p\""))?;
            (q as u32, o.get("coeffs").ok_or_else(|| bad("polynomial object needs \"coeffs\""))?)
        }
        _ => return Err(bad(format!("cannot read a polynomial from {v}"))),
    };
    if p_given != p {
        return Err(Error::CharacteristicMismatch(p, p_given));
    }
    let coeffs = coeffs
        .as_array()
        .ok_or_else(|| bad("coefficients must be an array"))?
        .iter()
        .map(|c| c.as_i64().ok_or_else(|| bad("coefficients must be integers")))
        .collect::<Result<Vec<_>>>()?;
    Poly::from_i64(p, &coeffs)
}

pub fn parse_ratfun(v: &Value, p: u32) -> Result<RatFun> {
    if let Some(o) = v.as_object() {
        if let (Some(num), Some(den)) = (o.get("num"), o.get("den")) {
            return RatFun::new(parse_poly(num, p)?, parse_poly(den, p)?);
        }
    }
    Ok(RatFun::from(parse_poly(v, p)?))
}

/// An element given as a canonical index or a residue array.
pub fn parse_elt(v: &Value, group: &PGroup) -> Result<usize> {
    match v {
        Value::Number(n) => {
            let i = n.as_u64().ok_or_else(|| bad(format!("bad element index {n}")))? as usize;
            if i >= group.order() {
                return Err(Error::GroupMismatch);
            }
            Ok(i)
        }
        Value::Array(a) => {
            let res = a
                .iter()
                .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| bad("residues must be integers")))
                .collect::<Result<Vec<_>>>()?;
            group.index(&GElt(res))
        }
        _ => Err(bad(format!("cannot read a group element from {v}"))),
    }
}

fn parse_elt_map<T: Clone>(
    v: &Value,
    group: &PGroup,
    default: T,
    mut parse: impl FnMut(&Value) -> Result<T>,
) -> Result<Vec<T>> {
    let arr = v.as_array().ok_or_else(|| bad("expected an array"))?;
    let is_pairs = !arr.is_empty()
        && arr.iter().all(|x| x.as_array().is_some_and(|pair| pair.len() == 2))
        && !(arr.len() == group.order() && arr.iter().all(|x| parse(x).is_ok()));
    if !is_pairs {
        if arr.len() != group.order() {
            return Err(bad(format!(
                "expected {} values in canonical element order, got {}",
                group.order(),
                arr.len()
            )));
        }
        return arr.iter().map(parse).collect();
    }
    let mut out = vec![default; group.order()];
    let mut seen = vec![false; group.order()];
    for pair in arr {
        let pair = pair.as_array().unwrap();
        let i = parse_elt(&pair[0], group)?;
        if seen[i] {
            return Err(bad(format!("element {} listed twice", group.element(i))));
        }
        seen[i] = true;
        out[i] = parse(&pair[1])?;
    }
    Ok(out)
}

fn parse_entries(entries: &[Value], group: &PGroup) -> Result<Cocycle> {
    let n = group.order();
    let p = group.p();
    let mut table: Vec<Option<Poly>> = vec![None; n * n];
    for e in entries {
        let e = e
            .as_array()
            .filter(|e| e.len() == 3)
            .ok_or_else(|| bad("cocycle entries are [i, j, poly] triples"))?;
        let i = parse_elt(&e[0], group)?;
        let j = parse_elt(&e[1], group)?;
        let a = parse_poly(&e[2], p)?;
        for (r, s) in [(i, j), (j, i)] {
            match &table[r * n + s] {
                Some(old) if *old != a => {
                    return Err(bad(format!(
                        "conflicting values for ({}, {})",
                        group.element(i),
                        group.element(j)
                    )))
                }
                _ => table[r * n + s] = Some(a.clone()),
            }
        }
    }
    let one = Poly::one(p);
    Cocycle::from_fn(group, |i, j| Ok(table[i * n + j].clone().unwrap_or_else(|| one.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_kummer_file() {
        let f = CoveringFile::from_json(
            r#"{"group":{"p":3,"exponents":[1]},"kind":"kummer","f":[[0,1]],"g_X":0}"#,
        )
        .unwrap();
        match f.covering {
            Covering::Kummer(k) => assert_eq!(k.functions(), &[Poly::x(3)]),
            _ => panic!("expected Kummer data"),
        }
    }

    #[test]
    fn reads_cocycle_with_symmetry() {
        let f = CoveringFile::from_json(
            r#"{"group":{"p":3,"exponents":[1]},"kind":"cocycle",
                "entries":[[1,2,{"p":3,"coeffs":[0,1]}],[2,2,[0,1]]]}"#,
        )
        .unwrap();
        let c = f.covering.cocycle().unwrap();
        assert_eq!(c.at(2, 1), &Poly::x(3));
        assert!(c.validate().passed());
    }

    #[test]
    fn rejects_conflicts_and_bad_elements() {
        let conflict = r#"{"group":{"p":3,"exponents":[1]},"kind":"cocycle",
            "entries":[[1,2,[0,1]],[2,1,[1]]]}"#;
        assert!(CoveringFile::from_json(conflict).is_err());
        let outside = r#"{"group":{"p":2,"exponents":[1]},"kind":"cocycle","entries":[[2,1,[1]]]}"#;
        assert_eq!(CoveringFile::from_json(outside), Err(Error::GroupMismatch));
    }

    #[test]
    fn reads_residue_elements_and_twists() {
        let f = CoveringFile::from_json(
            r#"{"group":{"p":2,"exponents":[1,1]},"kind":"kummer","f":[[0,1],[0,1]],
                "twist":[[[1,0],[0,1]]],"infinity_degrees":[0,1,2,2]}"#,
        )
        .unwrap();
        let Covering::Kummer(k) = &f.covering else { panic!() };
        assert_eq!(k.twist().unwrap()[2], RatFun::from(Poly::x(2)));
        assert_eq!(f.infinity_degrees, Some(vec![0, 1, 2, 2]));
    }
}
