use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ff::FieldDesc;

/// One monomial `c x^i y^j z^k` of a plane curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlaneTerm {
    pub c: u64,
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

/// Caller-declared point counts at infinity, per extension degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityCounts {
    pub default: u64,
    pub per_ext: BTreeMap<u32, u64>,
}

impl InfinityCounts {
    pub fn constant(n: u64) -> Self {
        InfinityCounts {
            default: n,
            per_ext: BTreeMap::new(),
        }
    }

    pub fn get(&self, k: u32) -> u64 {
        self.per_ext.get(&k).copied().unwrap_or(self.default)
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("default".into(), json!(self.default));
        for (k, v) in &self.per_ext {
            m.insert(k.to_string(), json!(v));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        if let Some(n) = v.as_u64() {
            return Ok(Self::constant(n));
        }
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidModel(format!("bad infinity entry {v}")))?;
        let mut out = Self::constant(0);
        for (key, val) in obj {
            let n = val
                .as_u64()
                .ok_or_else(|| Error::InvalidModel(format!("bad infinity count {val}")))?;
            if key == "default" {
                out.default = n;
            } else {
                let k: u32 = key
                    .parse()
                    .map_err(|_| Error::InvalidModel(format!("bad extension key {key:?}")))?;
                out.per_ext.insert(k, n);
            }
        }
        Ok(out)
    }
}

/// Presentation of a curve. Coefficients are element codes of the base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveModel {
    /// `y^2 + h(x) y = f(x)`, coefficients low-to-high.
    Hyperelliptic { h: Vec<u64>, f: Vec<u64> },
    /// Projective zeros of a homogeneous F(x, y, z).
    SmoothPlane { terms: Vec<PlaneTerm> },
    /// `sum c y^j = sum c x^i y^j` with declared points at infinity.
    ArtinSchreierLike {
        lhs: Vec<(u64, u32)>,
        rhs: Vec<(u64, u32, u32)>,
        infinity: InfinityCounts,
    },
}

/// A model together with its field and declared genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub field: FieldDesc,
    pub model: CurveModel,
    pub genus: u32,
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl CurveModel {
    pub fn hyperelliptic(h: Vec<u64>, f: Vec<u64>) -> Self {
        CurveModel::Hyperelliptic {
            h: trim(h),
            f: trim(f),
        }
    }

    /// Apply `map` to every coefficient (used to move a model into an
    /// extension field).
    pub fn map_coeffs(&self, map: impl Fn(u64) -> u64) -> Self {
        match self {
            CurveModel::Hyperelliptic { h, f } => CurveModel::Hyperelliptic {
                h: h.iter().map(|&c| map(c)).collect(),
                f: f.iter().map(|&c| map(c)).collect(),
            },
            CurveModel::SmoothPlane { terms } => CurveModel::SmoothPlane {
                terms: terms.iter().map(|t| PlaneTerm { c: map(t.c), ..*t }).collect(),
            },
            CurveModel::ArtinSchreierLike { lhs, rhs, infinity } => {
                CurveModel::ArtinSchreierLike {
                    lhs: lhs.iter().map(|&(c, j)| (map(c), j)).collect(),
                    rhs: rhs.iter().map(|&(c, i, j)| (map(c), i, j)).collect(),
                    infinity: infinity.clone(),
                }
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CurveModel::Hyperelliptic { .. } => "hyperelliptic",
            CurveModel::SmoothPlane { .. } => "plane",
            CurveModel::ArtinSchreierLike { .. } => "artin_schreier",
        }
    }

    pub fn to_json(&self, field: &FieldDesc) -> Value {
        let el = |c: u64| element_to_json(field, c);
        match self {
            CurveModel::Hyperelliptic { h, f } => json!({
                "type": "hyperelliptic",
                "h": h.iter().map(|&c| el(c)).collect::<Vec<_>>(),
                "f": f.iter().map(|&c| el(c)).collect::<Vec<_>>(),
            }),
            CurveModel::SmoothPlane { terms } => json!({
                "type": "plane",
                "terms": terms.iter().map(|t| json!([el(t.c), t.i, t.j, t.k])).collect::<Vec<_>>(),
            }),
            CurveModel::ArtinSchreierLike { lhs, rhs, infinity } => json!({
                "type": "artin_schreier",
                "lhs": lhs.iter().map(|&(c, j)| json!([el(c), j])).collect::<Vec<_>>(),
                "rhs": rhs.iter().map(|&(c, i, j)| json!([el(c), i, j])).collect::<Vec<_>>(),
                "infinity": infinity.to_json(),
            }),
        }
    }

    /// Parse a model object. `infinity` is the entry-level declaration used
    /// when the model itself carries none.
    pub fn from_json(v: &Value, field: &FieldDesc, infinity: Option<&Value>) -> Result<Self> {
        let kind = v
            .get("type")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidModel("model needs a string \"type\"".into()))?;
        let elems = |key: &str| -> Result<Vec<u64>> {
            match v.get(key) {
                None | Some(Value::Null) => Ok(Vec::new()),
                Some(Value::Array(a)) => a.iter().map(|e| element_from_json(field, e)).collect(),
                Some(other) => Err(Error::InvalidModel(format!("{key} must be an array, got {other}"))),
            }
        };
        let rows = |key: &str, width: usize| -> Result<Vec<(u64, Vec<u32>)>> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidModel(format!("missing array {key:?}")))?;
            arr.iter()
                .map(|row| {
                    let r = row.as_array().filter(|r| r.len() == width).ok_or_else(|| {
                        Error::InvalidModel(format!("{key} rows need {width} entries, got {row}"))
                    })?;
                    let c = element_from_json(field, &r[0])?;
                    let exps = r[1..]
                        .iter()
                        .map(|e| {
                            e.as_u64()
                                .and_then(|e| u32::try_from(e).ok())
                                .ok_or_else(|| Error::InvalidModel(format!("bad exponent {e}")))
                        })
                        .collect::<Result<Vec<u32>>>()?;
                    Ok((c, exps))
                })
                .collect()
        };
        match kind {
            "hyperelliptic" => Ok(CurveModel::hyperelliptic(elems("h")?, elems("f")?)),
            "plane" => Ok(CurveModel::SmoothPlane {
                terms: rows("terms", 4)?
                    .into_iter()
                    .map(|(c, e)| PlaneTerm {
                        c,
                        i: e[0],
                        j: e[1],
                        k: e[2],
                    })
                    .collect(),
            }),
            "artin_schreier" => {
                let inf = v.get("infinity").filter(|x| !x.is_null()).or(infinity).ok_or_else(|| {
                    Error::InvalidModel("artin_schreier models need declared points at infinity".into())
                })?;
                Ok(CurveModel::ArtinSchreierLike {
                    lhs: rows("lhs", 2)?.into_iter().map(|(c, e)| (c, e[0])).collect(),
                    rhs: rows("rhs", 3)?
                        .into_iter()
                        .map(|(c, e)| (c, e[0], e[1]))
                        .collect(),
                    infinity: InfinityCounts::from_json(inf)?,
                })
            }
            other => Err(Error::InvalidModel(format!("unknown model type {other:?}"))),
        }
    }
}

/// Element in JSON: a residue for prime fields, else its coefficient vector.
pub fn element_to_json(field: &FieldDesc, code: u64) -> Value {
    if field.is_prime_field() {
        json!(code)
    } else {
        json!(field.coeffs(code))
    }
}

/// Accepts an integer (reduced mod p), a coefficient vector, or a string
/// `"t^k"` / `"t"` / decimal integer.
pub fn element_from_json(field: &FieldDesc, v: &Value) -> Result<u64> {
    let bad = || Error::InvalidModel(format!("cannot read field element {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(|c| field.from_int(c)).ok_or_else(bad),
        Value::Array(a) => {
            let p = field.p() as i64;
            let coeffs = a
                .iter()
                .map(|c| c.as_i64().map(|c| c.rem_euclid(p) as u64).ok_or_else(bad))
                .collect::<Result<Vec<u64>>>()?;
            field.from_coeffs(&coeffs)
        }
        Value::String(s) => {
            let s = s.trim();
            if let Ok(c) = s.parse::<i64>() {
                return Ok(field.from_int(c));
            }
            let exp = match s {
                "t" => 1,
                _ => s
                    .strip_prefix("t^")
                    .and_then(|e| e.parse::<u64>().ok())
                    .ok_or_else(bad)?,
            };
            Ok(field.pow(field.generator(), exp))
        }
        _ => Err(bad()),
    }
}
