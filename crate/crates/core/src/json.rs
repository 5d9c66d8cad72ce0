//! Wire conventions shared by every report: integers are JSON numbers when
//! they fit in an i64 and decimal strings otherwise; rationals are always
//! `"num/den"` strings in lowest terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};
use serde_json::Value;

pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn rat_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

pub fn parse_rat(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let d: BigInt = d.trim().parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n.trim().parse().ok()?, d))
}

pub fn ser_int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn ser_opt_int<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_int(v, s),
        None => s.serialize_none(),
    }
}

pub fn ser_rat<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_string(x))
}

pub fn ser_opt_rat<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_rat(v, s),
        None => s.serialize_none(),
    }
}

pub fn de_int<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let v = Value::deserialize(d)?;
    parse_int(&v).ok_or_else(|| D::Error::custom(format!("expected integer, got {v}")))
}

pub fn de_opt_int<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
    let v = Value::deserialize(d)?;
    if v.is_null() {
        return Ok(None);
    }
    parse_int(&v)
        .map(Some)
        .ok_or_else(|| D::Error::custom(format!("expected integer, got {v}")))
}

pub fn de_rat<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    let s = String::deserialize(d)?;
    parse_rat(&s).ok_or_else(|| D::Error::custom(format!("expected rational, got {s:?}")))
}

pub fn de_opt_rat<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
    Option::<String>::deserialize(d)?
        .map(|s| parse_rat(&s).ok_or_else(|| D::Error::custom(format!("expected rational, got {s:?}"))))
        .transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions() {
        assert_eq!(int_value(&BigInt::from(-7)), Value::from(-7));
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int_value(&huge), Value::String(huge.to_string()));
        assert_eq!(parse_int(&int_value(&huge)), Some(huge));
        let r = BigRational::new((-686).into(), 3.into());
        assert_eq!(rat_string(&r), "-686/3");
        assert_eq!(parse_rat("-686/3"), Some(r));
        assert_eq!(rat_string(&BigRational::from_integer(0.into())), "0/1");
        assert_eq!(parse_rat("1/0"), None);
    }
}
