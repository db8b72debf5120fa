//! Serde adapters that write big integers and rationals as decimal strings.

use serde::{de::Error as _, Deserialize, Deserializer, Serializer};
use std::fmt::Display;
use std::str::FromStr;

fn ser<T: Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn de<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
    let raw = String::deserialize(d)?;
    raw.parse().map_err(|_| D::Error::custom(format!("not a decimal number: `{raw}`")))
}

pub mod big {
    use num_bigint::BigInt;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        super::ser(x, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        super::de(d)
    }
}

pub mod big_opt {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        let raw: Option<String> = Option::deserialize(d)?;
        raw.map(|r| r.parse().map_err(|_| serde::de::Error::custom(format!("not a decimal number: `{r}`"))))
            .transpose()
    }
}

pub mod big_vec {
    use num_bigint::BigInt;
    use serde::{ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|r| r.parse().map_err(|_| serde::de::Error::custom(format!("not a decimal number: `{r}`"))))
            .collect()
    }
}

pub mod rat {
    use num_rational::BigRational;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        super::ser(x, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        super::de(d)
    }
}

/// `[(p, sign)]` as a JSON object keyed by the decimal prime, in list order.
pub mod factor_map {
    use crate::sign::Sign;
    use num_bigint::BigInt;
    use serde::de::{MapAccess, Visitor};
    use serde::{ser::SerializeMap, Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(xs: &[(BigInt, Sign)], s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(xs.len()))?;
        for (p, v) in xs {
            m.serialize_entry(&p.to_string(), v)?;
        }
        m.end()
    }

    struct V;

    impl<'de> Visitor<'de> for V {
        type Value = Vec<(BigInt, Sign)>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map from primes to signs")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<Self::Value, A::Error> {
            let mut out = Vec::new();
            while let Some((k, v)) = a.next_entry::<String, Sign>()? {
                let p = k.parse().map_err(|_| serde::de::Error::custom(format!("bad prime `{k}`")))?;
                out.push((p, v));
            }
            Ok(out)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(BigInt, Sign)>, D::Error> {
        d.deserialize_map(V)
    }
}
