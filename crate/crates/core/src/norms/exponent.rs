use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A summability exponent in `(0, inf]`. Serialized as a number, or as the
/// string `"inf"` when infinite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub const INFINITY: Exponent = Exponent(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value <= 0.0 {
            return Err(Error::InvalidExponent(format!(
                "{value} is not in (0, inf]"
            )));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Self::INFINITY),
            t => t
                .parse::<f64>()
                .map_err(|_| Error::InvalidExponent(format!("cannot parse `{s}`")))
                .and_then(Self::new),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(deserializer)? {
            Raw::Num(x) => Exponent::new(x),
            Raw::Text(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// Exponent vectors `p = (p1, p2)` with `1 < p_i < inf` and
/// `q = (q1, q2)` with `0 < q_i <= inf`; `sigma = 1/2 - 1/p` is derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct ExponentPair {
    p: [f64; 2],
    q: [Exponent; 2],
}

#[derive(Deserialize)]
struct RawPair {
    p: [f64; 2],
    q: [Exponent; 2],
}

impl TryFrom<RawPair> for ExponentPair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        Self::new(raw.p, raw.q)
    }
}

impl ExponentPair {
    pub fn new(p: [f64; 2], q: [Exponent; 2]) -> Result<Self> {
        for (i, &pi) in p.iter().enumerate() {
            if !(pi.is_finite() && pi > 1.0) {
                return Err(Error::InvalidExponent(format!(
                    "p{} = {pi} is not in (1, inf)",
                    i + 1
                )));
            }
        }
        Ok(Self { p, q })
    }

    /// `q = p`, as in the Lebesgue-space equivalence.
    pub fn diagonal(p: [f64; 2]) -> Result<Self> {
        Self::new(p, [Exponent::new(p[0])?, Exponent::new(p[1])?])
    }

    /// `q = (inf, inf)`, the endpoint spaces.
    pub fn endpoint(p: [f64; 2]) -> Result<Self> {
        Self::new(p, [Exponent::INFINITY; 2])
    }

    pub fn p(&self) -> [f64; 2] {
        self.p
    }

    pub fn q(&self) -> [Exponent; 2] {
        self.q
    }

    pub fn sigma(&self) -> [f64; 2] {
        [0.5 - 1.0 / self.p[0], 0.5 - 1.0 / self.p[1]]
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p=({},{}),q=({},{})",
            self.p[0], self.p[1], self.q[0], self.q[1]
        )
    }
}
