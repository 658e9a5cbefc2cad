use serde::{Deserialize, Serialize};
use std::fmt;

/// Integer extended by two infinities. Dimensions of zero modules are
/// `NegInf`, the infimum of an exact complex is `PosInf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }

    /// `self - n` for a finite shift; infinities absorb.
    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, n: i64) -> ExtInt {
        match self {
            ExtInt::Finite(v) => ExtInt::Finite(v - n),
            other => other,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, n: i64) -> ExtInt {
        match self {
            ExtInt::Finite(v) => ExtInt::Finite(v + n),
            other => other,
        }
    }

    /// Negation swaps the infinities.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::PosInf,
            ExtInt::Finite(v) => ExtInt::Finite(-v),
            ExtInt::PosInf => ExtInt::NegInf,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(n: i64) -> Self {
        ExtInt::Finite(n)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-infinity"),
            ExtInt::Finite(n) => write!(f, "{n}"),
            ExtInt::PosInf => write!(f, "+infinity"),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtInt::Finite(n) => s.serialize_i64(*n),
            ExtInt::NegInf => s.serialize_str("-infinity"),
            ExtInt::PosInf => s.serialize_str("+infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(ExtInt::Finite)
                .ok_or_else(|| D::Error::custom("expected integer")),
            serde_json::Value::String(s) if s == "-infinity" => Ok(ExtInt::NegInf),
            serde_json::Value::String(s) if s == "+infinity" => Ok(ExtInt::PosInf),
            _ => Err(D::Error::custom("expected integer or +/-infinity")),
        }
    }
}
