//! Deterministic JSON output.
//!
//! Values pass through `serde_json::Value`, whose object map is ordered by
//! key, so every object is written with sorted keys regardless of struct
//! field order.

use serde::{Serialize, Serializer};

pub fn to_string_sorted<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut out = serde_json::to_string_pretty(&serde_json::to_value(value)?)?;
    out.push('\n');
    Ok(out)
}

/// Extended reals: finite values as numbers, infinities as `"inf"` /
/// `"-inf"`, NaN as `null`.
pub fn serialize_ext_real<S: Serializer>(x: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        serializer.serialize_f64(*x)
    } else if x.is_nan() {
        serializer.serialize_none()
    } else if *x > 0.0 {
        serializer.serialize_str("inf")
    } else {
        serializer.serialize_str("-inf")
    }
}
