use serde::Serialize;

use super::{mixed_lp_norm, seq_norm, ExponentPair, NetMaximalTable};
use crate::grid::{FamilySpec, GridFunction2};
use crate::haar::haar_forward_2d;

pub const NORM_CSV_HEADER: &str = "function,level,p1,p2,q1,q2,mixed_lp,net_norm,seq_norm";

/// Function-side and coefficient-side norms of one function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormReport {
    pub function: String,
    pub level: u32,
    pub exponents: ExponentPair,
    pub mixed_lp: f64,
    pub net_norm: f64,
    pub seq_norm: f64,
}

impl NormReport {
    pub fn compute(function: impl Into<String>, f: &GridFunction2, e: &ExponentPair) -> Self {
        Self {
            function: function.into(),
            level: f.level(),
            exponents: *e,
            mixed_lp: mixed_lp_norm(f, e),
            net_norm: NetMaximalTable::compute(f).net_norm(e),
            seq_norm: seq_norm(&haar_forward_2d(f), e),
        }
    }

    pub fn for_spec(spec: &FamilySpec, e: &ExponentPair) -> crate::Result<Self> {
        Ok(Self::compute(spec.family.to_string(), &spec.generate()?, e))
    }

    pub fn to_json(&self) -> String {
        crate::json::to_string_sorted(self).expect("report serializes")
    }

    /// One header line and one data row; `q = inf` is written as `inf`.
    pub fn to_csv(&self) -> String {
        let [p1, p2] = self.exponents.p();
        let [q1, q2] = self.exponents.q();
        format!(
            "{NORM_CSV_HEADER}\n\"{}\",{},{},{},{},{},{},{},{}\n",
            self.function, self.level, p1, p2, q1, q2, self.mixed_lp, self.net_norm, self.seq_norm
        )
    }
}
