//! Claim-by-claim verification. Every check returns a [`Verdict`]; a failing
//! verdict always carries a concrete witness.

mod blowup;
mod diamond;
mod fiber;
mod misc;
mod series;
mod sn;
mod substitution;
pub mod suite;

pub use blowup::{
    blowup_solutions, check_blowup_points, check_blowup_points_with, check_component_ideals, check_component_ideals_with,
    component_ideals, mutated_blowup_points, mutated_component_ideals, ComponentIdeal,
};
pub use diamond::{
    ambiguity_residuals, check_diamond_numeric, check_diamond_numeric_with, check_diamond_symbolic, check_diamond_symbolic_with,
    expansion_replay, expansion_relations, NumericPoint, RelPoly, Residual, Rewriter,
};
pub use fiber::{check_fiber_hilbert, check_fiber_hilbert_with, fiber_sample_points, SamplePoint};
pub use misc::{check_charp_fields, check_charp_fields_with, check_wheel, check_wheel_with, check_tangent_and_weights, check_tangent_and_weights_with, expected_generator_weights, minimal_generator_weights, mutated_wheel_data};
pub use series::{check_hilbert_series, check_hilbert_series_with, series_oracle};
pub use sn::{check_sn_action, check_sn_action_with, mutated_sn_involution};
pub use substitution::{check_substitution_iso, check_substitution_iso_with, check_full_reduced_consistency, mutated_substitution_map};

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exact_math::Field;
use crate::polyring::{IdealPresentation, Membership, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub millis: u64,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
    /// The verdict with timing removed, for reproducibility comparisons.
    pub fn untimed(&self) -> Verdict {
        Verdict { millis: 0, ..self.clone() }
    }
}

/// Verdict under construction.
pub(crate) struct Run {
    check: String,
    params: BTreeMap<String, Value>,
    start: Instant,
}

impl Run {
    pub fn new(check: &str, params: Value) -> Self {
        let params = match params {
            Value::Object(m) => m.into_iter().collect(),
            Value::Null => BTreeMap::new(),
            other => BTreeMap::from([("value".to_string(), other)]),
        };
        Run { check: check.to_string(), params, start: Instant::now() }
    }
    pub fn finish(self, status: Status, witness: Option<Value>) -> Verdict {
        Verdict { check: self.check, params: self.params, status, witness, millis: self.start.elapsed().as_millis() as u64 }
    }
    pub fn pass(self, info: Option<Value>) -> Verdict {
        self.finish(Status::Pass, info)
    }
    pub fn fail(self, witness: Value) -> Verdict {
        self.finish(Status::Fail, Some(witness))
    }
    pub fn truncated(self, witness: Value) -> Verdict {
        self.finish(Status::Truncated, Some(witness))
    }
}

/// Outcome of a batch of membership tests.
pub(crate) enum Contain {
    All,
    Missing { name: String, remainder: String },
    Unknown { name: String, cap: u32 },
}

/// Test whether every named polynomial lies in `ideal` using one basis
/// computed up to the largest degree involved (homogeneous ideals) or to
/// completion otherwise.
pub(crate) fn contains_all<F: Field>(ideal: &IdealPresentation<F>, polys: &[(String, Polynomial<F>)]) -> Contain {
    let homog = ideal.homogeneity_check();
    let cap = if homog { polys.iter().filter_map(|(_, p)| p.degree()).max().unwrap_or(0).max(1) } else { u32::MAX };
    let gb = ideal.groebner(if homog { Some(cap) } else { None });
    for (name, p) in polys {
        match crate::polyring::member_in(&gb, homog, p) {
            Membership::Member { .. } => {}
            Membership::NotMember { remainder } => return Contain::Missing { name: name.clone(), remainder: remainder.to_string() },
            Membership::Unknown { cap } => return Contain::Unknown { name: name.clone(), cap },
        }
    }
    Contain::All
}

/// Turn a containment result into a verdict.
pub(crate) fn containment_verdict(run: Run, what: &str, c: Contain, info: Option<Value>) -> Verdict {
    match c {
        Contain::All => run.pass(info),
        Contain::Missing { name, remainder } => {
            run.fail(serde_json::json!({"direction": what, "generator": name, "remainder": remainder}))
        }
        Contain::Unknown { name, cap } => run.truncated(serde_json::json!({"direction": what, "generator": name, "cap": cap})),
    }
}
