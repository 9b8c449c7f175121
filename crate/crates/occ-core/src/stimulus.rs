//! One appraisable occurrence. A single stimulus can carry an event, an
//! action and an object facet at the same time, and each facet is appraised
//! on its own.

use crate::category::SignedAppraisal;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StimulusError {
    #[error("stimulus id must be non-empty")]
    EmptyId,
    #[error("stimulus '{0}' has empty type_key")]
    EmptyTypeKey(String),
    #[error("stimulus '{0}' has no facets")]
    NoFacets(String),
    #[error("stimulus '{id}': realization {value} outside [0, 1]")]
    RealizationOutOfRange { id: String, value: f64 },
    #[error("stimulus '{id}': empty {field} id")]
    EmptyField { id: String, field: &'static str },
}

/// Contribution of an event to one of the character's own goals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoalImpact {
    pub goal: String,
    pub contribution: SignedAppraisal,
    pub realization: f64,
}

/// Another agent affected by the event, appraised through the user model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OtherAgent {
    pub agent: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventFacet {
    #[serde(default)]
    pub goal_impacts_self: Vec<GoalImpact>,
    #[serde(default)]
    pub others: Vec<OtherAgent>,
    /// When set, the event confirms this open prospect instead of sourcing
    /// joy/distress directly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prospect_ref: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFacet {
    /// `"self"` for the character's own actions, otherwise an agent id.
    pub actor: String,
    pub action: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectFacet {
    pub concept: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stimulus {
    pub id: String,
    /// Groups occurrences in the history; drives likelihood and repetition
    /// damping.
    pub type_key: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub event: Option<EventFacet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionFacet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<ObjectFacet>,
}

impl ActionFacet {
    pub fn is_self(&self) -> bool {
        self.actor == "self"
    }
}

impl Stimulus {
    pub fn validate(&self) -> Result<(), StimulusError> {
        if self.id.is_empty() {
            return Err(StimulusError::EmptyId);
        }
        if self.type_key.is_empty() {
            return Err(StimulusError::EmptyTypeKey(self.id.clone()));
        }
        if self.event.is_none() && self.action.is_none() && self.object.is_none() {
            return Err(StimulusError::NoFacets(self.id.clone()));
        }
        if let Some(ev) = &self.event {
            for impact in &ev.goal_impacts_self {
                if impact.goal.is_empty() {
                    return Err(StimulusError::EmptyField {
                        id: self.id.clone(),
                        field: "goal",
                    });
                }
                if !(impact.realization.is_finite()
                    && (0.0..=1.0).contains(&impact.realization))
                {
                    return Err(StimulusError::RealizationOutOfRange {
                        id: self.id.clone(),
                        value: impact.realization,
                    });
                }
            }
            for other in &ev.others {
                if other.agent.is_empty() {
                    return Err(StimulusError::EmptyField {
                        id: self.id.clone(),
                        field: "agent",
                    });
                }
            }
        }
        if let Some(action) = &self.action {
            if action.actor.is_empty() {
                return Err(StimulusError::EmptyField {
                    id: self.id.clone(),
                    field: "actor",
                });
            }
            if action.action.is_empty() {
                return Err(StimulusError::EmptyField {
                    id: self.id.clone(),
                    field: "action",
                });
            }
        }
        if let Some(object) = &self.object {
            if object.concept.is_empty() {
                return Err(StimulusError::EmptyField {
                    id: self.id.clone(),
                    field: "concept",
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facetless_stimulus_rejected() {
        let s: Stimulus =
            serde_json::from_str(r#"{"id": "x", "type_key": "t"}"#).unwrap();
        assert!(matches!(s.validate(), Err(StimulusError::NoFacets(_))));
    }

    #[test]
    fn realization_out_of_range_rejected() {
        let s: Stimulus = serde_json::from_str(
            r#"{"id": "x", "type_key": "t",
                "event": {"goal_impacts_self": [{"goal": "g", "contribution": 0.5, "realization": 1.5}]}}"#,
        )
        .unwrap();
        assert!(matches!(
            s.validate(),
            Err(StimulusError::RealizationOutOfRange { .. })
        ));
    }

    #[test]
    fn three_facet_stimulus_parses() {
        let s: Stimulus = serde_json::from_str(
            r#"{"id": "gift", "type_key": "give-banana-bunch",
                "event": {"goal_impacts_self": [{"goal": "eat", "contribution": 0.8, "realization": 1.0}],
                           "others": [{"agent": "user"}]},
                "action": {"actor": "user", "action": "give-food"},
                "object": {"concept": "banana"}}"#,
        )
        .unwrap();
        s.validate().unwrap();
        assert!(!s.action.as_ref().unwrap().is_self());
    }

    #[test]
    fn unknown_field_rejected() {
        let r = serde_json::from_str::<Stimulus>(
            r#"{"id": "x", "type_key": "t", "object": {"concept": "c"}, "oops": 1}"#,
        );
        assert!(r.is_err());
    }
}
