//! Occurrence log, excitation counters, familiarity counts, effort ledger
//! and the prospect registry. Everything history-dependent in the intensity
//! calculation reads from here.

use crate::category::{EmotionCategory, Intensity, SignedAppraisal};
use crate::knowledge::KnowledgeBase;
use crate::params::EngineParams;
use crate::signal::AppraisalSignal;
use crate::stimulus::Stimulus;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HistoryError {
    #[error("timestamp regression: now={now} < last={last}")]
    TimestampRegression { now: u64, last: u64 },
    #[error("duplicate prospect id '{0}'")]
    DuplicateProspect(String),
    #[error("unknown prospect id '{0}'")]
    UnknownProspect(String),
    #[error("prospect '{0}' already resolved")]
    AlreadyResolved(String),
    #[error("prospect '{id}' likelihood {value} outside [0, 1]")]
    LikelihoodOutOfRange { id: String, value: f64 },
    #[error("effort units must be positive, got {0}")]
    NonPositiveEffort(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProspectStatus {
    Open,
    Confirmed,
    Disconfirmed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProspectOutcome {
    Confirmed,
    Disconfirmed,
}

/// An anticipated event. Sources hope or fear when registered and exactly
/// one confirmation-group emotion when resolved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Prospect {
    pub id: String,
    pub type_key: String,
    pub desirability: SignedAppraisal,
    pub likelihood: f64,
    #[serde(default = "open_status")]
    pub status: ProspectStatus,
}

fn open_status() -> ProspectStatus {
    ProspectStatus::Open
}

#[derive(Debug, Clone, PartialEq)]
pub struct Occurrence {
    pub type_key: String,
    pub t_ms: u64,
    /// Set when the stimulus that produced this occurrence also emitted a
    /// distress signal; feeds the problem-solving regulation hint.
    pub distress_linked: bool,
}

#[derive(Debug, Clone, Copy)]
struct Excitation {
    value: f64,
    last_t_ms: u64,
}

/// Append-only event memory. Single-owner mutable value; operations take
/// `&mut self` and the harness owns one per run.
#[derive(Debug, Clone, Default)]
pub struct History {
    occurrences: Vec<Occurrence>,
    excitation: HashMap<String, Excitation>,
    familiarity_counts: HashMap<String, u64>,
    effort_ledger: HashMap<String, f64>,
    prospects: HashMap<String, Prospect>,
    last_t_ms: Option<u64>,
}

fn half_life_decay(dt_ms: u64, half_life_ms: u64) -> f64 {
    0.5_f64.powf(dt_ms as f64 / half_life_ms as f64)
}

impl History {
    pub fn new() -> History {
        History::default()
    }

    pub fn occurrences(&self) -> &[Occurrence] {
        &self.occurrences
    }

    pub fn last_timestamp(&self) -> Option<u64> {
        self.last_t_ms
    }

    pub fn prospect(&self, id: &str) -> Option<&Prospect> {
        self.prospects.get(id)
    }

    /// Append an occurrence: bump the type's excitation counter and the
    /// object concept's familiarity count.
    pub fn record_occurrence(
        &mut self,
        stimulus: &Stimulus,
        now: u64,
        params: &EngineParams,
    ) -> Result<(), HistoryError> {
        self.record_occurrence_linked(stimulus, now, params, false)
    }

    pub(crate) fn record_occurrence_linked(
        &mut self,
        stimulus: &Stimulus,
        now: u64,
        params: &EngineParams,
        distress_linked: bool,
    ) -> Result<(), HistoryError> {
        if let Some(last) = self.last_t_ms {
            if now < last {
                return Err(HistoryError::TimestampRegression { now, last });
            }
        }
        self.last_t_ms = Some(now);
        self.occurrences.push(Occurrence {
            type_key: stimulus.type_key.clone(),
            t_ms: now,
            distress_linked,
        });

        let decayed = self.excitation_at(&stimulus.type_key, now, params);
        self.excitation.insert(
            stimulus.type_key.clone(),
            Excitation {
                value: decayed + params.likelihood_alpha,
                last_t_ms: now,
            },
        );

        if let Some(object) = &stimulus.object {
            *self
                .familiarity_counts
                .entry(object.concept.clone())
                .or_insert(0) += 1;
        }
        Ok(())
    }

    /// Excitation counter for a type, decayed to `now`.
    pub fn excitation_at(&self, type_key: &str, now: u64, params: &EngineParams) -> f64 {
        match self.excitation.get(type_key) {
            None => 0.0,
            Some(e) => {
                let dt = now.saturating_sub(e.last_t_ms);
                e.value * half_life_decay(dt, params.likelihood_half_life_ms)
            }
        }
    }

    /// Subjective likelihood of a type recurring: floored at the KB default,
    /// strictly increasing in excitation, always below 1.
    pub fn likelihood_of(
        &self,
        type_key: &str,
        kb: &KnowledgeBase,
        now: u64,
        params: &EngineParams,
    ) -> f64 {
        let d = kb.default_likelihood();
        let e = self.excitation_at(type_key, now, params);
        d + (1.0 - d) * (1.0 - (-e).exp())
    }

    /// Familiarity of a concept: 0 for unseen, approaching 1 with exposure.
    pub fn familiarity_of(&self, concept: &str) -> f64 {
        let n = self.familiarity_counts.get(concept).copied().unwrap_or(0);
        1.0 - 1.0 / (1.0 + n as f64)
    }

    /// Accumulated effort units toward a goal. Capping happens at
    /// quantification time, not here.
    pub fn effort_of(&self, goal: &str) -> f64 {
        self.effort_ledger.get(goal).copied().unwrap_or(0.0)
    }

    pub fn add_effort(&mut self, goal: &str, units: f64) -> Result<(), HistoryError> {
        if !(units.is_finite() && units > 0.0) {
            return Err(HistoryError::NonPositiveEffort(units));
        }
        *self.effort_ledger.entry(goal.to_string()).or_insert(0.0) += units;
        Ok(())
    }

    /// Store an open prospect and emit hope or fear at `L * |d|`.
    pub fn register_prospect(
        &mut self,
        prospect: Prospect,
    ) -> Result<Option<AppraisalSignal>, HistoryError> {
        if !(prospect.likelihood.is_finite() && (0.0..=1.0).contains(&prospect.likelihood)) {
            return Err(HistoryError::LikelihoodOutOfRange {
                id: prospect.id.clone(),
                value: prospect.likelihood,
            });
        }
        if self.prospects.contains_key(&prospect.id) {
            return Err(HistoryError::DuplicateProspect(prospect.id));
        }
        let d = prospect.desirability.value();
        let signal = if d == 0.0 {
            None
        } else {
            let category = if d > 0.0 {
                EmotionCategory::Hope
            } else {
                EmotionCategory::Fear
            };
            Some(AppraisalSignal {
                category,
                intensity: Intensity::saturating(prospect.likelihood * d.abs()),
                source: prospect.id.clone(),
            })
        };
        let mut stored = prospect;
        stored.status = ProspectStatus::Open;
        self.prospects.insert(stored.id.clone(), stored);
        Ok(signal)
    }

    /// Close an open prospect; emits exactly one confirmation-group signal
    /// (or none when the prospect was neutral).
    pub fn resolve_prospect(
        &mut self,
        prospect_id: &str,
        outcome: ProspectOutcome,
    ) -> Result<Option<AppraisalSignal>, HistoryError> {
        let prospect = self
            .prospects
            .get_mut(prospect_id)
            .ok_or_else(|| HistoryError::UnknownProspect(prospect_id.to_string()))?;
        if prospect.status != ProspectStatus::Open {
            return Err(HistoryError::AlreadyResolved(prospect_id.to_string()));
        }
        prospect.status = match outcome {
            ProspectOutcome::Confirmed => ProspectStatus::Confirmed,
            ProspectOutcome::Disconfirmed => ProspectStatus::Disconfirmed,
        };
        let d = prospect.desirability.value();
        if d == 0.0 {
            return Ok(None);
        }
        let likelihood = prospect.likelihood;
        let (category, intensity) = match (outcome, d > 0.0) {
            (ProspectOutcome::Confirmed, true) => {
                (EmotionCategory::Satisfaction, d.abs() * likelihood)
            }
            (ProspectOutcome::Confirmed, false) => {
                (EmotionCategory::FearsConfirmed, d.abs() * likelihood)
            }
            (ProspectOutcome::Disconfirmed, true) => {
                (EmotionCategory::Disappointment, d.abs() * (1.0 - likelihood))
            }
            (ProspectOutcome::Disconfirmed, false) => {
                (EmotionCategory::Relief, d.abs() * (1.0 - likelihood))
            }
        };
        Ok(Some(AppraisalSignal {
            category,
            intensity: Intensity::saturating(intensity),
            source: prospect_id.to_string(),
        }))
    }

    /// True when some type has at least `count` distress-linked occurrences
    /// inside the trailing window.
    pub fn has_distress_repeats(&self, now: u64, count: u32, window_ms: u64) -> bool {
        let cutoff = now.saturating_sub(window_ms);
        let mut per_type: HashMap<&str, u32> = HashMap::new();
        for occ in &self.occurrences {
            if occ.distress_linked && occ.t_ms >= cutoff && occ.t_ms <= now {
                let c = per_type.entry(occ.type_key.as_str()).or_insert(0);
                *c += 1;
                if *c >= count {
                    return true;
                }
            }
        }
        false
    }
}
