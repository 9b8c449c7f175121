//! Phase 3: integrate appraisal signals into the decaying emotion state.

use crate::appraisal::{categorize, quantify};
use crate::category::{EmotionCategory, CATEGORY_COUNT};
use crate::history::{History, HistoryError, ProspectOutcome};
use crate::knowledge::KnowledgeBase;
use crate::params::EngineParams;
use crate::signal::AppraisalSignal;
use crate::stimulus::{Stimulus, StimulusError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StepError {
    #[error("timestamp regression: now={now} < state at {last}")]
    TimeRegression { now: u64, last: u64 },
    #[error("stimulus '{id}': {source}")]
    InvalidStimulus {
        id: String,
        source: StimulusError,
    },
    #[error("stimulus '{id}': {source}")]
    History {
        id: String,
        source: HistoryError,
    },
}

/// The character's current intensity vector over the 22 categories, plus
/// the time it was last touched.
#[derive(Debug, Clone, PartialEq)]
pub struct EmotionState {
    values: [f64; CATEGORY_COUNT],
    last_update: u64,
}

impl Default for EmotionState {
    fn default() -> Self {
        EmotionState::neutral()
    }
}

impl EmotionState {
    /// All-zero state at t=0.
    pub fn neutral() -> EmotionState {
        EmotionState {
            values: [0.0; CATEGORY_COUNT],
            last_update: 0,
        }
    }

    pub fn get(&self, category: EmotionCategory) -> f64 {
        self.values[category.index()]
    }

    pub fn values(&self) -> &[f64; CATEGORY_COUNT] {
        &self.values
    }

    pub fn last_update(&self) -> u64 {
        self.last_update
    }

    #[cfg(test)]
    pub(crate) fn with_value(mut self, category: EmotionCategory, value: f64) -> EmotionState {
        self.values[category.index()] = value;
        self
    }

    /// Test/fuzz constructor; clamps into [0, 1].
    pub fn from_values(values: [f64; CATEGORY_COUNT], last_update: u64) -> EmotionState {
        let mut clamped = values;
        for v in &mut clamped {
            *v = v.clamp(0.0, 1.0);
        }
        EmotionState {
            values: clamped,
            last_update,
        }
    }
}

/// Saturating accumulation: each signal moves its category toward 1 by
/// `gain * intensity` of the remaining headroom. Signals are folded in
/// canonical category order, then input order, so one call is
/// order-independent for the caller.
pub fn apply_signals(
    state: &EmotionState,
    signals: &[AppraisalSignal],
    params: &EngineParams,
) -> EmotionState {
    let mut ordered: Vec<&AppraisalSignal> = signals.iter().collect();
    ordered.sort_by_key(|s| s.category.index());
    let mut next = state.clone();
    for signal in ordered {
        let v = &mut next.values[signal.category.index()];
        *v += params.gain * signal.intensity.value() * (1.0 - *v);
        *v = v.clamp(0.0, 1.0);
    }
    next
}

/// Exponential decay of every entry by the state half-life.
pub fn decay(state: &EmotionState, dt_ms: u64, params: &EngineParams) -> EmotionState {
    if dt_ms == 0 {
        return state.clone();
    }
    let factor = 0.5_f64.powf(dt_ms as f64 / params.state_half_life_ms as f64);
    let mut next = state.clone();
    for v in &mut next.values {
        *v *= factor;
    }
    next.last_update = state.last_update + dt_ms;
    next
}

/// One engine step: decay to `now`, then appraise and integrate each
/// stimulus in input order, recording occurrences between them. Returns all
/// emitted signals for tracing.
pub fn step(
    state: &mut EmotionState,
    history: &mut History,
    kb: &KnowledgeBase,
    stimuli: &[Stimulus],
    now: u64,
    params: &EngineParams,
) -> Result<Vec<AppraisalSignal>, StepError> {
    if now < state.last_update {
        return Err(StepError::TimeRegression {
            now,
            last: state.last_update,
        });
    }
    *state = decay(state, now - state.last_update, params);

    let mut all_signals = Vec::new();
    for stimulus in stimuli {
        let mut signals = Vec::new();

        // A prospect-linked event confirms its prospect; the confirmation
        // emotion replaces direct joy/distress.
        if let Some(prospect_id) = stimulus
            .event
            .as_ref()
            .and_then(|ev| ev.prospect_ref.as_deref())
        {
            let resolved = history
                .resolve_prospect(prospect_id, ProspectOutcome::Confirmed)
                .map_err(|source| StepError::History {
                    id: stimulus.id.clone(),
                    source,
                })?;
            signals.extend(resolved);
        }

        let fires = categorize(stimulus, kb, history, params).map_err(|source| {
            StepError::InvalidStimulus {
                id: stimulus.id.clone(),
                source,
            }
        })?;
        signals.extend(quantify(&fires, stimulus, kb, history, now, params));

        *state = apply_signals(state, &signals, params);

        let distress_linked = signals.iter().any(|s| {
            matches!(
                s.category,
                EmotionCategory::Distress | EmotionCategory::FearsConfirmed
            )
        });
        history
            .record_occurrence_linked(stimulus, now, params, distress_linked)
            .map_err(|source| StepError::History {
                id: stimulus.id.clone(),
                source,
            })?;
        all_signals.extend(signals);
    }
    state.last_update = now;
    Ok(all_signals)
}
