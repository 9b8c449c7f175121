//! Scenario ingestion, deterministic replay and trace emission.

use crate::category::{EmotionCategory, CATEGORY_COUNT};
use crate::dynamics::{self, EmotionState, StepError};
use crate::expression::{
    map_state, regulation_hints, ExpressionFrame, ExpressionMode, ExpressionProfile,
    RegulationHint,
};
use crate::history::{History, HistoryError, Prospect, ProspectOutcome};
use crate::knowledge::KnowledgeBase;
use crate::params::EngineParams;
use crate::signal::AppraisalSignal;
use crate::stimulus::{Stimulus, StimulusError};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScenarioError {
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("unsupported version {0} (expected 1)")]
    Version(u32),
    #[error("step {index}: unknown kind '{kind}'")]
    UnknownKind { index: usize, kind: String },
    #[error("step {index}: time regression {t_ms} after {prev_ms}")]
    TimeRegression {
        index: usize,
        t_ms: u64,
        prev_ms: u64,
    },
    #[error("step {index}: unknown prospect '{id}'")]
    UnknownProspect { index: usize, id: String },
    #[error("step {index}: {source}")]
    InvalidStimulus {
        index: usize,
        source: StimulusError,
    },
    #[error("step {index}: effort units must be positive, got {units}")]
    NonPositiveEffort { index: usize, units: f64 },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RunError {
    #[error("step {index} failed: {source}")]
    Step { index: usize, source: StepError },
    #[error("step {index} failed: {source}")]
    History { index: usize, source: HistoryError },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolveStep {
    pub prospect_id: String,
    pub outcome: ProspectOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EffortStep {
    pub goal: String,
    pub units: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepKind {
    Stimulus(Stimulus),
    Prospect(Prospect),
    Resolve(ResolveStep),
    Effort(EffortStep),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub t_ms: u64,
    pub kind: StepKind,
}

/// A validated, replayable stimulus script.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub steps: Vec<Step>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepDoc {
    t_ms: u64,
    kind: String,
    payload: serde_json::Value,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    version: u32,
    #[serde(default)]
    steps: Vec<StepDoc>,
}

/// Parse and validate a scenario document: timestamps must be
/// non-decreasing and every resolve or prospect_ref must point at a
/// prospect registered by an earlier step.
pub fn parse_scenario(document: &str) -> Result<Scenario, ScenarioError> {
    let doc: ScenarioDoc =
        serde_json::from_str(document).map_err(|e| ScenarioError::Schema(e.to_string()))?;
    if doc.version != 1 {
        return Err(ScenarioError::Version(doc.version));
    }

    let mut steps = Vec::with_capacity(doc.steps.len());
    let mut prev_ms: Option<u64> = None;
    let mut registered: HashSet<String> = HashSet::new();

    for (index, step) in doc.steps.into_iter().enumerate() {
        if let Some(prev) = prev_ms {
            if step.t_ms < prev {
                return Err(ScenarioError::TimeRegression {
                    index,
                    t_ms: step.t_ms,
                    prev_ms: prev,
                });
            }
        }
        prev_ms = Some(step.t_ms);

        let schema = |e: serde_json::Error| ScenarioError::Schema(format!("step {index}: {e}"));
        let kind = match step.kind.as_str() {
            "stimulus" => {
                let stimulus: Stimulus =
                    serde_json::from_value(step.payload).map_err(schema)?;
                stimulus
                    .validate()
                    .map_err(|source| ScenarioError::InvalidStimulus { index, source })?;
                if let Some(prospect_ref) = stimulus
                    .event
                    .as_ref()
                    .and_then(|ev| ev.prospect_ref.as_deref())
                {
                    if !registered.contains(prospect_ref) {
                        return Err(ScenarioError::UnknownProspect {
                            index,
                            id: prospect_ref.to_string(),
                        });
                    }
                }
                StepKind::Stimulus(stimulus)
            }
            "prospect" => {
                let prospect: Prospect =
                    serde_json::from_value(step.payload).map_err(schema)?;
                registered.insert(prospect.id.clone());
                StepKind::Prospect(prospect)
            }
            "resolve" => {
                let resolve: ResolveStep =
                    serde_json::from_value(step.payload).map_err(schema)?;
                if !registered.contains(&resolve.prospect_id) {
                    return Err(ScenarioError::UnknownProspect {
                        index,
                        id: resolve.prospect_id,
                    });
                }
                StepKind::Resolve(resolve)
            }
            "effort" => {
                let effort: EffortStep =
                    serde_json::from_value(step.payload).map_err(schema)?;
                if !(effort.units.is_finite() && effort.units > 0.0) {
                    return Err(ScenarioError::NonPositiveEffort {
                        index,
                        units: effort.units,
                    });
                }
                StepKind::Effort(effort)
            }
            other => {
                return Err(ScenarioError::UnknownKind {
                    index,
                    kind: other.to_string(),
                })
            }
        };
        steps.push(Step {
            t_ms: step.t_ms,
            kind,
        });
    }
    Ok(Scenario { steps })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    pub t_ms: u64,
    pub fired: Vec<AppraisalSignal>,
    pub state: [f64; CATEGORY_COUNT],
    pub frame: ExpressionFrame,
    pub hints: BTreeSet<RegulationHint>,
}

/// One record per distinct scenario timestamp, after all same-timestamp
/// steps applied, plus the initial neutral record at t=0.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
}

/// Replay a scenario from the all-zero state and empty history.
pub fn run_scenario(
    kb: &KnowledgeBase,
    scenario: &Scenario,
    profile: ExpressionProfile,
    mode: ExpressionMode,
    params: &EngineParams,
) -> Result<Trace, RunError> {
    let mut state = EmotionState::neutral();
    let mut history = History::new();
    let mut records = Vec::new();

    let snapshot = |t_ms: u64,
                    fired: Vec<AppraisalSignal>,
                    state: &EmotionState,
                    history: &History| TraceRecord {
        t_ms,
        fired,
        state: *state.values(),
        frame: map_state(state, profile, mode, params),
        hints: regulation_hints(state, history, t_ms, params),
    };

    records.push(snapshot(0, Vec::new(), &state, &history));

    let mut cursor = 0usize;
    let steps = &scenario.steps;
    while cursor < steps.len() {
        let t_ms = steps[cursor].t_ms;
        // Decay up front so non-stimulus steps also act on the decayed state.
        dynamics::step(&mut state, &mut history, kb, &[], t_ms, params)
            .map_err(|source| RunError::Step {
                index: cursor,
                source,
            })?;

        let mut fired = Vec::new();
        while cursor < steps.len() && steps[cursor].t_ms == t_ms {
            let index = cursor;
            match &steps[index].kind {
                StepKind::Stimulus(stimulus) => {
                    let signals = dynamics::step(
                        &mut state,
                        &mut history,
                        kb,
                        std::slice::from_ref(stimulus),
                        t_ms,
                        params,
                    )
                    .map_err(|source| RunError::Step { index, source })?;
                    fired.extend(signals);
                }
                StepKind::Prospect(prospect) => {
                    let signal = history
                        .register_prospect(prospect.clone())
                        .map_err(|source| RunError::History { index, source })?;
                    if let Some(signal) = signal {
                        state = dynamics::apply_signals(&state, std::slice::from_ref(&signal), params);
                        fired.push(signal);
                    }
                }
                StepKind::Resolve(resolve) => {
                    let signal = history
                        .resolve_prospect(&resolve.prospect_id, resolve.outcome)
                        .map_err(|source| RunError::History { index, source })?;
                    if let Some(signal) = signal {
                        state = dynamics::apply_signals(&state, std::slice::from_ref(&signal), params);
                        fired.push(signal);
                    }
                }
                StepKind::Effort(effort) => {
                    history
                        .add_effort(&effort.goal, effort.units)
                        .map_err(|source| RunError::History { index, source })?;
                }
            }
            cursor += 1;
        }
        records.push(snapshot(t_ms, fired, &state, &history));
    }

    Ok(Trace { records })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceFormat {
    Jsonl,
    Csv,
}

impl TraceFormat {
    pub fn parse(name: &str) -> Option<TraceFormat> {
        match name {
            "jsonl" => Some(TraceFormat::Jsonl),
            "csv" => Some(TraceFormat::Csv),
            _ => None,
        }
    }
}

/// Serialize a trace: one JSON object per record, or a CSV of the state
/// vector with 6-decimal fixed formatting.
pub fn emit_trace(trace: &Trace, format: TraceFormat) -> String {
    match format {
        TraceFormat::Jsonl => {
            let mut out = String::new();
            for record in &trace.records {
                out.push_str(&serde_json::to_string(record).expect("trace serializes"));
                out.push('\n');
            }
            out
        }
        TraceFormat::Csv => {
            let mut out = String::from("t_ms");
            for category in EmotionCategory::ALL {
                out.push(',');
                out.push_str(category.name());
            }
            out.push_str(",dominant_label\n");
            for record in &trace.records {
                write!(out, "{}", record.t_ms).unwrap();
                for v in record.state {
                    write!(out, ",{v:.6}").unwrap();
                }
                out.push(',');
                out.push_str(&record.frame.dominant_label);
                out.push('\n');
            }
            out
        }
    }
}
