//! Deterministic OCC-based emotion appraisal engine.
//!
//! The pipeline has four phases: categorize a stimulus against the
//! character's knowledge base, quantify the affected categories with
//! history-dependent moderation, integrate the signals into a decaying
//! 22-category emotion state, and map that state onto a reduced expression
//! profile. The [`harness`] module replays declarative scenarios through
//! the whole pipeline and emits traces.

pub mod appraisal;
pub mod category;
pub mod dynamics;
pub mod expression;
pub mod harness;
pub mod history;
pub mod knowledge;
pub mod params;
pub mod signal;
pub mod stimulus;

pub use appraisal::{categorize, quantify, CategoryFire, RawVars};
pub use category::{
    valence_of, CategoryGroup, EmotionCategory, Intensity, SignedAppraisal, Valence,
    CATEGORY_COUNT,
};
pub use dynamics::{apply_signals, decay, step, EmotionState, StepError};
pub use expression::{
    dominant_category, map_state, regulation_hints, ExpressionFrame, ExpressionMode,
    ExpressionProfile, RegulationHint,
};
pub use harness::{
    emit_trace, parse_scenario, run_scenario, RunError, Scenario, ScenarioError, Trace,
    TraceFormat, TraceRecord,
};
pub use history::{
    History, HistoryError, Prospect, ProspectOutcome, ProspectStatus,
};
pub use knowledge::{load_kb, ActorRole, KbError, KnowledgeBase, UserModelLookup};
pub use params::{EngineParams, ParamsError, ParamsOverride};
pub use signal::AppraisalSignal;
pub use stimulus::{ActionFacet, EventFacet, GoalImpact, ObjectFacet, OtherAgent, Stimulus};
