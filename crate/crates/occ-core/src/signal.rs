//! The output of appraisal phases 1-2: one category hit with its intensity
//! and the stimulus (or prospect) that caused it.

use crate::category::{EmotionCategory, Intensity};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppraisalSignal {
    pub category: EmotionCategory,
    pub intensity: Intensity,
    pub source: String,
}
