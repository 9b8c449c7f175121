//! Phase 4: project the 22-category state onto a reduced set of expression
//! channels, plus read-only behavior-regulation hints.

use crate::category::{EmotionCategory, Valence, CATEGORY_COUNT};
use crate::dynamics::EmotionState;
use crate::history::History;
use crate::params::EngineParams;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Which expression vocabulary to map onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpressionProfile {
    /// Identity mapping, one channel per category.
    #[serde(rename = "full22")]
    Full22,
    /// Ortony's reduced set: six positive and six negative channels, with
    /// the fortunes-of-others categories dropped.
    #[serde(rename = "ortony-reduced")]
    OrtonyReduced,
    /// The six basic facial expressions. Surprise has no OCC source and
    /// stays at zero.
    #[serde(rename = "ekman6")]
    Ekman6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpressionMode {
    Dominant,
    Blend,
}

/// Destination of a category under a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bucket {
    Channel(usize),
    Dropped,
}

const EKMAN_CHANNELS: [&str; 6] = [
    "happiness", "sadness", "anger", "disgust", "fear", "surprise",
];

const ORTONY_CHANNELS: [&str; 12] = [
    "joy",
    "hope",
    "relief",
    "pride",
    "gratitude",
    "love",
    "distress",
    "fear",
    "disappointment",
    "remorse",
    "anger",
    "hate",
];

impl ExpressionProfile {
    pub fn name(self) -> &'static str {
        match self {
            ExpressionProfile::Full22 => "full22",
            ExpressionProfile::OrtonyReduced => "ortony-reduced",
            ExpressionProfile::Ekman6 => "ekman6",
        }
    }

    pub fn parse(name: &str) -> Option<ExpressionProfile> {
        match name {
            "full22" => Some(ExpressionProfile::Full22),
            "ortony" | "ortony-reduced" => Some(ExpressionProfile::OrtonyReduced),
            "ekman6" => Some(ExpressionProfile::Ekman6),
            _ => None,
        }
    }

    pub fn channels(self) -> Vec<&'static str> {
        match self {
            ExpressionProfile::Full22 => {
                EmotionCategory::ALL.iter().map(|c| c.name()).collect()
            }
            ExpressionProfile::OrtonyReduced => ORTONY_CHANNELS.to_vec(),
            ExpressionProfile::Ekman6 => EKMAN_CHANNELS.to_vec(),
        }
    }

    /// Total bucket table: every category lands on exactly one channel or
    /// on the explicit dropped sink.
    pub fn bucket_of(self, category: EmotionCategory) -> Bucket {
        use EmotionCategory::*;
        match self {
            ExpressionProfile::Full22 => Bucket::Channel(category.index()),
            ExpressionProfile::Ekman6 => {
                if category.valence() == Valence::Positive {
                    return Bucket::Channel(0); // happiness <- all 11 positives
                }
                match category {
                    Anger | Reproach | Resentment => Bucket::Channel(2),
                    Distress | Pity | Disappointment | Remorse | Shame | FearsConfirmed => {
                        Bucket::Channel(1)
                    }
                    Hate => Bucket::Channel(3),
                    Fear => Bucket::Channel(4),
                    _ => unreachable!("all negative categories are bucketed"),
                }
            }
            ExpressionProfile::OrtonyReduced => match category {
                Joy => Bucket::Channel(0),
                Hope => Bucket::Channel(1),
                Relief | Satisfaction => Bucket::Channel(2),
                Pride | Gratification => Bucket::Channel(3),
                Gratitude | Admiration => Bucket::Channel(4),
                Love => Bucket::Channel(5),
                Distress => Bucket::Channel(6),
                Fear | FearsConfirmed => Bucket::Channel(7),
                Disappointment => Bucket::Channel(8),
                Remorse | Shame => Bucket::Channel(9),
                Anger | Reproach => Bucket::Channel(10),
                Hate => Bucket::Channel(11),
                HappyFor | Gloating | Pity | Resentment => Bucket::Dropped,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Channel {
    pub name: &'static str,
    pub value: f64,
}

/// Per-channel output intensities under one profile and mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpressionFrame {
    pub profile: ExpressionProfile,
    pub mode: ExpressionMode,
    pub channels: Vec<Channel>,
    pub dominant_label: String,
}

/// Argmax over the 22 entries; ties break toward the lowest canonical
/// index. The all-zero state yields (joy, 0).
pub fn dominant_category(state: &EmotionState) -> (EmotionCategory, f64) {
    let mut best = 0usize;
    for i in 1..CATEGORY_COUNT {
        if state.values()[i] > state.values()[best] {
            best = i;
        }
    }
    (
        EmotionCategory::from_index(best).unwrap(),
        state.values()[best],
    )
}

/// Project the state onto a profile. Blend mode takes the max over each
/// channel's source categories; dominant mode lights only the dominant
/// category's channel. Channels below the threshold are zeroed.
pub fn map_state(
    state: &EmotionState,
    profile: ExpressionProfile,
    mode: ExpressionMode,
    params: &EngineParams,
) -> ExpressionFrame {
    let names = profile.channels();
    let mut values = vec![0.0f64; names.len()];

    match mode {
        ExpressionMode::Blend => {
            for category in EmotionCategory::ALL {
                if let Bucket::Channel(i) = profile.bucket_of(category) {
                    values[i] = values[i].max(state.get(category));
                }
            }
        }
        ExpressionMode::Dominant => {
            let (category, intensity) = dominant_category(state);
            if let Bucket::Channel(i) = profile.bucket_of(category) {
                values[i] = intensity;
            }
        }
    }

    for v in &mut values {
        if *v < params.expr_threshold {
            *v = 0.0;
        }
    }

    let mut dominant_label = "neutral".to_string();
    let mut best = -1.0;
    for (i, v) in values.iter().enumerate() {
        if *v > 0.0 && *v > best {
            best = *v;
            dominant_label = names[i].to_string();
        }
    }

    ExpressionFrame {
        profile,
        mode,
        channels: names
            .into_iter()
            .zip(values)
            .map(|(name, value)| Channel { name, value })
            .collect(),
        dominant_label,
    }
}

/// Behavior-regulation classes the character could act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegulationHint {
    SelfRegulation,
    OtherModulation,
    ProblemSolving,
}

/// Derive regulation hints from the state and history: calm down when
/// negative emotion piles up, act on the other when anger or reproach is
/// high, avoid repetition when one distressing event type keeps recurring.
pub fn regulation_hints(
    state: &EmotionState,
    history: &History,
    now: u64,
    params: &EngineParams,
) -> BTreeSet<RegulationHint> {
    let mut hints = BTreeSet::new();

    let negative_sum: f64 = EmotionCategory::ALL
        .iter()
        .filter(|c| c.valence() == Valence::Negative)
        .map(|c| state.get(*c))
        .sum();
    if negative_sum >= params.reg_neg_threshold {
        hints.insert(RegulationHint::SelfRegulation);
    }

    let anger = state
        .get(EmotionCategory::Anger)
        .max(state.get(EmotionCategory::Reproach));
    if anger >= params.reg_anger_threshold {
        hints.insert(RegulationHint::OtherModulation);
    }

    if history.has_distress_repeats(now, params.reg_repeat_count, params.reg_repeat_window_ms) {
        hints.insert(RegulationHint::ProblemSolving);
    }

    hints
}
