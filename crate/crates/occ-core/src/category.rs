//! The 22 OCC emotion categories and the scalar value types used by the
//! appraisal pipeline.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Structural group of a category, following the event/action/object
/// branching of the OCC model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CategoryGroup {
    WellBeing,
    FortunesOfOthers,
    Prospect,
    Confirmation,
    Attribution,
    Compound,
    Attraction,
}

/// Positive or negative polarity of a category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Valence {
    Positive,
    Negative,
}

/// One of the 22 OCC emotion categories.
///
/// Declaration order is the canonical order (index 0..21) used for
/// tie-breaking and for the state vector layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmotionCategory {
    Joy,
    Distress,
    HappyFor,
    Pity,
    Gloating,
    Resentment,
    Hope,
    Fear,
    Satisfaction,
    FearsConfirmed,
    Relief,
    Disappointment,
    Pride,
    Shame,
    Admiration,
    Reproach,
    Gratification,
    Remorse,
    Gratitude,
    Anger,
    Love,
    Hate,
}

pub const CATEGORY_COUNT: usize = 22;

impl EmotionCategory {
    /// All 22 categories in canonical order.
    pub const ALL: [EmotionCategory; CATEGORY_COUNT] = [
        EmotionCategory::Joy,
        EmotionCategory::Distress,
        EmotionCategory::HappyFor,
        EmotionCategory::Pity,
        EmotionCategory::Gloating,
        EmotionCategory::Resentment,
        EmotionCategory::Hope,
        EmotionCategory::Fear,
        EmotionCategory::Satisfaction,
        EmotionCategory::FearsConfirmed,
        EmotionCategory::Relief,
        EmotionCategory::Disappointment,
        EmotionCategory::Pride,
        EmotionCategory::Shame,
        EmotionCategory::Admiration,
        EmotionCategory::Reproach,
        EmotionCategory::Gratification,
        EmotionCategory::Remorse,
        EmotionCategory::Gratitude,
        EmotionCategory::Anger,
        EmotionCategory::Love,
        EmotionCategory::Hate,
    ];

    /// Canonical index, 0..21.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<EmotionCategory> {
        Self::ALL.get(index).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            EmotionCategory::Joy => "joy",
            EmotionCategory::Distress => "distress",
            EmotionCategory::HappyFor => "happy-for",
            EmotionCategory::Pity => "pity",
            EmotionCategory::Gloating => "gloating",
            EmotionCategory::Resentment => "resentment",
            EmotionCategory::Hope => "hope",
            EmotionCategory::Fear => "fear",
            EmotionCategory::Satisfaction => "satisfaction",
            EmotionCategory::FearsConfirmed => "fears-confirmed",
            EmotionCategory::Relief => "relief",
            EmotionCategory::Disappointment => "disappointment",
            EmotionCategory::Pride => "pride",
            EmotionCategory::Shame => "shame",
            EmotionCategory::Admiration => "admiration",
            EmotionCategory::Reproach => "reproach",
            EmotionCategory::Gratification => "gratification",
            EmotionCategory::Remorse => "remorse",
            EmotionCategory::Gratitude => "gratitude",
            EmotionCategory::Anger => "anger",
            EmotionCategory::Love => "love",
            EmotionCategory::Hate => "hate",
        }
    }

    pub fn group(self) -> CategoryGroup {
        use CategoryGroup::*;
        use EmotionCategory::*;
        match self {
            Joy | Distress => WellBeing,
            HappyFor | Pity | Gloating | Resentment => FortunesOfOthers,
            Hope | Fear => Prospect,
            Satisfaction | FearsConfirmed | Relief | Disappointment => Confirmation,
            Pride | Shame | Admiration | Reproach => Attribution,
            Gratification | Remorse | Gratitude | Anger => Compound,
            Love | Hate => Attraction,
        }
    }

    /// Fixed valence per the canonical table. Gloating counts as positive
    /// (pleasure at another's misfortune), which makes the split exactly 11/11.
    pub fn valence(self) -> Valence {
        use EmotionCategory::*;
        match self {
            Joy | HappyFor | Gloating | Hope | Satisfaction | Relief | Pride | Admiration
            | Gratification | Gratitude | Love => Valence::Positive,
            Distress | Pity | Resentment | Fear | FearsConfirmed | Disappointment | Shame
            | Reproach | Remorse | Anger | Hate => Valence::Negative,
        }
    }
}

impl fmt::Display for EmotionCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Free-function form of [`EmotionCategory::valence`].
pub fn valence_of(category: EmotionCategory) -> Valence {
    category.valence()
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ValueError {
    #[error("intensity {0} outside [0, 1]")]
    IntensityOutOfRange(f64),
    #[error("signed appraisal {0} outside [-1, 1]")]
    AppraisalOutOfRange(f64),
}

/// A dimensionless emotion intensity in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Intensity(f64);

impl Intensity {
    pub const ZERO: Intensity = Intensity(0.0);

    pub fn new(value: f64) -> Result<Intensity, ValueError> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(Intensity(value))
        } else {
            Err(ValueError::IntensityOutOfRange(value))
        }
    }

    /// Clamp into [0, 1]; NaN maps to 0.
    pub fn saturating(value: f64) -> Intensity {
        if value.is_nan() {
            Intensity(0.0)
        } else {
            Intensity(value.clamp(0.0, 1.0))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl<'de> Deserialize<'de> for Intensity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Intensity::new(v).map_err(serde::de::Error::custom)
    }
}

/// A signed appraisal value in [-1, 1]: sign is valence, magnitude is
/// strength. Houses desirability, praiseworthiness and appealingness.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct SignedAppraisal(f64);

impl SignedAppraisal {
    pub const NEUTRAL: SignedAppraisal = SignedAppraisal(0.0);

    pub fn new(value: f64) -> Result<SignedAppraisal, ValueError> {
        if value.is_finite() && (-1.0..=1.0).contains(&value) {
            Ok(SignedAppraisal(value))
        } else {
            Err(ValueError::AppraisalOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_neutral(self) -> bool {
        self.0 == 0.0
    }
}

impl<'de> Deserialize<'de> for SignedAppraisal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        SignedAppraisal::new(v).map_err(serde::de::Error::custom)
    }
}
