//! Tunable engine parameters with validated defaults.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParamsError {
    #[error("parameter {name} out of range: {value}")]
    OutOfRange { name: &'static str, value: f64 },
}

/// All engine knobs in one place. Defaults are the values every test and
/// the CLI start from; a params file may override any subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineParams {
    /// Excitation added per recorded occurrence.
    pub likelihood_alpha: f64,
    /// Half-life of the per-type excitation counter.
    pub likelihood_half_life_ms: u64,
    /// Half-life of the emotion state between stimuli.
    pub state_half_life_ms: u64,
    /// Scale applied to incoming signal intensities, in (0, 1].
    pub gain: f64,
    /// Strength of the effort boost on event desirability.
    pub effort_beta: f64,
    /// Effort units at which the boost saturates.
    pub effort_cap: f64,
    /// How strongly familiarity dampens attraction intensity, in [0, 1].
    pub familiarity_kappa: f64,
    /// Expression channels below this are zeroed; all-below means neutral.
    pub expr_threshold: f64,
    /// Whether compound categories fire in addition to their constituents.
    pub compounds_enabled: bool,
    /// Negative-category sum at which the self-regulation hint fires.
    pub reg_neg_threshold: f64,
    /// max(anger, reproach) at which the other-modulation hint fires.
    pub reg_anger_threshold: f64,
    /// Distress-linked repeats of one type that trigger problem-solving.
    pub reg_repeat_count: u32,
    /// Window for counting those repeats.
    pub reg_repeat_window_ms: u64,
}

impl Default for EngineParams {
    fn default() -> Self {
        EngineParams {
            likelihood_alpha: 0.3,
            likelihood_half_life_ms: 30_000,
            state_half_life_ms: 5_000,
            gain: 1.0,
            effort_beta: 0.25,
            effort_cap: 10.0,
            familiarity_kappa: 0.5,
            expr_threshold: 0.05,
            compounds_enabled: false,
            reg_neg_threshold: 0.6,
            reg_anger_threshold: 0.5,
            reg_repeat_count: 3,
            reg_repeat_window_ms: 60_000,
        }
    }
}

impl EngineParams {
    pub fn validate(&self) -> Result<(), ParamsError> {
        let check = |ok: bool, name: &'static str, value: f64| {
            if ok {
                Ok(())
            } else {
                Err(ParamsError::OutOfRange { name, value })
            }
        };
        check(
            self.likelihood_alpha.is_finite() && self.likelihood_alpha > 0.0,
            "likelihood_alpha",
            self.likelihood_alpha,
        )?;
        check(
            self.likelihood_half_life_ms > 0,
            "likelihood_half_life_ms",
            self.likelihood_half_life_ms as f64,
        )?;
        check(
            self.state_half_life_ms > 0,
            "state_half_life_ms",
            self.state_half_life_ms as f64,
        )?;
        check(
            self.gain.is_finite() && self.gain > 0.0 && self.gain <= 1.0,
            "gain",
            self.gain,
        )?;
        check(
            self.effort_beta.is_finite() && self.effort_beta >= 0.0,
            "effort_beta",
            self.effort_beta,
        )?;
        check(
            self.effort_cap.is_finite() && self.effort_cap > 0.0,
            "effort_cap",
            self.effort_cap,
        )?;
        check(
            (0.0..=1.0).contains(&self.familiarity_kappa),
            "familiarity_kappa",
            self.familiarity_kappa,
        )?;
        check(
            (0.0..1.0).contains(&self.expr_threshold),
            "expr_threshold",
            self.expr_threshold,
        )?;
        check(
            self.reg_neg_threshold.is_finite(),
            "reg_neg_threshold",
            self.reg_neg_threshold,
        )?;
        check(
            self.reg_anger_threshold.is_finite(),
            "reg_anger_threshold",
            self.reg_anger_threshold,
        )?;
        Ok(())
    }
}

/// Partial override, as read from a params file. Unknown fields are rejected.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsOverride {
    pub likelihood_alpha: Option<f64>,
    pub likelihood_half_life_ms: Option<u64>,
    pub state_half_life_ms: Option<u64>,
    pub gain: Option<f64>,
    pub effort_beta: Option<f64>,
    pub effort_cap: Option<f64>,
    pub familiarity_kappa: Option<f64>,
    pub expr_threshold: Option<f64>,
    pub compounds_enabled: Option<bool>,
    pub reg_neg_threshold: Option<f64>,
    pub reg_anger_threshold: Option<f64>,
    pub reg_repeat_count: Option<u32>,
    pub reg_repeat_window_ms: Option<u64>,
}

impl ParamsOverride {
    /// Apply onto a base parameter set and re-validate.
    pub fn apply(&self, base: &EngineParams) -> Result<EngineParams, ParamsError> {
        let mut p = base.clone();
        macro_rules! set {
            ($field:ident) => {
                if let Some(v) = self.$field {
                    p.$field = v;
                }
            };
        }
        set!(likelihood_alpha);
        set!(likelihood_half_life_ms);
        set!(state_half_life_ms);
        set!(gain);
        set!(effort_beta);
        set!(effort_cap);
        set!(familiarity_kappa);
        set!(expr_threshold);
        set!(compounds_enabled);
        set!(reg_neg_threshold);
        set!(reg_anger_threshold);
        set!(reg_repeat_count);
        set!(reg_repeat_window_ms);
        p.validate()?;
        Ok(p)
    }
}
