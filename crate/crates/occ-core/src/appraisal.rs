//! Phases 1-2: categorize a stimulus into affected emotion categories, then
//! quantify their intensities with history-dependent moderation.

use crate::category::{EmotionCategory, Intensity};
use crate::history::History;
use crate::knowledge::{ActorRole, KnowledgeBase, UserModelLookup};
use crate::params::EngineParams;
use crate::signal::AppraisalSignal;
use crate::stimulus::{Stimulus, StimulusError};

/// The raw appraisal variables behind one category hit, kept so that
/// quantification stays a separate phase.
#[derive(Debug, Clone, PartialEq)]
pub enum RawVars {
    /// Net signed desirability for the character itself, before the effort
    /// boost and repetition damping.
    WellBeing { desirability: f64 },
    Fortunes {
        agent: String,
        desirability_other: f64,
        liking: f64,
    },
    Attribution { role: ActorRole, praiseworthiness: f64 },
    Attraction { concept: String, appealingness: f64 },
    /// Attribution and well-being fired on the same stimulus with matching
    /// signs; intensity derives from the constituents.
    Compound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CategoryFire {
    pub category: EmotionCategory,
    pub vars: RawVars,
}

/// Net signed desirability of an event for the character: goal-weighted
/// contributions scaled by realization, clamped to [-1, 1]. Goals outside
/// the KB's goal structure contribute nothing.
fn self_desirability(stimulus: &Stimulus, kb: &KnowledgeBase) -> f64 {
    let Some(event) = &stimulus.event else {
        return 0.0;
    };
    let mut d = 0.0;
    for impact in &event.goal_impacts_self {
        let weight = kb.goal_weight(&impact.goal).unwrap_or(0.0);
        d += weight * impact.contribution.value() * impact.realization;
    }
    d.clamp(-1.0, 1.0)
}

/// Phase 1: which categories does this stimulus affect, and with which raw
/// variables. Neutral knowledge fires nothing; a missing user model
/// silently skips the fortunes-of-others rules.
pub fn categorize(
    stimulus: &Stimulus,
    kb: &KnowledgeBase,
    _history: &History,
    params: &EngineParams,
) -> Result<Vec<CategoryFire>, StimulusError> {
    stimulus.validate()?;
    let mut fires = Vec::new();
    let mut well_being_positive = None;

    if let Some(event) = &stimulus.event {
        // Self impacts source joy/distress unless they are tied to a
        // prospect, in which case resolution emits the confirmation
        // emotion instead (handled by the step driver).
        if event.prospect_ref.is_none() {
            let d = self_desirability(stimulus, kb);
            if d != 0.0 {
                let category = if d > 0.0 {
                    EmotionCategory::Joy
                } else {
                    EmotionCategory::Distress
                };
                well_being_positive = Some(d > 0.0);
                fires.push(CategoryFire {
                    category,
                    vars: RawVars::WellBeing { desirability: d },
                });
            }
        }

        for other in &event.others {
            let d_o = match kb.desirability_for_other(&other.agent, &stimulus.type_key) {
                UserModelLookup::NoUserModel => continue,
                UserModelLookup::NoEntry => continue,
                UserModelLookup::Entry(d) => d.value(),
            };
            let liking = kb.relation_to(&other.agent);
            if d_o == 0.0 || liking == 0.0 {
                continue;
            }
            let category = match (d_o > 0.0, liking > 0.0) {
                (true, true) => EmotionCategory::HappyFor,
                (false, true) => EmotionCategory::Pity,
                (true, false) => EmotionCategory::Resentment,
                (false, false) => EmotionCategory::Gloating,
            };
            fires.push(CategoryFire {
                category,
                vars: RawVars::Fortunes {
                    agent: other.agent.clone(),
                    desirability_other: d_o,
                    liking,
                },
            });
        }
    }

    let mut attribution_sign_role = None;
    if let Some(action) = &stimulus.action {
        let role = if action.is_self() {
            ActorRole::SelfActor
        } else {
            ActorRole::Other
        };
        let p = kb.standard_of(&action.action, role).value();
        if p != 0.0 {
            let category = match (role, p > 0.0) {
                (ActorRole::SelfActor, true) => EmotionCategory::Pride,
                (ActorRole::SelfActor, false) => EmotionCategory::Shame,
                (ActorRole::Other, true) => EmotionCategory::Admiration,
                (ActorRole::Other, false) => EmotionCategory::Reproach,
            };
            attribution_sign_role = Some((role, p > 0.0));
            fires.push(CategoryFire {
                category,
                vars: RawVars::Attribution {
                    role,
                    praiseworthiness: p,
                },
            });
        }
    }

    if params.compounds_enabled {
        if let (Some(wb_positive), Some((role, p_positive))) =
            (well_being_positive, attribution_sign_role)
        {
            if wb_positive == p_positive {
                let category = match (role, p_positive) {
                    (ActorRole::SelfActor, true) => EmotionCategory::Gratification,
                    (ActorRole::SelfActor, false) => EmotionCategory::Remorse,
                    (ActorRole::Other, true) => EmotionCategory::Gratitude,
                    (ActorRole::Other, false) => EmotionCategory::Anger,
                };
                fires.push(CategoryFire {
                    category,
                    vars: RawVars::Compound,
                });
            }
        }
    }

    if let Some(object) = &stimulus.object {
        let a = kb.resolve_appealingness(&object.concept).value();
        if a != 0.0 {
            let category = if a > 0.0 {
                EmotionCategory::Love
            } else {
                EmotionCategory::Hate
            };
            fires.push(CategoryFire {
                category,
                vars: RawVars::Attraction {
                    concept: object.concept.clone(),
                    appealingness: a,
                },
            });
        }
    }

    Ok(fires)
}

/// Phase 2: turn category hits into intensities in [0, 1].
pub fn quantify(
    categorized: &[CategoryFire],
    stimulus: &Stimulus,
    kb: &KnowledgeBase,
    history: &History,
    now: u64,
    params: &EngineParams,
) -> Vec<AppraisalSignal> {
    let mut well_being_intensity = 0.0;
    let mut attribution_intensity = 0.0;

    // First pass: everything except compounds, which need both
    // constituents quantified.
    let mut signals: Vec<(usize, EmotionCategory, f64)> = Vec::new();
    for (i, fire) in categorized.iter().enumerate() {
        let intensity = match &fire.vars {
            RawVars::WellBeing { desirability } => {
                let effort: f64 = stimulus
                    .event
                    .as_ref()
                    .map(|ev| {
                        ev.goal_impacts_self
                            .iter()
                            .map(|impact| history.effort_of(&impact.goal))
                            .sum()
                    })
                    .unwrap_or(0.0);
                let boost = 1.0 + params.effort_beta * (effort / params.effort_cap).min(1.0);
                let d = (desirability * boost).clamp(-1.0, 1.0);
                let likelihood = history.likelihood_of(&stimulus.type_key, kb, now, params);
                let v = d.abs() * (1.0 - likelihood);
                well_being_intensity = v;
                v
            }
            RawVars::Fortunes {
                desirability_other,
                liking,
                ..
            } => desirability_other.abs() * liking.abs(),
            RawVars::Attribution {
                praiseworthiness, ..
            } => {
                let v = praiseworthiness.abs();
                attribution_intensity = v;
                v
            }
            RawVars::Attraction {
                concept,
                appealingness,
            } => {
                let familiarity = history.familiarity_of(concept);
                appealingness.abs() * (1.0 - params.familiarity_kappa * familiarity)
            }
            RawVars::Compound => continue,
        };
        signals.push((i, fire.category, intensity));
    }

    for (i, fire) in categorized.iter().enumerate() {
        if fire.vars == RawVars::Compound {
            let intensity = (attribution_intensity * well_being_intensity).sqrt();
            signals.push((i, fire.category, intensity));
        }
    }

    // Preserve categorize's emission order.
    signals.sort_by_key(|(i, _, _)| *i);
    signals
        .into_iter()
        .map(|(_, category, intensity)| AppraisalSignal {
            category,
            intensity: Intensity::saturating(intensity),
            source: stimulus.id.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knowledge::load_kb;
    use crate::stimulus::{ActionFacet, EventFacet, GoalImpact, ObjectFacet, OtherAgent};
    use crate::category::SignedAppraisal;

    const KB: &str = r#"{
        "version": 1,
        "concepts": [{"id": "food"}, {"id": "banana", "isa": "food"}],
        "attitudes": [{"concept": "banana", "appealingness": 0.8}],
        "goals": [
            {"id": "stay-alive", "weight": 1.0},
            {"id": "eat", "parent": "stay-alive", "weight": 0.8}
        ],
        "standards": [
            {"action": "give-food", "actor": "other", "praiseworthiness": 0.7},
            {"action": "hoard-food", "actor": "self", "praiseworthiness": -0.5}
        ],
        "relations": [{"agent": "user", "liking": 0.9}],
        "user_models": [{"agent": "user", "events": {"give-banana-bunch": -0.3}}],
        "defaults": {"likelihood": 0.1}
    }"#;

    fn kb() -> KnowledgeBase {
        load_kb(KB).unwrap()
    }

    fn eating_event(contribution: f64) -> Stimulus {
        Stimulus {
            id: "e1".into(),
            type_key: "give-banana".into(),
            event: Some(EventFacet {
                goal_impacts_self: vec![GoalImpact {
                    goal: "eat".into(),
                    contribution: SignedAppraisal::new(contribution).unwrap(),
                    realization: 1.0,
                }],
                others: vec![],
                prospect_ref: None,
            }),
            action: None,
            object: None,
        }
    }

    fn fired(fires: &[CategoryFire]) -> Vec<EmotionCategory> {
        fires.iter().map(|f| f.category).collect()
    }

    #[test]
    fn neutral_stimulus_fires_nothing() {
        let s = Stimulus {
            id: "n".into(),
            type_key: "mystery".into(),
            event: None,
            action: None,
            object: Some(ObjectFacet {
                concept: "rock".into(),
            }),
        };
        let fires = categorize(&s, &kb(), &History::new(), &EngineParams::default()).unwrap();
        assert!(fires.is_empty());
    }

    #[test]
    fn self_blameworthy_action_fires_shame() {
        let s = Stimulus {
            id: "a1".into(),
            type_key: "hoard".into(),
            event: None,
            action: Some(ActionFacet {
                actor: "self".into(),
                action: "hoard-food".into(),
            }),
            object: None,
        };
        let fires = categorize(&s, &kb(), &History::new(), &EngineParams::default()).unwrap();
        assert_eq!(fired(&fires), vec![EmotionCategory::Shame]);
    }

    #[test]
    fn golden_banana_categorization() {
        // Event harms the user but the self benefit rides on a prospect;
        // praiseworthy other action; liked object.
        let s = Stimulus {
            id: "gift".into(),
            type_key: "give-banana-bunch".into(),
            event: Some(EventFacet {
                goal_impacts_self: vec![GoalImpact {
                    goal: "eat".into(),
                    contribution: SignedAppraisal::new(0.8).unwrap(),
                    realization: 1.0,
                }],
                others: vec![OtherAgent {
                    agent: "user".into(),
                }],
                prospect_ref: Some("obtain-food".into()),
            }),
            action: Some(ActionFacet {
                actor: "user".into(),
                action: "give-food".into(),
            }),
            object: Some(ObjectFacet {
                concept: "banana".into(),
            }),
        };
        let fires = categorize(&s, &kb(), &History::new(), &EngineParams::default()).unwrap();
        assert_eq!(
            fired(&fires),
            vec![
                EmotionCategory::Pity,
                EmotionCategory::Admiration,
                EmotionCategory::Love
            ]
        );
    }

    #[test]
    fn well_being_quantification_with_damping() {
        // weight 0.8 * contribution 0.8 * realization 1.0 = 0.64,
        // no effort, likelihood floor 0.1 -> 0.64 * 0.9 = 0.576
        let params = EngineParams::default();
        let s = eating_event(0.8);
        let h = History::new();
        let fires = categorize(&s, &kb(), &h, &params).unwrap();
        assert_eq!(fired(&fires), vec![EmotionCategory::Joy]);
        let signals = quantify(&fires, &s, &kb(), &h, 0, &params);
        assert_eq!(signals.len(), 1);
        assert!((signals[0].intensity.value() - 0.576).abs() < 1e-12);
    }

    #[test]
    fn effort_boosts_desirability() {
        let params = EngineParams::default();
        let s = eating_event(0.8);
        let mut h = History::new();
        h.add_effort("eat", 5.0).unwrap();
        let fires = categorize(&s, &kb(), &h, &params).unwrap();
        let signals = quantify(&fires, &s, &kb(), &h, 0, &params);
        // boost = 1 + 0.25 * min(1, 5/10) = 1.125
        let expected = 0.64 * 1.125 * 0.9;
        assert!((signals[0].intensity.value() - expected).abs() < 1e-12);
    }

    #[test]
    fn repeated_stimuli_dampen() {
        let params = EngineParams::default();
        let k = kb();
        let mut h = History::new();
        let s = eating_event(0.8);
        let mut intensities = Vec::new();
        for i in 0..3u64 {
            let t = i * 1000;
            let fires = categorize(&s, &k, &h, &params).unwrap();
            let signals = quantify(&fires, &s, &k, &h, t, &params);
            intensities.push(signals[0].intensity.value());
            h.record_occurrence(&s, t, &params).unwrap();
        }
        assert!(intensities[0] > intensities[1]);
        assert!(intensities[1] > intensities[2]);
    }

    #[test]
    fn fortunes_intensity_is_product() {
        let params = EngineParams::default();
        let s = Stimulus {
            id: "e".into(),
            type_key: "give-banana-bunch".into(),
            event: Some(EventFacet {
                goal_impacts_self: vec![],
                others: vec![OtherAgent {
                    agent: "user".into(),
                }],
                prospect_ref: None,
            }),
            action: None,
            object: None,
        };
        let h = History::new();
        let fires = categorize(&s, &kb(), &h, &params).unwrap();
        assert_eq!(fired(&fires), vec![EmotionCategory::Pity]);
        let signals = quantify(&fires, &s, &kb(), &h, 0, &params);
        assert!((signals[0].intensity.value() - 0.27).abs() < 1e-12);
    }

    #[test]
    fn fortunes_skipped_without_user_model() {
        let k = load_kb(
            r#"{"version": 1, "relations": [{"agent": "user", "liking": 0.9}],
                 "defaults": {"likelihood": 0.1}}"#,
        )
        .unwrap();
        let s = Stimulus {
            id: "e".into(),
            type_key: "anything".into(),
            event: Some(EventFacet {
                goal_impacts_self: vec![],
                others: vec![OtherAgent {
                    agent: "user".into(),
                }],
                prospect_ref: None,
            }),
            action: None,
            object: None,
        };
        let fires = categorize(&s, &k, &History::new(), &EngineParams::default()).unwrap();
        assert!(fires.is_empty());
    }

    #[test]
    fn compounds_add_to_constituents_when_enabled() {
        let params = EngineParams {
            compounds_enabled: true,
            ..Default::default()
        };
        let mut s = eating_event(0.8);
        s.action = Some(ActionFacet {
            actor: "user".into(),
            action: "give-food".into(),
        });
        let h = History::new();
        let fires = categorize(&s, &kb(), &h, &params).unwrap();
        assert_eq!(
            fired(&fires),
            vec![
                EmotionCategory::Joy,
                EmotionCategory::Admiration,
                EmotionCategory::Gratitude
            ]
        );
        let signals = quantify(&fires, &s, &kb(), &h, 0, &params);
        let joy = signals[0].intensity.value();
        let admiration = signals[1].intensity.value();
        let gratitude = signals[2].intensity.value();
        assert!((gratitude - (joy * admiration).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn compounds_off_by_default() {
        let params = EngineParams::default();
        let mut s = eating_event(0.8);
        s.action = Some(ActionFacet {
            actor: "user".into(),
            action: "give-food".into(),
        });
        let fires = categorize(&s, &kb(), &History::new(), &params).unwrap();
        assert_eq!(
            fired(&fires),
            vec![EmotionCategory::Joy, EmotionCategory::Admiration]
        );
    }

    #[test]
    fn event_outside_goal_structure_is_silent() {
        let params = EngineParams::default();
        let s = Stimulus {
            id: "e".into(),
            type_key: "cosmic-ray".into(),
            event: Some(EventFacet {
                goal_impacts_self: vec![GoalImpact {
                    goal: "not-a-goal".into(),
                    contribution: SignedAppraisal::new(0.9).unwrap(),
                    realization: 1.0,
                }],
                others: vec![],
                prospect_ref: None,
            }),
            action: None,
            object: None,
        };
        let fires = categorize(&s, &kb(), &History::new(), &params).unwrap();
        assert!(fires.is_empty());
    }

    #[test]
    fn familiarity_dampens_attraction() {
        let params = EngineParams::default();
        let k = kb();
        let s = Stimulus {
            id: "o".into(),
            type_key: "see-banana".into(),
            event: None,
            action: None,
            object: Some(ObjectFacet {
                concept: "banana".into(),
            }),
        };
        let mut h = History::new();
        let fires = categorize(&s, &k, &h, &params).unwrap();
        let fresh = quantify(&fires, &s, &k, &h, 0, &params)[0].intensity.value();
        assert!((fresh - 0.8).abs() < 1e-12);
        h.record_occurrence(&s, 0, &params).unwrap();
        let seen_once = quantify(&fires, &s, &k, &h, 1, &params)[0].intensity.value();
        // familiarity 0.5, kappa 0.5 -> 0.8 * (1 - 0.25)
        assert!((seen_once - 0.6).abs() < 1e-12);
        assert!(seen_once < fresh);
    }
}
