//! Shared test support: a straight-line oracle that recomputes every
//! formula from the raw KB document and the full occurrence log (no
//! incremental caching), plus a random scenario generator.

#![allow(dead_code)]

use occ_core::harness::{Scenario, StepKind};
use occ_core::EngineParams;
use rand::Rng;
use serde_json::{json, Value};

// Canonical category indices.
pub const JOY: usize = 0;
pub const DISTRESS: usize = 1;
pub const HAPPY_FOR: usize = 2;
pub const PITY: usize = 3;
pub const GLOATING: usize = 4;
pub const RESENTMENT: usize = 5;
pub const HOPE: usize = 6;
pub const FEAR: usize = 7;
pub const SATISFACTION: usize = 8;
pub const FEARS_CONFIRMED: usize = 9;
pub const RELIEF: usize = 10;
pub const DISAPPOINTMENT: usize = 11;
pub const PRIDE: usize = 12;
pub const SHAME: usize = 13;
pub const ADMIRATION: usize = 14;
pub const REPROACH: usize = 15;
pub const GRATIFICATION: usize = 16;
pub const REMORSE: usize = 17;
pub const GRATITUDE: usize = 18;
pub const ANGER: usize = 19;
pub const LOVE: usize = 20;
pub const HATE: usize = 21;

/// KB lookups straight off the JSON document.
pub struct OracleKb {
    doc: Value,
}

impl OracleKb {
    pub fn new(document: &str) -> OracleKb {
        OracleKb {
            doc: serde_json::from_str(document).expect("kb json"),
        }
    }

    fn array(&self, key: &str) -> &[Value] {
        self.doc
            .get(key)
            .and_then(|v| v.as_array())
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn default_likelihood(&self) -> f64 {
        self.doc["defaults"]["likelihood"].as_f64().unwrap()
    }

    pub fn goal_weight(&self, goal: &str) -> Option<f64> {
        let find = |id: &str| {
            self.array("goals")
                .iter()
                .find(|g| g["id"] == id)
        };
        let mut node = find(goal)?;
        let mut w = node["weight"].as_f64().unwrap();
        while let Some(parent) = node["parent"].as_str() {
            node = find(parent).unwrap();
            w *= node["weight"].as_f64().unwrap();
        }
        Some(w)
    }

    pub fn appealingness(&self, concept: &str) -> f64 {
        let mut cursor = Some(concept.to_string());
        while let Some(c) = cursor {
            if let Some(a) = self
                .array("attitudes")
                .iter()
                .find(|a| a["concept"] == c.as_str())
            {
                return a["appealingness"].as_f64().unwrap();
            }
            cursor = self
                .array("concepts")
                .iter()
                .find(|n| n["id"] == c.as_str())
                .and_then(|n| n["isa"].as_str())
                .map(|s| s.to_string());
        }
        0.0
    }

    pub fn standard(&self, action: &str, actor_self: bool) -> f64 {
        let role = if actor_self { "self" } else { "other" };
        self.array("standards")
            .iter()
            .find(|s| s["action"] == action && s["actor"] == role)
            .map(|s| s["praiseworthiness"].as_f64().unwrap())
            .unwrap_or(0.0)
    }

    pub fn liking(&self, agent: &str) -> f64 {
        self.array("relations")
            .iter()
            .find(|r| r["agent"] == agent)
            .map(|r| r["liking"].as_f64().unwrap())
            .unwrap_or(0.0)
    }

    /// None = no user model table at all; Some(None) = no entry.
    pub fn desirability_for_other(&self, agent: &str, event_type: &str) -> Option<Option<f64>> {
        let models = self.doc.get("user_models")?.as_array()?;
        Some(
            models
                .iter()
                .find(|m| m["agent"] == agent)
                .and_then(|m| m["events"].get(event_type))
                .and_then(|v| v.as_f64()),
        )
    }
}

struct OracleProspect {
    desirability: f64,
    likelihood: f64,
    open: bool,
}

/// Replay a scenario with no incremental state beyond the raw logs.
/// Excitation is re-summed over the full occurrence log at every lookup.
pub fn oracle_run(
    kb_doc: &str,
    scenario: &Scenario,
    params: &EngineParams,
) -> Vec<(u64, [f64; 22])> {
    let kb = OracleKb::new(kb_doc);
    let mut values = [0.0f64; 22];
    let mut cur_t = 0u64;
    let mut log: Vec<(String, u64)> = Vec::new();
    let mut familiarity: Vec<String> = Vec::new();
    let mut effort: Vec<(String, f64)> = Vec::new();
    let mut prospects: std::collections::HashMap<String, OracleProspect> =
        std::collections::HashMap::new();

    let mut out = vec![(0u64, values)];

    let excitation = |log: &[(String, u64)], type_key: &str, now: u64| -> f64 {
        log.iter()
            .filter(|(k, _)| k == type_key)
            .map(|(_, t)| {
                params.likelihood_alpha
                    * 0.5f64.powf((now - t) as f64 / params.likelihood_half_life_ms as f64)
            })
            .sum()
    };

    let apply = |values: &mut [f64; 22], mut signals: Vec<(usize, f64)>| {
        signals.sort_by_key(|(idx, _)| *idx);
        for (idx, intensity) in signals {
            let i = intensity.clamp(0.0, 1.0);
            values[idx] += params.gain * i * (1.0 - values[idx]);
            values[idx] = values[idx].clamp(0.0, 1.0);
        }
    };

    let mut cursor = 0usize;
    while cursor < scenario.steps.len() {
        let t = scenario.steps[cursor].t_ms;
        let factor = 0.5f64.powf((t - cur_t) as f64 / params.state_half_life_ms as f64);
        for v in &mut values {
            *v *= factor;
        }
        cur_t = t;

        while cursor < scenario.steps.len() && scenario.steps[cursor].t_ms == t {
            match &scenario.steps[cursor].kind {
                StepKind::Prospect(p) => {
                    let d = p.desirability.value();
                    prospects.insert(
                        p.id.clone(),
                        OracleProspect {
                            desirability: d,
                            likelihood: p.likelihood,
                            open: true,
                        },
                    );
                    if d > 0.0 {
                        apply(&mut values, vec![(HOPE, p.likelihood * d.abs())]);
                    } else if d < 0.0 {
                        apply(&mut values, vec![(FEAR, p.likelihood * d.abs())]);
                    }
                }
                StepKind::Resolve(r) => {
                    let p = prospects.get_mut(&r.prospect_id).unwrap();
                    p.open = false;
                    let d = p.desirability;
                    let confirmed = r.outcome == occ_core::ProspectOutcome::Confirmed;
                    if d != 0.0 {
                        let (idx, i) = match (confirmed, d > 0.0) {
                            (true, true) => (SATISFACTION, d.abs() * p.likelihood),
                            (true, false) => (FEARS_CONFIRMED, d.abs() * p.likelihood),
                            (false, true) => (DISAPPOINTMENT, d.abs() * (1.0 - p.likelihood)),
                            (false, false) => (RELIEF, d.abs() * (1.0 - p.likelihood)),
                        };
                        apply(&mut values, vec![(idx, i)]);
                    }
                }
                StepKind::Effort(e) => {
                    effort.push((e.goal.clone(), e.units));
                }
                StepKind::Stimulus(s) => {
                    let mut signals: Vec<(usize, f64)> = Vec::new();
                    let mut wb: Option<(bool, f64)> = None; // (positive, intensity)
                    let mut attrib: Option<(bool, bool, f64)> = None; // (self, positive, intensity)

                    if let Some(ev) = &s.event {
                        if let Some(pref) = &ev.prospect_ref {
                            let p = prospects.get_mut(pref).unwrap();
                            p.open = false;
                            let d = p.desirability;
                            if d > 0.0 {
                                signals.push((SATISFACTION, d.abs() * p.likelihood));
                            } else if d < 0.0 {
                                signals.push((FEARS_CONFIRMED, d.abs() * p.likelihood));
                            }
                        } else {
                            let mut d: f64 = ev
                                .goal_impacts_self
                                .iter()
                                .map(|gi| {
                                    kb.goal_weight(&gi.goal).unwrap_or(0.0)
                                        * gi.contribution.value()
                                        * gi.realization
                                })
                                .sum::<f64>()
                                .clamp(-1.0, 1.0);
                            if d != 0.0 {
                                let total_effort: f64 = ev
                                    .goal_impacts_self
                                    .iter()
                                    .map(|gi| {
                                        effort
                                            .iter()
                                            .filter(|(g, _)| g == &gi.goal)
                                            .map(|(_, u)| u)
                                            .sum::<f64>()
                                    })
                                    .sum();
                                let boost = 1.0
                                    + params.effort_beta
                                        * (total_effort / params.effort_cap).min(1.0);
                                d = (d * boost).clamp(-1.0, 1.0);
                                let dflt = kb.default_likelihood();
                                let e = excitation(&log, &s.type_key, t);
                                let likelihood = dflt + (1.0 - dflt) * (1.0 - (-e).exp());
                                let intensity = d.abs() * (1.0 - likelihood);
                                let idx = if d > 0.0 { JOY } else { DISTRESS };
                                signals.push((idx, intensity));
                                wb = Some((d > 0.0, intensity));
                            }
                        }
                        for other in &ev.others {
                            let d_o = match kb.desirability_for_other(&other.agent, &s.type_key)
                            {
                                None => continue,
                                Some(None) => continue,
                                Some(Some(d)) => d,
                            };
                            let liking = kb.liking(&other.agent);
                            if d_o == 0.0 || liking == 0.0 {
                                continue;
                            }
                            let idx = match (d_o > 0.0, liking > 0.0) {
                                (true, true) => HAPPY_FOR,
                                (false, true) => PITY,
                                (true, false) => RESENTMENT,
                                (false, false) => GLOATING,
                            };
                            signals.push((idx, d_o.abs() * liking.abs()));
                        }
                    }

                    if let Some(action) = &s.action {
                        let actor_self = action.actor == "self";
                        let p = kb.standard(&action.action, actor_self);
                        if p != 0.0 {
                            let idx = match (actor_self, p > 0.0) {
                                (true, true) => PRIDE,
                                (true, false) => SHAME,
                                (false, true) => ADMIRATION,
                                (false, false) => REPROACH,
                            };
                            signals.push((idx, p.abs()));
                            attrib = Some((actor_self, p > 0.0, p.abs()));
                        }
                    }

                    if params.compounds_enabled {
                        if let (Some((wb_pos, wb_i)), Some((a_self, a_pos, a_i))) = (wb, attrib)
                        {
                            if wb_pos == a_pos {
                                let idx = match (a_self, a_pos) {
                                    (true, true) => GRATIFICATION,
                                    (true, false) => REMORSE,
                                    (false, true) => GRATITUDE,
                                    (false, false) => ANGER,
                                };
                                signals.push((idx, (wb_i * a_i).sqrt()));
                            }
                        }
                    }

                    if let Some(object) = &s.object {
                        let a = kb.appealingness(&object.concept);
                        if a != 0.0 {
                            let n = familiarity
                                .iter()
                                .filter(|c| *c == &object.concept)
                                .count() as f64;
                            let f = 1.0 - 1.0 / (1.0 + n);
                            let idx = if a > 0.0 { LOVE } else { HATE };
                            signals.push((idx, a.abs() * (1.0 - params.familiarity_kappa * f)));
                        }
                    }

                    apply(&mut values, signals);
                    log.push((s.type_key.clone(), t));
                    if let Some(object) = &s.object {
                        familiarity.push(object.concept.clone());
                    }
                }
            }
            cursor += 1;
        }
        out.push((t, values));
    }
    out
}

pub const GOALS: [&str; 3] = ["eat", "stay-alive", "not-a-goal"];
pub const CONCEPTS: [&str; 3] = ["banana", "coconut", "rock"];
pub const AGENTS: [&str; 3] = ["user", "rival", "stranger"];
pub const ACTIONS: [&str; 4] = ["give-food", "steal-food", "hoard-food", "wave"];
pub const TYPE_KEYS: [&str; 4] = ["give-banana-bunch", "tk-a", "tk-b", "tk-c"];

/// Generate a random but always-valid scenario document.
pub fn gen_scenario<R: Rng>(rng: &mut R, max_steps: usize) -> String {
    let mut steps = Vec::new();
    let mut t: u64 = 0;
    let mut open_prospects: Vec<String> = Vec::new();
    let mut next_prospect = 0usize;
    let n = rng.gen_range(0..=max_steps);

    for i in 0..n {
        t += rng.gen_range(0..3000);
        let roll = rng.gen_range(0..10);
        let step = if roll < 5 {
            let mut payload = json!({
                "id": format!("s{i}"),
                "type_key": TYPE_KEYS[rng.gen_range(0..TYPE_KEYS.len())],
            });
            let mut any_facet = false;
            if rng.gen_bool(0.7) {
                let mut event = json!({});
                if rng.gen_bool(0.7) {
                    let impacts: Vec<Value> = (0..rng.gen_range(1..3))
                        .map(|_| {
                            json!({
                                "goal": GOALS[rng.gen_range(0..GOALS.len())],
                                "contribution": rng.gen_range(-1.0..=1.0),
                                "realization": rng.gen_range(0.0..=1.0),
                            })
                        })
                        .collect();
                    event["goal_impacts_self"] = json!(impacts);
                }
                if rng.gen_bool(0.5) {
                    let others: Vec<Value> = (0..rng.gen_range(1..3))
                        .map(|_| json!({"agent": AGENTS[rng.gen_range(0..AGENTS.len())]}))
                        .collect();
                    event["others"] = json!(others);
                }
                if !open_prospects.is_empty() && rng.gen_bool(0.3) {
                    let idx = rng.gen_range(0..open_prospects.len());
                    event["prospect_ref"] = json!(open_prospects.swap_remove(idx));
                }
                payload["event"] = event;
                any_facet = true;
            }
            if rng.gen_bool(0.5) {
                let actor = if rng.gen_bool(0.3) {
                    "self".to_string()
                } else {
                    AGENTS[rng.gen_range(0..AGENTS.len())].to_string()
                };
                payload["action"] = json!({
                    "actor": actor,
                    "action": ACTIONS[rng.gen_range(0..ACTIONS.len())],
                });
                any_facet = true;
            }
            if rng.gen_bool(0.5) || !any_facet {
                payload["object"] =
                    json!({"concept": CONCEPTS[rng.gen_range(0..CONCEPTS.len())]});
            }
            json!({"t_ms": t, "kind": "stimulus", "payload": payload})
        } else if roll < 7 {
            let id = format!("p{next_prospect}");
            next_prospect += 1;
            open_prospects.push(id.clone());
            json!({"t_ms": t, "kind": "prospect", "payload": {
                "id": id,
                "type_key": TYPE_KEYS[rng.gen_range(0..TYPE_KEYS.len())],
                "desirability": rng.gen_range(-1.0..=1.0),
                "likelihood": rng.gen_range(0.0..=1.0),
            }})
        } else if roll < 8 && !open_prospects.is_empty() {
            let idx = rng.gen_range(0..open_prospects.len());
            let id = open_prospects.swap_remove(idx);
            let outcome = if rng.gen_bool(0.5) {
                "confirmed"
            } else {
                "disconfirmed"
            };
            json!({"t_ms": t, "kind": "resolve", "payload": {
                "prospect_id": id, "outcome": outcome,
            }})
        } else {
            json!({"t_ms": t, "kind": "effort", "payload": {
                "goal": GOALS[rng.gen_range(0..GOALS.len())],
                "units": rng.gen_range(0.1..5.0),
            }})
        };
        steps.push(step);
    }

    json!({"version": 1, "steps": steps}).to_string()
}

pub fn fixture_kb_doc() -> String {
    include_str!("../fixtures/kb_banana.json").to_string()
}

pub fn fixture_scenario_doc() -> String {
    include_str!("../fixtures/scenario_banana.json").to_string()
}
