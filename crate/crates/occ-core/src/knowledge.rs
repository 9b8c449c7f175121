//! The character's world model: concept taxonomy, goal hierarchy, attitudes,
//! standards, relations and per-agent user models. Loaded once from a JSON
//! document and immutable thereafter.

use crate::category::SignedAppraisal;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KbError {
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("unsupported version {0} (expected 1)")]
    Version(u32),
    #[error("duplicate concept id '{0}'")]
    DuplicateConcept(String),
    #[error("taxonomy cycle involving '{0}'")]
    TaxonomyCycle(String),
    #[error("concept '{child}' declares unknown parent '{parent}'")]
    DanglingIsa { child: String, parent: String },
    #[error("attitude references unknown concept '{0}'")]
    DanglingAttitude(String),
    #[error("duplicate goal id '{0}'")]
    DuplicateGoal(String),
    #[error("goal '{child}' declares unknown parent '{parent}'")]
    DanglingGoalParent { child: String, parent: String },
    #[error("goal cycle involving '{0}'")]
    GoalCycle(String),
    #[error("goal '{goal}' weight {weight} out of range (0, 1]")]
    WeightOutOfRange { goal: String, weight: f64 },
    #[error("duplicate standard for action '{action}' actor '{actor}'")]
    DuplicateStandard { action: String, actor: String },
    #[error("duplicate relation for agent '{0}'")]
    DuplicateRelation(String),
    #[error("duplicate user model for agent '{0}'")]
    DuplicateUserModel(String),
    #[error("default likelihood {0} out of range [0, 1)")]
    DefaultLikelihoodOutOfRange(f64),
    #[error("unknown goal id '{0}'")]
    UnknownGoal(String),
}

/// Whether an appraised action was performed by the character itself or by
/// another agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ActorRole {
    #[serde(rename = "self")]
    SelfActor,
    #[serde(rename = "other")]
    Other,
}

impl ActorRole {
    fn key(self) -> &'static str {
        match self {
            ActorRole::SelfActor => "self",
            ActorRole::Other => "other",
        }
    }
}

/// Outcome of a user-model lookup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UserModelLookup {
    /// Entry found; appraise fortunes-of-others with this desirability.
    Entry(SignedAppraisal),
    /// Model exists but has nothing for this agent/event: appraise as 0.
    NoEntry,
    /// No user model at all: skip all fortunes-of-others appraisal.
    NoUserModel,
}

// ---------------------------------------------------------------------------
// Serialized document shape (strict: unknown keys rejected).
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConceptDoc {
    id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    isa: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AttitudeDoc {
    concept: String,
    appealingness: SignedAppraisal,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GoalDoc {
    id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    parent: Option<String>,
    weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StandardDoc {
    action: String,
    actor: ActorRole,
    praiseworthiness: SignedAppraisal,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationDoc {
    agent: String,
    liking: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UserModelDoc {
    agent: String,
    events: BTreeMap<String, SignedAppraisal>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DefaultsDoc {
    likelihood: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KbDoc {
    version: u32,
    #[serde(default)]
    concepts: Vec<ConceptDoc>,
    #[serde(default)]
    attitudes: Vec<AttitudeDoc>,
    #[serde(default)]
    goals: Vec<GoalDoc>,
    #[serde(default)]
    standards: Vec<StandardDoc>,
    #[serde(default)]
    relations: Vec<RelationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    user_models: Option<Vec<UserModelDoc>>,
    defaults: DefaultsDoc,
}

// ---------------------------------------------------------------------------
// Validated in-memory model.
// ---------------------------------------------------------------------------

/// Single-inheritance concept forest used for attitude inheritance.
#[derive(Debug, Clone)]
pub struct ConceptTaxonomy {
    parents: HashMap<String, Option<String>>,
}

impl ConceptTaxonomy {
    pub fn contains(&self, concept: &str) -> bool {
        self.parents.contains_key(concept)
    }

    pub fn parent_of(&self, concept: &str) -> Option<&str> {
        self.parents.get(concept).and_then(|p| p.as_deref())
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }
}

#[derive(Debug, Clone)]
struct GoalNode {
    parent: Option<String>,
    weight: f64,
}

/// Goal forest with per-node weights in (0, 1]. The effective weight of a
/// goal is the product along the path from its root, so descendants never
/// outweigh their ancestors.
#[derive(Debug, Clone)]
pub struct GoalTree {
    nodes: HashMap<String, GoalNode>,
}

impl GoalTree {
    pub fn contains(&self, goal: &str) -> bool {
        self.nodes.contains_key(goal)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// The full knowledge base. Immutable after load; cheap to share by
/// reference across runs.
#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    doc: KbDoc,
    taxonomy: ConceptTaxonomy,
    goals: GoalTree,
    attitudes: HashMap<String, SignedAppraisal>,
    standards: HashMap<(String, ActorRole), SignedAppraisal>,
    relations: HashMap<String, f64>,
    user_models: Option<HashMap<String, BTreeMap<String, SignedAppraisal>>>,
    default_likelihood: f64,
}

/// Parse and validate a KB document.
pub fn load_kb(document: &str) -> Result<KnowledgeBase, KbError> {
    let doc: KbDoc =
        serde_json::from_str(document).map_err(|e| KbError::Schema(e.to_string()))?;
    KnowledgeBase::from_doc(doc)
}

impl KnowledgeBase {
    fn from_doc(doc: KbDoc) -> Result<KnowledgeBase, KbError> {
        if doc.version != 1 {
            return Err(KbError::Version(doc.version));
        }

        // Taxonomy: unique ids, declared parents, forest (no cycles).
        let mut parents: HashMap<String, Option<String>> = HashMap::new();
        for c in &doc.concepts {
            if parents.insert(c.id.clone(), c.isa.clone()).is_some() {
                return Err(KbError::DuplicateConcept(c.id.clone()));
            }
        }
        for c in &doc.concepts {
            if let Some(p) = &c.isa {
                if !parents.contains_key(p) {
                    return Err(KbError::DanglingIsa {
                        child: c.id.clone(),
                        parent: p.clone(),
                    });
                }
            }
        }
        detect_cycles(&parents).map_err(KbError::TaxonomyCycle)?;

        // Goals: unique ids, declared parents, weights in (0,1], forest.
        let mut goal_nodes: HashMap<String, GoalNode> = HashMap::new();
        for g in &doc.goals {
            if !(g.weight.is_finite() && g.weight > 0.0 && g.weight <= 1.0) {
                return Err(KbError::WeightOutOfRange {
                    goal: g.id.clone(),
                    weight: g.weight,
                });
            }
            let node = GoalNode {
                parent: g.parent.clone(),
                weight: g.weight,
            };
            if goal_nodes.insert(g.id.clone(), node).is_some() {
                return Err(KbError::DuplicateGoal(g.id.clone()));
            }
        }
        for g in &doc.goals {
            if let Some(p) = &g.parent {
                if !goal_nodes.contains_key(p) {
                    return Err(KbError::DanglingGoalParent {
                        child: g.id.clone(),
                        parent: p.clone(),
                    });
                }
            }
        }
        let goal_parents: HashMap<String, Option<String>> = goal_nodes
            .iter()
            .map(|(id, n)| (id.clone(), n.parent.clone()))
            .collect();
        detect_cycles(&goal_parents).map_err(KbError::GoalCycle)?;

        // Attitudes must reference declared concepts.
        let mut attitudes = HashMap::new();
        for a in &doc.attitudes {
            if !parents.contains_key(&a.concept) {
                return Err(KbError::DanglingAttitude(a.concept.clone()));
            }
            attitudes.insert(a.concept.clone(), a.appealingness);
        }

        let mut standards = HashMap::new();
        for s in &doc.standards {
            let key = (s.action.clone(), s.actor);
            if standards.insert(key, s.praiseworthiness).is_some() {
                return Err(KbError::DuplicateStandard {
                    action: s.action.clone(),
                    actor: s.actor.key().to_string(),
                });
            }
        }

        let mut relations = HashMap::new();
        for r in &doc.relations {
            if !(r.liking.is_finite() && (-1.0..=1.0).contains(&r.liking)) {
                return Err(KbError::Schema(format!(
                    "relation liking {} for agent '{}' out of range [-1, 1]",
                    r.liking, r.agent
                )));
            }
            if relations.insert(r.agent.clone(), r.liking).is_some() {
                return Err(KbError::DuplicateRelation(r.agent.clone()));
            }
        }

        let user_models = match &doc.user_models {
            None => None,
            Some(models) => {
                let mut map = HashMap::new();
                for m in models {
                    if map.insert(m.agent.clone(), m.events.clone()).is_some() {
                        return Err(KbError::DuplicateUserModel(m.agent.clone()));
                    }
                }
                Some(map)
            }
        };

        let d = doc.defaults.likelihood;
        if !(d.is_finite() && (0.0..1.0).contains(&d)) {
            return Err(KbError::DefaultLikelihoodOutOfRange(d));
        }

        Ok(KnowledgeBase {
            taxonomy: ConceptTaxonomy { parents },
            goals: GoalTree { nodes: goal_nodes },
            attitudes,
            standards,
            relations,
            user_models,
            default_likelihood: d,
            doc,
        })
    }

    pub fn taxonomy(&self) -> &ConceptTaxonomy {
        &self.taxonomy
    }

    pub fn goals(&self) -> &GoalTree {
        &self.goals
    }

    pub fn default_likelihood(&self) -> f64 {
        self.default_likelihood
    }

    pub fn has_user_models(&self) -> bool {
        self.user_models.is_some()
    }

    /// Re-serialize to the document format. Loading the result yields an
    /// equivalent KB.
    pub fn to_document(&self) -> String {
        serde_json::to_string_pretty(&self.doc).expect("kb doc serializes")
    }

    /// The concept's own appealingness if present, else the nearest
    /// ancestor's along the isa chain, else neutral.
    pub fn resolve_appealingness(&self, concept: &str) -> SignedAppraisal {
        let mut cursor = Some(concept);
        while let Some(c) = cursor {
            if let Some(a) = self.attitudes.get(c) {
                return *a;
            }
            cursor = self.taxonomy.parent_of(c);
        }
        SignedAppraisal::NEUTRAL
    }

    /// Product of weights along the path from the goal's root down to the
    /// goal itself.
    pub fn goal_weight(&self, goal: &str) -> Result<f64, KbError> {
        let mut node = self
            .goals
            .nodes
            .get(goal)
            .ok_or_else(|| KbError::UnknownGoal(goal.to_string()))?;
        let mut w = node.weight;
        while let Some(parent) = &node.parent {
            node = &self.goals.nodes[parent];
            w *= node.weight;
        }
        Ok(w)
    }

    /// Liking toward an agent; unknown agents are neutral.
    pub fn relation_to(&self, agent: &str) -> f64 {
        self.relations.get(agent).copied().unwrap_or(0.0)
    }

    /// Praiseworthiness of an action for a given actor role; unknown
    /// actions are neutral, so no attribution emotion fires.
    pub fn standard_of(&self, action: &str, role: ActorRole) -> SignedAppraisal {
        self.standards
            .get(&(action.to_string(), role))
            .copied()
            .unwrap_or(SignedAppraisal::NEUTRAL)
    }

    /// What an event type means to another agent, per the user model.
    pub fn desirability_for_other(&self, agent: &str, event_type: &str) -> UserModelLookup {
        match &self.user_models {
            None => UserModelLookup::NoUserModel,
            Some(models) => match models.get(agent).and_then(|m| m.get(event_type)) {
                Some(d) => UserModelLookup::Entry(*d),
                None => UserModelLookup::NoEntry,
            },
        }
    }
}

/// Walk every node to a root, failing on any cycle. Single-parent maps only.
fn detect_cycles(parents: &HashMap<String, Option<String>>) -> Result<(), String> {
    let mut cleared: HashSet<&str> = HashSet::new();
    for start in parents.keys() {
        let mut seen: HashSet<&str> = HashSet::new();
        let mut cursor: &str = start;
        loop {
            if cleared.contains(cursor) {
                break;
            }
            if !seen.insert(cursor) {
                return Err(cursor.to_string());
            }
            match parents.get(cursor).and_then(|p| p.as_deref()) {
                Some(p) => cursor = p,
                None => break,
            }
        }
        cleared.extend(seen);
    }
    Ok(())
}
