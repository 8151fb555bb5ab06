use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GolodStatus {
    ProvenGolod,
    Refuted,
    Inconclusive,
}

impl GolodStatus {
    /// Process exit code: 0 proven, 1 refuted, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self {
            GolodStatus::ProvenGolod => 0,
            GolodStatus::Refuted => 1,
            GolodStatus::Inconclusive => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GolodStatus::ProvenGolod => "PROVEN_GOLOD",
            GolodStatus::Refuted => "REFUTED",
            GolodStatus::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Outcome of one criterion or of the whole orchestrator.
///
/// `certificate` names the criterion that decided; a refutation also
/// carries a checkable `witness`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GolodVerdict {
    pub status: GolodStatus,
    pub certificate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub details: Value,
}

impl GolodVerdict {
    pub fn proven(certificate: &str, details: Value) -> GolodVerdict {
        GolodVerdict {
            status: GolodStatus::ProvenGolod,
            certificate: Some(certificate.to_string()),
            witness: None,
            details,
        }
    }

    pub fn refuted(certificate: &str, witness: Value, details: Value) -> GolodVerdict {
        GolodVerdict {
            status: GolodStatus::Refuted,
            certificate: Some(certificate.to_string()),
            witness: Some(witness),
            details,
        }
    }

    pub fn inconclusive(details: Value) -> GolodVerdict {
        GolodVerdict {
            status: GolodStatus::Inconclusive,
            certificate: None,
            witness: None,
            details,
        }
    }

    /// Inconclusive with a single `reason` entry.
    pub fn because(reason: impl Into<String>) -> GolodVerdict {
        GolodVerdict::inconclusive(json!({ "reason": reason.into() }))
    }

    pub fn is_proven(&self) -> bool {
        self.status == GolodStatus::ProvenGolod
    }

    pub fn is_refuted(&self) -> bool {
        self.status == GolodStatus::Refuted
    }

    pub fn is_inconclusive(&self) -> bool {
        self.status == GolodStatus::Inconclusive
    }

    /// Adds a key to `details`, turning it into an object if needed.
    pub fn with_detail(mut self, key: &str, value: Value) -> GolodVerdict {
        if !self.details.is_object() {
            let old = std::mem::take(&mut self.details);
            let mut map = Map::new();
            if !old.is_null() {
                map.insert("value".into(), old);
            }
            self.details = Value::Object(map);
        }
        self.details.as_object_mut().expect("object").insert(key.to_string(), value);
        self
    }
}
