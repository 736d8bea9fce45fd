//! Certificate tree emitted by the pipeline stages.  Serialization is
//! deterministic (sorted JSON maps, no timestamps), so two runs produce
//! byte-identical output; run metadata lives outside the tree.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Failed,
    FixtureTrusted,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub name: String,
    /// what the leaf checks, phrased as data (table row, identity, bound)
    pub anchor: String,
    pub status: Status,
    pub payload: Value,
    pub children: Vec<Certificate>,
}

impl Certificate {
    pub fn leaf(name: &str, anchor: &str, status: Status, payload: Value) -> Self {
        Certificate {
            name: name.into(),
            anchor: anchor.into(),
            status,
            payload,
            children: Vec::new(),
        }
    }

    pub fn verified(name: &str, anchor: &str, payload: Value) -> Self {
        Certificate::leaf(name, anchor, Status::Verified, payload)
    }

    pub fn failed(name: &str, anchor: &str, payload: Value) -> Self {
        Certificate::leaf(name, anchor, Status::Failed, payload)
    }

    /// Parent node; verified only if every child is verified or trusted.
    pub fn node(name: &str, anchor: &str, children: Vec<Certificate>) -> Self {
        let status = if children
            .iter()
            .all(|c| matches!(c.status, Status::Verified | Status::FixtureTrusted))
        {
            Status::Verified
        } else {
            Status::Failed
        };
        Certificate {
            name: name.into(),
            anchor: anchor.into(),
            status,
            payload: Value::Null,
            children,
        }
    }

    pub fn is_verified(&self) -> bool {
        matches!(self.status, Status::Verified | Status::FixtureTrusted)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization")
    }

    /// Flat pass/fail lines for terminal output.
    pub fn render_lines(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let mark = match self.status {
            Status::Verified => "ok",
            Status::FixtureTrusted => "trusted",
            Status::Failed => "FAILED",
        };
        out.push_str(&format!("{pad}{:<9} {} — {}\n", mark, self.name, self.anchor));
        for c in &self.children {
            c.render_lines(depth + 1, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_propagates() {
        let good = Certificate::verified("a", "x", Value::Null);
        let bad = Certificate::failed("b", "y", Value::Null);
        let n1 = Certificate::node("n", "z", vec![good.clone()]);
        assert!(n1.is_verified());
        let n2 = Certificate::node("n", "z", vec![good, bad]);
        assert!(!n2.is_verified());
    }

    #[test]
    fn serialization_is_deterministic() {
        let c = Certificate::verified(
            "leaf",
            "anchor",
            serde_json::json!({"b": 1, "a": [1, 2], "c": {"y": 0, "x": 1}}),
        );
        let s1 = c.to_json();
        let s2 = c.to_json();
        assert_eq!(s1, s2);
        // keys are emitted sorted
        let pos_a = s1.find("\"a\"").unwrap();
        let pos_b = s1.find("\"b\"").unwrap();
        assert!(pos_a < pos_b);
    }
}
