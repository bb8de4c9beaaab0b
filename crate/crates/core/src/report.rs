//! Verification report trees, printed as indented text or JSON.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportNode {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<ReportNode>,
    pub timing_ms: f64,
}

impl ReportNode {
    pub fn leaf(name: impl Into<String>, ok: bool, witness: Option<String>) -> ReportNode {
        ReportNode {
            name: name.into(),
            status: Status::from_bool(ok),
            witness,
            children: Vec::new(),
            timing_ms: 0.0,
        }
    }

    pub fn pass(name: impl Into<String>) -> ReportNode {
        ReportNode::leaf(name, true, None)
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> ReportNode {
        ReportNode::leaf(name, false, Some(witness.into()))
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> ReportNode {
        ReportNode {
            name: name.into(),
            status: Status::Skipped,
            witness: Some(reason.into()),
            children: Vec::new(),
            timing_ms: 0.0,
        }
    }

    /// A parent node: FAIL if any child fails, SKIPPED if all children are.
    pub fn group(name: impl Into<String>, children: Vec<ReportNode>) -> ReportNode {
        let status = if children.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if !children.is_empty() && children.iter().all(|c| c.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        };
        let timing_ms = children.iter().map(|c| c.timing_ms).sum();
        ReportNode {
            name: name.into(),
            status,
            witness: None,
            children,
            timing_ms,
        }
    }

    /// Runs `f` and records its wall time on the returned node.
    pub fn timed(f: impl FnOnce() -> ReportNode) -> ReportNode {
        let start = Instant::now();
        let mut node = f();
        node.timing_ms = start.elapsed().as_secs_f64() * 1e3;
        node
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn find(&self, name: &str) -> Option<&ReportNode> {
        if self.name == name {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(name))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    fn render(&self, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:indent$}[{}] {}",
            "",
            self.status,
            self.name,
            indent = depth * 2
        )?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        if self.timing_ms >= 1.0 {
            write!(f, " ({:.0} ms)", self.timing_ms)?;
        }
        writeln!(f)?;
        for c in &self.children {
            c.render(depth + 1, f)?;
        }
        Ok(())
    }
}

impl fmt::Display for ReportNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(0, f)
    }
}
