use serde::Serialize;

/// Outcome of a probe for a statement that is conjectured rather than proven.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum Verdict<W> {
    Verified(W),
    Refuted(W),
    Inconclusive(W),
}

impl<W> Verdict<W> {
    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Verified(_) => "verified",
            Verdict::Refuted(_) => "refuted",
            Verdict::Inconclusive(_) => "inconclusive",
        }
    }
}
