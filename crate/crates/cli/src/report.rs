//! Structured reports. The JSON form is deterministic for fixed inputs and
//! seed: rows are emitted in input order, and nothing time-dependent is
//! serialized (wall-clock goes to stderr).

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub input_digest: String,
    pub verdicts: Vec<VerdictRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictRow {
    pub id: String,
    pub criterion: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    pub reason: String,
}

impl VerdictRow {
    pub fn new(id: &str, criterion: &str, status: &str, reason: &str) -> Self {
        VerdictRow {
            id: id.into(),
            criterion: criterion.into(),
            status: status.into(),
            witness: None,
            reason: reason.into(),
        }
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn bool_status(id: &str, criterion: &str, value: bool, reason: &str) -> Self {
        VerdictRow::new(id, criterion, if value { "true" } else { "false" }, reason)
    }

    /// Statuses that should trip `--assert`.
    pub fn is_failing(&self) -> bool {
        matches!(
            self.status.as_str(),
            "false" | "unstable" | "needs-oracle" | "fail"
        )
    }
}

impl Report {
    pub fn new(command: &str, seed: u64, input_digest: String, verdicts: Vec<VerdictRow>) -> Self {
        Report {
            tool: "nrgit".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            seed,
            input_digest,
            verdicts,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} {} | {} | seed {} | digest {}\n",
            self.tool, self.version, self.command, self.seed, self.input_digest
        ));
        let id_w = self
            .verdicts
            .iter()
            .map(|r| r.id.len())
            .max()
            .unwrap_or(2)
            .max(2);
        let crit_w = self
            .verdicts
            .iter()
            .map(|r| r.criterion.len())
            .max()
            .unwrap_or(9)
            .max(9);
        let stat_w = self
            .verdicts
            .iter()
            .map(|r| r.status.len())
            .max()
            .unwrap_or(6)
            .max(6);
        out.push_str(&format!(
            "{:id_w$}  {:crit_w$}  {:stat_w$}  reason\n",
            "id", "criterion", "status"
        ));
        for row in &self.verdicts {
            let witness = row
                .witness
                .as_ref()
                .map(|w| format!(" [{w}]"))
                .unwrap_or_default();
            out.push_str(&format!(
                "{:id_w$}  {:crit_w$}  {:stat_w$}  {}{}\n",
                row.id, row.criterion, row.status, row.reason, witness
            ));
        }
        out
    }

    pub fn any_failing(&self) -> bool {
        self.verdicts.iter().any(VerdictRow::is_failing)
    }
}

/// FNV-1a over the canonical input description; enough to tie a report to
/// its inputs.
pub fn input_digest(parts: &[&str]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for part in parts {
        for b in part.as_bytes() {
            hash ^= u64::from(*b);
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        hash ^= 0xff;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a:{hash:016x}")
}
