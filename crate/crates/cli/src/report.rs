use frobnil_core::Error;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certified,
    CapReached,
    Witness,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl ErrorInfo {
    pub fn from_engine(e: &Error) -> Self {
        let (kind, line, column) = match e {
            Error::Parse { line, column, .. } => ("parse", Some(*line), Some(*column)),
            Error::NotPrime(_) | Error::CharacteristicTooLarge(_) => ("characteristic", None, None),
            Error::RingMismatch(_) => ("ring-mismatch", None, None),
            Error::DegreeOverflow { .. } => ("overflow", None, None),
            Error::Precondition(_) => ("precondition", None, None),
            Error::SizeCap(_) => ("size-cap", None, None),
            Error::InvalidRing(_) => ("invalid-ring", None, None),
        };
        Self {
            kind,
            message: e.to_string(),
            line,
            column,
        }
    }

    pub fn usage(message: String) -> Self {
        Self {
            kind: "usage",
            message,
            line: None,
            column: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            "parse" | "usage" => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub ring: String,
    pub inputs: Map<String, Value>,
    pub result: Map<String, Value>,
    pub status: Status,
    pub cap: Map<String, Value>,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn new(command: &str, ring: String) -> Self {
        Self {
            command: command.into(),
            ring,
            inputs: Map::new(),
            result: Map::new(),
            status: Status::Certified,
            cap: Map::new(),
            witnesses: Vec::new(),
            error: None,
        }
    }

    pub fn failed(mut self, err: ErrorInfo) -> Self {
        self.status = Status::Error;
        self.result = Map::new();
        self.witnesses.clear();
        self.error = Some(err);
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, ErrorInfo::exit_code)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        if let Some(err) = &self.error {
            out.push_str(&format!("error: {}\n", err.message));
            return out;
        }
        out.push_str(&format!("{} over {}\n", self.command, self.ring));
        out.push_str(&format!("status: {}\n", status_name(self.status)));
        for (k, v) in &self.result {
            match v {
                Value::Array(items) if k == "generators" || k == "gb" || k == "sequence" => {
                    out.push_str(&format!("{k}:\n"));
                    if items.is_empty() {
                        out.push_str("  (none)\n");
                    }
                    for it in items {
                        out.push_str(&format!("  {}\n", plain(it)));
                    }
                }
                _ => out.push_str(&format!("{k}: {}\n", plain(v))),
            }
        }
        if !self.cap.is_empty() {
            let caps: Vec<String> = self.cap.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
            out.push_str(&format!("caps: {}\n", caps.join(", ")));
        }
        for w in &self.witnesses {
            out.push_str(&format!("witness: {}\n", plain(w)));
        }
        out
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Certified => "certified",
        Status::CapReached => "cap-reached",
        Status::Witness => "witness",
        Status::Error => "error",
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
