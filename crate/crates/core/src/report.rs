//! Command reports and their JSON and text renderings.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// A check ran and did not hold, or a certificate was refused.
    Failed,
    /// The input could not be read or parsed.
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub status: Status,
    pub message: Option<String>,
    pub summary: String,
    pub payload: Value,
    pub version: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// SHA-256 over the given input chunks, each length-prefixed.
pub fn digest<'a>(chunks: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for c in chunks {
        h.update((c.len() as u64).to_le_bytes());
        h.update(c);
    }
    hex::encode(h.finalize())
}

impl Report {
    pub fn new(
        command: &str,
        inputs_digest: String,
        status: Status,
        summary: String,
        payload: Value,
    ) -> Report {
        Report {
            command: command.into(),
            inputs_digest,
            status,
            message: None,
            summary,
            payload,
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    pub fn error(command: &str, inputs_digest: String, message: String) -> Report {
        let mut r = Report::new(
            command,
            inputs_digest,
            Status::Error,
            "error".into(),
            Value::Null,
        );
        r.message = Some(message);
        r
    }

    pub fn with_message(mut self, message: String) -> Report {
        self.message = Some(message);
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Compact JSON with keys in sorted order.
    pub fn to_canonical_json(&self) -> String {
        // serde_json's default map is ordered, so the round trip sorts keys
        let v = serde_json::to_value(self).expect("plain data");
        serde_json::to_string(&v).expect("plain data")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self, color: bool) -> String {
        let status = match self.status {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Error => "error",
        };
        let status = if color {
            let code = match self.status {
                Status::Ok => "32",
                Status::Failed => "33",
                Status::Error => "31",
            };
            format!("\x1b[1;{code}m{status}\x1b[0m")
        } else {
            status.to_string()
        };
        let mut out = format!("{}: {}\n", self.command, status);
        if let Some(m) = &self.message {
            out.push_str(&format!("message: {m}\n"));
        }
        out.push_str(&format!("result: {}\n", self.summary));
        write_value(&mut out, "", &self.payload);
        out.push_str(&format!(
            "inputs: {}\nversion: {}\n",
            self.inputs_digest, self.version
        ));
        out
    }

    pub fn emit(&self, format: Format, color: bool) -> String {
        match format {
            Format::Json => self.to_canonical_json() + "\n",
            Format::Text => self.to_text(color),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One `path: value` line per leaf.
fn write_value(out: &mut String, path: &str, v: &Value) {
    let join = |k: &str| {
        if path.is_empty() {
            k.to_string()
        } else {
            format!("{path}.{k}")
        }
    };
    match v {
        Value::Null if path.is_empty() => {}
        Value::Object(map) => {
            for (k, x) in map {
                write_value(out, &join(k), x);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{path}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                write_value(out, &join(&i.to_string()), x);
            }
        }
        leaf => out.push_str(&format!("{path}: {}\n", scalar(leaf))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        Report::new(
            "reduce",
            digest([b"loop".as_slice(), b"x.x*"]),
            Status::Ok,
            "v".into(),
            json!({"z": 1, "a": [1, 2]}),
        )
    }

    #[test]
    fn canonical_json_is_sorted_and_stable() {
        let r = sample();
        let s = r.to_canonical_json();
        assert_eq!(s, r.to_canonical_json());
        assert!(s.starts_with(r#"{"command":"reduce","inputs_digest":"#));
        assert!(s.contains(r#""payload":{"a":[1,2],"z":1}"#));
        assert!(!s.contains(' '));
        assert_eq!(Report::from_json(&s).unwrap(), r);
    }

    #[test]
    fn text_and_errors() {
        let t = sample().to_text(false);
        assert!(t.starts_with("reduce: ok\nresult: v\n"));
        assert!(t.contains("a: [1, 2]\n"));
        let e = Report::error("basis", digest([]), "cannot read g.json".into());
        assert_eq!(e.exit_code(), 2);
        assert!(!e.message.as_deref().unwrap().is_empty());
        assert!(sample().to_text(true).contains("\x1b[1;32mok"));
    }

    #[test]
    fn digest_separates_chunks() {
        assert_ne!(
            digest([b"ab".as_slice(), b"c"]),
            digest([b"a".as_slice(), b"bc"])
        );
    }
}
