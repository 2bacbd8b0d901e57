use serde::Serialize;
use sha2::{Digest, Sha256};

pub const TOOL: &str = "wdlab";

/// Envelope shared by every command's JSON output.
#[derive(Clone, Debug, Serialize)]
pub struct ReportFile<B: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input_sha256: Option<String>,
    /// Every tolerance and grid the command used.
    pub config: serde_json::Value,
    /// Excluded from reproducibility comparisons.
    pub timestamp: String,
    pub body: B,
}

impl<B: Serialize> ReportFile<B> {
    pub fn new(command: &'static str, input: Option<&[u8]>, config: serde_json::Value, body: B) -> Self {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command,
            input_sha256: input.map(sha256_hex),
            config,
            timestamp: format!("unix:{secs}"),
            body,
        }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Parsed report with the timestamp removed, for byte-stability checks.
pub fn without_timestamp(text: &str) -> serde_json::Result<String> {
    let mut v: serde_json::Value = serde_json::from_str(text)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timestamp");
    }
    serde_json::to_string_pretty(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn timestamp_is_stripped() {
        let a = ReportFile::new("x", Some(b"in"), serde_json::json!({"tol": 1e-9}), vec![1, 2]).render();
        let mut b = ReportFile::new("x", Some(b"in"), serde_json::json!({"tol": 1e-9}), vec![1, 2]);
        b.timestamp = "unix:0".into();
        assert_eq!(without_timestamp(&a).unwrap(), without_timestamp(&b.render()).unwrap());
        assert!(!without_timestamp(&a).unwrap().contains("timestamp"));
    }
}
