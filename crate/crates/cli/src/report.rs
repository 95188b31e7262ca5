use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
    CapExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undecided | Status::CapExceeded => 2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    /// SHA-256 of the input file followed by the effective settings.
    pub input_digest: String,
    pub settings: Value,
    pub status: Status,
    pub results: Value,
}

pub fn digest(input: &[u8], settings: &Value) -> String {
    let mut h = Sha256::new();
    h.update(input);
    h.update(settings.to_string().as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
