//! Run manifests and output envelopes.

use std::io::Write;
use std::path::{Path, PathBuf};

use lowcomplexity::ExactnessClass;
use serde::Serialize;
use serde_json::Value;

/// Everything needed to reproduce a run.  Echoed into every output.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub parameters: Value,
    pub outputs: Vec<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn new(command: &str, parameters: &impl Serialize, seed: Option<u64>) -> Self {
        RunManifest {
            tool: "lowcomplexity",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            inputs: Vec::new(),
            parameters: serde_json::to_value(parameters).expect("arguments serialize"),
            outputs: Vec::new(),
            seed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    manifest: &'a RunManifest,
    class: ExactnessClass,
    result: &'a T,
}

/// Pretty JSON with the manifest and exactness class up front.
pub fn json_report<T: Serialize>(m: &RunManifest, class: ExactnessClass, result: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(&Envelope { manifest: m, class, result }).expect("report serializes");
    s.push('\n');
    s.into_bytes()
}

/// `#`-prefixed header lines for text formats.
pub fn text_header(m: &RunManifest, class: ExactnessClass) -> String {
    format!("# manifest\t{}\n# class\t{class:?}\n", m.to_json())
}

pub fn emit(out: Option<&Path>, bytes: &[u8]) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(bytes)?;
            so.flush()
        }
    }
}
