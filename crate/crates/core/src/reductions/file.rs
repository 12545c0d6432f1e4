//! TOML instance files. The CA is either a path to a spec file (`spec`,
//! relative to the instance file) or an inline `[ca]` table.
//!
//! ```toml
//! spec = "ca.toml"
//! s = "1000"
//! t = "1100"
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{DdpInstance, SddpInstance};
use crate::error::{Error, Result};
use crate::lchca::{CaSpecFile, Configuration, Lchca};

fn load_ca(spec: &Option<String>, ca: &Option<CaSpecFile>, base: &Path) -> Result<Lchca> {
    match (spec, ca) {
        (Some(path), None) => CaSpecFile::load(&base.join(path))?.build(),
        (None, Some(inline)) => inline.build(),
        _ => Err(Error::parse("instance needs exactly one of `spec` or `[ca]`")),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

/// Digits of an SDDP target; the empty string is the empty prefix.
pub(crate) fn parse_digits(s: &str, ca: &Lchca) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        Ok(Vec::new())
    } else {
        Ok(Configuration::parse(s, ca.p())?.into_cells())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DdpInstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    pub s: String,
    pub t: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ca: Option<CaSpecFile>,
}

impl DdpInstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::parse(format!("DDP instance: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("instance fields are plain TOML values")
    }

    /// Builds the instance; `base` anchors a relative `spec` path.
    pub fn resolve(&self, base: &Path) -> Result<DdpInstance> {
        let ca = load_ca(&self.spec, &self.ca, base)?;
        let s = Configuration::parse(&self.s, ca.p())?;
        let t = Configuration::parse(&self.t, ca.p())?;
        DdpInstance::new(ca, s, t)
    }

    pub fn load(path: &Path) -> Result<DdpInstance> {
        Self::parse(&read(path)?)?.resolve(base_dir(path))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SddpInstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    pub s: String,
    pub x: String,
    /// Defaults to the first `k` cells.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<usize>>,
    pub delta: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ca: Option<CaSpecFile>,
}

impl SddpInstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::parse(format!("SDDP instance: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("instance fields are plain TOML values")
    }

    pub fn resolve(&self, base: &Path) -> Result<SddpInstance> {
        let ca = load_ca(&self.spec, &self.ca, base)?;
        let s = Configuration::parse(&self.s, ca.p())?;
        let x = parse_digits(&self.x, &ca)?;
        SddpInstance::new(ca, s, x, self.coords.clone(), self.delta)
    }

    pub fn load(path: &Path) -> Result<SddpInstance> {
        Self::parse(&read(path)?)?.resolve(base_dir(path))
    }
}
