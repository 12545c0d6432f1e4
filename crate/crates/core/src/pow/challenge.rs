use serde::{Deserialize, Serialize};

use super::derive::{derive_s, derive_x};
use super::PowParams;
use crate::error::{Error, Result};
use crate::ff::{Polynomial, Prime};
use crate::lchca::Configuration;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowChallenge {
    pub params: PowParams,
    /// SHA-256 of the message.
    pub digest: [u8; 32],
    pub s: Configuration,
    pub x: Vec<u32>,
}

impl PowChallenge {
    pub fn from_digest(digest: [u8; 32], params: PowParams) -> Self {
        let s = Configuration::from_reduced(derive_s(&digest, params.p(), params.n()));
        let x = derive_x(&digest, params.p(), params.k());
        PowChallenge { params, digest, s, x }
    }

    /// Whether `s` and `x` are exactly what the digest and parameters produce.
    pub fn is_well_formed(&self) -> bool {
        let p = self.params.p();
        self.s.len() == self.params.n()
            && self.x.len() == self.params.k()
            && self.s.cells() == derive_s(&self.digest, p, self.params.n())
            && self.x == derive_x(&self.digest, p, self.params.k())
    }

    pub fn to_file(&self) -> ChallengeFile {
        ChallengeFile {
            p: self.params.p().get(),
            n: self.params.n(),
            f: self.params.f().to_string(),
            k: self.params.k(),
            delta: self.params.delta(),
            message_digest: hex::encode(self.digest),
            s: self.s.to_string(),
            x: if self.x.is_empty() {
                String::new()
            } else {
                Configuration::from_reduced(self.x.clone()).to_string()
            },
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_file()).expect("challenge fields are plain TOML values")
    }

    /// Parses the wire format. `s` and `x` are taken as written; [`super::verify`]
    /// rejects challenges whose `s`, `x` do not match the digest.
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: ChallengeFile = toml::from_str(text).map_err(|e| Error::parse(format!("challenge: {e}")))?;
        file.into_challenge()
    }
}

/// Challenge wire format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChallengeFile {
    pub p: u32,
    pub n: usize,
    /// Polynomial string `p:c0,c1,...`.
    pub f: String,
    pub k: usize,
    pub delta: u64,
    #[serde(rename = "message-digest")]
    pub message_digest: String,
    pub s: String,
    pub x: String,
}

impl ChallengeFile {
    pub fn into_challenge(self) -> Result<PowChallenge> {
        let f: Polynomial = self.f.parse()?;
        let p = Prime::new(self.p as u64)?;
        if f.modulus() != p || f.degree() != Some(self.n) {
            return Err(Error::parse(format!(
                "f = {f} does not match p = {} and n = {}",
                self.p, self.n
            )));
        }
        let params = PowParams::new(f, self.k, self.delta)?;
        let bytes =
            hex::decode(self.message_digest.trim()).map_err(|e| Error::parse(format!("message-digest: {e}")))?;
        let digest: [u8; 32] = bytes
            .try_into()
            .map_err(|_| Error::parse("message-digest must be 32 bytes"))?;
        let s = Configuration::parse(&self.s, p)?;
        let x = if self.x.trim().is_empty() {
            Vec::new()
        } else {
            Configuration::parse(&self.x, p)?.into_cells()
        };
        if s.len() != self.n || x.len() != self.k {
            return Err(Error::parse(format!(
                "s has {} digits and x has {}, expected {} and {}",
                s.len(),
                x.len(),
                self.n,
                self.k
            )));
        }
        Ok(PowChallenge { params, digest, s, x })
    }
}
