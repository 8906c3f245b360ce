use serde::{Deserialize, Serialize};

use super::{CertifyError, Delta, KernelCertificate, SignCertificate};

/// Any replayable claim produced by the certifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "certificate", rename_all = "kebab-case")]
pub enum Certificate {
    Sign(SignCertificate),
    KernelTrivial(KernelCertificate),
    Threshold(Delta),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Sign(c) => c.kind(),
            Certificate::KernelTrivial(_) => "kernel-trivial",
            Certificate::Threshold(_) => "threshold",
        }
    }

    pub fn target(&self) -> String {
        match self {
            Certificate::Sign(c) => c.target.clone(),
            Certificate::KernelTrivial(c) => format!("{} has trivial kernel", c.block),
            Certificate::Threshold(d) => format!("threshold of {}", d.block),
        }
    }

    pub fn verified(&self) -> bool {
        match self {
            Certificate::Sign(c) => c.verified,
            Certificate::KernelTrivial(c) => c.verified,
            Certificate::Threshold(d) => d.verified,
        }
    }

    pub fn replay(&self) -> Result<(), CertifyError> {
        match self {
            Certificate::Sign(c) => c.replay(),
            Certificate::KernelTrivial(c) => c.replay(),
            Certificate::Threshold(d) => d.replay(),
        }
    }
}

/// Self-contained bundle of certificates for one case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub case: String,
    pub certificates: Vec<Certificate>,
}

impl CertificateFile {
    pub fn to_json(&self) -> Result<String, CertifyError> {
        serde_json::to_string_pretty(self).map_err(|e| CertifyError::Io(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self, CertifyError> {
        serde_json::from_str(s).map_err(|e| CertifyError::Io(e.to_string()))
    }

    /// Replays every certificate, in parallel, keeping the file order.
    pub fn replay(&self) -> Vec<(String, Result<(), CertifyError>)> {
        use rayon::prelude::*;
        self.certificates.par_iter().map(|c| (c.target(), c.replay())).collect()
    }
}
