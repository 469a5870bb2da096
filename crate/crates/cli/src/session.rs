use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use liaison_core::fmodule::PresentedModule;
use liaison_core::liaison::{certify_quasi_gorenstein, link, LinkStep};
use liaison_core::matlink::{MatChainCertificate, MatrixRecord};
use liaison_core::poly::Ring;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingHeader {
    pub characteristic: u32,
    pub vars: Vec<String>,
}

impl RingHeader {
    pub fn of(ring: &Ring) -> RingHeader {
        RingHeader {
            characteristic: ring.field().characteristic(),
            vars: ring.var_names().to_vec(),
        }
    }

    pub fn ring(&self) -> Result<Ring> {
        Ok(Ring::new(self.characteristic, self.vars.clone())?)
    }
}

/// Everything needed to replay one direct link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkRecord {
    pub source: MatrixRecord,
    pub linking: MatrixRecord,
    /// `C -> M` on generators.
    pub phi: MatrixRecord,
    pub t: i64,
    pub result: MatrixRecord,
    pub deg_m: i64,
    pub deg_c: i64,
    pub deg_n: i64,
}

impl LinkRecord {
    pub fn of(step: &LinkStep) -> LinkRecord {
        LinkRecord {
            source: MatrixRecord::from_matrix(step.source.presentation()),
            linking: MatrixRecord::from_matrix(step.cert.module.presentation()),
            phi: MatrixRecord::from_matrix(&step.phi),
            t: step.cert.t,
            result: MatrixRecord::from_matrix(step.result.presentation()),
            deg_m: step.source.hilbert().degree(),
            deg_c: step.cert.module.hilbert().degree(),
            deg_n: step.result.hilbert().degree(),
        }
    }

    /// Recertify `C`, relink and compare with the recorded result.
    pub fn verify(&self, ring: &Ring, seed: u64) -> Result<()> {
        let module = |r: &MatrixRecord| -> Result<PresentedModule> { Ok(PresentedModule::new(r.to_matrix(ring)?)?) };
        let (m, c, n) = (module(&self.source)?, module(&self.linking)?, module(&self.result)?);
        let phi = self.phi.to_matrix(ring)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cert = certify_quasi_gorenstein(&c, &mut rng)?.cert()?;
        if !cert.verify() {
            bail!("certificate of the linking module does not verify");
        }
        if cert.t != self.t {
            bail!("recorded t = {} but the linking module gives {}", self.t, cert.t);
        }
        let step = link(&m, &cert, &phi.mul(&cert.from_input)?)?;
        let degs = (m.hilbert().degree(), c.hilbert().degree(), n.hilbert().degree());
        if degs != (self.deg_m, self.deg_c, self.deg_n) || self.deg_c != self.deg_m + self.deg_n {
            bail!("recorded degrees do not match");
        }
        if step.result.hilbert().numerator() != n.hilbert().numerator() {
            bail!("recorded result has the wrong Hilbert series");
        }
        if !step.check_sequence() {
            bail!("standard sequence fails");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Link {
        seed: u64,
        step: LinkRecord,
    },
    Chain {
        command: String,
        seed: u64,
        steps: Vec<LinkRecord>,
    },
    Matreduce {
        certificate: MatChainCertificate,
    },
    Report {
        command: String,
        report: serde_json::Value,
    },
}

impl Record {
    pub fn kind(&self) -> &'static str {
        match self {
            Record::Link { .. } => "link",
            Record::Chain { .. } => "chain",
            Record::Matreduce { .. } => "matreduce",
            Record::Report { .. } => "report",
        }
    }

    /// Re-check the record from its own contents; reports carry nothing to check.
    pub fn verify(&self, ring: &Ring) -> Result<()> {
        match self {
            Record::Link { seed, step } => step.verify(ring, *seed),
            Record::Chain { seed, steps, .. } => steps
                .iter()
                .enumerate()
                .try_for_each(|(k, s)| s.verify(ring, *seed).with_context(|| format!("step {k}"))),
            Record::Matreduce { certificate } => {
                if RingHeader::of(ring) != (RingHeader {
                    characteristic: certificate.characteristic,
                    vars: certificate.vars.clone(),
                }) {
                    bail!("certificate ring differs from the session ring");
                }
                Ok(certificate.verify()?)
            }
            Record::Report { .. } => Ok(()),
        }
    }
}

/// Append-only log of records over one ring.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SessionLog {
    pub schema: u32,
    pub seed: u64,
    pub ring: RingHeader,
    pub records: Vec<Record>,
}

impl SessionLog {
    pub fn load(path: &Path) -> Result<SessionLog> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let log: SessionLog = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if log.schema != SCHEMA {
            bail!("unsupported session schema {}", log.schema);
        }
        Ok(log)
    }

    /// Load `path` or start a new log, then append `record`.
    pub fn append(path: &Path, ring: &Ring, seed: u64, record: Record) -> Result<()> {
        let mut log = if path.exists() {
            SessionLog::load(path)?
        } else {
            SessionLog {
                schema: SCHEMA,
                seed,
                ring: RingHeader::of(ring),
                records: Vec::new(),
            }
        };
        if log.ring != RingHeader::of(ring) {
            bail!("session {} was recorded over a different ring", path.display());
        }
        log.records.push(record);
        let text = serde_json::to_string_pretty(&log)?;
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
    }
}
