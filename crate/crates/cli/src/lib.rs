//! Case orchestration and machine-readable reports for the `ccsym` binary.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use ccsym::certify::{
    det_affine, find_delta, kernel_trivial_rect, mass_ratio_at, principal_block, certify_sign, Certificate,
    CertificateFile, CertifyError, CertifyOptions,
};
use ccsym::exact::{rat, Rational, Sign};
use ccsym::model::{decompose, nested_polyhedron, Decomposition, ModelError, NamedBlock, ParamMatrix, PolyhedronKind};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("decomposition failed: {0}")]
    Decomposition(#[from] ModelError),
    #[error("{stage} failed: {source}")]
    Stage { stage: String, source: CertifyError },
    #[error("unknown block {0:?}")]
    UnknownBlock(String),
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Which stages [`run_case`] executes.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub certify: CertifyOptions,
    /// Restrict block certification to one block; `None` runs all of them.
    pub block: Option<String>,
    pub blocks: bool,
    pub delta: bool,
    pub digits: u32,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { certify: CertifyOptions::default(), block: None, blocks: true, delta: true, digits: 5 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepSummary {
    pub name: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub name: String,
    pub irrep: usize,
    pub irrep_name: String,
    pub rows: usize,
    pub cols: usize,
    pub copies: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix: Option<ParamMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionChecks {
    pub forbidden_blocks_zero: bool,
    pub copies_equal: bool,
    pub real: bool,
}

/// Output of the `decompose` stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub case: String,
    pub irreps: Vec<IrrepSummary>,
    pub theta_multiplicities: Vec<usize>,
    pub theta_rho_multiplicities: Vec<usize>,
    pub blocks: Vec<BlockSummary>,
    pub checks: DecompositionChecks,
}

impl DecompositionReport {
    pub fn new(case: PolyhedronKind, d: &Decomposition, with_matrices: bool) -> Self {
        let config = nested_polyhedron(case);
        DecompositionReport {
            case: case.name().to_string(),
            irreps: config.irreps().iter().map(|i| IrrepSummary { name: i.name.clone(), degree: i.rep.degree() }).collect(),
            theta_multiplicities: d.theta_multiplicities.clone(),
            theta_rho_multiplicities: d.theta_rho_multiplicities.clone(),
            blocks: d
                .blocks
                .iter()
                .map(|b| BlockSummary {
                    name: b.name.clone(),
                    irrep: b.irrep,
                    irrep_name: b.irrep_name.clone(),
                    rows: b.rows,
                    cols: b.cols,
                    copies: b.copies,
                    matrix: with_matrices.then(|| b.matrix.clone()),
                })
                .collect(),
            checks: DecompositionChecks {
                forbidden_blocks_zero: d.structure.forbidden_zero,
                copies_equal: d.structure.copies_equal,
                real: d.structure.real,
            },
        }
    }
}

/// Pointer from a report claim to an entry of the certificate file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRef {
    pub index: usize,
    pub kind: String,
    pub target: String,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockResult {
    pub block: String,
    pub claim: String,
    pub certificates: Vec<CertificateRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSummary {
    pub lo: String,
    pub hi: String,
    pub reciprocal: (String, String),
    pub certificate: CertificateRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageFailure {
    pub stage: String,
    pub error: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub decompose_ms: u128,
    pub blocks_ms: u128,
    pub delta_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub decomposition: DecompositionReport,
    pub results: Vec<BlockResult>,
    pub delta: Option<DeltaSummary>,
    /// `Some(true)` when every non-principal block is certified to force equal masses.
    pub equal_masses: Option<bool>,
    pub failures: Vec<StageFailure>,
    pub all_verified: bool,
    pub timing: Timing,
}

/// A report together with the certificates it points to.
#[derive(Clone, Debug)]
pub struct CaseRun {
    pub report: CaseReport,
    pub certificates: CertificateFile,
}

fn push(file: &mut CertificateFile, c: Certificate) -> CertificateRef {
    let r = CertificateRef { index: file.certificates.len(), kind: c.kind().to_string(), target: c.target(), verified: c.verified() };
    file.certificates.push(c);
    r
}

fn is_principal(b: &NamedBlock) -> bool {
    b.irrep == 0 && b.rows == 2 && b.cols == 2
}

/// Certificates for one block, with the claim they establish.
fn certify_block(b: &NamedBlock, opts: CertifyOptions) -> Result<(String, Vec<Certificate>), CertifyError> {
    if b.rows == 2 && b.cols == 2 {
        let det = det_affine(&b.matrix)?;
        if is_principal(b) {
            let (a1, a0) = det;
            let (s1, s0) = rayon::join(
                || certify_sign(&format!("{} det c-coefficient", b.name), &a1, None, opts),
                || certify_sign(&format!("{} det constant term", b.name), &a0, None, opts),
            );
            let (s1, s0) = (s1?, s0?);
            let claim = if s1.sign != s0.sign {
                "det = a1 c + a0 with a1, a0 of opposite constant signs: c(t) = -a0/a1 > 0 is unique"
            } else {
                "det = a1 c + a0 with a1, a0 of equal constant signs: no positive c"
            };
            return Ok((claim.into(), vec![Certificate::Sign(s1), Certificate::Sign(s0)]));
        }
        let (a1, a0) = det;
        if !a1.is_zero() {
            return Err(CertifyError::Shape(format!("{}: determinant depends on c", b.name)));
        }
        let s = certify_sign(&format!("{} det", b.name), &a0, None, opts)?;
        return Ok(("determinant is free of c and nonvanishing: trivial kernel".into(), vec![Certificate::Sign(s)]));
    }
    let k = kernel_trivial_rect(&b.name, &b.matrix, opts)?;
    Ok(("rank two for every c: trivial kernel".into(), vec![Certificate::KernelTrivial(k)]))
}

/// Runs decomposition, block certification and threshold isolation for one case.
pub fn run_case(kind: PolyhedronKind, opts: &RunOptions) -> Result<CaseRun, ReportError> {
    let start = Instant::now();
    let d = decompose(&nested_polyhedron(kind))?;
    let mut timing = Timing { decompose_ms: start.elapsed().as_millis(), ..Timing::default() };
    let decomposition = DecompositionReport::new(kind, &d, false);
    let mut file = CertificateFile { case: kind.name().to_string(), certificates: Vec::new() };
    let mut failures = Vec::new();
    let mut results = Vec::new();

    if let Some(name) = &opts.block {
        if d.block(name).is_none() {
            return Err(ReportError::UnknownBlock(name.clone()));
        }
    }
    let selected: Vec<&NamedBlock> =
        d.blocks.iter().filter(|b| opts.block.as_ref().map_or(true, |n| *n == b.name)).collect();
    let mut equal_masses = None;
    if opts.blocks {
        let start = Instant::now();
        let outcomes: Vec<_> = selected.par_iter().map(|b| (b, certify_block(b, opts.certify))).collect();
        let mut all_others = true;
        for (b, outcome) in outcomes {
            match outcome {
                Ok((claim, certs)) => {
                    let certificates = certs.into_iter().map(|c| push(&mut file, c)).collect();
                    results.push(BlockResult { block: b.name.clone(), claim, certificates });
                }
                Err(e) => {
                    all_others &= is_principal(b);
                    failures.push(StageFailure { stage: format!("certify {}", b.name), error: e.to_string() });
                }
            }
        }
        if opts.block.is_none() {
            equal_masses = Some(all_others);
        }
        timing.blocks_ms = start.elapsed().as_millis();
    }

    let mut delta = None;
    if opts.delta {
        let start = Instant::now();
        match principal_block(&d).and_then(|b| find_delta(b, opts.digits, opts.certify)) {
            Ok(dl) => {
                let (lo, hi, reciprocal) = (dl.lo.to_string(), dl.hi.to_string(), dl.reciprocal.clone());
                let certificate = push(&mut file, Certificate::Threshold(dl));
                delta = Some(DeltaSummary { lo, hi, reciprocal, certificate });
            }
            Err(e) => failures.push(StageFailure { stage: "delta".into(), error: e.to_string() }),
        }
        timing.delta_ms = start.elapsed().as_millis();
    }

    let all_verified = failures.is_empty() && file.certificates.iter().all(Certificate::verified);
    let report = CaseReport { decomposition, results, delta, equal_masses, failures, all_verified, timing };
    Ok(CaseRun { report, certificates: file })
}

/// One row of the mass-ratio curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSample {
    pub t_num: String,
    pub t_den: String,
    pub c_lo: String,
    pub c_hi: String,
    pub ratio_lo: String,
    pub ratio_hi: String,
    pub ratio_sign: String,
}

fn sign_tag(s: Sign) -> &'static str {
    match s {
        Sign::Negative => "-",
        Sign::Zero => "0",
        Sign::Positive => "+",
    }
}

/// Samples `c(t)` and the mass ratio at `t = k / (samples + 1)`, `k = 1..=samples`.
pub fn curve_samples(kind: PolyhedronKind, samples: usize) -> Result<Vec<CurveSample>, ReportError> {
    if samples < 2 {
        return Err(ReportError::TooFewSamples(samples));
    }
    let d = decompose(&nested_polyhedron(kind))?;
    let stage = |source| ReportError::Stage { stage: "curve".into(), source };
    let block = principal_block(&d).map_err(stage)?;
    let n = samples as i64 + 1;
    (1..n)
        .into_par_iter()
        .map(|k| {
            let t: Rational = rat(k, n);
            let m = mass_ratio_at(block, &t).map_err(stage)?;
            Ok(CurveSample {
                t_num: t.numer().to_string(),
                t_den: t.denom().to_string(),
                c_lo: m.c_enclosure.0,
                c_hi: m.c_enclosure.1,
                ratio_lo: m.ratio_enclosure.0,
                ratio_hi: m.ratio_enclosure.1,
                ratio_sign: sign_tag(m.sign).to_string(),
            })
        })
        .collect()
}

/// Writes [`curve_samples`] as CSV.
pub fn export_curve(kind: PolyhedronKind, samples: usize, out: &Path) -> Result<Vec<CurveSample>, ReportError> {
    let rows = curve_samples(kind, samples)?;
    let mut w = csv::Writer::from_path(out)?;
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(rows)
}

/// Result of replaying one certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayLine {
    pub index: usize,
    pub kind: String,
    pub target: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

pub fn replay_file(file: &CertificateFile) -> Vec<ReplayLine> {
    file.replay()
        .into_iter()
        .zip(&file.certificates)
        .enumerate()
        .map(|(index, ((target, r), c))| {
            let error = match (&r, c.verified()) {
                (Err(e), _) => Some(e.to_string()),
                (Ok(()), false) => Some("certificate is not marked verified".into()),
                _ => None,
            };
            ReplayLine { index, kind: c.kind().to_string(), target, ok: error.is_none(), error }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_needs_two_samples() {
        assert!(matches!(curve_samples(PolyhedronKind::Tetrahedron, 0), Err(ReportError::TooFewSamples(0))));
    }

    #[test]
    fn unverified_certificates_fail_replay() {
        let opts = RunOptions { block: Some("T1".into()), delta: false, ..RunOptions::default() };
        let mut run = run_case(PolyhedronKind::Tetrahedron, &opts).unwrap();
        assert!(replay_file(&run.certificates).iter().all(|l| l.ok));
        if let Certificate::Sign(s) = &mut run.certificates.certificates[1] {
            s.verified = false;
        }
        let lines = replay_file(&run.certificates);
        assert!(lines[0].ok);
        assert_eq!(lines[1].error.as_deref(), Some("certificate is not marked verified"));
    }

    #[test]
    fn principal_block_claim_names_opposite_signs() {
        let opts = RunOptions { block: Some("T1".into()), delta: false, ..RunOptions::default() };
        let run = run_case(PolyhedronKind::Tetrahedron, &opts).unwrap();
        let r = &run.report.results[0];
        assert!(r.claim.contains("opposite constant signs"), "{}", r.claim);
        assert_eq!(r.certificates.len(), 2);
        assert!(r.certificates.iter().all(|c| c.verified && c.kind == "sturm-count"));
    }
}
