use serde::{Deserialize, Serialize};

use super::det::{affine_parts, minor, minors};
use super::sign::{certify_sign, CertifyOptions, SignCertificate};
use super::CertifyError;
use crate::model::{ParamMatrix, RadicalExpr};

type RowPair = (usize, usize);

/// How rank two was established for every `c` and every `t` in (0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "kebab-case")]
pub enum KernelStrategy {
    /// A minor free of `c` that never vanishes.
    CFreeMinor { rows: RowPair, minor: SignCertificate },
    /// `m1 = a1 c + b1`, `m2 = a2 c + b2` with `a1` and `a1 b2 - a2 b1` nonvanishing.
    Resolvent { first: RowPair, second: RowPair, leading: SignCertificate, resolvent: SignCertificate },
}

/// Certificate that an `n x 2` block has trivial kernel for all `c` and `t` in (0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCertificate {
    pub block: String,
    pub matrix: ParamMatrix,
    pub strategy: KernelStrategy,
    /// Minors or pairs tried before the successful one, with the reason they failed.
    pub rejected: Vec<String>,
    pub verified: bool,
}

/// The resolvent `a1 b2 - a2 b1` of two minors affine in `c`.
fn resolvent(m: &ParamMatrix, first: RowPair, second: RowPair) -> Result<(RadicalExpr, RadicalExpr), CertifyError> {
    let (a1, b1) = affine_parts(&minor(m, first.0, first.1))?;
    let (a2, b2) = affine_parts(&minor(m, second.0, second.1))?;
    Ok((a1.clone(), &(&a1 * &b2) - &(&a2 * &b1)))
}

fn pair_label(block: &str, r: RowPair) -> String {
    format!("{block} minor rows ({}, {})", r.0 + 1, r.1 + 1)
}

impl KernelCertificate {
    pub fn replay(&self) -> Result<(), CertifyError> {
        let fail = |m: &str| Err(CertifyError::Replay(format!("{}: {m}", self.block)));
        match &self.strategy {
            KernelStrategy::CFreeMinor { rows, minor: cert } => {
                let (a1, a0) = affine_parts(&minor(&self.matrix, rows.0, rows.1))?;
                if !a1.is_zero() || a0 != cert.expression {
                    return fail("minor does not match the block");
                }
                cert.replay()
            }
            KernelStrategy::Resolvent { first, second, leading, resolvent: res } => {
                let (a1, r) = resolvent(&self.matrix, *first, *second)?;
                if a1 != leading.expression || r != res.expression {
                    return fail("resolvent does not match the block");
                }
                leading.replay()?;
                res.replay()
            }
        }
    }
}

/// The resolvent strategy on one prescribed ordered pair of minors.
pub fn kernel_resolvent(
    block: &str,
    m: &ParamMatrix,
    first: RowPair,
    second: RowPair,
    opts: CertifyOptions,
) -> Result<KernelCertificate, CertifyError> {
    let (a1, r) = resolvent(m, first, second)?;
    let leading = certify_sign(&format!("{} c-coefficient", pair_label(block, first)), &a1, None, opts)?;
    let label = format!("{block} resolvent of rows ({}, {}) and ({}, {})", first.0 + 1, first.1 + 1, second.0 + 1, second.1 + 1);
    let resolvent = certify_sign(&label, &r, None, opts)?;
    Ok(KernelCertificate {
        block: block.to_string(),
        matrix: m.clone(),
        strategy: KernelStrategy::Resolvent { first, second, leading, resolvent },
        rejected: Vec::new(),
        verified: true,
    })
}

/// Proves the block has rank two for every real `c` on (0, 1): c-free minors first, then
/// ordered pairs of minors with a nonvanishing `c` coefficient and resolvent.
pub fn kernel_trivial_rect(block: &str, m: &ParamMatrix, opts: CertifyOptions) -> Result<KernelCertificate, CertifyError> {
    if m.cols != 2 || m.rows < 2 {
        return Err(CertifyError::Shape(format!("expected an n x 2 block, got {}x{}", m.rows, m.cols)));
    }
    let all = minors(m);
    let mut parts = Vec::new();
    for (rows, p) in &all {
        parts.push((*rows, affine_parts(p)?));
    }
    let mut rejected = Vec::new();
    let done = |strategy, rejected| KernelCertificate {
        block: block.to_string(),
        matrix: m.clone(),
        strategy,
        rejected,
        verified: true,
    };
    for (rows, (a1, a0)) in &parts {
        if !a1.is_zero() {
            continue;
        }
        let label = pair_label(block, *rows);
        match certify_sign(&label, a0, None, opts) {
            Ok(minor) => return Ok(done(KernelStrategy::CFreeMinor { rows: *rows, minor }, rejected)),
            Err(e) => rejected.push(format!("{label}: {e}")),
        }
    }
    for (first, (a1, _)) in &parts {
        if a1.is_zero() {
            continue;
        }
        let leading_label = format!("{} c-coefficient", pair_label(block, *first));
        let leading = match certify_sign(&leading_label, a1, None, opts) {
            Ok(c) => c,
            Err(e) => {
                rejected.push(format!("{leading_label}: {e}"));
                continue;
            }
        };
        for (second, _) in &parts {
            if second == first {
                continue;
            }
            let (_, r) = resolvent(m, *first, *second)?;
            let label = format!("{block} resolvent of rows ({}, {}) and ({}, {})", first.0 + 1, first.1 + 1, second.0 + 1, second.1 + 1);
            match certify_sign(&label, &r, None, opts) {
                Ok(resolvent) => {
                    let strategy = KernelStrategy::Resolvent { first: *first, second: *second, leading, resolvent };
                    return Ok(done(strategy, rejected));
                }
                Err(e) => rejected.push(format!("{label}: {e}")),
            }
        }
    }
    Err(CertifyError::StrategyExhausted { block: block.to_string(), tried: rejected })
}
