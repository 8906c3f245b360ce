use super::CertifyError;
use crate::model::{ParamEntry, ParamMatrix, RadicalExpr};

/// Determinant of the 2x2 submatrix on rows `r0`, `r1` (columns 0 and 1).
pub fn minor(block: &ParamMatrix, r0: usize, r1: usize) -> ParamEntry {
    &(block.get(r0, 0) * block.get(r1, 1)) - &(block.get(r0, 1) * block.get(r1, 0))
}

/// `(alpha_1, alpha_0)` with `det = alpha_1 c + alpha_0`, checking the `c^2` term vanishes.
pub fn det_affine(block: &ParamMatrix) -> Result<(RadicalExpr, RadicalExpr), CertifyError> {
    if block.rows != 2 || block.cols != 2 {
        return Err(CertifyError::Shape(format!("expected a 2x2 block, got {}x{}", block.rows, block.cols)));
    }
    affine_parts(&minor(block, 0, 1))
}

/// Splits an entry that is affine in `c`.
pub fn affine_parts(p: &ParamEntry) -> Result<(RadicalExpr, RadicalExpr), CertifyError> {
    if p.degree().is_some_and(|d| d > 1) {
        return Err(CertifyError::NotAffine);
    }
    Ok((p.coeff(1), p.coeff(0)))
}

/// All 2x2 minors of an `n x 2` block, in lexicographic row-pair order.
pub fn minors(block: &ParamMatrix) -> Vec<((usize, usize), ParamEntry)> {
    let mut out = Vec::new();
    for r0 in 0..block.rows {
        for r1 in r0 + 1..block.rows {
            out.push(((r0, r1), minor(block, r0, r1)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_block() {
        let one = ParamEntry::affine(RadicalExpr::from_int(1), RadicalExpr::zero());
        let m = ParamMatrix::from_rows(vec![vec![one.clone(), ParamEntry::zero()], vec![ParamEntry::zero(), one]]);
        let (a1, a0) = det_affine(&m).unwrap();
        assert!(a1.is_zero());
        assert_eq!(a0, RadicalExpr::from_int(1));
    }

    #[test]
    fn quadratic_in_c_rejected() {
        let c = ParamEntry::affine(RadicalExpr::zero(), RadicalExpr::from_int(1));
        let m = ParamMatrix::from_rows(vec![vec![c.clone(), ParamEntry::zero()], vec![ParamEntry::zero(), c]]);
        assert_eq!(det_affine(&m), Err(CertifyError::NotAffine));
    }
}
