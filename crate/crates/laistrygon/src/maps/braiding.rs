//! The braiding of the block-and-point braided vector space with basis
//! x1, x2, x3 = z0, its 9x9 matrix, the braid-equation check, and the
//! cocycle twist that moves q12, q21 while fixing their product.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::{FieldElem, QSpec};
use serde::Serialize;

/// Parameters of the braiding: the 2x2 matrix (q_ij) and the block
/// parameter a. The Laistrygonian locus is q11 = q22 = 1, q21 = q12^-1,
/// a = -G/2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidingParams {
    pub q11: FieldElem,
    pub q12: FieldElem,
    pub q21: FieldElem,
    pub q22: FieldElem,
    pub a: FieldElem,
}

/// The bicharacter values p12, p21 of a twisting 2-cocycle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistParams {
    pub p12: FieldElem,
    pub p21: FieldElem,
}

impl BraidingParams {
    pub fn new(
        q11: FieldElem,
        q12: FieldElem,
        q21: FieldElem,
        q22: FieldElem,
        a: FieldElem,
    ) -> Result<Self> {
        for (name, v) in [("q11", &q11), ("q12", &q12), ("q21", &q21), ("q22", &q22)] {
            if v.is_zero() {
                return Err(Error::InvalidSpec(format!("{name} must be nonzero")));
            }
        }
        Ok(BraidingParams {
            q11,
            q12,
            q21,
            q22,
            a,
        })
    }

    /// The Laistrygonian braiding at the given q: q11 = q22 = 1,
    /// q12 = q, q21 = q^-1, a = -G/2.
    pub fn laistrygonian(ghost: u32, mode: &QSpec) -> Result<Self> {
        let q = FieldElem::q(mode);
        let a = FieldElem::from_ratio(-(ghost as i64), 2, mode)?;
        BraidingParams::new(FieldElem::one(mode), q.clone(), q.inv()?, FieldElem::one(mode), a)
    }

    pub fn mode(&self) -> &QSpec {
        self.q11.mode()
    }
}

impl TwistParams {
    pub fn new(p12: FieldElem, p21: FieldElem) -> Result<Self> {
        if p12.is_zero() || p21.is_zero() {
            return Err(Error::InvalidSpec("twist parameters must be nonzero".into()));
        }
        Ok(TwistParams { p12, p21 })
    }
}

/// The two action matrices alpha_1, alpha_2 on span(x1, x2, x3), columns
/// indexed by the generator acted on:
/// alpha_1: x1 -> q11 x1, x2 -> q11 (x2 + x1), x3 -> q12 x3;
/// alpha_2: x1 -> q21 x1, x2 -> q21 (x2 + a x1), x3 -> q22 x3.
fn action_matrices(bp: &BraidingParams) -> Result<[Matrix; 2]> {
    let mode = bp.mode();
    let z = || FieldElem::zero(mode);
    let a1 = Matrix::from_rows(
        vec![
            vec![bp.q11.clone(), bp.q11.clone(), z()],
            vec![z(), bp.q11.clone(), z()],
            vec![z(), z(), bp.q12.clone()],
        ],
        mode,
    )?;
    let a2 = Matrix::from_rows(
        vec![
            vec![bp.q21.clone(), bp.q21.mul(&bp.a)?, z()],
            vec![z(), bp.q21.clone(), z()],
            vec![z(), z(), bp.q22.clone()],
        ],
        mode,
    )?;
    Ok([a1, a2])
}

/// The 9x9 matrix of c on the basis x_i tensor x_j, row-major index
/// 3(i-1) + (j-1): c(x_i ox x_j) = (alpha_{g(i)} . x_j) ox x_i, where
/// g(1) = g(2) = 1 and g(3) = 2 (the degrees of the basis vectors).
pub fn braiding_matrix(bp: &BraidingParams) -> Result<Matrix> {
    let mode = bp.mode();
    let acts = action_matrices(bp)?;
    let mut m = Matrix::zero(9, mode);
    for i in 0..3 {
        let act = &acts[if i == 2 { 1 } else { 0 }];
        for j in 0..3 {
            // c(x_i ox x_j) = sum_k act[k][j] x_k ox x_i.
            for k in 0..3 {
                let v = act.get(k, j);
                if !v.is_zero() {
                    m.set(3 * k + i, 3 * i + j, v.clone());
                }
            }
        }
    }
    Ok(m)
}

/// Does c satisfy the braid equation
/// (c ox id)(id ox c)(c ox id) = (id ox c)(c ox id)(id ox c) on V^(ox 3)?
pub fn braid_equation_check(bp: &BraidingParams) -> Result<bool> {
    let mode = bp.mode();
    let c = braiding_matrix(bp)?;
    let id3 = Matrix::identity(3, mode);
    let c12 = c.kron(&id3)?;
    let c23 = id3.kron(&c)?;
    let lhs = c12.mul(&c23)?.mul(&c12)?;
    let rhs = c23.mul(&c12)?.mul(&c23)?;
    Ok(lhs == rhs)
}

/// Twist by the cocycle with bicharacter values (p12, p21):
/// q12 -> p12 p21^-1 q12, q21 -> p21 p12^-1 q21. The products q12 q21,
/// and q11, q22, a, are unchanged.
pub fn twist_braiding(bp: &BraidingParams, tp: &TwistParams) -> Result<BraidingParams> {
    let r = tp.p12.div(&tp.p21)?;
    BraidingParams::new(
        bp.q11.clone(),
        bp.q12.mul(&r)?,
        bp.q21.div(&r)?,
        bp.q22.clone(),
        bp.a.clone(),
    )
}

/// JSON-facing form of a braiding matrix: entries as canonical scalar
/// strings in row-major order.
#[derive(Debug, Clone, Serialize)]
pub struct BraidingMatrixOut {
    pub dim: usize,
    pub rows: Vec<Vec<String>>,
}

pub fn braiding_matrix_out(bp: &BraidingParams) -> Result<BraidingMatrixOut> {
    let m = braiding_matrix(bp)?;
    Ok(BraidingMatrixOut {
        dim: m.dim(),
        rows: m.to_string_rows(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic() -> QSpec {
        QSpec::Generic
    }

    #[test]
    fn matrix_entries_match_the_displayed_form() {
        let g = generic();
        let bp = BraidingParams::laistrygonian(2, &g).unwrap();
        let m = braiding_matrix(&bp).unwrap();
        // c(x1 ox x1) = q11 x1 ox x1 = x1 ox x1.
        assert!(m.get(0, 0).is_one());
        // c(x2 ox x1) = q11 (x1... ) — column (i=2,j=1) holds
        // (alpha_1 . x1) ox x2 = q11 x1 ox x2.
        assert!(m.get(1, 3).is_one());
        // c(x2 ox x2) = q11 (x2 + x1) ox x2: coefficients on x2 ox x2 and
        // x1 ox x2.
        assert!(m.get(4, 4).is_one());
        assert!(m.get(1, 4).is_one());
        // c(x3 ox x2) = q21 (x2 + a x1) ox x3: the x1 ox x3 entry is
        // q21 * a = -q^-1.
        let a = FieldElem::from_ratio(-2, 2, &g).unwrap(); // a = -G/2 = -1
        let expect = bp.q21.mul(&a).unwrap();
        assert_eq!(m.get(2, 7), &expect);
        // c(x1 ox x3) = q12 x3 ox x1.
        assert_eq!(m.get(6, 2), &bp.q12);
    }

    #[test]
    fn braid_equation_on_the_laistrygonian_locus() {
        for ghost in [1, 2, 5] {
            let bp = BraidingParams::laistrygonian(ghost, &generic()).unwrap();
            assert!(braid_equation_check(&bp).unwrap(), "ghost = {ghost}");
        }
    }

    #[test]
    fn braid_equation_at_numeric_q() {
        let mode = QSpec::numeric(3, 7).unwrap();
        let bp = BraidingParams::laistrygonian(2, &mode).unwrap();
        assert!(braid_equation_check(&bp).unwrap());
    }

    #[test]
    fn trivial_twist_is_identity() {
        let g = generic();
        let bp = BraidingParams::laistrygonian(1, &g).unwrap();
        let tp = TwistParams::new(FieldElem::one(&g), FieldElem::one(&g)).unwrap();
        assert_eq!(twist_braiding(&bp, &tp).unwrap(), bp);
    }

    #[test]
    fn twist_moves_q_and_fixes_product() {
        // p12 = q'/q with q' = q^3 sends the braiding at q to the one at q'.
        let g = generic();
        let bp = BraidingParams::laistrygonian(2, &g).unwrap();
        let q = FieldElem::q(&g);
        let p12 = q.pow(3).unwrap().div(&q).unwrap();
        let tp = TwistParams::new(p12, FieldElem::one(&g)).unwrap();
        let tw = twist_braiding(&bp, &tp).unwrap();
        assert_eq!(tw.q12, q.pow(3).unwrap());
        assert_eq!(tw.q21, q.pow(-3).unwrap());
        let prod = tw.q12.mul(&tw.q21).unwrap();
        assert_eq!(prod, bp.q12.mul(&bp.q21).unwrap());
    }

    #[test]
    fn twist_is_a_group_action() {
        let g = generic();
        let bp = BraidingParams::laistrygonian(1, &g).unwrap();
        let q = FieldElem::q(&g);
        let two = FieldElem::from_int(2, &g);
        let t1 = TwistParams::new(q.clone(), two.clone()).unwrap();
        let t2 = TwistParams::new(two.clone(), q.pow(2).unwrap()).unwrap();
        let t12 = TwistParams::new(
            t1.p12.mul(&t2.p12).unwrap(),
            t1.p21.mul(&t2.p21).unwrap(),
        )
        .unwrap();
        let seq = twist_braiding(&twist_braiding(&bp, &t1).unwrap(), &t2).unwrap();
        let joint = twist_braiding(&bp, &t12).unwrap();
        assert_eq!(seq, joint);
    }

    #[test]
    fn rejects_zero_parameters() {
        let g = generic();
        assert!(BraidingParams::new(
            FieldElem::zero(&g),
            FieldElem::one(&g),
            FieldElem::one(&g),
            FieldElem::one(&g),
            FieldElem::zero(&g),
        )
        .is_err());
        assert!(TwistParams::new(FieldElem::zero(&g), FieldElem::one(&g)).is_err());
    }

    #[test]
    fn twisted_laistrygonian_still_braided() {
        let g = generic();
        let bp = BraidingParams::laistrygonian(3, &g).unwrap();
        let tp = TwistParams::new(FieldElem::from_int(5, &g), FieldElem::one(&g)).unwrap();
        let tw = twist_braiding(&bp, &tp).unwrap();
        assert!(braid_equation_check(&tw).unwrap());
    }
}
