//! Left inverses `B_hat(xi) A_hat(xi) = I_N` of a frame system and the
//! dual sequence matrices `B` they define.

use nalgebra::{Cholesky, SVD};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{diagnostics, FrameDiagnostics};
use crate::system::{CMatrix, SequenceMatrix, TransferMatrix};

/// Below this value of `delta_A / beta_A^N` the pseudo-inverse is taken
/// from an SVD instead of the normal equations.
pub const NORMAL_EQUATION_THRESHOLD: f64 = 1e-8;

/// Relative rank cutoff `sigma > SVD_RANK_TOL * sigma_max` for the SVD path.
pub const SVD_RANK_TOL: f64 = 1e-12;

/// A left inverse held both per character and as a sequence matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LeftInverse {
    transfer: TransferMatrix,
    coefficients: SequenceMatrix,
}

impl LeftInverse {
    pub fn from_transfer(transfer: TransferMatrix) -> Self {
        let coefficients = SequenceMatrix::from_transfer(&transfer);
        Self {
            transfer,
            coefficients,
        }
    }

    pub fn transfer(&self) -> &TransferMatrix {
        &self.transfer
    }

    /// The `N x M` matrix `B`; its columns are the dual generators `b_m`.
    pub fn coefficients(&self) -> &SequenceMatrix {
        &self.coefficients
    }

    pub fn residual(&self, a: &SequenceMatrix) -> Result<f64> {
        transfer_residual(&a.transfer(), &self.transfer)
    }
}

#[derive(Serialize)]
struct LeftInverseWire<'a> {
    #[serde(flatten)]
    coefficients: &'a SequenceMatrix,
    transfer: &'a TransferMatrix,
}

/// Serialized as the coefficient [`SequenceMatrix`] plus a `transfer` dump.
impl Serialize for LeftInverse {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LeftInverseWire {
            coefficients: &self.coefficients,
            transfer: &self.transfer,
        }
        .serialize(serializer)
    }
}

fn require_frame(a: &SequenceMatrix) -> Result<FrameDiagnostics> {
    let diag = diagnostics(a, None);
    if !diag.is_frame {
        return Err(Error::NotAFrame {
            delta: diag.delta,
            tol: diag.tol,
        });
    }
    Ok(diag)
}

fn svd_pseudo_inverse(m: &CMatrix) -> CMatrix {
    let svd = SVD::new(m.clone(), true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    svd.pseudo_inverse(SVD_RANK_TOL * smax)
        .expect("U and V were requested")
}

/// `[A^* A]^{-1} A^*` through a Hermitian (Cholesky) solve.
fn normal_equation_pseudo_inverse(m: &CMatrix) -> Option<CMatrix> {
    let adj = m.adjoint();
    Cholesky::new(&adj * m).map(|chol| chol.solve(&adj))
}

fn pseudo_inverses(a: &SequenceMatrix, diag: &FrameDiagnostics) -> TransferMatrix {
    let transfer = a.transfer();
    let use_normal = diag.relative_delta() > NORMAL_EQUATION_THRESHOLD;
    let per_xi = transfer
        .iter()
        .map(|m| {
            use_normal
                .then(|| normal_equation_pseudo_inverse(m))
                .flatten()
                .unwrap_or_else(|| svd_pseudo_inverse(m))
        })
        .collect();
    TransferMatrix::new(a.group().clone(), a.cols(), a.rows(), per_xi).expect("shapes follow A")
}

/// The Moore-Penrose left inverse `A_hat(xi)^+` at every character.
pub fn moore_penrose(a: &SequenceMatrix) -> Result<LeftInverse> {
    let diag = require_frame(a)?;
    Ok(LeftInverse::from_transfer(pseudo_inverses(a, &diag)))
}

/// `B_hat = A_hat^+ + C (I_M - A_hat A_hat^+)`; every left inverse has this form.
pub fn left_inverse_family(a: &SequenceMatrix, c: &TransferMatrix) -> Result<LeftInverse> {
    a.group().ensure_same(c.group())?;
    if (c.rows(), c.cols()) != (a.cols(), a.rows()) {
        return Err(Error::Dimension(format!(
            "family parameter must be {}x{}, got {}x{}",
            a.cols(),
            a.rows(),
            c.rows(),
            c.cols()
        )));
    }
    let diag = require_frame(a)?;
    let pinv = pseudo_inverses(a, &diag);
    let transfer = a.transfer();
    let m = a.rows();
    let per_xi = (0..a.group().order())
        .map(|xi| {
            let p = pinv.at(xi);
            let projector = CMatrix::identity(m, m) - transfer.at(xi) * p;
            p + c.at(xi) * projector
        })
        .collect();
    Ok(LeftInverse::from_transfer(TransferMatrix::new(
        a.group().clone(),
        a.cols(),
        a.rows(),
        per_xi,
    )?))
}

/// The unique inverse of a square system; fails listing every character
/// where `|det A_hat(xi)|` does not exceed `sqrt(tol)`.
pub fn square_inverse(a: &SequenceMatrix) -> Result<LeftInverse> {
    if a.rows() != a.cols() {
        return Err(Error::Precondition(format!(
            "square inverse needs M = N, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let diag = diagnostics(a, None);
    let singular = diag.degenerate_characters();
    if !singular.is_empty() {
        return Err(Error::SingularCharacters { characters: singular });
    }
    let transfer = a.transfer();
    let per_xi = transfer
        .iter()
        .enumerate()
        .map(|(xi, m)| {
            m.clone().try_inverse().ok_or_else(|| Error::SingularCharacters {
                characters: vec![a.group().coords_of(xi)],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LeftInverse::from_transfer(TransferMatrix::new(
        a.group().clone(),
        a.rows(),
        a.cols(),
        per_xi,
    )?))
}

/// `max_xi max_ij |B_hat(xi) A_hat(xi) - I_N|`.
pub fn verify_left_inverse(a: &SequenceMatrix, b: &SequenceMatrix) -> Result<f64> {
    transfer_residual(&a.transfer(), &b.transfer())
}

fn transfer_residual(a: &TransferMatrix, b: &TransferMatrix) -> Result<f64> {
    let product = b.mul(a)?;
    let n = product.rows();
    if n != product.cols() {
        return Err(Error::Dimension("B A is not square".into()));
    }
    let eye = CMatrix::identity(n, n);
    Ok(product
        .iter()
        .flat_map(|m| (m - &eye).iter().map(|v| v.norm()).collect::<Vec<_>>())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupSequence, GroupSpec};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn stacked_deltas() -> SequenceMatrix {
        let g = GroupSpec::cyclic(2).unwrap();
        let d0 = GroupSequence::delta(g.clone(), 0);
        SequenceMatrix::new(g, 2, 1, vec![d0.clone(), d0]).unwrap()
    }

    #[test]
    fn moore_penrose_of_stacked_deltas() {
        let a = stacked_deltas();
        let b = moore_penrose(&a).unwrap();
        for m in b.transfer().iter() {
            assert!((m[(0, 0)] - c(0.5, 0.0)).norm() < 1e-15);
            assert!((m[(0, 1)] - c(0.5, 0.0)).norm() < 1e-15);
        }
        assert!(b.residual(&a).unwrap() < 1e-9);
    }

    #[test]
    fn identity_inverts_to_identity() {
        let g = GroupSpec::new(vec![2, 2]).unwrap();
        let id = SequenceMatrix::identity(g, 2).unwrap();
        for b in [moore_penrose(&id).unwrap(), square_inverse(&id).unwrap()] {
            assert!(b.coefficients().max_abs_diff(&id).unwrap() < 1e-15);
        }
    }

    #[test]
    fn scaled_delta_has_reciprocal_inverse() {
        let g = GroupSpec::cyclic(3).unwrap();
        let two_delta = GroupSequence::delta(g.clone(), 0).scale(c(2.0, 0.0));
        let a = SequenceMatrix::new(g.clone(), 1, 1, vec![two_delta]).unwrap();
        let b = moore_penrose(&a).unwrap();
        let want = GroupSequence::delta(g, 0).scale(c(0.5, 0.0));
        assert!(b.coefficients().entry(0, 0).max_abs_diff(&want).unwrap() < 1e-15);
    }

    #[test]
    fn non_frame_rejected() {
        let g = GroupSpec::cyclic(2).unwrap();
        let a = SequenceMatrix::new(g.clone(), 1, 1, vec![GroupSequence::from_real(g, &[1.0, 1.0]).unwrap()]).unwrap();
        assert!(matches!(moore_penrose(&a), Err(Error::NotAFrame { delta, .. }) if delta == 0.0));
        match square_inverse(&a) {
            Err(Error::SingularCharacters { characters }) => assert_eq!(characters, vec![vec![1]]),
            other => panic!("expected singular character error, got {other:?}"),
        }
    }

    #[test]
    fn square_inverse_of_scalar_is_reciprocal() {
        let g = GroupSpec::cyclic(4).unwrap();
        let a = SequenceMatrix::new(
            g.clone(),
            1,
            1,
            vec![GroupSequence::from_real(g, &[1.0, 0.5, 0.0, 0.0]).unwrap()],
        )
        .unwrap();
        let b = square_inverse(&a).unwrap();
        let hats = [c(1.5, 0.0), c(1.0, -0.5), c(0.5, 0.0), c(1.0, 0.5)];
        for (xi, h) in hats.iter().enumerate() {
            assert!((b.transfer().at(xi)[(0, 0)] - h.inv()).norm() < 1e-14);
        }
        let rect = stacked_deltas();
        assert!(matches!(square_inverse(&rect), Err(Error::Precondition(_))));
    }

    #[test]
    fn family_examples() {
        let a = stacked_deltas();
        let g = a.group().clone();
        let zero = TransferMatrix::zeros(g.clone(), 1, 2);
        let mp = moore_penrose(&a).unwrap();
        assert_eq!(left_inverse_family(&a, &zero).unwrap(), mp);

        // [0.5, 0.5] + [1, 0] (I - 0.5 [[1,1],[1,1]]) = [1, 0]
        let cm = TransferMatrix::from_fn(g.clone(), 1, 2, |_| CMatrix::from_row_slice(1, 2, &[c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
        let b = left_inverse_family(&a, &cm).unwrap();
        for m in b.transfer().iter() {
            assert!((m[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
            assert!(m[(0, 1)].norm() < 1e-15);
        }
        assert!(b.residual(&a).unwrap() < 1e-9);

        let wrong = TransferMatrix::zeros(g, 2, 2);
        assert!(matches!(left_inverse_family(&a, &wrong), Err(Error::Dimension(_))));
    }

    #[test]
    fn square_family_collapses() {
        let g = GroupSpec::cyclic(4).unwrap();
        let a = SequenceMatrix::new(
            g.clone(),
            1,
            1,
            vec![GroupSequence::from_real(g.clone(), &[1.0, 0.5, 0.0, 0.0]).unwrap()],
        )
        .unwrap();
        let cm = TransferMatrix::from_fn(g, 1, 1, |xi| CMatrix::from_element(1, 1, c(xi as f64, 3.0))).unwrap();
        let b = left_inverse_family(&a, &cm).unwrap();
        let unique = square_inverse(&a).unwrap();
        assert!(b.transfer().max_abs_diff(unique.transfer()).unwrap() < 1e-14);
    }

    #[test]
    fn zero_b_has_unit_residual() {
        let a = stacked_deltas();
        let zero = SequenceMatrix::zeros(a.group().clone(), 1, 2).unwrap();
        assert_eq!(verify_left_inverse(&a, &zero).unwrap(), 1.0);
    }

    #[test]
    fn svd_path_matches_normal_equations() {
        let g = GroupSpec::cyclic(3).unwrap();
        let a = SequenceMatrix::from_fn(g.clone(), 3, 2, |m, n| {
            GroupSequence::from_real(g.clone(), &[1.0 + m as f64, n as f64 - 0.5, 0.25 * (m * n) as f64]).unwrap()
        })
        .unwrap();
        let t = a.transfer();
        for m in t.iter() {
            let svd = svd_pseudo_inverse(m);
            let normal = normal_equation_pseudo_inverse(m).unwrap();
            assert!((svd - normal).camax() < 1e-12);
        }
    }

    #[test]
    fn serialized_with_transfer_dump() {
        let b = moore_penrose(&stacked_deltas()).unwrap();
        let v = serde_json::to_value(&b).unwrap();
        assert_eq!(v["rows"], 1);
        assert_eq!(v["cols"], 2);
        assert_eq!(v["transfer"]["characters"].as_array().unwrap().len(), 2);
    }
}
