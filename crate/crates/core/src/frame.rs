//! Frame and Riesz diagnostics for the translate family `{T_h a*_m}` read
//! off the spectra of `A_hat(xi)^* A_hat(xi)`, with a brute-force oracle.

use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Character, GroupSequence};
use crate::system::{CMatrix, SequenceMatrix, VectorSequence};

/// Frame verdicts use `tol = DEFAULT_RELATIVE_TOL * beta_A^N` unless told otherwise.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-10;

/// Scale between transfer-domain bounds and the translate-family Gram
/// spectrum. With counting measure and the unnormalized forward DFT the
/// convolution operator is unitarily diagonalized by the normalized DFT,
/// so the two spectra coincide.
pub const ORACLE_NORMALIZATION: f64 = 1.0;

pub const DEFAULT_ORACLE_CAP: usize = 4096;

/// Relative slack used when checking `alpha^N <= delta <= alpha beta^(N-1)`.
pub const DETERMINANT_BOUNDS_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterSpectrum {
    pub xi: Vec<usize>,
    /// Eigenvalues of `A_hat(xi)^* A_hat(xi)`, ascending.
    pub eigs: Vec<f64>,
}

impl CharacterSpectrum {
    pub fn determinant(&self) -> f64 {
        self.eigs.iter().product()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameDiagnostics {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub is_frame: bool,
    pub is_riesz: bool,
    #[serde(skip)]
    pub tol: f64,
    #[serde(skip)]
    pub rows: usize,
    #[serde(skip)]
    pub cols: usize,
    pub per_xi: Vec<CharacterSpectrum>,
}

/// Eigenvalues of `m^* m` in ascending order, clamped at zero.
pub fn gram_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let gram = m.adjoint() * m;
    let mut eigs: Vec<f64> = SymmetricEigen::new(gram)
        .eigenvalues
        .iter()
        .map(|&v| v.max(0.0))
        .collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}

/// Spectral diagnostics of `A`; `tol` is absolute and defaults to
/// `DEFAULT_RELATIVE_TOL * beta_A^N`.
pub fn diagnostics(a: &SequenceMatrix, tol: Option<f64>) -> FrameDiagnostics {
    let transfer = a.transfer();
    let group = a.group();
    let per_xi: Vec<CharacterSpectrum> = transfer
        .iter()
        .enumerate()
        .map(|(xi, m)| CharacterSpectrum {
            xi: group.coords_of(xi),
            eigs: gram_eigenvalues(m),
        })
        .collect();

    let alpha = per_xi.iter().map(|s| s.eigs[0]).fold(f64::INFINITY, f64::min);
    let beta = per_xi
        .iter()
        .map(|s| *s.eigs.last().expect("N >= 1"))
        .fold(0.0, f64::max);
    let delta = per_xi
        .iter()
        .map(CharacterSpectrum::determinant)
        .fold(f64::INFINITY, f64::min);

    let n = a.cols() as i32;
    let tol = tol.unwrap_or(DEFAULT_RELATIVE_TOL * beta.powi(n));
    let is_frame = delta > tol;
    // For square systems det(A^* A) = |det A|^2, so this is
    // min |det A_hat| > sqrt(tol).
    let is_riesz = a.rows() == a.cols() && is_frame;
    FrameDiagnostics {
        alpha,
        beta,
        delta,
        is_frame,
        is_riesz,
        tol,
        rows: a.rows(),
        cols: a.cols(),
        per_xi,
    }
}

impl FrameDiagnostics {
    /// `alpha^N <= delta <= alpha beta^(N-1)` within relative slack.
    pub fn determinant_bounds_hold(&self) -> bool {
        let n = self.cols as i32;
        let lower = self.alpha.powi(n);
        let upper = self.alpha * self.beta.powi(n - 1);
        let slack = DETERMINANT_BOUNDS_SLACK * upper.abs().max(f64::MIN_POSITIVE);
        lower <= self.delta + slack && self.delta <= upper + slack
    }

    /// Row-major index of a character attaining `delta`.
    pub fn worst_character(&self) -> usize {
        self.per_xi
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.determinant().total_cmp(&b.determinant()))
            .map(|(i, _)| i)
            .expect("group order >= 1")
    }

    /// Characters whose determinant does not exceed the tolerance.
    pub fn degenerate_characters(&self) -> Vec<Vec<usize>> {
        self.per_xi
            .iter()
            .filter(|s| s.determinant() <= self.tol)
            .map(|s| s.xi.clone())
            .collect()
    }

    /// `delta_A / beta_A^N`, the scale-free conditioning of the system.
    pub fn relative_delta(&self) -> f64 {
        let scale = self.beta.powi(self.cols as i32);
        if scale > 0.0 {
            self.delta / scale
        } else {
            0.0
        }
    }
}

pub fn check_determinant_bounds(a: &SequenceMatrix) -> bool {
    diagnostics(a, None).determinant_bounds_hold()
}

/// Extreme eigenvalues of the frame operator of `{T_h a*_m}` on
/// `l2_N(H)`, computed from the explicit `(M|H|) x (N|H|)` analysis matrix
/// and scaled by [`ORACLE_NORMALIZATION`].
pub fn oracle_frame_bounds(a: &SequenceMatrix, cap: usize) -> Result<(f64, f64)> {
    let order = a.group().order();
    let (rows, cols) = (a.rows(), a.cols());
    let needed = order * rows.max(cols);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let adjoint = a.adjoint();
    let mut analysis = CMatrix::zeros(rows * order, cols * order);
    for m in 0..rows {
        let generator = adjoint.column(m);
        for h in 0..order {
            let translate = generator.translate(h);
            for n in 0..cols {
                for (hp, v) in translate.component(n).values().iter().enumerate() {
                    // <x, v> = sum x conj(v)
                    analysis[(m * order + h, n * order + hp)] = v.conj();
                }
            }
        }
    }
    let eigs = gram_eigenvalues(&analysis);
    let lower = eigs[0] * ORACLE_NORMALIZATION;
    let upper = eigs[eigs.len() - 1] * ORACLE_NORMALIZATION;
    Ok((lower, upper))
}

/// A unit-norm `x` with `A * x` of size `sqrt(lambda_min)` at the worst
/// character: the character sequence `xi_0(h) v` for the least eigenvector
/// `v` of `A_hat(xi_0)^* A_hat(xi_0)`. When `delta_A = 0` this is a
/// nonzero kernel element, so no reconstruction can recover it.
pub fn null_direction(a: &SequenceMatrix, diag: &FrameDiagnostics) -> VectorSequence {
    let group = a.group().clone();
    let xi0 = diag.worst_character();
    let m = a.transfer().at(xi0).clone();
    let eig = SymmetricEigen::new(m.adjoint() * &m);
    let (imin, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("N >= 1");
    let v: DVector<Complex64> = eig.eigenvectors.column(imin).into_owned();
    let character = Character::new(group.element_at(xi0));
    let wave: Vec<Complex64> = group
        .elements()
        .map(|h| character.value(&h).expect("same group"))
        .collect();
    let scale = 1.0 / (group.order() as f64).sqrt();
    let components = v
        .iter()
        .map(|&vn| GroupSequence::from_fn(group.clone(), |h| wave[h] * vn * scale))
        .collect();
    VectorSequence::new(components).expect("at least one component")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn scalar(moduli: Vec<usize>, v: &[f64]) -> SequenceMatrix {
        let g = GroupSpec::new(moduli).unwrap();
        SequenceMatrix::new(g.clone(), 1, 1, vec![GroupSequence::from_real(g, v).unwrap()]).unwrap()
    }

    #[test]
    fn identity_system() {
        let a = SequenceMatrix::identity(GroupSpec::cyclic(1).unwrap(), 1).unwrap();
        let d = diagnostics(&a, None);
        assert_eq!((d.alpha, d.beta, d.delta), (1.0, 1.0, 1.0));
        assert!(d.is_frame && d.is_riesz);
        assert!(d.determinant_bounds_hold());
        assert_eq!(oracle_frame_bounds(&a, DEFAULT_ORACLE_CAP).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn stacked_deltas_are_a_frame_but_not_riesz() {
        let g = GroupSpec::cyclic(2).unwrap();
        let d0 = GroupSequence::delta(g.clone(), 0);
        let a = SequenceMatrix::new(g, 2, 1, vec![d0.clone(), d0]).unwrap();
        let d = diagnostics(&a, None);
        assert!((d.alpha - 2.0).abs() < 1e-12);
        assert!((d.beta - 2.0).abs() < 1e-12);
        assert!((d.delta - 2.0).abs() < 1e-12);
        assert!(d.is_frame && !d.is_riesz);
        let (lo, hi) = oracle_frame_bounds(&a, DEFAULT_ORACLE_CAP).unwrap();
        assert!((lo - 2.0).abs() < 1e-12 && (hi - 2.0).abs() < 1e-12);
    }

    #[test]
    fn vanishing_transfer_is_not_a_frame() {
        let a = scalar(vec![2], &[1.0, 1.0]);
        let d = diagnostics(&a, None);
        assert_eq!(d.delta, 0.0);
        assert!(!d.is_frame);
        assert_eq!(d.degenerate_characters(), vec![vec![1]]);
        let (lo, _) = oracle_frame_bounds(&a, DEFAULT_ORACLE_CAP).unwrap();
        assert!(lo.abs() < 1e-12);

        let x = null_direction(&a, &d);
        assert!((x.norm() - 1.0).abs() < 1e-12);
        assert!(a.apply(&x).unwrap().norm() < 1e-12);
    }

    #[test]
    fn scalar_z4_bounds() {
        // |a_hat|^2 over the four characters: 2.25, 1.25, 0.25, 1.25
        let a = scalar(vec![4], &[1.0, 0.5, 0.0, 0.0]);
        let d = diagnostics(&a, None);
        assert!((d.delta - 0.25).abs() < 1e-12);
        assert!((d.beta - 2.25).abs() < 1e-12);
        assert_eq!(d.alpha, d.delta);
        assert!(d.is_frame);
        assert!(d.determinant_bounds_hold());
    }

    #[test]
    fn zero_system() {
        let g = GroupSpec::cyclic(3).unwrap();
        let a = SequenceMatrix::zeros(g, 2, 2).unwrap();
        let d = diagnostics(&a, None);
        assert_eq!(d.delta, 0.0);
        assert!(!d.is_frame);
    }

    #[test]
    fn oracle_cap() {
        let a = scalar(vec![8], &[1.0; 8]);
        assert!(matches!(
            oracle_frame_bounds(&a, 4),
            Err(Error::CapExceeded { needed: 8, cap: 4 })
        ));
    }

    #[test]
    fn report_shape() {
        let a = scalar(vec![2], &[1.0, 0.0]);
        let json = serde_json::to_value(diagnostics(&a, None)).unwrap();
        let keys: Vec<_> = json.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["alpha", "beta", "delta", "is_frame", "is_riesz", "per_xi"]);
        assert_eq!(json["per_xi"][1]["xi"], serde_json::json!([1]));
    }
}
