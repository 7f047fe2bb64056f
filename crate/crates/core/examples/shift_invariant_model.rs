// A two-generator model on Z_12 with lattice 3Z_12: synthesis, the
// analysis transform, projection and the reproducing kernel.

use groupsamp::error::Result;
use groupsamp::group::{GroupSequence, GroupSpec, ProductSubgroup};
use groupsamp::model::{FunctionOnG, TranslationModel};
use groupsamp::system::VectorSequence;
use num_complex::Complex64;

pub fn run_example() -> Result<f64> {
    let g = GroupSpec::cyclic(12)?;
    let window = GroupSequence::from_real(g.clone(), &[1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.25])?;
    let phi1 = GroupSequence::from_real(g.clone(), &[1.0, 0.5, 0.25, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])?;
    let phi2 = GroupSequence::from_real(g.clone(), &[0.0, 1.0, -1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])?;
    let model = TranslationModel::new(window, ProductSubgroup::new(g, vec![3])?, vec![phi1, phi2])?;
    let (lo, hi) = model.riesz_sequence_check();
    println!("Riesz bounds ({lo:.4}, {hi:.4}), window frame bounds {:?}", model.window_bounds());

    let h = model.coefficient_group().clone();
    let x = VectorSequence::new(vec![
        GroupSequence::from_fn(h.clone(), |k| Complex64::new(k as f64, 0.0)),
        GroupSequence::from_fn(h, |k| Complex64::new(0.0, 1.0 - k as f64)),
    ])?;
    let f = model.synthesize(&x)?;
    let recovered = model.coefficients_of(&f)?;
    println!("projection recovers coefficients to {:.2e}", recovered.max_abs_diff(&x)?);

    let big_f: FunctionOnG = model.analysis_transform(&f)?;
    let kernel = model.reproducing_kernel()?;
    let err = kernel.reproduce(&big_f)?.max_abs_diff(&big_f)?;
    println!("kernel reproduces F to {err:.2e}; hermitian defect {:.2e}", kernel.hermitian_defect());
    Ok(err)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
